// Copyright 2026 The structsums developers
//
// Licensed under the Apache license, version 2.0 (the "license");
// you may not use this file except in compliance with the license.
// You may obtain a copy of the license at
//
//     http://www.apache.org/licenses/license-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the license is distributed on an "as is" basis,
// without warranties or conditions of any kind, either express or implied.
// See the license for the specific language governing permissions and
// limitations under the license.

//! CSV tables read and written by the command line.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::analysis::{FeatureSamples, LabeledDataset};
use crate::error::{Error, Result};
use crate::features::{FeatureVector, Projection};
use crate::multiorder::MultiOrder;

pub const SAMPLE_COLUMN: &str = "sample";
pub const CLASS_COLUMN: &str = "class";

/// Writes a header and rows. Reals use the shortest representation that
/// round-trips.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_io(path, e))?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn csv_io(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        kind => Error::Parameter(format!("{}: {kind:?}", path.display())),
    }
}

pub fn real(x: f64) -> String {
    format!("{x}")
}

/// Expands glob patterns into a sorted, de-duplicated file list. A pattern
/// without matches is an error.
pub fn expand_globs(patterns: &[String]) -> std::result::Result<Vec<PathBuf>, String> {
    let mut out = Vec::new();
    for p in patterns {
        let matches: Vec<PathBuf> = glob::glob(p)
            .map_err(|e| format!("bad pattern `{p}`: {e}"))?
            .filter_map(std::result::Result::ok)
            .filter(|p| p.is_file())
            .collect();
        if matches.is_empty() {
            return Err(format!("no files match `{p}`"));
        }
        out.extend(matches);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Splits `name=value`; without `=` the name is `None`.
pub fn named(arg: &str) -> (Option<&str>, &str) {
    match arg.split_once('=') {
        Some((n, v)) if !n.is_empty() && !n.contains(['*', '?', '[', '/']) => (Some(n), v),
        _ => (None, arg),
    }
}

/// A feature table: one row per sample, columns named `e_<p>_<suffix>`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    pub samples: Vec<String>,
    pub classes: Vec<String>,
    pub columns: Vec<(MultiOrder, String)>,
    pub values: Vec<Vec<f64>>,
}

fn parse_column(name: &str) -> Result<(MultiOrder, String)> {
    let (stem, suffix) = name
        .rsplit_once('_')
        .ok_or_else(|| Error::Parameter(format!("unrecognized feature column `{name}`")))?;
    if !["abs", "re", "im", "arg"].contains(&suffix) {
        return Err(Error::Parameter(format!("unrecognized feature column `{name}`")));
    }
    Ok((stem.parse()?, suffix.to_string()))
}

impl FeatureTable {
    /// Reads a table; rows without a `class` column get `default_class`.
    pub fn read(path: &Path, default_class: &str) -> Result<Self> {
        let mut r = csv::Reader::from_path(path).map_err(|e| csv_io(path, e))?;
        let header = r.headers()?.clone();
        let mut sample_col = None;
        let mut class_col = None;
        let mut feature_cols = Vec::new();
        let mut columns = Vec::new();
        for (i, h) in header.iter().enumerate() {
            match h {
                SAMPLE_COLUMN => sample_col = Some(i),
                CLASS_COLUMN => class_col = Some(i),
                _ => {
                    columns.push(parse_column(h)?);
                    feature_cols.push(i);
                }
            }
        }
        let mut t = FeatureTable {
            samples: Vec::new(),
            classes: Vec::new(),
            columns,
            values: Vec::new(),
        };
        for (row_no, rec) in r.records().enumerate() {
            let rec = rec?;
            t.samples.push(match sample_col {
                Some(i) => rec[i].to_string(),
                None => format!("{}#{row_no}", path.display()),
            });
            t.classes.push(match class_col {
                Some(i) => rec[i].to_string(),
                None => default_class.to_string(),
            });
            let row = feature_cols
                .iter()
                .map(|&i| {
                    rec[i].trim().parse::<f64>().map_err(|e| {
                        Error::Parameter(format!("{}: row {}: `{}`: {e}", path.display(), row_no + 1, &rec[i]))
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            t.values.push(row);
        }
        Ok(t)
    }

    /// Appends the rows of `other`, which must have identical columns.
    pub fn extend(&mut self, other: FeatureTable) -> Result<()> {
        if self.columns != other.columns {
            return Err(Error::Parameter("feature tables have different columns".into()));
        }
        self.samples.extend(other.samples);
        self.classes.extend(other.classes);
        self.values.extend(other.values);
        Ok(())
    }

    /// Class names in order of first appearance and per-row labels.
    pub fn labels(&self) -> (Vec<String>, Vec<usize>) {
        let mut names: Vec<String> = Vec::new();
        let labels = self
            .classes
            .iter()
            .map(|c| match names.iter().position(|n| n == c) {
                Some(i) => i,
                None => {
                    names.push(c.clone());
                    names.len() - 1
                }
            })
            .collect();
        (names, labels)
    }

    fn suffixes(&self) -> Vec<&str> {
        let mut s: Vec<&str> = self.columns.iter().map(|(_, s)| s.as_str()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Largest order present.
    pub fn min_order(&self) -> u32 {
        self.columns.iter().map(|(o, _)| o.delta()).min().unwrap_or(0)
    }

    pub fn max_order(&self) -> u32 {
        self.columns.iter().map(|(o, _)| o.delta()).max().unwrap_or(0)
    }

    /// Complex feature vectors, available when both real and imaginary
    /// parts are stored.
    pub fn complex_vectors(&self) -> Option<FeatureSamples> {
        let mut index: BTreeMap<(&MultiOrder, &str), usize> = BTreeMap::new();
        for (i, (o, s)) in self.columns.iter().enumerate() {
            index.insert((o, s.as_str()), i);
        }
        let mut orders: Vec<&MultiOrder> = self.columns.iter().map(|(o, _)| o).collect();
        orders.sort_by(|a, b| a.feature_key().cmp(&b.feature_key()));
        orders.dedup();
        let pairs: Vec<(MultiOrder, usize, usize)> = orders
            .into_iter()
            .map(|o| Some((o.clone(), *index.get(&(o, "re"))?, *index.get(&(o, "im"))?)))
            .collect::<Option<_>>()?;
        let order_q = self.max_order();
        let vectors = self
            .values
            .iter()
            .map(|row| FeatureVector {
                order_q,
                entries: pairs
                    .iter()
                    .map(|(o, re, im)| (o.clone(), Complex64::new(row[*re], row[*im])))
                    .collect(),
            })
            .collect();
        let (class_names, labels) = self.labels();
        Some(FeatureSamples {
            class_names,
            labels,
            vectors,
        })
    }

    /// Dataset of the projected features of order at most `q` whose
    /// multi-orders satisfy `keep`.
    pub fn dataset(&self, q: u32, projection: Projection, keep: impl Fn(&MultiOrder) -> bool) -> Result<LabeledDataset> {
        if let Some(fs) = self.complex_vectors() {
            let filtered = FeatureSamples {
                vectors: fs.vectors.iter().map(|v| v.filter(&keep)).collect(),
                ..fs
            };
            return filtered.dataset(q, projection);
        }
        let suffix = projection.as_str();
        if !self.suffixes().contains(&suffix) {
            return Err(Error::Parameter(format!(
                "the feature table has no `{suffix}` columns and no re/im pairs"
            )));
        }
        let cols: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .filter(|(_, (o, s))| s == suffix && o.delta() <= q && keep(o))
            .map(|(i, _)| i)
            .collect();
        let (class_names, labels) = self.labels();
        LabeledDataset::new(
            self.values
                .iter()
                .map(|r| cols.iter().map(|&c| r[c]).collect())
                .collect(),
            labels,
            cols.iter()
                .map(|&c| format!("{}_{}", self.columns[c].0.name(), self.columns[c].1))
                .collect(),
            class_names,
        )
    }
}

/// Reads and merges the tables given as `[class=]path`. Without an explicit
/// name, rows use the table's `class` column or else the file stem.
pub fn read_feature_tables(args: &[String]) -> Result<FeatureTable> {
    let mut merged: Option<FeatureTable> = None;
    for a in args {
        let (name, path) = named(a);
        let path = Path::new(path);
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let mut t = FeatureTable::read(path, name.unwrap_or(&stem))?;
        if let Some(n) = name {
            t.classes.iter_mut().for_each(|c| *c = n.to_string());
        }
        match merged.as_mut() {
            None => merged = Some(t),
            Some(m) => m.extend(t)?,
        }
    }
    merged.ok_or_else(|| Error::Parameter("no feature tables given".into()))
}
