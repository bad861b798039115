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

//! Implementations of the subcommands.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::manifest::RunManifest;
use super::tables::{expand_globs, named, read_feature_tables, real, write_csv, FeatureTable};
use super::{
    ClassifyArgs, Cli, CliError, Command, ConductArgs, FeaturesArgs, FitCurveArgs, GenerateArgs,
    IrregularityArgs, LatsumArgs, ScanPairsArgs,
};
use crate::analysis::{
    cross_validate, fit_log_curve, irregularity, random_baseline, run_experiment, two_feature_scan,
    ExperimentSettings,
};
use crate::conductivity::effective_conductivity;
use crate::configuration::DiskConfiguration;
use crate::eisenstein::{EisensteinEvaluator, DEFAULT_MAX_N, DEFAULT_SERIES_ORDER, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::features::{build_xq, build_xq_prime, project};
use crate::lattice::{Lattice, LatticeSpec};
use crate::microgen::{gen_rsa_shapes, generate, sample_seed, GeneratorSpec, Protocol};
use crate::structsum::SumCache;

type CmdResult = std::result::Result<Vec<String>, CliError>;

pub(super) fn dispatch(cli: &Cli, argv: Vec<String>) -> std::result::Result<(), CliError> {
    let ctx = Context {
        seed: cli.seed,
        tolerance: cli.tolerance.unwrap_or(DEFAULT_TOLERANCE),
    };
    let mut manifest = RunManifest::new(command_name(&cli.command), argv);
    manifest.seed = cli.seed;
    manifest.threads = cli.threads;
    manifest.tolerance = cli.tolerance;
    let outputs = match &cli.command {
        Command::Latsum(a) => latsum(a),
        Command::Generate(a) => generate_cmd(&ctx, a, &mut manifest),
        Command::Features(a) => features(&ctx, a),
        Command::Classify(a) => classify(&ctx, a),
        Command::Conduct(a) => conduct(&ctx, a),
        Command::Irregularity(a) => irregularity_cmd(&ctx, a),
        Command::ScanPairs(a) => scan_pairs(&ctx, a),
        Command::FitCurve(a) => fit_curve(a),
        Command::Replay(_) => unreachable!("handled before dispatch"),
    }?;
    manifest.outputs = outputs;
    manifest.write(cli.out_dir())?;
    Ok(())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Latsum(_) => "latsum",
        Command::Generate(_) => "generate",
        Command::Features(_) => "features",
        Command::Classify(_) => "classify",
        Command::Conduct(_) => "conduct",
        Command::Irregularity(_) => "irregularity",
        Command::ScanPairs(_) => "scan-pairs",
        Command::FitCurve(_) => "fit-curve",
        Command::Replay(_) => "replay",
    }
}

struct Context {
    seed: Option<u64>,
    tolerance: f64,
}

impl Context {
    fn evaluator(&self, lattice: &Lattice) -> Result<EisensteinEvaluator> {
        EisensteinEvaluator::with_options(lattice.clone(), DEFAULT_SERIES_ORDER, self.tolerance, DEFAULT_MAX_N)
    }
}

fn lattice_arg(s: &str) -> std::result::Result<Lattice, CliError> {
    let spec: LatticeSpec = s.parse().map_err(|e: Error| CliError::Usage(e.to_string()))?;
    Ok(spec.build()?)
}

fn read_config(path: &Path, csv_lattice: &Lattice) -> Result<DiskConfiguration> {
    let r = if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        DiskConfiguration::read_csv(path, csv_lattice.clone())
    } else {
        DiskConfiguration::read_json(path)
    };
    r.map_err(|e| match e {
        Error::Io { .. } => e,
        e => Error::Configuration(format!("{}: {e}", path.display())),
    })
}

fn globs(patterns: &[String]) -> std::result::Result<Vec<PathBuf>, CliError> {
    expand_globs(patterns).map_err(CliError::Usage)
}

fn latsum(a: &LatsumArgs) -> CmdResult {
    let base = lattice_arg(&a.lattice)?;
    if a.n_max < 2 {
        return Err(CliError::Usage("--n-max must be at least 2".into()));
    }
    let lattice = if a.n_max > base.n_max() {
        Lattice::with_n_max(base.omega1(), base.omega2(), a.n_max)?
    } else {
        base
    };
    let rows: Vec<Vec<String>> = (2..=a.n_max)
        .map(|n| {
            let s = lattice.sum(n)?;
            Ok(vec![n.to_string(), real(s.re), real(s.im)])
        })
        .collect::<Result<_>>()?;
    write_csv(&a.out.join("latsum.csv"), &["n", "re", "im"], &rows)?;
    Ok(vec!["latsum.csv".into()])
}

fn generate_cmd(ctx: &Context, a: &GenerateArgs, manifest: &mut RunManifest) -> CmdResult {
    let text = std::fs::read_to_string(&a.spec).map_err(|e| CliError::Usage(format!("{}: {e}", a.spec.display())))?;
    let mut spec = GeneratorSpec::from_json(&text)?;
    if let Some(s) = ctx.seed {
        spec.seed = s;
    }
    let csv = match a.format.as_str() {
        "json" => false,
        "csv" => true,
        f => return Err(CliError::Usage(format!("unknown format `{f}`"))),
    };
    if csv && spec.build_lattice()? != Lattice::square() {
        return Err(CliError::Usage("CSV configurations are limited to the square cell".into()));
    }
    manifest.spec_file = Some(a.spec.display().to_string());
    manifest.spec = Some(serde_json::to_value(&spec).map_err(Error::from)?);

    let width = a.count.saturating_sub(1).to_string().len().max(4);
    let samples: Vec<(u64, DiskConfiguration, Option<String>)> = (0..a.count)
        .into_par_iter()
        .map(|i| {
            let mut s = spec.clone();
            s.seed = sample_seed(spec.seed, i as u64);
            if s.protocol == Protocol::RsaShapes {
                let sample = gen_rsa_shapes(&s)?;
                let placements = serde_json::to_string_pretty(&sample.placements)?;
                Ok((s.seed, sample.config, Some(placements)))
            } else {
                Ok((s.seed, generate(&s)?, None))
            }
        })
        .collect::<Result<_>>()?;

    let mut outputs = Vec::new();
    let mut index = Vec::new();
    for (i, (seed, config, placements)) in samples.iter().enumerate() {
        let name = format!("sample_{i:0width$}.{}", if csv { "csv" } else { "json" });
        let path = a.out.join(&name);
        if csv {
            config.write_csv(&path)?;
        } else {
            config.write_json(&path)?;
        }
        if let Some(p) = placements {
            let pname = format!("placements_{i:0width$}.json");
            let ppath = a.out.join(&pname);
            std::fs::write(&ppath, p.clone() + "\n").map_err(|e| Error::io(&ppath, e))?;
            outputs.push(pname);
        }
        index.push(vec![
            name.clone(),
            seed.to_string(),
            config.len().to_string(),
            real(config.concentration()),
        ]);
        outputs.push(name);
    }
    write_csv(&a.out.join("samples.csv"), &["file", "seed", "disks", "concentration"], &index)?;
    outputs.push("samples.csv".into());
    Ok(outputs)
}

fn generator_of(dir: &Path) -> Option<serde_json::Value> {
    RunManifest::read(&dir.join(super::MANIFEST_FILE)).ok()?.spec
}

fn features(ctx: &Context, a: &FeaturesArgs) -> CmdResult {
    let files = globs(&a.configs)?;
    let csv_lattice = lattice_arg(&a.lattice)?;
    let vectors = files
        .par_iter()
        .map(|f| {
            let config = read_config(f, &csv_lattice)?;
            let ev = ctx.evaluator(config.lattice())?;
            let cache = SumCache::new();
            if a.prime {
                build_xq_prime(&config, a.q, &ev, &cache)
            } else {
                build_xq(&config, a.q, &ev, &cache)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let mut header = vec!["sample".to_string()];
    if a.class.is_some() {
        header.push("class".into());
    }
    let mut rows = Vec::new();
    let mut zero_arguments = Vec::new();
    for (f, v) in files.iter().zip(&vectors) {
        let p = project(v, a.projection);
        if rows.is_empty() {
            header.extend(p.names.iter().cloned());
        }
        for &i in &p.zero_arguments {
            zero_arguments.push(serde_json::json!({"sample": f.display().to_string(), "column": p.names[i]}));
        }
        let mut row = vec![f.display().to_string()];
        row.extend(a.class.iter().cloned());
        row.extend(p.values.iter().map(|x| real(*x)));
        rows.push(row);
    }
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    write_csv(&a.out.join("features.csv"), &header, &rows)?;

    let lattices: Vec<LatticeSpec> = {
        let mut l: Vec<LatticeSpec> = Vec::new();
        for f in &files {
            let s = read_config(f, &csv_lattice)?.lattice().spec();
            if !l.contains(&s) {
                l.push(s);
            }
        }
        l
    };
    let meta = serde_json::json!({
        "q": a.q,
        "prime": a.prime,
        "projection": a.projection,
        "columns": header.len() - if a.class.is_some() { 2 } else { 1 },
        "samples": files.len(),
        "lattices": lattices,
        "generator": files.first().and_then(|f| f.parent()).and_then(generator_of),
        "seed": ctx.seed,
        "zero_arguments": zero_arguments,
    });
    let meta_path = a.out.join("features.meta.json");
    std::fs::write(&meta_path, serde_json::to_string_pretty(&meta).map_err(Error::from)? + "\n")
        .map_err(|e| Error::io(&meta_path, e))?;
    Ok(vec!["features.csv".into(), "features.meta.json".into()])
}

fn classify(ctx: &Context, a: &ClassifyArgs) -> CmdResult {
    let table = read_feature_tables(&a.features)?;
    let seed = ctx.seed.unwrap_or(0);
    let q_min = a.q_min.unwrap_or_else(|| table.min_order());
    let q_max = a.q_max.unwrap_or_else(|| table.max_order());
    if q_min == 0 || q_min > q_max {
        return Err(CliError::Usage(format!("empty order range {q_min}..={q_max}")));
    }
    let settings = ExperimentSettings {
        k: a.k,
        repeats: a.repeats,
        q_values: (q_min..=q_max).collect(),
        projections: a.projections.clone(),
        seed,
    };
    let grid = match table.complex_vectors() {
        Some(fs) => run_experiment(&fs, &settings)?,
        None => {
            // single-projection tables: same grid, one dataset per cell
            let mut cells = Vec::new();
            for &p in &settings.projections {
                for &q in &settings.q_values {
                    let ds = table.dataset(q, p, |_| true)?;
                    let fs = crate::analysis::repeated_accuracy(&ds, a.k, a.repeats, seed)?;
                    let n = fs.len() as f64;
                    let mean = fs.iter().sum::<f64>() / n;
                    let var = fs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
                    cells.push(crate::analysis::AccuracyCell {
                        projection: p,
                        q,
                        k: a.k,
                        mean_accuracy: mean,
                        std_accuracy: var.sqrt(),
                        accuracies: fs,
                    });
                }
            }
            cells
        }
    };
    let rows: Vec<Vec<String>> = grid
        .iter()
        .map(|c| {
            vec![
                c.projection.to_string(),
                c.q.to_string(),
                c.k.to_string(),
                real(c.mean_accuracy),
                real(c.std_accuracy),
            ]
        })
        .collect();
    write_csv(
        &a.out.join("accuracy.csv"),
        &["projection", "q", "k", "mean_accuracy", "std_accuracy"],
        &rows,
    )?;

    let mut conf_rows = Vec::new();
    for &p in &settings.projections {
        for &q in &settings.q_values {
            let ds = table.dataset(q, p, |_| true)?;
            let cv = cross_validate(&ds, a.folds, a.train_fraction, seed)?;
            for (i, row) in cv.confusion.iter().enumerate() {
                for (j, n) in row.iter().enumerate() {
                    conf_rows.push(vec![
                        p.to_string(),
                        q.to_string(),
                        ds.class_names()[i].clone(),
                        ds.class_names()[j].clone(),
                        n.to_string(),
                    ]);
                }
            }
        }
    }
    write_csv(
        &a.out.join("confusion.csv"),
        &["projection", "q", "true_class", "predicted_class", "count"],
        &conf_rows,
    )?;

    let ds = table.dataset(settings.q_values[0], settings.projections[0], |_| true)?;
    let base = random_baseline(&ds, a.k, a.repeats, seed)?;
    write_csv(
        &a.out.join("baseline.csv"),
        &["classes", "k", "mean_accuracy"],
        &[vec![ds.n_classes().to_string(), a.k.to_string(), real(base)]],
    )?;
    Ok(vec!["accuracy.csv".into(), "confusion.csv".into(), "baseline.csv".into()])
}

fn conduct(ctx: &Context, a: &ConductArgs) -> CmdResult {
    let config = read_config(&a.config, &lattice_arg(&a.lattice)?)?;
    let ev = ctx.evaluator(config.lattice())?;
    let r = effective_conductivity(&config, a.lambda_f, a.q_max, &ev, &SumCache::new())?;
    let rows: Vec<Vec<String>> = r
        .coefficients
        .iter()
        .zip(&r.partial_sums)
        .enumerate()
        .map(|(q, (b, l))| vec![q.to_string(), real(*b), real(*l)])
        .collect();
    write_csv(&a.out.join("conductivity.csv"), &["q", "b_q", "lambda_partial"], &rows)?;
    let path = a.out.join("result.json");
    std::fs::write(&path, serde_json::to_string_pretty(&r).map_err(Error::from)? + "\n").map_err(|e| Error::io(&path, e))?;
    println!("{}", r.lambda);
    Ok(vec!["conductivity.csv".into(), "result.json".into()])
}

fn irregularity_cmd(ctx: &Context, a: &IrregularityArgs) -> CmdResult {
    let csv_lattice = lattice_arg(&a.lattice)?;
    let mut inputs: Vec<(String, PathBuf)> = Vec::new();
    for arg in &a.configs {
        let (name, pattern) = named(arg);
        for f in globs(&[pattern.to_string()])? {
            let class = match name {
                Some(n) => n.to_string(),
                None => f
                    .parent()
                    .and_then(|p| p.file_name())
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default(),
            };
            inputs.push((class, f));
        }
    }
    let results = inputs
        .par_iter()
        .map(|(_, f)| {
            let config = read_config(f, &csv_lattice)?;
            let ev = ctx.evaluator(config.lattice())?;
            let cache = SumCache::new();
            let mu = irregularity(&config, &ev, &cache)?;
            let lambda = match a.lambda_f {
                Some(l) => Some(effective_conductivity(&config, l, a.q_max, &ev, &cache)?.lambda),
                None => None,
            };
            Ok((mu, lambda))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut header = vec!["sample", "class", "e33_re", "e33_im", "e88_re", "e88_im", "minus_e33", "mu"];
    if a.lambda_f.is_some() {
        header.push("lambda");
    }
    let mut rows = Vec::new();
    let mut classes: BTreeMap<&str, (usize, f64, f64)> = BTreeMap::new();
    for ((class, f), (mu, lambda)) in inputs.iter().zip(&results) {
        let mut row = vec![
            f.display().to_string(),
            class.clone(),
            real(mu.e33.re),
            real(mu.e33.im),
            real(mu.e88.re),
            real(mu.e88.im),
            real(-mu.e33.re),
            real(mu.mu),
        ];
        row.extend(lambda.map(real));
        rows.push(row);
        let e = classes.entry(class.as_str()).or_default();
        e.0 += 1;
        e.1 += mu.mu;
        e.2 += lambda.unwrap_or(0.0);
    }
    write_csv(&a.out.join("irregularity.csv"), &header, &rows)?;
    let mut mheader = vec!["class", "count", "mean_mu"];
    if a.lambda_f.is_some() {
        mheader.push("mean_lambda");
    }
    let means: Vec<Vec<String>> = classes
        .iter()
        .map(|(c, (n, mu, l))| {
            let mut r = vec![c.to_string(), n.to_string(), real(mu / *n as f64)];
            if a.lambda_f.is_some() {
                r.push(real(l / *n as f64));
            }
            r
        })
        .collect();
    write_csv(&a.out.join("class_means.csv"), &mheader, &means)?;
    Ok(vec!["irregularity.csv".into(), "class_means.csv".into()])
}

fn scan_pairs(ctx: &Context, a: &ScanPairsArgs) -> CmdResult {
    let table: FeatureTable = read_feature_tables(&a.features)?;
    let max_p = a.max_p;
    let ds = table.dataset(table.max_order().max(max_p), a.projection, |o| {
        o.is_diagonal_pair() && o.entries()[0] <= max_p
    });
    // tables of a lower order than max_p still provide their diagonal sums
    let ds = match ds {
        Ok(d) => d,
        Err(_) => table.dataset(table.max_order(), a.projection, |o| {
            o.is_diagonal_pair() && o.entries()[0] <= max_p
        })?,
    };
    if ds.n_features() < 2 {
        return Err(CliError::Usage("at least two diagonal sums e_p_p are needed".into()));
    }
    let scores = two_feature_scan(&ds, a.folds, a.train_fraction, ctx.seed.unwrap_or(0))?;
    let rows: Vec<Vec<String>> = scores
        .iter()
        .enumerate()
        .map(|(i, s)| vec![(i + 1).to_string(), s.first.clone(), s.second.clone(), real(s.mean_accuracy)])
        .collect();
    write_csv(&a.out.join("pairs.csv"), &["rank", "first", "second", "mean_accuracy"], &rows)?;
    Ok(vec!["pairs.csv".into()])
}

fn fit_curve(a: &FitCurveArgs) -> CmdResult {
    let mut r = csv::Reader::from_path(&a.input).map_err(|e| CliError::Usage(format!("{}: {e}", a.input.display())))?;
    let header = r.headers().map_err(Error::from)?.clone();
    let col = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Usage(format!("no column `{name}` in {}", a.input.display())))
    };
    let (xi, yi) = (col(&a.x)?, col(&a.y)?);
    let gi = a.group.as_deref().map(col).transpose()?;
    let mut groups: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for rec in r.records() {
        let rec = rec.map_err(Error::from)?;
        let parse = |i: usize| {
            rec[i]
                .trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("`{}`: {e}", &rec[i])))
        };
        let g = gi.map(|i| rec[i].to_string()).unwrap_or_default();
        groups.entry(g).or_default().push((parse(xi)?, parse(yi)?));
    }
    let mut rows = Vec::new();
    for (g, pts) in &groups {
        let f = fit_log_curve(pts)?;
        rows.push(vec![g.clone(), pts.len().to_string(), real(f.a), real(f.b), real(f.residual)]);
    }
    write_csv(&a.out.join("fit.csv"), &["group", "n", "a", "b", "residual"], &rows)?;
    Ok(vec!["fit.csv".into()])
}
