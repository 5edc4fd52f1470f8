use std::fs;
use std::path::Path;

use qksvm_core::data::{write_csv, GeneratorSpec, HardKind, Transform};
use qksvm_core::experiment::{
    prepare_dataset, run_suite, run_train_eval, run_train_eval_with_gram, sweep_depth as run_depth,
    sweep_kernels as run_kernels, KernelSpec, StudyResult, SuiteConfig, SweepResult,
};
use qksvm_core::kernels::{psd_report, KernelMatrix};
use qksvm_core::plot::render_svg;
use serde_json::json;

use crate::args::{
    GenDataArgs, GenKind, KernelArgs, PlotArgs, SuiteArgs, SweepDepthArgs, SweepKernelsArgs,
    TrainEvalArgs,
};
use crate::overrides::build_config;
use crate::{CliError, CliResult};

fn write_file(path: &Path, bytes: impl AsRef<[u8]>) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| qksvm_core::Error::io(path, e).into())
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_file(path, text)
}

fn parse_centers(s: &str) -> CliResult<Vec<Vec<f64>>> {
    s.split(';')
        .map(|c| {
            c.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| CliError::Usage(format!("bad center coordinate '{v}'")))
                })
                .collect()
        })
        .collect()
}

pub fn gen_data(a: &GenDataArgs) -> CliResult<()> {
    let spec = match a.kind {
        GenKind::Blobs => GeneratorSpec::Blobs {
            n_per_class: a.n,
            centers: parse_centers(&a.centers)?,
            spread: a.spread,
            seed: a.seed,
        },
        k => GeneratorSpec::Hard {
            kind: match k {
                GenKind::Xor => HardKind::Xor,
                GenKind::Rings => HardKind::Rings,
                _ => HardKind::NoisyLabels,
            },
            n_per_class: a.n,
            noise: a.noise,
            seed: a.seed,
        },
    };
    let ds = spec.generate()?;
    write_csv(&ds, &a.out)?;
    let sidecar = a.out.with_extension("provenance.json");
    write_json(
        &sidecar,
        &json!({
            "generator": spec,
            "rows": ds.len(),
            "features": ds.n_features(),
            "classes": ds.classes,
        }),
    )?;
    println!(
        "wrote {} rows to {} (provenance: {})",
        ds.len(),
        a.out.display(),
        sidecar.display()
    );
    Ok(())
}

/// Gram over the whole dataset in file row order, with preprocessing fitted
/// on the training split exactly as `train-eval` does.
pub fn kernel(a: &KernelArgs) -> CliResult<()> {
    let (cfg, base) = build_config(&a.cfg, true)?;
    let mut ds = cfg.dataset.load(&base)?;
    if !cfg.preprocess.is_empty() {
        let prepared = prepare_dataset(&ds, &cfg)?;
        ds = prepared
            .transforms
            .iter()
            .try_fold(ds, |d, t: &Transform| t.apply(&d))?;
    }
    let kind = cfg.kernel.resolve(ds.n_features())?;
    let gram = kind.gram(&ds.x)?;
    let is_json = a.out.extension().is_some_and(|e| e == "json");
    if is_json {
        let mut text = gram.to_json()?;
        text.push('\n');
        write_file(&a.out, text)?;
    } else {
        let file = fs::File::create(&a.out).map_err(|e| qksvm_core::Error::io(&a.out, e))?;
        gram.write_csv(std::io::BufWriter::new(file))?;
    }
    let psd = psd_report(&gram)?;
    println!(
        "{}",
        serde_json::to_string(&json!({
            "size": gram.size(),
            "min_eigenvalue": psd.min_eigenvalue,
            "is_psd": psd.is_psd,
            "out": a.out.display().to_string(),
        }))?
    );
    Ok(())
}

pub fn train_eval(a: &TrainEvalArgs) -> CliResult<()> {
    let (cfg, base) = build_config(&a.cfg, true)?;
    let result = match &a.gram {
        Some(path) => run_train_eval_with_gram(&cfg, &base, &KernelMatrix::load(path)?)?,
        None => run_train_eval(&cfg, &base)?,
    };
    write_json(&a.out, &result)?;
    if let Some(path) = &a.model_out {
        write_json(path, &json!({ "config": cfg, "model": result.model }))?;
    }
    println!(
        "train_acc={} test_acc={} test_f1={}",
        result.train_accuracy(),
        result.test_accuracy(),
        result.outcome.test_report.f1
    );
    Ok(())
}

fn emit_sweep(sweep: &SweepResult, csv: &Path, json_out: Option<&Path>) -> CliResult<()> {
    let text = sweep.to_csv_string()?;
    write_file(csv, &text)?;
    if let Some(path) = json_out {
        write_json(path, sweep)?;
    }
    print!("{text}");
    Ok(())
}

pub fn sweep_depth(a: &SweepDepthArgs) -> CliResult<()> {
    let (cfg, base) = build_config(&a.cfg, false)?;
    if !matches!(cfg.kernel, KernelSpec::Quantum { .. }) {
        return Err(CliError::Usage("sweep-depth needs a quantum kernel".into()));
    }
    let reps = if a.cfg.reps.is_empty() {
        vec![1, 2, 3, 4, 5]
    } else {
        a.cfg.reps.clone()
    };
    let sweep = run_depth(&cfg, &reps, &base)?;
    emit_sweep(&sweep, &a.out, a.json_out.as_deref())
}

pub fn sweep_kernels(a: &SweepKernelsArgs) -> CliResult<()> {
    let (cfg, base) = build_config(&a.cfg, true)?;
    let sweep = run_kernels(&cfg, &a.kernels, &a.learning_rates, &base)?;
    emit_sweep(&sweep, &a.out, a.json_out.as_deref())
}

pub fn plot(a: &PlotArgs) -> CliResult<()> {
    let text = fs::read_to_string(&a.input).map_err(|e| qksvm_core::Error::io(&a.input, e))?;
    let title = a.title.clone().unwrap_or_else(|| {
        a.input
            .file_stem()
            .map_or_else(String::new, |s| s.to_string_lossy().into_owned())
    });
    write_file(&a.out, render_svg(&text, &title)?)
}

/// Writes `summary.csv`, `report.json` and, per sweep study,
/// `<tag>_depth.{csv,svg}` or `<tag>_kernels.{csv,svg}`.
pub fn suite(a: &SuiteArgs) -> CliResult<()> {
    let suite = SuiteConfig::from_file(&a.config)?;
    let base = a
        .config
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let report = run_suite(&suite, base)?;
    fs::create_dir_all(&a.out_dir).map_err(|e| qksvm_core::Error::io(&a.out_dir, e))?;
    for result in &report.results {
        let (tag, sweep, suffix, title) = match result {
            StudyResult::Depth { tag, sweep } => (tag, sweep, "depth", "accuracy vs depth"),
            StudyResult::KernelSweep { tag, sweep } => (
                tag,
                sweep,
                "kernels",
                "accuracy by kernel and learning rate",
            ),
            StudyResult::Compare { .. } => continue,
        };
        let csv = sweep.to_csv_string()?;
        write_file(&a.out_dir.join(format!("{tag}_{suffix}.csv")), &csv)?;
        let svg = render_svg(&csv, &format!("{tag}: {title}"))?;
        write_file(&a.out_dir.join(format!("{tag}_{suffix}.svg")), svg)?;
    }
    let summary = report.summary_csv()?;
    write_file(&a.out_dir.join("summary.csv"), &summary)?;
    write_json(&a.out_dir.join("report.json"), &report)?;
    print!("{summary}");
    eprintln!("suite finished in {:.2} s", report.wall_clock_seconds);
    Ok(())
}
