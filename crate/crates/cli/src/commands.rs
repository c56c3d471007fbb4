use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use qwitt_core::coboundary::complex_defect;
use qwitt_core::cochains::{random_alpha_compatible_cochain1, random_cochain1, Cochain2, CoeffKind};
use qwitt_core::deformation::{deform_report, DeformReport, TruncatedDeformation};
use qwitt_core::h2solver::{reduce, sweep, CertificateJson, QuotientReport, ReduceOptions, CSV_HEADER};
use qwitt_core::linalg::Exact;
use qwitt_core::qfield::{CoeffField, Mode, QRat, Sampled, Symbolic};
use qwitt_core::qwitt::{bracket_basis, scan_jacobi, scan_sigma_derivation, BasisVector, Kind, Parity};

use crate::config::{Format, RunConfig};
use crate::error::{CliError, CliResult};

/// What a command produced: the report text and whether every
/// expected-zero quantity was zero.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
    /// One-line human summary for stderr.
    pub summary: String,
}

macro_rules! with_field {
    ($mode:expr, |$f:ident| $body:expr) => {
        match $mode {
            Mode::Symbolic => {
                let $f = &Symbolic::new();
                $body
            }
            Mode::Sampled(q) => {
                let $f = &Sampled::new(q.clone());
                $body
            }
        }
    };
}

fn json<T: Serialize>(v: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn json_only(cfg: &RunConfig) -> CliResult<()> {
    if cfg.format == Format::Csv {
        return Err(CliError::Config(format!("{} only writes JSON", cfg.command)));
    }
    Ok(())
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    config: &'a RunConfig,
    #[serde(flatten)]
    result: T,
}

#[derive(Serialize)]
struct AlgebraResult {
    jacobi_triples: usize,
    jacobi_defects: usize,
    sigma_pairs: usize,
    sigma_defects: usize,
    /// Up to ten failing inputs.
    witnesses: Vec<String>,
}

/// Hom-Jacobi on all generator triples and the σ-derivation property on all
/// monomial pairs with degrees in `[-N, N]`. `inject_fault` doubles the
/// structure constant of `[L_1, L_2]`.
pub fn verify_algebra(cfg: &RunConfig, inject_fault: bool) -> CliResult<Outcome> {
    json_only(cfg)?;
    let n = cfg.window;
    let r = with_field!(&cfg.mode, |f| {
        let br = |x: BasisVector, y: BasisVector| {
            let v = bracket_basis(f, x, y)?;
            let hit = inject_fault && x.kind == Kind::L && y.kind == Kind::L && (x.degree, y.degree) == (1, 2);
            Some(if hit { (v.0, f.add(&v.1, &v.1)) } else { v })
        };
        let (jt, jd) = scan_jacobi(f, br, -n, n);
        let (sp, sd) = scan_sigma_derivation(f, -n, n);
        let mut witnesses: Vec<String> = jd
            .iter()
            .take(10)
            .map(|d| format!("({}, {}, {}): {}", d.inputs[0], d.inputs[1], d.inputs[2], d.value.render(f)))
            .collect();
        witnesses.extend(sd.iter().take(10usize.saturating_sub(witnesses.len())).map(|(a, b)| format!("Δ on {a:?} x {b:?}")));
        AlgebraResult { jacobi_triples: jt, jacobi_defects: jd.len(), sigma_pairs: sp, sigma_defects: sd.len(), witnesses }
    });
    let defects = r.jacobi_defects + r.sigma_defects;
    Ok(Outcome { text: json(&Envelope { config: cfg, result: &r })?, ok: defects == 0, summary: format!("{defects} defects") })
}

#[derive(Serialize)]
struct ComplexRow {
    parity: Parity,
    s: i64,
    samples: usize,
    failing_samples: usize,
    checked_triples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_defect: Option<String>,
}

fn complex_rows<F: CoeffField>(f: &F, cfg: &RunConfig) -> CliResult<Vec<ComplexRow>> {
    let w = cfg.window()?;
    cfg.sectors()
        .par_iter()
        .map(|&(parity, s)| {
            let mut row = ComplexRow { parity, s, samples: cfg.samples, failing_samples: 0, checked_triples: 0, first_defect: None };
            for i in 0..cfg.samples {
                let seed = cfg.seed.wrapping_add(i as u64);
                let g = if cfg.alpha_compatible {
                    random_alpha_compatible_cochain1(parity, s, &w, seed, CoeffKind::Integer)
                } else {
                    random_cochain1(parity, s, &w, seed, CoeffKind::Integer)
                };
                let d = complex_defect(f, &g.specialize(f)?, &w);
                row.checked_triples += d.checked;
                if let Some((t, v)) = d.values.iter().next() {
                    row.failing_samples += 1;
                    row.first_defect.get_or_insert_with(|| format!("seed {seed}: {t} = {}", f.render(v)));
                }
            }
            Ok(row)
        })
        .collect()
}

/// `δ²δ¹g` for random 1-cochains in every selected sector.
pub fn verify_complex(cfg: &RunConfig) -> CliResult<Outcome> {
    let rows = with_field!(&cfg.mode, |f| complex_rows(f, cfg)?);
    let failing: usize = rows.iter().map(|r| r.failing_samples).sum();
    let text = match cfg.format {
        Format::Json => json(&Envelope { config: cfg, result: serde_json::json!({ "sectors": &rows }) })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["parity", "s", "samples", "failing_samples", "checked_triples"])?;
            for r in &rows {
                w.write_record([r.parity.to_string(), r.s.to_string(), r.samples.to_string(), r.failing_samples.to_string(), r.checked_triples.to_string()])?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?).expect("csv is utf-8")
        }
    };
    Ok(Outcome { text, ok: failing == 0, summary: format!("{failing} failing samples over {} sectors", rows.len()) })
}

#[derive(Serialize)]
struct SweepResult<'a> {
    sectors: &'a [QuotientReport],
    all_zero: bool,
}

pub fn h2_sweep(cfg: &RunConfig) -> CliResult<Outcome> {
    let w = cfg.window()?;
    let reports = sweep(&cfg.mode, &cfg.sectors(), &w, cfg.timing).into_iter().collect::<Result<Vec<_>, _>>()?;
    let all_zero = reports.iter().all(|r| r.dim_h2_core == 0);
    let text = match cfg.format {
        Format::Json => json(&Envelope { config: cfg, result: SweepResult { sectors: &reports, all_zero } })?,
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(Vec::new());
            wr.write_record(CSV_HEADER)?;
            for r in &reports {
                wr.write_record(r.csv_record())?;
            }
            String::from_utf8(wr.into_inner().map_err(|e| CliError::Io(e.to_string()))?).expect("csv is utf-8")
        }
    };
    let nonzero = reports.iter().filter(|r| r.dim_h2_core != 0).count();
    Ok(Outcome { text, ok: all_zero, summary: format!("{} sectors, {nonzero} with nonzero dim_H2_core", reports.len()) })
}

fn read_input(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Parse a 2-cochain in the text or JSON format.
pub fn read_cochain(path: &Path) -> CliResult<Cochain2<QRat>> {
    let text = read_input(path)?;
    Ok(if is_json(&text) { Cochain2::from_json(&text)? } else { Cochain2::from_text(&text)? })
}

pub fn read_deformation(path: &Path) -> CliResult<TruncatedDeformation<QRat>> {
    let text = read_input(path)?;
    Ok(if is_json(&text) {
        let j = serde_json::from_str(&text).map_err(|e| qwitt_core::Error::Parse { what: "deformation JSON", message: e.to_string() })?;
        TruncatedDeformation::from_json_value(&j)?
    } else {
        TruncatedDeformation::from_text(&text)?
    })
}

#[derive(Serialize)]
struct ReduceResult {
    certificate: CertificateJson,
    verified: bool,
}

fn reduce_in<F: Exact>(f: &F, cfg: &RunConfig, c: &Cochain2<QRat>) -> CliResult<ReduceResult> {
    let w = cfg.window()?;
    let c = c.specialize(f)?;
    let cert = reduce(f, &c, &w, ReduceOptions { strict: cfg.strict })?;
    Ok(ReduceResult { verified: cert.verify(f), certificate: cert.to_json_value(f) })
}

pub fn reduce_cmd(cfg: &RunConfig, c: &Cochain2<QRat>) -> CliResult<Outcome> {
    json_only(cfg)?;
    if cfg.window > c.bound {
        return Err(CliError::Config(format!("window {} exceeds the cochain bound {}", cfg.window, c.bound)));
    }
    let r = with_field!(&cfg.mode, |f| reduce_in(f, cfg, c)?);
    let summary = format!("method {:?}, residual zero on core: {}", r.certificate.method, r.verified);
    Ok(Outcome { ok: r.verified, text: json(&Envelope { config: cfg, result: &r })?, summary })
}

#[derive(Serialize)]
struct DeformResult {
    report: DeformReport,
}

fn deform_in<F: Exact>(f: &F, cfg: &RunConfig, d: &TruncatedDeformation<QRat>) -> CliResult<DeformReport> {
    let mut d = d.specialize(f)?;
    d.window = cfg.window()?;
    Ok(deform_report(f, &d)?.0)
}

pub fn deform_check(cfg: &RunConfig, d: &TruncatedDeformation<QRat>) -> CliResult<Outcome> {
    json_only(cfg)?;
    if cfg.window != d.window.n() {
        return Err(CliError::Config(format!("window {} differs from the deformation window {}", cfg.window, d.window.n())));
    }
    let report = with_field!(&cfg.mode, |f| deform_in(f, cfg, d)?);
    let yes = |b: bool| if b { "yes" } else { "no" };
    let trivial = report.trivializable.unwrap_or(false);
    let summary = format!("cocycle: {}\ntrivializable: {}", yes(report.cocycle), yes(trivial));
    Ok(Outcome { ok: report.cocycle && trivial, text: json(&Envelope { config: cfg, result: DeformResult { report } })?, summary })
}
