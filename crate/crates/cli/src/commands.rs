//! Command implementations. Each returns its output as text or writes CSV to
//! a caller-supplied writer, so the binary only handles arguments and exit
//! codes.

use std::io::Write;

use tracedist::pipeline::{DISTINGUISH_T1, DISTINGUISH_T2};
use tracedist::{
    distinguish_report, estimate_trace_distance, oracle_trace_distance, swap_test_prob_one, ComplexScalar,
    DensityMatrix, PipelineReport, RunConfig, Variant,
};

use crate::cases::reference_cases;
use crate::error::CliResult;
use crate::files::EstimateSettings;
use crate::format::fmt6;

pub const ESTIMATE_HEADER: [&str; 9] = [
    "clock_qubits",
    "kappa1",
    "kappa2",
    "L",
    "ell_tilde",
    "D_estimate",
    "D_oracle",
    "variant",
    "estimator",
];

pub fn oracle(a: &DensityMatrix, b: &DensityMatrix) -> CliResult<String> {
    Ok(format!("D={}", fmt6(oracle_trace_distance(a, b)?)))
}

#[derive(Debug, Clone)]
pub struct EstimateRow {
    pub clock_qubits: usize,
    pub report: PipelineReport,
    pub d_oracle: f64,
}

impl EstimateRow {
    fn record(&self) -> Vec<String> {
        let r = &self.report;
        vec![
            self.clock_qubits.to_string(),
            fmt6(r.kappa1),
            fmt6(r.kappa2),
            fmt6(r.l),
            fmt6(r.ell_tilde),
            fmt6(r.d_estimate),
            fmt6(self.d_oracle),
            r.variant.name().to_string(),
            r.config.estimator.name().to_string(),
        ]
    }
}

/// Runs the estimator for every clock size. Rows are computed concurrently and
/// returned in ascending clock order.
pub fn estimate_rows(
    a: &DensityMatrix,
    b: &DensityMatrix,
    settings: &EstimateSettings,
) -> CliResult<Vec<EstimateRow>> {
    let d_oracle = oracle_trace_distance(a, b)?;
    let mut clock = settings.clock.clone();
    clock.sort_unstable();
    clock.dedup();
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = clock
            .iter()
            .map(|&m| {
                let cfg = RunConfig {
                    clock_qubits: m,
                    ..settings.run
                };
                s.spawn(move || estimate_trace_distance(a, b, &cfg, settings.variant))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("estimator thread panicked"))
            .collect()
    });
    clock
        .into_iter()
        .zip(results)
        .map(|(m, r)| {
            Ok(EstimateRow {
                clock_qubits: m,
                report: r?,
                d_oracle,
            })
        })
        .collect()
}

/// Provenance lines describing a run configuration.
pub fn run_provenance(variant: Variant, run: &RunConfig) -> Vec<String> {
    let p = run
        .second_clock_qubits
        .map_or_else(|| "exact".to_string(), |p| p.to_string());
    let mut lines = vec![
        format!(
            "variant={} unitary_mode={} estimator={} init={}",
            variant.name(),
            run.unitary_mode.name(),
            run.estimator.name(),
            match run.init {
                tracedist::ClockInit::Uniform => "uniform",
                tracedist::ClockInit::ImprovedSine => "improved_sine",
            }
        ),
        format!("t={} t0={} P={} seed={}", fmt6(run.t), fmt6(run.t0), p, run.seed),
    ];
    if let tracedist::EstimatorKind::Sample { shots } = run.estimator {
        lines.push(format!("shots={shots}"));
    }
    if run.unitary_mode == tracedist::UnitaryMode::LmrChannel {
        lines.push(format!("lmr_steps={}", run.lmr_steps));
    }
    lines
}

fn write_comments<W: Write + ?Sized>(out: &mut W, lines: &[String]) -> CliResult<()> {
    writeln!(out, "# tracedist {}", env!("CARGO_PKG_VERSION"))?;
    for line in lines {
        writeln!(out, "# {line}")?;
    }
    Ok(())
}

pub fn write_estimate_csv<W: Write + ?Sized>(
    out: &mut W,
    rows: &[EstimateRow],
    settings: &EstimateSettings,
    sources: &[String],
) -> CliResult<()> {
    let mut lines = vec!["command=estimate".to_string()];
    lines.extend(sources.iter().cloned());
    lines.extend(run_provenance(settings.variant, &settings.run));
    write_comments(out, &lines)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ESTIMATE_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    /// One row per clock size, one column per reference case.
    Table2,
    /// Long form: `clock_qubits,case,estimated,ideal`.
    Fig4,
}

pub const REPRODUCE_CLOCKS: std::ops::RangeInclusive<usize> = 2..=10;

/// Settings for `reproduce`: the reduced variant with exact unitaries and the
/// expectation readout unless overridden.
pub fn reproduce_settings() -> EstimateSettings {
    EstimateSettings {
        variant: Variant::Reduced,
        clock: REPRODUCE_CLOCKS.collect(),
        run: RunConfig::default(),
    }
}

/// `(label, rows)` for each reference case.
pub fn reproduce_rows(settings: &EstimateSettings) -> CliResult<Vec<(&'static str, Vec<EstimateRow>)>> {
    reference_cases()
        .into_iter()
        .map(|case| Ok((case.label, estimate_rows(&case.a, &case.b, settings)?)))
        .collect()
}

pub fn write_reproduction<W: Write + ?Sized>(
    out: &mut W,
    table: Table,
    settings: &EstimateSettings,
) -> CliResult<()> {
    let cases = reproduce_rows(settings)?;
    let mut lines = vec![format!(
        "command=reproduce {}",
        match table {
            Table::Table2 => "table2",
            Table::Fig4 => "fig4",
        }
    )];
    lines.push(
        "cases: D=1 is |0> vs |1>; D=0.625 is |0> vs sqrt(1-0.625^2)|0> + 0.625|1>; D=0 is |0> vs |0>".into(),
    );
    lines.extend(run_provenance(settings.variant, &settings.run));
    write_comments(out, &lines)?;
    let mut w = csv::Writer::from_writer(out);
    match table {
        Table::Table2 => {
            let mut header = vec!["clock_qubits".to_string()];
            header.extend(cases.iter().map(|(l, _)| format!("D_est[{l}]")));
            header.extend(cases.iter().map(|(l, _)| format!("D_oracle[{l}]")));
            w.write_record(&header)?;
            for (i, m) in settings.clock.iter().enumerate() {
                let mut rec = vec![m.to_string()];
                rec.extend(cases.iter().map(|(_, rows)| fmt6(rows[i].report.d_estimate)));
                rec.extend(cases.iter().map(|(_, rows)| fmt6(rows[i].d_oracle)));
                w.write_record(&rec)?;
            }
        }
        Table::Fig4 => {
            w.write_record(["clock_qubits", "case", "estimated", "ideal"])?;
            for (label, rows) in &cases {
                for row in rows {
                    w.write_record([
                        row.clock_qubits.to_string(),
                        label.to_string(),
                        fmt6(row.report.d_estimate),
                        fmt6(row.d_oracle),
                    ])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn distinguish(a: &DensityMatrix, b: &DensityMatrix, cfg: &RunConfig) -> CliResult<String> {
    let rep = distinguish_report(a, b, cfg)?;
    Ok(format!(
        "clock_qubits={} equal={} phase={} target={} t1={} t2={}",
        cfg.clock_qubits,
        rep.equal,
        fmt6(rep.readout),
        fmt6(DISTINGUISH_T2 / std::f64::consts::TAU),
        fmt6(DISTINGUISH_T1),
        fmt6(DISTINGUISH_T2),
    ))
}

pub fn swap_test(psi: &[ComplexScalar], phi: &[ComplexScalar]) -> CliResult<String> {
    Ok(format!("P1={}", fmt6(swap_test_prob_one(psi, phi)?)))
}
