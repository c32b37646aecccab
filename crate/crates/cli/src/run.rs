//! Task execution.

use std::str::FromStr;

use dimpoly_core::chains::{degree_gap_audit, dim_bound_report, theorem5_chain, ChainSpec};
use dimpoly_core::kaehler::{
    chi_extension, chi_intermediate, compare_generator_sets, quasi_polynomial_probe, DimensionReport, GeneratorSide,
    ProbeVerdict, ReportOptions,
};
use dimpoly_core::monoid::PartitionSpec;
use dimpoly_core::oracle::TruncationWindow;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Kind, Result};
use crate::problem::{ProblemSpec, Task, DEFAULT_CLOSURE_DEPTH};
use crate::report::{Audit, Comparison, DimBound, Report, ReportDocument, TaskOutput, SCHEMA_VERSION};

/// Which filtrations the dimension tasks report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PartitionMode {
    /// Total order only.
    Total,
    /// Blockwise only; the coarse partition when the problem gives none.
    Blockwise,
    /// Total, plus blockwise when the problem declares a partition.
    #[default]
    Both,
}

impl FromStr for PartitionMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "total" => Ok(PartitionMode::Total),
            "blockwise" => Ok(PartitionMode::Blockwise),
            "both" => Ok(PartitionMode::Both),
            _ => Err(format!("expected total, blockwise or both, got {:?}", s)),
        }
    }
}

/// `--verify`: keep the file's setting, turn it off, or force a window.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VerifyOverride {
    #[default]
    FromFile,
    Off,
    RMax(i64),
}

impl FromStr for VerifyOverride {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "off" {
            return Ok(VerifyOverride::Off);
        }
        match s.parse::<i64>() {
            Ok(r) if r >= 0 => Ok(VerifyOverride::RMax(r)),
            _ => Err(format!("expected a non-negative integer or \"off\", got {:?}", s)),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub verify: VerifyOverride,
    pub r_table: Option<i64>,
    pub partition_mode: PartitionMode,
}

/// The finished document, and the first fatal condition if any. The
/// document is complete either way so it can still be written out.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub document: ReportDocument,
    pub failure: Option<CliError>,
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{:02x}", b)).collect();
    format!("sha256:{}", hex)
}

fn window(spec: &ProblemSpec, opts: &RunOptions) -> Result<Option<TruncationWindow>> {
    match opts.verify {
        VerifyOverride::FromFile => Ok(spec.verify),
        VerifyOverride::Off => Ok(None),
        VerifyOverride::RMax(r) => {
            let depth = spec.verify.map_or(DEFAULT_CLOSURE_DEPTH, |w| w.closure_depth);
            TruncationWindow::new(r, depth).map(Some).map_err(|e| CliError::from_core(&e))
        }
    }
}

/// The `OracleMismatch` error for a report whose table disagrees with the oracle.
pub fn oracle_failure(rep: &DimensionReport, task: usize) -> Option<CliError> {
    let o = rep.oracle.as_ref().filter(|o| !o.mismatches.is_empty())?;
    let mut e = CliError::new(
        Kind::OracleMismatch,
        format!("brute-force oracle disagrees at {} table row(s)", o.mismatches.len()),
    )
    .in_task(task);
    e.rows = o.mismatches.clone();
    Some(e)
}

fn check_oracle(rep: &DimensionReport, failure: &mut Option<CliError>, task: usize) {
    if failure.is_none() {
        *failure = oracle_failure(rep, task);
    }
}

/// Runs every task of `spec`. `src` is the original file, for the digest.
pub fn run(spec: &ProblemSpec, src: &[u8], opts: &RunOptions) -> Result<Outcome> {
    let verify = window(spec, opts)?;
    let ropts = ReportOptions { r_table: opts.r_table, verify };
    let x = &spec.extension;
    let coarse;
    let parts: Vec<Option<&PartitionSpec>> = match (opts.partition_mode, &spec.partition) {
        (PartitionMode::Total, _) => vec![None],
        (PartitionMode::Both, None) => vec![None],
        (PartitionMode::Both, Some(p)) => vec![None, Some(p)],
        (PartitionMode::Blockwise, Some(p)) => vec![Some(p)],
        (PartitionMode::Blockwise, None) => {
            coarse = PartitionSpec::coarse(&spec.signature);
            vec![Some(&coarse)]
        }
    };
    let mut failure = None;
    let mut tasks = Vec::with_capacity(spec.tasks.len());
    for (i, task) in spec.tasks.iter().enumerate() {
        let number = i + 1;
        let core = |e: dimpoly_core::Error| CliError::from_core(&e).in_task(number);
        let out = match task {
            Task::ChiExtension | Task::ChiIntermediate { .. } => {
                let mut reports = Vec::new();
                for p in &parts {
                    let rep = match task {
                        Task::ChiIntermediate { field } => chi_intermediate(x, field, *p, &ropts),
                        _ => chi_extension(x, *p, &ropts),
                    }
                    .map_err(core)?;
                    check_oracle(&rep, &mut failure, number);
                    reports.push(Report::from(&rep));
                }
                match task {
                    Task::ChiIntermediate { .. } => TaskOutput::ChiIntermediate { reports },
                    _ => TaskOutput::ChiExtension { reports },
                }
            }
            Task::QuasiProbe { generators, r_max, require_polynomial } => {
                let probe = quasi_polynomial_probe(x, generators, *r_max).map_err(core)?;
                if let (true, ProbeVerdict::NotEventuallyPolynomial { r }) = (require_polynomial, &probe.verdict) {
                    if failure.is_none() {
                        failure = Some(
                            CliError::new(
                                Kind::NotEventuallyPolynomial,
                                format!("transcendence degrees are not eventually polynomial (fit fails at r = {})", r),
                            )
                            .in_task(number),
                        );
                    }
                }
                TaskOutput::from(&probe)
            }
            Task::ChainAudit { fields } => {
                let chain = ChainSpec::new(x.clone(), fields.clone()).map_err(core)?;
                TaskOutput::ChainAudit { audit: Audit::from(&degree_gap_audit(&chain).map_err(core)?) }
            }
            Task::Theorem5Chain { caps } => {
                let chain = theorem5_chain(x, caps).map_err(core)?;
                let alg = x.algebra();
                let members = chain
                    .fields()
                    .iter()
                    .map(|f| f.generators.iter().map(|g| alg.display_element(g).to_string()).collect())
                    .collect();
                let audit = Audit::from(&degree_gap_audit(&chain).map_err(core)?);
                TaskOutput::Theorem5Chain { caps: caps.clone(), members, audit }
            }
            Task::DimBound { k } => TaskOutput::DimBound(DimBound::from(&dim_bound_report(x, *k).map_err(core)?)),
            Task::CompareGenerators { right, forward, backward, fields } => {
                let (lf, rf) = match fields {
                    Some((l, r)) => (Some(l), Some(r)),
                    None => (None, None),
                };
                let c = compare_generator_sets(
                    GeneratorSide { presentation: x, field: lf },
                    GeneratorSide { presentation: right, field: rf },
                    forward,
                    backward,
                    &ReportOptions { r_table: opts.r_table, verify },
                )
                .map_err(core)?;
                check_oracle(&c.left, &mut failure, number);
                check_oracle(&c.right, &mut failure, number);
                TaskOutput::CompareGenerators(Comparison::from(&c))
            }
        };
        tasks.push(out);
    }
    let document = ReportDocument {
        tool: "dimpoly".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        schema: SCHEMA_VERSION,
        input_digest: digest(src),
        name: spec.name.clone(),
        tasks,
    };
    Ok(Outcome { document, failure })
}
