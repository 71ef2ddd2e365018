//! Command front end: catalogue regression, tensor checking, pair
//! verification. Everything here returns a `Report` plus a process exit
//! code; the binary is a thin argument parser over these functions.
//!
//! Exit codes: 0 = checks passed (for `pair`, a completed pipeline
//! regardless of verdicts), 1 = a check or pipeline-consistency failure,
//! 2 = input error.

use std::path::Path;

use crate::catalogue;
use crate::curvature::{
    bianchi_map, is_semi_symmetric, ricci_decomposition, ricci_with, CurvatureError,
    CurvatureTensor, GenericityOpts, SpaceRef,
};
use crate::exact::{Assignment, Scalar, Sym, DEFAULT_SEED};
use crate::homogeneous::{verify_pair, MetricChoice, PairError, PairFile};
use crate::report::{CheckRecord, Report, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Run configuration shared by every subcommand. The seed defaults to a
/// fixed constant so runs are reproducible.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub params: Assignment,
    pub format: OutputFormat,
    pub strict_paper: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            params: Assignment::new(),
            format: OutputFormat::Text,
            strict_paper: false,
        }
    }
}

/// Parses `a=1,b=2/3` into an assignment of rational values.
pub fn parse_params(text: &str) -> Result<Assignment, String> {
    let mut out = Assignment::new();
    for piece in text.split(',').filter(|p| !p.trim().is_empty()) {
        let Some((name, value)) = piece.split_once('=') else {
            return Err(format!("bad parameter assignment {:?}", piece));
        };
        let scalar = Scalar::parse(value.trim()).map_err(|e| format!("{}: {}", piece, e))?;
        if !scalar.is_rational() {
            return Err(format!("parameter value {:?} is not rational", value));
        }
        out.insert(Sym::new(name.trim()), scalar);
    }
    Ok(out)
}

/// Extends a partial assignment to cover `vars`, mapping unassigned
/// parameters to themselves (so substitution leaves them symbolic).
fn extend_assignment(vars: &[Sym], partial: &Assignment) -> Assignment {
    vars.iter()
        .map(|v| {
            (
                *v,
                partial
                    .get(v)
                    .cloned()
                    .unwrap_or_else(|| Scalar::from_poly(crate::exact::Poly::var(*v))),
            )
        })
        .collect()
}

fn error_report(command: &str, seed: u64, message: String) -> Report {
    let mut report = Report::new(command, seed);
    report.push(CheckRecord::new("input").note(message));
    report.verdict = Verdict::Error;
    report
}

// ---------------------------------------------------------------------------
// catalogue
// ---------------------------------------------------------------------------

/// Verifies catalogue entries (all of them, or a filter). Exit 0 iff every
/// selected case matches; `strict_paper` escalates the adjudicated errata
/// to failures.
pub fn cmd_catalogue(entries: Option<Vec<String>>, cfg: &RunConfig) -> (Report, i32) {
    let mut report = Report::new("catalogue", cfg.seed);
    if let Some(filter) = &entries {
        let unknown = catalogue::unknown_entries(filter);
        if !unknown.is_empty() {
            return (
                error_report(
                    "catalogue",
                    cfg.seed,
                    format!("unknown entries: {}", unknown.join(", ")),
                ),
                EXIT_INPUT,
            );
        }
    }
    let results = match catalogue::verify_catalogue(entries.as_deref(), cfg.seed) {
        Ok(r) => r,
        Err(e) => {
            return (
                error_report("catalogue", cfg.seed, format!("{}", e)),
                EXIT_INPUT,
            )
        }
    };
    let mut all_ok = true;
    for r in results {
        let ok = if cfg.strict_paper {
            r.strict_matched
        } else {
            r.matched
        };
        all_ok &= ok;
        let mut check = CheckRecord::new(format!("{} [{}]", r.entry, r.case))
            .computed(format!(
                "dim R(g) = {}, dim g_sym = {}",
                r.computed_dim_r, r.computed_dim_sym
            ))
            .claimed(format!(
                "dim R(g) = {}, dim g_sym = {}",
                r.claimed_dim_r.map_or("-".to_string(), |d| d.to_string()),
                r.claimed_dim_sym.map_or("-".to_string(), |d| d.to_string()),
            ))
            .matched(ok);
        if let Some((sq, rank, ker)) = r.rank_nullity {
            check = check.note(format!(
                "rank-nullity: dim(g v g) = {}, rank B = {}, dim ker = {}",
                sq, rank, ker
            ));
        }
        for (desc, dr, ds) in &r.sampled {
            check = check.witness(format!("{}: dims ({}, {})", desc, dr, ds));
        }
        for n in &r.notes {
            check = check.note(n.clone());
        }
        report.push(check);
    }
    report.verdict = if all_ok { Verdict::Pass } else { Verdict::Fail };
    (report, if all_ok { EXIT_OK } else { EXIT_MISMATCH })
}

// ---------------------------------------------------------------------------
// tensor
// ---------------------------------------------------------------------------

/// Checks a tensor file: Bianchi, semi-symmetry, holonomy dimension,
/// Ricci type, decomposition. Exit 0 iff Bianchi holds and, when the file
/// asserts it, semi-symmetry holds.
pub fn cmd_tensor_check(path: &Path, cfg: &RunConfig) -> (Report, i32) {
    let mut report = Report::new("tensor", cfg.seed);
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            return (
                error_report("tensor", cfg.seed, format!("cannot read {}: {}", path.display(), e)),
                EXIT_INPUT,
            )
        }
    };
    let file: crate::curvature::TensorFile = match serde_json::from_str(&text) {
        Ok(f) => f,
        Err(e) => {
            return (
                error_report("tensor", cfg.seed, format!("bad tensor file: {}", e)),
                EXIT_INPUT,
            )
        }
    };
    let space = match file.resolve_space(path.parent()) {
        Ok(s) => s,
        Err(e) => return (error_report("tensor", cfg.seed, format!("{}", e)), EXIT_INPUT),
    };
    let space: SpaceRef = std::sync::Arc::new(space);
    let tensor = match file.to_tensor(&space) {
        Ok(t) => t,
        Err(e) => return (error_report("tensor", cfg.seed, format!("{}", e)), EXIT_INPUT),
    };
    // Optional parameter substitution, leaving unassigned parameters
    // symbolic.
    let tensor = if cfg.params.is_empty() {
        tensor
    } else {
        let mut vars: Vec<Sym> = space.params().to_vec();
        for e in tensor.form().entries() {
            for v in e.vars() {
                if let Err(pos) = vars.binary_search(&v) {
                    vars.insert(pos, v);
                }
            }
        }
        let full = extend_assignment(&vars, &cfg.params);
        match tensor.substitute(&full) {
            Ok(t) => t,
            Err(e) => {
                return (error_report("tensor", cfg.seed, format!("{}", e)), EXIT_INPUT)
            }
        }
    };

    let bianchi_ok = bianchi_map(&tensor).is_zero();
    report.push(
        CheckRecord::new("bianchi")
            .computed(if bianchi_ok { "flat" } else { "violated" }.to_string())
            .matched(bianchi_ok),
    );
    let mut exit = if bianchi_ok { EXIT_OK } else { EXIT_MISMATCH };
    if bianchi_ok {
        let k = CurvatureTensor::new(tensor).expect("bianchi verified");
        let semi = is_semi_symmetric(&k);
        let mut semi_check = CheckRecord::new("semi_symmetric")
            .computed(semi.holds.to_string());
        if let Some(w) = semi.witness {
            semi_check = semi_check.witness(format!("first violating quadruple {:?}", w));
        }
        if let Some(expected) = file.assert_semi_symmetric {
            let ok = semi.holds == expected;
            semi_check = semi_check.claimed(expected.to_string()).matched(ok);
            if !ok {
                exit = EXIT_MISMATCH;
            }
        }
        report.push(semi_check);
        report.push(
            CheckRecord::new("holonomy_dim").computed(k.holonomy_dim().to_string()),
        );
        let opts = GenericityOpts {
            constraints: Vec::new(),
            seed: cfg.seed,
        };
        match ricci_with(&k, &opts) {
            Ok(data) => {
                report.push(
                    CheckRecord::new("ricci_type")
                        .computed(format!("{}", data.type_tag))
                        .note(format!("min poly {}", data.min_poly))
                        .note(format!("scalar curvature {}", data.scalar_curv)),
                );
                if semi.holds {
                    match ricci_decomposition(&k, &opts) {
                        Ok(dec) => {
                            let desc: Vec<String> = dec
                                .blocks
                                .iter()
                                .map(|b| format!("{:?} dim {}", b.label, b.basis.len()))
                                .collect();
                            report.push(
                                CheckRecord::new("ricci_decomposition")
                                    .computed(desc.join(", ")),
                            );
                        }
                        Err(CurvatureError::Ambiguous(m))
                        | Err(CurvatureError::UnresolvedSpectrum(m)) => {
                            report.push(
                                CheckRecord::new("ricci_decomposition")
                                    .note(format!("requires a parameter point: {}", m)),
                            );
                        }
                        Err(e) => {
                            report.push(
                                CheckRecord::new("ricci_decomposition")
                                    .matched(false)
                                    .note(format!("{}", e)),
                            );
                            exit = EXIT_MISMATCH;
                        }
                    }
                }
            }
            Err(CurvatureError::Ambiguous(m)) | Err(CurvatureError::UnresolvedSpectrum(m)) => {
                report.push(CheckRecord::new("ricci_type").note(format!(
                    "stage classify_ricci requires a parameter point: {}",
                    m
                )));
            }
            Err(e) => {
                return (error_report("tensor", cfg.seed, format!("{}", e)), EXIT_INPUT)
            }
        }
    }
    report.verdict = if exit == EXIT_OK {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    (report, exit)
}

// ---------------------------------------------------------------------------
// pair / group
// ---------------------------------------------------------------------------

/// Runs the homogeneous-pair pipeline on a pair file. Exit 0 on a
/// completed pipeline (verdicts are data), 1 on internal consistency
/// failure (Jacobi, torsion, Bianchi), 2 on input error. `require_group`
/// insists on isotropy dimension zero (the `group` subcommand).
pub fn cmd_pair_verify(
    path: &Path,
    metric_selection: Option<&str>,
    cfg: &RunConfig,
    require_group: bool,
) -> (Report, i32) {
    let command = if require_group { "group" } else { "pair" };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            return (
                error_report(command, cfg.seed, format!("cannot read {}: {}", path.display(), e)),
                EXIT_INPUT,
            )
        }
    };
    let file: PairFile = match serde_json::from_str(&text) {
        Ok(f) => f,
        Err(e) => {
            return (
                error_report(command, cfg.seed, format!("bad pair file: {}", e)),
                EXIT_INPUT,
            )
        }
    };
    if require_group && file.isotropy_dim != 0 {
        return (
            error_report(
                command,
                cfg.seed,
                format!(
                    "group subcommand requires isotropy_dim 0, file has {}",
                    file.isotropy_dim
                ),
            ),
            EXIT_INPUT,
        );
    }
    let pair = match file.to_pair() {
        Ok(p) => p,
        Err(e) => return (error_report(command, cfg.seed, format!("{}", e)), EXIT_INPUT),
    };
    // Parameter substitution on the structure constants, checking the
    // declared excluded locus first.
    let (pair, remaining_constraints) = if cfg.params.is_empty() {
        (pair.clone(), pair.constraints().to_vec())
    } else {
        let full = extend_assignment(pair.params(), &cfg.params);
        let mut remaining = Vec::new();
        for c in pair.constraints() {
            match c.substitute(&full) {
                Ok(v) if v.is_zero() => {
                    return (
                        error_report(
                            command,
                            cfg.seed,
                            format!("parameter point lies on the excluded locus: {} = 0", c),
                        ),
                        EXIT_INPUT,
                    )
                }
                Ok(v) if v.is_rational() => {}
                Ok(v) => remaining.push(v),
                Err(e) => {
                    return (error_report(command, cfg.seed, format!("{}", e)), EXIT_INPUT)
                }
            }
        }
        match pair.substitute(&full) {
            Ok(p) => (p, remaining),
            Err(e) => return (error_report(command, cfg.seed, format!("{}", e)), EXIT_INPUT),
        }
    };

    let metric = match build_metric_choice(&file, metric_selection, cfg) {
        Ok(m) => m,
        Err(msg) => return (error_report(command, cfg.seed, msg), EXIT_INPUT),
    };

    let opts = GenericityOpts {
        constraints: remaining_constraints,
        seed: cfg.seed,
    };
    let mut report = Report::new(command, cfg.seed);
    match verify_pair(&pair, metric, &opts) {
        Ok(result) => {
            report.push(
                CheckRecord::new("jacobi").computed("holds".to_string()).matched(true),
            );
            report.push(
                CheckRecord::new("invariant_metric_family")
                    .computed(format!("dimension {}", result.family_dim))
                    .note(format!(
                        "fresh parameters: {}",
                        result
                            .fresh_params
                            .iter()
                            .map(|p| p.name())
                            .collect::<Vec<_>>()
                            .join(", ")
                    )),
            );
            report.push(
                CheckRecord::new("metric")
                    .computed(matrix_line(&result.metric))
                    .note(format!("det = {}", result.metric_det)),
            );
            report.push(
                CheckRecord::new("curvature")
                    .computed(matrix_line(result.curvature.form()))
                    .note(result.convention.to_string()),
            );
            report.push(CheckRecord::new("ricci_form").computed(matrix_line(&result.ric)));
            let mut tag = CheckRecord::new("ricci_type");
            tag = match (&result.ricci_type, &result.ricci_type_note) {
                (Some(t), _) => tag.computed(format!("{}", t)),
                (None, Some(n)) => tag.note(n.clone()),
                (None, None) => tag,
            };
            report.push(tag.note(format!("min poly {}", result.ric_min)));
            let mut semi = CheckRecord::new("semi_symmetric")
                .computed(result.semi_symmetric.to_string());
            if let Some(w) = result.semi_witness {
                semi = semi.witness(format!("first violating quadruple {:?}", w));
            }
            report.push(semi);
            let mut loc = CheckRecord::new("locally_symmetric")
                .computed(result.locally_symmetric.to_string());
            if let Some(d) = result.locsym_witness {
                loc = loc.witness(format!("violating direction {}", result.basis_names
                    [pair.isotropy_dim() + d]));
            }
            report.push(loc);
            report.push(
                CheckRecord::new("differential_bianchi")
                    .computed("holds".to_string())
                    .matched(true),
            );
            report.push(
                CheckRecord::new("ricci_index_formula_crosscheck")
                    .computed(result.index_formula_agrees.to_string())
                    .note(
                        "literal index-formula reading compared against the trace definition"
                            .to_string(),
                    ),
            );
            if let Some(dec) = &result.decomposition {
                let desc: Vec<String> = dec
                    .blocks
                    .iter()
                    .map(|b| format!("{:?} dim {}", b.label, b.basis.len()))
                    .collect();
                report.push(CheckRecord::new("ricci_decomposition").computed(desc.join(", ")));
            } else if let Some(n) = &result.decomposition_note {
                report.push(CheckRecord::new("ricci_decomposition").note(n.clone()));
            }
            report.verdict = Verdict::Pass;
            (report, EXIT_OK)
        }
        Err(PairError::Stage { stage, message }) => {
            report.push(
                CheckRecord::new(format!("stage {}", stage))
                    .matched(false)
                    .note(message),
            );
            report.verdict = Verdict::Fail;
            (report, EXIT_MISMATCH)
        }
        Err(e) => (error_report(command, cfg.seed, format!("{}", e)), EXIT_INPUT),
    }
}

fn build_metric_choice(
    file: &PairFile,
    metric_selection: Option<&str>,
    cfg: &RunConfig,
) -> Result<MetricChoice, String> {
    if let Some(explicit) = file.explicit_metric().map_err(|e| format!("{}", e))? {
        // Substitute declared parameters into an explicit metric.
        let explicit = if cfg.params.is_empty() {
            explicit
        } else {
            let mut vars: Vec<Sym> = Vec::new();
            for e in explicit.entries() {
                for v in e.vars() {
                    if let Err(pos) = vars.binary_search(&v) {
                        vars.insert(pos, v);
                    }
                }
            }
            let full = extend_assignment(&vars, &cfg.params);
            explicit.substitute(&full).map_err(|e| format!("{}", e))?
        };
        if metric_selection.is_some() {
            return Err(
                "pair file fixes an explicit metric; --metric cannot be combined with it"
                    .to_string(),
            );
        }
        return Ok(MetricChoice::Explicit(explicit));
    }
    match metric_selection {
        None => Ok(MetricChoice::Family(None)),
        Some(text) => {
            let point = parse_params(text)?;
            Ok(MetricChoice::Family(Some(point)))
        }
    }
}

fn matrix_line(m: &crate::exact::Matrix) -> String {
    let mut rows = Vec::new();
    for i in 0..m.rows() {
        let cols: Vec<String> = (0..m.cols()).map(|j| format!("{}", m[(i, j)])).collect();
        rows.push(format!("[{}]", cols.join(", ")));
    }
    format!("[{}]", rows.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_params_accepts_rationals_only() {
        let p = parse_params("a=1,b=2/3").unwrap();
        assert_eq!(p.len(), 2);
        assert!(parse_params("a=b").is_err());
        assert!(parse_params("a=1.5").is_err());
        assert!(parse_params("nonsense").is_err());
    }

    #[test]
    fn catalogue_unknown_entry_is_input_error() {
        let cfg = RunConfig::default();
        let (report, code) = cmd_catalogue(Some(vec!["nosuch".to_string()]), &cfg);
        assert_eq!(code, EXIT_INPUT);
        assert_eq!(report.verdict, crate::report::Verdict::Error);
    }

    #[test]
    fn catalogue_single_entry_passes() {
        let cfg = RunConfig::default();
        let (report, code) = cmd_catalogue(Some(vec!["1.3^1".to_string()]), &cfg);
        assert_eq!(code, EXIT_OK, "{}", report.render_text());
    }

    #[test]
    fn catalogue_adjudicated_entry_fails_only_in_strict_mode() {
        let cfg = RunConfig::default();
        let (_, code) = cmd_catalogue(Some(vec!["6.1^1".to_string()]), &cfg);
        assert_eq!(code, EXIT_OK);
        let strict = RunConfig {
            strict_paper: true,
            ..RunConfig::default()
        };
        let (_, code) = cmd_catalogue(Some(vec!["6.1^1".to_string()]), &strict);
        assert_eq!(code, EXIT_MISMATCH);
    }
}
