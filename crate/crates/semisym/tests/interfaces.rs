//! External-interface tests: the JSON file schemas, the command
//! functions' exit-code policy, and byte-stable reports.

use std::path::{Path, PathBuf};

use semisym::cli::{
    cmd_catalogue, cmd_pair_verify, cmd_tensor_check, parse_params, RunConfig, EXIT_INPUT,
    EXIT_MISMATCH, EXIT_OK,
};
use semisym::curvature::TensorFile;
use semisym::homogeneous::PairFile;
use semisym::liealg::SubalgebraFile;
use semisym::report::Verdict;
use semisym::space::SpaceFile;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

#[test]
fn space_file_schema_round_trips() {
    let text = std::fs::read_to_string(fixture("space_null_xz_yt.json")).unwrap();
    let file: SpaceFile = serde_json::from_str(&text).unwrap();
    let space = file.to_space().unwrap();
    assert_eq!(space.dim(), 4);
    assert_eq!(space.signature().unwrap(), (2, 2));
    let back = SpaceFile::from_space(&space);
    assert_eq!(back.basis_names, file.basis_names);
    let reparsed: SpaceFile =
        serde_json::from_str(&serde_json::to_string(&back).unwrap()).unwrap();
    assert_eq!(reparsed, back);
}

#[test]
fn tensor_file_supports_inline_and_path_spaces() {
    // Inline space.
    let text = std::fs::read_to_string(fixture("tensor_holonomy3.json")).unwrap();
    let file: TensorFile = serde_json::from_str(&text).unwrap();
    assert_eq!(file.assert_semi_symmetric, Some(true));
    let space = std::sync::Arc::new(file.resolve_space(None).unwrap());
    let tensor = file.to_tensor(&space).unwrap();
    assert!(!tensor.is_zero());

    // Path reference resolved relative to the file's directory.
    let text = std::fs::read_to_string(fixture("tensor_zero.json")).unwrap();
    let file: TensorFile = serde_json::from_str(&text).unwrap();
    let dir = fixture("");
    let space = std::sync::Arc::new(file.resolve_space(Some(dir.as_path())).unwrap());
    let tensor = file.to_tensor(&space).unwrap();
    assert!(tensor.is_zero());
}

#[test]
fn subalgebra_file_schema_works() {
    let json = r#"{
        "space": "space_null_xz_yt.json",
        "generators": [
            { "terms": [ { "a": "x", "b": "t" } ] },
            { "terms": [ { "a": "x", "b": "y" } ] }
        ],
        "name": "2.5^1"
    }"#;
    let file: SubalgebraFile = serde_json::from_str(json).unwrap();
    let dir = fixture("");
    let g = file.to_subalgebra(Some(dir.as_path())).unwrap();
    assert_eq!(g.dim(), 2);
    let rg = semisym::liealg::curvature_space(&g).unwrap();
    assert_eq!(rg.len(), 3);
}

#[test]
fn pair_file_defaults_missing_brackets_to_zero() {
    let text = std::fs::read_to_string(fixture("pair_null_rotation.json")).unwrap();
    let file: PairFile = serde_json::from_str(&text).unwrap();
    let pair = file.to_pair().unwrap();
    assert_eq!(pair.isotropy_dim(), 1);
    assert_eq!(pair.dim(), 4);
    assert!(pair.jacobi_check().is_ok());
}

#[test]
fn tensor_command_exit_codes() {
    let cfg = RunConfig::default();
    // Semi-symmetric fixture passes.
    let (report, code) = cmd_tensor_check(&fixture("tensor_holonomy3.json"), &cfg);
    assert_eq!(code, EXIT_OK, "{}", report.render_text());
    assert_eq!(report.verdict, Verdict::Pass);
    // Zero tensor: Flat, exit 0.
    let (report, code) = cmd_tensor_check(&fixture("tensor_zero.json"), &cfg);
    assert_eq!(code, EXIT_OK);
    assert!(report
        .checks
        .iter()
        .any(|c| c.name == "ricci_type" && c.computed.as_deref() == Some("Flat")));
    // Missing file: input error.
    let (_, code) = cmd_tensor_check(&fixture("nonexistent.json"), &cfg);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn tensor_command_with_parameter_point() {
    let cfg = RunConfig {
        params: parse_params("a=2,b=3").unwrap(),
        ..RunConfig::default()
    };
    let (report, code) = cmd_tensor_check(&fixture("tensor_complex_ricci.json"), &cfg);
    assert_eq!(code, EXIT_OK, "{}", report.render_text());
    let tag = report
        .checks
        .iter()
        .find(|c| c.name == "ricci_type")
        .unwrap();
    assert!(
        tag.computed.as_deref().unwrap_or("").starts_with("ComplexRicci"),
        "{:?}",
        tag
    );
}

#[test]
fn pair_command_exit_codes() {
    let cfg = RunConfig::default();
    // The model group runs to completion symbolically: exit 0.
    let (report, code) = cmd_pair_verify(&fixture("pair_ricci_flat_group.json"), None, &cfg, true);
    assert_eq!(code, EXIT_OK, "{}", report.render_text());
    // Verdicts are data: semi-symmetric true, locally symmetric false.
    let semi = report
        .checks
        .iter()
        .find(|c| c.name == "semi_symmetric")
        .unwrap();
    assert_eq!(semi.computed.as_deref(), Some("true"));
    let loc = report
        .checks
        .iter()
        .find(|c| c.name == "locally_symmetric")
        .unwrap();
    assert_eq!(loc.computed.as_deref(), Some("false"));

    // Jacobi violation: stage error, exit 1.
    let (report, code) = cmd_pair_verify(&fixture("pair_bad_jacobi.json"), None, &cfg, false);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(report.checks.iter().any(|c| c.name == "stage jacobi_check"));

    // Group subcommand rejects nonzero isotropy: input error.
    let (_, code) = cmd_pair_verify(&fixture("pair_null_rotation.json"), None, &cfg, true);
    assert_eq!(code, EXIT_INPUT);
    // But the pair subcommand accepts it.
    let (report, code) = cmd_pair_verify(&fixture("pair_null_rotation.json"), None, &cfg, false);
    assert_eq!(code, EXIT_OK, "{}", report.render_text());

    // Abelian pair: all-flat report.
    let (report, code) = cmd_pair_verify(&fixture("pair_abelian.json"), None, &cfg, true);
    assert_eq!(code, EXIT_OK);
    assert!(report
        .checks
        .iter()
        .any(|c| c.name == "ricci_type" && c.computed.as_deref() == Some("Flat")));
}

#[test]
fn pair_command_rejects_excluded_locus() {
    let cfg = RunConfig {
        params: parse_params("A=1,B=0,C=1,D=1").unwrap(),
        ..RunConfig::default()
    };
    let (_, code) = cmd_pair_verify(&fixture("pair_ricci_flat_group.json"), None, &cfg, true);
    assert_eq!(code, EXIT_INPUT, "B = 0 lies on the excluded locus");
}

#[test]
fn reports_are_byte_identical_for_identical_configs() {
    let cfg = RunConfig::default();
    let (r1, _) = cmd_catalogue(Some(vec!["2.2^1".to_string()]), &cfg);
    let (r2, _) = cmd_catalogue(Some(vec!["2.2^1".to_string()]), &cfg);
    assert_eq!(r1.to_json(), r2.to_json());

    let (t1, _) = cmd_tensor_check(&fixture("tensor_holonomy3.json"), &cfg);
    let (t2, _) = cmd_tensor_check(&fixture("tensor_holonomy3.json"), &cfg);
    assert_eq!(t1.to_json(), t2.to_json());

    // A different seed is recorded in the report.
    let other = RunConfig {
        seed: 99,
        ..RunConfig::default()
    };
    let (t3, _) = cmd_tensor_check(&fixture("tensor_holonomy3.json"), &other);
    assert_ne!(t1.to_json(), t3.to_json());
}

#[test]
fn report_json_round_trips() {
    let cfg = RunConfig::default();
    let (report, _) = cmd_catalogue(Some(vec!["1.1^1".to_string()]), &cfg);
    let text = report.to_json();
    let back: semisym::report::Report = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
}

#[test]
fn kernel_and_solve_agree_with_pivot_log_oracle() {
    // Brute-force oracle: Gaussian elimination with an explicit pivot log,
    // checked against kernel_basis/solve_linear on random rational 6x6
    // systems.
    use semisym::exact::{Matrix, Scalar, SplitMix64};
    let mut rng = SplitMix64::new(0xBEEF);
    for _ in 0..25 {
        let mut data = Vec::new();
        for _ in 0..36 {
            data.push(Scalar::from_int((rng.below(5) as i64) - 2));
        }
        let m = Matrix::from_fn(6, 6, |i, j| data[i * 6 + j].clone());
        // Oracle: rank via the pivot log of a plain forward elimination.
        let (_, pivots) = oracle_eliminate(&m);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), 6 - pivots.len(), "rank-nullity");
        for v in &kernel {
            let image = m.mul_vec(v);
            assert!(image.iter().all(|x| x.is_zero()), "kernel vector annihilated");
        }
        // A solvable right-hand side: M x = M e_1.
        let rhs = m.column(0);
        let (x, _) = m.solve_linear(&rhs).unwrap();
        assert_eq!(m.mul_vec(&x), rhs, "exact particular solution");
    }
}

/// Forward elimination with an explicit pivot log (independent of the
/// library's reduced-echelon routine).
fn oracle_eliminate(
    m: &semisym::exact::Matrix,
) -> (Vec<Vec<semisym::exact::Scalar>>, Vec<(usize, usize)>) {
    use semisym::exact::Scalar;
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<Scalar>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        pivots.push((row, col));
        let inv = a[row][col].recip().unwrap();
        for r in (row + 1)..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            for c in col..cols {
                let delta = f.mul(&a[row][c]);
                a[r][c] = a[r][c].sub(&delta);
            }
        }
        row += 1;
        if row == rows {
            break;
        }
    }
    (a, pivots)
}
