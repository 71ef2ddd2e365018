//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Exact arithmetic means zero tolerance unless a check is
//! explicitly sampled at seeded generic points.

use std::sync::Arc;

use semisym::catalogue;
use semisym::cli::{cmd_catalogue, RunConfig};
use semisym::curvature::{
    bianchi_map, is_semi_symmetric, make_tensor, named_wedge, ricci_closed_form_decomposable,
    ricci_commutes, ricci_decomposition, ricci_form, ricci_with, selfdual_spectrum,
    semi_symmetry_witness_scan, BlockLabel, CurvatureTensor, GenericityOpts, PSymTensor,
    RicciType,
};
use semisym::exact::{
    generic_points, Assignment, Matrix, Scalar, SplitMix64, Sym, UniPoly, DEFAULT_SEED,
};
use semisym::homogeneous::{
    connection, curvature_of_pair, differential_bianchi_holds, fixtures, invariant_metrics,
    koszul_product, verify_pair, HomogeneousPair, MetricChoice,
};
use semisym::liealg::{symmetric_curvature_space, LieSubalgebra};
use semisym::space::{Bivector, PseudoSpace, Vector};
use semisym::tables;

fn pass(line: &str) {
    println!("criterion PASS: {}", line);
}

/// Criterion 1: catalogue regression over all 26 entries. Computed
/// dimensions and spans must match the recomputed claims, parametric cases
/// certified at seeded points; the printed-text deviations are exactly
/// the three documented errata (6.1^1 dimension + generator term, 2.3^1
/// omitted generator, 3.2^1 swapped case conditions), with the 6.1^1
/// rank-nullity derivation shown.
#[test]
fn criterion_1_catalogue_regression() {
    let results = catalogue::verify_catalogue(None, DEFAULT_SEED).unwrap();
    assert_eq!(
        results.iter().map(|r| r.entry.clone()).collect::<std::collections::BTreeSet<_>>().len(),
        26,
        "all 26 entries are covered"
    );
    for r in &results {
        assert!(
            r.matched,
            "{} [{}] failed: {:?}",
            r.entry, r.case, r.notes
        );
    }
    // The adjudicated entry reports the computed dimension, the printed
    // claim and the rank-nullity derivation (dim ker + rank = 21).
    let six = results
        .iter()
        .find(|r| r.entry == "6.1^1")
        .expect("6.1^1 present");
    assert_eq!(six.computed_dim_r, 20);
    assert_eq!(six.claimed_dim_r, Some(19), "printed claim is reported");
    assert_eq!(six.rank_nullity, Some((21, 1, 20)));
    assert!(six
        .notes
        .iter()
        .any(|n| n.contains("printed claim 19")));
    // Strict deviations are exactly the documented errata.
    let strict_failures: Vec<String> = results
        .iter()
        .filter(|r| !r.strict_matched)
        .map(|r| format!("{} [{}]", r.entry, r.case))
        .collect();
    assert_eq!(
        strict_failures,
        vec![
            "2.3^1 [all]".to_string(),
            "3.2^1 [a not in {0,1}]".to_string(),
            "3.2^1 [a=1]".to_string(),
            "6.1^1 [all]".to_string(),
        ],
        "printed-table deviations are exactly the documented errata"
    );
    // The exit-code policy mirrors the same adjudication.
    let (_, code) = cmd_catalogue(None, &RunConfig::default());
    assert_eq!(code, 0);
    pass("1. catalogue regression (26 entries, adjudicated 6.1^1 exception, errata reported)");
}

/// Criterion 2: every classification fixture passes Bianchi and
/// semi-symmetry symbolically in its parameters, and its computed Ricci
/// form equals the stated expression exactly.
#[test]
fn criterion_2_classification_fixtures() {
    let fixtures = tables::classification_fixtures();
    assert_eq!(fixtures.len(), 12);
    for fx in &fixtures {
        assert!(
            bianchi_map(fx.k.tensor()).is_zero(),
            "{}: Bianchi",
            fx.name
        );
        assert!(
            is_semi_symmetric(&fx.k).holds,
            "{}: semi-symmetry",
            fx.name
        );
        assert_eq!(
            ricci_form(&fx.k),
            fx.expected_ric,
            "{}: Ricci form",
            fx.name
        );
        assert_eq!(
            fx.k.holonomy_dim(),
            fx.holonomy_dim,
            "{}: holonomy dimension",
            fx.name
        );
    }
    pass("2. classification-table fixtures: Bianchi, semi-symmetry, exact Ricci forms");
}

/// Criterion 3: the complex-Ricci tensor has an irreducible quadratic
/// minimal polynomial whose square is the characteristic polynomial,
/// eigenvalues -2a +- i b verified at 5 generic rational points with
/// b != 0, and decomposition Vc = V of dimension 4.
#[test]
fn criterion_3_complex_ricci() {
    let a = Scalar::param("a");
    let b = Scalar::param("b");
    let k = tables::complex_ricci(&a, &b);
    let opts = GenericityOpts {
        constraints: vec![b.clone()],
        seed: DEFAULT_SEED,
    };
    let data = ricci_with(&k, &opts).unwrap();
    let expected_min = UniPoly::new(vec![
        a.mul(&a).scale_int(4).add(&b.mul(&b)),
        a.scale_int(4),
        Scalar::one(),
    ]);
    assert_eq!(data.min_poly, expected_min, "min poly (X+2a)^2 + b^2");
    assert_eq!(data.char_poly, expected_min.mul(&expected_min), "char = min^2");
    match &data.type_tag {
        RicciType::ComplexRicci {
            real_part,
            imag_squared,
        } => {
            assert_eq!(real_part, &format!("{}", a.scale_int(-2)));
            assert_eq!(imag_squared, &format!("{}", b.mul(&b)));
        }
        other => panic!("expected ComplexRicci, got {:?}", other),
    }
    // Eigenvalues at 5 generic points: min(X) == (X + 2a)^2 + b^2 exactly,
    // and it stays irreducible (negative discriminant).
    let params = [Sym::new("a"), Sym::new("b")];
    let points = generic_points(DEFAULT_SEED, &params, &[b.clone()]).unwrap();
    assert_eq!(points.len(), 5);
    for point in &points {
        let at = data.min_poly.substitute(point).unwrap();
        let av = point[&Sym::new("a")].clone();
        let bv = point[&Sym::new("b")].clone();
        let shift = UniPoly::new(vec![av.scale_int(2), Scalar::one()]);
        let expected = shift.mul(&shift).add(&UniPoly::new(vec![bv.mul(&bv)]));
        assert_eq!(at, expected, "eigenvalues -2a +- ib at {:?}", point);
        let disc = at.coeff(1).mul(&at.coeff(1)).sub(&at.coeff(0).scale_int(4));
        assert_eq!(disc.rational_sign(), Some(-1), "irreducible at the point");
    }
    let dec = ricci_decomposition(&k, &opts).unwrap();
    assert_eq!(dec.blocks.len(), 1);
    assert_eq!(dec.blocks[0].label, BlockLabel::Vc);
    assert_eq!(dec.blocks[0].basis.len(), 4);
    pass("3. complex Ricci: min/char polynomials, eigenvalues at 5 points, Vc = V");
}

/// Criterion 4: the model Ricci-flat group through the pipeline, at
/// A=B=C=D=1 and symbolically: K = 4AC . A_xt v A_xt, ric = 0,
/// semi-symmetric, not locally symmetric. Zero tolerance.
#[test]
fn criterion_4_group_pipeline() {
    for (label, (pair, metric), coeff) in [
        (
            "symbolic",
            fixtures::ricci_flat_group(),
            Scalar::param("A").mul(&Scalar::param("C")).scale_int(4),
        ),
        (
            "A=B=C=D=1",
            fixtures::ricci_flat_group_at(1, 1, 1, 1),
            Scalar::from_int(4),
        ),
    ] {
        let report = verify_pair(
            &pair,
            MetricChoice::Explicit(metric),
            &GenericityOpts::default(),
        )
        .unwrap();
        let xt = named_wedge(&report.space, "x", "t").unwrap();
        let expected = make_tensor(&report.space, &[(coeff, xt.clone(), xt)]).unwrap();
        assert_eq!(report.curvature.form(), expected.form(), "{}: curvature", label);
        assert!(report.ric.is_zero(), "{}: Ricci flat", label);
        assert!(report.semi_symmetric, "{}: semi-symmetric", label);
        assert!(!report.locally_symmetric, "{}: not locally symmetric", label);
        assert_eq!(report.ricci_type, Some(RicciType::RicciFlat));
    }
    pass("4. Ricci-flat group pipeline: K = 4AC.A_xt v A_xt, ric = 0, semi-symmetric, non-symmetric");
}

// ---------------------------------------------------------------------------
// Criterion 5: property suites, each with at least 200 randomized cases
// from a fixed seed.
// ---------------------------------------------------------------------------

fn random_gram(rng: &mut SplitMix64) -> Arc<PseudoSpace> {
    // Small random symmetric integer matrices, redrawn until nondegenerate.
    loop {
        let entries: Vec<i64> = (0..10).map(|_| (rng.below(7) as i64) - 3).collect();
        let mut m = Matrix::zero(4, 4);
        let mut idx = 0;
        for i in 0..4 {
            for j in i..4 {
                let v = Scalar::from_int(entries[idx]);
                idx += 1;
                m[(i, j)] = v.clone();
                m[(j, i)] = v;
            }
        }
        if m.det().is_zero() {
            continue;
        }
        let names = ["b1", "b2", "b3", "b4"].iter().map(|s| s.to_string()).collect();
        if let Ok(space) = PseudoSpace::new(m, names, vec![]) {
            return Arc::new(space);
        }
    }
}

fn random_p_element(rng: &mut SplitMix64, space: &Arc<PseudoSpace>) -> PSymTensor {
    let n = space.bivector_dim();
    let mut form = Matrix::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let v = Scalar::from_int((rng.below(9) as i64) - 4);
            form[(i, j)] = v.clone();
            form[(j, i)] = v;
        }
    }
    PSymTensor::new(space.clone(), form).unwrap()
}

/// Projection to the Bianchi kernel: with B o B = 3B, `id - B/3` projects
/// onto curvature tensors.
fn project_to_curvature(t: &PSymTensor) -> CurvatureTensor {
    let b = bianchi_map(t);
    let third = Scalar::from_fraction(1, 3);
    CurvatureTensor::new(t.sub(&b.scale(&third))).expect("projection lands in ker B")
}

#[test]
fn criterion_5a_bianchi_is_three_idempotent() {
    let mut rng = SplitMix64::new(DEFAULT_SEED ^ 0x5a);
    let mut cases = 0;
    for _ in 0..10 {
        let space = random_gram(&mut rng);
        let n = space.bivector_dim();
        for a in 0..n {
            for b in a..n {
                let mut form = Matrix::zero(n, n);
                form[(a, b)] = Scalar::one();
                form[(b, a)] = Scalar::one();
                let t = PSymTensor::new(space.clone(), form).unwrap();
                let bt = bianchi_map(&t);
                assert_eq!(
                    bianchi_map(&bt).form(),
                    bt.scale(&Scalar::from_int(3)).form(),
                    "B o B = 3B"
                );
                cases += 1;
            }
        }
    }
    assert!(cases >= 200, "ran {} cases", cases);
    pass(&format!("5a. B o B = 3B on {} randomized basis cases", cases));
}

#[test]
fn criterion_5b_first_bianchi_for_constructed_tensors() {
    let mut rng = SplitMix64::new(DEFAULT_SEED ^ 0x5b);
    let mut cases = 0;
    while cases < 200 {
        let space = random_gram(&mut rng);
        let t = random_p_element(&mut rng, &space);
        let k = project_to_curvature(&t);
        assert!(
            semisym::curvature::first_bianchi_holds(&k),
            "first Bianchi identity on basis triples"
        );
        cases += 1;
    }
    pass("5b. first Bianchi identity holds for 200 constructed curvature tensors");
}

#[test]
fn criterion_5c_semi_symmetry_implies_ricci_commutation() {
    let mut rng = SplitMix64::new(DEFAULT_SEED ^ 0x5c);
    let fixtures = tables::classification_fixtures();
    let mut cases = 0;
    while cases < 200 {
        for fx in &fixtures {
            // Substitute random admissible rational parameters.
            let mut point = Assignment::new();
            let mut vars: Vec<Sym> = Vec::new();
            for e in fx.k.form().entries() {
                for v in e.vars() {
                    if let Err(pos) = vars.binary_search(&v) {
                        vars.insert(pos, v);
                    }
                }
            }
            for v in &vars {
                point.insert(*v, rng.small_rational());
            }
            let ok = fx
                .constraints
                .iter()
                .all(|c| !c.substitute(&point).map(|v| v.is_zero()).unwrap_or(true));
            if !ok {
                continue;
            }
            let k = fx.k.substitute(&point).unwrap();
            assert!(is_semi_symmetric(&k).holds, "{} at {:?}", fx.name, point);
            let ric_op = k
                .space()
                .gram_inv()
                .mul(&ricci_form(&k));
            assert!(
                ricci_commutes(&k, &ric_op),
                "{}: K(u,v) commutes with Ric",
                fx.name
            );
            cases += 1;
        }
    }
    pass(&format!(
        "5c. semi-symmetry implies Ricci commutation on {} randomized fixture points",
        cases
    ));
}

/// Random metric Lie algebras drawn from Jacobi-closed families with
/// random rational parameters and metrics.
fn random_metric_lie_algebra(rng: &mut SplitMix64) -> (HomogeneousPair, Matrix) {
    match rng.below(3) {
        0 => {
            // The model group at random parameters (B != 0).
            let a = (rng.below(5) as i64) - 2;
            let b = (rng.below(4) as i64) + 1;
            let c = (rng.below(5) as i64) - 2;
            let d = (rng.below(5) as i64) - 2;
            fixtures::ricci_flat_group_at(a, b, c, d)
        }
        1 => {
            // Solvable [x,y] = y, [x,z] = alpha z plus a flat direction,
            // with a random nondegenerate diagonal metric.
            let alpha = Scalar::from_int((rng.below(5) as i64) - 2);
            let names: Vec<String> =
                ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
            let coords = |vals: &[(usize, Scalar)]| {
                let mut v = vec![Scalar::zero(); 4];
                for (i, s) in vals {
                    v[*i] = s.clone();
                }
                v
            };
            let entries = vec![
                (0, 1, coords(&[(1, Scalar::one())])),
                (0, 2, coords(&[(2, alpha)])),
            ];
            let pair = HomogeneousPair::new(0, names, &entries, vec![], vec![]).unwrap();
            let mut m = Matrix::zero(4, 4);
            for i in 0..4 {
                let sign = if rng.below(2) == 0 { 1 } else { -1 };
                m[(i, i)] = Scalar::from_int(sign * ((rng.below(3) as i64) + 1));
            }
            (pair, m)
        }
        _ => {
            // su(2) + R with a random invariant-ish diagonal metric.
            let names: Vec<String> =
                ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
            let coords = |i: usize, c: i64| {
                let mut v = vec![Scalar::zero(); 4];
                v[i] = Scalar::from_int(c);
                v
            };
            let entries = vec![
                (0, 1, coords(2, 1)),
                (1, 2, coords(0, 1)),
                (2, 0, coords(1, 1)),
            ];
            let pair = HomogeneousPair::new(0, names, &entries, vec![], vec![]).unwrap();
            let mut m = Matrix::zero(4, 4);
            for i in 0..4 {
                let sign = if rng.below(2) == 0 { 1 } else { -1 };
                m[(i, i)] = Scalar::from_int(sign * ((rng.below(3) as i64) + 1));
            }
            (pair, m)
        }
    }
}

#[test]
fn criterion_5d_koszul_skewness_torsion_and_differential_bianchi() {
    let mut rng = SplitMix64::new(DEFAULT_SEED ^ 0x5d);
    let mut cases = 0;
    while cases < 200 {
        let (pair, metric) = random_metric_lie_algebra(&mut rng);
        if metric.det().is_zero() {
            continue;
        }
        let conn = koszul_product(&pair, &metric).unwrap();
        let n = pair.dim();
        // Koszul skewness: B(L_u a, b) + B(a, L_u b) = 0.
        for u in 0..n {
            let lu = &conn.nabla[u];
            let gb = metric.mul(lu);
            assert!(gb.add(&gb.transpose()).is_zero(), "L_u skew");
        }
        // Torsion: L_u v - L_v u = [u, v].
        for u in 0..n {
            for v in 0..n {
                let lhs: Vec<Scalar> = (0..n)
                    .map(|r| conn.nabla[u][(r, v)].sub(&conn.nabla[v][(r, u)]))
                    .collect();
                let mut fu = vec![Scalar::zero(); n];
                fu[u] = Scalar::one();
                let mut fv = vec![Scalar::zero(); n];
                fv[v] = Scalar::one();
                let rhs = pair.bracket_vectors(&fu, &fv);
                assert_eq!(lhs, rhs, "torsion identity");
            }
        }
        // Agreement with the general connection, then differential Bianchi
        // for the packaged pipeline curvature.
        let general = connection(&pair, &metric).unwrap();
        assert_eq!(general.nabla, conn.nabla, "Koszul = connection at r = 0");
        let (space, k) = curvature_of_pair(&pair, &metric, &general).unwrap();
        assert!(
            differential_bianchi_holds(&pair, &space, &k, &general),
            "differential Bianchi cyclic sum vanishes"
        );
        cases += 1;
    }
    // One curved pair with nonzero isotropy exercises the same identity
    // away from the group case.
    let pair = fixtures::sphere_times_line();
    let family = invariant_metrics(&pair).unwrap();
    let point: Assignment = family
        .fresh_params
        .iter()
        .map(|p| (*p, Scalar::one()))
        .collect();
    let report = verify_pair(&pair, MetricChoice::Family(Some(point)), &GenericityOpts::default())
        .unwrap();
    assert!(report.diff_bianchi_ok);
    assert!(!report.curvature.is_zero());
    pass("5d. Koszul skewness, torsion, Koszul/connection agreement and differential Bianchi on 200 random metric Lie algebras (+1 isotropy pair)");
}

#[test]
fn criterion_5f_ricci_trace_matches_closed_form() {
    let mut rng = SplitMix64::new(DEFAULT_SEED ^ 0x5f);
    let mut cases = 0;
    while cases < 200 {
        let space = random_gram(&mut rng);
        let pick = |rng: &mut SplitMix64| {
            Vector::new(
                (0..4)
                    .map(|_| Scalar::from_int((rng.below(5) as i64) - 2))
                    .collect(),
            )
        };
        let (u, v, w, t) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let alpha = Bivector::wedge(&space, &u, &v);
        let beta = Bivector::wedge(&space, &w, &t);
        let tensor = make_tensor(&space, &[(Scalar::one(), alpha, beta)]).unwrap();
        // The trace definition applies to any element of P, Bianchi-flat or
        // not; compare against the closed form for decomposables.
        let k = CurvatureTensor::new_unchecked(tensor);
        let trace = ricci_form(&k);
        let closed = ricci_closed_form_decomposable(&space, &u, &v, &w, &t);
        assert_eq!(trace, closed);
        cases += 1;
    }
    pass("5f. Ricci trace definition equals the decomposable closed form on 200 random cases");
}

/// Criterion 6: the optimized semi-symmetry decision agrees with the full
/// quadruple enumeration on every catalogue symmetric-curvature element
/// and every classification fixture.
#[test]
fn criterion_6_oracle_equivalence() {
    let mut checked = 0;
    for entry in catalogue::komrakov_catalogue() {
        for case in &entry.cases {
            let g = LieSubalgebra::from_bivectors(
                case.space.clone(),
                &case.generators,
                None,
                case.constraints.clone(),
            )
            .unwrap();
            for t in symmetric_curvature_space(&g).unwrap() {
                let k = CurvatureTensor::new(t).unwrap();
                let fast = is_semi_symmetric(&k);
                let slow = semi_symmetry_witness_scan(&k);
                assert_eq!(fast.holds, slow.holds, "{} [{}]", entry.name, case.label);
                assert_eq!(fast.witness, slow.witness);
                checked += 1;
            }
        }
    }
    for fx in tables::classification_fixtures() {
        let fast = is_semi_symmetric(&fx.k);
        let slow = semi_symmetry_witness_scan(&fx.k);
        assert_eq!(fast.holds, slow.holds, "{}", fx.name);
        assert_eq!(fast.witness, slow.witness);
        checked += 1;
    }
    assert!(checked > 20);
    pass(&format!(
        "6. optimized semi-symmetry check agrees with the 4^4 quadruple oracle on {} tensors",
        checked
    ));
}

/// Criterion 7: Einstein/self-dual spectra. For the constant-curvature
/// tensor [J,R] = 0 and the restriction is a homothety; for the 4.2^1
/// Einstein tensor the restrictions split into one homothety and one
/// diagonalizable operator with exactly two distinct eigenvalues (which
/// side is which depends only on the orientation convention).
#[test]
fn criterion_7_einstein_selfdual() {
    let a = Scalar::param("a");
    let k6 = tables::k6_constant_curvature(&a);
    let sd = selfdual_spectrum(&k6).unwrap();
    assert!(sd.involution_ok, "J^2 = id");
    assert!(sd.commutes, "[J, R] = 0");
    assert!(sd.plus.as_ref().unwrap().homothety.is_some(), "R+ homothety");
    assert!(sd.minus.as_ref().unwrap().homothety.is_some());

    let k4 = tables::einstein_4_2_1(&a);
    let data = ricci_with(&k4, &GenericityOpts::default()).unwrap();
    assert!(matches!(data.type_tag, RicciType::Einstein(_)));
    let sd = selfdual_spectrum(&k4).unwrap();
    assert!(sd.commutes);
    let plus = sd.plus.unwrap();
    let minus = sd.minus.unwrap();
    let (homothety, split) = if plus.homothety.is_some() {
        (plus, minus)
    } else {
        (minus, plus)
    };
    assert!(homothety.homothety.is_some());
    assert!(split.diagonalizable, "diagonalizable restriction");
    assert_eq!(split.distinct_eigenvalues, 2, "exactly two distinct eigenvalues");
    pass("7. Einstein self-dual spectra: homothety for constant curvature, two-eigenvalue split for 4.2^1");
}

/// Criterion 8 is an exclusion: the full external pair table and the
/// global manifold statements are out of scope by design, substituted by
/// criteria 4-6. This test records the substitution explicitly.
#[test]
fn criterion_8_documented_exclusions() {
    // The pipeline accepts user-supplied pairs instead; the fixtures and
    // property suites above stand in for the excluded table.
    let (pair, metric) = fixtures::ricci_flat_group_at(2, 3, 1, 1);
    let report = verify_pair(
        &pair,
        MetricChoice::Explicit(metric),
        &GenericityOpts::default(),
    )
    .unwrap();
    assert!(report.semi_symmetric);
    pass("8. excluded external pair table substituted by pipeline criteria 4-6 (documented)");
}
