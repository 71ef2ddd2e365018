//! Model semi-symmetric curvature tensors on the neutral 4-space, with
//! their expected Ricci forms and holonomy dimensions as claimed by the
//! classification table the crate verifies.
//!
//! Every tensor is built from wedge generators with symbolic coefficients,
//! so Bianchi, semi-symmetry and the Ricci formulas are checked exactly in
//! the parameters.

use std::sync::Arc;

use crate::curvature::{make_tensor, named_wedge, CurvatureTensor, SpaceRef};
use crate::exact::{Matrix, Scalar};
use crate::space::{vee_form, Bivector, PseudoSpace};

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// `<x,z> = <y,t> = 1`.
pub fn space_null_xz_yt() -> SpaceRef {
    Arc::new(
        PseudoSpace::from_products(
            &["x", "y", "z", "t"],
            &[("x", "z", s(1)), ("y", "t", s(1))],
        )
        .unwrap(),
    )
}

/// `<x,t> = <y,z> = 1`.
pub fn space_null_xt_yz() -> SpaceRef {
    Arc::new(
        PseudoSpace::from_products(
            &["x", "y", "z", "t"],
            &[("x", "t", s(1)), ("y", "z", s(1))],
        )
        .unwrap(),
    )
}

/// Orthonormal signs (+,-,+,-) on (x,y,z,t).
pub fn space_diag_pmpm() -> SpaceRef {
    Arc::new(
        PseudoSpace::from_products(
            &["x", "y", "z", "t"],
            &[
                ("x", "x", s(1)),
                ("y", "y", s(-1)),
                ("z", "z", s(1)),
                ("t", "t", s(-1)),
            ],
        )
        .unwrap(),
    )
}

/// `<x,z> = 1, <y,y> = -1, <t,t> = 1`.
pub fn space_xz_nyy_tt() -> SpaceRef {
    Arc::new(
        PseudoSpace::from_products(
            &["x", "y", "z", "t"],
            &[("x", "z", s(1)), ("y", "y", s(-1)), ("t", "t", s(1))],
        )
        .unwrap(),
    )
}

/// `<x,z> = 1, <y,y> = 1, <t,t> = -1`.
pub fn space_xz_yy_ntt() -> SpaceRef {
    Arc::new(
        PseudoSpace::from_products(
            &["x", "y", "z", "t"],
            &[("x", "z", s(1)), ("y", "y", s(1)), ("t", "t", s(-1))],
        )
        .unwrap(),
    )
}

fn w(space: &SpaceRef, a: &str, b: &str) -> Bivector {
    named_wedge(space, a, b).unwrap()
}

fn build(space: &SpaceRef, terms: &[(Scalar, Bivector, Bivector)]) -> CurvatureTensor {
    CurvatureTensor::new(make_tensor(space, terms).unwrap()).expect("model tensor is Bianchi-flat")
}

fn vee(space: &SpaceRef, a: &str, b: &str) -> Matrix {
    vee_form(
        space,
        &space.named_vector(a).unwrap(),
        &space.named_vector(b).unwrap(),
    )
}

/// `K = b A_{x,z} v A_{x,z}` on the null basis; `ric = -2b (z v x)`,
/// holonomy dimension 1.
pub fn rank_one_null(b: &Scalar) -> CurvatureTensor {
    let sp = space_null_xz_yt();
    let xz = w(&sp, "x", "z");
    build(&sp, &[(b.clone(), xz.clone(), xz)])
}

/// Same tensor on the orthonormal basis; `ric = b (x v x + z v z)`.
pub fn rank_one_orthonormal(b: &Scalar) -> CurvatureTensor {
    let sp = space_diag_pmpm();
    let xz = w(&sp, "x", "z");
    build(&sp, &[(b.clone(), xz.clone(), xz)])
}

/// `K = a A_{x,y} v A_{x,y}` with `<x,t> = <y,z> = 1`; Ricci flat.
pub fn ricci_flat_rank_one(a: &Scalar) -> CurvatureTensor {
    let sp = space_null_xt_yz();
    let xy = w(&sp, "x", "y");
    build(&sp, &[(a.clone(), xy.clone(), xy)])
}

/// `K = a A_{x,y} v A_{x,y}` with `<x,z> = -<y,y> = <t,t> = 1`;
/// `ric = -a (x v x)`, Ricci isotropic.
pub fn isotropic_rank_one(a: &Scalar) -> CurvatureTensor {
    let sp = space_xz_nyy_tt();
    let xy = w(&sp, "x", "y");
    build(&sp, &[(a.clone(), xy.clone(), xy)])
}

/// `K = a Axz v Axz + b Ayt v Ayt` on the null basis;
/// `ric = -2(a x v z + b y v t)`.
pub fn two_plane_sum_null(a: &Scalar, b: &Scalar) -> CurvatureTensor {
    let sp = space_null_xz_yt();
    let xz = w(&sp, "x", "z");
    let yt = w(&sp, "y", "t");
    build(
        &sp,
        &[(a.clone(), xz.clone(), xz), (b.clone(), yt.clone(), yt)],
    )
}

/// Same sum on the orthonormal basis;
/// `ric = a (x v x + z v z) - b (y v y + t v t)`.
pub fn two_plane_sum_orthonormal(a: &Scalar, b: &Scalar) -> CurvatureTensor {
    let sp = space_diag_pmpm();
    let xz = w(&sp, "x", "z");
    let yt = w(&sp, "y", "t");
    build(
        &sp,
        &[(a.clone(), xz.clone(), xz), (b.clone(), yt.clone(), yt)],
    )
}

/// Complex-Ricci model with `p1 = Axz + Aty`, `p2 = Axt + Ayz` and
/// `<x,t> = <y,z> = 1`:
/// `ric = -4a (x v t + y v z) + 2b (y v t - x v z)`, eigenvalues
/// `-2a +- i b`, minimal polynomial `(X + 2a)^2 + b^2`.
///
/// The table prints this tensor as `a (p1 v p1 - p2 v p2) + b p1 v p2`,
/// but that coefficient pairing yields `ric = +4a(...)` (exact
/// recomputation), contradicting the entry's own Ricci expression and
/// eigenvalues. The stated Ricci pins the tensor, so the `a` coefficient
/// here carries the opposite sign of the printed formula.
pub fn complex_ricci(a: &Scalar, b: &Scalar) -> CurvatureTensor {
    let sp = space_null_xt_yz();
    let p1 = w(&sp, "x", "z").add(&w(&sp, "t", "y"));
    let p2 = w(&sp, "x", "t").add(&w(&sp, "y", "z"));
    build(
        &sp,
        &[
            (a.negate(), p1.clone(), p1.clone()),
            (a.clone(), p2.clone(), p2.clone()),
            (b.clone(), p1, p2),
        ],
    )
}

/// `K = c p2 v p2 + d p1 v p2` with `p1 = Axz + Ayt`, `p2 = Axt` on the
/// null basis; `ric = -2d (x v t)`, Ricci isotropic for d != 0.
pub fn isotropic_pair(c: &Scalar, d: &Scalar) -> CurvatureTensor {
    let sp = space_null_xz_yt();
    let p1 = w(&sp, "x", "z").add(&w(&sp, "y", "t"));
    let p2 = w(&sp, "x", "t");
    build(
        &sp,
        &[
            (c.clone(), p2.clone(), p2.clone()),
            (d.clone(), p1, p2),
        ],
    )
}

/// `K = a Axy v Axy + b Axt v Axt + c Axy v Axt` on the null basis;
/// `ric = c (x v x)`.
pub fn isotropic_triple(a: &Scalar, b: &Scalar, c: &Scalar) -> CurvatureTensor {
    let sp = space_null_xz_yt();
    let xy = w(&sp, "x", "y");
    let xt = w(&sp, "x", "t");
    build(
        &sp,
        &[
            (a.clone(), xy.clone(), xy.clone()),
            (b.clone(), xt.clone(), xt.clone()),
            (c.clone(), xy, xt),
        ],
    )
}

/// Ricci-flat pair `K = a Axy v Axy + b Axt v Axt` on the null basis.
pub fn ricci_flat_pair(a: &Scalar, b: &Scalar) -> CurvatureTensor {
    let sp = space_null_xz_yt();
    let xy = w(&sp, "x", "y");
    let xt = w(&sp, "x", "t");
    build(
        &sp,
        &[(a.clone(), xy.clone(), xy), (b.clone(), xt.clone(), xt)],
    )
}

/// `K = a (Axz v Axz + 2 Axy v Ayz)` with `<x,z> = <y,y> = 1,
/// <t,t> = -1`; `ric = -2a (2 x v z + y v y)`, holonomy dimension 3.
pub fn holonomy_three(a: &Scalar) -> CurvatureTensor {
    let sp = space_xz_yy_ntt();
    let xz = w(&sp, "x", "z");
    let xy = w(&sp, "x", "y");
    let yz = w(&sp, "y", "z");
    build(
        &sp,
        &[
            (a.clone(), xz.clone(), xz),
            (a.scale_int(2), xy, yz),
        ],
    )
}

/// The Einstein tensor spanning the symmetric curvature space of the
/// catalogue entry 4.2^1:
/// `K = a (Axz v Axz + Ayt v Ayt + Axz v Ayt + Axt v Ayz)`;
/// `ric = -3a (x v z + y v t)`.
pub fn einstein_4_2_1(a: &Scalar) -> CurvatureTensor {
    let sp = space_null_xz_yt();
    let xz = w(&sp, "x", "z");
    let yt = w(&sp, "y", "t");
    let xt = w(&sp, "x", "t");
    let yz = w(&sp, "y", "z");
    build(
        &sp,
        &[
            (a.clone(), xz.clone(), xz.clone()),
            (a.clone(), yt.clone(), yt.clone()),
            (a.clone(), xz, yt),
            (a.clone(), xt, yz),
        ],
    )
}

/// The constant-curvature generator spanning the symmetric curvature space
/// of `so(2,2)`:
/// `K = a (Axz v Axz + Ayt v Ayt + 2 Axt v Ayz + 2 Axy v Atz)`,
/// `ric = -6a (x v z + y v t)`, holonomy `so(2,2)`.
///
/// The table as printed carries an extra `Axz v Ayt` term; that variant
/// fails the Bianchi identity (see `printed_6_1_1_variant`), while this
/// generator is the one the recomputation produces, with the same stated
/// Ricci. Reports surface the discrepancy instead of hiding it.
pub fn k6_constant_curvature(a: &Scalar) -> CurvatureTensor {
    let sp = space_null_xz_yt();
    build(&sp, &k6_terms(&sp, a, false))
}

/// The 6.1^1 generator exactly as printed in the table (including the
/// `Axz v Ayt` term). Not Bianchi-flat; kept for erratum reporting.
pub fn printed_6_1_1_variant(a: &Scalar) -> crate::curvature::PSymTensor {
    let sp = space_null_xz_yt();
    make_tensor(&sp, &k6_terms(&sp, a, true)).unwrap()
}

fn k6_terms(
    sp: &SpaceRef,
    a: &Scalar,
    include_cross_term: bool,
) -> Vec<(Scalar, Bivector, Bivector)> {
    let xz = w(sp, "x", "z");
    let yt = w(sp, "y", "t");
    let xt = w(sp, "x", "t");
    let yz = w(sp, "y", "z");
    let xy = w(sp, "x", "y");
    let tz = w(sp, "t", "z");
    let mut terms = vec![
        (a.clone(), xz.clone(), xz.clone()),
        (a.clone(), yt.clone(), yt.clone()),
        (a.scale_int(2), xt, yz),
        (a.scale_int(2), xy, tz),
    ];
    if include_cross_term {
        terms.push((a.clone(), xz, yt));
    }
    terms
}

/// A named fixture together with its claimed Ricci form, holonomy
/// dimension and parameter constraints.
pub struct ModelTensor {
    pub name: &'static str,
    pub k: CurvatureTensor,
    pub expected_ric: Matrix,
    pub holonomy_dim: usize,
    /// Scalars that must stay nonzero for the claim.
    pub constraints: Vec<Scalar>,
}

/// The classification table fixtures (holonomy dimensions 1 through 6),
/// each with its claimed Ricci form, symbolic in the parameters.
pub fn classification_fixtures() -> Vec<ModelTensor> {
    let a = Scalar::param("a");
    let b = Scalar::param("b");
    let c = Scalar::param("c");
    let d = Scalar::param("d");
    let mut out = Vec::new();

    {
        let k = rank_one_null(&b);
        let sp = k.space().clone();
        let expected = vee(&sp, "z", "x").scale(&b.scale_int(-2));
        out.push(ModelTensor {
            name: "h1-rank-one-null",
            k,
            expected_ric: expected,
            holonomy_dim: 1,
            constraints: vec![b.clone()],
        });
    }
    {
        let k = rank_one_orthonormal(&b);
        let sp = k.space().clone();
        let expected = vee(&sp, "x", "x").add(&vee(&sp, "z", "z")).scale(&b);
        out.push(ModelTensor {
            name: "h1-rank-one-orthonormal",
            k,
            expected_ric: expected,
            holonomy_dim: 1,
            constraints: vec![b.clone()],
        });
    }
    {
        let k = ricci_flat_rank_one(&a);
        let sp = k.space().clone();
        let expected = Matrix::zero(sp.dim(), sp.dim());
        out.push(ModelTensor {
            name: "h1-ricci-flat",
            k,
            expected_ric: expected,
            holonomy_dim: 1,
            constraints: vec![a.clone()],
        });
    }
    {
        let k = isotropic_rank_one(&a);
        let sp = k.space().clone();
        let expected = vee(&sp, "x", "x").scale(&a.negate());
        out.push(ModelTensor {
            name: "h1-isotropic",
            k,
            expected_ric: expected,
            holonomy_dim: 1,
            constraints: vec![a.clone()],
        });
    }
    {
        let k = two_plane_sum_null(&a, &b);
        let sp = k.space().clone();
        let expected = vee(&sp, "x", "z")
            .scale(&a)
            .add(&vee(&sp, "y", "t").scale(&b))
            .scale(&s(-2));
        out.push(ModelTensor {
            name: "h2-two-plane-null",
            k,
            expected_ric: expected,
            holonomy_dim: 2,
            constraints: vec![a.clone(), b.clone()],
        });
    }
    {
        let k = two_plane_sum_orthonormal(&a, &b);
        let sp = k.space().clone();
        let expected = vee(&sp, "x", "x")
            .add(&vee(&sp, "z", "z"))
            .scale(&a)
            .sub(
                &vee(&sp, "y", "y")
                    .add(&vee(&sp, "t", "t"))
                    .scale(&b),
            );
        out.push(ModelTensor {
            name: "h2-two-plane-orthonormal",
            k,
            expected_ric: expected,
            holonomy_dim: 2,
            constraints: vec![a.clone(), b.clone()],
        });
    }
    {
        let k = complex_ricci(&a, &b);
        let sp = k.space().clone();
        let expected = vee(&sp, "x", "t")
            .add(&vee(&sp, "y", "z"))
            .scale(&a.scale_int(-4))
            .add(
                &vee(&sp, "y", "t")
                    .sub(&vee(&sp, "x", "z"))
                    .scale(&b.scale_int(2)),
            );
        out.push(ModelTensor {
            name: "h2-complex-ricci",
            k,
            expected_ric: expected,
            holonomy_dim: 2,
            constraints: vec![a.clone(), b.clone()],
        });
    }
    {
        let k = isotropic_pair(&c, &d);
        let sp = k.space().clone();
        let expected = vee(&sp, "x", "t").scale(&d.scale_int(-2));
        out.push(ModelTensor {
            name: "h2-isotropic-pair",
            k,
            expected_ric: expected,
            holonomy_dim: 2,
            constraints: vec![c.clone(), d.clone()],
        });
    }
    {
        let k = isotropic_triple(&a, &b, &c);
        let sp = k.space().clone();
        let expected = vee(&sp, "x", "x").scale(&c);
        out.push(ModelTensor {
            name: "h2-isotropic-triple",
            k,
            expected_ric: expected,
            holonomy_dim: 2,
            constraints: vec![a.clone(), b.clone(), c.clone()],
        });
    }
    {
        let k = holonomy_three(&a);
        let sp = k.space().clone();
        let expected = vee(&sp, "x", "z")
            .scale(&s(2))
            .add(&vee(&sp, "y", "y"))
            .scale(&a.scale_int(-2));
        out.push(ModelTensor {
            name: "h3-isotropic",
            k,
            expected_ric: expected,
            holonomy_dim: 3,
            constraints: vec![a.clone()],
        });
    }
    {
        let k = einstein_4_2_1(&a);
        let sp = k.space().clone();
        let expected = vee(&sp, "x", "z")
            .add(&vee(&sp, "y", "t"))
            .scale(&a.scale_int(-3));
        out.push(ModelTensor {
            name: "h4-einstein",
            k,
            expected_ric: expected,
            holonomy_dim: 4,
            constraints: vec![a.clone()],
        });
    }
    {
        let k = k6_constant_curvature(&a);
        let sp = k.space().clone();
        let expected = vee(&sp, "x", "z")
            .add(&vee(&sp, "y", "t"))
            .scale(&a.scale_int(-6));
        out.push(ModelTensor {
            name: "h6-constant-curvature",
            k,
            expected_ric: expected,
            holonomy_dim: 6,
            constraints: vec![a.clone()],
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{is_semi_symmetric, ricci_form};

    #[test]
    fn all_fixtures_match_their_claimed_ricci() {
        for fx in classification_fixtures() {
            assert_eq!(
                ricci_form(&fx.k),
                fx.expected_ric,
                "ricci mismatch for {}",
                fx.name
            );
            assert!(
                is_semi_symmetric(&fx.k).holds,
                "{} must be semi-symmetric",
                fx.name
            );
            assert_eq!(
                fx.k.holonomy_dim(),
                fx.holonomy_dim,
                "holonomy dim mismatch for {}",
                fx.name
            );
        }
    }

    #[test]
    fn fixture_ricci_tags() {
        use crate::curvature::{ricci_with, GenericityOpts, RicciType};
        use crate::exact::DEFAULT_SEED;
        for fx in classification_fixtures() {
            let opts = GenericityOpts {
                constraints: fx.constraints.clone(),
                seed: DEFAULT_SEED,
            };
            let tag = ricci_with(&fx.k, &opts).unwrap().type_tag;
            let ok = match fx.name {
                "h1-ricci-flat" => matches!(tag, RicciType::RicciFlat),
                "h1-isotropic" | "h2-isotropic-pair" | "h2-isotropic-triple" => {
                    matches!(tag, RicciType::Isotropic)
                }
                "h4-einstein" | "h6-constant-curvature" => {
                    matches!(tag, RicciType::Einstein(_))
                }
                "h2-complex-ricci" => matches!(tag, RicciType::ComplexRicci { .. }),
                "h1-rank-one-null"
                | "h1-rank-one-orthonormal"
                | "h2-two-plane-null"
                | "h2-two-plane-orthonormal"
                | "h3-isotropic" => matches!(tag, RicciType::RealMixed),
                other => panic!("unknown fixture {}", other),
            };
            assert!(ok, "{}: unexpected tag {:?}", fx.name, tag);
        }
    }

    #[test]
    fn printed_6_1_1_fails_bianchi() {
        let a = Scalar::param("a");
        let printed = printed_6_1_1_variant(&a);
        assert!(
            !crate::curvature::bianchi_map(&printed).is_zero(),
            "the printed 6.1^1 generator has a spurious cross term"
        );
    }
}
