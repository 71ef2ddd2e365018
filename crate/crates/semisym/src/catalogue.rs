//! The built-in catalogue: one fixture per Lie subalgebra of `so(2,2)`
//! in the classification table, with its stated metric convention,
//! parameter cases, and the claimed `R(g)` / `g_sym` spans.
//!
//! `verify_entry` recomputes both spaces and compares dimensions and
//! spans; parametric cases are certified symbolically and re-checked at
//! seeded generic points (plus rational circle points for the
//! trigonometric families). Mismatches are reported, never silently
//! passed; the one adjudicated exception is 6.1^1, whose printed
//! curvature-space dimension (19) disagrees with the rank-nullity count
//! (21 - rank B = 20) — the entry passes iff the computed value is
//! internally consistent, and both numbers are reported.

use crate::curvature::{bianchi_map, make_tensor, PSymTensor, SpaceRef};
use crate::exact::{generic_points, same_span, Assignment, Matrix, Scalar, Sym};
use crate::liealg::{
    curvature_space, symmetric_curvature_space, LieAlgError, LieSubalgebra,
};
use crate::space::Bivector;
use crate::tables;

/// A claimed span, stated over the case's generator list: each claimed
/// element is a sum of `coeff * (gen_i v gen_j)` products.
#[derive(Debug, Clone)]
pub enum SpanClaim {
    Zero,
    Elements(Vec<Vec<(Scalar, usize, usize)>>),
    DimOnly(usize),
    /// Printed dimension adjudicated against the rank-nullity count.
    DimErratum { printed: usize },
}

impl SpanClaim {
    pub fn claimed_dim(&self) -> Option<usize> {
        match self {
            SpanClaim::Zero => Some(0),
            SpanClaim::Elements(els) => Some(els.len()),
            SpanClaim::DimOnly(d) => Some(*d),
            SpanClaim::DimErratum { printed } => Some(*printed),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogueCase {
    pub label: &'static str,
    pub space: SpaceRef,
    pub generators: Vec<Bivector>,
    /// Scalars that must stay nonzero (excluded locus for sampling).
    pub constraints: Vec<Scalar>,
    /// Additional mandatory points (rational points on the unit circle for
    /// the trigonometric families).
    pub extra_points: Vec<(String, Assignment)>,
    pub r_claim: SpanClaim,
    pub sym_claim: SpanClaim,
    pub notes: Vec<String>,
    /// Documented deviations of the printed table from the recomputation:
    /// the claims above carry the recomputed statement, the erratum text
    /// records what is printed, and strict mode fails the case.
    pub errata: Vec<&'static str>,
}

#[derive(Debug, Clone)]
pub struct CatalogueEntry {
    pub name: &'static str,
    pub cases: Vec<CatalogueCase>,
}

/// Verification record for one case.
#[derive(Debug, Clone)]
pub struct CaseResult {
    pub entry: String,
    pub case: String,
    pub computed_dim_r: usize,
    pub computed_dim_sym: usize,
    pub claimed_dim_r: Option<usize>,
    pub claimed_dim_sym: Option<usize>,
    pub span_match_r: Option<bool>,
    pub span_match_sym: Option<bool>,
    pub closure_ok: bool,
    /// (point description, dim R, dim g_sym) at each sampled point.
    pub sampled: Vec<(String, usize, usize)>,
    /// (dim of g v g, rank of the restricted Bianchi map, kernel dim) for
    /// the adjudicated entry.
    pub rank_nullity: Option<(usize, usize, usize)>,
    /// Match under the adjudicated exception policy.
    pub matched: bool,
    /// Match against the printed claims with no exceptions.
    pub strict_matched: bool,
    pub notes: Vec<String>,
}

/// Shared erratum text for the swapped 3.2^1 case conditions.
const SWAPPED_3_2_1: &str =
    "printed g_sym case conditions are swapped: the action of p1 on p2 v p2 \
     scales with (1 - a), so g_sym = R.(p2 v p2) holds at a = 1 and g_sym = 0 \
     for a not in {0,1}, the opposite of the printed pairing";

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn gen(space: &SpaceRef, terms: &[(Scalar, &str, &str)]) -> Bivector {
    let mut acc = Bivector::zero(space);
    for (c, a, b) in terms {
        let i = space.basis_index(a).unwrap();
        let j = space.basis_index(b).unwrap();
        acc = acc.add(&Bivector::basis(space, i, j).scale(c));
    }
    acc
}

fn wedge1(space: &SpaceRef, a: &str, b: &str) -> Bivector {
    gen(space, &[(s(1), a, b)])
}

/// `(coeff, i, j)` products over the generator list.
fn el(terms: &[(i64, usize, usize)]) -> Vec<(Scalar, usize, usize)> {
    terms.iter().map(|&(c, i, j)| (s(c), i, j)).collect()
}

fn circle_point(c_name: &str, s_name: &str, c: (i64, i64), sn: (i64, i64)) -> Assignment {
    let mut a = Assignment::new();
    a.insert(Sym::new(c_name), Scalar::from_fraction(c.0, c.1));
    a.insert(Sym::new(s_name), Scalar::from_fraction(sn.0, sn.1));
    a
}

/// The full catalogue, in table order.
pub fn komrakov_catalogue() -> Vec<CatalogueEntry> {
    let mut out = Vec::new();
    let a = Scalar::param("a");

    // --- dimension 1 ---
    for (name, space) in [
        ("1.1^1", tables::space_null_xz_yt()),
        ("1.1^2", tables::space_diag_pmpm()),
    ] {
        let zero_case = CatalogueCase {
            label: "a=0",
            space: space.clone(),
            generators: vec![wedge1(&space, "x", "z")],
            constraints: vec![],
            extra_points: vec![],
            r_claim: SpanClaim::Elements(vec![el(&[(1, 0, 0)])]),
            sym_claim: SpanClaim::Elements(vec![el(&[(1, 0, 0)])]),
            notes: vec![],
            errata: vec![],
        };
        let generic = CatalogueCase {
            label: "a!=0",
            space: space.clone(),
            generators: vec![gen(
                &space,
                &[(s(1), "x", "z"), (a.clone(), "y", "t")],
            )],
            constraints: vec![a.clone()],
            extra_points: vec![],
            r_claim: SpanClaim::Zero,
            sym_claim: SpanClaim::Zero,
            notes: vec![],
            errata: vec![],
        };
        out.push(CatalogueEntry {
            name,
            cases: vec![zero_case, generic],
        });
    }

    {
        let space = tables::space_null_xz_yt();
        out.push(CatalogueEntry {
            name: "1.2^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![gen(
                    &space,
                    &[(s(1), "x", "z"), (s(1), "x", "t"), (s(1), "y", "t")],
                )],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Zero,
                sym_claim: SpanClaim::Zero,
                notes: vec![],
                errata: vec![],
            }],
        });
        out.push(CatalogueEntry {
            name: "1.2^2",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![gen(
                    &space,
                    &[(s(1), "x", "y"), (s(1), "x", "t"), (s(1), "y", "z")],
                )],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Zero,
                sym_claim: SpanClaim::Zero,
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    {
        let space = tables::space_null_xt_yz();
        out.push(CatalogueEntry {
            name: "1.3^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![wedge1(&space, "x", "y")],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Elements(vec![el(&[(1, 0, 0)])]),
                sym_claim: SpanClaim::Elements(vec![el(&[(1, 0, 0)])]),
                notes: vec![],
                errata: vec![],
            }],
        });
    }
    {
        let space = tables::space_xz_nyy_tt();
        out.push(CatalogueEntry {
            name: "1.4^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![wedge1(&space, "x", "y")],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Elements(vec![el(&[(1, 0, 0)])]),
                sym_claim: SpanClaim::Elements(vec![el(&[(1, 0, 0)])]),
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    {
        // Trigonometric families: cos/sin are encoded as parameters (c, s)
        // and verified both generically and at rational circle points.
        let c = Scalar::param("c");
        let sn = Scalar::param("s");
        let space = tables::space_null_xt_yz();
        out.push(CatalogueEntry {
            name: "1.1^5",
            cases: vec![CatalogueCase {
                label: "phi in (0, pi/4]",
                space: space.clone(),
                generators: vec![gen(
                    &space,
                    &[
                        (c.clone(), "x", "t"),
                        (c.clone(), "y", "z"),
                        (sn.clone(), "y", "z"),
                        (sn.clone(), "t", "y"),
                    ],
                )],
                constraints: vec![c.clone(), sn.clone()],
                extra_points: vec![
                    (
                        "circle c=4/5 s=3/5".into(),
                        circle_point("c", "s", (4, 5), (3, 5)),
                    ),
                    (
                        "circle c=12/13 s=5/13".into(),
                        circle_point("c", "s", (12, 13), (5, 13)),
                    ),
                    (
                        "boundary direction c=s=1".into(),
                        circle_point("c", "s", (1, 1), (1, 1)),
                    ),
                ],
                r_claim: SpanClaim::Zero,
                sym_claim: SpanClaim::Zero,
                notes: vec![
                    "generator transcribed as printed (the sin-part repeats A_{y,z})".into(),
                ],
                errata: vec![],
            }],
        });
        let space = tables::space_null_xz_yt();
        out.push(CatalogueEntry {
            name: "1.1^6",
            cases: vec![CatalogueCase {
                label: "phi in (0, pi/4)",
                space: space.clone(),
                generators: vec![gen(
                    &space,
                    &[
                        (c.clone(), "x", "t"),
                        (c.clone(), "z", "y"),
                        (sn.clone(), "x", "z"),
                        (sn.clone(), "y", "t"),
                    ],
                )],
                constraints: vec![c.clone(), sn.clone()],
                extra_points: vec![
                    (
                        "circle c=4/5 s=3/5".into(),
                        circle_point("c", "s", (4, 5), (3, 5)),
                    ),
                    (
                        "circle c=12/13 s=5/13".into(),
                        circle_point("c", "s", (12, 13), (5, 13)),
                    ),
                ],
                r_claim: SpanClaim::Zero,
                sym_claim: SpanClaim::Zero,
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    // --- dimension 2 ---
    for (name, space) in [
        ("2.1^1", tables::space_null_xz_yt()),
        ("2.1^3", tables::space_diag_pmpm()),
    ] {
        out.push(CatalogueEntry {
            name,
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![wedge1(&space, "x", "z"), wedge1(&space, "y", "t")],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Elements(vec![el(&[(1, 0, 0)]), el(&[(1, 1, 1)])]),
                sym_claim: SpanClaim::Elements(vec![el(&[(1, 0, 0)]), el(&[(1, 1, 1)])]),
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    {
        let space = tables::space_null_xt_yz();
        out.push(CatalogueEntry {
            name: "2.1^4",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![
                    gen(&space, &[(s(1), "x", "z"), (s(1), "t", "y")]),
                    gen(&space, &[(s(1), "x", "t"), (s(1), "y", "z")]),
                ],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Elements(vec![
                    el(&[(1, 0, 0), (-1, 1, 1)]),
                    el(&[(1, 0, 1)]),
                ]),
                sym_claim: SpanClaim::Elements(vec![
                    el(&[(1, 0, 0), (-1, 1, 1)]),
                    el(&[(1, 0, 1)]),
                ]),
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    {
        let space = tables::space_null_xz_yt();
        let mk_gens = |coef: &Scalar| {
            vec![
                gen(&space, &[(s(1), "x", "z"), (coef.clone(), "y", "t")]),
                wedge1(&space, "x", "t"),
            ]
        };
        out.push(CatalogueEntry {
            name: "2.2^1",
            cases: vec![
                CatalogueCase {
                    label: "a=0",
                    space: space.clone(),
                    generators: mk_gens(&s(0)),
                    constraints: vec![],
                    extra_points: vec![],
                    r_claim: SpanClaim::Elements(vec![
                        el(&[(1, 0, 0)]),
                        el(&[(1, 1, 1)]),
                        el(&[(1, 0, 1)]),
                    ]),
                    sym_claim: SpanClaim::Zero,
                    notes: vec![],
                    errata: vec![],
                },
                CatalogueCase {
                    label: "a=1",
                    space: space.clone(),
                    generators: mk_gens(&s(1)),
                    constraints: vec![],
                    extra_points: vec![],
                    r_claim: SpanClaim::Elements(vec![el(&[(1, 1, 1)]), el(&[(1, 0, 1)])]),
                    sym_claim: SpanClaim::Elements(vec![el(&[(1, 1, 1)]), el(&[(1, 0, 1)])]),
                    notes: vec![],
                    errata: vec![],
                },
                CatalogueCase {
                    label: "a not in {0,1}",
                    space: space.clone(),
                    generators: mk_gens(&a),
                    constraints: vec![a.clone(), a.sub(&s(1))],
                    extra_points: vec![],
                    r_claim: SpanClaim::Elements(vec![el(&[(1, 1, 1)]), el(&[(1, 0, 1)])]),
                    sym_claim: SpanClaim::Zero,
                    notes: vec![],
                    errata: vec![],
                },
            ],
        });
    }

    {
        let c = Scalar::param("c");
        let sn = Scalar::param("s");
        let space = tables::space_null_xz_yt();
        out.push(CatalogueEntry {
            name: "2.2^3",
            cases: vec![CatalogueCase {
                label: "phi in (0, pi/2)",
                space: space.clone(),
                generators: vec![
                    gen(
                        &space,
                        &[
                            (c.clone(), "x", "t"),
                            (c.clone(), "z", "y"),
                            (sn.clone(), "x", "z"),
                            (sn.clone(), "y", "t"),
                        ],
                    ),
                    wedge1(&space, "x", "y"),
                ],
                constraints: vec![c.clone(), sn.clone()],
                extra_points: vec![
                    (
                        "circle c=4/5 s=3/5".into(),
                        circle_point("c", "s", (4, 5), (3, 5)),
                    ),
                    (
                        "circle c=3/5 s=4/5".into(),
                        circle_point("c", "s", (3, 5), (4, 5)),
                    ),
                    (
                        "circle c=12/13 s=5/13".into(),
                        circle_point("c", "s", (12, 13), (5, 13)),
                    ),
                ],
                r_claim: SpanClaim::Elements(vec![el(&[(1, 1, 1)]), el(&[(1, 1, 0)])]),
                sym_claim: SpanClaim::Zero,
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    {
        let space = tables::space_null_xz_yt();
        out.push(CatalogueEntry {
            name: "2.3^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![
                    gen(
                        &space,
                        &[(s(1), "x", "z"), (s(1), "x", "y"), (s(1), "t", "y")],
                    ),
                    wedge1(&space, "x", "t"),
                ],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Elements(vec![el(&[(1, 1, 1)]), el(&[(1, 0, 1)])]),
                sym_claim: SpanClaim::Zero,
                notes: vec![],
                errata: vec![
                    "printed claim lists R(g) = R.(p2 v p2) only; p1 v p2 is also \
                     Bianchi-flat (every wedge pair in its expansion shares a basis \
                     vector), so the recomputed space has dimension 2",
                ],
            }],
        });
    }

    {
        let space = tables::space_xz_nyy_tt();
        out.push(CatalogueEntry {
            name: "2.4^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![wedge1(&space, "x", "z"), wedge1(&space, "x", "y")],
                constraints: vec![],
                extra_points: vec![],
                // The table writes the second and third elements with
                // A_{y,x}; signs cancel or are absorbed by the span.
                r_claim: SpanClaim::Elements(vec![
                    el(&[(1, 0, 0)]),
                    el(&[(1, 1, 1)]),
                    el(&[(-1, 0, 1)]),
                ]),
                sym_claim: SpanClaim::Zero,
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    {
        let space = tables::space_null_xz_yt();
        out.push(CatalogueEntry {
            name: "2.5^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![wedge1(&space, "x", "t"), wedge1(&space, "x", "y")],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Elements(vec![
                    el(&[(1, 1, 1)]),
                    el(&[(1, 0, 0)]),
                    el(&[(1, 1, 0)]),
                ]),
                sym_claim: SpanClaim::Elements(vec![
                    el(&[(1, 1, 1)]),
                    el(&[(1, 0, 0)]),
                    el(&[(1, 1, 0)]),
                ]),
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    // --- dimension 3 ---
    {
        let space = tables::space_null_xz_yt();
        out.push(CatalogueEntry {
            name: "3.1^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![
                    wedge1(&space, "x", "z"),
                    wedge1(&space, "x", "t"),
                    wedge1(&space, "y", "t"),
                ],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Elements(vec![
                    el(&[(1, 0, 0)]),
                    el(&[(1, 1, 1)]),
                    el(&[(1, 2, 2)]),
                    el(&[(1, 1, 2)]),
                    el(&[(1, 0, 1)]),
                ]),
                sym_claim: SpanClaim::Zero,
                notes: vec![
                    "last printed element lacks the product symbol; read as Axz v Axt".into(),
                ],
                errata: vec![],
            }],
        });
    }

    {
        let space = tables::space_null_xz_yt();
        let mk_gens = |coef: &Scalar| {
            vec![
                gen(&space, &[(s(1), "x", "z"), (coef.clone(), "y", "t")]),
                wedge1(&space, "x", "t"),
                wedge1(&space, "x", "y"),
            ]
        };
        let five = |_: ()| {
            SpanClaim::Elements(vec![
                el(&[(1, 1, 1)]),
                el(&[(1, 2, 2)]),
                el(&[(1, 1, 2)]),
                el(&[(1, 0, 1)]),
                el(&[(1, 0, 2)]),
            ])
        };
        out.push(CatalogueEntry {
            name: "3.2^1",
            cases: vec![
                CatalogueCase {
                    label: "a=0",
                    space: space.clone(),
                    generators: mk_gens(&s(0)),
                    constraints: vec![],
                    extra_points: vec![],
                    r_claim: SpanClaim::Elements(vec![
                        el(&[(1, 0, 0)]),
                        el(&[(1, 1, 1)]),
                        el(&[(1, 2, 2)]),
                        el(&[(1, 1, 2)]),
                        el(&[(1, 0, 1)]),
                        el(&[(1, 0, 2)]),
                    ]),
                    sym_claim: SpanClaim::Zero,
                    notes: vec![],
                    errata: vec![],
                },
                CatalogueCase {
                    label: "a=1",
                    space: space.clone(),
                    generators: mk_gens(&s(1)),
                    constraints: vec![],
                    extra_points: vec![],
                    r_claim: five(()),
                    sym_claim: SpanClaim::Elements(vec![el(&[(1, 1, 1)])]),
                    notes: vec![],
                    errata: vec![SWAPPED_3_2_1],
                },
                CatalogueCase {
                    label: "a not in {0,1}",
                    space: space.clone(),
                    generators: mk_gens(&a),
                    constraints: vec![a.clone(), a.sub(&s(1))],
                    extra_points: vec![],
                    r_claim: five(()),
                    sym_claim: SpanClaim::Zero,
                    notes: vec![],
                    errata: vec![SWAPPED_3_2_1],
                },
            ],
        });
    }

    {
        let space = tables::space_null_xz_yt();
        out.push(CatalogueEntry {
            name: "3.3^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![
                    wedge1(&space, "y", "t"),
                    wedge1(&space, "x", "t"),
                    wedge1(&space, "x", "y"),
                ],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Elements(vec![
                    el(&[(1, 0, 0)]),
                    el(&[(1, 1, 1)]),
                    el(&[(1, 2, 2)]),
                    el(&[(1, 1, 2)]),
                    el(&[(1, 0, 1)]),
                    el(&[(1, 0, 2)]),
                ]),
                sym_claim: SpanClaim::Elements(vec![el(&[(1, 1, 2)])]),
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    {
        let space = tables::space_null_xz_yt();
        out.push(CatalogueEntry {
            name: "3.4^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![
                    gen(&space, &[(s(1), "x", "z"), (s(1), "t", "y")]),
                    wedge1(&space, "x", "t"),
                    wedge1(&space, "y", "z"),
                ],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Elements(vec![
                    el(&[(1, 0, 0), (-2, 1, 2)]),
                    el(&[(1, 1, 1)]),
                    el(&[(1, 2, 2)]),
                    el(&[(1, 0, 1)]),
                    el(&[(1, 0, 2)]),
                ]),
                sym_claim: SpanClaim::Zero,
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    {
        let space = tables::space_xz_yy_ntt();
        out.push(CatalogueEntry {
            name: "3.5^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![
                    wedge1(&space, "x", "z"),
                    wedge1(&space, "x", "y"),
                    wedge1(&space, "y", "z"),
                ],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Elements(vec![
                    el(&[(1, 0, 0)]),
                    el(&[(1, 1, 1)]),
                    el(&[(1, 2, 2)]),
                    el(&[(1, 0, 1)]),
                    el(&[(1, 0, 2)]),
                    el(&[(1, 1, 2)]),
                ]),
                sym_claim: SpanClaim::Elements(vec![el(&[(1, 0, 0), (2, 1, 2)])]),
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    // --- dimension 4 ---
    {
        let space = tables::space_null_xz_yt();
        out.push(CatalogueEntry {
            name: "4.1^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![
                    wedge1(&space, "x", "y"),
                    wedge1(&space, "x", "z"),
                    wedge1(&space, "x", "t"),
                    wedge1(&space, "y", "t"),
                ],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Elements(vec![
                    el(&[(1, 0, 0)]),
                    el(&[(1, 1, 1)]),
                    el(&[(1, 0, 1)]),
                    el(&[(1, 2, 1)]),
                    el(&[(1, 2, 2)]),
                    el(&[(1, 3, 2)]),
                    el(&[(1, 0, 2)]),
                    el(&[(1, 3, 3)]),
                    el(&[(1, 0, 3)]),
                ]),
                sym_claim: SpanClaim::Zero,
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    {
        let space = tables::space_null_xz_yt();
        out.push(CatalogueEntry {
            name: "4.2^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![
                    wedge1(&space, "x", "t"),
                    wedge1(&space, "x", "z"),
                    wedge1(&space, "y", "t"),
                    wedge1(&space, "y", "z"),
                ],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Elements(vec![
                    el(&[(1, 1, 1)]),
                    el(&[(1, 0, 0)]),
                    el(&[(1, 3, 3)]),
                    el(&[(1, 2, 2)]),
                    el(&[(1, 1, 0)]),
                    el(&[(1, 1, 3)]),
                    el(&[(1, 1, 2), (1, 0, 3)]),
                    el(&[(1, 0, 2)]),
                    el(&[(1, 3, 2)]),
                ]),
                sym_claim: SpanClaim::Elements(vec![el(&[
                    (1, 1, 1),
                    (1, 2, 2),
                    (1, 1, 2),
                    (1, 0, 3),
                ])]),
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    {
        let space = tables::space_null_xz_yt();
        out.push(CatalogueEntry {
            name: "4.3^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![
                    wedge1(&space, "x", "y"),
                    wedge1(&space, "x", "t"),
                    gen(&space, &[(s(1), "t", "y"), (s(1), "x", "z")]),
                    wedge1(&space, "y", "z"),
                ],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::Elements(vec![
                    el(&[(1, 0, 0)]),
                    el(&[(1, 1, 1)]),
                    el(&[(1, 2, 2), (-2, 1, 3)]),
                    el(&[(1, 3, 3)]),
                    el(&[(1, 0, 1)]),
                    el(&[(1, 0, 2)]),
                    el(&[(1, 0, 3)]),
                    el(&[(1, 1, 2)]),
                    el(&[(1, 2, 3)]),
                ]),
                sym_claim: SpanClaim::Elements(vec![el(&[(1, 0, 0)])]),
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    // --- dimension 5 and 6 ---
    {
        let space = tables::space_null_xz_yt();
        out.push(CatalogueEntry {
            name: "5.1^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![
                    wedge1(&space, "x", "y"),
                    wedge1(&space, "x", "z"),
                    wedge1(&space, "x", "t"),
                    wedge1(&space, "y", "z"),
                    wedge1(&space, "y", "t"),
                ],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::DimOnly(14),
                sym_claim: SpanClaim::Zero,
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    {
        let space = tables::space_null_xz_yt();
        out.push(CatalogueEntry {
            name: "6.1^1",
            cases: vec![CatalogueCase {
                label: "all",
                space: space.clone(),
                generators: vec![
                    wedge1(&space, "x", "y"),
                    wedge1(&space, "x", "z"),
                    wedge1(&space, "x", "t"),
                    wedge1(&space, "y", "z"),
                    wedge1(&space, "y", "t"),
                    wedge1(&space, "z", "t"),
                ],
                constraints: vec![],
                extra_points: vec![],
                r_claim: SpanClaim::DimErratum { printed: 19 },
                // Constant-curvature generator over the wedge generators
                // (0=xy, 1=xz, 2=xt, 3=yz, 4=yt, 5=zt):
                // Axz v Axz + Ayt v Ayt + 2 Axt v Ayz + 2 Axy v Atz.
                // The printed formula carries an extra Axz v Ayt term that
                // fails the Bianchi identity; see `verify_case` notes.
                sym_claim: SpanClaim::Elements(vec![el(&[
                    (1, 1, 1),
                    (1, 4, 4),
                    (2, 2, 3),
                    (-2, 0, 5),
                ])]),
                notes: vec![],
                errata: vec![],
            }],
        });
    }

    out
}

pub fn entry_names() -> Vec<&'static str> {
    komrakov_catalogue().iter().map(|e| e.name).collect()
}

pub fn find_entry(name: &str) -> Option<CatalogueEntry> {
    komrakov_catalogue().into_iter().find(|e| e.name == name)
}

/// Builds the claimed span elements as tensors over the case generators.
fn claimed_elements(
    case: &CatalogueCase,
    claim: &SpanClaim,
) -> Result<Option<Vec<PSymTensor>>, LieAlgError> {
    match claim {
        SpanClaim::Elements(els) => {
            let mut out = Vec::new();
            for terms in els {
                let built: Vec<(Scalar, Bivector, Bivector)> = terms
                    .iter()
                    .map(|(c, i, j)| {
                        (
                            c.clone(),
                            case.generators[*i].clone(),
                            case.generators[*j].clone(),
                        )
                    })
                    .collect();
                out.push(make_tensor(&case.space, &built)?);
            }
            Ok(Some(out))
        }
        _ => Ok(None),
    }
}

fn span_of(tensors: &[PSymTensor]) -> Vec<Vec<Scalar>> {
    tensors.iter().map(|t| t.vectorize()).collect()
}

/// Verifies one case: recomputes `R(g)` and `g_sym`, compares dimensions
/// and spans, certifies parametric dimensions at sampled points, and
/// applies the adjudicated exception policy where it is declared.
pub fn verify_case(
    entry_name: &str,
    case: &CatalogueCase,
    seed: u64,
) -> Result<CaseResult, LieAlgError> {
    let g = LieSubalgebra::from_bivectors(
        case.space.clone(),
        &case.generators,
        Some(entry_name.to_string()),
        case.constraints.clone(),
    )?;
    let mut notes = case.notes.clone();
    let closure_ok = !g.was_extended();
    if !closure_ok {
        notes.push("generator span was not bracket-closed; closure substituted".into());
    }
    for e in &case.errata {
        notes.push(format!("erratum: {}", e));
    }

    let rg = curvature_space(&g)?;
    let gsym = symmetric_curvature_space(&g)?;
    let computed_dim_r = rg.len();
    let computed_dim_sym = gsym.len();

    let mut matched = closure_ok;
    let mut strict_matched = closure_ok && case.errata.is_empty();

    // Span comparisons.
    let mut span_match_r = None;
    let mut span_match_sym = None;
    for (claim, computed, slot, which) in [
        (&case.r_claim, &rg, &mut span_match_r, "R(g)"),
        (&case.sym_claim, &gsym, &mut span_match_sym, "g_sym"),
    ] {
        match claim {
            SpanClaim::Zero => {
                let ok = computed.is_empty();
                *slot = Some(ok);
                matched &= ok;
                strict_matched &= ok;
                if !ok {
                    notes.push(format!(
                        "{} claimed zero but has dimension {}",
                        which,
                        computed.len()
                    ));
                }
            }
            SpanClaim::Elements(_) => {
                let claimed = claimed_elements(case, claim)?.unwrap();
                let ok = computed.len() == claimed.len()
                    && same_span(&span_of(computed), &span_of(&claimed));
                *slot = Some(ok);
                matched &= ok;
                strict_matched &= ok;
                if !ok {
                    notes.push(format!(
                        "{} span mismatch: computed dim {}, claimed dim {}",
                        which,
                        computed.len(),
                        claimed.len()
                    ));
                }
            }
            SpanClaim::DimOnly(d) => {
                let ok = computed.len() == *d;
                matched &= ok;
                strict_matched &= ok;
                if !ok {
                    notes.push(format!(
                        "{} dimension mismatch: computed {}, claimed {}",
                        which,
                        computed.len(),
                        d
                    ));
                }
            }
            SpanClaim::DimErratum { printed } => {
                // Adjudicated: pass iff dim ker + rank = dim (g v g).
                let sq = crate::liealg::symmetric_square_basis(&g)?;
                let images: Vec<Vec<Scalar>> =
                    sq.iter().map(|t| bianchi_map(t).vectorize()).collect();
                let rank = crate::exact::stack_columns(&images).rank();
                let consistent = computed.len() + rank == sq.len();
                notes.push(format!(
                    "{}: computed dim {} (rank-nullity {} = {} - {}), printed claim {}",
                    which,
                    computed.len(),
                    computed.len(),
                    sq.len(),
                    rank,
                    printed
                ));
                matched &= consistent;
                strict_matched &= computed.len() == *printed;
            }
        }
    }

    // Every computed R(g) element must be Bianchi-flat, and every g_sym
    // element must be annihilated by all generators.
    for t in &rg {
        if !bianchi_map(t).is_zero() {
            matched = false;
            notes.push("internal: an R(g) element fails Bianchi".into());
        }
    }
    for t in &gsym {
        for gen in g.generators() {
            if !crate::curvature::action_on_p(g.space(), &gen.matrix, t).is_zero() {
                matched = false;
                notes.push("internal: a g_sym element is not annihilated".into());
            }
        }
    }

    // Parametric certification: seeded generic points plus any mandatory
    // extra points.
    let mut sampled = Vec::new();
    let mut params: Vec<Sym> = case.space.params().to_vec();
    for b in &case.generators {
        for e in &b.coords {
            for v in e.vars() {
                if let Err(pos) = params.binary_search(&v) {
                    params.insert(pos, v);
                }
            }
        }
    }
    if !params.is_empty() {
        let points = generic_points(seed, &params, &case.constraints)?;
        for (idx, p) in points.iter().enumerate() {
            let dims = crate::liealg::dims_at_point(&g, p)?;
            let desc = format!(
                "seeded[{}] {}",
                idx,
                p.iter()
                    .map(|(k, v)| format!("{}={}", k, v))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            if dims != (computed_dim_r, computed_dim_sym) {
                matched = false;
                strict_matched = false;
                notes.push(format!(
                    "sampled dims {:?} at {} differ from symbolic ({}, {})",
                    dims, desc, computed_dim_r, computed_dim_sym
                ));
            }
            sampled.push((desc, dims.0, dims.1));
        }
    }
    for (desc, p) in &case.extra_points {
        let dims = crate::liealg::dims_at_point(&g, p)?;
        if dims != (computed_dim_r, computed_dim_sym) {
            matched = false;
            strict_matched = false;
            notes.push(format!(
                "dims {:?} at {} differ from symbolic ({}, {})",
                dims, desc, computed_dim_r, computed_dim_sym
            ));
        }
        sampled.push((desc.clone(), dims.0, dims.1));
    }

    // The adjudicated 6.1^1 erratum: the printed g_sym formula carries an
    // extra cross term that fails Bianchi; surface it every run.
    if entry_name == "6.1^1" {
        let printed = tables::printed_6_1_1_variant(&Scalar::one());
        if bianchi_map(&printed).is_zero() {
            notes.push("printed g_sym formula is Bianchi-flat after all".into());
        } else {
            notes.push(
                "erratum: printed g_sym formula (extra Axz v Ayt term) fails Bianchi; \
                 the recomputed constant-curvature generator is used as the claim"
                    .into(),
            );
            strict_matched = false;
        }
    }

    let rank_nullity = match &case.r_claim {
        SpanClaim::DimErratum { .. } => {
            let sq = crate::liealg::symmetric_square_basis(&g)?;
            let images: Vec<Vec<Scalar>> =
                sq.iter().map(|t| bianchi_map(t).vectorize()).collect();
            let rank = crate::exact::stack_columns(&images).rank();
            Some((sq.len(), rank, computed_dim_r))
        }
        _ => None,
    };

    Ok(CaseResult {
        entry: entry_name.to_string(),
        case: case.label.to_string(),
        computed_dim_r,
        computed_dim_sym,
        claimed_dim_r: case.r_claim.claimed_dim(),
        claimed_dim_sym: case.sym_claim.claimed_dim(),
        span_match_r,
        span_match_sym,
        closure_ok,
        sampled,
        rank_nullity,
        matched,
        strict_matched,
        notes,
    })
}

/// Verifies every case of an entry.
pub fn verify_entry(entry: &CatalogueEntry, seed: u64) -> Result<Vec<CaseResult>, LieAlgError> {
    entry
        .cases
        .iter()
        .map(|c| verify_case(entry.name, c, seed))
        .collect()
}

/// Verifies the whole catalogue (or a filtered subset). Entries are
/// checked in parallel — every computation is pure — and the report is
/// assembled deterministically, sorted by entry and case.
pub fn verify_catalogue(
    filter: Option<&[String]>,
    seed: u64,
) -> Result<Vec<CaseResult>, LieAlgError> {
    let selected: Vec<CatalogueEntry> = komrakov_catalogue()
        .into_iter()
        .filter(|entry| match filter {
            None => true,
            Some(names) => names.iter().any(|n| n == entry.name),
        })
        .collect();
    let mut results: Vec<CaseResult> = Vec::new();
    let outcomes: Vec<Result<Vec<CaseResult>, LieAlgError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|entry| scope.spawn(move || verify_entry(entry, seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    for outcome in outcomes {
        results.extend(outcome?);
    }
    results.sort_by(|a, b| (a.entry.clone(), a.case.clone()).cmp(&(b.entry.clone(), b.case.clone())));
    Ok(results)
}

/// Returns the filter names that did not match any entry.
pub fn unknown_entries(filter: &[String]) -> Vec<String> {
    let names = entry_names();
    filter
        .iter()
        .filter(|n| !names.contains(&n.as_str()))
        .cloned()
        .collect()
}

/// Holonomy of every `g_sym` element lies inside `g`, and each element is
/// a semi-symmetric curvature tensor (cross-module invariant).
pub fn gsym_elements_are_semi_symmetric(entry: &CatalogueEntry) -> Result<bool, LieAlgError> {
    for case in &entry.cases {
        let g = LieSubalgebra::from_bivectors(
            case.space.clone(),
            &case.generators,
            None,
            case.constraints.clone(),
        )?;
        for t in symmetric_curvature_space(&g)? {
            let k = crate::curvature::CurvatureTensor::new(t)?;
            if !crate::curvature::is_semi_symmetric(&k).holds {
                return Ok(false);
            }
            for h in k.holonomy_image() {
                if !g.contains(&h.matrix) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `Matrix` is unused only when claims carry no matrices; kept for the
/// erratum rank report.
#[allow(dead_code)]
fn _rank_of(m: &Matrix) -> usize {
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::DEFAULT_SEED;

    #[test]
    fn catalogue_has_all_entries() {
        let names = entry_names();
        assert_eq!(names.len(), 26);
        for expected in [
            "1.1^1", "1.1^2", "1.2^1", "1.2^2", "1.3^1", "1.4^1", "1.1^5", "1.1^6", "2.1^1",
            "2.1^3", "2.1^4", "2.2^1", "2.2^3", "2.3^1", "2.4^1", "2.5^1", "3.1^1", "3.2^1",
            "3.3^1", "3.4^1", "3.5^1", "4.1^1", "4.2^1", "4.3^1", "5.1^1", "6.1^1",
        ] {
            assert!(names.contains(&expected), "missing {}", expected);
        }
    }

    #[test]
    fn one_dim_entries_verify() {
        for name in ["1.1^1", "1.3^1", "1.4^1", "1.2^1"] {
            let entry = find_entry(name).unwrap();
            for r in verify_entry(&entry, DEFAULT_SEED).unwrap() {
                assert!(r.matched, "{} case {} failed: {:?}", name, r.case, r.notes);
            }
        }
    }

    #[test]
    fn two_dim_parametric_entry_verifies() {
        let entry = find_entry("2.2^1").unwrap();
        for r in verify_entry(&entry, DEFAULT_SEED).unwrap() {
            assert!(r.matched, "case {} failed: {:?}", r.case, r.notes);
        }
    }

    #[test]
    fn adjudicated_entry_is_consistent_not_strict() {
        let entry = find_entry("6.1^1").unwrap();
        let results = verify_entry(&entry, DEFAULT_SEED).unwrap();
        let r = &results[0];
        assert!(r.matched, "internal consistency must hold: {:?}", r.notes);
        assert!(!r.strict_matched, "printed dim 19 differs from computed");
        assert_eq!(r.computed_dim_r, 20);
        assert_eq!(r.rank_nullity, Some((21, 1, 20)));
        assert_eq!(r.computed_dim_sym, 1);
        assert_eq!(r.span_match_sym, Some(true));
    }

    #[test]
    fn gsym_invariants_on_a_sample() {
        for name in ["1.3^1", "2.1^4", "3.3^1", "4.2^1"] {
            let entry = find_entry(name).unwrap();
            assert!(
                gsym_elements_are_semi_symmetric(&entry).unwrap(),
                "gsym invariant failed for {}",
                name
            );
        }
    }
}
