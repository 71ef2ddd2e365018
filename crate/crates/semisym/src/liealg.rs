//! Lie subalgebras of `so(V)`, their action on the space `P` of symmetric
//! bivector forms, and the curvature-tensor spaces attached to them:
//! `R(g) = { T in g v g : B(T) = 0 }` and
//! `g_sym = { T in R(g) : g.T = 0 }`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curvature::{
    action_on_p, bianchi_map, make_tensor, CurvatureError, PSymTensor, SpaceRef,
};
use crate::exact::{
    generic_points, in_span, stack_columns, Assignment, ExactError, Matrix, Scalar, SplitMix64,
};
use crate::space::{bivector_to_so, so_to_bivector, Bivector, MetricEndo, SpaceError};

#[derive(Debug, Error)]
pub enum LieAlgError {
    #[error("generator is not metric-skew")]
    NotSkew,
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A span of metric-skew endomorphisms with bracket-closure data.
#[derive(Debug, Clone)]
pub struct LieSubalgebra {
    space: SpaceRef,
    generators: Vec<MetricEndo>,
    name: Option<String>,
    /// Scalars that must stay nonzero for the catalogue claims.
    constraints: Vec<Scalar>,
    /// True when the input span was not bracket-closed and the closure was
    /// substituted.
    extended: bool,
}

impl LieSubalgebra {
    /// Builds the subalgebra; a non-closed span is extended to its Lie
    /// closure and flagged rather than rejected.
    pub fn new(
        space: SpaceRef,
        generators: Vec<MetricEndo>,
        name: Option<String>,
        constraints: Vec<Scalar>,
    ) -> Result<LieSubalgebra, LieAlgError> {
        for g in &generators {
            let ga = space.gram().mul(&g.matrix);
            if !ga.add(&ga.transpose()).is_zero() {
                return Err(LieAlgError::NotSkew);
            }
        }
        let closed = bracket_closed(&generators);
        let (generators, extended) = if closed {
            (generators, false)
        } else {
            (lie_closure(&generators), true)
        };
        Ok(LieSubalgebra {
            space,
            generators,
            name,
            constraints,
            extended,
        })
    }

    pub fn from_bivectors(
        space: SpaceRef,
        bivectors: &[Bivector],
        name: Option<String>,
        constraints: Vec<Scalar>,
    ) -> Result<LieSubalgebra, LieAlgError> {
        let gens = bivectors
            .iter()
            .map(|b| bivector_to_so(&space, b))
            .collect();
        LieSubalgebra::new(space, gens, name, constraints)
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn generators(&self) -> &[MetricEndo] {
        &self.generators
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn constraints(&self) -> &[Scalar] {
        &self.constraints
    }

    pub fn was_extended(&self) -> bool {
        self.extended
    }

    pub fn dim(&self) -> usize {
        let vecs: Vec<Vec<Scalar>> = self
            .generators
            .iter()
            .map(|g| g.matrix.vectorize())
            .collect();
        crate::exact::span_rank(&vecs)
    }

    /// Generator bivectors (in the ordered bivector basis).
    pub fn bivectors(&self) -> Result<Vec<Bivector>, LieAlgError> {
        self.generators
            .iter()
            .map(|g| so_to_bivector(&self.space, g).map_err(Into::into))
            .collect()
    }

    pub fn substitute(&self, point: &Assignment) -> Result<LieSubalgebra, LieAlgError> {
        let space = std::sync::Arc::new(self.space.substitute(point)?);
        let generators = self
            .generators
            .iter()
            .map(|g| {
                Ok(MetricEndo {
                    matrix: g.matrix.substitute(point)?,
                    kind: g.kind,
                })
            })
            .collect::<Result<Vec<_>, ExactError>>()?;
        Ok(LieSubalgebra {
            space,
            generators,
            name: self.name.clone(),
            constraints: Vec::new(),
            extended: self.extended,
        })
    }

    /// True when `endo` lies in the span of the generators.
    pub fn contains(&self, endo: &Matrix) -> bool {
        let span: Vec<Vec<Scalar>> = self
            .generators
            .iter()
            .map(|g| g.matrix.vectorize())
            .collect();
        in_span(&span, &endo.vectorize())
    }
}

fn bracket_closed(gens: &[MetricEndo]) -> bool {
    let span: Vec<Vec<Scalar>> = gens.iter().map(|g| g.matrix.vectorize()).collect();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let br = gens[i].matrix.commutator(&gens[j].matrix);
            if !in_span(&span, &br.vectorize()) {
                return false;
            }
        }
    }
    true
}

/// Iterated bracket augmentation to a fixed point: the Lie algebra
/// generated by the given span.
pub fn lie_closure(gens: &[MetricEndo]) -> Vec<MetricEndo> {
    let mut basis: Vec<MetricEndo> = Vec::new();
    let mut span: Vec<Vec<Scalar>> = Vec::new();
    let push = |e: MetricEndo, basis: &mut Vec<MetricEndo>, span: &mut Vec<Vec<Scalar>>| {
        let v = e.matrix.vectorize();
        if !in_span(span, &v) {
            span.push(v);
            basis.push(e);
        }
    };
    for g in gens {
        push(g.clone(), &mut basis, &mut span);
    }
    loop {
        let mut added = false;
        let current = basis.clone();
        for i in 0..current.len() {
            for j in (i + 1)..current.len() {
                let br = current[i].matrix.commutator(&current[j].matrix);
                if br.is_zero() {
                    continue;
                }
                let v = br.vectorize();
                if !in_span(&span, &v) {
                    span.push(v);
                    basis.push(MetricEndo {
                        matrix: br,
                        kind: crate::space::EndoKind::Skew,
                    });
                    added = true;
                }
            }
        }
        if !added {
            return basis;
        }
    }
}

/// Derivation action of a skew endomorphism on `P`, with the skewness
/// precondition enforced.
pub fn action_on_p_checked(
    space: &SpaceRef,
    a: &MetricEndo,
    t: &PSymTensor,
) -> Result<PSymTensor, LieAlgError> {
    let ga = space.gram().mul(&a.matrix);
    if !ga.add(&ga.transpose()).is_zero() {
        return Err(LieAlgError::NotSkew);
    }
    Ok(action_on_p(space, &a.matrix, t))
}

/// Basis of the symmetric square `g v g` as elements of `P`, ordered
/// lexicographically in the generator indices.
pub fn symmetric_square_basis(g: &LieSubalgebra) -> Result<Vec<PSymTensor>, LieAlgError> {
    let bivs = g.bivectors()?;
    let mut out = Vec::new();
    for i in 0..bivs.len() {
        for j in i..bivs.len() {
            out.push(make_tensor(
                g.space(),
                &[(Scalar::one(), bivs[i].clone(), bivs[j].clone())],
            )?);
        }
    }
    Ok(out)
}

/// Basis of `R(g)`: the kernel of the Bianchi map restricted to `g v g`.
pub fn curvature_space(g: &LieSubalgebra) -> Result<Vec<PSymTensor>, LieAlgError> {
    let basis = symmetric_square_basis(g)?;
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let images: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|t| bianchi_map(t).vectorize())
        .collect();
    let system = stack_columns(&images);
    let kernel = system.kernel_basis();
    Ok(kernel
        .into_iter()
        .map(|coeffs| combine(&basis, &coeffs))
        .collect())
}

/// Basis of `g_sym`: elements of `R(g)` annihilated by every generator.
pub fn symmetric_curvature_space(g: &LieSubalgebra) -> Result<Vec<PSymTensor>, LieAlgError> {
    let rg = curvature_space(g)?;
    if rg.is_empty() {
        return Ok(Vec::new());
    }
    // Stack the action of every generator on the R(g) basis.
    let mut columns: Vec<Vec<Scalar>> = vec![Vec::new(); rg.len()];
    for gen in g.generators() {
        for (col, t) in rg.iter().enumerate() {
            let image = action_on_p(g.space(), &gen.matrix, t);
            columns[col].extend(image.vectorize());
        }
    }
    let system = stack_columns(&columns);
    let kernel = system.kernel_basis();
    Ok(kernel
        .into_iter()
        .map(|coeffs| combine(&rg, &coeffs))
        .collect())
}

fn combine(basis: &[PSymTensor], coeffs: &[Scalar]) -> PSymTensor {
    let mut acc = PSymTensor::zero(basis[0].space().clone());
    for (t, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&t.scale(c));
    }
    acc
}

/// Dimension pair of `(R(g), g_sym)` recomputed at a parameter point.
pub fn dims_at_point(
    g: &LieSubalgebra,
    point: &Assignment,
) -> Result<(usize, usize), LieAlgError> {
    let sub = g.substitute(point)?;
    Ok((
        curvature_space(&sub)?.len(),
        symmetric_curvature_space(&sub)?.len(),
    ))
}

/// Certifies symbolic dimensions by resampling at seeded generic points
/// off the excluded locus; returns the sampled dimension pairs.
pub fn certify_dims(
    g: &LieSubalgebra,
    seed: u64,
) -> Result<Vec<(Assignment, (usize, usize))>, LieAlgError> {
    let mut params: Vec<crate::exact::Sym> = g.space().params().to_vec();
    for gen in g.generators() {
        for e in gen.matrix.entries() {
            for v in e.vars() {
                if let Err(pos) = params.binary_search(&v) {
                    params.insert(pos, v);
                }
            }
        }
    }
    if params.is_empty() {
        return Ok(Vec::new());
    }
    let points = generic_points(seed, &params, g.constraints())?;
    let mut out = Vec::new();
    for p in points {
        let dims = dims_at_point(g, &p)?;
        out.push((p, dims));
    }
    Ok(out)
}

/// Recomputes `R(g)` after a seeded random invertible change of the
/// generator basis; the span must not move (basis-choice independence).
pub fn curvature_space_is_basis_independent(
    g: &LieSubalgebra,
    seed: u64,
) -> Result<bool, LieAlgError> {
    let m = g.generators().len();
    if m == 0 {
        return Ok(true);
    }
    let mut rng = SplitMix64::new(seed);
    // Draw invertible integer matrices (retry until nonsingular).
    let change = loop {
        let entries: Vec<Scalar> = (0..m * m)
            .map(|_| Scalar::from_int((rng.below(7) as i64) - 3))
            .collect();
        let cand = Matrix::from_fn(m, m, |i, j| entries[i * m + j].clone());
        if !cand.det().is_zero() {
            break cand;
        }
    };
    let new_gens: Vec<MetricEndo> = (0..m)
        .map(|i| {
            let mut acc = Matrix::zero(g.space().dim(), g.space().dim());
            for (j, gen) in g.generators().iter().enumerate() {
                acc = acc.add(&gen.matrix.scale(&change[(i, j)]));
            }
            MetricEndo {
                matrix: acc,
                kind: crate::space::EndoKind::Skew,
            }
        })
        .collect();
    let h = LieSubalgebra::new(
        g.space().clone(),
        new_gens,
        None,
        g.constraints().to_vec(),
    )?;
    let span_a: Vec<Vec<Scalar>> = curvature_space(g)?.iter().map(|t| t.vectorize()).collect();
    let span_b: Vec<Vec<Scalar>> = curvature_space(&h)?.iter().map(|t| t.vectorize()).collect();
    Ok(crate::exact::same_span(&span_a, &span_b))
}

// ---------------------------------------------------------------------------
// Subalgebra files
// ---------------------------------------------------------------------------

/// One generator: either an explicit endomorphism matrix or a sum of
/// weighted wedge terms `coeff * A_{a,b}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Matrix { matrix: Vec<Vec<String>> },
    Wedges { terms: Vec<WedgeTerm> },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct WedgeTerm {
    #[serde(default = "one_string")]
    pub coeff: String,
    pub a: String,
    pub b: String,
}

fn one_string() -> String {
    "1".to_string()
}

/// JSON schema for subalgebra files:
/// `{ "space": ..., "generators": [...], "name": str,
///    "constraints": [scalar-strings that must be nonzero] }`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SubalgebraFile {
    pub space: crate::curvature::SpaceSpec,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub constraints: Vec<String>,
}

impl SubalgebraFile {
    pub fn to_subalgebra(
        &self,
        base: Option<&std::path::Path>,
    ) -> Result<LieSubalgebra, LieAlgError> {
        let tf = crate::curvature::TensorFile {
            space: self.space.clone(),
            terms: Vec::new(),
            assert_semi_symmetric: None,
        };
        let space: SpaceRef = std::sync::Arc::new(tf.resolve_space(base)?);
        let mut gens = Vec::new();
        for spec in &self.generators {
            match spec {
                GeneratorSpec::Matrix { matrix } => {
                    let n = space.dim();
                    if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
                        return Err(LieAlgError::Space(SpaceError::DimensionMismatch));
                    }
                    let mut rows = Vec::with_capacity(n);
                    for row in matrix {
                        let mut out = Vec::with_capacity(n);
                        for s in row {
                            out.push(Scalar::parse(s).map_err(LieAlgError::Exact)?);
                        }
                        rows.push(out);
                    }
                    gens.push(MetricEndo {
                        matrix: Matrix::from_rows(rows),
                        kind: crate::space::EndoKind::General,
                    });
                }
                GeneratorSpec::Wedges { terms } => {
                    let mut acc = Bivector::zero(&space);
                    for t in terms {
                        let c = Scalar::parse(&t.coeff).map_err(LieAlgError::Exact)?;
                        let i = space.basis_index(&t.a)?;
                        let j = space.basis_index(&t.b)?;
                        acc = acc.add(&Bivector::basis(&space, i, j).scale(&c));
                    }
                    gens.push(bivector_to_so(&space, &acc));
                }
            }
        }
        let mut constraints = Vec::new();
        for c in &self.constraints {
            constraints.push(Scalar::parse(c).map_err(LieAlgError::Exact)?);
        }
        LieSubalgebra::new(space, gens, self.name.clone(), constraints)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::named_wedge;
    use crate::exact::DEFAULT_SEED;
    use crate::tables;

    fn line(space: &SpaceRef, terms: &[(i64, &str, &str)]) -> Bivector {
        let mut acc = Bivector::zero(space);
        for &(c, a, b) in terms {
            acc = acc.add(&named_wedge(space, a, b).unwrap().scale(&Scalar::from_int(c)));
        }
        acc
    }

    #[test]
    fn action_kills_invariant_tensor() {
        // The constant-curvature tensor is annihilated by all of so(2,2).
        let a = Scalar::param("a");
        let k6 = tables::k6_constant_curvature(&a);
        let sp = k6.space().clone();
        for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            let gen = bivector_to_so(&sp, &Bivector::basis(&sp, i, j));
            let moved = action_on_p_checked(&sp, &gen, k6.tensor()).unwrap();
            assert!(moved.is_zero(), "generator ({},{})", i, j);
        }
        // Any action on the zero tensor is zero.
        let zero = PSymTensor::zero(sp.clone());
        let gen = bivector_to_so(&sp, &Bivector::basis(&sp, 0, 1));
        assert!(action_on_p_checked(&sp, &gen, &zero).unwrap().is_zero());
    }

    #[test]
    fn action_matches_termwise_formula() {
        // Oracle: evaluate [A, T(e)] - T(Au ^ v) - T(u ^ Av) on every basis
        // bivector and compare with the implementation.
        let sp = tables::space_null_xz_yt();
        let xy = named_wedge(&sp, "x", "y").unwrap();
        let t = make_tensor(&sp, &[(Scalar::one(), xy.clone(), xy)]).unwrap();
        let a = bivector_to_so(&sp, &named_wedge(&sp, "x", "z").unwrap());
        let lhs = action_on_p_checked(&sp, &a, &t).unwrap();
        let t_end = t.endo();
        let n = sp.bivector_dim();
        let lhs_endo = lhs.endo();
        for idx in 0..n {
            let (i, j) = sp.pairs()[idx];
            let e = Bivector::basis(&sp, i, j);
            // T(e) as a skew endomorphism
            let te = bivector_to_so(&sp, &Bivector::new(t_end.mul_vec(&e.coords)));
            let bracket = a.matrix.commutator(&te.matrix);
            let au = crate::space::Vector::new(a.matrix.column(i));
            let av = crate::space::Vector::new(a.matrix.column(j));
            let w1 = Bivector::wedge(&sp, &au, &sp.basis_vector(j));
            let w2 = Bivector::wedge(&sp, &sp.basis_vector(i), &av);
            let tw = t_end.mul_vec(&w1.add(&w2).coords);
            let t_shift = bivector_to_so(&sp, &Bivector::new(tw));
            let expected = bracket.sub(&t_shift.matrix);
            let got = bivector_to_so(&sp, &Bivector::new(lhs_endo.mul_vec(&e.coords)));
            assert_eq!(got.matrix, expected, "basis bivector {}", idx);
        }
    }

    #[test]
    fn one_dimensional_null_rotation_spaces() {
        // g = R A_{x,y} with <x,t> = <y,z> = 1: R(g) = g_sym = R (xy v xy).
        let sp = tables::space_null_xt_yz();
        let g = LieSubalgebra::from_bivectors(
            sp.clone(),
            &[line(&sp, &[(1, "x", "y")])],
            Some("1.3^1".to_string()),
            vec![],
        )
        .unwrap();
        assert!(!g.was_extended());
        let rg = curvature_space(&g).unwrap();
        assert_eq!(rg.len(), 1);
        let gsym = symmetric_curvature_space(&g).unwrap();
        assert_eq!(gsym.len(), 1);
        let xy = named_wedge(&sp, "x", "y").unwrap();
        let expected = make_tensor(&sp, &[(Scalar::one(), xy.clone(), xy)]).unwrap();
        assert!(in_span(
            &[rg[0].vectorize()],
            &expected.vectorize()
        ));
    }

    #[test]
    fn so22_symmetric_space_is_constant_curvature_line() {
        let sp = tables::space_null_xz_yt();
        let all: Vec<Bivector> = (0..4)
            .flat_map(|i| ((i + 1)..4).map(move |j| (i, j)))
            .map(|(i, j)| Bivector::basis(&sp, i, j))
            .collect();
        let g = LieSubalgebra::from_bivectors(sp.clone(), &all, Some("6.1^1".into()), vec![])
            .unwrap();
        assert_eq!(g.dim(), 6);
        let rg = curvature_space(&g).unwrap();
        // Rank-nullity: dim ker B + rank B = dim(g v g) = 21.
        assert_eq!(rg.len(), 20);
        let gsym = symmetric_curvature_space(&g).unwrap();
        assert_eq!(gsym.len(), 1);
        let k6 = tables::k6_constant_curvature(&Scalar::one());
        assert!(in_span(&[gsym[0].vectorize()], &k6.tensor().vectorize()));
    }

    #[test]
    fn closure_extends_non_closed_input() {
        // span{A_{x,y}, A_{y,z}} in a definite-ish metric does not close.
        let sp = tables::space_diag_pmpm();
        let g = LieSubalgebra::from_bivectors(
            sp.clone(),
            &[line(&sp, &[(1, "x", "y")]), line(&sp, &[(1, "y", "z")])],
            None,
            vec![],
        )
        .unwrap();
        assert!(g.was_extended());
        assert!(g.dim() > 2);
    }

    #[test]
    fn basis_change_keeps_curvature_space() {
        let sp = tables::space_null_xz_yt();
        let g = LieSubalgebra::from_bivectors(
            sp.clone(),
            &[line(&sp, &[(1, "x", "z")]), line(&sp, &[(1, "y", "t")])],
            Some("2.1^1".into()),
            vec![],
        )
        .unwrap();
        assert!(curvature_space_is_basis_independent(&g, DEFAULT_SEED).unwrap());
    }

    #[test]
    fn subalgebra_file_round_trip() {
        let json = r#"{
            "space": { "dim": 4, "params": ["a"],
                       "gram": [["0","0","1","0"],["0","0","0","1"],
                                ["1","0","0","0"],["0","1","0","0"]],
                       "basis_names": ["x","y","z","t"] },
            "generators": [
                { "terms": [ { "a": "x", "b": "z" },
                             { "coeff": "a", "a": "y", "b": "t" } ] }
            ],
            "name": "1.1^1",
            "constraints": ["a"]
        }"#;
        let file: SubalgebraFile = serde_json::from_str(json).unwrap();
        let g = file.to_subalgebra(None).unwrap();
        assert_eq!(g.name(), Some("1.1^1"));
        assert_eq!(g.dim(), 1);
        assert_eq!(g.constraints().len(), 1);
        let rg = curvature_space(&g).unwrap();
        assert!(rg.is_empty(), "generic a: no curvature tensors");
    }
}
