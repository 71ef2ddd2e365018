//! Curvature tensors as symmetric bilinear forms on the bivector space:
//! Bianchi operator, Ricci data, semi-symmetry, holonomy image, Ricci-type
//! classification, orthogonal decomposition and the self-dual spectrum.
//!
//! A tensor is stored as the symmetric matrix of its bilinear form on the
//! ordered bivector basis; the endomorphism view is recovered on demand by
//! raising with the inverse bivector Gram matrix. The symmetric product of
//! bivectors keeps the same 1/2 normalization as `vee_endo`, so the
//! catalogue coefficients match the tables verbatim.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{
    generic_points, in_span, span_rank, Assignment, ExactError, Matrix, Scalar, UniPoly,
    DEFAULT_SEED,
};
use crate::space::{
    bivector_to_so, lambda2_action, so_to_bivector, wedge_endo, Bivector, MetricEndo,
    PseudoSpace, SpaceError, Vector,
};

pub type SpaceRef = Arc<PseudoSpace>;

#[derive(Debug, Error)]
pub enum CurvatureError {
    #[error("bivectors from different spaces")]
    MixedSpaces,
    #[error("form matrix is not symmetric")]
    NotSymmetric,
    #[error("tensor fails the Bianchi identity")]
    NotBianchiFlat,
    #[error("decomposition checks failed: {0}")]
    ChecksFailed(String),
    #[error("unresolved spectrum: {0}")]
    UnresolvedSpectrum(String),
    #[error("ambiguous classification across sampled points: {0}")]
    Ambiguous(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// An element of `P = (Lambda^2 V) v (Lambda^2 V)`: a symmetric bilinear
/// form on bivectors.
#[derive(Debug, Clone)]
pub struct PSymTensor {
    space: SpaceRef,
    form: Matrix,
}

impl PSymTensor {
    pub fn new(space: SpaceRef, form: Matrix) -> Result<PSymTensor, CurvatureError> {
        if form.rows() != space.bivector_dim() || !form.is_symmetric() {
            return Err(CurvatureError::NotSymmetric);
        }
        Ok(PSymTensor { space, form })
    }

    pub fn zero(space: SpaceRef) -> PSymTensor {
        let n = space.bivector_dim();
        PSymTensor {
            space,
            form: Matrix::zero(n, n),
        }
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    /// Endomorphism view: the bivector-metric raise of the form.
    pub fn endo(&self) -> Matrix {
        self.space.bivector_gram_inv().mul(&self.form)
    }

    /// Coefficients in the basis `{e_I v e_J}` (full symmetric matrix).
    pub fn p_coords(&self) -> Matrix {
        let inv = self.space.bivector_gram_inv();
        inv.mul(&self.form).mul(inv)
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn add(&self, other: &PSymTensor) -> PSymTensor {
        PSymTensor {
            space: self.space.clone(),
            form: self.form.add(&other.form),
        }
    }

    pub fn sub(&self, other: &PSymTensor) -> PSymTensor {
        PSymTensor {
            space: self.space.clone(),
            form: self.form.sub(&other.form),
        }
    }

    pub fn scale(&self, c: &Scalar) -> PSymTensor {
        PSymTensor {
            space: self.space.clone(),
            form: self.form.scale(c),
        }
    }

    pub fn substitute(&self, assignment: &Assignment) -> Result<PSymTensor, CurvatureError> {
        let space = Arc::new(self.space.substitute(assignment)?);
        Ok(PSymTensor {
            space,
            form: self.form.substitute(assignment)?,
        })
    }

    /// Row-major flattening of the form, used for span computations.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.form.vectorize()
    }
}

/// `sum c. (alpha v beta)` with the 1/2 convention: the induced
/// endomorphism acts as `P -> sum c/2 (<beta,P> alpha + <alpha,P> beta)`.
pub fn make_tensor(
    space: &SpaceRef,
    terms: &[(Scalar, Bivector, Bivector)],
) -> Result<PSymTensor, CurvatureError> {
    let n = space.bivector_dim();
    let mut form = Matrix::zero(n, n);
    let half = Scalar::from_fraction(1, 2);
    for (c, a, b) in terms {
        if a.coords.len() != n || b.coords.len() != n {
            return Err(CurvatureError::MixedSpaces);
        }
        let ga = space.bivector_gram().mul_vec(&a.coords);
        let gb = space.bivector_gram().mul_vec(&b.coords);
        let ch = c.mul(&half);
        for i in 0..n {
            for j in 0..n {
                let v = ga[i].mul(&gb[j]).add(&gb[i].mul(&ga[j])).mul(&ch);
                form[(i, j)] = form[(i, j)].add(&v);
            }
        }
    }
    PSymTensor::new(space.clone(), form)
}

/// The linear Bianchi operator on `P`:
/// `B((a^b) v (c^d)) = (a^b)v(c^d) + (b^c)v(a^d) + (c^a)v(b^d)`.
///
/// Its kernel is the space of algebraic curvature tensors and `B o B = 3B`.
pub fn bianchi_map(t: &PSymTensor) -> PSymTensor {
    let space = &t.space;
    let n = space.bivector_dim();
    let coeffs = t.p_coords();
    // Accumulate the image in P coordinates, then lower both indices once.
    let mut out = Matrix::zero(n, n);
    let half = Scalar::from_fraction(1, 2);
    let add_vee = |c: &Scalar, p: (usize, i8), q: (usize, i8), out: &mut Matrix| {
        let sign = (p.1 * q.1) as i64;
        let v = c.scale_int(sign).mul(&half);
        out[(p.0, q.0)] = out[(p.0, q.0)].add(&v);
        out[(q.0, p.0)] = out[(q.0, p.0)].add(&v);
    };
    for bi in 0..n {
        for bj in 0..n {
            let c = coeffs[(bi, bj)].clone();
            if c.is_zero() {
                continue;
            }
            let (i, j) = space.pairs()[bi];
            let (k, l) = space.pairs()[bj];
            // (i^j) v (k^l)
            add_vee(&c, (bi, 1), (bj, 1), &mut out);
            // (j^k) v (i^l)
            if let (Some(p), Some(q)) = (space.pair_index(j, k), space.pair_index(i, l)) {
                add_vee(&c, p, q, &mut out);
            }
            // (k^i) v (j^l)
            if let (Some(p), Some(q)) = (space.pair_index(k, i), space.pair_index(j, l)) {
                add_vee(&c, p, q, &mut out);
            }
        }
    }
    let g2 = space.bivector_gram();
    PSymTensor {
        space: space.clone(),
        form: g2.mul(&out).mul(g2),
    }
}

/// A Bianchi-flat element of `P`, i.e. an algebraic curvature tensor.
#[derive(Debug, Clone)]
pub struct CurvatureTensor {
    tensor: PSymTensor,
}

impl CurvatureTensor {
    /// Verifies the Bianchi certificate exactly.
    pub fn new(tensor: PSymTensor) -> Result<CurvatureTensor, CurvatureError> {
        if !bianchi_map(&tensor).is_zero() {
            return Err(CurvatureError::NotBianchiFlat);
        }
        Ok(CurvatureTensor { tensor })
    }

    /// Wraps a `P` element without the Bianchi certificate. The trace-form
    /// Ricci and the action maps are defined on all of `P`; test oracles
    /// need them on raw decomposables.
    pub fn new_unchecked(tensor: PSymTensor) -> CurvatureTensor {
        CurvatureTensor { tensor }
    }

    pub fn zero(space: SpaceRef) -> CurvatureTensor {
        CurvatureTensor {
            tensor: PSymTensor::zero(space),
        }
    }

    pub fn tensor(&self) -> &PSymTensor {
        &self.tensor
    }

    pub fn space(&self) -> &SpaceRef {
        &self.tensor.space
    }

    pub fn form(&self) -> &Matrix {
        &self.tensor.form
    }

    pub fn endo(&self) -> Matrix {
        self.tensor.endo()
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    pub fn substitute(&self, assignment: &Assignment) -> Result<CurvatureTensor, CurvatureError> {
        CurvatureTensor::new(self.tensor.substitute(assignment)?)
    }

    /// `K(u,v)`: the metric-skew endomorphism obtained by applying the
    /// curvature endomorphism to `u ^ v`.
    pub fn action(&self, u: &Vector, v: &Vector) -> MetricEndo {
        let w = Bivector::wedge(&self.tensor.space, u, v);
        self.action_on_bivector(&w)
    }

    pub fn action_on_bivector(&self, w: &Bivector) -> MetricEndo {
        let image = Bivector::new(self.endo().mul_vec(&w.coords));
        bivector_to_so(&self.tensor.space, &image)
    }

    /// Basis of the holonomy image `h(K) = span{K(u,v)}`.
    pub fn holonomy_image(&self) -> Vec<MetricEndo> {
        let endo = self.endo();
        let n = self.tensor.space.bivector_dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| endo.column(j)).collect();
        let m = Matrix::from_rows(cols);
        let (rref, pivots) = m.rref();
        (0..pivots.len())
            .map(|i| {
                bivector_to_so(
                    &self.tensor.space,
                    &Bivector::new(rref.row(i).to_vec()),
                )
            })
            .collect()
    }

    pub fn holonomy_dim(&self) -> usize {
        self.endo().rank()
    }
}

/// First Bianchi identity `K(u,v)w + K(v,w)u + K(w,u)v = 0` checked on all
/// basis triples (complete by multilinearity).
pub fn first_bianchi_holds(k: &CurvatureTensor) -> bool {
    let space = k.space();
    let n = space.dim();
    let endos: Vec<Vec<Matrix>> = pair_endos(k);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut acc = column(&endos[a][b], c, n);
                add_col(&mut acc, &column(&endos[b][c], a, n));
                add_col(&mut acc, &column(&endos[c][a], b, n));
                if acc.iter().any(|x| !x.is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

fn column(m: &Matrix, j: usize, _n: usize) -> Vec<Scalar> {
    m.column(j)
}

fn add_col(acc: &mut [Scalar], other: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a = a.add(b);
    }
}

/// `K(b_a, b_b)` for all ordered basis pairs.
fn pair_endos(k: &CurvatureTensor) -> Vec<Vec<Matrix>> {
    let space = k.space();
    let n = space.dim();
    let endo = k.endo();
    let zero = Matrix::zero(n, n);
    let mut table = vec![vec![zero; n]; n];
    for (idx, &(i, j)) in space.pairs().iter().enumerate() {
        let image = Bivector::new(endo.column(idx));
        let a = bivector_to_so(space, &image);
        table[i][j] = a.matrix.clone();
        table[j][i] = a.matrix.neg();
        let _ = idx;
    }
    table
}

/// Result of the semi-symmetry test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiSymmetry {
    pub holds: bool,
    /// Lexicographically first violating basis quadruple (u,v,a,b).
    pub witness: Option<(usize, usize, usize, usize)>,
}

/// Optimized semi-symmetry check: for each basis bivector `e_I`, the
/// derivation action of `K(e_I)` must annihilate `K` as an element of `P`.
/// On failure the full quadruple scan supplies the first witness.
pub fn is_semi_symmetric(k: &CurvatureTensor) -> SemiSymmetry {
    let space = k.space();
    let endo = k.endo();
    for idx in 0..space.bivector_dim() {
        let image = Bivector::new(endo.column(idx));
        let a = bivector_to_so(space, &image);
        if !action_on_p(space, &a.matrix, k.tensor()).is_zero() {
            let witness = semi_symmetry_witness_scan(k).witness;
            return SemiSymmetry {
                holds: false,
                witness,
            };
        }
    }
    SemiSymmetry {
        holds: true,
        witness: None,
    }
}

/// Brute-force oracle: checks the derivation identity on all `n^4` basis
/// quadruples and reports the lexicographically first violation.
pub fn semi_symmetry_witness_scan(k: &CurvatureTensor) -> SemiSymmetry {
    let space = k.space();
    let n = space.dim();
    let endos = pair_endos(k);
    let endo = k.endo();
    for u in 0..n {
        for v in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let kuv = &endos[u][v];
                    let kab = &endos[a][b];
                    let lhs = kuv.mul(kab).sub(&kab.mul(kuv));
                    // K(K(u,v)a, b) + K(a, K(u,v)b)
                    let ka = Vector::new(kuv.column(a));
                    let kb = Vector::new(kuv.column(b));
                    let ea = space.basis_vector(a);
                    let eb = space.basis_vector(b);
                    let w1 = Bivector::wedge(space, &ka, &eb);
                    let w2 = Bivector::wedge(space, &ea, &kb);
                    let rhs1 = bivector_to_so(space, &Bivector::new(endo.mul_vec(&w1.coords)));
                    let rhs2 = bivector_to_so(space, &Bivector::new(endo.mul_vec(&w2.coords)));
                    if !lhs.sub(&rhs1.matrix.add(&rhs2.matrix)).is_zero() {
                        return SemiSymmetry {
                            holds: false,
                            witness: Some((u, v, a, b)),
                        };
                    }
                }
            }
        }
    }
    SemiSymmetry {
        holds: true,
        witness: None,
    }
}

/// Derivation action of a skew endomorphism on `P`:
/// `A.T(u^v) = [A, T(u^v)] - T(Au ^ v) - T(u ^ Av)`, which on the
/// endomorphism view is the commutator with the induced bivector action.
pub fn action_on_p(space: &SpaceRef, a: &Matrix, t: &PSymTensor) -> PSymTensor {
    let l2 = lambda2_action(space, a);
    let t_end = t.endo();
    let commutator = l2.mul(&t_end).sub(&t_end.mul(&l2));
    PSymTensor {
        space: space.clone(),
        form: space.bivector_gram().mul(&commutator),
    }
}

// ---------------------------------------------------------------------------
// Ricci data and classification
// ---------------------------------------------------------------------------

/// Ricci type tags, mutually exclusive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RicciType {
    /// K = 0.
    Flat,
    /// ric = 0, K != 0.
    RicciFlat,
    /// Ric = lambda Id with lambda != 0 (stored as a scalar string).
    Einstein(String),
    /// ric != 0 and Ric^2 = 0.
    Isotropic,
    /// Minimal polynomial is a single irreducible quadratic with negative
    /// discriminant: eigenvalues `real_part +- i sqrt(imag_squared)`.
    ComplexRicci {
        real_part: String,
        imag_squared: String,
    },
    /// Only real eigenvalues, more than one spectral block.
    RealMixed,
    /// A complex pair together with further real spectrum.
    ComplexMixed,
}

impl fmt::Display for RicciType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RicciType::Flat => write!(f, "Flat"),
            RicciType::RicciFlat => write!(f, "RicciFlat"),
            RicciType::Einstein(l) => write!(f, "Einstein({})", l),
            RicciType::Isotropic => write!(f, "Isotropic"),
            RicciType::ComplexRicci {
                real_part,
                imag_squared,
            } => write!(f, "ComplexRicci({} +- i*sqrt({}))", real_part, imag_squared),
            RicciType::RealMixed => write!(f, "RealMixed"),
            RicciType::ComplexMixed => write!(f, "ComplexMixed"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RicciData {
    /// Symmetric bilinear form `ric(u,v) = tr(a -> K(u,a)v)`.
    pub ric: Matrix,
    /// Metric raise `Ric = gram^{-1} ric`.
    pub ric_op: Matrix,
    pub char_poly: UniPoly,
    pub min_poly: UniPoly,
    pub scalar_curv: Scalar,
    pub type_tag: RicciType,
}

/// Genericity options for parametric classification: excluded loci and the
/// sampling seed.
#[derive(Debug, Clone)]
pub struct GenericityOpts {
    pub constraints: Vec<Scalar>,
    pub seed: u64,
}

impl Default for GenericityOpts {
    fn default() -> Self {
        GenericityOpts {
            constraints: Vec::new(),
            seed: DEFAULT_SEED,
        }
    }
}

/// Ricci form by the trace definition.
pub fn ricci_form(k: &CurvatureTensor) -> Matrix {
    let space = k.space();
    let n = space.dim();
    let endos = pair_endos(k);
    Matrix::from_fn(n, n, |i, j| {
        // ric(b_i, b_j) = sum_k [K(b_i, b_k) b_j]_k
        let mut acc = Scalar::zero();
        for kk in 0..n {
            acc = acc.add(&endos[i][kk][(kk, j)]);
        }
        acc
    })
}

/// Closed form of the Ricci form for a decomposable `(u^v) v (w^t)`
/// (independent oracle for the trace definition).
pub fn ricci_closed_form_decomposable(
    space: &PseudoSpace,
    u: &Vector,
    v: &Vector,
    w: &Vector,
    t: &Vector,
) -> Matrix {
    use crate::space::vee_form;
    let iuw = space.inner(u, w);
    let ivt = space.inner(v, t);
    let ivw = space.inner(v, w);
    let iut = space.inner(u, t);
    vee_form(space, t, v)
        .scale(&iuw)
        .add(&vee_form(space, u, w).scale(&ivt))
        .sub(&vee_form(space, t, u).scale(&ivw))
        .sub(&vee_form(space, v, w).scale(&iut))
}

pub fn ricci(k: &CurvatureTensor) -> Result<RicciData, CurvatureError> {
    ricci_with(k, &GenericityOpts::default())
}

pub fn ricci_with(
    k: &CurvatureTensor,
    opts: &GenericityOpts,
) -> Result<RicciData, CurvatureError> {
    let space = k.space();
    let ric = ricci_form(k);
    let ric_op = space.gram_inv().mul(&ric);
    let char_poly = ric_op.char_poly();
    let min_poly = ric_op.min_poly();
    let scalar_curv = ric_op.trace();
    let type_tag = classify(k, &ric, &ric_op, &min_poly, opts)?;
    Ok(RicciData {
        ric,
        ric_op,
        char_poly,
        min_poly,
        scalar_curv,
        type_tag,
    })
}

pub fn classify_ricci(
    k: &CurvatureTensor,
    opts: &GenericityOpts,
) -> Result<RicciType, CurvatureError> {
    let data = ricci_with(k, opts)?;
    Ok(data.type_tag)
}

fn classify(
    k: &CurvatureTensor,
    ric: &Matrix,
    ric_op: &Matrix,
    min: &UniPoly,
    opts: &GenericityOpts,
) -> Result<RicciType, CurvatureError> {
    if k.is_zero() {
        return Ok(RicciType::Flat);
    }
    if ric.is_zero() {
        return Ok(RicciType::RicciFlat);
    }
    if min.degree() == 1 {
        let lambda = min.coeff(0).negate();
        return Ok(RicciType::Einstein(format!("{}", lambda)));
    }
    if min.degree() == 2 && min.coeff(0).is_zero() && min.coeff(1).is_zero() {
        return Ok(RicciType::Isotropic);
    }
    if min.degree() == 2 {
        let p = min.coeff(1);
        let q = min.coeff(0);
        let disc = p.mul(&p).sub(&q.scale_int(4));
        return classify_quadratic(&p, &q, &disc, min, ric_op, opts, /*alone=*/ true);
    }
    // Degree >= 3: factor when rational, otherwise certify the tag at
    // sampled generic points.
    if min.is_rational() {
        return classify_rational_min(min);
    }
    let mut params = collect_params(min);
    for e in ric_op.entries() {
        for v in e.vars() {
            if let Err(pos) = params.binary_search(&v) {
                params.insert(pos, v);
            }
        }
    }
    let points = generic_points(opts.seed, &params, &opts.constraints)?;
    let mut tags: Vec<&'static str> = Vec::new();
    for point in &points {
        let op = ric_op.substitute(point)?;
        let m = op.min_poly();
        let tag = classify_rational_min(&m)?;
        tags.push(match tag {
            RicciType::RealMixed => "real",
            RicciType::ComplexMixed => "complex",
            RicciType::Einstein(_) => "einstein",
            RicciType::Isotropic => "isotropic",
            _ => "other",
        });
    }
    if tags.windows(2).all(|w| w[0] == w[1]) {
        match tags[0] {
            "real" => Ok(RicciType::RealMixed),
            "complex" => Ok(RicciType::ComplexMixed),
            other => Err(CurvatureError::Ambiguous(format!(
                "sampled tag {} degenerates relative to the symbolic minimal polynomial",
                other
            ))),
        }
    } else {
        Err(CurvatureError::Ambiguous(format!(
            "sampled classifications disagree: {:?}",
            tags
        )))
    }
}

fn classify_quadratic(
    p: &Scalar,
    _q: &Scalar,
    disc: &Scalar,
    min: &UniPoly,
    ric_op: &Matrix,
    opts: &GenericityOpts,
    alone: bool,
) -> Result<RicciType, CurvatureError> {
    debug_assert!(alone);
    let _ = min;
    if disc.is_zero() {
        // (X - lambda)^2 with lambda != 0: nilpotent part on a nonzero
        // eigenvalue; only real spectrum.
        return Ok(RicciType::RealMixed);
    }
    if let Some(s) = disc.sqrt() {
        // Splits over the scalar field: two distinct eigenvalues in F.
        let _ = s;
        return Ok(RicciType::RealMixed);
    }
    if let Some(sign) = disc.rational_sign() {
        return Ok(if sign < 0 {
            complex_tag(p, disc)
        } else {
            RicciType::RealMixed
        });
    }
    // Parametric discriminant: certify the sign at sampled points.
    let mut params = collect_params_scalar(disc);
    for e in ric_op.entries() {
        for v in e.vars() {
            if let Err(pos) = params.binary_search(&v) {
                params.insert(pos, v);
            }
        }
    }
    let points = generic_points(opts.seed, &params, &opts.constraints)?;
    let mut signs = Vec::new();
    for point in &points {
        let d = disc.substitute(point)?;
        let op = ric_op.substitute(point)?;
        if op.min_poly().degree() != 2 {
            return Err(CurvatureError::Ambiguous(
                "minimal polynomial degenerates at a sampled point".to_string(),
            ));
        }
        signs.push(d.rational_sign().unwrap_or(0));
    }
    if signs.iter().all(|&s| s < 0) {
        Ok(complex_tag(p, disc))
    } else if signs.iter().all(|&s| s > 0) {
        Ok(RicciType::RealMixed)
    } else {
        Err(CurvatureError::Ambiguous(format!(
            "discriminant signs at sampled points: {:?}",
            signs
        )))
    }
}

fn complex_tag(p: &Scalar, disc: &Scalar) -> RicciType {
    // X^2 + pX + q with disc < 0: eigenvalues -p/2 +- i sqrt(-disc)/2.
    let real_part = p.negate().mul(&Scalar::from_fraction(1, 2));
    let imag_squared = disc.negate().mul(&Scalar::from_fraction(1, 4));
    RicciType::ComplexRicci {
        real_part: format!("{}", real_part),
        imag_squared: format!("{}", imag_squared),
    }
}

fn classify_rational_min(min: &UniPoly) -> Result<RicciType, CurvatureError> {
    let factors = min.factor_over_rationals()?;
    if factors.iter().any(|f| !f.resolved) {
        return Err(CurvatureError::UnresolvedSpectrum(format!("{}", min)));
    }
    if factors.len() == 1 && factors[0].multiplicity == 1 {
        let f = &factors[0].poly;
        if f.degree() == 1 {
            return Ok(RicciType::Einstein(format!("{}", f.coeff(0).negate())));
        }
        if f.degree() == 2 {
            let p = f.coeff(1);
            let q = f.coeff(0);
            let disc = p.mul(&p).sub(&q.scale_int(4));
            if disc.rational_sign() == Some(-1) {
                return Ok(complex_tag(&p, &disc));
            }
            return Ok(RicciType::RealMixed);
        }
    }
    if factors.len() == 1
        && factors[0].multiplicity == 2
        && factors[0].poly.degree() == 1
        && factors[0].poly.coeff(0).is_zero()
    {
        return Ok(RicciType::Isotropic);
    }
    let has_complex = factors.iter().any(|f| {
        f.poly.degree() == 2 && {
            let p = f.poly.coeff(1);
            let q = f.poly.coeff(0);
            p.mul(&p).sub(&q.scale_int(4)).rational_sign() == Some(-1)
        }
    });
    Ok(if has_complex {
        RicciType::ComplexMixed
    } else {
        RicciType::RealMixed
    })
}

fn collect_params(p: &UniPoly) -> Vec<crate::exact::Sym> {
    let mut out = Vec::new();
    for c in p.coeffs() {
        for v in c.vars() {
            if let Err(pos) = out.binary_search(&v) {
                out.insert(pos, v);
            }
        }
    }
    out
}

fn collect_params_scalar(s: &Scalar) -> Vec<crate::exact::Sym> {
    s.vars()
}

// ---------------------------------------------------------------------------
// Ricci decomposition
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockLabel {
    /// `ker(Ric^2)` (or `ker(Ric)` in the complex case).
    V0,
    /// Characteristic block of a complex-conjugate eigenvalue pair.
    Vc,
    /// Eigenspace of a nonzero real eigenvalue.
    VLambda,
}

#[derive(Debug, Clone)]
pub struct Block {
    pub label: BlockLabel,
    /// The polynomial `P_i` with block `ker(P_i(Ric))`.
    pub factor: UniPoly,
    pub basis: Vec<Vector>,
}

#[derive(Debug, Clone)]
pub struct RicciDecomposition {
    pub blocks: Vec<Block>,
    /// Verified clauses: orthogonality, invariance, cross-curvature
    /// vanishing, dimension constraints.
    pub checks: Vec<String>,
}

/// Splits `V` orthogonally along the spectral blocks of the Ricci operator
/// of a semi-symmetric tensor and verifies the invariance clauses.
pub fn ricci_decomposition(
    k: &CurvatureTensor,
    opts: &GenericityOpts,
) -> Result<RicciDecomposition, CurvatureError> {
    let space = k.space();
    let n = space.dim();
    let data = ricci_with(k, opts)?;
    let min = &data.min_poly;
    let ric_op = &data.ric_op;

    // Split the minimal polynomial into spectral factors.
    let mut factors: Vec<(UniPoly, BlockLabel)> = Vec::new();
    let mut zero_power = 0u32;
    match &data.type_tag {
        RicciType::Flat | RicciType::RicciFlat => {
            factors.push((UniPoly::linear(&Scalar::zero()), BlockLabel::V0));
        }
        RicciType::Einstein(_) => {
            factors.push((min.clone(), BlockLabel::VLambda));
        }
        RicciType::Isotropic => {
            zero_power = 2;
        }
        RicciType::ComplexRicci { .. } => {
            factors.push((min.clone(), BlockLabel::Vc));
        }
        RicciType::RealMixed | RicciType::ComplexMixed => {
            split_mixed_min(min, &mut factors, &mut zero_power, opts)?;
        }
    }
    if zero_power > 0 {
        let x = UniPoly::linear(&Scalar::zero());
        let p = if zero_power == 1 { x.clone() } else { x.mul(&x) };
        factors.push((p, BlockLabel::V0));
    }

    // With a complex pair present the zero block is ker(Ric) rather than
    // ker(Ric^2); the zero_power bookkeeping above encodes that split.
    let mut blocks = Vec::new();
    for (factor, label) in factors {
        let evaluated = ric_op.eval_unipoly(&factor);
        let basis: Vec<Vector> = evaluated
            .kernel_basis()
            .into_iter()
            .map(Vector::new)
            .collect();
        blocks.push(Block {
            label,
            factor,
            basis,
        });
    }

    // --- verification clauses ---
    let mut checks = Vec::new();
    let total: usize = blocks.iter().map(|b| b.basis.len()).sum();
    let stacked: Vec<Vec<Scalar>> = blocks
        .iter()
        .flat_map(|b| b.basis.iter().map(|v| v.coords.clone()))
        .collect();
    if total != n || span_rank(&stacked) != n {
        return Err(CurvatureError::ChecksFailed(format!(
            "blocks do not span: total dim {} rank {}",
            total,
            span_rank(&stacked)
        )));
    }
    checks.push("direct sum spans V".to_string());

    for i in 0..blocks.len() {
        for j in (i + 1)..blocks.len() {
            for v in &blocks[i].basis {
                for w in &blocks[j].basis {
                    if !space.inner(v, w).is_zero() {
                        return Err(CurvatureError::ChecksFailed(format!(
                            "blocks {} and {} are not orthogonal",
                            i, j
                        )));
                    }
                }
            }
        }
    }
    checks.push("blocks pairwise orthogonal".to_string());

    let holonomy = k.holonomy_image();
    for (bi, block) in blocks.iter().enumerate() {
        let span: Vec<Vec<Scalar>> = block.basis.iter().map(|v| v.coords.clone()).collect();
        for h in &holonomy {
            for v in &block.basis {
                let image = h.matrix.mul_vec(&v.coords);
                if !in_span(&span, &image) {
                    return Err(CurvatureError::ChecksFailed(format!(
                        "block {} is not holonomy-invariant",
                        bi
                    )));
                }
            }
        }
    }
    checks.push("blocks holonomy-invariant".to_string());

    for i in 0..blocks.len() {
        for j in 0..blocks.len() {
            if i == j {
                continue;
            }
            for v in &blocks[i].basis {
                for w in &blocks[j].basis {
                    if !k.action(v, w).matrix.is_zero() {
                        return Err(CurvatureError::ChecksFailed(format!(
                            "K does not vanish on block pair ({}, {})",
                            i, j
                        )));
                    }
                }
            }
        }
    }
    checks.push("K vanishes on mixed block pairs".to_string());

    for block in &blocks {
        match block.label {
            BlockLabel::Vc => {
                if block.basis.len() != 4 {
                    return Err(CurvatureError::ChecksFailed(format!(
                        "complex block has dimension {}, expected 4",
                        block.basis.len()
                    )));
                }
            }
            BlockLabel::VLambda => {
                if block.basis.len() < 2 {
                    return Err(CurvatureError::ChecksFailed(format!(
                        "eigenvalue block has dimension {} < 2",
                        block.basis.len()
                    )));
                }
            }
            BlockLabel::V0 => {}
        }
    }
    checks.push("block dimension constraints hold".to_string());

    // The uniqueness statements behind this split are asserted for
    // signature (2, n); other signatures are processed but flagged.
    if let Ok((p, q)) = space.signature() {
        if p != 2 && q != 2 {
            checks.push(format!(
                "signature ({}, {}) outside the (2, n) family; decomposition computed generically",
                p, q
            ));
        }
    }

    Ok(RicciDecomposition { blocks, checks })
}

/// Splits a mixed minimal polynomial into linear, quadratic and zero-power
/// factors, symbolically where possible.
fn split_mixed_min(
    min: &UniPoly,
    factors: &mut Vec<(UniPoly, BlockLabel)>,
    zero_power: &mut u32,
    opts: &GenericityOpts,
) -> Result<(), CurvatureError> {
    if min.is_rational() {
        for f in min.factor_over_rationals()? {
            if !f.resolved {
                return Err(CurvatureError::UnresolvedSpectrum(format!("{}", min)));
            }
            if f.poly.degree() == 1 && f.poly.coeff(0).is_zero() {
                *zero_power = f.multiplicity;
                continue;
            }
            if f.multiplicity != 1 {
                return Err(CurvatureError::ChecksFailed(format!(
                    "repeated nonzero factor {} in the minimal polynomial",
                    f.poly
                )));
            }
            if f.poly.degree() == 1 {
                factors.push((f.poly, BlockLabel::VLambda));
            } else {
                let p = f.poly.coeff(1);
                let q = f.poly.coeff(0);
                let disc = p.mul(&p).sub(&q.scale_int(4));
                let label = if disc.rational_sign() == Some(-1) {
                    BlockLabel::Vc
                } else {
                    BlockLabel::VLambda
                };
                factors.push((f.poly, label));
            }
        }
        return Ok(());
    }
    // Parametric: strip zero roots, then a residual polynomial of degree
    // at most two splits by the quadratic formula over the scalar field.
    let mut rest = min.clone();
    while rest.degree() > 0 && rest.coeff(0).is_zero() {
        *zero_power += 1;
        let x = UniPoly::linear(&Scalar::zero());
        rest = rest.div_rem(&x).0;
    }
    if *zero_power > 2 {
        return Err(CurvatureError::ChecksFailed(
            "nilpotency index exceeds 2".to_string(),
        ));
    }
    match rest.degree() {
        0 => Ok(()),
        1 => {
            factors.push((rest.monic(), BlockLabel::VLambda));
            Ok(())
        }
        2 => {
            let m = rest.monic();
            let p = m.coeff(1);
            let q = m.coeff(0);
            let disc = p.mul(&p).sub(&q.scale_int(4));
            if let Some(s) = disc.sqrt() {
                let half = Scalar::from_fraction(1, 2);
                let r1 = p.negate().add(&s).mul(&half);
                let r2 = p.negate().sub(&s).mul(&half);
                factors.push((UniPoly::linear(&r1), BlockLabel::VLambda));
                factors.push((UniPoly::linear(&r2), BlockLabel::VLambda));
                Ok(())
            } else {
                // Certify the complex label at sampled points.
                let params = collect_params_scalar(&disc);
                let points = generic_points(opts.seed, &params, &opts.constraints)?;
                let mut negative = true;
                for point in &points {
                    negative &= disc.substitute(point)?.rational_sign() == Some(-1);
                }
                if negative {
                    factors.push((m, BlockLabel::Vc));
                    Ok(())
                } else {
                    Err(CurvatureError::UnresolvedSpectrum(format!(
                        "parametric quadratic factor {} with indefinite discriminant",
                        m
                    )))
                }
            }
        }
        _ => Err(CurvatureError::UnresolvedSpectrum(format!(
            "parametric minimal polynomial {} of degree {}",
            min,
            min.degree()
        ))),
    }
}

// ---------------------------------------------------------------------------
// Self-dual spectrum (dimension 4)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct RestrictedOperator {
    pub matrix: Matrix,
    pub char_poly: UniPoly,
    pub min_poly: UniPoly,
    /// `Some(ratio)` when the restriction is `ratio * Id`.
    pub homothety: Option<Scalar>,
    /// Minimal polynomial square-free, i.e. diagonalizable over C.
    pub diagonalizable: bool,
    /// Number of distinct eigenvalues (degree of a square-free min poly).
    pub distinct_eigenvalues: usize,
}

#[derive(Debug, Clone)]
pub struct SelfDualSpectrum {
    /// `J^2 = id` held for this space (flagged, not assumed).
    pub involution_ok: bool,
    /// `[J, R] = 0`.
    pub commutes: bool,
    pub plus: Option<RestrictedOperator>,
    pub minus: Option<RestrictedOperator>,
}

/// Restriction of the curvature operator to the self-dual and
/// anti-self-dual bivectors, with spectrum data. Only meaningful in
/// dimension 4.
pub fn selfdual_spectrum(k: &CurvatureTensor) -> Result<SelfDualSpectrum, CurvatureError> {
    let space = k.space();
    if space.dim() != 4 {
        return Err(CurvatureError::Space(SpaceError::HodgeNeedsDim4(
            space.dim(),
        )));
    }
    let j = crate::space::hodge_operator(space)?;
    let involution_ok = j.mul(&j) == Matrix::identity(space.bivector_dim());
    let endo = k.endo();
    let commutes = j.mul(&endo) == endo.mul(&j);
    let (plus, minus) = if commutes {
        let plus = restrict(&endo, &crate::space::involution_eigenspace(&j, true))?;
        let minus = restrict(&endo, &crate::space::involution_eigenspace(&j, false))?;
        (Some(plus), Some(minus))
    } else {
        (None, None)
    };
    Ok(SelfDualSpectrum {
        involution_ok,
        commutes,
        plus,
        minus,
    })
}

fn restrict(endo: &Matrix, basis: &[Vec<Scalar>]) -> Result<RestrictedOperator, CurvatureError> {
    let d = basis.len();
    let cols = crate::exact::stack_columns(basis);
    // Solve cols * R = endo * cols column by column.
    let mut r = Matrix::zero(d, d);
    for j in 0..d {
        let target = endo.mul_vec(&basis[j]);
        let (sol, _) = cols
            .solve_linear(&target)
            .map_err(|_| CurvatureError::ChecksFailed("eigenspace not invariant".to_string()))?;
        for i in 0..d {
            r[(i, j)] = sol[i].clone();
        }
    }
    let char_poly = r.char_poly();
    let min_poly = r.min_poly();
    let homothety = if min_poly.degree() == 1 {
        Some(min_poly.coeff(0).negate())
    } else {
        None
    };
    let g = min_poly.gcd(&min_poly.derivative());
    let diagonalizable = g.degree() == 0;
    Ok(RestrictedOperator {
        matrix: r,
        char_poly,
        min_poly: min_poly.clone(),
        homothety,
        diagonalizable,
        distinct_eigenvalues: min_poly.degree(),
    })
}

// ---------------------------------------------------------------------------
// Tensor files
// ---------------------------------------------------------------------------

/// One `coeff * (a v b)` term; bivector factors are index pairs or
/// basis-name pairs.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TensorTermFile {
    pub coeff: String,
    pub a: BivectorRef,
    pub b: BivectorRef,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum BivectorRef {
    Indices([usize; 2]),
    Names([String; 2]),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum SpaceSpec {
    Inline(crate::space::SpaceFile),
    Path(String),
}

/// JSON schema for tensor files:
/// `{ "space": <space object or file ref>, "terms": [...],
///    "assert_semi_symmetric": bool? }`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TensorFile {
    pub space: SpaceSpec,
    pub terms: Vec<TensorTermFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assert_semi_symmetric: Option<bool>,
}

impl TensorFile {
    pub fn resolve_space(&self, base: Option<&std::path::Path>) -> Result<PseudoSpace, CurvatureError> {
        match &self.space {
            SpaceSpec::Inline(f) => Ok(f.to_space()?),
            SpaceSpec::Path(p) => {
                let path = match base {
                    Some(dir) => dir.join(p),
                    None => std::path::PathBuf::from(p),
                };
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    CurvatureError::ChecksFailed(format!("cannot read {}: {}", path.display(), e))
                })?;
                let file: crate::space::SpaceFile = serde_json::from_str(&text).map_err(|e| {
                    CurvatureError::ChecksFailed(format!("bad space file {}: {}", path.display(), e))
                })?;
                Ok(file.to_space()?)
            }
        }
    }

    pub fn to_tensor(&self, space: &SpaceRef) -> Result<PSymTensor, CurvatureError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            let coeff = Scalar::parse(&term.coeff)?;
            let a = resolve_bivector(space, &term.a)?;
            let b = resolve_bivector(space, &term.b)?;
            terms.push((coeff, a, b));
        }
        make_tensor(space, &terms)
    }
}

fn resolve_bivector(space: &SpaceRef, r: &BivectorRef) -> Result<Bivector, CurvatureError> {
    let (i, j) = match r {
        BivectorRef::Indices([i, j]) => (*i, *j),
        BivectorRef::Names([a, b]) => (space.basis_index(a)?, space.basis_index(b)?),
    };
    if i == j || i >= space.dim() || j >= space.dim() {
        return Err(CurvatureError::ChecksFailed(format!(
            "bad bivector index pair ({}, {})",
            i, j
        )));
    }
    Ok(Bivector::basis(space, i, j))
}

/// Convenience: wedge of two named basis vectors as a bivector.
pub fn named_wedge(space: &SpaceRef, a: &str, b: &str) -> Result<Bivector, CurvatureError> {
    let i = space.basis_index(a)?;
    let j = space.basis_index(b)?;
    Ok(Bivector::basis(space, i, j))
}

/// Checks that `wedge_endo` and the bivector pairing agree:
/// `<A_{u,v}, w^t> = <A_{u,v}(w), t>` (used by property tests).
pub fn wedge_pairing_consistent(space: &SpaceRef) -> bool {
    let n = space.dim();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let u = space.basis_vector(i);
            let v = space.basis_vector(j);
            let a = wedge_endo(space, &u, &v).unwrap();
            let ab = so_to_bivector(space, &a).unwrap();
            for k in 0..n {
                for l in 0..n {
                    if k == l {
                        continue;
                    }
                    let w = space.basis_vector(k);
                    let t = space.basis_vector(l);
                    let wt = Bivector::wedge(space, &w, &t);
                    let lhs = crate::space::bivector_inner(space, &ab, &wt);
                    let aw = Vector::new(a.matrix.mul_vec(&w.coords));
                    let rhs = space.inner(&aw, &t);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Ricci commutation (the semi-symmetry consequence):
/// `K(u,v) o Ric = Ric o K(u,v)` on all basis pairs.
pub fn ricci_commutes(k: &CurvatureTensor, ric_op: &Matrix) -> bool {
    let endos = pair_endos(k);
    let n = k.space().dim();
    for i in 0..n {
        for j in 0..n {
            let a = &endos[i][j];
            if !a.mul(ric_op).sub(&ric_op.mul(a)).is_zero() {
                return false;
            }
        }
    }
    true
}
