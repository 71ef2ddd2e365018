//! Pseudo-Euclidean vector spaces and their bivector algebra.
//!
//! A space is a finite-dimensional vector space with an explicit Gram
//! matrix. The bivector space carries the induced product
//! `<u^v, w^t> = <v,w><u,t> - <u,w><v,t>` (the sign convention every
//! curvature computation in this crate is calibrated against), and
//! skew endomorphisms are identified with bivectors through it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{Assignment, ExactError, Matrix, Scalar, Sym};

#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("gram matrix must be square and symmetric")]
    BadGram,
    #[error("gram matrix is degenerate")]
    DegenerateGram,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("endomorphism is not metric-skew")]
    NotSkew,
    #[error("hodge operator needs dimension 4, got {0}")]
    HodgeNeedsDim4(usize),
    #[error("determinant of the gram matrix is not a perfect square in the scalar field: {0}")]
    NonSquareDeterminant(String),
    #[error("unknown basis vector {0}")]
    UnknownBasisVector(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A pseudo-Euclidean vector space with a distinguished ordered basis.
#[derive(Debug, Clone)]
pub struct PseudoSpace {
    dim: usize,
    gram: Matrix,
    gram_inv: Matrix,
    basis_names: Vec<String>,
    params: Vec<Sym>,
    /// Ordered bivector basis: pairs (i, j) with i < j, lexicographic.
    pairs: Vec<(usize, usize)>,
    /// Induced metric on the bivector space, and its inverse.
    biv_gram: Matrix,
    biv_gram_inv: Matrix,
    /// Declared orientation: true means the basis order is positive.
    positive_orientation: bool,
}

impl PseudoSpace {
    pub fn new(
        gram: Matrix,
        basis_names: Vec<String>,
        params: Vec<Sym>,
    ) -> Result<PseudoSpace, SpaceError> {
        if !gram.is_square() || !gram.is_symmetric() {
            return Err(SpaceError::BadGram);
        }
        let dim = gram.rows();
        if basis_names.len() != dim {
            return Err(SpaceError::DimensionMismatch);
        }
        if gram.det().is_zero() {
            return Err(SpaceError::DegenerateGram);
        }
        let gram_inv = gram.inverse().expect("nondegenerate gram");
        let mut pairs = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                pairs.push((i, j));
            }
        }
        let biv_gram = Matrix::from_fn(pairs.len(), pairs.len(), |a, b| {
            let (i, j) = pairs[a];
            let (k, l) = pairs[b];
            // <b_i ^ b_j, b_k ^ b_l> = <b_j,b_k><b_i,b_l> - <b_i,b_k><b_j,b_l>
            gram[(j, k)]
                .mul(&gram[(i, l)])
                .sub(&gram[(i, k)].mul(&gram[(j, l)]))
        });
        let biv_gram_inv = biv_gram
            .inverse()
            .map_err(|_| SpaceError::DegenerateGram)?;
        Ok(PseudoSpace {
            dim,
            gram,
            gram_inv,
            basis_names,
            params,
            pairs,
            biv_gram,
            biv_gram_inv,
            positive_orientation: true,
        })
    }

    /// Builds a space of dimension `dim` from a list of nonzero basis
    /// products `(name_a, name_b, value)`; everything unspecified is zero.
    pub fn from_products(
        names: &[&str],
        products: &[(&str, &str, Scalar)],
    ) -> Result<PseudoSpace, SpaceError> {
        let dim = names.len();
        let index = |n: &str| -> Result<usize, SpaceError> {
            names
                .iter()
                .position(|&m| m == n)
                .ok_or_else(|| SpaceError::UnknownBasisVector(n.to_string()))
        };
        let mut gram = Matrix::zero(dim, dim);
        for (a, b, v) in products {
            let i = index(a)?;
            let j = index(b)?;
            gram[(i, j)] = v.clone();
            gram[(j, i)] = v.clone();
        }
        let mut params: Vec<Sym> = Vec::new();
        for e in gram.entries() {
            for v in e.vars() {
                if let Err(pos) = params.binary_search(&v) {
                    params.insert(pos, v);
                }
            }
        }
        PseudoSpace::new(gram, names.iter().map(|s| s.to_string()).collect(), params)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bivector_dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix {
        &self.gram_inv
    }

    pub fn bivector_gram(&self) -> &Matrix {
        &self.biv_gram
    }

    pub fn bivector_gram_inv(&self) -> &Matrix {
        &self.biv_gram_inv
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn params(&self) -> &[Sym] {
        &self.params
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn basis_index(&self, name: &str) -> Result<usize, SpaceError> {
        self.basis_names
            .iter()
            .position(|m| m == name)
            .ok_or_else(|| SpaceError::UnknownBasisVector(name.to_string()))
    }

    pub fn pair_index(&self, i: usize, j: usize) -> Option<(usize, i8)> {
        if i == j {
            return None;
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        self.pairs
            .iter()
            .position(|&(x, y)| (x, y) == (a, b))
            .map(|idx| (idx, sign))
    }

    /// Basis vector as a coordinate column.
    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut coords = vec![Scalar::zero(); self.dim];
        coords[i] = Scalar::one();
        Vector { coords }
    }

    pub fn named_vector(&self, name: &str) -> Result<Vector, SpaceError> {
        Ok(self.basis_vector(self.basis_index(name)?))
    }

    /// Inner product of coordinate vectors.
    pub fn inner(&self, u: &Vector, v: &Vector) -> Scalar {
        let gu = self.gram.mul_vec(&u.coords);
        dot(&gu, &v.coords)
    }

    /// Substitutes parameters in the Gram matrix, producing a rational space.
    pub fn substitute(&self, assignment: &Assignment) -> Result<PseudoSpace, SpaceError> {
        PseudoSpace::new(
            self.gram.substitute(assignment)?,
            self.basis_names.clone(),
            Vec::new(),
        )
    }

    /// Signature (p, q) of the (parameter-free) Gram matrix, computed by
    /// exact congruence diagonalization.
    pub fn signature(&self) -> Result<(usize, usize), SpaceError> {
        let n = self.dim;
        let mut m = self.gram.clone();
        if m.entries().iter().any(|e| !e.is_rational()) {
            return Err(SpaceError::Exact(ExactError::ParametricInput));
        }
        let mut pos = 0;
        let mut neg = 0;
        // Symmetric elimination: diagonalize by congruence.
        let mut rows: Vec<usize> = (0..n).collect();
        let _ = &mut rows;
        for step in 0..n {
            // Ensure a nonzero diagonal entry at (step, step).
            if m[(step, step)].is_zero() {
                if let Some(j) = ((step + 1)..n).find(|&j| !m[(j, j)].is_zero()) {
                    sym_swap(&mut m, step, j);
                } else if let Some(j) = ((step + 1)..n).find(|&j| !m[(step, j)].is_zero()) {
                    // b_step += b_j creates 2*<b_step, b_j> on the diagonal.
                    sym_add(&mut m, step, j);
                } else {
                    continue;
                }
            }
            let d = m[(step, step)].clone();
            match d.rational_sign() {
                Some(1) => pos += 1,
                Some(-1) => neg += 1,
                _ => {}
            }
            let dinv = d.recip().expect("nonzero diagonal");
            for j in (step + 1)..n {
                if m[(step, j)].is_zero() {
                    continue;
                }
                let f = m[(step, j)].mul(&dinv);
                // b_j -= f * b_step, applied symmetrically.
                for k in 0..n {
                    let delta = f.mul(&m[(step, k)]);
                    m[(j, k)] = m[(j, k)].sub(&delta);
                }
                for k in 0..n {
                    let delta = f.mul(&m[(k, step)]);
                    m[(k, j)] = m[(k, j)].sub(&delta);
                }
            }
        }
        Ok((pos, neg))
    }
}

fn sym_swap(m: &mut Matrix, a: usize, b: usize) {
    let n = m.rows();
    for k in 0..n {
        let (x, y) = (m[(a, k)].clone(), m[(b, k)].clone());
        m[(a, k)] = y;
        m[(b, k)] = x;
    }
    for k in 0..n {
        let (x, y) = (m[(k, a)].clone(), m[(k, b)].clone());
        m[(k, a)] = y;
        m[(k, b)] = x;
    }
}

fn sym_add(m: &mut Matrix, a: usize, b: usize) {
    let n = m.rows();
    for k in 0..n {
        let s = m[(a, k)].add(&m[(b, k)]);
        m[(a, k)] = s;
    }
    for k in 0..n {
        let s = m[(k, a)].add(&m[(k, b)]);
        m[(k, a)] = s;
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc.add(&x.mul(y));
    }
    acc
}

/// A vector in coordinates of the space basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector {
    pub coords: Vec<Scalar>,
}

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Vector {
        Vector { coords }
    }

    pub fn zero(dim: usize) -> Vector {
        Vector {
            coords: vec![Scalar::zero(); dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector {
            coords: self.coords.iter().map(|a| a.mul(c)).collect(),
        }
    }
}

/// A bivector in coordinates of the ordered basis {b_i ^ b_j : i < j}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bivector {
    pub coords: Vec<Scalar>,
}

impl Bivector {
    pub fn new(coords: Vec<Scalar>) -> Bivector {
        Bivector { coords }
    }

    pub fn zero(space: &PseudoSpace) -> Bivector {
        Bivector {
            coords: vec![Scalar::zero(); space.bivector_dim()],
        }
    }

    /// The coordinate bivector b_i ^ b_j (i != j, any order).
    pub fn basis(space: &PseudoSpace, i: usize, j: usize) -> Bivector {
        let mut coords = vec![Scalar::zero(); space.bivector_dim()];
        let (idx, sign) = space.pair_index(i, j).expect("distinct indices");
        coords[idx] = Scalar::from_int(sign as i64);
        Bivector { coords }
    }

    /// Wedge of two coordinate vectors.
    pub fn wedge(space: &PseudoSpace, u: &Vector, v: &Vector) -> Bivector {
        let coords = space
            .pairs
            .iter()
            .map(|&(i, j)| {
                u.coords[i]
                    .mul(&v.coords[j])
                    .sub(&u.coords[j].mul(&v.coords[i]))
            })
            .collect();
        Bivector { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Bivector) -> Bivector {
        Bivector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Bivector) -> Bivector {
        Bivector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Bivector {
        Bivector {
            coords: self.coords.iter().map(|a| a.mul(c)).collect(),
        }
    }
}

/// Metric symmetry kind of an endomorphism with respect to the Gram matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndoKind {
    Skew,
    Symmetric,
    General,
}

/// An endomorphism of the space, tagged with its metric symmetry kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricEndo {
    pub matrix: Matrix,
    pub kind: EndoKind,
}

impl MetricEndo {
    pub fn classify(space: &PseudoSpace, matrix: Matrix) -> MetricEndo {
        let ga = space.gram.mul(&matrix);
        let kind = if ga.add(&ga.transpose()).is_zero() {
            EndoKind::Skew
        } else if ga.sub(&ga.transpose()).is_zero() {
            EndoKind::Symmetric
        } else {
            EndoKind::General
        };
        MetricEndo { matrix, kind }
    }

    pub fn is_skew(&self) -> bool {
        self.kind == EndoKind::Skew
    }
}

/// `(u ^ v) w = <v,w> u - <u,w> v`, the metric-skew endomorphism `A_{u,v}`.
pub fn wedge_endo(space: &PseudoSpace, u: &Vector, v: &Vector) -> Result<MetricEndo, SpaceError> {
    check_dim(space, u)?;
    check_dim(space, v)?;
    let gu = space.gram.mul_vec(&u.coords);
    let gv = space.gram.mul_vec(&v.coords);
    let m = Matrix::from_fn(space.dim, space.dim, |i, j| {
        u.coords[i].mul(&gv[j]).sub(&v.coords[i].mul(&gu[j]))
    });
    Ok(MetricEndo {
        matrix: m,
        kind: EndoKind::Skew,
    })
}

/// `(u v v) w = (1/2)(<v,w> u + <u,w> v)`, metric-symmetric.
pub fn vee_endo(space: &PseudoSpace, u: &Vector, v: &Vector) -> Result<MetricEndo, SpaceError> {
    check_dim(space, u)?;
    check_dim(space, v)?;
    let gu = space.gram.mul_vec(&u.coords);
    let gv = space.gram.mul_vec(&v.coords);
    let half = Scalar::from_fraction(1, 2);
    let m = Matrix::from_fn(space.dim, space.dim, |i, j| {
        u.coords[i]
            .mul(&gv[j])
            .add(&v.coords[i].mul(&gu[j]))
            .mul(&half)
    });
    Ok(MetricEndo {
        matrix: m,
        kind: EndoKind::Symmetric,
    })
}

/// Symmetric bilinear form matrix of `u v v` on the space (rank <= 2).
pub fn vee_form(space: &PseudoSpace, u: &Vector, v: &Vector) -> Matrix {
    let gu = space.gram.mul_vec(&u.coords);
    let gv = space.gram.mul_vec(&v.coords);
    let half = Scalar::from_fraction(1, 2);
    Matrix::from_fn(space.dim(), space.dim(), |i, j| {
        gu[i].mul(&gv[j]).add(&gv[i].mul(&gu[j])).mul(&half)
    })
}

/// Induced bivector inner product.
pub fn bivector_inner(space: &PseudoSpace, a: &Bivector, b: &Bivector) -> Scalar {
    let gb = space.biv_gram.mul_vec(&b.coords);
    dot(&a.coords, &gb)
}

/// Identifies a metric-skew endomorphism with its bivector.
pub fn so_to_bivector(space: &PseudoSpace, endo: &MetricEndo) -> Result<Bivector, SpaceError> {
    let ga = space.gram.mul(&endo.matrix);
    if !ga.add(&ga.transpose()).is_zero() {
        return Err(SpaceError::NotSkew);
    }
    // <A b_k, b_l> = <beta, b_k ^ b_l> determines beta through the
    // bivector metric.
    let pairing: Vec<Scalar> = space
        .pairs
        .iter()
        .map(|&(k, l)| {
            let col = endo.matrix.column(k);
            let gcol = space.gram.mul_vec(&col);
            gcol[l].clone()
        })
        .collect();
    Ok(Bivector {
        coords: space.biv_gram_inv.mul_vec(&pairing),
    })
}

/// Realizes a bivector as a metric-skew endomorphism.
pub fn bivector_to_so(space: &PseudoSpace, b: &Bivector) -> MetricEndo {
    let mut acc = Matrix::zero(space.dim, space.dim);
    for (idx, &(i, j)) in space.pairs.iter().enumerate() {
        if b.coords[idx].is_zero() {
            continue;
        }
        let e = wedge_endo(space, &space.basis_vector(i), &space.basis_vector(j))
            .expect("basis vectors");
        acc = acc.add(&e.matrix.scale(&b.coords[idx]));
    }
    MetricEndo {
        matrix: acc,
        kind: EndoKind::Skew,
    }
}

/// Induced action of an endomorphism on bivector coordinates:
/// `b_i ^ b_j -> A(b_i) ^ b_j + b_i ^ A(b_j)`.
pub fn lambda2_action(space: &PseudoSpace, endo: &Matrix) -> Matrix {
    let n = space.bivector_dim();
    Matrix::from_fn(n, n, |row, col| {
        let (i, j) = space.pairs[col];
        let ai = Vector::new(endo.column(i));
        let aj = Vector::new(endo.column(j));
        let w1 = Bivector::wedge(space, &ai, &space.basis_vector(j));
        let w2 = Bivector::wedge(space, &space.basis_vector(i), &aj);
        w1.coords[row].add(&w2.coords[row])
    })
}

/// The Hodge involution on bivectors of an oriented 4-dimensional space.
///
/// Defined by `alpha ^ beta = <J alpha, beta> omega` with `omega` the
/// volume form of the declared basis orientation. Requires `det(gram)` to
/// be a perfect square in the scalar field (true for every catalogue
/// metric). `J^2 = id` is a theorem in neutral signature; callers can
/// verify it cheaply, and reports flag any deviation.
pub fn hodge_operator(space: &PseudoSpace) -> Result<Matrix, SpaceError> {
    if space.dim != 4 {
        return Err(SpaceError::HodgeNeedsDim4(space.dim));
    }
    let det = space.gram.det();
    let s = det
        .sqrt()
        .ok_or_else(|| SpaceError::NonSquareDeterminant(format!("{}", det)))?;
    let n = space.bivector_dim();
    // Wedge pairing: w(e_I, e_J) = sign of the permutation (i,j,k,l) when
    // all four indices are distinct, else 0.
    let w = Matrix::from_fn(n, n, |a, b| {
        let (i, j) = space.pairs[a];
        let (k, l) = space.pairs[b];
        let perm = [i, j, k, l];
        Scalar::from_int(permutation_sign(&perm))
    });
    let sign = if space.positive_orientation {
        s
    } else {
        s.negate()
    };
    Ok(space.biv_gram_inv.mul(&w).scale(&sign))
}

fn permutation_sign(perm: &[usize; 4]) -> i64 {
    for a in 0..4 {
        for b in (a + 1)..4 {
            if perm[a] == perm[b] {
                return 0;
            }
        }
    }
    let mut sign = 1i64;
    for a in 0..4 {
        for b in (a + 1)..4 {
            if perm[a] > perm[b] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Eigenspace basis of an involution for eigenvalue +1 or -1.
pub fn involution_eigenspace(j: &Matrix, positive: bool) -> Vec<Vec<Scalar>> {
    let n = j.rows();
    let shifted = if positive {
        j.sub(&Matrix::identity(n))
    } else {
        j.add(&Matrix::identity(n))
    };
    shifted.kernel_basis()
}

fn check_dim(space: &PseudoSpace, v: &Vector) -> Result<(), SpaceError> {
    if v.coords.len() != space.dim {
        return Err(SpaceError::DimensionMismatch);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Space files
// ---------------------------------------------------------------------------

/// JSON schema for space files:
/// `{ "dim": n, "params": [names], "gram": [[scalar-strings]],
///    "basis_names": [strings] }`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpaceFile {
    pub dim: usize,
    #[serde(default)]
    pub params: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub basis_names: Vec<String>,
}

impl SpaceFile {
    pub fn to_space(&self) -> Result<PseudoSpace, SpaceError> {
        // Declare parameters in file order so the monomial order is stable.
        let params: Vec<Sym> = self.params.iter().map(|p| Sym::new(p)).collect();
        if self.gram.len() != self.dim || self.basis_names.len() != self.dim {
            return Err(SpaceError::DimensionMismatch);
        }
        let mut rows = Vec::with_capacity(self.dim);
        for row in &self.gram {
            if row.len() != self.dim {
                return Err(SpaceError::DimensionMismatch);
            }
            let mut out = Vec::with_capacity(self.dim);
            for s in row {
                out.push(Scalar::parse(s)?);
            }
            rows.push(out);
        }
        PseudoSpace::new(Matrix::from_rows(rows), self.basis_names.clone(), params)
    }

    pub fn from_space(space: &PseudoSpace) -> SpaceFile {
        SpaceFile {
            dim: space.dim(),
            params: space.params().iter().map(|p| p.name()).collect(),
            gram: (0..space.dim())
                .map(|i| {
                    (0..space.dim())
                        .map(|j| format!("{}", space.gram()[(i, j)]))
                        .collect()
                })
                .collect(),
            basis_names: space.basis_names().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    /// Null basis <x,z> = <y,t> = 1.
    pub(crate) fn null_xz_yt() -> PseudoSpace {
        PseudoSpace::from_products(
            &["x", "y", "z", "t"],
            &[("x", "z", s(1)), ("y", "t", s(1))],
        )
        .unwrap()
    }

    #[test]
    fn wedge_endo_formula() {
        let sp = null_xz_yt();
        let x = sp.named_vector("x").unwrap();
        let z = sp.named_vector("z").unwrap();
        let y = sp.named_vector("y").unwrap();
        let a = wedge_endo(&sp, &x, &z).unwrap();
        assert!(a.is_skew());
        // A_{x,z}(x) = x, A_{x,z}(z) = -z, A_{x,z}(y) = 0
        assert_eq!(a.matrix.mul_vec(&x.coords), x.coords);
        assert_eq!(
            a.matrix.mul_vec(&z.coords),
            z.scale(&s(-1)).coords
        );
        assert_eq!(a.matrix.mul_vec(&y.coords), Vector::zero(4).coords);
    }

    #[test]
    fn vee_endo_formula() {
        let sp = null_xz_yt();
        let x = sp.named_vector("x").unwrap();
        let z = sp.named_vector("z").unwrap();
        let y = sp.named_vector("y").unwrap();
        let xx = vee_endo(&sp, &x, &x).unwrap();
        assert_eq!(xx.kind, EndoKind::Symmetric);
        // (x v x)(z) = x
        assert_eq!(xx.matrix.mul_vec(&z.coords), x.coords);
        let xz = vee_endo(&sp, &x, &z).unwrap();
        // (x v z)(x) = x/2
        assert_eq!(
            xz.matrix.mul_vec(&x.coords),
            x.scale(&Scalar::from_fraction(1, 2)).coords
        );
        // (x v z)(y) = 0
        assert_eq!(xz.matrix.mul_vec(&y.coords), Vector::zero(4).coords);
    }

    #[test]
    fn bivector_inner_examples() {
        let sp = null_xz_yt();
        let x = sp.named_vector("x").unwrap();
        let y = sp.named_vector("y").unwrap();
        let z = sp.named_vector("z").unwrap();
        let t = sp.named_vector("t").unwrap();
        let xz = Bivector::wedge(&sp, &x, &z);
        let xy = Bivector::wedge(&sp, &x, &y);
        let zt = Bivector::wedge(&sp, &z, &t);
        assert_eq!(bivector_inner(&sp, &xz, &xz), s(1));
        assert_eq!(bivector_inner(&sp, &xy, &zt), s(-1));
        assert_eq!(bivector_inner(&sp, &xy, &xy), s(0));
    }

    #[test]
    fn so_bivector_round_trip() {
        let sp = null_xz_yt();
        let x = sp.named_vector("x").unwrap();
        let z = sp.named_vector("z").unwrap();
        let a = wedge_endo(&sp, &x, &z).unwrap();
        let b = so_to_bivector(&sp, &a).unwrap();
        assert_eq!(b, Bivector::basis(&sp, 0, 2));
        let back = bivector_to_so(&sp, &b);
        assert_eq!(back.matrix, a.matrix);

        // zero endomorphism -> zero bivector
        let zero = MetricEndo {
            matrix: Matrix::zero(4, 4),
            kind: EndoKind::Skew,
        };
        assert!(so_to_bivector(&sp, &zero).unwrap().is_zero());

        // linearity: A_{x,y} + A_{z,t}
        let y = sp.named_vector("y").unwrap();
        let t = sp.named_vector("t").unwrap();
        let sum = MetricEndo {
            matrix: wedge_endo(&sp, &x, &y)
                .unwrap()
                .matrix
                .add(&wedge_endo(&sp, &z, &t).unwrap().matrix),
            kind: EndoKind::Skew,
        };
        let sb = so_to_bivector(&sp, &sum).unwrap();
        assert_eq!(
            sb,
            Bivector::basis(&sp, 0, 1).add(&Bivector::basis(&sp, 2, 3))
        );
    }

    #[test]
    fn not_skew_is_rejected() {
        let sp = null_xz_yt();
        let bad = MetricEndo {
            matrix: Matrix::identity(4),
            kind: EndoKind::General,
        };
        assert!(matches!(
            so_to_bivector(&sp, &bad),
            Err(SpaceError::NotSkew)
        ));
    }

    #[test]
    fn hodge_is_an_involution_with_three_dim_eigenspaces() {
        // Orthonormal basis with signs (+, +, -, -).
        let sp = PseudoSpace::from_products(
            &["e1", "e2", "e3", "e4"],
            &[
                ("e1", "e1", s(1)),
                ("e2", "e2", s(1)),
                ("e3", "e3", s(-1)),
                ("e4", "e4", s(-1)),
            ],
        )
        .unwrap();
        let j = hodge_operator(&sp).unwrap();
        assert_eq!(j.mul(&j), Matrix::identity(6), "J^2 = id");
        let plus = involution_eigenspace(&j, true);
        let minus = involution_eigenspace(&j, false);
        assert_eq!(plus.len(), 3);
        assert_eq!(minus.len(), 3);

        // e1^e2 +- e3^e4 split between the two eigenspaces.
        let p = Bivector::basis(&sp, 0, 1).add(&Bivector::basis(&sp, 2, 3));
        let m = Bivector::basis(&sp, 0, 1).sub(&Bivector::basis(&sp, 2, 3));
        let jp = j.mul_vec(&p.coords);
        let jm = j.mul_vec(&m.coords);
        let p_sign = if jp == p.coords { 1 } else { -1 };
        let m_sign = if jm == m.coords { 1 } else { -1 };
        assert_eq!(jp, p.scale(&s(p_sign)).coords);
        assert_eq!(jm, m.scale(&s(m_sign)).coords);
        assert_ne!(p_sign, m_sign, "the two vectors land in opposite eigenspaces");

        // J(e1^e2) is the multiple of e3^e4 forced by the defining relation,
        // derived by solving <J a, b> omega = a ^ b over the bivector basis.
        let je12 = j.mul_vec(&Bivector::basis(&sp, 0, 1).coords);
        let e34 = Bivector::basis(&sp, 2, 3);
        assert!(
            je12 == e34.coords || je12 == e34.scale(&s(-1)).coords,
            "J(e1^e2) proportional to e3^e4 with unit coefficient"
        );
    }

    #[test]
    fn hodge_rejects_wrong_dimension() {
        let sp = PseudoSpace::from_products(&["x", "y"], &[("x", "y", s(1))]).unwrap();
        assert!(matches!(
            hodge_operator(&sp),
            Err(SpaceError::HodgeNeedsDim4(2))
        ));
    }

    #[test]
    fn signature_of_fixtures() {
        assert_eq!(null_xz_yt().signature().unwrap(), (2, 2));
        let sp = PseudoSpace::from_products(
            &["x", "y", "z", "t"],
            &[
                ("x", "x", s(1)),
                ("y", "y", s(-1)),
                ("z", "z", s(1)),
                ("t", "t", s(-1)),
            ],
        )
        .unwrap();
        assert_eq!(sp.signature().unwrap(), (2, 2));
    }

    #[test]
    fn bivector_metric_nondegenerate() {
        let sp = null_xz_yt();
        assert!(!sp.bivector_gram().det().is_zero());
    }

    #[test]
    fn space_file_round_trip() {
        let sp = null_xz_yt();
        let file = SpaceFile::from_space(&sp);
        let text = serde_json::to_string(&file).unwrap();
        let parsed: SpaceFile = serde_json::from_str(&text).unwrap();
        let back = parsed.to_space().unwrap();
        assert_eq!(back.gram(), sp.gram());
        assert_eq!(back.basis_names(), sp.basis_names());
    }
}
