//! Exact dense linear algebra over the scalar field.
//!
//! Elimination works over the full fraction field, so a pivot is any entry
//! that is nonzero as a rational function; ranks and kernels are therefore
//! generic in the parameters. Pivot choice is leftmost column, topmost row,
//! which pins every echelon form and kernel basis.

use std::fmt;

use super::poly::Poly;
use super::scalar::{Assignment, Scalar};
use super::unipoly::UniPoly;
use super::ExactError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn column_vector(entries: Vec<Scalar>) -> Matrix {
        let rows = entries.len();
        Matrix {
            rows,
            cols: 1,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].add(&other[(i, j)])
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].sub(&other[(i, j)])
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].negate())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].mul(c))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                if self[(i, k)].is_zero() || other[(k, j)].is_zero() {
                    continue;
                }
                acc = acc.add(&self[(i, k)].mul(&other[(k, j)]));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    if self[(i, k)].is_zero() || v[k].is_zero() {
                        continue;
                    }
                    acc = acc.add(&self[(i, k)].mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut acc = Scalar::zero();
        for i in 0..self.rows {
            acc = acc.add(&self[(i, i)]);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Flattens the matrix into a column vector, row-major.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn substitute(&self, assignment: &Assignment) -> Result<Matrix, ExactError> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            data.push(x.substitute(assignment)?);
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            // Leftmost nonzero column, topmost row. A zero rational function
            // is never a pivot; it is skipped, not an error.
            let pivot_row = (row..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot_row else { continue };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip().expect("pivot nonzero");
            for j in col..m.cols {
                m[(row, j)] = m[(row, j)].mul(&inv);
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for j in col..m.cols {
                        let delta = factor.mul(&m[(row, j)]);
                        m[(r, j)] = m[(r, j)].sub(&delta);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, each vector normalized so its first nonzero
    /// coordinate is one (reduced-echelon normal form of the kernel).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut free_cols: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free_cols.sort_unstable();
        let mut basis = Vec::with_capacity(free_cols.len());
        for &fc in &free_cols {
            let mut v = vec![Scalar::zero(); self.cols];
            v[fc] = Scalar::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = r[(pi, fc)].negate();
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return basis;
        }
        // Normalize the basis itself into reduced echelon form.
        let b = Matrix::from_rows(basis);
        let (rb, pivots) = b.rref();
        (0..pivots.len()).map(|i| rb.row(i).to_vec()).collect()
    }

    /// Solves `M x = b` exactly. Returns a particular solution and a kernel
    /// basis, or `Inconsistent`.
    pub fn solve_linear(&self, b: &[Scalar]) -> Result<(Vec<Scalar>, Vec<Vec<Scalar>>), ExactError> {
        if b.len() != self.rows {
            return Err(ExactError::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        aug = r;
        if pivots.contains(&self.cols) {
            return Err(ExactError::Inconsistent);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(pi, self.cols)].clone();
        }
        Ok((x, self.kernel_basis()))
    }

    /// Row-wise denominator clearing: returns the polynomial matrix
    /// `M' = diag(d_i) M` together with the row factors `d_i`.
    fn cleared(&self) -> (Vec<Vec<Poly>>, Vec<Poly>) {
        let n = self.rows;
        let mut rows = Vec::with_capacity(n);
        let mut factors = Vec::with_capacity(n);
        for i in 0..n {
            let mut common = Poly::one();
            for j in 0..self.cols {
                common = common.mul(self[(i, j)].denominator());
            }
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                let cof = common
                    .divide_exact(self[(i, j)].denominator())
                    .expect("denominator divides the row product");
                row.push(self[(i, j)].numerator().mul(&cof));
            }
            rows.push(row);
            factors.push(common);
        }
        (rows, factors)
    }

    /// Determinant by fraction-free Bareiss elimination on the cleared
    /// polynomial matrix (every division is exact, no gcds on the way).
    pub fn det(&self) -> Scalar {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Scalar::one();
        }
        let (rows, factors) = self.cleared();
        let num = bareiss_det(rows);
        let mut den = Poly::one();
        for f in &factors {
            den = den.mul(f);
        }
        Scalar::from_poly(num)
            .div(&Scalar::from_poly(den))
            .expect("row denominators are nonzero")
    }

    /// Inverse through the adjugate of the cleared polynomial matrix:
    /// `inv(M)_ij = cof_ji(M') d_j / det(M')`.
    pub fn inverse(&self) -> Result<Matrix, ExactError> {
        assert!(self.is_square());
        let n = self.rows;
        let (rows, factors) = self.cleared();
        let det = bareiss_det(rows.clone());
        if det.is_zero() {
            return Err(ExactError::Singular);
        }
        let det_scalar = Scalar::from_poly(det);
        let mut out = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = bareiss_det(strike(&rows, j, i));
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                let num = minor.mul(&factors[j]).mul_int(&num_bigint::BigInt::from(sign));
                out[(i, j)] = Scalar::from_poly(num).div(&det_scalar)?;
            }
        }
        Ok(out)
    }

    /// Characteristic polynomial `det(X I - M)`, monic, by the
    /// Faddeev-LeVerrier recurrence (exact over characteristic zero).
    pub fn char_poly(&self) -> UniPoly {
        assert!(self.is_square(), "char_poly needs a square matrix");
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut m = Matrix::zero(n, n);
        let mut c = Scalar::one();
        for k in 1..=n {
            // M_k = A (M_{k-1} + c_{k-1} I)
            let mut step = m.clone();
            for i in 0..n {
                step[(i, i)] = step[(i, i)].add(&c);
            }
            m = self.mul(&step);
            c = m
                .trace()
                .mul(&Scalar::from_fraction(-1, k as i64));
            coeffs[n - k] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    /// Minimal polynomial: the monic least-degree annihilator, found as the
    /// first linear dependency among vectorized powers of the matrix.
    pub fn min_poly(&self) -> UniPoly {
        assert!(self.is_square(), "min_poly needs a square matrix");
        let n = self.rows;
        let mut powers: Vec<Matrix> = vec![Matrix::identity(n)];
        for k in 1..=n {
            let prev = powers.last().unwrap();
            powers.push(self.mul(prev));
            // Solve sum_{i<k} c_i M^i = -M^k
            let cols: Vec<Vec<Scalar>> = powers[..k].iter().map(|p| p.vectorize()).collect();
            let system = Matrix::from_fn(n * n, k, |i, j| cols[j][i].clone());
            let target: Vec<Scalar> = powers[k].vectorize().iter().map(|x| x.negate()).collect();
            if let Ok((solution, _)) = system.solve_linear(&target) {
                let mut coeffs = solution;
                coeffs.push(Scalar::one());
                return UniPoly::new(coeffs);
            }
        }
        unreachable!("Cayley-Hamilton guarantees a dependency by degree n")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Evaluates a univariate polynomial at this matrix.
    pub fn eval_unipoly(&self, p: &UniPoly) -> Matrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Matrix::zero(n, n);
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = Matrix::identity(n);
            for _ in 0..k {
                term = term.mul(self);
            }
            acc = acc.add(&term.scale(c));
        }
        acc
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Fraction-free Bareiss determinant of a polynomial matrix.
fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign = 1i64;
    let mut prev = Poly::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(p) = ((k + 1)..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.divide_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        d.neg()
    } else {
        d
    }
}

/// Copy of a polynomial matrix with one row and one column removed.
fn strike(rows: &[Vec<Poly>], skip_row: usize, skip_col: usize) -> Vec<Vec<Poly>> {
    rows.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(j, _)| j != skip_col)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect()
}

/// Stacks the row-major vectorizations of `mats` as columns of one matrix.
pub fn stack_columns(mats: &[Vec<Scalar>]) -> Matrix {
    let rows = mats.first().map(|m| m.len()).unwrap_or(0);
    Matrix::from_fn(rows, mats.len(), |i, j| mats[j][i].clone())
}

/// Rank of the span of the given vectors.
pub fn span_rank(vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    stack_columns(vectors).rank()
}

/// True when `candidate` lies in the span of `basis` (exact rank test).
pub fn in_span(basis: &[Vec<Scalar>], candidate: &[Scalar]) -> bool {
    if candidate.iter().all(|x| x.is_zero()) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let r0 = span_rank(basis);
    let mut augmented = basis.to_vec();
    augmented.push(candidate.to_vec());
    span_rank(&augmented) == r0
}

/// True when two spans of vectors coincide.
pub fn same_span(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    if ra != rb {
        return false;
    }
    let mut joint = a.to_vec();
    joint.extend(b.iter().cloned());
    span_rank(&joint) == ra
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn kernel_examples() {
        // invertible -> empty kernel
        assert!(Matrix::identity(2).kernel_basis().is_empty());
        // zero matrix -> standard basis
        let z = Matrix::zero(2, 2);
        assert_eq!(
            z.kernel_basis(),
            vec![vec![s(1), s(0)], vec![s(0), s(1)]]
        );
        // rank-1 -> one normalized vector
        let m = Matrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.kernel_basis(), vec![vec![s(1), s(-1)]]);
    }

    #[test]
    fn solve_examples() {
        let (x, k) = Matrix::identity(2).solve_linear(&[s(3), s(5)]).unwrap();
        assert_eq!(x, vec![s(3), s(5)]);
        assert!(k.is_empty());

        let (x, k) = Matrix::zero(2, 2).solve_linear(&[s(0), s(0)]).unwrap();
        assert_eq!(x, vec![s(0), s(0)]);
        assert_eq!(k.len(), 2);

        let m = Matrix::from_int_rows(&[&[1, 1]]);
        let (x, k) = m.solve_linear(&[s(2)]).unwrap();
        assert_eq!(x, vec![s(2), s(0)]);
        assert_eq!(k, vec![vec![s(1), s(-1)]]);

        let m = Matrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert!(matches!(
            m.solve_linear(&[s(1), s(2)]),
            Err(ExactError::Inconsistent)
        ));
    }

    #[test]
    fn char_poly_examples() {
        // 2x2 identity -> (X-1)^2
        let p = Matrix::identity(2).char_poly();
        assert_eq!(p.coeffs(), &[s(1), s(-2), s(1)]);
        // rotation -> X^2 + 1
        let m = Matrix::from_int_rows(&[&[0, -1], &[1, 0]]);
        assert_eq!(m.char_poly().coeffs(), &[s(1), s(0), s(1)]);
        // diag(2,3) -> (X-2)(X-3)
        let m = Matrix::from_int_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(m.char_poly().coeffs(), &[s(6), s(-5), s(1)]);
    }

    #[test]
    fn min_poly_examples() {
        let p = Matrix::identity(3).min_poly();
        assert_eq!(p.coeffs(), &[s(-1), s(1)]);
        let m = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(m.min_poly().coeffs(), &[s(0), s(0), s(1)]);
        let m = Matrix::from_int_rows(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(m.min_poly().coeffs(), &[s(6), s(-5), s(1)]);
    }

    #[test]
    fn min_divides_char_and_annihilates() {
        let m = Matrix::from_int_rows(&[&[1, 2, 0], &[0, 1, 0], &[0, 0, 5]]);
        let mp = m.min_poly();
        let cp = m.char_poly();
        let (_, rem) = cp.div_rem(&mp);
        assert!(rem.is_zero(), "min poly must divide char poly");
        assert!(m.eval_unipoly(&mp).is_zero());
    }

    #[test]
    fn parametric_pivots_are_skipped_not_errors() {
        // [[a, a], [a, a]] over Q(a): rank 1 generically.
        let a = Scalar::param("mx_a");
        let m = Matrix::from_rows(vec![
            vec![a.clone(), a.clone()],
            vec![a.clone(), a.clone()],
        ]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_basis(), vec![vec![s(1), s(-1)]]);
    }
}
