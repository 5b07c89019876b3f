//! Dense exact linear algebra over a field scalar, plus the functorial matrix
//! constructions (tensor, exterior square, symmetric powers) and commutant
//! computation.
//!
//! Generic over the scalar so the same elimination code serves cyclotomic and
//! plain rational matrices; everything is deterministic (first-nonzero pivot
//! scanning in row-major order).

use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::cyclotomic::{CycNum, Rat};

pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
{
}

pub trait FieldScalar: Scalar + Div<Output = Self> {
    fn from_usize(k: usize) -> Self {
        let mut acc = Self::zero();
        for _ in 0..k {
            acc = acc + Self::one();
        }
        acc
    }
}

impl FieldScalar for CycNum {}
impl FieldScalar for Rat {}

/// Concrete matrix type used throughout the group and representation layers.
pub type RepMatrix = Matrix<CycNum>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim, dim);
        for i in 0..dim {
            m[(i, i)] = T::one();
        }
        m
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

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a.clone() * b.clone();
                        let cur = std::mem::replace(&mut out[(i, j)], T::zero());
                        out[(i, j)] = cur + t;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn trace(&self) -> T {
        debug_assert!(self.is_square());
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// Kronecker product on the basis e_i (x) e_j ordered lexicographically.
    pub fn tensor(&self, other: &Self) -> Self {
        let (ra, ca) = (self.rows, self.cols);
        let (rb, cb) = (other.rows, other.cols);
        let mut out = Self::zero(ra * rb, ca * cb);
        for i in 0..ra {
            for j in 0..rb {
                for k in 0..ca {
                    for l in 0..cb {
                        out[(i * rb + j, k * cb + l)] =
                            self[(i, k)].clone() * other[(j, l)].clone();
                    }
                }
            }
        }
        out
    }

    /// Exterior square on the ordered basis e_i ^ e_j, i < j, lexicographic.
    /// For dim 4 this is exactly the basis w_1..w_6 used by the golden tests.
    pub fn wedge2(&self) -> Self {
        assert!(self.is_square());
        let d = self.rows;
        let pairs: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| ((i + 1)..d).map(move |j| (i, j)))
            .collect();
        let m = pairs.len();
        let mut out = Self::zero(m, m);
        for (r, &(i, j)) in pairs.iter().enumerate() {
            for (c, &(k, l)) in pairs.iter().enumerate() {
                out[(r, c)] = self[(i, k)].clone() * self[(j, l)].clone()
                    - self[(i, l)].clone() * self[(j, k)].clone();
            }
        }
        out
    }

    /// k-th symmetric power on the monomial basis (sorted index multisets in
    /// lexicographic order). For diag(a, b) and k = 2 this gives
    /// diag(a^2, ab, b^2).
    pub fn sym_power(&self, k: usize) -> Self {
        assert!(self.is_square());
        let d = self.rows;
        let basis = multisets(d, k);
        let index: std::collections::HashMap<Vec<usize>, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, b)| (b, i))
            .collect();
        let m = basis.len();
        let mut out = Self::zero(m, m);
        for (c, mu) in basis.iter().enumerate() {
            // Expand the product of the images of e_i for i in mu.
            let mut poly: std::collections::HashMap<Vec<usize>, T> =
                std::collections::HashMap::new();
            poly.insert(Vec::new(), T::one());
            for &i in mu {
                let mut next: std::collections::HashMap<Vec<usize>, T> =
                    std::collections::HashMap::new();
                for (mono, coeff) in &poly {
                    for r in 0..d {
                        let a = &self[(r, i)];
                        if a.is_zero() {
                            continue;
                        }
                        let mut m2 = mono.clone();
                        m2.push(r);
                        m2.sort_unstable();
                        let t = coeff.clone() * a.clone();
                        let cur = next.remove(&m2).unwrap_or_else(T::zero);
                        next.insert(m2, cur + t);
                    }
                }
                poly = next;
            }
            for (mono, coeff) in poly {
                out[(index[&mono], c)] = coeff;
            }
        }
        out
    }

    pub fn sym2(&self) -> Self {
        self.sym_power(2)
    }
}

fn multisets(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(d: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(d, k, i, cur, out);
            cur.pop();
        }
    }
    rec(d, k, 0, &mut cur, &mut out);
    out
}

/// Monic characteristic polynomial, coefficients stored low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharPoly<T> {
    pub coeffs: Vec<T>,
}

impl<T: FieldScalar> CharPoly<T> {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let t = a.clone() * b.clone();
                    let cur = std::mem::replace(&mut coeffs[i + j], T::zero());
                    coeffs[i + j] = cur + t;
                }
            }
        }
        CharPoly { coeffs }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[T]) -> Self {
        let mut coeffs = vec![T::one()];
        for r in roots {
            // multiply by (x - r)
            let mut next = vec![T::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + c.clone();
                next[i] = next[i].clone() - r.clone() * c.clone();
            }
            coeffs = next;
        }
        CharPoly { coeffs }
    }

    /// Substitutes x^2 for x (the fingerprint of an inert-place induction).
    pub fn compose_x_squared(&self) -> Self {
        let mut coeffs = vec![T::zero(); 2 * self.coeffs.len() - 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        CharPoly { coeffs }
    }
}

impl<T: FieldScalar + fmt::Display> fmt::Display for CharPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<T: FieldScalar> Matrix<T> {
    /// Row-reduces in place; returns pivot columns. Deterministic: for each
    /// column the first row with a nonzero entry is chosen.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r0 = 0;
        for c in 0..self.cols {
            let Some(pr) = (r0..self.rows).find(|&r| !self[(r, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r0, pr);
            let inv = T::one() / self[(r0, c)].clone();
            for j in 0..self.cols {
                self[(r0, j)] = self[(r0, j)].clone() * inv.clone();
            }
            for r in 0..self.rows {
                if r != r0 && !self[(r, c)].is_zero() {
                    let f = self[(r, c)].clone();
                    for j in 0..self.cols {
                        let t = f.clone() * self[(r0, j)].clone();
                        self[(r, j)] = self[(r, j)].clone() - t;
                    }
                }
            }
            pivots.push(c);
            r0 += 1;
            if r0 == self.rows {
                break;
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the right null space, one vector per free column, in column
    /// order (deterministic).
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let mut red = self.clone();
        let pivots = red.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = T::zero() - red[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        let mut red = self.clone();
        red.rref().len()
    }

    pub fn det(&self) -> T {
        assert!(self.is_square());
        let mut m = self.clone();
        let d = m.rows;
        let mut det = T::one();
        for c in 0..d {
            let Some(pr) = (c..d).find(|&r| !m[(r, c)].is_zero()) else {
                return T::zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = T::zero() - det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            let inv = T::one() / piv;
            for r in (c + 1)..d {
                if !m[(r, c)].is_zero() {
                    let f = m[(r, c)].clone() * inv.clone();
                    for j in c..d {
                        let t = f.clone() * m[(c, j)].clone();
                        m[(r, j)] = m[(r, j)].clone() - t;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let d = self.rows;
        let mut aug = Self::zero(d, 2 * d);
        for i in 0..d {
            for j in 0..d {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, d + i)] = T::one();
        }
        let pivots = aug.rref();
        if pivots.len() < d || pivots[d - 1] >= d {
            return None;
        }
        let mut out = Self::zero(d, d);
        for i in 0..d {
            for j in 0..d {
                out[(i, j)] = aug[(i, d + j)].clone();
            }
        }
        Some(out)
    }

    /// Deterministic basis of the column space: the pivot columns found by
    /// row reduction, kept in their original order.
    pub fn column_basis(&self) -> Matrix<T> {
        let mut red = self.clone();
        let pivots = red.rref();
        let mut out = Matrix::zero(self.rows, pivots.len());
        for (j, &c) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                out[(i, j)] = self[(i, c)].clone();
            }
        }
        out
    }

    /// Solves `self * X = rhs` for a matrix with full column rank; returns
    /// None if the system is inconsistent or the rank is deficient.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let r = self.cols;
        let mut aug = Matrix::zero(self.rows, r + rhs.cols);
        for i in 0..self.rows {
            for j in 0..r {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                aug[(i, r + j)] = rhs[(i, j)].clone();
            }
        }
        let pivots = aug.rref();
        if pivots.len() < r || pivots.iter().take(r).enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        // any pivot beyond the unknown block means an inconsistent system
        if pivots.len() > r {
            return None;
        }
        let mut x = Matrix::zero(r, rhs.cols);
        for i in 0..r {
            for j in 0..rhs.cols {
                x[(i, j)] = aug[(i, r + j)].clone();
            }
        }
        Some(x)
    }

    /// Characteristic polynomial by the Faddeev-LeVerrier recurrence.
    pub fn charpoly(&self) -> CharPoly<T> {
        assert!(self.is_square());
        let d = self.rows;
        let mut cs = vec![T::zero(); d + 1];
        cs[d] = T::one();
        let mut mk = self.clone();
        for k in 1..=d {
            let ck = T::zero() - mk.trace() / T::from_usize(k);
            cs[d - k] = ck.clone();
            if k < d {
                let mut shifted = mk;
                for i in 0..d {
                    shifted[(i, i)] = shifted[(i, i)].clone() + ck.clone();
                }
                mk = self.matmul(&shifted);
            }
        }
        CharPoly { coeffs: cs }
    }
}

/// Dimension and basis of the joint commutant { X : X M_i = M_i X for all i }.
pub fn commutant<T: FieldScalar>(mats: &[Matrix<T>]) -> (usize, Vec<Matrix<T>>) {
    assert!(!mats.is_empty());
    let d = mats[0].dim();
    assert!(mats.iter().all(|m| m.dim() == d));
    // Unknown X flattened row-major; rows of the system are the entries of
    // X M - M X for each M.
    let mut rows = Vec::new();
    for m in mats {
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![T::zero(); d * d];
                // (XM)_{ij} = sum_k X_{ik} M_{kj};  (MX)_{ij} = sum_k M_{ik} X_{kj}
                for k in 0..d {
                    row[i * d + k] = row[i * d + k].clone() + m[(k, j)].clone();
                    row[k * d + j] = row[k * d + j].clone() - m[(i, k)].clone();
                }
                rows.push(row);
            }
        }
    }
    let sys = Matrix::from_rows(rows);
    let basis = sys
        .kernel()
        .into_iter()
        .map(|v| Matrix::new(d, d, v))
        .collect::<Vec<_>>();
    (basis.len(), basis)
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.data[i * self.cols + j].to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNum;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn diag(entries: &[i64]) -> RepMatrix {
        let d = entries.len();
        let mut m = RepMatrix::zero(d, d);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = CycNum::from_int(e);
        }
        m
    }

    fn random_matrix(rng: &mut ChaCha8Rng, d: usize) -> RepMatrix {
        RepMatrix::new(
            d,
            d,
            (0..d * d)
                .map(|_| CycNum::from_int(rng.gen_range(-3..4)))
                .collect(),
        )
    }

    fn random_invertible(rng: &mut ChaCha8Rng, d: usize) -> RepMatrix {
        loop {
            let m = random_matrix(rng, d);
            if !m.det().is_zero() {
                return m;
            }
        }
    }

    #[test]
    fn wedge2_identity() {
        assert_eq!(RepMatrix::identity(4).wedge2(), RepMatrix::identity(6));
    }

    #[test]
    fn wedge2_diagonal_pair_products() {
        assert_eq!(diag(&[2, 3, 5, 7]).wedge2(), diag(&[6, 10, 14, 15, 21, 35]));
    }

    #[test]
    fn sym2_diagonal() {
        assert_eq!(diag(&[2, 3]).sym2(), diag(&[4, 6, 9]));
    }

    #[test]
    fn tensor_diagonal() {
        assert_eq!(
            diag(&[2, 3]).tensor(&diag(&[5, 7])),
            diag(&[10, 14, 15, 21])
        );
    }

    #[test]
    fn wedge2_of_tensor_eigen_multiset() {
        // Lambda^2(t1 (x) t2) with t1 = diag(2,3), t2 = diag(5,7):
        // pair products of {10, 14, 15, 21}.
        let m = diag(&[2, 3]).tensor(&diag(&[5, 7])).wedge2();
        let expect = diag(&[140, 210, 150, 210, 294, 315]);
        // compare as multisets via charpoly
        assert_eq!(m.charpoly(), expect.charpoly());
    }

    #[test]
    fn charpoly_small() {
        let cp = diag(&[2, 3]).charpoly();
        let c: Vec<CycNum> = vec![
            CycNum::from_int(6),
            CycNum::from_int(-5),
            CycNum::from_int(1),
        ];
        assert_eq!(cp.coeffs, c);
    }

    #[test]
    fn kernel_of_zero() {
        assert_eq!(RepMatrix::zero(3, 3).kernel().len(), 3);
    }

    #[test]
    fn commutant_of_identity() {
        let (d, _) = commutant(&[RepMatrix::identity(3)]);
        assert_eq!(d, 9);
    }

    #[test]
    fn functors_are_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = random_invertible(&mut rng, 3);
            let b = random_invertible(&mut rng, 3);
            let ab = a.matmul(&b);
            assert_eq!(ab.wedge2(), a.wedge2().matmul(&b.wedge2()));
            assert_eq!(ab.sym2(), a.sym2().matmul(&b.sym2()));
            assert_eq!(ab.tensor(&ab), a.tensor(&a).matmul(&b.tensor(&b)));
            assert_eq!(ab.sym_power(3), a.sym_power(3).matmul(&b.sym_power(3)));
        }
    }

    #[test]
    fn wedge_plus_sym_dimension() {
        let m = diag(&[1, 2, 3, 4]);
        assert_eq!(
            m.wedge2().charpoly().degree() + m.sym2().charpoly().degree(),
            16
        );
    }

    #[test]
    fn charpoly_conjugation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let m = random_matrix(&mut rng, 4);
            let p = random_invertible(&mut rng, 4);
            let conj = p.matmul(&m).matmul(&p.inverse().unwrap());
            assert_eq!(conj.charpoly(), m.charpoly());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let m = random_invertible(&mut rng, 4);
            assert!(m.matmul(&m.inverse().unwrap()).is_identity());
        }
    }

    #[test]
    fn det_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let a = random_matrix(&mut rng, 3);
            let b = random_matrix(&mut rng, 3);
            assert_eq!(
                a.matmul(&b).det(),
                a.det().try_mul(&b.det()).unwrap()
            );
        }
    }
}
