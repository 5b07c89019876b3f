//! Class functions, character inner products, full character tables and
//! decomposition into irreducible constituents.
//!
//! Tables are computed by the Dixon-Schneider method: the class-algebra
//! matrices are simultaneously diagonalized over a prime field F_p with
//! p = 1 mod exponent(G), and the eigenvector data is lifted back to exact
//! cyclotomic values. Both orthogonality relations are verified before a
//! table is returned.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::{CycNum, Rat};
use crate::error::{Error, Result};
use crate::groups::{FiniteMatrixGroup, LinearCharacter};

/// A function constant on conjugacy classes, stored by class values.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<FiniteMatrixGroup>,
    values: Vec<CycNum>,
}

impl ClassFunction {
    pub fn new(group: &Arc<FiniteMatrixGroup>, values: Vec<CycNum>) -> Result<ClassFunction> {
        if values.len() != group.num_classes() {
            return Err(Error::BadInput(format!(
                "expected {} class values, got {}",
                group.num_classes(),
                values.len()
            )));
        }
        Ok(ClassFunction {
            group: Arc::clone(group),
            values,
        })
    }

    pub fn from_linear(chi: &LinearCharacter) -> ClassFunction {
        ClassFunction {
            group: Arc::clone(chi.group()),
            values: chi.class_values().to_vec(),
        }
    }

    /// The character of the regular representation: |G| at the identity.
    pub fn regular(group: &Arc<FiniteMatrixGroup>) -> ClassFunction {
        let mut values = vec![CycNum::zero(); group.num_classes()];
        values[group.class_of(0)] = CycNum::from_int(group.order() as i64);
        ClassFunction {
            group: Arc::clone(group),
            values,
        }
    }

    pub fn group(&self) -> &Arc<FiniteMatrixGroup> {
        &self.group
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    pub fn value_on_class(&self, c: usize) -> &CycNum {
        &self.values[c]
    }

    pub fn value_on_element(&self, i: usize) -> &CycNum {
        &self.values[self.group.class_of(i)]
    }

    /// Degree if this is a character: the value at the identity.
    pub fn degree_value(&self) -> &CycNum {
        &self.values[self.group.class_of(0)]
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a.clone() + b)
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a.clone() - b)
    }

    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a.clone() * b)
    }

    fn zip(
        &self,
        other: &ClassFunction,
        f: impl Fn(&CycNum, &CycNum) -> CycNum,
    ) -> Result<ClassFunction> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(ClassFunction {
            group: Arc::clone(&self.group),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// (1/|G|) sum over g of f(g) * conj(h(g)), computed classwise.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<CycNum> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let mut acc = CycNum::zero();
        for c in 0..self.group.num_classes() {
            let term = self.values[c].clone() * other.values[c].conj()
                * CycNum::from_int(self.group.class_size(c) as i64);
            acc = acc + term;
        }
        acc.try_div(&CycNum::from_int(self.group.order() as i64))
    }

    pub fn norm(&self) -> CycNum {
        self.inner_product(self).expect("same group")
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.values.iter()).finish()
    }
}

pub struct CharacterTable {
    group: Arc<FiniteMatrixGroup>,
    rows: Vec<ClassFunction>,
    degrees: Vec<u32>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteMatrixGroup> {
        &self.group
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Exact multiplicities of each irreducible in `f`; errors if any inner
    /// product is not a non-negative integer.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<(usize, u32, u32)>> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let m = f.inner_product(row)?;
            if m.is_zero() {
                continue;
            }
            let mult = m
                .as_rational()
                .filter(|r| r.is_integer() && **r > Rat::zero())
                .and_then(|r| r.to_integer().to_u32())
                .ok_or_else(|| Error::NotACharacter(i, format!("{m}")))?;
            out.push((i, mult, self.degrees[i]));
        }
        Ok(out)
    }
}

struct ModP {
    p: u64,
}

impl ModP {
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    /// Smallest primitive root mod p.
    fn primitive_root(&self) -> u64 {
        let phi = self.p - 1;
        let mut factors = Vec::new();
        let mut m = phi;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, phi / q) != 1))
            .expect("primitive root exists")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Gaussian elimination mod p; returns a basis of the kernel of `m` (rows x
/// cols, row-major).
fn kernel_mod_p(modp: &ModP, mut m: Vec<Vec<u64>>, cols: usize) -> Vec<Vec<u64>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for c in 0..cols {
        let Some(pr) = (r0..rows).find(|&r| m[r][c] % modp.p != 0) else {
            continue;
        };
        m.swap(r0, pr);
        let inv = modp.inv(m[r0][c]);
        for j in 0..cols {
            m[r0][j] = modp.mul(m[r0][j], inv);
        }
        for r in 0..rows {
            if r != r0 && m[r][c] % modp.p != 0 {
                let f = m[r][c];
                for j in 0..cols {
                    let t = modp.mul(f, m[r0][j]);
                    m[r][j] = modp.sub(m[r][j], t);
                }
            }
        }
        pivots.push(c);
        r0 += 1;
        if r0 == rows {
            break;
        }
    }
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = modp.sub(0, m[r][free]);
        }
        basis.push(v);
    }
    basis
}

fn mat_vec(modp: &ModP, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (&a, &b)| modp.add(acc, modp.mul(a, b)))
        })
        .collect()
}

/// Computes the full character table of `group`.
pub fn character_table(group: &Arc<FiniteMatrixGroup>) -> Result<CharacterTable> {
    let k = group.num_classes();
    let n = group.order() as u64;
    let e = group.exponent() as u64;

    // Prime with p = 1 mod exponent and p large enough that degrees and
    // eigenvalue multiplicities (all < sqrt |G|) lift uniquely from F_p.
    let lower = 2 * (n as f64).sqrt().ceil() as u64;
    let mut p = e + 1;
    while p < lower || !is_prime(p) {
        p += e;
    }
    let modp = ModP { p };

    // Class-algebra matrices: m_i[j][l] = a_{ij}^l, the coefficient of K_l in
    // K_i K_j, counted as #{ x in C_i : x^{-1} z_l in C_j }. An eigenvector
    // with m_i v = omega(i) v has v_l proportional to omega(l).
    let mut class_mats: Vec<Vec<Vec<u64>>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut mi = vec![vec![0u64; k]; k];
        for l in 0..k {
            let z = group.class_rep(l);
            for &x in &group.conjugacy_classes()[i] {
                let j = group.class_of(group.mul(group.inv(x), z));
                mi[j][l] += 1;
            }
        }
        class_mats.push(mi);
    }

    // Split the class-function space into common eigenlines.
    let id_class = group.class_of(0);
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|j| {
            let mut v = vec![0u64; k];
            v[j] = 1;
            v
        })
        .collect()];
    for mi in &class_mats {
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            // Restriction of mi to the span of `basis`: images expressed in
            // the basis by solving a linear system.
            let d = basis.len();
            let mut rest = vec![vec![0u64; d]; d];
            for (bi, b) in basis.iter().enumerate() {
                let img = mat_vec(&modp, mi, b);
                let coords = solve_in_span(&modp, &basis, &img).ok_or_else(|| {
                    Error::TableFailure("class-algebra subspace not invariant".into())
                })?;
                for (bj, c) in coords.into_iter().enumerate() {
                    rest[bj][bi] = c;
                }
            }
            let mut split = Vec::new();
            let mut covered = 0;
            for lambda in 0..modp.p {
                let mut shifted = rest.clone();
                for t in 0..d {
                    shifted[t][t] = modp.sub(shifted[t][t], lambda);
                }
                let ker = kernel_mod_p(&modp, shifted, d);
                if ker.is_empty() {
                    continue;
                }
                covered += ker.len();
                // Lift kernel coordinates back to class-function space.
                let lifted: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|coords| {
                        let mut v = vec![0u64; k];
                        for (bi, &c) in coords.iter().enumerate() {
                            for j in 0..k {
                                v[j] = modp.add(v[j], modp.mul(c, basis[bi][j]));
                            }
                        }
                        v
                    })
                    .collect();
                split.push(lifted);
                if covered == d {
                    break;
                }
            }
            if covered != d {
                return Err(Error::TableFailure(
                    "class-algebra matrix not diagonalizable".into(),
                ));
            }
            next.extend(split);
        }
        spaces = next;
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
    }
    if spaces.len() != k || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::TableFailure(
            "could not split class algebra into eigenlines".into(),
        ));
    }

    // Each eigenline, normalized at the identity class, carries the values
    // omega(j) = |C_j| chi(g_j) / chi(1) mod p.
    let mut raw: Vec<(u32, Vec<u64>)> = Vec::with_capacity(k);
    for space in &spaces {
        let v = &space[0];
        if v[id_class] % p == 0 {
            return Err(Error::TableFailure("eigenvector vanishes at identity".into()));
        }
        let scale = modp.inv(v[id_class]);
        let omega: Vec<u64> = v.iter().map(|&x| modp.mul(x, scale)).collect();

        // Degree from the first orthogonality relation.
        let mut s = 0u64;
        for j in 0..k {
            let jstar = group.inverse_class(j);
            let nj_inv = modp.inv(group.class_size(j) as u64);
            s = modp.add(s, modp.mul(modp.mul(omega[j], omega[jstar]), nj_inv));
        }
        if s == 0 {
            return Err(Error::TableFailure("degenerate orthogonality sum".into()));
        }
        let d2 = modp.mul(n % p, modp.inv(s));
        let degree = (1..=((n as f64).sqrt() as u64 + 1))
            .find(|&d| modp.mul(d, d) == d2)
            .ok_or_else(|| Error::TableFailure("no degree lifts the eigen data".into()))?;

        // chi(g_j) mod p.
        let values: Vec<u64> = (0..k)
            .map(|j| modp.mul(modp.mul(degree, omega[j]), modp.inv(group.class_size(j) as u64)))
            .collect();
        raw.push((degree as u32, values));
    }

    raw.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

    // Lift to cyclotomic values: chi(g) = sum_u n_u zeta_m^u where n_u is the
    // multiplicity of the eigenvalue zeta_m^u, recovered by a discrete
    // Fourier sum over the power map.
    let w = modp.primitive_root();
    let mut rows = Vec::with_capacity(k);
    let mut degrees = Vec::with_capacity(k);
    for (degree, values) in &raw {
        let mut cyc_values = Vec::with_capacity(k);
        for j in 0..k {
            let m = group.element_order(group.class_rep(j)) as u64;
            let z = modp.pow(w, (p - 1) / m);
            let m_inv = modp.inv(m % p);
            let mut acc = CycNum::zero();
            for u in 0..m {
                let mut s = 0u64;
                for t in 0..m {
                    let cls = group.power_class(j, t as i64);
                    let zinv = modp.inv(modp.pow(z, (u * t) % (p - 1)));
                    s = modp.add(s, modp.mul(values[cls], zinv));
                }
                let nu = modp.mul(s, m_inv);
                if nu == 0 {
                    continue;
                }
                if nu >= p / 2 {
                    return Err(Error::TableFailure(format!(
                        "eigenvalue multiplicity {nu} too large to lift mod {p}"
                    )));
                }
                let term = CycNum::root_of_unity(m as u32, u as u32)?
                    * CycNum::from_int(nu as i64);
                acc = acc + term;
            }
            cyc_values.push(acc);
        }
        rows.push(ClassFunction {
            group: Arc::clone(group),
            values: cyc_values,
        });
        degrees.push(*degree);
    }

    // Verify both orthogonality relations exactly.
    let deg_sum: u64 = degrees.iter().map(|&d| (d as u64) * (d as u64)).sum();
    if deg_sum != n {
        return Err(Error::TableFailure(format!(
            "degree squares sum to {deg_sum}, group order is {n}"
        )));
    }
    for i in 0..k {
        for j in 0..k {
            let ip = rows[i].inner_product(&rows[j])?;
            let expect = if i == j { CycNum::one() } else { CycNum::zero() };
            if ip != expect {
                return Err(Error::TableFailure(format!(
                    "row orthogonality fails at ({i},{j}): {ip}"
                )));
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            let mut acc = CycNum::zero();
            for row in &rows {
                acc = acc + row.values[a].clone() * row.values[b].conj();
            }
            let expect = if a == b {
                CycNum::from_int((n as i64) / (group.class_size(a) as i64))
            } else {
                CycNum::zero()
            };
            if acc != expect {
                return Err(Error::TableFailure(format!(
                    "column orthogonality fails at ({a},{b})"
                )));
            }
        }
    }

    Ok(CharacterTable {
        group: Arc::clone(group),
        rows,
        degrees,
    })
}

/// Coordinates of `v` in the span of `basis` mod p, if it lies there.
fn solve_in_span(modp: &ModP, basis: &[Vec<u64>], v: &[u64]) -> Option<Vec<u64>> {
    let d = basis.len();
    let k = v.len();
    // augmented system: columns are basis vectors, rhs v
    let mut m: Vec<Vec<u64>> = (0..k)
        .map(|j| {
            let mut row: Vec<u64> = basis.iter().map(|b| b[j]).collect();
            row.push(v[j]);
            row
        })
        .collect();
    let mut coords = vec![0u64; d];
    let mut r0 = 0;
    let rows = m.len();
    let mut pivot_rows = Vec::new();
    for c in 0..d {
        let Some(pr) = (r0..rows).find(|&r| m[r][c] % modp.p != 0) else {
            continue;
        };
        m.swap(r0, pr);
        let inv = modp.inv(m[r0][c]);
        for j in 0..=d {
            m[r0][j] = modp.mul(m[r0][j], inv);
        }
        for r in 0..rows {
            if r != r0 && m[r][c] % modp.p != 0 {
                let f = m[r][c];
                for j in 0..=d {
                    let t = modp.mul(f, m[r0][j]);
                    m[r][j] = modp.sub(m[r][j], t);
                }
            }
        }
        pivot_rows.push((r0, c));
        r0 += 1;
    }
    for r in r0..rows {
        if m[r][d] % modp.p != 0 {
            return None;
        }
    }
    for &(r, c) in &pivot_rows {
        coords[c] = m[r][d];
    }
    Some(coords)
}

/// Memoized table store so repeated analyses of one group reuse the table.
pub struct TableCache {
    cache: std::sync::Mutex<HashMap<usize, Arc<CharacterTable>>>,
}

impl TableCache {
    pub fn new() -> TableCache {
        TableCache {
            cache: std::sync::Mutex::new(HashMap::new()),
        }
    }

    pub fn table(&self, group: &Arc<FiniteMatrixGroup>) -> Result<Arc<CharacterTable>> {
        let key = Arc::as_ptr(group) as usize;
        if let Some(t) = self.cache.lock().unwrap().get(&key) {
            return Ok(Arc::clone(t));
        }
        let t = Arc::new(character_table(group)?);
        self.cache.lock().unwrap().insert(key, Arc::clone(&t));
        Ok(t)
    }
}

impl Default for TableCache {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::closure;
    use crate::matrix::{Matrix, RepMatrix};

    fn s5_group() -> Arc<FiniteMatrixGroup> {
        let mut t = RepMatrix::zero(5, 5);
        for (i, j) in [(0, 1), (1, 0), (2, 2), (3, 3), (4, 4)] {
            t[(i, j)] = CycNum::one();
        }
        let mut c = RepMatrix::zero(5, 5);
        for i in 0..5 {
            c[((i + 1) % 5, i)] = CycNum::one();
        }
        Arc::new(closure(&[t, c], 200).unwrap())
    }

    fn q8_group() -> Arc<FiniteMatrixGroup> {
        let i = CycNum::zeta(4).unwrap();
        let one = CycNum::one();
        let gens = vec![
            Matrix::from_rows(vec![
                vec![i.clone(), CycNum::zero()],
                vec![CycNum::zero(), i.conj()],
            ]),
            Matrix::from_rows(vec![
                vec![CycNum::zero(), one.clone()],
                vec![CycNum::zero() - one, CycNum::zero()],
            ]),
        ];
        Arc::new(closure(&gens, 20).unwrap())
    }

    #[test]
    fn s5_table_degrees() {
        let g = s5_group();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 4, 4, 5, 5, 6]);
    }

    #[test]
    fn q8_table_degrees() {
        let g = q8_group();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
    }

    #[test]
    fn trivial_inner_product() {
        let g = q8_group();
        let triv = ClassFunction::from_linear(&LinearCharacter::trivial(&g));
        assert!(triv.norm().is_one());
    }

    #[test]
    fn regular_character_decomposes_by_degree() {
        let g = q8_group();
        let t = character_table(&g).unwrap();
        let parts = t.decompose(&ClassFunction::regular(&g)).unwrap();
        assert_eq!(parts.len(), t.rows().len());
        for (_, mult, degree) in parts {
            assert_eq!(mult, degree);
        }
    }

    #[test]
    fn permutation_character_decomposition() {
        // 5-point permutation character of S5 = trivial + standard.
        let g = s5_group();
        let t = character_table(&g).unwrap();
        let perm = ClassFunction::new(
            &g,
            (0..g.num_classes())
                .map(|c| g.element(g.class_rep(c)).trace())
                .collect(),
        )
        .unwrap();
        let parts = t.decompose(&perm).unwrap();
        let degrees: Vec<u32> = parts.iter().map(|&(_, m, d)| {
            assert_eq!(m, 1);
            d
        }).collect();
        assert_eq!(degrees, vec![1, 4]);
    }

    #[test]
    fn non_character_rejected() {
        let g = q8_group();
        let t = character_table(&g).unwrap();
        let mut values = vec![CycNum::zero(); g.num_classes()];
        values[g.class_of(0)] = CycNum::from_frac(1, 2);
        let f = ClassFunction::new(&g, values).unwrap();
        assert!(matches!(t.decompose(&f), Err(Error::NotACharacter(_, _))));
    }

    #[test]
    fn linear_rows_match_linear_characters() {
        let g = s5_group();
        let t = character_table(&g).unwrap();
        let lin = g.linear_characters();
        for chi in &lin {
            let f = ClassFunction::from_linear(chi);
            assert!(t.rows().iter().any(|r| *r == f));
        }
    }
}
