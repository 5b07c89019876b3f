//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! Every value is kept in a canonical form: coefficients over the power basis
//! `1, zeta, ..., zeta^(phi(n)-1)` reduced modulo the n-th cyclotomic
//! polynomial, with the conductor lowered to the minimal one containing the
//! value. Two values are equal iff their canonical forms are identical, which
//! makes `Eq`/`Hash` structural.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, Mutex};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

pub type Rat = BigRational;

static CONDUCTOR_CAP: AtomicU32 = AtomicU32::new(120);

/// Adjusts the largest conductor arithmetic is allowed to produce.
pub fn set_conductor_cap(cap: u32) {
    CONDUCTOR_CAP.store(cap, Ordering::SeqCst);
}

pub fn conductor_cap() -> u32 {
    CONDUCTOR_CAP.load(Ordering::SeqCst)
}

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn prime_factors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// Integer coefficients of the n-th cyclotomic polynomial, low degree first.
fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    static CACHE: Lazy<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(p) = CACHE.lock().unwrap().get(&n) {
        return p.as_ref().clone();
    }
    // (x^n - 1) divided by the cyclotomic polynomials of all proper divisors.
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_poly(d);
            poly = int_poly_div_exact(&poly, &q);
        }
    }
    CACHE
        .lock()
        .unwrap()
        .insert(n, Arc::new(poly.clone()));
    poly
}

fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            for j in 0..=dd {
                rem[k + j] -= &c * &den[j];
            }
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

struct Conductor {
    phi: usize,
    /// Monic minimal polynomial of zeta_n, rational coefficients, low first.
    min_poly: Vec<Rat>,
}

fn conductor_data(n: u32) -> Arc<Conductor> {
    static CACHE: Lazy<Mutex<HashMap<u32, Arc<Conductor>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    let mut cache = CACHE.lock().unwrap();
    cache
        .entry(n)
        .or_insert_with(|| {
            let ip = cyclotomic_poly(n);
            let min_poly = ip.iter().map(|c| Rat::from(c.clone())).collect();
            Arc::new(Conductor {
                phi: euler_phi(n) as usize,
                min_poly,
            })
        })
        .clone()
}

/// Remainder of `poly` modulo the minimal polynomial of zeta_n, truncated to
/// length phi(n).
fn reduce_mod_min_poly(cond: &Conductor, poly: &mut Vec<Rat>) {
    let phi = cond.phi;
    while poly.len() > phi {
        let deg = poly.len() - 1;
        let c = poly.pop().unwrap();
        if !c.is_zero() {
            let shift = deg - phi;
            for j in 0..phi {
                let t = &c * &cond.min_poly[j];
                poly[shift + j] -= t;
            }
        }
        while poly.len() > phi && poly.last().map_or(false, |c| c.is_zero()) {
            poly.pop();
        }
    }
    poly.resize(phi, Rat::zero());
}

/// An exact element of a cyclotomic field, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    n: u32,
    coeffs: Vec<Rat>,
}

impl CycNum {
    /// Builds a value at conductor `n` from dense power-basis coefficients of
    /// arbitrary length (exponents are folded modulo n) and canonicalizes.
    pub fn from_dense(n: u32, dense: &[Rat]) -> CycNum {
        let mut folded = vec![Rat::zero(); n as usize];
        for (j, c) in dense.iter().enumerate() {
            if !c.is_zero() {
                folded[j % n as usize] += c;
            }
        }
        let cond = conductor_data(n);
        reduce_mod_min_poly(&cond, &mut folded);
        Self::canonical(n, folded)
    }

    fn canonical(mut n: u32, mut coeffs: Vec<Rat>) -> CycNum {
        coeffs.resize(euler_phi(n) as usize, Rat::zero());
        loop {
            if coeffs[1..].iter().all(|c| c.is_zero()) {
                let c0 = coeffs.into_iter().next().unwrap();
                return CycNum {
                    n: 1,
                    coeffs: vec![c0],
                };
            }
            let mut reduced = false;
            for p in prime_factors(n) {
                let d = n / p;
                if d == 0 {
                    continue;
                }
                if lies_in_subfield(n, &coeffs, d) {
                    coeffs = rewrite_in_subfield(n, &coeffs, d);
                    n = d;
                    reduced = true;
                    break;
                }
            }
            if !reduced {
                return CycNum { n, coeffs };
            }
        }
    }

    pub fn zero() -> CycNum {
        CycNum {
            n: 1,
            coeffs: vec![Rat::zero()],
        }
    }

    pub fn one() -> CycNum {
        CycNum {
            n: 1,
            coeffs: vec![Rat::one()],
        }
    }

    pub fn from_rat(r: Rat) -> CycNum {
        CycNum {
            n: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(k: i64) -> CycNum {
        Self::from_rat(Rat::from(BigInt::from(k)))
    }

    pub fn from_frac(num: i64, den: i64) -> CycNum {
        Self::from_rat(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    /// A primitive n-th root of unity.
    pub fn zeta(n: u32) -> Result<CycNum> {
        Self::root_of_unity(n, 1)
    }

    /// zeta_n^k.
    pub fn root_of_unity(n: u32, k: u32) -> Result<CycNum> {
        let cap = conductor_cap();
        if n > cap {
            return Err(Error::ConductorOverflow(n, cap));
        }
        let mut dense = vec![Rat::zero(); n as usize];
        dense[(k % n) as usize] = Rat::one();
        Ok(Self::from_dense(n, &dense))
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        if self.n == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Canonical coefficients (length phi(conductor)).
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Re-expresses the value at conductor `m`; the result is reduced modulo
    /// the m-th cyclotomic polynomial but the conductor is not re-minimized.
    pub fn embedded_coeffs(&self, m: u32) -> Result<Vec<Rat>> {
        if m % self.n != 0 {
            return Err(Error::NotAMultiple(m, self.n));
        }
        let cap = conductor_cap();
        if m > cap {
            return Err(Error::ConductorOverflow(m, cap));
        }
        let scale = (m / self.n) as usize;
        let mut dense = vec![Rat::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[(j * scale) % m as usize] += c;
            }
        }
        let cond = conductor_data(m);
        reduce_mod_min_poly(&cond, &mut dense);
        Ok(dense)
    }

    fn join(&self, other: &CycNum) -> Result<(u32, Vec<Rat>, Vec<Rat>)> {
        let m = lcm(self.n, other.n);
        let cap = conductor_cap();
        if m > cap {
            return Err(Error::ConductorOverflow(m, cap));
        }
        Ok((m, self.embedded_coeffs(m)?, other.embedded_coeffs(m)?))
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum> {
        let (m, mut a, b) = self.join(other)?;
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x += y;
        }
        Ok(CycNum::canonical_from_reduced(m, a))
    }

    pub fn try_sub(&self, other: &CycNum) -> Result<CycNum> {
        let (m, mut a, b) = self.join(other)?;
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x -= y;
        }
        Ok(CycNum::canonical_from_reduced(m, a))
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum> {
        let (m, a, b) = self.join(other)?;
        let mut prod = vec![Rat::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let cond = conductor_data(m);
        reduce_mod_min_poly(&cond, &mut prod);
        Ok(CycNum::canonical_from_reduced(m, prod))
    }

    fn canonical_from_reduced(n: u32, coeffs: Vec<Rat>) -> CycNum {
        CycNum::canonical(n, coeffs)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against the
    /// (irreducible) minimal polynomial.
    pub fn try_inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.n == 1 {
            return Ok(CycNum::from_rat(self.coeffs[0].recip()));
        }
        let cond = conductor_data(self.n);
        let inv = poly_mod_inverse(&self.coeffs, &cond.min_poly);
        Ok(CycNum::canonical_from_reduced(self.n, inv))
    }

    pub fn try_div(&self, other: &CycNum) -> Result<CycNum> {
        self.try_mul(&other.try_inv()?)
    }

    /// Complex conjugation (the Galois automorphism zeta -> zeta^(n-1)).
    pub fn conj(&self) -> CycNum {
        if self.n == 1 {
            return self.clone();
        }
        let mapped = galois_image(self.n, &self.coeffs, self.n - 1);
        CycNum::canonical_from_reduced(self.n, mapped)
    }

    /// Applies the automorphism zeta_n -> zeta_n^k; `k` must be coprime to the
    /// conductor of the value (checked against the value's own conductor).
    pub fn galois(&self, k: u32) -> Result<CycNum> {
        if gcd(k % self.n, self.n) != 1 && self.n > 1 {
            return Err(Error::BadInput(format!(
                "galois exponent {k} not coprime to conductor {}",
                self.n
            )));
        }
        Ok(CycNum::canonical_from_reduced(
            self.n,
            galois_image(self.n, &self.coeffs, k % self.n),
        ))
    }

    /// Multiplicative order if the value is a root of unity of order <= max.
    pub fn order_as_root_of_unity(&self, max: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=max {
            if acc.is_one() {
                return Some(k);
            }
            acc = acc.try_mul(self).ok()?;
        }
        None
    }

    /// Numerical shadow under the embedding zeta_n -> exp(2 pi i / n).
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = rat_to_f64(c);
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / (self.n as f64);
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }

    pub fn abs2_approx(&self) -> f64 {
        let (re, im) = self.approx();
        re * re + im * im
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // Good enough for the numerical shadow: values in this crate stay small.
    let fnum: f64 = num.to_string().parse().unwrap_or(f64::NAN);
    let fden: f64 = den.to_string().parse().unwrap_or(f64::NAN);
    fnum / fden
}

fn galois_image(n: u32, coeffs: &[Rat], k: u32) -> Vec<Rat> {
    let mut dense = vec![Rat::zero(); n as usize];
    for (j, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            dense[(j * k as usize) % n as usize] += c;
        }
    }
    let cond = conductor_data(n);
    reduce_mod_min_poly(&cond, &mut dense);
    dense
}

fn lies_in_subfield(n: u32, coeffs: &[Rat], d: u32) -> bool {
    // Fixed by Gal(Q(zeta_n)/Q(zeta_d)) = { k : k = 1 mod d, gcd(k, n) = 1 }.
    for k in (1..n).filter(|k| k % d == 1 % d && gcd(*k, n) == 1) {
        if k == 1 {
            continue;
        }
        if galois_image(n, coeffs, k) != coeffs {
            return false;
        }
    }
    true
}

fn rewrite_in_subfield(n: u32, coeffs: &[Rat], d: u32) -> Vec<Rat> {
    let phi_n = coeffs.len();
    let phi_d = euler_phi(d) as usize;
    let scale = (n / d) as usize;
    let cond = conductor_data(n);
    // Columns: zeta_d^j expressed over the conductor-n power basis.
    let mut cols = Vec::with_capacity(phi_d);
    for j in 0..phi_d {
        let mut dense = vec![Rat::zero(); n as usize];
        dense[(j * scale) % n as usize] = Rat::one();
        reduce_mod_min_poly(&cond, &mut dense);
        cols.push(dense);
    }
    // Solve the (phi_n x phi_d) system by Gaussian elimination.
    let mut aug: Vec<Vec<Rat>> = (0..phi_n)
        .map(|r| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(coeffs[r].clone());
            row
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut r0 = 0;
    for c in 0..phi_d {
        let piv = (r0..phi_n).find(|&r| !aug[r][c].is_zero());
        let Some(piv) = piv else { continue };
        aug.swap(r0, piv);
        let inv = aug[r0][c].recip();
        for x in aug[r0].iter_mut() {
            *x *= &inv;
        }
        for r in 0..phi_n {
            if r != r0 && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                for cc in 0..=phi_d {
                    let t = &f * &aug[r0][cc];
                    aug[r][cc] -= t;
                }
            }
        }
        pivot_rows.push((r0, c));
        r0 += 1;
    }
    let mut out = vec![Rat::zero(); phi_d];
    for (r, c) in pivot_rows {
        out[c] = aug[r][phi_d].clone();
    }
    out
}

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_is_zero(p: &[Rat]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Quotient and remainder of `a` by nonzero `b`, over Q.
fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    let qlen = rem.len().saturating_sub(db).max(1);
    let mut quot = vec![Rat::zero(); qlen];
    while !poly_is_zero(&rem) && rem.len() - 1 >= db {
        let dr = rem.len() - 1;
        let c = &rem[dr] / lead;
        quot[dr - db] = c.clone();
        for j in 0..=db {
            let t = &c * &b[j];
            rem[dr - db + j] -= t;
        }
        poly_trim(&mut rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    (quot, rem)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), Rat::zero());
    for (j, y) in b.iter().enumerate() {
        out[j] -= y;
    }
    poly_trim(&mut out);
    out
}

/// Inverse of `f` modulo the monic irreducible polynomial `m`, over Q.
fn poly_mod_inverse(f: &[Rat], m: &[Rat]) -> Vec<Rat> {
    let mut r0: Vec<Rat> = m.to_vec();
    let mut r1: Vec<Rat> = f.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    // s tracks the coefficient of f in the Bezout identity.
    let mut s0: Vec<Rat> = vec![Rat::zero()];
    let mut s1: Vec<Rat> = vec![Rat::one()];
    while !poly_is_zero(&r1) {
        let (q, rem) = poly_divmod(&r0, &r1);
        let s_new = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::take(&mut r1);
        r1 = rem;
        s0 = std::mem::take(&mut s1);
        s1 = s_new;
    }
    // m is irreducible and f nonzero of lower degree, so gcd is a constant.
    debug_assert_eq!(r0.len(), 1);
    let c = r0[0].recip();
    s0.iter().map(|x| x * &c).collect()
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if j == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "z{}^{}", self.n, j)?;
            } else {
                write!(f, "{mag}*z{}^{}", self.n, j)?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl std::ops::$trait for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$try(&rhs).expect("cyclotomic arithmetic failed")
            }
        }
        impl std::ops::$trait for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$try(rhs).expect("cyclotomic arithmetic failed")
            }
        }
        impl std::ops::$trait<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$try(rhs).expect("cyclotomic arithmetic failed")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl std::ops::Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            n: self.n,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = self.try_add(rhs).expect("cyclotomic arithmetic failed");
    }
}

impl num_traits::Zero for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
}

impl num_traits::One for CycNum {
    fn one() -> Self {
        CycNum::one()
    }
    fn is_one(&self) -> bool {
        CycNum::is_one(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zeta(n: u32) -> CycNum {
        CycNum::zeta(n).unwrap()
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = zeta(4);
        assert_eq!(i.try_mul(&i).unwrap(), CycNum::from_int(-1));
    }

    #[test]
    fn zeta4_plus_conjugate_vanishes() {
        let i = zeta(4);
        assert!(i.try_add(&i.conj()).unwrap().is_zero());
    }

    #[test]
    fn fifth_roots_sum_to_zero() {
        // Oracle: numerical evaluation of the same sum.
        let mut num = (0.0, 0.0);
        let mut sum = CycNum::zero();
        for k in 0..5 {
            let z = CycNum::root_of_unity(5, k).unwrap();
            let (re, im) = z.approx();
            num.0 += re;
            num.1 += im;
            sum = sum.try_add(&z).unwrap();
        }
        assert!(num.0.abs() < 1e-12 && num.1.abs() < 1e-12);
        assert!(sum.is_zero());
    }

    #[test]
    fn embed_values() {
        // -1 re-expressed at conductor 4 is zeta_4^2.
        let m1 = CycNum::from_int(-1);
        let e = m1.embedded_coeffs(4).unwrap();
        assert_eq!(e, vec![Rat::from(BigInt::from(-1)), Rat::zero()]);
        // zeta_3 at conductor 12 equals zeta_12^4.
        let z3 = zeta(3);
        let e = z3.embedded_coeffs(12).unwrap();
        let direct = zeta(12);
        let z12_4 = direct
            .try_mul(&direct)
            .unwrap()
            .try_mul(&direct)
            .unwrap()
            .try_mul(&direct)
            .unwrap();
        assert_eq!(CycNum::from_dense(12, &e), z12_4);
        assert_eq!(z12_4, z3);
    }

    #[test]
    fn embed_requires_multiple() {
        assert!(matches!(
            zeta(4).embedded_coeffs(6),
            Err(Error::NotAMultiple(6, 4))
        ));
    }

    #[test]
    fn conductor_is_minimized() {
        // zeta_6 = -zeta_3^2 lives at conductor 3.
        assert_eq!(zeta(6).conductor(), 3);
        assert_eq!(zeta(2).conductor(), 1);
        assert_eq!(zeta(12).conductor(), 12);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            CycNum::one().try_div(&CycNum::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn conductor_overflow_is_an_error() {
        assert!(matches!(
            CycNum::zeta(121),
            Err(Error::ConductorOverflow(121, _))
        ));
        let a = zeta(16);
        let b = zeta(120);
        assert!(matches!(
            a.try_mul(&b),
            Err(Error::ConductorOverflow(240, _))
        ));
    }

    #[test]
    fn inverse_of_roots() {
        for n in [3u32, 4, 5, 8, 12, 20] {
            let z = zeta(n);
            let inv = z.try_inv().unwrap();
            assert!(z.try_mul(&inv).unwrap().is_one());
            // for a root of unity the inverse is the conjugate
            assert_eq!(inv, z.conj());
        }
    }

    #[test]
    fn golden_ratio_in_q_zeta5() {
        // sqrt(5) = zeta5 - zeta5^2 - zeta5^3 + zeta5^4
        let z = zeta(5);
        let z2 = z.try_mul(&z).unwrap();
        let z3 = z2.try_mul(&z).unwrap();
        let z4 = z3.try_mul(&z).unwrap();
        let sqrt5 = z.try_sub(&z2).unwrap().try_sub(&z3).unwrap().try_add(&z4).unwrap();
        let sq = sqrt5.try_mul(&sqrt5).unwrap();
        assert_eq!(sq, CycNum::from_int(5));
        let (re, im) = sqrt5.approx();
        assert!((re - 5f64.sqrt()).abs() < 1e-12 && im.abs() < 1e-12);
    }

    fn arb_cyc() -> impl Strategy<Value = CycNum> {
        let coeff = (-4i64..5, 1i64..4).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)));
        (prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]), prop::collection::vec(coeff, 1..6))
            .prop_map(|(n, cs)| CycNum::from_dense(n, &cs))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_inverse(x in arb_cyc()) {
            prop_assume!(!x.is_zero());
            let inv = x.try_inv().unwrap();
            prop_assert!(x.try_mul(&inv).unwrap().is_one());
        }

        #[test]
        fn conj_is_ring_involution(x in arb_cyc(), y in arb_cyc()) {
            let lhs = x.try_mul(&y).unwrap().conj();
            let rhs = x.conj().try_mul(&y.conj()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(x.conj().conj(), x);
        }

        #[test]
        fn embed_round_trip(x in arb_cyc()) {
            let m = x.conductor() * 2;
            if m <= conductor_cap() {
                let e = x.embedded_coeffs(m).unwrap();
                prop_assert_eq!(CycNum::from_dense(m, &e), x);
            }
        }

        #[test]
        fn norm_is_real(x in arb_cyc()) {
            let norm = x.conj().try_mul(&x).unwrap();
            prop_assert_eq!(norm.conj(), norm);
        }

        #[test]
        fn shadow_agrees_with_exact_equality(x in arb_cyc(), y in arb_cyc()) {
            let (xr, xi) = x.approx();
            let (yr, yi) = y.approx();
            let close = (xr - yr).abs() < 1e-9 && (xi - yi).abs() < 1e-9;
            prop_assert_eq!(x == y, close || x == y);
            if x == y {
                prop_assert!(close);
            }
        }
    }
}
