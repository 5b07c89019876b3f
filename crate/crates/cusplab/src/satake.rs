//! Exact unramified-parameter calculus: semisimple conjugacy classes stored
//! as exact matrices and compared by characteristic polynomial, plus a
//! registry of isobaric decomposition identities with seeded fuzzing.
//!
//! Inert-place constructions have eigenvalues in quadratic extensions, so
//! classes are never compared by eigenvalue lists; the characteristic
//! polynomial fingerprint stays inside the scalar field.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::matrix::{CharPoly, RepMatrix};

/// A semisimple conjugacy class, represented by an invertible matrix and
/// fingerprinted by its characteristic polynomial. Two parameters are equal
/// exactly when their fingerprints are.
#[derive(Clone, Debug)]
pub struct SemisimpleParam {
    matrix: RepMatrix,
    fingerprint: CharPoly<CycNum>,
}

impl PartialEq for SemisimpleParam {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
    }
}
impl Eq for SemisimpleParam {}

impl SemisimpleParam {
    pub fn from_matrix(matrix: RepMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::BadInput("parameter matrix must be square".into()));
        }
        if matrix.det().is_zero() {
            return Err(Error::BadInput("parameter matrix must be invertible".into()));
        }
        let fingerprint = matrix.charpoly();
        Ok(SemisimpleParam { matrix, fingerprint })
    }

    pub fn diagonal(eigen: &[CycNum]) -> Result<Self> {
        let n = eigen.len();
        let mut m = RepMatrix::zero(n, n);
        for (i, e) in eigen.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        Self::from_matrix(m)
    }

    pub fn scalar(c: CycNum) -> Result<Self> {
        Self::diagonal(std::slice::from_ref(&c))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RepMatrix {
        &self.matrix
    }

    pub fn fingerprint(&self) -> &CharPoly<CycNum> {
        &self.fingerprint
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let m = self.matrix.tensor(&other.matrix);
        SemisimpleParam { fingerprint: m.charpoly(), matrix: m }
    }

    pub fn wedge2(&self) -> Self {
        let m = self.matrix.wedge2();
        SemisimpleParam { fingerprint: m.charpoly(), matrix: m }
    }

    pub fn sym2(&self) -> Self {
        let m = self.matrix.sym2();
        SemisimpleParam { fingerprint: m.charpoly(), matrix: m }
    }

    /// Scales the parameter by a nonzero scalar (twist by a character value).
    pub fn scale(&self, c: &CycNum) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::BadInput("twist scalar must be nonzero".into()));
        }
        let m = self.matrix.scale(c);
        Ok(SemisimpleParam { fingerprint: m.charpoly(), matrix: m })
    }

    /// The contragredient parameter, inverse of the matrix.
    pub fn dual(&self) -> Self {
        let m = self.matrix.inverse().expect("parameter is invertible");
        SemisimpleParam { fingerprint: m.charpoly(), matrix: m }
    }

    /// The determinant as a 1-dimensional parameter (central character value).
    pub fn det_param(&self) -> Self {
        Self::scalar(self.matrix.det()).expect("determinant of invertible matrix")
    }

    pub fn det_value(&self) -> CycNum {
        self.matrix.det()
    }
}

/// Tensor product of two 2-dimensional parameters as a 4-dimensional one.
pub fn tensor22(t1: &SemisimpleParam, t2: &SemisimpleParam) -> Result<SemisimpleParam> {
    if t1.dim() != 2 || t2.dim() != 2 {
        return Err(Error::DimMismatch { expected: 2, got: t1.dim().max(t2.dim()) });
    }
    Ok(t1.tensor(t2))
}

/// Behavior of a place of the base field in a quadratic extension. The
/// quadratic character attached to the extension takes the value +1 at
/// split places and -1 at inert places.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PlaceKind {
    Split,
    Inert,
}

impl PlaceKind {
    /// Value of the quadratic character of the extension at this place.
    pub fn quadratic_value(self) -> CycNum {
        match self {
            PlaceKind::Split => CycNum::one(),
            PlaceKind::Inert => CycNum::from_int(-1),
        }
    }
}

/// Local parameter of an automorphic induction through a quadratic
/// extension. At a split place both upstairs parameters are required and the
/// result is their block-diagonal sum; at an inert place the single upstairs
/// parameter t yields the block anti-diagonal [[0, t], [I, 0]], whose square
/// is conjugate to diag(t, t).
pub fn induce_param(
    kind: PlaceKind,
    t: &SemisimpleParam,
    t2: Option<&SemisimpleParam>,
) -> Result<SemisimpleParam> {
    let n = t.dim();
    match kind {
        PlaceKind::Split => {
            let t2 = t2.ok_or_else(|| {
                Error::BadInput("split-place induction needs both parameters".into())
            })?;
            if t2.dim() != n {
                return Err(Error::DimMismatch { expected: n, got: t2.dim() });
            }
            let mut m = RepMatrix::zero(2 * n, 2 * n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = t.matrix[(i, j)].clone();
                    m[(n + i, n + j)] = t2.matrix[(i, j)].clone();
                }
            }
            SemisimpleParam::from_matrix(m)
        }
        PlaceKind::Inert => {
            let mut m = RepMatrix::zero(2 * n, 2 * n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, n + j)] = t.matrix[(i, j)].clone();
                }
                m[(n + i, i)] = CycNum::one();
            }
            let param = SemisimpleParam::from_matrix(m)?;
            // the fingerprint of the anti-diagonal block matrix is the
            // upstairs fingerprint composed with x^2; assert the two
            // independent computations agree
            if param.fingerprint != t.fingerprint.compose_x_squared() {
                return Err(Error::Inconsistency(
                    "inert induction fingerprint mismatch".into(),
                ));
            }
            Ok(param)
        }
    }
}

/// Local parameter of the twisted-tensor transfer of a 2-dimensional
/// representation over a quadratic extension. At a split place this is the
/// tensor product of the two upstairs parameters; at an inert place it is
/// the matrix sending x (x) y to (t y) (x) x, whose square is t (x) t.
pub fn asai_param(
    kind: PlaceKind,
    t: &SemisimpleParam,
    t2: Option<&SemisimpleParam>,
) -> Result<SemisimpleParam> {
    if t.dim() != 2 {
        return Err(Error::DimMismatch { expected: 2, got: t.dim() });
    }
    match kind {
        PlaceKind::Split => {
            let t2 = t2.ok_or_else(|| {
                Error::BadInput("split-place Asai needs both parameters".into())
            })?;
            tensor22(t, t2)
        }
        PlaceKind::Inert => {
            // basis e_i (x) e_j in lexicographic order; the image of
            // e_i (x) e_j is (t e_j) (x) e_i, so the (k,l),(i,j) entry is
            // t[k][j] when l = i
            let mut m = RepMatrix::zero(4, 4);
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        m[(2 * k + i, 2 * i + j)] = t.matrix[(k, j)].clone();
                    }
                }
            }
            let param = SemisimpleParam::from_matrix(m)?;
            if param.matrix.matmul(&param.matrix) != t.matrix.tensor(&t.matrix) {
                return Err(Error::Inconsistency(
                    "inert Asai square is not the tensor square".into(),
                ));
            }
            Ok(param)
        }
    }
}

/// An isobaric sum of parameters; its fingerprint is the product of the
/// summands' fingerprints.
#[derive(Clone, Debug)]
pub struct IsobaricSide {
    parts: Vec<SemisimpleParam>,
}

impl IsobaricSide {
    pub fn new(parts: Vec<SemisimpleParam>) -> Self {
        IsobaricSide { parts }
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(SemisimpleParam::dim).sum()
    }

    pub fn parts(&self) -> &[SemisimpleParam] {
        &self.parts
    }

    pub fn fingerprint(&self) -> CharPoly<CycNum> {
        let mut acc = CharPoly::from_roots(&[]);
        for p in &self.parts {
            acc = acc.mul(&p.fingerprint);
        }
        acc
    }
}

/// The registered decomposition identities.
///
/// - `P31a`: exterior square of a tensor product of two 2-dimensional
///   parameters splits as the two twisted symmetric squares.
/// - `P31b`: symmetric square of the same tensor product splits as the
///   tensor product of symmetric squares plus the product of determinants.
/// - `P32`: exterior square of a twisted-tensor transfer is induced from
///   the twisted symmetric square upstairs.
/// - `P33`: exterior square of a similitude-symplectic parameter
///   diag(a, b, v/b, v/a) splits as the similitude v plus a 5-dimensional
///   summand.
/// - `P34`: exterior square of an induced 4-dimensional parameter splits as
///   the quadratically twisted Asai parameter plus the induced determinant.
/// - `S63sym`: symmetric square of an induced 2-dimensional parameter.
/// - `S63wedge`: exterior square (determinant) of the same.
/// - `ADIH`: adjoint of an induced 2-dimensional parameter splits as the
///   quadratic character plus the induced ratio of the character and its
///   conjugate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IdentityName {
    P31a,
    P31b,
    P32,
    P33,
    P34,
    S63sym,
    S63wedge,
    Adih,
}

impl IdentityName {
    pub fn all() -> [IdentityName; 8] {
        [
            IdentityName::P31a,
            IdentityName::P31b,
            IdentityName::P32,
            IdentityName::P33,
            IdentityName::P34,
            IdentityName::S63sym,
            IdentityName::S63wedge,
            IdentityName::Adih,
        ]
    }

    /// Whether the identity involves a quadratic extension and therefore a
    /// place kind. The others ignore the supplied kind.
    pub fn place_dependent(self) -> bool {
        !matches!(self, IdentityName::P31a | IdentityName::P31b | IdentityName::P33)
    }

    /// Number of nonzero scalar inputs the identity consumes for the given
    /// place kind.
    pub fn arity(self, kind: PlaceKind) -> usize {
        match (self, kind) {
            (IdentityName::P31a | IdentityName::P31b, _) => 4,
            (IdentityName::P32 | IdentityName::P34, PlaceKind::Split) => 4,
            (IdentityName::P32 | IdentityName::P34, PlaceKind::Inert) => 2,
            (IdentityName::P33, _) => 3,
            (IdentityName::S63sym | IdentityName::S63wedge | IdentityName::Adih, PlaceKind::Split) => 2,
            (IdentityName::S63sym | IdentityName::S63wedge | IdentityName::Adih, PlaceKind::Inert) => 1,
        }
    }

    /// The inert variant of `P32` fixes a Frobenius normalization for the
    /// conjugate central character that the decomposition itself does not
    /// pin down; reports flag it.
    pub fn convention_dependent(self, kind: PlaceKind) -> bool {
        self == IdentityName::P32 && kind == PlaceKind::Inert
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IdentityName::P31a => "P31a",
            IdentityName::P31b => "P31b",
            IdentityName::P32 => "P32",
            IdentityName::P33 => "P33",
            IdentityName::P34 => "P34",
            IdentityName::S63sym => "S63sym",
            IdentityName::S63wedge => "S63wedge",
            IdentityName::Adih => "ADIH",
        };
        f.write_str(s)
    }
}

impl FromStr for IdentityName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p31a" => Ok(IdentityName::P31a),
            "p31b" => Ok(IdentityName::P31b),
            "p32" => Ok(IdentityName::P32),
            "p33" => Ok(IdentityName::P33),
            "p34" => Ok(IdentityName::P34),
            "s63sym" => Ok(IdentityName::S63sym),
            "s63wedge" => Ok(IdentityName::S63wedge),
            "adih" => Ok(IdentityName::Adih),
            _ => Err(Error::UnknownIdentity(s.to_string())),
        }
    }
}

/// Outcome of one identity check: both fingerprints are returned so a
/// failure is diagnosable.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub identity: IdentityName,
    pub kind: PlaceKind,
    pub holds: bool,
    pub convention_dependent: bool,
    pub lhs: CharPoly<CycNum>,
    pub rhs: CharPoly<CycNum>,
}

fn diag2(a: &CycNum, b: &CycNum) -> Result<SemisimpleParam> {
    SemisimpleParam::diagonal(&[a.clone(), b.clone()])
}

/// Evaluates a registered identity on explicit scalar inputs (eigenvalues
/// and character values, all nonzero). The number of inputs must match
/// `id.arity(kind)`; place-independent identities ignore `kind`.
pub fn verify_identity(
    id: IdentityName,
    kind: PlaceKind,
    inputs: &[CycNum],
) -> Result<IdentityReport> {
    let expected = id.arity(kind);
    if inputs.len() != expected {
        return Err(Error::DimMismatch { expected, got: inputs.len() });
    }
    if inputs.iter().any(CycNum::is_zero) {
        return Err(Error::BadInput("parameter eigenvalues must be nonzero".into()));
    }
    let (lhs, rhs) = match (id, kind) {
        (IdentityName::P31a, _) => {
            let t1 = diag2(&inputs[0], &inputs[1])?;
            let t2 = diag2(&inputs[2], &inputs[3])?;
            let lhs = tensor22(&t1, &t2)?.wedge2();
            let rhs = IsobaricSide::new(vec![
                t1.sym2().scale(&t2.det_value())?,
                t2.sym2().scale(&t1.det_value())?,
            ]);
            (lhs.fingerprint, rhs.fingerprint())
        }
        (IdentityName::P31b, _) => {
            let t1 = diag2(&inputs[0], &inputs[1])?;
            let t2 = diag2(&inputs[2], &inputs[3])?;
            let lhs = tensor22(&t1, &t2)?.sym2();
            let omega = t1.det_value() * t2.det_value();
            let rhs = IsobaricSide::new(vec![
                t1.sym2().tensor(&t2.sym2()),
                SemisimpleParam::scalar(omega)?,
            ]);
            (lhs.fingerprint, rhs.fingerprint())
        }
        (IdentityName::P32, PlaceKind::Split) => {
            let t1 = diag2(&inputs[0], &inputs[1])?;
            let t2 = diag2(&inputs[2], &inputs[3])?;
            let lhs = asai_param(PlaceKind::Split, &t1, Some(&t2))?.wedge2();
            // downstairs induction at a split place: both conjugates appear,
            // each symmetric square twisted by the other determinant
            let rhs = induce_param(
                PlaceKind::Split,
                &t1.sym2().scale(&t2.det_value())?,
                Some(&t2.sym2().scale(&t1.det_value())?),
            )?;
            (lhs.fingerprint, rhs.fingerprint)
        }
        (IdentityName::P32, PlaceKind::Inert) => {
            let t = diag2(&inputs[0], &inputs[1])?;
            let lhs = asai_param(PlaceKind::Inert, &t, None)?.wedge2();
            // normalization: the conjugate central character takes the value
            // det t at the Frobenius upstairs
            let rhs = induce_param(PlaceKind::Inert, &t.sym2().scale(&t.det_value())?, None)?;
            (lhs.fingerprint, rhs.fingerprint)
        }
        (IdentityName::P33, _) => {
            let (a, b, nu) = (&inputs[0], &inputs[1], &inputs[2]);
            let t = SemisimpleParam::diagonal(&[
                a.clone(),
                b.clone(),
                nu.try_div(b)?,
                nu.try_div(a)?,
            ])?;
            let lhs = t.wedge2();
            // the 5-dimensional summand of the exterior square of a
            // similitude-symplectic parameter, written out directly
            let five = SemisimpleParam::diagonal(&[
                a.clone() * b,
                a.try_mul(nu)?.try_div(b)?,
                b.try_mul(nu)?.try_div(a)?,
                nu.try_mul(nu)?.try_div(&(a.clone() * b))?,
                nu.clone(),
            ])?;
            let rhs = IsobaricSide::new(vec![five, SemisimpleParam::scalar(nu.clone())?]);
            (lhs.fingerprint, rhs.fingerprint())
        }
        (IdentityName::P34, k) => {
            let (t, t2, omega_pair);
            match k {
                PlaceKind::Split => {
                    t = diag2(&inputs[0], &inputs[1])?;
                    let s = diag2(&inputs[2], &inputs[3])?;
                    omega_pair = Some(SemisimpleParam::scalar(s.det_value())?);
                    t2 = Some(s);
                }
                PlaceKind::Inert => {
                    t = diag2(&inputs[0], &inputs[1])?;
                    t2 = None;
                    omega_pair = None;
                }
            }
            let lhs = induce_param(k, &t, t2.as_ref())?.wedge2();
            let asai = asai_param(k, &t, t2.as_ref())?.scale(&k.quadratic_value())?;
            let omega = SemisimpleParam::scalar(t.det_value())?;
            let induced_omega = induce_param(k, &omega, omega_pair.as_ref())?;
            let rhs = IsobaricSide::new(vec![asai, induced_omega]);
            (lhs.fingerprint, rhs.fingerprint())
        }
        (IdentityName::S63sym, k) => {
            let (chi, chi2, restriction);
            match k {
                PlaceKind::Split => {
                    chi = SemisimpleParam::scalar(inputs[0].clone())?;
                    chi2 = Some(SemisimpleParam::scalar(inputs[1].clone())?);
                    restriction = inputs[0].clone() * &inputs[1];
                }
                PlaceKind::Inert => {
                    chi = SemisimpleParam::scalar(inputs[0].clone())?;
                    chi2 = None;
                    // restriction to the base at an inert place is the value
                    // at the Frobenius upstairs
                    restriction = inputs[0].clone();
                }
            }
            let induced = induce_param(k, &chi, chi2.as_ref())?;
            let lhs = induced.sym2();
            let chi_sq = SemisimpleParam::scalar(inputs[0].clone() * &inputs[0])?;
            let chi2_sq = match &chi2 {
                Some(c) => Some(SemisimpleParam::scalar(c.det_value() * &c.det_value())?),
                None => None,
            };
            let rhs = IsobaricSide::new(vec![
                induce_param(k, &chi_sq, chi2_sq.as_ref())?,
                SemisimpleParam::scalar(restriction)?,
            ]);
            (lhs.fingerprint, rhs.fingerprint())
        }
        (IdentityName::S63wedge, k) => {
            let (chi, chi2, restriction);
            match k {
                PlaceKind::Split => {
                    chi = SemisimpleParam::scalar(inputs[0].clone())?;
                    chi2 = Some(SemisimpleParam::scalar(inputs[1].clone())?);
                    restriction = inputs[0].clone() * &inputs[1];
                }
                PlaceKind::Inert => {
                    chi = SemisimpleParam::scalar(inputs[0].clone())?;
                    chi2 = None;
                    restriction = inputs[0].clone();
                }
            }
            let lhs = induce_param(k, &chi, chi2.as_ref())?.wedge2();
            let rhs = SemisimpleParam::scalar(restriction * &k.quadratic_value())?;
            (lhs.fingerprint, rhs.fingerprint)
        }
        (IdentityName::Adih, k) => {
            let (chi, chi2, ratio, ratio2);
            match k {
                PlaceKind::Split => {
                    let (c1, c2) = (&inputs[0], &inputs[1]);
                    chi = SemisimpleParam::scalar(c1.clone())?;
                    chi2 = Some(SemisimpleParam::scalar(c2.clone())?);
                    // the conjugate character swaps the two places
                    ratio = SemisimpleParam::scalar(c2.try_div(c1)?)?;
                    ratio2 = Some(SemisimpleParam::scalar(c1.try_div(c2)?)?);
                }
                PlaceKind::Inert => {
                    chi = SemisimpleParam::scalar(inputs[0].clone())?;
                    chi2 = None;
                    // the conjugate agrees with the character at the
                    // Frobenius upstairs, so the ratio is trivial there
                    ratio = SemisimpleParam::scalar(CycNum::one())?;
                    ratio2 = None;
                }
            }
            let induced = induce_param(k, &chi, chi2.as_ref())?;
            let omega_inv = induced.det_value().try_inv()?;
            let lhs = induced.sym2().scale(&omega_inv)?;
            let rhs = IsobaricSide::new(vec![
                SemisimpleParam::scalar(k.quadratic_value())?,
                induce_param(k, &ratio, ratio2.as_ref())?,
            ]);
            (lhs.fingerprint, rhs.fingerprint())
        }
    };
    Ok(IdentityReport {
        identity: id,
        kind,
        holds: lhs == rhs,
        convention_dependent: id.convention_dependent(kind),
        lhs,
        rhs,
    })
}

/// Result of a fuzz run: trial indices whose identity check failed.
#[derive(Clone, Debug)]
pub struct FuzzReport {
    pub identity: IdentityName,
    pub kind: PlaceKind,
    pub trials: u64,
    pub seed: u64,
    pub failures: Vec<u64>,
}

/// Draws pairwise distinct nonzero rationals with small numerators and
/// denominators; distinctness keeps multiplicity counts in fingerprints
/// unambiguous.
fn random_inputs(rng: &mut ChaCha8Rng, count: usize) -> Vec<CycNum> {
    let mut out: Vec<CycNum> = Vec::with_capacity(count);
    while out.len() < count {
        let num = loop {
            let n = rng.gen_range(-9i64..=9);
            if n != 0 {
                break n;
            }
        };
        let den = rng.gen_range(1i64..=9);
        let x = CycNum::from_frac(num, den);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Runs `trials` seeded random checks of one identity at one place kind.
pub fn fuzz_identity(
    id: IdentityName,
    kind: PlaceKind,
    trials: u64,
    seed: u64,
) -> Result<FuzzReport> {
    let arity = id.arity(kind);
    let mut failures = Vec::new();
    for trial in 0..trials {
        // per-trial derived seed keeps trials independent and reorderable
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let inputs = random_inputs(&mut rng, arity);
        let report = verify_identity(id, kind, &inputs)?;
        if !report.holds {
            failures.push(trial);
        }
    }
    Ok(FuzzReport { identity: id, kind, trials, seed, failures })
}

/// Checks that the exterior-square fingerprint of a represented group
/// element matches the exterior square of its parameter, for `count`
/// seeded random elements of the representation.
pub fn rep_consistency(
    rep: &crate::reps::Representation,
    count: usize,
    seed: u64,
) -> Result<bool> {
    let group: &Arc<_> = rep.group();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let i = rng.gen_range(0..group.order());
        let m = rep.image(i).clone();
        let param = SemisimpleParam::from_matrix(m.clone())?;
        if param.wedge2().fingerprint != m.wedge2().charpoly() {
            return Ok(false);
        }
    }
    Ok(true)
}
