//! Built-in catalog of example groups with their distinguished
//! representations. Each entry is a matrix group together with either its
//! inclusion representation or a representation produced by the induction /
//! twisted-tensor constructions.
//!
//! The 4x4 generator file `data/g192.json` is shipped as data and parsed at
//! load time.

use std::sync::Arc;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::groups::{closure, FiniteMatrixGroup};
use crate::json;
use crate::matrix::{Matrix, RepMatrix};
use crate::reps::{asai_construct, Representation};

pub const DEFAULT_MAX_ORDER: usize = 5000;

pub struct CatalogEntry {
    pub name: String,
    pub group: Arc<FiniteMatrixGroup>,
    pub rep: Representation,
}

/// All catalog names, in a stable order.
pub fn catalog_names() -> &'static [&'static str] {
    &[
        "g192",
        "s5std",
        "a5std",
        "d8",
        "q8",
        "sl23",
        "sl23xsl23",
        "d8xq8",
        "d8xsl23",
        "asai(sl23)",
        "asai(d8)",
        "sl25",
        "sl25sym3",
        "sl25deg4",
    ]
}

/// Catalog entries whose distinguished representation is 4-dimensional and
/// irreducible; the battery of the exhaustive classifier check.
pub fn four_dim_names() -> &'static [&'static str] {
    &[
        "g192",
        "s5std",
        "a5std",
        "sl23xsl23",
        "d8xq8",
        "d8xsl23",
        "asai(sl23)",
        "asai(d8)",
        "sl25sym3",
        "sl25deg4",
    ]
}

fn int_matrix(rows: &[&[i64]]) -> RepMatrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| CycNum::from_int(x)).collect())
            .collect(),
    )
}

/// Standard 4-dim matrix of a permutation of {0..4} on the basis
/// f_i = e_i - e_4 of the sum-zero subspace.
fn perm_std4(perm: [usize; 5]) -> RepMatrix {
    let mut m = RepMatrix::zero(4, 4);
    for i in 0..4 {
        if perm[i] != 4 {
            m[(perm[i], i)] = CycNum::one();
        }
        if perm[4] != 4 {
            let e = m[(perm[4], i)].clone() - CycNum::one();
            m[(perm[4], i)] = e;
        }
    }
    m
}

/// 2x2 image of the quaternion a + bi + cj + dk.
fn quat(a: CycNum, b: CycNum, c: CycNum, d: CycNum) -> RepMatrix {
    let i = CycNum::zeta(4).expect("conductor 4");
    Matrix::from_rows(vec![
        vec![a.clone() + b.clone() * &i, c.clone() + d.clone() * &i],
        vec![d * &i - c, a - b * i],
    ])
}

fn d8_gens() -> Vec<RepMatrix> {
    vec![
        int_matrix(&[&[0, -1], &[1, 0]]),
        int_matrix(&[&[1, 0], &[0, -1]]),
    ]
}

fn q8_gens() -> Vec<RepMatrix> {
    let one = CycNum::one();
    vec![
        quat(CycNum::zero(), one.clone(), CycNum::zero(), CycNum::zero()),
        quat(CycNum::zero(), CycNum::zero(), one, CycNum::zero()),
    ]
}

fn sl23_gens() -> Vec<RepMatrix> {
    let h = CycNum::from_frac(1, 2);
    let mh = CycNum::from_frac(-1, 2);
    vec![
        quat(CycNum::zero(), CycNum::one(), CycNum::zero(), CycNum::zero()),
        quat(mh, h.clone(), h.clone(), h),
    ]
}

/// sqrt(5) inside Q(zeta_5).
fn sqrt5() -> CycNum {
    let z = CycNum::zeta(5).expect("conductor 5");
    let z2 = z.clone() * &z;
    let z3 = z2.clone() * &z;
    let z4 = z3.clone() * &z;
    z + z4 - z2 - z3
}

/// Binary icosahedral generators: the quaternion i together with
/// (phi + phi^{-1} i + j)/2, phi the golden ratio.
fn sl25_gens() -> Vec<RepMatrix> {
    let h = CycNum::from_frac(1, 2);
    let phi = (CycNum::one() + sqrt5()) * &h;
    let phi_inv = (sqrt5() - CycNum::one()) * &h;
    vec![
        quat(CycNum::zero(), CycNum::one(), CycNum::zero(), CycNum::zero()),
        quat(phi * &h, phi_inv * &h, h, CycNum::zero()),
    ]
}

fn matrix_galois(m: &RepMatrix, k: u32) -> Result<RepMatrix> {
    let d = m.dim();
    let mut out = RepMatrix::zero(d, d);
    for i in 0..d {
        for j in 0..d {
            out[(i, j)] = m[(i, j)].galois(k)?;
        }
    }
    Ok(out)
}

fn block_diag(a: &RepMatrix, b: &RepMatrix) -> RepMatrix {
    let (da, db) = (a.dim(), b.dim());
    let mut m = RepMatrix::zero(da + db, da + db);
    for i in 0..da {
        for j in 0..da {
            m[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..db {
        for j in 0..db {
            m[(da + i, da + j)] = b[(i, j)].clone();
        }
    }
    m
}

fn swap_matrix(m: usize) -> RepMatrix {
    let mut s = RepMatrix::zero(2 * m, 2 * m);
    for i in 0..m {
        s[(i, m + i)] = CycNum::one();
        s[(m + i, i)] = CycNum::one();
    }
    s
}

fn inclusion(gens: Vec<RepMatrix>, max_order: usize) -> Result<(Arc<FiniteMatrixGroup>, Representation)> {
    let group = Arc::new(closure(&gens, max_order)?);
    let rep = Representation::from_generator_images(&group, &gens)?;
    Ok((group, rep))
}

fn tensor_gens(left: &[RepMatrix], right: &[RepMatrix]) -> Vec<RepMatrix> {
    let dl = left[0].dim();
    let dr = right[0].dim();
    let il = RepMatrix::identity(dl);
    let ir = RepMatrix::identity(dr);
    left.iter()
        .map(|a| a.tensor(&ir))
        .chain(right.iter().map(|b| il.tensor(b)))
        .collect()
}

/// Wreath-type setup for the twisted-tensor construction over two commuting
/// copies of a 2-dim group plus the factor swap: returns (G, tau on H).
fn asai_entry(
    gens2: Vec<RepMatrix>,
    max_order: usize,
) -> Result<(Arc<FiniteMatrixGroup>, Representation)> {
    let id2 = RepMatrix::identity(2);
    let mut h_gens: Vec<RepMatrix> = gens2.iter().map(|g| block_diag(g, &id2)).collect();
    h_gens.extend(gens2.iter().map(|g| block_diag(&id2, g)));
    let h = Arc::new(closure(&h_gens, max_order)?);
    let mut g_gens = h_gens.clone();
    g_gens.push(swap_matrix(2));
    let big = Arc::new(closure(&g_gens, max_order)?);
    let mut tau_images: Vec<RepMatrix> = gens2.clone();
    tau_images.extend(std::iter::repeat(id2).take(gens2.len()));
    let tau = Representation::from_generator_images(&h, &tau_images)?;
    let rep = asai_construct(&tau, &big)?;
    Ok((big, rep))
}

fn expect_order(group: &FiniteMatrixGroup, want: usize, name: &str) -> Result<()> {
    if group.order() != want {
        return Err(Error::Inconsistency(format!(
            "catalog {name}: group order {} instead of {want}",
            group.order()
        )));
    }
    Ok(())
}

pub fn catalog(name: &str, max_order: usize) -> Result<CatalogEntry> {
    let (group, rep) = match name {
        "g192" => {
            let raw: serde_json::Value =
                serde_json::from_str(include_str!("../data/g192.json"))
                    .map_err(|e| Error::BadInput(format!("g192 data: {e}")))?;
            let (_, gens) = json::group_from_json(&raw)?;
            let (g, r) = inclusion(gens, max_order)?;
            expect_order(&g, 192, name)?;
            (g, r)
        }
        "s5std" => {
            let gens = vec![
                perm_std4([1, 0, 2, 3, 4]),
                perm_std4([1, 2, 3, 4, 0]),
            ];
            let (g, r) = inclusion(gens, max_order)?;
            expect_order(&g, 120, name)?;
            (g, r)
        }
        "a5std" => {
            let s5 = catalog("s5std", max_order)?;
            let subs = s5.group.index2_subgroups();
            let a5 = Arc::new(subs.into_iter().next().ok_or_else(|| {
                Error::Inconsistency("s5 model has no index-2 subgroup".into())
            })?);
            expect_order(&a5, 60, name)?;
            let r = s5.rep.restrict(&a5)?;
            (a5, r)
        }
        "d8" => inclusion(d8_gens(), max_order)?,
        "q8" => {
            let (g, r) = inclusion(q8_gens(), max_order)?;
            expect_order(&g, 8, name)?;
            (g, r)
        }
        "sl23" => {
            let (g, r) = inclusion(sl23_gens(), max_order)?;
            expect_order(&g, 24, name)?;
            (g, r)
        }
        "sl23xsl23" => {
            let gens = tensor_gens(&sl23_gens(), &sl23_gens());
            let (g, r) = inclusion(gens, max_order)?;
            expect_order(&g, 288, name)?;
            (g, r)
        }
        "d8xq8" => {
            let gens = tensor_gens(&d8_gens(), &q8_gens());
            let (g, r) = inclusion(gens, max_order)?;
            expect_order(&g, 32, name)?;
            (g, r)
        }
        "d8xsl23" => {
            let gens = tensor_gens(&d8_gens(), &sl23_gens());
            let (g, r) = inclusion(gens, max_order)?;
            expect_order(&g, 96, name)?;
            (g, r)
        }
        "asai(sl23)" => {
            let (g, r) = asai_entry(sl23_gens(), max_order)?;
            expect_order(&g, 1152, name)?;
            (g, r)
        }
        "asai(d8)" => {
            let (g, r) = asai_entry(d8_gens(), max_order)?;
            expect_order(&g, 128, name)?;
            (g, r)
        }
        "sl25" => {
            let (g, r) = inclusion(sl25_gens(), max_order)?;
            expect_order(&g, 120, name)?;
            (g, r)
        }
        "sl25sym3" => {
            let gens: Vec<RepMatrix> = sl25_gens().iter().map(|m| m.sym_power(3)).collect();
            let (g, r) = inclusion(gens, max_order)?;
            expect_order(&g, 120, name)?;
            (g, r)
        }
        "sl25deg4" => {
            // tensor with the entrywise Galois twist zeta_20 -> zeta_20^17;
            // the image factors through the simple quotient of order 60
            let gens = sl25_gens()
                .iter()
                .map(|m| Ok(m.tensor(&matrix_galois(m, 17)?)))
                .collect::<Result<Vec<_>>>()?;
            let (g, r) = inclusion(gens, max_order)?;
            expect_order(&g, 60, name)?;
            (g, r)
        }
        _ => return Err(Error::UnknownCatalog(name.to_string())),
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        group,
        rep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_entry_orders() {
        for (name, order) in [
            ("d8", 8),
            ("q8", 8),
            ("sl23", 24),
            ("s5std", 120),
            ("a5std", 60),
            ("sl25", 120),
            ("sl25deg4", 60),
        ] {
            let e = catalog(name, DEFAULT_MAX_ORDER).unwrap();
            assert_eq!(e.group.order(), order, "{name}");
        }
    }

    #[test]
    fn g192_order_and_conductor() {
        let e = catalog("g192", DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(e.group.order(), 192);
        assert_eq!(e.rep.dim(), 4);
    }

    #[test]
    fn s5_character_on_transposition() {
        let e = catalog("s5std", DEFAULT_MAX_ORDER).unwrap();
        // generator 0 is a transposition: 3 fixed points - 1
        let t = e.group.generator_indices()[0];
        assert_eq!(
            e.rep.character().value_on_element(t),
            &CycNum::from_int(2)
        );
        // all character values rational integers
        for v in e.rep.character().values() {
            assert!(v.is_rational());
        }
    }

    #[test]
    fn tensor_entries() {
        let e = catalog("sl23xsl23", DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(e.group.order(), 288);
        assert_eq!(e.rep.dim(), 4);
        assert!(e.rep.character().norm().is_one());

        let e = catalog("d8xq8", DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(e.group.order(), 32);
        assert!(e.rep.character().norm().is_one());
    }

    #[test]
    fn sl25_chain() {
        let e = catalog("sl25sym3", DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(e.rep.dim(), 4);
        assert!(e.rep.character().norm().is_one());

        let e = catalog("sl25deg4", DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(e.rep.dim(), 4);
        assert!(e.rep.character().norm().is_one());
    }

    #[test]
    fn asai_entries() {
        let e = catalog("asai(d8)", DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(e.group.order(), 128);
        assert_eq!(e.rep.dim(), 4);
        assert!(e.rep.character().norm().is_one());
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            catalog("nope", DEFAULT_MAX_ORDER),
            Err(Error::UnknownCatalog(_))
        ));
    }
}
