//! Representations of finite matrix groups as first-class values, with the
//! functorial constructions: dual, twist by a linear character, tensor
//! product, exterior and symmetric squares, restriction, index-2 induction,
//! the twisted-tensor (Asai) construction, and invariant bilinear forms.
//!
//! Every constructor stores images for all group elements and verifies the
//! homomorphism property across the full multiplication-by-generator table,
//! which is the exact well-definedness condition for a map given on
//! generators.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chars::ClassFunction;
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::groups::{FiniteMatrixGroup, LinearCharacter};
use crate::matrix::RepMatrix;

#[derive(Clone)]
pub struct Representation {
    group: Arc<FiniteMatrixGroup>,
    dim: usize,
    images: Vec<RepMatrix>,
    character: ClassFunction,
}

impl Representation {
    /// Extends images of the generators to the whole group along the BFS
    /// tree, then verifies the extension is a homomorphism.
    pub fn from_generator_images(
        group: &Arc<FiniteMatrixGroup>,
        gen_images: &[RepMatrix],
    ) -> Result<Representation> {
        let ngen = group.generator_indices().len();
        if gen_images.len() != ngen {
            return Err(Error::BadInput(format!(
                "expected {ngen} generator images, got {}",
                gen_images.len()
            )));
        }
        let dim = gen_images
            .first()
            .map(|m| m.dim())
            .ok_or_else(|| Error::BadInput("no generator images".into()))?;
        for m in gen_images {
            if !m.is_square() || m.dim() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    got: m.rows(),
                });
            }
        }
        let mut images = vec![RepMatrix::identity(dim); group.order()];
        for i in 1..group.order() {
            let (parent, g) = group.bfs_parent(i).expect("non-identity has a parent");
            images[i] = images[parent].matmul(&gen_images[g]);
        }
        Self::from_images(group, images)
    }

    /// Builds a representation from one image per element, verifying
    /// multiplicativity against every generator transition.
    pub fn from_images(
        group: &Arc<FiniteMatrixGroup>,
        images: Vec<RepMatrix>,
    ) -> Result<Representation> {
        if images.len() != group.order() {
            return Err(Error::BadInput(format!(
                "expected {} images, got {}",
                group.order(),
                images.len()
            )));
        }
        let dim = images[0].dim();
        if !images[0].is_identity() {
            return Err(Error::Inconsistency("identity does not map to I".into()));
        }
        for x in 0..group.order() {
            for &g in group.generator_indices() {
                if images[group.mul(x, g)] != images[x].matmul(&images[g]) {
                    return Err(Error::Inconsistency(format!(
                        "images are not multiplicative at element {x}, generator {g}"
                    )));
                }
            }
        }
        let character = ClassFunction::new(
            group,
            (0..group.num_classes())
                .map(|c| images[group.class_rep(c)].trace())
                .collect(),
        )?;
        Ok(Representation {
            group: Arc::clone(group),
            dim,
            images,
            character,
        })
    }

    pub fn group(&self) -> &Arc<FiniteMatrixGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, i: usize) -> &RepMatrix {
        &self.images[i]
    }

    pub fn generator_images(&self) -> Vec<RepMatrix> {
        self.group
            .generator_indices()
            .iter()
            .map(|&i| self.images[i].clone())
            .collect()
    }

    pub fn character(&self) -> &ClassFunction {
        &self.character
    }

    /// Class function g -> character(g^k); used by the closed-form exterior
    /// and symmetric square formulas.
    pub fn power_character(&self, k: i64) -> ClassFunction {
        ClassFunction::new(
            &self.group,
            (0..self.group.num_classes())
                .map(|c| self.character.value_on_class(self.group.power_class(c, k)).clone())
                .collect(),
        )
        .expect("class count matches")
    }

    /// Equivalence test by character equality (valid over an algebraically
    /// closed characteristic-zero field).
    pub fn equivalent(&self, other: &Representation) -> Result<bool> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(self.character == other.character)
    }

    /// det of the images, as a linear character.
    pub fn det_character(&self) -> LinearCharacter {
        let values: Vec<CycNum> = self.images.iter().map(|m| m.det()).collect();
        LinearCharacter::from_element_values(&self.group, &values)
            .expect("determinant of a representation is a character")
    }

    pub fn dual(&self) -> Representation {
        let images = (0..self.group.order())
            .map(|i| self.images[self.group.inv(i)].transpose())
            .collect();
        Self::from_images(&self.group, images).expect("dual of a representation")
    }

    pub fn twist(&self, chi: &LinearCharacter) -> Result<Representation> {
        if !Arc::ptr_eq(self.group(), chi.group()) {
            return Err(Error::GroupMismatch);
        }
        let images = (0..self.group.order())
            .map(|i| self.images[i].scale(chi.value_on_element(i)))
            .collect();
        Self::from_images(&self.group, images)
    }

    pub fn tensor(&self, other: &Representation) -> Result<Representation> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let images = (0..self.group.order())
            .map(|i| self.images[i].tensor(&other.images[i]))
            .collect();
        Self::from_images(&self.group, images)
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let d = self.dim + other.dim;
        let images = (0..self.group.order())
            .map(|i| {
                let mut m = RepMatrix::zero(d, d);
                for r in 0..self.dim {
                    for c in 0..self.dim {
                        m[(r, c)] = self.images[i][(r, c)].clone();
                    }
                }
                for r in 0..other.dim {
                    for c in 0..other.dim {
                        m[(self.dim + r, self.dim + c)] = other.images[i][(r, c)].clone();
                    }
                }
                m
            })
            .collect();
        Self::from_images(&self.group, images)
    }

    pub fn wedge2(&self) -> Representation {
        let images = self.images.iter().map(|m| m.wedge2()).collect();
        Self::from_images(&self.group, images).expect("exterior square of a representation")
    }

    pub fn sym2(&self) -> Representation {
        self.sym_power(2)
    }

    pub fn sym_power(&self, k: usize) -> Representation {
        let images = self.images.iter().map(|m| m.sym_power(k)).collect();
        Self::from_images(&self.group, images).expect("symmetric power of a representation")
    }

    /// Restriction to a standalone subgroup whose element matrices are
    /// literally elements of this group.
    pub fn restrict(&self, sub: &Arc<FiniteMatrixGroup>) -> Result<Representation> {
        let images = sub
            .elements()
            .iter()
            .map(|m| {
                self.group
                    .index_of(m)
                    .map(|i| self.images[i].clone())
                    .ok_or(Error::NotASubgroup)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(sub, images)
    }
}

/// Locates each element of `sub` inside `big`; errors if `sub` is not an
/// element subset.
fn embed_indices(sub: &FiniteMatrixGroup, big: &FiniteMatrixGroup) -> Result<Vec<usize>> {
    sub.elements()
        .iter()
        .map(|m| big.index_of(m).ok_or(Error::NotASubgroup))
        .collect()
}

/// Index in `big` of the first element (in canonical BFS order) outside the
/// image of `sub`.
fn first_outside(sub: &FiniteMatrixGroup, big: &FiniteMatrixGroup) -> Result<usize> {
    (0..big.order())
        .find(|&i| sub.index_of(big.element(i)).is_none())
        .ok_or_else(|| Error::BadIndex(1))
}

fn check_index2(sub: &FiniteMatrixGroup, big: &FiniteMatrixGroup) -> Result<()> {
    embed_indices(sub, big)?;
    if big.order() != 2 * sub.order() {
        return Err(Error::BadIndex(big.order() / sub.order().max(1)));
    }
    Ok(())
}

/// Induction from an index-2 subgroup, over the coset transversal {e, g0}
/// with g0 the first non-subgroup element in canonical order.
pub fn induce_index2(
    tau: &Representation,
    big: &Arc<FiniteMatrixGroup>,
) -> Result<Representation> {
    let h = tau.group();
    check_index2(h, big)?;
    let g0 = first_outside(h, big)?;
    let g0_inv = big.inv(g0);
    let transversal = [0usize, g0];
    let m = tau.dim();
    let d = 2 * m;
    let h_index = |x: usize| h.index_of(big.element(x));

    let images = (0..big.order())
        .map(|x| {
            let mut img = RepMatrix::zero(d, d);
            for s in 0..transversal.len() {
                let ts_inv = if s == 0 { 0 } else { g0_inv };
                for (t, &tt) in transversal.iter().enumerate() {
                    let y = big.mul(big.mul(ts_inv, x), tt);
                    if let Some(hy) = h_index(y) {
                        let block = tau.image(hy);
                        for a in 0..m {
                            for b in 0..m {
                                img[(s * m + a, t * m + b)] = block[(a, b)].clone();
                            }
                        }
                    }
                }
            }
            img
        })
        .collect();
    Representation::from_images(big, images)
}

/// Twisted-tensor construction: from a 2-dimensional representation of an
/// index-2 subgroup H to a 4-dimensional representation of G on W tensor W.
/// On H it acts by tau(h) tensor tau(g0 h g0^{-1}); the nontrivial coset acts
/// through the slot swap (positive-sign variant).
pub fn asai_construct(
    tau: &Representation,
    big: &Arc<FiniteMatrixGroup>,
) -> Result<Representation> {
    if tau.dim() != 2 {
        return Err(Error::DimMismatch {
            expected: 2,
            got: tau.dim(),
        });
    }
    let h = tau.group();
    check_index2(h, big)?;
    let g0 = first_outside(h, big)?;
    let g0_inv = big.inv(g0);
    let m = tau.dim();
    let h_index = |x: usize| h.index_of(big.element(x));

    let images = (0..big.order())
        .map(|x| {
            if let Some(hx) = h_index(x) {
                let conj = h_index(big.mul(big.mul(g0, x), g0_inv))
                    .expect("H is normal, being of index 2");
                tau.image(hx).tensor(tau.image(conj))
            } else {
                // x g0^{-1} and g0 x both lie in H; the action sends
                // w0 (x) w1 to tau(x g0^{-1}) w1 (x) tau(g0 x) w0.
                let a_idx = h_index(big.mul(x, g0_inv)).expect("coset algebra");
                let b_idx = h_index(big.mul(g0, x)).expect("coset algebra");
                let a = tau.image(a_idx);
                let b = tau.image(b_idx);
                let mut img = RepMatrix::zero(m * m, m * m);
                for k in 0..m {
                    for l in 0..m {
                        for i in 0..m {
                            for j in 0..m {
                                img[(k * m + l, i * m + j)] =
                                    a[(k, j)].clone() * b[(l, i)].clone();
                            }
                        }
                    }
                }
                img
            }
        })
        .collect();
    Representation::from_images(big, images)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormSymmetry {
    Symmetric,
    Alternating,
}

/// A nondegenerate invariant bilinear form together with its similitude
/// character: C(sigma(g)v, sigma(g)w) = similitude(g)^{-1} C(v, w).
#[derive(Clone)]
pub struct BilinearForm {
    pub gram: RepMatrix,
    pub similitude: LinearCharacter,
    pub symmetry: FormSymmetry,
}

/// Searches for an invariant form with the given similitude and symmetry by
/// Reynolds-averaging seeded random start forms; the averaging runs over the
/// whole group, so any nonzero outcome is exactly invariant (and is verified
/// on the generators anyway).
pub fn invariant_form(
    sigma: &Representation,
    chi: &LinearCharacter,
    symmetry: FormSymmetry,
) -> Result<Option<BilinearForm>> {
    if !Arc::ptr_eq(sigma.group(), chi.group()) {
        return Err(Error::GroupMismatch);
    }
    let group = sigma.group();
    let d = sigma.dim();
    let half = CycNum::from_frac(1, 2);

    for attempt in 0u64..8 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_F0E1 + attempt);
        let b0 = RepMatrix::new(
            d,
            d,
            (0..d * d)
                .map(|_| CycNum::from_int(rng.gen_range(-4..5)))
                .collect(),
        );
        let mut gram = RepMatrix::zero(d, d);
        for i in 0..group.order() {
            let gi = sigma.image(i);
            let term = gi.transpose().matmul(&b0).matmul(gi);
            gram = gram.add(&term.scale(chi.value_on_element(i)));
        }
        let gram = match symmetry {
            FormSymmetry::Symmetric => gram.add(&gram.transpose()).scale(&half),
            FormSymmetry::Alternating => gram.sub(&gram.transpose()).scale(&half),
        };
        if gram == RepMatrix::zero(d, d) {
            continue;
        }
        // Exact invariance on the generators.
        for &g in group.generator_indices() {
            let img = sigma.image(g);
            let lhs = img.transpose().matmul(&gram).matmul(img);
            let rhs = gram.scale(&chi.value_on_element(g).try_inv()?);
            if lhs != rhs {
                return Err(Error::Inconsistency(
                    "Reynolds average is not invariant".into(),
                ));
            }
        }
        let irreducible = sigma.character().norm().is_one();
        if irreducible && gram.det().is_zero() {
            return Err(Error::Inconsistency(
                "invariant form of an irreducible is degenerate".into(),
            ));
        }
        return Ok(Some(BilinearForm {
            gram,
            similitude: chi.clone(),
            symmetry,
        }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::closure;
    use crate::matrix::Matrix;

    fn int_matrix(rows: &[&[i64]]) -> RepMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| CycNum::from_int(x)).collect())
                .collect(),
        )
    }

    fn d8() -> (Arc<FiniteMatrixGroup>, Representation) {
        let gens = vec![
            int_matrix(&[&[0, -1], &[1, 0]]),
            int_matrix(&[&[1, 0], &[0, -1]]),
        ];
        let g = Arc::new(closure(&gens, 20).unwrap());
        let rep = Representation::from_generator_images(&g, &gens).unwrap();
        (g, rep)
    }

    fn q8() -> (Arc<FiniteMatrixGroup>, Representation) {
        let i = CycNum::zeta(4).unwrap();
        let gens = vec![
            Matrix::from_rows(vec![
                vec![i.clone(), CycNum::zero()],
                vec![CycNum::zero(), i.conj()],
            ]),
            Matrix::from_rows(vec![
                vec![CycNum::zero(), CycNum::one()],
                vec![CycNum::from_int(-1), CycNum::zero()],
            ]),
        ];
        let g = Arc::new(closure(&gens, 20).unwrap());
        let rep = Representation::from_generator_images(&g, &gens).unwrap();
        (g, rep)
    }

    #[test]
    fn twist_by_trivial_is_identity() {
        let (g, rep) = d8();
        let t = rep.twist(&LinearCharacter::trivial(&g)).unwrap();
        assert!(t.equivalent(&rep).unwrap());
    }

    #[test]
    fn dual_of_real_rep_has_same_character() {
        let (_, rep) = d8();
        assert!(rep.dual().equivalent(&rep).unwrap());
    }

    #[test]
    fn sym2_plus_wedge2_is_tensor_square() {
        let (_, rep) = d8();
        let lhs = rep
            .sym2()
            .character()
            .add(rep.wedge2().character())
            .unwrap();
        let rhs = rep.tensor(&rep).unwrap().character().clone();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_sym_character_formulas() {
        for (_, rep) in [d8(), q8()] {
            let chi = rep.character().clone();
            let chi_sq = chi.mul(&chi).unwrap();
            let chi_pow2 = rep.power_character(2);
            let half = CycNum::from_frac(1, 2);
            for c in 0..rep.group().num_classes() {
                let wedge = (chi_sq.value_on_class(c).clone()
                    - chi_pow2.value_on_class(c))
                    * half.clone();
                let sym = (chi_sq.value_on_class(c).clone()
                    + chi_pow2.value_on_class(c))
                    * half.clone();
                assert_eq!(&wedge, rep.wedge2().character().value_on_class(c));
                assert_eq!(&sym, rep.sym2().character().value_on_class(c));
            }
        }
    }

    #[test]
    fn det_characters() {
        let (_, d8rep) = d8();
        assert_eq!(d8rep.det_character().order(), 2);
        let (_, q8rep) = q8();
        assert!(q8rep.det_character().is_trivial());
    }

    #[test]
    fn restriction_to_index2_subgroup() {
        let (g, rep) = d8();
        for sub in g.index2_subgroups() {
            let sub = Arc::new(sub);
            let res = rep.restrict(&sub).unwrap();
            assert_eq!(res.dim(), 2);
            for (i, m) in sub.elements().iter().enumerate() {
                assert_eq!(res.image(i), &g.element(g.index_of(m).unwrap()).clone());
            }
        }
    }

    #[test]
    fn induced_character_vanishes_off_subgroup() {
        let (g, rep) = d8();
        for sub in g.index2_subgroups() {
            let sub = Arc::new(sub);
            let tau = rep.restrict(&sub).unwrap();
            let ind = induce_index2(&tau, &g).unwrap();
            assert_eq!(ind.dim(), 4);
            for i in 0..g.order() {
                if !sub.contains_matrix(g.element(i)) {
                    assert!(ind.character().value_on_element(i).is_zero());
                }
            }
        }
    }

    #[test]
    fn induction_of_faithful_c4_character_is_2dim_irreducible() {
        let (g, rep) = d8();
        // the cyclic rotation subgroup is the one on which the 2-dim rep
        // stays faithful abelian
        let c4 = g
            .index2_subgroups()
            .into_iter()
            .map(Arc::new)
            .find(|s| s.exponent() == 4)
            .unwrap();
        let faithful = c4
            .linear_characters()
            .into_iter()
            .find(|c| c.order() == 4)
            .unwrap();
        let one_dim = Representation::from_generator_images(
            &c4,
            &c4.generator_indices()
                .iter()
                .map(|&i| {
                    RepMatrix::new(1, 1, vec![faithful.value_on_element(i).clone()])
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let ind = induce_index2(&one_dim, &g).unwrap();
        assert_eq!(ind.dim(), 2);
        assert!(ind.character().norm().is_one());
        assert!(ind.equivalent(&rep).unwrap());
    }

    #[test]
    fn asai_restriction_character() {
        // G = D8 x D8 with the swap; H = D8 x D8; tau = first-factor 2-dim.
        let r = int_matrix(&[&[0, -1], &[1, 0]]);
        let s = int_matrix(&[&[1, 0], &[0, -1]]);
        let id2 = RepMatrix::identity(2);
        let block = |a: &RepMatrix, b: &RepMatrix| {
            let mut m = RepMatrix::zero(4, 4);
            for i in 0..2 {
                for j in 0..2 {
                    m[(i, j)] = a[(i, j)].clone();
                    m[(2 + i, 2 + j)] = b[(i, j)].clone();
                }
            }
            m
        };
        let mut swap = RepMatrix::zero(4, 4);
        for i in 0..2 {
            swap[(i, 2 + i)] = CycNum::one();
            swap[(2 + i, i)] = CycNum::one();
        }
        let h_gens = vec![
            block(&r, &id2),
            block(&s, &id2),
            block(&id2, &r),
            block(&id2, &s),
        ];
        let h = Arc::new(closure(&h_gens, 100).unwrap());
        let mut big_gens = h_gens.clone();
        big_gens.push(swap);
        let big = Arc::new(closure(&big_gens, 200).unwrap());
        assert_eq!(h.order(), 64);
        assert_eq!(big.order(), 128);

        let tau = Representation::from_generator_images(
            &h,
            &[r.clone(), s.clone(), id2.clone(), id2.clone()],
        )
        .unwrap();
        let asai = asai_construct(&tau, &big).unwrap();
        assert_eq!(asai.dim(), 4);

        let g0 = first_outside(&h, &big).unwrap();
        let g0_inv = big.inv(g0);
        for (hi, m) in h.elements().iter().enumerate() {
            let x = big.index_of(m).unwrap();
            let conj = h
                .index_of(big.element(big.mul(big.mul(g0, x), g0_inv)))
                .unwrap();
            let expect = tau.image(hi).trace() * tau.image(conj).trace();
            assert_eq!(asai.character().value_on_element(x), &expect);
        }
    }

    #[test]
    fn invariant_forms_match_type() {
        let (g, d8rep) = d8();
        let triv = LinearCharacter::trivial(&g);
        let sym = invariant_form(&d8rep, &triv, FormSymmetry::Symmetric).unwrap();
        assert!(sym.is_some());
        assert!(!sym.unwrap().gram.det().is_zero());
        assert!(invariant_form(&d8rep, &triv, FormSymmetry::Alternating)
            .unwrap()
            .is_none());

        let (gq, q8rep) = q8();
        let trivq = LinearCharacter::trivial(&gq);
        assert!(invariant_form(&q8rep, &trivq, FormSymmetry::Alternating)
            .unwrap()
            .is_some());
        assert!(invariant_form(&q8rep, &trivq, FormSymmetry::Symmetric)
            .unwrap()
            .is_none());
    }

    #[test]
    fn dual_twist_contravariance() {
        let (g, rep) = d8();
        for chi in g.linear_characters() {
            let lhs = rep.twist(&chi).unwrap().dual();
            let rhs = rep.dual().twist(&chi.inverse()).unwrap();
            assert!(lhs.equivalent(&rhs).unwrap());
        }
    }
}
