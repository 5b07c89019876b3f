//! The decision battery for 4-dimensional representations: irreducibility,
//! essential self-duality and its type, quadratic self-twists, dihedrality
//! of 2-dimensional representations, the exterior-square reducibility
//! classifier and the GL(4)-analogue classifier.
//!
//! Every boolean here is computed by at least one method that is independent
//! of the statement it feeds into; where two characterizations exist they are
//! both computed and required to agree.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;

use crate::chars::{character_table, ClassFunction};
use crate::cyclotomic::{CycNum, Rat};
use crate::error::{Error, Result};
use crate::groups::{FiniteMatrixGroup, LinearCharacter};
use crate::matrix::{commutant, RepMatrix};
use crate::reps::{induce_index2, invariant_form, BilinearForm, FormSymmetry, Representation};

/// Schur commutant and character norm computed independently; disagreement is
/// a hard error.
pub fn is_irreducible(sigma: &Representation) -> Result<bool> {
    let gens = sigma.generator_images();
    let (cdim, _) = commutant(&gens);
    let by_commutant = cdim == 1;
    let norm = sigma.character().norm();
    let by_norm = norm.is_one();
    if by_commutant != by_norm {
        return Err(Error::Inconsistency(format!(
            "commutant dimension {cdim} vs character norm {norm}"
        )));
    }
    Ok(by_norm)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SelfdualType {
    Symplectic,
    Orthogonal,
}

/// Multiplicity of the linear character `chi` in the class function `f`.
fn multiplicity(f: &ClassFunction, chi: &LinearCharacter) -> Result<u64> {
    let m = f.inner_product(&ClassFunction::from_linear(chi))?;
    m.as_rational()
        .filter(|r| r.is_integer() && **r >= Rat::zero())
        .and_then(|r| u64::try_from(r.to_integer()).ok())
        .ok_or_else(|| Error::Inconsistency(format!("non-integral multiplicity {m}")))
}

/// All linear characters chi with dual(sigma) = chi (x) sigma, each tagged
/// symplectic or orthogonal by which square of sigma contains chi^{-1}.
/// Exactly one square does, for irreducible sigma.
pub fn essential_selfduals(
    sigma: &Representation,
) -> Result<Vec<(LinearCharacter, SelfdualType)>> {
    let group = sigma.group();
    let dual_char = sigma.character().conj();
    let wedge_char = sigma.wedge2().character().clone();
    let sym_char = sigma.sym2().character().clone();
    let mut out = Vec::new();
    for chi in group.linear_characters() {
        let twisted = sigma
            .character()
            .mul(&ClassFunction::from_linear(&chi))?;
        if twisted != dual_char {
            continue;
        }
        let inv = chi.inverse();
        let in_wedge = multiplicity(&wedge_char, &inv)? > 0;
        let in_sym = multiplicity(&sym_char, &inv)? > 0;
        if in_wedge == in_sym {
            return Err(Error::Inconsistency(format!(
                "self-dual twist lies in wedge: {in_wedge}, sym: {in_sym}"
            )));
        }
        out.push((
            chi,
            if in_wedge {
                SelfdualType::Symplectic
            } else {
                SelfdualType::Orthogonal
            },
        ));
    }
    Ok(out)
}

/// Nontrivial order-2 characters chi with sigma = chi (x) sigma.
pub fn quadratic_selftwists(sigma: &Representation) -> Result<Vec<LinearCharacter>> {
    let group = sigma.group();
    let mut out = Vec::new();
    for chi in group.quadratic_characters() {
        if chi.is_trivial() {
            continue;
        }
        let twisted = sigma
            .character()
            .mul(&ClassFunction::from_linear(&chi))?;
        if twisted == *sigma.character() {
            out.push(chi);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Properness {
    Proper,
    Improper,
}

/// For an orthogonal-type sigma with invariant form C of similitude lambda:
/// proper iff det sigma = lambda^2 as linear characters (decided on the
/// generators, both sides being homomorphisms).
pub fn orthogonal_properness(
    sigma: &Representation,
    form: &BilinearForm,
) -> Result<Properness> {
    if form.symmetry != FormSymmetry::Symmetric {
        return Err(Error::BadInput("properness needs a symmetric form".into()));
    }
    if form.gram.det().is_zero() {
        return Err(Error::BadInput("degenerate form".into()));
    }
    let det_chi = sigma.det_character();
    // similitude lambda in the GO sense is the inverse of the stored
    // character: C(sigma v, sigma w) = lambda C(v, w)
    let group = sigma.group();
    let proper = group.generator_indices().iter().all(|&g| {
        let lambda = form.similitude.value_on_element(g).try_inv().expect("root of unity");
        det_chi.value_on_element(g) == &(lambda.clone() * &lambda)
    });
    if proper {
        Ok(Properness::Proper)
    } else {
        // the proper part is then an index-2 subgroup
        let lambda_sq_over_det = |i: usize| {
            let lambda = form.similitude.value_on_element(i).try_inv().expect("root of unity");
            (lambda.clone() * &lambda).try_div(det_chi.value_on_element(i)).expect("nonzero")
        };
        let proper_part = (0..group.order())
            .filter(|&i| lambda_sq_over_det(i).is_one())
            .count();
        if proper_part * 2 != group.order() {
            return Err(Error::Inconsistency(
                "improper similitude locus is not index 2".into(),
            ));
        }
        Ok(Properness::Improper)
    }
}

/// Dihedrality of a 2-dim irreducible: has a nontrivial quadratic self-twist
/// iff its restriction to some index-2 subgroup is reducible. Both sides are
/// computed and must agree.
pub fn is_dihedral2(tau: &Representation) -> Result<bool> {
    if tau.dim() != 2 {
        return Err(Error::DimMismatch {
            expected: 2,
            got: tau.dim(),
        });
    }
    if !is_irreducible(tau)? {
        return Err(Error::BadInput("dihedrality is for irreducibles".into()));
    }
    let by_twist = !quadratic_selftwists(tau)?.is_empty();
    let by_restriction = tau
        .group()
        .index2_subgroups()
        .into_iter()
        .map(Arc::new)
        .map(|h| tau.restrict(&h).map(|r| !r.character().norm().is_one()))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .any(|b| b);
    if by_twist != by_restriction {
        return Err(Error::Inconsistency(format!(
            "dihedral by twist: {by_twist}, by restriction: {by_restriction}"
        )));
    }
    Ok(by_twist)
}

/// Report of the exterior-square reducibility classifier. The reducibility
/// bit and the three conditions are computed independently of each other;
/// `equivalence_holds` records whether reducible <=> (a or b or c).
pub struct KableReport {
    pub wedge2_reducible: bool,
    pub cond_a_symplectic: bool,
    pub cond_b_selftwist: bool,
    pub cond_c_proper_orthogonal: bool,
    pub selftwist_witness: Option<LinearCharacter>,
    pub proper_form_witness: Option<BilinearForm>,
    pub selfdual_twists: Vec<(LinearCharacter, SelfdualType)>,
    pub equivalence_holds: bool,
}

pub fn kable_classify(sigma: &Representation) -> Result<KableReport> {
    if sigma.dim() != 4 {
        return Err(Error::DimMismatch {
            expected: 4,
            got: sigma.dim(),
        });
    }
    if !is_irreducible(sigma)? {
        return Err(Error::BadInput("classifier needs an irreducible input".into()));
    }

    let wedge2_reducible = !sigma.wedge2().character().norm().is_one();

    let selfdual_twists = essential_selfduals(sigma)?;
    let cond_a_symplectic = selfdual_twists
        .iter()
        .any(|(_, t)| *t == SelfdualType::Symplectic);

    let twists = quadratic_selftwists(sigma)?;
    let cond_b_selftwist = !twists.is_empty();
    let selftwist_witness = twists.into_iter().next();

    let mut cond_c_proper_orthogonal = false;
    let mut proper_form_witness = None;
    for (chi, t) in &selfdual_twists {
        if *t != SelfdualType::Orthogonal {
            continue;
        }
        let form = invariant_form(sigma, chi, FormSymmetry::Symmetric)?.ok_or_else(|| {
            Error::Inconsistency("orthogonal type without a symmetric form".into())
        })?;
        if orthogonal_properness(sigma, &form)? == Properness::Proper {
            cond_c_proper_orthogonal = true;
            proper_form_witness = Some(form);
        }
    }

    let equivalence_holds =
        wedge2_reducible == (cond_a_symplectic || cond_b_selftwist || cond_c_proper_orthogonal);

    Ok(KableReport {
        wedge2_reducible,
        cond_a_symplectic,
        cond_b_selftwist,
        cond_c_proper_orthogonal,
        selftwist_witness,
        proper_form_witness,
        selfdual_twists,
        equivalence_holds,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Gl4Type {
    TensorType,
    AsaiType,
    SymplecticType,
    InducedType,
}

/// The finite shadow of the GL(4) classification: which of the four
/// construction types the representation belongs to. The asai flag fires for
/// the improper orthogonal case; the set may be empty and may have several
/// members.
pub fn classify_gl4_analogue(sigma: &Representation) -> Result<BTreeSet<Gl4Type>> {
    if sigma.dim() != 4 || !is_irreducible(sigma)? {
        return Err(Error::BadInput("classifier needs a 4-dim irreducible".into()));
    }
    let mut out = BTreeSet::new();
    let selfduals = essential_selfduals(sigma)?;
    if selfduals
        .iter()
        .any(|(_, t)| *t == SelfdualType::Symplectic)
    {
        out.insert(Gl4Type::SymplecticType);
    }
    for (chi, t) in &selfduals {
        if *t != SelfdualType::Orthogonal {
            continue;
        }
        let form = invariant_form(sigma, chi, FormSymmetry::Symmetric)?.ok_or_else(|| {
            Error::Inconsistency("orthogonal type without a symmetric form".into())
        })?;
        match orthogonal_properness(sigma, &form)? {
            Properness::Proper => {
                out.insert(Gl4Type::TensorType);
            }
            Properness::Improper => {
                out.insert(Gl4Type::AsaiType);
            }
        }
    }
    let twists = quadratic_selftwists(sigma)?;
    if let Some(chi) = twists.first() {
        // construct the induction witness and require the round trip to close
        let witness = clifford_witness(sigma, chi)?;
        if witness.is_none() {
            return Err(Error::Inconsistency(
                "self-twist without an index-2 induction witness".into(),
            ));
        }
        out.insert(Gl4Type::InducedType);
    }
    Ok(out)
}

/// For sigma with self-twist chi: extracts an irreducible half-dimension
/// constituent of the restriction to ker(chi) as an honest representation
/// and re-induces it; returns the constituent and the induced representation
/// once the induced character matches sigma.
pub fn clifford_witness(
    sigma: &Representation,
    chi: &LinearCharacter,
) -> Result<Option<(Arc<FiniteMatrixGroup>, Representation, Representation)>> {
    let group = sigma.group();
    if chi.order() != 2 {
        return Err(Error::BadInput("self-twist must be quadratic".into()));
    }
    let members: Vec<usize> = (0..group.order())
        .filter(|&i| chi.value_on_element(i).is_one())
        .collect();
    let h = Arc::new(group.subgroup_from_indices(&members)?);
    let res = sigma.restrict(&h)?;
    let table = character_table(&h)?;
    let parts = table.decompose(res.character())?;
    let half = sigma.dim() / 2;
    for (idx, mult, degree) in parts {
        if degree as usize != half || mult != 1 {
            continue;
        }
        let theta = &table.rows()[idx];
        let tau = isotypic_subrepresentation(&res, theta, degree as usize)?;
        let induced = induce_index2(&tau, group)?;
        if induced.character() == sigma.character() {
            return Ok(Some((h, tau, induced)));
        }
    }
    Ok(None)
}

/// Carves out the theta-isotypic subspace of sigma via the exact projector
/// (deg/|G|) sum_g conj(theta(g)) sigma(g) and rewrites the action in a
/// basis of its column space.
fn isotypic_subrepresentation(
    sigma: &Representation,
    theta: &ClassFunction,
    degree: usize,
) -> Result<Representation> {
    let group = sigma.group();
    let d = sigma.dim();
    let mut proj = RepMatrix::zero(d, d);
    for i in 0..group.order() {
        let coeff = theta.value_on_element(i).conj();
        proj = proj.add(&sigma.image(i).scale(&coeff));
    }
    let scale = CycNum::from_int(degree as i64)
        .try_div(&CycNum::from_int(group.order() as i64))?;
    proj = proj.scale(&scale);
    let basis = proj.column_basis();
    if basis.cols() == 0 {
        return Err(Error::Inconsistency("empty isotypic component".into()));
    }
    let images = (0..group.order())
        .map(|i| {
            let moved = sigma.image(i).matmul(&basis);
            basis.solve(&moved).ok_or_else(|| {
                Error::Inconsistency("isotypic subspace is not invariant".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::from_images(group, images)
}
