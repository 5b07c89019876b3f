//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (run with --nocapture to see them). A test only prints
//! its pass line after every assertion in it has held.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cusplab::catalog::{catalog, catalog_names, four_dim_names, DEFAULT_MAX_ORDER};
use cusplab::chars::character_table;
use cusplab::criteria::{
    classify_gl4_analogue, clifford_witness, essential_selfduals, is_irreducible,
    kable_classify, orthogonal_properness, quadratic_selftwists, Gl4Type, Properness,
    SelfdualType,
};
use cusplab::matrix::commutant;
use cusplab::reps::{invariant_form, FormSymmetry, Representation};
use cusplab::satake::{fuzz_identity, IdentityName, PlaceKind};
use cusplab::weyl::w0_for_levi;
use cusplab::{CycNum, RepMatrix};

fn finish(name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{name}: took {elapsed:?}, budget {budget:?}"
    );
    println!("{name}: pass ({elapsed:?})");
}

fn c(n: i64) -> CycNum {
    CycNum::from_int(n)
}

fn diag6(entries: [i64; 6]) -> RepMatrix {
    let mut m = RepMatrix::zero(6, 6);
    for (i, e) in entries.into_iter().enumerate() {
        m[(i, i)] = c(e);
    }
    m
}

#[test]
fn criterion_1_golden_order_192() {
    let start = Instant::now();
    let entry = catalog("g192", DEFAULT_MAX_ORDER).unwrap();
    assert_eq!(entry.group.order(), 192);

    // images of the four generators under the exterior square, in the
    // ordered basis of antisymmetrized coordinate pairs
    let gens = entry.rep.generator_images();
    assert_eq!(gens.len(), 4);
    let wedges: Vec<RepMatrix> = gens.iter().map(RepMatrix::wedge2).collect();

    let a = diag6([1, -1, -1, -1, -1, 1]);
    let b = diag6([-1, 1, -1, -1, 1, -1]);
    let i = CycNum::zeta(4).unwrap();
    let mut cc = RepMatrix::zero(6, 6);
    cc[(0, 5)] = c(-1);
    cc[(1, 1)] = c(0) - &i;
    cc[(2, 3)] = c(0) - &i;
    cc[(3, 2)] = i.clone();
    cc[(4, 4)] = i.clone();
    // the third generator sends the first basis pair to (-i e3, -i e4),
    // so this corner picks up (-i)^2 = -1
    cc[(5, 0)] = c(-1);
    let mut d = RepMatrix::zero(6, 6);
    d[(0, 3)] = c(1);
    d[(1, 0)] = c(1);
    d[(2, 4)] = c(-1);
    d[(3, 1)] = c(1);
    d[(4, 5)] = c(-1);
    d[(5, 2)] = c(1);
    assert_eq!(wedges[0], a);
    assert_eq!(wedges[1], b);
    assert_eq!(wedges[2], cc);
    assert_eq!(wedges[3], d);

    // the commutant of the first three images is 6-dimensional and every
    // member has the displayed cross shape
    let (dim3, basis) = commutant(&wedges[..3]);
    assert_eq!(dim3, 6);
    let allowed = [
        (0usize, 0usize),
        (0, 5),
        (1, 1),
        (2, 2),
        (2, 3),
        (3, 2),
        (3, 3),
        (4, 4),
        (5, 0),
        (5, 5),
    ];
    for x in &basis {
        for r in 0..6 {
            for col in 0..6 {
                if !allowed.contains(&(r, col)) {
                    assert!(x[(r, col)].is_zero(), "entry ({r},{col}) outside the shape");
                }
            }
        }
        assert_eq!(x[(0, 0)], x[(5, 5)]);
        // the corner block commutes with a symmetric swap
        assert_eq!(x[(5, 0)], x[(0, 5)]);
        assert_eq!(x[(2, 2)], x[(3, 3)]);
        assert_eq!(x[(3, 2)], c(0) - &x[(2, 3)]);
    }
    let (dim4, _) = commutant(&wedges);
    assert_eq!(dim4, 1);

    assert!(is_irreducible(&entry.rep).unwrap());
    assert!(essential_selfduals(&entry.rep).unwrap().is_empty());
    assert!(quadratic_selftwists(&entry.rep).unwrap().is_empty());
    assert!(is_irreducible(&entry.rep.wedge2()).unwrap());
    let report = kable_classify(&entry.rep).unwrap();
    assert!(!report.wedge2_reducible);
    assert!(report.equivalence_holds);
    finish("criterion 1, golden order-192 example", start, Duration::from_secs(30));
}

#[test]
fn criterion_2_symmetric_group_chain() {
    let start = Instant::now();
    let entry = catalog("s5std", DEFAULT_MAX_ORDER).unwrap();
    let wedge = entry.rep.wedge2();
    assert!(wedge.character().norm().is_one());

    let sub = Arc::new(entry.group.commutator_subgroup());
    assert_eq!(sub.order() * 2, entry.group.order());
    let restricted = wedge.restrict(&sub).unwrap();
    assert_eq!(restricted.character().norm(), c(2));
    let table = character_table(&sub).unwrap();
    let mut degrees: Vec<u32> = table
        .decompose(restricted.character())
        .unwrap()
        .iter()
        .map(|&(_, _, d)| d)
        .collect();
    degrees.sort_unstable();
    assert_eq!(degrees, [3, 3]);

    let sigma_sub = entry.rep.restrict(&sub).unwrap();
    assert!(is_irreducible(&sigma_sub).unwrap());
    // the standard representation is self-dual with integer character values
    assert_eq!(entry.rep.character().conj(), *entry.rep.character());
    for v in entry.rep.character().values() {
        let r = v.as_rational().expect("integer character value");
        assert!(r.is_integer());
    }
    let types = classify_gl4_analogue(&sigma_sub).unwrap();
    assert!(types.contains(&Gl4Type::TensorType));
    finish("criterion 2, symmetric group chain", start, Duration::from_secs(10));
}

#[test]
fn criterion_3_exhaustive_classifier() {
    let start = Instant::now();
    let names = four_dim_names();
    assert!(names.len() >= 8);
    let mut coverage: BTreeSet<&str> = BTreeSet::new();
    for name in names {
        let entry = catalog(name, DEFAULT_MAX_ORDER).unwrap();
        let report = kable_classify(&entry.rep).unwrap();
        assert!(report.equivalence_holds, "{name}");
        let flags = (
            report.cond_a_symplectic,
            report.cond_b_selftwist,
            report.cond_c_proper_orthogonal,
        );
        let count =
            usize::from(flags.0) + usize::from(flags.1) + usize::from(flags.2);
        coverage.insert(match (count, flags) {
            (0, _) => "neither",
            (1, (true, _, _)) => "a-only",
            (1, (_, true, _)) => "b-only",
            (1, (_, _, true)) => "c-only",
            _ => "multi",
        });
    }
    assert_eq!(
        coverage,
        BTreeSet::from(["neither", "a-only", "b-only", "c-only", "multi"])
    );
    finish("criterion 3, exhaustive classifier check", start, Duration::from_secs(300));
}

#[test]
fn criterion_4_twisted_tensor_dihedrality() {
    let start = Instant::now();
    let nondihedral = catalog("asai(sl23)", DEFAULT_MAX_ORDER).unwrap();
    let report = kable_classify(&nondihedral.rep).unwrap();
    assert!(is_irreducible(&nondihedral.rep.wedge2()).unwrap());
    assert!(!report.wedge2_reducible);
    assert!(!report.cond_b_selftwist);
    assert!(!report.cond_a_symplectic);
    assert!(!report.cond_c_proper_orthogonal);
    // essentially self-dual of improper orthogonal type
    let selfduals = essential_selfduals(&nondihedral.rep).unwrap();
    let (chi, t) = selfduals.first().expect("essentially self-dual");
    assert_eq!(*t, SelfdualType::Orthogonal);
    let form = invariant_form(&nondihedral.rep, chi, FormSymmetry::Symmetric)
        .unwrap()
        .expect("symmetric invariant form");
    assert_eq!(
        orthogonal_properness(&nondihedral.rep, &form).unwrap(),
        Properness::Improper
    );

    let dihedral = catalog("asai(d8)", DEFAULT_MAX_ORDER).unwrap();
    let report = kable_classify(&dihedral.rep).unwrap();
    assert!(report.cond_b_selftwist);
    assert!(report.wedge2_reducible);
    assert!(report.equivalence_holds);
    finish("criterion 4, twisted tensor dihedrality", start, Duration::from_secs(120));
}

#[test]
fn criterion_5_parameter_identity_suite() {
    let start = Instant::now();
    for id in IdentityName::all() {
        let kinds: &[PlaceKind] = if id.place_dependent() {
            &[PlaceKind::Split, PlaceKind::Inert]
        } else {
            &[PlaceKind::Split]
        };
        for &kind in kinds {
            let report = fuzz_identity(id, kind, 1000, 7).unwrap();
            assert!(
                report.failures.is_empty(),
                "{id} {kind:?}: failures {:?}",
                report.failures
            );
        }
    }
    finish("criterion 5, parameter identity suite", start, Duration::from_secs(60));
}

#[test]
fn criterion_6_levi_parity_dichotomy() {
    let start = Instant::now();
    for n in 1..=8 {
        let act = w0_for_levi(n).unwrap();
        assert_eq!(act.a3_flipped, (n + 3) % 2 == 0, "n = {n}");
        assert!(act.action.contains(&(act.rank - 2, act.rank - 2)), "n = {n}");
    }
    // displayed tables for the three smallest ranks
    let act = w0_for_levi(1).unwrap();
    assert_eq!(act.action, vec![(2, 2), (3, 4), (4, 3)]);
    let act = w0_for_levi(2).unwrap();
    assert_eq!(act.action, vec![(1, 1), (3, 3), (4, 4), (5, 5)]);
    let act = w0_for_levi(3).unwrap();
    assert_eq!(act.action, vec![(1, 2), (2, 1), (4, 4), (5, 6), (6, 5)]);
    finish("criterion 6, Levi parity dichotomy", start, Duration::from_secs(1));
}

fn two() -> CycNum {
    c(2)
}

#[test]
fn criterion_7_cross_module_consistency() {
    let start = Instant::now();
    // character formulas for the exterior and symmetric squares against the
    // matrix constructions, on every catalog representation and class
    for name in catalog_names() {
        let entry = catalog(name, DEFAULT_MAX_ORDER).unwrap();
        let chi = entry.rep.character().clone();
        let chi_sq = chi.mul(&chi).unwrap();
        let chi_power2 = entry.rep.power_character(2);
        let wedge_chi = entry.rep.wedge2().character().clone();
        let sym_chi = entry.rep.sym2().character().clone();
        for class in 0..entry.group.num_classes() {
            let half_diff = chi_sq
                .value_on_class(class)
                .try_sub(chi_power2.value_on_class(class))
                .unwrap()
                .try_div(&two())
                .unwrap();
            let half_sum = chi_sq
                .value_on_class(class)
                .try_add(chi_power2.value_on_class(class))
                .unwrap()
                .try_div(&two())
                .unwrap();
            assert_eq!(*wedge_chi.value_on_class(class), half_diff, "{name} class {class}");
            assert_eq!(*sym_chi.value_on_class(class), half_sum, "{name} class {class}");
        }
        // full orthogonality of the irreducible characters
        let table = character_table(&entry.group).unwrap();
        let rows = table.rows();
        for (i, r1) in rows.iter().enumerate() {
            for (j, r2) in rows.iter().enumerate() {
                let ip = r1.inner_product(r2).unwrap();
                if i == j {
                    assert!(ip.is_one(), "{name} rows {i},{j}");
                } else {
                    assert!(ip.is_zero(), "{name} rows {i},{j}");
                }
            }
        }
    }

    // double-method irreducibility agreement on randomly constructed
    // representations; is_irreducible errors out on any disagreement
    let base: Vec<_> = ["d8", "q8", "sl23", "s5std", "a5std", "d8xq8"]
        .iter()
        .map(|n| catalog(n, DEFAULT_MAX_ORDER).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    for trial in 0..100 {
        let entry = &base[rng.gen_range(0..base.len())];
        let chars = entry.group.linear_characters();
        let rep = &entry.rep;
        let built: Representation = match rng.gen_range(0..5) {
            0 => rep.twist(&chars[rng.gen_range(0..chars.len())]).unwrap(),
            1 => rep.dual(),
            2 => {
                let twisted = rep.twist(&chars[rng.gen_range(0..chars.len())]).unwrap();
                rep.direct_sum(&twisted).unwrap()
            }
            3 => rep.wedge2(),
            _ => {
                let mut subs = entry.group.index2_subgroups();
                if subs.is_empty() {
                    rep.sym2()
                } else {
                    let h = Arc::new(subs.swap_remove(rng.gen_range(0..subs.len())));
                    rep.restrict(&h).unwrap()
                }
            }
        };
        // both methods run inside and must agree or this errors
        is_irreducible(&built).unwrap_or_else(|e| panic!("trial {trial}: {e}"));
    }
    finish("criterion 7, cross-module consistency", start, Duration::from_secs(300));
}

#[test]
fn criterion_8_index2_round_trip() {
    let start = Instant::now();
    let mut with_twist = 0;
    for name in four_dim_names() {
        let entry = catalog(name, DEFAULT_MAX_ORDER).unwrap();
        let twists = quadratic_selftwists(&entry.rep).unwrap();
        if twists.is_empty() {
            // converse: without a self-twist the restriction to every
            // index-2 subgroup stays irreducible, so no induction from
            // index 2 can reproduce the representation
            for h in entry.group.index2_subgroups() {
                let h = Arc::new(h);
                let res = entry.rep.restrict(&h).unwrap();
                assert!(
                    res.character().norm().is_one(),
                    "{name}: reducible restriction without a self-twist"
                );
            }
            continue;
        }
        with_twist += 1;
        for chi in &twists {
            let witness = clifford_witness(&entry.rep, chi).unwrap();
            let (h, tau, induced) =
                witness.unwrap_or_else(|| panic!("{name}: no induction witness"));
            assert_eq!(h.order() * 2, entry.group.order());
            assert_eq!(tau.dim() * 2, entry.rep.dim());
            assert_eq!(induced.character(), entry.rep.character(), "{name}");
        }
    }
    assert!(with_twist >= 2);
    finish("criterion 8, index-2 induction round trip", start, Duration::from_secs(300));
}
