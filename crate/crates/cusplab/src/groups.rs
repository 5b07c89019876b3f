//! Finite matrix groups: breadth-first closure from generators, conjugacy
//! classes, commutator subgroup, linear/quadratic characters of the
//! abelianization, and index-2 subgroups.
//!
//! All structural data is precomputed at closure time and the finished group
//! is immutable, so it can be shared behind an `Arc` by characters and
//! representations.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::cyclotomic::{lcm, CycNum};
use crate::error::{Error, Result};
use crate::matrix::RepMatrix;

pub struct FiniteMatrixGroup {
    dim: usize,
    elements: Vec<RepMatrix>,
    index: HashMap<RepMatrix, usize>,
    gens: Vec<usize>,
    words: Vec<Vec<usize>>,
    trans: Vec<Vec<usize>>,
    inv_trans: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    orders: Vec<u32>,
    exponent: u32,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

/// Enumerates the group generated by `generators` by breadth-first products,
/// visiting generators in index order so the element ordering is
/// deterministic. Fails cleanly if the closure passes `max_order`.
pub fn closure(generators: &[RepMatrix], max_order: usize) -> Result<FiniteMatrixGroup> {
    let dim = generators
        .first()
        .map(|m| m.dim())
        .ok_or_else(|| Error::BadInput("no generators".into()))?;
    for g in generators {
        if !g.is_square() || g.dim() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                got: g.rows(),
            });
        }
        if g.det().is_zero() {
            return Err(Error::SingularGenerator);
        }
    }

    let mut elements = vec![RepMatrix::identity(dim)];
    let mut index = HashMap::new();
    index.insert(elements[0].clone(), 0usize);
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut trans: Vec<Vec<usize>> = Vec::new();

    let mut head = 0;
    while head < elements.len() {
        let mut row = Vec::with_capacity(generators.len());
        for (gi, g) in generators.iter().enumerate() {
            let prod = elements[head].matmul(g);
            let j = match index.get(&prod) {
                Some(&j) => j,
                None => {
                    let j = elements.len();
                    if j >= max_order {
                        return Err(Error::OrderBoundExceeded(max_order));
                    }
                    let mut w = words[head].clone();
                    w.push(gi);
                    words.push(w);
                    index.insert(prod.clone(), j);
                    elements.push(prod);
                    j
                }
            };
            row.push(j);
        }
        trans.push(row);
        head += 1;
    }

    let n = elements.len();
    let ngen = generators.len();

    // Right multiplication by g is a permutation of the element indices;
    // inverting it gives right multiplication by g^{-1}.
    let mut inv_trans = vec![vec![0usize; ngen]; n];
    for i in 0..n {
        for g in 0..ngen {
            inv_trans[trans[i][g]][g] = i;
        }
    }

    let gens = generators
        .iter()
        .map(|g| index[g])
        .collect::<Vec<_>>();

    let mut group = FiniteMatrixGroup {
        dim,
        elements,
        index,
        gens,
        words,
        trans,
        inv_trans,
        inverse: Vec::new(),
        orders: Vec::new(),
        exponent: 1,
        classes: Vec::new(),
        class_of: Vec::new(),
    };

    group.inverse = (0..n)
        .map(|i| {
            let mut x = 0;
            for &g in group.words[i].iter().rev() {
                x = group.inv_trans[x][g];
            }
            x
        })
        .collect();

    group.orders = (0..n)
        .map(|i| {
            let mut x = i;
            let mut k = 1u32;
            while x != 0 {
                x = group.mul(x, i);
                k += 1;
            }
            k
        })
        .collect();
    group.exponent = group
        .orders
        .iter()
        .fold(1u32, |acc, &o| lcm(acc, o));

    // Conjugacy classes as orbits of conjugation by the generators; classes
    // ordered by their smallest element index.
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        let mut orbit = vec![start];
        class_of[start] = cid;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in 0..ngen {
                let gi = group.gens[g];
                let y = group.trans[group.mul(group.inverse[gi], x)][g];
                if class_of[y] == usize::MAX {
                    class_of[y] = cid;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    group.classes = classes;
    group.class_of = class_of;

    Ok(group)
}

impl FiniteMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[RepMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &RepMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &RepMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gens
    }

    pub fn generators(&self) -> Vec<RepMatrix> {
        self.gens.iter().map(|&i| self.elements[i].clone()).collect()
    }

    /// Generator word (indices into the generator list) for element `i`.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    /// BFS predecessor: element `i` equals `parent * generator`, except for
    /// the identity which has none.
    pub fn bfs_parent(&self, i: usize) -> Option<(usize, usize)> {
        let (&last, prefix) = self.words[i].split_last()?;
        let mut x = 0;
        for &g in prefix {
            x = self.trans[x][g];
        }
        Some((x, last))
    }

    /// Product of elements by index, via the right-multiplication tables.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        let mut x = i;
        for &g in &self.words[j] {
            x = self.trans[x][g];
        }
        x
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn pow(&self, i: usize, k: i64) -> usize {
        let o = self.orders[i] as i64;
        let k = k.rem_euclid(o);
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, i);
        }
        x
    }

    pub fn element_order(&self, i: usize) -> u32 {
        self.orders[i]
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    /// Class containing the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of[self.inverse[self.classes[c][0]]]
    }

    /// Class containing the k-th powers of class `c`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        self.class_of[self.pow(self.classes[c][0], k)]
    }

    pub fn contains_matrix(&self, m: &RepMatrix) -> bool {
        self.index.contains_key(m)
    }

    /// Element indices of the subgroup generated by all commutators of
    /// generator pairs, closed up to its normal closure.
    pub fn commutator_subgroup_indices(&self) -> Vec<usize> {
        let mut sub_gens: Vec<usize> = Vec::new();
        for &a in &self.gens {
            for &b in &self.gens {
                let c = self.mul(self.mul(self.inverse[a], self.inverse[b]), self.mul(a, b));
                if c != 0 && !sub_gens.contains(&c) {
                    sub_gens.push(c);
                }
            }
        }
        loop {
            let members = self.generated_subgroup(&sub_gens);
            let mut grew = false;
            'outer: for &x in &members {
                for &g in &self.gens {
                    let y = self.mul(self.mul(self.inverse[g], x), g);
                    if !members.contains(&y) {
                        sub_gens.push(y);
                        grew = true;
                        break 'outer;
                    }
                }
            }
            if !grew {
                let mut v: Vec<usize> = members.into_iter().collect();
                v.sort_unstable();
                return v;
            }
        }
    }

    fn generated_subgroup(&self, sub_gens: &[usize]) -> HashSet<usize> {
        let mut members = HashSet::new();
        members.insert(0usize);
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in sub_gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    queue.push(y);
                }
            }
        }
        members
    }

    /// Builds a standalone group from a subset of this group's elements.
    /// A small generating set is chosen greedily so the matrix closure stays
    /// cheap; the element matrices are shared with the parent, so restriction
    /// by matrix lookup works across the two groups.
    pub fn subgroup_from_indices(&self, members: &[usize]) -> Result<FiniteMatrixGroup> {
        let member_set: HashSet<usize> = members.iter().copied().collect();
        if !member_set.contains(&0) {
            return Err(Error::NotASubgroup);
        }
        let mut sub_gens: Vec<usize> = Vec::new();
        let mut generated = self.generated_subgroup(&sub_gens);
        for &m in members {
            if !generated.contains(&m) {
                sub_gens.push(m);
                generated = self.generated_subgroup(&sub_gens);
            }
        }
        if generated.len() != member_set.len() || !generated.is_subset(&member_set) {
            return Err(Error::NotASubgroup);
        }
        let gen_mats: Vec<RepMatrix> = if sub_gens.is_empty() {
            vec![RepMatrix::identity(self.dim)]
        } else {
            sub_gens.iter().map(|&i| self.elements[i].clone()).collect()
        };
        closure(&gen_mats, members.len() + 1)
    }

    pub fn commutator_subgroup(&self) -> FiniteMatrixGroup {
        self.subgroup_from_indices(&self.commutator_subgroup_indices())
            .expect("commutator subgroup closure")
    }

    pub fn is_subgroup_of(&self, g: &FiniteMatrixGroup) -> bool {
        self.dim == g.dim && self.elements.iter().all(|m| g.contains_matrix(m))
    }

    /// All homomorphisms into the roots of unity, through the abelianization.
    pub fn linear_characters(self: &Arc<Self>) -> Vec<LinearCharacter> {
        let derived = self.commutator_subgroup_indices();
        // Cosets of the derived subgroup.
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for i in 0..n {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let cid = reps.len();
            reps.push(i);
            for &d in &derived {
                coset_of[self.mul(d, i)] = cid;
            }
        }
        let q = reps.len();
        let q_mul = |a: usize, b: usize| coset_of[self.mul(reps[a], reps[b])];
        let q_order = |a: usize| {
            let mut x = a;
            let mut k = 1u32;
            while x != coset_of[0] {
                x = q_mul(x, a);
                k += 1;
            }
            k
        };

        // Greedy generating set of the (abelian) quotient.
        let mut q_gens: Vec<usize> = Vec::new();
        let mut span = vec![coset_of[0]];
        for c in 0..q {
            if !span.contains(&c) {
                q_gens.push(c);
                let mut new_span: Vec<usize> = vec![coset_of[0]];
                let mut queue = vec![coset_of[0]];
                while let Some(x) = queue.pop() {
                    for &g in &q_gens {
                        let y = q_mul(x, g);
                        if !new_span.contains(&y) {
                            new_span.push(y);
                            queue.push(y);
                        }
                    }
                }
                span = new_span;
            }
        }

        // Words for every coset in terms of the quotient generators.
        let mut q_word: Vec<Option<Vec<usize>>> = vec![None; q];
        q_word[coset_of[0]] = Some(Vec::new());
        let mut queue = vec![coset_of[0]];
        while let Some(x) = queue.pop() {
            for (gi, &g) in q_gens.iter().enumerate() {
                let y = q_mul(x, g);
                if q_word[y].is_none() {
                    let mut w = q_word[x].clone().unwrap();
                    w.push(gi);
                    q_word[y] = Some(w);
                    queue.push(y);
                }
            }
        }

        // Enumerate value assignments on the generators; generators of a
        // greedy set need not be independent, so each assignment is checked
        // for multiplicativity and inconsistent ones are dropped.
        let gen_orders: Vec<u32> = q_gens.iter().map(|&g| q_order(g)).collect();
        let mut chars = Vec::new();
        let mut assignment = vec![0u32; q_gens.len()];
        loop {
            let gen_vals: Vec<CycNum> = assignment
                .iter()
                .zip(&gen_orders)
                .map(|(&e, &m)| {
                    CycNum::root_of_unity(m, e).expect("root of unity within conductor cap")
                })
                .collect();
            let values: Vec<CycNum> = (0..q)
                .map(|c| {
                    let mut v = CycNum::one();
                    for &gi in q_word[c].as_ref().unwrap() {
                        v = v * &gen_vals[gi];
                    }
                    v
                })
                .collect();
            let consistent = (0..q).all(|x| {
                q_gens
                    .iter()
                    .enumerate()
                    .all(|(gi, &g)| values[q_mul(x, g)] == values[x].clone() * &gen_vals[gi])
            });
            if consistent {
                let class_values: Vec<CycNum> = self
                    .classes
                    .iter()
                    .map(|cls| values[coset_of[cls[0]]].clone())
                    .collect();
                let order = class_values
                    .iter()
                    .map(|v| v.order_as_root_of_unity(self.exponent).expect("root of unity"))
                    .fold(1u32, lcm);
                chars.push(LinearCharacter {
                    group: Arc::clone(self),
                    class_values,
                    order,
                });
            }

            // odometer step
            let mut pos = 0;
            loop {
                if pos == assignment.len() {
                    debug_assert_eq!(chars.len(), q);
                    return chars;
                }
                assignment[pos] += 1;
                if assignment[pos] < gen_orders[pos] {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Linear characters of order at most 2 (the trivial one included).
    pub fn quadratic_characters(self: &Arc<Self>) -> Vec<LinearCharacter> {
        self.linear_characters()
            .into_iter()
            .filter(|c| c.order() <= 2)
            .collect()
    }

    /// Kernels of the nontrivial quadratic characters; these are exactly the
    /// index-2 subgroups.
    pub fn index2_subgroups(self: &Arc<Self>) -> Vec<FiniteMatrixGroup> {
        self.quadratic_characters()
            .iter()
            .filter(|c| !c.is_trivial())
            .map(|c| {
                let members: Vec<usize> = (0..self.order())
                    .filter(|&i| c.value_on_element(i).is_one())
                    .collect();
                debug_assert_eq!(members.len() * 2, self.order());
                self.subgroup_from_indices(&members)
                    .expect("character kernel is a subgroup")
            })
            .collect()
    }
}

/// A degree-1 character, stored by its values on the conjugacy classes.
#[derive(Clone)]
pub struct LinearCharacter {
    group: Arc<FiniteMatrixGroup>,
    class_values: Vec<CycNum>,
    order: u32,
}

impl LinearCharacter {
    pub fn trivial(group: &Arc<FiniteMatrixGroup>) -> LinearCharacter {
        LinearCharacter {
            group: Arc::clone(group),
            class_values: vec![CycNum::one(); group.num_classes()],
            order: 1,
        }
    }

    /// Builds a character from per-element values, checking class constancy
    /// and multiplicativity against the generators.
    pub fn from_element_values(
        group: &Arc<FiniteMatrixGroup>,
        values: &[CycNum],
    ) -> Result<LinearCharacter> {
        if values.len() != group.order() {
            return Err(Error::BadInput("value list length != group order".into()));
        }
        for cls in group.conjugacy_classes() {
            if cls.iter().any(|&i| values[i] != values[cls[0]]) {
                return Err(Error::BadInput("values not constant on classes".into()));
            }
        }
        for x in 0..group.order() {
            for &g in group.generator_indices() {
                if values[group.mul(x, g)] != values[x].clone() * &values[g] {
                    return Err(Error::BadInput("values not multiplicative".into()));
                }
            }
        }
        let order = values
            .iter()
            .map(|v| {
                v.order_as_root_of_unity(group.exponent())
                    .ok_or_else(|| Error::BadInput("value is not a root of unity".into()))
            })
            .try_fold(1u32, |acc, o| o.map(|o| lcm(acc, o)))?;
        let class_values = group
            .conjugacy_classes()
            .iter()
            .map(|cls| values[cls[0]].clone())
            .collect();
        Ok(LinearCharacter {
            group: Arc::clone(group),
            class_values,
            order,
        })
    }

    pub fn group(&self) -> &Arc<FiniteMatrixGroup> {
        &self.group
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn value_on_class(&self, c: usize) -> &CycNum {
        &self.class_values[c]
    }

    pub fn value_on_element(&self, i: usize) -> &CycNum {
        &self.class_values[self.group.class_of(i)]
    }

    pub fn class_values(&self) -> &[CycNum] {
        &self.class_values
    }

    pub fn inverse(&self) -> LinearCharacter {
        LinearCharacter {
            group: Arc::clone(&self.group),
            class_values: self.class_values.iter().map(|v| v.conj()).collect(),
            order: self.order,
        }
    }

    pub fn product(&self, other: &LinearCharacter) -> Result<LinearCharacter> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let class_values: Vec<CycNum> = self
            .class_values
            .iter()
            .zip(&other.class_values)
            .map(|(a, b)| a.clone() * b)
            .collect();
        let order = class_values
            .iter()
            .map(|v| v.order_as_root_of_unity(self.group.exponent()).expect("root of unity"))
            .fold(1u32, lcm);
        Ok(LinearCharacter {
            group: Arc::clone(&self.group),
            class_values,
            order,
        })
    }

    pub fn same_values(&self, other: &LinearCharacter) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.class_values == other.class_values
    }
}

impl PartialEq for LinearCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.same_values(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    fn int_matrix(rows: &[&[i64]]) -> RepMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| CycNum::from_int(x)).collect())
                .collect(),
        )
    }

    /// 5x5 permutation matrices for the transposition (0 1) and 5-cycle.
    fn s5_perm_gens() -> Vec<RepMatrix> {
        let mut t = RepMatrix::zero(5, 5);
        for (i, j) in [(0, 1), (1, 0), (2, 2), (3, 3), (4, 4)] {
            t[(i, j)] = CycNum::one();
        }
        let mut c = RepMatrix::zero(5, 5);
        for i in 0..5 {
            c[((i + 1) % 5, i)] = CycNum::one();
        }
        vec![t, c]
    }

    fn d8_gens() -> Vec<RepMatrix> {
        // rotation by pi/2 and a reflection
        vec![
            int_matrix(&[&[0, -1], &[1, 0]]),
            int_matrix(&[&[1, 0], &[0, -1]]),
        ]
    }

    fn q8_gens() -> Vec<RepMatrix> {
        let i = CycNum::zeta(4).unwrap();
        let one = CycNum::one();
        vec![
            Matrix::from_rows(vec![
                vec![i.clone(), CycNum::zero()],
                vec![CycNum::zero(), i.conj()],
            ]),
            Matrix::from_rows(vec![
                vec![CycNum::zero(), one.clone()],
                vec![CycNum::zero() - one, CycNum::zero()],
            ]),
        ]
    }

    #[test]
    fn trivial_group() {
        let g = closure(&[RepMatrix::identity(4)], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.num_classes(), 1);
    }

    #[test]
    fn s5_structure() {
        let g = Arc::new(closure(&s5_perm_gens(), 200).unwrap());
        assert_eq!(g.order(), 120);
        assert_eq!(g.num_classes(), 7);
        assert_eq!(g.commutator_subgroup_indices().len(), 60);
        let lin = g.linear_characters();
        assert_eq!(lin.len(), 2);
        assert_eq!(lin.iter().filter(|c| c.order() == 2).count(), 1);
        let subs = g.index2_subgroups();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].order(), 60);
        assert!(subs[0].is_subgroup_of(&g));
    }

    #[test]
    fn class_sizes_divide_order() {
        let g = closure(&s5_perm_gens(), 200).unwrap();
        let total: usize = g.conjugacy_classes().iter().map(|c| c.len()).sum();
        assert_eq!(total, g.order());
        for c in 0..g.num_classes() {
            assert_eq!(g.order() % g.class_size(c), 0);
        }
    }

    #[test]
    fn mul_and_inverse_consistent() {
        let g = closure(&d8_gens(), 20).unwrap();
        assert_eq!(g.order(), 8);
        for i in 0..g.order() {
            assert_eq!(g.mul(i, g.inv(i)), 0);
            for j in 0..g.order() {
                let prod = g.element(i).matmul(g.element(j));
                assert_eq!(g.index_of(&prod), Some(g.mul(i, j)));
            }
        }
    }

    #[test]
    fn d8_characters_and_subgroups() {
        let g = Arc::new(closure(&d8_gens(), 20).unwrap());
        assert_eq!(g.num_classes(), 5);
        assert_eq!(g.linear_characters().len(), 4);
        assert_eq!(g.index2_subgroups().len(), 3);
    }

    #[test]
    fn q8_structure() {
        let g = Arc::new(closure(&q8_gens(), 20).unwrap());
        assert_eq!(g.order(), 8);
        assert_eq!(g.num_classes(), 5);
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.linear_characters().len(), 4);
        assert_eq!(g.index2_subgroups().len(), 3);
    }

    #[test]
    fn order_bound_error() {
        assert!(matches!(
            closure(&s5_perm_gens(), 50),
            Err(Error::OrderBoundExceeded(50))
        ));
    }

    #[test]
    fn singular_generator_rejected() {
        assert!(matches!(
            closure(&[RepMatrix::zero(2, 2)], 10),
            Err(Error::SingularGenerator)
        ));
    }

    #[test]
    fn element_orders_divide_exponent() {
        let g = closure(&s5_perm_gens(), 200).unwrap();
        assert_eq!(g.exponent(), 60);
        for i in 0..g.order() {
            assert_eq!(g.exponent() % g.element_order(i), 0);
        }
    }

    #[test]
    fn power_and_inverse_classes() {
        let g = closure(&q8_gens(), 20).unwrap();
        for c in 0..g.num_classes() {
            let r = g.class_rep(c);
            assert_eq!(g.power_class(c, -1), g.inverse_class(c));
            assert_eq!(g.pow(r, g.element_order(r) as i64), 0);
        }
    }
}
