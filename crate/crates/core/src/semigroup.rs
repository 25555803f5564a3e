//! Finite semigroups given by Cayley tables, Green's relations and their
//! starred generalisations, abundance, idempotent-connectedness, concordance
//! and the biordered set of idempotents.
//!
//! Products are read left to right: `mul(i, j)` is row `i`, column `j`.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matching::BipartiteGraph;

/// Element id, an index into the Cayley table.
pub type Elem = usize;

/// Tables up to this order are checked for associativity triple by triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn dual(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("a semigroup needs at least one element")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("closure violated: {i}·{j} = {value} lies outside 0..{order}")]
    ClosureViolation { i: usize, j: usize, value: i64, order: usize },
    #[error("associativity violated: ({i}·{j})·{k} ≠ {i}·({j}·{k})")]
    AssociativityViolation { i: usize, j: usize, k: usize },
    #[error("{given} names supplied for a semigroup of order {order}")]
    NameCount { given: usize, order: usize },
    #[error("element {0} is not a two-sided identity")]
    NotIdentity(usize),
    #[error("map has {len} entries but the source has order {order}")]
    MapLength { len: usize, order: usize },
    #[error("map sends {elem} to {image}, outside the target")]
    MapRange { elem: usize, image: usize },
    #[error("not a homomorphism: ({a}·{b})φ ≠ {a}φ·{b}φ")]
    NotHomomorphism { a: usize, b: usize },
    #[error("semigroup is not abundant: element {elem} has no idempotent in its {side:?} starred class")]
    NotAbundant { elem: usize, side: Side },
    #[error("element set is not closed under the product: {a}·{b} escapes")]
    NotClosed { a: usize, b: usize },
}

/// A validated finite semigroup on the ids `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<Elem>,
    names: Option<Vec<String>>,
    has_adjoined_identity: bool,
}

/// Validate a raw integer grid as a Cayley table.
pub fn validate_table(raw: &[Vec<i64>]) -> Result<FiniteSemigroup, SemigroupError> {
    let order = raw.len();
    if order == 0 {
        return Err(SemigroupError::Empty);
    }
    let mut table = Vec::with_capacity(order * order);
    for (i, row) in raw.iter().enumerate() {
        if row.len() != order {
            return Err(SemigroupError::NotSquare { row: i, len: row.len(), order });
        }
        for (j, &value) in row.iter().enumerate() {
            if value < 0 || value as usize >= order {
                return Err(SemigroupError::ClosureViolation { i, j, value, order });
            }
            table.push(value as usize);
        }
    }
    FiniteSemigroup::from_table(order, table)
}

impl FiniteSemigroup {
    /// Build from a flat row-major table, checking closure and associativity.
    pub fn from_table(order: usize, table: Vec<Elem>) -> Result<Self, SemigroupError> {
        if order == 0 {
            return Err(SemigroupError::Empty);
        }
        if table.len() != order * order {
            return Err(SemigroupError::NotSquare { row: 0, len: table.len(), order });
        }
        if let Some(pos) = table.iter().position(|&v| v >= order) {
            return Err(SemigroupError::ClosureViolation {
                i: pos / order,
                j: pos % order,
                value: table[pos] as i64,
                order,
            });
        }
        let s = FiniteSemigroup { order, table, names: None, has_adjoined_identity: false };
        s.check_associative()?;
        Ok(s)
    }

    pub fn from_fn(order: usize, f: impl Fn(Elem, Elem) -> Elem) -> Result<Self, SemigroupError> {
        let mut table = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                table.push(f(i, j));
            }
        }
        Self::from_table(order, table)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, SemigroupError> {
        if names.len() != self.order {
            return Err(SemigroupError::NameCount { given: names.len(), order: self.order });
        }
        self.names = Some(names);
        Ok(self)
    }

    fn check_associative(&self) -> Result<(), SemigroupError> {
        let n = self.order;
        let middles: Vec<Elem> = if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            (0..n).collect()
        } else {
            // Light's test only needs the middle factor to range over generators.
            self.generating_set()
        };
        for &j in &middles {
            for i in 0..n {
                let ij = self.mul(i, j);
                for k in 0..n {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Err(SemigroupError::AssociativityViolation { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// Greedy generating set: every element not yet generated is added.
    pub fn generating_set(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        let mut members: Vec<Elem> = Vec::new();
        for a in 0..self.order {
            if inside[a] {
                continue;
            }
            gens.push(a);
            let mut queue = VecDeque::from([a]);
            inside[a] = true;
            members.push(a);
            while let Some(x) = queue.pop_front() {
                let snapshot = members.clone();
                for y in snapshot {
                    for p in [self.mul(x, y), self.mul(y, x)] {
                        if !inside[p] {
                            inside[p] = true;
                            members.push(p);
                            queue.push_back(p);
                        }
                    }
                }
            }
        }
        gens
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: Elem) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn has_adjoined_identity(&self) -> bool {
        self.has_adjoined_identity
    }

    /// Flag the last element as an adjoined identity; it must be one.
    pub fn mark_adjoined_identity(mut self, one: Elem) -> Result<Self, SemigroupError> {
        let is_identity = one < self.order && self.elements().all(|x| self.mul(one, x) == x && self.mul(x, one) == x);
        if one + 1 != self.order || !is_identity {
            return Err(SemigroupError::NotIdentity(one));
        }
        self.has_adjoined_identity = true;
        Ok(self)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn is_idempotent(&self, a: Elem) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_idempotent(a)).collect()
    }

    /// The least two-sided identity, if any.
    pub fn identity(&self) -> Option<Elem> {
        self.elements()
            .find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// S¹: `self` when it already has an identity, otherwise a copy with a new
    /// identity at index `order` and the adjoined flag set.
    pub fn with_identity(&self) -> FiniteSemigroup {
        if self.identity().is_some() {
            return self.clone();
        }
        let n = self.order;
        let m = n + 1;
        let mut table = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                table.push(if i == n {
                    j
                } else if j == n {
                    i
                } else {
                    self.mul(i, j)
                });
            }
        }
        let names = self.names.as_ref().map(|v| {
            let mut v = v.clone();
            v.push("1".to_string());
            v
        });
        FiniteSemigroup { order: m, table, names, has_adjoined_identity: true }
    }

    /// The opposite semigroup: `a ∘ b = b·a`.
    pub fn opposite(&self) -> FiniteSemigroup {
        let n = self.order;
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.mul(j, i);
            }
        }
        FiniteSemigroup {
            order: n,
            table,
            names: self.names.clone(),
            has_adjoined_identity: self.has_adjoined_identity,
        }
    }

    /// Direct product; the pair `(a, b)` gets id `a * other.order() + b`.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let (n, m) = (self.order, other.order);
        let mut table = Vec::with_capacity(n * m * n * m);
        for x in 0..n * m {
            for y in 0..n * m {
                let a = self.mul(x / m, y / m);
                let b = other.mul(x % m, y % m);
                table.push(a * m + b);
            }
        }
        let names = (0..n * m)
            .map(|x| format!("({},{})", self.name(x / m), other.name(x % m)))
            .collect();
        FiniteSemigroup { order: n * m, table, names: Some(names), has_adjoined_identity: false }
    }

    /// The subsemigroup on a product-closed set, relabelled in increasing id order.
    /// Returns the subsemigroup and the embedding of its ids into `self`.
    pub fn restrict(&self, elems: &[Elem]) -> Result<(FiniteSemigroup, Vec<Elem>), SemigroupError> {
        let mut sorted = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut index = vec![usize::MAX; self.order];
        for (i, &a) in sorted.iter().enumerate() {
            index[a] = i;
        }
        let k = sorted.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &sorted {
            for &b in &sorted {
                let p = self.mul(a, b);
                if index[p] == usize::MAX {
                    return Err(SemigroupError::NotClosed { a, b });
                }
                table.push(index[p]);
            }
        }
        let names = sorted.iter().map(|&a| self.name(a)).collect();
        let sub = FiniteSemigroup { order: k, table, names: Some(names), has_adjoined_identity: false };
        Ok((sub, sorted))
    }

    /// Closure of a set of elements under the product.
    pub fn generated_by(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut inside = vec![false; self.order];
        let mut members = Vec::new();
        for &g in gens {
            if !inside[g] {
                inside[g] = true;
                members.push(g);
            }
        }
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            let mut j = 0;
            while j <= i {
                let y = members[j];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !inside[p] {
                        inside[p] = true;
                        members.push(p);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    pub fn is_regular_element(&self, a: Elem) -> bool {
        self.elements().any(|x| self.mul(self.mul(a, x), a) == a)
    }

    pub fn is_regular(&self) -> bool {
        self.elements().all(|a| self.is_regular_element(a))
    }
}

/// An equivalence relation on `0..n`, each class labelled by its least member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqRelation {
    pub class_of: Vec<Elem>,
    pub classes: Vec<Vec<Elem>>,
}

impl EqRelation {
    /// Elements with equal keys share a class.
    pub fn from_keys<K: Hash + Eq>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut first: HashMap<K, Elem> = HashMap::new();
        let mut class_of = Vec::new();
        for (a, k) in keys.into_iter().enumerate() {
            let rep = *first.entry(k).or_insert(a);
            class_of.push(rep);
        }
        Self::from_labels(class_of)
    }

    fn from_labels(class_of: Vec<Elem>) -> Self {
        let mut classes: Vec<Vec<Elem>> = Vec::new();
        let mut slot: HashMap<Elem, usize> = HashMap::new();
        for (a, &rep) in class_of.iter().enumerate() {
            let i = *slot.entry(rep).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[i].push(a);
        }
        EqRelation { class_of, classes }
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn class(&self, a: Elem) -> &[Elem] {
        let rep = self.class_of[a];
        self.classes
            .iter()
            .find(|c| c[0] == rep)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// `self ⊆ other` as sets of pairs.
    pub fn refines(&self, other: &EqRelation) -> bool {
        self.classes.iter().all(|c| c.iter().all(|&x| other.related(c[0], x)))
    }

    pub fn meet(&self, other: &EqRelation) -> EqRelation {
        EqRelation::from_keys((0..self.len()).map(|a| (self.class_of[a], other.class_of[a])))
    }

    /// Smallest equivalence containing both relations.
    pub fn join(&self, other: &EqRelation) -> EqRelation {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for a in 0..n {
            for rel in [self, other] {
                let (x, y) = (find(&mut parent, a), find(&mut parent, rel.class_of[a]));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        let labels: Vec<usize> = (0..n).map(|a| find(&mut parent, a)).collect();
        EqRelation::from_keys(labels)
    }
}

/// ℒ* (side `Left`) or ℛ* (side `Right`), computed over S¹.
///
/// `a ℒ* b` iff `x ↦ ax` and `x ↦ bx` induce the same kernel partition of S¹.
pub fn starred_relation(s: &FiniteSemigroup, side: Side) -> EqRelation {
    let s1 = s.with_identity();
    let n1 = s1.order();
    EqRelation::from_keys(s.elements().map(|a| {
        let mut first: HashMap<Elem, Elem> = HashMap::new();
        (0..n1)
            .map(|x| {
                let p = match side {
                    Side::Left => s1.mul(a, x),
                    Side::Right => s1.mul(x, a),
                };
                *first.entry(p).or_insert(x)
            })
            .collect::<Vec<_>>()
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenRelations {
    pub l: EqRelation,
    pub r: EqRelation,
    pub h: EqRelation,
    pub d: EqRelation,
}

/// Principal left ideal S¹a as a membership vector.
pub fn left_ideal(s: &FiniteSemigroup, a: Elem) -> Vec<bool> {
    let mut v = vec![false; s.order()];
    v[a] = true;
    for x in s.elements() {
        v[s.mul(x, a)] = true;
    }
    v
}

/// Principal right ideal aS¹ as a membership vector.
pub fn right_ideal(s: &FiniteSemigroup, a: Elem) -> Vec<bool> {
    let mut v = vec![false; s.order()];
    v[a] = true;
    for x in s.elements() {
        v[s.mul(a, x)] = true;
    }
    v
}

pub fn green_classes(s: &FiniteSemigroup) -> GreenRelations {
    let l = EqRelation::from_keys(s.elements().map(|a| left_ideal(s, a)));
    let r = EqRelation::from_keys(s.elements().map(|a| right_ideal(s, a)));
    let h = l.meet(&r);
    // ℒ and ℛ commute, so their join is ℒ∘ℛ.
    let d = l.join(&r);
    GreenRelations { l, r, h, d }
}

/// Starred relations with their canonical idempotent witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abundance {
    pub abundant: bool,
    pub l_star: EqRelation,
    pub r_star: EqRelation,
    /// a†: least idempotent of R*_a.
    pub dagger: Vec<Option<Elem>>,
    /// a*: least idempotent of L*_a.
    pub star: Vec<Option<Elem>>,
}

impl Abundance {
    /// First element whose starred class has no idempotent.
    pub fn failure(&self) -> Option<(Elem, Side)> {
        (0..self.dagger.len()).find_map(|a| {
            if self.star[a].is_none() {
                Some((a, Side::Left))
            } else if self.dagger[a].is_none() {
                Some((a, Side::Right))
            } else {
                None
            }
        })
    }

    pub fn witnesses(&self, a: Elem) -> Result<(Elem, Elem), SemigroupError> {
        match (self.dagger[a], self.star[a]) {
            (Some(d), Some(s)) => Ok((d, s)),
            (_, None) => Err(SemigroupError::NotAbundant { elem: a, side: Side::Left }),
            (None, _) => Err(SemigroupError::NotAbundant { elem: a, side: Side::Right }),
        }
    }
}

pub fn is_abundant(s: &FiniteSemigroup) -> Abundance {
    let l_star = starred_relation(s, Side::Left);
    let r_star = starred_relation(s, Side::Right);
    let min_idempotent = |rel: &EqRelation, a: Elem| {
        rel.class(a).iter().copied().filter(|&e| s.is_idempotent(e)).min()
    };
    let dagger: Vec<_> = s.elements().map(|a| min_idempotent(&r_star, a)).collect();
    let star: Vec<_> = s.elements().map(|a| min_idempotent(&l_star, a)).collect();
    let abundant = dagger.iter().chain(star.iter()).all(Option::is_some);
    Abundance { abundant, l_star, r_star, dagger, star }
}

/// The biordered set of idempotents. Relation tables are indexed by position
/// in `idempotents`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiorderedSet {
    pub idempotents: Vec<Elem>,
    /// `omega_l[i][j]`: e_i ω^l e_j, i.e. e_i e_j = e_i.
    pub omega_l: Vec<Vec<bool>>,
    /// `omega_r[i][j]`: e_i ω^r e_j, i.e. e_j e_i = e_i.
    pub omega_r: Vec<Vec<bool>>,
    /// 𝒮(e_i, e_j) as element ids.
    pub sandwich: Vec<Vec<Vec<Elem>>>,
}

impl BiorderedSet {
    pub fn position(&self, e: Elem) -> Option<usize> {
        self.idempotents.iter().position(|&x| x == e)
    }

    pub fn omega(&self, i: usize, j: usize) -> bool {
        self.omega_l[i][j] && self.omega_r[i][j]
    }

    pub fn is_regular(&self) -> bool {
        self.sandwich.iter().flatten().all(|s| !s.is_empty())
    }
}

pub fn biorder(s: &FiniteSemigroup) -> BiorderedSet {
    let idempotents = s.idempotents();
    let k = idempotents.len();
    let mut omega_l = vec![vec![false; k]; k];
    let mut omega_r = vec![vec![false; k]; k];
    let mut sandwich = vec![vec![Vec::new(); k]; k];
    for (i, &e) in idempotents.iter().enumerate() {
        for (j, &f) in idempotents.iter().enumerate() {
            omega_l[i][j] = s.mul(e, f) == e;
            omega_r[i][j] = s.mul(f, e) == e;
            let ef = s.mul(e, f);
            sandwich[i][j] = idempotents
                .iter()
                .copied()
                .filter(|&h| s.mul(s.mul(e, h), f) == ef && s.mul(s.mul(f, h), e) == h)
                .collect();
        }
    }
    BiorderedSet { idempotents, omega_l, omega_r, sandwich }
}

/// An E-square `[e f; g h]` with e ℛ f, g ℛ h, e ℒ g, f ℒ h.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ESquare {
    pub e: Elem,
    pub f: Elem,
    pub g: Elem,
    pub h: Elem,
}

fn idem_r(s: &FiniteSemigroup, e: Elem, f: Elem) -> bool {
    s.mul(e, f) == f && s.mul(f, e) == e
}

fn idem_l(s: &FiniteSemigroup, e: Elem, f: Elem) -> bool {
    s.mul(e, f) == e && s.mul(f, e) == f
}

/// All singular E-squares. A square is singular when some idempotent k either
/// fixes e, g on the left and sends them to f, h on the right, or fixes e, f
/// on the right and sends them to g, h on the left.
pub fn singular_squares(s: &FiniteSemigroup) -> Vec<ESquare> {
    let idem = s.idempotents();
    let mut out = Vec::new();
    for &e in &idem {
        for &f in idem.iter().filter(|&&f| idem_r(s, e, f)) {
            for &g in idem.iter().filter(|&&g| idem_l(s, e, g)) {
                for &h in idem.iter().filter(|&&h| idem_r(s, g, h) && idem_l(s, f, h)) {
                    let singular = idem.iter().any(|&k| {
                        (s.mul(k, e) == e && s.mul(k, g) == g && s.mul(e, k) == f && s.mul(g, k) == h)
                            || (s.mul(e, k) == e
                                && s.mul(f, k) == f
                                && s.mul(k, e) == g
                                && s.mul(k, f) == h)
                    });
                    if singular {
                        out.push(ESquare { e, f, g, h });
                    }
                }
            }
        }
    }
    out
}

/// A non-regular element of ⟨E(S)⟩ with a factorisation into idempotents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonRegularWitness {
    pub element: Elem,
    pub factors: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentGenerated {
    pub sub: Vec<Elem>,
    pub regular: bool,
    pub witness: Option<NonRegularWitness>,
}

pub fn idempotent_generated(s: &FiniteSemigroup) -> IdempotentGenerated {
    let idem = s.idempotents();
    // Breadth-first products of idempotents; the first factorisation found is
    // the shortest one.
    let mut factors: Vec<Option<Vec<Elem>>> = vec![None; s.order()];
    let mut queue = VecDeque::new();
    for &e in &idem {
        factors[e] = Some(vec![e]);
        queue.push_back(e);
    }
    while let Some(x) = queue.pop_front() {
        for &e in &idem {
            let p = s.mul(x, e);
            if factors[p].is_none() {
                let mut f = factors[x].clone().unwrap_or_default();
                f.push(e);
                factors[p] = Some(f);
                queue.push_back(p);
            }
        }
    }
    let sub: Vec<Elem> = s.elements().filter(|&a| factors[a].is_some()).collect();
    let witness = sub
        .iter()
        .copied()
        .find(|&x| !sub.iter().any(|&y| s.mul(s.mul(x, y), x) == x))
        .map(|element| NonRegularWitness {
            element,
            factors: factors[element].clone().unwrap_or_default(),
        });
    IdempotentGenerated { sub, regular: witness.is_none(), witness }
}

/// ω(e) = {g ∈ E(S) : ge = eg = g}.
pub fn omega_ideal(s: &FiniteSemigroup, e: Elem) -> Vec<Elem> {
    s.elements()
        .filter(|&g| s.is_idempotent(g) && s.mul(g, e) == g && s.mul(e, g) == g)
        .collect()
}

/// The bijection α: ω(a†) → ω(a*) with xa = a(xα).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectingMap {
    pub element: Elem,
    pub dagger: Elem,
    pub star: Elem,
    /// Pairs `(x, xα)` sorted by `x`.
    pub pairs: Vec<(Elem, Elem)>,
    /// Whether the bijection is the only perfect matching of the candidate graph.
    pub forced: bool,
}

impl ConnectingMap {
    pub fn apply(&self, x: Elem) -> Option<Elem> {
        self.pairs.iter().find(|p| p.0 == x).map(|p| p.1)
    }

    pub fn invert(&self, y: Elem) -> Option<Elem> {
        self.pairs.iter().find(|p| p.1 == y).map(|p| p.0)
    }
}

/// Search for the connecting bijection of `a` relative to a chosen pair
/// `dagger ∈ R*_a ∩ E`, `star ∈ L*_a ∩ E`.
pub fn connecting_bijection(
    s: &FiniteSemigroup,
    a: Elem,
    dagger: Elem,
    star: Elem,
) -> Option<ConnectingMap> {
    let left = omega_ideal(s, dagger);
    let right = omega_ideal(s, star);
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|&x| {
            let xa = s.mul(x, a);
            (0..right.len()).filter(|&j| s.mul(a, right[j]) == xa).collect()
        })
        .collect();
    let graph = BipartiteGraph::new(&adj, right.len());
    let matching = graph.perfect_matching()?;
    let pairs: Vec<(Elem, Elem)> = left.iter().zip(&matching).map(|(&x, &j)| (x, right[j])).collect();
    if !pairs.iter().all(|&(x, y)| s.mul(x, a) == s.mul(a, y)) {
        return None;
    }
    let forced = graph.is_forced(&matching);
    Some(ConnectingMap { element: a, dagger, star, pairs, forced })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IcReport {
    pub holds: bool,
    pub maps: Vec<Option<ConnectingMap>>,
    pub failing: Option<Elem>,
    pub warnings: Vec<String>,
}

/// Idempotent-connectedness, checked for the canonical (a†, a*) pair of
/// every element.
pub fn ic_check(s: &FiniteSemigroup, abundance: &Abundance) -> Result<IcReport, SemigroupError> {
    let mut maps = Vec::with_capacity(s.order());
    let mut failing = None;
    let mut warnings = Vec::new();
    for a in s.elements() {
        let (dagger, star) = abundance.witnesses(a)?;
        let map = connecting_bijection(s, a, dagger, star);
        match &map {
            None if failing.is_none() => failing = Some(a),
            Some(m) if !m.forced => warnings.push(format!(
                "connecting bijection for element {} is not forced by the candidate graph",
                s.name(a)
            )),
            _ => {}
        }
        maps.push(map);
    }
    Ok(IcReport { holds: failing.is_none(), maps, failing, warnings })
}

pub fn is_weakly_reductive(s: &FiniteSemigroup) -> bool {
    let n = s.order();
    let keys: Vec<(Vec<Elem>, Vec<Elem>)> = s
        .elements()
        .map(|a| {
            let row = (0..n).map(|x| s.mul(a, x)).collect();
            let col = (0..n).map(|x| s.mul(x, a)).collect();
            (row, col)
        })
        .collect();
    EqRelation::from_keys(keys).num_classes() == n
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcordanceReport {
    pub order: usize,
    pub abundant: bool,
    pub idempotent_connected: bool,
    pub e_regular: bool,
    pub concordant: bool,
    pub regular: bool,
    pub weakly_reductive: bool,
    pub abundance_failure: Option<(Elem, Side)>,
    pub ic_failure: Option<Elem>,
    pub e_regular_witness: Option<NonRegularWitness>,
    pub dagger: Vec<Option<Elem>>,
    pub star: Vec<Option<Elem>>,
    pub connecting: Vec<Option<Vec<(Elem, Elem)>>>,
    pub warnings: Vec<String>,
}

pub fn is_concordant(s: &FiniteSemigroup) -> ConcordanceReport {
    let ab = is_abundant(s);
    let gen = idempotent_generated(s);
    let (ic_holds, ic_failure, connecting, warnings) = if ab.abundant {
        match ic_check(s, &ab) {
            Ok(r) => (
                r.holds,
                r.failing,
                r.maps.into_iter().map(|m| m.map(|m| m.pairs)).collect(),
                r.warnings,
            ),
            Err(_) => (false, None, Vec::new(), Vec::new()),
        }
    } else {
        (false, None, Vec::new(), Vec::new())
    };
    ConcordanceReport {
        order: s.order(),
        abundant: ab.abundant,
        idempotent_connected: ic_holds,
        e_regular: gen.regular,
        concordant: ab.abundant && ic_holds && gen.regular,
        regular: s.is_regular(),
        weakly_reductive: is_weakly_reductive(s),
        abundance_failure: ab.failure(),
        ic_failure,
        e_regular_witness: gen.witness,
        dagger: ab.dagger,
        star: ab.star,
        connecting,
        warnings,
    }
}

/// A map between semigroups, given by the image of each element.
#[derive(Debug, Clone)]
pub struct SemigroupMap<'a> {
    pub source: &'a FiniteSemigroup,
    pub target: &'a FiniteSemigroup,
    pub image: Vec<Elem>,
}

impl<'a> SemigroupMap<'a> {
    pub fn new(
        source: &'a FiniteSemigroup,
        target: &'a FiniteSemigroup,
        image: Vec<Elem>,
    ) -> Result<Self, SemigroupError> {
        if image.len() != source.order() {
            return Err(SemigroupError::MapLength { len: image.len(), order: source.order() });
        }
        if let Some((elem, &image)) = image.iter().enumerate().find(|(_, &y)| y >= target.order()) {
            return Err(SemigroupError::MapRange { elem, image });
        }
        Ok(SemigroupMap { source, target, image })
    }

    pub fn identity(s: &'a FiniteSemigroup) -> Self {
        SemigroupMap { source: s, target: s, image: s.elements().collect() }
    }

    pub fn check_homomorphism(&self) -> Result<(), SemigroupError> {
        for a in self.source.elements() {
            for b in self.source.elements() {
                let lhs = self.image[self.source.mul(a, b)];
                let rhs = self.target.mul(self.image[a], self.image[b]);
                if lhs != rhs {
                    return Err(SemigroupError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.image.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &y in &self.image {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }
}

/// True iff φ preserves ℒ* and ℛ*.
pub fn is_good_homomorphism(phi: &SemigroupMap<'_>) -> Result<bool, SemigroupError> {
    phi.check_homomorphism()?;
    for side in [Side::Left, Side::Right] {
        let src = starred_relation(phi.source, side);
        let tgt = starred_relation(phi.target, side);
        for class in &src.classes {
            let y0 = phi.image[class[0]];
            if class.iter().any(|&a| !tgt.related(y0, phi.image[a])) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Backtracking isomorphism search.
pub fn find_isomorphism(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Option<Vec<Elem>> {
    let n = s.order();
    if n != t.order() || s.idempotents().len() != t.idempotents().len() {
        return None;
    }
    let profile = |x: &FiniteSemigroup, a: Elem| {
        let mut p = a;
        let mut powers = vec![a];
        loop {
            p = x.mul(p, a);
            if powers.contains(&p) {
                break;
            }
            powers.push(p);
        }
        (x.is_idempotent(a), powers.len(), left_ideal(x, a).iter().filter(|&&b| b).count(),
         right_ideal(x, a).iter().filter(|&&b| b).count())
    };
    let ps: Vec<_> = s.elements().map(|a| profile(s, a)).collect();
    let pt: Vec<_> = t.elements().map(|a| profile(t, a)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        s: &FiniteSemigroup,
        t: &FiniteSemigroup,
        ps: &[(bool, usize, usize, usize)],
        pt: &[(bool, usize, usize, usize)],
        k: usize,
        map: &mut Vec<Elem>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = s.order();
        if k == n {
            return true;
        }
        for y in 0..n {
            if used[y] || ps[k] != pt[y] {
                continue;
            }
            map[k] = y;
            used[y] = true;
            let consistent = (0..=k).all(|a| {
                [(a, k), (k, a)].iter().all(|&(x, z)| {
                    let p = s.mul(x, z);
                    map[p] == usize::MAX || map[p] == t.mul(map[x], map[z])
                })
            }) && (0..=k).all(|a| {
                (0..=k).all(|b| {
                    let p = s.mul(a, b);
                    map[p] == usize::MAX || map[p] == t.mul(map[a], map[b])
                })
            });
            if consistent && extend(s, t, ps, pt, k + 1, map, used) {
                return true;
            }
            map[k] = usize::MAX;
            used[y] = false;
        }
        false
    }

    if extend(s, t, &ps, &pt, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}
