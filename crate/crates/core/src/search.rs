//! Exhaustive enumeration of small semigroups and the predicate census.
//!
//! Tables are filled in row-major order. Each assignment is checked against
//! every associativity instance it takes part in, and with symmetry reduction
//! a partial table is dropped as soon as some relabelling of it is
//! lexicographically smaller on the cells filled so far.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::Budget;
use crate::semigroup::{is_concordant, FiniteSemigroup};

pub const MAX_ORDER: usize = 5;
const UNSET: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("max order {0} exceeds {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    Abundant,
    Ic,
    ERegular,
    Concordant,
    Regular,
    WeaklyReductive,
}

impl Predicate {
    pub const ALL: [Predicate; 6] = [
        Predicate::Abundant,
        Predicate::Ic,
        Predicate::ERegular,
        Predicate::Concordant,
        Predicate::Regular,
        Predicate::WeaklyReductive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Abundant => "abundant",
            Predicate::Ic => "ic",
            Predicate::ERegular => "e-regular",
            Predicate::Concordant => "concordant",
            Predicate::Regular => "regular",
            Predicate::WeaklyReductive => "weakly-reductive",
        }
    }
}

/// A possibly negated predicate, written `name` or `!name`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Literal {
    pub predicate: Predicate,
    pub negated: bool,
}

impl FromStr for Literal {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (negated, name) = match s.strip_prefix('!').or_else(|| s.strip_prefix('¬')) {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        let predicate = Predicate::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| SearchError::UnknownPredicate(name.to_string()))?;
        Ok(Literal { predicate, negated })
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.negated { "!" } else { "" }, self.predicate.name())
    }
}

/// Parse a conjunction such as `concordant & !regular` (`,` also separates).
pub fn parse_query(s: &str) -> Result<Vec<Literal>, SearchError> {
    s.split(['&', ','])
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Properties {
    pub abundant: bool,
    /// Only decided for abundant semigroups; false otherwise.
    pub ic: bool,
    pub e_regular: bool,
    pub concordant: bool,
    pub regular: bool,
    pub weakly_reductive: bool,
}

impl Properties {
    pub fn of(s: &FiniteSemigroup) -> Properties {
        let r = is_concordant(s);
        Properties {
            abundant: r.abundant,
            ic: r.idempotent_connected,
            e_regular: r.e_regular,
            concordant: r.concordant,
            regular: r.regular,
            weakly_reductive: r.weakly_reductive,
        }
    }

    pub fn get(&self, p: Predicate) -> bool {
        match p {
            Predicate::Abundant => self.abundant,
            Predicate::Ic => self.ic,
            Predicate::ERegular => self.e_regular,
            Predicate::Concordant => self.concordant,
            Predicate::Regular => self.regular,
            Predicate::WeaklyReductive => self.weakly_reductive,
        }
    }

    pub fn satisfies(&self, query: &[Literal]) -> bool {
        query.iter().all(|l| self.get(l.predicate) != l.negated)
    }

    /// Every predicate in fixed order, e.g. `abundant,ic,e-regular,concordant,!regular,weakly-reductive`.
    pub fn signature(&self) -> String {
        Predicate::ALL
            .iter()
            .map(|&p| Literal { predicate: p, negated: !self.get(p) }.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Row-major table of a semigroup on `0..n`.
pub type Table = Vec<u8>;

fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn go(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x as u8);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn inverse(p: &[u8]) -> Vec<u8> {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x as usize] = i as u8;
    }
    q
}

/// Relabel by p: the result has p(a)·p(b) = p(a·b).
pub fn relabel(t: &[u8], n: usize, p: &[u8]) -> Table {
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[p[a] as usize * n + p[b] as usize] = p[t[a * n + b] as usize];
        }
    }
    out
}

/// Lexicographically least relabelling of a complete table.
pub fn canonical_form(t: &[u8], n: usize) -> Table {
    permutations(n).iter().map(|p| relabel(t, n, p)).min().expect("at least the identity permutation")
}

struct Enumerator {
    n: usize,
    symmetry: bool,
    /// (p, p⁻¹) for every non-identity permutation.
    perms: Vec<(Vec<u8>, Vec<u8>)>,
}

impl Enumerator {
    fn new(n: usize, symmetry: bool) -> Self {
        let perms = if symmetry {
            permutations(n)
                .into_iter()
                .filter(|p| p.iter().enumerate().any(|(i, &x)| i != x as usize))
                .map(|p| {
                    let q = inverse(&p);
                    (p, q)
                })
                .collect()
        } else {
            Vec::new()
        };
        Enumerator { n, symmetry, perms }
    }

    /// Every associativity instance that reads cell (i, j) and is fully defined.
    fn consistent(&self, t: &[u8], i: usize, j: usize) -> bool {
        let n = self.n;
        let get = |a: usize, b: usize| t[a * n + b];
        let v = get(i, j) as usize;
        for x in 0..n {
            // (i·j)·x = i·(j·x)
            let (l, jx) = (get(v, x), get(j, x));
            if l != UNSET && jx != UNSET {
                let r = get(i, jx as usize);
                if r != UNSET && l != r {
                    return false;
                }
            }
            // x·(i·j) = (x·i)·j
            let (r, xi) = (get(x, v), get(x, i));
            if r != UNSET && xi != UNSET {
                let l = get(xi as usize, j);
                if l != UNSET && l != r {
                    return false;
                }
            }
            for y in 0..n {
                // (x·y)·j with x·y = i, against x·(y·j)
                if get(x, y) as usize == i {
                    let yj = get(y, j);
                    if yj != UNSET {
                        let r = get(x, yj as usize);
                        if r != UNSET && r as usize != v {
                            return false;
                        }
                    }
                }
                // i·(x·y) with x·y = j, against (i·x)·y
                if get(x, y) as usize == j {
                    let ix = get(i, x);
                    if ix != UNSET {
                        let l = get(ix as usize, y);
                        if l != UNSET && l as usize != v {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// False when some relabelling is smaller on the filled prefix.
    fn lex_leader(&self, t: &[u8]) -> bool {
        let n = self.n;
        'perm: for (p, q) in &self.perms {
            for pos in 0..n * n {
                let (x, y) = (pos / n, pos % n);
                let mine = t[pos];
                let src = t[q[x] as usize * n + q[y] as usize];
                if mine == UNSET || src == UNSET {
                    continue 'perm;
                }
                let theirs = p[src as usize];
                if theirs < mine {
                    return false;
                }
                if theirs > mine {
                    continue 'perm;
                }
            }
        }
        true
    }

    fn automorphisms(&self, t: &[u8]) -> usize {
        1 + self.perms.iter().filter(|(p, _)| relabel(t, self.n, p) == t).count()
    }

    fn dfs(&self, t: &mut Table, pos: usize, ctx: &Ctx, out: &mut Vec<(Table, u64)>) {
        if ctx.stop.load(Ordering::Relaxed) {
            return;
        }
        let n = self.n;
        if pos == n * n {
            let orbit = if self.symmetry { (factorial(n) / self.automorphisms(t)) as u64 } else { 1 };
            out.push((t.clone(), orbit));
            let seen = ctx.found.fetch_add(1, Ordering::Relaxed) + 1;
            if ctx.budget.check(seen).is_err() {
                ctx.stop.store(true, Ordering::Relaxed);
            }
            return;
        }
        let (i, j) = (pos / n, pos % n);
        for v in 0..n as u8 {
            t[pos] = v;
            if self.consistent(t, i, j) && (!self.symmetry || self.lex_leader(t)) {
                self.dfs(t, pos + 1, ctx, out);
            }
        }
        t[pos] = UNSET;
    }
}

struct Ctx<'a> {
    budget: &'a Budget,
    found: AtomicUsize,
    stop: AtomicBool,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub order: usize,
    /// Tables with the size of their isomorphism class (1 without symmetry reduction).
    pub tables: Vec<(Table, u64)>,
    pub complete: bool,
}

/// All semigroups on `0..n`, or one per isomorphism class with `symmetry`.
/// Output order is deterministic; the first row is split across threads.
pub fn enumerate_semigroups(n: usize, symmetry: bool, budget: &Budget) -> Result<Enumeration, SearchError> {
    if n > MAX_ORDER {
        return Err(SearchError::OrderTooLarge(n));
    }
    if n == 0 {
        return Ok(Enumeration { order: 0, tables: Vec::new(), complete: true });
    }
    let e = Enumerator::new(n, symmetry);
    let ctx = Ctx { budget, found: AtomicUsize::new(0), stop: AtomicBool::new(false) };
    // prefixes: the first row, filled and checked sequentially
    let mut prefixes = Vec::new();
    let mut stack = vec![(vec![UNSET; n * n], 0usize)];
    while let Some((t, pos)) = stack.pop() {
        if pos == n {
            prefixes.push(t);
            continue;
        }
        for v in (0..n as u8).rev() {
            let mut t2 = t.clone();
            t2[pos] = v;
            if e.consistent(&t2, 0, pos) && (!symmetry || e.lex_leader(&t2)) {
                stack.push((t2, pos + 1));
            }
        }
    }
    let tables: Vec<(Table, u64)> = prefixes
        .into_par_iter()
        .map(|mut t| {
            let mut out = Vec::new();
            e.dfs(&mut t, n, &ctx, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(Enumeration { order: n, tables, complete: !ctx.stop.load(Ordering::Relaxed) })
}

pub fn to_semigroup(t: &[u8], n: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_table(n, t.iter().map(|&x| x as usize).collect()).expect("enumerated tables are semigroups")
}

pub fn table_rows(t: &[u8], n: usize) -> Vec<Vec<usize>> {
    t.chunks(n).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
}

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub max_order: usize,
    pub query: Vec<Literal>,
    pub symmetry: bool,
    pub max_witnesses: usize,
}

impl Default for SearchSpec {
    fn default() -> Self {
        SearchSpec { max_order: 3, query: Vec::new(), symmetry: true, max_witnesses: 10 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComboCensus {
    /// Tables found (isomorphism classes with symmetry reduction).
    pub count: u64,
    /// Labelled semigroups represented.
    pub labelled: u64,
    pub witnesses: Vec<Vec<Vec<usize>>>,
}

impl ComboCensus {
    fn add(&mut self, t: &[u8], n: usize, orbit: u64, max_witnesses: usize) {
        self.count += 1;
        self.labelled += orbit;
        if self.witnesses.len() < max_witnesses {
            self.witnesses.push(table_rows(t, n));
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCensus {
    pub order: usize,
    pub tables: u64,
    pub labelled: u64,
    pub complete: bool,
    /// Keyed by the full predicate signature.
    pub combinations: BTreeMap<String, ComboCensus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<ComboCensus>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub max_order: usize,
    pub symmetry_reduction: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<String>,
    pub complete: bool,
    pub orders: Vec<OrderCensus>,
    /// Whether a concordant, non-regular semigroup turned up.
    pub concordant_not_regular_found: bool,
    /// Whether an abundant semigroup failed to be weakly reductive.
    pub abundant_not_weakly_reductive_found: bool,
}

/// Run the census for orders 1..=max_order. Stops early (with `complete`
/// false) once the budget runs out.
pub fn run_census(spec: &SearchSpec, budget: &Budget) -> Result<Census, SearchError> {
    if spec.max_order > MAX_ORDER {
        return Err(SearchError::OrderTooLarge(spec.max_order));
    }
    let mut orders = Vec::new();
    let mut complete = true;
    for n in 1..=spec.max_order {
        let en = enumerate_semigroups(n, spec.symmetry, budget)?;
        let props: Vec<Properties> = en.tables.par_iter().map(|(t, _)| Properties::of(&to_semigroup(t, n))).collect();
        let mut combinations: BTreeMap<String, ComboCensus> = BTreeMap::new();
        let mut query = (!spec.query.is_empty()).then(ComboCensus::default);
        let mut labelled = 0;
        for ((t, orbit), p) in en.tables.iter().zip(&props) {
            labelled += orbit;
            combinations.entry(p.signature()).or_default().add(t, n, *orbit, spec.max_witnesses);
            if let Some(q) = query.as_mut() {
                if p.satisfies(&spec.query) {
                    q.add(t, n, *orbit, spec.max_witnesses);
                }
            }
        }
        orders.push(OrderCensus {
            order: n,
            tables: en.tables.len() as u64,
            labelled,
            complete: en.complete,
            combinations,
            query,
        });
        if !en.complete {
            complete = false;
            break;
        }
    }
    let any = |f: &dyn Fn(&Properties) -> bool| {
        orders.iter().any(|o| {
            o.combinations.keys().any(|k| {
                let p = signature_properties(k);
                f(&p)
            })
        })
    };
    let concordant_not_regular_found = any(&|p| p.concordant && !p.regular);
    let abundant_not_weakly_reductive_found = any(&|p| p.abundant && !p.weakly_reductive);
    Ok(Census {
        max_order: spec.max_order,
        symmetry_reduction: spec.symmetry,
        query: (!spec.query.is_empty())
            .then(|| spec.query.iter().map(ToString::to_string).collect::<Vec<_>>().join(" & ")),
        complete,
        orders,
        concordant_not_regular_found,
        abundant_not_weakly_reductive_found,
    })
}

fn signature_properties(sig: &str) -> Properties {
    let lits: Vec<Literal> = sig.split(',').map(|s| s.parse().expect("signatures are well formed")).collect();
    let get = |p: Predicate| lits.iter().any(|l| l.predicate == p && !l.negated);
    Properties {
        abundant: get(Predicate::Abundant),
        ic: get(Predicate::Ic),
        e_regular: get(Predicate::ERegular),
        concordant: get(Predicate::Concordant),
        regular: get(Predicate::Regular),
        weakly_reductive: get(Predicate::WeaklyReductive),
    }
}
