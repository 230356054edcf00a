//! Exact and refuting checkers for the covering properties P and Q, the
//! union-bound consequence, the `⌊3m/2⌋` construction, and the g/h oracles.
//!
//! Property P: every `k` distinct members include one whose private part
//! (elements in no other member of the tuple) has at most `⌊m/k⌋` elements.
//! Property Q: every `k` distinct members have union of size at most
//! `Σ_{i=1..k} ⌊m/i⌋`. P implies Q; both are closed under subfamilies, which
//! is what makes branch-and-bound maximization sound.
//!
//! Tuples are read as tuples of distinct sets: a repeated set makes some
//! difference empty for P, and dropping duplicates shrinks `k` while keeping
//! the union for Q, so the distinct case is the binding one and exact
//! checking stays finite.

use rand::Rng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::search::{FamilySearchResult, SearchBudget, SearchState};
use crate::set::{FiniteSet, GroundSet};
use crate::setpairs::{all_subsets_of_size, is_disjointly_representable};

/// Exact mode scans all `2^n` sub-tuples; this cap keeps it around a second.
/// Reachable families at `m = 4` can have up to `4! = 24` members, so the cap
/// sits there rather than lower.
pub const MAX_EXACT_FAMILY: usize = 24;

/// `h_construction` family size is `C(⌊3m/2⌋, m)`; beyond this it stops being
/// desk-scale.
pub const MAX_H_CONSTRUCTION_M: usize = 12;

/// Node budget for the exhaustive small-`k` sweep inside refute mode.
const REFUTE_SWEEP_BUDGET: u64 = 30_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PropertyKind {
    P,
    Q,
}

/// How a property check runs. Refute mode is advisory: a "holds" verdict
/// means "no violation found", never a certificate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum CheckMode {
    Exact,
    Refute { samples: u64, seed: u64 },
}

/// A violating sub-tuple, re-checkable from its member sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub k: usize,
    /// 0-based indices into the family, ascending.
    pub indices: Vec<usize>,
    pub sets: Vec<FiniteSet>,
}

#[derive(Debug, Clone)]
pub struct PropertyVerdict {
    pub property: PropertyKind,
    pub holds: bool,
    pub mode: CheckMode,
    pub witness: Option<Violation>,
}

/// Wire shape: `{property, holds, mode, k, witness_sets}`.
impl Serialize for PropertyVerdict {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("PropertyVerdict", 5)?;
        s.serialize_field("property", &self.property)?;
        s.serialize_field("holds", &self.holds)?;
        s.serialize_field(
            "mode",
            match self.mode {
                CheckMode::Exact => "exact",
                CheckMode::Refute { .. } => "refute",
            },
        )?;
        s.serialize_field("k", &self.witness.as_ref().map(|w| w.k))?;
        s.serialize_field("witness_sets", &self.witness.as_ref().map(|w| &w.sets))?;
        s.end()
    }
}

fn require_uniform(family: &SetFamily, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    if family.is_empty() {
        return Ok(());
    }
    if family.uniformity() != Some(m) {
        return Err(Error::InvalidInput(format!(
            "property checks need an m-uniform family with m = {m}"
        )));
    }
    Ok(())
}

/// Family members as fixed-width block rows for word-level scanning.
struct BlockFamily {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BlockFamily {
    fn new(family: &SetFamily) -> Self {
        let words = family.universe().size().div_ceil(64).max(1);
        let rows = family
            .sets()
            .iter()
            .map(|s| {
                let mut row = vec![0u64; words];
                for e in s.iter() {
                    row[(e - 1) / 64] |= 1 << ((e - 1) % 64);
                }
                row
            })
            .collect();
        BlockFamily { words, rows }
    }

    fn union_len(&self, indices: &[usize]) -> usize {
        (0..self.words)
            .map(|w| {
                indices
                    .iter()
                    .fold(0u64, |acc, &i| acc | self.rows[i][w])
                    .count_ones() as usize
            })
            .sum()
    }

    /// `|F_j \ ∪_{i ≠ j} F_i|` within the tuple `indices`.
    fn private_len(&self, indices: &[usize], j: usize) -> usize {
        (0..self.words)
            .map(|w| {
                let others = indices
                    .iter()
                    .filter(|&&i| i != j)
                    .fold(0u64, |acc, &i| acc | self.rows[i][w]);
                (self.rows[j][w] & !others).count_ones() as usize
            })
            .sum()
    }
}

/// `⌊m/k⌋` for k = 0..=n (index 0 unused).
fn p_bounds(m: usize, n: usize) -> Vec<usize> {
    (0..=n).map(|k| m.checked_div(k).unwrap_or(usize::MAX)).collect()
}

/// `Σ_{i=1..k} ⌊m/i⌋` for k = 0..=n.
fn q_bounds(m: usize, n: usize) -> Vec<usize> {
    let mut sums = Vec::with_capacity(n + 1);
    sums.push(0);
    for i in 1..=n {
        sums.push(sums[i - 1] + m / i);
    }
    sums
}

pub fn has_property_p(family: &SetFamily, m: usize, mode: &CheckMode) -> Result<PropertyVerdict> {
    require_uniform(family, m)?;
    let witness = match mode {
        CheckMode::Exact => exact_scan(family, m, PropertyKind::P)?,
        CheckMode::Refute { samples, seed } => refute_scan(family, m, PropertyKind::P, *samples, *seed),
    };
    Ok(PropertyVerdict { property: PropertyKind::P, holds: witness.is_none(), mode: *mode, witness })
}

pub fn has_property_q(family: &SetFamily, m: usize, mode: &CheckMode) -> Result<PropertyVerdict> {
    require_uniform(family, m)?;
    let witness = match mode {
        CheckMode::Exact => exact_scan(family, m, PropertyKind::Q)?,
        CheckMode::Refute { samples, seed } => refute_scan(family, m, PropertyKind::Q, *samples, *seed),
    };
    Ok(PropertyVerdict { property: PropertyKind::Q, holds: witness.is_none(), mode: *mode, witness })
}

/// Full DFS over sub-tuples in lexicographic index order. Parallel over the
/// root index; the winning witness is the leftmost violation, so the result
/// is independent of thread count.
fn exact_scan(family: &SetFamily, m: usize, property: PropertyKind) -> Result<Option<Violation>> {
    let n = family.len();
    if n > MAX_EXACT_FAMILY {
        return Err(Error::ModeInfeasible(format!(
            "exact {property:?} scan caps at {MAX_EXACT_FAMILY} members, family has {n}"
        )));
    }
    if n == 0 {
        return Ok(None);
    }
    let blocks = BlockFamily::new(family);
    let p_bound = p_bounds(m, n);
    let q_bound = q_bounds(m, n);
    let hit = (0..n)
        .into_par_iter()
        .find_map_first(|root| {
            let mut subset = vec![root];
            exact_dfs(&blocks, property, &p_bound, &q_bound, &mut subset)
        })
        .map(|indices| make_violation(family, indices));
    Ok(hit)
}

fn exact_dfs(
    blocks: &BlockFamily,
    property: PropertyKind,
    p_bound: &[usize],
    q_bound: &[usize],
    subset: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let k = subset.len();
    let violated = match property {
        PropertyKind::P => subset.iter().all(|&j| blocks.private_len(subset, j) > p_bound[k]),
        PropertyKind::Q => blocks.union_len(subset) > q_bound[k],
    };
    if violated {
        return Some(subset.clone());
    }
    let last = *subset.last().expect("subset nonempty");
    for next in last + 1..blocks.rows.len() {
        subset.push(next);
        if let Some(v) = exact_dfs(blocks, property, p_bound, q_bound, subset) {
            subset.pop();
            return Some(v);
        }
        subset.pop();
    }
    None
}

fn make_violation(family: &SetFamily, indices: Vec<usize>) -> Violation {
    Violation {
        k: indices.len(),
        sets: indices.iter().map(|&i| family.sets()[i].clone()).collect(),
        indices,
    }
}

/// Best-effort violation hunt: the whole family, an exhaustive sweep of small
/// tuples (size <= 4 for P, <= 3 for Q, shrunk further if the counts blow
/// past the sweep budget), seeded random tuples, and for P the
/// `k = m + 1` disjoint-representability angle.
fn refute_scan(
    family: &SetFamily,
    m: usize,
    property: PropertyKind,
    samples: u64,
    seed: u64,
) -> Option<Violation> {
    let n = family.len();
    if n == 0 {
        return None;
    }
    let blocks = BlockFamily::new(family);
    let p_bound = p_bounds(m, n);
    let q_bound = q_bounds(m, n);
    let violated = |indices: &[usize]| -> bool {
        let k = indices.len();
        match property {
            PropertyKind::P => indices.iter().all(|&j| blocks.private_len(indices, j) > p_bound[k]),
            PropertyKind::Q => blocks.union_len(indices) > q_bound[k],
        }
    };

    // the whole family is a single cheap tuple and often the binding one for Q
    let all: Vec<usize> = (0..n).collect();
    if violated(&all) {
        return Some(make_violation(family, all));
    }

    let max_sweep = match property {
        PropertyKind::P => 4usize,
        PropertyKind::Q => 3usize,
    };
    let mut sweep_to = 1usize;
    let mut cumulative = 0u64;
    for s in 2..=max_sweep.min(n) {
        cumulative = cumulative.saturating_add(binom_u64(n, s));
        if cumulative > REFUTE_SWEEP_BUDGET {
            break;
        }
        sweep_to = s;
    }
    let mut found: Option<Vec<usize>> = None;
    for k in 2..=sweep_to {
        if found.is_some() {
            break;
        }
        let indices: Vec<usize> = (0..n).collect();
        subsets_of_size(&indices, k, &mut |tuple| {
            if violated(tuple) {
                found = Some(tuple.to_vec());
                false
            } else {
                true
            }
        });
    }
    if let Some(indices) = found {
        return Some(make_violation(family, indices));
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    // random tuples
    let k_hi = match property {
        PropertyKind::P => (m + 1).min(n),
        PropertyKind::Q => n,
    };
    if k_hi >= 2 {
        for _ in 0..samples {
            let k = rng.random_range(2..=k_hi);
            let mut tuple: Vec<usize> = rand::seq::index::sample(&mut rng, n, k).into_vec();
            tuple.sort_unstable();
            if violated(&tuple) {
                return Some(make_violation(family, tuple));
            }
        }
    }

    // P at k = m + 1 is exactly disjoint representability
    if property == PropertyKind::P && n > m {
        let k = m + 1;
        if binom_u64(n, k) <= REFUTE_SWEEP_BUDGET {
            let indices: Vec<usize> = (0..n).collect();
            let mut found = None;
            subsets_of_size(&indices, k, &mut |tuple| {
                let sets: Vec<FiniteSet> = tuple.iter().map(|&i| family.sets()[i].clone()).collect();
                if is_disjointly_representable(&sets).is_some() {
                    found = Some(tuple.to_vec());
                    false
                } else {
                    true
                }
            });
            if let Some(indices) = found {
                return Some(make_violation(family, indices));
            }
        } else {
            for _ in 0..samples {
                let mut tuple: Vec<usize> = rand::seq::index::sample(&mut rng, n, k).into_vec();
                tuple.sort_unstable();
                let sets: Vec<FiniteSet> = tuple.iter().map(|&i| family.sets()[i].clone()).collect();
                if is_disjointly_representable(&sets).is_some() {
                    return Some(make_violation(family, tuple));
                }
            }
        }
    }
    None
}

fn binom_u64(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u64) / (i + 1) as u64;
    }
    acc
}

fn subsets_of_size(items: &[usize], size: usize, visit: &mut impl FnMut(&[usize]) -> bool) {
    fn rec(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == size {
            return visit(cur);
        }
        for i in start..items.len() {
            cur.push(items[i]);
            if !rec(items, size, i + 1, cur, visit) {
                cur.pop();
                return false;
            }
            cur.pop();
        }
        true
    }
    rec(items, size, 0, &mut Vec::with_capacity(size), visit);
}

/// `|∪family| <= m(ln m + 1) + 1e-9`, the one floating-point comparison in
/// the crate. Callers are expected to have certified Q in exact mode first.
pub fn union_bound_check(family: &SetFamily, m: usize) -> bool {
    let union = family.union_all().len() as f64;
    union <= (m as f64) * ((m as f64).ln() + 1.0) + 1e-9
}

/// All `m`-subsets of `[1, ⌊3m/2⌋]`: the lower-bound construction for h. Its
/// size is exactly `C(⌊3m/2⌋, m)`.
pub fn h_construction(m: usize) -> Result<SetFamily> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    if m > MAX_H_CONSTRUCTION_M {
        return Err(Error::BudgetExceeded(format!(
            "h_construction caps at m <= {MAX_H_CONSTRUCTION_M}, got {m}"
        )));
    }
    let top = 3 * m / 2;
    let universe = GroundSet::new(top)?;
    SetFamily::new(universe, all_subsets_of_size(top, m), Some(m))
}

/// Largest m-uniform family over the universe passing exact property P.
pub fn g_oracle(m: usize, universe: GroundSet, budget: &SearchBudget) -> Result<FamilySearchResult> {
    max_family_with_property(m, universe, budget, PropertyKind::P)
}

/// Largest m-uniform family over the universe passing exact property Q.
pub fn h_oracle(m: usize, universe: GroundSet, budget: &SearchBudget) -> Result<FamilySearchResult> {
    max_family_with_property(m, universe, budget, PropertyKind::Q)
}

/// Branch and bound over candidate m-sets in lexicographic order. Both
/// properties are closed under subfamilies, so a failing prefix prunes its
/// whole subtree; a candidate only needs checking against tuples that
/// include it.
fn max_family_with_property(
    m: usize,
    universe: GroundSet,
    budget: &SearchBudget,
    property: PropertyKind,
) -> Result<FamilySearchResult> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let candidates = all_subsets_of_size(universe.size(), m);
    let cand_family = SetFamily::new(universe, candidates.clone(), Some(m))?;
    let blocks = BlockFamily::new(&cand_family);
    let p_bound = p_bounds(m, candidates.len());
    let q_bound = q_bounds(m, candidates.len());
    let mut state = SearchState::new(budget);
    let mut current: Vec<usize> = Vec::new();
    property_dfs(&blocks, property, &p_bound, &q_bound, 0, &mut current, &mut state);
    let witness_sets: Vec<FiniteSet> = state.best.iter().map(|&i| candidates[i].clone()).collect();
    Ok(FamilySearchResult {
        value: state.best_len,
        witness: SetFamily::new(universe, witness_sets, Some(m))?,
        exact: !state.truncated,
        nodes_explored: state.nodes,
    })
}

fn property_dfs(
    blocks: &BlockFamily,
    property: PropertyKind,
    p_bound: &[usize],
    q_bound: &[usize],
    start: usize,
    current: &mut Vec<usize>,
    state: &mut SearchState,
) {
    state.observe(current);
    if current.len() + (blocks.rows.len() - start) <= state.best_len {
        return;
    }
    for cand in start..blocks.rows.len() {
        if !state.tick() {
            return;
        }
        if extends_property(blocks, property, p_bound, q_bound, current, cand) {
            current.push(cand);
            property_dfs(blocks, property, p_bound, q_bound, cand + 1, current, state);
            current.pop();
            if state.truncated {
                return;
            }
        }
    }
}

/// Checks every tuple consisting of `cand` plus a subset of `current`.
fn extends_property(
    blocks: &BlockFamily,
    property: PropertyKind,
    p_bound: &[usize],
    q_bound: &[usize],
    current: &[usize],
    cand: usize,
) -> bool {
    let mut tuple = vec![cand];
    fn rec(
        blocks: &BlockFamily,
        property: PropertyKind,
        p_bound: &[usize],
        q_bound: &[usize],
        current: &[usize],
        pos: usize,
        tuple: &mut Vec<usize>,
    ) -> bool {
        let k = tuple.len();
        let ok = match property {
            PropertyKind::P => tuple.iter().any(|&j| blocks.private_len(tuple, j) <= p_bound[k]),
            PropertyKind::Q => blocks.union_len(tuple) <= q_bound[k],
        };
        if !ok {
            return false;
        }
        for i in pos..current.len() {
            tuple.push(current[i]);
            if !rec(blocks, property, p_bound, q_bound, current, i + 1, tuple) {
                tuple.pop();
                return false;
            }
            tuple.pop();
        }
        true
    }
    rec(blocks, property, p_bound, q_bound, current, 0, &mut tuple)
}
