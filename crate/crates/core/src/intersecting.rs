//! Intersecting-family machinery: the complete-intersection maximum
//! `AK(n, k, t)` with a clique-based crosscheck, the `F_i` family scan, the
//! `j` oracle, and exhaustive searches for the two set-pair conjectures.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bounds::{big_string, binom, BigCount};
use crate::clique::max_clique;
use crate::error::{Error, Result};
use crate::search::{FamilySearchResult, SearchBudget, SearchState};
use crate::set::{FiniteSet, GroundSet};
use crate::setpairs::{all_subsets_of_size, is_disjointly_representable, PairKind, SetPairSystem};
use crate::SetFamily;

/// Clique crosschecks run whenever the candidate count `C(n, k)` is at most
/// this; beyond it the closed form stands alone.
pub const MAX_CROSSCHECK_VERTICES: u64 = 70;

/// Size of the family `{F ∈ C([n], k) : |F ∩ [t + 2r]| >= t + r}`:
/// `Σ_{j = t+r}^{min(k, t+2r)} C(t + 2r, j) · C(n − t − 2r, k − j)`.
pub fn frankl_family_size(n: u64, k: u64, t: u64, r: u64) -> Result<BigCount> {
    if t == 0 || t > k || k > n {
        return Err(Error::Domain(format!(
            "frankl_family_size needs 1 <= t <= k <= n, got n={n} k={k} t={t}"
        )));
    }
    if 2 * r > n - t {
        return Err(Error::Domain(format!(
            "frankl_family_size needs 0 <= r <= (n - t)/2, got r={r} with n={n}, t={t}"
        )));
    }
    let mut total = BigCount::from(0u32);
    for j in (t + r)..=(t + 2 * r).min(k) {
        total += binom(t + 2 * r, j) * binom(n - t - 2 * r, k - j);
    }
    Ok(total)
}

/// The maximum size of a `k`-uniform `t`-intersecting family over `[n]`:
/// the largest of the `frankl_family_size` values over the feasible `r`.
///
/// With `crosscheck` set and `C(n, k) <= 70`, the value is verified against
/// an exact maximum-clique search over the `k`-subsets (valid because
/// pairwise `t`-intersection is exactly the family property); disagreement is
/// an implementation bug and surfaces as [`Error::CrosscheckMismatch`].
pub fn ak(n: u64, k: u64, t: u64, crosscheck: bool) -> Result<BigCount> {
    if t == 0 || t > k || k > n {
        return Err(Error::Domain(format!(
            "ak needs 1 <= t <= k <= n, got n={n} k={k} t={t}"
        )));
    }
    let value = (0..=(n - t) / 2)
        .map(|r| frankl_family_size(n, k, t, r).expect("r is in range"))
        .max()
        .expect("at least r = 0");
    if crosscheck {
        if let Some(vertices) = binom(n, k).to_u64().filter(|&c| c <= MAX_CROSSCHECK_VERTICES) {
            let subsets = all_subsets_of_size(n as usize, k as usize);
            debug_assert_eq!(subsets.len() as u64, vertices);
            let result = max_clique(
                subsets.len(),
                |i, j| subsets[i].intersection_len(&subsets[j]) >= t as usize,
                None,
            );
            if BigCount::from(result.best.len()) != value {
                return Err(Error::CrosscheckMismatch(format!(
                    "ak({n}, {k}, {t}) formula gives {value}, clique search gives {}",
                    result.best.len()
                )));
            }
        }
    }
    Ok(value)
}

/// The profile of `|F_i|` sizes for `i = 0..=⌊m/2⌋` (intersected with the
/// feasibility range of the underlying formula) and the least argmax.
///
/// `max_size` doubles as a hypothetical upper bound for the reachable-set
/// count: it is valid only if the t-intersecting pair conjecture holds, and
/// is reported as such, never asserted.
#[derive(Debug, Clone, Serialize)]
pub struct FiScan {
    pub m: u64,
    pub t: u64,
    pub sizes: Vec<FiEntry>,
    pub argmax: u64,
    #[serde(with = "big_string")]
    pub max_size: BigCount,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiEntry {
    pub i: u64,
    #[serde(with = "big_string")]
    pub size: BigCount,
}

/// Sizes of `F_i = {F ∈ C([2m], m) : |F ∩ [⌈m/2⌉ + 2i]| >= ⌈m/2⌉ + i}`.
pub fn fi_family_scan(m: u64) -> Result<FiScan> {
    if m == 0 || m > 64 {
        return Err(Error::Domain(format!("fi scan needs 1 <= m <= 64, got {m}")));
    }
    let t = m.div_ceil(2);
    let i_max = (m / 2).min((2 * m - t) / 2);
    let mut sizes = Vec::new();
    let mut argmax = 0u64;
    let mut best = BigCount::from(0u32);
    for i in 0..=i_max {
        let size = frankl_family_size(2 * m, m, t, i)?;
        if size > best {
            best = size.clone();
            argmax = i;
        }
        sizes.push(FiEntry { i, size });
    }
    Ok(FiScan { m, t, sizes, argmax, max_size: best })
}

/// Result of an exhaustive pair-system search for one of the conjectures.
/// `exact` means the full space over the given universe was explored; the
/// value is then exact for that universe and a lower bound in general.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureSearchResult {
    pub a: usize,
    pub b: usize,
    pub t: Option<usize>,
    pub universe: usize,
    pub max_found: usize,
    pub witness: SetPairSystem,
    pub exact: bool,
    #[serde(with = "big_string")]
    pub conjectured_bound: BigCount,
    /// Scott–Wilmer: `⌊C(a+b, a)/2⌋`, valid for every `t >= 1`.
    #[serde(with = "big_string")]
    pub known_bound: BigCount,
    pub counterexample: bool,
}

/// Largest system of distinct pairs `(A_i, B_i)` over `[1, u]` with
/// `|A_i| = a`, `|B_i| = b`, the Bollobás condition and pairwise intersecting
/// first coordinates. Conjectured bound: `C(a+b−1, a−1)`.
pub fn conjecture_tuz_search(
    a: usize,
    b: usize,
    universe: GroundSet,
    budget: &SearchBudget,
) -> Result<ConjectureSearchResult> {
    let conjectured = binom((a + b - 1) as u64, (a - 1) as u64);
    search_pair_systems(a, b, 1, None, conjectured, universe, budget)
}

/// The `t`-intersecting generalization. Conjectured bound: `AK(a+b, a, t)`.
pub fn conjecture_ak_search(
    a: usize,
    b: usize,
    t: usize,
    universe: GroundSet,
    budget: &SearchBudget,
) -> Result<ConjectureSearchResult> {
    if t == 0 || t > a {
        return Err(Error::Domain(format!("conjecture search needs 1 <= t <= a, got t={t}, a={a}")));
    }
    let conjectured = ak((a + b) as u64, a as u64, t as u64, true)?;
    search_pair_systems(a, b, t, Some(t), conjectured, universe, budget)
}

fn search_pair_systems(
    a: usize,
    b: usize,
    t: usize,
    t_reported: Option<usize>,
    conjectured_bound: BigCount,
    universe: GroundSet,
    budget: &SearchBudget,
) -> Result<ConjectureSearchResult> {
    if a == 0 || b == 0 {
        return Err(Error::Domain("pair sizes a, b must be positive".into()));
    }
    if a > b {
        return Err(Error::Domain(format!("searches assume a <= b, got a={a}, b={b}")));
    }
    let u = universe.size();
    // candidate pairs (A, B) with A ∩ B = ∅, in lexicographic (A, B) order
    let mut candidates: Vec<(FiniteSet, FiniteSet)> = Vec::new();
    for a_set in all_subsets_of_size(u, a) {
        let rest: Vec<usize> = (1..=u).filter(|&e| !a_set.contains(e)).collect();
        let mut chooser = Vec::with_capacity(b);
        choose_from(&rest, b, 0, &mut chooser, &mut |combo| {
            candidates.push((a_set.clone(), combo.iter().copied().collect()));
        });
    }
    let compatible = |i: usize, j: usize| {
        let (ai, bi) = &candidates[i];
        let (aj, bj) = &candidates[j];
        ai.intersection_len(aj) >= t && !ai.is_disjoint(bj) && !aj.is_disjoint(bi)
    };
    let result = max_clique(candidates.len(), compatible, budget.max_nodes);
    let mut chosen: Vec<usize> = result.best.clone();
    chosen.sort_unstable();
    let pairs: Vec<(FiniteSet, FiniteSet)> = chosen.iter().map(|&i| candidates[i].clone()).collect();
    let kind = match t_reported {
        None | Some(1) => PairKind::IntersectingBollobas,
        Some(t) => PairKind::TIntersectingBollobas(t),
    };
    let witness = SetPairSystem::new(pairs, kind);
    if !witness.is_empty() {
        witness.validate()?;
    }
    let max_found = result.best.len();
    let known_bound = binom((a + b) as u64, a as u64) / BigCount::from(2u32);
    debug_assert!(
        !result.complete || BigCount::from(max_found) <= known_bound,
        "a Scott–Wilmer violation would mean a search bug"
    );
    Ok(ConjectureSearchResult {
        a,
        b,
        t: t_reported,
        universe: u,
        max_found,
        witness,
        exact: result.complete,
        counterexample: BigCount::from(max_found) > conjectured_bound,
        conjectured_bound,
        known_bound,
    })
}

fn choose_from(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if cur.len() == size {
        emit(cur);
        return;
    }
    if items.len() - start < size - cur.len() {
        return;
    }
    for i in start..items.len() {
        cur.push(items[i]);
        choose_from(items, size, i + 1, cur, emit);
        cur.pop();
    }
}

/// Largest `m`-uniform `⌈m/2⌉`-intersecting family over `[1, u]` with no
/// `m + 1` disjointly representable members. The intersection constraint is
/// pairwise, but representability is `(m+1)`-ary, so this is backtracking
/// with subfamily pruning rather than a clique search.
pub fn j_oracle(m: usize, universe: GroundSet, budget: &SearchBudget) -> Result<FamilySearchResult> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let t = m.div_ceil(2);
    let candidates = all_subsets_of_size(universe.size(), m);
    let mut state = SearchState::new(budget);
    let mut current: Vec<usize> = Vec::new();
    j_dfs(&candidates, m, t, 0, &mut current, &mut state);
    let witness_sets: Vec<FiniteSet> = state.best.iter().map(|&i| candidates[i].clone()).collect();
    Ok(FamilySearchResult {
        value: state.best_len,
        witness: SetFamily::new(universe, witness_sets, Some(m))?,
        exact: !state.truncated,
        nodes_explored: state.nodes,
    })
}

fn j_dfs(
    candidates: &[FiniteSet],
    m: usize,
    t: usize,
    start: usize,
    current: &mut Vec<usize>,
    state: &mut SearchState,
) {
    state.observe(current);
    if current.len() + (candidates.len() - start) <= state.best_len {
        return;
    }
    for i in start..candidates.len() {
        if !state.tick() {
            return;
        }
        let cand = &candidates[i];
        let intersecting = current.iter().all(|&j| candidates[j].intersection_len(cand) >= t);
        if intersecting && extends_without_dr(candidates, current, i, m + 1) {
            current.push(i);
            j_dfs(candidates, m, t, i + 1, current, state);
            current.pop();
            if state.truncated {
                return;
            }
        }
    }
}

fn extends_without_dr(candidates: &[FiniteSet], current: &[usize], cand: usize, k: usize) -> bool {
    if current.len() + 1 < k {
        return true;
    }
    let mut ok = true;
    let mut cur = Vec::with_capacity(k - 1);
    fn rec(
        candidates: &[FiniteSet],
        current: &[usize],
        cand: usize,
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        ok: &mut bool,
    ) {
        if !*ok {
            return;
        }
        if cur.len() == k - 1 {
            let mut tuple: Vec<FiniteSet> = cur.iter().map(|&i| candidates[i].clone()).collect();
            tuple.push(candidates[cand].clone());
            if is_disjointly_representable(&tuple).is_some() {
                *ok = false;
            }
            return;
        }
        for i in start..current.len() {
            cur.push(current[i]);
            rec(candidates, current, cand, k, i + 1, cur, ok);
            cur.pop();
        }
    }
    rec(candidates, current, cand, k, 0, &mut cur, &mut ok);
    ok
}
