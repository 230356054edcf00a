//! The ℓ(m) round analysis of a preference matrix: either certify a core of
//! houses sold in every Pareto-optimal matching, or exhibit a large column
//! set that every reachable set almost covers.
//!
//! The procedure works in rounds. Round `i` looks at column `i + 1`
//! (1-based) inside the current row set `A_i` (`A_0` = all rows) for a house
//! appearing at least `m / L^{i+1}` times; success shrinks to those rows,
//! extending the constant prefix. Running all `depth` rounds yields a
//! `CommonCore`; a failed round yields `LargeX` at that level. The defaults
//! `L = ell(m)`, `depth = ell(m) − 4` reproduce the analysis parameters
//! exactly (vacuous below `m = 3125`); decoupled parameters keep the
//! machinery exercisable at desk scale.

use serde::{Serialize, Serializer};

use crate::bounds::ell;
use crate::error::{Error, Result};
use crate::housing::{reachable_family_by_permutations, PreferenceProfile};
use crate::set::FiniteSet;

/// Round parameters: the frequency base `L` and the number of rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EllemParams {
    pub l: usize,
    pub depth: usize,
}

impl EllemParams {
    /// `L = ell(m)`, `depth = max(ell(m) − 4, 0)`.
    pub fn defaults(m: usize) -> Self {
        let l = ell(m as u64) as usize;
        EllemParams { l, depth: l.saturating_sub(4) }
    }
}

/// The nested row sets `A_1 ⊇ A_2 ⊇ …` produced by successful rounds,
/// with the common column entries at each level. `levels[i]` holds 0-based
/// row indices (serialized 1-based); `prefix[i]` is the house constant in
/// column `i + 1` across `levels[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowChain {
    pub levels: Vec<Vec<usize>>,
    pub prefix: Vec<usize>,
}

impl RowChain {
    fn empty() -> Self {
        RowChain { levels: Vec::new(), prefix: Vec::new() }
    }
}

impl Serialize for RowChain {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            levels: Vec<Vec<usize>>,
            prefix: &'a [usize],
        }
        Repr {
            levels: self
                .levels
                .iter()
                .map(|rows| rows.iter().map(|r| r + 1).collect())
                .collect(),
            prefix: &self.prefix,
        }
        .serialize(serializer)
    }
}

/// Result of the round analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum EllemOutcome {
    /// Every house in `core` is sold in every reachable set. The core holds
    /// the first-column houses plus the certified part of the common prefix;
    /// at the default (paper-scale) parameters that is the whole prefix.
    CommonCore { core: FiniteSet, chain: RowChain },
    /// No qualifying house at round `level`: `x_set` collects the distinct
    /// column entries there, and every reachable set misses at most `level`
    /// of them.
    LargeX { x_set: FiniteSet, level: usize, chain: RowChain },
    /// `depth = 0` makes the guarantee empty.
    Vacuous { reason: String },
}

/// Runs the round procedure. Requires rows of length at least `depth + 1`.
pub fn ellem_analyze(profile: &PreferenceProfile, params: &EllemParams) -> Result<EllemOutcome> {
    let m = profile.m();
    let EllemParams { l, depth } = *params;
    if l == 0 {
        return Err(Error::InvalidInput("parameter L must be at least 1".into()));
    }
    if let Some(short) = profile.rows().iter().find(|r| r.len() < depth + 1) {
        return Err(Error::InvalidInput(format!(
            "round analysis at depth {depth} needs rows of length >= {}, got {}",
            depth + 1,
            short.len()
        )));
    }
    if depth == 0 {
        return Ok(EllemOutcome::Vacuous { reason: "depth 0: the guarantee is empty".into() });
    }

    // Every first-column house is sold in every matching; with enough of
    // them the core is immediate.
    let first_column: FiniteSet = profile.rows().iter().map(|r| r[0]).collect();
    if first_column.len() >= depth {
        return Ok(EllemOutcome::CommonCore { core: first_column, chain: RowChain::empty() });
    }

    let mut chain = RowChain::empty();
    let mut rows: Vec<usize> = (0..m).collect();
    for level in 0..depth {
        match frequent_house(profile, &rows, level, l, m) {
            Some(house) => {
                rows.retain(|&r| profile.row(r)[level] == house);
                chain.levels.push(rows.clone());
                chain.prefix.push(house);
            }
            None => {
                let x_set: FiniteSet = rows.iter().map(|&r| profile.row(r)[level]).collect();
                return Ok(EllemOutcome::LargeX { x_set, level, chain });
            }
        }
    }

    // First-column houses are always certified. Prefix houses v_1..v_p are
    // certified for the largest p with some A_j (j >= p) of size >= p: the
    // |A_j| buyers sharing the prefix force its first min(j, |A_j|) houses.
    let mut core = first_column;
    let certified = (1..=depth)
        .map(|j| j.min(chain.levels[j - 1].len()))
        .max()
        .unwrap_or(0);
    for &house in &chain.prefix[..certified] {
        core.insert(house)?;
    }
    Ok(EllemOutcome::CommonCore { core, chain })
}

/// Smallest house in column `level` (0-based) of `rows` appearing at least
/// `m / l^{level+1}` times, by exact integer comparison `count · l^{level+1}
/// >= m`.
fn frequent_house(
    profile: &PreferenceProfile,
    rows: &[usize],
    level: usize,
    l: usize,
    m: usize,
) -> Option<usize> {
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &r in rows {
        let house = profile.row(r)[level];
        match counts.iter_mut().find(|(h, _)| *h == house) {
            Some((_, c)) => *c += 1,
            None => counts.push((house, 1)),
        }
    }
    counts.sort_unstable();
    let threshold_power = saturating_pow(l, level + 1);
    counts
        .into_iter()
        .find(|&(_, count)| (count as u128).saturating_mul(threshold_power) >= m as u128)
        .map(|(house, _)| house)
}

fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Checks an outcome against the fully enumerated reachable family:
/// `CommonCore` demands `core ⊆ E` for every reachable `E`; `LargeX` demands
/// `|E ∩ X| >= |X| − level` (the per-level guarantee); `Vacuous` is true.
pub fn verify_ellem_outcome(profile: &PreferenceProfile, outcome: &EllemOutcome) -> Result<bool> {
    let reachable = reachable_family_by_permutations(profile)?;
    Ok(match outcome {
        EllemOutcome::Vacuous { .. } => true,
        EllemOutcome::CommonCore { core, .. } => {
            reachable.family.sets().iter().all(|e| core.is_subset_of(e))
        }
        EllemOutcome::LargeX { x_set, level, .. } => reachable
            .family
            .sets()
            .iter()
            .all(|e| e.intersection_len(x_set) + level >= x_set.len()),
    })
}

/// Validates chain invariants directly: nesting, the exact size bound
/// `|A_i| · L^i >= m`, and prefix constancy on each level.
pub fn check_row_chain(profile: &PreferenceProfile, params: &EllemParams, chain: &RowChain) -> Result<()> {
    let m = profile.m();
    if chain.levels.len() != chain.prefix.len() {
        return Err(Error::InvalidInput("chain levels and prefix lengths differ".into()));
    }
    let mut previous: Option<&Vec<usize>> = None;
    for (idx, level_rows) in chain.levels.iter().enumerate() {
        if let Some(prev) = previous {
            if !level_rows.iter().all(|r| prev.contains(r)) {
                return Err(Error::InvalidInput(format!("level {} is not nested in its parent", idx + 1)));
            }
        }
        let power = saturating_pow(params.l, idx + 1);
        if (level_rows.len() as u128).saturating_mul(power) < m as u128 {
            return Err(Error::InvalidInput(format!(
                "level {} has {} rows, below m / L^{}",
                idx + 1,
                level_rows.len(),
                idx + 1
            )));
        }
        for &r in level_rows {
            for (col, &expected) in chain.prefix[..=idx].iter().enumerate() {
                if profile.row(r)[col] != expected {
                    return Err(Error::InvalidInput(format!(
                        "row {} disagrees with the prefix at column {}",
                        r + 1,
                        col + 1
                    )));
                }
            }
        }
        previous = Some(level_rows);
    }
    Ok(())
}

/// The counting inequality behind the `LargeX` case, checked exactly:
/// `(L−5)·m/L^{i+1} + (|X|−L+5)·i >= m/L^i`, cleared of denominators.
/// Meaningful only for `L >= 5` and `i >= 1`; the level-0 and small-`L`
/// cases degenerate.
pub fn counting_inequality_holds(m: usize, l: usize, level: usize, x_size: usize) -> bool {
    let m = m as i128;
    let l = l as i128;
    let i = level as i128;
    let x = x_size as i128;
    let power = l.checked_pow(level as u32 + 1).expect("desk-scale parameters");
    (l - 5) * m + (x - l + 5) * i * power >= m * l
}
