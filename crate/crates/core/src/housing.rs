//! Preference profiles, greedy (serial-dictatorship) matchings, Pareto
//! optimality checks, reachable-set enumeration and the `f` oracle.
//!
//! Buyers are 0-based indices into the profile rows; houses are the 1-based
//! universe indices used everywhere else. A buyer's row lists houses in
//! strictly decreasing preference. Houses absent from a row are treated as
//! worse than every listed house, and matchings only ever assign listed
//! houses: rows of length `m` already capture everything reachable, because a
//! buyer can face at most `m − 1` occupied houses.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::{FiniteSet, GroundSet, MAX_UNIVERSE};

/// Exhaustive permutation enumeration stops here (`m!` growth).
pub const MAX_EXHAUSTIVE_PERMUTATION_M: usize = 10;
/// Limits for full backtracking over 1-POMs.
pub const MAX_ONE_POM_M: usize = 6;
pub const MAX_ONE_POM_ROW_LEN: usize = 8;
/// Exhaustive `f` search is feasible only this far.
pub const MAX_EXHAUSTIVE_F_M: usize = 3;

/// The preference matrix: `m` rows of distinct house indices, each of length
/// at least `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    m: usize,
    universe: GroundSet,
    rows: Vec<Vec<usize>>,
}

impl PreferenceProfile {
    pub fn new(universe: GroundSet, rows: Vec<Vec<usize>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidInput("profile needs at least one buyer".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() < m {
                return Err(Error::InvalidInput(format!(
                    "row {} has {} entries, need at least m = {m}",
                    i + 1,
                    row.len()
                )));
            }
            let mut seen = FiniteSet::empty();
            for &h in row {
                if !universe.contains(h) {
                    return Err(Error::InvalidInput(format!(
                        "row {}: house {h} outside universe [1, {}]",
                        i + 1,
                        universe.size()
                    )));
                }
                if seen.contains(h) {
                    return Err(Error::InvalidInput(format!(
                        "row {}: duplicate house {h}",
                        i + 1
                    )));
                }
                seen.insert(h)?;
            }
        }
        Ok(PreferenceProfile { m, universe, rows })
    }

    /// Construction for internal enumerators that already guarantee validity.
    pub(crate) fn from_parts_unchecked(universe: GroundSet, rows: Vec<Vec<usize>>) -> Self {
        let m = rows.len();
        debug_assert!(PreferenceProfile::new(universe, rows.clone()).is_ok());
        PreferenceProfile { m, universe, rows }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn universe(&self) -> GroundSet {
        self.universe
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn row(&self, buyer: usize) -> &[usize] {
        &self.rows[buyer]
    }

    /// Text format: first line `m u`, then one row of house indices per buyer.
    pub fn parse_text(input: &str) -> Result<Self> {
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "empty profile".into() })?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                msg: "header must be 'm u'".into(),
            });
        }
        let m: usize = parts[0].parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("invalid m '{}'", parts[0]),
        })?;
        let u: usize = parts[1].parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("invalid u '{}'", parts[1]),
        })?;
        let mut rows = Vec::with_capacity(m);
        for _ in 0..m {
            let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("expected {m} rows, input ended early"),
            })?;
            let mut row = Vec::new();
            let mut seen = FiniteSet::empty();
            for tok in line.split_whitespace() {
                let house: usize = tok.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("invalid house index '{tok}'"),
                })?;
                if house == 0 || house > u {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("house {house} outside universe [1, {u}]"),
                    });
                }
                if seen.contains(house) {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("duplicate house {house} in row {}", rows.len() + 1),
                    });
                }
                seen.insert(house)?;
                row.push(house);
            }
            if row.len() < m {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("row {} has {} entries, need at least m = {m}", rows.len() + 1, row.len()),
                });
            }
            rows.push(row);
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("unexpected trailing content after {m} rows"),
            });
        }
        PreferenceProfile::new(GroundSet::new(u)?, rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.m, self.universe.size());
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|h| h.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    m: usize,
    u: usize,
    rows: Vec<Vec<usize>>,
}

impl Serialize for PreferenceProfile {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileRepr { m: self.m, u: self.universe.size(), rows: self.rows.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PreferenceProfile {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ProfileRepr::deserialize(deserializer)?;
        let universe = GroundSet::new(repr.u).map_err(D::Error::custom)?;
        let profile = PreferenceProfile::new(universe, repr.rows).map_err(D::Error::custom)?;
        if profile.m() != repr.m {
            return Err(D::Error::custom(format!(
                "declared m = {} but {} rows given",
                repr.m,
                profile.m()
            )));
        }
        Ok(profile)
    }
}

/// An injective buyer → house assignment together with its image `s(τ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    assignment: Vec<usize>,
    image: FiniteSet,
}

impl Matching {
    pub fn new(profile: &PreferenceProfile, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != profile.m() {
            return Err(Error::InvalidInput("assignment must cover every buyer".into()));
        }
        let mut image = FiniteSet::empty();
        for (buyer, &house) in assignment.iter().enumerate() {
            if !profile.row(buyer).contains(&house) {
                return Err(Error::InvalidInput(format!(
                    "buyer {buyer} assigned house {house} not on their row"
                )));
            }
            if image.contains(house) {
                return Err(Error::InvalidInput(format!("house {house} assigned twice")));
            }
            image.insert(house)?;
        }
        Ok(Matching { assignment, image })
    }

    fn from_assignment_unchecked(assignment: Vec<usize>) -> Self {
        let image = assignment.iter().copied().collect();
        Matching { assignment, image }
    }

    pub fn house_of(&self, buyer: usize) -> usize {
        self.assignment[buyer]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// `s(τ)`: the set of houses sold.
    pub fn image(&self) -> &FiniteSet {
        &self.image
    }
}

/// Serial dictatorship: buyers pick their favorite untaken house in the given
/// order. `order` must be a permutation of `0..m`.
///
/// Row exhaustion is impossible for valid profiles (rows have length >= m),
/// so it is asserted rather than surfaced as an error.
pub fn greedy_matching(profile: &PreferenceProfile, order: &[usize]) -> Matching {
    debug_assert_eq!(order.len(), profile.m());
    let mut assignment = vec![0usize; profile.m()];
    let mut taken = FiniteSet::empty();
    for &buyer in order {
        let house = profile
            .row(buyer)
            .iter()
            .copied()
            .find(|&h| !taken.contains(h))
            .expect("row exhausted: profile invariant (row length >= m) violated");
        assignment[buyer] = house;
        taken.insert(house).expect("house indices validated at construction");
    }
    Matching { assignment, image: taken }
}

/// True iff no single buyer can move to a strictly preferred free house:
/// every house a buyer ranks above their own is taken by someone else.
pub fn is_one_pom(profile: &PreferenceProfile, tau: &Matching) -> bool {
    (0..profile.m()).all(|buyer| {
        profile
            .row(buyer)
            .iter()
            .take_while(|&&h| h != tau.house_of(buyer))
            .all(|&h| tau.image().contains(h))
    })
}

/// A blocking coalition: the listed buyers all strictly improve in
/// `improved`, which differs from the blocked matching exactly on them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coalition {
    pub buyers: Vec<usize>,
    pub improved: Matching,
}

/// Finds the lexicographically smallest blocking coalition of size at most
/// `max_size` (by ascending buyer-index sequence), with the lexicographically
/// smallest improving reassignment (house indices, in coalition order).
/// Returns `None` when no coalition of that size blocks; `None` at
/// `max_size = m` certifies Pareto optimality.
pub fn find_blocking_coalition(
    profile: &PreferenceProfile,
    tau: &Matching,
    max_size: usize,
) -> Option<Coalition> {
    let m = profile.m();
    let max_size = max_size.min(m);
    let mut subset = Vec::new();
    find_coalition_rec(profile, tau, max_size, 0, &mut subset)
}

fn find_coalition_rec(
    profile: &PreferenceProfile,
    tau: &Matching,
    max_size: usize,
    start: usize,
    subset: &mut Vec<usize>,
) -> Option<Coalition> {
    for buyer in start..profile.m() {
        subset.push(buyer);
        if let Some(new_houses) = improve_coalition(profile, tau, subset) {
            let mut assignment = tau.assignment().to_vec();
            for (&b, &h) in subset.iter().zip(new_houses.iter()) {
                assignment[b] = h;
            }
            let coalition = Coalition {
                buyers: subset.clone(),
                improved: Matching::from_assignment_unchecked(assignment),
            };
            subset.pop();
            return Some(coalition);
        }
        if subset.len() < max_size {
            if let Some(c) = find_coalition_rec(profile, tau, max_size, buyer + 1, subset) {
                subset.pop();
                return Some(c);
            }
        }
        subset.pop();
    }
    None
}

/// Searches for an improving reassignment of `coalition`: each member gets a
/// strictly preferred house that is neither kept by an outsider nor taken by
/// an earlier member. Members may swap each other's freed houses. Candidates
/// are tried in ascending house order so the first hit is lexicographically
/// least.
fn improve_coalition(
    profile: &PreferenceProfile,
    tau: &Matching,
    coalition: &[usize],
) -> Option<Vec<usize>> {
    let freed: FiniteSet = coalition.iter().map(|&b| tau.house_of(b)).collect();
    let kept = tau.image().difference(&freed);
    let mut preferred: Vec<Vec<usize>> = Vec::with_capacity(coalition.len());
    for &b in coalition {
        let mut options: Vec<usize> = profile
            .row(b)
            .iter()
            .take_while(|&&h| h != tau.house_of(b))
            .copied()
            .filter(|&h| !kept.contains(h))
            .collect();
        if options.is_empty() {
            return None;
        }
        options.sort_unstable();
        preferred.push(options);
    }
    let mut chosen = Vec::with_capacity(coalition.len());
    let mut used = FiniteSet::empty();
    fn assign(
        preferred: &[Vec<usize>],
        idx: usize,
        chosen: &mut Vec<usize>,
        used: &mut FiniteSet,
    ) -> bool {
        if idx == preferred.len() {
            return true;
        }
        for &h in &preferred[idx] {
            if !used.contains(h) {
                used.insert(h).expect("validated house index");
                chosen.push(h);
                if assign(preferred, idx + 1, chosen, used) {
                    return true;
                }
                chosen.pop();
                used.remove(h);
            }
        }
        false
    }
    if assign(&preferred, 0, &mut chosen, &mut used) {
        Some(chosen)
    } else {
        None
    }
}

/// Which enumerator produced a reachable family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Permutations,
    OnePoms,
    /// A sampled sub-family: a lower bound, not the full family.
    PermutationSample { samples: u64, seed: u64 },
}

/// An enumerated family of reachable house sets (`m`-uniform,
/// duplicate-free).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReachableFamily {
    pub family: SetFamily,
    pub provenance: Provenance,
}

fn family_from_images(
    profile: &PreferenceProfile,
    images: BTreeSet<FiniteSet>,
    provenance: Provenance,
) -> ReachableFamily {
    let family = SetFamily::new(profile.universe(), images.into_iter().collect(), Some(profile.m()))
        .expect("greedy images are m-uniform and deduplicated");
    ReachableFamily { family, provenance }
}

/// Iterative Heap's algorithm over `items`, invoking `f` on every ordering.
fn for_each_permutation(items: &mut [usize], f: &mut impl FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    f(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// The family `{ s(τ_π) : π over all m! orders }`, deduplicated.
///
/// Fans out over the first buyer in the order; the per-branch image sets are
/// merged by union, so the result is independent of thread count.
pub fn reachable_family_by_permutations(profile: &PreferenceProfile) -> Result<ReachableFamily> {
    let m = profile.m();
    if m > MAX_EXHAUSTIVE_PERMUTATION_M {
        return Err(Error::BudgetExceeded(format!(
            "exhaustive permutation enumeration is limited to m <= {MAX_EXHAUSTIVE_PERMUTATION_M}, got m = {m}"
        )));
    }
    let images = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut images = BTreeSet::new();
            let mut rest: Vec<usize> = (0..m).filter(|&b| b != first).collect();
            let mut order = Vec::with_capacity(m);
            if rest.is_empty() {
                images.insert(greedy_matching(profile, &[first]).image.clone());
            } else {
                for_each_permutation(&mut rest, &mut |tail| {
                    order.clear();
                    order.push(first);
                    order.extend_from_slice(tail);
                    images.insert(greedy_matching(profile, &order).image.clone());
                });
            }
            images
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(family_from_images(profile, images, Provenance::Permutations))
}

/// Draws `samples` random orders (seeded) and returns the sub-family of their
/// images. Flagged as a sample: a lower bound on the true family.
pub fn sample_reachable_family(profile: &PreferenceProfile, samples: u64, seed: u64) -> ReachableFamily {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..profile.m()).collect();
    let mut images = BTreeSet::new();
    for _ in 0..samples {
        order.shuffle(&mut rng);
        images.insert(greedy_matching(profile, &order).image.clone());
    }
    family_from_images(profile, images, Provenance::PermutationSample { samples, seed })
}

/// Enumerates every injective row-respecting assignment, keeps the 1-POMs,
/// and collects their images. Agreement with
/// [`reachable_family_by_permutations`] is the cross-check run by callers.
pub fn reachable_family_by_one_poms(profile: &PreferenceProfile) -> Result<ReachableFamily> {
    let m = profile.m();
    if m > MAX_ONE_POM_M {
        return Err(Error::BudgetExceeded(format!(
            "1-POM enumeration is limited to m <= {MAX_ONE_POM_M}, got m = {m}"
        )));
    }
    if let Some(row) = profile.rows().iter().find(|r| r.len() > MAX_ONE_POM_ROW_LEN) {
        return Err(Error::BudgetExceeded(format!(
            "1-POM enumeration is limited to row length <= {MAX_ONE_POM_ROW_LEN}, got {}",
            row.len()
        )));
    }
    let mut images = BTreeSet::new();
    let mut assignment = vec![0usize; m];
    let mut used = FiniteSet::empty();
    fn rec(
        profile: &PreferenceProfile,
        buyer: usize,
        assignment: &mut Vec<usize>,
        used: &mut FiniteSet,
        images: &mut BTreeSet<FiniteSet>,
    ) {
        if buyer == profile.m() {
            let tau = Matching::from_assignment_unchecked(assignment.clone());
            if is_one_pom(profile, &tau) {
                images.insert(tau.image);
            }
            return;
        }
        for &h in profile.row(buyer) {
            if !used.contains(h) {
                used.insert(h).expect("validated house index");
                assignment[buyer] = h;
                rec(profile, buyer + 1, assignment, used, images);
                used.remove(h);
            }
        }
    }
    rec(profile, 0, &mut assignment, &mut used, &mut images);
    Ok(family_from_images(profile, images, Provenance::OnePoms))
}

/// Streams every canonical profile with `m` buyers, rows of length exactly
/// `m`, over at most `max_universe` house labels.
///
/// Canonical form: houses are labeled in order of first appearance scanning
/// rows top-to-bottom, left-to-right (so row 1 is always `1..=m`), and rows
/// are sorted lexicographically. Every profile is equivalent to at least one
/// canonical profile under house relabeling and buyer renaming, and both
/// moves leave the family of reachable sets unchanged (up to the relabeling).
pub fn for_each_canonical_profile(
    m: usize,
    max_universe: usize,
    f: &mut impl FnMut(&PreferenceProfile),
) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    if max_universe < m || max_universe > 128 {
        return Err(Error::InvalidInput(format!(
            "canonical enumeration needs m <= max_universe <= 128, got {max_universe}"
        )));
    }
    let first_row: Vec<usize> = (1..=m).collect();
    let mut rows = vec![first_row];
    canonical_rows_rec(m, max_universe, m, &mut rows, f);
    Ok(())
}

fn canonical_rows_rec(
    m: usize,
    max_universe: usize,
    labels_used: usize,
    rows: &mut Vec<Vec<usize>>,
    f: &mut impl FnMut(&PreferenceProfile),
) {
    if rows.len() == m {
        let universe = GroundSet::new(labels_used).expect("labels_used <= 128");
        let profile = PreferenceProfile::from_parts_unchecked(universe, rows.clone());
        f(&profile);
        return;
    }
    let prev = rows.last().expect("row 1 seeded").clone();
    let mut row = Vec::with_capacity(m);
    let mut used: u128 = 0;
    next_row_rec(m, max_universe, labels_used, &prev, true, &mut row, &mut used, &mut |row, new_labels| {
        rows.push(row.to_vec());
        canonical_rows_rec(m, max_universe, new_labels, rows, f);
        rows.pop();
    });
}

/// Generates rows of length `m` that are lexicographically >= `prev`, with
/// distinct entries drawn from the existing labels `1..=labels_used` plus
/// fresh labels taken in increasing order.
#[allow(clippy::too_many_arguments)]
fn next_row_rec(
    m: usize,
    max_universe: usize,
    labels_used: usize,
    prev: &[usize],
    tight: bool,
    row: &mut Vec<usize>,
    used: &mut u128,
    emit: &mut impl FnMut(&[usize], usize),
) {
    if row.len() == m {
        emit(row, labels_used);
        return;
    }
    let pos = row.len();
    let lower = if tight { prev[pos] } else { 1 };
    for label in lower..=labels_used {
        if *used & (1 << label) != 0 {
            continue;
        }
        let still_tight = tight && label == prev[pos];
        *used |= 1 << label;
        row.push(label);
        next_row_rec(m, max_universe, labels_used, prev, still_tight, row, used, emit);
        row.pop();
        *used &= !(1 << label);
    }
    // one fresh label is always the next unused integer
    let fresh = labels_used + 1;
    if fresh <= max_universe && (!tight || fresh >= prev[pos]) {
        *used |= 1 << fresh;
        row.push(fresh);
        next_row_rec(m, max_universe, fresh, prev, false, row, used, emit);
        row.pop();
        *used &= !(1 << fresh);
    }
}

/// A uniformly random profile: each row samples `row_len` distinct houses.
pub fn random_profile(
    m: usize,
    universe: GroundSet,
    row_len: usize,
    rng: &mut impl rand::Rng,
) -> PreferenceProfile {
    assert!(row_len >= m && row_len <= universe.size());
    let rows = (0..m)
        .map(|_| {
            rand::seq::index::sample(rng, universe.size(), row_len)
                .into_iter()
                .map(|i| i + 1)
                .collect()
        })
        .collect();
    PreferenceProfile::from_parts_unchecked(universe, rows)
}

/// How the `f` oracle explores profile space.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum FSearchMode {
    /// Full canonical enumeration; only feasible for `m <= MAX_EXHAUSTIVE_F_M`.
    Exhaustive,
    /// Seeded random profiles; the result is a lower bound.
    Random { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct FOracleResult {
    pub value: usize,
    pub witness: PreferenceProfile,
    pub exact: bool,
}

/// Maximizes the number of reachable sets over profiles with `m` buyers.
///
/// Exhaustive mode walks the canonical space (universe capped at `m²`, the
/// most distinct entries an `m × m` matrix can hold) and is exact. Random
/// mode reports the best of `samples` seeded draws. The witness is the first
/// profile attaining the maximum in the deterministic exploration order.
pub fn f_oracle(m: usize, mode: FSearchMode) -> Result<FOracleResult> {
    match mode {
        FSearchMode::Exhaustive => {
            if m > MAX_EXHAUSTIVE_F_M {
                return Err(Error::BudgetExceeded(format!(
                    "exhaustive f search is limited to m <= {MAX_EXHAUSTIVE_F_M}, got m = {m}"
                )));
            }
            let mut best: Option<(usize, PreferenceProfile)> = None;
            for_each_canonical_profile(m, m * m, &mut |profile| {
                let size = reachable_family_by_permutations(profile)
                    .expect("m <= 3")
                    .family
                    .len();
                if best.as_ref().is_none_or(|(b, _)| size > *b) {
                    best = Some((size, profile.clone()));
                }
            })?;
            let (value, witness) = best.expect("canonical space is nonempty");
            debug_assert!(value <= (1..=m).product::<usize>());
            Ok(FOracleResult { value, witness, exact: true })
        }
        FSearchMode::Random { samples, seed } => {
            use rand::SeedableRng;
            if m > MAX_EXHAUSTIVE_PERMUTATION_M {
                return Err(Error::BudgetExceeded(format!(
                    "f search evaluates profiles by permutation enumeration, limited to m <= {MAX_EXHAUSTIVE_PERMUTATION_M}"
                )));
            }
            let universe = GroundSet::new((m * m).min(MAX_UNIVERSE))?;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut best: Option<(usize, PreferenceProfile)> = None;
            for _ in 0..samples.max(1) {
                let profile = random_profile(m, universe, m, &mut rng);
                let size = reachable_family_by_permutations(&profile)?.family.len();
                if best.as_ref().is_none_or(|(b, _)| size > *b) {
                    best = Some((size, profile));
                }
            }
            let (value, witness) = best.expect("at least one sample");
            Ok(FOracleResult { value, witness, exact: false })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(u: usize, rows: &[&[usize]]) -> PreferenceProfile {
        PreferenceProfile::new(
            GroundSet::new(u).unwrap(),
            rows.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    fn fs(v: &[usize]) -> FiniteSet {
        v.iter().copied().collect()
    }

    #[test]
    fn greedy_single_buyer_takes_top_choice() {
        let p = profile(7, &[&[7, 2]]);
        let tau = greedy_matching(&p, &[0]);
        assert_eq!(tau.assignment(), &[7]);
    }

    #[test]
    fn greedy_two_buyers_both_orders() {
        let p = profile(3, &[&[1, 2], &[1, 3]]);
        let tau = greedy_matching(&p, &[0, 1]);
        assert_eq!(tau.assignment(), &[1, 3]);
        assert_eq!(tau.image(), &fs(&[1, 3]));
        let tau = greedy_matching(&p, &[1, 0]);
        assert_eq!(tau.assignment(), &[2, 1]);
        assert_eq!(tau.image(), &fs(&[1, 2]));
    }

    #[test]
    fn one_pom_examples() {
        let p = profile(3, &[&[1, 2], &[1, 3]]);
        let tau = Matching::new(&p, vec![1, 3]).unwrap();
        assert!(is_one_pom(&p, &tau));

        let p = profile(4, &[&[1, 2], &[3, 4]]);
        let tau = Matching::new(&p, vec![2, 3]).unwrap();
        assert!(!is_one_pom(&p, &tau), "buyer 0 can move to free house 1");

        let p = profile(6, &[&[5, 6]]);
        let tau = Matching::new(&p, vec![5]).unwrap();
        assert!(is_one_pom(&p, &tau));
    }

    #[test]
    fn blocking_coalition_single_buyer() {
        let p = profile(4, &[&[1, 2], &[3, 4]]);
        let tau = Matching::new(&p, vec![2, 3]).unwrap();
        let c = find_blocking_coalition(&p, &tau, 1).expect("buyer 0 blocks");
        assert_eq!(c.buyers, vec![0]);
        assert_eq!(c.improved.assignment(), &[1, 3]);
        // consistency with the 1-POM checker
        assert_eq!(find_blocking_coalition(&p, &tau, 1).is_none(), is_one_pom(&p, &tau));
    }

    #[test]
    fn top_choice_matching_has_no_coalition() {
        let p = profile(6, &[&[5, 6]]);
        let tau = Matching::new(&p, vec![5]).unwrap();
        assert!(find_blocking_coalition(&p, &tau, 1).is_none());
    }

    #[test]
    fn greedy_outputs_are_pareto_optimal_m3() {
        let p = profile(9, &[&[1, 2, 3], &[1, 3, 5], &[2, 3, 7]]);
        let mut order = vec![0, 1, 2];
        for_each_permutation(&mut order, &mut |ord| {
            let tau = greedy_matching(&p, ord);
            assert!(find_blocking_coalition(&p, &tau, 3).is_none(), "order {ord:?}");
        });
    }

    #[test]
    fn swap_cycle_is_detected_as_coalition() {
        // Two buyers each hold the other's favorite; only the pair swap blocks.
        let p = profile(2, &[&[1, 2], &[2, 1]]);
        let tau = Matching::new(&p, vec![2, 1]).unwrap();
        assert!(is_one_pom(&p, &tau));
        assert!(find_blocking_coalition(&p, &tau, 1).is_none());
        let c = find_blocking_coalition(&p, &tau, 2).expect("swap improves both");
        assert_eq!(c.buyers, vec![0, 1]);
        assert_eq!(c.improved.assignment(), &[1, 2]);
    }

    #[test]
    fn reachable_by_permutations_examples() {
        let p = profile(3, &[&[1, 2], &[1, 3]]);
        let fam = reachable_family_by_permutations(&p).unwrap();
        assert_eq!(fam.family.sets(), &[fs(&[1, 2]), fs(&[1, 3])]);

        let p = profile(3, &[&[1, 2, 3], &[1, 2, 3], &[1, 2, 3]]);
        let fam = reachable_family_by_permutations(&p).unwrap();
        assert_eq!(fam.family.sets(), &[fs(&[1, 2, 3])]);

        let p = profile(4, &[&[1, 2], &[3, 4]]);
        let fam = reachable_family_by_permutations(&p).unwrap();
        assert_eq!(fam.family.sets(), &[fs(&[1, 3])]);
    }

    #[test]
    fn reachable_by_one_poms_examples() {
        let p = profile(3, &[&[1, 2], &[1, 3]]);
        let fam = reachable_family_by_one_poms(&p).unwrap();
        assert_eq!(fam.family.sets(), &[fs(&[1, 2]), fs(&[1, 3])]);

        let p = profile(9, &[&[4, 9]]);
        let fam = reachable_family_by_one_poms(&p).unwrap();
        assert_eq!(fam.family.sets(), &[fs(&[4])]);

        let p = profile(3, &[&[1, 2, 3], &[1, 2, 3], &[1, 2, 3]]);
        let fam = reachable_family_by_one_poms(&p).unwrap();
        assert_eq!(fam.family.sets(), &[fs(&[1, 2, 3])]);
    }

    #[test]
    fn enumerator_limits_are_enforced() {
        let rows: Vec<Vec<usize>> = (0..11).map(|_| (1..=11).collect()).collect();
        let p = PreferenceProfile::new(GroundSet::new(11).unwrap(), rows).unwrap();
        assert!(matches!(
            reachable_family_by_permutations(&p),
            Err(Error::BudgetExceeded(_))
        ));
        let rows: Vec<Vec<usize>> = (0..7).map(|_| (1..=7).collect()).collect();
        let p = PreferenceProfile::new(GroundSet::new(7).unwrap(), rows).unwrap();
        assert!(matches!(reachable_family_by_one_poms(&p), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn sampling_is_a_seeded_lower_bound() {
        let p = profile(3, &[&[1, 2], &[1, 3]]);
        let full = reachable_family_by_permutations(&p).unwrap();
        let sampled = sample_reachable_family(&p, 50, 42);
        assert!(sampled.family.len() <= full.family.len());
        for s in sampled.family.sets() {
            assert!(full.family.sets().contains(s));
        }
        let again = sample_reachable_family(&p, 50, 42);
        assert_eq!(sampled, again);
    }

    #[test]
    fn canonical_profile_counts_match_hand_enumeration() {
        // Independently computed: 7 canonical profiles at m = 2, 1819 at m = 3.
        let mut count = 0usize;
        for_each_canonical_profile(2, 4, &mut |_| count += 1).unwrap();
        assert_eq!(count, 7);
        let mut count = 0usize;
        for_each_canonical_profile(3, 9, &mut |_| count += 1).unwrap();
        assert_eq!(count, 1819);
    }

    #[test]
    fn canonical_rows_are_sorted_and_first_appearance_labeled() {
        for_each_canonical_profile(3, 9, &mut |p| {
            for w in p.rows().windows(2) {
                assert!(w[0] <= w[1]);
            }
            let mut next_fresh = 1;
            for row in p.rows() {
                for &h in row {
                    if h == next_fresh {
                        next_fresh += 1;
                    } else {
                        assert!(h < next_fresh, "label {h} skipped ahead of {next_fresh}");
                    }
                }
            }
        })
        .unwrap();
    }

    #[test]
    fn f_oracle_small_values() {
        let r = f_oracle(1, FSearchMode::Exhaustive).unwrap();
        assert_eq!(r.value, 1);
        assert!(r.exact);

        let r = f_oracle(2, FSearchMode::Exhaustive).unwrap();
        assert_eq!(r.value, 2);
        assert!(r.exact);
        assert_eq!(r.witness.rows(), &[vec![1, 2], vec![1, 3]]);

        assert!(matches!(
            f_oracle(4, FSearchMode::Exhaustive),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn profile_text_round_trip_and_errors() {
        let p = profile(4, &[&[1, 2], &[3, 4]]);
        let text = p.to_text();
        assert_eq!(PreferenceProfile::parse_text(&text).unwrap(), p);

        let err = PreferenceProfile::parse_text("2 4\n1 1\n3 4\n").unwrap_err();
        assert!(err.to_string().contains("duplicate house 1"));
        let err = PreferenceProfile::parse_text("2 4\n1 2\n").unwrap_err();
        assert!(err.to_string().contains("ended early"));
    }

    #[test]
    fn profile_json_round_trip() {
        let p = profile(3, &[&[1, 2], &[1, 3]]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"m":2,"u":3,"rows":[[1,2],[1,3]]}"#);
        let back: PreferenceProfile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<PreferenceProfile>(r#"{"m":3,"u":3,"rows":[[1,2],[1,3]]}"#).is_err());
    }
}
