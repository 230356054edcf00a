//! Disjoint representability, minimal transversals, the Bollobás set-pair
//! inequality, and the skew cross-intersecting doubling.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::binom;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::search::{FamilySearchResult, SearchBudget, SearchState};
use crate::set::{FiniteSet, GroundSet};

/// The condition a pair system claims to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "t", rename_all = "kebab-case")]
pub enum PairKind {
    /// `A_i ∩ B_j = ∅` iff `i = j`.
    Bollobas,
    /// `A_i ∩ B_i = ∅` for all `i`, and `A_i ∩ B_j ≠ ∅` for `i < j`.
    Skew,
    /// Bollobás plus pairwise intersecting first coordinates.
    IntersectingBollobas,
    /// Bollobás plus `|A_i ∩ A_j| >= t`.
    TIntersectingBollobas(usize),
}

impl PairKind {
    fn name(&self) -> String {
        match self {
            PairKind::Bollobas => "bollobas".into(),
            PairKind::Skew => "skew".into(),
            PairKind::IntersectingBollobas => "intersecting-bollobas".into(),
            PairKind::TIntersectingBollobas(t) => format!("{t}-intersecting-bollobas"),
        }
    }
}

/// An ordered list of set pairs `(A_i, B_i)` with a declared condition kind.
/// The declaration is checked by [`SetPairSystem::validate`], not at
/// construction, so ill-formed systems can be built and then rejected with a
/// precise violation index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPairSystem {
    kind: PairKind,
    pairs: Vec<(FiniteSet, FiniteSet)>,
}

/// Serde shape: `{"kind": …, "pairs": [{"A": […], "B": […]}, …]}`.
#[derive(Serialize, Deserialize)]
struct SystemRepr {
    #[serde(flatten)]
    kind: PairKind,
    pairs: Vec<PairRepr>,
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    #[serde(rename = "A")]
    a: FiniteSet,
    #[serde(rename = "B")]
    b: FiniteSet,
}

impl Serialize for SetPairSystem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SystemRepr {
            kind: self.kind,
            pairs: self
                .pairs
                .iter()
                .map(|(a, b)| PairRepr { a: a.clone(), b: b.clone() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SetPairSystem {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SystemRepr::deserialize(deserializer)?;
        Ok(SetPairSystem {
            kind: repr.kind,
            pairs: repr.pairs.into_iter().map(|p| (p.a, p.b)).collect(),
        })
    }
}

impl SetPairSystem {
    pub fn new(pairs: Vec<(FiniteSet, FiniteSet)>, kind: PairKind) -> Self {
        SetPairSystem { kind, pairs }
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    pub fn pairs(&self) -> &[(FiniteSet, FiniteSet)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Checks the declared kind, reporting the first violating index pair.
    pub fn validate(&self) -> Result<()> {
        let n = self.pairs.len();
        let violation = |i, j| Error::KindViolation { kind: self.kind.name(), i, j };
        match self.kind {
            PairKind::Skew => {
                for i in 0..n {
                    if !self.pairs[i].0.is_disjoint(&self.pairs[i].1) {
                        return Err(violation(i, i));
                    }
                    for j in i + 1..n {
                        if self.pairs[i].0.is_disjoint(&self.pairs[j].1) {
                            return Err(violation(i, j));
                        }
                    }
                }
            }
            PairKind::Bollobas => self.validate_bollobas(0)?,
            PairKind::IntersectingBollobas => self.validate_bollobas(1)?,
            PairKind::TIntersectingBollobas(t) => self.validate_bollobas(t)?,
        }
        Ok(())
    }

    /// Bollobás condition plus `|A_i ∩ A_j| >= t_cross` for all `i, j`
    /// (including `i = j`, so first coordinates need at least `t_cross`
    /// elements).
    fn validate_bollobas(&self, t_cross: usize) -> Result<()> {
        let n = self.pairs.len();
        let violation = |i, j| Error::KindViolation { kind: self.kind.name(), i, j };
        for i in 0..n {
            if !self.pairs[i].0.is_disjoint(&self.pairs[i].1) {
                return Err(violation(i, i));
            }
            for j in 0..n {
                if i != j && self.pairs[i].0.is_disjoint(&self.pairs[j].1) {
                    return Err(violation(i, j));
                }
            }
        }
        if t_cross > 0 {
            for i in 0..n {
                for j in i..n {
                    if self.pairs[i].0.intersection_len(&self.pairs[j].0) < t_cross {
                        return Err(violation(i, j));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One private element per set, witnessing disjoint representability:
/// `x_i ∈ A_i` and `x_i ∉ A_j` for `j ≠ i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representatives(pub Vec<usize>);

/// Returns the least private element of each set if every set has one
/// (equivalently no set is contained in the union of the others), `None`
/// otherwise.
pub fn is_disjointly_representable(sets: &[FiniteSet]) -> Option<Representatives> {
    assert!(!sets.is_empty(), "disjoint representability needs at least one set");
    let mut reps = Vec::with_capacity(sets.len());
    for (i, s) in sets.iter().enumerate() {
        let mut others = FiniteSet::empty();
        for (j, t) in sets.iter().enumerate() {
            if j != i {
                others.union_with(t);
            }
        }
        reps.push(s.difference(&others).min_element()?);
    }
    Some(Representatives(reps))
}

/// Maximum size of an `r`-uniform family over `[1, u]` with no `k` disjointly
/// representable members, by branch and bound over candidates in
/// lexicographic order.
pub fn max_dr_free_family_oracle(
    r: usize,
    k: usize,
    universe: GroundSet,
    budget: &SearchBudget,
) -> Result<FamilySearchResult> {
    if r == 0 || k == 0 {
        return Err(Error::Domain("r and k must be positive".into()));
    }
    let candidates = all_subsets_of_size(universe.size(), r);
    let mut state = SearchState::new(budget);
    let mut current: Vec<usize> = Vec::new();
    dr_free_dfs(&candidates, k, 0, &mut current, &mut state);
    let witness_sets: Vec<FiniteSet> = state.best.iter().map(|&i| candidates[i].clone()).collect();
    let witness = SetFamily::new(universe, witness_sets, Some(r))?;
    Ok(FamilySearchResult {
        value: state.best_len,
        witness,
        exact: !state.truncated,
        nodes_explored: state.nodes,
    })
}

fn dr_free_dfs(
    candidates: &[FiniteSet],
    k: usize,
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
        if extends_dr_free(candidates, current, i, k) {
            current.push(i);
            dr_free_dfs(candidates, k, i + 1, current, state);
            current.pop();
            if state.truncated {
                return;
            }
        }
    }
}

/// True if adding `cand` keeps every `k`-subfamily non-representable. Only
/// subfamilies containing the new set need checking.
fn extends_dr_free(candidates: &[FiniteSet], current: &[usize], cand: usize, k: usize) -> bool {
    if current.len() + 1 < k {
        return true;
    }
    let mut tuple: Vec<FiniteSet> = Vec::with_capacity(k);
    combinations_of(current, k - 1, &mut |combo| {
        tuple.clear();
        tuple.extend(combo.iter().map(|&i| candidates[i].clone()));
        tuple.push(candidates[cand].clone());
        is_disjointly_representable(&tuple).is_none()
    })
}

/// Visits all `size`-combinations of `items`; stops early (returning false)
/// when the visitor does.
fn combinations_of(items: &[usize], size: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        items: &[usize],
        size: usize,
        start: usize,
        combo: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if combo.len() == size {
            return visit(combo);
        }
        for i in start..items.len() {
            combo.push(items[i]);
            if !rec(items, size, i + 1, combo, visit) {
                combo.pop();
                return false;
            }
            combo.pop();
        }
        true
    }
    rec(items, size, 0, &mut Vec::with_capacity(size), visit)
}

/// All `size`-subsets of `[1, u]` as bit sets, in lexicographic order.
pub(crate) fn all_subsets_of_size(u: usize, size: usize) -> Vec<FiniteSet> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(u: usize, size: usize, next: usize, cur: &mut Vec<usize>, out: &mut Vec<FiniteSet>) {
        if cur.len() == size {
            out.push(cur.iter().copied().collect());
            return;
        }
        // leave room for the remaining picks
        for e in next..=(u - (size - cur.len()) + 1) {
            cur.push(e);
            rec(u, size, e + 1, cur, out);
            cur.pop();
        }
    }
    if size <= u {
        rec(u, size, 1, &mut cur, &mut out);
    }
    out
}

/// For each member `F_i`, an inclusion-minimal `E_i ⊆ (∪F) \ F_i` meeting
/// every other member. Pairs `(F_i, E_i)` then satisfy the Bollobás
/// condition. Errors with [`Error::NoTransversal`] when some `F_j ⊆ F_i`
/// leaves nothing to hit.
///
/// Determinism: targets are processed by ascending `|F_j \ F_i|` (ties by
/// index), each unhit target contributes its least available element, and the
/// deletion pass minimalizes in reverse insertion order. The result is
/// minimal, not minimum.
pub fn minimal_transversals(family: &SetFamily) -> Result<Vec<FiniteSet>> {
    let sets = family.sets();
    let mut result = Vec::with_capacity(sets.len());
    for i in 0..sets.len() {
        let mut targets: Vec<(usize, FiniteSet)> = Vec::new();
        for (j, other) in sets.iter().enumerate() {
            if j != i {
                let hittable = other.difference(&sets[i]);
                if hittable.is_empty() {
                    return Err(Error::NoTransversal { i, j });
                }
                targets.push((j, hittable));
            }
        }
        targets.sort_by_key(|(j, h)| (h.len(), *j));

        let mut chosen: Vec<usize> = Vec::new();
        let mut element_set = FiniteSet::empty();
        for (_, hittable) in &targets {
            if hittable.intersection_len(&element_set) == 0 {
                let e = hittable.min_element().expect("nonempty by construction");
                chosen.push(e);
                element_set.insert(e)?;
            }
        }
        // deletion pass, newest insertions first
        for idx in (0..chosen.len()).rev() {
            let e = chosen[idx];
            element_set.remove(e);
            let still_hits = targets
                .iter()
                .all(|(_, hittable)| hittable.intersection_len(&element_set) > 0);
            if !still_hits {
                element_set.insert(e)?;
            }
        }
        result.push(element_set);
    }
    Ok(result)
}

/// The restriction `{F \ Y : Y ⊆ F ∈ family}`. Members not containing `Y`
/// are dropped; the map is injective on the rest, so no deduplication is
/// needed.
pub fn restrict_family(family: &SetFamily, y: &FiniteSet) -> Result<SetFamily> {
    let sets: Vec<FiniteSet> = family
        .sets()
        .iter()
        .filter(|f| y.is_subset_of(f))
        .map(|f| f.difference(y))
        .collect();
    let uniformity = family.uniformity().map(|m| m - y.len().min(m));
    SetFamily::new(family.universe(), sets, uniformity)
}

/// The pigeonhole counting step: when every member meets `x_set` in at least
/// `|X| − l` elements, some `Y ⊂ X` of size `|X| − l` has
/// `|family| <= |family_Y| · C(|X|, l)`. Returns whether such a `Y` exists
/// (it must; a false return means a bug in the restriction machinery).
pub fn pigeonhole_restriction_check(family: &SetFamily, x_set: &FiniteSet, l: usize) -> Result<bool> {
    if l > x_set.len() {
        return Err(Error::Domain(format!(
            "pigeonhole check needs l <= |X|, got l = {l}, |X| = {}",
            x_set.len()
        )));
    }
    for (i, f) in family.sets().iter().enumerate() {
        if f.intersection_len(x_set) + l < x_set.len() {
            return Err(Error::InvalidInput(format!(
                "member {i} meets X in fewer than |X| - l elements"
            )));
        }
    }
    let x_elems: Vec<usize> = x_set.iter().collect();
    let y_size = x_set.len() - l;
    let multiplier = binom(x_set.len() as u64, l as u64);
    let total = num_bigint::BigUint::from(family.len());
    let mut found = false;
    combinations_of(&x_elems, y_size, &mut |y_elems| {
        let y: FiniteSet = y_elems.iter().copied().collect();
        let restricted = restrict_family(family, &y).expect("restriction of a valid family");
        if num_bigint::BigUint::from(restricted.len()) * &multiplier >= total {
            found = true;
            false
        } else {
            true
        }
    });
    Ok(found)
}

/// The exact rational `Σ_j 1 / C(|A_j| + |B_j|, |B_j|)`. The system must
/// validate as kind `bollobas`; callers assert the sum is at most 1.
pub fn bollobas_sum(system: &SetPairSystem) -> Result<BigRational> {
    SetPairSystem::new(system.pairs().to_vec(), PairKind::Bollobas).validate()?;
    let mut sum = BigRational::zero();
    for (a, b) in system.pairs() {
        let denom = binom((a.len() + b.len()) as u64, b.len() as u64);
        sum += BigRational::new(BigInt::one(), BigInt::from(denom));
    }
    Ok(sum)
}

/// Checks the skew cross-intersecting conditions directly:
/// `A_i ∩ B_i = ∅` for all `i` and `A_i ∩ B_j ≠ ∅` for all `i < j`.
pub fn check_skew_cross_intersecting(system: &SetPairSystem) -> bool {
    SetPairSystem::new(system.pairs().to_vec(), PairKind::Skew)
        .validate()
        .is_ok()
}

/// Doubles `t` intersecting Bollobás pairs `(F_i, E_i)` into the `2t`-pair
/// skew system `(F_1, E_1), …, (F_t, E_t), (E_t, F_t), …, (E_1, F_1)`.
///
/// Requires the intersecting-Bollobás conditions (checked directly; the
/// declared kind tag is not trusted). The output always passes
/// [`check_skew_cross_intersecting`].
pub fn skew_double(system: &SetPairSystem) -> Result<SetPairSystem> {
    SetPairSystem::new(system.pairs().to_vec(), PairKind::IntersectingBollobas).validate()?;
    let t = system.len();
    let mut pairs = Vec::with_capacity(2 * t);
    pairs.extend(system.pairs().iter().cloned());
    for i in t + 1..=2 * t {
        let (f, e) = &system.pairs()[2 * t - i];
        pairs.push((e.clone(), f.clone()));
    }
    let doubled = SetPairSystem::new(pairs, PairKind::Skew);
    debug_assert!(check_skew_cross_intersecting(&doubled));
    Ok(doubled)
}
