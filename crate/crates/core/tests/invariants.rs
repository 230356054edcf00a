//! Cross-module invariants beyond the acceptance criteria: identities,
//! monotonicity and consistency checks between independent routes.

use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use reachset::bounds::{binom, bounds_report};
use reachset::housing::{
    f_oracle, find_blocking_coalition, for_each_canonical_profile, greedy_matching, is_one_pom,
    random_profile, reachable_family_by_one_poms, reachable_family_by_permutations, FSearchMode,
    PreferenceProfile,
};
use reachset::properties::{g_oracle, h_oracle, has_property_p, has_property_q, CheckMode, PropertyKind};
use reachset::setpairs::is_disjointly_representable;
use reachset::{BigCount, FiniteSet, GroundSet, SearchBudget, SetFamily};

proptest! {
    #[test]
    fn pascal_identity(n in 1u64..=128, k_seed in 0u64..=128) {
        let k = 1 + k_seed % n;
        prop_assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
    }

    #[test]
    fn binomial_symmetry(n in 0u64..=100, k_seed in 0u64..=100) {
        let k = k_seed % (n + 1);
        prop_assert_eq!(binom(n, k), binom(n, n - k));
    }
}

#[test]
fn lemma1_equivalence_exhaustive_m4_small_universe() {
    // the full canonical space at m = 4 over 5 labels (295240 profiles);
    // wider universes are covered by the random sweep in the acceptance suite
    let mut profiles = Vec::new();
    for_each_canonical_profile(4, 5, &mut |p| profiles.push(p.clone())).unwrap();
    assert_eq!(profiles.len(), 295_240);
    let mismatches: usize = profiles
        .par_iter()
        .map(|p| {
            let by_perm = reachable_family_by_permutations(p).unwrap().family;
            let by_pom = reachable_family_by_one_poms(p).unwrap().family;
            usize::from(by_perm != by_pom)
        })
        .sum();
    assert_eq!(mismatches, 0);
}

#[test]
fn greedy_outputs_are_one_pom_and_unblocked() {
    for m in 1..=3usize {
        let orders = all_permutations(m);
        for_each_canonical_profile(m, m * m, &mut |p| {
            for order in &orders {
                let tau = greedy_matching(p, order);
                assert!(is_one_pom(p, &tau));
                assert!(find_blocking_coalition(p, &tau, m).is_none());
            }
        })
        .unwrap();
    }
    // random m = 4 profiles, all 24 orders each
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_1001);
    let universe = GroundSet::new(8).unwrap();
    for _ in 0..200 {
        let p = random_profile(4, universe, 4, &mut rng);
        for order in all_permutations(4) {
            let tau = greedy_matching(&p, &order);
            assert!(is_one_pom(&p, &tau));
            assert!(find_blocking_coalition(&p, &tau, 4).is_none());
        }
    }
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..m).collect();
    fn rec(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, out);
            items.swap(k, i);
        }
    }
    rec(&mut items, 0, &mut out);
    out
}

/// Appends a buyer whose top choice is a fresh house: the new buyer always
/// takes it and nobody else ever reaches it, so the reachable family is the
/// old one with the fresh house added to every member.
fn extend_with_fresh_buyer(profile: &PreferenceProfile) -> PreferenceProfile {
    let m = profile.m();
    let fresh = profile.universe().size() + 1;
    let universe = GroundSet::new(fresh).unwrap();
    let mut rows: Vec<Vec<usize>> = profile
        .rows()
        .iter()
        .map(|r| {
            let mut row = r.clone();
            row.push(fresh);
            row
        })
        .collect();
    let mut new_row = vec![fresh];
    new_row.extend(profile.rows()[0].iter().copied().take(m));
    rows.push(new_row);
    PreferenceProfile::new(universe, rows).unwrap()
}

#[test]
fn f_oracle_monotone_via_fresh_buyer() {
    for m in 1..=2usize {
        let smaller = f_oracle(m, FSearchMode::Exhaustive).unwrap();
        let larger = f_oracle(m + 1, FSearchMode::Exhaustive).unwrap();
        let extended = extend_with_fresh_buyer(&smaller.witness);
        let extended_count = reachable_family_by_permutations(&extended).unwrap().family.len();
        assert_eq!(extended_count, smaller.value, "fresh buyer preserves the family size");
        assert!(larger.value >= smaller.value);
    }
}

#[test]
fn f3_value_and_witness_frozen() {
    // frozen from two independent exhaustive runs of the canonical space
    let r = f_oracle(3, FSearchMode::Exhaustive).unwrap();
    assert_eq!(r.value, 3);
    assert!(r.exact);
    assert_eq!(r.witness.rows(), &[vec![1, 2, 3], vec![1, 2, 4], vec![1, 2, 5]]);
}

#[test]
fn reachable_family_size_respects_both_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_1002);
    for m in 1..=6usize {
        let factorial: usize = (1..=m).product();
        let thm_ii = bounds_report(m as u64).unwrap().thm_ii;
        let universe = GroundSet::new(m + 3).unwrap();
        for _ in 0..100 {
            let p = random_profile(m, universe, m, &mut rng);
            let family = reachable_family_by_permutations(&p).unwrap().family;
            assert!(family.len() <= factorial);
            assert!(BigCount::from(family.len()) <= thm_ii);
        }
    }
}

#[test]
fn value_chain_at_m3() {
    // f(3) <= g(3) <= h(3) <= C(5,3); g and h are exhaustive over [5]
    // because property Q confines any family of three or more members to a
    // five-element union
    let budget = SearchBudget::unlimited();
    let u5 = GroundSet::new(5).unwrap();
    let f3 = f_oracle(3, FSearchMode::Exhaustive).unwrap().value;
    let g3 = g_oracle(3, u5, &budget).unwrap();
    let h3 = h_oracle(3, u5, &budget).unwrap();
    assert!(g3.exact && h3.exact);
    assert_eq!((f3, g3.value, h3.value), (3, 4, 4));
    assert!(BigCount::from(h3.value) <= binom(5, 3));
    let prop_lower = bounds_report(3).unwrap().prop_lower;
    assert_eq!(BigCount::from(h3.value), prop_lower, "the construction is optimal at m = 3");
}

#[test]
fn dr_presence_matches_p_instance_beyond_m() {
    // for k > m the property-P instance bound is ⌊m/k⌋ = 0, so a tuple
    // violates it exactly when it is disjointly representable
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_1003);
    for _ in 0..500 {
        let m = rng.random_range(1..=4usize);
        let k = m + 1 + rng.random_range(0..2usize);
        let u = rng.random_range(2 * m..=3 * m + 1);
        let mut sets = Vec::new();
        for _ in 0..k {
            let s: FiniteSet = rand::seq::index::sample(&mut rng, u, m).into_iter().map(|i| i + 1).collect();
            if !sets.contains(&s) {
                sets.push(s);
            }
        }
        if sets.len() < k {
            continue;
        }
        let dr = is_disjointly_representable(&sets).is_some();
        let violates = sets.iter().enumerate().all(|(j, s)| {
            let mut others = FiniteSet::empty();
            for (i, t) in sets.iter().enumerate() {
                if i != j {
                    others.union_with(t);
                }
            }
            !s.difference(&others).is_empty()
        });
        assert_eq!(dr, violates);
    }
}

#[test]
fn p_implies_q_and_heredity_on_random_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_1004);
    let mut p_holds_count = 0usize;
    for _ in 0..300 {
        let m = rng.random_range(2..=4usize);
        let n = rng.random_range(2..=6usize);
        let u = rng.random_range(m + 1..=2 * m + 1);
        let mut sets = Vec::new();
        for _ in 0..3 * n {
            let s: FiniteSet = rand::seq::index::sample(&mut rng, u, m).into_iter().map(|i| i + 1).collect();
            if !sets.contains(&s) {
                sets.push(s);
            }
            if sets.len() == n {
                break;
            }
        }
        let Ok(fam) = SetFamily::new(GroundSet::new(u).unwrap(), sets, Some(m)) else {
            continue;
        };
        let p = has_property_p(&fam, m, &CheckMode::Exact).unwrap();
        let q = has_property_q(&fam, m, &CheckMode::Exact).unwrap();
        if p.holds {
            p_holds_count += 1;
            assert!(q.holds, "P implies Q on {fam}");
        }
        // heredity: a random subfamily of a passing family passes
        for (verdict, kind) in [(&p, PropertyKind::P), (&q, PropertyKind::Q)] {
            if verdict.holds && fam.len() >= 2 {
                let keep = rng.random_range(1..fam.len());
                let sub: Vec<FiniteSet> = fam.sets()[..keep].to_vec();
                let sub = SetFamily::new(fam.universe(), sub, Some(m)).unwrap();
                let sub_verdict = match kind {
                    PropertyKind::P => has_property_p(&sub, m, &CheckMode::Exact).unwrap(),
                    PropertyKind::Q => has_property_q(&sub, m, &CheckMode::Exact).unwrap(),
                };
                assert!(sub_verdict.holds, "heredity violated for {kind:?}");
            }
        }
    }
    assert!(p_holds_count > 0, "the generator never produced a P family");
}

#[test]
fn refute_mode_agrees_with_exact_on_small_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_1005);
    for trial in 0..200usize {
        let m = rng.random_range(2..=3usize);
        let n = rng.random_range(2..=5usize);
        let u = rng.random_range(m + 1..=2 * m + 1);
        let mut sets = Vec::new();
        for _ in 0..3 * n {
            let s: FiniteSet = rand::seq::index::sample(&mut rng, u, m).into_iter().map(|i| i + 1).collect();
            if !sets.contains(&s) {
                sets.push(s);
            }
            if sets.len() == n {
                break;
            }
        }
        let Ok(fam) = SetFamily::new(GroundSet::new(u).unwrap(), sets, Some(m)) else {
            continue;
        };
        let refute = CheckMode::Refute { samples: 2000, seed: trial as u64 };
        // exact "fails" must be found by refute mode on these tiny families
        // (every tuple size is inside the exhaustive sweep); exact "holds"
        // must never be contradicted
        let exact_p = has_property_p(&fam, m, &CheckMode::Exact).unwrap().holds;
        let refute_p = has_property_p(&fam, m, &refute).unwrap().holds;
        assert_eq!(exact_p, refute_p);
        let exact_q = has_property_q(&fam, m, &CheckMode::Exact).unwrap().holds;
        let refute_q = has_property_q(&fam, m, &refute).unwrap().holds;
        assert_eq!(exact_q, refute_q);
    }
}
