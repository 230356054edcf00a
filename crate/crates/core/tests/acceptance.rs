//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture` to see every line.
//!
//! Criterion 12 (byte-identical CLI output across reruns and thread counts)
//! lives with the binary in the `reachset-cli` crate's own `acceptance`
//! test target.

use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use reachset::bounds::{binom, bounds_report};
use reachset::ellem::{check_row_chain, ellem_analyze, verify_ellem_outcome, EllemOutcome, EllemParams};
use reachset::housing::{
    f_oracle, for_each_canonical_profile, random_profile, reachable_family_by_one_poms,
    reachable_family_by_permutations, FSearchMode, PreferenceProfile,
};
use reachset::intersecting::{ak, conjecture_ak_search, conjecture_tuz_search, fi_family_scan, j_oracle};
use reachset::properties::{
    g_oracle, h_construction, h_oracle, has_property_p, has_property_q, union_bound_check, CheckMode,
};
use reachset::setpairs::{
    bollobas_sum, check_skew_cross_intersecting, is_disjointly_representable, minimal_transversals,
    skew_double, PairKind, SetPairSystem,
};
use reachset::{BigCount, FiniteSet, GroundSet, SearchBudget, SetFamily};

fn report(criterion: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {criterion:2} [{verdict}] {name}: {detail}");
    assert!(pass, "criterion {criterion} ({name}) failed: {detail}");
}

/// The seeded random profiles shared by criteria 1 and 2: 10^4 profiles with
/// m cycling through {4, 5, 6}. Universes are m + 2 for m in {4, 5} and 7
/// for m = 6, so every reachable family fits the exact property-P cap.
fn lemma1_random_profiles() -> Vec<PreferenceProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0001);
    (0..10_000)
        .map(|i| {
            let m = 4 + (i % 3);
            let u = if m == 6 { 7 } else { m + 2 };
            random_profile(m, GroundSet::new(u).unwrap(), m, &mut rng)
        })
        .collect()
}

fn canonical_reachable_families() -> Vec<SetFamily> {
    let mut families = Vec::new();
    for m in 1..=3usize {
        for_each_canonical_profile(m, m * m, &mut |p| {
            families.push(reachable_family_by_permutations(p).unwrap().family);
        })
        .unwrap();
    }
    families
}

#[test]
fn criterion_01_reachable_enumerators_agree() {
    let mut checked = 0usize;
    for m in 1..=3usize {
        for_each_canonical_profile(m, m * m, &mut |p| {
            let by_perm = reachable_family_by_permutations(p).unwrap().family;
            let by_pom = reachable_family_by_one_poms(p).unwrap().family;
            assert_eq!(by_perm, by_pom, "enumerator mismatch on {:?}", p.rows());
            checked += 1;
        })
        .unwrap();
    }
    let canonical = checked;

    let profiles = lemma1_random_profiles();
    let mismatches: usize = profiles
        .par_iter()
        .map(|p| {
            let by_perm = reachable_family_by_permutations(p).unwrap().family;
            let by_pom = reachable_family_by_one_poms(p).unwrap().family;
            usize::from(by_perm != by_pom)
        })
        .sum();
    report(
        1,
        "reachable-set enumerators agree",
        mismatches == 0,
        &format!(
            "{canonical} canonical profiles (m <= 3) + {} random profiles (m in 4..6), {mismatches} mismatches",
            profiles.len()
        ),
    );
}

#[test]
fn criterion_02_reachable_families_have_property_p() {
    let mut families = canonical_reachable_families();
    let random: Vec<SetFamily> = lemma1_random_profiles()
        .par_iter()
        .map(|p| reachable_family_by_permutations(p).unwrap().family)
        .collect();
    families.extend(random);
    let failures: usize = families
        .par_iter()
        .map(|fam| {
            let m = fam.uniformity().expect("reachable families are uniform");
            let verdict = has_property_p(fam, m, &CheckMode::Exact).expect("size under the exact cap");
            usize::from(!verdict.holds)
        })
        .sum();
    report(
        2,
        "reachable families satisfy property P",
        failures == 0,
        &format!("{} families checked exactly, {failures} violations", families.len()),
    );
}

#[test]
fn criterion_03_small_value_chain() {
    let f1 = f_oracle(1, FSearchMode::Exhaustive).unwrap();
    let f2 = f_oracle(2, FSearchMode::Exhaustive).unwrap();
    let f3 = f_oracle(3, FSearchMode::Exhaustive).unwrap();
    let u5 = GroundSet::new(5).unwrap();
    let budget = SearchBudget::unlimited();
    let g2 = g_oracle(2, u5, &budget).unwrap();
    let h2 = h_oracle(2, u5, &budget).unwrap();
    let j2 = j_oracle(2, u5, &budget).unwrap();
    let thm_ii_2 = bounds_report(2).unwrap().thm_ii;

    let pass = f1.value == 1
        && f1.exact
        && f2.value == 2
        && f2.exact
        && (2..=6).contains(&f3.value)
        && g2.value == 3
        && h2.value == 3
        && j2.value == 3
        && j2.value >= g2.value
        && g2.exact
        && h2.exact
        && j2.exact
        && thm_ii_2 == BigCount::from(3u32)
        && binom(3, 2) == BigCount::from(3u32);
    report(
        3,
        "small-value chain",
        pass,
        &format!(
            "f(1)={} f(2)={} g(2)={} h(2)={} j(2)={} = C(3,2)={}; recorded artifact f(3)={} (exhaustive)",
            f1.value, f2.value, g2.value, h2.value, j2.value, thm_ii_2, f3.value
        ),
    );
}

#[test]
fn criterion_04_h_construction_has_property_q() {
    let mut detail = String::new();
    let mut pass = true;
    for m in 1..=8usize {
        let fam = h_construction(m).unwrap();
        let expected = binom((3 * m / 2) as u64, m as u64);
        let size_ok = BigCount::from(fam.len()) == expected;
        let verdict = if m <= 4 {
            has_property_q(&fam, m, &CheckMode::Exact).unwrap()
        } else {
            has_property_q(&fam, m, &CheckMode::Refute { samples: 100_000, seed: 0x5EED_0004 }).unwrap()
        };
        pass &= size_ok && verdict.holds;
        detail.push_str(&format!("m={m}:|F|={} ", fam.len()));
    }
    report(
        4,
        "h construction is Q and has the exact size",
        pass,
        &format!("exact Q for m <= 4, refute-mode Q (1e5 tuples) for m <= 8; {detail}"),
    );
}

#[test]
fn criterion_05_union_bound_on_q_certified_families() {
    // every family certified Q in exact mode anywhere in this suite
    let mut certified: Vec<(SetFamily, usize)> = Vec::new();
    for m in 1..=4usize {
        certified.push((h_construction(m).unwrap(), m));
    }
    let budget = SearchBudget::unlimited();
    for m in 2..=3usize {
        let u5 = GroundSet::new(5).unwrap();
        certified.push((h_oracle(m, u5, &budget).unwrap().witness, m));
        certified.push((g_oracle(m, u5, &budget).unwrap().witness, m));
    }
    for fam in canonical_reachable_families() {
        if fam.is_empty() {
            continue;
        }
        certified.push((fam.clone(), fam.uniformity().unwrap()));
    }
    let mut checked = 0usize;
    let mut pass = true;
    for (fam, m) in &certified {
        if fam.is_empty() {
            continue;
        }
        let q = has_property_q(fam, *m, &CheckMode::Exact).unwrap();
        assert!(q.holds, "family expected to be Q-certified");
        pass &= union_bound_check(fam, *m);
        checked += 1;
    }
    report(
        5,
        "union bound on Q-certified families",
        pass,
        &format!("{checked} exact-Q families all satisfy |union| <= m(ln m + 1) + 1e-9"),
    );
}

/// Seeded m-uniform families with no m+1 disjointly representable members.
/// When `star` is set every member contains house 1, making the family
/// pairwise intersecting (the hypothesis of the doubling).
fn random_dr_free_family(rng: &mut ChaCha8Rng, star: bool) -> (SetFamily, usize) {
    loop {
        let m = if star { rng.random_range(2..=4) } else { rng.random_range(1..=4) };
        let n = if m == 1 { 1 } else { rng.random_range(2..=6) };
        let u = rng.random_range(2 * m..=2 * m + 2);
        let universe = GroundSet::new(u).unwrap();
        let mut sets: Vec<FiniteSet> = Vec::new();
        for _ in 0..3 * n {
            let set: FiniteSet = if star {
                let mut s: Vec<usize> = rand::seq::index::sample(rng, u - 1, m - 1)
                    .into_iter()
                    .map(|i| i + 2)
                    .collect();
                s.push(1);
                s.into_iter().collect()
            } else {
                rand::seq::index::sample(rng, u, m).into_iter().map(|i| i + 1).collect()
            };
            if !sets.contains(&set) {
                sets.push(set);
            }
            if sets.len() == n {
                break;
            }
        }
        if sets.len() < n {
            continue;
        }
        let family = SetFamily::new(universe, sets, Some(m)).unwrap();
        // reject families containing m+1 disjointly representable members
        let has_dr = subsets_of_size(family.len(), m + 1)
            .into_iter()
            .any(|tuple| {
                let sets: Vec<FiniteSet> = tuple.iter().map(|&i| family.sets()[i].clone()).collect();
                is_disjointly_representable(&sets).is_some()
            });
        if !has_dr {
            return (family, m);
        }
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

#[test]
fn criterion_06_transversal_bollobas_and_doubling() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0006);
    let mut doubled_count = 0usize;
    let mut family_count = 0usize;
    let mut pass = true;
    // 1000 DR-free families for the transversal machinery, then more star
    // families until 1000 intersecting systems have been doubled
    for trial in 0.. {
        let enough_families = family_count >= 1000;
        if (enough_families && doubled_count >= 1000) || !pass {
            break;
        }
        let star = enough_families || trial % 2 == 1;
        let (family, m) = random_dr_free_family(&mut rng, star);
        let transversals = minimal_transversals(&family).unwrap();
        for e in &transversals {
            pass &= e.len() <= m;
        }
        let pairs: Vec<(FiniteSet, FiniteSet)> =
            family.sets().iter().cloned().zip(transversals.iter().cloned()).collect();
        if !enough_families {
            let system = SetPairSystem::new(pairs.clone(), PairKind::Bollobas);
            let sum = bollobas_sum(&system).unwrap();
            pass &= sum <= BigRational::one();
            family_count += 1;
        }
        if star && doubled_count < 1000 {
            let system = SetPairSystem::new(pairs, PairKind::IntersectingBollobas);
            let doubled = skew_double(&system).unwrap();
            pass &= doubled.len() == 2 * family.len();
            pass &= check_skew_cross_intersecting(&doubled);
            doubled_count += 1;
        }
    }
    report(
        6,
        "transversal / Bollobas machinery",
        pass,
        &format!("{family_count} DR-free families: |E_i| <= m, exact sum <= 1; {doubled_count} doublings pass the skew check"),
    );
}

#[test]
fn criterion_07_dr_free_oracle_respects_frankl_pach_bound() {
    let budget = SearchBudget::unlimited();
    let u6 = GroundSet::new(6).unwrap();
    let mut detail = String::new();
    let mut pass = true;
    for (r, k) in [(1usize, 2usize), (2, 2), (2, 3)] {
        let result = reachset::setpairs::max_dr_free_family_oracle(r, k, u6, &budget).unwrap();
        let bound = binom((r + k - 1) as u64, (k - 1) as u64);
        pass &= result.exact && BigCount::from(result.value) <= bound;
        detail.push_str(&format!("(r={r},k={k}): value {} <= C({},{})={} ", result.value, r + k - 1, k - 1, bound));
    }
    report(7, "max DR-free family values under the bound", pass, &detail);
}

#[test]
fn criterion_08_ak_matches_clique_oracle() {
    let mut crosschecked = 0usize;
    for n in 1..=16u64 {
        for k in 1..=n {
            if binom(n, k) > BigCount::from(70u32) {
                continue;
            }
            for t in 1..=k {
                // crosscheck=true runs the clique comparison internally and
                // errors on any disagreement
                ak(n, k, t, true).unwrap();
                crosschecked += 1;
            }
        }
    }
    let mut ekr = 0usize;
    let mut pass = true;
    for n in 2..=10u64 {
        for k in 1..=n / 2 {
            pass &= ak(n, k, 1, true).unwrap() == binom(n - 1, k - 1);
            ekr += 1;
        }
    }
    report(
        8,
        "AK closed form against brute force",
        pass,
        &format!("{crosschecked} (n,k,t) triples clique-crosschecked; {ekr} EKR identities ak(n,k,1)=C(n-1,k-1)"),
    );
}

#[test]
fn criterion_09_fi_scan_argmax_near_m_over_8() {
    let mut lines = Vec::new();
    let mut pass = true;
    for m in [8u64, 16, 24, 32, 40] {
        let scan = fi_family_scan(m).unwrap();
        let target = m as f64 / 8.0;
        let ok = (scan.argmax as f64 - target).abs() <= 2.0;
        pass &= ok;
        lines.push(format!("m={m}: argmax={} vs m/8={} ({})", scan.argmax, target, if ok { "ok" } else { "outside ±2" }));
    }
    report(
        9,
        "F_i scan argmax within ±2 of m/8",
        pass,
        &format!(
            "{}; the exact argmax sits at m/4 for even m (the profile is symmetric around it), so the ±2 window \
             around m/8 holds only for m <= 16; review of the stated range convention required",
            lines.join("; ")
        ),
    );
}

#[test]
fn criterion_10_conjecture_searches_find_no_counterexample() {
    let budget = SearchBudget::unlimited();
    let mut detail = String::new();
    let mut pass = true;
    for (a, b) in [(1usize, 1usize), (1, 2), (2, 2)] {
        let u = GroundSet::new(a + b + 1).unwrap();
        let tuz = conjecture_tuz_search(a, b, u, &budget).unwrap();
        pass &= tuz.exact && !tuz.counterexample;
        pass &= BigCount::from(tuz.max_found) <= tuz.known_bound;
        if a == b {
            pass &= BigCount::from(tuz.max_found) <= binom((2 * a - 1) as u64, (a - 1) as u64);
        }
        detail.push_str(&format!("tuz({a},{b})={} ", tuz.max_found));
        for t in 1..=2usize.min(a) {
            let akr = conjecture_ak_search(a, b, t, u, &budget).unwrap();
            pass &= akr.exact && !akr.counterexample;
            pass &= BigCount::from(akr.max_found) <= akr.known_bound;
            detail.push_str(&format!("ak({a},{b},t={t})={} ", akr.max_found));
        }
    }
    report(
        10,
        "conjecture searches stay under both bounds",
        pass,
        &format!("exhaustive over u = a+b+1, no counterexample: {detail}"),
    );
}

/// Profiles for the round-analysis criterion: a third uniform, a third with a
/// constant first column, a third with first/second columns drawn from small
/// pools, so both outcome variants and deeper chains occur.
fn ellem_profile(rng: &mut ChaCha8Rng, m: usize, shape: usize) -> PreferenceProfile {
    let u = m + 3;
    let universe = GroundSet::new(u).unwrap();
    match shape {
        0 => random_profile(m, universe, m, rng),
        1 => {
            let first = rng.random_range(1..=u);
            let rows = (0..m)
                .map(|_| {
                    let mut row = vec![first];
                    let mut rest: Vec<usize> = rand::seq::index::sample(rng, u, m + 1)
                        .into_iter()
                        .map(|i| i + 1)
                        .filter(|&h| h != first)
                        .collect();
                    rest.truncate(m - 1);
                    row.extend(rest);
                    row
                })
                .collect();
            PreferenceProfile::new(universe, rows).unwrap()
        }
        _ => {
            let rows = (0..m)
                .map(|i| {
                    let first = 1 + (i % 2);
                    let second = 3 + rng.random_range(0..2usize);
                    let mut row = vec![first, second];
                    for h in 1..=u {
                        if row.len() == m {
                            break;
                        }
                        if !row.contains(&h) {
                            row.push(h);
                        }
                    }
                    row
                })
                .collect();
            PreferenceProfile::new(universe, rows).unwrap()
        }
    }
}

#[test]
fn criterion_11_round_analysis_verified_against_enumeration() {
    let cases: Vec<(usize, usize, usize, usize)> = (0..1000usize)
        .map(|i| {
            let m = 4 + (i % 5);
            let l = 2 + (i / 5) % 2;
            let depth = 1 + (i / 10) % 2;
            (i, m, l, depth)
        })
        .collect();
    let failures: usize = cases
        .par_iter()
        .map(|&(i, m, l, depth)| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_000B ^ (i as u64) << 8);
            let profile = ellem_profile(&mut rng, m, i % 3);
            let params = EllemParams { l, depth };
            let outcome = ellem_analyze(&profile, &params).unwrap();
            let verified = verify_ellem_outcome(&profile, &outcome).unwrap();
            let chain_ok = match &outcome {
                EllemOutcome::CommonCore { chain, .. } | EllemOutcome::LargeX { chain, .. } => {
                    check_row_chain(&profile, &params, chain).is_ok()
                }
                EllemOutcome::Vacuous { .. } => true,
            };
            usize::from(!(verified && chain_ok))
        })
        .sum();
    report(
        11,
        "round analysis outcomes verified",
        failures == 0,
        &format!("1000 seeded profiles (m in 4..8, L in {{2,3}}, depth in {{1,2}}), {failures} failures"),
    );
}
