//! Cross-module properties on seeded random instances: degree bounds,
//! conflict characterization, checker/oracle agreement, and design
//! structure.

use hypack::arith::binom;
use hypack::combi::each_combination;
use hypack::conditions::{
    check_beta, check_beta_any, check_naroski, check_rrt, check_ss_degree, check_ss_product,
    check_ss_size,
};
use hypack::designs::{
    construct_design, construct_sts, design_to_hypergraph, ConstructOutcome, DesignSpec,
    NotFoundReason,
};
use hypack::format::{parse_hypergraph, write_hypergraph};
use hypack::generate::{random_hypergraph, random_subset};
use hypack::hypergraph::{conflicts, Bijection, Hypergraph, VertexSet};
use hypack::solver::{brute_force_pack, switching_pack, switching_pack_auto, PackOutcome};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// (n, k, m, seed) recipe for a reproducible random hypergraph.
fn hg_recipe() -> impl Strategy<Value = (usize, usize, usize, u64)> {
    (3usize..=8, 1usize..=3, any::<u64>()).prop_flat_map(|(n, k, seed)| {
        let k = k.min(n);
        let cap = (binom(n, k).unwrap() as usize).min(8);
        (Just(n), Just(k), 0..=cap, Just(seed))
    })
}

fn build(n: usize, k: usize, m: usize, seed: u64) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_hypergraph(n, k, m, &mut rng).unwrap()
}

proptest! {
    #[test]
    fn degree_never_exceeds_max_degree((n, k, m, seed) in hg_recipe(), l_seed: u64) {
        let h = build(n, k, m, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(l_seed);
        let l = rng.random_range(1..=k);
        let u = random_subset(n, l, &mut rng);
        prop_assert!(h.degree(&u).unwrap() <= h.max_degree(l).unwrap());
    }

    #[test]
    fn conflicts_empty_iff_no_edge_maps_onto_edge(
        (n, k, m1, seed1) in hg_recipe(),
        m2_seed: u64,
        f_seed: u64,
    ) {
        let h1 = build(n, k, m1, seed1);
        let h2 = build(n, k, m1.min(5), m2_seed);
        let f = Bijection::random(n, &mut ChaCha8Rng::seed_from_u64(f_seed));
        let cs = conflicts(&h1, &h2, &f).unwrap();
        let any_hit = h1
            .edges()
            .iter()
            .any(|e| h2.contains_edge(&f.apply(e).unwrap()));
        prop_assert_eq!(cs.is_empty(), !any_hit);
        // and each reported conflict really is an H2 edge with an H1 preimage
        for c in &cs {
            prop_assert!(h2.contains_edge(c));
            prop_assert!(h1.contains_edge(&f.apply_inverse(c).unwrap()));
        }
    }

    #[test]
    fn apply_then_inverse_is_identity((n, _k, _m, seed) in hg_recipe(), l in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_subset(n, l.min(n), &mut rng);
        let f = Bijection::random(n, &mut rng);
        let image = f.apply(&u).unwrap();
        prop_assert_eq!(f.inverse().apply(&image).unwrap(), u.clone());
        prop_assert_eq!(f.apply_inverse(&image).unwrap(), u);
    }

    #[test]
    fn adding_an_edge_never_decreases_degree((n, k, m, seed) in hg_recipe(), u_seed: u64) {
        let h = build(n, k, m, seed);
        // first k-subset that is not yet an edge, if any
        let mut extra: Option<VertexSet> = None;
        each_combination(n, k, |idx| {
            let cand = VertexSet::new(idx.iter().map(|&i| i + 1).collect()).unwrap();
            if !h.contains_edge(&cand) {
                extra = Some(cand);
                return false;
            }
            true
        });
        if let Some(extra) = extra {
            let mut edges = h.edges().to_vec();
            edges.push(extra);
            let bigger = Hypergraph::new(n, k, edges).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(u_seed);
            let l = rng.random_range(1..=k);
            let u = random_subset(n, l, &mut rng);
            prop_assert!(bigger.degree(&u).unwrap() >= h.degree(&u).unwrap());
        }
    }

    #[test]
    fn bitmask_and_general_membership_agree((n, k, m, seed) in hg_recipe(), probe_seed: u64) {
        let h = build(n, k, m, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(probe_seed);
        for _ in 0..10 {
            let probe = random_subset(n, k, &mut rng);
            prop_assert_eq!(h.contains_edge(&probe), h.contains_edge_general(&probe));
        }
        // degree through the mask path equals a direct subset count
        let l = rng.random_range(1..=k);
        let u = random_subset(n, l, &mut rng);
        let direct = h.edges().iter().filter(|e| u.is_subset_of(e)).count();
        prop_assert_eq!(h.degree(&u).unwrap(), direct);
    }

    #[test]
    fn growing_a_pair_never_turns_failing_checks_passing(
        (n, k, m, seed) in hg_recipe(),
        seed2: u64,
    ) {
        prop_assume!(k >= 2);
        let h1 = build(n, k, m.max(1), seed);
        let h2 = build(n, k, m.max(1), seed2);
        let mut extra = None;
        each_combination(n, k, |idx| {
            let cand = VertexSet::new(idx.iter().map(|&i| i + 1).collect()).unwrap();
            if !h1.contains_edge(&cand) {
                extra = Some(cand);
                return false;
            }
            true
        });
        let Some(extra) = extra else { return Ok(()) };
        let mut edges = h1.edges().to_vec();
        edges.push(extra);
        let bigger = Hypergraph::new(n, k, edges).unwrap();

        let before_after = [
            (check_naroski(&h1, &h2).unwrap(), check_naroski(&bigger, &h2).unwrap()),
            (check_rrt(&h1, &h2).unwrap(), check_rrt(&bigger, &h2).unwrap()),
            (check_beta(&h1, &h2, 1).unwrap(), check_beta(&bigger, &h2, 1).unwrap()),
        ];
        for (before, after) in before_after {
            if !before.guarantees_packing {
                prop_assert!(!after.guarantees_packing, "{}", before.condition);
            }
            prop_assert!(after.lhs >= before.lhs);
            prop_assert_eq!(after.rhs, before.rhs);
        }
    }

    #[test]
    fn hypergraph_text_round_trips((n, k, m, seed) in hg_recipe()) {
        let h = build(n, k, m, seed);
        let (back, meta) = parse_hypergraph(&write_hypergraph(&h, None)).unwrap();
        prop_assert_eq!(back, h);
        prop_assert!(meta.is_none());
    }
}

/// Conditions invariant: whenever any checker guarantees packing on a
/// small pair, the exhaustive oracle finds one.
#[test]
fn guarantees_are_honored_by_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let mut guaranteed = 0u32;
    for _ in 0..4000 {
        let n = rng.random_range(4..=8usize);
        let k = rng.random_range(2..=3.min(n));
        let cap = (binom(n, k).unwrap() as usize).min(8);
        let h1 = random_hypergraph(n, k, rng.random_range(1..=cap), &mut rng).unwrap();
        let h2 = random_hypergraph(n, k, rng.random_range(1..=cap), &mut rng).unwrap();

        let mut reports = vec![
            check_naroski(&h1, &h2).unwrap(),
            check_rrt(&h1, &h2).unwrap(),
            check_beta_any(&h1, &h2).unwrap(),
        ];
        if k == 2 {
            reports.push(check_ss_product(&h1, &h2).unwrap());
            reports.push(check_ss_degree(&h1, &h2).unwrap());
            reports.push(check_ss_size(&h1, &h2).unwrap());
        }
        if reports.iter().any(|r| r.guarantees_packing) {
            guaranteed += 1;
            let r = brute_force_pack(&h1, &h2, 50_000_000).unwrap();
            assert!(
                matches!(r.outcome, PackOutcome::Packed(_)),
                "a guarantee held but the oracle found no packing (n={n} k={k})"
            );
        }
    }
    assert!(guaranteed > 500, "sample too thin: {guaranteed}");
}

/// Oracle consistency: the switching solver never returns Packed on a pair
/// the oracle proved non-packing, and every Packed result validates.
#[test]
fn solvers_never_disagree() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let mut proven = 0u32;
    for _ in 0..300 {
        let n = rng.random_range(3..=6usize);
        let k = rng.random_range(2..=3.min(n));
        let cap = binom(n, k).unwrap() as usize;
        let h1 = random_hypergraph(n, k, rng.random_range(1..=cap), &mut rng).unwrap();
        let h2 = random_hypergraph(n, k, rng.random_range(1..=cap), &mut rng).unwrap();
        let oracle = brute_force_pack(&h1, &h2, 100_000_000).unwrap();
        let descent = switching_pack_auto(&h1, &h2, 5).unwrap();
        match (&oracle.outcome, &descent.outcome) {
            (PackOutcome::NoPackingProven, PackOutcome::Packed(_)) => {
                panic!("switching packed a proven non-packing pair (n={n} k={k})")
            }
            (_, PackOutcome::Packed(f)) => {
                assert!(conflicts(&h1, &h2, f).unwrap().is_empty());
            }
            _ => {}
        }
        if matches!(oracle.outcome, PackOutcome::NoPackingProven) {
            proven += 1;
        }
    }
    assert!(proven > 20, "sample never hit non-packing pairs: {proven}");
}

/// Pairs where the product condition passes but every β fails can still be
/// packed by the descent through restarts; any such success must agree
/// with the oracle.
#[test]
fn descent_can_pack_beyond_the_beta_condition() {
    let mut rng = ChaCha8Rng::seed_from_u64(31337);
    let mut eligible = 0u32;
    let mut packed_by_descent = 0u32;
    while eligible < 60 {
        let n = rng.random_range(4..=7usize);
        let k = rng.random_range(2..=3.min(n));
        let cap = binom(n, k).unwrap() as usize;
        let h1 = random_hypergraph(n, k, rng.random_range(2..=cap), &mut rng).unwrap();
        let h2 = random_hypergraph(n, k, rng.random_range(2..=cap), &mut rng).unwrap();
        let naroski = check_naroski(&h1, &h2).unwrap();
        let beta_any = check_beta_any(&h1, &h2).unwrap();
        if !naroski.guarantees_packing || beta_any.guarantees_packing {
            continue;
        }
        eligible += 1;
        let descent = switching_pack_auto(&h1, &h2, 99).unwrap();
        if let PackOutcome::Packed(f) = &descent.outcome {
            packed_by_descent += 1;
            assert!(conflicts(&h1, &h2, f).unwrap().is_empty());
            let oracle = brute_force_pack(&h1, &h2, 100_000_000).unwrap();
            assert!(matches!(oracle.outcome, PackOutcome::Packed(_)));
        }
    }
    assert!(
        packed_by_descent > 0,
        "restarts never packed a beyond-condition pair"
    );
}

/// Switching descent length: with no restart, steps are bounded by the
/// initial conflict count, itself at most min(|E1|, |E2|).
#[test]
fn descent_length_is_bounded_by_the_smaller_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..500 {
        let n = rng.random_range(5..=8usize);
        let k = rng.random_range(2..=3.min(n));
        let cap = (binom(n, k).unwrap() as usize).min(9);
        let h1 = random_hypergraph(n, k, rng.random_range(1..=cap), &mut rng).unwrap();
        let h2 = random_hypergraph(n, k, rng.random_range(1..=cap), &mut rng).unwrap();
        let f0 = Bijection::identity(n);
        let initial = conflicts(&h1, &h2, &f0).unwrap().len();
        let r = switching_pack(&h1, &h2, 1, &f0, trial).unwrap();
        if r.stats.restarts == 0 && matches!(r.outcome, PackOutcome::Packed(_)) {
            assert!(r.stats.switches_made as usize <= initial);
            assert!(initial <= h1.edge_count().min(h2.edge_count()));
        }
    }
}

/// Design invariants: verified designs expose Δ_t = λ as hypergraphs and
/// their block counts follow the double-counting formula; divisibility
/// failures return without searching.
#[test]
fn design_structure_invariants() {
    let specs = [
        DesignSpec::new(2, 7, 3, 1).unwrap(),
        DesignSpec::new(2, 9, 3, 1).unwrap(),
        DesignSpec::new(3, 8, 4, 1).unwrap(),
        DesignSpec::new(2, 6, 3, 2).unwrap(),
    ];
    for spec in specs {
        let ConstructOutcome::Found { design, .. } = construct_design(&spec, 10_000_000).unwrap()
        else {
            panic!("{spec} should be constructible");
        };
        let h = design_to_hypergraph(&design);
        assert_eq!(h.max_degree(spec.t).unwrap(), spec.lambda, "{spec}");
        let forced = spec.block_count().unwrap().expect("divisible");
        assert_eq!(design.block_count() as u128, forced, "{spec}");
    }
    for n in (3..=31).filter(|n| n % 6 == 1 || n % 6 == 3) {
        let d = construct_sts(n).unwrap();
        let h = design_to_hypergraph(&d);
        assert_eq!(h.max_degree(2).unwrap(), 1, "STS({n})");
    }
    match construct_design(&DesignSpec::new(2, 8, 3, 1).unwrap(), 10).unwrap() {
        ConstructOutcome::NotFound(NotFoundReason::Divisibility(_)) => {}
        other => panic!("divisibility failure must not search: {other:?}"),
    }
}
