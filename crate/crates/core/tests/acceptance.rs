//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `--nocapture`). Every numeric comparison is
//! an exact rational equality or inequality; there are no tolerances.

mod common;

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::Instant;

use common::exhaustive_tiling_number;
use homtile_core::bounds::{
    check_collapsed_constraint, check_median_hypothesis, greedy_clique_in_l, intersection_bound,
    min_cover_clique, CollapsedCheck, GreedyOutcome, MedianHypothesis,
};
use homtile_core::constructions::{
    audit_extremal_tiling, audit_k333_counterexample, build_extremal_graph,
    build_k333_counterexample, random_graph, standard_patterns, ExtremalSpec,
};
use homtile_core::graph::{cycle_graph, degree_profile, degree_threshold, Graph, Pattern};
use homtile_core::hom::{brute_force_homomorphisms, count_homomorphisms};
use homtile_core::rat::{int, rat, Rat};
use homtile_core::tiling::{
    check_cover, check_tiling, fractional_cover_number, fractional_tiling_number,
    integral_tiling_number, verify_duality, CoverCheck, Limits, TilingCheck,
};

fn criterion<F>(number: u32, title: &str, body: F)
where
    F: FnOnce() + UnwindSafe,
{
    let start = Instant::now();
    let result = catch_unwind(body);
    let verdict = if result.is_ok() { "PASS" } else { "FAIL" };
    println!(
        "criterion {number} ({title}): {verdict} [{:.1}s]",
        start.elapsed().as_secs_f64()
    );
    if let Err(payload) = result {
        resume_unwind(payload);
    }
}

/// The random-host corpus shared by criteria 1, 2 and 7: four patterns,
/// three edge probabilities, three sizes, seven seeds = 252 instances.
fn duality_corpus() -> Vec<(String, Pattern, Graph)> {
    let patterns = ["K2", "P3", "K3", "C4"];
    let probs = [rat(1, 4), rat(1, 2), rat(3, 4)];
    let sizes = [6usize, 8, 10];
    let mut corpus = Vec::new();
    for (pi, name) in patterns.iter().enumerate() {
        let pattern = standard_patterns(name).unwrap();
        for (qi, p) in probs.iter().enumerate() {
            for (ni, &n) in sizes.iter().enumerate() {
                for seed in 0..7u64 {
                    let mix = seed * 1009 + (pi as u64) * 131 + (qi as u64) * 17 + ni as u64;
                    let g = random_graph(n, p, mix).unwrap();
                    let id = format!("{name}-n{n}-p{pi}{qi}-s{seed}");
                    corpus.push((id, pattern.clone(), g));
                }
            }
        }
    }
    corpus
}

/// Layered extremal hosts with exactly integral parts.
fn extremal_corpus() -> Vec<(ExtremalSpec, Pattern)> {
    vec![
        (
            ExtremalSpec::new(2, 2, 1, rat(1, 5), 10),
            standard_patterns("K2").unwrap(),
        ),
        (
            ExtremalSpec::new(3, 3, 1, rat(1, 6), 12),
            standard_patterns("K3").unwrap(),
        ),
        (
            ExtremalSpec::new(3, 3, 1, rat(1, 12), 24),
            standard_patterns("K3").unwrap(),
        ),
        (
            ExtremalSpec::new(2, 3, 1, rat(1, 6), 12),
            standard_patterns("P3").unwrap(),
        ),
    ]
}

/// Probe values of x per pattern, strictly inside (0, 1/|V(H)|).
fn x_grid(h: &Pattern) -> Vec<Rat> {
    let hs = h.h_size() as i64;
    vec![rat(1, 2 * hs), rat(3, 4 * hs)]
}

#[test]
fn criterion_1_exact_duality_suite() {
    criterion(1, "exact duality on 252 random instances", || {
        let limits = Limits::default();
        let corpus = duality_corpus();
        assert!(corpus.len() >= 200, "corpus too small: {}", corpus.len());
        for (id, pattern, g) in &corpus {
            let report = verify_duality(g, pattern, &limits).unwrap();
            assert!(
                report.equal,
                "duality gap on {id}: tiling {} vs cover {}",
                report.tiling_value, report.cover_value
            );
        }
    });
}

#[test]
fn criterion_2_cover_lower_bound() {
    criterion(2, "cover number at least x*n under the degree hypothesis", || {
        let limits = Limits::default();
        let mut gated_in = 0usize;
        for (id, pattern, g) in &duality_corpus() {
            let (cover_value, _) = fractional_cover_number(g, pattern, &limits).unwrap();
            for x in x_grid(pattern) {
                let hyp = MedianHypothesis::for_pattern(pattern, &x, &int(0)).unwrap();
                if check_median_hypothesis(g, &hyp).holds {
                    gated_in += 1;
                    let xn = &x * int(g.n() as u64);
                    assert!(
                        cover_value >= xn,
                        "bound violation on {id} at x = {x}: cover {cover_value} < {xn}"
                    );
                }
            }
        }
        assert!(gated_in > 0, "no random instance passed the hypothesis");

        for (spec, pattern) in &extremal_corpus() {
            let lg = build_extremal_graph(spec).unwrap();
            let hyp = MedianHypothesis::for_pattern(pattern, &spec.x, &int(0)).unwrap();
            assert!(
                check_median_hypothesis(&lg.graph, &hyp).holds,
                "extremal host must satisfy its own hypothesis"
            );
            let (cover_value, _) = fractional_cover_number(&lg.graph, pattern, &limits).unwrap();
            let xn = &spec.x * int(spec.n as u64);
            assert!(
                cover_value >= xn,
                "bound violation on extremal host (r={}, n={}): cover {cover_value} < {xn}",
                spec.r,
                spec.n
            );
        }
    });
}

#[test]
fn criterion_3_extremal_tightness() {
    criterion(3, "layered host r=3, x=1/6, n=12 is tight at 2", || {
        let limits = Limits::default();
        let spec = ExtremalSpec::new(3, 3, 1, rat(1, 6), 12);
        let pattern = standard_patterns("K3").unwrap();
        let audit = audit_extremal_tiling(&spec, &pattern, &limits).unwrap();
        assert!(audit.ok(), "audit failed: {audit:?}");
        assert_eq!(audit.tiling_number, 2);
        assert_eq!(audit.xn, 2);
        assert!(audit.min_v1_intersection.unwrap() >= 1);

        let lg = build_extremal_graph(&spec).unwrap();
        let (frac, _) = fractional_tiling_number(&lg.graph, &pattern, &limits).unwrap();
        assert_eq!(frac, int(2));
        let (cover, _) = fractional_cover_number(&lg.graph, &pattern, &limits).unwrap();
        assert_eq!(cover, int(2));
    });
}

#[test]
fn criterion_4_counterexample_host() {
    criterion(4, "cycle-carrying host defeats the tripartite tiling target", || {
        let limits = Limits::default();
        let x = rat(1, 10);
        let n = 20;
        // Formula values, evaluated exactly.
        assert_eq!(degree_threshold(3, &x, 3, n), int(13));
        let hyp = MedianHypothesis::new(3, x.clone(), 3, 9, int(0)).unwrap();
        assert_eq!(hyp.required_count(n), int(19));

        let lg = build_k333_counterexample(&x, n).unwrap();
        let profile = degree_profile(&lg.graph, &int(13));
        assert_eq!(profile.count_at_or_above(), 19);

        let audit = audit_k333_counterexample(&x, n, &limits).unwrap();
        assert!(audit.profile_ok);
        assert_eq!(audit.xn, 2);
        assert!(audit.tiling_found <= 1, "found {}", audit.tiling_found);
        assert!(audit.tiling_below_xn);
    });
}

#[test]
fn criterion_5_odd_cycle_matchings() {
    criterion(5, "edge tilings of C_5 and C_7", || {
        let limits = Limits::default();
        let h = standard_patterns("K2").unwrap();
        for (k, frac, whole) in [(5usize, rat(5, 2), 2usize), (7, rat(7, 2), 3)] {
            let g = cycle_graph(k);
            let (f, cert) = fractional_tiling_number(&g, &h, &limits).unwrap();
            assert_eq!(f, frac, "fractional matching of C_{k}");
            assert_eq!(check_tiling(&g, &h, &cert).unwrap(), TilingCheck::Valid);
            let (i, _) = integral_tiling_number(&g, &h, None, &limits).unwrap();
            assert_eq!(i, whole, "maximum matching of C_{k}");
        }
    });
}

#[test]
fn criterion_6_oracle_equivalence() {
    criterion(6, "enumeration vs brute force, search vs exhaustive packing", || {
        // 50 homomorphism-count comparisons.
        for i in 0..50u64 {
            let hn = 2 + (i % 3) as usize;
            let gn = 3 + (i % 4) as usize;
            let h = random_graph(hn, &rat(1, 2), i * 31 + 7).unwrap();
            let g = random_graph(gn, &rat(3, 5), i * 17 + 3).unwrap();
            let fast = count_homomorphisms(&h, &g);
            let brute = brute_force_homomorphisms(&h, &g).unwrap();
            assert_eq!(fast, brute, "pair {i}: {hn} -> {gn}");
        }

        // 20 integral tilings vs exhaustive family search.
        let limits = Limits::default();
        let patterns = ["K2", "P3", "K3"];
        for i in 0..20u64 {
            let n = 6 + (i % 3) as usize;
            let pattern = standard_patterns(patterns[(i % 3) as usize]).unwrap();
            let p = if i % 2 == 0 { rat(1, 2) } else { rat(2, 3) };
            let g = random_graph(n, &p, i * 41 + 11).unwrap();
            let (fast, _) = integral_tiling_number(&g, &pattern, None, &limits).unwrap();
            let slow = exhaustive_tiling_number(pattern.graph(), &g);
            assert_eq!(fast, slow, "instance {i} on {n} vertices");
        }
    });
}

#[test]
fn criterion_7_certificate_closure() {
    criterion(7, "every emitted certificate passes its independent checker", || {
        let limits = Limits::default();
        let check = |g: &Graph, pattern: &Pattern, id: &str| {
            let (_, tiling) = fractional_tiling_number(g, pattern, &limits).unwrap();
            assert_eq!(
                check_tiling(g, pattern, &tiling).unwrap(),
                TilingCheck::Valid,
                "tiling certificate rejected on {id}"
            );
            let (_, cover) = fractional_cover_number(g, pattern, &limits).unwrap();
            assert_eq!(
                check_cover(g, pattern, &cover).unwrap(),
                CoverCheck::Valid,
                "cover certificate rejected on {id}"
            );
        };
        for (id, pattern, g) in &duality_corpus() {
            check(g, pattern, id);
        }
        for (spec, pattern) in &extremal_corpus() {
            let lg = build_extremal_graph(spec).unwrap();
            check(&lg.graph, pattern, &format!("extremal r={} n={}", spec.r, spec.n));
        }
        let k2 = standard_patterns("K2").unwrap();
        check(&cycle_graph(5), &k2, "C5");
        check(&cycle_graph(7), &k2, "C7");
    });
}

#[test]
fn criterion_8_proof_object_checks() {
    criterion(8, "clique procedures and collapsed constraints on extremal hosts", || {
        let limits = Limits::default();
        for (spec, pattern) in &extremal_corpus() {
            let lg = build_extremal_graph(spec).unwrap();
            let g = &lg.graph;
            let delta = spec.delta();
            let id = format!("extremal r={} n={}", spec.r, spec.n);

            let witness = match greedy_clique_in_l(g, &delta, spec.r).unwrap() {
                GreedyOutcome::Complete(w) => w,
                GreedyOutcome::Failed { step, .. } => {
                    panic!("greedy clique failed at step {step} on {id}")
                }
            };
            assert_eq!(witness.vertices.len(), spec.r - 1, "{id}");
            let bound = intersection_bound(spec.r, &delta, spec.n);
            if bound > int(0) {
                assert!(
                    int(witness.common_total() as u64) >= bound,
                    "intersection bound violated on {id}: {} < {bound}",
                    witness.common_total()
                );
            }

            let (_, cover) = fractional_cover_number(g, pattern, &limits).unwrap();
            let min_witness = min_cover_clique(g, &delta, spec.r, &cover)
                .unwrap()
                .unwrap_or_else(|| panic!("no clique in L on {id}"));
            // Alpha chain: a_1 <= ... <= a_{r-1} <= a_L.
            assert!(
                min_witness.alphas.windows(2).all(|w| w[0] <= w[1]),
                "{id}"
            );
            assert!(
                min_witness.alphas.last().unwrap() <= &min_witness.alpha_l,
                "alpha chain broken on {id}"
            );
            match check_collapsed_constraint(g, pattern, &min_witness).unwrap() {
                CollapsedCheck::Checked { holds, lhs, .. } => {
                    assert!(holds, "collapsed constraint {lhs} < 1 on {id}");
                }
                CollapsedCheck::Vacuous => {
                    panic!("no common neighbour on {id}; the witness should have one")
                }
            }
        }
    });
}
