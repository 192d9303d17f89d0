//! Acceptance suite: the walk's transfer laws checked end to end at full
//! scale, one test per criterion, each printing a PASS/FAIL line (visible
//! with `cargo test --test acceptance -- --nocapture`).

mod common;

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use markovpst::analytic::{cycle_state, path_probability_profile, path_state};
use markovpst::arcspace::ArcState;
use markovpst::oracle::{dense_oracle_step, orthogonality_defect, state_to_vector};
use markovpst::pst::{self, ClaimFamily, EventKind, Verdict};
use markovpst::{ArcState64, Graph, ProductKind, WalkStep64};

use rand::Rng;

fn criterion(name: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("acceptance {name}: PASS"),
        Err(cause) => {
            println!("acceptance {name}: FAIL");
            resume_unwind(cause);
        }
    }
}

fn assert_under(elapsed: Duration, budget: Duration, what: &str) {
    println!("  {what}: {:.3}s (budget {:.0?})", elapsed.as_secs_f64(), budget);
    assert!(elapsed < budget, "{what} took {elapsed:?}, budget {budget:?}");
}

fn walk(g: &Graph) -> WalkStep64<'_> {
    WalkStep64::new(g).expect("suite graphs are connected")
}

fn assert_state_close(got: &ArcState64, want: &ArcState64, tol: f64, context: &str) {
    let diff = got.max_abs_difference(want).expect("same vertex count");
    assert!(diff <= tol, "{context}: amplitude error {diff:e} exceeds {tol:e}");
}

#[test]
fn a01_even_cycle_half_period_transfer() {
    criterion("1 even-cycle half-period transfer", || {
        let start = Instant::now();
        for m in 2..=25usize {
            let n = 2 * m;
            let g = Graph::cycle(n).unwrap();
            let w = walk(&g);
            for j in 0..m {
                let arrived = w.evolve(&w.psi(j).unwrap(), m);
                assert_state_close(
                    &arrived,
                    &w.psi((j + m) % n).unwrap(),
                    1e-10,
                    &format!("cycle n={n} start {j}"),
                );
            }
        }
        assert_under(start.elapsed(), Duration::from_secs(1), "half-period sweep");
    });
}

#[test]
fn a02_cycle_full_period_return() {
    criterion("2 cycle full-period return", || {
        let start = Instant::now();
        for n in 3..=50usize {
            let g = Graph::cycle(n).unwrap();
            let w = walk(&g);
            for j in 0..n {
                let returned = w.evolve(&w.psi(j).unwrap(), n);
                assert_state_close(
                    &returned,
                    &w.psi(j).unwrap(),
                    1e-10,
                    &format!("cycle n={n} vertex {j}"),
                );
            }
        }
        assert_under(start.elapsed(), Duration::from_secs(1), "full-period sweep");
    });
}

#[test]
fn a03_path_end_to_end_transfer() {
    criterion("3 path end-to-end transfer", || {
        for n in 2..=50usize {
            let g = Graph::path(n).unwrap();
            let w = walk(&g);
            let forward = w.evolve(&w.psi(0).unwrap(), n - 1);
            assert_state_close(&forward, &w.psi(n - 1).unwrap(), 1e-10, &format!("path n={n} forward"));
            let backward = w.evolve(&w.psi(n - 1).unwrap(), n - 1);
            assert_state_close(&backward, &w.psi(0).unwrap(), 1e-10, &format!("path n={n} backward"));
        }
    });
}

#[test]
fn a04_path_mirror_transfer_and_middle_return() {
    criterion("4 path mirror transfer and middle-vertex return", || {
        for n in 2..=50usize {
            let g = Graph::path(n).unwrap();
            let w = walk(&g);
            for j in (0..n).filter(|&j| 2 * j < n - 1) {
                let arrived = w.evolve(&w.psi(j).unwrap(), n - 1);
                assert_state_close(
                    &arrived,
                    &w.psi(n - 1 - j).unwrap(),
                    1e-10,
                    &format!("path n={n} start {j}"),
                );
            }
            if n % 2 == 1 {
                let m = (n - 1) / 2;
                let returned = w.evolve(&w.psi(m).unwrap(), n - 1);
                assert_state_close(
                    &returned,
                    &w.psi(m).unwrap(),
                    1e-10,
                    &format!("path n={n} middle vertex"),
                );
            }
        }
    });
}

#[test]
fn a05_closed_forms_match_stepped_evolution() {
    criterion("5 closed forms match stepped evolution", || {
        let start = Instant::now();
        for n in 3..=30usize {
            let g = Graph::cycle(n).unwrap();
            let w = walk(&g);
            for j in 0..n {
                let mut state = w.psi(j).unwrap();
                for t in 0..=2 * n {
                    let predicted = cycle_state::<f64>(n, j, t).unwrap().state;
                    assert!(
                        predicted.same_support_and_close(&state, 1e-12),
                        "cycle n={n} start {j} t={t}: support or amplitudes diverge"
                    );
                    state = w.apply(&state);
                }
            }
        }
        for n in 2..=30usize {
            let g = Graph::path(n).unwrap();
            let w = walk(&g);
            for j in 0..n {
                let mut state = w.psi(j).unwrap();
                for t in 0..=2 * (n - 1) {
                    let predicted = path_state::<f64>(n, j, t).unwrap().state;
                    assert!(
                        predicted.same_support_and_close(&state, 1e-12),
                        "path n={n} start {j} t={t}: support or amplitudes diverge"
                    );
                    state = w.apply(&state);
                }
            }
        }
        assert_under(start.elapsed(), Duration::from_secs(10), "closed-form sweep");
    });
}

#[test]
fn a06_arc_shift_identities() {
    criterion("6 arc-shift identities", || {
        // Identical support, amplitudes to floating precision. The step's
        // arithmetic carries ulp-level rounding, so bitwise equality is not
        // the right notion of "equal" here.
        let tol = 1e-14;
        let same = |got: &ArcState<f64>, want: &ArcState<f64>, what: &str| {
            assert!(got.same_support_and_close(want, tol), "{what}: states differ");
        };
        let half = std::f64::consts::FRAC_1_SQRT_2;
        for n in 3..=30usize {
            // Paths: psi spread at interior vertices, arc advance away from
            // the ends.
            let p = Graph::path(n).unwrap();
            let wp = walk(&p);
            for j in 1..=n - 2 {
                let stepped = wp.apply(&wp.psi(j).unwrap());
                let expected =
                    ArcState::from_arcs(n, vec![(j + 1, j, half), (j - 1, j, half)]).unwrap();
                same(&stepped, &expected, &format!("path n={n} spread at {j}"));
            }
            for j in 0..=n.saturating_sub(3) {
                let up = wp.apply(&ArcState::basis(n, j + 1, j).unwrap());
                same(&up, &ArcState::basis(n, j + 2, j + 1).unwrap(), &format!("path n={n} up from {j}"));
            }
            for j in 2..n {
                let down = wp.apply(&ArcState::basis(n, j - 1, j).unwrap());
                same(&down, &ArcState::basis(n, j - 2, j - 1).unwrap(), &format!("path n={n} down from {j}"));
            }

            // Cycles: the same identities hold at every vertex, modularly.
            let c = Graph::cycle(n).unwrap();
            let wc = walk(&c);
            for j in 0..n {
                let stepped = wc.apply(&wc.psi(j).unwrap());
                let expected = ArcState::from_arcs(
                    n,
                    vec![((j + 1) % n, j, half), ((j + n - 1) % n, j, half)],
                )
                .unwrap();
                same(&stepped, &expected, &format!("cycle n={n} spread at {j}"));

                let up = wc.apply(&ArcState::basis(n, (j + 1) % n, j).unwrap());
                same(
                    &up,
                    &ArcState::basis(n, (j + 2) % n, (j + 1) % n).unwrap(),
                    &format!("cycle n={n} up from {j}"),
                );

                let down = wc.apply(&ArcState::basis(n, (j + n - 1) % n, j).unwrap());
                same(
                    &down,
                    &ArcState::basis(n, (j + n - 2) % n, (j + n - 1) % n).unwrap(),
                    &format!("cycle n={n} down from {j}"),
                );
            }
        }
    });
}

#[test]
fn a07_dense_matrix_cross_check() {
    criterion("7 dense matrix cross-check", || {
        let mut rng = common::rng(0x5eed_7001);
        for round in 0..200 {
            let g = common::random_connected_graph(&mut rng, 12);
            let u = dense_oracle_step::<f64>(&g).unwrap();
            let defect = orthogonality_defect(&u);
            assert!(defect < 1e-12, "round {round}: orthogonality defect {defect:e}");

            let w = walk(&g);
            let start = rng.gen_range(0..g.n());
            let steps = rng.gen_range(1..=30);
            let mut sparse = w.psi(start).unwrap();
            let mut dense = state_to_vector(&sparse);
            for t in 1..=steps {
                sparse = w.apply(&sparse);
                dense = u.dot(&dense);
                let sparse_vec = state_to_vector(&sparse);
                let worst = dense
                    .iter()
                    .zip(sparse_vec.iter())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max);
                assert!(
                    worst < 1e-10,
                    "round {round}: sparse and dense diverge by {worst:e} at t={t}"
                );
            }
        }
    });
}

#[test]
fn a08_six_vertex_profile_reproduction() {
    criterion("8 six-vertex profile reproduction", || {
        let profile = path_probability_profile::<f64>(6, 1, 5).unwrap();
        let row = |t: usize, k: usize| {
            profile
                .rows
                .iter()
                .find(|r| r.time == t && r.vertex == k)
                .unwrap_or_else(|| panic!("missing row t={t} k={k}"))
        };
        assert!((row(0, 1).probability - 1.0).abs() < 1e-10);
        assert!((row(5, 4).probability - 1.0).abs() < 1e-10);
        for t in 1..=4usize {
            let branches: Vec<_> = profile.rows.iter().filter(|r| r.time == t).collect();
            assert_eq!(branches.len(), 2, "t={t} should hold exactly two branches");
            for b in &branches {
                assert!(
                    (b.probability - 0.5).abs() < 1e-10,
                    "t={t} k={} probability {}",
                    b.vertex,
                    b.probability
                );
            }
        }
    });
}

#[test]
fn a09_family_experiments_have_definite_verdicts() {
    criterion("9 family experiments have definite verdicts", || {
        let mut reports = pst::run_family_claims(ClaimFamily::Hypercubes, None, 4, 1e-9);
        reports.extend(pst::run_family_claims(ClaimFamily::Stars, Some(20), 4, 1e-9));
        reports.extend(pst::run_family_claims(ClaimFamily::Products, None, 4, 1e-9));

        // 4 hypercube reports, 2 per star size 3..=20, 12 pairs x 2 kinds.
        assert_eq!(reports.iter().filter(|r| r.claim.starts_with("hypercube")).count(), 4);
        assert_eq!(reports.iter().filter(|r| r.claim.starts_with("star")).count(), 36);
        assert_eq!(reports.iter().filter(|r| r.claim == "path_product_pst").count(), 24);

        for r in &reports {
            assert_ne!(
                r.verdict,
                Verdict::Ambiguous,
                "claim {} [{}] did not resolve: {}",
                r.claim,
                r.params,
                r.evidence()
            );
        }

        // The 2-dimensional cube is a 4-cycle and must show the same
        // half-period transfer the cycle law guarantees.
        let q2 = reports
            .iter()
            .find(|r| r.claim == "hypercube_pst" && r.params == "d=2")
            .expect("two-dimensional cube report");
        assert_eq!(q2.verdict, Verdict::Confirmed, "{}", q2.evidence());
    });
}

#[test]
fn a10_walk_properties_and_event_structure() {
    criterion("10 walk properties and event structure", || {
        // Norm and inner-product preservation over random states.
        let mut rng = common::rng(0x5eed_0a10);
        for _ in 0..1000 {
            let g = common::random_connected_graph(&mut rng, 12);
            let w = walk(&g);
            let s = common::random_unit_state(&mut rng, &g);
            let stepped = w.apply(&s);
            assert!((stepped.norm() - 1.0).abs() < 1e-12, "norm drifted");

            let other = common::random_unit_state(&mut rng, &g);
            let before = s.overlap(&other).unwrap();
            let after = stepped.overlap(&w.apply(&other)).unwrap();
            assert!((before - after).abs() < 1e-12, "inner product drifted");
        }

        // Transfer symmetry and transfer-implies-return on every suite
        // graph.
        let mut graphs: Vec<Graph> = Vec::new();
        graphs.extend((2..=50).map(|n| Graph::path(n).unwrap()));
        graphs.extend((3..=50).map(|n| Graph::cycle(n).unwrap()));
        graphs.extend((2..=4).map(|d| Graph::hypercube(d).unwrap()));
        graphs.extend((3..=20).map(|n| Graph::star(n).unwrap()));
        for kind in [ProductKind::Tensor, ProductKind::Cartesian] {
            for i in 2..=7usize {
                for j in i..=(9 - i) {
                    let g = Graph::product(
                        &Graph::path(i).unwrap(),
                        &Graph::path(j).unwrap(),
                        kind,
                    );
                    if g.is_connected() {
                        graphs.push(g);
                    } else {
                        graphs.extend(g.connected_components().into_iter().map(|(c, _)| c));
                    }
                }
            }
        }

        for g in &graphs {
            let horizon = 4 * g.n();
            let events = pst::detect(g, horizon, 1e-9).unwrap();
            let has = |source: usize, target: usize, time: usize, kind: EventKind| {
                events.iter().any(|e| {
                    e.source == source && e.target == target && e.time == time && e.kind == kind
                })
            };
            for e in events.iter().filter(|e| e.kind == EventKind::PstExact) {
                assert!(
                    has(e.target, e.source, e.time, EventKind::PstExact),
                    "transfer {} -> {} at t={} has no mirror event",
                    e.source,
                    e.target,
                    e.time
                );
                if 2 * e.time <= horizon {
                    assert!(
                        has(e.source, e.source, 2 * e.time, EventKind::Periodic),
                        "transfer {} -> {} at t={} does not return at t={}",
                        e.source,
                        e.target,
                        e.time,
                        2 * e.time
                    );
                }
            }
        }
    });
}
