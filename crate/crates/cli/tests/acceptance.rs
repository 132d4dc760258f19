//! Frozen end-to-end results for the reference matrices plus the randomized
//! theorem-level properties. Each test prints one `[criterion N] PASS/FAIL`
//! line (visible with `--nocapture` and on failure).

use std::collections::BTreeSet;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use effmat::cycles::{enumerate_hcycles, gamma_set};
use effmat::equality::undominated;
use effmat::fixtures::{
    bounds4, decreasing4, grid, hard_pair5, hard_pair_witness, perturbed_ones, star4,
};
use effmat::matrix::{PositiveVector, ReciprocalMatrix};
use effmat::paths::{attain_set, cone_interval, extreme_vector, extreme_vectors};
use effmat::random::{
    random_inconsistent, random_monomial, random_positive_vector, random_reciprocal, random_spc,
};
use effmat::rational::{parse_rational, rat, rat_int, Rat};
use effmat::{
    apply_monomial, cone_unique_order, decide_equal_efficient_sets, digraph_oracle,
    global_bounds, global_pairwise_above, global_unique_order,
    improves_approximation, is_efficient, l_equal, monomial_conjugate, partial_order_partition,
    path_matrix, refute_by_perturbation, EqualStatus, EqualityVerdict, HCycle, MatrixSide,
};
use effmat_cli::io::{MatrixDocument, MATRIX_SCHEMA};
use effmat_cli::report::{matrix_strings, AnalysisReport, CompareReport, SearchReportDoc};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn criterion<F: FnOnce()>(number: usize, summary: &str, body: F) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("[criterion {number}] PASS - {summary}"),
        Err(payload) => {
            println!("[criterion {number}] FAIL - {summary}");
            resume_unwind(payload);
        }
    }
}

fn cycle(seq: &[usize]) -> HCycle {
    HCycle::new(seq.iter().map(|&v| v - 1).collect()).unwrap()
}

fn effmat_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_effmat"))
}

fn write_matrix_json(dir: &Path, name: &str, a: &ReciprocalMatrix) -> PathBuf {
    let doc = MatrixDocument {
        schema: MATRIX_SCHEMA.to_string(),
        n: a.n(),
        entries: matrix_strings(a),
        labels: None,
    };
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    path
}

/// Indices sorted by strictly decreasing coordinate; panics on ties so order
/// comparisons below stay unambiguous.
fn descending_order(w: &PositiveVector) -> Vec<usize> {
    let mut order: Vec<usize> = (0..w.n()).collect();
    order.sort_by(|&a, &b| w.get(b).cmp(w.get(a)));
    for pair in order.windows(2) {
        assert!(w.get(pair[0]) > w.get(pair[1]), "tied coordinates");
    }
    order
}

fn projective(w: &PositiveVector) -> Vec<Rat> {
    let first = w.get(0);
    (0..w.n()).map(|i| w.get(i) / first).collect()
}

fn assert_verified_separation(
    verdict: &EqualityVerdict,
    a: &ReciprocalMatrix,
    b: &ReciprocalMatrix,
) {
    assert_eq!(verdict.status, EqualStatus::NotEqual);
    let w = verdict.witness.as_ref().expect("separating vector");
    let (inside, outside) = match verdict.witness_side.expect("witness side") {
        MatrixSide::First => (a, b),
        MatrixSide::Second => (b, a),
    };
    assert!(is_efficient(w, inside).unwrap());
    assert!(!is_efficient(w, outside).unwrap());
}

#[test]
fn criterion_01_reference_cycle_set_products_and_intervals() {
    criterion(
        1,
        "reference 4x4: below-one cycles, products, cone intervals, global lower bound",
        || {
            let started = Instant::now();
            let a = bounds4();
            let alpha = cycle(&[1, 2, 3, 4]);
            let beta = cycle(&[1, 2, 4, 3]);
            let gamma_cycle = cycle(&[1, 3, 2, 4]);

            let found = gamma_set(&a).unwrap();
            let names: BTreeSet<String> = found.cycles().map(|c| c.to_string()).collect();
            assert_eq!(
                names,
                ["12341", "12431", "13241"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect()
            );
            assert_eq!(found.product_of(&alpha), Some(&rat(1, 7)));
            assert_eq!(found.product_of(&beta), Some(&rat(2, 3)));
            assert_eq!(found.product_of(&gamma_cycle), Some(&rat(6, 7)));

            let b1 = cone_interval(&a, &alpha).unwrap();
            assert_eq!(
                b1.lower.values(),
                &grid("1 1 1 1; 1/7 1 1 1; 1/7 1/7 1 1; 1/7 1/7 1/7 1")
            );
            assert_eq!(b1.upper, grid("1 7 7 7; 1 1 7 7; 1 1 1 7; 1 1 1 1"));

            let b2 = cone_interval(&a, &beta).unwrap();
            assert_eq!(
                b2.lower.values(),
                &grid("1 1 2 2; 2/3 1 2 2; 1/3 1/3 1 2/3; 1/3 1/3 1 1")
            );
            assert_eq!(
                b2.upper,
                grid("1 3/2 3 3; 1 1 3 3; 1/2 1/2 1 1; 1/2 1/2 3/2 1")
            );

            let b3 = cone_interval(&a, &gamma_cycle).unwrap();
            assert_eq!(
                b3.lower.values(),
                &grid("1 3 3 6; 2/7 1 6/7 2; 2/7 1 1 2; 1/7 3/7 3/7 1")
            );
            assert_eq!(
                b3.upper,
                grid("1 7/2 7/2 7; 1/3 1 1 7/3; 1/3 7/6 1 7/3; 1/6 1/2 1/2 1")
            );

            let global = global_bounds(&a).unwrap();
            assert_eq!(
                global.lower,
                grid("1 1 1 1; 1/7 1 6/7 1; 1/7 1/7 1 2/3; 1/7 1/7 1/7 1")
            );
            assert!(started.elapsed() < Duration::from_millis(100));
        },
    );
}

#[test]
fn criterion_02_reference_pair_same_bounds_different_sets() {
    criterion(
        2,
        "reference 5x5 pair: equal lower bounds, separating vector, compare verdict",
        || {
            let started = Instant::now();
            let (a, b) = hard_pair5();
            let la = global_bounds(&a).unwrap().lower;
            let lb = global_bounds(&b).unwrap().lower;
            assert_eq!(la, lb);
            assert!(l_equal(&a, &b).unwrap());
            let off_diagonal: BTreeSet<Rat> = (0..5)
                .flat_map(|i| (0..5).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j)
                .map(|(i, j)| la.get(i, j).clone())
                .collect();
            for value in ["1/110", "99/500", "11/90"] {
                assert!(off_diagonal.contains(&parse_rational(value).unwrap()));
            }

            let w = hard_pair_witness();
            assert!(is_efficient(&w, &a).unwrap());
            assert!(!is_efficient(&w, &b).unwrap());

            let verdict = decide_equal_efficient_sets(&a, &b).unwrap();
            assert_verified_separation(&verdict, &a, &b);

            let dir = tempfile::tempdir().unwrap();
            let first = write_matrix_json(dir.path(), "first.json", &a);
            let second = write_matrix_json(dir.path(), "second.json", &b);
            let out = effmat_bin()
                .arg("compare")
                .arg(&first)
                .arg(&second)
                .arg("--json")
                .output()
                .unwrap();
            assert_eq!(out.status.code(), Some(1));
            let report: CompareReport = serde_json::from_slice(&out.stdout).unwrap();
            assert_eq!(report.status, "not-equal");
            let coords: Vec<Rat> = report
                .witness
                .expect("witness in the report")
                .iter()
                .map(|s| parse_rational(s).unwrap())
                .collect();
            let emitted = PositiveVector::new(coords).unwrap();
            let (inside, outside) = match report.witness_side.as_deref() {
                Some("first") => (&a, &b),
                Some("second") => (&b, &a),
                other => panic!("missing witness side: {other:?}"),
            };
            assert!(is_efficient(&emitted, inside).unwrap());
            assert!(!is_efficient(&emitted, outside).unwrap());
            assert!(started.elapsed() < Duration::from_millis(500));
        },
    );
}

#[test]
fn criterion_03_forced_decreasing_order() {
    criterion(
        3,
        "4x4 with a forced decreasing order: global order and cycle products",
        || {
            let a = decreasing4();
            assert_eq!(global_unique_order(&a).unwrap(), Some(vec![0, 1, 2, 3]));
            let found = gamma_set(&a).unwrap();
            assert_eq!(found.len(), 2);
            assert_eq!(found.product_of(&cycle(&[1, 2, 3, 4])), Some(&rat(1, 2)));
            assert_eq!(found.product_of(&cycle(&[1, 4, 2, 3])), Some(&rat(8, 9)));
        },
    );
}

#[test]
fn criterion_04_reference_cone_orders_without_a_global_order() {
    criterion(
        4,
        "reference 4x4: three distinct cone orders, no global order, 1 above all",
        || {
            let a = bounds4();
            assert_eq!(
                cone_unique_order(&a, &cycle(&[1, 2, 3, 4])).unwrap(),
                Some(vec![0, 1, 2, 3])
            );
            assert_eq!(
                cone_unique_order(&a, &cycle(&[1, 2, 4, 3])).unwrap(),
                Some(vec![0, 1, 3, 2])
            );
            assert_eq!(
                cone_unique_order(&a, &cycle(&[1, 3, 2, 4])).unwrap(),
                Some(vec![0, 2, 1, 3])
            );
            assert_eq!(global_unique_order(&a).unwrap(), None);
            let above = global_pairwise_above(&a).unwrap();
            for j in 1..4 {
                assert!(above.contains(&(0, j)));
            }
        },
    );
}

#[test]
fn criterion_05_two_block_partition_and_extreme_orders() {
    criterion(
        5,
        "free-pair 4x4: {1,2} above {3,4} and exactly three extreme orders",
        || {
            let listed: BTreeSet<Vec<usize>> =
                [vec![1, 0, 3, 2], vec![1, 0, 2, 3], vec![0, 1, 3, 2]]
                    .into_iter()
                    .collect();
            let alpha = cycle(&[1, 2, 3, 4]);
            for (c13, c24) in [
                (rat_int(1), rat_int(1)),
                (rat_int(5), rat(1, 3)),
                (rat(9, 2), rat_int(7)),
            ] {
                let s = star4(c13, c24);
                let partition = partial_order_partition(&s, &alpha).unwrap();
                assert_eq!(
                    partition.blocks,
                    vec![
                        [0, 1].into_iter().collect::<BTreeSet<_>>(),
                        [2, 3].into_iter().collect()
                    ]
                );
                let extremes = extreme_vectors(&s, &alpha).unwrap();
                let orders: Vec<Vec<usize>> = extremes.iter().map(descending_order).collect();
                assert_eq!(orders[0], vec![1, 0, 3, 2]);
                assert_eq!(orders[1], vec![0, 1, 3, 2]);
                assert_eq!(orders[2], vec![1, 0, 3, 2]);
                assert_eq!(orders[3], vec![1, 0, 2, 3]);
                let occurring: BTreeSet<Vec<usize>> = orders.into_iter().collect();
                assert_eq!(occurring, listed);
                assert!(!occurring.contains(&vec![0, 1, 2, 3]));
            }
        },
    );
}

#[test]
fn criterion_06_one_perturbation_extremes_and_undominated_anchors() {
    criterion(
        6,
        "one-perturbation 4x4 at 2: extreme rays and the undominated anchors",
        || {
            let a = perturbed_ones(4, rat_int(2));
            let alpha = cycle(&[1, 2, 3, 4]);
            let gamma_cycle = cycle(&[1, 3, 2, 4]);

            let expected: BTreeSet<Vec<Rat>> = [
                "1 1 1 1",
                "2 2 2 1",
                "2 1 1 1",
                "2 2 1 1",
            ]
            .iter()
            .map(|text| {
                let w = effmat::fixtures::vector(text);
                projective(&w)
            })
            .collect();
            let rays: BTreeSet<Vec<Rat>> = extreme_vectors(&a, &alpha)
                .unwrap()
                .iter()
                .map(projective)
                .collect();
            assert_eq!(rays, expected);

            for k in 0..4 {
                assert_eq!(undominated(&a, &alpha, k).unwrap(), k == 2);
                assert_eq!(undominated(&a, &gamma_cycle, k).unwrap(), k == 1);
            }
        },
    );
}

#[test]
fn criterion_07_random_extremes_attain_their_path_matrix() {
    criterion(
        7,
        "200 random matrices: every extreme is efficient and attains its bound",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for round in 0..200 {
                let n = 3 + round % 3;
                let a = random_inconsistent(n, 5, &mut rng);
                let found = gamma_set(&a).unwrap();
                for tau in found.cycles() {
                    for k in 0..n {
                        let w = extreme_vector(&a, tau, k).unwrap();
                        let report = effmat::efficiency::efficiency_report_over(&w, &a, &found)
                            .unwrap();
                        assert!(report.efficient);
                        let position = report
                            .member_cones
                            .iter()
                            .position(|c| c == tau)
                            .expect("extreme lies in its own cone");
                        let tight = &report.tight_positions[position];
                        let anchored = attain_set(tau, k).unwrap();
                        for pair in anchored.pairs() {
                            assert!(tight.contains(pair));
                        }
                        assert!((0..n).any(|anchor| {
                            let set = attain_set(tau, anchor).unwrap();
                            tight.iter().all(|&(i, j)| set.contains(i, j))
                        }));
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_08_efficiency_tests_and_refuter_agree() {
    criterion(
        8,
        "1000 random instances: cone test, digraph oracle and refuter agree",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(8);
            for round in 0..1000_usize {
                let n = 3 + round % 3;
                let a = random_reciprocal(n, 5, &mut rng);
                let w = if round % 4 == 0 {
                    // guaranteed-efficient draws so both verdicts get exercised
                    if a.is_consistent() {
                        a.column(round % n)
                    } else {
                        let found = gamma_set(&a).unwrap();
                        let tau = found.cycles().next().unwrap().clone();
                        extreme_vector(&a, &tau, round % n).unwrap()
                    }
                } else {
                    random_positive_vector(n, 5, &mut rng)
                };

                let cone = is_efficient(&w, &a).unwrap();
                assert_eq!(cone, digraph_oracle(&w, &a).unwrap());
                let refutation = refute_by_perturbation(&w, &a, 32, round as u64);
                assert_eq!(refutation.is_some(), !cone);
                if let Some(candidate) = refutation {
                    assert!(improves_approximation(&a, &candidate, &w).unwrap());
                }
            }
        },
    );
}

#[test]
fn criterion_09_distinct_single_pair_matrices_always_separate() {
    criterion(
        9,
        "200 distinct single-pair-form pairs: bounds differ and sets separate",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            let mut done = 0;
            while done < 200 {
                let n = 3 + done % 4;
                let a = random_spc(n, 5, &mut rng);
                let b = random_spc(n, 5, &mut rng);
                if a == b {
                    continue;
                }
                assert!(!l_equal(&a, &b).unwrap());
                let verdict = decide_equal_efficient_sets(&a, &b).unwrap();
                assert_verified_separation(&verdict, &a, &b);
                done += 1;
            }
        },
    );
}

#[test]
fn criterion_10_distinct_four_by_four_pairs_always_separate() {
    criterion(
        10,
        "200 distinct 4x4 pairs: always NotEqual with a verified witness",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(10);
            let mut done = 0;
            while done < 200 {
                let a = random_reciprocal(4, 4, &mut rng);
                let b = if done % 3 == 0 {
                    // single-entry perturbations are the nearest neighbours
                    let mut b = a.clone();
                    let i = done % 4;
                    let j = (i + 1 + (done / 3) % 3) % 4;
                    let bumped = b.get(i, j) + rat(1, 10);
                    b.set_pair(i, j, bumped).unwrap();
                    b
                } else {
                    random_reciprocal(4, 4, &mut rng)
                };
                if a == b {
                    continue;
                }
                let verdict = decide_equal_efficient_sets(&a, &b).unwrap();
                assert_ne!(verdict.status, EqualStatus::Unknown);
                assert_verified_separation(&verdict, &a, &b);
                done += 1;
            }
        },
    );
}

#[test]
fn criterion_11_structural_invariants() {
    criterion(
        11,
        "path matrix laws, anchored set shape, monomial equivariance (100 triples)",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for round in 0..100_usize {
                let n = 3 + round % 3;
                let a = random_inconsistent(n, 5, &mut rng);
                let w = random_positive_vector(n, 4, &mut rng);
                let map = random_monomial(n, 4, &mut rng);

                let image = apply_monomial(&map, &w).unwrap();
                let conjugated = monomial_conjugate(&a, &map).unwrap();
                assert_eq!(
                    is_efficient(&w, &a).unwrap(),
                    is_efficient(&image, &conjugated).unwrap()
                );

                for hc in enumerate_hcycles(n).unwrap() {
                    let pm = path_matrix(&a, &hc).unwrap();
                    for i in 0..n {
                        for j in 0..n {
                            if i != j {
                                assert_eq!(&(pm.get(i, j) * pm.get(j, i)), pm.cycle_product());
                            }
                        }
                    }
                    let reversed = path_matrix(&a, &hc.reversed()).unwrap();
                    assert_eq!(reversed.values(), &pm.values().inv_transpose());
                    for k in 0..n {
                        let set = attain_set(&hc, k).unwrap();
                        assert_eq!(set.len(), (n * n - n) / 2);
                        for i in 0..n {
                            for j in 0..n {
                                if i != j {
                                    assert!(set.contains(i, j) ^ set.contains(j, i));
                                }
                            }
                        }
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_12_performance_budgets() {
    criterion(
        12,
        "n=8 full analysis under 10s; 1000-iteration n=5 search under 60s",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(12);
            let a = random_inconsistent(8, 6, &mut rng);
            let dir = tempfile::tempdir().unwrap();
            let path = write_matrix_json(dir.path(), "m8.json", &a);

            let started = Instant::now();
            let out = effmat_bin()
                .arg("analyze")
                .arg(&path)
                .arg("--full")
                .arg("--json")
                .output()
                .unwrap();
            let analyze_elapsed = started.elapsed();
            assert_eq!(out.status.code(), Some(0));
            assert!(analyze_elapsed < Duration::from_secs(10), "{analyze_elapsed:?}");
            let report: AnalysisReport = serde_json::from_slice(&out.stdout).unwrap();
            assert_eq!(report.n, 8);
            assert_eq!(report.all_path_matrices.as_ref().map(Vec::len), Some(5040));

            let started = Instant::now();
            let out = effmat_bin()
                .args(["search", "--n", "5", "--iters", "1000", "--seed", "5"])
                .args(["--strategy", "perturb", "--json"])
                .output()
                .unwrap();
            let search_elapsed = started.elapsed();
            assert_eq!(out.status.code(), Some(0));
            assert!(search_elapsed < Duration::from_secs(60), "{search_elapsed:?}");
            let report: SearchReportDoc = serde_json::from_slice(&out.stdout).unwrap();
            assert_eq!(report.examined, 1000);
            // the reference pair with equal bounds must never go undecided
            assert_eq!(report.reference_pair_not_equal, Some(true));
        },
    );
}
