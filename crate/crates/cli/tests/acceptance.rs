//! Acceptance suite: one test per release criterion, each printing a PASS
//! line with its measured margin. Run with
//! `cargo test -p wishart-marginals-cli --test acceptance -- --nocapture`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::process::Command;
use std::time::Instant;

use wishart_marginals::asymptotics::{
    limit_moment_two_chain, limit_moment_unbalanced4, mp_moment, mp_moment_quadrature,
    phi_completion, regime_exponent_mu, tree_count_recursive, LimitMoment,
};
use wishart_marginals::combinat::{
    all_permutations, catalan, fuss_catalan_2, nc_partitions, NCPartition, Permutation,
    SetPartition,
};
use wishart_marginals::maps::{enumerate_maps, UnfoldedMap};
use wishart_marginals::moments::{
    all_words, alt, exact_moment, l_exponent_4partite, parse_letters, wick_oracle_moment,
    MarginalWord,
};
use wishart_marginals::montecarlo::{pooled_eigenvalues, SpectrumSpec};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wishart-marginals"))
}

fn run_text(args: &[&str]) -> (String, i32) {
    let out = bin().args(args).output().expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).trim().to_string(),
        out.status.code().unwrap_or(-1),
    )
}

/// Criterion 1: `exact --symbolic` reproduces the displayed polynomials
/// character-exactly, in under 10 seconds.
#[test]
fn criterion_1_exact_formula_fidelity() {
    let start = Instant::now();

    let (bipartite, code) = run_text(&[
        "exact",
        "--bipartite",
        "--p",
        "2",
        "--symbolic",
        "--format",
        "text",
    ]);
    assert_eq!(code, 0);
    assert_eq!(bipartite, "N M^2 + N^2 M");

    let (mixed, code) = run_text(&["exact", "--word", "AB,AC", "--symbolic", "--format", "text"]);
    assert_eq!(code, 0);
    assert_eq!(mixed, "N_A N_{B,C}^3 N_D^2 + N_A^2 N_{B,C} N_D");

    let expected_pq = [
        ("1 + N^-2", "1"),
        ("3 + 8 N^-2 + 8 N^-4 + 5 N^-6", "3 + N^-2"),
        (
            "12 + 54 N^-2 + 135 N^-4 + 278 N^-6 + 170 N^-8 + 71 N^-10",
            "12 + 21 N^-2 + 3 N^-4",
        ),
    ];
    for (p, (expect_p, expect_q)) in expected_pq.iter().enumerate() {
        let (text, code) = run_text(&["exact", "--pq", &(p + 1).to_string(), "--format", "text"]);
        assert_eq!(code, 0);
        assert_eq!(text, format!("P: {expect_p}\nQ: {expect_q}"));
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}");
    println!("[criterion 1] PASS — exact symbolic output character-exact in {elapsed:?}");
}

/// Criterion 2: exact engine equals the Wick oracle — exhaustively for
/// 4-partite words p <= 4 (with evaluation over dims {1,2,3}^4), the
/// bipartite family p <= 5, and 20 seeded random general words; under 2 min.
#[test]
fn criterion_2_oracle_equivalence() {
    let start = Instant::now();
    let mut checked = 0usize;

    for p in 1..=4usize {
        for letters in all_words(p) {
            let word = MarginalWord::four_partite(&letters).unwrap();
            let exact = exact_moment(&word).unwrap();
            let oracle = wick_oracle_moment(&word).unwrap();
            assert_eq!(exact, oracle, "polynomials differ for {letters:?}");
            for d0 in 1..=3u64 {
                for d3 in 1..=3u64 {
                    for dm in 1..=3u64 {
                        let dims = [d0, dm, dm, d3];
                        assert_eq!(
                            exact.evaluate(&dims).unwrap(),
                            oracle.evaluate(&dims).unwrap()
                        );
                    }
                }
            }
            checked += 1;
        }
    }

    for p in 1..=5usize {
        let word = MarginalWord::bipartite(p).unwrap();
        assert_eq!(
            exact_moment(&word).unwrap(),
            wick_oracle_moment(&word).unwrap(),
            "bipartite p={p}"
        );
        checked += 1;
    }

    // Seeded random general words, n <= 6, card <= 3, p <= 3.
    let mut state = 0x5eed_2024u64;
    let mut next = move |hi: usize| {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 33) as usize) % hi
    };
    let mut produced = 0;
    while produced < 20 {
        let n = 2 + next(5);
        let card = 1 + next(3.min(n - 1));
        let p = 1 + next(3);
        let mut subsets = Vec::new();
        for _ in 0..p {
            let mut colors: Vec<usize> = (0..n).collect();
            for i in (1..colors.len()).rev() {
                colors.swap(i, next(i + 1));
            }
            let mut kept = colors[..card].to_vec();
            kept.sort_unstable();
            subsets.push(kept);
        }
        let sigmas: Vec<Permutation> = (0..p)
            .map(|_| {
                let mut images: Vec<usize> = (0..card).collect();
                for i in (1..images.len()).rev() {
                    images.swap(i, next(i + 1));
                }
                Permutation::from_images(images).unwrap()
            })
            .collect();
        let Ok(word) = MarginalWord::general(n, subsets, sigmas) else {
            continue;
        };
        assert_eq!(
            exact_moment(&word).unwrap(),
            wick_oracle_moment(&word).unwrap(),
            "random word {word:?}"
        );
        produced += 1;
        checked += 1;
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "took {elapsed:?}");
    println!("[criterion 2] PASS — {checked} words oracle-checked in {elapsed:?}");
}

/// Criterion 3: the four-row unbalanced 4-partite moment table, as exact
/// polynomials in c and 1/m².
#[test]
fn criterion_3_limit_table_fidelity() {
    type Row = (&'static str, &'static [(u32, i64, u64)]);
    let table: [Row; 4] = [
        ("AB,AC", &[(2, 0, 1), (1, 2, 1)]),
        ("AB,AB,AC", &[(3, 0, 1), (2, 0, 1), (2, 2, 2), (1, 2, 1)]),
        (
            "AB,AB,AC,AC",
            &[
                (4, 0, 1),
                (3, 0, 2),
                (2, 0, 1),
                (3, 2, 4),
                (2, 2, 4),
                (1, 2, 1),
                (2, 4, 1),
            ],
        ),
        (
            "AB,AC,AB,AC",
            &[
                (4, 0, 1),
                (3, 0, 2),
                (3, 2, 4),
                (2, 2, 4),
                (2, 4, 2),
                (1, 4, 1),
            ],
        ),
    ];
    for (word, triples) in table {
        let letters = parse_letters(word).unwrap();
        let computed = limit_moment_unbalanced4(&letters).unwrap();
        assert_eq!(
            computed,
            LimitMoment::from_triples(triples),
            "table row {word} disagrees"
        );
    }
    println!("[criterion 3] PASS — all four limit-table rows exact");
}

/// Criterion 4: Catalan and Fuss-Catalan counts across the formalisms.
#[test]
fn criterion_4_combinatorial_counts() {
    for p in 1..=7usize {
        let cat = catalan(p as u64).to_usize().unwrap();
        assert_eq!(nc_partitions(p).unwrap().len(), cat, "|NC({p})|");
        assert_eq!(enumerate_maps(p, Some(0)).unwrap().len(), cat, "|M_{p}^0|");
    }
    for q in 1..=6usize {
        let fc = fuss_catalan_2(q as u64);
        // Direct 2-chain count.
        let ncs = nc_partitions(q).unwrap();
        let chains: u64 = ncs
            .iter()
            .map(|pi| ncs.iter().filter(|s| s.refines(pi)).count() as u64)
            .sum();
        assert_eq!(chains, fc.to_u64().unwrap(), "2-chain count at q={q}");
        let ones = vec![1u64; q];
        assert_eq!(
            limit_moment_two_chain(&ones, &ones).unwrap(),
            BigInt::from(fc.clone()),
            "two-chain count at q={q}"
        );
    }
    // Tree recursions equal the 2-chain expansion on every (u, d), Σ <= 8.
    let mut checked = 0;
    for q in 1..=4usize {
        let max_entry = 8u64;
        let mut vecs: Vec<Vec<u64>> = vec![vec![]];
        for _ in 0..q {
            vecs = vecs
                .into_iter()
                .flat_map(|v| {
                    (0..=max_entry).filter_map(move |x| {
                        let mut v2 = v.clone();
                        v2.push(x);
                        if v2.iter().sum::<u64>() <= 8 {
                            Some(v2)
                        } else {
                            None
                        }
                    })
                })
                .collect();
        }
        for u in &vecs {
            let su: u64 = u.iter().sum();
            for d in &vecs {
                let total = su + d.iter().sum::<u64>();
                if total == 0 || total > 8 {
                    continue;
                }
                assert_eq!(
                    BigInt::from(tree_count_recursive(u, d).unwrap()),
                    limit_moment_two_chain(u, d).unwrap(),
                    "trees vs chains at u={u:?} d={d:?}"
                );
                checked += 1;
            }
        }
    }
    println!("[criterion 4] PASS — counts agree; {checked} tree/chain pairs compared");
}

/// Criterion 5: the loop-exponent inequalities and identities, exhaustively
/// over words and permutations up to p = 6 — zero violations.
#[test]
fn criterion_5_inequality_suite() {
    let mut scanned = 0usize;
    for p in 1..=6usize {
        let perms = all_permutations(p).unwrap();
        let gamma_len = p - 1;
        for letters in all_words(p) {
            let kernel = SetPartition::kernel(&letters);
            let word = MarginalWord::four_partite(&letters).unwrap();
            for alpha in &perms {
                scanned += 1;
                let l = l_exponent_4partite(&letters, alpha);
                // L <= p + 1, equality iff geodesic and below ker f.
                assert!(l <= p + 1, "bound violated");
                let below_kernel = SetPartition::from_blocks(p, alpha.cycles())
                    .unwrap()
                    .refines(&kernel);
                assert_eq!(
                    l == p + 1,
                    alpha.is_geodesic() && below_kernel,
                    "equality characterization fails: {letters:?} {alpha:?}"
                );
                // Lemma: |γ̂_f α̂| = 2p - L >= p - 1, same characterization.
                let hat_length = 2 * p - l;
                assert!(hat_length >= gamma_len);
                assert_eq!(hat_length == p - 1, alpha.is_geodesic() && below_kernel);
                // On geodesics, L = p + 1 - alt(f, α).
                if alpha.is_geodesic() {
                    assert_eq!(
                        l as i64,
                        (p + 1) as i64 - alt(&letters, alpha) as i64,
                        "geodesic identity fails: {letters:?} {alpha:?}"
                    );
                }
                // Thm 4.2 exponent identity through the unfolded map.
                let u = UnfoldedMap::build(&word, alpha);
                let k = word.k() as i64;
                let moving = word.moving_colors().len() as i64;
                let rhs = k * p as i64
                    + u.black_vertex_count() as i64
                    + (moving - 2 * k) * alpha.cycle_count() as i64
                    - u.tilde_l() as i64;
                assert_eq!(u.l_exponent() as i64, rhs, "exponent identity fails");
            }
        }
    }
    println!("[criterion 5] PASS — {scanned} (word, permutation) pairs, zero violations");
}

/// Criterion 6: the dominant-map table of the more-than-half regime and the
/// two-vertex length formula for the n=5, k=2 family up to p = 5.
#[test]
fn criterion_6_regime_classification() {
    // Three-case minimizer table for the two-edge word with transposed twists.
    let swap = Permutation::from_images(vec![0, 2, 1]).unwrap();
    for (n, expect_vertices) in [
        (3usize, vec![2]),
        (4, vec![2, 3]),
        (5, vec![3]),
        (6, vec![3]),
    ] {
        let word =
            MarginalWord::general(n, vec![vec![0, 1, 2]; 2], vec![swap.clone(), swap.clone()])
                .unwrap();
        let (_, argmin) = regime_exponent_mu(&word).unwrap();
        let mut vertices: Vec<usize> = argmin.iter().map(|m| m.vertex_count()).collect();
        vertices.sort_unstable();
        assert_eq!(vertices, expect_vertices, "minimizer table fails at n={n}");
    }

    // L̃ == Σ |Φ(σ_a)| on all V=2 planar instances, p <= 5, V• = k = 2.
    let ambient = [1usize, 2, 3];
    let jsets: Vec<Vec<usize>> = vec![vec![1, 2], vec![1, 3], vec![2, 3]];
    let mut verified = 0usize;
    for p in 2..=5usize {
        let one_block = NCPartition::one_block(p).geodesic_permutation();
        let mut stack: Vec<(Vec<Vec<usize>>, Vec<Permutation>)> = vec![(vec![], vec![])];
        for _ in 0..p {
            let mut grown = Vec::new();
            for (subs, sigs) in &stack {
                for j in &jsets {
                    for flip in [false, true] {
                        let mut kept = vec![0usize];
                        kept.extend(j);
                        let mut subs2 = subs.clone();
                        subs2.push(kept);
                        let mut sigs2 = sigs.clone();
                        sigs2.push(if flip {
                            Permutation::from_images(vec![0, 2, 1]).unwrap()
                        } else {
                            Permutation::identity(3)
                        });
                        grown.push((subs2, sigs2));
                    }
                }
            }
            stack = grown;
        }
        for (subs, sigs) in stack {
            let Ok(word) = MarginalWord::general(5, subs, sigs) else {
                continue;
            };
            if word.k() != 2 {
                continue;
            }
            let unfolded = UnfoldedMap::build(&word, &one_block);
            if unfolded.black_vertex_count() != 2 {
                continue;
            }
            let total_length: usize = (0..p)
                .map(|a| phi_completion(&word, a, &ambient).unwrap().length())
                .sum();
            assert_eq!(
                unfolded.tilde_l(),
                total_length,
                "length formula fails: {word:?}"
            );
            verified += 1;
        }
    }
    assert!(verified > 100, "family too small: {verified}");
    println!("[criterion 6] PASS — minimizer table and {verified} two-vertex instances");
}

/// Criterion 7: statistical agreement of the sampler with the exact engine
/// through the `compare` command, plus the finite-size convergence-ratio
/// check; all |z| <= 5, under 3 minutes single-threaded.
#[test]
fn criterion_7_monte_carlo_agreement() {
    let start = Instant::now();
    let runs: [&[&str]; 3] = [
        &[
            "compare",
            "--bipartite",
            "--p",
            "1",
            "--dims",
            "8,8",
            "--samples",
            "10000",
            "--seed",
            "20260810",
            "--threads",
            "1",
        ],
        &[
            "compare",
            "--word",
            "AB,AC",
            "--dims",
            "8,4,4,8",
            "--samples",
            "20000",
            "--seed",
            "7",
            "--threads",
            "1",
        ],
        &[
            "compare",
            "--entrywise",
            "--p",
            "3",
            "--dims",
            "6,4",
            "--samples",
            "10000",
            "--seed",
            "11",
            "--threads",
            "1",
        ],
    ];
    for args in runs {
        let (table, code) = run_text(args);
        assert_eq!(code, 0, "comparison exceeded 5 standard errors:\n{table}");
    }

    // Exact/limit convergence ratios for five representative words: the
    // relative error at dims N must fall at the O(N^-2) rate.
    for letters_str in [
        "AB,AC",
        "AB,AB,AC",
        "AB,AC,AB,AC",
        "AB,AB,AB",
        "AB,AB,AC,AC",
    ] {
        let letters = parse_letters(letters_str).unwrap();
        let word = MarginalWord::four_partite(&letters).unwrap();
        let p = letters.len() as i32;
        let limit = wishart_marginals::asymptotics::limit_moment_balanced4(&letters)
            .unwrap()
            .eval(1.0, 1.0);
        let errs: Vec<f64> = [4u64, 8, 16]
            .iter()
            .map(|&nn| {
                let exact = exact_moment(&word)
                    .unwrap()
                    .evaluate(&[nn, nn, nn, nn])
                    .unwrap()
                    .to_f64()
                    .unwrap();
                (exact / (nn as f64 * nn as f64).powi(p + 1) - limit).abs() / limit
            })
            .collect();
        assert!(
            errs[1] <= errs[0] / 2.0 && errs[2] <= errs[1] / 2.0,
            "{letters_str}: errors {errs:?} do not shrink at the expected rate"
        );
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 180, "took {elapsed:?}");
    println!("[criterion 7] PASS — all |z| <= 5 and convergence ratios shrink, in {elapsed:?}");
}

/// Criterion 8: quadrature moments of the density match the non-crossing
/// sums to 1e-6, and the sampled Wishart spectrum reproduces the first two
/// Catalan moments within 3%.
#[test]
fn criterion_8_density_checks() {
    for &c in &[0.5f64, 1.0, 2.0, 5.0] {
        for p in 1..=5u32 {
            let quad = mp_moment_quadrature(p, c);
            let exact = mp_moment(p as usize).unwrap().eval(c, 1.0);
            assert!(
                (quad - exact).abs() <= 1e-6 * exact.max(1.0),
                "quadrature moment p={p}, c={c}: {quad} vs {exact}"
            );
        }
    }

    let spec = SpectrumSpec::BipartiteWishart { n: 64, m: 64 };
    let eigs = pooled_eigenvalues(&spec, 50, 515).unwrap();
    let m1: f64 = eigs.iter().sum::<f64>() / eigs.len() as f64;
    let m2: f64 = eigs.iter().map(|l| l * l).sum::<f64>() / eigs.len() as f64;
    assert!((m1 - 1.0).abs() < 0.03, "first spectral moment {m1}");
    assert!((m2 - 2.0).abs() < 0.06, "second spectral moment {m2}");
    // Upper spectral edge near (1 + √c)² = 4.
    let edge = eigs.iter().copied().fold(0.0, f64::max);
    assert!((3.5..4.6).contains(&edge), "spectral edge {edge}");
    println!(
        "[criterion 8] PASS — quadrature within 1e-6; spectral moments {m1:.4}, {m2:.4}, edge {edge:.3}"
    );
}
