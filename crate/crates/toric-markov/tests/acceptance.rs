//! End-to-end acceptance suite. Each test covers one numbered criterion,
//! asserts exact values (and the runtime ceiling), and prints a PASS line;
//! run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_markov::{
    canonical_sign, count_markov_from_seed, fiber_graph, generating_fibers,
    indispensable_from_seed, markov_bases_from_seed, random_markov_from_seed, seed_markov_basis,
    universal_from_seed, verify_markov_basis, ConfigMatrix, FiberKey, MarkovBasis,
};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_toric-markov")
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

fn run_ok(args: &[&str]) -> String {
    let (stdout, stderr, code) = run(args);
    assert_eq!(code, 0, "command {args:?} failed: {stderr}");
    stdout
}

fn parse_move_lines(text: &str) -> BTreeSet<Vec<i64>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse::<i64>().unwrap())
                .collect()
        })
        .collect()
}

fn parse_basis_blocks(text: &str) -> BTreeSet<BTreeSet<Vec<i64>>> {
    text.split("\n\n")
        .filter(|b| !b.trim().is_empty())
        .map(parse_move_lines)
        .collect()
}

fn canon(rows: &[&[i64]]) -> BTreeSet<Vec<i64>> {
    rows.iter().map(|r| canonical_sign(r.to_vec())).collect()
}

fn segre_rows() -> Vec<Vec<i64>> {
    // 27 columns indexed by (i,j,k) in {0,1,2}^3 as 9i + 3j + k; rows are
    // the total plus two indicator rows per axis.
    let mut rows = vec![vec![0i64; 27]; 7];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let c = 9 * i + 3 * j + k;
                rows[0][c] = 1;
                if i < 2 {
                    rows[1 + i][c] = 1;
                }
                if j < 2 {
                    rows[3 + j][c] = 1;
                }
                if k < 2 {
                    rows[5 + k][c] = 1;
                }
            }
        }
    }
    rows
}

fn segre_path() -> String {
    format!("{}/tests/data/segre.txt", env!("CARGO_MANIFEST_DIR"))
}

/// Degree-two exchange moves of the 3x3x3 rank-one tensor model: swapping
/// one coordinate between two cells fixes all margins. These generate the
/// toric ideal and serve as the externally supplied seed basis.
fn segre_exchange_moves() -> Vec<Vec<i64>> {
    let idx = |i: usize, j: usize, k: usize| 9 * i + 3 * j + k;
    let mut moves = BTreeSet::new();
    for a in 0..27 {
        for b in 0..27 {
            let (i1, j1, k1) = (a / 9, (a / 3) % 3, a % 3);
            let (i2, j2, k2) = (b / 9, (b / 3) % 3, b % 3);
            // swap each axis in turn
            let swaps = [
                (idx(i2, j1, k1), idx(i1, j2, k2)),
                (idx(i1, j2, k1), idx(i2, j1, k2)),
                (idx(i1, j1, k2), idx(i2, j2, k1)),
            ];
            for (c, d) in swaps {
                let mut z = vec![0i64; 27];
                z[a] += 1;
                z[b] += 1;
                z[c] -= 1;
                z[d] -= 1;
                if z.iter().any(|&v| v != 0) {
                    moves.insert(canonical_sign(z));
                }
            }
        }
    }
    moves.into_iter().collect()
}

#[test]
fn criterion_1_four_entry_row_count_and_enumeration() {
    let started = Instant::now();
    let count = run_ok(&["count", "7,8,9,10"]);
    assert_eq!(count.trim(), "4");

    let stdout = run_ok(&["bases", "7,8,9,10"]);
    let got = parse_basis_blocks(&stdout);
    let want: BTreeSet<_> = [
        canon(&[
            &[-1, 2, -1, 0],
            &[-1, 1, 1, -1],
            &[0, -1, 2, -1],
            &[4, 0, -2, -1],
            &[3, 1, -1, -2],
            &[3, 0, 1, -3],
        ]),
        canon(&[
            &[-1, 2, -1, 0],
            &[-1, 1, 1, -1],
            &[0, -1, 2, -1],
            &[4, 0, -2, -1],
            &[3, 1, -1, -2],
            &[2, 2, 0, -3],
        ]),
        canon(&[
            &[-1, 2, -1, 0],
            &[-1, 1, 1, -1],
            &[0, -1, 2, -1],
            &[4, -1, 0, -2],
            &[3, 1, -1, -2],
            &[3, 0, 1, -3],
        ]),
        canon(&[
            &[-1, 2, -1, 0],
            &[-1, 1, 1, -1],
            &[0, -1, 2, -1],
            &[4, -1, 0, -2],
            &[3, 1, -1, -2],
            &[2, 2, 0, -3],
        ]),
    ]
    .into_iter()
    .collect();
    assert_eq!(got, want);

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("criterion 1: PASS - count 4 and all four bases match ({elapsed:?})");
}

#[test]
fn criterion_2_six_entry_row() {
    let started = Instant::now();
    let count = run_ok(&["count", "51,52,53,54,55,56"]);
    assert_eq!(count.trim(), "24300");

    let ind = parse_move_lines(&run_ok(&["indispensable", "51,52,53,54,55,56"]));
    let want = canon(&[
        &[-1, 2, -1, 0, 0, 0],
        &[-1, 1, 1, -1, 0, 0],
        &[0, 0, -1, 1, 1, -1],
        &[0, 0, 0, -1, 2, -1],
    ]);
    assert_eq!(ind, want);

    let uni = parse_move_lines(&run_ok(&["universal", "51,52,53,54,55,56"]));
    assert_eq!(uni.len(), 33);
    assert!(want.is_subset(&uni));

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("criterion 2: PASS - count 24300, 4 indispensable, 33 universal ({elapsed:?})");
}

#[test]
fn criterion_3_segre_builtin_and_supplied_seed() {
    const COUNT: &str = "324518553658426726783156020576256";
    let path = segre_path();
    // The committed data file is exactly the indicator-row construction.
    let parsed = toric_markov::parse_matrix(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let from_rows: Vec<Vec<BigInt>> = segre_rows()
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    assert_eq!(parsed, from_rows);

    // Built-in completion engine end to end.
    let started = Instant::now();
    assert_eq!(run_ok(&["count", "--file", &path]).trim(), COUNT);
    let ind = parse_move_lines(&run_ok(&["indispensable", "--file", &path]));
    assert_eq!(ind.len(), 81);
    let uni = parse_move_lines(&run_ok(&["universal", "--file", &path]));
    assert_eq!(uni.len(), 243);
    assert!(ind.is_subset(&uni));
    let builtin = started.elapsed();
    assert!(builtin < Duration::from_secs(600), "took {builtin:?}");

    // Supplied seed basis route must reproduce the same numbers.
    let seed_file = std::env::temp_dir().join(format!(
        "toric-markov-segre-seed-{}.txt",
        std::process::id()
    ));
    let text: String = segre_exchange_moves()
        .iter()
        .map(|z| {
            z.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
                + "\n"
        })
        .collect();
    std::fs::write(&seed_file, text).unwrap();
    let seed_arg = seed_file.to_str().unwrap();

    let started = Instant::now();
    assert_eq!(
        run_ok(&["count", "--file", &path, "--seed-basis", seed_arg]).trim(),
        COUNT
    );
    let ind2 = parse_move_lines(&run_ok(&[
        "indispensable",
        "--file",
        &path,
        "--seed-basis",
        seed_arg,
    ]));
    let uni2 = parse_move_lines(&run_ok(&[
        "universal",
        "--file",
        &path,
        "--seed-basis",
        seed_arg,
    ]));
    let supplied = started.elapsed();
    assert_eq!(ind2, ind);
    assert_eq!(uni2, uni);
    assert!(supplied < Duration::from_secs(30), "took {supplied:?}");
    std::fs::remove_file(&seed_file).ok();

    println!(
        "criterion 3: PASS - count {COUNT}, 81 indispensable, 243 universal \
         (built-in {builtin:?}, supplied seed {supplied:?})"
    );
}

#[test]
fn criterion_4_running_example_with_binomials() {
    let started = Instant::now();

    let stdout = run_ok(&["bases", "1,2,3"]);
    let got = parse_basis_blocks(&stdout);
    let want: BTreeSet<_> = [
        canon(&[&[2, -1, 0], &[3, 0, -1]]),
        canon(&[&[2, -1, 0], &[1, 1, -1]]),
    ]
    .into_iter()
    .collect();
    assert_eq!(got, want);

    let uni = parse_move_lines(&run_ok(&["universal", "1,2,3"]));
    assert_eq!(uni, canon(&[&[2, -1, 0], &[3, 0, -1], &[1, 1, -1]]));

    let ind = parse_move_lines(&run_ok(&["indispensable", "1,2,3"]));
    assert_eq!(ind, canon(&[&[2, -1, 0]]));

    // Rendered binomials, x <-> x1, y <-> x2, z <-> x3.
    let stdout = run_ok(&["bases", "1,2,3", "--format", "binomials"]);
    let rendered: BTreeSet<BTreeSet<String>> = stdout
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(", ").map(str::to_string).collect())
        .collect();
    let expected: BTreeSet<BTreeSet<String>> = [
        ["x1^2 - x2".to_string(), "x1^3 - x3".to_string()]
            .into_iter()
            .collect(),
        ["x1^2 - x2".to_string(), "x1*x2 - x3".to_string()]
            .into_iter()
            .collect(),
    ]
    .into_iter()
    .collect();
    assert_eq!(rendered, expected);

    let ind_binomial = run_ok(&["indispensable", "1,2,3", "--format", "binomials"]);
    assert_eq!(ind_binomial.trim(), "x1^2 - x2");
    let uni_binomials: BTreeSet<String> = run_ok(&["universal", "1,2,3", "--format", "binomials"])
        .lines()
        .map(str::to_string)
        .collect();
    let expected_uni: BTreeSet<String> = ["x1^2 - x2", "x1^3 - x3", "x1*x2 - x3"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(uni_binomials, expected_uni);

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("criterion 4: PASS - both bases, universal, indispensable, binomials ({elapsed:?})");
}

#[test]
fn criterion_5_prufer_decode_and_round_trip() {
    let started = Instant::now();
    let stdout = run_ok(&["prufer", "--seq", "0,0,2,4", "--n", "6"]);
    assert_eq!(stdout.trim(), "{0,1} {0,3} {0,2} {2,4} {4,5}");

    // Round trip over every tree on up to 7 vertices, via the decode map
    // being a bijection from sequences to trees inverted by an encoder.
    fn encode(edges: &[(usize, usize)], n: usize) -> Vec<usize> {
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let mut seq = Vec::new();
        for _ in 0..n.saturating_sub(2) {
            let leaf = (0..n).find(|&v| adj[v].len() == 1).unwrap();
            let &nb = adj[leaf].iter().next().unwrap();
            seq.push(nb);
            adj[nb].remove(&leaf);
            adj[leaf].clear();
        }
        seq
    }
    for n in 2..=7usize {
        let total = (n as u64).pow(n as u32 - 2);
        let mut seq = vec![0usize; n - 2];
        let mut seen = BTreeSet::new();
        for _ in 0..total {
            let edges = toric_markov::prufer_tree(&seq, n).unwrap();
            assert_eq!(encode(&edges, n), seq);
            let tree: BTreeSet<(usize, usize)> = edges.into_iter().collect();
            assert!(seen.insert(tree));
            for i in (0..seq.len()).rev() {
                seq[i] += 1;
                if seq[i] < n {
                    break;
                }
                seq[i] = 0;
            }
        }
        assert_eq!(seen.len() as u64, total);
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("criterion 5: PASS - decode matches and round trip holds to n=7 ({elapsed:?})");
}

#[test]
fn criterion_6_random_one_row_property_suite() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut accepted = 0usize;
    let mut attempts = 0usize;
    while accepted < 20 {
        attempts += 1;
        assert!(attempts < 5000, "rejection sampling runaway");
        let n = rng.gen_range(3..=5usize);
        let entries: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=20i64)).collect();
        let g = entries
            .iter()
            .fold(0i64, |acc, &v| num_integer::Integer::gcd(&acc, &v));
        if g != 1 {
            continue;
        }
        let a = ConfigMatrix::from_rows(std::slice::from_ref(&entries)).unwrap();
        let seed = seed_markov_basis(&a).unwrap();
        let count = count_markov_from_seed(&a, &seed).unwrap();
        if count > num_bigint::BigUint::from(10_000u32) {
            continue;
        }
        let reference: Vec<FiberKey> = generating_fibers(&a, &seed)
            .unwrap()
            .iter()
            .map(|g| g.key().clone())
            .collect();

        let bases: Vec<MarkovBasis> = markov_bases_from_seed(&a, &seed).unwrap().collect();
        // (a) stream length equals the count, no duplicates
        assert_eq!(num_bigint::BigUint::from(bases.len()), count, "{entries:?}");
        let sets: BTreeSet<BTreeSet<Vec<i64>>> = bases.iter().map(|b| b.vector_set()).collect();
        assert_eq!(sets.len(), bases.len(), "{entries:?}");

        // (b) every emitted basis is a minimal Markov basis
        for b in &bases {
            let vectors: Vec<Vec<i64>> = b.moves().iter().map(|m| m.vector().to_vec()).collect();
            let v = verify_markov_basis(&a, &vectors, &reference).unwrap();
            assert!(v.generates && v.minimal, "{entries:?}");
        }

        // (c) intersection and union laws
        let mut iter = bases.iter();
        let first = iter.next().unwrap().vector_set();
        let (inter, union) = iter.fold((first.clone(), first), |(i, u), b| {
            let s = b.vector_set();
            (&i & &s, &u | &s)
        });
        assert_eq!(
            inter,
            indispensable_from_seed(&a, &seed).unwrap().vector_set(),
            "{entries:?}"
        );
        assert_eq!(
            union,
            universal_from_seed(&a, &seed).unwrap().vector_set(),
            "{entries:?}"
        );

        // (d) one degree multiset across the stream
        let degrees = bases[0].degree_multiset(&a);
        for b in &bases {
            assert_eq!(b.degree_multiset(&a), degrees, "{entries:?}");
        }
        accepted += 1;
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!("criterion 6: PASS - 20 random one-row matrices hold all four laws ({elapsed:?})");
}

#[test]
fn criterion_7_sampling_uniformity() {
    let started = Instant::now();

    // Exact: the sampler's outcome space, walked with rational probabilities,
    // is uniform over bases.
    for rows in [vec![1i64, 2, 3], vec![7, 8, 9, 10]] {
        let a = ConfigMatrix::from_rows(std::slice::from_ref(&rows)).unwrap();
        let seed = seed_markov_basis(&a).unwrap();
        let graphs = generating_fibers(&a, &seed).unwrap();
        let count = count_markov_from_seed(&a, &seed).unwrap();

        type Outcome = (BTreeSet<Vec<i64>>, BigRational);
        let mut dist: Vec<Outcome> = vec![(BTreeSet::new(), BigRational::one())];
        for g in &graphs {
            let sizes = g.component_sizes();
            let k = sizes.len();
            let total: usize = sizes.iter().sum();
            let elements = g.fiber().elements();
            let comps = g.components();
            let mut fiber_outcomes: Vec<Outcome> = Vec::new();
            let mut symbols = vec![0usize; k.saturating_sub(2)];
            loop {
                let mut p_sym = BigRational::one();
                for &s in &symbols {
                    p_sym *= BigRational::new((sizes[s] as i64).into(), (total as i64).into());
                }
                let mut edges = toric_markov::prufer_tree(&symbols, k).unwrap();
                edges.sort();
                let mut choice = vec![(0usize, 0usize); edges.len()];
                loop {
                    let mut set = BTreeSet::new();
                    let mut p = p_sym.clone();
                    for (e, &(ca, cb)) in edges.iter().enumerate() {
                        let (pa, pb) = choice[e];
                        let u = &elements[comps[ca][pa]];
                        let v = &elements[comps[cb][pb]];
                        set.insert(canonical_sign(
                            u.iter().zip(v).map(|(x, y)| x - y).collect(),
                        ));
                        p *= BigRational::new(
                            1.into(),
                            ((comps[ca].len() * comps[cb].len()) as i64).into(),
                        );
                    }
                    fiber_outcomes.push((set, p));
                    let mut done = true;
                    for e in (0..edges.len()).rev() {
                        let (ca, cb) = edges[e];
                        choice[e].1 += 1;
                        if choice[e].1 < comps[cb].len() {
                            done = false;
                            break;
                        }
                        choice[e].1 = 0;
                        choice[e].0 += 1;
                        if choice[e].0 < comps[ca].len() {
                            done = false;
                            break;
                        }
                        choice[e].0 = 0;
                    }
                    if done {
                        break;
                    }
                }
                let mut done = true;
                for i in (0..symbols.len()).rev() {
                    symbols[i] += 1;
                    if symbols[i] < k {
                        done = false;
                        break;
                    }
                    symbols[i] = 0;
                }
                if done {
                    break;
                }
            }
            let mut next = Vec::new();
            for (set, p) in &dist {
                for (s2, p2) in &fiber_outcomes {
                    let mut merged = set.clone();
                    merged.extend(s2.iter().cloned());
                    next.push((merged, p * p2));
                }
            }
            dist = next;
        }
        let mut by_basis: BTreeMap<BTreeSet<Vec<i64>>, BigRational> = BTreeMap::new();
        for (set, p) in dist {
            *by_basis.entry(set).or_insert_with(BigRational::zero) += p;
        }
        let expected = BigRational::new(BigInt::one(), BigInt::from(count.clone()));
        assert_eq!(num_bigint::BigUint::from(by_basis.len()), count, "{rows:?}");
        for p in by_basis.values() {
            assert_eq!(p, &expected, "{rows:?}");
        }
    }

    // Empirical: 4000 samples against uniform(4), chi-square at alpha=0.001
    // (three degrees of freedom, critical value 16.2662).
    let a = ConfigMatrix::from_rows(&[vec![7, 8, 9, 10]]).unwrap();
    let seed = seed_markov_basis(&a).unwrap();
    let all: Vec<BTreeSet<Vec<i64>>> = markov_bases_from_seed(&a, &seed)
        .unwrap()
        .map(|b| b.vector_set())
        .collect();
    assert_eq!(all.len(), 4);
    let samples = random_markov_from_seed(&a, &seed, 0, 4000).unwrap();
    let mut counts = vec![0usize; 4];
    for s in &samples {
        let set = s.vector_set();
        let idx = all
            .iter()
            .position(|b| b == &set)
            .expect("sample is one of the four");
        counts[idx] += 1;
    }
    let expected = 1000.0f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    assert!(stat < 16.2662, "chi-square {stat} counts {counts:?}");

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!(
        "criterion 7: PASS - exact uniformity and chi-square {stat:.3} < 16.2662 ({elapsed:?})"
    );
}

#[test]
fn criterion_8_oracle_equivalence_on_one_row_matrices() {
    let started = Instant::now();

    /// Independent route: enumerate each fiber by brute force over the box,
    /// build the explicit shared-support edge graph, and take components by
    /// breadth-first search.
    fn oracle_components(entries: &[i64], degree: i64) -> Vec<usize> {
        let n = entries.len();
        let mut elements: Vec<Vec<i64>> = Vec::new();
        let mut u = vec![0i64; n];
        'outer: loop {
            let dot: i64 = entries.iter().zip(&u).map(|(a, b)| a * b).sum();
            if dot == degree {
                elements.push(u.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                u[i] += 1;
                if entries[i] * u[i] <= degree {
                    break;
                }
                u[i] = 0;
            }
        }
        let m = elements.len();
        let mut adj = vec![Vec::new(); m];
        for x in 0..m {
            for y in x + 1..m {
                if elements[x]
                    .iter()
                    .zip(&elements[y])
                    .any(|(&a, &b)| a > 0 && b > 0)
                {
                    adj[x].push(y);
                    adj[y].push(x);
                }
            }
        }
        let mut seen = vec![false; m];
        let mut sizes = Vec::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            let mut queue = vec![s];
            seen[s] = true;
            let mut size = 0;
            while let Some(v) = queue.pop() {
                size += 1;
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push(w);
                    }
                }
            }
            sizes.push(size);
        }
        sizes.sort();
        sizes
    }

    let matrices: [&[i64]; 10] = [
        &[1, 2, 3],
        &[2, 3, 7],
        &[7, 8, 9, 10],
        &[4, 6, 9],
        &[5, 7, 11],
        &[2, 3, 4, 5],
        &[8, 9, 12],
        &[6, 10, 15],
        &[3, 4, 5, 12],
        &[11, 12],
    ];
    for entries in matrices {
        let a = ConfigMatrix::from_rows(&[entries.to_vec()]).unwrap();
        let seed = seed_markov_basis(&a).unwrap();
        let minimal = toric_markov::minimize(&a, &seed).unwrap();

        // Implementation-side structure: moves per degree and graph sizes.
        let mut by_degree: BTreeMap<i64, usize> = BTreeMap::new();
        for m in minimal.moves() {
            let d = a.key_degree(m.key()).to_i64().unwrap();
            *by_degree.entry(d).or_insert(0) += 1;
        }
        let dmax = by_degree.keys().max().copied().unwrap_or(0);
        let margin = entries.iter().max().copied().unwrap();

        // Oracle: every disconnected fiber up to dmax plus a margin.
        let mut oracle: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for d in 1..=dmax + margin {
            let sizes = oracle_components(entries, d);
            if sizes.len() >= 2 {
                oracle.insert(d, sizes);
            }
        }

        // Same generating degrees, no strays in the margin.
        let oracle_degrees: BTreeSet<i64> = oracle.keys().copied().collect();
        let impl_degrees: BTreeSet<i64> = by_degree.keys().copied().collect();
        assert_eq!(oracle_degrees, impl_degrees, "{entries:?}");

        for (d, sizes) in &oracle {
            // Component count and sizes match the cached fiber graph.
            let g = fiber_graph(&a, &FiberKey::from_i64(&[*d])).unwrap();
            let mut got_sizes = g.component_sizes().to_vec();
            got_sizes.sort();
            assert_eq!(&got_sizes, sizes, "{entries:?} degree {d}");
            // A minimal basis holds components-minus-one moves per fiber.
            assert_eq!(by_degree[d], sizes.len() - 1, "{entries:?} degree {d}");
        }
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("criterion 8: PASS - minimized seeds match the box-and-BFS oracle ({elapsed:?})");
}
