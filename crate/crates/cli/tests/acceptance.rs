//! Acceptance suite: one check per criterion, each printing a PASS/FAIL line.
//! Runs without the test harness: `cargo test -p parthom --test acceptance`.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use parthom_core::combinatorics::{d_count, enumerate_d_njk, stirling2};
use parthom_core::cycles::{self, RepresentativeChoice};
use parthom_core::homology::{self, BoundarySolver};
use parthom_core::shelling::{self, TieBreak};
use parthom_core::{PartialPartition, SimplicialComplex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// All set partitions of `{1..n}` built by inserting elements one at a time,
/// as sorted lists of sorted blocks.
fn partitions_by_insertion(n: u32) -> Vec<Vec<Vec<u32>>> {
    let mut parts: Vec<Vec<Vec<u32>>> = vec![vec![]];
    for x in 1..=n {
        let mut next = Vec::new();
        for p in &parts {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        parts = next;
    }
    parts
}

/// Bell numbers from the Bell triangle.
fn bell_triangle(max: usize) -> Vec<u64> {
    let mut bells = vec![1u64];
    let mut row = vec![1u64];
    for _ in 0..max {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        bells.push(next[0]);
        row = next;
    }
    bells
}

fn to_pp(p: &[Vec<u32>]) -> PartialPartition {
    let masks: Vec<u32> = p.iter().map(|b| b.iter().map(|x| 1 << (x - 1)).sum()).collect();
    PartialPartition::from_masks(&masks).unwrap()
}

fn dn(n: usize) -> SimplicialComplex {
    SimplicialComplex::partial_partitions(n).unwrap()
}

fn non_singleton_faces(n: usize) -> Vec<PartialPartition> {
    (1..=n).flat_map(|j| enumerate_d_njk(n, j, j).unwrap()).collect()
}

fn random_choice(f: &PartialPartition, rng: &mut ChaCha8Rng) -> RepresentativeChoice {
    let picks: Vec<u32> = f
        .blocks()
        .iter()
        .map(|b| *b.elements().collect::<Vec<_>>().choose(rng).unwrap())
        .collect();
    RepresentativeChoice::from_elements(f, &picks).unwrap()
}

fn criterion_1() -> Outcome {
    for n in 1..=7 {
        let snf = homology::reduced_betti(&dn(n));
        let formula: Vec<BigUint> = (1..=n as isize).map(|j| d_count(n, j, j)).collect();
        ensure(snf == formula, || format!("n={n}: snf {snf:?} vs formula {formula:?}"))?;
    }
    let d4: Vec<u64> = homology::reduced_betti(&dn(4)).iter().map(|b| b.try_into().unwrap()).collect();
    ensure(d4 == [1, 3, 0, 0], || format!("D_4 gave {d4:?}"))?;
    let d3: Vec<u64> = homology::reduced_betti(&dn(3)).iter().map(|b| b.try_into().unwrap()).collect();
    ensure(d3 == [1, 0, 0], || format!("D_3 gave {d3:?}"))?;
    Ok("reduced Betti = (D(n,j,j))_j for n = 1..7; D_4 = (1,3,0,0), D_3 = (1,0,0)".into())
}

fn criterion_2() -> Outcome {
    let bells = bell_triangle(8);
    for (n, &bell) in bells.iter().enumerate() {
        let parts = partitions_by_insertion(n as u32);
        let mut total = BigUint::default();
        for j in 0..=n {
            let mut row = BigUint::default();
            for k in 0..=j {
                let brute = parts
                    .iter()
                    .filter(|p| p.len() == j && p.iter().filter(|b| b.len() > 1).count() == k)
                    .count();
                let value = d_count(n, j as isize, k as isize);
                ensure(value == BigUint::from(brute), || format!("D({n},{j},{k}) = {value}, brute {brute}"))?;
                row += value;
            }
            ensure(row == stirling2(n, j as isize), || format!("row sum n={n} j={j}"))?;
            total += row;
        }
        ensure(total == BigUint::from(bell), || format!("total n={n}"))?;
    }
    Ok("D(n,j,k) matches insertion enumeration for 0 <= k <= j <= n <= 8; sums give S(n,j) and B(n)".into())
}

fn criterion_3() -> Outcome {
    for n in 0..=6 {
        let c = dn(n);
        for tb in [TieBreak::Lex, TieBreak::RevLex] {
            let order = shelling::default_shelling_order(n, tb).unwrap();
            ensure(shelling::verify_shelling_definition(&c, order.facets()).unwrap().is_shelling(), || {
                format!("definition check failed at n={n}")
            })?;
            ensure(shelling::verify_shelling_lemma(&c, order.facets()).unwrap().is_shelling(), || {
                format!("lemma check failed at n={n}")
            })?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (mut trials, mut rejected) = (0, 0);
    for n in 1..=5 {
        let c = dn(n);
        let base = shelling::default_shelling_order(n, TieBreak::Lex).unwrap().into_facets();
        for trial in 0..24 {
            let mut order = base.clone();
            if trial % 2 == 0 {
                order.shuffle(&mut rng);
            } else {
                let a = rng.gen_range(0..order.len());
                let b = rng.gen_range(0..order.len());
                order.swap(a, b);
            }
            let def = shelling::verify_shelling_definition(&c, &order).unwrap();
            let lem = shelling::verify_shelling_lemma(&c, &order).unwrap();
            ensure(def == lem, || format!("checkers disagree at n={n} trial={trial}: {def:?} vs {lem:?}"))?;
            trials += 1;
            if !def.is_shelling() {
                rejected += 1;
            }
        }
    }
    ensure(rejected > 0 && rejected < trials, || "perturbations did not exercise both outcomes".into())?;
    Ok(format!("default order shells D_n for n <= 6; checkers agree on {trials} perturbed orders ({rejected} rejected)"))
}

fn criterion_4() -> Outcome {
    for n in 0..=6usize {
        let lex = shelling::gamma_table(shelling::default_shelling_order(n, TieBreak::Lex).unwrap().facets());
        let rev = shelling::gamma_table(shelling::default_shelling_order(n, TieBreak::RevLex).unwrap().facets());
        let parts = partitions_by_insertion(n as u32);
        for j in 0..=n {
            for k in 0..=j {
                let got: BTreeSet<_> = lex.cell(j, k).iter().cloned().collect();
                let want: BTreeSet<_> = parts
                    .iter()
                    .filter(|p| p.len() == j && p.iter().filter(|b| b.len() > 1).count() == k)
                    .map(|p| to_pp(p))
                    .collect();
                ensure(got == want, || format!("Gamma({j},{k}) differs at n={n}"))?;
                let got_rev: BTreeSet<_> = rev.cell(j, k).iter().cloned().collect();
                ensure(got == got_rev, || format!("tie-break changes Gamma({j},{k}) at n={n}"))?;
            }
        }
    }
    Ok("Gamma(j,k) = D_{n,j,k} for n <= 6 under both tie-breaks".into())
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for n in 1..=6 {
        for f in non_singleton_faces(n) {
            let j = f.len();
            let choice = RepresentativeChoice::canonical(&f);
            let sigma = cycles::sigma_chain(&f, &choice).unwrap();
            ensure(sigma.boundary().is_zero(), || format!("boundary of sigma_{f} is nonzero"))?;
            ensure(sigma.terms().all(|(_, c)| c == &1.into() || c == &(-1).into()), || {
                format!("sigma_{f} has a non-unit coefficient")
            })?;
            ensure(sigma.len() == 1 << j, || format!("sigma_{f} has {} terms", sigma.len()))?;
            let full = sigma
                .support()
                .filter(|g| g.is_partition_of(n) && g.blocks().iter().all(|b| b.len() > 1))
                .count();
            ensure(full == 1, || format!("sigma_{f} meets D_(n,j,j) {full} times"))?;
            let closure = cycles::ho_closure(&f, &choice).unwrap().face_count();
            ensure(closure == 3usize.pow(j as u32), || format!("closure of HO({f}) has {closure} faces"))?;
            count += 1;
        }
    }
    Ok(format!("{count} cycles sigma_F for n <= 6 are unit-coefficient cycles on 2^j facets with 3^j closure faces"))
}

fn criterion_6() -> Outcome {
    let mut exhaustive = 0;
    for n in 1..=5 {
        for f in non_singleton_faces(n) {
            for choice in RepresentativeChoice::all(&f) {
                ensure(cycles::verify_crosspolytope_iso(&f, &choice).unwrap(), || format!("iso fails for {f}"))?;
                exhaustive += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let fs = non_singleton_faces(6);
    for _ in 0..60 {
        let f = &fs[rng.gen_range(0..fs.len())];
        let choice = random_choice(f, &mut rng);
        ensure(cycles::verify_crosspolytope_iso(f, &choice).unwrap(), || format!("iso fails for {f} at n=6"))?;
    }
    Ok(format!("cross-polytope isomorphism holds for {exhaustive} (F, choice) pairs at n <= 5 and 60 samples at n = 6"))
}

fn criterion_7() -> Outcome {
    for n in 1..=6 {
        let c = dn(n);
        let h = homology::integral_homology(&c);
        for j in 1..=n {
            let r = cycles::verify_basis_with(&c, &h, j).unwrap();
            ensure(r.verified(), || format!("basis check fails at n={n}, j={j}: {r:?}"))?;
            let want = match (n, j) {
                (4, 2) => Some(3),
                (6, 3) => Some(15),
                _ => None,
            };
            if let Some(w) = want {
                ensure(r.quotient_rank == w, || format!("quotient rank {} at ({n},{j})", r.quotient_rank))?;
            }
        }
    }
    Ok("cycles form a basis for all 1 <= j <= n <= 6; quotient rank 3 at (4,2), 15 at (6,3)".into())
}

fn criterion_8() -> Outcome {
    let mut exhaustive = 0;
    for n in 1..=5 {
        let c = dn(n);
        for j in 1..=n {
            let solver = BoundarySolver::new(&c, j as isize - 1);
            for f in enumerate_d_njk(n, j, j).unwrap() {
                let all = RepresentativeChoice::all(&f);
                for a in &all {
                    for b in &all {
                        ensure(cycles::choice_difference_is_boundary(&solver, &f, a, b).unwrap(), || {
                            format!("choices differ by a non-boundary for {f}")
                        })?;
                        exhaustive += 1;
                    }
                }
            }
        }
    }
    let c = dn(6);
    let fs = non_singleton_faces(6);
    let solvers: Vec<_> = (0..3).map(|d| BoundarySolver::new(&c, d)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..60 {
        let f = &fs[rng.gen_range(0..fs.len())];
        let a = random_choice(f, &mut rng);
        let b = random_choice(f, &mut rng);
        let solver = &solvers[f.len() - 1];
        ensure(cycles::choice_difference_is_boundary(solver, f, &a, &b).unwrap(), || {
            format!("sampled choices differ by a non-boundary for {f}")
        })?;
    }
    Ok(format!("sigma_F(a) - sigma_F(b) is a boundary for {exhaustive} pairs at n <= 5 and 60 samples at n = 6"))
}

fn criterion_9() -> Outcome {
    let bells = bell_triangle(8);
    for n in 0..=7 {
        let c = dn(n);
        ensure(c.face_count() as u64 == bells[n + 1], || format!("|D_{n}| = {}", c.face_count()))?;
        if n > 6 {
            continue;
        }
        for d in 0..=c.dim() {
            let lower = homology::boundary_matrix(&c, d).matrix;
            let upper = homology::boundary_matrix(&c, d + 1).matrix;
            ensure(lower.mul(&upper).is_zero(), || format!("boundary squared nonzero at n={n}, d={d}"))?;
        }
        let h = homology::integral_homology(&c);
        for d in -1..=c.dim() {
            ensure(h.torsion(d).is_empty(), || format!("torsion at n={n}, d={d}"))?;
        }
        // Alternating sums computed independently: faces by dimension versus Betti numbers.
        let from_faces: i64 = c
            .f_vector()
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 1 { f as i64 } else { -(f as i64) })
            .sum();
        let reduced_minus_one: i64 = (&h.betti(-1)).try_into().unwrap();
        let mut from_betti = -reduced_minus_one;
        for (d, b) in h.betti_vector().iter().enumerate() {
            let b: i64 = b.try_into().unwrap();
            from_betti += if d % 2 == 0 { b } else { -b };
        }
        ensure(from_faces == from_betti, || format!("Euler characteristic mismatch at n={n}"))?;
        if n == 4 {
            ensure(from_faces == -2, || format!("D_4 reduced Euler characteristic {from_faces}"))?;
        }
    }
    Ok("boundary squared = 0, no torsion, Euler characteristics agree for n <= 6 (D_4: -2); |D_n| = B(n+1) for n <= 7".into())
}

fn parthom(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_parthom"))
        .env_remove("PARTHOM_MAX_N")
        .args(args)
        .output()
        .expect("binary runs")
}

fn criterion_10() -> Outcome {
    let status = |args: &[&str]| parthom(args).status.code();
    ensure(status(&["selftest", "--n-max", "5"]) == Some(0), || "selftest --n-max 5 did not exit 0".into())?;
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/d3_boundary_1_corrupted.json");
    ensure(
        status(&["selftest", "--n-max", "5", "--boundary-fixture", fixture]) == Some(1),
        || "corrupted boundary fixture did not exit 1".into(),
    )?;
    for bad in [&["betti"][..], &["betti", "--n", "four"], &["shelling", "--n", "3", "--check", "x"], &["nope"]] {
        ensure(status(bad) == Some(2), || format!("{bad:?} did not exit 2"))?;
    }
    for args in [
        &["selftest", "--n-max", "5", "--format", "json"][..],
        &["basis", "--n", "5", "--verify-iso", "--format", "json"],
        &["betti", "--n", "6", "--format", "json"],
    ] {
        let (a, b) = (parthom(args).stdout, parthom(args).stdout);
        ensure(!a.is_empty() && a == b, || format!("{args:?} output is not byte-stable"))?;
    }
    Ok("selftest exits 0, corrupted fixture exits 1, malformed flags exit 2, JSON is byte-stable".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "Betti identity", criterion_1, 30 + 600),
        (2, "formula oracle", criterion_2, 10),
        (3, "shellability", criterion_3, 120),
        (4, "Gamma identity", criterion_4, 120),
        (5, "cycle construction", criterion_5, 60),
        (6, "cross-polytope isomorphism", criterion_6, 60),
        (7, "basis", criterion_7, 300),
        (8, "choice independence", criterion_8, 300),
        (9, "structural properties", criterion_9, 60),
        (10, "CLI contract", criterion_10, 120),
    ];
    let mut failures = Vec::new();
    for (id, name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > Duration::from_secs(budget) => {
                Err(format!("{msg}; took {elapsed:.1?}, budget {budget} s"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {id:>2} ({name}): {msg} [{elapsed:.2?}]"),
            Err(msg) => {
                println!("FAIL criterion {id:>2} ({name}): {msg} [{elapsed:.2?}]");
                failures.push(id);
            }
        }
    }
    if failures.is_empty() {
        println!("acceptance: all 10 criteria passed");
    } else {
        println!("acceptance: failed criteria {failures:?}");
        std::process::exit(1);
    }
}
