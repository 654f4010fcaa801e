//! Runs every verification at small `n` and reports one entry per check.

use std::path::Path;

use num_bigint::{BigInt, BigUint};
use parthom_core::combinatorics::{bell, d_count, enumerate_d_njk, stirling2};
use parthom_core::cycles::{self, RepresentativeChoice};
use parthom_core::homology::{self, BoundarySolver, IntMatrix};
use parthom_core::shelling::{self, TieBreak};
use parthom_core::{PartialPartition, SimplicialComplex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::commands::{self, guard, random_choice, BASIS_MAX_N, BRUTE_FORCE_MAX_N};
use crate::error::{CliError, CliResult};
use crate::json;
use crate::report::Report;

/// Largest `n` at which representative choices are enumerated exhaustively.
const EXHAUSTIVE_CHOICE_MAX_N: usize = 5;
const PERTURBED_ORDERS: usize = 20;

pub struct SelftestConfig<'a> {
    pub n_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub boundary_fixture: Option<&'a Path>,
}

struct Check {
    name: &'static str,
    passed: bool,
    detail: Value,
}

pub fn cmd_selftest(cfg: &SelftestConfig<'_>) -> CliResult<Report> {
    guard(cfg.n_max, BASIS_MAX_N, "selftest")?;
    // Parse the fixture before running anything, so a bad file is a usage error.
    let fixture = cfg.boundary_fixture.map(load_fixture).transpose()?;

    let mut complexes = Vec::new();
    for n in 0..=cfg.n_max {
        let dn = SimplicialComplex::partial_partitions(n)?;
        let h = homology::integral_homology(&dn);
        complexes.push((dn, h));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut checks = vec![
        betti_identity(&complexes),
        formula_oracle()?,
        shellability(&complexes, &mut rng)?,
        gamma_identity(cfg.n_max)?,
        cycle_construction(cfg.n_max)?,
        crosspolytope(cfg, &mut rng)?,
        basis(&complexes)?,
        choice_independence(cfg, &complexes, &mut rng)?,
        structure(&complexes),
    ];
    if let Some(fx) = fixture {
        checks.push(boundary_fixture(&fx)?);
    }

    let verified = checks.iter().all(|c| c.passed);
    let results: Vec<Value> = checks
        .into_iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    let inputs = json!({
        "nMax": cfg.n_max,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "boundaryFixture": cfg.boundary_fixture.map(|p| p.display().to_string()),
    });
    Ok(Report::new("selftest", inputs, json!({ "checks": results }), verified))
}

type Complexes = [(SimplicialComplex, homology::Homology)];

fn betti_identity(cs: &Complexes) -> Check {
    let mut passed = true;
    let mut detail = serde_json::Map::new();
    for (dn, h) in cs.iter().skip(1) {
        let n = dn.ground_size();
        let snf = h.betti_vector();
        let formula = commands::formula_betti(n);
        passed &= snf == formula;
        detail.insert(n.to_string(), json::ints(&snf));
    }
    Check { name: "bettiIdentity", passed, detail: Value::Object(detail) }
}

fn formula_oracle() -> CliResult<Check> {
    let mut passed = true;
    let mut cases = 0usize;
    for n in 0..=BRUTE_FORCE_MAX_N {
        let mut total = BigUint::default();
        for j in 0..=n {
            let mut row = BigUint::default();
            for k in 0..=j {
                let value = d_count(n, j as isize, k as isize);
                passed &= BigUint::from(enumerate_d_njk(n, j, k)?.len()) == value;
                row += &value;
                cases += 1;
            }
            passed &= row == stirling2(n, j as isize);
            total += row;
        }
        passed &= total == bell(n);
    }
    Ok(Check { name: "formulaOracle", passed, detail: json!({ "cases": cases }) })
}

fn perturb(base: &[PartialPartition], trial: usize, rng: &mut ChaCha8Rng) -> Vec<PartialPartition> {
    let mut order = base.to_vec();
    if trial % 4 == 3 {
        order.shuffle(rng);
    } else {
        for _ in 0..=trial % 3 {
            let a = rng.gen_range(0..order.len());
            let b = rng.gen_range(0..order.len());
            order.swap(a, b);
        }
    }
    order
}

fn shellability(cs: &Complexes, rng: &mut ChaCha8Rng) -> CliResult<Check> {
    let mut passed = true;
    let (mut perturbed, mut agreed, mut rejected) = (0usize, 0usize, 0usize);
    for (dn, _) in cs.iter().skip(1) {
        let n = dn.ground_size();
        for tb in [TieBreak::Lex, TieBreak::RevLex] {
            let order = shelling::default_shelling_order(n, tb)?;
            passed &= shelling::verify_shelling_definition(dn, order.facets())?.is_shelling();
            passed &= shelling::verify_shelling_lemma(dn, order.facets())?.is_shelling();
        }
        if n > EXHAUSTIVE_CHOICE_MAX_N {
            continue;
        }
        let base = shelling::default_shelling_order(n, TieBreak::Lex)?.into_facets();
        for trial in 0..PERTURBED_ORDERS {
            let order = perturb(&base, trial, rng);
            let def = shelling::verify_shelling_definition(dn, &order)?;
            let lem = shelling::verify_shelling_lemma(dn, &order)?;
            perturbed += 1;
            if def == lem {
                agreed += 1;
            }
            if !def.is_shelling() {
                rejected += 1;
            }
        }
    }
    passed &= agreed == perturbed;
    let detail = json!({ "perturbed": perturbed, "agreed": agreed, "rejected": rejected });
    Ok(Check { name: "shellability", passed, detail })
}

fn gamma_identity(n_max: usize) -> CliResult<Check> {
    let mut passed = true;
    for n in 0..=n_max {
        let lex = shelling::gamma_table(shelling::default_shelling_order(n, TieBreak::Lex)?.facets());
        let rev =
            shelling::gamma_table(shelling::default_shelling_order(n, TieBreak::RevLex)?.facets());
        passed &= shelling::gamma_matches_d_njk(n, &lex)?;
        passed &= lex.normalized() == rev.normalized();
    }
    Ok(Check { name: "gammaIdentity", passed, detail: json!({ "nMax": n_max }) })
}

fn non_singleton_faces(n: usize) -> CliResult<Vec<PartialPartition>> {
    let mut out = Vec::new();
    for j in 1..=n {
        out.extend(enumerate_d_njk(n, j, j)?);
    }
    Ok(out)
}

fn cycle_construction(n_max: usize) -> CliResult<Check> {
    let mut passed = true;
    let mut checked = 0usize;
    for n in 1..=n_max {
        for f in non_singleton_faces(n)? {
            let c = cycles::check_cycle(n, &f, &RepresentativeChoice::canonical(&f))?;
            passed &= c.passes(f.len());
            checked += 1;
        }
    }
    Ok(Check { name: "cycleConstruction", passed, detail: json!({ "cycles": checked }) })
}

fn crosspolytope(cfg: &SelftestConfig<'_>, rng: &mut ChaCha8Rng) -> CliResult<Check> {
    let mut passed = true;
    let (mut exhaustive, mut sampled) = (0usize, 0usize);
    for n in 1..=cfg.n_max {
        let fs = non_singleton_faces(n)?;
        if n <= EXHAUSTIVE_CHOICE_MAX_N {
            for f in &fs {
                for choice in RepresentativeChoice::all(f) {
                    passed &= cycles::verify_crosspolytope_iso(f, &choice)?;
                    exhaustive += 1;
                }
            }
        } else {
            for _ in 0..cfg.samples {
                let f = &fs[rng.gen_range(0..fs.len())];
                passed &= cycles::verify_crosspolytope_iso(f, &random_choice(f, rng)?)?;
                sampled += 1;
            }
        }
    }
    let detail = json!({ "exhaustive": exhaustive, "sampled": sampled });
    Ok(Check { name: "crossPolytopeIso", passed, detail })
}

fn basis(cs: &Complexes) -> CliResult<Check> {
    let mut passed = true;
    let mut ranks = serde_json::Map::new();
    for (dn, h) in cs.iter().skip(1) {
        let n = dn.ground_size();
        let mut row = Vec::new();
        for j in 1..=n {
            let r = cycles::verify_basis_with(dn, h, j)?;
            passed &= r.verified();
            row.push(r.quotient_rank);
        }
        ranks.insert(n.to_string(), Value::from(row));
    }
    Ok(Check { name: "basis", passed, detail: json!({ "quotientRanks": ranks }) })
}

fn choice_independence(
    cfg: &SelftestConfig<'_>,
    cs: &Complexes,
    rng: &mut ChaCha8Rng,
) -> CliResult<Check> {
    let mut passed = true;
    let (mut exhaustive, mut sampled) = (0usize, 0usize);
    for (dn, _) in cs.iter().skip(1) {
        let n = dn.ground_size();
        for j in 1..=n {
            let fs = enumerate_d_njk(n, j, j)?;
            if fs.is_empty() {
                continue;
            }
            let solver = BoundarySolver::new(dn, j as isize - 1);
            if n <= EXHAUSTIVE_CHOICE_MAX_N {
                for f in &fs {
                    let all = RepresentativeChoice::all(f);
                    for a in &all {
                        for b in &all {
                            passed &= cycles::choice_difference_is_boundary(&solver, f, a, b)?;
                            exhaustive += 1;
                        }
                    }
                }
            } else {
                // Spread the sample budget over the levels that have cycles.
                let per_level = cfg.samples.div_ceil(n / 2);
                for _ in 0..per_level {
                    let f = &fs[rng.gen_range(0..fs.len())];
                    let a = random_choice(f, rng)?;
                    let b = random_choice(f, rng)?;
                    passed &= cycles::choice_difference_is_boundary(&solver, f, &a, &b)?;
                    sampled += 1;
                }
            }
        }
    }
    let detail = json!({ "exhaustive": exhaustive, "sampled": sampled });
    Ok(Check { name: "choiceIndependence", passed, detail })
}

fn structure(cs: &Complexes) -> Check {
    let mut passed = true;
    let mut euler = serde_json::Map::new();
    for (dn, h) in cs {
        let n = dn.ground_size();
        for d in 0..=dn.dim() {
            let lower = homology::boundary_matrix(dn, d).matrix;
            let upper = homology::boundary_matrix(dn, d + 1).matrix;
            passed &= lower.mul(&upper).is_zero();
            passed &= h.torsion(d).is_empty();
        }
        let from_faces = homology::reduced_euler_from_faces(dn);
        passed &= from_faces == h.euler_characteristic();
        passed &= BigUint::from(dn.face_count()) == bell(n + 1);
        euler.insert(n.to_string(), json::int(from_faces));
    }
    Check { name: "structure", passed, detail: json!({ "eulerReduced": euler }) }
}

struct Fixture {
    n: usize,
    d: isize,
    matrix: IntMatrix,
}

fn fixture_error(path: &Path, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("invalid boundary fixture {}: {msg}", path.display()))
}

fn load_fixture(path: &Path) -> CliResult<Fixture> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let v: Value = serde_json::from_str(&text).map_err(|e| fixture_error(path, e))?;
    let field = |k: &str| v.get(k).ok_or_else(|| fixture_error(path, format!("missing \"{k}\"")));
    let uint = |k: &str| -> CliResult<usize> {
        field(k)?
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| fixture_error(path, format!("\"{k}\" is not a nonnegative integer")))
    };
    let (n, rows, cols) = (uint("n")?, uint("rows")?, uint("cols")?);
    let d = field("d")?
        .as_i64()
        .ok_or_else(|| fixture_error(path, "\"d\" is not an integer"))? as isize;
    let entries = field("entries")?
        .as_array()
        .ok_or_else(|| fixture_error(path, "\"entries\" is not an array"))?;
    let mut triplets = Vec::with_capacity(entries.len());
    for e in entries {
        let parsed = e.as_array().filter(|a| a.len() == 3).and_then(|a| {
            let r = a[0].as_u64()? as usize;
            let c = a[1].as_u64()? as usize;
            let val: BigInt = a[2].to_string().parse().ok()?;
            (r < rows && c < cols).then_some((r, c, val))
        });
        triplets.push(parsed.ok_or_else(|| fixture_error(path, format!("bad entry {e}")))?);
    }
    Ok(Fixture { n, d, matrix: IntMatrix::from_triplets(rows, cols, triplets) })
}

/// Substitutes the fixture for `∂_d` of `D_n` and checks that its shape fits
/// and that it composes to zero with its neighbours.
fn boundary_fixture(fx: &Fixture) -> CliResult<Check> {
    guard(fx.n, commands::HOMOLOGY_MAX_N, "boundary fixture")?;
    let dn = SimplicialComplex::partial_partitions(fx.n)?;
    let expected = homology::boundary_matrix(&dn, fx.d).matrix;
    let shape_ok = expected.nrows() == fx.matrix.nrows() && expected.ncols() == fx.matrix.ncols();
    let (mut below, mut above) = (false, false);
    if shape_ok {
        below = homology::boundary_matrix(&dn, fx.d - 1).matrix.mul(&fx.matrix).is_zero();
        above = fx.matrix.mul(&homology::boundary_matrix(&dn, fx.d + 1).matrix).is_zero();
    }
    let detail = json!({
        "n": fx.n,
        "d": fx.d,
        "shape": shape_ok,
        "composesBelow": below,
        "composesAbove": above,
        "matchesComputed": expected == fx.matrix,
    });
    Ok(Check { name: "boundaryFixture", passed: shape_ok && below && above, detail })
}
