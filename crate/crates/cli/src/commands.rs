//! One function per subcommand, each producing a [`Report`].

use std::path::Path;

use clap::ValueEnum;
use num_bigint::BigUint;
use parthom_core::combinatorics::{d_count, enumerate_d_njk};
use parthom_core::cycles::{self, RepresentativeChoice};
use parthom_core::homology::{self, BoundarySolver};
use parthom_core::shelling::{self, TieBreak};
use parthom_core::{limits, PartialPartition, SimplicialComplex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::json;
use crate::report::Report;

/// Largest `n` for which `formula` also enumerates partitions by brute force.
pub const BRUTE_FORCE_MAX_N: usize = 8;
pub const HOMOLOGY_MAX_N: usize = 7;
pub const SHELLING_MAX_N: usize = 7;
pub const BASIS_MAX_N: usize = 6;
pub const EXPORT_MAX_N: usize = 9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Snf,
    #[default]
    Both,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Definition,
    Lemma,
    #[default]
    Both,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum TieBreakArg {
    #[default]
    Lex,
    Revlex,
}

impl From<TieBreakArg> for TieBreak {
    fn from(t: TieBreakArg) -> Self {
        match t {
            TieBreakArg::Lex => TieBreak::Lex,
            TieBreakArg::Revlex => TieBreak::RevLex,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportWhat {
    Complex,
    Report,
    Boundary,
}

/// The ceiling for a command: `PARTHOM_MAX_N` when set, else `default`.
pub fn ceiling(default: usize) -> usize {
    match std::env::var(limits::MAX_N_ENV).ok().and_then(|v| v.trim().parse().ok()) {
        Some(v) => usize::min(v, limits::HARD_MAX_N),
        None => default,
    }
}

pub fn guard(n: usize, default: usize, what: &'static str) -> CliResult<()> {
    let max = ceiling(default);
    if n > max {
        return Err(CliError::Ceiling { n, max, what });
    }
    Ok(())
}

fn label(v: impl ValueEnum) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

pub fn cmd_formula(n: usize, j: usize, k: usize) -> CliResult<Report> {
    guard(n, limits::DEFAULT_MAX_N, "formula")?;
    let value = d_count(n, j as isize, k as isize);
    let mut results = json!({ "value": json::int(&value) });
    let mut verified = true;
    if n <= BRUTE_FORCE_MAX_N {
        let brute = if k <= j && j <= n { enumerate_d_njk(n, j, k)?.len() } else { 0 };
        let matches = BigUint::from(brute) == value;
        results["bruteForce"] = json::int(brute);
        results["match"] = Value::from(matches);
        verified = matches;
    }
    Ok(Report::new("formula", json!({ "n": n, "j": j, "k": k }), results, verified))
}

pub fn formula_betti(n: usize) -> Vec<BigUint> {
    (1..=n as isize).map(|j| d_count(n, j, j)).collect()
}

pub fn cmd_betti(n: usize, method: Method) -> CliResult<Report> {
    let inputs = json!({ "n": n, "method": label(method) });
    let mut results = json!({});
    let mut verified = true;
    let formula = formula_betti(n);
    if method != Method::Snf {
        guard(n, limits::DEFAULT_MAX_N, "betti --method formula")?;
        results["formula"] = json::ints(&formula);
    }
    if method != Method::Formula {
        guard(n, HOMOLOGY_MAX_N, "betti --method snf")?;
        let dn = SimplicialComplex::partial_partitions(n)?;
        let h = homology::integral_homology(&dn);
        let euler_ok = homology::reduced_euler_from_faces(&dn) == h.euler_characteristic();
        results["snf"] = json::homology(&dn, &h);
        results["eulerConsistent"] = Value::from(euler_ok);
        verified &= euler_ok;
        if method == Method::Both {
            let snf = h.betti_vector();
            let len = snf.len().max(formula.len());
            let flags: Vec<bool> = (0..len).map(|d| snf.get(d) == formula.get(d)).collect();
            verified &= flags.iter().all(|&f| f);
            results["match"] = Value::from(flags);
        }
    }
    Ok(Report::new("betti", inputs, results, verified))
}

pub fn cmd_shelling(n: usize, check: Check, tie_break: TieBreakArg) -> CliResult<Report> {
    guard(n, SHELLING_MAX_N, "shelling")?;
    let dn = SimplicialComplex::partial_partitions(n)?;
    let order = shelling::default_shelling_order(n, tie_break.into())?;
    let facets = order.facets();
    let mut results = json!({ "order": json::faces(facets) });
    let mut shellable = true;
    if check != Check::Lemma {
        let v = shelling::verify_shelling_definition(&dn, facets)?;
        shellable &= v.is_shelling();
        results["definition"] = verdict_json(v);
    }
    if check != Check::Definition {
        let v = shelling::verify_shelling_lemma(&dn, facets)?;
        shellable &= v.is_shelling();
        results["lemma"] = verdict_json(v);
    }
    let gamma = shelling::gamma_table(facets);
    let gamma_ok = shelling::gamma_matches_d_njk(n, &gamma)?;
    results["shellable"] = Value::from(shellable);
    results["gamma"] = json::gamma(&gamma);
    results["gammaMatchesD"] = Value::from(gamma_ok);
    results["restrictions"] = json::restrictions(&shelling::restrictions(facets));
    let inputs = json!({ "n": n, "check": label(check), "tiebreak": label(tie_break) });
    Ok(Report::new("shelling", inputs, results, shellable && gamma_ok))
}

fn verdict_json(v: shelling::ShellingVerdict) -> Value {
    json!({ "shellable": v.is_shelling(), "firstFailure": v.first_failure })
}

/// `σ_F` for one choice, with its checks, as a JSON fragment.
pub fn cycle_json(
    n: usize,
    f: &PartialPartition,
    choice: &RepresentativeChoice,
    verify_iso: bool,
) -> CliResult<(Value, bool)> {
    let sigma = cycles::sigma_chain(f, choice)?;
    let check = cycles::check_cycle(n, f, choice)?;
    let mut ok = check.passes(f.len());
    let reps: serde_json::Map<String, Value> =
        choice.iter().map(|(b, x)| (b.bits().to_string(), Value::from(x))).collect();
    let mut v = json!({
        "F": json::face(f),
        "reps": reps,
        "chain": json::chain(&sigma),
        "isCycle": check.is_cycle,
        "unitCoefficients": check.unit_coefficients,
        "closureFaces": check.closure_faces,
    });
    if verify_iso {
        let iso = cycles::verify_crosspolytope_iso(f, choice)?;
        v["crossPolytopeIso"] = Value::from(iso);
        ok &= iso;
    }
    Ok((v, ok))
}

/// A uniformly random representative choice for `f`.
pub fn random_choice(f: &PartialPartition, rng: &mut ChaCha8Rng) -> CliResult<RepresentativeChoice> {
    let picks: Vec<u32> = f
        .blocks()
        .iter()
        .map(|b| *b.elements().collect::<Vec<_>>().choose(rng).expect("blocks are nonempty"))
        .collect();
    Ok(RepresentativeChoice::from_elements(f, &picks)?)
}

pub fn cmd_basis(
    n: usize,
    j: Option<usize>,
    verify_iso: bool,
    samples: usize,
    seed: u64,
) -> CliResult<Report> {
    guard(n, BASIS_MAX_N, "basis")?;
    let levels: Vec<usize> = match j {
        Some(j) if j == 0 || j > n => {
            return Err(CliError::Usage(format!("--j must satisfy 1 <= j <= n, got j={j}, n={n}")))
        }
        Some(j) => vec![j],
        None => (1..=n).collect(),
    };
    let dn = SimplicialComplex::partial_partitions(n)?;
    let h = homology::integral_homology(&dn);
    let mut verified = true;
    let mut out = Vec::new();
    for &j in &levels {
        let fs = enumerate_d_njk(n, j, j)?;
        let mut cycles_json = Vec::new();
        for f in &fs {
            let (v, ok) = cycle_json(n, f, &RepresentativeChoice::canonical(f), verify_iso)?;
            verified &= ok;
            cycles_json.push(v);
        }
        let report = cycles::verify_basis_with(&dn, &h, j)?;
        verified &= report.verified();
        let independence = sample_choice_independence(&dn, &fs, samples, seed)?;
        verified &= independence.1 == independence.0;
        out.push(json!({
            "j": j,
            "cycles": cycles_json,
            "quotientRank": report.quotient_rank,
            "dCount": report.d_count,
            "betti": report.betti,
            "choiceIndependence": { "samples": independence.0, "passed": independence.1 },
            "verified": report.verified(),
        }));
    }
    let inputs = json!({
        "n": n,
        "j": j,
        "verifyIso": verify_iso,
        "samples": samples,
        "seed": seed,
    });
    Ok(Report::new("basis", inputs, json!({ "levels": out }), verified))
}

/// Draws `samples` random `(F, a, b)` and checks `σ_F(a) - σ_F(b)` is a
/// boundary. Returns `(drawn, passed)`; nothing is drawn when `fs` is empty.
pub fn sample_choice_independence(
    dn: &SimplicialComplex,
    fs: &[PartialPartition],
    samples: usize,
    seed: u64,
) -> CliResult<(usize, usize)> {
    if fs.is_empty() || samples == 0 {
        return Ok((0, 0));
    }
    let solver = BoundarySolver::new(dn, fs[0].dim());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    for _ in 0..samples {
        let f = &fs[rng.gen_range(0..fs.len())];
        let a = random_choice(f, &mut rng)?;
        let b = random_choice(f, &mut rng)?;
        if cycles::choice_difference_is_boundary(&solver, f, &a, &b)? {
            passed += 1;
        }
    }
    Ok((samples, passed))
}

/// Boundary matrix `∂_d` of `D_n` as a sparse JSON fixture.
pub fn boundary_json(dn: &SimplicialComplex, d: isize) -> Value {
    let m = homology::boundary_matrix(dn, d).matrix;
    let entries: Vec<Value> = m
        .triplets()
        .map(|(r, c, v)| json!([r, c, json::int(v)]))
        .collect();
    json!({
        "n": dn.ground_size(),
        "d": d,
        "rows": m.nrows(),
        "cols": m.ncols(),
        "entries": entries,
    })
}

/// Betti, shelling and basis results for `n` bundled in one document.
pub fn full_report(n: usize) -> CliResult<Report> {
    let betti = cmd_betti(n, Method::Both)?;
    let shell = cmd_shelling(n, Check::Both, TieBreakArg::Lex)?;
    let basis = cmd_basis(n, None, true, 0, 0)?;
    let verified = betti.verified && shell.verified && basis.verified;
    let results = json!({
        "betti": betti.results,
        "shelling": shell.results,
        "basis": basis.results,
    });
    Ok(Report::new("report", json!({ "n": n }), results, verified))
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn cmd_export(n: usize, what: ExportWhat, path: &Path, d: Option<isize>) -> CliResult<Report> {
    let (document, verified) = match what {
        ExportWhat::Complex => {
            guard(n, EXPORT_MAX_N, "export --what complex")?;
            (json::complex(&SimplicialComplex::partial_partitions(n)?), true)
        }
        ExportWhat::Report => {
            let r = full_report(n)?;
            (r.to_json(), r.verified)
        }
        ExportWhat::Boundary => {
            guard(n, HOMOLOGY_MAX_N, "export --what boundary")?;
            let d = d.ok_or_else(|| CliError::Usage("--what boundary requires --d".into()))?;
            (boundary_json(&SimplicialComplex::partial_partitions(n)?, d), true)
        }
    };
    let mut text = serde_json::to_string_pretty(&document).expect("serializable");
    text.push('\n');
    write_file(path, &text)?;
    let inputs = json!({ "n": n, "what": label(what), "path": path.display().to_string(), "d": d });
    let results = json!({ "bytes": text.len() });
    Ok(Report::new("export", inputs, results, verified))
}
