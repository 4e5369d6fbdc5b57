//! Property suites over fixed corpora and seeded random samples.
//!
//! Each suite returns a report; `stone check` prints them and the acceptance
//! target pins their parameters.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use stone_core::duality::{
    check_duality_round_trip, check_full_faithfulness, check_functor_laws, FiniteSetObj, SetMap,
};
use stone_core::fpalgebra::{
    enumerate_homs, tensor, FiniteAlgebra, FpMatrix, Poly, PrimeField, Scalar,
};
use stone_core::pearl::{
    check_pearl_comparison, check_pearl_universal, check_q_universal, pearl, stone_quotient,
    PBooleanAlgebra,
};
use stone_core::profinite::{
    clopen_to_idempotent, complement_closed, complement_open, ClosedSubtower, Tower,
};
use stone_core::sheafmod::{
    check_monoidal_equivalence, module_to_sheaf, restrict_to_clopen, sheaf_to_module,
    SheafOnFiniteSet,
};
use stone_core::spectrum::{
    enumerate_idempotents, factor_count_via_pearl, minimal_nonzero, pi_zero,
};
use stone_core::{Error, Limits};
use stone_oracle::{distinct_irreducible_factors, irreducible_sieve};

use crate::error::CliError;
use crate::expr::{eval_str, format_poly};

pub const DEFAULT_SEED: u64 = 20_240_601;

pub const SUITES: &[&str] = &[
    "factor-count",
    "galois",
    "duality",
    "pearl-universal",
    "q-universal",
    "idempotents",
    "clopen",
    "sheaf",
    "comparison",
];

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub fn run_suite(name: &str, seed: u64, limits: &Limits) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let (passed, summary, details) = match name {
        "factor-count" => factor_count_suite(seed, 100, limits)?,
        "galois" => galois_suite(limits)?,
        "duality" => duality_suite(limits)?,
        "pearl-universal" => universal_suite(true, limits)?,
        "q-universal" => universal_suite(false, limits)?,
        "idempotents" => idempotent_suite(limits)?,
        "clopen" => clopen_suite(seed, 200)?,
        "sheaf" => sheaf_suite(seed, 100, 50)?,
        "comparison" => comparison_suite(limits)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown suite {other:?}; known suites: {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        passed,
        summary,
        details,
        elapsed: start.elapsed(),
    })
}

fn alg(text: &str, limits: &Limits) -> Result<FiniteAlgebra, CliError> {
    eval_str(text, limits)
}

/// Random monic polynomials of degree `1..=max_deg`.
fn random_monic(rng: &mut ChaCha8Rng, p: u32, max_deg: usize) -> Vec<u32> {
    let d = rng.gen_range(1..=max_deg);
    let mut c: Vec<u32> = (0..d).map(|_| rng.gen_range(0..p)).collect();
    c.push(1);
    c
}

pub fn factor_count_suite(
    seed: u64,
    per_prime: usize,
    _limits: &Limits,
) -> Result<(bool, String, Value), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for p in [2u32, 3, 5] {
        let sieve = irreducible_sieve(p, 5);
        let field = PrimeField::new(p)?;
        for _ in 0..per_prime {
            let f = random_monic(&mut rng, p, 10);
            let expected = distinct_irreducible_factors(p, &f, &sieve);
            let got = factor_count_via_pearl(&Poly::new(
                field,
                f.iter().map(|&c| c as Scalar).collect(),
            ))?;
            checked += 1;
            if got != expected {
                mismatches.push(json!({"p": p, "f": format_poly(&f, "x"), "pearl_dim": got, "oracle": expected}));
            }
        }
    }
    let passed = mismatches.is_empty();
    let summary = format!("{checked} polynomials, {} mismatches", mismatches.len());
    Ok((
        passed,
        summary,
        json!({"seed": seed, "checked": checked, "mismatches": mismatches}),
    ))
}

pub fn galois_suite(limits: &Limits) -> Result<(bool, String, Value), CliError> {
    let cases = [
        ("GF(2)[x]/(x^2+x+1)", 2usize),
        ("GF(2)[x]/(x^3+x+1)", 3),
        ("GF(3)[x]/(x^2+1)", 2),
    ];
    let mut rows = Vec::new();
    let mut passed = true;
    for (text, expected) in cases {
        let f = alg(text, limits)?;
        let dim = pearl(&tensor(&f, &f, limits)?.algebra)?.dim();
        passed &= dim == expected;
        rows.push(json!({"field": text, "tensor_square_pearl_dim": dim, "expected": expected}));
    }
    let summary = rows
        .iter()
        .map(|r| format!("{}", r["tensor_square_pearl_dim"]))
        .collect::<Vec<_>>()
        .join(", ");
    Ok((
        passed,
        format!("pearl dims {summary} (expected 2, 3, 2)"),
        json!(rows),
    ))
}

pub fn duality_suite(limits: &Limits) -> Result<(bool, String, Value), CliError> {
    let mut passed = true;
    let mut hom_sets = 0;
    let mut pairs = 0;
    let mut failures = Vec::new();
    for p in [2u32, 3] {
        let field = PrimeField::new(p)?;
        for s in 0..=4 {
            let sset = FiniteSetObj::standard(s);
            for t in 0..=4 {
                let tset = FiniteSetObj::standard(t);
                let v = check_full_faithfulness(field, &sset, &tset, limits)?;
                hom_sets += 1;
                if !v.holds {
                    passed = false;
                    failures.push(json!({"p": p, "s": s, "t": t, "verdict": v}));
                }
                for u in 0..=4 {
                    let law = check_functor_laws(field, &sset, &tset, &FiniteSetObj::standard(u));
                    pairs += law.pairs_checked;
                    if !law.holds {
                        passed = false;
                        failures.push(json!({"p": p, "s": s, "t": t, "u": u, "laws": law}));
                    }
                }
            }
            let samples: Vec<SetMap> = (0..=2)
                .flat_map(|m| SetMap::all_maps(&sset, &FiniteSetObj::standard(m)))
                .collect();
            let rt = check_duality_round_trip(field, &sset, &samples)?;
            if !rt.holds {
                passed = false;
                failures.push(json!({"p": p, "s": s, "round_trip": rt}));
            }
        }
    }
    let summary = format!(
        "{hom_sets} hom sets, {pairs} composable pairs, {} failures",
        failures.len()
    );
    Ok((
        passed,
        summary,
        json!({"hom_sets": hom_sets, "composable_pairs": pairs, "failures": failures}),
    ))
}

/// Algebras of dimension at most 4 over F_2 and F_3.
pub const UNIVERSAL_CORPUS: &[&str] = &[
    "GF(2)[x]/(x)",
    "Fn(2,2)",
    "GF(2)[x]/(x^2+x+1)",
    "GF(2)[x]/(x^2)",
    "GF(2)[x]/(x^3+x)",
    "GF(2)[x]/(x^3+x+1)",
    "GF(2)[x]/(x^2) * Fn(2,1)",
    "GF(2)[x]/(x^2+x+1) (x) GF(2)[x]/(x^2+x+1)",
    "GF(2)[x]/(x^2) (x) GF(2)[y]/(y^2)",
    "GF(2)[x]/(x^4+x+1)",
    "Fn(2,0)",
    "GF(3)[x]/(x)",
    "GF(3)[x]/(x^2+1)",
    "GF(3)[x]/(x^2)",
    "Fn(3,3)",
    "GF(3)[x]/(x^3+2x+1)",
    "GF(3)[x]/(x^2) * Fn(3,2)",
];

pub fn universal_suite(
    pearl_side: bool,
    limits: &Limits,
) -> Result<(bool, String, Value), CliError> {
    let mut passed = true;
    let mut checked = 0;
    let mut rows = Vec::new();
    for text in UNIVERSAL_CORPUS {
        let a = alg(text, limits)?;
        for n in 0..=3 {
            let b = PBooleanAlgebra::certify(alg(&format!("Fn({},{n})", a.p()), limits)?)?;
            let v = if pearl_side {
                check_pearl_universal(&b, &a, limits)?
            } else {
                check_q_universal(&a, &b, limits)?
            };
            checked += 1;
            passed &= v.holds;
            rows.push(json!({"algebra": text, "b_dim": n, "verdict": v}));
        }
    }
    let mut extra = Value::Null;
    if !pearl_side {
        let q = stone_quotient(&alg("GF(2)[x]/(x^2+x+1)", limits)?)?;
        let zero = q.algebra.algebra().is_zero_ring();
        passed &= zero;
        extra = json!({"q_of_f4_is_zero_ring": zero});
    }
    let failures = rows
        .iter()
        .filter(|r| r["verdict"]["holds"] == json!(false))
        .count();
    let summary = format!(
        "{} algebras x 4 p-Boolean targets, {failures} failures",
        UNIVERSAL_CORPUS.len()
    );
    Ok((
        passed,
        summary,
        json!({"checked": checked, "cases": rows, "edge": extra}),
    ))
}

fn all_monic(p: u32, d: usize) -> Vec<Vec<u32>> {
    let count = (p as usize).pow(d as u32);
    (0..count)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push((idx % p as usize) as u32);
                idx /= p as usize;
            }
            c.push(1);
            c
        })
        .collect()
}

/// Every univariate quotient up to a size bound per prime, plus products,
/// tensors and function algebras with at most 2^12 elements.
pub fn idempotent_corpus() -> Vec<String> {
    let mut out = Vec::new();
    for (p, max_deg) in [
        (2u32, 10usize),
        (3, 6),
        (5, 4),
        (7, 3),
        (11, 3),
        (13, 2),
        (17, 2),
        (31, 2),
        (61, 2),
    ] {
        for d in 1..=max_deg {
            for f in all_monic(p, d) {
                out.push(format!("GF({p})[x]/({})", format_poly(&f, "x")));
            }
        }
    }
    for p in [2u32, 3] {
        let small: Vec<(usize, Vec<u32>)> = (1..=3)
            .flat_map(|d| all_monic(p, d).into_iter().map(move |f| (d, f)))
            .collect();
        for (da, f) in &small {
            for (db, g) in &small {
                let fits = |dim: usize| (p as usize).pow(dim as u32) <= 1 << 12;
                let a = format_poly(f, "x");
                if fits(da + db) {
                    out.push(format!(
                        "GF({p})[x]/({a}) * GF({p})[x]/({})",
                        format_poly(g, "x")
                    ));
                }
                if fits(da * db) {
                    out.push(format!(
                        "GF({p})[x]/({a}) (x) GF({p})[y]/({})",
                        format_poly(g, "y")
                    ));
                }
            }
        }
    }
    out.extend(UNIVERSAL_CORPUS.iter().map(|s| s.to_string()));
    out.extend(
        [
            "Fn(2,12)",
            "Fn(3,7)",
            "GF(2)[x]/(x^12+x^3+1)",
            "GF(2)[x]/(x^2+x+1) (x) GF(2)[x]/(x^3+x+1)",
            "GF(2)[x]/(x^3+x+1) (x) GF(2)[x]/(x^3+x+1)",
            "(GF(2)[x]/(x^2) (x) GF(2)[x]/(x^2+x+1)) * Fn(2,2)",
            "GF(3)[x]/(x^2+1) (x) GF(3)[x]/(x^2+1)",
            "GF(3)[x]/(x^2+1) (x) GF(3)[x]/(x^2) * Fn(3,1)",
            "GF(5)[x]/(x^2+2) (x) GF(5)[x]/(x^2+2)",
        ]
        .map(String::from),
    );
    out
}

pub fn idempotent_suite(limits: &Limits) -> Result<(bool, String, Value), CliError> {
    let mut mismatches = Vec::new();
    let corpus = idempotent_corpus();
    for text in &corpus {
        let a = alg(text, limits)?;
        if a.cardinality() > 1 << 12 {
            return Err(Error::EnumerationCapExceeded {
                what: text.clone(),
                size: a.cardinality(),
                cap: 1 << 12,
            }
            .into());
        }
        let via_pearl: BTreeSet<Vec<Scalar>> = pi_zero(&a)?
            .components
            .iter()
            .map(|e| e.vector().to_vec())
            .collect();
        let brute: BTreeSet<Vec<Scalar>> = minimal_nonzero(&a, &enumerate_idempotents(&a, limits)?)
            .iter()
            .map(|e| e.vector().to_vec())
            .collect();
        if via_pearl != brute {
            mismatches.push(json!({"algebra": text, "via_pearl": via_pearl, "brute_force": brute}));
        }
    }
    let passed = mismatches.is_empty();
    let summary = format!("{} algebras, {} mismatches", corpus.len(), mismatches.len());
    Ok((
        passed,
        summary,
        json!({"algebras": corpus.len(), "mismatches": mismatches}),
    ))
}

/// A random closed subtower: half the time the full preimage of a random
/// subset at a random level (so its complement is clopen), otherwise a
/// random subset of the top level.
fn random_closed(rng: &mut ChaCha8Rng, t: &Tower) -> Result<ClosedSubtower, CliError> {
    let d = t.depth();
    let top_size = t.levels()[d].len();
    let top: Vec<usize> = if rng.gen_bool(0.5) {
        let m = rng.gen_range(0..=d);
        let chosen: Vec<bool> = (0..t.levels()[m].len())
            .map(|_| rng.gen_bool(0.5))
            .collect();
        (0..top_size)
            .filter(|&x| chosen[t.project(d, m, x)])
            .collect()
    } else {
        let density = rng.gen_range(0.05..0.95);
        (0..top_size).filter(|_| rng.gen_bool(density)).collect()
    };
    Ok(ClosedSubtower::from_top(t.clone(), &top)?)
}

pub fn clopen_suite(seed: u64, samples: usize) -> Result<(bool, String, Value), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut stabilized = 0;
    for i in 0..samples {
        let branching = if i % 2 == 0 { 2 } else { 3 };
        let depth = rng.gen_range(0..=6);
        let t = Tower::tree(branching, depth);
        let closed = random_closed(&mut rng, &t)?;
        let open = complement_closed(&closed)?;
        if complement_open(&open)? != closed {
            failures.push(json!({"sample": i, "kind": "double complement", "closed": closed}));
        }
        match clopen_to_idempotent(&open) {
            Ok(c) => {
                stabilized += 1;
                for m in c.level..=depth {
                    let pulled = t.pullback(c.level, m, c.idempotent.vector())?;
                    let level: Vec<Scalar> = (0..t.levels()[m].len())
                        .map(|x| open.contains(m, x) as Scalar)
                        .collect();
                    if pulled != level {
                        failures.push(json!({"sample": i, "kind": "pullback", "level": m}));
                    }
                }
            }
            Err(Error::NotClopenAtThisDepth(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let passed = failures.is_empty();
    let summary = format!(
        "{samples} subtowers, {stabilized} stabilized complements, {} failures",
        failures.len()
    );
    Ok((
        passed,
        summary,
        json!({"seed": seed, "samples": samples, "stabilized": stabilized, "failures": failures}),
    ))
}

fn random_invertible(field: PrimeField, n: usize, rng: &mut ChaCha8Rng) -> FpMatrix {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| rng.gen_range(0..field.p()) as Scalar)
                    .collect()
            })
            .collect();
        let m = FpMatrix::from_rows(field, n, &rows);
        if m.rank() == n {
            return m;
        }
    }
}

/// A sheaf with the given stalk dimensions whose stalks are spanned by the
/// columns of a random invertible matrix.
pub fn random_sheaf(
    field: PrimeField,
    dims: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<SheafOnFiniteSet, CliError> {
    let total: usize = dims.iter().sum();
    let cols = random_invertible(field, total, rng).columns();
    let mut offset = 0;
    let stalks = dims
        .iter()
        .map(|&d| {
            let block = FpMatrix::from_columns(field, total, &cols[offset..offset + d]);
            offset += d;
            block
        })
        .collect();
    Ok(SheafOnFiniteSet::new(
        field,
        FiniteSetObj::standard(dims.len()),
        total,
        stalks,
    )?)
}

fn random_dims(rng: &mut ChaCha8Rng, points: usize, max_total: usize) -> Vec<usize> {
    let mut dims = vec![0; points];
    let total = rng.gen_range(0..=max_total);
    for _ in 0..total {
        dims[rng.gen_range(0..points)] += 1;
    }
    dims
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

pub fn sheaf_suite(
    seed: u64,
    modules: usize,
    pairs: usize,
) -> Result<(bool, String, Value), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..modules {
        let field = PrimeField::new(if rng.gen_bool(0.5) { 2 } else { 3 })?;
        let points = rng.gen_range(1..=4);
        let dims = random_dims(&mut rng, points, 6);
        let sheaf = random_sheaf(field, &dims, &mut rng)?;
        let m = sheaf_to_module(&sheaf)?;
        if sheaf_to_module(&module_to_sheaf(&m))? != m || !module_to_sheaf(&m).equivalent(&sheaf) {
            failures.push(json!({"module": i, "kind": "round trip", "dims": dims}));
        }
        let clopens = subsets(points);
        for u in &clopens {
            for v in &clopens {
                if u.iter().any(|x| v.contains(x)) {
                    continue;
                }
                let union: Vec<usize> = u.iter().chain(v).copied().collect();
                let lhs = restrict_to_clopen(&m, &union)?.dim();
                let rhs = restrict_to_clopen(&m, u)?.dim() + restrict_to_clopen(&m, v)?.dim();
                if lhs != rhs || sheaf.sections_dim(&union) != lhs {
                    failures.push(json!({"module": i, "kind": "additivity", "u": u, "v": v}));
                }
            }
        }
    }
    for i in 0..pairs {
        let field = PrimeField::new(if rng.gen_bool(0.5) { 2 } else { 3 })?;
        let points = rng.gen_range(1..=4);
        let d1 = random_dims(&mut rng, points, 6);
        let d2 = random_dims(&mut rng, points, 6);
        let m = sheaf_to_module(&random_sheaf(field, &d1, &mut rng)?)?;
        let n = sheaf_to_module(&random_sheaf(field, &d2, &mut rng)?)?;
        let v = check_monoidal_equivalence(&m, &n, &subsets(points))?;
        if !v.holds {
            failures.push(json!({"pair": i, "kind": "monoidal", "verdict": v}));
        }
    }
    let passed = failures.is_empty();
    let summary = format!(
        "{modules} modules, {pairs} tensor pairs, {} failures",
        failures.len()
    );
    Ok((
        passed,
        summary,
        json!({"seed": seed, "modules": modules, "pairs": pairs, "failures": failures}),
    ))
}

pub fn comparison_suite(limits: &Limits) -> Result<(bool, String, Value), CliError> {
    let bases = [("F2", "Fn(2,1)"), ("F2^2", "Fn(2,2)")];
    let targets = [
        ("F4", "GF(2)[x]/(x^2+x+1)"),
        ("F2^2", "Fn(2,2)"),
        ("F4xF2", "GF(2)[x]/(x^2+x+1) * Fn(2,1)"),
    ];
    let mut rows = Vec::new();
    let mut passed = true;
    for (an, at) in bases {
        let a = PBooleanAlgebra::certify(alg(at, limits)?)?;
        for (bn, bt) in targets {
            let b = alg(bt, limits)?;
            for f in enumerate_homs(a.algebra(), &b, limits)?
                .into_iter()
                .filter(|f| f.is_injective())
            {
                let v = check_pearl_comparison(&a, &f, limits)?;
                let expect_strict = an == "F2" && bn == "F4";
                let ok = v.injective && (v.surjective != expect_strict);
                passed &= ok;
                rows.push(json!({
                    "a": an,
                    "b": bn,
                    "f": f.matrix(),
                    "source_dim": v.source_dim,
                    "target_dim": v.target_dim,
                    "injective": v.injective,
                    "surjective": v.surjective,
                    "as_stated": ok,
                }));
            }
        }
    }
    let off: Vec<String> = rows
        .iter()
        .filter(|r| r["as_stated"] == json!(false))
        .map(|r| {
            format!(
                "{}->{} ({} vs {})",
                r["a"].as_str().unwrap_or(""),
                r["b"].as_str().unwrap_or(""),
                r["source_dim"],
                r["target_dim"]
            )
        })
        .collect();
    let summary = if off.is_empty() {
        format!(
            "{} injective maps, all injective, strict only for F2->F4",
            rows.len()
        )
    } else {
        format!(
            "{} injective maps; also non-surjective: {}",
            rows.len(),
            off.join(", ")
        )
    };
    Ok((passed, summary, json!(rows)))
}
