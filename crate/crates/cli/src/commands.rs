//! Command bodies: each builds an [`Output`] from the core library.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use padic_galois::ff::FqElem;
use padic_galois::montecarlo::{self, ExperimentConfig, ExperimentReport, Mode};
use padic_galois::oracle::{census_fq, triple_count, triple_count_closed_form};
use padic_galois::split_types::{
    all_types, exact_cubic, exact_quadratic, exact_unramified, nu_n, nu_star, q_count, verify_bounds, Dist,
};
use padic_galois::{arith, ff::FqField, Error, Rat, Result};
use serde_json::{json, Value};

use crate::output::{rat_json, Cell, Output, Row};

fn rat(n: u64, d: u64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn dist_rows(out: &mut Output, d: &Dist) {
    for (label, _) in d.entries() {
        let mut row = Row::new(label.to_string());
        row.exact = d.exact(label).cloned();
        out.rows.push(row);
    }
}

fn check_low_degree(n: u32) -> Result<()> {
    if n != 2 && n != 3 {
        return Err(Error::InvalidParameter(format!(
            "group and unramified tables need n in {{2, 3}}, got {n}"
        )));
    }
    Ok(())
}

pub fn exact(n: u32, q: u64, groups: bool, unramified: bool) -> Result<Output> {
    let mut out = Output::new(
        "exact",
        json!({ "n": n, "q": q, "groups": groups, "unramified": unramified }),
    );
    match (groups, unramified) {
        (true, true) => {
            return Err(Error::InvalidParameter(
                "--groups and --unramified are exclusive".into(),
            ));
        }
        (true, false) => {
            check_low_degree(n)?;
            let t = if n == 2 { exact_quadratic(q)? } else { exact_cubic(q)? };
            dist_rows(&mut out, &t.groups);
        }
        (false, true) => {
            check_low_degree(n)?;
            let t = exact_unramified(n, q)?;
            dist_rows(&mut out, &t.types);
            out.summary("unramified_total", rat_json(&t.total));
            out.summary("trivial_given_unramified", rat_json(&t.trivial_given_unramified));
        }
        (false, false) => {
            arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
            let scale = Rat::one() - rat(1, q);
            for mu in all_types(n, true)? {
                let mut row = Row::new(mu.to_string());
                let star = nu_star(n, q, &mu)?;
                row.extra.push(("q_count", Cell::Int(q_count(n, q, &mu)?)));
                row.extra.push(("conditional", Cell::Rat(&star / &scale)));
                row.extra.push(("cycle_type", Cell::Rat(nu_n(&mu)?)));
                row.exact = Some(star);
                out.rows.push(row);
            }
        }
    }
    Ok(out)
}

pub fn census(n: u32, q: u64, cap: u128) -> Result<Output> {
    let field = FqField::with_order(q)?;
    let counts = census_fq(n, &field, cap)?;
    let total = BigUint::from(q).pow(n);
    let mut out = Output::new("census", json!({ "n": n, "q": q }));
    let mut ok = true;
    for mu in all_types(n, true)? {
        let got = BigUint::from(counts.get(&mu).copied().unwrap_or(0));
        let want = q_count(n, q, &mu)?;
        let mut row = Row::new(mu.to_string());
        row.exact = Some(Rat::new(want.clone().into(), total.clone().into()));
        row.estimate = Some(got.to_f64().unwrap() / total.to_f64().unwrap());
        row.pass = Some(got == want);
        ok &= got == want;
        row.extra.push(("formula_count", Cell::Int(want)));
        row.count = Some(got);
        out.rows.push(row);
    }
    let nonsq: u128 = counts.iter().filter(|(t, _)| !t.is_squarefree()).map(|(_, c)| c).sum();
    let want = BigUint::from(q).pow(n - 1);
    let mut row = Row::new("non-squarefree");
    row.exact = Some(if n >= 2 { rat(1, q) } else { rat(0, 1) });
    row.estimate = Some(nonsq as f64 / total.to_f64().unwrap());
    let matches = n < 2 || BigUint::from(nonsq) == want;
    row.pass = Some(matches);
    ok &= matches;
    row.count = Some(BigUint::from(nonsq));
    out.rows.push(row);
    for (mu, c) in counts.iter().filter(|(t, _)| !t.is_squarefree()) {
        let mut row = Row::new(mu.to_string());
        row.count = Some(BigUint::from(*c));
        row.estimate = Some(*c as f64 / total.to_f64().unwrap());
        out.rows.push(row);
    }
    out.summary("total", json!(total.to_string()));
    out.pass = ok;
    Ok(out)
}

pub fn verify(n: u32, q: u64) -> Result<Output> {
    let checks = verify_bounds(n, q)?;
    let mut out = Output::new("verify-bounds", json!({ "n": n, "q": q }));
    for c in checks {
        let mut row = Row::new(c.mu.to_string());
        row.exact = Some(c.nu_star.clone());
        row.pass = Some(c.holds);
        out.pass &= c.holds;
        row.extra.push(("cycle_type", Cell::Rat(c.nu_n.clone())));
        row.extra.push(("deviation", Cell::Rat(c.deviation.clone())));
        row.extra.push(("bound", Cell::Rat(c.bound.clone())));
        row.extra.push(("margin", Cell::Rat(c.margin())));
        out.rows.push(row);
    }
    Ok(out)
}

pub fn triples(p: u64, f: u32, k: u32, a: u32, cap: u128) -> Result<Output> {
    let field = FqField::new(p, f)?;
    if a == 0 || a as u64 >= field.q() {
        return Err(Error::InvalidParameter(format!(
            "--a must index a nonzero element of F_{}",
            field.q()
        )));
    }
    let counts = triple_count(p, f, k, FqElem::from_index(a), cap)?;
    let q = field.q();
    let closed = triple_count_closed_form(q, k);
    let ratio = Rat::new(counts.three_linear.clone().into(), counts.shape_total.clone().into());
    let limit = rat(1, 2 * q + 2);
    let mut out = Output::new("triple-count", json!({ "p": p, "f": f, "k": k, "a": a }));
    let mut row = Row::new("three_linear");
    row.exact = Some(Rat::from_integer(closed.clone().into()));
    row.count = Some(counts.three_linear.clone());
    row.pass = Some(counts.three_linear == closed);
    row.extra.push(("shape_total", Cell::Int(counts.shape_total.clone())));
    row.extra.push(("ratio", Cell::Rat(ratio.clone())));
    row.extra.push(("limit", Cell::Rat(limit.clone())));
    row.extra.push((
        "relative_gap",
        Cell::Float(((&ratio - &limit) / &limit).to_f64().unwrap()),
    ));
    out.pass = counts.three_linear == closed;
    out.rows.push(row);
    out.summary("formula_match", json!(out.pass));
    Ok(out)
}

fn report_rows(out: &mut Output, r: &ExperimentReport) {
    for row in &r.rows {
        let mut o = Row::new(row.label.clone());
        o.exact = row.exact.clone();
        o.estimate = Some(row.frequency);
        o.stderr = row.stderr;
        o.z = row.z;
        o.count = Some(BigUint::from(row.count));
        o.pass = Some(row.pass);
        o.extra.push(("asserted", Cell::Bool(row.asserted)));
        out.rows.push(o);
    }
}

fn report_summary(out: &mut Output, r: &ExperimentReport) {
    out.summary("q", json!(r.q));
    out.summary("effective_precision_cap", json!(r.effective_cap));
    out.summary("undetermined", json!(r.undetermined));
    out.summary("deferred", json!(r.deferred));
    if r.coherence_checked > 0 {
        out.summary("discriminant_checks", json!(r.coherence_checked));
        out.summary("discriminant_mismatches", json!(r.coherence_failures));
    }
    if !r.case_counts.is_empty() {
        let cases: serde_json::Map<String, Value> = r
            .case_counts
            .iter()
            .map(|(k, v)| (k.name().to_string(), json!(v)))
            .collect();
        out.summary("cases", Value::Object(cases));
    }
}

pub fn sample(cfg: &ExperimentConfig) -> Result<(Output, ExperimentReport)> {
    let report = montecarlo::run(cfg)?;
    let mut out = Output::new(
        "sample",
        json!({
            "n": cfg.n, "p": cfg.p, "f": cfg.f, "e": cfg.e, "samples": cfg.samples,
            "seed": cfg.seed, "mode": cfg.mode.name(), "precision_cap": cfg.precision_cap,
        }),
    );
    report_rows(&mut out, &report);
    report_summary(&mut out, &report);
    out.pass = report.pass();
    Ok((out, report))
}

pub fn sweep(n: u32, qs: &[u64], samples: u64, seed: u64) -> Result<Output> {
    let s = montecarlo::sweep(n, qs, samples, seed)?;
    let mut out = Output::new(
        "sweep",
        json!({ "n": n, "q_list": qs, "samples": samples, "seed": seed, "mode": Mode::StarConditioned.name() }),
    );
    for r in &s.rows {
        let mut o = Row::new(r.label.clone());
        o.exact = Some(r.exact.clone());
        o.estimate = Some(r.estimate);
        o.stderr = Some(r.stderr);
        o.extra.push(("q", Cell::Int(BigUint::from(r.q))));
        o.extra.push(("cycle_type", Cell::Rat(r.nu_n.clone())));
        o.extra.push(("error", Cell::Float(r.error)));
        o.extra.push(("exact_error", Cell::Float(r.exact_error)));
        out.rows.push(o);
    }
    let slopes: serde_json::Map<String, Value> = s
        .slopes
        .iter()
        .map(|(l, v)| (l.clone(), v.map_or(Value::Null, |x| json!(x))))
        .collect();
    out.summary("log_log_slopes", Value::Object(slopes));
    out.pass = s.reports.iter().all(|r| r.pass());
    Ok(out)
}

/// Result families and the commands that reproduce them.
pub const MANIFEST: &[(&str, &str)] = &[
    ("square-free splitting type probabilities over O_p", "exact --n N --q Q"),
    (
        "census of monic polynomials over F_q vs. Gauss counts",
        "census --n N --q Q",
    ),
    (
        "explicit error bound against cycle-type frequencies",
        "verify-bounds --n N --q Q",
    ),
    ("quadratic splitting types and groups", "exact --n 2 --q Q --groups"),
    ("cubic splitting types and groups", "exact --n 3 --q Q --groups"),
    (
        "unramified quadratic and cubic probabilities",
        "exact --n {2,3} --q Q --unramified",
    ),
    (
        "repeated-root triple count modulo π^k",
        "triple-count --p P --f F --k K",
    ),
    (
        "Haar sampling of splitting types",
        "sample --n N --p P --mode splitting-types",
    ),
    (
        "Haar sampling of Galois groups",
        "sample --n {2,3} --p P --mode galois-groups",
    ),
    (
        "Haar sampling conditioned on unramified splitting fields",
        "sample --n {2,3} --p P --mode unramified",
    ),
    (
        "Haar sampling conditioned on a square-free reduction",
        "sample --n N --p P --mode star-conditioned",
    ),
    (
        "convergence to cycle-type frequencies as q grows",
        "sweep --n N --q-list Q1,Q2,...",
    ),
];

pub fn manifest() -> Output {
    let mut out = Output::new("manifest", json!({}));
    for (what, cmd) in MANIFEST {
        let mut row = Row::new(*what);
        row.extra.push(("command", Cell::Text(format!("padic-galois {cmd}"))));
        out.rows.push(row);
    }
    out
}
