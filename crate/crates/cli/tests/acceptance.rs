//! Acceptance suite. Runs every criterion at its stated tolerance, prints one
//! PASS/FAIL line per criterion, and exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use padic_galois::ff::{FqElem, FqField};
use padic_galois::fqpoly::DEFAULT_CENSUS_CAP;
use padic_galois::montecarlo::{
    corrected_ramified, corrected_unramified_r21, run, two_sample_z, ExperimentConfig, ExperimentReport, Mode, Z_LIMIT,
};
use padic_galois::oracle::{census_fq, census_sn, triple_count, triple_count_closed_form};
use padic_galois::split_types::{
    all_types, erdos_turan, exact_cubic, nu_n, q_count, verify_bounds, GroupLabel, SplittingType,
};
use padic_galois::{arith, Rat};

const SAMPLES: u64 = 1_000_000;
const SEED: u64 = 20_240_917;

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rat(n: u64, d: u64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn ty(d: &[u32]) -> SplittingType {
    SplittingType::from_degrees(d).unwrap()
}

fn experiment(p: u64, f: u32, e: u32, n: u32, seed: u64, mode: Mode) -> ExperimentReport {
    run(&ExperimentConfig::new(p, f, e, n, SAMPLES, seed, mode)).expect("valid configuration")
}

/// `label=freq (z)` for each row.
fn describe(r: &ExperimentReport) -> String {
    r.rows
        .iter()
        .map(|row| match row.z {
            Some(z) => format!("{}={:.5} (z={z:+.2})", row.label, row.frequency),
            None => format!("{}={:.5} (count {})", row.label, row.frequency, row.count),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn census_equivalence() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut cases: Vec<(u32, u64)> = Vec::new();
    for n in 2..=4 {
        for q in [3u64, 5, 7, 9, 11] {
            cases.push((n, q));
        }
    }
    cases.push((4, 25));
    let mut bad = Vec::new();
    pool.install(|| {
        for &(n, q) in &cases {
            let field = FqField::with_order(q).unwrap();
            let counts = census_fq(n, &field, DEFAULT_CENSUS_CAP).unwrap();
            for mu in all_types(n, true).unwrap() {
                let got = BigUint::from(counts.get(&mu).copied().unwrap_or(0));
                if got != q_count(n, q, &mu).unwrap() {
                    bad.push(format!("({n},{q}) {mu}"));
                }
            }
            let nonsq: u128 = counts.iter().filter(|(t, _)| !t.is_squarefree()).map(|(_, c)| c).sum();
            if BigUint::from(nonsq) != BigUint::from(q).pow(n - 1) {
                bad.push(format!("({n},{q}) non-squarefree"));
            }
        }
    });
    outcome(
        bad.is_empty(),
        format!("{} (n, q) pairs single-threaded; mismatches: {bad:?}", cases.len()),
    )
}

fn cycle_types() -> Outcome {
    let mut ok = true;
    for n in 1..=7 {
        let fact = arith::factorial(n as u64);
        for (mu, count) in census_sn(n).unwrap() {
            ok &= Rat::new(BigInt::from(count), BigInt::from(fact.clone())) == nu_n(&mu).unwrap();
        }
    }
    let g1 = erdos_turan(4, &GroupLabel::cyclic(&ty(&[2, 1, 1])).unwrap()).unwrap();
    let g2 = erdos_turan(4, &GroupLabel::cyclic(&ty(&[2, 2])).unwrap()).unwrap();
    ok &= g1 == rat(6, 24) && g2 == rat(3, 24);
    outcome(ok, format!("n <= 7 exact; <(2,1,1)> = {g1}, <(2,2)> = {g2}"))
}

fn bound_sweep() -> Outcome {
    let mut failed = Vec::new();
    let mut count = 0;
    for (n, q) in [(2u32, 9u64), (2, 11), (3, 11), (3, 13), (3, 25), (4, 25), (5, 49)] {
        for c in verify_bounds(n, q).unwrap() {
            count += 1;
            if !c.holds {
                failed.push(format!("({n},{q}) {}", c.mu));
            }
        }
    }
    outcome(
        failed.is_empty(),
        format!("{count} (n, q, mu) checks; failures: {failed:?}"),
    )
}

fn quadratic_monte_carlo() -> Outcome {
    let id = GroupLabel::trivial(2).to_string();
    let r1 = experiment(5, 1, 1, 2, SEED, Mode::GaloisGroups);
    let r2 = experiment(5, 2, 1, 2, SEED + 1, Mode::GaloisGroups);
    let r3 = experiment(5, 2, 3, 2, SEED + 2, Mode::GaloisGroups);
    let a = r1.row(&id).unwrap();
    let b = r2.row(&id).unwrap();
    let c = r3.row(&id).unwrap();
    let target = rat(25, 52).to_f64().unwrap();
    let z_pair = two_sample_z(b.frequency, SAMPLES, c.frequency, SAMPLES, target);
    let exact_ok = a.exact == Some(rat(5, 12)) && b.exact == Some(rat(25, 52)) && c.exact == Some(rat(25, 52));
    let pass = exact_ok && r1.pass() && r2.pass() && r3.pass() && z_pair.abs() <= Z_LIMIT;
    outcome(
        pass,
        format!(
            "q=5: Id {:.5} z={:+.2}; q=25 e=1: Id {:.5} z={:+.2}; q=25 e=3: Id {:.5} z={:+.2}; e=1 vs e=3 z={z_pair:+.2}",
            a.frequency,
            a.z.unwrap(),
            b.frequency,
            b.z.unwrap(),
            c.frequency,
            c.z.unwrap()
        ),
    )
}

fn cubic_monte_carlo() -> Outcome {
    let r5 = experiment(5, 1, 1, 3, SEED + 3, Mode::GaloisGroups);
    let r7 = experiment(7, 1, 1, 3, SEED + 4, Mode::GaloisGroups);
    let s3 = r7.row("S3").unwrap();
    let groups_ok = r5.rows.len() == 4 && r5.rows.iter().all(|r| r.pass && r.z.is_some());
    let pass = groups_ok && r5.pass() && s3.count == 0 && r7.pass();
    outcome(pass, format!("q=5: {}; q=7: S3 count {}", describe(&r5), s3.count))
}

fn triple_count_check() -> Outcome {
    let mut exact_ok = true;
    let mut parts = Vec::new();
    for (q, k) in [(5u64, 2u32), (5, 3), (5, 4), (7, 2), (7, 3)] {
        let c = triple_count(q, 1, k, FqElem::from_index(1), DEFAULT_CENSUS_CAP).unwrap();
        let closed = triple_count_closed_form(q, k);
        exact_ok &= c.three_linear == closed;
        parts.push(format!("({q},{k}) {}/{}", c.three_linear, c.shape_total));
    }
    let c = triple_count(5, 1, 4, FqElem::from_index(1), DEFAULT_CENSUS_CAP).unwrap();
    let ratio = Rat::new(c.three_linear.into(), c.shape_total.into());
    let limit = rat(1, 12);
    let rel = ((&ratio - &limit) / &limit).to_f64().unwrap();
    let abs = (&ratio - &limit).to_f64().unwrap();
    let ratio_ok = rel.abs() <= 0.02;
    outcome(
        exact_ok && ratio_ok,
        format!(
            "closed form matches: {exact_ok} [{}]; k=4 ratio {} = {:.5} vs 1/12, relative gap {:.2}% (absolute {abs:.5}), needs <= 2%",
            parts.join(", "),
            ratio,
            ratio.to_f64().unwrap(),
            100.0 * rel
        ),
    )
}

fn star_conditioned() -> Outcome {
    let r = experiment(7, 1, 1, 3, SEED + 5, Mode::StarConditioned);
    // independent expectation: q_count / q^n / (1 - 1/q)
    let mut ok = true;
    for mu in all_types(3, true).unwrap() {
        let want = Rat::new(q_count(3, 7, &mu).unwrap().into(), BigInt::from(343)) / rat(6, 7);
        ok &= r.row(&mu.to_string()).unwrap().exact.as_ref() == Some(&want);
    }
    ok &= r.row("deferred").unwrap().exact == Some(rat(1, 7));
    outcome(ok && r.pass(), describe(&r))
}

fn unramified() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for q in [5u64, 7] {
        let r = experiment(q, 1, 1, 3, SEED + 10 + q, Mode::Unramified);
        let row = |l: &str| r.row(l).unwrap();
        let asserted_ok = row("(1,1,1)").pass && row("(3)").pass && r.coherence_failures == 0 && r.undetermined == 0;
        pass &= asserted_ok;
        let r21 = row("(2,1)");
        let ram = row("ramified");
        let z_corr = |count: u64, exact: Rat| {
            let p = exact.to_f64().unwrap();
            (count as f64 / SAMPLES as f64 - p) / (p * (1.0 - p) / SAMPLES as f64).sqrt()
        };
        parts.push(format!(
            "q={q}: (1,1,1) z={:+.2}, (3) z={:+.2}; reported (2,1) z={:+.2} vs stated row, z={:+.2} after splitting case 5D; ramified z={:+.2} vs stated, z={:+.2} corrected",
            row("(1,1,1)").z.unwrap(),
            row("(3)").z.unwrap(),
            r21.z.unwrap(),
            z_corr(r21.count, corrected_unramified_r21(q).unwrap()),
            ram.z.unwrap(),
            z_corr(ram.count, corrected_ramified(q).unwrap()),
        ));
        let r2 = experiment(q, 1, 1, 2, SEED + 20 + q, Mode::Unramified);
        let half = Rat::new(1.into(), 2.into()) - rat(1, 2 * q + 2);
        for l in ["(1,1)", "(2)"] {
            let row = r2.row(l).unwrap();
            pass &= row.pass && row.exact.as_ref() == Some(&half);
        }
        pass &= r2.pass();
        parts.push(format!(
            "q={q} n=2: (1,1) z={:+.2}, (2) z={:+.2}",
            r2.row("(1,1)").unwrap().z.unwrap(),
            r2.row("(2)").unwrap().z.unwrap()
        ));
    }
    outcome(pass, parts.join("; "))
}

fn rational_identities() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for q in 2u64..200 {
        let Some((p, _)) = arith::prime_power(q) else { continue };
        if p <= 3 {
            continue;
        }
        let t = exact_cubic(q).unwrap();
        let g = |l: GroupLabel| t.groups.exact_group(&l).cloned().unwrap_or_else(Rat::zero);
        let tv = |d: &[u32]| t.types.exact_type(&ty(d)).cloned().unwrap();
        let ok = g(GroupLabel::trivial(3)) == tv(&[1, 1, 1])
            && g(GroupLabel::cyclic(&ty(&[2, 1])).unwrap()) == tv(&[2, 1])
            && g(GroupLabel::cyclic(&ty(&[3])).unwrap()) + g(GroupLabel::s3()) == tv(&[3])
            && t.types.exact_total().unwrap().is_one()
            && t.groups.exact_total().unwrap().is_one();
        checked += 1;
        if !ok {
            bad.push(q);
        }
    }
    outcome(
        bad.is_empty(),
        format!("{checked} prime powers with p > 3; failures: {bad:?}"),
    )
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_padic-galois");
    let runs: [&[&str]; 3] = [
        &[
            "sample",
            "--n",
            "3",
            "--p",
            "5",
            "--samples",
            "30000",
            "--seed",
            "7",
            "--mode",
            "galois-groups",
        ],
        &[
            "sample",
            "--n",
            "2",
            "--p",
            "5",
            "--f",
            "2",
            "--e",
            "3",
            "--samples",
            "30000",
            "--seed",
            "8",
            "--mode",
            "unramified",
        ],
        &[
            "sample",
            "--n",
            "5",
            "--p",
            "7",
            "--samples",
            "30000",
            "--seed",
            "9",
            "--mode",
            "star-conditioned",
        ],
    ];
    let mut ok = true;
    for args in runs {
        let outputs: Vec<Vec<u8>> = ["1", "2", "4"]
            .iter()
            .map(|t| {
                let out = Command::new(bin)
                    .args(args)
                    .args(["--format", "json", "--threads", t])
                    .output()
                    .unwrap();
                out.stdout
            })
            .collect();
        ok &= !outputs[0].is_empty() && outputs.iter().all(|o| o == &outputs[0]);
    }
    outcome(ok, "3 sample invocations x threads {1, 2, 4}: JSON byte-identical")
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("1 census equals square-free counts", census_equivalence),
        ("2 cycle-type oracle", cycle_types),
        ("3 error bound sweep", bound_sweep),
        ("4 quadratic Monte Carlo and e-independence", quadratic_monte_carlo),
        ("5 cubic Monte Carlo", cubic_monte_carlo),
        ("6 repeated-root triple count", triple_count_check),
        ("7 star-conditioned sampling", star_conditioned),
        ("8 unramified sampling", unramified),
        ("9 cubic rational identities", rational_identities),
        ("10 determinism across thread counts", determinism),
    ];
    let mut failures = 0;
    let mut summary = BTreeMap::new();
    for (name, check) in criteria {
        let start = Instant::now();
        let o = check();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "{} criterion {name} [{secs:.1}s]: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        summary.insert(name, o.pass);
        failures += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failures} failed", summary.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
