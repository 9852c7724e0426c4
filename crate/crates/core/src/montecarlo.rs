//! Seeded, parallel sampling of Haar-random monic polynomials over `O_p`,
//! compared against the exact distributions.
//!
//! Sample `j` draws its coefficients from draw `j` of a [`DigitStream`], and
//! samples are tallied in fixed chunks merged associatively, so a report
//! depends on the seed and configuration only, never on the thread count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::decide::{self, cubic_discriminant, depress, CaseTag, Decision, FastPath};
use crate::padic::{DigitStream, PadicField};
use crate::split_types::{
    all_types, exact_cubic, exact_quadratic, exact_unramified, nu_n, nu_star, Dist, GroupLabel, Label, Rat,
    SplittingType, MAX_ENUMERATED_DEGREE,
};
use crate::{Error, Result};

/// Per-row acceptance threshold in standard errors.
pub const Z_LIMIT: f64 = 4.0;

/// First rung of the precision ladder.
pub const START_PRECISION: u32 = 12;

const CHUNK: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    SplittingTypes,
    GaloisGroups,
    Unramified,
    StarConditioned,
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::SplittingTypes,
        Mode::GaloisGroups,
        Mode::Unramified,
        Mode::StarConditioned,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::SplittingTypes => "splitting-types",
            Mode::GaloisGroups => "galois-groups",
            Mode::Unramified => "unramified",
            Mode::StarConditioned => "star-conditioned",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown mode {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub p: u64,
    pub f: u32,
    pub e: u32,
    pub n: u32,
    pub samples: u64,
    pub seed: u64,
    pub precision_cap: u32,
    pub mode: Mode,
}

impl ExperimentConfig {
    pub fn new(p: u64, f: u32, e: u32, n: u32, samples: u64, seed: u64, mode: Mode) -> Self {
        ExperimentConfig {
            p,
            f,
            e,
            n,
            samples,
            seed,
            precision_cap: crate::padic::DEFAULT_PRECISION_CAP,
            mode,
        }
    }

    /// Whether samples go through the exact quadratic/cubic procedures.
    fn exact_decisions(&self) -> bool {
        matches!(self.mode, Mode::SplittingTypes | Mode::GaloisGroups | Mode::Unramified) && self.n <= 3
    }

    pub fn validate(&self) -> Result<PadicField> {
        if self.samples == 0 {
            return Err(Error::InvalidParameter("samples must be at least 1".into()));
        }
        if self.n < 2 || self.n > MAX_ENUMERATED_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "n must lie in 2..={MAX_ENUMERATED_DEGREE}"
            )));
        }
        if self.precision_cap == 0 {
            return Err(Error::InvalidParameter("precision cap must be positive".into()));
        }
        if matches!(self.mode, Mode::GaloisGroups | Mode::Unramified) && self.n > 3 {
            return Err(Error::InvalidParameter(format!("{} mode needs n <= 3", self.mode)));
        }
        if self.exact_decisions() && self.p <= self.n as u64 {
            return Err(Error::InvalidParameter(format!(
                "{} mode at n = {} needs p > {}",
                self.mode, self.n, self.n
            )));
        }
        PadicField::new(self.p, self.f, self.e)
    }
}

/// One line of a report.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub label: String,
    pub count: u64,
    /// Sample count the frequency is taken over.
    pub denominator: u64,
    pub frequency: f64,
    pub exact: Option<Rat>,
    pub stderr: Option<f64>,
    /// `None` when the exact value is 0 or 1 (the row then passes iff the
    /// frequency equals it).
    pub z: Option<f64>,
    /// Whether the row counts towards [`ExperimentReport::pass`].
    pub asserted: bool,
    pub pass: bool,
}

impl Row {
    fn new(label: impl Into<String>, count: u64, denominator: u64, exact: Option<Rat>, asserted: bool) -> Self {
        let frequency = if denominator == 0 {
            0.0
        } else {
            count as f64 / denominator as f64
        };
        let (stderr, z, pass) = match &exact {
            None => (None, None, true),
            Some(p) => {
                let pf = p.to_f64().unwrap_or(f64::NAN);
                if p.is_zero() || p.is_one() {
                    (Some(0.0), None, frequency == pf || denominator == 0)
                } else {
                    let se = (pf * (1.0 - pf) / denominator.max(1) as f64).sqrt();
                    let z = (frequency - pf) / se;
                    (Some(se), Some(z), denominator == 0 || z.abs() <= Z_LIMIT)
                }
            }
        };
        Row {
            label: label.into(),
            count,
            denominator,
            frequency,
            exact,
            stderr,
            z,
            asserted,
            pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub q: u64,
    /// Precision ceiling actually used: the configured cap, clamped to what
    /// the representation holds.
    pub effective_cap: u32,
    pub rows: Vec<Row>,
    pub undetermined: u64,
    pub deferred: u64,
    pub case_counts: BTreeMap<CaseTag, u64>,
    /// Cubic decisions whose group was checked against the discriminant.
    pub coherence_checked: u64,
    pub coherence_failures: u64,
    pub wall_time: Duration,
}

impl ExperimentReport {
    /// Largest tolerated undetermined count.
    pub fn undetermined_allowance(&self) -> f64 {
        10.0 * (self.q as f64).powi(-(self.effective_cap as i32)) * self.config.samples as f64
    }

    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| !r.asserted || r.pass)
            && self.coherence_failures == 0
            && self.undetermined as f64 <= self.undetermined_allowance()
    }

    pub fn row(&self, label: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.label == label)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
struct Tally {
    labels: BTreeMap<Label, u64>,
    cases: BTreeMap<CaseTag, u64>,
    ramified: u64,
    undetermined: u64,
    deferred: u64,
    coherence_checked: u64,
    coherence_failures: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (k, v) in other.labels {
            *self.labels.entry(k).or_default() += v;
        }
        for (k, v) in other.cases {
            *self.cases.entry(k).or_default() += v;
        }
        self.ramified += other.ramified;
        self.undetermined += other.undetermined;
        self.deferred += other.deferred;
        self.coherence_checked += other.coherence_checked;
        self.coherence_failures += other.coherence_failures;
        self
    }
}

/// Decides draw `j`, re-sampling with doubled precision until the decision
/// is determined or the cap is reached.
fn decide_draw(field: &PadicField, stream: &DigitStream, j: u64, n: u32, cap: u32) -> Option<(Decision, Option<bool>)> {
    let mut k = START_PRECISION.min(cap);
    loop {
        let g = stream.monic_poly(field, j, n, k);
        match decide::decide(field, &g) {
            Ok(d) => {
                let coherent = (n == 3).then(|| coherence(field, &g, &d)).flatten();
                return Some((d, coherent));
            }
            Err(Error::PrecisionExhausted) if k < cap => k = (2 * k).min(cap),
            Err(Error::PrecisionExhausted) => return None,
            Err(e) => panic!("decision failed on a valid sample: {e}"),
        }
    }
}

/// Square discriminant exactly for the trivial and `C3` groups; `None` when
/// the discriminant vanishes to working precision.
fn coherence(field: &PadicField, g: &crate::padic::PadicPoly, d: &Decision) -> Option<bool> {
    let dep = depress(field, g).ok()?;
    let disc = cubic_discriminant(field, dep.coeff(1), dep.coeff(0));
    let square = field.is_square_in_field(&disc).ok()?;
    let even =
        d.group == GroupLabel::trivial(3) || d.group == GroupLabel::cyclic(&SplittingType::irreducible(3)).ok()?;
    Some(square == even)
}

fn tally_chunk(cfg: &ExperimentConfig, field: &PadicField, cap: u32, start: u64, end: u64) -> Tally {
    let stream = DigitStream::new(cfg.seed);
    let mut t = Tally::default();
    for j in start..end {
        if cfg.exact_decisions() {
            let Some((d, coherent)) = decide_draw(field, &stream, j, cfg.n, cap) else {
                t.undetermined += 1;
                continue;
            };
            *t.cases.entry(d.case).or_default() += 1;
            if let Some(ok) = coherent {
                t.coherence_checked += 1;
                t.coherence_failures += u64::from(!ok);
            }
            let label = match cfg.mode {
                Mode::GaloisGroups => Label::Group(d.group),
                _ => Label::Type(d.splitting_type),
            };
            if cfg.mode == Mode::Unramified && !d.unramified {
                t.ramified += 1;
            } else {
                *t.labels.entry(label).or_default() += 1;
            }
        } else {
            let g = stream.monic_poly(field, j, cfg.n, 1);
            match decide::fast_path(field, &g) {
                FastPath::Squarefree { splitting_type, .. } => {
                    *t.labels.entry(Label::Type(splitting_type)).or_default() += 1;
                }
                FastPath::Deferred => t.deferred += 1,
            }
        }
    }
    t
}

fn rat(n: u64, d: u64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exact probabilities of the cubic proof cases, including the rescaled
/// polynomials (hence the `1/(1 - q^{-5})` factor).
pub fn expected_case_mass(q: u64, tag: CaseTag) -> Rat {
    let qi = rat(1, q);
    let one = Rat::one();
    let unit = &one - &qi;
    let raw = match tag {
        CaseTag::QuadraticUnit => return rat(q, q + 1),
        CaseTag::QuadraticRamified => return rat(1, q + 1),
        CaseTag::Case1 => &qi * &unit,
        CaseTag::Case2 => qi.pow(3) * &unit,
        CaseTag::Case3 => qi.pow(4) * &unit,
        CaseTag::Case4 => qi.pow(2) * &unit,
        CaseTag::Case5A => &unit * rat(q + 1, 3 * q),
        CaseTag::Case5B => &unit * rat(q - 1, 2 * q),
        CaseTag::Case5C => &unit * (rat(q, 6 * q) - rat(5, 6 * q)),
        CaseTag::Case5D => &unit * &qi,
    };
    raw / (one - qi.pow(5))
}

fn exact_rows(cfg: &ExperimentConfig, q: u64) -> Result<Vec<(Label, Rat)>> {
    let from_dist = |d: &Dist| -> Vec<(Label, Rat)> {
        d.entries()
            .iter()
            .filter_map(|(l, _)| d.exact(l).map(|v| (l.clone(), v.clone())))
            .collect()
    };
    Ok(match (cfg.mode, cfg.n) {
        (Mode::SplittingTypes, 2) => from_dist(&exact_quadratic(q)?.types),
        (Mode::SplittingTypes, 3) => from_dist(&exact_cubic(q)?.types),
        (Mode::GaloisGroups, 2) => from_dist(&exact_quadratic(q)?.groups),
        (Mode::GaloisGroups, _) => from_dist(&exact_cubic(q)?.groups),
        (Mode::Unramified, n) => from_dist(&exact_unramified(n, q)?.types),
        (Mode::SplittingTypes, n) => all_types(n, true)?
            .into_iter()
            .map(|mu| Ok((Label::Type(mu.clone()), nu_star(n, q, &mu)?)))
            .collect::<Result<_>>()?,
        (Mode::StarConditioned, n) => {
            let scale = Rat::one() - rat(1, q);
            all_types(n, true)?
                .into_iter()
                .map(|mu| Ok((Label::Type(mu.clone()), nu_star(n, q, &mu)? / &scale)))
                .collect::<Result<_>>()?
        }
    })
}

pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let field = cfg.validate()?;
    let started = Instant::now();
    let q = field.q();
    let cap = cfg.precision_cap.min(field.max_precision());
    let chunks = cfg.samples.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| tally_chunk(cfg, &field, cap, c * CHUNK, ((c + 1) * CHUNK).min(cfg.samples)))
        .reduce(Tally::default, Tally::merge);

    let n_all = cfg.samples;
    let conditioned = n_all - tally.deferred;
    let denom = if cfg.mode == Mode::StarConditioned {
        conditioned
    } else {
        n_all
    };
    let mut rows = Vec::new();
    let mut seen = Vec::new();
    let r21 = SplittingType::from_degrees(&[2, 1])?;
    for (label, exact) in exact_rows(cfg, q)? {
        let count = tally.labels.get(&label).copied().unwrap_or(0);
        // the (2,1) unramified row is reported, not asserted
        let asserted = !(cfg.mode == Mode::Unramified && label == Label::Type(r21.clone()));
        rows.push(Row::new(label.to_string(), count, denom, Some(exact), asserted));
        seen.push(label);
    }
    for (label, &count) in &tally.labels {
        if !seen.contains(label) {
            // a label the exact table gives no mass to
            rows.push(Row::new(label.to_string(), count, denom, Some(Rat::zero()), true));
        }
    }
    if cfg.mode == Mode::Unramified {
        let total = exact_unramified(cfg.n, q)?.total;
        // derived from the same all-unramified treatment of case 5D as the (2,1) row
        rows.push(Row::new(
            "ramified",
            tally.ramified,
            n_all,
            Some(Rat::one() - total),
            false,
        ));
    }
    if !cfg.exact_decisions() {
        rows.push(Row::new("deferred", tally.deferred, n_all, Some(rat(1, q)), true));
    }
    Ok(ExperimentReport {
        config: cfg.clone(),
        q,
        effective_cap: cap,
        rows,
        undetermined: tally.undetermined,
        deferred: tally.deferred,
        case_counts: tally.cases,
        coherence_checked: tally.coherence_checked,
        coherence_failures: tally.coherence_failures,
        wall_time: started.elapsed(),
    })
}

/// Mass of case 5D cubics whose residually coincident roots generate a
/// ramified quadratic: the deflated quadratic's constant behaves like a
/// Haar element of `πO`, which has odd valuation with probability `q/(q+1)`.
pub fn case5d_ramified_mass(q: u64) -> Rat {
    expected_case_mass(q, CaseTag::Case5D) * rat(q, q + 1)
}

/// Unramified-and-type-(2,1) probability for cubics once case 5D is split by
/// the ramification of its deflated quadratic.
pub fn corrected_unramified_r21(q: u64) -> Result<Rat> {
    let table = exact_unramified(3, q)?;
    let r21 = table
        .types
        .exact_type(&SplittingType::from_degrees(&[2, 1])?)
        .expect("row")
        .clone();
    Ok(r21 - case5d_ramified_mass(q))
}

/// Ramified probability for cubics with the same correction.
pub fn corrected_ramified(q: u64) -> Result<Rat> {
    Ok(Rat::one() - exact_unramified(3, q)?.total + case5d_ramified_mass(q))
}

/// z-score for the difference of two independent frequency estimates of the
/// same probability `p`.
pub fn two_sample_z(f1: f64, n1: u64, f2: f64, n2: u64, p: f64) -> f64 {
    (f1 - f2) / (p * (1.0 - p) * (1.0 / n1 as f64 + 1.0 / n2 as f64)).sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub q: u64,
    pub label: String,
    /// Star-conditioned frequency.
    pub estimate: f64,
    pub stderr: f64,
    /// Exact star-conditioned probability.
    pub exact: Rat,
    pub nu_n: Rat,
    /// `|estimate - ν_n(μ)|`.
    pub error: f64,
    /// `|exact - ν_n(μ)|`.
    pub exact_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub n: u32,
    pub rows: Vec<SweepRow>,
    /// Least-squares slope of `log(exact_error)` against `log q` per label;
    /// `None` when fewer than two errors are nonzero.
    pub slopes: Vec<(String, Option<f64>)>,
    pub reports: Vec<ExperimentReport>,
}

fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, y)| *y > 1e-300)
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// Star-conditioned runs over increasing `q`, tracking the distance of each
/// splitting type from its cycle-type frequency.
pub fn sweep(n: u32, qs: &[u64], samples: u64, seed: u64) -> Result<SweepReport> {
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for &q in qs {
        let (p, f) = crate::arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let cfg = ExperimentConfig::new(p, f, 1, n, samples, seed, Mode::StarConditioned);
        let report = run(&cfg)?;
        for mu in all_types(n, true)? {
            let row = report.row(&mu.to_string()).expect("row per type");
            let exact = row.exact.clone().expect("exact value");
            let target = nu_n(&mu)?;
            rows.push(SweepRow {
                q,
                label: mu.to_string(),
                estimate: row.frequency,
                stderr: row.stderr.unwrap_or(0.0),
                error: (row.frequency - target.to_f64().unwrap()).abs(),
                exact_error: (&exact - &target).to_f64().unwrap().abs(),
                exact,
                nu_n: target,
            });
        }
        reports.push(report);
    }
    let slopes = if qs.len() >= 2 {
        all_types(n, true)?
            .into_iter()
            .map(|mu| {
                let label = mu.to_string();
                let pts: Vec<(f64, f64)> = rows
                    .iter()
                    .filter(|r| r.label == label)
                    .map(|r| (r.q as f64, r.exact_error))
                    .collect();
                (label, log_log_slope(&pts))
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(SweepReport {
        n,
        rows,
        slopes,
        reports,
    })
}
