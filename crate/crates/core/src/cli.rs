//! Command-line front end: `epsilon`, `verify` and `bench`.
//!
//! Every command returns a serializable report; [`run`] turns reports into
//! text or JSON and errors into exit codes (0 success, 2 usage, 3 failed
//! invariant).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::{CyclotomicNumber, RootOfUnity};
use crate::epsilon::{self, EpsilonValue};
use crate::error::Error;
use crate::finitefield::{gauss_sum, quadratic_gauss_closed_form, FiniteField};
use crate::localfield::{
    enumerate_characters, AdditiveCharacter, LocalCharacter, PAdicApprox, UnitGroup,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("invariant failure: {0}")]
    Invariant(String),
    #[error("cannot write output: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invariant(_) => EXIT_INVARIANT,
            CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolation(_) | Error::LevelMismatch(_) | Error::FieldMismatch(_) => {
                CliError::Invariant(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "epsilon-factor",
    version,
    about = "Exact local epsilon factors of characters of Q_p"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one epsilon factor by the full and the reduced sum.
    Epsilon(EpsilonArgs),
    /// Sweep all characters of small conductor through every identity.
    Verify(VerifyArgs),
    /// Time the full sum against the reduced sum.
    Bench(BenchArgs),
}

/// A character `chi` of `Q_p^x` and an additive character `psi_b`.
///
/// `chi(g) = zeta_{phi(p^a)}^t` on the fixed generator `g` of `(Z/p^a)^x`,
/// `chi(p) = zeta_{pi_order}^{pi_exp}`, and `b = p^psi_twist_valuation * psi_twist_unit`.
#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct CharSpec {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub a: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub t: i64,
    #[arg(long, default_value_t = 1)]
    pub pi_order: u64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub pi_exp: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub psi_twist_valuation: i64,
    #[arg(long, default_value_t = 1)]
    pub psi_twist_unit: u64,
}

impl CharSpec {
    pub fn new(p: u64, a: u32, t: i64) -> Self {
        CharSpec {
            p,
            a,
            t,
            pi_order: 1,
            pi_exp: 0,
            psi_twist_valuation: 0,
            psi_twist_unit: 1,
        }
    }

    pub fn character(&self) -> Result<LocalCharacter, CliError> {
        let pi = RootOfUnity::new(self.pi_order, self.pi_exp)?;
        Ok(LocalCharacter::new(self.p, self.a, self.t, pi)?)
    }

    pub fn additive(&self) -> Result<AdditiveCharacter, CliError> {
        if self.psi_twist_unit.is_multiple_of(self.p) {
            return Err(CliError::Usage(format!(
                "psi_twist_unit must be prime to p = {}",
                self.p
            )));
        }
        let prec = crate::localfield::max_precision(self.p);
        let b = PAdicApprox::new(self.p, self.psi_twist_valuation, self.psi_twist_unit, prec)?;
        Ok(AdditiveCharacter::twisted(b)?)
    }
}

#[derive(Debug, Args)]
pub struct EpsilonArgs {
    #[command(flatten)]
    pub spec: CharSpec,
    /// Reduction depth, `0 <= 2m <= a`; defaults to `floor(a/2)`.
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include wall-clock timings (makes the output nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub p: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    pub a_max: u32,
    #[arg(long, default_value_t = 1)]
    pub pi_order: u64,
    /// Conductors with `p^a` above this are skipped.
    #[arg(long, default_value_t = 2500)]
    pub max_modulus: u64,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub a: u32,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub t: i64,
    #[arg(long, value_delimiter = ',', required = true)]
    pub m: Vec<u32>,
    /// Timing repetitions; the fastest run is reported.
    #[arg(long, default_value_t = 5)]
    pub reps: u32,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Lossless serialization of a cyclotomic number: nonzero coordinates in the
/// canonical basis, keyed by basis index, as `"num/den"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub level: u64,
    pub coeffs: BTreeMap<u64, String>,
    pub half_power: u32,
}

impl ExactValue {
    pub fn from_epsilon(e: &EpsilonValue) -> Self {
        let coeffs = e
            .value()
            .nonzero_coeffs()
            .map(|(i, c)| (i, format!("{}/{}", c.numer(), c.denom())))
            .collect();
        ExactValue {
            level: e.value().level(),
            coeffs,
            half_power: e.half_power(),
        }
    }

    pub fn to_epsilon(&self, p: u64) -> Result<EpsilonValue, CliError> {
        let deg = crate::arith::euler_phi(self.level) as usize;
        let mut dense = vec![BigRational::from_integer(BigInt::from(0)); deg];
        for (&i, s) in &self.coeffs {
            let q = BigRational::from_str(s)
                .map_err(|e| CliError::Usage(format!("bad rational {s:?}: {e}")))?;
            let slot = dense
                .get_mut(i as usize)
                .ok_or_else(|| CliError::Usage(format!("basis index {i} out of range")))?;
            *slot = q;
        }
        let v = CyclotomicNumber::new(self.level, dense)?;
        Ok(EpsilonValue::new(p, v, self.half_power))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Approx {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CRecord {
    pub valuation: i64,
    pub unit: u64,
    pub m: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermCounts {
    pub naive: u64,
    pub reduced: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub naive_us: f64,
    pub reduced_us: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonInput {
    #[serde(flatten)]
    pub spec: CharSpec,
    pub m: u32,
}

/// Output of the `epsilon` command. Everything except `approx` and
/// `timings` is exact and reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub input: EpsilonInput,
    pub epsilon: ExactValue,
    pub approx: Approx,
    pub c: CRecord,
    pub term_counts: TermCounts,
    pub checks: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl ResultRecord {
    pub fn all_passed(&self) -> bool {
        self.checks.values().all(|&b| b)
    }

    pub fn epsilon_value(&self) -> Result<EpsilonValue, CliError> {
        self.epsilon.to_epsilon(self.input.spec.p)
    }

    /// Recomputes the record from its input and confirms that the stored
    /// epsilon and check booleans are reproduced exactly.
    pub fn recheck(&self) -> Result<bool, CliError> {
        let fresh = cmd_epsilon(&self.input.spec, Some(self.input.m), false)?;
        Ok(fresh.checks == self.checks
            && fresh.c == self.c
            && fresh.term_counts == self.term_counts
            && fresh.epsilon_value()? == self.epsilon_value()?)
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e6)
}

/// Computes `epsilon(chi, psi)` by the full sum and by the reduced sum at
/// depth `m` (default `floor(a/2)`) and checks that they agree.
pub fn cmd_epsilon(
    spec: &CharSpec,
    m: Option<u32>,
    with_timings: bool,
) -> Result<ResultRecord, CliError> {
    let chi = spec.character()?;
    let psi = spec.additive()?;
    let a = spec.a;
    let m = m.unwrap_or(a / 2);
    if 2 * m > a {
        return Err(CliError::Usage(format!(
            "reduction depth m = {m} needs 2m <= a = {a}"
        )));
    }
    let input = EpsilonInput {
        spec: spec.clone(),
        m,
    };
    let mut checks = BTreeMap::new();

    if a == 0 {
        let (eps, us) = timed(|| epsilon::epsilon_unramified(&chi, &psi));
        let eps = eps?;
        checks.insert("modulus_one".to_string(), eps.modulus_one());
        let (re, im) = eps.approx();
        return Ok(ResultRecord {
            input,
            epsilon: ExactValue::from_epsilon(&eps),
            approx: Approx { re, im },
            c: CRecord {
                valuation: psi.conductor(),
                unit: 1,
                m: 0,
            },
            term_counts: TermCounts {
                naive: 0,
                reduced: 0,
            },
            checks,
            timings: with_timings.then_some(Timings {
                naive_us: us,
                reduced_us: us,
            }),
        });
    }

    let (naive, naive_us) = timed(|| epsilon::tate_epsilon(&chi, &psi, None));
    let naive = naive?;
    let (reduced, reduced_us) = timed(|| epsilon::lamprecht_tate_epsilon(&chi, &psi, m));
    let reduced = reduced?;
    let identity = epsilon::reduction_identity(&chi, &psi, m)?;
    let c = identity.c;

    checks.insert("modulus_one".to_string(), reduced.modulus_one());
    checks.insert("formulas_agree".to_string(), naive == reduced);
    checks.insert("reduction_identity".to_string(), identity.holds());
    checks.insert("c_condition".to_string(), c.verify(&chi, &psi)?);

    let (re, im) = reduced.approx();
    Ok(ResultRecord {
        input,
        epsilon: ExactValue::from_epsilon(&reduced),
        approx: Approx { re, im },
        c: CRecord {
            valuation: c.valuation,
            unit: c.unit,
            m: c.m,
        },
        term_counts: TermCounts {
            naive: identity.full.terms,
            reduced: identity.reduced.terms,
        },
        checks,
        timings: with_timings.then_some(Timings {
            naive_us,
            reduced_us,
        }),
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub passed: u64,
    pub total: u64,
}

/// Where an identity failed: the character, and the depth or sample that broke it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub identity: String,
    pub p: u64,
    pub a: u32,
    pub t: u64,
    pub pi_order: u64,
    pub pi_exp: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub identities: BTreeMap<String, Tally>,
    pub skipped: Vec<String>,
    pub first_failure: Option<Counterexample>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

struct Outcome {
    identity: &'static str,
    ok: bool,
    detail: String,
}

fn outcome(identity: &'static str, r: Result<bool, Error>, detail: String) -> Outcome {
    match r {
        Ok(ok) => Outcome {
            identity,
            ok,
            detail,
        },
        Err(e) => Outcome {
            identity,
            ok: false,
            detail: format!("{detail}: {e}"),
        },
    }
}

/// Largest modulus `p^{a+m}` the integral check will enumerate.
const INTEGRAL_LIMIT: u64 = 20_000;

fn character_checks(chi: &LocalCharacter, psi: &AdditiveCharacter) -> Vec<Outcome> {
    let p = chi.p();
    let a = chi.conductor();
    let mut out = Vec::new();
    let tate = epsilon::tate_epsilon(chi, psi, None);

    out.push(outcome(
        "modulus_one",
        tate.as_ref().map(|e| e.modulus_one()).map_err(Clone::clone),
        String::new(),
    ));

    for m in 0..=a / 2 {
        out.push(outcome(
            "reduction_identity",
            epsilon::reduction_identity_check(chi, psi, m),
            format!("m = {m}"),
        ));
        let agree =
            epsilon::lamprecht_tate_epsilon(chi, psi, m).and_then(|r| tate.clone().map(|t| t == r));
        out.push(outcome("reduced_formula", agree, format!("m = {m}")));
    }

    for u in [2u64, p + 1, 2 * p - 1] {
        let r = epsilon::tate_epsilon(chi, psi, Some(u)).and_then(|e| tate.clone().map(|t| t == e));
        out.push(outcome("c_unit_invariance", r, format!("unit = {u}")));
    }

    for m in -3i32..=3 {
        if p.pow((a as i32 + m.max(0)) as u32) > INTEGRAL_LIMIT {
            continue;
        }
        let r = epsilon::unit_integral(chi, psi, m).map(|i| {
            if m == 0 {
                i.abs_squared() == Some(BigRational::new(1.into(), BigInt::from(p).pow(a)))
            } else {
                i.is_zero()
            }
        });
        out.push(outcome("unit_integral", r, format!("m = {m}")));
    }

    if a >= 2 {
        let (name, r) = if a.is_multiple_of(2) {
            ("lamprecht_even", epsilon::lamprecht_even(chi, psi))
        } else {
            ("lamprecht_odd", epsilon::lamprecht_odd(chi, psi))
        };
        let ok = r.and_then(|e| tate.clone().map(|t| t == e));
        out.push(outcome(name, ok, String::new()));

        for b in 1..=a / 2 {
            let betas = match enumerate_characters(p, b, 1) {
                Ok(it) => it.take(4).collect::<Vec<_>>(),
                Err(e) => {
                    out.push(outcome("deligne_twist", Err(e), format!("a(beta) = {b}")));
                    continue;
                }
            };
            for beta in betas {
                let r = chi.mul(&beta).and_then(|prod| {
                    let rhs = epsilon::deligne_twist(chi, &beta, psi)?;
                    Ok(prod.conductor() == a && epsilon::tate_epsilon(&prod, psi, None)? == rhs)
                });
                out.push(outcome(
                    "deligne_twist",
                    r,
                    format!("beta t = {}, a(beta) = {b}", beta.unit_exponent()),
                ));
            }
        }
    }

    if a >= 2 {
        let cls = epsilon::epsilon_mod_mu_p_infinity(chi, psi).map(|_| true);
        out.push(outcome("mod_mu_classification", cls, String::new()));
    }
    out
}

fn gauss_checks(p: u64, max_modulus: u64) -> Vec<(Outcome, u32)> {
    let mut out = Vec::new();
    let mut s = 1;
    while p.checked_pow(s).is_some_and(|q| q <= max_modulus) {
        let r = FiniteField::new(p, s).and_then(|f| {
            let g = gauss_sum(&f.quadratic_character(), &f.additive_character())?;
            let closed = quadratic_gauss_closed_form(p, s)?;
            Ok((g == closed, f.sum_of_square_values() == g))
        });
        let (closed, squares) = match r {
            Ok((x, y)) => (Ok(x), Ok(y)),
            Err(e) => (Err(e.clone()), Err(e)),
        };
        out.push((
            outcome("gauss_closed_form", closed, format!("q = {p}^{s}")),
            s,
        ));
        out.push((outcome("square_sum", squares, format!("q = {p}^{s}")), s));
        s += 1;
    }
    out
}

/// Runs every identity over all characters of conductor `1..=a_max` with
/// `p^a <= max_modulus` and `chi(p)` of order dividing `pi_order`.
pub fn cmd_verify(
    p_list: &[u64],
    a_max: u32,
    pi_order: u64,
    max_modulus: u64,
) -> Result<VerifyReport, CliError> {
    if p_list.is_empty() {
        return Err(CliError::Usage("empty prime list".into()));
    }
    if a_max == 0 {
        return Err(CliError::Usage("a_max must be at least 1".into()));
    }
    for &p in p_list {
        // rejects 2 and composites with a precise diagnostic
        UnitGroup::shared(p, 1)?;
    }
    let mut identities: BTreeMap<String, Tally> = BTreeMap::new();
    let mut failures: Vec<Counterexample> = Vec::new();
    let mut skipped = Vec::new();
    let psi_cache: Vec<(u64, AdditiveCharacter)> = p_list
        .iter()
        .map(|&p| Ok((p, AdditiveCharacter::canonical(p)?)))
        .collect::<Result<_, Error>>()?;

    let mut record = |o: &Outcome, p: u64, a: u32, t: u64, pi: RootOfUnity| {
        let tally = identities.entry(o.identity.to_string()).or_default();
        tally.total += 1;
        if o.ok {
            tally.passed += 1;
        } else {
            failures.push(Counterexample {
                identity: o.identity.to_string(),
                p,
                a,
                t,
                pi_order: pi.order(),
                pi_exp: pi.exponent(),
                detail: o.detail.clone(),
            });
        }
    };

    for (p, psi) in &psi_cache {
        let p = *p;
        for (o, s) in gauss_checks(p, max_modulus) {
            record(&o, p, s, 0, RootOfUnity::one());
        }
        for a in 1..=a_max {
            match p.checked_pow(a) {
                Some(q) if q <= max_modulus => {}
                _ => {
                    skipped.push(format!("p = {p}, a = {a}: p^a exceeds {max_modulus}"));
                    continue;
                }
            }
            let chars: Vec<LocalCharacter> = enumerate_characters(p, a, pi_order)?.collect();
            let results: Vec<(u64, RootOfUnity, Vec<Outcome>)> = chars
                .par_iter()
                .map(|chi| {
                    (
                        chi.unit_exponent(),
                        chi.pi_value(),
                        character_checks(chi, psi),
                    )
                })
                .collect();
            for (t, pi, outcomes) in results {
                for o in &outcomes {
                    record(o, p, a, t, pi);
                }
            }
        }
    }
    failures.sort();
    Ok(VerifyReport {
        identities,
        skipped,
        first_failure: failures.into_iter().next(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub m: u32,
    pub term_counts: TermCounts,
    pub epsilon_equal: bool,
    pub timings: Timings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub p: u64,
    pub a: u32,
    pub t: i64,
    pub rows: Vec<BenchRow>,
}

/// Times the full sum against the reduced sum at each depth in `m_list` for
/// the character `chi(g) = zeta^t`, `chi(p) = 1`, canonical `psi`. Each
/// timing is the fastest of `reps` runs.
pub fn cmd_bench(
    p: u64,
    a: u32,
    t: i64,
    m_list: &[u32],
    reps: u32,
) -> Result<BenchReport, CliError> {
    if m_list.is_empty() {
        return Err(CliError::Usage("empty depth list".into()));
    }
    if a == 0 {
        return Err(CliError::Usage(
            "bench needs a ramified character (a >= 1)".into(),
        ));
    }
    if let Some(m) = m_list.iter().find(|&&m| 2 * m > a) {
        return Err(CliError::Usage(format!(
            "reduction depth m = {m} needs 2m <= a = {a}"
        )));
    }
    let chi = CharSpec::new(p, a, t).character()?;
    let psi = AdditiveCharacter::canonical(p)?;
    let reps = reps.max(1);
    let fastest =
        |f: &dyn Fn() -> Result<EpsilonValue, Error>| -> Result<(EpsilonValue, f64), Error> {
            let mut best = f64::INFINITY;
            let mut value = None;
            for _ in 0..reps {
                let (v, us) = timed(f);
                best = best.min(us);
                value = Some(v?);
            }
            Ok((value.expect("at least one repetition"), best))
        };

    let (naive, naive_us) = fastest(&|| epsilon::tate_epsilon(&chi, &psi, None))?;
    let mut rows = Vec::new();
    for &m in m_list {
        let (reduced, reduced_us) = fastest(&|| epsilon::lamprecht_tate_epsilon(&chi, &psi, m))?;
        rows.push(BenchRow {
            m,
            term_counts: TermCounts {
                naive: epsilon::full_term_count(p, a),
                reduced: epsilon::reduced_term_count(p, a, m),
            },
            epsilon_equal: naive == reduced,
            timings: Timings {
                naive_us,
                reduced_us,
            },
        });
    }
    Ok(BenchReport { p, a, t, rows })
}

fn emit<T: Serialize>(
    report: &T,
    text: String,
    json: bool,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let rendered = serde_json::to_string_pretty(report).expect("reports serialize");
    if let Some(path) = out {
        std::fs::write(path, format!("{rendered}\n"))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let body = if json { format!("{rendered}\n") } else { text };
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = std::io::Write::write_all(&mut std::io::stdout().lock(), body.as_bytes());
    Ok(())
}

fn epsilon_text(r: &ResultRecord) -> String {
    let s = &r.input.spec;
    let mut text = format!(
        "chi: p = {}, a = {}, t = {}, chi(p) = zeta_{}^{}\n",
        s.p, s.a, s.t, s.pi_order, s.pi_exp
    );
    text += &format!(
        "psi: b = {}^{} * {}\n",
        s.p, s.psi_twist_valuation, s.psi_twist_unit
    );
    text += &format!(
        "c = {}^{} * {} (depth m = {})\n",
        s.p, r.c.valuation, r.c.unit, r.c.m
    );
    if let Ok(e) = r.epsilon_value() {
        text += &format!("epsilon = {e}\n");
    }
    text += &format!("        ~ {:.12} {:+.12} i\n", r.approx.re, r.approx.im);
    text += &format!(
        "terms: full {} vs reduced {}\n",
        r.term_counts.naive, r.term_counts.reduced
    );
    for (name, ok) in &r.checks {
        text += &format!("check {name}: {}\n", if *ok { "ok" } else { "FAILED" });
    }
    if let Some(t) = r.timings {
        text += &format!(
            "time: full {:.1} us, reduced {:.1} us\n",
            t.naive_us, t.reduced_us
        );
    }
    text
}

fn verify_text(r: &VerifyReport) -> String {
    let mut text = String::new();
    for (name, t) in &r.identities {
        text += &format!("{name:<24} {:>7} / {:<7}\n", t.passed, t.total);
    }
    for s in &r.skipped {
        text += &format!("skipped: {s}\n");
    }
    text += if r.all_passed() {
        "all identities hold\n"
    } else {
        "FAILURES present\n"
    };
    text
}

fn bench_text(r: &BenchReport) -> String {
    let mut text = format!("p = {}, a = {}, t = {}\n", r.p, r.a, r.t);
    text += "   m    full terms  reduced terms     full us  reduced us  equal\n";
    for row in &r.rows {
        text += &format!(
            "{:>4} {:>13} {:>14} {:>11.1} {:>11.1}  {}\n",
            row.m,
            row.term_counts.naive,
            row.term_counts.reduced,
            row.timings.naive_us,
            row.timings.reduced_us,
            row.epsilon_equal
        );
    }
    text
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Epsilon(args) => {
            let rec = cmd_epsilon(&args.spec, args.m, args.timings)?;
            emit(&rec, epsilon_text(&rec), args.json, args.out.as_ref())?;
            if !rec.all_passed() {
                return Err(CliError::Invariant(
                    serde_json::to_string(&rec.checks).expect("checks serialize"),
                ));
            }
        }
        Command::Verify(args) => {
            let rep = cmd_verify(&args.p, args.a_max, args.pi_order, args.max_modulus)?;
            emit(&rep, verify_text(&rep), args.json, args.out.as_ref())?;
            if let Some(f) = &rep.first_failure {
                return Err(CliError::Invariant(
                    serde_json::to_string(f).expect("counterexample serializes"),
                ));
            }
        }
        Command::Bench(args) => {
            let rep = cmd_bench(args.p, args.a, args.t, &args.m, args.reps)?;
            emit(&rep, bench_text(&rep), args.json, args.out.as_ref())?;
            if rep.rows.iter().any(|r| !r.epsilon_equal) {
                return Err(CliError::Invariant(
                    "reduced and full epsilon differ".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
