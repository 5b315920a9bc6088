//! Local epsilon factors `epsilon(chi, psi)` for characters of `Q_p^x`.
//!
//! Two evaluation routes are provided and cross-checked everywhere:
//!
//! * the full sum over `(Z_p/p^a)^x`, normalized by `chi(c) p^{-a/2}` with
//!   `v_p(c) = a(chi) + n(psi)`;
//! * the reduced sum over `(1 + p^m Z_p) / (1 + p^{a-m} Z_p)`, which needs a
//!   `c` satisfying `chi(1 + y) = psi(y / c)` on `p^{a-m} Z_p` and has only
//!   `p^{a-2m}` terms.
//!
//! Values are kept exact as [`EpsilonValue`]s `V * p^{-k/2}` with `V`
//! cyclotomic. Unramified characters use the convention
//! `epsilon(chi, psi) = chi(p^{n(psi)})`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use crate::arith::{inv_mod, lcm, mul_mod};
use crate::cyclo::{CyclotomicNumber, RootOfUnity, RootSum};
use crate::error::{Error, Result};
use crate::finitefield::sqrt_p;
use crate::localfield::{AdditiveCharacter, LocalCharacter, PAdicApprox, UnitGroup};

/// An exact epsilon value `value * p^{-half_power/2}`.
#[derive(Debug, Clone)]
pub struct EpsilonValue {
    p: u64,
    value: CyclotomicNumber,
    half_power: u32,
}

impl EpsilonValue {
    pub fn new(p: u64, value: CyclotomicNumber, half_power: u32) -> Self {
        EpsilonValue {
            p,
            value,
            half_power,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> &CyclotomicNumber {
        &self.value
    }

    pub fn half_power(&self) -> u32 {
        self.half_power
    }

    /// `|epsilon| = 1`, checked as `V * conj(V) = p^k`.
    pub fn modulus_one(&self) -> bool {
        let norm = &self.value * &self.value.conjugate();
        norm == CyclotomicNumber::from_bigint(1, p_power(self.p, self.half_power))
    }

    /// Product with a root of unity.
    pub fn mul_root(&self, r: &RootOfUnity) -> Self {
        EpsilonValue::new(self.p, self.value.mul_root(r), self.half_power)
    }

    /// The value as a single cyclotomic number, using the exact `sqrt(p)`
    /// when the half power is odd.
    pub fn to_cyclotomic(&self) -> Result<CyclotomicNumber> {
        let k = self.half_power;
        if k.is_multiple_of(2) {
            let den = p_power(self.p, k / 2);
            return Ok(self.value.scale(&BigRational::new(1.into(), den)));
        }
        let den = p_power(self.p, k.div_ceil(2));
        Ok((&self.value * &sqrt_p(self.p)?).scale(&BigRational::new(1.into(), den)))
    }

    pub fn approx(&self) -> (f64, f64) {
        let (re, im) = self.value.approx_complex(15);
        let s = (self.p as f64).powf(self.half_power as f64 / 2.0);
        (re / s, im / s)
    }
}

impl PartialEq for EpsilonValue {
    /// Exact comparison: `V1 p^{-k1/2} = V2 p^{-k2/2}` iff
    /// `V1 p^{(k2-k1)/2} = V2` for `k1 <= k2`, with `sqrt(p)` exact for odd gaps.
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        let (lo, hi) = if self.half_power <= other.half_power {
            (self, other)
        } else {
            (other, self)
        };
        let gap = hi.half_power - lo.half_power;
        let mut scaled = lo.value.scale_int(&p_power(self.p, gap / 2));
        if gap % 2 == 1 {
            match sqrt_p(self.p) {
                Ok(r) => scaled = &scaled * &r,
                Err(_) => return false,
            }
        }
        scaled == hi.value
    }
}

impl fmt::Display for EpsilonValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.half_power {
            0 => write!(f, "{}", self.value),
            k if k % 2 == 0 => write!(f, "({}) / {}^{}", self.value, self.p, k / 2),
            k => write!(f, "({}) * {}^(-{}/2)", self.value, self.p, k),
        }
    }
}

fn p_power(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

/// A character sum together with the number of terms it was built from.
#[derive(Debug, Clone)]
pub struct CharacterSum {
    pub value: CyclotomicNumber,
    pub terms: u64,
}

fn ramified_conductor(chi: &LocalCharacter) -> Result<u32> {
    match chi.conductor() {
        0 => Err(Error::Domain(
            "unramified character: use epsilon_unramified".into(),
        )),
        a => Ok(a),
    }
}

fn check_primes(chi: &LocalCharacter, psi: &AdditiveCharacter) -> Result<()> {
    if chi.p() != psi.p() {
        return Err(Error::InvalidArgument(format!(
            "character of Q_{} paired with additive character of Q_{}",
            chi.p(),
            psi.p()
        )));
    }
    Ok(())
}

/// `u_b * c_unit^{-1} mod p^depth`, the multiplier turning `psi(x / c)` into
/// `zeta_{p^a}^{w x}` when `v(c) = a + n(psi)`.
fn dual_multiplier(psi: &AdditiveCharacter, c_unit: u64, depth: u32) -> Result<u64> {
    let p = psi.p();
    let m = p.pow(depth);
    let ub = psi.twist().unit_mod(depth)?;
    let inv = inv_mod(c_unit % m, m)
        .ok_or_else(|| Error::InvalidArgument(format!("{c_unit} is not a unit mod {p}")))?;
    Ok(mul_mod(ub, inv, m))
}

/// `chi(c)` for `c = p^{a + n(psi)} * c_unit`.
fn chi_at_c(chi: &LocalCharacter, psi: &AdditiveCharacter, c_unit: u64) -> Result<RootOfUnity> {
    let v = chi.conductor() as i64 + psi.conductor();
    Ok(chi.pi_value().pow(v) * chi.eval_unit(c_unit)?)
}

/// `sum_{x in (Z/p^a)^x} chi^{-1}(x) psi(x / c)` with `c = p^{a + n(psi)} c_unit`.
pub fn tate_sum(
    chi: &LocalCharacter,
    psi: &AdditiveCharacter,
    c_unit: u64,
) -> Result<CharacterSum> {
    check_primes(chi, psi)?;
    let a = ramified_conductor(chi)?;
    let p = chi.p();
    let group = chi
        .unit_group()
        .expect("ramified characters carry their unit group");
    let pa = group.modulus();
    let phi = group.order();
    let level = lcm(phi, pa);
    let (chi_scale, psi_scale) = (level / phi, level / pa);
    let w = dual_multiplier(psi, c_unit, a)?;
    let t = chi.unit_exponent();
    let mut sum = RootSum::new(level, phi);
    for (k, x) in group.units() {
        let chi_inv = (phi - mul_mod(t, k, phi)) % phi;
        let psi_e = mul_mod(w, x, pa);
        sum.add_exponent(chi_inv * chi_scale + psi_e * psi_scale);
    }
    debug_assert_eq!(p.pow(a), pa);
    Ok(CharacterSum {
        terms: sum.term_count(),
        value: sum.finish(),
    })
}

/// Epsilon factor by the full sum with `c = p^{a + n(psi)} * c_unit`
/// (`c_unit` defaults to 1). The result does not depend on `c_unit`.
pub fn tate_epsilon(
    chi: &LocalCharacter,
    psi: &AdditiveCharacter,
    c_unit: Option<u64>,
) -> Result<EpsilonValue> {
    let c_unit = c_unit.unwrap_or(1);
    let sum = tate_sum(chi, psi, c_unit)?;
    let prefactor = chi_at_c(chi, psi, c_unit)?;
    Ok(EpsilonValue::new(
        chi.p(),
        sum.value.mul_root(&prefactor),
        chi.conductor(),
    ))
}

/// Epsilon factor of an unramified character: `chi(p^{n(psi)})`.
pub fn epsilon_unramified(chi: &LocalCharacter, psi: &AdditiveCharacter) -> Result<EpsilonValue> {
    check_primes(chi, psi)?;
    if chi.conductor() != 0 {
        return Err(Error::InvalidArgument(
            "epsilon_unramified needs conductor 0".into(),
        ));
    }
    let r = chi.pi_value().pow(psi.conductor());
    Ok(EpsilonValue::new(
        chi.p(),
        CyclotomicNumber::from_root(&r),
        0,
    ))
}

/// Epsilon factor by whichever route applies (unramified convention or full sum).
pub fn epsilon(chi: &LocalCharacter, psi: &AdditiveCharacter) -> Result<EpsilonValue> {
    if chi.conductor() == 0 {
        epsilon_unramified(chi, psi)
    } else {
        tate_epsilon(chi, psi, None)
    }
}

/// `I(m) = sum * p^{-measure_power}`.
#[derive(Debug, Clone)]
pub struct UnitIntegral {
    pub p: u64,
    pub sum: CyclotomicNumber,
    pub measure_power: u32,
    pub terms: u64,
}

impl UnitIntegral {
    pub fn value(&self) -> CyclotomicNumber {
        let den = p_power(self.p, self.measure_power);
        self.sum.scale(&BigRational::new(1.into(), den))
    }

    /// `|I(m)|^2` as an exact rational.
    pub fn abs_squared(&self) -> Option<BigRational> {
        let norm = (&self.sum * &self.sum.conjugate()).as_rational()?;
        Some(norm / BigRational::from_integer(p_power(self.p, 2 * self.measure_power)))
    }

    pub fn is_zero(&self) -> bool {
        self.sum.is_zero()
    }
}

/// `I(m) = int_{Z_p^x} chi^{-1}(x) psi(x / p^{a + n(psi) + m}) dx` with Haar
/// measure giving `Z_p` volume 1.
///
/// The integrand is constant on cosets of `1 + p^D Z_p`, `D = max(a, a + m)`,
/// each of volume `p^{-D}`, so the integral is an exact finite sum.
pub fn unit_integral(
    chi: &LocalCharacter,
    psi: &AdditiveCharacter,
    m: i32,
) -> Result<UnitIntegral> {
    check_primes(chi, psi)?;
    let a = ramified_conductor(chi)?;
    let p = chi.p();
    let depth = (a as i64 + m as i64).max(a as i64) as u32;
    let psi_depth = (a as i64 + m as i64).max(0) as u32;
    let group = UnitGroup::shared(p, depth)?;
    let phi_a = chi.unit_order();
    let ppsi = p.pow(psi_depth);
    let level = lcm(phi_a, ppsi);
    let (chi_scale, psi_scale) = (level / phi_a, level / ppsi);
    let ub = if psi_depth == 0 {
        0
    } else {
        psi.twist().unit_mod(psi_depth)?
    };
    let t = chi.unit_exponent();
    let mut sum = RootSum::new(level, group.order());
    for (k, x) in group.units() {
        let chi_inv = (phi_a - mul_mod(t, k % phi_a, phi_a)) % phi_a;
        let psi_e = if psi_depth == 0 {
            0
        } else {
            mul_mod(ub, x, ppsi)
        };
        sum.add_exponent(chi_inv * chi_scale + psi_e * psi_scale);
    }
    Ok(UnitIntegral {
        p,
        terms: sum.term_count(),
        sum: sum.finish(),
        measure_power: depth,
    })
}

/// An element `c = p^valuation * unit` realizing `chi(1 + y) = psi(y / c)` on
/// `p^{a-m} Z_p`. `unit` is the least positive representative mod `p^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CSolution {
    pub p: u64,
    pub valuation: i64,
    pub unit: u64,
    pub m: u32,
}

impl CSolution {
    pub fn to_padic(&self) -> Result<PAdicApprox> {
        let exact = crate::localfield::max_precision(self.p);
        PAdicApprox::new(self.p, self.valuation, self.unit, exact)
    }

    /// Checks the defining identity on every `y` in `p^{a-m} Z / p^a Z`.
    pub fn verify(&self, chi: &LocalCharacter, psi: &AdditiveCharacter) -> Result<bool> {
        let a = chi.conductor();
        let p = self.p;
        let step = p.pow(a - self.m);
        let w = dual_multiplier(psi, self.unit, a)?;
        let pa = p.pow(a);
        for k in 0..p.pow(self.m) {
            let y = k * step;
            let lhs = chi.eval_unit((1 + y) % pa)?;
            let rhs = RootOfUnity::from_parts(pa, mul_mod(w, y, pa));
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_depth(a: u32, m: u32) -> Result<()> {
    if 2 * m > a {
        return Err(Error::InvalidArgument(format!(
            "reduction depth m = {m} needs 2m <= a(chi) = {a}"
        )));
    }
    Ok(())
}

/// Solves for `c` with `chi(1 + y) = psi(y / c)` for all `y` in `p^{a-m} Z_p`.
///
/// `p^{a-m} Z / p^a Z` is cyclic, generated by `y0 = p^{a-m}`, and
/// `chi(1 + y0)` has exact order `p^m`, so writing it as `zeta_{p^m}^r` pins
/// the unit of `c` to `u_b r^{-1} mod p^m`.
pub fn solve_c(chi: &LocalCharacter, psi: &AdditiveCharacter, m: u32) -> Result<CSolution> {
    check_primes(chi, psi)?;
    let a = ramified_conductor(chi)?;
    check_depth(a, m)?;
    let p = chi.p();
    let valuation = a as i64 + psi.conductor();
    if m == 0 {
        return Ok(CSolution {
            p,
            valuation,
            unit: 1,
            m,
        });
    }
    let pm = p.pow(m);
    let y0 = p.pow(a - m);
    let target = chi.eval_unit(1 + y0)?;
    let generator_ok = |u: u64| -> Result<bool> {
        // psi(y0 / c) = zeta_{p^m}^{u_b u^{-1}}
        let w = dual_multiplier(psi, u, m)?;
        Ok(RootOfUnity::from_parts(pm, w) == target)
    };

    if let Ok(r) = target.exponent_at(pm) {
        if let Some(r_inv) = inv_mod(r, pm) {
            let ub = psi.twist().unit_mod(m)?;
            let unit = mul_mod(ub, r_inv, pm);
            if generator_ok(unit)? {
                return Ok(CSolution {
                    p,
                    valuation,
                    unit,
                    m,
                });
            }
        }
    }
    for unit in (1..pm).filter(|u| u % p != 0) {
        if generator_ok(unit)? {
            return Ok(CSolution {
                p,
                valuation,
                unit,
                m,
            });
        }
    }
    Err(Error::InvariantViolation(format!(
        "no c solves chi(1+y) = psi(y/c) on p^{}Z_p for {chi}",
        a - m
    )))
}

/// Number of terms in the full sum: `phi(p^a)`.
pub fn full_term_count(p: u64, a: u32) -> u64 {
    if a == 0 {
        return 0;
    }
    p.pow(a - 1) * (p - 1)
}

/// Number of terms in the reduced sum at depth `m`: `p^{a-2m}`, or `phi(p^a)`
/// at `m = 0`, where the index set is all units.
pub fn reduced_term_count(p: u64, a: u32, m: u32) -> u64 {
    if m == 0 {
        full_term_count(p, a)
    } else {
        p.pow(a - 2 * m)
    }
}

/// `sum_{x in (1 + p^m Z_p)/(1 + p^{a-m} Z_p)} chi^{-1}(x) psi(x / c)`.
pub fn reduced_sum(
    chi: &LocalCharacter,
    psi: &AdditiveCharacter,
    c: &CSolution,
) -> Result<CharacterSum> {
    check_primes(chi, psi)?;
    let a = ramified_conductor(chi)?;
    let m = c.m;
    check_depth(a, m)?;
    if m == 0 {
        return tate_sum(chi, psi, c.unit);
    }
    let p = chi.p();
    let pa = p.pow(a);
    let pm = p.pow(m);
    let phi = chi.unit_order();
    let level = lcm(phi, pa);
    let (chi_scale, psi_scale) = (level / phi, level / pa);
    let w = dual_multiplier(psi, c.unit, a)?;
    let count = p.pow(a - 2 * m);
    let mut sum = RootSum::new(level, count);
    for s in 0..count {
        let x = (1 + pm * s) % pa;
        let chi_inv = chi.eval_unit(x)?.inverse().exponent_at(phi)?;
        let psi_e = mul_mod(w, x, pa);
        sum.add_exponent(chi_inv * chi_scale + psi_e * psi_scale);
    }
    Ok(CharacterSum {
        terms: sum.term_count(),
        value: sum.finish(),
    })
}

/// Epsilon factor by the reduced sum at depth `m` (`0 <= 2m <= a`):
/// `chi(c) p^{-(a-2m)/2} sum_{x in (1+p^m)/(1+p^{a-m})} chi^{-1}(x) psi(x/c)`.
pub fn lamprecht_tate_epsilon(
    chi: &LocalCharacter,
    psi: &AdditiveCharacter,
    m: u32,
) -> Result<EpsilonValue> {
    let a = ramified_conductor(chi)?;
    check_depth(a, m)?;
    let c = solve_c(chi, psi, m)?;
    let sum = reduced_sum(chi, psi, &c)?;
    let prefactor = chi_at_c(chi, psi, c.unit)?;
    Ok(EpsilonValue::new(
        chi.p(),
        sum.value.mul_root(&prefactor),
        a - 2 * m,
    ))
}

/// Both sides of the reduction identity
/// `sum_{x in O^x/(1+P^a)} = p^m * sum_{x in (1+P^m)/(1+P^{a-m})}`
/// with the same `c` on each side.
#[derive(Debug, Clone)]
pub struct ReductionCheck {
    pub c: CSolution,
    pub full: CharacterSum,
    pub reduced: CharacterSum,
}

impl ReductionCheck {
    pub fn holds(&self) -> bool {
        self.full.value == self.reduced.value.scale_int(&p_power(self.c.p, self.c.m))
    }
}

pub fn reduction_identity(
    chi: &LocalCharacter,
    psi: &AdditiveCharacter,
    m: u32,
) -> Result<ReductionCheck> {
    let c = solve_c(chi, psi, m)?;
    let full = tate_sum(chi, psi, c.unit)?;
    let reduced = reduced_sum(chi, psi, &c)?;
    Ok(ReductionCheck { c, full, reduced })
}

pub fn reduction_identity_check(
    chi: &LocalCharacter,
    psi: &AdditiveCharacter,
    m: u32,
) -> Result<bool> {
    Ok(reduction_identity(chi, psi, m)?.holds())
}

/// `psi(1 / c) = zeta_{p^a}^{u_b c_unit^{-1}}` for `v(c) = a + n(psi)`.
fn psi_at_inverse_c(psi: &AdditiveCharacter, c: &CSolution, a: u32) -> Result<RootOfUnity> {
    let pa = psi.p().pow(a);
    Ok(RootOfUnity::from_parts(
        pa,
        dual_multiplier(psi, c.unit, a)?,
    ))
}

/// Even conductor `a = 2d`: `epsilon = chi(c) psi(1/c)` with `c` solved at depth `d`.
pub fn lamprecht_even(chi: &LocalCharacter, psi: &AdditiveCharacter) -> Result<EpsilonValue> {
    let a = chi.conductor();
    if a == 0 || a % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "even-conductor formula needs a = 2d >= 2, got a = {a}"
        )));
    }
    let c = solve_c(chi, psi, a / 2)?;
    let r = chi_at_c(chi, psi, c.unit)? * psi_at_inverse_c(psi, &c, a)?;
    Ok(EpsilonValue::new(
        chi.p(),
        CyclotomicNumber::from_root(&r),
        0,
    ))
}

/// Odd conductor `a = 2d + 1 >= 3`:
/// `epsilon = chi(c) psi(1/c) p^{-1/2} sum_{x in P^d/P^{d+1}} chi^{-1}(1+x) psi(x/c)`.
pub fn lamprecht_odd(chi: &LocalCharacter, psi: &AdditiveCharacter) -> Result<EpsilonValue> {
    Ok(lamprecht_odd_with_terms(chi, psi)?.0)
}

/// [`lamprecht_odd`] plus the number of terms in its sum.
pub fn lamprecht_odd_with_terms(
    chi: &LocalCharacter,
    psi: &AdditiveCharacter,
) -> Result<(EpsilonValue, u64)> {
    check_primes(chi, psi)?;
    let a = chi.conductor();
    if a < 3 || a.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "odd-conductor formula needs a = 2d + 1 >= 3, got a = {a}"
        )));
    }
    let d = a / 2;
    let p = chi.p();
    let c = solve_c(chi, psi, d)?;
    let pa = p.pow(a);
    let pd = p.pow(d);
    let phi = chi.unit_order();
    let level = lcm(phi, pa);
    let (chi_scale, psi_scale) = (level / phi, level / pa);
    let w = dual_multiplier(psi, c.unit, a)?;
    let mut sum = RootSum::new(level, p);
    for t in 0..p {
        let x = pd * t;
        let chi_inv = chi.eval_unit(1 + x)?.inverse().exponent_at(phi)?;
        sum.add_exponent(chi_inv * chi_scale + mul_mod(w, x, pa) * psi_scale);
    }
    let terms = sum.term_count();
    let prefactor = chi_at_c(chi, psi, c.unit)? * psi_at_inverse_c(psi, &c, a)?;
    Ok((
        EpsilonValue::new(p, sum.finish().mul_root(&prefactor), 1),
        terms,
    ))
}

/// Right-hand side of the twisting formula `epsilon(alpha beta, psi) = beta(c) epsilon(alpha, psi)`
/// for `a(alpha) >= 2 a(beta)`, with `c` solved for `alpha` at depth `a(beta)`.
pub fn deligne_twist(
    alpha: &LocalCharacter,
    beta: &LocalCharacter,
    psi: &AdditiveCharacter,
) -> Result<EpsilonValue> {
    check_primes(alpha, psi)?;
    check_primes(beta, psi)?;
    let (aa, ab) = (alpha.conductor(), beta.conductor());
    if aa < 2 * ab {
        return Err(Error::InvalidArgument(format!(
            "twisting formula needs a(alpha) >= 2 a(beta), got {aa} < 2 * {ab}"
        )));
    }
    if aa == 0 {
        let c = PAdicApprox::new(alpha.p(), psi.conductor(), 1, 1)?;
        let base = epsilon_unramified(alpha, psi)?;
        return Ok(base.mul_root(&beta.eval(&c)?));
    }
    let c = solve_c(alpha, psi, ab)?;
    let beta_c = beta.eval(&c.to_padic()?)?;
    Ok(tate_epsilon(alpha, psi, None)?.mul_root(&beta_c))
}

/// `G(c) = p^{-1/2} sum_{x in P^d/P^{d+1}} psi(x^2 / (2c))` for
/// `v(c) = 2d + 1 + n(psi)`, returned as the sum over `p^{1/2}`.
pub fn g_of_c(c: &PAdicApprox, psi: &AdditiveCharacter, d: u32) -> Result<EpsilonValue> {
    let p = psi.p();
    if c.p() != p {
        return Err(Error::InvalidArgument("mixing different primes".into()));
    }
    if p == 2 {
        return Err(Error::UnsupportedPrime(2));
    }
    let v = c
        .valuation()
        .ok_or_else(|| Error::Domain("G(c) needs c != 0".into()))?;
    let expected = 2 * d as i64 + 1 + psi.conductor();
    if v != expected {
        return Err(Error::InvalidArgument(format!(
            "G(c) needs v(c) = 2d + 1 + n(psi) = {expected}, got {v}"
        )));
    }
    // b x^2 / (2c) = u_b t^2 / (2u) * p^{-1} for x = p^d t
    let ub = psi.twist().unit_mod(1)?;
    let u = c.unit_mod(1)?;
    let w = mul_mod(ub, inv_mod(2 * u % p, p).expect("unit"), p);
    let mut sum = RootSum::new(p, p);
    for t in 0..p {
        sum.add_exponent(mul_mod(w, t * t % p, p));
    }
    Ok(EpsilonValue::new(p, sum.finish(), 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// `epsilon = principal * certificate` with `certificate` of `p`-power order.
#[derive(Debug, Clone)]
pub struct MuClassification {
    pub parity: Parity,
    pub c: CSolution,
    pub principal: EpsilonValue,
    pub certificate: RootOfUnity,
}

/// Classifies `epsilon(chi, psi)` modulo `p`-power roots of unity: it agrees
/// with `chi(c)` for even conductor and with `chi(c) G(c)` for odd conductor,
/// `c` being solved at depth `floor(a/2)`.
///
/// Needs `a >= 2`. At `a = 1` the condition on `c` is empty, so `c` is only
/// known up to a unit `u`, which moves the quotient by `(chi eta)(u)`; worse,
/// for `chi` of order above 2 the quotient is not a root of unity at all.
pub fn epsilon_mod_mu_p_infinity(
    chi: &LocalCharacter,
    psi: &AdditiveCharacter,
) -> Result<MuClassification> {
    let a = ramified_conductor(chi)?;
    if a < 2 {
        return Err(Error::InvalidArgument(
            "classification mod p-power roots of unity needs a(chi) >= 2".into(),
        ));
    }
    let p = chi.p();
    let c = solve_c(chi, psi, a / 2)?;
    let chi_c = chi_at_c(chi, psi, c.unit)?;
    let eps = tate_epsilon(chi, psi, None)?;
    let (parity, principal, w) = if a % 2 == 0 {
        let principal = EpsilonValue::new(p, CyclotomicNumber::from_root(&chi_c), 0);
        // w = V p^{-a/2} / chi(c)
        let w = eps
            .value()
            .mul_root(&chi_c.inverse())
            .scale(&BigRational::new(1.into(), p_power(p, a / 2)));
        (Parity::Even, principal, w)
    } else {
        let g = g_of_c(&c.to_padic()?, psi, a / 2)?;
        let s_g = g.value();
        if s_g * &s_g.conjugate() != CyclotomicNumber::from_integer(1, p as i64) {
            return Err(Error::InvariantViolation(format!(
                "|G(c)|^2 != 1 for {chi}"
            )));
        }
        let principal = EpsilonValue::new(p, s_g.mul_root(&chi_c), 1);
        // 1 / S_G = conj(S_G) / p, so w = V conj(S_G) chi(c)^{-1} p^{-(a+1)/2}
        let w = (eps.value() * &s_g.conjugate())
            .mul_root(&chi_c.inverse())
            .scale(&BigRational::new(1.into(), p_power(p, a.div_ceil(2))));
        (Parity::Odd, principal, w)
    };
    let certificate = w
        .is_root_of_unity()
        .filter(|r| is_power_of(r.order(), p))
        .ok_or_else(|| {
            Error::InvariantViolation(format!(
                "epsilon / principal part is not a {p}-power root of unity for {chi}"
            ))
        })?;
    Ok(MuClassification {
        parity,
        c,
        principal,
        certificate,
    })
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}
