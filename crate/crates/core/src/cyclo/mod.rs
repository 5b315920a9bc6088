//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Every character value, Gauss sum and epsilon factor in this crate lives in
//! some cyclotomic field. Elements are stored on the power basis
//! `{zeta_N^j : 0 <= j < phi(N)}` after reduction modulo `Phi_N`, so equality at
//! a fixed level is coefficient equality. Mixed-level operands are lifted to
//! the lcm of their levels; results are never level-minimized.

mod reduce;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{euler_phi, gcd, lcm, rem_i};
use crate::error::{Error, Result};

pub use reduce::cyclotomic_polynomial;
use reduce::{Coeff, Reducer};

/// A root of unity `zeta_M^k`, kept with `M` equal to its exact multiplicative order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    /// `zeta_order^exponent` in normal form.
    pub fn new(order: u64, exponent: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("root of unity of order 0".into()));
        }
        Ok(Self::normalized(order, rem_i(exponent as i128, order)))
    }

    fn normalized(order: u64, exponent: u64) -> Self {
        let exponent = exponent % order;
        let g = gcd(order, exponent);
        RootOfUnity {
            order: order / g,
            exponent: exponent / g,
        }
    }

    pub fn one() -> Self {
        RootOfUnity {
            order: 1,
            exponent: 0,
        }
    }

    pub fn minus_one() -> Self {
        RootOfUnity {
            order: 2,
            exponent: 1,
        }
    }

    /// `zeta_order^exponent` with an unsigned exponent; `order` must be positive.
    pub(crate) fn from_parts(order: u64, exponent: u64) -> Self {
        debug_assert!(order > 0);
        Self::normalized(order, exponent)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn inverse(&self) -> Self {
        Self::normalized(self.order, self.order - self.exponent)
    }

    pub fn pow(&self, k: i64) -> Self {
        let e = rem_i(self.exponent as i128 * k as i128, self.order);
        Self::normalized(self.order, e)
    }

    /// The exponent `e` with `self = zeta_level^e`.
    pub fn exponent_at(&self, level: u64) -> Result<u64> {
        if level == 0 || !level.is_multiple_of(self.order) {
            return Err(Error::LevelMismatch(format!(
                "root of order {} does not live at level {level}",
                self.order
            )));
        }
        Ok(self.exponent * (level / self.order))
    }

    /// Floating-point value under `zeta_M = exp(2 pi i / M)`.
    pub fn approx(&self) -> (f64, f64) {
        let theta = std::f64::consts::TAU * self.exponent as f64 / self.order as f64;
        (theta.cos(), theta.sin())
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        let m = lcm(self.order, rhs.order);
        let e = (self.exponent as u128 * (m / self.order) as u128
            + rhs.exponent as u128 * (m / rhs.order) as u128)
            % m as u128;
        RootOfUnity::normalized(m, e as u64)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exponent) {
            (1, _) => write!(f, "1"),
            (2, _) => write!(f, "-1"),
            (m, e) => write!(f, "zeta_{m}^{e}"),
        }
    }
}

/// An element of `Q(zeta_N)` in canonical power-basis form.
///
/// Coordinates are stored sparsely as integer numerators over one common
/// positive denominator, reduced so that the numerators and denominator share
/// no factor.
#[derive(Debug, Clone, Eq)]
pub struct CyclotomicNumber {
    level: u64,
    terms: Vec<(u64, BigInt)>,
    den: BigInt,
}

impl CyclotomicNumber {
    /// Builds an element from its full coordinate vector of length `phi(level)`.
    pub fn new(level: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidArgument("level must be positive".into()));
        }
        let deg = euler_phi(level) as usize;
        if coeffs.len() != deg {
            return Err(Error::InvalidArgument(format!(
                "level {level} needs {deg} coefficients, got {}",
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u64, c.numer() * (&den / c.denom())))
            .collect();
        Ok(Self::normalize(level, terms, den))
    }

    pub fn zero(level: u64) -> Self {
        assert!(level >= 1, "level must be positive");
        CyclotomicNumber {
            level,
            terms: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one(level: u64) -> Self {
        Self::from_integer(level, 1)
    }

    pub fn from_integer(level: u64, n: i64) -> Self {
        Self::from_bigint(level, BigInt::from(n))
    }

    pub fn from_bigint(level: u64, n: BigInt) -> Self {
        let mut out = Self::zero(level);
        if !n.is_zero() {
            out.terms.push((0, n));
        }
        out
    }

    pub fn from_rational(level: u64, q: &BigRational) -> Self {
        let mut out = Self::zero(level);
        if !q.is_zero() {
            out.terms.push((0, q.numer().clone()));
            out.den = q.denom().clone();
        }
        out
    }

    /// `r` as an element of `Q(zeta_level)`.
    pub fn embed(r: &RootOfUnity, level: u64) -> Result<Self> {
        let e = r.exponent_at(level)?;
        Ok(Self::from_exponents(level, vec![(e, 1)]))
    }

    /// `r` at its own level.
    pub fn from_root(r: &RootOfUnity) -> Self {
        Self::from_exponents(r.order, vec![(r.exponent, 1)])
    }

    /// `sum c * zeta_level^e` over the given pairs (exponents taken mod `level`).
    pub fn from_exponents(level: u64, terms: Vec<(u64, i64)>) -> Self {
        let red = Reducer::shared(level);
        let small: Vec<(u64, i128)> = terms.into_iter().map(|(e, c)| (e, c as i128)).collect();
        let reduced = match red.reduce_sparse(small.clone()) {
            Some(t) => t.into_iter().map(|(i, c)| (i, BigInt::from(c))).collect(),
            None => red
                .reduce_sparse(
                    small
                        .into_iter()
                        .map(|(e, c)| (e, BigInt::from(c)))
                        .collect(),
                )
                .expect("bigint reduction is infallible"),
        };
        Self::normalize(level, reduced, BigInt::one())
    }

    fn normalize(level: u64, mut terms: Vec<(u64, BigInt)>, mut den: BigInt) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        if terms.is_empty() {
            return Self::zero(level);
        }
        if den.is_negative() {
            den = -den;
            for (_, c) in terms.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if !den.is_one() {
            let g = terms.iter().fold(den.clone(), |acc, (_, c)| acc.gcd(c));
            if !g.is_one() {
                den /= &g;
                for (_, c) in terms.iter_mut() {
                    *c /= &g;
                }
            }
        }
        CyclotomicNumber { level, terms, den }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// `phi(level)`, the length of the coordinate vector.
    pub fn degree(&self) -> u64 {
        euler_phi(self.level)
    }

    /// Dense coordinate vector on the power basis.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.degree() as usize];
        for (i, c) in &self.terms {
            out[*i as usize] = BigRational::new(c.clone(), self.den.clone());
        }
        out
    }

    /// Nonzero coordinates as `(basis index, value)`.
    pub fn nonzero_coeffs(&self) -> impl Iterator<Item = (u64, BigRational)> + '_ {
        self.terms
            .iter()
            .map(|(i, c)| (*i, BigRational::new(c.clone(), self.den.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, c)] => Some(BigRational::new(c.clone(), self.den.clone())),
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The same number at level `m`, which must be a multiple of the current level.
    pub fn lift_level(&self, m: u64) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(self.level) {
            return Err(Error::LevelMismatch(format!(
                "cannot lift level {} to {m}",
                self.level
            )));
        }
        if m == self.level {
            return Ok(self.clone());
        }
        let k = m / self.level;
        let moved = self.terms.iter().map(|(i, c)| (i * k, c.clone())).collect();
        Ok(self.rebuild(m, moved))
    }

    /// Reduces `terms` (exponents mod `level`) over this number's denominator.
    fn rebuild(&self, level: u64, terms: Vec<(u64, BigInt)>) -> Self {
        let reduced = reduce_any(&Reducer::shared(level), terms);
        Self::normalize(level, reduced, self.den.clone())
    }

    fn lift_pair(&self, other: &Self) -> (Self, Self) {
        let m = lcm(self.level, other.level);
        (
            self.lift_level(m).expect("lcm is a multiple"),
            other.lift_level(m).expect("lcm is a multiple"),
        )
    }

    /// Image under `zeta_N -> zeta_N^{-1}` (complex conjugation).
    pub fn conjugate(&self) -> Self {
        let n = self.level;
        let moved = self
            .terms
            .iter()
            .map(|(i, c)| ((n - i) % n, c.clone()))
            .collect();
        self.rebuild(n, moved)
    }

    /// Product with `r`, lifting the level if `r` does not already live here.
    pub fn mul_root(&self, r: &RootOfUnity) -> Self {
        let level = lcm(self.level, r.order);
        let base = self.lift_level(level).expect("lcm is a multiple");
        let shift = r.exponent_at(level).expect("order divides lcm");
        if shift == 0 {
            return base;
        }
        let moved = base
            .terms
            .iter()
            .map(|(i, c)| ((i + shift) % level, c.clone()))
            .collect();
        base.rebuild(level, moved)
    }

    /// Product with an exact rational.
    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(self.level);
        }
        let terms = self
            .terms
            .iter()
            .map(|(i, c)| (*i, c * q.numer()))
            .collect();
        Self::normalize(self.level, terms, &self.den * q.denom())
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(n.clone()))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.level);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// If `self` is a root of unity, returns it.
    ///
    /// Roots of unity are algebraic integers of absolute value one, so the
    /// cheap rejections come first. The candidate exponent is read off the
    /// floating-point argument and then confirmed exactly; the exhaustive
    /// scan only runs if that guess is wrong.
    pub fn is_root_of_unity(&self) -> Option<RootOfUnity> {
        if self.is_zero() || !self.is_integral() {
            return None;
        }
        let norm = self * &self.conjugate();
        if norm != Self::one(1) {
            return None;
        }
        let big = lcm(2, self.level);
        let (re, im) = self.approx_complex(15);
        let turns = im.atan2(re) / std::f64::consts::TAU;
        let guess = (turns * big as f64).round() as i64;
        let candidates = [guess, guess - 1, guess + 1];
        let matches = |e: u64| {
            let r = RootOfUnity::from_parts(big, e);
            self.mul_root(&r.inverse()) == Self::one(1)
        };
        for g in candidates {
            let e = rem_i(g as i128, big);
            if matches(e) {
                return Some(RootOfUnity::from_parts(big, e));
            }
        }
        (0..big)
            .find(|&e| matches(e))
            .map(|e| RootOfUnity::from_parts(big, e))
    }

    /// Floating-point value under `zeta_N = exp(2 pi i / N)`, rounded to
    /// `digits` decimal places (f64 carries about 15). Display only.
    pub fn approx_complex(&self, digits: u32) -> (f64, f64) {
        let n = self.level as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (i, c) in &self.terms {
            let c = c.to_f64().unwrap_or(f64::NAN) / den;
            let theta = std::f64::consts::TAU * (*i as f64) / n;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        let round = |x: f64| {
            if digits >= 15 {
                return x;
            }
            let scale = 10f64.powi(digits as i32);
            let r = (x * scale).round() / scale;
            if r == 0.0 {
                0.0
            } else {
                r
            }
        };
        (round(re), round(im))
    }

    fn add_same_level(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.level, other.level);
        let den = &self.den * &other.den;
        let mut terms: Vec<(u64, BigInt)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        let lhs = |c: &BigInt| c * &other.den;
        let rhs = |c: &BigInt| {
            let v = c * &self.den;
            if negate {
                -v
            } else {
                v
            }
        };
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        terms.push((*i, lhs(x)));
                        a.next();
                    } else if j < i {
                        terms.push((*j, rhs(y)));
                        b.next();
                    } else {
                        terms.push((*i, lhs(x) + rhs(y)));
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    terms.push((*i, lhs(x)));
                    a.next();
                }
                (None, Some((j, y))) => {
                    terms.push((*j, rhs(y)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self::normalize(self.level, terms, den)
    }

    fn mul_same_level(&self, other: &Self) -> Self {
        debug_assert_eq!(self.level, other.level);
        let red = Reducer::shared(self.level);
        let den = &self.den * &other.den;
        let small = |t: &[(u64, BigInt)]| -> Option<Vec<(u64, i128)>> {
            t.iter()
                .map(|(i, c)| c.to_i128().map(|c| (*i, c)))
                .collect()
        };
        if let (Some(a), Some(b)) = (small(&self.terms), small(&other.terms)) {
            if let Some(t) = convolve(&red, &a, &b) {
                let terms = t.into_iter().map(|(i, c)| (i, BigInt::from(c))).collect();
                return Self::normalize(self.level, terms, den);
            }
        }
        let terms = convolve(&red, &self.terms, &other.terms).expect("bigint is infallible");
        Self::normalize(self.level, terms, den)
    }
}

fn reduce_any(red: &Reducer, terms: Vec<(u64, BigInt)>) -> Vec<(u64, BigInt)> {
    let small: Option<Vec<(u64, i128)>> = terms
        .iter()
        .map(|(i, c)| c.to_i128().map(|c| (*i, c)))
        .collect();
    if let Some(out) = small.and_then(|s| red.reduce_sparse(s)) {
        return out.into_iter().map(|(i, c)| (i, BigInt::from(c))).collect();
    }
    red.reduce_sparse(terms).expect("bigint is infallible")
}

fn convolve<T: Coeff>(red: &Reducer, a: &[(u64, T)], b: &[(u64, T)]) -> Option<Vec<(u64, T)>> {
    let n = red.level;
    let products = a.len() as u64 * b.len() as u64;
    if products.saturating_mul(4) >= n {
        let mut dense = vec![T::zero(); n as usize];
        for (i, x) in a {
            for (j, y) in b {
                let k = ((i + j) % n) as usize;
                dense[k] = dense[k].checked_add(&x.checked_mul(y)?)?;
            }
        }
        red.reduce_dense(&dense)
    } else {
        let mut sparse = Vec::with_capacity(products as usize);
        for (i, x) in a {
            for (j, y) in b {
                sparse.push(((i + j) % n, x.checked_mul(y)?));
            }
        }
        red.reduce_sparse(sparse)
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.terms == other.terms && self.den == other.den;
        }
        // rationals compare without lifting
        if let (Some(x), Some(y)) = (self.as_rational(), other.as_rational()) {
            return x == y;
        }
        let (a, b) = self.lift_pair(other);
        a.terms == b.terms && a.den == b.den
    }
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.level == rhs.level {
            self.add_same_level(rhs, false)
        } else {
            let (a, b) = self.lift_pair(rhs);
            a.add_same_level(&b, false)
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.level == rhs.level {
            self.add_same_level(rhs, true)
        } else {
            let (a, b) = self.lift_pair(rhs);
            a.add_same_level(&b, true)
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if self.level == rhs.level {
            self.mul_same_level(rhs)
        } else {
            let (a, b) = self.lift_pair(rhs);
            a.mul_same_level(&b)
        }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            level: self.level,
            terms: self.terms.iter().map(|(i, c)| (*i, -c)).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.terms.iter().enumerate() {
            let q = BigRational::new(c.clone(), self.den.clone());
            let (sign, mag) = if q.is_negative() { ("-", -q) } else { ("+", q) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (*i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
        }
        write!(f, " (z = zeta_{})", self.level)
    }
}

/// Accumulator for sums of roots of unity at a fixed level.
///
/// Counts are kept per exponent and reduced once at the end, so adding a term
/// costs a single integer increment.
#[derive(Debug, Clone)]
pub struct RootSum {
    level: u64,
    acc: Accumulator,
    terms: u64,
}

#[derive(Debug, Clone)]
enum Accumulator {
    Dense(Vec<i64>),
    Sparse(HashMap<u64, i64>),
}

impl RootSum {
    /// An empty sum at `level`, sized for roughly `expected_terms` additions.
    pub fn new(level: u64, expected_terms: u64) -> Self {
        assert!(level >= 1, "level must be positive");
        let acc = if expected_terms.saturating_mul(4) >= level {
            Accumulator::Dense(vec![0; level as usize])
        } else {
            Accumulator::Sparse(HashMap::new())
        };
        RootSum {
            level,
            acc,
            terms: 0,
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Number of terms added so far.
    pub fn term_count(&self) -> u64 {
        self.terms
    }

    /// Adds `zeta_level^e`.
    #[inline]
    pub fn add_exponent(&mut self, e: u64) {
        let e = e % self.level;
        self.terms += 1;
        match &mut self.acc {
            Accumulator::Dense(v) => v[e as usize] += 1,
            Accumulator::Sparse(m) => *m.entry(e).or_insert(0) += 1,
        }
    }

    pub fn add_root(&mut self, r: &RootOfUnity) -> Result<()> {
        let e = r.exponent_at(self.level)?;
        self.add_exponent(e);
        Ok(())
    }

    pub fn finish(self) -> CyclotomicNumber {
        let red = Reducer::shared(self.level);
        let reduced = match self.acc {
            Accumulator::Dense(v) => {
                let wide: Vec<i128> = v.into_iter().map(i128::from).collect();
                red.reduce_dense(&wide)
            }
            Accumulator::Sparse(m) => {
                red.reduce_sparse(m.into_iter().map(|(e, c)| (e, c as i128)).collect())
            }
        }
        .expect("root sums of i64 counts fit in i128");
        let terms = reduced
            .into_iter()
            .map(|(i, c)| (i, BigInt::from(c)))
            .collect();
        CyclotomicNumber::normalize(self.level, terms, BigInt::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(m: u64, k: i64) -> RootOfUnity {
        RootOfUnity::new(m, k).unwrap()
    }

    fn zeta(m: u64, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_root(&root(m, k))
            .lift_level(m)
            .unwrap()
    }

    fn ints(level: u64, v: &[i64]) -> CyclotomicNumber {
        CyclotomicNumber::new(
            level,
            v.iter()
                .map(|c| BigRational::from_integer((*c).into()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn make_root_normal_form() {
        assert_eq!((root(4, 2).order(), root(4, 2).exponent()), (2, 1));
        assert_eq!((root(5, 0).order(), root(5, 0).exponent()), (1, 0));
        assert_eq!((root(6, 4).order(), root(6, 4).exponent()), (3, 2));
        assert_eq!(root(6, -2), root(3, 2));
        assert!(matches!(
            RootOfUnity::new(0, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn embed_examples() {
        let z = CyclotomicNumber::embed(&root(3, 2), 3).unwrap();
        assert_eq!(z, ints(3, &[-1, -1]));
        let one = CyclotomicNumber::embed(&RootOfUnity::one(), 7).unwrap();
        assert_eq!(one.coeffs()[0], BigRational::one());
        assert!(one.coeffs()[1..].iter().all(|c| c.is_zero()));
        let m1 = CyclotomicNumber::embed(&RootOfUnity::minus_one(), 4).unwrap();
        assert_eq!(m1, ints(4, &[-1, 0]));
        assert!(matches!(
            CyclotomicNumber::embed(&root(3, 1), 4),
            Err(Error::LevelMismatch(_))
        ));
    }

    #[test]
    fn ring_examples() {
        let s = (1..5).fold(CyclotomicNumber::zero(5), |acc, k| &acc + &zeta(5, k));
        assert_eq!(s, CyclotomicNumber::from_integer(5, -1));
        let x = &zeta(7, 3) - &zeta(7, 2);
        assert_eq!(&x * &CyclotomicNumber::one(7), x);
        let d = &zeta(3, 1) - &zeta(3, 2);
        assert_eq!(&d * &d, CyclotomicNumber::from_integer(3, -3));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(zeta(5, 1).conjugate(), zeta(5, 4));
        let q = CyclotomicNumber::from_rational(9, &BigRational::new(7.into(), 2.into()));
        assert_eq!(q.conjugate(), q);
        let d = &zeta(3, 1) - &zeta(3, 2);
        assert_eq!(&d.conjugate() * &d, CyclotomicNumber::from_integer(1, 3));
    }

    #[test]
    fn lift_examples() {
        let z = zeta(3, 2);
        assert_eq!(z.lift_level(12).unwrap(), zeta(12, 8));
        assert_eq!(
            CyclotomicNumber::one(5).lift_level(35).unwrap(),
            CyclotomicNumber::one(35)
        );
        assert_eq!(zeta(2, 1).lift_level(4).unwrap(), ints(4, &[-1, 0]));
        assert!(matches!(z.lift_level(10), Err(Error::LevelMismatch(_))));
    }

    #[test]
    fn root_detection() {
        assert_eq!(
            CyclotomicNumber::from_integer(1, -1).is_root_of_unity(),
            Some(RootOfUnity::minus_one())
        );
        assert_eq!(
            CyclotomicNumber::from_integer(3, 2).is_root_of_unity(),
            None
        );
        // -zeta_5^3: oracle by direct powering
        let x = -&zeta(5, 3);
        let r = x.is_root_of_unity().unwrap();
        assert_eq!(r.order(), 10);
        assert_eq!(x.pow(10), CyclotomicNumber::one(5));
        for k in 1..10 {
            if 10 % k == 0 {
                assert_ne!(x.pow(k), CyclotomicNumber::one(5));
            }
        }
        assert_eq!(CyclotomicNumber::from_root(&r), x);
        let sqrt_m3 = &zeta(3, 1) - &zeta(3, 2);
        assert_eq!(sqrt_m3.is_root_of_unity(), None);
    }

    #[test]
    fn approx_examples() {
        assert_eq!(zeta(4, 1).approx_complex(12), (0.0, 1.0));
        let (re, im) = (&zeta(3, 1) - &zeta(3, 2)).approx_complex(12);
        assert_eq!(re, 0.0);
        assert!((im - 3f64.sqrt()).abs() < 1e-11);
        assert_eq!(CyclotomicNumber::one(9).approx_complex(6), (1.0, 0.0));
    }

    #[test]
    fn roots_of_unity_identities() {
        for n in [1u64, 2, 6, 12, 25, 30, 49] {
            assert_eq!(zeta(n, 1).pow(n as u32), CyclotomicNumber::one(n));
        }
        for p in [2u64, 3, 5, 7, 11, 13] {
            let mut s = RootSum::new(p, p);
            for j in 0..p {
                s.add_exponent(j);
            }
            assert!(s.finish().is_zero());
        }
    }

    #[test]
    fn mixed_levels_compare_by_value() {
        assert_eq!(zeta(3, 1), zeta(6, 2));
        assert_eq!(-&zeta(5, 1), zeta(10, 7));
        assert_ne!(zeta(5, 1), zeta(5, 2));
    }

    #[test]
    fn sparse_and_dense_sums_agree() {
        let exps = [0u64, 5, 17, 99, 17, 3];
        let mut dense = RootSum::new(100, 1000);
        let mut sparse = RootSum::new(100, 1);
        for e in exps {
            dense.add_exponent(e);
            sparse.add_exponent(e);
        }
        assert_eq!(dense.term_count(), 6);
        assert_eq!(dense.finish(), sparse.finish());
    }
}
