//! Explicit finite fields `F_q`, `q = p^s` with `p` odd, together with their
//! canonical additive character, multiplicative characters and Gauss sums.
//!
//! Elements are coefficient vectors over `F_p` in the basis `1, x, .., x^(s-1)`
//! of `F_p[x]/(f)`. Internally an element is also addressed by its index
//! `sum c_i p^i`, which is the order used when searching for moduli and
//! generators.

use crate::arith::{gcd, is_prime, jacobi, lcm, prime_divisors};
use crate::cyclo::{CyclotomicNumber, RootOfUnity, RootSum};
use crate::error::{Error, Result};

/// Largest field size [`FiniteField::new`] accepts.
pub const DEFAULT_MAX_ORDER: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    s: u32,
    q: u64,
    /// Monic modulus, ascending coefficients, length `s + 1`.
    modulus: Vec<u64>,
    generator: u32,
    /// `exp[k]` is the index of `generator^k`, `0 <= k < q - 1`.
    exp: Vec<u32>,
    /// `log[i]` is the discrete log of the element with index `i` (unused at 0).
    log: Vec<u32>,
    /// `Tr(x^i)` for the basis monomials.
    basis_traces: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FFElement {
    p: u64,
    s: u32,
    coeffs: Vec<u64>,
}

impl FFElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }
}

impl FiniteField {
    /// Builds `F_{p^s}` with the default size bound.
    pub fn new(p: u64, s: u32) -> Result<Self> {
        Self::with_bound(p, s, DEFAULT_MAX_ORDER)
    }

    /// Builds `F_{p^s}`: the modulus is the first monic irreducible of degree
    /// `s` in index order (constant term varying fastest) and the generator is
    /// the first element of order `q - 1`.
    pub fn with_bound(p: u64, s: u32, max_order: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::UnsupportedPrime(p));
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if s == 0 {
            return Err(Error::InvalidArgument(
                "extension degree must be positive".into(),
            ));
        }
        let q = p
            .checked_pow(s)
            .filter(|q| *q <= max_order)
            .ok_or_else(|| Error::TooLarge(format!("{p}^{s} exceeds the bound {max_order}")))?;

        let modulus = smallest_irreducible(p, s as usize);
        let mut field = FiniteField {
            p,
            s,
            q,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
            basis_traces: Vec::new(),
        };
        let order = q - 1;
        let cofactors: Vec<u64> = prime_divisors(order)
            .into_iter()
            .map(|l| order / l)
            .collect();
        let generator = (1..q)
            .find(|&i| {
                let g = field.decode(i);
                cofactors
                    .iter()
                    .all(|&c| !field.is_one_raw(&field.pow_raw(&g, c)))
            })
            .expect("the multiplicative group of a finite field is cyclic");
        field.generator = generator as u32;

        let g = field.decode(generator);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = field.decode(1);
        for k in 0..order {
            let idx = field.encode(&cur);
            exp.push(idx as u32);
            log[idx as usize] = k as u32;
            cur = field.mul_raw(&cur, &g);
        }
        field.exp = exp;
        field.log = log;

        field.basis_traces = (0..s as usize)
            .map(|i| {
                let mut mono = vec![0u64; s as usize];
                mono[i] = 1;
                field.trace_raw(&mono)
            })
            .collect();
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Ascending coefficients of the monic modulus.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> FFElement {
        self.wrap(self.decode(self.generator as u64))
    }

    /// The element with the given coordinates (reduced mod `p`, padded with zeros).
    pub fn element(&self, coeffs: &[i64]) -> Result<FFElement> {
        if coeffs.len() > self.s as usize {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates for a degree-{} field",
                coeffs.len(),
                self.s
            )));
        }
        let mut v = vec![0u64; self.s as usize];
        for (slot, c) in v.iter_mut().zip(coeffs) {
            *slot = c.rem_euclid(self.p as i64) as u64;
        }
        Ok(self.wrap(v))
    }

    /// The element whose index is `i`.
    pub fn element_at(&self, i: u64) -> FFElement {
        self.wrap(self.decode(i % self.q))
    }

    pub fn index_of(&self, x: &FFElement) -> u64 {
        self.encode(&x.coeffs)
    }

    pub fn zero(&self) -> FFElement {
        self.element_at(0)
    }

    pub fn one(&self) -> FFElement {
        self.element_at(1)
    }

    /// All `q` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FFElement> + '_ {
        (0..self.q).map(|i| self.element_at(i))
    }

    fn check(&self, x: &FFElement) -> Result<()> {
        if x.p != self.p || x.s != self.s {
            return Err(Error::FieldMismatch(format!(
                "element of F_{}^{} used in F_{}^{}",
                x.p, x.s, self.p, self.s
            )));
        }
        Ok(())
    }

    pub fn add(&self, x: &FFElement, y: &FFElement) -> Result<FFElement> {
        self.check(x)?;
        self.check(y)?;
        let v = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(a, b)| (a + b) % self.p)
            .collect();
        Ok(self.wrap(v))
    }

    pub fn mul(&self, x: &FFElement, y: &FFElement) -> Result<FFElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.mul_raw(&x.coeffs, &y.coeffs)))
    }

    pub fn pow(&self, x: &FFElement, k: u64) -> Result<FFElement> {
        self.check(x)?;
        Ok(self.wrap(self.pow_raw(&x.coeffs, k)))
    }

    /// Discrete logarithm base the field generator.
    pub fn dlog(&self, x: &FFElement) -> Result<u64> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::Domain("discrete log of zero".into()));
        }
        Ok(self.log[self.encode(&x.coeffs) as usize] as u64)
    }

    /// Absolute trace `Tr_{F_q/F_p}(x)`, as a residue mod `p`.
    pub fn trace(&self, x: &FFElement) -> Result<u64> {
        self.check(x)?;
        Ok(self.trace_linear(&x.coeffs))
    }

    fn trace_linear(&self, coeffs: &[u64]) -> u64 {
        coeffs
            .iter()
            .zip(&self.basis_traces)
            .fold(0, |acc, (c, t)| (acc + c * t) % self.p)
    }

    fn trace_of_index(&self, mut i: u64) -> u64 {
        let mut acc = 0;
        for t in &self.basis_traces {
            acc = (acc + (i % self.p) * t) % self.p;
            i /= self.p;
        }
        acc
    }

    /// The canonical additive character `psi_q = psi_p o Tr`.
    pub fn additive_character(&self) -> FFAddChar<'_> {
        FFAddChar { field: self }
    }

    /// The multiplicative character with `chi(generator) = zeta_{q-1}^t`.
    pub fn multiplicative_character(&self, t: i64) -> FFMultChar<'_> {
        FFMultChar {
            field: self,
            t: t.rem_euclid((self.q - 1) as i64) as u64,
        }
    }

    /// The unique character of order two.
    pub fn quadratic_character(&self) -> FFMultChar<'_> {
        self.multiplicative_character(((self.q - 1) / 2) as i64)
    }

    /// `sum_{x in F_q} psi_q(x^2)`, an element of `Q(zeta_p)`.
    pub fn sum_of_square_values(&self) -> CyclotomicNumber {
        let order = self.q - 1;
        let mut sum = RootSum::new(self.p, self.q);
        sum.add_exponent(0);
        for k in 0..order {
            let sq = self.exp[((2 * k) % order) as usize] as u64;
            sum.add_exponent(self.trace_of_index(sq));
        }
        sum.finish()
    }

    fn wrap(&self, coeffs: Vec<u64>) -> FFElement {
        FFElement {
            p: self.p,
            s: self.s,
            coeffs,
        }
    }

    fn decode(&self, mut i: u64) -> Vec<u64> {
        (0..self.s)
            .map(|_| {
                let c = i % self.p;
                i /= self.p;
                c
            })
            .collect()
    }

    fn encode(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, c| acc * self.p + c)
    }

    fn is_one_raw(&self, v: &[u64]) -> bool {
        v[0] == 1 && v[1..].iter().all(|c| *c == 0)
    }

    fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let s = self.s as usize;
        let p = self.p;
        let mut prod = vec![0u64; 2 * s - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for top in (s..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (k, m) in self.modulus[..s].iter().enumerate() {
                let idx = top - s + k;
                prod[idx] = (prod[idx] + (p - c) * m) % p;
            }
        }
        prod.truncate(s);
        prod
    }

    fn pow_raw(&self, base: &[u64], mut k: u64) -> Vec<u64> {
        let mut acc = self.decode(1);
        let mut b = base.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_raw(&acc, &b);
            }
            b = self.mul_raw(&b, &b);
            k >>= 1;
        }
        acc
    }

    /// `sum_{i < s} x^{p^i}` by repeated Frobenius.
    fn trace_raw(&self, x: &[u64]) -> u64 {
        let mut acc = vec![0u64; self.s as usize];
        let mut frob = x.to_vec();
        for _ in 0..self.s {
            for (a, f) in acc.iter_mut().zip(&frob) {
                *a = (*a + f) % self.p;
            }
            frob = self.pow_raw(&frob, self.p);
        }
        debug_assert!(acc[1..].iter().all(|c| *c == 0), "trace lies in F_p");
        acc[0]
    }
}

/// A multiplicative character of `F_q^x`.
#[derive(Debug, Clone, Copy)]
pub struct FFMultChar<'a> {
    field: &'a FiniteField,
    t: u64,
}

impl<'a> FFMultChar<'a> {
    pub fn field(&self) -> &'a FiniteField {
        self.field
    }

    /// Exponent `t` with `chi(generator) = zeta_{q-1}^t`.
    pub fn exponent(&self) -> u64 {
        self.t
    }

    /// Exact order of the character.
    pub fn order(&self) -> u64 {
        let m = self.field.q - 1;
        m / gcd(m, self.t)
    }

    pub fn eval(&self, x: &FFElement) -> Result<RootOfUnity> {
        let k = self.field.dlog(x)?;
        let m = self.field.q - 1;
        Ok(RootOfUnity::from_parts(m, (self.t * k) % m))
    }
}

/// The canonical additive character `x -> zeta_p^{Tr(x)}`.
#[derive(Debug, Clone, Copy)]
pub struct FFAddChar<'a> {
    field: &'a FiniteField,
}

impl<'a> FFAddChar<'a> {
    pub fn field(&self) -> &'a FiniteField {
        self.field
    }

    pub fn eval(&self, x: &FFElement) -> Result<RootOfUnity> {
        let tr = self.field.trace(x)?;
        Ok(RootOfUnity::from_parts(self.field.p, tr))
    }
}

/// `G(chi, psi) = sum_{x != 0} chi(x) psi(x)`, computed term by term at level
/// `lcm(order(chi), p)`.
pub fn gauss_sum(chi: &FFMultChar<'_>, psi: &FFAddChar<'_>) -> Result<CyclotomicNumber> {
    let field = chi.field;
    if (field.p, field.s) != (psi.field.p, psi.field.s) {
        return Err(Error::FieldMismatch(
            "Gauss sum of characters on different fields".into(),
        ));
    }
    let m = field.q - 1;
    let o = chi.order();
    let step = chi.t / (m / o);
    let level = lcm(o, field.p);
    let (chi_scale, psi_scale) = (level / o, level / field.p);
    let mut sum = RootSum::new(level, m);
    for k in 0..m {
        let x = field.exp[k as usize] as u64;
        let e = ((step * k) % o) * chi_scale + field.trace_of_index(x) * psi_scale;
        sum.add_exponent(e);
    }
    Ok(sum.finish())
}

/// The element of `Q(zeta_p)` equal to `sqrt(p)` for `p = 1 mod 4` and to
/// `i * sqrt(p)` for `p = 3 mod 4`.
///
/// Built from Legendre symbols (quadratic reciprocity, no discrete logs): the
/// sum `g = sum_t (t/p) zeta_p^t` satisfies `g^2 = (-1)^((p-1)/2) p`, which is
/// checked exactly; of the two square roots, the one on the positive real
/// (resp. imaginary) axis is kept.
pub fn sqrt_p_star(p: u64) -> Result<CyclotomicNumber> {
    if p == 2 {
        return Err(Error::UnsupportedPrime(p));
    }
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let terms = (1..p).map(|t| (t, jacobi(t as i64, p) as i64)).collect();
    let g = CyclotomicNumber::from_exponents(p, terms);
    let p_star = if p % 4 == 1 { p as i64 } else { -(p as i64) };
    if &g * &g != CyclotomicNumber::from_integer(p, p_star) {
        return Err(Error::InvariantViolation(format!(
            "quadratic Legendre sum for p = {p} does not square to {p_star}"
        )));
    }
    let (re, im) = g.approx_complex(15);
    let positive = if p % 4 == 1 { re > 0.0 } else { im > 0.0 };
    Ok(if positive { g } else { -g })
}

/// Exact positive square root of `p`, living in `Q(zeta_p)` or `Q(zeta_{4p})`.
pub fn sqrt_p(p: u64) -> Result<CyclotomicNumber> {
    let r = sqrt_p_star(p)?;
    if p % 4 == 1 {
        Ok(r)
    } else {
        // sqrt(p) = -i * (i sqrt(p))
        let minus_i = RootOfUnity::from_parts(4, 3);
        Ok(r.mul_root(&minus_i))
    }
}

/// Closed form of the quadratic Gauss sum of `F_{p^s}` against the canonical
/// additive character:
/// `(-1)^(s-1) q^(1/2)` if `p = 1 mod 4`, `(-1)^(s-1) i^s q^(1/2)` if `p = 3 mod 4`.
pub fn quadratic_gauss_closed_form(p: u64, s: u32) -> Result<CyclotomicNumber> {
    if s == 0 {
        return Err(Error::InvalidArgument(
            "extension degree must be positive".into(),
        ));
    }
    let root = sqrt_p_star(p)?;
    let sign: i64 = if s % 2 == 1 { 1 } else { -1 };
    let half = num_bigint::BigInt::from(p).pow(s / 2);
    let value = match (p % 4, s % 2) {
        // p^(s/2), with i^s = (-1)^(s/2) when p = 3 mod 4
        (1, 0) => CyclotomicNumber::from_bigint(p, half * sign),
        (_, 0) => {
            let i_pow: i64 = if (s / 2).is_multiple_of(2) { 1 } else { -1 };
            CyclotomicNumber::from_bigint(p, half * sign * i_pow)
        }
        // p^((s-1)/2) sqrt(p)
        (1, _) => root.scale_int(&(half * sign)),
        // i^s sqrt(p) = (-1)^((s-1)/2) (i sqrt(p))
        (_, _) => {
            let i_pow: i64 = if ((s - 1) / 2).is_multiple_of(2) {
                1
            } else {
                -1
            };
            root.scale_int(&(half * sign * i_pow))
        }
    };
    Ok(value)
}

/// Smallest monic irreducible of degree `s` over `F_p` in index order.
fn smallest_irreducible(p: u64, s: usize) -> Vec<u64> {
    let count = p.pow(s as u32);
    (0..count)
        .map(|n| {
            let mut f: Vec<u64> = (0..s).map(|i| (n / p.pow(i as u32)) % p).collect();
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        for n in 0..p.pow(d as u32) {
            let mut g: Vec<u64> = (0..d).map(|i| (n / p.pow(i as u32)) % p).collect();
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|c| *c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `f` by the monic `g` over `F_p`.
fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    for top in (dg..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (k, gk) in g.iter().enumerate() {
            let idx = top - dg + k;
            r[idx] = (r[idx] + (p - c) * gk) % p;
        }
    }
    r.truncate(dg);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(m: u64, k: u64) -> CyclotomicNumber {
        CyclotomicNumber::from_root(&RootOfUnity::from_parts(m, k))
    }

    #[test]
    fn build_examples() {
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(f5.generator().coeffs(), &[2]);
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(FiniteField::new(2, 3), Err(Error::UnsupportedPrime(2)));
        assert!(matches!(
            FiniteField::new(9, 1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(FiniteField::new(3, 11), Err(Error::TooLarge(_))));
    }

    #[test]
    fn generator_has_full_order() {
        for (p, s) in [(3, 1), (3, 2), (3, 3), (5, 2), (7, 2), (11, 1), (13, 1)] {
            let f = FiniteField::new(p, s).unwrap();
            let g = f.generator();
            let m = f.order() - 1;
            assert_eq!(f.pow(&g, m).unwrap(), f.one());
            for l in prime_divisors(m) {
                assert_ne!(f.pow(&g, m / l).unwrap(), f.one());
            }
        }
    }

    #[test]
    fn trace_examples() {
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(f9.trace(&f9.one()).unwrap(), 2);
        assert_eq!(f9.trace(&f9.zero()).unwrap(), 0);
        // Frobenius-sum oracle: g + g^3
        let g = f9.generator();
        let frob = f9.add(&g, &f9.pow(&g, 3).unwrap()).unwrap();
        assert!(frob.coeffs()[1..].iter().all(|c| *c == 0));
        assert_eq!(f9.trace(&g).unwrap(), frob.coeffs()[0]);
    }

    #[test]
    fn character_examples() {
        let f5 = FiniteField::new(5, 1).unwrap();
        let psi = f5.additive_character();
        assert!(psi.eval(&f5.zero()).unwrap().is_one());
        assert_eq!(
            psi.eval(&f5.one()).unwrap(),
            RootOfUnity::new(5, 1).unwrap()
        );
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(
            f9.additive_character().eval(&f9.one()).unwrap(),
            RootOfUnity::new(3, 2).unwrap()
        );
        let eta = f5.multiplicative_character(2);
        assert!(eta.eval(&f5.one()).unwrap().is_one());
        assert!(eta.eval(&f5.element(&[4]).unwrap()).unwrap().is_one());
        assert_eq!(
            eta.eval(&f5.element(&[2]).unwrap()).unwrap(),
            RootOfUnity::minus_one()
        );
        assert!(matches!(eta.eval(&f5.zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn gauss_sum_examples() {
        let f5 = FiniteField::new(5, 1).unwrap();
        let g5 = gauss_sum(&f5.quadratic_character(), &f5.additive_character()).unwrap();
        let expect = &(&zeta(5, 1) - &zeta(5, 2)) - &(&zeta(5, 3) - &zeta(5, 4));
        assert_eq!(g5, expect);
        let f3 = FiniteField::new(3, 1).unwrap();
        let g3 = gauss_sum(&f3.quadratic_character(), &f3.additive_character()).unwrap();
        assert_eq!(g3, &zeta(3, 1) - &zeta(3, 2));
        let triv = gauss_sum(&f5.multiplicative_character(0), &f5.additive_character()).unwrap();
        assert_eq!(triv, CyclotomicNumber::from_integer(1, -1));
        let other = FiniteField::new(7, 1).unwrap();
        assert!(matches!(
            gauss_sum(&f5.quadratic_character(), &other.additive_character()),
            Err(Error::FieldMismatch(_))
        ));
    }

    #[test]
    fn closed_form_examples() {
        let sqrt5 = quadratic_gauss_closed_form(5, 1).unwrap();
        assert_eq!(&sqrt5 * &sqrt5, CyclotomicNumber::from_integer(1, 5));
        assert!(sqrt5.approx_complex(12).0 > 2.23);
        let i_sqrt3 = quadratic_gauss_closed_form(3, 1).unwrap();
        assert_eq!(i_sqrt3, &zeta(3, 1) - &zeta(3, 2));
        assert_eq!(
            quadratic_gauss_closed_form(3, 2).unwrap(),
            CyclotomicNumber::from_integer(1, 3)
        );
        assert_eq!(
            quadratic_gauss_closed_form(2, 1),
            Err(Error::UnsupportedPrime(2))
        );
    }

    #[test]
    fn square_value_examples() {
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(
            f9.sum_of_square_values(),
            CyclotomicNumber::from_integer(1, 3)
        );
        let f3 = FiniteField::new(3, 1).unwrap();
        assert_eq!(f3.sum_of_square_values(), &zeta(3, 1) - &zeta(3, 2));
    }

    #[test]
    fn sqrt_p_is_positive_real() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let r = sqrt_p(p).unwrap();
            assert_eq!(&r * &r, CyclotomicNumber::from_integer(1, p as i64));
            let (re, im) = r.approx_complex(10);
            assert!((re - (p as f64).sqrt()).abs() < 1e-9 && im == 0.0);
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let a = FiniteField::new(7, 2).unwrap();
        let b = FiniteField::new(7, 2).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.generator(), b.generator());
    }
}
