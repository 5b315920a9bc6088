//! The local field `Q_p` (odd `p`) at finite precision.
//!
//! Uniformizer `p`, residue field of size `p`, and the canonical additive
//! character `psi_p`, which is trivial on `Z_p` and sends `u / p^n` to
//! `zeta_{p^n}^u`, so its conductor is zero. Multiplicative characters are
//! described by their conductor `a`, an exponent `t` giving the value on the
//! fixed generator of `(Z/p^a)^x`, and the value at `p`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{factorize, inv_mod, is_prime, mul_mod, pow_mod, rem_i, valuation};
use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};

/// Unit groups up to this size get full exp/log tables.
pub const DLOG_TABLE_LIMIT: u64 = 100_000;

fn check_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::UnsupportedPrime(2));
    }
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(())
}

/// Largest `k` with `p^k` comfortably inside `u64` arithmetic.
pub fn max_precision(p: u64) -> u32 {
    let mut k = 0;
    let mut acc: u64 = 1;
    while let Some(next) = acc.checked_mul(p) {
        if next > (1u64 << 62) {
            break;
        }
        acc = next;
        k += 1;
    }
    k
}

fn p_pow(p: u64, k: u32) -> Result<u64> {
    if k > max_precision(p) {
        return Err(Error::TooLarge(format!(
            "{p}^{k} overflows the working precision"
        )));
    }
    Ok(p.pow(k))
}

/// The fixed generator of `(Z/p^a)^x`: the smallest positive primitive root
/// mod `p^2`, which generates at every level.
pub fn generator(p: u64, a: u32) -> Result<u64> {
    check_prime(p)?;
    if a == 0 {
        return Err(Error::InvalidArgument(
            "unit group level must be positive".into(),
        ));
    }
    let m = p * p;
    let order = p * (p - 1);
    let cofactors: Vec<u64> = factorize(order)
        .into_iter()
        .map(|(l, _)| order / l)
        .collect();
    Ok((2..m)
        .find(|&g| g % p != 0 && cofactors.iter().all(|&c| pow_mod(g, c, m) != 1))
        .expect("(Z/p^2)^x is cyclic for odd p"))
}

/// `(Z/p^a)^x` with its fixed generator.
#[derive(Debug)]
pub struct UnitGroup {
    p: u64,
    level: u32,
    modulus: u64,
    generator: u64,
    order: u64,
    tables: Option<(Vec<u64>, Vec<u32>)>,
}

impl UnitGroup {
    pub fn new(p: u64, level: u32) -> Result<Self> {
        let g = generator(p, level)?;
        let modulus = p_pow(p, level)?;
        let order = modulus / p * (p - 1);
        let tables = (modulus <= DLOG_TABLE_LIMIT).then(|| {
            let mut exp = Vec::with_capacity(order as usize);
            let mut log = vec![u32::MAX; modulus as usize];
            let mut cur = 1u64;
            for k in 0..order {
                exp.push(cur);
                log[cur as usize] = k as u32;
                cur = cur * g % modulus;
            }
            (exp, log)
        });
        Ok(UnitGroup {
            p,
            level,
            modulus,
            generator: g,
            order,
            tables,
        })
    }

    /// Process-wide shared instance; tables are built once per `(p, level)`.
    pub fn shared(p: u64, level: u32) -> Result<Arc<UnitGroup>> {
        type Cache = Mutex<HashMap<(u64, u32), Arc<UnitGroup>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(g) = cache.lock().unwrap().get(&(p, level)) {
            return Ok(Arc::clone(g));
        }
        let built = Arc::new(UnitGroup::new(p, level)?);
        let mut guard = cache.lock().unwrap();
        Ok(Arc::clone(guard.entry((p, level)).or_insert(built)))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `p^level`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// `phi(p^level)`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `generator^k mod p^level`.
    pub fn exp(&self, k: u64) -> u64 {
        match &self.tables {
            Some((exp, _)) => exp[(k % self.order) as usize],
            None => pow_mod(self.generator, k, self.modulus),
        }
    }

    /// Discrete log base the fixed generator.
    pub fn dlog(&self, u: u64) -> Result<u64> {
        let u = u % self.modulus;
        if u.is_multiple_of(self.p) {
            return Err(Error::InvalidArgument(format!(
                "{u} is not a unit mod {}",
                self.p
            )));
        }
        Ok(match &self.tables {
            Some((_, log)) => log[u as usize] as u64,
            None => self.pohlig_hellman(u),
        })
    }

    /// All units as `(k, generator^k)` for `0 <= k < order`.
    pub fn units(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let mut cur = 1u64;
        (0..self.order).map(move |k| {
            let out = (k, cur);
            cur = mul_mod(cur, self.generator, self.modulus);
            out
        })
    }

    fn pohlig_hellman(&self, u: u64) -> u64 {
        let n = self.order;
        let m = self.modulus;
        let mut residue = 0u64;
        let mut modulus = 1u64;
        for (l, e) in factorize(n) {
            let le = l.pow(e);
            let h = pow_mod(self.generator, n / le, m);
            let y = pow_mod(u, n / le, m);
            let gamma = pow_mod(h, le / l, m);
            let h_inv = inv_mod(h, m).expect("unit");
            let mut x = 0u64;
            let mut lk = 1u64;
            for k in 0..e {
                let shifted = mul_mod(y, pow_mod(h_inv, x, m), m);
                let target = pow_mod(shifted, le / l / l.pow(k), m);
                let digit = (0..l)
                    .find(|&d| pow_mod(gamma, d, m) == target)
                    .expect("element lies in the subgroup of order l");
                x += digit * lk;
                lk *= l;
            }
            // CRT merge of x mod le into residue mod modulus
            let inv = inv_mod(modulus % le, le).expect("coprime moduli");
            let t = mul_mod((x + le - residue % le) % le, inv, le);
            residue += modulus * t;
            modulus *= le;
        }
        residue % n
    }
}

/// Free-standing discrete log in `(Z/p^a)^x`.
pub fn dlog(p: u64, a: u32, u: u64) -> Result<u64> {
    UnitGroup::shared(p, a)?.dlog(u)
}

/// A nonzero element `p^v * u` of `Q_p` with the unit `u` known mod `p^prec`,
/// or zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PAdicApprox {
    p: u64,
    value: Option<(i64, u64, u32)>,
}

impl PAdicApprox {
    pub fn new(p: u64, valuation: i64, unit: u64, prec: u32) -> Result<Self> {
        check_prime(p)?;
        if prec == 0 {
            return Err(Error::InvalidArgument(
                "precision must be at least 1".into(),
            ));
        }
        if unit.is_multiple_of(p) {
            return Err(Error::InvalidArgument(format!(
                "{unit} is not a {p}-adic unit"
            )));
        }
        let m = p_pow(p, prec)?;
        Ok(PAdicApprox {
            p,
            value: Some((valuation, unit % m, prec)),
        })
    }

    pub fn zero(p: u64) -> Self {
        PAdicApprox { p, value: None }
    }

    /// An integer, known to full working precision.
    pub fn from_integer(p: u64, n: i64) -> Result<Self> {
        Self::from_fraction(p, n, 1)
    }

    /// `num / den`, known to full working precision.
    pub fn from_fraction(p: u64, num: i64, den: i64) -> Result<Self> {
        check_prime(p)?;
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        if num == 0 {
            return Ok(Self::zero(p));
        }
        let (vn, un) = split(num.unsigned_abs(), p);
        let (vd, ud) = split(den.unsigned_abs(), p);
        let prec = max_precision(p);
        let m = p.pow(prec);
        let sign_neg = (num < 0) != (den < 0);
        let mut unit = mul_mod(un % m, inv_mod(ud % m, m).expect("unit"), m);
        if sign_neg {
            unit = (m - unit) % m;
        }
        Self::new(p, vn as i64 - vd as i64, unit, prec)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_none()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.value.map(|v| v.0)
    }

    pub fn unit(&self) -> Option<u64> {
        self.value.map(|v| v.1)
    }

    pub fn precision(&self) -> Option<u32> {
        self.value.map(|v| v.2)
    }

    /// The unit part modulo `p^k`, if it is known that far.
    pub fn unit_mod(&self, k: u32) -> Result<u64> {
        let (_, u, prec) = self
            .value
            .ok_or_else(|| Error::Domain("zero has no unit part".into()))?;
        if k > prec {
            return Err(Error::Precision(format!(
                "unit part known mod {}^{prec}, needed mod {}^{k}",
                self.p, self.p
            )));
        }
        Ok(u % self.p.pow(k))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::InvalidArgument("mixing different primes".into()));
        }
        match (self.value, other.value) {
            (Some((v1, u1, k1)), Some((v2, u2, k2))) => {
                let k = k1.min(k2);
                let m = self.p.pow(k);
                Self::new(self.p, v1 + v2, mul_mod(u1 % m, u2 % m, m), k)
            }
            _ => Ok(Self::zero(self.p)),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let (v, u, k) = self
            .value
            .ok_or_else(|| Error::Domain("inverse of zero".into()))?;
        let m = self.p.pow(k);
        Self::new(self.p, -v, inv_mod(u, m).expect("unit"), k)
    }
}

fn split(mut n: u64, p: u64) -> (u32, u64) {
    let v = valuation(n, p);
    n /= p.pow(v);
    (v, n)
}

impl fmt::Display for PAdicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            None => write!(f, "0"),
            Some((v, u, k)) => write!(f, "{}^{v} * ({u} mod {}^{k})", self.p, self.p),
        }
    }
}

/// `psi_b(x) = psi_p(b x)`; its conductor is `v_p(b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdditiveCharacter {
    twist: PAdicApprox,
}

impl AdditiveCharacter {
    /// The canonical character `psi_p` (conductor 0).
    pub fn canonical(p: u64) -> Result<Self> {
        Self::twisted(PAdicApprox::from_integer(p, 1)?)
    }

    pub fn twisted(twist: PAdicApprox) -> Result<Self> {
        if twist.is_zero() {
            return Err(Error::InvalidArgument(
                "additive twist must be nonzero".into(),
            ));
        }
        Ok(AdditiveCharacter { twist })
    }

    pub fn p(&self) -> u64 {
        self.twist.p
    }

    pub fn twist(&self) -> &PAdicApprox {
        &self.twist
    }

    /// `n(psi_b) = v_p(b)`.
    pub fn conductor(&self) -> i64 {
        self.twist.valuation().expect("nonzero twist")
    }

    pub fn eval(&self, x: &PAdicApprox) -> Result<RootOfUnity> {
        let bx = self.twist.mul(x)?;
        let Some(w) = bx.valuation() else {
            return Ok(RootOfUnity::one());
        };
        if w >= 0 {
            return Ok(RootOfUnity::one());
        }
        let depth = (-w) as u32;
        let u = bx.unit_mod(depth)?;
        Ok(RootOfUnity::from_parts(p_pow(self.p(), depth)?, u))
    }
}

/// A character of `Q_p^x` with exact conductor.
#[derive(Debug, Clone)]
pub struct LocalCharacter {
    p: u64,
    conductor: u32,
    unit_exp: u64,
    pi_value: RootOfUnity,
    group: Option<Arc<UnitGroup>>,
}

impl PartialEq for LocalCharacter {
    fn eq(&self, other: &Self) -> bool {
        (self.p, self.conductor, self.unit_exp, self.pi_value)
            == (other.p, other.conductor, other.unit_exp, other.pi_value)
    }
}

impl Eq for LocalCharacter {}

impl LocalCharacter {
    /// The character with `chi(g) = zeta_{phi(p^a)}^t` on the fixed generator
    /// and `chi(p) = pi_value`. Rejects `t` whose character has conductor
    /// smaller than `a`.
    pub fn new(p: u64, conductor: u32, t: i64, pi_value: RootOfUnity) -> Result<Self> {
        check_prime(p)?;
        if conductor == 0 {
            if t != 0 {
                return Err(Error::InvalidArgument(
                    "an unramified character has trivial unit part (t = 0)".into(),
                ));
            }
            return Ok(Self::unramified(p, pi_value));
        }
        let group = UnitGroup::shared(p, conductor)?;
        let t = rem_i(t as i128, group.order());
        let exact = if conductor == 1 {
            t != 0
        } else {
            !t.is_multiple_of(p)
        };
        if !exact {
            let rule = if conductor == 1 {
                format!("t must be nonzero mod {}", p - 1)
            } else {
                format!("t must not be divisible by p = {p}")
            };
            return Err(Error::InvalidArgument(format!(
                "conductor exactness violated for a = {conductor}: {rule}"
            )));
        }
        Ok(LocalCharacter {
            p,
            conductor,
            unit_exp: t,
            pi_value,
            group: Some(group),
        })
    }

    pub fn unramified(p: u64, pi_value: RootOfUnity) -> Self {
        LocalCharacter {
            p,
            conductor: 0,
            unit_exp: 0,
            pi_value,
            group: None,
        }
    }

    pub fn trivial(p: u64) -> Self {
        Self::unramified(p, RootOfUnity::one())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Stored conductor `a(chi)`.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn unit_exponent(&self) -> u64 {
        self.unit_exp
    }

    pub fn pi_value(&self) -> RootOfUnity {
        self.pi_value
    }

    pub fn unit_group(&self) -> Option<&UnitGroup> {
        self.group.as_deref()
    }

    /// `phi(p^a)`, or 1 when unramified.
    pub fn unit_order(&self) -> u64 {
        self.group.as_ref().map_or(1, |g| g.order())
    }

    /// `chi` on a unit given mod `p^a` (any representative).
    pub fn eval_unit(&self, u: u64) -> Result<RootOfUnity> {
        match &self.group {
            None => {
                if u.is_multiple_of(self.p) {
                    return Err(Error::Domain(format!("{u} is not a unit")));
                }
                Ok(RootOfUnity::one())
            }
            Some(g) => {
                let k = g.dlog(u)?;
                Ok(self.unit_power(k))
            }
        }
    }

    /// `chi(g^k)`.
    pub fn unit_power(&self, k: u64) -> RootOfUnity {
        let m = self.unit_order();
        RootOfUnity::from_parts(m, ((self.unit_exp as u128 * k as u128) % m as u128) as u64)
    }

    pub fn eval(&self, x: &PAdicApprox) -> Result<RootOfUnity> {
        if x.p() != self.p {
            return Err(Error::InvalidArgument("mixing different primes".into()));
        }
        let v = x
            .valuation()
            .ok_or_else(|| Error::Domain("character evaluated at zero".into()))?;
        let at_p = self.pi_value.pow(v);
        if self.conductor == 0 {
            return Ok(at_p);
        }
        let u = x.unit_mod(self.conductor)?;
        Ok(at_p * self.eval_unit(u)?)
    }

    pub fn inverse(&self) -> Self {
        let mut out = self.clone();
        out.unit_exp = (self.unit_order() - self.unit_exp) % self.unit_order();
        out.pi_value = self.pi_value.inverse();
        out
    }

    /// Product character, with its conductor lowered to the exact value.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::InvalidArgument("mixing different primes".into()));
        }
        let p = self.p;
        let pi_value = self.pi_value * other.pi_value;
        let top = self.conductor.max(other.conductor);
        if top == 0 {
            return Ok(Self::unramified(p, pi_value));
        }
        let order = UnitGroup::shared(p, top)?.order();
        let lift = |c: &Self| -> u64 {
            if c.conductor == 0 {
                0
            } else {
                c.unit_exp * p.pow(top - c.conductor)
            }
        };
        let mut t = (lift(self) + lift(other)) % order;
        let mut a = top;
        while a >= 2 && t % p == 0 {
            t /= p;
            a -= 1;
        }
        if a == 1 && t == 0 {
            a = 0;
        }
        if a == 0 {
            return Ok(Self::unramified(p, pi_value));
        }
        Self::new(p, a, t as i64, pi_value)
    }

    /// Whether `chi` is trivial on `U^i = 1 + p^i Z_p` (`U^0` being all units),
    /// decided on a generator of that group modulo `1 + p^a Z_p`.
    pub fn is_trivial_on(&self, i: u32) -> bool {
        if i >= self.conductor {
            return true;
        }
        if i == 0 {
            return self.unit_exp == 0;
        }
        let one_plus = 1 + self.p.pow(i);
        self.eval_unit(one_plus)
            .map(|r| r.is_one())
            .unwrap_or(false)
    }

    /// Smallest `i` with `chi` trivial on `U^i`, found by testing.
    pub fn computed_conductor(&self) -> u32 {
        (0..=self.conductor)
            .find(|&i| self.is_trivial_on(i))
            .expect("trivial on U^a by construction")
    }
}

impl fmt::Display for LocalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "chi[p={}, a={}, t={}, chi(p)={}]",
            self.p, self.conductor, self.unit_exp, self.pi_value
        )
    }
}

/// All characters of exact conductor `a` with `chi(p)` running over the
/// `pi_order`-th roots of unity.
pub fn enumerate_characters(
    p: u64,
    a: u32,
    pi_order: u64,
) -> Result<impl Iterator<Item = LocalCharacter>> {
    check_prime(p)?;
    if pi_order == 0 {
        return Err(Error::InvalidArgument("pi_order must be positive".into()));
    }
    let order = if a == 0 {
        1
    } else {
        UnitGroup::shared(p, a)?.order()
    };
    let ts: Vec<u64> = match a {
        0 => vec![0],
        1 => (1..order).collect(),
        _ => (1..order).filter(|t| t % p != 0).collect(),
    };
    Ok(ts.into_iter().flat_map(move |t| {
        (0..pi_order).map(move |j| {
            let pi = RootOfUnity::from_parts(pi_order, j);
            LocalCharacter::new(p, a, t as i64, pi).expect("enumerated exponents are exact")
        })
    }))
}
