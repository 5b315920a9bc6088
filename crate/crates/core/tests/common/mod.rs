//! Brute-force oracles that share no code paths with the library's sums.
//!
//! Everything here is computed by direct enumeration: generators by order
//! search, discrete logs by walking powers, epsilon by a complex `f64` sum,
//! and finite fields by polynomial arithmetic written from scratch.

#![allow(dead_code)]

use std::f64::consts::PI;

pub type C = (f64, f64);

pub fn cis(num: i128, den: u128) -> C {
    let r = num.rem_euclid(den as i128) as f64 / den as f64;
    ((2.0 * PI * r).cos(), (2.0 * PI * r).sin())
}

pub fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

pub fn close(a: C, b: C, tol: f64) -> bool {
    (a.0 - b.0).abs() <= tol && (a.1 - b.1).abs() <= tol
}

pub fn powm(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn mult_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * g as u128 % m as u128) as u64;
        k += 1;
    }
    k
}

/// Smallest integer generating `(Z/p^2)^x`, found by computing orders.
pub fn generator(p: u64) -> u64 {
    let m = p * p;
    (2..m)
        .find(|&g| g % p != 0 && mult_order(g, m) == p * (p - 1))
        .expect("cyclic group")
}

/// `log[u] = k` with `g^k = u mod p^a`, by walking the powers of `g`.
pub fn dlog_table(p: u64, a: u32) -> Vec<u64> {
    let m = p.pow(a);
    let g = generator(p);
    let mut log = vec![u64::MAX; m as usize];
    let mut x = 1u64;
    for k in 0..p.pow(a - 1) * (p - 1) {
        log[x as usize] = k;
        x = x * g % m;
    }
    log
}

pub fn inv(u: u64, m: u64) -> u64 {
    (1..m)
        .find(|&v| (u as u128 * v as u128) % m as u128 == 1)
        .expect("unit")
}

/// A character given as raw data: `chi(g^k) = e(t k / phi(p^a))`, `chi(p) = e(pi_exp / pi_order)`.
#[derive(Clone, Copy, Debug)]
pub struct RawChar {
    pub p: u64,
    pub a: u32,
    pub t: u64,
    pub pi_order: u64,
    pub pi_exp: u64,
}

impl RawChar {
    pub fn phi(&self) -> u64 {
        self.p.pow(self.a - 1) * (self.p - 1)
    }

    /// `chi(u)` as an angle fraction `(num, den)`.
    pub fn angle(&self, log: &[u64], u: u64) -> (u128, u128) {
        let k = log[(u % self.p.pow(self.a)) as usize];
        (
            (self.t as u128 * k as u128) % self.phi() as u128,
            self.phi() as u128,
        )
    }
}

/// Float epsilon by the full sum with canonical `psi` and `c = p^a * c_unit`.
pub fn float_epsilon(chi: RawChar, log: &[u64], c_unit: u64) -> C {
    let (p, a) = (chi.p, chi.a);
    let pa = p.pow(a);
    let cinv = inv(c_unit % pa, pa);
    let mut s = (0.0, 0.0);
    for x in (1..pa).filter(|x| x % p != 0) {
        let (n, d) = chi.angle(log, x);
        let term = cmul(
            cis(-(n as i128), d),
            cis((x * cinv % pa) as i128, pa as u128),
        );
        s = (s.0 + term.0, s.1 + term.1);
    }
    let (n, d) = chi.angle(log, c_unit);
    let chi_c = cmul(
        cis(n as i128, d),
        cis((chi.pi_exp * a as u64) as i128, chi.pi_order as u128),
    );
    let scale = (pa as f64).sqrt();
    let v = cmul(chi_c, s);
    (v.0 / scale, v.1 / scale)
}

/// All units `u mod p^m` with `chi(1 + y) = psi(y / c)` on every `y` in
/// `p^{a-m} Z / p^a Z`, for canonical `psi` and `c = p^a u`, checked as exact
/// rational angles.
pub fn brute_c_units(chi: RawChar, log: &[u64], m: u32) -> Vec<u64> {
    let (p, a) = (chi.p, chi.a);
    let pa = p.pow(a);
    let pm = p.pow(m);
    (1..pm.max(2))
        .filter(|u| u % p != 0 || m == 0)
        .filter(|&u| {
            let u_inv = inv(u % pa, pa) as u128;
            (0..pm).all(|k| {
                let y = k * p.pow(a - m);
                let (n, d) = chi.angle(log, 1 + y);
                // psi(y / (p^a u)) = e(y u^{-1} / p^a)
                let psi_num = y as u128 * u_inv % pa as u128;
                n * pa as u128 == psi_num * d
            })
        })
        .collect()
}

/// `F_{p^s}` by brute force: polynomials mod a monic irreducible of degree `s`.
pub struct Field {
    pub p: u64,
    pub s: usize,
    pub modulus: Vec<u64>,
}

impl Field {
    pub fn new(p: u64, s: usize) -> Self {
        if s == 1 {
            return Field {
                p,
                s,
                modulus: vec![0, 1],
            };
        }
        // without a root, a quadratic or cubic is irreducible
        assert!(s <= 3);
        let total = p.pow(s as u32);
        for idx in 0..total {
            let mut poly: Vec<u64> = (0..s).map(|i| idx / p.pow(i as u32) % p).collect();
            poly.push(1);
            let has_root =
                (0..p).any(|x| poly.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0);
            if !has_root {
                return Field {
                    p,
                    s,
                    modulus: poly,
                };
            }
        }
        unreachable!("irreducible polynomials exist")
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.s as u32)
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        (0..self.q())
            .map(|i| {
                (0..self.s)
                    .map(|k| i / self.p.pow(k as u32) % self.p)
                    .collect()
            })
            .collect()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut prod = vec![0u64; 2 * self.s];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        for top in (self.s..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for k in 0..self.s {
                let sub = c * self.modulus[k] % p;
                prod[top - self.s + k] = (prod[top - self.s + k] + p - sub) % p;
            }
            prod[top] = 0;
        }
        prod.truncate(self.s);
        prod
    }

    pub fn pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut r = vec![0u64; self.s];
        r[0] = 1;
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// `Tr(x) = x + x^p + ... + x^{p^{s-1}}`, which lies in the prime field.
    pub fn trace(&self, x: &[u64]) -> u64 {
        let mut acc = vec![0u64; self.s];
        let mut y = x.to_vec();
        for _ in 0..self.s {
            for (a, b) in acc.iter_mut().zip(&y) {
                *a = (*a + b) % self.p;
            }
            y = self.pow(&y, self.p);
        }
        assert!(acc[1..].iter().all(|&c| c == 0));
        acc[0]
    }

    /// Quadratic character by Euler's criterion.
    pub fn eta(&self, x: &[u64]) -> i64 {
        let r = self.pow(x, (self.q() - 1) / 2);
        if r[0] == 1 && r[1..].iter().all(|&c| c == 0) {
            1
        } else {
            -1
        }
    }

    pub fn float_gauss_sum(&self) -> C {
        let mut s = (0.0, 0.0);
        for x in self.elements().into_iter().skip(1) {
            let e = cis(self.trace(&x) as i128, self.p as u128);
            let sign = self.eta(&x) as f64;
            s = (s.0 + sign * e.0, s.1 + sign * e.1);
        }
        s
    }

    pub fn float_square_sum(&self) -> C {
        let mut s = (0.0, 0.0);
        for x in self.elements() {
            let e = cis(self.trace(&self.mul(&x, &x)) as i128, self.p as u128);
            s = (s.0 + e.0, s.1 + e.1);
        }
        s
    }
}

/// `sum_{x in F_p^x} (x/p) e(b x / p)`, by Euler's criterion.
pub fn float_twisted_gauss(p: u64, b: u64) -> C {
    let mut s = (0.0, 0.0);
    for x in 1..p {
        let sign = if powm(x, (p - 1) / 2, p) == 1 {
            1.0
        } else {
            -1.0
        };
        let e = cis((b * x % p) as i128, p as u128);
        s = (s.0 + sign * e.0, s.1 + sign * e.1);
    }
    s
}
