//! Small-integer number theory and factored group orders.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes `p` with `lo <= p <= hi`, ascending.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&p| is_prime(p)).collect()
}

pub fn primes_up_to(hi: u64) -> Vec<u64> {
    primes_between(2, hi)
}

/// The smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Prime factorization as ascending `(prime, exponent)` pairs; `1` has none.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some(p)` when `n` is a power of the prime `p` (with `n > 1`).
pub fn prime_power_base(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, a)] => Some((*p, *a)),
        _ => None,
    }
}

pub fn divisor_count(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, a)| a as u64 + 1).product()
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of `k` modulo `n`, or `None` when `gcd(k, n) != 1`.
pub fn multiplicative_order(k: u64, n: u64) -> Option<u64> {
    if num_integer::gcd(k, n) != 1 {
        return None;
    }
    if n == 1 {
        return Some(1);
    }
    let mut x = k % n;
    let mut ord = 1;
    while x != 1 {
        x = x * k % n;
        ord += 1;
    }
    Some(ord)
}

/// A group order written as distinct ascending primes with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FactoredOrder {
    factors: Vec<(u64, u32)>,
}

impl FactoredOrder {
    pub fn new(mut factors: Vec<(u64, u32)>) -> Result<Self> {
        factors.sort_unstable();
        for w in factors.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Domain(format!("prime {} repeated", w[0].0)));
            }
        }
        for &(p, a) in &factors {
            if !is_prime(p) {
                return Err(Error::Domain(format!("{p} is not prime")));
            }
            if a == 0 {
                return Err(Error::Domain(format!("exponent of {p} must be positive")));
            }
        }
        Ok(Self { factors })
    }

    pub fn of(n: u64) -> Self {
        Self { factors: factorize(n) }
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|&(_, a)| a)
    }

    pub fn prime_count(&self) -> usize {
        self.factors.len()
    }

    pub fn value(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, a)| acc.checked_mul(p.checked_pow(a)?))
    }
}

impl fmt::Display for FactoredOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|&(p, a)| format!("{p}^{a}")).collect();
        f.write_str(&parts.join("*"))
    }
}

/// Accepts `2^3*3^1`, `2^3 * 3`, or a plain integer such as `24`.
impl FromStr for FactoredOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty order".into() });
        }
        let mut acc: Vec<(u64, u32)> = Vec::new();
        let mut offset = 0;
        for term in compact.split('*') {
            let bad = |msg: &str| Error::Parse { pos: offset, msg: format!("{msg} in `{term}`") };
            let (base, exp) = match term.split_once('^') {
                Some((b, e)) => {
                    (b.parse::<u64>().map_err(|_| bad("bad base"))?, e.parse::<u32>().map_err(|_| bad("bad exponent"))?)
                }
                None => (term.parse::<u64>().map_err(|_| bad("bad factor"))?, 1),
            };
            if base == 0 {
                return Err(bad("zero factor"));
            }
            for _ in 0..exp {
                for (p, a) in factorize(base) {
                    match acc.iter_mut().find(|(q, _)| *q == p) {
                        Some(slot) => slot.1 += a,
                        None => acc.push((p, a)),
                    }
                }
            }
            offset += term.len() + 1;
        }
        FactoredOrder::new(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_roundtrip() {
        for n in 1..500u64 {
            let f = FactoredOrder::of(n);
            assert_eq!(f.value(), Some(n));
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn parses_orders() {
        let f: FactoredOrder = "2^3*3^1".parse().unwrap();
        assert_eq!(f.factors(), &[(2, 3), (3, 1)]);
        let g: FactoredOrder = " 3 * 2^3 ".parse().unwrap();
        assert_eq!(f, g);
        let h: FactoredOrder = "24".parse().unwrap();
        assert_eq!(f, h);
        assert!("2^x".parse::<FactoredOrder>().is_err());
        assert!(FactoredOrder::new(vec![(4, 1)]).is_err());
        assert!(FactoredOrder::new(vec![(2, 1), (2, 2)]).is_err());
    }

    #[test]
    fn orders_mod_n() {
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(3, 13), Some(3));
        assert_eq!(multiplicative_order(6, 25), Some(5));
        assert_eq!(multiplicative_order(2, 4), None);
        assert_eq!(divisor_count(12), 6);
        assert_eq!(next_prime(7), 11);
    }
}
