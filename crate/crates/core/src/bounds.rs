//! Lower bounds on the subgroup count of non-nilpotent groups by the shape of
//! the order, and the candidate orders they leave open below a threshold.

use std::collections::BTreeMap;
use std::fmt;

use crate::abelian::min_noncyclic_pgroup_count;
use crate::arith::{is_prime, primes_between, primes_up_to};
use crate::{Count, Error, FactoredOrder, Result};

/// Largest prime considered when searching candidate orders.
pub const PRIME_WINDOW: u64 = 50;

/// Largest subgroup count accepted by [`candidate_orders`].
pub const MAX_CANDIDATE_K: Count = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// Least count of a non-cyclic group of prime-power order.
    PGroup,
    TwoPrime,
    ThreePrime,
    /// The sharper bound for square-free orders with three primes.
    Pqr,
    FourOrMore,
}

impl Theorem {
    pub fn tag(self) -> &'static str {
        match self {
            Theorem::PGroup => "p-group",
            Theorem::TwoPrime => "two-prime",
            Theorem::ThreePrime => "three-prime",
            Theorem::Pqr => "pqr",
            Theorem::FourOrMore => "four-or-more-primes",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// An order pattern together with the primes for which it is admitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `p^a` for each listed exponent.
    PGroup {
        p: u64,
        exponents: Vec<u32>,
    },
    /// `p^a q^b` with `p < q`, for each listed `(p, q)`.
    TwoPrime {
        a: u32,
        b: u32,
        pairs: Vec<(u64, u64)>,
    },
    /// `p^a q^b r^c` with `p < q < r`.
    ThreePrime {
        exponents: [u32; 3],
        triples: Vec<[u64; 3]>,
    },
    FourOrMore,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub shape: Shape,
    /// The least bound over every admitted prime assignment.
    pub bound: Count,
    pub theorem: Theorem,
}

fn ordered(ps: &[u64]) -> Result<()> {
    if ps.iter().any(|&p| !is_prime(p)) {
        return Err(Error::Precondition(format!("{ps:?} are not all prime")));
    }
    if ps.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(format!("primes {ps:?} must be strictly increasing")));
    }
    Ok(())
}

fn exponents_positive(es: &[u32]) -> Result<()> {
    if es.contains(&0) {
        return Err(Error::Precondition("exponents must be positive".into()));
    }
    Ok(())
}

/// Lower bound for a non-nilpotent group of order `p^a q^b`, `p < q`.
pub fn bound_two_prime(p: u64, q: u64, a: u32, b: u32) -> Result<Count> {
    ordered(&[p, q])?;
    exponents_positive(&[a, b])?;
    let (a, b) = (a as u64, b as u64);
    let mut best = b * q + a * b + a + 1;
    if b > 1 {
        best = best.min(b * (q + 1) + 2 * a + (a - 1) * p.min(b));
    }
    if a > 1 {
        let m_p = min_noncyclic_pgroup_count(p, a as u32)?;
        best = best.min(b + q + 1 + (b - 1) * a.min(q) + m_p);
    }
    Ok(best)
}

/// `base^i` for the least `i` with `base^i >= target`.
fn power_reaching(base: u64, target: u64) -> u64 {
    let mut acc = 1u64;
    while acc < target {
        acc *= base;
    }
    acc
}

/// Lower bound for a non-nilpotent, coprime-indecomposable group of order
/// `p^a q^b r^c`, `p < q < r`.
pub fn bound_three_prime(p: u64, q: u64, r: u64, a: u32, b: u32, c: u32) -> Result<Count> {
    ordered(&[p, q, r])?;
    exponents_positive(&[a, b, c])?;
    let (a, b, c) = (a as u64, b as u64, c as u64);
    // Smallest powers of p and q reaching r + 1.
    let p_i = power_reaching(p, r + 1);
    let q_j = power_reaching(q, r + 1);
    let tail =
        (p + q + r + 2).min(q + 2 + (p_i + 1).min(q_j).min(2 * r + 1)).min((r + 1).min(2 * q + 2) + (r + 1).min(2 * q));
    Ok(a + b + c + (a - 1) * (b + 1).min(p) + (b - 1) * (c + 1).min(q) + (c - 1) * (a + 1).min(r) + tail)
}

/// Lower bound for a non-nilpotent, coprime-indecomposable group of order `pqr`.
pub fn bound_pqr(p: u64, q: u64, r: u64) -> Result<Count> {
    ordered(&[p, q, r])?;
    Ok(r + 4 + (r + 1).min(2 * q))
}

/// Lower bound for a non-nilpotent group whose order has at least four prime divisors.
pub fn bound_four_or_more() -> Count {
    20
}

/// The bound that applies to a concrete order.
pub fn bound_for_order(f: &FactoredOrder) -> Result<BoundReport> {
    let fs = f.factors();
    Ok(match *fs {
        [] => return Err(Error::Domain("the trivial group has no bound".into())),
        [(p, a)] => {
            if a < 2 {
                return Err(Error::Domain(format!("every group of order {p} is cyclic")));
            }
            BoundReport {
                shape: Shape::PGroup { p, exponents: vec![a] },
                bound: min_noncyclic_pgroup_count(p, a)?,
                theorem: Theorem::PGroup,
            }
        }
        [(p, a), (q, b)] => BoundReport {
            shape: Shape::TwoPrime { a, b, pairs: vec![(p, q)] },
            bound: bound_two_prime(p, q, a, b)?,
            theorem: Theorem::TwoPrime,
        },
        [(p, a), (q, b), (r, c)] => {
            let (bound, theorem) = if (a, b, c) == (1, 1, 1) {
                (bound_pqr(p, q, r)?, Theorem::Pqr)
            } else {
                (bound_three_prime(p, q, r, a, b, c)?, Theorem::ThreePrime)
            };
            BoundReport { shape: Shape::ThreePrime { exponents: [a, b, c], triples: vec![[p, q, r]] }, bound, theorem }
        }
        _ => BoundReport { shape: Shape::FourOrMore, bound: bound_four_or_more(), theorem: Theorem::FourOrMore },
    })
}

/// Every order family not ruled out by the bounds for subgroup count `<= k`:
/// non-abelian `p`-groups, then two-prime and three-prime patterns, and the
/// four-prime family once `k >= 20`.
pub fn candidate_orders(k: Count) -> Result<Vec<BoundReport>> {
    if k > MAX_CANDIDATE_K {
        return Err(Error::Window(format!("K = {k} exceeds the search window {MAX_CANDIDATE_K}")));
    }
    let primes = primes_up_to(PRIME_WINDOW);
    let max_exp = k as u32;
    let mut out = Vec::new();

    // A non-abelian group of order p^a needs a >= 3.
    for &p in &primes {
        let exponents: Vec<u32> =
            (3..=max_exp).take_while(|&a| min_noncyclic_pgroup_count(p, a).is_ok_and(|m| m <= k)).collect();
        if let Some(&first) = exponents.first() {
            out.push(BoundReport {
                bound: min_noncyclic_pgroup_count(p, first)?,
                shape: Shape::PGroup { p, exponents },
                theorem: Theorem::PGroup,
            });
        }
    }

    let mut two: BTreeMap<(u32, u32), (Vec<(u64, u64)>, Count)> = BTreeMap::new();
    for a in 1..=max_exp {
        for b in 1..=max_exp {
            for (qi, &q) in primes.iter().enumerate() {
                for &p in &primes[..qi] {
                    let bound = bound_two_prime(p, q, a, b)?;
                    if bound <= k {
                        let slot = two.entry((a, b)).or_insert((Vec::new(), Count::MAX));
                        slot.0.push((p, q));
                        slot.1 = slot.1.min(bound);
                    }
                }
            }
        }
    }
    for ((a, b), (pairs, bound)) in two {
        out.push(BoundReport { shape: Shape::TwoPrime { a, b, pairs }, bound, theorem: Theorem::TwoPrime });
    }

    let mut three: BTreeMap<[u32; 3], (Vec<[u64; 3]>, Count, Theorem)> = BTreeMap::new();
    for a in 1..=max_exp {
        for b in 1..=max_exp {
            for c in 1..=max_exp {
                if a + b + c > max_exp {
                    continue;
                }
                for (ri, &r) in primes.iter().enumerate() {
                    for (qi, &q) in primes[..ri].iter().enumerate() {
                        for &p in &primes[..qi] {
                            let (bound, theorem) = if (a, b, c) == (1, 1, 1) {
                                (bound_pqr(p, q, r)?, Theorem::Pqr)
                            } else {
                                (bound_three_prime(p, q, r, a, b, c)?, Theorem::ThreePrime)
                            };
                            if bound <= k {
                                let slot = three.entry([a, b, c]).or_insert((Vec::new(), Count::MAX, theorem));
                                slot.0.push([p, q, r]);
                                slot.1 = slot.1.min(bound);
                            }
                        }
                    }
                }
            }
        }
    }
    for (exponents, (mut triples, bound, theorem)) in three {
        triples.sort_unstable_by_key(|t| (t[2], t[1], t[0]));
        out.push(BoundReport { shape: Shape::ThreePrime { exponents, triples }, bound, theorem });
    }

    if k >= bound_four_or_more() {
        out.push(BoundReport { shape: Shape::FourOrMore, bound: bound_four_or_more(), theorem: Theorem::FourOrMore });
    }
    Ok(out)
}

fn power(letter: &str, e: u32) -> String {
    if e == 1 {
        letter.to_string()
    } else {
        format!("{letter}^{e}")
    }
}

fn set_list(xs: &[u64]) -> String {
    let parts: Vec<String> = xs.iter().map(u64::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// `name <= max` when `xs` is every prime from `lo` up to its maximum,
/// `name = x` for a singleton; otherwise `name in {..}`.
fn prime_constraint(name: &str, xs: &[u64], lo: u64) -> String {
    let max = *xs.last().expect("non-empty family");
    if xs.len() == 1 {
        format!("{name} = {max}")
    } else if xs == primes_between(lo, max).as_slice() {
        format!("{name} <= {max}")
    } else {
        format!("{name} in {}", set_list(xs))
    }
}

fn sorted_unique(it: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut v: Vec<u64> = it.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

impl Shape {
    pub fn pattern(&self) -> String {
        match self {
            Shape::PGroup { p, .. } => format!("{p}^i"),
            Shape::TwoPrime { a, b, .. } => format!("{} {}", power("p", *a), power("q", *b)),
            Shape::ThreePrime { exponents: [a, b, c], .. } => {
                format!("{} {} {}", power("p", *a), power("q", *b), power("r", *c))
            }
            Shape::FourOrMore => "four or more primes".to_string(),
        }
    }

    pub fn constraint(&self) -> String {
        match self {
            Shape::PGroup { exponents, .. } => {
                let (lo, hi) = (exponents[0], exponents[exponents.len() - 1]);
                if lo == hi {
                    format!("i = {lo}")
                } else {
                    format!("{lo} <= i <= {hi}")
                }
            }
            Shape::TwoPrime { pairs, .. } => {
                let qs = sorted_unique(pairs.iter().map(|&(_, q)| q));
                let full = pairs.len() == qs.iter().map(|&q| primes_between(2, q - 1).len()).sum::<usize>();
                if full {
                    return prime_constraint("q", &qs, 3);
                }
                let ps = sorted_unique(pairs.iter().map(|&(p, _)| p));
                let product = pairs.len() == qs.iter().map(|&q| ps.iter().filter(|&&p| p < q).count()).sum::<usize>();
                if product {
                    format!("{} and {}", prime_constraint("p", &ps, 2), prime_constraint("q", &qs, 3))
                } else {
                    let parts: Vec<String> = pairs.iter().map(|(p, q)| format!("({p}, {q})")).collect();
                    format!("(p, q) in {{{}}}", parts.join(", "))
                }
            }
            Shape::ThreePrime { triples, .. } => {
                let rs = sorted_unique(triples.iter().map(|t| t[2]));
                let max_r = *rs.last().expect("non-empty family");
                let all_below: usize = primes_between(5, max_r)
                    .iter()
                    .map(|&r| {
                        let m = primes_between(2, r - 1).len();
                        m * (m - 1) / 2
                    })
                    .sum();
                if triples.len() == all_below {
                    prime_constraint("r", &rs, 5)
                } else {
                    let parts: Vec<String> = triples.iter().map(|[p, q, r]| format!("({p}, {q}, {r})")).collect();
                    format!("(p, q, r) in {{{}}}", parts.join(", "))
                }
            }
            Shape::FourOrMore => "unrestricted".to_string(),
        }
    }
}

/// `pattern with constraint<TAB>bound<TAB>theorem`.
impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} with {}\t{}\t{}", self.shape.pattern(), self.shape.constraint(), self.bound, self.theorem)
    }
}
