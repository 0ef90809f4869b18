//! Subgroup counts of finite abelian groups.
//!
//! An abelian group is the direct product of its Sylow subgroups, whose orders
//! are coprime, so its subgroup count is the product of the counts of its
//! p-components. Cyclic, rank-2 and elementary components have closed forms;
//! any other component is counted on an explicit table.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{factorize, is_prime, prime_power_base};
use crate::lattice::count_subgroups;
use crate::{Count, Error, Exact, FactoredOrder, Group, Result};

/// A finite abelian group up to isomorphism: a partition of exponents per prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbelianShape {
    components: BTreeMap<u64, Vec<u32>>,
}

impl AbelianShape {
    pub fn new(components: impl IntoIterator<Item = (u64, Vec<u32>)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, mut parts) in components {
            if !is_prime(p) {
                return Err(Error::Domain(format!("{p} is not prime")));
            }
            if parts.is_empty() || parts.contains(&0) {
                return Err(Error::Domain(format!("bad partition {parts:?} at {p}")));
            }
            parts.sort_unstable_by(|a, b| b.cmp(a));
            if map.insert(p, parts).is_some() {
                return Err(Error::Domain(format!("prime {p} repeated")));
            }
        }
        Ok(Self { components: map })
    }

    pub fn cyclic(f: &FactoredOrder) -> Self {
        Self { components: f.factors().iter().map(|&(p, a)| (p, vec![a])).collect() }
    }

    pub fn components(&self) -> &BTreeMap<u64, Vec<u32>> {
        &self.components
    }

    pub fn order(&self) -> Option<u64> {
        self.components.iter().try_fold(1u64, |acc, (&p, parts)| acc.checked_mul(p.checked_pow(parts.iter().sum())?))
    }

    pub fn is_cyclic(&self) -> bool {
        self.components.values().all(|parts| parts.len() == 1)
    }

    /// The product of cyclic groups `Z(p^e)`, in ascending prime order.
    pub fn build_group(&self) -> Result<Group> {
        let mut g = Group::trivial();
        for (&p, parts) in &self.components {
            for &e in parts {
                let n = p
                    .checked_pow(e)
                    .and_then(|n| usize::try_from(n).ok())
                    .ok_or(Error::SizeCap { order: usize::MAX, cap: crate::order_cap() })?;
                g = g.direct_product(&Group::cyclic(n)?)?;
            }
        }
        Ok(g.with_label(self.to_string()))
    }

    /// Reads off the invariant factors of an abelian group from `|Omega_i|`,
    /// the number of elements killed by `p^i`: its `p`-adic valuation grows by
    /// the number of parts of size at least `i`.
    pub fn from_group(g: &Group) -> Result<Self> {
        if !g.is_abelian() {
            return Err(Error::Precondition(format!("{} is not abelian", g.label())));
        }
        let orders = g.element_orders();
        let mut components = BTreeMap::new();
        for (p, a) in factorize(g.order() as u64) {
            // `p`-adic exponent of every `p`-element's order.
            let vals: Vec<u32> = orders
                .iter()
                .filter_map(|&o| {
                    prime_power_base(o as u64).map_or((o == 1).then_some(0), |(q, e)| (q == p).then_some(e))
                })
                .collect();
            let mut log_omega = vec![0u32];
            for i in 1..=a {
                let mut size = vals.iter().filter(|&&v| v <= i).count() as u64;
                let mut l = 0;
                while size > 1 {
                    size /= p;
                    l += 1;
                }
                log_omega.push(l);
                if l == a {
                    break;
                }
            }
            let conj: Vec<u32> = log_omega.windows(2).map(|w| w[1] - w[0]).collect();
            let parts: Vec<u32> = (1..=conj[0]).map(|j| conj.iter().filter(|&&c| c >= j).count() as u32).collect();
            components.insert(p, parts);
        }
        Ok(Self { components })
    }
}

/// `Z_8 x Z_2 x Z_3`, or `Z_1` for the trivial group.
impl fmt::Display for AbelianShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("Z_1");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .flat_map(|(&p, parts)| parts.iter().map(move |&e| format!("Z_{}", p.pow(e))))
            .collect();
        f.write_str(&parts.join(" x "))
    }
}

/// `prod (a_i + 1)` for the cyclic group of order `f`.
pub fn count_cyclic<T: Exact>(f: &FactoredOrder) -> Result<T> {
    f.exponents().try_fold(T::one(), |acc, a| acc.mul_exact(&T::lift(a as u64 + 1)))
}

/// Subgroups of `Z(p^a) x Z(p^b)` for `a <= b`.
pub fn count_rank2<T: Exact>(p: u64, a: u32, b: u32) -> Result<T> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if a > b {
        return Err(Error::Domain(format!("rank-2 exponents out of order: {a} > {b}")));
    }
    let l = |v: u64| T::lift(v);
    let pp = |e: u32| T::pow_exact(p, e);
    let (a64, b64) = (a as u64, b as u64);
    // (b-a-1) is -1 when a = b; keep every term non-negative.
    let mut pos = l(b64 - a64 + 1).mul_exact(&pp(a + 2)?)?.add_exact(&l(b64 + a64 + 1))?;
    let mut neg = l(b64 + a64 + 3).mul_exact(&l(p))?;
    if a == b {
        pos = pos.add_exact(&pp(a + 1)?)?;
    } else {
        neg = neg.add_exact(&l(b64 - a64 - 1).mul_exact(&pp(a + 1)?)?)?;
    }
    let denom = l(p - 1).mul_exact(&l(p - 1))?;
    pos.sub_exact(&neg)?.div_exact(&denom)
}

/// Number of `i`-dimensional subspaces of `F_p^n`.
pub fn gaussian_binomial<T: Exact>(n: u32, i: u32, p: u64) -> Result<T> {
    if i > n {
        return Err(Error::Domain(format!("gaussian binomial ({n} choose {i})")));
    }
    let one = T::one();
    let mut num = T::one();
    let mut den = T::one();
    for j in 0..i {
        num = num.mul_exact(&T::pow_exact(p, n - j)?.sub_exact(&one)?)?;
        den = den.mul_exact(&T::pow_exact(p, j + 1)?.sub_exact(&one)?)?;
    }
    num.div_exact(&den)
}

/// Subgroups of `(Z_p)^n`: all subspaces of `F_p^n`.
pub fn count_elementary<T: Exact>(p: u64, n: u32) -> Result<T> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    (0..=n).try_fold(T::zero(), |acc, i| acc.add_exact(&gaussian_binomial(n, i, p)?))
}

/// Subgroups of the abelian `p`-group with the given partition.
pub fn count_p_component<T: Exact>(p: u64, partition: &[u32]) -> Result<T> {
    let mut parts: Vec<u32> = partition.to_vec();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::Domain(format!("bad partition {partition:?}")));
    }
    match parts.as_slice() {
        [a] => Ok(T::lift(*a as u64 + 1)),
        [b, a] => count_rank2(p, *a, *b),
        _ if parts.iter().all(|&e| e == 1) => count_elementary(p, parts.len() as u32),
        _ => {
            let shape = AbelianShape::new([(p, parts)])?;
            Ok(T::lift(count_subgroups(&shape.build_group()?)?))
        }
    }
}

pub fn count_abelian<T: Exact>(shape: &AbelianShape) -> Result<T> {
    shape.components().iter().try_fold(T::one(), |acc, (&p, parts)| acc.mul_exact(&count_p_component(p, parts)?))
}

/// Least subgroup count of a non-cyclic group of order `p^a`.
pub fn min_noncyclic_pgroup_count(p: u64, a: u32) -> Result<Count> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if a < 2 {
        return Err(Error::Domain(format!("no non-cyclic group of order {p}^{a}")));
    }
    let a64 = a as u64;
    Ok(match (p, a) {
        (2, 2) => 5,
        (2, 3) => 6,
        (2, _) => 3 * a64 - 1,
        _ => (a64 - 1) * (p + 1) + 2,
    })
}
