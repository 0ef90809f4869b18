//! Classical structural facts, checked against an enumerated lattice.
//!
//! Each check returns the list of violations it found; an empty list means
//! the lattice is consistent with the theorem.

use crate::arith::{factorize, prime_power_base};
use crate::lattice::is_normal;
use crate::{Lattice, LatticeSummary, SubgroupSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    /// In a `p`-group, subgroups of each order number `1 mod p`.
    Wielandt,
    /// `n_p = 1 mod p` and `n_p` divides the `p'`-part of the order.
    SylowCounting,
    /// Subgroups whose index is the least prime divisor are normal.
    PrimeIndexNormal,
    /// `NH` is a subgroup whenever `N` is normal.
    NormalProductClosure,
    /// A cyclic Sylow subgroup at the least prime has a normal complement.
    BurnsideComplement,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Wielandt,
        Check::SylowCounting,
        Check::PrimeIndexNormal,
        Check::NormalProductClosure,
        Check::BurnsideComplement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Wielandt => "wielandt",
            Check::SylowCounting => "sylow-counting",
            Check::PrimeIndexNormal => "prime-index-normal",
            Check::NormalProductClosure => "normal-product-closure",
            Check::BurnsideComplement => "burnside-complement",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: Check,
    pub detail: String,
}

fn violation(check: Check, detail: String) -> Violation {
    Violation { check, detail }
}

/// Vacuous unless the group is a nontrivial `p`-group.
pub fn wielandt(summary: &LatticeSummary, order: usize) -> Vec<Violation> {
    let Some((p, a)) = prime_power_base(order as u64) else {
        return Vec::new();
    };
    (0..=a)
        .filter_map(|i| {
            let size = p.pow(i) as usize;
            let c = summary.by_order.get(&size).copied().unwrap_or(0);
            (c % p != 1).then(|| violation(Check::Wielandt, format!("{c} subgroups of order {size}")))
        })
        .collect()
}

pub fn sylow_counting(summary: &LatticeSummary, order: usize) -> Vec<Violation> {
    let n = order as u64;
    factorize(n)
        .into_iter()
        .filter_map(|(p, a)| {
            let n_p = summary.sylow_counts.get(&p).copied().unwrap_or(0);
            let cofactor = n / p.pow(a);
            (n_p % p != 1 || !cofactor.is_multiple_of(n_p.max(1)) || n_p == 0)
                .then(|| violation(Check::SylowCounting, format!("n_{p} = {n_p}")))
        })
        .collect()
}

pub fn prime_index_normal(lattice: &Lattice<'_>) -> Vec<Violation> {
    let g = lattice.group();
    let n = g.order();
    let Some(&(p, _)) = factorize(n as u64).first() else {
        return Vec::new();
    };
    lattice
        .of_order(n / p as usize)
        .filter(|h| !is_normal(g, h))
        .map(|h| {
            violation(Check::PrimeIndexNormal, format!("subgroup of index {p} with {} elements is not normal", h.len()))
        })
        .collect()
}

/// The set product `N H` as a union of right cosets `N h`.
pub fn set_product(lattice: &Lattice<'_>, n: &SubgroupSet, h: &SubgroupSet) -> SubgroupSet {
    let g = lattice.group();
    let mut out = SubgroupSet::empty(g.order());
    let n_elems: Vec<usize> = n.iter().collect();
    for x in h.iter() {
        if !out.contains(x) {
            for &y in &n_elems {
                out.insert(g.mul(y, x));
            }
        }
    }
    out
}

pub fn normal_product_closure(lattice: &Lattice<'_>) -> Vec<Violation> {
    let normals = lattice.normal_subgroups();
    let mut out = Vec::new();
    for n in &normals {
        for h in lattice.subgroups() {
            let nh = set_product(lattice, n, h);
            if !lattice.contains(&nh) {
                out.push(violation(
                    Check::NormalProductClosure,
                    format!("N H with |N| = {}, |H| = {} is not a subgroup", n.len(), h.len()),
                ));
            }
        }
    }
    out
}

pub fn burnside_complement(lattice: &Lattice<'_>) -> Vec<Violation> {
    let g = lattice.group();
    let n = g.order();
    let Some(&(p, a)) = factorize(n as u64).first() else {
        return Vec::new();
    };
    let pa = p.pow(a) as usize;
    let Some(sylow) = lattice.of_order(pa).next() else {
        return vec![violation(Check::BurnsideComplement, format!("no subgroup of order {pa}"))];
    };
    let cyclic = sylow.iter().any(|x| g.element_order(x) == pa);
    if !cyclic {
        return Vec::new();
    }
    let complement = lattice.of_order(n / pa).any(|k| is_normal(g, k));
    if complement {
        Vec::new()
    } else {
        vec![violation(Check::BurnsideComplement, format!("no normal subgroup of order {}", n / pa))]
    }
}

/// Every check against one lattice.
pub fn check_all(lattice: &Lattice<'_>) -> Vec<Violation> {
    let summary = lattice.summary();
    let order = lattice.group().order();
    let mut out = wielandt(&summary, order);
    out.extend(sylow_counting(&summary, order));
    out.extend(prime_index_normal(lattice));
    out.extend(normal_product_closure(lattice));
    out.extend(burnside_complement(lattice));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Group, GroupExpr};

    fn lattice_of(s: &str) -> Group {
        GroupExpr::parse(s).unwrap().eval().unwrap()
    }

    #[test]
    fn standard_groups_are_consistent() {
        for s in ["S(3)", "A(4)", "A(5)", "Q(8)", "D(8)", "Z(12)", "SL(2,3)", "Heis(3)", "Meta(5,4,2,0)", "Z(2) x Q(8)"]
        {
            let g = lattice_of(s);
            let lat = Lattice::new(&g).unwrap();
            assert_eq!(check_all(&lat), vec![], "{s}");
        }
    }

    #[test]
    fn checks_detect_tampering() {
        let g = lattice_of("S(3)");
        let lat = Lattice::new(&g).unwrap();
        let mut s = lat.summary();
        *s.sylow_counts.get_mut(&2).unwrap() = 2;
        assert_eq!(sylow_counting(&s, 6).len(), 1);
        let g = lattice_of("D(8)");
        let mut s = Lattice::new(&g).unwrap().summary();
        *s.by_order.get_mut(&2).unwrap() += 1;
        assert_eq!(wielandt(&s, 8).len(), 1);
    }

    #[test]
    fn set_products() {
        let g = lattice_of("S(3)");
        let lat = Lattice::new(&g).unwrap();
        let twos: Vec<&SubgroupSet> = lat.of_order(2).collect();
        let three = lat.of_order(3).next().unwrap();
        assert_eq!(set_product(&lat, three, twos[0]).len(), 6);
        // Two distinct order-2 subgroups multiply to a 4-element set, not a subgroup.
        let bad = set_product(&lat, twos[0], twos[1]);
        assert_eq!(bad.len(), 4);
        assert!(!lat.contains(&bad));
    }
}
