//! Exhaustive subgroup enumeration.
//!
//! Subgroups are membership bit-vectors over the parent's element indices.
//! The full lattice is the closure of the cyclic subgroups under joins: every
//! subgroup is generated by finitely many cyclic subgroups, so joining each
//! known subgroup with each cyclic subgroup until nothing new appears reaches
//! all of them.

use std::collections::{BTreeMap, HashMap};

use num_integer::gcd;

use crate::arith::factorize;
use crate::group::check_cap;
use crate::{Count, Error, Group, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupSet {
    parent_order: usize,
    words: Vec<u64>,
}

impl SubgroupSet {
    pub fn empty(parent_order: usize) -> Self {
        Self { parent_order, words: vec![0; parent_order.div_ceil(64)] }
    }

    pub fn trivial(parent_order: usize) -> Self {
        let mut s = Self::empty(parent_order);
        s.insert(0);
        s
    }

    pub fn full(parent_order: usize) -> Self {
        let mut s = Self::empty(parent_order);
        for i in 0..parent_order {
            s.insert(i);
        }
        s
    }

    pub fn from_elements(parent_order: usize, elems: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(parent_order);
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.words[x >> 6] >> (x & 63) & 1 == 1
    }

    /// Returns `true` when `x` was not already present.
    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        let w = &mut self.words[x >> 6];
        let bit = 1u64 << (x & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &SubgroupSet) -> SubgroupSet {
        SubgroupSet {
            parent_order: self.parent_order,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Smallest subgroup containing `seed`.
pub fn generated_subgroup(g: &Group, seed: &[usize]) -> SubgroupSet {
    let mut set = SubgroupSet::trivial(g.order());
    let mut list = vec![0usize];
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        i += 1;
        for &s in seed {
            let y = g.mul(x, s);
            if set.insert(y) {
                list.push(y);
            }
        }
    }
    set
}

/// `<H, x>` for a subgroup `H` with element list `h_elems` and generators
/// `h_gens`, built as a union of right cosets `H r`.
fn join_with(g: &Group, h: &SubgroupSet, h_elems: &[u32], h_gens: &[u32], x: u32) -> SubgroupSet {
    let mut set = h.clone();
    let mut reps = vec![0usize];
    let mut i = 0;
    while i < reps.len() {
        let r = reps[i];
        i += 1;
        for &s in h_gens.iter().chain(std::iter::once(&x)) {
            let c = g.mul(r, s as usize);
            if !set.contains(c) {
                for &e in h_elems {
                    set.insert(g.mul(e as usize, c));
                }
                reps.push(c);
            }
        }
    }
    set
}

struct Node {
    set: SubgroupSet,
    elems: Vec<u32>,
    gens: Vec<u32>,
}

/// The complete subgroup lattice of a group, with membership lookup.
pub struct Lattice<'g> {
    group: &'g Group,
    subgroups: Vec<SubgroupSet>,
    index: HashMap<SubgroupSet, usize>,
}

impl<'g> Lattice<'g> {
    pub fn new(group: &'g Group) -> Result<Self> {
        check_cap(group.order())?;
        let n = group.order();
        let mut nodes: Vec<Node> = Vec::new();
        let mut index: HashMap<SubgroupSet, usize> = HashMap::new();

        let trivial = SubgroupSet::trivial(n);
        index.insert(trivial.clone(), 0);
        nodes.push(Node { set: trivial, elems: vec![0], gens: vec![] });

        // One generator per distinct cyclic subgroup.
        let mut cyclic_gens: Vec<u32> = Vec::new();
        for x in 1..n {
            let mut set = SubgroupSet::trivial(n);
            let mut elems = vec![0u32];
            let mut y = x;
            while y != 0 {
                set.insert(y);
                elems.push(y as u32);
                y = group.mul(y, x);
            }
            if !index.contains_key(&set) {
                index.insert(set.clone(), nodes.len());
                nodes.push(Node { set, elems, gens: vec![x as u32] });
                cyclic_gens.push(x as u32);
            }
        }

        let mut i = 0;
        while i < nodes.len() {
            for &c in &cyclic_gens {
                let node = &nodes[i];
                if node.set.contains(c as usize) {
                    continue;
                }
                let joined = join_with(group, &node.set, &node.elems, &node.gens, c);
                if !index.contains_key(&joined) {
                    let mut gens = node.gens.clone();
                    gens.push(c);
                    let elems = joined.iter().map(|e| e as u32).collect();
                    index.insert(joined.clone(), nodes.len());
                    nodes.push(Node { set: joined, elems, gens });
                }
            }
            i += 1;
        }

        Ok(Lattice { group, subgroups: nodes.into_iter().map(|nd| nd.set).collect(), index })
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn subgroups(&self) -> &[SubgroupSet] {
        &self.subgroups
    }

    pub fn into_subgroups(self) -> Vec<SubgroupSet> {
        self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn contains(&self, s: &SubgroupSet) -> bool {
        self.index.contains_key(s)
    }

    pub fn of_order(&self, order: usize) -> impl Iterator<Item = &SubgroupSet> + '_ {
        self.subgroups.iter().filter(move |s| s.len() == order)
    }

    pub fn normal_subgroups(&self) -> Vec<&SubgroupSet> {
        self.subgroups.iter().filter(|h| is_normal(self.group, h)).collect()
    }

    pub fn summary(&self) -> LatticeSummary {
        let mut by_order: BTreeMap<usize, Count> = BTreeMap::new();
        for s in &self.subgroups {
            *by_order.entry(s.len()).or_default() += 1;
        }
        let sylow_counts = factorize(self.group.order() as u64)
            .into_iter()
            .map(|(p, a)| {
                let full = p.pow(a) as usize;
                (p, by_order.get(&full).copied().unwrap_or(0))
            })
            .collect();
        LatticeSummary { total: self.subgroups.len() as Count, by_order, sylow_counts }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSummary {
    pub total: Count,
    pub by_order: BTreeMap<usize, Count>,
    /// Number of Sylow subgroups for each prime dividing the order.
    pub sylow_counts: BTreeMap<u64, Count>,
}

pub fn all_subgroups(g: &Group) -> Result<Vec<SubgroupSet>> {
    Ok(Lattice::new(g)?.into_subgroups())
}

pub fn count_subgroups(g: &Group) -> Result<Count> {
    Ok(Lattice::new(g)?.len() as Count)
}

pub fn summarize(g: &Group) -> Result<LatticeSummary> {
    Ok(Lattice::new(g)?.summary())
}

/// `|Sub(G x H)| = |Sub G| |Sub H|` for coprime orders, without building the product.
pub fn count_product_coprime(g: &Group, h: &Group) -> Result<Count> {
    if gcd(g.order(), h.order()) != 1 {
        return Err(Error::Precondition(format!("gcd({}, {}) != 1", g.order(), h.order())));
    }
    Ok(count_subgroups(g)? * count_subgroups(h)?)
}

/// `g H g^-1 = H` for every `g`; checking a generating set of `G` suffices.
pub fn is_normal(g: &Group, h: &SubgroupSet) -> bool {
    g.generators().iter().all(|&x| h.iter().all(|y| h.contains(g.conjugate(x, y))))
}

/// Every Sylow subgroup is normal. A Sylow `p`-subgroup is unique exactly
/// when the `p`-elements number `p^a`, which avoids a lattice enumeration.
pub fn is_nilpotent(g: &Group) -> bool {
    if g.is_abelian() {
        return true;
    }
    let orders = g.element_orders();
    factorize(g.order() as u64).into_iter().all(|(p, a)| {
        let p_elements = orders.iter().filter(|&&o| factorize(o as u64).iter().all(|&(q, _)| q == p)).count();
        p_elements == p.pow(a) as usize
    })
}

/// `G = N x M` for normal subgroups of coprime orders `|N| |M| = |G|`.
pub fn is_coprime_decomposable(g: &Group) -> Result<bool> {
    if factorize(g.order() as u64).len() < 2 {
        return Ok(false);
    }
    let lat = Lattice::new(g)?;
    let normal = lat.normal_subgroups();
    let n = g.order();
    Ok(normal.iter().any(|a| {
        let (la, ok) = (a.len(), a.len() > 1 && a.len() < n);
        ok && gcd(la, n / la) == 1 && normal.iter().any(|b| b.len() == n / la)
    }))
}

/// Splits a subgroup `K <= G x H` into its projections `(K_G, K_H)` when
/// `gcd(|G|, |H|) = 1`, and confirms `K = K_G x K_H`.
pub fn split_coprime_subgroup(g: &Group, h: &Group, k: &SubgroupSet) -> Result<(SubgroupSet, SubgroupSet)> {
    let (m, l) = (g.order(), h.order());
    if gcd(m, l) != 1 {
        return Err(Error::Precondition(format!("gcd({m}, {l}) != 1")));
    }
    if k.parent_order() != m * l {
        return Err(Error::Precondition("subgroup does not live in G x H".into()));
    }
    let mut kg = SubgroupSet::empty(m);
    let mut kh = SubgroupSet::empty(l);
    for e in k.iter() {
        kg.insert(e / l);
        kh.insert(e % l);
    }
    let product_size = kg.len() * kh.len();
    if product_size != k.len() || !kg.iter().all(|a| kh.iter().all(|b| k.contains(a * l + b))) {
        return Err(Error::Arithmetic("subgroup is not the product of its projections".into()));
    }
    Ok((kg, kh))
}
