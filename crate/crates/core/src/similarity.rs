//! Similarity classes of abelian groups with a prescribed subgroup count.
//!
//! A cyclic `p`-component of exponent `a` contributes `a + 1` subgroups
//! whatever `p` is, so such components are kept symbolic ("free"). A
//! non-cyclic component's count depends on its prime, so it is pinned to one.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::abelian::{count_p_component, min_noncyclic_pgroup_count};
use crate::arith::{next_prime, primes_up_to};
use crate::{AbelianShape, Count, Error, Result};

/// Number of abelian similarity classes with `k` subgroups, `k = 1..=22`.
pub const EXPECTED_ABELIAN_CLASS_COUNTS: [usize; 22] =
    [1, 1, 1, 2, 2, 3, 1, 5, 2, 5, 2, 5, 1, 6, 4, 9, 2, 7, 1, 11, 2, 6];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SimilarityClass {
    free_cyclic: Vec<u32>,
    pinned: Vec<(u64, Vec<u32>)>,
}

impl SimilarityClass {
    pub fn new(mut free_cyclic: Vec<u32>, mut pinned: Vec<(u64, Vec<u32>)>) -> Result<Self> {
        if free_cyclic.contains(&0) {
            return Err(Error::Domain("free cyclic exponents must be positive".into()));
        }
        free_cyclic.sort_unstable_by(|a, b| b.cmp(a));
        for (p, parts) in &mut pinned {
            if parts.len() < 2 || parts.contains(&0) {
                return Err(Error::Domain(format!("pinned component at {p} must be non-cyclic")));
            }
            parts.sort_unstable_by(|a, b| b.cmp(a));
        }
        pinned.sort();
        if pinned.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Domain("pinned primes must be distinct".into()));
        }
        Ok(Self { free_cyclic, pinned })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free_cyclic(&self) -> &[u32] {
        &self.free_cyclic
    }

    pub fn pinned(&self) -> &[(u64, Vec<u32>)] {
        &self.pinned
    }

    pub fn subgroup_count(&self) -> Result<Count> {
        let free: Count = self.free_cyclic.iter().map(|&a| a as Count + 1).product();
        self.pinned.iter().try_fold(free, |acc, (p, parts)| {
            let c: Count = count_p_component(*p, parts)?;
            acc.checked_mul(c).ok_or_else(|| Error::Arithmetic("count overflow".into()))
        })
    }

    /// Assigns the free exponents, in order, to the given primes.
    pub fn instantiate(&self, free_primes: &[u64]) -> Result<AbelianShape> {
        if free_primes.len() != self.free_cyclic.len() {
            return Err(Error::Precondition(format!(
                "{} free components but {} primes",
                self.free_cyclic.len(),
                free_primes.len()
            )));
        }
        let pinned = self.pinned.iter().cloned();
        let free = free_primes.iter().zip(&self.free_cyclic).map(|(&p, &a)| (p, vec![a]));
        AbelianShape::new(pinned.chain(free))
    }

    /// Free primes: the smallest primes not used by a pinned component,
    /// skipping the first `skip` of them.
    pub fn admissible_primes(&self, skip: usize) -> Vec<u64> {
        let mut out = Vec::new();
        let mut p = 1;
        let mut skipped = 0;
        while out.len() < self.free_cyclic.len() {
            p = next_prime(p);
            if self.pinned.iter().any(|(q, _)| *q == p) {
                continue;
            }
            if skipped < skip {
                skipped += 1;
                continue;
            }
            out.push(p);
        }
        out
    }
}

const FREE_LETTERS: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];

fn subscript(s: &str) -> String {
    if s.chars().count() == 1 {
        format!("Z_{s}")
    } else {
        format!("Z_{{{s}}}")
    }
}

/// Pinned components first with concrete moduli, then one cyclic factor for
/// the free part written in the free primes `p, q, r, s`; `{e}` if trivial.
impl fmt::Display for SimilarityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors: Vec<String> = Vec::new();
        for (p, parts) in &self.pinned {
            for &e in parts {
                factors.push(subscript(&p.pow(e).to_string()));
            }
        }
        if !self.free_cyclic.is_empty() {
            let word: Vec<String> = self
                .free_cyclic
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    let letter = FREE_LETTERS.get(i).map_or_else(|| format!("p{i}"), |l| l.to_string());
                    if a == 1 {
                        letter
                    } else {
                        format!("{letter}^{}", if a < 10 { a.to_string() } else { format!("{{{a}}}") })
                    }
                })
                .collect();
            factors.push(subscript(&word.join(" ")));
        }
        if factors.is_empty() {
            return f.write_str("{e}");
        }
        f.write_str(&factors.join(" x "))
    }
}

pub fn render_class(c: &SimilarityClass) -> String {
    c.to_string()
}

/// Partitions obtained by deleting one removable box.
fn box_removals(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..parts.len() {
        if i + 1 == parts.len() || parts[i + 1] < parts[i] {
            let mut q = parts.to_vec();
            q[i] -= 1;
            if q[i] == 0 {
                q.pop();
            }
            out.push(q);
        }
    }
    out
}

/// Partitions obtained by adding one box.
fn box_additions(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..parts.len() {
        if i == 0 || parts[i - 1] > parts[i] {
            let mut q = parts.to_vec();
            q[i] += 1;
            out.push(q);
        }
    }
    let mut q = parts.to_vec();
    q.push(1);
    out.push(q);
    out
}

/// Every non-cyclic abelian `p`-group, over all primes `p`, with exactly `f`
/// subgroups.
///
/// `Z_p x Z_p` has `p + 3` subgroups, so `p <= f - 3`. Growing a partition by
/// one box yields a group containing the old one properly, hence strictly
/// more subgroups; the search over each prime is a walk up Young's lattice
/// that stops once the count reaches `f`.
pub fn pinned_components_with_count(f: Count) -> Result<Vec<(u64, Vec<u32>)>> {
    let mut out = Vec::new();
    if f < 5 {
        return Ok(out);
    }
    for p in primes_up_to(f - 3) {
        // Known counts; `None` marks shapes already past `f`.
        let mut seen: HashMap<Vec<u32>, Option<Count>> = HashMap::new();
        let mut frontier = vec![vec![1u32, 1]];
        while !frontier.is_empty() {
            let mut next = BTreeSet::new();
            for parts in frontier {
                let a: u32 = parts.iter().sum();
                let parents_ok = box_removals(&parts).iter().all(|q| match q.len() {
                    0 | 1 => true,
                    _ => matches!(seen.get(q), Some(Some(c)) if *c < f),
                });
                let count = if parents_ok && min_noncyclic_pgroup_count(p, a)? <= f {
                    let c: Count = count_p_component(p, &parts)?;
                    (c <= f).then_some(c)
                } else {
                    None
                };
                seen.insert(parts.clone(), count);
                if let Some(c) = count {
                    if c == f {
                        out.push((p, parts.clone()));
                    } else {
                        next.extend(box_additions(&parts));
                    }
                }
            }
            frontier = next.into_iter().filter(|q| !seen.contains_key(q)).collect();
        }
    }
    Ok(out)
}

/// Non-increasing factorizations of `k` into factors `>= 2`.
fn factorizations(k: Count) -> Vec<Vec<Count>> {
    fn go(k: Count, max: Count, cur: &mut Vec<Count>, out: &mut Vec<Vec<Count>>) {
        if k == 1 {
            out.push(cur.clone());
            return;
        }
        for f in (2..=max.min(k)).rev() {
            if k.is_multiple_of(f) {
                cur.push(f);
                go(k / f, f, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone)]
enum Slot {
    Free(u32),
    Pinned(u64, Vec<u32>),
}

/// Every similarity class of abelian groups with exactly `k` subgroups, sorted.
pub fn enumerate_abelian_classes(k: Count) -> Result<Vec<SimilarityClass>> {
    if k == 0 {
        return Err(Error::Domain("subgroup count must be positive".into()));
    }
    if k > 30 {
        return Err(Error::Window(format!("k = {k} exceeds the search window 30")));
    }
    let mut options: HashMap<Count, Vec<Slot>> = HashMap::new();
    let mut classes = BTreeSet::new();
    for factors in factorizations(k) {
        for &f in &factors {
            if let std::collections::hash_map::Entry::Vacant(e) = options.entry(f) {
                let mut slots = vec![Slot::Free(f as u32 - 1)];
                for (p, parts) in pinned_components_with_count(f)? {
                    slots.push(Slot::Pinned(p, parts));
                }
                e.insert(slots);
            }
        }
        let mut choice = vec![0usize; factors.len()];
        'outer: loop {
            let mut free = Vec::new();
            let mut pinned: Vec<(u64, Vec<u32>)> = Vec::new();
            for (f, &c) in factors.iter().zip(&choice) {
                match &options[f][c] {
                    Slot::Free(a) => free.push(*a),
                    Slot::Pinned(p, parts) => pinned.push((*p, parts.clone())),
                }
            }
            if let Ok(class) = SimilarityClass::new(free, pinned) {
                classes.insert(class);
            }
            for i in (0..factors.len()).rev() {
                choice[i] += 1;
                if choice[i] < options[&factors[i]].len() {
                    continue 'outer;
                }
                choice[i] = 0;
            }
            break;
        }
    }
    Ok(classes.into_iter().collect())
}

pub fn abelian_class_count(k: Count) -> Result<usize> {
    Ok(enumerate_abelian_classes(k)?.len())
}
