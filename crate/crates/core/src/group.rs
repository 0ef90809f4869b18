//! Concrete finite groups as dense multiplication tables.
//!
//! Element `0` is always the identity. Every constructor validates the table
//! it produces (Latin rows and columns, two-sided identity and inverses,
//! associativity) before handing out a [`Group`].

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use num_integer::gcd;

use crate::arith::{pow_mod, FactoredOrder};
use crate::lattice::SubgroupSet;
use crate::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 2048;

static ORDER_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ORDER_CAP);

/// Largest group order any constructor or enumeration will accept.
pub fn order_cap() -> usize {
    ORDER_CAP.load(Ordering::Relaxed)
}

pub fn set_order_cap(cap: usize) {
    ORDER_CAP.store(cap.max(1), Ordering::Relaxed);
}

pub(crate) fn check_cap(order: usize) -> Result<()> {
    let cap = order_cap();
    if order > cap {
        Err(Error::SizeCap { order, cap })
    } else {
        Ok(())
    }
}

#[derive(Clone)]
pub struct Group {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    label: String,
    gens: OnceLock<Vec<usize>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group").field("label", &self.label).field("order", &self.order).finish()
    }
}

impl Group {
    /// Builds a group from a row-major table, validating every group axiom.
    pub fn from_table(label: impl Into<String>, order: usize, table: Vec<u32>) -> Result<Group> {
        let label = label.into();
        let bad = |msg: String| Error::InvalidPresentation(format!("{label}: {msg}"));
        if order == 0 {
            return Err(bad("empty table".into()));
        }
        check_cap(order)?;
        if table.len() != order * order {
            return Err(bad(format!("table has {} cells, expected {}", table.len(), order * order)));
        }
        if table.iter().any(|&v| v as usize >= order) {
            return Err(bad("table entry out of range".into()));
        }
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(bad("element 0 is not a two-sided identity".into()));
            }
        }
        let mut stamp = vec![usize::MAX; order];
        for r in 0..order {
            for c in 0..order {
                let v = table[r * order + c] as usize;
                if stamp[v] == r {
                    return Err(bad(format!("row {r} repeats {v}")));
                }
                stamp[v] = r;
            }
        }
        stamp.fill(usize::MAX);
        for c in 0..order {
            for r in 0..order {
                let v = table[r * order + c] as usize;
                if stamp[v] == c {
                    return Err(bad(format!("column {c} repeats {v}")));
                }
                stamp[v] = c;
            }
        }
        let mut inv = vec![0u32; order];
        for x in 0..order {
            let y = (0..order).find(|&y| table[x * order + y] == 0).expect("Latin rows contain the identity");
            if table[y * order + x] != 0 {
                return Err(bad(format!("element {x} has no two-sided inverse")));
            }
            inv[x] = y as u32;
        }
        let group = Group { order, table, inv, label, gens: OnceLock::new() };
        if !group.passes_light_test() {
            return Err(Error::InvalidPresentation(format!("{}: multiplication is not associative", group.label)));
        }
        Ok(group)
    }

    pub fn trivial() -> Group {
        Group::cyclic(1).expect("trivial group is always within the cap")
    }

    /// Cyclic group of order `n` with `mul(i, j) = (i + j) mod n`.
    pub fn cyclic(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::Domain("cyclic group of order 0".into()));
        }
        check_cap(n)?;
        let table = (0..n * n).map(|c| ((c / n + c % n) % n) as u32).collect();
        Group::from_table(format!("Z({n})"), n, table)
    }

    /// Direct product; the pair `(g, h)` has index `g * |H| + h`.
    pub fn direct_product(&self, other: &Group) -> Result<Group> {
        let (m, k) = (self.order, other.order);
        let n = m.checked_mul(k).ok_or(Error::SizeCap { order: usize::MAX, cap: order_cap() })?;
        check_cap(n)?;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            let (ga, ha) = (a / k, a % k);
            for b in 0..n {
                let (gb, hb) = (b / k, b % k);
                table.push((self.mul(ga, gb) * k + other.mul(ha, hb)) as u32);
            }
        }
        Group::from_table(format!("{} x {}", self.label, other.label), n, table)
    }

    /// `<x, y | x^n = e, y^m = x^t, y x y^-1 = x^k>` realized on pairs `x^i y^j`.
    pub fn metacyclic(n: usize, m: usize, k: usize, t: usize) -> Result<Group> {
        let label = format!("Meta({n},{m},{k},{t})");
        let bad = |msg: &str| Err(Error::InvalidPresentation(format!("{label}: {msg}")));
        if n == 0 || m == 0 {
            return bad("n and m must be positive");
        }
        if k >= n.max(1) && !(n == 1 && k == 0) {
            return bad("k must satisfy 0 <= k < n");
        }
        if gcd(k, n) != 1 {
            return bad("gcd(k, n) must be 1");
        }
        if t >= n {
            return bad("t must satisfy 0 <= t < n");
        }
        let (nn, kk) = (n as u64, k as u64);
        if pow_mod(kk, m as u64, nn) != 1 % nn {
            return bad("k^m must be 1 mod n");
        }
        if !(t as u64 * (kk + nn - 1)).is_multiple_of(nn) {
            return bad("t(k - 1) must be 0 mod n");
        }
        let order = n.checked_mul(m).ok_or(Error::SizeCap { order: usize::MAX, cap: order_cap() })?;
        check_cap(order)?;
        let kpow: Vec<usize> = (0..m).map(|j| pow_mod(kk, j as u64, nn) as usize).collect();
        let idx = |i: usize, j: usize| i * m + j;
        let mut table = vec![0u32; order * order];
        for i in 0..n {
            for j in 0..m {
                let a = idx(i, j);
                for i2 in 0..n {
                    for j2 in 0..m {
                        let carry = (j + j2) / m;
                        let ni = (i + kpow[j] * i2 + t * carry) % n;
                        table[a * order + idx(i2, j2)] = idx(ni, (j + j2) % m) as u32;
                    }
                }
            }
        }
        let group = Group::from_table(label, order, table)?;
        if group.element_order(idx(1 % n, 0)) != n {
            return Err(Error::InvalidPresentation(format!("{}: x does not have order {n}", group.label)));
        }
        Ok(group)
    }

    /// Group generated by permutations of `0..degree` under composition.
    pub fn from_permutations(degree: usize, generators: &[Permutation]) -> Result<Group> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::InvalidGenerator(format!(
                    "permutation of degree {} in a degree-{degree} group",
                    g.degree()
                )));
            }
        }
        from_closure(format!("Perm({degree})"), Permutation::identity(degree), generators.to_vec(), |a, b| a.then(b))
    }

    /// Group generated by invertible `dim x dim` matrices over `Z/p`.
    pub fn from_matrices(p: u64, dim: usize, generators: &[Vec<Vec<u64>>]) -> Result<Group> {
        if !crate::arith::is_prime(p) {
            return Err(Error::InvalidGenerator(format!("{p} is not prime")));
        }
        if dim == 0 {
            return Err(Error::InvalidGenerator("matrix dimension 0".into()));
        }
        let mut flat = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != dim || g.iter().any(|row| row.len() != dim) {
                return Err(Error::InvalidGenerator(format!("generator is not {dim}x{dim}")));
            }
            let m: Vec<u64> = g.iter().flatten().map(|&v| v % p).collect();
            if det_mod(&m, dim, p) == 0 {
                return Err(Error::InvalidGenerator(format!("singular matrix {g:?} mod {p}")));
            }
            flat.push(m);
        }
        let mut id = vec![0u64; dim * dim];
        for i in 0..dim {
            id[i * dim + i] = 1 % p;
        }
        from_closure(format!("Mat({dim},{p})"), id, flat, |a, b| {
            let mut out = vec![0u64; dim * dim];
            for i in 0..dim {
                for k in 0..dim {
                    let aik = a[i * dim + k];
                    if aik == 0 {
                        continue;
                    }
                    for j in 0..dim {
                        out[i * dim + j] = (out[i * dim + j] + aik * b[k * dim + j]) % p;
                    }
                }
            }
            out
        })
    }

    /// Re-indexes a subgroup as a standalone group (identity stays at 0).
    pub fn subgroup_as_group(&self, h: &SubgroupSet) -> Result<Group> {
        let elems: Vec<usize> = h.iter().collect();
        let mut pos = vec![u32::MAX; self.order];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i as u32;
        }
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &elems {
            for &b in &elems {
                let c = pos[self.mul(a, b)];
                if c == u32::MAX {
                    return Err(Error::Precondition("set is not closed under multiplication".into()));
                }
                table.push(c);
            }
        }
        Group::from_table(format!("{} subgroup of order {n}", self.label), n, table)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Group {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn factored_order(&self) -> FactoredOrder {
        FactoredOrder::of(self.order as u64)
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, x: usize, mut k: u64) -> usize {
        let mut acc = 0;
        let mut b = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        acc
    }

    /// Least `k >= 1` with `x^k = e`.
    pub fn element_order(&self, x: usize) -> usize {
        assert!(x < self.order, "element {x} out of range for order {}", self.order);
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|x| self.element_order(x)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> SubgroupSet {
        let gens = self.generators();
        let mut z = SubgroupSet::empty(self.order);
        for x in 0..self.order {
            if gens.iter().all(|&g| self.mul(g, x) == self.mul(x, g)) {
                z.insert(x);
            }
        }
        z
    }

    /// A generating set, chosen greedily: each element not yet reached joins it.
    pub fn generators(&self) -> &[usize] {
        self.gens.get_or_init(|| {
            let mut gens = Vec::new();
            let mut reached = vec![false; self.order];
            reached[0] = true;
            let mut list = vec![0usize];
            // Elements are scanned by decreasing order so few generators suffice.
            let mut cand: Vec<usize> = (1..self.order).collect();
            let orders: Vec<usize> = (0..self.order).map(|x| self.element_order_raw(x)).collect();
            cand.sort_by_key(|&x| std::cmp::Reverse(orders[x]));
            for x in cand {
                if reached[x] {
                    continue;
                }
                gens.push(x);
                let mut i = 0;
                while i < list.len() {
                    let y = list[i];
                    i += 1;
                    for &s in &gens {
                        let z = self.mul(y, s);
                        if !reached[z] {
                            reached[z] = true;
                            list.push(z);
                        }
                    }
                }
            }
            gens
        })
    }

    // Bounded so that a non-associative table cannot loop forever.
    fn element_order_raw(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 && k <= self.order {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Light's test over a generating set: the elements `a` with
    /// `(x a) y = x (a y)` for all `x, y` are closed under products, so
    /// checking the generators decides associativity of the whole table.
    fn passes_light_test(&self) -> bool {
        let n = self.order;
        self.generators().iter().all(|&a| {
            (0..n).all(|x| {
                let xa = self.mul(x, a);
                (0..n).all(|y| self.mul(xa, y) == self.mul(x, self.mul(a, y)))
            })
        })
    }

    /// Checks `(x y) z = x (y z)` over all triples.
    pub fn is_associative_exhaustive(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    /// Structural sanity test used by the property suites.
    pub fn satisfies_axioms(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| self.mul(0, x) == x && self.mul(x, 0) == x)
            && (0..n).all(|x| self.mul(x, self.inv(x)) == 0 && self.mul(self.inv(x), x) == 0)
            && self.is_associative_exhaustive()
    }
}

fn from_closure<T, F>(label: String, identity: T, generators: Vec<T>, mul: F) -> Result<Group>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let cap = order_cap();
    let mut index: HashMap<T, u32> = HashMap::new();
    let mut elems = vec![identity.clone()];
    index.insert(identity, 0);
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i].clone();
        i += 1;
        for g in &generators {
            let y = mul(&x, g);
            if !index.contains_key(&y) {
                if elems.len() == cap {
                    return Err(Error::SizeCap { order: cap + 1, cap });
                }
                index.insert(y.clone(), elems.len() as u32);
                elems.push(y);
            }
        }
    }
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            table.push(index[&mul(a, b)]);
        }
    }
    Group::from_table(label, n, table)
}

fn det_mod(m: &[u64], dim: usize, p: u64) -> u64 {
    let mut a: Vec<u64> = m.to_vec();
    let mut det = 1u64;
    for col in 0..dim {
        let Some(piv) = (col..dim).find(|&r| !a[r * dim + col].is_multiple_of(p)) else {
            return 0;
        };
        if piv != col {
            for j in 0..dim {
                a.swap(piv * dim + j, col * dim + j);
            }
            det = (p - det % p) % p;
        }
        let pv = a[col * dim + col];
        det = det * pv % p;
        let pinv = pow_mod(pv, p - 2, p);
        for r in col + 1..dim {
            let f = a[r * dim + col] * pinv % p;
            for j in col..dim {
                let sub = f * a[col * dim + j] % p;
                a[r * dim + j] = (a[r * dim + j] + p - sub) % p;
            }
        }
    }
    det
}

/// A permutation of `0..degree`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidGenerator(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images.into_iter().map(|i| i as u32).collect()))
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree || touched[a] {
                    return Err(Error::InvalidGenerator(format!("bad cycle {cycle:?}")));
                }
                touched[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        let gens =
            [Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap(), Permutation::from_cycles(3, &[&[0, 1]]).unwrap()];
        Group::from_permutations(3, &gens).unwrap()
    }

    fn q8() -> Group {
        Group::metacyclic(4, 2, 3, 2).unwrap()
    }

    #[test]
    fn cyclic_groups() {
        let z1 = Group::cyclic(1).unwrap();
        assert_eq!(z1.order(), 1);
        let z6 = Group::cyclic(6).unwrap();
        assert_eq!(z6.element_order(1), 6);
        assert_eq!(z6.element_order(0), 1);
        assert!(z6.is_abelian());
        assert!(matches!(Group::cyclic(DEFAULT_ORDER_CAP + 1), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn klein_and_coprime_products() {
        let z2 = Group::cyclic(2).unwrap();
        let v = z2.direct_product(&z2).unwrap();
        assert_eq!(v.order(), 4);
        assert_eq!(v.element_orders().iter().filter(|&&o| o == 2).count(), 3);

        let z15 = Group::cyclic(3).unwrap().direct_product(&Group::cyclic(5).unwrap()).unwrap();
        assert!(z15.element_orders().contains(&15));

        let h = s3();
        let p = Group::trivial().direct_product(&h).unwrap();
        assert_eq!(p.order(), h.order());
        for a in 0..h.order() {
            for b in 0..h.order() {
                assert_eq!(p.mul(a, b), h.mul(a, b));
            }
        }
    }

    #[test]
    fn quaternion_from_metacyclic() {
        let q = q8();
        assert_eq!(q.order(), 8);
        let orders = q.element_orders();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 1);
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 6);
        assert!(!q.is_abelian());
        assert_eq!(q.center().len(), 2);
    }

    #[test]
    fn dihedral_and_frobenius() {
        for n in 3..12 {
            let d = Group::metacyclic(n, 2, n - 1, 0).unwrap();
            assert_eq!(d.order(), 2 * n);
            let involutions = d.element_orders().iter().filter(|&&o| o == 2).count();
            assert_eq!(involutions, if n % 2 == 0 { n + 1 } else { n });
        }
        let ga = Group::metacyclic(5, 4, 2, 0).unwrap();
        assert_eq!(ga.order(), 20);
        assert_eq!(ga.center().len(), 1);
    }

    #[test]
    fn metacyclic_rejects_bad_parameters() {
        // 2^2 = 4 != 1 mod 5
        assert!(matches!(Group::metacyclic(5, 2, 2, 0), Err(Error::InvalidPresentation(_))));
        // gcd(2, 4) != 1
        assert!(Group::metacyclic(4, 2, 2, 0).is_err());
        // t (k - 1) = 1 * 2 != 0 mod 4
        assert!(Group::metacyclic(4, 2, 3, 1).is_err());
        assert!(matches!(Group::metacyclic(64, 64, 63, 0), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn permutation_groups() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.center().len(), 1);

        let a4 = Group::from_permutations(
            4,
            &[
                Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a4.order(), 12);

        let a5 = Group::from_permutations(
            5,
            &[
                Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
                Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a5.order(), 60);
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn matrix_groups() {
        let sl23 = Group::from_matrices(3, 2, &[vec![vec![1, 1], vec![0, 1]], vec![vec![0, 1], vec![2, 0]]]).unwrap();
        assert_eq!(sl23.order(), 24);

        let heis = Group::from_matrices(
            3,
            3,
            &[vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]], vec![vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]]],
        )
        .unwrap();
        assert_eq!(heis.order(), 27);
        assert!((1..27).all(|x| heis.element_order(x) == 3));

        let trivial = Group::from_matrices(2, 1, &[vec![vec![1]]]).unwrap();
        assert_eq!(trivial.order(), 1);

        assert!(matches!(Group::from_matrices(3, 2, &[vec![vec![1, 2], vec![2, 1]]]), Err(Error::InvalidGenerator(_))));
    }

    #[test]
    fn rejects_non_associative_tables() {
        // A Latin square with identity 0 that is a loop but not a group.
        let rows: [[u32; 5]; 5] = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]];
        let table = rows.iter().flatten().copied().collect();
        assert!(matches!(Group::from_table("loop", 5, table), Err(Error::InvalidPresentation(_))));
    }

    #[test]
    fn constructed_groups_satisfy_axioms() {
        for g in [s3(), q8(), Group::metacyclic(9, 3, 4, 0).unwrap(), Group::metacyclic(8, 4, 7, 4).unwrap()] {
            assert!(g.satisfies_axioms(), "{}", g.label());
            for x in 0..g.order() {
                assert_eq!(g.order() % g.element_order(x), 0);
            }
        }
    }
}
