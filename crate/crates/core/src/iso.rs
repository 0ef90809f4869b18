//! Isomorphism testing and enumeration of all groups of very small order.

use crate::arith::divisors;
use crate::group::check_cap;
use crate::{Error, Group, Result};

/// Largest order accepted by [`isomorphic`].
pub const MAX_ISO_ORDER: usize = 64;

/// Largest order accepted by [`enumerate_groups_of_order`].
pub const MAX_ENUM_ORDER: usize = 12;

fn order_profile(g: &Group) -> Vec<usize> {
    let mut p = g.element_orders();
    p.sort_unstable();
    p
}

/// Decides `G ~= H` by searching for images of a generating set of `G`.
///
/// Generator images must have matching element orders, and a candidate
/// assignment is kept only while it extends to a homomorphism on the
/// subgroup generated so far.
pub fn isomorphic(g: &Group, h: &Group) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    if g.order() > MAX_ISO_ORDER {
        return Err(Error::SizeCap { order: g.order(), cap: MAX_ISO_ORDER });
    }
    if g.is_abelian() != h.is_abelian() || order_profile(g) != order_profile(h) {
        return Ok(false);
    }
    let gens = g.generators().to_vec();
    let h_orders = h.element_orders();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let o = g.element_order(x);
            (0..h.order()).filter(|&y| h_orders[y] == o).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(extend(g, h, &gens, &candidates, &mut images))
}

fn extend(g: &Group, h: &Group, gens: &[usize], cands: &[Vec<usize>], images: &mut Vec<usize>) -> bool {
    let i = images.len();
    if i == gens.len() {
        return true;
    }
    for &y in &cands[i] {
        images.push(y);
        if partial_hom(g, h, &gens[..=i], images) && extend(g, h, gens, cands, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// Whether `gens[j] -> images[j]` extends to an injective homomorphism on
/// `<gens>`. A map with `phi(x s) = phi(x) phi(s)` for every element `x` and
/// generator `s` is a homomorphism.
fn partial_hom(g: &Group, h: &Group, gens: &[usize], images: &[usize]) -> bool {
    let mut phi = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    phi[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    let mut qi = 0;
    while qi < queue.len() {
        let x = queue[qi];
        qi += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let xs = g.mul(x, s);
            let want = h.mul(phi[x], t);
            if phi[xs] == usize::MAX {
                if used[want] {
                    return false;
                }
                phi[xs] = want;
                used[want] = true;
                queue.push(xs);
            } else if phi[xs] != want {
                return false;
            }
        }
    }
    true
}

/// One representative of every isomorphism type of group of order `n`.
///
/// Tables are completed by backtracking with element `1` of order `m` for
/// each divisor `m` of `n`. Elements are labelled `c m + j = g_c 1^j` for
/// left-coset representatives `g_c`, which fixes every product with a power
/// of `1`; forced entries are propagated through associativity and the
/// survivors are deduplicated up to isomorphism.
pub fn enumerate_groups_of_order(n: usize) -> Result<Vec<Group>> {
    if n == 0 {
        return Err(Error::Domain("order 0".into()));
    }
    if n > MAX_ENUM_ORDER {
        return Err(Error::SizeCap { order: n, cap: MAX_ENUM_ORDER });
    }
    check_cap(n)?;
    let mut found: Vec<Group> = Vec::new();
    let mut ms: Vec<usize> = divisors(n as u64).into_iter().map(|d| d as usize).collect();
    ms.reverse();
    for m in ms {
        if m == 1 && n > 1 {
            continue;
        }
        let mut search = TableSearch::new(n, m);
        search.run(&mut |table| {
            let g = Group::from_table(format!("order {n} #{}", found.len() + 1), n, table.to_vec())
                .expect("search only completes valid group tables");
            // Groups with a larger element order were found at an earlier m.
            if g.element_orders().into_iter().max() != Some(m) {
                return;
            }
            if !found.iter().any(|f| isomorphic(f, &g).expect("within iso cap")) {
                found.push(g);
            }
        });
    }
    Ok(found)
}

const EMPTY: u32 = u32::MAX;

struct TableSearch {
    n: usize,
    m: usize,
    table: Vec<u32>,
    /// `pos[x * n + v]` is the column holding `v` in row `x`.
    pos: Vec<u32>,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
    trail: Vec<usize>,
}

impl TableSearch {
    fn new(n: usize, m: usize) -> Self {
        let mut s = TableSearch {
            n,
            m,
            table: vec![EMPTY; n * n],
            pos: vec![EMPTY; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
            trail: Vec::new(),
        };
        for x in 0..n {
            let (c, j) = (x / m, x % m);
            for jj in 0..m {
                s.set(x, jj, (c * m + (j + jj) % m) as u32);
            }
            s.set(0, x, x as u32);
        }
        s
    }

    /// Records `a * b = v` if consistent with the Latin constraints.
    fn set(&mut self, a: usize, b: usize, v: u32) -> bool {
        let cell = a * self.n + b;
        if self.table[cell] != EMPTY {
            return self.table[cell] == v;
        }
        let bit = 1u64 << v;
        if self.row_used[a] & bit != 0 || self.col_used[b] & bit != 0 {
            return false;
        }
        self.table[cell] = v;
        self.pos[a * self.n + v as usize] = b as u32;
        self.row_used[a] |= bit;
        self.col_used[b] |= bit;
        self.trail.push(cell);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let cell = self.trail.pop().expect("trail above mark");
            let (a, b) = (cell / self.n, cell % self.n);
            let v = self.table[cell];
            let bit = 1u64 << v;
            self.row_used[a] &= !bit;
            self.col_used[b] &= !bit;
            self.pos[a * self.n + v as usize] = EMPTY;
            self.table[cell] = EMPTY;
        }
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> Option<usize> {
        let v = self.table[a * self.n + b];
        (v != EMPTY).then_some(v as usize)
    }

    #[inline]
    fn column_of(&self, x: usize, v: usize) -> Option<usize> {
        let c = self.pos[x * self.n + v];
        (c != EMPTY).then_some(c as usize)
    }

    /// `l = r` where each side is a cell that may still be empty; a known
    /// side forces the other.
    fn unify(&mut self, l: (usize, usize), r: (usize, usize)) -> bool {
        match (self.get(l.0, l.1), self.get(r.0, r.1)) {
            (Some(x), Some(y)) => x == y,
            (Some(x), None) => self.set(r.0, r.1, x as u32),
            (None, Some(y)) => self.set(l.0, l.1, y as u32),
            (None, None) => true,
        }
    }

    /// Enforces `(x y) z = x (y z)` around every cell assigned since `from`.
    /// A cell `a b = v` can sit in four places of such an identity; once all
    /// but one of the cells involved are known, the last one is forced.
    fn propagate(&mut self, from: usize) -> bool {
        let n = self.n;
        let mut i = from;
        while i < self.trail.len() {
            let cell = self.trail[i];
            i += 1;
            let (a, b) = (cell / n, cell % n);
            let v = self.table[cell] as usize;
            for x in 0..n {
                // (a b) x = a (b x)
                if let Some(w) = self.get(b, x) {
                    if !self.unify((v, x), (a, w)) {
                        return false;
                    }
                }
                // (x a) b = x (a b)
                if let Some(y) = self.get(x, a) {
                    if !self.unify((y, b), (x, v)) {
                        return false;
                    }
                }
                // x y = a gives x (y b) = a b
                if let Some(y) = self.column_of(x, a) {
                    if let Some(w) = self.get(y, b) {
                        if !self.unify((x, w), (a, b)) {
                            return false;
                        }
                    }
                }
                // x z = b gives (a x) z = a b
                if let Some(z) = self.column_of(x, b) {
                    if let Some(u) = self.get(a, x) {
                        if !self.unify((u, z), (a, b)) {
                            return false;
                        }
                    }
                }
            }
        }
        self.orders_bounded()
    }

    /// No element may have order above `m`.
    fn orders_bounded(&self) -> bool {
        for x in 1..self.n {
            let (mut p, mut k) = (x, 1);
            while let Some(z) = self.get(p, x) {
                k += 1;
                if z == 0 {
                    break;
                }
                if k >= self.m {
                    return false;
                }
                p = z;
            }
        }
        true
    }

    fn next_cell(&self) -> Option<(usize, usize)> {
        let n = self.n;
        let mut best: Option<((usize, usize), u32)> = None;
        for a in 1..n {
            for b in self.m..n {
                if self.table[a * n + b] == EMPTY {
                    let free = (!(self.row_used[a] | self.col_used[b]) & ((1u64 << n) - 1)).count_ones();
                    if best.is_none_or(|(_, f)| free < f) {
                        best = Some(((a, b), free));
                    }
                }
            }
        }
        best.map(|(c, _)| c)
    }

    fn run(&mut self, emit: &mut dyn FnMut(&[u32])) {
        if self.propagate(0) {
            self.search(emit);
        }
    }

    fn search(&mut self, emit: &mut dyn FnMut(&[u32])) {
        let Some((a, b)) = self.next_cell() else {
            emit(&self.table);
            return;
        };
        let n = self.n;
        let free = !(self.row_used[a] | self.col_used[b]) & ((1u64 << n) - 1);
        for v in 0..n as u32 {
            if free >> v & 1 == 0 {
                continue;
            }
            let mark = self.trail.len();
            if self.set(a, b, v) && self.propagate(mark) {
                self.search(emit);
            }
            self.undo_to(mark);
        }
    }
}

/// Known numbers of isomorphism types for orders `1..=12`.
pub const GROUPS_OF_ORDER: [usize; 12] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5];
