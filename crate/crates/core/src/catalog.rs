//! The non-abelian groups with at most 19 subgroups, as executable
//! constructions, and their brute-force verification.

use std::fmt;

use num_integer::gcd;
use rayon::prelude::*;

use crate::arith::{factorize, is_prime};
use crate::invariants::{check_all, Violation};
use crate::iso::{enumerate_groups_of_order, isomorphic};
use crate::lattice::count_subgroups;
use crate::similarity::{enumerate_abelian_classes, EXPECTED_ABELIAN_CLASS_COUNTS};
use crate::{AbelianShape, Count, Error, Group, GroupExpr, Lattice, Permutation, Result, SimilarityClass};

/// Terms `1..=19` of the number of similarity classes of groups with `k` subgroups.
pub const EXPECTED_SEQUENCE: [usize; 19] = [1, 1, 1, 2, 2, 5, 1, 7, 2, 12, 4, 11, 1, 17, 8, 22, 3, 22, 5];

/// Largest `k` covered by the catalog.
pub const CATALOG_MAX_K: Count = 19;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Expr(GroupExpr),
    /// Generators given as disjoint cycles on `0..degree`.
    Permutations {
        degree: usize,
        generators: Vec<Vec<Vec<usize>>>,
    },
}

impl Recipe {
    pub fn build(&self) -> Result<Group> {
        match self {
            Recipe::Expr(e) => e.eval(),
            Recipe::Permutations { degree, generators } => {
                let perms = generators
                    .iter()
                    .map(|cycles| {
                        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
                        Permutation::from_cycles(*degree, &refs)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Group::from_permutations(*degree, &perms)
            }
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Expr(e) => write!(f, "{e}"),
            Recipe::Permutations { degree, generators } => {
                let gens: Vec<String> = generators
                    .iter()
                    .map(|cycles| {
                        cycles
                            .iter()
                            .map(|c| {
                                let pts: Vec<String> = c.iter().map(usize::to_string).collect();
                                format!("({})", pts.join(" "))
                            })
                            .collect::<String>()
                    })
                    .collect();
                write!(f, "<{}> on {degree} points", gens.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Claimed subgroup count.
    pub k: Count,
    pub recipe: Recipe,
    /// Exponents of cyclic factors `Z(p^e)` at arbitrary primes coprime to the rest.
    pub free_factors: Vec<u32>,
    pub notes: &'static str,
}

fn expr(name: &'static str, k: Count, s: &str, free: &[u32], notes: &'static str) -> CatalogEntry {
    CatalogEntry {
        name,
        k,
        recipe: Recipe::Expr(GroupExpr::parse(s).expect("catalog expressions parse")),
        free_factors: free.to_vec(),
        notes,
    }
}

/// `(Z2 x Z2) : Z9`: the Klein group on points `0..4`, and an element of order
/// 9 that cycles its involutions while running a 9-cycle on `4..13`.
fn klein_by_z9() -> CatalogEntry {
    CatalogEntry {
        name: "(Z2xZ2):Z9",
        k: 15,
        recipe: Recipe::Permutations {
            degree: 13,
            generators: vec![
                vec![vec![0, 1], vec![2, 3]],
                vec![vec![0, 2], vec![1, 3]],
                vec![vec![1, 2, 3], (4..13).collect()],
            ],
        },
        free_factors: vec![],
        notes: "generator of order 9 acts through an order-3 automorphism cycling the involutions",
    }
}

const INV: &str = "action by inversion";
const SMALLEST: &str = "action by the smallest exponent of the required order";

/// Every non-abelian similarity class with at most 19 subgroups.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    vec![
        expr("Q8", 6, "Q(8)", &[], ""),
        expr("S3", 6, "S(3)", &[], ""),
        expr("Dic12", 8, "Dic(12)", &[], ""),
        expr("D10", 8, "D(10)", &[], ""),
        expr("Z7:Z3", 10, "Meta(7,3,2,0)", &[], SMALLEST),
        expr("Z3:Z8", 10, "Meta(3,8,2,0)", &[], INV),
        expr("D8", 10, "D(8)", &[], ""),
        expr("D14", 10, "D(14)", &[], ""),
        expr("M27", 10, "M(3,3)", &[], "x^9 = y^3 = e, y x y^-1 = x^4"),
        expr("Dic20", 10, "Dic(20)", &[], ""),
        expr("A4", 10, "A(4)", &[], ""),
        expr("Q16", 11, "Q(16)", &[], ""),
        expr("M16", 11, "M(2,4)", &[], ""),
        expr("Q8 x Z_p", 12, "Q(8)", &[1], ""),
        expr("S3 x Z_p", 12, "S(3)", &[1], ""),
        expr("Z3:Z16", 12, "Meta(3,16,2,0)", &[], INV),
        expr("Dic28", 12, "Dic(28)", &[], ""),
        expr("Z7:Z9", 12, "Meta(7,9,2,0)", &[], SMALLEST),
        expr("Z5:Z8 (x^-1)", 12, "Meta(5,8,4,0)", &[], "y x y^-1 = x^-1"),
        expr("M32", 14, "M(2,5)", &[], ""),
        expr("S3 x Z3", 14, "S(3) x Z(3)", &[], ""),
        expr("Z3:Z32", 14, "Meta(3,32,2,0)", &[], INV),
        expr("Z5:Z16 (x^-1)", 14, "Meta(5,16,4,0)", &[], "y x y^-1 = x^-1"),
        expr("GA(1,5)", 14, "Meta(5,4,2,0)", &[], "faithful action of Z4 on Z5"),
        expr("Z7:Z8", 14, "Meta(7,8,6,0)", &[], INV),
        expr("D22", 14, "D(22)", &[], ""),
        expr("Z27:Z3", 14, "M(3,4)", &[], "x^27 = y^3 = e, y x y^-1 = x^10"),
        expr("Z7:Z27", 14, "Meta(7,27,2,0)", &[], SMALLEST),
        expr("Z11:Z5", 14, "Meta(11,5,3,0)", &[], SMALLEST),
        expr("Z25:Z5", 14, "Meta(25,5,6,0)", &[], "y x y^-1 = x^6"),
        expr("SL(2,3)", 15, "SL(2,3)", &[], ""),
        expr("SD16", 15, "SD(16)", &[], "x^8 = y^2 = e, y x y^-1 = x^3"),
        expr("Z4:Z4", 15, "Meta(4,4,3,0)", &[], INV),
        klein_by_z9(),
        expr("Dic12 x Z_p", 16, "Dic(12)", &[1], ""),
        expr("D10 x Z_p", 16, "D(10)", &[1], ""),
        expr("D18", 16, "D(18)", &[], ""),
        expr("D12", 16, "D(12)", &[], ""),
        expr("Z5:Z8 (x^3)", 16, "Meta(5,8,3,0)", &[], "y x y^-1 = x^3"),
        expr("Z5:Z32 (x^-1)", 16, "Meta(5,32,4,0)", &[], "y x y^-1 = x^-1"),
        expr("Z3:Z64", 16, "Meta(3,64,2,0)", &[], INV),
        expr("Z7:Z16", 16, "Meta(7,16,6,0)", &[], INV),
        expr("Dic44", 16, "Dic(44)", &[], ""),
        expr("D26", 16, "D(26)", &[], ""),
        expr("Z13:Z3", 16, "Meta(13,3,3,0)", &[], SMALLEST),
        expr("Z7:Z81", 16, "Meta(7,81,2,0)", &[], SMALLEST),
        expr("Z11:Z25", 16, "Meta(11,25,3,0)", &[], SMALLEST),
        expr("Z32:Z2", 17, "M(2,6)", &[], "x^32 = y^2 = e, y x y^-1 = x^17"),
        expr("Q8 x Z_{p^2}", 18, "Q(8)", &[2], ""),
        expr("S3 x Z_{p^2}", 18, "S(3)", &[2], ""),
        expr("Z8.Z4", 18, "Meta(8,4,7,4)", &[], "x^8 = e, x^4 = y^4, y x y^-1 = x^-1"),
        expr("Z3:Z128", 18, "Meta(3,128,2,0)", &[], INV),
        expr(
            "Dic24",
            18,
            "Dic(24)",
            &[],
            "sometimes labelled Dic18, but no dicyclic group has order 18; Dic24 is the dicyclic group with 18 subgroups",
        ),
        expr("Z5:Z16 (x^3)", 18, "Meta(5,16,3,0)", &[], "y x y^-1 = x^3"),
        expr("Z81:Z3", 18, "M(3,5)", &[], SMALLEST),
        expr("Z7:Z243", 18, "Meta(7,243,2,0)", &[], SMALLEST),
        expr("Z49:Z7", 18, "Meta(49,7,8,0)", &[], SMALLEST),
        expr("Z13:Z9", 18, "Meta(13,9,3,0)", &[], "y acts with order 3, the only non-trivial choice up to isomorphism"),
        expr("Dic52", 18, "Dic(52)", &[], ""),
        expr("Z11:Z125", 18, "Meta(11,125,3,0)", &[], SMALLEST),
        expr("Z11:Z8", 18, "Meta(11,8,10,0)", &[], "Aut(Z11) has order 10, so the action is inversion"),
        expr("Z7:Z32", 18, "Meta(7,32,6,0)", &[], INV),
        expr("Z5:Z64", 18, "Meta(5,64,4,0)", &[], "y x y^-1 = x^-1"),
        expr("Z2 x Q8", 19, "Z(2) x Q(8)", &[], "not a coprime product"),
        expr("D16", 19, "D(16)", &[], ""),
        expr("(Z3xZ3):Z3", 19, "Heis(3)", &[], "exponent 3"),
        expr("Dic36", 19, "Dic(36)", &[], "isomorphic to Z9:Z4 with y acting by inversion"),
    ]
}

/// Groups checked alongside the catalog but not part of it.
pub fn spot_check_entries() -> Vec<CatalogEntry> {
    vec![
        expr("A5", 59, "A(5)", &[], "non-solvable, with a prime number of subgroups"),
        expr("Z9:Z4", 19, "Meta(9,4,8,0)", &[], "solvable, not a p-group, with a prime number of subgroups"),
    ]
}

pub fn nonabelian_class_count(k: Count) -> usize {
    catalog_entries().iter().filter(|e| e.k == k).count()
}

/// Smallest distinct primes coprime to `order`, skipping the first `skip`.
fn coprime_primes(order: usize, count: usize, skip: usize) -> Vec<u64> {
    (2u64..).filter(|&p| is_prime(p) && !(order as u64).is_multiple_of(p)).skip(skip).take(count).collect()
}

/// The default prime assignment for an entry's free factors.
pub fn default_assignment(e: &CatalogEntry, pinned_order: usize, skip: usize) -> Vec<u64> {
    coprime_primes(pinned_order, e.free_factors.len(), skip)
}

/// Builds the entry with each free factor `Z(p^e)` at the matching prime.
pub fn build_entry(e: &CatalogEntry, primes: &[u64]) -> Result<Group> {
    let pinned = e.recipe.build()?;
    instantiate(e, &pinned, primes)
}

fn instantiate(e: &CatalogEntry, pinned: &Group, primes: &[u64]) -> Result<Group> {
    if primes.len() != e.free_factors.len() {
        return Err(Error::Precondition(format!(
            "{} needs {} primes, got {}",
            e.name,
            e.free_factors.len(),
            primes.len()
        )));
    }
    for (i, &p) in primes.iter().enumerate() {
        if !is_prime(p) || gcd(p, pinned.order() as u64) != 1 || primes[..i].contains(&p) {
            return Err(Error::Precondition(format!("{p} is not a fresh prime coprime to {}", pinned.order())));
        }
    }
    let mut g = pinned.clone();
    for (&p, &a) in primes.iter().zip(&e.free_factors) {
        let n = p
            .checked_pow(a)
            .and_then(|n| usize::try_from(n).ok())
            .ok_or(Error::SizeCap { order: usize::MAX, cap: crate::order_cap() })?;
        g = g.direct_product(&Group::cyclic(n)?)?;
    }
    let label = if primes.is_empty() { e.name.to_string() } else { format!("{} at {primes:?}", e.name) };
    Ok(g.with_label(label))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub claimed: Count,
    /// Pinned count times `prod (e + 1)` over the free factors.
    pub observed: Count,
    pub pinned_count: Count,
    /// Direct counts of fully instantiated groups.
    pub instantiations: Vec<(Vec<u64>, Count)>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.observed == self.claimed && self.instantiations.iter().all(|(_, c)| *c == self.claimed)
    }
}

/// `name<TAB>claimed<TAB>observed<TAB>PASS|FAIL`.
impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{}\t{}\t{}\t{verdict}", self.name, self.claimed, self.observed)
    }
}

/// Counts the pinned group, and for entries with free factors also two fully
/// instantiated groups at different primes.
pub fn verify_entry(e: &CatalogEntry) -> Result<VerificationReport> {
    let pinned = e.recipe.build()?;
    let pinned_count = count_subgroups(&pinned)?;
    let free: Count = e.free_factors.iter().map(|&a| a as Count + 1).product();
    let mut instantiations = Vec::new();
    if !e.free_factors.is_empty() {
        for skip in 0..2 {
            let primes = default_assignment(e, pinned.order(), skip);
            let g = instantiate(e, &pinned, &primes)?;
            instantiations.push((primes, count_subgroups(&g)?));
        }
    }
    Ok(VerificationReport {
        name: e.name.to_string(),
        claimed: e.k,
        observed: pinned_count * free,
        pinned_count,
        instantiations,
    })
}

/// Verifies entries concurrently; reports come back in input order.
pub fn verify_catalog(entries: &[CatalogEntry]) -> Result<Vec<VerificationReport>> {
    entries.par_iter().map(verify_entry).collect()
}

/// Terms `1..=k_max` of the class-count sequence, emitted only once every
/// catalog entry up to `k_max` has verified.
pub fn sequence_terms(k_max: Count) -> Result<Vec<usize>> {
    if k_max > CATALOG_MAX_K {
        return Err(Error::Window(format!("the catalog only covers k <= {CATALOG_MAX_K}")));
    }
    let entries: Vec<CatalogEntry> = catalog_entries().into_iter().filter(|e| e.k <= k_max).collect();
    let failed: Vec<String> =
        verify_catalog(&entries)?.into_iter().filter(|r| !r.passed()).map(|r| r.to_string()).collect();
    if !failed.is_empty() {
        return Err(Error::Verification(format!("unverified entries: {}", failed.join("; "))));
    }
    (1..=k_max).map(|k| Ok(enumerate_abelian_classes(k)?.len() + nonabelian_class_count(k))).collect()
}

/// Runs every invariant check on the entry, instantiated at the smallest
/// admissible primes.
pub fn invariant_violations(e: &CatalogEntry) -> Result<Vec<Violation>> {
    let pinned = e.recipe.build()?;
    let g = instantiate(e, &pinned, &default_assignment(e, pinned.order(), 0))?;
    Ok(check_all(&Lattice::new(&g)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianRow {
    pub k: Count,
    pub expected: usize,
    pub classes: Vec<SimilarityClass>,
    /// Classes whose formula count at the smallest primes is not `k`.
    pub formula_mismatches: Vec<String>,
    /// Classes small enough to brute-force, and those that disagreed.
    pub brute_forced: usize,
    pub brute_mismatches: Vec<String>,
}

impl AbelianRow {
    pub fn passed(&self) -> bool {
        self.classes.len() == self.expected && self.formula_mismatches.is_empty() && self.brute_mismatches.is_empty()
    }
}

/// `k<TAB>expected<TAB>observed<TAB>PASS|FAIL`.
impl fmt::Display for AbelianRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "abelian k={}\t{}\t{}\t{verdict}", self.k, self.expected, self.classes.len())
    }
}

/// Abelian classes for `k = 1..=k_max`, checked against the expected class
/// counts, the closed forms, and brute force for every instance within the cap.
pub fn verify_abelian_rows(k_max: Count) -> Result<Vec<AbelianRow>> {
    if k_max as usize > EXPECTED_ABELIAN_CLASS_COUNTS.len() {
        return Err(Error::Window(format!(
            "expected abelian counts stop at k = {}",
            EXPECTED_ABELIAN_CLASS_COUNTS.len()
        )));
    }
    let ks: Vec<Count> = (1..=k_max).collect();
    ks.par_iter()
        .map(|&k| {
            let classes = enumerate_abelian_classes(k)?;
            let mut row = AbelianRow {
                k,
                expected: EXPECTED_ABELIAN_CLASS_COUNTS[k as usize - 1],
                classes: Vec::new(),
                formula_mismatches: Vec::new(),
                brute_forced: 0,
                brute_mismatches: Vec::new(),
            };
            for c in &classes {
                if c.subgroup_count()? != k {
                    row.formula_mismatches.push(c.to_string());
                }
                let shape = c.instantiate(&c.admissible_primes(0))?;
                if shape.order().is_some_and(|n| n as usize <= crate::order_cap()) {
                    row.brute_forced += 1;
                    if count_subgroups(&shape.build_group()?)? != k {
                        row.brute_mismatches.push(c.to_string());
                    }
                }
            }
            row.classes = classes;
            Ok(row)
        })
        .collect()
}

/// The similarity class of an abelian group: cyclic Sylow components become
/// free exponents and the rest stay pinned.
pub fn abelian_similarity_class(g: &Group) -> Result<SimilarityClass> {
    let shape = AbelianShape::from_group(g)?;
    let mut free = Vec::new();
    let mut pinned = Vec::new();
    for (&p, parts) in shape.components() {
        if parts.len() == 1 {
            free.push(parts[0]);
        } else {
            pinned.push((p, parts.clone()));
        }
    }
    SimilarityClass::new(free, pinned)
}

/// Whether `g` realizes `e` for some choice of primes in the free factors.
pub fn matches_entry(g: &Group, e: &CatalogEntry) -> Result<bool> {
    let pinned = e.recipe.build()?;
    if !g.order().is_multiple_of(pinned.order()) {
        return Ok(false);
    }
    let rest = factorize((g.order() / pinned.order()) as u64);
    let mut rest_exps: Vec<u32> = rest.iter().map(|&(_, a)| a).collect();
    let mut free = e.free_factors.clone();
    rest_exps.sort_unstable();
    free.sort_unstable();
    if rest_exps != free {
        return Ok(false);
    }
    // Pair primes with exponents in the entry's own order.
    let mut used = vec![false; rest.len()];
    let mut primes = Vec::new();
    for &a in &e.free_factors {
        let i = (0..rest.len()).find(|&i| !used[i] && rest[i].1 == a).expect("exponent multisets agree");
        used[i] = true;
        primes.push(rest[i].0);
    }
    match instantiate(e, &pinned, &primes) {
        Ok(h) => isomorphic(g, &h),
        Err(Error::Precondition(_)) => Ok(false),
        Err(err) => Err(err),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessRow {
    pub order: usize,
    pub subgroups: Count,
    pub abelian: bool,
    /// Rendered abelian class, or the matching catalog entry's name.
    pub class: Option<String>,
}

impl CompletenessRow {
    pub fn covered(&self) -> bool {
        self.class.is_some()
    }
}

impl fmt::Display for CompletenessRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.abelian { "abelian" } else { "non-abelian" };
        let class = self.class.as_deref().unwrap_or("-");
        let verdict = if self.covered() { "PASS" } else { "FAIL" };
        write!(f, "order {}\t{kind}\t{}\t{class}\t{verdict}", self.order, self.subgroups)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    pub rows: Vec<CompletenessRow>,
}

impl CompletenessReport {
    pub fn gaps(&self) -> Vec<&CompletenessRow> {
        self.rows.iter().filter(|r| !r.covered()).collect()
    }
}

/// Every group of order at most 12, located in the abelian classes or in the
/// catalog.
pub fn completeness_check_small_orders() -> Result<CompletenessReport> {
    let catalog = catalog_entries();
    let orders: Vec<usize> = (1..=crate::iso::MAX_ENUM_ORDER).collect();
    let per_order: Vec<Vec<CompletenessRow>> = orders
        .par_iter()
        .map(|&n| enumerate_groups_of_order(n)?.iter().map(|g| classify(g, &catalog)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(CompletenessReport { rows: per_order.into_iter().flatten().collect() })
}

fn classify(g: &Group, catalog: &[CatalogEntry]) -> Result<CompletenessRow> {
    let k = count_subgroups(g)?;
    let abelian = g.is_abelian();
    let class = if abelian {
        let class = abelian_similarity_class(g)?;
        enumerate_abelian_classes(k)?.contains(&class).then(|| class.to_string())
    } else {
        let mut found = None;
        for e in catalog.iter().filter(|e| e.k == k) {
            if matches_entry(g, e)? {
                found = Some(e.name.to_string());
                break;
            }
        }
        found
    };
    Ok(CompletenessRow { order: g.order(), subgroups: k, abelian, class })
}
