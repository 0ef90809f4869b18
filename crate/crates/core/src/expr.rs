//! Group expressions such as `Z(9) x Z(3)` or `Meta(5,8,3,0) x Z(3)`.
//!
//! ```text
//! expr := term { "x" term }
//! term := NAME "(" integer { "," integer } ")"
//! ```
//!
//! Whitespace is ignored everywhere.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Group, Permutation, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constructor {
    /// `Z(n)`, cyclic of order `n`.
    Cyclic,
    /// `D(n)`, dihedral of order `n`.
    Dihedral,
    /// `Dic(n)`, dicyclic of order `n`.
    Dicyclic,
    /// `Q(n)`, generalized quaternion of order `n = 2^a >= 8`.
    Quaternion,
    /// `M(p, a)`, modular of order `p^a`.
    Modular,
    /// `SD(n)`, semidihedral of order `n = 2^a >= 16`.
    Semidihedral,
    /// `A(n)`, alternating on `n` points.
    Alternating,
    /// `S(n)`, symmetric on `n` points.
    Symmetric,
    /// `SL(2, p)`.
    SpecialLinear,
    /// `Heis(p)`, upper unitriangular 3x3 matrices over `F_p`.
    Heisenberg,
    /// `Meta(n, m, k, t)`, see [`Group::metacyclic`].
    Metacyclic,
}

impl Constructor {
    pub fn name(self) -> &'static str {
        match self {
            Constructor::Cyclic => "Z",
            Constructor::Dihedral => "D",
            Constructor::Dicyclic => "Dic",
            Constructor::Quaternion => "Q",
            Constructor::Modular => "M",
            Constructor::Semidihedral => "SD",
            Constructor::Alternating => "A",
            Constructor::Symmetric => "S",
            Constructor::SpecialLinear => "SL",
            Constructor::Heisenberg => "Heis",
            Constructor::Metacyclic => "Meta",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "Z" => Constructor::Cyclic,
            "D" => Constructor::Dihedral,
            "Dic" => Constructor::Dicyclic,
            "Q" => Constructor::Quaternion,
            "M" => Constructor::Modular,
            "SD" => Constructor::Semidihedral,
            "A" => Constructor::Alternating,
            "S" => Constructor::Symmetric,
            "SL" => Constructor::SpecialLinear,
            "Heis" => Constructor::Heisenberg,
            "Meta" => Constructor::Metacyclic,
            _ => return None,
        })
    }

    pub fn arity(self) -> usize {
        match self {
            Constructor::Modular | Constructor::SpecialLinear => 2,
            Constructor::Metacyclic => 4,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Term {
        ctor: Constructor,
        args: Vec<u64>,
    },
    /// Direct product of at least two factors.
    Product(Vec<GroupExpr>),
}

impl GroupExpr {
    pub fn term(ctor: Constructor, args: &[u64]) -> Self {
        GroupExpr::Term { ctor, args: args.to_vec() }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Parser { src: s, pos: 0 }.expr()
    }

    /// Flattened list of the product's factors.
    pub fn factors(&self) -> Vec<&GroupExpr> {
        match self {
            GroupExpr::Product(fs) => fs.iter().flat_map(|f| f.factors()).collect(),
            t => vec![t],
        }
    }

    pub fn product(self, other: GroupExpr) -> GroupExpr {
        let mut fs: Vec<GroupExpr> = self.factors().into_iter().cloned().collect();
        fs.extend(other.factors().into_iter().cloned());
        GroupExpr::Product(fs)
    }

    pub fn eval(&self) -> Result<Group> {
        match self {
            GroupExpr::Product(fs) => {
                let mut g = Group::trivial();
                for f in fs {
                    g = g.direct_product(&f.eval()?)?;
                }
                Ok(g.with_label(self.to_string()))
            }
            GroupExpr::Term { ctor, args } => Ok(eval_term(*ctor, args)?.with_label(self.to_string())),
        }
    }
}

fn domain(ctor: Constructor, args: &[u64], why: &str) -> Error {
    let shown: Vec<String> = args.iter().map(u64::to_string).collect();
    Error::Domain(format!("{}({}): {why}", ctor.name(), shown.join(",")))
}

fn small(n: u64) -> Result<usize> {
    usize::try_from(n).map_err(|_| Error::SizeCap { order: usize::MAX, cap: crate::order_cap() })
}

fn power_of_two(n: u64) -> Option<u32> {
    (n.is_power_of_two()).then(|| n.trailing_zeros())
}

fn eval_term(ctor: Constructor, args: &[u64]) -> Result<Group> {
    let bad = |why: &str| domain(ctor, args, why);
    match (ctor, args) {
        (Constructor::Cyclic, &[n]) => Group::cyclic(small(n)?),
        (Constructor::Dihedral, &[n]) => {
            if n < 2 || n % 2 == 1 {
                return Err(bad("order must be even"));
            }
            let h = small(n / 2)?;
            Group::metacyclic(h, 2, (h as u64).saturating_sub(1) as usize, 0)
        }
        (Constructor::Dicyclic, &[n]) => {
            if n < 4 || n % 4 != 0 {
                return Err(bad("order must be a multiple of 4"));
            }
            let h = small(n / 2)?;
            Group::metacyclic(h, 2, h - 1, h / 2)
        }
        (Constructor::Quaternion, &[n]) => match power_of_two(n) {
            Some(a) if a >= 3 => eval_term(Constructor::Dicyclic, &[n]),
            _ => Err(bad("order must be a power of 2, at least 8")),
        },
        (Constructor::Modular, &[p, a]) => {
            if !crate::arith::is_prime(p) || a < 3 {
                return Err(bad("needs a prime p and a >= 3"));
            }
            let n = p.checked_pow(a as u32 - 1).ok_or_else(|| bad("too large"))?;
            let k = 1 + p.pow(a as u32 - 2);
            Group::metacyclic(small(n)?, small(p)?, small(k)?, 0)
        }
        (Constructor::Semidihedral, &[n]) => match power_of_two(n) {
            Some(a) if a >= 4 => {
                let h = small(n / 2)?;
                Group::metacyclic(h, 2, h / 2 - 1, 0)
            }
            _ => Err(bad("order must be a power of 2, at least 16")),
        },
        (Constructor::Alternating, &[n]) => {
            let n = small(n)?;
            if n > 8 {
                return Err(bad("degree too large"));
            }
            let gens = (2..n).map(|i| Permutation::from_cycles(n, &[&[0, 1, i]])).collect::<Result<Vec<_>>>()?;
            Group::from_permutations(n.max(1), &gens)
        }
        (Constructor::Symmetric, &[n]) => {
            let n = small(n)?;
            if n > 8 {
                return Err(bad("degree too large"));
            }
            if n < 2 {
                return Ok(Group::trivial());
            }
            let cycle: Vec<usize> = (0..n).collect();
            let gens = [Permutation::from_cycles(n, &[&cycle])?, Permutation::from_cycles(n, &[&[0, 1]])?];
            Group::from_permutations(n, &gens)
        }
        (Constructor::SpecialLinear, &[d, p]) => {
            if d != 2 || !crate::arith::is_prime(p) {
                return Err(bad("only SL(2, p) for prime p is supported"));
            }
            Group::from_matrices(p, 2, &[vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![1, 1]]])
        }
        (Constructor::Heisenberg, &[p]) => {
            if !crate::arith::is_prime(p) {
                return Err(bad("needs a prime"));
            }
            let e12 = vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]];
            let e23 = vec![vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]];
            Group::from_matrices(p, 3, &[e12, e23])
        }
        (Constructor::Metacyclic, &[n, m, k, t]) => Group::metacyclic(small(n)?, small(m)?, small(k)?, small(t)?),
        _ => Err(bad(&format!("expected {} arguments", ctor.arity()))),
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Term { ctor, args } => {
                let shown: Vec<String> = args.iter().map(u64::to_string).collect();
                write!(f, "{}({})", ctor.name(), shown.join(","))
            }
            GroupExpr::Product(fs) => {
                let shown: Vec<String> = fs.iter().map(|g| g.to_string()).collect();
                f.write_str(&shown.join(" x "))
            }
        }
    }
}

impl FromStr for GroupExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupExpr::parse(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let mut factors = vec![self.term()?];
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('x') => {
                    self.pos += 1;
                    factors.push(self.term()?);
                }
                Some(c) => return Err(self.err(format!("unexpected `{c}`"))),
            }
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { GroupExpr::Product(factors) })
    }

    fn term(&mut self) -> Result<GroupExpr> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        if name.is_empty() {
            return Err(self.err("expected a constructor name"));
        }
        let ctor = Constructor::from_name(name).ok_or_else(|| Error::UnknownConstructor(name.to_string()))?;
        self.eat('(')?;
        let mut args = vec![self.integer()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    args.push(self.integer()?);
                }
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.err("expected `,` or `)`")),
            }
        }
        if args.len() != ctor.arity() {
            return Err(Error::Parse {
                pos: start,
                msg: format!("{name} takes {} argument(s), got {}", ctor.arity(), args.len()),
            });
        }
        Ok(GroupExpr::Term { ctor, args })
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        self.src[start..self.pos].parse().map_err(|_| Error::Parse { pos: start, msg: "integer out of range".into() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::count_subgroups;

    fn count(s: &str) -> u64 {
        count_subgroups(&GroupExpr::parse(s).unwrap().eval().unwrap()).unwrap()
    }

    #[test]
    fn parses_products() {
        let e = GroupExpr::parse("Z(9) x Z(3)").unwrap();
        assert_eq!(
            e,
            GroupExpr::Product(vec![
                GroupExpr::term(Constructor::Cyclic, &[9]),
                GroupExpr::term(Constructor::Cyclic, &[3])
            ])
        );
        assert_eq!(GroupExpr::parse("Z(9)xZ(3)").unwrap(), e);
        assert_eq!(e.to_string(), "Z(9) x Z(3)");
        let m = GroupExpr::parse(" Meta( 5 , 8,3,0 ) ").unwrap();
        assert_eq!(m, GroupExpr::term(Constructor::Metacyclic, &[5, 8, 3, 0]));
        assert!(matches!(GroupExpr::parse("Q(8) x Z(5)").unwrap(), GroupExpr::Product(ref fs) if fs.len() == 2));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(GroupExpr::parse("Foo(3)"), Err(Error::UnknownConstructor(n)) if n == "Foo"));
        assert!(matches!(GroupExpr::parse("Z(3"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(GroupExpr::parse("Z(3) x"), Err(Error::Parse { .. })));
        assert!(matches!(GroupExpr::parse("Z(3) y Z(2)"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(GroupExpr::parse("Meta(1,2)"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(GroupExpr::parse(""), Err(Error::Parse { pos: 0, .. })));
        assert!(GroupExpr::parse("Z()").is_err());
    }

    #[test]
    fn evaluates_named_groups() {
        assert_eq!(count("Z(9) x Z(3)"), 10);
        assert_eq!(count("Z(1)"), 1);
        assert_eq!(count("S(3)"), 6);
        assert_eq!(count("Q(8)"), 6);
        assert_eq!(count("D(8)"), 10);
        assert_eq!(count("A(4)"), 10);
        assert_eq!(count("A(5)"), 59);
        assert_eq!(count("SL(2,3)"), 15);
        assert_eq!(count("SD(16)"), 15);
        assert_eq!(count("Q(16)"), 11);
        assert_eq!(count("M(2,4)"), 11);
        assert_eq!(count("M(3,3)"), 10);
        assert_eq!(count("Dic(12)"), 8);
        assert_eq!(count("Heis(3)"), 19);
        assert_eq!(count("Meta(5,8,3,0)"), 16);
        assert_eq!(count("Q(8) x Z(5)"), 12);
        assert_eq!(GroupExpr::parse("S(4)").unwrap().eval().unwrap().order(), 24);
        assert_eq!(GroupExpr::parse("SL(2,5)").unwrap().eval().unwrap().order(), 120);
    }

    #[test]
    fn rejects_bad_arguments() {
        for s in ["D(7)", "Dic(10)", "Q(12)", "Q(4)", "M(4,3)", "SD(8)", "SL(3,3)", "Heis(4)", "Meta(5,2,2,0)"] {
            assert!(GroupExpr::parse(s).unwrap().eval().is_err(), "{s}");
        }
    }
}
