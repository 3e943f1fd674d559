//! Exact permutation arithmetic on `{1..n}`.
//!
//! Points are 1-indexed everywhere, matching the usual cycle notation
//! `(1 2 3)(6 12)`. Composition is the right action: `compose(p, q)` maps
//! `i` to `q(p(i))`, i.e. "p then q". Conjugation `p^g` is `g⁻¹ p g` under
//! the same convention.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};

/// A bijection of `{1..n}` stored by its image table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    /// `images[i - 1]` is the image of point `i`; values are in `1..=n`.
    images: Vec<usize>,
}

impl Permutation {
    /// The identity on `{1..n}`. Panics if `n == 0`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutation degree must be at least 1");
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Builds a permutation from its image table (`images[i-1]` = image of `i`).
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        let mut seen = vec![false; n];
        for (i, &v) in images.iter().enumerate() {
            if v < 1 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "image of {} is {}, outside 1..={}",
                    i + 1,
                    v,
                    n
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "value {} appears more than once",
                    v
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles; points not
    /// mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p < 1 || p > n {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} outside 1..={}",
                        p, n
                    )));
                }
                if touched[p - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} appears in two cycles",
                        p
                    )));
                }
                touched[p - 1] = true;
                let q = cycle[(k + 1) % cycle.len()];
                images[p - 1] = q;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-indexed point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `self` then `other`: maps `i` to `other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        let images = self.images.iter().map(|&v| other.images[v - 1]).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let n = self.degree();
        let mut images = vec![0; n];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// `g⁻¹ · self · g` under the composition convention above, i.e. the
    /// permutation mapping `g(i)` to `g(self(i))`.
    pub fn conjugate(&self, g: &Permutation) -> Result<Permutation> {
        if self.degree() != g.degree() {
            return Err(Error::DegreeMismatch(self.degree(), g.degree()));
        }
        let n = self.degree();
        let mut images = vec![0; n];
        for i in 1..=n {
            images[g.apply(i) - 1] = g.apply(self.apply(i));
        }
        Ok(Permutation { images })
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base).expect("equal degrees");
            }
            base = base.compose(&base).expect("equal degrees");
            k >>= 1;
        }
        acc
    }

    /// Cycle decomposition. Fixed points are included as length-1 cycles,
    /// each cycle starts at its minimum element, and cycles are sorted by
    /// that minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p - 1] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Multiset of cycle lengths, sorted descending.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Least `k >= 1` with `self^k = identity`: the lcm of the cycle lengths.
    pub fn order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }

    /// Order check without big arithmetic.
    pub fn order_at_most_two(&self) -> bool {
        (1..=self.degree()).all(|i| self.apply(self.apply(i)) == i)
    }

    /// Parses cycle notation such as `(1 2 3)(6 12)` against a known degree.
    /// Points may be separated by whitespace or commas; fixed points may be
    /// omitted; `()` or `id` denotes the identity.
    pub fn parse(text: &str, n: usize) -> Result<Permutation> {
        let bad = |msg: String| Error::InvalidPermutation(msg);
        let s = text.trim();
        if n == 0 {
            return Err(bad("degree must be at least 1".into()));
        }
        if s.is_empty() || s == "id" || s == "()" {
            return Ok(Permutation::identity(n));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if c != '(' {
                return Err(bad(format!("expected '(' but found '{}'", c)));
            }
            chars.next();
            let mut cycle = Vec::new();
            let mut num = String::new();
            loop {
                match chars.next() {
                    Some(d) if d.is_ascii_digit() => num.push(d),
                    Some(d) if d.is_whitespace() || d == ',' => {
                        if !num.is_empty() {
                            cycle.push(num.parse::<usize>().map_err(|e| bad(e.to_string()))?);
                            num.clear();
                        }
                    }
                    Some(')') => {
                        if !num.is_empty() {
                            cycle.push(num.parse::<usize>().map_err(|e| bad(e.to_string()))?);
                        }
                        break;
                    }
                    Some(d) => return Err(bad(format!("unexpected character '{}'", d))),
                    None => return Err(bad("unterminated cycle".into())),
                }
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        Permutation::from_cycles(n, &cycles)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with fixed points omitted; the identity prints as `id`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn compose_identity() {
        let c = p(3, "(1 2 3)");
        assert_eq!(Permutation::identity(3).compose(&c).unwrap(), c);
        assert_eq!(c.compose(&Permutation::identity(3)).unwrap(), c);
    }

    #[test]
    fn compose_involution() {
        let t = p(2, "(1 2)");
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn compose_hand_evaluated() {
        // i -> q(p(i)) with p = (1 2 3), q = (1 2) gives 1->1, 2->3, 3->2.
        let r = p(3, "(1 2 3)").compose(&p(3, "(1 2)")).unwrap();
        assert_eq!(r, p(3, "(2 3)"));
    }

    #[test]
    fn compose_degree_mismatch() {
        let e = p(2, "(1 2)").compose(&p(3, "(1 2 3)"));
        assert_eq!(e, Err(Error::DegreeMismatch(2, 3)));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p(3, "(1 2 3)").inverse(), p(3, "(1 3 2)"));
        assert!(Permutation::identity(5).inverse().is_identity());
        let invol = p(5, "(1 4)(2 5)");
        assert_eq!(invol.inverse(), invol);
        let c = p(7, "(1 5 3 2)(4 6)");
        assert!(c.compose(&c.inverse()).unwrap().is_identity());
    }

    #[test]
    fn cycles_canonical() {
        let x = p(12, "(1 2 3 7 8 9)(6 12)");
        assert_eq!(
            x.cycles(),
            vec![
                vec![1, 2, 3, 7, 8, 9],
                vec![4],
                vec![5],
                vec![6, 12],
                vec![10],
                vec![11]
            ]
        );
        assert_eq!(
            Permutation::identity(3).cycles(),
            vec![vec![1], vec![2], vec![3]]
        );
        // a single 12-cycle stays one cycle
        let z = p(12, "(2 5 1 4 9 12 8 11 7 10 3 6)");
        assert_eq!(z.cycles().len(), 1);
        assert_eq!(z.cycles()[0].len(), 12);
    }

    #[test]
    fn order_examples() {
        let x = p(12, "(1 2 3 7 8 9)(6 12)");
        let y = p(12, "(1 4)(2 5)(7 10)(8 11)(3 6 9 12)");
        assert_eq!(x.order(), BigUint::from(6u32));
        assert_eq!(y.order(), BigUint::from(4u32));
        assert_eq!(Permutation::identity(9).order(), BigUint::one());
    }

    #[test]
    fn conjugate_examples() {
        let a = p(4, "(1 2)(3 4)");
        assert_eq!(a.conjugate(&Permutation::identity(4)).unwrap(), a);
        assert_eq!(
            p(3, "(1 2)").conjugate(&p(3, "(1 2 3)")).unwrap(),
            p(3, "(2 3)")
        );
        // conjugation by a commuting element fixes the permutation
        let x = p(12, "(1 2 3 7 8 9)(6 12)");
        let w = x.pow(3);
        assert_eq!(x.conjugate(&w).unwrap(), x);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["id", "(1 2 3)(6 12)", "(1 4)(2 5)(7 10)(8 11)(3 6 9 12)"] {
            let q = p(12, s);
            assert_eq!(Permutation::parse(&q.to_string(), 12).unwrap(), q);
        }
        // commas as in the printed sources
        assert_eq!(p(12, "(1,2,3,7,8,9)(6,12)"), p(12, "(1 2 3 7 8 9)(6 12)"));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Permutation::parse("(1 2", 3).is_err());
        assert!(Permutation::parse("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse("(1 5)", 3).is_err());
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::from_images(vec![]).is_err());
    }
}
