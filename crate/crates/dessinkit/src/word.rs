//! Words in the free group on two generators `x`, `y`.
//!
//! Words are stored freely reduced (no adjacent `g g⁻¹`); reduction is the
//! only normalization applied, so conjugates keep their verbatim shape.

use std::fmt;
use std::ops::Mul;

use crate::error::Result;
use crate::perm::Permutation;

/// One of the two abstract generators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    X,
    Y,
}

/// A signed generator symbol.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    X,
    XInv,
    Y,
    YInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::X => Letter::XInv,
            Letter::XInv => Letter::X,
            Letter::Y => Letter::YInv,
            Letter::YInv => Letter::Y,
        }
    }

    pub fn generator(self) -> Gen {
        match self {
            Letter::X | Letter::XInv => Gen::X,
            Letter::Y | Letter::YInv => Gen::Y,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Letter::X | Letter::Y => 1,
            Letter::XInv | Letter::YInv => -1,
        }
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    /// Builds a word from an arbitrary letter sequence, reducing it.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        FreeWord { letters: stack }
    }

    pub fn x() -> Self {
        FreeWord::new([Letter::X])
    }

    pub fn y() -> Self {
        FreeWord::new([Letter::Y])
    }

    pub fn letter(l: Letter) -> Self {
        FreeWord::new([l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> FreeWord {
        let mut acc = FreeWord::identity();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `u⁻¹ · self · u`.
    pub fn conjugated_by(&self, u: &FreeWord) -> FreeWord {
        &(&u.inverse() * self) * u
    }

    /// Substitutes `px` for `x` and `py` for `y`, composing left to right
    /// under the right-action convention. The identity word yields the
    /// identity permutation.
    pub fn evaluate(&self, px: &Permutation, py: &Permutation) -> Result<Permutation> {
        if px.degree() != py.degree() {
            return Err(crate::error::Error::DegreeMismatch(
                px.degree(),
                py.degree(),
            ));
        }
        let px_inv = px.inverse();
        let py_inv = py.inverse();
        let mut acc = Permutation::identity(px.degree());
        for l in &self.letters {
            let step = match l {
                Letter::X => px,
                Letter::XInv => &px_inv,
                Letter::Y => py,
                Letter::YInv => &py_inv,
            };
            acc = acc.compose(step)?;
        }
        Ok(acc)
    }

    /// Signed count of occurrences of the given generator.
    pub fn exponent_sum(&self, gen: Gen) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator() == gen)
            .map(|l| l.sign())
            .sum()
    }

    /// Applies the endomorphism `x ↦ image_x`, `y ↦ image_y` and reduces.
    pub fn substitute(&self, image_x: &FreeWord, image_y: &FreeWord) -> FreeWord {
        let ximg_inv = image_x.inverse();
        let yimg_inv = image_y.inverse();
        let mut letters = Vec::new();
        for l in &self.letters {
            let piece = match l {
                Letter::X => image_x,
                Letter::XInv => &ximg_inv,
                Letter::Y => image_y,
                Letter::YInv => &yimg_inv,
            };
            letters.extend_from_slice(&piece.letters);
        }
        FreeWord::new(letters)
    }
}

impl Mul for &FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: &FreeWord) -> FreeWord {
        FreeWord::new(self.letters.iter().chain(rhs.letters.iter()).copied())
    }
}

impl fmt::Display for FreeWord {
    /// Run-length form, e.g. `x^3 y^2 x^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = match l.generator() {
                Gen::X => "x",
                Gen::Y => "y",
            };
            let exp = l.sign() * run as i64;
            if exp == 1 {
                write!(f, "{}", name)?;
            } else {
                write!(f, "{}^{}", name, exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// The distinguishing relation word `x³y² (x³y²)^x (x³y²)^{x²}` used by the
/// degree-12 torus family.
pub fn torus_relation_word() -> FreeWord {
    let base = &FreeWord::x().pow(3) * &FreeWord::y().pow(2);
    let x = FreeWord::x();
    let xx = x.pow(2);
    &(&base * &base.conjugated_by(&x)) * &base.conjugated_by(&xx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn reduction_cancels_adjacent_inverses() {
        let w = FreeWord::new([Letter::X, Letter::Y, Letter::YInv, Letter::XInv, Letter::X]);
        assert_eq!(w, FreeWord::x());
        assert!( (&w * &w.inverse()).is_identity() );
    }

    #[test]
    fn relation_word_on_the_torus_family() {
        let w = torus_relation_word();
        let y = p(12, "(1 4)(2 5)(7 10)(8 11)(3 6 9 12)");
        let x0 = p(12, "(1 2 3 7 8 9)(6 12)");
        let x1 = p(12, "(1 2 3 7 8 9)(4 10)");
        let x2 = p(12, "(1 2 3 7 8 9)(5 11)");
        assert!(w.evaluate(&x0, &y).unwrap().is_identity());
        assert_eq!(w.evaluate(&x1, &y).unwrap(), p(12, "(4 10)(6 12)"));
        assert_eq!(w.evaluate(&x2, &y).unwrap(), p(12, "(5 11)(6 12)"));
    }

    #[test]
    fn exponent_sums() {
        let w = torus_relation_word();
        assert_eq!(w.exponent_sum(Gen::Y), 6);
        assert_eq!(w.exponent_sum(Gen::X), 9);
        assert_eq!(FreeWord::identity().exponent_sum(Gen::X), 0);
        // x^-1 y^-1 x^-1 y^-1 x has x-sum -1
        let t = FreeWord::new([
            Letter::XInv,
            Letter::YInv,
            Letter::XInv,
            Letter::YInv,
            Letter::X,
        ]);
        assert_eq!(t.exponent_sum(Gen::X), -1);
        assert_eq!(t.exponent_sum(Gen::Y), -2);
    }

    #[test]
    fn substitution() {
        // x ↦ y⁻¹x⁻¹ on the single generator
        let img_x = FreeWord::new([Letter::YInv, Letter::XInv]);
        let img_y = FreeWord::y();
        assert_eq!(FreeWord::x().substitute(&img_x, &img_y), img_x);
        // identity endomorphism
        let xy = &FreeWord::x() * &FreeWord::y();
        assert_eq!(xy.substitute(&FreeWord::x(), &FreeWord::y()), xy);
        // y-parity of the substituted relation word: 6·1 + 9·(−1) = −3
        let w = torus_relation_word().substitute(&img_x, &img_y);
        assert_eq!(w.exponent_sum(Gen::Y), -3);
        assert_eq!(w.exponent_sum(Gen::Y).rem_euclid(2), 1);
    }

    #[test]
    fn evaluate_concatenation_is_composition() {
        let a = p(5, "(1 2 3 4 5)");
        let b = p(5, "(1 3)(2 4)");
        let w1 = FreeWord::new([Letter::X, Letter::Y, Letter::XInv]);
        let w2 = FreeWord::new([Letter::Y, Letter::Y, Letter::X]);
        let lhs = (&w1 * &w2).evaluate(&a, &b).unwrap();
        let rhs = w1
            .evaluate(&a, &b)
            .unwrap()
            .compose(&w2.evaluate(&a, &b).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
