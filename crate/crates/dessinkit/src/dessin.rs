//! Dessins as transitive permutation pairs and their direct invariants.
//!
//! A dessin of degree `n` is a pair `(x, y)` of permutations of the edge set
//! `{1..n}` whose joint action is transitive: `x` rotates edges around black
//! vertices, `y` around white vertices, and `z = (xy)⁻¹` walks faces. A face
//! of ramification `e` is stored as one z-cycle of length `e` (its drawing
//! has `2e` sides).

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dessin {
    x: Permutation,
    y: Permutation,
}

/// The three cycle-length multisets of `x`, `y`, `z`, each stored descending.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Passport {
    pub black: Vec<usize>,
    pub white: Vec<usize>,
    pub faces: Vec<usize>,
}

/// Orders of `x`, `y`, `z`; equivalently the lcm of each passport part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DessinType {
    pub l: BigUint,
    pub m: BigUint,
    pub n: BigUint,
}

impl Dessin {
    /// Validates degrees and transitivity.
    pub fn new(x: Permutation, y: Permutation) -> Result<Self> {
        if x.degree() != y.degree() {
            return Err(Error::DegreeMismatch(x.degree(), y.degree()));
        }
        let n = x.degree();
        let mut seen = vec![false; n];
        let mut stack = vec![1usize];
        seen[0] = true;
        let mut found = 1;
        while let Some(p) = stack.pop() {
            for q in [x.apply(p), y.apply(p)] {
                if !seen[q - 1] {
                    seen[q - 1] = true;
                    found += 1;
                    stack.push(q);
                }
            }
        }
        if found != n {
            return Err(Error::NotTransitive { degree: n, found });
        }
        Ok(Dessin { x, y })
    }

    /// Like [`Dessin::new`] but checks the pair against a declared degree.
    pub fn with_degree(n: usize, x: Permutation, y: Permutation) -> Result<Self> {
        if x.degree() != n {
            return Err(Error::DegreeMismatch(x.degree(), n));
        }
        Dessin::new(x, y)
    }

    pub fn degree(&self) -> usize {
        self.x.degree()
    }

    pub fn x(&self) -> &Permutation {
        &self.x
    }

    pub fn y(&self) -> &Permutation {
        &self.y
    }

    /// `z = (xy)⁻¹`, the face rotation.
    pub fn z(&self) -> Permutation {
        self.x.compose(&self.y).expect("equal degrees").inverse()
    }

    pub fn passport(&self) -> Passport {
        Passport {
            black: self.x.cycle_lengths(),
            white: self.y.cycle_lengths(),
            faces: self.z().cycle_lengths(),
        }
    }

    pub fn black_vertex_count(&self) -> usize {
        self.x.cycles().len()
    }

    pub fn white_vertex_count(&self) -> usize {
        self.y.cycles().len()
    }

    pub fn face_count(&self) -> usize {
        self.z().cycles().len()
    }

    /// Genus from the Euler formula `2 − 2g = V + W − n + F`.
    pub fn genus(&self) -> usize {
        let chi = self.black_vertex_count() as i64 + self.white_vertex_count() as i64
            - self.degree() as i64
            + self.face_count() as i64;
        debug_assert!(chi <= 2 && chi % 2 == 0, "Euler characteristic {}", chi);
        ((2 - chi) / 2) as usize
    }

    pub fn dessin_type(&self) -> DessinType {
        DessinType {
            l: self.x.order(),
            m: self.y.order(),
            n: self.z().order(),
        }
    }

    /// True iff `z` is a single cycle.
    pub fn one_face(&self) -> bool {
        self.face_count() == 1
    }

    /// Simultaneous conjugation of the pair by `sigma` (an edge relabeling).
    pub fn relabel(&self, sigma: &Permutation) -> Result<Dessin> {
        Dessin::new(self.x.conjugate(sigma)?, self.y.conjugate(sigma)?)
    }

    /// Searches for a relabeling `phi` with `x₁^phi = x₂` and `y₁^phi = y₂`,
    /// i.e. `phi(x₁(i)) = x₂(phi(i))` pointwise. Returns the first one found
    /// (by the image of edge 1), or `None` if the dessins are not isomorphic.
    pub fn is_isomorphic(&self, other: &Dessin) -> Option<Permutation> {
        if self.degree() != other.degree() {
            return None;
        }
        let n = self.degree();
        for j in 1..=n {
            if let Some(map) = propagate_equivariant(&self.x, &self.y, &other.x, &other.y, j) {
                if let Ok(p) = Permutation::from_images(map) {
                    return Some(p);
                }
            }
        }
        None
    }

    /// Searches for an equivariant surjection onto `other` (a covering map
    /// on edge sets). Returns the 1-indexed image table, or `None`.
    pub fn find_morphism(&self, other: &Dessin) -> Option<Vec<usize>> {
        if self.degree() % other.degree() != 0 {
            return None;
        }
        for j in 1..=other.degree() {
            if let Some(map) = propagate_equivariant(&self.x, &self.y, &other.x, &other.y, j) {
                let mut hit = vec![false; other.degree()];
                for &v in &map {
                    hit[v - 1] = true;
                }
                if hit.iter().all(|&h| h) {
                    return Some(map);
                }
            }
        }
        None
    }

    /// Relabels edges by breadth-first search from `base`, visiting images
    /// under `x, x⁻¹, y, y⁻¹` in that order. Returns the relabeling
    /// (old point ↦ new point).
    pub fn bfs_labeling(&self, base: usize) -> Permutation {
        let n = self.degree();
        let x_inv = self.x.inverse();
        let y_inv = self.y.inverse();
        let mut label = vec![0usize; n];
        let mut queue = std::collections::VecDeque::new();
        label[base - 1] = 1;
        queue.push_back(base);
        let mut next = 2;
        while let Some(p) = queue.pop_front() {
            for q in [
                self.x.apply(p),
                x_inv.apply(p),
                self.y.apply(p),
                y_inv.apply(p),
            ] {
                if label[q - 1] == 0 {
                    label[q - 1] = next;
                    next += 1;
                    queue.push_back(q);
                }
            }
        }
        debug_assert_eq!(next, n + 1);
        Permutation::from_images(label).expect("BFS labeling is a bijection")
    }

    /// The lexicographically least BFS relabeling over all base edges. Two
    /// dessins are isomorphic iff their canonical forms are identical.
    pub fn canonical_form(&self) -> Dessin {
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        for base in 1..=self.degree() {
            let sigma = self.bfs_labeling(base);
            let cx = self.x.conjugate(&sigma).expect("equal degrees");
            let cy = self.y.conjugate(&sigma).expect("equal degrees");
            let cand = (cx.images().to_vec(), cy.images().to_vec());
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
        let (bx, by) = best.expect("degree is at least 1");
        Dessin {
            x: Permutation::from_images(bx).unwrap(),
            y: Permutation::from_images(by).unwrap(),
        }
    }

    /// True iff this dessin equals its own canonical form.
    pub fn is_canonical(&self) -> bool {
        let c = self.canonical_form();
        c.x == self.x && c.y == self.y
    }
}

/// Builds the unique map `phi` with `phi(1) = image_of_one` that intertwines
/// `(sx, sy)` with `(tx, ty)`: `phi(sx(i)) = tx(phi(i))` and likewise for y.
/// Returns the image table (1-indexed) or `None` on conflict.
pub(crate) fn propagate_equivariant(
    sx: &Permutation,
    sy: &Permutation,
    tx: &Permutation,
    ty: &Permutation,
    image_of_one: usize,
) -> Option<Vec<usize>> {
    let n = sx.degree();
    let mut map = vec![0usize; n];
    let mut queue = std::collections::VecDeque::new();
    map[0] = image_of_one;
    queue.push_back(1usize);
    while let Some(i) = queue.pop_front() {
        let fi = map[i - 1];
        for (s, t) in [(sx, tx), (sy, ty)] {
            let i2 = s.apply(i);
            let want = t.apply(fi);
            if map[i2 - 1] == 0 {
                map[i2 - 1] = want;
                queue.push_back(i2);
            } else if map[i2 - 1] != want {
                return None;
            }
        }
    }
    debug_assert!(map.iter().all(|&v| v != 0), "source must be transitive");
    Some(map)
}

impl Passport {
    pub fn degree(&self) -> usize {
        self.black.iter().sum()
    }

    /// Parses `2,2,1,1/3,2,1/6`; parts may be listed in any order within a
    /// slot and are sorted descending.
    pub fn parse(text: &str) -> Result<Passport> {
        let bad = |msg: String| Error::ExprParse(msg);
        let slots: Vec<&str> = text.split('/').collect();
        if slots.len() != 3 {
            return Err(bad(format!(
                "expected three '/'-separated parts, found {}",
                slots.len()
            )));
        }
        let mut parts = Vec::new();
        for slot in slots {
            let mut lens = Vec::new();
            for tok in slot.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    continue;
                }
                let v: usize = tok
                    .parse()
                    .map_err(|_| bad(format!("bad cycle length '{}'", tok)))?;
                if v == 0 {
                    return Err(bad("cycle lengths must be positive".into()));
                }
                lens.push(v);
            }
            if lens.is_empty() {
                return Err(bad("each part needs at least one cycle length".into()));
            }
            lens.sort_unstable_by(|a, b| b.cmp(a));
            parts.push(lens);
        }
        let faces = parts.pop().unwrap();
        let white = parts.pop().unwrap();
        let black = parts.pop().unwrap();
        let p = Passport {
            black,
            white,
            faces,
        };
        let n = p.degree();
        if p.white.iter().sum::<usize>() != n || p.faces.iter().sum::<usize>() != n {
            return Err(bad("the three parts must sum to the same degree".into()));
        }
        Ok(p)
    }

    /// The type `(l, m, n)` determined by the passport: lcm of each part.
    pub fn derived_type(&self) -> DessinType {
        let lcm_of = |part: &[usize]| {
            part.iter()
                .fold(BigUint::one(), |acc, &k| acc.lcm(&BigUint::from(k)))
        };
        DessinType {
            l: lcm_of(&self.black),
            m: lcm_of(&self.white),
            n: lcm_of(&self.faces),
        }
    }
}

impl fmt::Display for Passport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "{}/{}/{}",
            join(&self.black),
            join(&self.white),
            join(&self.faces)
        )
    }
}

impl fmt::Display for DessinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l, self.m, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn cube() -> Dessin {
        Dessin::new(
            perm(12, "(1 3 2)(4 5 6)(7 9 8)(10 11 12)"),
            perm(12, "(1 5 9)(2 10 6)(3 7 11)(4 12 8)"),
        )
        .unwrap()
    }

    fn d0() -> Dessin {
        Dessin::new(
            perm(12, "(1 2 3 7 8 9)(6 12)"),
            perm(12, "(1 4)(2 5)(7 10)(8 11)(3 6 9 12)"),
        )
        .unwrap()
    }

    fn tree_top() -> Dessin {
        Dessin::new(perm(6, "(1 4)(5 6)"), perm(6, "(1 2 3)(4 5)")).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(cube().degree() == 12);
        let e = Dessin::new(Permutation::identity(2), Permutation::identity(2));
        assert!(matches!(e, Err(Error::NotTransitive { .. })));
        let trivial = Dessin::new(Permutation::identity(1), Permutation::identity(1)).unwrap();
        assert_eq!(trivial.degree(), 1);
        assert!(Dessin::with_degree(11, cube().x.clone(), cube().y.clone()).is_err());
    }

    #[test]
    fn z_matches_printed_cycle() {
        assert_eq!(d0().z(), perm(12, "(2 5 1 4 9 12 8 11 7 10 3 6)"));
        let trivial = Dessin::new(Permutation::identity(1), Permutation::identity(1)).unwrap();
        assert!(trivial.z().is_identity());
        // the cube's z is six 2-cycles
        assert_eq!(cube().z().cycle_lengths(), vec![2; 6]);
    }

    #[test]
    fn passports() {
        let p = d0().passport();
        assert_eq!(p.black, vec![6, 2, 1, 1, 1, 1]);
        assert_eq!(p.white, vec![4, 2, 2, 2, 2]);
        assert_eq!(p.faces, vec![12]);
        let t = tree_top().passport();
        assert_eq!(t.black, vec![2, 2, 1, 1]);
        assert_eq!(t.white, vec![3, 2, 1]);
        assert_eq!(t.faces, vec![6]);
        let trivial = Dessin::new(Permutation::identity(1), Permutation::identity(1)).unwrap();
        let tp = trivial.passport();
        assert_eq!((tp.black, tp.white, tp.faces), (vec![1], vec![1], vec![1]));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(cube().genus(), 0);
        assert_eq!(d0().genus(), 1);
        assert_eq!(tree_top().genus(), 0);
    }

    #[test]
    fn type_and_faces() {
        let t = d0().dessin_type();
        assert_eq!(
            (t.l, t.m, t.n),
            (6u32.into(), 4u32.into(), 12u32.into())
        );
        assert!(d0().one_face());
        assert!(!cube().one_face());
        assert!(tree_top().one_face());
        let trivial = Dessin::new(Permutation::identity(1), Permutation::identity(1)).unwrap();
        let tt = trivial.dessin_type();
        assert_eq!((tt.l, tt.m, tt.n), (1u32.into(), 1u32.into(), 1u32.into()));
    }

    #[test]
    fn isomorphism_under_relabeling() {
        let d = d0();
        let sigma = perm(12, "(1 9 4 2)(3 11)(5 6 7)");
        let r = d.relabel(&sigma).unwrap();
        let phi = d.is_isomorphic(&r).expect("relabeled copy is isomorphic");
        assert_eq!(d.x.conjugate(&phi).unwrap(), r.x);
        assert_eq!(d.y.conjugate(&phi).unwrap(), r.y);
        assert_eq!(d.canonical_form(), r.canonical_form());
    }

    #[test]
    fn non_isomorphic_family() {
        let d1 = Dessin::new(
            perm(12, "(1 2 3 7 8 9)(4 10)"),
            perm(12, "(1 4)(2 5)(7 10)(8 11)(3 6 9 12)"),
        )
        .unwrap();
        assert!(d0().is_isomorphic(&d1).is_none());
        assert_ne!(d0().canonical_form(), d1.canonical_form());
        let middle = Dessin::new(perm(6, "(1 4)(2 6)"), perm(6, "(1 2 3)(4 5)")).unwrap();
        assert!(tree_top().is_isomorphic(&middle).is_none());
    }

    #[test]
    fn morphisms() {
        let d = d0();
        let id_m = d.find_morphism(&d).expect("identity morphism");
        assert_eq!(id_m, (1..=12).collect::<Vec<_>>());
        assert!(tree_top().find_morphism(&d0()).is_none());
    }

    #[test]
    fn canonical_form_is_stable() {
        let trivial = Dessin::new(Permutation::identity(1), Permutation::identity(1)).unwrap();
        assert_eq!(trivial.canonical_form(), trivial);
        assert!(d0().canonical_form().is_canonical());
    }

    #[test]
    fn passport_parse_and_type() {
        let p = Passport::parse("2,2,1,1/3,2,1/6").unwrap();
        assert_eq!(p, tree_top().passport());
        let t = p.derived_type();
        assert_eq!((t.l, t.m, t.n), (2u32.into(), 6u32.into(), 6u32.into()));
        assert!(Passport::parse("2,2/3,2/4").is_err());
        assert!(Passport::parse("1/1").is_err());
    }
}
