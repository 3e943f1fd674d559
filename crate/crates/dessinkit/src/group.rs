//! Finite-group computations on the cartographic group: closure,
//! automorphisms, regularity, regular covers, quotients, centers, and the
//! real-field-of-moduli obstruction test.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dessin::{propagate_equivariant, Dessin};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::word::{FreeWord, Letter};

/// Default cap on closure enumeration (number of group elements).
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// The image of the free group in `S_n`: all words in the generators,
/// enumerated breadth-first from the identity. Element 0 is the identity and
/// the generator words of each element are recorded.
#[derive(Clone, Debug)]
pub struct CartographicGroup {
    degree: usize,
    gen_x: Permutation,
    gen_y: Permutation,
    elements: Vec<Permutation>,
    words: Vec<FreeWord>,
}

impl CartographicGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// A word in `x, y` evaluating to the given element.
    pub fn word_for(&self, index: usize) -> &FreeWord {
        &self.words[index]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.iter().position(|e| e == p)
    }
}

/// Breadth-first closure of `<x, y>` with the default element cap.
pub fn closure(d: &Dessin) -> Result<CartographicGroup> {
    closure_capped(d, DEFAULT_GROUP_CAP, 1)
}

/// Closure with an explicit cap and optional internal parallelism. The
/// element numbering is identical for every thread count: products of each
/// BFS layer are deduplicated in the sequential frontier order.
pub fn closure_capped(d: &Dessin, cap: usize, threads: usize) -> Result<CartographicGroup> {
    let gens = [
        (d.x().clone(), Letter::X),
        (d.x().inverse(), Letter::XInv),
        (d.y().clone(), Letter::Y),
        (d.y().inverse(), Letter::YInv),
    ];
    let mut elements = vec![Permutation::identity(d.degree())];
    let mut words = vec![FreeWord::identity()];
    let mut seen: HashMap<Permutation, usize> = HashMap::new();
    seen.insert(elements[0].clone(), 0);
    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() {
        // all products of this layer, in frontier-then-generator order
        let products: Vec<(usize, usize, Permutation)> = if threads > 1 && frontier.len() >= 64 {
            let chunk = frontier.len().div_ceil(threads);
            let mut parts: Vec<Vec<(usize, usize, Permutation)>> = Vec::new();
            std::thread::scope(|scope| {
                let handles: Vec<_> = frontier
                    .chunks(chunk)
                    .map(|slice| {
                        let gens = &gens;
                        let elements = &elements;
                        scope.spawn(move || {
                            let mut out = Vec::with_capacity(slice.len() * 4);
                            for &i in slice {
                                for (gi, (g, _)) in gens.iter().enumerate() {
                                    out.push((i, gi, elements[i].compose(g).unwrap()));
                                }
                            }
                            out
                        })
                    })
                    .collect();
                for h in handles {
                    parts.push(h.join().expect("closure worker panicked"));
                }
            });
            parts.into_iter().flatten().collect()
        } else {
            let mut out = Vec::with_capacity(frontier.len() * 4);
            for &i in &frontier {
                for (gi, (g, _)) in gens.iter().enumerate() {
                    out.push((i, gi, elements[i].compose(g).unwrap()));
                }
            }
            out
        };
        let mut next = Vec::new();
        for (i, gi, p) in products {
            if seen.contains_key(&p) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::GroupTooLarge { cap });
            }
            let idx = elements.len();
            seen.insert(p.clone(), idx);
            let w = &words[i] * &FreeWord::letter(gens[gi].1);
            elements.push(p);
            words.push(w);
            next.push(idx);
        }
        frontier = next;
    }
    Ok(CartographicGroup {
        degree: d.degree(),
        gen_x: d.x().clone(),
        gen_y: d.y().clone(),
        elements,
        words,
    })
}

/// The automorphisms of a dessin: permutations of the edge set commuting
/// with both generators. Enumerated by propagating each candidate image of
/// edge 1.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    elements: Vec<Permutation>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }
}

pub fn automorphisms(d: &Dessin) -> AutomorphismGroup {
    let mut elements = Vec::new();
    for j in 1..=d.degree() {
        if let Some(map) = propagate_equivariant(d.x(), d.y(), d.x(), d.y(), j) {
            if let Ok(p) = Permutation::from_images(map) {
                elements.push(p);
            }
        }
    }
    debug_assert!(d.degree() % elements.len() == 0);
    AutomorphismGroup { elements }
}

/// A dessin is regular iff its cartographic group order equals its degree;
/// the automorphism count gives the same verdict and is asserted against it.
pub fn is_regular(d: &Dessin) -> Result<bool> {
    let by_closure = closure(d)?.order() == d.degree();
    let by_autos = automorphisms(d).order() == d.degree();
    assert_eq!(by_closure, by_autos, "regularity criteria disagree");
    Ok(by_closure)
}

/// The regular cover: edges are the elements of the cartographic group `G`,
/// on which `x` and `y` act by right multiplication. Covers `d` via
/// `g ↦ 1^g`.
pub fn regular_cover(d: &Dessin) -> Result<Dessin> {
    let group = closure(d)?;
    regular_cover_of_closure(d, &group)
}

pub fn regular_cover_of_closure(d: &Dessin, group: &CartographicGroup) -> Result<Dessin> {
    let order = group.order();
    let mut index: HashMap<&Permutation, usize> = HashMap::with_capacity(order);
    for (i, e) in group.elements().iter().enumerate() {
        index.insert(e, i);
    }
    let build = |gen: &Permutation| -> Permutation {
        let images = group
            .elements()
            .iter()
            .map(|e| index[&e.compose(gen).expect("equal degrees")] + 1)
            .collect();
        Permutation::from_images(images).expect("right multiplication is a bijection")
    };
    let cx = build(d.x());
    let cy = build(d.y());
    Dessin::new(cx, cy)
}

/// Elements of the group commuting with both generators (hence with the
/// whole group).
pub fn center(group: &CartographicGroup) -> Vec<Permutation> {
    let gx = &group.gen_x;
    let gy = &group.gen_y;
    group
        .elements()
        .iter()
        .filter(|e| {
            e.compose(gx).unwrap() == gx.compose(e).unwrap()
                && e.compose(gy).unwrap() == gy.compose(e).unwrap()
        })
        .cloned()
        .collect()
}

/// Quotient by an invariant partition into equal-sized blocks. Blocks are
/// numbered by their minimum element.
pub fn quotient_by_partition(d: &Dessin, blocks: &[Vec<usize>]) -> Result<Dessin> {
    let n = d.degree();
    if blocks.is_empty() {
        return Err(Error::InvalidPartition("no blocks given".into()));
    }
    let size = blocks[0].len();
    if size == 0 || n % size != 0 || blocks.len() * size != n {
        return Err(Error::InvalidPartition(
            "blocks must be equal-sized and cover all edges".into(),
        ));
    }
    let mut block_of = vec![usize::MAX; n];
    let mut order: Vec<(usize, usize)> = Vec::new(); // (min element, original index)
    for (bi, block) in blocks.iter().enumerate() {
        if block.len() != size {
            return Err(Error::InvalidPartition("blocks differ in size".into()));
        }
        let mut min = usize::MAX;
        for &p in block {
            if p < 1 || p > n {
                return Err(Error::InvalidPartition(format!(
                    "edge {} outside 1..={}",
                    p, n
                )));
            }
            if block_of[p - 1] != usize::MAX {
                return Err(Error::InvalidPartition(format!(
                    "edge {} is in two blocks",
                    p
                )));
            }
            block_of[p - 1] = bi;
            min = min.min(p);
        }
        order.push((min, bi));
    }
    order.sort_unstable();
    let mut number = vec![0usize; blocks.len()]; // original block index -> 1-based label
    for (label, &(_, bi)) in order.iter().enumerate() {
        number[bi] = label + 1;
    }
    let induced = |g: &Permutation| -> Result<Permutation> {
        let mut images = vec![0usize; blocks.len()];
        for (_, bi) in &order {
            let target = block_of[g.apply(blocks[*bi][0]) - 1];
            for &p in &blocks[*bi] {
                if block_of[g.apply(p) - 1] != target {
                    return Err(Error::NotInvariant);
                }
            }
            images[number[*bi] - 1] = number[target];
        }
        Permutation::from_images(images).map_err(|_| Error::NotInvariant)
    };
    Dessin::new(induced(d.x())?, induced(d.y())?)
}

/// Quotient of a regular dessin by a central subgroup given as permutations
/// of the edge set (each commuting with both generators). Edges of the
/// quotient are the orbits.
pub fn quotient_by_central_subgroup(r: &Dessin, subgroup: &[Permutation]) -> Result<Dessin> {
    let n = r.degree();
    if subgroup.is_empty() {
        return Err(Error::NotSubgroup);
    }
    for z in subgroup {
        if z.degree() != n {
            return Err(Error::DegreeMismatch(z.degree(), n));
        }
        if z.compose(r.x()).unwrap() != r.x().compose(z).unwrap()
            || z.compose(r.y()).unwrap() != r.y().compose(z).unwrap()
        {
            return Err(Error::NotCentral);
        }
    }
    if !subgroup.iter().any(|z| z.is_identity()) {
        return Err(Error::NotSubgroup);
    }
    for a in subgroup {
        if !subgroup.contains(&a.inverse()) {
            return Err(Error::NotSubgroup);
        }
        for b in subgroup {
            if !subgroup.contains(&a.compose(b).unwrap()) {
                return Err(Error::NotSubgroup);
            }
        }
    }
    if automorphisms(r).order() != n {
        return Err(Error::NotRegular);
    }
    // orbits of the edge set under the subgroup
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for p in 1..=n {
        if seen[p - 1] {
            continue;
        }
        let mut block = Vec::new();
        for z in subgroup {
            let q = z.apply(p);
            if !seen[q - 1] {
                seen[q - 1] = true;
                block.push(q);
            }
        }
        blocks.push(block);
    }
    quotient_by_partition(r, &blocks)
}

/// Genus of a regular dessin from its group order and type:
/// `2g − 2 = |G| (1 − 1/l − 1/m − 1/n)`.
pub fn genus_regular_formula(
    group_order: &BigUint,
    l: &BigUint,
    m: &BigUint,
    n: &BigUint,
) -> Result<BigUint> {
    let err = || Error::NonIntegralGenus {
        order: group_order.to_string(),
        l: l.to_string(),
        m: m.to_string(),
        n: n.to_string(),
    };
    if group_order.is_zero() || l.is_zero() || m.is_zero() || n.is_zero() {
        return Err(err());
    }
    let big = |v: &BigUint| BigRational::from_integer(v.clone().into());
    let sum = big(l).recip() + big(m).recip() + big(n).recip();
    let two_g_minus_two = big(group_order) * (BigRational::one() - sum);
    let two_g = two_g_minus_two + BigRational::from_integer(2.into());
    if !two_g.is_integer() || two_g.is_negative() || two_g.to_integer().is_odd() {
        return Err(err());
    }
    let g = two_g.to_integer() / num_bigint::BigInt::from(2);
    g.to_biguint().ok_or_else(err)
}

/// Outcome of the complex-conjugation (real field of moduli) test.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModuliStatus {
    /// No relabeling conjugates `(x, y)` to `(x⁻¹, y⁻¹)`.
    NotRealModuli,
    /// Some such relabeling of order at most 2 exists.
    DefinableOverReal,
    /// Such relabelings exist but all have order greater than 2.
    Obstructed,
}

impl std::fmt::Display for ModuliStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ModuliStatus::NotRealModuli => "NotRealModuli",
            ModuliStatus::DefinableOverReal => "DefinableOverReal",
            ModuliStatus::Obstructed => "Obstructed",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Debug)]
pub struct ModuliRealReport {
    pub status: ModuliStatus,
    pub witness: Option<Permutation>,
    pub witness_order: Option<BigUint>,
}

/// All relabelings conjugating `(x, y)` to `(x⁻¹, y⁻¹)`: a coset of the
/// automorphism group (possibly empty).
pub fn moduli_conjugators(d: &Dessin) -> Vec<Permutation> {
    let xi = d.x().inverse();
    let yi = d.y().inverse();
    let mut base = None;
    for j in 1..=d.degree() {
        if let Some(map) = propagate_equivariant(d.x(), d.y(), &xi, &yi, j) {
            if let Ok(p) = Permutation::from_images(map) {
                base = Some(p);
                break;
            }
        }
    }
    let Some(omega) = base else {
        return Vec::new();
    };
    automorphisms(d)
        .elements()
        .iter()
        .map(|a| a.compose(&omega).expect("equal degrees"))
        .collect()
}

/// Decides whether the field of moduli is real and, if so, whether complex
/// conjugation obstructs a real model: a real model exists iff some
/// conjugator of `(x, y)` to `(x⁻¹, y⁻¹)` has order at most 2.
pub fn real_moduli_test(d: &Dessin) -> ModuliRealReport {
    let coset = moduli_conjugators(d);
    if coset.is_empty() {
        return ModuliRealReport {
            status: ModuliStatus::NotRealModuli,
            witness: None,
            witness_order: None,
        };
    }
    if let Some(w) = coset.iter().find(|w| w.order_at_most_two()) {
        return ModuliRealReport {
            status: ModuliStatus::DefinableOverReal,
            witness: Some(w.clone()),
            witness_order: Some(w.order()),
        };
    }
    let w = coset[0].clone();
    let order = w.order();
    ModuliRealReport {
        status: ModuliStatus::Obstructed,
        witness: Some(w),
        witness_order: Some(order),
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

    fn rabbit24() -> Dessin {
        Dessin::new(
            perm(24, "(4 1 24 3)(9 6 7 10)(16 13 12 15)(21 18 19 22)"),
            perm(
                24,
                "(1 2 3)(4 5 6)(9 8 7)(12 11 10)(13 14 15)(16 17 18)(21 20 19)(24 23 22)",
            ),
        )
        .unwrap()
    }

    #[test]
    fn closure_orders() {
        assert_eq!(closure(&cube()).unwrap().order(), 12);
        assert_eq!(closure(&d0()).unwrap().order(), 576);
        assert_eq!(closure(&tree_top()).unwrap().order(), 720);
    }

    #[test]
    fn closure_words_evaluate_back() {
        let d = d0();
        let g = closure(&d).unwrap();
        for i in (0..g.order()).step_by(37) {
            let w = g.word_for(i);
            assert_eq!(&w.evaluate(d.x(), d.y()).unwrap(), &g.elements()[i]);
        }
    }

    #[test]
    fn closure_cap_is_enforced() {
        assert!(matches!(
            closure_capped(&d0(), 100, 1),
            Err(Error::GroupTooLarge { cap: 100 })
        ));
    }

    #[test]
    fn closure_parallel_matches_sequential() {
        let d = tree_top();
        let a = closure_capped(&d, DEFAULT_GROUP_CAP, 1).unwrap();
        let b = closure_capped(&d, DEFAULT_GROUP_CAP, 4).unwrap();
        assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&cube()).order(), 12);
        let auto = automorphisms(&rabbit24());
        assert_eq!(auto.order(), 2);
        let shift =
            Permutation::from_images((1..=24).map(|i| (i + 11) % 24 + 1).collect()).unwrap();
        assert!(auto.elements().contains(&shift));
        let trivial = Dessin::new(Permutation::identity(1), Permutation::identity(1)).unwrap();
        assert_eq!(automorphisms(&trivial).order(), 1);
    }

    #[test]
    fn regularity() {
        assert!(is_regular(&cube()).unwrap());
        assert!(!is_regular(&d0()).unwrap());
        let trivial = Dessin::new(Permutation::identity(1), Permutation::identity(1)).unwrap();
        assert!(is_regular(&trivial).unwrap());
    }

    #[test]
    fn regular_cover_of_cube_is_cube() {
        let c = cube();
        let rc = regular_cover(&c).unwrap();
        assert_eq!(rc.degree(), 12);
        assert!(c.is_isomorphic(&rc).is_some());
    }

    #[test]
    fn regular_cover_genus() {
        let rc = regular_cover(&d0()).unwrap();
        assert_eq!(rc.degree(), 576);
        assert_eq!(rc.genus(), 145);
        assert!(rc.find_morphism(&d0()).is_some());
        let rt = regular_cover(&tree_top()).unwrap();
        assert_eq!(rt.degree(), 720);
        assert_eq!(rt.genus(), 61);
    }

    #[test]
    fn center_of_d0_closure() {
        let g = closure(&d0()).unwrap();
        let z = center(&g);
        assert_eq!(z.len(), 2);
        assert!(z.iter().any(|p| p.is_identity()));
        assert!(z.contains(&perm(12, "(1 7)(2 8)(3 9)(4 10)(5 11)(6 12)")));
    }

    #[test]
    fn partition_quotient_of_d0() {
        let blocks: Vec<Vec<usize>> = (1..=6).map(|i| vec![i, i + 6]).collect();
        let q = quotient_by_partition(&d0(), &blocks).unwrap();
        assert_eq!(q.degree(), 6);
        assert_eq!(q.x(), &perm(6, "(1 2 3)"));
        assert_eq!(q.y(), &perm(6, "(1 4)(2 5)(3 6)"));
        assert_eq!(closure(&q).unwrap().order(), 18);
        // singleton blocks give the dessin back
        let singles: Vec<Vec<usize>> = (1..=12).map(|i| vec![i]).collect();
        assert_eq!(quotient_by_partition(&d0(), &singles).unwrap(), d0());
        // a partition the generators break
        let broken: Vec<Vec<usize>> = (0..6).map(|i| vec![2 * i + 1, 2 * i + 2]).collect();
        assert!(matches!(
            quotient_by_partition(&d0(), &broken),
            Err(Error::NotInvariant) | Err(Error::NotTransitive { .. })
        ));
    }

    #[test]
    fn central_quotient_of_the_cover() {
        let rc = regular_cover(&d0()).unwrap();
        let g = closure(&rc).unwrap();
        let z = center(&g);
        assert_eq!(z.len(), 2);
        let q = quotient_by_central_subgroup(&rc, &z).unwrap();
        assert_eq!(q.degree(), 288);
        assert!(is_regular(&q).unwrap());
        assert_eq!(q.genus(), 61);
        let t = q.dessin_type();
        assert_eq!((t.l, t.m, t.n), (6u32.into(), 4u32.into(), 6u32.into()));
        // quotient by the trivial subgroup is the dessin itself
        let t = quotient_by_central_subgroup(&rc, &[Permutation::identity(576)]).unwrap();
        assert_eq!(t, rc);
    }

    #[test]
    fn central_quotient_rejects_bad_input() {
        let rc = regular_cover(&cube()).unwrap();
        // not a subgroup: missing identity
        let g = closure(&rc).unwrap();
        let noncentral: Vec<Permutation> = g
            .elements()
            .iter()
            .filter(|e| !e.is_identity())
            .take(1)
            .cloned()
            .collect();
        assert!(quotient_by_central_subgroup(&rc, &noncentral).is_err());
        // not regular
        let z = vec![Permutation::identity(12)];
        assert!(matches!(
            quotient_by_central_subgroup(&d0(), &z),
            Err(Error::NotRegular)
        ));
    }

    #[test]
    fn genus_formula_examples() {
        let g = |o: u32, l: u32, m: u32, n: u32| {
            genus_regular_formula(&o.into(), &l.into(), &m.into(), &n.into())
        };
        assert_eq!(g(576, 6, 4, 12).unwrap(), 145u32.into());
        assert_eq!(g(288, 6, 4, 6).unwrap(), 61u32.into());
        assert_eq!(g(720, 2, 6, 6).unwrap(), 61u32.into());
        assert!(g(7, 2, 3, 7).is_err());
    }

    #[test]
    fn moduli_reports() {
        let r = real_moduli_test(&rabbit24());
        assert_eq!(r.status, ModuliStatus::Obstructed);
        assert_eq!(r.witness_order, Some(4u32.into()));
        for w in moduli_conjugators(&rabbit24()) {
            assert_eq!(w.order(), 4u32.into());
            assert_eq!(
                rabbit24().x().conjugate(&w).unwrap(),
                rabbit24().x().inverse()
            );
            assert_eq!(
                rabbit24().y().conjugate(&w).unwrap(),
                rabbit24().y().inverse()
            );
        }
        assert_eq!(
            real_moduli_test(&cube()).status,
            ModuliStatus::DefinableOverReal
        );
        assert_eq!(
            real_moduli_test(&d0()).status,
            ModuliStatus::DefinableOverReal
        );
    }
}
