//! Coxeter groups of types A, B and D realized as (signed) permutations.
//!
//! Conventions:
//! - type `A` with rank parameter `n` means the symmetric group S_n,
//!   generated by `s_i = (i, i+1)` for `1 ≤ i < n`;
//! - type `B` prepends `t_0`, the sign change at point 1;
//! - type `D` prepends `t_0 : 1 ↦ −2, 2 ↦ −1`.
//!
//! Products compose right to left: `(x·y)(i) = x(y(i))`. A word
//! `[a, b, c]` denotes the product `g_a · g_b · g_c`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on enumerated group orders.
pub const DEFAULT_GROUP_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoxeterType {
    A,
    B,
    D,
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CoxeterType::A => "A",
            CoxeterType::B => "B",
            CoxeterType::D => "D",
        };
        write!(f, "{s}")
    }
}

/// A signed permutation of `{±1, …, ±n}`; `images[i-1] = w(i)`.
///
/// Ordinary permutations are the signed permutations with all images positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    images: Vec<i16>,
}

/// Permutations share the signed representation with every sign positive.
pub type Permutation = SignedPerm;

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { images: (1..=n as i16).collect() }
    }

    /// Validates that `images` is a signed bijection.
    pub fn from_images(images: Vec<i16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::Parse(format!("{images:?} is not a signed permutation")));
            }
            seen[a] = true;
        }
        Ok(SignedPerm { images })
    }

    /// The transposition `(i j)` (1-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut w = Self::identity(n);
        w.images.swap(i - 1, j - 1);
        w
    }

    /// The cycle `c[0] ↦ c[1] ↦ … ↦ c[0]` (1-based points).
    pub fn cycle(n: usize, c: &[usize]) -> Self {
        let mut w = Self::identity(n);
        for k in 0..c.len() {
            w.images[c[k] - 1] = c[(k + 1) % c.len()] as i16;
        }
        w
    }

    /// Sign change at point `i`.
    pub fn sign_flip(n: usize, i: usize) -> Self {
        let mut w = Self::identity(n);
        w.images[i - 1] = -(i as i16);
        w
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i16] {
        &self.images
    }

    /// `w(i)` for a signed point `i`.
    pub fn apply(&self, i: i16) -> i16 {
        let v = self.images[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    /// `self · other`, i.e. apply `other` first.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm { images: other.images.iter().map(|&i| self.apply(i)).collect() }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut images = vec![0i16; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            let a = v.unsigned_abs() as usize;
            images[a - 1] = if v < 0 { -(i as i16 + 1) } else { i as i16 + 1 };
        }
        SignedPerm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i as i16 + 1)
    }

    pub fn is_unsigned(&self) -> bool {
        self.images.iter().all(|&v| v > 0)
    }

    pub fn negatives(&self) -> usize {
        self.images.iter().filter(|&&v| v < 0).count()
    }

    /// Type A length: number of inversions of the image sequence.
    pub fn inversions(&self) -> usize {
        let w = &self.images;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// `#{i < j : w(i) + w(j) < 0}`.
    pub fn negative_sum_pairs(&self) -> usize {
        let w = &self.images;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] + w[j] < 0 {
                    c += 1;
                }
            }
        }
        c
    }

    /// Coxeter length in the given type.
    pub fn length(&self, t: CoxeterType) -> usize {
        match t {
            CoxeterType::A => self.inversions(),
            CoxeterType::B => self.inversions() + self.negative_sum_pairs() + self.negatives(),
            CoxeterType::D => self.inversions() + self.negative_sum_pairs(),
        }
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut x = self.clone();
        while !x.is_identity() {
            x = x.compose(self);
            k += 1;
        }
        k
    }

    /// Points moved by the underlying permutation (or with a sign change).
    pub fn support(&self) -> Vec<usize> {
        (1..=self.images.len()).filter(|&i| self.images[i - 1] != i as i16).collect()
    }
}

impl fmt::Display for SignedPerm {
    /// Cycle notation of the underlying permutation; a `-` marks points
    /// whose image carries a negative sign.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.images.len();
        let mut seen = vec![false; n + 1];
        let mut any = false;
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.images[i - 1].unsigned_abs() as usize;
            }
            if cyc.len() == 1 && self.images[start - 1] > 0 {
                continue;
            }
            any = true;
            let parts: Vec<String> =
                cyc.iter().map(|&p| if self.images[p - 1] < 0 { format!("-{p}") } else { p.to_string() }).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

fn check_rank(t: CoxeterType, n: usize) -> Result<()> {
    let ok = match t {
        CoxeterType::A => n >= 1,
        CoxeterType::B => n >= 1,
        CoxeterType::D => n >= 2,
    };
    if !ok || n > 64 {
        return Err(Error::UnsupportedRank(format!("type {t} with n = {n}")));
    }
    Ok(())
}

/// Standard generators of the named type, `t_0` first for B and D.
pub fn coxeter_generators(t: CoxeterType, n: usize) -> Result<Vec<SignedPerm>> {
    check_rank(t, n)?;
    let mut gens = Vec::new();
    match t {
        CoxeterType::A => {}
        CoxeterType::B => gens.push(SignedPerm::sign_flip(n, 1)),
        CoxeterType::D => {
            let mut w = SignedPerm::identity(n);
            w.images[0] = -2;
            w.images[1] = -1;
            gens.push(w);
        }
    }
    for i in 1..n {
        gens.push(SignedPerm::transposition(n, i, i + 1));
    }
    Ok(gens)
}

/// Generator labels as used in Hecke presentations (`0` is `T_0`).
pub fn generator_labels(t: CoxeterType, n: usize) -> Vec<usize> {
    match t {
        CoxeterType::A => (1..n).collect(),
        _ => (0..n).collect(),
    }
}

/// Group order by formula.
pub fn group_order(t: CoxeterType, n: usize) -> u128 {
    let fact: u128 = (1..=n as u128).product();
    match t {
        CoxeterType::A => fact,
        CoxeterType::B => (1u128 << n) * fact,
        CoxeterType::D => (1u128 << (n - 1)) * fact,
    }
}

/// All elements of a Coxeter group in (length, lex-min reduced word) order.
#[derive(Clone, Debug)]
pub struct GroupEnumeration {
    pub ctype: CoxeterType,
    pub n: usize,
    pub generators: Vec<SignedPerm>,
    pub elements: Vec<SignedPerm>,
    pub lengths: Vec<usize>,
    /// Lex-minimal reduced word of each element, as generator positions.
    pub words: Vec<Vec<usize>>,
    index: HashMap<SignedPerm, usize>,
    /// `left[s][w]` = index of `g_s · w`.
    left: Vec<Vec<usize>>,
    /// `right[s][w]` = index of `w · g_s`.
    right: Vec<Vec<usize>>,
}

/// Enumerates the group by breadth-first search from the identity.
pub fn enumerate_group(t: CoxeterType, n: usize) -> Result<GroupEnumeration> {
    enumerate_group_capped(t, n, DEFAULT_GROUP_CAP)
}

pub fn enumerate_group_capped(t: CoxeterType, n: usize, cap: usize) -> Result<GroupEnumeration> {
    check_rank(t, n)?;
    let order = group_order(t, n);
    if order > cap as u128 {
        return Err(Error::CapExceeded(format!("|W({t}_{n})| = {order} exceeds cap {cap}")));
    }
    let gens = coxeter_generators(t, n)?;
    let mut elements = vec![SignedPerm::identity(n)];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut lengths = vec![0usize];
    let mut index = HashMap::new();
    index.insert(elements[0].clone(), 0usize);
    let mut layer = vec![0usize];
    let mut depth = 0;
    while !layer.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &w in &layer {
            for (s, g) in gens.iter().enumerate() {
                let x = elements[w].compose(g);
                if index.contains_key(&x) {
                    continue;
                }
                let id = elements.len();
                index.insert(x.clone(), id);
                let mut word = words[w].clone();
                word.push(s);
                elements.push(x);
                words.push(word);
                lengths.push(depth);
                next.push(id);
            }
        }
        layer = next;
    }
    debug_assert_eq!(elements.len() as u128, order);
    let left = gens.iter().map(|g| elements.iter().map(|w| index[&g.compose(w)]).collect()).collect();
    let right = gens.iter().map(|g| elements.iter().map(|w| index[&w.compose(g)]).collect()).collect();
    Ok(GroupEnumeration { ctype: t, n, generators: gens, elements, lengths, words, index, left, right })
}

impl GroupEnumeration {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, w: &SignedPerm) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn left_mul_gen(&self, s: usize, w: usize) -> usize {
        self.left[s][w]
    }

    pub fn right_mul_gen(&self, w: usize, s: usize) -> usize {
        self.right[s][w]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn longest(&self) -> usize {
        self.order() - 1
    }

    /// Generator positions of the simple reflections inside a composition's
    /// Young subgroup (the `s_i` with `i` and `i+1` in the same block).
    pub fn young_generator_positions(&self, lambda: &[usize]) -> Result<Vec<usize>> {
        check_composition(self.n, lambda)?;
        let offset = if self.ctype == CoxeterType::A { 0 } else { 1 };
        let mut out = Vec::new();
        let mut start = 1;
        for &part in lambda {
            for i in start..start + part.saturating_sub(1) {
                out.push(offset + i - 1);
            }
            start += part;
        }
        Ok(out)
    }

    /// Elements `d` with `ℓ(d·s) > ℓ(d)` for each listed generator: the
    /// minimal representatives of the left cosets `d·W_J`.
    pub fn min_left_coset_reps_for(&self, gens: &[usize]) -> Vec<usize> {
        (0..self.order()).filter(|&w| gens.iter().all(|&s| self.lengths[self.right[s][w]] > self.lengths[w])).collect()
    }

    /// Elements `d` with `ℓ(s·d) > ℓ(d)` for each listed generator: the
    /// minimal representatives of the right cosets `W_J·d`.
    pub fn min_right_coset_reps_for(&self, gens: &[usize]) -> Vec<usize> {
        (0..self.order()).filter(|&w| gens.iter().all(|&s| self.lengths[self.left[s][w]] > self.lengths[w])).collect()
    }

    /// Elements of the standard parabolic subgroup generated by `gens`.
    pub fn parabolic_elements(&self, gens: &[usize]) -> Vec<usize> {
        let set: HashSet<usize> = gens.iter().copied().collect();
        (0..self.order()).filter(|&w| self.words[w].iter().all(|s| set.contains(s))).collect()
    }
}

fn check_composition(n: usize, lambda: &[usize]) -> Result<()> {
    if lambda.iter().sum::<usize>() != n || lambda.contains(&0) {
        return Err(Error::BadComposition(format!("{lambda:?} is not a composition of {n}")));
    }
    Ok(())
}

/// A finite subgroup of signed permutations given by generators and its closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupData {
    pub label: String,
    pub n: usize,
    pub generators: Vec<SignedPerm>,
    /// Closure in breadth-first order from the identity.
    pub elements: Vec<SignedPerm>,
}

impl SubgroupData {
    pub fn generated(label: impl Into<String>, n: usize, generators: Vec<SignedPerm>) -> Result<Self> {
        Self::generated_capped(label, n, generators, DEFAULT_GROUP_CAP)
    }

    pub fn generated_capped(
        label: impl Into<String>,
        n: usize,
        generators: Vec<SignedPerm>,
        cap: usize,
    ) -> Result<Self> {
        let id = SignedPerm::identity(n);
        let mut seen: HashSet<SignedPerm> = HashSet::new();
        seen.insert(id.clone());
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let x = elements[i].compose(g);
                if seen.insert(x.clone()) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(format!("subgroup order exceeds cap {cap}")));
                    }
                    elements.push(x);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Ok(SubgroupData { label: label.into(), n, generators, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: &SignedPerm) -> bool {
        self.elements.contains(w)
    }

    pub fn element_set(&self) -> HashSet<SignedPerm> {
        self.elements.iter().cloned().collect()
    }
}

/// The Young subgroup `S_λ ⊆ S_n`.
pub fn young_subgroup(n: usize, lambda: &[usize]) -> Result<SubgroupData> {
    check_composition(n, lambda)?;
    let mut gens = Vec::new();
    let mut start = 1;
    for &part in lambda {
        for i in start..start + part - 1 {
            gens.push(SignedPerm::transposition(n, i, i + 1));
        }
        start += part;
    }
    let label = format!("S_{lambda:?}");
    SubgroupData::generated(label, n, gens)
}

/// Minimal-length representatives of the right cosets `W_λ·w`, in
/// (length, lex) order.
pub fn min_coset_reps(t: CoxeterType, n: usize, lambda: &[usize]) -> Result<Vec<SignedPerm>> {
    let g = enumerate_group(t, n)?;
    let gens = g.young_generator_positions(lambda)?;
    Ok(g.min_right_coset_reps_for(&gens).into_iter().map(|w| g.elements[w].clone()).collect())
}

/// The Sylow p-subgroup of S_n for `n < p²`, generated by disjoint p-cycles.
pub fn sylow_symmetric(n: usize, p: usize) -> Result<SubgroupData> {
    if n >= p * p {
        return Err(Error::RankTooLarge { n, p_squared: p * p });
    }
    let m = n / p;
    let gens: Vec<SignedPerm> =
        (0..m).map(|k| SignedPerm::cycle(n, &((k * p + 1)..=(k * p + p)).collect::<Vec<_>>())).collect();
    SubgroupData::generated(format!("Syl_{p}(S_{n})"), n, gens)
}

/// Double cosets `H·x·K` partitioning `g_elements`.
///
/// Each representative is the first element of its coset in the order of
/// `g_elements`; pass elements in (length, lex) order to get minimal
/// representatives.
pub fn double_cosets(
    g_elements: &[SignedPerm],
    h: &SubgroupData,
    k: &SubgroupData,
) -> Result<Vec<(SignedPerm, usize)>> {
    if g_elements.len() > DEFAULT_GROUP_CAP {
        return Err(Error::CapExceeded(format!("|G| = {} exceeds cap", g_elements.len())));
    }
    let mut assigned: HashSet<SignedPerm> = HashSet::new();
    let mut out = Vec::new();
    for x in g_elements {
        if assigned.contains(x) {
            continue;
        }
        let mut coset = HashSet::new();
        for a in &h.elements {
            let ax = a.compose(x);
            for b in &k.elements {
                coset.insert(ax.compose(b));
            }
        }
        out.push((x.clone(), coset.len()));
        assigned.extend(coset);
    }
    Ok(out)
}

/// A cyclic direct factor with its support and a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicFactor {
    pub support: Vec<usize>,
    pub generator: SignedPerm,
    pub order: usize,
}

/// Result of [`conjugate_intersection`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateIntersection {
    pub subgroup: SubgroupData,
    /// Factorization into cyclic groups on disjoint supports, when one exists.
    pub factors: Option<Vec<CyclicFactor>>,
    /// Why no factorization was produced.
    pub failure: Option<String>,
}

/// `P ∩ x·P·x⁻¹` with a disjoint-support cyclic factorization if possible.
pub fn conjugate_intersection(p: &SubgroupData, x: &SignedPerm) -> Result<ConjugateIntersection> {
    let pset = p.element_set();
    let xinv = x.inverse();
    let elems: Vec<SignedPerm> =
        p.elements.iter().filter(|g| pset.contains(&xinv.compose(g).compose(x))).cloned().collect();
    let sub = SubgroupData { label: format!("{} ∩ conj", p.label), n: p.n, generators: Vec::new(), elements: elems };
    // orbits of the intersection on points
    let n = p.n;
    let mut orbit_of = vec![usize::MAX; n + 1];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 1..=n {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut orb = vec![i];
        orbit_of[i] = orbits.len();
        let mut k = 0;
        while k < orb.len() {
            let pt = orb[k] as i16;
            for g in &sub.elements {
                let q = g.apply(pt).unsigned_abs() as usize;
                if orbit_of[q] == usize::MAX {
                    orbit_of[q] = orbits.len();
                    orb.push(q);
                }
            }
            k += 1;
        }
        orb.sort();
        orbits.push(orb);
    }
    let mut factors = Vec::new();
    let mut product = 1usize;
    for orb in orbits.iter().filter(|o| o.len() > 1) {
        let restricted: HashSet<Vec<i16>> =
            sub.elements.iter().map(|g| orb.iter().map(|&i| g.apply(i as i16)).collect()).collect();
        let size = restricted.len();
        product *= size;
        // a generator: an element whose restriction has order `size`
        let gen = sub.elements.iter().find(|g| {
            let mut r = restrict(g, orb);
            let mut k = 1;
            while !r.is_identity() {
                r = r.compose(&restrict(g, orb));
                k += 1;
            }
            k == size
        });
        match gen {
            Some(g) => factors.push(CyclicFactor { support: orb.clone(), generator: restrict(g, orb), order: size }),
            None => {
                return Ok(ConjugateIntersection {
                    subgroup: sub,
                    factors: None,
                    failure: Some(format!("restriction to orbit {orb:?} is not cyclic")),
                })
            }
        }
    }
    if product != sub.order() {
        return Ok(ConjugateIntersection {
            subgroup: sub.clone(),
            factors: None,
            failure: Some(format!(
                "orbit restrictions have total order {product} but the intersection has order {}",
                sub.order()
            )),
        });
    }
    let mut sub = sub;
    sub.generators = factors.iter().map(|f| f.generator.clone()).collect();
    Ok(ConjugateIntersection { subgroup: sub, factors: Some(factors), failure: None })
}

/// The permutation acting as `g` on `orbit` and trivially elsewhere.
fn restrict(g: &SignedPerm, orbit: &[usize]) -> SignedPerm {
    let mut w = SignedPerm::identity(g.degree());
    for &i in orbit {
        w.images[i - 1] = g.images[i - 1];
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_examples() {
        let a3 = coxeter_generators(CoxeterType::A, 3).unwrap();
        assert_eq!(a3.iter().map(|g| g.to_string()).collect::<Vec<_>>(), vec!["(1 2)", "(2 3)"]);
        let b2 = coxeter_generators(CoxeterType::B, 2).unwrap();
        assert_eq!(b2[0].to_string(), "(-1)");
        assert_eq!(SubgroupData::generated("B2", 2, b2).unwrap().order(), 8);
        let d4 = coxeter_generators(CoxeterType::D, 4).unwrap();
        assert_eq!(d4.len(), 4);
        assert_eq!(SubgroupData::generated("D4", 4, d4).unwrap().order(), 192);
        assert!(coxeter_generators(CoxeterType::D, 1).is_err());
    }

    #[test]
    fn enumeration_lengths_match_statistics() {
        for (t, n) in
            [(CoxeterType::A, 4), (CoxeterType::B, 2), (CoxeterType::B, 3), (CoxeterType::D, 4), (CoxeterType::A, 5)]
        {
            let g = enumerate_group(t, n).unwrap();
            assert_eq!(g.order() as u128, group_order(t, n));
            for (w, &l) in g.elements.iter().zip(&g.lengths) {
                assert_eq!(w.length(t), l, "{t}{n} {w}");
            }
        }
        let a4 = enumerate_group(CoxeterType::A, 4).unwrap();
        assert_eq!(*a4.lengths.iter().max().unwrap(), 6);
        let b2 = enumerate_group(CoxeterType::B, 2).unwrap();
        assert_eq!(*b2.lengths.iter().max().unwrap(), 4);
        let a3 = enumerate_group(CoxeterType::A, 3).unwrap();
        assert_eq!(a3.words[a3.longest()], vec![0, 1, 0]);
    }

    #[test]
    fn enumeration_is_length_lex_ordered() {
        let g = enumerate_group(CoxeterType::B, 3).unwrap();
        for i in 1..g.order() {
            assert!((g.lengths[i - 1], &g.words[i - 1]) < (g.lengths[i], &g.words[i]));
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(enumerate_group(CoxeterType::A, 8), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn young_subgroups_and_reps() {
        assert_eq!(young_subgroup(4, &[2, 2]).unwrap().order(), 4);
        assert_eq!(young_subgroup(3, &[3]).unwrap().order(), 6);
        assert_eq!(young_subgroup(3, &[2, 1]).unwrap().order(), 2);
        assert!(matches!(young_subgroup(3, &[2, 2]), Err(Error::BadComposition(_))));
        assert_eq!(min_coset_reps(CoxeterType::A, 4, &[2, 2]).unwrap().len(), 6);
        assert_eq!(min_coset_reps(CoxeterType::A, 3, &[3]).unwrap(), vec![SignedPerm::identity(3)]);
        let r = min_coset_reps(CoxeterType::A, 3, &[2, 1]).unwrap();
        let lens: Vec<usize> = r.iter().map(|w| w.inversions()).collect();
        assert_eq!(lens, vec![0, 1, 2]);
    }

    #[test]
    fn sylow_examples() {
        let p = sylow_symmetric(3, 2).unwrap();
        assert_eq!(p.order(), 2);
        assert_eq!(sylow_symmetric(6, 3).unwrap().order(), 9);
        assert_eq!(sylow_symmetric(5, 5).unwrap().generators[0].to_string(), "(1 2 3 4 5)");
        assert_eq!(sylow_symmetric(9, 3), Err(Error::RankTooLarge { n: 9, p_squared: 9 }));
    }

    #[test]
    fn double_coset_examples() {
        let g = enumerate_group(CoxeterType::A, 3).unwrap();
        let h = young_subgroup(3, &[2, 1]).unwrap();
        let dc = double_cosets(&g.elements, &h, &h).unwrap();
        let mut sizes: Vec<usize> = dc.iter().map(|d| d.1).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        let full = SubgroupData::generated("S3", 3, g.generators.clone()).unwrap();
        assert_eq!(double_cosets(&g.elements, &full, &full).unwrap().len(), 1);
        let triv = SubgroupData::generated("1", 3, vec![]).unwrap();
        assert_eq!(double_cosets(&g.elements, &triv, &triv).unwrap().len(), 6);
    }

    #[test]
    fn conjugate_intersection_examples() {
        let p = SubgroupData::generated("P", 3, vec![SignedPerm::transposition(3, 1, 2)]).unwrap();
        let same = conjugate_intersection(&p, &SignedPerm::identity(3)).unwrap();
        assert_eq!(same.subgroup.order(), 2);
        let triv = conjugate_intersection(&p, &SignedPerm::transposition(3, 1, 3)).unwrap();
        assert_eq!(triv.subgroup.order(), 1);
        assert_eq!(triv.factors, Some(vec![]));
        let p6 = sylow_symmetric(6, 3).unwrap();
        let x = SignedPerm::transposition(6, 1, 4)
            .compose(&SignedPerm::transposition(6, 2, 5))
            .compose(&SignedPerm::transposition(6, 3, 6));
        let ci = conjugate_intersection(&p6, &x).unwrap();
        assert_eq!(ci.subgroup.order(), 9);
        assert_eq!(ci.factors.unwrap().len(), 2);
    }
}
