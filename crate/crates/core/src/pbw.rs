//! Exact arithmetic in the Yangian `Y_n` over `F_p`.
//!
//! Elements are finite linear combinations of PBW monomials in the RTT
//! generators `t_ij^(r)`, `r >= 1`, with letters sorted by `(r, i, j)`.
//! Multiplication straightens words with the RTT relation (see
//! [`crate::rewrite`]); the result is always in canonical form, so equality
//! of elements is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field;
use crate::rewrite::{self, Accum, Gen, Rtt, Terms, Word};

/// Matrix size `n` and characteristic `p` of the Yangian being computed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraContext {
    n: usize,
    p: u32,
}

impl AlgebraContext {
    pub fn new(n: usize, p: u32) -> Result<AlgebraContext> {
        field::check_characteristic(p)?;
        if n == 0 || n > 64 {
            return Err(Error::BadRank(n));
        }
        Ok(AlgebraContext { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Same characteristic, different rank.
    pub fn with_rank(&self, n: usize) -> Result<AlgebraContext> {
        AlgebraContext::new(n, self.p)
    }

    pub(crate) fn check_index(&self, i: usize, j: usize, r: u32) -> Result<()> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::IndexOutOfRange { i, j, r, n: self.n });
        }
        Ok(())
    }
}

impl fmt::Display for AlgebraContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y_{} over F_{}", self.n, self.p)
    }
}

/// The label of the RTT generator `t_ij^(r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneratorIndex {
    pub i: usize,
    pub j: usize,
    pub r: u32,
}

impl GeneratorIndex {
    pub fn new(i: usize, j: usize, r: u32) -> GeneratorIndex {
        GeneratorIndex { i, j, r }
    }

    pub(crate) fn gen(self) -> Gen {
        Gen::new(self.i, self.j, self.r)
    }
}

impl From<Gen> for GeneratorIndex {
    fn from(g: Gen) -> Self {
        GeneratorIndex { i: g.i(), j: g.j(), r: g.r() }
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{},{}]^({})", self.i, self.j, self.r)
    }
}

/// A PBW monomial: letters non-decreasing in `(r, i, j)`.
pub type Monomial = Word;

pub fn monomial_loop_degree(w: &[Gen]) -> usize {
    w.iter().map(|g| g.r() as usize - 1).sum()
}

pub fn monomial_weight(w: &[Gen]) -> usize {
    w.iter().map(|g| g.r() as usize).sum()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    ctx: AlgebraContext,
    terms: Terms,
}

impl Element {
    pub fn zero(ctx: AlgebraContext) -> Element {
        Element { ctx, terms: Vec::new() }
    }

    pub fn unit(ctx: AlgebraContext) -> Element {
        Element::scalar(ctx, 1)
    }

    pub fn scalar(ctx: AlgebraContext, c: i64) -> Element {
        let c = field::reduce(c, ctx.p);
        let terms = if c == 0 { Vec::new() } else { vec![(SmallVec::new(), c)] };
        Element { ctx, terms }
    }

    /// `t_ij^(r)`; `r = 0` gives the scalar `delta_ij`.
    pub fn generator(ctx: AlgebraContext, i: usize, j: usize, r: u32) -> Result<Element> {
        ctx.check_index(i, j, r)?;
        if r == 0 {
            return Ok(Element::scalar(ctx, (i == j) as i64));
        }
        Ok(Element { ctx, terms: vec![(SmallVec::from_slice(&[Gen::new(i, j, r)]), 1)] })
    }

    /// PBW normal form of `coeff * word` for an arbitrary word.
    pub fn normalize(ctx: AlgebraContext, word: &[GeneratorIndex], coeff: i64) -> Result<Element> {
        let mut c = field::reduce(coeff, ctx.p);
        let mut letters: Word = SmallVec::new();
        for g in word {
            ctx.check_index(g.i, g.j, g.r)?;
            if g.r == 0 {
                if g.i != g.j {
                    c = 0;
                }
            } else {
                letters.push(g.gen());
            }
        }
        let mut acc = Accum::new();
        rewrite::mul_words_into::<Rtt>(&[], &letters, c, ctx.p, &mut acc);
        Ok(Element { ctx, terms: acc.finish() })
    }

    pub(crate) fn from_accum(ctx: AlgebraContext, acc: Accum) -> Element {
        Element { ctx, terms: acc.finish() }
    }

    pub fn ctx(&self) -> AlgebraContext {
        self.ctx
    }

    pub fn p(&self) -> u32 {
        self.ctx.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn raw_terms(&self) -> &[(Word, u32)] {
        &self.terms
    }

    /// Terms as `(letters, coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<GeneratorIndex>, u32)> + '_ {
        self.terms
            .iter()
            .map(|(w, c)| (w.iter().map(|&g| GeneratorIndex::from(g)).collect(), *c))
    }

    /// Coefficient of the given PBW monomial (zero if absent).
    pub fn coefficient(&self, word: &[GeneratorIndex]) -> u32 {
        let w: Word = word.iter().map(|g| g.gen()).collect();
        self.terms
            .binary_search_by(|(m, _)| m.cmp(&w))
            .map(|k| self.terms[k].1)
            .unwrap_or(0)
    }

    /// Constant (empty-word) coefficient.
    pub fn constant_term(&self) -> u32 {
        match self.terms.first() {
            Some((w, c)) if w.is_empty() => *c,
            _ => 0,
        }
    }

    /// Largest loop degree `sum (r - 1)` among the terms; `None` for zero.
    pub fn loop_degree(&self) -> Option<usize> {
        self.terms.iter().map(|(w, _)| monomial_loop_degree(w)).max()
    }

    /// Largest total superscript `sum r` among the terms.
    pub fn weight(&self) -> usize {
        self.terms.iter().map(|(w, _)| monomial_weight(w)).max().unwrap_or(0)
    }

    /// Largest superscript of any letter.
    pub fn max_superscript(&self) -> u32 {
        self.terms.iter().flat_map(|(w, _)| w.iter().map(|g| g.r())).max().unwrap_or(0)
    }

    /// Sum of the terms of loop degree exactly `d`.
    pub fn gr_component(&self, d: usize) -> Element {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| monomial_loop_degree(w) == d)
            .cloned()
            .collect();
        Element { ctx: self.ctx, terms }
    }

    fn check_ctx(&self, other: &Element) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_ctx(other)?;
        Ok(self.combine(other, 1))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.check_ctx(other)?;
        Ok(self.combine(other, self.ctx.p - 1))
    }

    /// `self + c * other` by merging sorted term lists.
    fn combine(&self, other: &Element, c: u32) -> Element {
        let p = self.ctx.p;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            let ord = match (a.get(x), b.get(y)) {
                (Some(s), Some(t)) => s.0.cmp(&t.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(a[x].clone());
                    x += 1;
                }
                std::cmp::Ordering::Greater => {
                    let v = field::mul(b[y].1, c, p);
                    if v != 0 {
                        out.push((b[y].0.clone(), v));
                    }
                    y += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = field::add(a[x].1, field::mul(b[y].1, c, p), p);
                    if v != 0 {
                        out.push((a[x].0.clone(), v));
                    }
                    x += 1;
                    y += 1;
                }
            }
        }
        Element { ctx: self.ctx, terms: out }
    }

    pub fn add_assign_scaled(&mut self, other: &Element, c: i64) {
        let c = field::reduce(c, self.ctx.p);
        *self = self.combine(other, c);
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check_ctx(other)?;
        let p = self.ctx.p;
        if self.is_zero() || other.is_zero() {
            return Ok(Element::zero(self.ctx));
        }
        let mut acc = Accum::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                rewrite::mul_words_into::<Rtt>(a, b, field::mul(*ca, *cb, p), p, &mut acc);
            }
        }
        Ok(Element { ctx: self.ctx, terms: acc.finish() })
    }

    /// Adds `c * self * other` into an accumulator without materializing the product.
    pub(crate) fn mul_into(&self, other: &Element, c: u32, acc: &mut Accum) {
        let p = self.ctx.p;
        for (a, ca) in &self.terms {
            let cac = field::mul(*ca, c, p);
            for (b, cb) in &other.terms {
                rewrite::mul_words_into::<Rtt>(a, b, field::mul(cac, *cb, p), p, acc);
            }
        }
    }

    pub(crate) fn add_into(&self, c: u32, acc: &mut Accum) {
        let p = self.ctx.p;
        for (w, d) in &self.terms {
            acc.add(w.clone(), field::mul(*d, c, p), p);
        }
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &Element) -> Result<Element> {
        let xy = self.try_mul(other)?;
        let yx = other.try_mul(self)?;
        xy.try_sub(&yx)
    }

    pub fn scale(&self, c: i64) -> Element {
        let c = field::reduce(c, self.ctx.p);
        self.scale_raw(c)
    }

    pub(crate) fn scale_raw(&self, c: u32) -> Element {
        if c == 0 {
            return Element::zero(self.ctx);
        }
        let p = self.ctx.p;
        Element {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(w, d)| (w.clone(), field::mul(*d, c, p))).collect(),
        }
    }

    /// `x^k` by repeated multiplication; `k = 0` is the unit.
    pub fn pow(&self, k: u32) -> Element {
        let mut acc = Element::unit(self.ctx);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Linear extension of a generator substitution. With `anti` set, each
    /// word is reversed before its images are multiplied.
    pub fn apply_generator_map<F>(&self, target: AlgebraContext, anti: bool, images: F) -> Result<Element>
    where
        F: Fn(GeneratorIndex) -> Option<Element>,
    {
        if target.p != self.ctx.p {
            return Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: target.to_string(),
            });
        }
        let mut cache: rustc_hash::FxHashMap<Gen, Element> = Default::default();
        let mut out = Element::zero(target);
        for (w, c) in &self.terms {
            let mut prod = Element::scalar(target, *c as i64);
            let letters: Vec<Gen> =
                if anti { w.iter().rev().copied().collect() } else { w.to_vec() };
            for g in letters {
                if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(g) {
                    let gi = GeneratorIndex::from(g);
                    let img = images(gi).ok_or(Error::MissingImage { i: gi.i, j: gi.j, r: gi.r })?;
                    if img.ctx != target {
                        return Err(Error::ContextMismatch {
                            left: img.ctx.to_string(),
                            right: target.to_string(),
                        });
                    }
                    e.insert(img);
                }
                prod = &prod * &cache[&g];
                if prod.is_zero() {
                    break;
                }
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// A random combination of `terms` words, each of length `<= max_len`
    /// in generators with superscript `<= max_r`.
    pub fn random<R: rand::Rng>(ctx: AlgebraContext, rng: &mut R, max_r: u32, max_len: usize, terms: usize) -> Element {
        let mut out = Element::zero(ctx);
        for _ in 0..terms {
            let len = rng.gen_range(0..=max_len);
            let word: Vec<GeneratorIndex> = (0..len)
                .map(|_| {
                    GeneratorIndex::new(rng.gen_range(1..=ctx.n), rng.gen_range(1..=ctx.n), rng.gen_range(1..=max_r))
                })
                .collect();
            let c = rng.gen_range(1..ctx.p) as i64;
            out = &out + &Element::normalize(ctx, &word, c).expect("indices are in range");
        }
        out
    }

    /// The same element viewed in a Yangian of larger rank (indices unchanged).
    pub fn embed(&self, target: AlgebraContext) -> Result<Element> {
        if target.p != self.ctx.p || target.n < self.ctx.n {
            return Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: target.to_string(),
            });
        }
        Ok(Element { ctx: target, terms: self.terms.clone() })
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let c = field::lift(*c, self.ctx.p);
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if w.is_empty() {
                write!(f, "{a}")?;
                continue;
            }
            if a != 1 {
                write!(f, "{a} ")?;
            }
            for (q, g) in w.iter().enumerate() {
                if q > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", GeneratorIndex::from(*g))?;
            }
        }
        Ok(())
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("element addition")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("element subtraction")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("element multiplication")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1)
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize, p: u32) -> AlgebraContext {
        AlgebraContext::new(n, p).unwrap()
    }

    fn t(c: AlgebraContext, i: usize, j: usize, r: u32) -> Element {
        Element::generator(c, i, j, r).unwrap()
    }

    fn gi(i: usize, j: usize, r: u32) -> GeneratorIndex {
        GeneratorIndex::new(i, j, r)
    }

    #[test]
    fn normalize_examples() {
        let c = ctx(2, 5);
        let single = Element::normalize(c, &[gi(1, 1, 1)], 1).unwrap();
        assert_eq!(single, t(c, 1, 1, 1));

        // t21 t12 -> t12 t21 - t11 + t22 (hand substitution, r = s = 1)
        let swapped = Element::normalize(c, &[gi(2, 1, 1), gi(1, 2, 1)], 1).unwrap();
        let want = &(&(&t(c, 1, 2, 1) * &t(c, 2, 1, 1)) - &t(c, 1, 1, 1)) + &t(c, 2, 2, 1);
        assert_eq!(swapped, want);
        assert_eq!(swapped.coefficient(&[gi(1, 2, 1), gi(2, 1, 1)]), 1);
        assert_eq!(swapped.coefficient(&[gi(1, 1, 1)]), 4);

        assert_eq!(Element::normalize(c, &[], 1).unwrap(), Element::unit(c));
    }

    #[test]
    fn superscript_zero_is_delta() {
        let c = ctx(2, 3);
        assert_eq!(Element::normalize(c, &[gi(1, 1, 0), gi(1, 2, 1)], 1).unwrap(), t(c, 1, 2, 1));
        assert!(Element::normalize(c, &[gi(1, 2, 0), gi(1, 2, 1)], 1).unwrap().is_zero());
    }

    #[test]
    fn out_of_range_index_is_rejected() {
        let c = ctx(2, 3);
        assert!(matches!(
            Element::normalize(c, &[gi(3, 1, 1)], 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(Element::generator(c, 0, 1, 1).is_err());
    }

    #[test]
    fn multiply_examples() {
        let c = ctx(2, 3);
        let x = &t(c, 1, 1, 1) + &t(c, 2, 1, 2);
        assert_eq!(&Element::unit(c) * &x, x);
        let ordered = &t(c, 1, 1, 1) * &t(c, 1, 1, 2);
        assert_eq!(ordered.len(), 1);
        assert_eq!(ordered.coefficient(&[gi(1, 1, 1), gi(1, 1, 2)]), 1);
        let prod = &t(c, 2, 1, 1) * &t(c, 1, 2, 1);
        assert_eq!(prod, Element::normalize(c, &[gi(2, 1, 1), gi(1, 2, 1)], 1).unwrap());
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = Element::unit(ctx(2, 3));
        let b = Element::unit(ctx(2, 5));
        assert!(matches!(a.try_mul(&b), Err(Error::ContextMismatch { .. })));
        assert!(a.try_add(&Element::unit(ctx(3, 3))).is_err());
    }

    #[test]
    fn commutator_examples() {
        let c = ctx(2, 5);
        assert!(t(c, 1, 1, 1).commutator(&t(c, 1, 1, 2)).unwrap().is_zero());
        let br = t(c, 1, 2, 1).commutator(&t(c, 2, 1, 1)).unwrap();
        assert_eq!(br, &t(c, 1, 1, 1) - &t(c, 2, 2, 1));
        let x = &(&t(c, 1, 2, 2) * &t(c, 2, 1, 1)) + &t(c, 2, 2, 3).scale(2);
        assert!(x.commutator(&x).unwrap().is_zero());
    }

    #[test]
    fn cube_of_single_generator() {
        let c = ctx(2, 3);
        let cube = t(c, 1, 2, 1).pow(3);
        assert_eq!(cube.len(), 1);
        assert_eq!(cube.coefficient(&[gi(1, 2, 1); 3]), 1);
        assert_eq!(Element::unit(c).pow(3), Element::unit(c));
    }

    #[test]
    fn gr_component_examples() {
        let c = ctx(2, 3);
        let x = &(&t(c, 1, 1, 2) * &t(c, 1, 1, 1)) + &t(c, 1, 2, 1);
        assert_eq!(x.gr_component(1), &t(c, 1, 1, 2) * &t(c, 1, 1, 1));
        assert_eq!(x.loop_degree(), Some(1));
        assert!(x.gr_component(2).is_zero());
        assert_eq!(Element::zero(c).loop_degree(), None);
    }

    #[test]
    fn generator_maps() {
        let c = ctx(3, 5);
        let x = &t(c, 1, 2, 1) * &t(c, 2, 3, 2);
        let id = x.apply_generator_map(c, false, |g| Element::generator(c, g.i, g.j, g.r).ok()).unwrap();
        assert_eq!(id, x);
        let tau = x.apply_generator_map(c, true, |g| Element::generator(c, g.j, g.i, g.r).ok()).unwrap();
        assert_eq!(tau, &t(c, 3, 2, 2) * &t(c, 2, 1, 1));
        let swap = |k: usize| match k {
            1 => 2,
            2 => 1,
            k => k,
        };
        let w = t(c, 1, 1, 4)
            .apply_generator_map(c, false, |g| Element::generator(c, swap(g.i), swap(g.j), g.r).ok())
            .unwrap();
        assert_eq!(w, t(c, 2, 2, 4));
        let missing = x.apply_generator_map(c, false, |_| None);
        assert!(matches!(missing, Err(Error::MissingImage { .. })));
    }

    #[test]
    fn display_is_readable() {
        let c = ctx(2, 5);
        let x = &t(c, 1, 2, 1).commutator(&t(c, 2, 1, 1)).unwrap() + &Element::scalar(c, 2);
        assert_eq!(x.to_string(), "2 + t[1,1]^(1) - t[2,2]^(1)");
    }
}
