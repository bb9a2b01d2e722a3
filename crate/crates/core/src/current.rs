//! The enveloping algebra of the current Lie algebra `gl_n[t]` over `F_p`,
//! used as the associated graded model of the Yangian.
//!
//! Basis letters `e_ij t^r` share the packed representation of the Yangian
//! generators (with `r` the power of `t`), so `chi: e_ij t^r -> gr t_ij^(r+1)`
//! preserves the PBW order letter by letter.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field;
use crate::pbw::{monomial_loop_degree, AlgebraContext, Element};
use crate::rewrite::{self, Accum, CurrentBracket, Gen, Terms, Word};
use crate::series::Composition;
use crate::shift::ShiftData;

/// `e_{a,b;i,j} t^r`, i.e. `e_{p_a + i, p_b + j} t^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurrentBasisElement {
    pub a: usize,
    pub b: usize,
    pub i: usize,
    pub j: usize,
    pub r: u32,
}

impl CurrentBasisElement {
    pub fn new(a: usize, b: usize, i: usize, j: usize, r: u32) -> CurrentBasisElement {
        CurrentBasisElement { a, b, i, j, r }
    }

    /// Matrix coordinates `(row, column)` in `gl_n`.
    pub fn global(&self, mu: &Composition) -> Result<(usize, usize)> {
        let m = mu.len();
        if self.a == 0 || self.b == 0 || self.a > m || self.b > m {
            return Err(Error::BadIndex(format!("block ({},{}) outside {mu}", self.a, self.b)));
        }
        if self.i == 0 || self.j == 0 || self.i > mu.part(self.a) || self.j > mu.part(self.b) {
            return Err(Error::BadIndex(format!(
                "inner index ({},{}) outside blocks ({},{}) of {mu}",
                self.i, self.j, self.a, self.b
            )));
        }
        Ok((mu.offset(self.a) + self.i, mu.offset(self.b) + self.j))
    }

    /// Whether `e_{a,b;i,j} t^r` lies in the shifted current algebra.
    pub fn in_shifted(&self, data: &ShiftData) -> bool {
        self.r >= data.s(self.a, self.b)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CurrentElement {
    ctx: AlgebraContext,
    terms: Terms,
}

impl CurrentElement {
    pub fn zero(ctx: AlgebraContext) -> CurrentElement {
        CurrentElement { ctx, terms: Vec::new() }
    }

    pub fn unit(ctx: AlgebraContext) -> CurrentElement {
        CurrentElement::scalar(ctx, 1)
    }

    pub fn scalar(ctx: AlgebraContext, c: i64) -> CurrentElement {
        let c = field::reduce(c, ctx.p());
        let terms = if c == 0 { Vec::new() } else { vec![(SmallVec::new(), c)] };
        CurrentElement { ctx, terms }
    }

    /// `e_ij t^r` in global coordinates.
    pub fn basis(ctx: AlgebraContext, i: usize, j: usize, r: u32) -> Result<CurrentElement> {
        ctx.check_index(i, j, r)?;
        Ok(CurrentElement { ctx, terms: vec![(SmallVec::from_slice(&[Gen::new(i, j, r)]), 1)] })
    }

    pub fn from_block(ctx: AlgebraContext, x: CurrentBasisElement, mu: &Composition) -> Result<CurrentElement> {
        let (i, j) = x.global(mu)?;
        CurrentElement::basis(ctx, i, j, x.r)
    }

    /// PBW normal form of a product of basis letters `(i, j, r)`.
    pub fn normalize(ctx: AlgebraContext, word: &[(usize, usize, u32)], coeff: i64) -> Result<CurrentElement> {
        let mut letters: Word = SmallVec::new();
        for &(i, j, r) in word {
            ctx.check_index(i, j, r)?;
            letters.push(Gen::new(i, j, r));
        }
        let mut acc = Accum::new();
        rewrite::mul_words_into::<CurrentBracket>(&[], &letters, field::reduce(coeff, ctx.p()), ctx.p(), &mut acc);
        Ok(CurrentElement { ctx, terms: acc.finish() })
    }

    pub fn ctx(&self) -> AlgebraContext {
        self.ctx
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

    /// Terms as `([(i, j, r)], coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<(usize, usize, u32)>, u32)> + '_ {
        self.terms
            .iter()
            .map(|(w, c)| (w.iter().map(|g| (g.i(), g.j(), g.r())).collect(), *c))
    }

    /// The largest monomial in the PBW order, with its coefficient.
    pub fn leading_monomial(&self) -> Option<(Vec<(usize, usize, u32)>, u32)> {
        self.terms().last()
    }

    fn check(&self, other: &CurrentElement) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch { left: self.ctx.to_string(), right: other.ctx.to_string() });
        }
        Ok(())
    }

    fn combine(&self, other: &CurrentElement, c: u32) -> CurrentElement {
        let p = self.ctx.p();
        let mut acc = Accum::new();
        for (w, d) in &self.terms {
            acc.add(w.clone(), *d, p);
        }
        for (w, d) in &other.terms {
            acc.add(w.clone(), field::mul(*d, c, p), p);
        }
        CurrentElement { ctx: self.ctx, terms: acc.finish() }
    }

    pub fn try_add(&self, other: &CurrentElement) -> Result<CurrentElement> {
        self.check(other)?;
        Ok(self.combine(other, 1))
    }

    pub fn try_sub(&self, other: &CurrentElement) -> Result<CurrentElement> {
        self.check(other)?;
        Ok(self.combine(other, self.ctx.p() - 1))
    }

    pub fn try_mul(&self, other: &CurrentElement) -> Result<CurrentElement> {
        self.check(other)?;
        let p = self.ctx.p();
        let mut acc = Accum::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                rewrite::mul_words_into::<CurrentBracket>(a, b, field::mul(*ca, *cb, p), p, &mut acc);
            }
        }
        Ok(CurrentElement { ctx: self.ctx, terms: acc.finish() })
    }

    pub fn commutator(&self, other: &CurrentElement) -> Result<CurrentElement> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn scale(&self, c: i64) -> CurrentElement {
        let p = self.ctx.p();
        let c = field::reduce(c, p);
        let terms = if c == 0 {
            Vec::new()
        } else {
            self.terms.iter().map(|(w, d)| (w.clone(), field::mul(*d, c, p))).collect()
        };
        CurrentElement { ctx: self.ctx, terms }
    }

    pub fn pow(&self, k: u32) -> CurrentElement {
        let mut acc = CurrentElement::unit(self.ctx);
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same context");
        }
        acc
    }
}

impl fmt::Debug for CurrentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CurrentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let c = field::lift(*c, self.ctx.p());
            if k > 0 {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            if w.is_empty() || c.abs() != 1 {
                write!(f, "{}", c.abs())?;
                if !w.is_empty() {
                    write!(f, " ")?;
                }
            }
            let letters: Vec<String> = w.iter().map(|g| format!("e[{},{}]t^{}", g.i(), g.j(), g.r())).collect();
            write!(f, "{}", letters.join(" "))?;
        }
        Ok(())
    }
}

/// `[e_{a,b;i,j} t^r, e_{c,d;k,l} t^s]` in global coordinates.
pub fn current_bracket(
    ctx: AlgebraContext,
    x: CurrentBasisElement,
    y: CurrentBasisElement,
    mu: &Composition,
) -> Result<CurrentElement> {
    let (i, j) = x.global(mu)?;
    let (k, l) = y.global(mu)?;
    let r = x.r + y.r;
    let mut out = CurrentElement::zero(ctx);
    if j == k {
        out = out.try_add(&CurrentElement::basis(ctx, i, l, r)?)?;
    }
    if l == i {
        out = out.try_sub(&CurrentElement::basis(ctx, k, j, r)?)?;
    }
    Ok(out)
}

/// Image under `chi^{-1}` of the degree-`d` part of `x`, which must lie in
/// filtration degree `d`.
pub fn gr_identify(x: &Element, d: usize) -> Result<CurrentElement> {
    if let Some(deg) = x.loop_degree() {
        if deg > d {
            return Err(Error::DegreeOverflow { actual: deg, requested: d });
        }
    }
    let terms = x
        .raw_terms()
        .iter()
        .filter(|(w, _)| monomial_loop_degree(w) == d)
        .map(|(w, c)| (w.iter().map(|g| Gen::new(g.i(), g.j(), g.r() - 1)).collect(), *c))
        .collect();
    Ok(CurrentElement { ctx: x.ctx(), terms })
}

/// `z_r = sum_i e_ii t^r`.
pub fn z(ctx: AlgebraContext, r: u32) -> CurrentElement {
    let mut out = CurrentElement::zero(ctx);
    for i in 1..=ctx.n() {
        out = out.try_add(&CurrentElement::basis(ctx, i, i, r).expect("diagonal index")).expect("same context");
    }
    out
}

/// `(e t^r)^p - (e t^r)^[p]`, where the restricted power is `e_ii t^{rp}` on
/// diagonal letters and zero otherwise.
pub fn p_power_generator(ctx: AlgebraContext, i: usize, j: usize, r: u32) -> Result<CurrentElement> {
    let p = ctx.p();
    let e = CurrentElement::basis(ctx, i, j, r)?;
    let mut out = e.pow(p);
    if i == j {
        out = out.try_sub(&CurrentElement::basis(ctx, i, i, r * p)?)?;
    }
    Ok(out)
}

/// A labelled central element of `U(g_sigma)`.
#[derive(Clone, Debug)]
pub struct CurrentCentralElement {
    pub label: String,
    pub element: CurrentElement,
}

/// `z_r` for `r <= budget`, and the p-power generators `(e t^r)^p - delta e t^{rp}`
/// for every basis letter of `g_sigma` with `r p <= budget`.
pub fn current_center_generators(ctx: AlgebraContext, data: &ShiftData, budget: u32) -> Result<Vec<CurrentCentralElement>> {
    let mu = data.mu();
    let mut out = Vec::new();
    for r in 0..=budget {
        out.push(CurrentCentralElement { label: format!("z_{r}"), element: z(ctx, r) });
    }
    for x in shifted_basis(data, budget / ctx.p()) {
        let (i, j) = x.global(mu)?;
        out.push(CurrentCentralElement {
            label: format!("p-power e[{},{};{},{}]t^{}", x.a, x.b, x.i, x.j, x.r),
            element: p_power_generator(ctx, i, j, x.r)?,
        });
    }
    Ok(out)
}

/// Basis letters `e_{a,b;i,j} t^r` of `g_sigma` with `r <= max_r`.
pub fn shifted_basis(data: &ShiftData, max_r: u32) -> Vec<CurrentBasisElement> {
    let mu = data.mu();
    let m = mu.len();
    let mut out = Vec::new();
    for a in 1..=m {
        for b in 1..=m {
            for r in data.s(a, b)..=max_r {
                for i in 1..=mu.part(a) {
                    for j in 1..=mu.part(b) {
                        out.push(CurrentBasisElement::new(a, b, i, j, r));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::ShiftMatrix;

    fn ctx(n: usize, p: u32) -> AlgebraContext {
        AlgebraContext::new(n, p).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let c = ctx(2, 5);
        let mu = Composition::ones(2);
        let x = CurrentBasisElement::new(1, 2, 1, 1, 1);
        let y = CurrentBasisElement::new(2, 1, 1, 1, 1);
        let got = current_bracket(c, x, y, &mu).unwrap();
        let want = CurrentElement::basis(c, 1, 1, 2).unwrap().try_sub(&CurrentElement::basis(c, 2, 2, 2).unwrap()).unwrap();
        assert_eq!(got, want);
        assert!(current_bracket(c, x, x, &mu).unwrap().is_zero());
        let d = CurrentBasisElement::new(1, 1, 1, 1, 0);
        let e22 = CurrentBasisElement::new(2, 2, 1, 1, 3);
        assert!(current_bracket(c, d, e22, &mu).unwrap().is_zero());
    }

    #[test]
    fn bracket_agrees_with_enveloping_commutator() {
        let c = ctx(3, 3);
        let mu = Composition::new(vec![1, 2]).unwrap();
        let letters = [
            CurrentBasisElement::new(1, 2, 1, 2, 1),
            CurrentBasisElement::new(2, 1, 2, 1, 0),
            CurrentBasisElement::new(2, 2, 1, 2, 2),
            CurrentBasisElement::new(1, 1, 1, 1, 1),
        ];
        for x in letters {
            for y in letters {
                let ex = CurrentElement::from_block(c, x, &mu).unwrap();
                let ey = CurrentElement::from_block(c, y, &mu).unwrap();
                assert_eq!(ex.commutator(&ey).unwrap(), current_bracket(c, x, y, &mu).unwrap());
            }
        }
    }

    #[test]
    fn gr_identify_examples() {
        let c = ctx(2, 3);
        let x = Element::generator(c, 1, 1, 2).unwrap();
        assert_eq!(gr_identify(&x, 1).unwrap(), CurrentElement::basis(c, 1, 1, 1).unwrap());
        let y = &Element::generator(c, 1, 2, 1).unwrap() * &Element::generator(c, 2, 1, 1).unwrap();
        let want = CurrentElement::normalize(c, &[(1, 2, 0), (2, 1, 0)], 1).unwrap();
        assert_eq!(gr_identify(&y, 0).unwrap(), want);
        assert!(matches!(gr_identify(&x, 0), Err(Error::DegreeOverflow { actual: 1, requested: 0 })));

        let br = Element::generator(c, 1, 2, 2).unwrap().commutator(&Element::generator(c, 2, 1, 1).unwrap()).unwrap();
        let mu = Composition::ones(2);
        let model = current_bracket(
            c,
            CurrentBasisElement::new(1, 2, 1, 1, 1),
            CurrentBasisElement::new(2, 1, 1, 1, 0),
            &mu,
        )
        .unwrap();
        assert_eq!(gr_identify(&br, 1).unwrap(), model);
    }

    #[test]
    fn center_generator_examples() {
        let c = ctx(2, 3);
        let z0 = z(c, 0);
        let want = CurrentElement::basis(c, 1, 1, 0).unwrap().try_add(&CurrentElement::basis(c, 2, 2, 0).unwrap()).unwrap();
        assert_eq!(z0, want);
        let e = CurrentElement::basis(c, 1, 1, 0).unwrap();
        assert_eq!(p_power_generator(c, 1, 1, 0).unwrap(), e.pow(3).try_sub(&e).unwrap());
        let f = CurrentElement::basis(c, 1, 2, 1).unwrap();
        assert_eq!(p_power_generator(c, 1, 2, 1).unwrap(), f.pow(3));
    }

    #[test]
    fn center_generators_commute_with_shifted_basis() {
        let c = ctx(2, 3);
        for sigma in ["zero", "0,1;0,0"] {
            let data = ShiftData::new(ShiftMatrix::parse(sigma, 2).unwrap(), Composition::ones(2)).unwrap();
            let gens = current_center_generators(c, &data, 3).unwrap();
            for g in &gens {
                for x in shifted_basis(&data, 2) {
                    let ex = CurrentElement::from_block(c, x, data.mu()).unwrap();
                    assert!(g.element.commutator(&ex).unwrap().is_zero(), "{} vs {:?}", g.label, x);
                }
            }
        }
    }
}
