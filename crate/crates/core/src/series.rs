//! Truncated power series in `u^{-1}` with Yangian coefficients, matrices of
//! them, and block Gauss decomposition.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `u^0, ..., u^{-N}`. Every operation here is lower triangular in the
//! coefficient index, so retained coefficients are always exact.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field;
use crate::pbw::{AlgebraContext, Element};
use crate::rewrite::Accum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    ctx: AlgebraContext,
    coeffs: Vec<Element>,
}

impl TruncatedSeries {
    pub fn zero(ctx: AlgebraContext, order: usize) -> TruncatedSeries {
        TruncatedSeries { ctx, coeffs: vec![Element::zero(ctx); order + 1] }
    }

    pub fn one(ctx: AlgebraContext, order: usize) -> TruncatedSeries {
        TruncatedSeries::constant(Element::unit(ctx), order)
    }

    pub fn constant(x: Element, order: usize) -> TruncatedSeries {
        let ctx = x.ctx();
        let mut s = TruncatedSeries::zero(ctx, order);
        s.coeffs[0] = x;
        s
    }

    /// Builds a series from `coeffs[r]` = coefficient of `u^{-r}`; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(ctx: AlgebraContext, coeffs: Vec<Element>) -> Result<TruncatedSeries> {
        if coeffs.is_empty() {
            return Err(Error::Shape("a series needs at least its constant term".into()));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.ctx() != ctx) {
            return Err(Error::ContextMismatch { left: ctx.to_string(), right: bad.ctx().to_string() });
        }
        Ok(TruncatedSeries { ctx, coeffs })
    }

    /// `t_ij(u) = delta_ij + sum_r t_ij^(r) u^{-r}`.
    pub fn rtt(ctx: AlgebraContext, i: usize, j: usize, order: usize) -> Result<TruncatedSeries> {
        let coeffs = (0..=order)
            .map(|r| Element::generator(ctx, i, j, r as u32))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries { ctx, coeffs })
    }

    pub fn ctx(&self) -> AlgebraContext {
        self.ctx
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `u^{-r}`; zero past the truncation order is *not* implied,
    /// so asking for it is an error.
    pub fn coeff(&self, r: usize) -> Result<&Element> {
        self.coeffs
            .get(r)
            .ok_or(Error::Budget { requested: r, available: self.order() })
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Element> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Element::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Result<TruncatedSeries> {
        if order > self.order() {
            return Err(Error::TruncationMismatch(order, self.order()));
        }
        Ok(TruncatedSeries { ctx: self.ctx, coeffs: self.coeffs[..=order].to_vec() })
    }

    fn check(&self, other: &TruncatedSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::TruncationMismatch(self.order(), other.order()));
        }
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch { left: self.ctx.to_string(), right: other.ctx.to_string() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeries { ctx: self.ctx, coeffs })
    }

    pub fn try_sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncatedSeries { ctx: self.ctx, coeffs })
    }

    /// Cauchy product; coefficients of `self` stay on the left.
    pub fn try_mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(other)?;
        let n = self.order();
        let coeffs = (0..=n)
            .map(|r| {
                let mut acc = Accum::new();
                for s in 0..=r {
                    self.coeffs[s].mul_into(&other.coeffs[r - s], 1, &mut acc);
                }
                Element::from_accum(self.ctx, acc)
            })
            .collect();
        Ok(TruncatedSeries { ctx: self.ctx, coeffs })
    }

    pub fn scale(&self, c: i64) -> TruncatedSeries {
        TruncatedSeries { ctx: self.ctx, coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect() }
    }

    /// Multiplies every coefficient by `x` on the left.
    pub fn left_mul_element(&self, x: &Element) -> Result<TruncatedSeries> {
        let coeffs = self.coeffs.iter().map(|c| x.try_mul(c)).collect::<Result<_>>()?;
        Ok(TruncatedSeries { ctx: self.ctx, coeffs })
    }

    /// `f(u + c)`, expanding `(u + c)^{-r} = sum_k binom(r + k - 1, k) (-c)^k u^{-r-k}`.
    pub fn shift(&self, c: i64) -> TruncatedSeries {
        if c == 0 {
            return self.clone();
        }
        let p = self.ctx.p();
        let n = self.order();
        let minus_c = field::reduce(-c, p);
        let mut out: Vec<Accum> = (0..=n).map(|_| Accum::new()).collect();
        self.coeffs[0].add_into(1, &mut out[0]);
        for r in 1..=n {
            if self.coeffs[r].is_zero() {
                continue;
            }
            for k in 0..=n - r {
                let b = field::binomial_mod_p((r + k - 1) as u64, k as u64, p);
                let w = field::mul(b, field::pow(minus_c, k as u64, p), p);
                if w != 0 {
                    self.coeffs[r].add_into(w, &mut out[r + k]);
                }
            }
        }
        TruncatedSeries {
            ctx: self.ctx,
            coeffs: out.into_iter().map(|a| Element::from_accum(self.ctx, a)).collect(),
        }
    }

    /// `f(-u)`.
    pub fn negate_argument(&self) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(r, x)| if r % 2 == 1 { x.scale(-1) } else { x.clone() })
            .collect();
        TruncatedSeries { ctx: self.ctx, coeffs }
    }

    /// Two-sided inverse of a series with constant term 1, via
    /// `g_r = -sum_{s=1..r} f_s g_{r-s}`.
    pub fn inverse(&self) -> Result<TruncatedSeries> {
        if self.coeffs[0] != Element::unit(self.ctx) {
            return Err(Error::Singular);
        }
        let n = self.order();
        let p = self.ctx.p();
        let mut g: Vec<Element> = vec![Element::unit(self.ctx)];
        for r in 1..=n {
            let mut acc = Accum::new();
            for s in 1..=r {
                self.coeffs[s].mul_into(&g[r - s], p - 1, &mut acc);
            }
            g.push(Element::from_accum(self.ctx, acc));
        }
        Ok(TruncatedSeries { ctx: self.ctx, coeffs: g })
    }

    /// `f^k`, with `f^0` the unit series.
    pub fn pow(&self, k: u32) -> Result<TruncatedSeries> {
        let mut acc = TruncatedSeries::one(self.ctx, self.order());
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }
}

/// A composition `mu = (mu_1, ..., mu_m)` of `n` into positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Composition> {
        let n = parts.iter().sum();
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::BadComposition { parts, n });
        }
        Ok(Composition { parts })
    }

    pub fn checked(parts: Vec<usize>, n: usize) -> Result<Composition> {
        if parts.iter().sum::<usize>() != n {
            return Err(Error::BadComposition { parts, n });
        }
        Composition::new(parts)
    }

    /// `(1, 1, ..., 1)`.
    pub fn ones(n: usize) -> Composition {
        Composition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of blocks `m`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `mu_a` for a 1-based block index.
    pub fn part(&self, a: usize) -> usize {
        self.parts[a - 1]
    }

    /// Partial sum `p_a = mu_1 + ... + mu_{a-1}`, so block `a` occupies rows
    /// `p_a + 1 ..= p_a + mu_a`.
    pub fn offset(&self, a: usize) -> usize {
        self.parts[..a - 1].iter().sum()
    }

    /// All compositions of `n`, in lexicographic order of parts.
    pub fn all(n: usize) -> Vec<Composition> {
        fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition { parts: cur.clone() });
                return;
            }
            for k in 1..=rest {
                cur.push(k);
                rec(rest - k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Splits block `b` into `(x, mu_b - x)`.
    pub fn refine(&self, b: usize, x: usize) -> Result<Composition> {
        let mb = self.part(b);
        if x == 0 || x >= mb {
            return Err(Error::BadIndex(format!("cannot split block {b} of size {mb} at {x}")));
        }
        let mut parts = self.parts[..b - 1].to_vec();
        parts.push(x);
        parts.push(mb - x);
        parts.extend_from_slice(&self.parts[b..]);
        Composition::new(parts)
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A matrix of truncated series of a common order, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<TruncatedSeries>,
}

impl SeriesMatrix {
    pub fn zero(ctx: AlgebraContext, rows: usize, cols: usize, order: usize) -> SeriesMatrix {
        SeriesMatrix { rows, cols, entries: vec![TruncatedSeries::zero(ctx, order); rows * cols] }
    }

    pub fn identity(ctx: AlgebraContext, k: usize, order: usize) -> SeriesMatrix {
        let mut m = SeriesMatrix::zero(ctx, k, k, order);
        for i in 0..k {
            m.entries[i * k + i] = TruncatedSeries::one(ctx, order);
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<TruncatedSeries>) -> Result<SeriesMatrix> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        let (ctx, order) = (entries[0].ctx(), entries[0].order());
        if entries.iter().any(|e| e.order() != order) {
            return Err(Error::Shape("entries have different truncation orders".into()));
        }
        if entries.iter().any(|e| e.ctx() != ctx) {
            return Err(Error::Shape("entries live in different algebras".into()));
        }
        Ok(SeriesMatrix { rows, cols, entries })
    }

    /// The generator matrix `T(u)` of `Y_n`.
    pub fn rtt(ctx: AlgebraContext, order: usize) -> SeriesMatrix {
        let n = ctx.n();
        let entries = (0..n * n)
            .map(|k| TruncatedSeries::rtt(ctx, k / n + 1, k % n + 1, order).expect("indices in range"))
            .collect();
        SeriesMatrix { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> AlgebraContext {
        self.entries[0].ctx()
    }

    pub fn order(&self) -> usize {
        self.entries[0].order()
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, s: TruncatedSeries) {
        self.entries[(i - 1) * self.cols + (j - 1)] = s;
    }

    pub fn entries(&self) -> &[TruncatedSeries] {
        &self.entries
    }

    /// Sub-matrix of rows `r0+1 ..= r0+h` and columns `c0+1 ..= c0+w`.
    pub fn block(&self, r0: usize, h: usize, c0: usize, w: usize) -> SeriesMatrix {
        let mut entries = Vec::with_capacity(h * w);
        for i in 0..h {
            for j in 0..w {
                entries.push(self.entries[(r0 + i) * self.cols + c0 + j].clone());
            }
        }
        SeriesMatrix { rows: h, cols: w, entries }
    }

    /// Writes `m` with its top-left corner at offset `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, m: &SeriesMatrix) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.entries[(r0 + i) * self.cols + c0 + j] = m.entries[i * m.cols + j].clone();
            }
        }
    }

    /// `^mu T_{a,b}` for 1-based blocks.
    pub fn mu_block(&self, mu: &Composition, a: usize, b: usize) -> SeriesMatrix {
        self.block(mu.offset(a), mu.part(a), mu.offset(b), mu.part(b))
    }

    fn same_shape(&self, other: &SeriesMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SeriesMatrix) -> Result<SeriesMatrix> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(SeriesMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn try_sub(&self, other: &SeriesMatrix) -> Result<SeriesMatrix> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.try_sub(b)).collect::<Result<_>>()?;
        Ok(SeriesMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn try_mul(&self, other: &SeriesMatrix) -> Result<SeriesMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.order() != other.order() {
            return Err(Error::TruncationMismatch(self.order(), other.order()));
        }
        let (ctx, n) = (self.ctx(), self.order());
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut coeffs = Vec::with_capacity(n + 1);
                for r in 0..=n {
                    let mut acc = Accum::new();
                    for k in 0..self.cols {
                        let a = &self.entries[i * self.cols + k].coeffs;
                        let b = &other.entries[k * other.cols + j].coeffs;
                        for s in 0..=r {
                            a[s].mul_into(&b[r - s], 1, &mut acc);
                        }
                    }
                    coeffs.push(Element::from_accum(ctx, acc));
                }
                entries.push(TruncatedSeries { ctx, coeffs });
            }
        }
        Ok(SeriesMatrix { rows: self.rows, cols: other.cols, entries })
    }

    pub fn scale(&self, c: i64) -> SeriesMatrix {
        SeriesMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e.scale(c)).collect() }
    }

    pub fn shift(&self, c: i64) -> SeriesMatrix {
        SeriesMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e.shift(c)).collect() }
    }

    pub fn negate_argument(&self) -> SeriesMatrix {
        SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(TruncatedSeries::negate_argument).collect(),
        }
    }

    /// Whether the `u^0` coefficient is the identity matrix.
    pub fn is_unipotent_at_zero(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let ctx = self.ctx();
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let want = Element::scalar(ctx, (i == j) as i64);
                self.entries[i * self.cols + j].coeffs[0] == want
            })
        })
    }

    /// Inverse of a square matrix with identity constant term:
    /// `G_r = -sum_{s=1..r} F_s G_{r-s}` on coefficient matrices.
    pub fn inverse(&self) -> Result<SeriesMatrix> {
        if !self.is_unipotent_at_zero() {
            return Err(Error::Singular);
        }
        let (k, n, ctx) = (self.rows, self.order(), self.ctx());
        let p = ctx.p();
        // g[r][i*k + j] = coefficient r of entry (i, j)
        let mut g: Vec<Vec<Element>> = vec![(0..k * k)
            .map(|x| Element::scalar(ctx, (x / k == x % k) as i64))
            .collect()];
        for r in 1..=n {
            let mut cur = Vec::with_capacity(k * k);
            for i in 0..k {
                for j in 0..k {
                    let mut acc = Accum::new();
                    for s in 1..=r {
                        for l in 0..k {
                            let f = &self.entries[i * k + l].coeffs[s];
                            f.mul_into(&g[r - s][l * k + j], p - 1, &mut acc);
                        }
                    }
                    cur.push(Element::from_accum(ctx, acc));
                }
            }
            g.push(cur);
        }
        let entries = (0..k * k)
            .map(|x| TruncatedSeries { ctx, coeffs: (0..=n).map(|r| g[r][x].clone()).collect() })
            .collect();
        Ok(SeriesMatrix { rows: k, cols: k, entries })
    }

    /// Per-coefficient equality report: the first `(i, j, r)` (1-based) where
    /// the matrices differ, with the difference.
    pub fn first_difference(&self, other: &SeriesMatrix) -> Result<Option<(usize, usize, usize, Element)>> {
        self.same_shape(other)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let (a, b) = (&self.entries[i * self.cols + j], &other.entries[i * self.cols + j]);
                for r in 0..=self.order().min(other.order()) {
                    if a.coeffs[r] != b.coeffs[r] {
                        return Ok(Some((i + 1, j + 1, r, &a.coeffs[r] - &b.coeffs[r])));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// The block factors of `T(u) = F(u) D(u) E(u)` for a composition.
#[derive(Clone, Debug)]
pub struct GaussFactors {
    pub mu: Composition,
    /// `D_a`, indexed by `a - 1`.
    pub d: Vec<SeriesMatrix>,
    /// `D'_a = D_a^{-1}`, indexed by `a - 1`.
    pub d_prime: Vec<SeriesMatrix>,
    /// `E_{a,b}` for `a < b`.
    pub e: BTreeMap<(usize, usize), SeriesMatrix>,
    /// `F_{b,a}` for `a < b`, keyed by `(b, a)`.
    pub f: BTreeMap<(usize, usize), SeriesMatrix>,
}

impl GaussFactors {
    pub fn order(&self) -> usize {
        self.d[0].order()
    }

    /// Reassembles the full block matrices `(F, D, E)`.
    pub fn assemble(&self) -> (SeriesMatrix, SeriesMatrix, SeriesMatrix) {
        let mu = &self.mu;
        let (ctx, n, order) = (self.d[0].ctx(), mu.n(), self.order());
        let mut dm = SeriesMatrix::zero(ctx, n, n, order);
        let mut em = SeriesMatrix::identity(ctx, n, order);
        let mut fm = SeriesMatrix::identity(ctx, n, order);
        for a in 1..=mu.len() {
            dm.put_block(mu.offset(a), mu.offset(a), &self.d[a - 1]);
        }
        for (&(a, b), m) in &self.e {
            em.put_block(mu.offset(a), mu.offset(b), m);
        }
        for (&(b, a), m) in &self.f {
            fm.put_block(mu.offset(b), mu.offset(a), m);
        }
        (fm, dm, em)
    }

    /// `F D E`, which must reproduce the input matrix.
    pub fn reconstruct(&self) -> Result<SeriesMatrix> {
        let (f, d, e) = self.assemble();
        f.try_mul(&d)?.try_mul(&e)
    }
}

/// Block LDU decomposition by iterated two-block Schur complements.
pub fn gauss_decompose(t: &SeriesMatrix, mu: &Composition) -> Result<GaussFactors> {
    if t.rows() != t.cols() || mu.n() != t.rows() {
        return Err(Error::Shape(format!("composition {mu} does not fit a {}x{} matrix", t.rows(), t.cols())));
    }
    if !t.is_unipotent_at_zero() {
        return Err(Error::Singular);
    }
    let m = mu.len();
    let mut d = Vec::with_capacity(m);
    let mut d_prime = Vec::with_capacity(m);
    let mut e = BTreeMap::new();
    let mut f = BTreeMap::new();
    // `cur` is the Schur complement occupying blocks a..=m.
    let mut cur = t.clone();
    for a in 1..=m {
        let base = mu.offset(a);
        let k = mu.part(a);
        let rest = cur.rows() - k;
        let lead = cur.block(0, k, 0, k);
        let lead_inv = lead.inverse()?;
        if rest > 0 {
            let upper = cur.block(0, k, k, rest);
            let lower = cur.block(k, rest, 0, k);
            let ea = lead_inv.try_mul(&upper)?;
            let fa = lower.try_mul(&lead_inv)?;
            for b in a + 1..=m {
                let off = mu.offset(b) - base - k;
                e.insert((a, b), ea.block(0, k, off, mu.part(b)));
                f.insert((b, a), fa.block(off, mu.part(b), 0, k));
            }
            let tail = cur.block(k, rest, k, rest);
            cur = tail.try_sub(&lower.try_mul(&ea)?)?;
        }
        d.push(lead);
        d_prime.push(lead_inv);
    }
    Ok(GaussFactors { mu: mu.clone(), d, d_prime, e, f })
}

/// Which boxed block a quasideterminant extracts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuasiVariant {
    D,
    E(usize),
    F(usize),
}

/// Direct quasideterminant evaluation: the boxed block minus
/// `row * (leading (a-1)-block corner)^{-1} * column`, then multiplied by
/// `D'_a` on the left (E) or right (F).
pub fn quasideterminant(t: &SeriesMatrix, mu: &Composition, a: usize, variant: QuasiVariant) -> Result<SeriesMatrix> {
    let m = mu.len();
    if a == 0 || a > m {
        return Err(Error::BadIndex(format!("block {a} out of 1..={m}")));
    }
    let (row_block, col_block) = match variant {
        QuasiVariant::D => (a, a),
        QuasiVariant::E(b) | QuasiVariant::F(b) if b <= a || b > m => {
            return Err(Error::BadIndex(format!("need {a} < b <= {m}, got b = {b}")));
        }
        QuasiVariant::E(b) => (a, b),
        QuasiVariant::F(b) => (b, a),
    };
    let schur = |rb: usize, cb: usize| -> Result<SeriesMatrix> {
        let boxed = t.mu_block(mu, rb, cb);
        if a == 1 {
            return Ok(boxed);
        }
        let corner = mu.offset(a);
        let lead = t.block(0, corner, 0, corner);
        let row = t.block(mu.offset(rb), mu.part(rb), 0, corner);
        let col = t.block(0, corner, mu.offset(cb), mu.part(cb));
        boxed.try_sub(&row.try_mul(&lead.inverse()?)?.try_mul(&col)?)
    };
    match variant {
        QuasiVariant::D => schur(a, a),
        QuasiVariant::E(_) => schur(a, a)?.inverse()?.try_mul(&schur(row_block, col_block)?),
        QuasiVariant::F(_) => schur(row_block, col_block)?.try_mul(&schur(a, a)?.inverse()?),
    }
}

/// A truncated series in two variables `u^{-1}, v^{-1}`, keeping coefficients
/// of `u^{-r} v^{-s}` for `r + s <= order`. Exponents may be `-1` after
/// multiplying by `u - v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    ctx: AlgebraContext,
    order: i64,
    coeffs: BTreeMap<(i64, i64), Element>,
}

impl BiSeries {
    pub fn zero(ctx: AlgebraContext, order: usize) -> BiSeries {
        BiSeries { ctx, order: order as i64, coeffs: BTreeMap::new() }
    }

    pub fn one(ctx: AlgebraContext, order: usize) -> BiSeries {
        let mut s = BiSeries::zero(ctx, order);
        s.coeffs.insert((0, 0), Element::unit(ctx));
        s
    }

    /// `f(u)` viewed as a bivariate series.
    pub fn in_u(f: &TruncatedSeries) -> BiSeries {
        BiSeries::embed(f, true)
    }

    /// `f(v)` viewed as a bivariate series.
    pub fn in_v(f: &TruncatedSeries) -> BiSeries {
        BiSeries::embed(f, false)
    }

    fn embed(f: &TruncatedSeries, in_u: bool) -> BiSeries {
        let coeffs = f
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(r, x)| {
                let key = if in_u { (r as i64, 0) } else { (0, r as i64) };
                (key, x.clone())
            })
            .collect();
        BiSeries { ctx: f.ctx(), order: f.order() as i64, coeffs }
    }

    /// `x u^{-r} v^{-s}`.
    pub fn monomial(x: Element, r: usize, s: usize, order: usize) -> BiSeries {
        let mut out = BiSeries::zero(x.ctx(), order);
        if !x.is_zero() && r + s <= order {
            out.coeffs.insert((r as i64, s as i64), x);
        }
        out
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeff(&self, r: i64, s: i64) -> Element {
        self.coeffs.get(&(r, s)).cloned().unwrap_or_else(|| Element::zero(self.ctx))
    }

    fn combine(&self, other: &BiSeries, sign: i64) -> BiSeries {
        let order = self.order.min(other.order);
        let mut coeffs = BTreeMap::new();
        for (k, x) in self.coeffs.iter().filter(|(k, _)| k.0 + k.1 <= order) {
            coeffs.insert(*k, x.clone());
        }
        for (k, y) in other.coeffs.iter().filter(|(k, _)| k.0 + k.1 <= order) {
            let entry = coeffs.entry(*k).or_insert_with(|| Element::zero(self.ctx));
            entry.add_assign_scaled(y, sign);
        }
        coeffs.retain(|_, x| !x.is_zero());
        BiSeries { ctx: self.ctx, order, coeffs }
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &BiSeries) -> BiSeries {
        self.combine(other, -1)
    }

    pub fn scale(&self, c: i64) -> BiSeries {
        let mut coeffs = BTreeMap::new();
        for (k, x) in &self.coeffs {
            let y = x.scale(c);
            if !y.is_zero() {
                coeffs.insert(*k, y);
            }
        }
        BiSeries { ctx: self.ctx, order: self.order, coeffs }
    }

    /// Product of series with nonnegative exponents; `self` on the left.
    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let order = self.order.min(other.order);
        let mut accs: BTreeMap<(i64, i64), Accum> = BTreeMap::new();
        for (&(r1, s1), x) in &self.coeffs {
            for (&(r2, s2), y) in &other.coeffs {
                let (r, s) = (r1 + r2, s1 + s2);
                if r + s > order {
                    continue;
                }
                debug_assert!(r1 >= 0 && s1 >= 0 && r2 >= 0 && s2 >= 0);
                x.mul_into(y, 1, accs.entry((r, s)).or_default());
            }
        }
        let coeffs = accs
            .into_iter()
            .map(|(k, a)| (k, Element::from_accum(self.ctx, a)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        BiSeries { ctx: self.ctx, order, coeffs }
    }

    pub fn pow(&self, k: u32) -> BiSeries {
        let mut acc = BiSeries::one(self.ctx, self.order as usize);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutator(&self, other: &BiSeries) -> BiSeries {
        self.mul(other).sub(&other.mul(self))
    }

    /// `(u - v) * self`. The coefficient of `u^{-r} v^{-s}` is
    /// `b_{r+1,s} - b_{r,s+1}`, with `r` or `s` possibly `-1`; the result is
    /// exact for `r + s <= order - 1`.
    pub fn times_u_minus_v(&self) -> BiSeries {
        let order = self.order - 1;
        let mut coeffs: BTreeMap<(i64, i64), Element> = BTreeMap::new();
        for (&(r, s), x) in &self.coeffs {
            if r + s - 1 > order {
                continue;
            }
            // u * u^{-r} v^{-s} = u^{-(r-1)} v^{-s}
            coeffs.entry((r - 1, s)).or_insert_with(|| Element::zero(self.ctx)).add_assign_scaled(x, 1);
            coeffs.entry((r, s - 1)).or_insert_with(|| Element::zero(self.ctx)).add_assign_scaled(x, -1);
        }
        coeffs.retain(|_, x| !x.is_zero());
        BiSeries { ctx: self.ctx, order, coeffs }
    }

    /// First coefficient `(r, s)` with `r + s <= order` where the two differ.
    pub fn first_difference(&self, other: &BiSeries, order: i64) -> Option<((i64, i64), Element)> {
        let keys: std::collections::BTreeSet<(i64, i64)> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.into_iter()
            .filter(|k| k.0 + k.1 <= order)
            .find_map(|k| {
                let d = &self.coeff(k.0, k.1) - &other.coeff(k.0, k.1);
                (!d.is_zero()).then_some((k, d))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::GeneratorIndex;

    fn ctx(n: usize, p: u32) -> AlgebraContext {
        AlgebraContext::new(n, p).unwrap()
    }

    fn t(c: AlgebraContext, i: usize, j: usize, r: u32) -> Element {
        Element::generator(c, i, j, r).unwrap()
    }

    fn series(c: AlgebraContext, coeffs: Vec<Element>) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(c, coeffs).unwrap()
    }

    fn monomial_series(c: AlgebraContext, r: usize, order: usize) -> TruncatedSeries {
        let mut v = vec![Element::zero(c); order + 1];
        v[r] = Element::unit(c);
        series(c, v)
    }

    #[test]
    fn convolution_examples() {
        let c = ctx(2, 5);
        let (a, b) = (t(c, 1, 2, 1), t(c, 2, 1, 1));
        let f = series(c, vec![Element::unit(c), a.clone(), Element::zero(c)]);
        let g = series(c, vec![Element::unit(c), b.clone(), Element::zero(c)]);
        let fg = f.try_mul(&g).unwrap();
        assert_eq!(fg.coeffs()[1], &a + &b);
        assert_eq!(fg.coeffs()[2], &a * &b);
        assert_eq!(f.try_mul(&TruncatedSeries::one(c, 2)).unwrap(), f);

        let t11 = TruncatedSeries::rtt(c, 1, 1, 2).unwrap();
        let t22 = TruncatedSeries::rtt(c, 2, 2, 2).unwrap();
        let prod = t11.try_mul(&t22).unwrap();
        let want = &(&t(c, 1, 1, 2) + &t(c, 2, 2, 2)) + &(&t(c, 1, 1, 1) * &t(c, 2, 2, 1));
        assert_eq!(prod.coeffs()[2], want);
    }

    #[test]
    fn shift_examples() {
        let c = ctx(1, 3);
        let n = 6;
        let s = monomial_series(c, 1, n).shift(-1);
        for k in 1..=n {
            assert_eq!(s.coeffs()[k], Element::unit(c), "u^-1 shifted, coefficient {k}");
        }
        let s2 = monomial_series(c, 2, n).shift(-1);
        for k in 0..=n - 2 {
            assert_eq!(s2.coeffs()[2 + k], Element::scalar(c, k as i64 + 1));
        }
        // d(u - 2), coefficient of u^{-3}: d3 + 4 d2 + 4 d1 over the integers
        let d = TruncatedSeries::rtt(c, 1, 1, 3).unwrap();
        let shifted = d.shift(-2);
        let want = &(&t(c, 1, 1, 3) + &t(c, 1, 1, 2).scale(4)) + &t(c, 1, 1, 1).scale(4);
        assert_eq!(shifted.coeffs()[3], want);
    }

    #[test]
    fn shift_round_trip() {
        let c = ctx(2, 5);
        let f = TruncatedSeries::rtt(c, 1, 2, 5).unwrap();
        for k in [-3i64, -1, 1, 2, 7] {
            assert_eq!(f.shift(k).shift(-k), f);
        }
        assert_eq!(f.shift(0), f);
    }

    #[test]
    fn scalar_inverses() {
        let c = ctx(1, 7);
        let one = TruncatedSeries::one(c, 4);
        assert_eq!(one.inverse().unwrap(), one);
        let a = t(c, 1, 1, 1);
        let f = series(c, vec![Element::unit(c), a.clone(), Element::zero(c), Element::zero(c)]);
        let g = f.inverse().unwrap();
        assert_eq!(g.coeffs()[1], a.scale(-1));
        assert_eq!(g.coeffs()[2], a.pow(2));
        assert_eq!(g.coeffs()[3], a.pow(3).scale(-1));
        let nonunit = series(c, vec![Element::scalar(c, 2), a]);
        assert_eq!(nonunit.inverse(), Err(Error::Singular));
    }

    #[test]
    fn inverse_of_negated_rtt_series() {
        let c = ctx(1, 5);
        let f = TruncatedSeries::rtt(c, 1, 1, 4).unwrap().negate_argument();
        let g = f.inverse().unwrap();
        let (t1, t2) = (t(c, 1, 1, 1), t(c, 1, 1, 2));
        assert_eq!(g.coeffs()[1], t1);
        assert_eq!(g.coeffs()[2], &t1.pow(2) - &t2);
        let one = TruncatedSeries::one(c, 4);
        assert_eq!(f.try_mul(&g).unwrap(), one);
        assert_eq!(g.try_mul(&f).unwrap(), one);
    }

    #[test]
    fn matrix_inverse_is_two_sided() {
        let c = ctx(2, 3);
        let tm = SeriesMatrix::rtt(c, 3);
        let inv = tm.inverse().unwrap();
        let id = SeriesMatrix::identity(c, 2, 3);
        assert_eq!(tm.try_mul(&inv).unwrap(), id);
        assert_eq!(inv.try_mul(&tm).unwrap(), id);
    }

    #[test]
    fn rank_two_drinfeld_factors() {
        let c = ctx(2, 5);
        let tm = SeriesMatrix::rtt(c, 3);
        let g = gauss_decompose(&tm, &Composition::ones(2)).unwrap();
        let e1 = g.e[&(1, 2)].get(1, 1);
        let f1 = g.f[&(2, 1)].get(1, 1);
        assert_eq!(e1.coeffs()[1], t(c, 1, 2, 1));
        assert_eq!(f1.coeffs()[1], t(c, 2, 1, 1));
        let d2 = g.d[1].get(1, 1);
        assert_eq!(d2.coeffs()[2], &t(c, 2, 2, 2) - &(&t(c, 2, 1, 1) * &t(c, 1, 2, 1)));
        assert_eq!(g.reconstruct().unwrap(), tm);
    }

    #[test]
    fn single_block_is_t() {
        let c = ctx(2, 3);
        let tm = SeriesMatrix::rtt(c, 2);
        let g = gauss_decompose(&tm, &Composition::new(vec![2]).unwrap()).unwrap();
        assert_eq!(g.d[0], tm);
        assert!(g.e.is_empty() && g.f.is_empty());
    }

    #[test]
    fn quasideterminant_examples() {
        let c = ctx(3, 5);
        let tm = SeriesMatrix::rtt(c, 2);
        let mu = Composition::ones(3);
        let q = quasideterminant(&tm, &mu, 1, QuasiVariant::D).unwrap();
        assert_eq!(q, tm.mu_block(&mu, 1, 1));
        let e = quasideterminant(&tm, &mu, 1, QuasiVariant::E(2)).unwrap();
        let want = &t(c, 1, 2, 2) - &(&t(c, 1, 1, 1) * &t(c, 1, 2, 1));
        assert_eq!(e.get(1, 1).coeffs()[2], want);
        assert!(quasideterminant(&tm, &mu, 2, QuasiVariant::E(2)).is_err());
        assert!(quasideterminant(&tm, &mu, 4, QuasiVariant::D).is_err());
    }

    #[test]
    fn compositions() {
        assert_eq!(Composition::all(3).len(), 4);
        assert_eq!(Composition::all(4).len(), 8);
        let mu = Composition::new(vec![2, 1, 3]).unwrap();
        assert_eq!((mu.offset(1), mu.offset(2), mu.offset(3)), (0, 2, 3));
        assert_eq!(mu.refine(3, 1).unwrap().parts(), &[2, 1, 1, 2]);
        assert!(Composition::checked(vec![1, 1], 3).is_err());
        assert!(Composition::new(vec![1, 0]).is_err());
    }

    #[test]
    fn u_minus_v_of_difference_quotient() {
        // (u - v) * sum_{r,s>=1} s^(r+s-1) u^-r v^-s = s(v) - s(u)
        let c = ctx(1, 5);
        let m = 6usize;
        let f = TruncatedSeries::rtt(c, 1, 1, m).unwrap();
        let mut q = BiSeries::zero(c, m);
        for r in 1..=m as i64 {
            for s in 1..=m as i64 - r {
                q.coeffs.insert((r, s), f.coeffs()[(r + s - 1) as usize].clone());
            }
        }
        let lhs = q.times_u_minus_v();
        let rhs = BiSeries::in_v(&f).sub(&BiSeries::in_u(&f));
        assert_eq!(lhs.first_difference(&rhs, lhs.order()), None);
        let w = GeneratorIndex::new(1, 1, 1);
        assert_eq!(lhs.coeff(0, 0).coefficient(&[w]), 0);
    }
}
