//! Automorphisms, anti-automorphisms and shift embeddings as finite
//! generator-image tables, the `iota` relabelling between shifted
//! subalgebras, and checks of their properties.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::center::b_series;
use crate::error::{Error, Result};
use crate::pbw::{AlgebraContext, Element, GeneratorIndex};
use crate::presentation::{Family, Parabolic, ParabolicIndex};
use crate::report::{params, CheckReport, Params};
use crate::series::{Composition, SeriesMatrix, TruncatedSeries};
use crate::shift::ShiftData;

/// Images of `t_ij^(r)` for `r <= order`. Applying the table to an element
/// with a larger superscript is an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorImageTable {
    source: AlgebraContext,
    target: AlgebraContext,
    order: u32,
    anti: bool,
    /// Indexed by `((r - 1) * n + i - 1) * n + j - 1` with `n` the source rank.
    images: Vec<Element>,
}

impl GeneratorImageTable {
    pub fn from_fn<F>(source: AlgebraContext, target: AlgebraContext, order: u32, anti: bool, f: F) -> Result<GeneratorImageTable>
    where
        F: Fn(usize, usize, u32) -> Result<Element>,
    {
        if source.p() != target.p() {
            return Err(Error::ContextMismatch { left: source.to_string(), right: target.to_string() });
        }
        let n = source.n();
        let mut images = Vec::with_capacity(n * n * order as usize);
        for r in 1..=order {
            for i in 1..=n {
                for j in 1..=n {
                    let x = f(i, j, r)?;
                    if x.ctx() != target {
                        return Err(Error::ContextMismatch { left: x.ctx().to_string(), right: target.to_string() });
                    }
                    images.push(x);
                }
            }
        }
        Ok(GeneratorImageTable { source, target, order, anti, images })
    }

    pub fn identity(ctx: AlgebraContext, order: u32) -> GeneratorImageTable {
        GeneratorImageTable::from_fn(ctx, ctx, order, false, |i, j, r| Element::generator(ctx, i, j, r))
            .expect("generators are in range")
    }

    /// `omega_n : T(u) -> T(-u)^{-1}`.
    pub fn omega(ctx: AlgebraContext, order: u32) -> Result<GeneratorImageTable> {
        let inv = SeriesMatrix::rtt(ctx, order as usize).negate_argument().inverse()?;
        GeneratorImageTable::from_fn(ctx, ctx, order, false, |i, j, r| inv.get(i, j).coeff(r as usize).cloned())
    }

    /// `phi_k : Y_n -> Y_{k+n}`, `t_ij^(r) -> t_{k+i,k+j}^(r)`.
    pub fn phi(ctx: AlgebraContext, k: usize, order: u32) -> Result<GeneratorImageTable> {
        let target = ctx.with_rank(ctx.n() + k)?;
        GeneratorImageTable::from_fn(ctx, target, order, false, |i, j, r| Element::generator(target, k + i, k + j, r))
    }

    /// The shift map `psi_k = omega_{k+n} . phi_k . omega_n : Y_n -> Y_{k+n}`.
    pub fn psi(ctx: AlgebraContext, k: usize, order: u32) -> Result<GeneratorImageTable> {
        let target = ctx.with_rank(ctx.n() + k)?;
        GeneratorImageTable::omega(ctx, order)?
            .then(&GeneratorImageTable::phi(ctx, k, order)?)?
            .then(&GeneratorImageTable::omega(target, order)?)
    }

    /// The anti-automorphism `t_ij^(r) -> t_ji^(r)`.
    pub fn tau(ctx: AlgebraContext, order: u32) -> GeneratorImageTable {
        GeneratorImageTable::from_fn(ctx, ctx, order, true, |i, j, r| Element::generator(ctx, j, i, r))
            .expect("generators are in range")
    }

    /// `t_ij^(r) -> t_{w(i),w(j)}^(r)` for `w` given by its 1-based images.
    pub fn permutation(ctx: AlgebraContext, w: &[usize], order: u32) -> Result<GeneratorImageTable> {
        let n = ctx.n();
        let mut seen = vec![false; n + 1];
        if w.len() != n || w.iter().any(|&x| x == 0 || x > n || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::BadIndex(format!("{w:?} is not a permutation of 1..={n}")));
        }
        GeneratorImageTable::from_fn(ctx, ctx, order, false, |i, j, r| Element::generator(ctx, w[i - 1], w[j - 1], r))
    }

    pub fn source(&self) -> AlgebraContext {
        self.source
    }

    pub fn target(&self) -> AlgebraContext {
        self.target
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_anti(&self) -> bool {
        self.anti
    }

    pub fn image(&self, i: usize, j: usize, r: u32) -> Result<&Element> {
        let n = self.source.n();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange { i, j, r, n });
        }
        if r == 0 || r > self.order {
            return Err(Error::Budget { requested: r as usize, available: self.order as usize });
        }
        Ok(&self.images[((r as usize - 1) * n + i - 1) * n + j - 1])
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.ctx() != self.source {
            return Err(Error::ContextMismatch { left: x.ctx().to_string(), right: self.source.to_string() });
        }
        if x.max_superscript() > self.order {
            return Err(Error::Budget { requested: x.max_superscript() as usize, available: self.order as usize });
        }
        x.apply_generator_map(self.target, self.anti, |g: GeneratorIndex| self.image(g.i, g.j, g.r).ok().cloned())
    }

    /// Coefficientwise image of a series, up to the table order.
    pub fn apply_series(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        let len = f.order().min(self.order as usize);
        let coeffs = f.coeffs()[..=len].iter().map(|x| self.apply(x)).collect::<Result<Vec<_>>>()?;
        TruncatedSeries::from_coeffs(self.target, coeffs)
    }

    /// `next . self`.
    pub fn then(&self, next: &GeneratorImageTable) -> Result<GeneratorImageTable> {
        if self.target != next.source {
            return Err(Error::ContextMismatch { left: self.target.to_string(), right: next.source.to_string() });
        }
        let order = self.order.min(next.order);
        let images = self.images[..self.source.n().pow(2) * order as usize]
            .iter()
            .map(|x| next.apply(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratorImageTable { source: self.source, target: next.target, order, anti: self.anti ^ next.anti, images })
    }

    /// The first generator whose image differs from itself.
    pub fn first_non_identity(&self) -> Option<(GeneratorIndex, Element)> {
        if self.source != self.target {
            return None;
        }
        let n = self.source.n();
        for r in 1..=self.order {
            for i in 1..=n {
                for j in 1..=n {
                    let img = self.image(i, j, r).ok()?;
                    let d = img - &Element::generator(self.source, i, j, r).ok()?;
                    if !d.is_zero() {
                        return Some((GeneratorIndex::new(i, j, r), d));
                    }
                }
            }
        }
        None
    }
}

/// Checks `s_{i,i+1} + s_{i+1,i}` agree for all `i` and both shifts admit the same shape.
pub fn iota_precondition(from: &ShiftData, to: &ShiftData) -> Result<()> {
    if from.mu() != to.mu() {
        return Err(Error::MapPrecondition(format!("shapes differ: {} vs {}", from.mu(), to.mu())));
    }
    let (s, t) = (from.sigma(), to.sigma());
    if s.n() != t.n() {
        return Err(Error::MapPrecondition(format!("ranks differ: {} vs {}", s.n(), t.n())));
    }
    for i in 1..s.n() {
        let (x, y) = (s.get(i, i + 1) + s.get(i + 1, i), t.get(i, i + 1) + t.get(i + 1, i));
        if x != y {
            return Err(Error::MapPrecondition(format!("s[{i},{}] + s[{},{i}] is {x} in the source and {y} in the target", i + 1, i + 1)));
        }
    }
    Ok(())
}

/// The label of the image of a generator of `Y_n(from)` in `Y_n(to)`:
/// `E` and `F` superscripts move by the difference of block shifts, `D` is fixed.
pub fn iota(idx: ParabolicIndex, from: &ShiftData, to: &ShiftData) -> Result<ParabolicIndex> {
    iota_precondition(from, to)?;
    match idx.family {
        Family::D | Family::DPrime => Ok(idx),
        Family::E | Family::F => {
            let (s, t) = (from.s(idx.row, idx.col), to.s(idx.row, idx.col));
            if idx.r <= s {
                return Err(Error::BelowShift { r: idx.r as usize, bound: s as usize });
            }
            Ok(idx.with_superscript(idx.r - s + t))
        }
    }
}

fn series_difference(x: &TruncatedSeries, y: &TruncatedSeries) -> Option<(usize, Element)> {
    x.coeffs().iter().zip(y.coeffs()).enumerate().find(|(_, (a, b))| a != b).map(|(r, (a, b))| (r, a - b))
}

fn series_report(id: &str, prm: Params, outcome: Result<Option<(usize, Element)>>) -> CheckReport {
    match outcome {
        Ok(None) => CheckReport::pass(id, prm),
        Ok(Some((r, d))) => CheckReport::from_difference(id, prm, &d).with_note(format!("coefficient u^-{r}")),
        Err(e) => CheckReport::from_error(id, prm, e),
    }
}

fn ctx_params(ctx: AlgebraContext, order: u32) -> Params {
    params(&[("n", ctx.n() as i64), ("p", ctx.p() as i64), ("order", order as i64)])
}

fn mu_params(mu: &Composition, order: u32) -> Params {
    let mut prm = params(&[("order", order as i64)]);
    prm.insert("mu".into(), mu.parts().into());
    prm
}

/// `f . f = id` on every generator up to the table order.
pub fn involution_check(id: &str, f: &GeneratorImageTable) -> CheckReport {
    let prm = ctx_params(f.source(), f.order());
    match f.then(f) {
        Ok(ff) => match ff.first_non_identity() {
            None => CheckReport::pass(id, prm),
            Some((g, d)) => CheckReport::from_difference(id, prm, &d).with_note(format!("image of {g}")),
        },
        Err(e) => CheckReport::from_error(id, prm, e),
    }
}

/// `f(xy) = f(x) f(y)` (or `f(y) f(x)` when `f` is anti) on random pairs.
pub fn multiplicativity_check(id: &str, f: &GeneratorImageTable, samples: usize, seed: u64) -> CheckReport {
    let mut prm = ctx_params(f.source(), f.order());
    prm.insert("samples".into(), samples.into());
    prm.insert("seed".into(), seed.into());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = f.source();
    let half = (f.order() / 2).max(1);
    for _ in 0..samples {
        let x = Element::random(ctx, &mut rng, half, 2, 2);
        let y = Element::random(ctx, &mut rng, half, 2, 2);
        let outcome = (|| -> Result<Element> {
            let lhs = f.apply(&(&x * &y))?;
            let (fx, fy) = (f.apply(&x)?, f.apply(&y)?);
            let rhs = if f.is_anti() { &fy * &fx } else { &fx * &fy };
            Ok(&lhs - &rhs)
        })();
        let report = CheckReport::from_outcome(id, prm.clone(), outcome);
        if !report.passed() {
            return report.with_note(format!("x = {x}, y = {y}"));
        }
    }
    CheckReport::pass(id, prm)
}

/// Shift-map compatibility with the all-ones shape: `psi_k` sends `d_l`,
/// `e_l`, `f_l` of `Y_{n-k}` to `d_{k+l}`, `e_{k+l}`, `f_{k+l}` of `Y_n`.
pub fn psi_rank_one_checks(ctx: AlgebraContext, order: u32) -> Vec<CheckReport> {
    let n = ctx.n();
    let mut out = Vec::new();
    for k in 1..n {
        let run = || -> Result<Vec<(String, Option<(usize, Element)>)>> {
            let small = ctx.with_rank(n - k)?;
            let psi = GeneratorImageTable::psi(small, k, order)?;
            let src = Parabolic::unshifted(small, Composition::ones(n - k), order as usize)?;
            let dst = Parabolic::unshifted(ctx, Composition::ones(n), order as usize)?;
            let mut res = Vec::new();
            for l in 1..=n - k {
                let d = psi.apply_series(src.d_series(l, 1, 1)?)?;
                res.push((format!("d{l}"), series_difference(&d, dst.d_series(k + l, 1, 1)?)));
                if l < n - k {
                    let e = psi.apply_series(src.e_series(l, 1, 1)?)?;
                    res.push((format!("e{l}"), series_difference(&e, dst.e_series(k + l, 1, 1)?)));
                    let f = psi.apply_series(src.f_series(l, 1, 1)?)?;
                    res.push((format!("f{l}"), series_difference(&f, dst.f_series(k + l, 1, 1)?)));
                }
            }
            Ok(res)
        };
        let prm = ctx_params(ctx, order).with_k(k);
        match run() {
            Ok(v) => out.extend(v.into_iter().map(|(what, d)| series_report("psi-rank-one", prm.clone(), Ok(d)).with_param("series", what))),
            Err(e) => out.push(CheckReport::from_error("psi-rank-one", prm, e)),
        }
    }
    out
}

trait WithK {
    fn with_k(self, k: usize) -> Self;
}

impl WithK for Params {
    fn with_k(mut self, k: usize) -> Params {
        self.insert("k".into(), k.into());
        self
    }
}

/// `psi_{p_a}` sends every `D`, `E`, `F` series of the tail shape
/// `(mu_a, ..., mu_m)` to the corresponding series of `mu`, blocks shifted by `a - 1`.
pub fn psi_block_checks(ctx: AlgebraContext, mu: &Composition, order: u32) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for a in 2..=mu.len() {
        let k = mu.offset(a);
        let prm = mu_params(mu, order).with_k(k);
        let run = || -> Result<Vec<(String, Option<(usize, Element)>)>> {
            let tail = Composition::new(mu.parts()[a - 1..].to_vec())?;
            let small = ctx.with_rank(tail.n())?;
            let psi = GeneratorImageTable::psi(small, k, order)?;
            let src = Parabolic::unshifted(small, tail.clone(), order as usize)?;
            let dst = Parabolic::unshifted(ctx, mu.clone(), order as usize)?;
            let mut res = Vec::new();
            for (family, row, col) in block_pairs(tail.len()) {
                for i in 1..=tail.part(row) {
                    for j in 1..=tail.part(col) {
                        let img = psi.apply_series(src.series(family, row, col, i, j)?)?;
                        let want = dst.series(family, row + a - 1, col + a - 1, i, j)?;
                        let label = ParabolicIndex { family, row, col, i, j, r: 0 };
                        res.push((label.to_string(), series_difference(&img, want)));
                    }
                }
            }
            Ok(res)
        };
        match run() {
            Ok(v) => out.extend(v.into_iter().map(|(what, d)| series_report("psi-block", prm.clone(), Ok(d)).with_param("series", what))),
            Err(e) => out.push(CheckReport::from_error("psi-block", prm, e)),
        }
    }
    out
}

fn block_pairs(m: usize) -> Vec<(Family, usize, usize)> {
    let mut v: Vec<_> = (1..=m).map(|a| (Family::D, a, a)).collect();
    for a in 1..=m {
        for b in a + 1..=m {
            v.push((Family::E, a, b));
            v.push((Family::F, b, a));
        }
    }
    v
}

/// Block-internal permutations move `D_{a;i,j}` to `D_{a;1,1}` or `D_{a;1,2}`,
/// and a transposition moves `E_{a,b;i,j}` to `E_{a;i,1}` and
/// `F_{b,a;j,i}` to `F_{a;1,i}`.
pub fn corner_checks(ctx: AlgebraContext, mu: &Composition, order: u32) -> Vec<CheckReport> {
    let n = ctx.n();
    let par = match Parabolic::unshifted(ctx, mu.clone(), order as usize) {
        Ok(p) => p,
        Err(e) => return vec![CheckReport::from_error("corner", mu_params(mu, order), e)],
    };
    let identity: Vec<usize> = (1..=n).collect();
    let swap = |x: usize, y: usize| {
        let mut w = identity.clone();
        w.swap(x - 1, y - 1);
        w
    };
    let mut out = Vec::new();
    let mut push = |id: &str, idx: ParabolicIndex, w: Vec<usize>, want: (Family, usize, usize, usize, usize)| {
        let outcome = (|| {
            let table = GeneratorImageTable::permutation(ctx, &w, order)?;
            let img = table.apply_series(par.series(idx.family, idx.row, idx.col, idx.i, idx.j)?)?;
            Ok(series_difference(&img, par.series(want.0, want.1, want.2, want.3, want.4)?))
        })();
        let prm = mu_params(mu, order);
        let mut r = series_report(id, prm, outcome).with_param("series", idx.to_string());
        r.params.insert("w".into(), w.into());
        out.push(r);
    };
    for a in 1..=mu.len() {
        let base = mu.offset(a);
        for i in 1..=mu.part(a) {
            for j in 1..=mu.part(a) {
                let idx = ParabolicIndex { family: Family::D, row: a, col: a, i, j, r: 0 };
                if i == j {
                    push("corner-d", idx, swap(base + 1, base + i), (Family::D, a, a, 1, 1));
                } else {
                    // Send base+i to base+1 and base+j to base+2, keeping the
                    // rest of the block in order.
                    let order_in_block: Vec<usize> =
                        [i, j].into_iter().chain((1..=mu.part(a)).filter(|&x| x != i && x != j)).collect();
                    let mut w = identity.clone();
                    for (pos, &x) in order_in_block.iter().enumerate() {
                        w[base + x - 1] = base + pos + 1;
                    }
                    push("corner-d", idx, w, (Family::D, a, a, 1, 2));
                }
            }
        }
        for b in a + 1..=mu.len() {
            for i in 1..=mu.part(a) {
                for j in 1..=mu.part(b) {
                    let w = swap(mu.offset(a + 1) + 1, mu.offset(b) + j);
                    push("corner-e", ParabolicIndex { family: Family::E, row: a, col: b, i, j, r: 0 }, w.clone(), (Family::E, a, a + 1, i, 1));
                    push("corner-f", ParabolicIndex { family: Family::F, row: b, col: a, i: j, j: i, r: 0 }, w, (Family::F, a + 1, a, 1, i));
                }
            }
        }
    }
    out
}

/// `psi_{p_a}` sends `B^{(rp)}_{c;i,j}` and `(E^{(r)}_{c,d;i,j})^p` of the tail
/// shape to the same generators of `mu` with blocks shifted by `a - 1`.
pub fn psi_p_center_checks(ctx: AlgebraContext, mu: &Composition, order: u32) -> Vec<CheckReport> {
    let p = ctx.p();
    let mut out = Vec::new();
    for a in 2..=mu.len() {
        let k = mu.offset(a);
        let prm = mu_params(mu, order).with_k(k);
        let run = || -> Result<Vec<(String, Element)>> {
            let tail = Composition::new(mu.parts()[a - 1..].to_vec())?;
            let small = ctx.with_rank(tail.n())?;
            let psi = GeneratorImageTable::psi(small, k, order)?;
            let src = Parabolic::unshifted(small, tail.clone(), order as usize)?;
            let dst = Parabolic::unshifted(ctx, mu.clone(), order as usize)?;
            let mut res = Vec::new();
            for c in 1..=tail.len() {
                for i in 1..=tail.part(c) {
                    for j in 1..=tail.part(c) {
                        let (bs, bd) = (b_series(&src, c, i, j)?, b_series(&dst, c + a - 1, i, j)?);
                        for rp in (p..=order).step_by(p as usize) {
                            let d = &psi.apply(bs.coeff(rp as usize)?)? - bd.coeff(rp as usize)?;
                            res.push((format!("B[{c};{i},{j}]^({rp})"), d));
                        }
                    }
                }
                for d in c + 1..=tail.len() {
                    for i in 1..=tail.part(c) {
                        for j in 1..=tail.part(d) {
                            for r in (1..).take_while(|r| r * p <= order) {
                                let x = src.series(Family::E, c, d, i, j)?.coeff(r as usize)?.pow(p);
                                let y = dst.series(Family::E, c + a - 1, d + a - 1, i, j)?.coeff(r as usize)?.pow(p);
                                res.push((format!("(E[{c},{d};{i},{j}]^({r}))^{p}"), &psi.apply(&x)? - &y));
                            }
                        }
                    }
                }
            }
            Ok(res)
        };
        match run() {
            Ok(v) => out.extend(v.into_iter().map(|(g, d)| CheckReport::from_difference("psi-p-center", prm.clone(), &d).with_param("generator", g))),
            Err(e) => out.push(CheckReport::from_error("psi-p-center", prm, e)),
        }
    }
    out
}

/// For the single-block shape, every permutation sends `B^{(rp)}_{1;i,j}`
/// to `B^{(rp)}_{1;w(i),w(j)}`.
pub fn permutation_p_center_checks(ctx: AlgebraContext, order: u32) -> Vec<CheckReport> {
    use itertools::Itertools;
    let n = ctx.n();
    let p = ctx.p();
    let prm = ctx_params(ctx, order);
    let run = || -> Result<Vec<(Vec<usize>, String, Element)>> {
        let par = Parabolic::unshifted(ctx, Composition::new(vec![n])?, order as usize)?;
        let mut res = Vec::new();
        for w in (1..=n).permutations(n) {
            let table = GeneratorImageTable::permutation(ctx, &w, order)?;
            for i in 1..=n {
                for j in 1..=n {
                    let (b, bw) = (b_series(&par, 1, i, j)?, b_series(&par, 1, w[i - 1], w[j - 1])?);
                    for rp in (p..=order).step_by(p as usize) {
                        let d = &table.apply(b.coeff(rp as usize)?)? - bw.coeff(rp as usize)?;
                        res.push((w.clone(), format!("B[1;{i},{j}]^({rp})"), d));
                    }
                }
            }
        }
        Ok(res)
    };
    match run() {
        Ok(v) => v
            .into_iter()
            .map(|(w, g, d)| CheckReport::from_difference("perm-p-center", prm.clone(), &d).with_param("w", w).with_param("generator", g))
            .collect(),
        Err(e) => vec![CheckReport::from_error("perm-p-center", prm, e)],
    }
}

/// `iota` followed by its inverse fixes every generator label up to `budget`.
pub fn iota_roundtrip_check(from: &ShiftData, to: &ShiftData, budget: u32) -> CheckReport {
    let mut prm = mu_params(from.mu(), budget);
    prm.insert("sigma".into(), from.sigma().to_string().into());
    prm.insert("target".into(), to.sigma().to_string().into());
    for idx in crate::presentation::shifted_generator_set(from, budget) {
        match iota(idx, from, to).and_then(|x| iota(x, to, from)) {
            Ok(back) if back == idx => {}
            Ok(back) => return CheckReport::fail("iota-roundtrip", prm, None, format!("{idx} returns as {back}")),
            Err(e) => return CheckReport::fail("iota-roundtrip", prm, None, e.to_string()),
        }
    }
    CheckReport::pass("iota-roundtrip", prm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::ShiftMatrix;

    fn ctx(n: usize) -> AlgebraContext {
        AlgebraContext::new(n, 3).unwrap()
    }

    fn t(c: AlgebraContext, i: usize, j: usize, r: u32) -> Element {
        Element::generator(c, i, j, r).unwrap()
    }

    #[test]
    fn omega_rank_one() {
        let c = ctx(1);
        let w = GeneratorImageTable::omega(c, 3).unwrap();
        assert_eq!(w.image(1, 1, 1).unwrap(), &t(c, 1, 1, 1));
        assert_eq!(w.image(1, 1, 2).unwrap(), &(&t(c, 1, 1, 1).pow(2) - &t(c, 1, 1, 2)));
        assert!(matches!(w.image(1, 1, 4), Err(Error::Budget { .. })));
        assert!(involution_check("omega", &w).passed());
    }

    #[test]
    fn simple_images() {
        let c = ctx(2);
        let tau = GeneratorImageTable::tau(c, 3);
        assert_eq!(tau.apply(&t(c, 1, 2, 3)).unwrap(), t(c, 2, 1, 3));
        let w = GeneratorImageTable::permutation(c, &[2, 1], 3).unwrap();
        assert_eq!(w.apply(&t(c, 1, 1, 2)).unwrap(), t(c, 2, 2, 2));
        assert!(GeneratorImageTable::permutation(c, &[1, 1], 3).is_err());
        let psi0 = GeneratorImageTable::psi(c, 0, 3).unwrap();
        assert!(psi0.first_non_identity().is_none());
        assert!(multiplicativity_check("tau", &tau, 5, 1).passed());
        assert!(involution_check("tau", &tau).passed());
    }

    #[test]
    fn psi_lemma_examples() {
        let c2 = ctx(2);
        assert!(psi_rank_one_checks(c2, 3).iter().all(|r| r.passed()));
        let c3 = ctx(3);
        for r in psi_block_checks(c3, &Composition::new(vec![1, 2]).unwrap(), 3) {
            assert!(r.passed(), "{r:?}");
        }
        let psi = GeneratorImageTable::psi(c2, 1, 3).unwrap();
        assert!(multiplicativity_check("psi", &psi, 5, 2).passed());
    }

    #[test]
    fn corner_reduction() {
        for mu in [vec![2, 1], vec![1, 2], vec![3]] {
            for r in corner_checks(ctx(3), &Composition::new(mu).unwrap(), 3) {
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn p_center_images() {
        for r in psi_p_center_checks(ctx(2), &Composition::ones(2), 3) {
            assert!(r.passed(), "{r:?}");
        }
        for r in permutation_p_center_checks(ctx(2), 3) {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn iota_labels() {
        let mu = Composition::ones(2);
        let from = ShiftData::new(ShiftMatrix::parse("0,1;0,0", 2).unwrap(), mu.clone()).unwrap();
        let to = ShiftData::new(ShiftMatrix::parse("0,0;1,0", 2).unwrap(), mu.clone()).unwrap();
        assert_eq!(iota(ParabolicIndex::e(1, 1, 1, 2), &from, &to).unwrap(), ParabolicIndex::e(1, 1, 1, 1));
        assert_eq!(iota(ParabolicIndex::f(1, 1, 1, 1), &from, &to).unwrap(), ParabolicIndex::f(1, 1, 1, 2));
        assert!(matches!(iota(ParabolicIndex::e(1, 1, 1, 1), &from, &to), Err(Error::BelowShift { .. })));
        assert!(iota_roundtrip_check(&from, &to, 4).passed());
        let zero = ShiftData::unshifted(mu);
        assert!(matches!(iota_precondition(&from, &zero), Err(Error::MapPrecondition(_))));
    }
}
