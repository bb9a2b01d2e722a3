//! Checks of the block Gauss decomposition `T(u) = F(u) D(u) E(u)`:
//! reconstruction, agreement with direct quasideterminants, and the
//! behaviour of the factors when one block is split in two.

use crate::error::Result;
use crate::pbw::{AlgebraContext, Element};
use crate::report::{params, CheckReport, Params};
use crate::series::{gauss_decompose, quasideterminant, Composition, QuasiVariant, SeriesMatrix};

fn shape_params(n: usize, mu: &Composition, order: usize) -> Params {
    let mut prm = params(&[("n", n as i64), ("order", order as i64)]);
    prm.insert("mu".into(), mu.parts().into());
    prm
}

fn matrix_report(id: &str, prm: Params, outcome: Result<Option<(usize, usize, usize, Element)>>) -> CheckReport {
    match outcome {
        Ok(None) => CheckReport::pass(id, prm),
        Ok(Some((i, j, r, d))) => CheckReport::from_difference(id, prm, &d).with_note(format!("entry ({i},{j}), coefficient u^-{r}")),
        Err(e) => CheckReport::from_error(id, prm, e),
    }
}

/// `F D E` reassembles to `T` coefficientwise up to `order`.
pub fn reconstruction_check(ctx: AlgebraContext, mu: &Composition, order: usize) -> CheckReport {
    let t = SeriesMatrix::rtt(ctx, order);
    let outcome = gauss_decompose(&t, mu).and_then(|g| g.reconstruct()).and_then(|fde| fde.first_difference(&t));
    matrix_report("gauss-reconstruct", shape_params(ctx.n(), mu, order), outcome)
}

/// Every `D_a`, `E_{a,b}`, `F_{b,a}` from elimination equals its direct
/// quasideterminant expression.
pub fn quasideterminant_checks(ctx: AlgebraContext, mu: &Composition, order: usize) -> Vec<CheckReport> {
    let t = SeriesMatrix::rtt(ctx, order);
    let prm = shape_params(ctx.n(), mu, order);
    let g = match gauss_decompose(&t, mu) {
        Ok(g) => g,
        Err(e) => return vec![CheckReport::from_error("gauss-quasidet", prm, e)],
    };
    let m = mu.len();
    let mut out = Vec::new();
    for a in 1..=m {
        let mut variants = vec![(QuasiVariant::D, &g.d[a - 1], format!("D{a}"))];
        for b in a + 1..=m {
            variants.push((QuasiVariant::E(b), &g.e[&(a, b)], format!("E{a},{b}")));
            variants.push((QuasiVariant::F(b), &g.f[&(b, a)], format!("F{b},{a}")));
        }
        for (v, elim, label) in variants {
            let outcome = quasideterminant(&t, mu, a, v).and_then(|q| q.first_difference(elim));
            out.push(matrix_report("gauss-quasidet", prm.clone(), outcome).with_param("block", label));
        }
    }
    out
}

/// Splits block `b` of `mu` into parts `x` and `mu_b - x` and compares the
/// factors of the refined shape with the 2x2 decomposition of `D_b`.
pub fn split_block_checks(ctx: AlgebraContext, mu: &Composition, b: usize, x: usize, order: usize) -> Vec<CheckReport> {
    let mut prm = shape_params(ctx.n(), mu, order);
    prm.insert("b".into(), b.into());
    prm.insert("x".into(), x.into());
    let run = || -> Result<Vec<(String, Option<(usize, usize, usize, Element)>)>> {
        let nu = mu.refine(b, x)?;
        let y = mu.part(b) - x;
        let t = SeriesMatrix::rtt(ctx, order);
        let gm = gauss_decompose(&t, mu)?;
        let gn = gauss_decompose(&t, &nu)?;
        let inner = gauss_decompose(&gm.d[b - 1], &Composition::new(vec![x, y])?)?;
        let (a_blk, d_blk) = (&inner.d[0], &inner.d[1]);
        let (b_blk, c_blk) = (&inner.e[&(1, 2)], &inner.f[&(2, 1)]);
        let m = mu.len();
        let mut res = Vec::new();
        let mut cmp = |label: String, x: &SeriesMatrix, y: &SeriesMatrix| -> Result<()> {
            res.push((label, x.first_difference(y)?));
            Ok(())
        };
        // Diagonal blocks.
        for c in 1..=m + 1 {
            let want = match c {
                c if c < b => gm.d[c - 1].clone(),
                c if c == b => a_blk.clone(),
                c if c == b + 1 => d_blk.clone(),
                c => gm.d[c - 2].clone(),
            };
            cmp(format!("D{c}"), &gn.d[c - 1], &want)?;
        }
        // Adjacent off-diagonal blocks of the refined shape.
        for c in 1..=m {
            let (e_want, f_want) = match c {
                c if c + 1 < b => (gm.e[&(c, c + 1)].clone(), gm.f[&(c + 1, c)].clone()),
                c if c + 1 == b => {
                    let e = &gm.e[&(c, c + 1)];
                    let f = &gm.f[&(c + 1, c)];
                    (e.block(0, e.rows(), 0, x), f.block(0, x, 0, f.cols()))
                }
                c if c == b => (b_blk.clone(), c_blk.clone()),
                c if c == b + 1 => {
                    let e = &gm.e[&(b, b + 1)];
                    let f = &gm.f[&(b + 1, b)];
                    (e.block(x, y, 0, e.cols()), f.block(0, f.rows(), x, y))
                }
                c => (gm.e[&(c - 1, c)].clone(), gm.f[&(c, c - 1)].clone()),
            };
            cmp(format!("E{c}"), &gn.e[&(c, c + 1)], &e_want)?;
            cmp(format!("F{c}"), &gn.f[&(c + 1, c)], &f_want)?;
        }
        Ok(res)
    };
    match run() {
        Ok(v) => v.into_iter().map(|(label, d)| matrix_report("gauss-split", prm.clone(), Ok(d)).with_param("block", label)).collect(),
        Err(e) => vec![CheckReport::from_error("gauss-split", prm, e)],
    }
}

/// The first block with a part larger than one, split as `1 + (mu_b - 1)`.
pub fn default_refinement(mu: &Composition) -> Option<(usize, usize)> {
    (1..=mu.len()).find(|&b| mu.part(b) > 1).map(|b| (b, 1))
}

/// All checks of this module for one shape.
pub fn gauss_checks(ctx: AlgebraContext, mu: &Composition, order: usize) -> Vec<CheckReport> {
    let mut out = vec![reconstruction_check(ctx, mu, order)];
    out.extend(quasideterminant_checks(ctx, mu, order));
    if let Some((b, x)) = default_refinement(mu) {
        out.extend(split_block_checks(ctx, mu, b, x, order));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_shapes_pass() {
        let c = AlgebraContext::new(3, 3).unwrap();
        for mu in Composition::all(3) {
            for r in gauss_checks(c, &mu, 3) {
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn every_split_of_a_block() {
        let c = AlgebraContext::new(4, 3).unwrap();
        let mu = Composition::new(vec![1, 3]).unwrap();
        for x in 1..3 {
            for r in split_block_checks(c, &mu, 2, x, 2) {
                assert!(r.passed(), "{r:?}");
            }
        }
        assert_eq!(default_refinement(&Composition::ones(3)), None);
        assert_eq!(default_refinement(&mu), Some((2, 1)));
    }
}
