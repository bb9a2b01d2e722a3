//! Checks of the higher roots `sE_{a,b}`, `sF_{b,a}` built by the commutator
//! recursion: independence of the witness index, leading terms, agreement
//! with the Gauss factors when unshifted, and exchange under transposition.

use crate::current::{gr_identify, CurrentElement};
use crate::error::Result;
use crate::maps::GeneratorImageTable;
use crate::pbw::Element;
use crate::presentation::{Family, Parabolic, Side};
use crate::report::{params, CheckReport, Params, Witness};

fn root_params(par: &Parabolic, side: Side, row: usize, col: usize, i: usize, j: usize, r: u32) -> Params {
    let mut prm = params(&[("row", row as i64), ("col", col as i64), ("i", i as i64), ("j", j as i64), ("r", r as i64)]);
    prm.insert("mu".into(), par.mu().parts().into());
    prm.insert("sigma".into(), par.data().sigma().to_string().into());
    prm.insert("side".into(), if side == Side::E { "E" } else { "F" }.into());
    prm
}

/// `(side, row, col)` for every root, adjacent or not.
fn roots(m: usize) -> Vec<(Side, usize, usize)> {
    let mut v = Vec::new();
    for a in 1..=m {
        for b in a + 1..=m {
            v.push((Side::E, a, b));
            v.push((Side::F, b, a));
        }
    }
    v
}

fn inner_sizes(par: &Parabolic, row: usize, col: usize) -> (usize, usize) {
    (par.part(row), par.part(col))
}

/// For non-adjacent roots, every admissible witness gives the same element.
pub fn witness_independence_checks(par: &Parabolic, budget: u32) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (side, row, col) in roots(par.m()) {
        if row.abs_diff(col) < 2 {
            continue;
        }
        let middle = if side == Side::E { col - 1 } else { row - 1 };
        let (h, w) = inner_sizes(par, row, col);
        for i in 1..=h {
            for j in 1..=w {
                for r in par.data().s(row, col) + 1..=budget {
                    let prm = root_params(par, side, row, col, i, j, r);
                    let outcome = (|| -> Result<Option<(usize, Element)>> {
                        let first = par.higher_root(side, true, row, col, i, j, r, 1)?;
                        for k in 2..=par.part(middle) {
                            let d = &par.higher_root(side, true, row, col, i, j, r, k)? - &first;
                            if !d.is_zero() {
                                return Ok(Some((k, d)));
                            }
                        }
                        Ok(None)
                    })();
                    let report = match outcome {
                        Ok(None) => CheckReport::pass("root-witness", prm),
                        Ok(Some((k, d))) => CheckReport::from_difference("root-witness", prm, &d).with_note(format!("witness {k} differs from witness 1")),
                        Err(e) => CheckReport::from_error("root-witness", prm, e),
                    };
                    out.push(report.with_param("witnesses", par.part(middle)));
                }
            }
        }
    }
    out
}

/// The degree-`r` part of `sE^{(r+1)}_{a,b;i,j}` is `e_{a,b;i,j} t^r`, and the
/// same for `F`, for `r <= max_degree` above the shift bound.
pub fn root_gr_checks(par: &Parabolic, max_degree: u32) -> Vec<CheckReport> {
    let ctx = par.ctx();
    let mu = par.mu();
    let mut out = Vec::new();
    for (side, row, col) in roots(par.m()) {
        let (h, w) = inner_sizes(par, row, col);
        for i in 1..=h {
            for j in 1..=w {
                for r in par.data().s(row, col)..=max_degree {
                    let prm = root_params(par, side, row, col, i, j, r + 1);
                    let outcome = (|| -> Result<(CurrentElement, CurrentElement)> {
                        let x = par.higher_root(side, true, row, col, i, j, r + 1, 1)?;
                        let got = gr_identify(&x, r as usize)?;
                        let want = CurrentElement::basis(ctx, mu.offset(row) + i, mu.offset(col) + j, r)?;
                        Ok((got, want))
                    })();
                    out.push(match outcome {
                        Ok((got, want)) if got == want => CheckReport::pass("root-gr", prm),
                        Ok((got, want)) => CheckReport::fail(
                            "root-gr",
                            prm,
                            Some(Witness::from_current(&got.try_sub(&want).expect("same context"))),
                            format!("leading term {got}, expected {want}"),
                        ),
                        Err(e) => CheckReport::fail("root-gr", prm, None, e.to_string()),
                    });
                }
            }
        }
    }
    out
}

/// Without shifts, the recursion reproduces the Gauss factors `E_{a,b}` and `F_{b,a}`.
pub fn unshifted_root_checks(par: &Parabolic, budget: u32) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (side, row, col) in roots(par.m()) {
        let family = if side == Side::E { Family::E } else { Family::F };
        let (h, w) = inner_sizes(par, row, col);
        for i in 1..=h {
            for j in 1..=w {
                for r in 1..=budget {
                    let prm = root_params(par, side, row, col, i, j, r);
                    let outcome = par
                        .higher_root(side, false, row, col, i, j, r, 1)
                        .and_then(|x| Ok(&x - par.series(family, row, col, i, j)?.coeff(r as usize)?));
                    out.push(CheckReport::from_outcome("root-gauss", prm, outcome));
                }
            }
        }
    }
    out
}

/// The transposition anti-automorphism sends `E^{(r)}_{a,b;i,j}` to `F^{(r)}_{b,a;j,i}`.
pub fn tau_mirror_checks(par: &Parabolic, budget: u32) -> Vec<CheckReport> {
    let tau = GeneratorImageTable::tau(par.ctx(), budget);
    let mut out = Vec::new();
    for (side, row, col) in roots(par.m()) {
        if side == Side::F {
            continue;
        }
        let (h, w) = inner_sizes(par, row, col);
        for i in 1..=h {
            for j in 1..=w {
                for r in 1..=budget {
                    let prm = root_params(par, side, row, col, i, j, r);
                    let outcome = (|| -> Result<Element> {
                        let e = par.series(Family::E, row, col, i, j)?.coeff(r as usize)?;
                        let f = par.series(Family::F, col, row, j, i)?.coeff(r as usize)?;
                        Ok(&tau.apply(e)? - f)
                    })();
                    out.push(CheckReport::from_outcome("root-tau", prm, outcome));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::AlgebraContext;
    use crate::series::Composition;
    use crate::shift::{ShiftData, ShiftMatrix};

    #[test]
    fn three_blocks_with_a_wide_middle() {
        let c = AlgebraContext::new(4, 3).unwrap();
        let par = Parabolic::unshifted(c, Composition::new(vec![1, 2, 1]).unwrap(), 3).unwrap();
        let checks = witness_independence_checks(&par, 3);
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|r| r.passed()), "{checks:?}");
        assert!(unshifted_root_checks(&par, 3).iter().all(|r| r.passed()));
        assert!(tau_mirror_checks(&par, 3).iter().all(|r| r.passed()));
    }

    #[test]
    fn shifted_leading_terms() {
        let c = AlgebraContext::new(3, 3).unwrap();
        let sigma = ShiftMatrix::parse("0,1,2;0,0,1;0,0,0", 3).unwrap();
        let par = Parabolic::new(c, ShiftData::new(sigma, Composition::ones(3)).unwrap(), 4).unwrap();
        let checks = root_gr_checks(&par, 3);
        assert!(checks.iter().all(|r| r.passed()), "{checks:?}");
        assert!(witness_independence_checks(&par, 4).iter().all(|r| r.passed()));
    }
}
