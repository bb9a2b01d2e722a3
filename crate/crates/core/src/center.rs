//! Central elements: the Harish-Chandra series `c(u)`, quantum determinants
//! of diagonal blocks, the p-central series `B`, `P`, `Q`, `bc`, and p-th
//! powers of higher roots, with centrality and leading-term checks.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::current::{gr_identify, p_power_generator, z, CurrentElement};
use crate::error::{Error, Result};
use crate::pbw::{AlgebraContext, Element};
use crate::presentation::{falling_product, Family, Parabolic, ParabolicIndex, Side};
use crate::report::{params, CheckReport, Params, Status, Witness};
use crate::series::{Composition, SeriesMatrix, TruncatedSeries};
use crate::shift::ShiftMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CentralKind {
    C,
    QdetD { a: usize },
    B { a: usize, i: usize, j: usize },
    P { a: usize, b: usize, i: usize, j: usize },
    Q { b: usize, a: usize, i: usize, j: usize },
    Bc,
}

impl fmt::Display for CentralKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CentralKind::C => write!(f, "c"),
            CentralKind::QdetD { a } => write!(f, "qdet D[{a}]"),
            CentralKind::B { a, i, j } => write!(f, "B[{a};{i},{j}]"),
            CentralKind::P { a, b, i, j } => write!(f, "P[{a},{b};{i},{j}]"),
            CentralKind::Q { b, a, i, j } => write!(f, "Q[{b},{a};{i},{j}]"),
            CentralKind::Bc => write!(f, "bc"),
        }
    }
}

/// A named central series together with the shape it was built from.
#[derive(Clone, Debug)]
pub struct CentralSeries {
    pub kind: CentralKind,
    pub series: TruncatedSeries,
    pub mu: Composition,
    pub sigma: ShiftMatrix,
}

impl CentralSeries {
    pub fn coeff(&self, r: usize) -> Result<&Element> {
        self.series.coeff(r)
    }
}

/// `sum_w sgn(w) M_{w(1),1}(u) M_{w(2),2}(u-1) ... M_{w(k),k}(u-k+1)`.
pub fn quantum_determinant(m: &SeriesMatrix) -> Result<TruncatedSeries> {
    let k = m.rows();
    if m.cols() != k {
        return Err(Error::Shape(format!("quantum determinant of a {}x{} matrix", k, m.cols())));
    }
    let mut out = TruncatedSeries::zero(m.ctx(), m.order());
    for perm in (0..k).permutations(k) {
        let inversions = (0..k).flat_map(|x| (x + 1..k).map(move |y| (x, y))).filter(|&(x, y)| perm[x] > perm[y]).count();
        let mut term = TruncatedSeries::one(m.ctx(), m.order());
        for (col, &row) in perm.iter().enumerate() {
            term = term.try_mul(&m.get(row + 1, col + 1).shift(-(col as i64)))?;
        }
        out = if inversions % 2 == 0 { out.try_add(&term)? } else { out.try_sub(&term)? };
    }
    Ok(out)
}

/// `c(u) = d_1(u) d_2(u-1) ... d_n(u-n+1)` from the Drinfeld (all-ones) factors.
pub fn hc_series(ctx: AlgebraContext, order: usize) -> Result<TruncatedSeries> {
    let par = Parabolic::unshifted(ctx, Composition::ones(ctx.n()), order)?;
    let mut out = TruncatedSeries::one(ctx, order);
    for a in 1..=ctx.n() {
        out = out.try_mul(&par.d_series(a, 1, 1)?.shift(1 - a as i64))?;
    }
    Ok(out)
}

/// `qdet D_1(u - p_1) ... qdet D_m(u - p_m)` for the shape of `par`.
pub fn hc_series_factored(par: &Parabolic) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::one(par.ctx(), par.order());
    for a in 1..=par.m() {
        let q = quantum_determinant(&par.factors().d[a - 1])?;
        out = out.try_mul(&q.shift(-(par.mu().offset(a) as i64)))?;
    }
    Ok(out)
}

/// Compares `c(u)` with the product of shifted block quantum determinants.
pub fn verify_factorization(ctx: AlgebraContext, mu: &Composition, order: usize) -> CheckReport {
    let prm = shape_params(mu, order);
    let run = || -> Result<Option<(usize, Element)>> {
        let c = hc_series(ctx, order)?;
        let par = Parabolic::unshifted(ctx, mu.clone(), order)?;
        let f = hc_series_factored(&par)?;
        Ok(first_coeff_difference(&c, &f))
    };
    match run() {
        Ok(None) => CheckReport::pass("hc-factorization", prm),
        Ok(Some((r, d))) => CheckReport::from_difference("hc-factorization", prm, &d).with_note(format!("coefficient u^-{r}")),
        Err(e) => CheckReport::from_error("hc-factorization", prm, e),
    }
}

/// `bc(u) = c(u) c(u-1) ... c(u-p+1)`.
pub fn bc_series(c: &TruncatedSeries) -> Result<TruncatedSeries> {
    falling_product(c, c.ctx().p())
}

/// `B_{a;i,j}(u) = D_{a;i,j}(u) D_{a;i,j}(u-1) ... D_{a;i,j}(u-p+1)`.
pub fn b_series(par: &Parabolic, a: usize, i: usize, j: usize) -> Result<TruncatedSeries> {
    falling_product(par.d_series(a, i, j)?, par.ctx().p())
}

/// `P_{a,b;i,j}(u) = E_{a,b;i,j}(u)^p`.
pub fn p_series(par: &Parabolic, a: usize, b: usize, i: usize, j: usize) -> Result<TruncatedSeries> {
    par.series(Family::E, a, b, i, j)?.pow(par.ctx().p())
}

/// `Q_{b,a;i,j}(u) = F_{b,a;i,j}(u)^p`.
pub fn q_series(par: &Parabolic, b: usize, a: usize, i: usize, j: usize) -> Result<TruncatedSeries> {
    par.series(Family::F, b, a, i, j)?.pow(par.ctx().p())
}

pub fn central_series(par: &Parabolic, kind: CentralKind) -> Result<CentralSeries> {
    let series = match kind {
        CentralKind::C => hc_series(par.ctx(), par.order())?,
        CentralKind::QdetD { a } => {
            if a == 0 || a > par.m() {
                return Err(Error::BadIndex(format!("block {a} of {}", par.mu())));
            }
            quantum_determinant(&par.factors().d[a - 1])?
        }
        CentralKind::B { a, i, j } => b_series(par, a, i, j)?,
        CentralKind::P { a, b, i, j } => p_series(par, a, b, i, j)?,
        CentralKind::Q { b, a, i, j } => q_series(par, b, a, i, j)?,
        CentralKind::Bc => bc_series(&hc_series(par.ctx(), par.order())?)?,
    };
    Ok(CentralSeries { kind, series, mu: par.mu().clone(), sigma: par.data().sigma().clone() })
}

/// `(sE_{row,col;i,j}^(r))^p` or `(sF_{row,col;i,j}^(r))^p`.
#[allow(clippy::too_many_arguments)]
pub fn root_power(par: &Parabolic, side: Side, row: usize, col: usize, i: usize, j: usize, r: u32) -> Result<Element> {
    Ok(par.higher_root(side, true, row, col, i, j, r, 1)?.pow(par.ctx().p()))
}

/// The commutant family a centrality check runs against.
#[derive(Clone, Copy, Debug)]
pub enum CentralityScope<'a> {
    /// All `t_{i,j}^(s)` with `s <= budget`.
    Full { ctx: AlgebraContext, budget: u32 },
    /// The generating family of `Y_n(sigma)` with superscripts `<= budget`.
    Shifted { parabolic: &'a Parabolic, budget: u32 },
}

impl CentralityScope<'_> {
    pub fn budget(&self) -> u32 {
        match self {
            CentralityScope::Full { budget, .. } | CentralityScope::Shifted { budget, .. } => *budget,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CentralityScope::Full { .. } => "full",
            CentralityScope::Shifted { .. } => "shifted",
        }
    }
}

/// Outcome of commuting one element against a finite test family. A pass
/// certifies only the listed commutators.
#[derive(Clone, Debug)]
pub struct CentralityCertificate {
    pub label: String,
    pub scope: &'static str,
    pub budget: u32,
    pub tested: usize,
    pub status: Status,
    /// The first generator that fails to commute, and the commutator.
    pub failure: Option<(String, Element)>,
    pub error: Option<String>,
}

impl CentralityCertificate {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_report(&self, id: &str, mut prm: Params) -> CheckReport {
        prm.insert("budget".into(), self.budget.into());
        prm.insert("scope".into(), self.scope.into());
        let note = format!("{}: {} commutators tested", self.label, self.tested);
        match (&self.failure, &self.error, self.status) {
            (Some((g, x)), _, _) => {
                CheckReport::fail(id, prm, Some(Witness::from_element(x)), format!("{} does not commute with {g}", self.label))
            }
            (None, Some(e), Status::Skipped) => CheckReport::skipped(id, prm, e.clone()),
            (None, Some(e), _) => CheckReport::fail(id, prm, None, e.clone()),
            _ => CheckReport::pass(id, prm).with_note(note),
        }
    }
}

pub fn centrality_check(x: &Element, label: &str, scope: CentralityScope<'_>) -> CentralityCertificate {
    let mut cert = CentralityCertificate {
        label: label.to_string(),
        scope: scope.name(),
        budget: scope.budget(),
        tested: 0,
        status: Status::Pass,
        failure: None,
        error: None,
    };
    let family: Vec<(String, Result<Element>)> = match scope {
        CentralityScope::Full { ctx, budget } => {
            let n = ctx.n();
            (1..=budget)
                .flat_map(|s| (1..=n).flat_map(move |i| (1..=n).map(move |j| (i, j, s))))
                .map(|(i, j, s)| (format!("t[{i},{j}]^({s})"), Element::generator(ctx, i, j, s)))
                .collect()
        }
        CentralityScope::Shifted { parabolic, budget } => parabolic
            .shifted_generator_set(budget)
            .into_iter()
            .map(|idx| (idx.to_string(), parabolic.coefficient(idx)))
            .collect(),
    };
    for (name, g) in family {
        let res = g.and_then(|g| x.commutator(&g));
        match res {
            Ok(c) if c.is_zero() => cert.tested += 1,
            Ok(c) => {
                cert.tested += 1;
                cert.status = Status::Fail;
                cert.failure = Some((name, c));
                break;
            }
            Err(e) => {
                cert.status = match e {
                    Error::Budget { .. } => Status::Skipped,
                    _ => Status::Fail,
                };
                cert.error = Some(e.to_string());
                break;
            }
        }
    }
    cert
}

/// Compares the `chi`-image of the degree-`d` part of `x` with `expected`;
/// fails if `x` has terms above degree `d`.
pub fn gr_leading_check(id: &str, prm: Params, x: &Element, expected: &CurrentElement, d: usize) -> CheckReport {
    let prm = {
        let mut prm = prm;
        prm.insert("degree".into(), d.into());
        prm
    };
    match gr_identify(x, d) {
        Ok(got) => match got.try_sub(expected) {
            Ok(diff) if diff.is_zero() => CheckReport::pass(id, prm),
            Ok(diff) => CheckReport::fail(id, prm, Some(Witness::from_current(&diff)), "leading term differs from the expected one"),
            Err(e) => CheckReport::fail(id, prm, None, e.to_string()),
        },
        Err(e) => CheckReport::fail(id, prm, None, e.to_string()),
    }
}

/// One generator of the p-center with its expected leading term.
#[derive(Clone, Debug)]
pub struct PCenterGenerator {
    pub label: String,
    pub params: Params,
    pub element: Element,
    pub expected: CurrentElement,
    pub degree: usize,
}

/// `B^{(rp)}_{a;i,j}`, `(sE^{(r)}_{a,b;i,j})^p` and `(sF^{(r)}_{b,a;i,j})^p`
/// with `rp <= rp_budget`, each paired with its expected leading term.
pub fn p_center_generators(par: &Parabolic, rp_budget: u32) -> Result<Vec<PCenterGenerator>> {
    let ctx = par.ctx();
    let p = ctx.p();
    let mu = par.mu();
    let m = par.m();
    let mut out = Vec::new();
    for a in 1..=m {
        for i in 1..=mu.part(a) {
            for j in 1..=mu.part(a) {
                let b = b_series(par, a, i, j)?;
                for r in (1..).take_while(|r| r * p <= rp_budget) {
                    out.push(PCenterGenerator {
                        label: format!("B[{a};{i},{j}]^({})", r * p),
                        params: params(&[("a", a as i64), ("i", i as i64), ("j", j as i64), ("r", (r * p) as i64)]),
                        element: b.coeff((r * p) as usize)?.clone(),
                        expected: p_power_generator(ctx, mu.offset(a) + i, mu.offset(a) + j, r - 1)?,
                        degree: ((r - 1) * p) as usize,
                    });
                }
            }
        }
    }
    for a in 1..m {
        for b in a + 1..=m {
            for (side, row, col) in [(Side::E, a, b), (Side::F, b, a)] {
                let name = if side == Side::E { "E" } else { "F" };
                for i in 1..=mu.part(row) {
                    for j in 1..=mu.part(col) {
                        let lo = par.data().s(row, col) + 1;
                        for r in (lo..).take_while(|r| r * p <= rp_budget) {
                            let element = root_power(par, side, row, col, i, j, r)?;
                            out.push(PCenterGenerator {
                                label: format!("({name}[{row},{col};{i},{j}]^({r}))^{p}"),
                                params: params(&[
                                    ("row", row as i64),
                                    ("col", col as i64),
                                    ("i", i as i64),
                                    ("j", j as i64),
                                    ("r", r as i64),
                                ]),
                                element,
                                expected: p_power_generator(ctx, mu.offset(row) + i, mu.offset(col) + j, r - 1)?,
                                degree: ((r - 1) * p) as usize,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The computed leading terms of `gens` have pairwise distinct leading monomials.
pub fn leading_monomials_distinct(gens: &[PCenterGenerator], prm: Params) -> CheckReport {
    let mut seen = BTreeSet::new();
    for g in gens {
        let lead = gr_identify(&g.element, g.degree).ok().and_then(|x| x.leading_monomial());
        match lead {
            Some((w, _)) => {
                if !seen.insert(w) {
                    return CheckReport::fail("leading-distinct", prm, None, format!("{} repeats a leading monomial", g.label));
                }
            }
            None => return CheckReport::fail("leading-distinct", prm, None, format!("{} has no leading term", g.label)),
        }
    }
    CheckReport::pass("leading-distinct", prm).with_note(format!("{} generators", gens.len()))
}

/// The set of computed leading terms, for comparison across shapes.
pub fn leading_term_set(gens: &[PCenterGenerator]) -> Result<BTreeSet<String>> {
    gens.iter().map(|g| Ok(gr_identify(&g.element, g.degree)?.to_string())).collect()
}

/// `B^{(r)}_{a;i,j} = 0` for `0 < r < p`, every block and inner index.
pub fn diagonal_vanishing_checks(par: &Parabolic) -> Vec<CheckReport> {
    let p = par.ctx().p();
    let mut out = Vec::new();
    for a in 1..=par.m() {
        for i in 1..=par.part(a) {
            for j in 1..=par.part(a) {
                let b = b_series(par, a, i, j);
                for r in 1..p {
                    let prm = params(&[("a", a as i64), ("i", i as i64), ("j", j as i64), ("r", r as i64)]);
                    let outcome = b.as_ref().map_err(Clone::clone).and_then(|b| b.coeff(r as usize).cloned());
                    out.push(CheckReport::from_outcome("b-vanishing", prm, outcome));
                }
            }
        }
    }
    out
}

/// `[D^{(r)}_{a;i,j}, D^{(s)}_{a;i,j}] = 0` for `r, s <= budget`.
pub fn diagonal_commutation_checks(par: &Parabolic, budget: u32) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for a in 1..=par.m() {
        for i in 1..=par.part(a) {
            for j in 1..=par.part(a) {
                for r in 1..=budget {
                    for s in r + 1..=budget {
                        let prm = params(&[("a", a as i64), ("i", i as i64), ("j", j as i64), ("r", r as i64), ("s", s as i64)]);
                        let outcome = par.d(a, i, j, r).and_then(|x| x.commutator(&par.d(a, i, j, s)?));
                        out.push(CheckReport::from_outcome("d-commute", prm, outcome));
                    }
                }
            }
        }
    }
    out
}

/// Compares the two descriptions of the diagonal p-central series for the
/// single-block shape against the all-ones shape:
/// `t_11(u) ... t_11(u-p+1) = b_1(u)` and `t_12(u) ... t_12(u-p+1) = b_1(u) e_1(u)^p`.
pub fn both_proofs_checks(ctx: AlgebraContext, order: usize) -> Vec<CheckReport> {
    let prm = params(&[("n", ctx.n() as i64), ("order", order as i64)]);
    let run = || -> Result<Vec<(&'static str, Option<(usize, Element)>)>> {
        let whole = Parabolic::unshifted(ctx, Composition::new(vec![ctx.n()])?, order)?;
        let ones = Parabolic::unshifted(ctx, Composition::ones(ctx.n()), order)?;
        let b1 = b_series(&ones, 1, 1, 1)?;
        let s11 = b_series(&whole, 1, 1, 1)?;
        let s12 = b_series(&whole, 1, 1, 2)?;
        let rhs12 = b1.try_mul(&ones.e_series(1, 1, 1)?.pow(ctx.p())?)?;
        Ok(vec![("b-two-shapes-diagonal", first_coeff_difference(&s11, &b1)), ("b-two-shapes-offdiagonal", first_coeff_difference(&s12, &rhs12))])
    };
    match run() {
        Ok(v) => v
            .into_iter()
            .map(|(id, d)| match d {
                None => CheckReport::pass(id, prm.clone()),
                Some((r, x)) => CheckReport::from_difference(id, prm.clone(), &x).with_note(format!("coefficient u^-{r}")),
            })
            .collect(),
        Err(e) => vec![CheckReport::from_error("b-two-shapes", prm, e)],
    }
}

/// The leading term `z_{r-1}^p - z_{rp-p}` expected for `bc^{(rp)}`.
pub fn bc_expected(ctx: AlgebraContext, r: u32) -> CurrentElement {
    let p = ctx.p();
    z(ctx, r - 1).pow(p).try_sub(&z(ctx, r * p - p)).expect("same context")
}

fn first_coeff_difference(x: &TruncatedSeries, y: &TruncatedSeries) -> Option<(usize, Element)> {
    x.coeffs().iter().zip(y.coeffs()).enumerate().find(|(_, (a, b))| a != b).map(|(r, (a, b))| (r, a - b))
}

fn shape_params(mu: &Composition, order: usize) -> Params {
    let mut prm = params(&[("order", order as i64)]);
    prm.insert("mu".into(), mu.parts().into());
    prm
}

/// Labels every coefficient of the generating family used in shifted scope.
pub fn generator_label(idx: ParabolicIndex) -> String {
    idx.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::ShiftData;

    fn ctx(n: usize, p: u32) -> AlgebraContext {
        AlgebraContext::new(n, p).unwrap()
    }

    fn t(c: AlgebraContext, i: usize, j: usize, r: u32) -> Element {
        Element::generator(c, i, j, r).unwrap()
    }

    #[test]
    fn qdet_of_full_block() {
        let c = ctx(2, 3);
        let par = Parabolic::unshifted(c, Composition::new(vec![2]).unwrap(), 3).unwrap();
        let q = quantum_determinant(&par.factors().d[0]).unwrap();
        assert_eq!(q.coeff(1).unwrap(), &(&t(c, 1, 1, 1) + &t(c, 2, 2, 1)));
        let expected = &(&(&(&t(c, 1, 1, 2) + &t(c, 2, 2, 2)) + &t(c, 2, 2, 1)) + &(&t(c, 1, 1, 1) * &t(c, 2, 2, 1)))
            - &(&t(c, 2, 1, 1) * &t(c, 1, 2, 1));
        assert_eq!(q.coeff(2).unwrap(), &expected);
    }

    #[test]
    fn hc_series_small_cases() {
        let c1 = ctx(1, 3);
        let s = hc_series(c1, 3).unwrap();
        for r in 1..=3 {
            assert_eq!(s.coeff(r).unwrap(), &t(c1, 1, 1, r as u32));
        }
        let c2 = ctx(2, 3);
        assert_eq!(hc_series(c2, 2).unwrap().coeff(1).unwrap(), &(&t(c2, 1, 1, 1) + &t(c2, 2, 2, 1)));
    }

    #[test]
    fn factorization_for_small_shapes() {
        for mu in [vec![1, 1], vec![2]] {
            let r = verify_factorization(ctx(2, 3), &Composition::new(mu).unwrap(), 4);
            assert!(r.passed(), "{r:?}");
        }
        let r = verify_factorization(ctx(3, 3), &Composition::new(vec![2, 1]).unwrap(), 4);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn b_series_rank_one() {
        let c = ctx(1, 3);
        let par = Parabolic::unshifted(c, Composition::ones(1), 3).unwrap();
        let b = b_series(&par, 1, 1, 1).unwrap();
        assert!(b.coeff(1).unwrap().is_zero());
        assert!(b.coeff(2).unwrap().is_zero());
        let x = t(c, 1, 1, 1);
        assert_eq!(b.coeff(3).unwrap(), &(&x.pow(3) - &x));
        let r = gr_leading_check("gr", Params::new(), b.coeff(3).unwrap(), &p_power_generator(c, 1, 1, 0).unwrap(), 0);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn bc_rank_one_leading_term() {
        let c = ctx(1, 3);
        let bc = bc_series(&hc_series(c, 3).unwrap()).unwrap();
        let r = gr_leading_check("gr", Params::new(), bc.coeff(3).unwrap(), &bc_expected(c, 1), 0);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn p_series_starts_at_p() {
        let c = ctx(2, 3);
        let par = Parabolic::unshifted(c, Composition::ones(2), 4).unwrap();
        let pser = p_series(&par, 1, 2, 1, 1).unwrap();
        for r in 0..3 {
            assert!(pser.coeff(r).unwrap().is_zero());
        }
        assert_eq!(pser.coeff(3).unwrap(), &t(c, 1, 2, 1).pow(3));
    }

    #[test]
    fn centrality_examples() {
        let c = ctx(2, 3);
        let full = CentralityScope::Full { ctx: c, budget: 3 };
        assert!(centrality_check(&Element::unit(c), "1", full).passed());
        let c2 = hc_series(c, 2).unwrap();
        assert!(centrality_check(c2.coeff(2).unwrap(), "c2", full).passed());
        let cert = centrality_check(&t(c, 1, 2, 1), "t12", full);
        assert_eq!(cert.status, Status::Fail);
        let (g, w) = cert.failure.unwrap();
        assert_eq!(g, "t[1,1]^(1)");
        assert_eq!(w, t(c, 1, 2, 1).commutator(&t(c, 1, 1, 1)).unwrap());
    }

    #[test]
    fn generator_enumeration() {
        let c = ctx(2, 3);
        let par = Parabolic::unshifted(c, Composition::ones(2), 3).unwrap();
        let gens = p_center_generators(&par, 3).unwrap();
        let labels: Vec<&str> = gens.iter().map(|g| g.label.as_str()).collect();
        assert_eq!(labels, ["B[1;1,1]^(3)", "B[2;1,1]^(3)", "(E[1,2;1,1]^(1))^3", "(F[2,1;1,1]^(1))^3"]);
        assert!(leading_monomials_distinct(&gens, Params::new()).passed());

        let data = ShiftData::new(ShiftMatrix::parse("0,1;0,0", 2).unwrap(), Composition::ones(2)).unwrap();
        let shifted = Parabolic::new(c, data, 6).unwrap();
        let gens = p_center_generators(&shifted, 6).unwrap();
        let e_side: Vec<&str> = gens.iter().filter(|g| g.label.starts_with("(E")).map(|g| g.label.as_str()).collect();
        assert_eq!(e_side, ["(E[1,2;1,1]^(2))^3"]);
    }

    #[test]
    fn vanishing_and_two_shapes() {
        let c = ctx(2, 3);
        for mu in Composition::all(2) {
            let par = Parabolic::unshifted(c, mu, 3).unwrap();
            assert!(diagonal_vanishing_checks(&par).iter().all(|r| r.passed()));
        }
        for r in both_proofs_checks(c, 4) {
            assert!(r.passed(), "{r:?}");
        }
    }
}
