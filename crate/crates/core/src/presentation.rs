//! Parabolic generators of `Y_n` attached to a composition, their shifted
//! higher-root versions, and exact verification of the parabolic relations
//! and the generating-series identities.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pbw::{AlgebraContext, Element};
use crate::report::{params, CheckReport, Params};
use crate::series::{gauss_decompose, BiSeries, Composition, GaussFactors, SeriesMatrix, TruncatedSeries};
use crate::shift::ShiftData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    D,
    DPrime,
    E,
    F,
}

/// A parabolic coefficient: `D^{(r)}_{a;i,j}` and `D'^{(r)}_{a;i,j}` have
/// `row = col = a`; `E^{(r)}_{a,b;i,j}` has `row = a < col = b`;
/// `F^{(r)}_{b,a;i,j}` has `row = b > col = a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParabolicIndex {
    pub family: Family,
    pub row: usize,
    pub col: usize,
    pub i: usize,
    pub j: usize,
    pub r: u32,
}

impl ParabolicIndex {
    pub fn d(a: usize, i: usize, j: usize, r: u32) -> ParabolicIndex {
        ParabolicIndex { family: Family::D, row: a, col: a, i, j, r }
    }

    pub fn d_prime(a: usize, i: usize, j: usize, r: u32) -> ParabolicIndex {
        ParabolicIndex { family: Family::DPrime, row: a, col: a, i, j, r }
    }

    /// `E^{(r)}_{a;i,j} = E^{(r)}_{a,a+1;i,j}`.
    pub fn e(a: usize, i: usize, j: usize, r: u32) -> ParabolicIndex {
        ParabolicIndex { family: Family::E, row: a, col: a + 1, i, j, r }
    }

    /// `F^{(r)}_{a;i,j} = F^{(r)}_{a+1,a;i,j}`.
    pub fn f(a: usize, i: usize, j: usize, r: u32) -> ParabolicIndex {
        ParabolicIndex { family: Family::F, row: a + 1, col: a, i, j, r }
    }

    pub fn with_superscript(self, r: u32) -> ParabolicIndex {
        ParabolicIndex { r, ..self }
    }
}

impl fmt::Display for ParabolicIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, blocks) = match self.family {
            Family::D => ("D", format!("{}", self.row)),
            Family::DPrime => ("D'", format!("{}", self.row)),
            Family::E | Family::F => {
                let name = if self.family == Family::E { "E" } else { "F" };
                if self.row.abs_diff(self.col) == 1 {
                    (name, format!("{}", self.row.min(self.col)))
                } else {
                    (name, format!("{},{}", self.row, self.col))
                }
            }
        };
        write!(f, "{name}[{blocks};{},{}]^({})", self.i, self.j, self.r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    E,
    F,
}

/// Gauss factors of `T(u)` for an admissible shape, with coefficient access.
#[derive(Clone, Debug)]
pub struct Parabolic {
    ctx: AlgebraContext,
    data: ShiftData,
    factors: GaussFactors,
}

impl Parabolic {
    pub fn new(ctx: AlgebraContext, data: ShiftData, order: usize) -> Result<Parabolic> {
        if data.mu().n() != ctx.n() {
            return Err(Error::BadComposition { parts: data.mu().parts().to_vec(), n: ctx.n() });
        }
        let factors = gauss_decompose(&SeriesMatrix::rtt(ctx, order), data.mu())?;
        Ok(Parabolic { ctx, data, factors })
    }

    pub fn unshifted(ctx: AlgebraContext, mu: Composition, order: usize) -> Result<Parabolic> {
        Parabolic::new(ctx, ShiftData::unshifted(mu), order)
    }

    pub fn ctx(&self) -> AlgebraContext {
        self.ctx
    }

    pub fn data(&self) -> &ShiftData {
        &self.data
    }

    pub fn mu(&self) -> &Composition {
        self.data.mu()
    }

    pub fn m(&self) -> usize {
        self.data.mu().len()
    }

    pub fn order(&self) -> usize {
        self.factors.order()
    }

    pub fn factors(&self) -> &GaussFactors {
        &self.factors
    }

    pub fn part(&self, a: usize) -> usize {
        self.mu().part(a)
    }

    fn check_block(&self, a: usize, lo: usize, hi: usize) -> Result<()> {
        if a < lo || a > hi {
            return Err(Error::BadIndex(format!("block {a} outside {lo}..={hi} for {}", self.mu())));
        }
        Ok(())
    }

    fn check_inner(&self, i: usize, j: usize, rb: usize, cb: usize) -> Result<()> {
        if i == 0 || j == 0 || i > self.part(rb) || j > self.part(cb) {
            return Err(Error::BadIndex(format!("inner index ({i},{j}) outside block ({rb},{cb}) of {}", self.mu())));
        }
        Ok(())
    }

    pub fn series(&self, family: Family, row: usize, col: usize, i: usize, j: usize) -> Result<&TruncatedSeries> {
        let m = self.m();
        match family {
            Family::D | Family::DPrime => {
                if row != col {
                    return Err(Error::BadIndex(format!("diagonal family needs equal blocks, got ({row},{col})")));
                }
                self.check_block(row, 1, m)?;
                self.check_inner(i, j, row, row)?;
                let mats = if family == Family::D { &self.factors.d } else { &self.factors.d_prime };
                Ok(mats[row - 1].get(i, j))
            }
            Family::E => {
                if row >= col || col > m || row == 0 {
                    return Err(Error::BadIndex(format!("E needs 1 <= a < b <= {m}, got ({row},{col})")));
                }
                self.check_inner(i, j, row, col)?;
                Ok(self.factors.e[&(row, col)].get(i, j))
            }
            Family::F => {
                if row <= col || row > m || col == 0 {
                    return Err(Error::BadIndex(format!("F needs 1 <= a < b <= {m}, got ({row},{col})")));
                }
                self.check_inner(i, j, row, col)?;
                Ok(self.factors.f[&(row, col)].get(i, j))
            }
        }
    }

    /// The exact coefficient named by `idx`.
    pub fn coefficient(&self, idx: ParabolicIndex) -> Result<Element> {
        let s = self.series(idx.family, idx.row, idx.col, idx.i, idx.j)?;
        s.coeff(idx.r as usize).cloned()
    }

    pub fn d_series(&self, a: usize, i: usize, j: usize) -> Result<&TruncatedSeries> {
        self.series(Family::D, a, a, i, j)
    }

    pub fn d_prime_series(&self, a: usize, i: usize, j: usize) -> Result<&TruncatedSeries> {
        self.series(Family::DPrime, a, a, i, j)
    }

    pub fn e_series(&self, a: usize, i: usize, j: usize) -> Result<&TruncatedSeries> {
        self.series(Family::E, a, a + 1, i, j)
    }

    pub fn f_series(&self, a: usize, i: usize, j: usize) -> Result<&TruncatedSeries> {
        self.series(Family::F, a + 1, a, i, j)
    }

    pub fn d(&self, a: usize, i: usize, j: usize, r: u32) -> Result<Element> {
        self.coefficient(ParabolicIndex::d(a, i, j, r))
    }

    pub fn d_prime(&self, a: usize, i: usize, j: usize, r: u32) -> Result<Element> {
        self.coefficient(ParabolicIndex::d_prime(a, i, j, r))
    }

    pub fn e(&self, a: usize, i: usize, j: usize, r: u32) -> Result<Element> {
        self.coefficient(ParabolicIndex::e(a, i, j, r))
    }

    pub fn f(&self, a: usize, i: usize, j: usize, r: u32) -> Result<Element> {
        self.coefficient(ParabolicIndex::f(a, i, j, r))
    }

    /// Higher root by the commutator recursion. For [`Side::E`],
    /// `row < col` and
    /// `sE_{row,col;i,j}^(r) = [sE_{row,col-1;i,k}^(r - s), E_{col-1;k,j}^(s + 1)]`
    /// with `s = s^mu_{col-1,col}` (zero when `shifted` is false). For
    /// [`Side::F`], `row > col` and
    /// `sF_{row,col;i,j}^(r) = [F_{row-1;i,k}^(s + 1), sF_{row-1,col;k,j}^(r - s)]`
    /// with `s = s^mu_{row,row-1}`. The witness `k` is used at the top level;
    /// deeper levels use `k = 1`.
    #[allow(clippy::too_many_arguments)]
    pub fn higher_root(&self, side: Side, shifted: bool, row: usize, col: usize, i: usize, j: usize, r: u32, k: usize) -> Result<Element> {
        let m = self.m();
        let shift = |a: usize, b: usize| if shifted { self.data.s(a, b) } else { 0 };
        match side {
            Side::E => {
                if row == 0 || row >= col || col > m {
                    return Err(Error::BadIndex(format!("E root needs 1 <= a < b <= {m}, got ({row},{col})")));
                }
                self.check_inner(i, j, row, col)?;
                let bound = shift(row, col);
                if r <= bound {
                    return Err(Error::BelowShift { r: r as usize, bound: bound as usize });
                }
                if col == row + 1 {
                    return self.e(row, i, j, r);
                }
                if k == 0 || k > self.part(col - 1) {
                    return Err(Error::BadIndex(format!("witness {k} outside block {}", col - 1)));
                }
                let s = shift(col - 1, col);
                let left = self.higher_root(side, shifted, row, col - 1, i, k, r - s, 1)?;
                let right = self.e(col - 1, k, j, s + 1)?;
                left.commutator(&right)
            }
            Side::F => {
                if col == 0 || row <= col || row > m {
                    return Err(Error::BadIndex(format!("F root needs 1 <= a < b <= {m}, got ({row},{col})")));
                }
                self.check_inner(i, j, row, col)?;
                let bound = shift(row, col);
                if r <= bound {
                    return Err(Error::BelowShift { r: r as usize, bound: bound as usize });
                }
                if row == col + 1 {
                    return self.f(col, i, j, r);
                }
                if k == 0 || k > self.part(row - 1) {
                    return Err(Error::BadIndex(format!("witness {k} outside block {}", row - 1)));
                }
                let s = shift(row, row - 1);
                let left = self.f(row - 1, i, k, s + 1)?;
                let right = self.higher_root(side, shifted, row - 1, col, k, j, r - s, 1)?;
                left.commutator(&right)
            }
        }
    }

    /// The generating family of `Y_n(sigma)` up to superscript `budget`:
    /// all `D^{(r)}`, `E^{(r)}_a` above `s^mu_{a,a+1}`, `F^{(r)}_a` above `s^mu_{a+1,a}`.
    pub fn shifted_generator_set(&self, budget: u32) -> Vec<ParabolicIndex> {
        shifted_generator_set(&self.data, budget)
    }
}

/// See [`Parabolic::shifted_generator_set`].
pub fn shifted_generator_set(data: &ShiftData, budget: u32) -> Vec<ParabolicIndex> {
    let mu = data.mu();
    let m = mu.len();
    let mut out = Vec::new();
    for a in 1..=m {
        for i in 1..=mu.part(a) {
            for j in 1..=mu.part(a) {
                for r in 1..=budget {
                    out.push(ParabolicIndex::d(a, i, j, r));
                }
            }
        }
    }
    for a in 1..m {
        for i in 1..=mu.part(a) {
            for j in 1..=mu.part(a + 1) {
                for r in data.s(a, a + 1) + 1..=budget {
                    out.push(ParabolicIndex::e(a, i, j, r));
                }
            }
        }
        for i in 1..=mu.part(a + 1) {
            for j in 1..=mu.part(a) {
                for r in data.s(a + 1, a) + 1..=budget {
                    out.push(ParabolicIndex::f(a, i, j, r));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Relations of the parabolic presentation

/// The fourteen defining relations, `pr1` through `pr14`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationId(pub u8);

impl RelationId {
    pub fn all() -> impl Iterator<Item = RelationId> {
        (1..=14).map(RelationId)
    }

    pub fn name(self) -> String {
        format!("pr{}", self.0)
    }
}

impl FromStr for RelationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<RelationId> {
        s.strip_prefix("pr")
            .and_then(|x| x.parse::<u8>().ok())
            .filter(|x| (1..=14).contains(x))
            .map(RelationId)
            .ok_or_else(|| Error::Unknown(format!("relation {s:?}")))
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pr{}", self.0)
    }
}

/// Index values of one relation instance; only the fields named in
/// `names` are meaningful.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Instance {
    pub a: usize,
    pub b: usize,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub f: usize,
    pub g: usize,
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub ell: u32,
    names: &'static str,
}

impl Instance {
    pub fn params(&self) -> Params {
        let mut pairs: Vec<(&str, i64)> = Vec::new();
        for name in self.names.split(',').filter(|x| !x.is_empty()) {
            let v = match name {
                "a" => self.a as i64,
                "b" => self.b as i64,
                "i" => self.i as i64,
                "j" => self.j as i64,
                "k" => self.k as i64,
                "l" => self.l as i64,
                "f" => self.f as i64,
                "g" => self.g as i64,
                "r" => self.r as i64,
                "s" => self.s as i64,
                "t" => self.t as i64,
                "ell" => self.ell as i64,
                _ => unreachable!("unknown instance field {name}"),
            };
            pairs.push((name, v));
        }
        params(&pairs)
    }
}

fn one_to(n: usize) -> std::ops::RangeInclusive<usize> {
    1..=n
}

fn delta(x: usize, y: usize) -> bool {
    x == y
}

impl Parabolic {
    fn zero(&self) -> Element {
        Element::zero(self.ctx)
    }

    fn e_ok(&self, a: usize, r: u32) -> bool {
        r > self.data.s(a, a + 1)
    }

    fn f_ok(&self, a: usize, r: u32) -> bool {
        r > self.data.s(a + 1, a)
    }

    /// Instances of a relation with all superscripts named on the left side
    /// in `1..=budget` (or `0..=budget` for `pr1`, `pr2`), restricted to those
    /// whose left side only involves generators of `Y_n(sigma)`. Returns the
    /// instances and the number excluded by the shift condition.
    pub fn relation_instances(&self, rel: RelationId, budget: u32) -> (Vec<Instance>, usize) {
        let m = self.m();
        let mu = |a: usize| self.part(a);
        let mut out = Vec::new();
        let mut excluded = 0usize;
        let sup = || 1..=budget;
        let mut push = |keep: bool, inst: Instance| {
            if keep {
                out.push(inst);
            } else {
                excluded += 1;
            }
        };
        match rel.0 {
            1 => {
                for a in one_to(m) {
                    for i in one_to(mu(a)) {
                        for j in one_to(mu(a)) {
                            push(true, Instance { a, i, j, names: "a,i,j", ..Default::default() });
                        }
                    }
                }
            }
            2 => {
                for a in one_to(m) {
                    for i in one_to(mu(a)) {
                        for j in one_to(mu(a)) {
                            for r in 0..=budget {
                                push(true, Instance { a, i, j, r, names: "a,i,j,r", ..Default::default() });
                            }
                        }
                    }
                }
            }
            3 => {
                for a in one_to(m) {
                    for b in one_to(m) {
                        for (i, j, k, l) in quad(mu(a), mu(a), mu(b), mu(b)) {
                            for r in sup() {
                                for s in sup() {
                                    push(true, Instance { a, b, i, j, k, l, r, s, names: "a,b,i,j,k,l,r,s", ..Default::default() });
                                }
                            }
                        }
                    }
                }
            }
            4 => {
                for a in 1..m {
                    for b in 1..m {
                        for (i, j, k, l) in quad(mu(a), mu(a + 1), mu(b + 1), mu(b)) {
                            for r in sup() {
                                for s in sup() {
                                    let keep = self.e_ok(a, r) && self.f_ok(b, s);
                                    push(keep, Instance { a, b, i, j, k, l, r, s, names: "a,b,i,j,k,l,r,s", ..Default::default() });
                                }
                            }
                        }
                    }
                }
            }
            5 | 6 => {
                for a in one_to(m) {
                    for b in 1..m {
                        let (kb, lb) = if rel.0 == 5 { (mu(b), mu(b + 1)) } else { (mu(b + 1), mu(b)) };
                        for (i, j, k, l) in quad(mu(a), mu(a), kb, lb) {
                            for r in sup() {
                                for s in sup() {
                                    let keep = if rel.0 == 5 { self.e_ok(b, s) } else { self.f_ok(b, s) };
                                    push(keep, Instance { a, b, i, j, k, l, r, s, names: "a,b,i,j,k,l,r,s", ..Default::default() });
                                }
                            }
                        }
                    }
                }
            }
            7 | 8 => {
                for a in 1..m {
                    let (ib, jb) = if rel.0 == 7 { (mu(a), mu(a + 1)) } else { (mu(a + 1), mu(a)) };
                    for (i, j, k, l) in quad(ib, jb, ib, jb) {
                        for r in sup() {
                            for s in sup() {
                                let keep = if rel.0 == 7 {
                                    self.e_ok(a, r) && self.e_ok(a, s)
                                } else {
                                    self.f_ok(a, r) && self.f_ok(a, s)
                                };
                                push(keep, Instance { a, i, j, k, l, r, s, names: "a,i,j,k,l,r,s", ..Default::default() });
                            }
                        }
                    }
                }
            }
            9 | 10 => {
                for a in 1..m.saturating_sub(1) {
                    let dims = if rel.0 == 9 {
                        (mu(a), mu(a + 1), mu(a + 1), mu(a + 2))
                    } else {
                        (mu(a + 1), mu(a), mu(a + 2), mu(a + 1))
                    };
                    for (i, j, k, l) in quad(dims.0, dims.1, dims.2, dims.3) {
                        for r in 1..budget {
                            for s in 1..budget {
                                let keep = if rel.0 == 9 {
                                    self.e_ok(a, r) && self.e_ok(a + 1, s)
                                } else {
                                    self.f_ok(a, r) && self.f_ok(a + 1, s)
                                };
                                push(keep, Instance { a, i, j, k, l, r, s, names: "a,i,j,k,l,r,s", ..Default::default() });
                            }
                        }
                    }
                }
            }
            11 | 12 => {
                for a in 1..m {
                    for b in a + 1..m {
                        let dims = if rel.0 == 11 {
                            (mu(a), mu(a + 1), mu(b), mu(b + 1))
                        } else {
                            (mu(a + 1), mu(a), mu(b + 1), mu(b))
                        };
                        for (i, j, k, l) in quad(dims.0, dims.1, dims.2, dims.3) {
                            let applies = b > a + 1 || if rel.0 == 11 { k != j } else { i != l };
                            if !applies {
                                continue;
                            }
                            for r in sup() {
                                for s in sup() {
                                    let keep = if rel.0 == 11 {
                                        self.e_ok(a, r) && self.e_ok(b, s)
                                    } else {
                                        self.f_ok(a, r) && self.f_ok(b, s)
                                    };
                                    push(keep, Instance { a, b, i, j, k, l, r, s, names: "a,b,i,j,k,l,r,s", ..Default::default() });
                                }
                            }
                        }
                    }
                }
            }
            13 | 14 => {
                for a in 1..m {
                    for b in 1..m {
                        if a.abs_diff(b) != 1 {
                            continue;
                        }
                        let (ab, bb, fb, gb) = if rel.0 == 13 {
                            (mu(a), mu(a + 1), mu(b), mu(b + 1))
                        } else {
                            (mu(a + 1), mu(a), mu(b + 1), mu(b))
                        };
                        for (i, j, k, l) in quad(ab, bb, ab, bb) {
                            for f in one_to(fb) {
                                for g in one_to(gb) {
                                    for r in sup() {
                                        for s in sup() {
                                            for t in sup() {
                                                let keep = if rel.0 == 13 {
                                                    self.e_ok(a, r) && self.e_ok(a, s) && self.e_ok(b, t)
                                                } else {
                                                    self.f_ok(a, r) && self.f_ok(a, s) && self.f_ok(b, t)
                                                };
                                                push(
                                                    keep,
                                                    Instance { a, b, i, j, k, l, f, g, r, s, t, names: "a,b,i,j,k,l,f,g,r,s,t", ..Default::default() },
                                                );
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            _ => {}
        }
        (out, excluded)
    }

    /// `LHS - RHS` of a relation at one instance.
    pub fn relation_difference(&self, rel: RelationId, x: &Instance) -> Result<Element> {
        let (lhs, rhs) = self.relation_sides(rel, x)?;
        lhs.try_sub(&rhs)
    }

    pub fn verify_relation(&self, rel: RelationId, x: &Instance) -> CheckReport {
        CheckReport::from_outcome(rel.name(), x.params(), self.relation_difference(rel, x))
    }

    fn relation_sides(&self, rel: RelationId, x: &Instance) -> Result<(Element, Element)> {
        let zero = self.zero();
        let (a, b, i, j, k, l, r, s) = (x.a, x.b, x.i, x.j, x.k, x.l, x.r, x.s);
        let top = |t: u32| r + s - 1 - t;
        match rel.0 {
            1 => Ok((self.d(a, i, j, 0)?, Element::scalar(self.ctx, delta(i, j) as i64))),
            2 => {
                let mut lhs = zero;
                for t in 0..=r {
                    for al in one_to(self.part(a)) {
                        lhs = &lhs + &(&self.d(a, i, al, t)? * &self.d_prime(a, al, j, r - t)?);
                    }
                }
                let rhs = Element::scalar(self.ctx, (r == 0 && i == j) as i64);
                Ok((lhs, rhs))
            }
            3 => {
                let lhs = self.d(a, i, j, r)?.commutator(&self.d(b, k, l, s)?)?;
                let mut rhs = zero;
                if a == b {
                    for t in 0..r.min(s) {
                        rhs = &rhs + &(&self.d(a, i, l, top(t))? * &self.d(a, k, j, t)?);
                        rhs = &rhs - &(&self.d(a, i, l, t)? * &self.d(a, k, j, top(t))?);
                    }
                }
                Ok((lhs, rhs))
            }
            4 => {
                let lhs = self.e(a, i, j, r)?.commutator(&self.f(b, k, l, s)?)?;
                let mut rhs = zero;
                if a == b {
                    for t in 0..r + s {
                        rhs = &rhs - &(&self.d_prime(a, i, l, t)? * &self.d(a + 1, k, j, top(t))?);
                    }
                }
                Ok((lhs, rhs))
            }
            5 => {
                let lhs = self.d(a, i, j, r)?.commutator(&self.e(b, k, l, s)?)?;
                let mut rhs = zero;
                for t in 0..r {
                    if a == b && k == j {
                        for al in one_to(self.part(a)) {
                            rhs = &rhs + &(&self.d(a, i, al, t)? * &self.e(a, al, l, top(t))?);
                        }
                    }
                    if a == b + 1 {
                        rhs = &rhs - &(&self.d(b + 1, i, l, t)? * &self.e(b, k, j, top(t))?);
                    }
                }
                Ok((lhs, rhs))
            }
            6 => {
                let lhs = self.d(a, i, j, r)?.commutator(&self.f(b, k, l, s)?)?;
                let mut rhs = zero;
                for t in 0..r {
                    if a == b + 1 {
                        rhs = &rhs + &(&self.f(b, i, l, top(t))? * &self.d(b + 1, k, j, t)?);
                    }
                    if a == b && i == l {
                        for al in one_to(self.part(a)) {
                            rhs = &rhs - &(&self.f(a, k, al, top(t))? * &self.d(a, al, j, t)?);
                        }
                    }
                }
                Ok((lhs, rhs))
            }
            7 => {
                let lhs = self.e(a, i, j, r)?.commutator(&self.e(a, k, l, s)?)?;
                let mut rhs = zero;
                for t in 1..s {
                    rhs = &rhs + &(&self.e(a, i, l, t)? * &self.e(a, k, j, top(t))?);
                }
                for t in 1..r {
                    rhs = &rhs - &(&self.e(a, i, l, t)? * &self.e(a, k, j, top(t))?);
                }
                Ok((lhs, rhs))
            }
            8 => {
                let lhs = self.f(a, i, j, r)?.commutator(&self.f(a, k, l, s)?)?;
                let mut rhs = zero;
                for t in 1..r {
                    rhs = &rhs + &(&self.f(a, i, l, top(t))? * &self.f(a, k, j, t)?);
                }
                for t in 1..s {
                    rhs = &rhs - &(&self.f(a, i, l, top(t))? * &self.f(a, k, j, t)?);
                }
                Ok((lhs, rhs))
            }
            9 => {
                let first = self.e(a, i, j, r + 1)?.commutator(&self.e(a + 1, k, l, s)?)?;
                let second = self.e(a, i, j, r)?.commutator(&self.e(a + 1, k, l, s + 1)?)?;
                let mut rhs = zero;
                if k == j {
                    for be in one_to(self.part(a + 1)) {
                        rhs = &rhs + &(&self.e(a, i, be, r)? * &self.e(a + 1, be, l, s)?);
                    }
                }
                Ok((&first - &second, rhs))
            }
            10 => {
                let first = self.f(a, i, j, r)?.commutator(&self.f(a + 1, k, l, s + 1)?)?;
                let second = self.f(a, i, j, r + 1)?.commutator(&self.f(a + 1, k, l, s)?)?;
                let mut rhs = zero;
                if i == l {
                    for be in one_to(self.part(a + 1)) {
                        rhs = &rhs + &(&self.f(a + 1, k, be, s)? * &self.f(a, be, j, r)?);
                    }
                }
                Ok((&first - &second, rhs))
            }
            11 => Ok((self.e(a, i, j, r)?.commutator(&self.e(b, k, l, s)?)?, zero)),
            12 => Ok((self.f(a, i, j, r)?.commutator(&self.f(b, k, l, s)?)?, zero)),
            13 | 14 => {
                let g = |a: usize, i: usize, j: usize, r: u32| if rel.0 == 13 { self.e(a, i, j, r) } else { self.f(a, i, j, r) };
                let inner1 = g(a, k, l, s)?.commutator(&g(b, x.f, x.g, x.t)?)?;
                let inner2 = g(a, k, l, r)?.commutator(&g(b, x.f, x.g, x.t)?)?;
                let lhs = &g(a, i, j, r)?.commutator(&inner1)? + &g(a, i, j, s)?.commutator(&inner2)?;
                Ok((lhs, zero))
            }
            _ => Err(Error::Unknown(rel.name())),
        }
    }
}

/// All `(i, j, k, l)` with each index in `1..=` its bound.
fn quad(bi: usize, bj: usize, bk: usize, bl: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::with_capacity(bi * bj * bk * bl);
    for i in one_to(bi) {
        for j in one_to(bj) {
            for k in one_to(bk) {
                for l in one_to(bl) {
                    out.push((i, j, k, l));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Generating-series identities

/// Catalog of generating-series and coefficient identities, addressed by id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeriesIdentity {
    Ee,
    Ee2,
    Ef,
    Ed1,
    Ed2Prime,
    Ed2,
    Ed1Prime,
    Dd,
    DifferenceQuotient,
    Ed1PrimeCoeff,
    Eee,
    Ede,
    Ed2e,
    Ed2edPrime,
    Coeff1111,
    Coeff2222,
    Coeff3333,
    Coeff4444,
    Coeff5555,
    DeShift,
    EdShift,
    Down,
    Up,
    DdShift,
    DdInduct,
}

impl SeriesIdentity {
    pub const ALL: [SeriesIdentity; 25] = [
        SeriesIdentity::Ee,
        SeriesIdentity::Ee2,
        SeriesIdentity::Ef,
        SeriesIdentity::Ed1,
        SeriesIdentity::Ed2Prime,
        SeriesIdentity::Ed2,
        SeriesIdentity::Ed1Prime,
        SeriesIdentity::Dd,
        SeriesIdentity::DifferenceQuotient,
        SeriesIdentity::Ed1PrimeCoeff,
        SeriesIdentity::Eee,
        SeriesIdentity::Ede,
        SeriesIdentity::Ed2e,
        SeriesIdentity::Ed2edPrime,
        SeriesIdentity::Coeff1111,
        SeriesIdentity::Coeff2222,
        SeriesIdentity::Coeff3333,
        SeriesIdentity::Coeff4444,
        SeriesIdentity::Coeff5555,
        SeriesIdentity::DeShift,
        SeriesIdentity::EdShift,
        SeriesIdentity::Down,
        SeriesIdentity::Up,
        SeriesIdentity::DdShift,
        SeriesIdentity::DdInduct,
    ];

    pub fn id(self) -> &'static str {
        use SeriesIdentity::*;
        match self {
            Ee => "ee",
            Ee2 => "ee2",
            Ef => "ef",
            Ed1 => "ed1",
            Ed2Prime => "ed2-prime",
            Ed2 => "ed2",
            Ed1Prime => "ed1-prime",
            Dd => "dd",
            DifferenceQuotient => "difference-quotient",
            Ed1PrimeCoeff => "ed1-prime-coeff",
            Eee => "eee",
            Ede => "ede",
            Ed2e => "ed2e",
            Ed2edPrime => "ed2ed-prime",
            Coeff1111 => "coeff-1111",
            Coeff2222 => "coeff-2222",
            Coeff3333 => "coeff-3333",
            Coeff4444 => "coeff-4444",
            Coeff5555 => "coeff-5555",
            DeShift => "de-shift",
            EdShift => "ed-shift",
            Down => "down",
            Up => "up",
            DdShift => "dd-shift",
            DdInduct => "dd-induct",
        }
    }

    fn uses_ell(self) -> bool {
        use SeriesIdentity::*;
        matches!(self, Eee | Ede | Ed2e | Ed2edPrime | Coeff1111 | Coeff2222 | Coeff3333 | Coeff4444 | Coeff5555 | Down | Up | DdInduct)
    }

    fn is_coefficient_family(self) -> bool {
        use SeriesIdentity::*;
        matches!(self, Ed1PrimeCoeff | Coeff1111 | Coeff2222 | Coeff3333 | Coeff4444 | Coeff5555)
    }
}

impl FromStr for SeriesIdentity {
    type Err = Error;

    fn from_str(s: &str) -> Result<SeriesIdentity> {
        SeriesIdentity::ALL
            .iter()
            .copied()
            .find(|x| x.id() == s)
            .ok_or_else(|| Error::Unknown(format!("series identity {s:?}")))
    }
}

impl fmt::Display for SeriesIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Parabolic {
    fn bi_u(&self, s: &TruncatedSeries) -> BiSeries {
        BiSeries::in_u(s)
    }

    fn bi_v(&self, s: &TruncatedSeries) -> BiSeries {
        BiSeries::in_v(s)
    }

    /// `E_{a;i,j}(v) - E_{a;i,j}(u)`.
    fn e_diff(&self, a: usize, i: usize, j: usize) -> Result<BiSeries> {
        let e = self.e_series(a, i, j)?;
        Ok(self.bi_v(e).sub(&self.bi_u(e)))
    }

    fn bi_zero(&self) -> BiSeries {
        BiSeries::zero(self.ctx, self.order())
    }

    /// Instances of a series identity: every admissible block and inner
    /// index, `ell` in its range up to `ell_max`, and for the coefficient
    /// families every `r, s >= 1` with `r + s <= coeff_budget`.
    pub fn identity_instances(&self, id: SeriesIdentity, ell_max: u32, coeff_budget: u32) -> Vec<Instance> {
        use SeriesIdentity::*;
        let m = self.m();
        let mu = |a: usize| self.part(a);
        let ells: Vec<u32> = if id.uses_ell() {
            let lo = if matches!(id, Down | Up) { 1 } else { 0 };
            (lo..=ell_max).collect()
        } else {
            vec![0]
        };
        let rs: Vec<(u32, u32)> = if id.is_coefficient_family() {
            (1..coeff_budget)
                .flat_map(|r| (1..=coeff_budget - r).map(move |s| (r, s)))
                .collect()
        } else {
            vec![(0, 0)]
        };
        let names = match (id.uses_ell(), id.is_coefficient_family()) {
            (true, true) => "a,i,j,k,l,ell,r,s",
            (true, false) => "a,i,j,k,l,ell",
            (false, true) => "a,i,j,k,l,r,s",
            (false, false) => "a,i,j,k,l",
        };
        // (first block, last block, dims of i, j, k, l as block offsets from a)
        let blocks: Vec<(usize, [usize; 4])> = match id {
            Dd | DdShift | DdInduct => (1..=m).map(|a| (a, [mu(a); 4])).collect(),
            DeShift => (2..=m).map(|a| (a, [mu(a), mu(a), mu(a - 1), 1])).collect(),
            EdShift => (1..m).map(|a| (a, [mu(a), mu(a), 1, mu(a + 1)])).collect(),
            Down => (1..m).map(|a| (a, [mu(a), mu(a), mu(a), mu(a + 1)])).collect(),
            Up => (2..=m).map(|a| (a, [mu(a), mu(a), mu(a - 1), mu(a)])).collect(),
            DifferenceQuotient => (1..m).map(|a| (a, [mu(a), mu(a + 1), 1, 1])).collect(),
            _ => (1..m)
                .map(|a| {
                    let (ea, eb) = (mu(a), mu(a + 1));
                    let kl = match id {
                        Ee | Ee2 | Eee | Coeff1111 | Coeff2222 => [ea, eb],
                        Ef => [eb, ea],
                        Ed1 | Ed1Prime | Ed1PrimeCoeff => [ea, ea],
                        Ed2 | Ed2Prime => [eb, eb],
                        Ede | Coeff3333 => [ea, 1],
                        Ed2e | Coeff4444 => [eb, eb],
                        Ed2edPrime | Coeff5555 => [eb, ea],
                        _ => unreachable!(),
                    };
                    (a, [ea, eb, kl[0], kl[1]])
                })
                .collect(),
        };
        let mut out = Vec::new();
        for (a, dims) in blocks {
            for (i, j, k, l) in quad(dims[0], dims[1], dims[2], dims[3]) {
                for &ell in &ells {
                    for &(r, s) in &rs {
                        out.push(Instance { a, i, j, k, l, ell, r, s, names, ..Default::default() });
                    }
                }
            }
        }
        out
    }

    pub fn verify_series_identity(&self, id: SeriesIdentity, x: &Instance) -> CheckReport {
        match self.identity_difference(id, x) {
            Ok(None) => CheckReport::pass(id.id(), x.params()),
            Ok(Some((at, diff))) => CheckReport::from_difference(id.id(), x.params(), &diff)
                .with_note(format!("sides differ at coefficient {at}")),
            Err(e) => CheckReport::from_error(id.id(), x.params(), e),
        }
    }

    /// Compares both sides; `Ok(None)` when every retained coefficient agrees,
    /// otherwise the first differing coefficient and the difference there.
    pub fn identity_difference(&self, id: SeriesIdentity, x: &Instance) -> Result<Option<(String, Element)>> {
        use SeriesIdentity::*;
        let (a, i, j, k, l) = (x.a, x.i, x.j, x.k, x.l);
        let ell = x.ell;
        let order = self.order();
        let uv = |lhs_inner: BiSeries, rhs: BiSeries| -> Option<(String, Element)> {
            let lhs = lhs_inner.times_u_minus_v();
            lhs.first_difference(&rhs, lhs.order())
                .map(|((r, s), d)| (format!("u^{} v^{}", -r, -s), d))
        };
        match id {
            Ee | Ee2 => {
                let lhs = self.bi_u(self.e_series(a, i, j)?).commutator(&self.bi_v(self.e_series(a, k, l)?));
                let rhs = if id == Ee {
                    self.e_diff(a, i, l)?.mul(&self.e_diff(a, k, j)?)
                } else {
                    self.e_diff(a, k, j)?.mul(&self.e_diff(a, i, l)?)
                };
                Ok(uv(lhs, rhs))
            }
            Ef => {
                let lhs = self.bi_u(self.e_series(a, i, j)?).commutator(&self.bi_v(self.f_series(a, k, l)?));
                let prod = self.d_prime_series(a, i, l)?.try_mul(self.d_series(a + 1, k, j)?)?;
                let rhs = self.bi_u(&prod).sub(&self.bi_v(&prod));
                Ok(uv(lhs, rhs))
            }
            Ed1 => {
                let lhs = self.bi_u(self.e_series(a, i, j)?).commutator(&self.bi_v(self.d_series(a, k, l)?));
                let mut rhs = self.bi_zero();
                if i == l {
                    for al in one_to(self.part(a)) {
                        let term = self.bi_v(self.d_series(a, k, al)?).mul(&self.e_diff(a, al, j)?.scale(-1));
                        rhs = rhs.add(&term);
                    }
                }
                Ok(uv(lhs, rhs))
            }
            Ed2Prime => {
                let lhs = self.bi_u(self.e_series(a, i, j)?).commutator(&self.bi_v(self.d_prime_series(a + 1, k, l)?));
                let mut rhs = self.bi_zero();
                if k == j {
                    for be in one_to(self.part(a + 1)) {
                        let term = self.e_diff(a, i, be)?.scale(-1).mul(&self.bi_v(self.d_prime_series(a + 1, be, l)?));
                        rhs = rhs.add(&term);
                    }
                }
                Ok(uv(lhs, rhs))
            }
            Ed2 => {
                let lhs = self.bi_u(self.e_series(a, i, j)?).commutator(&self.bi_v(self.d_series(a + 1, k, l)?));
                let rhs = self.bi_v(self.d_series(a + 1, k, j)?).mul(&self.e_diff(a, i, l)?);
                Ok(uv(lhs, rhs))
            }
            Ed1Prime => {
                let lhs = self.bi_u(self.e_series(a, i, j)?).commutator(&self.bi_v(self.d_prime_series(a, k, l)?));
                let rhs = self.e_diff(a, k, j)?.mul(&self.bi_v(self.d_prime_series(a, i, l)?));
                Ok(uv(lhs, rhs))
            }
            Dd => {
                let lhs = self.bi_u(self.d_series(a, i, j)?).commutator(&self.bi_v(self.d_series(a, k, l)?));
                let rhs = self
                    .bi_u(self.d_series(a, k, j)?)
                    .mul(&self.bi_v(self.d_series(a, i, l)?))
                    .sub(&self.bi_v(self.d_series(a, k, j)?).mul(&self.bi_u(self.d_series(a, i, l)?)));
                Ok(uv(lhs, rhs))
            }
            DifferenceQuotient => {
                let e = self.e_series(a, i, j)?;
                let mut q = self.bi_zero();
                for r in 1..=order {
                    for s in 1..=order - r {
                        q = q.add(&BiSeries::monomial(e.coeff(r + s - 1)?.clone(), r, s, order));
                    }
                }
                Ok(uv(q, self.e_diff(a, i, j)?))
            }
            Eee => {
                let lhs_arg = self.e_diff(a, i, l)?.mul(&self.e_diff(a, i, j)?.pow(ell)).mul(&self.e_diff(a, k, j)?);
                let rhs = self
                    .e_diff(a, i, l)?
                    .mul(&self.e_diff(a, i, j)?.pow(ell + 1))
                    .mul(&self.e_diff(a, k, j)?)
                    .scale(ell as i64 + 2);
                let lhs = self.bi_u(self.e_series(a, i, j)?).commutator(&lhs_arg);
                Ok(uv(lhs, rhs))
            }
            Ede => {
                let mut arg = self.bi_zero();
                let mut rhs = self.bi_zero();
                for al in one_to(self.part(a)) {
                    let head = self.bi_v(self.d_series(a, k, al)?).mul(&self.e_diff(a, al, j)?);
                    arg = arg.add(&head.mul(&self.e_diff(a, i, j)?.pow(ell)));
                    rhs = rhs.add(&head.mul(&self.e_diff(a, i, j)?.pow(ell + 1)));
                }
                let lhs = self.bi_u(self.e_series(a, i, j)?).commutator(&arg);
                Ok(uv(lhs, rhs.scale(ell as i64)))
            }
            Ed2e => {
                let d = self.bi_v(self.d_series(a + 1, k, j)?);
                let tail = self.e_diff(a, i, l)?;
                let arg = d.mul(&self.e_diff(a, i, j)?.pow(ell)).mul(&tail);
                let rhs = d.mul(&self.e_diff(a, i, j)?.pow(ell + 1)).mul(&tail).scale(ell as i64 + 2);
                let lhs = self.bi_u(self.e_series(a, i, j)?).commutator(&arg);
                Ok(uv(lhs, rhs))
            }
            Ed2edPrime => {
                let d = self.bi_v(self.d_series(a + 1, k, j)?);
                let tail = self.bi_v(self.d_prime_series(a, i, l)?);
                let arg = d.mul(&self.e_diff(a, i, j)?.pow(ell)).mul(&tail);
                let rhs = d.mul(&self.e_diff(a, i, j)?.pow(ell + 1)).mul(&tail).scale(ell as i64 + 2);
                let lhs = self.bi_u(self.e_series(a, i, j)?).commutator(&arg);
                Ok(uv(lhs, rhs))
            }
            DeShift => {
                let d = self.d_series(a, i, j)?;
                let e = self.e_series(a - 1, k, j)?;
                let lhs = d.try_mul(e)?;
                let rhs = e.shift(1).try_mul(d)?;
                Ok(first_series_difference(&lhs, &rhs))
            }
            EdShift => {
                let d = self.d_series(a, i, j)?;
                let e = self.e_series(a, j, l)?;
                let lhs = d.try_mul(e)?.try_sub(&e.shift(-1).try_mul(d)?)?;
                let mut rhs = TruncatedSeries::zero(self.ctx, order);
                for al in one_to(self.part(a)).filter(|&al| al != j) {
                    let e_al = self.e_series(a, al, l)?;
                    rhs = rhs.try_add(&self.d_series(a, i, al)?.try_mul(&e_al.shift(-1).try_sub(e_al)?)?)?;
                }
                Ok(first_series_difference(&lhs, &rhs))
            }
            Down => {
                let d = self.d_series(a, i, j)?;
                let lhs = self.bi_u(&falling_product(d, ell)?).commutator(&self.bi_v(self.e_series(a, k, l)?));
                let mut rhs = self.bi_zero();
                if j == k {
                    let lead = self.bi_u(&falling_product(d, ell - 1)?.shift(-1));
                    let mut sum = self.bi_zero();
                    for al in one_to(self.part(a)) {
                        sum = sum.add(&self.bi_u(self.d_series(a, i, al)?).mul(&self.e_diff(a, al, l)?));
                    }
                    rhs = lead.mul(&sum).scale(ell as i64);
                }
                Ok(uv(lhs, rhs))
            }
            Up => {
                let d = self.d_series(a, i, j)?;
                let lhs = self.bi_u(&rising_product(d, ell)?).commutator(&self.bi_v(self.e_series(a - 1, k, l)?));
                let tail = self.e_diff(a - 1, k, j)?.scale(-1);
                let rhs = self
                    .bi_u(self.d_series(a, i, l)?)
                    .mul(&self.bi_u(&rising_product(d, ell - 1)?.shift(1)))
                    .mul(&tail)
                    .scale(ell as i64);
                Ok(uv(lhs, rhs))
            }
            DdShift => {
                let lhs = self.d_series(a, i, j)?.shift(-1).try_mul(self.d_series(a, i, l)?)?;
                let rhs = self.d_series(a, i, l)?.shift(-1).try_mul(self.d_series(a, i, j)?)?;
                Ok(first_series_difference(&lhs, &rhs))
            }
            DdInduct => {
                let (dil, dij) = (self.d_series(a, i, l)?, self.d_series(a, i, j)?);
                let sh = ell as i64;
                let lhs = dil.try_mul(&dij.shift(sh))?.scale(sh + 1);
                let rhs = dij.shift(sh).try_mul(dil)?.scale(sh).try_add(&dil.shift(sh).try_mul(dij)?)?;
                Ok(first_series_difference(&lhs, &rhs))
            }
            Ed1PrimeCoeff | Coeff1111 | Coeff2222 | Coeff3333 | Coeff4444 | Coeff5555 => {
                let (lhs, rhs) = self.coefficient_family_sides(id, x)?;
                let d = lhs.try_sub(&rhs)?;
                Ok((!d.is_zero()).then(|| ("element".to_string(), d)))
            }
        }
    }

    /// Both sides of the coefficient-level identities. Instances whose right
    /// side has total superscript above three times the truncation order are
    /// refused with [`Error::Budget`].
    pub fn coefficient_family_sides(&self, id: SeriesIdentity, x: &Instance) -> Result<(Element, Element)> {
        use SeriesIdentity::*;
        let (a, i, j, k, l, r, s) = (x.a, x.i, x.j, x.k, x.l, x.r, x.s);
        let ell = x.ell as usize;
        let (ri, si) = (r as i64, s as i64);
        let lhs_of = |inner: Element| self.e(a, i, j, r)?.commutator(&inner);
        let e = |i: usize, j: usize, lo: u32, hi: u32| Slot::new(lo, hi, move |t| self.e(a, i, j, t));
        let unbounded = u32::MAX;
        let rhs_total = match id {
            Ed1PrimeCoeff => 0,
            Coeff5555 => (ell as i64 + 1) * (ri - 1) + si,
            _ => (ell as i64 + 2) * (ri - 1) + si,
        };
        let cap = 3 * self.order();
        if rhs_total as usize > cap {
            return Err(Error::Budget { requested: rhs_total as usize, available: cap });
        }
        match id {
            Ed1PrimeCoeff => {
                let lhs = self.e(a, i, j, r)?.commutator(&self.d_prime(a, k, l, s)?)?;
                let mut rhs = self.zero();
                for t in 0..s {
                    rhs = &rhs + &(&self.e(a, k, j, r + s - 1 - t)? * &self.d_prime(a, i, l, t)?);
                }
                Ok((lhs, rhs))
            }
            Coeff1111 | Coeff2222 => {
                let (lo, hi, sign) = if id == Coeff1111 { (r, unbounded, 1) } else { (1, r.saturating_sub(1), -1) };
                let word = |count: usize, total: i64| -> Result<Element> {
                    let mut slots = vec![e(i, l, lo, hi)];
                    slots.extend((0..count).map(|_| e(i, j, lo, hi)));
                    slots.push(e(k, j, lo, hi));
                    self.composition_sum(&slots, total)
                };
                let lhs = lhs_of(word(ell, (ell as i64 + 1) * (ri - 1) + si)?)?;
                let rhs = word(ell + 1, (ell as i64 + 2) * (ri - 1) + si)?;
                Ok((lhs, rhs.scale(sign * (ell as i64 + 2))))
            }
            Coeff3333 => {
                let word = |count: usize, total: i64| -> Result<Element> {
                    let mut acc = self.zero();
                    for al in one_to(self.part(a)) {
                        let mut slots = vec![Slot::new(0, unbounded, move |t| self.d(a, k, al, t)), e(al, j, r, unbounded)];
                        slots.extend((0..count).map(|_| e(i, j, r, unbounded)));
                        acc = &acc + &self.composition_sum(&slots, total)?;
                    }
                    Ok(acc)
                };
                let lhs = lhs_of(word(ell, (ell as i64 + 1) * (ri - 1) + si)?)?;
                let rhs = word(ell + 1, (ell as i64 + 2) * (ri - 1) + si)?;
                Ok((lhs, rhs.scale(ell as i64)))
            }
            Coeff4444 | Coeff5555 => {
                let word = |count: usize, total: i64| -> Result<Element> {
                    let mut slots = vec![Slot::new(0, unbounded, move |t| self.d(a + 1, k, j, t))];
                    slots.extend((0..count).map(|_| e(i, j, r, unbounded)));
                    if id == Coeff4444 {
                        slots.push(e(i, l, r, unbounded));
                    } else {
                        slots.push(Slot::new(0, unbounded, move |t| self.d_prime(a, i, l, t)));
                    }
                    self.composition_sum(&slots, total)
                };
                // the 5555 family has one fewer E factor at the same `ell`
                let base = if id == Coeff4444 { 1 } else { 0 };
                let lhs = lhs_of(word(ell, (ell as i64 + base) * (ri - 1) + si)?)?;
                let rhs = word(ell + 1, (ell as i64 + base + 1) * (ri - 1) + si)?;
                Ok((lhs, rhs.scale(ell as i64 + 2)))
            }
            _ => Err(Error::Unknown(id.id().into())),
        }
    }

    /// `sum f_1(x_1) f_2(x_2) ... f_q(x_q)` over `x_1 + ... + x_q = total`
    /// with each `x_p` in the range of slot `p`. Evaluated right to left,
    /// keeping the partial sum of every suffix for each remaining total.
    fn composition_sum(&self, slots: &[Slot<'_>], total: i64) -> Result<Element> {
        if total < 0 {
            return Ok(self.zero());
        }
        let total = total as usize;
        let mut next: Vec<Element> = (0..=total)
            .map(|rem| if rem == 0 { Element::unit(self.ctx) } else { self.zero() })
            .collect();
        // A suffix starting at slot q leaves at least the lower bounds of the
        // slots before q to the prefix, which caps its own total.
        let mut prefix_lo = vec![0usize; slots.len() + 1];
        for (q, slot) in slots.iter().enumerate() {
            prefix_lo[q + 1] = prefix_lo[q] + slot.lo as usize;
        }
        if prefix_lo[slots.len()] > total {
            return Ok(self.zero());
        }
        for (q, slot) in slots.iter().enumerate().rev() {
            let mut cur = vec![self.zero(); total + 1];
            let max_rem = total - prefix_lo[q];
            for (rem, out) in cur.iter_mut().enumerate().take(max_rem + 1) {
                let hi = (slot.hi as usize).min(rem);
                for x in slot.lo as usize..=hi {
                    let suffix = &next[rem - x];
                    if suffix.is_zero() {
                        continue;
                    }
                    *out = &*out + &(&(slot.get)(x as u32)? * suffix);
                }
            }
            next = cur;
        }
        Ok(next.swap_remove(total))
    }
}

/// One factor position in [`Parabolic::composition_sum`].
struct Slot<'a> {
    lo: u32,
    hi: u32,
    get: Box<dyn Fn(u32) -> Result<Element> + 'a>,
}

impl<'a> Slot<'a> {
    fn new(lo: u32, hi: u32, get: impl Fn(u32) -> Result<Element> + 'a) -> Slot<'a> {
        Slot { lo, hi, get: Box::new(get) }
    }
}

/// `f(u) f(u-1) ... f(u-ell+1)`; the empty product is 1.
pub fn falling_product(f: &TruncatedSeries, ell: u32) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::one(f.ctx(), f.order());
    for q in 0..ell {
        acc = acc.try_mul(&f.shift(-(q as i64)))?;
    }
    Ok(acc)
}

/// `f(u) f(u+1) ... f(u+ell-1)`; the empty product is 1.
pub fn rising_product(f: &TruncatedSeries, ell: u32) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::one(f.ctx(), f.order());
    for q in 0..ell {
        acc = acc.try_mul(&f.shift(q as i64))?;
    }
    Ok(acc)
}

fn first_series_difference(x: &TruncatedSeries, y: &TruncatedSeries) -> Option<(String, Element)> {
    x.coeffs()
        .iter()
        .zip(y.coeffs())
        .enumerate()
        .find(|(_, (a, b))| a != b)
        .map(|(r, (a, b))| (format!("u^{}", -(r as i64)), a - b))
}
