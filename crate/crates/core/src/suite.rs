//! Batch runner: a [`RunConfig`] selects suites and restricts their default
//! sweeps; checks run on a bounded worker pool and are reported in a
//! deterministic order.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::center::{
    b_series, bc_expected, bc_series, both_proofs_checks, centrality_check, diagonal_commutation_checks, diagonal_vanishing_checks,
    gr_leading_check, hc_series, leading_monomials_distinct, leading_term_set, p_center_generators, p_series, q_series,
    verify_factorization, CentralityScope,
};
use crate::engine::{associativity_fuzz, chi_checks, pbw_dimension_check};
use crate::error::{Error, Result};
use crate::field;
use crate::gauss::gauss_checks;
use crate::maps::{
    corner_checks, involution_check, iota_precondition, iota_roundtrip_check, multiplicativity_check, permutation_p_center_checks,
    psi_block_checks, psi_p_center_checks, psi_rank_one_checks, GeneratorImageTable,
};
use crate::pbw::{AlgebraContext, Element};
use crate::presentation::{Parabolic, RelationId, SeriesIdentity};
use crate::report::{params, CheckReport, Params, Summary};
use crate::roots::{root_gr_checks, tau_mirror_checks, unshifted_root_checks, witness_independence_checks};
use crate::series::Composition;
use crate::shift::{ShiftData, ShiftMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Relations,
    SeriesIdentities,
    Gauss,
    HcCenter,
    PCenter,
    Maps,
    Gr,
    Roots,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] =
        [Suite::Relations, Suite::SeriesIdentities, Suite::Gauss, Suite::HcCenter, Suite::PCenter, Suite::Maps, Suite::Gr, Suite::Roots];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::SeriesIdentities => "series-identities",
            Suite::Gauss => "gauss",
            Suite::HcCenter => "hc-center",
            Suite::PCenter => "p-center",
            Suite::Maps => "maps",
            Suite::Gr => "gr",
            Suite::Roots => "roots",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Unknown(format!("suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Unset fields fall back to each suite's default sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub suite: Suite,
    pub n: Option<usize>,
    pub p: Option<u32>,
    pub mu: Option<Vec<usize>>,
    /// Rows such as `"0,1;0,0"`, or `"zero"`.
    pub sigma: Option<String>,
    /// Truncation order `N` of all series.
    pub trunc: Option<usize>,
    /// Superscript budget `S`.
    pub budget: Option<u32>,
    pub ell: Option<u32>,
    pub workers: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            suite: Suite::All,
            n: None,
            p: None,
            mu: None,
            sigma: None,
            trunc: None,
            budget: None,
            ell: None,
            workers: 1,
            seed: 0,
            out: None,
            format: Format::Json,
        }
    }
}

/// A validated restriction of the default sweeps.
#[derive(Clone, Debug)]
struct Scope {
    n: Option<usize>,
    p: Option<u32>,
    mu: Option<Composition>,
    sigma: Option<ShiftMatrix>,
    trunc: Option<usize>,
    budget: Option<u32>,
    ell: Option<u32>,
    seed: u64,
}

impl RunConfig {
    /// Parses a JSON configuration file; every field is optional.
    pub fn from_json(text: &str) -> Result<RunConfig> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Checks the characteristic, the shape and the shift matrix.
    pub fn validate(&self) -> Result<()> {
        self.scope().map(|_| ())
    }

    fn scope(&self) -> Result<Scope> {
        if let Some(p) = self.p {
            field::check_characteristic(p)?;
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        let n = match (self.n, &self.mu) {
            (Some(0), _) => return Err(Error::BadRank(0)),
            (Some(n), _) => Some(n),
            (None, Some(mu)) => Some(mu.iter().sum()),
            (None, None) => None,
        };
        let mu = match &self.mu {
            Some(parts) => Some(Composition::checked(parts.clone(), n.expect("set from mu"))?),
            None => None,
        };
        let sigma = match &self.sigma {
            Some(text) => {
                let n = n.ok_or_else(|| Error::Config("sigma needs n or mu".into()))?;
                let s = ShiftMatrix::parse(text, n)?;
                if let Some(mu) = &mu {
                    ShiftData::new(s.clone(), mu.clone())?;
                } else if !Composition::all(n).into_iter().any(|mu| ShiftData::new(s.clone(), mu).is_ok()) {
                    return Err(Error::Config(format!("no shape of {n} is admissible for sigma {s}")));
                }
                Some(s)
            }
            None => None,
        };
        if self.trunc == Some(0) || self.budget == Some(0) {
            return Err(Error::Config("trunc and budget must be positive".into()));
        }
        Ok(Scope { n, p: self.p, mu, sigma, trunc: self.trunc, budget: self.budget, ell: self.ell, seed: self.seed })
    }
}

impl Scope {
    fn ns(&self, default: &[usize]) -> Vec<usize> {
        self.n.map_or_else(|| default.to_vec(), |n| vec![n])
    }

    fn ps(&self, default: &[u32]) -> Vec<u32> {
        self.p.map_or_else(|| default.to_vec(), |p| vec![p])
    }

    fn shapes(&self, n: usize) -> Vec<Composition> {
        match &self.mu {
            Some(mu) => vec![mu.clone()],
            None => Composition::all(n),
        }
    }

    /// Shift data for every selected shape: the given `sigma` on the shapes
    /// it admits, otherwise zero shift.
    fn shift_data(&self, n: usize) -> Vec<ShiftData> {
        let sigma = self.sigma.clone().unwrap_or_else(|| ShiftMatrix::zero(n));
        self.shapes(n).into_iter().filter_map(|mu| ShiftData::new(sigma.clone(), mu).ok()).collect()
    }
}

/// The output of a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: RunConfig,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let status = serde_json::to_value(c.status).expect("status serializes");
            let prm: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = write!(s, "{:<8} {:<22} {}", status.as_str().unwrap_or_default(), c.id, prm.join(" "));
            if let Some(note) = &c.note {
                let _ = write!(s, "  # {note}");
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "\n{} passed, {} failed, {} skipped in {:.1}s",
            self.summary.pass,
            self.summary.fail,
            self.summary.skipped,
            self.elapsed.as_secs_f64()
        );
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

type Job = Box<dyn FnOnce() -> Vec<CheckReport> + Send>;

fn job(f: impl FnOnce() -> Vec<CheckReport> + Send + 'static) -> Job {
    Box::new(f)
}

fn tag(mut reports: Vec<CheckReport>, suite: Suite, extra: &Params) -> Vec<CheckReport> {
    for r in &mut reports {
        for (k, v) in extra {
            r.params.entry(k.clone()).or_insert_with(|| v.clone());
        }
        r.params.insert("suite".into(), suite.name().into());
    }
    reports
}

fn context_params(ctx: AlgebraContext, data: Option<&ShiftData>) -> Params {
    let mut prm = params(&[("n", ctx.n() as i64), ("p", ctx.p() as i64)]);
    if let Some(d) = data {
        prm.insert("mu".into(), d.mu().parts().into());
        prm.insert("sigma".into(), d.sigma().to_string().into());
    }
    prm
}

fn ctx(n: usize, p: u32) -> AlgebraContext {
    AlgebraContext::new(n, p).expect("validated")
}

fn parabolic_or_report(c: AlgebraContext, data: ShiftData, order: usize, id: &str) -> std::result::Result<Parabolic, Vec<CheckReport>> {
    Parabolic::new(c, data, order).map_err(|e| vec![CheckReport::from_error(id, Params::new(), e)])
}

fn relation_jobs(s: &Scope) -> Vec<Job> {
    let budget = s.budget.unwrap_or(4);
    let order = s.trunc.unwrap_or(2 * budget as usize - 1);
    let mut jobs = Vec::new();
    for n in s.ns(&[2, 3]) {
        for p in s.ps(&[3, 5]) {
            for data in s.shift_data(n) {
                for rel in RelationId::all() {
                    let data = data.clone();
                    jobs.push(job(move || {
                        let c = ctx(n, p);
                        let extra = context_params(c, Some(&data));
                        let par = match parabolic_or_report(c, data, order, &rel.name()) {
                            Ok(par) => par,
                            Err(r) => return tag(r, Suite::Relations, &extra),
                        };
                        let (instances, excluded) = par.relation_instances(rel, budget);
                        let mut reports: Vec<CheckReport> = instances.iter().map(|x| par.verify_relation(rel, x)).collect();
                        if excluded > 0 {
                            let prm = params(&[("budget", budget as i64), ("excluded", excluded as i64)]);
                            reports.push(CheckReport::skipped(rel.name(), prm, "instances outside the shifted Yangian"));
                        }
                        tag(reports, Suite::Relations, &extra)
                    }));
                }
            }
        }
    }
    jobs
}

fn identity_jobs(s: &Scope) -> Vec<Job> {
    let order = s.trunc.unwrap_or(7);
    let ell = s.ell.unwrap_or(2);
    let coeff_budget = s.budget.unwrap_or(order as u32 - 1);
    let mut jobs = Vec::new();
    for n in s.ns(&[1, 2, 3]) {
        for p in s.ps(&[3]) {
            for data in s.shift_data(n) {
                for id in SeriesIdentity::ALL {
                    let data = data.clone();
                    jobs.push(job(move || {
                        let c = ctx(n, p);
                        let extra = context_params(c, Some(&data));
                        let par = match parabolic_or_report(c, data, order, id.id()) {
                            Ok(par) => par,
                            Err(r) => return tag(r, Suite::SeriesIdentities, &extra),
                        };
                        let reports =
                            par.identity_instances(id, ell, coeff_budget).iter().map(|x| par.verify_series_identity(id, x)).collect();
                        tag(reports, Suite::SeriesIdentities, &extra)
                    }));
                }
            }
        }
    }
    jobs
}

fn gauss_jobs(s: &Scope) -> Vec<Job> {
    let order = s.trunc.unwrap_or(6);
    let mut jobs = Vec::new();
    for n in s.ns(&[1, 2, 3, 4]) {
        for p in s.ps(&[3]) {
            for mu in s.shapes(n) {
                jobs.push(job(move || {
                    let c = ctx(n, p);
                    tag(gauss_checks(c, &mu, order), Suite::Gauss, &context_params(c, None))
                }));
            }
        }
    }
    jobs
}

fn hc_jobs(s: &Scope) -> Vec<Job> {
    let order = s.trunc.unwrap_or(6);
    let budget = s.budget.unwrap_or(3);
    let mut jobs = Vec::new();
    for n in s.ns(&[1, 2, 3]) {
        for p in s.ps(&[3]) {
            for mu in s.shapes(n) {
                jobs.push(job(move || {
                    let c = ctx(n, p);
                    tag(vec![verify_factorization(c, &mu, order)], Suite::HcCenter, &context_params(c, None))
                }));
            }
            jobs.push(job(move || {
                let c = ctx(n, p);
                let extra = context_params(c, None);
                let series = match hc_series(c, order) {
                    Ok(x) => x,
                    Err(e) => return tag(vec![CheckReport::from_error("hc-central", Params::new(), e)], Suite::HcCenter, &extra),
                };
                let reports = (1..=order)
                    .map(|r| {
                        let x = series.coeff(r).expect("within order");
                        let cert = centrality_check(x, &format!("c^({r})"), CentralityScope::Full { ctx: c, budget });
                        cert.to_report("hc-central", params(&[("r", r as i64)]))
                    })
                    .collect();
                tag(reports, Suite::HcCenter, &extra)
            }));
        }
    }
    jobs
}

fn p_center_reports(c: AlgebraContext, data: ShiftData, rp_budget: u32, budget: u32) -> Vec<CheckReport> {
    let p = c.p();
    let order = rp_budget.max(p) as usize;
    let par = match Parabolic::new(c, data, order) {
        Ok(x) => x,
        Err(e) => return vec![CheckReport::from_error("p-center", Params::new(), e)],
    };
    let mut out = diagonal_vanishing_checks(&par);
    out.extend(diagonal_commutation_checks(&par, budget));
    let gens = match p_center_generators(&par, rp_budget) {
        Ok(g) => g,
        Err(e) => {
            out.push(CheckReport::from_error("p-center", Params::new(), e));
            return out;
        }
    };
    let scope = CentralityScope::Shifted { parabolic: &par, budget };
    for g in &gens {
        let mut prm = g.params.clone();
        prm.insert("generator".into(), g.label.clone().into());
        out.push(centrality_check(&g.element, &g.label, scope).to_report("p-center-central", prm.clone()));
        out.push(gr_leading_check("p-center-gr", prm, &g.element, &g.expected, g.degree));
    }
    out.push(leading_monomials_distinct(&gens, Params::new()));
    if c.n() == 1 {
        // B^{(p)} = (t^{(1)})^p - t^{(1)} exactly.
        let outcome = b_series(&par, 1, 1, 1).and_then(|b| {
            let t = Element::generator(c, 1, 1, 1)?;
            Ok(b.coeff(p as usize)? - &(&t.pow(p) - &t))
        });
        out.push(CheckReport::from_outcome("b-rank-one", Params::new(), outcome));
    }
    if par.data().sigma().is_zero() {
        let full = CentralityScope::Full { ctx: c, budget };
        let mu = par.mu().clone();
        for a in 1..par.m() {
            for b in a + 1..=par.m() {
                for (kind, i, j) in [("P", mu.part(a), mu.part(b)), ("Q", mu.part(b), mu.part(a))] {
                    for i in 1..=i {
                        for j in 1..=j {
                            let series = if kind == "P" { p_series(&par, a, b, i, j) } else { q_series(&par, b, a, i, j) };
                            let prm = params(&[("a", a as i64), ("b", b as i64), ("i", i as i64), ("j", j as i64)]);
                            match series {
                                Ok(sr) => {
                                    for r in 1..=order {
                                        let label = format!("{kind}[{a},{b};{i},{j}]^({r})");
                                        let mut prm = prm.clone();
                                        prm.insert("series".into(), kind.into());
                                        prm.insert("r".into(), r.into());
                                        let x = sr.coeff(r).expect("within order");
                                        out.push(centrality_check(x, &label, full).to_report("pq-central", prm));
                                    }
                                }
                                Err(e) => out.push(CheckReport::from_error("pq-central", prm, e)),
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn p_center_jobs(s: &Scope) -> Vec<Job> {
    let budget = s.budget.unwrap_or(3);
    let rp_budget = s.trunc.map_or(6, |t| t as u32);
    let mut jobs = Vec::new();
    for n in s.ns(&[1, 2]) {
        for p in s.ps(&[3]) {
            let mut datas = s.shift_data(n);
            if s.sigma.is_none() && s.n.is_none() && n == 2 {
                datas.push(ShiftData::new(ShiftMatrix::parse("0,1;0,0", 2).expect("valid"), Composition::ones(2)).expect("admissible"));
            }
            for data in datas {
                jobs.push(job(move || {
                    let c = ctx(n, p);
                    let extra = context_params(c, Some(&data));
                    tag(p_center_reports(c, data, rp_budget, budget), Suite::PCenter, &extra)
                }));
            }
            // bc, the two descriptions of B, and agreement of leading terms across shapes.
            jobs.push(job(move || {
                let c = ctx(n, p);
                let extra = context_params(c, None);
                let order = rp_budget.max(p) as usize;
                let mut out = Vec::new();
                match hc_series(c, order).and_then(|h| bc_series(&h)) {
                    Ok(bc) => {
                        for r in (1..).take_while(|r| r * p as usize <= order) {
                            let x = bc.coeff(r * p as usize).expect("within order");
                            let prm = params(&[("r", (r * p as usize) as i64)]);
                            let cert = centrality_check(x, "bc", CentralityScope::Full { ctx: c, budget });
                            out.push(cert.to_report("bc-central", prm.clone()));
                            out.push(gr_leading_check("bc-gr", prm, x, &bc_expected(c, r as u32), (r - 1) * p as usize));
                        }
                    }
                    Err(e) => out.push(CheckReport::from_error("bc", Params::new(), e)),
                }
                if n >= 2 {
                    out.extend(both_proofs_checks(c, order));
                }
                out.push(leading_terms_across_shapes(c, rp_budget));
                tag(out, Suite::PCenter, &extra)
            }));
        }
    }
    jobs
}

/// Unshifted shapes of the same `n` have the same set of leading terms of
/// p-center generators.
fn leading_terms_across_shapes(c: AlgebraContext, rp_budget: u32) -> CheckReport {
    let order = rp_budget.max(c.p()) as usize;
    let prm = params(&[("rp_budget", rp_budget as i64)]);
    let sets: Result<Vec<_>> = Composition::all(c.n())
        .into_iter()
        .map(|mu| {
            let par = Parabolic::unshifted(c, mu.clone(), order)?;
            Ok((mu, leading_term_set(&p_center_generators(&par, rp_budget)?)?))
        })
        .collect();
    match sets {
        Ok(sets) => match sets.iter().find(|(_, s)| *s != sets[0].1) {
            None => CheckReport::pass("p-center-shapes", prm).with_note(format!("{} leading terms", sets[0].1.len())),
            Some((mu, _)) => CheckReport::fail("p-center-shapes", prm, None, format!("shape {mu} differs from {}", sets[0].0)),
        },
        Err(e) => CheckReport::from_error("p-center-shapes", prm, e),
    }
}

fn maps_jobs(s: &Scope) -> Vec<Job> {
    let order = s.trunc.unwrap_or(4) as u32;
    let rp_budget = s.budget.unwrap_or(6);
    let seed = s.seed;
    let mut jobs = Vec::new();
    for n in s.ns(&[1, 2, 3]) {
        for p in s.ps(&[3]) {
            jobs.push(job(move || {
                let c = ctx(n, p);
                let mut out = Vec::new();
                match GeneratorImageTable::omega(c, order) {
                    Ok(w) => out.push(involution_check("omega-involution", &w)),
                    Err(e) => out.push(CheckReport::from_error("omega-involution", Params::new(), e)),
                }
                let tau = GeneratorImageTable::tau(c, order);
                out.push(involution_check("tau-involution", &tau));
                out.push(multiplicativity_check("tau-anti", &tau, 20, seed));
                if n >= 2 {
                    let psi = GeneratorImageTable::psi(c.with_rank(n - 1).expect("n >= 2"), 1, order);
                    match psi {
                        Ok(psi) => out.push(multiplicativity_check("psi-hom", &psi, 20, seed)),
                        Err(e) => out.push(CheckReport::from_error("psi-hom", Params::new(), e)),
                    }
                }
                out.extend(psi_rank_one_checks(c, order));
                out.extend(permutation_p_center_checks(c, rp_budget));
                tag(out, Suite::Maps, &context_params(c, None))
            }));
            for mu in s.shapes(n) {
                jobs.push(job(move || {
                    let c = ctx(n, p);
                    let mut out = psi_block_checks(c, &mu, order);
                    out.extend(corner_checks(c, &mu, order));
                    out.extend(psi_p_center_checks(c, &mu, rp_budget));
                    tag(out, Suite::Maps, &context_params(c, None))
                }));
            }
            // iota between every pair of compatible shifts with adjacent entries <= 1.
            let sigmas = ShiftMatrix::all(n, 1);
            let shapes = s.shapes(n);
            jobs.push(job(move || {
                let mut out = Vec::new();
                for a in &sigmas {
                    for b in &sigmas {
                        for mu in &shapes {
                            let (Ok(from), Ok(to)) = (ShiftData::new(a.clone(), mu.clone()), ShiftData::new(b.clone(), mu.clone())) else {
                                continue;
                            };
                            if a != b && iota_precondition(&from, &to).is_ok() {
                                out.push(iota_roundtrip_check(&from, &to, order));
                            }
                        }
                    }
                }
                tag(out, Suite::Maps, &context_params(ctx(n, p), None))
            }));
        }
    }
    jobs
}

fn gr_jobs(s: &Scope) -> Vec<Job> {
    let weight = s.budget.unwrap_or(4);
    let seed = s.seed;
    let mut jobs = Vec::new();
    for n in s.ns(&[2]) {
        for p in s.ps(&[3]) {
            jobs.push(job(move || {
                let c = ctx(n, p);
                let mut out: Vec<CheckReport> = (0..=weight).map(|w| pbw_dimension_check(c, w)).collect();
                out.extend(chi_checks(c, 3));
                tag(out, Suite::Gr, &context_params(c, None))
            }));
        }
    }
    jobs.push(job(move || tag(vec![associativity_fuzz(1000, 6, seed)], Suite::Gr, &Params::new())));
    jobs
}

fn roots_jobs(s: &Scope) -> Vec<Job> {
    let budget = s.budget.unwrap_or(4);
    let order = s.trunc.unwrap_or(budget as usize);
    let mut jobs = Vec::new();
    for n in s.ns(&[3, 4]) {
        for p in s.ps(&[3]) {
            let sigmas = match &s.sigma {
                Some(x) => vec![x.clone()],
                None if n <= 3 => ShiftMatrix::all(n, 1),
                None => vec![ShiftMatrix::zero(n)],
            };
            for sigma in sigmas {
                for mu in s.shapes(n) {
                    let Ok(data) = ShiftData::new(sigma.clone(), mu) else { continue };
                    if data.mu().len() < 2 {
                        continue;
                    }
                    jobs.push(job(move || {
                        let c = ctx(n, p);
                        let extra = context_params(c, Some(&data));
                        let par = match parabolic_or_report(c, data, order, "roots") {
                            Ok(par) => par,
                            Err(r) => return tag(r, Suite::Roots, &extra),
                        };
                        let mut out = witness_independence_checks(&par, budget);
                        out.extend(root_gr_checks(&par, budget - 1));
                        if par.data().sigma().is_zero() {
                            out.extend(unshifted_root_checks(&par, budget));
                            out.extend(tau_mirror_checks(&par, budget));
                        }
                        tag(out, Suite::Roots, &extra)
                    }));
                }
            }
        }
    }
    jobs
}

fn jobs_for(suite: Suite, s: &Scope) -> Vec<Job> {
    match suite {
        Suite::Relations => relation_jobs(s),
        Suite::SeriesIdentities => identity_jobs(s),
        Suite::Gauss => gauss_jobs(s),
        Suite::HcCenter => hc_jobs(s),
        Suite::PCenter => p_center_jobs(s),
        Suite::Maps => maps_jobs(s),
        Suite::Gr => gr_jobs(s),
        Suite::Roots => roots_jobs(s),
        Suite::All => Suite::EACH.iter().flat_map(|&x| jobs_for(x, s)).collect(),
    }
}

/// Runs the selected suites. Errors only on an invalid configuration.
pub fn run(config: &RunConfig) -> Result<SuiteReport> {
    let scope = config.scope()?;
    let start = std::time::Instant::now();
    let jobs = jobs_for(config.suite, &scope);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {} workers: {e}", config.workers)))?;
    let mut checks: Vec<CheckReport> = pool.install(|| jobs.into_par_iter().flat_map_iter(|j| j()).collect());
    checks.sort_by_cached_key(CheckReport::sort_key);
    let summary = Summary::of(&checks);
    Ok(SuiteReport { config: config.clone(), checks, summary, elapsed: start.elapsed() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suite: Suite) -> RunConfig {
        RunConfig { suite, ..RunConfig::default() }
    }

    #[test]
    fn small_relation_run() {
        let c = RunConfig { n: Some(2), p: Some(3), mu: Some(vec![1, 1]), trunc: Some(4), budget: Some(2), ..cfg(Suite::Relations) };
        let r = run(&c).unwrap();
        assert!(r.summary.pass > 0);
        assert!(r.all_passed());
        let json = r.to_json();
        let back: SuiteReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.checks, r.checks);
        assert_eq!(run(&c).unwrap().to_json(), json);
    }

    #[test]
    fn invalid_configurations() {
        let bad_sigma = RunConfig { n: Some(2), mu: Some(vec![2]), sigma: Some("0,1;0,0".into()), ..cfg(Suite::Relations) };
        assert!(matches!(bad_sigma.validate(), Err(Error::NotAdmissible { i: 1, j: 2, .. })));
        assert!(RunConfig { p: Some(4), ..cfg(Suite::Gr) }.validate().is_err());
        assert!(RunConfig { n: Some(3), mu: Some(vec![1, 1]), ..cfg(Suite::Gr) }.validate().is_err());
        assert!(RunConfig { sigma: Some("zero".into()), ..cfg(Suite::Gr) }.validate().is_err());
        assert!(RunConfig { workers: 0, ..cfg(Suite::Gr) }.validate().is_err());
        assert_eq!("p-center".parse::<Suite>().unwrap(), Suite::PCenter);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn rank_one_p_center() {
        let r = run(&RunConfig { n: Some(1), p: Some(3), ..cfg(Suite::PCenter) }).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        for id in ["b-vanishing", "b-rank-one", "p-center-gr", "bc-gr"] {
            assert!(r.checks.iter().any(|c| c.id == id), "{id}");
        }
    }

    #[test]
    fn empty_selection_has_zero_summary() {
        let c = RunConfig { n: Some(1), ..cfg(Suite::Roots) };
        let r = run(&c).unwrap();
        assert_eq!(r.summary, Summary::default());
        assert!(r.to_text().contains("0 passed"));
    }
}
