//! Machine-readable check results.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::current::CurrentElement;
use crate::error::Error;
use crate::field;
use crate::pbw::Element;

pub type Params = BTreeMap<String, Value>;

/// Builds a parameter map from integer-valued pairs.
pub fn params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), Value::from(*v))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One serialized term: the word as `[i, j, r]` letters, and a coefficient
/// lifted to `(-p/2, p/2]`.
pub type WitnessTerm = (Vec<[u32; 3]>, i64);

/// A nonzero element attached to a failing check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// `"yangian"` (letters are `t_ij^(r)`) or `"current"` (letters are `e_ij t^r`).
    pub algebra: String,
    pub n: usize,
    pub p: u32,
    pub terms: Vec<WitnessTerm>,
}

impl Witness {
    pub fn from_element(x: &Element) -> Witness {
        let p = x.p();
        Witness {
            algebra: "yangian".into(),
            n: x.ctx().n(),
            p,
            terms: x
                .terms()
                .map(|(w, c)| (w.iter().map(|g| [g.i as u32, g.j as u32, g.r]).collect(), field::lift(c, p)))
                .collect(),
        }
    }

    pub fn from_current(x: &CurrentElement) -> Witness {
        let p = x.ctx().p();
        Witness {
            algebra: "current".into(),
            n: x.ctx().n(),
            p,
            terms: x
                .terms()
                .map(|(w, c)| (w.iter().map(|&(i, j, r)| [i as u32, j as u32, r]).collect(), field::lift(c, p)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub params: Params,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn pass(id: impl Into<String>, params: Params) -> CheckReport {
        CheckReport { id: id.into(), params, status: Status::Pass, witness: None, note: None }
    }

    pub fn fail(id: impl Into<String>, params: Params, witness: Option<Witness>, note: impl Into<String>) -> CheckReport {
        CheckReport { id: id.into(), params, status: Status::Fail, witness, note: Some(note.into()) }
    }

    pub fn skipped(id: impl Into<String>, params: Params, note: impl Into<String>) -> CheckReport {
        CheckReport { id: id.into(), params, status: Status::Skipped, witness: None, note: Some(note.into()) }
    }

    /// Pass iff `diff` (LHS - RHS) is zero.
    pub fn from_difference(id: impl Into<String>, params: Params, diff: &Element) -> CheckReport {
        if diff.is_zero() {
            CheckReport::pass(id, params)
        } else {
            CheckReport::fail(id, params, Some(Witness::from_element(diff)), "left and right sides differ")
        }
    }

    /// Like [`CheckReport::from_difference`], mapping budget errors to
    /// `skipped` and any other error to `fail`.
    pub fn from_outcome(id: impl Into<String>, params: Params, outcome: Result<Element, Error>) -> CheckReport {
        match outcome {
            Ok(diff) => CheckReport::from_difference(id, params, &diff),
            Err(e) => CheckReport::from_error(id, params, e),
        }
    }

    pub fn from_error(id: impl Into<String>, params: Params, e: Error) -> CheckReport {
        match e {
            Error::Budget { .. } | Error::BelowShift { .. } => CheckReport::skipped(id, params, e.to_string()),
            other => CheckReport::fail(id, params, None, other.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> CheckReport {
        self.note = Some(note.into());
        self
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Value>) -> CheckReport {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Deterministic ordering key: id, then the canonical JSON of the params.
    pub fn sort_key(&self) -> (String, String) {
        (self.id.clone(), serde_json::to_string(&self.params).unwrap_or_default())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(checks: &[CheckReport]) -> Summary {
        let mut s = Summary::default();
        for c in checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::AlgebraContext;

    #[test]
    fn failing_check_carries_sorted_witness() {
        let c = AlgebraContext::new(2, 3).unwrap();
        let x = Element::generator(c, 1, 2, 1).unwrap().commutator(&Element::generator(c, 2, 1, 1).unwrap()).unwrap();
        let r = CheckReport::from_difference("demo", params(&[("r", 1)]), &x);
        assert_eq!(r.status, Status::Fail);
        let w = r.witness.as_ref().unwrap();
        assert_eq!(w.terms, vec![(vec![[1, 1, 1]], 1), (vec![[2, 2, 1]], -1)]);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"status\":\"fail\""));
        assert_eq!(serde_json::from_str::<CheckReport>(&json).unwrap(), r);
    }

    #[test]
    fn budget_errors_are_skips() {
        let r = CheckReport::from_error("x", Params::new(), Error::Budget { requested: 9, available: 7 });
        assert_eq!(r.status, Status::Skipped);
        let r = CheckReport::from_error("x", Params::new(), Error::Singular);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(Summary::of(&[r]), Summary { pass: 0, fail: 1, skipped: 0 });
        assert_eq!(Summary::of(&[]), Summary::default());
    }
}
