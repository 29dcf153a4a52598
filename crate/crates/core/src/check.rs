//! Three-valued verdicts with witnesses.

use serde::{Serialize, Serializer};

use crate::arith::RootBox;
use crate::{Poly, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

/// Evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A rational point where the relevant polynomials vanish exactly.
    Point {
        #[serde(serialize_with = "rat_str")]
        x: Rat,
        #[serde(serialize_with = "rat_str")]
        y: Rat,
    },
    /// A point with algebraic coordinates: `x` is a root of `x_poly` inside
    /// `x_box`, and `y` lies in `y_box` when that could be certified.
    Boxes {
        x_poly: String,
        x_box: Box<RootBox>,
        y_relation: String,
        y_box: Option<Box<RootBox>>,
    },
    /// A common factor of positive degree.
    CommonFactor { factor: Poly },
    /// A degree mismatch.
    Degrees { actual: i64, expected: i64 },
    /// Two curves or a triple of curves, by index, with nested evidence.
    Curves {
        indices: Vec<usize>,
        evidence: Box<Witness>,
    },
    Note(String),
}

fn rat_str<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub reason: String,
}

impl CheckResult {
    pub fn holds(reason: impl Into<String>) -> Self {
        CheckResult {
            status: Status::Holds,
            witness: None,
            reason: reason.into(),
        }
    }

    pub fn fails(witness: Witness, reason: impl Into<String>) -> Self {
        CheckResult {
            status: Status::Fails,
            witness: Some(witness),
            reason: reason.into(),
        }
    }

    pub fn inconclusive(reason: impl Into<String>) -> Self {
        CheckResult {
            status: Status::Inconclusive,
            witness: None,
            reason: reason.into(),
        }
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }

    /// Combine verdicts: fails if any fails, else inconclusive if any is,
    /// else holds. The first failing (or inconclusive) result is kept.
    pub fn all<I: IntoIterator<Item = CheckResult>>(results: I, holds_reason: &str) -> Self {
        let mut inconclusive = None;
        for r in results {
            match r.status {
                Status::Fails => return r,
                Status::Inconclusive if inconclusive.is_none() => inconclusive = Some(r),
                _ => {}
            }
        }
        inconclusive.unwrap_or_else(|| CheckResult::holds(holds_reason))
    }
}
