//! Walk geometry on the square and triangular lattices, class predicates and
//! the exhaustive-search oracle.

mod enumerate;
mod square;
mod tri;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use enumerate::{
    endpoint_stats, enumerate_counts, enumerate_counts_with, enumerate_tri_by_box, enumerate_tri_by_box_with,
    enumerate_walks, fold_square, fold_tri, Distribution, EndpointStats, SquareNode, TriBoxCounts, TriLimit, TriNode,
};
pub use square::{is_k_sided, is_prudent, PrudentTracker, RectBox, SquareWalk, Step};
pub use tri::{is_triangular_prudent, TriBox, TriStep, TriWalk};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WalkClass {
    OneSided,
    TwoSided,
    ThreeSided,
    Prudent4,
    Triangular,
}

impl WalkClass {
    pub const ALL: [WalkClass; 5] =
        [WalkClass::OneSided, WalkClass::TwoSided, WalkClass::ThreeSided, WalkClass::Prudent4, WalkClass::Triangular];

    pub const SQUARE: [WalkClass; 4] =
        [WalkClass::OneSided, WalkClass::TwoSided, WalkClass::ThreeSided, WalkClass::Prudent4];

    /// Number of allowed box sides for square classes; `None` for triangular.
    pub fn sides(self) -> Option<u8> {
        match self {
            WalkClass::OneSided => Some(1),
            WalkClass::TwoSided => Some(2),
            WalkClass::ThreeSided => Some(3),
            WalkClass::Prudent4 => Some(4),
            WalkClass::Triangular => None,
        }
    }

    pub fn is_square(self) -> bool {
        self.sides().is_some()
    }

    pub fn name(self) -> &'static str {
        match self {
            WalkClass::OneSided => "one-sided",
            WalkClass::TwoSided => "two-sided",
            WalkClass::ThreeSided => "three-sided",
            WalkClass::Prudent4 => "prudent",
            WalkClass::Triangular => "triangular",
        }
    }
}

impl fmt::Display for WalkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WalkClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "1" | "one" | "one-sided" | "1-sided" => WalkClass::OneSided,
            "2" | "two" | "two-sided" | "2-sided" => WalkClass::TwoSided,
            "3" | "three" | "three-sided" | "3-sided" => WalkClass::ThreeSided,
            "4" | "four" | "four-sided" | "4-sided" | "prudent" => WalkClass::Prudent4,
            "tri" | "triangular" => WalkClass::Triangular,
            other => return Err(Error::invalid(format!("unknown walk class {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Walk {
    Square(SquareWalk),
    Tri(TriWalk),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum StepJson {
    Letter(String),
    Code(u8),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct WalkJson {
    lattice: String,
    steps: Vec<StepJson>,
}

impl Walk {
    pub fn len(&self) -> usize {
        match self {
            Walk::Square(w) => w.len(),
            Walk::Tri(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Class membership predicate.
    pub fn is_in_class(&self, class: WalkClass) -> bool {
        match (self, class.sides()) {
            (Walk::Square(w), Some(k)) => is_k_sided(w, k),
            (Walk::Tri(w), None) => is_triangular_prudent(w),
            _ => false,
        }
    }

    /// Parses walk text: letters `NESW` for `square`, digits `0-5` for `tri`.
    pub fn parse(text: &str, triangular: bool) -> Result<Walk> {
        if triangular {
            text.parse().map(Walk::Tri)
        } else {
            text.parse().map(Walk::Square)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = match self {
            Walk::Square(w) => WalkJson {
                lattice: "square".into(),
                steps: w.steps.iter().map(|s| StepJson::Letter(s.letter().to_string())).collect(),
            },
            Walk::Tri(w) => {
                WalkJson { lattice: "tri".into(), steps: w.steps.iter().map(|s| StepJson::Code(s.code())).collect() }
            }
        };
        serde_json::to_value(j).expect("walk json")
    }

    pub fn from_json(s: &str) -> Result<Walk> {
        let j: WalkJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        match j.lattice.as_str() {
            "square" => j
                .steps
                .iter()
                .map(|s| match s {
                    StepJson::Letter(l) if l.chars().count() == 1 => Step::from_letter(l.chars().next().unwrap())
                        .ok_or_else(|| Error::Parse(format!("bad step {l}"))),
                    StepJson::Code(c) if *c < 4 => Ok(Step::from_code(*c)),
                    other => Err(Error::Parse(format!("bad square step {other:?}"))),
                })
                .collect::<Result<Vec<_>>>()
                .map(|v| Walk::Square(SquareWalk::new(v))),
            "tri" => j
                .steps
                .iter()
                .map(|s| match s {
                    StepJson::Code(c) if *c < 6 => Ok(TriStep::from_code(*c)),
                    other => Err(Error::Parse(format!("bad triangular step {other:?}"))),
                })
                .collect::<Result<Vec<_>>>()
                .map(|v| Walk::Tri(TriWalk::new(v))),
            other => Err(Error::Parse(format!("unknown lattice {other:?}"))),
        }
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Walk::Square(w) => w.fmt(f),
            Walk::Tri(w) => w.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_names_parse() {
        for c in WalkClass::ALL {
            assert_eq!(c.name().parse::<WalkClass>().unwrap(), c);
        }
        assert!("five".parse::<WalkClass>().is_err());
    }

    #[test]
    fn walk_json_round_trip() {
        let w = Walk::parse("NEES", false).unwrap();
        let j = w.to_json().to_string();
        assert_eq!(j, r#"{"lattice":"square","steps":["N","E","E","S"]}"#);
        assert_eq!(Walk::from_json(&j).unwrap(), w);
        let t = Walk::parse("0125", true).unwrap();
        assert_eq!(Walk::from_json(&t.to_json().to_string()).unwrap(), t);
        assert!(Walk::from_json(r#"{"lattice":"hex","steps":[]}"#).is_err());
    }
}
