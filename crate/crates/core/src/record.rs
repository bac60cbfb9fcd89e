//! The common output record: one extremal metric, its functional value,
//! and its comparison with the lower bound for `sup Λᵢ`.

use std::fmt;

use serde::Serialize;

use crate::bounds::bound_for;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Topology {
    #[serde(rename = "torus")]
    Torus,
    #[serde(rename = "klein")]
    KleinBottle,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Torus => "torus",
            Topology::KleinBottle => "klein",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Otsuki,
    Lawson,
    BipolarLawson,
    BipolarOtsuki,
    Clifford,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Otsuki,
        Family::Lawson,
        Family::BipolarLawson,
        Family::BipolarOtsuki,
        Family::Clifford,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Otsuki => "Otsuki",
            Family::Lawson => "Lawson",
            Family::BipolarLawson => "BipolarLawson",
            Family::BipolarOtsuki => "BipolarOtsuki",
            Family::Clifford => "Clifford",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters identifying a surface within its family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum Params {
    Otsuki { p: u64, q: u64 },
    Lawson { m: u64, k: u64 },
    Clifford { r2: u64 },
}

impl fmt::Display for Params {
    /// Compact `key=value` list separated by `;`, as used in CSV output.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::Otsuki { p, q } => write!(f, "p={p};q={q}"),
            Params::Lawson { m, k } => write!(f, "m={m};k={k}"),
            Params::Clifford { r2 } => write!(f, "r2={r2}"),
        }
    }
}

/// Whether `value` is the functional itself or only a strict upper bound
/// for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ValueKind {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "upper-bound")]
    UpperBound,
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValueKind::Exact => "exact",
            ValueKind::UpperBound => "upper-bound",
        })
    }
}

/// Records that are allowed to sit exactly on the lower bound: the bipolar
/// Lawson Klein bottle `τ̃₃,₁`, which is maximal for `Λ₁`.
pub const EQUALITY_WHITELIST: &[(Family, Params)] =
    &[(Family::BipolarLawson, Params::Lawson { m: 3, k: 1 })];

/// Largest `|margin|` accepted for a whitelisted equality.
pub const EQUALITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalRecord {
    pub family: Family,
    pub params: Params,
    pub topology: Topology,
    pub index: u64,
    pub value: f64,
    pub value_kind: ValueKind,
    pub baseline: f64,
    /// `baseline - value`; positive means the metric is not maximal.
    pub margin: f64,
    /// Closed-form expression of `value`, for human-readable output.
    #[serde(skip)]
    pub formula: &'static str,
}

impl ExtremalRecord {
    /// Builds a record and fills in the baseline for its topology and index.
    pub fn new(
        family: Family,
        params: Params,
        topology: Topology,
        index: u64,
        value: f64,
        value_kind: ValueKind,
        formula: &'static str,
    ) -> Result<Self> {
        let baseline = bound_for(topology, index)?.value;
        Ok(Self {
            family,
            params,
            topology,
            index,
            value,
            value_kind,
            baseline,
            margin: baseline - value,
            formula,
        })
    }

    pub fn is_whitelisted(&self) -> bool {
        EQUALITY_WHITELIST
            .iter()
            .any(|(f, p)| *f == self.family && *p == self.params)
    }

    /// Strictly positive margin, or a whitelisted equality within
    /// [`EQUALITY_TOLERANCE`].
    pub fn satisfies_margin(&self) -> bool {
        self.margin > 0.0 || (self.is_whitelisted() && self.margin.abs() <= EQUALITY_TOLERANCE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whitelist_holds_one_entry() {
        assert_eq!(EQUALITY_WHITELIST.len(), 1);
    }

    #[test]
    fn params_render_compactly() {
        assert_eq!(Params::Otsuki { p: 2, q: 3 }.to_string(), "p=2;q=3");
        assert_eq!(Params::Clifford { r2: 5 }.to_string(), "r2=5");
    }

    #[test]
    fn negative_margin_fails_unless_whitelisted() {
        let mut r = ExtremalRecord::new(
            Family::Lawson,
            Params::Lawson { m: 3, k: 1 },
            Topology::KleinBottle,
            1,
            1e3,
            ValueKind::Exact,
            "",
        )
        .unwrap();
        assert!(!r.satisfies_margin());
        r.margin = 0.0;
        assert!(!r.satisfies_margin());
        r.family = Family::BipolarLawson;
        assert!(r.satisfies_margin());
    }

    #[test]
    fn json_field_order_and_names() {
        let r = ExtremalRecord::new(
            Family::Clifford,
            Params::Clifford { r2: 1 },
            Topology::Torus,
            1,
            1.0,
            ValueKind::Exact,
            "4*pi^2*r2",
        )
        .unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let keys: Vec<&str> = [
            "\"family\"",
            "\"params\"",
            "\"topology\"",
            "\"index\"",
            "\"value\"",
            "\"value_kind\"",
            "\"baseline\"",
            "\"margin\"",
        ]
        .to_vec();
        let positions: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{s}");
        assert!(s.contains("\"params\":{\"r2\":1}"));
        assert!(!s.contains("formula"));
    }
}
