//! Bound reports and decimal formatting with directed rounding.

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer};
use serde::{Deserialize, Serialize};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// sup |G(x)| < value.
    UnconditionalUpper,
    /// G(x) > value infinitely often, assuming the inhomogeneous approximation problem is solvable.
    ConditionalPositive,
    /// G(x) < value infinitely often, assuming the homogeneous approximation problem is solvable.
    ConditionalNegative,
    /// G(x) > value infinitely often, certified by an explicit witness.
    WitnessPositive,
    /// G(x) < value infinitely often, certified by an explicit witness.
    WitnessNegative,
}

impl BoundKind {
    /// Rounding direction that keeps a printed value valid.
    pub fn safe_rounding(self) -> Round {
        match self {
            BoundKind::UnconditionalUpper | BoundKind::WitnessNegative => Round::Up,
            BoundKind::ConditionalNegative => Round::Up,
            BoundKind::ConditionalPositive | BoundKind::WitnessPositive => Round::Down,
        }
    }
}

/// Parameters behind a bound. Unused fields stay empty.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    pub precision_bits: u32,
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: Float,
    pub params: BoundParams,
    pub zero_table_id: String,
}

/// Serialized form of a [`BoundReport`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub kind: BoundKind,
    /// Decimal value rounded in the direction that keeps the bound valid.
    pub value: String,
    pub params: BoundParams,
    pub zero_table_id: String,
}

impl BoundReport {
    /// Value printed with `decimals` fractional digits, rounded so the bound stays true.
    pub fn value_decimal(&self, decimals: u32) -> String {
        format_fixed(&self.value, decimals, self.kind.safe_rounding())
    }

    pub fn to_record(&self, decimals: u32) -> BoundRecord {
        BoundRecord {
            kind: self.kind,
            value: self.value_decimal(decimals),
            params: self.params.clone(),
            zero_table_id: self.zero_table_id.clone(),
        }
    }
}

/// Fixed-point decimal string of `x` with `decimals` fractional digits.
pub fn format_fixed(x: &Float, decimals: u32, round: Round) -> String {
    let scale = Integer::from(10).pow(decimals);
    let prec = x.prec().max(64) + 4 * decimals + 64;
    let scaled = Float::with_val(prec, x * &scale);
    let int = match round {
        Round::Up => scaled.ceil(),
        Round::Down => scaled.floor(),
        Round::Zero => scaled.trunc(),
        _ => scaled.round(),
    }
    .to_integer()
    .expect("finite value");
    let negative = int < 0;
    let mut digits = int.abs().to_string();
    let frac = decimals as usize;
    if digits.len() <= frac {
        digits = format!("{}{digits}", "0".repeat(frac + 1 - digits.len()));
    }
    let (head, tail) = digits.split_at(digits.len() - frac);
    let sign = if negative { "-" } else { "" };
    if frac == 0 {
        format!("{sign}{head}")
    } else {
        format!("{sign}{head}.{tail}")
    }
}

/// Truncates toward zero at `decimals` fractional digits.
pub fn truncate(x: &Float, decimals: u32) -> String {
    format_fixed(x, decimals, Round::Zero)
}

/// Parses a decimal literal into a float of the given precision.
pub fn parse_decimal(s: &str, prec: u32) -> Option<Float> {
    Float::parse(s.trim()).ok().map(|p| Float::with_val(prec, p))
}
