use std::fmt::Write as _;

use rug::float::Round;
use rug::{Float, Integer};
use serde::{Deserialize, Serialize};

use super::OtrError;
use crate::report::{format_fixed, parse_decimal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// γ_k y near odd multiples of π: G(e^y) is large and positive.
    Inhomogeneous,
    /// γ_k z near even multiples of π: G(e^z) is large and negative.
    Homogeneous,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::Inhomogeneous => "inhomogeneous",
            WitnessKind::Homogeneous => "homogeneous",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "inhomogeneous" => Some(WitnessKind::Inhomogeneous),
            "homogeneous" => Some(WitnessKind::Homogeneous),
            _ => None,
        }
    }
}

/// A certified approximation witness.
///
/// `eps` is an upper bound on the true approximation error over the first
/// `n` ordinates and `bound` is a guaranteed one-sided bound on G at
/// x = e^value: G(e^y) ≥ bound for inhomogeneous witnesses, G(e^z) ≤ bound
/// for homogeneous ones.
#[derive(Clone, Debug)]
pub struct Witness {
    pub kind: WitnessKind,
    pub n: usize,
    /// s or t, always ≥ 0.
    pub numerator: Integer,
    pub c: u32,
    /// numerator / 2^c, exact.
    pub value: Float,
    /// The nearest m_k, one per ordinate.
    pub m: Vec<Integer>,
    pub eps: Float,
    /// Midpoint of the certified truncated sum over the first n zeros.
    pub partial: Float,
    pub bound: Float,
    /// True if the lattice produced a negative numerator that was normalised.
    pub negated: bool,
    pub precision_bits: u32,
}

/// Decimal places used when printing ε and bounds.
pub const WITNESS_DECIMALS: u32 = 30;

impl Witness {
    /// ε rounded up, as printed.
    pub fn eps_decimal(&self, decimals: u32) -> String {
        format_fixed(&self.eps, decimals, Round::Up)
    }

    /// Bound rounded in the direction that keeps it valid.
    pub fn bound_decimal(&self, decimals: u32) -> String {
        let round = match self.kind {
            WitnessKind::Inhomogeneous => Round::Down,
            WitnessKind::Homogeneous => Round::Up,
        };
        format_fixed(&self.bound, decimals, round)
    }

    pub fn to_record(&self) -> WitnessRecord {
        WitnessRecord {
            kind: self.kind,
            n: self.n,
            c: self.c,
            numerator: to_base36(&self.numerator),
            eps: self.eps_decimal(WITNESS_DECIMALS),
            bound: self.bound_decimal(WITNESS_DECIMALS),
        }
    }

    /// Line-oriented text record.
    pub fn to_text(&self) -> String {
        self.to_record().to_text()
    }
}

/// Serialisable form of a witness; ε and bound are conservative decimals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub kind: WitnessKind,
    pub n: usize,
    pub c: u32,
    /// Numerator in lowercase base 36.
    pub numerator: String,
    pub eps: String,
    pub bound: String,
}

impl WitnessRecord {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "kind {}", self.kind.as_str());
        let _ = writeln!(out, "n {}", self.n);
        let _ = writeln!(out, "c {}", self.c);
        let _ = writeln!(out, "numerator {}", self.numerator);
        let _ = writeln!(out, "eps {}", self.eps);
        let _ = writeln!(out, "bound {}", self.bound);
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, OtrError> {
        let mut fields = std::collections::BTreeMap::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, value) = line
                .split_once(' ')
                .ok_or_else(|| OtrError::Parse(format!("malformed line {line:?}")))?;
            if fields.insert(key, value.trim()).is_some() {
                return Err(OtrError::Parse(format!("duplicate field {key}")));
            }
        }
        let get = |key: &str| {
            fields
                .get(key)
                .copied()
                .ok_or_else(|| OtrError::Parse(format!("missing field {key}")))
        };
        let kind = WitnessKind::parse(get("kind")?)
            .ok_or_else(|| OtrError::Parse(format!("unknown kind {:?}", fields["kind"])))?;
        let n = get("n")?
            .parse()
            .map_err(|e| OtrError::Parse(format!("n: {e}")))?;
        let c = get("c")?
            .parse()
            .map_err(|e| OtrError::Parse(format!("c: {e}")))?;
        let numerator = get("numerator")?;
        from_base36(numerator)?;
        let eps = get("eps")?;
        let bound = get("bound")?;
        for (name, v) in [("eps", eps), ("bound", bound)] {
            if parse_decimal(v, 64).is_none() {
                return Err(OtrError::Parse(format!("{name}: not a decimal: {v:?}")));
            }
        }
        Ok(WitnessRecord {
            kind,
            n,
            c,
            numerator: numerator.to_string(),
            eps: eps.to_string(),
            bound: bound.to_string(),
        })
    }

    pub fn numerator_value(&self) -> Result<Integer, OtrError> {
        from_base36(&self.numerator)
    }
}

/// Lowercase base-36 digits, most significant first.
pub fn to_base36(x: &Integer) -> String {
    x.to_string_radix(36)
}

/// Parses a non-negative base-36 integer written with `0-9a-z` only.
pub fn from_base36(s: &str) -> Result<Integer, OtrError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(OtrError::Parse("empty base-36 string".into()));
    }
    if let Some((i, ch)) = s
        .char_indices()
        .find(|(_, ch)| !(ch.is_ascii_digit() || ch.is_ascii_lowercase()))
    {
        return Err(OtrError::Parse(format!(
            "invalid base-36 character {ch:?} at offset {i}"
        )));
    }
    Integer::from_str_radix(s, 36).map_err(|e| OtrError::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base36_round_trip() {
        assert_eq!(from_base36("z").unwrap(), 35);
        assert_eq!(from_base36("10").unwrap(), 36);
        let x = Integer::from(Integer::u_pow_u(7, 200)) - 1u32;
        assert_eq!(from_base36(&to_base36(&x)).unwrap(), x);
        assert!(to_base36(&x).chars().all(|c| c.is_ascii_digit() || c.is_ascii_lowercase()));
    }

    #[test]
    fn base36_rejects_foreign_characters() {
        for bad in ["", "ab_c", "AB", "-12", "1 2", "+5"] {
            assert!(from_base36(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn text_record_round_trip() {
        let rec = WitnessRecord {
            kind: WitnessKind::Homogeneous,
            n: 70,
            c: 10,
            numerator: "3kq9z".into(),
            eps: "0.000921".into(),
            bound: "-0.014772".into(),
        };
        let back = WitnessRecord::parse_text(&rec.to_text()).unwrap();
        assert_eq!(back, rec);
        assert!(WitnessRecord::parse_text("kind odd\nn 1\nc 1\nnumerator 1\neps 0\nbound 0\n").is_err());
        assert!(WitnessRecord::parse_text("kind homogeneous\nn 1\n").is_err());
        let corrupt = rec.to_text().replace("3kq9z", "3kq_z");
        assert!(WitnessRecord::parse_text(&corrupt).is_err());
    }
}
