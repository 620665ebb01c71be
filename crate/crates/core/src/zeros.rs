//! Tables of ordinates of nontrivial zeros of the Riemann zeta function.
//!
//! Tables are external inputs in a simple text format:
//!
//! ```text
//! ZEROS <count> <decimal_digits>
//! 14.1347251417346937904572519835624702707842571156992431756855674601...
//! 21.0220396387715549926284795938969027773343405249027817546295204035...
//! ```
//!
//! Each ordinate carries exactly `decimal_digits` digits after the point. The
//! table is immutable once loaded and can be shared freely between threads.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// First 50 decimals of the first ordinate, used as a spot check on load.
pub const GAMMA1_50: &str = "14.13472514173469379045725198356247027078425711569924";

/// Guard bits kept above the declared precision when storing ordinates.
const STORAGE_GUARD_BITS: u32 = 32;

#[derive(Debug, Error)]
pub enum ZeroTableError {
    #[error("cannot read zero table {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed header: {0}")]
    Header(String),
    #[error("line {line}: cannot parse ordinate: {reason}")]
    Parse { line: usize, reason: String },
    #[error("non-monotone ordinates at line {line}")]
    NonMonotone { line: usize },
    #[error("declared precision {declared} bits is below the required {required} bits")]
    Precision { declared: u32, required: u32 },
    #[error("header declares {declared} ordinates but file holds {found}")]
    Count { declared: usize, found: usize },
    #[error("first ordinate fails the sanity check: {0}")]
    Sanity(String),
    #[error("height {height} exceeds the last tabulated ordinate {last}")]
    OutOfRange { height: String, last: String },
    #[error("table holds {count} zeros, {needed} needed")]
    Insufficient { count: usize, needed: usize },
}

/// An immutable, validated table of zeta-zero ordinates γ₁ < γ₂ < ….
#[derive(Clone, Debug)]
pub struct ZeroTable {
    ordinates: Vec<Float>,
    decimal_digits: u32,
    precision_bits: u32,
    id: String,
}

impl PartialEq for ZeroTable {
    fn eq(&self, other: &Self) -> bool {
        self.decimal_digits == other.decimal_digits && self.ordinates == other.ordinates
    }
}

/// Bits guaranteed by a decimal fraction of `digits` digits: ⌊digits·log₂10⌋.
pub fn digits_to_bits(digits: u32) -> u32 {
    // Exact for every digit count below 10^9: compare against a 64-bit
    // rational approximation of log2(10) from below.
    ((digits as u128 * 3_321_928_094_887_362_347) / 1_000_000_000_000_000_000) as u32
}

impl ZeroTable {
    /// Reads and validates a table from disk.
    pub fn load(path: impl AsRef<Path>, min_precision_bits: u32) -> Result<Self, ZeroTableError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| ZeroTableError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text, min_precision_bits)
    }

    /// Parses a table held in memory. Same validation as [`ZeroTable::load`].
    pub fn parse(text: &str, min_precision_bits: u32) -> Result<Self, ZeroTableError> {
        let mut lines = text.split('\n');
        let header = lines
            .next()
            .ok_or_else(|| ZeroTableError::Header("empty file".into()))?;
        let fields: Vec<&str> = header.split(' ').collect();
        if fields.len() != 3 || fields[0] != "ZEROS" {
            return Err(ZeroTableError::Header(format!(
                "expected \"ZEROS <count> <digits>\", got {header:?}"
            )));
        }
        let count: usize = fields[1]
            .parse()
            .map_err(|_| ZeroTableError::Header(format!("bad count {:?}", fields[1])))?;
        let digits: u32 = fields[2]
            .parse()
            .map_err(|_| ZeroTableError::Header(format!("bad digit count {:?}", fields[2])))?;
        if count == 0 {
            return Err(ZeroTableError::Header("count must be positive".into()));
        }
        let precision_bits = digits_to_bits(digits);
        let required = min_precision_bits.max(64);
        if precision_bits < required {
            return Err(ZeroTableError::Precision {
                declared: precision_bits,
                required,
            });
        }

        let storage_prec = precision_bits + STORAGE_GUARD_BITS;
        let mut body: Vec<&str> = lines.collect();
        // a single trailing newline leaves one empty piece at the end
        if body.last() == Some(&"") {
            body.pop();
        }
        let mut ordinates: Vec<Float> = Vec::with_capacity(count);
        for (idx, line) in body.into_iter().enumerate() {
            let lineno = idx + 2;
            if line.is_empty() {
                return Err(ZeroTableError::Parse {
                    line: lineno,
                    reason: "empty line".into(),
                });
            }
            let value = parse_ordinate(line, digits, storage_prec).map_err(|reason| {
                ZeroTableError::Parse {
                    line: lineno,
                    reason,
                }
            })?;
            if let Some(prev) = ordinates.last() {
                if value <= *prev {
                    return Err(ZeroTableError::NonMonotone { line: lineno });
                }
            }
            ordinates.push(value);
        }
        if ordinates.len() != count {
            return Err(ZeroTableError::Count {
                declared: count,
                found: ordinates.len(),
            });
        }
        check_first_ordinate(&ordinates[0], digits)?;
        if let Some(line) = ordinates.iter().position(|g| *g <= 14) {
            return Err(ZeroTableError::Sanity(format!(
                "ordinate on line {} is not above 14",
                line + 2
            )));
        }

        let digest = Sha256::digest(text.as_bytes());
        let mut short = String::new();
        for byte in &digest[..6] {
            write!(short, "{byte:02x}").unwrap();
        }
        let id = format!("zeros-{count}-d{digits}-{short}");

        Ok(ZeroTable {
            ordinates,
            decimal_digits: digits,
            precision_bits,
            id,
        })
    }

    /// Writes the table back in canonical form.
    pub fn serialize(&self) -> String {
        let mut out = format!("ZEROS {} {}\n", self.count(), self.decimal_digits);
        let scale = Integer::from(10).pow(self.decimal_digits);
        for g in &self.ordinates {
            let scaled = Float::with_val(g.prec() + 64, g * &scale);
            let int = scaled.round().to_integer().expect("finite ordinate");
            let mut digits = int.to_string();
            let frac = self.decimal_digits as usize;
            if digits.len() <= frac {
                digits = format!("{}{digits}", "0".repeat(frac + 1 - digits.len()));
            }
            let (head, tail) = digits.split_at(digits.len() - frac);
            out.push_str(head);
            if frac > 0 {
                out.push('.');
                out.push_str(tail);
            }
            out.push('\n');
        }
        out
    }

    pub fn count(&self) -> usize {
        self.ordinates.len()
    }

    /// Correct bits per entry: every stored ordinate is within 2^-precision_bits of the true value.
    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn decimal_digits(&self) -> u32 {
        self.decimal_digits
    }

    /// Short content-derived identifier used in report provenance.
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn ordinates(&self) -> &[Float] {
        &self.ordinates
    }

    /// The `k`-th ordinate, 1-based as in γ₁, γ₂, ….
    pub fn gamma(&self, k: usize) -> &Float {
        &self.ordinates[k - 1]
    }

    pub fn last(&self) -> &Float {
        self.ordinates.last().expect("table is nonempty")
    }

    /// Number of tabulated ordinates γ with γ < `height`.
    ///
    /// The count is only certified while `height` does not exceed the last
    /// tabulated ordinate.
    pub fn count_below(&self, height: &Float) -> Result<usize, ZeroTableError> {
        if height > self.last() {
            return Err(ZeroTableError::OutOfRange {
                height: height.to_string_radix(10, Some(20)),
                last: self.last().to_string_radix(10, Some(20)),
            });
        }
        Ok(self.ordinates.partition_point(|g| g < height))
    }

    /// Number of tabulated ordinates γ with γ ≤ `height` (same range rule as [`Self::count_below`]).
    pub fn count_up_to(&self, height: &Float) -> Result<usize, ZeroTableError> {
        if height > self.last() {
            return Err(ZeroTableError::OutOfRange {
                height: height.to_string_radix(10, Some(20)),
                last: self.last().to_string_radix(10, Some(20)),
            });
        }
        Ok(self.ordinates.partition_point(|g| g <= height))
    }

    /// T*(N) = γ_{N+1} − (γ_{N+1} − γ_N)/100, a height strictly between γ_N and γ_{N+1}.
    pub fn t_star(&self, n: usize, prec: u32) -> Result<Float, ZeroTableError> {
        if n == 0 || n + 1 > self.count() {
            return Err(ZeroTableError::Insufficient {
                count: self.count(),
                needed: n + 1,
            });
        }
        let upper = Float::with_val(prec, self.gamma(n + 1));
        let lower = Float::with_val(prec, self.gamma(n));
        let gap = Float::with_val(prec, &upper - &lower) / 100u32;
        Ok(upper - gap)
    }
}

/// Free-function form of [`ZeroTable::load`].
pub fn load_zero_table(
    path: impl AsRef<Path>,
    min_precision_bits: u32,
) -> Result<ZeroTable, ZeroTableError> {
    ZeroTable::load(path, min_precision_bits)
}

/// #{k : γ_k < T}.
pub fn zero_count_below(table: &ZeroTable, height: &Float) -> Result<usize, ZeroTableError> {
    table.count_below(height)
}

pub fn t_star(table: &ZeroTable, n: usize, prec: u32) -> Result<Float, ZeroTableError> {
    table.t_star(n, prec)
}

fn parse_ordinate(line: &str, digits: u32, prec: u32) -> Result<Float, String> {
    let (int_part, frac_part) = match line.split_once('.') {
        Some(parts) => parts,
        None if digits == 0 => (line, ""),
        None => return Err("missing decimal point".into()),
    };
    if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("bad integer part {int_part:?}"));
    }
    if frac_part.len() != digits as usize || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!(
            "expected exactly {digits} fractional digits, found {}",
            frac_part.len()
        ));
    }
    let parsed = Float::parse(line).map_err(|e| e.to_string())?;
    Ok(Float::with_val_round(prec, parsed, Round::Nearest).0)
}

fn check_first_ordinate(first: &Float, digits: u32) -> Result<(), ZeroTableError> {
    if !(*first > 14.13 && *first < 14.14) {
        return Err(ZeroTableError::Sanity(format!(
            "γ₁ = {} is outside (14.13, 14.14)",
            first.to_string_radix(10, Some(12))
        )));
    }
    // The table entry is within 10^-digits/2 of γ₁ and the reference is
    // within 0.32·10^-50, so larger gaps mean a wrong table.
    let shared = digits.min(50);
    let reference = Float::with_val(first.prec(), Float::parse(GAMMA1_50).unwrap());
    let diff = Float::with_val(first.prec(), first - &reference).abs();
    let ten = Float::with_val(64, 10);
    let tol = ten.clone().pow(-(digits as i32)) / 2u32
        + ten.pow(-50i32) * 0.35f64;
    if diff > tol {
        return Err(ZeroTableError::Sanity(format!(
            "γ₁ disagrees with the reference value beyond 10^-{shared}"
        )));
    }
    Ok(())
}
