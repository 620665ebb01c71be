use rug::Integer;

use super::{from_base36, OtrError};

const BUNDLED: &str = include_str!("../../../../fixtures/figure1_witnesses.txt");

/// The published pair 2^10·y and 2^10·z for N = 600.
#[derive(Clone, Debug)]
pub struct Figure1Witnesses {
    pub y_numerator: Integer,
    pub z_numerator: Integer,
    pub c: u32,
}

/// Parses text of the form `y <base36>` / `z <base36>`.
pub fn parse_figure1(text: &str) -> Result<Figure1Witnesses, OtrError> {
    let mut y = None;
    let mut z = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (key, digits) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| OtrError::Parse(format!("malformed line {line:?}")))?;
        let slot = match key {
            "y" => &mut y,
            "z" => &mut z,
            other => return Err(OtrError::Parse(format!("unknown key {other:?}"))),
        };
        *slot = Some(from_base36(digits)?);
    }
    Ok(Figure1Witnesses {
        y_numerator: y.ok_or_else(|| OtrError::Parse("missing y".into()))?,
        z_numerator: z.ok_or_else(|| OtrError::Parse("missing z".into()))?,
        c: 10,
    })
}

/// The bundled witnesses.
pub fn figure1_witnesses() -> Figure1Witnesses {
    parse_figure1(BUNDLED).expect("bundled witnesses are well formed")
}
