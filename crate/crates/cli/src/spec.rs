//! Curve-spec file ingestion: one entry per line,
//! `label a1 a2 a3 a4 a6 [ma mb mc md]`, rationals written as `num/den`
//! (or plain integers), an optional Moebius matrix of four integers,
//! `#` comments and blank lines ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use torsion_bounds::error::Error;
use torsion_bounds::projection::{Mobius, StandardProjection};
use torsion_bounds::ring::QQ;
use torsion_bounds::weierstrass::Curve;

pub struct SpecEntry {
    pub label: String,
    pub projection: StandardProjection,
}

pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let parse = |t: &str| {
        t.parse::<BigInt>()
            .map_err(|_| Error::SpecError(format!("malformed integer {t:?}")))
    };
    let n = parse(num)?;
    let d = parse(den)?;
    if d.is_zero() {
        return Err(Error::SpecError(format!(
            "malformed rational {s:?}: zero denominator"
        )));
    }
    Ok(BigRational::new(n, d))
}

pub fn parse_spec(text: &str) -> Result<Vec<SpecEntry>, Error> {
    let mut entries = vec![];
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 6 && fields.len() != 10 {
            return Err(Error::SpecError(format!(
                "line {}: expected 6 or 10 fields, found {}",
                lineno + 1,
                fields.len()
            )));
        }
        let at = |i: usize| -> Result<BigRational, Error> {
            parse_rational(fields[i])
                .map_err(|e| Error::SpecError(format!("line {}, field {}: {e}", lineno + 1, i + 1)))
        };
        let curve = Curve::new(QQ, at(1)?, at(2)?, at(3)?, at(4)?, at(5)?);
        let twist = if fields.len() == 10 {
            let m = |i: usize| -> Result<BigInt, Error> {
                fields[i].parse::<BigInt>().map_err(|_| {
                    Error::SpecError(format!("line {}: bad Moebius entry", lineno + 1))
                })
            };
            Mobius::new(m(6)?, m(7)?, m(8)?, m(9)?)
                .map_err(|e| Error::SpecError(format!("line {}: {e}", lineno + 1)))?
        } else {
            Mobius::identity()
        };
        let projection = StandardProjection::new(curve, twist)
            .map_err(|e| Error::SpecError(format!("line {}: {e}", lineno + 1)))?;
        entries.push(SpecEntry {
            label: fields[0].to_string(),
            projection,
        });
    }
    Ok(entries)
}

pub fn parse_spec_file(path: &std::path::Path) -> Result<Vec<SpecEntry>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::SpecError(format!("cannot read {}: {e}", path.display())))?;
    parse_spec(&text)
}
