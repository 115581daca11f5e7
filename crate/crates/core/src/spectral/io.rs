//! Text format for coefficient files: a header line `d=<d>` followed by one
//! line `k_1 … k_d re im` per coefficient. Blank lines and `#` comments are
//! skipped.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::{MultiIndex, TrigPoly};
use crate::{Error, Result};

pub fn parse_coefficients(text: &str) -> Result<TrigPoly> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `d=<d>` header".into(),
    })?;
    let d: usize = header
        .strip_prefix("d=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Parse {
            line,
            message: format!("expected `d=<d>` header, found `{header}`"),
        })?;
    super::check_dim(d).map_err(|e| Error::Parse {
        line,
        message: e.to_string(),
    })?;
    let mut terms = Vec::new();
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != d + 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected {} fields, found {}", d + 2, fields.len()),
            });
        }
        let k = fields[..d]
            .iter()
            .map(|f| f.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse {
                line,
                message: format!("bad frequency: {e}"),
            })?;
        let num = |s: &str| {
            s.parse::<f64>().map_err(|e| Error::Parse {
                line,
                message: format!("bad coefficient `{s}`: {e}"),
            })
        };
        terms.push((
            MultiIndex::new(k),
            Complex64::new(num(fields[d])?, num(fields[d + 1])?),
        ));
    }
    TrigPoly::from_terms(d, terms)
}

pub fn format_coefficients(f: &TrigPoly) -> String {
    let mut out = format!("d={}\n", f.dim());
    for (k, c) in f.terms() {
        for v in k.as_slice() {
            let _ = write!(out, "{v} ");
        }
        let _ = writeln!(out, "{:e} {:e}", c.re, c.im);
    }
    out
}
