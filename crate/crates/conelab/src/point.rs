//! Parsing of point literals like `lambda=1,0,0,-1;s=1/2,0` into per-block
//! coordinate vectors. Entries are rationals (`a/b` or integers) in exact
//! mode; float mode additionally accepts decimal literals.

use std::str::FromStr;

use num::BigRational;

use crate::ineq::{rat_to_f64, ConeDescription};
use crate::{Error, Result};

/// Raw `name = values` groups in input order.
pub fn parse_point(input: &str) -> Result<Vec<(String, Vec<String>)>> {
    let mut out = Vec::new();
    for group in input.split(';') {
        let group = group.trim();
        if group.is_empty() {
            continue;
        }
        let (name, values) = group
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected name=values in {group:?}")))?;
        let name = name.trim().to_string();
        let values: Vec<String> = values
            .split(',')
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .collect();
        if name.is_empty() || values.is_empty() {
            return Err(Error::Parse(format!("empty block in {group:?}")));
        }
        out.push((name, values));
    }
    if out.is_empty() {
        return Err(Error::Parse("empty point".into()));
    }
    Ok(out)
}

fn parse_rational(token: &str) -> Result<BigRational> {
    BigRational::from_str(token)
        .map_err(|_| Error::Parse(format!("not a rational: {token:?}")))
}

fn arrange<'a, T>(
    desc: &ConeDescription,
    groups: &'a [(String, Vec<T>)],
) -> Result<Vec<&'a Vec<T>>> {
    if groups.len() != desc.blocks.len() {
        return Err(Error::Parse(format!(
            "point has {} blocks, cone {} expects {}",
            groups.len(),
            desc.name,
            desc.blocks.len()
        )));
    }
    desc.blocks
        .iter()
        .map(|b| {
            groups
                .iter()
                .find(|(name, _)| *name == b.name)
                .map(|(_, v)| v)
                .ok_or_else(|| Error::Parse(format!("missing block {} for {}", b.name, desc.name)))
        })
        .collect()
}

/// Exact coordinates in the block order of `desc`.
pub fn point_exact(input: &str, desc: &ConeDescription) -> Result<Vec<Vec<BigRational>>> {
    let raw = parse_point(input)?;
    let mut groups = Vec::new();
    for (name, tokens) in raw {
        let values: Result<Vec<BigRational>> = tokens.iter().map(|t| parse_rational(t)).collect();
        groups.push((name, values?));
    }
    Ok(arrange(desc, &groups)?.into_iter().cloned().collect())
}

/// Floating coordinates; accepts rationals and decimal literals.
pub fn point_float(input: &str, desc: &ConeDescription) -> Result<Vec<Vec<f64>>> {
    let raw = parse_point(input)?;
    let mut groups = Vec::new();
    for (name, tokens) in raw {
        let mut values = Vec::with_capacity(tokens.len());
        for t in &tokens {
            let v = if t.contains('/') {
                rat_to_f64(&parse_rational(t)?)
            } else {
                f64::from_str(t).map_err(|_| Error::Parse(format!("not a number: {t:?}")))?
            };
            values.push(v);
        }
        groups.push((name, values));
    }
    Ok(arrange(desc, &groups)?.into_iter().cloned().collect())
}
