//! Text form of groups: generators `m1,m2,m3;a1,a2,a3` joined by `|`.

use crate::error::{Error, Result};
use crate::exact_torus::CurveOrder;
use crate::vw_group::{closure, GroupElement, Subgroup};

/// A parsed list of generators for one curve order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLiteral {
    pub n: CurveOrder,
    pub generators: Vec<GroupElement>,
}

fn parse_triple(part: &str, what: &str, src: &str) -> Result<[u8; 3]> {
    let values: Vec<&str> = part.split(',').collect();
    if values.len() != 3 {
        return Err(Error::Parse(format!("{what} of `{src}` needs 3 entries")));
    }
    let mut out = [0u8; 3];
    for (slot, v) in out.iter_mut().zip(values) {
        *slot = v.parse().map_err(|_| {
            Error::Parse(format!(
                "`{v}` in `{src}` is not a small non-negative integer"
            ))
        })?;
    }
    Ok(out)
}

/// Parses one element; surrounding parentheses and whitespace are ignored.
pub fn parse_element(n: CurveOrder, src: &str) -> Result<GroupElement> {
    let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let body = compact
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(&compact);
    let (twist, shift) = body
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("`{src}` lacks the `;` between twist and shift")))?;
    GroupElement::new(
        n,
        parse_triple(twist, "twist", src)?,
        parse_triple(shift, "shift", src)?,
    )
}

impl GroupLiteral {
    pub fn parse(n: CurveOrder, src: &str) -> Result<Self> {
        if src.trim().is_empty() {
            return Err(Error::Parse("empty group literal".into()));
        }
        let generators = src
            .split('|')
            .map(|g| parse_element(n, g))
            .collect::<Result<_>>()?;
        Ok(GroupLiteral { n, generators })
    }

    pub fn subgroup(&self) -> Result<Subgroup> {
        closure(self.n, &self.generators)
    }

    /// Parses and closes; the result must be admissible.
    pub fn admissible_group(n: CurveOrder, src: &str) -> Result<Subgroup> {
        let g = Self::parse(n, src)?.subgroup()?;
        g.require_admissible()?;
        Ok(g)
    }
}
