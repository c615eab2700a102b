//! Named spaces.
//!
//! | name       | algebra | automorphism       |
//! |------------|---------|--------------------|
//! | `cp{n}-sp` | `C_m`   | A3III at node 1, `n = 2m - 1` |
//! | `cp{n}-su` | `A_n`   | A3I at node 1      |
//! | `s6`       | `G2`    | A3IV at node 1     |
//! | `f6`       | `A2`    | A3II at nodes 1, 2 |
//!
//! Anything of the form `TYPE:KIND:i[:j]` (1-based nodes) is accepted too.

use crate::error::{Error, Result};
use crate::rootsys::{DynkinType, Series};
use crate::threesym::{Auto3Kind, Auto3Spec, ThreeSymSpace};

/// Catalog version, bumped whenever a name changes meaning.
pub const CATALOG_VERSION: u32 = 1;

/// Names offered as suggestions.
pub const NAMES: &[&str] = &[
    "cp3-sp", "cp5-sp", "cp7-sp", "cp2-su", "cp3-su", "cp4-su", "s6", "f6",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Preset {
    pub ty: DynkinType,
    pub spec: Auto3Spec,
}

impl Preset {
    pub fn build(&self) -> Result<ThreeSymSpace> {
        ThreeSymSpace::from_type(self.ty, self.spec)
    }
}

pub fn lookup(name: &str) -> Result<Preset> {
    let key = name.trim().to_ascii_lowercase();
    if key.contains(':') {
        return parse_explicit(name.trim());
    }
    let found = match key.as_str() {
        "s6" => Some((DynkinType::new(Series::G, 2)?, Auto3Spec::new(Auto3Kind::A3IV, 0, None))),
        "f6" => Some((DynkinType::new(Series::A, 2)?, Auto3Spec::new(Auto3Kind::A3II, 0, Some(1)))),
        _ => cp(&key)?,
    };
    found.map(|(ty, spec)| Preset { ty, spec }).ok_or_else(|| Error::UnknownSpace {
        name: name.to_string(),
        suggestion: suggest(&key),
    })
}

pub fn build(name: &str) -> Result<ThreeSymSpace> {
    lookup(name)?.build()
}

fn cp(key: &str) -> Result<Option<(DynkinType, Auto3Spec)>> {
    let Some(rest) = key.strip_prefix("cp") else {
        return Ok(None);
    };
    let Some((n, group)) = rest.split_once('-') else {
        return Ok(None);
    };
    let Ok(n) = n.parse::<usize>() else {
        return Ok(None);
    };
    match group {
        "sp" if n >= 3 && n % 2 == 1 => Ok(Some((
            DynkinType::new(Series::C, n.div_ceil(2))?,
            Auto3Spec::new(Auto3Kind::A3III, 0, None),
        ))),
        "su" if n >= 1 => Ok(Some((
            DynkinType::new(Series::A, n)?,
            Auto3Spec::new(Auto3Kind::A3I, 0, None),
        ))),
        _ => Ok(None),
    }
}

fn parse_explicit(s: &str) -> Result<Preset> {
    let parts: Vec<&str> = s.split(':').collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(Error::InvalidArgument(format!("expected TYPE:KIND:i[:j], got '{s}'")));
    }
    let ty: DynkinType = parts[0].parse()?;
    let kind: Auto3Kind = parts[1].parse()?;
    let node = |p: &str| -> Result<usize> {
        match p.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(Error::InvalidArgument(format!("bad node index '{p}' (1-based)"))),
        }
    };
    let i = node(parts[2])?;
    let j = parts.get(3).map(|p| node(p)).transpose()?;
    Ok(Preset { ty, spec: Auto3Spec::new(kind, i, j) })
}

fn suggest(key: &str) -> Option<String> {
    NAMES
        .iter()
        .map(|n| (strsim::levenshtein(key, n), *n))
        .min()
        .filter(|(d, _)| *d <= 3)
        .map(|(_, n)| n.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog() {
        let p = lookup("cp5-sp").unwrap();
        assert_eq!(p.ty.to_string(), "C3");
        assert_eq!(p.spec, Auto3Spec::new(Auto3Kind::A3III, 0, None));
        assert_eq!(lookup("CP3-su").unwrap().ty.to_string(), "A3");
        assert_eq!(lookup("C4:A3III:1").unwrap().ty.to_string(), "C4");
        assert_eq!(lookup("A2:A3II:1:2").unwrap().spec.j, Some(1));
        for n in NAMES {
            build(n).unwrap();
        }
    }

    #[test]
    fn unknown_names_suggest() {
        match lookup("cp3-spp") {
            Err(Error::UnknownSpace { suggestion, .. }) => assert_eq!(suggestion.as_deref(), Some("cp3-sp")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(lookup("cp4-sp"), Err(Error::UnknownSpace { .. })));
        assert!(matches!(lookup("nonsense-space-name"), Err(Error::UnknownSpace { suggestion: None, .. })));
    }
}
