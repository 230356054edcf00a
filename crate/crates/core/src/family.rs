//! Families of finite sets over a shared universe.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::set::{FiniteSet, GroundSet};

/// An ordered, duplicate-free family of subsets of a [`GroundSet`], optionally
/// uniform (every member has the same cardinality).
///
/// The text form is one set per line, elements ascending and space-separated;
/// the JSON form is an array of arrays. Both carry no explicit universe; it
/// is inferred as the largest element present when parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: GroundSet,
    sets: Vec<FiniteSet>,
    uniformity: Option<usize>,
}

impl SetFamily {
    /// Validates membership in the universe, the uniformity declaration, and
    /// duplicate-freeness.
    pub fn new(universe: GroundSet, sets: Vec<FiniteSet>, uniformity: Option<usize>) -> Result<Self> {
        for (i, s) in sets.iter().enumerate() {
            s.validate_in(&universe)
                .map_err(|e| Error::InvalidInput(format!("family member {i}: {e}")))?;
            if let Some(m) = uniformity {
                if s.len() != m {
                    return Err(Error::InvalidInput(format!(
                        "family member {i} has {} elements, expected uniformity {m}",
                        s.len()
                    )));
                }
            }
        }
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i] == sets[j] {
                    return Err(Error::InvalidInput(format!(
                        "duplicate family members at indices {i} and {j}"
                    )));
                }
            }
        }
        Ok(SetFamily { universe, sets, uniformity })
    }

    /// Infers the uniformity from the members (all equal sizes) and the
    /// universe from the largest element unless one is supplied.
    pub fn infer(sets: Vec<FiniteSet>, universe: Option<GroundSet>) -> Result<Self> {
        let max_elem = sets.iter().filter_map(FiniteSet::max_element).max().unwrap_or(1);
        let universe = match universe {
            Some(u) => u,
            None => GroundSet::new(max_elem.max(1))?,
        };
        let mut sizes = sets.iter().map(FiniteSet::len);
        let uniformity = match sizes.next() {
            Some(first) if sizes.all(|s| s == first) => Some(first),
            _ => None,
        };
        SetFamily::new(universe, sets, uniformity)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[FiniteSet] {
        &self.sets
    }

    pub fn universe(&self) -> GroundSet {
        self.universe
    }

    pub fn uniformity(&self) -> Option<usize> {
        self.uniformity
    }

    pub fn union_all(&self) -> FiniteSet {
        let mut u = FiniteSet::empty();
        for s in &self.sets {
            u.union_with(s);
        }
        u
    }

    /// Members in ascending lexicographic order.
    pub fn sorted(&self) -> SetFamily {
        let mut sets = self.sets.clone();
        sets.sort();
        SetFamily { universe: self.universe, sets, uniformity: self.uniformity }
    }

    /// One set per line, elements ascending, space-separated. The empty set
    /// prints as an empty line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sets {
            let line: Vec<String> = s.iter().map(|e| e.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(input: &str) -> Result<Self> {
        let mut sets = Vec::new();
        for (idx, line) in input.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut elements = Vec::new();
            for tok in line.split_whitespace() {
                let e: usize = tok.parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    msg: format!("invalid element '{tok}'"),
                })?;
                elements.push(e);
            }
            let set = FiniteSet::from_elements(elements.iter().copied()).map_err(|e| Error::Parse {
                line: idx + 1,
                msg: e.to_string(),
            })?;
            if set.len() != elements.len() {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: "duplicate element in set".into(),
                });
            }
            sets.push(set);
        }
        SetFamily::infer(sets, None)
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for SetFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.sets.iter())
    }
}

impl<'de> Deserialize<'de> for SetFamily {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let sets = Vec::<FiniteSet>::deserialize(deserializer)?;
        SetFamily::infer(sets, None).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(v: &[usize]) -> FiniteSet {
        FiniteSet::from_elements(v.iter().copied()).unwrap()
    }

    #[test]
    fn uniformity_enforced() {
        let u = GroundSet::new(5).unwrap();
        assert!(SetFamily::new(u, vec![fs(&[1, 2]), fs(&[3])], Some(2)).is_err());
        assert!(SetFamily::new(u, vec![fs(&[1, 2]), fs(&[3, 4])], Some(2)).is_ok());
    }

    #[test]
    fn duplicates_rejected() {
        let u = GroundSet::new(5).unwrap();
        assert!(SetFamily::new(u, vec![fs(&[1, 2]), fs(&[2, 1])], None).is_err());
    }

    #[test]
    fn elements_must_fit_universe() {
        let u = GroundSet::new(3).unwrap();
        assert!(SetFamily::new(u, vec![fs(&[4])], None).is_err());
    }

    #[test]
    fn text_round_trip() {
        let fam = SetFamily::infer(vec![fs(&[1, 2]), fs(&[1, 3]), fs(&[2, 3])], None).unwrap();
        let text = fam.to_text();
        assert_eq!(text, "1 2\n1 3\n2 3\n");
        let back = SetFamily::parse_text(&text).unwrap();
        assert_eq!(back, fam);
        assert_eq!(back.uniformity(), Some(2));
        assert_eq!(back.universe().size(), 3);
    }

    #[test]
    fn parse_rejects_duplicate_element() {
        let err = SetFamily::parse_text("1 2\n3 3\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }

    #[test]
    fn json_is_array_of_sorted_arrays() {
        let fam = SetFamily::infer(vec![fs(&[2, 1]), fs(&[3, 1])], None).unwrap();
        assert_eq!(serde_json::to_string(&fam).unwrap(), "[[1,2],[1,3]]");
    }
}
