use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered list of variable names. Order is significant: the `k`-th name is
/// the `k`-th coordinate of every exponent vector built over this frame.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VariableFrame {
    names: Vec<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableFrame {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Frame("a frame needs at least one variable".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::Frame(format!("'{n}' is not a variable identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::Frame(format!("duplicate variable '{n}'")));
            }
        }
        Ok(Arc::new(VariableFrame { names }))
    }

    /// Parses a comma separated list such as `x,y,z`.
    pub fn parse_list(list: &str) -> Result<Arc<Self>> {
        Self::new(list.split(',').map(|s| s.trim().to_string()))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Ambient dimension N.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A name starting with `base` that does not occur in the frame.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut candidate = base.to_string();
        while self.index_of(&candidate).is_some() {
            candidate.insert(0, '_');
        }
        candidate
    }

    /// This frame followed by fresh variables derived from `bases`.
    pub fn extended(&self, bases: &[&str]) -> Arc<Self> {
        let mut names = self.names.clone();
        for b in bases {
            let probe = VariableFrame {
                names: names.clone(),
            };
            names.push(probe.fresh_name(b));
        }
        Arc::new(VariableFrame { names })
    }

    /// The frame without the variables flagged in `drop`.
    pub fn restricted(&self, drop: &[bool]) -> Arc<Self> {
        let names = self
            .names
            .iter()
            .zip(drop)
            .filter(|(_, d)| !**d)
            .map(|(n, _)| n.clone())
            .collect();
        Arc::new(VariableFrame { names })
    }
}

impl fmt::Debug for VariableFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(VariableFrame::new(["x", "x"]).is_err());
        assert!(VariableFrame::new(["2x"]).is_err());
        assert!(VariableFrame::new(Vec::<String>::new()).is_err());
        assert_eq!(VariableFrame::parse_list("x, y,z").unwrap().len(), 3);
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let f = VariableFrame::new(["t", "_t"]).unwrap();
        assert_eq!(f.fresh_name("t"), "__t");
        let g = f.extended(&["t", "t"]);
        assert_eq!(g.names()[2], "__t");
        assert_eq!(g.names()[3], "___t");
    }
}
