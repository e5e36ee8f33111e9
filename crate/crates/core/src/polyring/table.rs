use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A variable identifier: base name plus jet level. Level 0 is the base
/// coordinate itself and prints without a suffix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub name: String,
    pub level: u32,
}

impl VarId {
    pub fn new(name: impl Into<String>, level: u32) -> VarId {
        VarId { name: name.into(), level }
    }

    pub fn base(name: impl Into<String>) -> VarId {
        VarId::new(name, 0)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 0 {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}({})", self.name, self.level)
        }
    }
}

/// An ordered list of distinct variables. Position 0 is the largest
/// variable under every monomial order.
#[derive(Debug, Clone)]
pub struct VariableTable {
    vars: Vec<VarId>,
    index: HashMap<VarId, usize>,
}

impl PartialEq for VariableTable {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
}

impl Eq for VariableTable {}

impl VariableTable {
    pub fn new(vars: Vec<VarId>) -> Result<Arc<VariableTable>> {
        let mut index = HashMap::with_capacity(vars.len());
        for (i, v) in vars.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::Precondition(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(VariableTable { vars, index }))
    }

    /// Table of level-0 variables with the given names.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Arc<VariableTable>> {
        VariableTable::new(names.iter().map(|n| VarId::base(n.as_ref())).collect())
    }

    pub fn empty() -> Arc<VariableTable> {
        Arc::new(VariableTable { vars: Vec::new(), index: HashMap::new() })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> &VarId {
        &self.vars[i]
    }

    pub fn position(&self, id: &VarId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn position_of(&self, name: &str, level: u32) -> Option<usize> {
        self.position(&VarId::new(name, level))
    }

    /// A new table with `extra` appended after the existing variables.
    pub fn extended(&self, extra: &[VarId]) -> Result<Arc<VariableTable>> {
        let mut vars = self.vars.clone();
        vars.extend_from_slice(extra);
        VariableTable::new(vars)
    }

    /// A new table with `front` placed before the existing variables.
    pub fn prepended(&self, front: &[VarId]) -> Result<Arc<VariableTable>> {
        let mut vars = front.to_vec();
        vars.extend_from_slice(&self.vars);
        VariableTable::new(vars)
    }

    /// A fresh name (not valid in the input language) for auxiliary variables.
    pub fn fresh(&self, stem: &str) -> VarId {
        let mut k = 0;
        loop {
            let id = VarId::base(format!("_{stem}{k}"));
            if self.position(&id).is_none() {
                return id;
            }
            k += 1;
        }
    }
}

impl fmt::Display for VariableTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.vars.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", names.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unique_identifiers() {
        assert!(VariableTable::from_names(&["x", "x"]).is_err());
        let t = VariableTable::new(vec![VarId::base("x"), VarId::new("x", 1)]).unwrap();
        assert_eq!(t.to_string(), "x x(1)");
        assert_eq!(t.position_of("x", 1), Some(1));
    }

    #[test]
    fn fresh_avoids_collisions() {
        let t = VariableTable::new(vec![VarId::base("_u0")]).unwrap();
        assert_eq!(t.fresh("u"), VarId::base("_u1"));
    }
}
