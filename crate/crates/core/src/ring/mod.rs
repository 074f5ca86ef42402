//! Coefficient arithmetic, exponent vectors, monomial orders and
//! multivariate polynomials.

mod expvec;
mod field;
mod poly;

use std::fmt;
use std::sync::Arc;

pub use expvec::{ExpVec, MonomialOrder};
pub use field::{Coeff, Field};
pub use poly::{PolyOp, Polynomial};

use crate::error::{Error, Result};

/// A polynomial ring `k[x_1, ..., x_n]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(field: Field, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if vars.len() > 64 {
            return Err(Error::InvalidRing("at most 64 variables are supported".into()));
        }
        order.validate(vars.len())?;
        Ok(Arc::new(Ring { field, vars, order }))
    }

    /// Shorthand for tests and examples: rational coefficients, grevlex.
    pub fn qq(vars: &[&str]) -> Arc<Self> {
        Self::new(
            Field::Rational,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::GrevLex,
        )
        .expect("valid ring")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::new(self.field, self.vars.clone(), order)
    }

    /// A variable name not used by this ring, derived from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut name = stem.to_string();
        let mut k = 0;
        while self.vars.contains(&name) {
            k += 1;
            name = format!("{stem}{k}");
        }
        name
    }

    /// The ring with one extra variable in front, ordered so that the new
    /// variable is eliminated first.
    pub fn eliminating_front_var(&self, stem: &str) -> Arc<Self> {
        let mut vars = vec![self.fresh_name(stem)];
        vars.extend(self.vars.iter().cloned());
        let n = self.nvars();
        let order = if n == 0 {
            MonomialOrder::GrevLex
        } else {
            MonomialOrder::Elimination(vec![1, n])
        };
        Self::new(self.field, vars, order).expect("extended ring is valid")
    }

    /// The ring with one extra trailing variable, same order kind.
    pub fn with_back_var(&self, stem: &str) -> Arc<Self> {
        let mut vars = self.vars.clone();
        vars.push(self.fresh_name(stem));
        let order = match &self.order {
            MonomialOrder::Elimination(b) => {
                let mut b = b.clone();
                b.push(1);
                MonomialOrder::Elimination(b)
            }
            o => o.clone(),
        };
        Self::new(self.field, vars, order).expect("extended ring is valid")
    }

    /// Sub-ring on the listed variables (in that order), grevlex.
    pub fn restricted(&self, keep: &[usize]) -> Arc<Self> {
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        Self::new(self.field, vars, MonomialOrder::GrevLex).expect("restriction is valid")
    }

    pub(crate) fn same(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] order {}", self.field, self.vars.join(","), self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_variables_rejected() {
        let r = Ring::new(
            Field::Rational,
            vec!["x".into(), "x".into()],
            MonomialOrder::GrevLex,
        );
        assert!(matches!(r, Err(Error::InvalidRing(_))));
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let r = Ring::qq(&["t", "t1"]);
        assert_eq!(r.fresh_name("t"), "t2");
        let e = r.eliminating_front_var("t");
        assert_eq!(e.vars()[0], "t2");
        assert_eq!(e.order(), &MonomialOrder::Elimination(vec![1, 2]));
    }
}
