use std::cmp::Ordering;
use std::fmt;

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Term orders. Variable 0 of the table is the largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Weighted degree first, ties broken by graded reverse lex.
    Weighted(Vec<u32>),
}

impl MonomialOrder {
    /// Weighted order; the weight vector must cover every variable.
    pub fn weighted(weights: Vec<u32>, nvars: usize) -> Result<MonomialOrder> {
        if weights.len() != nvars {
            return Err(Error::Precondition(format!(
                "weight vector has {} entries for {} variables",
                weights.len(),
                nvars
            )));
        }
        Ok(MonomialOrder::Weighted(weights))
    }

    /// Block order that makes the first `k` variables larger than any
    /// monomial in the remaining ones (an elimination order for them).
    pub fn eliminating_first(k: usize, nvars: usize) -> MonomialOrder {
        MonomialOrder::Weighted((0..nvars).map(|i| u32::from(i < k)).collect())
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Weighted(w) => a.weight(w).cmp(&b.weight(w)).then_with(|| grevlex(a, b)),
        }
    }
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Weighted(w) => write!(f, "weighted{w:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn lex_first_variable_dominates() {
        assert_eq!(MonomialOrder::Lex.compare(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::GrevLex;
        // x*z^... standard: x^2 > x*y > y^2 > x*z > y*z > z^2 for x>y>z
        let chain = [m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        for w in chain.windows(2) {
            assert_eq!(o.compare(&w[0], &w[1]), Ordering::Greater);
        }
        assert_eq!(o.compare(&m(&[0, 0, 1]), &m(&[1, 1, 0])), Ordering::Less);
    }

    #[test]
    fn elimination_block() {
        let o = MonomialOrder::eliminating_first(1, 3);
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 7, 7])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }
}
