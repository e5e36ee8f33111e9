use std::cmp::Ordering;

use crate::polyring::{Monomial, MonomialOrder, Polynomial};

/// `g = Σ_e c_e v^e`, returned as `[c_0, c_1, ...]` with `v` removed.
pub fn coefficients_in(g: &Polynomial, v: usize) -> Vec<Polynomial> {
    let deg = g.degree_in(v) as usize;
    let mut out = vec![Polynomial::zero(g.table(), g.field()); deg + 1];
    for (m, c) in g.terms() {
        let mut exps = m.exponents().to_vec();
        let e = exps[v] as usize;
        exps[v] = 0;
        let term = Polynomial::monomial(g.table(), Monomial::from_exponents(exps), c.clone());
        out[e] = &out[e] + &term;
    }
    out
}

/// Exact square root, if `d` is a perfect square. Needs characteristic
/// other than 2.
pub fn polynomial_sqrt(d: &Polynomial) -> Option<Polynomial> {
    if d.is_zero() {
        return Some(d.clone());
    }
    let order = MonomialOrder::GrevLex;
    let (lm, lc) = d.leading_term(&order)?;
    if lm.exponents().iter().any(|e| e % 2 == 1) {
        return None;
    }
    let half = Monomial::from_exponents(lm.exponents().iter().map(|e| e / 2).collect());
    let c = lc.sqrt()?;
    let two_c = c.mul_int(2).inverse().ok()?;
    let mut root = Polynomial::monomial(d.table(), half.clone(), c);
    for _ in 0..=d.num_terms() {
        let rem = d - &(&root * &root);
        let Some((rm, rc)) = rem.leading_term(&order) else {
            return Some(root);
        };
        if !half.divides(rm) {
            return None;
        }
        let q = half.quotient_of(rm);
        if order.compare(&q, &half) != Ordering::Less {
            return None;
        }
        let coeff = rc * &two_c;
        root = &root + &Polynomial::monomial(d.table(), q, coeff);
    }
    None
}

/// A sufficient test for irreducibility over the coefficient field.
/// `true` is a certificate; `false` only means no certificate was found.
///
/// Certified shapes: total degree one; `a v + b` with `gcd(a, b)`
/// provably constant; `c v^2 + b v + a` with constant `c` and a
/// discriminant that is not a square.
pub fn certify_irreducible(g: &Polynomial) -> bool {
    match g.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        _ => {}
    }
    let odd = g.field().characteristic() != 2;
    for v in g.variables() {
        let cs = coefficients_in(g, v);
        match cs.len() - 1 {
            1 if !cs[0].is_zero() && coprime_certified(&cs[1], &cs[0]) => return true,
            2 if odd && cs[2].is_constant() => {
                let disc = &(&cs[1] * &cs[1]) - &(&cs[2] * &cs[0]).scale(&g.field().from_i64(4));
                if polynomial_sqrt(&disc).is_none() {
                    return true;
                }
            }
            _ => {}
        }
    }
    false
}

/// `gcd(a, b)` provably constant. `a` is split as monomial content times a
/// cofactor; each variable of the content must miss some term of `b`, and
/// the cofactor must be constant or a certified irreducible not dividing `b`.
fn coprime_certified(a: &Polynomial, b: &Polynomial) -> bool {
    if a.is_zero() {
        return false;
    }
    let mut monos = a.terms().map(|(m, _)| m.clone());
    let first = monos.next().expect("nonzero");
    let content = monos.fold(first, |acc, m| acc.gcd(&m));
    if !content.support().all(|u| b.terms().any(|(bm, _)| bm.exp(u) == 0)) {
        return false;
    }
    let cofactor = a
        .div_exact(&Polynomial::monomial(a.table(), content, a.field().one()))
        .ok()
        .flatten()
        .expect("content divides");
    cofactor.is_constant() || (certify_irreducible(&cofactor) && matches!(b.div_exact(&cofactor), Ok(None)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Field, VariableTable};
    use crate::text::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        let t = VariableTable::from_names(&["x", "y", "z"]).unwrap();
        parse_polynomial(s, &t, Field::Rational).unwrap()
    }

    #[test]
    fn square_roots() {
        assert_eq!(polynomial_sqrt(&p("x^2 + 2*x*y + y^2")), Some(p("x + y")));
        assert_eq!(polynomial_sqrt(&p("4*x^2 - 12*x*z + 9*z^2")).map(|r| &r * &r), Some(p("4*x^2 - 12*x*z + 9*z^2")));
        assert_eq!(polynomial_sqrt(&p("x^2 + y^2")), None);
        assert_eq!(polynomial_sqrt(&p("2*x^2")), None);
    }

    #[test]
    fn certificates() {
        assert!(certify_irreducible(&p("x*y + z^2")));
        assert!(certify_irreducible(&p("x^2 + y^2 - 1")));
        assert!(certify_irreducible(&p("x")));
        assert!(!certify_irreducible(&p("x^2 - y^2")));
        assert!(!certify_irreducible(&p("x*y")));
        assert!(!certify_irreducible(&p("x*y + x*z")));
        assert!(!certify_irreducible(&p("3")));
    }
}
