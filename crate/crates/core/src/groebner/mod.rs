//! Exact Groebner bases (Buchberger with Gebauer-Moeller pair pruning)
//! and the ideal operations built on them.

mod buchberger;
mod ideal;
mod ops;

pub use ideal::{Budget, GroebnerBasis, Ideal};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::error::Error;
    use crate::polyring::{Field, MonomialOrder, Polynomial, VariableTable};

    const Q: Field = Field::Rational;

    fn ring(names: &[&str]) -> (Arc<VariableTable>, Vec<Polynomial>) {
        let t = VariableTable::from_names(names).unwrap();
        let vars = (0..names.len()).map(|i| Polynomial::var(&t, Q, i)).collect();
        (t, vars)
    }

    fn ideal(t: &Arc<VariableTable>, gens: Vec<Polynomial>) -> Ideal {
        Ideal::new(t, Q, gens).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn linear_basis() {
        let (t, v) = ring(&["x", "y"]);
        let (x, y) = (&v[0], &v[1]);
        let i = ideal(&t, vec![x.clone(), x + y]);
        let gb = i.groebner_basis(&MonomialOrder::Lex, &b()).unwrap();
        assert_eq!(gb.polys(), &[y.clone(), x.clone()]);
    }

    #[test]
    fn s_polynomial_appears() {
        let (t, v) = ring(&["x", "y"]);
        let (x, y) = (&v[0], &v[1]);
        let i = ideal(&t, vec![&x.pow(2) + &y.pow(2), x * y]);
        let gb = i.groebner_basis(&MonomialOrder::Lex, &b()).unwrap();
        assert!(gb.polys().contains(&y.pow(3)));
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        let (t, _) = ring(&["x"]);
        let i = ideal(&t, vec![Polynomial::zero(&t, Q)]);
        assert!(i.basis(&b()).unwrap().is_empty());
    }

    #[test]
    fn reductions() {
        let (t, v) = ring(&["x", "y"]);
        let (x, y) = (&v[0], &v[1]);
        let i = ideal(&t, vec![x.clone(), y.clone()]);
        assert!(i.reduce(&(x + y), &MonomialOrder::GrevLex, &b()).unwrap().is_zero());
        let j = ideal(&t, vec![&x.pow(2) - y]);
        assert_eq!(j.reduce(&x.pow(2), &MonomialOrder::GrevLex, &b()).unwrap(), y.clone());
    }

    #[test]
    fn membership() {
        let (t, v) = ring(&["x", "y"]);
        let (x, y) = (&v[0], &v[1]);
        let i = ideal(&t, vec![x.pow(2), x * y]);
        assert!(!i.contains(x, &b()).unwrap());
        assert!(i.contains(&x.pow(2), &b()).unwrap());
        assert!(i.contains(&Polynomial::zero(&t, Q), &b()).unwrap());
    }

    #[test]
    fn elimination() {
        let (t, v) = ring(&["x", "y"]);
        let (x, y) = (&v[0], &v[1]);
        let parabola = ideal(&t, vec![y - &x.pow(2)]);
        assert!(parabola.eliminate(&[1], &b()).unwrap().basis(&b()).unwrap().is_empty());
        assert!(ideal(&t, vec![x.clone()]).eliminate(&[1], &b()).unwrap().is_zero());

        let (t, v) = ring(&["t", "x", "y"]);
        let (s, x, y) = (&v[0], &v[1], &v[2]);
        let curve = ideal(&t, vec![x - s, y - &s.pow(2)]);
        let implicit = curve.eliminate(&[1, 2], &b()).unwrap();
        let xy = VariableTable::from_names(&["x", "y"]).unwrap();
        let expected = (y - &x.pow(2)).relabel(&xy).unwrap();
        assert_eq!(implicit.basis(&b()).unwrap().polys(), &[expected.primitive(&MonomialOrder::GrevLex)]);
    }

    #[test]
    fn colon_and_saturation() {
        let (t, v) = ring(&["x", "y"]);
        let (x, y) = (&v[0], &v[1]);
        let c = ideal(&t, vec![x * y]).colon(x, &b()).unwrap();
        assert_eq!(c.basis(&b()).unwrap().polys(), std::slice::from_ref(y));

        // (x^2, xy) = (x) ∩ (x^2, y): every component lies in V(x), so the
        // saturation is the unit ideal.
        let i = ideal(&t, vec![x.pow(2), x * y]);
        let s = i.saturate(&ideal(&t, vec![x.clone()]), &b()).unwrap();
        assert!(s.is_unit(&b()).unwrap());
        // One colon step gives (x, y), a second gives (1).
        let once = i.colon(x, &b()).unwrap();
        assert!(once.same_ideal(&ideal(&t, vec![x.clone(), y.clone()]), &b()).unwrap());

        let unit = Ideal::unit(&t, Q);
        assert!(i.saturate(&unit, &b()).unwrap().same_ideal(&i, &b()).unwrap());
        assert!(i.colon(&Polynomial::zero(&t, Q), &b()).is_err());
    }

    #[test]
    fn dimension() {
        let (t, v) = ring(&["x", "y", "z"]);
        assert_eq!(Ideal::zero(&t, Q).krull_dimension(&b()).unwrap(), 3);
        let line = ideal(&t, vec![v[0].clone(), v[1].clone()]);
        assert_eq!(line.krull_dimension(&b()).unwrap(), 1);
        let surface = ideal(&t, vec![&(&v[0] * &v[1]) + &v[2].pow(2)]);
        assert_eq!(surface.krull_dimension(&b()).unwrap(), 2);
        assert_eq!(Ideal::unit(&t, Q).krull_dimension(&b()), Err(Error::UnitIdeal));
    }

    #[test]
    fn radical_membership() {
        let (t, v) = ring(&["x", "y"]);
        let i = ideal(&t, vec![v[0].pow(3), v[1].pow(2)]);
        assert!(i.radical_contains(&v[0], &b()).unwrap());
        assert!(!i.radical_contains(&(&v[0] + &Polynomial::one(&t, Q)), &b()).unwrap());
        assert_eq!(i.power_membership(&v[0], 4, &b()).unwrap(), Some(3));
        assert_eq!(i.power_membership(&v[0], 2, &b()).unwrap(), None);
    }

    #[test]
    fn budget_is_reported() {
        let (t, v) = ring(&["x", "y", "z"]);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let cyclic = vec![&(x + y) + z, &(&(x * y) + &(y * z)) + &(z * x), &(&(x * y) * z) - &Polynomial::one(&t, Q)];
        let i = ideal(&t, cyclic);
        let narrow = Budget { max_pairs: 100, max_basis: 2 };
        assert!(i.basis(&narrow).unwrap_err().is_budget());
        let j = ideal(&t, vec![&x.pow(2) + &y.pow(2), x * y]);
        let no_pairs = Budget { max_pairs: 0, max_basis: 100 };
        assert!(j.basis(&no_pairs).unwrap_err().is_budget());
    }
}
