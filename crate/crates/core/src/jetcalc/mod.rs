//! Jet schemes of affine presentations: prolongation of equations and
//! morphisms, truncation, constant jets, products and the `G_m` action.

mod map;
mod oracle;
mod point;
mod presentation;

pub use map::{prolong_map, PolynomialMap};
pub use oracle::{numeric_oracle_check, random_scalar, Mismatch, OracleReport};
pub use point::{constant_jet, JetPoint};
pub use presentation::{
    generic_series, jet_table, product_presentation, prolong, rename_apart, AffinePresentation, JetGenerator,
    JetPresentation,
};

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::groebner::Budget;
    use crate::polyring::{Field, Polynomial, Scalar, VariableTable};
    use crate::text::{format_polynomial, parse_polynomial};

    const Q: Field = Field::Rational;

    fn pres(names: &[&str], gens: &[&str], field: Field) -> AffinePresentation {
        let t = VariableTable::from_names(names).unwrap();
        let gens = gens.iter().map(|g| parse_polynomial(g, &t, field).unwrap());
        AffinePresentation::new(&t, field, gens).unwrap()
    }

    fn spelled(j: &JetPresentation) -> Vec<String> {
        j.generators().iter().map(|g| format_polynomial(&g.poly)).collect()
    }

    fn q(n: i64) -> Scalar {
        Q.from_i64(n)
    }

    #[test]
    fn affine_space_jets() {
        for n in 1..=3 {
            let names: Vec<String> = (0..n).map(|k| format!("x{k}")).collect();
            let p = AffinePresentation::affine_space(&names, Q).unwrap();
            for m in 0..=5 {
                let j = prolong(&p, m).unwrap();
                assert_eq!(j.table().len(), n * (m + 1));
                assert_eq!(j.nonzero_generators().count(), 0);
            }
        }
    }

    #[test]
    fn cone_second_jets() {
        let p = pres(&["x", "y", "z"], &["x*y + z^2"], Q);
        let j = prolong(&p, 2).unwrap();
        assert_eq!(j.table().len(), 9);
        let t = j.table();
        let want = ["x*y + z^2", "x(1)*y + x*y(1) + 2*z*z(1)", "x(2)*y + x(1)*y(1) + x*y(2) + z(1)*z(1) + 2*z*z(2)"];
        for (g, w) in j.generators().iter().zip(want) {
            assert_eq!(g.poly, parse_polynomial(w, t, Q).unwrap());
        }
        assert!(j.is_isobaric());
        assert_eq!(spelled(&j)[1], "x(1)*y + x*y(1) + 2*z*z(1)");
    }

    #[test]
    fn level_zero_is_the_source() {
        let p = pres(&["x", "y"], &["x^2 - y^2 - x^3", "x*y - 1"], Q);
        let j = prolong(&p, 0).unwrap();
        let gens: Vec<Polynomial> = j.generators().iter().map(|g| g.poly.clone()).collect();
        assert_eq!(gens, p.generators());
        assert!(!j.truncate(0).unwrap_err().to_string().is_empty());
    }

    #[test]
    fn nodal_first_jets() {
        let p = pres(&["x", "y"], &["x^2 - y^2 - x^3"], Q);
        let j = prolong(&p, 1).unwrap();
        let want = parse_polynomial("2*x*x(1) - 2*y*y(1) - 3*x^2*x(1)", j.table(), Q).unwrap();
        assert_eq!(j.generator(0, 1).unwrap().poly, want);
        assert_eq!(j.generator(0, 0).unwrap().poly.relabel(p.table()).unwrap(), p.generators()[0]);
    }

    #[test]
    fn truncation_is_restriction() {
        let p = pres(&["x", "y", "z"], &["x*y + z^2"], Q);
        let j2 = prolong(&p, 2).unwrap();
        assert_eq!(j2.truncate(1).unwrap(), prolong(&p, 1).unwrap());
        assert_eq!(spelled(&j2.truncate(1).unwrap()), ["x*y + z^2", "x(1)*y + x*y(1) + 2*z*z(1)"]);
        assert_eq!(j2.truncate(0).unwrap(), prolong(&p, 0).unwrap());
        assert!(j2.truncate(2).is_err());
        assert!(j2.truncate(5).is_err());
    }

    #[test]
    fn constant_jets() {
        let cone = pres(&["x", "y", "z"], &["x*y + z^2"], Q);
        let jet = constant_jet(&cone, &[q(1), q(0), q(0)], 2).unwrap();
        let flat: Vec<Scalar> = jet.flat().iter().map(|a| a.constant_value().unwrap()).collect();
        assert_eq!(flat, [1, 0, 0, 0, 0, 0, 0, 0, 0].map(q));
        assert!(jet.satisfies(&prolong(&cone, 2).unwrap()).unwrap());
        assert_eq!(jet.truncate(1).unwrap(), constant_jet(&cone, &[q(1), q(0), q(0)], 1).unwrap());
        assert!(constant_jet(&cone, &[q(1), q(1), q(0)], 2).is_err());

        let nodal = pres(&["x", "y"], &["x^2 - y^2 - x^3"], Q);
        let origin = constant_jet(&nodal, &[q(0), q(0)], 3).unwrap();
        assert!(origin.flat().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn gm_action() {
        let nodal = pres(&["x", "y"], &["x^2 - y^2 - x^3"], Q);
        let j1 = prolong(&nodal, 1).unwrap();
        // (1,0) with tangent (0,1) lies on X_1.
        let alpha = JetPoint::from_scalars(&[vec![q(1), q(0)], vec![q(0), q(1)]], Q).unwrap();
        assert!(alpha.satisfies(&j1).unwrap());
        assert_eq!(alpha.gm_act(&q(1)).unwrap(), alpha);
        let doubled = alpha.gm_act(&q(2)).unwrap();
        assert!(doubled.satisfies(&j1).unwrap());
        assert_eq!(doubled.coord(1, 1).constant_value(), Some(q(2)));
        let flat = alpha.gm_act(&q(0)).unwrap();
        assert_eq!(flat, constant_jet(&nodal, &[q(1), q(0)], 1).unwrap());
    }

    #[test]
    fn map_prolongation() {
        let line = AffinePresentation::affine_space(&["x"], Q).unwrap();
        let target = AffinePresentation::affine_space(&["y"], Q).unwrap();
        let sq = parse_polynomial("x^2", line.table(), Q).unwrap();
        let mut phi = PolynomialMap::new(line.clone(), target, vec![sq]).unwrap();
        let phi1 = prolong_map(&mut phi, 1, &Budget::default()).unwrap();
        let xt = phi1.source().table();
        assert_eq!(phi1.images()[0], parse_polynomial("x^2", xt, Q).unwrap());
        assert_eq!(phi1.images()[1], parse_polynomial("2*x*x(1)", xt, Q).unwrap());

        let mut id = PolynomialMap::identity(&line);
        let id2 = prolong_map(&mut id, 2, &Budget::default()).unwrap();
        assert_eq!(id2, PolynomialMap::identity(&prolong(&line, 2).unwrap().as_presentation()));
    }

    #[test]
    fn invalid_map_is_rejected() {
        let line = AffinePresentation::affine_space(&["x"], Q).unwrap();
        let parabola = pres(&["u", "v"], &["v - u^2"], Q);
        let t = line.table();
        let images = vec![parse_polynomial("x", t, Q).unwrap(), parse_polynomial("x^3", t, Q).unwrap()];
        let mut bad = PolynomialMap::new(line.clone(), parabola.clone(), images).unwrap();
        assert!(prolong_map(&mut bad, 1, &Budget::default()).is_err());
        let images = vec![parse_polynomial("x", t, Q).unwrap(), parse_polynomial("x^2", t, Q).unwrap()];
        let mut good = PolynomialMap::new(line, parabola, images).unwrap();
        let g1 = prolong_map(&mut good, 1, &Budget::default()).unwrap();
        let alpha = JetPoint::from_scalars(&[vec![q(3)], vec![q(5)]], Q).unwrap();
        let image = g1.source();
        assert_eq!(image.nvars(), 2);
        let out = good.apply(&alpha).unwrap();
        assert!(out.satisfies(&prolong(&good.target().clone(), 1).unwrap()).unwrap());
        assert_eq!(out.coord(1, 1).constant_value(), Some(q(30)));
    }

    #[test]
    fn products() {
        let cone = pres(&["x", "y", "z"], &["x*y + z^2"], Q);
        let cusp = pres(&["u", "v"], &["u^2 - v^3"], Q);
        let prod = product_presentation(&cone, &cusp).unwrap();
        assert_eq!(prod.nvars(), 5);
        assert_eq!(prod.generators().len(), 2);
        let pj = prolong(&prod, 1).unwrap();
        let mut want: Vec<String> = spelled(&prolong(&cone, 1).unwrap());
        want.extend(spelled(&prolong(&cusp, 1).unwrap()));
        let mut got = spelled(&pj);
        want.sort();
        got.sort();
        assert_eq!(got, want);

        let renamed = product_presentation(&cusp, &cusp).unwrap();
        let names: Vec<String> = renamed.table().vars().iter().map(|v| v.name.clone()).collect();
        assert_eq!(names, ["u", "v", "u_2", "v_2"]);
    }

    #[test]
    fn oracle_detects_corruption() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cone = pres(&["x", "y", "z"], &["x*y + z^2"], Q);
        let j = prolong(&cone, 2).unwrap();
        let report = numeric_oracle_check(&j, 100, &mut rng).unwrap();
        assert!(report.passed());
        assert_eq!(report.comparisons, 300);

        let mut gens = j.generators().to_vec();
        gens[2].poly = &gens[2].poly + &Polynomial::var(j.table(), Q, 8);
        let corrupted = JetPresentation::from_parts(cone, 2, gens).unwrap();
        let report = numeric_oracle_check(&corrupted, 20, &mut rng).unwrap();
        assert!(!report.passed());
        assert!(report.mismatches.iter().all(|m| m.weight == 2));

        let plane = AffinePresentation::affine_space(&["x", "y"], Q).unwrap();
        let report = numeric_oracle_check(&prolong(&plane, 3).unwrap(), 10, &mut rng).unwrap();
        assert!(report.passed() && report.comparisons == 0);
    }
}
