#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use jetforge::jetcalc::{jet_table, AffinePresentation};
use jetforge::polyring::{Field, Monomial, Polynomial, Scalar, Substitution, VarId, VariableTable};
use jetforge::text::parse_polynomial;
use proptest::prelude::*;

pub const Q: Field = Field::Rational;
pub const F5: Field = Field::Prime(5);

pub fn corpus_dir() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus"].iter().collect()
}

pub fn pres(names: &[&str], gens: &[&str], field: Field) -> AffinePresentation {
    let t = VariableTable::from_names(names).unwrap();
    let gens = gens.iter().map(|g| parse_polynomial(g, &t, field).unwrap());
    AffinePresentation::new(&t, field, gens).unwrap()
}

pub fn table(n: usize) -> Arc<VariableTable> {
    let names: Vec<String> = ["x", "y", "z", "w"].iter().take(n).map(|s| s.to_string()).collect();
    VariableTable::from_names(&names).unwrap()
}

pub fn scalar(field: Field, num: i64, den: i64) -> Scalar {
    match field {
        Field::Rational => Scalar::rational(num, den).unwrap(),
        Field::Prime(_) => field.from_i64(num),
    }
}

/// Random polynomials with up to `terms` terms of degree at most `deg`.
pub fn poly_strategy(
    table: Arc<VariableTable>,
    field: Field,
    terms: usize,
    deg: u32,
) -> impl Strategy<Value = Polynomial> {
    let n = table.len();
    prop::collection::vec((prop::collection::vec(0..=deg, n), -6i64..=6, 1i64..=4), 0..=terms).prop_map(move |raw| {
        let terms = raw.into_iter().map(|(e, a, b)| (Monomial::from_exponents(e), scalar(field, a, b)));
        Polynomial::from_terms(&table, field, terms).unwrap()
    })
}

pub fn scalar_strategy(field: Field) -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5).prop_map(move |(a, b)| scalar(field, a, b))
}

/// Prolongation computed in `K[x_j(l), t]`: substitute `x_j ↦ Σ x_j(l) t^l`,
/// expand fully, then keep the coefficient of each `t^s`, `s <= m`.
pub fn t_variable_prolong(f: &Polynomial, level: usize) -> Vec<Polynomial> {
    let base = f.table();
    let n = base.len();
    let field = f.field();
    let jets = jet_table(base, level).unwrap();
    let with_t = jets.extended(&[VarId::base("t__oracle")]).unwrap();
    let tpos = with_t.len() - 1;
    let images = (0..n)
        .map(|j| {
            let mut s = Polynomial::zero(&with_t, field);
            for l in 0..=level {
                let mut e = vec![0; with_t.len()];
                e[l * n + j] = 1;
                e[tpos] = l as u32;
                s = &s + &Polynomial::monomial(&with_t, Monomial::from_exponents(e), field.one());
            }
            s
        })
        .collect();
    let expanded = f.substitute(&Substitution::total(&with_t, field, images)).unwrap();
    let mut out = vec![Polynomial::zero(&jets, field); level + 1];
    for (m, c) in expanded.terms() {
        let s = m.exp(tpos) as usize;
        if s <= level {
            let e = m.exponents()[..tpos].to_vec();
            out[s] = &out[s] + &Polynomial::monomial(&jets, Monomial::from_exponents(e), c.clone());
        }
    }
    out
}
