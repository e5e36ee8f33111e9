use std::sync::Arc;

use crate::error::Result;
use crate::groebner::Ideal;
use crate::jetcalc::JetPresentation;
use crate::polyring::{Polynomial, Scalar, Substitution, VariableTable};

/// The variables `x_j(l)` with `l >= 1`.
pub fn higher_table(jets: &JetPresentation) -> Result<Arc<VariableTable>> {
    VariableTable::new(jets.table().vars()[jets.nbase()..].to_vec())
}

/// `π_m^{-1}(x)` as an ideal in the `n·m` higher jet variables: every
/// `F_i^(s)` with `x_j(0) = x_j` substituted.
pub fn fiber_ideal(jets: &JetPresentation, point: &[Scalar]) -> Result<Ideal> {
    jets.source().check_point(point)?;
    let field = jets.field();
    let n = jets.nbase();
    let target = higher_table(jets)?;
    let images: Vec<Polynomial> = (0..jets.table().len())
        .map(|k| {
            if k < n {
                Polynomial::constant(&target, point[k].clone())
            } else {
                Polynomial::var(&target, field, k - n)
            }
        })
        .collect();
    let sub = Substitution::total(&target, field, images);
    let gens = jets.nonzero_generators().map(|g| g.substitute(&sub)).collect::<Result<Vec<_>>>()?;
    Ideal::new(&target, field, gens)
}

/// The same fiber as a closed subset of `X_m`: the jet ideal plus
/// `x_j(0) - x_j`.
pub fn fiber_locus(jets: &JetPresentation, point: &[Scalar]) -> Result<Ideal> {
    jets.source().check_point(point)?;
    let table = jets.table();
    let field = jets.field();
    let mut gens: Vec<Polynomial> = jets.nonzero_generators().cloned().collect();
    for (j, a) in point.iter().enumerate() {
        gens.push(&Polynomial::var(table, field, j) - &Polynomial::constant(table, a.clone()));
    }
    Ideal::new(table, field, gens)
}
