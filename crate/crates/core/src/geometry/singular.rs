use itertools::Itertools;

use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::jetcalc::AffinePresentation;
use crate::polyring::Polynomial;

/// Above this many minors the singular locus is reported as a budget error.
const MAX_MINORS: usize = 20_000;

/// `(∂f_i/∂x_j)`, one row per generator.
pub fn jacobian(p: &AffinePresentation) -> Vec<Vec<Polynomial>> {
    p.generators().iter().map(|f| (0..p.nvars()).map(|j| f.derivative(j)).collect()).collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(rows: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Precondition("determinant of an empty matrix needs a table".into()));
    }
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Precondition("determinant of a non-square matrix".into()));
    }
    let table = rows[0][0].table().clone();
    let field = rows[0][0].field();
    let mut a = rows.to_vec();
    let mut negate = false;
    let mut prev = Polynomial::one(&table, field);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Polynomial::zero(&table, field)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].try_mul(&a[k][k])?.try_sub(&a[i][k].try_mul(&a[k][j])?)?;
                a[i][j] = num.div_exact(&prev)?.expect("Bareiss quotients are exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

/// The generators of `P` together with every `c × c` minor of the
/// Jacobian, `c = n - dim X` (the codimension is recomputed, not trusted).
///
/// This is the singular locus when the generators are radical and `X` is
/// equidimensional; otherwise it is the Jacobian ideal of the given
/// generators.
pub fn singular_locus(p: &AffinePresentation, budget: &Budget) -> Result<Ideal> {
    let ideal = p.ideal();
    if ideal.is_unit(budget)? {
        return Err(Error::UnitIdeal);
    }
    let n = p.nvars();
    let c = n - ideal.krull_dimension(budget)?;
    if c == 0 {
        return Ok(Ideal::unit(p.table(), p.field()));
    }
    let jac = jacobian(p);
    let r = jac.len();
    let count = binomial(r, c).saturating_mul(binomial(n, c));
    if count > MAX_MINORS {
        return Err(Error::Budget(format!("{count} Jacobian minors of size {c}")));
    }
    let mut gens = p.generators().to_vec();
    for rows in (0..r).combinations(c) {
        for cols in (0..n).combinations(c) {
            let sub: Vec<Vec<Polynomial>> =
                rows.iter().map(|&i| cols.iter().map(|&j| jac[i][j].clone()).collect()).collect();
            let d = determinant(&sub)?;
            if !d.is_zero() && !gens.contains(&d) {
                gens.push(d);
            }
        }
    }
    Ideal::new(p.table(), p.field(), gens)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}
