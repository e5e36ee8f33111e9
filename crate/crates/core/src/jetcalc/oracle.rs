use rand::Rng;

use crate::error::Result;
use crate::polyring::{Field, Scalar};
use crate::tseries::{self, TruncatedSeries};

use super::presentation::JetPresentation;

/// One disagreement between direct series evaluation and `F_i^(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub trial: usize,
    pub source: usize,
    pub weight: usize,
    pub direct: Scalar,
    pub prolonged: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub trials: usize,
    pub comparisons: usize,
    pub mismatches: Vec<Mismatch>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// A small random field element: `a/b` with `|a| <= 9`, `1 <= b <= 5`
/// over Q, a uniform residue over F_p.
pub fn random_scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rational => {
            let n = rng.gen_range(-9i64..=9);
            let d = rng.gen_range(1i64..=5);
            Scalar::rational(n, d).expect("nonzero denominator")
        }
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

/// Checks `prolong` independently: for random scalar jets `a_j(l)`,
/// evaluates each `f_i` on the scalar series directly and compares every
/// coefficient against `F_i^(s)(a)`.
pub fn numeric_oracle_check<R: Rng + ?Sized>(
    jets: &JetPresentation,
    trials: usize,
    rng: &mut R,
) -> Result<OracleReport> {
    let field = jets.field();
    let n = jets.nbase();
    let m = jets.level();
    let mut report = OracleReport { trials, comparisons: 0, mismatches: Vec::new() };
    for trial in 0..trials {
        // rows[l][j] = a_j(l), flattened in jet-table order.
        let flat: Vec<Scalar> = (0..n * (m + 1)).map(|_| random_scalar(field, rng)).collect();
        let series = (0..n)
            .map(|j| {
                let c: Vec<Scalar> = (0..=m).map(|l| flat[l * n + j].clone()).collect();
                TruncatedSeries::from_scalars(&c, field)
            })
            .collect::<Result<Vec<_>>>()?;
        for (i, f) in jets.source().generators().iter().enumerate() {
            let direct = tseries::evaluate(f, &series)?;
            for s in 0..=m {
                let g = jets.generator(i, s).expect("generator in range");
                let prolonged = g.poly.evaluate(&flat)?;
                let d = direct.coeff(s).constant_value().expect("scalar series");
                report.comparisons += 1;
                if d != prolonged {
                    report.mismatches.push(Mismatch { trial, source: i, weight: s, direct: d, prolonged });
                }
            }
        }
    }
    Ok(report)
}
