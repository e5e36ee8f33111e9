use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{same_table, Field, Polynomial, Scalar, Substitution, VariableTable};
use crate::tseries::TruncatedSeries;

use super::presentation::{AffinePresentation, JetPresentation};

/// An `m`-jet given by its coefficients `a_j(l)`.
///
/// Entries are polynomials over a parameter table: constants for concrete
/// jets, polynomials in free parameters for generic ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetPoint {
    /// `coords[l][j] = a_j(l)`.
    coords: Vec<Vec<Polynomial>>,
    params: Arc<VariableTable>,
    field: Field,
}

impl JetPoint {
    pub fn new(coords: Vec<Vec<Polynomial>>, params: &Arc<VariableTable>, field: Field) -> Result<JetPoint> {
        let n =
            coords.first().map(Vec::len).ok_or_else(|| Error::LevelMismatch("a jet needs at least level 0".into()))?;
        for row in &coords {
            if row.len() != n {
                return Err(Error::LevelMismatch("ragged jet coordinates".into()));
            }
            for a in row {
                if !same_table(a.table(), params) {
                    return Err(Error::TableMismatch);
                }
                if a.field() != field {
                    return Err(Error::FieldMismatch(field.to_string(), a.field().to_string()));
                }
            }
        }
        Ok(JetPoint { coords, params: params.clone(), field })
    }

    /// A concrete jet from scalar rows `values[l][j]`.
    pub fn from_scalars(values: &[Vec<Scalar>], field: Field) -> Result<JetPoint> {
        let params = VariableTable::empty();
        let coords =
            values.iter().map(|row| row.iter().map(|c| Polynomial::constant(&params, c.clone())).collect()).collect();
        JetPoint::new(coords, &params, field)
    }

    /// Reads a jet off per-coordinate series: `a_j(l)` is the `t^l`
    /// coefficient of `series[j]`.
    pub fn from_series(series: &[TruncatedSeries]) -> Result<JetPoint> {
        let first = series.first().ok_or_else(|| Error::LevelMismatch("a jet needs at least one coordinate".into()))?;
        let level = first.level();
        let mut coords = vec![Vec::with_capacity(series.len()); level + 1];
        for s in series {
            if s.level() != level {
                return Err(Error::LevelMismatch("coordinates at different levels".into()));
            }
            for (l, c) in s.coeffs().iter().enumerate() {
                coords[l].push(c.clone());
            }
        }
        JetPoint::new(coords, first.table(), first.field())
    }

    pub fn level(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn nbase(&self) -> usize {
        self.coords[0].len()
    }

    pub fn params(&self) -> &Arc<VariableTable> {
        &self.params
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `a_j(l)`.
    pub fn coord(&self, base: usize, level: usize) -> &Polynomial {
        &self.coords[level][base]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.coords
    }

    /// The series `a_j(0) + a_j(1) t + ...` of each coordinate.
    pub fn series(&self) -> Vec<TruncatedSeries> {
        (0..self.nbase())
            .map(|j| {
                let c = self.coords.iter().map(|row| row[j].clone()).collect();
                TruncatedSeries::new(c, &self.params, self.field).expect("validated coordinates")
            })
            .collect()
    }

    /// The flattened coordinates in jet-table order.
    pub fn flat(&self) -> Vec<Polynomial> {
        self.coords.iter().flatten().cloned().collect()
    }

    /// `π_m(α) = α(0)`.
    pub fn base_point(&self) -> Vec<Polynomial> {
        self.coords[0].clone()
    }

    /// Scalar coordinates of a concrete jet.
    pub fn scalar_rows(&self) -> Option<Vec<Vec<Scalar>>> {
        self.coords.iter().map(|row| row.iter().map(Polynomial::constant_value).collect()).collect()
    }

    /// `ψ_{m',m}`: drops the coefficients above `level`.
    pub fn truncate(&self, level: usize) -> Result<JetPoint> {
        if level >= self.coords.len() - 1 {
            return Err(Error::LevelMismatch(format!("truncation target {} must be below {}", level, self.level())));
        }
        Ok(JetPoint { coords: self.coords[..=level].to_vec(), params: self.params.clone(), field: self.field })
    }

    /// The `G_m` action `t ↦ s t`, extended to `s = 0`: `a_j(l) ↦ s^l a_j(l)`.
    pub fn gm_act(&self, s: &Scalar) -> Result<JetPoint> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), s.field().to_string()));
        }
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(l, row)| {
                let f = s.pow(l as u32);
                row.iter().map(|a| a.scale(&f)).collect()
            })
            .collect();
        Ok(JetPoint { coords, params: self.params.clone(), field: self.field })
    }

    /// Values of every jet generator at this jet, in generator order.
    pub fn residuals(&self, jets: &JetPresentation) -> Result<Vec<Polynomial>> {
        if jets.level() != self.level() || jets.nbase() != self.nbase() {
            return Err(Error::LevelMismatch(format!(
                "{}-jet with {} coordinates against X_{} in {} variables",
                self.level(),
                self.nbase(),
                jets.level(),
                jets.nbase()
            )));
        }
        let sub = Substitution::total(&self.params, self.field, self.flat());
        jets.generators().iter().map(|g| g.poly.substitute(&sub)).collect()
    }

    /// Whether every `F_i^(s)` vanishes identically at this jet.
    pub fn satisfies(&self, jets: &JetPresentation) -> Result<bool> {
        Ok(self.residuals(jets)?.iter().all(Polynomial::is_zero))
    }
}

/// The constant jet `σ_m(x)`: `a_j(0) = x_j`, all higher coefficients zero.
pub fn constant_jet(p: &AffinePresentation, point: &[Scalar], level: usize) -> Result<JetPoint> {
    p.check_point(point)?;
    let field = p.field();
    let mut rows = vec![point.to_vec()];
    rows.extend((0..level).map(|_| vec![field.zero(); point.len()]));
    JetPoint::from_scalars(&rows, field)
}
