//! The truncated power-series ring `A[t]/(t^(m+1))` with polynomial
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{same_table, Field, Monomial, Polynomial, Scalar, VariableTable};

/// `c_0 + c_1 t + ... + c_m t^m`, always with exactly `m + 1` slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Polynomial>,
    table: Arc<VariableTable>,
    field: Field,
}

/// Order of vanishing of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOrder {
    Exact(usize),
    /// Every stored coefficient vanishes; the true order is at least this.
    AtLeast(usize),
}

impl fmt::Display for SeriesOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesOrder::Exact(s) => write!(f, "{s}"),
            SeriesOrder::AtLeast(s) => write!(f, ">= {s}"),
        }
    }
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Polynomial>, table: &Arc<VariableTable>, field: Field) -> Result<TruncatedSeries> {
        if coeffs.is_empty() {
            return Err(Error::LevelMismatch("a series needs at least one slot".into()));
        }
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
            }
            if !same_table(c.table(), table) {
                return Err(Error::TableMismatch);
            }
        }
        Ok(TruncatedSeries { coeffs, table: table.clone(), field })
    }

    pub fn zero(level: usize, table: &Arc<VariableTable>, field: Field) -> TruncatedSeries {
        TruncatedSeries { coeffs: vec![Polynomial::zero(table, field); level + 1], table: table.clone(), field }
    }

    /// The constant series `p`.
    pub fn constant(level: usize, p: Polynomial) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(level, &p.table().clone(), p.field());
        s.coeffs[0] = p;
        s
    }

    /// Series with scalar coefficients over the empty table.
    pub fn from_scalars(values: &[Scalar], field: Field) -> Result<TruncatedSeries> {
        let table = VariableTable::empty();
        let coeffs = values.iter().map(|v| Polynomial::constant(&table, v.clone())).collect();
        TruncatedSeries::new(coeffs, &table, field)
    }

    pub fn level(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, s: usize) -> &Polynomial {
        &self.coeffs[s]
    }

    pub fn into_coeffs(self) -> Vec<Polynomial> {
        self.coeffs
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    fn check(&self, other: &TruncatedSeries) -> Result<()> {
        if self.level() != other.level() {
            return Err(Error::LevelMismatch(format!("series at levels {} and {}", self.level(), other.level())));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(self.with_coeffs(coeffs))
    }

    /// Convolution product, discarding every power above `t^m`.
    pub fn try_mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn with_coeffs(&self, coeffs: Vec<Polynomial>) -> TruncatedSeries {
        TruncatedSeries { coeffs, table: self.table.clone(), field: self.field }
    }

    fn add_unchecked(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        self.with_coeffs(coeffs)
    }

    fn mul_unchecked(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let m = self.level();
        let mut out = vec![Polynomial::zero(&self.table, self.field); m + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=m - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        self.with_coeffs(out)
    }

    pub fn scale(&self, p: &Polynomial) -> Result<TruncatedSeries> {
        if !same_table(p.table(), &self.table) {
            return Err(Error::TableMismatch);
        }
        Ok(self.with_coeffs(self.coeffs.iter().map(|c| c * p).collect()))
    }

    /// Drops the coefficients above `t^level`.
    pub fn truncate(&self, level: usize) -> Result<TruncatedSeries> {
        if level > self.level() {
            return Err(Error::LevelMismatch(format!("cannot truncate level {} to {}", self.level(), level)));
        }
        Ok(self.with_coeffs(self.coeffs[..=level].to_vec()))
    }

    /// Index of the first nonzero coefficient.
    pub fn order(&self) -> SeriesOrder {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(s) => SeriesOrder::Exact(s),
            None => SeriesOrder::AtLeast(self.coeffs.len()),
        }
    }
}

/// Evaluates `f` (over its own table of base variables) at one series per
/// base variable. The `t^s` coefficient of the result is the polynomial
/// obtained by expanding `f` and collecting powers of `t`.
///
/// Evaluation is Horner-style per variable with a cache of image powers.
pub fn evaluate(f: &Polynomial, images: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    let first = images.first().ok_or_else(|| Error::MissingImage("every variable".into()))?;
    if images.len() != f.table().len() {
        let missing = f.table().vars().get(images.len()).map(|v| v.to_string());
        return Err(Error::MissingImage(missing.unwrap_or_else(|| "?".into())));
    }
    for s in images {
        first.check(s)?;
    }
    if f.field() != first.field {
        return Err(Error::FieldMismatch(f.field().to_string(), first.field.to_string()));
    }
    let terms: Vec<(&Monomial, &Scalar)> = f.terms().collect();
    let mut cache = PowerCache { images, powers: vec![Vec::new(); images.len()] };
    Ok(horner(&terms, 0, &mut cache, first))
}

struct PowerCache<'a> {
    images: &'a [TruncatedSeries],
    powers: Vec<Vec<TruncatedSeries>>,
}

impl PowerCache<'_> {
    /// `images[var]^k` for k >= 1.
    fn power(&mut self, var: usize, k: u32) -> TruncatedSeries {
        let slot = &mut self.powers[var];
        if slot.is_empty() {
            slot.push(self.images[var].clone());
        }
        while slot.len() < k as usize {
            let next = slot.last().unwrap().mul_unchecked(&self.images[var]);
            slot.push(next);
        }
        slot[k as usize - 1].clone()
    }
}

fn horner(
    terms: &[(&Monomial, &Scalar)],
    var: usize,
    cache: &mut PowerCache<'_>,
    shape: &TruncatedSeries,
) -> TruncatedSeries {
    let level = shape.level();
    if terms.is_empty() {
        return TruncatedSeries::zero(level, &shape.table, shape.field);
    }
    let nvars = terms[0].0.len();
    let mut v = var;
    while v < nvars && terms.iter().all(|(m, _)| m.exp(v) == 0) {
        v += 1;
    }
    if v == nvars {
        let mut c = shape.field.zero();
        for (_, a) in terms {
            c = &c + a;
        }
        return TruncatedSeries::constant(level, Polynomial::constant(&shape.table, c));
    }
    let mut by_power: BTreeMap<u32, Vec<(&Monomial, &Scalar)>> = BTreeMap::new();
    for &(m, c) in terms {
        by_power.entry(m.exp(v)).or_default().push((m, c));
    }
    let mut e = *by_power.keys().next_back().unwrap();
    let mut acc = TruncatedSeries::zero(level, &shape.table, shape.field);
    loop {
        if let Some(group) = by_power.get(&e) {
            acc = acc.add_unchecked(&horner(group, v + 1, cache, shape));
        }
        if e == 0 {
            break;
        }
        let next = by_power.range(..e).next_back().map(|(k, _)| *k).unwrap_or(0);
        acc = acc.mul_unchecked(&cache.power(v, e - next));
        e = next;
    }
    acc
}
