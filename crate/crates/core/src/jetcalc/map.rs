use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::polyring::{same_table, Polynomial, Substitution};
use crate::tseries;

use super::point::JetPoint;
use super::presentation::{generic_series, prolong, AffinePresentation};

/// A morphism `X → Y` given by one polynomial in the variables of `X` per
/// variable of `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialMap {
    source: AffinePresentation,
    target: AffinePresentation,
    images: Vec<Polynomial>,
    validated: bool,
}

impl PolynomialMap {
    /// Builds the map without checking that it lands in `Y`.
    pub fn new(
        source: AffinePresentation,
        target: AffinePresentation,
        images: Vec<Polynomial>,
    ) -> Result<PolynomialMap> {
        if images.len() != target.nvars() {
            return Err(Error::InvalidMap(format!("{} images for {} target variables", images.len(), target.nvars())));
        }
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field().to_string(), target.field().to_string()));
        }
        for im in &images {
            if !same_table(im.table(), source.table()) {
                return Err(Error::TableMismatch);
            }
        }
        Ok(PolynomialMap { source, target, images, validated: false })
    }

    pub fn identity(p: &AffinePresentation) -> PolynomialMap {
        let images = (0..p.nvars()).map(|i| Polynomial::var(p.table(), p.field(), i)).collect();
        PolynomialMap { source: p.clone(), target: p.clone(), images, validated: true }
    }

    pub fn source(&self) -> &AffinePresentation {
        &self.source
    }

    pub fn target(&self) -> &AffinePresentation {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    fn pullback_sub(&self) -> Substitution {
        Substitution::total(self.source.table(), self.source.field(), self.images.clone())
    }

    /// Pulls a polynomial on the target back to the source.
    pub fn pullback(&self, g: &Polynomial) -> Result<Polynomial> {
        g.substitute(&self.pullback_sub())
    }

    /// Checks that every target generator pulls back into the source ideal.
    pub fn validate(&mut self, budget: &Budget) -> Result<()> {
        if self.validated {
            return Ok(());
        }
        let ideal = self.source.ideal();
        for (k, g) in self.target.generators().iter().enumerate() {
            let back = self.pullback(g)?;
            if !ideal.contains(&back, budget)? {
                return Err(Error::InvalidMap(format!("target generator {k} does not vanish on the source")));
            }
        }
        self.validated = true;
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PolynomialMap) -> Result<PolynomialMap> {
        if self.target.table() != other.source.table() {
            return Err(Error::TableMismatch);
        }
        let sub = self.pullback_sub();
        let images = other.images.iter().map(|im| im.substitute(&sub)).collect::<Result<Vec<_>>>()?;
        Ok(PolynomialMap {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
            validated: self.validated && other.validated,
        })
    }

    /// Image of a jet of the source.
    pub fn apply(&self, alpha: &JetPoint) -> Result<JetPoint> {
        let series = alpha.series();
        let out = self.images.iter().map(|im| tseries::evaluate(im, &series)).collect::<Result<Vec<_>>>()?;
        JetPoint::from_series(&out)
    }
}

/// `f_m: X_m → Y_m`. The image of `y_k(s)` is the `t^s` coefficient of
/// `φ_k` evaluated at the generic jet of the source.
pub fn prolong_map(map: &mut PolynomialMap, level: usize, budget: &Budget) -> Result<PolynomialMap> {
    map.validate(budget)?;
    let xs = prolong(&map.source, level)?;
    let ys = prolong(&map.target, level)?;
    let series = generic_series(map.source.table(), xs.table(), map.source.field(), level);
    let per_target = map
        .images
        .iter()
        .map(|im| tseries::evaluate(im, &series).map(|s| s.into_coeffs()))
        .collect::<Result<Vec<_>>>()?;
    let mut images = Vec::with_capacity(ys.table().len());
    for s in 0..=level {
        for coeffs in &per_target {
            images.push(coeffs[s].clone());
        }
    }
    Ok(PolynomialMap { source: xs.as_presentation(), target: ys.as_presentation(), images, validated: true })
}
