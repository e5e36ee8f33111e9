use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::jetcalc::{prolong, AffinePresentation, JetPoint};
use crate::polyring::{Monomial, Polynomial, Substitution, VarId, VariableTable};
use crate::tseries;

/// A polynomial arc: one polynomial in a single parameter `t` per
/// coordinate of `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcPolynomial {
    images: Vec<Polynomial>,
}

impl ArcPolynomial {
    /// Validates that every generator of `p` vanishes identically in `t`.
    pub fn new(p: &AffinePresentation, images: Vec<Polynomial>) -> Result<ArcPolynomial> {
        if images.len() != p.nvars() {
            return Err(Error::InvalidArc(format!("{} images for {} coordinates", images.len(), p.nvars())));
        }
        let t = images[0].table().clone();
        if t.len() != 1 || images.iter().any(|im| im.table() != &t) {
            return Err(Error::InvalidArc("images must share a one-variable table".into()));
        }
        let sub = Substitution::total(&t, p.field(), images.clone());
        for (k, f) in p.generators().iter().enumerate() {
            if !f.substitute(&sub)?.is_zero() {
                return Err(Error::InvalidArc(format!("generator {k} does not vanish along the arc")));
            }
        }
        Ok(ArcPolynomial { images })
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// The `m`-jet `ψ_m(α)`.
    pub fn jet(&self, level: usize) -> Result<JetPoint> {
        let field = self.images[0].field();
        let rows = (0..=level)
            .map(|l| {
                self.images
                    .iter()
                    .map(|im| {
                        let m = Monomial::var(1, 0, l as u32);
                        im.coefficient(&m)
                    })
                    .collect()
            })
            .collect::<Vec<Vec<_>>>();
        JetPoint::from_scalars(&rows, field)
    }
}

/// Kernel of `α^*` and the fatness verdict.
#[derive(Debug, Clone)]
pub struct ArcKernel {
    /// `ker(k[x] → k[t])`, over the base table.
    pub kernel: Ideal,
    /// The kernel equals the ideal of `X`.
    pub fat: bool,
}

/// Computes `ker α^*` by eliminating `t` from `(x_j - α_j(t))`.
pub fn arc_kernel(p: &AffinePresentation, arc: &ArcPolynomial, budget: &Budget) -> Result<ArcKernel> {
    let field = p.field();
    let tvar = p.table().fresh("t");
    let table = p.table().prepended(&[tvar])?;
    let t_images = vec![Polynomial::var(&table, field, 0)];
    let sub = Substitution::total(&table, field, t_images);
    let gens = arc
        .images
        .iter()
        .enumerate()
        .map(|(j, im)| Ok(&Polynomial::var(&table, field, j + 1) - &im.substitute(&sub)?))
        .collect::<Result<Vec<_>>>()?;
    let keep: Vec<usize> = (1..table.len()).collect();
    let kernel = Ideal::new(&table, field, gens)?.eliminate(&keep, budget)?.relabel(p.table())?;
    let fat = p.ideal().contains_ideal(&kernel, budget)?;
    Ok(ArcKernel { kernel, fat })
}

/// Whether `α^*(g) ≡ 0 mod t^(level+1)` for every generator `g` of `z`:
/// necessary, not sufficient, for the arc to factor through `V(z)`.
pub fn is_thin_at_level(alpha: &JetPoint, z: &Ideal, level: usize) -> Result<bool> {
    if level > alpha.level() {
        return Err(Error::LevelMismatch(format!("level {level} exceeds the prefix level {}", alpha.level())));
    }
    if z.table().len() != alpha.nbase() {
        return Err(Error::TableMismatch);
    }
    let series: Vec<_> = alpha
        .series()
        .iter()
        .map(|s| if level < s.level() { s.truncate(level) } else { Ok(s.clone()) })
        .collect::<Result<_>>()?;
    for g in z.generators() {
        if tseries::evaluate(g, &series)?.coeffs().iter().any(|c| !c.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A concrete `m`-jet extended by free parameters `x_j(l)`,
/// `m < l <= m + depth`, together with the equations those parameters
/// must satisfy for the extension to stay on `X`.
#[derive(Debug, Clone)]
pub struct ExtendedJet {
    pub params: Arc<VariableTable>,
    pub jet: JetPoint,
    /// All `F_i^(s)`, `s <= m + depth`, at the extended jet.
    pub constraints: Ideal,
}

/// Extends a concrete jet of `X` by parameters.
pub fn extend_jet(p: &AffinePresentation, alpha: &JetPoint, depth: usize) -> Result<ExtendedJet> {
    let rows =
        alpha.scalar_rows().ok_or_else(|| Error::Precondition("the prefix must have scalar coordinates".into()))?;
    let m = alpha.level();
    let n = p.nvars();
    if alpha.nbase() != n {
        return Err(Error::LevelMismatch(format!("jet has {} coordinates, X has {n}", alpha.nbase())));
    }
    if !alpha.satisfies(&prolong(p, m)?)? {
        return Err(Error::InvalidArc(format!("the prefix is not a {m}-jet of X")));
    }
    let field = p.field();
    let mut vars = Vec::new();
    for l in m + 1..=m + depth {
        for v in p.table().vars() {
            vars.push(VarId::new(v.name.clone(), l as u32));
        }
    }
    let params = VariableTable::new(vars)?;
    let mut coords: Vec<Vec<Polynomial>> =
        rows.iter().map(|row| row.iter().map(|c| Polynomial::constant(&params, c.clone())).collect()).collect();
    for d in 0..depth {
        coords.push((0..n).map(|j| Polynomial::var(&params, field, d * n + j)).collect());
    }
    let jet = JetPoint::new(coords, &params, field)?;
    let residuals = jet.residuals(&prolong(p, m + depth)?)?;
    let constraints = Ideal::new(&params, field, residuals)?;
    Ok(ExtendedJet { params, jet, constraints })
}

/// `(g, ℓ)` with `F_ℓ`, the `t^ℓ` coefficient of `g` along the extended
/// jet, not vanishing on the lifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeWitness {
    pub generator: usize,
    pub level: usize,
    pub coefficient: Polynomial,
}

/// Searches for a lift of `alpha` leaving `V(z)`: the first `(ℓ, g)` whose
/// coefficient is outside the radical of the lift constraints.
///
/// `Ok(None)` means nothing was found at this depth, not that none exists.
pub fn cylinder_escape(
    p: &AffinePresentation,
    alpha: &JetPoint,
    z: &Ideal,
    depth: usize,
    budget: &Budget,
) -> Result<Option<EscapeWitness>> {
    let z = z.relabel(p.table())?;
    let ideal = p.ideal();
    if z.is_unit(budget)? {
        return Err(Error::Precondition("the subvariety is empty".into()));
    }
    if !z.contains_ideal(&ideal, budget)? {
        return Err(Error::Precondition("the subvariety is not contained in X".into()));
    }
    if ideal.contains_ideal(&z, budget)? {
        return Err(Error::Precondition("the subvariety is all of X".into()));
    }
    let ext = extend_jet(p, alpha, depth)?;
    if ext.constraints.is_unit(budget)? {
        return Err(Error::Precondition(format!("the prefix has no lift to depth {depth}")));
    }
    let lifted_to_z =
        z.generators().iter().map(|g| tseries::evaluate(g, &ext.jet.series())).collect::<Result<Vec<_>>>()?;
    for level in 0..=alpha.level() + depth {
        for (k, s) in lifted_to_z.iter().enumerate() {
            let c = s.coeff(level);
            if c.is_zero() {
                continue;
            }
            if ext.constraints.is_zero() || !ext.constraints.radical_contains(c, budget)? {
                return Ok(Some(EscapeWitness { generator: k, level, coefficient: c.clone() }));
            }
        }
    }
    Ok(None)
}

/// Status of one lift parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamStatus {
    /// `v^k` lies in the constraint ideal.
    Forced(u32),
    /// `v` is outside the radical: some lift has `v != 0`.
    Free,
    /// In the radical, but no power up to the bound is a member.
    Undetermined,
}

#[derive(Debug, Clone)]
pub struct ForcedReport {
    pub extended: ExtendedJet,
    pub status: Vec<(VarId, ParamStatus)>,
}

impl ForcedReport {
    pub fn forced(&self) -> Vec<&VarId> {
        self.status.iter().filter(|(_, s)| matches!(s, ParamStatus::Forced(_))).map(|(v, _)| v).collect()
    }
}

/// Which lift parameters every lift of `alpha` to depth `depth` must set to
/// zero, by bounded-power membership in the constraint ideal.
pub fn forced_vanishing(
    p: &AffinePresentation,
    alpha: &JetPoint,
    depth: usize,
    max_power: u32,
    budget: &Budget,
) -> Result<ForcedReport> {
    let ext = extend_jet(p, alpha, depth)?;
    let field = p.field();
    let mut status = Vec::with_capacity(ext.params.len());
    for (i, v) in ext.params.vars().iter().enumerate() {
        let x = Polynomial::var(&ext.params, field, i);
        let s = match ext.constraints.power_membership(&x, max_power, budget)? {
            Some(k) => ParamStatus::Forced(k),
            None if ext.constraints.radical_contains(&x, budget)? => ParamStatus::Undetermined,
            None => ParamStatus::Free,
        };
        status.push((v.clone(), s));
    }
    Ok(ForcedReport { extended: ext, status })
}
