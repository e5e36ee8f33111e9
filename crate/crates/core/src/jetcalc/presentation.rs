use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{same_table, Field, Polynomial, VarId, VariableTable};
use crate::tseries::{self, TruncatedSeries};

/// `k[x_1..x_n]/(f_1..f_r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePresentation {
    table: Arc<VariableTable>,
    field: Field,
    gens: Vec<Polynomial>,
}

impl AffinePresentation {
    /// Zero generators are dropped.
    pub fn new(
        table: &Arc<VariableTable>,
        field: Field,
        gens: impl IntoIterator<Item = Polynomial>,
    ) -> Result<AffinePresentation> {
        if table.is_empty() {
            return Err(Error::Precondition("a presentation needs at least one variable".into()));
        }
        let mut kept = Vec::new();
        for g in gens {
            if !same_table(g.table(), table) {
                return Err(Error::TableMismatch);
            }
            if g.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), g.field().to_string()));
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(AffinePresentation { table: table.clone(), field, gens: kept })
    }

    /// Affine `n`-space on the given variable names.
    pub fn affine_space<S: AsRef<str>>(names: &[S], field: Field) -> Result<AffinePresentation> {
        AffinePresentation::new(&VariableTable::from_names(names)?, field, [])
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.table.len()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.table, self.field, self.gens.iter().cloned()).expect("validated generators")
    }

    /// The same presentation with more equations (a closed subscheme).
    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<AffinePresentation> {
        AffinePresentation::new(&self.table, self.field, self.gens.iter().cloned().chain(extra))
    }

    /// Checks that a scalar point satisfies every generator.
    pub fn check_point(&self, point: &[crate::polyring::Scalar]) -> Result<()> {
        if point.len() != self.nvars() {
            return Err(Error::LevelMismatch(format!(
                "point has {} coordinates for {} variables",
                point.len(),
                self.nvars()
            )));
        }
        for (i, g) in self.gens.iter().enumerate() {
            let v = g.evaluate(point)?;
            if !v.is_zero() {
                return Err(Error::NotOnVariety(i, v.to_string()));
            }
        }
        Ok(())
    }
}

/// One prolonged equation `F_i^(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetGenerator {
    /// Index of the source generator `f_i`.
    pub source: usize,
    /// The power of `t` it was read off from; also its weight.
    pub weight: usize,
    pub poly: Polynomial,
}

impl JetGenerator {
    /// Zero equations are kept in place so `(i, s)` positions stay stable.
    pub fn is_structural_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// The jet scheme `X_m` as an explicit presentation.
///
/// Variables are ordered level-major: all of `x_j(0)` first, then every
/// `x_j(1)`, and so on, so lower-level tables are prefixes. Generators are
/// ordered by `(weight, source)` for the same reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetPresentation {
    source: AffinePresentation,
    level: usize,
    table: Arc<VariableTable>,
    gens: Vec<JetGenerator>,
}

/// The level-major jet table of a base table.
pub fn jet_table(base: &VariableTable, level: usize) -> Result<Arc<VariableTable>> {
    let mut vars = Vec::with_capacity(base.len() * (level + 1));
    for l in 0..=level {
        for v in base.vars() {
            vars.push(VarId::new(v.name.clone(), l as u32));
        }
    }
    VariableTable::new(vars)
}

/// `x_j + x_j(1) t + ... + x_j(m) t^m` for every base variable, over the
/// jet table.
pub fn generic_series(
    base: &VariableTable,
    table: &Arc<VariableTable>,
    field: Field,
    level: usize,
) -> Vec<TruncatedSeries> {
    let n = base.len();
    (0..n)
        .map(|j| {
            let coeffs = (0..=level).map(|l| Polynomial::var(table, field, l * n + j)).collect();
            TruncatedSeries::new(coeffs, table, field).expect("coefficients over the jet table")
        })
        .collect()
}

/// Builds `X_m` by evaluating each `f_i` at the generic `m`-jet and reading
/// off the coefficients of `t^0 .. t^m`.
pub fn prolong(p: &AffinePresentation, level: usize) -> Result<JetPresentation> {
    if let Some(v) = p.table.vars().iter().find(|v| v.level != 0) {
        return Err(Error::Precondition(format!("cannot prolong a presentation that already has jet variable {v}")));
    }
    let table = jet_table(&p.table, level)?;
    let images = generic_series(&p.table, &table, p.field, level);
    let mut by_source = Vec::with_capacity(p.gens.len());
    for f in &p.gens {
        by_source.push(tseries::evaluate(f, &images)?.into_coeffs());
    }
    let mut gens = Vec::with_capacity(p.gens.len() * (level + 1));
    for s in 0..=level {
        for (i, coeffs) in by_source.iter().enumerate() {
            gens.push(JetGenerator { source: i, weight: s, poly: coeffs[s].clone() });
        }
    }
    Ok(JetPresentation { source: p.clone(), level, table, gens })
}

impl JetPresentation {
    /// Assembles a presentation from parts without recomputing it. Only
    /// the shape is checked; `numeric_oracle_check` tests the content.
    pub fn from_parts(source: AffinePresentation, level: usize, gens: Vec<JetGenerator>) -> Result<JetPresentation> {
        let table = jet_table(source.table(), level)?;
        let r = source.generators().len();
        if gens.len() != r * (level + 1) {
            return Err(Error::LevelMismatch(format!(
                "expected {} jet generators, found {}",
                r * (level + 1),
                gens.len()
            )));
        }
        for (k, g) in gens.iter().enumerate() {
            if g.weight != k / r.max(1) || g.source != k % r.max(1) {
                return Err(Error::Precondition("jet generators out of (weight, source) order".into()));
            }
            if !same_table(g.poly.table(), &table) {
                return Err(Error::TableMismatch);
            }
        }
        Ok(JetPresentation { source, level, table, gens })
    }

    pub fn source(&self) -> &AffinePresentation {
        &self.source
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn field(&self) -> Field {
        self.source.field
    }

    pub fn nbase(&self) -> usize {
        self.source.nvars()
    }

    pub fn generators(&self) -> &[JetGenerator] {
        &self.gens
    }

    /// `F_i^(s)`.
    pub fn generator(&self, source: usize, weight: usize) -> Option<&JetGenerator> {
        let r = self.source.generators().len();
        (source < r && weight <= self.level).then(|| &self.gens[weight * r + source])
    }

    pub fn nonzero_generators(&self) -> impl Iterator<Item = &Polynomial> {
        self.gens.iter().filter(|g| !g.is_structural_zero()).map(|g| &g.poly)
    }

    /// Position of `x_j(l)` in the jet table.
    pub fn var_index(&self, base: usize, level: usize) -> usize {
        level * self.nbase() + base
    }

    /// The weight `wt(x_j(l)) = l` of every jet variable.
    pub fn weights(&self) -> Vec<u32> {
        self.table.vars().iter().map(|v| v.level).collect()
    }

    /// Whether every `F_i^(s)` is isobaric of weight `s`.
    pub fn is_isobaric(&self) -> bool {
        let w = self.weights();
        self.gens.iter().all(|g| g.poly.is_zero() || g.poly.isobaric_weight(&w) == Some(g.weight as u64))
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.table, self.field(), self.nonzero_generators().cloned()).expect("jet generators")
    }

    /// `X_m` as a plain presentation in the jet variables.
    pub fn as_presentation(&self) -> AffinePresentation {
        AffinePresentation::new(&self.table, self.field(), self.nonzero_generators().cloned()).expect("jet generators")
    }

    /// The equations of `X_m` for a lower level: the `F_i^(s)` with
    /// `s <= level`, moved onto the prefix table.
    pub fn truncate(&self, level: usize) -> Result<JetPresentation> {
        if level >= self.level {
            return Err(Error::LevelMismatch(format!("truncation target {} must be below {}", level, self.level)));
        }
        let table = jet_table(self.source.table(), level)?;
        let gens = self
            .gens
            .iter()
            .filter(|g| g.weight <= level)
            .map(|g| Ok(JetGenerator { source: g.source, weight: g.weight, poly: g.poly.relabel(&table)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(JetPresentation { source: self.source.clone(), level, table, gens })
    }
}

/// `X × Y`: concatenated tables and generator lists. Base names of `q` that
/// collide with names of `p` get a numeric suffix.
pub fn product_presentation(p: &AffinePresentation, q: &AffinePresentation) -> Result<AffinePresentation> {
    if p.field != q.field {
        return Err(Error::FieldMismatch(p.field.to_string(), q.field.to_string()));
    }
    let renamed = rename_apart(q, p.table())?;
    let mut vars = p.table.vars().to_vec();
    vars.extend_from_slice(renamed.table.vars());
    let table = VariableTable::new(vars)?;
    let mut gens = Vec::new();
    for g in p.gens.iter().chain(&renamed.gens) {
        gens.push(g.relabel(&table)?);
    }
    AffinePresentation::new(&table, p.field, gens)
}

/// Renames the variables of `q` so that none collides with a name in
/// `avoid`; `y` becomes `y_2`, `y_3`, ... as needed.
pub fn rename_apart(q: &AffinePresentation, avoid: &VariableTable) -> Result<AffinePresentation> {
    let taken = |name: &str, chosen: &[VarId]| {
        avoid.vars().iter().any(|v| v.name == name) || chosen.iter().any(|v| v.name == name)
    };
    let mut chosen: Vec<VarId> = Vec::new();
    for v in q.table.vars() {
        let mut name = v.name.clone();
        let mut k = 2;
        while taken(&name, &chosen) || (name != v.name && q.table.vars().iter().any(|w| w.name == name)) {
            name = format!("{}_{}", v.name, k);
            k += 1;
        }
        chosen.push(VarId::new(name, v.level));
    }
    let table = VariableTable::new(chosen)?;
    // Positional renaming: same exponent vectors over the new table.
    let gens = q
        .gens
        .iter()
        .map(|g| Polynomial::from_terms(&table, q.field, g.terms().map(|(m, c)| (m.clone(), c.clone()))))
        .collect::<Result<Vec<_>>>()?;
    AffinePresentation::new(&table, q.field, gens)
}
