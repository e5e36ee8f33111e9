use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::polyring::{same_table, Field, Monomial, MonomialOrder, Polynomial, VariableTable};

use super::buchberger::{normal_form, reduced_basis, Terms};

/// Caps on Buchberger's work. Exceeding either is reported as
/// `Error::Budget`, never as a truncated answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_basis: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 10_000, max_basis: 2_000 }
    }
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { max_pairs: usize::MAX, max_basis: usize::MAX }
    }
}

/// A reduced Groebner basis: monic, inter-reduced, sorted by increasing
/// leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    table: Arc<VariableTable>,
    field: Field,
    polys: Vec<Polynomial>,
    terms: Vec<Terms>,
}

impl PartialEq for Terms {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for Terms {}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| t.lead())
    }

    /// Normal form of `f`; zero exactly when `f` lies in the ideal.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_table(f.table(), &self.table) {
            return Err(Error::TableMismatch);
        }
        if f.field() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), f.field().to_string()));
        }
        let basis: Vec<&Terms> = self.terms.iter().collect();
        let nf = normal_form(&to_terms(f, &self.order), &basis, &self.order);
        Ok(from_terms(nf, &self.table, self.field))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }
}

pub(crate) fn to_terms(f: &Polynomial, order: &MonomialOrder) -> Terms {
    Terms(f.sorted_terms(order).into_iter().map(|(m, c)| (m.clone(), c.clone())).collect())
}

fn from_terms(t: Terms, table: &Arc<VariableTable>, field: Field) -> Polynomial {
    Polynomial::from_terms(table, field, t.0).expect("terms built over this table")
}

/// An ideal given by generators, with a per-order cache of reduced bases.
pub struct Ideal {
    gens: Vec<Polynomial>,
    table: Arc<VariableTable>,
    field: Field,
    cache: RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            gens: self.gens.clone(),
            table: self.table.clone(),
            field: self.field,
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal").field("table", &self.table.to_string()).field("gens", &self.gens).finish()
    }
}

impl Ideal {
    /// Zero generators are dropped; all generators must share the table.
    pub fn new(table: &Arc<VariableTable>, field: Field, gens: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
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
        Ok(Ideal { gens: kept, table: table.clone(), field, cache: RwLock::new(HashMap::new()) })
    }

    pub fn zero(table: &Arc<VariableTable>, field: Field) -> Ideal {
        Ideal::new(table, field, []).expect("empty generator list")
    }

    pub fn unit(table: &Arc<VariableTable>, field: Field) -> Ideal {
        Ideal::new(table, field, [Polynomial::one(table, field)]).expect("constant generator")
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced basis under `order`, computed once and cached.
    pub fn groebner_basis(&self, order: &MonomialOrder, budget: &Budget) -> Result<Arc<GroebnerBasis>> {
        if let Some(b) = self.cache.read().expect("cache lock").get(order) {
            return Ok(b.clone());
        }
        let mut gens: Vec<Terms> = self.gens.iter().map(|g| to_terms(&g.primitive(order), order)).collect();
        // Smallest leading monomials first keeps early reductions cheap.
        gens.sort_by(|a, b| order.compare(a.lead(), b.lead()));
        let terms = reduced_basis(gens, order, budget)?;
        let polys = terms.iter().map(|t| from_terms(t.clone(), &self.table, self.field)).collect();
        let basis = Arc::new(GroebnerBasis {
            order: order.clone(),
            table: self.table.clone(),
            field: self.field,
            polys,
            terms,
        });
        self.cache.write().expect("cache lock").entry(order.clone()).or_insert(basis.clone());
        Ok(basis)
    }

    /// Reduced basis in graded reverse lex, the default working order.
    pub fn basis(&self, budget: &Budget) -> Result<Arc<GroebnerBasis>> {
        self.groebner_basis(&MonomialOrder::GrevLex, budget)
    }

    pub fn reduce(&self, f: &Polynomial, order: &MonomialOrder, budget: &Budget) -> Result<Polynomial> {
        self.groebner_basis(order, budget)?.reduce(f)
    }

    pub fn contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        self.basis(budget)?.contains(f)
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        Ok(self.basis(budget)?.is_unit())
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        let b = self.basis(budget)?;
        for g in other.generators() {
            if !b.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, decided by comparing reduced bases.
    pub fn same_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        Ok(self.basis(budget)?.polys() == other.basis(budget)?.polys())
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        Ideal::new(&self.table, self.field, self.gens.iter().cloned().chain(extra))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.with_generators(other.gens.iter().cloned())
    }

    /// The same ideal over a table with the same identifiers in another
    /// arrangement, or a superset of them.
    pub fn relabel(&self, target: &Arc<VariableTable>) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.relabel(target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, self.field, gens)
    }
}
