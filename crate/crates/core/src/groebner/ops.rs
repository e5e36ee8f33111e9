//! Elimination, intersection, colon and saturation, radical membership
//! and Krull dimension, all reduced to Groebner computations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{MonomialOrder, Polynomial, VarId, VariableTable};

use super::ideal::{Budget, Ideal};

impl Ideal {
    /// `I ∩ k[keep]`, returned over the table of kept variables (in their
    /// original relative order).
    pub fn eliminate(&self, keep: &[usize], budget: &Budget) -> Result<Ideal> {
        let table = self.table();
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if kept.iter().any(|&i| i >= table.len()) {
            return Err(Error::Precondition("kept variable out of range".into()));
        }
        let dropped: Vec<usize> = (0..table.len()).filter(|i| !kept.contains(i)).collect();
        let kept_table = VariableTable::new(kept.iter().map(|&i| table.var(i).clone()).collect())?;
        if dropped.is_empty() {
            return self.relabel(&kept_table);
        }
        let work_table = VariableTable::new(dropped.iter().chain(&kept).map(|&i| table.var(i).clone()).collect())?;
        let work = self.relabel(&work_table)?;
        let order = MonomialOrder::eliminating_first(dropped.len(), work_table.len());
        let basis = work.groebner_basis(&order, budget)?;
        let survivors = basis
            .polys()
            .iter()
            .filter(|g| g.variables().iter().all(|&v| v >= dropped.len()))
            .map(|g| g.relabel(&kept_table))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&kept_table, self.field(), survivors)
    }

    /// Eliminates variables by identifier.
    pub fn eliminate_vars(&self, drop: &[VarId], budget: &Budget) -> Result<Ideal> {
        let keep: Vec<usize> = (0..self.table().len()).filter(|&i| !drop.contains(self.table().var(i))).collect();
        self.eliminate(&keep, budget)
    }

    /// Adds one auxiliary variable in front of the table.
    fn with_aux(&self, stem: &str) -> Result<(Arc<VariableTable>, Polynomial)> {
        let aux = self.table().fresh(stem);
        let t = self.table().prepended(&[aux])?;
        let v = Polynomial::var(&t, self.field(), 0);
        Ok((t, v))
    }

    fn drop_aux(&self, work: Ideal, budget: &Budget) -> Result<Ideal> {
        let keep: Vec<usize> = (1..work.table().len()).collect();
        work.eliminate(&keep, budget)?.relabel(self.table())
    }

    pub fn intersect(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        if !crate::polyring::same_table(self.table(), other.table()) {
            return Err(Error::TableMismatch);
        }
        let (t, w) = self.with_aux("w")?;
        let one = Polynomial::one(&t, self.field());
        let not_w = &one - &w;
        let mut gens = Vec::new();
        for g in self.generators() {
            gens.push(&w * &g.relabel(&t)?);
        }
        for h in other.generators() {
            gens.push(&not_w * &h.relabel(&t)?);
        }
        let work = Ideal::new(&t, self.field(), gens)?;
        self.drop_aux(work, budget)
    }

    /// `I : f = { g : g f ∈ I }`, via `(I ∩ (f)) / f`.
    pub fn colon(&self, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::Precondition("colon by the zero polynomial".into()));
        }
        let principal = Ideal::new(self.table(), self.field(), [f.clone()])?;
        let meet = self.intersect(&principal, budget)?;
        let mut gens = Vec::new();
        for g in meet.generators() {
            match g.div_exact(f)? {
                Some(q) => gens.push(q),
                None => unreachable!("generators of I ∩ (f) are multiples of f"),
            }
        }
        Ideal::new(self.table(), self.field(), gens)
    }

    /// `I : J = ∩_g (I : g)` over the generators of `J`.
    pub fn colon_ideal(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        let mut gens = other.generators().iter();
        let first = gens.next().ok_or_else(|| Error::Precondition("colon by the zero ideal".into()))?;
        let mut acc = self.colon(first, budget)?;
        for g in gens {
            acc = acc.intersect(&self.colon(g, budget)?, budget)?;
        }
        Ok(acc)
    }

    /// `I : f^∞`, by eliminating `u` from `I + (1 - u f)`.
    pub fn saturate_poly(&self, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::Precondition("saturation by the zero polynomial".into()));
        }
        let (t, u) = self.with_aux("u")?;
        let one = Polynomial::one(&t, self.field());
        let mut gens = vec![&one - &(&u * &f.relabel(&t)?)];
        for g in self.generators() {
            gens.push(g.relabel(&t)?);
        }
        let work = Ideal::new(&t, self.field(), gens)?;
        self.drop_aux(work, budget)
    }

    /// `I : J^∞ = ∩_g (I : g^∞)` over the generators of `J`.
    pub fn saturate(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        if other.is_zero() {
            return Err(Error::Precondition("saturation by the zero ideal".into()));
        }
        if other.is_unit(budget)? {
            return Ok(self.clone());
        }
        let mut acc: Option<Ideal> = None;
        for g in other.generators() {
            let s = self.saturate_poly(g, budget)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s, budget)?,
            });
        }
        Ok(acc.expect("at least one generator"))
    }

    /// `f ∈ rad(I)`, decided by `1 ∈ I + (1 - u f)`.
    pub fn radical_contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let (t, u) = self.with_aux("u")?;
        let one = Polynomial::one(&t, self.field());
        let mut gens = vec![&one - &(&u * &f.relabel(&t)?)];
        for g in self.generators() {
            gens.push(g.relabel(&t)?);
        }
        Ideal::new(&t, self.field(), gens)?.is_unit(budget)
    }

    /// Smallest `k <= max_power` with `f^k ∈ I`.
    pub fn power_membership(&self, f: &Polynomial, max_power: u32, budget: &Budget) -> Result<Option<u32>> {
        let basis = self.basis(budget)?;
        let mut p = f.clone();
        for k in 1..=max_power {
            if basis.contains(&p)? {
                return Ok(Some(k));
            }
            p = &p * f;
        }
        Ok(None)
    }

    /// Dimension of the quotient ring: the size of a largest set of
    /// variables containing the support of no leading monomial.
    pub fn krull_dimension(&self, budget: &Budget) -> Result<usize> {
        let basis = self.basis(budget)?;
        if basis.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let n = self.table().len();
        if n > 128 {
            return Err(Error::Precondition("dimension supports at most 128 variables".into()));
        }
        let supports: Vec<u128> =
            basis.leading_monomials().map(|m| m.support().fold(0u128, |acc, i| acc | (1u128 << i))).collect();
        let mut best = 0;
        independent_search(&supports, n, 0, 0, 0, &mut best);
        Ok(best)
    }
}

fn independent_search(supports: &[u128], n: usize, next: usize, set: u128, size: usize, best: &mut usize) {
    if size > *best {
        *best = size;
    }
    if size + (n - next) <= *best {
        return;
    }
    for v in next..n {
        if size + (n - v) <= *best {
            return;
        }
        let candidate = set | (1u128 << v);
        if supports.iter().all(|&s| s & !candidate != 0) {
            independent_search(supports, n, v + 1, candidate, size + 1, best);
        }
    }
}
