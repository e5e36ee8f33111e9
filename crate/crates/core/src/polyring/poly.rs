use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::scalar::{Field, Scalar};
use super::table::{VarId, VariableTable};
use crate::error::{Error, Result};

/// A sparse multivariate polynomial over an explicit variable table.
///
/// Terms are stored in a `BTreeMap` keyed by exponent vector, with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Debug, Clone)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
    table: Arc<VariableTable>,
    field: Field,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

pub(crate) fn same_table(a: &Arc<VariableTable>, b: &Arc<VariableTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(table: &Arc<VariableTable>, field: Field) -> Polynomial {
        Polynomial { terms: BTreeMap::new(), table: table.clone(), field }
    }

    pub fn constant(table: &Arc<VariableTable>, c: Scalar) -> Polynomial {
        let field = c.field();
        let mut p = Polynomial::zero(table, field);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(table.len()), c);
        }
        p
    }

    pub fn from_i64(table: &Arc<VariableTable>, field: Field, c: i64) -> Polynomial {
        Polynomial::constant(table, field.from_i64(c))
    }

    pub fn one(table: &Arc<VariableTable>, field: Field) -> Polynomial {
        Polynomial::constant(table, field.one())
    }

    pub fn var(table: &Arc<VariableTable>, field: Field, i: usize) -> Polynomial {
        Polynomial::monomial(table, Monomial::var(table.len(), i, 1), field.one())
    }

    pub fn var_id(table: &Arc<VariableTable>, field: Field, id: &VarId) -> Result<Polynomial> {
        let i = table.position(id).ok_or_else(|| Error::UnknownVariable(id.to_string()))?;
        Ok(Polynomial::var(table, field, i))
    }

    pub fn monomial(table: &Arc<VariableTable>, m: Monomial, c: Scalar) -> Polynomial {
        debug_assert_eq!(m.len(), table.len());
        let mut p = Polynomial::zero(table, c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from loose terms, merging duplicates.
    pub fn from_terms(
        table: &Arc<VariableTable>,
        field: Field,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Polynomial> {
        let mut p = Polynomial::zero(table, field);
        for (m, c) in terms {
            if m.len() != table.len() {
                return Err(Error::TableMismatch);
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(self.field.zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Terms listed from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.compare(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    /// Indices of the variables that actually occur.
    pub fn variables(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            s.extend(m.support());
        }
        s
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut r = Polynomial::zero(&self.table, self.field);
        if self.is_zero() || other.is_zero() {
            return Ok(r);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.table, self.field);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial { terms, table: self.table.clone(), field: self.field }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.table, self.field);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        Polynomial { terms, table: self.table.clone(), field: self.field }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.table, self.field);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative in variable `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut r = Polynomial::zero(&self.table, self.field);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            r.add_term(Monomial::from_exponents(exps), c.mul_int(e as u64));
        }
        r
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    ///
    /// Only variables that occur in `self` need an image. Evaluation is
    /// Horner-style in each variable, recursing on coefficient polynomials.
    pub fn substitute(&self, sub: &Substitution) -> Result<Polynomial> {
        for v in self.variables() {
            match sub.images.get(v) {
                Some(Some(img)) => {
                    if img.field != sub.field || !same_table(&img.table, &sub.target) {
                        return Err(Error::TableMismatch);
                    }
                }
                _ => return Err(Error::MissingImage(self.table.var(v).to_string())),
            }
        }
        if self.field != sub.field {
            return Err(Error::FieldMismatch(self.field.to_string(), sub.field.to_string()));
        }
        let terms: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        Ok(horner(&terms, 0, sub))
    }

    /// Evaluates at a scalar point in the field.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.table.len() {
            return Err(Error::TableMismatch);
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial over `target`, matching variables by
    /// identifier.
    pub fn relabel(&self, target: &Arc<VariableTable>) -> Result<Polynomial> {
        if same_table(&self.table, target) {
            return Ok(Polynomial { terms: self.terms.clone(), table: target.clone(), field: self.field });
        }
        let map: Vec<Option<usize>> = self.table.vars().iter().map(|v| target.position(v)).collect();
        let mut r = Polynomial::zero(target, self.field);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for i in m.support() {
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.table.var(i).to_string()))?;
                exps[j] = m.exp(i);
            }
            r.add_term(Monomial::from_exponents(exps), c.clone());
        }
        Ok(r)
    }

    /// Weight of every monomial if they all agree.
    pub fn isobaric_weight(&self, weights: &[u32]) -> Option<u64> {
        let mut it = self.terms.keys().map(|m| m.weight(weights));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Scales so the leading coefficient under `order` is one.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// Over Q: integer coefficients with gcd one and positive leading
    /// coefficient under `order`. Over F_p this is `monic`.
    pub fn primitive(&self, order: &MonomialOrder) -> Polynomial {
        if self.field != Field::Rational || self.is_zero() {
            return self.monic(order);
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            let (n, d) = c.as_ratio().expect("rational coefficients");
            den = den.lcm(d);
            num = num.gcd(n);
        }
        let mut factor = BigRational::new(den, num);
        let (_, lc) = self.leading_term(order).unwrap();
        if lc.is_negative() {
            factor = -factor;
        }
        self.scale(&Scalar::Rational(factor))
    }

    /// Exact quotient `self / divisor`, or `None` when it does not divide.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = MonomialOrder::Lex;
        let (lm, lc) = divisor.leading_term(&order).unwrap();
        let (lm, lci) = (lm.clone(), lc.inverse()?);
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.table, self.field);
        while let Some((m, c)) = rem.leading_term(&order) {
            if !lm.divides(m) {
                return Ok(None);
            }
            let qm = lm.quotient_of(m);
            let qc = c * &lci;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }
}

fn horner(terms: &[(&Monomial, &Scalar)], var: usize, sub: &Substitution) -> Polynomial {
    let zero = Polynomial::zero(&sub.target, sub.field);
    if terms.is_empty() {
        return zero;
    }
    let nvars = terms[0].0.len();
    // Skip variables absent from every remaining term.
    let mut v = var;
    while v < nvars && terms.iter().all(|(m, _)| m.exp(v) == 0) {
        v += 1;
    }
    if v == nvars {
        let mut c = sub.field.zero();
        for (_, a) in terms {
            c = &c + a;
        }
        return Polynomial::constant(&sub.target, c);
    }
    let mut by_power: BTreeMap<u32, Vec<(&Monomial, &Scalar)>> = BTreeMap::new();
    for &(m, c) in terms {
        by_power.entry(m.exp(v)).or_default().push((m, c));
    }
    let x = sub.images[v].as_ref().expect("image checked");
    let top = *by_power.keys().next_back().unwrap();
    let mut acc = zero;
    let mut e = top;
    loop {
        if let Some(group) = by_power.get(&e) {
            acc = &acc + &horner(group, v + 1, sub);
        }
        if e == 0 {
            break;
        }
        // Jump over runs of absent powers with a single multiplication.
        let next = by_power.range(..e).next_back().map(|(k, _)| *k).unwrap_or(0);
        acc = &acc * &x.pow(e - next);
        e = next;
    }
    acc
}

/// Images for a substitution, all living over one target table.
#[derive(Debug, Clone)]
pub struct Substitution {
    pub target: Arc<VariableTable>,
    pub field: Field,
    pub images: Vec<Option<Polynomial>>,
}

impl Substitution {
    pub fn new(target: &Arc<VariableTable>, field: Field, images: Vec<Option<Polynomial>>) -> Self {
        Substitution { target: target.clone(), field, images }
    }

    /// Substitution defined on every source variable.
    pub fn total(target: &Arc<VariableTable>, field: Field, images: Vec<Polynomial>) -> Self {
        Substitution::new(target, field, images.into_iter().map(Some).collect())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomials over one table and field")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomials over one table and field")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomials over one table and field")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-&self.field.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> (Arc<VariableTable>, Polynomial, Polynomial, Polynomial) {
        let t = VariableTable::from_names(&["x", "y", "z"]).unwrap();
        let f = Field::Rational;
        (t.clone(), Polynomial::var(&t, f, 0), Polynomial::var(&t, f, 1), Polynomial::var(&t, f, 2))
    }

    #[test]
    fn difference_of_squares() {
        let (_, x, y, _) = xyz();
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &x.pow(2) - &y.pow(2));
    }

    #[test]
    fn partial_derivative() {
        let (_, x, y, z) = xyz();
        let f = &(&x * &y.pow(2)) - &z.pow(2);
        assert_eq!(f.derivative(0), y.pow(2));
    }

    #[test]
    fn derivative_in_char_two() {
        let t = VariableTable::from_names(&["x"]).unwrap();
        let x = Polynomial::var(&t, Field::Prime(2), 0);
        assert!(x.pow(2).derivative(0).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let (t, x, y, _) = xyz();
        let f = Field::Rational;
        let one = Polynomial::one(&t, f);
        let sub = Substitution::new(&t, f, vec![Some(&y + &one), None, None]);
        let two_y = y.scale(&f.from_i64(2));
        assert_eq!(x.pow(2).substitute(&sub).unwrap(), &(&y.pow(2) + &two_y) + &one);

        let c = Polynomial::from_i64(&t, f, 7);
        let empty = Substitution::new(&t, f, vec![None, None, None]);
        assert_eq!(c.substitute(&empty).unwrap(), c);

        let kill_y = Substitution::new(&t, f, vec![Some(x.clone()), Some(Polynomial::zero(&t, f)), None]);
        assert!((&x * &y).substitute(&kill_y).unwrap().is_zero());

        assert!(matches!(y.substitute(&sub), Err(Error::MissingImage(_))));
    }

    #[test]
    fn table_mismatch() {
        let (_, x, _, _) = xyz();
        let other = VariableTable::from_names(&["u"]).unwrap();
        let u = Polynomial::var(&other, Field::Rational, 0);
        assert_eq!(x.try_add(&u), Err(Error::TableMismatch));
    }

    #[test]
    fn relabel_by_identifier() {
        let (_, x, y, _) = xyz();
        let t2 = VariableTable::from_names(&["y", "w", "x"]).unwrap();
        let p = (&x * &y.pow(2)).relabel(&t2).unwrap();
        assert_eq!(p.terms().next().unwrap().0.exponents(), &[2, 0, 1]);
        let t3 = VariableTable::from_names(&["x"]).unwrap();
        assert!(y.relabel(&t3).is_err());
    }

    #[test]
    fn exact_division() {
        let (_, x, y, _) = xyz();
        let p = &(&x + &y) * &(&x - &y.pow(2));
        assert_eq!(p.div_exact(&(&x + &y)).unwrap(), Some(&x - &y.pow(2)));
        assert_eq!(x.div_exact(&y).unwrap(), None);
    }

    #[test]
    fn primitive_form() {
        let (_, x, y, _) = xyz();
        let half = Scalar::rational(1, 2).unwrap();
        let p = &x.scale(&Scalar::rational(-2, 3).unwrap()) + &y.scale(&half);
        let q = p.primitive(&MonomialOrder::GrevLex);
        assert_eq!(q, &x.scale(&Field::Rational.from_i64(4)) - &y.scale(&Field::Rational.from_i64(3)));
    }
}
