//! Buchberger's algorithm over dense-sorted term vectors.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::polyring::{Monomial, MonomialOrder, Scalar};

use super::Budget;

/// Terms sorted from largest to smallest under the working order.
#[derive(Debug, Clone)]
pub(crate) struct Terms(pub Vec<(Monomial, Scalar)>);

impl Terms {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lead(&self) -> &Monomial {
        &self.0[0].0
    }

    fn lc(&self) -> &Scalar {
        &self.0[0].1
    }

    pub fn monic(mut self) -> Terms {
        if let Some((_, c)) = self.0.first() {
            if !c.is_one() {
                let inv = c.inverse().expect("nonzero leading coefficient");
                for t in &mut self.0 {
                    t.1 = &t.1 * &inv;
                }
            }
        }
        self
    }

    /// `self - c * m * other`, merging two sorted streams.
    fn sub_scaled(&self, c: &Scalar, m: &Monomial, other: &Terms, order: &MonomialOrder) -> Terms {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let mut a = self.0.iter().peekable();
        let mut b = other.0.iter().map(|(mb, cb)| (mb.mul(m), cb * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (mb, cb) = b.next().unwrap();
                    out.push((mb, -&cb));
                }
                (Some((ma, _)), Some((mb, _))) => match order.compare(ma, mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (mb, cb) = b.next().unwrap();
                        out.push((mb, -&cb));
                    }
                    Ordering::Equal => {
                        let (ma, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let s = ca - &cb;
                        if !s.is_zero() {
                            out.push((ma.clone(), s));
                        }
                    }
                },
            }
        }
        Terms(out)
    }
}

/// Full normal form of `f` modulo `basis` (every term reduced).
pub(crate) fn normal_form(f: &Terms, basis: &[&Terms], order: &MonomialOrder) -> Terms {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    while !p.is_zero() {
        let lead = p.lead().clone();
        match basis.iter().find(|g| g.lead().divides(&lead)) {
            Some(g) => {
                let c = p.lc() * &g.lc().inverse().expect("nonzero");
                let m = g.lead().quotient_of(&lead);
                p = p.sub_scaled(&c, &m, g, order);
            }
            None => {
                let t = p.0.remove(0);
                rem.push(t);
            }
        }
    }
    Terms(rem)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Computes the reduced Groebner basis of `gens` (every entry nonzero,
/// sorted under `order`). Output is monic and sorted by increasing leading
/// monomial.
pub(crate) fn reduced_basis(gens: Vec<Terms>, order: &MonomialOrder, budget: &Budget) -> Result<Vec<Terms>> {
    let mut polys: Vec<Terms> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in gens {
        let basis: Vec<&Terms> = active.iter().map(|&k| &polys[k]).collect();
        let h = normal_form(&g, &basis, order);
        if h.is_zero() {
            continue;
        }
        insert(h.monic(), &mut polys, &mut active, &mut pairs, budget)?;
    }

    let mut reductions = 0usize;
    while !pairs.is_empty() {
        let best = select(&pairs, order);
        let pair = pairs.swap_remove(best);
        reductions += 1;
        if reductions > budget.max_pairs {
            return Err(Error::Budget(format!("more than {} S-pair reductions", budget.max_pairs)));
        }
        let s = s_polynomial(&polys[pair.i], &polys[pair.j], &pair.lcm, order);
        let basis: Vec<&Terms> = active.iter().map(|&k| &polys[k]).collect();
        let h = normal_form(&s, &basis, order);
        if h.is_zero() {
            continue;
        }
        if h.lead().is_one() {
            return Ok(vec![h.monic()]);
        }
        insert(h.monic(), &mut polys, &mut active, &mut pairs, budget)?;
    }

    // `active` is a minimal basis; reduce tails and sort.
    let mut minimal: Vec<Terms> = active.iter().map(|&k| polys[k].clone()).collect();
    minimal.sort_by(|a, b| order.compare(a.lead(), b.lead()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<&Terms> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, t)| t).collect();
        let head = Terms(vec![g.0[0].clone()]);
        let tail = normal_form(&Terms(g.0[1..].to_vec()), &others, order);
        let mut all = head.0;
        all.extend(tail.0);
        reduced.push(Terms(all).monic());
    }
    Ok(reduced)
}

fn s_polynomial(f: &Terms, g: &Terms, lcm: &Monomial, order: &MonomialOrder) -> Terms {
    // f, g are monic.
    let mf = f.lead().quotient_of(lcm);
    let mg = g.lead().quotient_of(lcm);
    let one = f.lc().clone();
    let zero = Terms(Vec::new());
    let left = zero.sub_scaled(&-&one, &mf, f, order);
    left.sub_scaled(&one, &mg, g, order)
}

/// Normal strategy: smallest lcm degree, ties by the term order, then by
/// insertion indices.
fn select(pairs: &[Pair], order: &MonomialOrder) -> usize {
    let mut best = 0;
    for k in 1..pairs.len() {
        let (a, b) = (&pairs[k], &pairs[best]);
        let c = a
            .lcm
            .degree()
            .cmp(&b.lcm.degree())
            .then_with(|| order.compare(&a.lcm, &b.lcm))
            .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
        if c == Ordering::Less {
            best = k;
        }
    }
    best
}

/// Gebauer-Moeller update: adds `h` to the basis, pruning redundant pairs
/// with the chain and product criteria.
fn insert(
    h: Terms,
    polys: &mut Vec<Terms>,
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    budget: &Budget,
) -> Result<()> {
    let hi = polys.len();
    let hl = h.lead().clone();
    polys.push(h);
    if active.len() + 1 > budget.max_basis {
        return Err(Error::Budget(format!("basis grew beyond {} elements", budget.max_basis)));
    }

    let candidates: Vec<(usize, Monomial)> = active.iter().map(|&g| (g, polys[g].lead().lcm(&hl))).collect();

    // Chain criterion among the new pairs, keeping coprime ones for now.
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (k, (g, l)) in candidates.iter().enumerate() {
        let coprime = polys[*g].lead().is_coprime(&hl);
        let dominated = candidates.iter().enumerate().skip(k + 1).any(|(_, (_, l2))| l2.divides(l))
            || kept.iter().any(|(_, l2)| l2.divides(l));
        if coprime || !dominated {
            kept.push((*g, l.clone()));
        }
    }
    // Product criterion.
    kept.retain(|(g, _)| !polys[*g].lead().is_coprime(&hl));

    // Old pairs whose lcm is divisible by lead(h) without being equal to
    // either new lcm are redundant.
    pairs.retain(|p| {
        if !hl.divides(&p.lcm) {
            return true;
        }
        let li = polys[p.i].lead().lcm(&hl);
        let lj = polys[p.j].lead().lcm(&hl);
        li == p.lcm || lj == p.lcm
    });
    for (g, l) in kept {
        pairs.push(Pair { i: g.min(hi), j: g.max(hi), lcm: l });
    }

    active.retain(|&g| !hl.divides(polys[g].lead()));
    active.push(hi);
    Ok(())
}
