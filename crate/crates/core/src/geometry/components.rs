use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::polyring::{Monomial, Polynomial};
use crate::text::format_polynomial;

use super::irreducible::certify_irreducible;

/// One candidate component of a splitting.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub ideal: Ideal,
    /// Reduced grevlex basis.
    pub basis: Vec<Polynomial>,
    pub dimension: Option<usize>,
    /// Every input generator reduces to zero modulo the candidate.
    pub contains_input: bool,
    /// Every generator in the certificate set passed `certify_irreducible`.
    pub irreducible_generators: bool,
}

/// Output of `split_components`.
///
/// `complete` is true only when every candidate has certified irreducible
/// generators, saturating any candidate by any other leaves it unchanged,
/// and no budget was exhausted. Irreducible generators do not by
/// themselves prove an ideal prime; the flag records the heuristic's
/// evidence, not a primary decomposition.
#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub input: Ideal,
    pub candidates: Vec<Candidate>,
    pub complete: bool,
    pub budget_exhausted: bool,
}

#[derive(Debug, Clone)]
struct Node {
    ideal: Ideal,
    cert: Vec<Polynomial>,
    used: Vec<bool>,
}

/// The monomial content of `g` when splitting on it is useful: the gcd of
/// all its monomials, unless `g` is a single variable.
fn monomial_factor(g: &Polynomial) -> Option<Monomial> {
    let mut terms = g.terms().map(|(m, _)| m.clone());
    let first = terms.next()?;
    let content = terms.fold(first, |acc, m| acc.gcd(&m));
    if content.is_one() || (g.num_terms() == 1 && content.degree() == 1) {
        return None;
    }
    Some(content)
}

/// Branches of `node` obtained from a generator with a monomial factor:
/// `I + (x_v)` for every variable of the factor and `I + (g / content)`.
fn split_factor(node: &Node) -> Result<Option<Vec<Node>>> {
    let gens = node.ideal.generators();
    let Some((k, content)) = gens.iter().enumerate().find_map(|(k, g)| monomial_factor(g).map(|c| (k, c))) else {
        return Ok(None);
    };
    let g = &gens[k];
    let table = node.ideal.table();
    let field = node.ideal.field();
    let mut factors: Vec<Polynomial> = content.support().map(|v| Polynomial::var(table, field, v)).collect();
    let rest = g.div_exact(&Polynomial::monomial(table, content, field.one()))?.expect("content divides");
    if !rest.is_constant() {
        factors.push(rest);
    }
    let others: Vec<Polynomial> = gens.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, h)| h.clone()).collect();
    let children = factors
        .into_iter()
        .map(|f| {
            let mut cert: Vec<Polynomial> = node.cert.iter().filter(|h| *h != g).cloned().collect();
            cert.push(f.clone());
            let mut gs = others.clone();
            gs.push(f);
            Ok(Node { ideal: Ideal::new(table, field, gs)?, cert, used: node.used.clone() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(children))
}

fn basis_of(ideal: &Ideal, budget: &Budget) -> Result<Vec<Polynomial>> {
    Ok(ideal.basis(budget)?.polys().to_vec())
}

/// Splits one node by the first unused applicable hint. `None` means no
/// hint applies and the node is final.
fn split_hint(node: &mut Node, hints: &[Ideal], budget: &Budget) -> Result<Option<Vec<Node>>> {
    for (h, z) in hints.iter().enumerate() {
        if node.used[h] {
            continue;
        }
        node.used[h] = true;
        let mut extra = Vec::new();
        for g in z.generators() {
            if !node.ideal.contains(g, budget)? {
                extra.push(g.clone());
            }
        }
        if extra.is_empty() {
            continue;
        }
        let plus = node.ideal.with_generators(extra.iter().cloned())?;
        if plus.is_unit(budget)? {
            continue;
        }
        let zi = Ideal::new(node.ideal.table(), node.ideal.field(), extra)?;
        let sat = node.ideal.saturate(&zi, budget)?;
        let mut children = Vec::new();
        if sat.same_ideal(&node.ideal, budget)? {
            // No part of the node lies inside the hint.
            return Ok(Some(vec![node.clone()]));
        }
        if !sat.is_unit(budget)? {
            let cert = basis_of(&sat, budget)?;
            children.push(Node { ideal: sat, cert, used: node.used.clone() });
        }
        let cert = basis_of(&plus, budget)?;
        children.push(Node { ideal: plus, cert, used: node.used.clone() });
        return Ok(Some(children));
    }
    Ok(None)
}

/// `V(a) ⊆ V(b)`: every generator of `b` lies in the radical of `a`.
fn variety_within(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<bool> {
    for g in b.generators() {
        if !a.radical_contains(g, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

const MAX_NODES: usize = 256;

/// Heuristic splitting of `V(input)` into candidate components.
///
/// Generators with a monomial factor are branched on; then each hint `Z`
/// meeting a candidate `I` splits it into `I : Z^∞` and `I + Z`. Finally,
/// candidates whose variety lies inside another candidate's are dropped.
/// Hints are relabelled into the input table by variable identifier.
pub fn split_components(input: &Ideal, hints: &[Ideal], budget: &Budget) -> Result<ComponentReport> {
    if input.is_unit(budget)? {
        return Err(Error::UnitIdeal);
    }
    let hints = hints.iter().map(|z| z.relabel(input.table())).collect::<Result<Vec<_>>>()?;
    let mut work =
        vec![Node { ideal: input.clone(), cert: input.generators().to_vec(), used: vec![false; hints.len()] }];
    let mut done: Vec<Node> = Vec::new();
    let mut exhausted = false;

    let step = |work: &mut Vec<Node>, done: &mut Vec<Node>| -> Result<()> {
        while let Some(mut node) = work.pop() {
            if done.len() + work.len() > MAX_NODES {
                work.push(node);
                return Err(Error::Budget(format!("more than {MAX_NODES} component branches")));
            }
            if let Some(children) = split_factor(&node)? {
                for c in children {
                    if !c.ideal.is_unit(budget)? {
                        work.push(c);
                    }
                }
                continue;
            }
            match split_hint(&mut node, &hints, budget)? {
                Some(children) => work.extend(children),
                None => done.push(node),
            }
        }
        Ok(())
    };
    match step(&mut work, &mut done) {
        Ok(()) => {}
        Err(e) if e.is_budget() => {
            exhausted = true;
            done.append(&mut work);
        }
        Err(e) => return Err(e),
    }

    let mut candidates = Vec::new();
    for node in done {
        match candidate(node, input, budget) {
            Ok(c) => candidates.push(c),
            Err(e) if e.is_budget() => exhausted = true,
            Err(e) => return Err(e),
        }
    }
    sort_candidates(&mut candidates);

    if !exhausted {
        match prune(candidates.clone(), budget) {
            Ok(kept) => candidates = kept,
            Err(e) if e.is_budget() => exhausted = true,
            Err(e) => return Err(e),
        }
    }

    let mut complete = !exhausted && candidates.iter().all(|c| c.irreducible_generators && c.contains_input);
    if complete {
        match saturations_stable(&candidates, budget) {
            Ok(stable) => complete = stable,
            Err(e) if e.is_budget() => {
                exhausted = true;
                complete = false;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ComponentReport { input: input.clone(), candidates, complete, budget_exhausted: exhausted })
}

fn candidate(node: Node, input: &Ideal, budget: &Budget) -> Result<Candidate> {
    let basis = basis_of(&node.ideal, budget)?;
    let dimension = Some(node.ideal.krull_dimension(budget)?);
    let contains_input = node.ideal.contains_ideal(input, budget)?;
    let irreducible_generators = node.cert.iter().all(certify_irreducible);
    Ok(Candidate { ideal: node.ideal, basis, dimension, contains_input, irreducible_generators })
}

/// Largest dimension first, then by spelled basis.
fn sort_candidates(cs: &mut [Candidate]) {
    cs.sort_by_cached_key(|c| {
        let spelled: Vec<String> = c.basis.iter().map(format_polynomial).collect();
        (std::cmp::Reverse(c.dimension), spelled)
    });
}

/// Drops candidates whose variety is inside a kept one (the earlier of two
/// equal varieties survives).
fn prune(cs: Vec<Candidate>, budget: &Budget) -> Result<Vec<Candidate>> {
    let mut kept: Vec<Candidate> = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        let mut absorbed = false;
        for (j, d) in cs.iter().enumerate() {
            if i == j {
                continue;
            }
            if variety_within(&c.ideal, &d.ideal, budget)? {
                let equal = variety_within(&d.ideal, &c.ideal, budget)?;
                if !equal || j < i {
                    absorbed = true;
                    break;
                }
            }
        }
        if !absorbed {
            kept.push(c.clone());
        }
    }
    Ok(kept)
}

fn saturations_stable(cs: &[Candidate], budget: &Budget) -> Result<bool> {
    for (i, a) in cs.iter().enumerate() {
        for (j, b) in cs.iter().enumerate() {
            if i != j && !a.ideal.saturate(&b.ideal, budget)?.same_ideal(&a.ideal, budget)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
