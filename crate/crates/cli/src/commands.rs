use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use jetforge::geometry::{
    arc_kernel, cylinder_escape, fiber_ideal, forced_vanishing, is_thin_at_level, singular_locus, split_components,
    ArcPolynomial, ComponentReport, ParamStatus,
};
use jetforge::groebner::{Budget, Ideal};
use jetforge::jetcalc::{
    constant_jet, numeric_oracle_check, product_presentation, prolong, prolong_map, rename_apart, AffinePresentation,
    JetPoint, JetPresentation, PolynomialMap,
};
use jetforge::polyring::{Scalar, VariableTable};
use jetforge::text::{format_polynomial, parse_expr, parse_system, SystemDocument};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{Command, Prefix};
use crate::budget::Limits;
use crate::Failure;

type Out<'a> = &'a mut String;

const FINITE_NOTE: &str = "note: finite-level evidence only; statements about the full arc space are not decided here";

pub(crate) fn run(cmd: &Command, bytes: &[u8], limits: &Limits, out: Out) -> Result<(), Failure> {
    let doc = load(&cmd.input().file, bytes)?;
    let budget = &limits.budget;
    match cmd {
        Command::Prolong { level, .. } => prolong_cmd(&doc, *level, out),
        Command::Truncate { from, to, .. } => truncate_cmd(&doc, *from, *to, out),
        Command::Fiber { level, point, .. } => fiber_cmd(&doc, *level, point, budget, out),
        Command::Dim { level, fiber, .. } => dim_cmd(&doc, *level, fiber.as_deref(), budget, out),
        Command::Singular { level, .. } => singular_cmd(&doc, *level, budget, out),
        Command::Components { level, hint, jacobian_hint, .. } => {
            components_cmd(&doc, *level, hint, *jacobian_hint, budget, out)
        }
        Command::Map { level, target, images, .. } => map_cmd(&doc, *level, target, images, budget, out),
        Command::Product { with, level, .. } => product_cmd(&doc, with, *level, out),
        Command::ArcKernel { arc, .. } => arc_kernel_cmd(&doc, arc, budget, out),
        Command::Thin { level, hint, prefix, .. } => thin_cmd(&doc, *level, hint, prefix, out),
        Command::Escape { level, hint, prefix, .. } => escape_cmd(&doc, *level, hint, prefix, limits, out),
        Command::Forced { level, max_power, prefix, .. } => forced_cmd(&doc, *level, *max_power, prefix, limits, out),
        Command::Oracle { level, trials, seed, .. } => oracle_cmd(&doc, *level, *trials, *seed, out),
    }
}

fn load(path: &Path, bytes: &[u8]) -> Result<SystemDocument, Failure> {
    let text = std::str::from_utf8(bytes).map_err(|_| Failure::Domain(format!("{}: not UTF-8", path.display())))?;
    parse_system(text).map_err(|e| Failure::Domain(format!("{}:{e}", path.display())))
}

fn read_other(path: &Path) -> Result<SystemDocument, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    load(path, &bytes)
}

fn presentation(doc: &SystemDocument) -> Result<AffinePresentation, Failure> {
    Ok(doc.presentation()?)
}

fn jets(doc: &SystemDocument, level: usize) -> Result<JetPresentation, Failure> {
    Ok(prolong(&presentation(doc)?, level)?)
}

fn point(doc: &SystemDocument, label: &str) -> Result<Vec<Scalar>, Failure> {
    doc.point(label).map(|p| p.coords.clone()).ok_or_else(|| Failure::Usage(format!("no point labelled '{label}'")))
}

/// A declared hint label, or a comma-separated list of generators over
/// `table`.
fn hint_ideal(doc: &SystemDocument, given: &str, table: &Arc<VariableTable>) -> Result<Ideal, Failure> {
    let gens = match doc.hint(given) {
        Some(h) => h
            .gens
            .iter()
            .map(|g| g.relabel(table))
            .collect::<jetforge::Result<Vec<_>>>()
            .map_err(|e| Failure::Domain(format!("hint '{given}' does not fit level: {e}")))?,
        None => {
            let mut gens = Vec::new();
            let mut col = 1;
            for piece in given.split(',') {
                let g = parse_expr(piece, 1, col)
                    .and_then(|e| e.to_polynomial(table, doc.field))
                    .map_err(|e| Failure::Usage(format!("--hint: {e}")))?;
                gens.push(g);
                col += piece.chars().count() + 1;
            }
            gens
        }
    };
    Ok(Ideal::new(table, doc.field, gens)?)
}

fn prefix_jet(
    doc: &SystemDocument,
    p: &AffinePresentation,
    prefix: &Prefix,
    level: usize,
) -> Result<JetPoint, Failure> {
    match (&prefix.arc, &prefix.point) {
        (Some(label), None) => Ok(arc(doc, p, label)?.jet(level)?),
        (None, Some(label)) => Ok(constant_jet(p, &point(doc, label)?, level)?),
        _ => Err(Failure::Usage("give exactly one of --arc or --point".into())),
    }
}

fn arc(doc: &SystemDocument, p: &AffinePresentation, label: &str) -> Result<ArcPolynomial, Failure> {
    let a = doc.arc(label).ok_or_else(|| Failure::Usage(format!("no arc labelled '{label}'")))?;
    Ok(ArcPolynomial::new(p, a.images.clone())?)
}

fn line(out: Out, s: impl AsRef<str>) {
    out.push_str(s.as_ref());
    out.push('\n');
}

fn write_generators(out: Out, j: &JetPresentation) {
    line(out, format!("level: {}", j.level()));
    line(out, format!("variables: {}", j.table()));
    line(out, format!("generators: {}", j.generators().len()));
    for g in j.generators() {
        let body = if g.is_structural_zero() { "0 (structural zero)".to_string() } else { format_polynomial(&g.poly) };
        line(out, format!("F[{},{}] = {}", g.source + 1, g.weight, body));
    }
}

fn write_basis(out: Out, label: &str, ideal: &Ideal, budget: &Budget) -> Result<(), Failure> {
    let basis = ideal.basis(budget)?;
    line(out, format!("{label}: {} polynomials", basis.len()));
    for g in basis.polys() {
        line(out, format!("  {}", format_polynomial(g)));
    }
    Ok(())
}

fn prolong_cmd(doc: &SystemDocument, level: usize, out: Out) -> Result<(), Failure> {
    write_generators(out, &jets(doc, level)?);
    Ok(())
}

fn truncate_cmd(doc: &SystemDocument, from: usize, to: usize, out: Out) -> Result<(), Failure> {
    let high = jets(doc, from)?;
    let low = high.truncate(to)?;
    let direct = jets(doc, to)?;
    write_generators(out, &low);
    line(out, format!("matches direct prolongation at level {to}: {}", yes(low == direct)));
    Ok(())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fiber_cmd(doc: &SystemDocument, level: usize, label: &str, budget: &Budget, out: Out) -> Result<(), Failure> {
    let j = jets(doc, level)?;
    let f = fiber_ideal(&j, &point(doc, label)?)?;
    line(out, format!("fiber over: {label}"));
    line(out, format!("variables: {}", f.table()));
    line(out, format!("equations: {}", f.generators().len()));
    for g in f.generators() {
        line(out, format!("  {}", format_polynomial(g)));
    }
    match f.krull_dimension(budget) {
        Ok(d) => line(out, format!("dimension: {d}")),
        Err(jetforge::Error::UnitIdeal) => line(out, "dimension: empty"),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn dim_cmd(doc: &SystemDocument, level: usize, fiber: Option<&str>, budget: &Budget, out: Out) -> Result<(), Failure> {
    let j = jets(doc, level)?;
    let ideal = match fiber {
        Some(label) => {
            line(out, format!("fiber over: {label}"));
            fiber_ideal(&j, &point(doc, label)?)?
        }
        None => j.ideal(),
    };
    line(out, format!("level: {level}"));
    line(out, format!("ambient variables: {}", ideal.table().len()));
    match ideal.krull_dimension(budget) {
        Ok(d) => line(out, format!("dimension: {d}")),
        Err(jetforge::Error::UnitIdeal) => line(out, "dimension: empty"),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn singular_cmd(doc: &SystemDocument, level: usize, budget: &Budget, out: Out) -> Result<(), Failure> {
    let j = jets(doc, level)?;
    let s = singular_locus(&j.as_presentation(), budget)?;
    line(out, format!("level: {level}"));
    if s.is_unit(budget)? {
        line(out, "singular locus: empty");
        return Ok(());
    }
    write_basis(out, "singular locus basis", &s, budget)?;
    line(out, format!("dimension: {}", s.krull_dimension(budget)?));
    Ok(())
}

fn write_components(out: Out, report: &ComponentReport) {
    line(out, format!("components: {}", report.candidates.len()));
    line(out, format!("complete: {}", yes(report.complete)));
    if report.budget_exhausted {
        line(out, "budget exhausted: partial report");
    }
    for (k, c) in report.candidates.iter().enumerate() {
        let dim = c.dimension.map(|d| d.to_string()).unwrap_or_else(|| "unknown".into());
        line(
            out,
            format!(
                "component {}: dimension {}, contains input: {}, irreducible generators: {}",
                k + 1,
                dim,
                yes(c.contains_input),
                yes(c.irreducible_generators)
            ),
        );
        for g in &c.basis {
            line(out, format!("  {}", format_polynomial(g)));
        }
    }
}

fn components_cmd(
    doc: &SystemDocument,
    level: usize,
    hints: &[String],
    jacobian_hint: bool,
    budget: &Budget,
    out: Out,
) -> Result<(), Failure> {
    let j = jets(doc, level)?;
    let mut zs = hints.iter().map(|h| hint_ideal(doc, h, j.table())).collect::<Result<Vec<_>, _>>()?;
    if jacobian_hint {
        zs.push(singular_locus(&j.as_presentation(), budget)?);
    }
    let report = split_components(&j.ideal(), &zs, budget)?;
    line(out, format!("level: {level}"));
    write_components(out, &report);
    if report.budget_exhausted {
        return Err(Failure::Budget("component splitting stopped early".into()));
    }
    Ok(())
}

fn map_cmd(
    doc: &SystemDocument,
    level: usize,
    target: &Path,
    images: &str,
    budget: &Budget,
    out: Out,
) -> Result<(), Failure> {
    let src = presentation(doc)?;
    let tgt = presentation(&read_other(target)?)?;
    let mut ims = Vec::new();
    let mut col = 1;
    for piece in images.split(',') {
        let g = parse_expr(piece, 1, col)
            .and_then(|e| e.to_polynomial(src.table(), src.field()))
            .map_err(|e| Failure::Usage(format!("--images: {e}")))?;
        ims.push(g);
        col += piece.chars().count() + 1;
    }
    let mut phi = PolynomialMap::new(src, tgt, ims)?;
    let prolonged = prolong_map(&mut phi, level, budget)?;
    line(out, format!("level: {level}"));
    line(out, "validated: yes");
    for (v, im) in prolonged.target().table().vars().iter().zip(prolonged.images()) {
        line(out, format!("{v} -> {}", format_polynomial(im)));
    }
    Ok(())
}

fn spelled_set(j: &JetPresentation) -> Vec<String> {
    let mut v: Vec<String> = j.nonzero_generators().map(format_polynomial).collect();
    v.sort();
    v
}

fn product_cmd(doc: &SystemDocument, with: &Path, level: Option<usize>, out: Out) -> Result<(), Failure> {
    let p = presentation(doc)?;
    let q = presentation(&read_other(with)?)?;
    let prod = product_presentation(&p, &q)?;
    line(out, format!("variables: {}", prod.table()));
    line(out, format!("generators: {}", prod.generators().len()));
    for g in prod.generators() {
        line(out, format!("  {}", format_polynomial(g)));
    }
    if let Some(m) = level {
        let pj = prolong(&prod, m)?;
        let qpart = rename_apart(&q, p.table())?;
        let mut factors = spelled_set(&prolong(&p, m)?);
        factors.extend(spelled_set(&prolong(&qpart, m)?));
        factors.sort();
        write_generators(out, &pj);
        line(out, format!("equals union of factor jet generators: {}", yes(spelled_set(&pj) == factors)));
    }
    Ok(())
}

fn arc_kernel_cmd(doc: &SystemDocument, label: &str, budget: &Budget, out: Out) -> Result<(), Failure> {
    let p = presentation(doc)?;
    let a = arc(doc, &p, label)?;
    let k = arc_kernel(&p, &a, budget)?;
    line(out, format!("arc: {label}"));
    write_basis(out, "kernel basis", &k.kernel, budget)?;
    line(out, format!("verdict: {}", if k.fat { "fat" } else { "thin" }));
    Ok(())
}

fn thin_cmd(doc: &SystemDocument, level: usize, hint: &str, prefix: &Prefix, out: Out) -> Result<(), Failure> {
    let p = presentation(doc)?;
    let alpha = prefix_jet(doc, &p, prefix, level)?;
    let z = hint_ideal(doc, hint, p.table())?;
    let thin = is_thin_at_level(&alpha, &z, level)?;
    line(out, format!("level: {level}"));
    line(out, format!("prefix inside subvariety: {}", yes(thin)));
    line(out, FINITE_NOTE);
    Ok(())
}

fn escape_cmd(
    doc: &SystemDocument,
    level: usize,
    hint: &str,
    prefix: &Prefix,
    limits: &Limits,
    out: Out,
) -> Result<(), Failure> {
    let p = presentation(doc)?;
    let alpha = prefix_jet(doc, &p, prefix, level)?;
    let z = hint_ideal(doc, hint, p.table())?;
    let w = cylinder_escape(&p, &alpha, &z, limits.depth, &limits.budget)?;
    line(out, format!("level: {level}"));
    line(out, format!("depth: {}", limits.depth));
    match w {
        Some(w) => {
            line(
                out,
                format!(
                    "witness: generator {} ({}), t^{} coefficient {}",
                    w.generator + 1,
                    format_polynomial(&z.generators()[w.generator]),
                    w.level,
                    format_polynomial(&w.coefficient)
                ),
            );
        }
        None => line(out, format!("witness: none found at depth {}", limits.depth)),
    }
    line(out, FINITE_NOTE);
    Ok(())
}

fn forced_cmd(
    doc: &SystemDocument,
    level: usize,
    max_power: u32,
    prefix: &Prefix,
    limits: &Limits,
    out: Out,
) -> Result<(), Failure> {
    let p = presentation(doc)?;
    let alpha = prefix_jet(doc, &p, prefix, level)?;
    let report = forced_vanishing(&p, &alpha, limits.depth, max_power, &limits.budget)?;
    line(out, format!("level: {level}"));
    line(out, format!("depth: {}", limits.depth));
    line(out, format!("parameters: {}", report.extended.params));
    let mut forced = Vec::new();
    let mut free = Vec::new();
    let mut open = Vec::new();
    for (v, s) in &report.status {
        match s {
            ParamStatus::Forced(k) => forced.push(format!("{v} (power {k})")),
            ParamStatus::Free => free.push(v.to_string()),
            ParamStatus::Undetermined => open.push(v.to_string()),
        }
    }
    let list = |v: &[String]| if v.is_empty() { "none".to_string() } else { v.join(", ") };
    line(out, format!("forced to zero: {}", list(&forced)));
    line(out, format!("free: {}", list(&free)));
    line(out, format!("undetermined: {}", list(&open)));
    line(out, FINITE_NOTE);
    Ok(())
}

fn oracle_cmd(doc: &SystemDocument, level: usize, trials: usize, seed: u64, out: Out) -> Result<(), Failure> {
    let j = jets(doc, level)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = numeric_oracle_check(&j, trials, &mut rng)?;
    line(out, format!("level: {level}"));
    line(out, format!("trials: {}", report.trials));
    line(out, format!("comparisons: {}", report.comparisons));
    line(out, format!("mismatches: {}", report.mismatches.len()));
    for m in report.mismatches.iter().take(10) {
        let _ = writeln!(
            out,
            "  trial {} F[{},{}]: direct {} prolonged {}",
            m.trial,
            m.source + 1,
            m.weight,
            m.direct,
            m.prolonged
        );
    }
    if !report.passed() {
        return Err(Failure::Domain(format!("{} oracle mismatches", report.mismatches.len())));
    }
    Ok(())
}
