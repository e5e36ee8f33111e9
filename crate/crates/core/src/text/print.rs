use crate::polyring::{Monomial, MonomialOrder, Polynomial, Scalar, VariableTable};

/// Canonical spelling under grevlex.
pub fn format_polynomial(p: &Polynomial) -> String {
    format_polynomial_with(p, &MonomialOrder::GrevLex)
}

/// Canonical spelling: terms from largest to smallest under `order`,
/// explicit `*`, powers with `^`, non-integral rationals parenthesized.
pub fn format_polynomial_with(p: &Polynomial, order: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.sorted_terms(order).into_iter().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = if negative { -c } else { c.clone() };
        out.push_str(&format_term(&magnitude, m, p.table()));
    }
    out
}

fn format_term(c: &Scalar, m: &Monomial, table: &VariableTable) -> String {
    let mono = format_monomial(m, table);
    let coeff = match c {
        Scalar::Rational(q) if !q.is_integer() => format!("({c})"),
        _ => c.to_string(),
    };
    match (mono.is_empty(), c.is_one()) {
        (true, _) => coeff,
        (false, true) => mono,
        (false, false) => format!("{coeff}*{mono}"),
    }
}

/// Factors are grouped by base name (in order of first appearance in the
/// table), then by jet level, so `x(1)*y` rather than `y*x(1)`.
fn format_monomial(m: &Monomial, table: &VariableTable) -> String {
    let mut support: Vec<usize> = m.support().collect();
    support.sort_by_key(|&i| {
        let v = table.var(i);
        let base = table.vars().iter().position(|w| w.name == v.name).unwrap_or(i);
        (base, v.level)
    });
    let factors: Vec<String> = support
        .into_iter()
        .map(|i| {
            let e = m.exp(i);
            if e == 1 {
                table.var(i).to_string()
            } else {
                format!("{}^{}", table.var(i), e)
            }
        })
        .collect();
    factors.join("*")
}
