use jetforge::groebner::Budget;

use crate::args::BudgetArgs;

pub const DEFAULT_DEPTH: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub budget: Budget,
    pub depth: usize,
}

/// Flags override `JETFORGE_BUDGET`, which overrides the defaults. The
/// variable holds `key=value` pairs separated by commas, with keys
/// `max-pairs`, `max-basis` and `depth`.
pub fn resolve(flags: &BudgetArgs, env: Option<&str>) -> Result<Limits, String> {
    let mut limits = Limits { budget: Budget::default(), depth: DEFAULT_DEPTH };
    if let Some(spec) = env {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) =
                item.split_once('=').ok_or_else(|| format!("JETFORGE_BUDGET: expected key=value, found '{item}'"))?;
            let value: usize =
                value.trim().parse().map_err(|_| format!("JETFORGE_BUDGET: '{}' is not a count", value.trim()))?;
            match key.trim() {
                "max-pairs" => limits.budget.max_pairs = value,
                "max-basis" => limits.budget.max_basis = value,
                "depth" => limits.depth = value,
                other => return Err(format!("JETFORGE_BUDGET: unknown key '{other}'")),
            }
        }
    }
    if let Some(v) = flags.max_pairs {
        limits.budget.max_pairs = v;
    }
    if let Some(v) = flags.max_basis {
        limits.budget.max_basis = v;
    }
    if let Some(v) = flags.depth {
        limits.depth = v;
    }
    Ok(limits)
}
