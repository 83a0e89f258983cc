use locdual_core::completion::Obstruction;
use locdual_core::complexes::ModuleInvariants;
use locdual_core::gamma::{ClassifyReport, Dualisability};
use locdual_core::resolutions::{BettiDecision, BettiTable};
use serde_json::Value;

/// `"dualisable_not_compact"` -> `"dualisable not compact"`.
pub fn snake(v: &Value) -> String {
    match v {
        Value::String(s) => s.replace('_', " "),
        other => other.to_string(),
    }
}

/// `{-1: 1, 0: 2}` as `β^-1 = 1, β^0 = 2`.
pub fn table(t: &BettiTable) -> String {
    if t.is_empty() {
        return "(zero)".into();
    }
    t.iter()
        .map(|(d, b)| format!("β^{d} = {b}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn decision(d: &BettiDecision) -> String {
    match d {
        BettiDecision::Finite { total, table: t } => format!("finite, total {total}: {}", table(t)),
        BettiDecision::PeriodicInfinite { period, onset } => {
            format!("infinite, periodic with period {period} from step {onset}")
        }
        BettiDecision::UnknownAtCutoff { cutoff } => format!("unknown at cutoff {cutoff}"),
    }
}

pub fn classify(r: &ClassifyReport) -> String {
    let class = snake(&serde_json::to_value(r.class).expect("serialises"));
    let mut out = class;
    match &r.dualisability {
        Dualisability::Dualisable { table: t, .. } => out += &format!("; betti {}", table(t)),
        Dualisability::NotDualisable { period, onset } => {
            out += &format!("; betti numbers periodic with period {period} from step {onset}")
        }
        Dualisability::Unknown { cutoff } => out += &format!("; undecided at cutoff {cutoff}"),
    }
    if !r.finite_length {
        out += "; homology of infinite length";
    }
    if let Some(s) = r.shifted_unit {
        out += &format!("; equivalent to Σ^{s} of the unit");
    }
    out
}

pub fn obstruction(o: &Obstruction) -> String {
    match o {
        Obstruction::OddOrder { order } => format!("c vanishes to odd order {order}"),
        Obstruction::NoSquareRoot { constant } => {
            format!("the unit part of c has constant term {constant}, which is not a square in the coefficient field")
        }
    }
}

pub fn module(m: &ModuleInvariants) -> String {
    match m {
        ModuleInvariants::Vector { dim } => format!("k^{dim}"),
        ModuleInvariants::Principal { free_rank, torsion } => {
            let mut parts = Vec::new();
            if *free_rank > 0 {
                parts.push(if *free_rank == 1 {
                    "R".to_string()
                } else {
                    format!("R^{free_rank}")
                });
            }
            parts.extend(torsion.iter().map(|t| format!("R/({t})")));
            parts.join(" ⊕ ")
        }
        ModuleInvariants::General {
            krull_dim,
            k_dim,
            annihilator,
            ..
        } => {
            let len = k_dim.map_or("infinite".to_string(), |d| d.to_string());
            format!(
                "module of dimension {krull_dim}, length {len} over k, annihilator ({})",
                annihilator.join(", ")
            )
        }
    }
}
