//! Symbolic description of Spec of the completed local ring at a prime.

use serde::Serialize;

use super::prime::PrimeIdeal;
use crate::rings::{RegularityClass, Ring, RingDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub description: String,
    /// `dim A_p`, which completion preserves.
    pub krull_dimension: i64,
    pub note: String,
}

fn display(desc: &RingDescriptor) -> String {
    match desc {
        RingDescriptor::Rationals {} => "ℚ".into(),
        RingDescriptor::PrimeField { p } => format!("𝔽_{p}"),
        RingDescriptor::Integers {} => "ℤ".into(),
        RingDescriptor::Polynomial { base, vars, .. } => {
            format!("{}[{}]", display(base), vars.join(","))
        }
        RingDescriptor::Quotient { base, relations } => {
            format!("{}/({})", display(base), relations.join(", "))
        }
        RingDescriptor::FractionField { base } => format!("Frac({})", display(base)),
        RingDescriptor::TruncatedCompletion { base, ideal, .. } => {
            format!("completion of {} at ({})", display(base), ideal.join(","))
        }
    }
}

fn coefficient_field(desc: &RingDescriptor) -> String {
    match desc {
        RingDescriptor::Polynomial { base, .. } => display(base),
        RingDescriptor::Quotient { base, .. }
        | RingDescriptor::TruncatedCompletion { base, .. } => coefficient_field(base),
        other => display(other),
    }
}

/// `K[[t]]` when `p` is generated by variables, with `K` the field of the others.
fn power_series_model(ring: &Ring, p: &PrimeIdeal) -> String {
    let gens: Vec<String> = p
        .generators()
        .iter()
        .filter(|g| !ring.is_zero(g))
        .map(|g| ring.format(g))
        .collect();
    let vars: Vec<String> = ring.poly_ctx().map(|c| c.vars.clone()).unwrap_or_default();
    let k = coefficient_field(ring.descriptor());
    if gens.iter().all(|g| vars.contains(g)) {
        let rest: Vec<&String> = vars.iter().filter(|v| !gens.contains(v)).collect();
        let field = if rest.is_empty() {
            k
        } else {
            format!(
                "{k}({})",
                rest.iter()
                    .map(|s| s.as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        };
        format!("{field}[[{}]]", gens.join(","))
    } else {
        let h = p.height();
        let ts: Vec<String> = (1..=h).map(|i| format!("t{i}")).collect();
        format!("k(p)[[{}]]", ts.join(","))
    }
}

fn article(h: i64) -> &'static str {
    let s = h.to_string();
    if s.starts_with('8') || h == 11 || h == 18 {
        "an"
    } else {
        "a"
    }
}

pub fn spectrum_report(p: &PrimeIdeal) -> SpectrumReport {
    let ring = p.ring();
    let h = p.height();
    let name = display(ring.descriptor());
    let description = match ring.descriptor() {
        RingDescriptor::Integers {} | RingDescriptor::TruncatedCompletion { .. }
            if ring.poly_ctx().is_none() && h == 1 =>
        {
            let q = p.format();
            let q = q.trim_start_matches('(').trim_end_matches(')').to_string();
            format!("Spec ℤ_{q} = {{(0),({q})}}: two points")
        }
        _ if ring.is_field() || (h == 0 && ring.poly_ctx().is_none()) => {
            let field = match ring.descriptor() {
                RingDescriptor::Integers {} => "ℚ".to_string(),
                _ => name.clone(),
            };
            format!("Spec {field} = {{(0)}}: one point")
        }
        _ if h == 0 => format!(
            "Spec of the completion of {name} at {} = {{{}}}: one point (artinian)",
            p.format(),
            p.format()
        ),
        _ if ring.regularity_class() == RegularityClass::Regular => format!(
            "Spec of {} {h}-dimensional complete regular local ring ({})",
            article(h),
            power_series_model(ring, p)
        ),
        _ => format!(
            "Spec of the completion of {name} at {}: a complete local ring of dimension {h}",
            p.format()
        ),
    };
    SpectrumReport {
        description,
        krull_dimension: h,
        note: format!("completion preserves dimension: dim A_p = dim of its completion = {h}"),
    }
}
