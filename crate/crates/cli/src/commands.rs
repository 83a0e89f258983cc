use std::collections::BTreeMap;
use std::fmt::Write;

use anyhow::{anyhow, bail, Context, Result};
use locdual_core::completion::{
    gm_check as gm, hensel_quadratic, square_matches, HenselOutcome, HenselReport,
};
use locdual_core::complexes::{homology as cohomology, FreeComplex};
use locdual_core::gamma::{
    classify as classify_object, gtensor, spectrum_report, sw_dual, Classification,
};
use locdual_core::laws::{kproj_demo as kproj, run_laws};
use locdual_core::manifest::{Manifest, ObjectSpec};
use locdual_core::pid_model::{betti_from_invariants, classify_inv, split_invariants, tensor_inv};
use locdual_core::resolutions::{finiteness_decision, BettiDecision, Carrier, Piece};
use locdual_core::rings::PrincipalKind;
use locdual_core::Error;
use serde_json::{json, Value};

use crate::render;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Computed,
    /// Some verdict is unknown at the cutoff.
    Unknown,
    /// `hensel` found no factorisation over the coefficient field.
    Irreducible,
    /// `laws run` had a failing case.
    LawFailed,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Computed => 0,
            Status::Unknown => 2,
            Status::Irreducible => 3,
            Status::LawFailed => 4,
        }
    }
}

pub struct Outcome {
    pub results: Value,
    pub text: String,
    pub status: Status,
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialise")
}

fn objects(m: &Manifest) -> Result<&BTreeMap<String, ObjectSpec>> {
    if m.objects.is_empty() {
        bail!("the manifest has no objects");
    }
    Ok(&m.objects)
}

fn is_carrier(spec: &ObjectSpec) -> bool {
    matches!(spec, ObjectSpec::Carrier(_))
}

pub fn classify(m: &Manifest) -> Result<Outcome> {
    let mut results = serde_json::Map::new();
    let mut text = String::new();
    let mut status = Status::Computed;
    for (name, spec) in objects(m)? {
        if is_carrier(spec) {
            let x = m
                .gamma_object(name)
                .with_context(|| format!("object {name}"))?;
            let r = classify_object(&x, m.params.cutoff)?;
            if r.class == Classification::Unknown {
                status = Status::Unknown;
            }
            writeln!(text, "{name}: {}", render::classify(&r))?;
            results.insert(name.clone(), to_value(&r));
        } else {
            let x = m.invariants(name)?;
            let class = classify_inv(&x);
            let betti = betti_from_invariants(&x);
            writeln!(
                text,
                "{name}: {}; betti {}",
                render::snake(&to_value(&class)),
                render::table(&betti)
            )?;
            results.insert(name.clone(), json!({"class": class, "betti": betti}));
        }
    }
    Ok(Outcome {
        results: Value::Object(results),
        text,
        status,
    })
}

pub fn betti(m: &Manifest) -> Result<Outcome> {
    let mut results = serde_json::Map::new();
    let mut text = String::new();
    let mut status = Status::Computed;
    for (name, spec) in objects(m)? {
        if is_carrier(spec) {
            let x = m
                .gamma_object(name)
                .with_context(|| format!("object {name}"))?;
            let d = finiteness_decision(&x.carrier, &x.prime, m.params.cutoff)?;
            if matches!(d, BettiDecision::UnknownAtCutoff { .. }) {
                status = Status::Unknown;
            }
            writeln!(text, "{name}: {}", render::decision(&d))?;
            results.insert(name.clone(), to_value(&d));
        } else {
            let t = betti_from_invariants(&m.invariants(name)?);
            writeln!(text, "{name}: finite {}", render::table(&t))?;
            results.insert(name.clone(), to_value(&t));
        }
    }
    Ok(Outcome {
        results: Value::Object(results),
        text,
        status,
    })
}

/// A free complex whose cohomology is that of the carrier: each module
/// `coker(R^r -> R^g)` in degree `d` becomes `R^r -> R^g` in degrees `d-1, d`.
fn presentation_complex(x: &Carrier) -> Result<FreeComplex> {
    let mut acc = FreeComplex::zero(&x.ring);
    for p in &x.pieces {
        let c = match p {
            Piece::Complex(c) => c.clone(),
            Piece::Module {
                presentation,
                degree,
            } => FreeComplex::two_term(&x.ring, degree - 1, presentation.relations.clone()),
        };
        acc = acc.direct_sum(&c)?;
    }
    Ok(acc)
}

pub fn homology(m: &Manifest) -> Result<Outcome> {
    let mut results = serde_json::Map::new();
    let mut text = String::new();
    for (name, spec) in objects(m)? {
        if !is_carrier(spec) {
            bail!("homology needs carrier objects; {name} is given by invariants");
        }
        let x = m.carrier(name).with_context(|| format!("object {name}"))?;
        let h = cohomology(&presentation_complex(&x)?)?;
        writeln!(text, "{name}:")?;
        if h.is_zero() {
            writeln!(text, "  zero")?;
        }
        for (n, inv) in &h.degrees {
            writeln!(text, "  H^{n} = {}", render::module(inv))?;
        }
        results.insert(name.clone(), to_value(&h));
    }
    Ok(Outcome {
        results: Value::Object(results),
        text,
        status: Status::Computed,
    })
}

fn two_objects(m: &Manifest) -> Result<[(&String, &ObjectSpec); 2]> {
    let objs: Vec<_> = objects(m)?.iter().collect();
    match objs.as_slice() {
        [a, b] => Ok([*a, *b]),
        _ => bail!("tensor needs exactly two objects, found {}", objs.len()),
    }
}

pub fn tensor(m: &Manifest) -> Result<Outcome> {
    let [(a, sa), (b, sb)] = two_objects(m)?;
    let (results, text) = match (is_carrier(sa), is_carrier(sb)) {
        (true, true) => {
            let t = gtensor(&m.gamma_object(a)?, &m.gamma_object(b)?)?;
            let r = classify_object(&t, m.params.cutoff)?;
            let text = format!("{a} ⊗ {b}: {}\n", render::classify(&r));
            (
                json!({"product": t.carrier.to_specs(), "classify": r}),
                text,
            )
        }
        (false, false) => {
            let t = tensor_inv(&m.invariants(a)?, &m.invariants(b)?)?;
            let class = classify_inv(&t);
            let text = format!("{a} ⊗ {b} = {t}: {}\n", render::snake(&to_value(&class)));
            (json!({"product": t, "class": class}), text)
        }
        _ => bail!("tensor needs two carriers or two invariant lists"),
    };
    Ok(Outcome {
        results,
        text,
        status: Status::Computed,
    })
}

pub fn dual(m: &Manifest) -> Result<Outcome> {
    let mut results = serde_json::Map::new();
    let mut text = String::new();
    let mut status = Status::Computed;
    for (name, spec) in objects(m)? {
        if !is_carrier(spec) {
            bail!("dual needs carrier objects; {name} is given by invariants");
        }
        let x = m
            .gamma_object(name)
            .with_context(|| format!("object {name}"))?;
        let before = x.betti(m.params.cutoff)?;
        let entry = match &before {
            BettiDecision::Finite { .. } => {
                let d = sw_dual(&x, m.params.cutoff)?;
                let after = d.betti(m.params.cutoff)?;
                writeln!(text, "D({name}): {}", render::decision(&after))?;
                json!({"verdict": "dualisable", "dual": d.carrier.to_specs(), "betti": after})
            }
            BettiDecision::PeriodicInfinite { period, onset } => {
                writeln!(
                    text,
                    "D({name}): not dualisable (period {period} from step {onset})"
                )?;
                json!({"verdict": "not_dualisable", "betti": before})
            }
            BettiDecision::UnknownAtCutoff { cutoff } => {
                status = Status::Unknown;
                writeln!(text, "D({name}): unknown at cutoff {cutoff}")?;
                json!({"verdict": "unknown", "betti": before})
            }
        };
        results.insert(name.clone(), entry);
    }
    Ok(Outcome {
        results: Value::Object(results),
        text,
        status,
    })
}

pub fn gm_check(m: &Manifest) -> Result<Outcome> {
    let mut results = serde_json::Map::new();
    let mut text = String::new();
    for (name, spec) in objects(m)? {
        let x = if is_carrier(spec) {
            // a complex over a Euclidean ring has a PID-model decomposition at p
            let c = m.carrier(name)?;
            let p = m.prime_ideal()?;
            let euclidean = c.ring.principal_kind() == Some(PrincipalKind::Euclidean);
            match (euclidean, p.generators()) {
                (true, [g]) => split_invariants(&presentation_complex(&c)?, g)?,
                _ => bail!("gm-check needs invariants, or complexes over a Euclidean ring at a principal prime ({name})"),
            }
        } else {
            m.invariants(name)?
        };
        let r = gm(&x);
        writeln!(
            text,
            "{name} = {}: {}",
            r.input,
            if r.pass { "pass" } else { "FAIL" }
        )?;
        for c in &r.checks {
            writeln!(text, "  {}: {} vs {}", c.identity, c.lhs, c.rhs)?;
        }
        results.insert(name.clone(), to_value(&r));
    }
    Ok(Outcome {
        results: Value::Object(results),
        text,
        status: Status::Computed,
    })
}

pub const DEFAULT_PRECISION: u32 = 16;

pub fn hensel(m: &Manifest) -> Result<Outcome> {
    let ring = m.ring()?;
    let c = m
        .params
        .c
        .as_deref()
        .ok_or_else(|| anyhow!("hensel needs params.c, the constant term of x^2 - c"))?;
    let c = ring.parse(c).context("params.c")?;
    let n = m.params.precision.unwrap_or(DEFAULT_PRECISION);
    let out = hensel_quadratic(&ring, &c, n)?;
    let report = out.report(&ring, &c);
    let (status, checked, text) = match &out {
        HenselOutcome::Factors { g, .. } => {
            let ok = square_matches(&ring, &c, g, n);
            let text = match &report {
                HenselReport::Factors {
                    polynomial,
                    factors,
                    ..
                } => {
                    format!(
                        "{polynomial} = ({}) ({}) mod degree {n}\n",
                        factors[0], factors[1]
                    )
                }
                _ => unreachable!("factors give a factor report"),
            };
            (Status::Computed, Some(ok), text)
        }
        HenselOutcome::IrreducibleOverField { obstruction } => (
            Status::Irreducible,
            None,
            format!(
                "x^2 - ({}) is irreducible: {}\n",
                ring.format(&c),
                render::obstruction(obstruction)
            ),
        ),
    };
    let mut results = to_value(&report);
    if let Some(ok) = checked {
        results["product_check"] = json!(ok);
    }
    Ok(Outcome {
        results,
        text,
        status,
    })
}

pub const DEFAULT_KPROJ_CUTOFF: i64 = 32;

fn single_module(m: &Manifest, name: &str) -> Result<locdual_core::grobner::ModulePresentation> {
    let c = m.carrier(name)?;
    match c.pieces.as_slice() {
        [Piece::Module { presentation, .. }] => Ok(presentation.clone()),
        _ => bail!("kproj-demo needs {name} to be a single module"),
    }
}

pub fn kproj_demo(m: &Manifest) -> Result<Outcome> {
    let ring = m.ring()?;
    let mm = single_module(m, "M")?;
    let nn = if m.objects.contains_key("N") {
        single_module(m, "N")?
    } else {
        mm.clone()
    };
    let cutoff = m.params.cutoff.unwrap_or(DEFAULT_KPROJ_CUTOFF);
    if cutoff < 0 {
        bail!("cutoff must be nonnegative");
    }
    let r = kproj(&ring, &mm, &nn, cutoff as usize)?;
    let mut text = String::from("degree rank\n");
    for (d, v) in &r.ranks {
        writeln!(text, "{d:>6} {v}")?;
    }
    if let Some(p) = r.periodicity {
        writeln!(
            text,
            "M has periodic syzygies: period {} from step {}",
            p.period, p.onset
        )?;
    }
    Ok(Outcome {
        results: to_value(&r),
        text,
        status: Status::Computed,
    })
}

pub fn spectrum(m: &Manifest) -> Result<Outcome> {
    let r = spectrum_report(&m.prime_ideal()?);
    let text = format!("{}\n{}\n", r.description, r.note);
    Ok(Outcome {
        results: to_value(&r),
        text,
        status: Status::Computed,
    })
}

pub fn laws_run(m: &Manifest, suite: Option<&str>) -> Result<Outcome> {
    let seed = m.params.seed.unwrap_or(0);
    let r = run_laws(seed, suite).map_err(|e| match e {
        Error::Usage(s) => anyhow!(s),
        other => anyhow!(other),
    })?;
    let mut text = format!("seed {seed}; {}\n", r.note);
    for s in &r.suites {
        writeln!(
            text,
            "{:<28} {:>4} passed {:>3} skipped {:>3} failed",
            s.name, s.passed, s.skipped, s.failed
        )?;
        for f in &s.failures {
            writeln!(text, "  {} (shrunk size {:?}):", f.id, f.shrunk_size)?;
            writeln!(text, "{}", serde_json::to_string_pretty(&f.case.instance)?)?;
        }
    }
    let status = if r.all_passed() {
        Status::Computed
    } else {
        Status::LawFailed
    };
    Ok(Outcome {
        results: to_value(&r),
        text,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use locdual_core::rings::Ring;

    #[test]
    fn presentation_complex_of_a_cyclic_module() {
        let z = Ring::integers();
        let c = Carrier::cyclic(&z, &[z.from_i64(12)], 2);
        let x = presentation_complex(&c).unwrap();
        assert_eq!((x.lo(), x.hi()), (1, 2));
        let h = cohomology(&x).unwrap();
        assert_eq!(h.degrees.keys().copied().collect::<Vec<_>>(), vec![2]);
    }
}
