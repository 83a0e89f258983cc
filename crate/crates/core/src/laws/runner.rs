//! Seeded execution of the law suites, with shrinking of failing cases.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::generators::{
    random_compact_invariants, random_dualisable, random_dualisable_invariants, random_invariants,
    random_module, random_split_complex, random_thick_complex,
};
use super::*;
use crate::complexes::koszul;
use crate::error::Error;
use crate::gamma::{golden_instances, unit};
use crate::pid_model::PieceKind;

pub const SUITES: [&str; 9] = [
    "thick_closure",
    "betti_oracle",
    "dual_tensor_compact",
    "double_dual",
    "gm",
    "nu",
    "functional_compact_finite",
    "regularity_bound",
    "kproj",
];

type Random = fn(&mut ChaCha8Rng, usize, usize) -> Result<LawCase>;

struct Suite {
    fixed: fn() -> Result<Vec<LawCase>>,
    random: Option<(usize, usize, Random)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseSummary {
    pub id: String,
    pub law: &'static str,
    pub verdict: Verdict,
    pub witness_digest: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub id: String,
    /// Size of the smallest regenerated instance that still fails.
    pub shrunk_size: Option<usize>,
    pub case: LawCase,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub cases: Vec<CaseSummary>,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub seed: u64,
    pub note: &'static str,
    pub suites: Vec<SuiteReport>,
    pub failed: usize,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// FNV-1a over the serialised witness.
fn digest(case: &LawCase) -> String {
    let text = serde_json::to_string(&case.witness).expect("witnesses serialise");
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}

fn case_rng(seed: u64, suite: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((suite as u64) << 32) | index as u64);
    rng
}

fn errored(law: &'static str, e: Error) -> LawCase {
    LawCase {
        law,
        instance: Manifest::default(),
        verdict: Verdict::Fail,
        witness: BTreeMap::new(),
        note: Some(format!("engine error: {e}")),
    }
}

fn suite(name: &str) -> Option<Suite> {
    Some(match name {
        "thick_closure" => Suite {
            fixed: || {
                golden_instances()
                    .iter()
                    .map(|p| law_thick_closure(&unit(p), None))
                    .collect()
            },
            random: Some((100, 2, thick_closure_case)),
        },
        "betti_oracle" => Suite {
            fixed: || Ok(vec![]),
            random: Some((100, 3, betti_oracle_case)),
        },
        "dual_tensor_compact" => Suite {
            fixed: dual_tensor_fixed,
            random: Some((200, 3, |rng, size, _| {
                let c = random_compact_invariants(rng, size);
                let x = random_dualisable_invariants(rng, size);
                Ok(law_dual_tensor_compact_inv(&c, &x))
            })),
        },
        "double_dual" => Suite {
            fixed: double_dual_fixed,
            random: Some((50, 2, |rng, size, _| {
                let qxy = &golden_instances()[2];
                law_double_dual(&random_dualisable(rng, qxy, size)?, None)
            })),
        },
        "gm" => Suite {
            fixed: gm_fixed,
            random: Some((100, 3, |rng, size, _| law_gm(&random_invariants(rng, size)))),
        },
        "nu" => Suite {
            fixed: nu_fixed,
            random: Some((30, 1, |rng, size, _| {
                let a = &golden_instances()[1];
                let ring = a.ring();
                let x = random_thick_complex(rng, ring, size)?;
                let y = random_thick_complex(rng, ring, size)?;
                let z = random_thick_complex(rng, ring, size)?;
                law_nu(&x, &y, &z)
            })),
        },
        "functional_compact_finite" => Suite {
            fixed: functional_fixed,
            random: Some((30, 2, |rng, size, _| {
                let z = Ring::integers();
                let x = random_thick_complex(rng, &z, 1)?;
                let m = rng.gen_range(1..=4);
                let family = (0..m)
                    .map(|_| random_split_complex(rng, &z, size))
                    .collect::<Result<Vec<_>>>()?;
                law_functional_compact_finite(&x, &family)
            })),
        },
        "regularity_bound" => Suite {
            fixed: regularity_fixed,
            random: Some((40, 2, |rng, size, index| {
                let g = golden_instances();
                let p = if index < 20 { &g[2] } else { &g[0] };
                law_regularity_bound(p, &random_module(rng, p.ring(), size))
            })),
        },
        "kproj" => Suite {
            fixed: kproj_fixed,
            random: None,
        },
        _ => return None,
    })
}

fn thick_closure_case(rng: &mut ChaCha8Rng, size: usize, index: usize) -> Result<LawCase> {
    let g = golden_instances();
    let p = &g[index % g.len()];
    let x = random_thick_complex(rng, p.ring(), size)?;
    law_thick_closure(&GammaObject::from_complex(x, p)?, None)
}

fn betti_oracle_case(rng: &mut ChaCha8Rng, size: usize, _: usize) -> Result<LawCase> {
    let p = &golden_instances()[0];
    let x = random_split_complex(rng, p.ring(), size)?;
    law_betti_oracle(&x, p)
}

fn inv(s: &[&str]) -> TorsionInvariants {
    TorsionInvariants::parse_list(s).expect("fixed invariants parse")
}

fn dual_tensor_fixed() -> Result<Vec<LawCase>> {
    let mut out = vec![
        law_dual_tensor_compact_inv(&inv(&["FC(1)@0"]), &inv(&["P@1"])),
        law_dual_tensor_compact_inv(&TorsionInvariants::zero(), &inv(&["P@1"])),
    ];
    for p in golden_instances().iter().take(4) {
        let ring = p.ring();
        let k = GammaObject::new(Carrier::cyclic(ring, p.generators(), 0), p)?;
        out.push(law_dual_tensor_compact(&k, &unit(p), None)?);
    }
    Ok(out)
}

fn double_dual_fixed() -> Result<Vec<LawCase>> {
    let mut out = Vec::new();
    for p in golden_instances().iter().take(4) {
        out.push(law_double_dual(&unit(p), None)?);
    }
    let z5 = &golden_instances()[0];
    let z = z5.ring();
    for gens in [["5"], ["25"], ["50"]] {
        let x = GammaObject::new(Carrier::cyclic(z, &[z.parse(gens[0])?], 0), z5)?;
        out.push(law_double_dual(&x, None)?);
        out.push(law_double_dual(&x.direct_sum(&unit(z5).shift(1))?, None)?);
    }
    Ok(out)
}

fn gm_fixed() -> Result<Vec<LawCase>> {
    let kinds = [
        PieceKind::FinCyclic(1),
        PieceKind::FinCyclic(3),
        PieceKind::Pruefer,
        PieceKind::LocalFree(1),
        PieceKind::LocalFree(2),
        PieceKind::AdicFree(1),
        PieceKind::AdicFree(2),
    ];
    let mut out = Vec::new();
    for d in -1..=1 {
        for k in kinds {
            out.push(law_gm(&TorsionInvariants::single(d, k))?);
        }
    }
    Ok(out)
}

fn qx_koszul() -> FreeComplex {
    let a = golden_instances()[1].ring().clone();
    koszul(&a, &[a.parse("x").expect("x parses")])
}

fn nu_fixed() -> Result<Vec<LawCase>> {
    let k = qx_koszul();
    let u = FreeComplex::unit(&k.ring);
    Ok(vec![law_nu(&u, &k, &k.shift(1))?, law_nu(&k, &k, &k)?])
}

fn functional_fixed() -> Result<Vec<LawCase>> {
    let k = qx_koszul();
    Ok(vec![
        law_functional_compact_finite(&k, std::slice::from_ref(&k))?,
        law_functional_compact_finite(&k, &[k.clone(), k.shift(1), k.shift(-2)])?,
    ])
}

fn regularity_fixed() -> Result<Vec<LawCase>> {
    let g = golden_instances();
    let mut out = Vec::new();
    for p in [&g[0], &g[2], &g[3]] {
        out.push(law_regularity_bound(
            p,
            &ModulePresentation::free(p.ring(), 2),
        )?);
        out.push(law_regularity_bound(
            p,
            &ModulePresentation::cyclic(p.generators()),
        )?);
    }
    Ok(out)
}

pub const KPROJ_CUTOFF: usize = 32;

fn kproj_fixed() -> Result<Vec<LawCase>> {
    let mut out = Vec::new();
    for (relation, cutoff, expect_one) in [("x^2", KPROJ_CUTOFF, true), ("x^3", 16, false)] {
        let a = Ring::polynomial(0, &["x"])?.quotient(&[relation])?;
        let p = PrimeIdeal::parse(&a, &["x"])?;
        let k = ModulePresentation::cyclic(p.generators());
        let carrier = Carrier::module(&a, k.clone(), 0);
        let mut instance = Manifest::new(&a, Some(&p))
            .with_carrier("M", &carrier)
            .with_carrier("N", &carrier);
        instance.params.cutoff = Some(cutoff as i64);
        let report = kproj_demo(&a, &k, &k, cutoff)?;
        let ok = report
            .ranks
            .values()
            .all(|v| if expect_one { *v == 1 } else { *v > 0 });
        out.push(LawCase::holds(
            "kproj",
            instance,
            ok,
            BTreeMap::from([
                ("report", to_value(&report)),
                ("expected", json!(if expect_one { "1" } else { "> 0" })),
            ]),
        ));
    }
    Ok(out)
}

fn record(report: &mut SuiteReport, id: String, case: LawCase, shrunk: Option<usize>) {
    match case.verdict {
        Verdict::Pass => report.passed += 1,
        Verdict::Skipped => report.skipped += 1,
        Verdict::Fail => report.failed += 1,
    }
    report.cases.push(CaseSummary {
        id: id.clone(),
        law: case.law,
        verdict: case.verdict,
        witness_digest: digest(&case),
    });
    if case.verdict == Verdict::Fail {
        report.failures.push(Failure {
            id,
            shrunk_size: shrunk,
            case,
        });
    }
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    let index = SUITES.iter().position(|s| *s == name).ok_or_else(|| {
        Error::Usage(format!(
            "unknown suite \"{name}\"; known: {}",
            SUITES.join(", ")
        ))
    })?;
    let spec = suite(name).expect("every listed suite is defined");
    let mut report = SuiteReport {
        name: SUITES[index],
        passed: 0,
        failed: 0,
        skipped: 0,
        cases: Vec::new(),
        failures: Vec::new(),
    };
    let law = SUITES[index];
    let fixed = (spec.fixed)().unwrap_or_else(|e| vec![errored(law, e)]);
    for (i, case) in fixed.into_iter().enumerate() {
        record(&mut report, format!("{name}/fixed/{i}"), case, None);
    }
    if let Some((count, size, generate)) = spec.random {
        for i in 0..count {
            let run = |s: usize| {
                generate(&mut case_rng(seed, index, i), s, i).unwrap_or_else(|e| errored(law, e))
            };
            let case = run(size);
            let (case, shrunk) = if case.verdict == Verdict::Fail {
                // the smallest size at which the same stream still fails
                match (1..size)
                    .map(|s| (s, run(s)))
                    .find(|(_, c)| c.verdict == Verdict::Fail)
                {
                    Some((s, c)) => (c, Some(s)),
                    None => (case, Some(size)),
                }
            } else {
                (case, None)
            };
            record(&mut report, format!("{name}/{seed}/{i}"), case, shrunk);
        }
    }
    Ok(report)
}

/// Runs one suite, or all of them in a fixed order.
pub fn run_laws(seed: u64, only: Option<&str>) -> Result<LawReport> {
    let names: Vec<&str> = match only {
        Some(s) => vec![s],
        None => SUITES.to_vec(),
    };
    let suites = names
        .iter()
        .map(|n| run_suite(n, seed))
        .collect::<Result<Vec<_>>>()?;
    let failed = suites.iter().map(|s| s.failed).sum();
    Ok(LawReport {
        seed,
        note: INVARIANT_LEVEL_NOTE,
        suites,
        failed,
    })
}
