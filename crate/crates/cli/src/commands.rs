use std::fs;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};

use casimir_core::central_elements::{
    casimir, det_family, g2_G, g2_det_check, pfaffian_family, CentralElementReport, G2DetMode, PfaffianSpec,
};
use casimir_core::checks::{run_all, Profile};
use casimir_core::exact_math::rational;
use casimir_core::lie_algebras::{algebra, build_l, AlgebraKind, AlgebraRef};
use casimir_core::octonions::omega_skew;
use casimir_core::poly_invariants::{build_invariant, is_invariant, Domain, Family, InvariantGraph};
use casimir_core::uea::{is_central, is_central_brute_force, CentralityVerdict, ElementJson, UEAElement};
use casimir_core::{par, Error, Result};

use crate::args::{DetMode, DomainArg, ElementFamily, PolyFamily};

/// What a command prints and whether its verdicts hold.
pub struct Outcome {
    pub lines: Vec<String>,
    pub verified: bool,
}

impl Outcome {
    fn json(value: &Value, verified: bool) -> Self {
        Outcome { lines: vec![to_json(value)], verified }
    }
}

fn to_json(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn parse_params(text: &str) -> Result<serde_json::Map<String, Value>> {
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(usage("--params must be a JSON object")),
        Err(e) => Err(Error::Parse(format!("--params: {e}"))),
    }
}

fn get_usize(params: &serde_json::Map<String, Value>, key: &str) -> Result<Option<usize>> {
    match params.get(key) {
        None => Ok(None),
        Some(v) => v.as_u64().map(|x| Some(x as usize)).ok_or_else(|| usage(format!("\"{key}\" must be a non-negative integer"))),
    }
}

fn get_list(params: &serde_json::Map<String, Value>, key: &str) -> Result<Option<Vec<usize>>> {
    match params.get(key) {
        None => Ok(None),
        Some(v) => serde_json::from_value::<Vec<usize>>(v.clone())
            .map(Some)
            .map_err(|_| usage(format!("\"{key}\" must be a list of non-negative integers"))),
    }
}

/// 1-based matrix indices to zero-based.
fn zero_based(list: Vec<usize>, what: &str) -> Result<Vec<usize>> {
    list.into_iter()
        .map(|i| i.checked_sub(1).ok_or_else(|| usage(format!("{what} indices are 1-based"))))
        .collect()
}

fn load_algebra(name: &str) -> Result<AlgebraRef> {
    algebra(AlgebraKind::parse(name)?)
}

fn verdict_json(v: &CentralityVerdict, alg: &AlgebraRef) -> Value {
    json!({
        "central": v.central,
        "witness": v.witness.as_ref().map(|(a, r)| json!({
            "generator": a + 1,
            "label": alg.labels()[*a],
            "commutator": r.to_json(),
        })),
    })
}

pub fn algebra_info(name: &str, manifest: Value) -> Result<Outcome> {
    let alg = load_algebra(name)?;
    let l = build_l(&alg)?;
    let jacobi = alg.check_jacobi().is_ok();
    let representation = alg.check_representation().is_ok();
    let equivariant = l.check_equivariance().is_ok();
    let relations: Vec<Value> =
        l.relations().iter().map(|r| json!({ "relation": r.describe(), "holds": r.holds(&l) })).collect();
    let relations_hold = l.failing_relation().is_none();
    let mut result = json!({
        "algebra": alg.name(),
        "dim": alg.dim(),
        "rep_dim": alg.rep_dim(),
        "basis": alg.labels(),
        "structure_constants": alg.structure_constants().nnz(),
        "jacobi": jacobi,
        "representation": representation,
        "antisymmetric": alg.check_antisymmetry(),
        "l_equivariant": equivariant,
        "l_relations": relations,
    });
    if alg.kind() == AlgebraKind::G2 {
        let pairs: Vec<[usize; 2]> = alg.basis_pairs().iter().map(|&(i, j)| [i + 1, j + 1]).collect();
        result["g2_basis"] = json!(pairs);
    }
    let ok = jacobi && representation && equivariant && relations_hold;
    Ok(Outcome::json(&crate::output::document(manifest, result), ok))
}

pub fn omega_table(k: usize, manifest: Value) -> Result<Outcome> {
    let w = omega_skew(k)?;
    let mut lines = vec![to_json(&json!({
        "manifest": manifest,
        "order": k,
        "nonzeros": w.tensor().nnz(),
        "scale": rational::to_string(w.scale()),
    }))];
    for (idx, v) in w.tensor().iter() {
        let idx: Vec<usize> = idx.iter().map(|i| i + 1).collect();
        let val = rational::as_i64(v).map(Value::from).unwrap_or_else(|| json!(rational::to_string(v)));
        lines.push(to_json(&json!({ "idx": idx, "val": val })));
    }
    Ok(Outcome { lines, verified: true })
}

fn poly_family(family: PolyFamily, params: &serde_json::Map<String, Value>, graph: Option<&Path>) -> Result<Family> {
    Ok(match family {
        PolyFamily::Trace => Family::Trace,
        PolyFamily::Pf => Family::Pf {
            indices: get_list(params, "indices")?.map(|l| zero_based(l, "pfaffian")).transpose()?,
        },
        PolyFamily::Det => Family::Det {
            rows: get_list(params, "rows")?.map(|l| zero_based(l, "row")).transpose()?,
            cols: get_list(params, "cols")?.map(|l| zero_based(l, "column")).transpose()?,
        },
        PolyFamily::Ck => Family::Ck { k: get_usize(params, "k")?.ok_or_else(|| usage("ck needs {\"k\": ..}"))? },
        PolyFamily::Sumpf2 => {
            Family::Sumpf2 { k: get_usize(params, "k")?.ok_or_else(|| usage("sumpf2 needs {\"k\": ..}"))? }
        }
        PolyFamily::G => Family::G {
            rows: get_list(params, "rows")?.ok_or_else(|| usage("g needs \"rows\" part sizes"))?,
            cols: get_list(params, "cols")?.ok_or_else(|| usage("g needs \"cols\" part sizes"))?,
        },
        PolyFamily::Graph => {
            let graph: InvariantGraph = match (graph, params.get("graph")) {
                (Some(path), _) => {
                    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("graph document: {e}")))?
                }
                (None, Some(v)) => {
                    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("graph document: {e}")))?
                }
                (None, None) => return Err(usage("graph family needs --graph <file>")),
            };
            Family::Graph { graph }
        }
    })
}

pub fn verify_invariant(
    algebra_name: &str,
    family: PolyFamily,
    params: Option<&str>,
    graph: Option<&Path>,
    domain: Option<DomainArg>,
    manifest: Value,
) -> Result<Outcome> {
    let alg = load_algebra(algebra_name)?;
    let params = parse_params(params.unwrap_or("{}"))?;
    let fam = poly_family(family, &params, graph)?;
    let inv = build_invariant(&fam, alg.rep_dim())?;
    let domain = match domain {
        Some(DomainArg::General) => Domain::General,
        Some(DomainArg::Skew) => Domain::Skew,
        None => inv.domain,
    };
    let v = is_invariant(&alg, &inv.poly, domain)?;
    let result = json!({
        "algebra": alg.name(),
        "family": inv.label,
        "domain": domain,
        "terms": inv.poly.num_terms(),
        "degree": inv.poly.degree(),
        "prefactor": inv.prefactor.as_ref().map(rational::to_string),
        "invariant": v.invariant,
        "witness": v.witness.as_ref().map(|(a, r)| json!({
            "generator": a + 1,
            "label": alg.labels()[*a],
            "residual": r.to_string(),
        })),
    });
    Ok(Outcome::json(&crate::output::document(manifest, result), v.invariant))
}

fn series_algebra(params: &serde_json::Map<String, Value>, default: fn(usize) -> AlgebraKind) -> Result<AlgebraRef> {
    if let Some(name) = params.get("algebra") {
        let name = name.as_str().ok_or_else(|| usage("\"algebra\" must be a string"))?;
        return load_algebra(name);
    }
    let n = get_usize(params, "N")?.ok_or_else(|| usage("give \"N\" or \"algebra\" in --params"))?;
    algebra(default(n))
}

fn report_json(r: &CentralElementReport) -> Value {
    json!({
        "element": r.element.to_json(),
        "report": {
            "family": r.family,
            "parameters": r.parameters,
            "centrality": verdict_json(&r.centrality, r.element.algebra()),
            "metadata": r.metadata,
        },
    })
}

pub fn element_build(family: ElementFamily, params: &str, manifest: Value) -> Result<Outcome> {
    let params = parse_params(params)?;
    let report = match family {
        ElementFamily::Casimir => casimir(&series_algebra(&params, AlgebraKind::So)?)?,
        ElementFamily::Det => {
            let alg = series_algebra(&params, AlgebraKind::Gl)?;
            let k = get_usize(&params, "k")?.unwrap_or(alg.rep_dim());
            det_family(&alg, k)?
        }
        ElementFamily::Pf => pfaffian_family(&series_algebra(&params, AlgebraKind::So)?, PfaffianSpec::Full)?,
        ElementFamily::Sumpf2 => {
            let k = get_usize(&params, "k")?.ok_or_else(|| usage("sumpf2 needs \"k\""))?;
            pfaffian_family(&series_algebra(&params, AlgebraKind::So)?, PfaffianSpec::SumOfSquares(k))?
        }
        ElementFamily::G2G => {
            let rows = get_list(&params, "rows")?.ok_or_else(|| usage("g2G needs \"rows\" part sizes"))?;
            let cols = get_list(&params, "cols")?.unwrap_or_else(|| rows.clone());
            g2_G(&rows, &cols)?
        }
    };
    eprintln!("element built and checked in {:.3} s", report.wall_time.as_secs_f64());
    let mut doc = report_json(&report);
    doc["manifest"] = manifest;
    Ok(Outcome::json(&doc, report.is_central()))
}

pub fn verify_central(input: &Path, brute_force: bool, manifest: Value) -> Result<Outcome> {
    let text = fs::read_to_string(input).map_err(|e| usage(format!("{}: {e}", input.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", input.display())))?;
    let element_value = value.get("element").cloned().unwrap_or(value);
    let doc: ElementJson =
        serde_json::from_value(element_value).map_err(|e| Error::Parse(format!("element document: {e}")))?;
    let element = UEAElement::from_json(&doc)?;
    let v = if brute_force { is_central_brute_force(&element)? } else { is_central(&element)? };
    let result = json!({
        "algebra": element.algebra().name(),
        "terms": element.num_terms(),
        "method": if brute_force { "brute-force" } else { "pbw" },
        "centrality": verdict_json(&v, element.algebra()),
    });
    Ok(Outcome::json(&crate::output::document(manifest, result), v.central))
}

pub fn g2_det(mode: DetMode, generators: &[usize], allow_long: bool, manifest: Value) -> Result<Outcome> {
    let mode = match mode {
        DetMode::Polynomial => G2DetMode::Polynomial,
        DetMode::Spot => {
            if !allow_long {
                return Err(usage("spot mode may run for a long time; pass --allow-long"));
            }
            eprintln!("spot check: symmetrizing the 7x7 determinant and commuting with generators {generators:?}");
            G2DetMode::Spot(zero_based(generators.to_vec(), "generator")?)
        }
    };
    let report = g2_det_check(&mode)?;
    eprintln!("degree-seven check finished in {:.3} s", report.wall_time.as_secs_f64());
    Ok(Outcome::json(&crate::output::document(manifest, report.to_json()), report.verified()))
}

pub fn relation(id: &str, n: Option<usize>, k: Option<usize>, manifest: Value) -> Result<Outcome> {
    use casimir_core::poly_invariants::{charpoly_pfaffian_identity, check_relation, RelationParams};
    let v = match id {
        "charpoly" => charpoly_pfaffian_identity(n.unwrap_or(4))?,
        other => {
            let id: u8 = other.parse().map_err(|_| usage(format!("unknown relation id {other:?}")))?;
            check_relation(id, &RelationParams { n, k })?
        }
    };
    let value = serde_json::to_value(&v).map_err(|e| Error::Consistency(e.to_string()))?;
    Ok(Outcome::json(&crate::output::document(manifest, value), v.holds))
}

pub fn selftest(seed: u64, manifest: Value) -> Result<Outcome> {
    let outcomes = run_all(Profile::Quick, seed, None);
    let mut all = true;
    let checks: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            eprintln!("{:>2} {} {} ({:.2} s)", o.id, if o.passed { "PASS" } else { "FAIL" }, o.name, o.elapsed.as_secs_f64());
            all &= o.passed;
            json!({ "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail })
        })
        .collect();
    Ok(Outcome::json(&crate::output::document(manifest, json!({ "checks": checks, "passed": all })), all))
}

type Workload = (&'static str, fn() -> Result<String>);

fn workloads() -> Vec<Workload> {
    vec![
        ("g_poly([4],[4])", || Ok(casimir_core::poly_invariants::g_poly(&[4], &[4])?.to_string())),
        ("det invariance so6", || {
            let alg = algebra(AlgebraKind::So(6))?;
            let all: Vec<usize> = (0..6).collect();
            let p = casimir_core::poly_invariants::det_poly(&all, &all)?;
            Ok(is_invariant(&alg, &p, Domain::General)?.invariant.to_string())
        }),
        ("Pf L so6 centrality", || {
            let r = pfaffian_family(&algebra(AlgebraKind::So(6))?, PfaffianSpec::Full)?;
            Ok(format!("{}|{}", r.element, r.is_central()))
        }),
    ]
}

pub fn bench(repeat: usize, manifest: Value) -> Result<Outcome> {
    let pool = par::current_threads();
    let mut rows = Vec::new();
    let mut agree_all = true;
    for (name, work) in workloads() {
        let mut digests = Vec::new();
        for threads in [1, pool] {
            let start = Instant::now();
            let mut out = String::new();
            for _ in 0..repeat.max(1) {
                out = par::with_threads(threads, work)?;
            }
            let per_run = start.elapsed().as_secs_f64() / repeat.max(1) as f64;
            eprintln!("{name:<24} threads={threads:<3} {per_run:.4} s/run");
            digests.push(out);
        }
        let agree = digests.windows(2).all(|w| w[0] == w[1]);
        agree_all &= agree;
        rows.push(json!({ "workload": name, "results_agree": agree }));
    }
    let result = json!({ "parallel_build": par::is_parallel(), "workloads": rows });
    Ok(Outcome::json(&crate::output::document(manifest, result), agree_all))
}
