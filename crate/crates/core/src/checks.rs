//! The end-to-end verification suite. Each check returns a single
//! pass/fail outcome with a one-line detail; the CLI `selftest` runs the
//! quick profile and the acceptance test target runs the full one.

use std::time::{Duration, Instant};

use num_traits::Zero;

use crate::central_elements::{casimir, det_family, g2_G, g2_det_check, pfaffian_family, G2DetMode, PfaffianSpec};
use crate::error::Result;
use crate::exact_math::rational::{factorial, int};
use crate::lie_algebras::{algebra, build_l, AlgebraKind, AlgebraRef, LinearRelation};
use crate::octonions::{omega3, omega7_alternator_sign, omega_skew, Octonion, IMAG};
use crate::par;
use crate::poly_invariants::{
    c_k_poly, charpoly_pfaffian_identity, check_relation, compile_graph, det_poly, g_poly, is_invariant,
    pf_full_poly, pfaffian_poly, random_graph, sum_pf_sq_poly, trace_poly, Domain, Edge, InvariantGraph,
    MPolynomial, RelationParams, Vertex,
};
use crate::sampling::{admissible_variables, random_poly, random_vector, random_word, rng};
use crate::uea::{brute_force_normalize, equivariance_check, is_central_brute_force, pbw_normalize};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// Reduced sizes and sample counts; a few seconds in total.
    Quick,
    /// Every case of the acceptance list.
    Full,
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

fn kind(k: AlgebraKind) -> Result<AlgebraRef> {
    algebra(k)
}

fn run(id: u8, name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckOutcome {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    CheckOutcome { id, name, passed, detail, elapsed: start.elapsed() }
}

/// Collects the first failure message, or `None` when every case passes.
struct Failures(Option<String>);

impl Failures {
    fn new() -> Self {
        Failures(None)
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.0.is_none() {
            self.0 = Some(what());
        }
    }

    fn finish(self, summary: String) -> (bool, String) {
        match self.0 {
            None => (true, summary),
            Some(f) => (false, f),
        }
    }
}

pub fn structure_soundness(profile: Profile) -> CheckOutcome {
    run(1, "structure soundness", || {
        let mut kinds: Vec<AlgebraKind> = (1..=3).map(AlgebraKind::Gl).collect();
        let max_so = if profile == Profile::Full { 6 } else { 4 };
        kinds.extend((2..=max_so).map(AlgebraKind::So));
        kinds.push(AlgebraKind::G2);
        let mut f = Failures::new();
        for k in &kinds {
            let alg = kind(*k)?;
            f.check(alg.check_antisymmetry(), || format!("{} bracket not antisymmetric", alg.name()));
            if let Err(t) = alg.check_jacobi() {
                f.check(false, || format!("{} Jacobi fails at {t:?}", alg.name()));
            }
            if let Err(p) = alg.check_representation() {
                f.check(false, || format!("{} representation fails at {p:?}", alg.name()));
            }
        }
        let g2 = kind(AlgebraKind::G2)?;
        f.check(g2.dim() == 14, || format!("g2 has dimension {}", g2.dim()));
        Ok(f.finish(format!("{} algebras, g2 dimension {}", kinds.len(), g2.dim())))
    })
}

pub fn l_equivariance(profile: Profile) -> CheckOutcome {
    run(2, "equivariance of L", || {
        let max_so = if profile == Profile::Full { 6 } else { 4 };
        let mut kinds: Vec<AlgebraKind> = (2..=max_so).map(AlgebraKind::So).collect();
        kinds.push(AlgebraKind::G2);
        let mut f = Failures::new();
        for k in &kinds {
            let alg = kind(*k)?;
            if let Err((a, i, j)) = build_l(&alg)?.check_equivariance() {
                f.check(false, || format!("{}: [v_{}, L_{}{}] mismatch", alg.name(), a + 1, i + 1, j + 1));
            }
        }
        Ok(f.finish(format!("so_2..so_{max_so} and g2, all basis elements and index pairs")))
    })
}

pub fn octonion_convention(_profile: Profile) -> CheckOutcome {
    run(3, "octonion convention", || {
        let mut f = Failures::new();
        let units: Vec<Octonion> = (0..8).map(Octonion::unit).collect();
        for x in &units {
            for y in &units {
                f.check(&(x * x) * y == x * &(x * y), || format!("left alternativity fails for {x}, {y}"));
                f.check(&(y * x) * x == y * &(x * x), || format!("right alternativity fails for {x}, {y}"));
                f.check((x * y).norm() == &x.norm() * &y.norm(), || format!("norm not multiplicative for {x}, {y}"));
                for z in &units {
                    f.check(z * &(x * &(z * y)) == &(&(z * x) * z) * y, || format!("Moufang fails for {x}, {y}, {z}"));
                }
            }
        }
        // Sums of units exercise the cross terms the basis alone cannot.
        let sums: Vec<Octonion> = (0..8).map(|i| &units[i] + &units[(3 * i + 1) % 8]).collect();
        for x in &sums {
            for y in &sums {
                f.check(&(x * x) * y == x * &(x * y), || format!("alternativity fails for {x}, {y}"));
                f.check((x * y).norm() == &x.norm() * &y.norm(), || format!("norm not multiplicative for {x}, {y}"));
            }
        }
        let w3 = omega3();
        let signed = w3.tensor().iter().all(|(_, v)| *v == int(1) || *v == int(-1));
        f.check(w3.tensor().nnz() == 42 && signed, || format!("omega3 has {} nonzeros", w3.tensor().nnz()));
        f.check(omega_skew(5)?.is_zero(), || "omega_skew(5) is nonzero".into());
        f.check(omega_skew(6)?.is_zero(), || "omega_skew(6) is nonzero".into());
        let sign = omega7_alternator_sign();
        f.check(sign.is_some(), || "omega_skew(7) is not proportional to the alternator".into());
        Ok(f.finish(format!("omega3 42 entries, omega5 = omega6 = 0, omega7 = {} * eps7", sign.unwrap_or(0))))
    })
}

pub fn g2_linear_relation(_profile: Profile) -> CheckOutcome {
    run(4, "g2 linear relation", || {
        let alg = kind(AlgebraKind::G2)?;
        let l = build_l(&alg)?;
        let w = omega3();
        let mut f = Failures::new();
        for k in 0..IMAG {
            let rel = LinearRelation::OmegaContraction { l: k };
            f.check(rel.holds(&l), || format!("sum omega_ij{} L_ij != 0 as vectors", k + 1));
            let mut m = crate::lie_algebras::RatMatrix::zeros(IMAG);
            for i in 0..IMAG {
                for j in 0..IMAG {
                    let c = w.get(&[i, j, k]);
                    if !c.is_zero() {
                        m = &m + &alg.to_matrix(l.entry(i, j)).scale(&c);
                    }
                }
            }
            f.check(m.is_zero(), || format!("sum omega_ij{} G_ij != 0 as matrices", k + 1));
        }
        Ok(f.finish("l = 1..7, as 7x7 matrices and as vectors".into()))
    })
}

pub fn m_invariance(profile: Profile) -> CheckOutcome {
    run(5, "m-invariance", || {
        let max_so = if profile == Profile::Full { 6 } else { 4 };
        let mut f = Failures::new();
        let mut count = 0;
        for n in 2..=max_so {
            let alg = kind(AlgebraKind::So(n))?;
            let all: Vec<usize> = (0..n).collect();
            let mut cases: Vec<(String, MPolynomial, Domain)> = vec![
                ("trace".into(), trace_poly(n), Domain::General),
                ("det".into(), det_poly(&all, &all)?, Domain::General),
            ];
            if n % 2 == 0 {
                cases.push(("pf".into(), pf_full_poly(n)?, Domain::Skew));
            }
            for k in 1..=3.min(n) {
                cases.push((format!("c{k}"), c_k_poly(n, k)?, Domain::General));
            }
            for k in (1..=3).filter(|k| 2 * k <= n) {
                cases.push((format!("sumpf2_{k}"), sum_pf_sq_poly(n, k)?, Domain::Skew));
            }
            for (label, p, domain) in cases {
                count += 1;
                let v = is_invariant(&alg, &p, domain)?;
                f.check(v.invariant, || format!("{label} not invariant over so{n}"));
            }
        }
        let g2 = kind(AlgebraKind::G2)?;
        let orders: &[usize] = if profile == Profile::Full { &[2, 3, 4, 7] } else { &[2, 3, 4] };
        for &k in orders {
            count += 1;
            let v = is_invariant(&g2, &g_poly(&[k], &[k])?, Domain::General)?;
            f.check(v.invariant, || format!("G([{k}],[{k}]) not invariant over g2"));
        }
        Ok(f.finish(format!("{count} polynomials invariant")))
    })
}

pub fn proposition_engine(profile: Profile, seed: u64) -> CheckOutcome {
    run(6, "symmetrization equivariance", || {
        let samples = if profile == Profile::Full { 50 } else { 8 };
        let kinds = [
            AlgebraKind::Gl(2),
            AlgebraKind::Gl(3),
            AlgebraKind::So(3),
            AlgebraKind::So(4),
            AlgebraKind::So(5),
            AlgebraKind::G2,
        ];
        let mut f = Failures::new();
        let mut r = rng(seed);
        for k in kinds {
            let alg = kind(k)?;
            let l = build_l(&alg)?;
            let vars = admissible_variables(&alg);
            for s in 0..samples {
                let p = random_poly(&vars, 2, &mut r);
                let g = random_vector(&alg, &mut r);
                let v = equivariance_check(&l, &p, &g)?;
                f.check(v.holds, || format!("{}: sample {s} fails for p = {p}", alg.name()));
            }
        }
        Ok(f.finish(format!("{samples} random polynomials on each of {} algebras", kinds.len())))
    })
}

pub fn centrality(profile: Profile) -> CheckOutcome {
    run(7, "centrality", || {
        let mut f = Failures::new();
        let mut names = Vec::new();
        let mut record = |label: String, central: bool, f: &mut Failures| {
            f.check(central, || format!("{label} is not central"));
            names.push(label);
        };
        let so_max = if profile == Profile::Full { 6 } else { 4 };
        for n in 3..=so_max {
            record(format!("casimir so{n}"), casimir(&kind(AlgebraKind::So(n))?)?.is_central(), &mut f);
        }
        let g2 = kind(AlgebraKind::G2)?;
        record("casimir g2".into(), casimir(&g2)?.is_central(), &mut f);
        let pf_sizes: &[usize] = if profile == Profile::Full { &[4, 6] } else { &[4] };
        for &n in pf_sizes {
            record(format!("Pf L so{n}"), pfaffian_family(&kind(AlgebraKind::So(n))?, PfaffianSpec::Full)?.is_central(), &mut f);
        }
        if profile == Profile::Full {
            let so5 = kind(AlgebraKind::So(5))?;
            record("sum Pf^2 so5 k=2".into(), pfaffian_family(&so5, PfaffianSpec::SumOfSquares(2))?.is_central(), &mut f);
        }
        for n in [2, 3] {
            record(format!("det L gl{n}"), det_family(&kind(AlgebraKind::Gl(n))?, n)?.is_central(), &mut f);
        }
        record("det L so4".into(), det_family(&kind(AlgebraKind::So(4))?, 4)?.is_central(), &mut f);
        record("C2 gl3".into(), det_family(&kind(AlgebraKind::Gl(3))?, 2)?.is_central(), &mut f);
        if profile == Profile::Full {
            for k in [3, 4] {
                let r = g2_G(&[k], &[k])?;
                let zero = if r.element.is_zero() { " (zero element)" } else { "" };
                record(format!("G([{k}],[{k}]) g2{zero}"), r.is_central(), &mut f);
            }
        }
        // Cross-check one element through the brute-force rewriter.
        let pf4 = pfaffian_family(&kind(AlgebraKind::So(4))?, PfaffianSpec::Full)?;
        f.check(is_central_brute_force(&pf4.element)?.central, || "brute-force path disagrees on Pf L so4".into());
        Ok(f.finish(names.join(", ")))
    })
}

pub fn pfaffian_relations(_profile: Profile) -> CheckOutcome {
    run(8, "pfaffian relations", || {
        let mut f = Failures::new();
        let mut notes = Vec::new();
        for id in 1..=3u8 {
            let v = check_relation(id, &RelationParams::default())?;
            f.check(v.holds, || format!("relation {id} residual {}", v.residual));
            if id == 3 && v.metadata.get("printed_rhs_holds") == Some(&serde_json::json!(false)) {
                notes.push("relation 3 needs all six cross terms".to_string());
            }
        }
        for k in [1, 3, 5] {
            let v = check_relation(4, &RelationParams { n: Some(4), k: Some(k) })?;
            f.check(v.holds, || format!("relation 4 (N=4, k={k}) residual {}", v.residual));
        }
        f.check(check_relation(4, &RelationParams { n: Some(4), k: Some(2) }).is_err(), || "even k accepted".into());
        for n in [2, 4, 6] {
            let v = charpoly_pfaffian_identity(n)?;
            f.check(v.holds, || format!("charpoly identity N={n} residual {}", v.residual));
        }
        notes.insert(0, "relations 1-4 and charpoly N=2,4,6".into());
        Ok(f.finish(notes.join("; ")))
    })
}

fn loops(v: usize, count: usize) -> Vec<Edge> {
    vec![Edge { tail: v, head: v }; count]
}

pub fn graph_compiler(profile: Profile, seed: u64) -> CheckOutcome {
    run(9, "graph compiler", || {
        let mut f = Failures::new();
        let trace = InvariantGraph { vertices: vec![Vertex::white()], edges: loops(1, 1) };
        f.check(compile_graph(&trace, 4)? == trace_poly(4), || "white loop is not the trace".into());
        for k in [1usize, 2, 3] {
            let n = 2 * k;
            let g = InvariantGraph { vertices: vec![Vertex::black(None)], edges: loops(1, k) };
            let expect = pfaffian_poly(&(0..n).collect::<Vec<_>>())?.scale(&(factorial(k) * int(1 << k)));
            f.check(compile_graph(&g, n)?.skew_substitute() == expect, || format!("pfaffian graph N={n} is not k!2^k Pf"));
        }
        for k in [1usize, 2, 3] {
            let g = InvariantGraph {
                vertices: vec![Vertex::black(None), Vertex::black(None)],
                edges: vec![Edge { tail: 1, head: 2 }; k],
            };
            let all: Vec<usize> = (0..k).collect();
            let expect = det_poly(&all, &all)?.scale(&factorial(k));
            f.check(compile_graph(&g, k)? == expect, || format!("determinant graph N={k} is not k! det"));
        }
        let so4 = kind(AlgebraKind::So(4))?;
        let mut r = rng(seed);
        let samples = if profile == Profile::Full { 30 } else { 6 };
        let mut tested = 0;
        while tested < samples {
            use rand::Rng;
            let blacks = r.gen_range(0..=2usize);
            let whites = r.gen_range(0..=3usize);
            if blacks + whites == 0 {
                continue;
            }
            let g = random_graph(4, blacks, whites, &mut r)?;
            let p = compile_graph(&g, 4)?;
            let v = is_invariant(&so4, &p, Domain::General)?;
            f.check(v.invariant, || format!("graph {} not invariant over so4", serde_json::to_string(&g).unwrap_or_default()));
            tested += 1;
        }
        Ok(f.finish(format!("normalizations k!2^k Pf and k! det for k <= 3; {samples} random graphs over so4 invariant")))
    })
}

/// Everything that should not depend on the thread count, rendered as text.
fn thread_sensitive_digest(seed: u64) -> Result<String> {
    let so4 = kind(AlgebraKind::So(4))?;
    let c = casimir(&so4)?;
    let pf = pfaffian_family(&so4, PfaffianSpec::Full)?;
    let so5 = kind(AlgebraKind::So(5))?;
    let inv = is_invariant(&so5, &c_k_poly(5, 2)?, Domain::General)?;
    let g4 = g_poly(&[4], &[4])?;
    let g2 = kind(AlgebraKind::G2)?;
    let not_inv = is_invariant(&g2, &MPolynomial::m(0, 1), Domain::General)?;
    let mut r = rng(seed);
    let word = random_word(&g2, 4, &mut r);
    let normal = pbw_normalize(&g2, &word)?;
    Ok(format!(
        "{}|{}|{}|{}|{}|{:?}|{}",
        c.element,
        c.is_central(),
        pf.element,
        inv.invariant,
        g4,
        not_inv.witness.map(|(a, p)| (a, p.to_string())),
        normal
    ))
}

pub fn oracle_equivalence(profile: Profile, seed: u64) -> CheckOutcome {
    run(10, "oracle equivalence", || {
        let words = if profile == Profile::Full { 100 } else { 20 };
        let kinds = [AlgebraKind::Gl(2), AlgebraKind::Gl(3), AlgebraKind::So(3), AlgebraKind::So(4), AlgebraKind::G2];
        let mut f = Failures::new();
        let mut r = rng(seed);
        for k in kinds {
            let alg = kind(k)?;
            for s in 0..words {
                let word = random_word(&alg, 4, &mut r);
                let a = pbw_normalize(&alg, &word)?;
                let b = brute_force_normalize(&alg, &word)?;
                f.check(a == b, || format!("{}: word {s} normalizes differently", alg.name()));
            }
        }
        let one = par::with_threads(1, || thread_sensitive_digest(seed))?;
        let four = par::with_threads(4, || thread_sensitive_digest(seed))?;
        f.check(one == four, || "results differ between 1 and 4 threads".into());
        Ok(f.finish(format!("{words} random words of length <= 4 on {} algebras; 1 and 4 threads agree", kinds.len())))
    })
}

pub fn g2_degree_seven(_profile: Profile, spot_generators: Option<&[usize]>) -> CheckOutcome {
    run(11, "g2 degree seven", || {
        let mode = match spot_generators {
            Some(g) => G2DetMode::Spot(g.to_vec()),
            None => G2DetMode::Polynomial,
        };
        let rep = g2_det_check(&mode)?;
        let mut f = Failures::new();
        f.check(rep.constant.as_ref().is_some_and(|c| !c.is_zero()), || "G([7],[7]) is not a nonzero multiple of det".into());
        f.check(rep.det_invariant, || "det is not g2-invariant".into());
        f.check(rep.spot.iter().all(|(_, z)| *z), || "nonzero spot commutator".into());
        let c = rep.constant.map(|c| c.to_string()).unwrap_or_default();
        let mut detail = format!("G([7],[7]) = {c} * det M over independent entries; det g2-invariant");
        if rep.skew_det_zero {
            detail.push_str("; the 7x7 determinant vanishes on skew M");
        }
        if spot_generators.is_some() {
            detail.push_str(&format!(
                "; spot commutators zero for {} generators (element has {} terms)",
                rep.spot.len(),
                rep.element_terms.unwrap_or(0)
            ));
        }
        Ok(f.finish(detail))
    })
}

/// Runs every check in order. `spot_generators` enables the degree-seven
/// commutator spot check.
pub fn run_all(profile: Profile, seed: u64, spot_generators: Option<&[usize]>) -> Vec<CheckOutcome> {
    vec![
        structure_soundness(profile),
        l_equivariance(profile),
        octonion_convention(profile),
        g2_linear_relation(profile),
        m_invariance(profile),
        proposition_engine(profile, seed),
        centrality(profile),
        pfaffian_relations(profile),
        graph_compiler(profile, seed),
        oracle_equivalence(profile, seed),
        g2_degree_seven(profile, spot_generators),
    ]
}
