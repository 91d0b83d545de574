//! End-to-end acceptance checks, one line of output per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use qtype_cli::{run, Command, RunConfig};
use qtype_core::algebra::{herm_from_text, holo_from_text, linear_change, point_from_text, pullback, Exponent, HoloPoly};
use qtype_core::curves::nu_along;
use qtype_core::decomp::{decompose, truncate, union_basis, RationalUnitary};
use qtype_core::ideals::{mult, mult_chain, HoloIdeal};
use qtype_core::rng::{derive_seed, gl_matrix, herm_poly, nonzero_gaussian_int, rng_from_seed, DEFAULT_SEED};
use qtype_core::types::{
    bound_check_values, delta_one, dq_via_slices, ideal_type, sample_chart, sample_unitaries, search, twisted_delta_q,
    GenericValueReport, HypersurfaceModel, Params, SearchBudget, Status, Target, Template, Verdict,
};
use qtype_core::{CurveGerm, GaussianRational as GQ, HermPoly, Order, TypeValue};
use rand::Rng;

const EXAMPLE: &str = "Re(z4) + |z1^2 - z2*z3|^2 + |z2|^4";

fn jump_model() -> HypersurfaceModel {
    HypersurfaceModel::new(4, vec![herm_from_text(EXAMPLE, 4).unwrap()], "jump").unwrap()
}

fn pt(s: &str) -> Vec<GQ> {
    point_from_text(s).unwrap()
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn generic(model: &HypersurfaceModel, p: &str, params: &Params) -> GenericValueReport {
    dq_via_slices(model, &pt(p), 2, params).unwrap()
}

/// Agreed value, agreement count and status of a certified generic value.
fn agreed(rep: &GenericValueReport) -> (TypeValue, usize, Status) {
    (
        rep.agreed_value.clone().expect("agreement reached"),
        rep.agreement_count,
        rep.agreed_status.expect("agreement reached"),
    )
}

fn c1_origin_value() -> String {
    let start = Instant::now();
    let rep = generic(&jump_model(), "0,0,0,0", &Params::default());
    let took = start.elapsed();
    let (v, count, status) = agreed(&rep);
    assert_eq!(rep.samples.len(), 7);
    assert!(count >= 5, "agreement {count}");
    assert_eq!(v, TypeValue::int(4));
    assert_eq!(status, Status::Exact);
    assert!(took < Duration::from_secs(60), "{took:?}");
    format!("D_2(M,0) = {v}, {count}/7 agree, {:.2}s", took.as_secs_f64())
}

fn c2_nearby_value() -> String {
    let rep = generic(&jump_model(), "0,0,1,0", &Params::default());
    let (v, count, status) = agreed(&rep);
    assert!(count >= 5, "agreement {count}");
    assert_eq!(v, TypeValue::int(8));
    assert_eq!(status, Status::Exact);
    assert_eq!(rep.estimate.as_ref().unwrap().lower, TypeValue::int(8));
    format!("D_2(M,(0,0,1,0)) = {v}, {count}/7 agree")
}

/// `z2` solving `z2^2 - (1 - t) z2 + t^2 = 0` with `z2(0) = 0`, to degree `d`.
fn small_root(d: u32) -> HoloPoly {
    let t = HoloPoly::var(1, 0);
    let t2 = t.mul(&t);
    let mut z = HoloPoly::zero(1);
    for _ in 0..=d {
        z = t2.add(&t.mul_trunc(&z, d)).add(&z.mul_trunc(&z, d)).truncate(d);
    }
    z
}

fn c3_curve_orders() -> String {
    let r = herm_from_text(EXAMPLE, 4).unwrap();
    let g1 = CurveGerm::from_text("(t, -t, 0, 0)", None).unwrap();
    let nu1 = nu_along(&r, &g1).unwrap();
    assert_eq!(nu1, Order::Finite(4));

    // a = b = c = 1, eps = 1; z3 = 1 - t - z2 is written relative to p.
    let z2 = small_root(7);
    let t = HoloPoly::var(1, 0);
    let comps = vec![t.clone(), z2.clone(), t.add(&z2).neg(), HoloPoly::zero(1)];
    let p = pt("0,0,1,0");
    let g2 = CurveGerm::new(p.clone(), comps).unwrap();
    let local = jump_model().at(&p).unwrap();
    let nu2 = nu_along(&local[0], &g2).unwrap();
    assert_eq!(nu2, Order::Finite(8));
    format!("nu(r o g1) = {nu1}, nu(r o g2) = {nu2}")
}

fn c4_bound() -> String {
    let b = bound_check_values(&TypeValue::int(4), &TypeValue::int(8), 4, 2);
    assert_eq!(b.bound.as_deref(), Some("2147483648"));
    assert_eq!((b.exponent_two, b.exponent_base), (13, 9));
    assert!(b.holds && !b.vacuous);
    let mut cfg = RunConfig::new(Command::Corpus, None);
    cfg.dir = corpus();
    let out = run(&cfg);
    let rep = out.report.expect("corpus report");
    assert_eq!(out.code, 0);
    let pairs = rep.lemma_checks.len();
    assert!(pairs > 0);
    assert!(rep.lemma_checks.iter().all(|c| c.holds == Some(true)));
    format!("bound 2^31 = {}, 8 <= bound; {pairs} corpus pairs hold", b.bound.unwrap())
}

fn c5_decomposition() -> String {
    let mut rng = rng_from_seed(derive_seed(DEFAULT_SEED, 5));
    for i in 0..100 {
        let n = rng.random_range(1..=3);
        let deg = rng.random_range(1..=6);
        let r = herm_poly(&mut rng, n, deg);
        let k = deg.max(1);
        let d = decompose(&r, k).unwrap();
        let diff = d.reconstruct().sub(&truncate(&r, k).unwrap());
        assert!(diff.is_zero(), "case {i}: {r}");
    }
    for _ in 0..100 {
        let size = rng.random_range(1..=6);
        let u = RationalUnitary::sample(&mut rng, size);
        assert!(u.matrix().conj_transpose().mul(u.matrix()).is_identity());
    }
    "100 identities exact, 100 unitaries exact".into()
}

/// Colength of a monomial ideal by counting standard monomials up to `cap`.
fn staircase_count(n: usize, gens: &[Vec<u32>], cap: u32) -> Option<u32> {
    let mut count = 0;
    for e in Exponent::all_up_to(n, cap) {
        if !gens.iter().any(|g| g.iter().zip(&e.0).all(|(a, b)| a <= b)) {
            if e.degree() == cap {
                return None;
            }
            count += 1;
        }
    }
    Some(count)
}

/// Every order ideal (staircase) of `N^n` with at most `max` cells.
fn staircases(n: usize, max: usize) -> Vec<Vec<Vec<u32>>> {
    use std::collections::BTreeSet;
    let mut seen: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    let mut frontier = vec![vec![vec![0u32; n]]];
    while let Some(d) = frontier.pop() {
        if !seen.insert(d.clone()) {
            continue;
        }
        if d.len() < max {
            for c in outer_corners(n, &d) {
                let mut e = d.clone();
                e.push(c);
                e.sort();
                if !seen.contains(&e) {
                    frontier.push(e);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Cells outside a staircase whose lower neighbours all lie inside.
fn outer_corners(n: usize, cells: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for c in cells {
        for i in 0..n {
            let mut e = c.clone();
            e[i] += 1;
            if cells.contains(&e) || out.contains(&e) {
                continue;
            }
            let inside = (0..n).all(|j| {
                e[j] == 0 || {
                    let mut f = e.clone();
                    f[j] -= 1;
                    cells.contains(&f)
                }
            });
            if inside {
                out.push(e);
            }
        }
    }
    out
}

fn monomial_ideal(n: usize, gens: &[Vec<u32>]) -> HoloIdeal {
    HoloIdeal::new(n, gens.iter().map(|g| HoloPoly::monomial(n, Exponent(g.clone()), GQ::from_int(1))).collect()).unwrap()
}

fn certified_mult(i: &HoloIdeal) -> u32 {
    let r = mult(i, 60).unwrap();
    assert!(r.certified, "{r:?}");
    r.value.finite().unwrap()
}

fn c6_multiplicity() -> String {
    let mut checked = 0;
    for a in 1..=50u32 {
        assert_eq!(certified_mult(&monomial_ideal(1, &[vec![a]])), a);
        checked += 1;
    }
    for (n, max) in [(2, 12), (3, 6)] {
        for cells in staircases(n, max) {
            let gens = outer_corners(n, &cells);
            let oracle = staircase_count(n, &gens, 60).unwrap();
            assert_eq!(oracle as usize, cells.len());
            assert_eq!(certified_mult(&monomial_ideal(n, &gens)), oracle, "{gens:?}");
            checked += 1;
        }
    }
    // Random ideals with larger colength, up to 50.
    let mut rng = rng_from_seed(derive_seed(DEFAULT_SEED, 6));
    let mut random = 0;
    while random < 40 {
        let n = rng.random_range(2..=3);
        let mut gens: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = rng.random_range(1..=8);
                e
            })
            .collect();
        for _ in 0..rng.random_range(0..4) {
            gens.push((0..n).map(|_| rng.random_range(0..=4)).collect());
        }
        let Some(oracle) = staircase_count(n, &gens, 40) else { continue };
        if oracle > 50 {
            continue;
        }
        assert_eq!(certified_mult(&monomial_ideal(n, &gens)), oracle, "{gens:?}");
        random += 1;
        checked += 1;
    }
    let ideal = |n: usize, g: &[&str]| HoloIdeal::new(n, g.iter().map(|s| holo_from_text(s, n).unwrap()).collect()).unwrap();
    let fixtures = [
        (ideal(2, &["z1 + z2^2", "z2 + z1^2"]), 1),
        (ideal(2, &["z1^2", "z2^2 + z1*z2"]), 4),
        (ideal(2, &["(z1 + z2)^2", "z2^3"]), 6),
        (ideal(3, &["z1 + z2^2", "z2^3", "z3^3"]), 9),
    ];
    for (i, v) in &fixtures {
        assert_eq!(certified_mult(i), *v, "{i:?}");
    }
    format!("{checked} monomial ideals match the staircase count; fixtures 1, 4, 6, 9 match")
}

fn c7_chain() -> String {
    let ideal = |n: usize, g: &[&str]| HoloIdeal::new(n, g.iter().map(|s| holo_from_text(s, n).unwrap()).collect()).unwrap();
    let fixtures = [
        (ideal(2, &["z1", "z2^2"]), 1),
        (ideal(3, &["z1", "z2^3", "z3^3"]), 1),
        (ideal(3, &["z1", "z2^2", "z3^3"]), 1),
        (ideal(3, &["z1 - z2", "z1*z3 + z2^2", "z3^4"]), 1),
        (ideal(3, &["z1", "z2", "z3^5"]), 2),
        (ideal(3, &["z1 + z2 + z3", "z1^2 - z2*z3", "z2^2"]), 1),
    ];
    let params = Params::default();
    for (i, q) in &fixtures {
        let b = mult_chain(i, *q, 24).unwrap();
        let e = ideal_type(i, &params).unwrap();
        assert!(e.upper.is_finite(), "{i:?}: {e:?}");
        let c = b.check(&e.lower, &e.upper).expect("certified multiplicity");
        assert!(c.holds(), "{i:?}: {c:?} with {e:?}");
    }
    format!("{} fixtures satisfy Delta <= mult <= Delta^(n-q)", fixtures.len())
}

fn c8_twisted() -> String {
    let m = jump_model();
    let params = Params::default();
    let mut checked = 0;
    for (p, dq) in [("0,0,0,0", 4), ("0,0,1,0", 8)] {
        let rep = generic(&m, p, &params);
        let upper = rep.estimate.as_ref().unwrap().upper.clone();
        assert_eq!(upper, TypeValue::int(dq));
        let k = rep.k;
        let local = m.at(&pt(p)).unwrap();
        let size = union_basis(&local, k).unwrap().len();
        for (label, u) in sample_unitaries(size, 20, derive_seed(DEFAULT_SEED, 8)) {
            let e = twisted_delta_q(&local, &u, k, 2, &params).unwrap();
            assert!(e.lower <= upper, "{p} {label}: {} > {upper}", e.lower);
            checked += 1;
        }
    }
    format!("{checked} twisted ideals stay below D_2 (20 unitaries at each of 2 points)")
}

fn c9_truncation() -> String {
    let m = jump_model();
    let params = Params { k: Some(9), ..Params::default() };
    let truncated = m.truncated(9).unwrap();
    for (p, v) in [("0,0,0,0", 4), ("0,0,1,0", 8)] {
        let full = generic(&m, p, &Params::default());
        let cut = generic(&truncated, p, &params);
        assert_eq!(agreed(&cut), agreed(&full));
        assert_eq!(agreed(&cut).0, TypeValue::int(v));
        let verdict = cut.estimate.as_ref().unwrap().truncation.clone();
        assert_eq!(verdict, Some(Verdict::Stable { k: 9 }), "{p}");
    }
    "k = 9 gives 4 and 8, both stable".into()
}

fn c10_invariance() -> String {
    // Seed determinism: byte-identical reports.
    let mut cfg = RunConfig::new(Command::Type, Some(corpus().join("jump.toml")));
    cfg.point = Some("0,0,1,0".into());
    let a = run(&cfg).render(cfg.format).unwrap();
    let b = run(&cfg).render(cfg.format).unwrap();
    assert_eq!(a, b);

    // Reparametrization: nu(r o g) / nu(g) is unchanged by t -> t u(t).
    let models: Vec<HermPoly> = [EXAMPLE, "Re(z4) + |z1|^2 + |z2^2 - z3^3|^2 + |z3|^8"]
        .iter()
        .map(|s| herm_from_text(s, 4).unwrap())
        .collect();
    let mut rng = rng_from_seed(derive_seed(DEFAULT_SEED, 10));
    let mut cases = 0;
    while cases < 200 {
        let comps: Vec<HoloPoly> = (0..4)
            .map(|i| {
                let mut c = HoloPoly::zero(1);
                if i < 3 {
                    for d in 1..=3 {
                        if rng.random_bool(0.5) {
                            c.add_term(Exponent(vec![d]), GQ::from_int(rng.random_range(-2..=2)));
                        }
                    }
                }
                c
            })
            .collect();
        let Ok(g) = CurveGerm::at_origin(comps) else { continue };
        let r = &models[cases % models.len()];
        let u = HoloPoly::from_terms(1, (0..3).map(|d| (Exponent(vec![d]), nonzero_gaussian_int(&mut rng, 2))));
        let h = g.reparametrize(&u).unwrap();
        let before = nu_along(r, &g).unwrap().ratio(g.nu());
        let after = nu_along(r, &h).unwrap().ratio(h.nu());
        assert_eq!(before, after, "{g} with u = {u:?}");
        assert_eq!(g.nu(), h.nu());
        cases += 1;
    }

    // Linear changes of coordinates keep certified lower bounds.
    let params = Params::default();
    let cases_gl = [("Re(z2) + |z1|^2", 2, 2), ("Re(z2) + |z1|^4", 2, 4), ("Re(z3) + |z1|^2 + |z2|^4", 3, 4), ("Re(z2) + |z1|^6", 2, 6)];
    let mut gl = 0;
    for (idx, (src, n, value)) in cases_gl.iter().enumerate() {
        let r = herm_from_text(src, *n).unwrap();
        let k = 2 * r.degree() + 1;
        let base = delta_one(std::slice::from_ref(&r), k, &params).unwrap();
        assert_eq!(base.lower, TypeValue::int(*value), "{src}");
        let mut rng = rng_from_seed(derive_seed(DEFAULT_SEED, 100 + idx as u64));
        for _ in 0..5 {
            let a = gl_matrix(&mut rng, *n, 2);
            let e = delta_one(&[linear_change(&r, &a).unwrap()], k, &params).unwrap();
            assert_eq!(e.lower, base.lower, "{src} under {a:?}");
            gl += 1;
        }
    }
    format!("reports byte-identical; {cases} reparametrizations; {gl} linear changes")
}

fn c11_search_control() -> String {
    let r = herm_from_text(EXAMPLE, 4).unwrap();
    let budget = SearchBudget {
        max_curve_degree: 6,
        max_coeff_height: 3,
        max_exponent: 6,
        templates: vec![Template::Monomial],
    };
    let params = Params::default();
    let mut best = TypeValue::int(0);
    let mut examined = 0;
    for i in 0..params.num_samples {
        let seed = derive_seed(params.seed, i as u64);
        let (_, chart) = sample_chart(4, 2, seed, params.form_height).unwrap();
        let slice = pullback(&r, &chart).unwrap();
        let out = search(Target::Herm(std::slice::from_ref(&slice)), &[], &budget).unwrap();
        examined += out.examined;
        if let Some(w) = out.best {
            best = best.max(w.ratio);
        }
    }
    assert!(best <= TypeValue::int(4), "found ratio {best}");
    format!("{examined} curves over 7 slices, largest ratio {best}")
}

type Criterion = (&'static str, fn() -> String);

fn main() {
    let criteria: [Criterion; 11] = [
        ("origin value", c1_origin_value),
        ("nearby value", c2_nearby_value),
        ("curve orders", c3_curve_orders),
        ("local bound", c4_bound),
        ("decomposition identity", c5_decomposition),
        ("multiplicity oracle", c6_multiplicity),
        ("multiplicity chain", c7_chain),
        ("twisted ideals", c8_twisted),
        ("truncation stability", c9_truncation),
        ("determinism and invariance", c10_invariance),
        ("search negative control", c11_search_control),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match catch_unwind(AssertUnwindSafe(f)) {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.1}s]", i + 1, start.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
