use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use zcenter_core::affweyl::{simple_affine_root, AffineRoot, AffineWeylElement};
use zcenter_core::blocks::{check_lattice_identity, enumerate_xi_sc, xi_orbits};
use zcenter_core::formulas::{
    block_sum_identity, bott_check, ehrhart_fit, facet_types, sommers_dim, theorem_c_dim, type_a_binomial,
};
use zcenter_core::gkm::{
    build_center_graph, build_gkm_graph, is_section, left_action_apply, partitions_equivalent, section_space, Window,
};
use zcenter_core::rankone::{
    build_algebra, center_space, congruence_dimension, interior_center_dim, satisfies_congruence, verify_product_rule,
};
use zcenter_core::rootdata::{
    classify_subsystem, enumerate_weyl, exponents_from_coxeter_element, CartanType, RootDatum, WeylElement,
};
use zcenter_core::springer::{alcove_region_count, e_set, sim_classes};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rd(s: &str) -> RootDatum {
    RootDatum::new(s.parse().unwrap()).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn three_routes() -> Outcome {
    let cases: &[(&str, &[i64])] =
        &[("A1", &[3, 5, 7]), ("A2", &[5, 7]), ("A3", &[5]), ("B2", &[5, 7]), ("C2", &[5, 7]), ("G2", &[7])];
    let mut summary = Vec::new();
    for (t, ells) in cases {
        let d = rd(t);
        let h = d.coxeter_number() as i64;
        for &ell in *ells {
            let start = Instant::now();
            let r = block_sum_identity(&d, ell, false).map_err(|e| format!("{t}/{ell}: {e}"))?;
            let full = classify_subsystem(&d, d.positive_roots()).map_err(|e| e.to_string())?;
            let sommers = sommers_dim(&d, &full, (h + 1) * ell - h).map_err(|e| e.to_string())?;
            ensure(r.pass && sommers == r.closed_form, format!("{t}/{ell}: {r:?}"))?;
            ensure(start.elapsed() < Duration::from_secs(60), format!("{t}/{ell} took {:?}", start.elapsed()))?;
            summary.push(format!("{t}/{ell}={}", r.closed_form));
        }
    }
    let a1 = block_sum_identity(&rd("A1"), 3, false).map_err(|e| e.to_string())?;
    ensure(a1.closed_form == 4, "A1/3 is not 4")?;
    let a2 = block_sum_identity(&rd("A2"), 5, false).map_err(|e| e.to_string())?;
    let mut parts: Vec<i64> = a2.per_block.iter().map(|b| b.sign_multiplicity).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    ensure(a2.closed_form == 57 && parts == [16, 16, 6, 6, 6, 6, 1], format!("A2/5 blocks {parts:?}"))?;
    Ok(summary.join(" "))
}

fn type_a_binomials() -> Outcome {
    let mut n = 0;
    for r in 1..=3usize {
        let d = rd(&format!("A{r}"));
        for ell in (3..=15).step_by(2).filter(|l: &i64| l.gcd(&(r as i64 + 1)) == 1 && *l > r as i64) {
            let b = type_a_binomial(r, ell).map_err(|e| format!("A{r}/{ell}: {e}"))?;
            let c = theorem_c_dim(&d, ell).map_err(|e| e.to_string())?;
            ensure(b == c, format!("A{r}/{ell}: {b} != {c}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} (r, ell) pairs"))
}

fn gkm_center() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    for (t, ell) in [("A1", 3), ("A1", 5), ("A2", 5)] {
        let d = rd(t);
        let h = d.coxeter_number() as i64;
        let window = Window::boxed(&d, ell, 3 * ell * h);
        let points = enumerate_xi_sc(&d, ell, false).map_err(|e| e.to_string())?;
        let results: Vec<Result<usize, String>> = points
            .par_iter()
            .map(|p| {
                let g = build_gkm_graph(&d, p, &window).map_err(|e| e.to_string())?;
                let c = build_center_graph(&d, p, &window).map_err(|e| e.to_string())?;
                for a in d.positive_roots() {
                    let ok = partitions_equivalent(&d, &g, &c, a).map_err(|e| e.to_string())?;
                    ensure(ok, format!("{t}/{ell} block {:?} root {a:?}", p.omega))?;
                }
                Ok(d.num_positive_roots())
            })
            .collect();
        for r in results {
            checked += r?;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), format!("took {took:?}"))?;
    Ok(format!("{checked} (block, root) pairs in {:.1}s", took.as_secs_f64()))
}

fn springer_classes() -> Outcome {
    let mut summary = Vec::new();
    for (t, expected, exact) in [("A1", 3, true), ("A2", 16, true), ("A3", 125, true), ("B2", 25, false), ("G2", 49, false)] {
        let d = rd(t);
        let h = d.coxeter_number() as i64;
        let rep = sim_classes(&d, 3 * h).map_err(|e| e.to_string())?;
        if exact {
            ensure(rep.count == expected, format!("{t}: {} classes, expected {expected}", rep.count))?;
        } else {
            ensure(rep.count <= expected, format!("{t}: {} classes exceed {expected}", rep.count))?;
        }
        let bound = (h as usize + 1).pow(d.rank() as u32);
        let regions = alcove_region_count(&d);
        ensure(regions <= bound, format!("{t}: {regions} regions exceed {bound}"))?;
        if t.starts_with('A') {
            ensure(regions == bound, format!("{t}: {regions} regions, expected {bound}"))?;
        }
        summary.push(format!("{t}={}/{regions}", rep.count));
    }
    Ok(summary.join(" "))
}

fn rank_one_center() -> Outcome {
    let alg = build_algebra(5, 3).map_err(|e| e.to_string())?;
    let center = center_space(&alg);
    for z in &center {
        ensure(satisfies_congruence(&alg, z), "center element violates the congruence")?;
    }
    let bad = center
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, z)| center[i..].iter().map(move |w| (z, w)))
        .filter(|(z, w)| !verify_product_rule(&alg, z, w) || !verify_product_rule(&alg, w, z))
        .count();
    ensure(bad == 0, format!("{bad} pairs violate the product rule"))?;
    let dim = interior_center_dim(&alg, &center);
    let predicted = congruence_dimension(&alg, 3).map_err(|e| e.to_string())?;
    ensure(dim == predicted, format!("interior dimension {dim}, congruence count {predicted}"))?;
    Ok(format!("center dim {}, interior dim {dim}", center.len()))
}

fn block_combinatorics() -> Outcome {
    for (t, ell, n) in [("A1", 3, 4), ("A2", 5, 21)] {
        let d = rd(t);
        let pts = enumerate_xi_sc(&d, ell, false).map_err(|e| e.to_string())?;
        ensure(pts.len() == n, format!("{t}/{ell}: {} points", pts.len()))?;
        let orbits = xi_orbits(&d, ell, false).map_err(|e| e.to_string())?;
        let e = d.pi1_order() as usize;
        ensure(orbits.iter().all(|o| o.len() == e), format!("{t}/{ell}: orbit sizes"))?;
    }
    for t in ["A1", "A2"] {
        let d = rd(t);
        let e = d.pi1_order() as i64;
        for ell in 2..=9 {
            ensure(check_lattice_identity(&d, ell) == (ell.gcd(&e) == 1), format!("{t}: lattice identity at {ell}"))?;
        }
    }
    Ok("A1/3=4 A2/5=21".to_string())
}

fn ehrhart() -> Outcome {
    let mut fits = Vec::new();
    for (t, start, step) in [("A1", 3i64, 2i64), ("A2", 5, 6)] {
        let d = rd(t);
        let types = facet_types(&d, start + 2 * step).map_err(|e| e.to_string())?;
        for j in types {
            let dim = d.rank() - j.len();
            let samples: Vec<i64> = (0..dim as i64 + 3).map(|k| start + k * step).collect();
            let fit = ehrhart_fit(&d, j, &samples).map_err(|e| format!("{t} {j}: {e}"))?;
            ensure(fit.held_out >= 2, format!("{t} {j}: only {} held out", fit.held_out))?;
            fits.push(format!("{t}{j}:{}", fit.polynomial));
        }
    }
    Ok(fits.join(" "))
}

fn plumbing() -> Outcome {
    let types = CartanType::all_up_to_rank(4);
    for t in &types {
        let d = RootDatum::new(*t).map_err(|e| e.to_string())?;
        let cox = exponents_from_coxeter_element(&d).map_err(|e| e.to_string())?;
        ensure(d.exponents_from_heights() == cox, format!("{t}: exponents differ"))?;
    }
    for t in ["A1", "A2", "B2"] {
        ensure(bott_check(&rd(t), 12).map_err(|e| e.to_string())?, format!("{t}: Bott series mismatch"))?;
    }
    Ok(format!("{} types, Bott to 12", types.len()))
}

fn random_element(rng: &mut ChaCha8Rng, weyl: &[WeylElement], radius: i64) -> AffineWeylElement {
    let w = weyl[rng.gen_range(0..weyl.len())].clone();
    let mu = (0..w.rank()).map(|_| rng.gen_range(-radius..=radius)).collect();
    AffineWeylElement::new(w, mu)
}

fn random_root(rng: &mut ChaCha8Rng, d: &RootDatum) -> AffineRoot {
    let roots = d.all_roots();
    AffineRoot::new(roots[rng.gen_range(0..roots.len())].clone(), rng.gen_range(-10..=10))
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for t in ["A1", "A2", "B2", "G2", "A3"] {
        let d = rd(t);
        let weyl = enumerate_weyl(&d).map_err(|e| e.to_string())?;
        let radius = 3 * d.coxeter_number() as i64;
        for _ in 0..10_000 {
            let x = random_element(&mut rng, &weyl, radius);
            let i = rng.gen_range(0..=d.rank());
            let sx = AffineWeylElement::simple(&d, i, 1).compose(&x);
            let (ex, esx) = (e_set(&d, &x).e_set, e_set(&d, &sx).e_set);
            let b = x.inverse().act_affine_root(&simple_affine_root(&d, i, 1));
            let predicted = !ex.contains(&b) && !esx.iter().any(|c| c.negate() == b);
            ensure((ex == esx) == predicted, format!("{t}: {x} and node {i}"))?;
        }
        for _ in 0..1_000 {
            let x = random_element(&mut rng, &weyl, 10);
            let y = random_element(&mut rng, &weyl, 10);
            let xy = x.compose(&y);
            let lam: Vec<i64> = (0..d.rank()).map(|_| rng.gen_range(-20..=20)).collect();
            let beta = random_root(&mut rng, &d);
            let id = AffineWeylElement::identity(d.rank());
            ensure(xy.act_linear(&lam) == x.act_linear(&y.act_linear(&lam)), format!("{t}: linear action"))?;
            ensure(xy.act_dot(&lam) == x.act_dot(&y.act_dot(&lam)), format!("{t}: dot action"))?;
            ensure(
                xy.act_affine_root(&beta) == x.act_affine_root(&y.act_affine_root(&beta)),
                format!("{t}: action on affine roots"),
            )?;
            ensure(
                id.act_linear(&lam) == lam && id.act_dot(&lam) == lam && id.act_affine_root(&beta) == beta,
                format!("{t}: identity"),
            )?;
        }
    }
    let mut graphs = 0;
    for (t, ell) in [("A1", 3), ("A2", 5)] {
        let d = rd(t);
        let h = d.coxeter_number() as i64;
        let window = Window::weyl_stable(&d, ell * h);
        let weyl = enumerate_weyl(&d).map_err(|e| e.to_string())?;
        for p in enumerate_xi_sc(&d, ell, false).map_err(|e| e.to_string())?.iter().take(3) {
            let g = build_gkm_graph(&d, p, &window).map_err(|e| e.to_string())?;
            for s in section_space(&g, 2) {
                for w in &weyl {
                    let x = AffineWeylElement::finite(w.clone());
                    let out = left_action_apply(&d, &g, &x, &s).map_err(|e| e.to_string())?;
                    ensure(is_section(&g, &out), format!("{t}/{ell}: action leaves the section space"))?;
                }
            }
            graphs += 1;
        }
    }
    Ok(format!("5 types, {graphs} section graphs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("three-route agreement", three_routes),
        ("type A binomial", type_a_binomials),
        ("GKM/center equivalence", gkm_center),
        ("Springer classes", springer_classes),
        ("rank-one center", rank_one_center),
        ("block combinatorics", block_combinatorics),
        ("Ehrhart polynomiality", ehrhart),
        ("plumbing oracles", plumbing),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({secs:.1}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.1}s): {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
