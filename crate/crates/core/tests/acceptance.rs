//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line before asserting,
//! so `cargo test --test acceptance -- --nocapture --test-threads=1` reads as a report.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use boundary_lab::covering::{
    build_annulus_covering, build_punctured_disk_covering, classify_radial, classify_radial_many, correspondence_check,
    deck_relation_error, radial_trace, DECK_GRID, RadialClass, RADIAL_T_MAX,
};
use boundary_lab::disk::{hyp_distance, Geodesic, GeodesicKind};
use boundary_lab::exhaustion::{
    classify_depth, construct_bungee_point, depth_of_stream, depth_sequence, radial_type, radial_type_of, BoundaryAddress,
    DepthClass, RadialType,
};
use boundary_lab::group::{code_boundary_point, families, limit_set_cover, CodingOptions, SchottkySystem};
use boundary_lab::harmonic::{harmonic_measure_annulus, MethodRequest};
use boundary_lab::moebius::{DiskAutomorphism, MapClass};
use boundary_lab::prime_ends::{
    build_chain, classify_prime_end, detect_true_crosscut, impression_of_chain, prime_end_quotient_count, ChainStyle,
    LimitSetVerdict, PrimeEndClass,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, ok: bool, detail: String) {
    println!("criterion {id} [{}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
}

fn random_disk_point(rng: &mut ChaCha8Rng, max_r: f64) -> Complex64 {
    Complex64::from_polar(max_r * rng.gen::<f64>().sqrt(), rng.gen::<f64>() * TAU)
}

#[test]
fn criterion_1_harmonic_measure() {
    let start = Instant::now();
    let mut ok = true;
    for r in [1.5, 2.0, 10.0] {
        let e = harmonic_measure_annulus(r, Complex64::new(1.0, 0.0), MethodRequest::ClosedForm).unwrap();
        ok &= e.value == 0.5;
    }
    let mc = harmonic_measure_annulus(2.0, Complex64::new(1.0, 0.0), MethodRequest::MonteCarlo { n_walks: 100_000, seed: 2024 })
        .unwrap();
    let elapsed = start.elapsed();
    ok &= (mc.value - 0.5).abs() < 0.01 && elapsed < Duration::from_secs(30);
    report(1, "harmonic measure", ok, format!("closed form 0.5 at R=1.5,2,10; MC {:.4} ± {:.4} in {elapsed:.2?}", mc.value, mc.stderr));
    assert!(ok);
}

/// Fixed points of `z ↦ e^{iθ}(a − z)/(1 − āz)` from `āz² − (1 + e^{iθ})z + e^{iθ}a = 0`,
/// classified by where they sit relative to the circle.
fn oracle_class(theta: f64, a: Complex64) -> MapClass {
    let u = Complex64::from_polar(1.0, theta);
    if a.norm() < 1e-15 {
        return if (u - 1.0).norm() < 1e-15 { MapClass::Identity } else { MapClass::Elliptic };
    }
    let (qa, qb, qc) = (a.conj(), -(1.0 + u), u * a);
    let disc = (qb * qb - 4.0 * qa * qc).sqrt();
    let z1 = (-qb + disc) / (2.0 * qa);
    let z2 = (-qb - disc) / (2.0 * qa);
    let inside = z1.norm().min(z2.norm());
    if inside < 1.0 - 1e-5 {
        MapClass::Elliptic
    } else if (z1 - z2).norm() > 1e-5 {
        MapClass::Hyperbolic
    } else {
        MapClass::Parabolic
    }
}

#[test]
fn criterion_2_classification() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let start = Instant::now();
    let (mut checked, mut agree) = (0, 0);
    for _ in 0..10_000 {
        let theta = rng.gen::<f64>() * TAU;
        let a = random_disk_point(&mut rng, 0.999);
        let normalized_trace = (1.0 - Complex64::from_polar(1.0, theta)).norm() / (1.0 - a.norm_sqr()).sqrt();
        if (normalized_trace - 2.0).abs() <= 1e-6 {
            continue;
        }
        let g = DiskAutomorphism::from_disk_params(theta, a).unwrap();
        checked += 1;
        agree += usize::from(g.classify() == oracle_class(theta, a));
    }
    let elapsed = start.elapsed();
    let ok = agree == checked && elapsed < Duration::from_secs(5);
    report(2, "classification suite", ok, format!("{agree}/{checked} agree with the fixed-point oracle in {elapsed:.2?}"));
    assert!(ok);
}

/// Adaptive Simpson for `∫₀^ρ 2/(1 − r²) dr`.
fn radial_integral(rho: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn adapt(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (l, r) = (simpson(f, a, m), simpson(f, m, b));
        if depth == 0 || (l + r - whole).abs() <= 15.0 * tol {
            return l + r + (l + r - whole) / 15.0;
        }
        adapt(f, a, m, l, tol / 2.0, depth - 1) + adapt(f, m, b, r, tol / 2.0, depth - 1)
    }
    let f = |r: f64| 2.0 / (1.0 - r * r);
    adapt(&f, 0.0, rho, simpson(&f, 0.0, rho), 1e-13, 50)
}

#[test]
fn criterion_3_metric() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst_iso, mut worst_int, mut worst_orth) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let z = random_disk_point(&mut rng, 0.9);
        let w = random_disk_point(&mut rng, 0.9);
        let d = hyp_distance(z, w).unwrap();
        let g = DiskAutomorphism::from_disk_params(rng.gen::<f64>() * TAU, random_disk_point(&mut rng, 0.9)).unwrap();
        worst_iso = worst_iso.max((hyp_distance(g.apply(z), g.apply(w)).unwrap() - d).abs());
        let rho = ((w - z) / (1.0 - z.conj() * w)).norm();
        worst_int = worst_int.max((radial_integral(rho) - d).abs());
        let (u, v) = (rng.gen::<f64>() * TAU, rng.gen::<f64>() * TAU);
        if let Ok(geo) = Geodesic::from_endpoints(u, v) {
            if let GeodesicKind::Orthocircle { center, radius } = geo.kind() {
                worst_orth = worst_orth.max((center.norm_sqr() - radius * radius - 1.0).abs() / center.norm_sqr().max(1.0));
            }
        }
    }
    let ok = worst_iso < 1e-9 && worst_int < 1e-9 && worst_orth < 1e-9;
    report(
        3,
        "metric suite",
        ok,
        format!("isometry {worst_iso:.1e}, integration {worst_int:.1e}, orthocircle {worst_orth:.1e} over 1000 cases"),
    );
    assert!(ok);
}

#[test]
fn criterion_4_limit_set_dichotomy() {
    let cyc = limit_set_cover(&families::cyclic(), 20).unwrap();
    let rank2 = families::rank2_interleaved();
    let lengths: Vec<f64> = (2..=8).map(|d| limit_set_cover(&rank2, d).unwrap().total_length).collect();
    let decreasing = lengths.windows(2).all(|w| w[1] < w[0]);
    let verdict = detect_true_crosscut(&rank2, 8).unwrap().verdict;
    let ok = cyc.arcs.len() == 2
        && cyc.total_length < 1e-3
        && decreasing
        && lengths[0] < TAU - 0.1
        && verdict == LimitSetVerdict::CantorLimitSet;
    report(
        4,
        "limit-set dichotomy",
        ok,
        format!("cyclic depth-20 length {:.2e}; rank-2 lengths {lengths:.4?}; verdict {verdict:?}", cyc.total_length),
    );
    assert!(ok);
}

#[test]
fn criterion_5_annulus_covering() {
    let cov = build_annulus_covering(2.0).unwrap();
    let deck = deck_relation_error(&cov, 0.9, DECK_GRID).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let thetas: Vec<f64> = (0..1000)
        .map(|_| loop {
            let t: f64 = rng.gen::<f64>() * TAU;
            if t.sin().abs() > 1e-3 {
                break t;
            }
        })
        .collect();
    let classes = classify_radial_many(&cov, &thetas, 64).unwrap();
    let escaping = classes.iter().filter(|c| **c == RadialClass::Escaping).count();
    let bounded = [0.0, PI].iter().all(|t| classify_radial(&cov, *t, 64).unwrap() == RadialClass::Bounded);
    let punct = build_punctured_disk_covering();
    let end = radial_trace(&punct, PI, 64, RADIAL_T_MAX).unwrap().samples.last().unwrap().value.norm();
    let ok = deck < 1e-9 && escaping == thetas.len() && bounded && end < 1e-3;
    report(
        5,
        "annulus covering",
        ok,
        format!("deck error {deck:.1e}; {escaping}/1000 escaping; bounded at 0, π: {bounded}; punctured |π| = {end:.1e}"),
    );
    assert!(ok);
}

#[test]
fn criterion_6_correspondence() {
    let cov = build_annulus_covering(2.0).unwrap();
    let mut worst = 0.0f64;
    for p in [Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.5), Complex64::from_polar(2.0, 2.0)] {
        for k in 0..=3 {
            worst = worst.max(correspondence_check(&cov, p, k).unwrap().discrepancy);
        }
    }
    let ok = worst < 1e-5;
    report(6, "correspondence", ok, format!("max discrepancy {worst:.1e} for k = 0..3 at three boundary points"));
    assert!(ok);
}

#[test]
fn criterion_7_trichotomy() {
    let systems: Vec<SchottkySystem> =
        vec![families::cyclic(), families::pants(), families::rank2_interleaved(), families::parabolic_rank1(), families::mixed()];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut oscillating, mut ambiguous) = (0, 0);
    for k in 0..1000 {
        let sys = &systems[k % systems.len()];
        match depth_sequence(sys, rng.gen::<f64>() * TAU, 64) {
            Ok(seq) => oscillating += usize::from(matches!(classify_depth(&seq), DepthClass::Oscillating)),
            Err(_) => ambiguous += 1,
        }
    }

    let nested = families::nested_chains_system(10);
    let a1 = BoundaryAddress::new(vec![1; 10]);
    let a2 = BoundaryAddress::new([2].into_iter().chain([1; 9]).collect());
    let pt = construct_bungee_point(&nested, &[a1, a2], 10, &[]).unwrap();
    let bungee_class = classify_depth(&depth_of_stream(&nested, &pt.stream));
    let bungee = matches!(bungee_class, DepthClass::Oscillating) && radial_type_of(bungee_class) == RadialType::Bungee;

    let mut cusps_ok = true;
    for sys in [families::parabolic_rank1(), families::mixed()] {
        for g in sys.generators() {
            if let Some(p) = g.cusp() {
                cusps_ok &= radial_type(&sys, p, 64).unwrap() == RadialType::Escaping;
                cusps_ok &= classify_prime_end(&sys, p, 64).unwrap().class == PrimeEndClass::Parabolic;
            }
        }
    }
    let ok = oscillating == 0 && bungee && cusps_ok;
    report(
        7,
        "trichotomy engine",
        ok,
        format!("{oscillating} oscillating of 1000 ({ambiguous} ambiguous); constructed point {bungee_class:?}; cusps escaping+parabolic: {cusps_ok}"),
    );
    assert!(ok);
}

#[test]
fn criterion_8_prime_end_counts() {
    let counts = [
        prime_end_quotient_count(&SchottkySystem::trivial(), 1).unwrap().classes,
        prime_end_quotient_count(&families::cyclic(), 1).unwrap().classes,
        prime_end_quotient_count(&families::pants(), 1).unwrap().classes,
    ];
    let systems = [families::cyclic(), families::pants(), families::rank2_interleaved(), families::mixed()];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut sampled, mut agree) = (0, 0);
    while sampled < 100 {
        let sys = &systems[sampled % systems.len()];
        let Ok(stream) = code_boundary_point(sys, rng.gen::<f64>() * TAU, &CodingOptions::default()) else { continue };
        let (Ok(a), Ok(b)) = (build_chain(sys, &stream, ChainStyle::Primary), build_chain(sys, &stream, ChainStyle::Alternate))
        else {
            continue;
        };
        sampled += 1;
        agree += usize::from(impression_of_chain(sys, &a).unwrap() == impression_of_chain(sys, &b).unwrap());
    }
    let ok = counts == [1, 2, 3] && agree == sampled;
    report(8, "prime-end counts", ok, format!("classes trivial/cyclic/pants = {counts:?}; impressions agree {agree}/{sampled}"));
    assert!(ok);
}

#[test]
fn criterion_9_true_crosscuts() {
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, sys) in [("cyclic", families::cyclic()), ("rank-2", families::rank2_interleaved())] {
        let r = detect_true_crosscut(&sys, 8).unwrap();
        ok &= r.verdict == LimitSetVerdict::CantorLimitSet && r.certificate.is_some();
        detail.push(format!("{name} {:?}", r.verdict));
    }
    let dense = families::dense_punctures_system(13);
    let gapless = (0..=12).all(|d| detect_true_crosscut(&dense, d).unwrap().verdict == LimitSetVerdict::FullCircle);
    ok &= gapless;
    detail.push(format!("dense family without a gap up to depth 12: {gapless}"));
    report(9, "true-crosscut detection", ok, detail.join("; "));
    assert!(ok);
}
