//! End-to-end acceptance checks. Each test prints one `criterion N ... PASS|FAIL`
//! line straight to stdout (bypassing the test harness capture) and then
//! asserts. Tests hold a shared lock so the timing criterion runs on a quiet
//! machine.

use std::io::Write;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

use polyzeta::bench::{run_cell, Algo, CacheMode, Preset};
use polyzeta::extend::{hurwitz_from_li, li_multiplication, periodic_zeta};
use polyzeta::hurwitz::{hz_direct, hz_euler_maclaurin, hz_taylor, riemann_zeta, TaylorCenter};
use polyzeta::monodromy::{
    apply_word, check_presentation, delta, delta_sum_closed_form, sheet_jump_check, unipotent_generators, Gen, GenWord,
    SheetState, UPoly,
};
use polyzeta::numctx::digits_to_bits;
use polyzeta::polylog::{error_bound, li_borwein, li_borwein_order, li_direct, region_ratio};
use polyzeta::render::{render_plot, PlotFunction, PlotKind, PlotSpec};
use polyzeta::validate::{exact, validate_suite, Suite};
use polyzeta::BigComplex;

static LOCK: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    LOCK.lock().unwrap_or_else(|e| e.into_inner())
}

fn report(n: &str, name: &str, detail: String, pass: bool) {
    let line = format!("criterion {n:>3} {name:<34} {detail:<60} {}\n", if pass { "PASS" } else { "FAIL" });
    let out = std::io::stdout();
    let mut lock = out.lock();
    let _ = lock.write_all(line.as_bytes());
    let _ = lock.flush();
}

fn cx(bits: u32, re: f64, im: f64) -> BigComplex {
    BigComplex::from_f64(bits, re, im)
}

fn rel(a: &BigComplex, b: &BigComplex) -> f64 {
    a.dist(b).to_f64() / b.abs_f64().max(1.0)
}

fn disk_point(rng: &mut ChaCha8Rng, bits: u32, radius: f64) -> BigComplex {
    let r = radius * rng.gen::<f64>().sqrt();
    let t = rng.gen_range(0.0..std::f64::consts::TAU);
    cx(bits, r * t.cos(), r * t.sin())
}

#[test]
fn c01_oracle_equivalence() {
    let _g = serial();
    let d = 50;
    let bits = digits_to_bits(d) + 64;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0f64;
    let mut errors = 0;
    for _ in 0..25 {
        let s = cx(bits, rng.gen_range(-2.0..3.0), rng.gen_range(-30.0..30.0));
        let z = disk_point(&mut rng, bits, 0.8);
        match (li_borwein(&s, &z, d), li_direct(&s, &z, d)) {
            (Ok(a), Ok(b)) => worst = worst.max(rel(&a, &b)),
            _ => errors += 1,
        }
    }
    let pass = errors == 0 && worst <= 1e-48;
    report("1", "borwein vs direct, 25 points", format!("max rel {worst:.2e} (tol 1e-48), {errors} errors"), pass);
    assert!(pass);
}

#[test]
fn c02_exact_rational_forms() {
    let _g = serial();
    let checks = exact(&[0, 1, 2, 3, 4], 40);
    let failed: Vec<String> = checks.iter().filter(|c| c.passed() != Some(true)).map(|c| c.name.clone()).collect();
    let pass = checks.len() == 15 && failed.is_empty();
    report(
        "2",
        "exact forms s=0..-4, n and n+5",
        format!("{} checks at tol 1e-38, failed {failed:?}", checks.len()),
        pass,
    );
    assert!(pass);
}

#[test]
fn c03_error_bound_soundness() {
    let _g = serial();
    let d = 60;
    let bits = digits_to_bits(d + 20) + 64;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut tested, mut violations, mut worst_ratio) = (0, 0, 0f64);
    while tested < 100 {
        let s = cx(bits, rng.gen_range(-2.0..3.0), rng.gen_range(-30.0..30.0));
        let z = disk_point(&mut rng, bits, 0.9);
        let n = rng.gen_range(1..=40usize);
        let bound = match error_bound(&s, &z, n) {
            Ok(b) if b > 1e-55 => b,
            _ => continue,
        };
        let reference = li_direct(&s, &z, d + 20).expect("reference");
        let v = li_borwein_order(&s, &z, n, bits, None).expect("order-n sum");
        let err = v.dist(&reference).to_f64();
        worst_ratio = worst_ratio.max(err / bound);
        if err > bound {
            violations += 1;
        }
        tested += 1;
    }
    let pass = violations == 0;
    report(
        "3",
        "error bound soundness, 100 cases",
        format!("{violations} violations, max err/bound {worst_ratio:.3}"),
        pass,
    );
    assert!(pass);
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[test]
fn c04_precision_scaling_at_minus_one() {
    let _g = serial();
    let bits = 600;
    let z = cx(bits, -1.0, 0.0);
    // Li_2(−1) = −π²/12 and Li_s(−1) = −(1 − 2^{1−s}) ζ(s)
    let pi = Float::with_val(bits, rug::float::Constant::Pi);
    let s2 = BigComplex::from_int(bits, 2);
    let li2 = BigComplex::from_real(-(pi.square() / 12u32));
    let sc = cx(bits, 0.5, 14.134725);
    let eta = {
        let two = BigComplex::from_int(bits, 2);
        let t = (&(-&sc).add_i64(1) * &two.ln()).exp();
        &(-&(-&t).add_i64(1)) * &riemann_zeta(&sc, 150).unwrap()
    };
    let ns: Vec<usize> = (4..=60).step_by(4).collect();
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let mut slopes = Vec::new();
    for (s, want) in [(&s2, &li2), (&sc, &eta)] {
        let ys: Vec<f64> = ns
            .iter()
            .map(|&n| {
                let v = li_borwein_order(s, &z, n, bits, None).unwrap();
                -(v.dist(want).to_f64() / want.abs_f64()).log2()
            })
            .collect();
        slopes.push(slope(&xs, &ys));
    }
    let pass = slopes.iter().all(|k| (2.0..=4.0).contains(k));
    report(
        "4",
        "bits per order at z=-1",
        format!("slopes s=2: {:.3}, s=0.5+14.13i: {:.3} (want [2,4])", slopes[0], slopes[1]),
        pass,
    );
    assert!(pass);
}

#[test]
fn c05_hurwitz_cross_algorithm() {
    let _g = serial();
    let d = 40;
    let bits = digits_to_bits(d) + 64;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0f64;
    let mut errors = Vec::new();
    for _ in 0..20 {
        let s = cx(bits, rng.gen_range(1.2..4.0), rng.gen_range(-30.0..30.0));
        let q = cx(bits, 1.0 - rng.gen::<f64>(), 0.0);
        let vals =
            [hz_direct(&s, &q, d), hz_euler_maclaurin(&s, &q, d), hz_taylor(&s, &q, d, TaylorCenter::nearest(&q))];
        match vals {
            [Ok(a), Ok(b), Ok(c)] => {
                worst = worst.max(a.dist(&b).to_f64()).max(a.dist(&c).to_f64()).max(b.dist(&c).to_f64());
            }
            other => errors.extend(other.into_iter().filter_map(|r| r.err().map(|e| e.to_string()))),
        }
    }
    let pass = errors.is_empty() && worst <= 1e-38;
    report(
        "5",
        "direct / EM / Taylor, 20 points",
        format!("max pairwise {worst:.2e} (tol 1e-38), errors {errors:?}"),
        pass,
    );
    assert!(pass);
}

#[test]
fn c06_jonquiere_on_the_critical_line() {
    let _g = serial();
    let d = 30;
    let bits = digits_to_bits(d) + 64;
    let s = cx(bits, 0.5, 14.134725);
    let one_minus_s = (-&s).add_i64(1);
    let mut worst = 0f64;
    for q in [0.3, 0.5, 0.7] {
        let a = hurwitz_from_li(&s, &Float::with_val(bits, q), d).unwrap();
        let b = hz_euler_maclaurin(&one_minus_s, &cx(bits, q, 0.0), d).unwrap();
        worst = worst.max(a.dist(&b).to_f64());
    }
    let pass = worst <= 1e-28;
    report("6", "Jonquiere vs EM, q=0.3,0.5,0.7", format!("max {worst:.2e} (tol 1e-28)"), pass);
    assert!(pass);
}

#[test]
fn c07_bernoulli_identity() {
    let _g = serial();
    let r = validate_suite(Suite::Bernoulli, 30);
    let (p, n) = r.counts();
    let pass = n == 6 && r.all_passed();
    report("7", "Bernoulli identity n=2..4", format!("{p} of {n} within 1e-28"), pass);
    assert!(pass);
}

#[test]
fn c08_riemann_zero_proximity() {
    let _g = serial();
    let d = 30;
    let bits = digits_to_bits(d) + 64;
    let s = cx(bits, 0.5, 14.134725);
    let z = riemann_zeta(&s, d).unwrap();
    let f = periodic_zeta(&Float::with_val(bits, 1), &s, d).unwrap();
    let diff = f.dist(&z).to_f64();
    let pass = z.abs_f64() < 1e-5 && diff <= 1e-28;
    report(
        "8",
        "|zeta(0.5+14.134725i)|",
        format!("{:.3e} (< 1e-5), periodic differs by {diff:.1e}", z.abs_f64()),
        pass,
    );

    // Secondary spot checks from the published zero list, plus the nearby
    // true zero at 21.022 that the 20.02 entry appears to stand for.
    let mut secondary_ok = true;
    for (tau, gating) in [(20.02, false), (21.022, true), (25.01, true)] {
        let v = riemann_zeta(&cx(bits, 0.5, tau), d).unwrap().abs_f64();
        let ok = v < 1e-2;
        let note = if gating { "" } else { ", listed zero, not gating" };
        report("8b", &format!("|zeta(0.5+{tau}i)|"), format!("{v:.3e} (< 1e-2){note}"), ok);
        if gating {
            secondary_ok &= ok;
        }
    }
    assert!(pass && secondary_ok);
}

#[test]
fn c09_multiplication() {
    let _g = serial();
    let d = 30;
    let bits = digits_to_bits(d) + 64;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0f64;
    let mut count = 0;
    for p in [2u32, 3] {
        let mut done = 0;
        while done < 10 {
            let s = cx(bits, rng.gen_range(-1.0..3.0), rng.gen_range(-20.0..20.0));
            let z = disk_point(&mut rng, bits, 1.5);
            if region_ratio(&z).map_or(true, |r| r >= 3.6) {
                continue;
            }
            let a = li_multiplication(&s, &z, p, d).unwrap();
            let b = li_borwein(&s, &z, d).unwrap();
            worst = worst.max(a.dist(&b).to_f64());
            done += 1;
            count += 1;
        }
    }
    let pass = worst <= 1e-28;
    report("9", "multiplication p=2,3", format!("{count} points, max {worst:.2e} (tol 1e-28)"), pass);
    assert!(pass);
}

#[test]
fn c10_monodromy_numerics() {
    let _g = serial();
    let d = 30;
    let bits = digits_to_bits(d) + 64;
    let s = cx(bits, 0.5, 15.0);
    let jump = sheet_jump_check(&s, 2.0, 1e-8, 1, d).unwrap();
    let z = cx(bits, -0.5, 0.0);
    let mut acc = BigComplex::zero(bits);
    for k in 1..=5 {
        acc = &acc + &delta(k, &s, &z, d).unwrap();
    }
    let cf = delta_sum_closed_form(5, &s, &z, d).unwrap();
    let sum_err = rel(&acc, &cf);
    let pass = jump <= 1e-6 && sum_err <= 1e-26;
    report("10", "sheet jump and delta sum", format!("jump {jump:.2e} (1e-6), sum {sum_err:.2e} (1e-26)"), pass);
    assert!(pass);
}

#[test]
fn c11_monodromy_algebra() {
    let _g = serial();
    let mut failures = Vec::new();
    let r2 = check_presentation(&unipotent_generators(2).unwrap());
    if !(r2.main_relation && r2.heisenberg_center == Some(true)) {
        failures.push("m=2 Heisenberg".to_string());
    }
    for m in 3..=5 {
        if !check_presentation(&unipotent_generators(m).unwrap()).main_relation {
            failures.push(format!("m={m} relation"));
        }
    }
    let li = SheetState::principal();
    let w = GenWord::commutator();
    let mut want = li.clone();
    want.add_delta(1, &UPoly::constant(1)).unwrap();
    want.add_delta(2, &UPoly::constant(-1)).unwrap();
    if apply_word(&li, &w) != want {
        failures.push("w.Li".into());
    }
    let g1 = GenWord::new(vec![Gen::G1]);
    if apply_word(&li, &g1.concat(&w)) != apply_word(&li, &w.concat(&g1)) {
        failures.push("g1 w = w g1".into());
    }
    let pass = failures.is_empty();
    report("11", "unipotent and symbolic relations", format!("m=2..5 and w checks, failed {failures:?}"), pass);
    assert!(pass);
}

#[test]
fn c12_performance_ordering() {
    let _g = serial();
    let t = |preset, algo| run_cell(preset, algo, 100, CacheMode::Cold, 5).seconds().expect("timed");
    let borwein = t(Preset::Fig81, Algo::Borwein);
    let direct = t(Preset::Fig81, Algo::Direct);
    let em = t(Preset::Fig83, Algo::EulerMaclaurin);
    let taylor = t(Preset::Fig83, Algo::Taylor);
    let pass = borwein <= direct && em <= taylor;
    report(
        "12",
        "timing orderings at D=100, cold",
        format!("borwein {borwein:.4}s <= direct {direct:.4}s, EM {em:.4}s <= Taylor {taylor:.4}s"),
        pass,
    );
    assert!(pass);
}

#[test]
fn c13_determinism() {
    let _g = serial();
    let a = validate_suite(Suite::All, 30).to_string();
    let b = validate_suite(Suite::All, 30).to_string();
    let terms =
        |algo| (0..2).map(|_| run_cell(Preset::Fig83, algo, 30, CacheMode::Cold, 1).untimed()).collect::<Vec<_>>();
    let bench_same = [Algo::EulerMaclaurin, Algo::Taylor, Algo::Jonquiere, Algo::Direct].into_iter().all(|algo| {
        let t = terms(algo);
        t[0] == t[1]
    });
    let spec = PlotSpec {
        kind: PlotKind::Phase,
        function: PlotFunction::PolylogZPlane,
        window: (-1.5, 1.5, -1.5, 1.5),
        width: 24,
        height: 24,
        s: (0.5, 15.0),
    };
    let img_same = render_plot(&spec, 8).unwrap().to_ppm() == render_plot(&spec, 8).unwrap().to_ppm();
    let pass = a == b && bench_same && img_same;
    report(
        "13",
        "repeatable validate, bench, render",
        format!("validate {}, bench terms {}, render {}", a == b, bench_same, img_same),
        pass,
    );
    assert!(pass);
}
