//! Acceptance gate. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sobwidth_core::envelopes::{
    asymptotic_envelope, counting_sandwich, preasymptotic_value, sandwich_bounds,
    strong_equiv_bracket,
};
use sobwidth_core::gamma::ln_gamma;
use sobwidth_core::lattice::count_lattice;
use sobwidth_core::limitspace::{
    limit_approx_number, limit_count, limit_preasymptotic_bracket, limit_shell_index,
};
use sobwidth_core::oracle::{brute_budgets_auto, brute_count, brute_limit_spectrum, count_box};
use sobwidth_core::tractability::{limit_info_complexity, witness_eps, TractabilityReport};
use sobwidth_core::volumetrics::{
    log_gamma_bracket, log_strong_equiv_constant, log_volume_constant_bracket,
    strong_equiv_constant,
};
use sobwidth_core::{SmoothnessProfile, Spectrum};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_profile(rng: &mut ChaCha8Rng, d: usize) -> SmoothnessProfile {
    SmoothnessProfile::new((0..d).map(|_| rng.gen_range(0.3..3.0)).collect()).expect("valid")
}

/// Exponents from {1/2, 1, ..., 3}, so every `2R_j` is an integer.
fn half_integer_profile(rng: &mut ChaCha8Rng, d: usize) -> SmoothnessProfile {
    SmoothnessProfile::new((0..d).map(|_| rng.gen_range(1..=6) as f64 / 2.0).collect()).expect("valid")
}

fn box_points(widths: &[u64]) -> f64 {
    widths.iter().map(|&b| 2.0 * b as f64 + 1.0).product()
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn criterion_1() -> Outcome {
    const N: usize = 5000;
    let mut rng = rng(0x5eed_0001);
    let (mut exact_cases, mut worst, mut pointwise) = (0, 0.0f64, 0usize);
    for case in 0..100 {
        let d = rng.gen_range(1..=4);
        let p = if case % 4 == 0 {
            half_integer_profile(&mut rng, d)
        } else {
            random_profile(&mut rng, d)
        };
        let exact = p.exponents().iter().all(|r| (2.0 * r).fract() == 0.0);
        exact_cases += exact as usize;
        let brute = brute_budgets_auto(&p, N).map_err(err)?;
        let sp = Spectrum::new(&p);
        let mut check = |n: usize, shell: f64| -> Result<(), String> {
            let b = brute[n - 1];
            if exact {
                ensure!(shell == b, "R={p} n={n}: shell {shell} vs brute {b}");
            } else {
                let rel = (shell - b).abs() / b.max(1.0);
                worst = worst.max(rel);
                ensure!(rel <= 1e-9, "R={p} n={n}: shell {shell} vs brute {b}");
            }
            Ok(())
        };
        // every rank through the shell histogram
        for e in sp.spectrum_prefix(N as u64).map_err(err)? {
            let lo = e.shell_rank_lo.to_usize().expect("small");
            let hi = e.shell_rank_hi.to_usize().expect("small").min(N);
            for n in lo..=hi {
                check(n, e.shell)?;
            }
        }
        // pointwise: both ends of every brute shell plus random interior ranks
        let mut i = 0;
        while i < N {
            let mut j = i;
            while j + 1 < N && brute[j + 1] == brute[i] {
                j += 1;
            }
            for n in [i + 1, j + 1] {
                check(n, sp.approx_number(n as u64).map_err(err)?.shell)?;
                pointwise += 1;
            }
            i = j + 1;
        }
        for _ in 0..20 {
            let n = rng.gen_range(1..=N);
            check(n, sp.approx_number(n as u64).map_err(err)?.shell)?;
            pointwise += 1;
        }
    }
    Ok(format!(
        "100 profiles, n <= {N}; {exact_cases} exact-arithmetic profiles; {pointwise} pointwise calls; worst relative budget gap {worst:.1e}"
    ))
}

fn criterion_2() -> Outcome {
    // T is halved until the scan box holds at most this many points.
    const SCAN_LIMIT: f64 = 2e6;
    let mut rng = rng(0x5eed_0002);
    let mut total = 0u64;
    for case in 0..200 {
        let d = rng.gen_range(1..=4);
        let p = if case % 5 == 0 {
            half_integer_profile(&mut rng, d)
        } else {
            random_profile(&mut rng, d)
        };
        let integral_t = case % 2 == 0;
        let mut t = if integral_t {
            rng.gen_range(0..=100) as f64
        } else {
            rng.gen_range(0.0..=100.0)
        };
        while box_points(&count_box(&p, t)) > SCAN_LIMIT {
            t = if integral_t { (t / 2.0).floor() } else { t / 2.0 };
        }
        let strict = case % 3 == 0;
        let fast = count_lattice(&p, t, strict).map_err(err)?.count;
        let slow = brute_count(&p, t, strict, &count_box(&p, t)).map_err(err)?;
        ensure!(
            fast == BigUint::from(slow),
            "R={p} T={t} strict={strict}: {fast} vs brute {slow}"
        );
        total += slow;
    }
    Ok(format!("200 cases, {total} lattice points in total, all equal"))
}

fn criterion_3() -> Outcome {
    let p = SmoothnessProfile::new(vec![1.0, 2.0]).map_err(err)?;
    let g = p.harmonic();
    // (4 Γ(3/2) Γ(5/4) / Γ(7/4))^{2/3} from tabulated Gamma values
    let limit = (4.0 * 0.886_226_925_452_758 * 0.906_402_477_055_477 / 0.919_062_526_848_883f64)
        .powf(2.0 / 3.0);
    let computed_limit = strong_equiv_constant(&p);
    ensure!(
        (computed_limit / limit - 1.0).abs() < 1e-12,
        "limit constant {computed_limit} vs tabulated {limit}"
    );
    let mut report = Vec::new();
    for (n, tol) in [(100u64, None), (1_000, None), (10_000, Some(0.15)), (100_000, Some(0.08))] {
        let br = strong_equiv_bracket(&p, n).map_err(err)?;
        let a = Spectrum::new(&p).approx_number(n).map_err(err)?.value;
        let scaled = (n as f64).powf(g) * a;
        ensure!(
            br.lower < scaled && scaled <= br.upper,
            "n={n}: n^g a_n = {scaled} outside ({}, {}]",
            br.lower,
            br.upper
        );
        let dev = (scaled / limit - 1.0).abs();
        // the bracket itself implies this tolerance once both ends are within it of the limit
        let implied = (br.lower / limit - 1.0).abs().max((br.upper / limit - 1.0).abs());
        if let Some(tol) = tol {
            ensure!(dev <= tol, "n={n}: deviation {dev} above {tol}");
        }
        report.push(format!("n={n} dev={dev:.2e} bracket-implied={implied:.2e}"));
    }
    Ok(format!("limit {limit:.6}; {}", report.join("; ")))
}

fn criterion_4() -> Outcome {
    const N_MAX: u64 = 1_000_000;
    let mut report = Vec::new();
    for r in [vec![1.0, 1.0], vec![1.0, 2.0]] {
        let p = SmoothnessProfile::new(r).map_err(err)?;
        let n0 = (p.ln_crossover().exp().floor() as u64).max(1);
        let mut first = n0;
        while !p.past_crossover((first as f64).ln()) {
            first += 1;
        }
        let mut checked = 0u64;
        let mut worst_lower = 0.0f64;
        let mut worst_upper = 0.0f64;
        let mut worst_tight = 0.0f64;
        for e in Spectrum::new(&p).spectrum_prefix(N_MAX).map_err(err)? {
            let lo = e.shell_rank_lo.to_u64().expect("small").max(first);
            let hi = e.shell_rank_hi.to_u64().expect("small").min(N_MAX);
            if lo > hi {
                continue;
            }
            // both bounds decrease in n while a_n is constant on the shell
            let at_lo = asymptotic_envelope(&p, lo).map_err(err)?;
            let at_hi = asymptotic_envelope(&p, hi).map_err(err)?;
            ensure!(at_lo.guaranteed, "R={p} n={lo} not past the crossover");
            let (lower, upper) = (at_lo.lower.expect("set"), at_hi.upper.expect("set"));
            ensure!(
                lower <= e.value && e.value <= upper,
                "R={p} ranks {lo}..={hi}: a_n={} outside [{lower}, {upper}]",
                e.value
            );
            worst_lower = worst_lower.max(lower / e.value);
            worst_upper = worst_upper.max(e.value / upper);
            worst_tight = worst_tight.max(e.value / at_hi.upper_tight.expect("set"));
            checked += hi - lo + 1;
        }
        ensure!(checked == N_MAX - first + 1, "R={p}: covered {checked} ranks");
        report.push(format!(
            "R=({p}) n in [{first}, {N_MAX}]: max lower/a_n {worst_lower:.3}, max a_n/upper {worst_upper:.3} (tight factor {worst_tight:.3})"
        ));
    }
    Ok(report.join("; "))
}

fn criterion_5() -> Outcome {
    // Profiles whose upper volume bound at m = 30 exceeds this are redrawn so the
    // exact counts stay desk-sized.
    const COUNT_LIMIT: f64 = 1e8;
    let mut rng = rng(0x5eed_0005);
    let mut redrawn = 0;
    let mut largest = 0.0f64;
    for _ in 0..100 {
        let p = loop {
            let d = rng.gen_range(1..=3);
            let p = random_profile(&mut rng, d);
            if sandwich_bounds(&p, 30).map_err(err)?.1 <= COUNT_LIMIT {
                break p;
            }
            redrawn += 1;
        };
        for m in 1..=30 {
            let s = counting_sandwich(&p, m).map_err(err)?;
            let c = s.count.to_f64().expect("finite");
            // d = 1 attains both ends exactly; the float bounds get rounding room
            let slack = 1e-12 * c;
            ensure!(
                s.lower <= c + slack && c <= s.upper + slack,
                "R={p} m={m}: {} <= {} <= {} fails",
                s.lower,
                s.count,
                s.upper
            );
            largest = largest.max(c);
        }
    }
    Ok(format!(
        "100 profiles x 30 shells; {redrawn} draws rejected for size; largest C = {largest:.3e}"
    ))
}

fn criterion_6() -> Outcome {
    for d in 1..=7u32 {
        let brute = brute_limit_spectrum(d).map_err(err)?;
        for (i, &b) in brute.iter().enumerate() {
            let a = limit_approx_number(d, &BigUint::from(i + 1)).map_err(err)?;
            ensure!(a == b, "d={d} n={}: {a} vs brute {b}", i + 1);
        }
    }
    for d in 1..=12u32 {
        let top = BigUint::from(3u8).pow(d);
        let a = limit_approx_number(d, &top).map_err(err)?;
        ensure!(a == (1.0 + d as f64).powf(-0.5), "d={d}: a_(3^d) = {a}");
        let past = limit_approx_number(d, &(top + 1u8)).map_err(err)?;
        ensure!(past == 0.0, "d={d}: a_(3^d+1) = {past}");
    }
    for d in 2..=1000u32 {
        let c2 = limit_count(d, 2).map_err(err)?.cumulative;
        ensure!(c2 == BigUint::from(2 * d * d + 1), "d={d}: C(2,d) = {c2}");
    }
    let mut windows = 0u64;
    let mut logarithmic = 0u64;
    for d in 3..=12u32 {
        let c2 = limit_count(d, 2).map_err(err)?.cumulative.to_u64().expect("small");
        for n in c2 + 1..=3u64.pow(d) {
            let n = BigUint::from(n);
            let m = limit_shell_index(d, &n).map_err(err)?.expect("n <= 3^d") as f64;
            let br = limit_preasymptotic_bracket(d, &n).map_err(err)?;
            ensure!(
                br.lower <= m && m <= br.upper,
                "d={d} n={n}: m={m} outside [{}, {}]",
                br.lower,
                br.upper
            );
            windows += 1;
            logarithmic += br.logarithmic as u64;
        }
    }
    Ok(format!(
        "brute match d <= 7; endpoints d <= 12; C(2,d) d <= 1000; {windows} bracket checks ({logarithmic} logarithmic)"
    ))
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    for d in 1..=20u32 {
        let n = limit_info_complexity(d, witness_eps(d)).map_err(err)?;
        ensure!(n == BigUint::from(3u8).pow(d), "d={d}: n(eps_d, d) = {n}");
    }
    let base = TractabilityReport::limit_witness(1000, 2.0, 1.0).map_err(err)?.ratio;
    let target = 3f64.ln() / 2.0;
    if (base - target).abs() > 1e-3 {
        failures.push(format!("(2,1) ratio {base} not within 1e-3 of {target}"));
    }
    let mut detail = vec![format!("(2,1) at d=1000: {base:.6}")];
    for (alpha, beta) in [(2.5, 0.5), (0.5, 1.5)] {
        let ratios: Vec<f64> = [10u32, 100, 1000]
            .iter()
            .map(|&d| TractabilityReport::limit_witness(d, alpha, beta).map(|r| r.ratio))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        if !(ratios[0] > ratios[1] && ratios[1] > ratios[2]) {
            failures.push(format!("({alpha},{beta}) not decreasing: {ratios:?}"));
        }
        if ratios[2] >= 0.02 {
            failures.push(format!("({alpha},{beta}) ratio {:.4} at d=1000 is not below 0.02", ratios[2]));
        }
        detail.push(format!(
            "({alpha},{beta}) at d=10,100,1000: {:.4}, {:.4}, {:.4}",
            ratios[0], ratios[1], ratios[2]
        ));
    }
    if failures.is_empty() {
        Ok(detail.join("; "))
    } else {
        Err(format!("{}; measured {}", failures.join("; "), detail.join("; ")))
    }
}

fn criterion_8() -> Outcome {
    let mut rng = rng(0x5eed_0008);
    for _ in 0..1000 {
        let d = rng.gen_range(1..=200);
        let p = random_profile(&mut rng, d);
        let c = log_strong_equiv_constant(&p);
        let (lo, hi) = log_volume_constant_bracket(&p);
        ensure!(lo <= c && c <= hi, "d={d} R={p}: ln const {c} outside [{lo}, {hi}]");
    }
    let mut xs: Vec<f64> = (0..998).map(|_| rng.gen_range(0.0..=50.0)).collect();
    xs.extend([0.0, 50.0]);
    for x in xs {
        let lg = ln_gamma(1.0 + x);
        let (lo, hi) = log_gamma_bracket(x);
        ensure!(lo <= lg && lg <= hi, "x={x}: ln Γ(1+x) = {lg} outside [{lo}, {hi}]");
    }
    Ok("1000 profiles (d <= 200) and 1000 Gamma points, zero violations".into())
}

fn criterion_9() -> Outcome {
    let mut rng = rng(0x5eed_0009);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..10_000 {
        let d = rng.gen_range(1..=8);
        let p = random_profile(&mut rng, d);
        let scale = 10f64.powf(rng.gen_range(-3.0..3.0));
        let x: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0) * scale).collect();
        let y: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0) * scale).collect();
        let xy: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = p.quasi_norm(&xy).map_err(err)?;
        let rhs = p.quasi_norm(&x).map_err(err)? + p.quasi_norm(&y).map_err(err)?;
        ensure!(
            lhs <= rhs + 1e-12 * rhs.max(1.0),
            "R={p} x={x:?} y={y:?}: {lhs} > {rhs}"
        );
        if rhs > 0.0 {
            worst = worst.max(lhs / rhs);
        }
    }
    Ok(format!("10000 triples, zero violations; max |x+y|/(|x|+|y|) = {worst:.6}"))
}

fn criterion_10() -> Outcome {
    let mut rng = rng(0x5eed_0010);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    let mut samples = 0;
    for d in 4..=12u32 {
        let p = SmoothnessProfile::isotropic(1.0, d as usize).map_err(err)?;
        let sp = Spectrum::new(&p);
        let top = 3u64.pow(d);
        let mut ns = vec![d as u64, top];
        let (a, b) = ((d as f64).ln(), (top as f64).ln());
        ns.extend((0..40).map(|_| (rng.gen_range(a..=b).exp().round() as u64).clamp(d as u64, top)));
        for n in ns {
            let ratio = sp.approx_number(n).map_err(err)?.value / preasymptotic_value(d, n).map_err(err)?;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
            samples += 1;
        }
    }
    ensure!(hi / lo <= 25.0, "bracket [{lo}, {hi}] has C/c = {}", hi / lo);
    Ok(format!(
        "{samples} samples, d in 4..=12: a_n / preasymptotic in [{lo:.4}, {hi:.4}], C/c = {:.3}",
        hi / lo
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "spectrum oracle equivalence", criterion_1),
        (2, "counting oracle equivalence", criterion_2),
        (3, "strong equivalence", criterion_3),
        (4, "asymptotic envelope containment", criterion_4),
        (5, "counting sandwich", criterion_5),
        (6, "limit spectrum", criterion_6),
        (7, "tractability witness", criterion_7),
        (8, "volume and Gamma brackets", criterion_8),
        (9, "quasi-triangle inequality", criterion_9),
        (10, "preasymptotic stability", criterion_10),
    ];
    let filter: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    let mut ran = 0;
    for (id, name, run) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id} ({name}): PASS [{secs:.1}s] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id} ({name}): FAIL [{secs:.1}s] {detail}");
            }
        }
    }
    println!("acceptance: {}/{ran} criteria pass", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
    let _ = BigUint::zero();
}
