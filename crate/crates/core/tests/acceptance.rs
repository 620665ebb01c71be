//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use gosc_core::gfunc::{
    conditional_bound, euler_zero_sum_identity, evaluate_g_at_log, upper_bound_g, Direction,
    DEFAULT_PREC,
};
use gosc_core::goldbach::{
    compare_explicit_formula, sum_r_direct, sum_r_sieve, PrimePowerSieve, GOLDBACH_PREC,
};
use gosc_core::lll::{lll_reduce, same_lattice, verify_reduced};
use gosc_core::otr::{
    figure1_witnesses, run_pipeline, verify_witness, PipelineOptions, PipelineOutcome, Witness,
    WitnessKind,
};
use gosc_core::report::truncate;
use gosc_core::{ApproxProblem, ReductionParams, ZeroTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Constant;
use rug::{Float, Integer};

use common::{deep_table, main_table, random_basis, shortest_norm_sq};

const P: u32 = DEFAULT_PREC;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn f(x: f64) -> Float {
    Float::with_val(P, x)
}

fn dec(s: &str) -> Float {
    Float::with_val(P, Float::parse(s).unwrap())
}

fn upper_bound() -> Outcome {
    let t = dec("1420.41");
    let start = Instant::now();
    let report = upper_bound_g(main_table(), &t, &t, P).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let v = &report.value;
    let pass = *v > dec("0.0230586") && *v < dec("0.0230587") && elapsed < 1.0;
    check(
        pass,
        format!("value {} in (0.0230586, 0.0230587), {elapsed:.3}s", truncate(v, 10)),
    )
}

fn euler_identity() -> Outcome {
    let table = main_table();
    let identity = euler_zero_sum_identity(P);
    let t = f(1420.0);
    let n = table.count_up_to(&t).unwrap();
    let mut sum = Float::new(P);
    let mut monotone = true;
    for g in &table.ordinates()[..n] {
        let g2 = Float::with_val(P, g.square_ref());
        let term = Float::with_val(P, &g2 + 0.25f64).recip();
        let next = Float::with_val(P, &sum + &term);
        monotone &= next > sum;
        sum = next;
    }
    let gap = Float::with_val(P, &identity - &sum);
    let constant_ok = identity >= dec("0.02309") && identity < dec("0.02310");
    let pass = monotone && gap > 0 && gap < 1e-3 && constant_ok;
    check(
        pass,
        format!(
            "identity {}, partial sum over {n} zeros {}, gap {:.3e}",
            truncate(&identity, 8),
            truncate(&sum, 8),
            gap.to_f64()
        ),
    )
}

const TABLE1: &[(usize, &str)] = &[
    (70, "0.014756"),
    (100, "0.016352"),
    (150, "0.017837"),
    (200, "0.018692"),
    (250, "0.019269"),
    (300, "0.019684"),
    (350, "0.020001"),
    (400, "0.020254"),
    (450, "0.020459"),
    (500, "0.020630"),
    (600, "0.020902"),
    (700, "0.021109"),
    (800, "0.021272"),
    (900, "0.021404"),
    (1000, "0.021515"),
    (2000, "0.022079"),
];

fn table1() -> Outcome {
    let eps = f(0.01);
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for &(n, printed) in TABLE1 {
        let r = conditional_bound(main_table(), n, &eps, Direction::Positive, P).unwrap();
        let got = truncate(&r.value, 6);
        if got != printed {
            mismatches.push(format!("N={n}: {got} vs {printed}"));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    check(
        mismatches.is_empty() && elapsed < 10.0,
        if mismatches.is_empty() {
            format!("{} rows match under truncation, {elapsed:.2}s", TABLE1.len())
        } else {
            mismatches.join("; ")
        },
    )
}

fn pipeline(n: usize, b: u32) -> (PipelineOutcome, f64) {
    let table = main_table();
    let problem = ApproxProblem::with_defaults(n, b, table).unwrap();
    let start = Instant::now();
    let out = run_pipeline(&problem, table, &PipelineOptions::default()).unwrap();
    (out, start.elapsed().as_secs_f64())
}

fn otr_end_to_end(runs: &[(PipelineOutcome, f64)]) -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for (out, secs) in runs {
        let (wi, wh) = (&out.inhomogeneous, &out.homogeneous);
        let n = out.problem.n;
        let need = if n == 70 { dec("0.0146") } else { dec("0.0162") };
        let ok_bounds = wi.bound >= need && Float::with_val(P, -&wh.bound) >= need;
        let ok_eps = n != 70 || (wi.eps <= 0.01 && wh.eps <= 0.01);
        // The certified bound dominates the conditional estimate at its own ε.
        let ci = conditional_bound(main_table(), n, &wi.eps, Direction::Positive, P).unwrap();
        let ch = conditional_bound(main_table(), n, &wh.eps, Direction::Negative, P).unwrap();
        let ok_cond = wi.bound >= Float::with_val(P, &ci.value - 1e-9)
            && wh.bound <= Float::with_val(P, &ch.value + 1e-9);
        pass &= ok_bounds && ok_eps && ok_cond;
        lines.push(format!(
            "N={n} b={}: eps1 {} eps2 {} bounds [{}, {}] ({secs:.0}s)",
            out.problem.b,
            wi.eps_decimal(5),
            wh.eps_decimal(5),
            wh.bound_decimal(7),
            wi.bound_decimal(7)
        ));
    }
    check(pass, lines.join("; "))
}

fn figure1() -> Outcome {
    let table = deep_table();
    let w = figure1_witnesses();
    let start = Instant::now();
    let y = verify_witness(&w.y_numerator, w.c, WitnessKind::Inhomogeneous, 70, table, P).unwrap();
    let z = verify_witness(&w.z_numerator, w.c, WitnessKind::Homogeneous, 70, table, P).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let pass = y.eps <= dec("0.02106") && z.eps <= dec("0.02479") && elapsed < 300.0;
    check(
        pass,
        format!(
            "K=70: eps1 {} <= 0.02106, eps2 {} <= 0.02479 ({elapsed:.1}s)",
            y.eps_decimal(6),
            z.eps_decimal(6)
        ),
    )
}

/// Independent recomputation of ε, m and the truncated sum in plain MPFR.
fn soundness(w: &Witness, table: &ZeroTable) -> Result<(), String> {
    let prec = w.value.prec() + P + 256;
    let pi = Float::with_val(prec, Constant::Pi);
    let two_pi = Float::with_val(prec, &pi * 2u32);
    let mut eps = Float::new(P);
    for k in 1..=w.n {
        let theta = Float::with_val(prec, table.gamma(k) * &w.value);
        let shifted = match w.kind {
            WitnessKind::Inhomogeneous => Float::with_val(prec, &theta - &pi),
            WitnessKind::Homogeneous => theta.clone(),
        };
        let m = Float::with_val(prec, &shifted / &two_pi).round().to_integer().unwrap();
        if m != w.m[k - 1] {
            return Err(format!("m_{k} differs"));
        }
        let r = Float::with_val(prec, &shifted - Float::with_val(prec, &two_pi * &m)).abs();
        let r = Float::with_val(P, &r);
        if r > eps {
            eps = r;
        }
    }
    let slack = Float::with_val(P, &w.eps - &eps);
    let tiny = Float::with_val(P, 1) >> 150u32;
    if slack < Float::with_val(P, -&tiny) || slack > tiny {
        return Err(format!("eps differs by {}", slack.to_f64()));
    }
    let again = verify_witness(&w.numerator, w.c, w.kind, w.n, table, P).map_err(|e| e.to_string())?;
    if again.eps != w.eps || again.bound != w.bound || again.m != w.m {
        return Err("re-certification is not reproducible".into());
    }
    let t_star = table.t_star(w.n, P).unwrap();
    let direct = evaluate_g_at_log(table, &w.value, &t_star, P).map_err(|e| e.to_string())?;
    let diff = Float::with_val(P, &direct.partial - &w.partial).abs();
    if diff > 1e-15 {
        return Err(format!("truncated sum differs by {}", diff.to_f64()));
    }
    let reference = match w.kind {
        WitnessKind::Inhomogeneous => Float::with_val(P, &direct.partial - &direct.tail_radius),
        WitnessKind::Homogeneous => Float::with_val(P, &direct.partial + &direct.tail_radius),
    };
    let gap = Float::with_val(P, &reference - &w.bound);
    let directed = match w.kind {
        WitnessKind::Inhomogeneous => gap >= 0,
        WitnessKind::Homogeneous => gap <= 0,
    };
    if !directed || Float::with_val(P, gap.abs_ref()) > 1e-15 {
        return Err(format!("bound differs from partial ∓ tail by {}", gap.to_f64()));
    }
    Ok(())
}

fn soundness_and_lll(runs: &[(PipelineOutcome, f64)]) -> Outcome {
    let mut failures = Vec::new();
    let mut witnesses = 0;
    for (out, _) in runs {
        for w in [&out.inhomogeneous, &out.homogeneous] {
            witnesses += 1;
            if let Err(e) = soundness(w, main_table()) {
                failures.push(format!("N={} {}: {e}", w.n, w.kind.as_str()));
            }
        }
    }
    let y = figure1_witnesses();
    for (kind, num) in [
        (WitnessKind::Inhomogeneous, &y.y_numerator),
        (WitnessKind::Homogeneous, &y.z_numerator),
    ] {
        witnesses += 1;
        let w = verify_witness(num, y.c, kind, 70, deep_table(), P).unwrap();
        if let Err(e) = soundness(&w, deep_table()) {
            failures.push(format!("published {}: {e}", kind.as_str()));
        }
    }

    let params = ReductionParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f7472);
    let mut bases = 0;
    for i in 0..200 {
        let dim = rng.gen_range(1..=5usize);
        let bound = if i % 2 == 0 { 50 } else { 1000 };
        let basis = random_basis(&mut rng, dim, dim, bound, i % 3 != 0);
        let reduced = lll_reduce(&basis, &params).unwrap();
        bases += 1;
        if !same_lattice(&basis, &reduced).unwrap() {
            failures.push(format!("basis {i}: lattice changed"));
        }
        if let Err(v) = verify_reduced(&reduced, &params) {
            failures.push(format!("basis {i}: {v}"));
        }
        let lambda1 = shortest_norm_sq(&basis);
        if reduced.norm_sq(0) > Integer::from(&lambda1 << (dim as u32 - 1)) {
            failures.push(format!("basis {i}: first vector too long"));
        }
    }
    check(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{witnesses} witnesses recomputed exactly; {bases} random bases preserved, reduced, within 2^((d-1)/2)·λ1")
        } else {
            failures.join("; ")
        },
    )
}

fn goldbach() -> Outcome {
    let start = Instant::now();
    let x = 100_000u64;
    let s = compare_explicit_formula(x, main_table(), &f(1420.0), 1_000_000, GOLDBACH_PREC).unwrap();
    let rel = s.relative_residual();
    let sieve = PrimePowerSieve::new(10_000, GOLDBACH_PREC);
    let mut worst = Float::new(GOLDBACH_PREC);
    for x in [100u32, 1000, 2500, 5000, 7777, 10_000] {
        let a = sum_r_sieve(x, &sieve);
        let b = sum_r_direct(x, &sieve);
        let diff = Float::with_val(GOLDBACH_PREC, &a - &b).abs() / &b;
        if diff > worst {
            worst = diff;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = rel < 1e-2 && worst < 1e-20 && elapsed < 60.0;
    check(
        pass,
        format!(
            "x=1e5: |residual|/(x^2/2) = {:.3e}; sieve vs double loop max rel diff {:.1e} ({elapsed:.1}s)",
            rel.to_f64(),
            worst.to_f64()
        ),
    )
}

fn main() -> ExitCode {
    let mut all = true;
    let mut emit = |id: u32, name: &str, o: Outcome| {
        all &= o.pass;
        println!(
            "criterion {id} {:<4} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    };
    emit(1, "unconditional upper bound", upper_bound());
    emit(2, "zero-sum identity", euler_identity());
    emit(3, "conditional bounds table", table1());
    let runs = vec![pipeline(70, 930), pipeline(100, 1330)];
    emit(4, "lattice witnesses end to end", otr_end_to_end(&runs));
    emit(5, "published witnesses at depth 70", figure1());
    emit(6, "witness soundness and reduction properties", soundness_and_lll(&runs));
    emit(7, "explicit formula harness", goldbach());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
