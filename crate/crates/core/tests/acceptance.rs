//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines are always shown.

use std::f64::consts::{PI, SQRT_2};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zeno_purify::exec::Execution;
use zeno_purify::linalg::{eigenvalues, ComplexMatrix};
use zeno_purify::protocols::{
    asymptotic_probability, closed_form_single_qubit, degenerate_perpendicular_clause, effective_coupling,
    entangle_eigenvalues, init2_eigenvalues, init2_thermal_limit, optimize_tau, perpendicular_determinant,
    run_purification, single_qubit_detuning, sweep_spectrum, zeta_angle, InitialState, ProjectedModel,
    PurificationTrace, RunConfig, TauGrid,
};
use zeno_purify::qubits::{HamiltonianSpec, ProbeState, QubitLabel};
use zeno_purify::spectral::{power_via_spectrum, spectral_report, verify_bound, DEFAULT_SPECTRAL_TOL};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run(cfg: &RunConfig) -> Result<PurificationTrace, String> {
    run_purification(cfg).map_err(|e| e.to_string())
}

/// Every trace produced by the suite, for the monotonicity check.
#[derive(Default)]
struct Traces(Vec<(String, Vec<f64>)>);

impl Traces {
    fn keep(&mut self, label: &str, trace: &PurificationTrace) {
        self.0.push((label.to_string(), trace.probability.clone()));
    }
}

fn pair_config(wx: f64, wa: f64, g: f64, tau: f64, n: usize) -> RunConfig {
    RunConfig::new(
        HamiltonianSpec::single_pair(wx, wa, g),
        ProbeState::up(),
        tau,
        n,
        InitialState::MixedRest { probe: QubitLabel::Up },
    )
}

fn chain_spec(omega: f64, g_xa: f64, g_ab: f64) -> HamiltonianSpec {
    HamiltonianSpec::chain(vec![omega; 3], vec![g_xa, g_ab])
}

fn star_spec(omega: f64, g: f64) -> HamiltonianSpec {
    HamiltonianSpec::star(vec![omega; 3], vec![g, g])
}

fn detuned_pair(traces: &mut Traces) -> Check {
    let start = Instant::now();
    let tau = PI / (2.0 * single_qubit_detuning(5.0, 6.0, 1.0));
    let cfg = pair_config(5.0, 6.0, 1.0, tau, 40);
    let trace = run(&cfg)?;
    traces.keep("detuned pair", &trace);
    let lambda1 = trace.spectrum.moduli[1];
    ensure((lambda1 - 0.4472).abs() <= 1e-4, format!("|λ1| = {lambda1}"))?;
    ensure(trace.fidelity[4] >= 0.99, format!("F(4) = {}", trace.fidelity[4]))?;
    let p_end = trace.final_probability();
    ensure((p_end - 0.5).abs() <= 1e-6, format!("P(40) = {p_end}"))?;
    let p_inf = asymptotic_probability(&cfg).map_err(|e| e.to_string())?.value();
    ensure((p_inf - 0.5).abs() <= 1e-6, format!("P(inf) = {p_inf}"))?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 1.0, format!("took {elapsed:.3} s"))?;
    Ok(format!(
        "|λ1| = {lambda1:.6}, F(4) = {:.6}, P(40) = {p_end:.9}, {:.1} ms",
        trace.fidelity[4],
        elapsed * 1e3
    ))
}

fn resonant_pair(traces: &mut Traces) -> Check {
    let trace = run(&pair_config(5.0, 5.0, 1.0, PI / 2.0, 5))?;
    traces.keep("resonant pair", &trace);
    let (f1, p1) = (trace.fidelity[1], trace.probability[1]);
    ensure((f1 - 1.0).abs() <= 1e-10, format!("F(1) = {f1}"))?;
    ensure((p1 - 0.5).abs() <= 1e-10, format!("P(1) = {p1}"))?;
    Ok(format!("F(1) = {f1:.12}, P(1) = {p1:.12}"))
}

fn chain_band_structure() -> Check {
    let (g, omega) = (1.0, 2.0);
    let gbar = effective_coupling(g, g);
    let model = ProjectedModel::new(&chain_spec(omega, g, g), ProbeState::down()).map_err(|e| e.to_string())?;
    let tau_of = |x: f64| x / (SQRT_2 * gbar);
    let second_modulus = |x: f64| -> Result<f64, String> {
        let r = model
            .report(tau_of(x), DEFAULT_SPECTRAL_TOL)
            .map_err(|e| e.to_string())?;
        Ok(r.moduli[1])
    };

    for k in 1..=3 {
        let x = k as f64 * PI;
        let numeric = second_modulus(x)?;
        let analytic = init2_eigenvalues(g, g, omega, tau_of(x)).max_subdominant();
        ensure((numeric - 1.0).abs() <= 1e-9, format!("x = {k}π: numeric {numeric}"))?;
        ensure((analytic - 1.0).abs() <= 1e-9, format!("x = {k}π: analytic {analytic}"))?;
    }
    let mut worst_mid = 0.0f64;
    for k in 0..4 {
        let x = (k as f64 + 0.5) * PI;
        let m = second_modulus(x)?;
        worst_mid = worst_mid.max(m);
        ensure(m < 1.0 - 1e-6, format!("x = {}π: {m}", k as f64 + 0.5))?;
    }

    // dense sweep strictly between the multiples of π
    let step = 4.0 * PI / 2001.0;
    let grid = TauGrid::new(tau_of(step), tau_of(2000.0 * step), tau_of(step)).map_err(|e| e.to_string())?;
    let sweep = sweep_spectrum(&model, &grid, DEFAULT_SPECTRAL_TOL, Execution::Parallel).map_err(|e| e.to_string())?;
    for p in &sweep {
        ensure(
            p.report.moduli[1] < 1.0,
            format!("τ = {}: {}", p.tau, p.report.moduli[1]),
        )?;
    }

    // ζ three ways: formula, branch point of the closed form, numerical optimum
    let zeta = zeta_angle(g, g);
    let branch = {
        let mut x = 1e-5;
        loop {
            let ev = init2_eigenvalues(g, g, omega, tau_of(x));
            if (ev.plus.norm() - ev.minus.norm()).abs() > 1e-6 || x > PI {
                break x;
            }
            x += 1e-5;
        }
    };
    let grid = TauGrid::new(tau_of(5e-4), tau_of(PI - 5e-4), tau_of(5e-4)).map_err(|e| e.to_string())?;
    let best = optimize_tau(&model, &grid, DEFAULT_SPECTRAL_TOL, Execution::Parallel).map_err(|e| e.to_string())?;
    let optimum = best.tau * SQRT_2 * gbar;
    for (label, z) in [("formula", zeta), ("branch point", branch), ("optimum", optimum)] {
        ensure((z / PI - 0.7836).abs() <= 1e-3, format!("ζ from {label} = {}π", z / PI))?;
    }
    Ok(format!(
        "ζ = {:.5}π (branch {:.5}π, optimum {:.5}π), max midpoint modulus {worst_mid:.6}, {} sweep points < 1",
        zeta / PI,
        branch / PI,
        optimum / PI,
        sweep.len()
    ))
}

fn chain_thermal(traces: &mut Traces) -> Check {
    let (omega, g, beta) = (2.0, 1.0, 1.0);
    let tau = zeta_angle(g, g) / (SQRT_2 * effective_coupling(g, g));
    let cfg = RunConfig::new(
        chain_spec(omega, g, g),
        ProbeState::down(),
        tau,
        100,
        InitialState::Thermal { beta },
    );
    let trace = run(&cfg)?;
    traces.keep("thermal chain", &trace);
    let expected = init2_thermal_limit(omega, effective_coupling(g, g), beta);
    let p = trace.final_probability();
    ensure(
        (p - expected).abs() <= 1e-6,
        format!("P(100) = {p}, expected {expected}"),
    )?;
    let first = trace
        .probability
        .iter()
        .position(|q| (q - expected).abs() <= 1e-6)
        .unwrap_or(usize::MAX);
    Ok(format!(
        "P(100) = {p:.9}, analytic {expected:.9}, within 1e-6 from N = {first}"
    ))
}

fn star_entanglement(traces: &mut Traces) -> Check {
    let g = 1.0;
    let labels = vec![QubitLabel::Right, QubitLabel::Up, QubitLabel::Down];
    let product = RunConfig::new(
        star_spec(0.0, g),
        ProbeState::right(),
        0.5 * PI,
        200,
        InitialState::Product(labels),
    );
    let trace = run(&product)?;
    traces.keep("star, product state", &trace);
    let (pa, fa) = (trace.final_probability(), trace.final_fidelity());
    ensure((pa - 0.5).abs() <= 1e-6, format!("product: P(200) = {pa}"))?;
    ensure((fa - 1.0).abs() <= 1e-6, format!("product: F(200) = {fa}"))?;

    let tau = zeta_angle(g, g) / (SQRT_2 * g);
    let thermal = RunConfig::new(
        star_spec(0.0, g),
        ProbeState::right(),
        tau,
        200,
        InitialState::Thermal { beta: 0.0 },
    );
    let trace = run(&thermal)?;
    traces.keep("star, infinite temperature", &trace);
    let (p0, pb) = (trace.probability[0], trace.final_probability());
    ensure((p0 - 0.5).abs() <= 1e-15, format!("thermal: P(0) = {p0}"))?;
    ensure((pb - 0.125).abs() <= 1e-6, format!("thermal: P(200) = {pb}"))?;
    Ok(format!(
        "product P(200) = {pa:.9}, F(200) = {fa:.9}; thermal P(0) = {p0}, P(200) = {pb:.9}"
    ))
}

fn random_spec(rng: &mut ChaCha8Rng) -> HamiltonianSpec {
    let coupling = |rng: &mut ChaCha8Rng| {
        let m = rng.gen_range(0.2..2.0);
        if rng.gen_bool(0.5) {
            m
        } else {
            -m
        }
    };
    match rng.gen_range(0..3) {
        0 => HamiltonianSpec::single_pair(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), coupling(rng)),
        1 => HamiltonianSpec::chain(
            (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect(),
            vec![coupling(rng), coupling(rng)],
        ),
        _ => HamiltonianSpec::star(
            (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect(),
            vec![coupling(rng), coupling(rng)],
        ),
    }
}

fn random_probe(rng: &mut ChaCha8Rng) -> ProbeState {
    ProbeState::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI)).unwrap()
}

/// Greedy nearest-neighbour distance between two eigenvalue lists.
fn spectrum_distance(a: &[C64], b: &[C64]) -> f64 {
    let mut unused: Vec<C64> = b.to_vec();
    let mut worst = 0.0f64;
    for z in a {
        let (idx, d) = unused
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (z - w).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("same length");
        worst = worst.max(d);
        unused.swap_remove(idx);
    }
    worst
}

fn jordan(blocks: &[(C64, usize)]) -> ComplexMatrix {
    let dim: usize = blocks.iter().map(|b| b.1).sum();
    let mut m = ComplexMatrix::zeros(dim);
    let mut at = 0;
    for &(lambda, len) in blocks {
        for k in 0..len {
            m[(at + k, at + k)] = lambda;
            if k + 1 < len {
                m[(at + k, at + k + 1)] = C64::new(1.0, 0.0);
            }
        }
        at += len;
    }
    m
}

fn property_suite(traces: &mut Traces) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);

    // unit-modulus bound
    let mut max_modulus = 0.0f64;
    let mut random_ops = Vec::new();
    for _ in 0..250 {
        let spec = random_spec(&mut rng);
        let model = ProjectedModel::new(&spec, random_probe(&mut rng)).map_err(|e| e.to_string())?;
        let v = model.projected(rng.gen_range(0.01..5.0)).map_err(|e| e.to_string())?;
        let report = spectral_report(&v, DEFAULT_SPECTRAL_TOL).map_err(|e| e.to_string())?;
        ensure(verify_bound(&report), format!("bound violated: {:?}", report.moduli))?;
        max_modulus = max_modulus.max(report.moduli[0]);
        if random_ops.len() < 40 {
            random_ops.push(v);
        }
    }

    // spectral power against repeated multiplication
    let one = C64::new(1.0, 0.0);
    let synthetic = vec![
        jordan(&[(C64::new(0.9, 0.0), 3), (C64::new(0.5, 0.0), 1)]),
        jordan(&[(C64::new(0.0, -0.7), 2), (C64::new(0.3, 0.2), 2)]),
        jordan(&[(C64::new(0.95, 0.0), 4)]),
        jordan(&[(one, 2), (C64::new(-0.4, 0.0), 1)]),
        jordan(&[(C64::new(0.0, 0.0), 3), (C64::new(0.6, 0.6), 1)]),
    ];
    let mut worst_power = 0.0f64;
    for v in random_ops.iter().chain(&synthetic) {
        let report = spectral_report(v, DEFAULT_SPECTRAL_TOL).map_err(|e| e.to_string())?;
        let mut direct = ComplexMatrix::identity(v.dim());
        for n in 1..=50u32 {
            direct = &direct * v;
            let err = (&power_via_spectrum(&report, n) - &direct).max_abs();
            worst_power = worst_power.max(err / n as f64);
            ensure(err <= 1e-10 * n as f64, format!("power N = {n}: error {err:e}"))?;
        }
    }
    for v in &synthetic {
        let report = spectral_report(v, DEFAULT_SPECTRAL_TOL).map_err(|e| e.to_string())?;
        ensure(
            !report.flags.diagonalizable,
            "synthetic Jordan matrix reported diagonalizable",
        )?;
    }

    // single-pair closed form against the simulator
    let mut worst_closed = 0.0f64;
    for i in 0..100 {
        let (wx, wa) = (rng.gen_range(-4.0..6.0), rng.gen_range(-4.0..6.0));
        let g = rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let tau = rng.gen_range(0.05..4.0);
        let n = rng.gen_range(1..40usize);
        let trace = run(&pair_config(wx, wa, g, tau, n))?;
        for (k, (f, p)) in trace.fidelity.iter().zip(&trace.probability).enumerate() {
            let oracle = closed_form_single_qubit(wx, wa, g, tau, k as u32);
            let err = (f - oracle.fidelity).abs().max((p - oracle.probability).abs());
            worst_closed = worst_closed.max(err);
            ensure(err <= 1e-12, format!("draw {i}, N = {k}: error {err:e}"))?;
        }
        traces.keep(&format!("random pair {i}"), &trace);
    }

    // chain and star closed-form eigenvalues against the numerical spectrum
    let mut worst_eig = 0.0f64;
    for _ in 0..100 {
        let sign = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let (g_xa, g_ab) = (
            rng.gen_range(0.3..2.0) * sign(&mut rng),
            rng.gen_range(0.3..2.0) * sign(&mut rng),
        );
        let (omega, tau) = (rng.gen_range(-3.0..3.0), rng.gen_range(0.05..4.0));
        let model =
            ProjectedModel::new(&chain_spec(omega, g_xa, g_ab), ProbeState::down()).map_err(|e| e.to_string())?;
        let numeric = eigenvalues(&model.projected(tau).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let d = spectrum_distance(&init2_eigenvalues(g_xa, g_ab, omega, tau).as_array(), &numeric);
        worst_eig = worst_eig.max(d);
        ensure(
            d <= 1e-10,
            format!("chain g = ({g_xa}, {g_ab}), Ω = {omega}, τ = {tau}: {d:e}"),
        )?;

        let g = rng.gen_range(0.3..2.0) * sign(&mut rng);
        let tau = rng.gen_range(0.3..4.0);
        let omega = 2.0 * PI * rng.gen_range(-1..=1) as f64 / tau;
        let model = ProjectedModel::new(&star_spec(omega, g), ProbeState::right()).map_err(|e| e.to_string())?;
        let numeric = eigenvalues(&model.projected(tau).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let d = spectrum_distance(&entangle_eigenvalues(g, tau).as_array(), &numeric);
        worst_eig = worst_eig.max(d);
        ensure(d <= 1e-10, format!("star g = {g}, Ω = {omega}, τ = {tau}: {d:e}"))?;
    }

    // monotone success probability on every run of the suite
    for (label, probability) in &traces.0 {
        for w in probability.windows(2) {
            ensure(
                w[1] <= w[0] * (1.0 + 1e-12),
                format!("{label}: P increased {} -> {}", w[0], w[1]),
            )?;
        }
    }
    Ok(format!(
        "max |λ| {max_modulus:.12}, power err/N {worst_power:.1e}, closed form {worst_closed:.1e}, eigenvalues {worst_eig:.1e}, {} monotone runs",
        traces.0.len()
    ))
}

fn perpendicular_determinant_zeros() -> Check {
    let (wx, wa, g) = (5.0, 6.3, 0.8);
    let mut zeros = 0;
    let mut worst_formula = 0.0f64;
    for i in 0..50 {
        let theta = PI * i as f64 / 49.0;
        let model = ProjectedModel::new(
            &HamiltonianSpec::single_pair(wx, wa, g),
            ProbeState::new(theta, 0.0).unwrap(),
        )
        .map_err(|e| e.to_string())?;
        for j in 0..50 {
            let tau = 0.1 + 4.9 * j as f64 / 49.0;
            let det = model.perpendicular(tau).map_err(|e| e.to_string())?.determinant();
            let formula = perpendicular_determinant(wx, wa, g, theta, tau);
            worst_formula = worst_formula.max((det.norm() - formula.norm()).abs());
            let vanishes = det.norm() <= 1e-10;
            let predicted = theta.sin().abs() <= 1e-9 || degenerate_perpendicular_clause(wx, wa, g, tau);
            ensure(
                vanishes == predicted,
                format!(
                    "θ = {theta}, τ = {tau}: |det| = {:e}, predicted zero = {predicted}",
                    det.norm()
                ),
            )?;
            zeros += vanishes as usize;
        }
    }
    ensure(
        worst_formula <= 1e-10,
        format!("closed-form |det| differs by {worst_formula:e}"),
    )?;

    // the second clause: resonant pair after one full exchange period
    let (w, tau) = (3.0, PI);
    ensure(degenerate_perpendicular_clause(w, w, 1.0, tau), "clause not detected")?;
    let model = ProjectedModel::new(
        &HamiltonianSpec::single_pair(w, w, 1.0),
        ProbeState::new(PI / 2.0, 0.3).unwrap(),
    )
    .map_err(|e| e.to_string())?;
    let det = model
        .perpendicular(tau)
        .map_err(|e| e.to_string())?
        .determinant()
        .norm();
    ensure(det <= 1e-10, format!("degenerate point: |det| = {det:e}"))?;
    let v = model.projected(tau).map_err(|e| e.to_string())?;
    ensure(
        (&v - &ComplexMatrix::identity(2)).max_abs() <= 1e-10,
        "projected operator is not the identity",
    )?;
    Ok(format!(
        "{zeros}/2500 grid zeros, all at sin θ = 0; closed form within {worst_formula:.1e}; degenerate point |det| = {det:.1e}"
    ))
}

fn main() {
    let start = Instant::now();
    let mut traces = Traces::default();
    let mut results: Vec<(usize, &str, Check)> = Vec::new();
    let mut record = |id: usize, name: &'static str, f: &mut dyn FnMut() -> Check| {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        println!("criterion {id} [{tag}] {name}: {detail}");
        results.push((id, name, outcome));
    };
    record(1, "detuned pair purification", &mut || detuned_pair(&mut traces));
    record(2, "resonant pair, one-step purification", &mut || {
        resonant_pair(&mut traces)
    });
    record(3, "chain eigenvalue bands and ζ", &mut chain_band_structure);
    record(4, "chain initialization from a thermal state", &mut || {
        chain_thermal(&mut traces)
    });
    record(5, "star entanglement extraction", &mut || {
        star_entanglement(&mut traces)
    });
    record(6, "property suite", &mut || property_suite(&mut traces));
    record(
        7,
        "perpendicular determinant zeros",
        &mut perpendicular_determinant_zeros,
    );

    let failed = results.iter().filter(|r| r.2.is_err()).count();
    println!(
        "acceptance: {}/{} criteria passed in {:.2} s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
