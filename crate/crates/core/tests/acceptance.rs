//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always visible.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use ggf::generators::{
    fundamental_domain, localization_op_real, multiwindow_op, partition_mask, random_op,
    underspread_op, window_box, window_gaussian, window_random, WindowSet,
};
use ggf::gframe::{
    analysis, canonical_dual, cohen_map, frame_bounds, frame_operator_inverse, gframe_operator,
    injectivity_check, janssen_residual, janssen_sufficient, periodize, synthesis,
    wexler_raz_check,
};
use ggf::seqspace::{norm_equivalence_experiment, ProbeKind, Weight};
use ggf::spreading::spreading_of;
use ggf::tfcore::random::{gaussian_signal, seeded, uniform, SeededRng};
use ggf::tfcore::{eigh, rank_one, stft, unit_root, Op, PhaseTable};
use ggf::{Lattice, Signal, C64};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn pick<T: Copy>(rng: &mut SeededRng, items: &[T]) -> T {
    items[((uniform(rng) * items.len() as f64) as usize).min(items.len() - 1)]
}

fn gaussian_op(len: usize) -> Op {
    let g = window_gaussian(len).unwrap();
    rank_one(&g, &g).unwrap()
}

/// `card(Lambda) sum_{mu in Lambda°} c_S(mu) pi(mu)`, with the adjoint
/// lattice found by brute-force commutation and each coefficient taken
/// from the trace against the explicit shift `pi(k,l)[x][y] =
/// e^{2 pi i l x / L} delta(x, y + k)`.
fn janssen_oracle(s: &Op, lattice: &Lattice) -> Op {
    let len = s.dim();
    let adjoint = lattice.adjoint_brute_force();
    let mut acc = nalgebra::DMatrix::<C64>::zeros(len, len);
    for mu in adjoint.enumerate() {
        // tr(S pi(mu)^*) = sum_y S[y + k][y] e^{-2 pi i l (y + k) / L}
        let coef: C64 = (0..len)
            .map(|y| {
                let x = (y + mu.k) % len;
                s.get(x, y) * unit_root(len - (mu.l * x) % len, len)
            })
            .sum::<C64>()
            / len as f64;
        for y in 0..len {
            let x = (y + mu.k) % len;
            acc[(x, y)] += coef * unit_root(mu.l * x, len);
        }
    }
    Op::from_matrix(acc * C64::new(lattice.card() as f64, 0.0)).unwrap()
}

/// Runtime is measured over the library computation only; the oracle is
/// evaluated afterwards.
fn criterion_1() -> Outcome {
    let mut library_secs = 0.0;
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for len in [6usize, 8, 12, 16] {
        let ops: Vec<Op> = (0..50)
            .map(|seed| random_op(len, len, 1000 * len as u64 + seed).unwrap())
            .collect();
        for a in divisors(len) {
            for b in divisors(len) {
                let lattice = Lattice::separable(len, a, b).unwrap();
                let start = Instant::now();
                let results: Vec<(Op, f64)> = ops
                    .iter()
                    .map(|s| {
                        (
                            periodize(s, &lattice).unwrap(),
                            janssen_residual(s, &lattice).unwrap(),
                        )
                    })
                    .collect();
                library_secs += start.elapsed().as_secs_f64();
                for (s, (p, residual)) in ops.iter().zip(results) {
                    let err = janssen_oracle(s, &lattice).rel_diff(&p);
                    worst = worst.max(err).max(residual);
                    cases += 1;
                }
            }
        }
    }
    let detail = format!("max_rel_err={worst:.2e} cases={cases} runtime={library_secs:.2}s");
    if worst <= 1e-10 && library_secs < 10.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Seeded `(S, Lambda)` pairs that generate g-frames.
fn frame_instances(count: usize, seed: u64) -> Vec<(Op, Lattice)> {
    let mut rng = seeded(seed);
    let mut out = Vec::new();
    let mut draw = 0u64;
    while out.len() < count {
        draw += 1;
        let len = pick(&mut rng, &[6usize, 8, 12]);
        let a = pick(&mut rng, &divisors(len)[..divisors(len).len() - 1]);
        let b = pick(&mut rng, &divisors(len)[..divisors(len).len() - 1]);
        let lattice = Lattice::separable(len, a, b).unwrap();
        let s = match draw % 3 {
            0 => gaussian_op(len),
            1 => random_op(len, 1 + draw as usize % 3, seed * 7919 + draw).unwrap(),
            _ => {
                let phi = window_random(len, seed * 7919 + draw).unwrap();
                rank_one(&phi, &phi).unwrap()
            }
        };
        let r = frame_bounds(&s, &lattice).unwrap();
        if r.is_frame && r.upper / r.lower < 1e4 {
            out.push((s, lattice));
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let instances = frame_instances(50, 2);
    let mut dual_ok = 0;
    let mut agree = 0;
    let mut perturbed_false = 0;
    for (i, (s, lattice)) in instances.iter().enumerate() {
        let r = canonical_dual(s, lattice).unwrap();
        let wr = wexler_raz_check(s, &r, lattice).unwrap();
        if wr.biorth_ok && wr.recon_ok {
            dual_ok += 1;
        }
        let noise = random_op(s.dim(), s.dim(), 500 + i as u64).unwrap();
        let t = &r + &noise.scale_real(1e-3 * r.hs_norm());
        let wr = wexler_raz_check(s, &t, lattice).unwrap();
        if wr.biorth_ok == wr.recon_ok {
            agree += 1;
        }
        if !wr.biorth_ok && !wr.recon_ok {
            perturbed_false += 1;
        }
    }
    let detail =
        format!("duals_ok={dual_ok}/50 perturbed_agree={agree}/50 perturbed_both_false={perturbed_false}/50");
    if dual_ok == 50 && agree == 50 && perturbed_false == 50 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_3_instances() -> Vec<(String, Op, Lattice)> {
    let lattice = Lattice::separable(12, 2, 3).unwrap();
    let mut out = vec![("gaussian".to_string(), gaussian_op(12), lattice.clone())];
    for seed in 0..5 {
        out.push((
            format!("random:3:{seed}"),
            random_op(12, 3, seed).unwrap(),
            lattice.clone(),
        ));
    }
    out
}

fn criterion_3() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut probes = 0;
    for (name, s, lattice) in criterion_3_instances() {
        let r = canonical_dual(&s, &lattice).map_err(|e| format!("{name}: {e}"))?;
        let mut rng = seeded(3);
        for _ in 0..100 {
            let psi = gaussian_signal(&mut rng, 12);
            let a = synthesis(&s, &lattice, &analysis(&r, &lattice, &psi).unwrap()).unwrap();
            let b = synthesis(&r, &lattice, &analysis(&s, &lattice, &psi).unwrap()).unwrap();
            worst = worst
                .max(a.sub(&psi).unwrap().norm() / psi.norm())
                .max(b.sub(&psi).unwrap().norm() / psi.norm());
            probes += 1;
        }
    }
    let detail = format!("max_rel_err={worst:.2e} probes={probes}");
    if worst <= 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_4() -> Outcome {
    let len = 16;
    let lattice = Lattice::separable(len, 4, 4).unwrap();
    let points = [
        ggf::PhasePoint::new(0, 0),
        ggf::PhasePoint::new(1, 0),
        ggf::PhasePoint::new(0, 1),
    ];
    let mut rng = seeded(4);
    let mut worst_tight: f64 = 0.0;
    let mut worst_pred: f64 = 0.0;
    for _ in 0..10 {
        let coeffs: Vec<C64> = ggf::tfcore::random::complex_gaussian(&mut rng, 3);
        let s = underspread_op(&points, &coeffs, &lattice).unwrap();
        let r = frame_bounds(&s, &lattice).unwrap();
        let predicted = lattice.card() as f64 * s.hs_norm_sqr() / len as f64;
        worst_tight = worst_tight.max((r.upper - r.lower).abs() / r.upper);
        worst_pred = worst_pred.max((r.upper - predicted).abs() / r.upper);
    }
    let detail =
        format!("max|A-B|/B={worst_tight:.2e} max|B-pred|/B={worst_pred:.2e} instances=10");
    if worst_tight <= 1e-10 && worst_pred <= 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Mixed `(S, Lambda)` instances: frames, non-frames, and borderline
/// densities, over `L` in {6, 8, 12}.
fn mixed_instances(count: usize, seed: u64) -> Vec<(Op, Lattice)> {
    let mut rng = seeded(seed);
    (0..count as u64)
        .map(|i| {
            let len = pick(&mut rng, &[6usize, 8, 12]);
            let a = pick(&mut rng, &divisors(len));
            let b = pick(&mut rng, &divisors(len));
            let lattice = Lattice::separable(len, a, b).unwrap();
            let s = match i % 4 {
                0 => gaussian_op(len),
                1 => {
                    let w = pick(&mut rng, &[1usize, 2, 3]);
                    let phi = window_box(len, w).unwrap();
                    rank_one(&phi, &phi).unwrap()
                }
                2 => random_op(len, pick(&mut rng, &[1usize, 2, 3]), seed * 10_000 + i).unwrap(),
                _ => {
                    let phi = window_random(len, seed * 10_000 + i).unwrap();
                    rank_one(&phi, &phi).unwrap()
                }
            };
            (s, lattice)
        })
        .collect()
}

fn criterion_5() -> Outcome {
    let mut passed = 0;
    let mut violations = 0;
    for (s, lattice) in mixed_instances(200, 5) {
        let test = janssen_sufficient(&s, &lattice).unwrap();
        if test.passes {
            passed += 1;
            let eig = eigh(&gframe_operator(&s, &lattice).unwrap()).unwrap();
            if test.guaranteed_lower > eig.min() + 1e-9 * eig.max() {
                violations += 1;
            }
        }
    }
    let detail = format!("test_passed={passed}/200 violations={violations}");
    if violations == 0 && passed > 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_6() -> Outcome {
    let mut agree = 0;
    let mut frames = 0;
    for (s, lattice) in mixed_instances(200, 6) {
        let is_frame = frame_bounds(&s, &lattice).unwrap().is_frame;
        frames += is_frame as usize;
        if injectivity_check(&s, &lattice).unwrap() == is_frame {
            agree += 1;
        }
    }
    let detail = format!(
        "agree={agree}/200 frames={frames} non_frames={}",
        200 - frames
    );
    if agree == 200 && frames > 0 && frames < 200 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// `pi(k,l) phi` from the defining formula.
fn shifted(phi: &Signal, k: usize, l: usize) -> Vec<C64> {
    let len = phi.len();
    (0..len)
        .map(|t| unit_root(l * t, len) * phi[(t + len - k) % len])
        .collect()
}

fn criterion_7() -> Outcome {
    let len = 12;
    let lattice = Lattice::separable(len, 3, 4).unwrap();
    let mut worst: f64 = 0.0;
    for seed in 0..20 {
        let phis = [
            window_random(len, 2 * seed).unwrap(),
            window_random(len, 2 * seed + 1).unwrap(),
        ];
        let m = multiwindow_op(&WindowSet::uniform(len, phis.to_vec()).unwrap()).unwrap();
        let r = frame_bounds(&m, &lattice).unwrap();
        // rows conj(pi(lambda) phi_n): the Gabor analysis matrix of both windows
        let rows = 2 * lattice.card();
        let mut g = nalgebra::DMatrix::<C64>::zeros(rows, len);
        let mut row = 0;
        for phi in &phis {
            for z in lattice.enumerate() {
                for (t, v) in shifted(phi, z.k, z.l).into_iter().enumerate() {
                    g[(row, t)] = v.conj();
                }
                row += 1;
            }
        }
        let sv = g.singular_values();
        let lo = sv.iter().copied().fold(f64::INFINITY, f64::min).powi(2);
        let hi = sv.iter().copied().fold(0.0, f64::max).powi(2);
        worst = worst
            .max((r.lower - lo).abs() / hi)
            .max((r.upper - hi).abs() / hi);
    }
    let detail = format!("max_rel_err={worst:.2e} pairs=20");
    if worst <= 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_8() -> Outcome {
    let mut rng = seeded(8);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let len = pick(&mut rng, &[6usize, 8, 12, 16]);
        let s = random_op(len, 1 + i % len, 800 + i as u64)
            .unwrap()
            .scale_real(1.0 + i as f64);
        let psi = gaussian_signal(&mut rng, len);
        let total: f64 = cohen_map(&s, &psi).unwrap().as_slice().iter().sum();
        let expected = len as f64 * s.hs_norm_sqr() * psi.norm_sqr();
        worst = worst.max((total - expected).abs() / expected);
    }
    let detail = format!("max_rel_err={worst:.2e} cases=50");
    if worst <= 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_9() -> Outcome {
    let mut rng = seeded(9);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let len = pick(&mut rng, &[6usize, 8, 12, 16]);
        let [psi1, psi2, phi1, phi2] = std::array::from_fn(|_| gaussian_signal(&mut rng, len));
        let v1 = stft(&psi1, &phi1).unwrap();
        let v2 = stft(&psi2, &phi2).unwrap();
        let lhs: C64 = v1
            .as_slice()
            .iter()
            .zip(v2.as_slice())
            .map(|(a, b)| a * b.conj())
            .sum();
        let rhs = psi1.inner(&psi2).unwrap() * phi1.inner(&phi2).unwrap().conj() * len as f64;
        let scale = len as f64 * psi1.norm() * psi2.norm() * phi1.norm() * phi2.norm();
        worst = worst.max((lhs - rhs).norm() / scale);
    }
    let detail = format!("max_rel_err={worst:.2e} cases=50");
    if worst <= 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_10() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (name, s, lattice) in criterion_3_instances() {
        let inv = frame_operator_inverse(&s, &lattice).map_err(|e| format!("{name}: {e}"))?;
        let adjoint = lattice.adjoint_brute_force();
        let c = spreading_of(&inv);
        let leak = c
            .table()
            .iter()
            .filter(|(z, _)| !adjoint.contains(*z))
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max);
        worst = worst.max(leak / inv.hs_norm());
        count += 1;
    }
    let detail = format!("max_off_support={worst:.2e} instances={count}");
    if worst <= 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_11() -> Outcome {
    let len = 12;
    let lattice = Lattice::separable(len, 3, 4).unwrap();
    let phi = window_gaussian(len).unwrap();
    let tile = fundamental_domain(&lattice);
    let cover = partition_mask(&lattice, &tile).unwrap();
    let tiled = frame_bounds(&localization_op_real(&tile, &phi).unwrap(), &lattice).unwrap();
    let zero_mask = PhaseTable::filled(len, 0.0);
    let zero = frame_bounds(&localization_op_real(&zero_mask, &phi).unwrap(), &lattice).unwrap();
    let detail = format!(
        "covering=[{},{}] tiled_A={:.4e} tiled_is_frame={} zero_is_frame={}",
        cover.lower, cover.upper, tiled.lower, tiled.is_frame, zero.is_frame
    );
    if cover.lower == 1.0
        && cover.upper == 1.0
        && tiled.lower > 0.0
        && tiled.is_frame
        && !zero.is_frame
    {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_12() -> Outcome {
    let frames: Vec<(Op, Lattice)> = frame_instances(10, 12);
    let mut p2_violations = 0;
    let mut p2_probes = 0;
    for (i, (s, lattice)) in frames.iter().enumerate() {
        let r = frame_bounds(s, lattice).unwrap();
        let len = s.dim() as f64;
        let ne =
            norm_equivalence_experiment(s, lattice, 2.0, &Weight::Constant, 50, i as u64).unwrap();
        for pr in &ne.ratios {
            let sq = pr.ratio * pr.ratio;
            p2_probes += 1;
            if !(r.lower / len - 1e-9 <= sq && sq <= r.upper / len + 1e-9) {
                p2_violations += 1;
            }
        }
    }

    let weight = Weight::polynomial(1.0).unwrap();
    let mut bounded = 0;
    for (i, (s, lattice)) in frames.iter().enumerate() {
        for p in [1.0, f64::INFINITY] {
            let ne =
                norm_equivalence_experiment(s, lattice, p, &weight, 30, 100 + i as u64).unwrap();
            if ne.c_emp > 0.0 && ne.d_emp.is_finite() {
                bounded += 1;
            }
        }
    }

    let non_frames = [
        (12usize, 6usize, 6usize, "box:2"),
        (12, 4, 4, "gaussian"),
        (8, 4, 4, "random:1:3"),
        (6, 3, 3, "randwin:5"),
    ];
    let mut worst_weakest: f64 = 0.0;
    for (len, a, b, gen) in non_frames {
        let lattice = Lattice::separable(len, a, b).unwrap();
        let s = match gen {
            "box:2" => {
                let phi = window_box(len, 2).unwrap();
                rank_one(&phi, &phi).unwrap()
            }
            "gaussian" => gaussian_op(len),
            "random:1:3" => random_op(len, 1, 3).unwrap(),
            _ => {
                let phi = window_random(len, 5).unwrap();
                rank_one(&phi, &phi).unwrap()
            }
        };
        if frame_bounds(&s, &lattice).unwrap().is_frame {
            return Err(format!(
                "{gen} on sep:{a},{b} unexpectedly generates a frame"
            ));
        }
        for p in [1.0, f64::INFINITY] {
            let ne = norm_equivalence_experiment(&s, &lattice, p, &weight, 10, 7).unwrap();
            let weakest = ne
                .ratios
                .iter()
                .find(|r| r.kind == ProbeKind::Weakest)
                .unwrap()
                .ratio;
            worst_weakest = worst_weakest.max(weakest);
        }
    }
    let detail = format!(
        "p2_violations={p2_violations}/{p2_probes} weighted_bounded={bounded}/{} max_weakest_ratio_nonframe={worst_weakest:.2e}",
        2 * frames.len()
    );
    if p2_violations == 0 && bounded == 2 * frames.len() && worst_weakest < 1e-6 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_13() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ggf");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfgs = dir.path().join("cfgs");
    fs::create_dir(&cfgs).unwrap();
    let configs = [
        ("fb", "command = frame-bounds\nL = 12\nlattice = sep:2,3\ngen = random:3:11\n"),
        ("ne", "command = norm-equiv\nL = 12\nlattice = sep:2,3\np = 1\nweight = poly:1\nprobes = 20\nseed = 4\n"),
        ("dual", "command = dual\nL = 8\nlattice = sep:2,2\ngen = randwin:3\n"),
        ("cohen", "command = cohen\nL = 8\ngen = random:2:5\ntarget = random:9\n"),
        ("svd", "command = svd-windows\nL = 6\ngen = random:3:2\n"),
    ];
    for (name, text) in configs {
        fs::write(cfgs.join(format!("{name}.cfg")), text).unwrap();
    }
    let mut runs = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("out{run}"));
        let status = Command::new(bin)
            .arg("--batch")
            .arg(&cfgs)
            .arg("--out")
            .arg(&out)
            .arg("--json")
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("batch run {run} exited with {status}"));
        }
        let single = Command::new(bin)
            .args([
                "norm-equiv",
                "--L",
                "12",
                "--lattice",
                "sep:3,2",
                "--probes",
                "25",
                "--seed",
                "17",
            ])
            .output()
            .map_err(|e| e.to_string())?;
        let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(&out)
            .unwrap()
            .map(|e| {
                let p = e.unwrap().path();
                (
                    p.file_name().unwrap().to_string_lossy().into_owned(),
                    fs::read(&p).unwrap(),
                )
            })
            .collect();
        files.sort();
        files.push(("stdout".into(), single.stdout));
        runs.push(files);
    }
    let count = runs[0].len();
    let detail = format!("files_compared={count}");
    if runs[0] == runs[1] && count == configs.len() + 2 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("janssen-poisson identity", criterion_1),
        ("wexler-raz equivalence", criterion_2),
        ("dual reconstruction", criterion_3),
        ("underspread tightness", criterion_4),
        ("sufficient-test soundness", criterion_5),
        ("injectivity characterization", criterion_6),
        ("multi-window equivalence", criterion_7),
        ("cohen sum rule", criterion_8),
        ("moyal identity", criterion_9),
        ("inverse frame operator support", criterion_10),
        ("localization covering", criterion_11),
        ("norm equivalence", criterion_12),
        ("cli determinism", criterion_13),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name}: {detail}", i + 1);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
