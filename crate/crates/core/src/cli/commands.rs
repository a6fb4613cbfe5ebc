//! The experiment commands. Each returns a [`Report`]; tolerance failures
//! are collected in `Report::failures` rather than returned as errors.

use crate::error::{Error, Result};
use crate::generators::{multiwindow_op, svd_to_multiwindow};
use crate::gframe::{
    analysis, canonical_dual, cohen_map, frame_bounds, frame_operator_inverse, janssen_residual,
    janssen_sufficient, periodize, synthesis, wexler_raz_check, DUAL_TOL, JANSSEN_TOL,
};
use crate::seqspace::{norm_equivalence_with_window, ProbeKind, Weight};
use crate::spreading::{coeffs_from_points, fourier_series_of_periodic, spreading_of, synthesize};
use crate::tfcore::svd;
use crate::tfcore::textio::format_op;
use crate::tfcore::Op;

use super::config::ExperimentConfig;
use super::report::{Report, Table};

/// Reconstruction tolerance relative to `||psi||`.
pub const RECON_TOL: f64 = 1e-9;
/// Cohen sum-rule tolerance relative to `L ||S||^2 ||psi||^2`.
pub const COHEN_TOL: f64 = 1e-10;
/// Spreading mass of `S_S^{-1}` allowed off the adjoint lattice, relative
/// to its Hilbert-Schmidt norm.
pub const SUPPORT_TOL: f64 = 1e-9;
/// Tolerance on the `p = 2` norm-equivalence interval.
pub const NORM_EQUIV_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    FrameBounds,
    Janssen,
    WexlerRaz,
    Dual,
    Reconstruct,
    Cohen,
    NormEquiv,
    SvdWindows,
    AdjointLattice,
    PeriodicFourier,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::FrameBounds,
        Command::Janssen,
        Command::WexlerRaz,
        Command::Dual,
        Command::Reconstruct,
        Command::Cohen,
        Command::NormEquiv,
        Command::SvdWindows,
        Command::AdjointLattice,
        Command::PeriodicFourier,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::FrameBounds => "frame-bounds",
            Command::Janssen => "janssen",
            Command::WexlerRaz => "wexler-raz",
            Command::Dual => "dual",
            Command::Reconstruct => "reconstruct",
            Command::Cohen => "cohen",
            Command::NormEquiv => "norm-equiv",
            Command::SvdWindows => "svd-windows",
            Command::AdjointLattice => "adjoint-lattice",
            Command::PeriodicFourier => "periodic-fourier",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| Error::Parse(format!("command: unknown command '{name}'")))
    }
}

/// Runs `cmd`; `arg` is the optional positional argument
/// (`T` for wexler-raz and periodic-fourier, `psi` for reconstruct and cohen).
pub fn execute(cmd: Command, cfg: &ExperimentConfig, arg: Option<&str>) -> Result<Report> {
    match cmd {
        Command::FrameBounds => frame_bounds_cmd(cfg),
        Command::Janssen => janssen_cmd(cfg),
        Command::WexlerRaz => wexler_raz_cmd(cfg, arg),
        Command::Dual => dual_cmd(cfg),
        Command::Reconstruct => reconstruct_cmd(cfg, arg),
        Command::Cohen => cohen_cmd(cfg, arg),
        Command::NormEquiv => norm_equiv_cmd(cfg),
        Command::SvdWindows => svd_windows_cmd(cfg),
        Command::AdjointLattice => adjoint_lattice_cmd(cfg),
        Command::PeriodicFourier => periodic_fourier_cmd(cfg, arg),
    }
}

fn opt(v: Option<f64>) -> f64 {
    v.unwrap_or(f64::NAN)
}

fn frame_bounds_cmd(cfg: &ExperimentConfig) -> Result<Report> {
    let s = cfg.generator()?;
    let r = frame_bounds(&s, &cfg.lattice)?;
    let mut t = Table::new(
        "frame_bounds",
        &[
            "L",
            "lattice",
            "gen",
            "seed",
            "card",
            "redundancy",
            "A",
            "B",
            "tightness",
            "janssen_residual",
            "dual_residual",
            "is_frame",
        ],
    );
    t.push(vec![
        cfg.len.into(),
        cfg.lattice.to_string().into(),
        cfg.gen_spec.as_str().into(),
        cfg.seed.into(),
        cfg.lattice.card().into(),
        cfg.lattice.redundancy().into(),
        r.lower.into(),
        r.upper.into(),
        r.tightness.into(),
        r.janssen_residual.into(),
        opt(r.dual_residual).into(),
        r.is_frame.into(),
    ]);
    let mut report = Report::new("frame-bounds");
    report.tables.push(t);
    if r.janssen_residual > JANSSEN_TOL {
        report.failures.push(format!(
            "janssen_residual {:e} exceeds {JANSSEN_TOL:e}",
            r.janssen_residual
        ));
    }
    if let Some(d) = r.dual_residual.filter(|&d| d > DUAL_TOL) {
        report
            .failures
            .push(format!("dual_residual {d:e} exceeds {DUAL_TOL:e}"));
    }
    Ok(report)
}

fn janssen_cmd(cfg: &ExperimentConfig) -> Result<Report> {
    let s = cfg.generator()?;
    let lattice = &cfg.lattice;
    let residual = janssen_residual(&s, lattice)?;
    let frame_residual = janssen_residual(&(&s.adjoint() * &s), lattice)?;
    let test = janssen_sufficient(&s, lattice)?;
    let adjoint = lattice.adjoint();

    let mut summary = Table::new(
        "janssen",
        &[
            "L",
            "lattice",
            "adjoint",
            "gen",
            "seed",
            "card",
            "adjoint_card",
            "janssen_residual",
            "frame_op_residual",
            "sufficient_test",
            "guaranteed_A",
            "off_origin_mass",
        ],
    );
    summary.push(vec![
        cfg.len.into(),
        lattice.to_string().into(),
        adjoint.to_string().into(),
        cfg.gen_spec.as_str().into(),
        cfg.seed.into(),
        lattice.card().into(),
        adjoint.card().into(),
        residual.into(),
        frame_residual.into(),
        test.passes.into(),
        test.guaranteed_lower.into(),
        test.off_origin_mass.into(),
    ]);

    let c = spreading_of(&s);
    let card = lattice.card() as f64;
    let mut coeffs = Table::new("coefficients", &["k", "l", "coef"]);
    for mu in adjoint.enumerate() {
        coeffs.push(vec![mu.k.into(), mu.l.into(), (c[mu] * card).into()]);
    }

    let mut report = Report::new("janssen");
    report.tables.push(summary);
    report.tables.push(coeffs);
    for (name, r) in [
        ("janssen_residual", residual),
        ("frame_op_residual", frame_residual),
    ] {
        if r > JANSSEN_TOL {
            report
                .failures
                .push(format!("{name} {r:e} exceeds {JANSSEN_TOL:e}"));
        }
    }
    Ok(report)
}

fn wexler_raz_cmd(cfg: &ExperimentConfig, arg: Option<&str>) -> Result<Report> {
    let s = cfg.generator()?;
    let spec = arg.unwrap_or("dual");
    let t = if spec == "dual" {
        canonical_dual(&s, &cfg.lattice)?
    } else {
        cfg.op_spec(spec)?
    };
    let wr = wexler_raz_check(&s, &t, &cfg.lattice)?;
    let mut table = Table::new(
        "wexler_raz",
        &[
            "L",
            "lattice",
            "gen",
            "T",
            "seed",
            "biorth_ok",
            "recon_ok",
            "biorth_residual",
            "recon_residual",
            "consistent",
        ],
    );
    table.push(vec![
        cfg.len.into(),
        cfg.lattice.to_string().into(),
        cfg.gen_spec.as_str().into(),
        spec.into(),
        cfg.seed.into(),
        wr.biorth_ok.into(),
        wr.recon_ok.into(),
        wr.biorth_residual.into(),
        wr.recon_residual.into(),
        wr.consistent().into(),
    ]);
    let mut report = Report::new("wexler-raz");
    report.tables.push(table);
    if !wr.consistent() {
        report.failures.push(format!(
            "biorthogonality ({}) and reconstruction ({}) disagree",
            wr.biorth_ok, wr.recon_ok
        ));
    }
    Ok(report)
}

/// Largest spreading coefficient of `op` off the adjoint lattice, relative
/// to `||op||_HS`.
fn off_adjoint_leak(op: &Op, cfg: &ExperimentConfig) -> f64 {
    let adjoint = cfg.lattice.adjoint();
    let c = spreading_of(op);
    let leak = c
        .table()
        .iter()
        .filter(|(z, _)| !adjoint.contains(*z))
        .map(|(_, v)| v.norm())
        .fold(0.0, f64::max);
    leak / op.hs_norm()
}

fn dual_cmd(cfg: &ExperimentConfig) -> Result<Report> {
    let s = cfg.generator()?;
    let lattice = &cfg.lattice;
    let inverse = frame_operator_inverse(&s, lattice)?;
    let r = &s * &inverse;
    let bounds = frame_bounds(&s, lattice)?;
    let wr = wexler_raz_check(&s, &r, lattice)?;
    let leak = off_adjoint_leak(&inverse, cfg);
    let dual_residual = opt(bounds.dual_residual);

    let mut table = Table::new(
        "dual",
        &[
            "L",
            "lattice",
            "gen",
            "seed",
            "A",
            "B",
            "dual_residual",
            "biorth_residual",
            "recon_residual",
            "inverse_support_leak",
            "dual_hs_norm",
        ],
    );
    table.push(vec![
        cfg.len.into(),
        lattice.to_string().into(),
        cfg.gen_spec.as_str().into(),
        cfg.seed.into(),
        bounds.lower.into(),
        bounds.upper.into(),
        dual_residual.into(),
        wr.biorth_residual.into(),
        wr.recon_residual.into(),
        leak.into(),
        r.hs_norm().into(),
    ]);
    let mut report = Report::new("dual");
    report.tables.push(table);
    report.artifacts.push(("dual.txt".into(), format_op(&r)));
    if !(dual_residual <= DUAL_TOL) {
        report.failures.push(format!(
            "dual_residual {dual_residual:e} exceeds {DUAL_TOL:e}"
        ));
    }
    if !wr.biorth_ok || !wr.recon_ok {
        report
            .failures
            .push("canonical dual fails the Wexler-Raz conditions".into());
    }
    if leak > SUPPORT_TOL {
        report.failures.push(format!(
            "inverse frame operator has spreading mass {leak:e} off the adjoint lattice"
        ));
    }
    Ok(report)
}

fn reconstruct_cmd(cfg: &ExperimentConfig, arg: Option<&str>) -> Result<Report> {
    let s = cfg.generator()?;
    let lattice = &cfg.lattice;
    let psi = cfg.signal_spec(arg)?;
    let r = canonical_dual(&s, lattice)?;
    let norm = psi.norm();
    let synth_err = synthesis(&s, lattice, &analysis(&r, lattice, &psi)?)?
        .sub(&psi)?
        .norm()
        / norm;
    let anal_err = synthesis(&r, lattice, &analysis(&s, lattice, &psi)?)?
        .sub(&psi)?
        .norm()
        / norm;
    let mut table = Table::new(
        "reconstruct",
        &[
            "L",
            "lattice",
            "gen",
            "psi",
            "seed",
            "psi_norm",
            "synthesis_error",
            "analysis_error",
        ],
    );
    table.push(vec![
        cfg.len.into(),
        lattice.to_string().into(),
        cfg.gen_spec.as_str().into(),
        arg.unwrap_or("random").into(),
        cfg.seed.into(),
        norm.into(),
        synth_err.into(),
        anal_err.into(),
    ]);
    let mut report = Report::new("reconstruct");
    report.tables.push(table);
    for (name, e) in [("synthesis_error", synth_err), ("analysis_error", anal_err)] {
        if !(e <= RECON_TOL) {
            report
                .failures
                .push(format!("{name} {e:e} exceeds {RECON_TOL:e}"));
        }
    }
    Ok(report)
}

fn cohen_cmd(cfg: &ExperimentConfig, arg: Option<&str>) -> Result<Report> {
    let s = cfg.generator()?;
    let psi = cfg.signal_spec(arg)?;
    let q = cohen_map(&s, &psi)?;
    let total: f64 = q.as_slice().iter().sum();
    let expected = cfg.len as f64 * s.hs_norm_sqr() * psi.norm_sqr();
    let rel = (total - expected).abs() / expected;

    let mut summary = Table::new(
        "summary",
        &[
            "L",
            "gen",
            "psi",
            "seed",
            "sum",
            "expected",
            "relative_error",
        ],
    );
    summary.push(vec![
        cfg.len.into(),
        cfg.gen_spec.as_str().into(),
        arg.unwrap_or("random").into(),
        cfg.seed.into(),
        total.into(),
        expected.into(),
        rel.into(),
    ]);
    let mut grid = Table::new("cohen", &["k", "l", "Q"]);
    for (z, v) in q.iter() {
        grid.push(vec![z.k.into(), z.l.into(), (*v).into()]);
    }
    let mut report = Report::new("cohen");
    report.tables.push(summary);
    report.tables.push(grid);
    if !(rel <= COHEN_TOL) {
        report.failures.push(format!(
            "Cohen sum rule error {rel:e} exceeds {COHEN_TOL:e}"
        ));
    }
    Ok(report)
}

fn norm_equiv_cmd(cfg: &ExperimentConfig) -> Result<Report> {
    let s = cfg.generator()?;
    let lattice = &cfg.lattice;
    let bounds = frame_bounds(&s, lattice)?;
    let window = cfg.window_spec_signal(&cfg.window_spec)?;
    let ne = norm_equivalence_with_window(
        &s,
        lattice,
        cfg.p,
        &cfg.weight,
        cfg.probes,
        cfg.seed,
        &window,
    )?;

    let mut summary = Table::new(
        "summary",
        &[
            "L",
            "lattice",
            "gen",
            "window",
            "p",
            "weight",
            "seed",
            "probes",
            "A",
            "B",
            "is_frame",
            "C_emp",
            "D_emp",
            "weakest_ratio",
        ],
    );
    let weakest = ne
        .ratios
        .iter()
        .find(|r| r.kind == ProbeKind::Weakest)
        .map(|r| r.ratio);
    summary.push(vec![
        cfg.len.into(),
        lattice.to_string().into(),
        cfg.gen_spec.as_str().into(),
        cfg.window_spec.as_str().into(),
        cfg.p.into(),
        cfg.weight_spec.as_str().into(),
        cfg.seed.into(),
        cfg.probes.into(),
        bounds.lower.into(),
        bounds.upper.into(),
        bounds.is_frame.into(),
        ne.c_emp.into(),
        ne.d_emp.into(),
        opt(weakest).into(),
    ]);
    let mut probes = Table::new("probes", &["index", "kind", "ratio"]);
    for r in &ne.ratios {
        let kind = match r.kind {
            ProbeKind::Random => "random",
            ProbeKind::Weakest => "weakest",
        };
        probes.push(vec![r.index.into(), kind.into(), r.ratio.into()]);
    }
    let mut report = Report::new("norm-equiv");
    report.tables.push(summary);
    report.tables.push(probes);

    if cfg.p == 2.0 && cfg.weight == Weight::Constant {
        let len = cfg.len as f64;
        let (lo, hi) = (
            bounds.lower / len - NORM_EQUIV_TOL,
            bounds.upper / len + NORM_EQUIV_TOL,
        );
        for r in &ne.ratios {
            let sq = r.ratio * r.ratio;
            if !(lo <= sq && sq <= hi) {
                report.failures.push(format!(
                    "probe {} ratio^2 {sq:e} outside [{lo:e}, {hi:e}]",
                    r.index
                ));
            }
        }
    }
    Ok(report)
}

fn svd_windows_cmd(cfg: &ExperimentConfig) -> Result<Report> {
    let s = cfg.generator()?;
    let ws = svd_to_multiwindow(&s);
    let m = multiwindow_op(&ws)?;
    let gram_residual = (&m.adjoint() * &m).rel_diff(&(&s.adjoint() * &s));
    let rank = svd(&s).rank();

    let mut summary = Table::new("summary", &["L", "gen", "seed", "rank", "gram_residual"]);
    summary.push(vec![
        cfg.len.into(),
        cfg.gen_spec.as_str().into(),
        cfg.seed.into(),
        rank.into(),
        gram_residual.into(),
    ]);
    let mut weights = Table::new("singular_values", &["n", "sigma"]);
    for (n, w) in ws.weights().iter().enumerate() {
        weights.push(vec![n.into(), (*w).into()]);
    }
    let mut windows = Table::new("windows", &["n", "t", "value"]);
    for (n, phi) in ws.windows().iter().enumerate() {
        for (t, v) in phi.as_slice().iter().enumerate() {
            windows.push(vec![n.into(), t.into(), (*v).into()]);
        }
    }
    let mut report = Report::new("svd-windows");
    report.tables.extend([summary, weights, windows]);
    if !(gram_residual <= JANSSEN_TOL) {
        report.failures.push(format!(
            "multi-window Gram residual {gram_residual:e} exceeds {JANSSEN_TOL:e}"
        ));
    }
    Ok(report)
}

fn adjoint_lattice_cmd(cfg: &ExperimentConfig) -> Result<Report> {
    let lattice = &cfg.lattice;
    let adjoint = lattice.adjoint();
    let brute = lattice.adjoint_brute_force();
    let agrees = brute.points() == adjoint.points();
    let product = lattice.card() * adjoint.card();
    let l2 = cfg.len * cfg.len;
    let mut table = Table::new(
        "adjoint_lattice",
        &[
            "L",
            "lattice",
            "card",
            "adjoint",
            "adjoint_card",
            "card_product",
            "L_squared",
            "brute_force_agrees",
        ],
    );
    table.push(vec![
        cfg.len.into(),
        lattice.to_string().into(),
        lattice.card().into(),
        adjoint.to_string().into(),
        adjoint.card().into(),
        product.into(),
        l2.into(),
        agrees.into(),
    ]);
    let mut report = Report::new("adjoint-lattice");
    report.tables.push(table);
    if product != l2 {
        report
            .failures
            .push(format!("card product {product} differs from L^2 = {l2}"));
    }
    if !agrees {
        report
            .failures
            .push("closed-form adjoint differs from brute force".into());
    }
    Ok(report)
}

fn periodic_fourier_cmd(cfg: &ExperimentConfig, arg: Option<&str>) -> Result<Report> {
    let lattice = &cfg.lattice;
    let spec = arg.unwrap_or("periodize");
    let t = match spec {
        "periodize" => periodize(&cfg.generator()?, lattice)?,
        "frame-op" => crate::gframe::gframe_operator(&cfg.generator()?, lattice)?,
        "frame-op-inv" => frame_operator_inverse(&cfg.generator()?, lattice)?,
        other => cfg.op_spec(other)?,
    };
    let coeffs = fourier_series_of_periodic(&t, lattice)?;
    let resynth = synthesize(&coeffs_from_points(cfg.len, &coeffs));
    let residual = resynth.rel_diff(&t);

    let mut summary = Table::new(
        "summary",
        &[
            "L",
            "lattice",
            "gen",
            "T",
            "seed",
            "terms",
            "synthesis_residual",
        ],
    );
    summary.push(vec![
        cfg.len.into(),
        lattice.to_string().into(),
        cfg.gen_spec.as_str().into(),
        spec.into(),
        cfg.seed.into(),
        coeffs.len().into(),
        residual.into(),
    ]);
    let mut table = Table::new("fourier", &["k", "l", "coef"]);
    for (z, c) in &coeffs {
        table.push(vec![z.k.into(), z.l.into(), (*c).into()]);
    }
    let mut report = Report::new("periodic-fourier");
    report.tables.push(summary);
    report.tables.push(table);
    if !(residual <= JANSSEN_TOL) {
        report.failures.push(format!(
            "Fourier series residual {residual:e} exceeds {JANSSEN_TOL:e}"
        ));
    }
    Ok(report)
}
