//! Subcommand implementations.

use crate::config::{parse_list, parse_orders, Options};
use crate::output::{fmt_float, write_csv, write_json};
use hoairy_core::airy::{ai_n_deriv_with, AiryError, ContourSpec};
use hoairy_core::diffring::RingError;
use hoairy_core::fredholm::{
    gen_fn_with_estimate, joint_prob, FredholmError, IntervalSystem, DEFAULT_NODES,
};
use hoairy_core::hierarchy::{
    hierarchy_member, lax_chain, verify_compatibility, verify_convolutions, HierarchyError,
};
use hoairy_core::painleve::{
    compile_rhs, integrate, seed_from_asymptotics, verify_tw, IntegrateOptions, PainleveError,
    SeedOptions, VerifyTwOptions,
};
use serde_json::json;

/// Failure classes mapped onto exit codes: checks 1, configuration 2,
/// numerics 3.
#[derive(Debug)]
pub enum CmdError {
    CheckFailed(String),
    Config(String),
    Numerical(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::CheckFailed(_) => 1,
            CmdError::Config(_) => 2,
            CmdError::Numerical(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CmdError::CheckFailed(_) => "check-failed",
            CmdError::Config(_) => "config",
            CmdError::Numerical(_) => "numerical",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CmdError::CheckFailed(m) | CmdError::Config(m) | CmdError::Numerical(m) => m,
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Numerical(format!("io: {e}"))
    }
}

impl From<AiryError> for CmdError {
    fn from(e: AiryError) -> Self {
        match e {
            AiryError::SectorViolation(_) => CmdError::Config(e.to_string()),
            AiryError::NonConvergence(_) => CmdError::Numerical(e.to_string()),
        }
    }
}

impl From<FredholmError> for CmdError {
    fn from(e: FredholmError) -> Self {
        match e {
            FredholmError::InvalidSystem(_) | FredholmError::InvalidOrders(_) => {
                CmdError::Config(e.to_string())
            }
            FredholmError::Airy(inner) => inner.into(),
            other => CmdError::Numerical(other.to_string()),
        }
    }
}

impl From<HierarchyError> for CmdError {
    fn from(e: HierarchyError) -> Self {
        match e {
            HierarchyError::InvalidParams(_) => CmdError::Config(e.to_string()),
            HierarchyError::IdentityViolation { .. } => CmdError::CheckFailed(e.to_string()),
            other => CmdError::Numerical(other.to_string()),
        }
    }
}

impl From<RingError> for CmdError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::Parse(_) => CmdError::Config(e.to_string()),
            other => CmdError::Numerical(other.to_string()),
        }
    }
}

impl From<PainleveError> for CmdError {
    fn from(e: PainleveError) -> Self {
        match e {
            PainleveError::InvalidParams(_)
            | PainleveError::WeightCollision { .. }
            | PainleveError::SeedTooLarge { .. } => CmdError::Config(e.to_string()),
            PainleveError::Hierarchy(inner) => inner.into(),
            PainleveError::Fredholm(inner) => inner.into(),
            PainleveError::Airy(inner) => inner.into(),
            other => CmdError::Numerical(other.to_string()),
        }
    }
}

fn config_err(msg: impl Into<String>) -> CmdError {
    CmdError::Config(msg.into())
}

fn need_list(opts: &Options, field: &Option<String>, what: &str) -> Result<Vec<f64>, CmdError> {
    let _ = opts;
    field
        .as_deref()
        .ok_or_else(|| config_err(format!("missing --{what}")))
        .and_then(|s| parse_list(s, what).map_err(CmdError::Config))
}

fn system_from(opts: &Options) -> Result<(IntervalSystem, u32, usize), CmdError> {
    let n = opts.n.unwrap_or(1);
    let x = need_list(opts, &opts.x, "x")?;
    let alpha = need_list(opts, &opts.alpha, "alpha")?;
    let sys = IntervalSystem::new(x, alpha, opts.t.unwrap_or(0.0))?;
    let nodes = opts.nodes.unwrap_or(DEFAULT_NODES);
    Ok((sys, n, nodes))
}

/// `airy`: tabulates `Ai_n` (or a derivative) on a uniform grid.
pub fn cmd_airy(opts: &Options) -> Result<(), CmdError> {
    let n = opts.n.unwrap_or(1);
    let from = opts.from.unwrap_or(-8.0);
    let to = opts.to.unwrap_or(4.0);
    let step = opts.step.unwrap_or(0.25);
    let deriv = opts.deriv.unwrap_or(0);
    if !(step > 0.0 && to >= from) {
        return Err(config_err("need step > 0 and to >= from"));
    }
    let count = ((to - from) / step).round() as usize;
    let mut rows = Vec::with_capacity(count + 1);
    for i in 0..=count {
        let x = from + i as f64 * step;
        let eval = ai_n_deriv_with(&ContourSpec::standard(n, x), x, deriv)?;
        rows.push(vec![
            fmt_float(x),
            fmt_float(eval.value),
            fmt_float(eval.imag_residual),
        ]);
    }
    write_csv(opts, "airy", &["x", "value", "imag_residual"], &rows)?;
    Ok(())
}

/// `det`: one determinant with a node-doubling error estimate.
pub fn cmd_det(opts: &Options) -> Result<(), CmdError> {
    let (sys, n, nodes) = system_from(opts)?;
    let (g, estimate) = gen_fn_with_estimate(&sys, n, nodes)?;
    write_json(
        opts,
        "det",
        json!({
            "f": g.f,
            "log_f": g.log_f,
            "error_estimate": estimate,
            "nodes": g.nodes,
            "truncation": g.truncation,
        }),
    )?;
    Ok(())
}

/// `tabulate`: sweeps the shift `t` or the first threshold into CSV.
pub fn cmd_tabulate(opts: &Options) -> Result<(), CmdError> {
    let (sys, n, nodes) = system_from(opts)?;
    let sweep = opts.sweep.as_deref().unwrap_or("t");
    let from = opts.from.ok_or_else(|| config_err("missing --from"))?;
    let to = opts.to.ok_or_else(|| config_err("missing --to"))?;
    let step = opts.step.ok_or_else(|| config_err("missing --step"))?;
    if !(step > 0.0 && to >= from) {
        return Err(config_err("need step > 0 and to >= from"));
    }
    let count = ((to - from) / step).round() as usize;
    let mut rows = Vec::with_capacity(count + 1);
    for i in 0..=count {
        let v = from + i as f64 * step;
        let case = match sweep {
            "t" => sys.with_shift(v),
            "x1" => {
                let mut x = sys.thresholds().to_vec();
                x[0] = v;
                IntervalSystem::new(x, sys.weights().to_vec(), sys.shift())?
            }
            other => return Err(config_err(format!("unknown sweep variable `{other}`"))),
        };
        let g = hoairy_core::fredholm::gen_fn(&case, n, nodes)?;
        rows.push(vec![fmt_float(v), fmt_float(g.f), fmt_float(g.log_f)]);
    }
    write_csv(opts, "tabulate", &[sweep, "f", "log_f"], &rows)?;
    Ok(())
}

/// `hierarchy`: prints the symbolic member (and optionally the Lax
/// coefficient chain) in text, JSON or LaTeX.
pub fn cmd_hierarchy(opts: &Options) -> Result<(), CmdError> {
    let n = opts.n.unwrap_or(1);
    let k = opts.k.unwrap_or(1);
    let member = hierarchy_member(n, k)?;
    let with_chain = opts.chain.unwrap_or(false);
    let chain = if with_chain {
        Some(lax_chain(n, k)?)
    } else {
        None
    };
    let format = opts.format.as_deref().unwrap_or("text");
    match format {
        "json" => {
            let lhs: Vec<_> = member.lhs.iter().map(|p| p.to_json()).collect();
            let rhs: Vec<_> = member.rhs.iter().map(|p| p.to_json()).collect();
            let chain_json = chain.as_ref().map(|c| {
                let blocks: Vec<_> = c
                    .blocks()
                    .iter()
                    .map(|b| {
                        json!({
                            "a11": b.a11.to_json(),
                            "a12": b.a12.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                            "a21": b.a21.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                            "a22": (0..k)
                                .map(|i| {
                                    (0..k).map(|j| b.a22.at(i, j).to_json()).collect::<Vec<_>>()
                                })
                                .collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                json!({
                    "blocks": blocks,
                    "hat_diag": c.hat_diag().iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                })
            });
            write_json(
                opts,
                "hierarchy",
                json!({ "n": n, "k": k, "lhs": lhs, "rhs": rhs, "chain": chain_json }),
            )?;
        }
        "text" | "latex" => {
            let mut lines = Vec::with_capacity(k);
            for j in 0..k {
                let (l, r) = (&member.lhs[j], &member.rhs[j]);
                lines.push(match format {
                    "text" => format!("{l} = {r}"),
                    _ => format!("{} = {}", l.to_latex(), r.to_latex()),
                });
            }
            if let Some(c) = &chain {
                let show = |p: &hoairy_core::diffring::DiffPoly| match format {
                    "text" => p.to_string(),
                    _ => p.to_latex(),
                };
                for (j, b) in c.blocks().iter().enumerate() {
                    lines.push(format!("a{j}.11 = {}", show(&b.a11)));
                    for (i, p) in b.a12.iter().enumerate() {
                        lines.push(format!("a{j}.12[{}] = {}", i + 1, show(p)));
                    }
                    for (i, p) in b.a21.iter().enumerate() {
                        lines.push(format!("a{j}.21[{}] = {}", i + 1, show(p)));
                    }
                    for r in 0..k {
                        for s in 0..k {
                            lines.push(format!(
                                "a{j}.22[{},{}] = {}",
                                r + 1,
                                s + 1,
                                show(b.a22.at(r, s))
                            ));
                        }
                    }
                }
                for (i, p) in c.hat_diag().iter().enumerate() {
                    lines.push(format!("hat.diag[{i}] = {}", show(p)));
                }
            }
            crate::output::write_text(opts, "hierarchy", &lines)?;
        }
        other => return Err(config_err(format!("unknown format `{other}`"))),
    }
    Ok(())
}

/// `laxcheck`: verifies every Lax-pair identity; any residual fails the run.
pub fn cmd_laxcheck(opts: &Options) -> Result<(), CmdError> {
    let n = opts.n.unwrap_or(1);
    let k = opts.k.unwrap_or(1);
    let member = hierarchy_member(n, k)?;
    let chain = lax_chain(n, k)?;
    let compat = verify_compatibility(&chain, &member)?;
    let conv = verify_convolutions(&chain)?;

    let mut lines = Vec::new();
    let mut violations = 0usize;
    for c in compat.checks.iter().chain(conv.checks.iter()) {
        match &c.residual {
            None => lines.push(format!("ok        {}", c.name)),
            Some(r) => {
                violations += 1;
                lines.push(format!("VIOLATION {}: {}", c.name, r));
            }
        }
    }
    let total = compat.checks.len() + conv.checks.len();
    lines.push(match violations {
        0 => format!("all identities exact ({total} checks, n={n}, k={k})"),
        v => format!("{v} of {total} identities violated (n={n}, k={k})"),
    });
    crate::output::write_text(opts, "laxcheck", &lines)?;
    if violations > 0 {
        return Err(CmdError::CheckFailed(format!(
            "{violations} identity violations"
        )));
    }
    Ok(())
}

fn seed_options(opts: &Options) -> SeedOptions {
    SeedOptions {
        t_max: opts.tmax,
        allow_equal_weights: opts.allow_equal_weights.unwrap_or(false),
        ..SeedOptions::default()
    }
}

/// `solve`: integrates the hierarchy ODE and writes the trajectory.
pub fn cmd_solve(opts: &Options) -> Result<(), CmdError> {
    let n = opts.n.unwrap_or(1);
    let x = need_list(opts, &opts.x, "x")?;
    let alpha = need_list(opts, &opts.alpha, "alpha")?;
    let k = x.len();
    // same invariants as the determinant route: decreasing thresholds,
    // weights in [0, 1]
    IntervalSystem::new(x.clone(), alpha.clone(), 0.0)?;
    let member = hierarchy_member(n, k)?;
    let rhs = compile_rhs(&member)?;
    let seed = seed_from_asymptotics(n, k, &x, &alpha, &seed_options(opts))?;
    let integ = IntegrateOptions {
        t_min: opts.tmin.unwrap_or(0.0),
        ..IntegrateOptions::default()
    };
    let grid = integrate(&rhs, &seed, &x, &alpha, &integ)?;

    let two_n = 2 * n as usize;
    let mut header: Vec<String> = vec!["t".to_string()];
    for m in 0..two_n {
        for j in 1..=k {
            let base = if m == 0 {
                format!("u{j}")
            } else {
                format!("d{m}u{j}")
            };
            header.push(format!("re_{base}"));
            header.push(format!("im_{base}"));
        }
    }
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut rows = Vec::with_capacity(grid.ts.len());
    for (idx, t) in grid.ts.iter().enumerate() {
        let mut row = vec![fmt_float(*t)];
        for slot in 0..two_n * k {
            let v = grid.states[idx][slot];
            row.push(fmt_float(v.re));
            row.push(fmt_float(v.im));
        }
        rows.push(row);
    }
    write_csv(opts, "solve", &header_refs, &rows)?;
    eprintln!(
        "trust window [{}, {}], t_max = {}",
        grid.trust_from, grid.t_max, grid.t_max
    );
    Ok(())
}

/// `verify-tw`: runs both routes; the discrepancy decides the exit status.
pub fn cmd_verify_tw(opts: &Options) -> Result<(), CmdError> {
    let n = opts.n.unwrap_or(1);
    let x = need_list(opts, &opts.x, "x")?;
    let alpha = need_list(opts, &opts.alpha, "alpha")?;
    let tol = opts.tol.unwrap_or(1e-4);
    let vopts = VerifyTwOptions {
        nystrom_nodes: opts.nodes.unwrap_or(DEFAULT_NODES),
        seed: seed_options(opts),
        integrate: IntegrateOptions::default(),
    };
    let (report, _grid) = verify_tw(n, &x, &alpha, &vopts)?;
    let passed = report.abs_diff <= tol;
    write_json(
        opts,
        "verify-tw",
        json!({
            "f_fredholm": report.f_fredholm,
            "log_f_fredholm": report.log_f_fredholm,
            "log_f_painleve": report.log_f_painleve,
            "abs_diff": report.abs_diff,
            "trust_window": [report.trust_window.0, report.trust_window.1],
            "t_max": report.t_max,
            "tail_bound": report.tail_bound,
            "imag_residual": report.imag_residual,
            "tolerance": tol,
            "pass": passed,
        }),
    )?;
    if !passed {
        return Err(CmdError::CheckFailed(format!(
            "route discrepancy {:.3e} exceeds tolerance {tol:.1e}",
            report.abs_diff
        )));
    }
    Ok(())
}

/// `joint-prob`: joint particle-position probability by α-differencing.
pub fn cmd_joint_prob(opts: &Options) -> Result<(), CmdError> {
    let n = opts.n.unwrap_or(1);
    let x = need_list(opts, &opts.x, "x")?;
    let orders = opts
        .orders
        .as_deref()
        .ok_or_else(|| config_err("missing --orders"))
        .and_then(|s| parse_orders(s).map_err(CmdError::Config))?;
    let sys = IntervalSystem::new(x.clone(), vec![1.0; x.len()], opts.t.unwrap_or(0.0))?;
    let jp = joint_prob(
        &sys,
        n,
        &orders,
        opts.dalpha.unwrap_or(0.05),
        opts.nodes.unwrap_or(DEFAULT_NODES),
    )?;
    write_json(
        opts,
        "joint-prob",
        json!({
            "probability": jp.probability,
            "stencil_error": jp.stencil_error,
            "orders": orders,
        }),
    )?;
    Ok(())
}
