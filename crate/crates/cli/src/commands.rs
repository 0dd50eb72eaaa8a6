use acf_core::channels::{decompose, enumerate_channels, Spin};
use acf_core::numerics::{first_sign_change, linspace, logspace};
use acf_core::sae::{
    bound_energy_closed, bound_energy_log, bound_energy_unit_l, find_pole, spectrum_report,
    BoundOrder, BoundState,
};
use acf_core::scattering::{
    amplitude_spin_z, doublet_norm_sqr, extract_amplitude, pole_scan, scattering_table,
    FieldVariant, SpinState,
};
use acf_core::shell::{
    effective_extension_parameters, numerov_bound_energy, renormalization_flow,
    renormalize_coupling, shell_bound_energy_closed, shell_bound_energy_exact, ShellConfig,
};
use acf_core::specfun;
use acf_core::{Error, ErrorKind};
use serde_json::{json, Value};
use thiserror::Error as ThisError;

use crate::args::*;
use crate::output::{num, Cell, PlotSpec, Report};

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Domain => 2,
                ErrorKind::Numerical => 1,
            },
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 1,
        }
    }
}

fn core<E: Into<Error>>(e: E) -> CliError {
    CliError::Core(e.into())
}

pub struct Outcome {
    pub report: Report,
    /// Set by `check` when a row fails.
    pub failed: bool,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Self {
            report,
            failed: false,
        }
    }
}

/// Whether the command produces a table that `--emit-gnuplot` can plot.
pub fn has_plot(cmd: &Command) -> bool {
    matches!(
        cmd,
        Command::Scatter(_) | Command::Flow(_) | Command::Polescan(_)
    )
}

pub fn default_format(cmd: &Command) -> Format {
    match cmd {
        Command::Bound(_) | Command::Shell(_) => Format::Json,
        _ => Format::Csv,
    }
}

/// Checks that need more than one flag, before anything is computed.
pub fn validate(cmd: &Command) -> Result<(), CliError> {
    let usage = |m: &str| Err(CliError::Usage(m.to_string()));
    match cmd {
        Command::Classify(a) if a.kmin > a.kmax => usage("--kmin must not exceed --kmax"),
        Command::Spectrum(a) if a.kmin > a.kmax => usage("--kmin must not exceed --kmax"),
        Command::Flow(a) if a.rmin >= a.rmax => usage("--rmin must be below --rmax"),
        Command::Scatter(a) if a.phimin > a.phimax => usage("--phimin must not exceed --phimax"),
        Command::Scatter(a) if a.numeric.is_some_and(|pr| pr < 100.0) => {
            usage("--numeric needs p*r >= 100")
        }
        Command::Polescan(a) if a.emin >= a.emax => usage("--emin must be below --emax"),
        _ => Ok(()),
    }
}

pub fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Classify(a) => classify(a).map(Into::into),
        Command::Bound(a) => bound(a).map(Into::into),
        Command::Spectrum(a) => spectrum(a).map(Into::into),
        Command::Shell(a) => shell(a).map(Into::into),
        Command::Flow(a) => flow(a).map(Into::into),
        Command::Scatter(a) => scatter(a).map(Into::into),
        Command::Polescan(a) => polescan(a).map(Into::into),
        Command::Specfun(a) => specfun_cmd(a).map(Into::into),
        Command::Check => check(),
    }
}

fn classify(a: &ClassifyArgs) -> Result<Report, CliError> {
    let c = decompose(a.ma).map_err(core)?;
    let chans = enumerate_channels(&c, a.kmin, a.kmax).map_err(core)?;
    let mut r = Report::new("classify", vec!["k", "s", "l", "region", "nu", "gamma"]);
    r.input_num("ma", a.ma)
        .input("kmin", a.kmin)
        .input("kmax", a.kmax);
    r.extra.insert("n".into(), c.n.into());
    r.extra.insert("mu".into(), num(c.mu));
    r.equations = vec!["coupling-decomposition", "channel-classification"];
    for ch in chans {
        r.row(vec![
            ch.k.into(),
            ch.s.sign().into(),
            ch.l.into(),
            ch.region.name().into(),
            ch.nu.into(),
            ch.gamma.into(),
        ]);
    }
    Ok(r)
}

fn bound(a: &BoundArgs) -> Result<Report, CliError> {
    let mut r = Report::new(
        "bound",
        vec![
            "energy",
            "energy_pole",
            "kappa",
            "norm_const",
            "closed_form_norm_const",
            "norm_ratio",
        ],
    );
    r.input_num("xi", a.xi)
        .input_num("m", a.m)
        .input("log", a.log);
    if a.log {
        let lvl = bound_energy_log(a.xi, a.m).map_err(core)?;
        if lvl.xi_nonnegative {
            r.warnings.push(format!(
                "xi = {} >= 0: the log-case level is usually quoted for xi < 0 only",
                a.xi
            ));
        }
        r.extra
            .insert("xi_nonnegative".into(), lvl.xi_nonnegative.into());
        let bs = BoundState::new(lvl.energy, BoundOrder::Log, a.m, None).map_err(core)?;
        r.equations = vec!["log-case-energy", "bound-normalization"];
        r.row(vec![
            bs.energy.into(),
            Cell::Empty,
            bs.kappa.into(),
            bs.norm_const.into(),
            Cell::Empty,
            Cell::Empty,
        ]);
        return Ok(r);
    }
    let g = a.gamma.expect("clap requires --gamma without --log");
    r.input_num("gamma", g);
    let e = bound_energy_closed(g, a.xi, a.m).map_err(core)?;
    let pole = find_pole(a.xi, g, a.m).map_err(core)?;
    let bs = BoundState::new(e, BoundOrder::Power(g), a.m, None).map_err(core)?;
    let closed = bs.closed_form_norm_const();
    r.equations = vec![
        "bound-energy-closed-form",
        "ingoing-coefficient",
        "bound-normalization",
    ];
    r.row(vec![
        e.into(),
        pole.into(),
        bs.kappa.into(),
        bs.norm_const.into(),
        closed.into(),
        closed.map(|c| bs.norm_const / c).into(),
    ]);
    Ok(r)
}

fn spectrum(a: &SpectrumArgs) -> Result<Report, CliError> {
    let c = decompose(a.ma).map_err(core)?;
    let rep = spectrum_report(&c, a.xi, a.m, a.kmin, a.kmax).map_err(core)?;
    let mut r = Report::new(
        "spectrum",
        vec![
            "k",
            "s",
            "l",
            "region",
            "nu",
            "gamma",
            "energy",
            "kappa",
            "norm_const",
        ],
    );
    r.input_num("ma", a.ma)
        .input_num("xi", a.xi)
        .input_num("m", a.m)
        .input("kmin", a.kmin)
        .input("kmax", a.kmax);
    r.equations = vec![
        "coupling-decomposition",
        "channel-classification",
        "bound-energy-closed-form",
        "log-case-energy",
    ];
    r.extra.insert("n".into(), c.n.into());
    r.extra.insert("mu".into(), num(c.mu));
    for e in &rep.entries {
        let ch = &e.channel;
        r.row(vec![
            ch.k.into(),
            ch.s.sign().into(),
            ch.l.into(),
            ch.region.name().into(),
            ch.nu.into(),
            ch.gamma.into(),
            e.bound.map(|b| b.energy).into(),
            e.bound.map(|b| b.kappa).into(),
            e.bound.map(|b| b.norm_const).into(),
        ]);
    }
    if let Some(d) = rep.degeneracy {
        r.extra.insert(
            "degeneracy".into(),
            json!({
                "e0_up": num(d.e0_up),
                "e0_down": num(d.e0_down),
                "e_unit_l_conjugate": num(d.e_unit_l_conjugate),
            }),
        );
    }
    Ok(r)
}

fn shell(a: &ShellArgs) -> Result<Report, CliError> {
    let gamma = match a.gamma {
        Some(g) => g,
        None => {
            let mu = decompose(a.ma).map_err(core)?.mu;
            let g = (a.l.abs() as f64 - mu).abs();
            if !(g > 0.0 && g < 1.0) {
                return Err(CliError::Usage(format!(
                    "default gamma = ||l| - mu| = {g} is outside (0, 1); pass --gamma"
                )));
            }
            g
        }
    };
    let cfg = ShellConfig::new(a.r, a.ma, a.m, a.l, gamma).map_err(core)?;
    let mut r = Report::new("shell", vec!["method", "energy", "x", "e_m_r2", "status"]);
    r.input("l", a.l)
        .input_num("gamma", gamma)
        .input_num("ma", a.ma)
        .input_num("m", a.m)
        .input_num("R", a.r)
        .input(
            "method",
            match a.method {
                ShellMethod::Closed => "closed",
                ShellMethod::Exact => "exact",
                ShellMethod::Numerov => "numerov",
                ShellMethod::All => "all",
            },
        );
    r.equations = vec!["shell-closed-form", "shell-matching-equation"];
    type Solver = fn(&ShellConfig<f64>) -> Result<f64, acf_core::shell::ShellError>;
    let methods: Vec<(&str, Solver)> = match a.method {
        ShellMethod::Closed => vec![("closed", shell_bound_energy_closed)],
        ShellMethod::Exact => vec![("exact", shell_bound_energy_exact)],
        ShellMethod::Numerov => vec![("numerov", numerov_bound_energy)],
        ShellMethod::All => vec![
            ("closed", shell_bound_energy_closed),
            ("exact", shell_bound_energy_exact),
            ("numerov", numerov_bound_energy),
        ],
    };
    let mut first_err = None;
    let mut any_ok = false;
    for (name, solve) in methods {
        match solve(&cfg) {
            Ok(e) => {
                any_ok = true;
                r.row(vec![
                    name.into(),
                    e.into(),
                    cfg.x_of_energy(e).into(),
                    (e * a.m * a.r * a.r).into(),
                    "ok".into(),
                ]);
            }
            Err(err) => {
                r.warnings.push(format!("{name}: {err}"));
                r.row(vec![
                    name.into(),
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Empty,
                    err.to_string().into(),
                ]);
                first_err.get_or_insert(err);
            }
        }
    }
    if !any_ok {
        return Err(core(first_err.expect("at least one method ran")));
    }
    Ok(r)
}

fn flow(a: &FlowArgs) -> Result<Report, CliError> {
    let span = (a.rmax / a.rmin).log10();
    let n = (span * a.decades as f64 - 1e-9).ceil().max(1.0) as usize + 1;
    // exact powers of ten where the grid crosses them
    let (l0, l1) = (a.rmin.log10(), a.rmax.log10());
    let radii: Vec<f64> = (0..n)
        .map(|i| match i {
            0 => a.rmin,
            _ if i == n - 1 => a.rmax,
            _ => 10f64.powf(l0 + (l1 - l0) * i as f64 / (n - 1) as f64),
        })
        .collect();
    let pts = renormalization_flow(a.etarget, a.l, a.gamma, a.m, &radii).map_err(core)?;
    let mut r = Report::new("flow", vec!["R", "Ma", "E_check", "rel_err", "E_closed"]);
    r.input_num("etarget", a.etarget)
        .input("l", a.l)
        .input_num("gamma", a.gamma)
        .input_num("m", a.m)
        .input_num("rmin", a.rmin)
        .input_num("rmax", a.rmax)
        .input("decades", a.decades);
    r.equations = vec!["shell-matching-equation", "coupling-renormalization"];
    for p in pts {
        r.row(vec![
            p.r.into(),
            p.ma.into(),
            p.e_check.into(),
            ((p.e_check - a.etarget) / a.etarget).abs().into(),
            p.e_closed.into(),
        ]);
    }
    r.plot = Some(PlotSpec {
        x: 0,
        y: vec![1],
        logx: true,
        logy: false,
    });
    Ok(r)
}

fn scatter(a: &ScatterArgs) -> Result<Report, CliError> {
    let c = decompose(a.ma).map_err(core)?;
    let table = scattering_table(a.p, &c, a.spin, a.phimin, a.phimax, a.points).map_err(core)?;
    let mut cols = vec!["phi", "re_f1", "im_f1", "re_f2", "im_f2", "dsigma"];
    let numeric = match a.numeric {
        Some(pr) => {
            cols.extend([
                "re_f1_num",
                "im_f1_num",
                "re_f2_num",
                "im_f2_num",
                "dsigma_num",
            ]);
            let phis: Vec<f64> = table.rows.iter().map(|row| row.phi).collect();
            Some(
                extract_amplitude(
                    a.p,
                    &c,
                    a.spin,
                    &phis,
                    pr / a.p,
                    None,
                    FieldVariant::LimitR0,
                )
                .map_err(core)?,
            )
        }
        None => None,
    };
    let mut r = Report::new("scatter", cols);
    r.input_num("ma", a.ma)
        .input_num("p", a.p)
        .input("spin", a.spin.to_string())
        .input_num("phimin", a.phimin)
        .input_num("phimax", a.phimax)
        .input("points", a.points);
    if let Some(pr) = a.numeric {
        r.input_num("numeric_pr", pr);
    }
    r.extra.insert("n".into(), c.n.into());
    r.extra.insert("mu".into(), num(c.mu));
    r.equations = vec!["scattering-amplitude", "cross-section"];
    if numeric.is_some() {
        r.equations.push("partial-wave-sum");
    }
    for (i, row) in table.rows.iter().enumerate() {
        let f = row.amplitude;
        let mut cells: Vec<Cell> = vec![
            row.phi.into(),
            f[0].re.into(),
            f[0].im.into(),
            f[1].re.into(),
            f[1].im.into(),
            row.dsigma_dphi.into(),
        ];
        if let Some(nv) = &numeric {
            let g = nv[i];
            cells.extend([
                g[0].re.into(),
                g[0].im.into(),
                g[1].re.into(),
                g[1].im.into(),
                doublet_norm_sqr(&g).into(),
            ]);
        }
        r.row(cells);
    }
    r.plot = Some(PlotSpec {
        x: 0,
        y: if numeric.is_some() {
            vec![5, 10]
        } else {
            vec![5]
        },
        logx: false,
        logy: true,
    });
    Ok(r)
}

fn polescan(a: &PolescanArgs) -> Result<Report, CliError> {
    let grid = if a.log {
        logspace(-a.emin, -a.emax, a.points)
            .into_iter()
            .map(|v| -v)
            .collect()
    } else {
        linspace(a.emin, a.emax, a.points)
    };
    let tab = pole_scan(a.xi, a.gamma, a.m, &grid).map_err(core)?;
    let mut r = Report::new("polescan", vec!["E", "B"]);
    r.input_num("xi", a.xi)
        .input_num("gamma", a.gamma)
        .input_num("m", a.m)
        .input_num("emin", a.emin)
        .input_num("emax", a.emax)
        .input("points", a.points)
        .input("log", a.log);
    r.equations = vec!["ingoing-coefficient", "bound-energy-closed-form"];
    let es: Vec<f64> = tab.iter().map(|t| t.0).collect();
    let bracket = first_sign_change(&es, |e| {
        tab.iter().find(|t| t.0 == e).map_or(f64::NAN, |t| t.1)
    });
    r.extra.insert(
        "bracket".into(),
        bracket.map_or(Value::Null, |(lo, hi)| json!([num(lo), num(hi)])),
    );
    r.extra.insert(
        "closed_form_energy".into(),
        bound_energy_closed(a.gamma, a.xi, a.m).map_or(Value::Null, num),
    );
    for (e, b) in tab {
        r.row(vec![e.into(), b.into()]);
    }
    r.plot = Some(PlotSpec {
        x: 0,
        y: vec![1],
        logx: false,
        logy: false,
    });
    Ok(r)
}

type Eval = fn(f64, f64) -> Result<f64, specfun::SpecFunError>;

fn specfun_cmd(a: &SpecfunArgs) -> Result<Report, CliError> {
    let (name, eval): (&str, Eval) = match a.function {
        Function::Gamma => ("gamma", |_, x| specfun::gamma(x)),
        Function::Rgamma => ("rgamma", |_, x| Ok(specfun::rgamma(x))),
        Function::J => ("j", specfun::bessel_j),
        Function::N => ("n", specfun::bessel_n),
        Function::I => ("i", specfun::bessel_i),
        Function::K => ("k", specfun::bessel_k),
        Function::Jp => ("jp", specfun::bessel_j_prime),
        Function::Np => ("np", specfun::bessel_n_prime),
        Function::Ip => ("ip", specfun::bessel_i_prime),
        Function::Kp => ("kp", specfun::bessel_k_prime),
    };
    let mut r = Report::new("specfun", vec!["x", "value"]);
    r.input("function", name).input_num("nu", a.nu);
    r.input("x", Value::Array(a.x.iter().map(|&v| num(v)).collect()));
    r.equations = vec![match a.function {
        Function::Gamma | Function::Rgamma => "gamma-function",
        _ => "bessel-functions",
    }];
    for &x in &a.x {
        r.row(vec![x.into(), eval(a.nu, x).map_err(core)?.into()]);
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// cross-oracle checks

struct CheckRow {
    name: &'static str,
    measured: f64,
    tolerance: f64,
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn check_rows() -> Result<Vec<CheckRow>, Error> {
    let mut rows = Vec::new();

    let mut worst: f64 = 0.0;
    for g in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for xi in [-0.1, -1.0, -10.0] {
            worst = worst.max(rel(
                find_pole(xi, g, 1.0)?,
                bound_energy_closed(g, xi, 1.0)?,
            ));
        }
    }
    rows.push(CheckRow {
        name: "pole of B_l vs closed-form energy",
        measured: worst,
        tolerance: 1e-10,
    });

    let mut worst: f64 = 0.0;
    for i in 1..=9 {
        let mu = i as f64 / 10.0;
        worst = worst.max(rel(
            bound_energy_unit_l(1.0 - mu, -1.0, 1.0)?,
            bound_energy_closed(mu, -1.0, 1.0)?,
        ));
    }
    rows.push(CheckRow {
        name: "l=0 level vs |l|=1 level at 1-mu",
        measured: worst,
        tolerance: 1e-12,
    });

    rows.push(CheckRow {
        name: "log-case level at xi = C equals -4m",
        measured: rel(bound_energy_log(0.577_215_664_901_532_9, 1.0)?.energy, -4.0),
        tolerance: 1e-12,
    });

    // shell model along the renormalized coupling: E fixed at -1, R = 1e-3
    let (r0, g) = (1e-3, 0.3);
    let ma = renormalize_coupling(-1.0, r0, 0, g, 1.0)?;
    let cfg = ShellConfig::new(r0, ma, 1.0, 0, g)?;
    let exact = shell_bound_energy_exact(&cfg)?;
    rows.push(CheckRow {
        name: "shell exact root reproduces target energy",
        measured: rel(exact, -1.0),
        tolerance: 1e-8,
    });
    rows.push(CheckRow {
        name: "shell closed form vs exact root",
        measured: rel(shell_bound_energy_closed(&cfg)?, exact),
        tolerance: 1e-2,
    });
    rows.push(CheckRow {
        name: "shell Numerov vs exact root",
        measured: rel(numerov_bound_energy(&cfg)?, exact),
        tolerance: 5e-3,
    });

    let cp = decompose(0.5f64)?;
    let (up, down): (f64, f64) = effective_extension_parameters(0, &cp, 1e-6, 1.0, 1e-4)?;
    rows.push(CheckRow {
        name: "shell theta limit, spin up -> 0",
        measured: up.min(2.0 * std::f64::consts::PI - up),
        tolerance: 1e-3,
    });
    rows.push(CheckRow {
        name: "shell theta limit, spin down -> pi",
        measured: (down - std::f64::consts::PI).abs(),
        tolerance: 1e-3,
    });

    let phis = [0.5, std::f64::consts::FRAC_PI_2, std::f64::consts::PI];
    let num_f = extract_amplitude(
        1.0,
        &cp,
        SpinState::z(Spin::Up),
        &phis,
        200.0,
        None,
        FieldVariant::LimitR0,
    )?;
    let mut worst: f64 = 0.0;
    for (phi, fv) in phis.iter().zip(&num_f) {
        let want = doublet_norm_sqr(&amplitude_spin_z(*phi, 1.0, &cp, Spin::Up)?).sqrt();
        worst = worst.max(rel(doublet_norm_sqr(fv).sqrt(), want));
    }
    rows.push(CheckRow {
        name: "partial-wave |f| vs closed-form amplitude",
        measured: worst,
        tolerance: 1e-3,
    });
    Ok(rows)
}

fn check() -> Result<Outcome, CliError> {
    let rows = check_rows().map_err(CliError::Core)?;
    let mut r = Report::new("check", vec!["check", "measured", "tolerance", "status"]);
    r.equations = vec![
        "ingoing-coefficient",
        "bound-energy-closed-form",
        "log-case-energy",
        "shell-matching-equation",
        "shell-closed-form",
        "scattering-amplitude",
    ];
    let mut failed = false;
    for c in rows {
        let pass = c.measured <= c.tolerance;
        failed |= !pass;
        r.row(vec![
            c.name.into(),
            c.measured.into(),
            c.tolerance.into(),
            if pass { "PASS" } else { "FAIL" }.into(),
        ]);
    }
    Ok(Outcome { report: r, failed })
}
