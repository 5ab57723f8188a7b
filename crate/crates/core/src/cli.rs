//! Command-line front end.
//!
//! `ridge <subcommand> [--config FILE] [--out FILE] [key=value | --key value ...]`
//!
//! Configuration is a flat `key=value` file with `#` comments. Overrides on
//! the command line win over the file. Every CSV starts with `# key=value`
//! lines echoing the resolved configuration.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 configuration error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::Parser;

use crate::approx::best_ramp_approx;
use crate::dictionary::{self, enumerate_cover_capped, Activation, RidgeUnit, Sign};
use crate::error::{Error, Result};
use crate::greedy::{fit_lpgp, GreedyConfig, InnerStrategy, PenaltyFn};
use crate::model::RidgeModel;
use crate::penalty::{self, PenaltyConfig, Regime, Tail};
use crate::risk::{self, RiskCurveConfig, SelectOptions};
use crate::seed;
use crate::stats::ols_slope;
use crate::targets::{
    fmt17, gen_dataset_with_law, mc_sq_distance, read_csv, sample_design, Dataset, DesignLaw, NoiseRegime,
    SpectralTarget, Target,
};

pub const SUBCOMMANDS: [&str; 6] = [
    "fit",
    "approx-rate",
    "cover-stats",
    "penalty-table",
    "concentration-check",
    "risk-curve",
];

#[derive(Clone, Copy)]
enum Kind {
    Int,
    Float,
    Ints,
    Floats,
    Text,
    Choice(&'static [&'static str]),
    /// `auto` or a float.
    AutoFloat,
    /// `auto` or a list of integers.
    AutoInts,
}

const NOISE: &[&str] = &["zero", "gaussian", "laplace"];
const LAWS: &[&str] = &["uniform", "bernoulli"];
const ACTS: &[&str] = &["ramp", "sine", "tanh"];
const INNER: &[&str] = &["cover-exhaustive", "projected-gradient", "frank-wolfe"];
const PENS: &[&str] = &["linear", "power"];
const PEN_REGIMES: &[&str] = &["highdim-noise", "no-noise", "moderate", "mixed"];
const TAILS: &[&str] = &["sub-exponential", "sub-gaussian", "zero"];
const TARGETS: &[&str] = &["cosine", "ramp3"];

/// `(key, default, kind)`.
const KEYS: &[(&str, &str, Kind)] = &[
    ("A", "1", Kind::Float),
    ("B", "1", Kind::Float),
    ("B_n", "auto", Kind::AutoFloat),
    ("activation", "ramp", Kind::Choice(ACTS)),
    ("cover_cap", "1000000", Kind::Int),
    ("cover_m", "2", Kind::Int),
    ("d", "2", Kind::Int),
    ("data", "", Kind::Text),
    ("delta1", "1", Kind::Float),
    ("delta2", "1", Kind::Float),
    ("eta", "auto", Kind::AutoFloat),
    ("eval_points", "100000", Kind::Int),
    ("exponent", "1.3333333333333333", Kind::Float),
    ("gamma", "1", Kind::Float),
    ("inner", "cover-exhaustive", Kind::Choice(INNER)),
    ("k", "32", Kind::Int),
    ("lambda", "0", Kind::Float),
    ("law", "uniform", Kind::Choice(LAWS)),
    ("library", "0", Kind::Int),
    ("m", "2", Kind::Int),
    ("m_grid", "auto", Kind::AutoInts),
    ("m_list", "8,16,32,64,128,256", Kind::Ints),
    ("m_max", "16", Kind::Int),
    ("mixed_c", "1", Kind::Float),
    ("n", "500", Kind::Int),
    ("n_grid", "256,1024,4096", Kind::Ints),
    ("noise", "zero", Kind::Choice(NOISE)),
    ("nu", "0.5", Kind::Float),
    ("omega", "1,1", Kind::Floats),
    ("pen_regime", "highdim-noise", Kind::Choice(PEN_REGIMES)),
    ("pen_scale", "1", Kind::Float),
    ("penalty", "linear", Kind::Choice(PENS)),
    ("radius", "2", Kind::Float),
    ("restarts", "32", Kind::Int),
    ("seed", "0", Kind::Int),
    ("selection_points", "4096", Kind::Int),
    ("sigma", "0.5", Kind::Float),
    ("sigma2", "auto", Kind::AutoFloat),
    ("steps", "200", Kind::Int),
    ("tail", "auto", Kind::Text),
    ("target", "cosine", Kind::Choice(TARGETS)),
    ("term_cost", "0", Kind::Float),
    ("trials", "20", Kind::Int),
    ("v_f", "1", Kind::Float),
];

fn kind_of(key: &str) -> Option<Kind> {
    KEYS.iter().find(|k| k.0 == key).map(|k| k.2)
}

fn cfg_err(key: &str, reason: impl Into<String>) -> Error {
    Error::Config {
        key: key.into(),
        reason: reason.into(),
    }
}

fn check_value(key: &str, kind: Kind, v: &str) -> Result<()> {
    let int = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map(|_| ())
            .map_err(|_| cfg_err(key, format!("`{s}` is not a nonnegative integer")))
    };
    let float = |s: &str| match s.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(()),
        _ => Err(cfg_err(key, format!("`{s}` is not a finite number"))),
    };
    match kind {
        Kind::Int => int(v),
        Kind::Float => float(v),
        Kind::Ints => v.split(',').try_for_each(int),
        Kind::Floats => v.split(',').try_for_each(float),
        Kind::Text => {
            if key == "tail" && v != "auto" && !TAILS.contains(&v) {
                return Err(cfg_err(key, format!("`{v}` is not one of auto, {}", TAILS.join(", "))));
            }
            Ok(())
        }
        Kind::Choice(opts) => {
            if opts.contains(&v) {
                Ok(())
            } else {
                Err(cfg_err(key, format!("`{v}` is not one of {}", opts.join(", "))))
            }
        }
        Kind::AutoFloat => {
            if v == "auto" {
                Ok(())
            } else {
                float(v)
            }
        }
        Kind::AutoInts => {
            if v == "auto" {
                Ok(())
            } else {
                v.split(',').try_for_each(int)
            }
        }
    }
}

/// Fully resolved, validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            values: KEYS.iter().map(|(k, v, _)| (k.to_string(), v.to_string())).collect(),
        }
    }
}

impl RunConfig {
    pub fn get(&self, key: &str) -> &str {
        self.values
            .get(key)
            .map(String::as_str)
            .unwrap_or_else(|| panic!("unregistered key {key}"))
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let kind = kind_of(key).ok_or_else(|| cfg_err(key, "unknown key"))?;
        let value = value.trim();
        check_value(key, kind, value)?;
        self.values.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn u64(&self, key: &str) -> u64 {
        self.get(key).parse().expect("validated")
    }

    pub fn usize(&self, key: &str) -> usize {
        self.u64(key) as usize
    }

    pub fn f64(&self, key: &str) -> f64 {
        self.get(key).parse().expect("validated")
    }

    pub fn auto_f64(&self, key: &str) -> Option<f64> {
        match self.get(key) {
            "auto" => None,
            s => Some(s.parse().expect("validated")),
        }
    }

    pub fn usizes(&self, key: &str) -> Vec<usize> {
        self.get(key)
            .split(',')
            .map(|s| s.trim().parse().expect("validated"))
            .collect()
    }

    pub fn f64s(&self, key: &str) -> Vec<f64> {
        self.get(key)
            .split(',')
            .map(|s| s.trim().parse().expect("validated"))
            .collect()
    }

    /// `# key=value` lines for every key.
    pub fn header(&self, subcommand: &str) -> String {
        let mut s = format!("# subcommand={subcommand}\n");
        for (k, v) in &self.values {
            let _ = writeln!(s, "# {k}={v}");
        }
        s
    }

    pub fn noise(&self) -> NoiseRegime {
        match self.get("noise") {
            "gaussian" => NoiseRegime::Gaussian {
                sigma: self.f64("sigma"),
            },
            "laplace" => NoiseRegime::Laplace { nu: self.f64("nu") },
            _ => NoiseRegime::Zero,
        }
    }

    pub fn law(&self) -> DesignLaw {
        self.get("law").parse().expect("validated")
    }

    pub fn tail(&self) -> Tail {
        match self.get("tail") {
            "auto" => match self.noise() {
                NoiseRegime::Zero => Tail::Zero,
                NoiseRegime::Gaussian { .. } => Tail::SubGaussian,
                NoiseRegime::Laplace { .. } => Tail::SubExponential,
            },
            s => s.parse().expect("validated"),
        }
    }

    pub fn greedy(&self) -> Result<GreedyConfig> {
        let penalty = match self.get("penalty") {
            "power" => PenaltyFn::Power {
                lambda: self.f64("lambda"),
                exponent: self.f64("exponent"),
            },
            _ => PenaltyFn::Linear {
                lambda: self.f64("lambda"),
            },
        };
        let cfg = GreedyConfig {
            radius: self.f64("radius"),
            activation: self.get("activation").parse::<Activation>()?,
            m_max: self.usize("m_max"),
            penalty,
            inner: self.get("inner").parse::<InnerStrategy>()?,
            restarts: self.usize("restarts"),
            steps: self.usize("steps"),
            cover_m: self.usize("cover_m"),
            cover_cap: self.u64("cover_cap") as u128,
            c_report: false,
            seed: self.u64("seed"),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Penalty constants; `auto` fields follow the noise settings and `n`.
    pub fn penalty(&self, n: usize) -> Result<PenaltyConfig> {
        let noise = self.noise();
        let b = self.f64("B");
        let nu = self.f64("nu");
        let b_n = self
            .auto_f64("B_n")
            .unwrap_or_else(|| penalty::select_bn(b, nu, n, self.tail()).max(b));
        let cfg = PenaltyConfig {
            b,
            b_n,
            sigma2: self.auto_f64("sigma2").unwrap_or_else(|| noise.variance()),
            eta: self.auto_f64("eta").unwrap_or_else(|| noise.bernstein_eta()),
            nu,
            radius: self.f64("radius"),
            delta1: self.f64("delta1"),
            delta2: self.f64("delta2"),
            regime: self.get("pen_regime").parse::<Regime>()?,
            mixed_c: self.f64("mixed_c"),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn m_grid(&self) -> Vec<usize> {
        match self.get("m_grid") {
            "auto" => risk::default_m_grid(self.usize("m_max")),
            _ => self.usizes("m_grid"),
        }
    }

    pub fn cosine_target(&self) -> Result<SpectralTarget> {
        let omega = self.f64s("omega");
        if omega.len() != self.usize("d") {
            return Err(cfg_err(
                "omega",
                format!("length {} does not match d={}", omega.len(), self.usize("d")),
            ));
        }
        Ok(SpectralTarget::cosine(omega))
    }
}

/// Defaults, then the config file, then `overrides` in order.
pub fn parse_config(path: Option<&Path>, overrides: &[(String, String)]) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(p) = path {
        let text = fs::read_to_string(p).map_err(|e| cfg_err("config", format!("{}: {e}", p.display())))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| cfg_err("config", format!("line {} is not key=value", lineno + 1)))?;
            cfg.set(k.trim(), v)?;
        }
    }
    for (k, v) in overrides {
        cfg.set(k, v)?;
    }
    if cfg.usize("d") == 0 {
        return Err(cfg_err("d", "must be >= 1"));
    }
    if cfg.usize("n") == 0 {
        return Err(cfg_err("n", "must be >= 1"));
    }
    Ok(cfg)
}

/// Turns `--key value`, `--key=value` and `key=value` tokens into pairs.
pub fn parse_overrides(tokens: &[String]) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut it = tokens.iter();
    while let Some(tok) = it.next() {
        if let Some(flag) = tok.strip_prefix("--") {
            if let Some((k, v)) = flag.split_once('=') {
                out.push((k.to_string(), v.to_string()));
            } else {
                let v = it.next().ok_or_else(|| cfg_err(flag, "flag needs a value"))?;
                out.push((flag.to_string(), v.clone()));
            }
        } else if let Some((k, v)) = tok.split_once('=') {
            out.push((k.to_string(), v.to_string()));
        } else {
            return Err(cfg_err(tok, "expected key=value"));
        }
    }
    Ok(out)
}

#[derive(Parser, Debug)]
#[command(name = "ridge", about = "Greedy ridge-function regression experiments")]
struct Args {
    /// One of: fit, approx-rate, cover-stats, penalty-table, concentration-check, risk-curve
    subcommand: String,
    /// Plain key=value configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path (stdout when absent or `-`)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides: key=value, --key value or --key=value
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    overrides: Vec<String>,
}

/// Result of a subcommand: the CSV body and whether its checks passed.
pub struct Output {
    pub csv: String,
    pub ok: bool,
}

/// Runs the binary with the given argv; returns the process exit code.
pub fn main_with_args<I: IntoIterator<Item = String>>(argv: I) -> i32 {
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if !SUBCOMMANDS.contains(&args.subcommand.as_str()) {
        eprintln!(
            "error: unknown subcommand `{}` (expected one of {})",
            args.subcommand,
            SUBCOMMANDS.join(", ")
        );
        return 2;
    }
    let mut config_path = args.config.clone();
    let mut out_path = args.out.clone();
    let parsed = parse_overrides(&args.overrides).and_then(|pairs| {
        // --config/--out after the first override land here rather than in clap
        let mut rest = Vec::new();
        for (k, v) in pairs {
            match k.as_str() {
                "config" => config_path = Some(PathBuf::from(v)),
                "out" => out_path = Some(PathBuf::from(v)),
                _ => rest.push((k, v)),
            }
        }
        parse_config(config_path.as_deref(), &rest)
    });
    let cfg = match parsed {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let out = match dispatch(&args.subcommand, &cfg) {
        Ok(o) => o,
        Err(e @ Error::Config { .. }) => {
            eprintln!("error: {e}");
            return 2;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let text = cfg.header(&args.subcommand) + &out.csv;
    let written = match out_path.as_deref() {
        Some(p) if p != Path::new("-") => fs::write(p, text.as_bytes()),
        _ => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return 1;
    }
    if out.ok {
        0
    } else {
        eprintln!("error: a checked property failed; see the CSV");
        1
    }
}

pub fn dispatch(subcommand: &str, cfg: &RunConfig) -> Result<Output> {
    match subcommand {
        "fit" => cmd_fit(cfg),
        "approx-rate" => cmd_approx_rate(cfg),
        "cover-stats" => cmd_cover_stats(cfg),
        "penalty-table" => cmd_penalty_table(cfg),
        "concentration-check" => cmd_concentration(cfg),
        "risk-curve" => cmd_risk_curve(cfg),
        other => Err(cfg_err("subcommand", format!("unknown subcommand `{other}`"))),
    }
}

/// Three cover units `(x₁+x₂)₊`, `(x₃−x₄)₊`, `(2x₅)₊` (indices wrap when `d < 5`).
pub fn ramp3_target(d: usize) -> RidgeModel {
    let unit = |pairs: &[(usize, f64)]| {
        let mut theta = vec![0.0; d + 1];
        for &(j, v) in pairs {
            theta[j % d] += v;
        }
        RidgeUnit {
            activation: Activation::Ramp,
            theta,
            sign: Sign::Plus,
        }
    };
    RidgeModel::from_terms(
        d,
        vec![
            (1.0, unit(&[(0, 1.0), (1, 1.0)])),
            (1.0, unit(&[(2, 1.0), (3, -1.0)])),
            (1.0, unit(&[(4, 2.0)])),
        ],
    )
    .expect("dimensions match")
}

fn target_for(cfg: &RunConfig) -> Result<Box<dyn Target>> {
    Ok(match cfg.get("target") {
        "ramp3" => Box::new(ramp3_target(cfg.usize("d"))),
        _ => Box::new(cfg.cosine_target()?),
    })
}

fn cmd_fit(cfg: &RunConfig) -> Result<Output> {
    let data = match cfg.get("data") {
        "" => {
            let t = target_for(cfg)?;
            gen_dataset_with_law(t.as_ref(), cfg.usize("n"), cfg.noise(), cfg.law(), cfg.u64("seed"))?
        }
        path => {
            let f = fs::File::open(path).map_err(|e| cfg_err("data", format!("{path}: {e}")))?;
            let (x, y) = read_csv(f)?;
            Dataset::from_xy(x, y)?
        }
    };
    let path = fit_lpgp(&data, &cfg.greedy()?)?;
    let mut buf = Vec::new();
    path.write_csv(&mut buf)?;
    Ok(Output {
        csv: String::from_utf8(buf).expect("ascii"),
        ok: true,
    })
}

fn cmd_approx_rate(cfg: &RunConfig) -> Result<Output> {
    let target = cfg.cosine_target()?;
    let d = target.dim();
    let seed0 = cfg.u64("seed");
    let eval = sample_design(
        cfg.usize("eval_points"),
        d,
        DesignLaw::Uniform,
        &mut seed::child(seed0, 1),
    );
    let select = sample_design(
        cfg.usize("selection_points"),
        d,
        DesignLaw::Uniform,
        &mut seed::child(seed0, 2),
    );
    let v2 = target.spectral_norm(2.0);
    let mut csv = String::from("m,mc_error,bound,within_bound\n");
    let (mut lm, mut le) = (Vec::new(), Vec::new());
    let mut ok = true;
    for m in cfg.usizes("m_list") {
        let (model, _) = best_ramp_approx(&target, m, cfg.usize("k"), &select, seed::derive(seed0, m as u64))?;
        let err = mc_sq_distance(&target, &model, &eval);
        let bound = 16.0 * v2 * v2 / m as f64;
        ok &= err <= bound;
        lm.push((m as f64).ln());
        le.push(err.ln());
        let _ = writeln!(csv, "{m},{},{},{}", fmt17(err), fmt17(bound), err <= bound);
    }
    if lm.len() >= 2 {
        let slope = ols_slope(&lm, &le);
        let _ = writeln!(csv, "# log_log_slope={}", fmt17(slope));
    }
    Ok(Output { csv, ok })
}

fn cmd_cover_stats(cfg: &RunConfig) -> Result<Output> {
    let (d, m, radius) = (cfg.usize("d"), cfg.usize("m"), cfg.f64("radius"));
    let cover = enumerate_cover_capped(d, m, radius, cfg.u64("cover_cap") as u128)?;
    let expect =
        dictionary::binomial((2 * d + m) as u64, m as u64).ok_or_else(|| Error::Size("binomial overflow".into()))?;
    let ok = cover.len() as u128 == expect;
    let mut csv = String::from("d,m,radius,count,binomial,distinct_thetas\n");
    let _ = writeln!(
        csv,
        "{d},{m},{},{},{expect},{}",
        fmt17(radius),
        cover.len(),
        cover.distinct_thetas().len()
    );
    let lib = cfg.u64("library");
    if lib > 0 {
        let c = dictionary::cover_count_library(lib, m as u64)?;
        let _ = writeln!(
            csv,
            "# library={lib} count={} ln_count={} ln_bound={}",
            c.count,
            fmt17(c.ln_count),
            fmt17(c.ln_bound)
        );
    }
    Ok(Output { csv, ok })
}

fn cmd_penalty_table(cfg: &RunConfig) -> Result<Output> {
    let d = cfg.usize("d");
    let v_f = cfg.f64("v_f");
    let mut csv = String::from("regime,n,d,v_f,pen_per_n,main_term,valid\n");
    for regime in Regime::ALL {
        for n in cfg.usizes("n_grid") {
            let mut p = cfg.penalty(n)?;
            p.regime = regime;
            let t_n = 0.0;
            let pv = penalty::regime_penalty(&p, v_f, n, d, t_n)?;
            let _ = writeln!(
                csv,
                "{regime},{n},{d},{},{},{},{}",
                fmt17(v_f),
                fmt17(pv.pen_per_n),
                fmt17(pv.main_term),
                pv.valid
            );
        }
    }
    Ok(Output { csv, ok: true })
}

fn cmd_concentration(cfg: &RunConfig) -> Result<Output> {
    let (n, trials, d) = (cfg.usize("n"), cfg.usize("trials"), cfg.usize("d"));
    let seed0 = cfg.u64("seed");
    let noise = match cfg.noise() {
        NoiseRegime::Zero => NoiseRegime::Gaussian {
            sigma: cfg.f64("sigma"),
        },
        r => r,
    };
    let mut csv = String::from("check,class,mean,se,within_3se\n");
    let mut ok = true;
    for (i, spec) in risk::shipped_class_specs(d).iter().enumerate() {
        let s = seed::derive(seed0, i as u64);
        let (m1, se1) = risk::mc_symmetrization_check(spec, cfg.f64("gamma"), n, trials, cfg.law(), s)?;
        let (m2, se2) = risk::mc_noise_check(spec, cfg.f64("A"), n, trials, noise, cfg.law(), s ^ 1)?;
        for (name, m, se) in [("symmetrization", m1, se1), ("noise", m2, se2)] {
            let pass = m <= 3.0 * se;
            ok &= pass;
            let _ = writeln!(csv, "{name},{},{},{},{pass}", spec.name, fmt17(m), fmt17(se));
        }
    }
    Ok(Output { csv, ok })
}

fn cmd_risk_curve(cfg: &RunConfig) -> Result<Output> {
    let target = target_for(cfg)?;
    let n0 = cfg.usizes("n_grid").into_iter().max().unwrap_or(1);
    let penalty = cfg.penalty(n0)?;
    let rc = RiskCurveConfig {
        n_grid: cfg.usizes("n_grid"),
        trials: cfg.usize("trials"),
        regime: cfg.noise(),
        law: cfg.law(),
        greedy: cfg.greedy()?,
        penalty,
        auto_bn: if cfg.get("B_n") == "auto" {
            Some(cfg.tail())
        } else {
            None
        },
        m_grid: cfg.m_grid(),
        select: SelectOptions {
            pen_scale: cfg.f64("pen_scale"),
            term_cost: cfg.f64("term_cost"),
            couple_penalty: true,
        },
        seed: cfg.u64("seed"),
    };
    let rows = risk::risk_curve(target.as_ref(), &rc)?;
    let mut buf = Vec::new();
    risk::write_risk_csv(&mut buf, &rows)?;
    Ok(Output {
        csv: String::from_utf8(buf).expect("ascii"),
        ok: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ov(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn defaults_and_precedence() {
        let dir = tempfile::tempdir().unwrap();
        let empty = dir.path().join("empty.conf");
        fs::write(&empty, "").unwrap();
        assert_eq!(parse_config(Some(&empty), &[]).unwrap(), RunConfig::default());

        let p = dir.path().join("seed.conf");
        fs::write(&p, "# comment\nseed=7\n").unwrap();
        assert_eq!(parse_config(Some(&p), &[]).unwrap().u64("seed"), 7);
        assert_eq!(parse_config(Some(&p), &ov(&[("seed", "9")])).unwrap().u64("seed"), 9);
    }

    #[test]
    fn bad_values_name_the_key() {
        match parse_config(None, &ov(&[("noise", "bogus")])) {
            Err(Error::Config { key, .. }) => assert_eq!(key, "noise"),
            other => panic!("{other:?}"),
        }
        match parse_config(None, &ov(&[("pen_regime", "bogus")])) {
            Err(Error::Config { key, .. }) => assert_eq!(key, "pen_regime"),
            other => panic!("{other:?}"),
        }
        match parse_config(None, &ov(&[("nonsense", "1")])) {
            Err(Error::Config { key, .. }) => assert_eq!(key, "nonsense"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn override_token_forms() {
        let toks: Vec<String> = ["--seed", "3", "--d=4", "m=2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(
            parse_overrides(&toks).unwrap(),
            ov(&[("seed", "3"), ("d", "4"), ("m", "2")])
        );
        assert!(parse_overrides(&["--seed".to_string()]).is_err());
    }

    #[test]
    fn cover_stats_reports_binomial() {
        let cfg = parse_config(None, &ov(&[("d", "2"), ("m", "2")])).unwrap();
        let out = cmd_cover_stats(&cfg).unwrap();
        assert!(out.ok);
        assert!(out.csv.lines().nth(1).unwrap().contains(",15,15,"));
    }

    #[test]
    fn penalty_table_has_all_regimes() {
        let out = cmd_penalty_table(&RunConfig::default()).unwrap();
        let rows = out.csv.lines().count() - 1;
        assert!(rows >= 4 * 3);
        for r in Regime::ALL {
            assert!(out.csv.contains(r.name()));
        }
    }
}
