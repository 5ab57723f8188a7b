//! Penalty formulas, `γ_n`/`τ`, truncation, and tuning rules.
//!
//! Every `pen_*` function returns the penalty already divided by `n`.

use std::f64::consts::E;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::greedy::PenaltyFn;
use crate::model::RidgeModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Regime {
    #[default]
    HighDimNoise,
    NoNoise,
    Moderate,
    Mixed,
}

impl Regime {
    pub const ALL: [Regime; 4] = [Regime::HighDimNoise, Regime::NoNoise, Regime::Moderate, Regime::Mixed];

    pub fn name(self) -> &'static str {
        match self {
            Regime::HighDimNoise => "highdim-noise",
            Regime::NoNoise => "no-noise",
            Regime::Moderate => "moderate",
            Regime::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::input(format!("unknown penalty regime `{s}`")))
    }
}

/// Tail class of the noise, used to pick the truncation level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Tail {
    SubExponential,
    SubGaussian,
    #[default]
    Zero,
}

impl FromStr for Tail {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sub-exponential" | "subexp" => Ok(Tail::SubExponential),
            "sub-gaussian" | "subgauss" => Ok(Tail::SubGaussian),
            "zero" => Ok(Tail::Zero),
            _ => Err(Error::input(format!("unknown tail class `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PenaltyConfig {
    pub b: f64,
    pub b_n: f64,
    pub sigma2: f64,
    pub eta: f64,
    pub nu: f64,
    pub radius: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub regime: Regime,
    /// Multiplier `C` of the mixed-regime penalty.
    pub mixed_c: f64,
}

impl Default for PenaltyConfig {
    fn default() -> Self {
        Self {
            b: 1.0,
            b_n: 1.0,
            sigma2: 0.0,
            eta: 0.0,
            nu: 0.0,
            radius: 2.0,
            delta1: 1.0,
            delta2: 1.0,
            regime: Regime::HighDimNoise,
            mixed_c: 1.0,
        }
    }
}

impl PenaltyConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |k: &str, r: &str| {
            Err(Error::Config {
                key: k.into(),
                reason: r.into(),
            })
        };
        if !(self.b >= 0.0) {
            return bad("B", "must be >= 0");
        }
        if !(self.b_n >= self.b) || !(self.b_n > 0.0) {
            return bad("B_n", "must be > 0 and >= B");
        }
        if !(self.delta1 > 0.0) {
            return bad("delta1", "must be > 0");
        }
        if !(self.delta2 > 0.0) {
            return bad("delta2", "must be > 0");
        }
        if !(self.sigma2 >= 0.0) {
            return bad("sigma2", "must be >= 0");
        }
        if !(self.eta >= 0.0) {
            return bad("eta", "must be >= 0");
        }
        if !(self.radius > 0.0) {
            return bad("radius", "must be > 0");
        }
        Ok(())
    }

    pub fn tau(&self) -> f64 {
        (1.0 + self.delta1) * (1.0 + self.delta2)
    }
}

/// Returns `(γ_n, τ)`.
pub fn gamma_tau(cfg: &PenaltyConfig) -> Result<(f64, f64)> {
    cfg.validate()?;
    let tau = cfg.tau();
    let bb = cfg.b + cfg.b_n;
    let (d1, d2) = (cfg.delta1, cfg.delta2);
    let gamma = (1.0 + d1 / 2.0) * (1.0 + 2.0 / d1) * bb * bb / (2.0 * tau)
        + 2.0 * (1.0 + 1.0 / d2) * cfg.sigma2
        + 2.0 * bb * cfg.eta;
    Ok((gamma, tau))
}

pub fn select_bn(b: f64, nu: f64, n: usize, tail: Tail) -> f64 {
    let ln_n = (n.max(1) as f64).ln();
    select_bn_ln(b, nu, ln_n, tail)
}

/// [`select_bn`] taking `ln n` directly, so non-integer `n` can be used.
pub fn select_bn_ln(b: f64, nu: f64, ln_n: f64, tail: Tail) -> f64 {
    match tail {
        Tail::SubExponential => 2f64.sqrt() * (b + nu * ln_n),
        Tail::SubGaussian => 2f64.sqrt() * (b + (nu * ln_n).sqrt()),
        Tail::Zero => b,
    }
}

/// `T f = sgn(f)·min(|f|, B_n)`.
#[inline]
pub fn truncate(value: f64, b_n: f64) -> f64 {
    value.clamp(-b_n, b_n)
}

pub fn truncate_model_eval(model: &RidgeModel, x: &[f64], b_n: f64) -> Result<f64> {
    Ok(truncate(model.eval(x)?, b_n))
}

/// `T_n = 2Σ(Y_i² − B_n²)·1{|Y_i| > B_n}`.
pub fn tail_tn(y: &[f64], b_n: f64) -> f64 {
    2.0 * y
        .iter()
        .filter(|v| v.abs() > b_n)
        .map(|v| v * v - b_n * b_n)
        .sum::<f64>()
}

/// Right-hand side of the tail-moment bound for one observation:
/// `(4ν²/n)·E e^{|ε|/ν}` (sub-exponential) or `(2ν/n)·E e^{ε²/ν}` (sub-Gaussian).
pub fn tail_moment_bound(tail: Tail, nu: f64, n: usize, moment: f64) -> f64 {
    let n = n as f64;
    match tail {
        Tail::SubExponential => 4.0 * nu * nu / n * moment,
        Tail::SubGaussian => 2.0 * nu / n * moment,
        Tail::Zero => 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyValue {
    pub pen_per_n: f64,
    pub main_term: f64,
    pub valid: bool,
}

fn ln_d1(d: usize) -> f64 {
    ((d + 1) as f64).ln()
}

pub fn pen_highdim(v_f: f64, n: usize, d: usize, radius: f64, gamma: f64, b_n: f64, t_n: f64) -> PenaltyValue {
    let nf = n as f64;
    let r = gamma * b_n * b_n * radius * radius * ln_d1(d) / nf;
    let main = 16.0 * v_f * r.powf(0.25);
    PenaltyValue {
        pen_per_n: main + 8.0 * r.sqrt() + t_n / nf,
        main_term: main,
        valid: true,
    }
}

pub fn pen_nonoise(v_f: f64, n: usize, d: usize, radius: f64, gamma: f64) -> PenaltyValue {
    let r = gamma * radius * radius * ln_d1(d) / n as f64;
    let v43 = v_f.powf(4.0 / 3.0);
    let main = 16.0 * v43 * r.cbrt();
    PenaltyValue {
        pen_per_n: main + 4.0 * (v43 + 1.0) * r.powf(2.0 / 3.0),
        main_term: main,
        valid: true,
    }
}

/// Exponent `1/2 + 1/(2(d+3))` of the moderate-dimension main term.
pub fn moderate_exponent(d: usize) -> f64 {
    0.5 + 1.0 / (2.0 * (d as f64 + 3.0))
}

/// `r = d·γ_n·ln(n/d + 1)/n`.
pub fn moderate_ratio(n: usize, d: usize, gamma: f64) -> f64 {
    let (nf, df) = (n as f64, d as f64);
    df * gamma * (nf / df + 1.0).ln() / nf
}

/// Moderate-dimension penalty with its validity flag; never errors.
pub fn pen_moderate_unchecked(v_f: f64, n: usize, d: usize, radius: f64, gamma: f64, t_n: f64) -> PenaltyValue {
    let (nf, df) = (n as f64, d as f64);
    let r = moderate_ratio(n, d, gamma);
    let e = moderate_exponent(d);
    let main = 60.0 * v_f * radius * r.powf(e);
    let pen = main + r.powf(e) / (radius * radius) + r.powf(0.5 + 3.0 / (2.0 * (df + 3.0))) + r + t_n / nf;
    let eps1 = 3.0 * radius * r.powf(1.0 / (2.0 * (df + 3.0)));
    let eps2 = 3.0 * (df / nf).sqrt() * eps1;
    let valid = eps1 <= radius && eps2 <= radius && df <= nf / (E - 1.0);
    PenaltyValue {
        pen_per_n: pen,
        main_term: main,
        valid,
    }
}

pub fn pen_moderate(v_f: f64, n: usize, d: usize, radius: f64, gamma: f64, t_n: f64) -> Result<PenaltyValue> {
    let p = pen_moderate_unchecked(v_f, n, d, radius, gamma, t_n);
    if p.valid {
        Ok(p)
    } else {
        Err(Error::RegimeInvalid(format!(
            "moderate-dimension guard fails at n={n}, d={d}"
        )))
    }
}

pub fn pen_mixed(v_f: f64, n: usize, d: usize, radius: f64, gamma: f64, sigma: f64, c: f64) -> PenaltyValue {
    let q = v_f.powi(4) * radius * radius * gamma * ln_d1(d) / n as f64;
    let main = c * q.cbrt();
    PenaltyValue {
        pen_per_n: main + c * sigma.sqrt() * q.powf(0.25),
        main_term: main,
        valid: true,
    }
}

/// Returns `(m₀, ε₂)`; `m₀` is clamped to at least 1.
pub fn tuning_highdim(n: usize, d: usize, radius: f64, gamma: f64, b_n: f64, v: f64) -> (u64, f64) {
    let nf = n as f64;
    let base = gamma * radius * radius * ln_d1(d);
    let eps2 = (base / (nf * b_n * b_n)).powf(0.25);
    let m0 = (v * v * nf * eps2 * eps2 / (2.0 * base)).sqrt().ceil();
    let m0 = if m0.is_finite() && m0 >= 1.0 { m0 as u64 } else { 1 };
    (m0, eps2)
}

/// Penalty per sample for the configured regime at variation `v_f`.
pub fn regime_penalty(cfg: &PenaltyConfig, v_f: f64, n: usize, d: usize, t_n: f64) -> Result<PenaltyValue> {
    let (gamma, _) = gamma_tau(cfg)?;
    let lam = cfg.radius;
    Ok(match cfg.regime {
        Regime::HighDimNoise => pen_highdim(v_f, n, d, lam, gamma, cfg.b_n, t_n),
        Regime::NoNoise => pen_nonoise(v_f, n, d, lam, gamma),
        Regime::Moderate => pen_moderate_unchecked(v_f, n, d, lam, gamma, t_n),
        Regime::Mixed => pen_mixed(v_f, n, d, lam, gamma, cfg.sigma2.sqrt(), cfg.mixed_c),
    })
}

/// The `v`-dependent part of [`regime_penalty`], times `scale`, as a convex
/// penalty for the greedy line search.
pub fn greedy_penalty(cfg: &PenaltyConfig, n: usize, d: usize, scale: f64) -> Result<PenaltyFn> {
    let (gamma, _) = gamma_tau(cfg)?;
    let lam = cfg.radius;
    let nf = n as f64;
    Ok(match cfg.regime {
        Regime::HighDimNoise => {
            let r = gamma * cfg.b_n * cfg.b_n * lam * lam * ln_d1(d) / nf;
            PenaltyFn::Linear {
                lambda: scale * 16.0 * r.powf(0.25),
            }
        }
        Regime::NoNoise => {
            let r = gamma * lam * lam * ln_d1(d) / nf;
            PenaltyFn::Power {
                lambda: scale * (16.0 * r.cbrt() + 4.0 * r.powf(2.0 / 3.0)),
                exponent: 4.0 / 3.0,
            }
        }
        Regime::Moderate => {
            let r = moderate_ratio(n, d, gamma);
            PenaltyFn::Linear {
                lambda: scale * 60.0 * lam * r.powf(moderate_exponent(d)),
            }
        }
        Regime::Mixed => {
            let a = lam * lam * gamma * ln_d1(d) / nf;
            PenaltyFn::PowerSum(vec![
                (scale * cfg.mixed_c * a.cbrt(), 4.0 / 3.0),
                (scale * cfg.mixed_c * cfg.sigma2.sqrt().sqrt() * a.powf(0.25), 1.0),
            ])
        }
    })
}
