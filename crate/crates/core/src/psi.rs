//! Weight families ψ(t), weighted products g_δ(t) = ψ(t)·t^δ, the
//! α-characteristic α(ψ;t) = ψ(t)/(t·|ψ'(t+0)|), and finite-range sequence
//! classifiers (generalized monotonicity and almost-increase diagnostics).
//!
//! Membership in the asymptotic sequence classes is undecidable from finite
//! data, so every classifier reports constants measured on an explicit range
//! together with stability-under-doubling diagnostics.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::math;

/// Errors from family construction, parsing and the classifiers.
#[derive(Debug, Clone, PartialEq)]
pub enum PsiError {
    /// The right derivative vanishes at the requested point, so the
    /// α-characteristic is undefined (callers may treat it as +∞).
    DerivativeZero { t: f64 },
    /// A classifier was handed an empty sequence.
    EmptySequence,
    /// A constructor argument is outside its admissible range.
    InvalidParameter(String),
    /// A descriptor string could not be parsed.
    Parse(String),
}

impl fmt::Display for PsiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiError::DerivativeZero { t } => {
                write!(f, "right derivative vanishes at t = {t}; alpha undefined")
            }
            PsiError::EmptySequence => write!(f, "empty sequence"),
            PsiError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            PsiError::Parse(msg) => write!(f, "descriptor parse error: {msg}"),
        }
    }
}

impl core::error::Error for PsiError {}

/// A positive, decreasing-to-zero weight family ψ(t) defined for t ≥ 1.
///
/// `Power` is ψ(t) = t^{-r}. `PowerLog` is ψ(t) = t^{-1/p}·ln^{-γ}(t+K),
/// the family whose α-characteristic grows without bound. `Tabulated`
/// interpolates explicit samples at integer arguments linearly and continues
/// past the table with a power-law tail.
#[derive(Debug, Clone, PartialEq)]
pub enum PsiFamily {
    Power { r: f64 },
    PowerLog { p: f64, gamma: f64, k: f64 },
    Tabulated { values: Vec<f64>, tail_exponent: f64 },
}

impl PsiFamily {
    pub fn power(r: f64) -> Result<Self, PsiError> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(PsiError::InvalidParameter(format!(
                "power family needs r > 0, got {r}"
            )));
        }
        Ok(PsiFamily::Power { r })
    }

    pub fn power_log(p: f64, gamma: f64, k: f64) -> Result<Self, PsiError> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(PsiError::InvalidParameter(format!(
                "powerlog family needs p in [1, inf), got {p}"
            )));
        }
        if !(gamma > 0.0) || !(k > 0.0) || !gamma.is_finite() || !k.is_finite() {
            return Err(PsiError::InvalidParameter(format!(
                "powerlog family needs gamma > 0 and K > 0, got gamma={gamma}, K={k}"
            )));
        }
        Ok(PsiFamily::PowerLog { p, gamma, k })
    }

    pub fn tabulated(values: Vec<f64>, tail_exponent: f64) -> Result<Self, PsiError> {
        if values.is_empty() {
            return Err(PsiError::EmptySequence);
        }
        if values.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(PsiError::InvalidParameter(
                "tabulated values must be finite and positive".into(),
            ));
        }
        if !(tail_exponent > 0.0) || !tail_exponent.is_finite() {
            return Err(PsiError::InvalidParameter(format!(
                "tabulated tail exponent must be positive, got {tail_exponent}"
            )));
        }
        Ok(PsiFamily::Tabulated {
            values,
            tail_exponent,
        })
    }

    /// Parses `"power:r=1.5"` or `"powerlog:p=2,gamma=1,K=3"`.
    ///
    /// The `table:@path` form needs file access and is resolved by the CLI
    /// layer, which reads the file and calls [`PsiFamily::parse_table_text`].
    pub fn parse(descriptor: &str) -> Result<Self, PsiError> {
        let (kind, rest) = descriptor
            .split_once(':')
            .ok_or_else(|| PsiError::Parse(format!("missing ':' in {descriptor:?}")))?;
        match kind.trim() {
            "power" => {
                let mut r = None;
                for (key, value) in parse_kv(rest)? {
                    match key {
                        "r" => r = Some(value),
                        other => {
                            return Err(PsiError::Parse(format!("unknown power key {other:?}")))
                        }
                    }
                }
                Self::power(r.ok_or_else(|| PsiError::Parse("power needs r=".into()))?)
            }
            "powerlog" => {
                let (mut p, mut gamma, mut k) = (None, None, None);
                for (key, value) in parse_kv(rest)? {
                    match key {
                        "p" => p = Some(value),
                        "gamma" => gamma = Some(value),
                        "K" => k = Some(value),
                        other => {
                            return Err(PsiError::Parse(format!("unknown powerlog key {other:?}")))
                        }
                    }
                }
                Self::power_log(
                    p.ok_or_else(|| PsiError::Parse("powerlog needs p=".into()))?,
                    gamma.ok_or_else(|| PsiError::Parse("powerlog needs gamma=".into()))?,
                    k.ok_or_else(|| PsiError::Parse("powerlog needs K=".into()))?,
                )
            }
            "table" => Err(PsiError::Parse(
                "table descriptors need file access; resolve @path and use parse_table_text".into(),
            )),
            other => Err(PsiError::Parse(format!("unknown family kind {other:?}"))),
        }
    }

    /// Parses tabulated family text: one positive decimal per line, then a
    /// `tail_exponent=<e>` footer.
    pub fn parse_table_text(text: &str) -> Result<Self, PsiError> {
        let mut values = Vec::new();
        let mut tail = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("tail_exponent=") {
                tail = Some(rest.trim().parse::<f64>().map_err(|_| {
                    PsiError::Parse(format!("bad tail_exponent value {rest:?}"))
                })?);
            } else {
                values.push(
                    line.parse::<f64>()
                        .map_err(|_| PsiError::Parse(format!("bad table value {line:?}")))?,
                );
            }
        }
        let tail = tail.ok_or_else(|| PsiError::Parse("missing tail_exponent= footer".into()))?;
        Self::tabulated(values, tail)
    }

    /// Canonical descriptor string (round-trips through [`PsiFamily::parse`]
    /// for the analytic families).
    pub fn descriptor(&self) -> String {
        match self {
            PsiFamily::Power { r } => format!("power:r={r}"),
            PsiFamily::PowerLog { p, gamma, k } => format!("powerlog:p={p},gamma={gamma},K={k}"),
            PsiFamily::Tabulated {
                values,
                tail_exponent,
            } => format!("table:len={},tail_exponent={}", values.len(), tail_exponent),
        }
    }

    /// ψ(t) for t ≥ 1.
    pub fn eval(&self, t: f64) -> f64 {
        debug_assert!(t >= 1.0);
        match self {
            PsiFamily::Power { r } => math::powf(t, -r),
            PsiFamily::PowerLog { p, gamma, k } => {
                math::powf(t, -1.0 / p) * math::powf(math::ln(t + k), -gamma)
            }
            PsiFamily::Tabulated {
                values,
                tail_exponent,
            } => {
                let m = values.len();
                let last = m as f64;
                if t >= last {
                    values[m - 1] * math::powf(t / last, -tail_exponent)
                } else {
                    let i = math::floor(t) as usize; // 1-based sample index
                    let frac = t - i as f64;
                    let lo = values[i - 1];
                    let hi = values[i];
                    lo + frac * (hi - lo)
                }
            }
        }
    }

    /// Right derivative ψ'(t+0). Closed form for the analytic families;
    /// the forward-difference slope of the active segment for tables.
    pub fn deriv_right(&self, t: f64) -> f64 {
        debug_assert!(t >= 1.0);
        match self {
            PsiFamily::Power { r } => -r * math::powf(t, -r - 1.0),
            PsiFamily::PowerLog { p, gamma, k } => {
                let l = math::ln(t + k);
                let psi = math::powf(t, -1.0 / p) * math::powf(l, -gamma);
                -psi * (1.0 / (p * t) + gamma / ((t + k) * l))
            }
            PsiFamily::Tabulated {
                values,
                tail_exponent,
            } => {
                let m = values.len();
                let last = m as f64;
                if t >= last {
                    -tail_exponent * self.eval(t) / t
                } else {
                    let i = math::floor(t) as usize;
                    values[i] - values[i - 1]
                }
            }
        }
    }
}

fn parse_kv(rest: &str) -> Result<Vec<(&str, f64)>, PsiError> {
    rest.split(',')
        .map(|part| {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| PsiError::Parse(format!("expected key=value, got {part:?}")))?;
            let value = value
                .trim()
                .parse::<f64>()
                .map_err(|_| PsiError::Parse(format!("bad number {value:?} for key {key:?}")))?;
            Ok((key.trim(), value))
        })
        .collect()
}

/// g_δ(t) = ψ(t)·t^δ with its right derivative.
#[derive(Debug, Clone)]
pub struct WeightedProduct {
    pub family: PsiFamily,
    pub delta: f64,
}

impl WeightedProduct {
    pub fn new(family: PsiFamily, delta: f64) -> Self {
        WeightedProduct { family, delta }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.family.eval(t) * math::powf(t, self.delta)
    }

    pub fn deriv_right(&self, t: f64) -> f64 {
        self.family.deriv_right(t) * math::powf(t, self.delta)
            + self.delta * self.family.eval(t) * math::powf(t, self.delta - 1.0)
    }
}

/// α(g_δ; t) = g_δ(t) / (t·|g_δ'(t+0)|).
///
/// Errors with [`PsiError::DerivativeZero`] when the right derivative
/// vanishes; callers that want the limit convention treat that case as +∞.
pub fn alpha_characteristic(w: &WeightedProduct, t: f64) -> Result<f64, PsiError> {
    let g = w.eval(t);
    let gp = w.deriv_right(t);
    if gp == 0.0 {
        return Err(PsiError::DerivativeZero { t });
    }
    let alpha = g / (t * math::abs(gp));
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(PsiError::InvalidParameter(format!(
            "alpha characteristic not finite positive at t = {t}"
        )));
    }
    Ok(alpha)
}

/// Trend of α over the sampled grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaTrend {
    Bounded,
    Growing,
    Decreasing,
}

impl fmt::Display for AlphaTrend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaTrend::Bounded => write!(f, "bounded"),
            AlphaTrend::Growing => write!(f, "growing"),
            AlphaTrend::Decreasing => write!(f, "decreasing"),
        }
    }
}

/// One GA⁺ probe: for the deflation exponent `eps`, the smallest admissible
/// almost-increase constant over the full range and over its first half.
#[derive(Debug, Clone, Copy)]
pub struct GaEntry {
    pub eps: f64,
    pub k_min: f64,
    pub k_min_half: f64,
    /// K stabilized when the range doubled (diagnostic, not a proof).
    pub stable: bool,
}

/// Finite-range classifier evidence for a weighted product.
#[derive(Debug, Clone)]
pub struct ClassifierReport {
    pub alpha_inf: f64,
    pub alpha_sup: f64,
    pub trend: AlphaTrend,
    /// Some grid point had a vanishing right derivative (α treated as +∞).
    pub derivative_zero: bool,
    /// (first grid point, last grid point, sample count) actually used.
    pub grid_span: (f64, f64, usize),
    pub gm_plus_a: Option<f64>,
    pub ga_plus: Vec<GaEntry>,
    pub convex_ok: bool,
}

/// Samples α(g_δ;·) over `grid` and reports inf/sup plus the decade trend:
/// growing when the mean over the last decade exceeds the mean over the
/// first decade by a factor of 2, decreasing for the reverse, bounded
/// otherwise. The GM⁺/GA⁺ slots stay empty here; see [`gm_plus_constant`]
/// and [`ga_plus_report`].
pub fn classify_membership(
    w: &WeightedProduct,
    grid: &[f64],
) -> Result<ClassifierReport, PsiError> {
    if grid.is_empty() {
        return Err(PsiError::EmptySequence);
    }
    if grid[0] < 1.0 {
        return Err(PsiError::InvalidParameter(
            "classification grid must start at t >= 1".into(),
        ));
    }
    let mut alphas = Vec::with_capacity(grid.len());
    let mut derivative_zero = false;
    for &t in grid {
        match alpha_characteristic(w, t) {
            Ok(a) => alphas.push(a),
            Err(PsiError::DerivativeZero { .. }) => {
                derivative_zero = true;
                alphas.push(f64::INFINITY);
            }
            Err(e) => return Err(e),
        }
    }
    let finite = alphas.iter().copied().filter(|a| a.is_finite());
    let alpha_inf = finite.clone().fold(f64::INFINITY, f64::min);
    let alpha_sup = if derivative_zero {
        f64::INFINITY
    } else {
        finite.fold(0.0, f64::max)
    };

    let first_lim = grid[0] * 10.0;
    let last_lim = grid[grid.len() - 1] / 10.0;
    let decade_mean = |pred: &dyn Fn(f64) -> bool| -> f64 {
        let mut acc = 0.0;
        let mut count = 0usize;
        for (t, a) in grid.iter().zip(alphas.iter()) {
            if pred(*t) && a.is_finite() {
                acc += *a;
                count += 1;
            }
        }
        if count == 0 {
            f64::NAN
        } else {
            acc / count as f64
        }
    };
    let head_mean = decade_mean(&|t| t <= first_lim);
    let tail_mean = decade_mean(&|t| t >= last_lim);
    let trend = if !head_mean.is_finite() || !tail_mean.is_finite() {
        AlphaTrend::Bounded
    } else if tail_mean >= 2.0 * head_mean {
        AlphaTrend::Growing
    } else if head_mean >= 2.0 * tail_mean {
        AlphaTrend::Decreasing
    } else {
        AlphaTrend::Bounded
    };

    let convex_ok = validate_family(&w.family, grid).convex_ok;

    Ok(ClassifierReport {
        alpha_inf,
        alpha_sup,
        trend,
        derivative_zero,
        grid_span: (grid[0], grid[grid.len() - 1], grid.len()),
        gm_plus_a: None,
        ga_plus: Vec::new(),
        convex_ok,
    })
}

/// Minimal A with a_{n₁} + Σ_{k=n₁}^{m−1}|a_k − a_{k+1}| ≤ A·a_m over all
/// windows 1 ≤ n₁ ≤ m ≤ N. Equals 1 exactly for non-decreasing sequences.
pub fn gm_plus_constant(a: &[f64]) -> Result<f64, PsiError> {
    if a.is_empty() {
        return Err(PsiError::EmptySequence);
    }
    if a.iter().any(|v| !(*v > 0.0)) {
        return Err(PsiError::InvalidParameter(
            "gm_plus_constant needs a strictly positive sequence".into(),
        ));
    }
    let mut best = 1.0f64;
    for start in 0..a.len() {
        let mut variation = 0.0;
        let mut monotone_up = true;
        for m in start..a.len() {
            if m > start {
                variation += math::abs(a[m - 1] - a[m]);
                monotone_up &= a[m] >= a[m - 1];
            }
            // a_{n1} + telescoping variation collapses to a_m on
            // non-decreasing windows; skip the float round trip there.
            let ratio = if monotone_up {
                1.0
            } else {
                (a[start] + variation) / a[m]
            };
            if ratio > best {
                best = ratio;
            }
        }
    }
    Ok(best)
}

/// For each ε, the smallest K with a_{n₁}·n₁^{-ε} ≤ K·a_{n₂}·n₂^{-ε} for all
/// n₁ ≤ n₂ in range, plus the same constant over the first half of the range.
/// Almost-increase is suggested when K stops moving as the range doubles.
pub fn ga_plus_report(a: &[f64], eps_grid: &[f64]) -> Result<Vec<GaEntry>, PsiError> {
    if a.is_empty() || eps_grid.is_empty() {
        return Err(PsiError::EmptySequence);
    }
    if a.iter().any(|v| !(*v > 0.0)) {
        return Err(PsiError::InvalidParameter(
            "ga_plus_report needs a strictly positive sequence".into(),
        ));
    }
    let k_min_over = |len: usize, eps: f64| -> f64 {
        let mut prefix_max = f64::MIN;
        let mut k_min = 1.0f64;
        for (i, &v) in a[..len].iter().enumerate() {
            let b = v * math::powf((i + 1) as f64, -eps);
            if b > prefix_max {
                prefix_max = b;
            }
            let ratio = prefix_max / b;
            if ratio > k_min {
                k_min = ratio;
            }
        }
        k_min
    };
    Ok(eps_grid
        .iter()
        .map(|&eps| {
            let k_min = k_min_over(a.len(), eps);
            let k_min_half = k_min_over((a.len() / 2).max(1), eps);
            GaEntry {
                eps,
                k_min,
                k_min_half,
                stable: k_min <= k_min_half * 1.01,
            }
        })
        .collect())
}

/// Default deflation exponents for GA⁺ probing: 2⁻⁶, 2⁻⁵, …, 2⁻¹.
pub fn default_ga_eps_grid() -> Vec<f64> {
    (1..=6).rev().map(|j| math::powf(2.0, -(j as f64))).collect()
}

/// Sampled sanity checks for a weight family.
#[derive(Debug, Clone, Copy)]
pub struct FamilyValidity {
    pub positive_ok: bool,
    pub nonincreasing_ok: bool,
    pub convex_ok: bool,
    /// ψ(T) < ψ(1)·10⁻³ was reached at some finite T.
    pub decays_ok: bool,
    pub decay_t: Option<f64>,
}

impl FamilyValidity {
    pub fn all_ok(&self) -> bool {
        self.positive_ok && self.nonincreasing_ok && self.convex_ok && self.decays_ok
    }
}

/// Checks positivity, monotonicity and convexity on `grid` (slope test with
/// tolerance 10⁻¹⁰·ψ(1)) and probes for decay ψ(T) < ψ(1)·10⁻³ by doubling T.
pub fn validate_family(family: &PsiFamily, grid: &[f64]) -> FamilyValidity {
    let psi1 = family.eval(1.0);
    let slack = 1e-10 * math::abs(psi1);
    let values: Vec<f64> = grid.iter().map(|&t| family.eval(t)).collect();

    let positive_ok = values.iter().all(|v| *v > 0.0);
    let nonincreasing_ok = values.windows(2).all(|w| w[1] <= w[0] + slack);
    let mut convex_ok = true;
    for i in 2..grid.len() {
        let s1 = (values[i - 1] - values[i - 2]) / (grid[i - 1] - grid[i - 2]);
        let s2 = (values[i] - values[i - 1]) / (grid[i] - grid[i - 1]);
        if s2 < s1 - slack {
            convex_ok = false;
            break;
        }
    }

    let target = psi1 * 1e-3;
    let mut t = 2.0;
    let mut decay_t = None;
    while t <= 1e18 {
        if family.eval(t) < target {
            decay_t = Some(t);
            break;
        }
        t *= 2.0;
    }

    FamilyValidity {
        positive_ok,
        nonincreasing_ok,
        convex_ok,
        decays_ok: decay_t.is_some(),
        decay_t,
    }
}

/// Geometric grid from `start` to `stop` with `points` samples (inclusive).
pub fn log_grid(start: f64, stop: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2 && start > 0.0 && stop > start);
    let ratio = math::powf(stop / start, 1.0 / (points - 1) as f64);
    let mut grid = Vec::with_capacity(points);
    let mut t = start;
    for _ in 0..points - 1 {
        grid.push(t);
        t *= ratio;
    }
    grid.push(stop);
    grid
}
