//! Trigonometric polynomials, the linear summation filters (Fourier partial
//! sum, Fejér, Zygmund Z^s) acting on their coefficients, and L_q norms over
//! a period computed by composite quadrature with doubling checks.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::math;

/// A real trigonometric polynomial a₀/2 + Σ_{k=1}^m (a_k cos kt + b_k sin kt).
///
/// The constant term is stored as `a0` (twice the mean), matching the usual
/// series display.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    pub a0: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigPolynomial {
    pub fn new(a0: f64, mut cos: Vec<f64>, mut sin: Vec<f64>) -> Self {
        let m = cos.len().max(sin.len());
        cos.resize(m, 0.0);
        sin.resize(m, 0.0);
        TrigPolynomial { a0, cos, sin }
    }

    pub fn zero() -> Self {
        TrigPolynomial::new(0.0, Vec::new(), Vec::new())
    }

    /// Largest harmonic index carried (0 for a constant).
    pub fn degree(&self) -> usize {
        self.cos.len()
    }

    /// a_k for k ≥ 1 (zero past the stored degree).
    pub fn cos_coeff(&self, k: usize) -> f64 {
        if k >= 1 && k <= self.cos.len() {
            self.cos[k - 1]
        } else {
            0.0
        }
    }

    /// b_k for k ≥ 1.
    pub fn sin_coeff(&self, k: usize) -> f64 {
        if k >= 1 && k <= self.sin.len() {
            self.sin[k - 1]
        } else {
            0.0
        }
    }

    pub fn coeffs(&self) -> (&[f64], &[f64]) {
        (&self.cos, &self.sin)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let (ct, st) = (math::cos(t), math::sin(t));
        let mut c = ct;
        let mut s = st;
        let mut acc = 0.5 * self.a0;
        for k in 0..self.cos.len() {
            acc += self.cos[k] * c + self.sin[k] * s;
            let next_c = c * ct - s * st;
            s = s * ct + c * st;
            c = next_c;
        }
        acc
    }

    /// Coefficient-wise a·p + b·q.
    pub fn linear_combination(a: f64, p: &TrigPolynomial, b: f64, q: &TrigPolynomial) -> Self {
        let m = p.degree().max(q.degree());
        let mut cos = vec![0.0; m];
        let mut sin = vec![0.0; m];
        for k in 1..=m {
            cos[k - 1] = a * p.cos_coeff(k) + b * q.cos_coeff(k);
            sin[k - 1] = a * p.sin_coeff(k) + b * q.sin_coeff(k);
        }
        TrigPolynomial::new(a * p.a0 + b * q.a0, cos, sin)
    }
}

/// The linear summation methods: identity truncation (Fourier), Fejér means,
/// and the Zygmund means Z^s with multipliers 1 − (k/n)^s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SummationFilter {
    Fourier { n: u32 },
    Fejer { n: u32 },
    Zygmund { s: f64, n: u32 },
}

impl SummationFilter {
    pub fn order(&self) -> u32 {
        match self {
            SummationFilter::Fourier { n }
            | SummationFilter::Fejer { n }
            | SummationFilter::Zygmund { n, .. } => *n,
        }
    }

    /// λ_{k,n}: 1 at k = 0, the method multiplier for 1 ≤ k ≤ n−1, 0 from n.
    pub fn multiplier(&self, k: u32) -> f64 {
        let n = self.order();
        debug_assert!(n >= 1);
        if k == 0 {
            return 1.0;
        }
        if k >= n {
            return 0.0;
        }
        let ratio = k as f64 / n as f64;
        match self {
            SummationFilter::Fourier { .. } => 1.0,
            SummationFilter::Fejer { .. } => 1.0 - ratio,
            // s = 1 is the Fejér expression; taking the same branch keeps the
            // two methods bit-identical there.
            SummationFilter::Zygmund { s, .. } => {
                if *s == 1.0 {
                    1.0 - ratio
                } else {
                    1.0 - math::powf(ratio, *s)
                }
            }
        }
    }

    /// Applies the multipliers coefficient-wise; the output degree is at most
    /// min(input degree, n−1) and a₀ passes through unchanged.
    pub fn apply(&self, p: &TrigPolynomial) -> TrigPolynomial {
        let n = self.order() as usize;
        let m = p.degree().min(n.saturating_sub(1));
        let mut cos = Vec::with_capacity(m);
        let mut sin = Vec::with_capacity(m);
        for k in 1..=m {
            let lambda = self.multiplier(k as u32);
            cos.push(lambda * p.cos_coeff(k));
            sin.push(lambda * p.sin_coeff(k));
        }
        TrigPolynomial::new(p.a0, cos, sin)
    }
}

/// Quadrature/refinement controls for [`norm_q`].
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    /// Grid points per unit of polynomial degree (≥ 16).
    pub oversample: usize,
    /// Doubling-stability tolerance, relative.
    pub rel_tol: f64,
    /// Extra grid doublings to attempt before giving up.
    pub max_doublings: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            oversample: 16,
            rel_tol: 1e-9,
            max_doublings: 3,
        }
    }
}

/// A norm value with its stability-based error estimate.
#[derive(Debug, Clone, Copy)]
pub struct NormEstimate {
    pub value: f64,
    pub err: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NormError {
    /// Doubling the quadrature grid kept moving the value by more than the
    /// requested tolerance.
    QuadratureNotConverged { last_change: f64 },
    /// q < 1 requested.
    InvalidExponent(f64),
}

impl fmt::Display for NormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormError::QuadratureNotConverged { last_change } => {
                write!(f, "quadrature did not converge (last change {last_change:e})")
            }
            NormError::InvalidExponent(q) => write!(f, "norm exponent must satisfy q >= 1, got {q}"),
        }
    }
}

impl core::error::Error for NormError {}

/// Samples p on the uniform grid t_i = offset + 2πi/g.
pub(crate) fn sample_uniform(p: &TrigPolynomial, g: usize, offset: f64) -> Vec<f64> {
    let step = 2.0 * PI / g as f64;
    (0..g).map(|i| p.eval(offset + i as f64 * step)).collect()
}

/// ‖p‖_q over [0, 2π]. For q < ∞ this is composite (trapezoid) quadrature on
/// a uniform grid of at least `oversample`× the degree, accepted only when a
/// grid doubling moves the value by less than `rel_tol`; for q = ∞ it is a
/// grid maximum sharpened by golden-section refinement around the top peaks.
pub fn norm_q(p: &TrigPolynomial, q: f64, cfg: &QuadConfig) -> Result<NormEstimate, NormError> {
    norm_q_with_offset(p, q, cfg, 0.0)
}

/// [`norm_q`] with the quadrature grid shifted by `offset` (the norm of a
/// periodic function does not depend on the grid phase; tests use this).
pub fn norm_q_with_offset(
    p: &TrigPolynomial,
    q: f64,
    cfg: &QuadConfig,
    offset: f64,
) -> Result<NormEstimate, NormError> {
    if q == f64::INFINITY {
        return Ok(sup_norm(p, cfg, offset));
    }
    if !(q >= 1.0) {
        return Err(NormError::InvalidExponent(q));
    }
    let oversample = cfg.oversample.max(16);
    let base: usize = (oversample * p.degree().max(1)).next_power_of_two();

    let norm_on = |g: usize| -> f64 {
        let step = 2.0 * PI / g as f64;
        let mut acc = 0.0;
        for i in 0..g {
            let v = math::abs(p.eval(offset + i as f64 * step));
            acc += math::powf(v, q);
        }
        math::powf(acc * step, 1.0 / q)
    };

    let mut coarse = norm_on(base / 2);
    let mut fine = norm_on(base);
    let mut change = math::abs(fine - coarse);
    let mut g = base;
    let mut doublings = 0;
    while change > cfg.rel_tol * fine.max(f64::MIN_POSITIVE) {
        if doublings >= cfg.max_doublings {
            return Err(NormError::QuadratureNotConverged { last_change: change });
        }
        g *= 2;
        doublings += 1;
        coarse = fine;
        fine = norm_on(g);
        change = math::abs(fine - coarse);
    }
    Ok(NormEstimate {
        value: fine,
        err: change + 1e-15 * fine,
    })
}

fn sup_norm(p: &TrigPolynomial, cfg: &QuadConfig, offset: f64) -> NormEstimate {
    let g = (cfg.oversample.max(16) * p.degree().max(1))
        .next_power_of_two()
        .max(1024);
    let step = 2.0 * PI / g as f64;
    let values: Vec<f64> = (0..g)
        .map(|i| math::abs(p.eval(offset + i as f64 * step)))
        .collect();

    let mut peaks: Vec<usize> = (0..g)
        .filter(|&i| {
            let prev = values[(i + g - 1) % g];
            let next = values[(i + 1) % g];
            values[i] >= prev && values[i] >= next
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap());
    peaks.truncate(3);

    let grid_max = values.iter().copied().fold(0.0, f64::max);
    let mut best = grid_max;
    for &i in &peaks {
        let lo = offset + (i as f64 - 1.0) * step;
        let hi = offset + (i as f64 + 1.0) * step;
        let refined = golden_max(&|t| math::abs(p.eval(t)), lo, hi, 80);
        if refined > best {
            best = refined;
        }
    }
    NormEstimate {
        value: best,
        err: (best - grid_max) + 1e-14 * best,
    }
}

/// Golden-section search for the maximum of f on [lo, hi].
pub(crate) fn golden_max(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, iters: u32) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    f1.max(f2).max(f(0.5 * (a + b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn harmonic(k: usize, a: f64, b: f64) -> TrigPolynomial {
        let mut cos = vec![0.0; k];
        let mut sin = vec![0.0; k];
        cos[k - 1] = a;
        sin[k - 1] = b;
        TrigPolynomial::new(0.0, cos, sin)
    }

    #[test]
    fn multipliers_match_the_formulas() {
        let z = SummationFilter::Zygmund { s: 2.0, n: 4 };
        assert_eq!(z.multiplier(2), 0.75);
        assert_eq!(z.multiplier(0), 1.0);
        assert_eq!(z.multiplier(4), 0.0);
        assert_eq!(z.multiplier(9), 0.0);

        let z1 = SummationFilter::Zygmund { s: 1.0, n: 10 };
        let f = SummationFilter::Fejer { n: 10 };
        assert_eq!(z1.multiplier(7), f.multiplier(7));
        assert_relative_eq!(f.multiplier(7), 0.3, max_relative = 1e-15);

        let four = SummationFilter::Fourier { n: 6 };
        for k in 1..6 {
            assert_eq!(four.multiplier(k), 1.0);
        }
        assert_eq!(four.multiplier(6), 0.0);
    }

    #[test]
    fn apply_scales_and_truncates() {
        let p = harmonic(1, 1.0, 0.0);
        let out = SummationFilter::Fejer { n: 2 }.apply(&p);
        assert_eq!(out.cos_coeff(1), 0.5);

        let p = TrigPolynomial::new(3.0, vec![1.0, 2.0, 3.0, 4.0], vec![0.5; 4]);
        let out = SummationFilter::Fourier { n: 3 }.apply(&p);
        assert_eq!(out.degree(), 2);
        assert_eq!(out.a0, 3.0);
        assert_eq!(out.cos_coeff(1), 1.0);
        assert_eq!(out.cos_coeff(2), 2.0);
        assert_eq!(out.cos_coeff(3), 0.0);
    }

    #[test]
    fn zygmund_s1_equals_fejer_exactly() {
        let p = TrigPolynomial::new(
            0.3,
            (1..=300).map(|k| 1.0 / k as f64).collect(),
            (1..=300).map(|k| (k as f64).sin()).collect(),
        );
        for n in [1u32, 2, 5, 64, 256] {
            let z = SummationFilter::Zygmund { s: 1.0, n };
            let f = SummationFilter::Fejer { n };
            assert_eq!(z.apply(&p), f.apply(&p));
        }
    }

    #[test]
    fn eval_matches_conventions() {
        let c = TrigPolynomial::new(2.0, vec![], vec![]);
        assert_eq!(c.eval(0.7), 1.0);
        let p = harmonic(1, 1.0, 0.0);
        assert_relative_eq!(p.eval(0.0), 1.0);
        let p = harmonic(1, 1.0, 1.0);
        assert_relative_eq!(p.eval(core::f64::consts::FRAC_PI_2), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn norms_of_single_harmonics() {
        let cfg = QuadConfig::default();
        let p = harmonic(1, 1.0, 0.0);
        let n2 = norm_q(&p, 2.0, &cfg).unwrap();
        assert_relative_eq!(n2.value, core::f64::consts::PI.sqrt(), max_relative = 1e-12);
        let ninf = norm_q(&p, f64::INFINITY, &cfg).unwrap();
        assert_relative_eq!(ninf.value, 1.0, max_relative = 1e-12);
        let p = harmonic(1, 1.0, 1.0);
        let ninf = norm_q(&p, f64::INFINITY, &cfg).unwrap();
        assert_relative_eq!(ninf.value, 2.0f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn parseval_identity_holds_through_quadrature() {
        let cfg = QuadConfig::default();
        for degree in [3usize, 17, 128] {
            let p = TrigPolynomial::new(
                0.4,
                (1..=degree).map(|k| (k as f64 * 0.77).sin() / k as f64).collect(),
                (1..=degree).map(|k| (k as f64 * 1.3).cos() / (k * k) as f64).collect(),
            );
            let (cs, ss) = p.coeffs();
            let parseval = (core::f64::consts::PI
                * (0.5 * p.a0 * p.a0
                    + cs.iter().zip(ss).map(|(a, b)| a * a + b * b).sum::<f64>()))
            .sqrt();
            let n2 = norm_q(&p, 2.0, &cfg).unwrap();
            assert_relative_eq!(n2.value, parseval, max_relative = 1e-10);
        }
    }

    #[test]
    fn norm_is_monotone_in_q_after_measure_normalization() {
        let cfg = QuadConfig::default();
        let p = TrigPolynomial::new(0.3, vec![1.0, 0.2], vec![0.0, 0.7]);
        let two_pi = 2.0 * core::f64::consts::PI;
        let mut prev = 0.0;
        for q in [1.0, 1.5, 2.0, 3.0, 6.0] {
            let n = norm_q(&p, q, &cfg).unwrap().value / two_pi.powf(1.0 / q);
            assert!(n >= prev - 1e-9, "q={q}: {n} < {prev}");
            prev = n;
        }
        let ninf = norm_q(&p, f64::INFINITY, &cfg).unwrap().value;
        assert!(ninf >= prev - 1e-9);
    }

    #[test]
    fn norm_is_invariant_under_grid_phase() {
        let cfg = QuadConfig::default();
        let p = TrigPolynomial::new(0.0, vec![0.3, 0.0, 0.5], vec![0.1, 0.0, 0.0]);
        let a = norm_q_with_offset(&p, 2.0, &cfg, 0.0).unwrap();
        let b = norm_q_with_offset(&p, 2.0, &cfg, 0.31).unwrap();
        assert_relative_eq!(a.value, b.value, max_relative = 1e-12);
    }
}
