//! Certified tail summation: Σ_{k≥n} h(k) for the decreasing summands used
//! throughout the crate, evaluated as a direct partial sum plus an integral
//! completion. The completion brackets the remainder between ∫_{K+1}^∞ h and
//! h(K+1) + ∫_{K+1}^∞ h, so the returned error bar is a genuine enclosure
//! half-width, not a heuristic.

use core::fmt;

use crate::math;
use crate::psi::PsiFamily;

/// A tail sum with its certified absolute error and the direct cutoff used.
#[derive(Debug, Clone, Copy)]
pub struct TailSum {
    pub value: f64,
    /// Half-width of the certified enclosure around `value`.
    pub err: f64,
    /// Last index included in the direct partial sum.
    pub cutoff: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum TailError {
    Divergent,
}

impl fmt::Display for TailError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailError::Divergent => write!(f, "series tail diverges"),
        }
    }
}

/// Which summand the tail engine is driving.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum SummandKind {
    /// h(k) = ψ(k)
    L1,
    /// h(k) = ψ(k)^{p'} · k^{p'-2}, 1 < p' < ∞
    DualNorm { p_prime: f64 },
}

/// Work budget: direct summation runs to max(floor, n·factor), capped.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TailBudget {
    pub direct_floor: u64,
    pub per_start_factor: u64,
    pub hard_cap: u64,
}

impl TailBudget {
    /// Full-accuracy budget used by the order-bound operations.
    pub const STANDARD: TailBudget = TailBudget {
        direct_floor: 1_000_000,
        per_start_factor: 1024,
        hard_cap: 10_000_000,
    };
    /// Cheap budget for truncation planning, where only a few digits matter.
    pub const PLANNING: TailBudget = TailBudget {
        direct_floor: 4096,
        per_start_factor: 4,
        hard_cap: 10_000_000,
    };
}

pub(crate) fn summand(family: &PsiFamily, kind: SummandKind, k: f64) -> f64 {
    match kind {
        SummandKind::L1 => family.eval(k),
        SummandKind::DualNorm { p_prime } => {
            math::powf(family.eval(k), p_prime) * math::powf(k, p_prime - 2.0)
        }
    }
}

/// Canonical analytic tail shape A·t^{-c}·ln^{-g}(t+k0), valid for all
/// t ≥ `valid_from`.
struct TailShape {
    scale: f64,
    c: f64,
    g: f64,
    k0: f64,
    valid_from: f64,
}

fn tail_shape(family: &PsiFamily, kind: SummandKind) -> TailShape {
    let (base_c, base_g, base_k0, base_scale, valid_from) = match family {
        PsiFamily::Power { r } => (*r, 0.0, 0.0, 1.0, 1.0),
        PsiFamily::PowerLog { p, gamma, k } => (1.0 / p, *gamma, *k, 1.0, 1.0),
        PsiFamily::Tabulated {
            values,
            tail_exponent,
        } => {
            let m = values.len() as f64;
            (
                *tail_exponent,
                0.0,
                0.0,
                values[values.len() - 1] * math::powf(m, *tail_exponent),
                m,
            )
        }
    };
    match kind {
        SummandKind::L1 => TailShape {
            scale: base_scale,
            c: base_c,
            g: base_g,
            k0: base_k0,
            valid_from,
        },
        SummandKind::DualNorm { p_prime } => TailShape {
            scale: math::powf(base_scale, p_prime),
            c: base_c * p_prime - p_prime + 2.0,
            g: base_g * p_prime,
            k0: base_k0,
            valid_from,
        },
    }
}

/// Analytic convergence test for Σ h(k).
pub(crate) fn converges(family: &PsiFamily, kind: SummandKind) -> bool {
    let shape = tail_shape(family, kind);
    if shape.c < 1.0 - 1e-12 {
        return false;
    }
    if (shape.c - 1.0).abs() <= 1e-12 {
        return shape.g > 1.0 + 1e-12;
    }
    true
}

/// Σ_{k=from}^{∞} h(k) with certified enclosure. The direct part runs to
/// K = max(floor, from·factor) (capped); the remainder is bracketed by the
/// integral test and, if the requested relative tolerance is not yet met,
/// K doubles until it is or the cap is reached.
pub(crate) fn tail_sum(
    family: &PsiFamily,
    kind: SummandKind,
    from: u64,
    rel_tol: f64,
    budget: &TailBudget,
) -> Result<TailSum, TailError> {
    assert!(from >= 1);
    if !converges(family, kind) {
        return Err(TailError::Divergent);
    }
    let shape = tail_shape(family, kind);
    let mut cutoff = budget
        .direct_floor
        .max(from.saturating_mul(budget.per_start_factor))
        .min(budget.hard_cap)
        .max(from)
        .max(shape.valid_from as u64 + 1);

    let mut direct = 0.0f64;
    let mut summed_to = from - 1;
    loop {
        for k in summed_to + 1..=cutoff {
            direct += summand(family, kind, k as f64);
        }
        summed_to = cutoff;

        let (integral, integral_err) = tail_integral(&shape, (cutoff + 1) as f64);
        let first_dropped = summand(family, kind, (cutoff + 1) as f64);
        let value = direct + integral + 0.5 * first_dropped;
        let err = 0.5 * first_dropped + integral_err + 1e-15 * math::abs(value);

        if err <= rel_tol * math::abs(value) || cutoff >= budget.hard_cap {
            return Ok(TailSum { value, err, cutoff });
        }
        cutoff = (cutoff * 2).min(budget.hard_cap);
    }
}

/// ∫_a^∞ A·t^{-c}·ln^{-g}(t+k0) dt with an error estimate. Callers have
/// already checked convergence.
fn tail_integral(shape: &TailShape, a: f64) -> (f64, f64) {
    debug_assert!(a >= shape.valid_from);
    if (shape.c - 1.0).abs() <= 1e-12 {
        critical_integral(shape, a)
    } else if shape.g == 0.0 {
        let value = shape.scale * math::powf(a, 1.0 - shape.c) / (shape.c - 1.0);
        (value, 1e-14 * value)
    } else {
        segmented_integral(shape, a)
    }
}

/// c = 1 case. Substituting w = ln(t+k0) gives
/// ∫ w^{-g} dw + ∫ k0·w^{-g}/(e^w - k0) dw; the first term is closed form,
/// the second decays like e^{-w} and is integrated numerically.
fn critical_integral(shape: &TailShape, a: f64) -> (f64, f64) {
    let g = shape.g;
    let w_lo = math::ln(a + shape.k0);
    let main = math::powf(w_lo, 1.0 - g) / (g - 1.0);
    if shape.k0 == 0.0 {
        return (shape.scale * main, 1e-14 * shape.scale * main);
    }
    let w_hi = w_lo + 60.0;
    let f = |w: f64| shape.k0 * math::powf(w, -g) / (math::exp(w) - shape.k0);
    let coarse = composite_simpson(&f, w_lo, w_hi, 512);
    let fine = composite_simpson(&f, w_lo, w_hi, 1024);
    let quad_err = math::abs(fine - coarse) / 15.0;
    // Remainder past w_hi is below k0·w_lo^{-g}·e^{-60}/a.
    let rem = shape.k0 * math::powf(w_lo, -g) * math::exp(-60.0) / a;
    let value = shape.scale * (main + fine);
    (value, shape.scale * (quad_err + rem) + 1e-14 * value)
}

/// c > 1 with a log factor: Gauss quadrature over geometric octaves until
/// the analytically bounded remainder is negligible.
fn segmented_integral(shape: &TailShape, a: f64) -> (f64, f64) {
    let f = |t: f64| math::powf(t, -shape.c) * math::powf(math::ln(t + shape.k0), -shape.g);
    let mut acc = 0.0f64;
    let mut err = 0.0f64;
    let mut lo = a;
    for _ in 0..1100 {
        let hi = lo * 2.0;
        let whole = gauss16(&f, lo, hi);
        let halves = gauss16(&f, lo, 0.5 * (lo + hi)) + gauss16(&f, 0.5 * (lo + hi), hi);
        acc += halves;
        err += math::abs(whole - halves);
        lo = hi;
        // ln^{-g}(t+k0} only shrinks past lo, so the remainder is below the
        // frozen-log closed form.
        let rem_bound = math::powf(math::ln(lo + shape.k0), -shape.g)
            * math::powf(lo, 1.0 - shape.c)
            / (shape.c - 1.0);
        if rem_bound <= 1e-13 * acc {
            err += rem_bound;
            break;
        }
        if lo > 1e300 {
            err += rem_bound;
            break;
        }
    }
    (shape.scale * acc, shape.scale * err + 1e-15 * shape.scale * acc)
}

fn composite_simpson(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    let h = (hi - lo) / panels as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + i as f64 * h);
    }
    acc * h / 3.0
}

const GAUSS16: [(f64, f64); 8] = [
    (0.0950125098376374, 0.1894506104550685),
    (0.2816035507792589, 0.1826034150449236),
    (0.4580167776572274, 0.1691565193950025),
    (0.6178762444026438, 0.1495959888165767),
    (0.7554044083550030, 0.1246289712555339),
    (0.8656312023878318, 0.0951585116824928),
    (0.9445750230732326, 0.0622535239386479),
    (0.9894009349916499, 0.0271524594117541),
];

fn gauss16(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut acc = 0.0;
    for (x, w) in GAUSS16 {
        acc += w * (f(mid - half * x) + f(mid + half * x));
    }
    acc * half
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const PI: f64 = core::f64::consts::PI;

    #[test]
    fn l1_tail_of_inverse_squares_matches_zeta() {
        let fam = PsiFamily::power(2.0).unwrap();
        let t = tail_sum(&fam, SummandKind::L1, 1, 1e-9, &TailBudget::STANDARD).unwrap();
        assert_relative_eq!(t.value, PI * PI / 6.0, max_relative = 1e-9);
        assert!(t.err <= 1e-9 * t.value);
    }

    #[test]
    fn dual_tail_matches_classical_value() {
        // psi = k^{-1}, p' = 2: sum_{k>=2} k^{-2} = pi^2/6 - 1.
        let fam = PsiFamily::power(1.0).unwrap();
        let t = tail_sum(
            &fam,
            SummandKind::DualNorm { p_prime: 2.0 },
            2,
            1e-9,
            &TailBudget::STANDARD,
        )
        .unwrap();
        assert_relative_eq!(t.value, PI * PI / 6.0 - 1.0, max_relative = 1e-9);
    }

    #[test]
    fn divergent_cases_error_out() {
        // Harmonic: psi = k^{-1/2}, p' = 2 gives sum k^{-1}.
        let fam = PsiFamily::power(0.5).unwrap();
        assert_eq!(
            tail_sum(
                &fam,
                SummandKind::DualNorm { p_prime: 2.0 },
                1,
                1e-6,
                &TailBudget::STANDARD
            )
            .unwrap_err(),
            TailError::Divergent
        );
        let fam = PsiFamily::power(1.0).unwrap();
        assert_eq!(
            tail_sum(&fam, SummandKind::L1, 1, 1e-6, &TailBudget::STANDARD).unwrap_err(),
            TailError::Divergent
        );
        // Critical log case with too small an exponent.
        let fam = PsiFamily::power_log(1.0, 1.0, 3.0).unwrap();
        assert!(!converges(&fam, SummandKind::L1));
        // PowerLog with p > 1 has a divergent plain tail but a convergent
        // dual tail when gamma > 1/p'.
        let fam = PsiFamily::power_log(2.0, 1.2, 4.0).unwrap();
        assert!(!converges(&fam, SummandKind::L1));
        assert!(converges(&fam, SummandKind::DualNorm { p_prime: 2.0 }));
    }

    #[test]
    fn value_sits_inside_the_integral_test_bracket() {
        // For decreasing h: integral <= sum <= h(n) + integral.
        let fam = PsiFamily::power(1.5).unwrap();
        for n in [4u64, 16, 128] {
            let t = tail_sum(&fam, SummandKind::L1, n, 1e-8, &TailBudget::STANDARD).unwrap();
            let integral = 2.0 * (n as f64).powf(-0.5);
            let h_n = (n as f64).powf(-1.5);
            assert!(t.value >= integral - t.err);
            assert!(t.value <= integral + h_n + t.err);
        }
    }

    #[test]
    fn brute_force_cross_check_power_dual() {
        // psi = k^{-0.9}, p' = 2, from 100: direct summation far past the
        // engine cutoff is the oracle.
        let fam = PsiFamily::power(0.9).unwrap();
        let t = tail_sum(
            &fam,
            SummandKind::DualNorm { p_prime: 2.0 },
            100,
            1e-7,
            &TailBudget::STANDARD,
        )
        .unwrap();
        let mut brute = 0.0f64;
        for k in 100..=10_000_000u64 {
            brute += (k as f64).powf(-1.8);
        }
        // Remaining mass past 1e7 under the integral test.
        brute += (1e7f64).powf(-0.8) / 0.8;
        assert_relative_eq!(t.value, brute, max_relative = 1e-6);
        // Integral-comparison sanity from the operation example.
        assert!((t.value - 100f64.powf(-0.8) / 0.8).abs() <= 0.02 * t.value);
    }

    #[test]
    fn critical_log_tail_matches_sandwich() {
        // psi(t) = t^{-1} ln^{-2}(t+8): the tail from n is squeezed between
        // the closed forms with shifted and unshifted logarithms.
        let fam = PsiFamily::power_log(1.0, 2.0, 8.0).unwrap();
        for n in [64u64, 1024, 65536] {
            let t = tail_sum(&fam, SummandKind::L1, n, 1e-7, &TailBudget::STANDARD).unwrap();
            let nf = n as f64;
            let hi = nf.ln().powf(-1.0) + fam.eval(nf);
            let lo = (nf + 8.0).ln().powf(-1.0);
            assert!(t.value >= lo - t.err, "n={n}: {} < {lo}", t.value);
            assert!(t.value <= hi + t.err, "n={n}: {} > {hi}", t.value);
        }
    }

    #[test]
    fn critical_log_brute_force_cross_check() {
        let fam = PsiFamily::power_log(1.0, 2.0, 8.0).unwrap();
        let t = tail_sum(&fam, SummandKind::L1, 16, 1e-7, &TailBudget::STANDARD).unwrap();
        let mut brute = 0.0f64;
        for k in 16..=30_000_000u64 {
            let kf = k as f64;
            brute += 1.0 / (kf * (kf + 8.0).ln().powi(2));
        }
        brute += 1.0 / (3e7f64).ln(); // integral completion of the remainder
        assert_relative_eq!(t.value, brute, max_relative = 1e-4);
    }

    #[test]
    fn tabulated_tail_uses_the_power_continuation() {
        let fam = PsiFamily::tabulated(vec![1.0, 0.5, 0.25], 2.0).unwrap();
        let t = tail_sum(&fam, SummandKind::L1, 1, 1e-9, &TailBudget::STANDARD).unwrap();
        // psi(k) = 0.25 (k/3)^{-2} = 2.25 k^{-2} for k >= 3.
        let expected = 1.0 + 0.5 + 2.25 * (PI * PI / 6.0 - 1.0 - 0.25);
        assert_relative_eq!(t.value, expected, max_relative = 1e-9);
    }
}
