//! Generating and residual kernels Σ_{k≥n} ψ(k)·cos(kt + βπ/2), the
//! Dirichlet-type partial sums D_{k,β}, truncation planning for the kernel
//! tails, and sup-norm checks of the tail inequalities.
//!
//! Pointwise evaluation away from t ≡ 0 (mod 2π) is summation by parts: a
//! direct partial sum plus the Abel boundary term, with the remainder bounded
//! by ψ(J+1)/|sin(t/2)|. That bound stays valid when Σψ(k) itself diverges,
//! which is the normal situation for the slowly decaying weights here.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::math;
use crate::psi::PsiFamily;
use crate::tail::{self, SummandKind, TailBudget, TailSum};

/// A kernel Σ_{k≥start} ψ(k)·cos(kt + βπ/2). `start` = 1 is the full
/// generating kernel; `start` = n > 1 is the residual tail kernel.
#[derive(Debug, Clone)]
pub struct KernelSpec {
    pub family: PsiFamily,
    pub beta: f64,
    pub start: u64,
}

impl KernelSpec {
    pub fn new(family: PsiFamily, beta: f64, start: u64) -> Self {
        assert!(start >= 1);
        KernelSpec {
            family,
            beta,
            start,
        }
    }

    pub fn phase(&self) -> f64 {
        self.beta * PI / 2.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum KernelError {
    /// The requested pointwise tolerance needs more terms than the hard cap.
    SlowConvergence { terms: u64 },
    /// The controlling tail series diverges.
    DivergentTail,
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::SlowConvergence { terms } => {
                write!(f, "series did not meet tolerance within {terms} terms")
            }
            KernelError::DivergentTail => write!(f, "kernel tail series diverges"),
        }
    }
}

impl core::error::Error for KernelError {}

/// Hard cap on summed terms (the desk-scale guarantee), configurable.
#[derive(Debug, Clone, Copy)]
pub struct EvalOptions {
    pub hard_cap: u64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { hard_cap: 10_000_000 }
    }
}

/// A pointwise kernel value with its certified absolute error bound.
#[derive(Debug, Clone, Copy)]
pub struct KernelValue {
    pub value: f64,
    pub err: f64,
}

/// D_{k,β}(t) = ½·cos(βπ/2) + Σ_{ν=1}^k cos(νt − βπ/2).
///
/// Uses the closed conjugate-Dirichlet form away from t ≡ 0 (mod 2π) and
/// direct summation inside |sin(t/2)| ≤ 1e-8.
pub fn dirichlet_like(k: u64, beta: f64, t: f64) -> f64 {
    let phi = beta * PI / 2.0;
    let (cp, sp) = (math::cos(phi), math::sin(phi));
    let s_half = math::sin(0.5 * t);
    if math::abs(s_half) <= 1e-8 {
        let mut acc = 0.5 * cp;
        for nu in 1..=k {
            acc += math::cos(nu as f64 * t - phi);
        }
        return acc;
    }
    // sum cos(nu t) = sin((k+1/2)t)/(2 sin(t/2)) - 1/2,
    // sum sin(nu t) = (cos(t/2) - cos((k+1/2)t))/(2 sin(t/2)).
    let arg = (k as f64 + 0.5) * t;
    let dir = math::sin(arg) / (2.0 * s_half) - 0.5;
    let conj = (math::cos(0.5 * t) - math::cos(arg)) / (2.0 * s_half);
    0.5 * cp + cp * dir + sp * conj
}

/// Evaluates the kernel at `t` to absolute tolerance `tol`.
pub fn eval_kernel(spec: &KernelSpec, t: f64, tol: f64) -> Result<KernelValue, KernelError> {
    eval_kernel_with(spec, t, tol, &EvalOptions::default())
}

pub fn eval_kernel_with(
    spec: &KernelSpec,
    t: f64,
    tol: f64,
    opts: &EvalOptions,
) -> Result<KernelValue, KernelError> {
    assert!(tol > 0.0);
    let phase = spec.phase();
    let s_half = math::sin(0.5 * t);

    if math::abs(s_half) <= 1e-8 {
        // At t = 0 every cosine collapses to cos(phase); the value is an
        // exact multiple of the certified tail sum.
        let cp = math::cos(phase);
        if math::abs(cp) < 1e-12 {
            return Ok(KernelValue { value: 0.0, err: tol.min(1e-12) });
        }
        return match tail::tail_sum(
            &spec.family,
            SummandKind::L1,
            spec.start,
            tol.min(1e-9),
            &TailBudget::STANDARD,
        ) {
            Ok(ts) => Ok(KernelValue {
                value: cp * ts.value,
                err: math::abs(cp) * ts.err,
            }),
            Err(_) => Err(KernelError::SlowConvergence { terms: opts.hard_cap }),
        };
    }

    let inv_s = 1.0 / math::abs(s_half);
    let (ct, st) = (math::cos(t), math::sin(t));
    let start_f = spec.start as f64;
    // Running cos(kt + phase) from k = start.
    let mut c = math::cos(start_f * t + phase);
    let mut s = math::sin(start_f * t + phase);
    let mut acc = 0.0f64;
    let mut u = 0.0f64; // U_k = sum of cos(nu t + phase), nu = start..=k
    let mut psi_next = spec.family.eval(start_f);
    let mut k = spec.start;
    loop {
        let psi_k = psi_next;
        acc += psi_k * c;
        u += c;
        psi_next = spec.family.eval((k + 1) as f64);
        if psi_next * inv_s <= tol {
            let value = acc + psi_next * u;
            return Ok(KernelValue {
                value,
                err: psi_next * inv_s + 1e-13 * (math::abs(value) + 1.0),
            });
        }
        if k - spec.start >= opts.hard_cap {
            return Err(KernelError::SlowConvergence { terms: opts.hard_cap });
        }
        let c_next = c * ct - s * st;
        s = s * ct + c * st;
        c = c_next;
        k += 1;
    }
}

/// Truncation plan for a kernel tail in the L_{p'} metric.
#[derive(Debug, Clone, Copy)]
pub struct TruncationPlan {
    /// Power-of-two cutoff; coefficients above it are dropped.
    pub cutoff: u64,
    /// Norm surrogate of the dropped tail at `cutoff`:
    /// (Σ_{k>K} ψ^{p'}(k)·k^{p'-2} + ψ^{p'}(K)·K^{p'-1})^{1/p'} for p' < ∞,
    /// Σ_{k>K} ψ(k) for p' = ∞.
    pub tail_control: f64,
    pub p_prime: f64,
}

/// Smallest power-of-two cutoff whose tail control is below `tol` and stays
/// put (within `tol`, monotonically) when the cutoff doubles.
pub fn plan_truncation(
    spec: &KernelSpec,
    p_prime: f64,
    tol: f64,
) -> Result<TruncationPlan, KernelError> {
    assert!(tol > 0.0);
    assert!(p_prime > 1.0);
    let kind = if p_prime == f64::INFINITY {
        SummandKind::L1
    } else {
        SummandKind::DualNorm { p_prime }
    };
    if !tail::converges(&spec.family, kind) {
        return Err(KernelError::DivergentTail);
    }

    let control = |k: u64| -> f64 { tail_control(&spec.family, p_prime, k) };

    let mut cutoff = spec.start.next_power_of_two().max(2);
    let mut tc = control(cutoff);
    loop {
        let tc2 = control(cutoff * 2);
        if tc <= tol && math::abs(tc - tc2) < tol && tc2 <= tc * (1.0 + 1e-12) {
            return Ok(TruncationPlan {
                cutoff,
                tail_control: tc,
                p_prime,
            });
        }
        cutoff *= 2;
        tc = tc2;
        if cutoff > 1 << 40 {
            return Err(KernelError::SlowConvergence { terms: cutoff });
        }
    }
}

/// The tail-control surrogate at cutoff `k` (upper side of the enclosure).
pub(crate) fn tail_control(family: &PsiFamily, p_prime: f64, k: u64) -> f64 {
    if p_prime == f64::INFINITY {
        match tail::tail_sum(family, SummandKind::L1, k + 1, 1e-6, &TailBudget::PLANNING) {
            Ok(ts) => ts.value + ts.err,
            Err(_) => f64::INFINITY,
        }
    } else {
        let kind = SummandKind::DualNorm { p_prime };
        match tail::tail_sum(family, kind, k + 1, 1e-6, &TailBudget::PLANNING) {
            Ok(ts) => {
                let kf = k as f64;
                let boundary =
                    math::powf(family.eval(kf), p_prime) * math::powf(kf, p_prime - 1.0);
                math::powf(ts.value + ts.err + boundary, 1.0 / p_prime)
            }
            Err(_) => f64::INFINITY,
        }
    }
}

/// Lazy evaluator for c₁cos(t+φ) + c₂cos(2t+φ) + … where an explicit
/// coefficient prefix (profile head plus materialized ψ tail) hands over to
/// the family itself past `coeffs.len()`.
///
/// Coefficients from `tail_from` on must be the decreasing family values;
/// the Abel remainder bound relies on that.
pub(crate) struct CosSeries {
    pub phase: f64,
    /// coeffs[i] is the amplitude of harmonic k = i+1.
    pub coeffs: Vec<f64>,
    pub tail_from: u64,
    pub family: PsiFamily,
    /// Certified Σ_{k>len} ψ(k) when it converges.
    pub beyond: Option<TailSum>,
}

impl CosSeries {
    /// Builds the evaluator: explicit head amplitudes for k < tail_from,
    /// family values materialized for tail_from ≤ k ≤ materialize_to.
    pub fn materialize(
        family: PsiFamily,
        phase: f64,
        head: &[f64],
        tail_from: u64,
        materialize_to: u64,
    ) -> Self {
        debug_assert!(head.len() as u64 == tail_from - 1);
        let len = materialize_to.max(tail_from);
        let mut coeffs = Vec::with_capacity(len as usize);
        coeffs.extend_from_slice(head);
        for k in tail_from..=len {
            coeffs.push(family.eval(k as f64));
        }
        let beyond = tail::tail_sum(
            &family,
            SummandKind::L1,
            len + 1,
            1e-9,
            &TailBudget::PLANNING,
        )
        .ok();
        CosSeries {
            phase,
            coeffs,
            tail_from,
            family,
            beyond,
        }
    }

    /// Exact value at t ≡ 0 (mod 2π): cos(φ)·(Σ coeffs + beyond-mass).
    /// `None` when the mass past the explicit coefficients diverges and the
    /// phase does not kill it.
    pub fn value_at_zero(&self) -> Option<KernelValue> {
        let cp = math::cos(self.phase);
        if math::abs(cp) < 1e-12 {
            return Some(KernelValue { value: 0.0, err: 1e-300 });
        }
        let explicit: f64 = self.coeffs.iter().sum();
        match &self.beyond {
            Some(ts) => Some(KernelValue {
                value: cp * (explicit + ts.value),
                err: math::abs(cp) * ts.err + 1e-14 * math::abs(explicit),
            }),
            None => None,
        }
    }

    /// Value and certified error bound at t (not ≡ 0 mod 2π). `eps` is the
    /// target for the adaptive stop; the achieved error is reported.
    pub fn eval(&self, t: f64, eps: f64) -> KernelValue {
        let s_half = math::sin(0.5 * t);
        debug_assert!(math::abs(s_half) > 1e-10);
        let inv_s = 1.0 / math::abs(s_half);
        let (ct, st) = (math::cos(t), math::sin(t));
        let mut c = math::cos(t + self.phase);
        let mut s = math::sin(t + self.phase);
        let mut acc = 0.0f64;
        let mut u = 0.0f64;
        let len = self.coeffs.len() as u64;
        let mut k = 1u64;
        while k <= len {
            let coeff = self.coeffs[(k - 1) as usize];
            acc += coeff * c;
            if k >= self.tail_from {
                u += c;
                // The Abel stop is only sound on the decreasing region.
                if k % 32 == 0 && k < len {
                    let next = self.coeffs[k as usize];
                    if next * inv_s <= eps {
                        let value = acc + next * u;
                        return KernelValue {
                            value,
                            err: next * inv_s + 1e-13 * (math::abs(value) + 1.0),
                        };
                    }
                }
            }
            let c_next = c * ct - s * st;
            s = s * ct + c * st;
            c = c_next;
            k += 1;
        }
        // Ran out of explicit coefficients: close with the Abel boundary or
        // the total remaining mass, whichever bound is tighter.
        let next = self.family.eval((len + 1) as f64);
        let abel_err = next * inv_s;
        let mass = self.beyond.as_ref().map(|ts| ts.value + ts.err);
        match mass {
            Some(m) if m < abel_err => KernelValue {
                value: acc,
                err: m + 1e-13 * (math::abs(acc) + 1.0),
            },
            _ => KernelValue {
                value: acc + next * u,
                err: abel_err + 1e-13 * (math::abs(acc) + 1.0),
            },
        }
    }
}

/// A sup estimate over a period: uniform grid plus golden-section sharpening
/// of the best peaks, with the largest pointwise remainder bound attached.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SupEstimate {
    pub value: f64,
    pub err: f64,
    pub argmax: f64,
}

pub(crate) fn sup_estimate(
    series: &CosSeries,
    scale: u64,
    grid_density: usize,
    eps: f64,
) -> Result<SupEstimate, KernelError> {
    let g = (grid_density.max(4) * scale.max(1) as usize)
        .next_power_of_two()
        .clamp(4096, 1 << 17);
    let step = 2.0 * PI / g as f64;

    let at_zero = match series.value_at_zero() {
        Some(v) => v,
        None => return Err(KernelError::SlowConvergence { terms: series.coeffs.len() as u64 }),
    };

    let mut values = Vec::with_capacity(g);
    values.push((math::abs(at_zero.value), at_zero.err));
    for i in 1..g {
        let kv = series.eval(i as f64 * step, eps);
        values.push((math::abs(kv.value), kv.err));
    }

    let mut peaks: Vec<usize> = (0..g)
        .filter(|&i| {
            let prev = values[(i + g - 1) % g].0;
            let next = values[(i + 1) % g].0;
            values[i].0 >= prev && values[i].0 >= next
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].0.partial_cmp(&values[a].0).unwrap());
    peaks.truncate(3);

    let mut best = values[0];
    let mut argmax = 0.0;
    for &i in &peaks {
        if i == 0 {
            continue;
        }
        let lo = (i as f64 - 1.0) * step;
        let hi = (i as f64 + 1.0) * step;
        let refined = crate::filters::golden_max(&|t| math::abs(series.eval(t, eps).value), lo, hi, 70);
        if refined > best.0 {
            let mid_err = series.eval(0.5 * (lo + hi), eps).err;
            best = (refined, mid_err.max(values[i].1));
            argmax = 0.5 * (lo + hi);
        } else if values[i].0 > best.0 {
            best = values[i];
            argmax = i as f64 * step;
        }
    }
    Ok(SupEstimate {
        value: best.0,
        err: best.1 + 1e-14 * best.0,
        argmax,
    })
}

/// One sup-norm tail inequality check.
#[derive(Debug, Clone, Copy)]
pub struct SupCheck {
    pub sup: f64,
    pub sup_err: f64,
    pub bound: f64,
    pub pass: bool,
    pub argmax: f64,
}

/// Grid checks of the two residual-kernel sup bounds: the cosine-phase tail
/// against Σ_{k≥n} ψ(k) (needs a convergent tail) and the sine-phase tail
/// against (π+2)·ψ(n)·n.
#[derive(Debug, Clone)]
pub struct SupTailReport {
    pub cos_check: Option<SupCheck>,
    pub sin_check: SupCheck,
}

pub fn sup_tail_inequalities(
    family: &PsiFamily,
    n: u64,
    grid_density: usize,
) -> Result<SupTailReport, KernelError> {
    assert!(n >= 1);
    let materialize_to = (256 * n).next_power_of_two().clamp(1 << 14, 1 << 21);
    let head = alloc::vec![0.0; (n - 1) as usize];

    let sin_series = CosSeries::materialize(family.clone(), PI / 2.0, &head, n, materialize_to);
    let sin_bound = (PI + 2.0) * family.eval(n as f64) * n as f64;
    let sin_sup = sup_estimate(&sin_series, n, grid_density, 1e-4 * sin_bound)?;
    let sin_check = SupCheck {
        sup: sin_sup.value,
        sup_err: sin_sup.err,
        bound: sin_bound,
        pass: sin_sup.value <= sin_bound * (1.0 + 1e-9) + sin_sup.err,
        argmax: sin_sup.argmax,
    };

    let cos_check = match tail::tail_sum(family, SummandKind::L1, n, 1e-9, &TailBudget::STANDARD) {
        Ok(ts) => {
            let cos_series = CosSeries::materialize(family.clone(), 0.0, &head, n, materialize_to);
            let sup = sup_estimate(&cos_series, n, grid_density, 1e-6 * ts.value)?;
            Some(SupCheck {
                sup: sup.value,
                sup_err: sup.err,
                bound: ts.value,
                pass: sup.value <= ts.value + ts.err + sup.err,
                argmax: sup.argmax,
            })
        }
        Err(_) => None,
    };

    Ok(SupTailReport {
        cos_check,
        sin_check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn dirichlet_small_cases() {
        assert_relative_eq!(dirichlet_like(1, 0.0, 0.0), 1.5);
        // Pure sine phase vanishes at the origin.
        assert!(dirichlet_like(3, 1.0, 0.0).abs() < 1e-15);
    }

    #[test]
    fn dirichlet_closed_form_matches_direct_sum() {
        for (k, beta, t) in [(5u64, 0.4, 1.3), (12, 1.7, 0.31), (40, -0.9, 2.6)] {
            let phi = beta * PI / 2.0;
            let mut direct = 0.5 * phi.cos();
            for nu in 1..=k {
                direct += (nu as f64 * t - phi).cos();
            }
            assert_relative_eq!(dirichlet_like(k, beta, t), direct, epsilon = 1e-10);
        }
    }

    #[test]
    fn kernel_value_at_zero_is_the_tail_sum() {
        let spec = KernelSpec::new(PsiFamily::power(2.0).unwrap(), 0.0, 1);
        let v = eval_kernel(&spec, 0.0, 1e-9).unwrap();
        assert_relative_eq!(v.value, PI * PI / 6.0, max_relative = 1e-8);

        let spec = KernelSpec::new(PsiFamily::power(1.5).unwrap(), 1.0, 1);
        let v = eval_kernel(&spec, 0.0, 1e-9).unwrap();
        assert_eq!(v.value, 0.0);
    }

    #[test]
    fn kernel_at_zero_with_divergent_tail_is_slow() {
        let spec = KernelSpec::new(PsiFamily::power(1.0).unwrap(), 0.0, 1);
        assert!(matches!(
            eval_kernel(&spec, 0.0, 1e-6),
            Err(KernelError::SlowConvergence { .. })
        ));
    }

    #[test]
    fn alternating_tail_matches_eta_based_value() {
        // Sum_{k>=4} (-1)^k k^{-1.5} via the Dirichlet eta function:
        // eta(1.5) = (1 - 2^{-1/2}) zeta(1.5). Frozen from that closed form
        // and double-checked by the averaged alternating partial sums below.
        let spec = KernelSpec::new(PsiFamily::power(1.5).unwrap(), 0.0, 4);
        let v = eval_kernel(&spec, PI, 1e-10).unwrap();
        let frozen = 0.07374967451119342;
        assert!((v.value - frozen).abs() <= v.err + 1e-9, "{} vs {frozen}", v.value);

        let mut partial = 0.0f64;
        let mut prev = 0.0f64;
        for k in 4..=4_000_001u64 {
            prev = partial;
            partial += (if k % 2 == 0 { 1.0 } else { -1.0 }) * (k as f64).powf(-1.5);
        }
        let oracle = 0.5 * (partial + prev);
        assert_relative_eq!(v.value, oracle, epsilon = 1e-9);
        assert_relative_eq!(oracle, frozen, epsilon = 1e-9);
    }

    #[test]
    fn summation_by_parts_agrees_with_direct_summation() {
        // Absolutely convergent case: direct summation is the oracle.
        let fam = PsiFamily::power(2.0).unwrap();
        for (beta, t) in [(0.0, 0.7), (1.0, 2.2), (0.4, 4.0)] {
            let spec = KernelSpec::new(fam.clone(), beta, 1);
            let v = eval_kernel(&spec, t, 1e-10).unwrap();
            let phi = beta * PI / 2.0;
            let mut direct = 0.0;
            for k in 1..=2_000_000u64 {
                direct += (k as f64).powf(-2.0) * (k as f64 * t + phi).cos();
            }
            assert!((v.value - direct).abs() < 1e-8, "{} vs {direct}", v.value);
        }
    }

    #[test]
    fn kernel_head_tail_consistency() {
        // Kernel(start=1) - Kernel(start=N) equals the explicit finite sum.
        let fam = PsiFamily::power(1.5).unwrap();
        for (beta, t, n) in [(0.0, 1.1, 16u64), (1.0, 2.9, 64), (0.3, 0.45, 128)] {
            let tol = 1e-9;
            let full = eval_kernel(&KernelSpec::new(fam.clone(), beta, 1), t, tol).unwrap();
            let tail = eval_kernel(&KernelSpec::new(fam.clone(), beta, n), t, tol).unwrap();
            let phi = beta * PI / 2.0;
            let mut head = 0.0;
            for k in 1..n {
                head += (k as f64).powf(-1.5) * (k as f64 * t + phi).cos();
            }
            assert!(
                ((full.value - tail.value) - head).abs() <= 2.0 * tol + full.err + tail.err,
                "beta={beta} t={t} n={n}"
            );
        }
    }

    #[test]
    fn truncation_plan_matches_integral_reasoning() {
        // psi = k^{-2}, p' = inf, tol 1e-3: the tail past K is about 1/K,
        // so the smallest admissible power of two is 1024.
        let spec = KernelSpec::new(PsiFamily::power(2.0).unwrap(), 0.0, 1);
        let plan = plan_truncation(&spec, f64::INFINITY, 1e-3).unwrap();
        assert_eq!(plan.cutoff, 1024);
        assert!(plan.tail_control <= 1e-3);

        // Divergent: psi = k^{-1/2} with p' = 2.
        let spec = KernelSpec::new(PsiFamily::power(0.5).unwrap(), 0.0, 1);
        assert_eq!(
            plan_truncation(&spec, 2.0, 1e-3).unwrap_err(),
            KernelError::DivergentTail
        );
    }

    #[test]
    fn tail_control_decreases_with_cutoff() {
        let fam = PsiFamily::power(1.5).unwrap();
        for p_prime in [2.0, 4.0, f64::INFINITY] {
            let a = tail_control(&fam, p_prime, 256);
            let b = tail_control(&fam, p_prime, 512);
            let c = tail_control(&fam, p_prime, 1024);
            assert!(a > b && b > c, "p'={p_prime}: {a} {b} {c}");
        }
    }

    #[test]
    fn sup_tail_inequalities_hold() {
        let fam = PsiFamily::power(1.5).unwrap();
        for n in [4u64, 16, 64] {
            let report = sup_tail_inequalities(&fam, n, 16).unwrap();
            assert!(report.sin_check.pass, "sine bound failed at n={n}");
            assert!(report.sin_check.sup <= report.sin_check.bound);
            let cosr = report.cos_check.unwrap();
            assert!(cosr.pass, "cosine bound failed at n={n}");
        }
        // Spot value of the sine bound at n = 16.
        let b = (PI + 2.0) * 16f64.powf(-1.5) * 16.0;
        assert_relative_eq!(b, (PI + 2.0) * 0.25, max_relative = 1e-12);
    }

    #[test]
    fn cosine_bound_attained_at_zero_for_full_kernel() {
        let fam = PsiFamily::power(2.0).unwrap();
        let report = sup_tail_inequalities(&fam, 1, 16).unwrap();
        let cosr = report.cos_check.unwrap();
        assert!((cosr.sup - cosr.bound).abs() <= 1e-6 * cosr.bound);
        assert!(cosr.argmax.abs() < 1e-12);
    }

    #[test]
    fn cos_series_matches_eval_kernel() {
        let fam = PsiFamily::power(1.5).unwrap();
        let series = CosSeries::materialize(fam.clone(), 0.0, &[], 1, 1 << 16);
        for t in [0.3, 1.0, 2.5, 5.0] {
            let a = series.eval(t, 1e-9);
            let b = eval_kernel(&KernelSpec::new(fam.clone(), 0.0, 1), t, 1e-9).unwrap();
            assert!(
                (a.value - b.value).abs() <= a.err + b.err,
                "t={t}: {} vs {}",
                a.value,
                b.value
            );
        }
    }
}
