//! The hyperbolic gamma function G(ω₊, ω₋; z) and q-series companions.
//!
//! In the strip |Im z| < Re(ω₊ + ω₋)/2 the function is given by
//!
//! ```text
//! G(z) = exp( i ∫₀^∞ dy/y [ sin(2yz) / (2 sinh(ω₊y) sinh(ω₋y)) − z/(ω₊ω₋y) ] )
//! ```
//!
//! and is extended to a meromorphic function of z by the first-order
//! functional equations G(z + iω±/2) / G(z − iω±/2) = 2 cosh(πz/ω∓).
//! Zeros and poles lie in iω + Λ and −iω − Λ with ω = (ω₊+ω₋)/2 and
//! Λ = ℤ≥0·iω₊ + ℤ≥0·iω₋.
//!
//! The integrand cancels catastrophically as y → 0, so the evaluation here
//! subtracts a Gaussian-regularized version of the 1/y² term (restoring the
//! exact correction z·√π/(ω₊ω₋) in closed form) and switches to a power
//! series for small y. Both branches agree to full precision on overlap.

use crate::numerics::{integrate_halfline, NumericsError, QuadratureSpec, SmallYExpansion};
use crate::{c, mul_i, Complex};
use thiserror::Error;

/// Guard radius around zeros/poles and cosh factors.
pub const SINGULARITY_GUARD: f64 = 1e-8;
/// Minimal strip margin accepted by [`gamma_strip`].
pub const STRIP_MARGIN: f64 = 1e-9;
/// Bound on functional-equation steps in [`gamma`].
pub const MAX_SHIFTS: i64 = 200;

#[derive(Debug, Error)]
pub enum GammaError {
    #[error("quasi-periods must lie in the open right half-plane: {0}")]
    InvalidQuasiPeriods(String),
    #[error("argument outside the strip: |Im z| = {im:.6} vs half-width {halfwidth:.6}")]
    OutOfStrip { im: f64, halfwidth: f64 },
    #[error("argument within {distance:.3e} of the zero/pole locus or of a vanishing cosh factor")]
    NearSingularity { distance: f64 },
    #[error("base modulus {modulus:.8} too close to 1")]
    ModulusTooClose { modulus: f64 },
    #[error("omega_plus/omega_minus must lie in the open upper half-plane")]
    ModularPointInvalid,
    #[error("period scale {0} must be one of 1, 1/2, 1/3")]
    InvalidScale(f64),
    #[error("functional-equation step count {0} exceeds bound")]
    TooManyShifts(i64),
    #[error(transparent)]
    Quadrature(#[from] NumericsError),
}

/// The pair (ω₊, ω₋) in the open right half-plane, with derived data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuasiPeriods {
    wplus: Complex,
    wminus: Complex,
}

impl QuasiPeriods {
    pub fn new(wplus: Complex, wminus: Complex) -> Result<Self, GammaError> {
        for (name, w) in [("omega_plus", wplus), ("omega_minus", wminus)] {
            if !(w.re.is_finite() && w.im.is_finite() && w.re > 0.0) {
                return Err(GammaError::InvalidQuasiPeriods(format!("{name} = {w}")));
            }
        }
        Ok(QuasiPeriods { wplus, wminus })
    }

    #[inline]
    pub fn wplus(&self) -> Complex {
        self.wplus
    }

    #[inline]
    pub fn wminus(&self) -> Complex {
        self.wminus
    }

    /// ω = (ω₊ + ω₋)/2.
    #[inline]
    pub fn omega(&self) -> Complex {
        0.5 * (self.wplus + self.wminus)
    }

    /// Half-width of the strip of the integral representation.
    #[inline]
    pub fn strip_halfwidth(&self) -> f64 {
        self.omega().re
    }

    /// q = exp(2πi ω₊/ω₋); refuses moduli >= 1.
    pub fn q(&self) -> Result<Complex, GammaError> {
        let q = (2.0 * std::f64::consts::PI * mul_i(self.wplus / self.wminus)).exp();
        if q.norm() >= 1.0 {
            return Err(GammaError::ModulusTooClose { modulus: q.norm() });
        }
        Ok(q)
    }

    /// q̃ = exp(−2πi ω₋/ω₊); refuses moduli >= 1.
    pub fn qtilde(&self) -> Result<Complex, GammaError> {
        let qt = (-2.0 * std::f64::consts::PI * mul_i(self.wminus / self.wplus)).exp();
        if qt.norm() >= 1.0 {
            return Err(GammaError::ModulusTooClose { modulus: qt.norm() });
        }
        Ok(qt)
    }

    /// Quasi-periods (ω₊, u·ω₋).
    pub fn scaled(&self, u: f64) -> QuasiPeriods {
        QuasiPeriods {
            wplus: self.wplus,
            wminus: u * self.wminus,
        }
    }

    /// Swapped pair (ω₋, ω₊).
    pub fn swapped(&self) -> QuasiPeriods {
        QuasiPeriods {
            wplus: self.wminus,
            wminus: self.wplus,
        }
    }

    /// Whether z lies within `tol` of Λ = ℤ≥0·iω₊ + ℤ≥0·iω₋.
    pub fn in_lambda(&self, z: Complex, tol: f64) -> bool {
        dist_to_cone(z, mul_i(self.wplus), mul_i(self.wminus)) <= tol
    }

    /// Distance from z to the zero locus iω + Λ and pole locus −iω − Λ.
    pub fn singularity_distance(&self, z: Complex) -> f64 {
        let iw = mul_i(self.omega());
        let d_zero = dist_to_cone(z - iw, mul_i(self.wplus), mul_i(self.wminus));
        let d_pole = dist_to_cone(-z - iw, mul_i(self.wplus), mul_i(self.wminus));
        d_zero.min(d_pole)
    }
}

/// Distance from w to { a·s1 + b·s2 : a, b ∈ ℤ≥0 }.
pub(crate) fn dist_to_cone(w: Complex, s1: Complex, s2: Complex) -> f64 {
    let det = s1.re * s2.im - s1.im * s2.re;
    let scale = s1.norm() * s2.norm();
    if det.abs() > 1e-9 * scale {
        // independent steps: solve w = a s1 + b s2 in real coordinates
        let a = (w.re * s2.im - w.im * s2.re) / det;
        let b = (s1.re * w.im - s1.im * w.re) / det;
        let mut best = f64::INFINITY;
        for aa in [a.floor(), a.ceil(), 0.0] {
            for bb in [b.floor(), b.ceil(), 0.0] {
                let (aa, bb) = (aa.max(0.0), bb.max(0.0));
                let p = aa * s1 + bb * s2;
                best = best.min((w - p).norm());
            }
        }
        best
    } else {
        // co-linear steps: scan multiples of s1 and fill with s2
        let u = s1 / s1.norm();
        let proj = w.re * u.re + w.im * u.im;
        let perp = (w - proj * u).norm();
        let l1 = s1.norm();
        let l2 = (s2.re * u.re + s2.im * u.im).abs().max(1e-300);
        let mut best = w.norm();
        let amax = ((proj / l1).ceil() as i64 + 1).clamp(0, 10_000);
        for aa in 0..=amax {
            let r = proj - aa as f64 * l1;
            let bb = (r / l2).round().max(0.0);
            let d = (r - bb * l2).abs();
            best = best.min((d * d + perp * perp).sqrt());
        }
        best
    }
}

/// A value of G together with its chosen logarithm.
#[derive(Clone, Copy, Debug)]
pub struct GammaValue {
    /// Branch of log G: i·(integral) in the strip, plus one principal
    /// log(2cosh ·) term per functional-equation step.
    pub log_value: Complex,
    /// exp(log_value).
    pub value: Complex,
    /// Number of functional-equation steps applied.
    pub shifts_applied: u32,
    /// Distance from z to the zero/pole locus.
    pub nearest_singularity_distance: f64,
}

const SERIES_TERMS: usize = 14;

/// Stable evaluation of the strip integrand.
///
/// Writing s = y², N(s) = Σ (−4z²)^m s^m/(2m+1)! and D(s) the product of
/// the two sinh series, the integrand of log G is
///
/// ```text
/// h(y) = (z/(ω₊ω₋)) · (N(s) − D(s)) / (s · D(s))
/// ```
///
/// The kernel actually integrated is g(y) = h(y) + (z/(ω₊ω₋))·(1 − e^{−s})/s,
/// whose closed-form correction −z√π/(ω₊ω₋) restores the original integral
/// while making g decay exponentially.
struct StripIntegrand {
    wplus: Complex,
    wminus: Complex,
    z: Complex,
    coef: Complex,
    /// coefficients of N − D (index m multiplies s^m; entry 0 vanishes)
    nd: [Complex; SERIES_TERMS],
    /// coefficients of D
    d: [Complex; SERIES_TERMS],
    /// series route is used below this y
    y_switch: f64,
}

impl StripIntegrand {
    fn new(qp: &QuasiPeriods, z: Complex) -> Self {
        let (wp, wm) = (qp.wplus, qp.wminus);
        let mut n = [c(0.0, 0.0); SERIES_TERMS];
        let mut a = [c(0.0, 0.0); SERIES_TERMS];
        let mut b = [c(0.0, 0.0); SERIES_TERMS];
        let (z2, wp2, wm2) = (z * z, wp * wp, wm * wm);
        let (mut pn, mut pa, mut pb) = (c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        let mut fact = 1.0f64;
        for m in 0..SERIES_TERMS {
            if m > 0 {
                pn *= -4.0 * z2;
                pa *= wp2;
                pb *= wm2;
                fact *= (2 * m) as f64 * (2 * m + 1) as f64;
            }
            n[m] = pn / fact;
            a[m] = pa / fact;
            b[m] = pb / fact;
        }
        let mut nd = [c(0.0, 0.0); SERIES_TERMS];
        let mut d = [c(0.0, 0.0); SERIES_TERMS];
        for m in 0..SERIES_TERMS {
            let mut acc = c(0.0, 0.0);
            for j in 0..=m {
                acc += a[j] * b[m - j];
            }
            d[m] = acc;
            nd[m] = n[m] - acc;
        }
        // The direct form cancels for s·|P1| << 1; the series has benign
        // term growth exactly in that regime.
        let p1 = (4.0 * z.norm_sqr() + wp.norm_sqr() + wm.norm_sqr()) / 6.0;
        let y_switch = (0.5 / p1.sqrt()).min(0.25);
        StripIntegrand {
            wplus: wp,
            wminus: wm,
            z,
            coef: z / (wp * wm),
            nd,
            d,
            y_switch,
        }
    }

    fn eval(&self, y: f64) -> Complex {
        let s = y * y;
        if y < self.y_switch {
            let mut num = c(0.0, 0.0);
            let mut den = c(0.0, 0.0);
            let mut pow = c(1.0, 0.0);
            for m in 0..SERIES_TERMS {
                den += self.d[m] * pow;
                if m + 1 < SERIES_TERMS {
                    num += self.nd[m + 1] * pow;
                }
                pow *= s;
            }
            let gauss = if s > 1e-8 {
                (1.0 - (-s).exp()) / s
            } else {
                1.0 - s / 2.0 + s * s / 6.0
            };
            self.coef * (num / den + gauss)
        } else {
            let (wp, wm, z) = (self.wplus, self.wminus, self.z);
            let e1 = (2.0 * y * mul_i(z) - (wp + wm) * y).exp();
            let e2 = (-2.0 * y * mul_i(z) - (wp + wm) * y).exp();
            let den =
                (c(1.0, 0.0) - (-2.0 * wp * y).exp()) * (c(1.0, 0.0) - (-2.0 * wm * y).exp());
            let ratio = (e1 - e2) / mul_i(den);
            ratio / y - self.coef * (-s).exp() / s
        }
    }

    /// Leading four even Taylor coefficients of the kernel and a cutoff
    /// below which the polynomial is accurate to ~1e-15.
    fn head(&self) -> SmallYExpansion {
        let d1 = self.d[1];
        let d2 = self.d[2];
        let d3 = self.d[3];
        // reciprocal series of D
        let r = [
            c(1.0, 0.0),
            -d1,
            d1 * d1 - d2,
            -(d1 * d1 * d1) + 2.0 * d1 * d2 - d3,
        ];
        let gauss = [1.0, -0.5, 1.0 / 6.0, -1.0 / 24.0];
        let mut coeffs = [c(0.0, 0.0); 4];
        for (t, coef) in coeffs.iter_mut().enumerate() {
            let mut acc = c(gauss[t], 0.0);
            for (j, rj) in r.iter().enumerate().take(t + 1) {
                acc += self.nd[t + 1 - j] * rj;
            }
            *coef = self.coef * acc;
        }
        let p1 = (4.0 * self.z.norm_sqr() + self.wplus.norm_sqr() + self.wminus.norm_sqr()) / 6.0;
        let denom = (self.coef.norm() * p1.powi(5)).max(1e-300);
        let cutoff = (1e-15 / denom)
            .powf(1.0 / 9.0)
            .min(0.01)
            .min(0.5 * self.y_switch)
            .max(1e-6);
        SmallYExpansion { coeffs, cutoff }
    }
}

/// log(2 sinh x), stable for large |Re x|; `None` marks an exact zero.
pub(crate) fn log_2sinh(x: Complex) -> Option<Complex> {
    if x.norm() == 0.0 {
        return None;
    }
    if x.re >= 0.0 {
        Some(x + (c(1.0, 0.0) - (-2.0 * x).exp()).ln())
    } else {
        Some(-x + (c(1.0, 0.0) - (2.0 * x).exp()).ln() + c(0.0, std::f64::consts::PI))
    }
}

/// log(2 cosh x) with the principal branch, safe for large |Re x|.
pub(crate) fn log_2cosh(x: Complex) -> Complex {
    if x.re >= 0.0 {
        x + (c(1.0, 0.0) + (-2.0 * x).exp()).ln()
    } else {
        -x + (c(1.0, 0.0) + (2.0 * x).exp()).ln()
    }
}

/// G via the integral representation; requires |Im z| < Re ω strictly.
pub fn gamma_strip(
    qp: &QuasiPeriods,
    z: Complex,
    spec: &QuadratureSpec,
) -> Result<GammaValue, GammaError> {
    let halfwidth = qp.strip_halfwidth();
    let margin = halfwidth - z.im.abs();
    if margin < STRIP_MARGIN {
        return Err(GammaError::OutOfStrip { im: z.im, halfwidth });
    }
    let dist = qp.singularity_distance(z);
    if z.norm() == 0.0 {
        return Ok(GammaValue {
            log_value: c(0.0, 0.0),
            value: c(1.0, 0.0),
            shifts_applied: 0,
            nearest_singularity_distance: dist,
        });
    }
    let integrand = StripIntegrand::new(qp, z);
    let head = integrand.head();
    let rate = 2.0 * margin;
    let result = integrate_halfline(|y| integrand.eval(y), Some(head), spec, rate)?;
    let correction = integrand.coef * std::f64::consts::PI.sqrt();
    let log_value = mul_i(result.value - correction);
    Ok(GammaValue {
        log_value,
        value: log_value.exp(),
        shifts_applied: 0,
        nearest_singularity_distance: dist,
    })
}

/// G extended to the whole plane by the ω₋ functional equation.
///
/// Arguments above the strip are reduced by
/// G(w) = 2cosh(π(w − iω₋/2)/ω₊) · G(w − iω₋), arguments below by the
/// reciprocal relation; the step count is chosen arithmetically so the
/// reduced argument lands at least Re(ω₊)/2 inside the strip.
pub fn gamma(
    qp: &QuasiPeriods,
    z: Complex,
    spec: &QuadratureSpec,
) -> Result<GammaValue, GammaError> {
    let dist = qp.singularity_distance(z);
    if dist < SINGULARITY_GUARD {
        return Err(GammaError::NearSingularity { distance: dist });
    }
    let halfwidth = qp.strip_halfwidth();
    if z.im.abs() < halfwidth - STRIP_MARGIN {
        return gamma_strip(qp, z, spec);
    }

    let steps = (z.im / qp.wminus.re).round() as i64;
    if steps.abs() > MAX_SHIFTS {
        return Err(GammaError::TooManyShifts(steps.abs()));
    }
    let pi = std::f64::consts::PI;
    let mut acc = c(0.0, 0.0);
    let mut w = z;
    if steps > 0 {
        for _ in 0..steps {
            let arg = pi * (w - mul_i(qp.wminus) * 0.5) / qp.wplus;
            check_cosh(arg)?;
            acc += log_2cosh(arg);
            w -= mul_i(qp.wminus);
        }
    } else {
        for _ in 0..(-steps) {
            let arg = pi * (w + mul_i(qp.wminus) * 0.5) / qp.wplus;
            check_cosh(arg)?;
            acc -= log_2cosh(arg);
            w += mul_i(qp.wminus);
        }
    }
    let inner = gamma_strip(qp, w, spec)?;
    let log_value = acc + inner.log_value;
    Ok(GammaValue {
        log_value,
        value: log_value.exp(),
        shifts_applied: steps.unsigned_abs() as u32,
        nearest_singularity_distance: dist,
    })
}

fn check_cosh(arg: Complex) -> Result<(), GammaError> {
    let two_cosh = 2.0 * arg.cosh();
    if two_cosh.norm() < SINGULARITY_GUARD {
        return Err(GammaError::NearSingularity {
            distance: two_cosh.norm(),
        });
    }
    Ok(())
}

/// G_u(z) = G(ω₊, u·ω₋; z) for the case decorations u ∈ {1, 1/2, 1/3}.
pub fn gamma_scaled(
    qp: &QuasiPeriods,
    u: f64,
    z: Complex,
    spec: &QuadratureSpec,
) -> Result<GammaValue, GammaError> {
    if ![1.0, 0.5, 1.0 / 3.0].iter().any(|v| (v - u).abs() < 1e-12) {
        return Err(GammaError::InvalidScale(u));
    }
    gamma(&qp.scaled(u), z, spec)
}

/// Truncated q-shifted factorial (z; q)_∞ = Π_{j≥0} (1 − qʲ z).
///
/// The product stops once |qʲz| < eps and folds the first-order tail
/// exp(−qʲz/(1−q)) into the result.
pub fn qpoch(z: Complex, q: Complex, eps: f64) -> Result<Complex, GammaError> {
    let modulus = q.norm();
    if modulus > 1.0 - 1e-6 {
        return Err(GammaError::ModulusTooClose { modulus });
    }
    let mut p = c(1.0, 0.0);
    let mut w = z;
    let mut terms = 0usize;
    while w.norm() >= eps {
        p *= c(1.0, 0.0) - w;
        w *= q;
        terms += 1;
        if terms > 500_000 {
            return Err(GammaError::ModulusTooClose { modulus });
        }
    }
    Ok(p * (-w / (c(1.0, 0.0) - q)).exp())
}

/// log (z; q)_∞ as a sum of principal logarithms.
///
/// Returns the log together with a flag marking an exactly vanishing factor
/// (the product is zero in that case and the log is meaningless).
pub fn log_qpoch(z: Complex, q: Complex, eps: f64) -> Result<(Complex, bool), GammaError> {
    let modulus = q.norm();
    if modulus > 1.0 - 1e-6 {
        return Err(GammaError::ModulusTooClose { modulus });
    }
    let mut acc = c(0.0, 0.0);
    let mut w = z;
    let mut terms = 0usize;
    while w.norm() >= eps {
        let f = c(1.0, 0.0) - w;
        if f.norm() < 1e-250 {
            return Ok((c(0.0, 0.0), true));
        }
        acc += f.ln();
        w *= q;
        terms += 1;
        if terms > 500_000 {
            return Err(GammaError::ModulusTooClose { modulus });
        }
    }
    Ok((acc - w / (c(1.0, 0.0) - q), false))
}

/// Shintani's product form of G, valid for ω₊/ω₋ in the upper half-plane:
///
/// ```text
/// G(z) = (e^{−2π(z−iω)/ω₋}; q)_∞ / (e^{−2π(z+iω)/ω₊}; q̃)_∞
///        · exp(−(πi/24)(ω₊/ω₋ + ω₋/ω₊)) · exp(−πiz²/(2ω₊ω₋))
/// ```
pub fn shintani_product(qp: &QuasiPeriods, z: Complex, eps: f64) -> Result<Complex, GammaError> {
    let ratio = qp.wplus / qp.wminus;
    if ratio.im <= 0.0 {
        return Err(GammaError::ModularPointInvalid);
    }
    let q = qp.q()?;
    let qt = qp.qtilde()?;
    let pi = std::f64::consts::PI;
    let w = qp.omega();
    let num_arg = (-2.0 * pi * (z - mul_i(w)) / qp.wminus).exp();
    let den_arg = (-2.0 * pi * (z + mul_i(w)) / qp.wplus).exp();
    let (log_num, num_zero) = log_qpoch(num_arg, q, eps)?;
    let (log_den, den_zero) = log_qpoch(den_arg, qt, eps)?;
    if den_zero {
        return Err(GammaError::NearSingularity { distance: 0.0 });
    }
    if num_zero {
        return Ok(c(0.0, 0.0));
    }
    let pref = -mul_i(c(pi / 24.0, 0.0)) * (ratio + 1.0 / ratio)
        - mul_i(c(pi / 2.0, 0.0)) * z * z / (qp.wplus * qp.wminus);
    Ok((log_num - log_den + pref).exp())
}
