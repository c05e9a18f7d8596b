//! Smooth weight profiles used by the virial functionals.
//!
//! All profiles are built from the `C^∞` step
//! `B(t) = f(t) / (f(t) + f(1 - t))`, `f(t) = e^{-1/t}` for `t > 0`,
//! which is `0` for `t ≤ 0`, `1` for `t ≥ 1` and has maximal slope `2` at `t = 1/2`.

/// `B` and its first three derivatives at `t`.
pub fn smooth_step(t: f64) -> [f64; 4] {
    if t <= 0.0 {
        return [0.0, 0.0, 0.0, 0.0];
    }
    if t >= 1.0 {
        return [1.0, 0.0, 0.0, 0.0];
    }
    if t > 0.5 {
        let r = smooth_step(1.0 - t);
        return [1.0 - r[0], r[1], -r[2], r[3]];
    }
    let f = flat(t);
    let g = flat(1.0 - t);
    // g(t) = f(1 - t): odd derivatives change sign.
    let s = [f[0] + g[0], f[1] - g[1], f[2] + g[2], f[3] - g[3]];
    let b0 = f[0] / s[0];
    let b1 = (f[1] - b0 * s[1]) / s[0];
    let b2 = (f[2] - 2.0 * b1 * s[1] - b0 * s[2]) / s[0];
    let b3 = (f[3] - 3.0 * b2 * s[1] - 3.0 * b1 * s[2] - b0 * s[3]) / s[0];
    [b0, b1, b2, b3]
}

/// `e^{-1/t}` and its first three derivatives for `0 < t < 1`.
fn flat(t: f64) -> [f64; 4] {
    let f = (-1.0 / t).exp();
    if f == 0.0 {
        return [0.0; 4];
    }
    let t2 = t * t;
    [f, f / t2, f * (1.0 - 2.0 * t) / (t2 * t2), f * (1.0 - 6.0 * t + 6.0 * t2) / (t2 * t2 * t2)]
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// The weight family `φ`, `ψ = ∫₀ˣ φ`, `χ` and `ζ`.
///
/// `φ = 1` on `[0, 1]`, `φ = e^{-g(x)}` with `g(x) = x B((x-1)/w)` on `[1, 1 + w]`
/// and `φ = e^{-x}` beyond, extended evenly. The blend in the exponent keeps
/// `e^{-x} ≤ φ ≤ 3e^{-x}`.
#[derive(Clone, Debug)]
pub struct WeightFamily {
    blend: f64,
    psi_knot: f64,
    gl_nodes: Vec<f64>,
    gl_weights: Vec<f64>,
}

impl Default for WeightFamily {
    fn default() -> Self {
        Self::new()
    }
}

impl WeightFamily {
    /// Width of the blend interval `[1, 1 + w]`.
    pub const BLEND: f64 = 0.5;
    const PANELS: usize = 8;

    pub fn new() -> Self {
        let (gl_nodes, gl_weights) = gauss_legendre(24);
        let mut family = Self { blend: Self::BLEND, psi_knot: 0.0, gl_nodes, gl_weights };
        family.psi_knot = 1.0 + family.blend_integral(1.0 + family.blend);
        family
    }

    /// `g`, `g'`, `g''`, `g'''` with `φ = e^{-g}` on `x ≥ 1`.
    fn exponent(&self, x: f64) -> [f64; 4] {
        let w = self.blend;
        let b = smooth_step((x - 1.0) / w);
        [
            x * b[0],
            b[0] + x * b[1] / w,
            2.0 * b[1] / w + x * b[2] / (w * w),
            3.0 * b[2] / (w * w) + x * b[3] / (w * w * w),
        ]
    }

    /// `φ` and its first three derivatives.
    pub fn phi_derivatives(&self, x: f64) -> [f64; 4] {
        let a = x.abs();
        let mut d = if a <= 1.0 {
            [1.0, 0.0, 0.0, 0.0]
        } else {
            let g = self.exponent(a);
            let p = (-g[0]).exp();
            [
                p,
                -g[1] * p,
                (g[1] * g[1] - g[2]) * p,
                (-g[1] * g[1] * g[1] + 3.0 * g[1] * g[2] - g[3]) * p,
            ]
        };
        if x < 0.0 {
            d[1] = -d[1];
            d[3] = -d[3];
        }
        d
    }

    pub fn phi(&self, x: f64) -> f64 {
        self.phi_derivatives(x)[0]
    }

    /// `∫₁ˣ φ` for `1 ≤ x ≤ 1 + w` by composite Gauss–Legendre quadrature.
    fn blend_integral(&self, x: f64) -> f64 {
        let width = (x - 1.0) / Self::PANELS as f64;
        let mut sum = 0.0;
        for p in 0..Self::PANELS {
            let mid = 1.0 + (p as f64 + 0.5) * width;
            for (n, w) in self.gl_nodes.iter().zip(&self.gl_weights) {
                sum += w * self.phi(mid + 0.5 * width * n);
            }
        }
        0.5 * width * sum
    }

    /// `ψ(x) = ∫₀ˣ φ`, odd.
    pub fn psi(&self, x: f64) -> f64 {
        let a = x.abs();
        let edge = 1.0 + self.blend;
        let v = if a <= 1.0 {
            a
        } else if a <= edge {
            1.0 + self.blend_integral(a)
        } else {
            self.psi_knot + (-edge).exp() - (-a).exp()
        };
        v.copysign(x)
    }

    /// `lim_{x→∞} ψ(x)`.
    pub fn psi_infinity(&self) -> f64 {
        self.psi_knot + (-(1.0 + self.blend)).exp()
    }

    /// `∫ φ²` over the real line.
    pub fn phi_l2_squared(&self) -> f64 {
        let edge = 1.0 + self.blend;
        let width = self.blend / Self::PANELS as f64;
        let mut blend = 0.0;
        for p in 0..Self::PANELS {
            let mid = 1.0 + (p as f64 + 0.5) * width;
            for (n, w) in self.gl_nodes.iter().zip(&self.gl_weights) {
                blend += w * self.phi(mid + 0.5 * width * n).powi(2);
            }
        }
        2.0 * (1.0 + 0.5 * width * blend + 0.5 * (-2.0 * edge).exp())
    }

    /// `σ ψ(x/σ)`.
    pub fn psi_sigma(&self, x: f64, sigma: f64) -> f64 {
        sigma * self.psi(x / sigma)
    }

    /// `λ φ(x/λ)`.
    pub fn phi_lambda(&self, x: f64, lambda: f64) -> f64 {
        lambda * self.phi(x / lambda)
    }

    /// Cut-off `χ(s) = B(s - 1)` and its first three derivatives.
    pub fn chi_derivatives(&self, s: f64) -> [f64; 4] {
        smooth_step(s - 1.0)
    }

    pub fn chi(&self, s: f64) -> f64 {
        self.chi_derivatives(s)[0]
    }

    /// Bump `ζ(x) = B(x + 1)(1 - B(x - 1))`: 1 on `[0, 1]`, 0 outside `(-1, 2)`.
    pub fn zeta(&self, x: f64) -> f64 {
        smooth_step(x + 1.0)[0] * (1.0 - smooth_step(x - 1.0)[0])
    }

    /// `ζ_n(x) = ζ(x - n)`.
    pub fn zeta_n(&self, x: f64, n: i64) -> f64 {
        self.zeta(x - n as f64)
    }

    /// Sampled `max |φ'|/φ` and `max |φ''|/φ` over `[0, 1 + w]` (constant beyond).
    pub fn envelope_constants(&self) -> (f64, f64) {
        let mut c1 = 1.0f64;
        let mut c2 = 1.0f64;
        let n = 4000;
        for i in 0..=n {
            let x = (1.0 + self.blend) * i as f64 / n as f64;
            let d = self.phi_derivatives(x);
            c1 = c1.max(d[1].abs() / d[0]);
            c2 = c2.max(d[2].abs() / d[0]);
        }
        (c1, c2)
    }

    /// Sampled `max |χ^{(k)}|` for `k = 1, 2, 3`.
    pub fn chi_derivative_maxima(&self) -> [f64; 3] {
        let mut m = [0.0f64; 3];
        let n = 20000;
        for i in 0..=n {
            let d = self.chi_derivatives(1.0 + i as f64 / n as f64);
            for k in 0..3 {
                m[k] = m[k].max(d[k + 1].abs());
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_limits_and_slope() {
        assert_eq!(smooth_step(-0.1)[0], 0.0);
        assert_eq!(smooth_step(1.2)[0], 1.0);
        assert!((smooth_step(0.5)[0] - 0.5).abs() < 1e-15);
        assert!((smooth_step(0.5)[1] - 2.0).abs() < 1e-12);
        for i in 1..1000 {
            let t = i as f64 / 1000.0;
            assert!((smooth_step(t)[0] + smooth_step(1.0 - t)[0] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn step_derivatives_match_differences() {
        for t in [0.1, 0.3, 0.5, 0.77, 0.9] {
            let h = 1e-5;
            for k in 0..3 {
                let fd = (smooth_step(t + h)[k] - smooth_step(t - h)[k]) / (2.0 * h);
                let an = smooth_step(t)[k + 1];
                assert!((fd - an).abs() < 1e-6 * an.abs().max(1.0), "t {t} k {k}");
            }
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        let int: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((int - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn phi_constraints() {
        let wf = WeightFamily::new();
        assert_eq!(wf.phi(0.3), 1.0);
        assert_eq!(wf.phi(-1.0), 1.0);
        assert!((wf.phi(2.0) - (-2.0f64).exp()).abs() < 1e-16);
        let mut prev = 1.0;
        for i in 0..=3000 {
            let x = i as f64 * 0.002;
            let p = wf.phi(x);
            assert!(p >= (-x).exp() * (1.0 - 1e-14) && p <= 3.0 * (-x).exp(), "x = {x}");
            assert!(p <= prev);
            assert!(wf.phi_derivatives(x)[1] <= 0.0);
            prev = p;
        }
        let (c1, c2) = wf.envelope_constants();
        assert!(c1.is_finite() && c2.is_finite());
    }

    #[test]
    fn phi_derivatives_match_differences() {
        let wf = WeightFamily::new();
        for x in [-1.3, 1.1, 1.25, 1.4, 1.7] {
            let h = 1e-6;
            for k in 0..3 {
                let fd = (wf.phi_derivatives(x + h)[k] - wf.phi_derivatives(x - h)[k]) / (2.0 * h);
                let an = wf.phi_derivatives(x)[k + 1];
                assert!((fd - an).abs() < 1e-6 * an.abs().max(1.0), "x {x} k {k}: {fd} vs {an}");
            }
        }
    }

    #[test]
    fn psi_is_antiderivative() {
        let wf = WeightFamily::new();
        assert_eq!(wf.psi(0.0), 0.0);
        assert_eq!(wf.psi(-2.0), -wf.psi(2.0));
        for x in [0.5, 1.2, 1.5, 1.6, 3.0] {
            let h = 1e-6;
            let fd = (wf.psi(x + h) - wf.psi(x - h)) / (2.0 * h);
            assert!((fd - wf.phi(x)).abs() < 1e-8, "x {x}");
        }
        assert!((wf.psi(60.0) - wf.psi_infinity()).abs() < 1e-15);
        assert!(wf.psi_infinity() <= 1.0 + 3.0 * (-1.0f64).exp());
        assert_eq!(wf.psi_sigma(3.0, 2.0) / 2.0, wf.psi(1.5));
    }

    #[test]
    fn chi_constraints() {
        let wf = WeightFamily::new();
        assert_eq!(wf.chi(0.5), 0.0);
        assert_eq!(wf.chi(1.0), 0.0);
        assert_eq!(wf.chi(2.0), 1.0);
        for i in 1..100 {
            let s = 1.0 + i as f64 / 100.0;
            assert!(wf.chi_derivatives(s)[1] > 0.0);
        }
        let m = wf.chi_derivative_maxima();
        assert!((m[0] - 2.0).abs() < 1e-6);
    }

    #[test]
    fn zeta_bump() {
        let wf = WeightFamily::new();
        assert_eq!(wf.zeta(0.5), 1.0);
        assert_eq!(wf.zeta(-1.0), 0.0);
        assert_eq!(wf.zeta(2.0), 0.0);
        assert_eq!(wf.zeta_n(3.5, 3), 1.0);
    }
}
