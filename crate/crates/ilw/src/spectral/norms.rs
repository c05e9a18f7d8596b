use super::field::RealField;

/// Fraction of the domain length, split between both ends, watched by the boundary guard.
pub const BOUNDARY_FRACTION: f64 = 0.1;

/// Boundary-mass fraction above which a warning is emitted.
pub const BOUNDARY_WARN_LEVEL: f64 = 1e-6;

/// Fraction of `‖u‖²` carried by the outer 10% of the domain (`|x| ≥ 0.45 L`).
pub fn boundary_mass_fraction(u: &RealField) -> f64 {
    let cut = 0.5 * u.grid().length() * (1.0 - BOUNDARY_FRACTION);
    let (mut outer, mut total) = (0.0, 0.0);
    for (&v, &x) in u.samples().iter().zip(u.grid().nodes()) {
        let w = v * v;
        total += w;
        if x.abs() >= cut {
            outer += w;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        outer / total
    }
}

/// `‖⟨x⟩^α u‖₂` with `⟨x⟩ = (1 + x²)^{1/2}` on centred coordinates.
pub fn weighted_norm(u: &RealField, alpha: f64) -> f64 {
    let fraction = boundary_mass_fraction(u);
    if fraction > BOUNDARY_WARN_LEVEL {
        log::warn!("weighted norm: boundary mass fraction {fraction:.2e} exceeds {BOUNDARY_WARN_LEVEL:e}");
    }
    let sum: f64 = u
        .samples()
        .iter()
        .zip(u.grid().nodes())
        .map(|(&v, &x)| (1.0 + x * x).powf(alpha) * v * v)
        .sum();
    (u.grid().spacing() * sum).sqrt()
}
