use super::report::RatioReport;
use crate::error::{Error, Result};
use crate::spectral::operators::{bessel, derivative, riesz};
use crate::spectral::RealField;

/// `⟨x⟩^w J^s f`, skipping exact identities.
fn weighted_bessel(f: &RealField, w: f64, s: f64) -> Result<RealField> {
    let g = if s == 0.0 { f.clone() } else { bessel(s, f.grid()).apply(f)? };
    if w == 0.0 {
        return Ok(g);
    }
    let nodes = f.grid().nodes();
    Ok(RealField::from_parts(
        f.grid(),
        g.samples().iter().zip(nodes).map(|(v, x)| (1.0 + x * x).powf(0.5 * w) * v).collect(),
        f.time(),
    ))
}

fn check_theta(theta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&theta) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("theta = {theta} must lie in [0, 1]")))
    }
}

/// `‖⟨x⟩^{θb} J^{(1-θ)a} f‖₂` against `‖⟨x⟩^b f‖₂^θ ‖J^a f‖₂^{1-θ}`.
pub fn check_interpolation(f: &RealField, a: f64, b: f64, theta: f64) -> Result<RatioReport> {
    check_theta(theta)?;
    let lhs = weighted_bessel(f, theta * b, (1.0 - theta) * a)?.l2_norm();
    let weighted = weighted_bessel(f, b, 0.0)?.l2_norm();
    let smooth = weighted_bessel(f, 0.0, a)?.l2_norm();
    let rhs = weighted.powf(theta) * smooth.powf(1.0 - theta);
    Ok(RatioReport::single("interpolation", format!("a={a},b={b},theta={theta}"), lhs, rhs))
}

/// `‖⟨x⟩^{θa+(1-θ)c} J^{θb+(1-θ)d} f‖₂` against `‖⟨x⟩^a J^b f‖₂^θ ‖⟨x⟩^c J^d f‖₂^{1-θ}`.
pub fn check_interpolation_full(f: &RealField, a: f64, b: f64, c: f64, d: f64, theta: f64) -> Result<RatioReport> {
    check_theta(theta)?;
    let (w, s) = if theta == 1.0 {
        (a, b)
    } else if theta == 0.0 {
        (c, d)
    } else {
        (theta * a + (1.0 - theta) * c, theta * b + (1.0 - theta) * d)
    };
    let lhs = weighted_bessel(f, w, s)?.l2_norm();
    let first = weighted_bessel(f, a, b)?.l2_norm();
    let second = weighted_bessel(f, c, d)?.l2_norm();
    let rhs = first.powf(theta) * second.powf(1.0 - theta);
    Ok(RatioReport::single("interpolation-full", format!("a={a},b={b},c={c},d={d},theta={theta}"), lhs, rhs))
}

/// `‖f‖₃` against `‖f‖₂^{2/3} ‖D^{1/2} f‖₂^{1/3}`.
pub fn check_gns(f: &RealField) -> Result<RatioReport> {
    let lhs = f.lp_norm(3.0);
    let rhs = f.l2_norm().powf(2.0 / 3.0) * riesz(0.5, f.grid()).apply(f)?.l2_norm().powf(1.0 / 3.0);
    Ok(RatioReport::single("gns", "f", lhs, rhs))
}

fn product(f: &RealField, g: &RealField) -> Result<RealField> {
    f.zip_with(g, |a, b| a * b)
}

/// `‖[J^s, f] g‖₂` against `‖∂x f‖_∞ ‖J^{s-1} g‖₂ + ‖J^s f‖₂ ‖g‖_∞`.
///
/// The sup norms are grid maxima.
pub fn check_kato_ponce(f: &RealField, g: &RealField, s: f64) -> Result<RatioReport> {
    let grid = f.grid();
    let js = bessel(s, grid);
    let comm = js.apply(&product(f, g)?)?.zip_with(&product(f, &js.apply(g)?)?, |a, b| a - b)?;
    let fx = derivative(grid).apply(f)?;
    let rhs = fx.max_abs() * bessel(s - 1.0, grid).apply(g)?.l2_norm() + js.apply(f)?.l2_norm() * g.max_abs();
    Ok(RatioReport::single(format!("kato-ponce[s={s}]"), "f,g", comm.l2_norm(), rhs))
}

/// `‖J^s (fg)‖₂` against `‖f‖_∞ ‖J^s g‖₂ + ‖g‖_∞ ‖J^s f‖₂`.
pub fn check_leibniz(f: &RealField, g: &RealField, s: f64) -> Result<RatioReport> {
    let js = bessel(s, f.grid());
    let lhs = js.apply(&product(f, g)?)?.l2_norm();
    let rhs = f.max_abs() * js.apply(g)?.l2_norm() + g.max_abs() * js.apply(f)?.l2_norm();
    Ok(RatioReport::single(format!("leibniz[s={s}]"), "f,g", lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;

    fn gaussian(g: &Grid) -> RealField {
        RealField::from_fn(g, |x| (-(x - 0.5) * (x - 0.5)).exp())
    }

    #[test]
    fn interpolation_endpoints_are_exact() {
        let g = Grid::new(512, 100.0).unwrap();
        let f = gaussian(&g);
        assert_eq!(check_interpolation(&f, 1.0, 1.0, 0.0).unwrap().ratio(), Some(1.0));
        assert_eq!(check_interpolation(&f, 1.0, 1.0, 1.0).unwrap().ratio(), Some(1.0));
        assert_eq!(check_interpolation_full(&f, 1.0, 0.5, 0.0, 2.0, 0.0).unwrap().ratio(), Some(1.0));
        assert_eq!(check_interpolation_full(&f, 1.0, 0.5, 0.0, 2.0, 1.0).unwrap().ratio(), Some(1.0));
        let mid = check_interpolation(&f, 1.0, 1.0, 0.5).unwrap().ratio().unwrap();
        assert!(mid > 0.0 && mid.is_finite());
        assert!(check_interpolation(&f, 1.0, 1.0, 1.5).is_err());
    }

    #[test]
    fn gns_is_dilation_and_amplitude_invariant() {
        let g = Grid::new(1024, 100.0).unwrap();
        let f = gaussian(&g);
        let base = check_gns(&f).unwrap().ratio().unwrap();
        for lambda in [0.5, 2.0] {
            let r = check_gns(&f.dilated(lambda).unwrap()).unwrap().ratio().unwrap();
            assert!((r - base).abs() < 1e-10 * base);
        }
        let r2 = check_gns(&f.scaled(2.0)).unwrap().ratio().unwrap();
        assert!((r2 - base).abs() < 1e-10 * base);
        assert!(check_gns(&RealField::zeros(&g)).unwrap().ratio().is_none());
    }

    #[test]
    fn kato_ponce_degenerate_cases() {
        let g = Grid::new(512, 100.0).unwrap();
        let f = gaussian(&g);
        let one = RealField::from_fn(&g, |_| 1.0);
        let r = check_kato_ponce(&one, &f, 1.0).unwrap();
        assert!(r.ratio().unwrap() < 1e-13);
        let z = RealField::zeros(&g);
        assert!(check_kato_ponce(&f, &z, 1.0).unwrap().ratio().is_none());
        assert!(check_leibniz(&f, &z, 1.0).unwrap().ratio().is_none());
        let r = check_leibniz(&f, &f, 1.5).unwrap().ratio().unwrap();
        assert!(r > 0.0 && r.is_finite());
    }
}
