//! The three simply connected space forms and their closed-form geometry:
//! unit-sphere areas, geodesic-sphere area/volume profiles, and inverses.

use crate::error::{Error, Result};
use crate::numeric::gamma_half;
use crate::quad;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Ambient sectional curvature, normalized to `{-1, 0, +1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Curvature {
    Hyperbolic,
    Flat,
    Spherical,
}

impl Curvature {
    pub fn from_i32(c: i32) -> Result<Self> {
        match c {
            -1 => Ok(Curvature::Hyperbolic),
            0 => Ok(Curvature::Flat),
            1 => Ok(Curvature::Spherical),
            other => Err(Error::Domain(format!(
                "curvature must be -1, 0, or +1 (got {other})"
            ))),
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Curvature::Hyperbolic => -1.0,
            Curvature::Flat => 0.0,
            Curvature::Spherical => 1.0,
        }
    }

    /// Generalized sine: `sinh`, identity, or `sin`.
    pub fn sn(self, r: f64) -> f64 {
        match self {
            Curvature::Hyperbolic => r.sinh(),
            Curvature::Flat => r,
            Curvature::Spherical => r.sin(),
        }
    }

    /// Generalized cosine `sn'`: `cosh`, 1, or `cos`.
    pub fn cs(self, r: f64) -> f64 {
        match self {
            Curvature::Hyperbolic => r.cosh(),
            Curvature::Flat => 1.0,
            Curvature::Spherical => r.cos(),
        }
    }
}

/// A space form `N^{n+1}(c)` together with the hypersurface dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceForm {
    curvature: Curvature,
    n: usize,
}

impl SpaceForm {
    pub fn new(curvature: Curvature, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!(
                "hypersurface dimension must be ≥ 2 (got {n})"
            )));
        }
        Ok(SpaceForm { curvature, n })
    }

    pub fn curvature(&self) -> Curvature {
        self.curvature
    }

    /// Hypersurface dimension `n`; the ambient dimension is `n + 1`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient Cartesian dimension of the embedding model: `n + 2` for
    /// `c = ±1` (round sphere / hyperboloid), `n + 1` for `c = 0`.
    pub fn ambient_dim(&self) -> usize {
        match self.curvature {
            Curvature::Flat => self.n + 1,
            _ => self.n + 2,
        }
    }

    /// Largest admissible radial value for a star hypersurface: `π/2` in
    /// the sphere (open-hemisphere containment), unbounded otherwise.
    pub fn max_radius(&self) -> f64 {
        match self.curvature {
            Curvature::Spherical => PI / 2.0,
            _ => f64::INFINITY,
        }
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("radius must be positive (got {r})")));
        }
        if self.curvature == Curvature::Spherical && r >= PI {
            return Err(Error::Domain(format!(
                "spherical geodesic radius must satisfy r < π (got {r})"
            )));
        }
        Ok(())
    }
}

/// Area `ω_n` of the unit `n`-sphere: `2 π^{(n+1)/2} / Γ((n+1)/2)`.
pub fn omega(n: usize) -> f64 {
    assert!(n >= 1, "omega(n) needs n ≥ 1");
    2.0 * PI.powf((n as f64 + 1.0) / 2.0) / gamma_half(n + 1)
}

/// Area of the geodesic sphere of radius `r`: `ω_n sn_c(r)^n`.
pub fn geodesic_sphere_area(sf: SpaceForm, r: f64) -> Result<f64> {
    sf.check_radius(r)?;
    Ok(omega(sf.n) * sf.curvature.sn(r).powi(sf.n as i32))
}

/// Volume of the geodesic ball of radius `r`: `ω_n ∫_0^r sn_c(s)^n ds`.
///
/// The reference path is adaptive quadrature so one code path serves every
/// `(c, n)`; closed forms live in the tests.
pub fn geodesic_ball_volume(sf: SpaceForm, r: f64) -> Result<f64> {
    sf.check_radius(r)?;
    let c = sf.curvature;
    let n = sf.n as i32;
    Ok(omega(sf.n) * quad::integrate(|s| c.sn(s).powi(n), 0.0, r, 1e-13))
}

/// Inverse of [`geodesic_sphere_area`]: the unique radius whose geodesic
/// sphere has the given area. In the sphere the hemisphere branch
/// `r ∈ (0, π/2]` is returned; areas above `ω_n` have no solution.
pub fn radius_from_area(sf: SpaceForm, area: f64) -> Result<f64> {
    if !(area > 0.0) || !area.is_finite() {
        return Err(Error::Domain(format!("area must be positive (got {area})")));
    }
    let w = omega(sf.n);
    let s = (area / w).powf(1.0 / sf.n as f64);
    match sf.curvature {
        Curvature::Flat => Ok(s),
        Curvature::Hyperbolic => Ok(s.asinh()),
        Curvature::Spherical => {
            if area > w * (1.0 + 1e-12) {
                return Err(Error::NoSolution(format!(
                    "spherical area {area} exceeds the equator area ω_n = {w}"
                )));
            }
            Ok(s.min(1.0).asin())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sf(c: i32, n: usize) -> SpaceForm {
        SpaceForm::new(Curvature::from_i32(c).unwrap(), n).unwrap()
    }

    #[test]
    fn omega_standard_values() {
        assert_relative_eq!(omega(1), 2.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(omega(2), 4.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(omega(3), 2.0 * PI * PI, max_relative = 1e-14);
        assert_relative_eq!(omega(4), 8.0 * PI * PI / 3.0, max_relative = 1e-14);
        assert_relative_eq!(omega(5), PI.powi(3), max_relative = 1e-14);
    }

    #[test]
    fn sphere_area_examples() {
        // equator of S^3 is a unit 2-sphere
        assert_relative_eq!(
            geodesic_sphere_area(sf(1, 2), PI / 2.0).unwrap(),
            4.0 * PI,
            max_relative = 1e-14
        );
        // ω_3 sinh³(1); the closed form is the oracle
        assert_relative_eq!(
            geodesic_sphere_area(sf(-1, 3), 1.0).unwrap(),
            2.0 * PI * PI * 1.0_f64.sinh().powi(3),
            max_relative = 1e-14
        );
        // Euclidean sphere area 4πr²
        assert_relative_eq!(
            geodesic_sphere_area(sf(0, 2), 2.0).unwrap(),
            16.0 * PI,
            max_relative = 1e-14
        );
    }

    #[test]
    fn sphere_area_domain_errors() {
        assert!(geodesic_sphere_area(sf(1, 2), 3.5).is_err());
        assert!(geodesic_sphere_area(sf(0, 2), 0.0).is_err());
        assert!(geodesic_sphere_area(sf(0, 2), -1.0).is_err());
    }

    #[test]
    fn ball_volume_examples() {
        // Euclidean unit ball in R³
        assert_relative_eq!(
            geodesic_ball_volume(sf(0, 2), 1.0).unwrap(),
            4.0 * PI / 3.0,
            max_relative = 1e-12
        );
        // hemisphere of S³: ω_2 ∫_0^{π/2} sin² = 4π · π/4 = π²
        assert_relative_eq!(
            geodesic_ball_volume(sf(1, 2), PI / 2.0).unwrap(),
            PI * PI,
            max_relative = 1e-12
        );
        // hyperbolic small-radius limit is Euclidean
        let r = 1e-4;
        assert_relative_eq!(
            geodesic_ball_volume(sf(-1, 2), r).unwrap(),
            4.0 * PI / 3.0 * r.powi(3),
            max_relative = 1e-6
        );
        // closed form ω_3 ∫_0^r sinh³ = ω_3 (cosh³r/3 − cosh r + 2/3)
        let r = 1.3;
        assert_relative_eq!(
            geodesic_ball_volume(sf(-1, 3), r).unwrap(),
            2.0 * PI * PI * (r.cosh().powi(3) / 3.0 - r.cosh() + 2.0 / 3.0),
            max_relative = 1e-12
        );
    }

    #[test]
    fn radius_inversion_examples() {
        assert_relative_eq!(radius_from_area(sf(0, 2), 16.0 * PI).unwrap(), 2.0, max_relative = 1e-14);
        assert_relative_eq!(
            radius_from_area(sf(1, 2), 4.0 * PI).unwrap(),
            PI / 2.0,
            max_relative = 1e-14
        );
        let area = 2.0 * PI * PI * 1.0_f64.sinh().powi(3);
        assert_relative_eq!(radius_from_area(sf(-1, 3), area).unwrap(), 1.0, max_relative = 1e-13);
        assert!(radius_from_area(sf(1, 2), 4.0 * PI + 1.0).is_err());
    }

    #[test]
    fn radius_area_round_trip() {
        for c in [-1, 0, 1] {
            for n in 2..=6 {
                let sf = sf(c, n);
                for i in 1..=20 {
                    let r = if c == 1 {
                        PI / 2.0 * i as f64 / 21.0
                    } else {
                        3.0 * i as f64 / 20.0
                    };
                    let area = geodesic_sphere_area(sf, r).unwrap();
                    let back = radius_from_area(sf, area).unwrap();
                    assert_relative_eq!(back, r, max_relative = 1e-10);
                }
            }
        }
    }

    #[test]
    fn ball_volume_derivative_is_sphere_area() {
        // fundamental theorem of calculus check at 1e-8
        for c in [-1, 0, 1] {
            for n in [2, 4] {
                let sf = sf(c, n);
                for r in [0.4, 0.9, 1.3] {
                    let h = 1e-5;
                    let dv = (geodesic_ball_volume(sf, r + h).unwrap()
                        - geodesic_ball_volume(sf, r - h).unwrap())
                        / (2.0 * h);
                    let s = geodesic_sphere_area(sf, r).unwrap();
                    assert_relative_eq!(dv, s, max_relative = 1e-8);
                }
            }
        }
    }

    #[test]
    fn ball_volume_strictly_increasing() {
        let sf = sf(-1, 3);
        let mut prev = 0.0;
        for i in 1..=30 {
            let v = geodesic_ball_volume(sf, i as f64 * 0.1).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn hyperbolic_area_asymptotics() {
        // ln S(r) / r → n for large r
        for n in [2, 3, 5] {
            let sf = sf(-1, n);
            let dev = |r: f64| (geodesic_sphere_area(sf, r).unwrap().ln() / r - n as f64).abs();
            // deviation decays like 1/r and is already small at r = 40
            assert!(dev(40.0) < 0.1);
            assert!(dev(40.0) < 0.55 * dev(20.0));
        }
    }
}
