//! Geometry of the flat cone C(S¹_ρ): chords, image angles and the
//! diffraction abbreviations α, β, φ₁, φ₂.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Cone with angular period 2πρ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cone {
    rho: f64,
}

impl Cone {
    pub fn new(rho: f64) -> Result<Self> {
        if !(rho > 0.0) || !rho.is_finite() {
            return domain(format!("cone radius must be positive and finite, got {rho}"));
        }
        Ok(Cone { rho })
    }

    pub fn rho(self) -> f64 {
        self.rho
    }

    pub fn period(self) -> f64 {
        2.0 * PI * self.rho
    }

    /// Reduces θ into (−πρ, πρ].
    pub fn reduce(self, theta: f64) -> f64 {
        let p = self.period();
        let mut t = theta - p * (theta / p).round();
        if t <= -0.5 * p {
            t += p;
        } else if t > 0.5 * p {
            t -= p;
        }
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    pub r: f64,
    pub theta: f64,
}

impl PolarPoint {
    /// A point on `cone` with its angle reduced to (−πρ, πρ].
    pub fn on(cone: Cone, r: f64, theta: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return domain(format!("radial coordinate must be nonnegative, got {r}"));
        }
        Ok(PolarPoint { r, theta: cone.reduce(theta) })
    }
}

/// (r₁² + r₂² − 2r₁r₂ cos θ)^{1/2}.
pub fn chord(r1: f64, r2: f64, theta: f64) -> f64 {
    // written as (r₁−r₂)² + 4r₁r₂ sin²(θ/2) to avoid cancellation near θ = 0
    let s = (0.5 * theta).sin();
    ((r1 - r2).powi(2) + 4.0 * r1 * r2 * s * s).sqrt()
}

/// All (θ₁−θ₂) + j·2πρ lying in [−π, π], ascending.
pub fn image_angles(theta1: f64, theta2: f64, cone: Cone) -> Vec<f64> {
    let d = theta1 - theta2;
    let p = cone.period();
    let jlo = ((-PI - d) / p).ceil() as i64;
    let jhi = ((PI - d) / p).floor() as i64;
    (jlo - 1..=jhi + 1).map(|j| d + j as f64 * p).filter(|a| (-PI..=PI).contains(a)).collect()
}

/// α, β = arccosh α and the angles φ₁, φ₂ of the diffracted wave.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffractionGeometry {
    pub alpha: f64,
    pub beta: f64,
    pub phi1: f64,
    pub phi2: f64,
}

pub fn diffraction_geometry(t: f64, r1: f64, r2: f64, theta_diff: f64, cone: Cone) -> Result<DiffractionGeometry> {
    if !(r1 > 0.0 && r2 > 0.0) {
        return domain("diffraction geometry needs r1, r2 > 0");
    }
    if t < r1 + r2 {
        return Err(Error::Regime(format!("t = {t} < r1 + r2 = {}: the diffracted wave has not arrived", r1 + r2)));
    }
    // α − 1 = (t − r₁ − r₂)(t + r₁ + r₂)/(2r₁r₂), exact at the front
    let am1 = ((t - (r1 + r2)) * (t + r1 + r2) / (2.0 * r1 * r2)).max(0.0);
    let alpha = 1.0 + am1;
    let beta = (am1 + (am1 * (am1 + 2.0)).sqrt()).ln_1p();
    let rho = cone.rho();
    Ok(DiffractionGeometry { alpha, beta, phi1: (PI + theta_diff) / rho, phi2: (PI - theta_diff) / rho })
}

/// (r₁² + r₂² + 2r₁r₂ cosh s)^{1/2}.
#[allow(non_snake_case)]
pub fn D(r1: f64, r2: f64, s: f64) -> f64 {
    // (r₁+r₂)² + 4r₁r₂ sinh²(s/2)
    let sh = (0.5 * s).sinh();
    ((r1 + r2).powi(2) + 4.0 * r1 * r2 * sh * sh).sqrt()
}

/// ∂D/∂s = r₁r₂ sinh s / D.
pub fn d_ds(r1: f64, r2: f64, s: f64) -> f64 {
    r1 * r2 * s.sinh() / D(r1, r2, s)
}
