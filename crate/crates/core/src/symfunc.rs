//! Normalized elementary symmetric functions of principal curvatures,
//! Newton-MacLaurin inequality reports, Garding cone membership, and the
//! Gauss-Bonnet curvature reductions on hypersurfaces in space forms.

use crate::error::{Error, Result};
use crate::numeric::{binomial, factorial};
use crate::spaceform::SpaceForm;

/// Principal curvatures `κ_1..κ_n` at a point (eigenvalues of the shape
/// operator with respect to the outward normal).
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalCurvatures {
    kappa: Vec<f64>,
}

impl PrincipalCurvatures {
    pub fn new(kappa: Vec<f64>) -> Result<Self> {
        if kappa.len() < 2 {
            return Err(Error::Domain(format!(
                "need n ≥ 2 principal curvatures (got {})",
                kappa.len()
            )));
        }
        if kappa.iter().any(|k| !k.is_finite()) {
            return Err(Error::Domain("non-finite principal curvature".into()));
        }
        Ok(PrincipalCurvatures { kappa })
    }

    pub fn constant(value: f64, n: usize) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn n(&self) -> usize {
        self.kappa.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.kappa
    }

    pub fn min(&self) -> f64 {
        self.kappa.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

/// All elementary symmetric polynomials `σ_0..σ_n` of the given values,
/// by incremental multiplication of `Π_i (1 + x κ_i)`. O(n²) and stable
/// for mixed-sign inputs; never enumerates subsets.
pub fn elementary_all(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut e = vec![0.0; n + 1];
    e[0] = 1.0;
    for (i, &k) in values.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] += k * e[j - 1];
        }
    }
    e
}

/// All normalized mean curvatures `p_0..p_n`, `p_k = σ_k / C(n,k)`.
pub fn p_all(kappa: &PrincipalCurvatures) -> Vec<f64> {
    let n = kappa.n();
    elementary_all(kappa.values())
        .into_iter()
        .enumerate()
        .map(|(k, e)| e / binomial(n, k))
        .collect()
}

/// The `k`-th normalized mean curvature `p_k = σ_k(κ) / C(n,k)`.
pub fn p_k(kappa: &PrincipalCurvatures, k: usize) -> Result<f64> {
    let n = kappa.n();
    if k > n {
        return Err(Error::Domain(format!("p_k needs k ≤ n = {n} (got k = {k})")));
    }
    Ok(p_all(kappa)[k])
}

/// Garding cone membership for `Γ_k^+` (strict) and its closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GardingMembership {
    /// `p_j > 0` for all `j ≤ k`.
    pub strict: bool,
    /// `p_j ≥ 0` for all `j ≤ k`.
    pub closure: bool,
}

/// Tests whether `κ` lies in the Garding cone `Γ_k^+` and in its closure.
pub fn garding_member(kappa: &PrincipalCurvatures, k: usize) -> Result<GardingMembership> {
    let n = kappa.n();
    if k < 1 || k > n {
        return Err(Error::Domain(format!(
            "Garding cone index must satisfy 1 ≤ k ≤ n = {n} (got {k})"
        )));
    }
    let p = p_all(kappa);
    let strict = p[1..=k].iter().all(|&v| v > 0.0);
    let closure = p[1..=k].iter().all(|&v| v >= 0.0);
    Ok(GardingMembership { strict, closure })
}

/// Result of checking the Newton-MacLaurin inequalities at one point.
#[derive(Debug, Clone)]
pub struct NewtonMaclaurinReport {
    /// Slack of `p_1 p_{k-1} - p_k ≥ 0`.
    pub product_slack: f64,
    /// Slacks of the chain `p_j^{1/j} ≥ p_{j+1}^{1/(j+1)}`, `j = 1..k-1`.
    pub chain_slacks: Vec<f64>,
    /// All inequalities hold (up to `-tolerance`).
    pub holds: bool,
    /// Every slack is below the equality threshold, i.e. `κ = c(1,…,1)`
    /// to working precision.
    pub equality: bool,
}

/// Checks `p_1 p_{k-1} ≥ p_k` and `p_1 ≥ p_2^{1/2} ≥ … ≥ p_k^{1/k}` for
/// `κ` in the closure of the Garding cone, reporting slacks. Equality is
/// declared when all slacks are ≤ `1e-12 · max(1, |p_1|^k)`.
pub fn newton_maclaurin_holds(kappa: &PrincipalCurvatures, k: usize) -> Result<NewtonMaclaurinReport> {
    let m = garding_member(kappa, k)?;
    if !m.closure {
        return Err(Error::Hypothesis(format!(
            "κ is not in the closure of the Garding cone Γ_{k}^+"
        )));
    }
    let p = p_all(kappa);
    let product_slack = p[1] * p[k - 1] - p[k];
    let mut chain_slacks = Vec::with_capacity(k.saturating_sub(1));
    for j in 1..k {
        let lhs = p[j].max(0.0).powf(1.0 / j as f64);
        let rhs = p[j + 1].max(0.0).powf(1.0 / (j + 1) as f64);
        chain_slacks.push(lhs - rhs);
    }
    let threshold = 1e-12 * p[1].abs().powi(k as i32).max(1.0);
    let tol = -threshold;
    let holds = product_slack >= tol && chain_slacks.iter().all(|&s| s >= tol);
    let equality =
        product_slack.abs() <= threshold && chain_slacks.iter().all(|&s| s.abs() <= threshold);
    Ok(NewtonMaclaurinReport {
        product_slack,
        chain_slacks,
        holds,
        equality,
    })
}

/// Gauss-Bonnet curvature of the induced metric, reduced to curvature
/// functions: `L_k = C(n,2k)(2k)! Σ_{i=0}^k C(k,i) c^i p_{2k-2i}`.
///
/// The `c = +1, -1, 0` specializations are the spherical, hyperbolic, and
/// Euclidean reductions of the Lovelock-type scalar.
pub fn gauss_bonnet_l(kappa: &PrincipalCurvatures, sf: SpaceForm, k: usize) -> Result<f64> {
    let n = kappa.n();
    Ok(binomial(n, 2 * k) * factorial(2 * k) * tilde_l(kappa, sf, k)?)
}

/// Normalized Gauss-Bonnet curvature `L̃_k = L_k / (C(n,2k)(2k)!)
/// = Σ_i C(k,i) c^i p_{2k-2i}`.
pub fn tilde_l(kappa: &PrincipalCurvatures, sf: SpaceForm, k: usize) -> Result<f64> {
    let n = kappa.n();
    if 2 * k > n {
        return Err(Error::Domain(format!(
            "Gauss-Bonnet curvature needs 2k ≤ n = {n} (got k = {k})"
        )));
    }
    let p = p_all(kappa);
    Ok(tilde_l_from_p(&p, sf.curvature().value(), k))
}

/// `L̃_k` as a linear functional of the `p`-vector (shared with the
/// integrated form, which is linear in the quermassintegrals).
pub fn tilde_l_from_p(p: &[f64], c: f64, k: usize) -> f64 {
    let mut acc = 0.0;
    let mut c_pow = 1.0;
    for i in 0..=k {
        acc += binomial(k, i) * c_pow * p[2 * k - 2 * i];
        c_pow *= c;
    }
    acc
}
