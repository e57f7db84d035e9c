//! 1-D quadrature: adaptive Gauss-Kronrod for reference integrals and
//! Gauss rules with ultraspherical weight `(1-x²)^α` for the polar
//! directions of spherical grids.

use crate::numeric::gamma_half;
use nalgebra::DMatrix;

// G7-K15 pair (QUADPACK xgk/wgk/wg constants).
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let fsum = f(mid - dx) + f(mid + dx);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }
    kronrod *= half;
    gauss *= half;
    (kronrod, (kronrod - gauss).abs())
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// The error budget `rel_tol · ∫|f|` is allocated to subintervals in
/// proportion to their length, so oscillatory integrands with vanishing
/// integrals still terminate.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (total, _) = gk15(&f, a, b);
    let (abs_total, _) = gk15(&|x| f(x).abs(), a, b);
    let scale = abs_total.abs().max(total.abs()).max(1e-300);
    let span = (b - a).abs();
    let mut stack = vec![(a, b, 0u32)];
    let mut acc = 0.0f64;
    let mut budget = 4_000_000usize; // eval cap; GK15 converges long before
    while let Some((lo, hi, depth)) = stack.pop() {
        let (val, err) = gk15(&f, lo, hi);
        let allowance = rel_tol * scale * ((hi - lo).abs() / span);
        budget = budget.saturating_sub(1);
        if err <= allowance || err <= 1e-300 || depth >= 40 || budget == 0 {
            acc += val;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    acc
}

/// A 1-D Gauss rule: nodes and positive weights.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Gauss rule for the weight `(1-x²)^α` on `[-1, 1]`, computed by
/// Golub-Welsch from the symmetric Jacobi recurrence. `two_alpha` passes
/// `2α` so half-integer exponents stay exact. Exact for polynomials of
/// degree `≤ 2·len - 1` against that weight.
pub fn gauss_gegenbauer(len: usize, two_alpha: usize) -> GaussRule {
    assert!(len >= 1);
    let alpha = two_alpha as f64 / 2.0;
    // μ0 = ∫ (1-x²)^α dx = √π Γ(α+1)/Γ(α+3/2)
    let mu0 = std::f64::consts::PI.sqrt() * gamma_half(two_alpha + 2) / gamma_half(two_alpha + 3);
    if len == 1 {
        return GaussRule {
            nodes: vec![0.0],
            weights: vec![mu0],
        };
    }
    let mut jacobi = DMatrix::<f64>::zeros(len, len);
    for j in 1..len {
        let jf = j as f64;
        let b = jf * (jf + 2.0 * alpha)
            / ((2.0 * jf + 2.0 * alpha + 1.0) * (2.0 * jf + 2.0 * alpha - 1.0));
        let sb = b.sqrt();
        jacobi[(j, j - 1)] = sb;
        jacobi[(j - 1, j)] = sb;
    }
    let eig = nalgebra::SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..len)
        .map(|i| {
            let x = eig.eigenvalues[i];
            let w = mu0 * eig.eigenvectors[(0, i)] * eig.eigenvectors[(0, i)];
            (x, w)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    // enforce the exact ± symmetry of the rule
    let n = pairs.len();
    for i in 0..n / 2 {
        let x = 0.5 * (pairs[n - 1 - i].0 - pairs[i].0);
        let w = 0.5 * (pairs[i].1 + pairs[n - 1 - i].1);
        pairs[i] = (-x, w);
        pairs[n - 1 - i] = (x, w);
    }
    if n % 2 == 1 {
        pairs[n / 2].0 = 0.0;
    }
    GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Classic Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(len: usize) -> GaussRule {
    gauss_gegenbauer(len, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn adaptive_smooth_integrals() {
        assert_relative_eq!(integrate(|x| x * x, 0.0, 1.0, 1e-13), 1.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(integrate(f64::sin, 0.0, PI, 1e-13), 2.0, max_relative = 1e-12);
        assert_relative_eq!(
            integrate(|x| x.sinh().powi(3), 0.0, 2.0, 1e-13),
            // ∫ sinh³ = cosh³/3 − cosh evaluated 0..2
            (2.0_f64.cosh().powi(3) / 3.0 - 2.0_f64.cosh()) - (1.0 / 3.0 - 1.0),
            max_relative = 1e-12
        );
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        // narrow bump still integrates to the erf value
        let v = integrate(|x| (-(x * x) * 400.0).exp(), -1.0, 1.0, 1e-12);
        assert_relative_eq!(v, (PI / 400.0).sqrt(), max_relative = 1e-10);
    }

    #[test]
    fn legendre_rule_matches_known_nodes() {
        let r = gauss_legendre(5);
        assert_relative_eq!(r.nodes[0], -0.9061798459386640, max_relative = 1e-12);
        assert_relative_eq!(r.nodes[2], 0.0, epsilon = 1e-14);
        assert_relative_eq!(r.weights[2], 0.5688888888888889, max_relative = 1e-12);
        let total: f64 = r.weights.iter().sum();
        assert_relative_eq!(total, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn gegenbauer_rules_are_polynomially_exact() {
        // weight (1-x²)^{α}, α = ta/2: check moments against adaptive reference
        for ta in 0..=4usize {
            let rule = gauss_gegenbauer(8, ta);
            let alpha = ta as f64 / 2.0;
            for deg in 0..=15usize {
                let exact = integrate(|x| (1.0 - x * x).powf(alpha) * x.powi(deg as i32), -1.0, 1.0, 1e-14);
                let approx: f64 = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(x, w)| w * x.powi(deg as i32))
                    .sum();
                assert!(
                    (approx - exact).abs() <= 1e-13 * (1.0 + exact.abs()),
                    "ta={ta} deg={deg}: {approx} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn chebyshev_u_special_case() {
        // α = 1/2 has the closed-form rule x_i = cos(iπ/(N+1))
        let n = 9;
        let rule = gauss_gegenbauer(n, 1);
        for (i, x) in rule.nodes.iter().enumerate() {
            let expect = ((n - i) as f64 * PI / (n as f64 + 1.0)).cos();
            assert_relative_eq!(*x, expect, epsilon = 1e-12);
        }
    }
}
