//! Quadrature grids on `S^n` for radial graphs.
//!
//! Four layouts:
//!
//! - full tensor grid on `S²` (Gauss-Legendre polar × uniform azimuth),
//! - full tensor grid on `S³` (uniform-angle Chebyshev-U polar, then a
//!   Gauss-Legendre × uniform fiber sphere),
//! - axisymmetric Gauss grid for any `n` (Gauss-Gegenbauer nodes matched to
//!   the `sin^{n-1}θ` polar weight),
//! - axisymmetric uniform midpoint grid (used by the flow solver, which
//!   needs equispaced nodes); its weights are the interpolatory rule in the
//!   `cos jθ` basis, so polynomial exactness is preserved.
//!
//! All weights sum to `ω_n` and integrate spherical polynomials up to
//! [`SphericalGrid::declared_degree`] at machine precision.

use crate::quad;
use crate::spaceform::omega;
use crate::spectral::{trig_interp, AlphaDfs, AxisEngine, Barycentric, SphereDerivs, SphereEngine};
use rustfft::num_complex::Complex64;
use std::f64::consts::PI;

/// Chart derivatives of a scalar on the full `S³` grid.
pub struct S3Derivs {
    pub fa: Vec<f64>,
    pub fb: Vec<f64>,
    pub fg: Vec<f64>,
    pub faa: Vec<f64>,
    pub fbb: Vec<f64>,
    pub fgg: Vec<f64>,
    pub fab: Vec<f64>,
    pub fag: Vec<f64>,
    pub fbg: Vec<f64>,
}

/// Chart derivatives per grid family.
pub enum GridDerivs {
    /// Axisymmetric: `(ρ_x, ρ_θ, ρ_θθ)`.
    Axis {
        fx: Vec<f64>,
        ft: Vec<f64>,
        ftt: Vec<f64>,
    },
    S2(SphereDerivs),
    S3(S3Derivs),
}

enum Kind {
    FullS2 {
        eng: SphereEngine,
    },
    FullS3 {
        fiber: SphereEngine,
        dfs: AlphaDfs,
        alpha: Vec<f64>,
        sin_a: Vec<f64>,
        cos_a: Vec<f64>,
        /// Barycentric data on `cos α` in increasing order.
        bary_alpha: Barycentric,
        nalpha: usize,
    },
    AxisGauss {
        eng: AxisEngine,
    },
    AxisUniform {
        theta: Vec<f64>,
        sin_t: Vec<f64>,
        cos_t: Vec<f64>,
        spacing: f64,
    },
}

/// Quadrature grid on `S^n` with node directions, positive weights, and a
/// spectral differentiation backend.
pub struct SphericalGrid {
    n: usize,
    weights: Vec<f64>,
    /// Flattened unit directions in `R^{n+1}`, stride `n + 1`.
    directions: Vec<f64>,
    declared_degree: usize,
    kind: Kind,
}

impl SphericalGrid {
    /// Full grid on `S²`: `npolar` Gauss-Legendre nodes in `cos θ` ×
    /// `nazimuth` uniform azimuth nodes (`nazimuth` even).
    pub fn full_s2(npolar: usize, nazimuth: usize) -> Self {
        let eng = SphereEngine::new(npolar, nazimuth);
        let mut weights = Vec::with_capacity(npolar * nazimuth);
        let mut directions = Vec::with_capacity(npolar * nazimuth * 3);
        let wphi = 2.0 * PI / nazimuth as f64;
        for i in 0..npolar {
            for j in 0..nazimuth {
                let phi = 2.0 * PI * j as f64 / nazimuth as f64;
                weights.push(eng.polar_weights[i] * wphi);
                directions.extend_from_slice(&[
                    eng.cos_t[i],
                    eng.sin_t[i] * phi.cos(),
                    eng.sin_t[i] * phi.sin(),
                ]);
            }
        }
        SphericalGrid {
            n: 2,
            weights,
            directions,
            declared_degree: (2 * npolar - 1).min(nazimuth - 1),
            kind: Kind::FullS2 { eng },
        }
    }

    /// Full grid on `S³`: `nalpha` uniform interior polar angles
    /// (Chebyshev-U quadrature nodes), fiber sphere `nbeta × ngamma`.
    pub fn full_s3(nalpha: usize, nbeta: usize, ngamma: usize) -> Self {
        assert!(nalpha >= 4 && ngamma % 2 == 0);
        let fiber = SphereEngine::new(nbeta, ngamma);
        let dfs = AlphaDfs::new(nalpha);
        let alpha: Vec<f64> = (1..=nalpha)
            .map(|i| i as f64 * PI / (nalpha as f64 + 1.0))
            .collect();
        let sin_a: Vec<f64> = alpha.iter().map(|a| a.sin()).collect();
        let cos_a: Vec<f64> = alpha.iter().map(|a| a.cos()).collect();
        // Chebyshev-U weights for ∫ f(x) √(1-x²) dx
        let walpha: Vec<f64> = sin_a
            .iter()
            .map(|s| PI / (nalpha as f64 + 1.0) * s * s)
            .collect();
        let bary_alpha = Barycentric::new(cos_a.iter().rev().cloned().collect());
        let wgamma = 2.0 * PI / ngamma as f64;
        let count = nalpha * nbeta * ngamma;
        let mut weights = Vec::with_capacity(count);
        let mut directions = Vec::with_capacity(count * 4);
        for i in 0..nalpha {
            for j in 0..nbeta {
                for k in 0..ngamma {
                    let g = 2.0 * PI * k as f64 / ngamma as f64;
                    weights.push(walpha[i] * fiber.polar_weights[j] * wgamma);
                    let (sa, ca) = (sin_a[i], cos_a[i]);
                    let (sb, cb) = (fiber.sin_t[j], fiber.cos_t[j]);
                    directions.extend_from_slice(&[
                        ca,
                        sa * cb,
                        sa * sb * g.cos(),
                        sa * sb * g.sin(),
                    ]);
                }
            }
        }
        SphericalGrid {
            n: 3,
            weights,
            directions,
            declared_degree: (2 * nalpha - 1).min(2 * nbeta - 1).min(ngamma - 1),
            kind: Kind::FullS3 {
                fiber,
                dfs,
                alpha,
                sin_a,
                cos_a,
                bary_alpha,
                nalpha,
            },
        }
    }

    /// Axisymmetric grid on `S^n`: Gauss-Gegenbauer nodes in `cos θ`
    /// matched to the `sin^{n-1}θ` polar weight. Each node carries the
    /// measure of its whole latitude sphere.
    pub fn axis_gauss(n: usize, nodes: usize) -> Self {
        assert!(n >= 2);
        let rule = quad::gauss_gegenbauer(nodes, n - 2);
        let eng = AxisEngine::new(rule.nodes.clone());
        let fiber_area = omega(n - 1);
        let weights: Vec<f64> = rule.weights.iter().map(|w| w * fiber_area).collect();
        let mut directions = Vec::with_capacity(nodes * (n + 1));
        for i in 0..nodes {
            let mut u = vec![0.0; n + 1];
            u[0] = eng.cos_t[i];
            u[1] = eng.sin_t[i];
            directions.extend_from_slice(&u);
        }
        SphericalGrid {
            n,
            weights,
            directions,
            declared_degree: 2 * nodes - 1,
            kind: Kind::AxisGauss { eng },
        }
    }

    /// Axisymmetric grid on uniform midpoint angles `θ_i = (i+½)π/M`
    /// (Chebyshev points in `cos θ`), with interpolatory weights for the
    /// `sin^{n-1}θ` measure: exact for profile polynomials of degree `< M`.
    pub fn axis_uniform(n: usize, nodes: usize) -> Self {
        assert!(n >= 2 && nodes >= 8);
        let m = nodes;
        let spacing = PI / m as f64;
        let theta: Vec<f64> = (0..m).map(|i| (i as f64 + 0.5) * spacing).collect();
        let sin_t: Vec<f64> = theta.iter().map(|t| t.sin()).collect();
        let cos_t: Vec<f64> = theta.iter().map(|t| t.cos()).collect();
        // modified moments m_j = ∫_0^π cos(jθ) sin^{n-1}θ dθ, exact
        let moments: Vec<f64> = (0..m).map(|j| axis_moment(n - 1, j)).collect();
        let fiber_area = omega(n - 1);
        let weights: Vec<f64> = (0..m)
            .map(|i| {
                let mut w = 0.0;
                for (j, mj) in moments.iter().enumerate() {
                    let norm = if j == 0 { 1.0 } else { 2.0 };
                    w += norm / m as f64 * (j as f64 * theta[i]).cos() * mj;
                }
                w * fiber_area
            })
            .collect();
        assert!(
            weights.iter().all(|&w| w > 0.0),
            "interpolatory axis weights must stay positive"
        );
        let mut directions = Vec::with_capacity(m * (n + 1));
        for i in 0..m {
            let mut u = vec![0.0; n + 1];
            u[0] = cos_t[i];
            u[1] = sin_t[i];
            directions.extend_from_slice(&u);
        }
        SphericalGrid {
            n,
            weights,
            directions,
            declared_degree: m - 1,
            kind: Kind::AxisUniform {
                theta,
                sin_t,
                cos_t,
                spacing,
            },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn direction(&self, node: usize) -> &[f64] {
        let d = self.n + 1;
        &self.directions[node * d..(node + 1) * d]
    }

    /// Degree up to which spherical polynomials integrate exactly.
    pub fn declared_degree(&self) -> usize {
        self.declared_degree
    }

    pub fn is_axisymmetric(&self) -> bool {
        matches!(self.kind, Kind::AxisGauss { .. } | Kind::AxisUniform { .. })
    }

    /// Node spacing of the uniform axisymmetric layout.
    pub fn uniform_spacing(&self) -> Option<f64> {
        match &self.kind {
            Kind::AxisUniform { spacing, .. } => Some(*spacing),
            _ => None,
        }
    }

    /// Chart angles of a node: `[θ, 0, 0]`, `[θ, φ, 0]`, or `[α, β, γ]`.
    pub fn chart(&self, node: usize) -> [f64; 3] {
        match &self.kind {
            Kind::FullS2 { eng } => {
                let i = node / eng.nazimuth;
                let j = node % eng.nazimuth;
                [eng.theta[i], 2.0 * PI * j as f64 / eng.nazimuth as f64, 0.0]
            }
            Kind::FullS3 { fiber, alpha, .. } => {
                let per = fiber.npolar * fiber.nazimuth;
                let i = node / per;
                let r = node % per;
                let j = r / fiber.nazimuth;
                let k = r % fiber.nazimuth;
                [
                    alpha[i],
                    fiber.theta[j],
                    2.0 * PI * k as f64 / fiber.nazimuth as f64,
                ]
            }
            Kind::AxisGauss { eng } => [eng.theta[node], 0.0, 0.0],
            Kind::AxisUniform { theta, .. } => [theta[node], 0.0, 0.0],
        }
    }

    /// Chart angles of an arbitrary unit direction.
    pub fn chart_of_direction(&self, u: &[f64]) -> [f64; 3] {
        match &self.kind {
            Kind::FullS2 { .. } => {
                let t = u[0].clamp(-1.0, 1.0).acos();
                [t, u[2].atan2(u[1]).rem_euclid(2.0 * PI), 0.0]
            }
            Kind::FullS3 { .. } => {
                let a = u[0].clamp(-1.0, 1.0).acos();
                let s = a.sin().max(1e-300);
                let b = (u[1] / s).clamp(-1.0, 1.0).acos();
                let g = u[3].atan2(u[2]).rem_euclid(2.0 * PI);
                [a, b, g]
            }
            Kind::AxisGauss { .. } | Kind::AxisUniform { .. } => {
                let perp: f64 = u[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
                [perp.atan2(u[0]), 0.0, 0.0]
            }
        }
    }

    /// Orthonormal tangent frame at a node in ambient coordinates; returns
    /// the number of chart directions filled (1, 2, or 3).
    pub fn frame_basis(&self, node: usize, out: &mut [[f64; 4]; 3]) -> usize {
        for v in out.iter_mut() {
            *v = [0.0; 4];
        }
        match &self.kind {
            Kind::FullS2 { eng } => {
                let i = node / eng.nazimuth;
                let j = node % eng.nazimuth;
                let phi = 2.0 * PI * j as f64 / eng.nazimuth as f64;
                let (st, ct) = (eng.sin_t[i], eng.cos_t[i]);
                out[0][..3].copy_from_slice(&[-st, ct * phi.cos(), ct * phi.sin()]);
                out[1][..3].copy_from_slice(&[0.0, -phi.sin(), phi.cos()]);
                2
            }
            Kind::FullS3 {
                fiber,
                sin_a,
                cos_a,
                ..
            } => {
                let per = fiber.npolar * fiber.nazimuth;
                let i = node / per;
                let r = node % per;
                let j = r / fiber.nazimuth;
                let k = r % fiber.nazimuth;
                let g = 2.0 * PI * k as f64 / fiber.nazimuth as f64;
                let (sa, ca) = (sin_a[i], cos_a[i]);
                let (sb, cb) = (fiber.sin_t[j], fiber.cos_t[j]);
                out[0] = [-sa, ca * cb, ca * sb * g.cos(), ca * sb * g.sin()];
                out[1] = [0.0, -sb, cb * g.cos(), cb * g.sin()];
                out[2] = [0.0, 0.0, -g.sin(), g.cos()];
                3
            }
            Kind::AxisGauss { eng } => {
                out[0][0] = -eng.sin_t[node];
                out[0][1] = eng.cos_t[node];
                1
            }
            Kind::AxisUniform { sin_t, cos_t, .. } => {
                out[0][0] = -sin_t[node];
                out[0][1] = cos_t[node];
                1
            }
        }
    }

    /// All chart derivatives of a nodal scalar field.
    pub fn derivatives(&self, f: &[f64]) -> GridDerivs {
        assert_eq!(f.len(), self.node_count());
        match &self.kind {
            Kind::FullS2 { eng } => GridDerivs::S2(eng.derivatives(f)),
            Kind::FullS3 {
                fiber, dfs, nalpha, ..
            } => {
                let per = fiber.npolar * fiber.nazimuth;
                let count = f.len();
                let (nbeta, ngamma) = (fiber.npolar, fiber.nazimuth);
                let mut fb = vec![0.0; count];
                let mut fg = vec![0.0; count];
                let mut fbb = vec![0.0; count];
                let mut fgg = vec![0.0; count];
                let mut fbg = vec![0.0; count];
                for i in 0..*nalpha {
                    let d = fiber.derivatives(&f[i * per..(i + 1) * per]);
                    fb[i * per..(i + 1) * per].copy_from_slice(&d.ft);
                    fg[i * per..(i + 1) * per].copy_from_slice(&d.fp);
                    fbb[i * per..(i + 1) * per].copy_from_slice(&d.ftt);
                    fgg[i * per..(i + 1) * per].copy_from_slice(&d.fpp);
                    fbg[i * per..(i + 1) * per].copy_from_slice(&d.ftp);
                }
                let (p0, p1) = self.s3_pole_values(f);
                let mut fa = vec![0.0; count];
                let mut faa = vec![0.0; count];
                let mut col = vec![0.0; *nalpha];
                let mut mir = vec![0.0; *nalpha];
                let idx = |i: usize, j: usize, k: usize| (i * nbeta + j) * ngamma + k;
                for j in 0..nbeta {
                    let jm = nbeta - 1 - j;
                    for k in 0..ngamma {
                        let km = (k + ngamma / 2) % ngamma;
                        for i in 0..*nalpha {
                            col[i] = f[idx(i, j, k)];
                            mir[i] = f[idx(i, jm, km)];
                        }
                        let out = dfs.differentiate(&col, &mir, p0, p1);
                        for i in 0..*nalpha {
                            fa[idx(i, j, k)] = out.d1[i];
                            faa[idx(i, j, k)] = out.d2[i];
                        }
                    }
                }
                let mut fab = vec![0.0; count];
                let mut fag = vec![0.0; count];
                for i in 0..*nalpha {
                    let (db, dg) = fiber.first_derivatives(&fa[i * per..(i + 1) * per]);
                    fab[i * per..(i + 1) * per].copy_from_slice(&db);
                    fag[i * per..(i + 1) * per].copy_from_slice(&dg);
                }
                GridDerivs::S3(S3Derivs {
                    fa,
                    fb,
                    fg,
                    faa,
                    fbb,
                    fgg,
                    fab,
                    fag,
                    fbg,
                })
            }
            Kind::AxisGauss { eng } => {
                let (fx, ft, ftt) = eng.derivatives(f);
                GridDerivs::Axis { fx, ft, ftt }
            }
            Kind::AxisUniform {
                sin_t, spacing, ..
            } => {
                // 4th-order central differences with even-parity ghosts
                let m = f.len();
                let get = |i: isize| -> f64 {
                    let idx = if i < 0 {
                        (-i - 1) as usize
                    } else if i as usize >= m {
                        2 * m - 1 - i as usize
                    } else {
                        i as usize
                    };
                    f[idx]
                };
                let h = *spacing;
                let mut ft = vec![0.0; m];
                let mut ftt = vec![0.0; m];
                for i in 0..m {
                    let ii = i as isize;
                    ft[i] = (get(ii - 2) - 8.0 * get(ii - 1) + 8.0 * get(ii + 1) - get(ii + 2))
                        / (12.0 * h);
                    ftt[i] = (-get(ii - 2) + 16.0 * get(ii - 1) - 30.0 * get(ii)
                        + 16.0 * get(ii + 1)
                        - get(ii + 2))
                        / (12.0 * h * h);
                }
                let fx: Vec<f64> = (0..m).map(|i| -ft[i] / sin_t[i]).collect();
                GridDerivs::Axis { fx, ft, ftt }
            }
        }
    }

    fn s3_pole_values(&self, f: &[f64]) -> (f64, f64) {
        match &self.kind {
            Kind::FullS3 {
                fiber,
                bary_alpha,
                nalpha,
                ..
            } => {
                let per = fiber.npolar * fiber.nazimuth;
                let means: Vec<f64> = (0..*nalpha)
                    .map(|i| {
                        let mut acc = 0.0;
                        for j in 0..fiber.npolar {
                            for k in 0..fiber.nazimuth {
                                acc += fiber.polar_weights[j] * f[i * per + j * fiber.nazimuth + k];
                            }
                        }
                        acc / (2.0 * fiber.nazimuth as f64)
                    })
                    .collect();
                // bary_alpha nodes are cos α in increasing order (reverse of i)
                let rev: Vec<f64> = means.iter().rev().cloned().collect();
                (bary_alpha.eval(&rev, 1.0), bary_alpha.eval(&rev, -1.0))
            }
            _ => unreachable!(),
        }
    }

    /// Spectral interpolant of a nodal scalar field for off-grid
    /// evaluation at chart points.
    pub fn interpolant(&self, f: &[f64]) -> ScalarInterp<'_> {
        assert_eq!(f.len(), self.node_count());
        match &self.kind {
            Kind::FullS2 { eng } => ScalarInterp {
                grid: self,
                data: InterpData::S2 {
                    modes: eng.to_modes(f),
                },
            },
            Kind::FullS3 { fiber, nalpha, .. } => {
                let per = fiber.npolar * fiber.nazimuth;
                let mut modes = Vec::with_capacity(f.len());
                for i in 0..*nalpha {
                    modes.extend(fiber.to_modes(&f[i * per..(i + 1) * per]));
                }
                let (p0, p1) = self.s3_pole_values(f);
                ScalarInterp {
                    grid: self,
                    data: InterpData::S3 {
                        modes,
                        pole0: p0,
                        pole1: p1,
                    },
                }
            }
            Kind::AxisGauss { .. } => ScalarInterp {
                grid: self,
                data: InterpData::Axis { coeffs: f.to_vec() },
            },
            Kind::AxisUniform { theta, .. } => {
                // DCT-II coefficients in the cos(jθ) basis
                let m = f.len();
                let coeffs = (0..m)
                    .map(|j| {
                        let norm = if j == 0 { 1.0 } else { 2.0 };
                        norm / m as f64
                            * (0..m)
                                .map(|i| f[i] * (j as f64 * theta[i]).cos())
                                .sum::<f64>()
                    })
                    .collect();
                ScalarInterp {
                    grid: self,
                    data: InterpData::Axis { coeffs },
                }
            }
        }
    }
}

/// `∫_0^π cos(jθ) sin^p θ dθ` by the exact recurrence
/// `I^{(p)}_j = p(p-1)/(p²-j²) · I^{(p-2)}_j`, with the diagonal entries
/// `I^{(2q)}_{2q} = (-1)^q π/4^q` supplied in closed form.
fn axis_moment(p: usize, j: usize) -> f64 {
    if j % 2 == 1 {
        return 0.0;
    }
    let jf = j as f64;
    let (mut val, start) = if p % 2 == 0 {
        (if j == 0 { PI } else { 0.0 }, 0usize)
    } else {
        (2.0 / (1.0 - jf * jf), 1usize)
    };
    let mut q = start;
    while q < p {
        q += 2;
        if q == j {
            let half = (q / 2) as i32;
            val = if half % 2 == 0 { PI } else { -PI } / 4.0f64.powi(half);
        } else {
            val *= (q * (q - 1)) as f64 / ((q * q) as f64 - jf * jf);
        }
    }
    val
}

enum InterpData {
    S2 {
        modes: Vec<Complex64>,
    },
    S3 {
        /// Fiber-azimuth modes per `(α_i, β_j)` row.
        modes: Vec<Complex64>,
        pole0: f64,
        pole1: f64,
    },
    Axis {
        /// Nodal values (Gauss layout) or DCT coefficients (uniform layout).
        coeffs: Vec<f64>,
    },
}

/// Off-grid evaluator of a scalar field on a [`SphericalGrid`].
pub struct ScalarInterp<'g> {
    grid: &'g SphericalGrid,
    data: InterpData,
}

impl ScalarInterp<'_> {
    /// Evaluate at a chart point (angles as in [`SphericalGrid::chart`]).
    pub fn eval(&self, chart: [f64; 3]) -> f64 {
        match (&self.grid.kind, &self.data) {
            (Kind::FullS2 { eng }, InterpData::S2 { modes }) => {
                eng.eval_modes(modes, 0, chart[0], chart[1])
            }
            (
                Kind::FullS3 {
                    fiber, dfs, nalpha, ..
                },
                InterpData::S3 {
                    modes,
                    pole0,
                    pole1,
                },
            ) => {
                let (alpha, beta, gamma) = (chart[0], chart[1], chart[2]);
                let (nbeta, ngamma) = (fiber.npolar, fiber.nazimuth);
                let y = beta.cos();
                let sb = beta.sin();
                let cp = fiber.bary.coeff_vector(y);
                let cm = fiber.bary.coeff_vector(-y);
                let len = dfs.len;
                let mut acc = Complex64::ZERO;
                let mut circle = vec![Complex64::ZERO; len];
                for m in 0..ngamma {
                    let freq = fiber.wn[m];
                    let parity = (freq.abs() as usize) % 2;
                    let neg = if m % 2 == 0 { 1.0 } else { -1.0 }; // e^{imπ} for γ+π
                    let sfac = if parity == 1 { sb } else { 1.0 };
                    circle[0] = if m == 0 {
                        Complex64::new(*pole0, 0.0)
                    } else {
                        Complex64::ZERO
                    };
                    circle[*nalpha + 1] = if m == 0 {
                        Complex64::new(*pole1, 0.0)
                    } else {
                        Complex64::ZERO
                    };
                    for i in 0..*nalpha {
                        let mut vp = Complex64::ZERO;
                        let mut vm = Complex64::ZERO;
                        for j in 0..nbeta {
                            let val = modes[(i * nbeta + j) * ngamma + m];
                            let v = if parity == 1 {
                                val / fiber.sin_t[j]
                            } else {
                                val
                            };
                            vp += v * cp[j];
                            vm += v * cm[j];
                        }
                        circle[i + 1] = vp * sfac;
                        // mirrored half: slot len-(i+1) holds α = 2π - α_{i+1}
                        circle[len - (i + 1)] = vm * (sfac * neg);
                    }
                    let c = trig_interp(&circle, alpha);
                    acc += c * Complex64::new(0.0, freq * gamma).exp();
                }
                acc.re
            }
            (Kind::AxisGauss { eng }, InterpData::Axis { coeffs }) => eng.eval(coeffs, chart[0]),
            (Kind::AxisUniform { .. }, InterpData::Axis { coeffs }) => coeffs
                .iter()
                .enumerate()
                .map(|(j, a)| a * (j as f64 * chart[0]).cos())
                .sum(),
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    /// Mean of `(u·e)^{2d}` over `S^n`: `(2d-1)!! / ((n+1)(n+3)⋯(n+2d-1))`.
    fn even_power_mean(n: usize, d: usize) -> f64 {
        let mut num = 1.0;
        let mut den = 1.0;
        for i in 0..d {
            num *= (2 * i + 1) as f64;
            den *= (n + 1 + 2 * i) as f64;
        }
        num / den
    }

    fn grids() -> Vec<SphericalGrid> {
        vec![
            SphericalGrid::full_s2(16, 32),
            SphericalGrid::full_s3(12, 12, 24),
            SphericalGrid::axis_gauss(3, 24),
            SphericalGrid::axis_gauss(5, 24),
            SphericalGrid::axis_uniform(4, 48),
        ]
    }

    #[test]
    fn weights_sum_to_sphere_area() {
        for g in grids() {
            let total: f64 = g.weights().iter().sum();
            assert_relative_eq!(total, omega(g.n()), max_relative = 1e-13);
            assert!(g.weights().iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn directions_are_unit() {
        for g in grids() {
            for i in (0..g.node_count()).step_by(7) {
                let u = g.direction(i);
                let norm: f64 = u.iter().map(|v| v * v).sum();
                assert_relative_eq!(norm, 1.0, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn integrates_polynomials_exactly() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for g in grids() {
            let dim = g.n() + 1;
            // axisymmetric grids only resolve zonal polynomials
            let axis: Vec<f64> = if g.is_axisymmetric() {
                let mut a = vec![0.0; dim];
                a[0] = 1.0;
                a
            } else {
                let mut a: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
                let norm: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
                a.iter_mut().for_each(|v| *v /= norm);
                a
            };
            for d in 1..=3usize {
                if 2 * d > g.declared_degree() {
                    continue;
                }
                let integral: f64 = (0..g.node_count())
                    .map(|i| {
                        let u = g.direction(i);
                        let dot: f64 = u.iter().zip(&axis).map(|(a, b)| a * b).sum();
                        g.weights()[i] * dot.powi(2 * d as i32)
                    })
                    .sum();
                let expect = omega(g.n()) * even_power_mean(g.n(), d);
                assert_relative_eq!(integral, expect, max_relative = 1e-12);
                let odd: f64 = (0..g.node_count())
                    .map(|i| {
                        let u = g.direction(i);
                        let dot: f64 = u.iter().zip(&axis).map(|(a, b)| a * b).sum();
                        g.weights()[i] * dot.powi(2 * d as i32 - 1)
                    })
                    .sum();
                assert!(odd.abs() < 1e-12 * omega(g.n()));
            }
        }
    }

    #[test]
    fn s3_derivatives_match_finite_differences() {
        let g = SphericalGrid::full_s3(14, 12, 24);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let c: Vec<f64> = (0..16).map(|_| rng.random_range(-0.5..0.5)).collect();
        let poly = move |u: [f64; 4]| -> f64 {
            let mut v = 1.0 + c[15];
            let mut idx = 0;
            for a in 0..4usize {
                v += c[idx] * u[a];
                idx += 1;
                for b in a..4usize {
                    if idx < 15 {
                        v += c[idx] * u[a] * u[b];
                        idx += 1;
                    }
                }
            }
            v
        };
        let chart = |a: f64, b: f64, gm: f64| {
            [
                a.cos(),
                a.sin() * b.cos(),
                a.sin() * b.sin() * gm.cos(),
                a.sin() * b.sin() * gm.sin(),
            ]
        };
        let f: Vec<f64> = (0..g.node_count())
            .map(|i| {
                let ch = g.chart(i);
                poly(chart(ch[0], ch[1], ch[2]))
            })
            .collect();
        let d = match g.derivatives(&f) {
            GridDerivs::S3(d) => d,
            _ => unreachable!(),
        };
        let h = 1e-4;
        for node in (0..g.node_count()).step_by(401) {
            let ch = g.chart(node);
            let (a, b, gm) = (ch[0], ch[1], ch[2]);
            let fd1 = |f: &dyn Fn(f64) -> f64| {
                (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h)
            };
            let fd2 = |f: &dyn Fn(f64) -> f64| {
                (-f(-2.0 * h) + 16.0 * f(-h) - 30.0 * f(0.0) + 16.0 * f(h) - f(2.0 * h))
                    / (12.0 * h * h)
            };
            assert_relative_eq!(d.fa[node], fd1(&|e| poly(chart(a + e, b, gm))), epsilon = 1e-8);
            assert_relative_eq!(d.fb[node], fd1(&|e| poly(chart(a, b + e, gm))), epsilon = 1e-8);
            assert_relative_eq!(d.fg[node], fd1(&|e| poly(chart(a, b, gm + e))), epsilon = 1e-8);
            assert_relative_eq!(d.faa[node], fd2(&|e| poly(chart(a + e, b, gm))), epsilon = 1e-5);
            assert_relative_eq!(d.fbb[node], fd2(&|e| poly(chart(a, b + e, gm))), epsilon = 1e-5);
            assert_relative_eq!(d.fgg[node], fd2(&|e| poly(chart(a, b, gm + e))), epsilon = 1e-5);
            let mixed = |f1: &dyn Fn(f64, f64) -> f64| {
                (f1(h, h) - f1(h, -h) - f1(-h, h) + f1(-h, -h)) / (4.0 * h * h)
            };
            assert_relative_eq!(
                d.fab[node],
                mixed(&|e1, e2| poly(chart(a + e1, b + e2, gm))),
                epsilon = 1e-6
            );
            assert_relative_eq!(
                d.fag[node],
                mixed(&|e1, e2| poly(chart(a + e1, b, gm + e2))),
                epsilon = 1e-6
            );
            assert_relative_eq!(
                d.fbg[node],
                mixed(&|e1, e2| poly(chart(a, b + e1, gm + e2))),
                epsilon = 1e-6
            );
        }
        let interp = g.interpolant(&f);
        for &(a, b, gm) in &[(0.7, 1.2, 0.4), (2.1, 0.3, 3.8), (1.5, 2.9, 5.2)] {
            assert_relative_eq!(
                interp.eval([a, b, gm]),
                poly(chart(a, b, gm)),
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn axis_uniform_derivative_accuracy() {
        let g = SphericalGrid::axis_uniform(4, 256);
        let f: Vec<f64> = (0..g.node_count())
            .map(|i| {
                let t = g.chart(i)[0];
                1.0 + 0.3 * (2.0 * t).cos()
            })
            .collect();
        let (ft, ftt) = match g.derivatives(&f) {
            GridDerivs::Axis { ft, ftt, .. } => (ft, ftt),
            _ => unreachable!(),
        };
        for i in (0..g.node_count()).step_by(17) {
            let t = g.chart(i)[0];
            assert_relative_eq!(ft[i], -0.6 * (2.0 * t).sin(), epsilon = 1e-7);
            assert_relative_eq!(ftt[i], -1.2 * (2.0 * t).cos(), epsilon = 1e-5);
        }
        let interp = g.interpolant(&f);
        assert_relative_eq!(
            interp.eval([1.234, 0.0, 0.0]),
            1.0 + 0.3 * (2.0f64 * 1.234).cos(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn s2_interpolant_round_trip() {
        let g = SphericalGrid::full_s2(16, 32);
        let f: Vec<f64> = (0..g.node_count())
            .map(|i| {
                let u = g.direction(i);
                1.0 + 0.2 * u[0] * u[1] + 0.1 * u[2]
            })
            .collect();
        let interp = g.interpolant(&f);
        for &(t, p) in &[(0.4f64, 0.9f64), (1.7, 3.3), (2.9, 5.8)] {
            let u = [t.cos(), t.sin() * p.cos(), t.sin() * p.sin()];
            assert_relative_eq!(
                interp.eval([t, p, 0.0]),
                1.0 + 0.2 * u[0] * u[1] + 0.1 * u[2],
                epsilon = 1e-11
            );
        }
    }
}
