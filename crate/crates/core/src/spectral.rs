//! Spectral differentiation and interpolation engines for radial graphs.
//!
//! Three chart families are supported:
//!
//! - `S²` full grids: Gauss-Legendre nodes in `x = cos θ` × uniform azimuth.
//!   Azimuthal Fourier modes of a smooth function carry a `sin^{|m|}θ` factor;
//!   dividing out the parity part leaves a smooth function of `x` that a
//!   polynomial interpolant differentiates spectrally.
//! - `S³` full grids: the fiber `(β, γ)` sphere reuses the `S²` engine per
//!   slice; the first polar angle `α` sits on uniform interior angles
//!   (Chebyshev-U quadrature nodes) and is differentiated by FFT on the
//!   doubled circle, using the reflection `(α, β, γ) → (-α, π-β, γ+π)` and
//!   pole values recovered from fiber means.
//! - axisymmetric profiles: smooth even functions of the polar angle are
//!   exactly functions of `x = cos θ`, so barycentric differentiation on the
//!   Gauss nodes applies directly.

use nalgebra::DMatrix;
use rustfft::{num_complex::Complex64, Fft, FftPlanner};
use std::sync::Arc;

/// Barycentric Lagrange interpolation on a fixed set of nodes.
#[derive(Debug, Clone)]
pub struct Barycentric {
    pub nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Barycentric {
    pub fn new(nodes: Vec<f64>) -> Self {
        let n = nodes.len();
        assert!(n >= 2);
        // rescale factors to keep the weight products near unity
        let scale = 4.0 / (nodes[n - 1] - nodes[0]);
        let mut weights = vec![1.0; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    weights[i] *= (nodes[i] - nodes[j]) * scale;
                }
            }
            weights[i] = 1.0 / weights[i];
        }
        Barycentric { nodes, weights }
    }

    /// First-derivative collocation matrix.
    pub fn diff_matrix(&self) -> DMatrix<f64> {
        let n = self.nodes.len();
        let mut d = DMatrix::zeros(n, n);
        for i in 0..n {
            let mut diag = 0.0;
            for j in 0..n {
                if i != j {
                    let v = self.weights[j] / self.weights[i] / (self.nodes[i] - self.nodes[j]);
                    d[(i, j)] = v;
                    diag -= v;
                }
            }
            d[(i, i)] = diag;
        }
        d
    }

    /// Evaluate the interpolant of `values` at `x` (first barycentric form).
    pub fn eval(&self, values: &[f64], x: f64) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..self.nodes.len() {
            let dx = x - self.nodes[i];
            if dx.abs() < 1e-300 {
                return values[i];
            }
            let c = self.weights[i] / dx;
            num += c * values[i];
            den += c;
        }
        num / den
    }

    /// Coefficients `c_i` with `p(x) = Σ c_i f_i` at a fixed evaluation
    /// point, for evaluating many data columns at once.
    pub fn coeff_vector(&self, x: f64) -> Vec<f64> {
        let n = self.nodes.len();
        let mut c = vec![0.0; n];
        for (i, &xi) in self.nodes.iter().enumerate() {
            if (x - xi).abs() < 1e-300 {
                c[i] = 1.0;
                return c;
            }
        }
        let mut den = 0.0;
        for i in 0..n {
            c[i] = self.weights[i] / (x - self.nodes[i]);
            den += c[i];
        }
        for v in c.iter_mut() {
            *v /= den;
        }
        c
    }

    /// Same as [`eval`](Self::eval) for complex node values.
    pub fn eval_complex(&self, values: &[Complex64], x: f64) -> Complex64 {
        let mut num = Complex64::ZERO;
        let mut den = 0.0;
        for i in 0..self.nodes.len() {
            let dx = x - self.nodes[i];
            if dx.abs() < 1e-300 {
                return values[i];
            }
            let c = self.weights[i] / dx;
            num += values[i] * c;
            den += c;
        }
        num / den
    }
}

/// Signed wavenumbers of an FFT of the given length; the Nyquist slot is
/// reported as `len/2` and must be zeroed by callers taking odd-order
/// derivatives.
pub fn wavenumbers(len: usize) -> Vec<f64> {
    (0..len)
        .map(|j| {
            if j <= len / 2 {
                j as f64
            } else {
                j as f64 - len as f64
            }
        })
        .collect()
}

fn plan_pair(len: usize) -> (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) {
    let mut planner = FftPlanner::new();
    (planner.plan_fft_forward(len), planner.plan_fft_inverse(len))
}

/// First and second derivatives of a smooth function on `S²` sampled on a
/// Gauss-Legendre (polar) × uniform (azimuth) grid, plus off-grid
/// evaluation of mode data. Also serves as the fiber engine of the `S³`
/// grid with `(θ, φ) = (β, γ)`.
pub struct SphereEngine {
    pub npolar: usize,
    pub nazimuth: usize,
    pub theta: Vec<f64>,
    pub x: Vec<f64>,
    pub sin_t: Vec<f64>,
    pub cos_t: Vec<f64>,
    /// Gauss-Legendre weights in `x` (sum 2).
    pub polar_weights: Vec<f64>,
    pub bary: Barycentric,
    d1: DMatrix<f64>,
    d2: DMatrix<f64>,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
    pub wn: Vec<f64>,
}

/// Chart derivatives of a scalar on the `S²` grid, row-major `[polar][azimuth]`.
pub struct SphereDerivs {
    pub ft: Vec<f64>,
    pub fp: Vec<f64>,
    pub ftt: Vec<f64>,
    pub ftp: Vec<f64>,
    pub fpp: Vec<f64>,
}

impl SphereEngine {
    pub fn new(npolar: usize, nazimuth: usize) -> Self {
        assert!(npolar >= 4 && nazimuth >= 4 && nazimuth % 2 == 0);
        let rule = crate::quad::gauss_legendre(npolar);
        // order polar nodes by increasing θ (decreasing x)
        let x: Vec<f64> = rule.nodes.iter().rev().cloned().collect();
        let polar_weights: Vec<f64> = rule.weights.iter().rev().cloned().collect();
        let theta: Vec<f64> = x.iter().map(|&v| v.acos()).collect();
        let sin_t: Vec<f64> = theta.iter().map(|t| t.sin()).collect();
        let cos_t: Vec<f64> = theta.iter().map(|t| t.cos()).collect();
        let bary = Barycentric::new(x.clone());
        let d1 = bary.diff_matrix();
        let d2 = &d1 * &d1;
        let (fft, ifft) = plan_pair(nazimuth);
        let wn = wavenumbers(nazimuth);
        SphereEngine {
            npolar,
            nazimuth,
            theta,
            x,
            sin_t,
            cos_t,
            polar_weights,
            bary,
            d1,
            d2,
            fft,
            ifft,
            wn,
        }
    }

    pub fn node_count(&self) -> usize {
        self.npolar * self.nazimuth
    }

    /// Azimuthal FFT of every polar row; modes normalized so that
    /// `f(θ_i, φ) = Σ_m modes[i][m] e^{i m φ}`.
    pub fn to_modes(&self, f: &[f64]) -> Vec<Complex64> {
        let (np, na) = (self.npolar, self.nazimuth);
        let mut modes = vec![Complex64::ZERO; np * na];
        let mut buf = vec![Complex64::ZERO; na];
        let inv = 1.0 / na as f64;
        for i in 0..np {
            for j in 0..na {
                buf[j] = Complex64::new(f[i * na + j], 0.0);
            }
            self.fft.process(&mut buf);
            for m in 0..na {
                modes[i * na + m] = buf[m] * inv;
            }
        }
        modes
    }

    /// Inverse of [`to_modes`](Self::to_modes); imaginary parts (roundoff)
    /// are dropped.
    pub fn from_modes(&self, modes: &[Complex64]) -> Vec<f64> {
        let (np, na) = (self.npolar, self.nazimuth);
        let mut out = vec![0.0; np * na];
        let mut buf = vec![Complex64::ZERO; na];
        for i in 0..np {
            buf.copy_from_slice(&modes[i * na..(i + 1) * na]);
            self.ifft.process(&mut buf);
            for j in 0..na {
                out[i * na + j] = buf[j].re;
            }
        }
        out
    }

    /// Polar-derivative modes of a mode array: per azimuthal mode `m`, the
    /// function is `sin^{pm}θ · g(cos θ)` with `pm = |m| mod 2` and `g`
    /// smooth; `g` is differentiated by polynomial collocation and the
    /// product rule restores the chart derivative.
    fn polar_modes(&self, modes: &[Complex64], second: bool) -> (Vec<Complex64>, Vec<Complex64>) {
        let (np, na) = (self.npolar, self.nazimuth);
        let mut out1 = vec![Complex64::ZERO; np * na];
        let mut out2 = vec![Complex64::ZERO; np * na];
        let mut g = vec![Complex64::ZERO; np];
        let mut g1 = vec![Complex64::ZERO; np];
        let mut g2 = vec![Complex64::ZERO; np];
        for m in 0..na {
            let parity = (self.wn[m].abs() as usize) % 2;
            for i in 0..np {
                let v = modes[i * na + m];
                g[i] = if parity == 1 { v / self.sin_t[i] } else { v };
            }
            for i in 0..np {
                let mut a1 = Complex64::ZERO;
                let mut a2 = Complex64::ZERO;
                for j in 0..np {
                    a1 += g[j] * self.d1[(i, j)];
                    if second {
                        a2 += g[j] * self.d2[(i, j)];
                    }
                }
                g1[i] = a1;
                g2[i] = a2;
            }
            for i in 0..np {
                let (s, c) = (self.sin_t[i], self.cos_t[i]);
                if parity == 0 {
                    out1[i * na + m] = -s * g1[i];
                    if second {
                        out2[i * na + m] = -c * g1[i] + s * s * g2[i];
                    }
                } else {
                    out1[i * na + m] = g[i] * c - g1[i] * (s * s);
                    if second {
                        out2[i * na + m] =
                            -g[i] * s - g1[i] * (3.0 * s * c) + g2[i] * (s * s * s);
                    }
                }
            }
        }
        (out1, out2)
    }

    fn azimuth_modes(&self, modes: &[Complex64], order: u32) -> Vec<Complex64> {
        let (np, na) = (self.npolar, self.nazimuth);
        let mut out = vec![Complex64::ZERO; np * na];
        for m in 0..na {
            // the unmatched Nyquist mode must not contribute to odd derivatives
            let k = if m == na / 2 && order % 2 == 1 {
                Complex64::ZERO
            } else {
                Complex64::new(0.0, self.wn[m]).powu(order)
            };
            for i in 0..np {
                out[i * na + m] = modes[i * na + m] * k;
            }
        }
        out
    }

    /// All first and second chart derivatives.
    pub fn derivatives(&self, f: &[f64]) -> SphereDerivs {
        let modes = self.to_modes(f);
        let (t1, t2) = self.polar_modes(&modes, true);
        let p1 = self.azimuth_modes(&modes, 1);
        let p2 = self.azimuth_modes(&modes, 2);
        let (tp, _) = self.polar_modes(&p1, false);
        SphereDerivs {
            ft: self.from_modes(&t1),
            fp: self.from_modes(&p1),
            ftt: self.from_modes(&t2),
            ftp: self.from_modes(&tp),
            fpp: self.from_modes(&p2),
        }
    }

    /// First derivatives only (used for mixed derivatives of derived fields).
    pub fn first_derivatives(&self, f: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let modes = self.to_modes(f);
        let (t1, _) = self.polar_modes(&modes, false);
        let p1 = self.azimuth_modes(&modes, 1);
        (self.from_modes(&t1), self.from_modes(&p1))
    }

    /// Evaluate a mode array off-grid. `parity_shift = 0` for fields whose
    /// mode-`m` polar factor is `sin^{|m| mod 2}θ` (scalars on the sphere),
    /// `1` for polar-derivative fields (parity flipped).
    pub fn eval_modes(
        &self,
        modes: &[Complex64],
        parity_shift: usize,
        theta: f64,
        phi: f64,
    ) -> f64 {
        let (np, na) = (self.npolar, self.nazimuth);
        let x = theta.cos();
        let s = theta.sin();
        let mut acc = Complex64::ZERO;
        let mut col = vec![Complex64::ZERO; np];
        for m in 0..na {
            let parity = ((self.wn[m].abs() as usize) + parity_shift) % 2;
            for i in 0..np {
                let v = modes[i * na + m];
                col[i] = if parity == 1 { v / self.sin_t[i] } else { v };
            }
            let mut g = self.bary.eval_complex(&col, x);
            if parity == 1 {
                g *= s;
            }
            let ph = Complex64::new(0.0, self.wn[m] * phi).exp();
            acc += g * ph;
        }
        acc.re
    }
}

/// Trigonometric barycentric interpolation on an even equispaced circle
/// grid `x_k = k·2π/len`.
pub fn trig_interp(values: &[Complex64], point: f64) -> Complex64 {
    let len = values.len();
    debug_assert!(len % 2 == 0);
    let h = 2.0 * std::f64::consts::PI / len as f64;
    let mut num = Complex64::ZERO;
    let mut den = 0.0;
    let mut sign = 1.0;
    for (k, &v) in values.iter().enumerate() {
        let d = 0.5 * (point - k as f64 * h);
        if d.sin().abs() < 1e-14 {
            return v;
        }
        let c = sign / d.tan();
        num += v * c;
        den += c;
        sign = -sign;
    }
    num / den
}

/// FFT differentiation on the doubled polar circle of the `S³` grid.
///
/// Grid angles are the uniform interior points `α_i = iπ/(nalpha+1)`;
/// the doubled circle has `2(nalpha+1)` slots including the two poles.
pub struct AlphaDfs {
    pub nalpha: usize,
    pub len: usize,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
    pub wn: Vec<f64>,
}

/// Output of one doubled-circle pass: first/second α-derivatives at the
/// interior slots plus the first-derivative values at the two pole slots.
pub struct AlphaColumn {
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
    pub pole0_d1: f64,
    pub pole1_d1: f64,
}

impl AlphaDfs {
    pub fn new(nalpha: usize) -> Self {
        let len = 2 * (nalpha + 1);
        let (fft, ifft) = plan_pair(len);
        let wn = wavenumbers(len);
        AlphaDfs {
            nalpha,
            len,
            fft,
            ifft,
            wn,
        }
    }

    /// Differentiate one meridian column. `column[i]` holds the value at
    /// `α_{i+1}`; `mirror[i]` the value at the reflected point
    /// `(α_{i+1}, π-β, γ+π)`; `pole0`, `pole1` the pole values.
    pub fn differentiate(
        &self,
        column: &[f64],
        mirror: &[f64],
        pole0: f64,
        pole1: f64,
    ) -> AlphaColumn {
        let n = self.nalpha;
        let mut buf = vec![Complex64::ZERO; self.len];
        buf[0] = Complex64::new(pole0, 0.0);
        for i in 0..n {
            buf[i + 1] = Complex64::new(column[i], 0.0);
        }
        buf[n + 1] = Complex64::new(pole1, 0.0);
        for s in n + 2..self.len {
            buf[s] = Complex64::new(mirror[self.len - s - 1], 0.0);
        }
        self.fft.process(&mut buf);
        let inv = 1.0 / self.len as f64;
        let mut b1 = vec![Complex64::ZERO; self.len];
        let mut b2 = vec![Complex64::ZERO; self.len];
        for m in 0..self.len {
            let k = self.wn[m];
            let c = buf[m] * inv;
            b1[m] = if m == self.len / 2 {
                Complex64::ZERO
            } else {
                c * Complex64::new(0.0, k)
            };
            b2[m] = c * (-k * k);
        }
        self.ifft.process(&mut b1);
        self.ifft.process(&mut b2);
        AlphaColumn {
            d1: (0..n).map(|i| b1[i + 1].re).collect(),
            d2: (0..n).map(|i| b2[i + 1].re).collect(),
            pole0_d1: b1[0].re,
            pole1_d1: b1[n + 1].re,
        }
    }
}

/// Barycentric differentiation of axisymmetric profiles: smooth even
/// profiles are functions of `x = cos θ`, differentiated by collocation
/// in `x` with the chain rule back to `θ`.
pub struct AxisEngine {
    pub theta: Vec<f64>,
    pub x: Vec<f64>,
    pub sin_t: Vec<f64>,
    pub cos_t: Vec<f64>,
    pub bary: Barycentric,
    d1: DMatrix<f64>,
    d2: DMatrix<f64>,
}

impl AxisEngine {
    /// `x` must be increasing node positions in `(-1, 1)`.
    pub fn new(x: Vec<f64>) -> Self {
        let theta: Vec<f64> = x.iter().map(|&v| v.acos()).collect();
        let sin_t: Vec<f64> = theta.iter().map(|t| t.sin()).collect();
        let cos_t: Vec<f64> = theta.iter().map(|t| t.cos()).collect();
        let bary = Barycentric::new(x.clone());
        let d1 = bary.diff_matrix();
        let d2 = &d1 * &d1;
        AxisEngine {
            theta,
            x,
            sin_t,
            cos_t,
            bary,
            d1,
            d2,
        }
    }

    /// Returns `(f_x, f_θ, f_θθ)` at the nodes.
    pub fn derivatives(&self, f: &[f64]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let n = self.x.len();
        let mut fx = vec![0.0; n];
        let mut fxx = vec![0.0; n];
        for i in 0..n {
            let mut a1 = 0.0;
            let mut a2 = 0.0;
            for j in 0..n {
                a1 += self.d1[(i, j)] * f[j];
                a2 += self.d2[(i, j)] * f[j];
            }
            fx[i] = a1;
            fxx[i] = a2;
        }
        let ft: Vec<f64> = (0..n).map(|i| -self.sin_t[i] * fx[i]).collect();
        let ftt: Vec<f64> = (0..n)
            .map(|i| -self.cos_t[i] * fx[i] + self.sin_t[i] * self.sin_t[i] * fxx[i])
            .collect();
        (fx, ft, ftt)
    }

    pub fn eval(&self, f: &[f64], theta: f64) -> f64 {
        self.bary.eval(f, theta.cos())
    }
}
