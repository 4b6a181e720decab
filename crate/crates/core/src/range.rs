//! Numerical range quantities computed through the Hermitian pencil
//! `H_θ = (e^{-iθ} T + e^{iθ} T*) / 2 = cos θ · H + sin θ · K`.
//!
//! For every unit `x`, `⟨H_θ x, x⟩ = Re(e^{-iθ} ⟨Tx, x⟩)`, so `θ ↦ λ_max(H_θ)`
//! is the support function of the numerical range `W(T)`. This standard
//! identity (not proved here) gives
//!
//! - `w(T) = max_θ λ_max(H_θ)`,
//! - `c(T) = dist(0, W(T)) = max(0, max_θ λ_min(H_θ))` because `W(T)` is
//!   convex and compact (Toeplitz–Hausdorff),
//! - boundary points `⟨T x_θ, x_θ⟩` from top eigenvectors `x_θ` of `H_θ`.
//!
//! The support function is Lipschitz in `θ` with constant `‖T‖`. Every sweep
//! evaluates it on a uniform grid of [`SWEEP_GRID`] angles and then refines
//! the promising discrete extrema by golden-section search. The bracket
//! shrinks until `‖T‖ · width` is below the requested tolerance, and never
//! below [`REFINE_WIDTH`]. The identity is checked against a random-sphere
//! oracle in the test suite.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::eigen::{self, herm_eig};
use crate::error::{Error, Result};
use crate::matrix::{op_norm, vec_norm, CMatrix};
use crate::search::golden_max;

/// Number of angles in the coarse sweep over `[0, 2π)`.
pub const SWEEP_GRID: usize = 1024;
/// Bracket width at which golden-section refinement stops.
pub const REFINE_WIDTH: f64 = 1e-12;
/// Relative eigenvalue gap below which eigenvalues are treated as equal.
pub const MULTIPLICITY_GAP: f64 = 1e-8;
/// Fraction of maximizing grid angles above which the whole circle maximizes.
pub const ALL_ANGLES_FRACTION: f64 = 0.95;
/// Maximizing angles closer than this many grid steps share a component.
pub const CLUSTER_STEPS: usize = 3;
const MAX_REFINED: usize = 8;

/// `1e-9 (1 + ‖T‖_F)`.
pub fn default_radius_tol(t: &CMatrix) -> f64 {
    1e-9 * (1.0 + t.frobenius_norm())
}

/// `1e-7 (1 + w)`.
pub fn default_attain_tol(w: f64) -> f64 {
    1e-7 * (1.0 + w)
}

/// Numerical radius together with the angle and unit vector attaining it.
#[derive(Debug, Clone)]
pub struct RadiusCertificate {
    pub value: f64,
    /// Maximizing angle in `[0, 2π)`.
    pub theta_star: f64,
    /// Unit top eigenvector of `H_{θ*}`.
    pub witness: Vec<Complex64>,
    /// `| |⟨T x*, x*⟩| - value |`.
    pub residual: f64,
}

/// One maximizing angle `φ` with an orthonormal basis of the top eigenspace
/// of `H_φ`.
#[derive(Debug, Clone)]
pub struct AttainingComponent {
    pub phi: f64,
    pub basis: CMatrix,
}

/// The attaining set `M_{w(T)}` as a union of top eigenspaces.
#[derive(Debug, Clone)]
pub struct AttainingSet {
    pub w: f64,
    pub components: Vec<AttainingComponent>,
    /// Set when (almost) every grid angle is maximizing, as for a disc.
    pub all_angles: bool,
}

/// Real-field numerical radius with the `±w` eigenspaces of the symmetric part.
#[derive(Debug, Clone)]
pub struct RealRadius {
    pub w: f64,
    pub plus: Vec<Vec<f64>>,
    pub minus: Vec<Vec<f64>>,
}

/// `H_θ = (e^{-iθ} T + e^{iθ} T*) / 2`, explicitly symmetrized.
pub fn herm_pencil(t: &CMatrix, theta: f64) -> Result<CMatrix> {
    t.require_square()?;
    let e = Complex64::from_polar(1.0, -theta);
    let sum = t.scale(e).add(&t.adjoint().scale(e.conj()))?;
    Ok(sum.scale(Complex64::new(0.5, 0.0)).symmetrize())
}

/// Lipschitz constant of `θ ↦ λ_max(H_θ)`, namely `‖T‖`.
pub fn pencil_lipschitz(t: &CMatrix) -> Result<f64> {
    op_norm(t)
}

/// Precomputed real and imaginary parts of `T`.
pub(crate) struct Pencil {
    h: CMatrix,
    k: CMatrix,
}

impl Pencil {
    pub(crate) fn new(t: &CMatrix) -> Result<Self> {
        let h = herm_pencil(t, 0.0)?;
        let k = herm_pencil(t, PI / 2.0)?;
        Ok(Self { h, k })
    }

    pub(crate) fn at(&self, theta: f64) -> CMatrix {
        let (s, c) = theta.sin_cos();
        let data = self
            .h
            .as_slice()
            .iter()
            .zip(self.k.as_slice())
            .map(|(a, b)| a * c + b * s)
            .collect();
        CMatrix::from_parts(self.h.rows(), self.h.cols(), data, crate::matrix::Field::Complex)
    }

    fn support(&self, theta: f64) -> Result<f64> {
        Ok(eigen::extreme_eigenvalues(&self.at(theta))?.1)
    }
}

pub(crate) fn grid_angle(k: usize, n: usize) -> f64 {
    TAU * k as f64 / n as f64
}

pub(crate) fn wrap_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Support function `λ_max(H_θ)` on the uniform grid, using
/// `λ_max(H_{θ+π}) = -λ_min(H_θ)` to halve the work.
fn support_grid(p: &Pencil, n: usize) -> Result<Vec<f64>> {
    let half = n / 2;
    let mut g = alloc::vec![0.0; n];
    for k in 0..half {
        let (lo, hi) = eigen::extreme_eigenvalues(&p.at(grid_angle(k, n)))?;
        g[k] = hi;
        g[k + half] = -lo;
    }
    Ok(g)
}

/// Refines discrete local extrema of the support grid. With `maximize` false
/// it refines minima. Returns `(angle, support value)` pairs.
fn refine(p: &Pencil, grid: &[f64], maximize: bool, lipschitz: f64, width: f64) -> Result<Vec<(f64, f64)>> {
    let n = grid.len();
    let h = TAU / n as f64;
    let sign = if maximize { 1.0 } else { -1.0 };
    let v = |k: usize| sign * grid[k % n];
    let best = (0..n).map(v).fold(f64::NEG_INFINITY, f64::max);
    let cutoff = best - lipschitz * h;
    let mut candidates: Vec<usize> = (0..n)
        .filter(|&k| v(k) >= cutoff && v(k) >= v(k + n - 1) && v(k) >= v(k + 1))
        .collect();
    candidates.sort_by(|&a, &b| v(b).total_cmp(&v(a)).then(a.cmp(&b)));
    candidates.truncate(MAX_REFINED);

    let mut out = Vec::with_capacity(candidates.len());
    for k in candidates {
        let center = grid_angle(k, n);
        let (theta, val) = golden_max(|th| Ok(sign * p.support(th)?), center - h, center + h, width)?;
        out.push((wrap_angle(theta), sign * val));
    }
    Ok(out)
}

struct Sweep {
    grid: Vec<f64>,
    refined: Vec<(f64, f64)>,
    /// Best `(angle, value)` over grid and refinement.
    best: (f64, f64),
}

fn sweep_max(p: &Pencil, lipschitz: f64, n: usize, width: f64) -> Result<Sweep> {
    let grid = support_grid(p, n)?;
    let refined = refine(p, &grid, true, lipschitz, width)?;
    let mut best = (0.0, f64::NEG_INFINITY);
    for (k, &g) in grid.iter().enumerate() {
        if g > best.1 {
            best = (grid_angle(k, grid.len()), g);
        }
    }
    for &(th, val) in &refined {
        if val > best.1 || (val == best.1 && th < best.0) {
            best = (th, val);
        }
    }
    Ok(Sweep { grid, refined, best })
}

fn top_vector(h: &CMatrix) -> Result<Vec<Complex64>> {
    let d = herm_eig(h, eigen::default_eig_tol(h))?;
    Ok(d.vector(d.dim() - 1))
}

fn unit(n: usize) -> Vec<Complex64> {
    let mut e = alloc::vec![Complex64::new(0.0, 0.0); n];
    e[0] = Complex64::new(1.0, 0.0);
    e
}

/// Numerical radius `w(T) = sup{|⟨Tx, x⟩| : ‖x‖ = 1}` with a certificate.
///
/// Real-tagged input is treated as a complex matrix; [`real_radius`] gives
/// the real-field quantity.
pub fn radius(t: &CMatrix, radius_tol: f64) -> Result<RadiusCertificate> {
    radius_on_grid(t, radius_tol, SWEEP_GRID)
}

/// Golden-section stopping width for a target accuracy `tol`: the support
/// function is `lipschitz`-Lipschitz, so a bracket of this width pins the
/// maximum value to within `tol`.
fn refine_width(tol: f64, lipschitz: f64, grid: usize) -> f64 {
    let h = TAU / grid as f64;
    if lipschitz > 0.0 {
        (tol / lipschitz).clamp(REFINE_WIDTH, h / 4.0)
    } else {
        REFINE_WIDTH
    }
}

fn check_grid(grid: usize) -> Result<()> {
    if grid < 8 || grid % 2 != 0 {
        return Err(Error::InvalidArgument("sweep grid must be even and at least 8"));
    }
    Ok(())
}

/// [`radius`] on a sweep grid of `grid` angles (even, at least 8).
pub fn radius_on_grid(t: &CMatrix, radius_tol: f64, grid: usize) -> Result<RadiusCertificate> {
    t.require_square()?;
    if radius_tol.is_nan() || radius_tol < 0.0 {
        return Err(Error::InvalidArgument("radius tolerance must be nonnegative"));
    }
    check_grid(grid)?;
    let n = t.rows();
    if t.is_zero() {
        return Ok(RadiusCertificate {
            value: 0.0,
            theta_star: 0.0,
            witness: unit(n),
            residual: 0.0,
        });
    }
    if n == 1 {
        let a = t.get(0, 0);
        return Ok(RadiusCertificate {
            value: a.norm(),
            theta_star: wrap_angle(a.arg()),
            witness: unit(1),
            residual: 0.0,
        });
    }
    let p = Pencil::new(t)?;
    let lipschitz = op_norm(t)?;
    let sweep = sweep_max(&p, lipschitz, grid, refine_width(radius_tol, lipschitz, grid))?;
    let (theta_star, value) = sweep.best;
    let witness = top_vector(&p.at(theta_star))?;
    let residual = (t.quad_form(&witness).norm() - value).abs();
    Ok(RadiusCertificate {
        value,
        theta_star,
        witness,
        residual,
    })
}

/// Numerical radius with the default tolerance.
pub fn numerical_radius(t: &CMatrix) -> Result<f64> {
    Ok(radius(t, default_radius_tol(t))?.value)
}

/// Crawford number `c(T) = inf{|⟨Tx, x⟩| : ‖x‖ = 1} = dist(0, W(T))`.
pub fn crawford(t: &CMatrix, tol: f64) -> Result<f64> {
    crawford_on_grid(t, tol, SWEEP_GRID)
}

/// [`crawford`] on a sweep grid of `grid` angles (even, at least 8).
pub fn crawford_on_grid(t: &CMatrix, tol: f64, grid: usize) -> Result<f64> {
    t.require_square()?;
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidArgument("tolerance must be nonnegative"));
    }
    check_grid(grid)?;
    if t.is_zero() {
        return Ok(0.0);
    }
    if t.rows() == 1 {
        return Ok(t.get(0, 0).norm());
    }
    let p = Pencil::new(t)?;
    let lipschitz = op_norm(t)?;
    let support = support_grid(&p, grid)?;
    let refined = refine(&p, &support, false, lipschitz, refine_width(tol, lipschitz, grid))?;
    let lowest = support
        .iter()
        .copied()
        .chain(refined.iter().map(|r| r.1))
        .fold(f64::INFINITY, f64::min);
    // max_θ λ_min(H_θ) = -min_θ λ_max(H_θ)
    Ok((-lowest).max(0.0))
}

/// Samples `⟨T x_θ, x_θ⟩` on a uniform grid of `samples` angles, `x_θ` a top
/// eigenvector of `H_θ`.
pub fn range_boundary(t: &CMatrix, samples: usize) -> Result<Vec<(f64, Complex64)>> {
    t.require_square()?;
    if samples < 3 {
        return Err(Error::InvalidArgument("boundary needs at least 3 samples"));
    }
    let p = Pencil::new(t)?;
    (0..samples)
        .map(|k| {
            let theta = grid_angle(k, samples);
            let x = top_vector(&p.at(theta))?;
            Ok((theta, t.quad_form(&x)))
        })
        .collect()
}

/// The attaining set `M_{w(T)}` as maximizing angles with top eigenspaces.
pub fn attaining_set(t: &CMatrix, attain_tol: f64) -> Result<AttainingSet> {
    attaining_set_with(t, |_| attain_tol)
}

/// [`attaining_set`] with the tolerance chosen from `w(T)`.
pub(crate) fn attaining_set_with(t: &CMatrix, tol_for: impl Fn(f64) -> f64) -> Result<AttainingSet> {
    t.require_square()?;
    let mut attain_tol = tol_for(0.0);
    if t.is_zero() {
        return Err(Error::ZeroRadius { w: 0.0, tol: attain_tol });
    }
    if t.rows() == 1 {
        let a = t.get(0, 0);
        attain_tol = tol_for(a.norm());
        if a.norm() <= attain_tol {
            return Err(Error::ZeroRadius { w: a.norm(), tol: attain_tol });
        }
        return Ok(AttainingSet {
            w: a.norm(),
            components: alloc::vec![AttainingComponent {
                phi: wrap_angle(a.arg()),
                basis: CMatrix::identity(1),
            }],
            all_angles: false,
        });
    }
    let p = Pencil::new(t)?;
    let sweep = sweep_max(&p, op_norm(t)?, SWEEP_GRID, REFINE_WIDTH)?;
    let w = sweep.best.1;
    attain_tol = tol_for(w);
    if w <= attain_tol {
        return Err(Error::ZeroRadius { w, tol: attain_tol });
    }
    let n = sweep.grid.len();
    let threshold = w - attain_tol;
    let grid_hits: Vec<usize> = (0..n).filter(|&k| sweep.grid[k] >= threshold).collect();

    let angles: Vec<f64> = if grid_hits.len() as f64 >= ALL_ANGLES_FRACTION * n as f64 {
        grid_hits.iter().map(|&k| grid_angle(k, n)).collect()
    } else {
        let mut points: Vec<(f64, f64)> = sweep
            .refined
            .iter()
            .copied()
            .filter(|r| r.1 >= threshold)
            .chain(grid_hits.iter().map(|&k| (grid_angle(k, n), sweep.grid[k])))
            .collect();
        if points.is_empty() {
            points.push(sweep.best);
        }
        cluster_representatives(points, CLUSTER_STEPS as f64 * TAU / n as f64)
    };
    let all_angles = grid_hits.len() as f64 >= ALL_ANGLES_FRACTION * n as f64;

    let mut components = Vec::with_capacity(angles.len());
    for phi in angles {
        let h = p.at(phi);
        let d = herm_eig(&h, eigen::default_eig_tol(&h))?;
        let top = d.max_value();
        let gap = MULTIPLICITY_GAP * (1.0 + top.abs());
        let cols = d.eigenspace(top, gap);
        components.push(AttainingComponent {
            phi,
            basis: CMatrix::from_columns(&cols)?,
        });
    }
    Ok(AttainingSet {
        w,
        components,
        all_angles,
    })
}

/// Merges angle/value points whose cyclic distance chains within `reach`,
/// keeping the highest-valued angle of each cluster.
fn cluster_representatives(mut points: Vec<(f64, f64)>, reach: f64) -> Vec<f64> {
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut clusters: Vec<Vec<(f64, f64)>> = Vec::new();
    for pt in points {
        match clusters.last_mut() {
            Some(last) if pt.0 - last[last.len() - 1].0 <= reach => last.push(pt),
            _ => clusters.push(alloc::vec![pt]),
        }
    }
    if clusters.len() > 1 {
        let first_start = clusters[0][0].0;
        let last = &clusters[clusters.len() - 1];
        if first_start + TAU - last[last.len() - 1].0 <= reach {
            let tail = clusters.pop().unwrap_or_default();
            clusters[0].extend(tail);
        }
    }
    clusters
        .into_iter()
        .map(|c| {
            c.into_iter()
                .fold((0.0, f64::NEG_INFINITY), |best, pt| if pt.1 > best.1 { pt } else { best })
                .0
        })
        .collect()
}

/// Real-field numerical radius `sup{|⟨Tx, x⟩| : x ∈ ℝ^n, ‖x‖ = 1}`.
///
/// For real `x`, `⟨Tx, x⟩ = ⟨Sx, x⟩` with `S = (T + Tᵗ)/2`, so `w` is the
/// largest eigenvalue modulus of `S`. This is only a seminorm: skew-symmetric
/// matrices have `w = 0`.
pub fn real_radius(t: &CMatrix) -> Result<RealRadius> {
    if !t.is_real() {
        return Err(Error::NotReal);
    }
    t.require_square()?;
    let s = t.hermitian_part()?;
    let d = herm_eig(&s, eigen::default_eig_tol(&s))?;
    let w = d.max_value().abs().max(d.min_value().abs());
    let negligible = 16.0 * f64::EPSILON * (1.0 + t.frobenius_norm());
    let to_real = |cols: Vec<Vec<Complex64>>| -> Vec<Vec<f64>> {
        cols.into_iter().map(|v| v.iter().map(|z| z.re).collect()).collect()
    };
    if w <= negligible {
        return Ok(RealRadius {
            w,
            plus: Vec::new(),
            minus: Vec::new(),
        });
    }
    let gap = MULTIPLICITY_GAP * (1.0 + w);
    Ok(RealRadius {
        w,
        plus: to_real(d.eigenspace(w, gap)),
        minus: to_real(d.eigenspace(-w, gap)),
    })
}

/// Checks `‖x‖ = 1` within `tol`.
pub fn is_unit(x: &[Complex64], tol: f64) -> bool {
    (vec_norm(x) - 1.0).abs() <= tol
}
