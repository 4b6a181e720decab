//! Numerical-radius orthogonality `T ⊥_w A` (`w(T + λA) ≥ w(T)` for every
//! scalar `λ`) and Birkhoff–James orthogonality `T ⊥_B A` for the operator
//! norm.
//!
//! Two independent routes decide `⊥_w`:
//!
//! - [`ortho_w`] uses the attaining-vector characterization for compact
//!   operators: `T ⊥_w A` iff for every `θ` some `x ∈ M_{w(T)}` satisfies
//!   `Re{e^{-iθ} ⟨Tx,x⟩ conj(⟨Ax,x⟩)} ≥ 0`. On a top eigenspace `E_φ` we have
//!   `⟨Tx,x⟩ = w e^{iφ}`, so the condition at `θ` becomes
//!   `g(θ) = max_φ λ_max(pencil(V_φ* A V_φ, φ - θ)) ≥ 0`. `g` is Lipschitz
//!   with constant `‖A‖`, which turns a finite grid into a certificate.
//! - [`ortho_w_definitional`] minimizes the convex function
//!   `λ ↦ w(T + λA)` directly.
//!
//! [`ortho_w_real`] handles the real field through the `±w` eigenspaces of the
//! symmetric part of `T`.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::eigen::{self, herm_eig};
use crate::error::{Error, Result};
use crate::matrix::{normalized, op_norm, CMatrix};
use crate::range::{self, default_attain_tol, default_radius_tol, grid_angle, real_radius, wrap_angle, Pencil};

/// Initial grid for the characterization check.
pub const CERT_GRID: usize = 720;
/// Smallest bracket the characterization check bisects down to.
pub const CERT_FLOOR: f64 = 1e-12;
/// Number of probe directions `e^{iα}` used by the definitional oracle.
pub const PROBE_DIRECTIONS: usize = 16;
/// Smallest step length tried by the definitional line search.
pub const MIN_STEP: f64 = 1e-8;
const REFINE_BUDGET: usize = 20_000;
const MAX_GROWTH: usize = 40;
/// A decrease this many tolerances deep settles non-orthogonality, so the
/// remaining probe directions are skipped.
const DECISIVE_DECREASE: f64 = 10.0;

/// `1e-7 (1 + w(T))`.
pub fn default_ortho_tol(w: f64) -> f64 {
    1e-7 * (1.0 + w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthoMethod {
    Characterization,
    Definitional,
}

/// An attaining vector backing an orthogonality verdict at angle `theta`.
#[derive(Debug, Clone)]
pub struct Witness {
    pub theta: f64,
    pub phi: f64,
    pub vector: Vec<Complex64>,
    /// `⟨Tx, x⟩`
    pub t_form: Complex64,
    /// `⟨Ax, x⟩`
    pub a_form: Complex64,
}

impl Witness {
    /// `Re{e^{-iθ} ⟨Tx,x⟩ conj(⟨Ax,x⟩)}`.
    pub fn condition(&self) -> f64 {
        (Complex64::from_polar(1.0, -self.theta) * self.t_form * self.a_form.conj()).re
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Counterexample {
    /// Angle at which the characterization fails; for the real field `0`
    /// means some `λ > 0` decreases `w` and `π` means some `λ < 0` does.
    Angle { theta: f64, margin: f64 },
    /// Explicit `λ` with `f(λ) = f(0) - margin`.
    Lambda { lambda: Complex64, margin: f64 },
}

#[derive(Debug, Clone)]
pub struct OrthoVerdict {
    pub orthogonal: bool,
    pub method: OrthoMethod,
    pub witnesses: Vec<Witness>,
    pub counterexample: Option<Counterexample>,
    /// Distance from the decision boundary on the method's own scale: the
    /// smallest certified `g(θ)` (characterization) or the best decrease /
    /// smallest secant slope (definitional).
    pub margin: f64,
    /// Set when the characterization exhausted its refinement budget with
    /// `g` grazing zero; such verdicts are reported as orthogonal.
    pub marginal: bool,
}

impl OrthoVerdict {
    fn trivially_orthogonal(method: OrthoMethod) -> Self {
        Self {
            orthogonal: true,
            method,
            witnesses: Vec::new(),
            counterexample: None,
            margin: f64::INFINITY,
            marginal: false,
        }
    }
}

fn check_pair(t: &CMatrix, a: &CMatrix) -> Result<()> {
    t.require_square()?;
    if t.shape() != a.shape() {
        return Err(Error::DimensionMismatch {
            left: t.shape(),
            right: a.shape(),
        });
    }
    Ok(())
}

struct CompressedComponent {
    phi: f64,
    basis: CMatrix,
    pencil: Pencil,
}

impl CompressedComponent {
    fn matrix_at(&self, theta: f64) -> CMatrix {
        self.pencil.at(self.phi - theta)
    }

    fn value_at(&self, theta: f64) -> Result<f64> {
        Ok(eigen::extreme_eigenvalues(&self.matrix_at(theta))?.1)
    }
}

struct Characterization<'a> {
    components: Vec<CompressedComponent>,
    evaluations: usize,
    t: &'a CMatrix,
    a: &'a CMatrix,
}

impl Characterization<'_> {
    /// `(g(θ), index of the maximizing component)`.
    fn g(&mut self, theta: f64) -> Result<(f64, usize)> {
        self.evaluations += 1;
        let mut best = (f64::NEG_INFINITY, 0);
        for (idx, comp) in self.components.iter().enumerate() {
            let v = comp.value_at(theta)?;
            if v > best.0 {
                best = (v, idx);
            }
        }
        Ok(best)
    }

    fn witness(&self, theta: f64, idx: usize) -> Result<Witness> {
        let comp = &self.components[idx];
        let h = comp.matrix_at(theta);
        let d = herm_eig(&h, eigen::default_eig_tol(&h))?;
        let y = d.vector(d.dim() - 1);
        let x = comp.basis.apply(&y);
        let x = normalized(&x).unwrap_or(x);
        Ok(Witness {
            theta,
            phi: comp.phi,
            t_form: self.t.quad_form(&x),
            a_form: self.a.quad_form(&x),
            vector: x,
        })
    }
}

enum CellOutcome {
    Certified,
    Violated(f64, f64),
    Floor,
}

/// Decides `T ⊥_w A` over `ℂ` through the attaining-vector characterization.
pub fn ortho_w(t: &CMatrix, a: &CMatrix, ortho_tol: f64) -> Result<OrthoVerdict> {
    ortho_w_on_grid(t, a, ortho_tol, CERT_GRID)
}

/// [`ortho_w`] with `grid` initial certification angles.
pub fn ortho_w_on_grid(t: &CMatrix, a: &CMatrix, ortho_tol: f64, grid: usize) -> Result<OrthoVerdict> {
    check_pair(t, a)?;
    if grid < 3 {
        return Err(Error::InvalidArgument("certification grid needs at least 3 angles"));
    }
    let method = OrthoMethod::Characterization;
    if a.is_zero() {
        return Ok(OrthoVerdict::trivially_orthogonal(method));
    }
    let set = match range::attaining_set_with(t, default_attain_tol) {
        Ok(set) => set,
        Err(Error::ZeroRadius { .. }) => return Ok(OrthoVerdict::trivially_orthogonal(method)),
        Err(e) => return Err(e),
    };
    if set.w <= ortho_tol {
        return Ok(OrthoVerdict::trivially_orthogonal(method));
    }
    let mut components = Vec::with_capacity(set.components.len());
    for comp in set.components {
        let compressed = a.compress(&comp.basis)?;
        components.push(CompressedComponent {
            phi: comp.phi,
            pencil: Pencil::new(&compressed)?,
            basis: comp.basis,
        });
    }
    let lipschitz = op_norm(a)?;
    let mut ch = Characterization {
        components,
        evaluations: 0,
        t,
        a,
    };

    let cells = grid;
    let delta = TAU / cells as f64;
    let mut grid = Vec::with_capacity(cells);
    for k in 0..cells {
        grid.push(ch.g(grid_angle(k, cells))?);
    }
    let (worst_k, worst) = grid
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (k, g)| if g.0 < acc.1 { (k, g.0) } else { acc });
    if worst <= -ortho_tol {
        return Ok(not_orthogonal(method, grid_angle(worst_k, cells), -worst));
    }

    let mut min_seen = worst;
    let mut marginal = false;
    for k in 0..cells {
        let lo = grid_angle(k, cells);
        let (g_lo, g_hi) = (grid[k].0, grid[(k + 1) % cells].0);
        match certify_cell(&mut ch, lo, delta, g_lo, g_hi, lipschitz, ortho_tol, &mut min_seen)? {
            CellOutcome::Certified => {}
            CellOutcome::Violated(theta, g) => return Ok(not_orthogonal(method, theta, -g)),
            CellOutcome::Floor => marginal = true,
        }
    }

    let mut witnesses = Vec::with_capacity(cells);
    for (k, &(_, idx)) in grid.iter().enumerate() {
        witnesses.push(ch.witness(grid_angle(k, cells), idx)?);
    }
    Ok(OrthoVerdict {
        orthogonal: true,
        method,
        witnesses,
        counterexample: None,
        margin: min_seen,
        marginal,
    })
}

fn not_orthogonal(method: OrthoMethod, theta: f64, margin: f64) -> OrthoVerdict {
    OrthoVerdict {
        orthogonal: false,
        method,
        witnesses: Vec::new(),
        counterexample: Some(Counterexample::Angle {
            theta: wrap_angle(theta),
            margin,
        }),
        margin,
        marginal: false,
    }
}

/// Certifies `g ≥ 0` on `[lo, lo + width]` from endpoint values, bisecting
/// where the Lipschitz bound is inconclusive.
#[allow(clippy::too_many_arguments)]
fn certify_cell(
    ch: &mut Characterization<'_>,
    lo: f64,
    width: f64,
    g_lo: f64,
    g_hi: f64,
    lipschitz: f64,
    ortho_tol: f64,
    min_seen: &mut f64,
) -> Result<CellOutcome> {
    // On the cell, g ≥ max(g_lo - L s, g_hi - L (width - s)) ≥ (g_lo + g_hi - L width) / 2.
    if g_lo + g_hi >= lipschitz * width {
        return Ok(CellOutcome::Certified);
    }
    if width < CERT_FLOOR || ch.evaluations > REFINE_BUDGET {
        return Ok(CellOutcome::Floor);
    }
    let mid = lo + 0.5 * width;
    let (g_mid, _) = ch.g(mid)?;
    *min_seen = min_seen.min(g_mid);
    if g_mid <= -ortho_tol {
        return Ok(CellOutcome::Violated(mid, g_mid));
    }
    let left = certify_cell(ch, lo, 0.5 * width, g_lo, g_mid, lipschitz, ortho_tol, min_seen)?;
    if let CellOutcome::Violated(..) = left {
        return Ok(left);
    }
    let right = certify_cell(ch, mid, 0.5 * width, g_mid, g_hi, lipschitz, ortho_tol, min_seen)?;
    Ok(match (left, right) {
        (_, CellOutcome::Violated(th, g)) => CellOutcome::Violated(th, g),
        (CellOutcome::Floor, _) | (_, CellOutcome::Floor) => CellOutcome::Floor,
        _ => CellOutcome::Certified,
    })
}

/// Outcome of a convex descent search on `λ ↦ f(λ)` from `λ = 0`.
struct DescentResult {
    f0: f64,
    best_lambda: Complex64,
    best_value: f64,
    min_slope: f64,
}

/// Probes `f` along each unit direction with a geometric step schedule from
/// `r0` down to [`MIN_STEP`], growing while a ray keeps descending. Stops
/// early once the decrease is decisive.
fn descent_search(
    mut f: impl FnMut(Complex64) -> Result<f64>,
    directions: &[Complex64],
    r0: f64,
    tol: f64,
) -> Result<DescentResult> {
    let f0 = f(Complex64::new(0.0, 0.0))?;
    let mut best_lambda = Complex64::new(0.0, 0.0);
    let mut best_value = f0;
    let mut min_slope = f64::INFINITY;
    let slope_floor = (1e-4 * r0).max(MIN_STEP);

    // Every direction is probed at r0 first; directions with the smallest
    // secant there are followed up first, since convexity makes them the
    // likeliest descent directions.
    let mut first: Vec<(Complex64, f64)> = Vec::with_capacity(directions.len());
    for &dir in directions {
        first.push((dir, f(dir * r0)?));
    }
    first.sort_by(|a, b| a.1.total_cmp(&b.1));
    for (dir, v0) in first {
        if best_value < f0 - DECISIVE_DECREASE * tol {
            break;
        }
        let record = |r: f64, v: f64, best_lambda: &mut Complex64, best_value: &mut f64, min_slope: &mut f64| {
            if v < *best_value {
                *best_value = v;
                *best_lambda = dir * r;
            }
            if r >= slope_floor {
                *min_slope = min_slope.min((v - f0) / r);
            }
        };
        record(r0, v0, &mut best_lambda, &mut best_value, &mut min_slope);
        // By convexity, f(r0) ≥ f0 rules out descent for longer steps.
        if v0 < f0 {
            let (mut r, mut prev) = (r0, v0);
            for _ in 0..MAX_GROWTH {
                r *= 2.0;
                let v = f(dir * r)?;
                record(r, v, &mut best_lambda, &mut best_value, &mut min_slope);
                if v >= prev {
                    break;
                }
                prev = v;
            }
        }
        if best_value < f0 - tol {
            continue;
        }
        let mut r = r0 * 0.5;
        while r >= MIN_STEP {
            let v = f(dir * r)?;
            record(r, v, &mut best_lambda, &mut best_value, &mut min_slope);
            if v < f0 - tol {
                // keep halving while the decrease improves
                let mut prev = v;
                let mut s = r * 0.5;
                while s >= MIN_STEP {
                    let v = f(dir * s)?;
                    record(s, v, &mut best_lambda, &mut best_value, &mut min_slope);
                    if v >= prev {
                        break;
                    }
                    prev = v;
                    s *= 0.5;
                }
                break;
            }
            r *= 0.5;
        }
    }
    Ok(DescentResult {
        f0,
        best_lambda,
        best_value,
        min_slope,
    })
}

fn complex_directions() -> Vec<Complex64> {
    (0..PROBE_DIRECTIONS)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / PROBE_DIRECTIONS as f64))
        .collect()
}

fn real_directions() -> Vec<Complex64> {
    alloc::vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]
}

fn verdict_from_descent(d: DescentResult, tol: f64) -> OrthoVerdict {
    let decrease = d.f0 - d.best_value;
    if decrease > tol {
        OrthoVerdict {
            orthogonal: false,
            method: OrthoMethod::Definitional,
            witnesses: Vec::new(),
            counterexample: Some(Counterexample::Lambda {
                lambda: d.best_lambda,
                margin: decrease,
            }),
            margin: decrease,
            marginal: false,
        }
    } else {
        OrthoVerdict {
            orthogonal: true,
            method: OrthoMethod::Definitional,
            witnesses: Vec::new(),
            counterexample: None,
            margin: d.min_slope.max(0.0),
            marginal: false,
        }
    }
}

fn both_real(t: &CMatrix, a: &CMatrix) -> bool {
    t.is_real() && a.is_real()
}

/// Decides `T ⊥_w A` from the definition by minimizing the convex function
/// `λ ↦ w(T + λA)`. For two real matrices `λ` ranges over `ℝ` and `w` is the
/// real-field radius.
pub fn ortho_w_definitional(t: &CMatrix, a: &CMatrix, ortho_tol: f64) -> Result<OrthoVerdict> {
    check_pair(t, a)?;
    if a.is_zero() {
        return Ok(OrthoVerdict::trivially_orthogonal(OrthoMethod::Definitional));
    }
    let real = both_real(t, a);
    let radius_of = |m: &CMatrix| -> Result<f64> {
        if real {
            Ok(real_radius(m)?.w)
        } else {
            Ok(range::radius(m, default_radius_tol(m))?.value)
        }
    };
    let w_t = radius_of(t)?;
    let r0 = (1.0 + w_t) / (1.0 + op_norm(a)?);
    let dirs = if real { real_directions() } else { complex_directions() };
    let d = descent_search(|lambda| radius_of(&t.add_scaled(lambda, a)?), &dirs, r0, ortho_tol)?;
    Ok(verdict_from_descent(d, ortho_tol))
}

/// Decides Birkhoff–James orthogonality `‖T + λA‖ ≥ ‖T‖` for the operator
/// norm by the same convex descent engine.
///
/// An attaining-vector characterization exists for this relation as well and
/// could serve as a fast path; the definitional route is used throughout.
pub fn ortho_b(t: &CMatrix, a: &CMatrix, tol: f64) -> Result<OrthoVerdict> {
    check_pair(t, a)?;
    if a.is_zero() {
        return Ok(OrthoVerdict::trivially_orthogonal(OrthoMethod::Definitional));
    }
    let norm_t = op_norm(t)?;
    let r0 = (1.0 + norm_t) / (1.0 + op_norm(a)?);
    let dirs = if both_real(t, a) { real_directions() } else { complex_directions() };
    let d = descent_search(|lambda| op_norm(&t.add_scaled(lambda, a)?), &dirs, r0, tol)?;
    Ok(verdict_from_descent(d, tol))
}

fn real_basis(cols: &[Vec<f64>]) -> Result<Option<CMatrix>> {
    if cols.is_empty() {
        return Ok(None);
    }
    let n = cols[0].len();
    Ok(Some(CMatrix::from_real_fn(n, cols.len(), |i, j| cols[j][i])))
}

/// Symmetric compression of `A` to a real eigenspace: `(V, Vᵗ A_s V, eig)`.
struct RealCompression {
    basis: CMatrix,
    eig: eigen::HermEigDecomp,
}

impl RealCompression {
    fn new(basis: CMatrix, a_sym: &CMatrix) -> Result<Self> {
        let c = a_sym.compress(&basis)?.symmetrize();
        let eig = herm_eig(&c, eigen::default_eig_tol(&c))?;
        Ok(Self { basis, eig })
    }

    fn lift(&self, k: usize) -> Vec<Complex64> {
        let x = self.basis.apply(&self.eig.vector(k));
        normalized(&x).unwrap_or(x)
    }

    fn top(&self) -> f64 {
        self.eig.max_value()
    }

    fn bottom(&self) -> f64 {
        self.eig.min_value()
    }
}

/// Decides `T ⊥_w A` over `ℝ` (real `λ`) from the `±w` eigenspaces of the
/// symmetric part of `T`: orthogonal iff some attaining `x` has
/// `⟨Tx,x⟩⟨Ax,x⟩ ≥ 0` and some attaining `y` has `⟨Ty,y⟩⟨Ay,y⟩ ≤ 0`.
pub fn ortho_w_real(t: &CMatrix, a: &CMatrix, ortho_tol: f64) -> Result<OrthoVerdict> {
    if !t.is_real() || !a.is_real() {
        return Err(Error::NotReal);
    }
    check_pair(t, a)?;
    let method = OrthoMethod::Characterization;
    let rr = real_radius(t)?;
    if rr.w <= ortho_tol || (rr.plus.is_empty() && rr.minus.is_empty()) {
        return Ok(OrthoVerdict::trivially_orthogonal(method));
    }
    let a_sym = a.hermitian_part()?;
    let plus = real_basis(&rr.plus)?.map(|b| RealCompression::new(b, &a_sym)).transpose()?;
    let minus = real_basis(&rr.minus)?.map(|b| RealCompression::new(b, &a_sym)).transpose()?;

    let mk = |comp: &RealCompression, k: usize, phi: f64, theta: f64| Witness {
        theta,
        phi,
        t_form: t.quad_form(&comp.lift(k)),
        a_form: a.quad_form(&comp.lift(k)),
        vector: comp.lift(k),
    };

    // (ii): ⟨Tx,x⟩⟨Ax,x⟩ ≥ 0 for some attaining x.
    let mut slack_ii = f64::NEG_INFINITY;
    let mut witness_ii = None;
    if let Some(p) = &plus {
        if p.top() > slack_ii {
            slack_ii = p.top();
            witness_ii = Some(mk(p, p.eig.dim() - 1, 0.0, 0.0));
        }
    }
    if let Some(m) = &minus {
        if -m.bottom() > slack_ii {
            slack_ii = -m.bottom();
            witness_ii = Some(mk(m, 0, PI, 0.0));
        }
    }
    // (iii): ⟨Ty,y⟩⟨Ay,y⟩ ≤ 0 for some attaining y.
    let mut slack_iii = f64::NEG_INFINITY;
    let mut witness_iii = None;
    if let Some(p) = &plus {
        if -p.bottom() > slack_iii {
            slack_iii = -p.bottom();
            witness_iii = Some(mk(p, 0, 0.0, PI));
        }
    }
    if let Some(m) = &minus {
        if m.top() > slack_iii {
            slack_iii = m.top();
            witness_iii = Some(mk(m, m.eig.dim() - 1, PI, PI));
        }
    }

    let ok_ii = slack_ii >= -ortho_tol;
    let ok_iii = slack_iii >= -ortho_tol;
    if ok_ii && ok_iii {
        let witnesses = witness_ii.into_iter().chain(witness_iii).collect();
        return Ok(OrthoVerdict {
            orthogonal: true,
            method,
            witnesses,
            counterexample: None,
            margin: slack_ii.min(slack_iii),
            marginal: false,
        });
    }
    // A failing (ii) means every attaining x has ⟨Tx,x⟩⟨Ax,x⟩ < 0, so small
    // λ > 0 shrinks w; a failing (iii) does the same for λ < 0.
    let (theta, margin) = if !ok_ii { (0.0, -slack_ii) } else { (PI, -slack_iii) };
    Ok(OrthoVerdict {
        orthogonal: false,
        method,
        witnesses: Vec::new(),
        counterexample: Some(Counterexample::Angle { theta, margin }),
        margin,
        marginal: false,
    })
}

/// Searches `M_{w(T)}` (real field) for a unit `z` with `|⟨Az, z⟩| ≤ tol`.
///
/// Existence of such a `z` implies `T ⊥_w A`; the converse needs
/// connectedness hypotheses on `M_{w(T)}` that are not checked here.
pub fn zero_witness(t: &CMatrix, a: &CMatrix, tol: f64) -> Result<Option<Vec<f64>>> {
    if !t.is_real() || !a.is_real() {
        return Err(Error::NotReal);
    }
    check_pair(t, a)?;
    let rr = real_radius(t)?;
    if rr.w <= tol || (rr.plus.is_empty() && rr.minus.is_empty()) {
        return Err(Error::ZeroRadius { w: rr.w, tol });
    }
    let a_sym = a.hermitian_part()?;
    for cols in [&rr.plus, &rr.minus] {
        let Some(basis) = real_basis(cols)? else {
            continue;
        };
        let comp = RealCompression::new(basis, &a_sym)?;
        let (lo, hi) = (comp.bottom(), comp.top());
        if lo > tol || hi < -tol {
            continue;
        }
        let z = if lo.abs() <= tol {
            comp.lift(0)
        } else if hi.abs() <= tol {
            comp.lift(comp.eig.dim() - 1)
        } else {
            // lo < 0 < hi: mix the extreme eigenvectors so the form vanishes.
            let v1 = comp.eig.vector(0);
            let v2 = comp.eig.vector(comp.eig.dim() - 1);
            let (c1, c2) = (hi.abs().sqrt(), lo.abs().sqrt());
            let y: Vec<Complex64> = v1.iter().zip(&v2).map(|(p, q)| p * c1 + q * c2).collect();
            let x = comp.basis.apply(&y);
            normalized(&x).unwrap_or(x)
        };
        return Ok(Some(z.iter().map(|c| c.re).collect()));
    }
    Ok(None)
}
