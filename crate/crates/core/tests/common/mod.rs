//! Random ensembles and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use numrad_core::matrix::{inner, normalized, vec_norm};
use numrad_core::{BlockPartition, CMatrix, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

pub fn cnormal(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(normal(rng), normal(rng))
}

pub fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| cnormal(rng))
}

pub fn real_gaussian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    CMatrix::from_real_fn(n, n, |_, _| normal(rng))
}

pub fn complex_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| cnormal(rng)).collect()
}

pub fn unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    normalized(&complex_vector(rng, n)).unwrap()
}

pub fn real_unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|_| normal(rng)).collect();
    let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / s).collect()
}

/// Gram–Schmidt on Gaussian columns.
pub fn unitary(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = complex_vector(rng, n);
        for q in &cols {
            let c = inner(&v, q);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= c * qi;
            }
        }
        if vec_norm(&v) > 1e-6 {
            cols.push(normalized(&v).unwrap());
        }
    }
    CMatrix::from_columns(&cols).unwrap()
}

pub fn hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let g = gaussian(rng, n);
    g.add(&g.adjoint()).unwrap().scale(Complex64::new(0.5, 0.0))
}

/// `x y*` with `⟨x, y⟩ = 0`, so `T² = 0`.
pub fn square_zero(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let x = complex_vector(rng, n);
    let mut y = complex_vector(rng, n);
    let c = inner(&y, &x) / inner(&x, &x);
    for (yi, xi) in y.iter_mut().zip(&x) {
        *yi -= c * xi;
    }
    CMatrix::outer(&x, &y)
}

pub fn skew_symmetric(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let g = real_gaussian(rng, n);
    g.sub(&g.adjoint()).unwrap().scale(Complex64::new(0.5, 0.0)).try_into_real().unwrap()
}

pub fn upper_triangular(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |i, j| if i <= j { cnormal(rng) } else { Complex64::new(0.0, 0.0) })
}

pub fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> BlockPartition {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.gen_range(1..=left.min(3));
        sizes.push(s);
        left -= s;
    }
    BlockPartition::new(sizes).unwrap()
}

/// Random matrix that is zero outside the block superdiagonal of `p`.
pub fn block_shift(rng: &mut ChaCha8Rng, p: &BlockPartition) -> CMatrix {
    let n = p.dim();
    let mut m = CMatrix::zeros(n, n).to_complex();
    for j in 0..p.len().saturating_sub(1) {
        let b = CMatrix::from_fn(p.sizes()[j], p.sizes()[j + 1], |_, _| cnormal(rng));
        m = m.add(&numrad_core::block::embed_block(p, j, j + 1, &b).unwrap()).unwrap();
    }
    m
}

/// Normal matrix `U diag(w e^{iφ_k}, small…) U*` with four attaining angles
/// spread around the circle, paired with `I + ε·G`. Every compression of `A`
/// to an attaining line has positive real part, and the largest angular gap
/// between attaining angles is below π, so `T ⊥_w A` with room to spare.
pub fn spread_orthogonal_pair(rng: &mut ChaCha8Rng, n: usize) -> (CMatrix, CMatrix) {
    assert!(n >= 4);
    let w = 1.0 + rng.gen::<f64>();
    let mut d = Vec::with_capacity(n);
    for k in 0..4 {
        let phi = k as f64 * std::f64::consts::FRAC_PI_2 + 0.3 * (rng.gen::<f64>() - 0.5);
        d.push(Complex64::from_polar(w, phi));
    }
    for _ in 4..n {
        d.push(Complex64::from_polar(0.5 * w * rng.gen::<f64>(), 6.3 * rng.gen::<f64>()));
    }
    let u = unitary(rng, n);
    let t = u.matmul(&CMatrix::diag(&d)).unwrap().matmul(&u.adjoint()).unwrap();
    let g = gaussian(rng, n).scale(Complex64::new(0.05, 0.0));
    (t, CMatrix::identity(n).add(&g).unwrap())
}

fn quad(t: &CMatrix, x: &[Complex64]) -> Complex64 {
    t.quad_form(x)
}

/// Lower estimate of `w(T)` by random sphere search followed by local
/// fixed-point refinement `x ← normalize(e^{-iφ}Tx + e^{iφ}T*x)` with
/// `φ = arg⟨Tx, x⟩`. Never uses an eigensolver.
pub fn brute_force_radius(t: &CMatrix, rng: &mut ChaCha8Rng, samples: usize) -> f64 {
    let n = t.rows();
    let ts = t.adjoint();
    let mut starts: Vec<(f64, Vec<Complex64>)> = Vec::new();
    let mut best = 0.0f64;
    for _ in 0..samples {
        let x = unit_vector(rng, n);
        let v = quad(t, &x).norm();
        best = best.max(v);
        if starts.len() < 8 || v > starts[starts.len() - 1].0 {
            starts.push((v, x));
            starts.sort_by(|a, b| b.0.total_cmp(&a.0));
            starts.truncate(8);
        }
    }
    for (_, mut x) in starts {
        for _ in 0..2000 {
            let z = quad(t, &x);
            let ph = if z.norm() > 0.0 { z / z.norm() } else { Complex64::new(1.0, 0.0) };
            let tx = t.apply(&x);
            let tsx = ts.apply(&x);
            // shift by ‖T‖-ish to keep the iteration ascending
            let shift = 2.0 * t.frobenius_norm();
            let y: Vec<Complex64> = (0..n).map(|i| (ph.conj() * tx[i] + ph * tsx[i]) * 0.5 + x[i] * shift).collect();
            match normalized(&y) {
                Some(y) => x = y,
                None => break,
            }
            best = best.max(quad(t, &x).norm());
        }
    }
    best
}
