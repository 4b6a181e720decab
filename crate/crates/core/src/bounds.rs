//! Lower bounds for `w(T)` from block decompositions, classical lower bounds
//! in terms of `H`, `K`, `‖T‖` and Crawford numbers, two Gau–Wu comparators,
//! and Kittaneh's upper bound `w(T)² ≤ ½‖TT* + T*T‖`.

use alloc::vec::Vec;

use crate::block::{block_extract, principal_pair, zero_cross, BlockPartition};
use crate::error::{Error, Result};
use crate::matrix::{min_singular_value, op_norm, CMatrix};
use crate::range::{self, crawford, default_radius_tol, herm_pencil};

/// Entries below this modulus count as zero when checking block structure.
pub const STRUCTURE_TOL: f64 = 1e-12;

/// Catalog identifiers in report order.
pub const CATALOG: [&str; 15] = [
    "thm32",
    "thm33",
    "thm34",
    "cor35",
    "thm36",
    "thm38",
    "gw_shift",
    "gw_cyclic",
    "kmy",
    "aok",
    "bbp1",
    "bbp2",
    "hks1",
    "hks2",
    "kittaneh_upper",
];

/// `1e-6 (1 + w)`.
pub fn default_report_tol(w: f64) -> f64 {
    1e-6 * (1.0 + w)
}

fn w(m: &CMatrix) -> Result<f64> {
    Ok(range::radius(m, default_radius_tol(m))?.value)
}

/// `max{w(A), w(D), ½w(B+C), ½w(B−C)}` for `T = [[A, B], [C, D]]`. The
/// `B ± C` terms need square off-diagonal blocks and are skipped otherwise.
pub fn bound_thm32(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix) -> Result<f64> {
    a.require_square()?;
    d.require_square()?;
    let (m, k) = (a.rows(), d.rows());
    if b.shape() != (m, k) {
        return Err(Error::DimensionMismatch {
            left: (m, k),
            right: b.shape(),
        });
    }
    if c.shape() != (k, m) {
        return Err(Error::DimensionMismatch {
            left: (k, m),
            right: c.shape(),
        });
    }
    let mut best = w(a)?.max(w(d)?);
    if m == k {
        best = best.max(0.5 * w(&b.add(c)?)?).max(0.5 * w(&b.sub(c)?)?);
    }
    Ok(best)
}

fn diagonal_terms(m: &CMatrix, p: &BlockPartition) -> Result<f64> {
    let mut best = 0.0f64;
    for k in 0..p.len() {
        best = best.max(w(&block_extract(m, p, k, k)?)?);
    }
    Ok(best)
}

/// `max{w(A_kk), w(T_i)}` where `T_i` zeroes block row and column `i`.
pub fn bound_thm33(m: &CMatrix, p: &BlockPartition) -> Result<f64> {
    p.check(m)?;
    let mut best = diagonal_terms(m, p)?;
    for i in 0..p.len() {
        best = best.max(w(&zero_cross(m, p, i)?)?);
    }
    Ok(best)
}

/// `max{w(A_kk), w([[A_ii, A_ij], [A_ji, A_jj]])}` over all block pairs.
pub fn bound_thm34(m: &CMatrix, p: &BlockPartition) -> Result<f64> {
    p.check(m)?;
    let mut best = diagonal_terms(m, p)?;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            best = best.max(w(&principal_pair(m, p, i, j)?)?);
        }
    }
    Ok(best)
}

/// `max{w(A_kk), ½w(A_ij + A_ji), ½w(A_ij − A_ji)}` for equal block sizes.
pub fn bound_cor35(m: &CMatrix, p: &BlockPartition) -> Result<f64> {
    p.check(m)?;
    if !p.all_equal() {
        return Err(Error::UnequalBlocks);
    }
    let mut best = diagonal_terms(m, p)?;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let (aij, aji) = (block_extract(m, p, i, j)?, block_extract(m, p, j, i)?);
            best = best.max(0.5 * w(&aij.add(&aji)?)?).max(0.5 * w(&aij.sub(&aji)?)?);
        }
    }
    Ok(best)
}

fn require_upper_triangular(m: &CMatrix, p: &BlockPartition) -> Result<()> {
    for i in 0..p.len() {
        for j in 0..i {
            if block_extract(m, p, i, j)?.max_abs() > STRUCTURE_TOL {
                return Err(Error::NotUpperTriangular { i, j });
            }
        }
    }
    Ok(())
}

/// `max{w(A_kk), ‖A_ij‖/2 : i < j}` for block upper-triangular `M`.
pub fn bound_thm36(m: &CMatrix, p: &BlockPartition) -> Result<f64> {
    p.check(m)?;
    require_upper_triangular(m, p)?;
    let mut best = diagonal_terms(m, p)?;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            best = best.max(0.5 * op_norm(&block_extract(m, p, i, j)?)?);
        }
    }
    Ok(best)
}

/// [`bound_thm33`] with every block of size one.
pub fn bound_thm38_scalar(m: &CMatrix) -> Result<f64> {
    m.require_square()?;
    bound_thm33(m, &BlockPartition::scalar(m.rows()))
}

/// Scalar comparators for a block shift with superdiagonal blocks `A_j`:
/// `(w(B), w(C))` where `B` and `C` carry `m(A_j)` and `m(A_j*)` on their
/// superdiagonals.
pub fn gau_wu_block_shift(m: &CMatrix, p: &BlockPartition) -> Result<(f64, f64)> {
    let (b, c) = gau_wu_shift_matrices(m, p)?;
    Ok((w(&b)?, w(&c)?))
}

/// The matrices `B` and `C` behind [`gau_wu_block_shift`].
pub fn gau_wu_shift_matrices(m: &CMatrix, p: &BlockPartition) -> Result<(CMatrix, CMatrix)> {
    p.check(m)?;
    let k = p.len();
    for i in 0..k {
        for j in 0..k {
            if j != i + 1 && block_extract(m, p, i, j)?.max_abs() > STRUCTURE_TOL {
                return Err(Error::NotBlockShift { i, j });
            }
        }
    }
    let mut b = alloc::vec![0.0; k * k];
    let mut c = alloc::vec![0.0; k * k];
    for j in 0..k.saturating_sub(1) {
        let aj = block_extract(m, p, j, j + 1)?;
        b[j * k + j + 1] = min_singular_value(&aj)?;
        c[j * k + j + 1] = min_singular_value(&aj.adjoint())?;
    }
    Ok((
        CMatrix::from_real_fn(k, k, |i, j| b[i * k + j]),
        CMatrix::from_real_fn(k, k, |i, j| c[i * k + j]),
    ))
}

/// `w(B)` where `B` keeps only the cyclic entries `(1,2), …, (n−1,n), (n,1)`.
pub fn gau_wu_cyclic(m: &CMatrix) -> Result<f64> {
    m.require_square()?;
    let n = m.rows();
    let mut b = m.clone();
    for i in 0..n {
        for j in 0..n {
            if j != (i + 1) % n {
                b.set(i, j, num_complex::Complex64::new(0.0, 0.0));
            }
        }
    }
    w(&b)
}

/// The six classical lower bounds, in order KMY, AOK, BBP1, BBP2, HKS1, HKS2.
pub fn lit_bounds(t: &CMatrix) -> Result<Vec<(&'static str, f64)>> {
    t.require_square()?;
    let h = herm_pencil(t, 0.0)?;
    let k = herm_pencil(t, core::f64::consts::FRAC_PI_2)?;
    let (nh, nk, nt) = (op_norm(&h)?, op_norm(&k)?, op_norm(t)?);
    let ts = t.adjoint();
    let gram_sum = ts.matmul(t)?.add(&t.matmul(&ts)?)?;
    let t2 = t.matmul(t)?;
    let c_t2 = crawford(&t2, default_radius_tol(&t2))?;
    let c_h = crawford(&h, default_radius_tol(&h))?;
    let c_k = crawford(&k, default_radius_tol(&k))?;
    Ok(alloc::vec![
        ("kmy", ((nh * nh + nk * nk) / 2.0).sqrt()),
        ("aok", 0.5 * (op_norm(&gram_sum)? + 2.0 * c_t2).sqrt()),
        ("bbp1", (nh * nh + c_k * c_k).sqrt()),
        ("bbp2", (nk * nk + c_h * c_h).sqrt()),
        ("hks1", 0.5 * nt + 0.5 * (nh - nk).abs()),
        ("hks2", 0.5 * nt + 0.25 * (nh - 0.5 * nt).abs() + 0.25 * (nk - 0.5 * nt).abs()),
    ])
}

/// `√(½‖TT* + T*T‖)`.
pub fn upper_kittaneh(t: &CMatrix) -> Result<f64> {
    t.require_square()?;
    let ts = t.adjoint();
    let s = t.matmul(&ts)?.add(&ts.matmul(t)?)?;
    Ok((0.5 * op_norm(&s)?).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundEntry {
    pub id: &'static str,
    pub value: f64,
    pub kind: BoundKind,
    pub valid: bool,
    pub source: &'static str,
}

#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub reference_w: f64,
    pub report_tol: f64,
    pub entries: Vec<BoundEntry>,
    pub best_lower: &'static str,
    pub partition: Option<BlockPartition>,
}

impl BoundsReport {
    pub fn get(&self, id: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}

fn source_of(id: &str) -> &'static str {
    match id {
        "thm32" => "two-block: max{w(A), w(D), w(B+C)/2, w(B-C)/2}",
        "thm33" => "diagonal blocks and zero-cross matrices",
        "thm34" => "diagonal blocks and 2x2 block principal submatrices",
        "cor35" => "diagonal blocks and w(A_ij +/- A_ji)/2",
        "thm36" => "block upper triangular: diagonal blocks and |A_ij|/2",
        "thm38" => "scalar zero-cross matrices",
        "gw_shift" => "Gau-Wu block shift comparator",
        "gw_cyclic" => "Gau-Wu cyclic entries comparator",
        "kmy" => "Kittaneh-Moslehian-Yamazaki",
        "aok" => "Abu-Omar-Kittaneh",
        "bbp1" | "bbp2" => "Bhunia-Bag-Paul",
        "hks1" | "hks2" => "Hirzallah-Kittaneh-Shebrawi",
        "kittaneh_upper" => "Kittaneh upper bound",
        _ => "",
    }
}

/// Accepts structural errors as "bound does not apply".
fn applicable(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::UnequalBlocks | Error::NotUpperTriangular { .. } | Error::NotBlockShift { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Evaluates every applicable bound on `T`. Partition-dependent bounds are
/// only evaluated when `p` is given; `thm32` additionally needs exactly two
/// blocks.
pub fn report(t: &CMatrix, p: Option<&BlockPartition>, report_tol: f64) -> Result<BoundsReport> {
    t.require_square()?;
    if let Some(p) = p {
        p.check(t)?;
    }
    let reference_w = w(t)?;
    let mut values: Vec<(&'static str, f64)> = Vec::new();
    if let Some(p) = p {
        if p.len() == 2 {
            let blk = |i, j| block_extract(t, p, i, j);
            values.push(("thm32", bound_thm32(&blk(0, 0)?, &blk(0, 1)?, &blk(1, 0)?, &blk(1, 1)?)?));
        }
        values.push(("thm33", bound_thm33(t, p)?));
        values.push(("thm34", bound_thm34(t, p)?));
        if let Some(v) = applicable(bound_cor35(t, p))? {
            values.push(("cor35", v));
        }
        if let Some(v) = applicable(bound_thm36(t, p))? {
            values.push(("thm36", v));
        }
    }
    values.push(("thm38", bound_thm38_scalar(t)?));
    if let Some(p) = p {
        if let Some(v) = applicable(gau_wu_block_shift(t, p).map(|(b, c)| b.max(c)))? {
            values.push(("gw_shift", v));
        }
    }
    values.push(("gw_cyclic", gau_wu_cyclic(t)?));
    values.extend(lit_bounds(t)?);
    values.push(("kittaneh_upper", upper_kittaneh(t)?));

    let mut entries = Vec::with_capacity(values.len());
    let mut best: Option<(&'static str, f64)> = None;
    for (id, value) in values {
        let kind = if id == "kittaneh_upper" {
            BoundKind::Upper
        } else {
            BoundKind::Lower
        };
        let valid = match kind {
            BoundKind::Lower => value <= reference_w + report_tol,
            BoundKind::Upper => value >= reference_w - report_tol,
        };
        if kind == BoundKind::Lower && valid && best.is_none_or(|b| value > b.1) {
            best = Some((id, value));
        }
        entries.push(BoundEntry {
            id,
            value,
            kind,
            valid,
            source: source_of(id),
        });
    }
    Ok(BoundsReport {
        reference_w,
        report_tol,
        entries,
        best_lower: best.map_or("", |b| b.0),
        partition: p.cloned(),
    })
}
