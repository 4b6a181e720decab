//! Block partitions of square matrices.

use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Block sizes `n_1, …, n_k` of a direct-sum decomposition `ℂ^n = ⊕ ℂ^{n_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    sizes: Vec<usize>,
}

impl BlockPartition {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.iter().any(|&s| s == 0) {
            return Err(Error::InvalidPartition);
        }
        Ok(Self { sizes })
    }

    /// `n` blocks of size one.
    pub fn scalar(n: usize) -> Self {
        Self {
            sizes: alloc::vec![1; n.max(1)],
        }
    }

    /// A single block covering the whole space.
    pub fn whole(n: usize) -> Self {
        Self { sizes: alloc::vec![n.max(1)] }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn all_equal(&self) -> bool {
        self.sizes.windows(2).all(|w| w[0] == w[1])
    }

    /// Index range of block `i` (zero based).
    pub fn range(&self, i: usize) -> Range<usize> {
        let start: usize = self.sizes[..i].iter().sum();
        start..start + self.sizes[i]
    }

    /// Checks that `m` is square with dimension matching the partition.
    pub fn check(&self, m: &CMatrix) -> Result<()> {
        m.require_square()?;
        if self.dim() != m.rows() {
            return Err(Error::PartitionMismatch {
                sum: self.dim(),
                dim: m.rows(),
            });
        }
        Ok(())
    }

    fn check_index(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.len() || j >= self.len() {
            return Err(Error::IndexOutOfRange {
                i,
                j,
                blocks: self.len(),
            });
        }
        Ok(())
    }
}

/// Block `(i, j)` (zero based) of `m` under partition `p`.
pub fn block_extract(m: &CMatrix, p: &BlockPartition, i: usize, j: usize) -> Result<CMatrix> {
    p.check(m)?;
    p.check_index(i, j)?;
    Ok(submatrix(m, p.range(i), p.range(j)))
}

/// Copy of `m` with block row `i` and block column `i` set to zero.
pub fn zero_cross(m: &CMatrix, p: &BlockPartition, i: usize) -> Result<CMatrix> {
    p.check(m)?;
    p.check_index(i, i)?;
    let r = p.range(i);
    let mut out = m.clone();
    let zero = num_complex::Complex64::new(0.0, 0.0);
    for a in 0..m.rows() {
        for b in 0..m.cols() {
            if r.contains(&a) || r.contains(&b) {
                out.set(a, b, zero);
            }
        }
    }
    Ok(out)
}

/// Places `block` at block position `(i, j)` of a zero matrix shaped by `p`.
pub fn embed_block(p: &BlockPartition, i: usize, j: usize, block: &CMatrix) -> Result<CMatrix> {
    p.check_index(i, j)?;
    let (ri, rj) = (p.range(i), p.range(j));
    if block.shape() != (ri.len(), rj.len()) {
        return Err(Error::DimensionMismatch {
            left: (ri.len(), rj.len()),
            right: block.shape(),
        });
    }
    let n = p.dim();
    let mut out = CMatrix::zeros(n, n);
    if !block.is_real() {
        out = out.to_complex();
    }
    for (a, row) in ri.clone().enumerate() {
        for (b, col) in rj.clone().enumerate() {
            out.set(row, col, block.get(a, b));
        }
    }
    Ok(out)
}

/// Principal submatrix `[[A_ii, A_ij], [A_ji, A_jj]]` for `i != j`.
pub fn principal_pair(m: &CMatrix, p: &BlockPartition, i: usize, j: usize) -> Result<CMatrix> {
    p.check(m)?;
    p.check_index(i, j)?;
    let idx: Vec<usize> = p.range(i).chain(p.range(j)).collect();
    Ok(select(m, &idx, &idx))
}

pub(crate) fn submatrix(m: &CMatrix, rows: Range<usize>, cols: Range<usize>) -> CMatrix {
    let r: Vec<usize> = rows.collect();
    let c: Vec<usize> = cols.collect();
    select(m, &r, &c)
}

fn select(m: &CMatrix, rows: &[usize], cols: &[usize]) -> CMatrix {
    let mut data = Vec::with_capacity(rows.len() * cols.len());
    for &a in rows {
        for &b in cols {
            data.push(m.get(a, b));
        }
    }
    CMatrix::from_parts(rows.len(), cols.len(), data, m.field())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn example_3_10() -> CMatrix {
        let z = c(0.0, 0.0);
        CMatrix::from_rows(&[
            &[c(0.0, 2.6), c(0.0, 4.0), z],
            &[z, c(0.0, 2.5), z],
            &[z, z, c(1.0, 1.0)],
        ])
        .unwrap()
    }

    #[test]
    fn extract_leading_block() {
        let t = example_3_10();
        let p = BlockPartition::new(alloc::vec![2, 1]).unwrap();
        let b = block_extract(&t, &p, 0, 0).unwrap();
        let expect = CMatrix::from_rows(&[&[c(0.0, 2.6), c(0.0, 4.0)], &[c(0.0, 0.0), c(0.0, 2.5)]]).unwrap();
        assert_eq!(b, expect);
        assert_eq!(block_extract(&t, &BlockPartition::whole(3), 0, 0).unwrap(), t);
        let z = block_extract(&CMatrix::zeros(3, 3), &p, 1, 0).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.shape(), (1, 2));
    }

    #[test]
    fn extract_errors() {
        let t = example_3_10();
        let p = BlockPartition::new(alloc::vec![2, 1]).unwrap();
        assert!(matches!(block_extract(&t, &p, 2, 0), Err(Error::IndexOutOfRange { .. })));
        let bad = BlockPartition::new(alloc::vec![2, 2]).unwrap();
        assert!(matches!(block_extract(&t, &bad, 0, 0), Err(Error::PartitionMismatch { .. })));
        assert_eq!(BlockPartition::new(alloc::vec![]), Err(Error::InvalidPartition));
        assert_eq!(BlockPartition::new(alloc::vec![1, 0]), Err(Error::InvalidPartition));
    }

    #[test]
    fn zero_cross_examples() {
        let t = example_3_10();
        let p = BlockPartition::scalar(3);
        let t3 = zero_cross(&t, &p, 2).unwrap();
        let z = c(0.0, 0.0);
        let expect = CMatrix::from_rows(&[&[c(0.0, 2.6), c(0.0, 4.0), z], &[z, c(0.0, 2.5), z], &[z, z, z]]).unwrap();
        assert_eq!(t3, expect);
        assert_eq!(zero_cross(&t3, &p, 2).unwrap(), t3);

        let d = CMatrix::real_diag(&[1.0, 2.0, 3.0]);
        assert_eq!(zero_cross(&d, &p, 1).unwrap(), CMatrix::real_diag(&[1.0, 0.0, 3.0]));
    }

    fn matrix_and_partition() -> impl Strategy<Value = (CMatrix, BlockPartition)> {
        proptest::collection::vec(1usize..=3, 1..=4).prop_flat_map(|sizes| {
            let n: usize = sizes.iter().sum();
            proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n).prop_map(move |raw| {
                let m = CMatrix::from_fn(n, n, |i, j| c(raw[i * n + j].0, raw[i * n + j].1));
                (m, BlockPartition::new(sizes.clone()).unwrap())
            })
        })
    }

    proptest! {
        #[test]
        fn blocks_reassemble_exactly((m, p) in matrix_and_partition()) {
            let n = m.rows();
            let mut acc = CMatrix::zeros(n, n).to_complex();
            for i in 0..p.len() {
                for j in 0..p.len() {
                    let b = block_extract(&m, &p, i, j).unwrap();
                    acc = acc.add(&embed_block(&p, i, j, &b).unwrap()).unwrap();
                }
            }
            prop_assert_eq!(acc, m.clone());

            // T_i plus its cross equals M.
            for i in 0..p.len() {
                let t = zero_cross(&m, &p, i).unwrap();
                let mut cross = CMatrix::zeros(n, n).to_complex();
                for j in 0..p.len() {
                    if j != i {
                        cross = cross.add(&embed_block(&p, i, j, &block_extract(&m, &p, i, j).unwrap()).unwrap()).unwrap();
                        cross = cross.add(&embed_block(&p, j, i, &block_extract(&m, &p, j, i).unwrap()).unwrap()).unwrap();
                    }
                }
                cross = cross.add(&embed_block(&p, i, i, &block_extract(&m, &p, i, i).unwrap()).unwrap()).unwrap();
                prop_assert_eq!(t.add(&cross).unwrap(), m.clone());
            }
        }
    }
}
