//! Dense bit-packed matrices over GF(2).

use std::fmt;

const W: usize = 64;

/// Row-major matrix over GF(2), one bit per entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(W);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from a dense 0/1 description.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v & 1 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / W] >> (c % W) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / W];
        let bit = 1u64 << (c % W);
        if v {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / W] ^= 1u64 << (c % W);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.ones_in_row(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Column indices of the set bits in row `r`.
    pub fn ones_in_row(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(r).iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * W + b)
            })
        })
    }

    /// Product `self * other`, or `None` on a shape mismatch.
    pub fn mul(&self, other: &BitMatrix) -> Option<BitMatrix> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in self.ones_in_row(r) {
                let src = other.row(k);
                let dst = &mut out.data[r * out.stride..(r + 1) * out.stride];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d ^= s;
                }
            }
        }
        Some(out)
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let stride = self.stride;
        let mut rank = 0;
        for c in 0..self.cols {
            let (wi, bit) = (c / W, 1u64 << (c % W));
            let Some(p) = (rank..self.rows).find(|&r| m[r * stride + wi] & bit != 0) else {
                continue;
            };
            if p != rank {
                for i in 0..stride {
                    m.swap(p * stride + i, rank * stride + i);
                }
            }
            for r in rank + 1..self.rows {
                if m[r * stride + wi] & bit != 0 {
                    for i in wi..stride {
                        let v = m[rank * stride + i];
                        m[r * stride + i] ^= v;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Dimension of the kernel of the map `F^cols -> F^rows`.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

/// `lower ∘ upper == 0` for composable maps; `false` on a shape mismatch.
pub fn compose_check(lower: &BitMatrix, upper: &BitMatrix) -> bool {
    lower.mul(upper).is_some_and(|p| p.is_zero())
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|c| if self.get(r, c) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        assert_eq!(BitMatrix::identity(130).rank(), 130);
        assert_eq!(BitMatrix::zeros(4, 7).rank(), 0);
        assert_eq!(BitMatrix::zeros(0, 3).nullity(), 3);
    }

    #[test]
    fn small_ranks() {
        let m = BitMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.nullity(), 1);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn composition() {
        let d1 = BitMatrix::from_rows(&[vec![1, 1]]);
        let d2 = BitMatrix::from_rows(&[vec![1], vec![1]]);
        assert!(compose_check(&d1, &d2));
        assert!(!compose_check(&d1, &BitMatrix::from_rows(&[vec![1], vec![0]])));
        assert!(!compose_check(&d1, &BitMatrix::identity(3)));
    }
}
