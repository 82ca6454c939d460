//! Square Boolean matrices with bitset rows.
//!
//! `BoolMatrix` is the representation of per-symbol transition relations and
//! of transition-monoid elements. Rows are packed into `u64` blocks; all
//! padding bits are kept at zero so that derived `Eq`/`Hash` coincide with
//! matrix equality.

use std::fmt;

type Block = u64;
const BLOCK_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<Block>,
}

impl BoolMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        let words_per_row = n.div_ceil(BLOCK_BITS);
        BoolMatrix {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// The all-ones (complete) matrix.
    pub fn complete(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn from_entries(n: usize, entries: &[(usize, usize)]) -> Self {
        let mut m = Self::zeros(n);
        for &(i, j) in entries {
            m.set(i, j, true);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n);
        let word = self.bits[i * self.words_per_row + j / BLOCK_BITS];
        word >> (j % BLOCK_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.n && j < self.n);
        let word = &mut self.bits[i * self.words_per_row + j / BLOCK_BITS];
        let mask = 1 << (j % BLOCK_BITS);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    pub fn row(&self, i: usize) -> &[Block] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.count_ones() == self.n * self.n
    }

    pub fn diag_all_ones(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    pub fn ones_in_row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(i);
        (0..self.n).filter(move |&j| row[j / BLOCK_BITS] >> (j % BLOCK_BITS) & 1 == 1)
    }

    /// Boolean matrix product: `(xy)_{ij} = ∨_k (x_{ik} ∧ y_{kj})`.
    ///
    /// Row `i` of the product is the union of the rows of `rhs` selected by
    /// row `i` of `self`.
    pub fn matmul(&self, rhs: &BoolMatrix) -> BoolMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch: {} vs {}", self.n, rhs.n);
        let mut out = BoolMatrix::zeros(self.n);
        for i in 0..self.n {
            let dst_start = i * out.words_per_row;
            for k in self.ones_in_row(i) {
                let src = rhs.row(k);
                for (w, &s) in out.bits[dst_start..dst_start + out.words_per_row]
                    .iter_mut()
                    .zip(src)
                {
                    *w |= s;
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> BoolMatrix {
        let mut acc = BoolMatrix::identity(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base);
            }
        }
        acc
    }

    /// Row-vector product `v·M`: the union of the rows selected by `v`.
    /// `v` is a bitset over `0..n` in the same block layout as a row.
    pub fn image(&self, v: &[Block]) -> Vec<Block> {
        assert_eq!(v.len(), self.words_per_row);
        let mut out = vec![0; self.words_per_row];
        for i in 0..self.n {
            if v[i / BLOCK_BITS] >> (i % BLOCK_BITS) & 1 == 1 {
                for (w, &s) in out.iter_mut().zip(self.row(i)) {
                    *w |= s;
                }
            }
        }
        out
    }

    /// Adjacency lists of the precedence graph G(B).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| self.ones_in_row(i).collect()).collect()
    }

    /// Transitive (non-reflexive) closure by Warshall's algorithm:
    /// entry `(i, j)` of the result is set iff there is a path of length ≥ 1
    /// from `i` to `j`.
    pub fn transitive_closure(&self) -> BoolMatrix {
        let mut c = self.clone();
        for k in 0..self.n {
            let row_k = c.row(k).to_vec();
            for i in 0..self.n {
                if c.get(i, k) {
                    let start = i * c.words_per_row;
                    for (w, &s) in c.bits[start..start + c.words_per_row].iter_mut().zip(&row_k) {
                        *w |= s;
                    }
                }
            }
        }
        c
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix {}x{}", self.n, self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for BoolMatrix {
    /// Rows of 0/1 digits joined by `|`, e.g. `01|10`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                write!(f, "|")?;
            }
            for j in 0..self.n {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
        }
        Ok(())
    }
}

/// Bitset helpers shared by the determinizer and the analyses.
pub(crate) mod bits {
    use super::{Block, BLOCK_BITS};

    pub fn empty(n: usize) -> Vec<Block> {
        vec![0; n.div_ceil(BLOCK_BITS)]
    }

    pub fn set(v: &mut [Block], i: usize) {
        v[i / BLOCK_BITS] |= 1 << (i % BLOCK_BITS);
    }

    pub fn contains(v: &[Block], i: usize) -> bool {
        v[i / BLOCK_BITS] >> (i % BLOCK_BITS) & 1 == 1
    }

    pub fn count(v: &[Block]) -> usize {
        v.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersects(a: &[Block], b: &[Block]) -> bool {
        a.iter().zip(b).any(|(&x, &y)| x & y != 0)
    }

    pub fn iter(v: &[Block], n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..n).filter(move |&i| contains(v, i))
    }
}
