//! Square {0,1}-matrices over an alphabet, bit-packed by row.
//!
//! The convention throughout is `m.get(b, a) == true` meaning a transition
//! from letter `a` to letter `b` (row = target, column = source).

use std::fmt;

/// Square {0,1}-matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat01 {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Mat01 {
    pub fn zeros(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        Mat01 {
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

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        let mut m = Self::zeros(n);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v != 0);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.n && col < self.n);
        let w = self.bits[row * self.words_per_row + col / 64];
        (w >> (col % 64)) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        debug_assert!(row < self.n && col < self.n);
        let w = &mut self.bits[row * self.words_per_row + col / 64];
        if value {
            *w |= 1 << (col % 64);
        } else {
            *w &= !(1 << (col % 64));
        }
    }

    fn row_words(&self, row: usize) -> &[u64] {
        &self.bits[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    pub fn row_sum(&self, row: usize) -> usize {
        self.row_words(row).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_sum(&self, col: usize) -> usize {
        (0..self.n).filter(|&r| self.get(r, col)).count()
    }

    pub fn nnz(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_nonzero(&self) -> bool {
        self.bits.iter().any(|&w| w != 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn is_permutation(&self) -> bool {
        (0..self.n).all(|i| self.row_sum(i) == 1 && self.col_sum(i) == 1)
    }

    /// Set bits of a row, in ascending column order.
    pub fn row_ones(&self, row: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.row_words(row).iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    /// Entries of the integer product `self * rhs`, row-major.
    pub fn product_counts(&self, rhs: &Mat01) -> Vec<u64> {
        assert_eq!(self.n, rhs.n);
        let rhs_t = rhs.transpose();
        let mut out = vec![0u64; self.n * self.n];
        for r in 0..self.n {
            let a = self.row_words(r);
            for c in 0..self.n {
                let b = rhs_t.row_words(c);
                let dot: u64 = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| (x & y).count_ones() as u64)
                    .sum();
                out[r * self.n + c] = dot;
            }
        }
        out
    }

    /// Kronecker product; entry ((i,k),(j,l)) = a(i,j) * b(k,l) with the
    /// row-major pair indexing i * b.n() + k.
    pub fn kron(a: &Mat01, b: &Mat01) -> Mat01 {
        let n = a.n * b.n;
        let mut m = Mat01::zeros(n);
        for i in 0..a.n {
            for j in a.row_ones(i) {
                for k in 0..b.n {
                    for l in b.row_ones(k) {
                        m.set(i * b.n + k, j * b.n + l, true);
                    }
                }
            }
        }
        m
    }
}

/// Adjacency lists of the letter graph: an edge a -> b whenever some
/// matrix has m(b, a) = 1.
pub fn adjacency_union(matrices: &[&Mat01]) -> Vec<Vec<usize>> {
    let n = matrices.first().map_or(0, |m| m.n());
    let mut adj = vec![Vec::new(); n];
    for m in matrices {
        assert_eq!(m.n(), n);
        for b in 0..n {
            for a in m.row_ones(b) {
                adj[a].push(b);
            }
        }
    }
    for out in &mut adj {
        out.sort_unstable();
        out.dedup();
    }
    adj
}

impl fmt::Debug for Mat01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat01 {}x{} [", self.n, self.n)?;
        for r in 0..self.n {
            let row: String = (0..self.n)
                .map(|c| if self.get(r, c) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}
