//! Dense bit matrices over the two-element field and their rank.

use crate::bitset::BitSet;
use crate::graph::Graph;

/// A `rows x cols` matrix over GF(2); each row is a bitset of length `cols`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitSet>,
}

impl GF2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        GF2Matrix {
            rows,
            cols,
            data: (0..rows).map(|_| BitSet::new(cols)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from 0/1 rows, e.g. `&[&[1,1,0], &[0,1,1]]`.
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &bit) in row.iter().enumerate() {
                m.set(i, j, bit != 0);
            }
        }
        m
    }

    /// Adjacency matrix of a graph (zero diagonal).
    pub fn adjacency(g: &Graph) -> Self {
        let n = g.n();
        let mut m = Self::zero(n, n);
        for u in 0..n {
            m.data[u] = g.neighbors(u).clone();
        }
        m
    }

    /// Submatrix with the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zero(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
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
        self.data[r].contains(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        if v {
            self.data[r].insert(c);
        } else {
            self.data[r].remove(c);
        }
    }

    /// Entry-wise sum (XOR) of two equal-shaped matrices.
    pub fn add(&self, other: &GF2Matrix) -> GF2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            a.xor_with(b);
        }
        m
    }

    /// Rank over GF(2) via Gaussian elimination on row copies.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<BitSet> = self.data.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].contains(col)) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.contains(col) {
                    row.xor_with(&pivot_row);
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}
