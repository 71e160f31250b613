use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense integer matrix with arbitrary-precision entries.
///
/// Row-major storage; rows and columns may be zero (empty matrices represent
/// boundary maps of empty bases and are valid inputs everywhere).
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows
            .into_iter()
            .flatten()
            .map(BigInt::from)
            .collect::<Vec<_>>();
        IntMatrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    /// Builds a matrix from (row, col, value) triplets, summing duplicates.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Self {
        let mut m = IntMatrix::zero(rows, cols);
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet out of bounds");
            let cur = std::mem::take(&mut m[(r, c)]);
            m[(r, c)] = cur + v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = std::mem::take(&mut out[(i, j)]);
                    out[(i, j)] = cur + a * b;
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &self[(i, j)] * &v[j])
                    .fold(BigInt::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += factor * row[b]
    pub fn add_row_multiple(&mut self, a: usize, b: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let add = factor * &self[(b, j)];
            let cur = std::mem::take(&mut self[(a, j)]);
            self[(a, j)] = cur + add;
        }
    }

    /// col[a] += factor * col[b]
    pub fn add_col_multiple(&mut self, a: usize, b: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let add = factor * &self[(i, b)];
            let cur = std::mem::take(&mut self[(i, a)]);
            self[(i, a)] = cur + add;
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let cur = std::mem::take(&mut self[(r, j)]);
            self[(r, j)] = -cur;
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let cur = std::mem::take(&mut self[(i, c)]);
            self[(i, c)] = -cur;
        }
    }

    /// Copies the listed columns into a new matrix.
    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMatrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Rank over the rationals via fraction-free Gaussian elimination.
    pub fn rank_rational(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            for r in row + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                // fraction-free elimination: r <- pivot*r - m[r,col]*rowvec
                let pv = m[(row, col)].clone();
                let fv = m[(r, col)].clone();
                for j in col..m.cols {
                    let val = &pv * &m[(r, j)] - &fv * &m[(row, j)];
                    m[(r, j)] = val;
                }
            }
            row += 1;
            rank += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    /// Rank after reduction modulo a prime p.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        let p_big = BigInt::from(p);
        let mut m: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let r = &self[(i, j)] % &p_big;
                        let r = if r < BigInt::zero() { r + &p_big } else { r };
                        u64::try_from(r).expect("residue fits")
                    })
                    .collect()
            })
            .collect();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            let pivot = (row..self.rows).find(|&r| m[r][col] % p != 0);
            let Some(pr) = pivot else { continue };
            m.swap(row, pr);
            let inv = mod_inverse(m[row][col] % p, p);
            for j in col..self.cols {
                m[row][j] = (m[row][j] % p) * inv % p;
            }
            for r in 0..self.rows {
                if r != row && m[r][col] % p != 0 {
                    let f = m[r][col] % p;
                    for j in col..self.cols {
                        let sub = f * m[row][j] % p;
                        m[r][j] = (m[r][j] % p + p - sub) % p;
                    }
                }
            }
            row += 1;
            rank += 1;
            if row == self.rows {
                break;
            }
        }
        rank
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        (0..self.rows).flat_map(move |i| (0..self.cols).map(move |j| (i, j, &self[(i, j)])))
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat inverse; p is prime and a nonzero mod p.
    let mut result = 1u128;
    let mut base = (a % p) as u128;
    let mut exp = p - 2;
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    result as u64
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_rank() {
        let a = IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, IntMatrix::from_rows(vec![vec![2, 1], vec![4, 3]]));
        assert_eq!(a.rank_rational(), 2);
        let singular = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.rank_rational(), 1);
    }

    #[test]
    fn rank_mod_p_differs_from_rational() {
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(m.rank_rational(), 2);
        assert_eq!(m.rank_mod_p(2), 0);
        assert_eq!(m.rank_mod_p(3), 2);
    }

    #[test]
    fn empty_matrices() {
        let e = IntMatrix::zero(0, 5);
        assert_eq!(e.rank_rational(), 0);
        let f = IntMatrix::zero(3, 0);
        assert!(f.is_zero());
    }
}
