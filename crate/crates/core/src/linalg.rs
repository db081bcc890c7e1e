//! Dense linear algebra over a prime field `F_p`.

use std::fmt;

/// A dense `rows x cols` matrix with entries in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and small: Fermat.
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], p: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                m.data[i * c + j] = x % p;
            }
        }
        m
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    /// Matrix whose columns are the given vectors of length `n`.
    pub fn from_cols(n: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for i in 0..n {
                m.data[i * m.cols + j] = v[i];
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Mat, p: u32) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.data[k * other.cols + j]) % p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32], p: u32) -> Vec<u32> {
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for j in 0..self.cols {
                    s += self.data[i * self.cols + j] as u64 * v[j] as u64;
                }
                (s % p as u64) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Mat, p: u32) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat, p: u32) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a + p - b) % p)
                .collect(),
        }
    }

    pub fn scale(&self, c: u32, p: u32) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c % p).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn pow(&self, n: usize, p: u32) -> Mat {
        let mut acc = Mat::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(self, p);
        }
        acc
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Mat {
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut out = Mat::zeros(rows, cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(i, j, a.get(i, j));
            }
            for j in 0..b.cols {
                out.set(i, a.cols + j, b.get(i, j));
            }
        }
        for i in 0..c.rows {
            for j in 0..c.cols {
                out.set(a.rows + i, j, c.get(i, j));
            }
            for j in 0..d.cols {
                out.set(a.rows + i, c.cols + j, d.get(i, j));
            }
        }
        out
    }

    /// Block diagonal `diag(a, b)`.
    pub fn diag(a: &Mat, b: &Mat) -> Mat {
        Mat::block(a, &Mat::zeros(a.rows, b.cols), &Mat::zeros(b.rows, a.cols), b)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self, p: u32) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), p);
            if inv != 1 {
                for j in c..self.cols {
                    let idx = r * self.cols + j;
                    self.data[idx] = self.data[idx] * inv % p;
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let sub = f * self.data[r * self.cols + j] % p;
                    let idx = i * self.cols + j;
                    self.data[idx] = (self.data[idx] + p - sub) % p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, p: u32) -> usize {
        let mut m = self.clone();
        m.rref(p).len()
    }

    /// Basis of `{x : self * x = 0}`, as vectors.
    pub fn nullspace(&self, p: u32) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(p);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    let x = m.get(r, f);
                    v[pc] = (p - x) % p;
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, as a matrix with independent columns
    /// chosen from the original columns.
    pub fn column_space(&self, p: u32) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref(p);
        let cols: Vec<Vec<u32>> = pivots.iter().map(|&c| self.col(c)).collect();
        Mat::from_cols(self.rows, &cols)
    }

    pub fn inverse(&self, p: u32) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0));
        }
        let mut aug = Mat::block(self, &Mat::identity(n), &Mat::zeros(0, n), &Mat::zeros(0, n));
        let piv = aug.rref(p);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }

    pub fn is_invertible(&self, p: u32) -> bool {
        self.rows == self.cols && self.rank(p) == self.rows
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

/// Coordinates with respect to a subspace basis: given a basis matrix `b`
/// (independent columns), [`Coords::of`] solves `b y = w` for `w` in its span.
pub struct Coords {
    /// Row indices whose restriction of `b` is invertible.
    rows: Vec<usize>,
    /// Inverse of that square restriction.
    inv: Mat,
    p: u32,
}

impl Coords {
    pub fn new(b: &Mat, p: u32) -> Self {
        let k = b.cols;
        let mut t = b.transpose();
        let pivots = t.rref(p);
        assert_eq!(pivots.len(), k, "basis columns are not independent");
        let mut sq = Mat::zeros(k, k);
        for (i, &r) in pivots.iter().enumerate() {
            for j in 0..k {
                sq.set(i, j, b.get(r, j));
            }
        }
        Self {
            rows: pivots,
            inv: sq.inverse(p).expect("square restriction is invertible"),
            p,
        }
    }

    pub fn of(&self, w: &[u32]) -> Vec<u32> {
        let r: Vec<u32> = self.rows.iter().map(|&i| w[i]).collect();
        self.inv.mul_vec(&r, self.p)
    }

    /// Coordinates of each column of `m`.
    pub fn of_mat(&self, m: &Mat) -> Mat {
        let cols: Vec<Vec<u32>> = (0..m.cols).map(|j| self.of(&m.col(j))).collect();
        Mat::from_cols(self.inv.rows, &cols)
    }
}

/// Enumerates every vector of `F_p^n` in lexicographic order of digits.
pub fn all_vectors(n: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(n as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0u32; n];
        for x in v.iter_mut() {
            *x = (k % p as u64) as u32;
            k /= p as u64;
        }
        v
    })
}

/// All `k`-dimensional subspaces of `F_p^n`, each given by its basis in
/// reduced row echelon form (rows), together with the pivot columns.
pub fn grassmannian(n: usize, k: usize, p: u32) -> Vec<(Vec<usize>, Mat)> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pivots = Vec::new();
    combos(n, k, 0, &mut pivots, &mut |piv: &[usize]| {
        // Free positions: (row r, column c) with c > piv[r] and c not a pivot.
        let mut free = Vec::new();
        for (r, &pc) in piv.iter().enumerate() {
            for c in pc + 1..n {
                if !piv.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        for vals in all_vectors(free.len(), p) {
            let mut m = Mat::zeros(k, n);
            for (r, &pc) in piv.iter().enumerate() {
                m.set(r, pc, 1);
            }
            for (&(r, c), &x) in free.iter().zip(&vals) {
                m.set(r, c, x);
            }
            out.push((piv.to_vec(), m));
        }
    });
    out
}

fn combos(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for c in start..n {
        if n - c < k - cur.len() {
            break;
        }
        cur.push(c);
        combos(n, k, c + 1, cur, f);
        cur.pop();
    }
}
