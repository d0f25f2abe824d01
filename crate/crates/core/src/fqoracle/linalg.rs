/// Dense matrix over `F_p`, row-major, entries in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// From integer rows, reducing mod `p`.
    pub fn from_entries(p: u64, rows: &[Vec<i128>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| x.rem_euclid(p as i128) as u64))
            .collect();
        Self {
            p,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// The `index`-th matrix in base-`p` order of its entries.
    pub fn from_index(p: u64, rows: usize, cols: usize, mut index: u64) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for x in m.data.iter_mut() {
            *x = index % p;
            index /= p;
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % p;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + y) % self.p;
        }
        out
    }

    pub fn scale(&self, c: u64) -> FpMatrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = (*x * (c % self.p)) % self.p;
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(r * m.cols + j, piv * m.cols + j);
            }
            let inv = inv_mod(m.get(r, c), p);
            for j in 0..m.cols {
                let v = m.get(r, j) * inv % p;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i != r && f != 0 {
                    for j in 0..m.cols {
                        let v = (m.get(i, j) + p - f * m.get(r, j) % p) % p;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns of `self` (as a list of vectors) lie in the row space of
    /// `basis`, a matrix whose rows span a subspace.
    pub fn columns_in_span(&self, basis: &FpMatrix) -> bool {
        let r0 = basis.rank();
        (0..self.cols).all(|c| {
            let mut ext = basis.clone();
            ext.rows += 1;
            ext.data.extend((0..self.rows).map(|r| self.get(r, c)));
            ext.rank() == r0
        })
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// `|GL_n(F_p)| = ∏_{j<n} (p^n − p^j)`.
pub fn gl_order(p: u64, n: u32) -> u128 {
    let pn = (p as u128).pow(n);
    (0..n).map(|j| pn - (p as u128).pow(j)).product()
}

/// All `k`-dimensional subspaces of `F_p^n`, each as a `k × n` matrix in
/// reduced row echelon form.
pub fn subspaces(p: u64, n: usize, k: usize) -> Vec<FpMatrix> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(p, n, k, 0, &mut pivots, &mut out);
    out
}

fn choose_pivots(p: u64, n: usize, k: usize, from: usize, pivots: &mut Vec<usize>, out: &mut Vec<FpMatrix>) {
    if pivots.len() == k {
        // free entries: row i, columns after pivot i that are not pivots
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let piv = pivots.clone();
                (piv[i] + 1..n).filter(move |c| !piv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let count = (p as u128).pow(free.len() as u32);
        for mut idx in 0..count {
            let mut m = FpMatrix::zeros(p, k, n);
            for (i, &c) in pivots.iter().enumerate() {
                m.set(i, c, 1);
            }
            for &(i, c) in &free {
                m.set(i, c, (idx % p as u128) as u64);
                idx /= p as u128;
            }
            out.push(m);
        }
        return;
    }
    for c in from..n {
        if n - c < k - pivots.len() {
            break;
        }
        pivots.push(c);
        choose_pivots(p, n, k, c + 1, pivots, out);
        pivots.pop();
    }
}

/// Number of `k`-dimensional subspaces of `F_p^n` (Gaussian binomial).
pub fn gaussian_binomial(p: u64, n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= p.pow(n - i) - 1;
        den *= p.pow(i + 1) - 1;
    }
    num / den
}
