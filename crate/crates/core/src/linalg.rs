//! Dense linear algebra over F_p: Gaussian elimination with a particular
//! solution and a kernel basis.

#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    /// Row-major matrix entries, reduced mod p.
    pub matrix: Vec<u64>,
    pub rhs: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AffineSolution {
    Unsolvable,
    Solved {
        particular: Vec<u64>,
        kernel_basis: Vec<Vec<u64>>,
    },
}

impl LinearSystem {
    pub fn new(p: u64, rows: usize, cols: usize) -> Self {
        LinearSystem {
            p,
            rows,
            cols,
            matrix: vec![0; rows * cols],
            rhs: vec![0; rows],
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.matrix[r * self.cols + c] = v % self.p;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: u64) {
        let idx = r * self.cols + c;
        self.matrix[idx] = (self.matrix[idx] + v % self.p) % self.p;
    }

    pub fn set_rhs(&mut self, r: usize, v: u64) {
        self.rhs[r] = v % self.p;
    }

    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.matrix[r * self.cols + c]
    }

    /// matrix * v over F_p.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u128;
        (0..self.rows)
            .map(|r| {
                let mut acc: u128 = 0;
                for c in 0..self.cols {
                    acc = (acc + self.matrix[r * self.cols + c] as u128 * v[c] as u128) % p;
                }
                acc as u64
            })
            .collect()
    }

    /// Row-reduce the augmented system; returns either Unsolvable or one
    /// particular solution plus a basis of the homogeneous kernel.
    pub fn solve_affine(&self) -> AffineSolution {
        let p = self.p;
        let pw = p as u128;
        let inv = |a: u64| -> u64 {
            let mut e = p - 2;
            let mut base = a as u128;
            let mut acc: u128 = 1;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * base % pw;
                }
                base = base * base % pw;
                e >>= 1;
            }
            acc as u64
        };
        let mut m = self.matrix.clone();
        let mut b = self.rhs.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
        let mut row = 0usize;
        for col in 0..cols {
            if row >= rows {
                break;
            }
            let mut piv = None;
            for r in row..rows {
                if m[r * cols + col] != 0 {
                    piv = Some(r);
                    break;
                }
            }
            let Some(piv) = piv else { continue };
            for c in 0..cols {
                m.swap(row * cols + c, piv * cols + c);
            }
            b.swap(row, piv);
            let iv = inv(m[row * cols + col]);
            for c in col..cols {
                m[row * cols + c] = (m[row * cols + c] as u128 * iv as u128 % pw) as u64;
            }
            b[row] = (b[row] as u128 * iv as u128 % pw) as u64;
            for r in 0..rows {
                if r != row && m[r * cols + col] != 0 {
                    let factor = m[r * cols + col];
                    for c in col..cols {
                        let t = (factor as u128 * m[row * cols + c] as u128) % pw;
                        m[r * cols + c] = ((m[r * cols + c] as u128 + pw - t) % pw) as u64;
                    }
                    let t = (factor as u128 * b[row] as u128) % pw;
                    b[r] = ((b[r] as u128 + pw - t) % pw) as u64;
                }
            }
            pivot_of_col[col] = Some(row);
            row += 1;
        }
        // inconsistency check
        for r in row..rows {
            if b[r] != 0 {
                return AffineSolution::Unsolvable;
            }
        }
        let mut particular = vec![0u64; cols];
        for col in 0..cols {
            if let Some(r) = pivot_of_col[col] {
                particular[col] = b[r];
            }
        }
        let mut kernel_basis = vec![];
        for free in 0..cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for col in 0..cols {
                if let Some(r) = pivot_of_col[col] {
                    let coeff = m[r * cols + free];
                    v[col] = (p - coeff) % p;
                }
            }
            kernel_basis.push(v);
        }
        AffineSolution::Solved {
            particular,
            kernel_basis,
        }
    }
}
