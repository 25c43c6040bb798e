//! Dense matrices over ℚ(ω) with exact rank, nullspace and affine solve.

use std::fmt;
use std::ops::{Index, IndexMut};

use super::scalar::Cyclotomic;

/// Dense row-major matrix of cyclotomic entries.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

/// Solution set `{particular + Σ tᵢ·basisᵢ}` of a consistent linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    pub particular: Vec<Cyclotomic>,
    pub basis: Vec<Vec<Cyclotomic>>,
}

impl AffineSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.particular.len()
    }

    /// The point `particular + Σ coords[i]·basis[i]`.
    pub fn point(&self, coords: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(coords.len(), self.basis.len());
        let mut p = self.particular.clone();
        for (t, v) in coords.iter().zip(&self.basis) {
            if t.is_zero() {
                continue;
            }
            for (pi, vi) in p.iter_mut().zip(v) {
                if !vi.is_zero() {
                    *pi += t * vi;
                }
            }
        }
        p
    }

    /// Membership test: `x − particular` lies in the span of the basis.
    pub fn contains(&self, x: &[Cyclotomic]) -> bool {
        if x.len() != self.particular.len() {
            return false;
        }
        let diff: Vec<Cyclotomic> = x.iter().zip(&self.particular).map(|(a, b)| a - b).collect();
        if self.basis.is_empty() {
            return diff.iter().all(Cyclotomic::is_zero);
        }
        let span = ExactMatrix::from_columns(self.particular.len(), &self.basis);
        span.solve_affine(&diff).is_some()
    }
}

/// Result of Gauss–Jordan reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Cyclotomic::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cyclotomic::one();
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(n: usize, s: &Cyclotomic) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cyclotomic) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        ExactMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Cyclotomic::from_int(x)).collect()).collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Cyclotomic>]) -> Self {
        ExactMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Cyclotomic> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &ExactMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &ExactMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Cyclotomic) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| if a.is_zero() { a.clone() } else { a * s }).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    /// `self − s·I`.
    pub fn shift(&self, s: &Cyclotomic) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= s;
        }
        m
    }

    pub fn mul(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
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
                    let idx = i * out.cols + j;
                    out.data[idx] += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        let mut acc = ExactMatrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &ExactMatrix) -> Self {
        ExactMatrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let a = &self[(i / other.rows, j / other.cols)];
            if a.is_zero() {
                return Cyclotomic::zero();
            }
            a * &other[(i % other.rows, j % other.cols)]
        })
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ExactMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Rank over ℚ(ω) by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = Cyclotomic::one();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    a.swap(p * cols + j, rank * cols + j);
                }
            }
            let pivot = a[rank * cols + c].clone();
            let prev_inv = prev.inv().expect("Bareiss pivot is nonzero");
            let pivot_row: Vec<(usize, Cyclotomic)> = ((c + 1)..cols)
                .filter_map(|j| {
                    let v = &a[rank * cols + j];
                    (!v.is_zero()).then(|| (j, v.clone()))
                })
                .collect();
            let rescale = &pivot * &prev_inv;
            for i in (rank + 1)..rows {
                let lead = std::mem::take(&mut a[i * cols + c]);
                for j in (c + 1)..cols {
                    let x = &mut a[i * cols + j];
                    if !x.is_zero() {
                        *x = &*x * &rescale;
                    }
                }
                if !lead.is_zero() {
                    let f = &lead * &prev_inv;
                    for (j, v) in &pivot_row {
                        a[i * cols + j] -= &f * v;
                    }
                }
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form (Gauss–Jordan with exact fractions).
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..cols {
                let x = &mut m.data[r * cols + j];
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            let pivot_row: Vec<(usize, Cyclotomic)> = (c..cols)
                .filter_map(|j| {
                    let v = &m.data[r * cols + j];
                    (!v.is_zero()).then(|| (j, v.clone()))
                })
                .collect();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = m[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &pivot_row {
                    m.data[i * cols + j] -= &f * v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    /// Basis of the right kernel, returned in reduced echelon form (each
    /// vector has leading entry 1 and vectors are ordered by leading index).
    /// The result depends only on the kernel, not on the matrix presenting it.
    pub fn nullspace(&self) -> Vec<Vec<Cyclotomic>> {
        let Rref { matrix, pivots } = self.rref();
        let cols = self.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let raw: Vec<Vec<Cyclotomic>> = (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Cyclotomic::zero(); cols];
                v[f] = Cyclotomic::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&matrix[(i, f)];
                }
                v
            })
            .collect();
        echelon_basis(&raw)
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Full solution set of `self · x = b`, or `None` when inconsistent.
    pub fn solve_affine(&self, b: &[Cyclotomic]) -> Option<AffineSpace> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let aug = ExactMatrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut particular = vec![Cyclotomic::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            particular[p] = matrix[(i, self.cols)].clone();
        }
        Some(AffineSpace { particular, basis: self.nullspace() })
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = ExactMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            }
        });
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(ExactMatrix::from_fn(n, n, |i, j| matrix[(i, n + j)].clone()))
    }
}

/// Reduced echelon basis of the span of `vectors` (zero rows dropped).
pub fn echelon_basis(vectors: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let Rref { matrix, pivots } = ExactMatrix::from_rows(vectors.to_vec()).rref();
    (0..pivots.len()).map(|i| matrix.row(i).to_vec()).collect()
}

/// Dimension of the span of `vectors`.
pub fn span_rank(vectors: &[Vec<Cyclotomic>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    ExactMatrix::from_rows(vectors.to_vec()).rank()
}

/// True when `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Cyclotomic>], v: &[Cyclotomic]) -> bool {
    if v.iter().all(Cyclotomic::is_zero) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut all = basis.to_vec();
    let r = span_rank(&all);
    all.push(v.to_vec());
    span_rank(&all) == r
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Cyclotomic;
    fn index(&self, (i, j): (usize, usize)) -> &Cyclotomic {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cyclotomic {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn identity_and_zero_ranks() {
        assert_eq!(ExactMatrix::identity(4).rank(), 4);
        assert_eq!(ExactMatrix::zeros(3, 5).rank(), 0);
        assert!(ExactMatrix::identity(4).nullspace().is_empty());
    }

    #[test]
    fn nullspace_of_row_vector() {
        let m = ints(&[&[1, 1]]);
        assert_eq!(m.nullspace(), vec![vec![Cyclotomic::one(), Cyclotomic::from_int(-1)]]);
    }

    #[test]
    fn identity_solve_is_unique() {
        let b: Vec<Cyclotomic> = vec![Cyclotomic::from_int(3), Cyclotomic::omega()];
        let sol = ExactMatrix::identity(2).solve_affine(&b).unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.basis.is_empty());
    }

    #[test]
    fn inconsistent_system() {
        let m = ints(&[&[0]]);
        assert!(m.solve_affine(&[Cyclotomic::one()]).is_none());
    }

    #[test]
    fn rank_over_cyclotomics() {
        // rows (1, ω) and (ω̄, 1) are proportional: ω̄·(1, ω) = (ω̄, 1)
        let w = Cyclotomic::omega();
        let m = ExactMatrix::from_rows(vec![
            vec![Cyclotomic::one(), w.clone()],
            vec![Cyclotomic::omega_bar(), Cyclotomic::one()],
        ]);
        assert_eq!(m.rank(), 1);
        assert!(m.inverse().is_none());
        let n = ExactMatrix::from_rows(vec![
            vec![Cyclotomic::one(), w.clone()],
            vec![w.clone(), Cyclotomic::one()],
        ]);
        assert_eq!(n.rank(), 2);
        assert_eq!(n.mul(&n.inverse().unwrap()), ExactMatrix::identity(2));
    }

    fn arb_matrix() -> impl Strategy<Value = ExactMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..4, -2i64..3), r * c).prop_map(move |v| {
                let data = v
                    .into_iter()
                    .map(|(a, b)| &Cyclotomic::from_int(a) + &(&Cyclotomic::omega() * &Cyclotomic::from_int(b)))
                    .collect::<Vec<_>>();
                ExactMatrix::from_fn(r, c, |i, j| data[i * c + j].clone())
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let ns = m.nullspace();
            prop_assert_eq!(m.rank() + ns.len(), m.cols());
            prop_assert_eq!(m.rank(), m.rref().pivots.len());
            for v in &ns {
                prop_assert!(m.mul_vec(v).iter().all(Cyclotomic::is_zero));
            }
        }

        #[test]
        fn affine_solutions_check(m in arb_matrix(), seed in proptest::collection::vec(-3i64..4, 6)) {
            let x: Vec<Cyclotomic> = (0..m.cols()).map(|i| Cyclotomic::from_int(seed[i])).collect();
            let b = m.mul_vec(&x);
            let sol = m.solve_affine(&b).expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&sol.particular), b);
            for v in &sol.basis {
                prop_assert!(m.mul_vec(v).iter().all(Cyclotomic::is_zero));
            }
            prop_assert!(sol.contains(&x));
        }
    }
}
