//! Rank modulo word-sized primes, for integer matrices too large for exact
//! elimination.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::ExactMatrix;
use super::LinalgError;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

/// Sparse integer matrix stored as rows of `(column, value)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    pub cols: usize,
    pub rows: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { cols, rows: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseIntMatrix { cols: n, rows: (0..n).map(|i| vec![(i, 1)]).collect() }
    }

    /// Adds `value` at `(row, col)`, merging with an existing entry.
    pub fn add_entry(&mut self, row: usize, col: usize, value: i64) {
        let r = &mut self.rows[row];
        if let Some(slot) = r.iter_mut().find(|(c, _)| *c == col) {
            slot.1 += value;
        } else {
            r.push((col, value));
        }
        r.retain(|&(_, v)| v != 0);
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                m[(i, j)] += v;
            }
        }
        m
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].into())
    }

    /// `self · rhs` for a sparse right factor.
    pub fn mul_sparse(&self, rhs: &SparseIntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows.len(), "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for &(j, b) in &rhs.rows[k] {
                    dst[j] += a * b;
                }
            }
        }
        out
    }

    /// `(I_n ⊗ self) · rhs`, without materialising the Kronecker product.
    pub fn identity_kron_mul_sparse(&self, n: usize, rhs: &SparseIntMatrix) -> IntMatrix {
        assert!(self.rows == self.cols, "block must be square");
        let block = self.rows;
        assert_eq!(n * block, rhs.rows.len(), "dimension mismatch in product");
        let mut out = IntMatrix::zeros(n * block, rhs.cols);
        for a in 0..n {
            for r in 0..block {
                let i = a * block + r;
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (c, &v) in self.row(r).iter().enumerate() {
                    if v == 0 {
                        continue;
                    }
                    for &(j, b) in &rhs.rows[a * block + c] {
                        dst[j] += v * b;
                    }
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce_i64(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

fn check_prime(p: u64) -> Result<(), LinalgError> {
    if p < 2 || !primal_check::miller_rabin(p) {
        return Err(LinalgError::NotPrime(p));
    }
    Ok(())
}

/// A primitive cube root of unity modulo `p` (requires `p ≡ 1 mod 3`).
pub fn cube_root_of_unity(p: u64) -> Result<u64, LinalgError> {
    check_prime(p)?;
    if p % 3 != 1 {
        return Err(LinalgError::NoCubeRoot(p));
    }
    let e = (p - 1) / 3;
    (2..p)
        .map(|g| pow_mod(g, e, p))
        .find(|&w| w != 1)
        .ok_or(LinalgError::NoCubeRoot(p))
}

/// Rank of rows over 𝔽_p by streaming echelon insertion. Cost is
/// `rows × rank × cols`, so low-rank matrices are cheap whatever their size.
fn rank_mod_rows(rows: impl Iterator<Item = Vec<u64>>, p: u64) -> usize {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for mut row in rows {
        for (pivot, b) in &basis {
            let f = row[*pivot];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for (x, &y) in row.iter_mut().zip(b) {
                if y != 0 {
                    *x = (*x + mul_mod(nf, y, p)) % p;
                }
            }
        }
        if let Some(pivot) = row.iter().position(|&x| x != 0) {
            let inv = inv_mod(row[pivot], p);
            for x in row.iter_mut() {
                if *x != 0 {
                    *x = mul_mod(*x, inv, p);
                }
            }
            basis.push((pivot, row));
        }
    }
    basis.len()
}

/// Rank of an integer matrix modulo the prime `p`.
pub fn modular_rank_int(m: &IntMatrix, p: u64) -> Result<usize, LinalgError> {
    check_prime(p)?;
    let rows = (0..m.rows).map(|i| m.row(i).iter().map(|&x| reduce_i64(x, p)).collect());
    Ok(rank_mod_rows(rows, p))
}

fn reduce_big(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

/// Rank modulo `p` of a matrix with entries in ℤ[ω]. When some entry has a
/// nonzero ω-part, `p` must be ≡ 1 mod 3 so that ω has an image in 𝔽_p.
pub fn modular_rank(m: &ExactMatrix, p: u64) -> Result<usize, LinalgError> {
    check_prime(p)?;
    let mut needs_omega = false;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = &m[(i, j)];
            if !x.is_integral() {
                return Err(LinalgError::NonInteger { row: i, col: j });
            }
            needs_omega |= !x.om().is_zero();
        }
    }
    let omega = if needs_omega { cube_root_of_unity(p)? } else { 0 };
    let rows = (0..m.rows()).map(|i| {
        m.row(i)
            .iter()
            .map(|x| {
                let re = reduce_big(x.re().numer(), p);
                let om = reduce_big(x.om().numer(), p);
                (re + mul_mod(om, omega, p)) % p
            })
            .collect()
    });
    Ok(rank_mod_rows(rows, p))
}

/// Outcome of a rank computation certified by agreement across primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedRank {
    pub rank: usize,
    pub primes: Vec<u64>,
    pub ranks: Vec<usize>,
}

const PRIME_SEED: u64 = 0x6e63_6765_6f00_0001;

/// Deterministic stream of primes `p ≡ 1 mod 3` with `2³⁰ < p < 2³¹`.
pub fn certification_primes() -> impl Iterator<Item = u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(PRIME_SEED);
    let mut seen = Vec::new();
    std::iter::from_fn(move || loop {
        let candidate: u64 = rng.gen_range((1u64 << 30) + 1..(1u64 << 31));
        if candidate % 3 == 1 && primal_check::miller_rabin(candidate) && !seen.contains(&candidate) {
            seen.push(candidate);
            return Some(candidate);
        }
    })
}

fn certify(mut rank_at: impl FnMut(u64) -> Result<usize, LinalgError>) -> Result<CertifiedRank, LinalgError> {
    // Modular rank never exceeds the true rank, so the largest value seen is
    // the best lower bound; accept it once two distinct primes attain it.
    let mut primes = Vec::new();
    let mut ranks = Vec::new();
    for p in certification_primes() {
        let r = rank_at(p)?;
        primes.push(p);
        ranks.push(r);
        let best = *ranks.iter().max().expect("nonempty");
        if ranks.iter().filter(|&&x| x == best).count() >= 2 {
            return Ok(CertifiedRank { rank: best, primes, ranks });
        }
    }
    unreachable!("prime stream is infinite")
}

pub fn certified_rank_int(m: &IntMatrix) -> Result<CertifiedRank, LinalgError> {
    certify(|p| modular_rank_int(m, p))
}

pub fn certified_rank(m: &ExactMatrix) -> Result<CertifiedRank, LinalgError> {
    certify(|p| modular_rank(m, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Cyclotomic;
    use proptest::prelude::*;

    #[test]
    fn identity_full_rank() {
        assert_eq!(modular_rank(&ExactMatrix::identity(5), 1_000_003).unwrap(), 5);
        assert_eq!(modular_rank_int(&IntMatrix::identity(7), 1_000_003).unwrap(), 7);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(modular_rank(&ExactMatrix::identity(2), 1_000_001), Err(LinalgError::NotPrime(1_000_001)));
    }

    #[test]
    fn rejects_fractions() {
        let mut m = ExactMatrix::identity(2);
        m[(1, 0)] = Cyclotomic::from_ratio(1, 2);
        assert_eq!(modular_rank(&m, 1_000_003), Err(LinalgError::NonInteger { row: 1, col: 0 }));
    }

    #[test]
    fn omega_needs_cube_root() {
        let m = ExactMatrix::from_rows(vec![vec![Cyclotomic::omega()]]);
        assert_eq!(modular_rank(&m, 11), Err(LinalgError::NoCubeRoot(11)));
        assert_eq!(modular_rank(&m, 7).unwrap(), 1);
    }

    #[test]
    fn omega_relation_survives_reduction() {
        // (1, ω) and (ω̄, 1) are dependent; (1, ω), (ω, 1) are not
        let w = Cyclotomic::omega();
        let dep = ExactMatrix::from_rows(vec![
            vec![Cyclotomic::one(), w.clone()],
            vec![Cyclotomic::omega_bar(), Cyclotomic::one()],
        ]);
        let indep = ExactMatrix::from_rows(vec![vec![Cyclotomic::one(), w.clone()], vec![w, Cyclotomic::one()]]);
        for p in certification_primes().take(3) {
            assert_eq!(modular_rank(&dep, p).unwrap(), 1);
            assert_eq!(modular_rank(&indep, p).unwrap(), 2);
        }
    }

    #[test]
    fn primes_are_deterministic_and_large() {
        let a: Vec<u64> = certification_primes().take(4).collect();
        let b: Vec<u64> = certification_primes().take(4).collect();
        assert_eq!(a, b);
        for p in a {
            assert!(p > 1 << 30 && p < 1 << 31 && p % 3 == 1);
            let w = cube_root_of_unity(p).unwrap();
            assert_eq!(pow_mod(w, 3, p), 1);
            assert_ne!(w, 1);
        }
    }

    #[test]
    fn sparse_products_match_dense() {
        let a = IntMatrix::from_fn(2, 2, |i, j| (i * 2 + j) as i64 + 1);
        let mut s = SparseIntMatrix::zeros(4, 4);
        s.add_entry(0, 3, 2);
        s.add_entry(1, 0, -1);
        s.add_entry(2, 2, 5);
        s.add_entry(3, 1, 1);
        let kron = IntMatrix::from_fn(4, 4, |i, j| if i / 2 == j / 2 { a[(i % 2, j % 2)] } else { 0 });
        let dense = kron.to_exact().mul(&s.to_dense().to_exact());
        assert_eq!(a.identity_kron_mul_sparse(2, &s).to_exact(), dense);
        assert_eq!(kron.mul_sparse(&s).to_exact(), dense);
    }

    proptest! {
        #[test]
        fn modular_rank_bounded_by_exact(v in proptest::collection::vec(-5i64..6, 20)) {
            let m = IntMatrix::from_fn(4, 5, |i, j| v[i * 5 + j]);
            let exact = m.to_exact().rank();
            let cert = certified_rank_int(&m).unwrap();
            for &r in &cert.ranks {
                prop_assert!(r <= exact);
            }
            prop_assert_eq!(cert.rank, exact);
        }
    }
}
