//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use ncgeo::calculus::BraidData;
use ncgeo::linalg::{Cyclotomic, ExactMatrix};

/// Antisymmetrizer as the signed sum over permutations of the m slots, each
/// permutation acting through a reduced word of adjacent braidings.
pub fn signed_permutation_antisymmetrizer(braid: &BraidData, m: usize) -> ExactMatrix {
    let n = braid.generators();
    let side = n.pow(m as u32);
    let mut total = ExactMatrix::zeros(side, side);
    for sigma in permutations(m) {
        let word = reduced_word(&sigma);
        let sign = if word.len() % 2 == 0 { 1 } else { -1 };
        for j in 0..side {
            let i = word.iter().fold(j, |idx, &slot| braid.apply_at(m, slot, idx));
            total[(i, j)] += Cyclotomic::from_int(sign);
        }
    }
    total
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

/// Adjacent transpositions sorting `sigma` by bubble sort; the word length
/// equals the inversion count, so it is reduced.
fn reduced_word(sigma: &[usize]) -> Vec<usize> {
    let mut s = sigma.to_vec();
    let mut word = Vec::new();
    loop {
        let Some(i) = (0..s.len().saturating_sub(1)).find(|&i| s[i] > s[i + 1]) else {
            return word;
        };
        s.swap(i, i + 1);
        word.push(i);
    }
}

/// Rank of the span of all `Ω₀^{i−1} ⊗ ker(id−Ψ) ⊗ Ω₀^{m−i−1}`, stacked
/// directly.
pub fn stacked_relation_rank(braid: &BraidData, m: usize) -> usize {
    let n = braid.generators();
    let rels = braid.relations();
    let side = n.pow(m as u32);
    let mut vectors = Vec::new();
    for slot in 0..m - 1 {
        let high = n.pow((m - slot - 2) as u32);
        let low = n.pow(slot as u32);
        for prefix in 0..low {
            for suffix in 0..high {
                for rel in &rels {
                    let mut v = vec![Cyclotomic::zero(); side];
                    for (pair, c) in rel.iter().enumerate() {
                        if !c.is_zero() {
                            v[(prefix * n * n + pair) * high + suffix] = c.clone();
                        }
                    }
                    vectors.push(v);
                }
            }
        }
    }
    ExactMatrix::from_rows(vectors).rank()
}
