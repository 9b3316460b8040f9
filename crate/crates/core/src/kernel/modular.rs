//! Multi-modular nullspace for large sparse adjacency matrices.
//!
//! Each prime gives a sparse elimination (Markowitz-style pivoting) and a
//! kernel basis mod p, reduced to the unique basis whose last nonzero
//! coordinates are the free columns of the rational echelon form. Residues
//! are combined by CRT and rational reconstruction; the candidate vectors are
//! then checked exactly against the matrix. `k` verified independent kernel
//! vectors with `k` equal to the nullity mod p (an upper bound for the
//! rational nullity) settle the nullity exactly.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::graph::Graph;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes just below 2^31, descending. Products of two residues fit in u64.
pub(crate) fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut c = (1u64 << 31) - 1;
        while out.len() < 64 {
            if is_prime(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Rank of the adjacency matrix mod p by dense elimination (small graphs).
pub(crate) fn dense_rank_mod(g: &Graph, p: u64) -> usize {
    let n = g.order();
    let mut m = vec![vec![0u64; n]; n];
    for &(u, v) in g.edges() {
        m[u as usize][v as usize] = 1;
        m[v as usize][u as usize] = 1;
    }
    let mut rank = 0;
    for c in 0..n {
        let Some(sel) = (rank..n).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, sel);
        let inv = inv_mod(m[rank][c], p);
        for j in c..n {
            m[rank][j] = m[rank][j] * inv % p;
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..n {
                row[j] = (row[j] + (p - f) * prow[j]) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Sparse elimination state mod p.
struct Elimination {
    n: usize,
    /// Frozen pivot rows with their pivot column, in elimination order.
    pivots: Vec<(usize, Vec<(u32, u64)>)>,
    free: Vec<usize>,
}

fn eliminate(g: &Graph, p: u64) -> Elimination {
    let n = g.order();
    let mut rows: Vec<Vec<(u32, u64)>> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&w| (w, 1u64)).collect())
        .collect();
    let mut col_rows: Vec<BTreeSet<u32>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut col_done = vec![false; n];
    let mut pivots = Vec::new();
    let mut scratch = Vec::new();
    loop {
        let Some(c) = (0..n)
            .filter(|&c| !col_done[c] && !col_rows[c].is_empty())
            .min_by_key(|&c| (col_rows[c].len(), c))
        else {
            break;
        };
        let r = *col_rows[c]
            .iter()
            .min_by_key(|&&r| (rows[r as usize].len(), r))
            .expect("nonempty column");
        let prow = std::mem::take(&mut rows[r as usize]);
        for &(j, _) in &prow {
            col_rows[j as usize].remove(&r);
        }
        let lead = prow
            .iter()
            .find(|&&(j, _)| j as usize == c)
            .map(|&(_, v)| v)
            .expect("pivot entry");
        let inv = inv_mod(lead, p);
        let targets: Vec<u32> = col_rows[c].iter().copied().collect();
        for i in targets {
            let row = &rows[i as usize];
            let a = row
                .iter()
                .find(|&&(j, _)| j as usize == c)
                .map(|&(_, v)| v)
                .expect("column membership is exact");
            let f = a * inv % p;
            // row - f * prow, merged by column
            scratch.clear();
            let (mut x, mut y) = (0, 0);
            while x < row.len() || y < prow.len() {
                let take_row = y >= prow.len() || (x < row.len() && row[x].0 < prow[y].0);
                let take_piv = x >= row.len() || (y < prow.len() && prow[y].0 < row[x].0);
                if take_row {
                    scratch.push(row[x]);
                    x += 1;
                } else if take_piv {
                    let (j, v) = prow[y];
                    scratch.push((j, (p - f) * v % p));
                    col_rows[j as usize].insert(i);
                    y += 1;
                } else {
                    let (j, v) = row[x];
                    let val = (v + (p - f) * prow[y].1) % p;
                    if val != 0 {
                        scratch.push((j, val));
                    } else {
                        col_rows[j as usize].remove(&i);
                    }
                    x += 1;
                    y += 1;
                }
            }
            std::mem::swap(&mut rows[i as usize], &mut scratch);
        }
        debug_assert!(col_rows[c].is_empty());
        col_done[c] = true;
        pivots.push((c, prow));
    }
    let free = (0..n).filter(|&c| !col_done[c]).collect();
    Elimination { n, pivots, free }
}

impl Elimination {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel basis mod p in reverse reduced echelon form: vector `i` has its
    /// last nonzero entry (equal to 1) at `positions[i]`, and the other
    /// vectors vanish there. Returns `(positions, vectors)`.
    fn canonical_kernel(&self, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
        let n = self.n;
        let mut basis: Vec<Vec<u64>> = self
            .free
            .iter()
            .map(|&f| {
                let mut x = vec![0u64; n];
                x[f] = 1;
                for (c, row) in self.pivots.iter().rev() {
                    let mut s = 0u64;
                    let mut lead = 0;
                    for &(j, v) in row {
                        if j as usize == *c {
                            lead = v;
                        } else if x[j as usize] != 0 {
                            s = (s + v * x[j as usize]) % p;
                        }
                    }
                    x[*c] = (p - s) % p * inv_mod(lead, p) % p;
                }
                x
            })
            .collect();
        let k = basis.len();
        let mut positions = Vec::with_capacity(k);
        let mut assigned = 0;
        for col in (0..n).rev() {
            if assigned == k {
                break;
            }
            let Some(sel) = (assigned..k).find(|&i| basis[i][col] != 0) else { continue };
            basis.swap(assigned, sel);
            let inv = inv_mod(basis[assigned][col], p);
            for x in basis[assigned].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot = basis[assigned].clone();
            for (i, row) in basis.iter_mut().enumerate() {
                if i == assigned || row[col] == 0 {
                    continue;
                }
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    if y != 0 {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
            }
            positions.push(col);
            assigned += 1;
        }
        // ascending by position
        let mut paired: Vec<(usize, Vec<u64>)> = positions.into_iter().zip(basis).collect();
        paired.sort_by_key(|(c, _)| *c);
        paired.into_iter().unzip()
    }
}

/// Rank of the adjacency matrix mod p.
pub(crate) fn rank_mod(g: &Graph, p: u64) -> usize {
    if g.order() <= 64 {
        dense_rank_mod(g, p)
    } else {
        eliminate(g, p).rank()
    }
}

fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    if s1.is_negative() {
        Some((-r1, -s1))
    } else {
        Some((r1, s1))
    }
}

fn verify(g: &Graph, v: &[BigInt]) -> bool {
    (0..g.order()).all(|u| {
        let mut s = BigInt::zero();
        for &w in g.neighbors(u) {
            s += &v[w as usize];
        }
        s.is_zero()
    })
}

/// Exact kernel basis via several primes, or `None` if no consistent
/// reconstruction verified within the prime budget.
pub(crate) fn nullspace(g: &Graph) -> Option<Vec<Vec<BigInt>>> {
    let n = g.order();
    // accumulated residues for the current signature
    let mut signature: Option<(usize, Vec<usize>)> = None;
    let mut modulus = BigInt::one();
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut used = 0;
    for &p in primes() {
        let elim = eliminate(g, p);
        let (positions, basis) = elim.canonical_kernel(p);
        let k = positions.len();
        let fresh = match &signature {
            None => true,
            Some((k0, pos0)) => k < *k0 || (k == *k0 && positions != *pos0),
        };
        if fresh {
            signature = Some((k, positions.clone()));
            modulus = BigInt::one();
            residues = vec![vec![BigInt::zero(); n]; k];
            used = 0;
        } else if k > signature.as_ref().map_or(0, |s| s.0) {
            continue; // unlucky prime
        }
        if k == 0 {
            return Some(Vec::new());
        }
        // CRT: x ≡ old (mod M), x ≡ r (mod p)
        let pb = BigInt::from(p);
        let m_rem = u64::try_from(&modulus % &pb).expect("residue below p");
        let m_inv = BigInt::from(inv_mod(m_rem, p));
        for (acc, vec) in residues.iter_mut().zip(&basis) {
            for (a, &r) in acc.iter_mut().zip(vec) {
                let diff = (BigInt::from(r) - &*a).mod_floor(&pb);
                let t = (diff * &m_inv).mod_floor(&pb);
                *a += &modulus * t;
            }
        }
        modulus *= &pb;
        used += 1;
        if used < 2 {
            continue;
        }
        if let Some(vectors) = reconstruct_all(g, &residues, &modulus) {
            return Some(vectors);
        }
    }
    None
}

fn reconstruct_all(g: &Graph, residues: &[Vec<BigInt>], modulus: &BigInt) -> Option<Vec<Vec<BigInt>>> {
    let mut out = Vec::with_capacity(residues.len());
    for acc in residues {
        let mut fracs = Vec::with_capacity(acc.len());
        let mut lcm = BigInt::one();
        for a in acc {
            let (num, den) = rational_reconstruct(a, modulus)?;
            lcm = lcm.lcm(&den);
            fracs.push((num, den));
        }
        let mut v: Vec<BigInt> = fracs.into_iter().map(|(num, den)| num * (&lcm / den)).collect();
        super::normalize(&mut v);
        if !verify(g, &v) {
            return None;
        }
        out.push(v);
    }
    Some(out)
}
