//! Exact linear algebra over ℤ/mℤ for composite m: row-span membership.
//!
//! The only question this module answers is "does a target vector lie in the
//! row span of a given matrix over ℤ/mℤ?". It works prime power by prime
//! power (CRT): over the local ring ℤ/pᵉℤ a Howell-style echelon basis is
//! maintained — pivots are exact powers of p, and whenever a row with pivot
//! pᵏ (k > 0) enters the basis, its annihilator multiple p^{e−k}·row is
//! inserted too, so left-to-right reduction decides membership.
//!
//! For prime m this degenerates to ordinary Gaussian elimination; a separate
//! nullspace routine over 𝔽_p is provided as an independent cross-check path.

use crate::arith::{modinv, prime_power_factorization, valuation};

/// Echelon basis of a submodule of (ℤ/pᵉℤ)^ncols.
struct LocalBasis {
    p: u64,
    e: u32,
    pe: u64,
    ncols: usize,
    /// pivot column → row; the pivot entry is exactly p^k for some k < e and
    /// all entries left of the pivot are zero.
    rows: std::collections::BTreeMap<usize, Vec<u64>>,
}

impl LocalBasis {
    fn new(p: u64, e: u32, ncols: usize) -> Self {
        LocalBasis { p, e, pe: p.pow(e), ncols, rows: std::collections::BTreeMap::new() }
    }

    fn scale(&self, row: &[u64], c: u64) -> Vec<u64> {
        row.iter().map(|&x| x * c % self.pe).collect()
    }

    fn sub_scaled(&self, v: &mut [u64], row: &[u64], c: u64) {
        for (x, &r) in v.iter_mut().zip(row) {
            *x = (*x + self.pe - c * r % self.pe) % self.pe;
        }
    }

    /// Multiply `v` by the inverse of the unit part of `v[j]`, making the
    /// pivot entry exactly p^k.
    fn normalize_at(&self, v: &mut [u64], j: usize, k: u32) {
        let unit = v[j] / self.p.pow(k);
        let inv = modinv(unit, self.pe).expect("unit part is coprime to p");
        for x in v.iter_mut() {
            *x = *x * inv % self.pe;
        }
        debug_assert_eq!(v[j], self.p.pow(k));
    }

    fn insert(&mut self, v: Vec<u64>) {
        let mut queue = vec![v];
        while let Some(mut v) = queue.pop() {
            let mut col = 0;
            loop {
                let Some(j) = (col..self.ncols).find(|&j| v[j] != 0) else {
                    break; // reduced to zero: already in the span
                };
                let k = valuation(self.p, v[j], self.e);
                match self.rows.get(&j) {
                    Some(row) => {
                        let l = valuation(self.p, row[j], self.e);
                        if l <= k {
                            // row pivot divides v[j]: eliminate column j.
                            let c = v[j] / self.p.pow(l);
                            let row = row.clone();
                            self.sub_scaled(&mut v, &row, c);
                            col = j;
                        } else {
                            // v has the sharper pivot: swap it in, then keep
                            // reducing the displaced row (whose entry at j is
                            // divisible by the new pivot).
                            self.normalize_at(&mut v, j, k);
                            if k > 0 {
                                queue.push(self.scale(&v, self.p.pow(self.e - k)));
                            }
                            let displaced =
                                self.rows.insert(j, v).expect("row existed in this branch");
                            v = displaced;
                            col = j;
                        }
                    }
                    None => {
                        self.normalize_at(&mut v, j, k);
                        if k > 0 {
                            queue.push(self.scale(&v, self.p.pow(self.e - k)));
                        }
                        self.rows.insert(j, v);
                        break;
                    }
                }
            }
        }
    }

    fn contains(&self, target: &[u64]) -> bool {
        let mut v: Vec<u64> = target.iter().map(|&x| x % self.pe).collect();
        let mut col = 0;
        loop {
            let Some(j) = (col..self.ncols).find(|&j| v[j] != 0) else {
                return true;
            };
            let Some(row) = self.rows.get(&j) else {
                return false;
            };
            let l = valuation(self.p, row[j], self.e);
            let k = valuation(self.p, v[j], self.e);
            if l > k {
                return false; // pivot p^l cannot produce a p^k entry
            }
            let c = v[j] / self.p.pow(l);
            let row = row.clone();
            self.sub_scaled(&mut v, &row, c);
            col = j;
        }
    }
}

/// True iff `target` lies in the ℤ/mℤ-span of `rows`.
///
/// All entries are interpreted modulo m. For m = 1 every vector is in every
/// span (the zero module).
pub fn submodule_contains(m: u64, rows: &[Vec<u64>], target: &[u64]) -> bool {
    assert!(m >= 1);
    let ncols = target.len();
    for &(p, e, _) in &prime_power_factorization(m) {
        let mut basis = LocalBasis::new(p, e, ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "row length mismatch");
            basis.insert(row.iter().map(|&x| x % basis.pe).collect());
        }
        if !basis.contains(target) {
            return false;
        }
    }
    true
}

/// Canonical nullspace basis of the matrix over 𝔽_p (prime p): one basis
/// vector per free column. Independent of the Howell machinery above, so the
/// two can cross-check each other.
pub fn nullspace_mod_prime(p: u64, matrix: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = matrix.iter().map(|r| {
        assert_eq!(r.len(), ncols);
        r.iter().map(|&x| x % p).collect()
    }).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = modinv(rows[rank][col], p).expect("p prime");
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let c = rows[r][col];
                for j in 0..ncols {
                    rows[r][j] = (rows[r][j] + p - c * rows[rank][j] % p) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut x = vec![0u64; ncols];
        x[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = (p - rows[i][free]) % p;
        }
        basis.push(x);
    }
    basis
}
