//! The ℤ/mℤ-module B of sum-zero q-tuples with its cyclic shift f.
//!
//! B carries the basis b₁ = (1,−1,0,…,0), b_{i+1} = f(b_i), so every element
//! is determined by q−1 coordinates; f−id is invertible on B whenever
//! gcd(m,q) = 1, which is the engine behind the perfectness certificates.

use std::collections::HashMap;

use crate::arith::gcd;
use crate::check::Check;
use crate::error::{Error, Result};

/// A sum-zero tuple (t₁,…,t_q) of residues mod m.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BElement {
    entries: Vec<u64>,
}

impl BElement {
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&t| t == 0)
    }
}

impl std::fmt::Display for BElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|t| t.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Context object holding q (tuple length) and m (modulus).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BModule {
    q: usize,
    m: u64,
}

impl BModule {
    /// Requires q ≥ 2 and gcd(m, q) = 1 (so the basis and the f−id inverse
    /// below are well defined).
    pub fn new(q: u64, m: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!("tuple length q must be ≥ 2, got {q}")));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("modulus m must be positive".into()));
        }
        if gcd(m, q) != 1 {
            return Err(Error::InvalidParameter(format!(
                "need gcd(m, q) = 1, got gcd({m},{q}) = {}",
                gcd(m, q)
            )));
        }
        Ok(BModule { q: q as usize, m })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Number of elements, m^{q−1}.
    pub fn size(&self) -> u128 {
        (self.m as u128).pow(self.q as u32 - 1)
    }

    pub fn zero(&self) -> BElement {
        BElement { entries: vec![0; self.q] }
    }

    /// Builds an element from signed entries, validating length and sum-zero.
    pub fn element(&self, entries: &[i64]) -> Result<BElement> {
        if entries.len() != self.q {
            return Err(Error::InvalidParameter(format!(
                "expected {} entries, got {}",
                self.q,
                entries.len()
            )));
        }
        let reduced: Vec<u64> = entries.iter().map(|&t| t.rem_euclid(self.m as i64) as u64).collect();
        let sum: u64 = reduced.iter().sum();
        if sum % self.m != 0 {
            return Err(Error::InvalidParameter(format!(
                "entries must sum to 0 mod {}, got sum ≡ {}",
                self.m,
                sum % self.m
            )));
        }
        Ok(BElement { entries: reduced })
    }

    pub fn add(&self, a: &BElement, b: &BElement) -> BElement {
        BElement {
            entries: a.entries.iter().zip(&b.entries).map(|(x, y)| (x + y) % self.m).collect(),
        }
    }

    pub fn neg(&self, a: &BElement) -> BElement {
        BElement { entries: a.entries.iter().map(|&x| (self.m - x) % self.m).collect() }
    }

    pub fn sub(&self, a: &BElement, b: &BElement) -> BElement {
        self.add(a, &self.neg(b))
    }

    pub fn smul(&self, c: u64, a: &BElement) -> BElement {
        let c = c % self.m;
        BElement { entries: a.entries.iter().map(|&x| x * c % self.m).collect() }
    }

    /// The cyclic right shift f: (t₁,…,t_q) ↦ (t_q,t₁,…,t_{q−1}).
    pub fn f(&self, a: &BElement) -> BElement {
        let mut entries = Vec::with_capacity(self.q);
        entries.push(a.entries[self.q - 1]);
        entries.extend_from_slice(&a.entries[..self.q - 1]);
        BElement { entries }
    }

    /// f^k (k may exceed q; reduced mod q since f has order q).
    pub fn f_pow(&self, k: u64, a: &BElement) -> BElement {
        let k = (k as usize) % self.q;
        if k == 0 {
            return a.clone();
        }
        // Right-shifting k times moves entry i to position i+k.
        let mut entries = vec![0u64; self.q];
        for (i, &t) in a.entries.iter().enumerate() {
            entries[(i + k) % self.q] = t;
        }
        BElement { entries }
    }

    /// (f − id)(a).
    pub fn f_minus_id(&self, a: &BElement) -> BElement {
        self.sub(&self.f(a), a)
    }

    /// The basis b₁,…,b_{q−1} with b₁ = (1,−1,0,…,0) and b_{i+1} = f(b_i).
    pub fn basis(&self) -> Vec<BElement> {
        let mut out = Vec::with_capacity(self.q - 1);
        let mut current = BElement {
            entries: {
                let mut e = vec![0; self.q];
                e[0] = 1 % self.m;
                e[1] = (self.m - 1) % self.m;
                e
            },
        };
        for _ in 0..self.q - 1 {
            out.push(current.clone());
            current = self.f(&current);
        }
        out
    }

    /// The i-th basis element b_{i} for i ∈ [1, q−1].
    pub fn basis_element(&self, i: usize) -> Result<BElement> {
        if i == 0 || i >= self.q {
            return Err(Error::InvalidParameter(format!(
                "basis index must lie in [1, {}], got {i}",
                self.q - 1
            )));
        }
        Ok(self.basis().swap_remove(i - 1))
    }

    /// Coordinates of a in the basis: the partial sums
    /// (t₁, t₁+t₂, …, t₁+…+t_{q−1}), so a = Σ coords_i · b_i.
    pub fn coordinates(&self, a: &BElement) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.q - 1);
        let mut acc = 0u64;
        for &t in &a.entries[..self.q - 1] {
            acc = (acc + t) % self.m;
            out.push(acc);
        }
        out
    }

    /// Inverse of [`coordinates`](Self::coordinates).
    pub fn from_coordinates(&self, coords: &[u64]) -> Result<BElement> {
        if coords.len() != self.q - 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates, got {}",
                self.q - 1,
                coords.len()
            )));
        }
        let c: Vec<u64> = coords.iter().map(|&x| x % self.m).collect();
        let mut entries = Vec::with_capacity(self.q);
        entries.push(c[0]);
        for i in 1..self.q - 1 {
            entries.push((c[i] + self.m - c[i - 1]) % self.m);
        }
        entries.push((self.m - c[self.q - 2]) % self.m);
        Ok(BElement { entries })
    }

    /// Every element of B, in coordinate-odometer order (zero first).
    /// Errors when m^{q−1} exceeds `cap`.
    pub fn enumerate(&self, cap: u64) -> Result<Vec<BElement>> {
        if self.size() > cap as u128 {
            let needed = self.size().min(u64::MAX as u128) as u64;
            return Err(Error::cap("shift-module enumeration", needed, cap));
        }
        let k = self.q - 1;
        let mut coords = vec![0u64; k];
        let mut out = Vec::with_capacity(self.size() as usize);
        loop {
            out.push(self.from_coordinates(&coords).expect("valid coordinates"));
            let mut pos = 0;
            loop {
                if pos == k {
                    return Ok(out);
                }
                coords[pos] += 1;
                if coords[pos] < self.m {
                    break;
                }
                coords[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Table inverting f−id on all of B (exists since gcd(m,q) = 1).
    /// Errors if |B| exceeds `cap`, or with an inconsistency if f−id fails
    /// to be injective (impossible under the constructor's precondition).
    pub fn f_minus_id_inverse(&self, cap: u64) -> Result<HashMap<BElement, BElement>> {
        let all = self.enumerate(cap)?;
        let mut table = HashMap::with_capacity(all.len());
        for b in &all {
            if table.insert(self.f_minus_id(b), b.clone()).is_some() {
                return Err(Error::Inconsistency(
                    "f−id is not injective on B despite gcd(m,q) = 1".into(),
                ));
            }
        }
        Ok(table)
    }
}

/// Full-enumeration certificate for the shift automorphism f on B and the
/// b_1, …, b_{q−1} basis: f has order exactly q with 0 as its only fixed
/// point, f−id is a bijection, and coordinates reconstruct every element.
pub fn certify_b_shift(q: u64, m: u64, cap: u64) -> Result<Vec<Check>> {
    let b = BModule::new(q, m)?;
    let all = b.enumerate(cap)?;
    let mut checks = Vec::new();

    // (a) f^q = id on every element, and no smaller positive power of f is
    // the identity map (so f has order exactly q on B when |B| > 1).
    let q_power_fixes = all.iter().all(|x| b.f_pow(q, x) == *x);
    let smaller_power_moves = (1..q)
        .all(|k| all.iter().any(|x| b.f_pow(k, x) != *x));
    let exactly = if b.size() > 1 { q_power_fixes && smaller_power_moves } else { q_power_fixes };
    checks.push(Check::expect(
        "f-order-q",
        exactly,
        format!("f^{q} = id on all {} elements and no smaller power is the identity", all.len()),
    ));

    // (b) The only fixed point of f is 0.
    let mut bad_fixed = None;
    for x in &all {
        if b.f(x) == *x && !x.is_zero() {
            bad_fixed = Some(x.clone());
            break;
        }
    }
    let mut check = Check::expect(
        "fixed-point-unique",
        bad_fixed.is_none(),
        format!("f(b) = b only at b = 0, over all {} elements", all.len()),
    );
    if let Some(x) = bad_fixed {
        check = check.with_witness(format!("nonzero fixed point {x}"));
    }
    checks.push(check);

    // (c) f−id permutes B: its inverse table round-trips both ways.
    let inverse = b.f_minus_id_inverse(cap)?;
    let bijective = inverse.len() == all.len()
        && all.iter().all(|x| {
            inverse.get(&b.f_minus_id(x)) == Some(x)
                && b.f_minus_id(&inverse[&b.f_minus_id(x)]) == b.f_minus_id(x)
        });
    checks.push(Check::expect(
        "f-minus-id-invertible",
        bijective,
        format!("f−id inverts on all {} elements of B", all.len()),
    ));

    // (d) Coordinates over b_1, …, b_{q−1} reconstruct every element, and the
    // coordinate map is a bijection onto (ℤ/m)^{q−1}.
    let basis = b.basis();
    let mut reconstructs = true;
    let mut distinct = std::collections::HashSet::new();
    for x in &all {
        let coords = b.coordinates(x);
        let mut rebuilt = b.zero();
        for (c, bi) in coords.iter().zip(&basis) {
            rebuilt = b.add(&rebuilt, &b.smul(*c, bi));
        }
        if rebuilt != *x {
            reconstructs = false;
            break;
        }
        distinct.insert(coords);
    }
    checks.push(Check::expect(
        "basis-reconstruction",
        reconstructs && distinct.len() == all.len(),
        format!(
            "b = Σ cᵢ·bᵢ holds on all {} elements; {} distinct coordinate tuples",
            all.len(),
            distinct.len()
        ),
    ));

    Ok(checks)
}
