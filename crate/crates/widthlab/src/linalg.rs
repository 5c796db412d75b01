//! Exact linear algebra over a prime field 𝔽_q.
//!
//! Provides vectors with an optional block structure (p blocks of length n,
//! i.e. elements of (𝔽_q^n)^p), reduced-row-echelon subspaces with canonical
//! bases, the standard symmetric bilinear form ⟨v,w⟩ = Σ vᵢwᵢ, orthogonal
//! complements, the sum-zero space V_n, A_p-invariant closures, and the
//! construction of a vector whose A_p-orbit has exactly p elements.
//!
//! Subspace equality is basis equality: every subspace is stored in reduced
//! row echelon form, so two subspaces are equal iff their stored bases are.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::arith::{is_prime, modinv};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Residue in `[0, q)`; plain `u32` with the modulus carried by containers.
pub type FqScalar = u32;

/// Exact vector over 𝔽_q. Coordinates are always reduced to `[0, q)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqVector {
    q: u32,
    coords: Vec<u32>,
}

impl FqVector {
    /// Build from signed integers, reducing mod q (so `-1` means `q − 1`).
    pub fn new(q: u32, coords: &[i64]) -> Self {
        assert!(q >= 2, "field modulus must be at least 2");
        FqVector { q, coords: coords.iter().map(|&c| c.rem_euclid(q as i64) as u32).collect() }
    }

    /// Build from already-reduced residues.
    pub fn from_residues(q: u32, coords: Vec<u32>) -> Self {
        debug_assert!(coords.iter().all(|&c| c < q));
        FqVector { q, coords }
    }

    pub fn zero(q: u32, dim: usize) -> Self {
        FqVector { q, coords: vec![0; dim] }
    }

    /// Standard basis vector e_i (0-based).
    pub fn unit(q: u32, dim: usize, i: usize) -> Self {
        let mut coords = vec![0; dim];
        coords[i] = 1;
        FqVector { q, coords }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> u32 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &FqVector) -> FqVector {
        debug_assert_eq!(self.q, other.q);
        debug_assert_eq!(self.dim(), other.dim());
        FqVector {
            q: self.q,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| (a + b) % self.q)
                .collect(),
        }
    }

    pub fn neg(&self) -> FqVector {
        FqVector {
            q: self.q,
            coords: self.coords.iter().map(|&a| (self.q - a) % self.q).collect(),
        }
    }

    pub fn sub(&self, other: &FqVector) -> FqVector {
        self.add(&other.neg())
    }

    pub fn smul(&self, scalar: u32) -> FqVector {
        let s = scalar % self.q;
        FqVector { q: self.q, coords: self.coords.iter().map(|&a| a * s % self.q).collect() }
    }

    /// Index of the first nonzero coordinate, if any.
    pub fn leading(&self) -> Option<usize> {
        self.coords.iter().position(|&c| c != 0)
    }
}

impl fmt::Display for FqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords.iter().join(","))
    }
}

impl fmt::Debug for FqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Standard bilinear form ⟨v,w⟩ = Σ vᵢwᵢ over 𝔽_q.
///
/// On block vectors this is automatically the sum of the blockwise forms.
pub fn inner(v: &FqVector, w: &FqVector) -> Result<FqScalar> {
    if v.q != w.q {
        return Err(Error::InvalidParameter(format!(
            "inner product across different fields F_{} and F_{}",
            v.q, w.q
        )));
    }
    if v.dim() != w.dim() {
        return Err(Error::InvalidParameter(format!(
            "inner product length mismatch: {} vs {}",
            v.dim(),
            w.dim()
        )));
    }
    let q = v.q as u64;
    let mut acc: u64 = 0;
    for (&a, &b) in v.coords.iter().zip(&w.coords) {
        acc = (acc + a as u64 * b as u64) % q;
    }
    Ok(acc as u32)
}

/// Block structure of (𝔽_q^n)^p: p blocks of length n, ambient dim n·p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockShape {
    pub p: usize,
    pub n: usize,
}

impl BlockShape {
    pub fn dim(&self) -> usize {
        self.n * self.p
    }

    /// Component v_i (0-based block index).
    pub fn block<'a>(&self, v: &'a FqVector, i: usize) -> &'a [u32] {
        debug_assert_eq!(v.dim(), self.dim());
        &v.coords[i * self.n..(i + 1) * self.n]
    }

    /// All p components as n-dimensional vectors.
    pub fn components(&self, v: &FqVector) -> Vec<FqVector> {
        (0..self.p).map(|i| FqVector::from_residues(v.q, self.block(v, i).to_vec())).collect()
    }

    /// Assemble a block vector from p components of length n.
    pub fn from_blocks(&self, q: u32, blocks: &[FqVector]) -> FqVector {
        assert_eq!(blocks.len(), self.p);
        let mut coords = Vec::with_capacity(self.dim());
        for b in blocks {
            assert_eq!(b.dim(), self.n);
            assert_eq!(b.q, q);
            coords.extend_from_slice(&b.coords);
        }
        FqVector { q, coords }
    }

    /// Right action of a permutation on block vectors:
    /// `(v^σ)_i = v_{σ(i)}`, so `(v^σ)^τ = v^{στ}` under `(στ)(i) = σ(τ(i))`.
    pub fn apply_perm(&self, v: &FqVector, sigma: &Permutation) -> FqVector {
        debug_assert_eq!(sigma.degree(), self.p);
        debug_assert_eq!(v.dim(), self.dim());
        let mut coords = Vec::with_capacity(self.dim());
        for i in 0..self.p {
            coords.extend_from_slice(self.block(v, sigma.apply(i)));
        }
        FqVector { q: v.q, coords }
    }

    /// True when every coordinate's blockwise sum vanishes, i.e. v ∈ V_n.
    pub fn is_sumzero(&self, v: &FqVector) -> bool {
        debug_assert_eq!(v.dim(), self.dim());
        (0..self.n).all(|j| {
            (0..self.p).map(|i| v.coords[i * self.n + j] as u64).sum::<u64>() % v.q as u64 == 0
        })
    }
}

// ---------------------------------------------------------------------------
// Row echelon machinery (private) and canonical subspaces.
// ---------------------------------------------------------------------------

/// In-place reduced row echelon form over 𝔽_q; returns pivot column indices.
/// Zero rows are removed.
fn rref(rows: &mut Vec<Vec<u32>>, q: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(row, pivot_row);
        let inv = modinv(rows[row][col] as u64, q as u64).expect("q prime") as u32;
        for entry in rows[row].iter_mut() {
            *entry = *entry * inv % q;
        }
        for r in 0..rows.len() {
            if r != row && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..ncols {
                    let sub = factor as u64 * rows[row][c] as u64 % q as u64;
                    rows[r][c] = ((rows[r][c] as u64 + q as u64 - sub) % q as u64) as u32;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    rows.truncate(row);
    pivots
}

/// Canonical nullspace basis of the matrix (rows × ncols) over 𝔽_q, one basis
/// vector per free column, ordered by free column index.
fn nullspace(matrix: &[Vec<u32>], ncols: usize, q: u32) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = matrix.iter().filter(|r| !r.is_empty()).cloned().collect();
    let pivots = rref(&mut rows, q);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut x = vec![0u32; ncols];
        x[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            // row i reads x[pc] + Σ_{c free} row[c]·x[c] = 0.
            x[pc] = (q - rows[i][free] % q) % q;
        }
        basis.push(x);
    }
    basis
}

/// A subspace of 𝔽_q^ambient in reduced row echelon form.
///
/// The stored basis is canonical, so `==` on subspaces is semantic equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    q: u32,
    ambient: usize,
    basis: Vec<FqVector>,
}

impl Subspace {
    /// Span of the given vectors, in canonical form.
    pub fn from_rows(q: u32, ambient: usize, rows: &[FqVector]) -> Subspace {
        let mut raw: Vec<Vec<u32>> = rows
            .iter()
            .map(|v| {
                assert_eq!(v.q, q, "mixed fields in subspace construction");
                assert_eq!(v.dim(), ambient, "mixed dimensions in subspace construction");
                v.coords.clone()
            })
            .collect();
        rref(&mut raw, q);
        Subspace {
            q,
            ambient,
            basis: raw.into_iter().map(|coords| FqVector { q, coords }).collect(),
        }
    }

    pub fn zero(q: u32, ambient: usize) -> Subspace {
        Subspace { q, ambient, basis: Vec::new() }
    }

    /// The full space 𝔽_q^ambient.
    pub fn full(q: u32, ambient: usize) -> Subspace {
        let rows: Vec<FqVector> = (0..ambient).map(|i| FqVector::unit(q, ambient, i)).collect();
        Subspace { q, ambient, basis: rows }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical echelon basis.
    pub fn basis(&self) -> &[FqVector] {
        &self.basis
    }

    /// Number of vectors in the subspace, q^dim.
    pub fn count(&self) -> u128 {
        (self.q as u128).pow(self.dim() as u32)
    }

    /// Residual of `v` after reduction against the echelon basis; zero iff
    /// `v` lies in the subspace.
    pub fn reduce(&self, v: &FqVector) -> FqVector {
        debug_assert_eq!(v.q, self.q);
        debug_assert_eq!(v.dim(), self.ambient);
        let mut r = v.clone();
        for b in &self.basis {
            let lead = b.leading().expect("echelon rows are nonzero");
            let c = r.coords[lead];
            if c != 0 {
                r = r.sub(&b.smul(c));
            }
        }
        r
    }

    pub fn contains(&self, v: &FqVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Smallest subspace containing both operands.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        debug_assert_eq!(self.q, other.q);
        debug_assert_eq!(self.ambient, other.ambient);
        let rows: Vec<FqVector> =
            self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::from_rows(self.q, self.ambient, &rows)
    }

    /// All q^dim vectors, in the deterministic order given by lexicographic
    /// coefficient tuples over the echelon basis. The zero vector is first.
    pub fn elements(&self, cap: u64) -> Result<Vec<FqVector>> {
        let count = self.count();
        if count > cap as u128 {
            return Err(Error::cap(
                format!("enumeration of a {}-dim subspace over F_{}", self.dim(), self.q),
                count.min(u64::MAX as u128) as u64,
                cap,
            ));
        }
        let count = count as u64;
        let dim = self.dim();
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0u32; dim];
        let mut current = FqVector::zero(self.q, self.ambient);
        out.push(current.clone());
        // Odometer with basis[dim−1] as the fastest digit; each step adds or
        // resets single basis vectors, keeping enumeration O(count·ambient).
        for _ in 1..count {
            for slot in (0..dim).rev() {
                digits[slot] += 1;
                if digits[slot] < self.q {
                    current = current.add(&self.basis[slot]);
                    break;
                }
                digits[slot] = 0;
                // wrapping q−1 → 0 subtracts (q−1)·b, i.e. adds b once.
                current = current.add(&self.basis[slot]);
            }
            out.push(current.clone());
        }
        Ok(out)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(F_{}, ambient {}, dim {}: {})",
            self.q,
            self.ambient,
            self.dim(),
            self.basis.iter().map(|b| b.to_string()).join(" ")
        )
    }
}

// ---------------------------------------------------------------------------
// The sum-zero space and form machinery.
// ---------------------------------------------------------------------------

/// Validate the (p, q) primality/distinctness constraints shared by all
/// constructions: p ≥ 5 prime, q prime, p ≠ q.
pub fn validate_pq(p: u64, q: u64) -> Result<()> {
    if p < 5 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!("p = {p} must be a prime ≥ 5")));
    }
    if !is_prime(q) {
        return Err(Error::InvalidParameter(format!("q = {q} must be prime")));
    }
    if p == q {
        return Err(Error::InvalidParameter(format!("p and q must be distinct (both {p})")));
    }
    Ok(())
}

/// The sum-zero subspace V_n ⊆ (𝔽_q^n)^p: block vectors whose p components
/// sum to zero. Dimension n(p−1).
pub fn sumzero_space(p: u64, q: u64, n: u64) -> Result<Subspace> {
    validate_pq(p, q)?;
    if n < 1 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let shape = BlockShape { p: p as usize, n: n as usize };
    let q = q as u32;
    let mut rows = Vec::new();
    // Basis: unit in block i at coordinate j, minus the same unit in the last
    // block — already in echelon position ordered by (i, j).
    for i in 0..shape.p - 1 {
        for j in 0..shape.n {
            let mut coords = vec![0i64; shape.dim()];
            coords[i * shape.n + j] = 1;
            coords[(shape.p - 1) * shape.n + j] = -1;
            rows.push(FqVector::new(q, &coords));
        }
    }
    let space = Subspace::from_rows(q, shape.dim(), &rows);
    debug_assert_eq!(space.dim(), shape.n * (shape.p - 1));
    Ok(space)
}

/// `{v ∈ ambient : ⟨v, s⟩ = 0 for all s ∈ defining}`.
///
/// The defining vectors must lie in the ambient subspace (the complement is
/// taken inside `ambient`, not inside the surrounding coordinate space).
pub fn orthogonal_complement(defining: &[FqVector], ambient: &Subspace) -> Result<Subspace> {
    for s in defining {
        if s.q != ambient.q || s.dim() != ambient.ambient {
            return Err(Error::InvalidParameter(
                "defining vector has wrong field or dimension for the ambient space".into(),
            ));
        }
        if !ambient.contains(s) {
            return Err(Error::InvalidParameter(format!(
                "defining vector {s} lies outside the ambient subspace"
            )));
        }
    }
    if defining.is_empty() {
        return Ok(ambient.clone());
    }
    // Solve ⟨s_i, Σ y_j b_j⟩ = 0 for the coefficient vector y over the
    // ambient basis b_1..b_d.
    let matrix: Vec<Vec<u32>> = defining
        .iter()
        .map(|s| {
            ambient
                .basis()
                .iter()
                .map(|b| inner(s, b).expect("dimensions validated above"))
                .collect()
        })
        .collect();
    let kernel = nullspace(&matrix, ambient.dim(), ambient.q);
    let rows: Vec<FqVector> = kernel
        .iter()
        .map(|y| {
            let mut v = FqVector::zero(ambient.q, ambient.ambient);
            for (j, &c) in y.iter().enumerate() {
                if c != 0 {
                    v = v.add(&ambient.basis()[j].smul(c));
                }
            }
            v
        })
        .collect();
    Ok(Subspace::from_rows(ambient.q, ambient.ambient, &rows))
}

/// True iff the standard form restricted to the subspace is non-degenerate,
/// i.e. the Gram matrix of the canonical basis has full rank. The zero
/// subspace is vacuously non-degenerate.
pub fn is_nondegenerate(space: &Subspace) -> bool {
    let d = space.dim();
    if d == 0 {
        return true;
    }
    let mut gram: Vec<Vec<u32>> = space
        .basis()
        .iter()
        .map(|a| {
            space
                .basis()
                .iter()
                .map(|b| inner(a, b).expect("same space"))
                .collect()
        })
        .collect();
    rref(&mut gram, space.q).len() == d
}

/// Generators of A_p used for invariant closures: the 3-cycle (1 2 3) and the
/// p-cycle (1 2 … p). These generate A_p for odd p ≥ 3, and every p here is
/// an odd prime ≥ 5.
pub fn ap_generators(p: usize) -> Vec<Permutation> {
    let three: Vec<usize> = vec![1, 2, 3];
    let full: Vec<usize> = (1..=p).collect();
    vec![
        Permutation::from_cycles(p, &[&three]).expect("valid 3-cycle"),
        Permutation::from_cycles(p, &[&full]).expect("valid p-cycle"),
    ]
}

/// Smallest A_p-invariant subspace U of V_n containing the inputs, together
/// with U^⊥ (taken inside V_n), which is itself A_p-invariant.
pub fn ap_invariant_closure(
    shape: BlockShape,
    vectors: &[FqVector],
    vn: &Subspace,
) -> Result<(Subspace, Subspace)> {
    for v in vectors {
        if !vn.contains(v) {
            return Err(Error::InvalidParameter(format!("input vector {v} is not in V_n")));
        }
    }
    let gens = ap_generators(shape.p);
    let mut u = Subspace::from_rows(vn.q, vn.ambient, vectors);
    loop {
        let mut grown = u.clone();
        for b in u.basis() {
            for g in &gens {
                let image = shape.apply_perm(b, g);
                if !grown.contains(&image) {
                    grown = grown.sum(&Subspace::from_rows(vn.q, vn.ambient, &[image]));
                }
            }
        }
        if grown.dim() == u.dim() {
            break;
        }
        u = grown;
    }
    // Cross-check minimality directly when A_p is small enough to enumerate:
    // the span of the full orbit of the inputs is invariant, contains the
    // inputs, and sits inside every invariant space containing them.
    if shape.p <= 7 {
        let all = crate::perm::alternating_perms(shape.p, crate::perm::DEFAULT_PERM_CAP)?;
        let orbit_rows: Vec<FqVector> = vectors
            .iter()
            .flat_map(|v| all.iter().map(|s| shape.apply_perm(v, s)))
            .collect();
        let direct = Subspace::from_rows(vn.q, vn.ambient, &orbit_rows);
        if direct != u {
            return Err(Error::Inconsistency(
                "invariant closure differs from the direct orbit span".into(),
            ));
        }
    }
    let perp = orthogonal_complement(u.basis(), vn)?;
    Ok((u, perp))
}

/// Construct w = (u, …, u, (1−p)u) ∈ V_n with u ≠ 0 orthogonal to every block
/// component of the defining vectors. The A_p-orbit of w has exactly p
/// elements: the blocks of w take two distinct values ((1−p)u differs from u
/// because p·u ≠ 0 when gcd(p, q) = 1), so the orbit is parametrized by the
/// position of the distinguished block.
///
/// Fails when the block components of the defining vectors already span all
/// of 𝔽_q^n (guaranteed not to happen when n > c·(p−1) for c defining
/// vectors).
pub fn find_orbit_p_vector(shape: BlockShape, q: u32, defining: &[FqVector]) -> Result<FqVector> {
    let mut component_rows = Vec::new();
    for d in defining {
        if d.dim() != shape.dim() || d.q != q {
            return Err(Error::InvalidParameter(
                "defining vector has wrong shape for (F_q^n)^p".into(),
            ));
        }
        component_rows.extend(shape.components(d));
    }
    let span = Subspace::from_rows(q, shape.n, &component_rows);
    if span.dim() == shape.n {
        return Err(Error::Degenerate(format!(
            "block components of the defining vectors span all of F_{q}^{}; \
             no nonzero orthogonal u exists",
            shape.n
        )));
    }
    let complement = orthogonal_complement(span.basis(), &Subspace::full(q, shape.n))?;
    debug_assert!(complement.dim() > 0, "proper span has nonzero complement");
    // Deterministic choice: first vector of the canonical echelon basis.
    let u = complement.basis()[0].clone();
    let last = u.smul((1 + (q as u64 * shape.p as u64 - shape.p as u64) % q as u64) as u32);
    debug_assert!(last != u, "p·u = 0 would need q | p");
    let mut blocks = vec![u.clone(); shape.p - 1];
    blocks.push(last);
    let w = shape.from_blocks(q, &blocks);
    // Postconditions: w is sum-zero and orthogonal to every defining vector.
    if !shape.is_sumzero(&w) {
        return Err(Error::Inconsistency("orbit-p vector is not sum-zero".into()));
    }
    for d in defining {
        if inner(&w, d)? != 0 {
            return Err(Error::Inconsistency(format!(
                "orbit-p vector {w} is not orthogonal to defining vector {d}"
            )));
        }
    }
    Ok(w)
}
