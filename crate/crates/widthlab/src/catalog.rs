//! Concrete element types (permutations, matrices over 𝔽_q, pairs, modular
//! tuples) and builders for the named groups used by the command-line tools
//! and the test suites.

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::{generate, ElementOps, Group, GroupSpec, DEFAULT_GROUP_CAP};
use crate::perm::Permutation;

/// Permutations of fixed degree under composition.
#[derive(Debug, Clone)]
pub struct PermOps {
    degree: usize,
}

impl PermOps {
    pub fn new(degree: usize) -> Self {
        PermOps { degree }
    }
}

impl ElementOps for PermOps {
    type Elem = Permutation;

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn mul(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b)
    }

    fn inv(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }

    fn label(&self, a: &Permutation) -> String {
        a.to_string()
    }
}

/// Square matrices over 𝔽_q (q prime) under matrix multiplication, stored
/// row-major with entries already reduced mod q.
#[derive(Debug, Clone)]
pub struct MatOps {
    q: u64,
    dim: usize,
}

impl MatOps {
    pub fn new(q: u64, dim: usize) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::InvalidParameter(format!(
                "matrix groups need a prime field size, got {q}"
            )));
        }
        if q >= 1 << 31 {
            return Err(Error::InvalidParameter(format!("field size {q} too large")));
        }
        if dim == 0 {
            return Err(Error::InvalidParameter("matrix dimension must be positive".into()));
        }
        Ok(MatOps { q, dim })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces a row-major integer list into an element, checking shape.
    pub fn element_from_entries(&self, entries: &[i64]) -> Result<Vec<u64>> {
        if entries.len() != self.dim * self.dim {
            return Err(Error::InvalidParameter(format!(
                "expected {}×{} = {} entries, got {}",
                self.dim,
                self.dim,
                self.dim * self.dim,
                entries.len()
            )));
        }
        Ok(entries.iter().map(|&e| e.rem_euclid(self.q as i64) as u64).collect())
    }

    fn det_is_nonzero(&self, m: &[u64]) -> bool {
        // Row-reduce a copy; invertible iff every column gets a pivot.
        let d = self.dim;
        let mut a = m.to_vec();
        for col in 0..d {
            let pivot = (col..d).find(|&r| a[r * d + col] % self.q != 0);
            let Some(pivot) = pivot else { return false };
            if pivot != col {
                for j in 0..d {
                    a.swap(pivot * d + j, col * d + j);
                }
            }
            let inv = crate::arith::modinv(a[col * d + col], self.q).expect("pivot invertible");
            for j in 0..d {
                a[col * d + j] = a[col * d + j] * inv % self.q;
            }
            for r in 0..d {
                if r != col && a[r * d + col] != 0 {
                    let factor = a[r * d + col];
                    for j in 0..d {
                        let sub = factor * a[col * d + j] % self.q;
                        a[r * d + j] = (a[r * d + j] + self.q - sub) % self.q;
                    }
                }
            }
        }
        true
    }

    /// Validates that the entries form an invertible matrix.
    pub fn validate_invertible(&self, m: &[u64]) -> Result<()> {
        if self.det_is_nonzero(m) {
            Ok(())
        } else {
            Err(Error::InvalidParameter("matrix generator is not invertible".into()))
        }
    }
}

impl ElementOps for MatOps {
    type Elem = Vec<u64>;

    fn identity(&self) -> Vec<u64> {
        let d = self.dim;
        let mut m = vec![0; d * d];
        for i in 0..d {
            m[i * d + i] = 1;
        }
        m
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let d = self.dim;
        let mut c = vec![0u64; d * d];
        for i in 0..d {
            for k in 0..d {
                let aik = a[i * d + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..d {
                    c[i * d + j] = (c[i * d + j] + aik * b[k * d + j]) % self.q;
                }
            }
        }
        c
    }

    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        // Gauss–Jordan on [A | I].
        let d = self.dim;
        let mut left = a.clone();
        let mut right = self.identity();
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| left[r * d + col] != 0)
                .expect("group elements are invertible");
            if pivot != col {
                for j in 0..d {
                    left.swap(pivot * d + j, col * d + j);
                    right.swap(pivot * d + j, col * d + j);
                }
            }
            let inv = crate::arith::modinv(left[col * d + col], self.q).expect("prime field");
            for j in 0..d {
                left[col * d + j] = left[col * d + j] * inv % self.q;
                right[col * d + j] = right[col * d + j] * inv % self.q;
            }
            for r in 0..d {
                if r != col && left[r * d + col] != 0 {
                    let factor = left[r * d + col];
                    for j in 0..d {
                        let sub_l = factor * left[col * d + j] % self.q;
                        left[r * d + j] = (left[r * d + j] + self.q - sub_l) % self.q;
                        let sub_r = factor * right[col * d + j] % self.q;
                        right[r * d + j] = (right[r * d + j] + self.q - sub_r) % self.q;
                    }
                }
            }
        }
        right
    }

    fn label(&self, a: &Vec<u64>) -> String {
        let d = self.dim;
        let rows: Vec<String> = (0..d)
            .map(|i| {
                let row: Vec<String> = (0..d).map(|j| a[i * d + j].to_string()).collect();
                format!("[{}]", row.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Direct product of two element domains, componentwise.
#[derive(Debug, Clone)]
pub struct PairOps<A: ElementOps, B: ElementOps> {
    pub first: A,
    pub second: B,
}

impl<A: ElementOps, B: ElementOps> PairOps<A, B> {
    pub fn new(first: A, second: B) -> Self {
        PairOps { first, second }
    }
}

impl<A: ElementOps, B: ElementOps> ElementOps for PairOps<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn identity(&self) -> Self::Elem {
        (self.first.identity(), self.second.identity())
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.first.mul(&a.0, &b.0), self.second.mul(&a.1, &b.1))
    }

    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        (self.first.inv(&a.0), self.second.inv(&a.1))
    }

    fn label(&self, a: &Self::Elem) -> String {
        format!("({},{})", self.first.label(&a.0), self.second.label(&a.1))
    }
}

/// Tuples added componentwise modulo fixed moduli (finite abelian groups in
/// invariant-factor form).
#[derive(Debug, Clone)]
pub struct ModAddOps {
    moduli: Vec<u64>,
}

impl ModAddOps {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.iter().any(|&m| m == 0) {
            return Err(Error::InvalidParameter("moduli must be positive".into()));
        }
        Ok(ModAddOps { moduli })
    }
}

impl ElementOps for ModAddOps {
    type Elem = Vec<u64>;

    fn identity(&self) -> Vec<u64> {
        vec![0; self.moduli.len()]
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).zip(&self.moduli).map(|((x, y), m)| (x + y) % m).collect()
    }

    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(&self.moduli).map(|(x, m)| (m - x) % m).collect()
    }

    fn label(&self, a: &Vec<u64>) -> String {
        let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

fn cycles(degree: usize, spec: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(degree, spec).expect("builder cycles are valid")
}

/// Alternating group on n points (n ≥ 1).
pub fn alternating(n: usize, cap: u64) -> Result<Group> {
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycles(n, &[&[1, 2, 3]]));
    }
    if n >= 4 {
        let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
        gens.push(cycles(n, &[&long]));
    }
    Ok(Group::from_enumerated(format!("A{n}"), generate(PermOps::new(n), &gens, cap)?))
}

/// Symmetric group on n points (n ≥ 1).
pub fn symmetric(n: usize, cap: u64) -> Result<Group> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycles(n, &[&[1, 2]]));
    }
    if n >= 3 {
        let long: Vec<usize> = (1..=n).collect();
        gens.push(cycles(n, &[&long]));
    }
    Ok(Group::from_enumerated(format!("S{n}"), generate(PermOps::new(n), &gens, cap)?))
}

/// The alternating group A₅ on 5 points (order 60).
pub fn a5() -> Group {
    alternating(5, DEFAULT_GROUP_CAP).expect("A5 has 60 elements")
}

/// The symmetric group S₅ on 5 points (order 120).
pub fn s5() -> Group {
    symmetric(5, DEFAULT_GROUP_CAP).expect("S5 has 120 elements")
}

/// A₅ × A₅ as permutations of 10 points (order 3600).
pub fn a5xa5() -> Group {
    let gens = vec![
        cycles(10, &[&[1, 2, 3]]),
        cycles(10, &[&[1, 2, 3, 4, 5]]),
        cycles(10, &[&[6, 7, 8]]),
        cycles(10, &[&[6, 7, 8, 9, 10]]),
    ];
    Group::from_enumerated(
        "A5xA5",
        generate(PermOps::new(10), &gens, DEFAULT_GROUP_CAP).expect("A5×A5 has 3600 elements"),
    )
}

/// SL₂ over 𝔽_q, generated by the standard transvection and rotation.
pub fn sl2(q: u64, cap: u64) -> Result<Group> {
    let ops = MatOps::new(q, 2)?;
    let s = ops.element_from_entries(&[1, 1, 0, 1])?;
    let t = ops.element_from_entries(&[0, -1, 1, 0])?;
    Ok(Group::from_enumerated(format!("SL2({q})"), generate(ops, &[s, t], cap)?))
}

/// The subgroup of SL₂(5)² generated by the diagonal together with (I, −I):
/// the full preimage of the diagonal A₅ ≤ A₅² (order 240).
pub fn subdirect_sl25(cap: u64) -> Result<Group> {
    let ops = PairOps::new(MatOps::new(5, 2)?, MatOps::new(5, 2)?);
    let s = ops.first.element_from_entries(&[1, 1, 0, 1])?;
    let t = ops.first.element_from_entries(&[0, -1, 1, 0])?;
    let id = ops.first.identity();
    let neg = ops.first.element_from_entries(&[-1, 0, 0, -1])?;
    let gens = vec![(s.clone(), s), (t.clone(), t), (id, neg)];
    Ok(Group::from_enumerated("subdirect-SL2(5)", generate(ops, &gens, cap)?))
}

/// Cyclic group of order n (additive).
pub fn cyclic(n: u64) -> Group {
    mod_add(&[n]).expect("positive modulus")
}

/// Direct sum ℤ/m₁ ⊕ … ⊕ ℤ/m_k (additive), generated by the unit vectors.
pub fn mod_add(moduli: &[u64]) -> Result<Group> {
    let ops = ModAddOps::new(moduli.to_vec())?;
    let mut gens = Vec::new();
    for (i, &m) in moduli.iter().enumerate() {
        if m > 1 {
            let mut e = vec![0; moduli.len()];
            e[i] = 1;
            gens.push(e);
        }
    }
    let name = format!(
        "Z{}",
        moduli.iter().map(|m| format!("/{m}")).collect::<Vec<_>>().join("×Z")
    );
    let size: u64 = moduli.iter().product();
    Ok(Group::from_enumerated(name, generate(ops, &gens, size.max(1))?))
}

/// Direct product of two already-built groups, indexed arithmetically.
pub fn direct_product(a: &Group, b: &Group) -> Group {
    let (na, nb) = (a.size() as u64, b.size() as u64);
    let size = na.checked_mul(nb).and_then(|s| u32::try_from(s).ok()).expect("product fits u32");
    let idx = move |x: u32, y: u32| x * nb as u32 + y;
    let identity = idx(a.identity(), b.identity());
    let mut gens = Vec::new();
    for &ga in a.gens() {
        let g = idx(ga, b.identity());
        if !gens.contains(&g) {
            gens.push(g);
        }
    }
    for &gb in b.gens() {
        let g = idx(a.identity(), gb);
        if !gens.contains(&g) {
            gens.push(g);
        }
    }
    let inv: Vec<u32> = (0..size)
        .map(|i| idx(a.inv(i / nb as u32), b.inv(i % nb as u32)))
        .collect();
    let (am, bm) = (a.clone(), b.clone());
    let mul = move |x: u32, y: u32| {
        let w = nb as u32;
        idx(am.mul(x / w, y / w), bm.mul(x % w, y % w))
    };
    let (al, bl) = (a.clone(), b.clone());
    let label = move |i: u32| {
        let w = nb as u32;
        format!("({},{})", al.label(i / w), bl.label(i % w))
    };
    Group::from_closures(
        format!("{}×{}", a.name(), b.name()),
        size,
        identity,
        gens,
        mul,
        inv,
        label,
    )
}

/// Permutation group from cycle-notation generator strings; the degree is
/// inferred from the largest point any generator mentions.
pub fn perm_group(gens: &[String], cap: u64) -> Result<Group> {
    let mut degree = 1usize;
    for text in gens {
        for token in text.split(|c: char| !c.is_ascii_digit()).filter(|t| !t.is_empty()) {
            let point: usize = token.parse().map_err(|_| {
                Error::InvalidParameter(format!("cycle {text:?}: bad point {token:?}"))
            })?;
            if point == 0 {
                return Err(Error::InvalidParameter(format!("cycle {text:?}: points are 1-based")));
            }
            degree = degree.max(point);
        }
    }
    let parsed = gens
        .iter()
        .map(|text| Permutation::parse_cycles(text, degree))
        .collect::<Result<Vec<_>>>()?;
    let name = format!("perm⟨{}⟩", gens.join("; "));
    Ok(Group::from_enumerated(name, generate(PermOps::new(degree), &parsed, cap)?))
}

/// Matrix group over 𝔽_q from row-major integer generator entries; the
/// dimension is inferred and every generator must be square and invertible.
pub fn mat_group(q: u64, gens: &[Vec<i64>], cap: u64) -> Result<Group> {
    let first =
        gens.first().ok_or_else(|| Error::InvalidParameter("mat: no generators".into()))?;
    let entries = first.len();
    let dim = (1..=entries)
        .find(|d| d * d == entries)
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "mat: generator has {entries} entries, which is not a square"
            ))
        })?;
    let ops = MatOps::new(q, dim)?;
    let mut mats = Vec::new();
    for g in gens {
        if g.len() != entries {
            return Err(Error::InvalidParameter(format!(
                "mat: generators disagree in size ({} vs {entries})",
                g.len()
            )));
        }
        let m = ops.element_from_entries(g)?;
        ops.validate_invertible(&m)?;
        mats.push(m);
    }
    let name = format!("mat({q})[{}×{}, {} gens]", dim, dim, mats.len());
    Ok(Group::from_enumerated(name, generate(ops, &mats, cap)?))
}

/// Materializes a parsed [`GroupSpec`] into an enumerated group.
pub fn build_group(spec: &GroupSpec, cap: u64) -> Result<Group> {
    match spec {
        GroupSpec::A5 => Ok(a5()),
        GroupSpec::S5 => Ok(s5()),
        GroupSpec::Sl2 { q } => sl2(*q, cap),
        GroupSpec::SubdirectSl25 => subdirect_sl25(cap),
        GroupSpec::Gn { p, q, n } => Ok(crate::constructions::gn_group(*p, *q, *n, cap)?.group),
        GroupSpec::Perm { gens } => perm_group(gens, cap),
        GroupSpec::Mat { q, gens } => mat_group(*q, gens, cap),
    }
}
