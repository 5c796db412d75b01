//! ℤ/mℤ-linear functionals on M_n.
//!
//! A functional is a finite coefficient table against the b-coordinates of
//! the values of x ∈ M_n. The module provides: evaluation, support and null
//! sets; the A_p-invariant functional supported on a p-element block orbit
//! inside a prescribed coordinate subspace W; exact invariance checks under
//! A_p and W^⊥ (and an explicit witness that invariance does **not** extend
//! to all of G_n); extension of an invariant functional to a homomorphism on
//! M_n⋊H; and the complementary impossibility result — at small parameters,
//! every G_n-invariant functional vanishes on the distinguished element z_n.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::arith::{is_prime, modinv, rng_for};
use crate::check::Check;
use crate::constructions::{GnElem, MnContext, MnElement, Params};
use crate::error::{Error, Result};
use crate::linalg::{ap_generators, ap_invariant_closure, find_orbit_p_vector, inner, FqVector,
    Subspace};
use crate::zmod::{nullspace_mod_prime, submodule_contains};

/// A finitely supported ℤ/m-linear functional on M_n:
/// `φ(x) = Σ c_{v,i}·⟨x(v)⟩_i`, where `⟨·⟩_i` is the i-th b-coordinate.
/// Only nonzero coefficients are stored; `i` ranges over `1..=q−1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functional {
    m: u64,
    q: usize,
    coeffs: BTreeMap<(FqVector, usize), u64>,
}

impl Functional {
    pub fn zero(m: u64, q: usize) -> Functional {
        Functional { m, q, coeffs: BTreeMap::new() }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Adds `c` to the coefficient at `(v, i)`, validating the slot.
    pub fn add_term(&mut self, v: FqVector, i: usize, c: u64) -> Result<()> {
        if v.is_zero() {
            return Err(Error::InvalidParameter(
                "functional coefficients sit at nonzero vectors".into(),
            ));
        }
        if i == 0 || i >= self.q {
            return Err(Error::InvalidParameter(format!(
                "coordinate index {i} outside 1..={}",
                self.q - 1
            )));
        }
        let m = self.m.max(1);
        let key = (v, i);
        let merged = (self.coeffs.get(&key).copied().unwrap_or(0) + c % m) % m;
        if merged == 0 {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, merged);
        }
        Ok(())
    }

    /// The coefficient table as sorted `(v, i, c)` triples.
    pub fn terms(&self) -> Vec<(FqVector, usize, u64)> {
        self.coeffs.iter().map(|((v, i), c)| (v.clone(), *i, *c)).collect()
    }

    pub fn from_terms(
        m: u64,
        q: usize,
        terms: impl IntoIterator<Item = (FqVector, usize, u64)>,
    ) -> Result<Functional> {
        let mut f = Functional::zero(m, q);
        for (v, i, c) in terms {
            f.add_term(v, i, c)?;
        }
        Ok(f)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The vectors carrying at least one nonzero coefficient.
    pub fn support(&self) -> BTreeSet<FqVector> {
        self.coeffs.keys().map(|(v, _)| v.clone()).collect()
    }

    pub fn scale(&self, c: u64) -> Functional {
        let c = c % self.m.max(1);
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(k, &old)| {
                let scaled = old * c % self.m.max(1);
                (scaled != 0).then(|| (k.clone(), scaled))
            })
            .collect();
        Functional { m: self.m, q: self.q, coeffs }
    }

    pub fn add(&self, other: &Functional) -> Result<Functional> {
        if self.m != other.m || self.q != other.q {
            return Err(Error::InvalidParameter(
                "cannot add functionals over different moduli".into(),
            ));
        }
        let mut out = self.clone();
        for ((v, i), c) in &other.coeffs {
            out.add_term(v.clone(), *i, *c)?;
        }
        Ok(out)
    }

    /// φ(x), computed against the context that owns B and V_n.
    pub fn evaluate(&self, ctx: &MnContext, x: &MnElement) -> u64 {
        debug_assert_eq!(self.m, ctx.b().m());
        debug_assert_eq!(self.q, ctx.b().q());
        let mut acc: u64 = 0;
        for ((v, i), c) in &self.coeffs {
            let coords = ctx.b().coordinates(&ctx.value_at(x, v));
            acc = (acc + c * coords[i - 1]) % self.m.max(1);
        }
        acc
    }
}

impl std::fmt::Display for Functional {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|((v, i), c)| format!("{c}·⟨x{v}⟩_{i}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// φ_v: the first b-coordinate of the value at v.
pub fn phi_v(ctx: &MnContext, v: &FqVector) -> Result<Functional> {
    if v.is_zero() || ctx.vn().index_of(v).is_none() {
        return Err(Error::InvalidParameter(format!(
            "φ_v requires a nonzero vector of V_n, got {v}"
        )));
    }
    let mut f = Functional::zero(ctx.b().m(), ctx.b().q());
    f.add_term(v.clone(), 1, 1)?;
    Ok(f)
}

/// The null set of x: the zero vector together with every nonzero v where
/// x(v) = 0. For a pure table the set is co-finite in V_n (all but the
/// finitely many corrections), so it is stored by complement; a nonzero
/// twisted-constant part forces an explicit (small) listing instead, since
/// f-shifts of a nonzero element never vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NullSet {
    Explicit(BTreeSet<FqVector>),
    CoFinite { exceptions: BTreeSet<FqVector> },
}

impl NullSet {
    pub fn contains(&self, v: &FqVector) -> bool {
        match self {
            NullSet::Explicit(set) => set.contains(v),
            NullSet::CoFinite { exceptions } => !exceptions.contains(v),
        }
    }
}

pub fn null_set(ctx: &MnContext, x: &MnElement) -> NullSet {
    match x.base() {
        None => NullSet::CoFinite { exceptions: x.deltas().keys().cloned().collect() },
        Some(_) => {
            let mut set = BTreeSet::new();
            set.insert(FqVector::zero(ctx.vn().q(), ctx.vn().shape().dim()));
            // The twisted-constant part is everywhere nonzero, so zeros can
            // only occur where a correction cancels it.
            for k in x.deltas().keys() {
                if ctx.value_at(x, k).is_zero() {
                    set.insert(k.clone());
                }
            }
            NullSet::Explicit(set)
        }
    }
}

/// Verifies the support criterion in both directions: v carries a
/// coefficient of φ exactly when some point mass at v is detected.
pub fn support_check(ctx: &MnContext, phi: &Functional) -> Check {
    let declared = phi.support();
    let q = ctx.b().q();
    for i in ctx.vn().nonzero_indices() {
        let v = ctx.vn().element(i);
        let mut detected = false;
        for j in 1..q {
            let mass = ctx
                .delta(v, ctx.b().basis_element(j).expect("basis index in range"))
                .expect("nonzero vector of V_n");
            if phi.evaluate(ctx, &mass) != 0 {
                detected = true;
                break;
            }
        }
        if detected != declared.contains(v) {
            return Check::fail(
                "support-criterion",
                format!("support mismatch at {v}: detected {detected}, declared {}", !detected),
            )
            .with_witness(v.to_string());
        }
    }
    Check::pass(
        "support-criterion",
        format!(
            "declared support of size {} matches point-mass detection over all {} nonzero vectors",
            declared.len(),
            ctx.vn().size() - 1
        ),
    )
}

/// The invariant functional, its p-element orbit support, and the spaces
/// W = U^⊥ and U (the A_p-invariant closure of the defining vectors).
#[derive(Debug)]
pub struct InvariantBundle {
    pub functional: Functional,
    pub orbit: Vec<FqVector>,
    pub u_space: Subspace,
    pub w_space: Subspace,
    pub checks: Vec<Check>,
}

/// Builds φ = p⁻¹ Σ_{v ∈ O} φ_v, where O is the p-element A_p-orbit of a
/// block vector inside W = (A_p-closure of the defining vectors)^⊥.
///
/// Degenerate cases (m = 1, or defining vectors whose block components span
/// all of 𝔽_q^n) are reported as `Error::Degenerate`: the hypothesis of the
/// construction is not met.
pub fn invariant_functional(ctx: &MnContext, defining: &[FqVector]) -> Result<InvariantBundle> {
    let params = ctx.params();
    if params.m == 1 {
        return Err(Error::Degenerate(
            "m = 1: the coefficient module is trivial and every functional is zero".into(),
        ));
    }
    let shape = ctx.vn().shape();
    let (u_space, w_space) =
        ap_invariant_closure(shape, defining, ctx.vn().subspace())?;
    let w = find_orbit_p_vector(shape, ctx.vn().q(), defining)?;
    let mut checks = Vec::new();
    checks.push(Check::pass(
        "invariant-orbit-found",
        format!("block vector with a free distinguished position: {w}"),
    ));

    // The A_p-orbit, by closure under the generators.
    let mut orbit: BTreeSet<FqVector> = BTreeSet::new();
    let mut queue = vec![w.clone()];
    while let Some(v) = queue.pop() {
        if orbit.insert(v.clone()) {
            for g in ap_generators(shape.p) {
                queue.push(shape.apply_perm(&v, &g));
            }
        }
    }
    let orbit: Vec<FqVector> = orbit.into_iter().collect();
    checks.push(Check::expect(
        "orbit-size-p",
        orbit.len() == shape.p,
        format!("A_p-orbit of the support vector has {} elements", orbit.len()),
    ));
    let all_in_w = orbit.iter().all(|v| w_space.contains(v));
    let all_perp = orbit
        .iter()
        .all(|v| defining.iter().all(|d| inner(v, d).map(|c| c == 0).unwrap_or(false)));
    checks.push(Check::expect(
        "orbit-inside-w",
        all_in_w && all_perp,
        "every orbit vector lies in W and is orthogonal to each defining vector",
    ));

    let mut raw = Functional::zero(params.m, ctx.b().q());
    for v in &orbit {
        raw = raw.add(&phi_v(ctx, v)?)?;
    }
    let z = ctx.z();
    let raw_at_z = raw.evaluate(ctx, &z);
    let p_inv = modinv(params.p % params.m, params.m)
        .expect("p is a unit modulo m by the parameter contract");
    let functional = raw.scale(p_inv);
    let phi_at_z = functional.evaluate(ctx, &z);
    checks.push(Check::expect(
        "normalization-phi-z",
        raw_at_z == params.p % params.m && phi_at_z == 1 % params.m,
        format!("Σφ_v(z) = {raw_at_z} (expected p mod m) and p⁻¹Σφ_v(z) = {phi_at_z}"),
    ));
    let support = functional.support();
    checks.push(Check::expect(
        "support-is-orbit",
        support.len() == shape.p && orbit.iter().all(|v| support.contains(v)),
        format!("support has {} vectors and equals the orbit", support.len()),
    ));
    Ok(InvariantBundle { functional, orbit, u_space, w_space, checks })
}

/// Exact invariance of φ: under every element of A_p and under translations
/// by W^⊥ = U, verified on the full point-mass basis of M_n. Also exhibits
/// a witness that φ is not invariant under all of V_n (hence not under G_n).
pub fn check_invariance(ctx: &MnContext, bundle: &InvariantBundle) -> Result<Vec<Check>> {
    let params = ctx.params();
    let phi = &bundle.functional;
    let shape = ctx.vn().shape();
    let q = ctx.b().q();
    let mut checks = Vec::new();

    // Basis of point masses, reused below.
    let mut basis: Vec<MnElement> = Vec::new();
    for i in ctx.vn().nonzero_indices() {
        let v = ctx.vn().element(i);
        for j in 1..q {
            basis.push(ctx.delta(v, ctx.b().basis_element(j)?)?);
        }
    }
    let base_values: Vec<u64> = basis.iter().map(|x| phi.evaluate(ctx, x)).collect();

    // (a) invariance under every σ ∈ A_p.
    let sigmas = crate::perm::alternating_perms(shape.p, crate::perm::DEFAULT_PERM_CAP)?;
    let mut ok = true;
    let mut witness = None;
    for sigma in &sigmas {
        for (x, &val) in basis.iter().zip(&base_values) {
            if phi.evaluate(ctx, &ctx.act_sigma(x, sigma)) != val {
                ok = false;
                witness.get_or_insert(format!("σ = {sigma}"));
            }
        }
    }
    let mut check = Check::expect(
        "ap-invariance-exact",
        ok,
        format!(
            "φ(x^σ) = φ(x) for all {} permutations on all {} basis point masses",
            sigmas.len(),
            basis.len()
        ),
    );
    if let Some(w) = witness {
        check = check.with_witness(w);
    }
    checks.push(check);

    // (b) invariance under translations from U = W^⊥.
    let mut ok = true;
    let mut witness = None;
    for u in bundle.u_space.basis() {
        for (x, &val) in basis.iter().zip(&base_values) {
            if phi.evaluate(ctx, &ctx.act_v(x, u)) != val {
                ok = false;
                witness.get_or_insert(format!("u = {u}"));
            }
        }
    }
    let mut check = Check::expect(
        "wperp-invariance-exact",
        ok,
        format!(
            "φ(x^u) = φ(x) for a basis of U = W^⊥ (dim {}) on all basis point masses",
            bundle.u_space.dim()
        ),
    );
    if let Some(w) = witness {
        check = check.with_witness(w);
    }
    checks.push(check);

    // (c) the invariance is genuinely partial: some translation moves φ.
    let mut witness = None;
    'outer: for i in ctx.vn().nonzero_indices() {
        let v0 = ctx.vn().element(i);
        for (x, &val) in basis.iter().zip(&base_values) {
            if phi.evaluate(ctx, &ctx.act_v(x, v0)) != val {
                witness = Some(format!("v₀ = {v0}"));
                break 'outer;
            }
        }
    }
    checks.push(match witness {
        Some(w) => Check::pass(
            "not-gn-invariant",
            "φ is H-invariant only: a translation from V_n∖U changes φ, so no claim of \
             G_n-invariance is made",
        )
        .with_witness(w),
        None => Check::fail(
            "not-gn-invariant",
            format!(
                "expected a non-invariance witness for m = {} ≥ 2 but found none",
                params.m
            ),
        ),
    });
    Ok(checks)
}

/// Extends the invariant functional to ψ̃(x·h) := φ(x) on M_n⋊H, where
/// H = U⋊A_p, and verifies the homomorphism law across the semidirect twist
/// on sampled pairs.
pub fn extend_invariant_functional(
    ctx: &MnContext,
    bundle: &InvariantBundle,
    samples: u64,
    seed: u64,
) -> Result<Vec<Check>> {
    let phi = &bundle.functional;
    let shape = ctx.vn().shape();
    let q = ctx.b().q();
    let mut checks = Vec::new();

    // Generators of H: a basis of U as translations, plus the A_p generators.
    let mut h_gens: Vec<GnElem> = bundle.u_space.basis().iter().map(|u| ctx.vector_elem(u)).collect();
    for s in ap_generators(shape.p) {
        h_gens.push(ctx.perm_elem(s));
    }

    // Precondition: exact φ-invariance under every generator of H, on the
    // full point-mass basis; this is what makes ψ̃ well-defined.
    let mut ok = true;
    for i in ctx.vn().nonzero_indices() {
        let v = ctx.vn().element(i);
        for j in 1..q {
            let x = ctx.delta(v, ctx.b().basis_element(j)?)?;
            let val = phi.evaluate(ctx, &x);
            for h in &h_gens {
                ok &= phi.evaluate(ctx, &ctx.act_g(&x, h)) == val;
            }
        }
    }
    checks.push(Check::expect(
        "extension-precondition",
        ok,
        format!("φ is invariant under all {} generators of H = U⋊A_p", h_gens.len()),
    ));

    // Homomorphism law on samples: ψ̃((x₁h₁)(x₂h₂)) = ψ̃(x₁h₁) + ψ̃(x₂h₂),
    // where the product's M_n-part is x₁ + x₂^{h₁⁻¹}.
    let mut rng = rng_for(seed, "duality-extension");
    let random_h = |rng: &mut rand_chacha::ChaCha8Rng| -> GnElem {
        let mut h = GnElem::identity(ctx.vn().q(), shape);
        for _ in 0..rng.gen_range(1..=3usize) {
            let g = &h_gens[rng.gen_range(0..h_gens.len())];
            h = h.mul(g, shape);
        }
        h
    };
    let mut ok = true;
    let mut witness = None;
    for _ in 0..samples {
        let x1 = ctx.random_element(&mut rng);
        let x2 = ctx.random_element(&mut rng);
        // Only h₁ enters the product's M_n-part; ψ̃ discards the H-part.
        let h1 = random_h(&mut rng);
        let product_m_part = ctx.add(&x1, &ctx.act_g(&x2, &h1.inv(shape)));
        let lhs = phi.evaluate(ctx, &product_m_part);
        let rhs = (phi.evaluate(ctx, &x1) + phi.evaluate(ctx, &x2)) % phi.m();
        if lhs != rhs {
            ok = false;
            witness.get_or_insert(format!("h₁ = {}·{}", h1.v, h1.sigma));
        }
    }
    let mut check = Check::expect(
        "extension-homomorphism",
        ok,
        format!("ψ̃((x₁h₁)(x₂h₂)) = ψ̃(x₁h₁) + ψ̃(x₂h₂) on {samples} sampled pairs"),
    );
    if let Some(w) = witness {
        check = check.with_witness(w);
    }
    checks.push(check);
    Ok(checks)
}

/// The impossibility side: over the point-mass basis, every coefficient
/// vector of a G_n-invariant functional must vanish on z_n. Concretely,
/// z_n lies in the ℤ/m-span of {x^g − x : x basis, g generators of G_n};
/// when m is prime the statement is cross-checked through an independent
/// nullspace computation.
pub fn no_global_invariant_functional(ctx: &MnContext, cap_solve: u64) -> Result<Vec<Check>> {
    let params = ctx.params();
    let q = ctx.b().q();
    let n_vectors = (ctx.vn().size() - 1) as usize;
    let ncols = n_vectors * (q - 1);
    if ncols as u64 > cap_solve {
        return Ok(vec![Check::skipped(
            "z-in-coboundary-span",
            format!("{ncols} coefficients exceed the solver cap {cap_solve}"),
        )]);
    }
    let shape = ctx.vn().shape();
    let slot = |v_idx: u32, j: usize| (v_idx as usize - 1) * (q - 1) + (j - 1);

    // Coordinates of y ∈ M_n over the point-mass basis.
    let coord_row = |y: &MnElement| -> Vec<u64> {
        let mut row = vec![0u64; ncols];
        let table = ctx.materialize(y);
        for (k, val) in table.deltas() {
            let v_idx = ctx.vn().index_of(k).expect("tables index into V_n");
            for (j, c) in ctx.b().coordinates(val).iter().enumerate() {
                row[slot(v_idx, j + 1)] = *c;
            }
        }
        row
    };

    // Generators of G_n and the difference rows x^g − x.
    let mut gens: Vec<GnElem> =
        ctx.vn().subspace().basis().iter().map(|v| ctx.vector_elem(v)).collect();
    for s in ap_generators(shape.p) {
        gens.push(ctx.perm_elem(s));
    }
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for i in ctx.vn().nonzero_indices() {
        let v = ctx.vn().element(i);
        for j in 1..q {
            let x = ctx.delta(v, ctx.b().basis_element(j)?)?;
            for g in &gens {
                let diff = ctx.sub(&ctx.act_g(&x, g), &x);
                rows.push(coord_row(&diff));
            }
        }
    }
    let target = coord_row(&ctx.z());

    let mut checks = Vec::new();
    let contained = submodule_contains(params.m, &rows, &target);
    checks.push(Check::expect(
        "z-in-coboundary-span",
        contained,
        format!(
            "z_n lies in the ℤ/{}-span of the {} difference rows on {ncols} coefficients, \
             so every G_n-invariant functional vanishes on z_n",
            params.m,
            rows.len()
        ),
    ));

    if is_prime(params.m) {
        let nullspace = nullspace_mod_prime(params.m, &rows, ncols);
        let all_kill = nullspace.iter().all(|c| {
            c.iter()
                .zip(&target)
                .fold(0u64, |acc, (&a, &b)| (acc + a * b % params.m) % params.m)
                == 0
        });
        checks.push(Check::expect(
            "nullspace-kills-z",
            all_kill,
            format!(
                "all {} basis invariant functionals vanish on z_n (independent 𝔽_{} route)",
                nullspace.len(),
                params.m
            ),
        ));
        checks.push(Check::expect(
            "routes-agree",
            contained == all_kill,
            "span membership and nullspace annihilation answer identically",
        ));
    } else {
        checks.push(Check::skipped(
            "nullspace-kills-z",
            format!("m = {} is not prime; the field-based cross-check does not apply", params.m),
        ));
    }
    Ok(checks)
}

/// Full duality battery: construction, support criterion, invariance,
/// extension, and the no-global-functional solve.
pub fn certify_duality(
    params: Params,
    defining: &[FqVector],
    cap_enum: u64,
    cap_solve: u64,
    samples: u64,
    seed: u64,
) -> Result<Vec<Check>> {
    let ctx = MnContext::new(params, cap_enum)?;
    let mut checks = Vec::new();
    match invariant_functional(&ctx, defining) {
        Ok(bundle) => {
            checks.extend(bundle.checks.iter().cloned());
            checks.push(support_check(&ctx, &bundle.functional));
            checks.extend(check_invariance(&ctx, &bundle)?);
            checks.extend(extend_invariant_functional(&ctx, &bundle, samples, seed)?);
        }
        Err(Error::Degenerate(msg)) => {
            checks.push(Check::not_applicable(
                "invariant-orbit-found",
                format!("hypothesis not met: {msg}"),
            ));
        }
        Err(e) => return Err(e),
    }
    checks.extend(no_global_invariant_functional(&ctx, cap_solve)?);
    Ok(checks)
}
