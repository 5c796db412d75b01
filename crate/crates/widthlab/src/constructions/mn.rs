//! M_n = B^{V_n∖{0}}: B-valued functions on the nonzero vectors of V_n,
//! carrying the twisted right G_n-action
//!
//!   x^σ(w) = x(w^{σ⁻¹}),   x^v(w) = f^{⟨v,w⟩}(x(w)),   x^{v·σ} := (x^v)^σ,
//!
//! together with the certificate that every pointwise generator of M_n is a
//! single commutator with an element of V_n.
//!
//! M_n is astronomically large (|B|^{|V_n|−1}), so elements are kept
//! symbolic: an optional twisted-constant term plus finitely many pointwise
//! corrections. All equality tests are semantic, by evaluating over the
//! enumerated domain.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith::{modinv, rng_for};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::linalg::{inner, FqVector};
use crate::perm::Permutation;

use super::bmodule::{BElement, BModule};
use super::gn::{GnElem, VnSpace};
use super::Params;

/// An element of M_n. The function it denotes is
/// `w ↦ f^{⟨twist,w⟩}(base) + deltas[w]`, with absent parts read as zero.
#[derive(Debug, Clone, Default)]
pub struct MnElement {
    base: Option<(BElement, FqVector)>,
    deltas: BTreeMap<FqVector, BElement>,
}

impl MnElement {
    pub fn base(&self) -> Option<&(BElement, FqVector)> {
        self.base.as_ref()
    }

    pub fn deltas(&self) -> &BTreeMap<FqVector, BElement> {
        &self.deltas
    }
}

/// Evaluation context: the coefficient module B and the enumerated domain
/// V_n∖{0}. All M_n arithmetic goes through the context.
pub struct MnContext {
    params: Params,
    b: BModule,
    vn: VnSpace,
}

impl MnContext {
    pub fn new(params: Params, cap: u64) -> Result<MnContext> {
        let b = BModule::new(params.q, params.m)?;
        let vn = VnSpace::build(params.p, params.q, params.n, cap)?;
        Ok(MnContext { params, b, vn })
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn b(&self) -> &BModule {
        &self.b
    }

    pub fn vn(&self) -> &VnSpace {
        &self.vn
    }

    pub fn zero(&self) -> MnElement {
        MnElement::default()
    }

    /// The constant function w ↦ b.
    pub fn constant(&self, b: BElement) -> MnElement {
        if b.is_zero() {
            return self.zero();
        }
        let twist = FqVector::zero(self.vn.q(), self.vn.shape().dim());
        MnElement { base: Some((b, twist)), deltas: BTreeMap::new() }
    }

    /// z_n: the constant function with value b₁, the distinguished element
    /// whose survival under invariant functionals is at stake.
    pub fn z(&self) -> MnElement {
        self.constant(self.b.basis_element(1).expect("b₁ exists for q ≥ 2"))
    }

    /// x_{v→b}: value b at the nonzero vector v, zero elsewhere.
    pub fn delta(&self, v: &FqVector, b: BElement) -> Result<MnElement> {
        if v.is_zero() {
            return Err(Error::InvalidParameter(
                "point mass must sit at a nonzero vector of V_n".into(),
            ));
        }
        if self.vn.index_of(v).is_none() {
            return Err(Error::InvalidParameter(format!("{v} lies outside V_n")));
        }
        let mut deltas = BTreeMap::new();
        if !b.is_zero() {
            deltas.insert(v.clone(), b);
        }
        Ok(MnElement { base: None, deltas })
    }

    /// x(w), for nonzero w ∈ V_n.
    pub fn value_at(&self, x: &MnElement, w: &FqVector) -> BElement {
        debug_assert!(!w.is_zero(), "functions in M_n are not evaluated at 0");
        let mut out = match &x.base {
            Some((b, twist)) => {
                let k = inner(twist, w).expect("twist and argument share the ambient space");
                self.b.f_pow(k as u64, b)
            }
            None => self.b.zero(),
        };
        if let Some(d) = x.deltas.get(w) {
            out = self.b.add(&out, d);
        }
        out
    }

    /// The same function re-expressed as a pure table of pointwise values.
    pub fn materialize(&self, x: &MnElement) -> MnElement {
        let mut deltas = BTreeMap::new();
        for i in self.vn.nonzero_indices() {
            let w = self.vn.element(i);
            let val = self.value_at(x, w);
            if !val.is_zero() {
                deltas.insert(w.clone(), val);
            }
        }
        MnElement { base: None, deltas }
    }

    fn merge_deltas(
        &self,
        a: &BTreeMap<FqVector, BElement>,
        b: &BTreeMap<FqVector, BElement>,
    ) -> BTreeMap<FqVector, BElement> {
        let mut out = a.clone();
        for (k, v) in b {
            let merged = match out.get(k) {
                Some(prev) => self.b.add(prev, v),
                None => v.clone(),
            };
            if merged.is_zero() {
                out.remove(k);
            } else {
                out.insert(k.clone(), merged);
            }
        }
        out
    }

    pub fn add(&self, x: &MnElement, y: &MnElement) -> MnElement {
        match (&x.base, &y.base) {
            (Some((bx, tx)), Some((by, ty))) if tx == ty => {
                let sum = self.b.add(bx, by);
                let base = if sum.is_zero() { None } else { Some((sum, tx.clone())) };
                MnElement { base, deltas: self.merge_deltas(&x.deltas, &y.deltas) }
            }
            (Some(_), Some(_)) => {
                // Incompatible twists: fall back to pointwise tables.
                let mx = self.materialize(x);
                let my = self.materialize(y);
                MnElement { base: None, deltas: self.merge_deltas(&mx.deltas, &my.deltas) }
            }
            (Some(b), None) | (None, Some(b)) => MnElement {
                base: Some(b.clone()),
                deltas: self.merge_deltas(&x.deltas, &y.deltas),
            },
            (None, None) => {
                MnElement { base: None, deltas: self.merge_deltas(&x.deltas, &y.deltas) }
            }
        }
    }

    pub fn neg(&self, x: &MnElement) -> MnElement {
        MnElement {
            base: x.base.as_ref().map(|(b, t)| (self.b.neg(b), t.clone())),
            deltas: x.deltas.iter().map(|(k, v)| (k.clone(), self.b.neg(v))).collect(),
        }
    }

    pub fn sub(&self, x: &MnElement, y: &MnElement) -> MnElement {
        self.add(x, &self.neg(y))
    }

    /// Semantic equality: pointwise over the whole domain.
    pub fn eq(&self, x: &MnElement, y: &MnElement) -> bool {
        self.vn.nonzero_indices().all(|i| {
            let w = self.vn.element(i);
            self.value_at(x, w) == self.value_at(y, w)
        })
    }

    pub fn is_zero_elem(&self, x: &MnElement) -> bool {
        self.vn.nonzero_indices().all(|i| self.value_at(x, self.vn.element(i)).is_zero())
    }

    /// x^v: w ↦ f^{⟨v,w⟩}(x(w)). The twist accumulates additively and each
    /// correction at k picks up f^{⟨v,k⟩}.
    pub fn act_v(&self, x: &MnElement, v: &FqVector) -> MnElement {
        MnElement {
            base: x.base.as_ref().map(|(b, t)| (b.clone(), t.add(v))),
            deltas: x
                .deltas
                .iter()
                .map(|(k, val)| {
                    let e = inner(v, k).expect("v and k share the ambient space");
                    (k.clone(), self.b.f_pow(e as u64, val))
                })
                .collect(),
        }
    }

    /// x^σ: w ↦ x(w^{σ⁻¹}). Corrections move k ↦ k^σ; the twist transforms
    /// the same way because ⟨t,w^{σ⁻¹}⟩ = ⟨t^σ,w⟩.
    pub fn act_sigma(&self, x: &MnElement, sigma: &Permutation) -> MnElement {
        let shape = self.vn.shape();
        MnElement {
            base: x.base.as_ref().map(|(b, t)| (b.clone(), shape.apply_perm(t, sigma))),
            deltas: x
                .deltas
                .iter()
                .map(|(k, val)| (shape.apply_perm(k, sigma), val.clone()))
                .collect(),
        }
    }

    /// x^{v·σ} := (x^v)^σ; a right action of G_n.
    pub fn act_g(&self, x: &MnElement, g: &GnElem) -> MnElement {
        self.act_sigma(&self.act_v(x, &g.v), &g.sigma)
    }

    /// [x, g] = x^g − x, the commutator inside P_n = M_n⋊G_n.
    pub fn commutator(&self, x: &MnElement, g: &GnElem) -> MnElement {
        self.sub(&self.act_g(x, g), x)
    }

    /// Embeds a plain vector v ∈ V_n as the G_n-element v·e.
    pub fn vector_elem(&self, v: &FqVector) -> GnElem {
        GnElem { v: v.clone(), sigma: Permutation::identity(self.params.p as usize) }
    }

    /// Embeds σ ∈ A_p as the G_n-element 0·σ.
    pub fn perm_elem(&self, sigma: Permutation) -> GnElem {
        GnElem { v: FqVector::zero(self.vn.q(), self.vn.shape().dim()), sigma }
    }

    /// A random element with an optional twisted-constant part and up to two
    /// pointwise corrections.
    pub fn random_element(&self, rng: &mut impl Rng) -> MnElement {
        let b_elements = self.b.enumerate(u64::MAX).expect("B is small");
        let mut x = if rng.gen_bool(0.5) {
            let b = b_elements[rng.gen_range(0..b_elements.len())].clone();
            let twist = self.random_vector(rng);
            match (b.is_zero(), ()) {
                (true, ()) => self.zero(),
                (false, ()) => MnElement { base: Some((b, twist)), deltas: BTreeMap::new() },
            }
        } else {
            self.zero()
        };
        for _ in 0..rng.gen_range(0..=2) {
            let v = self.random_nonzero_vector(rng);
            let b = b_elements[rng.gen_range(0..b_elements.len())].clone();
            if !b.is_zero() {
                x = self.add(&x, &self.delta(&v, b).expect("valid point mass"));
            }
        }
        x
    }

    pub fn random_vector(&self, rng: &mut impl Rng) -> FqVector {
        self.vn.element(rng.gen_range(0..self.vn.size())).clone()
    }

    pub fn random_nonzero_vector(&self, rng: &mut impl Rng) -> FqVector {
        self.vn.element(rng.gen_range(1..self.vn.size())).clone()
    }

    /// A uniformly random even permutation of the p block positions.
    pub fn random_even_perm(&self, rng: &mut impl Rng) -> Permutation {
        let p = self.params.p as usize;
        let mut images: Vec<usize> = (0..p).collect();
        images.shuffle(rng);
        let candidate = Permutation::from_images(images.clone()).expect("shuffle is a bijection");
        if candidate.is_even() {
            candidate
        } else {
            images.swap(0, 1);
            Permutation::from_images(images).expect("transposed shuffle is a bijection")
        }
    }
}

/// For each nonzero v ∈ V_n, a companion w with ⟨w,v⟩ = 1, found by scanning
/// a basis of V_n and rescaling. Returns the witnesses indexed like V_n,
/// plus the first v (if any) with V_n ⊆ v^⊥.
fn pairing_witnesses(ctx: &MnContext) -> (Vec<Option<FqVector>>, Option<FqVector>) {
    let vn = ctx.vn();
    let q = ctx.params.q;
    let mut witnesses: Vec<Option<FqVector>> = vec![None; vn.size() as usize];
    let mut missing = None;
    for i in vn.nonzero_indices() {
        let v = vn.element(i);
        let mut found = None;
        for e in vn.subspace().basis() {
            let c = inner(e, v).expect("basis vectors share the ambient space");
            if c != 0 {
                let cinv = modinv(c as u64, q).expect("nonzero residue mod a prime") as u32;
                found = Some(e.smul(cinv));
                break;
            }
        }
        match found {
            Some(w) => {
                debug_assert_eq!(inner(&w, v).unwrap(), 1);
                witnesses[i as usize] = Some(w);
            }
            None => {
                if missing.is_none() {
                    missing = Some(v.clone());
                }
            }
        }
    }
    (witnesses, missing)
}

/// Certifies that M_n lies in the commutators with V_n:
///  (a) f − id is a bijection of B;
///  (b) every nonzero v ∈ V_n admits w ∈ V_n with ⟨w,v⟩ = 1;
///  (c) with such a w, [x_{v→b}, w·e] = x_{v→(f−id)b} exactly.
/// Together: every point mass x_{v→b} is the single commutator
/// [x_{v→(f−id)⁻¹b}, w_v·e], so M_n = [M_n, V_n].
pub fn certify_mn_perfect(params: Params, cap: u64, seed: u64, samples: u64) -> Result<Vec<Check>> {
    let ctx = MnContext::new(params, cap)?;
    let b = ctx.b();
    let mut checks = Vec::new();

    // (a) f − id permutes B: inverse table composes to the identity both ways.
    let elements = b.enumerate(cap)?;
    let inverse = b.f_minus_id_inverse(cap)?;
    let mut bijective = inverse.len() == elements.len();
    for x in &elements {
        bijective &= inverse.get(&b.f_minus_id(x)).map_or(false, |z| z == x);
        bijective &= inverse.get(x).map_or(false, |z| &b.f_minus_id(z) == x);
    }
    checks.push(Check::expect(
        "f-minus-id-invertible",
        bijective,
        format!(
            "f−id permutes all {} elements of B (q = {}, m = {})",
            elements.len(),
            params.q,
            params.m
        ),
    ));

    // (b) pairing witnesses for every nonzero vector.
    let (witnesses, missing) = pairing_witnesses(&ctx);
    let found = witnesses.iter().filter(|w| w.is_some()).count();
    let mut check_b = Check::expect(
        "pairing-witness-per-vector",
        missing.is_none(),
        format!(
            "found w with ⟨w,v⟩ = 1 for {found} of {} nonzero vectors",
            ctx.vn().size() - 1
        ),
    );
    if let Some(v) = &missing {
        check_b = check_b.with_witness(format!("{v} is orthogonal to all of V_n"));
    }
    checks.push(check_b);

    // (c) the commutator identity on point masses, for every v with a
    // witness and every (or a sampled set of) b ∈ B.
    let sampled: Vec<BElement> = if elements.len() as u64 <= samples {
        elements.clone()
    } else {
        let mut rng = rng_for(seed, "mn-basis-commutators");
        elements.choose_multiple(&mut rng, samples as usize).cloned().collect()
    };
    let mut identity_holds = true;
    let mut tested = 0u64;
    let mut counterexample = None;
    for i in ctx.vn().nonzero_indices() {
        let Some(w) = witnesses[i as usize].clone() else { continue };
        let v = ctx.vn().element(i).clone();
        let g = ctx.vector_elem(&w);
        for bb in &sampled {
            let x = ctx.delta(&v, bb.clone())?;
            let lhs = ctx.commutator(&x, &g);
            let rhs = ctx.delta(&v, b.f_minus_id(bb))?;
            if !ctx.eq(&lhs, &rhs) {
                identity_holds = false;
                if counterexample.is_none() {
                    counterexample = Some(format!("v = {v}, b = {bb}"));
                }
            }
            tested += 1;
        }
    }
    let mut check_c = Check::expect(
        "basis-commutator-identity",
        identity_holds && tested > 0,
        format!("[x_{{v→b}}, w·e] = x_{{v→(f−id)b}} on {tested} (v, b) pairs"),
    );
    if let Some(ce) = counterexample {
        check_c = check_c.with_witness(ce);
    }
    checks.push(check_c);

    let all_ok = checks.iter().all(|c| c.passed());
    checks.push(Check::expect(
        "mn-generated-by-commutators",
        all_ok,
        "every point mass x_{v→b} is a single commutator [x_{v→(f−id)⁻¹b}, w_v·e], \
         so M_n = [M_n, V_n] and M_n adds no abelianization to P_n",
    ));
    Ok(checks)
}

/// Randomized verification of the commutator identities that drive the
/// functional-extension arguments:
///  (a) [x, v·σ] = [x^v, σ] + [x, v]   (cocycle splitting),
///  (b) w ⊥ v  ⇒  [x, v·e](w) = 0     (v^⊥ lies in the null set),
///  (c) the values of [x, σ·e] sum to zero over every ⟨σ⟩-orbit.
pub fn avm_identities_check(
    params: Params,
    cap: u64,
    samples: u64,
    seed: u64,
) -> Result<Vec<Check>> {
    let ctx = MnContext::new(params, cap)?;
    let mut checks = Vec::new();
    let shape = ctx.vn().shape();

    // (a) cocycle splitting.
    let mut rng = rng_for(seed, "avm-splitting");
    let mut ok = true;
    let mut witness = None;
    for _ in 0..samples {
        let x = ctx.random_element(&mut rng);
        let v = ctx.random_vector(&mut rng);
        let sigma = ctx.random_even_perm(&mut rng);
        let g = GnElem { v: v.clone(), sigma: sigma.clone() };
        let lhs = ctx.commutator(&x, &g);
        let split = ctx.add(
            &ctx.commutator(&ctx.act_v(&x, &v), &ctx.perm_elem(sigma.clone())),
            &ctx.commutator(&x, &ctx.vector_elem(&v)),
        );
        if !ctx.eq(&lhs, &split) {
            ok = false;
            witness.get_or_insert(format!("v = {v}, σ = {sigma}"));
        }
    }
    let mut check = Check::expect(
        "commutator-splitting-identity",
        ok,
        format!("[x, v·σ] = [x^v, σ] + [x, v] on {samples} random (x, v, σ)"),
    );
    if let Some(w) = witness {
        check = check.with_witness(w);
    }
    checks.push(check);

    // (b) orthogonal vectors are in the null set of [x, v].
    let mut rng = rng_for(seed, "avm-perp-null");
    let mut ok = true;
    let mut witness = None;
    let mut pairs = 0u64;
    for _ in 0..samples {
        let x = ctx.random_element(&mut rng);
        let v = ctx.random_nonzero_vector(&mut rng);
        let c = ctx.commutator(&x, &ctx.vector_elem(&v));
        for i in ctx.vn().nonzero_indices() {
            let w = ctx.vn().element(i);
            if inner(&v, w).expect("same ambient space") == 0 {
                pairs += 1;
                if !ctx.value_at(&c, w).is_zero() {
                    ok = false;
                    witness.get_or_insert(format!("v = {v}, w = {w}"));
                }
            }
        }
    }
    let mut check = Check::expect(
        "v-perp-in-null-commutator",
        ok,
        format!("[x, v·e] vanishes on {pairs} orthogonal pairs across {samples} samples"),
    );
    if let Some(w) = witness {
        check = check.with_witness(w);
    }
    checks.push(check);

    // (c) orbit sums of [x, σ] vanish (the action permutes each orbit, so
    // the sum telescopes).
    let mut rng = rng_for(seed, "avm-orbit-sums");
    let mut ok = true;
    let mut witness = None;
    let mut orbits_checked = 0u64;
    for _ in 0..samples {
        let x = ctx.random_element(&mut rng);
        let sigma = ctx.random_even_perm(&mut rng);
        let c = ctx.commutator(&x, &ctx.perm_elem(sigma.clone()));
        let mut seen = vec![false; ctx.vn().size() as usize];
        for start in ctx.vn().nonzero_indices() {
            if seen[start as usize] {
                continue;
            }
            let mut sum = ctx.b().zero();
            let mut i = start;
            loop {
                seen[i as usize] = true;
                sum = ctx.b().add(&sum, &ctx.value_at(&c, ctx.vn().element(i)));
                let next = shape.apply_perm(ctx.vn().element(i), &sigma);
                i = ctx.vn().index_of(&next).expect("A_p preserves V_n");
                if i == start {
                    break;
                }
            }
            orbits_checked += 1;
            if !sum.is_zero() {
                ok = false;
                witness.get_or_insert(format!("σ = {sigma}, orbit of {}", ctx.vn().element(start)));
            }
        }
    }
    let mut check = Check::expect(
        "orbit-sums-vanish",
        ok,
        format!("value sums over {orbits_checked} ⟨σ⟩-orbits are all zero"),
    );
    if let Some(w) = witness {
        check = check.with_witness(w);
    }
    checks.push(check);

    // (d) conjugation compatibility: inside the semidirect product,
    // σ⁻¹·v·σ = v^σ, so acting by the conjugate must agree with acting by
    // the moved vector.
    let mut rng = rng_for(seed, "avm-conjugation");
    let mut ok = true;
    let mut witness = None;
    for _ in 0..samples {
        let x = ctx.random_element(&mut rng);
        let v = ctx.random_vector(&mut rng);
        let sigma = ctx.random_even_perm(&mut rng);
        let sigma_elem = ctx.perm_elem(sigma.clone());
        let conj =
            sigma_elem.inv(shape).mul(&ctx.vector_elem(&v), shape).mul(&sigma_elem, shape);
        let lhs = ctx.act_g(&x, &conj);
        let rhs = ctx.act_v(&x, &shape.apply_perm(&v, &sigma));
        if !ctx.eq(&lhs, &rhs) {
            ok = false;
            witness = Some(format!("x^{{σ⁻¹vσ}} ≠ x^{{v^σ}} at v = {v}, σ = {sigma}"));
            break;
        }
    }
    let mut check = Check::expect(
        "conjugation-compatibility",
        ok,
        format!("x^{{σ⁻¹vσ}} = x^{{v^σ}} on {samples} sampled (x, v, σ) triples"),
    );
    if let Some(w) = witness {
        check = check.with_witness(w);
    }
    checks.push(check);

    // Degenerate inputs.
    let mut rng = rng_for(seed, "avm-edges");
    let x = ctx.random_element(&mut rng);
    let g = GnElem { v: ctx.random_vector(&mut rng), sigma: ctx.random_even_perm(&mut rng) };
    let zero_comm = ctx.is_zero_elem(&ctx.commutator(&ctx.zero(), &g));
    let id_comm =
        ctx.is_zero_elem(&ctx.commutator(&x, &ctx.perm_elem(Permutation::identity(params.p as usize))));
    checks.push(Check::expect(
        "degenerate-inputs",
        zero_comm && id_comm,
        "[0, g] = 0 and [x, e] = 0",
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::all_passed;

    fn ctx_5231() -> MnContext {
        MnContext::new(Params::new(5, 2, 3, 1).unwrap(), 20_000).unwrap()
    }

    #[test]
    fn point_mass_moves_with_sigma() {
        let ctx = ctx_5231();
        let b1 = ctx.b().basis_element(1).unwrap();
        let v = FqVector::new(2, &[1, 1, 0, 0, 0]);
        let x = ctx.delta(&v, b1.clone()).unwrap();
        let sigma = Permutation::from_cycles(5, &[&[1, 2, 3]]).unwrap();
        let moved = ctx.act_sigma(&x, &sigma);
        let expected = ctx.delta(&ctx.vn().shape().apply_perm(&v, &sigma), b1).unwrap();
        assert!(ctx.eq(&moved, &expected));
    }

    #[test]
    fn action_is_a_right_action() {
        let ctx = ctx_5231();
        let shape = ctx.vn().shape();
        let mut rng = rng_for(3, "right-action-test");
        for _ in 0..50 {
            let x = ctx.random_element(&mut rng);
            let g = GnElem { v: ctx.random_vector(&mut rng), sigma: ctx.random_even_perm(&mut rng) };
            let h = GnElem { v: ctx.random_vector(&mut rng), sigma: ctx.random_even_perm(&mut rng) };
            let gh = g.mul(&h, shape);
            let via_product = ctx.act_g(&x, &gh);
            let via_steps = ctx.act_g(&ctx.act_g(&x, &g), &h);
            assert!(ctx.eq(&via_product, &via_steps));
        }
    }

    #[test]
    fn materialization_is_faithful() {
        let ctx = ctx_5231();
        let mut rng = rng_for(5, "materialize-test");
        for _ in 0..30 {
            let x = ctx.random_element(&mut rng);
            let m = ctx.materialize(&x);
            assert!(m.base().is_none());
            assert!(ctx.eq(&x, &m));
        }
    }

    #[test]
    fn addition_handles_mismatched_twists() {
        let ctx = ctx_5231();
        let z = ctx.z();
        let v1 = FqVector::new(2, &[1, 1, 0, 0, 0]);
        let v2 = FqVector::new(2, &[0, 1, 1, 0, 0]);
        let a = ctx.act_v(&z, &v1);
        let b = ctx.act_v(&z, &v2);
        let sum = ctx.add(&a, &b);
        for i in ctx.vn().nonzero_indices() {
            let w = ctx.vn().element(i);
            let expected = ctx.b().add(&ctx.value_at(&a, w), &ctx.value_at(&b, w));
            assert_eq!(ctx.value_at(&sum, w), expected);
        }
    }

    #[test]
    fn subtraction_gives_zero() {
        let ctx = ctx_5231();
        let mut rng = rng_for(7, "sub-test");
        for _ in 0..20 {
            let x = ctx.random_element(&mut rng);
            assert!(ctx.is_zero_elem(&ctx.sub(&x, &x)));
        }
    }

    #[test]
    fn point_mass_rejects_bad_locations() {
        let ctx = ctx_5231();
        let b1 = ctx.b().basis_element(1).unwrap();
        assert!(ctx.delta(&FqVector::zero(2, 5), b1.clone()).is_err(), "zero vector");
        assert!(
            ctx.delta(&FqVector::new(2, &[1, 0, 0, 0, 0]), b1).is_err(),
            "not sum-zero, outside V_n"
        );
    }

    #[test]
    fn z_is_constant_b1() {
        let ctx = ctx_5231();
        let z = ctx.z();
        let b1 = ctx.b().basis_element(1).unwrap();
        for i in ctx.vn().nonzero_indices() {
            assert_eq!(ctx.value_at(&z, ctx.vn().element(i)), b1);
        }
    }

    #[test]
    fn certificate_passes_at_reference_parameters() {
        for (p, q, m, n) in [(5, 2, 3, 1), (5, 3, 2, 1)] {
            let params = Params::new(p, q, m, n).unwrap();
            let checks = certify_mn_perfect(params, 20_000, 0, 1000).unwrap();
            assert!(all_passed(&checks), "({p},{q},{m},{n}): {checks:?}");
            assert_eq!(checks.len(), 4);
        }
    }

    #[test]
    fn certificate_is_vacuous_for_trivial_modulus() {
        let params = Params::new(5, 2, 1, 1).unwrap();
        let checks = certify_mn_perfect(params, 20_000, 0, 1000).unwrap();
        assert!(all_passed(&checks), "{checks:?}");
    }

    #[test]
    fn identities_hold_at_reference_parameters() {
        for (p, q, m, n) in [(5, 2, 3, 1), (5, 3, 2, 1)] {
            let params = Params::new(p, q, m, n).unwrap();
            let checks = avm_identities_check(params, 20_000, 100, 0).unwrap();
            assert!(all_passed(&checks), "({p},{q},{m},{n}): {checks:?}");
            assert_eq!(checks.len(), 5);
            assert!(checks.iter().any(|c| c.name == "conjugation-compatibility"));
        }
    }

    #[test]
    fn commutator_with_vector_twists_the_point() {
        // Direct arithmetic: [x_{v→b}, w·e](v) = f^{⟨w,v⟩}(b) − b.
        let ctx = ctx_5231();
        let b1 = ctx.b().basis_element(1).unwrap();
        let v = FqVector::new(2, &[1, 0, 1, 0, 0]);
        let w = FqVector::new(2, &[1, 1, 0, 0, 0]);
        assert_eq!(inner(&v, &w).unwrap(), 1);
        let x = ctx.delta(&v, b1.clone()).unwrap();
        let c = ctx.commutator(&x, &ctx.vector_elem(&w));
        let expected_at_v = ctx.b().sub(&ctx.b().f(&b1), &b1);
        assert_eq!(ctx.value_at(&c, &v), expected_at_v);
        for i in ctx.vn().nonzero_indices() {
            let u = ctx.vn().element(i);
            if u != &v {
                assert!(ctx.value_at(&c, u).is_zero());
            }
        }
    }
}
