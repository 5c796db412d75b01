//! Randomized laws for the arithmetic and linear-algebra layer: vector
//! spaces over 𝔽_q, the block permutation action, orthogonal complements,
//! permutation algebra, and exact modular arithmetic.

use proptest::prelude::*;

use widthlab::arith::{egcd, gcd, is_prime, modinv, reduced_fraction_n_pm1_over_pfact, valuation};
use widthlab::linalg::{
    inner, orthogonal_complement, sumzero_space, BlockShape, FqVector, Subspace,
};
use widthlab::perm::Permutation;
use widthlab::zmod::{nullspace_mod_prime, submodule_contains};

/// A field size used throughout: small primes keep exhaustive checks cheap.
fn small_prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5)]
}

/// A vector with entries already reduced mod q.
fn fq_vector(q: u32, dim: usize) -> impl Strategy<Value = FqVector> {
    prop::collection::vec(0i64..q as i64, dim).prop_map(move |coords| FqVector::new(q, &coords))
}

/// A uniformly-shuffled permutation of the given degree (argsort of random
/// keys; ties broken by position, which only skews negligibly for u64 keys).
fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    prop::collection::vec(any::<u64>(), degree).prop_map(|keys| {
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by_key(|&i| (keys[i], i));
        Permutation::from_images(idx).expect("argsort yields a permutation")
    })
}

proptest! {
    #[test]
    fn vector_addition_is_commutative_and_associative(
        q in small_prime(),
        coords in prop::collection::vec(0i64..5, 1..8),
        coords2 in prop::collection::vec(0i64..5, 1..8),
        coords3 in prop::collection::vec(0i64..5, 1..8),
    ) {
        let dim = coords.len().min(coords2.len()).min(coords3.len());
        let a = FqVector::new(q, &coords[..dim]);
        let b = FqVector::new(q, &coords2[..dim]);
        let c = FqVector::new(q, &coords3[..dim]);
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(a.add(&a.neg()).is_zero());
        prop_assert_eq!(a.sub(&b), a.add(&b.neg()));
    }

    #[test]
    fn scalar_multiplication_distributes(
        q in small_prime(),
        coords in prop::collection::vec(0i64..5, 1..8),
        s in 0u32..7,
        t in 0u32..7,
    ) {
        let a = FqVector::new(q, &coords);
        prop_assert_eq!(a.smul(1), a.clone());
        prop_assert_eq!(a.smul(s).add(&a.smul(t)), a.smul((s + t) % q));
        prop_assert_eq!(a.smul(s).smul(t), a.smul(s * t % q));
        prop_assert!(a.smul(q).is_zero());
    }

    #[test]
    fn inner_product_is_symmetric_and_bilinear(
        q in small_prime(),
        ca in prop::collection::vec(0i64..5, 4),
        cb in prop::collection::vec(0i64..5, 4),
        cc in prop::collection::vec(0i64..5, 4),
    ) {
        let a = FqVector::new(q, &ca);
        let b = FqVector::new(q, &cb);
        let c = FqVector::new(q, &cc);
        prop_assert_eq!(inner(&a, &b).unwrap(), inner(&b, &a).unwrap());
        prop_assert_eq!(
            inner(&a.add(&b), &c).unwrap(),
            (inner(&a, &c).unwrap() + inner(&b, &c).unwrap()) % q
        );
    }

    #[test]
    fn block_action_is_a_right_action(
        q in small_prime(),
        n in 1usize..3,
        coords in prop::collection::vec(0i64..5, 10),
        sigma in permutation(5),
        tau in permutation(5),
    ) {
        let shape = BlockShape { p: 5, n };
        let v = FqVector::new(q, &coords[..shape.dim()]);
        // Acting by σ then τ equals acting by the composite στ.
        let two_step = shape.apply_perm(&shape.apply_perm(&v, &sigma), &tau);
        let one_step = shape.apply_perm(&v, &sigma.compose(&tau));
        prop_assert_eq!(two_step, one_step);
        // The action reads blocks through σ: (v^σ)_i = v_{σ(i)}.
        let moved = shape.apply_perm(&v, &sigma);
        let blocks = shape.components(&v);
        let moved_blocks = shape.components(&moved);
        for i in 0..5 {
            prop_assert_eq!(&moved_blocks[i], &blocks[sigma.apply(i)]);
        }
    }

    #[test]
    fn block_action_is_linear_and_respects_the_form(
        q in small_prime(),
        coords in prop::collection::vec(0i64..5, 5),
        coords2 in prop::collection::vec(0i64..5, 5),
        sigma in permutation(5),
    ) {
        let shape = BlockShape { p: 5, n: 1 };
        let v = FqVector::new(q, &coords);
        let w = FqVector::new(q, &coords2);
        prop_assert_eq!(
            shape.apply_perm(&v.add(&w), &sigma),
            shape.apply_perm(&v, &sigma).add(&shape.apply_perm(&w, &sigma))
        );
        // Adjointness: ⟨v^σ, w⟩ = ⟨v, w^{σ⁻¹}⟩.
        prop_assert_eq!(
            inner(&shape.apply_perm(&v, &sigma), &w).unwrap(),
            inner(&v, &shape.apply_perm(&w, &sigma.inverse())).unwrap()
        );
        // The sum-zero property is permutation-invariant.
        prop_assert_eq!(shape.is_sumzero(&v), shape.is_sumzero(&shape.apply_perm(&v, &sigma)));
    }

    #[test]
    fn double_orthogonal_complement_recovers_the_span(
        q in prop_oneof![Just(2u32), Just(3)],
        picks in prop::collection::vec(prop::collection::vec(0u32..5, 4), 0..3),
    ) {
        let ambient = sumzero_space(5, q as u64, 1).unwrap();
        // Random vectors inside the ambient space, as coefficient combos of
        // its echelon basis.
        let defs: Vec<FqVector> = picks
            .iter()
            .map(|coeffs| {
                let mut v = FqVector::zero(q, ambient.ambient_dim());
                for (c, b) in coeffs.iter().zip(ambient.basis()) {
                    v = v.add(&b.smul(c % q));
                }
                v
            })
            .collect();
        let u = Subspace::from_rows(q, ambient.ambient_dim(), &defs);
        let w = orthogonal_complement(&defs, &ambient).unwrap();
        // The form is nondegenerate on the ambient space, so dimensions are
        // complementary and the double complement returns the original span.
        prop_assert_eq!(u.dim() + w.dim(), ambient.dim());
        let back = orthogonal_complement(w.basis(), &ambient).unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn permutation_algebra_laws(
        a in permutation(6),
        b in permutation(6),
        c in permutation(6),
    ) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert!(a.inverse().compose(&a).is_identity());
        // Parity is multiplicative, so commutators are always even.
        prop_assert_eq!(a.compose(&b).is_even(), a.is_even() == b.is_even());
        prop_assert!(widthlab::perm::commutator(&a, &b).is_even());
    }

    #[test]
    fn permutation_display_round_trips(sigma in permutation(7)) {
        let text = sigma.to_string();
        let back = Permutation::parse_cycles(&text, 7).unwrap();
        prop_assert_eq!(back, sigma);
    }

    #[test]
    fn modular_inverse_and_gcd_identities(a in 1u64..500, m in 2u64..500) {
        let g = gcd(a, m);
        prop_assert_eq!(a % g, 0);
        prop_assert_eq!(m % g, 0);
        let (eg, x, y) = egcd(a as i64, m as i64);
        prop_assert_eq!(eg, g as i64);
        prop_assert_eq!(a as i64 * x + m as i64 * y, eg);
        match modinv(a % m, m) {
            Some(inv) => {
                prop_assert_eq!(g, 1);
                prop_assert_eq!(a % m * inv % m, 1 % m);
            }
            None => prop_assert!(g > 1 || a % m == 0),
        }
    }

    #[test]
    fn primality_matches_trial_division(n in 0u64..5000) {
        let naive = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(is_prime(n), naive);
    }

    #[test]
    fn valuation_divides_exactly(p in prop_oneof![Just(2u64), Just(3), Just(5)], x in 1u64..100_000) {
        let e = valuation(p, x, 60);
        prop_assert_eq!(x % p.pow(e), 0);
        prop_assert!(x % p.pow(e + 1) != 0);
    }

    #[test]
    fn reduced_fraction_is_in_lowest_terms(p in prop_oneof![Just(5u64), Just(7)], n in 1u64..200) {
        let (num, den) = reduced_fraction_n_pm1_over_pfact(p, n).unwrap();
        prop_assert_eq!(gcd(num, den), 1);
        let pfact: u64 = (1..=p).product();
        // num/den == n(p−1)/p! exactly.
        prop_assert_eq!(num * pfact, den * n * (p - 1));
    }

    #[test]
    fn span_membership_closed_under_combinations(
        m in 2u64..12,
        rows in prop::collection::vec(prop::collection::vec(0u64..12, 4), 1..4),
        coeffs in prop::collection::vec(0u64..12, 4),
    ) {
        let rows: Vec<Vec<u64>> =
            rows.iter().map(|r| r.iter().map(|&x| x % m).collect()).collect();
        let mut target = vec![0u64; 4];
        for (c, row) in coeffs.iter().zip(&rows) {
            for (t, &r) in target.iter_mut().zip(row) {
                *t = (*t + c % m * r) % m;
            }
        }
        prop_assert!(submodule_contains(m, &rows, &target));
    }

    #[test]
    fn nullspace_vectors_annihilate_the_matrix(
        p in prop_oneof![Just(2u64), Just(3), Just(5)],
        matrix in prop::collection::vec(prop::collection::vec(0u64..5, 4), 1..4),
    ) {
        let matrix: Vec<Vec<u64>> =
            matrix.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
        let basis = nullspace_mod_prime(p, &matrix, 4);
        for sol in &basis {
            for row in &matrix {
                let dot = row.iter().zip(sol).fold(0u64, |acc, (&a, &b)| (acc + a * b) % p);
                prop_assert_eq!(dot, 0);
            }
        }
        // Dimension bookkeeping: rank + nullity = column count.
        let rank = {
            let mut mat: Vec<Vec<u64>> = matrix.clone();
            let mut rank = 0usize;
            for col in 0..4 {
                if let Some(pivot) = (rank..mat.len()).find(|&r| mat[r][col] % p != 0) {
                    mat.swap(rank, pivot);
                    let inv = modinv(mat[rank][col], p).unwrap();
                    for j in 0..4 {
                        mat[rank][j] = mat[rank][j] * inv % p;
                    }
                    for r in 0..mat.len() {
                        if r != rank && mat[r][col] != 0 {
                            let f = mat[r][col];
                            for j in 0..4 {
                                mat[r][j] = (mat[r][j] + p - f * mat[rank][j] % p) % p;
                            }
                        }
                    }
                    rank += 1;
                }
            }
            rank
        };
        prop_assert_eq!(rank + basis.len(), 4);
    }
}

#[test]
fn span_membership_rejects_outside_vectors() {
    // 1 is not a multiple of 2 mod 4.
    assert!(!submodule_contains(4, &[vec![2, 0]], &[1, 0]));
    assert!(submodule_contains(4, &[vec![2, 0]], &[2, 0]));
    // Over Z/6, the span of (2,0) and (0,3) misses (1,1).
    assert!(!submodule_contains(6, &[vec![2, 0], vec![0, 3]], &[1, 1]));
    assert!(submodule_contains(6, &[vec![2, 0], vec![0, 3]], &[4, 3]));
}
