//! Permutations of `{1..p}`, the alternating group `A_p`, and the brute-force
//! fixed-point lemma for commutator pairs in `A_5`.
//!
//! Conventions, fixed once for the whole crate:
//! - one-line images internally (0-based), cycle notation (1-based) at the
//!   text boundary only;
//! - composition `(στ)(i) := σ(τ(i))`, so `mul(a, b)` applies `b` first when
//!   reading images, and the coordinate action `v ↦ v^σ` defined elsewhere is
//!   a right action;
//! - `[g, h] := g⁻¹h⁻¹gh`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::check::Check;
use crate::error::{Error, Result};

/// Default cap on enumerated symmetric/alternating group sizes: 10!.
pub const DEFAULT_PERM_CAP: u64 = 3_628_800;

/// A permutation of `{0, …, degree−1}` in one-line notation:
/// `images[i]` is the image of point `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Identity on `degree` points.
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    /// Build from a 0-based image table; rejects non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im >= n || seen[im] {
                return Err(Error::InvalidParameter(format!(
                    "image table {images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[im] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint cycles given with 1-based points, e.g.
    /// `from_cycles(5, &[&[1, 2], &[3, 4]])` is (1 2)(3 4) on 5 points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let a = cycle[window];
                let b = cycle[(window + 1) % cycle.len()];
                if a == 0 || a > degree || b == 0 || b > degree {
                    return Err(Error::InvalidParameter(format!(
                        "cycle point out of range 1..={degree} in {cycle:?}"
                    )));
                }
                if used[a - 1] {
                    return Err(Error::InvalidParameter(format!(
                        "cycles are not disjoint at point {a}"
                    )));
                }
                used[a - 1] = true;
                images[a - 1] = b - 1;
            }
        }
        Permutation::from_images(images)
    }

    /// Parse cycle notation with 1-based points: `"(1 2 3)(4 5)"`.
    /// Points may be separated by spaces or commas; `"()"` (or `"e"`) is the
    /// identity. The degree is explicit because text like `"(1 2)"` does not
    /// say how many points it acts on.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed == "e" || trimmed == "()" {
            return Ok(Permutation::identity(degree));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = trimmed;
        while !rest.is_empty() {
            let Some(start) = rest.find('(') else {
                return Err(Error::InvalidParameter(format!(
                    "unexpected trailing text {rest:?} in cycle notation"
                )));
            };
            if !rest[..start].trim().is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "unexpected text {:?} before cycle",
                    &rest[..start]
                )));
            }
            let Some(end_rel) = rest[start..].find(')') else {
                return Err(Error::InvalidParameter(format!("unclosed cycle in {text:?}")));
            };
            let inner = &rest[start + 1..start + end_rel];
            let points: Vec<usize> = inner
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>().map_err(|_| {
                        Error::InvalidParameter(format!("bad cycle point {s:?} in {text:?}"))
                    })
                })
                .collect::<Result<_>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = &rest[start + end_rel + 1..];
        }
        let borrowed: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &borrowed)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// Composition `(self · other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        Permutation { images }
    }

    /// Nontrivial cycles, each rotated to start at its least point, sorted by
    /// that point (0-based entries).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut point = self.images[start];
            while point != start {
                seen[point] = true;
                cycle.push(point);
                point = self.images[point];
            }
            out.push(cycle);
        }
        out
    }

    /// True for even permutations (product of an even number of
    /// transpositions): parity is `Σ (len(cycle) − 1) mod 2`.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points; identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "({})", cycle.iter().map(|p| (p + 1).to_string()).join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses cycle notation, inferring the degree as the largest point named.
    /// Prefer [`Permutation::parse_cycles`] when the degree matters.
    fn from_str(s: &str) -> Result<Self> {
        let max_point = s
            .split(|c: char| !c.is_ascii_digit())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().unwrap_or(0))
            .max()
            .unwrap_or(0);
        Permutation::parse_cycles(s, max_point.max(1))
    }
}

/// `[a, b] = a⁻¹ b⁻¹ a b`.
pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    a.inverse().compose(&b.inverse()).compose(a).compose(b)
}

/// All `p!` permutations of `{1..p}` in lexicographic order of their image
/// tables (the identity comes first).
pub fn symmetric_perms(p: usize, cap: u64) -> Result<Vec<Permutation>> {
    let mut size: u64 = 1;
    for k in 2..=p as u64 {
        size = size.saturating_mul(k);
    }
    if size > cap {
        return Err(Error::cap(format!("enumeration of S_{p}"), size, cap));
    }
    Ok((0..p).permutations(p).map(|images| Permutation { images }).collect())
}

/// All `p!/2` even permutations of `{1..p}`, lexicographic, identity first.
pub fn alternating_perms(p: usize, cap: u64) -> Result<Vec<Permutation>> {
    let mut half: u64 = 1;
    for k in 2..=p as u64 {
        half = half.saturating_mul(k);
    }
    half = (half / 2).max(1);
    if half > cap {
        return Err(Error::cap(format!("enumeration of A_{p}"), half, cap));
    }
    Ok((0..p)
        .permutations(p)
        .map(|images| Permutation { images })
        .filter(Permutation::is_even)
        .collect())
}

/// Result of the exhaustive commutator search in `A_5`.
///
/// The statement verified: among all ordered pairs (σ₁, σ₂) ∈ A_5², the pairs
/// with [σ₁, σ₂] = (1 2)(3 4) form a nonempty set, and every such pair has
/// both entries fixing the point 5.
#[derive(Debug)]
pub struct A5FixedPointReport {
    pub pairs_checked: usize,
    pub solution_count: usize,
    /// First solution pair in enumeration order, for display.
    pub sample_solution: Option<(Permutation, Permutation)>,
    pub checks: Vec<Check>,
}

/// Exhaustively verify that every pair (σ₁, σ₂) ∈ A_5² with
/// [σ₁, σ₂] = (1 2)(3 4) satisfies σ₁(5) = σ₂(5) = 5.
pub fn verify_a5_fixed_point_lemma() -> A5FixedPointReport {
    let a5 = alternating_perms(5, DEFAULT_PERM_CAP).expect("A_5 is far below the cap");
    // (1 2)(3 4) written directly as an image table, so this check does not
    // depend on the cycle parser.
    let target = Permutation { images: vec![1, 0, 3, 2, 4] };

    let mut solutions: Vec<(Permutation, Permutation)> = Vec::new();
    for s1 in &a5 {
        for s2 in &a5 {
            if commutator(s1, s2) == target {
                solutions.push((s1.clone(), s2.clone()));
            }
        }
    }
    let pairs_checked = a5.len() * a5.len();
    let solution_count = solutions.len();

    let mut checks = Vec::new();
    checks.push(Check::expect(
        "solutions-nonempty",
        solution_count > 0,
        format!(
            "{solution_count} of {pairs_checked} ordered pairs in A_5^2 have \
             commutator (1 2)(3 4)"
        ),
    ));

    let violator = solutions.iter().find(|(s1, s2)| s1.apply(4) != 4 || s2.apply(4) != 4);
    let mut fix_check = Check::expect(
        "solutions-fix-point-5",
        violator.is_none() && solution_count > 0,
        format!("all {solution_count} solution pairs fix the point 5 in both coordinates"),
    );
    if let Some((s1, s2)) = violator {
        fix_check = fix_check.with_witness(format!("sigma1 = {s1}, sigma2 = {s2}"));
    }
    checks.push(fix_check);

    checks.push(Check::expect(
        "identity-pair-excluded",
        {
            let e = Permutation::identity(5);
            commutator(&e, &e) != target
        },
        "[e, e] = e differs from (1 2)(3 4), so the identity pair is not a solution",
    ));

    A5FixedPointReport {
        pairs_checked,
        solution_count,
        sample_solution: solutions.first().cloned(),
        checks,
    }
}

/// Brute-force check that every element of `A_p` is a single commutator of
/// `A_p` elements; returns the number of distinct commutators found.
pub fn all_even_perms_are_commutators(p: usize, cap: u64) -> Result<bool> {
    let ap = alternating_perms(p, cap)?;
    let mut seen: HashSet<Permutation> = HashSet::with_capacity(ap.len());
    for a in &ap {
        for b in &ap {
            seen.insert(commutator(a, b));
            if seen.len() == ap.len() {
                return Ok(true);
            }
        }
    }
    Ok(seen.len() == ap.len())
}
