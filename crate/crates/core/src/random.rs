//! Random elements, polynomials and point sets for tests and benchmarks.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;

use crate::field::{FieldDesc, FieldElem};
use crate::mpoly::{zero_set, EvalSet, Monomial, MultiPoly, Point, DEFAULT_ENUM_CAP};
use crate::system::PolySystem;

/// Uniform over a finite field; small fractions `a/b` with `|a| <= 5`,
/// `1 <= b <= 3` over the rationals.
pub fn element<R: Rng + ?Sized>(field: &FieldDesc, rng: &mut R) -> FieldElem {
    match field.order() {
        Some(q) => FieldElem::Finite(rng.gen_range(0..q)),
        None => {
            let num = rng.gen_range(-5i64..=5);
            let den = rng.gen_range(1i64..=3);
            field.rational(BigInt::from(num), BigInt::from(den)).expect("nonzero denominator")
        }
    }
}

pub fn nonzero_element<R: Rng + ?Sized>(field: &FieldDesc, rng: &mut R) -> FieldElem {
    loop {
        let e = element(field, rng);
        if !field.is_zero(&e) {
            return e;
        }
    }
}

fn monomial<R: Rng + ?Sized>(nvars: usize, degree: u64, rng: &mut R) -> Monomial {
    let mut exps = alloc::vec![0u32; nvars];
    if nvars > 0 {
        for _ in 0..degree {
            exps[rng.gen_range(0..nvars)] += 1;
        }
    }
    Monomial::new(exps)
}

/// Up to `max_terms` terms of total degree `<= max_degree`. One term is
/// forced to have degree exactly `max_degree`, so the result has that
/// degree unless coefficients collide.
pub fn poly<R: Rng + ?Sized>(
    field: &FieldDesc,
    nvars: usize,
    max_degree: u64,
    max_terms: usize,
    rng: &mut R,
) -> MultiPoly {
    let count = rng.gen_range(1..=max_terms.max(1));
    let mut terms = Vec::with_capacity(count);
    terms.push((monomial(nvars, max_degree, rng), nonzero_element(field, rng)));
    for _ in 1..count {
        let deg = rng.gen_range(0..=max_degree);
        terms.push((monomial(nvars, deg, rng), element(field, rng)));
    }
    MultiPoly::from_terms(field, nvars, terms).expect("valid terms")
}

/// `count` distinct points, or all of them if the space is smaller.
/// Coordinates over the rationals are small integers.
pub fn points<R: Rng + ?Sized>(field: &FieldDesc, nvars: usize, count: usize, rng: &mut R) -> Vec<Point> {
    let per_coord = field.order().unwrap_or(7);
    let space = per_coord.checked_pow(nvars as u32).unwrap_or(u64::MAX);
    let count = count.min(space.min(usize::MAX as u64) as usize);
    let mut out: Vec<Point> = Vec::with_capacity(count);
    while out.len() < count {
        let pt: Point = (0..nvars)
            .map(|_| match field.order() {
                Some(q) => FieldElem::Finite(rng.gen_range(0..q)),
                None => field.from_i64(rng.gen_range(-3..=3)),
            })
            .collect();
        if !out.contains(&pt) {
            out.push(pt);
        }
    }
    out
}

/// Which kind of target a random system got.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetKind {
    /// `Q = 1` with an empty common zero set on `X`.
    One,
    /// A random `Q` that happened to vanish on the common zeros.
    Filtered,
    /// `Q = sum_i c_i P_i` with constants `c_i`.
    Combination,
}

fn vanishes_on(q: &MultiPoly, zeros: &[Point]) -> bool {
    zeros.iter().all(|pt| q.field().is_zero(&q.eval_unchecked(pt)))
}

/// Random generators of degree `<= max_degree` and a target satisfying
/// `Z(P) ∩ X ⊆ Z(Q)`. `X` must be enumerable within the default cap.
pub fn system_on<R: Rng + ?Sized>(
    field: &FieldDesc,
    nvars: usize,
    m: usize,
    max_degree: u64,
    domain: EvalSet,
    rng: &mut R,
) -> (PolySystem, TargetKind) {
    let gens_of = |rng: &mut R| -> Vec<MultiPoly> {
        (0..m).map(|_| poly(field, nvars, rng.gen_range(0..=max_degree), 4, rng)).collect()
    };
    let zeros_of = |gens: &[MultiPoly]| {
        zero_set(field, nvars, gens, &domain, DEFAULT_ENUM_CAP).expect("enumerable domain")
    };
    let mut gens = gens_of(rng);
    let choice = rng.gen_range(0..3);
    let (target, kind) = 'pick: {
        if choice == 0 {
            for _ in 0..20 {
                if zeros_of(&gens).is_empty() {
                    break 'pick (MultiPoly::one(field, nvars), TargetKind::One);
                }
                gens = gens_of(rng);
            }
        }
        let zeros = zeros_of(&gens);
        if choice == 1 {
            for _ in 0..20 {
                let q = poly(field, nvars, rng.gen_range(0..=max_degree), 4, rng);
                if !q.is_zero() && vanishes_on(&q, &zeros) {
                    break 'pick (q, TargetKind::Filtered);
                }
            }
        }
        let mut q = MultiPoly::zero(field, nvars);
        for g in &gens {
            q = &q + &g.scale(&element(field, rng));
        }
        (q, TargetKind::Combination)
    };
    if gens.iter().all(MultiPoly::is_zero) && target.is_zero() {
        gens[0] = MultiPoly::one(field, nvars);
    }
    let system = PolySystem::new(field, nvars, gens, target, domain).expect("consistent random system");
    (system, kind)
}

/// [`system_on`] with `X` the whole space.
pub fn system_all<R: Rng + ?Sized>(
    field: &FieldDesc,
    nvars: usize,
    m: usize,
    max_degree: u64,
    rng: &mut R,
) -> (PolySystem, TargetKind) {
    system_on(field, nvars, m, max_degree, EvalSet::All, rng)
}
