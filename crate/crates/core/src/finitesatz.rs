//! Certificates over a finite evaluation set `X` in any exact field.
//!
//! Each generator only takes finitely many values on `X`, so the
//! non-vanishing indicator `[P_i(x) != 0]` is a polynomial in `P_i`: the
//! composition `C_Y ∘ P_i` with `C_Y(x) = 1 - prod_{y in Y*} (y - x) / prod_{y in Y*} y`,
//! where `Y* = Y \ {0}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::certgen::{check_containment, CheckOptions, Certificate, Mode};
use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldElem};
use crate::mpoly::{compose_univariate, EvalSet, Monomial, MultiPoly};
use crate::system::PolySystem;

/// Value sets `P_i(X)` and the bound `F = max_i |P_i(X)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageTable {
    pub images: Vec<Vec<FieldElem>>,
    pub f_bound: usize,
    pub contains_zero: Vec<bool>,
}

impl ImageTable {
    /// From already canonical (sorted, distinct, nonempty) sets.
    pub fn from_sets(field: &FieldDesc, images: Vec<Vec<FieldElem>>) -> Self {
        let f_bound = images.iter().map(Vec::len).max().unwrap_or(0);
        let contains_zero = images.iter().map(|s| s.iter().any(|v| field.is_zero(v))).collect();
        ImageTable { images, f_bound, contains_zero }
    }

    /// Supplied images if the system carries them, otherwise computed on `X`.
    pub fn for_system(system: &PolySystem, cap: u64) -> Result<Self> {
        let field = system.field();
        let images = match system.images() {
            Some(sets) => sets.to_vec(),
            None => {
                let points = system.domain().points(field, system.nvars(), cap)?;
                system.generators().iter().map(|p| image_at(p, &points)).collect()
            }
        };
        Ok(Self::from_sets(field, images))
    }
}

fn image_at(p: &MultiPoly, points: &[Vec<FieldElem>]) -> Vec<FieldElem> {
    let mut vals: Vec<FieldElem> = points.iter().map(|pt| p.eval_unchecked(pt)).collect();
    vals.sort();
    vals.dedup();
    vals
}

/// `P(X)`, sorted canonically.
pub fn image(p: &MultiPoly, x: &EvalSet, cap: u64) -> Result<Vec<FieldElem>> {
    let points = x.points(p.field(), p.nvars(), cap)?;
    for pt in &points {
        if pt.len() != p.nvars() {
            return Err(Error::DimensionMismatch { expected: p.nvars(), got: pt.len() });
        }
    }
    Ok(image_at(p, &points))
}

fn nonzero_values<'a>(field: &'a FieldDesc, y: &'a [FieldElem]) -> impl Iterator<Item = &'a FieldElem> + 'a {
    let mut seen: Vec<&FieldElem> = Vec::new();
    y.iter().filter(move |v| {
        if field.is_zero(v) || seen.contains(v) {
            false
        } else {
            seen.push(v);
            true
        }
    })
}

/// `C_Y`: equals `[x != 0]` on `Y`, vanishes at 0, degree `<= |Y \ {0}|`.
pub fn build_cy(field: &FieldDesc, y: &[FieldElem]) -> Result<MultiPoly> {
    if y.is_empty() {
        return Err(Error::EmptyValueSet);
    }
    if y.iter().any(|v| !field.contains(v)) {
        return Err(Error::FieldMismatch);
    }
    let x = MultiPoly::var(field, 1, 0);
    let mut num = MultiPoly::one(field, 1);
    let mut den = field.one();
    for v in nonzero_values(field, y) {
        num = &num * &(&MultiPoly::constant(field, 1, v.clone()) - &x);
        den = field.mul(&den, v);
    }
    let scaled = num.scale(&field.inv(&den)?);
    Ok(&MultiPoly::one(field, 1) - &scaled)
}

/// `C(x) / x` for a univariate `C` with `C(0) = 0`.
fn divide_by_x(c: &MultiPoly) -> MultiPoly {
    let terms = c.terms().iter().map(|(m, v)| {
        let e = m.exponents()[0];
        debug_assert!(e > 0, "C_Y has no constant term");
        (Monomial::new(vec![e - 1]), v.clone())
    });
    MultiPoly::from_terms(c.field(), 1, terms).expect("shifted terms stay valid")
}

/// `C_Y(x) / x` as an exact polynomial.
pub fn build_cy_over_x(field: &FieldDesc, y: &[FieldElem]) -> Result<MultiPoly> {
    Ok(divide_by_x(&build_cy(field, y)?))
}

/// `hat P = C_Y ∘ P`; requires `0 ∈ Y`.
pub fn build_hat_p(p: &MultiPoly, image_y: &[FieldElem]) -> Result<MultiPoly> {
    let field = p.field();
    if !image_y.iter().any(|v| field.is_zero(v)) {
        return Err(Error::ZeroNotInValueSet);
    }
    compose_univariate(&build_cy(field, image_y)?, p)
}

/// Lagrange interpolant of `x -> 1/x` on `Y` (which must omit 0),
/// of degree `<= |Y| - 1`.
pub fn inverse_interpolant(field: &FieldDesc, image_y: &[FieldElem]) -> Result<MultiPoly> {
    if image_y.is_empty() {
        return Err(Error::EmptyValueSet);
    }
    if image_y.iter().any(|v| field.is_zero(v)) {
        return Err(Error::ZeroInValueSet);
    }
    let mut ys: Vec<FieldElem> = image_y.to_vec();
    ys.sort();
    ys.dedup();
    let x = MultiPoly::var(field, 1, 0);
    let mut acc = MultiPoly::zero(field, 1);
    for (i, yi) in ys.iter().enumerate() {
        let mut basis = MultiPoly::one(field, 1);
        let mut denom = field.one();
        for (j, yj) in ys.iter().enumerate() {
            if i != j {
                basis = &basis * &(&x - &MultiPoly::constant(field, 1, yj.clone()));
                denom = field.mul(&denom, &field.sub(yi, yj));
            }
        }
        let weight = field.inv(&field.mul(&denom, yi))?;
        acc = &acc + &basis.scale(&weight);
    }
    Ok(acc)
}

/// Pieces of the general (all images contain 0) construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T2Parts {
    pub hat: Vec<MultiPoly>,
    pub factors: Vec<MultiPoly>,
    /// `prod_j (1 - hat P_j)`.
    pub product: MultiPoly,
}

/// `hat P_i`, `I_i = (hat P_i / P_i) prod_{j>i} (1 - hat P_j)` and the full
/// product, for images that all contain 0.
pub fn t2_parts(system: &PolySystem, images: &ImageTable) -> Result<T2Parts> {
    let field = system.field();
    let n = system.nvars();
    let gens = system.generators();
    if images.images.len() != gens.len() {
        return Err(Error::ImageCount { expected: gens.len(), got: images.images.len() });
    }
    let one = MultiPoly::one(field, n);
    let mut hat = Vec::with_capacity(gens.len());
    let mut quot = Vec::with_capacity(gens.len());
    for (p, y) in gens.iter().zip(&images.images) {
        hat.push(build_hat_p(p, y)?);
        quot.push(compose_univariate(&build_cy_over_x(field, y)?, p)?);
    }
    let mut factors = vec![MultiPoly::zero(field, n); gens.len()];
    let mut suffix = one.clone();
    for i in (0..gens.len()).rev() {
        factors[i] = &quot[i] * &suffix;
        suffix = &suffix * &(&one - &hat[i]);
    }
    Ok(T2Parts { hat, factors, product: suffix })
}

/// Certificate over `X` in any field. Bound `m d (F-1)` for `m >= 2` and
/// `m d F` for `m = 1`.
///
/// When every generator is constant on `X` (`F = 1`) and `m >= 2`, the bound
/// `m d (F-1) = 0` is only attainable if `Q` is constant on `X` as well;
/// otherwise the claimed bound falls back to `d F = d`.
pub fn certify_t2(system: &PolySystem, opts: &CheckOptions) -> Result<Certificate> {
    let field = system.field();
    let n = system.nvars();
    let checked = opts.check_containment && check_containment(system, opts.cap)?;
    let images = ImageTable::for_system(system, opts.cap)?;
    let (m, d) = (system.m() as u64, system.d());
    let f_bound = images.f_bound as u64;
    let target = system.target();
    let disjoint = images.contains_zero.iter().position(|z| !z);
    let cofactors = match disjoint {
        Some(i) => {
            let mut rs = vec![MultiPoly::zero(field, n); system.m()];
            let y = &images.images[i];
            rs[i] = match constant_on_domain(system, opts.cap) {
                Some(v) if y.len() == 1 => MultiPoly::constant(field, n, field.div(&v, &y[0])?),
                _ => target * &compose_univariate(&inverse_interpolant(field, y)?, &system.generators()[i])?,
            };
            rs
        }
        None => {
            let parts = t2_parts(system, &images)?;
            parts.factors.iter().map(|f| target * f).collect()
        }
    };
    let mut bound = if m == 1 { m * d * f_bound } else { m * d * f_bound.saturating_sub(1) };
    if m >= 2 && f_bound <= 1 && cofactors.iter().any(|r| !r.total_degree().within(0)) {
        bound = d * f_bound;
    }
    Ok(Certificate::new(Mode::Theorem2, cofactors, bound, checked))
}

/// The single value of `Q` on an enumerable `X`, if `Q` is constant there.
/// Not used with supplied images, where `X` is only a sample.
fn constant_on_domain(system: &PolySystem, cap: u64) -> Option<FieldElem> {
    if system.images().is_some() {
        return None;
    }
    let points = system.domain().points(system.field(), system.nvars(), cap).ok()?;
    let mut vals = points.iter().map(|pt| system.target().eval_unchecked(pt));
    let first = vals.next()?;
    vals.all(|v| v == first).then_some(first)
}
