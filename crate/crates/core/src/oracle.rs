//! Minimal-degree oracle: decides by exact linear algebra whether
//! `Q ≡_X sum_i R_i P_i` has a solution with every `deg R_i <= D`.
//!
//! Unknowns are the coefficients of each `R_i` on monomials of total degree
//! `<= D` (per-variable degree `<= q - 1` over a finite field); there is one
//! equation per point of `X`.

use alloc::vec::Vec;

use crate::certgen::{certify_t1, CheckOptions, Certificate, Mode};
use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldElem};
use crate::finitesatz::certify_t2;
use crate::linalg::{self, Scalars, Span};
use crate::mpoly::{Degree, EvalSet, Monomial, MultiPoly, Point};
use crate::system::PolySystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinDegReport {
    /// Least feasible `D`, or `None` when nothing up to `dmax` works.
    pub min_degree: Option<u64>,
    pub dmax: u64,
    pub witness: Option<Certificate>,
    /// Degree of the constructed certificate (reduced over finite fields),
    /// when the construction applies.
    pub construction_degree: Option<Degree>,
    /// Basis monomials per cofactor at the final degree examined.
    pub monomial_count: usize,
    pub unknown_count: usize,
    pub equation_count: usize,
}

/// Monomials of total degree `<= max_total`, each exponent `<= per_var`,
/// in graded-lex order.
pub fn basis_monomials(nvars: usize, max_total: u64, per_var: Option<u32>) -> Vec<Monomial> {
    fn rec(v: usize, left: u64, cap: Option<u32>, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if v == cur.len() {
            out.push(Monomial::new(cur.clone()));
            return;
        }
        let hi = cap.map_or(left, |c| left.min(c as u64));
        for e in 0..=hi {
            cur[v] = e as u32;
            rec(v + 1, left - e, cap, cur, out);
        }
        cur[v] = 0;
    }
    let mut out = Vec::new();
    rec(0, max_total, per_var, &mut alloc::vec![0; nvars], &mut out);
    out.sort();
    out
}

fn per_var_cap(field: &FieldDesc) -> Option<u32> {
    field.order().map(|q| (q - 1).min(u32::MAX as u64) as u32)
}

fn domain_points(system: &PolySystem, cap: u64) -> Result<Vec<Point>> {
    match system.domain() {
        EvalSet::All if !system.field().is_finite() => Err(Error::InfiniteDomain),
        x => x.points(system.field(), system.nvars(), cap),
    }
}

fn monomial_value(field: &FieldDesc, m: &Monomial, pt: &[FieldElem]) -> FieldElem {
    let mut v = field.one();
    for (x, &e) in pt.iter().zip(m.exponents()) {
        if e > 0 {
            v = field.mul(&v, &field.pow(x, e as u64));
        }
    }
    v
}

struct PointData {
    points: Vec<Point>,
    /// `gen_values[i][k] = P_i(point_k)`
    gen_values: Vec<Vec<FieldElem>>,
    target_values: Vec<FieldElem>,
}

impl PointData {
    fn new(system: &PolySystem, cap: u64) -> Result<Self> {
        let points = domain_points(system, cap)?;
        let gen_values = system
            .generators()
            .iter()
            .map(|p| points.iter().map(|pt| p.eval_unchecked(pt)).collect())
            .collect();
        let target_values = points.iter().map(|pt| system.target().eval_unchecked(pt)).collect();
        Ok(PointData { points, gen_values, target_values })
    }

    /// Column for unknown (generator i, monomial m): `m(x) P_i(x)` over all points.
    fn column<S: Scalars>(&self, s: &S, field: &FieldDesc, i: usize, m: &Monomial) -> Vec<S::E> {
        self.points
            .iter()
            .zip(&self.gen_values[i])
            .map(|(pt, pv)| s.lift(&field.mul(&monomial_value(field, m, pt), pv)))
            .collect()
    }

    fn target<S: Scalars>(&self, s: &S) -> Vec<S::E> {
        self.target_values.iter().map(|v| s.lift(v)).collect()
    }
}

fn solve_at<S: Scalars>(s: &S, system: &PolySystem, data: &PointData, d: u64) -> Option<Vec<MultiPoly>> {
    let field = system.field();
    let monos = basis_monomials(system.nvars(), d, per_var_cap(field));
    let m = system.m();
    let ncols = m * monos.len();
    let columns: Vec<Vec<S::E>> = (0..m)
        .flat_map(|i| monos.iter().map(move |mono| (i, mono)))
        .map(|(i, mono)| data.column(s, field, i, mono))
        .collect();
    let rows: Vec<Vec<S::E>> = (0..data.points.len())
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let sol = linalg::solve(s, rows, data.target(s), ncols)?;
    let mut sol = sol.into_iter();
    let cofactors = (0..m)
        .map(|_| {
            let terms: Vec<(Monomial, FieldElem)> =
                monos.iter().cloned().zip(sol.by_ref().take(monos.len()).map(|v| s.lower(v))).collect();
            MultiPoly::from_terms(field, system.nvars(), terms).expect("basis terms are valid")
        })
        .collect();
    Some(cofactors)
}

fn check_witness(system: &PolySystem, data: &PointData, cofactors: &[MultiPoly]) -> Result<()> {
    let field = system.field();
    for (k, pt) in data.points.iter().enumerate() {
        let mut sum = field.zero();
        for (i, r) in cofactors.iter().enumerate() {
            sum = field.add(&sum, &field.mul(&r.eval_unchecked(pt), &data.gen_values[i][k]));
        }
        if sum != data.target_values[k] {
            return Err(Error::Inconsistency("oracle witness fails re-substitution".into()));
        }
    }
    Ok(())
}

fn at_degree(system: &PolySystem, data: &PointData, d: u64) -> Result<Option<Certificate>> {
    let field = system.field();
    let cofactors = if field.is_finite() {
        solve_at(&linalg::Finite(field), system, data, d)
    } else {
        solve_at(&linalg::Rationals, system, data, d)
    };
    let Some(cofactors) = cofactors else { return Ok(None) };
    check_witness(system, data, &cofactors)?;
    Ok(Some(Certificate::new(Mode::Oracle, cofactors, d, true)))
}

/// A certificate with all cofactor degrees `<= d`, or `None` if none exists.
pub fn certificate_at_degree(system: &PolySystem, d: u64, cap: u64) -> Result<Option<Certificate>> {
    let data = PointData::new(system, cap)?;
    at_degree(system, &data, d)
}

/// Smallest `D` in `0..=dmax` admitting a certificate, with a witness.
pub fn min_degree(system: &PolySystem, dmax: u64, cap: u64) -> Result<MinDegReport> {
    let data = PointData::new(system, cap)?;
    let field = system.field();
    let (found, count) = if field.is_finite() {
        sweep(&linalg::Finite(field), system, &data, dmax)
    } else {
        sweep(&linalg::Rationals, system, &data, dmax)
    };
    let witness = match found {
        Some(d) => Some(
            at_degree(system, &data, d)?
                .ok_or_else(|| Error::Inconsistency("span test and direct solve disagree".into()))?,
        ),
        None => None,
    };
    Ok(MinDegReport {
        min_degree: found,
        dmax,
        witness,
        construction_degree: construction_degree(system, cap),
        monomial_count: count,
        unknown_count: count * system.m(),
        equation_count: data.points.len(),
    })
}

/// Adds basis columns degree by degree and stops at the first degree whose
/// span contains the target vector.
fn sweep<S: Scalars>(s: &S, system: &PolySystem, data: &PointData, dmax: u64) -> (Option<u64>, usize) {
    let field = system.field();
    let cap = per_var_cap(field);
    let target = data.target(s);
    let mut span: Span<S> = Span::new();
    let mut count = 0usize;
    let max_useful = cap.map(|c| c as u64 * system.nvars() as u64);
    for d in 0..=dmax {
        let layer: Vec<Monomial> = basis_monomials(system.nvars(), d, cap)
            .into_iter()
            .filter(|m| m.degree() == d)
            .collect();
        count += layer.len();
        for i in 0..system.m() {
            for mono in &layer {
                if span.rank() < data.points.len() {
                    span.insert(s, data.column(s, field, i, mono));
                }
            }
        }
        if span.contains(s, target.clone()) {
            return (Some(d), count);
        }
        if max_useful.is_some_and(|top| d >= top) {
            break;
        }
    }
    (None, count)
}

/// Degree of the constructed certificate: maximal reduced degree over a
/// finite field, maximal raw degree otherwise. `None` if construction fails.
pub fn construction_degree(system: &PolySystem, cap: u64) -> Option<Degree> {
    let opts = CheckOptions { cap, check_containment: true };
    let cert = if system.field().is_finite() && system.domain().is_all() {
        certify_t1(system, &opts)
    } else {
        certify_t2(system, &opts)
    }
    .ok()?;
    Some(cert.max_reduced_degree().unwrap_or_else(|| cert.max_raw_degree()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certgen::verify;
    use crate::mpoly::DEFAULT_ENUM_CAP;
    use alloc::vec;

    fn weak_x2_plus_1(q: u64) -> PolySystem {
        let f = FieldDesc::finite(q).unwrap();
        let x = MultiPoly::var(&f, 1, 0);
        let one = MultiPoly::one(&f, 1);
        PolySystem::new(&f, 1, vec![&x.pow(2) + &one], one, EvalSet::All).unwrap()
    }

    #[test]
    fn basis_counts() {
        assert_eq!(basis_monomials(2, 2, None).len(), 6);
        assert_eq!(basis_monomials(2, 10, Some(2)).len(), 9);
        let b = basis_monomials(1, 3, None);
        assert_eq!(b.iter().map(Monomial::degree).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn field_size_instance_gf7() {
        let s = weak_x2_plus_1(7);
        assert!(certificate_at_degree(&s, 5, DEFAULT_ENUM_CAP).unwrap().is_none());
        let cert = certificate_at_degree(&s, 6, DEFAULT_ENUM_CAP).unwrap().unwrap();
        assert!(verify(&s, &cert, DEFAULT_ENUM_CAP).unwrap().ok);
        let p = &MultiPoly::var(s.field(), 1, 0).pow(2) + &MultiPoly::one(s.field(), 1);
        assert_eq!(cert.cofactors[0], p.pow(5).normal_form().unwrap());
    }

    #[test]
    fn min_degree_field_size() {
        for q in [3u64, 7, 11] {
            let r = min_degree(&weak_x2_plus_1(q), q, DEFAULT_ENUM_CAP).unwrap();
            assert_eq!(r.min_degree, Some(q - 1));
            assert_eq!(r.construction_degree, Some(Degree::Finite(q - 1)));
        }
        let none = min_degree(&weak_x2_plus_1(7), 5, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(none.min_degree, None);
        assert!(none.witness.is_none());
    }

    #[test]
    fn trivial_instances() {
        let f = FieldDesc::prime(3).unwrap();
        let x = MultiPoly::var(&f, 1, 0);
        let s = PolySystem::new(&f, 1, vec![x.clone()], x, EvalSet::All).unwrap();
        let cert = certificate_at_degree(&s, 0, DEFAULT_ENUM_CAP).unwrap().unwrap();
        assert_eq!(cert.cofactors[0], MultiPoly::one(&f, 1));

        let one = MultiPoly::one(&f, 1);
        let s = PolySystem::new(&f, 1, vec![one.clone()], one, EvalSet::All).unwrap();
        assert_eq!(min_degree(&s, 3, DEFAULT_ENUM_CAP).unwrap().min_degree, Some(0));
    }

    #[test]
    fn interpolation_instance_over_rationals() {
        let f = FieldDesc::rationals();
        let x = MultiPoly::var(&f, 1, 0);
        let pts = [-2i64, -1, 1, 2].iter().map(|&v| vec![f.from_i64(v)]).collect();
        let s = PolySystem::new(&f, 1, vec![x.pow(2)], x, EvalSet::explicit(&f, 1, pts).unwrap()).unwrap();
        let r = min_degree(&s, 8, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.min_degree, Some(3));
        assert_eq!(r.equation_count, 4);
        assert!(verify(&s, r.witness.as_ref().unwrap(), DEFAULT_ENUM_CAP).unwrap().ok);
    }

    #[test]
    fn rationals_with_all_is_rejected() {
        let f = FieldDesc::rationals();
        let x = MultiPoly::var(&f, 1, 0);
        let s = PolySystem::new(&f, 1, vec![x.clone()], x, EvalSet::All).unwrap();
        assert_eq!(min_degree(&s, 2, 100).unwrap_err(), Error::InfiniteDomain);
    }
}
