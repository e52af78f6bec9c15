//! Finite-field certificates: the indicator factors
//! `I_i = P_i^{q-2} * prod_{j>i} (1 - P_j^{q-1})`, cofactors `R_i = Q * I_i`,
//! degree audits, and verification of arbitrary certificates.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::FieldDesc;
use crate::mpoly::{first_disagreement, zero_set, Degree, EvalSet, MultiPoly, Point, DEFAULT_ENUM_CAP};
use crate::system::PolySystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Theorem1,
    /// `Q = 1`, with the bound lowered by `d`.
    Theorem1Weak,
    Theorem2,
    /// Witness produced by the minimal-degree oracle.
    Oracle,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Theorem1 => "theorem1",
            Mode::Theorem1Weak => "theorem1-weak",
            Mode::Theorem2 => "theorem2",
            Mode::Oracle => "oracle",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        [Mode::Theorem1, Mode::Theorem1Weak, Mode::Theorem2, Mode::Oracle]
            .into_iter()
            .find(|m| m.as_str() == s)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Cofactors `R_1..R_m` with their degree audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub mode: Mode,
    pub cofactors: Vec<MultiPoly>,
    /// Normal forms of the cofactors (finite fields only).
    pub reduced: Option<Vec<MultiPoly>>,
    pub claimed_bound: u64,
    pub raw_degrees: Vec<Degree>,
    pub reduced_degrees: Option<Vec<Degree>>,
    /// False when the containment hypothesis was taken on trust.
    pub containment_checked: bool,
}

impl Certificate {
    pub fn new(mode: Mode, cofactors: Vec<MultiPoly>, claimed_bound: u64, containment_checked: bool) -> Self {
        let raw_degrees = cofactors.iter().map(MultiPoly::total_degree).collect();
        let reduced: Option<Vec<MultiPoly>> = cofactors
            .first()
            .is_some_and(|r| r.field().is_finite())
            .then(|| cofactors.iter().map(|r| r.normal_form().expect("finite field")).collect());
        let reduced_degrees = reduced.as_ref().map(|rs| rs.iter().map(MultiPoly::total_degree).collect());
        Certificate { mode, cofactors, reduced, claimed_bound, raw_degrees, reduced_degrees, containment_checked }
    }

    pub fn max_raw_degree(&self) -> Degree {
        self.raw_degrees.iter().copied().max().unwrap_or(Degree::NegInfinity)
    }

    pub fn max_reduced_degree(&self) -> Option<Degree> {
        self.reduced_degrees.as_ref().map(|ds| ds.iter().copied().max().unwrap_or(Degree::NegInfinity))
    }

    /// The same certificate with the reduced cofactors in place of the raw ones.
    pub fn reduced_view(&self) -> Option<Certificate> {
        let reduced = self.reduced.clone()?;
        Some(Certificate {
            mode: self.mode,
            raw_degrees: self.reduced_degrees.clone()?,
            cofactors: reduced.clone(),
            reduced: Some(reduced),
            reduced_degrees: self.reduced_degrees.clone(),
            claimed_bound: self.claimed_bound,
            containment_checked: self.containment_checked,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub cap: u64,
    /// Check `Z(P) ∩ X ⊆ Z(Q)` before constructing (when `X` is enumerable).
    pub check_containment: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { cap: DEFAULT_ENUM_CAP, check_containment: true }
    }
}

pub(crate) fn format_point(field: &FieldDesc, pt: &Point) -> String {
    let mut s = String::from("(");
    for (i, x) in pt.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push_str(&alloc::format!("{}", field.display(x)));
    }
    s.push(')');
    s
}

/// Checks `Z(P_1..P_m) ∩ X ⊆ Z(Q)`. Returns `Ok(false)` when the check was
/// skipped because `X` is too large to enumerate.
pub fn check_containment(system: &PolySystem, cap: u64) -> Result<bool> {
    let (field, n) = (system.field(), system.nvars());
    match system.domain().size(field, n) {
        Some(size) if size <= cap => {}
        _ => return Ok(false),
    }
    let zeros = zero_set(field, n, system.generators(), system.domain(), cap)?;
    for pt in zeros {
        if !field.is_zero(&system.target().eval_unchecked(&pt)) {
            return Err(Error::ContainmentFails { display: format_point(field, &pt), point: pt });
        }
    }
    Ok(true)
}

/// Indicator factors together with `prod_j (1 - P_j^{q-1})`.
fn t1_parts(system: &PolySystem) -> Result<(Vec<MultiPoly>, MultiPoly)> {
    let field = system.field();
    let q = field.order().ok_or(Error::RequiresFiniteField)?;
    let one = MultiPoly::one(field, system.nvars());
    let gens = system.generators();
    let mut factors = alloc::vec![MultiPoly::zero(field, system.nvars()); gens.len()];
    let mut suffix = one.clone();
    for i in (0..gens.len()).rev() {
        let low = gens[i].pow(q - 2);
        let high = &low * &gens[i];
        factors[i] = &low * &suffix;
        suffix = &suffix * &(&one - &high);
    }
    Ok((factors, suffix))
}

/// `I_1..I_m`, unreduced. Satisfies `sum_i I_i P_i = 1 - prod_j (1 - P_j^{q-1})`
/// as an exact polynomial identity.
pub fn indicator_factors(system: &PolySystem) -> Result<Vec<MultiPoly>> {
    Ok(t1_parts(system)?.0)
}

/// `prod_j (1 - P_j^{q-1})`, which is 1 exactly on the common zeros.
pub fn zero_set_indicator(system: &PolySystem) -> Result<MultiPoly> {
    Ok(t1_parts(system)?.1)
}

/// `sum_i I_i P_i + prod_j (1 - P_j^{q-1}) - 1`; identically zero.
pub fn telescoping_residual(system: &PolySystem) -> Result<MultiPoly> {
    let (factors, product) = t1_parts(system)?;
    let mut acc = &product - &MultiPoly::one(system.field(), system.nvars());
    for (i, p) in factors.iter().zip(system.generators()) {
        acc = &acc + &(i * p);
    }
    Ok(acc)
}

/// Finite-field certificate `R_i = Q * I_i` with bound `m d (q-1)`, or
/// `m d (q-1) - d` when `Q = 1`.
pub fn certify_t1(system: &PolySystem, opts: &CheckOptions) -> Result<Certificate> {
    let q = system.field().order().ok_or(Error::RequiresFiniteField)?;
    let checked = opts.check_containment && check_containment(system, opts.cap)?;
    let factors = indicator_factors(system)?;
    let target = system.target();
    let cofactors: Vec<MultiPoly> = factors.iter().map(|i| target * i).collect();
    let (m, d) = (system.m() as u64, system.d());
    let general = m * d * (q - 1);
    let (mode, bound) = if target.is_one() { (Mode::Theorem1Weak, general - d) } else { (Mode::Theorem1, general) };
    Ok(Certificate::new(mode, cofactors, bound, checked))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub functional_ok: bool,
    /// Recomputed total degree of each supplied cofactor.
    pub degrees: Vec<Degree>,
    pub claimed_bound: u64,
    /// Indices of cofactors whose degree exceeds the claimed bound.
    pub degree_violations: Vec<usize>,
    pub failing_point: Option<Point>,
}

/// Checks `Q ≡_X sum_i R_i P_i` and every `deg R_i <= claimed_bound`.
pub fn verify(system: &PolySystem, cert: &Certificate, cap: u64) -> Result<VerifyReport> {
    if cert.cofactors.len() != system.m() {
        return Err(Error::Precondition(alloc::format!(
            "certificate has {} cofactors, system has {} generators",
            cert.cofactors.len(),
            system.m()
        )));
    }
    let field = system.field();
    let mut sum = MultiPoly::zero(field, system.nvars());
    for (r, p) in cert.cofactors.iter().zip(system.generators()) {
        sum = sum.checked_add(&r.checked_mul(p)?)?;
    }
    let domain: &EvalSet = system.domain();
    let failing_point = first_disagreement(system.target(), &sum, domain, cap)?;
    let degrees: Vec<Degree> = cert.cofactors.iter().map(MultiPoly::total_degree).collect();
    let degree_violations: Vec<usize> = degrees
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.within(cert.claimed_bound))
        .map(|(i, _)| i)
        .collect();
    let functional_ok = failing_point.is_none();
    Ok(VerifyReport {
        ok: functional_ok && degree_violations.is_empty(),
        functional_ok,
        degrees,
        claimed_bound: cert.claimed_bound,
        degree_violations,
        failing_point,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sys(f: &FieldDesc, gens: Vec<MultiPoly>, q: MultiPoly) -> PolySystem {
        PolySystem::new(f, gens[0].nvars(), gens, q, EvalSet::All).unwrap()
    }

    #[test]
    fn single_variable_generator() {
        let f = FieldDesc::prime(3).unwrap();
        let x = MultiPoly::var(&f, 1, 0);
        let s = sys(&f, vec![x.clone()], MultiPoly::one(&f, 1));
        assert_eq!(indicator_factors(&s).unwrap(), vec![x]);
    }

    #[test]
    fn x2_plus_1_over_gf3() {
        let f = FieldDesc::prime(3).unwrap();
        let x = MultiPoly::var(&f, 1, 0);
        let p = &x.pow(2) + &MultiPoly::one(&f, 1);
        let s = sys(&f, vec![p.clone()], MultiPoly::one(&f, 1));
        let factors = indicator_factors(&s).unwrap();
        assert_eq!(factors, vec![p.clone()]);
        let prod = &factors[0] * &p;
        assert!(crate::mpoly::func_equal(&prod, &MultiPoly::one(&f, 1), &EvalSet::All, 100).unwrap());
    }

    #[test]
    fn two_generators_over_gf2() {
        let f = FieldDesc::prime(2).unwrap();
        let x = MultiPoly::var(&f, 1, 0);
        let one = MultiPoly::one(&f, 1);
        let p2 = &x + &one;
        let s = sys(&f, vec![x.clone(), p2.clone()], one.clone());
        let factors = indicator_factors(&s).unwrap();
        // I_1 = 1 - (x + 1) = x over GF(2), I_2 = 1
        assert_eq!(factors, vec![x.clone(), one.clone()]);
        let lhs = &(&factors[0] * &x) + &(&factors[1] * &p2);
        let rhs = &one - &(&(&one - &x) * &(&one - &p2));
        assert_eq!(lhs, rhs);
        assert!(telescoping_residual(&s).unwrap().is_zero());
        let cert = certify_t1(&s, &CheckOptions::default()).unwrap();
        assert_eq!(cert.cofactors, vec![x, one]);
        assert!(verify(&s, &cert, 100).unwrap().ok);
    }

    #[test]
    fn weak_form_x2_plus_1_over_gf7() {
        let f = FieldDesc::prime(7).unwrap();
        let x = MultiPoly::var(&f, 1, 0);
        let one = MultiPoly::one(&f, 1);
        let p = &x.pow(2) + &one;
        let s = sys(&f, vec![p.clone()], one.clone());
        let cert = certify_t1(&s, &CheckOptions::default()).unwrap();
        assert_eq!(cert.mode, Mode::Theorem1Weak);
        assert_eq!(cert.cofactors[0], p.pow(5));
        assert_eq!(cert.raw_degrees, vec![Degree::Finite(10)]);
        assert_eq!(cert.claimed_bound, 10);
        assert_eq!(cert.reduced_degrees, Some(vec![Degree::Finite(6)]));
        assert!(cert.containment_checked);
        assert!(verify(&s, &cert, 100).unwrap().ok);

        let mut tampered = cert.clone();
        tampered.cofactors[0] = &tampered.cofactors[0] + &one;
        let report = verify(&s, &tampered, 100).unwrap();
        assert!(!report.ok && !report.functional_ok);
        assert_eq!(report.failing_point, Some(vec![f.zero()]));

        let mut tight = cert.clone();
        tight.claimed_bound = 9;
        let report = verify(&s, &tight, 100).unwrap();
        assert!(report.functional_ok && !report.ok);
        assert_eq!(report.degree_violations, vec![0]);
    }

    #[test]
    fn generator_equal_to_target() {
        for q in [2u64, 3, 4, 5, 7, 9] {
            let f = FieldDesc::finite(q).unwrap();
            let x = MultiPoly::var(&f, 1, 0);
            let s = sys(&f, vec![x.clone()], x.clone());
            let cert = certify_t1(&s, &CheckOptions::default()).unwrap();
            assert_eq!(cert.mode, Mode::Theorem1);
            assert_eq!(cert.cofactors[0], x.pow(q - 1));
            assert!(verify(&s, &cert, 100).unwrap().ok);
        }
    }

    #[test]
    fn containment_failure_reports_witness() {
        let f = FieldDesc::prime(5).unwrap();
        let x = MultiPoly::var(&f, 1, 0);
        let one = MultiPoly::one(&f, 1);
        // x^2 + 1 vanishes at 2 and 3 over GF(5), Q = 1 does not
        let s = sys(&f, vec![&x.pow(2) + &one], one);
        match certify_t1(&s, &CheckOptions::default()) {
            Err(Error::ContainmentFails { point, display }) => {
                assert_eq!(point, vec![f.from_i64(2)]);
                assert_eq!(display, "(2)");
            }
            other => panic!("unexpected {other:?}"),
        }
        let unchecked = certify_t1(&s, &CheckOptions { check_containment: false, ..Default::default() }).unwrap();
        assert!(!unchecked.containment_checked);
    }

    #[test]
    fn rejects_rationals() {
        let f = FieldDesc::rationals();
        let s = sys(&f, vec![MultiPoly::var(&f, 1, 0)], MultiPoly::one(&f, 1));
        assert_eq!(certify_t1(&s, &CheckOptions::default()).unwrap_err(), Error::RequiresFiniteField);
        assert_eq!(indicator_factors(&s).unwrap_err(), Error::RequiresFiniteField);
    }
}
