//! Sharpness instances: `x^2 + 1` over fields with `q = 3 mod 4`, the
//! `H^2 + 1` degree family, and the leading coefficient of the `1/x`
//! interpolant on `{-F..-1, 1..F}`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power, FieldDesc, FieldElem};
use crate::finitesatz::inverse_interpolant;
use crate::mpoly::{Degree, EvalSet, Monomial, MultiPoly};
use crate::oracle::{construction_degree, min_degree};
use crate::system::PolySystem;

/// Largest field on which the field-size demo runs the oracle.
pub const ORACLE_FIELD_LIMIT: u64 = 343;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundReport {
    pub instance: String,
    pub q: Option<u64>,
    pub p: Option<u64>,
    pub k: Option<u32>,
    /// `q - 2`
    pub t: Option<u64>,
    /// `(q - 1) / 2`
    pub b: Option<u64>,
    pub claimed_lower_bound: u64,
    pub normal_form_degree: Option<Degree>,
    /// Top coefficient of the reduced power, an element of the prime field.
    pub top_coefficient: Option<u64>,
    pub lucas_nonzero: Option<bool>,
    pub oracle_min_degree: Option<u64>,
    pub construction_degree: Option<Degree>,
    pub leading_coefficient: Option<BigRational>,
    pub leading_nonzero: Option<bool>,
}

impl LowerBoundReport {
    fn empty(instance: String, claimed: u64) -> Self {
        LowerBoundReport {
            instance,
            q: None,
            p: None,
            k: None,
            t: None,
            b: None,
            claimed_lower_bound: claimed,
            normal_form_degree: None,
            top_coefficient: None,
            lucas_nonzero: None,
            oracle_min_degree: None,
            construction_degree: None,
            leading_coefficient: None,
            leading_nonzero: None,
        }
    }
}

/// Whether `x^2 + 1` has no root in GF(q), by Euler's criterion on `-1`.
pub fn euler_no_root_check(q: u64) -> Result<bool> {
    let f = FieldDesc::finite(q)?;
    if f.characteristic() == Some(2) {
        return Ok(false);
    }
    let minus_one = f.neg(&f.one());
    Ok(!f.is_one(&f.pow(&minus_one, (q - 1) / 2)))
}

/// Base-`p` digits of `n`, least significant first (`[]` for 0).
pub fn base_p_digits(mut n: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % p);
        n /= p;
    }
    out
}

fn check_binomial(n: u64, m: u64, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m > n {
        return Err(Error::BinomialRange { n, m });
    }
    Ok(())
}

/// Lucas digit test: `binom(n, m) != 0 mod p` iff every base-`p` digit of
/// `m` is at most the matching digit of `n`.
pub fn lucas_nonzero(n: u64, m: u64, p: u64) -> Result<bool> {
    check_binomial(n, m, p)?;
    let dn = base_p_digits(n, p);
    let dm = base_p_digits(m, p);
    Ok(dm.iter().enumerate().all(|(i, &d)| d <= dn.get(i).copied().unwrap_or(0)))
}

fn mod_pow(mut b: u128, mut e: u128, p: u128) -> u128 {
    let mut acc = 1u128;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `binom(n, m) mod p` as the product of digit binomials.
pub fn binomial_mod_p(n: u64, m: u64, p: u64) -> Result<u64> {
    check_binomial(n, m, p)?;
    let p128 = p as u128;
    let dn = base_p_digits(n, p);
    let dm = base_p_digits(m, p);
    let mut acc = 1u128;
    for (i, &ni) in dn.iter().enumerate() {
        let mi = dm.get(i).copied().unwrap_or(0);
        if mi > ni {
            return Ok(0);
        }
        let (mut num, mut den) = (1u128, 1u128);
        for j in 0..mi as u128 {
            num = num * (ni as u128 - j) % p128;
            den = den * (j + 1) % p128;
        }
        acc = acc * num % p128 * mod_pow(den, p128 - 2, p128) % p128;
    }
    Ok(acc as u64)
}

fn field_size_precondition(q: u64) -> Result<(u64, u32)> {
    let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if p % 4 != 3 || k % 2 == 0 {
        return Err(Error::Precondition(format!("q = {q} needs p = 3 mod 4 and odd k")));
    }
    Ok((p, k))
}

fn weak_system(p: MultiPoly) -> Result<PolySystem> {
    let f = p.field().clone();
    let n = p.nvars();
    PolySystem::new(&f, n, vec![p], MultiPoly::one(&f, n), EvalSet::All)
}

/// `x^2 + 1` over GF(q): the reduced `P^{q-2}` has degree `q - 1` with top
/// coefficient `binom(q-2, (q-1)/2) mod p`. With `run_oracle` and
/// `q <= 343`, the oracle must also find minimal degree exactly `q - 1`.
pub fn demo_field_size(q: u64, run_oracle: bool, cap: u64) -> Result<LowerBoundReport> {
    let (p, k) = field_size_precondition(q)?;
    let f = FieldDesc::finite(q)?;
    let x = MultiPoly::var(&f, 1, 0);
    let poly = &x.pow(2) + &MultiPoly::one(&f, 1);
    let reduced = poly.pow(q - 2).normal_form()?;
    let (t, b) = (q - 2, (q - 1) / 2);

    let degree = reduced.total_degree();
    if degree != Degree::Finite(q - 1) {
        return Err(Error::Inconsistency(format!("reduced power has degree {degree}, expected {}", q - 1)));
    }
    let top = reduced.coefficient(&[(q - 1) as u32]);
    if !f.in_prime_subfield(&top) {
        return Err(Error::Inconsistency("top coefficient outside the prime field".into()));
    }
    let FieldElem::Finite(top_code) = top else { unreachable!() };
    let expected = binomial_mod_p(t, b, p)?;
    let lucas = lucas_nonzero(t, b, p)?;
    if top_code != expected || lucas != (expected != 0) || !lucas {
        return Err(Error::Inconsistency(format!(
            "top coefficient {top_code}, binomial {expected}, digit test {lucas}"
        )));
    }

    let mut report = LowerBoundReport::empty(String::from("x^2+1"), q - 1);
    report.q = Some(q);
    report.p = Some(p);
    report.k = Some(k);
    report.t = Some(t);
    report.b = Some(b);
    report.normal_form_degree = Some(degree);
    report.top_coefficient = Some(top_code);
    report.lucas_nonzero = Some(lucas);
    if run_oracle && q <= ORACLE_FIELD_LIMIT {
        let system = weak_system(poly)?;
        let r = min_degree(&system, q - 1, cap)?;
        if r.min_degree != Some(q - 1) {
            return Err(Error::Inconsistency(format!("oracle minimal degree {:?}, expected {}", r.min_degree, q - 1)));
        }
        report.oracle_min_degree = r.min_degree;
        report.construction_degree = r.construction_degree;
    }
    Ok(report)
}

/// Elementary symmetric polynomial of degree `k` in `n` variables.
pub fn elementary_symmetric(field: &FieldDesc, n: usize, k: usize) -> MultiPoly {
    fn rec(start: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for i in start..cur.len() {
            cur[i] = 1;
            rec(i + 1, left - 1, cur, out);
            cur[i] = 0;
        }
    }
    let mut monos = Vec::new();
    rec(0, k, &mut vec![0; n], &mut monos);
    let terms: Vec<_> = monos.into_iter().map(|m| (m, field.one())).collect();
    MultiPoly::from_terms(field, n, terms).expect("distinct monomials")
}

/// `H^2 + 1` with `H = e_k(x_1..x_n)`: claims minimal degree `>= k(q-1)`.
/// With `run_oracle` the whole space GF(q)^n is swept, which must fit `cap`.
pub fn demo_degree(n: usize, k: usize, q: u64, run_oracle: bool, cap: u64) -> Result<LowerBoundReport> {
    let (p, fk) = field_size_precondition(q)?;
    if n == 0 || k == 0 || k > n {
        return Err(Error::Precondition(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    let f = FieldDesc::finite(q)?;
    let h = elementary_symmetric(&f, n, k);
    let poly = &h.pow(2) + &MultiPoly::one(&f, n);
    let claimed = k as u64 * (q - 1);
    let mut report = LowerBoundReport::empty(format!("H^2+1, H = e_{k} in {n} variables"), claimed);
    report.q = Some(q);
    report.p = Some(p);
    report.k = Some(fk);
    let system = weak_system(poly)?;
    if run_oracle {
        let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(Error::CapExceeded { cap });
        }
        let r = min_degree(&system, n as u64 * (q - 1), cap)?;
        match r.min_degree {
            Some(d) if d >= claimed => {}
            other => {
                return Err(Error::Inconsistency(format!("oracle minimal degree {other:?} below claimed {claimed}")))
            }
        }
        report.oracle_min_degree = r.min_degree;
        report.construction_degree = r.construction_degree;
    } else {
        report.construction_degree = construction_degree(&system, cap);
    }
    Ok(report)
}

/// Closed form `(-1)^{F+1} / (F!)^2` for the top coefficient of the degree
/// `2F - 1` interpolant of `1/x` on `{-F..-1, 1..F}`.
pub fn interp_closed_form(big_f: u64) -> BigRational {
    let mut fact = BigInt::one();
    for i in 2..=big_f {
        fact *= i;
    }
    let sign = if big_f % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    BigRational::new(sign, &fact * &fact)
}

/// Computes the top coefficient by Lagrange interpolation and by the
/// divided-difference sum, and checks both against the closed form.
pub fn interp_leading_coeff(big_f: u64) -> Result<BigRational> {
    if big_f < 1 {
        return Err(Error::Precondition(String::from("F must be at least 1")));
    }
    let f = FieldDesc::rationals();
    let fi = big_f as i64;
    let xs: Vec<i64> = (-fi..=fi).filter(|&v| v != 0).collect();
    let ys: Vec<FieldElem> = xs.iter().map(|&v| f.from_i64(v)).collect();
    let interp = inverse_interpolant(&f, &ys)?;
    let top_deg = 2 * big_f - 1;
    let FieldElem::Rational(lagrange) = interp.coefficient(&[top_deg as u32]) else { unreachable!() };
    if interp.total_degree() != Degree::Finite(top_deg) {
        return Err(Error::Inconsistency(format!("interpolant has degree {}", interp.total_degree())));
    }

    // sum_j y_j / prod_{i != j} (x_j - x_i)
    let mut divided = BigRational::zero();
    for &xj in &xs {
        let mut denom = BigInt::from(xj);
        for &xi in &xs {
            if xi != xj {
                denom *= xj - xi;
            }
        }
        divided += BigRational::new(BigInt::one(), denom);
    }
    let closed = interp_closed_form(big_f);
    if lagrange != closed || divided != closed {
        return Err(Error::Inconsistency(format!("leading coefficients {lagrange}, {divided}, {closed}")));
    }
    Ok(closed)
}

pub fn demo_interp(big_f: u64) -> Result<LowerBoundReport> {
    let c = interp_leading_coeff(big_f)?;
    let mut report = LowerBoundReport::empty(format!("1/x on {{-{big_f}..-1, 1..{big_f}}}"), 2 * big_f - 1);
    report.leading_nonzero = Some(!c.is_zero());
    report.leading_coefficient = Some(c);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::DEFAULT_ENUM_CAP;

    #[test]
    fn euler_examples() {
        assert!(euler_no_root_check(7).unwrap());
        assert!(!euler_no_root_check(5).unwrap());
        assert!(euler_no_root_check(27).unwrap());
        assert!(!euler_no_root_check(2).unwrap());
        assert!(!euler_no_root_check(9).unwrap());
        assert_eq!(euler_no_root_check(6).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn lucas_examples() {
        assert!(lucas_nonzero(25, 13, 3).unwrap());
        assert_eq!(base_p_digits(25, 3), vec![1, 2, 2]);
        assert_eq!(base_p_digits(13, 3), vec![1, 1, 1]);
        assert!(lucas_nonzero(5, 3, 7).unwrap());
        assert_eq!(binomial_mod_p(5, 3, 7).unwrap(), 3);
        assert!(!lucas_nonzero(7, 1, 7).unwrap());
        assert_eq!(lucas_nonzero(1, 2, 3).unwrap_err(), Error::BinomialRange { n: 1, m: 2 });
        assert_eq!(lucas_nonzero(5, 2, 4).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn field_size_examples() {
        let r = demo_field_size(7, true, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.normal_form_degree, Some(Degree::Finite(6)));
        assert_eq!(r.top_coefficient, Some(3));
        assert_eq!(r.oracle_min_degree, Some(6));
        let r = demo_field_size(3, true, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.normal_form_degree, Some(Degree::Finite(2)));
        let r = demo_field_size(27, false, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.normal_form_degree, Some(Degree::Finite(26)));
        assert_eq!(r.lucas_nonzero, Some(true));
        assert!(matches!(demo_field_size(5, false, 10).unwrap_err(), Error::Precondition(_)));
        assert!(matches!(demo_field_size(9, false, 10).unwrap_err(), Error::Precondition(_)));
    }

    #[test]
    fn degree_examples() {
        let r = demo_degree(2, 2, 3, true, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.claimed_lower_bound, 4);
        assert!(r.oracle_min_degree.unwrap() >= 4);
        let r = demo_degree(1, 1, 3, true, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.claimed_lower_bound, 2);
        assert_eq!(r.oracle_min_degree, Some(2));
        let r = demo_degree(2, 1, 7, true, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.claimed_lower_bound, 6);
        assert!(r.oracle_min_degree.unwrap() >= 6);
        assert_eq!(demo_degree(3, 1, 7, true, 100).unwrap_err(), Error::CapExceeded { cap: 100 });
    }

    #[test]
    fn interp_examples() {
        assert_eq!(interp_leading_coeff(1).unwrap(), BigRational::one());
        assert_eq!(interp_leading_coeff(2).unwrap(), crate::field::rat(-1, 4));
        assert_eq!(interp_leading_coeff(3).unwrap(), crate::field::rat(1, 36));
        assert!(interp_leading_coeff(0).is_err());
    }
}
