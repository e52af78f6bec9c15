//! Exact arithmetic over GF(p), GF(p^k) = GF(p)[t]/(f(t)) and the rationals.
//!
//! A [`FieldDesc`] is a cheap, shareable handle; elements ([`FieldElem`]) do
//! not carry their field, so every operation goes through the descriptor.
//! Extension elements are coefficient vectors over GF(p), stored packed as
//! the base-p integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 32;

/// Fields up to this order get precomputed add/mul tables.
const TABLE_LIMIT: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime,
    Extension,
    Rationals,
}

/// A field element in canonical form.
///
/// The derived order is the canonical element order used for sorting value
/// sets and points: by code for finite fields, by value for rationals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldElem {
    /// Residue in `[0, p)` or packed coefficient code in `[0, q)`.
    Finite(u64),
    /// Lowest terms with positive denominator (guaranteed by `BigRational`).
    Rational(BigRational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

struct FieldInner {
    kind: FieldKind,
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus, low degree first, length k + 1 (extension only).
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

#[derive(Clone)]
pub struct FieldDesc {
    inner: Arc<FieldInner>,
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.kind == other.inner.kind
                && self.inner.p == other.inner.p
                && self.inner.k == other.inner.k
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldDesc {}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.inner.kind {
            FieldKind::Prime => write!(f, "GF({})", self.inner.p),
            FieldKind::Rationals => f.write_str("QQ"),
            FieldKind::Extension => {
                write!(f, "GF({}^{}) mod ", self.inner.p, self.inner.k)?;
                write_t_poly(f, &self.inner.modulus)
            }
        }
    }
}

/// Deterministic primality test by trial division (fine for p < 2^32).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q = p^k` with `p` prime, or `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p <= q / p && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

impl FieldDesc {
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_ORDER {
            return Err(Error::FieldTooLarge);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::build(FieldKind::Prime, p, 1, Vec::new()))
    }

    /// GF(p^k) for `k >= 2`. Without a modulus the lexicographically least
    /// monic irreducible of degree `k` is chosen (coefficients compared from
    /// the constant term upward).
    pub fn extension(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if p > MAX_ORDER {
            return Err(Error::FieldTooLarge);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 2 {
            return Err(Error::InvalidDegree(k));
        }
        p.checked_pow(k).filter(|&q| q <= MAX_ORDER).ok_or(Error::FieldTooLarge)?;
        let modulus = match modulus {
            Some(m) => {
                let m = trim(m.iter().map(|&c| c % p).collect());
                if m.len() != k as usize + 1 {
                    return Err(Error::InvalidModulus(alloc::format!(
                        "expected degree {k}, got degree {}",
                        m.len().saturating_sub(1)
                    )));
                }
                if m[k as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus is not monic".into()));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::InvalidModulus("modulus is reducible".into()));
                }
                m
            }
            None => least_irreducible(p, k),
        };
        Ok(Self::build(FieldKind::Extension, p, k, modulus))
    }

    pub fn rationals() -> Self {
        Self::build(FieldKind::Rationals, 0, 1, Vec::new())
    }

    /// Generic constructor. `k = 1` with kind `Extension` is rejected.
    pub fn make_field(kind: FieldKind, p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Self> {
        match kind {
            FieldKind::Rationals => Ok(Self::rationals()),
            FieldKind::Prime => {
                if k != 1 {
                    return Err(Error::InvalidDegree(k));
                }
                if modulus.is_some() {
                    return Err(Error::InvalidModulus("prime fields take no modulus".into()));
                }
                Self::prime(p)
            }
            FieldKind::Extension => Self::extension(p, k, modulus),
        }
    }

    /// GF(q) for a prime power `q`, with the default modulus when `q` is not prime.
    pub fn finite(q: u64) -> Result<Self> {
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge);
        }
        match prime_power(q) {
            Some((p, 1)) => Self::prime(p),
            Some((p, k)) => Self::extension(p, k, None),
            None => Err(Error::NotPrimePower(q)),
        }
    }

    fn build(kind: FieldKind, p: u64, k: u32, modulus: Vec<u64>) -> Self {
        let q = if kind == FieldKind::Rationals { 0 } else { p.pow(k) };
        let mut inner = FieldInner { kind, p, k, q, modulus, tables: None };
        if kind != FieldKind::Rationals && q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Self { inner: Arc::new(inner) }
    }

    pub fn kind(&self) -> FieldKind {
        self.inner.kind
    }

    pub fn is_finite(&self) -> bool {
        self.inner.kind != FieldKind::Rationals
    }

    /// Characteristic `p`; `None` for the rationals.
    pub fn characteristic(&self) -> Option<u64> {
        self.is_finite().then_some(self.inner.p)
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    /// Cardinality `q = p^k`; `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        self.is_finite().then_some(self.inner.q)
    }

    /// Monic modulus coefficients, constant term first (empty unless extension).
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElem {
        match self.inner.kind {
            FieldKind::Rationals => FieldElem::Rational(BigRational::zero()),
            _ => FieldElem::Finite(0),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self.inner.kind {
            FieldKind::Rationals => FieldElem::Rational(BigRational::one()),
            _ => FieldElem::Finite(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        match self.inner.kind {
            FieldKind::Rationals => FieldElem::Rational(BigRational::from_integer(v.into())),
            _ => FieldElem::Finite(v.rem_euclid(self.inner.p as i64) as u64),
        }
    }

    /// Image of an integer under the canonical map Z -> F.
    pub fn from_bigint(&self, v: &BigInt) -> FieldElem {
        match self.inner.kind {
            FieldKind::Rationals => FieldElem::Rational(BigRational::from_integer(v.clone())),
            _ => {
                let r = v.mod_floor(&BigInt::from(self.inner.p));
                FieldElem::Finite(r.to_u64().expect("residue fits in u64"))
            }
        }
    }

    /// `num / den` in the rationals.
    pub fn rational(&self, num: BigInt, den: BigInt) -> Result<FieldElem> {
        if self.is_finite() {
            return Err(Error::FieldMismatch);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElem::Rational(BigRational::new(num, den)))
    }

    /// Extension element from its coefficient vector (constant term first).
    /// For prime fields a single coefficient is accepted.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if !self.is_finite() {
            return Err(Error::RequiresFiniteField);
        }
        let p = self.inner.p;
        if coeffs.len() > self.inner.k as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElem::Finite(pack(coeffs, p)))
    }

    /// Coefficient vector of a finite-field element, length k, constant term first.
    pub fn coeffs(&self, a: &FieldElem) -> Result<Vec<u64>> {
        match a {
            FieldElem::Finite(c) if self.contains(a) => {
                let mut out = vec![0; self.inner.k as usize];
                unpack(*c, self.inner.p, &mut out);
                Ok(out)
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    /// The generator `t` of an extension field.
    pub fn generator(&self) -> Result<FieldElem> {
        match self.inner.kind {
            FieldKind::Extension => Ok(FieldElem::Finite(self.inner.p)),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn contains(&self, a: &FieldElem) -> bool {
        match (a, self.is_finite()) {
            (FieldElem::Finite(c), true) => *c < self.inner.q,
            (FieldElem::Rational(_), false) => true,
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Finite(c) => *c == 0,
            FieldElem::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Finite(c) => *c == 1,
            FieldElem::Rational(r) => r.is_one(),
        }
    }

    /// True when `a` lies in the prime subfield (always for GF(p) and QQ).
    pub fn in_prime_subfield(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Finite(c) => *c < self.inner.p,
            FieldElem::Rational(_) => true,
        }
    }

    /// Checked arithmetic: validates membership and division by zero.
    pub fn arith(&self, a: &FieldElem, b: &FieldElem, op: ArithOp) -> Result<FieldElem> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::FieldMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (a, b) {
            (FieldElem::Finite(x), FieldElem::Finite(y)) => FieldElem::Finite(self.fadd(*x, *y)),
            (FieldElem::Rational(x), FieldElem::Rational(y)) => FieldElem::Rational(x + y),
            _ => panic!("field mismatch"),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (a, b) {
            (FieldElem::Finite(x), FieldElem::Finite(y)) => FieldElem::Finite(self.fsub(*x, *y)),
            (FieldElem::Rational(x), FieldElem::Rational(y)) => FieldElem::Rational(x - y),
            _ => panic!("field mismatch"),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (a, b) {
            (FieldElem::Finite(x), FieldElem::Finite(y)) => FieldElem::Finite(self.fmul(*x, *y)),
            (FieldElem::Rational(x), FieldElem::Rational(y)) => FieldElem::Rational(x * y),
            _ => panic!("field mismatch"),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match a {
            FieldElem::Finite(x) => FieldElem::Finite(self.fneg(*x)),
            FieldElem::Rational(x) => FieldElem::Rational(-x),
        }
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            FieldElem::Finite(x) => FieldElem::Finite(self.finv(*x)),
            FieldElem::Rational(x) => FieldElem::Rational(x.recip()),
        })
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^e` by square-and-multiply, with `0^0 = 1`.
    pub fn pow(&self, a: &FieldElem, e: u64) -> FieldElem {
        match a {
            FieldElem::Finite(x) => FieldElem::Finite(self.fpow(*x, e)),
            FieldElem::Rational(x) => {
                let mut acc = BigRational::one();
                let mut base = x.clone();
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc *= &base;
                    }
                    e >>= 1;
                    if e > 0 {
                        base = &base * &base;
                    }
                }
                FieldElem::Rational(acc)
            }
        }
    }

    /// All elements in canonical order (finite fields only).
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElem>> {
        if !self.is_finite() {
            return Err(Error::RequiresFiniteField);
        }
        Ok((0..self.inner.q).map(FieldElem::Finite))
    }

    /// Display adapter: residues, polynomials in `t`, or `n/d`.
    pub fn display<'a>(&'a self, a: &'a FieldElem) -> ElemDisplay<'a> {
        ElemDisplay { field: self, elem: a }
    }

    // Raw finite-field arithmetic on codes. Callers guarantee a finite field.

    #[inline]
    pub(crate) fn fadd(&self, x: u64, y: u64) -> u64 {
        let inner = &*self.inner;
        if let Some(t) = &inner.tables {
            return t.add[(x * inner.q + y) as usize] as u64;
        }
        if inner.k == 1 {
            let s = x + y;
            if s >= inner.p { s - inner.p } else { s }
        } else {
            digitwise(x, y, inner.p, inner.k, |a, b, p| (a + b) % p)
        }
    }

    #[inline]
    pub(crate) fn fneg(&self, x: u64) -> u64 {
        let inner = &*self.inner;
        if let Some(t) = &inner.tables {
            return t.neg[x as usize] as u64;
        }
        if inner.k == 1 {
            if x == 0 { 0 } else { inner.p - x }
        } else {
            digitwise(x, 0, inner.p, inner.k, |a, _, p| (p - a) % p)
        }
    }

    #[inline]
    pub(crate) fn fsub(&self, x: u64, y: u64) -> u64 {
        self.fadd(x, self.fneg(y))
    }

    #[inline]
    pub(crate) fn fmul(&self, x: u64, y: u64) -> u64 {
        let inner = &*self.inner;
        if let Some(t) = &inner.tables {
            return t.mul[(x * inner.q + y) as usize] as u64;
        }
        if inner.k == 1 {
            x * y % inner.p
        } else {
            ext_mul(x, y, inner.p, &inner.modulus)
        }
    }

    pub(crate) fn finv(&self, x: u64) -> u64 {
        let inner = &*self.inner;
        if let Some(t) = &inner.tables {
            return t.inv[x as usize] as u64;
        }
        if inner.k == 1 {
            mod_inverse(x, inner.p)
        } else {
            self.fpow(x, inner.q - 2)
        }
    }

    pub(crate) fn fpow(&self, x: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.fmul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.fmul(base, base);
            }
        }
        acc
    }
}

pub struct ElemDisplay<'a> {
    field: &'a FieldDesc,
    elem: &'a FieldElem,
}

impl fmt::Display for ElemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.elem {
            FieldElem::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElem::Finite(c) => {
                let inner = &*self.field.inner;
                if inner.k == 1 {
                    write!(f, "{c}")
                } else {
                    let mut digits = vec![0; inner.k as usize];
                    unpack(*c, inner.p, &mut digits);
                    write_t_poly(f, &digits)
                }
            }
        }
    }
}

/// Writes a coefficient vector (constant first) as a polynomial in `t`,
/// highest degree first, e.g. `2*t^2+1`.
fn write_t_poly(f: &mut fmt::Formatter<'_>, coeffs: &[u64]) -> fmt::Result {
    let mut first = true;
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !first {
            f.write_str("+")?;
        }
        first = false;
        match (i, c) {
            (0, c) => write!(f, "{c}")?,
            (1, 1) => f.write_str("t")?,
            (1, c) => write!(f, "{c}*t")?,
            (i, 1) => write!(f, "t^{i}")?,
            (i, c) => write!(f, "{c}*t^{i}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn pack(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn unpack(mut code: u64, p: u64, out: &mut [u64]) {
    for d in out.iter_mut() {
        *d = code % p;
        code /= p;
    }
}

fn digitwise(x: u64, y: u64, p: u64, k: u32, f: impl Fn(u64, u64, u64) -> u64) -> u64 {
    let (mut x, mut y) = (x, y);
    let mut out = 0u64;
    let mut scale = 1u64;
    for _ in 0..k {
        out += f(x % p, y % p, p) * scale;
        x /= p;
        y /= p;
        scale = scale.wrapping_mul(p);
    }
    out
}

fn ext_mul(x: u64, y: u64, p: u64, modulus: &[u64]) -> u64 {
    let k = modulus.len() - 1;
    let mut a = [0u64; 32];
    let mut b = [0u64; 32];
    unpack(x, p, &mut a[..k]);
    unpack(y, p, &mut b[..k]);
    let mut prod = [0u64; 64];
    for i in 0..k {
        if a[i] == 0 {
            continue;
        }
        for j in 0..k {
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        }
    }
    // reduce by the monic modulus from the top
    for d in (k..2 * k - 1).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for i in 0..k {
            let sub = c * modulus[i] % p;
            prod[d - k + i] = (prod[d - k + i] + p - sub) % p;
        }
    }
    pack(&prod[..k], p)
}

fn mod_inverse(x: u64, p: u64) -> u64 {
    let (mut a, mut b) = (x as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while b != 0 {
        let q = a / b;
        (a, b) = (b, a - q * b);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p as i128) as u64
}

fn build_tables(inner: &FieldInner) -> Tables {
    let q = inner.q;
    let p = inner.p;
    let (add, mul): (Vec<u32>, Vec<u32>) = (0..q * q)
        .map(|idx| {
            let (x, y) = (idx / q, idx % q);
            if inner.k == 1 {
                (((x + y) % p) as u32, (x * y % p) as u32)
            } else {
                (
                    digitwise(x, y, p, inner.k, |a, b, p| (a + b) % p) as u32,
                    ext_mul(x, y, p, &inner.modulus) as u32,
                )
            }
        })
        .unzip();
    let neg = (0..q)
        .map(|x| (0..q).find(|&y| add[(x * q + y) as usize] == 0).unwrap() as u32)
        .collect();
    let inv = (0..q)
        .map(|x| {
            if x == 0 {
                0
            } else {
                (1..q).find(|&y| mul[(x * q + y) as usize] == 1).unwrap() as u32
            }
        })
        .collect();
    Tables { add, mul, neg, inv }
}

// Dense univariate polynomials over GF(p), constant term first, used for
// modulus validation and selection.

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = mod_inverse(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for (slot, &bi) in r[dr - db..].iter_mut().zip(&b) {
            *slot = (*slot + p - c * bi % p) % p;
        }
        r = trim(r);
    }
    r
}

/// Irreducibility over GF(p) of a monic polynomial of degree >= 1: no roots,
/// and no monic factor of degree 2..=deg/2 (by trial division).
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    // roots
    for x in 0..p {
        let v = f.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p);
        if v == 0 {
            return false;
        }
    }
    for deg in 2..=k / 2 {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let mut g = vec![0u64; deg + 1];
            unpack(code, p, &mut g[..deg]);
            g[deg] = 1;
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `k` over GF(p),
/// comparing coefficient vectors from the constant term upward.
pub fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let total = p.pow(k as u32);
    for idx in 0..total {
        // the constant term is the most significant digit of idx
        let mut f = vec![0u64; k + 1];
        let mut rest = idx;
        for i in (0..k).rev() {
            f[i] = rest % p;
            rest /= p;
        }
        f[k] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF(p)")
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// True for negative rationals; finite-field elements have no sign.
pub fn is_negative(a: &FieldElem) -> bool {
    matches!(a, FieldElem::Rational(r) if r.is_negative())
}
