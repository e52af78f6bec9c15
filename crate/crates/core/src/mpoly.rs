//! Sparse multivariate polynomials over a [`FieldDesc`].
//!
//! Terms are kept sorted ascending in graded lexicographic order with no
//! zero coefficients, so structural equality is polynomial equality.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldDesc, FieldElem};

/// Default bound on the number of points enumerated for `X = all`.
pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

/// Largest dense accumulator used by multiplication over finite fields.
const DENSE_LIMIT: u64 = 1 << 24;

pub type Point = Vec<FieldElem>;

/// Exponent vector; ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree with `-inf` for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// `deg <= bound`; vacuous for `-inf`.
    pub fn within(self, bound: u64) -> bool {
        self <= Degree::Finite(bound)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: FieldDesc,
    nvars: usize,
    terms: Vec<(Monomial, FieldElem)>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}; {}]({})", self.field, self.nvars, self.display(&[]))
    }
}

impl MultiPoly {
    pub fn zero(field: &FieldDesc, nvars: usize) -> Self {
        MultiPoly { field: field.clone(), nvars, terms: Vec::new() }
    }

    pub fn one(field: &FieldDesc, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn constant(field: &FieldDesc, nvars: usize, c: FieldElem) -> Self {
        let mut p = Self::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.push((Monomial::one(nvars), c));
        }
        p
    }

    /// The variable `x_i` (zero-based).
    pub fn var(field: &FieldDesc, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field, Monomial(e), field.one())
    }

    pub fn monomial(field: &FieldDesc, m: Monomial, c: FieldElem) -> Self {
        let nvars = m.0.len();
        let mut p = Self::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms(
        field: &FieldDesc,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElem)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        for (m, c) in terms {
            if m.0.len() != nvars {
                return Err(Error::NvarsMismatch(m.0.len(), nvars));
            }
            if !field.contains(&c) {
                return Err(Error::FieldMismatch);
            }
            match acc.get_mut(&m) {
                Some(slot) => *slot = field.add(slot, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Ok(Self::from_sorted_map(field, nvars, acc))
    }

    fn from_sorted_map(field: &FieldDesc, nvars: usize, acc: BTreeMap<Monomial, FieldElem>) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        MultiPoly { field: field.clone(), nvars, terms }
    }

    /// Univariate polynomial from dense coefficients, constant term first.
    pub fn from_univariate(field: &FieldDesc, coeffs: &[FieldElem]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(i, c)| (Monomial(vec![i as u32]), c.clone()))
            .collect();
        MultiPoly { field: field.clone(), nvars: 1, terms }
    }

    /// Dense coefficients of a univariate polynomial, constant term first.
    pub fn univariate_coeffs(&self) -> Result<Vec<FieldElem>> {
        if self.nvars != 1 {
            return Err(Error::NotUnivariate);
        }
        let len = self.terms.last().map_or(0, |(m, _)| m.0[0] as usize + 1);
        let mut out = vec![self.field.zero(); len];
        for (m, c) in &self.terms {
            out[m.0[0] as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.field.is_one(&self.terms[0].1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn coefficient(&self, exponents: &[u32]) -> FieldElem {
        self.terms
            .iter()
            .find(|(m, _)| m.0 == exponents)
            .map_or_else(|| self.field.zero(), |(_, c)| c.clone())
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<&(Monomial, FieldElem)> {
        self.terms.last()
    }

    pub fn total_degree(&self) -> Degree {
        self.terms.last().map_or(Degree::NegInfinity, |(m, _)| Degree::Finite(m.degree()))
    }

    /// Largest exponent of each variable.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.nvars];
        for (m, _) in &self.terms {
            for (o, &e) in out.iter_mut().zip(&m.0) {
                *o = (*o).max(e);
            }
        }
        out
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        Ok(self.mul_impl(other))
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let f = &self.field;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let rhs = |c: &FieldElem| if negate { f.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push((b[j].0.clone(), rhs(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { f.sub(&a[i].1, &b[j].1) } else { f.add(&a[i].1, &b[j].1) };
                    if !f.is_zero(&c) {
                        terms.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(a[i..].iter().cloned());
        terms.extend(b[j..].iter().map(|(m, c)| (m.clone(), rhs(c))));
        MultiPoly { field: f.clone(), nvars: self.nvars, terms }
    }

    fn mul_impl(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(&self.field, self.nvars);
        }
        if self.field.is_finite() {
            if let Some(p) = self.mul_dense(other) {
                return p;
            }
        }
        let f = &self.field;
        let mut acc: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = f.mul(ca, cb);
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(slot) => *slot = f.add(slot, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_sorted_map(f, self.nvars, acc)
    }

    /// Multiplication into a dense accumulator over the exponent box, used
    /// when the box is not much larger than the number of term products.
    fn mul_dense(&self, other: &MultiPoly) -> Option<MultiPoly> {
        let f = &self.field;
        let ea = self.max_exponents();
        let eb = other.max_exponents();
        let mut strides = Vec::with_capacity(self.nvars);
        let mut size: u64 = 1;
        for (a, b) in ea.iter().zip(&eb) {
            strides.push(size);
            size = size.checked_mul(*a as u64 + *b as u64 + 1)?;
        }
        let products = (self.terms.len() as u64).saturating_mul(other.terms.len() as u64);
        if size > DENSE_LIMIT || size > products.saturating_mul(16).max(4096) {
            return None;
        }
        let key = |m: &Monomial| -> usize {
            m.0.iter().zip(&strides).map(|(&e, &s)| e as u64 * s).sum::<u64>() as usize
        };
        let code = |c: &FieldElem| match c {
            FieldElem::Finite(v) => *v,
            FieldElem::Rational(_) => unreachable!(),
        };
        let bkeys: Vec<(usize, u64)> = other.terms.iter().map(|(m, c)| (key(m), code(c))).collect();
        let mut acc = vec![0u64; size as usize];
        for (ma, ca) in &self.terms {
            let ka = key(ma);
            let ca = code(ca);
            for &(kb, cb) in &bkeys {
                let slot = &mut acc[ka + kb];
                *slot = f.fadd(*slot, f.fmul(ca, cb));
            }
        }
        let mut terms: Vec<(Monomial, FieldElem)> = acc
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(idx, &c)| {
                let mut rest = idx as u64;
                let mut e = vec![0u32; self.nvars];
                for v in (0..self.nvars).rev() {
                    e[v] = (rest / strides[v]) as u32;
                    rest %= strides[v];
                }
                (Monomial(e), FieldElem::Finite(c))
            })
            .collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Some(MultiPoly { field: f.clone(), nvars: self.nvars, terms })
    }

    pub fn scale(&self, c: &FieldElem) -> MultiPoly {
        let f = &self.field;
        if f.is_zero(c) {
            return MultiPoly::zero(f, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect();
        MultiPoly { field: f.clone(), nvars: self.nvars, terms }
    }

    /// `self^e` with `p^0 = 1`.
    pub fn pow(&self, mut e: u64) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.field, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: point.len() });
        }
        if point.iter().any(|x| !self.field.contains(x)) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.eval_unchecked(point))
    }

    /// Evaluation at a point already known to match field and dimension.
    pub(crate) fn eval_unchecked(&self, point: &[FieldElem]) -> FieldElem {
        let f = &self.field;
        if let (true, Some(pt)) = (f.is_finite(), finite_codes(point)) {
            let maxe = self.max_exponents();
            let tables: Vec<Vec<u64>> = pt
                .iter()
                .zip(&maxe)
                .map(|(&x, &e)| {
                    let mut t = Vec::with_capacity(e as usize + 1);
                    let mut acc = 1u64;
                    for _ in 0..=e {
                        t.push(acc);
                        acc = f.fmul(acc, x);
                    }
                    t
                })
                .collect();
            let mut sum = 0u64;
            for (m, c) in &self.terms {
                let FieldElem::Finite(mut v) = c else { unreachable!() };
                for (t, &e) in tables.iter().zip(&m.0) {
                    if v == 0 {
                        break;
                    }
                    v = f.fmul(v, t[e as usize]);
                }
                sum = f.fadd(sum, v);
            }
            return FieldElem::Finite(sum);
        }
        let mut sum = f.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v = f.mul(&v, &f.pow(x, e as u64));
                }
            }
            sum = f.add(&sum, &v);
        }
        sum
    }

    /// Canonical representative modulo the field equations `x_i^q - x_i`:
    /// every exponent `e >= 1` becomes `((e - 1) mod (q - 1)) + 1`.
    pub fn normal_form(&self) -> Result<MultiPoly> {
        let q = self.field.order().ok_or(Error::RequiresFiniteField)?;
        let period = q - 1;
        let reduce = |e: u32| -> u32 {
            if e == 0 {
                0
            } else {
                (((e as u64 - 1) % period) + 1) as u32
            }
        };
        let terms = self.terms.iter().map(|(m, c)| (Monomial(m.0.iter().map(|&e| reduce(e)).collect()), c.clone()));
        Self::from_terms(&self.field, self.nvars, terms)
    }

    /// Renders with the given variable names (defaults to `x1..xn`).
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

fn finite_codes(point: &[FieldElem]) -> Option<Vec<u64>> {
    point
        .iter()
        .map(|x| match x {
            FieldElem::Finite(v) => Some(*v),
            FieldElem::Rational(_) => None,
        })
        .collect()
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    /// Panics on field or arity mismatch; see [`MultiPoly::checked_add`].
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let f = &self.field;
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect();
        MultiPoly { field: f.clone(), nvars: self.nvars, terms }
    }
}

pub fn poly_arith(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
    match op {
        PolyOp::Add => a.checked_add(b),
        PolyOp::Sub => a.checked_sub(b),
        PolyOp::Mul => a.checked_mul(b),
    }
}

/// `u(inner)` for a univariate `u`, by Horner's scheme.
pub fn compose_univariate(u: &MultiPoly, inner: &MultiPoly) -> Result<MultiPoly> {
    if u.field != inner.field {
        return Err(Error::FieldMismatch);
    }
    let coeffs = u.univariate_coeffs()?;
    let f = &inner.field;
    let mut acc = MultiPoly::zero(f, inner.nvars);
    for c in coeffs.iter().rev() {
        acc = acc.mul_impl(inner);
        acc = acc.merge(&MultiPoly::constant(f, inner.nvars, c.clone()), false);
    }
    Ok(acc)
}

pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    /// Highest graded-lex term first. Multi-term extension coefficients are
    /// parenthesized, e.g. `(t+1)*x1^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        let field = &p.field;
        if p.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in p.terms.iter().rev().enumerate() {
            let negative = crate::field::is_negative(c);
            let mag = if negative { field.neg(c) } else { c.clone() };
            if negative {
                f.write_str("-")?;
            } else if idx > 0 {
                f.write_str("+")?;
            }
            let unit = field.is_one(&mag);
            let mut wrote = false;
            if m.is_one() || !unit {
                let text = alloc::format!("{}", field.display(&mag));
                if text.contains('+') {
                    write!(f, "({text})")?;
                } else {
                    f.write_str(&text)?;
                }
                wrote = true;
            }
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    f.write_str("*")?;
                }
                wrote = true;
                match self.names.get(v) {
                    Some(name) => f.write_str(name)?,
                    None => write!(f, "x{}", v + 1)?,
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// An evaluation set: all of `F^n` or an explicit list of distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalSet {
    All,
    Points(Vec<Point>),
}

impl EvalSet {
    /// Validated explicit point list.
    pub fn explicit(field: &FieldDesc, nvars: usize, points: Vec<Point>) -> Result<Self> {
        for pt in &points {
            if pt.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: pt.len() });
            }
            if pt.iter().any(|x| !field.contains(x)) {
                return Err(Error::FieldMismatch);
            }
        }
        let mut sorted: Vec<&Point> = points.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint);
        }
        Ok(EvalSet::Points(points))
    }

    pub fn is_all(&self) -> bool {
        matches!(self, EvalSet::All)
    }

    /// Number of points, or `None` when it does not fit in `u64` or the set
    /// is `all` over an infinite field.
    pub fn size(&self, field: &FieldDesc, nvars: usize) -> Option<u64> {
        match self {
            EvalSet::Points(p) => Some(p.len() as u64),
            EvalSet::All => field.order()?.checked_pow(nvars as u32),
        }
    }

    /// Materializes the points: stored order for explicit sets,
    /// lexicographic for `all`.
    pub fn points(&self, field: &FieldDesc, nvars: usize, cap: u64) -> Result<Vec<Point>> {
        match self {
            EvalSet::Points(p) => Ok(p.clone()),
            EvalSet::All => {
                let q = field.order().ok_or(Error::InfiniteDomain)?;
                let size = self.size(field, nvars).filter(|&s| s <= cap).ok_or(Error::CapExceeded { cap })?;
                let mut out = Vec::with_capacity(size as usize);
                let mut digits = vec![0u64; nvars];
                for _ in 0..size {
                    out.push(digits.iter().map(|&d| FieldElem::Finite(d)).collect());
                    for d in digits.iter_mut().rev() {
                        *d += 1;
                        if *d < q {
                            break;
                        }
                        *d = 0;
                    }
                }
                Ok(out)
            }
        }
    }
}

/// First point of `X` where `a` and `b` differ. For `X = all` the answer is
/// cross-checked against normal-form equality of `a - b`.
pub fn first_disagreement(a: &MultiPoly, b: &MultiPoly, x: &EvalSet, cap: u64) -> Result<Option<Point>> {
    a.check_compatible(b)?;
    if let EvalSet::Points(pts) = x {
        for pt in pts {
            if pt.len() != a.nvars {
                return Err(Error::DimensionMismatch { expected: a.nvars, got: pt.len() });
            }
            if pt.iter().any(|c| !a.field.contains(c)) {
                return Err(Error::FieldMismatch);
            }
        }
    }
    let diff = a - b;
    let points = x.points(&a.field, a.nvars, cap)?;
    let found = points.into_iter().find(|pt| !a.field.is_zero(&diff.eval_unchecked(pt)));
    if x.is_all() {
        let syntactic = diff.normal_form()?.is_zero();
        if syntactic != found.is_none() {
            return Err(Error::Inconsistency(String::from(
                "pointwise comparison and normal-form comparison disagree",
            )));
        }
    }
    Ok(found)
}

/// `a` and `b` agree at every point of `X`.
pub fn func_equal(a: &MultiPoly, b: &MultiPoly, x: &EvalSet, cap: u64) -> Result<bool> {
    Ok(first_disagreement(a, b, x, cap)?.is_none())
}

/// Common zeros of `polys` in `X`, sorted in canonical point order.
pub fn zero_set(field: &FieldDesc, nvars: usize, polys: &[MultiPoly], x: &EvalSet, cap: u64) -> Result<Vec<Point>> {
    for p in polys {
        if p.field != *field {
            return Err(Error::FieldMismatch);
        }
        if p.nvars != nvars {
            return Err(Error::NvarsMismatch(p.nvars, nvars));
        }
    }
    let mut out: Vec<Point> = x
        .points(field, nvars, cap)?
        .into_iter()
        .filter(|pt| polys.iter().all(|p| field.is_zero(&p.eval_unchecked(pt))))
        .collect();
    out.sort();
    Ok(out)
}
