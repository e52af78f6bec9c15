//! Exact Gaussian elimination over the supported fields.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{FieldDesc, FieldElem};

pub(crate) trait Scalars {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - b * c`
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn lift(&self, a: &FieldElem) -> Self::E;
    fn lower(&self, a: Self::E) -> FieldElem;
}

pub(crate) struct Finite<'a>(pub &'a FieldDesc);

impl Scalars for Finite<'_> {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.0.fmul(*a, *b)
    }
    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        self.0.fsub(*a, self.0.fmul(*b, *c))
    }
    fn inv(&self, a: &u64) -> u64 {
        self.0.finv(*a)
    }
    fn lift(&self, a: &FieldElem) -> u64 {
        match a {
            FieldElem::Finite(v) => *v,
            FieldElem::Rational(_) => unreachable!("finite field"),
        }
    }
    fn lower(&self, a: u64) -> FieldElem {
        FieldElem::Finite(a)
    }
}

pub(crate) struct Rationals;

impl Scalars for Rationals {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub_mul(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
        a - b * c
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
    fn lift(&self, a: &FieldElem) -> BigRational {
        match a {
            FieldElem::Rational(r) => r.clone(),
            FieldElem::Finite(_) => unreachable!("rational field"),
        }
    }
    fn lower(&self, a: BigRational) -> FieldElem {
        FieldElem::Rational(a)
    }
}

/// Solves `A x = b` (rows of `A` given with `b` alongside). Pivots are the
/// first nonzero entry in row order; free variables are set to zero.
/// Returns `None` for an inconsistent system.
pub(crate) fn solve<S: Scalars>(s: &S, mut rows: Vec<Vec<S::E>>, mut rhs: Vec<S::E>, ncols: usize) -> Option<Vec<S::E>> {
    let nrows = rows.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(found) = (rank..nrows).find(|&r| !s.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, found);
        rhs.swap(rank, found);
        let inv = s.inv(&rows[rank][col]);
        for v in rows[rank][col..].iter_mut() {
            *v = s.mul(v, &inv);
        }
        rhs[rank] = s.mul(&rhs[rank], &inv);
        let (pivot_row, pivot_rhs) = (rows[rank].clone(), rhs[rank].clone());
        for r in 0..nrows {
            if r == rank || s.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = rows[r][col].clone();
            for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                if !s.is_zero(pv) {
                    rows[r][c] = s.sub_mul(&rows[r][c], &factor, pv);
                }
            }
            rhs[r] = s.sub_mul(&rhs[r], &factor, &pivot_rhs);
        }
        pivots.push((rank, col));
        rank += 1;
    }
    if rhs[rank..].iter().any(|v| !s.is_zero(v)) {
        return None;
    }
    let mut x = alloc::vec![s.zero(); ncols];
    for (r, c) in pivots {
        x[c] = rhs[r].clone();
    }
    Some(x)
}

/// Growing echelon basis of a column span, for span-membership queries.
pub(crate) struct Span<S: Scalars> {
    basis: Vec<(usize, Vec<S::E>)>,
}

impl<S: Scalars> Span<S> {
    pub fn new() -> Self {
        Span { basis: Vec::new() }
    }

    fn reduce(&self, s: &S, mut v: Vec<S::E>) -> Vec<S::E> {
        for (p, b) in &self.basis {
            if s.is_zero(&v[*p]) {
                continue;
            }
            let factor = v[*p].clone();
            for (vi, bi) in v.iter_mut().zip(b) {
                if !s.is_zero(bi) {
                    *vi = s.sub_mul(vi, &factor, bi);
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, s: &S, v: Vec<S::E>) -> bool {
        let mut v = self.reduce(s, v);
        let Some(p) = v.iter().position(|x| !s.is_zero(x)) else {
            return false;
        };
        let inv = s.inv(&v[p]);
        for x in v.iter_mut() {
            *x = s.mul(x, &inv);
        }
        self.basis.push((p, v));
        true
    }

    pub fn contains(&self, s: &S, v: Vec<S::E>) -> bool {
        self.reduce(s, v).iter().all(|x| s.is_zero(x))
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}
