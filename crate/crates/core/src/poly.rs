//! Dense univariate polynomials over a prime field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

/// Polynomial degree with a `-inf` for the zero polynomial.
///
/// `NegInf` sorts below every finite degree and absorbs addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        self == Degree::NegInf
    }
}

impl Add<usize> for Degree {
    type Output = Degree;
    fn add(self, rhs: usize) -> Degree {
        match self {
            Degree::NegInf => Degree::NegInf,
            Degree::Finite(d) => Degree::Finite(d + rhs),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

impl PartialEq<usize> for Degree {
    fn eq(&self, other: &usize) -> bool {
        *self == Degree::Finite(*other)
    }
}

impl PartialOrd<usize> for Degree {
    fn partial_cmp(&self, other: &usize) -> Option<Ordering> {
        Some(self.cmp(&Degree::Finite(*other)))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Polynomial in `F_q[X]`, coefficients in ascending order of powers.
///
/// Always canonical: no trailing zero coefficient, the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: PrimeField, c: u32) -> Self {
        Self::from_raw(field, vec![c % field.modulus()])
    }

    /// `c * X^d`.
    pub fn monomial(field: PrimeField, c: u32, d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = c % field.modulus();
        Self::from_raw(field, coeffs)
    }

    pub fn x(field: PrimeField) -> Self {
        Self::monomial(field, 1, 1)
    }

    /// Builds from already-reduced residues, stripping trailing zeros.
    pub fn from_raw(field: PrimeField, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < field.modulus()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    /// Builds from arbitrary integers, reducing each modulo `q`.
    pub fn from_coeffs(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    pub fn from_elements(field: PrimeField, coeffs: &[FieldElement]) -> Result<Self> {
        let mut raw = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.field() != field {
                return Err(Error::FieldMismatch(field.modulus(), c.field().modulus()));
            }
            raw.push(c.value());
        }
        Ok(Self::from_raw(field, raw))
    }

    /// `prod (X - r)` over the given roots.
    pub fn from_roots(field: PrimeField, roots: &[u32]) -> Self {
        let mut coeffs = vec![1u32];
        for &r in roots {
            let neg_r = field.neg(r);
            let mut next = vec![0u32; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = field.add(next[i + 1], c);
                next[i] = field.add(next[i], field.mul(c, neg_r));
            }
            coeffs = next;
        }
        Self::from_raw(field, coeffs)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    #[inline]
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeff_elem(&self, i: usize) -> FieldElement {
        self.field.elem(self.coeff(i) as i64)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            l => Degree::Finite(l - 1),
        }
    }

    /// Degree as an option, `None` for the zero polynomial.
    #[inline]
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            Err(Error::FieldMismatch(self.field.modulus(), other.field.modulus()))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.coeffs.clone();
        for (o, &c) in out.iter_mut().zip(&short.coeffs) {
            *o = f.add(*o, c);
        }
        Ok(Self::from_raw(f, out))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let out = (0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::from_raw(f, out))
    }

    /// Schoolbook product with delayed reduction.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let q = self.field.modulus() as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let a = a as u64;
            for (slot, &b) in acc[i..].iter_mut().zip(&other.coeffs) {
                *slot += a * b as u64;
            }
        }
        let out = acc.into_iter().map(|v| (v % q) as u32).collect();
        Ok(Self::from_raw(self.field, out))
    }

    /// Multiplies by the scalar `c` (a residue).
    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplies by `X^d`.
    pub fn shl(&self, d: usize) -> Self {
        if self.is_zero() || d == 0 {
            return self.clone();
        }
        let mut coeffs = vec![0u32; d];
        coeffs.extend_from_slice(&self.coeffs);
        Self {
            field: self.field,
            coeffs,
        }
    }

    /// Drops the `d` lowest coefficients (exact division by `X^d` when they vanish).
    pub fn shr(&self, d: usize) -> Self {
        if d >= self.coeffs.len() {
            return Self::zero(self.field);
        }
        Self {
            field: self.field,
            coeffs: self.coeffs[d..].to_vec(),
        }
    }

    /// Largest `v` with `X^v | self`; `None` for the zero polynomial.
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// `self -= c * X^d * other`, in place. Used by the row reduction.
    pub fn sub_scaled_shifted(&mut self, c: u32, d: usize, other: &Self) {
        debug_assert_eq!(self.field, other.field);
        if c == 0 || other.is_zero() {
            return;
        }
        let f = self.field;
        let need = other.coeffs.len() + d;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, 0);
        }
        let neg_c = f.neg(c);
        for (slot, &b) in self.coeffs[d..].iter_mut().zip(&other.coeffs) {
            *slot = f.add(*slot, f.mul(neg_c, b));
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = quot * b + rem` with `deg rem < deg b`.
    pub fn divrem(&self, b: &Self) -> Result<(Self, Self)> {
        self.check(b)?;
        let f = self.field;
        let db = b.deg().ok_or(Error::DivisionByZero)?;
        let Some(da) = self.deg() else {
            return Ok((Self::zero(f), Self::zero(f)));
        };
        if da < db {
            return Ok((Self::zero(f), self.clone()));
        }
        let lc_inv = f.inv(b.leading_coeff())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; da - db + 1];
        for i in (0..=da - db).rev() {
            let c = f.mul(rem[i + db], lc_inv);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            let neg_c = f.neg(c);
            for (j, &bj) in b.coeffs.iter().enumerate() {
                rem[i + j] = f.add(rem[i + j], f.mul(neg_c, bj));
            }
        }
        rem.truncate(db);
        Ok((Self::from_raw(f, quot), Self::from_raw(f, rem)))
    }

    /// Exact quotient, or `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Result<Option<Self>> {
        let (quot, rem) = self.divrem(b)?;
        Ok(rem.is_zero().then_some(quot))
    }

    /// Horner evaluation on a raw residue.
    pub fn eval_raw(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn eval(&self, x: FieldElement) -> Result<FieldElement> {
        if x.field() != self.field {
            return Err(Error::FieldMismatch(self.field.modulus(), x.field().modulus()));
        }
        Ok(self.field.elem(self.eval_raw(x.value()) as i64))
    }

    /// `p(X + a)`, by repeated synthetic division (no binomials needed).
    pub fn taylor_shift(&self, a: u32) -> Self {
        let f = self.field;
        let mut c = self.coeffs.clone();
        if a == 0 || c.len() < 2 {
            return self.clone();
        }
        let d = c.len() - 1;
        for i in 0..d {
            for j in (i..d).rev() {
                c[j] = f.add(c[j], f.mul(a, c[j + 1]));
            }
        }
        Self::from_raw(f, c)
    }

    /// The unique polynomial of degree `< points.len()` through the given points.
    pub fn lagrange_interpolate(field: PrimeField, points: &[(u32, u32)]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::NoPoints);
        }
        let mut xs: Vec<u32> = points.iter().map(|p| p.0 % field.modulus()).collect();
        xs.sort_unstable();
        if let Some(w) = xs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateAbscissa(w[0]));
        }
        let xs: Vec<u32> = points.iter().map(|p| p.0 % field.modulus()).collect();
        let master = Self::from_roots(field, &xs);
        let mut acc = vec![0u32; points.len()];
        for &(x, y) in points {
            let y = y % field.modulus();
            if y == 0 {
                continue;
            }
            let x = x % field.modulus();
            // master / (X - x), then scale so that it is y at x and 0 elsewhere.
            let (basis, _) = master.divrem(&Self::from_raw(field, vec![field.neg(x), 1]))?;
            let denom = basis.eval_raw(x);
            let scale = field.mul(y, field.inv(denom)?);
            for (slot, &b) in acc.iter_mut().zip(basis.coeffs()) {
                *slot = field.add(*slot, field.mul(scale, b));
            }
        }
        Ok(Self::from_raw(field, acc))
    }

    /// Same as [`Poly::lagrange_interpolate`] but over typed elements.
    pub fn interpolate(points: &[(FieldElement, FieldElement)]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::NoPoints);
        };
        let field = first.0.field();
        for (x, y) in points {
            for e in [x, y] {
                if e.field() != field {
                    return Err(Error::FieldMismatch(field.modulus(), e.field().modulus()));
                }
            }
        }
        let raw: Vec<(u32, u32)> = points.iter().map(|(x, y)| (x.value(), y.value())).collect();
        Self::lagrange_interpolate(field, &raw)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}X")?,
                (i, 1) => write!(f, "X^{i}")?,
                (i, c) => write!(f, "{c}X^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    fn p(field: PrimeField, c: &[i64]) -> Poly {
        Poly::from_coeffs(field, c)
    }

    #[test]
    fn degree_sentinel() {
        assert!(Degree::NegInf < Degree::Finite(0));
        assert_eq!(Degree::NegInf + 5, Degree::NegInf);
        assert_eq!(Degree::Finite(2) + Degree::NegInf, Degree::NegInf);
        assert_eq!(Poly::zero(f7()).degree(), Degree::NegInf);
    }

    #[test]
    fn addition() {
        let f = f7();
        assert_eq!(&p(f, &[1, 1]) + &p(f, &[6, 1]), p(f, &[0, 2]));
        let a = p(f, &[3, 0, 5]);
        assert_eq!(&a + &Poly::zero(f), a);
        let x2 = p(f, &[0, 0, 1]);
        let d = &x2 - &x2;
        assert!(d.is_zero());
        assert_eq!(d.degree(), Degree::NegInf);
    }

    #[test]
    fn multiplication() {
        let f = f7();
        assert_eq!(&p(f, &[1, 1]) * &p(f, &[2, 1]), p(f, &[2, 3, 1]));
        assert!((&p(f, &[1, 2, 3]) * &Poly::zero(f)).is_zero());
        let f2 = PrimeField::gf2();
        let xp1 = p(f2, &[1, 1]);
        assert_eq!(&xp1 * &xp1, p(f2, &[1, 0, 1]));
    }

    #[test]
    fn mismatched_fields() {
        let a = p(f7(), &[1]);
        let b = p(PrimeField::new(11).unwrap(), &[1]);
        assert_eq!(a.checked_add(&b), Err(Error::FieldMismatch(7, 11)));
        assert_eq!(a.checked_mul(&b), Err(Error::FieldMismatch(7, 11)));
    }

    #[test]
    fn division() {
        let f2 = PrimeField::gf2();
        let (q, r) = p(f2, &[1, 0, 1]).divrem(&p(f2, &[1, 1])).unwrap();
        assert_eq!(q, p(f2, &[1, 1]));
        assert!(r.is_zero());

        let f = f7();
        let a = p(f, &[3, 1, 4, 1]);
        let (q, r) = a.divrem(&a).unwrap();
        assert_eq!(q, Poly::one(f));
        assert!(r.is_zero());

        let (q, r) = p(f, &[0, 1]).divrem(&p(f, &[0, 0, 1])).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, p(f, &[0, 1]));

        assert_eq!(a.divrem(&Poly::zero(f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation() {
        let f = f7();
        let three = f.elem(3);
        assert_eq!(p(f, &[1, 1]).eval(three).unwrap().value(), 4);
        assert_eq!(Poly::zero(f).eval(three).unwrap().value(), 0);
        assert_eq!(Poly::monomial(f, 1, 6).eval(three).unwrap().value(), 1);
    }

    #[test]
    fn interpolation() {
        let f = f7();
        assert_eq!(Poly::lagrange_interpolate(f, &[(1, 2), (2, 3)]).unwrap(), p(f, &[1, 1]));
        assert_eq!(Poly::lagrange_interpolate(f, &[(5, 4)]).unwrap(), Poly::constant(f, 4));
        assert_eq!(
            Poly::lagrange_interpolate(f, &[(1, 2), (1, 3)]),
            Err(Error::DuplicateAbscissa(1))
        );
        assert_eq!(Poly::lagrange_interpolate(f, &[]), Err(Error::NoPoints));
        let typed = [(f.elem(1), f.elem(2)), (f.elem(2), f.elem(3))];
        assert_eq!(Poly::interpolate(&typed).unwrap(), p(f, &[1, 1]));
    }

    #[test]
    fn taylor() {
        let f = f7();
        let x2 = p(f, &[0, 0, 1]);
        assert_eq!(x2.taylor_shift(1), p(f, &[1, 2, 1]));
        assert_eq!(x2.taylor_shift(0), x2);
        let a = p(f, &[3, 1, 4, 1, 5]);
        assert_eq!(a.taylor_shift(4).taylor_shift(f.neg(4)), a);
    }

    #[test]
    fn from_roots_vanishes() {
        let f = PrimeField::new(17).unwrap();
        let g = Poly::from_roots(f, &[1, 2, 3, 5]);
        assert_eq!(g.deg(), Some(4));
        assert_eq!(g.leading_coeff(), 1);
        for r in [1, 2, 3, 5] {
            assert_eq!(g.eval_raw(r), 0);
        }
        assert_ne!(g.eval_raw(4), 0);
    }

    fn arb_poly(q: u32, max_len: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(0..q, 0..max_len).prop_map(move |c| Poly::from_raw(PrimeField::new(q as u64).unwrap(), c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(13, 8), b in arb_poly(13, 8), c in arb_poly(13, 8)) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).degree(), a.degree() + b.degree());
        }

        #[test]
        fn divrem_roundtrip(a in arb_poly(13, 12), b in arb_poly(13, 6)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn interpolate_after_evaluate(coeffs in prop::collection::vec(0u32..17, 1..16)) {
            let f = PrimeField::new(17).unwrap();
            let poly = Poly::from_raw(f, coeffs.clone());
            let pts: Vec<(u32, u32)> = (1..=coeffs.len() as u32).map(|x| (x, poly.eval_raw(x))).collect();
            prop_assert_eq!(Poly::lagrange_interpolate(f, &pts).unwrap(), poly);
        }

        #[test]
        fn taylor_shift_is_substitution(a in arb_poly(17, 10), s in 0u32..17, x in 0u32..17) {
            let f = a.field();
            prop_assert_eq!(a.taylor_shift(s).eval_raw(x), a.eval_raw(f.add(x, s)));
        }
    }
}
