use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::{Degree, Poly};

/// A polynomial in `F_q[X][Y]`; entry `t` is the `Y^t` coefficient `Q_t(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarPoly {
    field: PrimeField,
    y_coeffs: Vec<Poly>,
}

impl BivarPoly {
    pub fn new(field: PrimeField, mut y_coeffs: Vec<Poly>) -> Result<Self> {
        if let Some(p) = y_coeffs.iter().find(|p| p.field() != field) {
            return Err(Error::FieldMismatch(field.modulus(), p.field().modulus()));
        }
        while y_coeffs.last().is_some_and(Poly::is_zero) {
            y_coeffs.pop();
        }
        Ok(Self { field, y_coeffs })
    }

    /// Reads a basis-matrix row as a bivariate polynomial (column `t` holds `Q_t`).
    pub fn from_row(field: PrimeField, row: &[Poly]) -> Self {
        Self::new(field, row.to_vec()).expect("row entries share the field")
    }

    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            y_coeffs: Vec::new(),
        }
    }

    /// `Y - f(X)`.
    pub fn y_minus(f: &Poly) -> Self {
        let field = f.field();
        Self::new(field, vec![-f, Poly::one(field)]).unwrap()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn y_coeffs(&self) -> &[Poly] {
        &self.y_coeffs
    }

    /// `Q_t(X)`, the zero polynomial beyond the Y-degree.
    pub fn coeff(&self, t: usize) -> Poly {
        self.y_coeffs.get(t).cloned().unwrap_or_else(|| Poly::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.y_coeffs.is_empty()
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.y_coeffs.len().checked_sub(1)
    }

    /// `(1, k-1)`-weighted degree: `max_t deg Q_t + t (k-1)`.
    pub fn weighted_degree(&self, k: usize) -> Degree {
        let step = k.saturating_sub(1);
        self.y_coeffs
            .iter()
            .enumerate()
            .map(|(t, p)| p.degree() + t * step)
            .max()
            .unwrap_or(Degree::NegInf)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let mut out = vec![Poly::zero(self.field); self.y_coeffs.len() + other.y_coeffs.len() - 1];
        for (i, a) in self.y_coeffs.iter().enumerate() {
            for (j, b) in other.y_coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(self.field, out).unwrap()
    }

    /// `Q(X, f(X))`.
    pub fn eval_y(&self, f: &Poly) -> Poly {
        self.y_coeffs
            .iter()
            .rev()
            .fold(Poly::zero(self.field), |acc, c| &(&acc * f) + c)
    }

    /// `Q(X, Y + b)`: Taylor shift in Y with polynomial coefficients.
    pub fn shift_y(&self, b: u32) -> Self {
        let f = self.field;
        let mut c = self.y_coeffs.clone();
        if b != 0 && c.len() >= 2 {
            let d = c.len() - 1;
            for i in 0..d {
                for j in (i..d).rev() {
                    let t = c[j + 1].scale(b);
                    c[j] = &c[j] + &t;
                }
            }
        }
        Self::new(f, c).unwrap()
    }

    /// `Q(X + a, Y + b)`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        let xs: Vec<Poly> = self.y_coeffs.iter().map(|p| p.taylor_shift(a)).collect();
        Self::new(self.field, xs).unwrap().shift_y(b)
    }

    /// `Q(X, X*Y + gamma)`.
    pub fn compose_xy(&self, gamma: u32) -> Self {
        let shifted = self.shift_y(gamma);
        let c = shifted.y_coeffs.iter().enumerate().map(|(t, p)| p.shl(t)).collect();
        Self::new(self.field, c).unwrap()
    }

    /// Divides out the largest power of X dividing every coefficient.
    pub fn strip_x(&self) -> Self {
        let v = self.y_coeffs.iter().filter_map(Poly::x_valuation).min().unwrap_or(0);
        Self {
            field: self.field,
            y_coeffs: self.y_coeffs.iter().map(|p| p.shr(v)).collect(),
        }
    }

    /// `Q(0, Y)` as a univariate polynomial in Y.
    pub fn at_x_zero(&self) -> Poly {
        Poly::from_raw(self.field, self.y_coeffs.iter().map(|p| p.coeff(0)).collect())
    }

    /// True iff `(a, b)` is a zero of multiplicity at least `s`: every monomial
    /// `X^u Y^v` of `Q(X + a, Y + b)` with `u + v < s` has coefficient zero.
    pub fn has_multiplicity(&self, a: u32, b: u32, s: usize) -> bool {
        let shifted = self.shift(a, b);
        (0..s).all(|v| {
            let c = shifted.coeff(v);
            (0..s - v).all(|u| c.coeff(u) == 0)
        })
    }
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.y_coeffs.serialize(s)
    }
}
