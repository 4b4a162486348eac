use serde::Serialize;

use crate::error::{Error, Result};

fn binom2(m: i64) -> i64 {
    m * (m - 1) / 2
}

/// Number of free coefficients minus number of interpolation constraints:
/// `(ell+1) s (n-tau) - C(ell+1, 2)(k-1) - C(s+1, 2) n`.
///
/// A nonzero interpolation polynomial meeting the degree bound exists whenever this is positive.
pub fn compute_e(s: usize, ell: usize, tau: usize, n: usize, k: usize) -> i64 {
    let (s, ell, tau, n, k) = (s as i64, ell as i64, tau as i64, n as i64, k as i64);
    (ell + 1) * s * (n - tau) - binom2(ell + 1) * (k - 1) - binom2(s + 1) * n
}

/// Largest `tau` with `compute_e(s, ell, tau, n, k) > 0`, or `None` if even `tau = 0` fails.
pub fn decoding_radius(s: usize, ell: usize, n: usize, k: usize) -> Option<usize> {
    (0..n).rev().find(|&tau| compute_e(s, ell, tau, n, k) > 0)
}

/// A multiplicity / list-size / radius triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParamTriple {
    pub s: usize,
    pub ell: usize,
    pub tau: usize,
}

impl ParamTriple {
    pub fn new(s: usize, ell: usize, tau: usize) -> Result<Self> {
        if s == 0 || ell == 0 {
            return Err(Error::InvalidParameters(format!(
                "need s, ell >= 1, got s = {s}, ell = {ell}"
            )));
        }
        if s > ell {
            return Err(Error::InvalidParameters(format!(
                "need s <= ell, got s = {s}, ell = {ell}"
            )));
        }
        Ok(Self { s, ell, tau })
    }

    /// The triple `(s, ell, tau(s, ell))` for the given code dimensions.
    pub fn at_radius(s: usize, ell: usize, n: usize, k: usize) -> Result<Self> {
        let tau = decoding_radius(s, ell, n, k).ok_or(Error::NotPermissible { s, ell })?;
        Self::new(s, ell, tau)
    }

    pub fn e(&self, n: usize, k: usize) -> i64 {
        compute_e(self.s, self.ell, self.tau, n, k)
    }

    pub fn is_permissible(&self, n: usize, k: usize) -> bool {
        self.e(n, k) > 0
    }
}
