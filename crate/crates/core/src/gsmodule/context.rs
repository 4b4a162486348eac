use crate::codec::GrsCode;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::polymat::{PolyMatrix, WeightVector};

use super::bivar::BivarPoly;

/// Everything derived from the received word that the interpolation module needs.
#[derive(Clone, Debug)]
pub struct InterpolationContext {
    code: GrsCode,
    received: Vec<u32>,
    rprime: Vec<u32>,
    g: Poly,
    r: Poly,
}

impl InterpolationContext {
    /// Computes `r'_i = r_i / w_i`, `G = prod (X - a_i)` and the interpolant `R` with `R(a_i) = r'_i`.
    pub fn new(code: &GrsCode, received: &[u32]) -> Result<Self> {
        code.check_word(received)?;
        let f = code.field();
        let rprime = received
            .iter()
            .zip(code.ws())
            .map(|(&r, &w)| Ok(f.mul(r, f.inv(w)?)))
            .collect::<Result<Vec<u32>>>()?;
        let g = Poly::from_roots(f, code.alphas());
        let points: Vec<(u32, u32)> = code.alphas().iter().copied().zip(rprime.iter().copied()).collect();
        let r = Poly::lagrange_interpolate(f, &points)?;
        Ok(Self {
            code: code.clone(),
            received: received.to_vec(),
            rprime,
            g,
            r,
        })
    }

    pub fn code(&self) -> &GrsCode {
        &self.code
    }

    pub fn received(&self) -> &[u32] {
        &self.received
    }

    pub fn rprime(&self) -> &[u32] {
        &self.rprime
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    pub fn r(&self) -> &Poly {
        &self.r
    }

    pub fn k(&self) -> usize {
        self.code.k()
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    /// `deg R < k` exactly when the received word is a codeword.
    pub fn is_codeword(&self) -> bool {
        self.r.deg().is_none_or(|d| d < self.k())
    }

    /// Column weights `j (k - 1)` for `ell + 1` columns.
    pub fn weights(&self, ell: usize) -> WeightVector {
        WeightVector::gs(ell, self.k())
    }

    /// Y-coefficients of `(Y - R)^t` for `t = 0..=max`, built by repeated multiplication
    /// so that binomials vanishing mod `q` need no special handling.
    pub(crate) fn y_minus_r_powers(&self, max: usize) -> Vec<Vec<Poly>> {
        let f = self.code.field();
        let neg_r = -&self.r;
        let mut out = vec![vec![Poly::one(f)]];
        for t in 1..=max {
            let prev = &out[t - 1];
            let mut next = vec![Poly::zero(f); t + 1];
            for (j, c) in prev.iter().enumerate() {
                next[j + 1] = &next[j + 1] + c;
                next[j] = &next[j] + &(c * &neg_r);
            }
            out.push(next);
        }
        out
    }

    /// The explicit module basis: row `t < s` is `G^{s-t} (Y - R)^t`, row `t >= s` is
    /// `Y^{t-s} (Y - R)^s`, each written as its vector of Y-coefficients.
    pub fn build_a(&self, s: usize, ell: usize) -> Result<PolyMatrix> {
        if s == 0 || s > ell {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= s <= ell, got s = {s}, ell = {ell}"
            )));
        }
        let f = self.code.field();
        let pows = self.y_minus_r_powers(s);
        let mut g_pows = vec![Poly::one(f)];
        for i in 1..=s {
            g_pows.push(&g_pows[i - 1] * &self.g);
        }
        let mut rows = Vec::with_capacity(ell + 1);
        for t in 0..=ell {
            let mut row = vec![Poly::zero(f); ell + 1];
            if t < s {
                for (j, c) in pows[t].iter().enumerate() {
                    row[j] = c * &g_pows[s - t];
                }
            } else {
                for (j, c) in pows[s].iter().enumerate() {
                    row[t - s + j] = c.clone();
                }
            }
            rows.push(row);
        }
        PolyMatrix::new(f, rows)
    }

    /// Module membership: Y-degree at most `ell` and multiplicity `s` at every `(a_i, r'_i)`.
    pub fn in_module(&self, q: &BivarPoly, s: usize, ell: usize) -> bool {
        q.y_degree().is_none_or(|d| d <= ell)
            && self
                .code
                .alphas()
                .iter()
                .zip(&self.rprime)
                .all(|(&a, &b)| q.has_multiplicity(a, b, s))
    }
}
