//! Y-roots of bivariate polynomials (Roth–Ruckenstein) and candidate filtering.

use std::cmp::Ordering;

use serde::Serialize;

use crate::codec::{hamming_distance, GrsCode};
use crate::error::{Error, Result};
use crate::gsmodule::BivarPoly;
use crate::poly::Poly;

/// A decoded information polynomial with its codeword and distance to the received word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootCandidate {
    pub f: Poly,
    pub codeword: Vec<u32>,
    pub distance: usize,
}

/// Lexicographic order on coefficient vectors padded to length `k`.
pub(crate) fn cmp_padded(a: &Poly, b: &Poly, k: usize) -> Ordering {
    let len = k.max(a.coeffs().len()).max(b.coeffs().len());
    (0..len)
        .map(|i| a.coeff(i).cmp(&b.coeff(i)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// All `f` with `deg f < k` and `Q(X, f(X)) = 0`, sorted lexicographically by coefficients.
///
/// Each level strips the common power of X, branches on the roots `gamma` of `Q(0, Y)`
/// (found by scanning the field) and recurses on `Q(X, X*Y + gamma)`. Candidates that
/// survive `k` levels are confirmed by substitution.
pub fn y_roots(q: &BivarPoly, k: usize) -> Result<Vec<Poly>> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = q.field();
    let mut prefixes = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    descend(q.clone(), k, &mut prefix, &mut prefixes);
    let mut roots: Vec<Poly> = prefixes
        .into_iter()
        .map(|c| Poly::from_raw(field, c))
        .filter(|f| q.eval_y(f).is_zero())
        .collect();
    roots.sort_by(|a, b| cmp_padded(a, b, k));
    roots.dedup();
    Ok(roots)
}

fn descend(q: BivarPoly, k: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let q = q.strip_x();
    if prefix.len() == k {
        out.push(prefix.clone());
        return;
    }
    let q0 = q.at_x_zero();
    // After stripping, Q(0, Y) vanishes only if Q does; the scan then takes every gamma.
    for gamma in 0..q.field().modulus() {
        if q0.eval_raw(gamma) != 0 {
            continue;
        }
        prefix.push(gamma);
        descend(q.compose_xy(gamma), k, prefix, out);
        prefix.pop();
    }
}

/// Encodes each root and keeps those within `tau` of `received`, ordered by
/// distance and then by coefficients.
pub fn filter_candidates(roots: &[Poly], code: &GrsCode, received: &[u32], tau: usize) -> Result<Vec<RootCandidate>> {
    code.check_word(received)?;
    let mut out = Vec::new();
    for f in roots {
        let codeword = code.encode(f)?;
        let distance = hamming_distance(&codeword, received)?;
        if distance <= tau {
            out.push(RootCandidate {
                f: f.clone(),
                codeword,
                distance,
            });
        }
    }
    sort_candidates(&mut out, code.k());
    Ok(out)
}

pub(crate) fn sort_candidates(c: &mut [RootCandidate], k: usize) {
    c.sort_by(|a, b| a.distance.cmp(&b.distance).then_with(|| cmp_padded(&a.f, &b.f, k)));
}
