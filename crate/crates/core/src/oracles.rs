//! Deliberately naive reference implementations used to cross-check the fast paths:
//! exhaustive nearest-codeword search, interpolation by plain linear algebra, and
//! exhaustive root enumeration.
//!
//! None of these share code with the routines they check beyond field arithmetic,
//! polynomial evaluation and encoding.

use crate::codec::GrsCode;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::gsmodule::{BivarPoly, InterpolationContext};
use crate::poly::Poly;
use crate::rootfind::{cmp_padded, sort_candidates, RootCandidate};

/// Caps the size of exhaustive loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_enumeration: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_enumeration: 1_000_000,
        }
    }
}

impl OracleBudget {
    fn check(&self, needed: u128) -> Result<()> {
        if needed > self.max_enumeration {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.max_enumeration,
            })
        } else {
            Ok(())
        }
    }
}

fn space_size(q: u32, k: usize) -> u128 {
    (q as u128).saturating_pow(k as u32)
}

/// All codewords within `tau` of `received`, found by encoding every one of the `q^k`
/// messages. Same ordering as [`crate::rootfind::filter_candidates`].
pub fn brute_force_nearest(
    code: &GrsCode,
    received: &[u32],
    tau: usize,
    budget: OracleBudget,
) -> Result<Vec<RootCandidate>> {
    code.check_word(received)?;
    let f = code.field();
    let (n, k) = (code.n(), code.k());
    budget.check(space_size(f.modulus(), k))?;
    // columns[j][i] = w_i * a_i^j
    let columns: Vec<Vec<u32>> = (0..k)
        .map(|j| {
            code.alphas()
                .iter()
                .zip(code.ws())
                .map(|(&a, &w)| f.mul(w, f.pow(a, j as u64)))
                .collect()
        })
        .collect();
    let mut found = Vec::new();
    let mut digits = vec![0u32; k];
    let mut partial = vec![vec![0u32; n]; k + 1];
    enumerate(f, &columns, received, tau, k, &mut digits, &mut partial, &mut found);
    let mut out: Vec<RootCandidate> = found
        .into_iter()
        .map(|(digits, codeword, distance)| RootCandidate {
            f: Poly::from_raw(f, digits),
            codeword,
            distance,
        })
        .collect();
    sort_candidates(&mut out, k);
    Ok(out)
}

// partial[level] holds sum_{j >= level} digits[j] * columns[j].
#[allow(clippy::too_many_arguments)]
fn enumerate(
    f: PrimeField,
    columns: &[Vec<u32>],
    received: &[u32],
    tau: usize,
    level: usize,
    digits: &mut [u32],
    partial: &mut [Vec<u32>],
    found: &mut Vec<(Vec<u32>, Vec<u32>, usize)>,
) {
    if level == 0 {
        let word = &partial[0];
        let distance = word.iter().zip(received).filter(|(a, b)| a != b).count();
        if distance <= tau {
            found.push((digits.to_vec(), word.clone(), distance));
        }
        return;
    }
    let j = level - 1;
    for d in 0..f.modulus() {
        digits[j] = d;
        let (lo, hi) = partial.split_at_mut(level);
        for ((dst, &src), &col) in lo[j].iter_mut().zip(&hi[0]).zip(&columns[j]) {
            *dst = f.add(src, f.mul(d, col));
        }
        enumerate(f, columns, received, tau, j, digits, partial, found);
    }
}

/// Every `f` with `deg f < k` and `Q(X, f(X)) = 0`, by trying all `q^k` polynomials.
pub fn brute_force_roots(q: &BivarPoly, k: usize, budget: OracleBudget) -> Result<Vec<Poly>> {
    let f = q.field();
    budget.check(space_size(f.modulus(), k))?;
    let mut out = Vec::new();
    let mut digits = vec![0u32; k];
    loop {
        let cand = Poly::from_raw(f, digits.clone());
        if q.eval_y(&cand).is_zero() {
            out.push(cand);
        }
        // odometer increment
        let mut i = 0;
        while i < k {
            digits[i] += 1;
            if digits[i] < f.modulus() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out.sort_by(|a, b| cmp_padded(a, b, k));
    Ok(out)
}

/// Result of [`oracle_min_interpolation`].
#[derive(Clone, Debug)]
pub struct MinInterpolation {
    pub q: BivarPoly,
    /// Minimum `(1, k-1)`-weighted degree over nonzero elements of `M_{s,ell}`.
    pub wdeg: usize,
    /// Number of homogeneous linear constraints (`C(s+1, 2) * n`).
    pub constraints: usize,
    /// Number of unknown coefficients at the accepted degree bound.
    pub unknowns: usize,
}

/// Finds a nonzero `Q` of Y-degree `<= ell` with multiplicity `s` at every `(a_i, r'_i)` and
/// least `(1, k-1)`-weighted degree, by solving the interpolation constraints as a
/// homogeneous linear system for increasing degree bounds `D` (`wdeg Q < D`).
pub fn oracle_min_interpolation(
    ctx: &InterpolationContext,
    s: usize,
    ell: usize,
    budget: OracleBudget,
) -> Result<MinInterpolation> {
    if s == 0 || ell == 0 {
        return Err(Error::InvalidParameters("need s, ell >= 1".into()));
    }
    let code = ctx.code();
    let f = code.field();
    let (n, k) = (code.n(), code.k());
    let step = k - 1;
    let max_bound = s * n + ell * step + 1;
    let pascal = pascal_mod(f, max_bound.max(ell) + 1, s);
    let points: Vec<(u32, u32)> = code
        .alphas()
        .iter()
        .copied()
        .zip(ctx.rprime().iter().copied())
        .collect();
    let constraints = n * s * (s + 1) / 2;
    for bound in 1..=max_bound {
        let unknowns: Vec<(usize, usize)> = (0..=ell)
            .flat_map(|t| {
                let width = bound.saturating_sub(t * step);
                (0..width).map(move |j| (t, j))
            })
            .collect();
        budget.check((unknowns.len() * constraints) as u128)?;
        let mut system = Vec::with_capacity(constraints);
        for &(a, b) in &points {
            for v in 0..s {
                for u in 0..s - v {
                    // Coefficient of X^u Y^v in Q(X + a, Y + b), as a linear form in q_{t,j}.
                    let row: Vec<u32> = unknowns
                        .iter()
                        .map(|&(t, j)| {
                            if j < u || t < v {
                                return 0;
                            }
                            let cx = f.mul(pascal[j][u], f.pow(a, (j - u) as u64));
                            let cy = f.mul(pascal[t][v], f.pow(b, (t - v) as u64));
                            f.mul(cx, cy)
                        })
                        .collect();
                    system.push(row);
                }
            }
        }
        if let Some(sol) = nullspace_vector(f, system, unknowns.len()) {
            let mut y_coeffs = vec![vec![0u32; bound]; ell + 1];
            for (&(t, j), &c) in unknowns.iter().zip(&sol) {
                y_coeffs[t][j] = c;
            }
            let q = BivarPoly::new(f, y_coeffs.into_iter().map(|c| Poly::from_raw(f, c)).collect())?;
            return Ok(MinInterpolation {
                q,
                wdeg: bound - 1,
                constraints,
                unknowns: unknowns.len(),
            });
        }
    }
    unreachable!("G^s lies in the module with weighted degree s*n")
}

/// `table[m][u] = C(m, u) mod q` for `u < cols`, via Pascal's rule.
fn pascal_mod(f: PrimeField, rows: usize, cols: usize) -> Vec<Vec<u32>> {
    let mut t = vec![vec![0u32; cols]; rows];
    for m in 0..rows {
        t[m][0] = 1 % f.modulus();
        for u in 1..cols.min(m + 1) {
            t[m][u] = f.add(t[m - 1][u - 1], if u < m { t[m - 1][u] } else { 0 });
        }
    }
    t
}

/// A nonzero solution of `A x = 0`, or `None` if `A` has full column rank.
fn nullspace_vector(f: PrimeField, mut a: Vec<Vec<u32>>, cols: usize) -> Option<Vec<u32>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let inv = f.inv(a[rank][c]).expect("nonzero pivot");
        for x in a[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let m = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(m, p));
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![0u32; cols];
    x[free] = 1;
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = f.neg(a[r][free]);
    }
    Some(x)
}
