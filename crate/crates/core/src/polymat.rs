//! Matrices over `F_q[X]`: row degrees, leading positions, weak Popov form,
//! orthogonality defect and row reduction.
//!
//! Column weights are always handled virtually: a weight vector `w` stands for
//! right multiplication by `diag(X^{w_0}, ..., X^{w_{m-1}})`, but entries are never
//! actually shifted. The weighted degree of entry `(i, j)` is `deg m_ij + w_j`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::{Degree, Poly};

/// Per-column X-exponent shifts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<usize>);

impl WeightVector {
    pub fn new(shifts: Vec<usize>) -> Self {
        Self(shifts)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// The `(1, k-1)` weighting for `ell + 1` columns: shift `j * (k - 1)` on column `j`.
    pub fn gs(ell: usize, k: usize) -> Self {
        let step = k.saturating_sub(1);
        Self((0..=ell).map(|j| j * step).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn shifts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    #[inline]
    fn get(&self, j: usize) -> usize {
        self.0[j]
    }
}

/// Maximum entry degree of a vector, `NegInf` for the zero vector.
pub fn row_degree(v: &[Poly]) -> Degree {
    v.iter().map(Poly::degree).max().unwrap_or(Degree::NegInf)
}

/// Row degree after shifting column `j` by `w_j`.
pub fn weighted_row_degree(v: &[Poly], w: &WeightVector) -> Degree {
    v.iter()
        .enumerate()
        .map(|(j, p)| p.degree() + w.get(j))
        .max()
        .unwrap_or(Degree::NegInf)
}

/// Greatest column index attaining the row degree.
pub fn leading_position(v: &[Poly]) -> Result<usize> {
    weighted_leading_position(v, &WeightVector::zeros(v.len()))
}

pub fn weighted_leading_position(v: &[Poly], w: &WeightVector) -> Result<usize> {
    degree_and_lp(v, w).map(|(_, lp)| lp).ok_or(Error::ZeroVector)
}

/// Weighted degree and leading position, or `None` for a zero row.
fn degree_and_lp(v: &[Poly], w: &WeightVector) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (j, p) in v.iter().enumerate() {
        if let Some(d) = p.deg() {
            let d = d + w.get(j);
            if best.is_none_or(|(bd, _)| d >= bd) {
                best = Some((d, j));
            }
        }
    }
    best
}

/// A dense matrix over `F_q[X]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    field: PrimeField,
    cols: usize,
    rows: Vec<Vec<Poly>>,
}

impl PolyMatrix {
    pub fn new(field: PrimeField, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            if let Some(p) = row.iter().find(|p| p.field() != field) {
                return Err(Error::FieldMismatch(field.modulus(), p.field().modulus()));
            }
        }
        Ok(Self { field, cols, rows })
    }

    /// Builds from integer coefficient arrays, `rows[i][j]` ascending in X.
    pub fn from_coeffs(field: PrimeField, rows: &[Vec<Vec<i64>>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|c| Poly::from_coeffs(field, c)).collect())
            .collect();
        Self::new(field, rows)
    }

    pub fn identity(field: PrimeField, m: usize) -> Self {
        let rows = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { Poly::one(field) } else { Poly::zero(field) })
                    .collect()
            })
            .collect();
        Self { field, cols: m, rows }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.cols
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn into_rows(self) -> Vec<Vec<Poly>> {
        self.rows
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.nrows(),
                cols: self.cols,
            })
        }
    }

    fn require_weights(&self, w: &WeightVector) -> Result<()> {
        if w.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: w.len(),
            });
        }
        Ok(())
    }

    /// Sum of row degrees, `deg V` in the usual notation. `NegInf` if any row is zero.
    pub fn degree(&self) -> Degree {
        self.weighted_degree(&WeightVector::zeros(self.cols))
    }

    pub fn weighted_degree(&self, w: &WeightVector) -> Degree {
        self.rows
            .iter()
            .map(|r| weighted_row_degree(r, w))
            .fold(Degree::Finite(0), |acc, d| acc + d)
    }

    /// Explicitly multiplies column `j` by `X^{w_j}`.
    pub fn scale_columns(&self, w: &WeightVector) -> Result<Self> {
        self.require_weights(w)?;
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(j, p)| p.shl(w.get(j))).collect())
            .collect();
        Ok(Self {
            field: self.field,
            cols: self.cols,
            rows,
        })
    }

    /// Divides column `j` by `X^{w_j}`; `None` if some division is inexact.
    pub fn unscale_columns(&self, w: &WeightVector) -> Result<Option<Self>> {
        self.require_weights(w)?;
        let mut rows = Vec::with_capacity(self.nrows());
        for r in &self.rows {
            let mut out = Vec::with_capacity(self.cols);
            for (j, p) in r.iter().enumerate() {
                if p.x_valuation().is_some_and(|v| v < w.get(j)) {
                    return Ok(None);
                }
                out.push(p.shr(w.get(j)));
            }
            rows.push(out);
        }
        Ok(Some(Self {
            field: self.field,
            cols: self.cols,
            rows,
        }))
    }

    /// Determinant by fraction-free (Bareiss) elimination over `F_q[X]`.
    pub fn determinant(&self) -> Result<Poly> {
        self.require_square()?;
        let f = self.field;
        let m = self.nrows();
        if m == 0 {
            return Ok(Poly::one(f));
        }
        let mut a = self.rows.clone();
        let mut negate = false;
        let mut prev = Poly::one(f);
        for k in 0..m - 1 {
            if a[k][k].is_zero() {
                match (k + 1..m).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(Poly::zero(f)),
                }
            }
            for i in k + 1..m {
                for j in k + 1..m {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev)?.expect("Bareiss step divides exactly");
                }
                a[i][k] = Poly::zero(f);
            }
            prev = a[k][k].clone();
        }
        let det = a[m - 1][m - 1].clone();
        Ok(if negate { -&det } else { det })
    }

    /// Determinant by evaluation at `0, 1, ..., D` and interpolation, where `D`
    /// bounds the determinant degree by the sum of row degrees. `None` when the
    /// field has too few elements for that.
    pub fn determinant_by_evaluation(&self) -> Result<Option<Poly>> {
        self.require_square()?;
        let f = self.field;
        let Some(bound) = self.degree().finite() else {
            return Ok(Some(Poly::zero(f)));
        };
        if bound + 1 > f.modulus() as usize {
            return Ok(None);
        }
        let mut points = Vec::with_capacity(bound + 1);
        for x in 0..=bound as u32 {
            let mut mat: Vec<Vec<u32>> = self
                .rows
                .iter()
                .map(|r| r.iter().map(|p| p.eval_raw(x)).collect())
                .collect();
            points.push((x, scalar_determinant(f, &mut mat)));
        }
        Poly::lagrange_interpolate(f, &points).map(Some)
    }

    pub fn det_degree(&self) -> Result<Degree> {
        Ok(self.determinant()?.degree())
    }

    /// `deg V - deg det V`. Errors on singular or non-square input.
    pub fn orthogonality_defect(&self) -> Result<i64> {
        self.weighted_orthogonality_defect(&WeightVector::zeros(self.cols))
    }

    /// Orthogonality defect of `V * diag(X^w)`, computed without scaling entries.
    pub fn weighted_orthogonality_defect(&self, w: &WeightVector) -> Result<i64> {
        self.require_weights(w)?;
        let det = self.det_degree()?.finite().ok_or(Error::SingularMatrix)?;
        let deg = self.weighted_degree(w).finite().ok_or(Error::SingularMatrix)?;
        Ok(deg as i64 - (det + w.total()) as i64)
    }

    pub fn is_weak_popov(&self) -> bool {
        self.is_weak_popov_weighted(&WeightVector::zeros(self.cols))
    }

    /// True iff no row is zero and the weighted leading positions are pairwise distinct.
    pub fn is_weak_popov_weighted(&self, w: &WeightVector) -> bool {
        if w.len() != self.cols {
            return false;
        }
        let mut seen = vec![false; self.cols];
        for r in &self.rows {
            match degree_and_lp(r, w) {
                None => return false,
                Some((_, lp)) if seen[lp] => return false,
                Some((_, lp)) => seen[lp] = true,
            }
        }
        true
    }
}

/// Determinant of a scalar matrix by Gaussian elimination (destroys the input).
fn scalar_determinant(f: PrimeField, a: &mut [Vec<u32>]) -> u32 {
    let m = a.len();
    let mut det = 1u32;
    for k in 0..m {
        let Some(p) = (k..m).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            det = f.neg(det);
        }
        det = f.mul(det, a[k][k]);
        let inv = f.inv(a[k][k]).expect("nonzero pivot");
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest {
            let c = f.mul(row[k], inv);
            if c == 0 {
                continue;
            }
            for j in k..m {
                row[j] = f.sub(row[j], f.mul(c, pivot[j]));
            }
        }
    }
    det
}

/// One row operation `row[target] -= scalar * X^shift * row[pivot]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleTransform {
    pub target: usize,
    pub pivot: usize,
    pub scalar: u32,
    pub shift: usize,
}

/// Every simple transformation applied by a reduction, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TransformLog(pub Vec<SimpleTransform>);

impl TransformLog {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SimpleTransform> {
        self.0.iter()
    }

    /// Replays the log on `m`. Used to audit that the reduction is a chain of
    /// unimodular row operations.
    pub fn replay(&self, m: &PolyMatrix) -> PolyMatrix {
        let mut rows = m.rows.clone();
        for t in &self.0 {
            apply(&mut rows, t);
        }
        PolyMatrix {
            field: m.field,
            cols: m.cols,
            rows,
        }
    }
}

fn apply(rows: &mut [Vec<Poly>], t: &SimpleTransform) {
    let (target, pivot) = if t.target < t.pivot {
        let (lo, hi) = rows.split_at_mut(t.pivot);
        (&mut lo[t.target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(t.target);
        (&mut hi[0], &lo[t.pivot])
    };
    for (dst, src) in target.iter_mut().zip(pivot) {
        dst.sub_scaled_shifted(t.scalar, t.shift, src);
    }
}

/// Mulders–Storjohann reduction of `m * diag(X^w)` to weak Popov form.
///
/// While two rows share a weighted leading position, the row of larger weighted
/// degree (on a tie, the one with the larger index) has its leading term cancelled
/// by a scaled, shifted copy of the other. The returned matrix is unweighted; it is
/// in weak Popov form with respect to `w`.
pub fn reduce_to_weak_popov(m: &PolyMatrix, w: &WeightVector) -> Result<(PolyMatrix, TransformLog)> {
    m.require_square()?;
    m.require_weights(w)?;
    let f = m.field;
    let mut rows = m.rows.clone();
    let mut info = Vec::with_capacity(rows.len());
    for r in &rows {
        info.push(degree_and_lp(r, w).ok_or(Error::SingularMatrix)?);
    }
    let mut log = Vec::new();
    let mut owner: Vec<Option<usize>> = vec![None; m.cols];
    loop {
        owner.iter_mut().for_each(|o| *o = None);
        let mut clash = None;
        for (i, &(_, lp)) in info.iter().enumerate() {
            match owner[lp] {
                Some(a) => {
                    clash = Some((a, i));
                    break;
                }
                None => owner[lp] = Some(i),
            }
        }
        let Some((a, b)) = clash else {
            break;
        };
        let (pivot, target) = if info[b].0 < info[a].0 { (b, a) } else { (a, b) };
        let (pd, col) = info[pivot];
        let (td, _) = info[target];
        let scalar = f.mul(
            rows[target][col].leading_coeff(),
            f.inv(rows[pivot][col].leading_coeff())?,
        );
        let t = SimpleTransform {
            target,
            pivot,
            scalar,
            shift: td - pd,
        };
        apply(&mut rows, &t);
        log.push(t);
        info[target] = degree_and_lp(&rows[target], w).ok_or(Error::SingularMatrix)?;
    }
    Ok((
        PolyMatrix {
            field: f,
            cols: m.cols,
            rows,
        },
        TransformLog(log),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf2_matrix(rows: &[[&[i64]; 3]; 3]) -> PolyMatrix {
        let f = PrimeField::gf2();
        PolyMatrix::from_coeffs(
            f,
            &rows
                .iter()
                .map(|r| r.iter().map(|c| c.to_vec()).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    // Weak Popov reduction chain over F_2: V0 -> V1 -> V2 -> V3, one row operation per arrow.
    fn v0() -> PolyMatrix {
        gf2_matrix(&[
            [&[1], &[0, 0, 1], &[0, 1]],
            [&[], &[0, 0, 0, 1], &[0, 0, 1]],
            [&[0, 1], &[1], &[]],
        ])
    }
    fn v1() -> PolyMatrix {
        gf2_matrix(&[[&[1], &[0, 0, 1], &[0, 1]], [&[0, 1], &[], &[]], [&[0, 1], &[1], &[]]])
    }
    fn v2() -> PolyMatrix {
        gf2_matrix(&[[&[1], &[0, 0, 1], &[0, 1]], [&[0, 1], &[], &[]], [&[], &[1], &[]]])
    }
    fn v3() -> PolyMatrix {
        gf2_matrix(&[[&[1], &[], &[0, 1]], [&[0, 1], &[], &[]], [&[], &[1], &[]]])
    }

    #[test]
    fn row_degrees_and_leading_positions() {
        let f = PrimeField::gf2();
        let p = |c: &[i64]| Poly::from_coeffs(f, c);
        assert_eq!(row_degree(v0().row(0)), 2);
        assert_eq!(row_degree(&[Poly::zero(f), Poly::zero(f)]), Degree::NegInf);
        assert_eq!(row_degree(v1().row(1)), 1);
        assert_eq!(leading_position(v0().row(0)).unwrap(), 1);
        assert_eq!(leading_position(&[p(&[0, 1]), p(&[0, 1]), p(&[1])]).unwrap(), 1);
        assert_eq!(leading_position(v3().row(0)).unwrap(), 2);
        assert_eq!(leading_position(&[Poly::zero(f)]), Err(Error::ZeroVector));
    }

    #[test]
    fn weak_popov_detection() {
        assert!(v3().is_weak_popov());
        assert!(PolyMatrix::identity(PrimeField::gf2(), 4).is_weak_popov());
        assert!(!v1().is_weak_popov());
        assert!(!v0().is_weak_popov());
    }

    #[test]
    fn orthogonality_defects_along_chain() {
        // deg V0 - deg det V0 = 6 - 2 = 4, not 3;
        // the one-step drop to OD(V1) = 2 agrees with 4.
        assert_eq!(v0().orthogonality_defect().unwrap(), 4);
        assert_eq!(v1().orthogonality_defect().unwrap(), 2);
        assert_eq!(v2().orthogonality_defect().unwrap(), 1);
        assert_eq!(v3().orthogonality_defect().unwrap(), 0);
        assert_eq!(
            PolyMatrix::identity(PrimeField::new(5).unwrap(), 3)
                .orthogonality_defect()
                .unwrap(),
            0
        );
    }

    #[test]
    fn singular_matrix_has_no_defect() {
        let f = PrimeField::new(5).unwrap();
        let m = PolyMatrix::from_coeffs(f, &[vec![vec![1], vec![0, 1]], vec![vec![2], vec![0, 2]]]).unwrap();
        assert_eq!(m.orthogonality_defect(), Err(Error::SingularMatrix));
        assert_eq!(
            reduce_to_weak_popov(&m, &WeightVector::zeros(2)).map(|_| ()),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn reduce_chain_start() {
        let (out, log) = reduce_to_weak_popov(&v0(), &WeightVector::zeros(3)).unwrap();
        assert!(out.is_weak_popov());
        assert_eq!(out.det_degree().unwrap(), 2);
        assert_eq!(out.orthogonality_defect().unwrap(), 0);
        assert!(!log.is_empty());
        assert_eq!(log.replay(&v0()), out);
    }

    #[test]
    fn reduce_fixpoint() {
        let (out, log) = reduce_to_weak_popov(&v3(), &WeightVector::zeros(3)).unwrap();
        assert_eq!(out, v3());
        assert!(log.is_empty());
    }

    #[test]
    fn determinant_routes_agree_on_chain() {
        for m in [v0(), v1(), v2(), v3()] {
            let bareiss = m.determinant().unwrap();
            assert_eq!(bareiss, Poly::from_coeffs(PrimeField::gf2(), &[0, 0, 1]));
        }
        let f = PrimeField::new(13).unwrap();
        let m = PolyMatrix::from_coeffs(
            f,
            &[
                vec![vec![1, 2], vec![0, 0, 3], vec![4]],
                vec![vec![5], vec![6, 1], vec![]],
                vec![vec![0, 1], vec![2], vec![7, 0, 1]],
            ],
        )
        .unwrap();
        assert_eq!(m.determinant_by_evaluation().unwrap(), Some(m.determinant().unwrap()));
    }

    fn arb_matrix(q: u32, m: usize, max_len: usize) -> impl Strategy<Value = PolyMatrix> {
        prop::collection::vec(prop::collection::vec(0..q, 0..max_len), m * m).prop_map(move |entries| {
            let f = PrimeField::new(q as u64).unwrap();
            let rows = entries
                .chunks(m)
                .map(|r| r.iter().map(|c| Poly::from_raw(f, c.clone())).collect())
                .collect();
            PolyMatrix::new(f, rows).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn determinant_by_two_routes(m in arb_matrix(31, 3, 4)) {
            prop_assert_eq!(m.determinant_by_evaluation().unwrap(), Some(m.determinant().unwrap()));
        }

        #[test]
        fn reduction_contract(
            m in arb_matrix(7, 3, 4),
            w in prop::collection::vec(0usize..4, 3),
        ) {
            let det = m.determinant().unwrap();
            prop_assume!(!det.is_zero());
            let w = WeightVector::new(w);
            prop_assert!(m.weighted_orthogonality_defect(&w).unwrap() >= 0);
            let (out, log) = reduce_to_weak_popov(&m, &w).unwrap();
            prop_assert!(out.is_weak_popov_weighted(&w));
            prop_assert_eq!(out.weighted_orthogonality_defect(&w).unwrap(), 0);
            let out_det = out.determinant().unwrap();
            prop_assert_eq!(out_det.degree(), det.degree());
            // Simple transformations are unimodular with determinant exactly 1.
            prop_assert_eq!(out_det, det);
            prop_assert_eq!(log.replay(&m), out);
        }

        #[test]
        fn weighted_reduction_matches_explicit_scaling(
            m in arb_matrix(7, 3, 4),
            w in prop::collection::vec(0usize..4, 3),
        ) {
            prop_assume!(!m.determinant().unwrap().is_zero());
            let w = WeightVector::new(w);
            let (virt, vlog) = reduce_to_weak_popov(&m, &w).unwrap();
            let scaled = m.scale_columns(&w).unwrap();
            let (expl, elog) = reduce_to_weak_popov(&scaled, &WeightVector::zeros(3)).unwrap();
            prop_assert_eq!(vlog, elog);
            prop_assert_eq!(expl.unscale_columns(&w).unwrap(), Some(virt));
        }

        #[test]
        fn reduced_rows_are_minimal(
            m in arb_matrix(5, 3, 3),
            coefs in prop::collection::vec(prop::collection::vec(0u32..5, 0..3), 3),
        ) {
            prop_assume!(!m.determinant().unwrap().is_zero());
            let (out, _) = reduce_to_weak_popov(&m, &WeightVector::zeros(3)).unwrap();
            let min = out.rows().iter().map(|r| row_degree(r)).min().unwrap();
            // A random F_q[X]-combination of the input rows.
            let f = m.field();
            let mut comb = vec![Poly::zero(f); 3];
            for (i, c) in coefs.iter().enumerate() {
                let c = Poly::from_raw(f, c.clone());
                for (j, acc) in comb.iter_mut().enumerate() {
                    *acc = &*acc + &(&c * m.entry(i, j));
                }
            }
            if comb.iter().any(|p| !p.is_zero()) {
                prop_assert!(row_degree(&comb) >= min);
            }
        }
    }
}
