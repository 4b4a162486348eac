use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::polymat::{reduce_to_weak_popov, weighted_row_degree, PolyMatrix, TransformLog, WeightVector};

use super::bivar::BivarPoly;
use super::context::InterpolationContext;

/// A basis of the interpolation module for intermediate parameters `(s, ell)`,
/// in weak Popov form with respect to the column weights `j (k - 1)`.
///
/// The basis is stored unweighted.
#[derive(Clone, Debug)]
pub struct InterpolationState {
    ctx: Arc<InterpolationContext>,
    s: usize,
    ell: usize,
    basis: PolyMatrix,
}

/// What one reduction cost.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    /// Weighted orthogonality defect of the matrix handed to the reduction.
    pub od_before: i64,
    pub transformations: usize,
    #[serde(skip)]
    pub log: TransformLog,
}

/// Audit view of a state.
#[derive(Serialize)]
pub struct StateSummary<'a> {
    pub s: usize,
    pub ell: usize,
    pub basis: &'a [Vec<Poly>],
    pub det_degree: usize,
}

/// Degree of `det A_{s,ell}`: the diagonal is `G^s, G^{s-1}, ..., G, 1, ..., 1`.
pub fn basis_det_degree(n: usize, s: usize) -> usize {
    n * s * (s + 1) / 2
}

impl InterpolationState {
    /// Reduces a generating matrix of `M_{s,ell}` and wraps the result.
    ///
    /// The orthogonality defect in the report is computed from the known determinant
    /// degree `n s (s+1) / 2` shared by every basis of the module.
    pub fn minimise(
        ctx: Arc<InterpolationContext>,
        generators: &PolyMatrix,
        s: usize,
        ell: usize,
    ) -> Result<(Self, ReductionReport)> {
        if s == 0 || s > ell || generators.nrows() != ell + 1 || generators.ncols() != ell + 1 {
            return Err(Error::InvalidParameters(format!(
                "{}x{} generators for (s, ell) = ({s}, {ell})",
                generators.nrows(),
                generators.ncols()
            )));
        }
        let w = ctx.weights(ell);
        let deg = generators.weighted_degree(&w).finite().ok_or(Error::SingularMatrix)?;
        let od_before = deg as i64 - (basis_det_degree(ctx.n(), s) + w.total()) as i64;
        let (basis, log) = reduce_to_weak_popov(generators, &w)?;
        let report = ReductionReport {
            od_before,
            transformations: log.len(),
            log,
        };
        Ok((Self { ctx, s, ell, basis }, report))
    }

    /// Reduced basis of `M_{1,1}`, the starting point of every refinement chain.
    pub fn initial(ctx: Arc<InterpolationContext>) -> Result<(Self, ReductionReport)> {
        Self::direct(ctx, 1, 1)
    }

    /// Reduced basis of `M_{s,ell}` computed in one shot from the explicit basis.
    pub fn direct(ctx: Arc<InterpolationContext>, s: usize, ell: usize) -> Result<(Self, ReductionReport)> {
        let a = ctx.build_a(s, ell)?;
        Self::minimise(ctx, &a, s, ell)
    }

    pub fn context(&self) -> &Arc<InterpolationContext> {
        &self.ctx
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn basis(&self) -> &PolyMatrix {
        &self.basis
    }

    pub fn weights(&self) -> WeightVector {
        self.ctx.weights(self.ell)
    }

    pub fn det_degree(&self) -> usize {
        basis_det_degree(self.ctx.n(), self.s)
    }

    pub fn summary(&self) -> StateSummary<'_> {
        StateSummary {
            s: self.s,
            ell: self.ell,
            basis: self.basis.rows(),
            det_degree: self.det_degree(),
        }
    }

    /// Generators of `M_{s,ell+1}`: the current basis padded with a zero column,
    /// plus the row `Y^{ell-s+1} (Y - R)^s`.
    pub fn c1_matrix(&self) -> PolyMatrix {
        let f = self.ctx.code().field();
        let width = self.ell + 2;
        let mut rows: Vec<Vec<Poly>> = self
            .basis
            .rows()
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.push(Poly::zero(f));
                r
            })
            .collect();
        let pow = self.ctx.y_minus_r_powers(self.s).pop().expect("s >= 1");
        let offset = self.ell - self.s + 1;
        let mut last = vec![Poly::zero(f); width];
        for (j, c) in pow.into_iter().enumerate() {
            last[offset + j] = c;
        }
        rows.push(last);
        PolyMatrix::new(f, rows).expect("rectangular by construction")
    }

    /// Generators of `M_{s+1,ell+1}`: `G^{s+1}` followed by each basis row times `(Y - R)`.
    /// Multiplying by Y shifts a row one column to the right.
    pub fn c2_matrix(&self) -> PolyMatrix {
        let f = self.ctx.code().field();
        let width = self.ell + 2;
        let mut first = vec![Poly::zero(f); width];
        first[0] = self.ctx.g().pow(self.s as u64 + 1);
        let mut rows = vec![first];
        let r = self.ctx.r();
        for b in self.basis.rows() {
            let mut row = vec![Poly::zero(f); width];
            for (j, p) in b.iter().enumerate() {
                row[j + 1] = &row[j + 1] + p;
                row[j] = &row[j] - &(r * p);
            }
            rows.push(row);
        }
        PolyMatrix::new(f, rows).expect("rectangular by construction")
    }

    /// `(s, ell) -> (s, ell + 1)`.
    pub fn microstep1(&self) -> Result<(Self, ReductionReport)> {
        Self::minimise(self.ctx.clone(), &self.c1_matrix(), self.s, self.ell + 1)
    }

    /// `(s, ell) -> (s + 1, ell + 1)`.
    pub fn microstep2(&self) -> Result<(Self, ReductionReport)> {
        Self::minimise(self.ctx.clone(), &self.c2_matrix(), self.s + 1, self.ell + 1)
    }

    /// Index, polynomial and weighted degree of the basis row of least `(1, k-1)`-weighted
    /// degree. Ties go to the lowest row index.
    pub fn minimal_weighted_row(&self) -> (usize, BivarPoly, usize) {
        let w = self.weights();
        let (idx, deg) = self
            .basis
            .rows()
            .iter()
            .enumerate()
            .map(|(i, r)| (i, weighted_row_degree(r, &w)))
            .min_by_key(|&(i, d)| (d, i))
            .expect("basis has at least two rows");
        let deg = deg.finite().expect("basis rows are nonzero");
        let q = BivarPoly::from_row(self.ctx.code().field(), self.basis.row(idx));
        (idx, q, deg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{inject_errors, GrsCode};
    use crate::field::PrimeField;
    use crate::gsmodule::params::decoding_radius;
    use crate::rootfind::y_roots;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn noisy_context(weight: usize, seed: u64) -> (Arc<InterpolationContext>, Poly) {
        let code = GrsCode::standard(PrimeField::new(17).unwrap(), 16, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let msg = code.random_message(&mut rng);
        let (r, _) = inject_errors(code.field(), &code.encode(&msg).unwrap(), weight, seed).unwrap();
        (Arc::new(InterpolationContext::new(&code, &r).unwrap()), msg)
    }

    fn check_state(st: &InterpolationState) {
        let ctx = st.context();
        let w = st.weights();
        assert!(st.basis().is_weak_popov_weighted(&w));
        assert_eq!(st.basis().det_degree().unwrap().finite(), Some(st.det_degree()));
        let f = ctx.code().field();
        for row in st.basis().rows() {
            assert!(ctx.in_module(&BivarPoly::from_row(f, row), st.s(), st.ell()));
        }
    }

    #[test]
    fn initial_state_meets_degree_bound() {
        for seed in 0..10 {
            let (ctx, msg) = noisy_context(6, seed);
            let (st, _) = InterpolationState::initial(ctx).unwrap();
            check_state(&st);
            let (_, q, wdeg) = st.minimal_weighted_row();
            assert!(wdeg < 10);
            assert!(q.eval_y(&msg).is_zero());
        }
    }

    #[test]
    fn minimise_is_a_fixpoint_on_reduced_bases() {
        let (ctx, _) = noisy_context(7, 1);
        let (st, _) = InterpolationState::direct(ctx.clone(), 2, 3).unwrap();
        let (again, report) = InterpolationState::minimise(ctx, st.basis(), 2, 3).unwrap();
        assert_eq!(report.transformations, 0);
        assert_eq!(report.od_before, 0);
        assert_eq!(again.basis(), st.basis());
    }

    #[test]
    fn microstep1_structure() {
        let (ctx, _) = noisy_context(7, 2);
        let (st, _) = InterpolationState::initial(ctx.clone()).unwrap();
        let c = st.c1_matrix();
        let f = ctx.code().field();
        assert_eq!(c.row(2), &[Poly::zero(f), -ctx.r(), Poly::one(f)]);
        let deg_r = ctx.r().deg().unwrap();
        let w = ctx.weights(2);
        assert_eq!(c.weighted_orthogonality_defect(&w).unwrap(), (deg_r - 4 + 1) as i64);
        let (next, report) = st.microstep1().unwrap();
        assert_eq!((next.s(), next.ell()), (1, 2));
        assert_eq!(report.od_before, (deg_r - 3) as i64);
        check_state(&next);
    }

    #[test]
    fn microstep2_structure() {
        let (ctx, _) = noisy_context(8, 3);
        // Start from the explicit A_{1,1} basis to pin the expected C^II exactly.
        let a = ctx.build_a(1, 1).unwrap();
        let st = InterpolationState {
            ctx: ctx.clone(),
            s: 1,
            ell: 1,
            basis: a,
        };
        let c = st.c2_matrix();
        let (g, r) = (ctx.g(), ctx.r());
        let f = ctx.code().field();
        let z = Poly::zero(f);
        let expected = PolyMatrix::new(
            f,
            vec![
                vec![g * g, z.clone(), z.clone()],
                vec![-&(r * g), g.clone(), z],
                vec![r * r, r.scale(f.neg(2)), Poly::one(f)],
            ],
        )
        .unwrap();
        assert_eq!(c, expected);
        assert_eq!(c, ctx.build_a(2, 2).unwrap());

        let (st, _) = InterpolationState::initial(ctx.clone()).unwrap();
        let c = st.c2_matrix();
        let det = c.determinant().unwrap().deg().unwrap();
        assert_eq!(det, 2 * 16 + st.det_degree());
        let deg_r = ctx.r().deg().unwrap();
        assert_eq!(
            c.weighted_orthogonality_defect(&ctx.weights(2)).unwrap(),
            (2 * (deg_r - 3)) as i64
        );
        let (next, _) = st.microstep2().unwrap();
        assert_eq!((next.s(), next.ell()), (2, 2));
        check_state(&next);
    }

    #[test]
    fn chain_reaches_same_minimum_as_one_shot() {
        for seed in 0..6 {
            let (ctx, msg) = noisy_context(8, seed);
            let (st, _) = InterpolationState::initial(ctx.clone()).unwrap();
            let (st, _) = st.microstep1().unwrap();
            let (st, _) = st.microstep1().unwrap();
            let (st, _) = st.microstep2().unwrap();
            check_state(&st);
            let (direct, _) = InterpolationState::direct(ctx.clone(), 2, 4).unwrap();
            let (_, q, wdeg) = st.minimal_weighted_row();
            assert_eq!(wdeg, direct.minimal_weighted_row().2);
            let tau = decoding_radius(2, 4, 16, 4).unwrap();
            assert!(wdeg < 2 * (16 - tau));
            assert!(y_roots(&q, 4).unwrap().contains(&msg));
        }
    }

    #[test]
    fn zero_error_row_has_message_as_root() {
        let (ctx, msg) = noisy_context(0, 5);
        assert_eq!(ctx.r(), &msg);
        let (st, _) = InterpolationState::initial(ctx).unwrap();
        let (_, q, _) = st.minimal_weighted_row();
        assert!(q.eval_y(&msg).is_zero());
    }
}
