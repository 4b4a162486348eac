//! Multi-trial decoding: refine the interpolation basis step by step and attempt
//! root-finding whenever the decoding radius has grown, stopping at the first
//! nonempty candidate list.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::codec::GrsCode;
use crate::error::{Error, Result};
use crate::gsmodule::{compute_e, decoding_radius, InterpolationContext, InterpolationState, ReductionReport};
use crate::rootfind::{filter_candidates, y_roots, RootCandidate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Token {
    /// Micro-step `(s, ell) -> (s, ell + 1)`.
    S1,
    /// Micro-step `(s, ell) -> (s + 1, ell + 1)`.
    S2,
    /// Decoding attempt at the current radius.
    #[serde(rename = "ROOT")]
    Root,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Token::S1 => "S1",
            Token::S2 => "S2",
            Token::Root => "ROOT",
        })
    }
}

impl FromStr for Token {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "S1" => Ok(Token::S1),
            "S2" => Ok(Token::S2),
            "ROOT" | "R" => Ok(Token::Root),
            other => Err(Error::Parse(format!("unknown schedule token {other:?}"))),
        }
    }
}

/// The token list walked after the initial `(1, 1)` basis is built.
///
/// A decoding attempt at `(1, 1)` always precedes the tokens and is not listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Schedule {
    tokens: Vec<Token>,
    target_s: usize,
    target_ell: usize,
}

/// A point visited by a schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Waypoint {
    pub s: usize,
    pub ell: usize,
    pub tau: Option<usize>,
}

impl Schedule {
    /// Validates a token list; the target is implied by the token counts.
    pub fn from_tokens(tokens: Vec<Token>) -> Result<Self> {
        let (mut s, mut ell) = (1usize, 1usize);
        for t in &tokens {
            match t {
                Token::S1 => ell += 1,
                Token::S2 => {
                    s += 1;
                    ell += 1;
                }
                Token::Root => {}
            }
            if s > ell {
                return Err(Error::InfeasibleSchedule(format!(
                    "prefix reaches s = {s} > ell = {ell}"
                )));
            }
        }
        Ok(Self {
            tokens,
            target_s: s,
            target_ell: ell,
        })
    }

    /// Parses a comma- or space-separated token list such as `S1,ROOT,S1,S2,ROOT`.
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(Token::from_str)
            .collect::<Result<Vec<_>>>()?;
        Self::from_tokens(tokens)
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    /// Tokens as executed, including the leading attempt at `(1, 1)`.
    pub fn effective_tokens(&self) -> Vec<Token> {
        std::iter::once(Token::Root)
            .chain(self.tokens.iter().copied())
            .collect()
    }

    pub fn target(&self) -> (usize, usize) {
        (self.target_s, self.target_ell)
    }

    pub fn without_roots(&self) -> Self {
        Self {
            tokens: self.tokens.iter().copied().filter(|&t| t != Token::Root).collect(),
            ..self.clone()
        }
    }

    /// Parameters at each decoding attempt, starting with the implicit one at `(1, 1)`.
    pub fn attempts(&self, n: usize, k: usize) -> Vec<Waypoint> {
        let (mut s, mut ell) = (1, 1);
        let mut out = vec![Waypoint {
            s,
            ell,
            tau: decoding_radius(s, ell, n, k),
        }];
        for t in &self.tokens {
            match t {
                Token::S1 => ell += 1,
                Token::S2 => {
                    s += 1;
                    ell += 1;
                }
                Token::Root => out.push(Waypoint {
                    s,
                    ell,
                    tau: decoding_radius(s, ell, n, k),
                }),
            }
        }
        out
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tokens.iter().map(Token::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Smallest `(s', ell')`, by `s'` then `ell'`, with `s' <= s`, `ell' <= ell`, `s' <= ell'`
/// and `(s', ell', tau)` permissible.
fn minimal_pair(tau: usize, s: usize, ell: usize, n: usize, k: usize) -> Option<(usize, usize)> {
    (1..=s).find_map(|si| {
        (si..=ell)
            .find(|&li| compute_e(si, li, tau, n, k) > 0)
            .map(|li| (si, li))
    })
}

fn push_steps(tokens: &mut Vec<Token>, from: (usize, usize), to: (usize, usize)) -> Result<()> {
    let (ds, dl) = (to.0 as i64 - from.0 as i64, to.1 as i64 - from.1 as i64);
    if ds < 0 || dl < ds {
        return Err(Error::InfeasibleSchedule(format!(
            "cannot step from (s, ell) = {from:?} to {to:?} with micro-steps"
        )));
    }
    tokens.extend(std::iter::repeat_n(Token::S1, (dl - ds) as usize));
    tokens.extend(std::iter::repeat_n(Token::S2, ds as usize));
    Ok(())
}

/// Default schedule towards `(s, ell)`: one attempt per achievable radius above the
/// unique-decoding radius, each at the smallest parameters reaching it.
pub fn make_schedule(n: usize, k: usize, s: usize, ell: usize) -> Result<Schedule> {
    if s == 0 || s > ell {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= s <= ell, got s = {s}, ell = {ell}"
        )));
    }
    let target_tau = decoding_radius(s, ell, n, k).ok_or(Error::NotPermissible { s, ell })?;
    let mut cur = (1, 1);
    let mut cur_tau = decoding_radius(1, 1, n, k).expect("tau = 0 is always permissible for s = ell = 1");
    let mut tokens = Vec::new();
    for tau in cur_tau + 1..=target_tau {
        if tau <= cur_tau {
            continue;
        }
        let next = minimal_pair(tau, s, ell, n, k).expect("the target itself is permissible");
        push_steps(&mut tokens, cur, next)?;
        tokens.push(Token::Root);
        cur = next;
        cur_tau = decoding_radius(next.0, next.1, n, k).expect("permissible by construction");
    }
    push_steps(&mut tokens, cur, (s, ell))?;
    Schedule::from_tokens(tokens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Found,
    Exhausted,
}

/// One line of the decoding log.
#[derive(Clone, Debug, Serialize)]
pub struct TraceEntry {
    /// `INIT`, `S1`, `S2`, `ROOT` or `CODEWORD`.
    pub step: String,
    pub s: usize,
    pub ell: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub od_before: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transformations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wdeg: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates: Option<usize>,
    /// Wall time of the step; kept out of the JSON so output stays reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TraceEntry {
    fn reduction(step: &str, st: &InterpolationState, rep: &ReductionReport, elapsed: Duration) -> Self {
        Self {
            step: step.into(),
            s: st.s(),
            ell: st.ell(),
            od_before: Some(rep.od_before),
            transformations: Some(rep.transformations),
            wdeg: None,
            tau: None,
            candidates: None,
            elapsed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StopPoint {
    pub s: usize,
    pub ell: usize,
    pub tau: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecodeResult {
    pub status: Status,
    pub stopped_at: StopPoint,
    pub candidates: Vec<RootCandidate>,
    pub trace: Vec<TraceEntry>,
}

impl DecodeResult {
    pub fn micro_steps(&self) -> usize {
        self.trace.iter().filter(|t| t.step == "S1" || t.step == "S2").count()
    }

    /// Simple transformations over all reductions performed.
    pub fn transformations(&self) -> usize {
        self.trace.iter().filter_map(|t| t.transformations).sum()
    }
}

fn check_schedule(code: &GrsCode, schedule: &Schedule) -> Result<()> {
    let (s, ell) = schedule.target();
    let n = code.n();
    if ell + 1 > 64 * n {
        return Err(Error::InvalidParameters(format!("list size {ell} is out of range")));
    }
    decoding_radius(s, ell, n, code.k()).ok_or(Error::NotPermissible { s, ell })?;
    Ok(())
}

/// Runs the micro-steps of `schedule`, ignoring its decoding attempts.
pub fn refine(
    ctx: Arc<InterpolationContext>,
    schedule: &Schedule,
) -> Result<(InterpolationState, Vec<ReductionReport>)> {
    let (mut st, rep) = InterpolationState::initial(ctx)?;
    let mut reports = vec![rep];
    for t in schedule.tokens() {
        let (next, rep) = match t {
            Token::S1 => st.microstep1()?,
            Token::S2 => st.microstep2()?,
            Token::Root => continue,
        };
        st = next;
        reports.push(rep);
    }
    Ok((st, reports))
}

/// Decoding attempt on the current basis at radius `tau(s, ell)`.
fn attempt(st: &InterpolationState, code: &GrsCode, received: &[u32]) -> Result<(TraceEntry, Vec<RootCandidate>)> {
    let start = Instant::now();
    let (n, k) = (code.n(), code.k());
    let tau = decoding_radius(st.s(), st.ell(), n, k);
    let (_, q, wdeg) = st.minimal_weighted_row();
    let candidates = match tau {
        Some(tau) => filter_candidates(&y_roots(&q, k)?, code, received, tau)?,
        None => Vec::new(),
    };
    let entry = TraceEntry {
        step: "ROOT".into(),
        s: st.s(),
        ell: st.ell(),
        od_before: None,
        transformations: None,
        wdeg: Some(wdeg),
        tau,
        candidates: Some(candidates.len()),
        elapsed: start.elapsed(),
    };
    Ok((entry, candidates))
}

/// The multi-trial decoder.
///
/// Builds and reduces the `(1, 1)` basis, attempts decoding, then walks the schedule.
/// Returns at the first attempt yielding candidates (`Found`), or after the last
/// token with the last attempt's (possibly empty) list (`Exhausted`).
pub fn multi_trial_decode(code: &GrsCode, received: &[u32], schedule: &Schedule) -> Result<DecodeResult> {
    check_schedule(code, schedule)?;
    let ctx = Arc::new(InterpolationContext::new(code, received)?);
    let (n, k) = (code.n(), code.k());
    let tau11 = decoding_radius(1, 1, n, k).expect("always permissible");
    let stop = |s, ell, tau: Option<usize>| StopPoint {
        s,
        ell,
        tau: tau.unwrap_or(0),
    };

    if ctx.is_codeword() {
        let start = Instant::now();
        // R itself is the message; the refinement formulas assume deg R >= k.
        let candidates = filter_candidates(std::slice::from_ref(ctx.r()), code, received, 0)?;
        let trace = vec![TraceEntry {
            step: "CODEWORD".into(),
            s: 1,
            ell: 1,
            od_before: None,
            transformations: None,
            wdeg: None,
            tau: Some(tau11),
            candidates: Some(candidates.len()),
            elapsed: start.elapsed(),
        }];
        return Ok(DecodeResult {
            status: Status::Found,
            stopped_at: stop(1, 1, Some(tau11)),
            candidates,
            trace,
        });
    }

    let mut trace = Vec::new();
    let start = Instant::now();
    let (mut st, rep) = InterpolationState::initial(ctx)?;
    trace.push(TraceEntry::reduction("INIT", &st, &rep, start.elapsed()));
    let (entry, mut last) = attempt(&st, code, received)?;
    let mut last_tau = entry.tau;
    let mut last_at = (1, 1);
    trace.push(entry);
    if !last.is_empty() {
        return Ok(DecodeResult {
            status: Status::Found,
            stopped_at: stop(1, 1, last_tau),
            candidates: last,
            trace,
        });
    }
    for t in schedule.tokens() {
        match t {
            Token::S1 | Token::S2 => {
                let start = Instant::now();
                let (next, rep) = if *t == Token::S1 {
                    st.microstep1()?
                } else {
                    st.microstep2()?
                };
                st = next;
                trace.push(TraceEntry::reduction(&t.to_string(), &st, &rep, start.elapsed()));
            }
            Token::Root => {
                let (entry, cands) = attempt(&st, code, received)?;
                last_tau = entry.tau;
                last_at = (st.s(), st.ell());
                last = cands;
                trace.push(entry);
                if !last.is_empty() {
                    return Ok(DecodeResult {
                        status: Status::Found,
                        stopped_at: stop(st.s(), st.ell(), last_tau),
                        candidates: last,
                        trace,
                    });
                }
            }
        }
    }
    Ok(DecodeResult {
        status: Status::Exhausted,
        stopped_at: stop(last_at.0, last_at.1, last_tau),
        candidates: last,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::inject_errors;
    use crate::field::PrimeField;
    use crate::oracles::{brute_force_nearest, OracleBudget};
    use crate::poly::Poly;
    use Token::*;

    fn rs16_4() -> GrsCode {
        GrsCode::standard(PrimeField::new(17).unwrap(), 16, 4).unwrap()
    }

    #[test]
    fn default_schedules_for_rs_16_4() {
        let sched = make_schedule(16, 4, 2, 4).unwrap();
        assert_eq!(sched.tokens(), &[S1, Root, S1, S2, Root]);
        let radii: Vec<_> = sched.attempts(16, 4).iter().map(|w| (w.s, w.ell, w.tau)).collect();
        assert_eq!(radii, vec![(1, 1, Some(6)), (1, 2, Some(7)), (2, 4, Some(8))]);

        let one = make_schedule(16, 4, 1, 1).unwrap();
        assert!(one.tokens().is_empty());
        assert_eq!(one.effective_tokens(), vec![Root]);

        let two = make_schedule(16, 4, 1, 2).unwrap();
        assert_eq!(two.tokens(), &[S1, Root]);
        assert_eq!(two.effective_tokens(), vec![Root, S1, Root]);

        // (1, 3) has the same radius as (1, 2); the last step carries no attempt.
        assert_eq!(make_schedule(16, 4, 1, 3).unwrap().tokens(), &[S1, Root, S1]);
    }

    #[test]
    fn schedule_counts_and_monotone_radii() {
        for (n, k) in [(16, 4), (12, 3), (30, 6), (20, 2)] {
            for ell in 1..=6 {
                for s in 1..=ell {
                    let Ok(sched) = make_schedule(n, k, s, ell) else {
                        continue;
                    };
                    let s1 = sched.tokens().iter().filter(|&&t| t == S1).count();
                    let s2 = sched.tokens().iter().filter(|&&t| t == S2).count();
                    assert_eq!((s1, s2), (ell - s, s - 1));
                    let radii: Vec<_> = sched.attempts(n, k).iter().map(|w| w.tau.unwrap()).collect();
                    assert!(radii.windows(2).all(|w| w[0] < w[1]), "{radii:?}");
                }
            }
        }
    }

    #[test]
    fn schedule_errors() {
        assert!(matches!(make_schedule(16, 4, 3, 2), Err(Error::InvalidParameters(_))));
        assert!(matches!(make_schedule(3, 3, 1, 3), Err(Error::NotPermissible { .. })));
        assert_eq!(Schedule::parse("S1, root S2").unwrap().tokens(), &[S1, Root, S2]);
        assert!(Schedule::parse("S3").is_err());
        assert_eq!(Schedule::parse("S1,R,S1,S2,R").unwrap().target(), (2, 4));
        assert_eq!(Schedule::parse("").unwrap().target(), (1, 1));
    }

    #[test]
    fn zero_errors_stop_immediately() {
        let code = rs16_4();
        let f = code.field();
        let msg = Poly::from_coeffs(f, &[7, 1, 0, 3]);
        let cw = code.encode(&msg).unwrap();
        let res = multi_trial_decode(&code, &cw, &make_schedule(16, 4, 2, 4).unwrap()).unwrap();
        assert_eq!(res.status, Status::Found);
        assert_eq!(res.candidates.len(), 1);
        assert_eq!(res.candidates[0].distance, 0);
        assert_eq!(res.candidates[0].f, msg);
        assert_eq!(res.micro_steps(), 0);
    }

    #[test]
    fn list_decoding_beyond_half_distance() {
        let code = rs16_4();
        let f = code.field();
        let sched = make_schedule(16, 4, 2, 4).unwrap();
        for seed in 0..8 {
            let msg = Poly::from_coeffs(f, &[seed as i64, 2, 3, 5]);
            let cw = code.encode(&msg).unwrap();
            let (r, _) = inject_errors(f, &cw, 8, seed).unwrap();
            let res = multi_trial_decode(&code, &r, &sched).unwrap();
            assert_eq!(res.status, Status::Found);
            assert!(res.candidates.iter().any(|c| c.codeword == cw));
            let oracle = brute_force_nearest(&code, &r, res.stopped_at.tau, OracleBudget::default()).unwrap();
            assert_eq!(res.candidates, oracle);
        }
    }

    #[test]
    fn early_exit_within_unique_radius() {
        let code = rs16_4();
        let f = code.field();
        let sched = make_schedule(16, 4, 2, 4).unwrap();
        for seed in 0..10 {
            let cw = code.encode(&Poly::from_coeffs(f, &[1, seed as i64, 4, 4])).unwrap();
            let (r, _) = inject_errors(f, &cw, 1 + seed as usize % 6, seed).unwrap();
            let res = multi_trial_decode(&code, &r, &sched).unwrap();
            assert_eq!(res.micro_steps(), 0);
            assert_eq!(res.stopped_at, StopPoint { s: 1, ell: 1, tau: 6 });
            assert_eq!(res.candidates.len(), 1);
            assert_eq!(res.candidates[0].codeword, cw);
        }
    }

    #[test]
    fn exhausted_beyond_maximal_radius() {
        let code = rs16_4();
        let f = code.field();
        let sched = make_schedule(16, 4, 2, 4).unwrap();
        let cw = code.encode(&Poly::from_coeffs(f, &[1, 2, 3, 4])).unwrap();
        let mut exhausted = 0;
        for seed in 0..10 {
            let (r, _) = inject_errors(f, &cw, 11, seed).unwrap();
            let res = multi_trial_decode(&code, &r, &sched).unwrap();
            let oracle = brute_force_nearest(&code, &r, res.stopped_at.tau, OracleBudget::default()).unwrap();
            assert_eq!(res.candidates, oracle);
            assert!(res.candidates.iter().all(|c| c.codeword != cw));
            if res.status == Status::Exhausted {
                exhausted += 1;
                assert_eq!(res.stopped_at, StopPoint { s: 2, ell: 4, tau: 8 });
            }
        }
        assert!(exhausted > 0);
    }

    #[test]
    fn refinement_without_attempts_matches_one_shot() {
        let code = rs16_4();
        let f = code.field();
        let cw = code.encode(&Poly::from_coeffs(f, &[3, 3, 3, 3])).unwrap();
        let (r, _) = inject_errors(f, &cw, 9, 4).unwrap();
        let ctx = Arc::new(InterpolationContext::new(&code, &r).unwrap());
        let sched = make_schedule(16, 4, 2, 4).unwrap().without_roots();
        let (st, reports) = refine(ctx.clone(), &sched).unwrap();
        assert_eq!(reports.len(), 4);
        let (direct, _) = InterpolationState::direct(ctx, 2, 4).unwrap();
        assert_eq!(st.minimal_weighted_row().2, direct.minimal_weighted_row().2);
    }

    #[test]
    fn result_json_shape() {
        let code = rs16_4();
        let f = code.field();
        let cw = code.encode(&Poly::from_coeffs(f, &[1, 1])).unwrap();
        let (r, _) = inject_errors(f, &cw, 7, 0).unwrap();
        let res = multi_trial_decode(&code, &r, &make_schedule(16, 4, 2, 4).unwrap()).unwrap();
        let v = serde_json::to_value(&res).unwrap();
        assert_eq!(v["status"], "FOUND");
        assert!(v["stopped_at"]["tau"].is_number());
        assert!(v["trace"].as_array().unwrap().len() >= 2);
        assert!(v["candidates"][0]["codeword"].is_array());
    }
}
