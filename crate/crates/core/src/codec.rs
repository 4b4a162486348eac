//! Generalised Reed–Solomon codes: definition, encoding, error injection.
//!
//! Words are sequences of raw residues in `[0, q)`.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsCode {
    field: PrimeField,
    k: usize,
    alphas: Vec<u32>,
    ws: Vec<u32>,
}

/// JSON shape of a code: `{q, n, k, alphas?, ws?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ws: Option<Vec<u32>>,
}

impl CodeSpec {
    pub fn build(&self) -> Result<GrsCode> {
        let field = PrimeField::new(self.q)?;
        let alphas = match &self.alphas {
            Some(a) => a.clone(),
            None => GrsCode::default_points(field, self.n)?,
        };
        let ws = self.ws.clone().unwrap_or_else(|| vec![1; self.n]);
        if alphas.len() != self.n {
            return Err(Error::InvalidCode(format!(
                "{} evaluation points given for n = {}",
                alphas.len(),
                self.n
            )));
        }
        GrsCode::new(field, self.k, alphas, ws)
    }
}

impl GrsCode {
    /// Code with evaluation points and column multipliers given explicitly.
    pub fn new(field: PrimeField, k: usize, alphas: Vec<u32>, ws: Vec<u32>) -> Result<Self> {
        let n = alphas.len();
        let q = field.modulus();
        if ws.len() != n {
            return Err(Error::InvalidCode(format!(
                "{} column multipliers for {n} points",
                ws.len()
            )));
        }
        if n == 0 || n >= q as usize {
            return Err(Error::InvalidCode(format!("need 1 <= n < q, got n = {n}, q = {q}")));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidCode(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
        }
        let mut seen = vec![false; q as usize];
        for &a in &alphas {
            if a == 0 || a >= q {
                return Err(Error::InvalidCode(format!(
                    "evaluation point {a} must be a nonzero residue"
                )));
            }
            if std::mem::replace(&mut seen[a as usize], true) {
                return Err(Error::InvalidCode(format!("evaluation point {a} repeated")));
            }
        }
        if let Some(&w) = ws.iter().find(|&&w| w == 0 || w >= q) {
            return Err(Error::InvalidCode(format!(
                "column multiplier {w} must be a nonzero residue"
            )));
        }
        Ok(Self { field, k, alphas, ws })
    }

    /// Points `1, 2, ..., n` and unit multipliers.
    pub fn standard(field: PrimeField, n: usize, k: usize) -> Result<Self> {
        Self::new(field, k, Self::default_points(field, n)?, vec![1; n])
    }

    fn default_points(field: PrimeField, n: usize) -> Result<Vec<u32>> {
        if n == 0 || n >= field.modulus() as usize {
            return Err(Error::InvalidCode(format!(
                "need 1 <= n < q, got n = {n}, q = {}",
                field.modulus()
            )));
        }
        Ok((1..=n as u32).collect())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance `n - k + 1`.
    pub fn min_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }

    pub fn ws(&self) -> &[u32] {
        &self.ws
    }

    pub fn spec(&self) -> CodeSpec {
        CodeSpec {
            q: self.field.modulus() as u64,
            n: self.n(),
            k: self.k,
            alphas: Some(self.alphas.clone()),
            ws: Some(self.ws.clone()),
        }
    }

    /// `(w_0 f(a_0), ..., w_{n-1} f(a_{n-1}))`.
    pub fn encode(&self, f: &Poly) -> Result<Vec<u32>> {
        if f.field() != self.field {
            return Err(Error::FieldMismatch(self.field.modulus(), f.field().modulus()));
        }
        if let Some(d) = f.deg().filter(|&d| d >= self.k) {
            return Err(Error::MessageTooLong { deg: d, k: self.k });
        }
        Ok(self.encode_unchecked(f))
    }

    pub(crate) fn encode_unchecked(&self, f: &Poly) -> Vec<u32> {
        self.alphas
            .iter()
            .zip(&self.ws)
            .map(|(&a, &w)| self.field.mul(w, f.eval_raw(a)))
            .collect()
    }

    /// Validates that `word` has length `n` and residues in `[0, q)`.
    pub fn check_word(&self, word: &[u32]) -> Result<()> {
        if word.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: word.len(),
            });
        }
        if let Some(&s) = word.iter().find(|&&s| s >= self.field.modulus()) {
            return Err(Error::InvalidCode(format!(
                "symbol {s} is not a residue mod {}",
                self.field.modulus()
            )));
        }
        Ok(())
    }

    /// Uniformly random information polynomial of degree `< k`.
    pub fn random_message<R: Rng>(&self, rng: &mut R) -> Poly {
        let q = self.field.modulus();
        Poly::from_raw(self.field, (0..self.k).map(|_| rng.random_range(0..q)).collect())
    }
}

/// Changes exactly `weight` positions of `word`, each to a uniformly random
/// different symbol. Returns the corrupted word and the sorted error positions.
pub fn inject_errors(field: PrimeField, word: &[u32], weight: usize, seed: u64) -> Result<(Vec<u32>, Vec<usize>)> {
    if weight > word.len() {
        return Err(Error::InvalidParameters(format!(
            "error weight {weight} exceeds length {}",
            word.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positions = index::sample(&mut rng, word.len(), weight).into_vec();
    positions.sort_unstable();
    let mut out = word.to_vec();
    let q = field.modulus();
    for &p in &positions {
        let offset = rng.random_range(1..q);
        out[p] = field.add(out[p] % q, offset);
    }
    Ok((out, positions))
}

pub fn hamming_distance(a: &[u32], b: &[u32]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}
