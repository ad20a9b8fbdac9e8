//! Integral weights of the diagonal torus in fundamental-weight coordinates.
//!
//! A weight for rank `n − 1` is the vector `(ω(H_{α_1}), …, ω(H_{α_{n−1}}))`;
//! dominant means all coordinates are ≥ 0.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeightVec(pub Vec<i64>);

impl WeightVec {
    pub fn zero(n: usize) -> WeightVec {
        WeightVec(vec![0; n - 1])
    }

    /// The fundamental weight `ω_i`, `1 ≤ i ≤ n−1`.
    pub fn fundamental(n: usize, i: usize) -> Result<WeightVec> {
        if i < 1 || i >= n {
            return Err(Error::IndexRange(format!("fundamental weight index {i} for n={n}")));
        }
        let mut v = vec![0; n - 1];
        v[i - 1] = 1;
        Ok(WeightVec(v))
    }

    /// The simple root `α_l` in fundamental coordinates (the `l`-th Cartan row).
    pub fn simple_root(n: usize, l: usize) -> Result<WeightVec> {
        if l < 1 || l >= n {
            return Err(Error::IndexRange(format!("simple root index {l} for n={n}")));
        }
        let mut v = vec![0i64; n - 1];
        v[l - 1] = 2;
        if l >= 2 {
            v[l - 2] = -1;
        }
        if l < n - 1 {
            v[l] = -1;
        }
        Ok(WeightVec(v))
    }

    /// The positive root `α_i + ⋯ + α_{j−1}` (for `1 ≤ i < j ≤ n`).
    pub fn root_alpha(n: usize, i: usize, j: usize) -> Result<WeightVec> {
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::IndexRange(format!("root indices ({i},{j}) for n={n}")));
        }
        let mut acc = WeightVec::zero(n);
        for l in i..j {
            acc = acc.add(&WeightVec::simple_root(n, l)?)?;
        }
        Ok(acc)
    }

    /// Converts coordinates in the `ε`-basis (length `n`) to fundamental
    /// coordinates: `c_k = e_k − e_{k+1}`.
    pub fn from_eps(eps: &[i64]) -> WeightVec {
        WeightVec((0..eps.len() - 1).map(|k| eps[k] - eps[k + 1]).collect())
    }

    /// Rank-context size `n` (number of tensor letters).
    pub fn n(&self) -> usize {
        self.0.len() + 1
    }

    pub fn coord(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Height `h(ω) = Σ_i ω(H_{α_i})`.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &WeightVec) -> Result<WeightVec> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &WeightVec) -> Result<WeightVec> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &WeightVec, f: impl Fn(i64, i64) -> i64) -> Result<WeightVec> {
        if self.0.len() != other.0.len() {
            return Err(Error::Weight(format!(
                "rank mismatch: {} vs {} coordinates",
                self.0.len(),
                other.0.len()
            )));
        }
        Ok(WeightVec(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect()))
    }

    /// `ω − ω_i`, without a dominance check.
    pub fn minus_fundamental(&self, i: usize) -> Result<WeightVec> {
        self.sub(&WeightVec::fundamental(self.n(), i)?)
    }

    /// Parses a comma-separated coordinate list, e.g. `"2,0,1"`.
    pub fn parse(s: &str) -> Result<WeightVec> {
        let coords: std::result::Result<Vec<i64>, _> =
            s.split(',').map(|t| t.trim().parse::<i64>()).collect();
        match coords {
            Ok(v) if !v.is_empty() => Ok(WeightVec(v)),
            _ => Err(Error::Weight(format!("cannot parse weight {s:?}"))),
        }
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
