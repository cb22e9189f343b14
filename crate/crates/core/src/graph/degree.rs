use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeSequence(pub Vec<u32>);

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>) -> Self {
        Self(degrees)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }

    pub fn check_even(&self) -> Result<()> {
        let s = self.sum();
        if s % 2 == 1 {
            Err(Error::DegreeParity(s))
        } else {
            Ok(())
        }
    }

    /// `(n, c)`-good: maximum degree at most `ln n`, and both the degree sum
    /// and the second factorial moment sum within `n^{3/4}` of `cn` and `c²n`.
    pub fn is_good(&self, n: usize, c: f64) -> bool {
        let nf = n as f64;
        let slack = nf.powf(0.75);
        let max = self.0.iter().copied().max().unwrap_or(0) as f64;
        if max > nf.ln() {
            return false;
        }
        let s1 = self.sum() as f64;
        let s2: f64 = self
            .0
            .iter()
            .map(|&d| d as f64 * (d as f64 - 1.0))
            .sum();
        (s1 - c * nf).abs() <= slack && (s2 - c * c * nf).abs() <= slack
    }

    /// Total absolute difference `Σ_v |d_v − d'_v|`, padding the shorter
    /// sequence with zeros.
    pub fn l1_distance(&self, other: &Self) -> u64 {
        let n = self.len().max(other.len());
        (0..n)
            .map(|v| {
                let a = self.0.get(v).copied().unwrap_or(0) as i64;
                let b = other.0.get(v).copied().unwrap_or(0) as i64;
                (a - b).unsigned_abs()
            })
            .sum()
    }
}

impl From<Vec<u32>> for DegreeSequence {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

pub fn is_good_sequence(d: &DegreeSequence, n: usize, c: f64) -> bool {
    d.is_good(n, c)
}
