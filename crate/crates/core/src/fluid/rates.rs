use super::drift::z_of_x;
use super::special::ZTerms;
use super::{Mat4, Vec4};
use crate::error::{Error, Result};

pub const DEFAULT_KCAP: u32 = 30;

/// Jump direction of one leaf-removal step. `Regular` means the removed
/// neighbour has `k1` leaf neighbours (the removed leaf included), `k2`
/// neighbours of degree two and `k3` of degree at least three; `LeafPair`
/// means the neighbour is itself a leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RateIndex {
    Regular { k1: u32, k2: u32, k3: u32 },
    LeafPair,
}

impl RateIndex {
    pub fn regular(k1: u32, k2: u32, k3: u32) -> Result<Self> {
        if k1 >= 1 && k1 + k2 + k3 >= 2 {
            Ok(RateIndex::Regular { k1, k2, k3 })
        } else {
            Err(Error::param(format!("({k1}, {k2}, {k3}) is not a valid jump index")))
        }
    }

    /// Change in (X1, X2, X3, X4).
    pub fn direction(&self) -> [i64; 4] {
        match *self {
            RateIndex::Regular { k1, k2, k3 } => {
                let (k1, k2, k3) = (k1 as i64, k2 as i64, k3 as i64);
                [-k1 + k2, -1 - k2, -k1 - k2 - k3, 1]
            }
            RateIndex::LeafPair => [-2, 0, -1, 1],
        }
    }
}

/// Per-state tables so that a rate is four lookups and three products.
struct RateTables {
    lead: f64,
    p_pow: Vec<f64>,
    qk_pow: Vec<f64>,
    q_pow: Vec<f64>,
    z_pow: Vec<f64>,
    p: f64,
}

impl RateTables {
    fn new(x: &Vec4, kcap: u32) -> Result<Self> {
        let z = z_of_x(x)?;
        let t = ZTerms::new(z);
        let p = x[0] / (2.0 * x[2]);
        let q = x[1] / (2.0 * x[2]);
        let n = kcap as usize + 1;
        // a^i / i!
        let table = |a: f64, len: usize| {
            let mut v = Vec::with_capacity(len);
            let mut cur = 1.0;
            for i in 0..len {
                v.push(cur);
                cur *= a / (i as f64 + 1.0);
            }
            v
        };
        let mut z_pow = Vec::with_capacity(2 * n);
        let mut cur = 1.0;
        for _ in 0..2 * n {
            z_pow.push(cur);
            cur *= z;
        }
        Ok(Self {
            lead: q * t.k,
            p_pow: table(p, n),
            qk_pow: table(q * t.k, n),
            q_pow: table(q, n),
            z_pow,
            p,
        })
    }

    fn beta(&self, idx: RateIndex) -> f64 {
        match idx {
            RateIndex::LeafPair => self.p,
            RateIndex::Regular { k1, k2, k3 } => {
                let (k1, k2, k3) = (k1 as usize, k2 as usize, k3 as usize);
                self.lead
                    * self.p_pow[k1 - 1]
                    * self.qk_pow[k2]
                    * self.q_pow[k3]
                    * self.z_pow[k1 + k2 + 2 * k3 - 2]
            }
        }
    }
}

/// Rate of jumps in direction `idx` at state `x`.
pub fn rate_beta(idx: RateIndex, x: &Vec4) -> Result<f64> {
    let cap = match idx {
        RateIndex::Regular { k1, k2, k3 } => k1 + k2 + k3,
        RateIndex::LeafPair => 2,
    };
    Ok(RateTables::new(x, cap)?.beta(idx))
}

fn for_each_rate(x: &Vec4, kcap: u32, mut visit: impl FnMut(f64, [f64; 4])) -> Result<()> {
    if kcap < 2 {
        return Err(Error::param(format!("kcap {kcap} below 2")));
    }
    let tab = RateTables::new(x, kcap)?;
    let dir = |i: RateIndex| i.direction().map(|v| v as f64);
    visit(tab.beta(RateIndex::LeafPair), dir(RateIndex::LeafPair));
    for k1 in 1..=kcap {
        for k2 in 0..=kcap - k1 {
            for k3 in 0..=kcap - k1 - k2 {
                if k1 + k2 + k3 < 2 {
                    continue;
                }
                let idx = RateIndex::Regular { k1, k2, k3 };
                visit(tab.beta(idx), dir(idx));
            }
        }
    }
    Ok(())
}

/// `sum_l beta_l(x) l l^T` over jump indices with `k1 + k2 + k3 <= kcap`.
pub fn diffusion_matrix(x: &Vec4, kcap: u32) -> Result<Mat4> {
    let mut m = Mat4::zeros();
    for_each_rate(x, kcap, |b, l| {
        for i in 0..4 {
            for j in i..4 {
                m[(i, j)] += b * l[i] * l[j];
            }
        }
    })?;
    m.fill_lower_triangle_with_upper_triangle();
    Ok(m)
}

/// `sum_l beta_l(x) l`, truncated like [`diffusion_matrix`]; converges to
/// the drift as `kcap` grows.
pub fn truncated_drift(x: &Vec4, kcap: u32) -> Result<Vec4> {
    let mut f = Vec4::zeros();
    for_each_rate(x, kcap, |b, l| {
        for i in 0..4 {
            f[i] += b * l[i];
        }
    })?;
    Ok(f)
}
