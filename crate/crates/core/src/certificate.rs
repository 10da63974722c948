//! Serializable, independently re-checkable records of ortho-free claims.
//!
//! JSON layout (field order is fixed):
//!
//! ```json
//! {"claim":"MAX_ORTHO_FREE","n":8,"p":2,"subset":[0,6,...],"value":"8",
//!  "exhaustive":true,"checksum":"<sha-256 hex>"}
//! ```
//!
//! `checksum` is the SHA-256 of the ASCII string `n=<n>;subset=<m1>,<m2>,...`
//! with the masks in ascending order.

use std::time::Duration;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hypercube::{build_m, dot_unchecked, low_bits, MAX_BUILD_DIM};
use crate::mis::Budget;
use crate::ortho::{build_graph, max_ortho_free, parts_lower_bound, prime_of, MAX_GRAPH_DIM};
use crate::polynomials::alpha;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Claim {
    OrthoFreeSubset,
    MaxOrthoFree,
    PartCountLowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: Claim,
    pub n: usize,
    pub p: Option<u64>,
    pub subset: Vec<u64>,
    #[serde(with = "crate::decimal")]
    pub value: BigUint,
    pub exhaustive: bool,
    pub checksum: String,
}

pub fn checksum(n: usize, subset: &[u64]) -> String {
    let body = subset
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    hex::encode(Sha256::digest(format!("n={n};subset={body}").as_bytes()))
}

impl Certificate {
    /// Masks are sorted before hashing.
    pub fn new(
        claim: Claim,
        n: usize,
        p: Option<u64>,
        subset: impl IntoIterator<Item = u128>,
        value: BigUint,
        exhaustive: bool,
    ) -> Self {
        let mut subset: Vec<u64> = subset
            .into_iter()
            .map(|m| u64::try_from(m).expect("materialized dimensions fit in 64 bits"))
            .collect();
        subset.sort_unstable();
        let checksum = checksum(n, &subset);
        Self { claim, n, p, subset, value, exhaustive, checksum }
    }

    /// A witness that `subset` is ortho-free, with value = its size.
    pub fn ortho_free_subset(n: usize, subset: impl IntoIterator<Item = u128>) -> Self {
        let subset: Vec<u128> = subset.into_iter().collect();
        let value = BigUint::from(subset.len());
        Self::new(Claim::OrthoFreeSubset, n, prime_of(n), subset, value, true)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Certificate(e.to_string()))
    }

    /// True iff the subset is an ortho-free set of members of `M`.
    pub fn recheck_subset(&self) -> Result<bool> {
        let n = self.n;
        for w in self.subset.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Certificate("subset not strictly ascending".into()));
            }
        }
        for &m in &self.subset {
            let m = u128::from(m);
            if m & !low_bits(n) != 0 || m & 1 != 0 || m.count_ones() % 2 != 0 {
                return Err(Error::NotInM(m));
            }
        }
        Ok(self.subset.iter().enumerate().all(|(i, &a)| {
            self.subset[i + 1..]
                .iter()
                .all(|&b| dot_unchecked(n, a.into(), b.into()) != 0)
        }))
    }

    /// Re-verifies everything that can be checked without repeating a search.
    pub fn verify(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Certificate(msg));
        if self.n == 0 || self.n % 4 != 0 || self.n > MAX_BUILD_DIM {
            return bad(format!("unsupported dimension n = {}", self.n));
        }
        if self.p != prime_of(self.n) {
            return bad(format!("p = {:?} inconsistent with n = {}", self.p, self.n));
        }
        if self.checksum != checksum(self.n, &self.subset) {
            return bad("checksum mismatch".into());
        }
        match self.claim {
            Claim::OrthoFreeSubset | Claim::MaxOrthoFree => {
                if !self.recheck_subset()? {
                    return bad("subset contains an orthogonal pair".into());
                }
                if self.value != BigUint::from(self.subset.len()) {
                    return bad(format!(
                        "value {} differs from subset size {}",
                        self.value,
                        self.subset.len()
                    ));
                }
                if self.claim == Claim::MaxOrthoFree && self.exhaustive && self.p.is_some() {
                    let cap = alpha(self.n)?;
                    if self.value > cap {
                        return bad(format!("value {} exceeds alpha(n) = {cap}", self.value));
                    }
                }
            }
            Claim::PartCountLowerBound => {
                if !self.subset.is_empty() {
                    return bad("part-count certificate carries a subset".into());
                }
                let expected = parts_lower_bound(self.n)?;
                if self.value != expected {
                    return bad(format!("value {} but bound is {expected}", self.value));
                }
            }
        }
        Ok(())
    }

    /// Repeats the maximum search for an exhaustive `MAX_ORTHO_FREE` claim.
    /// `Ok(None)` when the rerun did not finish within `time`.
    pub fn recheck_maximum(&self, time: Duration) -> Result<Option<bool>> {
        if self.claim != Claim::MaxOrthoFree || !self.exhaustive {
            return Err(Error::Certificate("not an exhaustive maximum claim".into()));
        }
        if self.n > MAX_GRAPH_DIM {
            return Err(Error::DimensionOutOfRange { n: self.n, min: 4, max: MAX_GRAPH_DIM });
        }
        let g = build_graph(build_m(self.n)?)?;
        let rerun = max_ortho_free(&g, Budget::time(time));
        Ok(rerun.exhaustive.then(|| rerun.value == self.value))
    }
}
