//! Exponent sequences `ν ∈ {0,1,2}^∞` with finite support.

use std::cmp::Ordering;
use std::fmt;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// A basis monomial `e^ν = e_1^{ν_1} e_2^{ν_2} ⋯`, stored sparsely.
///
/// Entries are `(position, exponent)` pairs with strictly increasing
/// 1-based positions and exponents in `{1, 2}`.
///
/// The total order is graded: lower total degree first, then, within a
/// degree, the exponent vector that is larger at the first differing
/// position comes first (`e_1² < e_1 e_2 < e_2²`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex {
    entries: Vec<(u32, u8)>,
    grade: u32,
}

impl MultiIndex {
    /// The empty index, `e^0 = 1`.
    pub fn zero() -> Self {
        Self::default()
    }

    /// `e_position^exponent`.
    pub fn generator(position: u32, exponent: u8) -> Result<Self> {
        Self::from_entries(vec![(position, exponent)])
    }

    /// Validates and builds from sparse entries. Zero exponents are skipped.
    pub fn from_entries(entries: Vec<(u32, u8)>) -> Result<Self> {
        let mut clean = Vec::with_capacity(entries.len());
        let mut last = 0u32;
        for (pos, exp) in entries {
            if pos == 0 {
                return Err(Error::InvalidArgument("positions are 1-based".into()));
            }
            if exp > 2 {
                return Err(Error::InvalidArgument(format!(
                    "exponent {exp} at position {pos} is not in {{0,1,2}}"
                )));
            }
            if pos <= last {
                return Err(Error::InvalidArgument(
                    "positions must be strictly increasing".into(),
                ));
            }
            last = pos;
            if exp > 0 {
                clean.push((pos, exp));
            }
        }
        Ok(Self::from_sorted_unchecked(clean))
    }

    /// Builds from a dense exponent vector `(ν_1, …, ν_d)`.
    pub fn from_dense(exponents: &[u8]) -> Result<Self> {
        Self::from_entries(
            exponents
                .iter()
                .enumerate()
                .map(|(k, &e)| (k as u32 + 1, e))
                .collect(),
        )
    }

    pub(crate) fn from_sorted_unchecked(entries: Vec<(u32, u8)>) -> Self {
        let grade = entries.iter().map(|&(_, e)| e as u32).sum();
        MultiIndex { entries, grade }
    }

    pub fn entries(&self) -> &[(u32, u8)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total degree `|ν| = Σ ν_j`.
    pub fn grade(&self) -> u32 {
        self.grade
    }

    /// Number of non-zero entries `#ν`.
    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    /// Largest occupied position (0 for the empty index).
    pub fn max_position(&self) -> u32 {
        self.entries.last().map_or(0, |&(p, _)| p)
    }

    pub fn exponent(&self, position: u32) -> u8 {
        self.entries
            .binary_search_by_key(&position, |&(p, _)| p)
            .map_or(0, |k| self.entries[k].1)
    }

    /// Dense exponent vector over positions `1..=d`.
    pub fn to_dense(&self, d: usize) -> Vec<u8> {
        let mut out = vec![0; d];
        for &(p, e) in &self.entries {
            if (p as usize) <= d {
                out[p as usize - 1] = e;
            }
        }
        out
    }

    /// True when every exponent is 1 (`ν ∈ {0,1}^∞`).
    pub fn is_square_free(&self) -> bool {
        self.entries.iter().all(|&(_, e)| e == 1)
    }

    /// `ν + μ`, or `None` when some slot reaches 3 or more.
    pub fn checked_add(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e > 2 {
                        return None;
                    }
                    out.push((a[i].0, e));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some(Self::from_sorted_unchecked(out))
    }

    /// `ν - μ`, or `None` when some slot would become negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len());
        let mut i = 0;
        for &(pos, e) in b {
            while i < a.len() && a[i].0 < pos {
                out.push(a[i]);
                i += 1;
            }
            if i == a.len() || a[i].0 != pos || a[i].1 < e {
                return None;
            }
            if a[i].1 > e {
                out.push((pos, a[i].1 - e));
            }
            i += 1;
        }
        out.extend_from_slice(&a[i..]);
        Some(Self::from_sorted_unchecked(out))
    }

    /// `2ν`, defined for square-free indices.
    pub fn doubled(&self) -> Option<MultiIndex> {
        self.is_square_free().then(|| {
            Self::from_sorted_unchecked(self.entries.iter().map(|&(p, _)| (p, 2)).collect())
        })
    }

    /// Keeps only positions `<= max_position`.
    pub fn truncated(&self, max_position: u32) -> MultiIndex {
        Self::from_sorted_unchecked(
            self.entries
                .iter()
                .copied()
                .filter(|&(p, _)| p <= max_position)
                .collect(),
        )
    }

    /// Removes one position, returning the remaining index and the exponent removed.
    pub fn split_off_position(&self, position: u32) -> (MultiIndex, u8) {
        let exp = self.exponent(position);
        let rest = self
            .entries
            .iter()
            .copied()
            .filter(|&(p, _)| p != position)
            .collect();
        (Self::from_sorted_unchecked(rest), exp)
    }
}

/// Exponent `k ∈ {0,1,2}` of the structure phase `σ(ν, μ) = ω^k`, or `None`
/// when `e^ν e^μ = 0`.
///
/// `k = 2 Σ_{s<j} ν_j μ_s (mod 3)`: each generator of `μ` is moved left past
/// every generator of `ν` with a larger position, and every such swap
/// `e_j e_s = ω² e_s e_j` contributes `ω²`.
pub fn phase_exponent(nu: &MultiIndex, mu: &MultiIndex) -> Option<u8> {
    let (a, b) = (&nu.entries, &mu.entries);
    // Running Σ μ_s over positions s strictly below the current ν position.
    let mut mu_prefix: u32 = 0;
    let mut swaps: u32 = 0;
    let mut j = 0;
    for &(pos, e) in a {
        while j < b.len() && b[j].0 < pos {
            mu_prefix += b[j].1 as u32;
            j += 1;
        }
        if j < b.len() && b[j].0 == pos && e + b[j].1 > 2 {
            return None;
        }
        swaps += e as u32 * mu_prefix;
    }
    Some(((2 * swaps) % 3) as u8)
}

/// The structure phase `σ(ν, μ)` with `e^ν e^μ = σ(ν, μ) e^{ν+μ}`.
pub fn sigma(nu: &MultiIndex, mu: &MultiIndex) -> Cyclotomic {
    match phase_exponent(nu, mu) {
        Some(k) => Cyclotomic::omega_pow(k as i64),
        None => Cyclotomic::ZERO,
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade.cmp(&other.grade).then_with(|| {
            let (a, b) = (&self.entries, &other.entries);
            for (x, y) in a.iter().zip(b.iter()) {
                if x == y {
                    continue;
                }
                // Dense vectors first differ at min(x.0, y.0).
                return match x.0.cmp(&y.0) {
                    Ordering::Less => Ordering::Less,
                    Ordering::Greater => Ordering::Greater,
                    Ordering::Equal => y.1.cmp(&x.1),
                };
            }
            // Equal grades force equal lengths on a common prefix.
            a.len().cmp(&b.len())
        })
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "1");
        }
        for (k, &(p, e)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            match e {
                1 => write!(f, "e[{p}]")?,
                _ => write!(f, "e[{p}]^{e}")?,
            }
        }
        Ok(())
    }
}

/// Every index supported on positions `1..=d`, in canonical order.
pub fn all_indices(d: usize) -> Vec<MultiIndex> {
    let total = 3usize.pow(d as u32);
    let mut out: Vec<MultiIndex> = (0..total)
        .map(|mut code| {
            let dense: Vec<u8> = (0..d)
                .map(|_| {
                    let e = (code % 3) as u8;
                    code /= 3;
                    e
                })
                .collect();
            MultiIndex::from_dense(&dense).expect("valid dense index")
        })
        .collect();
    out.sort();
    out
}
