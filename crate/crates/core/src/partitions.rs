//! Integer partitions and the dimension formulas attached to them.
//!
//! A [`Partition`] is stored without trailing zeros, so equal partitions have
//! equal representations and can be used directly as map keys.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Canonical text for the empty partition.
pub const EMPTY_TOKEN: &str = "-";

/// A weakly decreasing sequence of positive integers.
///
/// The derived ordering is lexicographic on the parts, which for partitions
/// of the same size is the order used throughout the crate (reversed, it
/// gives the canonical "revlex" class order of character tables).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, rejecting zero parts and increases.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        for (i, &p) in parts.iter().enumerate() {
            if p == 0 {
                return Err(Error::Parse {
                    position: i,
                    reason: "parts must be positive".into(),
                });
            }
            if i > 0 && parts[i - 1] < p {
                return Err(Error::Parse {
                    position: i,
                    reason: format!("part {} follows smaller part {}", p, parts[i - 1]),
                });
            }
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from a weakly decreasing sequence that may end in zeros.
    ///
    /// Panics if the nonzero prefix is not weakly decreasing; this is meant
    /// for internally produced sequences.
    pub(crate) fn from_padded(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1] && w[1] > 0));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|λ|`
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `ℓ(λ)`
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Every partition of `n`, in decreasing lexicographic order:
    /// `(n), (n-1,1), ..., (1^n)`.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        generate(n, n, &mut current, &mut out);
        out
    }

    /// Multiplicities `m_i` of each part size `i = 1..=max part`, indexed by `i`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// Contents `j - i` and hook lengths of every cell, row by row.
    fn cells(&self) -> Vec<(i64, usize)> {
        let conj = conjugate(self);
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let hook = (row - j - 1) + (conj.part(j) - i - 1) + 1;
                out.push((j as i64 - i as i64, hook));
            }
        }
        out
    }
}

fn generate(n: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for p in (1..=max.min(n)).rev() {
        current.push(p);
        generate(n - p, p, current, out);
        current.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str(EMPTY_TOKEN);
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == EMPTY_TOKEN {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for (i, token) in text.split(',').enumerate() {
            let token = token.trim();
            if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse {
                    position: i,
                    reason: format!("`{token}` is not a positive integer"),
                });
            }
            let value = token.parse::<usize>().map_err(|_| Error::Parse {
                position: i,
                reason: format!("`{token}` is out of range"),
            })?;
            parts.push(value);
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

/// Three partitions `(first, second, third)`.
///
/// Balance conditions depend on how the triple is used and are checked there.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PartitionTriple {
    pub first: Partition,
    pub second: Partition,
    pub third: Partition,
}

impl PartitionTriple {
    pub fn new(first: Partition, second: Partition, third: Partition) -> Self {
        PartitionTriple {
            first,
            second,
            third,
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty() && self.second.is_empty() && self.third.is_empty()
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.first.size(), self.second.size(), self.third.size()]
    }

    /// `|first| = |second| = |third|`
    pub fn is_kronecker_balanced(&self) -> bool {
        let [a, b, c] = self.sizes();
        a == b && b == c
    }

    /// `|second| + |third| = |first|`
    pub fn is_lr_balanced(&self) -> bool {
        let [a, b, c] = self.sizes();
        b + c == a
    }

    /// `(d·first + shift.first, ...)` componentwise.
    pub fn stretch(&self, d: usize, shift: &PartitionTriple) -> PartitionTriple {
        PartitionTriple {
            first: scale_add(&self.first, d, &shift.first),
            second: scale_add(&self.second, d, &shift.second),
            third: scale_add(&self.third, d, &shift.third),
        }
    }
}

impl fmt::Display for PartitionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) ({}) ({})", self.first, self.second, self.third)
    }
}

impl Serialize for PartitionTriple {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.first, &self.second, &self.third].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PartitionTriple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [first, second, third] = <[Partition; 3]>::deserialize(deserializer)?;
        Ok(PartitionTriple {
            first,
            second,
            third,
        })
    }
}

/// `d·α + λ`, padding the shorter partition with zeros.
pub fn scale_add(alpha: &Partition, d: usize, lambda: &Partition) -> Partition {
    let len = alpha.len().max(lambda.len());
    let parts = (0..len)
        .map(|i| d * alpha.part(i) + lambda.part(i))
        .collect();
    Partition::from_padded(parts)
}

/// The transpose `λ′` with `λ′_j = #{i : λ_i ≥ j}`.
pub fn conjugate(lambda: &Partition) -> Partition {
    let width = lambda.part(0);
    let parts = (1..=width)
        .map(|j| lambda.parts.iter().take_while(|&&p| p >= j).count())
        .collect();
    Partition { parts }
}

/// `n!` as an arbitrary-precision integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// Dimension of the irreducible `S_n`-representation `M_λ` (hook length formula).
pub fn sn_dim(lambda: &Partition) -> BigUint {
    let hooks = lambda
        .cells()
        .into_iter()
        .fold(BigUint::one(), |acc, (_, h)| acc * h as u64);
    factorial(lambda.size()) / hooks
}

/// Dimension of the Schur functor `S_λ(ℂ^k)` (hook content formula);
/// zero when `ℓ(λ) > k`.
pub fn gl_dim(lambda: &Partition, k: usize) -> BigUint {
    if lambda.len() > k {
        return BigUint::default();
    }
    let (num, den) = lambda
        .cells()
        .into_iter()
        .fold((BigUint::one(), BigUint::one()), |(num, den), (c, h)| {
            // k + c >= 1 because every cell lies in a row < k
            (num * (k as i64 + c) as u64, den * h as u64)
        });
    num / den
}

/// Whether the Young diagram of `mu` fits inside that of `lambda`.
pub fn skew_contains(lambda: &Partition, mu: &Partition) -> bool {
    mu.len() <= lambda.len() && mu.parts.iter().zip(&lambda.parts).all(|(m, l)| m <= l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn parse_and_format() {
        assert_eq!("4,2,1".parse::<Partition>().unwrap(), p(&[4, 2, 1]));
        assert_eq!("-".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[4, 2, 1]).to_string(), "4,2,1");
        assert_eq!(Partition::empty().to_string(), "-");
    }

    #[test]
    fn parse_errors_name_position() {
        match "2,3".parse::<Partition>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 1),
            other => panic!("unexpected {other:?}"),
        }
        match "3,0".parse::<Partition>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 1),
            other => panic!("unexpected {other:?}"),
        }
        match "3,x,1".parse::<Partition>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!("-1".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
        assert!("3,,1".parse::<Partition>().is_err());
    }

    #[test]
    fn scale_add_examples() {
        assert_eq!(scale_add(&p(&[3]), 1, &p(&[1, 1, 1])), p(&[4, 1, 1]));
        assert_eq!(scale_add(&p(&[2, 1]), 0, &p(&[5])), p(&[5]));
        assert_eq!(scale_add(&p(&[2, 1]), 2, &p(&[1])), p(&[5, 2]));
        assert_eq!(scale_add(&p(&[2, 1]), 0, &Partition::empty()), Partition::empty());
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&p(&[4, 2, 1])), p(&[3, 2, 1, 1]));
        assert_eq!(conjugate(&p(&[1, 1, 1])), p(&[3]));
        assert_eq!(conjugate(&Partition::empty()), Partition::empty());
    }

    #[test]
    fn dimensions() {
        assert_eq!(sn_dim(&p(&[2, 1])), BigUint::from(2u32));
        assert_eq!(sn_dim(&p(&[7])), BigUint::from(1u32));
        assert_eq!(sn_dim(&p(&[3, 2])), BigUint::from(5u32));
        assert_eq!(sn_dim(&Partition::empty()), BigUint::from(1u32));
        assert_eq!(gl_dim(&p(&[2, 1]), 3), BigUint::from(8u32));
        assert_eq!(gl_dim(&p(&[1, 1, 1]), 2), BigUint::from(0u32));
        assert_eq!(gl_dim(&p(&[2]), 4), BigUint::from(10u32));
        assert_eq!(gl_dim(&Partition::empty(), 0), BigUint::from(1u32));
    }

    #[test]
    fn skew_containment() {
        assert!(skew_contains(&p(&[3, 2, 1]), &p(&[2, 1])));
        assert!(!skew_contains(&p(&[2, 2]), &p(&[3])));
        assert!(skew_contains(&p(&[2, 1]), &Partition::empty()));
        assert!(!skew_contains(&p(&[2]), &p(&[1, 1])));
    }

    #[test]
    fn enumeration_order_and_counts() {
        let three: Vec<String> = Partition::all(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(three, ["3", "2,1", "1,1,1"]);
        let counts: Vec<usize> = (0..=10).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(Partition::all(0), vec![Partition::empty()]);
        for n in 1..=8 {
            let all = Partition::all(n);
            assert!(all.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn sum_of_squared_dimensions_is_factorial() {
        for n in 0..=10 {
            let total: BigUint = Partition::all(n).iter().map(|l| sn_dim(l).pow(2)).sum();
            assert_eq!(total, factorial(n), "n = {n}");
        }
    }

    #[test]
    fn json_encoding() {
        assert_eq!(serde_json::to_string(&p(&[4, 2, 1])).unwrap(), "[4,2,1]");
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
        let t: PartitionTriple = serde_json::from_str("[[6,6],[7,5],[6,4,2]]").unwrap();
        assert_eq!(t.third, p(&[6, 4, 2]));
    }
}
