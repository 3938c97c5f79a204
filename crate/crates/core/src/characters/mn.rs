//! Memoized Murnaghan–Nakayama recursion.
//!
//! Shapes are encoded as bead sets (beta numbers) in a `u128` bitmask: a
//! partition κ with `L` tracked rows has beads at `κ_i + (L - 1 - i)`.
//! Removing a border strip of length `k` moves one bead from `b` to `b - k`;
//! the sign is the parity of the beads jumped over. Cycle types are consumed
//! largest part first, so the remaining class is always a suffix of μ, and
//! that suffix is keyed by its boundary-path code.

use std::hash::BuildHasherDefault;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHasher};

use crate::partitions::Partition;

/// Largest `n` the 128-bit encodings can represent.
pub const MN_MAX_RANK: usize = 125;

type Key = (u128, u128);

/// Raised when a fixed-width accumulator overflows; the caller retries
/// with arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

/// Character values as accumulated by the recursion.
pub(crate) trait CharValue: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    /// `self += other` or `self -= other`.
    fn accumulate(&mut self, other: &Self, negate: bool) -> Result<(), Overflow>;
    fn to_bigint(&self) -> BigInt;
}

impl CharValue for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn accumulate(&mut self, other: &Self, negate: bool) -> Result<(), Overflow> {
        let next = if negate {
            self.checked_sub(*other)
        } else {
            self.checked_add(*other)
        };
        *self = next.ok_or(Overflow)?;
        Ok(())
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl CharValue for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn accumulate(&mut self, other: &Self, negate: bool) -> Result<(), Overflow> {
        if negate {
            *self -= other;
        } else {
            *self += other;
        }
        Ok(())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

pub(crate) trait Memo<V> {
    fn lookup(&self, key: &Key) -> Option<V>;
    fn store(&self, key: Key, value: V);
}

/// Single-threaded memo for one-off evaluations.
pub(crate) struct LocalMemo<V>(std::cell::RefCell<FxHashMap<Key, V>>);

impl<V> LocalMemo<V> {
    pub(crate) fn new() -> Self {
        LocalMemo(std::cell::RefCell::new(FxHashMap::default()))
    }
}

impl<V: Clone> Memo<V> for LocalMemo<V> {
    fn lookup(&self, key: &Key) -> Option<V> {
        self.0.borrow().get(key).cloned()
    }
    fn store(&self, key: Key, value: V) {
        self.0.borrow_mut().insert(key, value);
    }
}

/// Memo shared by all workers of one table or row build.
pub(crate) struct SharedMemo<V>(DashMap<Key, V, BuildHasherDefault<FxHasher>>);

impl<V> SharedMemo<V> {
    pub(crate) fn new() -> Self {
        SharedMemo(DashMap::with_hasher(BuildHasherDefault::default()))
    }

    pub(crate) fn len(&self) -> usize {
        self.0.len()
    }
}

impl<V: Clone> Memo<V> for SharedMemo<V> {
    fn lookup(&self, key: &Key) -> Option<V> {
        self.0.get(key).map(|v| v.clone())
    }
    fn store(&self, key: Key, value: V) {
        self.0.insert(key, value);
    }
}

pub(crate) fn beads(lambda: &Partition) -> u128 {
    let len = lambda.len();
    lambda
        .parts()
        .iter()
        .enumerate()
        .fold(0u128, |mask, (i, &p)| mask | 1u128 << (p + len - 1 - i))
}

/// Boundary codes of every suffix `μ[i..]`, plus the empty suffix at index `ℓ(μ)`.
pub(crate) fn suffix_codes(mu: &Partition) -> Vec<u128> {
    let parts = mu.parts();
    let mut codes = vec![0u128; parts.len() + 1];
    codes[parts.len()] = 1;
    let mut below = 0;
    for i in (0..parts.len()).rev() {
        let p = parts[i];
        codes[i] = (codes[i + 1] << (p - below) << 1) | 1;
        below = p;
    }
    codes
}

/// `χ_κ(ρ)` where κ is given by `mask` and ρ is `parts[idx..]`.
fn chi<V: CharValue, M: Memo<V>>(
    memo: &M,
    mask: u128,
    parts: &[usize],
    codes: &[u128],
    idx: usize,
) -> Result<V, Overflow> {
    if idx == parts.len() {
        return Ok(V::one());
    }
    let k = parts[idx];
    if idx + 1 == parts.len() {
        return Ok(single_strip(mask, k));
    }
    let key = (mask, codes[idx]);
    if let Some(v) = memo.lookup(&key) {
        return Ok(v);
    }
    let mut total = V::zero();
    let mut rest = mask;
    while rest != 0 {
        let b = 127 - rest.leading_zeros() as usize;
        rest &= !(1u128 << b);
        if b < k || mask & (1u128 << (b - k)) != 0 {
            continue;
        }
        let between = mask & ((1u128 << b) - 1) & !((1u128 << (b - k + 1)) - 1);
        let next = mask ^ (1u128 << b) ^ (1u128 << (b - k));
        let value: V = chi(memo, next, parts, codes, idx + 1)?;
        total.accumulate(&value, between.count_ones() % 2 == 1)?;
    }
    memo.store(key, total.clone());
    Ok(total)
}

/// `χ_κ((k))` for `|κ| = k`: `±1` when κ is a hook, else 0.
fn single_strip<V: CharValue>(mask: u128, k: usize) -> V {
    let mut rest = mask;
    while rest != 0 {
        let b = 127 - rest.leading_zeros() as usize;
        rest &= !(1u128 << b);
        if b >= k && mask & (1u128 << (b - k)) == 0 {
            let between = mask & ((1u128 << b) - 1) & !((1u128 << (b - k + 1)) - 1);
            let next = mask ^ (1u128 << b) ^ (1u128 << (b - k));
            // only the empty shape remains when the beads are packed at the bottom
            if next & (next + 1) == 0 {
                let mut v = V::zero();
                let _ = v.accumulate(&V::one(), between.count_ones() % 2 == 1);
                return v;
            }
        }
    }
    V::zero()
}

fn evaluate<V: CharValue, M: Memo<V>>(
    memo: &M,
    lambda: &Partition,
    mu: &Partition,
) -> Result<V, Overflow> {
    chi(memo, beads(lambda), mu.parts(), &suffix_codes(mu), 0)
}

/// One character value with a private memo.
pub(crate) fn character(lambda: &Partition, mu: &Partition) -> BigInt {
    match evaluate::<i128, _>(&LocalMemo::new(), lambda, mu) {
        Ok(v) => BigInt::from(v),
        Err(Overflow) => evaluate::<BigInt, _>(&LocalMemo::new(), lambda, mu)
            .expect("arbitrary precision never overflows"),
    }
}

/// Rows `χ_λ(·)` for each λ over the given class shapes, sharing one memo.
///
/// Output order is fixed by the inputs; the parallel schedule only affects
/// which worker fills which memo entry.
pub(crate) fn rows(lambdas: &[Partition], shapes: &[Partition]) -> Vec<Vec<BigInt>> {
    match rows_with::<i128>(lambdas, shapes) {
        Ok(rows) => rows,
        Err(Overflow) => rows_with::<BigInt>(lambdas, shapes)
            .expect("arbitrary precision never overflows"),
    }
}

fn rows_with<V: CharValue>(
    lambdas: &[Partition],
    shapes: &[Partition],
) -> Result<Vec<Vec<BigInt>>, Overflow> {
    let memo = SharedMemo::<V>::new();
    let codes: Vec<Vec<u128>> = shapes.par_iter().map(suffix_codes).collect();
    let out = lambdas
        .iter()
        .map(|lambda| {
            let mask = beads(lambda);
            shapes
                .par_iter()
                .zip(codes.par_iter())
                .map(|(mu, codes)| {
                    chi::<V, _>(&memo, mask, mu.parts(), codes, 0).map(|v| v.to_bigint())
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    log::debug!("character rows: {} memo entries", memo.len());
    Ok(out)
}
