//! Exact character values of the symmetric groups.

pub mod cache;
mod frobenius;
pub(crate) mod mn;

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{factorial, sn_dim, Partition};

pub use frobenius::frobenius_character;
pub use mn::MN_MAX_RANK;

/// A conjugacy class of `S_n`, labelled by its cycle type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleType {
    pub shape: Partition,
    /// Centralizer order `z_μ`.
    #[serde(serialize_with = "crate::stability::serialize_natural")]
    pub z: BigUint,
    /// `n! / z_μ`
    #[serde(serialize_with = "crate::stability::serialize_natural")]
    pub class_size: BigUint,
}

impl CycleType {
    pub fn new(shape: Partition) -> Self {
        let z = centralizer_order(&shape);
        let class_size = factorial(shape.size()) / &z;
        CycleType {
            shape,
            z,
            class_size,
        }
    }
}

/// `z_μ = ∏ i^{m_i} m_i!`
pub fn centralizer_order(mu: &Partition) -> BigUint {
    mu.multiplicities()
        .iter()
        .enumerate()
        .skip(1)
        .fold(BigUint::one(), |acc, (i, &m)| {
            acc * BigUint::from(i).pow(m as u32) * factorial(m)
        })
}

/// `(-1)^{n - ℓ(μ)}`
pub fn sign(mu: &Partition) -> i32 {
    if (mu.size() - mu.len()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All classes of `S_n` in canonical (reverse-lexicographic) order, without
/// any cap check. Prefer [`crate::Engine::cycle_types`].
pub fn classes(n: usize) -> Vec<CycleType> {
    Partition::all(n).into_iter().map(CycleType::new).collect()
}

/// `χ_λ(μ)` by the Murnaghan–Nakayama rule with a call-local memo.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    check_sizes(lambda, mu)?;
    if lambda.size() > MN_MAX_RANK {
        return Err(Error::cap("rank", lambda.size(), MN_MAX_RANK));
    }
    Ok(mn::character(lambda, mu))
}

pub(crate) fn check_sizes(lambda: &Partition, mu: &Partition) -> Result<()> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(format!(
            "|{lambda}| = {} but |{mu}| = {}",
            lambda.size(),
            mu.size()
        )));
    }
    Ok(())
}

/// The full character table of `S_n`.
///
/// Rows and classes both follow the canonical reverse-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    n: usize,
    classes: Vec<CycleType>,
    rows: Vec<(Partition, Vec<BigInt>)>,
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    /// Computes the table from scratch with one shared memo.
    pub(crate) fn compute(n: usize) -> Self {
        let classes = classes(n);
        let shapes: Vec<Partition> = classes.iter().map(|c| c.shape.clone()).collect();
        let values = mn::rows(&shapes, &shapes);
        let rows = shapes.into_iter().zip(values).collect();
        Self::from_parts(n, classes, rows)
    }

    pub(crate) fn from_parts(
        n: usize,
        classes: Vec<CycleType>,
        rows: Vec<(Partition, Vec<BigInt>)>,
    ) -> Self {
        let index = rows
            .iter()
            .enumerate()
            .map(|(i, (l, _))| (l.clone(), i))
            .collect();
        CharacterTable {
            n,
            classes,
            rows,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    pub fn rows(&self) -> &[(Partition, Vec<BigInt>)] {
        &self.rows
    }

    /// The row `χ_λ(·)`, aligned with [`CharacterTable::classes`].
    pub fn row(&self, lambda: &Partition) -> Option<&[BigInt]> {
        self.index.get(lambda).map(|&i| self.rows[i].1.as_slice())
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Option<&BigInt> {
        let col = self.classes.iter().position(|c| &c.shape == mu)?;
        self.row(lambda).map(|r| &r[col])
    }

    /// `Σ_μ χ_λ(μ) χ_ρ(μ) / z_μ`, exactly.
    pub fn inner_product(&self, lambda: &Partition, rho: &Partition) -> Option<BigRational> {
        let a = self.row(lambda)?;
        let b = self.row(rho)?;
        let total = self
            .classes
            .iter()
            .zip(a.iter().zip(b))
            .fold(BigRational::zero(), |acc, (c, (x, y))| {
                acc + BigRational::new(x * y, BigInt::from(c.z.clone()))
            });
        Some(total)
    }

    /// Checks row orthogonality for every pair of rows and the degree column.
    pub fn check_orthogonality(&self) -> Result<()> {
        for (i, (lambda, _)) in self.rows.iter().enumerate() {
            for (rho, _) in &self.rows[i..] {
                let ip = self.inner_product(lambda, rho).expect("rows present");
                let expected = if lambda == rho {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                if ip != expected {
                    return Err(Error::Integrity(format!(
                        "<χ_{lambda}, χ_{rho}> = {ip}, expected {expected}"
                    )));
                }
            }
        }
        let identity = Partition::column(self.n);
        for (lambda, _) in &self.rows {
            let dim = self.value(lambda, &identity).expect("identity class");
            if *dim != BigInt::from(sn_dim(lambda)) {
                return Err(Error::Integrity(format!(
                    "χ_{lambda}(1^n) = {dim} differs from the hook length dimension"
                )));
            }
        }
        Ok(())
    }
}
