//! Character values from the Frobenius formula.
//!
//! `χ_λ(μ)` is the coefficient of `x^{λ+δ}` in `a_δ · p_μ` over `ℓ(λ)`
//! variables. Expanding the alternant as `Σ_σ sgn(σ) x^{σ(δ)}`, this is
//! `Σ_σ sgn(σ) [x^{λ+δ-σ(δ)}] p_μ`. Only the power-sum product is expanded;
//! monomials exceeding `λ+δ` in any coordinate cannot contribute and are
//! dropped as soon as they appear.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::check_sizes;
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Largest `n` accepted by the oracle.
pub const FROBENIUS_MAX_RANK: usize = 12;

/// `χ_λ(μ)` computed independently of the border-strip recursion.
pub fn frobenius_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    check_sizes(lambda, mu)?;
    if lambda.size() > FROBENIUS_MAX_RANK {
        return Err(Error::cap("oracle rank", lambda.size(), FROBENIUS_MAX_RANK));
    }
    let vars = lambda.len();
    if vars == 0 {
        return Ok(BigInt::one());
    }
    let target: Vec<usize> = (0..vars).map(|i| lambda.part(i) + vars - 1 - i).collect();

    let mut product: FxHashMap<Vec<usize>, BigInt> = FxHashMap::default();
    product.insert(vec![0; vars], BigInt::one());
    for &k in mu.parts() {
        let mut next: FxHashMap<Vec<usize>, BigInt> = FxHashMap::default();
        for (exp, coeff) in &product {
            for v in 0..vars {
                if exp[v] + k > target[v] {
                    continue;
                }
                let mut e = exp.clone();
                e[v] += k;
                *next.entry(e).or_insert_with(BigInt::zero) += coeff;
            }
        }
        product = next;
    }

    let mut total = BigInt::zero();
    let mut used = vec![false; vars];
    let mut exponent = vec![0usize; vars];
    alternate(0, vars, &target, &product, &mut used, &mut exponent, 1, &mut total);
    Ok(total)
}

/// Sums `sgn(σ)·coeff(target - σ(δ))` over permutations σ, assigning
/// `δ_{σ(pos)} = vars - 1 - j` position by position.
#[allow(clippy::too_many_arguments)]
fn alternate(
    pos: usize,
    vars: usize,
    target: &[usize],
    product: &FxHashMap<Vec<usize>, BigInt>,
    used: &mut [bool],
    exponent: &mut [usize],
    sign: i32,
    total: &mut BigInt,
) {
    if pos == vars {
        if let Some(c) = product.get(exponent) {
            if sign > 0 {
                *total += c;
            } else {
                *total -= c;
            }
        }
        return;
    }
    for j in 0..vars {
        if used[j] {
            continue;
        }
        let delta = vars - 1 - j;
        if delta > target[pos] {
            continue;
        }
        // inversions contributed: unused indices smaller than j that come later
        let inversions = used[..j].iter().filter(|u| !**u).count();
        let s = if inversions % 2 == 0 { sign } else { -sign };
        used[j] = true;
        exponent[pos] = target[pos] - delta;
        alternate(pos + 1, vars, target, product, used, exponent, s, total);
        used[j] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(frobenius_character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(frobenius_character(&p(&[3, 1]), &p(&[4])).unwrap(), BigInt::from(-1));
        assert_eq!(frobenius_character(&p(&[2, 1]), &p(&[3])).unwrap(), BigInt::from(-1));
        for n in 1..=7 {
            let expected = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(
                frobenius_character(&Partition::column(n), &p(&[n])).unwrap(),
                BigInt::from(expected)
            );
        }
    }

    #[test]
    fn refuses_large_ranks() {
        let big = Partition::row(13);
        assert!(frobenius_character(&big, &big).unwrap_err().is_refusal());
    }
}
