//! Kronecker, Littlewood–Richardson and plethysm coefficients.
//!
//! Each family has a main algorithm and a brute-force oracle that shares no
//! code path with it beyond the partition type:
//!
//! | family    | main route                         | oracle                                  |
//! |-----------|------------------------------------|-----------------------------------------|
//! | Kronecker | class sum of character triples     | `s_λ(x_i y_j)` bi-Schur decomposition   |
//! | LR        | ballot skew tableaux               | `s_μ s_ν` polynomial decomposition      |
//! | plethysm  | power-sum substitution             | monomial substitution into `s_λ`        |

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{factorial, gl_dim, skew_contains, Partition};
use crate::symfunc::{
    decompose_into_schur, decompose_into_schur_pairs, plethysm_power, power_to_schur,
    schur_coefficient, schur_polynomial, schur_polynomial_at, schur_to_power, SchurExpansion,
    SparsePolynomial,
};
use crate::Engine;

pub const KRONECKER_ORACLE_MAX: usize = 5;
pub const LR_ORACLE_MAX: usize = 10;
pub const PLETHYSM_ORACLE_MAX: usize = 8;
pub const SCHUR_WEYL_MAX_SIZE: usize = 6;
pub const SCHUR_WEYL_MAX_DIM: usize = 3;

/// Which coefficient family a query or sequence refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub enum CoefficientKind {
    #[serde(rename = "kronecker")]
    Kronecker,
    #[serde(rename = "littlewood-richardson")]
    LittlewoodRichardson,
    #[serde(rename = "plethysm")]
    Plethysm,
}

impl CoefficientKind {
    pub fn name(self) -> &'static str {
        match self {
            CoefficientKind::Kronecker => "kronecker",
            CoefficientKind::LittlewoodRichardson => "littlewood-richardson",
            CoefficientKind::Plethysm => "plethysm",
        }
    }
}

impl std::str::FromStr for CoefficientKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kron" | "kronecker" => Ok(CoefficientKind::Kronecker),
            "lr" | "littlewood-richardson" => Ok(CoefficientKind::LittlewoodRichardson),
            "pleth" | "plethysm" => Ok(CoefficientKind::Plethysm),
            other => Err(Error::InvalidArgument(format!(
                "unknown coefficient kind `{other}` (expected kron, lr or pleth)"
            ))),
        }
    }
}

fn mismatch(what: String) -> Error {
    Error::SizeMismatch(what)
}

fn check_kronecker_sizes(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<usize> {
    let n = lambda.size();
    if mu.size() != n || nu.size() != n {
        return Err(mismatch(format!(
            "Kronecker coefficients need |λ| = |μ| = |ν|, got {} vs {} vs {}",
            n,
            mu.size(),
            nu.size()
        )));
    }
    Ok(n)
}

fn to_natural(value: BigInt, what: &str) -> Result<BigUint> {
    value
        .to_biguint()
        .ok_or_else(|| Error::Integrity(format!("{what} is negative: {value}")))
}

/// `g_{λ,μ,ν} = (1/n!) Σ_classes |C| χ_λ χ_μ χ_ν`.
///
/// The sum is accumulated in exact integers and divided by `n!` once;
/// divisibility and nonnegativity are asserted.
pub fn kronecker(engine: &Engine, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
    let n = check_kronecker_sizes(lambda, mu, nu)?;
    engine.check_rank(n)?;
    let classes = engine.cycle_types(n)?;
    let rows = engine.character_rows(&[lambda.clone(), mu.clone(), nu.clone()])?;
    let (a, b, c) = (&rows[0], &rows[1], &rows[2]);
    let total: BigInt = (0..classes.len())
        .into_par_iter()
        .map(|i| {
            let chi = &a[i] * &b[i] * &c[i];
            if chi.is_zero() {
                BigInt::zero()
            } else {
                chi * BigInt::from_biguint(Sign::Plus, classes[i].class_size.clone())
            }
        })
        .reduce(BigInt::zero, |x, y| x + y);
    let order = BigInt::from(factorial(n));
    let (g, rem) = total.div_rem(&order);
    if !rem.is_zero() {
        return Err(Error::Integrity(format!(
            "class sum for g[{lambda}; {mu}; {nu}] is not divisible by {n}!"
        )));
    }
    to_natural(g, &format!("g[{lambda}; {mu}; {nu}]"))
}

/// All `g_{λ,μ,ν}` with `ℓ(μ) ≤ a`, `ℓ(ν) ≤ b`, read off from
/// `s_λ(x_i y_j) = Σ g_{λ,μ,ν} s_μ(x) s_ν(y)` in `a·b` product variables.
pub fn kronecker_oracle_expansion(
    lambda: &Partition,
    a: usize,
    b: usize,
) -> Result<BTreeMap<(Partition, Partition), BigInt>> {
    if lambda.size() > KRONECKER_ORACLE_MAX {
        return Err(Error::cap("oracle size |λ|", lambda.size(), KRONECKER_ORACLE_MAX));
    }
    if lambda.is_empty() {
        let mut out = BTreeMap::new();
        out.insert((Partition::empty(), Partition::empty()), BigInt::from(1));
        return Ok(out);
    }
    let vars = a + b;
    let mut images = Vec::with_capacity(a * b);
    for i in 0..a {
        for j in 0..b {
            let mut e = vec![0u32; vars];
            e[i] = 1;
            e[a + j] = 1;
            images.push(SparsePolynomial::monomial(e, BigInt::from(1)));
        }
    }
    let f = schur_polynomial_at(lambda, &images, vars);
    decompose_into_schur_pairs(&f, a, b)
}

/// `g_{λ,μ,ν}` via the product-variable expansion; `n ≤ 5`.
pub fn kronecker_oracle(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
    check_kronecker_sizes(lambda, mu, nu)?;
    let table = kronecker_oracle_expansion(lambda, mu.len(), nu.len())?;
    let value = table
        .get(&(mu.clone(), nu.clone()))
        .cloned()
        .unwrap_or_default();
    to_natural(value, "oracle Kronecker coefficient")
}

fn check_lr_sizes(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<()> {
    if mu.size() + nu.size() != lambda.size() {
        return Err(mismatch(format!(
            "Littlewood-Richardson coefficients need |μ| + |ν| = |λ|, got {} + {} vs {}",
            mu.size(),
            nu.size(),
            lambda.size()
        )));
    }
    Ok(())
}

/// `c^λ_{μ,ν}`: the number of semistandard skew tableaux of shape λ/μ and
/// weight ν whose reverse reading word is a lattice word.
pub fn littlewood_richardson(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
    check_lr_sizes(lambda, mu, nu)?;
    if !skew_contains(lambda, mu) || !skew_contains(lambda, nu) {
        return Ok(BigUint::zero());
    }
    let mut search = LrSearch::new(lambda, mu, nu);
    Ok(BigUint::from(search.count()))
}

/// Depth-first filling of λ/μ, rows top to bottom, each row right to left
/// (the reverse reading order), so the ballot condition is checked as the
/// word is produced.
struct LrSearch {
    /// `(row, column)` of every skew cell in reverse reading order.
    cells: Vec<(usize, usize)>,
    lambda: Vec<usize>,
    mu: Vec<usize>,
    weight: Vec<usize>,
    filled: Vec<Vec<u8>>,
    counts: Vec<usize>,
}

impl LrSearch {
    fn new(lambda: &Partition, mu: &Partition, nu: &Partition) -> Self {
        let rows = lambda.len();
        let mut cells = Vec::new();
        for r in 0..rows {
            for c in (mu.part(r)..lambda.part(r)).rev() {
                cells.push((r, c));
            }
        }
        LrSearch {
            cells,
            lambda: lambda.parts().to_vec(),
            mu: (0..rows).map(|r| mu.part(r)).collect(),
            weight: nu.parts().to_vec(),
            filled: (0..rows).map(|r| vec![0; lambda.part(r)]).collect(),
            counts: vec![0; nu.len()],
        }
    }

    fn count(&mut self) -> u64 {
        self.descend(0)
    }

    fn descend(&mut self, idx: usize) -> u64 {
        let Some(&(r, c)) = self.cells.get(idx) else {
            return 1;
        };
        // row weakly increases left to right: bounded by the right neighbour
        let upper = if c + 1 < self.lambda[r] {
            self.filled[r][c + 1] as usize
        } else {
            self.weight.len()
        };
        // column strictly increases downward: above neighbour is a lower bound
        let lower = if r > 0 && c >= self.mu[r - 1] {
            self.filled[r - 1][c] as usize + 1
        } else {
            1
        };
        // an entry v in row r forces v <= r + 1 by the lattice condition
        let upper = upper.min(r + 1);
        let mut total = 0;
        for v in lower..=upper {
            let i = v - 1;
            if self.counts[i] >= self.weight[i] {
                continue;
            }
            if i > 0 && self.counts[i] + 1 > self.counts[i - 1] {
                continue;
            }
            self.counts[i] += 1;
            self.filled[r][c] = v as u8;
            total += self.descend(idx + 1);
            self.counts[i] -= 1;
        }
        self.filled[r][c] = 0;
        total
    }
}

/// `s_μ · s_ν` in `ℓ(μ) + ℓ(ν)` variables, decomposed into Schur polynomials.
pub fn lr_oracle_expansion(mu: &Partition, nu: &Partition) -> Result<SchurExpansion> {
    let n = mu.size() + nu.size();
    if n > LR_ORACLE_MAX {
        return Err(Error::cap("oracle size |λ|", n, LR_ORACLE_MAX));
    }
    let k = mu.len() + nu.len();
    if k == 0 {
        return Ok(SchurExpansion::single(Partition::empty()));
    }
    let product = &schur_polynomial(mu, k) * &schur_polynomial(nu, k);
    decompose_into_schur(&product, k)
}

/// `c^λ_{μ,ν}` by polynomial multiplication; `|λ| ≤ 10`.
pub fn lr_oracle(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
    check_lr_sizes(lambda, mu, nu)?;
    let expansion = lr_oracle_expansion(mu, nu)?;
    to_natural(expansion.coeff(lambda), "oracle LR coefficient")
}

fn check_plethysm_sizes(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<()> {
    if lambda.size() * mu.size() != nu.size() {
        return Err(mismatch(format!(
            "plethysm coefficients need |λ|·|μ| = |ν|, got {}·{} vs {}",
            lambda.size(),
            mu.size(),
            nu.size()
        )));
    }
    Ok(())
}

fn check_plethysm_cap(engine: &Engine, degree: usize) -> Result<()> {
    if degree > engine.plethysm_cap() {
        return Err(Error::cap("plethysm degree |ν|", degree, engine.plethysm_cap()));
    }
    engine.check_rank(degree)
}

/// `a^ν_{λ,μ}`, the multiplicity of `S_ν` in `S_λ ∘ S_μ`, via power sums.
pub fn plethysm_coeff(engine: &Engine, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
    check_plethysm_sizes(lambda, mu, nu)?;
    check_plethysm_cap(engine, nu.size())?;
    let f = schur_to_power(engine, lambda)?;
    let g = schur_to_power(engine, mu)?;
    let composed = plethysm_power(&f, &g);
    let value = schur_coefficient(engine, &composed, nu)?;
    let value = crate::symfunc::integral(value, nu)?;
    to_natural(value, &format!("a[{nu}; {lambda}, {mu}]"))
}

/// As [`plethysm_coeff`], but a size mismatch yields 0 instead of an error.
pub(crate) fn plethysm_coeff_total(
    engine: &Engine,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<BigUint> {
    if lambda.size() * mu.size() != nu.size() {
        return Ok(BigUint::zero());
    }
    plethysm_coeff(engine, lambda, mu, nu)
}

/// The full Schur expansion of `S_λ ∘ S_μ`, asserted nonnegative.
pub fn plethysm_expansion(engine: &Engine, lambda: &Partition, mu: &Partition) -> Result<SchurExpansion> {
    let degree = lambda.size() * mu.size();
    check_plethysm_cap(engine, degree)?;
    let f = schur_to_power(engine, lambda)?;
    let g = schur_to_power(engine, mu)?;
    let expansion = power_to_schur(engine, &plethysm_power(&f, &g))?;
    if !expansion.is_nonnegative() {
        return Err(Error::Integrity(format!(
            "s[{lambda}] o s[{mu}] has a negative Schur coefficient"
        )));
    }
    Ok(expansion)
}

/// `S_λ ∘ S_μ` restricted to `k` variables by substituting the monomials of
/// `s_μ(x₁..x_k)` (with multiplicity) into `s_λ`, then decomposing.
pub fn plethysm_oracle_expansion(lambda: &Partition, mu: &Partition, k: usize) -> Result<SchurExpansion> {
    let degree = lambda.size() * mu.size();
    if degree > PLETHYSM_ORACLE_MAX {
        return Err(Error::cap("oracle degree |λ|·|μ|", degree, PLETHYSM_ORACLE_MAX));
    }
    let inner = schur_polynomial(mu, k);
    let mut images = Vec::new();
    for (e, c) in inner.terms() {
        let copies = usize::try_from(c).map_err(|_| Error::Integrity("negative Schur monomial".into()))?;
        for _ in 0..copies {
            images.push(SparsePolynomial::monomial(e.clone(), BigInt::from(1)));
        }
    }
    let composed = schur_polynomial_at(lambda, &images, k);
    if composed.is_zero() {
        return Ok(SchurExpansion::zero(degree));
    }
    decompose_into_schur(&composed, k)
}

/// `a^ν_{λ,μ}` by monomial substitution in `max(ℓ(ν), 2)` variables; `|λ|·|μ| ≤ 8`.
pub fn plethysm_oracle(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
    check_plethysm_sizes(lambda, mu, nu)?;
    let k = nu.len().max(2);
    let expansion = plethysm_oracle_expansion(lambda, mu, k)?;
    to_natural(expansion.coeff(nu), "oracle plethysm coefficient")
}

/// Both sides of `dim S_λ(ℂ^{ab}) = Σ g_{λ,μ,ν} dim S_μ(ℂ^a) dim S_ν(ℂ^b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurWeylReport {
    #[serde(serialize_with = "crate::stability::serialize_natural")]
    pub lhs: BigUint,
    #[serde(serialize_with = "crate::stability::serialize_natural")]
    pub rhs: BigUint,
    pub equal: bool,
}

/// Checks the tensor-product decomposition of `S_λ(V ⊗ W)` dimensionally.
pub fn verify_schur_weyl_dim(engine: &Engine, lambda: &Partition, a: usize, b: usize) -> Result<SchurWeylReport> {
    if lambda.size() > SCHUR_WEYL_MAX_SIZE {
        return Err(Error::cap("|λ|", lambda.size(), SCHUR_WEYL_MAX_SIZE));
    }
    if a > SCHUR_WEYL_MAX_DIM || b > SCHUR_WEYL_MAX_DIM {
        return Err(Error::cap("dimension", a.max(b), SCHUR_WEYL_MAX_DIM));
    }
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument("dimensions must be positive".into()));
    }
    let n = lambda.size();
    let lhs = gl_dim(lambda, a * b);
    let mut rhs = BigUint::zero();
    for mu in Partition::all(n).into_iter().filter(|m| m.len() <= a) {
        for nu in Partition::all(n).into_iter().filter(|v| v.len() <= b) {
            let g = kronecker(engine, lambda, &mu, &nu)?;
            rhs += g * gl_dim(&mu, a) * gl_dim(&nu, b);
        }
    }
    Ok(SchurWeylReport {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Count of ways to add a horizontal strip of size `k` to μ giving λ (0 or 1).
pub fn pieri_count(lambda: &Partition, mu: &Partition, k: usize) -> u32 {
    if mu.size() + k != lambda.size() || !skew_contains(lambda, mu) {
        return 0;
    }
    // λ/μ is a horizontal strip iff μ_i ≥ λ_{i+1} for every i
    let ok = (0..lambda.len()).all(|i| mu.part(i) >= lambda.part(i + 1));
    u32::from(ok)
}

pub(crate) fn is_one(value: &BigUint) -> bool {
    *value == BigUint::from(1u32)
}
