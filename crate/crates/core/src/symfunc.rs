//! Sparse exact symmetric functions: power-sum and Schur expansions, and
//! finite-variable polynomial models used by the brute-force oracles.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::Engine;

/// A homogeneous symmetric function in the power-sum basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerExpansion {
    degree: usize,
    terms: BTreeMap<Partition, BigRational>,
}

impl PowerExpansion {
    pub fn zero(degree: usize) -> Self {
        PowerExpansion {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The single term `c·p_μ`.
    pub fn term(mu: Partition, coeff: BigRational) -> Self {
        let mut f = Self::zero(mu.size());
        f.add_term(mu, coeff);
        f
    }

    /// `p_μ`
    pub fn power_sum(mu: Partition) -> Self {
        Self::term(mu, BigRational::one())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, mu: &Partition) -> BigRational {
        self.terms.get(mu).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·p_μ`; panics if `|μ|` differs from the degree.
    pub fn add_term(&mut self, mu: Partition, coeff: BigRational) {
        assert_eq!(mu.size(), self.degree, "power-sum term of the wrong degree");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mu) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Replaces each `p_ρ` by `p_{kρ}`, i.e. the plethysm `p_k[f]`.
    pub fn scale_parts(&self, k: usize) -> PowerExpansion {
        let terms = self
            .terms
            .iter()
            .map(|(mu, c)| {
                let parts = mu.parts().iter().map(|p| p * k).collect();
                (Partition::from_padded(parts), c.clone())
            })
            .collect();
        PowerExpansion {
            degree: self.degree * k,
            terms,
        }
    }
}

impl Mul for &PowerExpansion {
    type Output = PowerExpansion;

    fn mul(self, rhs: &PowerExpansion) -> PowerExpansion {
        let mut out = PowerExpansion::zero(self.degree + rhs.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let mut parts: Vec<usize> = a.parts().iter().chain(b.parts()).copied().collect();
                parts.sort_unstable_by(|x, y| y.cmp(x));
                out.add_term(Partition::from_padded(parts), ca * cb);
            }
        }
        out
    }
}

/// A homogeneous symmetric function in the Schur basis, integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchurExpansion {
    degree: usize,
    terms: BTreeMap<Partition, BigInt>,
}

impl SchurExpansion {
    pub fn zero(degree: usize) -> Self {
        SchurExpansion {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(lambda: Partition) -> Self {
        let mut s = Self::zero(lambda.size());
        s.add_term(lambda, BigInt::one());
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> BigInt {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, lambda: Partition, coeff: BigInt) {
        assert_eq!(lambda.size(), self.degree, "Schur term of the wrong degree");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(lambda).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    /// True when every coefficient is nonnegative, as for a genuine representation.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// `[{"partition": [...], "coeff": "<decimal>"}, ...]` entries.
    pub fn to_entries(&self) -> Vec<ExpansionEntry> {
        self.terms
            .iter()
            .rev()
            .map(|(p, c)| ExpansionEntry {
                partition: p.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*s[{p}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionEntry {
    pub partition: Partition,
    pub coeff: String,
}

/// A polynomial in `k` variables with integer coefficients.
///
/// Terms are kept in a sorted map keyed by exponent vector, so the last key
/// is the leading monomial in lex order with `x₁ > x₂ > ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl SparsePolynomial {
    pub fn zero(vars: usize) -> Self {
        SparsePolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        Self::monomial(vec![0; vars], BigInt::one())
    }

    pub fn monomial(exponents: Vec<u32>, coeff: BigInt) -> Self {
        let mut f = Self::zero(exponents.len());
        f.add_term(exponents, coeff);
        f
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn variable(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coeff: BigInt) {
        assert_eq!(exponents.len(), self.vars, "exponent vector of the wrong length");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `scale · other` in place.
    pub fn add_scaled(&mut self, other: &SparsePolynomial, scale: &BigInt) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * scale);
        }
    }

    /// Leading monomial and coefficient in lex order.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.last_key_value()
    }

    /// Value at `x₁ = ... = x_k = 1`.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The common total degree, or `None` if not homogeneous (or zero).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum());
        let first = degrees.next()?;
        degrees.all(|d: usize| d == first).then_some(first)
    }

    /// Invariance under every adjacent transposition, hence under all of `S_k`.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| {
            (0..self.vars.saturating_sub(1)).all(|i| {
                if e[i] == e[i + 1] {
                    return true;
                }
                let mut swapped = e.clone();
                swapped.swap(i, i + 1);
                self.terms.get(&swapped) == Some(c)
            })
        })
    }

    pub fn pow(&self, k: usize) -> SparsePolynomial {
        let mut out = SparsePolynomial::one(self.vars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl AddAssign<&SparsePolynomial> for SparsePolynomial {
    fn add_assign(&mut self, rhs: &SparsePolynomial) {
        self.add_scaled(rhs, &BigInt::one());
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.vars, rhs.vars, "variable counts differ");
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_default() += ca * cb;
            }
        }
        SparsePolynomial {
            vars: self.vars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

/// `s_λ = Σ_μ χ_λ(μ)/z_μ · p_μ`.
pub fn schur_to_power(engine: &Engine, lambda: &Partition) -> Result<PowerExpansion> {
    let n = lambda.size();
    let classes = engine.cycle_types(n)?;
    let row = engine.character_row(lambda)?;
    let mut out = PowerExpansion::zero(n);
    for (class, chi) in classes.iter().zip(row.iter()) {
        out.add_term(
            class.shape.clone(),
            BigRational::new(chi.clone(), BigInt::from(class.z.clone())),
        );
    }
    Ok(out)
}

/// `⟨f, s_λ⟩ = Σ_μ [p_μ]f · χ_λ(μ)` as an exact rational.
pub fn schur_coefficient(
    engine: &Engine,
    f: &PowerExpansion,
    lambda: &Partition,
) -> Result<BigRational> {
    if lambda.size() != f.degree() {
        return Ok(BigRational::zero());
    }
    if f.is_zero() {
        return Ok(BigRational::zero());
    }
    let classes = engine.cycle_types(f.degree())?;
    let row = engine.character_row(lambda)?;
    let position: HashMap<&Partition, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (&c.shape, i))
        .collect();
    Ok(f.terms()
        .iter()
        .fold(BigRational::zero(), |acc, (mu, c)| {
            acc + c * BigRational::from_integer(row[position[mu]].clone())
        }))
}

/// Converts to the Schur basis, asserting every coefficient is an integer.
pub fn power_to_schur(engine: &Engine, f: &PowerExpansion) -> Result<SchurExpansion> {
    let n = f.degree();
    let mut out = SchurExpansion::zero(n);
    if f.is_zero() {
        return Ok(out);
    }
    let classes = engine.cycle_types(n)?;
    let lambdas: Vec<Partition> = classes.iter().map(|c| c.shape.clone()).collect();
    let rows = engine.character_rows(&lambdas)?;
    let position: HashMap<&Partition, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (&c.shape, i))
        .collect();
    for (lambda, row) in lambdas.iter().zip(rows) {
        let value = f.terms().iter().fold(BigRational::zero(), |acc, (mu, c)| {
            acc + c * BigRational::from_integer(row[position[mu]].clone())
        });
        out.add_term(lambda.clone(), integral(value, lambda)?);
    }
    Ok(out)
}

pub(crate) fn integral(value: BigRational, lambda: &Partition) -> Result<BigInt> {
    if !value.is_integer() {
        return Err(Error::Integrity(format!(
            "coefficient of s[{lambda}] is {value}, not an integer"
        )));
    }
    Ok(value.to_integer())
}

/// The Schur polynomial `s_λ(x₁, ..., x_k)`; zero when `ℓ(λ) > k`.
pub fn schur_polynomial(lambda: &Partition, k: usize) -> SparsePolynomial {
    let vars: Vec<SparsePolynomial> = (0..k).map(|i| SparsePolynomial::variable(k, i)).collect();
    schur_polynomial_at(lambda, &vars, k)
}

/// `s_λ(y₁, ..., y_m)` where each `y_j` is a polynomial in `k` variables.
///
/// Uses the branching rule `s_κ(y₁..y_j) = Σ s_ρ(y₁..y_{j-1}) · y_j^{|κ/ρ|}`
/// over horizontal strips `κ/ρ`, one variable at a time.
pub fn schur_polynomial_at(
    lambda: &Partition,
    images: &[SparsePolynomial],
    k: usize,
) -> SparsePolynomial {
    // largest shapes first, so each s_κ of the previous level is moved
    // into its own strip-0 term only after every larger shape has read it
    let mut shapes = subshapes(lambda);
    shapes.sort_by_key(|s| std::cmp::Reverse(s.size()));
    let mut level: HashMap<Partition, SparsePolynomial> = HashMap::new();
    level.insert(Partition::empty(), SparsePolynomial::one(k));
    for (j, y) in images.iter().enumerate() {
        let mut powers = vec![SparsePolynomial::one(k)];
        let mut next: HashMap<Partition, SparsePolynomial> = HashMap::new();
        for kappa in shapes.iter().filter(|s| s.len() <= j + 1) {
            let mut acc = level.remove(kappa).unwrap_or_else(|| SparsePolynomial::zero(k));
            for rho in horizontal_strip_removals(kappa) {
                if rho == *kappa {
                    continue;
                }
                let Some(prev) = level.get(&rho) else { continue };
                let strip = kappa.size() - rho.size();
                while powers.len() <= strip {
                    let p = powers.last().expect("nonempty") * y;
                    powers.push(p);
                }
                acc += &(prev * &powers[strip]);
            }
            if !acc.is_zero() {
                next.insert(kappa.clone(), acc);
            }
        }
        level = next;
    }
    level.remove(lambda).unwrap_or_else(|| SparsePolynomial::zero(k))
}

/// All partitions contained in λ.
fn subshapes(lambda: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(lambda: &Partition, i: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition::from_padded(cur.clone()));
        if i >= lambda.len() {
            return;
        }
        for p in 1..=cap.min(lambda.part(i)) {
            cur.push(p);
            rec(lambda, i + 1, p, cur, out);
            cur.pop();
        }
    }
    rec(lambda, 0, usize::MAX, &mut current, &mut out);
    out
}

/// Every ρ with κ/ρ a horizontal strip: `κ_{i+1} ≤ ρ_i ≤ κ_i`.
fn horizontal_strip_removals(kappa: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = vec![0; kappa.len()];
    fn rec(kappa: &Partition, i: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == kappa.len() {
            out.push(Partition::from_padded(cur.clone()));
            return;
        }
        for r in kappa.part(i + 1)..=kappa.part(i) {
            cur[i] = r;
            rec(kappa, i + 1, cur, out);
        }
    }
    rec(kappa, 0, &mut current, &mut out);
    out
}

/// Number of partitions of `n` with at most `k` parts; bounds decomposition loops.
fn bounded_partition_count(n: usize, k: usize) -> usize {
    // p_k(n) = p_k(n - k) + p_{k-1}(n) style table
    let mut table = vec![vec![0usize; n + 1]; k + 1];
    for row in table.iter_mut() {
        row[0] = 1;
    }
    for j in 1..=k {
        for m in 1..=n {
            table[j][m] = table[j - 1][m] + if m >= j { table[j][m - j] } else { 0 };
        }
    }
    table[k][n]
}

/// Writes a homogeneous symmetric polynomial in `k` variables as a
/// combination of Schur polynomials by repeated leading-term subtraction.
pub fn decompose_into_schur(f: &SparsePolynomial, k: usize) -> Result<SchurExpansion> {
    if f.vars() != k {
        return Err(Error::InvalidArgument(format!(
            "polynomial has {} variables, expected {k}",
            f.vars()
        )));
    }
    if f.is_zero() {
        return Ok(SchurExpansion::zero(0));
    }
    let degree = f
        .homogeneous_degree()
        .ok_or_else(|| Error::InvalidArgument("polynomial is not homogeneous".into()))?;
    if !f.is_symmetric() {
        return Err(Error::InvalidArgument("polynomial is not symmetric".into()));
    }
    let bound = bounded_partition_count(degree, k);
    let mut rest = f.clone();
    let mut out = SchurExpansion::zero(degree);
    let mut steps = 0;
    while let Some((lead, coeff)) = rest.leading_term() {
        steps += 1;
        if steps > bound {
            return Err(Error::Integrity(format!(
                "Schur decomposition did not terminate within {bound} steps"
            )));
        }
        let parts: Vec<usize> = lead.iter().map(|&e| e as usize).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Integrity(format!(
                "leading exponent {lead:?} is not a partition"
            )));
        }
        let lambda = Partition::from_padded(parts);
        let coeff = coeff.clone();
        rest.add_scaled(&schur_polynomial(&lambda, k), &-coeff.clone());
        out.add_term(lambda, coeff);
    }
    Ok(out)
}

/// Decomposes a polynomial in `a + b` variables that is symmetric in the
/// first `a` and in the last `b` separately into `Σ c · s_μ(x) s_ν(y)`.
pub(crate) fn decompose_into_schur_pairs(
    f: &SparsePolynomial,
    a: usize,
    b: usize,
) -> Result<BTreeMap<(Partition, Partition), BigInt>> {
    assert_eq!(f.vars(), a + b);
    let mut rest = f.clone();
    let mut out = BTreeMap::new();
    let mut cache: HashMap<(Partition, Partition), SparsePolynomial> = HashMap::new();
    let degree = f.homogeneous_degree().unwrap_or(0);
    let bound = bounded_partition_count(degree, a.max(1)) * bounded_partition_count(degree, b.max(1)) + 1;
    let mut steps = 0;
    while let Some((lead, coeff)) = rest.leading_term() {
        steps += 1;
        if steps > bound {
            return Err(Error::Integrity("bi-Schur decomposition did not terminate".into()));
        }
        let (x, y) = lead.split_at(a);
        let to_partition = |e: &[u32]| -> Result<Partition> {
            let parts: Vec<usize> = e.iter().map(|&v| v as usize).collect();
            if parts.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Integrity(format!(
                    "leading exponent {lead:?} is not a pair of partitions"
                )));
            }
            Ok(Partition::from_padded(parts))
        };
        let key = (to_partition(x)?, to_partition(y)?);
        let coeff = coeff.clone();
        let product = cache.entry(key.clone()).or_insert_with(|| {
            let sx = schur_polynomial(&key.0, a);
            let sy = schur_polynomial(&key.1, b);
            let mut p = SparsePolynomial::zero(a + b);
            for (ex, cx) in sx.terms() {
                for (ey, cy) in sy.terms() {
                    let e: Vec<u32> = ex.iter().chain(ey).copied().collect();
                    p.add_term(e, cx * cy);
                }
            }
            p
        });
        rest.add_scaled(product, &-coeff.clone());
        *out.entry(key).or_insert_with(BigInt::zero) += coeff;
    }
    out.retain(|_, c: &mut BigInt| !c.is_zero());
    Ok(out)
}

/// The plethysm `f[g]` in power-sum coordinates: `p_n[g]` replaces every
/// `p_m` in `g` by `p_{nm}`, extended multiplicatively and linearly in `f`.
pub fn plethysm_power(f: &PowerExpansion, g: &PowerExpansion) -> PowerExpansion {
    let mut out = PowerExpansion::zero(f.degree() * g.degree());
    let mut scaled: HashMap<usize, PowerExpansion> = HashMap::new();
    for (mu, c) in f.terms() {
        let mut product = PowerExpansion::term(Partition::empty(), c.clone());
        for &part in mu.parts() {
            let factor = scaled.entry(part).or_insert_with(|| g.scale_parts(part));
            product = &product * factor;
        }
        for (rho, d) in product.terms {
            out.add_term(rho, d);
        }
    }
    out
}
