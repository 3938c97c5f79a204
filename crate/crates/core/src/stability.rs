//! Stretched coefficient sequences and the stability analysis built on them.
//!
//! A triple (α, β, γ) is stable when `g_{α,β,γ} > 0` and every shifted
//! sequence `g_{dα+λ, dβ+μ, dγ+ν}` is eventually constant. This holds exactly
//! when the diagonal `g_{dα,dβ,dγ}` equals 1 for all `d > 0`, which turns a
//! single counterexample on the diagonal into a proof of instability. The
//! converse cannot be certified from finitely many values, so Kronecker and
//! plethysm verdicts are three-valued. For LR coefficients one value
//! `c^α_{β,γ} = 1` decides stability outright.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coefficients::{
    is_one, kronecker, littlewood_richardson, plethysm_coeff_total, CoefficientKind,
};
use crate::error::{Error, Result};
use crate::partitions::{scale_add, PartitionTriple};
use crate::Engine;

pub const DEFAULT_WINDOW: usize = 3;
pub const DEFAULT_PERIOD_MAX: usize = 6;

/// Serializes a natural number as a JSON number when it fits in `u64`,
/// else as a decimal string.
pub fn serialize_natural<S: Serializer>(value: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match value.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&value.to_string()),
    }
}

fn serialize_naturals<S: Serializer>(values: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        seq.serialize_element(&Natural(v))?;
    }
    seq.end()
}

struct Natural<'a>(&'a BigUint);

impl Serialize for Natural<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_natural(self.0, s)
    }
}

fn deserialize_naturals<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigUint>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Number(u64),
        Text(String),
    }
    Vec::<Raw>::deserialize(d)?
        .into_iter()
        .map(|r| match r {
            Raw::Number(v) => Ok(BigUint::from(v)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        })
        .collect()
}

/// Values of a stretched coefficient for `d = 0..=dmax`.
///
/// Kronecker: `g_{dα+λ, dβ+μ, dγ+ν}`. LR: `c^{dα+λ}_{dβ+μ, dγ+ν}`.
/// Plethysm: `a^{dγ+ν}_{dα+λ, β}` with the inner partition β held fixed
/// (the middle shift entry must be empty).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffSequence {
    pub kind: CoefficientKind,
    pub base: PartitionTriple,
    pub shift: PartitionTriple,
    pub dmax: usize,
    #[serde(serialize_with = "serialize_naturals", deserialize_with = "deserialize_naturals")]
    pub values: Vec<BigUint>,
}

impl CoeffSequence {
    pub fn values_as_integers(&self) -> Vec<BigInt> {
        self.values.iter().cloned().map(BigInt::from).collect()
    }
}

fn check_balance(kind: CoefficientKind, base: &PartitionTriple, shift: &PartitionTriple) -> Result<()> {
    if kind == CoefficientKind::Plethysm && !shift.second.is_empty() {
        return Err(Error::InvalidArgument(
            "plethysm sequences hold the inner partition fixed; the middle shift must be `-`".into(),
        ));
    }
    for d in 0..=1 {
        let t = base.stretch(d, shift);
        let [a, b, c] = t.sizes();
        let ok = match kind {
            CoefficientKind::Kronecker => a == b && b == c,
            CoefficientKind::LittlewoodRichardson => b + c == a,
            CoefficientKind::Plethysm => a * base.second.size() == c,
        };
        if !ok {
            let identity = match kind {
                CoefficientKind::Kronecker => format!("|λ| = |μ| = |ν| fails at d = {d}: {a}, {b}, {c}"),
                CoefficientKind::LittlewoodRichardson => {
                    format!("|μ| + |ν| = |λ| fails at d = {d}: {b} + {c} vs {a}")
                }
                CoefficientKind::Plethysm => format!(
                    "|outer|·|inner| = |ν| fails at d = {d}: {a}·{} vs {c}",
                    base.second.size()
                ),
            };
            return Err(Error::SizeMismatch(identity));
        }
    }
    Ok(())
}

/// The size that must respect the engine caps at stretch `d`.
fn capped_size(kind: CoefficientKind, base: &PartitionTriple, shift: &PartitionTriple, d: usize) -> usize {
    match kind {
        CoefficientKind::Kronecker | CoefficientKind::LittlewoodRichardson => {
            d * base.first.size() + shift.first.size()
        }
        CoefficientKind::Plethysm => d * base.third.size() + shift.third.size(),
    }
}

fn cap_for(engine: &Engine, kind: CoefficientKind) -> usize {
    match kind {
        CoefficientKind::Plethysm => engine.plethysm_cap().min(engine.rank_cap()),
        _ => engine.rank_cap(),
    }
}

fn check_sequence_cap(
    engine: &Engine,
    kind: CoefficientKind,
    base: &PartitionTriple,
    shift: &PartitionTriple,
    dmax: usize,
) -> Result<()> {
    let cap = cap_for(engine, kind);
    let requested = capped_size(kind, base, shift, dmax);
    if requested <= cap {
        return Ok(());
    }
    let step = capped_size(kind, base, &PartitionTriple::empty(), 1);
    let offset = capped_size(kind, &PartitionTriple::empty(), shift, 0);
    let hint = if offset > cap {
        "; no stretch is admissible".to_string()
    } else {
        format!("; the largest admissible dmax is {}", (cap - offset) / step.max(1))
    };
    Err(Error::CapExceeded {
        what: "stretched size",
        requested,
        cap,
        hint,
    })
}

/// One coefficient of the stretched family at stretch `d`.
pub fn stretched_value(
    engine: &Engine,
    kind: CoefficientKind,
    base: &PartitionTriple,
    shift: &PartitionTriple,
    d: usize,
) -> Result<BigUint> {
    match kind {
        CoefficientKind::Kronecker => {
            let t = base.stretch(d, shift);
            kronecker(engine, &t.first, &t.second, &t.third)
        }
        CoefficientKind::LittlewoodRichardson => {
            let t = base.stretch(d, shift);
            littlewood_richardson(&t.first, &t.second, &t.third)
        }
        CoefficientKind::Plethysm => {
            let outer = scale_add(&base.first, d, &shift.first);
            let result = scale_add(&base.third, d, &shift.third);
            plethysm_coeff_total(engine, &outer, &base.second, &result)
        }
    }
}

/// Generates `values[d]` for `d = 0..=dmax`.
pub fn coefficient_sequence(
    engine: &Engine,
    kind: CoefficientKind,
    base: &PartitionTriple,
    shift: &PartitionTriple,
    dmax: usize,
) -> Result<CoeffSequence> {
    check_balance(kind, base, shift)?;
    check_sequence_cap(engine, kind, base, shift, dmax)?;
    let values = (0..=dmax)
        .into_par_iter()
        .map(|d| stretched_value(engine, kind, base, shift, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoeffSequence {
        kind,
        base: base.clone(),
        shift: shift.clone(),
        dmax,
        values,
    })
}

/// Eventual value of a sequence, as observed on a finite prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    #[serde(serialize_with = "serialize_natural")]
    pub value: BigUint,
    pub onset: usize,
    /// Always true: constancy of a finite tail is evidence, not proof.
    pub heuristic: bool,
}

/// If the last `window` values agree, their common value and the first
/// index from which the sequence is constant.
pub fn detect_stabilization(values: &[BigUint], window: usize) -> Option<Stabilization> {
    if window == 0 || values.len() < window {
        return None;
    }
    let last = values.last()?;
    if !values[values.len() - window..].iter().all(|v| v == last) {
        return None;
    }
    let onset = values
        .iter()
        .rposition(|v| v != last)
        .map_or(0, |i| i + 1);
    Some(Stabilization {
        value: last.clone(),
        onset,
        heuristic: true,
    })
}

/// A function on the integers given by one polynomial per residue class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    period: usize,
    /// Coefficients of each component, constant term first, no trailing zeros.
    components: Vec<Vec<BigRational>>,
}

impl QuasiPolynomial {
    pub fn new(components: Vec<Vec<BigRational>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument("a quasi-polynomial needs period >= 1".into()));
        }
        let components = components.into_iter().map(trim).collect::<Vec<_>>();
        Ok(QuasiPolynomial {
            period: components.len(),
            components,
        })
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn components(&self) -> &[Vec<BigRational>] {
        &self.components
    }

    /// Largest component degree; `None` for the zero quasi-polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.components
            .iter()
            .filter(|c| !c.is_empty())
            .map(|c| c.len() - 1)
            .max()
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Value at any integer `d`, using the component of `d mod period`.
    pub fn evaluate(&self, d: i64) -> BigRational {
        let residue = d.rem_euclid(self.period as i64) as usize;
        horner(&self.components[residue], &BigRational::from_integer(BigInt::from(d)))
    }
}

fn trim(mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

fn horner(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

impl Serialize for QuasiPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            period: usize,
            components: Vec<Vec<String>>,
        }
        Repr {
            period: self.period,
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuasiPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            period: usize,
            components: Vec<Vec<String>>,
        }
        let repr = Repr::deserialize(d)?;
        if repr.period != repr.components.len() {
            return Err(serde::de::Error::custom("period does not match the component count"));
        }
        let components = repr
            .components
            .into_iter()
            .map(|c| c.iter().map(|x| x.parse::<BigRational>()).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        QuasiPolynomial::new(components).map_err(serde::de::Error::custom)
    }
}

/// Interpolating polynomial through `points`, constant term first.
fn interpolate(points: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let mut result = vec![BigRational::zero(); points.len()];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial Π_{j≠i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::from_integer(1.into())];
        let mut denom = BigRational::from_integer(1.into());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = yi / denom;
        for (k, c) in basis.iter().enumerate() {
            result[k] += c * &scale;
        }
    }
    trim(result)
}

/// Fits `values[i]` at `d = i` (see [`fit_quasipolynomial_from`]).
pub fn fit_quasipolynomial(values: &[BigInt], period_max: usize) -> Result<QuasiPolynomial> {
    fit_quasipolynomial_from(values, 0, period_max)
}

/// The minimal quasi-polynomial reproducing `values[i]` at `d = start + i`.
///
/// Periods are tried in increasing order and, for each, degrees in
/// increasing order. A (period, degree) pair is admissible only when every
/// residue class has at least `degree + 2` samples, so each component is
/// checked on at least one point beyond those it interpolates.
pub fn fit_quasipolynomial_from(values: &[BigInt], start: i64, period_max: usize) -> Result<QuasiPolynomial> {
    let mut diagnostics = Vec::new();
    for period in 1..=period_max {
        let mut classes: Vec<Vec<(BigRational, BigRational)>> = vec![Vec::new(); period];
        for (i, v) in values.iter().enumerate() {
            let d = start + i as i64;
            classes[d.rem_euclid(period as i64) as usize].push((
                BigRational::from_integer(BigInt::from(d)),
                BigRational::from_integer(v.clone()),
            ));
        }
        let fewest = classes.iter().map(Vec::len).min().unwrap_or(0);
        if fewest < 2 {
            diagnostics.push(format!(
                "period {period}: a residue class has {fewest} sample(s), need at least 2"
            ));
            continue;
        }
        let mut worst = (0usize, 0usize);
        for degree in 0..=fewest - 2 {
            let mut components = Vec::with_capacity(period);
            let mut mismatches = 0;
            for points in &classes {
                let poly = interpolate(&points[..=degree]);
                mismatches += points[degree + 1..]
                    .iter()
                    .filter(|(x, y)| horner(&poly, x) != *y)
                    .count();
                components.push(poly);
            }
            if mismatches == 0 {
                return QuasiPolynomial::new(components);
            }
            worst = (degree, mismatches);
        }
        diagnostics.push(format!(
            "period {period}: degree <= {} leaves {} mismatched sample(s)",
            worst.0, worst.1
        ));
    }
    Err(Error::NoFit {
        period_max,
        diagnostics: if diagnostics.is_empty() {
            "no periods tried".into()
        } else {
            diagnostics.join("; ")
        },
    })
}

/// `q(d)` for any integer `d`.
pub fn evaluate_quasipolynomial(q: &QuasiPolynomial, d: i64) -> BigRational {
    q.evaluate(d)
}

/// Krull dimension estimate `degree + 1` (0 for the zero quasi-polynomial).
pub fn krull_estimate(q: &QuasiPolynomial) -> usize {
    q.degree().map_or(0, |d| d + 1)
}

/// A failure of `p(d) ≥ |p(-d)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReciprocityViolation {
    pub d: i64,
    #[serde(serialize_with = "serialize_rational")]
    pub value: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub mirror: BigRational,
}

fn serialize_rational<S: Serializer>(value: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

/// Every `1 ≤ d ≤ dmax` where `p(d) < |p(-d)|`, which no lattice-point
/// counting function of a rational polytope can exhibit.
pub fn reciprocity_scan(q: &QuasiPolynomial, dmax: usize) -> Vec<ReciprocityViolation> {
    (1..=dmax as i64)
        .filter_map(|d| {
            let value = q.evaluate(d);
            let mirror = q.evaluate(-d);
            (value < mirror.abs()).then_some(ReciprocityViolation { d, value, mirror })
        })
        .collect()
}

/// Fit, Krull estimate and reciprocity scan for a diagonal sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FitSummary {
    pub quasi_polynomial: QuasiPolynomial,
    /// First `d` the fit was made from (1 when `d = 0` had to be dropped).
    pub fit_start: i64,
    pub krull_estimate: usize,
    /// True when some residue class had only one sample beyond those the
    /// fit interpolates; the degree (hence the estimate) may be too low.
    pub krull_tentative: bool,
    pub reciprocity_violations: Vec<ReciprocityViolation>,
}

/// Fits from `d = 0`, falling back to `d ≥ 1` when the value at 0 is the
/// only obstruction (as for a diagonal that vanishes for all `d > 0`).
pub fn summarize_fit(values: &[BigInt], period_max: usize) -> Result<FitSummary> {
    let (q, start) = match fit_quasipolynomial(values, period_max) {
        Ok(q) => (q, 0),
        Err(first) => match values.get(1..).map(|rest| fit_quasipolynomial_from(rest, 1, period_max)) {
            Some(Ok(q)) => (q, 1),
            _ => return Err(first),
        },
    };
    let samples = values.len() - start as usize;
    let per_class = samples / q.period();
    let krull_tentative = per_class < q.degree().unwrap_or(0) + 3;
    let horizon = values.len().saturating_sub(1).max(1);
    Ok(FitSummary {
        krull_estimate: krull_estimate(&q),
        krull_tentative,
        reciprocity_violations: reciprocity_scan(&q, horizon),
        fit_start: start,
        quasi_polynomial: q,
    })
}

/// Outcome of a stability check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Verdict {
    /// Disproved: `g_base = 0`, or a diagonal value other than 1.
    NotStable {
        witness_d: usize,
        #[serde(serialize_with = "serialize_natural")]
        witness_value: BigUint,
    },
    /// Every diagonal value for `1 ≤ d ≤ dmax` is 1; not a proof.
    CertifiedUpTo { dmax: usize },
    /// LR only: `c^α_{β,γ} = 1`.
    DecidedStable,
    /// LR only: `c^α_{β,γ} ≠ 1`.
    DecidedNotStable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub triple: PartitionTriple,
    pub kind: CoefficientKind,
    pub verdict: Verdict,
    /// Diagonal values for `d = 1, 2, ...`, stopping at the first witness.
    #[serde(serialize_with = "serialize_naturals")]
    pub diagonal_values: Vec<BigUint>,
    /// The coefficient of the triple itself (`d = 1`).
    #[serde(serialize_with = "serialize_natural")]
    pub g_base: BigUint,
    /// Present only when a shifted sequence was requested.
    pub shift: Option<PartitionTriple>,
    #[serde(serialize_with = "serialize_naturals")]
    pub shifted_values: Vec<BigUint>,
    pub stable_value: Option<Stabilization>,
}

#[derive(Clone, Debug)]
pub struct StabilityOptions {
    pub dmax: usize,
    pub shift: Option<PartitionTriple>,
    pub window: usize,
}

impl Default for StabilityOptions {
    fn default() -> Self {
        StabilityOptions {
            dmax: 6,
            shift: None,
            window: DEFAULT_WINDOW,
        }
    }
}

impl StabilityOptions {
    pub fn up_to(dmax: usize) -> Self {
        StabilityOptions {
            dmax,
            ..Default::default()
        }
    }
}

/// Walks the diagonal `d = 1..=dmax` and stops at the first value other than 1.
fn diagonal_verdict(
    engine: &Engine,
    kind: CoefficientKind,
    base: &PartitionTriple,
    dmax: usize,
) -> Result<(Verdict, Vec<BigUint>)> {
    let empty = PartitionTriple::empty();
    let mut values = Vec::new();
    for d in 1..=dmax.max(1) {
        let v = stretched_value(engine, kind, base, &empty, d)?;
        let witness = !is_one(&v);
        values.push(v.clone());
        if witness {
            return Ok((
                Verdict::NotStable {
                    witness_d: d,
                    witness_value: v,
                },
                values,
            ));
        }
    }
    Ok((Verdict::CertifiedUpTo { dmax }, values))
}

fn attach_shift(
    engine: &Engine,
    kind: CoefficientKind,
    base: &PartitionTriple,
    options: &StabilityOptions,
    report: &mut StabilityReport,
) -> Result<()> {
    if let Some(shift) = &options.shift {
        let seq = coefficient_sequence(engine, kind, base, shift, options.dmax)?;
        report.stable_value = detect_stabilization(&seq.values, options.window);
        report.shifted_values = seq.values;
        report.shift = Some(shift.clone());
    }
    Ok(())
}

fn positive_dmax(options: &StabilityOptions) -> Result<()> {
    if options.dmax == 0 {
        return Err(Error::InvalidArgument("dmax must be positive".into()));
    }
    Ok(())
}

/// Kronecker stability: disproof by a diagonal witness, else `CertifiedUpTo`.
pub fn kronecker_stability(
    engine: &Engine,
    base: &PartitionTriple,
    options: &StabilityOptions,
) -> Result<StabilityReport> {
    positive_dmax(options)?;
    let kind = CoefficientKind::Kronecker;
    check_balance(kind, base, &PartitionTriple::empty())?;
    check_sequence_cap(engine, kind, base, &PartitionTriple::empty(), options.dmax)?;
    let (verdict, diagonal_values) = diagonal_verdict(engine, kind, base, options.dmax)?;
    let mut report = StabilityReport {
        triple: base.clone(),
        kind,
        verdict,
        g_base: diagonal_values[0].clone(),
        diagonal_values,
        shift: None,
        shifted_values: Vec::new(),
        stable_value: None,
    };
    attach_shift(engine, kind, base, options, &mut report)?;
    Ok(report)
}

/// LR stability is decided by the single value `c^α_{β,γ}`.
pub fn lr_stability(
    engine: &Engine,
    base: &PartitionTriple,
    options: &StabilityOptions,
) -> Result<StabilityReport> {
    let kind = CoefficientKind::LittlewoodRichardson;
    check_balance(kind, base, &PartitionTriple::empty())?;
    let c = littlewood_richardson(&base.first, &base.second, &base.third)?;
    let verdict = if is_one(&c) {
        Verdict::DecidedStable
    } else {
        Verdict::DecidedNotStable
    };
    let mut report = StabilityReport {
        triple: base.clone(),
        kind,
        verdict,
        diagonal_values: vec![c.clone()],
        g_base: c,
        shift: None,
        shifted_values: Vec::new(),
        stable_value: None,
    };
    attach_shift(engine, kind, base, options, &mut report)?;
    Ok(report)
}

/// Plethysm stability: checks `a^{dγ}_{dα,β} = 1` for `d ≤ dmax`
/// (`d = 0` holds trivially).
pub fn plethysm_stability(
    engine: &Engine,
    base: &PartitionTriple,
    options: &StabilityOptions,
) -> Result<StabilityReport> {
    positive_dmax(options)?;
    let kind = CoefficientKind::Plethysm;
    check_balance(kind, base, &PartitionTriple::empty())?;
    check_sequence_cap(engine, kind, base, &PartitionTriple::empty(), options.dmax)?;
    let (verdict, diagonal_values) = diagonal_verdict(engine, kind, base, options.dmax)?;
    let mut report = StabilityReport {
        triple: base.clone(),
        kind,
        verdict,
        g_base: diagonal_values[0].clone(),
        diagonal_values,
        shift: None,
        shifted_values: Vec::new(),
        stable_value: None,
    };
    attach_shift(engine, kind, base, options, &mut report)?;
    Ok(report)
}

/// Dispatches to the family-specific check.
pub fn stability(
    engine: &Engine,
    kind: CoefficientKind,
    base: &PartitionTriple,
    options: &StabilityOptions,
) -> Result<StabilityReport> {
    match kind {
        CoefficientKind::Kronecker => kronecker_stability(engine, base, options),
        CoefficientKind::LittlewoodRichardson => lr_stability(engine, base, options),
        CoefficientKind::Plethysm => plethysm_stability(engine, base, options),
    }
}
