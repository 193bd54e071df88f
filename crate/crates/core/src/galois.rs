//! Frobenius cycle types of `L(X)/X - t` and the certificates built on them.
//!
//! Specializing `t -> c` in `F_{q^k}` and factoring gives the cycle type of a
//! Frobenius element of the Galois group `G` whenever the specialization is
//! squarefree. `G` contains a Singer cycle, so it either contains `GL_n(q)`
//! or lies in some `GammaL_{n/d}(q^d)` with `d > 1`; one observed type outside
//! every such candidate settles the first case.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{big_pow, divides, divisors, is_prime, lcm_all, prime_power, ser_big, ser_big_opt};
use crate::ff::{make_extension, make_prime_field, Embedding, Field, FieldElement, FieldError, ENUMERATION_LIMIT};
use crate::groups::{gl_cycle_types, order_gl, permutation_order, semilinear_cycle_types, CycleType, GroupError};
use crate::linpoly::{LinError, LinearizedPoly};
use crate::poly::{Poly, PolyError};
use crate::rng::stream;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("no unramified samples")]
    NoUsableSamples,
    #[error("f' = 0, so f(X) - t is inseparable")]
    Inseparable,
    #[error("no pair of distinct roots has coprime multiplicities")]
    NoCoprimePair,
    #[error("n = {0} must be an odd prime")]
    BadArity(u64),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(GroupError),
}

impl From<GroupError> for GaloisError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::TooLarge(s) => GaloisError::GuardExceeded(s),
            GroupError::BadArity(n) => GaloisError::BadArity(n),
            e => GaloisError::Group(e),
        }
    }
}

/// Observed Frobenius data at one specialization `t = c`, `c` in `F_{q^k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusSample {
    pub k: usize,
    pub c: String,
    #[serde(skip)]
    pub c_element: FieldElement,
    pub ramified: bool,
    /// Factor degrees of the specialization; absent when ramified.
    pub cycle_type: Option<CycleType>,
}

/// Samples drawn at each extension degree, in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub schedule: Vec<(usize, usize)>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::uniform(64, 6)
    }
}

impl Budget {
    /// `per_level` samples at every `k = 1..=max_k`.
    pub fn uniform(per_level: usize, max_k: usize) -> Self {
        Budget { schedule: (1..=max_k).map(|k| (k, per_level)).collect() }
    }
}

/// `F_{q^k}` with the embedding of `F_q`.
pub fn sampling_field<R: Rng + ?Sized>(base: &Arc<Field>, k: usize, rng: &mut R) -> Result<Embedding, GaloisError> {
    let size = (base.order() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > ENUMERATION_LIMIT as u128 {
        return Err(GaloisError::GuardExceeded(format!("q^k = {}^{} exceeds 2^20", base.order(), k)));
    }
    if k == 1 {
        return Ok(Embedding::identity(base)?);
    }
    let prime = make_prime_field(base.characteristic())?;
    let target = make_extension(&prime, base.degree() * k, None, rng)?;
    Ok(Embedding::new(base, &target)?)
}

/// Draws `count` points of `F_{q^k}`, drops repeats, and records the Frobenius
/// cycle type at each.
pub fn frobenius_sample<R: Rng + ?Sized>(
    l: &LinearizedPoly,
    k: usize,
    count: usize,
    rng: &mut R,
) -> Result<Vec<FrobeniusSample>, GaloisError> {
    let emb = sampling_field(l.field(), k, rng)?;
    sample_over(l, &emb, k, count, rng)
}

/// As [`frobenius_sample`] over a prepared `F_q -> F_{q^k}`.
pub fn sample_over<R: Rng + ?Sized>(
    l: &LinearizedPoly,
    emb: &Embedding,
    k: usize,
    count: usize,
    rng: &mut R,
) -> Result<Vec<FrobeniusSample>, GaloisError> {
    let target = emb.target();
    let mut seen = HashSet::new();
    let points: Vec<FieldElement> = (0..count).map(|_| target.random(rng)).filter(|c| seen.insert(*c)).collect();
    points.into_iter().map(|c| observe(l, emb, k, c, rng)).collect()
}

/// The Frobenius sample at one given point.
pub fn observe<R: Rng + ?Sized>(
    l: &LinearizedPoly,
    emb: &Embedding,
    k: usize,
    c: FieldElement,
    rng: &mut R,
) -> Result<FrobeniusSample, GaloisError> {
    let specialized = l.specialize(emb, c)?;
    let cycle_type = if specialized.is_squarefree() {
        let degrees = specialized.factor(rng)?.degrees();
        Some(CycleType::from_lengths(degrees.into_iter().map(|d| d as u64)))
    } else {
        None
    };
    Ok(FrobeniusSample { k, c: emb.target().format(c), c_element: c, ramified: cycle_type.is_none(), cycle_type })
}

/// The candidate overgroups `GammaL_{n/d}(q^d)`, `d > 1`, with their types.
#[derive(Clone, Debug)]
pub struct Candidates {
    pub q: u64,
    pub n: usize,
    pub groups: Vec<CandidateSet>,
}

#[derive(Clone, Debug)]
pub struct CandidateSet {
    pub d: usize,
    pub order: BigUint,
    pub elements: u64,
    pub types: BTreeSet<CycleType>,
}

impl Candidates {
    pub fn new(q: u64, n: usize) -> Result<Self, GaloisError> {
        let groups = divisors(n as u64)
            .into_iter()
            .filter(|&d| d > 1)
            .map(|d| {
                let d = d as usize;
                let counts = semilinear_cycle_types(q, n, d)?;
                Ok(CandidateSet {
                    d,
                    order: crate::groups::order_gammaL(n, q, d)?,
                    elements: counts.values().sum(),
                    types: counts.into_keys().collect(),
                })
            })
            .collect::<Result<Vec<_>, GroupError>>()?;
        Ok(Candidates { q, n, groups })
    }

    /// Whether any candidate realizes `t`.
    pub fn realizes(&self, t: &CycleType) -> bool {
        self.groups.iter().any(|g| g.types.contains(t))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    CertifiedGL,
    UndeterminedWithinBudget,
    ExcludedCase,
}

/// Why one candidate overgroup is ruled out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateEvidence {
    pub d: usize,
    pub group: String,
    #[serde(serialize_with = "ser_big")]
    pub order: BigUint,
    pub elements_enumerated: u64,
    pub distinct_types: usize,
    pub witness_absent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub l: String,
    pub key: String,
    pub q: u64,
    pub n: usize,
    pub verdict: Verdict,
    pub witness: Option<FrobeniusSample>,
    pub candidates_excluded: Vec<CandidateEvidence>,
    pub samples_used: usize,
    pub ramified_samples: usize,
    pub observed_types: Vec<CycleType>,
    #[serde(serialize_with = "ser_big_opt")]
    pub order_lower_bound: Option<BigUint>,
    pub m: Option<usize>,
    #[serde(serialize_with = "ser_big_opt")]
    pub proposition_divisor: Option<BigUint>,
    #[serde(skip)]
    pub samples: Vec<FrobeniusSample>,
}

/// `q^m (q^m - 1)(q^n - 1)`.
pub fn proposition_divisor(q: u64, n: usize, m: usize) -> BigUint {
    let qm = big_pow(q, m as u32);
    let qn1 = big_pow(q, n as u32) - BigUint::one();
    &qm * (&qm - BigUint::one()) * qn1
}

/// Classifies with freshly enumerated candidates.
pub fn classify(l: &LinearizedPoly, budget: &Budget, seed: u64) -> Result<ClassificationResult, GaloisError> {
    if l.is_excluded() {
        return Ok(excluded(l));
    }
    let candidates = Candidates::new(l.field().order(), l.qdeg())?;
    classify_with(l, budget, seed, &candidates)
}

fn excluded(l: &LinearizedPoly) -> ClassificationResult {
    ClassificationResult {
        l: l.to_string(),
        key: l.key(),
        q: l.field().order(),
        n: l.qdeg(),
        verdict: Verdict::ExcludedCase,
        witness: None,
        candidates_excluded: Vec::new(),
        samples_used: 0,
        ramified_samples: 0,
        observed_types: Vec::new(),
        order_lower_bound: None,
        m: None,
        proposition_divisor: None,
        samples: Vec::new(),
    }
}

/// Samples along `budget` until a type outside every candidate appears.
///
/// Points are drawn from the stream `sampling/<key>` of `seed`; extension
/// fields come from `modulus-search`.
pub fn classify_with(
    l: &LinearizedPoly,
    budget: &Budget,
    seed: u64,
    candidates: &Candidates,
) -> Result<ClassificationResult, GaloisError> {
    if l.is_excluded() {
        return Ok(excluded(l));
    }
    let q = l.field().order();
    let n = l.qdeg();
    if candidates.q != q || candidates.n != n {
        return Err(GaloisError::GuardExceeded("candidate sets built for another (q, n)".into()));
    }
    let mut rng = stream(seed, &format!("sampling/{}", l.key()));
    let mut samples = Vec::new();
    let mut witness = None;
    'levels: for &(k, count) in &budget.schedule {
        let emb = sampling_field(l.field(), k, &mut stream(seed, "modulus-search"))?;
        for s in sample_over(l, &emb, k, count, &mut rng)? {
            let hit = s.cycle_type.as_ref().is_some_and(|t| !candidates.realizes(t));
            samples.push(s.clone());
            if hit {
                witness = Some(s);
                break 'levels;
            }
        }
    }
    let observed_types: BTreeSet<CycleType> = samples.iter().filter_map(|s| s.cycle_type.clone()).collect();
    let candidates_excluded = candidates
        .groups
        .iter()
        .map(|g| CandidateEvidence {
            d: g.d,
            group: format!("GammaL_{}({}^{})", n / g.d, q, g.d),
            order: g.order.clone(),
            elements_enumerated: g.elements,
            distinct_types: g.types.len(),
            witness_absent: witness
                .as_ref()
                .and_then(|w: &FrobeniusSample| w.cycle_type.as_ref())
                .is_some_and(|t| !g.types.contains(t)),
        })
        .collect();
    let m = l.mlow().expect("not excluded");
    Ok(ClassificationResult {
        l: l.to_string(),
        key: l.key(),
        q,
        n,
        verdict: if witness.is_some() { Verdict::CertifiedGL } else { Verdict::UndeterminedWithinBudget },
        witness,
        candidates_excluded,
        samples_used: samples.len(),
        ramified_samples: samples.iter().filter(|s| s.ramified).count(),
        observed_types: observed_types.into_iter().collect(),
        order_lower_bound: order_lower_bound(&samples, q, n).ok(),
        m: Some(m),
        proposition_divisor: Some(proposition_divisor(q, n, m)),
        samples,
    })
}

/// Re-checks a witness against candidate sets enumerated from scratch.
pub fn reverify(result: &ClassificationResult, fresh: &Candidates) -> bool {
    match (&result.verdict, &result.witness) {
        (Verdict::CertifiedGL, Some(w)) => w.cycle_type.as_ref().is_some_and(|t| {
            t.total() + 1 == result.q.pow(result.n as u32) && fresh.groups.iter().all(|g| !g.types.contains(t))
        }),
        (Verdict::CertifiedGL, None) => false,
        _ => true,
    }
}

/// lcm of `q^n - 1` and the orders of all unramified sampled types.
pub fn order_lower_bound(samples: &[FrobeniusSample], q: u64, n: usize) -> Result<BigUint, GaloisError> {
    let types: Vec<&CycleType> = samples.iter().filter_map(|s| s.cycle_type.as_ref()).collect();
    if types.is_empty() {
        return Err(GaloisError::NoUsableSamples);
    }
    let singer = big_pow(q, n as u32) - BigUint::one();
    Ok(lcm_all(std::iter::once(singer).chain(types.into_iter().map(permutation_order))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryDivisor {
    pub a: usize,
    pub b: usize,
    pub degree: usize,
    pub divisor: u64,
    /// `(multiplicity, number of distinct roots)` over the splitting field.
    pub multiplicities: Vec<(usize, usize)>,
}

/// Lexicographically smallest coprime multiplicity pair of two distinct roots
/// of `f`, and `a * b * deg f`.
pub fn corollary_divisor(f: &Poly) -> Result<CorollaryDivisor, GaloisError> {
    if f.derivative().is_zero() {
        return Err(GaloisError::Inseparable);
    }
    let multiplicities: Vec<(usize, usize)> = f
        .squarefree_decomposition()?
        .into_iter()
        .map(|(part, m)| (m, part.degree().unwrap_or(0)))
        .filter(|&(_, roots)| roots > 0)
        .collect();
    let roots_of = |m: usize| multiplicities.iter().find(|e| e.0 == m).map_or(0, |e| e.1);
    let mut mults: Vec<usize> = multiplicities.iter().map(|e| e.0).collect();
    mults.sort_unstable();
    for &a in &mults {
        for &b in &mults {
            if a.gcd(&b) == 1 && (a != b || roots_of(a) >= 2) {
                let degree = f.degree().unwrap_or(0);
                return Ok(CorollaryDivisor { a, b, degree, divisor: (a * b * degree) as u64, multiplicities });
            }
        }
    }
    Err(GaloisError::NoCoprimePair)
}

#[derive(Clone, Debug, Serialize)]
pub struct PropositionReport {
    pub l: String,
    pub q: u64,
    pub n: usize,
    pub m: usize,
    #[serde(serialize_with = "ser_big")]
    pub divisor: BigUint,
    pub corollary: CorollaryDivisor,
    pub corollary_matches: bool,
    #[serde(serialize_with = "ser_big")]
    pub order_gl: BigUint,
    pub divides_gl: bool,
    /// Present when a classification certified `G = GL_n(q)`.
    pub divides_certified_group: Option<bool>,
    /// Present when sampling gave an order lower bound.
    pub compatible_with_lower_bound: Option<bool>,
    pub pass: bool,
}

/// Checks the divisor `q^m (q^m - 1)(q^n - 1)` from both directions.
pub fn proposition_check(
    l: &LinearizedPoly,
    classification: Option<&ClassificationResult>,
) -> Result<PropositionReport, GaloisError> {
    proposition_check_with(
        l,
        classification.is_some_and(|c| c.verdict == Verdict::CertifiedGL),
        classification.and_then(|c| c.order_lower_bound.as_ref()),
    )
}

/// As [`proposition_check`], from a verdict and lower bound obtained elsewhere.
pub fn proposition_check_with(
    l: &LinearizedPoly,
    certified: bool,
    lower_bound: Option<&BigUint>,
) -> Result<PropositionReport, GaloisError> {
    let m = l.mlow().ok_or(LinError::NoInteriorTerm)?;
    let q = l.field().order();
    let n = l.qdeg();
    let divisor = proposition_divisor(q, n, m);
    let corollary = corollary_divisor(&l.reduced_quotient()?)?;
    let qm = q.pow(m as u32) as usize;
    let mut pair = [corollary.a, corollary.b];
    pair.sort_unstable();
    let corollary_matches = pair == [qm - 1, qm] && BigUint::from(corollary.divisor) == divisor;
    let gl = order_gl(n, q);
    let divides_gl = divides(&divisor, &gl);
    let divides_certified_group = certified.then(|| divides(&divisor, &gl));
    let compatible_with_lower_bound = lower_bound.map(|lb| divides(&lb.lcm(&divisor), &gl));
    let pass = corollary_matches
        && divides_gl
        && divides_certified_group.unwrap_or(true)
        && compatible_with_lower_bound.unwrap_or(true);
    Ok(PropositionReport {
        l: l.to_string(),
        q,
        n,
        m,
        divisor,
        corollary,
        corollary_matches,
        order_gl: gl,
        divides_gl,
        divides_certified_group,
        compatible_with_lower_bound,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremRow {
    pub l: String,
    pub key: String,
    pub verdict: Verdict,
    pub witness_type: Option<CycleType>,
    pub witness_k: Option<usize>,
    pub witness_c: Option<String>,
    pub samples_used: usize,
    #[serde(serialize_with = "ser_big_opt")]
    pub order_lower_bound: Option<BigUint>,
    #[serde(serialize_with = "ser_big_opt")]
    pub proposition_divisor: Option<BigUint>,
    pub reverified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremTable {
    pub q: u64,
    pub n: usize,
    pub field: String,
    pub candidate_groups: Vec<CandidateEvidence>,
    pub rows: Vec<TheoremRow>,
    pub pass: bool,
}

/// The field of order `q` with its modulus drawn from `modulus-search`.
pub fn field_of_order(q: u64, seed: u64) -> Result<Arc<Field>, GaloisError> {
    let (p, k) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
    let prime = make_prime_field(p)?;
    Ok(make_extension(&prime, k as usize, None, &mut stream(seed, "modulus-search"))?)
}

/// Classifies every monic normalized `L` of `q`-degree `n` with an interior
/// term (and `X^(q^n)` itself when `include_excluded`).
pub fn verify_theorem(
    q: u64,
    n: usize,
    budget: &Budget,
    seed: u64,
    include_excluded: bool,
) -> Result<TheoremTable, GaloisError> {
    if n < 3 || n.is_multiple_of(2) || !is_prime(n as u64) {
        return Err(GaloisError::BadArity(n as u64));
    }
    let field = field_of_order(q, seed)?;
    let candidates = Candidates::new(q, n)?;
    let mut ls = LinearizedPoly::all_with_interior_term(&field, n)?;
    if include_excluded {
        ls.push(LinearizedPoly::from_interior(&field, &vec![field.zero(); n - 1])?);
    }
    let results = ls.par_iter().map(|l| classify_with(l, budget, seed, &candidates)).collect::<Result<Vec<_>, _>>()?;
    let fresh = Candidates::new(q, n)?;
    let rows: Vec<TheoremRow> = results
        .iter()
        .map(|r| TheoremRow {
            l: r.l.clone(),
            key: r.key.clone(),
            verdict: r.verdict,
            witness_type: r.witness.as_ref().and_then(|w| w.cycle_type.clone()),
            witness_k: r.witness.as_ref().map(|w| w.k),
            witness_c: r.witness.as_ref().map(|w| w.c.clone()),
            samples_used: r.samples_used,
            order_lower_bound: r.order_lower_bound.clone(),
            proposition_divisor: r.proposition_divisor.clone(),
            reverified: reverify(r, &fresh),
        })
        .collect();
    let pass = rows.iter().all(|r| r.reverified && matches!(r.verdict, Verdict::CertifiedGL | Verdict::ExcludedCase))
        && rows.iter().any(|r| r.verdict == Verdict::CertifiedGL);
    let candidate_groups = candidates
        .groups
        .iter()
        .map(|g| CandidateEvidence {
            d: g.d,
            group: format!("GammaL_{}({}^{})", n / g.d, q, g.d),
            order: g.order.clone(),
            elements_enumerated: g.elements,
            distinct_types: g.types.len(),
            witness_absent: rows.iter().all(|r| r.witness_type.as_ref().is_none_or(|t| !g.types.contains(t))),
        })
        .collect();
    Ok(TheoremTable { q, n, field: field.to_string(), candidate_groups, rows, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChebotarevRow {
    pub cycle_type: CycleType,
    pub observed: usize,
    pub frequency: f64,
    pub gl_proportion: f64,
    pub gl_realizable: bool,
}

/// Observed type frequencies next to their share of `GL_n(q)`; diagnostic only.
#[derive(Clone, Debug, Serialize)]
pub struct ChebotarevReport {
    pub samples: usize,
    pub unramified: usize,
    pub rows: Vec<ChebotarevRow>,
    pub total_variation: Option<f64>,
    pub all_realizable: bool,
    /// Points `c` of `F_q` where `L(X)/X - c` is not squarefree.
    pub ramified_points_k1: Vec<String>,
    pub ramified_fraction_k1: f64,
}

pub fn chebotarev_report(l: &LinearizedPoly, samples: &[FrobeniusSample]) -> Result<ChebotarevReport, GaloisError> {
    let unram: Vec<&CycleType> = samples.iter().filter_map(|s| s.cycle_type.as_ref()).collect();
    let field = l.field();
    let emb = Embedding::identity(field)?;
    let mut rng = stream(0, "edf");
    let mut ramified_points_k1 = Vec::new();
    for c in field.elements()? {
        if observe(l, &emb, 1, c, &mut rng)?.ramified {
            ramified_points_k1.push(field.format(c));
        }
    }
    let ramified_fraction_k1 = ramified_points_k1.len() as f64 / field.order() as f64;
    if samples.is_empty() {
        return Ok(ChebotarevReport {
            samples: 0,
            unramified: 0,
            rows: Vec::new(),
            total_variation: None,
            all_realizable: true,
            ramified_points_k1,
            ramified_fraction_k1,
        });
    }
    let gl = gl_cycle_types(l.qdeg(), field.order())?;
    let gl_total: u64 = gl.values().sum();
    let mut observed: BTreeMap<&CycleType, usize> = BTreeMap::new();
    for t in &unram {
        *observed.entry(t).or_insert(0) += 1;
    }
    let denom = unram.len().max(1) as f64;
    let rows: Vec<ChebotarevRow> = observed
        .iter()
        .map(|(t, &c)| ChebotarevRow {
            cycle_type: (*t).clone(),
            observed: c,
            frequency: c as f64 / denom,
            gl_proportion: gl.get(*t).copied().unwrap_or(0) as f64 / gl_total as f64,
            gl_realizable: gl.contains_key(*t),
        })
        .collect();
    let unseen: f64 =
        gl.iter().filter(|(t, _)| !observed.contains_key(t)).map(|(_, &c)| c as f64 / gl_total as f64).sum();
    let tv = 0.5 * (rows.iter().map(|r| (r.frequency - r.gl_proportion).abs()).sum::<f64>() + unseen);
    Ok(ChebotarevReport {
        samples: samples.len(),
        unramified: unram.len(),
        all_realizable: rows.iter().all(|r| r.gl_realizable),
        rows,
        total_variation: (!unram.is_empty()).then_some(tv),
        ramified_points_k1,
        ramified_fraction_k1,
    })
}
