//! Truncated power series `E[[z]] / (z^N)`, polynomials over them, and the
//! local factorization behind the coprime-multiplicity divisibility argument:
//!
//! * shift the chosen roots of `f` and `g` to 0 and write
//!   `f(X + alpha) = X^a u(X)`, `g(y + beta) = y^b v(y)`;
//! * pick `s*b - r*a = 1`, set `y = z^s`, `X -> X z^r`, and form
//!   `H(X) = X^a u(X z^r) - z v(z^s)`;
//! * lift `H = A * U` from `A = X^a mod z` by the quadratic Newton iteration;
//! * confirm `A` is Eisenstein in `z`, and cross-check with the Newton polygon
//!   of `f(X) - g(y)` over `E((y))`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::ff::{make_extension, make_prime_field, Embedding, Field, FieldElement, FieldError};
use crate::poly::{Poly, PolyError};

/// Default truncation order for lifts.
pub const DEFAULT_TRUNCATION: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series with valuation > 0 is not a unit")]
    NotAUnit,
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("the point is not a root")]
    NotARoot,
    #[error("the factors of H mod z are not coprime")]
    NotCoprimeModZ,
    #[error("precision too low: {0}")]
    PrecisionTooLow(String),
    #[error("polynomial is not monic in X")]
    NotMonic,
    #[error("invalid problem: {0}")]
    Invalid(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `sum_{j < N} c_j z^j + O(z^N)`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: Arc<Field>,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(z^{})", self.format("z"), self.trunc())
    }
}

impl TruncatedSeries {
    pub fn new(field: &Arc<Field>, mut coeffs: Vec<FieldElement>, trunc: usize) -> Self {
        coeffs.resize(trunc, FieldElement::ZERO);
        TruncatedSeries { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Arc<Field>, trunc: usize) -> Self {
        Self::new(field, Vec::new(), trunc)
    }

    pub fn constant(field: &Arc<Field>, c: FieldElement, trunc: usize) -> Self {
        Self::new(field, vec![c], trunc)
    }

    pub fn one(field: &Arc<Field>, trunc: usize) -> Self {
        Self::constant(field, FieldElement::ONE, trunc)
    }

    /// `c z^e`, or zero when `e >= trunc`.
    pub fn monomial(field: &Arc<Field>, c: FieldElement, e: usize, trunc: usize) -> Self {
        let mut s = Self::zero(field, trunc);
        if e < trunc {
            s.coeffs[e] = c;
        }
        s
    }

    /// A polynomial in `z`, truncated.
    pub fn from_poly(p: &Poly, trunc: usize) -> Self {
        let c = p.coeffs().iter().copied().take(trunc).collect();
        Self::new(p.field(), c, trunc)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, j: usize) -> FieldElement {
        self.coeffs.get(j).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Least `j` with `c_j != 0`; `None` means "at least `N`".
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.trunc().min(o.trunc());
        let f = &self.field;
        let c = (0..n).map(|j| f.add(self.coeffs[j], o.coeffs[j])).collect();
        Self::new(f, c, n)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.trunc().min(o.trunc());
        let f = &self.field;
        let c = (0..n).map(|j| f.sub(self.coeffs[j], o.coeffs[j])).collect();
        Self::new(f, c, n)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect(), self.trunc())
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect(), self.trunc())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.trunc().min(o.trunc());
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; n];
        for (i, &a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Self::new(f, out, n)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let f = &self.field;
        let n = self.trunc();
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(SeriesError::NotAUnit);
        }
        let c0_inv = f.inv(c0)?;
        let mut out = vec![FieldElement::ZERO; n];
        for j in 0..n {
            let mut acc = if j == 0 { FieldElement::ONE } else { FieldElement::ZERO };
            for i in 1..=j {
                acc = f.sub(acc, f.mul(self.coeffs[i], out[j - i]));
            }
            out[j] = f.mul(acc, c0_inv);
        }
        Ok(Self::new(f, out, n))
    }

    /// Substitutes `z -> z^s`.
    pub fn compose_with_z_power(&self, s: usize) -> Self {
        let n = self.trunc();
        let mut out = vec![FieldElement::ZERO; n];
        for (j, &c) in self.coeffs.iter().enumerate() {
            if j * s < n {
                out[j * s] = c;
            }
        }
        Self::new(&self.field, out, n)
    }

    /// Multiplication by `z^e`.
    pub fn shift(&self, e: usize) -> Self {
        let n = self.trunc();
        let mut out = vec![FieldElement::ZERO; n];
        if e < n {
            out[e..].copy_from_slice(&self.coeffs[..n - e]);
        }
        Self::new(&self.field, out, n)
    }

    pub fn format(&self, var: &str) -> String {
        let p = Poly::new(self.field.clone(), self.coeffs.clone());
        p.format(var)
    }
}

/// Polynomial in `X` with [`TruncatedSeries`] coefficients of a common precision.
#[derive(Clone, PartialEq, Eq)]
pub struct SeriesPoly {
    field: Arc<Field>,
    trunc: usize,
    coeffs: Vec<TruncatedSeries>,
}

impl fmt::Debug for SeriesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeriesPoly({:?})", self.coeffs)
    }
}

impl SeriesPoly {
    pub fn new(field: &Arc<Field>, trunc: usize, mut coeffs: Vec<TruncatedSeries>) -> Self {
        for c in coeffs.iter_mut() {
            if c.trunc() != trunc {
                c.coeffs.resize(trunc, FieldElement::ZERO);
            }
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SeriesPoly { field: field.clone(), trunc, coeffs }
    }

    pub fn zero(field: &Arc<Field>, trunc: usize) -> Self {
        Self::new(field, trunc, Vec::new())
    }

    /// Lifts a polynomial over `E` to constant series coefficients.
    pub fn from_poly(p: &Poly, trunc: usize) -> Self {
        let f = p.field();
        Self::new(f, trunc, p.coeffs().iter().map(|&c| TruncatedSeries::constant(f, c, trunc)).collect())
    }

    /// `X^a` exactly.
    pub fn x_power(field: &Arc<Field>, a: usize, trunc: usize) -> Self {
        let mut c = vec![TruncatedSeries::zero(field, trunc); a];
        c.push(TruncatedSeries::one(field, trunc));
        Self::new(field, trunc, c)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[TruncatedSeries] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> TruncatedSeries {
        self.coeffs.get(i).cloned().unwrap_or_else(|| TruncatedSeries::zero(&self.field, self.trunc))
    }

    /// Degree in `X`; `None` for the zero polynomial (at this precision).
    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == TruncatedSeries::one(&self.field, self.trunc))
    }

    /// Minimum coefficient valuation; `None` when everything vanishes mod `z^N`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.valuation()).min()
    }

    /// Reduction modulo `z`.
    pub fn mod_z(&self) -> Poly {
        Poly::new(self.field.clone(), self.coeffs.iter().map(|c| c.coeff(0)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(&self.field, self.trunc, (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(&self.field, self.trunc, (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.field, self.trunc);
        }
        let mut out = vec![TruncatedSeries::zero(&self.field, self.trunc); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(&self.field, self.trunc, out)
    }

    /// Division with remainder by a polynomial monic in `X`.
    pub fn divmod_monic(&self, divisor: &Self) -> Result<(Self, Self), SeriesError> {
        if !divisor.is_monic() {
            return Err(SeriesError::NotMonic);
        }
        let db = divisor.x_degree().expect("monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(&self.field, self.trunc), self.clone()));
        }
        let mut quo = vec![TruncatedSeries::zero(&self.field, self.trunc); rem.len() - db];
        for i in (0..quo.len()).rev() {
            let c = rem[i + db].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..=db {
                rem[i + j] = rem[i + j].sub(&c.mul(&divisor.coeffs[j]));
            }
            quo[i] = c;
        }
        rem.truncate(db);
        Ok((Self::new(&self.field, self.trunc, quo), Self::new(&self.field, self.trunc, rem)))
    }

    pub fn rem_monic(&self, divisor: &Self) -> Result<Self, SeriesError> {
        Ok(self.divmod_monic(divisor)?.1)
    }

    /// One entry per `X`-power: the coefficient series written in `var`.
    pub fn format_coeffs(&self, var: &str) -> Vec<String> {
        self.coeffs.iter().map(|c| c.format(var)).collect()
    }
}

/// The minimal positive pair `(r, s)` with `s*b - r*a = 1` (smallest `s` wins).
pub fn bezout_rs(a: u64, b: u64) -> Result<(u64, u64), SeriesError> {
    if a == 0 || b == 0 || a.gcd(&b) != 1 {
        return Err(SeriesError::NotCoprime(a, b));
    }
    // s = b^{-1} mod a, taken in [1, a]
    let ext = (b as i64).extended_gcd(&(a as i64));
    let mut s = ext.x.rem_euclid(a as i64) as u64;
    if s == 0 {
        s = a;
    }
    while (s * b - 1) / a < 1 {
        s += a;
    }
    let r = (s * b - 1) / a;
    assert_eq!(s * b - r * a, 1, "Bezout postcondition");
    Ok((r, s))
}

/// Writes `f(X + alpha) = X^a u(X)` with `u(0) != 0`.
pub fn shift_roots(f: &Poly, alpha: FieldElement) -> Result<(usize, Poly), SeriesError> {
    if f.is_zero() || !f.eval(alpha).is_zero() {
        return Err(SeriesError::NotARoot);
    }
    let shifted = f.taylor_shift(alpha);
    let a = shifted.coeffs().iter().position(|c| !c.is_zero()).expect("nonzero");
    let u = Poly::new(f.field().clone(), shifted.coeffs()[a..].to_vec());
    Ok((a, u))
}

/// Splitting field of `f` over its coefficient field, as an extension of the
/// prime field of degree `k0 * lcm(irreducible factor degrees)`.
pub fn splitting_field<R: Rng + ?Sized>(f: &Poly, rng: &mut R) -> Result<(Arc<Field>, Embedding), SeriesError> {
    let base = f.field();
    let fac = f.factor(rng)?;
    let l = fac.factors.iter().map(|(g, _)| g.degree().unwrap_or(1)).fold(1usize, |acc, d| acc.lcm(&d));
    if l == 1 {
        return Ok((base.clone(), Embedding::identity(base)?));
    }
    let prime = make_prime_field(base.characteristic())?;
    let big = make_extension(&prime, base.degree() * l, None, rng)?;
    let emb = Embedding::new(base, &big)?;
    Ok((big, emb))
}

/// Distinct roots with multiplicities, in increasing element order.
pub fn roots_with_multiplicity<R: Rng + ?Sized>(
    f: &Poly,
    rng: &mut R,
) -> Result<Vec<(FieldElement, usize)>, SeriesError> {
    let field = f.field();
    let mut out: Vec<(FieldElement, usize)> = f
        .factor(rng)?
        .factors
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, m)| (field.neg(g.coeff(0)), m))
        .collect();
    out.sort();
    Ok(out)
}

/// Data of the local factorization: `f(X + alpha) = X^a u(X)`,
/// `g(y + beta) = y^b v(y)` over `E`, and `s*b - r*a = 1`.
#[derive(Clone, Debug)]
pub struct HenselProblem {
    /// Coefficient field `K` of the original `f`, `g`.
    pub base: Arc<Field>,
    /// Field `E` the lift runs over.
    pub field: Arc<Field>,
    pub f: Poly,
    pub g: Poly,
    pub a: usize,
    pub u: Poly,
    pub alpha: FieldElement,
    pub b: usize,
    pub v: Poly,
    pub beta: FieldElement,
    pub r: u64,
    pub s: u64,
}

impl HenselProblem {
    /// `f`, `g` over `E` with roots `alpha`, `beta` in `E`.
    pub fn new(f: &Poly, g: &Poly, alpha: FieldElement, beta: FieldElement) -> Result<Self, SeriesError> {
        if f.field() != g.field() {
            return Err(PolyError::FieldMismatch.into());
        }
        let (a, u) = shift_roots(f, alpha)?;
        let (b, v) = shift_roots(g, beta)?;
        let (r, s) = bezout_rs(a as u64, b as u64)?;
        let prob = HenselProblem {
            base: f.field().clone(),
            field: f.field().clone(),
            f: f.clone(),
            g: g.clone(),
            a,
            u,
            alpha,
            b,
            v,
            beta,
            r,
            s,
        };
        prob.check()?;
        Ok(prob)
    }

    /// Re-verifies the invariants as polynomial identities.
    pub fn check(&self) -> Result<(), SeriesError> {
        let e = &self.field;
        if self.a.gcd(&self.b) != 1 || self.s * self.b as u64 - self.r * self.a as u64 != 1 {
            return Err(SeriesError::Invalid("multiplicities/Bezout pair".into()));
        }
        if self.u.coeff(0).is_zero() || self.v.coeff(0).is_zero() {
            return Err(SeriesError::Invalid("u(0) or v(0) vanishes".into()));
        }
        if self.f.taylor_shift(self.alpha) != self.u.shift(self.a)
            || self.g.taylor_shift(self.beta) != self.v.shift(self.b)
        {
            return Err(SeriesError::Invalid("shifted forms do not match".into()));
        }
        debug_assert!(Arc::ptr_eq(e, self.f.field()) || **e == **self.f.field());
        Ok(())
    }

    /// Materializes the common splitting field `E` of `f * g` over their
    /// field `K` and sets up the problem there.
    ///
    /// With `alpha`/`beta` given (as elements of `K`) those roots are used.
    /// Otherwise the coprime multiplicity pair `(a, b)` that is largest in
    /// lexicographic order is chosen, ties going to the smallest roots.
    pub fn over_splitting_field<R: Rng + ?Sized>(
        f: &Poly,
        g: &Poly,
        alpha: Option<FieldElement>,
        beta: Option<FieldElement>,
        rng: &mut R,
    ) -> Result<Self, SeriesError> {
        if f.field() != g.field() {
            return Err(PolyError::FieldMismatch.into());
        }
        if f.degree().unwrap_or(0) == 0 || g.degree().unwrap_or(0) == 0 {
            return Err(SeriesError::Invalid("f and g must be non-constant".into()));
        }
        let (_, emb) = splitting_field(&(f * g), rng)?;
        let fe = emb.apply_poly(f)?;
        let ge = emb.apply_poly(g)?;
        let pick =
            |given: Option<FieldElement>, p: &Poly, rng: &mut R| -> Result<Vec<(FieldElement, usize)>, SeriesError> {
                match given {
                    Some(x) => {
                        let x = emb.apply(x);
                        let (m, _) = shift_roots(p, x)?;
                        Ok(vec![(x, m)])
                    }
                    None => roots_with_multiplicity(p, rng),
                }
            };
        let fr = pick(alpha, &fe, rng)?;
        let gr = pick(beta, &ge, rng)?;
        let mut best: Option<(usize, usize, FieldElement, FieldElement)> = None;
        for &(x, a) in &fr {
            for &(y, b) in &gr {
                if a.gcd(&b) != 1 {
                    continue;
                }
                if best.is_none_or(|(ba, bb, _, _)| (a, b) > (ba, bb)) {
                    best = Some((a, b, x, y));
                }
            }
        }
        let (a, b, x, y) = best.ok_or_else(|| {
            let am = fr.first().map_or(0, |r| r.1) as u64;
            let bm = gr.first().map_or(0, |r| r.1) as u64;
            SeriesError::NotCoprime(am, bm)
        })?;
        let mut prob = HenselProblem::new(&fe, &ge, x, y)?;
        prob.base = f.field().clone();
        debug_assert_eq!((prob.a, prob.b), (a, b));
        Ok(prob)
    }

    /// `deg f`.
    pub fn n(&self) -> usize {
        self.f.degree().unwrap_or(0)
    }
}

/// `H(X) = X^a u(X z^r) - z v(z^s)` modulo `z^N`.
pub fn build_h(prob: &HenselProblem, trunc: usize) -> SeriesPoly {
    let e = &prob.field;
    let mut coeffs = vec![TruncatedSeries::zero(e, trunc); prob.a];
    for (i, &ui) in prob.u.coeffs().iter().enumerate() {
        coeffs.push(TruncatedSeries::monomial(e, ui, prob.r as usize * i, trunc));
    }
    let zv = TruncatedSeries::from_poly(&prob.v, trunc).compose_with_z_power(prob.s as usize).shift(1);
    coeffs[0] = coeffs[0].sub(&zv);
    SeriesPoly::new(e, trunc, coeffs)
}

/// Result of [`hensel_lift`].
#[derive(Clone, Debug)]
pub struct HenselLift {
    /// Monic of `X`-degree `a`, `A = X^a mod z`.
    pub a: SeriesPoly,
    pub u: SeriesPoly,
    pub steps: usize,
    /// Valuation of `H - A U` before the first step and after each step
    /// (`None`: vanishes modulo `z^N`).
    pub residual_valuations: Vec<Option<usize>>,
}

/// Lifts `H = X^a W(X) mod z` (with `W(0) != 0`) to `H = A U mod z^N`.
///
/// `A` is refined by `A += (S R) mod A` with `R = H mod A`, where `S` tracks
/// `U^{-1} mod A` through its own Newton update `S = S (2 - U S) mod A`;
/// both updates double the precision per step.
pub fn hensel_lift(h: &SeriesPoly, a: usize, trunc: usize) -> Result<HenselLift, SeriesError> {
    let e = h.field().clone();
    let n = trunc.min(h.trunc());
    let h = SeriesPoly::new(&e, n, h.coeffs().to_vec());
    let h0 = h.mod_z();
    if (0..a).any(|i| !h0.coeff(i).is_zero()) || h0.coeff(a).is_zero() {
        return Err(SeriesError::NotCoprimeModZ);
    }
    // S = W^{-1} mod X^a, with W = (H mod z) / X^a
    let w = TruncatedSeries::new(&e, h0.coeffs()[a..].to_vec(), a.max(1)).inv()?;
    let s_coeffs = w.coeffs().iter().take(a).map(|&c| TruncatedSeries::constant(&e, c, n)).collect();
    let mut s = SeriesPoly::new(&e, n, s_coeffs);
    let mut big_a = SeriesPoly::x_power(&e, a, n);
    let (mut u, mut r) = h.divmod_monic(&big_a)?;
    let mut residual_valuations = vec![r.valuation()];
    let two = SeriesPoly::from_poly(&Poly::constant(&e, e.from_int(2)), n);
    let mut precision = 1;
    let mut steps = 0;
    while precision < n {
        let delta = s.mul(&r).rem_monic(&big_a)?;
        big_a = big_a.add(&delta);
        (u, r) = h.divmod_monic(&big_a)?;
        s = s.mul(&two.sub(&u.mul(&s))).rem_monic(&big_a)?;
        precision *= 2;
        steps += 1;
        residual_valuations.push(r.valuation());
    }
    if !r.is_zero() {
        return Err(SeriesError::PrecisionTooLow("residual did not vanish".into()));
    }
    Ok(HenselLift { a: big_a, u, steps, residual_valuations })
}

/// Valuation profile of a candidate Eisenstein polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EisensteinReport {
    /// `z`-valuation of each non-leading coefficient; `None` = at least `N`.
    pub valuations: Vec<Option<usize>>,
    pub constant_valuation: usize,
    pub is_eisenstein: bool,
}

/// Monic `A` with all lower coefficients divisible by `z` and constant term of
/// valuation exactly 1.
pub fn eisenstein_check(a: &SeriesPoly) -> Result<EisensteinReport, SeriesError> {
    if !a.is_monic() {
        return Err(SeriesError::NotMonic);
    }
    let deg = a.x_degree().expect("monic");
    let valuations: Vec<Option<usize>> = (0..deg).map(|i| a.coeff(i).valuation()).collect();
    let constant_valuation = match valuations.first() {
        Some(Some(v)) => *v,
        Some(None) => return Err(SeriesError::PrecisionTooLow("constant term vanishes at this truncation".into())),
        None => return Err(SeriesError::Invalid("degree-0 polynomial".into())),
    };
    let is_eisenstein = constant_valuation == 1 && valuations.iter().all(|v| v.is_none_or(|v| v >= 1));
    Ok(EisensteinReport { valuations, constant_valuation, is_eisenstein })
}

/// One edge of a Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: (usize, i64),
    pub end: (usize, i64),
    pub slope: Ratio<i64>,
    pub length: usize,
}

/// Lower convex hull of `(i, v_i)` over the finite valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub points: Vec<(usize, Option<i64>)>,
    pub vertices: Vec<(usize, i64)>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// `valuations[i]` belongs to the `X^i` coefficient; `None` is infinite.
    pub fn from_valuations(valuations: &[Option<i64>]) -> Result<Self, SeriesError> {
        let pts: Vec<(usize, i64)> = valuations.iter().enumerate().filter_map(|(i, v)| v.map(|v| (i, v))).collect();
        if pts.is_empty() {
            return Err(SeriesError::PrecisionTooLow("every coefficient vanishes at this truncation".into()));
        }
        let mut hull: Vec<(usize, i64)> = Vec::new();
        for &pt in &pts {
            while hull.len() >= 2 {
                let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                let cross = (a.0 as i64 - o.0 as i64) * (pt.1 - o.1) - (a.1 - o.1) * (pt.0 as i64 - o.0 as i64);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let segments = hull
            .windows(2)
            .map(|w| Segment {
                start: w[0],
                end: w[1],
                slope: Ratio::new(w[1].1 - w[0].1, (w[1].0 - w[0].0) as i64),
                length: w[1].0 - w[0].0,
            })
            .collect();
        Ok(NewtonPolygon { points: valuations.iter().copied().enumerate().collect(), vertices: hull, segments })
    }

    /// Root valuations `-slope`, each with its multiplicity (segment length).
    pub fn root_valuations(&self) -> Vec<(Ratio<i64>, usize)> {
        self.segments.iter().map(|s| (-s.slope, s.length)).collect()
    }
}

/// Newton polygon from the `z`-valuations of the coefficients.
pub fn newton_polygon(f: &SeriesPoly) -> Result<NewtonPolygon, SeriesError> {
    let vals: Vec<Option<i64>> = f.coeffs().iter().map(|c| c.valuation().map(|v| v as i64)).collect();
    NewtonPolygon::from_valuations(&vals)
}

/// `f(X + alpha) - g(y + beta)` with `y` as the series variable.
pub fn remark_polynomial(prob: &HenselProblem, trunc: usize) -> SeriesPoly {
    let e = &prob.field;
    let mut p = SeriesPoly::from_poly(&prob.f.taylor_shift(prob.alpha), trunc);
    let gy = TruncatedSeries::from_poly(&prob.g.taylor_shift(prob.beta), trunc);
    let mut coeffs = p.coeffs.clone();
    if coeffs.is_empty() {
        coeffs.push(TruncatedSeries::zero(e, trunc));
    }
    coeffs[0] = coeffs[0].sub(&gy);
    p = SeriesPoly::new(e, trunc, coeffs);
    p
}

/// Both routes run on one problem, in serializable form.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub field: String,
    pub f: String,
    pub g: String,
    pub alpha: String,
    pub beta: String,
    pub a: usize,
    pub b: usize,
    pub n: usize,
    pub r: u64,
    pub s: u64,
    pub truncation: usize,
    pub h: Vec<String>,
    pub factor_a: Vec<String>,
    pub factor_u: Vec<String>,
    pub deg_a: usize,
    pub deg_u: usize,
    pub product_matches: bool,
    pub reduces_to_x_power: bool,
    pub residual_valuations: Vec<Option<usize>>,
    pub precision_doubles: bool,
    pub eisenstein: EisensteinReport,
    pub polygon_vertices: Vec<(usize, i64)>,
    pub polygon_slopes: Vec<String>,
    pub polygon_matches: bool,
    pub roots_at_slope: usize,
    pub pass: bool,
}

/// Runs `build_h`, `hensel_lift`, `eisenstein_check` and the Newton polygon
/// on `prob`, checking every expected property.
pub fn run_lemma(prob: &HenselProblem, trunc: usize) -> Result<LemmaReport, SeriesError> {
    let e = &prob.field;
    let h = build_h(prob, trunc);
    let lift = hensel_lift(&h, prob.a, trunc)?;
    let product_matches = lift.a.mul(&lift.u) == h;
    let reduces_to_x_power = lift.a.mod_z() == Poly::monomial(e, e.one(), prob.a);
    let precision_doubles =
        lift.residual_valuations.iter().enumerate().all(|(t, v)| v.is_none_or(|v| v >= (1usize << t).min(trunc)));
    let eisenstein = eisenstein_check(&lift.a)?;
    let polygon = newton_polygon(&remark_polynomial(prob, trunc))?;
    let n = prob.n();
    let expected: Vec<(usize, i64)> =
        if prob.a < n { vec![(0, prob.b as i64), (prob.a, 0), (n, 0)] } else { vec![(0, prob.b as i64), (prob.a, 0)] };
    let polygon_matches = polygon.vertices == expected;
    let target = Ratio::new(prob.b as i64, prob.a as i64);
    let roots_at_slope = polygon.root_valuations().iter().filter(|(v, _)| *v == target).map(|(_, m)| *m).sum();
    let deg_a = lift.a.x_degree().unwrap_or(0);
    let deg_u = lift.u.x_degree().unwrap_or(0);
    let pass = product_matches
        && reduces_to_x_power
        && precision_doubles
        && eisenstein.is_eisenstein
        && polygon_matches
        && deg_a == prob.a
        && deg_a + deg_u == h.x_degree().unwrap_or(0)
        && roots_at_slope == deg_a;
    Ok(LemmaReport {
        field: e.to_string(),
        f: prob.f.format("X"),
        g: prob.g.format("y"),
        alpha: e.format(prob.alpha),
        beta: e.format(prob.beta),
        a: prob.a,
        b: prob.b,
        n,
        r: prob.r,
        s: prob.s,
        truncation: trunc,
        h: h.format_coeffs("z"),
        factor_a: lift.a.format_coeffs("z"),
        factor_u: lift.u.format_coeffs("z"),
        deg_a,
        deg_u,
        product_matches,
        reduces_to_x_power,
        residual_valuations: lift.residual_valuations,
        precision_doubles,
        eisenstein,
        polygon_vertices: polygon.vertices.clone(),
        polygon_slopes: polygon.segments.iter().map(|s| s.slope.to_string()).collect(),
        polygon_matches,
        roots_at_slope,
        pass,
    })
}

/// Orders of the fields random instances are drawn from.
pub const INSTANCE_FIELDS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

/// A reproducible problem `f = (X - alpha)^a u0`, `g = (y - beta)^b v0` over
/// a field of order <= 9 with `gcd(a, b) = 1`, `1 <= deg u0 <= 2`,
/// `deg v0 <= 2`, `u0(alpha) != 0`, `v0(beta) != 0`.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<HenselProblem, SeriesError> {
    let q = INSTANCE_FIELDS[rng.gen_range(0..INSTANCE_FIELDS.len())];
    let (p, k) = crate::arith::prime_power(q).expect("prime power");
    let prime = make_prime_field(p)?;
    let field = make_extension(&prime, k as usize, None, rng)?;
    let (a, b) = loop {
        let a = rng.gen_range(1..=4usize);
        let b = rng.gen_range(1..=4usize);
        if a.gcd(&b) == 1 {
            break (a, b);
        }
    };
    let alpha = field.random(rng);
    let beta = field.random(rng);
    let cofactor = |root: FieldElement, min_deg: usize, rng: &mut R| loop {
        let d = rng.gen_range(min_deg..=2);
        let mut c: Vec<FieldElement> = (0..d).map(|_| field.random(rng)).collect();
        c.push(field.random_nonzero(rng));
        let p = Poly::new(field.clone(), c);
        if !p.eval(root).is_zero() {
            break p;
        }
    };
    let u0 = cofactor(alpha, 1, rng);
    let v0 = cofactor(beta, 0, rng);
    let lin = |root: FieldElement| Poly::new(field.clone(), vec![field.neg(root), field.one()]);
    let f = &lin(alpha).pow(a as u64) * &u0;
    let g = &lin(beta).pow(b as u64) * &v0;
    HenselProblem::over_splitting_field(&f, &g, Some(alpha), Some(beta), rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn ints(f: &Arc<Field>, c: &[i64]) -> Poly {
        Poly::from_ints(f, c)
    }

    fn series(f: &Arc<Field>, c: &[i64], n: usize) -> TruncatedSeries {
        TruncatedSeries::from_poly(&ints(f, c), n)
    }

    #[test]
    fn series_examples() {
        let f2 = make_prime_field(2).unwrap();
        assert_eq!(series(&f2, &[1, 1], 4).inv().unwrap(), series(&f2, &[1, 1, 1, 1], 4));
        assert_eq!(series(&f2, &[0, 1], 3).mul(&series(&f2, &[0, 1], 3)), series(&f2, &[0, 0, 1], 3));
        assert_eq!(series(&f2, &[1, 1], 5).compose_with_z_power(2), series(&f2, &[1, 0, 1], 5));
        assert_eq!(series(&f2, &[0, 1], 4).inv().unwrap_err(), SeriesError::NotAUnit);
        // mixed truncation takes the minimum
        assert_eq!(series(&f2, &[1], 3).add(&series(&f2, &[1], 5)).trunc(), 3);
        assert_eq!(series(&f2, &[0, 0, 1], 4).valuation(), Some(2));
        assert_eq!(TruncatedSeries::zero(&f2, 4).valuation(), None);
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout_rs(1, 2).unwrap(), (1, 1));
        assert_eq!(bezout_rs(3, 2).unwrap(), (1, 2));
        assert_eq!(bezout_rs(2, 2).unwrap_err(), SeriesError::NotCoprime(2, 2));
        assert_eq!(bezout_rs(1, 1).unwrap(), (1, 2));
        for a in 1..30u64 {
            for b in 1..30u64 {
                if a.gcd(&b) != 1 {
                    continue;
                }
                let (r, s) = bezout_rs(a, b).unwrap();
                assert!(r >= 1 && s >= 1);
                assert_eq!(s * b - r * a, 1);
                // no smaller positive s works
                assert!((1..s).all(|t| t * b <= a || (t * b - 1) % a != 0));
            }
        }
    }

    #[test]
    fn shift_examples() {
        let f3 = make_prime_field(3).unwrap();
        let f = &ints(&f3, &[-1, 1]).pow(2) * &ints(&f3, &[0, 1]);
        assert_eq!(shift_roots(&f, f3.one()).unwrap(), (2, ints(&f3, &[1, 1])));
        assert_eq!(shift_roots(&ints(&f3, &[0, 0, 0, 1]), f3.zero()).unwrap(), (3, ints(&f3, &[1])));
        let f2 = make_prime_field(2).unwrap();
        assert_eq!(shift_roots(&ints(&f2, &[1, 0, 1]), f2.one()).unwrap(), (2, ints(&f2, &[1])));
        assert_eq!(shift_roots(&ints(&f2, &[1, 0, 1]), f2.zero()).unwrap_err(), SeriesError::NotARoot);
    }

    #[test]
    fn build_h_examples() {
        let f5 = make_prime_field(5).unwrap();
        let prob = HenselProblem::new(&ints(&f5, &[0, 1]), &ints(&f5, &[0, 0, 1]), f5.zero(), f5.zero()).unwrap();
        assert_eq!((prob.r, prob.s), (1, 1));
        let h = build_h(&prob, 8);
        // X - z
        assert_eq!(h.coeffs(), &[series(&f5, &[0, -1], 8), series(&f5, &[1], 8)]);

        let f3 = make_prime_field(3).unwrap();
        let f = &ints(&f3, &[0, 0, 1]) * &ints(&f3, &[1, 1]);
        let prob = HenselProblem::new(&f, &ints(&f3, &[0, 0, 0, 1]), f3.zero(), f3.zero()).unwrap();
        assert_eq!((prob.a, prob.b, prob.r, prob.s), (2, 3, 1, 1));
        let h = build_h(&prob, 16);
        // X^2 (X z + 1) - z
        assert_eq!(
            h.coeffs(),
            &[
                series(&f3, &[0, -1], 16),
                TruncatedSeries::zero(&f3, 16),
                series(&f3, &[1], 16),
                series(&f3, &[0, 1], 16)
            ]
        );
        assert_eq!(h.coeff(0).valuation(), Some(1));
    }

    #[test]
    fn lift_examples() {
        let f5 = make_prime_field(5).unwrap();
        let prob = HenselProblem::new(&ints(&f5, &[0, 1]), &ints(&f5, &[0, 0, 1]), f5.zero(), f5.zero()).unwrap();
        let h = build_h(&prob, 8);
        let lift = hensel_lift(&h, 1, 8).unwrap();
        assert_eq!(lift.a, h);
        assert_eq!(lift.u, SeriesPoly::x_power(&f5, 0, 8));

        let f3 = make_prime_field(3).unwrap();
        let f = &ints(&f3, &[0, 0, 1]) * &ints(&f3, &[1, 1]);
        let prob = HenselProblem::new(&f, &ints(&f3, &[0, 0, 0, 1]), f3.zero(), f3.zero()).unwrap();
        let h = build_h(&prob, 16);
        let lift = hensel_lift(&h, 2, 16).unwrap();
        assert_eq!(lift.a.mul(&lift.u), h);
        assert_eq!(lift.a.mod_z(), ints(&f3, &[0, 0, 1]));
        assert_eq!(lift.a.x_degree(), Some(2));
        assert_eq!(lift.u.x_degree(), Some(1));
        for (t, v) in lift.residual_valuations.iter().enumerate() {
            assert!(v.is_none_or(|v| v >= 1 << t));
        }
        assert!(eisenstein_check(&lift.a).unwrap().is_eisenstein);

        // X^a - z is already Eisenstein
        for a in 1..5 {
            let mut c = vec![series(&f3, &[0, -1], 8)];
            c.extend((1..a).map(|_| TruncatedSeries::zero(&f3, 8)));
            c.push(series(&f3, &[1], 8));
            let h = SeriesPoly::new(&f3, 8, c);
            let lift = hensel_lift(&h, a, 8).unwrap();
            assert_eq!(lift.a, h);
        }

        // H mod z = X^2 (X) shares the root 0 with X^a for a = 2
        let bad = SeriesPoly::from_poly(&ints(&f3, &[0, 0, 0, 1]), 8);
        assert_eq!(hensel_lift(&bad, 2, 8).unwrap_err(), SeriesError::NotCoprimeModZ);
    }

    #[test]
    fn eisenstein_examples() {
        let f2 = make_prime_field(2).unwrap();
        let x3_z = SeriesPoly::new(
            &f2,
            8,
            vec![
                series(&f2, &[0, 1], 8),
                TruncatedSeries::zero(&f2, 8),
                TruncatedSeries::zero(&f2, 8),
                series(&f2, &[1], 8),
            ],
        );
        assert!(eisenstein_check(&x3_z).unwrap().is_eisenstein);
        let x2_z2 = SeriesPoly::new(
            &f2,
            8,
            vec![series(&f2, &[0, 0, 1], 8), TruncatedSeries::zero(&f2, 8), series(&f2, &[1], 8)],
        );
        let rep = eisenstein_check(&x2_z2).unwrap();
        assert!(!rep.is_eisenstein);
        assert_eq!(rep.constant_valuation, 2);
        let x2 = SeriesPoly::x_power(&f2, 2, 8);
        assert!(matches!(eisenstein_check(&x2), Err(SeriesError::PrecisionTooLow(_))));
    }

    #[test]
    fn polygon_examples() {
        let f5 = make_prime_field(5).unwrap();
        let f = &ints(&f5, &[0, 0, 1]) * &ints(&f5, &[1, 1]);
        let prob = HenselProblem::new(&f, &ints(&f5, &[0, 0, 0, 1]), f5.zero(), f5.zero()).unwrap();
        let poly = newton_polygon(&remark_polynomial(&prob, 8)).unwrap();
        assert_eq!(poly.vertices, vec![(0, 3), (2, 0), (3, 0)]);
        assert_eq!(poly.segments[0].slope, Ratio::new(-3, 2));
        assert_eq!(poly.segments[0].length, 2);

        let prob = HenselProblem::new(&ints(&f5, &[0, 1]), &ints(&f5, &[0, 1]), f5.zero(), f5.zero()).unwrap();
        let poly = newton_polygon(&remark_polynomial(&prob, 8)).unwrap();
        assert_eq!(poly.vertices, vec![(0, 1), (1, 0)]);
        assert_eq!(poly.segments.len(), 1);

        // collinear points are not vertices; infinite valuations are skipped
        let poly = NewtonPolygon::from_valuations(&[Some(4), None, Some(2), Some(1), Some(0), Some(3)]).unwrap();
        assert_eq!(poly.vertices, vec![(0, 4), (4, 0), (5, 3)]);
        let lengths: usize = poly.segments.iter().map(|s| s.length).sum();
        assert_eq!(lengths, 5);
        assert!(poly.segments.windows(2).all(|w| w[0].slope < w[1].slope));
        assert!(NewtonPolygon::from_valuations(&[None, None]).is_err());
    }

    #[test]
    fn splitting_field_and_auto_roots() {
        let f3 = make_prime_field(3).unwrap();
        let mut rng = stream(3, "t");
        let f = &ints(&f3, &[0, 0, 1]) * &ints(&f3, &[1, 1]);
        let g = ints(&f3, &[0, 0, 0, 1]);
        let prob = HenselProblem::over_splitting_field(&f, &g, None, None, &mut rng).unwrap();
        assert_eq!((prob.a, prob.b), (2, 3));
        assert_eq!(prob.field.order(), 3);
        // X^2 + 1 is irreducible over F_3, so E = F_9
        let f = &ints(&f3, &[1, 0, 1]) * &ints(&f3, &[0, 0, 1]);
        let prob = HenselProblem::over_splitting_field(&f, &g, None, None, &mut rng).unwrap();
        assert_eq!(prob.field.order(), 9);
        let rep = run_lemma(&prob, DEFAULT_TRUNCATION).unwrap();
        assert!(rep.pass, "{rep:?}");
        let g2 = ints(&f3, &[0, 0, 1]);
        let sq = ints(&f3, &[0, 0, 0, 0, 1]);
        assert!(matches!(
            HenselProblem::over_splitting_field(&sq, &g2, None, None, &mut rng),
            Err(SeriesError::NotCoprime(..))
        ));
    }

    #[test]
    fn random_instances_pass() {
        let mut rng = stream(9, "hensel");
        for _ in 0..10 {
            let prob = random_instance(&mut rng).unwrap();
            let rep = run_lemma(&prob, DEFAULT_TRUNCATION).unwrap();
            assert!(rep.pass, "{rep:?}");
            assert_eq!(rep.polygon_vertices.len(), 3);
        }
    }
}
