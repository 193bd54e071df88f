//! Finite fields `F_p` and single-step extensions `F_{p^k} = F_p[w]/(m(w))`.
//!
//! Elements are plain `Copy` handles ([`FieldElement`]) holding the packed
//! coordinate index `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of the element in the
//! power basis `1, w, ..., w^{k-1}`. All arithmetic goes through the owning
//! [`Field`]. Prime fields use direct modular arithmetic; extensions use
//! exp/log/Zech tables built once from a primitive element, with the
//! schoolbook coordinate arithmetic kept around as the reference route.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

use crate::arith;
use crate::poly::Poly;

/// Largest field order accepted by enumeration and table-backed arithmetic.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible over F_{0}")]
    NotIrreducible(u64),
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("field of order {q} exceeds the limit {limit}")]
    TooLarge { q: u128, limit: u64 },
    #[error("no embedding of F_{from} into F_{into}")]
    EmbeddingUnavailable { from: u64, into: u64 },
    #[error("operands belong to different fields")]
    FieldMismatch,
}

/// An element of some [`Field`], identified by its packed coordinate index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    /// `exp[i] = g^i` for `0 <= i < q-1`.
    exp: Vec<u32>,
    /// Discrete log of each nonzero index; `NO_LOG` at zero.
    log: Vec<u32>,
    /// `zech[n] = log(1 + g^n)`, or `NO_LOG` when `1 + g^n = 0`.
    zech: Vec<u32>,
}

/// The finite field `F_{p^k}`.
pub struct Field {
    p: u32,
    k: usize,
    q: u64,
    /// Monic defining polynomial over `F_p`, little-endian, length `k + 1`.
    modulus: Vec<u32>,
    tables: Option<Tables>,
    /// `-1` as an element index.
    minus_one: u32,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.p, self.k, self.modulus)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.p)
        } else {
            let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            write!(f, "{}^{}/{}", self.p, self.k, coeffs.join(","))
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for Field {}

/// `F_p` for a prime `p < 2^32`.
pub fn make_prime_field(p: u64) -> Result<Arc<Field>, FieldError> {
    if p > u32::MAX as u64 || !arith::is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    Ok(Arc::new(Field { p: p as u32, k: 1, q: p, modulus: vec![0, 1], tables: None, minus_one: (p - 1) as u32 }))
}

/// `F_{p^k}` over the prime field `base`.
///
/// A supplied modulus must be monic of degree `k` and irreducible. Without
/// one, monic polynomials are drawn from `rng` until an irreducible one turns
/// up, so the result is a function of the generator state.
pub fn make_extension<R: Rng + ?Sized>(
    base: &Arc<Field>,
    k: usize,
    modulus: Option<&Poly>,
    rng: &mut R,
) -> Result<Arc<Field>, FieldError> {
    if base.k != 1 {
        return Err(FieldError::BadModulus("base field must be prime".into()));
    }
    if k == 0 {
        return Err(FieldError::BadModulus("extension degree must be positive".into()));
    }
    if k == 1 && modulus.is_none() {
        return Ok(base.clone());
    }
    let p = base.p as u64;
    let coeffs: Vec<u32> = match modulus {
        Some(m) => {
            if m.field() != base {
                return Err(FieldError::FieldMismatch);
            }
            if m.degree() != Some(k) || !m.is_monic() {
                return Err(FieldError::BadModulus(format!("modulus must be monic of degree {k}")));
            }
            if !m.is_irreducible() {
                return Err(FieldError::NotIrreducible(p));
            }
            m.coeffs().iter().map(|c| c.0).collect()
        }
        None => loop {
            let mut c: Vec<FieldElement> = (0..k).map(|_| FieldElement(rng.gen_range(0..base.p))).collect();
            c.push(FieldElement::ONE);
            let cand = Poly::new(base.clone(), c);
            if cand.is_irreducible() {
                break cand.coeffs().iter().map(|c| c.0).collect();
            }
        },
    };
    if k == 1 {
        return Ok(base.clone());
    }
    Field::from_modulus(base.p, coeffs).map(Arc::new)
}

impl Field {
    /// Builds the table-backed field for an irreducibility-checked modulus.
    fn from_modulus(p: u32, modulus: Vec<u32>) -> Result<Field, FieldError> {
        let k = modulus.len() - 1;
        let q = (p as u128).pow(k as u32);
        if q > ENUMERATION_LIMIT as u128 {
            return Err(FieldError::TooLarge { q, limit: ENUMERATION_LIMIT });
        }
        let mut field = Field { p, k, q: q as u64, modulus, tables: None, minus_one: p - 1 };
        field.tables = Some(field.build_tables());
        Ok(field)
    }

    fn build_tables(&self) -> Tables {
        let order = self.q - 1;
        let primes = arith::prime_divisors(order);
        let generator =
            (2..self.q as u32).find(|&g| primes.iter().all(|&r| self.reference_pow(g, order / r) != 1)).unwrap_or(1);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![NO_LOG; self.q as usize];
        let mut cur = 1u32;
        for i in 0..order as u32 {
            exp.push(cur);
            log[cur as usize] = i;
            cur = self.reference_mul(cur, generator);
        }
        let zech = exp
            .iter()
            .map(|&e| {
                let s = self.reference_add(e, 1);
                if s == 0 {
                    NO_LOG
                } else {
                    log[s as usize]
                }
            })
            .collect();
        Tables { exp, log, zech }
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    /// Defining polynomial coefficients over `F_p`; `None` for a prime field.
    pub fn modulus(&self) -> Option<&[u32]> {
        (self.k > 1).then_some(self.modulus.as_slice())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The class of `w` (the modulus root); `1` generates nothing new in `F_p`.
    pub fn generator(&self) -> FieldElement {
        if self.k == 1 {
            FieldElement::ONE
        } else {
            FieldElement(self.p)
        }
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn element(&self, index: u64) -> Result<FieldElement, FieldError> {
        if index >= self.q {
            return Err(FieldError::BadModulus(format!("index {index} out of range for a field of order {}", self.q)));
        }
        Ok(FieldElement(index as u32))
    }

    pub fn coords(&self, x: FieldElement) -> Vec<u32> {
        let mut v = x.0;
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// Packs little-endian coordinates (reduced mod `p`); missing ones are zero.
    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement, FieldError> {
        if coords.len() > self.k {
            return Err(FieldError::BadModulus(format!("{} coordinates for a degree-{} field", coords.len(), self.k)));
        }
        let mut idx = 0u64;
        for &c in coords.iter().rev() {
            idx = idx * self.p as u64 + (c % self.p) as u64;
        }
        Ok(FieldElement(idx as u32))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.q) as u32)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.q) as u32)
    }

    /// All elements in increasing index order.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElement>, FieldError> {
        if self.q > ENUMERATION_LIMIT {
            return Err(FieldError::TooLarge { q: self.q as u128, limit: ENUMERATION_LIMIT });
        }
        Ok((0..self.q as u32).map(FieldElement))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            let s = a.0 as u64 + b.0 as u64;
            let p = self.p as u64;
            return FieldElement(if s >= p { s - p } else { s } as u32);
        }
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let t = self.tables();
        let n = (t.exp.len()) as u32;
        let la = t.log[a.0 as usize];
        let lb = t.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = t.zech[d as usize];
        if z == NO_LOG {
            return FieldElement::ZERO;
        }
        let e = la as u64 + z as u64;
        FieldElement(t.exp[(e % n as u64) as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.0 == 0 || self.p == 2 {
            return a;
        }
        if self.k == 1 {
            return FieldElement(self.p - a.0);
        }
        self.mul(a, FieldElement(self.minus_one))
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.k == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let t = self.tables();
        let n = t.exp.len() as u64;
        let e = t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64;
        FieldElement(t.exp[(if e >= n { e - n } else { e }) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        if self.k == 1 {
            return Ok(self.pow(a, self.q - 2));
        }
        let t = self.tables();
        let n = t.exp.len() as u32;
        let l = t.log[a.0 as usize];
        Ok(FieldElement(t.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        if let Some(t) = &self.tables {
            let n = t.exp.len() as u128;
            let l = t.log[a.0 as usize] as u128;
            return FieldElement(t.exp[((l * e as u128) % n) as usize]);
        }
        let p = self.p as u64;
        let (mut base, mut e, mut acc) = (a.0 as u64, e, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        FieldElement(acc as u32)
    }

    pub fn pow_big(&self, a: FieldElement, e: &BigUint) -> FieldElement {
        if e.is_zero() {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let r = (e % BigUint::from(self.q - 1)).to_u64().unwrap_or(0);
        self.pow(a, r)
    }

    /// `x^(p^levels)`; the `q`-Frobenius is `levels = k`.
    pub fn frobenius(&self, x: FieldElement, levels: usize) -> FieldElement {
        let mut y = x;
        for _ in 0..(levels % self.k) {
            y = self.pow(y, self.p as u64);
        }
        y
    }

    /// Least `e >= 1` with `x^e = 1`.
    pub fn element_order(&self, x: FieldElement) -> Result<u64, FieldError> {
        if x.0 == 0 {
            return Err(FieldError::ZeroElement);
        }
        let mut e = self.q - 1;
        for r in arith::prime_divisors(self.q - 1) {
            while e.is_multiple_of(r) && self.pow(x, e / r) == FieldElement::ONE {
                e /= r;
            }
        }
        Ok(e)
    }

    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, it: I) -> FieldElement {
        it.into_iter().fold(FieldElement::ZERO, |acc, x| self.add(acc, x))
    }

    /// Human-readable form: an integer in `F_p`, `c0+c1*w+...` otherwise.
    pub fn format(&self, x: FieldElement) -> String {
        if self.k == 1 {
            return x.0.to_string();
        }
        let terms: Vec<String> = self
            .coords(x)
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(i, c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "w".to_string(),
                (1, c) => format!("{c}*w"),
                (i, 1) => format!("w^{i}"),
                (i, c) => format!("{c}*w^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    fn tables(&self) -> &Tables {
        self.tables.as_ref().expect("extension fields carry tables")
    }

    // Reference route: schoolbook arithmetic on coordinate vectors.

    pub(crate) fn reference_add(&self, a: u32, b: u32) -> u32 {
        let (ca, cb) = (self.coords(FieldElement(a)), self.coords(FieldElement(b)));
        let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.from_coords(&s).expect("k coordinates").0
    }

    pub(crate) fn reference_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let (ca, cb) = (self.coords(FieldElement(a)), self.coords(FieldElement(b)));
        let mut prod = vec![0u64; 2 * self.k];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for d in (self.k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &m) in self.modulus[..self.k].iter().enumerate() {
                let idx = d - self.k + i;
                prod[idx] = (prod[idx] + c * (p - m as u64)) % p;
            }
        }
        let coords: Vec<u32> = prod[..self.k].iter().map(|&c| c as u32).collect();
        self.from_coords(&coords).expect("k coordinates").0
    }

    fn reference_pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.reference_mul(acc, base);
            }
            base = self.reference_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Field embedding `F_q -> F_{q^k}` sending the source generator `w` to the
/// first root (in target enumeration order) of the source modulus.
#[derive(Clone)]
pub struct Embedding {
    source: Arc<Field>,
    target: Arc<Field>,
    images: Vec<FieldElement>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({:?} -> {:?})", self.source, self.target)
    }
}

impl Embedding {
    pub fn new(source: &Arc<Field>, target: &Arc<Field>) -> Result<Embedding, FieldError> {
        let unavailable = || FieldError::EmbeddingUnavailable { from: source.q, into: target.q };
        if source.p != target.p || !target.k.is_multiple_of(source.k) {
            return Err(unavailable());
        }
        if source.q > ENUMERATION_LIMIT {
            return Err(FieldError::TooLarge { q: source.q as u128, limit: ENUMERATION_LIMIT });
        }
        let images = if source.k == 1 {
            (0..source.q as u32).map(FieldElement).collect()
        } else {
            let m: Vec<FieldElement> = source.modulus.iter().map(|&c| FieldElement(c)).collect();
            let root = target
                .elements()?
                .find(|&x| {
                    let v = m.iter().rev().fold(FieldElement::ZERO, |acc, &c| target.add(target.mul(acc, x), c));
                    v.is_zero()
                })
                .ok_or_else(unavailable)?;
            let powers: Vec<FieldElement> = (0..source.k)
                .scan(FieldElement::ONE, |acc, _| {
                    let cur = *acc;
                    *acc = target.mul(*acc, root);
                    Some(cur)
                })
                .collect();
            source
                .elements()?
                .map(|x| {
                    let cs = source.coords(x);
                    target.sum(cs.iter().zip(&powers).map(|(&c, &pw)| target.mul(FieldElement(c), pw)))
                })
                .collect()
        };
        Ok(Embedding { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(field: &Arc<Field>) -> Result<Embedding, FieldError> {
        Embedding::new(field, field)
    }

    pub fn source(&self) -> &Arc<Field> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Field> {
        &self.target
    }

    pub fn apply(&self, x: FieldElement) -> FieldElement {
        self.images[x.0 as usize]
    }

    /// Maps a polynomial over the source field coefficient-wise.
    pub fn apply_poly(&self, f: &Poly) -> Result<Poly, FieldError> {
        if **f.field() != *self.source {
            return Err(FieldError::FieldMismatch);
        }
        Ok(Poly::new(self.target.clone(), f.coeffs().iter().map(|&c| self.apply(c)).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn f4() -> Arc<Field> {
        let f2 = make_prime_field(2).unwrap();
        let m = Poly::from_ints(&f2, &[1, 1, 1]);
        make_extension(&f2, 2, Some(&m), &mut stream(0, "t")).unwrap()
    }

    #[test]
    fn prime_fields() {
        assert_eq!(make_prime_field(2).unwrap().order(), 2);
        assert_eq!(make_prime_field(3).unwrap().order(), 3);
        assert_eq!(make_prime_field(4).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(make_prime_field(1).unwrap_err(), FieldError::NotPrime(1));
    }

    #[test]
    fn extension_moduli() {
        let f2 = make_prime_field(2).unwrap();
        let bad = Poly::from_ints(&f2, &[1, 0, 1]);
        assert_eq!(make_extension(&f2, 2, Some(&bad), &mut stream(0, "t")).unwrap_err(), FieldError::NotIrreducible(2));
        let f3 = make_prime_field(3).unwrap();
        let f9 = make_extension(&f3, 2, None, &mut stream(7, "modulus-search")).unwrap();
        assert_eq!(f9.order(), 9);
        let m = f9.modulus().unwrap();
        // no root in F_3
        for x in 0..3u64 {
            let v = (m[0] as u64 + m[1] as u64 * x + m[2] as u64 * x * x) % 3;
            assert_ne!(v, 0);
        }
        let again = make_extension(&f3, 2, None, &mut stream(7, "modulus-search")).unwrap();
        assert_eq!(*again, *f9);
    }

    #[test]
    fn small_arithmetic() {
        let f4 = f4();
        let w = f4.generator();
        let w1 = f4.add(w, f4.one());
        assert_eq!(f4.mul(w, w1), f4.one());
        assert_eq!(f4.frobenius(w, 1), w1);
        assert_eq!(f4.frobenius(w, 2), w);
        let f3 = make_prime_field(3).unwrap();
        assert_eq!(f3.inv(f3.from_int(2)).unwrap(), f3.from_int(2));
        assert_eq!(f3.inv(f3.zero()).unwrap_err(), FieldError::DivisionByZero);
        let f5 = make_prime_field(5).unwrap();
        assert_eq!(f5.pow(f5.from_int(2), 4), f5.one());
        assert_eq!(f5.element_order(f5.from_int(2)).unwrap(), 4);
        assert_eq!(f5.element_order(f5.one()).unwrap(), 1);
        assert_eq!(f5.element_order(f5.zero()).unwrap_err(), FieldError::ZeroElement);
    }

    #[test]
    fn f8_orders() {
        let f2 = make_prime_field(2).unwrap();
        let f8 = make_extension(&f2, 3, None, &mut stream(1, "modulus-search")).unwrap();
        for x in f8.elements().unwrap().skip(2) {
            assert_eq!(f8.element_order(x).unwrap(), 7);
        }
    }

    #[test]
    fn enumeration() {
        let f2 = make_prime_field(2).unwrap();
        let all: Vec<_> = f2.elements().unwrap().collect();
        assert_eq!(all, vec![FieldElement::ZERO, FieldElement::ONE]);
        let f4 = f4();
        let all: Vec<_> = f4.elements().unwrap().collect();
        assert_eq!(all.len(), 4);
        assert!(all[0].is_zero());
        let f3 = make_prime_field(3).unwrap();
        let f27 = make_extension(&f3, 3, None, &mut stream(2, "m")).unwrap();
        assert_eq!(f27.elements().unwrap().count(), 27);
    }

    #[test]
    fn too_large() {
        let f2 = make_prime_field(2).unwrap();
        let err = make_extension(&f2, 21, None, &mut stream(0, "m")).unwrap_err();
        assert!(matches!(err, FieldError::TooLarge { .. }));
        let big = make_prime_field(4_294_967_291).unwrap();
        assert!(matches!(big.elements().err(), Some(FieldError::TooLarge { .. })));
        let x = big.from_int(123_456_789);
        assert_eq!(big.mul(x, big.inv(x).unwrap()), big.one());
    }

    #[test]
    fn formatting() {
        let f4 = f4();
        assert_eq!(f4.format(f4.zero()), "0");
        assert_eq!(f4.format(f4.add(f4.generator(), f4.one())), "1+w");
        assert_eq!(f4.to_string(), "2^2/1,1,1");
    }

    fn fields_up_to(limit: u64) -> Vec<Arc<Field>> {
        let mut out = Vec::new();
        for q in 2..=limit {
            if let Some((p, k)) = arith::prime_power(q) {
                let base = make_prime_field(p).unwrap();
                out.push(make_extension(&base, k as usize, None, &mut stream(q, "m")).unwrap());
            }
        }
        out
    }

    #[test]
    fn tables_agree_with_reference_arithmetic() {
        for f in fields_up_to(81).into_iter().filter(|f| f.degree() > 1) {
            for a in f.elements().unwrap() {
                for b in f.elements().unwrap() {
                    assert_eq!(f.add(a, b).0, f.reference_add(a.0, b.0), "{f:?}");
                    assert_eq!(f.mul(a, b).0, f.reference_mul(a.0, b.0), "{f:?}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in fields_up_to(81) {
            let all: Vec<_> = f.elements().unwrap().collect();
            for &a in &all {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for &b in &all {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    // frobenius is a ring endomorphism
                    assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
                    assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
                }
            }
            // associativity and distributivity on a stride through the triples
            for (i, &a) in all.iter().enumerate() {
                for &b in &all {
                    let c = all[(i * 7 + b.0 as usize) % all.len()];
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn element_orders_divide_group_order() {
        for f in fields_up_to(512) {
            for x in f.elements().unwrap().skip(1) {
                let e = f.element_order(x).unwrap();
                assert_eq!((f.order() - 1) % e, 0);
                assert_eq!(f.pow(x, e), f.one());
            }
        }
    }

    #[test]
    fn frobenius_on_f9_is_an_involution() {
        let f3 = make_prime_field(3).unwrap();
        let f9 = make_extension(&f3, 2, None, &mut stream(4, "m")).unwrap();
        let mut rng = stream(4, "x");
        for _ in 0..20 {
            let x = f9.random(&mut rng);
            assert_eq!(f9.frobenius(f9.frobenius(x, 1), 1), x);
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let f2 = make_prime_field(2).unwrap();
        let f4 = f4();
        let f16 = make_extension(&f2, 4, None, &mut stream(3, "m")).unwrap();
        let e = Embedding::new(&f4, &f16).unwrap();
        for x in f4.elements().unwrap() {
            for y in f4.elements().unwrap() {
                assert_eq!(e.apply(f4.add(x, y)), f16.add(e.apply(x), e.apply(y)));
                assert_eq!(e.apply(f4.mul(x, y)), f16.mul(e.apply(x), e.apply(y)));
            }
        }
        let f8 = make_extension(&f2, 3, None, &mut stream(3, "m")).unwrap();
        assert!(matches!(Embedding::new(&f4, &f8).unwrap_err(), FieldError::EmbeddingUnavailable { .. }));
    }
}
