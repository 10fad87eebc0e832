//! Exact arithmetic in GF(p^r) for small orders (q <= 2^16).
//!
//! Elements are encoded as integers in `[0, q)` whose base-p digits
//! `d_0..d_{r-1}` are the coefficients of `1, α, α², …`, where α is the
//! residue class of the modulus variable. Multiplication and inversion go
//! through precomputed log/antilog tables so the search hot loop pays O(1)
//! per operation.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// An element of a finite field, stored as its canonical integer encoding.
///
/// Elements are plain values; the owning [`Field`] performs all arithmetic.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Element(u16);

impl Element {
    pub fn value(self) -> u16 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A finite field GF(p^r) with a fixed irreducible modulus and table-backed
/// arithmetic. Immutable after construction and safe to share across threads.
pub struct Field {
    p: u64,
    r: u32,
    q: u64,
    /// Monic modulus over GF(p), little-endian coefficients, degree r.
    /// For prime fields this is the polynomial x.
    modulus: Vec<u64>,
    primitive: Element,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl Field {
    /// Builds GF(p^r). When `modulus` is omitted a default is chosen: the
    /// lexicographically smallest irreducible monic polynomial of degree r
    /// (which yields x³+x+1 for F8, x⁴+x+1 for F16 and x⁷+x+1 for F128).
    pub fn new(p: u64, r: u32, modulus: Option<&[u64]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r < 1 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..r {
            q = q.checked_mul(p).ok_or(Error::FieldTooLarge(u64::MAX))?;
            if q > 1 << 16 {
                return Err(Error::FieldTooLarge(q));
            }
        }

        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                if m.len() != r as usize + 1 || *m.last().unwrap() != 1 {
                    return Err(Error::BadModulus { expected: r as usize });
                }
                if !poly_is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                m
            }
            None => default_modulus(p, r),
        };

        let mut field = Field {
            p,
            r,
            q,
            modulus,
            primitive: Element(0),
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.primitive = field.find_primitive();
        field.build_tables();
        Ok(field)
    }

    /// Convenience constructor returning a shared handle.
    pub fn shared(p: u64, r: u32, modulus: Option<&[u64]>) -> Result<Arc<Field>> {
        Ok(Arc::new(Field::new(p, r, modulus)?))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Field order q = p^r.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// The smallest element (by encoding) of multiplicative order q-1.
    pub fn primitive(&self) -> Element {
        self.primitive
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Element {
        Element(0)
    }

    pub fn one(&self) -> Element {
        Element(1)
    }

    /// The residue class of the modulus variable; only meaningful for r >= 2.
    pub fn alpha(&self) -> Element {
        Element(self.p as u16)
    }

    /// Checked conversion from an integer encoding.
    pub fn element(&self, value: u64) -> Result<Element> {
        if value < self.q {
            Ok(Element(value as u16))
        } else {
            Err(Error::InvalidParameter(format!(
                "value {value} out of range for field of order {}",
                self.q
            )))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.q as u16).map(Element)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Element> {
        (1..self.q as u16).map(Element)
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        if self.p == 2 {
            return Element(a.0 ^ b.0);
        }
        if self.r == 1 {
            return Element(((a.0 as u64 + b.0 as u64) % self.p) as u16);
        }
        let mut out = 0u64;
        let mut pw = 1u64;
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        for _ in 0..self.r {
            out += ((x + y) % self.p) * pw;
            x /= self.p;
            y /= self.p;
            pw *= self.p;
        }
        Element(out as u16)
    }

    pub fn neg(&self, a: Element) -> Element {
        if self.p == 2 {
            return a;
        }
        if self.r == 1 {
            return Element(((self.p - a.0 as u64) % self.p) as u16);
        }
        let mut out = 0u64;
        let mut pw = 1u64;
        let mut x = a.0 as u64;
        for _ in 0..self.r {
            out += ((self.p - x % self.p) % self.p) * pw;
            x /= self.p;
            pw *= self.p;
        }
        Element(out as u16)
    }

    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        if a.0 == 0 || b.0 == 0 {
            return Element(0);
        }
        Element(self.exp[self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize])
    }

    pub fn inv(&self, a: Element) -> Result<Element> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let m = (self.q - 1) as usize;
        Ok(Element(self.exp[m - self.log[a.0 as usize] as usize]))
    }

    pub fn div(&self, a: Element, b: Element) -> Result<Element> {
        if b.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if a.0 == 0 {
            return Ok(Element(0));
        }
        let m = (self.q - 1) as usize;
        Ok(Element(
            self.exp[self.log[a.0 as usize] as usize + m - self.log[b.0 as usize] as usize],
        ))
    }

    /// Exponentiation; the exponent is reduced mod q-1 for nonzero bases.
    /// pow(0, e) is 0 for e > 0 and 1 for e = 0; negative exponents of zero
    /// are a division by zero.
    pub fn pow(&self, a: Element, e: i64) -> Result<Element> {
        if a.0 == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(Element(0)),
                std::cmp::Ordering::Equal => Ok(Element(1)),
                std::cmp::Ordering::Less => Err(Error::DivisionByZero),
            };
        }
        let m = (self.q - 1) as i128;
        let le = (self.log[a.0 as usize] as i128 * e as i128).rem_euclid(m);
        Ok(Element(self.exp[le as usize]))
    }

    /// α^e for e >= 0 (primitive-element power for prime fields).
    pub fn alpha_pow(&self, e: u32) -> Element {
        let base = if self.r > 1 { self.alpha() } else { self.primitive };
        self.pow(base, e as i64).unwrap()
    }

    /// Digits of the element in base p (coefficients of 1, α, α², …).
    pub fn digits(&self, a: Element) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.r as usize);
        let mut x = a.0 as u64;
        for _ in 0..self.r {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    /// Renders an element as a polynomial in α, e.g. "α^3+α+1".
    pub fn alpha_notation(&self, a: Element) -> String {
        if self.r == 1 {
            return a.0.to_string();
        }
        if a.0 == 0 {
            return "0".to_string();
        }
        let digits = self.digits(a);
        let mut parts = Vec::new();
        for (i, &d) in digits.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let coeff = if d == 1 || i == 0 { String::new() } else { format!("{d}") };
            let term = match i {
                0 => format!("{d}"),
                1 => format!("{coeff}α"),
                _ => format!("{coeff}α^{i}"),
            };
            parts.push(term);
        }
        parts.join("+")
    }

    fn ensure_same(&self, other: &Field) -> Result<()> {
        if std::ptr::eq(self, other) || self == other {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    /// Errors unless the two handles denote the same field.
    pub fn check_compatible(&self, other: &Field) -> Result<()> {
        self.ensure_same(other)
    }

    /// Multiplication without tables; used to bootstrap the tables and as an
    /// independent oracle in tests.
    pub fn mul_raw(&self, a: Element, b: Element) -> Element {
        if self.r == 1 {
            return Element(((a.0 as u64 * b.0 as u64) % self.p) as u16);
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; da.len() + db.len() - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let rem = poly_rem(&prod, &self.modulus, self.p);
        let mut value = 0u64;
        for &c in rem.iter().rev() {
            value = value * self.p + c;
        }
        Element(value as u16)
    }

    fn pow_raw(&self, a: Element, mut e: u64) -> Element {
        let mut base = a;
        let mut acc = Element(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_primitive(&self) -> Element {
        let order = self.q - 1;
        let primes = prime_factors(order);
        for v in 1..self.q {
            let cand = Element(v as u16);
            if primes.iter().all(|&f| self.pow_raw(cand, order / f).0 != 1) {
                return cand;
            }
        }
        unreachable!("every finite field has a primitive element");
    }

    fn build_tables(&mut self) {
        let m = (self.q - 1) as usize;
        let mut exp = vec![0u16; 2 * m.max(1)];
        let mut log = vec![0u16; self.q as usize];
        let mut acc = Element(1);
        for (i, slot) in exp.iter_mut().enumerate().take(m) {
            *slot = acc.0;
            log[acc.0 as usize] = i as u16;
            acc = self.mul_raw(acc, self.primitive);
        }
        debug_assert_eq!(acc.0, 1, "primitive element order mismatch");
        for i in m..2 * m.max(1) {
            exp[i] = exp[i - m];
        }
        self.exp = exp;
        self.log = log;
    }
}

/// Text form: "13" for prime fields, "p^r/modulus-packed-base-p" otherwise,
/// e.g. "2^4/19" for GF(16) with modulus x⁴+x+1.
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 1 {
            write!(f, "{}", self.p)
        } else {
            let mut packed: u64 = 0;
            for &c in self.modulus.iter().rev() {
                packed = packed * self.p + c;
            }
            write!(f, "{}^{}/{}", self.p, self.r, packed)
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let (base, modulus) = match s.split_once('/') {
            Some((b, m)) => (b, Some(m)),
            None => (s, None),
        };
        let (p, r) = match base.split_once('^') {
            Some((p, r)) => (
                p.parse::<u64>().map_err(|_| bad_field(s))?,
                r.parse::<u32>().map_err(|_| bad_field(s))?,
            ),
            None => (base.parse::<u64>().map_err(|_| bad_field(s))?, 1),
        };
        let coeffs = match modulus {
            Some(m) => {
                let mut packed = m.parse::<u64>().map_err(|_| bad_field(s))?;
                let mut digits = Vec::new();
                while packed > 0 {
                    digits.push(packed % p);
                    packed /= p;
                }
                Some(digits)
            }
            None => None,
        };
        Field::new(p, r, coeffs.as_deref())
    }
}

fn bad_field(s: &str) -> Error {
    Error::InvalidParameter(format!("cannot parse field spec {s:?}"))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of a by m over GF(p); m monic, coefficients little-endian.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    let mut rem: Vec<u64> = a.to_vec();
    while rem.len() > dm {
        let lead = *rem.last().unwrap() % p;
        let shift = rem.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let idx = shift + i;
                rem[idx] = (rem[idx] + (p - (lead * mc) % p)) % p;
            }
        }
        rem.pop();
    }
    rem.resize(dm, 0);
    rem
}

/// Irreducibility by trial division against all monic polynomials of degree
/// at most deg(m)/2.
fn poly_is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let mut count = 1u64;
        for _ in 0..d {
            count *= p;
        }
        for packed in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut x = packed;
            for _ in 0..d {
                div.push(x % p);
                x /= p;
            }
            div.push(1);
            let rem = poly_rem(m, &div, p);
            if rem.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest irreducible monic polynomial of degree r,
/// ordering candidates by their packed base-p integer value.
fn default_modulus(p: u64, r: u32) -> Vec<u64> {
    if r == 1 {
        return vec![0, 1];
    }
    let mut count = 1u64;
    for _ in 0..r {
        count *= p;
    }
    for packed in 0..count {
        let mut m = Vec::with_capacity(r as usize + 1);
        let mut x = packed;
        for _ in 0..r {
            m.push(x % p);
            x /= p;
        }
        m.push(1);
        if poly_is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist for every degree");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, r: u32) -> Field {
        Field::new(p, r, None).unwrap()
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(f(13, 1).primitive().value(), 2);
        assert_eq!(f(2, 1).primitive().value(), 1);
    }

    #[test]
    fn default_moduli_match_known_polynomials() {
        // packed integer forms: x³+x+1 -> 11, x⁴+x+1 -> 19, x⁷+x+1 -> 131
        assert_eq!(f(2, 3).to_string(), "2^3/11");
        assert_eq!(f(2, 4).to_string(), "2^4/19");
        assert_eq!(f(2, 7).to_string(), "2^7/131");
        assert_eq!(f(2, 2).to_string(), "2^2/7");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(Field::new(4, 1, None), Err(Error::NotPrime(4))));
        assert!(matches!(Field::new(2, 17, None), Err(Error::FieldTooLarge(_))));
        // x² + 1 = (x+1)² over GF(2)
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus { p: 2 })
        ));
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 1])),
            Err(Error::BadModulus { expected: 2 })
        ));
    }

    #[test]
    fn f13_arithmetic() {
        let field = f(13, 1);
        let two = field.element(2).unwrap();
        let seven = field.element(7).unwrap();
        assert_eq!(field.mul(two, seven).value(), 1);
        assert_eq!(field.inv(two).unwrap().value(), 7);
    }

    #[test]
    fn f16_alpha_powers() {
        let field = f(2, 4);
        let alpha = field.alpha();
        // α⁴ = α + 1 under x⁴+x+1
        assert_eq!(field.pow(alpha, 4).unwrap().value(), 3);
        assert_eq!(field.pow(alpha, 15).unwrap().value(), 1);
        assert_eq!(field.mul(field.element(2).unwrap(), field.element(8).unwrap()).value(), 3);
        // full power table against repeated raw multiplication
        let mut acc = field.one();
        for e in 0..15 {
            assert_eq!(field.pow(alpha, e).unwrap(), acc);
            acc = field.mul_raw(acc, alpha);
        }
    }

    #[test]
    fn tables_agree_with_raw_multiplication() {
        for (p, r) in [(2, 4), (3, 2), (5, 1), (7, 1), (2, 7)] {
            let field = f(p, r);
            for a in field.elements() {
                for b in field.elements() {
                    assert_eq!(field.mul(a, b), field.mul_raw(a, b), "GF({})", field.q());
                }
            }
        }
    }

    #[test]
    fn field_axioms() {
        for (p, r) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (13, 1), (2, 4)] {
            let field = f(p, r);
            let q = field.q();
            let els: Vec<Element> = field.elements().collect();
            for &a in &els {
                assert_eq!(field.add(a, field.neg(a)).value(), 0);
                if !a.is_zero() {
                    let ai = field.inv(a).unwrap();
                    assert_eq!(field.mul(a, ai).value(), 1);
                }
                for &b in &els {
                    assert_eq!(field.add(a, b), field.add(b, a));
                    assert_eq!(field.mul(a, b), field.mul(b, a));
                }
            }
            // distributivity: exhaustive for q <= 64, sampled beyond
            let stride = if q <= 64 { 1 } else { 5 };
            for a in (0..q).step_by(stride) {
                for b in (0..q).step_by(stride) {
                    for c in (0..q).step_by(stride) {
                        let (a, b, c) = (Element(a as u16), Element(b as u16), Element(c as u16));
                        assert_eq!(
                            field.mul(a, field.add(b, c)),
                            field.add(field.mul(a, b), field.mul(a, c))
                        );
                        assert_eq!(
                            field.add(field.add(a, b), c),
                            field.add(a, field.add(b, c))
                        );
                        assert_eq!(
                            field.mul(field.mul(a, b), c),
                            field.mul(a, field.mul(b, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_generates_all_nonzero_elements() {
        for (p, r) in [(5, 1), (13, 1), (2, 4), (3, 2), (2, 7)] {
            let field = f(p, r);
            let mut seen = vec![false; field.q() as usize];
            let mut acc = field.one();
            for _ in 0..field.q() - 1 {
                assert!(!seen[acc.value() as usize]);
                seen[acc.value() as usize] = true;
                acc = field.mul(acc, field.primitive());
            }
            assert!(seen.iter().skip(1).all(|&s| s));
        }
    }

    #[test]
    fn pow_edge_cases() {
        let field = f(5, 1);
        let zero = field.zero();
        assert_eq!(field.pow(zero, 3).unwrap().value(), 0);
        assert_eq!(field.pow(zero, 0).unwrap().value(), 1);
        assert!(field.pow(zero, -1).is_err());
        let three = field.element(3).unwrap();
        assert_eq!(field.pow(three, -1).unwrap(), field.inv(three).unwrap());
        assert_eq!(field.pow(three, 4).unwrap().value(), 1);
    }

    #[test]
    fn parse_and_render() {
        for s in ["13", "2^4/19", "2^3/11", "3^2/10", "2^7/131"] {
            let field: Field = s.parse().unwrap();
            assert_eq!(field.to_string(), s);
        }
        let f16: Field = "2^4".parse().unwrap();
        assert_eq!(f16.to_string(), "2^4/19");
        assert!("nope".parse::<Field>().is_err());
    }

    #[test]
    fn alpha_rendering() {
        let field = f(2, 4);
        assert_eq!(field.alpha_notation(field.element(13).unwrap()), "α^3+α^2+1");
        assert_eq!(field.alpha_notation(field.zero()), "0");
        assert_eq!(field.alpha_notation(field.one()), "1");
        let f9 = f(3, 2);
        assert_eq!(f9.alpha_notation(f9.element(7).unwrap()), "2α+1");
    }
}
