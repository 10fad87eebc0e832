//! Univariate polynomials over a finite field. Only used on cold paths
//! (left-primeness, encoding), so the representation favors clarity:
//! little-endian coefficients with trailing zeros trimmed.

use crate::error::{Error, Result};
use crate::gf::{Element, Field};
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    coeffs: Vec<Element>,
    field: Arc<Field>,
}

impl Poly {
    pub fn new(field: Arc<Field>, coeffs: Vec<Element>) -> Poly {
        let mut p = Poly { coeffs, field };
        p.trim();
        p
    }

    pub fn zero(field: Arc<Field>) -> Poly {
        Poly { coeffs: Vec::new(), field }
    }

    pub fn constant(field: Arc<Field>, c: Element) -> Poly {
        Poly::new(field, vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn coeff(&self, i: usize) -> Element {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(self.field.clone(), self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn scale(&self, s: Element) -> Poly {
        let f = &self.field;
        Poly::new(self.field.clone(), self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = divisor.degree().unwrap();
        let lead_inv = f.inv(divisor.coeff(dd))?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = f.mul(rem[rem.len() - 1], lead_inv);
            if !factor.is_zero() {
                quot[k] = factor;
                for i in 0..=dd {
                    let delta = f.mul(factor, divisor.coeff(i));
                    rem[k + i] = f.sub(rem[k + i], delta);
                }
            }
            rem.pop();
        }
        Ok((Poly::new(self.field.clone(), quot), Poly::new(self.field.clone(), rem)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("divisor nonzero");
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.coeff(a.degree().unwrap());
        let inv = self.field.inv(lead).expect("leading coefficient nonzero");
        a.scale(inv)
    }

    pub fn eval(&self, x: Element) -> Element {
        let f = &self.field;
        let mut acc = f.zero();
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: &Arc<Field>, coeffs: &[u64]) -> Poly {
        Poly::new(
            field.clone(),
            coeffs.iter().map(|&c| field.element(c).unwrap()).collect(),
        )
    }

    #[test]
    fn divmod_roundtrip() {
        let f = Field::shared(7, 1, None).unwrap();
        let a = poly(&f, &[3, 0, 1, 5, 2]);
        let b = poly(&f, &[1, 4, 1]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_coprime_is_constant() {
        let f = Field::shared(5, 1, None).unwrap();
        // z^2+1 and z+1 share no root over F5 (z=-1 gives 2)
        let a = poly(&f, &[1, 0, 1]);
        let b = poly(&f, &[1, 1]);
        assert!(a.gcd(&b).is_nonzero_constant());
        // common factor z+1
        let c = a.mul(&b);
        let d = poly(&f, &[2, 2]);
        assert_eq!(c.gcd(&d), poly(&f, &[1, 1]));
    }

    #[test]
    fn eval_matches_expansion() {
        let f = Field::shared(13, 1, None).unwrap();
        let p = poly(&f, &[2, 12, 1, 1]);
        for v in 0..13 {
            let x = f.element(v).unwrap();
            let mut expected = f.zero();
            let mut xp = f.one();
            for &c in p.coeffs() {
                expected = f.add(expected, f.mul(c, xp));
                xp = f.mul(xp, x);
            }
            assert_eq!(p.eval(x), expected);
        }
    }
}
