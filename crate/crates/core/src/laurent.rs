//! Sparse Laurent polynomials in `v` with arbitrary-precision integer
//! coefficients. The Hecke parameter `u = v^2` lives on even exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::modp::PrimeField;

/// Element of `Z[v, v^-1]`. Terms are sorted by exponent with no zero
/// coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(e, c)],
            }
        }
    }

    pub fn v_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// `u^e = v^{2e}`.
    pub fn u_pow(e: i32) -> Self {
        Self::monomial(1, 2 * e)
    }

    /// Builds from `(exponent of v, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut acc = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_insert_with(BigInt::zero) += c.into();
        }
        Self::from_map(acc)
    }

    /// Builds from `(exponent of u, coefficient)` pairs.
    pub fn from_u_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i32, C)>) -> Self {
        Self::from_terms(terms.into_iter().map(|(e, c)| (2 * e, c)))
    }

    fn from_map(map: BTreeMap<i32, BigInt>) -> Self {
        Self {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(i32, BigInt)] {
        &self.terms
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Whether every exponent is even, i.e. the element lies in `Z[u, u^-1]`.
    pub fn is_in_u(&self) -> bool {
        self.terms.iter().all(|(e, _)| e % 2 == 0)
    }

    /// Whether the element lies in `Z[u]` (even, nonnegative exponents).
    pub fn is_u_polynomial(&self) -> bool {
        self.terms.iter().all(|(e, _)| e % 2 == 0 && *e >= 0)
    }

    /// Degree in `u`, for elements of `Z[u]`.
    pub fn u_degree(&self) -> Option<i32> {
        self.max_exp().map(|e| e.div_euclid(2))
    }

    /// The bar involution `v^n -> v^-n`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| (-e, c.clone()))
                .collect(),
        }
    }

    /// Terms with strictly negative exponent.
    pub fn negative_part(&self) -> Self {
        Self {
            terms: self.terms.iter().filter(|t| t.0 < 0).cloned().collect(),
        }
    }

    /// Exact quotient `f / g` in `Z[v, v^-1]`, by elimination from the lowest
    /// exponent. Any nonzero remainder is reported as `NotDivisible`.
    pub fn exact_div(&self, g: &Self) -> Result<Self> {
        let (Some(g_lo), Some(g_hi)) = (g.min_exp(), g.max_exp()) else {
            return Err(Error::DivisionByZero);
        };
        let Some(f_hi) = self.max_exp() else {
            return Ok(Self::zero());
        };
        let g_lead = &g.terms[0].1;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((e, c)) = rem.terms.first().cloned() {
            let qe = e - g_lo;
            if qe > f_hi - g_hi {
                return Err(Error::NotDivisible);
            }
            let (qc, r) = c.div_rem(g_lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            rem -= &(g.shift(qe) * &Self::constant(qc.clone()));
            quotient.push((qe, qc));
        }
        Ok(Self { terms: quotient })
    }

    /// Value at `v = a` in `F_p`.
    pub fn specialize(&self, a: u64, field: &PrimeField) -> Result<u64> {
        let p = field.modulus();
        if a % p == 0 {
            return Err(Error::DivisionByZero);
        }
        let a_inv = field.inv(a)?;
        let big_p = BigInt::from(p);
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let c = c.mod_floor(&big_p).to_u64().unwrap();
            let x = if *e >= 0 {
                field.pow(a, *e as u64)
            } else {
                field.pow(a_inv, e.unsigned_abs() as u64)
            };
            acc = field.add(acc, field.mul(c, x));
        }
        Ok(acc)
    }

    /// Rendering in powers of `u` when every exponent is even.
    pub fn to_u_string(&self) -> Option<String> {
        if !self.is_in_u() {
            return None;
        }
        Some(render(&self.terms, "u", 2))
    }
}

fn render(terms: &[(i32, BigInt)], var: &str, step: i32) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (e, c)) in terms.iter().enumerate() {
        let e = e / step;
        let (sign, mag) = if c.is_negative() {
            ("-", -c)
        } else {
            ("+", c.clone())
        };
        if k == 0 {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        match e {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                if e == 1 {
                    out.push_str(var);
                } else {
                    out.push_str(&format!("{var}^{e}"));
                }
            }
        }
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.terms, "v", 1))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

fn merge(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    let mut terms = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let take_a = j == b.terms.len() || (i < a.terms.len() && a.terms[i].0 < b.terms[j].0);
        let take_b = i == a.terms.len() || (j < b.terms.len() && b.terms[j].0 < a.terms[i].0);
        if take_a {
            terms.push(a.terms[i].clone());
            i += 1;
        } else if take_b {
            let (e, c) = &b.terms[j];
            terms.push((*e, if negate_b { -c } else { c.clone() }));
            j += 1;
        } else {
            let c = if negate_b {
                &a.terms[i].1 - &b.terms[j].1
            } else {
                &a.terms[i].1 + &b.terms[j].1
            };
            if !c.is_zero() {
                terms.push((a.terms[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    LaurentPoly { terms }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, false)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, true)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.terms.len() == 1 {
            let (k, c) = &rhs.terms[0];
            return LaurentPoly {
                terms: self.terms.iter().map(|(e, d)| (e + k, d * c)).collect(),
            };
        }
        let mut acc: BTreeMap<i32, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                *acc.entry(e1 + e2).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        LaurentPoly::from_map(acc)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly { (&self).$m(rhs) }
        }
        impl<'a> $tr<LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { self.$m(&rhs) }
        }
    )*};
}

forward_owned_ops!(Add add, Sub sub, Mul mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = merge(self, rhs, false);
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = merge(self, rhs, true);
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

/// JSON form: `[[exponent, "coefficient"], ...]`.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(i32, String)> = Vec::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}
