//! The Iwahori–Hecke algebra of `S_n` with parameter `u^2`, in the `T`-basis:
//! `T_w T_w' = T_{ww'}` when lengths add, and `(T_s + 1)(T_s - u^2) = 0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::modp::PrimeField;
use crate::perm::{all_permutations, check_generator, Permutation};

#[derive(Clone, PartialEq)]
pub struct HeckeElement<C = LaurentPoly> {
    n: usize,
    coeffs: BTreeMap<Permutation, C>,
}

/// `u^2 - 1`.
pub(crate) fn u2_minus_1() -> LaurentPoly {
    LaurentPoly::from_u_terms([(2, 1), (0, -1)])
}

impl<C: Coefficient> HeckeElement<C> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// `T_w`.
    pub fn basis(w: Permutation) -> Self {
        let n = w.n();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(w, C::from(LaurentPoly::one()));
        Self { n, coeffs }
    }

    /// `T_1`.
    pub fn one(n: usize) -> Self {
        Self::basis(Permutation::identity(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: &Permutation) -> C {
        self.coeffs.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &C)> {
        self.coeffs.iter()
    }

    /// Terms ordered by `(length, one-line notation)`.
    pub fn sorted_terms(&self) -> Vec<(&Permutation, &C)> {
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by(|a, b| a.0.length_lex_cmp(b.0));
        terms
    }

    pub fn add_term(&mut self, w: Permutation, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    /// Multiplies every coefficient by `p`.
    pub fn scale(&self, p: &LaurentPoly) -> Self {
        self.map(|c| c.scale(p))
    }

    pub fn scale_by(&self, c: &C) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> HeckeElement<D> {
        HeckeElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(w, c)| (w.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Coefficient change along `Z[v, v^-1] -> D`.
    pub fn convert<D: Coefficient + From<C>>(&self) -> HeckeElement<D> {
        self.map(|c| D::from(c.clone()))
    }

    /// `T_s * h`.
    pub fn mul_gen_left(&self, s: usize) -> Self {
        let q = u2_minus_1();
        let u2 = LaurentPoly::u_pow(2);
        let mut out = Self::zero(self.n);
        for (w, c) in &self.coeffs {
            let sw = w.left_mul_gen(s);
            if w.has_left_descent(s) {
                out.add_term(w.clone(), c.scale(&q));
                out.add_term(sw, c.scale(&u2));
            } else {
                out.add_term(sw, c.clone());
            }
        }
        out
    }

    /// `T_w * h`, applying the letters of a reduced word of `w` right to left.
    pub fn mul_basis_left(&self, w: &Permutation) -> Self {
        w.reduced_word()
            .letters()
            .iter()
            .rev()
            .fold(self.clone(), |acc, &s| acc.mul_gen_left(s as usize))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (w, c) in &self.coeffs {
            for (x, d) in other.mul_basis_left(w).coeffs {
                out.add_term(x, c.clone() * d);
            }
        }
        Ok(out)
    }

    /// Coordinates in the given basis ordering, specialized at `v = a`.
    pub fn specialize_along(
        &self,
        order: &[Permutation],
        a: u64,
        field: &PrimeField,
    ) -> Result<Vec<u64>> {
        order
            .iter()
            .map(|w| match self.coeffs.get(w) {
                Some(c) => c.specialize(a, field),
                None => Ok(0),
            })
            .collect()
    }
}

impl HeckeElement<LaurentPoly> {
    /// `T_s^-1 * h = u^-2 T_s h + (u^-2 - 1) h`.
    pub fn mul_gen_inverse_left(&self, s: usize) -> Self {
        let a = LaurentPoly::u_pow(-2);
        let b = LaurentPoly::from_u_terms([(-2, 1), (0, -1)]);
        self.mul_gen_left(s).scale(&a).add(&self.scale(&b)).unwrap()
    }

    /// The bar involution `sum c_x T_x -> sum bar(c_x) T_{x^-1}^-1`.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (x, c) in &self.coeffs {
            let t = t_inverse(&x.inverse()).scale(&c.bar());
            out = out.add(&t).unwrap();
        }
        out
    }
}

/// `T_s * h`.
pub fn mul_gen_left<C: Coefficient>(s: usize, h: &HeckeElement<C>) -> Result<HeckeElement<C>> {
    check_generator(h.n(), s)?;
    Ok(h.mul_gen_left(s))
}

/// `T_w^-1 = T_{i_k}^-1 ... T_{i_1}^-1` for a reduced word `w = s_{i_1} ... s_{i_k}`.
pub fn t_inverse(w: &Permutation) -> HeckeElement {
    w.reduced_word()
        .letters()
        .iter()
        .fold(HeckeElement::one(w.n()), |acc, &s| {
            acc.mul_gen_inverse_left(s as usize)
        })
}

/// `X_∅ = sum of u^{-l(x)} T_x` over all `x` with `x* = x`. With the trivial
/// twist that condition holds for every permutation, so the sum runs over
/// all of `S_n` (not only over the involutions).
pub fn x_empty(n: usize) -> HeckeElement {
    let mut out = HeckeElement::zero(n);
    for x in all_permutations(n) {
        let l = x.length() as i32;
        out.add_term(x, LaurentPoly::u_pow(-l));
    }
    out
}

impl<C: Coefficient> fmt::Display for HeckeElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*T[{w}]")?;
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for HeckeElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement(n={}, {self})", self.n)
    }
}

#[derive(Serialize)]
struct TermRef<'a, C> {
    perm: &'a Permutation,
    coeff: &'a C,
}

/// JSON form: `{n, terms: [{perm, coeff}]}`, terms in `(length, lex)` order.
impl<C: Coefficient + Serialize> Serialize for HeckeElement<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<_> = self
            .sorted_terms()
            .into_iter()
            .map(|(perm, coeff)| TermRef { perm, coeff })
            .collect();
        let mut st = s.serialize_struct("HeckeElement", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}
