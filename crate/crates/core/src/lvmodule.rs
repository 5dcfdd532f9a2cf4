//! The module `M` with basis `{a_w : w an involution}`, the generator action
//!
//! ```text
//! T_s a_w = u a_w + (u+1) a_sw           if sw = ws > w
//! T_s a_w = (u^2-u-1) a_w + (u^2-u) a_sw if sw = ws < w
//! T_s a_w = a_sws                        if sw != ws > w
//! T_s a_w = (u^2-1) a_w + u^2 a_sws      if sw != ws < w
//! ```
//!
//! its bar involution `bar(a_w) = (-1)^l(w) T_w^-1 a_w`, and the
//! bar-invariant basis `A_w = v^-l(w) sum_y P_{y,w} a_y`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::{u2_minus_1, HeckeElement};
use crate::istar::{enumerate_involutions, Involution};
use crate::laurent::LaurentPoly;
use crate::perm::check_generator;

#[derive(Clone, PartialEq, Eq)]
pub struct MElement {
    n: usize,
    coeffs: BTreeMap<Involution, LaurentPoly>,
}

impl MElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// `a_w`.
    pub fn basis(w: Involution) -> Self {
        let mut m = Self::zero(w.n());
        m.add_term(w, LaurentPoly::one());
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: &Involution) -> LaurentPoly {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Involution, &LaurentPoly)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, w: Involution, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(w).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.coeffs.retain(|_, c| !c.is_zero());
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
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.coeffs {
            out.add_term(w.clone(), c * p);
        }
        out
    }

    /// `T_s m`.
    pub fn act_gen(&self, s: usize) -> Self {
        let u = LaurentPoly::u_pow(1);
        let u2 = LaurentPoly::u_pow(2);
        let up1 = LaurentPoly::from_u_terms([(1, 1), (0, 1)]);
        let case2_diag = LaurentPoly::from_u_terms([(2, 1), (1, -1), (0, -1)]);
        let case2_off = LaurentPoly::from_u_terms([(2, 1), (1, -1)]);
        let q = u2_minus_1();
        let mut out = Self::zero(self.n);
        for (w, c) in &self.coeffs {
            let up = !w.has_left_descent(s);
            let moved = w.twist(s);
            match (w.commutes_with(s), up) {
                (true, true) => {
                    out.add_term(w.clone(), c * &u);
                    out.add_term(moved, c * &up1);
                }
                (true, false) => {
                    out.add_term(w.clone(), c * &case2_diag);
                    out.add_term(moved, c * &case2_off);
                }
                (false, true) => out.add_term(moved, c.clone()),
                (false, false) => {
                    out.add_term(w.clone(), c * &q);
                    out.add_term(moved, c * &u2);
                }
            }
        }
        out
    }

    /// `T_s^-1 m = u^-2 T_s m + (u^-2 - 1) m`.
    pub fn act_gen_inverse(&self, s: usize) -> Self {
        let a = LaurentPoly::u_pow(-2);
        let b = LaurentPoly::from_u_terms([(-2, 1), (0, -1)]);
        self.act_gen(s).scale(&a).add(&self.scale(&b)).unwrap()
    }

    /// `T_w m` through a reduced word of `w`, rightmost letter first.
    pub fn act_basis(&self, w: &crate::perm::Permutation) -> Self {
        w.reduced_word()
            .letters()
            .iter()
            .rev()
            .fold(self.clone(), |m, &s| m.act_gen(s as usize))
    }

    /// `T_w^-1 m`.
    pub fn act_basis_inverse(&self, w: &crate::perm::Permutation) -> Self {
        w.reduced_word()
            .letters()
            .iter()
            .fold(self.clone(), |m, &s| m.act_gen_inverse(s as usize))
    }

    /// `bar(sum c_w a_w) = sum bar(c_w) (-1)^l(w) T_w^-1 a_w`.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.coeffs {
            out = out.add(&bar_basis(w).scale(&c.bar())).unwrap();
        }
        out
    }
}

fn bar_basis(w: &Involution) -> MElement {
    let sign = if w.length() % 2 == 0 { 1 } else { -1 };
    MElement::basis(w.clone())
        .act_basis_inverse(w.perm())
        .scale(&LaurentPoly::constant(sign))
}

impl fmt::Display for MElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*a[{w}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MElement(n={}, {self})", self.n)
    }
}

/// `T_s m`, checking the generator.
pub fn act_gen(s: usize, m: &MElement) -> Result<MElement> {
    check_generator(m.n(), s)?;
    Ok(m.act_gen(s))
}

/// `h m` for a Hecke-algebra element `h`.
pub fn act(h: &HeckeElement, m: &MElement) -> Result<MElement> {
    if h.n() != m.n() {
        return Err(Error::RankMismatch(h.n(), m.n()));
    }
    let mut out = MElement::zero(m.n());
    for (w, c) in h.terms() {
        out = out.add(&m.act_basis(w).scale(c))?;
    }
    Ok(out)
}

pub fn bar_m(m: &MElement) -> MElement {
    m.bar()
}

/// `A_w` together with its polynomials `P_{y,w}` (in `v`, even exponents).
#[derive(Clone, Debug, PartialEq)]
pub struct LvBasisElement {
    pub w: Involution,
    pub expansion: MElement,
    pub polys: BTreeMap<Involution, LaurentPoly>,
}

impl LvBasisElement {
    pub fn psigma(&self, y: &Involution) -> LaurentPoly {
        self.polys.get(y).cloned().unwrap_or_default()
    }
}

/// All `A_w` for one rank, built from the bar matrix in the normalized basis
/// `b_y = v^-l(y) a_y`, where `bar(b_y) = b_y + (terms of larger length)`
/// is unitriangular.
pub struct LvTable {
    n: usize,
    involutions: Vec<Involution>,
    elements: HashMap<Involution, LvBasisElement>,
}

impl LvTable {
    pub fn new(n: usize) -> Result<Self> {
        let involutions = enumerate_involutions(n);
        // bar_b[z][y] = coefficient of b_y in bar(b_z)
        let mut bar_b: HashMap<Involution, Vec<(Involution, LaurentPoly)>> = HashMap::new();
        for z in &involutions {
            let lz = z.length() as i32;
            let entries = bar_basis(z)
                .terms()
                .map(|(y, c)| (y.clone(), c.shift(lz + y.length() as i32)))
                .collect::<Vec<_>>();
            for (y, c) in &entries {
                let bad = if y == z {
                    !c.is_one()
                } else {
                    y.length() >= z.length()
                };
                if bad {
                    return Err(Error::UniquenessViolation {
                        w: z.to_string(),
                        y: y.to_string(),
                    });
                }
            }
            bar_b.insert(z.clone(), entries);
        }

        let mut by_length = involutions.clone();
        by_length.sort_by(|a, b| b.length().cmp(&a.length()).then_with(|| a.cmp(b)));

        let mut elements = HashMap::new();
        for w in &involutions {
            let elem = solve_one(w, &by_length, &bar_b)?;
            elements.insert(w.clone(), elem);
        }
        Ok(Self {
            n,
            involutions,
            elements,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Involutions in canonical `(rho, one-line)` order.
    pub fn involutions(&self) -> &[Involution] {
        &self.involutions
    }

    pub fn get(&self, w: &Involution) -> Option<&LvBasisElement> {
        self.elements.get(w)
    }

    /// `P_{y,w}`; zero unless `y <= w`.
    pub fn psigma(&self, y: &Involution, w: &Involution) -> LaurentPoly {
        self.elements
            .get(w)
            .map(|e| e.psigma(y))
            .unwrap_or_default()
    }

    /// Rows `(y, w, P_{y,w})` over all pairs with nonzero polynomial, ordered
    /// by `w` then `y` in canonical order.
    pub fn rows(&self) -> Vec<PsigmaRow> {
        let mut rows = Vec::new();
        for w in &self.involutions {
            for y in &self.involutions {
                let p = self.psigma(y, w);
                if !p.is_zero() {
                    rows.push(PsigmaRow::new(y.clone(), w.clone(), p));
                }
            }
        }
        rows
    }
}

fn solve_one(
    w: &Involution,
    by_length: &[Involution],
    bar_b: &HashMap<Involution, Vec<(Involution, LaurentPoly)>>,
) -> Result<LvBasisElement> {
    let lw = w.length();
    // coefficients of A_w in the b-basis
    let mut d: BTreeMap<Involution, LaurentPoly> = BTreeMap::new();
    d.insert(w.clone(), LaurentPoly::one());
    // contributions[y] = sum over processed z of bar(d_z) * [b_y] bar(b_z)
    let mut contributions: HashMap<Involution, LaurentPoly> = HashMap::new();
    let absorb = |z: &Involution, dz: &LaurentPoly, contributions: &mut HashMap<_, _>| {
        let dz_bar = dz.bar();
        for (y, r) in &bar_b[z] {
            if y != z {
                let e: &mut LaurentPoly = contributions.entry(y.clone()).or_default();
                *e += &dz_bar * r;
            }
        }
    };
    absorb(w, &LaurentPoly::one(), &mut contributions);
    for y in by_length.iter().filter(|y| *y != w) {
        let q = contributions.remove(y).unwrap_or_default();
        if q.is_zero() {
            continue;
        }
        // d_y - bar(d_y) = q with d_y in v^-1 Z[v^-1]
        let allowed = y.length() < lw;
        if !allowed || q.bar() != -&q {
            return Err(Error::UniquenessViolation {
                w: w.to_string(),
                y: y.to_string(),
            });
        }
        let dy = q.negative_part();
        absorb(y, &dy, &mut contributions);
        d.insert(y.clone(), dy);
    }

    let mut expansion = MElement::zero(w.n());
    let mut polys = BTreeMap::new();
    for (y, dy) in d {
        let ly = y.length() as i32;
        expansion.add_term(y.clone(), dy.shift(-ly));
        polys.insert(y, dy.shift(lw as i32 - ly));
    }
    Ok(LvBasisElement {
        w: w.clone(),
        expansion,
        polys,
    })
}

/// `A_w` and its polynomials, computed from the full table of the rank.
pub fn lv_basis(w: &Involution) -> Result<LvBasisElement> {
    let table = LvTable::new(w.n())?;
    Ok(table.elements[w].clone())
}

/// `P_{y,w}`; zero unless `y <= w` in Bruhat order.
pub fn psigma(y: &Involution, w: &Involution) -> Result<LaurentPoly> {
    if y.n() != w.n() {
        return Err(Error::RankMismatch(y.n(), w.n()));
    }
    Ok(lv_basis(w)?.psigma(y))
}

/// One entry of a `P_{y,w}` table with the polynomial written in `u`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PsigmaRow {
    pub y: Involution,
    pub w: Involution,
    /// `[[exponent of u, "coefficient"], ...]`
    pub poly_in_u: Vec<(i32, String)>,
    pub text: String,
}

impl PsigmaRow {
    fn new(y: Involution, w: Involution, p: LaurentPoly) -> Self {
        let poly_in_u = p
            .terms()
            .iter()
            .map(|(e, c)| (e.div_euclid(2), c.to_string()))
            .collect();
        let text = p.to_u_string().unwrap_or_else(|| p.to_string());
        Self {
            y,
            w,
            poly_in_u,
            text,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::t_inverse;
    use crate::perm::{all_permutations, Permutation};

    fn inv(s: &str) -> Involution {
        s.parse().unwrap()
    }

    fn lp_u(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_u_terms(terms.iter().copied())
    }

    fn m(terms: &[(&str, LaurentPoly)]) -> MElement {
        let n = inv(terms[0].0).n();
        let mut out = MElement::zero(n);
        for (w, c) in terms {
            out.add_term(inv(w), c.clone());
        }
        out
    }

    #[test]
    fn act_gen_examples() {
        let a1 = MElement::basis(Involution::identity(2));
        assert_eq!(
            a1.act_gen(1),
            m(&[("1,2", lp_u(&[(1, 1)])), ("2,1", lp_u(&[(1, 1), (0, 1)]))])
        );
        let a_s = MElement::basis(inv("2,1"));
        assert_eq!(
            a_s.act_gen(1),
            m(&[
                ("2,1", lp_u(&[(2, 1), (1, -1), (0, -1)])),
                ("1,2", lp_u(&[(2, 1), (1, -1)]))
            ])
        );
        let a_s2 = MElement::basis(inv("1,3,2"));
        assert_eq!(a_s2.act_gen(1), MElement::basis(inv("3,2,1")));
        assert!(act_gen(3, &a_s2).is_err());
    }

    #[test]
    fn act_examples() {
        let a1 = MElement::basis(Involution::identity(3));
        assert_eq!(act(&HeckeElement::one(3), &a1).unwrap(), a1);
        let t1 = HeckeElement::basis(Permutation::generator(3, 1).unwrap());
        let t2 = HeckeElement::basis(Permutation::generator(3, 2).unwrap());
        let prod = t1.mul(&t2).unwrap();
        assert_eq!(
            act(&prod, &a1).unwrap(),
            act(&t1, &act(&t2, &a1).unwrap()).unwrap()
        );
    }

    #[test]
    fn quadratic_relation_on_s4() {
        let n = 4;
        for w in enumerate_involutions(n) {
            let a = MElement::basis(w);
            for s in 1..n {
                let ts = HeckeElement::basis(Permutation::generator(n, s).unwrap());
                let x = ts.add(&HeckeElement::one(n)).unwrap();
                let y = ts
                    .sub(&HeckeElement::one(n).scale(&lp_u(&[(2, 1)])))
                    .unwrap();
                let rel = x.mul(&y).unwrap();
                assert!(act(&rel, &a).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn bar_examples() {
        let a1 = MElement::basis(Involution::identity(2));
        assert_eq!(a1.bar(), a1);
        let a_s = MElement::basis(inv("2,1"));
        assert_eq!(
            a_s.bar(),
            m(&[
                ("2,1", lp_u(&[(-1, 1)])),
                ("1,2", lp_u(&[(-1, 1), (0, -1)]))
            ])
        );
        for n in 1..=4 {
            for w in enumerate_involutions(n) {
                let a = MElement::basis(w);
                assert_eq!(a.bar().bar(), a);
            }
        }
    }

    #[test]
    fn bar_matches_definition_through_hecke_inverse() {
        for w in enumerate_involutions(4) {
            let sign = LaurentPoly::constant(if w.length() % 2 == 0 { 1 } else { -1 });
            let via_hecke = act(&t_inverse(w.perm()), &MElement::basis(w.clone()))
                .unwrap()
                .scale(&sign);
            assert_eq!(MElement::basis(w).bar(), via_hecke);
        }
    }

    #[test]
    fn bar_commutes_with_action_on_s3() {
        let n = 3;
        for x in all_permutations(n) {
            let h = HeckeElement::basis(x).scale(&LaurentPoly::from_terms([(1, 2), (-3, 1)]));
            for w in enumerate_involutions(n) {
                let a = MElement::basis(w).scale(&LaurentPoly::from_terms([(2, 1), (0, -1)]));
                let lhs = act(&h, &a).unwrap().bar();
                let rhs = act(&h.bar(), &a.bar()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn lv_basis_examples() {
        let e = Involution::identity(3);
        let a = lv_basis(&e).unwrap();
        assert_eq!(a.expansion, MElement::basis(e.clone()));
        assert_eq!(a.polys.len(), 1);
        assert!(a.psigma(&e).is_one());

        let s = inv("2,1");
        let a_s = lv_basis(&s).unwrap();
        let expected = m(&[
            ("2,1", LaurentPoly::v_pow(-1)),
            ("1,2", LaurentPoly::v_pow(-1)),
        ]);
        assert_eq!(a_s.expansion, expected);
        assert!(psigma(&Involution::identity(2), &s).unwrap().is_one());
    }

    /// Direct check for `S_2`: `bar(v^-1 (a_s + c a_1)) = v^-1 (a_s + c a_1)`
    /// forces `c = 1`.
    #[test]
    fn rank_two_solve_by_hand() {
        let s = inv("2,1");
        let e = Involution::identity(2);
        let candidate = |c: i64| {
            m(&[
                ("2,1", LaurentPoly::v_pow(-1)),
                ("1,2", LaurentPoly::monomial(c, -1)),
            ])
        };
        let fixed: Vec<i64> = (-3..=3)
            .filter(|&c| candidate(c).bar() == candidate(c))
            .collect();
        assert_eq!(fixed, vec![1]);
        assert_eq!(lv_basis(&s).unwrap().expansion, candidate(1));
        assert!(lv_basis(&s).unwrap().psigma(&e).is_one());
    }

    #[test]
    fn lv_table_properties_on_s4() {
        let table = LvTable::new(4).unwrap();
        for w in table.involutions() {
            let a = table.get(w).unwrap();
            assert_eq!(a.expansion.bar(), a.expansion, "{w}");
            assert!(table.psigma(w, w).is_one());
            for y in table.involutions() {
                let p = table.psigma(y, w);
                if y == w || p.is_zero() {
                    continue;
                }
                assert!(y.bruhat_leq(w).unwrap(), "{y} {w}");
                assert!(p.is_u_polynomial());
                let bound = (w.length() as i32 - y.length() as i32 - 1).div_euclid(2);
                assert!(p.u_degree().unwrap() <= bound);
            }
        }
    }

    #[test]
    fn rows_are_listed_in_canonical_order() {
        let table = LvTable::new(3).unwrap();
        let rows = table.rows();
        assert_eq!(rows[0].y, Involution::identity(3));
        assert_eq!(rows[0].text, "1");
        // every w contributes its diagonal entry
        assert!(rows.len() >= table.involutions().len());
    }
}
