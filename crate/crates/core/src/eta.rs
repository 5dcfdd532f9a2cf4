//! The operators `theta_sigma`, the module map `eta: M -> H X_∅` with
//! `a_1 -> X_∅`, and the rank of `H X_∅`.
//!
//! For a reduced expression `(j_1, ..., j_k)` of `w`, `theta_sigma(X_∅)` applies
//! one operator per letter, right to left: `T_s` when `s` does not commute with
//! the involution built so far, `(T_s - u)/(u + 1)` when it does. Every
//! division is exact in `Z[v, v^-1]`; a remainder is reported as `NotDivisible`.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::one_plus_u;
use crate::error::{Error, Result};
use crate::hecke::{x_empty, HeckeElement};
use crate::istar::{canonical_expression, enumerate_involutions, IStarWord, Involution};
use crate::laurent::LaurentPoly;
use crate::lvmodule::MElement;
use crate::modp::{PrimeField, DEFAULT_PRIME};
use crate::perm::{all_permutations, Permutation};

/// Largest rank accepted by the verification driver.
pub const VERIFY_RANK_CAP: usize = 6;
/// Largest rank for fraction-free elimination over `Z[v, v^-1]`.
pub const EXACT_RANK_CAP: usize = 3;
/// Evaluation points tried before a rank deficit is reported.
pub const SPECIALIZATION_ATTEMPTS: u32 = 3;
const MAX_DRAWS: usize = 64;
pub const DEFAULT_SEED: u64 = 0x1a2b_3c4d;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "s")]
pub enum StepKind {
    MulT(u8),
    MulTMinusUDivUPlus1(u8),
}

impl StepKind {
    pub fn generator(&self) -> usize {
        match *self {
            StepKind::MulT(s) | StepKind::MulTMinusUDivUPlus1(s) => s as usize,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaPlan {
    pub word: IStarWord,
    /// One step per letter, in word order; applied last to first.
    pub steps: Vec<StepKind>,
}

pub fn theta_plan(word: &IStarWord) -> Result<ThetaPlan> {
    if !word.is_reduced() {
        return Err(Error::NotReduced {
            word: word.to_string(),
        });
    }
    let mut suffix = Involution::identity(word.n());
    let mut steps = Vec::with_capacity(word.len());
    for &s in word.letters().iter().rev() {
        steps.push(step_for(s, &suffix));
        suffix = suffix.twist(s as usize);
    }
    steps.reverse();
    Ok(ThetaPlan {
        word: word.clone(),
        steps,
    })
}

fn step_for(s: u8, suffix: &Involution) -> StepKind {
    if suffix.commutes_with(s as usize) {
        StepKind::MulTMinusUDivUPlus1(s)
    } else {
        StepKind::MulT(s)
    }
}

fn apply_step(step: StepKind, h: &HeckeElement) -> Result<HeckeElement> {
    match step {
        StepKind::MulT(s) => Ok(h.mul_gen_left(s as usize)),
        StepKind::MulTMinusUDivUPlus1(s) => {
            let shifted = h
                .mul_gen_left(s as usize)
                .sub(&h.scale(&LaurentPoly::u_pow(1)))?;
            let d = one_plus_u();
            let mut out = HeckeElement::zero(h.n());
            for (w, c) in shifted.terms() {
                out.add_term(w.clone(), c.exact_div(&d)?);
            }
            Ok(out)
        }
    }
}

fn check_plan_rank(plan: &ThetaPlan, n: usize) -> Result<()> {
    if plan.word.n() != n {
        return Err(Error::RankMismatch(plan.word.n(), n));
    }
    Ok(())
}

/// `theta_sigma(X_∅)`.
pub fn apply_theta(plan: &ThetaPlan, n: usize) -> Result<HeckeElement> {
    check_plan_rank(plan, n)?;
    plan.steps
        .iter()
        .rev()
        .try_fold(x_empty(n), |h, &step| apply_step(step, &h))
}

/// `eta(a_w)`, through the lexicographically first reduced expression.
pub fn eta_basis(w: &Involution) -> Result<HeckeElement> {
    apply_theta(&theta_plan(&canonical_expression(w))?, w.n())
}

pub fn eta(m: &MElement) -> Result<HeckeElement> {
    let mut out = HeckeElement::zero(m.n());
    for (w, c) in m.terms() {
        out = out.add(&eta_basis(w)?.scale(c))?;
    }
    Ok(out)
}

/// `eta(a_w)` for every involution of one rank.
pub struct EtaTable {
    n: usize,
    images: BTreeMap<Involution, HeckeElement>,
}

impl EtaTable {
    pub fn new(n: usize) -> Result<Self> {
        let images = enumerate_involutions(n)
            .into_par_iter()
            .map(|w| {
                let h = eta_basis(&w)?;
                Ok((w, h))
            })
            .collect::<Result<_>>()?;
        Ok(Self { n, images })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self, w: &Involution) -> &HeckeElement {
        &self.images[w]
    }

    pub fn eta(&self, m: &MElement) -> Result<HeckeElement> {
        if m.n() != self.n {
            return Err(Error::RankMismatch(m.n(), self.n));
        }
        let mut out = HeckeElement::zero(self.n);
        for (w, c) in m.terms() {
            out = out.add(&self.images[w].scale(c))?;
        }
        Ok(out)
    }
}

/// Outcome of evaluating `theta` along every reduced expression of every
/// involution of one rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellDefinedness {
    pub expressions: usize,
    /// Two expressions of the same involution with different images.
    pub counterexample: Option<(IStarWord, IStarWord)>,
    /// An expression along which a division by `u + 1` left a remainder.
    pub not_divisible: Option<IStarWord>,
}

impl WellDefinedness {
    pub fn well_defined(&self) -> bool {
        self.counterexample.is_none() && self.not_divisible.is_none()
    }

    pub fn integral(&self) -> bool {
        self.not_divisible.is_none()
    }
}

#[derive(Default)]
struct Walk {
    reps: BTreeMap<Involution, (Vec<u8>, HeckeElement)>,
    expressions: usize,
    counterexample: Option<(Vec<u8>, Vec<u8>)>,
    not_divisible: Option<Vec<u8>>,
}

/// Reverses a word built by pushing letters on its left end.
fn as_word(rev_letters: &[u8]) -> Vec<u8> {
    rev_letters.iter().rev().copied().collect()
}

/// Depth-first walk over all reduced expressions, extending words on the
/// left so that each word costs a single operator application.
fn walk(rev_letters: &mut Vec<u8>, w: &Involution, h: &HeckeElement, acc: &mut Walk) {
    acc.expressions += 1;
    match acc.reps.get(w) {
        Some((word, rep)) => {
            if rep != h && acc.counterexample.is_none() {
                acc.counterexample = Some((word.clone(), as_word(rev_letters)));
            }
        }
        None => {
            acc.reps
                .insert(w.clone(), (as_word(rev_letters), h.clone()));
        }
    }
    for s in (1..w.n()).filter(|&s| !w.has_left_descent(s)) {
        rev_letters.push(s as u8);
        match apply_step(step_for(s as u8, w), h) {
            Ok(next) => walk(rev_letters, &w.twist(s), &next, acc),
            Err(_) => {
                acc.expressions += 1;
                acc.not_divisible
                    .get_or_insert_with(|| as_word(rev_letters));
            }
        }
        rev_letters.pop();
    }
}

/// Checks that `theta_sigma(X_∅)` is integral and depends only on the
/// involution, over all reduced expressions of all involutions of rank `n`.
pub fn check_well_defined(n: usize) -> WellDefinedness {
    let e = Involution::identity(n);
    let x = x_empty(n);
    let mut branches: Vec<Walk> = (1..n)
        .into_par_iter()
        .map(|s| {
            let mut acc = Walk::default();
            let mut rev_letters = vec![s as u8];
            match apply_step(step_for(s as u8, &e), &x) {
                Ok(next) => walk(&mut rev_letters, &e.twist(s), &next, &mut acc),
                Err(_) => {
                    acc.expressions += 1;
                    acc.not_divisible = Some(rev_letters);
                }
            }
            acc
        })
        .collect();

    let mut out = Walk {
        expressions: 1,
        ..Walk::default()
    };
    for b in branches.iter_mut() {
        out.expressions += b.expressions;
        if out.counterexample.is_none() {
            out.counterexample = b.counterexample.take();
        }
        if out.not_divisible.is_none() {
            out.not_divisible = b.not_divisible.take();
        }
        for (w, (word, h)) in std::mem::take(&mut b.reps) {
            match out.reps.get(&w) {
                Some((first, rep)) => {
                    if *rep != h && out.counterexample.is_none() {
                        out.counterexample = Some((first.clone(), word));
                    }
                }
                None => {
                    out.reps.insert(w, (word, h));
                }
            }
        }
    }
    let word = |l: Vec<u8>| IStarWord::from_letters_unchecked(n, l);
    WellDefinedness {
        expressions: out.expressions,
        counterexample: out.counterexample.map(|(a, b)| (word(a), word(b))),
        not_divisible: out.not_divisible.map(word),
    }
}

/// First `(s, w)` with `eta(T_s a_w) != T_s eta(a_w)`, if any.
pub fn check_homomorphism(table: &EtaTable) -> Option<(usize, Involution)> {
    let n = table.n;
    let pairs: Vec<(usize, Involution)> = table
        .images
        .keys()
        .flat_map(|w| (1..n).map(move |s| (s, w.clone())))
        .collect();
    pairs.into_par_iter().find_first(|(s, w)| {
        let lhs = table.eta(&MElement::basis(w.clone()).act_gen(*s)).unwrap();
        let rhs = table.image(w).mul_gen_left(*s);
        lhs != rhs
    })
}

/// `T_{s_a} (T_{s_{a+1}} - u)/(u+1) X_∅ = T_{s_{a+1}} (T_{s_a} - u)/(u+1) X_∅`.
pub fn case_three_identity(n: usize, a: usize) -> Result<bool> {
    if a == 0 || a + 1 >= n {
        return Err(Error::InvalidGenerator { index: a + 1, n });
    }
    let x = x_empty(n);
    let left = apply_step(StepKind::MulTMinusUDivUPlus1(a as u8 + 1), &x)?.mul_gen_left(a);
    let right = apply_step(StepKind::MulTMinusUDivUPlus1(a as u8), &x)?.mul_gen_left(a + 1);
    Ok(left == right)
}

/// Permutations in `(length, one-line)` order: the row indexing of all
/// coefficient matrices.
pub fn row_order(n: usize) -> Vec<Permutation> {
    let mut perms = all_permutations(n);
    perms.sort_by(|a, b| a.length_lex_cmp(b));
    perms
}

/// Columns `T_w X_∅` for all `w`, specialized at `v = a`, with rows and
/// columns in `row_order(n)`. Each column is one generator step from a
/// column of smaller length.
pub fn span_columns_mod_p(n: usize, a: u64, field: &PrimeField) -> Result<Vec<Vec<u64>>> {
    let perms = row_order(n);
    let index: BTreeMap<&Permutation, usize> =
        perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let m = perms.len();
    let left: Vec<Vec<usize>> = (1..n)
        .map(|s| perms.iter().map(|p| index[&p.left_mul_gen(s)]).collect())
        .collect();
    let u2 = field.pow(a, 4);
    let q = field.sub(u2, 1);
    let base = x_empty(n).specialize_along(&perms, a, field)?;
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(m);
    for (k, w) in perms.iter().enumerate() {
        if k == 0 {
            cols.push(base.clone());
            continue;
        }
        let s = (1..n).find(|&s| w.has_left_descent(s)).unwrap();
        let prev = &cols[left[s - 1][k]];
        let mut col = vec![0u64; m];
        for (x, &c) in prev.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sx = left[s - 1][x];
            if perms[x].has_left_descent(s) {
                col[x] = field.add(col[x], field.mul(q, c));
                col[sx] = field.add(col[sx], field.mul(u2, c));
            } else {
                col[sx] = field.add(col[sx], c);
            }
        }
        cols.push(col);
    }
    Ok(cols)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub n: usize,
    pub rank: usize,
    pub prime: u64,
    /// The evaluation point `v = point` that gave `rank`.
    pub point: u64,
    pub attempts: u32,
}

/// Draws evaluation points `a` with `a != 0` and `1 + a^2 != 0`.
pub struct PointSampler {
    rng: ChaCha8Rng,
    field: PrimeField,
}

impl PointSampler {
    pub fn new(seed: u64, field: PrimeField) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            field,
        }
    }

    pub fn draw(&mut self) -> Result<u64> {
        let f = self.field;
        for _ in 0..MAX_DRAWS {
            let a = self.rng.gen_range(1..f.modulus());
            if f.add(f.mul(a, a), 1) != 0 {
                return Ok(a);
            }
        }
        Err(Error::SpecializationDegenerate {
            attempts: MAX_DRAWS,
        })
    }
}

/// Rank of `{T_w X_∅}` over `Q(u)`, bounded below by the rank at random
/// points of `F_p`. Points are redrawn while the rank stays below the number
/// of involutions; the best rank seen is reported.
pub fn dim_image(n: usize, seed: u64) -> Result<RankCertificate> {
    dim_image_with(n, seed, PrimeField::new(DEFAULT_PRIME))
}

pub fn dim_image_with(n: usize, seed: u64, field: PrimeField) -> Result<RankCertificate> {
    if n > VERIFY_RANK_CAP {
        return Err(Error::RankTooLarge {
            n,
            cap: VERIFY_RANK_CAP,
        });
    }
    let target = enumerate_involutions(n).len();
    let mut sampler = PointSampler::new(seed, field);
    let mut best: Option<RankCertificate> = None;
    for attempt in 1..=SPECIALIZATION_ATTEMPTS {
        let a = sampler.draw()?;
        let rank = field.rank(span_columns_mod_p(n, a, &field)?);
        let better = best.as_ref().is_none_or(|b| rank > b.rank);
        if better {
            best = Some(RankCertificate {
                n,
                rank,
                prime: field.modulus(),
                point: a,
                attempts: attempt,
            });
        }
        if rank >= target {
            break;
        }
    }
    let mut cert = best.unwrap();
    cert.attempts = cert.attempts.max(1);
    Ok(cert)
}

/// Rank over `Q(v)` of a matrix with entries in `Z[v, v^-1]`, by
/// fraction-free (Bareiss) elimination.
pub fn exact_rank(mut rows: Vec<Vec<LaurentPoly>>) -> Result<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = LaurentPoly::one();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            let factor = rows[r][col].clone();
            for j in col + 1..ncols {
                let x = &(&rows[r][j] * &pivot) - &(&factor * &rows[rank][j]);
                rows[r][j] = x.exact_div(&prev)?;
            }
            rows[r][col] = LaurentPoly::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}

/// Exact rank of `{T_w X_∅}` over `Q(u)`.
pub fn dim_image_exact(n: usize) -> Result<usize> {
    if n > EXACT_RANK_CAP {
        return Err(Error::RankTooLarge {
            n,
            cap: EXACT_RANK_CAP,
        });
    }
    let perms = row_order(n);
    let x = x_empty(n);
    let rows = perms
        .iter()
        .map(|w| {
            let col = x.mul_basis_left(w);
            perms.iter().map(|y| col.coeff(y)).collect()
        })
        .collect();
    exact_rank(rows)
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    pub exact: bool,
}

impl VerifyOptions {
    pub fn new(seed: u64) -> Self {
        Self { seed, exact: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub theta_well_defined: bool,
    pub homomorphism_ok: bool,
    pub dim_image: usize,
    pub involution_count: usize,
    /// Full column rank of the `eta(a_w)` at the same point.
    pub eta_injective: bool,
    pub conjecture_certified: bool,
    pub prime: u64,
    pub point: u64,
    pub attempts: u32,
    pub expressions_checked: usize,
    /// Whether every division by `u + 1` stayed inside `Z[v, v^-1]`.
    pub theta_integral: bool,
    pub exact_dim_image: Option<usize>,
    pub counterexample: Option<String>,
    pub elapsed_ms: u64,
}

pub fn verify_conjecture(n: usize, opts: &VerifyOptions) -> Result<VerifyReport> {
    if n == 0 || n > VERIFY_RANK_CAP {
        return Err(Error::RankTooLarge {
            n,
            cap: VERIFY_RANK_CAP,
        });
    }
    let start = Instant::now();
    let involutions = enumerate_involutions(n);
    let mut counterexample = None;

    let wd = check_well_defined(n);
    if let Some((a, b)) = &wd.counterexample {
        counterexample = Some(format!("theta differs on ({a}) and ({b})"));
    } else if let Some(a) = &wd.not_divisible {
        counterexample = Some(format!("division by u + 1 not exact along ({a})"));
    }

    let table = EtaTable::new(n)?;
    let hom = check_homomorphism(&table);
    if let (Some((s, w)), None) = (&hom, &counterexample) {
        counterexample = Some(format!("eta(T_{s} a[{w}]) != T_{s} eta(a[{w}])"));
    }

    let field = PrimeField::new(DEFAULT_PRIME);
    let cert = dim_image_with(n, opts.seed, field)?;
    let perms = row_order(n);
    let eta_cols = involutions
        .iter()
        .map(|w| table.image(w).specialize_along(&perms, cert.point, &field))
        .collect::<Result<Vec<_>>>()?;
    let eta_injective = field.rank(eta_cols) == involutions.len();
    if cert.rank != involutions.len() && counterexample.is_none() {
        counterexample = Some(format!(
            "rank {} of H X_∅ at v = {} differs from {} involutions",
            cert.rank,
            cert.point,
            involutions.len()
        ));
    }

    let exact_dim_image = if opts.exact {
        Some(dim_image_exact(n)?)
    } else {
        None
    };

    let conjecture_certified = wd.well_defined()
        && hom.is_none()
        && cert.rank == involutions.len()
        && eta_injective
        && exact_dim_image.is_none_or(|d| d == involutions.len());
    Ok(VerifyReport {
        n,
        theta_well_defined: wd.well_defined(),
        homomorphism_ok: hom.is_none(),
        dim_image: cert.rank,
        involution_count: involutions.len(),
        eta_injective,
        conjecture_certified,
        prime: cert.prime,
        point: cert.point,
        attempts: cert.attempts,
        expressions_checked: wd.expressions,
        theta_integral: wd.integral(),
        exact_dim_image,
        counterexample,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
