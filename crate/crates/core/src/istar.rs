//! Involutions, the twisted conjugation `s ⋉ w`, and reduced I*-expressions.
//!
//! With the trivial twist, `s ⋉ w` is `sw` when `s` and `w` commute and
//! `sws` otherwise. An I*-expression `(i_1, ..., i_k)` evaluates to
//! `s_{i_1} ⋉ (s_{i_2} ⋉ ... ⋉ (s_{i_k} ⋉ 1))`, so the rightmost letter is
//! applied first.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{check_generator, parse_csv, write_csv, Permutation};

/// Largest rank for which full sets of reduced expressions are materialized.
pub const EXPRESSION_RANK_CAP: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Involution(Permutation);

impl Involution {
    pub fn new(perm: Permutation) -> Result<Self> {
        if perm.is_involution() {
            Ok(Self(perm))
        } else {
            Err(Error::NotAnInvolution(perm.to_string()))
        }
    }

    pub fn identity(n: usize) -> Self {
        Self(Permutation::identity(n))
    }

    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Ok(Self(Permutation::generator(n, i)?))
    }

    pub fn perm(&self) -> &Permutation {
        &self.0
    }

    pub fn into_perm(self) -> Permutation {
        self.0
    }

    /// Whether `s_i` commutes with this involution.
    pub fn commutes_with(&self, i: usize) -> bool {
        self.0.left_mul_gen(i) == self.0.right_mul_gen(i)
    }

    /// `s_i ⋉ w`.
    pub fn twist(&self, i: usize) -> Self {
        let sw = self.0.left_mul_gen(i);
        if sw == self.0.right_mul_gen(i) {
            Self(sw)
        } else {
            Self(sw.right_mul_gen(i))
        }
    }

    /// Rank in the graded poset of involutions: the common length of every
    /// reduced I*-expression. Computed greedily, since `s ⋉ w` lowers the
    /// rank exactly when `s` is a left descent of `w`.
    pub fn rho(&self) -> usize {
        let n = self.n();
        let mut w = self.clone();
        let mut k = 0;
        while let Some(i) = (1..n).find(|&i| w.has_left_descent(i)) {
            w = w.twist(i);
            k += 1;
        }
        k
    }
}

impl Deref for Involution {
    type Target = Permutation;

    fn deref(&self) -> &Permutation {
        &self.0
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Involution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }
}

impl Serialize for Involution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Involution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = Permutation::deserialize(d)?;
        Involution::new(p).map_err(serde::de::Error::custom)
    }
}

/// `s_i ⋉ w`, checking the generator index.
pub fn twist(i: usize, w: &Involution) -> Result<Involution> {
    check_generator(w.n(), i)?;
    Ok(w.twist(i))
}

/// A sequence of generator indices read under `⋉`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct IStarWord {
    letters: Vec<u8>,
    #[serde(skip)]
    n: usize,
}

impl IStarWord {
    pub fn new(n: usize, letters: Vec<u8>) -> Result<Self> {
        for &l in &letters {
            check_generator(n, l as usize)?;
        }
        Ok(Self { letters, n })
    }

    pub fn empty(n: usize) -> Self {
        Self { letters: vec![], n }
    }

    pub fn parse(n: usize, s: &str) -> Result<Self> {
        Self::new(n, parse_csv(s)?)
    }

    pub(crate) fn from_letters_unchecked(n: usize, letters: Vec<u8>) -> Self {
        Self { letters, n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Right-to-left fold of `⋉` over the letters, starting from `base`.
    pub fn eval_on(&self, base: &Involution) -> Result<Involution> {
        if base.n() != self.n {
            return Err(Error::RankMismatch(self.n, base.n()));
        }
        Ok(self
            .letters
            .iter()
            .rev()
            .fold(base.clone(), |w, &i| w.twist(i as usize)))
    }

    /// Evaluation starting from the identity.
    pub fn eval(&self) -> Involution {
        self.eval_on(&Involution::identity(self.n)).unwrap()
    }

    pub fn is_reduced(&self) -> bool {
        self.eval().rho() == self.len()
    }

    /// The word with letter `a` (1-based) removed.
    pub fn delete(&self, a: usize) -> Self {
        let mut letters = self.letters.clone();
        letters.remove(a - 1);
        Self { letters, n: self.n }
    }
}

impl fmt::Display for IStarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.letters)
    }
}

impl fmt::Debug for IStarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

pub fn twist_word(word: &IStarWord, w: &Involution) -> Result<Involution> {
    word.eval_on(w)
}

pub fn rho(w: &Involution) -> usize {
    w.rho()
}

/// All involutions of rank `n`, sorted by `(rho, one-line notation)`.
pub fn enumerate_involutions(n: usize) -> Vec<Involution> {
    assert!(n >= 1);
    fn matchings(images: &mut Vec<u8>, out: &mut Vec<Involution>) {
        let Some(i) = images.iter().position(|&x| x == 0) else {
            out.push(Involution(Permutation::new(images.clone()).unwrap()));
            return;
        };
        images[i] = i as u8 + 1;
        matchings(images, out);
        for j in i + 1..images.len() {
            if images[j] == 0 {
                images[i] = j as u8 + 1;
                images[j] = i as u8 + 1;
                matchings(images, out);
                images[j] = 0;
            }
        }
        images[i] = 0;
    }
    let mut out = Vec::new();
    matchings(&mut vec![0; n], &mut out);
    out.sort_by_cached_key(|w| (w.rho(), w.clone()));
    out
}

/// Number of involutions in `S_n` from `I(n) = I(n-1) + (n-1) I(n-2)`,
/// independent of any enumeration.
pub fn involution_number(n: usize) -> usize {
    let (mut a, mut b) = (1usize, 1usize); // I(0), I(1)
    for m in 2..=n {
        let c = b + (m - 1) * a;
        a = b;
        b = c;
    }
    b
}

/// Every reduced I*-expression of `w`, in lexicographic order.
pub fn reduced_istar_expressions(w: &Involution) -> Result<Vec<IStarWord>> {
    let n = w.n();
    if n > EXPRESSION_RANK_CAP {
        return Err(Error::RankTooLarge {
            n,
            cap: EXPRESSION_RANK_CAP,
        });
    }
    let mut memo = HashMap::new();
    let words = expressions_memo(w, &mut memo);
    Ok(words
        .iter()
        .map(|l| IStarWord::from_letters_unchecked(n, l.clone()))
        .collect())
}

fn expressions_memo(
    w: &Involution,
    memo: &mut HashMap<Involution, std::rc::Rc<Vec<Vec<u8>>>>,
) -> std::rc::Rc<Vec<Vec<u8>>> {
    if let Some(r) = memo.get(w) {
        return r.clone();
    }
    let n = w.n();
    let result = if w.is_identity() {
        vec![vec![]]
    } else {
        let mut set = BTreeSet::new();
        for i in (1..n).filter(|&i| w.has_left_descent(i)) {
            for tail in expressions_memo(&w.twist(i), memo).iter() {
                let mut word = Vec::with_capacity(tail.len() + 1);
                word.push(i as u8);
                word.extend_from_slice(tail);
                set.insert(word);
            }
        }
        set.into_iter().collect()
    };
    let result = std::rc::Rc::new(result);
    memo.insert(w.clone(), result.clone());
    result
}

/// The first reduced expression in lexicographic order, without
/// materializing the full set.
pub fn canonical_expression(w: &Involution) -> IStarWord {
    let n = w.n();
    let mut letters = Vec::new();
    let mut cur = w.clone();
    while let Some(i) = (1..n).find(|&i| cur.has_left_descent(i)) {
        letters.push(i as u8);
        cur = cur.twist(i);
    }
    IStarWord::from_letters_unchecked(n, letters)
}

/// `(word, w)` is reduced when `rho(word ⋉ w) = rho(w) + |word|`.
pub fn is_reduced_sequence(word: &IStarWord, w: &Involution) -> Result<bool> {
    Ok(word.eval_on(w)?.rho() == w.rho() + word.len())
}

/// Smallest 1-based index `a` such that deleting letter `a` from the reduced
/// expression `word` leaves a reduced expression of `s ⋉ w`, where `w` is the
/// evaluation of `word`.
pub fn exchange_index(s: usize, word: &IStarWord) -> Result<usize> {
    check_generator(word.n(), s)?;
    let w = word.eval();
    if w.rho() != word.len() {
        return Err(Error::NotReduced {
            word: word.to_string(),
        });
    }
    let target = w.twist(s);
    if target.rho() >= word.len() {
        return Err(Error::Precondition(format!(
            "rho(s_{s} ⋉ w) is not below {} for word {word}",
            word.len()
        )));
    }
    (1..=word.len())
        .find(|&a| word.delete(a).eval() == target)
        .ok_or_else(|| Error::ExchangeViolation {
            s,
            word: word.to_string(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;
    use std::collections::VecDeque;

    fn inv(s: &str) -> Involution {
        s.parse().unwrap()
    }

    fn word(n: usize, s: &str) -> IStarWord {
        IStarWord::parse(n, s).unwrap()
    }

    /// First-reach depth of each involution under `⋉` from the identity.
    fn bfs_rho(n: usize) -> HashMap<Involution, usize> {
        let mut dist = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(Involution::identity(n), 0);
        queue.push_back(Involution::identity(n));
        while let Some(w) = queue.pop_front() {
            let d = dist[&w];
            for i in 1..n {
                let x = w.twist(i);
                if !dist.contains_key(&x) {
                    dist.insert(x.clone(), d + 1);
                    queue.push_back(x);
                }
            }
        }
        dist
    }

    #[test]
    fn twist_examples() {
        let e = Involution::identity(4);
        for i in 1..4 {
            let s = Involution::generator(4, i).unwrap();
            assert_eq!(e.twist(i), s);
            assert_eq!(s.twist(i), e);
        }
        let s2 = Involution::generator(4, 2).unwrap();
        assert_eq!(s2.twist(1).twist(2).twist(1), e);
        let s2s1s2 = crate::perm::Word::parse(4, "2,1,2").unwrap().product();
        assert_eq!(s2.twist(2).twist(1).twist(2).perm(), &s2s1s2);
        assert!(twist(4, &e).is_err());
    }

    #[test]
    fn twist_word_examples() {
        let e = Involution::identity(3);
        assert_eq!(twist_word(&IStarWord::empty(3), &e).unwrap(), e);
        assert_eq!(twist_word(&word(3, "1,2"), &e).unwrap(), inv("3,2,1"));
        for w in enumerate_involutions(4) {
            for s in 1..4u8 {
                let ss = IStarWord::new(4, vec![s, s]).unwrap();
                assert_eq!(twist_word(&ss, &w).unwrap(), w);
            }
        }
    }

    #[test]
    fn rho_examples_and_bfs_oracle() {
        assert_eq!(Involution::identity(3).rho(), 0);
        assert_eq!(Involution::generator(3, 2).unwrap().rho(), 1);
        assert_eq!(inv("3,2,1").rho(), 2);
        for n in 1..=6 {
            let depth = bfs_rho(n);
            assert_eq!(depth.len(), involution_number(n));
            for (w, d) in depth {
                assert_eq!(w.rho(), d, "{w}");
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_involutions(1), vec![Involution::identity(1)]);
        for n in 1..=7 {
            let brute = all_permutations(n)
                .into_iter()
                .filter(Permutation::is_involution)
                .count();
            let listed = enumerate_involutions(n);
            assert_eq!(listed.len(), brute);
            assert_eq!(listed.len(), involution_number(n));
            let uniq: BTreeSet<_> = listed.iter().collect();
            assert_eq!(uniq.len(), listed.len());
        }
        assert_eq!(enumerate_involutions(3).len(), 4);
        assert_eq!(enumerate_involutions(6).len(), 76);
    }

    #[test]
    fn enumeration_order() {
        let list = enumerate_involutions(3);
        let shown: Vec<String> = list.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["1,2,3", "1,3,2", "2,1,3", "3,2,1"]);
        for pair in enumerate_involutions(5).windows(2) {
            assert!((pair[0].rho(), &pair[0]) < (pair[1].rho(), &pair[1]));
        }
    }

    #[test]
    fn expressions_examples() {
        let e = Involution::identity(3);
        assert_eq!(
            reduced_istar_expressions(&e).unwrap(),
            vec![IStarWord::empty(3)]
        );
        let s1 = Involution::generator(3, 1).unwrap();
        assert_eq!(reduced_istar_expressions(&s1).unwrap(), vec![word(3, "1")]);
        let w0 = inv("3,2,1");
        let exprs = reduced_istar_expressions(&w0).unwrap();
        assert_eq!(exprs, vec![word(3, "1,2"), word(3, "2,1")]);
        for x in &exprs {
            assert_eq!(x.eval(), w0);
        }
        assert!(matches!(
            reduced_istar_expressions(&Involution::identity(9)),
            Err(Error::RankTooLarge { .. })
        ));
    }

    #[test]
    fn canonical_expression_is_first() {
        for w in enumerate_involutions(5) {
            let all = reduced_istar_expressions(&w).unwrap();
            assert_eq!(canonical_expression(&w), all[0]);
        }
    }

    /// Every word of length rho(w) over the generators, filtered by evaluation.
    #[test]
    fn expressions_match_brute_force_in_s4() {
        let n = 4;
        let mut by_target: HashMap<Involution, BTreeSet<IStarWord>> = HashMap::new();
        for w in enumerate_involutions(n) {
            let k = w.rho();
            let total = 3usize.pow(k as u32);
            for code in 0..total {
                let mut c = code;
                let letters: Vec<u8> = (0..k)
                    .map(|_| {
                        let l = (c % 3) as u8 + 1;
                        c /= 3;
                        l
                    })
                    .collect();
                let x = IStarWord::new(n, letters).unwrap();
                if x.eval() == w {
                    by_target.entry(w.clone()).or_default().insert(x);
                }
            }
        }
        for w in enumerate_involutions(n) {
            let got: BTreeSet<_> = reduced_istar_expressions(&w).unwrap().into_iter().collect();
            assert_eq!(got, by_target.remove(&w).unwrap_or_default(), "{w}");
        }
    }

    #[test]
    fn reduced_sequence_examples() {
        let s1 = Involution::generator(3, 1).unwrap();
        let s2 = Involution::generator(3, 2).unwrap();
        assert!(is_reduced_sequence(&IStarWord::empty(3), &s1).unwrap());
        assert!(!is_reduced_sequence(&word(3, "1"), &s1).unwrap());
        assert!(is_reduced_sequence(&word(3, "1"), &s2).unwrap());
    }

    #[test]
    fn exchange_examples() {
        assert_eq!(exchange_index(1, &word(2, "1")).unwrap(), 1);
        let w0 = inv("3,2,1");
        for (s, text) in [(2, "1,2"), (1, "2,1")] {
            let x = word(3, text);
            let a = exchange_index(s, &x).unwrap();
            assert_eq!(x.delete(a).eval(), w0.twist(s));
        }
        // s_1 raises rho of s_2
        assert!(matches!(
            exchange_index(1, &word(3, "2")),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            exchange_index(1, &word(3, "1,1")),
            Err(Error::NotReduced { .. })
        ));
    }
}
