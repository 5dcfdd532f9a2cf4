//! The symmetric group in one-line notation.
//!
//! A [`Permutation`] of rank `n` stores `w(1), ..., w(n)`. Products follow
//! the convention `(p * q)(i) = p(q(i))`, so the right factor acts first.
//! The generator `s_i` is the transposition `(i, i+1)`; multiplying by it on
//! the left swaps the *values* `i, i+1`, on the right it swaps the
//! *positions* `i, i+1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation (values `1..=n`).
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("rank {n} out of range")));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1 && n <= u8::MAX as usize);
        Self {
            images: (1..=n as u8).collect(),
        }
    }

    /// The simple transposition `s_i = (i, i+1)`, `1 <= i < n`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        check_generator(n, i)?;
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    /// The longest element `[n, n-1, ..., 1]`.
    pub fn longest(n: usize) -> Self {
        Self {
            images: (1..=n as u8).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, &x)| x as usize == k + 1)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch(self.n(), other.n()));
        }
        Ok(Self {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize - 1])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u8; self.n()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = (k + 1) as u8;
        }
        Self { images }
    }

    /// Number of inversions, which is the Coxeter length.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, &x)| self.images[x as usize - 1] as usize == k + 1)
    }

    /// `s_i * w`. Panics if `i` is not a generator index.
    pub fn left_mul_gen(&self, i: usize) -> Self {
        let mut images = self.images.clone();
        for x in images.iter_mut() {
            if *x as usize == i {
                *x += 1;
            } else if *x as usize == i + 1 {
                *x -= 1;
            }
        }
        Self { images }
    }

    /// `w * s_i`.
    pub fn right_mul_gen(&self, i: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Self { images }
    }

    /// `l(s_i w) < l(w)`, i.e. `i + 1` appears to the left of `i`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let pos = |v: u8| self.images.iter().position(|&x| x == v).unwrap();
        pos(i as u8 + 1) < pos(i as u8)
    }

    /// `l(w s_i) < l(w)`, i.e. `w(i) > w(i+1)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.images[i - 1] > self.images[i]
    }

    /// Bruhat order by the rank-matrix criterion: `p <= q` iff for all
    /// `i, j`, `#{a <= i : p(a) >= j} <= #{a <= i : q(a) >= j}`.
    pub fn bruhat_leq(&self, other: &Self) -> Result<bool> {
        let n = self.n();
        if n != other.n() {
            return Err(Error::RankMismatch(n, other.n()));
        }
        // counts[j] = #{a <= i : w(a) >= j + 1} for the current prefix i
        let mut cp = vec![0i32; n + 1];
        let mut cq = vec![0i32; n + 1];
        for i in 0..n {
            let (x, y) = (self.images[i] as usize, other.images[i] as usize);
            for j in 0..x {
                cp[j] += 1;
            }
            for j in 0..y {
                cq[j] += 1;
            }
            if cp.iter().zip(&cq).any(|(a, b)| a > b) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical reduced word, obtained by repeatedly stripping the smallest
    /// left descent: `w = s_{i_1} s_{i_2} ... s_{i_k}`.
    pub fn reduced_word(&self) -> Word {
        let n = self.n();
        let mut letters = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while let Some(i) = (1..n).find(|&i| w.has_left_descent(i)) {
            letters.push(i as u8);
            w = w.left_mul_gen(i);
        }
        Word { n, letters }
    }

    /// Sort key `(length, one-line notation)`.
    pub fn length_lex_cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.images.cmp(&other.images))
    }
}

pub(crate) fn check_generator(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        Err(Error::InvalidGenerator { index: i, n })
    } else {
        Ok(())
    }
}

/// All permutations of rank `n` in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    let mut out = vec![Permutation {
        images: cur.clone(),
    }];
    loop {
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(Permutation {
            images: cur.clone(),
        });
    }
    out
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.images)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_csv(s)?)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A word in the generators `s_1, ..., s_{n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word {
    n: usize,
    letters: Vec<u8>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<u8>) -> Result<Self> {
        for &l in &letters {
            check_generator(n, l as usize)?;
        }
        Ok(Self { n, letters })
    }

    pub fn parse(n: usize, s: &str) -> Result<Self> {
        Self::new(n, parse_csv(s)?)
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

    /// `s_{i_1} s_{i_2} ... s_{i_k}`.
    pub fn product(&self) -> Permutation {
        self.letters
            .iter()
            .rev()
            .fold(Permutation::identity(self.n), |w, &i| {
                w.left_mul_gen(i as usize)
            })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.letters)
    }
}

pub(crate) fn write_csv(f: &mut fmt::Formatter<'_>, xs: &[u8]) -> fmt::Result {
    for (k, x) in xs.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

pub(crate) fn parse_csv(s: &str) -> Result<Vec<u8>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u8>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        })
        .collect()
}
