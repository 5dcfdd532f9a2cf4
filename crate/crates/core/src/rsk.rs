//! Partitions, standard Young tableaux and Robinson–Schensted row insertion.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::istar::enumerate_involutions;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::Parse(format!("{parts:?} is not a partition")));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Self { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n`, in reverse lexicographic order `(n), (n-1,1), ...`.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A filling of a Young diagram with `1..n`, increasing along rows and down
/// columns.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = Self { rows };
        if !t.is_standard() {
            return Err(Error::Parse(format!(
                "{:?} is not a standard tableau",
                t.rows
            )));
        }
        Ok(t)
    }

    fn is_standard(&self) -> bool {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        for row in &self.rows {
            for &x in row {
                if x == 0 || x > n || std::mem::replace(&mut seen[x], true) {
                    return false;
                }
            }
        }
        let shape_ok = !self.rows.iter().any(Vec::is_empty)
            && self.rows.windows(2).all(|r| r[0].len() >= r[1].len());
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|p| p[0] < p[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|r| r[1].iter().zip(&r[0]).all(|(lo, hi)| lo > hi));
        shape_ok && rows_ok && cols_ok
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition {
            parts: self.rows.iter().map(Vec::len).collect(),
        }
    }
}

/// Rows as a right-aligned grid, one line per row.
impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.size().to_string().len();
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

/// Row insertion of `w(1), ..., w(n)`: each value bumps the smallest larger
/// entry of a row into the next row. `Q` records where each step ended.
pub fn rsk_insert(w: &Permutation) -> (StandardTableau, StandardTableau) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, &x) in w.images().iter().enumerate() {
        let mut x = x as usize;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![x]);
                q.push(vec![step + 1]);
                break;
            }
            match p[r].iter().position(|&y| y > x) {
                Some(j) => {
                    x = std::mem::replace(&mut p[r][j], x);
                    r += 1;
                }
                None => {
                    p[r].push(x);
                    q[r].push(step + 1);
                    break;
                }
            }
        }
    }
    (StandardTableau { rows: p }, StandardTableau { rows: q })
}

/// All standard tableaux of shape `shape`, generated by placing the largest
/// entry in each removable corner.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    fn go(shape: &mut Vec<usize>) -> Vec<Vec<Vec<usize>>> {
        let n: usize = shape.iter().sum();
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut result = Vec::new();
        for r in 0..shape.len() {
            let corner = r + 1 == shape.len() || shape[r + 1] < shape[r];
            if !corner {
                continue;
            }
            shape[r] -= 1;
            let popped = shape[r] == 0;
            if popped {
                shape.pop();
            }
            for mut t in go(shape) {
                if t.len() == r {
                    t.push(Vec::new());
                }
                t[r].push(n);
                result.push(t);
            }
            if popped {
                shape.push(0);
            }
            shape[r] += 1;
        }
        result
    }
    let mut out: Vec<StandardTableau> = go(&mut shape.parts.clone())
        .into_iter()
        .map(|rows| StandardTableau { rows })
        .collect();
    out.sort();
    out
}

pub fn std_count(shape: &Partition) -> usize {
    standard_tableaux(shape).len()
}

/// `n! / prod(hook lengths)`.
pub fn hook_length_count(shape: &Partition) -> u128 {
    let conj = shape.conjugate();
    let num: u128 = (1..=shape.size() as u128).product();
    let mut den: u128 = 1;
    for (i, &row) in shape.parts.iter().enumerate() {
        for j in 0..row {
            let hook = (row - j - 1) + (conj.parts[j] - i - 1) + 1;
            den *= hook as u128;
        }
    }
    num / den
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountIdentity {
    pub n: usize,
    /// Sum of `#Std(shape)` over all partitions of `n`.
    pub lhs: usize,
    /// Number of involutions of `S_n`.
    pub rhs: usize,
    pub equal: bool,
}

pub fn involution_count_identity(n: usize) -> CountIdentity {
    let lhs = partitions(n).iter().map(std_count).sum();
    let rhs = enumerate_involutions(n).len();
    CountIdentity {
        n,
        lhs,
        rhs,
        equal: lhs == rhs,
    }
}
