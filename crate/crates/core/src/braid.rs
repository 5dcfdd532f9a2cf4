//! Braid moves on reduced I*-expressions and the graph they generate.
//!
//! A word `(x_1, ..., x_k)` is read as the sequence `(s_{x_1}, ..., s_{x_k}, 1)`.
//! The moves are commutation of distant neighbours anywhere, replacement of
//! a triple `j, j+1, j` by `j+1, j, j+1` (and back) when at least one letter
//! follows it, and the swap `k, k+1 <-> k+1, k` of the last two letters. A
//! triple in final position is never reduced, so tail positions are served
//! only by the swap.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::istar::{enumerate_involutions, is_reduced_sequence, reduced_istar_expressions};
use crate::istar::{IStarWord, Involution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    Commutation,
    LongBraid,
    TailSwap,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::Commutation => "commutation",
            MoveKind::LongBraid => "long-braid",
            MoveKind::TailSwap => "tail-swap",
        })
    }
}

/// All words one move away from `word`, sorted and without duplicates.
///
/// Every candidate is checked to be reduced and to evaluate to the same
/// involution; a failure is reported as `BraidMoveViolation`.
pub fn braid_neighbors(word: &IStarWord) -> Result<Vec<(IStarWord, MoveKind)>> {
    let target = word.eval();
    if target.rho() != word.len() {
        return Err(Error::NotReduced {
            word: word.to_string(),
        });
    }
    let x = word.letters();
    let k = x.len();
    let mut out = Vec::new();
    let mut push = |letters: Vec<u8>, kind: MoveKind| -> Result<()> {
        let cand = IStarWord::from_letters_unchecked(word.n(), letters);
        if cand.eval() != target || !cand.is_reduced() {
            return Err(Error::BraidMoveViolation {
                kind: kind.to_string(),
                word: word.to_string(),
                result: cand.to_string(),
            });
        }
        out.push((cand, kind));
        Ok(())
    };
    for i in 0..k.saturating_sub(1) {
        let (b, c) = (x[i], x[i + 1]);
        if b.abs_diff(c) > 1 {
            let mut y = x.to_vec();
            y.swap(i, i + 1);
            push(y, MoveKind::Commutation)?;
        }
    }
    for i in 0..k.saturating_sub(3) {
        let (a, b, c) = (x[i], x[i + 1], x[i + 2]);
        if a == c && a.abs_diff(b) == 1 {
            let mut y = x.to_vec();
            y[i] = b;
            y[i + 1] = a;
            y[i + 2] = b;
            push(y, MoveKind::LongBraid)?;
        }
    }
    if k >= 2 && x[k - 2].abs_diff(x[k - 1]) == 1 {
        let mut y = x.to_vec();
        y.swap(k - 2, k - 1);
        push(y, MoveKind::TailSwap)?;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The braid-move graph on all reduced expressions of one involution.
#[derive(Clone, Debug)]
pub struct BraidGraph {
    pub involution: Involution,
    /// Reduced expressions in lexicographic order.
    pub vertices: Vec<IStarWord>,
    /// `(i, j, kind)` with `i < j`, indices into `vertices`.
    pub edges: Vec<(usize, usize, MoveKind)>,
}

impl BraidGraph {
    pub fn build(w: &Involution) -> Result<Self> {
        let vertices = reduced_istar_expressions(w)?;
        let index: HashMap<&[u8], usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.letters(), i))
            .collect();
        let mut edges = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            for (nb, kind) in braid_neighbors(v)? {
                let j = *index
                    .get(nb.letters())
                    .ok_or_else(|| Error::BraidMoveViolation {
                        kind: kind.to_string(),
                        word: v.to_string(),
                        result: nb.to_string(),
                    })?;
                if i < j {
                    edges.push((i, j, kind));
                }
            }
        }
        Ok(Self {
            involution: w.clone(),
            vertices,
            edges,
        })
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(i, j, _) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph \"{}\" {{", self.involution);
        for v in &self.vertices {
            let _ = writeln!(s, "  \"{v}\";");
        }
        for &(i, j, kind) in &self.edges {
            let _ = writeln!(
                s,
                "  \"{}\" -- \"{}\" [label=\"{kind}\"];",
                self.vertices[i], self.vertices[j]
            );
        }
        s.push_str("}\n");
        s
    }
}

/// Distances from `start`; `usize::MAX` marks unreachable vertices.
fn bfs(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([start]);
    dist[start] = 0;
    while let Some(v) = queue.pop_front() {
        for &nb in &adj[v] {
            if dist[nb] == usize::MAX {
                dist[nb] = dist[v] + 1;
                queue.push_back(nb);
            }
        }
    }
    dist
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub n: usize,
    pub involution: Involution,
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    /// Double-BFS estimate: exact on trees, a lower bound in general.
    pub diameter: usize,
}

pub fn verify_connectivity(w: &Involution) -> Result<ConnectivityReport> {
    let graph = BraidGraph::build(w)?;
    let adj = graph.adjacency();
    let first = bfs(&adj, 0);
    let connected = first.iter().all(|&d| d != usize::MAX);
    let diameter = if connected {
        let far = (0..first.len())
            .max_by_key(|&i| (first[i], usize::MAX - i))
            .unwrap();
        *bfs(&adj, far).iter().max().unwrap()
    } else {
        0
    };
    Ok(ConnectivityReport {
        n: w.n(),
        involution: w.clone(),
        vertices: graph.vertices.len(),
        edges: graph.edges.len(),
        connected,
        diameter,
    })
}

/// Connectivity reports for every involution of rank `n`, in canonical
/// order. Runs on the current rayon pool.
pub fn verify_connectivity_rank(n: usize) -> Result<Vec<ConnectivityReport>> {
    enumerate_involutions(n)
        .par_iter()
        .map(verify_connectivity)
        .collect()
}

pub fn braid_graph_dot(w: &Involution) -> Result<String> {
    Ok(BraidGraph::build(w)?.to_dot())
}

/// Which of the mutually exclusive configurations a braid pattern is in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Trichotomy {
    /// Pattern `(j, j±1, j)` followed by `w`; cases `'a'..='c'`.
    Triple(char),
    /// Pattern `(a, b)` with `|a - b| > 1` followed by `w`; cases `'a'..='d'`.
    Distant(char),
}

/// Commutation flags along `letters` applied right to left to `base`:
/// entry `t` tells whether the `t`-th generator applied commutes with the
/// involution it is applied to.
fn commutation_flags(letters: &[u8], base: &Involution) -> Vec<bool> {
    let mut w = base.clone();
    let mut flags = Vec::with_capacity(letters.len());
    for &s in letters.iter().rev() {
        flags.push(w.commutes_with(s as usize));
        w = w.twist(s as usize);
    }
    flags
}

/// Classifies the reduced sequence `(word, base)` where `word` is either a
/// triple `j, j±1, j` or a pair of distant letters.
pub fn check_case_trichotomy(word: &IStarWord, base: &Involution) -> Result<Trichotomy> {
    let x = word.letters();
    let triple = x.len() == 3 && x[0] == x[2] && x[0].abs_diff(x[1]) == 1;
    let distant = x.len() == 2 && x[0].abs_diff(x[1]) > 1;
    if !triple && !distant {
        return Err(Error::Precondition(format!(
            "({word}) is neither j, j±1, j nor a pair of distant letters"
        )));
    }
    if !is_reduced_sequence(word, base)? {
        return Err(Error::Precondition(format!(
            "({word}, {base}) is not a reduced sequence"
        )));
    }
    let swapped: Vec<u8> = if triple {
        vec![x[1], x[0], x[1]]
    } else {
        vec![x[1], x[0]]
    };
    let f = commutation_flags(x, base);
    let g = commutation_flags(&swapped, base);
    let (c, n) = (true, false);
    let found = if triple {
        let cases = [
            ('a', [n, n, n], [n, n, n]),
            ('b', [n, n, c], [c, n, n]),
            ('c', [c, n, n], [n, n, c]),
        ];
        cases
            .iter()
            .find(|(_, p, q)| f == p && g == q)
            .map(|&(k, ..)| Trichotomy::Triple(k))
    } else {
        let cases = [
            ('a', [n, n], [n, n]),
            ('b', [c, n], [n, c]),
            ('c', [n, c], [c, n]),
            ('d', [c, c], [c, c]),
        ];
        // f starts with the generator applied first, s_b
        let (fa, fb) = (&g, &f);
        cases
            .iter()
            .find(|(_, p, q)| fa == p && fb == q)
            .map(|&(k, ..)| Trichotomy::Distant(k))
    };
    found.ok_or_else(|| Error::NoCaseMatched(format!("({word}, {base}): flags {f:?} / {g:?}")))
}

/// Classifies every occurrence of either pattern inside a reduced
/// expression, with the remaining suffix as the base involution.
pub fn classify_occurrences(word: &IStarWord) -> Result<Vec<(usize, Trichotomy)>> {
    let x = word.letters();
    let n = word.n();
    let mut out = Vec::new();
    for p in 0..x.len() {
        let suffix = |from: usize| IStarWord::from_letters_unchecked(n, x[from..].to_vec()).eval();
        for len in [2, 3] {
            if p + len > x.len() {
                continue;
            }
            let pat = &x[p..p + len];
            let hit = match len {
                2 => pat[0].abs_diff(pat[1]) > 1,
                _ => pat[0] == pat[2] && pat[0].abs_diff(pat[1]) == 1,
            };
            if hit {
                let part = IStarWord::from_letters_unchecked(n, pat.to_vec());
                out.push((p + 1, check_case_trichotomy(&part, &suffix(p + len))?));
            }
        }
    }
    Ok(out)
}
