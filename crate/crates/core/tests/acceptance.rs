//! Exhaustive checks at desk scale, one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so every criterion is reported
//! even when an earlier one fails. Exits nonzero if any criterion fails.

use std::collections::{HashSet, VecDeque};
use std::process::ExitCode;
use std::time::Instant;

use invhecke::braid::{braid_neighbors, verify_connectivity_rank};
use invhecke::eta::{check_homomorphism, check_well_defined, dim_image, EtaTable, DEFAULT_SEED};
use invhecke::istar::{
    enumerate_involutions, exchange_index, involution_number, reduced_istar_expressions,
};
use invhecke::lvmodule::{act, bar_m};
use invhecke::perm::all_permutations;
use invhecke::rsk::{involution_count_identity, partitions, rsk_insert, std_count};
use invhecke::{HeckeElement, LaurentPoly, LvTable, MElement};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn involution_combinatorics() -> Outcome {
    let mut checked = 0usize;
    for n in 1..=6 {
        // rank by first-reach depth, independent of the descent recursion
        let mut depth = std::collections::HashMap::new();
        let mut queue = VecDeque::new();
        let e = invhecke::Involution::identity(n);
        depth.insert(e.clone(), 0usize);
        queue.push_back(e);
        while let Some(w) = queue.pop_front() {
            let d = depth[&w];
            for s in 1..n {
                let x = w.twist(s);
                if !depth.contains_key(&x) {
                    depth.insert(x.clone(), d + 1);
                    queue.push_back(x);
                }
            }
        }
        for w in enumerate_involutions(n) {
            let r = w.rho();
            ensure(depth[&w] == r, || format!("rank of {w}"))?;
            for s in 1..n {
                let x = w.twist(s);
                ensure(x.twist(s) == w, || format!("s_{s} ⋉ s_{s} ⋉ {w} != {w}"))?;
                let down = w.has_left_descent(s);
                let expected = if down { r - 1 } else { r + 1 };
                ensure(x.rho() == expected, || format!("rank step at {w}, s_{s}"))?;
                if !w.commutes_with(s) {
                    let l = w.length();
                    let a = w.left_mul_gen(s).length() == l + 1;
                    let b = w.right_mul_gen(s).length() == l + 1;
                    let c = x.length() == l + 2;
                    ensure(a == b && b == c, || {
                        format!("length criterion at {w}, s_{s}")
                    })?;
                }
            }
            let words = reduced_istar_expressions(&w).map_err(|e| e.to_string())?;
            for word in &words {
                ensure(word.len() == r && word.eval() == w, || {
                    format!("expression {word} of {w}")
                })?;
                for s in (1..n).filter(|&s| w.twist(s).rho() < r) {
                    let a = exchange_index(s, word).map_err(|e| e.to_string())?;
                    ensure(word.delete(a).eval() == w.twist(s), || {
                        format!("exchange of s_{s} in {word}")
                    })?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} expressions"))
}

fn braid_connectivity() -> Outcome {
    let mut graphs = 0;
    let mut moves = 0;
    for n in 1..=6 {
        for r in verify_connectivity_rank(n).map_err(|e| e.to_string())? {
            ensure(r.connected, || {
                format!("graph of {} is disconnected", r.involution)
            })?;
            graphs += 1;
        }
        for w in enumerate_involutions(n) {
            for word in reduced_istar_expressions(&w).map_err(|e| e.to_string())? {
                for (nb, kind) in braid_neighbors(&word).map_err(|e| e.to_string())? {
                    ensure(nb.eval() == w && nb.len() == word.len(), || {
                        format!("{kind} move {word} -> {nb}")
                    })?;
                    moves += 1;
                }
            }
        }
    }
    Ok(format!("{graphs} graphs connected, {moves} moves checked"))
}

fn module_relations() -> Outcome {
    let u2 = LaurentPoly::u_pow(2);
    let mut checked = 0;
    for n in 2..=5 {
        for w in enumerate_involutions(n) {
            let a = MElement::basis(w.clone());
            for s in 1..n {
                // (T_s + 1)(T_s - u^2) a = 0
                let y = a.act_gen(s).sub(&a.scale(&u2)).unwrap();
                let rel = y.act_gen(s).add(&y).unwrap();
                ensure(rel.is_zero(), || {
                    format!("quadratic relation at {w}, s_{s}")
                })?;
                for t in (s + 1)..n {
                    let word: &[&[usize]] = if t == s + 1 {
                        &[&[s, t, s], &[t, s, t]]
                    } else {
                        &[&[s, t], &[t, s]]
                    };
                    let run = |letters: &[usize]| {
                        letters.iter().rev().fold(a.clone(), |m, &g| m.act_gen(g))
                    };
                    ensure(run(word[0]) == run(word[1]), || {
                        format!("relation between s_{s} and s_{t} at {w}")
                    })?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (s, a_w) pairs"))
}

fn bar_involution() -> Outcome {
    let c = LaurentPoly::from_terms([(2, 1), (-1, -3)]);
    for n in 1..=4 {
        for x in all_permutations(n) {
            let h = HeckeElement::basis(x.clone()).scale(&c);
            ensure(h.bar().bar() == h, || format!("bar^2 on T_{x}"))?;
        }
        for w in enumerate_involutions(n) {
            let m = MElement::basis(w.clone()).scale(&c);
            ensure(bar_m(&bar_m(&m)) == m, || format!("bar^2 on a_{w}"))?;
        }
    }
    let mut pairs = 0;
    for x in all_permutations(3) {
        let h = HeckeElement::basis(x.clone());
        for w in enumerate_involutions(3) {
            let m = MElement::basis(w.clone());
            let lhs = bar_m(&act(&h, &m).map_err(|e| e.to_string())?);
            let rhs = act(&h.bar(), &bar_m(&m)).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("bar(T_{x} a_{w})"))?;
            pairs += 1;
        }
    }
    Ok(format!(
        "bar^2 = id for n <= 4, {pairs} compatible pairs in S_3"
    ))
}

fn lv_basis() -> Outcome {
    let table = LvTable::new(4).map_err(|e| e.to_string())?;
    let mut nonzero = 0;
    for w in table.involutions() {
        let a = table.get(w).ok_or("missing A_w")?;
        ensure(bar_m(&a.expansion) == a.expansion, || {
            format!("A_{w} not bar-invariant")
        })?;
        ensure(table.psigma(w, w).is_one(), || format!("P_{{w,w}} at {w}"))?;
        for y in table.involutions().iter().filter(|y| *y != w) {
            let p = table.psigma(y, w);
            let below = y.bruhat_leq(w).map_err(|e| e.to_string())?;
            if p.is_zero() {
                continue;
            }
            nonzero += 1;
            ensure(below, || {
                format!("P_{{{y},{w}}} = {p} but {y} is not below {w}")
            })?;
            let bound = (w.length() as i32 - y.length() as i32 - 1).div_euclid(2);
            ensure(
                p.is_u_polynomial() && p.u_degree().unwrap_or(0) <= bound,
                || format!("P_{{{y},{w}}} = {p} breaks the degree bound"),
            )?;
        }
    }
    Ok(format!(
        "{} involutions, {nonzero} off-diagonal polynomials",
        table.involutions().len()
    ))
}

fn theta_well_defined() -> Outcome {
    let r = check_well_defined(5);
    if let Some(word) = r.not_divisible {
        return Err(format!("division by u+1 fails along {word}"));
    }
    if let Some((a, b)) = r.counterexample {
        return Err(format!("{a} and {b} give different elements"));
    }
    Ok(format!("{} expressions", r.expressions))
}

fn homomorphism() -> Outcome {
    let table = EtaTable::new(5).map_err(|e| e.to_string())?;
    match check_homomorphism(&table) {
        None => Ok(format!(
            "{} generator-involution pairs",
            4 * involution_number(5)
        )),
        Some((s, w)) => Err(format!("eta(T_{s} a_{w}) != T_{s} eta(a_{w})")),
    }
}

fn dimension_equality() -> Outcome {
    let mut dims = Vec::new();
    for n in 1..=6 {
        let cert = dim_image(n, DEFAULT_SEED).map_err(|e| e.to_string())?;
        let brute = all_permutations(n)
            .iter()
            .filter(|p| p.is_involution())
            .count();
        let recurrence = involution_number(n);
        let tableaux: usize = partitions(n).iter().map(std_count).sum();
        ensure(
            cert.rank == brute && brute == recurrence && recurrence == tableaux,
            || {
                format!(
                    "n={n}: rank {} vs {brute}/{recurrence}/{tableaux}",
                    cert.rank
                )
            },
        )?;
        ensure(involution_count_identity(n).equal, || {
            format!("count identity at n={n}")
        })?;
        dims.push(cert.rank.to_string());
    }
    Ok(format!("dims {}", dims.join(", ")))
}

fn rsk_properties() -> Outcome {
    for n in 1..=6 {
        let mut seen = HashSet::new();
        for w in all_permutations(n) {
            let (p, q) = rsk_insert(&w);
            ensure(p.shape() == q.shape(), || format!("shapes differ at {w}"))?;
            ensure(q == rsk_insert(&w.inverse()).0, || {
                format!("Q({w}) != P(w^-1)")
            })?;
            ensure((p == q) == w.is_involution(), || {
                format!("P = Q test at {w}")
            })?;
            ensure(seen.insert((p, q)), || format!("collision at {w}"))?;
        }
        let pairs: usize = partitions(n).iter().map(|l| std_count(l).pow(2)).sum();
        ensure(seen.len() == pairs, || format!("n={n}: image misses pairs"))?;
    }
    Ok("bijective for n <= 6".to_string())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("involution combinatorics, n <= 6", involution_combinatorics),
        ("braid-move connectivity, n <= 6", braid_connectivity),
        ("module relations on M, n <= 5", module_relations),
        ("bar involution", bar_involution),
        ("A_w and P_{y,w} on S_4", lv_basis),
        ("theta well-defined on S_5", theta_well_defined),
        ("eta is a module map on S_5", homomorphism),
        ("dim H X_∅ = #involutions, n <= 6", dimension_equality),
        ("RSK properties, n <= 6", rsk_properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".to_string()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
