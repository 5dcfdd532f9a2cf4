use invhecke::hecke::t_inverse;
use invhecke::istar::enumerate_involutions;
use invhecke::lvmodule::{act, act_gen, bar_m};
use invhecke::perm::all_permutations;
use invhecke::{HeckeElement, Involution, LaurentPoly, LvTable, MElement, Permutation};

fn u(e: i32) -> LaurentPoly {
    LaurentPoly::u_pow(e)
}

fn apply(letters: &[usize], m: &MElement) -> MElement {
    letters
        .iter()
        .rev()
        .fold(m.clone(), |acc, &s| act_gen(s, &acc).unwrap())
}

#[test]
fn quadratic_relation_up_to_rank_five() {
    for n in 2..=5 {
        for w in enumerate_involutions(n) {
            let a = MElement::basis(w);
            for s in 1..n {
                let once = a.act_gen(s);
                let twice = once.act_gen(s);
                // T_s^2 = (u^2 - 1) T_s + u^2
                let rhs = once
                    .scale(&(&u(2) - &LaurentPoly::one()))
                    .add(&a.scale(&u(2)))
                    .unwrap();
                assert_eq!(twice, rhs, "n={n} s={s}");
            }
        }
    }
}

#[test]
fn braid_relations_up_to_rank_five() {
    for n in 2..=5 {
        for w in enumerate_involutions(n) {
            let a = MElement::basis(w);
            for s in 1..n {
                for t in (s + 1)..n {
                    if t == s + 1 {
                        assert_eq!(apply(&[s, t, s], &a), apply(&[t, s, t], &a));
                    } else {
                        assert_eq!(apply(&[s, t], &a), apply(&[t, s], &a));
                    }
                }
            }
        }
    }
}

#[test]
fn action_of_products_is_composition_on_s3() {
    let n = 3;
    let perms = all_permutations(n);
    for x in &perms {
        for y in &perms {
            let tx = HeckeElement::basis(x.clone());
            let ty = HeckeElement::basis(y.clone());
            let txy = tx.mul(&ty).unwrap();
            for w in enumerate_involutions(n) {
                let a = MElement::basis(w);
                let lhs = act(&txy, &a).unwrap();
                let rhs = act(&tx, &act(&ty, &a).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn bar_squares_to_identity_up_to_rank_four() {
    let c = LaurentPoly::from_terms([(3, 1), (0, -2), (-1, 5)]);
    for n in 1..=4 {
        for x in all_permutations(n) {
            let h = HeckeElement::basis(x).scale(&c);
            assert_eq!(h.bar().bar(), h);
        }
        for w in enumerate_involutions(n) {
            let a = MElement::basis(w).scale(&c);
            assert_eq!(bar_m(&bar_m(&a)), a);
        }
    }
}

#[test]
fn bar_is_semilinear_on_basis_pairs_of_s3() {
    let n = 3;
    for x in all_permutations(n) {
        let h = HeckeElement::basis(x);
        for w in enumerate_involutions(n) {
            let a = MElement::basis(w);
            let lhs = bar_m(&act(&h, &a).unwrap());
            let rhs = act(&h.bar(), &bar_m(&a)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn hecke_bar_of_generator() {
    // bar(T_s) = T_s^-1 = u^-2 T_s + (u^-2 - 1)
    let s = Permutation::generator(3, 1).unwrap();
    let mut expected = HeckeElement::basis(s.clone()).scale(&u(-2));
    expected.add_term(Permutation::identity(3), &u(-2) - &LaurentPoly::one());
    assert_eq!(HeckeElement::basis(s.clone()).bar(), expected);
    assert_eq!(t_inverse(&s), expected);
}

#[test]
fn lv_basis_properties_up_to_rank_five() {
    for n in 1..=5 {
        let table = LvTable::new(n).unwrap();
        for w in table.involutions() {
            let a = table.get(w).unwrap();
            assert_eq!(bar_m(&a.expansion), a.expansion, "{w}");
            // A_w = v^-l(w) sum_y P_{y,w} a_y
            let mut rebuilt = MElement::zero(n);
            for y in table.involutions() {
                let p = table.psigma(y, w);
                if p.is_zero() {
                    continue;
                }
                rebuilt.add_term(y.clone(), p.shift(-(w.length() as i32)));
                assert!(y.bruhat_leq(w).unwrap(), "{y} {w}");
                if y != w {
                    assert!(p.is_u_polynomial());
                    let bound = (w.length() as i32 - y.length() as i32 - 1).div_euclid(2);
                    assert!(p.u_degree().unwrap() <= bound, "{y} {w} {p}");
                }
            }
            assert_eq!(rebuilt, a.expansion);
            assert!(table.psigma(w, w).is_one());
        }
    }
}

#[test]
fn psigma_of_longest_involution_in_s3() {
    let table = LvTable::new(3).unwrap();
    let w0: Involution = "3,2,1".parse().unwrap();
    // every involution lies below w0
    for y in table.involutions() {
        assert!(!table.psigma(y, &w0).is_zero(), "{y}");
    }
}
