use std::collections::BTreeSet;

use langlands_core::root_datum::catalog;
use langlands_core::weyl::{is_relevant_coset, weyl_dual_iso, GaloisAction, RelativeWeylGroup};
use langlands_core::{BasedRootDatum, ParabolicSubset, WeylCoset, WeylGroup};

fn small() -> Vec<(&'static str, BasedRootDatum)> {
    catalog::small_rank_corpus().into_iter().filter(|(_, d)| d.rank() <= 3).collect()
}

fn subsets(l: usize) -> Vec<ParabolicSubset> {
    (0..1usize << l).map(|bits| ParabolicSubset::new((0..l).filter(|i| bits >> i & 1 == 1))).collect()
}

/// Every Cartan-preserving diagram action with a derivable lattice action.
fn actions(d: &BasedRootDatum) -> Vec<(Vec<usize>, GaloisAction)> {
    GaloisAction::cartan_automorphisms(d)
        .into_iter()
        .filter_map(|p| GaloisAction::new(d, vec![p.clone()], None).ok().map(|a| (p, a)))
        .collect()
}

#[test]
fn gln_orders_are_factorials() {
    let mut f = 1;
    for n in 1..=7 {
        f *= n;
        assert_eq!(WeylGroup::generate(&BasedRootDatum::gln(n)).unwrap().order(), f);
    }
}

#[test]
fn coset_reps_are_idempotent_and_constant() {
    for (name, d) in small() {
        let w = WeylGroup::generate(&d).unwrap();
        for s in subsets(d.semisimple_rank()) {
            let wi = w.parabolic_indices(&s);
            for x in 0..w.order() {
                let rep = w.coset_min_rep_idx(x, &s);
                assert_eq!(w.coset_min_rep_idx(rep, &s), rep, "{name}");
                let len = w.element(rep).length();
                for &u in &wi {
                    let y = w.mul_idx(x, u);
                    assert_eq!(w.coset_min_rep_idx(y, &s), rep, "{name}");
                    assert!(w.element(y).length() >= len, "{name}");
                }
            }
        }
    }
}

#[test]
fn split_relative_group_is_the_weyl_group() {
    for (name, d) in small() {
        let w = WeylGroup::generate(&d).unwrap();
        let rel = RelativeWeylGroup::new(&w, &ParabolicSubset::empty(), &GaloisAction::trivial()).unwrap();
        assert_eq!(rel.order(), w.order(), "{name}");
        let members: BTreeSet<usize> = (0..rel.order()).map(|k| rel.group_index(k)).collect();
        for &a in &members {
            for &b in &members {
                assert!(members.contains(&w.mul_idx(a, b)), "{name}: not closed");
            }
        }
    }
}

#[test]
fn relevant_cosets_match_exhaustive_search() {
    let mut checked = 0;
    for (name, d) in small() {
        let w = WeylGroup::generate(&d).unwrap();
        let l = d.semisimple_rank();
        for (perm, action) in actions(&d) {
            let theta = if action.is_trivial() { None } else { Some(action.lattice_matrix(0).clone()) };
            let stable = |s: &ParabolicSubset| s.indices().iter().all(|&i| s.contains(perm[i]));
            // θ u θ⁻¹ = u, tested as θ u = u θ.
            let fixed =
                |u: usize| theta.as_ref().is_none_or(|t| t * w.element(u).matrix() == w.element(u).matrix() * t);
            for base in subsets(l).into_iter().filter(|b| stable(b)) {
                let w0: BTreeSet<usize> = w.parabolic_indices(&base).into_iter().collect();
                let normalizes = |u: usize| {
                    let inv = w.inv_idx(u);
                    w0.iter().map(|&v| w.mul_idx(w.mul_idx(u, v), inv)).collect::<BTreeSet<_>>() == w0
                };
                for s in subsets(l) {
                    let ws = w.parabolic_indices(&s);
                    for x in 0..w.order() {
                        let coset = WeylCoset { rep: w.element(x).clone(), subset: s.clone() };
                        let oracle = s.is_superset_of(&base)
                            && stable(&s)
                            && ws.iter().map(|&v| w.mul_idx(x, v)).any(|u| normalizes(u) && fixed(u));
                        assert_eq!(is_relevant_coset(&w, &coset, &base, &action).unwrap(), oracle, "{name}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn stable_cosets_stay_stable_on_the_dual_side() {
    for (name, d) in small() {
        let dual = d.dual();
        let w = WeylGroup::generate(&d).unwrap();
        let wd = WeylGroup::generate(&dual).unwrap();
        for (_, action) in actions(&d) {
            let moved = action.transport_to_dual();
            for s in subsets(d.semisimple_rank()).into_iter().filter(|s| action.is_stable(s)) {
                for x in 0..w.order() {
                    let rep = w.coset_min_rep_idx(x, &s);
                    if x != rep || !action.fixes(&w, rep) {
                        continue;
                    }
                    let hat = wd.index_of(weyl_dual_iso(w.element(rep), &d).matrix()).unwrap();
                    assert!(moved.is_stable(&s), "{name}");
                    assert!(moved.fixes(&wd, hat), "{name}");
                    assert_eq!(wd.coset_min_rep_idx(hat, &s), hat, "{name}");
                }
            }
        }
    }
}
