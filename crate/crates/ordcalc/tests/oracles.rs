//! Library results against independent implementations.

mod common;

use common::{all_trees, naive_cmp, naive_star, Cnf};
use ordcalc::harness::{enumerate, UniverseSpec};
use ordcalc::norms::walk_length;
use ordcalc::order::{cmp_terms, star};
use ordcalc::{cnorm, f, fundseq_nat, g, gnorm, hardy, valid_bar, valid_t, HardyBudget, OrdTerm, SystemTag};

fn below_eps0(max_norm: u64) -> Vec<(OrdTerm, Cnf)> {
    enumerate(&UniverseSpec::new(SystemTag::Stepwise, max_norm, 0))
        .into_iter()
        .filter_map(|a| Cnf::from_term(&a).map(|c| (a, c)))
        .collect()
}

#[test]
fn order_matches_cantor_normal_form() {
    let u = below_eps0(14);
    assert!(u.len() > 400, "universe too small: {}", u.len());
    for (a, ca) in &u {
        for (b, cb) in &u {
            assert_eq!(cmp_terms(a, b), ca.cmp(cb), "{a} vs {b}");
        }
    }
}

#[test]
fn sequences_match_cantor_normal_form() {
    for (a, ca) in below_eps0(10) {
        for n in 0..5 {
            let v = fundseq_nat(&a, n).unwrap();
            let cv = Cnf::from_term(&v).expect("stays below epsilon_0");
            assert_eq!(cv, ca.fs(n as usize), "{a}[{n}] = {v}");
        }
    }
}

#[test]
fn norms_match_cantor_normal_form() {
    for (a, ca) in below_eps0(10) {
        assert_eq!(cnorm(&a), ca.cnorm(), "{a}");
        assert_eq!(gnorm(&a).unwrap(), ca.gnorm(), "{a}");
    }
}

#[test]
fn hardy_matches_cantor_normal_form() {
    let budget = HardyBudget { max_steps: 300, max_value: 1_000_000 };
    let mut compared = 0;
    for (a, ca) in below_eps0(7) {
        for n in 0..4 {
            let want = ca.hardy(n, 300);
            match hardy(&a, n as u64, budget) {
                Ok(v) => {
                    assert_eq!(Some(v as usize), want, "H_{a}({n})");
                    compared += 1;
                }
                Err(_) => assert_eq!(want, None, "H_{a}({n})"),
            }
        }
    }
    assert!(compared >= 30, "only {compared} values compared");
}

#[test]
fn hardy_agrees_with_walk_length() {
    let budget = HardyBudget { max_steps: 300, max_value: 1_000 };
    for (a, _) in below_eps0(8) {
        for n in 0..4 {
            if let (Ok(h), Ok(w)) = (hardy(&a, n, budget), walk_length(&a, n, budget)) {
                assert_eq!(h, w, "{a} at {n}");
            }
        }
    }
}

#[test]
fn memoized_order_matches_defining_clauses() {
    let u = enumerate(&UniverseSpec::new(SystemTag::Stepwise, 7, 2));
    for a in &u {
        for b in &u {
            assert_eq!(cmp_terms(a, b), naive_cmp(a, b), "{a} vs {b}");
        }
    }
    let ub = enumerate(&UniverseSpec::new(SystemTag::Simultaneous, 6, 2));
    for a in &ub {
        for b in &ub {
            assert_eq!(cmp_terms(a, b), naive_cmp(a, b), "{a} vs {b}");
        }
    }
}

#[test]
fn star_matches_subterm_listing() {
    for a in enumerate(&UniverseSpec::new(SystemTag::Stepwise, 8, 2)) {
        for j in 0..4 {
            assert_eq!(star(&a, j), naive_star(&a, j), "star_{j}({a})");
        }
    }
}

#[test]
fn isomorphism_preserves_order_and_inverts() {
    let u = enumerate(&UniverseSpec::new(SystemTag::Stepwise, 7, 2));
    let image: Vec<OrdTerm> = u.iter().map(|a| f(a).unwrap()).collect();
    for (a, b) in u.iter().zip(&image) {
        assert_eq!(&g(b).unwrap(), a);
    }
    for w in image.windows(2) {
        assert!(naive_cmp(&w[0], &w[1]).is_lt(), "{} < {}", w[0], w[1]);
    }
}

#[test]
fn enumeration_is_complete() {
    let mut brute: Vec<OrdTerm> = (1..=7)
        .flat_map(|n| all_trees(n, 2, SystemTag::Stepwise))
        .filter(valid_t)
        .collect();
    brute.sort_by(cmp_terms);
    assert_eq!(brute, enumerate(&UniverseSpec::new(SystemTag::Stepwise, 7, 2)));

    let image = enumerate(&UniverseSpec::new(SystemTag::Simultaneous, 9, 2));
    let mut reached = 0;
    for b in (1..=6).flat_map(|n| all_trees(n, 2, SystemTag::Simultaneous)).filter(valid_bar) {
        let a = g(&b).unwrap();
        assert_eq!(f(&a).unwrap(), b);
        if cnorm(&a) <= 9 {
            assert!(image.binary_search_by(|x| cmp_terms(x, &b)).is_ok(), "{b} missing");
            reached += 1;
        }
    }
    assert!(reached > 100, "only {reached} simultaneous terms reached");
}
