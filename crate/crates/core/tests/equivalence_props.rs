mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use regeq::alphabet::Alphabet;
use regeq::automata::{align_dfas, determinize, Dfa, Nfa};
use regeq::equivalence::*;
use regeq::gen::{gen_nfa, gen_regex, worst_case_nfa, worst_case_regex, GenParams};
use regeq::minimize::hopcroft_minimize;
use regeq::regex::{
    brzozowski_automaton, brzozowski_automaton_with_states, canonical_key, parse,
    partial_derivative_nfa, Regex,
};

fn ab() -> Alphabet {
    Alphabet::first(2)
}

fn arb_pair() -> impl Strategy<Value = (Dfa, Dfa)> {
    (1usize..=8, 1usize..=8, 1usize..=2, any::<u64>(), 0u8..3).prop_map(|(n, m, k, seed, mode)| {
        let mut g = rng(seed);
        let a = random_dfa(&mut g, n, k);
        let b = match mode {
            0 => random_dfa(&mut g, m, k),
            1 => permute_dfa(&hopcroft_minimize(&a), &mut g),
            _ => flip_reachable_final(&a, &mut g),
        };
        (a, b)
    })
}

fn check_witness(a: &Dfa, b: &Dfa, r: &EquivalenceReport) {
    match &r.witness {
        None => assert!(r.equivalent),
        Some(w) => {
            assert!(!r.equivalent);
            assert_ne!(dfa_accepts(a, w), dfa_accepts(b, w), "witness {w:?}");
        }
    }
}

#[test]
fn family_constructions_are_equivalent() {
    let a3 = worst_case_regex(3);
    let x = hopcroft_minimize(&determinize(&partial_derivative_nfa(&a3, &ab())));
    let y = hopcroft_minimize(&brzozowski_automaton(&a3, &ab()));
    let r = hk(&x, &y);
    assert!(r.equivalent);
}

#[test]
fn nfa_examples() {
    let f = worst_case_nfa(3).unwrap();
    let m = hopcroft_minimize(&determinize(&f));
    assert!(hke(&f, &m.to_nfa()).equivalent);

    let a2 = worst_case_regex(2);
    let pd = partial_derivative_nfa(&a2, &ab());
    let bz = brzozowski_automaton(&a2, &ab());
    assert!(hke(&pd, &bz.to_nfa()).equivalent);

    // flip a reachable final bit
    let flipped = Nfa::new(
        f.alphabet().clone(),
        f.num_states(),
        f.transitions().collect::<Vec<_>>(),
        f.initials().to_vec(),
        [1, 3],
    )
    .unwrap();
    let r = hke(&f, &flipped);
    assert!(!r.equivalent);
    let w = r.witness.unwrap();
    assert_ne!(nfa_accepts(&f, &w), nfa_accepts(&flipped, &w));
}

#[test]
fn regex_examples() {
    let r = parse("(a+b)*", &ab()).unwrap();
    let rep = am(&r, &r, &ab()).unwrap();
    assert!(rep.equivalent);
    assert!(rep.iterations <= brzozowski_automaton(&r, &ab()).num_states());
    let s = parse("(b+a)*", &ab()).unwrap();
    assert!(am(&r, &s, &ab()).unwrap().equivalent);
    assert!(equiv_uf(&r, &s, &ab()).unwrap().equivalent);
}

#[test]
fn reconverted_family_member_agrees_with_hk() {
    let a2 = worst_case_regex(2);
    let min = hopcroft_minimize(&brzozowski_automaton(&a2, &ab()));
    let back = state_elimination(&min);
    for w in words(&ab(), 6) {
        assert_eq!(regex_matches(&back, &w), regex_matches(&a2, &w));
    }
    let via_am = am(&a2, &back, &ab()).unwrap();
    let via_hk = hk(
        &brzozowski_automaton(&a2, &ab()),
        &brzozowski_automaton(&back, &ab()),
    );
    assert!(via_am.equivalent);
    assert_eq!(via_am.equivalent, via_hk.equivalent);
}

#[test]
fn alphabets_are_aligned() {
    // {a}* over {a} vs a* over {a, b}: b is rejected by the first after alignment
    let a = Dfa::new(Alphabet::first(1), vec![vec![0]], 0, vec![true]).unwrap();
    let b = Dfa::new(ab(), vec![vec![0, 1], vec![1, 1]], 0, vec![true, false]).unwrap();
    for r in [
        hk(&a, &b),
        hki(&a, &b),
        hkn(&a, &b).report,
        hke(&a.to_nfa(), &b.to_nfa()),
    ] {
        assert!(r.equivalent, "{r}");
    }
    let c = Dfa::new(ab(), vec![vec![0, 0]], 0, vec![true]).unwrap();
    let r = hki(&a, &c);
    assert_eq!(r.witness.as_deref(), Some("b"));
}

#[test]
fn union_find_never_pushes_more_than_pair_history() {
    // on equivalent inputs the union-find walk is a pruned version of the
    // pair walk
    let mut g = rng(5);
    let mut violations = Vec::new();
    for seed in 0..1000u64 {
        let p = GenParams {
            size: 1 + (seed % 20) as usize,
            seed,
            ..GenParams::default()
        };
        let r1 = gen_regex(&p).unwrap();
        let r2 = if seed % 2 == 0 {
            language_preserving(&r1, &mut g)
        } else {
            gen_regex(&p.with_seed(seed + 10_000)).unwrap()
        };
        let x = am(&r1, &r2, &ab()).unwrap();
        let y = equiv_uf(&r1, &r2, &ab()).unwrap();
        assert_eq!(x.equivalent, y.equivalent, "{r1} vs {r2}");
        if y.pairs_visited > x.pairs_visited {
            violations.push((x.equivalent, r1.to_string(), r2.to_string()));
        }
    }
    assert!(violations.iter().all(|v| !v.0), "{violations:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn dfa_checkers_agree((a, b) in arb_pair()) {
        let (x, y) = align_dfas(&a, &b);
        let oracle = product_equivalent(&x, &y);
        let reports = [hk(&a, &b), hki(&a, &b), hkn(&a, &b).report, hke(&a.to_nfa(), &b.to_nfa())];
        for r in &reports {
            prop_assert_eq!(r.equivalent, oracle);
            check_witness(&x, &y, r);
            prop_assert!(r.iterations >= 1);
        }
        let (full, early) = (&reports[0], &reports[1]);
        if oracle {
            prop_assert_eq!(early.iterations, full.iterations);
        } else {
            prop_assert!(early.iterations <= full.iterations);
        }
    }

    #[test]
    fn history_is_product_reachability((a, b) in arb_pair()) {
        let (x, y) = align_dfas(&a, &b);
        let run = hkn(&a, &b);
        let h: BTreeSet<(usize, usize)> = run.relation.iter().collect();
        prop_assert_eq!(&h, &product_reach(&x, &y));
        prop_assert!(h.len() <= x.num_states() * y.num_states());
        prop_assert_eq!(run.report.iterations, h.len());
    }

    #[test]
    fn diagonal_for_identical_machines(seed in any::<u64>()) {
        let d = random_dfa(&mut rng(seed), 6, 2);
        let run = hkn(&d, &d);
        let diag: BTreeSet<(usize, usize)> = reachable(&d).into_iter().map(|q| (q, q)).collect();
        prop_assert_eq!(run.relation.iter().collect::<BTreeSet<_>>(), diag);
    }

    #[test]
    fn sets_stay_homogeneous_while_pushed_pairs_do((a, b) in arb_pair()) {
        let (x, y) = align_dfas(&a, &b);
        let off = x.num_states();
        let fin = |q: usize| if q < off { x.is_final(q) } else { y.is_final(q - off) };
        let mut all_good = true;
        let mut ok = true;
        hk_with_observer(&a, &b, |part, pushed| {
            all_good &= fin(pushed.0) == fin(pushed.1);
            let homogeneous = part
                .classes()
                .iter()
                .all(|c| c.iter().all(|&q| fin(q) == fin(c[0])));
            ok &= homogeneous == all_good;
        });
        prop_assert!(ok);
    }

    #[test]
    fn final_partition_on_reachable_pairs((a, b) in arb_pair()) {
        let (x, y) = align_dfas(&a, &b);
        let mut run = hk_run(&a, &b);
        let off = run.offset;
        let fin = |q: usize| if q < off { x.is_final(q) } else { y.is_final(q - off) };
        let reach = product_reach(&x, &y);
        let mut touched = BTreeSet::new();
        for &(p, q) in &reach {
            prop_assert_eq!(
                run.partition.find(&p, false).unwrap(),
                run.partition.find(&(q + off), false).unwrap()
            );
            touched.insert(run.partition.find(&p, false).unwrap());
        }
        let homogeneous = run
            .partition
            .classes()
            .iter()
            .filter(|c| touched.contains(&run.partition.clone().find(&c[0], false).unwrap()))
            .all(|c| c.iter().all(|&q| fin(q) == fin(c[0])));
        prop_assert_eq!(homogeneous, product_equivalent(&x, &y));
    }

    #[test]
    fn derivative_checkers_agree_with_automata(seed in any::<u64>(), size in 1usize..=20, mode in 0u8..3) {
        let p = GenParams { size, seed, ..GenParams::default() };
        let r1 = gen_regex(&p).unwrap();
        let mut g = rng(seed);
        let r2 = match mode {
            0 => gen_regex(&p.with_seed(!seed)).unwrap(),
            1 => aci_scramble(&r1, &mut g),
            _ => language_preserving(&r1, &mut g),
        };
        let s = ab();
        let x = am(&r1, &r2, &s).unwrap();
        let y = equiv_uf(&r1, &r2, &s).unwrap();
        let n1 = partial_derivative_nfa(&r1, &s);
        let n2 = partial_derivative_nfa(&r2, &s);
        let oracle = nfa_equivalent(&n1, &n2);
        prop_assert_eq!(x.equivalent, oracle);
        prop_assert_eq!(y.equivalent, oracle);
        prop_assert_eq!(hke(&n1, &n2).equivalent, oracle);
        for r in [&x, &y] {
            if let Some(w) = &r.witness {
                prop_assert_ne!(regex_matches(&r1, w), regex_matches(&r2, w));
            }
        }
    }

    #[test]
    fn derivative_walk_is_the_pair_walk(seed in any::<u64>(), size in 1usize..=15) {
        let s = ab();
        let p = GenParams { size, seed, ..GenParams::default() };
        let r1 = gen_regex(&p).unwrap();
        let r2 = gen_regex(&p.with_seed(seed ^ 0x5555)).unwrap();
        let (_, trace) = am_traced(&r1, &r2, &s).unwrap();
        let (d1, st1) = brzozowski_automaton_with_states(&r1, &s);
        let (d2, st2) = brzozowski_automaton_with_states(&r2, &s);
        let mapped: Vec<_> = hkn_early_refutation(&d1, &d2)
            .trace
            .into_iter()
            .map(|(i, j)| (canonical_key(&st1[i]), canonical_key(&st2[j])))
            .collect();
        prop_assert_eq!(&trace, &mapped);
        let full: Vec<_> = hkn(&d1, &d2)
            .trace
            .into_iter()
            .map(|(i, j)| (canonical_key(&st1[i]), canonical_key(&st2[j])))
            .collect();
        prop_assert!(full.starts_with(&trace));
    }

    #[test]
    fn nfa_checker_matches_subset_oracle(seed in any::<u64>(), n in 1usize..=6, di in 0usize..3) {
        let p = GenParams { n, d: [0.1, 0.5, 0.8][di], seed, ..GenParams::default() };
        let q = p.with_seed(seed.wrapping_add(1));
        let (Ok(a), Ok(b)) = (gen_nfa(&p), gen_nfa(&q)) else { return Ok(()) };
        let r = hke(&a, &b);
        prop_assert_eq!(r.equivalent, nfa_equivalent(&a, &b));
        if let Some(w) = &r.witness {
            prop_assert_ne!(nfa_accepts(&a, w), nfa_accepts(&b, w));
        }
        let same = hke(&a, &determinize(&a).to_nfa());
        prop_assert!(same.equivalent);
    }
}

#[test]
fn empty_word_witness_at_initial_pair() {
    let r1: Regex = parse("1", &ab()).unwrap();
    let r2: Regex = parse("a", &ab()).unwrap();
    for r in [
        am(&r1, &r2, &ab()).unwrap(),
        equiv_uf(&r1, &r2, &ab()).unwrap(),
    ] {
        assert_eq!(r.witness.as_deref(), Some(""));
    }
}
