mod common;

use common::{bound, naive_power_free, occurrences, thue_morse_prefix, word};
use powerfree::config::Config;
use powerfree::extendability::{
    force_recurrent_letter, LeftStructuredWord, StructuredInfiniteWord,
};
use powerfree::gamma::{build_gamma, build_gamma_reversed, check_gamma, splice, GammaWitness};
use powerfree::generators::{base_word_avoiding, left_limit, relabel, thue_morse, WindowConfig};
use powerfree::repetition::is_power_free;
use powerfree::words::{Alphabet, PowerBound, Word};
use proptest::prelude::*;

/// The eight properties evaluated directly on `t`'s first `t_len` letters.
fn direct_properties(
    w1: &[u8],
    w2: &[u8],
    x: u8,
    g: &[u8],
    t: &[u8],
    k: usize,
    b: PowerBound,
) -> [bool; 8] {
    let in_sigma = |w: &[u8]| w.iter().all(|&c| (c as usize) < k);
    let mut finite = [w1, w2].concat();
    finite.push(x);
    finite.extend_from_slice(g);
    let p6 = t.starts_with(g);
    let p7 = p6 && {
        let mut xgy = vec![x];
        xgy.extend_from_slice(g);
        xgy.push(t[g.len()]);
        let hay = [w2, &xgy[..]].concat();
        occurrences(&hay, &xgy) == 1
    };
    [
        in_sigma(w1) && in_sigma(w2) && in_sigma(g),
        (x as usize) < k,
        naive_power_free(&finite, b),
        is_power_free(t, b),
        !t.contains(&x),
        p6,
        p7,
        occurrences(w2, &[x]) >= occurrences(w1, &[x]),
    ]
}

fn tm_over(letters: (u8, u8), k: usize) -> powerfree::generators::RightInfiniteWord {
    relabel(
        thue_morse(),
        &[(0, letters.0), (1, letters.1)],
        Alphabet::new(k).unwrap(),
    )
    .unwrap()
}

#[test]
fn reference_tuples() {
    let b = bound("2+");
    for (w1, w2, x, g, failed) in [("", "", 2, "", vec![]), ("", "", 0, "", vec![5])] {
        let mut w = GammaWitness {
            w1: word(w1, 3),
            w2: word(w2, 3),
            x,
            g: word(g, 3),
            t: tm_over((0, 1), 3),
        };
        let r = check_gamma(&mut w, 3, b, 512).unwrap();
        let t = thue_morse_prefix(512 + 1 + g.len());
        assert_eq!(
            r.properties,
            direct_properties(&w.w1, &w.w2, x, &w.g, &t, 3, b)
        );
        assert_eq!(r.failed(), failed);
    }
    let mut w = GammaWitness {
        w1: word("2", 3),
        w2: word("", 3),
        x: 2,
        g: word("", 3),
        t: tm_over((0, 1), 3),
    };
    let r = check_gamma(&mut w, 3, b, 512).unwrap();
    assert_eq!(r.failed(), vec![8]);
}

#[test]
fn splice_prefixes() {
    let b = bound("2+");
    let mut w = GammaWitness {
        w1: word("", 3),
        w2: word("", 3),
        x: 2,
        g: word("", 3),
        t: tm_over((0, 1), 3),
    };
    let mut s = splice(&mut w, 3, b, 512).unwrap();
    let p = s.prefix(20).unwrap();
    let mut expected = vec![2];
    expected.extend(thue_morse_prefix(19));
    assert_eq!(p.letters(), &expected[..]);
    assert!(naive_power_free(&p, b));
    assert!(s.prefix(0).unwrap().is_empty());
}

fn witness_checks(mut wit: GammaWitness, k: usize, b: PowerBound) {
    let report = check_gamma(&mut wit, k, b, 512).unwrap();
    assert!(report.all(), "{report}");
    let finite = wit.finite_part();
    let t = wit.t.prefix(finite.len() + 512).unwrap();
    assert_eq!(
        report.properties,
        direct_properties(&wit.w1, &wit.w2, wit.x, &wit.g, &t, k, b)
    );
    let mut lead = wit.lead().into_letters();
    lead.push(wit.x);
    lead.extend_from_slice(&t[..512]);
    assert!(is_power_free(&lead, b));
}

#[test]
fn built_witnesses_validate() {
    let cfg = Config::default();
    for (k, b) in [(3, "2+"), (3, "5/2"), (4, "2")] {
        let b = bound(b);
        let x = (k - 1) as u8;
        let mut t = base_word_avoiding(k, b, x, None).unwrap();
        for u in ["", "0", "01", "0120", "1021"] {
            let u = word(u, k);
            let mut ubar = force_recurrent_letter(&u, x, k, b, &cfg).unwrap();
            let build = build_gamma(&u, &mut ubar, x, &mut t, k, b, &cfg).unwrap();
            assert!(
                build.witness.finite_part().starts_with(&u)
                    || u.starts_with(&build.witness.finite_part())
            );
            witness_checks(build.witness, k, b);
        }
    }
}

#[test]
fn reversed_witnesses_end_with_the_target() {
    let cfg = Config::default();
    let (k, b) = (3, bound("2+"));
    let x = 2;
    let t = base_word_avoiding(k, b, x, None).unwrap();
    let mut tbar = left_limit(&t, WindowConfig::default(), cfg.slack, cfg.search_budget).unwrap();
    for v in ["0", "10", "1201"] {
        let v = word(v, k);
        let forced = force_recurrent_letter(&v.reverse(), x, k, b, &cfg).unwrap();
        let mut vbar = LeftStructuredWord(forced);
        let build = build_gamma_reversed(&v, &mut vbar, x, &mut tbar, k, b, &cfg).unwrap();
        let mut forward = build.reversed_g().into_letters();
        forward.push(x);
        forward.extend_from_slice(&build.reversed_lead());
        assert!(forward.ends_with(&v), "{v}");
        witness_checks(build.witness, k, b);
    }
}

#[test]
fn witness_on_a_hand_built_structured_word() {
    let (k, b) = (3, bound("2+"));
    let cfg = Config::default();
    let tail = tm_over((0, 2), 3);
    let mut ubar = StructuredInfiniteWord::new(
        Word::empty(Alphabet::new(3).unwrap()),
        1,
        tail,
        WindowConfig::default(),
    )
    .unwrap();
    let mut t = tm_over((0, 1), 3);
    let build = build_gamma(&word("", 3), &mut ubar, 2, &mut t, k, b, &cfg).unwrap();
    witness_checks(build.witness, k, b);
    // x occurring in t cannot work
    let mut t_bad = tm_over((0, 2), 3);
    assert!(build_gamma(&word("", 3), &mut ubar, 2, &mut t_bad, k, b, &cfg).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]
    #[test]
    fn report_matches_direct_evaluation(
        w1 in proptest::collection::vec(0u8..3, 0..6),
        w2 in proptest::collection::vec(0u8..3, 0..8),
        x in 0u8..3,
        g_len in 0usize..6,
        plus in any::<bool>(),
    ) {
        let b = if plus { bound("2+") } else { bound("5/2") };
        let a = Alphabet::new(3).unwrap();
        let tm = thue_morse_prefix(g_len + 600);
        let mut w = GammaWitness {
            w1: Word::new(w1.clone(), a).unwrap(),
            w2: Word::new(w2.clone(), a).unwrap(),
            x,
            g: Word::new(tm[..g_len].to_vec(), a).unwrap(),
            t: tm_over((0, 1), 3),
        };
        let r = check_gamma(&mut w, 3, b, 512).unwrap();
        let n = w1.len() + w2.len() + 1 + g_len + 512;
        prop_assert_eq!(r.properties, direct_properties(&w1, &w2, x, &tm[..g_len], &tm[..n], 3, b));
    }
}
