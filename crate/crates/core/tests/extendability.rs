mod common;

use common::{bound, naive_power_free, occurrences, unpruned_power_free, word};
use powerfree::config::Config;
use powerfree::error::Error;
use powerfree::extendability::{
    count, enumerate, extension_stream, force_recurrent_letter, left_extendable, right_extendable,
    ExtendStatus,
};
use powerfree::par::Execution;

#[test]
fn enumeration_matches_unpruned_filtering() {
    for (k, b, max_n) in [
        (2u8, "2+", 10),
        (3, "2", 8),
        (3, "7/4", 8),
        (4, "2", 5),
        (2, "3", 9),
    ] {
        for n in 0..=max_n {
            let fast: Vec<Vec<u8>> = enumerate(k as usize, bound(b), n)
                .unwrap()
                .into_iter()
                .map(|w| w.into_letters())
                .collect();
            assert_eq!(
                fast,
                unpruned_power_free(k, bound(b), n),
                "k={k} bound={b} n={n}"
            );
            assert_eq!(count(k as usize, bound(b), n).unwrap(), fast.len() as u64);
        }
    }
}

#[test]
fn enumeration_modes_agree() {
    use powerfree::extendability::{enumerate_with, EnumerationLimits};
    let limits = EnumerationLimits::default();
    let seq = enumerate_with(3, bound("2"), 14, Execution::Sequential, &limits).unwrap();
    let par = enumerate_with(3, bound("2"), 14, Execution::Parallel, &limits).unwrap();
    assert_eq!(seq, par);
    assert!(enumerate(1, bound("2"), 2).unwrap().is_empty());
}

#[test]
fn right_probe_verdicts() {
    let stuck = right_extendable(&word("0102010", 3), 3, bound("2"), 1).unwrap();
    assert_eq!(stuck.status, ExtendStatus::NotExtendable);
    for c in ["0", "1", "2"] {
        assert!(!naive_power_free(
            &word(&format!("0102010{c}"), 3),
            bound("2")
        ));
    }

    let ok = right_extendable(&word("010", 3), 3, bound("2"), 20).unwrap();
    assert_eq!(ok.status, ExtendStatus::ExtendableToDepth);
    let w = ok.witness.unwrap();
    assert_eq!(w.len(), 23);
    assert!(w.starts_with(&[0, 1, 0]));
    assert!(naive_power_free(&w, bound("2")));

    let empty = right_extendable(&word("", 3), 3, bound("2"), 10).unwrap();
    assert_eq!(empty.status, ExtendStatus::ExtendableToDepth);
}

#[test]
fn left_probe_mirrors_right_probe() {
    for u in ["0102010", "010", "0121", "2010"] {
        let l = left_extendable(&word(u, 3), 3, bound("2"), 12).unwrap();
        let rev: String = u.chars().rev().collect();
        let r = right_extendable(&word(&rev, 3), 3, bound("2"), 12).unwrap();
        assert_eq!(l.status, r.status, "{u}");
        if let (Some(lw), Some(rw)) = (&l.witness, &r.witness) {
            assert!(lw.ends_with(&word(u, 3)));
            assert!(naive_power_free(lw, bound("2")));
            assert!(naive_power_free(rw, bound("2")));
        }
    }
    let err = left_extendable(&word("00", 3), 3, bound("2"), 1).unwrap_err();
    assert!(matches!(err.root(), Error::Precondition(_)));
}

#[test]
fn not_extendable_means_every_extension_fails() {
    // exhaustively confirm each not-extendable verdict at depth 3
    let b = bound("2");
    for n in 1..=7 {
        for u in enumerate(3, b, n).unwrap() {
            let v = right_extendable(&u, 3, b, 3).unwrap();
            let extensions = common::all_words(3, 3);
            let any = extensions.iter().any(|e| {
                let mut w = u.letters().to_vec();
                w.extend_from_slice(e);
                naive_power_free(&w, b)
            });
            assert_eq!(v.status == ExtendStatus::ExtendableToDepth, any, "{u}");
        }
    }
}

#[test]
fn extension_streams_are_power_free() {
    let cfg = Config::default();
    let mut s = extension_stream(&word("0", 3), 3, bound("2"), &cfg).unwrap();
    let p = s.prefix(50).unwrap();
    assert!(p.starts_with(&[0]));
    assert!(naive_power_free(&p, bound("2")));
    let mut e = extension_stream(&word("", 3), 3, bound("2"), &cfg).unwrap();
    assert!(naive_power_free(&e.prefix(10).unwrap(), bound("2")));
    assert!(extension_stream(&word("0102010", 3), 3, bound("2"), &cfg).is_err());
}

#[test]
fn forced_words_repeat_the_letter() {
    let cfg = Config::default();
    for (k, b) in [(3, "2+"), (3, "5/2"), (4, "2")] {
        for u in ["", "0", "01", "0102", "2"] {
            for x in 0..k as u8 {
                let mut s = force_recurrent_letter(&word(u, k), x, k, bound(b), &cfg).unwrap();
                let p = s.prefix(u.len() + 400).unwrap();
                assert!(p.starts_with(word(u, k).letters()));
                assert!(common::naive_power_free(&p[..120.min(p.len())], bound(b)));
                assert!(powerfree::repetition::is_power_free(&p, bound(b)));
                // x keeps appearing after the head
                let tail = &p[p.len() - 200..];
                assert!(occurrences(tail, &[x]) >= 3, "k={k} b={b} u={u} x={x}");
                assert_ne!(s.pivot(), x);
            }
        }
    }
    let err = force_recurrent_letter(&word("", 3), 2, 3, bound("2"), &cfg).unwrap_err();
    assert!(matches!(err.root(), Error::UnsupportedParameters { .. }));
}
