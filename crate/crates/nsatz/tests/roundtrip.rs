mod common;

use std::time::{Duration, Instant};

use nsatz::sysio::{parse_system, write_system, SystemDoc};
use nsatz_core::{random, EvalSet, FieldDesc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn fixture_corpus_round_trips() {
    let corpus = common::fixtures();
    assert!(corpus.len() >= 50);
    for (name, text) in &corpus {
        common::round_trip(name, text).unwrap();
    }
}

#[test]
fn random_systems_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let fields: Vec<FieldDesc> =
        [2u64, 3, 4, 5, 8, 9, 27].iter().map(|&q| FieldDesc::finite(q).unwrap()).chain([FieldDesc::rationals()]).collect();
    for f in &fields {
        for _ in 0..40 {
            let n = rng.gen_range(1..=3);
            let domain = if f.is_finite() && rng.gen_bool(0.5) {
                EvalSet::All
            } else {
                let count = rng.gen_range(1..=6);
                EvalSet::explicit(f, n, random::points(f, n, count, &mut rng)).unwrap()
            };
            let (system, _) = random::system_on(f, n, rng.gen_range(1..=3), 3, domain, &mut rng);
            let vars = (1..=n).map(|i| format!("x{i}")).collect();
            let doc = SystemDoc { vars, system };
            let text = write_system(&doc);
            assert_eq!(parse_system(&text).unwrap(), doc, "{text}");
        }
    }
}

#[test]
fn fuzzed_inputs_never_crash() {
    let corpus = common::fixtures();
    let mut rng = ChaCha8Rng::seed_from_u64(0xF022);
    let mut slowest = Duration::ZERO;
    for _ in 0..2_000 {
        let input = common::fuzz_input(&mut rng, &corpus);
        let start = Instant::now();
        common::exercise(&input).unwrap_or_else(|e| panic!("{e}\n{}", String::from_utf8_lossy(&input)));
        slowest = slowest.max(start.elapsed());
    }
    assert!(slowest < Duration::from_secs(2), "slowest input took {slowest:?}");
}
