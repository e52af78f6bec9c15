use nsatz_core::lowerbounds::{
    base_p_digits, demo_field_size, euler_no_root_check, interp_closed_form, interp_leading_coeff, lucas_nonzero,
};
use nsatz_core::oracle::construction_degree;
use nsatz_core::random;
use nsatz_core::{
    certificate_at_degree, certify_t1, min_degree, verify, zero_set, CheckOptions, Degree, EvalSet, FieldDesc,
    MultiPoly, DEFAULT_ENUM_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn oracle_is_at_most_the_construction() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for q in [2u64, 3, 4, 5, 7] {
        let f = FieldDesc::finite(q).unwrap();
        for _ in 0..25 {
            let n = rng.gen_range(1..=3);
            if q.pow(n as u32) > 343 {
                continue;
            }
            let (s, _) = random::system_all(&f, n, rng.gen_range(1..=3), rng.gen_range(1..=3), &mut rng);
            let cert = certify_t1(&s, &CheckOptions::default()).unwrap();
            let reduced = cert.max_reduced_degree().unwrap();
            let top = n as u64 * (q - 1);
            let r = min_degree(&s, top, DEFAULT_ENUM_CAP).unwrap();
            let dmin = r.min_degree.expect("a certificate exists");
            assert!(Degree::Finite(dmin) <= reduced.max(Degree::Finite(0)));
            assert_eq!(r.construction_degree, Some(reduced));
            let witness = r.witness.unwrap();
            assert!(verify(&s, &witness, DEFAULT_ENUM_CAP).unwrap().ok);
            if dmin > 0 {
                assert!(certificate_at_degree(&s, dmin - 1, DEFAULT_ENUM_CAP).unwrap().is_none());
            }
            // monotone in D
            for d in dmin..=top.min(dmin + 2) {
                assert!(certificate_at_degree(&s, d, DEFAULT_ENUM_CAP).unwrap().is_some());
            }
        }
    }
}

#[test]
fn oracle_on_explicit_rational_domains() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let f = FieldDesc::rationals();
    for _ in 0..30 {
        let n = rng.gen_range(1..=2);
        let size = rng.gen_range(1..=6);
        let x = EvalSet::explicit(&f, n, random::points(&f, n, size, &mut rng)).unwrap();
        let (s, _) = random::system_on(&f, n, rng.gen_range(1..=2), 2, x, &mut rng);
        let r = min_degree(&s, 6, DEFAULT_ENUM_CAP).unwrap();
        let dmin = r.min_degree.expect("interpolation always succeeds within |X| - 1");
        assert!(dmin < size as u64);
        assert!(verify(&s, &r.witness.unwrap(), DEFAULT_ENUM_CAP).unwrap().ok);
        assert!(r.construction_degree.unwrap() >= Degree::Finite(dmin) || dmin == 0);
    }
}

#[test]
fn euler_matches_root_search() {
    for q in (2..=343).filter(|&q| nsatz_core::field::prime_power(q).is_some()) {
        let f = FieldDesc::finite(q).unwrap();
        let x = MultiPoly::var(&f, 1, 0);
        let p = &x.pow(2) + &MultiPoly::one(&f, 1);
        let no_root = zero_set(&f, 1, &[p], &EvalSet::All, DEFAULT_ENUM_CAP).unwrap().is_empty();
        assert_eq!(euler_no_root_check(q).unwrap(), no_root, "q = {q}");
        let (p, k) = nsatz_core::field::prime_power(q).unwrap();
        if p % 4 == 3 && k % 2 == 1 {
            assert!(no_root);
        }
    }
}

#[test]
fn lucas_matches_pascal_triangle() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let mut row = vec![1u64];
        for n in 0..=1000u64 {
            for (m, &v) in row.iter().enumerate() {
                assert_eq!(lucas_nonzero(n, m as u64, p).unwrap(), v != 0, "binom({n}, {m}) mod {p}");
            }
            let mut next = vec![1u64; row.len() + 1];
            for m in 1..row.len() {
                next[m] = (row[m - 1] + row[m]) % p;
            }
            row = next;
        }
    }
}

#[test]
fn digit_expansions_of_t_and_b() {
    for p in [3u64, 7, 11] {
        for k in [1u32, 3, 5] {
            let q = p.pow(k);
            let mut t_digits = vec![p - 1; k as usize];
            t_digits[0] = p - 2;
            assert_eq!(base_p_digits(q - 2, p), t_digits);
            assert_eq!(base_p_digits((q - 1) / 2, p), vec![(p - 1) / 2; k as usize]);
            assert!(lucas_nonzero(q - 2, (q - 1) / 2, p).unwrap());
        }
    }
}

#[test]
fn reduced_power_degree_claim() {
    for q in [3u64, 7, 11, 19, 27] {
        let r = demo_field_size(q, false, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.normal_form_degree, Some(Degree::Finite(q - 1)));
        assert_ne!(r.top_coefficient, Some(0));
    }
}

#[test]
fn interpolation_leading_coefficients() {
    for big_f in 1..=8 {
        assert_eq!(interp_leading_coeff(big_f).unwrap(), interp_closed_form(big_f));
    }
}

#[test]
fn construction_degree_over_rationals_is_raw() {
    let f = FieldDesc::rationals();
    let x = MultiPoly::var(&f, 1, 0);
    let pts = [-2i64, -1, 1, 2].iter().map(|&v| vec![f.from_i64(v)]).collect();
    let s = nsatz_core::PolySystem::new(&f, 1, vec![x.pow(2)], x, EvalSet::explicit(&f, 1, pts).unwrap()).unwrap();
    assert_eq!(construction_degree(&s, DEFAULT_ENUM_CAP), Some(Degree::Finite(3)));
}
