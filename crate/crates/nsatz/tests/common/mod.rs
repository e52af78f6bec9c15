#![allow(dead_code)]

use std::path::{Path, PathBuf};

use nsatz::sysio::{parse_certificate, parse_certificate_bytes, parse_system, parse_system_bytes, write_certificate, write_system};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// All fixture documents as (file name, contents), sorted by name.
pub fn fixtures() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("sys" | "cert")))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

/// Checks parse(serialize(parse(s))) == parse(s) and that serialization is
/// a fixed point. Returns a description of the first problem.
pub fn round_trip(name: &str, text: &str) -> Result<(), String> {
    if name.ends_with(".cert") {
        let a = parse_certificate(text).map_err(|e| format!("{name}: {e}"))?;
        let s1 = write_certificate(&a.field, &a.vars, &a.certificate);
        let b = parse_certificate(&s1).map_err(|e| format!("{name} reparse: {e}"))?;
        if a != b {
            return Err(format!("{name}: certificate changed on round trip"));
        }
        if write_certificate(&b.field, &b.vars, &b.certificate) != s1 {
            return Err(format!("{name}: serialization is not a fixed point"));
        }
    } else {
        let a = parse_system(text).map_err(|e| format!("{name}: {e}"))?;
        let s1 = write_system(&a);
        let b = parse_system(&s1).map_err(|e| format!("{name} reparse: {e}"))?;
        if a != b {
            return Err(format!("{name}: system changed on round trip"));
        }
        if write_system(&b) != s1 {
            return Err(format!("{name}: serialization is not a fixed point"));
        }
    }
    Ok(())
}

const SOUP: &[&str] = &[
    "field ", "GF(", "GF(7)", "GF(2^3)", "GF(3^2) mod t^2+1", "QQ", "vars ", "x", "y", "x1", "t", "mod", "P:", "Q:",
    "X:", "images:", "mode:", "theorem1", "claimed_bound:", "containment:", "checked", "R1:", "R2:", "report",
    "raw_degree:", "reduced_degree:", "-inf", "all", "(", ")", "^", "*", "+", "-", "/", ",", ":", "0", "1", "2", "7",
    "65536", "99999999999999999999999", "\n", "\n", "\n", " ", "#", "é", "\t", "\r\n", "\u{0}",
];

fn mutate(rng: &mut impl Rng, mut bytes: Vec<u8>) -> Vec<u8> {
    for _ in 0..rng.gen_range(1..=8) {
        let len = bytes.len();
        match rng.gen_range(0..5) {
            0 if len > 0 => bytes[rng.gen_range(0..len)] = rng.gen(),
            1 => bytes.insert(rng.gen_range(0..=len), rng.gen()),
            2 if len > 0 => {
                bytes.remove(rng.gen_range(0..len));
            }
            3 => {
                let tok = SOUP.choose(rng).unwrap().as_bytes();
                let at = rng.gen_range(0..=len);
                bytes.splice(at..at, tok.iter().copied());
            }
            _ if len > 1 => {
                let a = rng.gen_range(0..len);
                let b = rng.gen_range(a..len);
                let chunk = bytes[a..=b].to_vec();
                let at = rng.gen_range(0..=len);
                bytes.splice(at..at, chunk);
            }
            _ => {}
        }
    }
    bytes.truncate(64 * 1024);
    bytes
}

/// One fuzz input of at most 64 KiB.
pub fn fuzz_input(rng: &mut impl Rng, corpus: &[(String, String)]) -> Vec<u8> {
    match rng.gen_range(0..4) {
        0 => {
            let len = if rng.gen_bool(0.05) { rng.gen_range(0..=64 * 1024) } else { rng.gen_range(0..512) };
            (0..len).map(|_| rng.gen()).collect()
        }
        1 => {
            let base = corpus.choose(rng).unwrap().1.as_bytes().to_vec();
            mutate(rng, base)
        }
        2 => {
            let n = rng.gen_range(0..120);
            (0..n).flat_map(|_| SOUP.choose(rng).unwrap().bytes()).collect()
        }
        _ => {
            let a: Vec<&str> = corpus.choose(rng).unwrap().1.lines().collect();
            let b: Vec<&str> = corpus.choose(rng).unwrap().1.lines().collect();
            let mut lines: Vec<&str> = a.iter().chain(&b).copied().filter(|_| rng.gen_bool(0.7)).collect();
            if rng.gen_bool(0.3) {
                lines.shuffle(rng);
            }
            mutate(rng, lines.join("\n").into_bytes())
        }
    }
}

/// Parses one fuzz input both ways. Whatever parses must round-trip.
pub fn exercise(bytes: &[u8]) -> Result<(), String> {
    if let Ok(doc) = parse_system_bytes(bytes) {
        let again = parse_system(&write_system(&doc)).map_err(|e| format!("accepted input fails to reparse: {e}"))?;
        if again != doc {
            return Err("accepted system changes on round trip".into());
        }
    }
    if let Ok(doc) = parse_certificate_bytes(bytes) {
        let text = write_certificate(&doc.field, &doc.vars, &doc.certificate);
        let again = parse_certificate(&text).map_err(|e| format!("accepted certificate fails to reparse: {e}"))?;
        if again != doc {
            return Err("accepted certificate changes on round trip".into());
        }
    }
    Ok(())
}
