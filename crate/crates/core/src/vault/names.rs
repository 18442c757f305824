//! Random vault file names. Every file, real or fake, gets an eight
//! character alphanumeric stem plus a `.txt` suffix; the name itself must
//! carry no information, so nothing but the rng picks it.

use rand::Rng;

pub const NAME_LEN: usize = 8;
pub const NAME_SUFFIX: &str = ".txt";

const ALPHABET: &[u8; 62] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

/// One fresh name such as `pLudqZZw.txt`.
pub fn random_name(rng: &mut impl Rng) -> String {
    let mut stem: String = (0..NAME_LEN)
        .map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())] as char)
        .collect();
    stem.push_str(NAME_SUFFIX);
    stem
}

/// `n` distinct fresh names, none of which appears in `avoid`. Collisions
/// are simply redrawn; at 62^8 combinations they are vanishingly rare.
pub fn fresh_names(n: usize, avoid: &[String], rng: &mut impl Rng) -> Vec<String> {
    let mut names: Vec<String> = Vec::with_capacity(n);
    while names.len() < n {
        let candidate = random_name(rng);
        if !names.contains(&candidate) && !avoid.iter().any(|a| *a == candidate) {
            names.push(candidate);
        }
    }
    names
}

/// True when `name` has the vault shape: eight alphanumerics plus `.txt`.
pub fn is_valid_name(name: &str) -> bool {
    match name.strip_suffix(NAME_SUFFIX) {
        Some(stem) => {
            stem.len() == NAME_LEN && stem.bytes().all(|b| b.is_ascii_alphanumeric())
        }
        None => false,
    }
}

/// Maps a recovered secret onto a file: sort the names, take index
/// `secret mod n`. Total for any secret, so a wrong share still lands on
/// some valid file instead of failing.
pub fn secret_to_name(secret: u64, names: &[String]) -> String {
    assert!(!names.is_empty(), "vault holds at least one file");
    let mut sorted: Vec<&String> = names.iter().collect();
    sorted.sort();
    sorted[(secret % names.len() as u64) as usize].clone()
}
