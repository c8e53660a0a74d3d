//! The bundled test corpus: six small codes spanning q in {2, 3, 4, 5},
//! prime and extension fields, perfect and non-perfect codes, unique and
//! shared coset leaders.
//!
//! The two "random" codes are sampled once from a fixed ChaCha seed and are
//! bit-stable across runs and platforms; the shipped `.code` files mirror
//! the generated matrices and are checked against them in tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::LinearCode;
use crate::field::FieldSpec;

/// Seed for the GF(4) [5,2] corpus code.
pub const SEED_GF4_5_2: u64 = 0x1eade7;
/// Seed for the GF(5) [4,2] corpus code.
pub const SEED_GF5_4_2: u64 = 0x1eade8;

/// [3,1] binary repetition code; d = 3, perfect with t = 1.
pub fn repetition_3_1() -> LinearCode {
    let f2 = FieldSpec::new(2, 1).expect("GF(2)");
    LinearCode::new(f2, vec![vec![1, 1, 1]]).expect("full rank")
}

/// [4,3] binary even-weight code; d = 2, cosets with several leaders.
pub fn parity_4_3() -> LinearCode {
    let f2 = FieldSpec::new(2, 1).expect("GF(2)");
    LinearCode::new(
        f2,
        vec![vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]],
    )
    .expect("full rank")
}

/// [7,4] binary Hamming code; d = 3, perfect.
pub fn hamming_7_4() -> LinearCode {
    let f2 = FieldSpec::new(2, 1).expect("GF(2)");
    LinearCode::new(
        f2,
        vec![
            vec![1, 0, 0, 0, 1, 1, 0],
            vec![0, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 1],
        ],
    )
    .expect("full rank")
}

/// [4,2] tetracode over GF(3); d = 3, perfect.
pub fn tetracode_4_2() -> LinearCode {
    let f3 = FieldSpec::new(3, 1).expect("GF(3)");
    LinearCode::new(f3, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).expect("full rank")
}

/// [5,2] code over GF(4), sampled from [`SEED_GF4_5_2`].
pub fn random_gf4_5_2() -> LinearCode {
    let f4 = FieldSpec::new(2, 2).expect("GF(4)");
    random_code(f4, 5, 2, SEED_GF4_5_2)
}

/// [4,2] code over GF(5), sampled from [`SEED_GF5_4_2`].
pub fn random_gf5_4_2() -> LinearCode {
    let f5 = FieldSpec::new(5, 1).expect("GF(5)");
    random_code(f5, 4, 2, SEED_GF5_4_2)
}

/// Uniform random generator rows, resampled until full rank.
fn random_code(spec: FieldSpec, n: usize, k: usize, seed: u64) -> LinearCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<Vec<u32>> = (0..k)
            .map(|_| (0..n).map(|_| rng.random_range(0..spec.q())).collect())
            .collect();
        if let Ok(code) = LinearCode::new(spec.clone(), rows) {
            return code;
        }
    }
}

/// Every corpus code with its name.
pub fn all() -> Vec<(&'static str, LinearCode)> {
    vec![
        ("repetition_3_1", repetition_3_1()),
        ("parity_4_3", parity_4_3()),
        ("hamming_7_4", hamming_7_4()),
        ("tetracode_4_2", tetracode_4_2()),
        ("random_gf4_5_2", random_gf4_5_2()),
        ("random_gf5_4_2", random_gf5_4_2()),
    ]
}

/// Shipped code files mirroring the corpus, for CLI use.
pub fn bundled_files() -> Vec<(&'static str, &'static str)> {
    vec![
        ("repetition_3_1", include_str!("../codes/repetition_3_1.code")),
        ("parity_4_3", include_str!("../codes/parity_4_3.code")),
        ("hamming_7_4", include_str!("../codes/hamming_7_4.code")),
        ("tetracode_4_2", include_str!("../codes/tetracode_4_2.code")),
        ("random_gf4_5_2", include_str!("../codes/random_gf4_5_2.code")),
        ("random_gf5_4_2", include_str!("../codes/random_gf5_4_2.code")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::parse_code_file;

    #[test]
    fn corpus_parameters() {
        let expected = [
            ("repetition_3_1", 2u32, 3usize, 1usize),
            ("parity_4_3", 2, 4, 3),
            ("hamming_7_4", 2, 7, 4),
            ("tetracode_4_2", 3, 4, 2),
            ("random_gf4_5_2", 4, 5, 2),
            ("random_gf5_4_2", 5, 4, 2),
        ];
        for ((name, code), (ename, q, n, k)) in all().iter().zip(expected) {
            assert_eq!(*name, ename);
            assert_eq!(code.spec().q(), q, "{name}");
            assert_eq!(code.len(), n, "{name}");
            assert_eq!(code.dimension(), k, "{name}");
        }
    }

    #[test]
    fn shipped_files_match_corpus() {
        let files: std::collections::HashMap<_, _> = bundled_files().into_iter().collect();
        for (name, code) in all() {
            let parsed = parse_code_file(files[name]).expect(name);
            assert_eq!(parsed.spec(), code.spec(), "{name}");
            assert_eq!(parsed.generator(), code.generator(), "{name}");
        }
    }
}
