//! Lyndon words and their standard bracketings, realized as iterated group
//! commutators.

use crate::words::Word;

/// True if `s` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(s: &[usize]) -> bool {
    if s.is_empty() {
        return false;
    }
    (1..s.len()).all(|r| {
        let rotated = s[r..].iter().chain(&s[..r]);
        s.iter().lt(rotated)
    })
}

/// Splits a Lyndon word of length ≥ 2 as `u v` with `v` its longest proper
/// Lyndon suffix.
pub fn standard_factorization(s: &[usize]) -> (&[usize], &[usize]) {
    debug_assert!(s.len() >= 2);
    let cut = (1..s.len())
        .find(|&c| is_lyndon(&s[c..]))
        .expect("a letter is always a Lyndon suffix");
    (&s[..cut], &s[cut..])
}

/// Group commutator word for the standard bracketing of a Lyndon word. Its
/// Magnus expansion is `1 + P_s + (higher degree)`, where `P_s` is the Lie
/// bracketing whose lex-smallest monomial is `s` with coefficient 1.
pub fn bracket_word(n: usize, s: &[usize]) -> Word {
    if s.len() == 1 {
        return Word::generator(n, s[0]).expect("index checked by caller");
    }
    let (u, v) = standard_factorization(s);
    let (a, b) = (bracket_word(n, u), bracket_word(n, v));
    Word::commutator(&a, &b).expect("same n")
}
