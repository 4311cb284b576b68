//! Equality tests in the nilpotent quotients `N_k F_n = F_n / Γ_k F_n` and in
//! the reduced free group `RF_n`, decided on Magnus expansions.
//!
//! A word is trivial in `N_k F_n` iff its expansion is `1` up to degree
//! `k - 1`, and trivial in `RF_n` iff its expansion is `1` plus repeated
//! monomials. Both are checked at a fixed truncation, so no normal forms are
//! needed for equality.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::dense::Dense;
use crate::error::{Error, Result};
use crate::lyndon::{bracket_word, is_lyndon};
use crate::magnus::{magnus, Strip};
use crate::words::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Grade {
    /// `N_k`, with `k ≥ 1`.
    Nilpotent(usize),
    Reduced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuotientContext {
    n: usize,
    grade: Grade,
}

impl QuotientContext {
    pub fn nilpotent(n: usize, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("nilpotent grade must be ≥ 1".into()));
        }
        Ok(QuotientContext {
            n,
            grade: Grade::Nilpotent(k),
        })
    }

    pub fn reduced(n: usize) -> Self {
        QuotientContext {
            n,
            grade: Grade::Reduced,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grade(&self) -> Grade {
        self.grade
    }

    /// Degree at which Magnus expansions are compared.
    pub fn truncation(&self) -> usize {
        match self.grade {
            Grade::Nilpotent(k) => k - 1,
            Grade::Reduced => self.n,
        }
    }

    /// Number of substitution rounds that make an iterated conjugation
    /// solution correct in this quotient.
    pub fn rounds(&self) -> usize {
        match self.grade {
            Grade::Nilpotent(k) => k - 1,
            Grade::Reduced => self.n,
        }
    }

    fn check(&self, w: &Word) -> Result<()> {
        if w.n() != self.n {
            return Err(Error::StrandMismatch {
                left: w.n(),
                right: self.n,
            });
        }
        Ok(())
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        self.check(w)?;
        Ok(self.is_trivial_unchecked(w))
    }

    pub(crate) fn is_trivial_unchecked(&self, w: &Word) -> bool {
        if let Some(e) = Dense::magnus(w, self.truncation()) {
            return match self.grade {
                Grade::Nilpotent(k) => e.is_one_below(k),
                Grade::Reduced => e.is_one_non_repeated(),
            };
        }
        let e = magnus(w, self.truncation());
        match self.grade {
            Grade::Nilpotent(k) => e.strip(Strip::DegreeLessThan(k)).is_one(),
            Grade::Reduced => e.strip(Strip::NonRepeated).is_one(),
        }
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.is_trivial_unchecked(&u.mul_unchecked(&v.invert())))
    }

    /// Whether `w` commutes with `x_i` in the quotient.
    pub fn centralizes_generator(&self, w: &Word, i: usize) -> Result<bool> {
        self.check(w)?;
        let xi = Word::generator(self.n, i)?;
        Ok(self.is_trivial_unchecked(&Word::commutator(&xi, w)?))
    }

    /// Rewrites `w` as a product of basic commutator powers that agrees with
    /// `w` modulo `Γ_{t+1}`, `t` the truncation degree. Used to keep words
    /// short across repeated substitution; the result equals `w` in this
    /// quotient.
    pub fn collect(&self, w: &Word) -> Result<Word> {
        self.check(w)?;
        match self.collect_dense(w) {
            Some(out) => Ok(out),
            None => self.collect_exact(w),
        }
    }

    /// [`QuotientContext::collect`] on machine-size coefficients; `None` on
    /// overflow or when the expansion is too large to tabulate.
    fn collect_dense(&self, w: &Word) -> Option<Word> {
        let degree = self.truncation();
        let mut residual = Dense::magnus(w, degree)?;
        let mut out = Word::identity(self.n);
        for d in 1..=degree {
            let mut part: BTreeMap<Vec<usize>, i128> = residual.homogeneous(d).collect();
            if part.is_empty() {
                continue;
            }
            let mut factor = Word::identity(self.n);
            while let Some((lead, c)) = part.pop_first() {
                assert!(
                    is_lyndon(&lead),
                    "leading monomial {lead:?} of a Lie element must be Lyndon"
                );
                let bracket = bracket_word(self.n, &lead);
                let expansion = Dense::magnus(&bracket, d)?;
                for (m, b) in expansion.homogeneous(d) {
                    if m == lead {
                        continue;
                    }
                    let slot = part.entry(m.clone()).or_default();
                    *slot = slot.checked_sub(c.checked_mul(b)?)?;
                    if *slot == 0 {
                        part.remove(&m);
                    }
                }
                factor = factor.mul_unchecked(&bracket.pow(i64::try_from(c).ok()?));
            }
            residual = Dense::magnus(&factor.invert(), degree)?.mul(&residual)?;
            out = out.mul_unchecked(&factor);
        }
        Some(out)
    }

    fn collect_exact(&self, w: &Word) -> Result<Word> {
        let degree = self.truncation();
        let mut residual = magnus(w, degree);
        let mut out = Word::identity(self.n);
        for d in 1..=degree {
            // Triangular elimination on the degree-d part: the lex-smallest
            // monomial of a Lie element is Lyndon, and the bracketing of a
            // Lyndon word has that word as its smallest monomial.
            let mut part: BTreeMap<Vec<usize>, BigInt> = residual
                .homogeneous(d)
                .map(|(m, c)| (m.0.clone(), c.clone()))
                .collect();
            if part.is_empty() {
                continue;
            }
            let mut factor = Word::identity(self.n);
            while let Some((lead, c)) = part.pop_first() {
                assert!(
                    is_lyndon(&lead),
                    "leading monomial {lead:?} of a Lie element must be Lyndon"
                );
                let e = c.to_i64().ok_or_else(|| {
                    Error::InvalidArgument(format!("collection exponent {c} too large"))
                })?;
                let bracket = bracket_word(self.n, &lead);
                for (m, b) in magnus(&bracket, d).homogeneous(d) {
                    if m.0 == lead {
                        continue;
                    }
                    let slot = part.entry(m.0.clone()).or_default();
                    *slot -= &c * b;
                    if slot.is_zero() {
                        part.remove(&m.0);
                    }
                }
                factor = factor.mul_unchecked(&bracket.pow(e));
            }
            residual = magnus(&factor.invert(), degree).mul(&residual)?;
            out = out.mul_unchecked(&factor);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(n: usize, s: &[i64]) -> Word {
        Word::from_signed(n, s).unwrap()
    }

    fn nil(n: usize, k: usize) -> QuotientContext {
        QuotientContext::nilpotent(n, k).unwrap()
    }

    #[test]
    fn triviality_examples() {
        let c = Word::commutator(&w(2, &[1]), &w(2, &[2])).unwrap();
        assert!(nil(2, 2).is_trivial(&c).unwrap());
        assert!(!nil(2, 3).is_trivial(&c).unwrap());
        let r = Word::commutator(&w(2, &[1]), &w(2, &[-2, 1, 2])).unwrap();
        assert!(QuotientContext::reduced(2).is_trivial(&r).unwrap());
    }

    #[test]
    fn equality_examples() {
        let (a, b) = (w(2, &[1, 2]), w(2, &[2, 1]));
        assert!(nil(2, 2).equal(&a, &b).unwrap());
        assert!(!nil(2, 3).equal(&a, &b).unwrap());
        for ctx in [nil(2, 1), nil(2, 4), QuotientContext::reduced(2)] {
            assert!(ctx.equal(&a, &a).unwrap());
        }
    }

    #[test]
    fn centralizer_examples() {
        let red = QuotientContext::reduced(2);
        assert!(red.centralizes_generator(&w(2, &[1, 1, 1]), 1).unwrap());
        assert!(!nil(2, 3).centralizes_generator(&w(2, &[2]), 1).unwrap());
        assert!(red.centralizes_generator(&w(2, &[-2, 1, 2]), 1).unwrap());
        assert!(matches!(
            red.centralizes_generator(&w(2, &[2]), 3),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        ));
    }

    #[test]
    fn reduced_and_nilpotent_triviality_are_independent() {
        let red = QuotientContext::reduced(2);
        let a = Word::commutator(&w(2, &[1]), &w(2, &[-2, 1, 2])).unwrap();
        assert!(red.is_trivial(&a).unwrap());
        // [x1, x2⁻¹x1x2] lies in Γ₃ but not in Γ₄
        assert!(nil(2, 3).is_trivial(&a).unwrap());
        assert!(!nil(2, 4).is_trivial(&a).unwrap());
        let b = Word::commutator(&w(2, &[1]), &w(2, &[2])).unwrap();
        assert!(nil(2, 2).is_trivial(&b).unwrap());
        assert!(!red.is_trivial(&b).unwrap());
    }

    #[test]
    fn rejects_wrong_n() {
        assert!(nil(2, 3).is_trivial(&w(3, &[3])).is_err());
        assert!(QuotientContext::nilpotent(2, 0).is_err());
    }

    fn signed_letters(n: usize, max_len: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(
            (1..=n as i64, any::<bool>()).prop_map(|(i, neg)| if neg { -i } else { i }),
            0..=max_len,
        )
    }

    proptest! {
        #[test]
        fn filtration_is_monotone(s in signed_letters(3, 16), k in 1usize..=5) {
            let u = w(3, &s);
            if nil(3, k).is_trivial(&u).unwrap() {
                for k2 in 1..=k {
                    prop_assert!(nil(3, k2).is_trivial(&u).unwrap());
                }
            }
        }

        #[test]
        fn commutators_of_trivial_elements_stay_trivial(s in signed_letters(3, 10), t in signed_letters(3, 10)) {
            let (a, b) = (w(3, &s), w(3, &t));
            let c = Word::commutator(&a, &b).unwrap();
            prop_assert!(nil(3, 2).is_trivial(&c).unwrap());
            let cc = Word::commutator(&c, &a).unwrap();
            prop_assert!(nil(3, 3).is_trivial(&cc).unwrap());
        }

        #[test]
        fn collection_preserves_the_element(s in signed_letters(3, 24), k in 1usize..=5, reduced in any::<bool>()) {
            let ctx = if reduced { QuotientContext::reduced(3) } else { nil(3, k) };
            let u = w(3, &s);
            let c = ctx.collect(&u).unwrap();
            // collection is exact modulo Γ_{t+1}
            let exact = nil(3, ctx.truncation() + 1);
            prop_assert!(exact.equal(&u, &c).unwrap());
            prop_assert!(ctx.equal(&u, &c).unwrap());
        }

        #[test]
        fn dense_and_exact_collection_agree(s in signed_letters(3, 24), k in 1usize..=5) {
            let ctx = nil(3, k);
            let u = w(3, &s);
            prop_assert_eq!(ctx.collect_dense(&u).unwrap(), ctx.collect_exact(&u).unwrap());
        }
    }
}
