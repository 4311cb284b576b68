//! Truncated power series in non-commuting variables `X_1, ..., X_n` with
//! integer coefficients, and the Magnus expansion `x_j ↦ 1 + X_j`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dense::Dense;
use crate::error::{Error, Result};
use crate::words::{Sign, Word};

/// A monomial `X_{i_1} ... X_{i_d}`, stored as its index sequence.
///
/// Ordered by degree first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<usize>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_repeated(&self) -> bool {
        let s = &self.0;
        (0..s.len()).any(|a| s[a + 1..].contains(&s[a]))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strip {
    /// Keep only terms of degree `< k`.
    DegreeLessThan(usize),
    /// Keep only monomials whose indices are pairwise distinct.
    NonRepeated,
    /// Drop every monomial containing the given index.
    WithoutIndex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    n: usize,
    degree: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Series {
    pub fn zero(n: usize, degree: usize) -> Self {
        Series {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, degree: usize) -> Self {
        let mut s = Series::zero(n, degree);
        s.terms.insert(Monomial(Vec::new()), BigInt::one());
        s
    }

    /// Collects terms, dropping zeros and anything above `degree`.
    pub fn from_terms(
        n: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, BigInt)>,
    ) -> Result<Self> {
        let mut s = Series::zero(n, degree);
        for (seq, c) in terms {
            if let Some(&bad) = seq.iter().find(|&&i| i == 0 || i > n) {
                return Err(Error::IndexOutOfRange { index: bad, n });
            }
            if seq.len() <= degree {
                s.add_term(Monomial(seq), c);
            }
        }
        Ok(s)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial(Vec::new()))
                .is_some_and(|c| c.is_one())
    }

    pub fn coefficient(&self, seq: &[usize]) -> Result<BigInt> {
        if seq.len() > self.degree {
            return Err(Error::SequenceTooLong {
                len: seq.len(),
                degree: self.degree,
            });
        }
        Ok(self
            .terms
            .get(&Monomial(seq.to_vec()))
            .cloned()
            .unwrap_or_default())
    }

    /// Noncommutative product, truncated at the smaller of the two degrees.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let degree = self.degree.min(other.degree);
        let mut acc: std::collections::HashMap<Vec<usize>, BigInt> = Default::default();
        for (a, ca) in &self.terms {
            if a.degree() > degree {
                continue;
            }
            for (b, cb) in &other.terms {
                if a.degree() + b.degree() > degree {
                    // terms are sorted by degree
                    break;
                }
                let mut key = Vec::with_capacity(a.degree() + b.degree());
                key.extend_from_slice(&a.0);
                key.extend_from_slice(&b.0);
                *acc.entry(key).or_default() += ca * cb;
            }
        }
        Ok(Series {
            n: self.n,
            degree,
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (Monomial(k), c))
                .collect(),
        })
    }

    /// Right multiplication by `E(x_j^{±1})`.
    fn mul_letter(&self, index: usize, sign: Sign) -> Series {
        let mut acc: std::collections::HashMap<Vec<usize>, BigInt> = Default::default();
        for (m, c) in &self.terms {
            let room = self.degree - m.degree();
            let powers = match sign {
                Sign::Pos => room.min(1),
                Sign::Neg => room,
            };
            let mut key = m.0.clone();
            for p in 0..=powers {
                let term = if sign == Sign::Neg && p % 2 == 1 {
                    -c
                } else {
                    c.clone()
                };
                *acc.entry(key.clone()).or_default() += term;
                key.push(index);
            }
        }
        Series {
            n: self.n,
            degree: self.degree,
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (Monomial(k), c))
                .collect(),
        }
    }

    pub fn strip(&self, mode: Strip) -> Series {
        let keep = |m: &Monomial| match mode {
            Strip::DegreeLessThan(k) => m.degree() < k,
            Strip::NonRepeated => !m.is_repeated(),
            Strip::WithoutIndex(i) => !m.0.contains(&i),
        };
        Series {
            n: self.n,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of exactly degree `d`.
    pub fn homogeneous(&self, d: usize) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().filter(move |(m, _)| m.degree() == d)
    }

    /// Smallest degree `d ≥ 1` carrying a nonzero term.
    pub fn lowest_nonconstant_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).find(|&d| d > 0)
    }
}

/// Magnus expansion of `w`, truncated at `degree`.
pub fn magnus(w: &Word, degree: usize) -> Series {
    match Dense::magnus(w, degree) {
        Some(d) => d.to_series(),
        None => magnus_exact(w, degree),
    }
}

/// The expansion computed letter by letter with unbounded coefficients.
pub(crate) fn magnus_exact(w: &Word, degree: usize) -> Series {
    let mut s = Series::one(w.n(), degree);
    for l in w.letters() {
        s = s.mul_letter(l.index, l.sign);
    }
    s
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let idx: Vec<String> = m.0.iter().map(usize::to_string).collect();
            write!(f, "{} * X[{}]", c, idx.join(","))?;
        }
        Ok(())
    }
}
