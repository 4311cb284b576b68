//! Dense truncated Magnus expansions with machine-size coefficients.
//!
//! Every monomial of degree `≤ t` gets a slot: degree `d` occupies
//! `offset[d] .. offset[d] + n^d`, and inside a degree the slot is the index
//! sequence read in base `n`. All arithmetic is checked; callers fall back
//! to the exact sparse series when anything returns `None`.

use num_bigint::BigInt;

use crate::magnus::Series;
use crate::words::{Sign, Word};

/// Largest table this module will allocate.
const MAX_SLOTS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Dense {
    n: usize,
    degree: usize,
    offsets: Vec<usize>,
    coeffs: Vec<i128>,
}

impl Dense {
    /// The series `1`, or `None` when the table would be too large.
    pub fn one(n: usize, degree: usize) -> Option<Dense> {
        let mut offsets = Vec::with_capacity(degree + 2);
        let (mut total, mut width) = (0usize, 1usize);
        for _ in 0..=degree {
            offsets.push(total);
            total = total.checked_add(width)?;
            width = width.checked_mul(n)?;
            if total > MAX_SLOTS {
                return None;
            }
        }
        offsets.push(total);
        let mut coeffs = vec![0; total];
        coeffs[0] = 1;
        Some(Dense {
            n,
            degree,
            offsets,
            coeffs,
        })
    }

    pub fn magnus(w: &Word, degree: usize) -> Option<Dense> {
        let mut s = Dense::one(w.n(), degree)?;
        for l in w.letters() {
            s.mul_letter(l.index, l.sign)?;
        }
        Some(s)
    }

    fn range(&self, d: usize) -> std::ops::Range<usize> {
        self.offsets[d]..self.offsets[d + 1]
    }

    /// Slot of `m · X_j` for the monomial of degree `d` in slot `slot`.
    fn extend(&self, d: usize, slot: usize, j: usize) -> usize {
        self.offsets[d + 1] + (slot - self.offsets[d]) * self.n + (j - 1)
    }

    /// In place right multiplication by `1 + X_j` or by `(1 + X_j)^{-1}`.
    fn mul_letter(&mut self, j: usize, sign: Sign) -> Option<()> {
        if self.degree == 0 {
            return Some(());
        }
        match sign {
            // new[mj] = old[mj] + old[m]; high degrees first keeps old[m]
            Sign::Pos => {
                for d in (0..self.degree).rev() {
                    for slot in self.range(d) {
                        let c = self.coeffs[slot];
                        if c != 0 {
                            let t = self.extend(d, slot, j);
                            self.coeffs[t] = self.coeffs[t].checked_add(c)?;
                        }
                    }
                }
            }
            // new · (1 + X_j) = old, so new[mj] = old[mj] - new[m]
            Sign::Neg => {
                for d in 0..self.degree {
                    for slot in self.range(d) {
                        let c = self.coeffs[slot];
                        if c != 0 {
                            let t = self.extend(d, slot, j);
                            self.coeffs[t] = self.coeffs[t].checked_sub(c)?;
                        }
                    }
                }
            }
        }
        Some(())
    }

    /// Truncated product; both factors must share `n` and `degree`.
    pub fn mul(&self, other: &Dense) -> Option<Dense> {
        debug_assert!(self.n == other.n && self.degree == other.degree);
        let mut out = Dense::one(self.n, self.degree)?;
        out.coeffs[0] = 0;
        let mut width = vec![1usize; self.degree + 1];
        for d in 1..=self.degree {
            width[d] = width[d - 1] * self.n;
        }
        for da in 0..=self.degree {
            for a in self.range(da) {
                let ca = self.coeffs[a];
                if ca == 0 {
                    continue;
                }
                let ra = a - self.offsets[da];
                for db in 0..=self.degree - da {
                    let base = self.offsets[da + db] + ra * width[db];
                    for b in other.range(db) {
                        let cb = other.coeffs[b];
                        if cb == 0 {
                            continue;
                        }
                        let t = base + (b - other.offsets[db]);
                        out.coeffs[t] = out.coeffs[t].checked_add(ca.checked_mul(cb)?)?;
                    }
                }
            }
        }
        Some(out)
    }

    fn decode(&self, d: usize, slot: usize) -> Vec<usize> {
        let mut r = slot - self.offsets[d];
        let mut seq = vec![0; d];
        for p in (0..d).rev() {
            seq[p] = r % self.n + 1;
            r /= self.n;
        }
        seq
    }

    /// Nonzero terms of exactly degree `d`, in lexicographic order.
    pub fn homogeneous(&self, d: usize) -> impl Iterator<Item = (Vec<usize>, i128)> + '_ {
        self.range(d)
            .filter(|&s| self.coeffs[s] != 0)
            .map(move |s| (self.decode(d, s), self.coeffs[s]))
    }

    /// Whether every nonconstant term of degree `< k` vanishes.
    pub fn is_one_below(&self, k: usize) -> bool {
        let top = self.offsets[k.min(self.degree + 1)];
        self.coeffs[0] == 1 && self.coeffs[1..top].iter().all(|&c| c == 0)
    }

    /// Whether every nonconstant term without repeated indices vanishes.
    pub fn is_one_non_repeated(&self) -> bool {
        if self.coeffs[0] != 1 {
            return false;
        }
        (1..=self.degree).all(|d| {
            self.homogeneous(d).all(|(seq, _)| {
                (0..seq.len()).any(|a| seq[a + 1..].contains(&seq[a]))
            })
        })
    }

    pub fn to_series(&self) -> Series {
        let terms = (0..=self.degree)
            .flat_map(|d| self.homogeneous(d))
            .map(|(seq, c)| (seq, BigInt::from(c)));
        Series::from_terms(self.n, self.degree, terms).expect("indices are in range")
    }
}
