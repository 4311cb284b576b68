//! Freely reduced words in the free group on `x_1, ..., x_n`.
//!
//! Text form: letters `x3` (generator) and `X3` (its inverse), separated by
//! whitespace; `1` is the empty word.

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Pos),
            -1 => Ok(Sign::Neg),
            _ => Err(format!("sign must be 1 or -1, got {v}")),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i64() as i8
    }
}

/// A generator `x_index` raised to `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(index: usize, sign: Sign) -> Self {
        Letter { index, sign }
    }

    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            sign: -self.sign,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

/// A freely reduced word on `n` generators. Construction always reduces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    n: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(n: usize) -> Self {
        Word {
            n,
            letters: Vec::new(),
        }
    }

    pub fn generator(n: usize, index: usize) -> Result<Self> {
        Self::from_letters(n, [Letter::new(index, Sign::Pos)])
    }

    /// Builds the reduced form of an arbitrary letter sequence.
    pub fn from_letters(n: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut w = Word::identity(n);
        for l in letters {
            if l.index == 0 || l.index > n {
                return Err(Error::IndexOutOfRange { index: l.index, n });
            }
            w.push(l);
        }
        Ok(w)
    }

    /// Builds a word from signed indices, e.g. `[1, -2]` for `x1 X2`.
    pub fn from_signed(n: usize, signed: &[i64]) -> Result<Self> {
        let letters = signed
            .iter()
            .map(|&s| {
                let sign = if s > 0 { Sign::Pos } else { Sign::Neg };
                Letter::new(s.unsigned_abs() as usize, sign)
            })
            .collect::<Vec<_>>();
        Self::from_letters(n, letters)
    }

    fn push(&mut self, l: Letter) {
        match self.letters.last() {
            Some(&last) if last.cancels(l) => {
                self.letters.pop();
            }
            _ => self.letters.push(l),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_same_n(&self, other: &Word) -> Result<()> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_same_n(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.letters.reserve(other.len());
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn invert(&self) -> Word {
        Word {
            n: self.n,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Word, b: &Word) -> Result<Word> {
        a.check_same_n(b)?;
        Ok(a.invert()
            .mul_unchecked(&b.invert())
            .mul_unchecked(a)
            .mul_unchecked(b))
    }

    /// `self^e` for any integer exponent.
    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.invert() } else { self.clone() };
        let mut w = Word::identity(self.n);
        for _ in 0..e.unsigned_abs() {
            w = w.mul_unchecked(&base);
        }
        w
    }

    /// `c⁻¹ self c`.
    pub fn conjugate(&self, c: &Word) -> Word {
        c.invert().mul_unchecked(self).mul_unchecked(c)
    }

    pub fn exponent_sum(&self, index: usize) -> Result<i64> {
        if index == 0 || index > self.n {
            return Err(Error::IndexOutOfRange { index, n: self.n });
        }
        Ok(self
            .letters
            .iter()
            .filter(|l| l.index == index)
            .map(|l| l.sign.as_i64())
            .sum())
    }

    /// Image under the abelianization `F_n → Z^n`.
    pub fn abelianization(&self) -> Vec<i64> {
        let mut v = vec![0; self.n];
        for l in &self.letters {
            v[l.index - 1] += l.sign.as_i64();
        }
        v
    }

    /// Replaces every letter `x_j^{±1}` by `images[j-1]^{±1}`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let n = images.first().map_or(self.n, Word::n);
        let inverses: Vec<Word> = images.iter().map(Word::invert).collect();
        let mut w = Word::identity(n);
        for l in &self.letters {
            let img = match l.sign {
                Sign::Pos => &images[l.index - 1],
                Sign::Neg => &inverses[l.index - 1],
            };
            w = w.mul_unchecked(img);
        }
        w
    }

    pub fn parse(n: usize, text: &str) -> Result<Word> {
        let trimmed = text.trim();
        if trimmed == "1" || trimmed.is_empty() {
            return Ok(Word::identity(n));
        }
        let mut letters = Vec::new();
        let mut offset = 0;
        for tok in text.split_whitespace() {
            let at = offset + text[offset..].find(tok).unwrap_or(0);
            offset = at + tok.len();
            let sign = match tok.as_bytes()[0] {
                b'x' => Sign::Pos,
                b'X' => Sign::Neg,
                _ => return Err(Error::syntax_at(text, at, format!("bad letter `{tok}`"))),
            };
            let index: usize = tok[1..]
                .parse()
                .map_err(|_| Error::syntax_at(text, at, format!("bad letter `{tok}`")))?;
            letters.push(Letter::new(index, sign));
        }
        Word::from_letters(n, letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            match l.sign {
                Sign::Pos => write!(f, "x{}", l.index)?,
                Sign::Neg => write!(f, "X{}", l.index)?,
            }
        }
        Ok(())
    }
}
