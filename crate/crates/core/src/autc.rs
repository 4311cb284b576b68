//! Basis-conjugating automorphisms `x_i ↦ l_i⁻¹ x_i l_i` of a free nilpotent
//! or reduced free group, stored by their conjugators.

use std::fmt;

use crate::error::{Error, Result};
use crate::gauss::GaussData;
use crate::nilpotent::QuotientContext;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjAut {
    ctx: QuotientContext,
    conjugators: Vec<Word>,
}

impl ConjAut {
    pub fn new(ctx: QuotientContext, conjugators: Vec<Word>) -> Result<Self> {
        if conjugators.len() != ctx.n() {
            return Err(Error::StrandMismatch {
                left: conjugators.len(),
                right: ctx.n(),
            });
        }
        if let Some(w) = conjugators.iter().find(|w| w.n() != ctx.n()) {
            return Err(Error::StrandMismatch {
                left: w.n(),
                right: ctx.n(),
            });
        }
        Ok(ConjAut { ctx, conjugators })
    }

    pub fn identity(ctx: QuotientContext) -> Self {
        ConjAut {
            ctx,
            conjugators: vec![Word::identity(ctx.n()); ctx.n()],
        }
    }

    /// The automorphism induced by a diagram, with the longitudes exactly as
    /// read off the diagram.
    pub fn from_gauss(d: &GaussData, ctx: QuotientContext) -> Result<Self> {
        let sol = d.solve(&ctx)?;
        Ok(ConjAut {
            ctx,
            conjugators: sol.raw,
        })
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn ctx(&self) -> QuotientContext {
        self.ctx
    }

    pub fn conjugators(&self) -> &[Word] {
        &self.conjugators
    }

    /// Conjugator of `x_i` (1-based).
    pub fn conjugator(&self, i: usize) -> &Word {
        &self.conjugators[i - 1]
    }

    fn check(&self, other: &ConjAut) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Image of a word, letter by letter.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.n() != self.n() {
            return Err(Error::StrandMismatch {
                left: w.n(),
                right: self.n(),
            });
        }
        Ok(self.apply_unchecked(w))
    }

    fn apply_unchecked(&self, w: &Word) -> Word {
        if w.is_empty() {
            return w.clone();
        }
        let images: Vec<Word> = self
            .conjugators
            .iter()
            .enumerate()
            .map(|(k, l)| {
                Word::generator(self.n(), k + 1)
                    .expect("index in range")
                    .conjugate(l)
            })
            .collect();
        w.substitute(&images)
    }

    /// The automorphism `x ↦ f(g(x))`: apply `g` first, then `f`. With this
    /// order, stacking `a` below `b` induces `compose(φ(b), φ(a))`.
    pub fn compose(g: &ConjAut, f: &ConjAut) -> Result<ConjAut> {
        g.check(f)?;
        let conjugators = f
            .conjugators
            .iter()
            .zip(&g.conjugators)
            .map(|(lf, lg)| f.ctx.collect(&lf.mul_unchecked(&f.apply_unchecked(lg))))
            .collect::<Result<_>>()?;
        Ok(ConjAut {
            ctx: f.ctx,
            conjugators,
        })
    }

    /// Equality in the quotient: `l_i⁻¹ x_i l_i` and `l'_i⁻¹ x_i l'_i` agree
    /// iff `l_i l'_i⁻¹` commutes with `x_i`.
    pub fn equal(&self, other: &ConjAut) -> Result<bool> {
        self.check(other)?;
        for (i, (a, b)) in self.conjugators.iter().zip(&other.conjugators).enumerate() {
            if !self
                .ctx
                .centralizes_generator(&a.mul_unchecked(&b.invert()), i + 1)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_identity(&self) -> bool {
        self.equal(&ConjAut::identity(self.ctx))
            .expect("same context")
    }

    /// Solves `l_h = h(l_f⁻¹)` by substitution; each round is correct one
    /// degree deeper.
    pub fn inverse(&self) -> ConjAut {
        let inverses: Vec<Word> = self.conjugators.iter().map(Word::invert).collect();
        let mut h = ConjAut {
            ctx: self.ctx,
            conjugators: inverses.clone(),
        };
        for _ in 0..self.ctx.rounds() {
            let next = inverses
                .iter()
                .map(|w| {
                    self.ctx
                        .collect(&h.apply_unchecked(w))
                        .expect("same n")
                })
                .collect::<Vec<_>>();
            if next == h.conjugators {
                break;
            }
            h.conjugators = next;
        }
        h
    }

    /// Group commutator `a⁻¹ b⁻¹ a b` under [`ConjAut::compose`].
    pub fn commutator(a: &ConjAut, b: &ConjAut) -> Result<ConjAut> {
        let inv = ConjAut::compose(&a.inverse(), &b.inverse())?;
        ConjAut::compose(&inv, &ConjAut::compose(a, b)?)
    }

    /// Parses `i: word` entries separated by newlines or `/`. Every index
    /// `1..=n` must appear exactly once, where `n` is the number of entries.
    pub fn parse(text: &str, grade: Option<usize>) -> Result<ConjAut> {
        let mut entries: Vec<(usize, usize, &str)> = Vec::new();
        let mut start = 0;
        for piece in text.split(['\n', '/']) {
            let base = start;
            start += piece.len() + 1;
            let body = piece.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let Some(colon) = body.find(':') else {
                let at = base + body.len() - body.trim_start().len();
                return Err(Error::syntax_at(text, at, "expected `i: word`"));
            };
            let idx_text = body[..colon].trim();
            let idx: usize = idx_text.parse().map_err(|_| {
                Error::syntax_at(text, base, format!("bad strand index `{idx_text}`"))
            })?;
            entries.push((idx, base + colon + 1, &body[colon + 1..]));
        }
        let n = entries.len();
        let mut conjugators = vec![None; n];
        for &(idx, at, word) in &entries {
            if idx == 0 || idx > n {
                return Err(Error::IndexOutOfRange { index: idx, n });
            }
            if conjugators[idx - 1].is_some() {
                return Err(Error::InvalidArgument(format!("strand {idx} given twice")));
            }
            let w = Word::parse(n, word).map_err(|e| match e {
                Error::Syntax { col, msg, .. } => Error::syntax_at(text, at + col - 1, msg),
                other => other,
            })?;
            conjugators[idx - 1] = Some(w);
        }
        let conjugators: Vec<Word> = conjugators.into_iter().map(Option::unwrap).collect();
        let ctx = match grade {
            Some(k) => QuotientContext::nilpotent(n, k)?,
            None => QuotientContext::reduced(n),
        };
        ConjAut::new(ctx, conjugators)
    }
}

impl fmt::Display for ConjAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.conjugators.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", k + 1, l)?;
        }
        Ok(())
    }
}
