//! Welded string links presented by Gauss data: for each strand, the ordered
//! list (bottom to top) of the classical crossings it passes under.
//!
//! Arc `t` of strand `j` is the piece of strand `j` between its `t`-th and
//! `(t+1)`-th under-crossings, so a strand with `m` under-events has `m + 1`
//! arcs. Virtual crossings are not recorded.
//!
//! Crossing rule: passing under an arc colored `c` with sign `ε` turns the
//! color `w` into `c^{-ε} w c^{ε}`. With this rule the single positive event
//! "strand `j` under arc 0 of strand `i`" is the basis-conjugating generator
//! `x_j ↦ x_i⁻¹ x_j x_i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nilpotent::QuotientContext;
use crate::words::{Letter, Sign, Word};

/// Colors and longitudes up to this length are kept letter for letter.
pub const COLLECT_ABOVE: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Event {
    /// 1-based index of the over-strand.
    pub over: usize,
    /// 0-based arc of the over-strand.
    pub arc: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGauss")]
pub struct GaussData {
    n: usize,
    strands: Vec<Vec<Event>>,
}

#[derive(Deserialize)]
struct RawGauss {
    n: usize,
    strands: Vec<Vec<Event>>,
}

impl TryFrom<RawGauss> for GaussData {
    type Error = Error;

    fn try_from(raw: RawGauss) -> Result<Self> {
        GaussData::new(raw.n, raw.strands)
    }
}

impl GaussData {
    pub fn new(n: usize, strands: Vec<Vec<Event>>) -> Result<Self> {
        if strands.len() != n {
            return Err(Error::StrandMismatch {
                left: n,
                right: strands.len(),
            });
        }
        let d = GaussData { n, strands };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        for (s, events) in self.strands.iter().enumerate() {
            for (e, ev) in events.iter().enumerate() {
                let bad = |msg: String| Error::MalformedGauss {
                    strand: s + 1,
                    event: e,
                    msg,
                };
                if ev.over == 0 || ev.over > self.n {
                    return Err(bad(format!("over-strand {} out of range", ev.over)));
                }
                let arcs = self.strands[ev.over - 1].len() + 1;
                if ev.arc >= arcs {
                    return Err(bad(format!(
                        "arc {} of strand {} does not exist ({} arcs)",
                        ev.arc, ev.over, arcs
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(n: usize) -> Self {
        GaussData {
            n,
            strands: vec![Vec::new(); n],
        }
    }

    /// One crossing: strand `under` passes under arc 0 of strand `over`.
    /// With a positive sign this realizes `x_under ↦ x_over⁻¹ x_under x_over`.
    pub fn elementary(n: usize, over: usize, under: usize, sign: Sign) -> Result<Self> {
        for i in [over, under] {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
        }
        let mut d = GaussData::trivial(n);
        d.strands[under - 1].push(Event { over, arc: 0, sign });
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn strands(&self) -> &[Vec<Event>] {
        &self.strands
    }

    pub fn event_count(&self) -> usize {
        self.strands.iter().map(Vec::len).sum()
    }

    fn check_same_n(&self, other: &GaussData) -> Result<()> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// `self` below `other`.
    pub fn stack(&self, other: &GaussData) -> Result<GaussData> {
        self.check_same_n(other)?;
        let offsets: Vec<usize> = self.strands.iter().map(Vec::len).collect();
        let strands = self
            .strands
            .iter()
            .zip(&other.strands)
            .map(|(lower, upper)| {
                lower
                    .iter()
                    .copied()
                    .chain(upper.iter().map(|ev| Event {
                        arc: ev.arc + offsets[ev.over - 1],
                        ..*ev
                    }))
                    .collect()
            })
            .collect();
        Ok(GaussData { n: self.n, strands })
    }

    /// Upside-down reflection: reverses each strand, flips every sign and
    /// renumbers arcs from the top.
    pub fn mirror(&self) -> GaussData {
        let lens: Vec<usize> = self.strands.iter().map(Vec::len).collect();
        let strands = self
            .strands
            .iter()
            .map(|events| {
                events
                    .iter()
                    .rev()
                    .map(|ev| Event {
                        over: ev.over,
                        arc: lens[ev.over - 1] - ev.arc,
                        sign: -ev.sign,
                    })
                    .collect()
            })
            .collect();
        GaussData { n: self.n, strands }
    }

    /// `x · c · mirror(x)`.
    pub fn conjugate_by(x: &GaussData, c: &GaussData) -> Result<GaussData> {
        x.stack(c)?.stack(&x.mirror())
    }

    /// A diagram whose `i`-th longitude reads `conjugators[i]` letter for
    /// letter: every over-crossing sits on the bottom arc of its strand,
    /// which keeps the color `x_j`.
    pub fn realize(conjugators: &[Word]) -> Result<GaussData> {
        let n = conjugators.len();
        let mut strands = Vec::with_capacity(n);
        for w in conjugators {
            if w.n() != n {
                return Err(Error::StrandMismatch {
                    left: w.n(),
                    right: n,
                });
            }
            strands.push(
                w.letters()
                    .iter()
                    .map(|l| Event {
                        over: l.index,
                        arc: 0,
                        sign: l.sign,
                    })
                    .collect(),
            );
        }
        GaussData::new(n, strands)
    }

    pub fn solve(&self, ctx: &QuotientContext) -> Result<Solution> {
        if ctx.n() != self.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: ctx.n(),
            });
        }
        self.solve_rounds(ctx, ctx.rounds())
    }

    /// Runs at most `rounds` substitution passes, stopping early once a pass
    /// leaves every color unchanged. Words longer than [`COLLECT_ABOVE`]
    /// letters are replaced by their collected form, which is canonical in
    /// the quotient, so short colors and longitudes stay exactly as read.
    pub fn solve_rounds(&self, ctx: &QuotientContext, rounds: usize) -> Result<Solution> {
        if ctx.n() != self.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: ctx.n(),
            });
        }
        let shorten = |w: Word| -> Word {
            if w.len() > COLLECT_ABOVE {
                ctx.collect(&w).expect("same n")
            } else {
                w
            }
        };
        let n = self.n;
        let mut colors: Vec<Vec<Word>> = self
            .strands
            .iter()
            .enumerate()
            .map(|(j, events)| vec![gen(n, j + 1); events.len() + 1])
            .collect();
        for _ in 0..rounds {
            let mut changed = false;
            for j in 0..n {
                for t in 0..self.strands[j].len() {
                    let ev = self.strands[j][t];
                    let c = colors[ev.over - 1][ev.arc].pow(ev.sign.as_i64());
                    let next = shorten(colors[j][t].conjugate(&c));
                    if next != colors[j][t + 1] {
                        colors[j][t + 1] = next;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let raw: Vec<Word> = (0..n)
            .map(|i| {
                shorten(self.strands[i].iter().fold(Word::identity(n), |acc, ev| {
                    acc.mul_unchecked(&colors[ev.over - 1][ev.arc].pow(ev.sign.as_i64()))
                }))
            })
            .collect();
        let longitudes = LongitudeSet::preferred(&raw);
        Ok(Solution {
            colors,
            raw,
            longitudes,
        })
    }
}

fn gen(n: usize, i: usize) -> Word {
    Word::from_letters(n, [Letter::new(i, Sign::Pos)]).expect("index in range")
}

/// Longitudes with zero exponent sum on their own generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongitudeSet {
    n: usize,
    words: Vec<Word>,
}

impl LongitudeSet {
    /// Normalizes by left multiplication with a power of `x_i`, which does
    /// not change the conjugation `l⁻¹ x_i l`.
    pub fn preferred(raw: &[Word]) -> Self {
        let n = raw.len();
        let words = raw
            .iter()
            .enumerate()
            .map(|(k, w)| {
                let e = w.exponent_sum(k + 1).expect("index in range");
                gen(n, k + 1).pow(-e).mul_unchecked(w)
            })
            .collect();
        LongitudeSet { n, words }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Longitude of strand `i` (1-based).
    pub fn get(&self, i: usize) -> &Word {
        &self.words[i - 1]
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    /// `colors[j][t]`: color of arc `t` on strand `j + 1`, in bottom meridians.
    pub colors: Vec<Vec<Word>>,
    /// Longitudes as read off the diagram, before normalization.
    pub raw: Vec<Word>,
    pub longitudes: LongitudeSet,
}

impl Solution {
    /// Top color of strand `i` (1-based).
    pub fn top(&self, i: usize) -> &Word {
        self.colors[i - 1].last().expect("every strand has an arc")
    }
}
