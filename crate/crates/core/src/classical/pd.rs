//! PD-code text format.
//!
//! ```text
//! # positive Hopf link
//! X[1,3,2,4]+ X[3,1,4,2]+
//! C[1,2] C[3,4]
//! ```
//!
//! `X[i,j,k,l]±` lists the four edge labels counterclockwise starting at the
//! incoming under-edge, with an explicit crossing sign. The optional `C[...]`
//! entries fix the component order, one per component; prefixing a label
//! with `@` makes it the base edge of its component. Without a table,
//! components are ordered by their lowest label, which is also the default
//! base edge.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::words::Sign;

use super::{Crossing, PdDiagram};

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn skip_blank(&mut self) {
        loop {
            let rest = &self.text[self.pos..];
            let trimmed = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',' || c == ';');
            self.pos += rest.len() - trimmed.len();
            if trimmed.starts_with('#') {
                self.pos += trimmed.find('\n').unwrap_or(trimmed.len());
            } else {
                return;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::syntax_at(self.text, self.pos, msg)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn inner_blank(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn label(&mut self) -> Result<u32> {
        self.inner_blank();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let label = rest[..len]
            .parse()
            .map_err(|_| self.err("expected an edge label"))?;
        self.pos += len;
        self.inner_blank();
        Ok(label)
    }

    /// `[a, b, ...]`, each label optionally marked with `@`.
    fn list(&mut self) -> Result<Vec<(u32, bool)>> {
        self.expect('[')?;
        let mut out = Vec::new();
        loop {
            self.inner_blank();
            let marked = self.peek() == Some('@');
            if marked {
                self.pos += 1;
            }
            out.push((self.label()?, marked));
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err("expected `,` or `]`")),
            }
        }
    }
}

pub fn parse_pd(text: &str) -> Result<PdDiagram> {
    let mut s = Scanner { text, pos: 0 };
    let mut crossings = Vec::new();
    let mut table: Vec<(Vec<u32>, Option<u32>)> = Vec::new();
    loop {
        s.skip_blank();
        let Some(c) = s.peek() else { break };
        s.pos += c.len_utf8();
        match c {
            'X' => {
                let start = s.pos - 1;
                let labels = s.list()?;
                if labels.len() != 4 || labels.iter().any(|l| l.1) {
                    s.pos = start;
                    return Err(s.err("a crossing has exactly four unmarked labels"));
                }
                let sign = match s.peek() {
                    Some('+') => Sign::Pos,
                    Some('-') => Sign::Neg,
                    _ => return Err(s.err("expected crossing sign `+` or `-`")),
                };
                s.pos += 1;
                crossings.push(Crossing {
                    labels: [labels[0].0, labels[1].0, labels[2].0, labels[3].0],
                    sign,
                });
            }
            'C' => {
                let start = s.pos - 1;
                let labels = s.list()?;
                let bases: Vec<u32> = labels.iter().filter(|l| l.1).map(|l| l.0).collect();
                if bases.len() > 1 {
                    s.pos = start;
                    return Err(s.err("at most one base edge per component"));
                }
                table.push((labels.iter().map(|l| l.0).collect(), bases.first().copied()));
            }
            _ => {
                s.pos -= c.len_utf8();
                return Err(s.err(format!("unexpected `{c}`")));
            }
        }
    }
    if crossings.is_empty() {
        return Err(Error::PdDiagram("no crossings".into()));
    }
    build(crossings, table)
}

/// Where an edge starts and ends: `(crossing, slot)` pairs.
#[derive(Default, Clone, Copy)]
struct Ends {
    tail: Option<(usize, usize)>,
    head: Option<(usize, usize)>,
}

fn build(crossings: Vec<Crossing>, table: Vec<(Vec<u32>, Option<u32>)>) -> Result<PdDiagram> {
    let mut ends: BTreeMap<u32, Ends> = BTreeMap::new();
    for (x, c) in crossings.iter().enumerate() {
        let (over_in, over_out) = c.over_slots();
        for (slot, &label) in c.labels.iter().enumerate() {
            let e = ends.entry(label).or_default();
            let target = if slot == 0 || slot == over_in {
                &mut e.head
            } else {
                debug_assert!(slot == 2 || slot == over_out);
                &mut e.tail
            };
            if target.is_some() {
                let role = if slot == 0 || slot == over_in { "enters" } else { "leaves" };
                return Err(Error::PdArc {
                    label,
                    msg: format!("{role} more than one crossing (check crossing signs)"),
                });
            }
            *target = Some((x, slot));
        }
    }
    let mut next: BTreeMap<u32, u32> = BTreeMap::new();
    let mut under_at: BTreeMap<u32, usize> = BTreeMap::new();
    for (&label, e) in &ends {
        let (Some(_), Some((x, slot))) = (e.tail, e.head) else {
            return Err(Error::PdArc {
                label,
                msg: "used only once".into(),
            });
        };
        let c = &crossings[x];
        let out = if slot == 0 {
            under_at.insert(label, x);
            c.labels[2]
        } else {
            c.labels[c.over_slots().1]
        };
        next.insert(label, out);
    }

    // trace components
    let mut seen = BTreeSet::new();
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    for &start in next.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut cycle = vec![start];
        seen.insert(start);
        let mut e = next[&start];
        while e != start {
            if !seen.insert(e) {
                return Err(Error::PdArc {
                    label: e,
                    msg: "edges do not form closed components".into(),
                });
            }
            cycle.push(e);
            e = next[&e];
        }
        cycles.push(cycle);
    }

    let ordered: Vec<(Vec<u32>, u32)> = if table.is_empty() {
        cycles
            .into_iter()
            .map(|c| {
                let base = *c.iter().min().expect("cycles are nonempty");
                (c, base)
            })
            .collect()
    } else {
        if table.len() != cycles.len() {
            return Err(Error::PdDiagram(format!(
                "component table lists {} components, diagram has {}",
                table.len(),
                cycles.len()
            )));
        }
        let mut out: Vec<(Vec<u32>, u32)> = Vec::new();
        for (labels, base) in table {
            let set: BTreeSet<u32> = labels.iter().copied().collect();
            let Some(cycle) = cycles.iter().find(|c| c.contains(&labels[0])) else {
                return Err(Error::PdArc {
                    label: labels[0],
                    msg: "not an edge of the diagram".into(),
                });
            };
            let cycle_set: BTreeSet<u32> = cycle.iter().copied().collect();
            if set != cycle_set {
                let bad = set
                    .symmetric_difference(&cycle_set)
                    .next()
                    .copied()
                    .expect("sets differ");
                return Err(Error::PdArc {
                    label: bad,
                    msg: "component table does not match the traced component".into(),
                });
            }
            if out.iter().any(|(c, _)| c == cycle) {
                return Err(Error::PdArc {
                    label: labels[0],
                    msg: "component listed twice".into(),
                });
            }
            let base = base.unwrap_or_else(|| *set.iter().next().expect("nonempty"));
            out.push((cycle.clone(), base));
        }
        out
    };

    // rotate each cycle to start at its base edge
    let components: Vec<Vec<u32>> = ordered
        .into_iter()
        .map(|(mut c, base)| {
            let at = c.iter().position(|&e| e == base).expect("base on its cycle");
            c.rotate_left(at);
            c
        })
        .collect();
    Ok(PdDiagram::assemble(crossings, components, under_at))
}
