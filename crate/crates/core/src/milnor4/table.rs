//! Residue classes and invariant tables with their TSV and JSON forms.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magnus::Monomial;

/// An integer modulo `modulus`; modulus 0 means an exact integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    value: BigInt,
    modulus: BigInt,
}

impl Residue {
    pub fn new(value: BigInt, modulus: BigInt) -> Self {
        let modulus = modulus.abs();
        let value = if modulus.is_zero() {
            value
        } else {
            value.mod_floor(&modulus)
        };
        Residue { value, modulus }
    }

    pub fn exact(value: BigInt) -> Self {
        Residue::new(value, BigInt::zero())
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus.is_zero() {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} mod {}", self.value, self.modulus)
        }
    }
}

/// Formats an index sequence: digits run together when every index is a
/// single digit, comma-separated otherwise.
pub fn format_sequence(seq: &[usize]) -> String {
    if seq.iter().all(|&i| i <= 9) {
        seq.iter().map(|i| i.to_string()).collect()
    } else {
        seq.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub fn parse_sequence(text: &str) -> Option<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    let seq: Option<Vec<usize>> = if text.contains(',') {
        text.split(',').map(|t| t.trim().parse().ok()).collect()
    } else {
        text.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect()
    };
    seq.filter(|s| s.iter().all(|&i| i >= 1))
}

/// Invariants indexed by sequences of length `2..=max_length` over `1..=n`,
/// kept in (length, lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorTable {
    n: usize,
    max_length: usize,
    entries: BTreeMap<Monomial, Residue>,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    n: usize,
    max_length: usize,
    entries: Vec<JsonEntry>,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    seq: Vec<usize>,
    value: serde_json::Number,
    modulus: serde_json::Number,
}

fn to_number(x: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&x.to_string()).expect("integers are JSON numbers")
}

fn from_number(x: &serde_json::Number) -> Result<BigInt> {
    BigInt::from_str(&x.to_string())
        .map_err(|_| Error::InvalidArgument(format!("non-integer table value {x}")))
}

/// All sequences over `1..=n` of length `len`, in lexicographic order.
pub fn sequences(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (1..=n).map(move |i| {
                    let mut t = s.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

impl MilnorTable {
    pub fn new(n: usize, max_length: usize) -> Self {
        MilnorTable {
            n,
            max_length,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn insert(&mut self, seq: Vec<usize>, r: Residue) -> Result<()> {
        if let Some(&i) = seq.iter().find(|&&i| i == 0 || i > self.n) {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        if seq.len() < 2 || seq.len() > self.max_length {
            return Err(Error::InvalidArgument(format!(
                "sequence {} outside lengths 2..={}",
                format_sequence(&seq),
                self.max_length
            )));
        }
        self.entries.insert(Monomial(seq), r);
        Ok(())
    }

    pub fn get(&self, seq: &[usize]) -> Option<&Residue> {
        self.entries.get(&Monomial(seq.to_vec()))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &Residue)> {
        self.entries.iter().map(|(m, r)| (m.0.as_slice(), r))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_tsv(&self) -> String {
        self.entries()
            .map(|(s, r)| format!("{}\t{}\t{}\n", format_sequence(s), r.value, r.modulus))
            .collect()
    }

    /// Reads `sequence<TAB>value<TAB>modulus` lines; blank lines and `#`
    /// comments are skipped. `n` and `max_length` are taken from the data.
    pub fn from_tsv(text: &str) -> Result<MilnorTable> {
        let mut rows = Vec::new();
        let mut offset = 0;
        for line in text.split('\n') {
            let at = offset;
            offset += line.len() + 1;
            let body = line.split('#').next().unwrap_or("").trim_end_matches('\r');
            if body.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::syntax_at(text, at, "expected `sequence value modulus`"));
            }
            let seq = parse_sequence(fields[0])
                .ok_or_else(|| Error::syntax_at(text, at, format!("bad sequence `{}`", fields[0])))?;
            let num = |f: &str| {
                BigInt::from_str(f)
                    .map_err(|_| Error::syntax_at(text, at, format!("bad integer `{f}`")))
            };
            rows.push((seq, num(fields[1])?, num(fields[2])?));
        }
        Self::from_rows(rows)
    }

    fn from_rows(rows: Vec<(Vec<usize>, BigInt, BigInt)>) -> Result<MilnorTable> {
        let n = rows.iter().flat_map(|r| r.0.iter().copied()).max().unwrap_or(0);
        let max_length = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let mut t = MilnorTable::new(n, max_length);
        for (seq, value, modulus) in rows {
            if modulus.is_negative() {
                return Err(Error::InvalidArgument(format!(
                    "negative modulus for {}",
                    format_sequence(&seq)
                )));
            }
            t.insert(seq, Residue::new(value, modulus))?;
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        let j = JsonTable {
            n: self.n,
            max_length: self.max_length,
            entries: self
                .entries()
                .map(|(s, r)| JsonEntry {
                    seq: s.to_vec(),
                    value: to_number(&r.value),
                    modulus: to_number(&r.modulus),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<MilnorTable> {
        let j: JsonTable = serde_json::from_str(text)?;
        let mut t = MilnorTable::new(j.n, j.max_length);
        for e in j.entries {
            let modulus = from_number(&e.modulus)?;
            if modulus.is_negative() {
                return Err(Error::InvalidArgument("negative modulus".into()));
            }
            t.insert(e.seq, Residue::new(from_number(&e.value)?, modulus))?;
        }
        Ok(t)
    }

    /// Accepts either serialization.
    pub fn parse(text: &str) -> Result<MilnorTable> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_tsv(text)
        }
    }
}
