//! Input sources and the braid-like DSL for welded diagrams.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gauss::GaussData;
use crate::words::Sign;

/// `-` reads standard input, an existing path is read as a file, anything
/// else is taken as the text itself.
pub fn read_source(arg: &str, stdin: &mut dyn Read) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        return Ok(s);
    }
    if !arg.is_empty() && Path::new(arg).is_file() {
        return Ok(std::fs::read_to_string(arg)?);
    }
    Ok(arg.to_string())
}

pub fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraidToken {
    pub over: usize,
    pub under: usize,
    pub sign: Sign,
}

/// Tokens `a[i,j]` (strand `j` passes under strand `i`, positively) and
/// `A[i,j]` (its inverse), separated by whitespace, bottom to top.
pub fn parse_braid_tokens(text: &str) -> Result<Vec<BraidToken>> {
    let mut out = Vec::new();
    let mut at = 0;
    loop {
        let rest = &text[at..];
        let Some(skip) = rest.find(|c: char| !c.is_whitespace()) else {
            break;
        };
        at += skip;
        let rest = &text[at..];
        // a token runs to its closing bracket, so `a[1, 2]` is one token
        let word_end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let len = match (rest.find('['), rest.find(']')) {
            (Some(open), Some(close)) if open < word_end && open < close => close + 1,
            _ => word_end,
        };
        let (tok, tok_at) = (&rest[..len], at);
        at += len;
        let bad = || Error::syntax_at(text, tok_at, format!("bad token `{tok}`, expected a[i,j] or A[i,j]"));
        let sign = match tok.as_bytes()[0] {
            b'a' => Sign::Pos,
            b'A' => Sign::Neg,
            _ => return Err(bad()),
        };
        let inner = tok[1..]
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (i, j) = inner.split_once(',').ok_or_else(bad)?;
        let over: usize = i.trim().parse().map_err(|_| bad())?;
        let under: usize = j.trim().parse().map_err(|_| bad())?;
        if over == 0 || under == 0 {
            return Err(bad());
        }
        out.push(BraidToken { over, under, sign });
    }
    Ok(out)
}

pub fn braid_strands(tokens: &[BraidToken]) -> usize {
    tokens.iter().map(|t| t.over.max(t.under)).max().unwrap_or(1)
}

pub fn braid_to_gauss(tokens: &[BraidToken], n: usize) -> Result<GaussData> {
    tokens.iter().try_fold(GaussData::trivial(n), |acc, t| {
        acc.stack(&GaussData::elementary(n, t.over, t.under, t.sign)?)
    })
}

/// Parsed welded input whose strand count may still be open.
#[derive(Debug)]
pub enum Welded {
    Braid(Vec<BraidToken>),
    Gauss(GaussData),
}

impl Welded {
    pub fn parse(text: &str) -> Result<Welded> {
        if is_json(text) {
            Ok(Welded::Gauss(serde_json::from_str(text)?))
        } else {
            Ok(Welded::Braid(parse_braid_tokens(text)?))
        }
    }

    /// Strand count the input needs, or the one it fixes.
    pub fn strands(&self) -> usize {
        match self {
            Welded::Braid(t) => braid_strands(t),
            Welded::Gauss(d) => d.n(),
        }
    }

    pub fn into_gauss(self, n: usize) -> Result<GaussData> {
        match self {
            Welded::Braid(t) => braid_to_gauss(&t, n),
            Welded::Gauss(d) if d.n() == n => Ok(d),
            Welded::Gauss(d) => Err(Error::StrandMismatch { left: d.n(), right: n }),
        }
    }
}
