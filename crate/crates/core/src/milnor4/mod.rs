//! Milnor invariants μ⁽⁴⁾ of welded string links: coefficients of the Magnus
//! expansions of the preferred longitudes, optionally reduced modulo the
//! indeterminacy of a classical boundary link.
//!
//! For `I = i_1 … i_{m-1} i`, the entry is the coefficient of
//! `X_{i_1} ⋯ X_{i_{m-1}}` in the expansion of the `i`-th longitude.

mod table;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

pub use table::{format_sequence, parse_sequence, sequences, MilnorTable, Residue};

use crate::error::{Error, Result};
use crate::gauss::{GaussData, LongitudeSet};
use crate::magnus::{magnus, Monomial};
use crate::nilpotent::QuotientContext;

/// Invariants of length `2..=m` of a diagram. Without an indeterminacy table
/// the boundary is the trivial link and every entry is an exact integer.
pub fn mu4(d: &GaussData, m: usize, indeterminacy: Option<&MilnorTable>) -> Result<MilnorTable> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("max length {m} < 2")));
    }
    let ctx = QuotientContext::nilpotent(d.n(), m)?;
    let sol = d.solve(&ctx)?;
    mu4_from_longitudes(&sol.longitudes, m - 1, m, indeterminacy)
}

/// Same as [`mu4`] for longitudes known to be correct up to Magnus degree
/// `accurate_degree`.
pub fn mu4_from_longitudes(
    l: &LongitudeSet,
    accurate_degree: usize,
    m: usize,
    indeterminacy: Option<&MilnorTable>,
) -> Result<MilnorTable> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("max length {m} < 2")));
    }
    if m - 1 > accurate_degree {
        return Err(Error::TruncationExceeded {
            requested: m,
            available: accurate_degree + 1,
        });
    }
    let n = l.n();
    if let Some(t) = indeterminacy {
        if t.n() != n {
            return Err(Error::StrandMismatch { left: t.n(), right: n });
        }
    }
    let expansions: Vec<_> = l.words().iter().map(|w| magnus(w, m - 1)).collect();
    let mut table = MilnorTable::new(n, m);
    for len in 2..=m {
        for seq in sequences(n, len) {
            let (prefix, last) = seq.split_at(len - 1);
            let value = expansions[last[0] - 1].coefficient(prefix)?;
            let modulus = match indeterminacy {
                Some(t) => indeterminacy_of(t, &seq)?,
                None => BigInt::zero(),
            };
            table.insert(seq, Residue::new(value, modulus))?;
        }
    }
    Ok(table)
}

fn lookup(classical: &MilnorTable, seq: &[usize]) -> Result<BigInt> {
    if seq.len() < 2 {
        return Ok(BigInt::zero());
    }
    classical
        .get(seq)
        .map(|r| r.value().clone())
        .ok_or_else(|| Error::MissingEntry(format_sequence(seq)))
}

/// `Δ(I)`: gcd of the invariants of all cyclic rotations of all proper
/// subsequences of `I`. Length-one invariants count as 0, and the gcd of
/// nothing is 0.
pub fn delta(classical: &MilnorTable, seq: &[usize]) -> Result<BigInt> {
    let len = seq.len();
    let mut g = BigInt::zero();
    if len > 24 {
        return Err(Error::InvalidArgument("sequence too long".into()));
    }
    for mask in 0u32..(1 << len) - 1 {
        let sub: Vec<usize> = (0..len).filter(|&b| mask >> b & 1 == 1).map(|b| seq[b]).collect();
        if sub.len() < 2 {
            continue;
        }
        for r in 0..sub.len() {
            let rotated: Vec<usize> = sub[r..].iter().chain(&sub[..r]).copied().collect();
            g = g.gcd(&lookup(classical, &rotated)?);
        }
    }
    Ok(g)
}

/// `Δ̄(I) = gcd(μ(I), Δ(I))`, the modulus of `μ⁽⁴⁾(I)` over the boundary
/// whose classical invariants are `classical`.
pub fn indeterminacy_of(classical: &MilnorTable, seq: &[usize]) -> Result<BigInt> {
    Ok(lookup(classical, seq)?.gcd(&delta(classical, seq)?))
}

/// Reduces exact integer invariants modulo `Δ(I)`, shortest sequences first
/// so that every gcd is taken over already reduced entries.
pub fn reduce_by_delta(exact: &MilnorTable) -> Result<MilnorTable> {
    let mut out = MilnorTable::new(exact.n(), exact.max_length());
    for (seq, r) in exact.entries() {
        let modulus = delta(&out, seq)?;
        out.insert(seq.to_vec(), Residue::new(r.value().clone(), modulus))?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Distinct {
        seq: Vec<usize>,
        left: Residue,
        right: Residue,
    },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal)
    }
}

fn is_necklace(seq: &[usize]) -> bool {
    (1..seq.len()).all(|r| seq.iter().le(seq[r..].iter().chain(&seq[..r])))
}

/// Compares the entries selected by `keep`. The witness is taken among the
/// shortest differing sequences, preferring one that is minimal among its
/// cyclic rotations: invariants are cyclically symmetric modulo shorter
/// ones, so such a representative names the whole rotation class.
pub fn compare_tables(
    a: &MilnorTable,
    b: &MilnorTable,
    keep: impl Fn(&[usize]) -> bool,
) -> Verdict {
    let mut best: Option<(Vec<usize>, Residue, Residue)> = None;
    for (seq, left) in a.entries().filter(|(s, _)| keep(s)) {
        if let Some((first, ..)) = &best {
            if seq.len() > first.len() {
                break;
            }
        }
        let right = b.get(seq).cloned().unwrap_or_else(|| Residue::exact(BigInt::zero()));
        if *left == right {
            continue;
        }
        let better = match &best {
            None => true,
            Some((first, ..)) => !is_necklace(first) && is_necklace(seq),
        };
        if better {
            best = Some((seq.to_vec(), left.clone(), right));
        }
    }
    match best {
        None => Verdict::Equal,
        Some((seq, left, right)) => Verdict::Distinct { seq, left, right },
    }
}

fn check_same_n(a: &GaussData, b: &GaussData) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::StrandMismatch { left: a.n(), right: b.n() });
    }
    Ok(())
}

/// Compares the invariants indexed by non-repeated sequences.
pub fn link_homotopy_verdict(a: &GaussData, b: &GaussData) -> Result<Verdict> {
    check_same_n(a, b)?;
    let m = a.n().max(2);
    let keep = |s: &[usize]| !Monomial(s.to_vec()).is_repeated();
    Ok(compare_tables(&mu4(a, m, None)?, &mu4(b, m, None)?, keep))
}

pub fn classify_link_homotopy(a: &GaussData, b: &GaussData) -> Result<bool> {
    Ok(link_homotopy_verdict(a, b)?.is_equal())
}

/// Compares all invariants of length at most `k`.
pub fn concordance_verdict(a: &GaussData, b: &GaussData, k: usize) -> Result<Verdict> {
    check_same_n(a, b)?;
    let m = k.max(2);
    let keep = |s: &[usize]| s.len() <= k;
    Ok(compare_tables(&mu4(a, m, None)?, &mu4(b, m, None)?, keep))
}

pub fn classify_concordance_k(a: &GaussData, b: &GaussData, k: usize) -> Result<bool> {
    Ok(concordance_verdict(a, b, k)?.is_equal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Sign, Word};

    fn lambda(n: usize, i: usize, j: usize) -> GaussData {
        GaussData::elementary(n, i, j, Sign::Pos).unwrap()
    }

    fn val(t: &MilnorTable, s: &[usize]) -> i64 {
        t.get(s).unwrap().value().try_into().unwrap()
    }

    fn exact(n: usize, m: usize, rows: &[(&[usize], i64)]) -> MilnorTable {
        let mut t = MilnorTable::new(n, m);
        for len in 2..=m {
            for s in sequences(n, len) {
                t.insert(s, Residue::exact(BigInt::zero())).unwrap();
            }
        }
        for (s, v) in rows {
            t.insert(s.to_vec(), Residue::exact((*v).into())).unwrap();
        }
        t
    }

    #[test]
    fn trivial_table_is_zero() {
        for m in 2..=4 {
            let t = mu4(&GaussData::trivial(3), m, None).unwrap();
            assert_eq!(t.len(), (2..=m).map(|l| 3usize.pow(l as u32)).sum::<usize>());
            assert!(t.entries().all(|(_, r)| r.is_zero() && r.modulus().is_zero()));
        }
        assert!(mu4(&GaussData::trivial(2), 1, None).is_err());
    }

    #[test]
    fn two_strand_pattern() {
        let ab = lambda(2, 1, 2).stack(&lambda(2, 2, 1)).unwrap();
        let ba = lambda(2, 2, 1).stack(&lambda(2, 1, 2)).unwrap();
        let (ta, tb) = (mu4(&ab, 3, None).unwrap(), mu4(&ba, 3, None).unwrap());
        for t in [&ta, &tb] {
            assert_eq!(val(t, &[1, 2]), 1);
            assert_eq!(val(t, &[2, 1]), 1);
        }
        assert_eq!(val(&ta, &[1, 2, 2]), 0);
        assert_eq!(val(&tb, &[1, 2, 2]), 1);
        assert!(classify_link_homotopy(&ab, &ba).unwrap());
        assert!(classify_concordance_k(&ab, &ba, 2).unwrap());
        assert_eq!(
            concordance_verdict(&ab, &ba, 3).unwrap(),
            Verdict::Distinct {
                seq: vec![1, 2, 2],
                left: Residue::exact(0.into()),
                right: Residue::exact(1.into()),
            }
        );
    }

    #[test]
    fn three_strand_pattern() {
        let cd = lambda(3, 1, 2).stack(&lambda(3, 2, 3)).unwrap();
        let dc = lambda(3, 2, 3).stack(&lambda(3, 1, 2)).unwrap();
        assert_eq!(val(&mu4(&cd, 3, None).unwrap(), &[1, 2, 3]), -1);
        assert_eq!(val(&mu4(&dc, 3, None).unwrap(), &[1, 2, 3]), 0);
        match link_homotopy_verdict(&cd, &dc).unwrap() {
            Verdict::Distinct { seq, .. } => assert_eq!(seq, vec![1, 2, 3]),
            v => panic!("{v:?}"),
        }
        for d in [&cd, &dc] {
            assert!(classify_link_homotopy(d, d).unwrap());
            assert!(classify_concordance_k(d, d, 4).unwrap());
        }
        assert!(classify_link_homotopy(&cd, &GaussData::trivial(2)).is_err());
    }

    #[test]
    fn truncation_is_checked() {
        let l = LongitudeSet::preferred(&[Word::identity(2), Word::identity(2)]);
        assert!(matches!(
            mu4_from_longitudes(&l, 2, 4, None),
            Err(Error::TruncationExceeded { requested: 4, available: 3 })
        ));
        assert!(mu4_from_longitudes(&l, 3, 4, None).is_ok());
    }

    #[test]
    fn extra_solver_passes_do_not_change_the_table() {
        let d = lambda(3, 1, 2)
            .stack(&lambda(3, 3, 1))
            .unwrap()
            .stack(&GaussData::elementary(3, 2, 3, Sign::Neg).unwrap())
            .unwrap();
        let t = mu4(&d, 4, None).unwrap();
        let sol = d.solve_rounds(&QuotientContext::nilpotent(3, 4).unwrap(), 8).unwrap();
        assert_eq!(mu4_from_longitudes(&sol.longitudes, 3, 4, None).unwrap(), t);
    }

    fn hopf(m: usize) -> MilnorTable {
        reduce_by_delta(&exact(2, m, &[(&[1, 2], 1), (&[2, 1], 1)])).unwrap()
    }

    #[test]
    fn indeterminacy_examples() {
        let zero = exact(3, 3, &[]);
        for s in sequences(3, 3) {
            assert_eq!(indeterminacy_of(&zero, &s).unwrap(), BigInt::zero());
        }
        let h = hopf(4);
        assert_eq!(delta(&h, &[1, 2]).unwrap(), BigInt::zero());
        for len in 2..=4 {
            for s in sequences(2, len) {
                if s.contains(&1) && s.contains(&2) {
                    assert_eq!(indeterminacy_of(&h, &s).unwrap(), BigInt::from(1), "{s:?}");
                }
            }
        }
        assert!(matches!(
            delta(&MilnorTable::new(2, 3), &[1, 2, 2]),
            Err(Error::MissingEntry(_))
        ));
    }

    #[test]
    fn residues_under_hopf_boundary() {
        let ab = lambda(2, 2, 1).stack(&lambda(2, 1, 2)).unwrap();
        let t = mu4(&ab, 3, Some(&hopf(3))).unwrap();
        assert_eq!(t.get(&[1, 2, 2]).unwrap(), &Residue::new(0.into(), 1.into()));
        assert_eq!(t.get(&[1, 1]).unwrap(), &Residue::exact(0.into()));
    }

    #[test]
    fn witness_prefers_rotation_minimal_sequences() {
        let a = exact(2, 3, &[(&[1, 2, 1], -1), (&[2, 1, 1], 1)]);
        let b = exact(2, 3, &[(&[1, 2, 2], 1), (&[2, 1, 2], -1)]);
        match compare_tables(&a, &b, |_| true) {
            Verdict::Distinct { seq, .. } => assert_eq!(seq, vec![1, 2, 2]),
            v => panic!("{v:?}"),
        }
        let c = exact(2, 3, &[(&[2, 1], 1), (&[1, 1, 2], 1)]);
        match compare_tables(&a, &c, |_| true) {
            Verdict::Distinct { seq, .. } => assert_eq!(seq, vec![2, 1]),
            v => panic!("{v:?}"),
        }
        assert!(compare_tables(&a, &a, |_| true).is_equal());
    }

    #[test]
    fn delta_uses_rotations() {
        // only μ(21) is nonzero; it is a rotation of the subsequence 12 of 123
        let t = exact(3, 3, &[(&[2, 1], 4), (&[3, 2], 6)]);
        assert_eq!(delta(&t, &[1, 2, 3]).unwrap(), BigInt::from(2));
        assert_eq!(delta(&t, &[1, 3, 3]).unwrap(), BigInt::zero());
    }
}
