#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;

use welded_milnor::gauss::{Event, GaussData};
use welded_milnor::words::{Sign, Word};

pub fn random_sign(rng: &mut StdRng) -> Sign {
    if rng.gen() {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// Arbitrary Gauss data: event counts first, then each event refers to any
/// arc of any strand.
pub fn random_gauss(rng: &mut StdRng, n: usize, max_events: usize) -> GaussData {
    let total = rng.gen_range(0..=max_events);
    let mut counts = vec![0usize; n];
    for _ in 0..total {
        counts[rng.gen_range(0..n)] += 1;
    }
    let strands = counts
        .iter()
        .map(|&c| {
            (0..c)
                .map(|_| {
                    let over = rng.gen_range(1..=n);
                    Event {
                        over,
                        arc: rng.gen_range(0..=counts[over - 1]),
                        sign: random_sign(rng),
                    }
                })
                .collect()
        })
        .collect();
    GaussData::new(n, strands).unwrap()
}

pub fn random_word(rng: &mut StdRng, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<i64> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=n as i64);
            if rng.gen() {
                i
            } else {
                -i
            }
        })
        .collect();
    Word::from_signed(n, &letters).unwrap()
}

/// Left-normed commutator of `weight` random signed generators.
pub fn random_commutator(rng: &mut StdRng, n: usize, weight: usize) -> Word {
    let gen = |rng: &mut StdRng| {
        let i = rng.gen_range(1..=n as i64);
        Word::from_signed(n, &[if rng.gen() { i } else { -i }]).unwrap()
    };
    let mut w = gen(rng);
    for _ in 1..weight {
        w = Word::commutator(&w, &gen(rng)).unwrap();
    }
    w
}

/// PD code of the closure of a braid word on `strands` strands, with
/// strands running upward; `k` stands for σ_k and `-k` for its inverse.
/// Every strand must take part in some crossing.
pub fn braid_closure_pd(strands: usize, word: &[i32]) -> String {
    let mut pos: Vec<u32> = (1..=strands as u32).collect();
    let mut fresh = strands as u32 + 1;
    let mut crossings: Vec<([u32; 4], char)> = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        assert!(i + 1 < strands, "generator out of range");
        let (left, right) = (pos[i], pos[i + 1]);
        let (new_left, new_right) = (fresh, fresh + 1);
        fresh += 2;
        if g > 0 {
            // left strand over, moving right
            crossings.push(([right, new_right, new_left, left], '+'));
        } else {
            // right strand over, moving left
            crossings.push(([left, right, new_right, new_left], '-'));
        }
        pos[i] = new_left;
        pos[i + 1] = new_right;
    }
    // close up: the label leaving the top of position p is the one
    // entering the bottom of position p
    let rename = |l: u32| -> u32 {
        pos.iter()
            .position(|&p| p == l)
            .map_or(l, |p| p as u32 + 1)
    };
    let mut used: Vec<u32> = crossings.iter().flat_map(|c| c.0).map(rename).collect();
    used.sort_unstable();
    used.dedup();
    let compact = |l: u32| used.binary_search(&rename(l)).unwrap() as u32 + 1;
    crossings
        .iter()
        .map(|(ls, s)| {
            format!(
                "X[{},{},{},{}]{}",
                compact(ls[0]),
                compact(ls[1]),
                compact(ls[2]),
                compact(ls[3]),
                s
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn millis(start: std::time::Instant) -> u128 {
    start.elapsed().as_millis()
}
