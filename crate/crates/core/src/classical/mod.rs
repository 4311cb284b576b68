//! Classical Milnor invariants of links given by PD codes.
//!
//! Arcs of the diagram (edges merged through over-passes) are colored by
//! words in the base meridians `x_1, …, x_n` by the same crossing rule as
//! for welded diagrams: passing under an arc colored `c` at a crossing of
//! sign `ε` turns `w` into `c^{-ε} w c^{ε}`. Each component is cut at the
//! start of its base edge, so the stretch leading back to the base edge is
//! an arc of its own, colored by transport along the component; the
//! relation closing the component up is the one left out, as in Milnor's
//! presentation of the nilpotent quotients of a link group.

mod pd;

use std::collections::BTreeMap;

use num_bigint::BigInt;

pub use pd::parse_pd;

use crate::error::{Error, Result};
use crate::gauss::LongitudeSet;
use crate::milnor4::{mu4_from_longitudes, reduce_by_delta, MilnorTable};
use crate::words::{Sign, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    /// Counterclockwise from the incoming under-edge.
    pub labels: [u32; 4],
    pub sign: Sign,
}

impl Crossing {
    /// Slots of the incoming and outgoing over-edges.
    fn over_slots(&self) -> (usize, usize) {
        match self.sign {
            Sign::Pos => (3, 1),
            Sign::Neg => (1, 3),
        }
    }
}

/// One passage of a component under another arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct UnderPass {
    from: usize,
    to: usize,
    over: usize,
    sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdDiagram {
    crossings: Vec<Crossing>,
    /// Edge labels of each component in traversal order, base edge first.
    components: Vec<Vec<u32>>,
    arc_of: BTreeMap<u32, usize>,
    component_of_arc: Vec<usize>,
    /// Per component, the under-passes in traversal order.
    passes: Vec<Vec<UnderPass>>,
}

impl PdDiagram {
    fn assemble(
        crossings: Vec<Crossing>,
        components: Vec<Vec<u32>>,
        under_at: BTreeMap<u32, usize>,
    ) -> PdDiagram {
        let mut arc_of = BTreeMap::new();
        let mut component_of_arc = Vec::new();
        for (ci, edges) in components.iter().enumerate() {
            let first = component_of_arc.len();
            component_of_arc.push(ci);
            let mut current = first;
            let last = edges.len() - 1;
            for (t, e) in edges.iter().enumerate() {
                arc_of.insert(*e, current);
                if t < last && under_at.contains_key(e) {
                    current = component_of_arc.len();
                    component_of_arc.push(ci);
                }
            }
        }
        let passes = components
            .iter()
            .map(|edges| {
                edges
                    .iter()
                    .enumerate()
                    .filter_map(|(t, e)| {
                        let x = *under_at.get(e)?;
                        let c = &crossings[x];
                        let next = edges[(t + 1) % edges.len()];
                        Some(UnderPass {
                            from: arc_of[e],
                            to: arc_of[&next],
                            over: arc_of[&c.labels[c.over_slots().0]],
                            sign: c.sign,
                        })
                    })
                    .collect()
            })
            .collect();
        PdDiagram {
            crossings,
            components,
            arc_of,
            component_of_arc,
            passes,
        }
    }

    /// Number of components.
    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Edge labels of component `i` (1-based), starting at its base edge.
    pub fn component(&self, i: usize) -> &[u32] {
        &self.components[i - 1]
    }

    /// Component (1-based) carrying an edge.
    pub fn component_of(&self, label: u32) -> Option<usize> {
        self.arc_of.get(&label).map(|&a| self.component_of_arc[a] + 1)
    }

    pub fn arc_count(&self) -> usize {
        self.component_of_arc.len()
    }

    /// Linking number of two distinct components from the signed crossing
    /// count.
    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64> {
        for k in [i, j] {
            if k == 0 || k > self.n() {
                return Err(Error::IndexOutOfRange { index: k, n: self.n() });
            }
        }
        let twice: i64 = self
            .crossings
            .iter()
            .filter(|c| {
                let a = self.component_of(c.labels[0]);
                let b = self.component_of(c.labels[1]);
                (a, b) == (Some(i), Some(j)) || (a, b) == (Some(j), Some(i))
            })
            .map(|c| c.sign.as_i64())
            .sum();
        Ok(if i == j { 0 } else { twice / 2 })
    }

    fn arc_colors(&self, passes: usize) -> Vec<Word> {
        let n = self.n();
        let mut colors: Vec<Word> = self
            .component_of_arc
            .iter()
            .map(|&c| Word::generator(n, c + 1).expect("index in range"))
            .collect();
        let bases: Vec<usize> = self.components.iter().map(|e| self.arc_of[&e[0]]).collect();
        for _ in 0..passes {
            let mut changed = false;
            for (ci, list) in self.passes.iter().enumerate() {
                for p in list {
                    if p.to == bases[ci] {
                        continue;
                    }
                    let c = colors[p.over].pow(p.sign.as_i64());
                    let next = colors[p.from].conjugate(&c);
                    if next != colors[p.to] {
                        colors[p.to] = next;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        colors
    }

    fn raw_longitudes(&self, colors: &[Word]) -> Vec<Word> {
        let n = self.n();
        self.passes
            .iter()
            .map(|list| {
                list.iter().fold(Word::identity(n), |acc, p| {
                    acc.mul_unchecked(&colors[p.over].pow(p.sign.as_i64()))
                })
            })
            .collect()
    }
}

/// Every edge's meridian as a word in the base meridians, correct modulo
/// `Γ_k`, after `k - 1` substitution passes.
pub fn chen_solve(d: &PdDiagram, k: usize) -> Result<BTreeMap<u32, Word>> {
    chen_solve_passes(d, check_k(k)? - 1)
}

/// [`chen_solve`] with an explicit pass count.
pub fn chen_solve_passes(d: &PdDiagram, passes: usize) -> Result<BTreeMap<u32, Word>> {
    let colors = d.arc_colors(passes);
    Ok(d.arc_of
        .iter()
        .map(|(&label, &a)| (label, colors[a].clone()))
        .collect())
}

fn check_k(k: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("grade {k} < 2")));
    }
    Ok(k)
}

/// Preferred longitudes (zero linking with their own component), correct
/// modulo `Γ_k`.
pub fn longitudes(d: &PdDiagram, k: usize) -> Result<LongitudeSet> {
    let colors = d.arc_colors(check_k(k)? - 1);
    Ok(LongitudeSet::preferred(&d.raw_longitudes(&colors)))
}

/// Invariants `μ̄(I)` for `2 ≤ |I| ≤ m`, each reduced modulo `Δ(I)`.
pub fn mu_link(d: &PdDiagram, m: usize) -> Result<MilnorTable> {
    let l = longitudes(d, check_k(m)?)?;
    reduce_by_delta(&mu4_from_longitudes(&l, m - 1, m, None)?)
}

/// Exact integer lifts before reduction, for diagnostics.
pub fn mu_link_lifts(d: &PdDiagram, m: usize) -> Result<Vec<(Vec<usize>, BigInt)>> {
    let l = longitudes(d, check_k(m)?)?;
    Ok(mu4_from_longitudes(&l, m - 1, m, None)?
        .entries()
        .map(|(s, r)| (s.to_vec(), r.value().clone()))
        .collect())
}
