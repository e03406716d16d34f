//! Canonical forms and exhaustive enumeration of small graphs up to isomorphism.
//!
//! The canonical form of a graph is the lexicographically smallest
//! upper-triangle bitstring (graph6 pair order) over all relabelings that
//! respect an isomorphism-invariant ordered vertex partition. The partition
//! starts from vertex degrees and is refined by neighbour-colour multisets,
//! so only relabelings inside each cell have to be searched.

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{pair_count, Graph};

/// Largest order accepted by [`canonical_form`].
pub const MAX_CANONICAL_ORDER: usize = 10;

/// Largest order accepted by the built-in enumerators.
pub const MAX_ENUMERATION_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("canonical forms are limited to n <= {MAX_CANONICAL_ORDER}, got {0}")]
    NTooLargeForCanonicalization(usize),
    #[error("built-in enumeration is limited to 1 <= n <= {MAX_ENUMERATION_ORDER}, got {0}")]
    NTooLargeForEnumeration(usize),
}

/// Isomorphism-class key. Ordering is by order `n`, then by the bitstring,
/// with the first pair in graph6 order as the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: u8,
    bits: u64,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Pair bits, pair 0 in the most significant position of the
    /// `pair_count(n)`-bit string.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Canonical representative of the class.
    pub fn to_graph(&self) -> Graph {
        let total = pair_count(self.n());
        let mut mask = 0u64;
        for k in 0..total {
            if self.bits >> (total - 1 - k) & 1 == 1 {
                mask |= 1 << k;
            }
        }
        Graph::from_pair_mask(self.n(), mask)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, EnumerationError> {
    let n = g.n();
    if n > MAX_CANONICAL_ORDER {
        return Err(EnumerationError::NTooLargeForCanonicalization(n));
    }
    let rows = g.adjacency_rows();
    let colours = refined_colours(&rows);

    // positions are filled cell by cell in ascending colour order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| colours[v]);
    let cell_of_position: Vec<u32> = order.iter().map(|&v| colours[v]).collect();

    let mut search = Search {
        rows: &rows,
        cell_of_position: &cell_of_position,
        colours: &colours,
        placed: Vec::with_capacity(n),
        used: 0,
        current: vec![0; n],
        best: vec![0; n],
        have_best: false,
    };
    search.descend();

    let mut bits = 0u64;
    for j in 1..n {
        bits = bits << j | search.best[j];
    }
    Ok(CanonicalForm { n: n as u8, bits })
}

/// Iterated degree refinement; colours are dense ranks of sorted signatures,
/// hence invariant under relabeling.
fn refined_colours(rows: &[u64]) -> Vec<u32> {
    let n = rows.len();
    let mut colours: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    let mut classes = count_distinct(&colours);
    loop {
        let signatures: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = iter_bits(rows[v]).map(|w| colours[w]).collect();
                nb.sort_unstable();
                (colours[v], nb)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u32> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).unwrap() as u32)
            .collect();
        let next_classes = distinct.len();
        colours = next;
        if next_classes == classes {
            return colours;
        }
        classes = next_classes;
    }
}

fn count_distinct(values: &[u32]) -> usize {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

struct Search<'a> {
    rows: &'a [u64],
    cell_of_position: &'a [u32],
    colours: &'a [u32],
    placed: Vec<usize>,
    used: u64,
    /// column `j` of the relabeled triangle: bit `j-1-i` set iff positions i<j adjacent
    current: Vec<u64>,
    best: Vec<u64>,
    have_best: bool,
}

impl Search<'_> {
    /// Depth-first over placements, pruning any branch whose prefix is
    /// already lexicographically larger than the best complete string.
    fn descend(&mut self) {
        let j = self.placed.len();
        let n = self.rows.len();
        if j == n {
            if !self.have_best || self.current < self.best {
                self.best.copy_from_slice(&self.current);
                self.have_best = true;
            }
            return;
        }
        let cell = self.cell_of_position[j];
        for v in 0..n {
            if self.used >> v & 1 == 1 || self.colours[v] != cell {
                continue;
            }
            let mut column = 0u64;
            for &u in &self.placed {
                column = column << 1 | (self.rows[v] >> u & 1);
            }
            // best may have improved under an earlier sibling, so re-check the tie
            let tied = self.have_best && self.current[..j] == self.best[..j];
            if tied && column > self.best[j] {
                continue;
            }
            self.current[j] = column;
            self.placed.push(v);
            self.used |= 1 << v;
            self.descend();
            self.used &= !(1 << v);
            self.placed.pop();
        }
    }
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, in ascending canonical-form order.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>, EnumerationError> {
    enumerate_classes(n, true)
}

/// One representative per isomorphism class of all graphs on `n` vertices.
pub fn enumerate_all(n: usize) -> Result<Vec<Graph>, EnumerationError> {
    enumerate_classes(n, false)
}

fn enumerate_classes(n: usize, connected_only: bool) -> Result<Vec<Graph>, EnumerationError> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(EnumerationError::NTooLargeForEnumeration(n));
    }
    let total: u64 = 1 << pair_count(n);
    const CHUNK: u64 = 1 << 12;
    let chunks = total.div_ceil(CHUNK);
    let forms: HashSet<CanonicalForm> = (0..chunks)
        .into_par_iter()
        .fold(HashSet::new, |mut seen, c| {
            for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                if connected_only && (mask.count_ones() as usize) + 1 < n {
                    continue;
                }
                let g = Graph::from_pair_mask(n, mask);
                if connected_only && !g.is_connected() {
                    continue;
                }
                seen.insert(canonical_form(&g).expect("n <= 7"));
            }
            seen
        })
        .reduce(HashSet::new, |mut a, mut b| {
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
            }
            a.extend(b);
            a
        });
    let mut forms: Vec<_> = forms.into_iter().collect();
    forms.sort_unstable();
    Ok(forms.iter().map(CanonicalForm::to_graph).collect())
}
