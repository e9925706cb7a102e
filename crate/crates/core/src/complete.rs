//! Solvers specialized to complete graphs.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cycles::{BrokenCycle, Cycle};
use crate::error::Error;
use crate::graph::{Edge, WeightedGraph};
use crate::plan::{Mode, RepairPlan};
use crate::verifier::verify_support;
use crate::weight::{format_rational, is_positive, Rational};
use crate::Result;

/// Symmetric matrix of nonnegative distances with a zero diagonal.
///
/// Unlike [`WeightedGraph`], off-diagonal zeros are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl DistanceMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        let m = DistanceMatrix { n, entries };
        m.validate()?;
        Ok(m)
    }

    /// Builds the matrix from one weight per unordered pair. Every pair must
    /// appear exactly once.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut seen = vec![false; n * n];
        let mut m = DistanceMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        };
        for (u, v, w) in pairs {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if seen[u * n + v] {
                return Err(Error::DuplicateEdge(Edge::new(u, v)));
            }
            seen[u * n + v] = true;
            seen[v * n + u] = true;
            m.set(u, v, w);
        }
        if let Some((u, v)) = (0..n).tuple_combinations().find(|&(u, v)| !seen[u * n + v]) {
            return Err(Error::InvalidMatrix(format!(
                "missing entry for pair {}",
                Edge::new(u, v)
            )));
        }
        m.validate()?;
        Ok(m)
    }

    /// The weight matrix of a complete graph.
    pub fn from_graph(g: &WeightedGraph) -> Result<Self> {
        if !g.is_complete() {
            return Err(Error::NotComplete);
        }
        Self::from_pairs(g.vertex_count(), g.edges().map(|(e, w)| (e.low(), e.high(), w.clone())))
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            if !self.get(i, i).is_zero() {
                return Err(Error::InvalidMatrix(format!("diagonal entry {i} is nonzero")));
            }
            for j in 0..self.n {
                let x = self.get(i, j);
                if x.is_negative() {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i}, {j}) is negative: {}",
                        format_rational(x)
                    )));
                }
                if x != self.get(j, i) {
                    return Err(Error::InvalidMatrix(format!(
                        "entries ({i}, {j}) and ({j}, {i}) differ"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[j * self.n + i] = value.clone();
        self.entries[i * self.n + j] = value;
    }

    /// Off-diagonal entries, one per unordered pair, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (Edge, &Rational)> + '_ {
        (0..self.n)
            .tuple_combinations()
            .map(move |(i, j)| (Edge::new(i, j), self.get(i, j)))
    }

    /// Checks every triangle inequality directly.
    pub fn is_metric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.get(i, j) <= &(self.get(i, k) + self.get(k, j)))))
    }

    /// The complete graph with these weights, zeros replaced by `epsilon`.
    pub fn to_graph(&self, epsilon: &Rational) -> Result<WeightedGraph> {
        if !is_positive(epsilon) {
            return Err(Error::InvalidParameter(format!(
                "zero replacement must be positive, got {}",
                format_rational(epsilon)
            )));
        }
        WeightedGraph::from_edges(
            self.n,
            self.pairs().map(|(e, w)| {
                let w = if w.is_zero() { epsilon.clone() } else { w.clone() };
                (e.low(), e.high(), w)
            }),
        )
    }
}

/// Result of [`iomr_fixed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IomrOutcome {
    pub repaired: DistanceMatrix,
    /// Pairs whose entry changed, in lexicographic order.
    pub modified: Vec<Edge>,
}

impl IomrOutcome {
    pub fn modified_count(&self) -> usize {
        self.modified.len()
    }
}

/// The fixed-order increase-only repair: for each column `k` and row `i`,
/// raise `D[i][k]` to `max_{j<i} D[i][j] - D[j][k]` when that is larger.
/// Entries are only ever raised.
pub fn iomr_fixed(d: &DistanceMatrix) -> IomrOutcome {
    let n = d.size();
    let mut out = d.clone();
    for k in 0..n {
        for i in 0..n {
            if i == k {
                continue;
            }
            let best = (0..i).map(|j| out.get(i, j) - out.get(j, k)).max();
            if let Some(best) = best {
                if &best > out.get(i, k) {
                    out.set(i, k, best);
                }
            }
        }
    }
    let modified = d
        .pairs()
        .filter(|(e, w)| out.get(e.low(), e.high()) != *w)
        .map(|(e, _)| e)
        .collect();
    IomrOutcome {
        repaired: out,
        modified,
    }
}

/// The matrix on which [`iomr_fixed`] modifies `C(n-1, 2)` entries although
/// `n-2` suffice: `D[i][0] = 2^(i+1)` for `i ≥ 1`, every other entry zero.
pub fn iomr_adversarial(n: usize) -> Result<DistanceMatrix> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "adversarial family needs n >= 3, got {n}"
        )));
    }
    let pairs = (0..n).tuple_combinations().map(|(i, j)| {
        let w = if i == 0 {
            Rational::from_integer(BigInt::from(2u8).pow(j as u32 + 1))
        } else {
            Rational::zero()
        };
        (i, j, w)
    });
    DistanceMatrix::from_pairs(n, pairs)
}

/// Every cycle of `k` vertices in `K_n`, canonical and in lexicographic order.
fn complete_cycles(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).flat_map(move |first| {
        ((first + 1)..n).permutations(k - 1).filter_map(move |rest| {
            // Canonical orientation: second vertex below the last.
            (rest[0] < rest[k - 2]).then(|| {
                let mut c = Vec::with_capacity(k);
                c.push(first);
                c.extend(rest);
                c
            })
        })
    })
}

/// Cover of the short broken cycles: scans broken cycles with 3, 4 and 5
/// edges (shorter first, lexicographic within a length) and adds every edge
/// of each one not already hit.
pub fn short_cycle_cover(g: &WeightedGraph) -> Result<BTreeSet<Edge>> {
    if !g.is_complete() {
        return Err(Error::NotComplete);
    }
    let n = g.vertex_count();
    let mut cover = BTreeSet::new();
    for k in 3..=5.min(n) {
        for vs in complete_cycles(n, k) {
            let Some(c) = BrokenCycle::from_cycle(g, Cycle::new(&vs)) else {
                continue;
            };
            if !c.edges().iter().any(|e| cover.contains(e)) {
                cover.extend(c.edges().iter().copied());
            }
        }
    }
    Ok(cover)
}

/// Chords chosen so that every 4-cycle inside `s` has a selected chord.
///
/// 4-cycles are visited in canonical order; when neither chord is in `s` or
/// already chosen, the smaller chord is added.
pub fn chord4(n: usize, s: &BTreeSet<Edge>) -> BTreeSet<Edge> {
    let mut chosen = BTreeSet::new();
    for vs in complete_cycles(n, 4) {
        let inside = (0..4).all(|i| s.contains(&Edge::new(vs[i], vs[(i + 1) % 4])));
        if !inside {
            continue;
        }
        let a = Edge::new(vs[0], vs[2]);
        let b = Edge::new(vs[1], vs[3]);
        let selected = |e: &Edge| s.contains(e) || chosen.contains(e);
        if !selected(&a) && !selected(&b) {
            chosen.insert(a.min(b));
        }
    }
    chosen
}

/// Five-cycle cover for complete graphs, general mode.
pub fn five_cycle_cover(g: &WeightedGraph) -> Result<RepairPlan> {
    let mut support = short_cycle_cover(g)?;
    let chords = chord4(g.vertex_count(), &support);
    support.extend(chords);
    verify_support(g, &support, Mode::General)?
        .ok_or_else(|| Error::Internal("five-cycle cover is not a regular cover".into()))
}
