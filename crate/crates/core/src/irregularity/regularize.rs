//! Edge-swap rewiring towards a near-regular degree sequence.
//!
//! A swap removes an edge `e` through a maximum-degree vertex `j` and
//! inserts `(e \ {j}) ∪ {i}` for a minimum-degree vertex `i`, keeping `n`
//! and `m`. Such an edge always exists while `d_j > d_i`: edges through `j`
//! but not `i` outnumber edges through `i` but not `j`, and replacing `j`
//! by `i` maps the former injectively into r-sets through `i` but not `j`.

use std::collections::BTreeSet;

use super::IrregularityError;
use crate::hypergraph::{
    Edge, EdgeTrace, Partition, SwapPhase, SwapRecord, UniformHypergraph, Vertex,
};

/// Rewires `h` until `Δ − δ ≤ 1`.
///
/// Each step moves one unit of degree from the lowest-id maximum-degree
/// vertex to the lowest-id minimum-degree vertex, using the first
/// admissible edge in canonical order. The result differs from `h` in at
/// most `s(h)` edges.
pub fn regularize(
    h: &UniformHypergraph,
) -> Result<(UniformHypergraph, EdgeTrace), IrregularityError> {
    let group: Vec<Vertex> = (1..=h.vertex_count() as Vertex).collect();
    let mut state = Rewiring::new(h);
    state.balance(&group, h.rank() * h.edge_count())?;
    Ok(state.finish(h))
}

/// Rewires an r-partite `h` until degrees within each class of `partition`
/// differ by at most 1. Swaps only exchange vertices of the same class, so
/// the output stays r-partite with the same classes. The result differs
/// from `h` in at most `s_r(h)` edges.
pub fn regularize_partitewise(
    h: &UniformHypergraph,
    partition: &Partition,
) -> Result<(UniformHypergraph, EdgeTrace), IrregularityError> {
    h.check_partition(partition)?;
    let mut state = Rewiring::new(h);
    for c in 1..=partition.class_count() {
        let members = partition.members(c);
        // every edge meets the class once, so its degree total is m
        state.balance(&members, h.edge_count())?;
    }
    Ok(state.finish(h))
}

struct Rewiring {
    edges: BTreeSet<Edge>,
    degrees: Vec<usize>,
    trace: EdgeTrace,
}

impl Rewiring {
    fn new(h: &UniformHypergraph) -> Self {
        Rewiring {
            edges: h.edge_set().clone(),
            degrees: h.degrees(),
            trace: EdgeTrace::default(),
        }
    }

    fn degree(&self, v: Vertex) -> usize {
        self.degrees[v as usize - 1]
    }

    /// Balances the degrees of `group`, whose degrees sum to `total`.
    fn balance(&mut self, group: &[Vertex], total: usize) -> Result<(), IrregularityError> {
        if group.is_empty() {
            return Ok(());
        }
        let floor_avg = total / group.len();
        loop {
            let (mut lo, mut hi) = (group[0], group[0]);
            for &v in group {
                if self.degree(v) < self.degree(lo) {
                    lo = v;
                }
                if self.degree(v) > self.degree(hi) {
                    hi = v;
                }
            }
            let (dlo, dhi) = (self.degree(lo), self.degree(hi));
            if dhi - dlo <= 1 {
                return Ok(());
            }
            let phase = if dlo < floor_avg && dhi >= floor_avg + 2 {
                SwapPhase::Spread
            } else {
                SwapPhase::Band
            };
            self.swap(hi, lo, phase)?;
        }
    }

    fn swap(&mut self, from: Vertex, to: Vertex, phase: SwapPhase) -> Result<(), IrregularityError> {
        let (removed, inserted) = self
            .edges
            .iter()
            .filter(|e| e.contains(from) && !e.contains(to))
            .map(|e| (e.clone(), e.replace(from, to)))
            .find(|(_, candidate)| !self.edges.contains(candidate))
            .ok_or(IrregularityError::NoSwappableEdge { from, to })?;
        self.edges.remove(&removed);
        self.edges.insert(inserted.clone());
        self.degrees[from as usize - 1] -= 1;
        self.degrees[to as usize - 1] += 1;
        self.trace.swaps.push(SwapRecord {
            removed,
            inserted,
            phase,
        });
        Ok(())
    }

    fn finish(self, h: &UniformHypergraph) -> (UniformHypergraph, EdgeTrace) {
        (
            UniformHypergraph::from_parts(h.rank(), h.vertex_count(), self.edges),
            self.trace,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::complete_r_partite;
    use crate::irregularity::s_measure;

    #[test]
    fn star_needs_one_swap() {
        let star = UniformHypergraph::build(3, 7, [[1, 2, 3], [1, 4, 5], [1, 6, 7]]).unwrap();
        let (out, trace) = regularize(&star).unwrap();
        assert_eq!(trace.len(), 1);
        // lowest-id minimum is 2, first edge through 1 avoiding 2 is {1,4,5}
        assert_eq!(trace.swaps[0].removed, Edge::new(vec![1, 4, 5]));
        assert_eq!(trace.swaps[0].inserted, Edge::new(vec![2, 4, 5]));
        assert_eq!(trace.swaps[0].phase, SwapPhase::Band);
        assert_eq!(out.degrees(), vec![2, 2, 1, 1, 1, 1, 1]);
        assert_eq!(star.symmetric_difference_size(&out).unwrap(), 2);
        assert!(2.0 <= s_measure::<f64>(&star));
        assert_eq!(trace.replay(&star).unwrap(), out);
    }

    #[test]
    fn near_regular_is_untouched() {
        let h = UniformHypergraph::build(3, 5, [[1, 2, 3], [1, 4, 5]]).unwrap();
        let (out, trace) = regularize(&h).unwrap();
        assert!(trace.is_empty());
        assert_eq!(out, h);
    }

    #[test]
    fn spread_swaps_lower_s_by_two() {
        // degrees (4, 0, ...): vertex 1 in four edges, vertex 9 isolated
        let h = UniformHypergraph::build(
            3,
            9,
            [[1, 2, 3], [1, 4, 5], [1, 6, 7], [1, 2, 8]],
        )
        .unwrap();
        let (_, trace) = regularize(&h).unwrap();
        let mut current = h.clone();
        for swap in &trace.swaps {
            let before = s_measure::<f64>(&current);
            current = EdgeTrace {
                swaps: vec![swap.clone()],
            }
            .replay(&current)
            .unwrap();
            if swap.phase == SwapPhase::Spread {
                assert!((before - s_measure::<f64>(&current) - 2.0).abs() < 1e-12);
            }
        }
        assert!(trace.swaps.iter().any(|s| s.phase == SwapPhase::Spread));
    }

    #[test]
    fn partitewise_moves_within_class() {
        let p = Partition::from_sizes(&[2, 2, 2]).unwrap();
        let h = UniformHypergraph::build(3, 6, [[1, 3, 5], [1, 4, 6]]).unwrap();
        let (out, trace) = regularize_partitewise(&h, &p).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace.swaps[0].removed, Edge::new(vec![1, 3, 5]));
        assert_eq!(trace.swaps[0].inserted, Edge::new(vec![2, 3, 5]));
        assert!(out.validate_partition(&p));
        assert_eq!(out.degrees(), vec![1; 6]);

        let (k, kp) = complete_r_partite(&[2, 3, 1]).unwrap();
        let (same, trace) = regularize_partitewise(&k, &kp).unwrap();
        assert!(trace.is_empty());
        assert_eq!(same, k);

        let wrong = Partition::new(3, vec![1, 1, 2, 2, 3, 3]).unwrap();
        let h = UniformHypergraph::build(3, 6, [[1, 2, 3]]).unwrap();
        assert!(regularize_partitewise(&h, &wrong).is_err());
    }
}
