//! Named families, blow-ups, direct products and seeded random generators.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hypergraph::{Edge, HypergraphError, Partition, UniformHypergraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("rank must be at least 2 (got {0})")]
    RankTooSmall(usize),
    #[error("partite class {0} is empty")]
    EmptyClass(usize),
    #[error("blow-up factor for vertex {vertex} must be positive")]
    ZeroBlowUp { vertex: usize },
    #[error("blow-up needs one factor per vertex: got {got}, expected {expected}")]
    BlowUpLength { got: usize, expected: usize },
    #[error("requested {requested} edges but only {available} are possible")]
    TooManyEdges { requested: usize, available: u128 },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// Seed for the random generators. Same seed and parameters, same output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RngSeed(pub u64);

impl RngSeed {
    fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl From<u64> for RngSeed {
    fn from(seed: u64) -> Self {
        RngSeed(seed)
    }
}

/// `K_r^r`: one edge on `r` vertices.
pub fn single_edge(r: usize) -> Result<UniformHypergraph, ConstructionError> {
    if r < 2 {
        return Err(ConstructionError::RankTooSmall(r));
    }
    let edge: Vec<Vertex> = (1..=r as Vertex).collect();
    Ok(UniformHypergraph::build(r, r, [edge])?)
}

/// Complete r-partite r-uniform hypergraph with classes laid out in
/// consecutive blocks of the given sizes; every transversal is an edge.
pub fn complete_r_partite(
    sizes: &[usize],
) -> Result<(UniformHypergraph, Partition), ConstructionError> {
    check_sizes(sizes)?;
    let offsets = block_offsets(sizes);
    let mut edges = BTreeSet::new();
    for_each_transversal(sizes, |choice| {
        edges.insert(Edge::new(
            choice
                .iter()
                .zip(&offsets)
                .map(|(&c, &o)| (o + c + 1) as Vertex)
                .collect(),
        ));
    });
    let n = sizes.iter().sum();
    Ok((
        UniformHypergraph::from_parts(sizes.len(), n, edges),
        Partition::from_sizes(sizes)?,
    ))
}

/// Blow-up `H(k_1, …, k_n)`: vertex `i` becomes the block of `k_i`
/// consecutive new ids, and each edge becomes the complete r-partite
/// hypergraph on its blocks.
pub fn blow_up(h: &UniformHypergraph, k: &[usize]) -> Result<UniformHypergraph, ConstructionError> {
    if k.len() != h.vertex_count() {
        return Err(ConstructionError::BlowUpLength {
            got: k.len(),
            expected: h.vertex_count(),
        });
    }
    if let Some(v) = k.iter().position(|&x| x == 0) {
        return Err(ConstructionError::ZeroBlowUp { vertex: v + 1 });
    }
    let offsets = block_offsets(k);
    let mut edges = BTreeSet::new();
    for e in h.edges() {
        let sizes: Vec<usize> = e.vertices().iter().map(|&v| k[v as usize - 1]).collect();
        for_each_transversal(&sizes, |choice| {
            edges.insert(Edge::new(
                e.vertices()
                    .iter()
                    .zip(choice)
                    .map(|(&v, &c)| (offsets[v as usize - 1] + c + 1) as Vertex)
                    .collect(),
            ));
        });
    }
    Ok(UniformHypergraph::from_parts(
        h.rank(),
        k.iter().sum(),
        edges,
    ))
}

/// Blow-up with the same factor on every vertex: `kn` vertices, `k^r m` edges.
pub fn blow_up_uniform(
    h: &UniformHypergraph,
    k: usize,
) -> Result<UniformHypergraph, ConstructionError> {
    blow_up(h, &vec![k; h.vertex_count()])
}

/// Direct product `H1 × H2`. The pair `(i, j)` gets id `(i - 1) * n2 + j`.
///
/// Every pair of edges contributes all `r!` ways of matching their vertices,
/// so the product has exactly `r! m1 m2` edges.
pub fn direct_product(
    h1: &UniformHypergraph,
    h2: &UniformHypergraph,
) -> Result<UniformHypergraph, ConstructionError> {
    if h1.rank() != h2.rank() {
        return Err(ConstructionError::RankMismatch(h1.rank(), h2.rank()));
    }
    let r = h1.rank();
    let n2 = h2.vertex_count();
    let perms = permutations(r);
    let mut edges = BTreeSet::new();
    for e1 in h1.edges() {
        for e2 in h2.edges() {
            for p in &perms {
                edges.insert(Edge::new(
                    (0..r)
                        .map(|t| {
                            let i = e1.vertices()[t] as usize;
                            let j = e2.vertices()[p[t]] as usize;
                            ((i - 1) * n2 + j) as Vertex
                        })
                        .collect(),
                ));
            }
        }
    }
    Ok(UniformHypergraph::from_parts(
        r,
        h1.vertex_count() * n2,
        edges,
    ))
}

/// `m` distinct r-subsets of `1..=n`, uniform without replacement.
pub fn random_uniform(
    n: usize,
    m: usize,
    r: usize,
    seed: RngSeed,
) -> Result<UniformHypergraph, ConstructionError> {
    let empty = UniformHypergraph::empty(r, n)?;
    let available = binomial(n, r);
    if m as u128 > available {
        return Err(ConstructionError::TooManyEdges {
            requested: m,
            available,
        });
    }
    let mut rng = seed.rng();
    let edges = if 2 * m as u128 <= available {
        let mut edges = BTreeSet::new();
        while edges.len() < m {
            edges.insert(random_subset(&mut rng, n, r));
        }
        edges
    } else {
        // dense: choose the complement instead; available < 2m fits in memory
        let all = all_subsets(n, r);
        drop_random(&mut rng, all, m)
    };
    Ok(UniformHypergraph::from_parts(empty.rank(), n, edges))
}

/// `m` distinct transversals of consecutive classes with the given sizes,
/// uniform without replacement, together with the partition.
pub fn random_r_partite(
    sizes: &[usize],
    m: usize,
    seed: RngSeed,
) -> Result<(UniformHypergraph, Partition), ConstructionError> {
    check_sizes(sizes)?;
    let available: u128 = sizes
        .iter()
        .try_fold(1u128, |acc, &s| acc.checked_mul(s as u128))
        .unwrap_or(u128::MAX);
    if m as u128 > available {
        return Err(ConstructionError::TooManyEdges {
            requested: m,
            available,
        });
    }
    let offsets = block_offsets(sizes);
    let to_edge = |choice: &[usize]| {
        Edge::new(
            choice
                .iter()
                .zip(&offsets)
                .map(|(&c, &o)| (o + c + 1) as Vertex)
                .collect(),
        )
    };
    let mut rng = seed.rng();
    let edges = if 2 * m as u128 <= available {
        let mut edges = BTreeSet::new();
        let mut choice = vec![0; sizes.len()];
        while edges.len() < m {
            for (c, &s) in choice.iter_mut().zip(sizes) {
                *c = rng.gen_range(0..s);
            }
            edges.insert(to_edge(&choice));
        }
        edges
    } else {
        let mut all = Vec::new();
        for_each_transversal(sizes, |choice| all.push(to_edge(choice)));
        drop_random(&mut rng, all, m)
    };
    let n = sizes.iter().sum();
    Ok((
        UniformHypergraph::from_parts(sizes.len(), n, edges),
        Partition::from_sizes(sizes)?,
    ))
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn check_sizes(sizes: &[usize]) -> Result<(), ConstructionError> {
    if sizes.len() < 2 {
        return Err(ConstructionError::RankTooSmall(sizes.len()));
    }
    if let Some(c) = sizes.iter().position(|&s| s == 0) {
        return Err(ConstructionError::EmptyClass(c + 1));
    }
    Ok(())
}

fn block_offsets(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect()
}

/// Calls `f` with every index tuple `c` where `c[t] < sizes[t]`, in
/// lexicographic order.
fn for_each_transversal(sizes: &[usize], mut f: impl FnMut(&[usize])) {
    if sizes.contains(&0) {
        return;
    }
    let mut choice = vec![0; sizes.len()];
    loop {
        f(&choice);
        let mut t = sizes.len();
        loop {
            if t == 0 {
                return;
            }
            t -= 1;
            choice[t] += 1;
            if choice[t] < sizes[t] {
                break;
            }
            choice[t] = 0;
        }
    }
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                extend(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(r), &mut vec![false; r], &mut out);
    out
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, r: usize) -> Edge {
    Edge::new(
        index::sample(rng, n, r)
            .into_iter()
            .map(|i| i as Vertex + 1)
            .collect(),
    )
}

fn all_subsets(n: usize, r: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(Edge::new(idx.iter().map(|&i| i as Vertex + 1).collect()));
        let Some(t) = (0..r).rev().find(|&t| idx[t] < n - r + t) else {
            return out;
        };
        idx[t] += 1;
        for u in t + 1..r {
            idx[u] = idx[u - 1] + 1;
        }
    }
}

/// Keeps a uniformly random `keep`-subset of `all`.
fn drop_random(rng: &mut ChaCha8Rng, all: Vec<Edge>, keep: usize) -> BTreeSet<Edge> {
    let total = all.len();
    let mut dropped = vec![false; total];
    for i in index::sample(rng, total, total - keep) {
        dropped[i] = true;
    }
    all.into_iter()
        .zip(dropped)
        .filter(|(_, d)| !d)
        .map(|(e, _)| e)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_edge_path() -> UniformHypergraph {
        UniformHypergraph::build(3, 5, [[1, 2, 3], [1, 4, 5]]).unwrap()
    }

    #[test]
    fn single_edge_shapes() {
        let h = single_edge(3).unwrap();
        assert_eq!(h.edges().next().unwrap().vertices(), &[1, 2, 3]);
        assert_eq!(h.degrees(), vec![1, 1, 1]);
        let g = single_edge(2).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(single_edge(1), Err(ConstructionError::RankTooSmall(1)));
    }

    // Oracle: brute-force enumeration of all r-subsets, keeping those that
    // meet each class once.
    fn transversal_degrees(sizes: &[usize]) -> (usize, Vec<usize>) {
        let n: usize = sizes.iter().sum();
        let r = sizes.len();
        let class: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(c, &s)| std::iter::repeat_n(c, s))
            .collect();
        let mut m = 0;
        let mut deg = vec![0; n];
        for e in all_subsets(n, r) {
            let mut seen = vec![false; r];
            let ok = e
                .vertices()
                .iter()
                .all(|&v| !std::mem::replace(&mut seen[class[v as usize - 1]], true));
            if ok {
                m += 1;
                for &v in e.vertices() {
                    deg[v as usize - 1] += 1;
                }
            }
        }
        (m, deg)
    }

    #[test]
    fn complete_partite_counts() {
        let (h, p) = complete_r_partite(&[1, 1, 1]).unwrap();
        assert_eq!(h, single_edge(3).unwrap());
        assert!(h.validate_partition(&p));

        for sizes in [[2, 2, 2], [1, 2, 2]] {
            let (m, deg) = transversal_degrees(&sizes);
            let (h, p) = complete_r_partite(&sizes).unwrap();
            assert_eq!(h.edge_count(), m);
            assert_eq!(h.degrees(), deg);
            assert!(h.validate_partition(&p));
        }
        assert_eq!(transversal_degrees(&[2, 2, 2]), (8, vec![4; 6]));
        assert_eq!(transversal_degrees(&[1, 2, 2]), (4, vec![4, 2, 2, 2, 2]));
        assert_eq!(
            complete_r_partite(&[2, 0, 1]),
            Err(ConstructionError::EmptyClass(2))
        );
    }

    #[test]
    fn blow_up_identity_and_counts() {
        let h = two_edge_path();
        assert_eq!(blow_up_uniform(&h, 1).unwrap(), h);
        let b = blow_up_uniform(&h, 2).unwrap();
        assert_eq!(b.vertex_count(), 10);
        assert_eq!(b.edge_count(), 16);
        let (k222, _) = complete_r_partite(&[2, 2, 2]).unwrap();
        assert_eq!(blow_up_uniform(&single_edge(3).unwrap(), 2).unwrap(), k222);

        let general = blow_up(&h, &[1, 2, 3, 1, 1]).unwrap();
        assert_eq!(general.vertex_count(), 8);
        assert_eq!(general.edge_count(), 6 + 1);
        assert_eq!(
            blow_up(&h, &[1, 0, 1, 1, 1]),
            Err(ConstructionError::ZeroBlowUp { vertex: 2 })
        );
        assert!(matches!(
            blow_up(&h, &[1, 1]),
            Err(ConstructionError::BlowUpLength { .. })
        ));
    }

    #[test]
    fn direct_product_counts_and_degrees() {
        let k = single_edge(3).unwrap();
        let p = direct_product(&k, &k).unwrap();
        assert_eq!(p.vertex_count(), 9);
        assert_eq!(p.edge_count(), 6);

        let h = two_edge_path();
        let p = direct_product(&h, &k).unwrap();
        assert_eq!(p.edge_count(), 12);
        let d = h.degrees();
        let dp = p.degrees();
        for i in 0..5 {
            for j in 0..3 {
                assert_eq!(dp[i * 3 + j], 2 * d[i]);
            }
        }
        let g = single_edge(2).unwrap();
        assert_eq!(
            direct_product(&h, &g),
            Err(ConstructionError::RankMismatch(3, 2))
        );
    }

    #[test]
    fn random_uniform_edge_cases() {
        assert_eq!(
            random_uniform(4, 1, 4, RngSeed(9)).unwrap(),
            single_edge(4).unwrap()
        );
        let full = random_uniform(5, 10, 3, RngSeed(1)).unwrap();
        assert_eq!(full.edge_count(), 10);
        assert!(full.is_regular());
        assert_eq!(
            random_uniform(5, 11, 3, RngSeed(1)),
            Err(ConstructionError::TooManyEdges {
                requested: 11,
                available: 10
            })
        );
        let a = random_uniform(9, 20, 3, RngSeed(77)).unwrap();
        let b = random_uniform(9, 20, 3, RngSeed(77)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edge_count(), 20);
        let dense = random_uniform(7, 30, 3, RngSeed(5)).unwrap();
        assert_eq!(dense.edge_count(), 30);
        assert_eq!(dense, random_uniform(7, 30, 3, RngSeed(5)).unwrap());
    }

    #[test]
    fn random_partite_edge_cases() {
        let (h, p) = random_r_partite(&[2, 3, 2], 12, RngSeed(3)).unwrap();
        assert_eq!((h.clone(), p.clone()), complete_r_partite(&[2, 3, 2]).unwrap());
        let (h, p) = random_r_partite(&[2, 3, 2], 1, RngSeed(3)).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert!(h.validate_partition(&p));
        assert!(random_r_partite(&[2, 2], 5, RngSeed(0)).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(10, 4), 210);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(all_subsets(5, 3).len(), 10);
    }
}
