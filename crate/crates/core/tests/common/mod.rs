#![allow(dead_code)]

use std::collections::VecDeque;
use std::sync::Arc;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semsim_core::corpus::Resource;
use semsim_core::{AnnotationVector, Concept, Corpus, DagScheme, Taxonomy};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random recursive tree: node `i > 0` hangs under a uniform earlier node.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Arc<Taxonomy> {
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let edges = (0..n).map(|i| {
        let parent = if i == 0 {
            None
        } else {
            Some(names[rng.random_range(0..i)].clone())
        };
        (names[i].clone(), parent)
    });
    Arc::new(Taxonomy::from_edges(edges.collect::<Vec<_>>()).unwrap())
}

/// `1..=max_len` distinct concepts in random order.
pub fn random_vector(rng: &mut impl Rng, t: &Taxonomy, max_len: usize) -> AnnotationVector {
    let len = rng.random_range(1..=max_len.min(t.len()));
    let picked = index::sample(rng, t.len(), len);
    let all: Vec<Concept> = t.concepts().collect();
    AnnotationVector::from_concepts(picked.iter().map(|i| all[i]).collect()).unwrap()
}

pub fn random_corpus(
    rng: &mut impl Rng,
    t: &Arc<Taxonomy>,
    resources: usize,
    max_len: usize,
) -> Corpus {
    let resources = (0..resources)
        .map(|i| Resource {
            id: format!("r{i}"),
            annotations: random_vector(rng, t, max_len),
            meta: None,
        })
        .collect();
    Corpus::new(t.clone(), resources).unwrap()
}

/// Random DAG over `n` labelled nodes; node `i` gets up to three parents
/// among earlier nodes, or none. Also returns the parent lists.
#[allow(clippy::needless_range_loop)]
pub fn random_dag(rng: &mut impl Rng, n: usize) -> (DagScheme, Vec<Vec<usize>>) {
    let mut dag = DagScheme::new();
    let mut parents = vec![Vec::new(); n];
    for i in 0..n {
        let label = format!("n{i}");
        dag.add_node(&label);
        if i > 0 && rng.random_bool(0.85) {
            let k = rng.random_range(1..=3.min(i));
            for p in index::sample(rng, i, k) {
                dag.add_edge(&label, &format!("n{p}"));
                parents[i].push(p);
            }
        }
    }
    (dag, parents)
}

/// Number of root-to-node paths summed over all nodes, counted by brute
/// recursion on the parent lists.
pub fn count_paths(parents: &[Vec<usize>]) -> u128 {
    fn paths_to(i: usize, parents: &[Vec<usize>]) -> u128 {
        if parents[i].is_empty() {
            1
        } else {
            parents[i].iter().map(|&p| paths_to(p, parents)).sum()
        }
    }
    (0..parents.len()).map(|i| paths_to(i, parents)).sum()
}

/// Undirected breadth-first distance over the tree's edges.
pub fn bfs_distance(t: &Taxonomy, a: Concept, b: Concept) -> usize {
    let mut dist = vec![usize::MAX; t.len()];
    let mut queue = VecDeque::from([a]);
    dist[a.index()] = 0;
    while let Some(c) = queue.pop_front() {
        if c == b {
            return dist[c.index()];
        }
        let next = t.children(c).iter().copied().chain(t.parent(c));
        for n in next {
            if dist[n.index()] == usize::MAX {
                dist[n.index()] = dist[c.index()] + 1;
                queue.push_back(n);
            }
        }
    }
    unreachable!("trees are connected")
}

/// Maximum total over every injective map from the smaller side into the
/// larger one, by exhaustive enumeration.
pub fn brute_force_max(data: &[f64], rows: usize, cols: usize) -> f64 {
    let transpose = rows > cols;
    let (small, large) = if transpose {
        (cols, rows)
    } else {
        (rows, cols)
    };
    let at = |s: usize, l: usize| {
        if transpose {
            data[l * cols + s]
        } else {
            data[s * cols + l]
        }
    };
    fn go(
        s: usize,
        small: usize,
        large: usize,
        used: &mut [bool],
        at: &dyn Fn(usize, usize) -> f64,
    ) -> f64 {
        if s == small {
            return 0.0;
        }
        let mut best = f64::NEG_INFINITY;
        for l in 0..large {
            if !used[l] {
                used[l] = true;
                best = best.max(at(s, l) + go(s + 1, small, large, used, at));
                used[l] = false;
            }
        }
        best
    }
    go(0, small, large, &mut vec![false; large], &at)
}
