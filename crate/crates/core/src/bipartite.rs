//! Maximum bipartite matching via Hopcroft-Karp.
//!
//! Alternates a BFS phase that layers the graph by shortest augmenting
//! path length with a DFS phase that augments along a maximal set of
//! vertex-disjoint shortest paths, for O(E sqrt(V)) overall.

use std::collections::VecDeque;

const INF: u32 = u32::MAX;

/// A maximum matching, as the partner of each left vertex.
#[derive(Debug, Clone)]
pub(crate) struct BipartiteMatching {
    pub left_to_right: Vec<Option<usize>>,
    pub size: usize,
}

/// Computes a maximum matching. `adjacency[u]` lists the right-side
/// neighbours of left vertex `u`; right vertices are `0..right_count`.
pub(crate) fn maximum_matching(adjacency: &[Vec<usize>], right_count: usize) -> BipartiteMatching {
    let left_count = adjacency.len();
    let mut match_left: Vec<Option<usize>> = vec![None; left_count];
    let mut match_right: Vec<Option<usize>> = vec![None; right_count];
    let mut dist = vec![INF; left_count];
    let mut size = 0;

    while bfs_layers(adjacency, &match_left, &match_right, &mut dist) {
        for u in 0..left_count {
            if match_left[u].is_none()
                && augment(adjacency, &mut match_left, &mut match_right, &mut dist, u)
            {
                size += 1;
            }
        }
    }

    BipartiteMatching {
        left_to_right: match_left,
        size,
    }
}

/// Builds the level graph from all free left vertices; true iff some free
/// right vertex is reachable, i.e. an augmenting path exists.
fn bfs_layers(
    adjacency: &[Vec<usize>],
    match_left: &[Option<usize>],
    match_right: &[Option<usize>],
    dist: &mut [u32],
) -> bool {
    let mut queue = VecDeque::new();
    for (u, m) in match_left.iter().enumerate() {
        if m.is_none() {
            dist[u] = 0;
            queue.push_back(u);
        } else {
            dist[u] = INF;
        }
    }
    let mut reachable = false;
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            match match_right[v] {
                None => reachable = true,
                Some(u_next) => {
                    if dist[u_next] == INF {
                        dist[u_next] = dist[u] + 1;
                        queue.push_back(u_next);
                    }
                }
            }
        }
    }
    reachable
}

fn augment(
    adjacency: &[Vec<usize>],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
    dist: &mut [u32],
    u: usize,
) -> bool {
    let layer = std::mem::replace(&mut dist[u], INF);
    for &v in &adjacency[u] {
        let advance = match match_right[v] {
            None => true,
            Some(u_next) => {
                dist[u_next] == layer + 1
                    && augment(adjacency, match_left, match_right, dist, u_next)
            }
        };
        if advance {
            match_left[u] = Some(v);
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exponential reference matcher: tries every subset assignment.
    fn brute_force_size(adjacency: &[Vec<usize>], right_count: usize) -> usize {
        fn go(adjacency: &[Vec<usize>], u: usize, used: u64) -> usize {
            if u == adjacency.len() {
                return 0;
            }
            let mut best = go(adjacency, u + 1, used);
            for &v in &adjacency[u] {
                if used & (1 << v) == 0 {
                    best = best.max(1 + go(adjacency, u + 1, used | (1 << v)));
                }
            }
            best
        }
        assert!(right_count <= 64);
        go(adjacency, 0, 0)
    }

    fn check_consistent(adjacency: &[Vec<usize>], result: &BipartiteMatching) {
        let mut seen = std::collections::HashSet::new();
        let mut count = 0;
        for (u, m) in result.left_to_right.iter().enumerate() {
            if let Some(v) = m {
                assert!(adjacency[u].contains(v), "matched along a non-edge");
                assert!(seen.insert(*v), "right vertex matched twice");
                count += 1;
            }
        }
        assert_eq!(count, result.size);
    }

    #[test]
    fn small_cases() {
        let empty: Vec<Vec<usize>> = vec![];
        assert_eq!(maximum_matching(&empty, 0).size, 0);

        let star = vec![vec![0], vec![0], vec![0]];
        assert_eq!(maximum_matching(&star, 1).size, 1);

        let perfect = vec![vec![0, 1], vec![0], vec![1, 2]];
        assert_eq!(maximum_matching(&perfect, 3).size, 3);

        // Needs an augmenting flip: greedy 0->0 blocks 1 until re-routed.
        let flip = vec![vec![0, 1], vec![0]];
        assert_eq!(maximum_matching(&flip, 2).size, 2);
    }

    proptest! {
        #[test]
        fn matches_brute_force(
            edges in proptest::collection::vec((0usize..7, 0usize..7), 0..25),
            left in 1usize..7,
        ) {
            let mut adjacency = vec![Vec::new(); left];
            for (u, v) in edges {
                let u = u % left;
                if !adjacency[u].contains(&v) {
                    adjacency[u].push(v);
                }
            }
            let result = maximum_matching(&adjacency, 7);
            check_consistent(&adjacency, &result);
            prop_assert_eq!(result.size, brute_force_size(&adjacency, 7));
        }
    }
}
