//! Maximum bipartite matching by Kuhn's augmenting paths.
//!
//! Small and deterministic: left vertices are processed in index order and
//! adjacency lists are scanned in the order given, so equal inputs produce
//! equal matchings.

/// Returns `(size, match_of_right, match_of_left)` for the bipartite graph
/// with `left` and `right` vertices and edges `l -> adj[l]`.
pub fn max_bipartite_matching(
    left: usize,
    right: usize,
    adj: &[Vec<usize>],
) -> (usize, Vec<Option<usize>>, Vec<Option<usize>>) {
    assert_eq!(adj.len(), left);
    debug_assert!(adj.iter().flatten().all(|&r| r < right));

    fn try_augment(
        l: usize,
        adj: &[Vec<usize>],
        visited: &mut [bool],
        match_of_right: &mut [Option<usize>],
    ) -> bool {
        for &r in &adj[l] {
            if visited[r] {
                continue;
            }
            visited[r] = true;
            if match_of_right[r].is_none()
                || try_augment(match_of_right[r].unwrap(), adj, visited, match_of_right)
            {
                match_of_right[r] = Some(l);
                return true;
            }
        }
        false
    }

    let mut match_of_right: Vec<Option<usize>> = vec![None; right];
    let mut size = 0;
    for l in 0..left {
        let mut visited = vec![false; right];
        if try_augment(l, adj, &mut visited, &mut match_of_right) {
            size += 1;
        }
    }
    let mut match_of_left: Vec<Option<usize>> = vec![None; left];
    for (r, &m) in match_of_right.iter().enumerate() {
        if let Some(l) = m {
            match_of_left[l] = Some(r);
        }
    }
    (size, match_of_right, match_of_left)
}
