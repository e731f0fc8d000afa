//! Maximum bipartite matching by augmenting paths (Kuhn's algorithm).
//! Sides here are small (performance multisets, individuals), so the simple
//! O(V*E) form is plenty.

/// Returns a perfect matching `left -> right` if one exists, given the
/// adjacency predicate, or `None` when some left vertex stays unmatched.
pub fn perfect_matching(size: usize, edge: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    let mut match_of_right: Vec<Option<usize>> = vec![None; size];
    for u in 0..size {
        let mut seen = vec![false; size];
        if !augment(u, size, &edge, &mut seen, &mut match_of_right) {
            return None;
        }
    }
    let mut match_of_left = vec![usize::MAX; size];
    for (v, assigned) in match_of_right.iter().enumerate() {
        match_of_left[assigned.expect("perfect matching covers all right vertices")] = v;
    }
    Some(match_of_left)
}

fn augment(
    u: usize,
    size: usize,
    edge: &impl Fn(usize, usize) -> bool,
    seen: &mut [bool],
    match_of_right: &mut [Option<usize>],
) -> bool {
    for v in 0..size {
        if edge(u, v) && !seen[v] {
            seen[v] = true;
            let free = match match_of_right[v] {
                None => true,
                Some(w) => augment(w, size, edge, seen, match_of_right),
            };
            if free {
                match_of_right[v] = Some(u);
                return true;
            }
        }
    }
    false
}
