//! Independent brute-force reference implementations used by the
//! test-suite.
//!
//! Nothing here shares code with the arena enumerator: adjacency is
//! recomputed from first principles on every step, self-avoidance is
//! checked with set membership and explicit shared-vertex comparisons, and
//! line crossings are counted from the sign sequence of the exact line
//! functional along the embedded polyline.  Slow on purpose.

use std::collections::HashSet;

use crate::domain::Domain;
use crate::lattice::{step_vertex, LatticeVertex, MidEdge, Walk};

/// All SAWs from `start` of length <= `max_len` whose mid-edges satisfy
/// `contains`, in no particular order.
pub fn enumerate_walks<F>(contains: &F, start: MidEdge, max_len: usize) -> Vec<Walk>
where
    F: Fn(&MidEdge) -> bool,
{
    fn extend<F>(
        contains: &F,
        path: &mut Vec<MidEdge>,
        seen: &mut HashSet<MidEdge>,
        last_vertex: Option<LatticeVertex>,
        max_len: usize,
        out: &mut Vec<Walk>,
    ) where
        F: Fn(&MidEdge) -> bool,
    {
        out.push(Walk::new(path.clone()).expect("oracle path is a SAW"));
        if path.len() > max_len {
            return;
        }
        let cur = *path.last().unwrap();
        for (n, v) in cur.neighbors() {
            if Some(v) == last_vertex {
                continue; // would reuse the vertex the curve just crossed
            }
            if seen.contains(&n) || !contains(&n) {
                continue;
            }
            if path.len() == max_len + 1 {
                continue;
            }
            path.push(n);
            seen.insert(n);
            extend(contains, path, seen, Some(v), max_len, out);
            seen.remove(&n);
            path.pop();
        }
    }

    if !contains(&start) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut path = vec![start];
    let mut seen: HashSet<MidEdge> = [start].into_iter().collect();
    extend(contains, &mut path, &mut seen, None, max_len, &mut out);
    out
}

/// Walks in a domain, via the domain's own membership predicate.
pub fn enumerate_in_domain(domain: &Domain, start: MidEdge, max_len: usize) -> Vec<Walk> {
    enumerate_walks(&|m: &MidEdge| domain.contains_mid(m), start, max_len)
}

/// c_n by brute force.
pub fn count_saws(n: usize) -> u64 {
    enumerate_walks(&|_| true, MidEdge::ORIGIN, n)
        .into_iter()
        .filter(|w| w.len() == n)
        .count() as u64
}

/// Number of maximal sub-segments of the embedded polyline lying on or
/// crossing the line 3x + y = 12i + 6, counted from the sign sequence of
/// the functional at every polyline node (mid-edges and lattice vertices).
pub fn line_crossings(walk: &Walk, i: i64) -> u32 {
    let f = |a: i64, b: i64| 3 * a + b - (12 * i + 6);
    // Node sequence: m0, v1, m1, v2, ..., vn, mn.
    let mut vals: Vec<i64> = Vec::with_capacity(2 * walk.len() + 1);
    vals.push(f(walk.mids()[0].xq, walk.mids()[0].yq));
    for (a, b) in walk.steps() {
        let v = step_vertex(a, b).expect("walk steps are adjacent");
        vals.push(f(v.xq, v.yq));
        vals.push(f(b.xq, b.yq));
    }
    let mut events = 0u32;
    let mut last_nonzero: Option<i64> = None;
    for &v in &vals {
        if v == 0 {
            events += 1; // zeros are isolated: vertices never lie on the line
        } else {
            if let Some(p) = last_nonzero {
                if (p > 0) != (v > 0) {
                    events += 1;
                }
            }
            last_nonzero = Some(v);
        }
    }
    events
}

/// Renewal indices of a triangle walk by the segment-intersection oracle.
pub fn renewal_indices(walk: &Walk, k: i64) -> Vec<i64> {
    (0..=k).filter(|&i| line_crossings(walk, i) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_counts_match_hand_values() {
        assert_eq!(count_saws(0), 1);
        assert_eq!(count_saws(1), 4);
        assert_eq!(count_saws(2), 8);
        assert_eq!(count_saws(3), 16);
    }

    #[test]
    fn zero_signs_are_isolated() {
        // A walk ending on the renewal line i=0 crosses it exactly once.
        let w = Walk::new(vec![
            MidEdge::new(0, 0).unwrap(),
            MidEdge::new(1, 3).unwrap(),
        ])
        .unwrap();
        assert_eq!(line_crossings(&w, 0), 1);
        assert_eq!(line_crossings(&w, 1), 0);
        assert_eq!(renewal_indices(&w, 0), vec![0]);
    }
}
