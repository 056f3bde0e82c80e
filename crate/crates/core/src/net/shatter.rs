//! Brute-force shattering checks over the canonical shortest-path system.

use crate::graph::DistanceMatrix;

use super::NetError;

/// Largest subset size accepted by [`is_shattered`] and [`vc_dimension`].
pub const MAX_SUBSET: usize = 4;

/// The ranges are the vertex sets of all canonical paths (one per unordered
/// reachable pair), all single vertices, and the empty path. The empty range
/// makes the empty trace realizable even when `S` is the whole vertex set.
#[derive(Debug, Clone)]
pub struct PathSystem {
    n: usize,
    words: usize,
    // one bitset per distinct range
    ranges: Vec<Vec<u64>>,
}

impl PathSystem {
    pub fn new(dm: &DistanceMatrix) -> Self {
        let n = dm.n();
        let words = n.div_ceil(64).max(1);
        let mut ranges: Vec<Vec<u64>> = Vec::new();
        ranges.push(vec![0; words]);
        for v1 in 0..n {
            for v2 in v1..n {
                let Some(path) = dm.canonical_path(v1, v2) else {
                    continue;
                };
                let mut bits = vec![0u64; words];
                for v in path {
                    bits[v / 64] |= 1 << (v % 64);
                }
                ranges.push(bits);
            }
        }
        ranges.sort_unstable();
        ranges.dedup();
        Self { n, words, ranges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct ranges, the empty path included.
    pub fn num_ranges(&self) -> usize {
        self.ranges.len()
    }

    pub fn ranges(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.ranges.iter().map(move |bits| {
            (0..self.n)
                .filter(|&v| bits[v / 64] >> (v % 64) & 1 == 1)
                .collect()
        })
    }

    fn trace(&self, range: &[u64], subset: &[usize]) -> u32 {
        debug_assert_eq!(range.len(), self.words);
        subset
            .iter()
            .enumerate()
            .filter(|&(_, &v)| range[v / 64] >> (v % 64) & 1 == 1)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }
}

/// Whether every subset of `subset` is the trace of some range.
pub fn is_shattered(ps: &PathSystem, subset: &[usize]) -> Result<bool, NetError> {
    if subset.len() > MAX_SUBSET {
        return Err(NetError::SubsetTooLarge(subset.len()));
    }
    if let Some(&vertex) = subset.iter().find(|&&v| v >= ps.n) {
        return Err(NetError::VertexOutOfRange { vertex, n: ps.n });
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let full = 1usize << sorted.len();
    let mut seen = vec![false; full];
    let mut hit = 0;
    for range in &ps.ranges {
        let t = ps.trace(range, &sorted) as usize;
        if !seen[t] {
            seen[t] = true;
            hit += 1;
            if hit == full {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Size of the largest shattered subset with at most `max_size` elements.
///
/// Shattering is hereditary, so the search stops at the first size with no
/// shattered subset.
pub fn vc_dimension(ps: &PathSystem, max_size: usize) -> Result<usize, NetError> {
    if max_size > MAX_SUBSET {
        return Err(NetError::SubsetTooLarge(max_size));
    }
    let mut best = 0;
    for k in 1..=max_size.min(ps.n) {
        if !any_shattered(ps, k) {
            break;
        }
        best = k;
    }
    Ok(best)
}

/// The first shattered `k`-subset in lexicographic order, if any.
pub fn find_shattered(ps: &PathSystem, k: usize) -> Option<Vec<usize>> {
    let n = ps.n;
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if is_shattered(ps, &idx).unwrap_or(false) {
            return Some(idx);
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn any_shattered(ps: &PathSystem, k: usize) -> bool {
    find_shattered(ps, k).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::graph::{apsp, Graph};

    fn system(g: &Graph) -> PathSystem {
        PathSystem::new(&apsp(&g.perturb(0)).unwrap())
    }

    /// Independent oracle: enumerate intervals of a path graph directly.
    fn path_traces(n: usize, subset: &[usize]) -> std::collections::BTreeSet<Vec<usize>> {
        let mut traces = std::collections::BTreeSet::new();
        traces.insert(vec![]);
        for a in 0..n {
            for b in a..n {
                traces.insert(
                    subset
                        .iter()
                        .copied()
                        .filter(|&v| a <= v && v <= b)
                        .collect(),
                );
            }
        }
        traces
    }

    #[test]
    fn path_five() {
        let ps = system(&generate::path(5));
        assert_eq!(path_traces(5, &[1, 3]).len(), 4);
        assert!(is_shattered(&ps, &[1, 3]).unwrap());
        assert_eq!(path_traces(5, &[1, 2, 3]).len(), 7);
        assert!(!is_shattered(&ps, &[1, 2, 3]).unwrap());
        assert!(is_shattered(&ps, &[]).unwrap());
        assert_eq!(vc_dimension(&ps, 3).unwrap(), 2);
        assert_eq!(vc_dimension(&ps, 4).unwrap(), 2);
    }

    #[test]
    fn path_five_matches_interval_oracle() {
        let ps = system(&generate::path(5));
        for a in 0..5 {
            for b in a + 1..5 {
                let oracle = path_traces(5, &[a, b]).len() == 4;
                assert_eq!(is_shattered(&ps, &[a, b]).unwrap(), oracle, "{{{a}, {b}}}");
            }
        }
    }

    #[test]
    fn small_graphs() {
        assert_eq!(vc_dimension(&system(&generate::path(1)), 4).unwrap(), 1);
        assert_eq!(vc_dimension(&system(&generate::path(0)), 4).unwrap(), 0);
        assert_eq!(vc_dimension(&system(&generate::path(2)), 4).unwrap(), 2);
    }

    #[test]
    fn limits() {
        let ps = system(&generate::path(6));
        assert_eq!(
            is_shattered(&ps, &[0, 1, 2, 3, 4]).unwrap_err(),
            NetError::SubsetTooLarge(5)
        );
        assert!(matches!(
            is_shattered(&ps, &[9]),
            Err(NetError::VertexOutOfRange { vertex: 9, .. })
        ));
        assert!(vc_dimension(&ps, 5).is_err());
    }

    #[test]
    fn ranges_include_singletons_and_empty() {
        let ps = system(&generate::path(3));
        let ranges: Vec<_> = ps.ranges().collect();
        assert!(ranges.contains(&vec![]));
        assert!(ranges.contains(&vec![1]));
        assert!(ranges.contains(&vec![0, 1, 2]));
        // {}, 3 singletons, {0,1}, {1,2}, {0,1,2}
        assert_eq!(ps.num_ranges(), 7);
    }
}
