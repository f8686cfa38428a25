use std::collections::HashMap;

use crate::corpus::Partition;
use crate::error::{Error, Result};

/// Disjoint-set forest with path compression and union by rank.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    /// Returns true when the two nodes were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] = self.rank[a].saturating_add(1);
        }
        true
    }

    /// Component label per node, numbered by first appearance.
    pub fn labels(&mut self) -> Vec<usize> {
        let mut slot = HashMap::new();
        (0..self.len())
            .map(|i| {
                let r = self.find(i);
                let next = slot.len();
                *slot.entry(r).or_insert(next)
            })
            .collect()
    }
}

/// Connected components of the graph on `0..n` with the given edges.
pub fn components(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for (a, b) in edges {
        uf.union(a, b);
    }
    uf.labels()
}

/// Single-linkage clustering: connected components over `universe`, with
/// edge-free ids left as singletons.
pub fn single_linkage<'a>(
    universe: &[String],
    pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
) -> Result<Partition> {
    let index: HashMap<&str, usize> = universe
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();
    let mut uf = UnionFind::new(universe.len());
    for (a, b) in pairs {
        let ia = *index
            .get(a)
            .ok_or_else(|| Error::InvalidPartition(format!("pair id {a:?} not in universe")))?;
        let ib = *index
            .get(b)
            .ok_or_else(|| Error::InvalidPartition(format!("pair id {b:?} not in universe")))?;
        uf.union(ia, ib);
    }
    let partition = Partition::from_labels(universe, &uf.labels())?;
    partition.validate(universe)?;
    Ok(partition)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn transitive_chain() {
        let p = single_linkage(&ids(&["a", "b", "c", "d"]), [("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(p.canonical(), vec![ids(&["a", "b", "c"]), ids(&["d"])]);
    }

    #[test]
    fn no_edges_gives_singletons() {
        let p = single_linkage(&ids(&["a", "b", "c"]), []).unwrap();
        assert_eq!(p.num_groups(), 3);
    }

    #[test]
    fn unknown_id_is_an_error() {
        assert!(single_linkage(&ids(&["a"]), [("a", "z")]).is_err());
    }

    proptest::proptest! {
        #[test]
        fn order_of_pairs_does_not_matter(
            edges in proptest::collection::vec((0usize..15, 0usize..15), 0..30),
            seed in 0u64..1000,
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let universe: Vec<String> = (0..15).map(|i| format!("n{i}")).collect();
            let named: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (universe[*a].as_str(), universe[*b].as_str())).collect();
            let mut shuffled = named.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let mut perm_universe = universe.clone();
            perm_universe.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed + 1));
            let a = single_linkage(&universe, named).unwrap();
            let b = single_linkage(&perm_universe, shuffled).unwrap();
            proptest::prop_assert_eq!(a.canonical(), b.canonical());
        }
    }
}
