//! The layered poset `D_P` attached to a partition `P`.
//!
//! Each part size `p` with multiplicity `n_p` contributes a *level* of
//! `p * n_p` vertices `(u, p, k)` with column `1 <= u <= p` and row
//! `1 <= k <= n_p`. Cover edges come in four families:
//!
//! - `e`: `(u, p, k) -> (u, p, k+1)`, stepping up a row within a column;
//! - `alpha`: from the top row of a level to row 1 of the next level up,
//!   `(u, p, n_p) -> (u + q - p, q, 1)` for every column `u` of the lower
//!   level;
//! - `beta`: from the top row of a level down to row 1 of the next level
//!   below, `(u, p, n_p) -> (u, o, 1)` for `u` up to the width `o` of the
//!   lower level;
//! - `omega`: only on a level isolated from both neighbours by size gaps of
//!   at least 2 (or with no neighbour on that side):
//!   `(u, p, n_p) -> (u+1, p, 1)`.
//!
//! The order has a closed form on labels (see [`PartitionPoset::leq`]); the
//! test suite checks it against reachability along the cover edges.

use std::collections::HashMap;
use std::fmt;

use crate::partition::Partition;

/// A vertex `(u, p, k)`: column `u`, level `p`, row `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PosetVertex {
    pub u: usize,
    pub p: usize,
    pub k: usize,
}

impl PosetVertex {
    pub fn new(u: usize, p: usize, k: usize) -> Self {
        PosetVertex { u, p, k }
    }

    /// The compact `u.p.k` name used in DOT output.
    pub fn dot_name(&self) -> String {
        format!("{}.{}.{}", self.u, self.p, self.k)
    }
}

impl fmt::Display for PosetVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.u, self.p, self.k)
    }
}

/// Cover-edge families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeKind {
    Alpha,
    Beta,
    E,
    Omega,
}

impl EdgeKind {
    pub fn label(self) -> &'static str {
        match self {
            EdgeKind::Alpha => "alpha",
            EdgeKind::Beta => "beta",
            EdgeKind::E => "e",
            EdgeKind::Omega => "omega",
        }
    }
}

/// Order formula on labels, independent of any particular poset: for
/// `a = (x, p, k)` and `b = (y, q, l)`,
///
/// - `p < q`: `a <= b` iff `q - p + x <= y`;
/// - `p > q`: `a <= b` iff `x <= y`;
/// - `p == q`: `a <= b` iff `x < y`, or `x == y` and `k <= l`.
pub(crate) fn leq_labels(a: PosetVertex, b: PosetVertex) -> bool {
    if a.p < b.p {
        b.p - a.p + a.u <= b.u
    } else if a.p > b.p {
        a.u <= b.u
    } else if a.u != b.u {
        a.u < b.u
    } else {
        a.k <= b.k
    }
}

/// The poset `D_P`, with a dense vertex index and the cover-edge list.
pub struct PartitionPoset {
    partition: Partition,
    /// `(size, multiplicity)` per level, ascending by size.
    levels: Vec<(usize, usize)>,
    /// All vertices, sorted by (level, row, column); this is the index order.
    vertices: Vec<PosetVertex>,
    index: HashMap<PosetVertex, usize>,
    /// Cover edges as index pairs, sorted by (source, target).
    covers: Vec<(usize, usize, EdgeKind)>,
}

impl PartitionPoset {
    pub fn build(partition: &Partition) -> Self {
        let mut levels: Vec<(usize, usize)> = partition.exponent_form();
        levels.reverse(); // ascending by size

        let mut vertices = Vec::with_capacity(partition.n());
        for &(p, np) in &levels {
            for k in 1..=np {
                for u in 1..=p {
                    vertices.push(PosetVertex::new(u, p, k));
                }
            }
        }
        let index: HashMap<PosetVertex, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();

        let mut covers: Vec<(usize, usize, EdgeKind)> = Vec::new();
        let mut push = |index: &HashMap<PosetVertex, usize>, a: PosetVertex, b: PosetVertex, kind: EdgeKind| {
            covers.push((index[&a], index[&b], kind));
        };
        for (i, &(p, np)) in levels.iter().enumerate() {
            // e: consecutive rows within a column
            for k in 1..np {
                for u in 1..=p {
                    push(
                        &index,
                        PosetVertex::new(u, p, k),
                        PosetVertex::new(u, p, k + 1),
                        EdgeKind::E,
                    );
                }
            }
            // alpha: top row up to the next level
            if let Some(&(q, _)) = levels.get(i + 1) {
                for u in 1..=p {
                    push(
                        &index,
                        PosetVertex::new(u, p, np),
                        PosetVertex::new(u + q - p, q, 1),
                        EdgeKind::Alpha,
                    );
                }
            }
            // beta: top row down to the previous level
            if i > 0 {
                let (o, _) = levels[i - 1];
                for u in 1..=o {
                    push(
                        &index,
                        PosetVertex::new(u, p, np),
                        PosetVertex::new(u, o, 1),
                        EdgeKind::Beta,
                    );
                }
            }
            // omega: next column, on levels isolated on both sides
            let isolated_below = i == 0 || p - levels[i - 1].0 > 1;
            let isolated_above = i + 1 == levels.len() || levels[i + 1].0 - p > 1;
            if isolated_below && isolated_above {
                for u in 1..p {
                    push(
                        &index,
                        PosetVertex::new(u, p, np),
                        PosetVertex::new(u + 1, p, 1),
                        EdgeKind::Omega,
                    );
                }
            }
        }
        covers.sort_by_key(|&(a, b, _)| (a, b));

        PartitionPoset {
            partition: partition.clone(),
            levels,
            vertices,
            index,
            covers,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// `(size, multiplicity)` per level, ascending by size.
    pub fn levels(&self) -> &[(usize, usize)] {
        &self.levels
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Vertices in index order: level ascending, then row, then column.
    pub fn vertices(&self) -> &[PosetVertex] {
        &self.vertices
    }

    /// Cover edges `(source, target, kind)` as indices into [`Self::vertices`].
    pub fn covers(&self) -> &[(usize, usize, EdgeKind)] {
        &self.covers
    }

    pub fn contains(&self, v: PosetVertex) -> bool {
        self.index.contains_key(&v)
    }

    pub fn index_of(&self, v: PosetVertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    /// The order relation, evaluated on labels.
    pub fn leq(&self, a: PosetVertex, b: PosetVertex) -> bool {
        debug_assert!(self.contains(a), "foreign vertex {a}");
        debug_assert!(self.contains(b), "foreign vertex {b}");
        leq_labels(a, b)
    }

    pub fn incomparable(&self, a: PosetVertex, b: PosetVertex) -> bool {
        !self.leq(a, b) && !self.leq(b, a)
    }

    /// Whether the given vertices are pairwise incomparable. Duplicates make
    /// this false.
    pub fn is_antichain(&self, set: &[PosetVertex]) -> bool {
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                if self.leq(set[i], set[j]) || self.leq(set[j], set[i]) {
                    return false;
                }
            }
        }
        true
    }

    /// Reflexive reachability along cover edges, as a dense matrix. Intended
    /// for cross-checks on small posets; quadratic memory.
    pub fn reachability_from_covers(&self) -> Vec<Vec<bool>> {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b, _) in &self.covers {
            adj[a].push(b);
        }
        let mut reach = vec![vec![false; n]; n];
        for (start, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![start];
            row[start] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !row[w] {
                        row[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        reach
    }

    /// Graphviz rendering with vertices named `u.p.k` and edges labeled by
    /// family. Output bytes are deterministic.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph poset {\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{}\";\n", v.dot_name()));
        }
        for &(a, b, kind) in &self.covers {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.vertices[a].dot_name(),
                self.vertices[b].dot_name(),
                kind.label()
            ));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::all_partitions;

    fn pt(text: &str) -> Partition {
        Partition::parse(text).unwrap()
    }

    fn v(u: usize, p: usize, k: usize) -> PosetVertex {
        PosetVertex::new(u, p, k)
    }

    #[test]
    fn single_row_partition_gives_a_chain() {
        let poset = PartitionPoset::build(&pt("4"));
        assert_eq!(poset.vertex_count(), 4);
        // isolated level: omega edges walk the columns
        let kinds: Vec<EdgeKind> = poset.covers().iter().map(|&(_, _, k)| k).collect();
        assert_eq!(kinds, vec![EdgeKind::Omega; 3]);
        assert!(poset.leq(v(1, 4, 1), v(4, 4, 1)));
        assert!(!poset.leq(v(2, 4, 1), v(1, 4, 1)));
    }

    #[test]
    fn column_partition_gives_a_chain() {
        let poset = PartitionPoset::build(&pt("1^5"));
        assert_eq!(poset.vertex_count(), 5);
        let kinds: Vec<EdgeKind> = poset.covers().iter().map(|&(_, _, k)| k).collect();
        assert_eq!(kinds, vec![EdgeKind::E; 4]);
    }

    #[test]
    fn two_one_one_is_the_expected_four_chain() {
        let poset = PartitionPoset::build(&pt("2,1,1"));
        assert_eq!(poset.vertex_count(), 4);
        assert_eq!(
            poset.vertices(),
            &[v(1, 1, 1), v(1, 1, 2), v(1, 2, 1), v(2, 2, 1)]
        );
        let named: Vec<(PosetVertex, PosetVertex, EdgeKind)> = poset
            .covers()
            .iter()
            .map(|&(a, b, k)| (poset.vertices()[a], poset.vertices()[b], k))
            .collect();
        assert_eq!(
            named,
            vec![
                (v(1, 1, 1), v(1, 1, 2), EdgeKind::E),
                (v(1, 1, 2), v(2, 2, 1), EdgeKind::Alpha),
                (v(1, 2, 1), v(1, 1, 1), EdgeKind::Beta),
            ]
        );
        // the four vertices form a chain, entered through the upper level
        let chain = [v(1, 2, 1), v(1, 1, 1), v(1, 1, 2), v(2, 2, 1)];
        for i in 0..4 {
            for j in i..4 {
                assert!(poset.leq(chain[i], chain[j]), "{} <= {}", chain[i], chain[j]);
            }
        }
        assert!(poset.leq(v(1, 2, 1), v(1, 1, 1)), "beta edges point down a level");
    }

    #[test]
    fn omega_needs_isolation_on_both_sides() {
        // (3,1): both levels isolated (gap 2), so both get omega edges
        let poset = PartitionPoset::build(&pt("3,1"));
        let omegas: Vec<(PosetVertex, PosetVertex)> = poset
            .covers()
            .iter()
            .filter(|&&(_, _, k)| k == EdgeKind::Omega)
            .map(|&(a, b, _)| (poset.vertices()[a], poset.vertices()[b]))
            .collect();
        assert_eq!(omegas, vec![(v(1, 3, 1), v(2, 3, 1)), (v(2, 3, 1), v(3, 3, 1))]);

        // (2,1): adjacent levels, no omega anywhere
        let poset = PartitionPoset::build(&pt("2,1"));
        assert!(poset
            .covers()
            .iter()
            .all(|&(_, _, k)| k != EdgeKind::Omega));
    }

    #[test]
    fn leq_clause_order_prefers_level_comparison() {
        let poset = PartitionPoset::build(&pt("4,2"));
        // p < q: (x,2,k) <= (y,4,l) iff x + 2 <= y
        assert!(poset.leq(v(1, 2, 1), v(3, 4, 1)));
        assert!(!poset.leq(v(1, 2, 1), v(2, 4, 1)));
        // p > q: (x,4,k) <= (y,2,l) iff x <= y
        assert!(poset.leq(v(2, 4, 1), v(2, 2, 1)));
        assert!(!poset.leq(v(3, 4, 1), v(2, 2, 1)));
        // incomparable pair between levels
        assert!(poset.incomparable(v(2, 4, 1), v(1, 2, 1)));
    }

    #[test]
    fn leq_within_level_uses_rows_only_within_a_column() {
        let poset = PartitionPoset::build(&pt("3,3"));
        assert!(poset.leq(v(1, 3, 2), v(2, 3, 1)), "column beats row");
        assert!(poset.leq(v(1, 3, 1), v(1, 3, 2)));
        assert!(!poset.leq(v(1, 3, 2), v(1, 3, 1)));
    }

    #[test]
    fn order_formula_matches_cover_reachability() {
        for n in 1..=10 {
            for p in all_partitions(n) {
                let poset = PartitionPoset::build(&p);
                let reach = poset.reachability_from_covers();
                let vs = poset.vertices();
                for i in 0..vs.len() {
                    for j in 0..vs.len() {
                        assert_eq!(
                            poset.leq(vs[i], vs[j]),
                            reach[i][j],
                            "partition {p}: {} vs {}",
                            vs[i],
                            vs[j]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cover_edges_are_covers() {
        // no cover edge admits an intermediate vertex
        for n in 1..=8 {
            for p in all_partitions(n) {
                let poset = PartitionPoset::build(&p);
                let vs = poset.vertices();
                for &(a, b, kind) in poset.covers() {
                    assert!(poset.leq(vs[a], vs[b]));
                    assert_ne!(a, b);
                    for c in 0..vs.len() {
                        if c == a || c == b {
                            continue;
                        }
                        assert!(
                            !(poset.leq(vs[a], vs[c]) && poset.leq(vs[c], vs[b])),
                            "partition {p}: {:?} edge {} -> {} passes through {}",
                            kind,
                            vs[a],
                            vs[b],
                            vs[c]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn antichain_checks() {
        let poset = PartitionPoset::build(&pt("4,2"));
        assert!(poset.is_antichain(&[v(2, 4, 1), v(1, 2, 1)]));
        assert!(!poset.is_antichain(&[v(1, 4, 1), v(2, 4, 1)]));
        assert!(!poset.is_antichain(&[v(1, 2, 1), v(1, 2, 1)]), "duplicates");
        assert!(poset.is_antichain(&[]));
        assert!(poset.is_antichain(&[v(1, 4, 1)]));
    }

    #[test]
    fn dot_output_is_stable() {
        let poset = PartitionPoset::build(&pt("2,1"));
        let expected = "digraph poset {\n  \"1.1.1\";\n  \"1.2.1\";\n  \"2.2.1\";\n  \"1.1.1\" -> \"2.2.1\" [label=\"alpha\"];\n  \"1.2.1\" -> \"1.1.1\" [label=\"beta\"];\n}\n";
        assert_eq!(poset.to_dot(), expected);
        assert_eq!(poset.to_dot(), expected, "repeat builds agree");
    }

    #[test]
    fn shift_preserves_order_formula() {
        // the label order only depends on level differences and columns, so
        // adding t to every level and t to nothing else must not change it;
        // the embedding used for stacked spreads also shifts columns.
        let examples = [
            (v(1, 2, 1), v(2, 4, 2)),
            (v(2, 4, 1), v(1, 2, 1)),
            (v(1, 3, 1), v(2, 3, 1)),
            (v(3, 5, 2), v(3, 5, 3)),
        ];
        for (a, b) in examples {
            for t in 1..4 {
                let at = v(a.u + t, a.p + 2 * t, a.k);
                let bt = v(b.u + t, b.p + 2 * t, b.k);
                assert_eq!(leq_labels(a, b), leq_labels(at, bt));
            }
        }
    }
}
