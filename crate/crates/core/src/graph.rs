//! Directed multigraphs and their Kirchhoff spaces.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::Matrix;
use crate::scalar::ExactField;
use crate::spaces::VectorSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: Label,
    pub tail: String,
    pub head: String,
}

impl Edge {
    pub fn new(label: impl Into<String>, tail: impl Into<String>, head: impl Into<String>) -> Self {
        Edge {
            label: Label::plain(label),
            tail: tail.into(),
            head: head.into(),
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// Vertices plus labelled edges; self-loops and parallel edges allowed.
/// Edges are kept sorted by label.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OrientedGraph {
    vertices: BTreeSet<String>,
    edges: Vec<Edge>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// False when already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller index as root; indices follow sorted vertex names
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

impl OrientedGraph {
    pub fn new(
        vertices: impl IntoIterator<Item = impl Into<String>>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let vertices: BTreeSet<String> = vertices.into_iter().map(Into::into).collect();
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        for e in &edges {
            for v in [&e.tail, &e.head] {
                if !vertices.contains(v) {
                    return Err(Error::UnknownVertex(v.clone()));
                }
            }
        }
        edges.sort_by(|a, b| a.label.cmp(&b.label));
        if let Some(w) = edges.windows(2).find(|w| w[0].label == w[1].label) {
            return Err(Error::DuplicateEdge(w[0].label.to_string()));
        }
        Ok(OrientedGraph { vertices, edges })
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> + '_ {
        self.vertices.iter().map(String::as_str)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, label: &Label) -> Option<&Edge> {
        self.edges
            .binary_search_by(|e| e.label.cmp(label))
            .ok()
            .map(|k| &self.edges[k])
    }

    pub fn labels(&self) -> Vec<Label> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    fn vertex_index(&self) -> BTreeMap<&str, usize> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(k, v)| (v.as_str(), k))
            .collect()
    }

    /// Vertex by edge; `+1` at the tail, `-1` at the head, zero column for
    /// a self-loop.
    pub fn incidence<F: ExactField>(&self) -> Matrix<F> {
        let index = self.vertex_index();
        let mut a = Matrix::zeros(self.vertices.len(), self.edges.len());
        for (c, e) in self.edges.iter().enumerate() {
            if e.is_self_loop() {
                continue;
            }
            a.row_mut(index[e.tail.as_str()])[c] = F::one();
            a.row_mut(index[e.head.as_str()])[c] = -F::one();
        }
        a
    }

    /// Potential differences across edges.
    pub fn voltage_space<F: ExactField>(&self) -> VectorSpace<F> {
        VectorSpace::row_space(self.labels(), &self.incidence()).expect("edge labels are distinct")
    }

    /// Edge currents obeying conservation at every vertex.
    pub fn current_space<F: ExactField>(&self) -> VectorSpace<F> {
        VectorSpace::solutions(self.labels(), &self.incidence()).expect("edge labels are distinct")
    }

    fn check_subset(&self, t: &[Label]) -> Result<BTreeSet<Label>> {
        t.iter()
            .map(|l| {
                if self.edge(l).is_some() {
                    Ok(l.clone())
                } else {
                    Err(Error::NotInIndexSet(l.clone()))
                }
            })
            .collect()
    }

    fn isolated(&self) -> BTreeSet<&str> {
        let touched: BTreeSet<&str> = self
            .edges
            .iter()
            .flat_map(|e| [e.tail.as_str(), e.head.as_str()])
            .collect();
        self.vertices().filter(|v| !touched.contains(v)).collect()
    }

    /// Rebuilds with `edges`, dropping vertices that lost all their edges.
    /// Vertices already isolated in `self` are kept.
    fn with_edges(
        &self,
        vertices: BTreeSet<String>,
        edges: Vec<Edge>,
        keep: &BTreeSet<&str>,
    ) -> Self {
        let touched: BTreeSet<&str> = edges
            .iter()
            .flat_map(|e| [e.tail.as_str(), e.head.as_str()])
            .collect();
        let vertices = vertices
            .into_iter()
            .filter(|v| touched.contains(v.as_str()) || keep.contains(v.as_str()))
            .collect();
        OrientedGraph { vertices, edges }
    }

    /// Open-circuits the edges `t`.
    pub fn delete(&self, t: &[Label]) -> Result<Self> {
        let t = self.check_subset(t)?;
        let keep = self.isolated();
        let edges = self
            .edges
            .iter()
            .filter(|e| !t.contains(&e.label))
            .cloned()
            .collect();
        Ok(self.with_edges(self.vertices.clone(), edges, &keep))
    }

    /// Short-circuits the edges `t`. A fused vertex is named after its
    /// lexicographically smallest member.
    pub fn contract(&self, t: &[Label]) -> Result<Self> {
        let t = self.check_subset(t)?;
        let keep = self.isolated();
        let index = self.vertex_index();
        let names: Vec<&String> = self.vertices.iter().collect();
        let mut uf = UnionFind::new(names.len());
        for e in self.edges.iter().filter(|e| t.contains(&e.label)) {
            uf.union(index[e.tail.as_str()], index[e.head.as_str()]);
        }
        let mut rep = |v: &str| names[uf.find(index[v])].clone();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| !t.contains(&e.label))
            .map(|e| Edge {
                label: e.label.clone(),
                tail: rep(&e.tail),
                head: rep(&e.head),
            })
            .collect();
        let vertices = self.vertices.iter().map(|v| rep(v)).collect();
        Ok(self.with_edges(vertices, edges, &keep))
    }

    /// Spanning forest chosen greedily in label order.
    pub fn forest(&self) -> Vec<Label> {
        let index = self.vertex_index();
        let mut uf = UnionFind::new(self.vertices.len());
        self.edges
            .iter()
            .filter(|e| uf.union(index[e.tail.as_str()], index[e.head.as_str()]))
            .map(|e| e.label.clone())
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.vertices.len() - self.forest().len()
    }

    /// Disjoint union; fails on a shared vertex name or edge label.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if let Some(v) = self.vertices.intersection(&other.vertices).next() {
            return Err(Error::Internal(format!("vertex `{v}` in both graphs")));
        }
        let vertices = self.vertices.iter().chain(&other.vertices).cloned();
        let edges = self.edges.iter().chain(&other.edges).cloned();
        OrientedGraph::new(vertices, edges)
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::generate::{random_graph, seeded};
    use crate::scalar::Rational;

    type V = VectorSpace<Rational>;

    fn graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> OrientedGraph {
        OrientedGraph::new(
            vertices.iter().copied(),
            edges.iter().map(|&(l, t, h)| Edge::new(l, t, h)),
        )
        .unwrap()
    }

    fn labels(names: &[&str]) -> Vec<Label> {
        names.iter().map(|n| Label::plain(*n)).collect()
    }

    fn span(names: &[&str], rows: &[&[i64]]) -> V {
        V::span(
            labels(names),
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()),
        )
        .unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            OrientedGraph::new(["a"], [Edge::new("e", "a", "b")]),
            Err(Error::UnknownVertex("b".into()))
        );
        assert_eq!(
            OrientedGraph::new(
                ["a", "b"],
                [Edge::new("e", "a", "b"), Edge::new("e", "b", "a")]
            ),
            Err(Error::DuplicateEdge("e".into()))
        );
    }

    #[test]
    fn incidence_signs() {
        let g = graph(&["a", "b"], &[("e", "a", "b"), ("l", "a", "a")]);
        let a: Matrix<Rational> = g.incidence();
        assert_eq!(a, Matrix::from_i64(&[&[1, 0], &[-1, 0]]));
    }

    #[test]
    fn kirchhoff_space_examples() {
        let single = graph(&["a", "b"], &[("e", "a", "b")]);
        assert!(single.voltage_space::<Rational>().is_full());
        assert!(single.current_space::<Rational>().is_zero());

        let pair = graph(&["a", "b"], &[("e1", "a", "b"), ("e2", "a", "b")]);
        assert_eq!(pair.voltage_space(), span(&["e1", "e2"], &[&[1, 1]]));
        assert_eq!(pair.current_space(), span(&["e1", "e2"], &[&[1, -1]]));

        let self_loop = graph(&["a"], &[("l", "a", "a")]);
        assert!(self_loop.voltage_space::<Rational>().is_zero());
        assert!(self_loop.current_space::<Rational>().is_full());
    }

    #[test]
    fn delete_examples() {
        let g = graph(
            &["a", "b", "c"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")],
        );
        assert_eq!(g.delete(&[]).unwrap(), g);
        let empty = g.delete(&g.labels()).unwrap();
        assert_eq!(empty.edges().len(), 0);
        assert_eq!(empty.vertex_count(), 0);
        let path = g.delete(&labels(&["e3"])).unwrap();
        assert_eq!(path.forest().len(), 2);
        assert!(path.current_space::<Rational>().is_zero());
        assert!(g.delete(&labels(&["x"])).is_err());
    }

    #[test]
    fn contract_examples() {
        let g = graph(
            &["a", "b", "c"],
            &[("e1", "b", "c"), ("e2", "a", "b"), ("e3", "c", "a")],
        );
        assert_eq!(g.contract(&[]).unwrap(), g);
        let tree = g.forest();
        let one = g.contract(&tree).unwrap();
        assert_eq!(one.vertex_count(), 1);
        assert!(one.edges()[0].is_self_loop());
        let path = g.delete(&labels(&["e3"])).unwrap();
        assert_eq!(path.contract(&tree).unwrap().vertex_count(), 0);
        let fused = g.contract(&labels(&["e1"])).unwrap();
        assert_eq!(fused.vertices().collect::<Vec<_>>(), ["a", "b"]);
        assert_eq!(fused.edge(&Label::plain("e3")).unwrap().tail, "b");
        let t = labels(&["e1"]);
        let d = labels(&["e3"]);
        assert_eq!(
            g.contract(&t).unwrap().delete(&d).unwrap(),
            g.delete(&d).unwrap().contract(&t).unwrap()
        );
        assert!(g.contract(&labels(&["x"])).is_err());
    }

    #[test]
    fn forest_examples() {
        let tree = graph(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c")]);
        assert_eq!(tree.forest(), tree.labels());
        let cycle = graph(
            &["a", "b", "c"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")],
        );
        assert_eq!(cycle.forest(), labels(&["e1", "e2"]));
        let parallel = graph(&["a", "b"], &[("x", "a", "b"), ("w", "b", "a")]);
        assert_eq!(parallel.forest(), labels(&["w"]));
        let two = graph(&["a", "b", "c", "d"], &[("e1", "a", "b"), ("e2", "c", "d")]);
        assert_eq!(two.component_count(), 2);
    }

    fn complement(g: &OrientedGraph, t: &[Label]) -> Vec<Label> {
        g.labels().into_iter().filter(|l| !t.contains(l)).collect()
    }

    proptest! {
        #[test]
        fn tellegen_and_minors(seed in any::<u64>(), mask in any::<u16>()) {
            let g = random_graph(&mut seeded(seed), 8, 16);
            let vv: V = g.voltage_space();
            let vi: V = g.current_space();
            prop_assert_eq!(&vi, &vv.perp());
            prop_assert_eq!(vv.dim() + vi.dim(), g.edges().len());
            prop_assert_eq!(vv.dim(), g.forest().len());

            let t: Vec<Label> = g.labels().into_iter().enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1).map(|(_, l)| l).collect();
            let rest = complement(&g, &t);
            let open = g.delete(&rest).unwrap();
            let short = g.contract(&rest).unwrap();
            prop_assert_eq!(open.voltage_space::<Rational>(), vv.restrict(&t).unwrap());
            prop_assert_eq!(short.voltage_space::<Rational>(), vv.contract(&t).unwrap());
            prop_assert_eq!(open.current_space::<Rational>(), vi.contract(&t).unwrap());
            prop_assert_eq!(short.current_space::<Rational>(), vi.restrict(&t).unwrap());
        }
    }
}
