//! Networks with ports, their full constraint systems, port behaviours and
//! regularity.
//!
//! Voltage and current of edge `e` live on columns `e'` and `e''`. Ports carry
//! no device constraint. A port behaviour is stored with its current sign
//! flipped, so `(v, -i)` of every solution restricted to the ports.

mod duals;
mod passivity;

use std::collections::BTreeSet;

pub use duals::{
    adjoint_space, dirac_dual, edge_pairs, is_dirac, is_ideal_transformer, is_proper,
    is_reciprocal, ortho_dual,
};
pub use passivity::{definiteness, gram_matrix, is_passive, is_strictly_passive, Definiteness};

use crate::error::{Error, Result};
use crate::graph::OrientedGraph;
use crate::label::{Decoration, Label};
use crate::matrix::Matrix;
use crate::scalar::ExactField;
use crate::spaces::{AffineSpace, VectorSpace};

/// Affine relation between port voltages and sign-flipped port currents.
pub type PortBehaviour<F> = AffineSpace<F>;

pub fn voltage(e: &Label) -> Label {
    e.with_decoration(Decoration::Prime)
}

pub fn current(e: &Label) -> Label {
    e.with_decoration(Decoration::DoublePrime)
}

pub fn voltages(edges: &[Label]) -> Vec<Label> {
    edges.iter().map(voltage).collect()
}

pub fn currents(edges: &[Label]) -> Vec<Label> {
    edges.iter().map(current).collect()
}

/// Constraint rows `(M | N | s)` on a group of edges: `M v + N i = s`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeviceBlock<F: ExactField> {
    name: String,
    edges: Vec<Label>,
    coefficients: Matrix<F>,
    rhs: Vec<F>,
}

impl<F: ExactField> DeviceBlock<F> {
    /// Each row holds `2 * edges.len()` coefficients then the source value.
    /// Rows dependent on earlier ones are dropped; a dependent row with a
    /// conflicting source is an error.
    pub fn new(name: impl Into<String>, edges: Vec<Label>, rows: Vec<Vec<F>>) -> Result<Self> {
        let name = name.into();
        let width = 2 * edges.len();
        let mut seen = BTreeSet::new();
        for e in &edges {
            if !seen.insert(e) {
                return Err(Error::Device(name, format!("edge `{e}` listed twice")));
            }
        }
        let mut kept: Vec<Vec<F>> = Vec::new();
        for (k, row) in rows.into_iter().enumerate() {
            if row.len() != width + 1 {
                return Err(Error::Device(
                    name,
                    format!(
                        "row {} has {} entries, expected {}",
                        k + 1,
                        row.len(),
                        width + 1
                    ),
                ));
            }
            let rank_of = |rows: &[Vec<F>], cols: usize| {
                Matrix::from_rows(cols, rows.iter().map(|r| r[..cols].to_vec())).rank()
            };
            let mut trial = kept.clone();
            trial.push(row);
            if rank_of(&trial, width) > kept.len() {
                kept = trial;
            } else if rank_of(&trial, width + 1) > kept.len() {
                return Err(Error::Device(
                    name,
                    format!("row {} contradicts the rows before it", k + 1),
                ));
            }
        }
        let rhs = kept.iter().map(|r| r[width].clone()).collect();
        let coefficients = Matrix::from_rows(
            width,
            kept.into_iter().map(|mut r| {
                r.truncate(width);
                r
            }),
        );
        Ok(DeviceBlock {
            name,
            edges,
            coefficients,
            rhs,
        })
    }

    /// Rows whose solution set is `space`, which must live on the block's
    /// voltage and current labels.
    pub fn from_space(
        name: impl Into<String>,
        edges: Vec<Label>,
        space: &AffineSpace<F>,
    ) -> Result<Self> {
        let name = name.into();
        let Some((c, s)) = space.equations() else {
            return Err(Error::Device(name, "device characteristic is void".into()));
        };
        let mut labels = voltages(&edges);
        labels.extend(currents(&edges));
        let pos: Vec<usize> = labels
            .iter()
            .map(|l| {
                space
                    .translate()
                    .position(l)
                    .ok_or_else(|| Error::NotInIndexSet(l.clone()))
            })
            .collect::<Result<_>>()?;
        if pos.len() != space.labels().len() {
            return Err(Error::IndexSetMismatch);
        }
        let rows = (0..c.rows())
            .map(|r| {
                let mut row: Vec<F> = pos.iter().map(|&k| c[(r, k)].clone()).collect();
                row.push(s[r].clone());
                row
            })
            .collect();
        Self::new(name, edges, rows)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn edges(&self) -> &[Label] {
        &self.edges
    }

    /// `(M | N)`.
    pub fn coefficients(&self) -> &Matrix<F> {
        &self.coefficients
    }

    pub fn rhs(&self) -> &[F] {
        &self.rhs
    }

    /// `e1' .. ek' e1'' .. ek''`, the column order of `coefficients`.
    pub fn labels(&self) -> Vec<Label> {
        let mut l = voltages(&self.edges);
        l.extend(currents(&self.edges));
        l
    }

    pub fn space(&self) -> AffineSpace<F> {
        AffineSpace::solutions(self.labels(), &self.coefficients, &self.rhs)
            .expect("block rows are consistent")
    }

    pub fn translate(&self) -> VectorSpace<F> {
        VectorSpace::solutions(self.labels(), &self.coefficients)
            .expect("block labels are distinct")
    }

    pub fn homogeneous(&self) -> Self {
        DeviceBlock {
            rhs: vec![F::zero(); self.rhs.len()],
            ..self.clone()
        }
    }

    pub fn relabel(&self, name: impl Into<String>, f: impl Fn(&Label) -> Label) -> Self {
        DeviceBlock {
            name: name.into(),
            edges: self.edges.iter().map(f).collect(),
            ..self.clone()
        }
    }
}

/// The full system of a multiport over `(v_S', v_P', i_S'', i_P'')`.
#[derive(Clone, Debug, PartialEq)]
pub struct Assembly<F: ExactField> {
    pub labels: Vec<Label>,
    pub matrix: Matrix<F>,
    pub rhs: Vec<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Multiport<F: ExactField> {
    graph: OrientedGraph,
    ports: Vec<Label>,
    blocks: Vec<DeviceBlock<F>>,
}

impl<F: ExactField> Multiport<F> {
    pub fn new(
        graph: OrientedGraph,
        ports: Vec<Label>,
        blocks: Vec<DeviceBlock<F>>,
    ) -> Result<Self> {
        let mut ports = ports;
        ports.sort();
        ports.dedup();
        for p in &ports {
            if graph.edge(p).is_none() {
                return Err(Error::UnknownEdge(p.to_string()));
            }
        }
        let mut used = BTreeSet::new();
        for b in &blocks {
            for e in b.edges() {
                if graph.edge(e).is_none() {
                    return Err(Error::UnknownEdge(e.to_string()));
                }
                if ports.binary_search(e).is_ok() {
                    return Err(Error::Device(
                        b.name().into(),
                        format!("port `{e}` in a device"),
                    ));
                }
                if !used.insert(e.clone()) {
                    return Err(Error::Device(
                        b.name().into(),
                        format!("edge `{e}` already belongs to another device"),
                    ));
                }
            }
        }
        Ok(Multiport {
            graph,
            ports,
            blocks,
        })
    }

    pub fn graph(&self) -> &OrientedGraph {
        &self.graph
    }

    pub fn ports(&self) -> &[Label] {
        &self.ports
    }

    pub fn blocks(&self) -> &[DeviceBlock<F>] {
        &self.blocks
    }

    pub fn internal_edges(&self) -> Vec<Label> {
        self.graph
            .labels()
            .into_iter()
            .filter(|l| self.ports.binary_search(l).is_err())
            .collect()
    }

    /// Internal edges no device constrains.
    pub fn free_edges(&self) -> Vec<Label> {
        let used: BTreeSet<&Label> = self.blocks.iter().flat_map(|b| b.edges()).collect();
        self.internal_edges()
            .into_iter()
            .filter(|e| !used.contains(e))
            .collect()
    }

    pub fn device_labels(&self) -> Vec<Label> {
        let s = self.internal_edges();
        let mut l = voltages(&s);
        l.extend(currents(&s));
        l
    }

    pub fn port_labels(&self) -> Vec<Label> {
        let mut l = voltages(&self.ports);
        l.extend(currents(&self.ports));
        l
    }

    /// `A_S'S''`: the blocks' spaces plus unconstrained free edges.
    pub fn device_space(&self) -> AffineSpace<F> {
        let free = self.free_edges();
        let mut labels = voltages(&free);
        labels.extend(currents(&free));
        let mut a = AffineSpace::from_vector_space(
            VectorSpace::full(labels).expect("edge labels are distinct"),
        );
        for b in &self.blocks {
            a = a.direct_sum(&b.space()).expect("blocks are disjoint");
        }
        a
    }

    pub fn device_translate(&self) -> VectorSpace<F> {
        self.device_space().translate().clone()
    }

    /// Same network with every source set to zero.
    pub fn homogeneous(&self) -> Self {
        Multiport {
            blocks: self.blocks.iter().map(DeviceBlock::homogeneous).collect(),
            ..self.clone()
        }
    }

    pub fn variables(&self) -> Vec<Label> {
        let s = self.internal_edges();
        let mut l = voltages(&s);
        l.extend(voltages(&self.ports));
        l.extend(currents(&s));
        l.extend(currents(&self.ports));
        l
    }

    /// KVL rows (a basis of the current space on voltage columns), KCL rows
    /// (a basis of the voltage space on current columns), then device rows.
    pub fn assemble(&self) -> Assembly<F> {
        let labels = self.variables();
        let n = labels.len();
        let col = |l: &Label| labels.iter().position(|x| x == l).expect("variable exists");
        let edges = self.graph.labels();
        let vi: VectorSpace<F> = self.graph.current_space();
        let vv: VectorSpace<F> = self.graph.voltage_space();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let mut place = |basis: &Matrix<F>, copy: fn(&Label) -> Label| {
            for row in basis.iter_rows() {
                let mut r = vec![F::zero(); n];
                for (e, x) in edges.iter().zip(row) {
                    r[col(&copy(e))] = x.clone();
                }
                rows.push(r);
                rhs.push(F::zero());
            }
        };
        place(vi.basis(), voltage);
        place(vv.basis(), current);
        for b in &self.blocks {
            let cols: Vec<usize> = b.labels().iter().map(col).collect();
            for (row, s) in b.coefficients().iter_rows().zip(b.rhs()) {
                let mut r = vec![F::zero(); n];
                for (&c, x) in cols.iter().zip(row) {
                    r[c] = x.clone();
                }
                rows.push(r);
                rhs.push(s.clone());
            }
        }
        Assembly {
            labels,
            matrix: Matrix::from_rows(n, rows),
            rhs,
        }
    }

    /// All `(v, i)` satisfying KVL, KCL and the devices.
    pub fn solutions(&self) -> AffineSpace<F> {
        let a = self.assemble();
        AffineSpace::solutions(a.labels, &a.matrix, &a.rhs).expect("variables are distinct")
    }

    /// Port behaviour by row-reducing the assembled system with the internal
    /// columns first and keeping the rows free of them.
    pub fn port_behaviour(&self) -> PortBehaviour<F> {
        let a = self.assemble();
        let s = self.internal_edges();
        let internal = 2 * s.len();
        let mut order: Vec<usize> = Vec::with_capacity(a.labels.len());
        order.extend(0..s.len());
        order.extend(s.len() + self.ports.len()..2 * s.len() + self.ports.len());
        order.extend(s.len()..s.len() + self.ports.len());
        order.extend(2 * s.len() + self.ports.len()..a.labels.len());
        let rhs = Matrix::from_rows(1, a.rhs.iter().map(|x| vec![x.clone()]));
        let reduced = a.matrix.select_columns(&order).hstack(&rhs).rref();
        let width = order.len();
        let port_labels = self.port_labels();
        let mut eqs = Vec::new();
        let mut values = Vec::new();
        for (k, &p) in reduced.pivots.iter().enumerate() {
            if p < internal {
                continue;
            }
            if p == width {
                return AffineSpace::void(sorted(port_labels));
            }
            let row = reduced.matrix.row(k);
            eqs.push(row[internal..width].to_vec());
            values.push(row[width].clone());
        }
        let eqs = Matrix::from_rows(port_labels.len(), eqs);
        AffineSpace::solutions(port_labels, &eqs, &values)
            .and_then(|b| b.signflip(&currents(&self.ports)))
            .expect("port labels are distinct")
    }

    /// The same port behaviour read off the solution set directly.
    pub fn port_behaviour_by_restriction(&self) -> PortBehaviour<F> {
        self.solutions()
            .restrict(&self.port_labels())
            .and_then(|b| b.signflip(&currents(&self.ports)))
            .expect("port labels are variables")
    }

    /// Graph spaces `V^v(G1)_S' ⊕ V^i(G2)_S''` on the internal edges.
    fn kirchhoff_part(
        &self,
        voltage_graph: &OrientedGraph,
        current_graph: &OrientedGraph,
    ) -> VectorSpace<F> {
        let vv: VectorSpace<F> = voltage_graph.voltage_space();
        let vi: VectorSpace<F> = current_graph.current_space();
        let vv = vv.relabel(voltage).expect("relabel is injective");
        let vi = vi.relabel(current).expect("relabel is injective");
        vv.direct_sum(&vi).expect("copies are disjoint")
    }

    /// Solvable for every source vector.
    pub fn is_consistent_all_sources(&self) -> bool {
        let open = self.graph.delete(&self.ports).expect("ports are edges");
        let short = self.graph.contract(&self.ports).expect("ports are edges");
        self.kirchhoff_part(&open, &short)
            .sum(&self.device_translate())
            .is_full()
    }

    /// Unique interior solution for each port condition.
    pub fn has_unique_interior(&self) -> bool {
        let open = self.graph.delete(&self.ports).expect("ports are edges");
        let short = self.graph.contract(&self.ports).expect("ports are edges");
        self.kirchhoff_part(&short, &open)
            .intersect(&self.device_translate())
            .is_zero()
    }

    pub fn is_regular(&self) -> bool {
        self.is_consistent_all_sources() && self.has_unique_interior()
    }

    /// Same graph; device is the adjoint of the device translate. Free edges
    /// become nullators.
    pub fn adjoint(&self) -> Self {
        let mut blocks: Vec<DeviceBlock<F>> = self
            .blocks
            .iter()
            .map(|b| {
                let adj = adjoint_space(&b.translate()).expect("block labels pair up");
                DeviceBlock::from_space(
                    b.name(),
                    b.edges().to_vec(),
                    &AffineSpace::from_vector_space(adj),
                )
                .expect("adjoint lives on the block labels")
            })
            .collect();
        for e in self.free_edges() {
            let nullator = DeviceBlock::new(
                format!("null_{e}"),
                vec![e.clone()],
                vec![
                    vec![F::one(), F::zero(), F::zero()],
                    vec![F::zero(), F::one(), F::zero()],
                ],
            )
            .expect("nullator rows are independent");
            blocks.push(nullator);
        }
        Multiport {
            blocks,
            ..self.clone()
        }
    }

    /// Every edge and vertex renamed; labels pick up `tilde`.
    pub fn tilde_copy(&self) -> Self {
        let graph = OrientedGraph::new(
            self.graph.vertices().map(|v| format!("{v}~")),
            self.graph.edges().iter().map(|e| crate::graph::Edge {
                label: e.label.with_tilde(true),
                tail: format!("{}~", e.tail),
                head: format!("{}~", e.head),
            }),
        )
        .expect("renaming keeps the graph valid");
        Multiport {
            graph,
            ports: self.ports.iter().map(|p| p.with_tilde(true)).collect(),
            blocks: self
                .blocks
                .iter()
                .map(|b| b.relabel(format!("{}~", b.name()), |e| e.with_tilde(true)))
                .collect(),
        }
    }

    /// Whether the block rows carry any nonzero source.
    pub fn has_sources(&self) -> bool {
        self.blocks
            .iter()
            .any(|b| b.rhs().iter().any(|x| !x.is_zero()))
    }
}

fn sorted(mut labels: Vec<Label>) -> Vec<Label> {
    labels.sort();
    labels
}

#[cfg(test)]
mod tests;
