//! Coupling devices, termination of a multiport by another, the
//! Thevenin-Norton algorithm through an adjoint and a gyrator, and maximum
//! power transfer through an adjoint and an ideal transformer.

use std::collections::BTreeSet;

use num_traits::Signed;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::{Matrix, SolveReport};
use crate::multiport::{
    current, currents, is_passive, is_strictly_passive, voltage, voltages, DeviceBlock, Multiport,
    PortBehaviour,
};
use crate::scalar::{inner, ExactField, FieldMode};
use crate::spaces::{AffineSpace, VectorSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CouplingKind {
    Gyrator,
    IdealTransformerLink,
    /// Gyrator with a unit source on the voltage row of port `t`.
    PerturbedGyratorV(usize),
    /// Gyrator with a unit source on the current row of port `t`.
    PerturbedGyratorI(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perturbation {
    Voltage,
    Current,
}

/// A device joining ports `P` to their copies `P~`.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingSpace<F: ExactField> {
    kind: CouplingKind,
    ports: Vec<Label>,
    copies: Vec<Label>,
    block: DeviceBlock<F>,
}

impl<F: ExactField> CouplingSpace<F> {
    pub fn kind(&self) -> &CouplingKind {
        &self.kind
    }

    pub fn ports(&self) -> &[Label] {
        &self.ports
    }

    pub fn copies(&self) -> &[Label] {
        &self.copies
    }

    pub fn block(&self) -> &DeviceBlock<F> {
        &self.block
    }

    /// The realized space on `P' ⊎ P'' ⊎ P~' ⊎ P~''`.
    pub fn space(&self) -> AffineSpace<F> {
        self.block.space()
    }
}

fn check_copies(ports: &[Label], copies: &[Label]) -> Result<()> {
    if ports.len() != copies.len() {
        return Err(Error::Coupling(format!(
            "{} ports against {} copies",
            ports.len(),
            copies.len()
        )));
    }
    let mut seen = BTreeSet::new();
    for l in ports.iter().chain(copies) {
        if !seen.insert(l.edge()) {
            return Err(Error::Coupling(format!("edge `{l}` appears twice")));
        }
    }
    Ok(())
}

/// Rows over `(v_P, v_P~, i_P, i_P~ | s)`.
fn coupling_block<F: ExactField>(
    name: &str,
    ports: &[Label],
    copies: &[Label],
    rows: Vec<Vec<F>>,
) -> DeviceBlock<F> {
    let edges: Vec<Label> = ports.iter().chain(copies).cloned().collect();
    DeviceBlock::new(name, edges, rows).expect("coupling rows are independent")
}

/// Gyrator rows `v_p + r i_p~ = 0`, `v_p~ - r i_p = 0`.
fn gyrator_rows<F: ExactField>(r: &[F]) -> Vec<Vec<F>> {
    let n = r.len();
    let width = 4 * n + 1;
    let mut rows = Vec::with_capacity(2 * n);
    for (k, rk) in r.iter().enumerate() {
        let mut row = vec![F::zero(); width];
        row[k] = F::one();
        row[3 * n + k] = rk.clone();
        rows.push(row);
    }
    for (k, rk) in r.iter().enumerate() {
        let mut row = vec![F::zero(); width];
        row[n + k] = F::one();
        row[2 * n + k] = -rk.clone();
        rows.push(row);
    }
    rows
}

/// `v_P' = -R i_P~''`, `v_P~' = R i_P''` with `R = diag(r)`, every `r_k > 0`.
pub fn make_gyrator<F: ExactField>(
    ports: &[Label],
    copies: &[Label],
    r: &[F],
) -> Result<CouplingSpace<F>> {
    check_copies(ports, copies)?;
    if r.len() != ports.len() {
        return Err(Error::Coupling(format!(
            "{} resistances for {} ports",
            r.len(),
            ports.len()
        )));
    }
    if let Some(bad) = r
        .iter()
        .find(|x| !x.is_real() || !x.real_part().is_positive())
    {
        return Err(Error::Coupling(format!(
            "gyration resistance {} is not positive",
            bad.to_literal()
        )));
    }
    Ok(CouplingSpace {
        kind: CouplingKind::Gyrator,
        ports: ports.to_vec(),
        copies: copies.to_vec(),
        block: coupling_block("gyrator", ports, copies, gyrator_rows(r)),
    })
}

/// `v_p~' = v_p'`, `i_p~'' = -i_p''`.
pub fn make_transformer_link<F: ExactField>(
    ports: &[Label],
    copies: &[Label],
) -> Result<CouplingSpace<F>> {
    check_copies(ports, copies)?;
    let n = ports.len();
    let width = 4 * n + 1;
    let mut rows = Vec::with_capacity(2 * n);
    for k in 0..n {
        let mut row = vec![F::zero(); width];
        row[n + k] = F::one();
        row[k] = -F::one();
        rows.push(row);
    }
    for k in 0..n {
        let mut row = vec![F::zero(); width];
        row[3 * n + k] = F::one();
        row[2 * n + k] = F::one();
        rows.push(row);
    }
    Ok(CouplingSpace {
        kind: CouplingKind::IdealTransformerLink,
        ports: ports.to_vec(),
        copies: copies.to_vec(),
        block: coupling_block("link", ports, copies, rows),
    })
}

/// Unit gyrator with `v_t' + 1 = -i_t~''` or `i_t'' + 1 = v_t~'`.
pub fn make_perturbed<F: ExactField>(
    ports: &[Label],
    copies: &[Label],
    t: usize,
    which: Perturbation,
) -> Result<CouplingSpace<F>> {
    check_copies(ports, copies)?;
    let n = ports.len();
    if t >= n {
        return Err(Error::Coupling(format!("port index {t} out of {n}")));
    }
    let mut rows = gyrator_rows(&vec![F::one(); n]);
    let (row, value, kind) = match which {
        Perturbation::Voltage => (t, -F::one(), CouplingKind::PerturbedGyratorV(t)),
        Perturbation::Current => (n + t, F::one(), CouplingKind::PerturbedGyratorI(t)),
    };
    rows[row][4 * n] = value;
    Ok(CouplingSpace {
        kind,
        ports: ports.to_vec(),
        copies: copies.to_vec(),
        block: coupling_block("gyrator", ports, copies, rows),
    })
}

/// `n` and `m` on disjoint graphs, their ports joined by `k`.
pub fn terminate<F: ExactField>(
    n: &Multiport<F>,
    m: &Multiport<F>,
    k: &CouplingSpace<F>,
) -> Result<Multiport<F>> {
    let left: BTreeSet<Label> = n.graph().labels().into_iter().collect();
    if let Some(e) = m.graph().labels().into_iter().find(|e| left.contains(e)) {
        return Err(Error::LabelCollision(e));
    }
    let left_vertices: BTreeSet<&str> = n.graph().vertices().collect();
    if let Some(v) = m.graph().vertices().find(|v| left_vertices.contains(v)) {
        return Err(Error::LabelCollision(Label::plain(v)));
    }
    let same = |a: &[Label], b: &[Label]| {
        let a: BTreeSet<&Label> = a.iter().collect();
        let b: BTreeSet<&Label> = b.iter().collect();
        a == b
    };
    if !same(k.ports(), n.ports()) || !same(k.copies(), m.ports()) {
        return Err(Error::Coupling(
            "coupling ports differ from the multiports' ports".into(),
        ));
    }
    let graph = n.graph().disjoint_union(m.graph())?;
    let mut blocks: Vec<DeviceBlock<F>> = n.blocks().to_vec();
    blocks.extend(m.blocks().iter().cloned());
    if !k.ports().is_empty() {
        blocks.push(k.block().clone());
    }
    Multiport::new(graph, Vec::new(), blocks)
}

/// `N_P` with its adjoint on tilde labels.
fn with_adjoint_copy<F: ExactField>(n: &Multiport<F>) -> (Multiport<F>, Vec<Label>) {
    let adjoint = n.adjoint().tilde_copy();
    let copies = n.ports().iter().map(|p| p.with_tilde(true)).collect();
    (adjoint, copies)
}

fn solve<F: ExactField>(network: &Multiport<F>) -> (Vec<Label>, SolveReport<F>) {
    let a = network.assemble();
    let report = a.matrix.solve_classified(&a.rhs);
    (a.labels, report)
}

/// `(v_P', -i_P'')` read off a full solution.
fn port_vector<F: ExactField>(labels: &[Label], x: &[F], ports: &[Label]) -> Vec<F> {
    let at = |l: &Label| x[labels.iter().position(|y| y == l).expect("port variable")].clone();
    let mut out: Vec<F> = ports.iter().map(|p| at(&voltage(p))).collect();
    out.extend(ports.iter().map(|p| -at(&current(p))));
    out
}

fn port_order(ports: &[Label]) -> Vec<Label> {
    let mut l = voltages(ports);
    l.extend(currents(ports));
    l
}

/// `N_large = [N_P ⊕ N~^adj] ∩ g`, the network whose unique solvability
/// decides regularity.
pub fn gyrator_termination<F: ExactField>(n: &Multiport<F>) -> Result<Multiport<F>> {
    let (adjoint, copies) = with_adjoint_copy(n);
    let g = make_gyrator(n.ports(), &copies, &vec![F::one(); n.ports().len()])?;
    terminate(n, &adjoint, &g)
}

/// Port behaviour from `1 + 2|P|` solves of gyrator terminations by the
/// adjoint. Fails with `NotRegular` when the first solve is not unique.
pub fn thevenin_norton<F: ExactField>(n: &Multiport<F>) -> Result<PortBehaviour<F>> {
    let ports = n.ports().to_vec();
    let order = port_order(&ports);
    let large = gyrator_termination(n)?;
    let (labels, report) = solve(&large);
    let particular = match report {
        SolveReport::Unique(x) => port_vector(&labels, &x, &ports),
        other => return Err(Error::NotRegular(other.kind())),
    };

    let hom = n.homogeneous();
    let (adjoint, copies) = with_adjoint_copy(n);
    let probes: Vec<(usize, Perturbation)> = (0..ports.len())
        .flat_map(|t| [(t, Perturbation::Voltage), (t, Perturbation::Current)])
        .collect();
    let generators: Vec<Vec<F>> = probes
        .par_iter()
        .map(|&(t, which)| {
            let g = make_perturbed(&ports, &copies, t, which)?;
            let network = terminate(&hom, &adjoint, &g)?;
            match solve(&network) {
                (labels, SolveReport::Unique(x)) => Ok(port_vector(&labels, &x, &ports)),
                (_, other) => Err(Error::Internal(format!(
                    "perturbed termination at port `{}` has {}",
                    ports[t],
                    other.kind()
                ))),
            }
        })
        .collect::<Result<_>>()?;

    let translate = VectorSpace::span(order.clone(), generators)?;
    let offset = translate.coordinates_from(&particular, &order)?;
    AffineSpace::from_parts(offset, translate)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    NoStationaryPoint,
    Stationary,
    MaxUnderPassivity,
    UniqueMaxUnderStrictPassivity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StationarityResult<F: ExactField> {
    /// Multipliers, one per behaviour equation; absent on the termination path.
    pub lambda: Option<Vec<F>>,
    pub ports: Vec<Label>,
    /// Port voltages then sign-flipped port currents; absent when no
    /// stationary point exists.
    pub port_vector: Option<Vec<F>>,
    pub classification: Classification,
}

impl<F: ExactField> StationarityResult<F> {
    fn none(ports: Vec<Label>) -> Self {
        StationarityResult {
            lambda: None,
            ports,
            port_vector: None,
            classification: Classification::NoStationaryPoint,
        }
    }

    pub fn voltages(&self) -> Option<&[F]> {
        self.port_vector.as_deref().map(|x| &x[..self.ports.len()])
    }

    pub fn currents(&self) -> Option<&[F]> {
        self.port_vector.as_deref().map(|x| &x[self.ports.len()..])
    }

    pub fn delivered_power(&self) -> Option<F> {
        Some(delivered_power(self.voltages()?, self.currents()?))
    }
}

/// Edges of a behaviour's labels, paired as `e'`, `e''`.
fn behaviour_ports(labels: &[Label]) -> Result<Vec<Label>> {
    crate::multiport::edge_pairs(labels)
}

/// Stationary points of the absorbed power on the behaviour
/// `B v - Q i = s`, rows in reduced echelon form over `(v, i)`: solve `(-B Q* - Q B*) λ = s`, then `v = -Q* λ`, `i = B* λ`.
pub fn stationarity_solve<F: ExactField>(
    behaviour: &PortBehaviour<F>,
) -> Result<StationarityResult<F>> {
    let ports = behaviour_ports(behaviour.labels())?;
    let order = port_order(&ports);
    let Some((eqs, s)) = behaviour.equations() else {
        return Err(Error::Void);
    };
    let cols: Vec<usize> = order
        .iter()
        .map(|l| behaviour.translate().position(l).expect("paired labels"))
        .collect();
    let n = ports.len();
    let rhs = Matrix::from_rows(1, s.into_iter().map(|x| vec![x]));
    let reduced = eqs.select_columns(&cols).hstack(&rhs).rref().basis();
    let s = reduced.column(2 * n);
    let b = reduced.select_columns(&(0..n).collect::<Vec<_>>());
    let minus_q = reduced.select_columns(&(n..2 * n).collect::<Vec<_>>());
    // -B Q* - Q B* with -Q held as minus_q
    let system = b
        .mul(&minus_q.conj_transpose())
        .add(&minus_q.mul(&b.conj_transpose()));
    let lambda = match system.solve_classified(&s) {
        SolveReport::None => return Ok(StationarityResult::none(ports)),
        report => report.particular().expect("solvable").to_vec(),
    };
    let mut x = minus_q.conj_transpose().mul_vec(&lambda);
    x.extend(b.conj_transpose().mul_vec(&lambda));
    let translate = behaviour.translate();
    let classification = if is_strictly_passive(translate)? {
        Classification::UniqueMaxUnderStrictPassivity
    } else if is_passive(translate)? {
        Classification::MaxUnderPassivity
    } else {
        Classification::Stationary
    };
    Ok(StationarityResult {
        lambda: Some(lambda),
        ports,
        port_vector: Some(x),
        classification,
    })
}

/// `[N_P ⊕ N~^adj] ∩ T` with the unit ideal transformer link.
pub fn transformer_termination<F: ExactField>(n: &Multiport<F>) -> Result<Multiport<F>> {
    let (adjoint, copies) = with_adjoint_copy(n);
    let t = make_transformer_link(n.ports(), &copies)?;
    terminate(n, &adjoint, &t)
}

/// Sign-flipped port restrictions of every solution of the transformer
/// termination.
pub fn stationary_set<F: ExactField>(n: &Multiport<F>) -> Result<PortBehaviour<F>> {
    let network = transformer_termination(n)?;
    network
        .solutions()
        .restrict(&n.port_labels())?
        .signflip(&currents(n.ports()))
}

/// No loop of port edges and no cutset of port edges.
pub fn ports_free_of_loops_and_cutsets<F: ExactField>(n: &Multiport<F>) -> bool {
    let incidence: Matrix<F> = n.graph().incidence();
    let labels = n.graph().labels();
    let columns = |edges: &[Label]| -> Vec<usize> {
        edges
            .iter()
            .map(|e| {
                labels
                    .iter()
                    .position(|l| l == e)
                    .expect("edge of the graph")
            })
            .collect()
    };
    let ports = n.ports();
    let internal = n.internal_edges();
    incidence.select_columns(&columns(ports)).rank() == ports.len()
        && incidence.select_columns(&columns(&internal)).rank() == incidence.rank()
}

/// A stationary port vector taken from the transformer termination.
pub fn maxpower_via_adjoint<F: ExactField>(n: &Multiport<F>) -> Result<StationarityResult<F>> {
    let ports = n.ports().to_vec();
    let network = transformer_termination(n)?;
    let (labels, report) = solve(&network);
    let Some(x) = report.particular() else {
        return Ok(StationarityResult::none(ports));
    };
    let device = n.device_translate();
    let classification = if is_strictly_passive(&device)? && ports_free_of_loops_and_cutsets(n) {
        Classification::UniqueMaxUnderStrictPassivity
    } else if is_passive(&device)? {
        Classification::MaxUnderPassivity
    } else {
        Classification::Stationary
    };
    Ok(StationarityResult {
        lambda: None,
        port_vector: Some(port_vector(&labels, x, &ports)),
        ports,
        classification,
    })
}

/// `v^T i` over Q, `v* i + i* v` over Q(i).
pub fn absorbed_power<F: ExactField>(v: &[F], i: &[F]) -> F {
    assert_eq!(
        v.len(),
        i.len(),
        "voltage and current vectors differ in length"
    );
    match F::MODE {
        FieldMode::Rational => inner(v, i),
        FieldMode::Gaussian => inner(v, i) + inner(i, v),
    }
}

pub fn delivered_power<F: ExactField>(v: &[F], i: &[F]) -> F {
    -absorbed_power(v, i)
}
