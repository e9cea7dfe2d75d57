//! Seeded random instances for property checks and the `verify` command.
//!
//! All generators draw from a `ChaCha8Rng` built by [`seeded`], so a failure
//! reported with its seed reproduces exactly. Entries are small integers in
//! `[-ENTRY, ENTRY]`; in the Gaussian field each entry gets an independent
//! imaginary part from the same range. A random space on `n` labels first
//! draws its number of generators uniformly from `0..=n`, then the
//! generators, so dimensions `0..=n` all occur.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, OrientedGraph};
use crate::label::Label;
use crate::multiport::{DeviceBlock, Multiport};
use crate::scalar::ExactField;
use crate::spaces::{AffineSpace, VectorSpace};

pub const ENTRY: i64 = 5;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_entry<F: ExactField>(rng: &mut impl Rng) -> F {
    let re = F::from_int(rng.gen_range(-ENTRY..=ENTRY));
    match F::imaginary_unit() {
        Some(i) => re + i * F::from_int(rng.gen_range(-ENTRY..=ENTRY)),
        None => re,
    }
}

pub fn random_vector<F: ExactField>(rng: &mut impl Rng, n: usize) -> Vec<F> {
    (0..n).map(|_| random_entry(rng)).collect()
}

pub fn random_space<F: ExactField>(rng: &mut impl Rng, labels: Vec<Label>) -> VectorSpace<F> {
    let n = labels.len();
    let k = rng.gen_range(0..=n);
    let rows: Vec<Vec<F>> = (0..k).map(|_| random_vector(rng, n)).collect();
    VectorSpace::span(labels, rows).expect("generated rows match the labels")
}

/// A nonvoid affine space: random offset plus a random translate.
pub fn random_affine<F: ExactField>(rng: &mut impl Rng, labels: Vec<Label>) -> AffineSpace<F> {
    let offset = random_vector(rng, labels.len());
    let translate = random_space(rng, labels.clone());
    let offset = translate
        .coordinates_from(&offset, &labels)
        .expect("offset matches the labels");
    AffineSpace::from_parts(offset, translate).expect("offset matches the labels")
}

/// `s0..`, `p0..`, `q0..` labels for an `S ⊎ P ⊎ Q` trial.
pub fn split_labels(s: usize, p: usize, q: usize) -> (Vec<Label>, Vec<Label>, Vec<Label>) {
    let make = |prefix: &str, n: usize| {
        (0..n)
            .map(|k| Label::plain(format!("{prefix}{k}")))
            .collect()
    };
    (make("s", s), make("p", p), make("q", q))
}

/// Random `(V_SP, V_PQ)` with `|S|, |Q|` in `0..=max` and `|P|` in `1..=max`.
pub fn random_pair<F: ExactField>(
    rng: &mut impl Rng,
    max: usize,
) -> (VectorSpace<F>, VectorSpace<F>) {
    let (s, p, q) = split_labels(
        rng.gen_range(0..=max),
        rng.gen_range(1..=max.max(1)),
        rng.gen_range(0..=max),
    );
    let sp = s.into_iter().chain(p.iter().cloned()).collect();
    let pq = p.into_iter().chain(q).collect();
    (random_space(rng, sp), random_space(rng, pq))
}

/// Up to `max_vertices` vertices `n0..` and `max_edges` edges `e0..` with
/// uniformly chosen endpoints; self-loops and parallel edges occur.
pub fn random_graph(rng: &mut impl Rng, max_vertices: usize, max_edges: usize) -> OrientedGraph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let m = rng.gen_range(0..=max_edges);
    let vertices: Vec<String> = (0..n).map(|k| format!("n{k}")).collect();
    let edges: Vec<Edge> = (0..m)
        .map(|k| {
            let t = rng.gen_range(0..n);
            let h = rng.gen_range(0..n);
            Edge::new(format!("e{k:02}"), vertices[t].clone(), vertices[h].clone())
        })
        .collect();
    OrientedGraph::new(vertices, edges).expect("generated endpoints exist")
}

/// A connected graph: a random spanning tree of internal edges `r00..`,
/// further internal edges up to `internal` in total, then `ports` port
/// edges `p0..` between distinct vertices. With `port_forest` the ports
/// never close a loop among themselves. Since the internal edges span,
/// no set of ports is a cutset.
pub fn random_network_graph(
    rng: &mut impl Rng,
    internal: usize,
    ports: usize,
    port_forest: bool,
) -> (OrientedGraph, Vec<Label>) {
    let internal = internal.max(1);
    let n = rng.gen_range(2..=internal + 1);
    let names: Vec<String> = (0..n).map(|k| format!("n{k}")).collect();
    let mut edges = Vec::new();
    let oriented = |a: usize, b: usize, rng: &mut dyn rand::RngCore| {
        if rng.gen_bool(0.5) {
            (names[a].clone(), names[b].clone())
        } else {
            (names[b].clone(), names[a].clone())
        }
    };
    for k in 1..n {
        let parent = rng.gen_range(0..k);
        let (t, h) = oriented(parent, k, rng);
        edges.push(Edge::new(format!("r{:02}", edges.len()), t, h));
    }
    while edges.len() < internal {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (t, h) = oriented(a, b, rng);
        edges.push(Edge::new(format!("r{:02}", edges.len()), t, h));
    }
    let mut port_labels = Vec::new();
    let mut component: Vec<usize> = (0..n).collect();
    let mut attempts = 0;
    while port_labels.len() < ports && attempts < 50 {
        attempts += 1;
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            continue;
        }
        if port_forest {
            let (ca, cb) = (component[a], component[b]);
            if ca == cb {
                continue;
            }
            for c in component.iter_mut() {
                if *c == cb {
                    *c = ca;
                }
            }
        }
        let (t, h) = oriented(a, b, rng);
        let label = format!("p{}", port_labels.len());
        edges.push(Edge::new(label.clone(), t, h));
        port_labels.push(Label::plain(label));
    }
    let graph =
        OrientedGraph::new(names.iter().cloned(), edges).expect("generated endpoints exist");
    (graph, port_labels)
}

fn int<F: ExactField>(rng: &mut impl Rng, lo: i64, hi: i64) -> F {
    F::from_int(rng.gen_range(lo..=hi))
}

/// `v - R i = E` on one edge.
pub fn resistor_block<F: ExactField>(edge: &Label, r: F, e: F) -> DeviceBlock<F> {
    DeviceBlock::new(
        format!("d_{edge}"),
        vec![edge.clone()],
        vec![vec![F::one(), -r, e]],
    )
    .expect("one nonzero row")
}

fn network<F: ExactField>(
    graph: OrientedGraph,
    ports: Vec<Label>,
    blocks: Vec<DeviceBlock<F>>,
) -> Multiport<F> {
    Multiport::new(graph, ports, blocks).expect("generated multiport is well formed")
}

/// Every internal edge a resistor `v = R i + E` with `R` in `1..=5` and `E`
/// in `[-ENTRY, ENTRY]`. Such multiports are always regular.
pub fn random_resistor_multiport<F: ExactField>(
    rng: &mut impl Rng,
    max_internal: usize,
    max_ports: usize,
) -> Multiport<F> {
    let internal = rng.gen_range(1..=max_internal.max(1));
    let ports = rng.gen_range(1..=max_ports.max(1));
    let (graph, ports) = random_network_graph(rng, internal, ports, false);
    let blocks = graph
        .labels()
        .iter()
        .filter(|l| !ports.contains(l))
        .map(|l| {
            let r = int(rng, 1, 5);
            let e = int(rng, -ENTRY, ENTRY);
            resistor_block(l, r, e)
        })
        .collect();
    network(graph, ports, blocks)
}

/// Internal edges grouped into blocks of one or two edges, each with a
/// random number of random rows, consistent by construction; about one
/// edge in eight is left unconstrained.
pub fn random_device_multiport<F: ExactField>(
    rng: &mut impl Rng,
    max_internal: usize,
    max_ports: usize,
) -> Multiport<F> {
    let internal = rng.gen_range(1..=max_internal.max(1));
    let ports = rng.gen_range(1..=max_ports.max(1));
    let (graph, ports) = random_network_graph(rng, internal, ports, false);
    let mut rest: Vec<Label> = graph
        .labels()
        .into_iter()
        .filter(|l| !ports.contains(l))
        .collect();
    let mut blocks = Vec::new();
    while !rest.is_empty() {
        let size = if rest.len() >= 2 && rng.gen_bool(0.4) {
            2
        } else {
            1
        };
        let edges: Vec<Label> = rest.drain(..size).collect();
        if size == 1 && rng.gen_bool(0.125) {
            continue;
        }
        let width = 2 * size;
        let point: Vec<F> = random_vector(rng, width);
        let count = rng.gen_range(0..=width);
        let rows = (0..count)
            .map(|_| {
                let mut row: Vec<F> = random_vector(rng, width);
                let s = row
                    .iter()
                    .zip(&point)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
                row.push(s);
                row
            })
            .collect();
        let name = format!("d{}", blocks.len());
        blocks.push(DeviceBlock::new(name, edges, rows).expect("rows are consistent"));
    }
    network(graph, ports, blocks)
}

/// Passive devices with random sources. With `strict` every device is a
/// positive resistor and the ports form neither loops nor cutsets;
/// otherwise blocks mix resistors (`R >= 0`), open circuits, gyrators and
/// coupled positive semidefinite resistor pairs.
pub fn random_passive_multiport<F: ExactField>(
    rng: &mut impl Rng,
    max_internal: usize,
    max_ports: usize,
    strict: bool,
) -> Multiport<F> {
    let internal = rng.gen_range(1..=max_internal.max(1));
    let ports = rng.gen_range(1..=max_ports.max(1));
    let (graph, ports) = random_network_graph(rng, internal, ports, strict);
    let mut rest: Vec<Label> = graph
        .labels()
        .into_iter()
        .filter(|l| !ports.contains(l))
        .collect();
    let mut blocks = Vec::new();
    let source = |rng: &mut dyn rand::RngCore| F::from_int(rng.gen_range(-ENTRY..=ENTRY));
    while !rest.is_empty() {
        let choice = if strict { 0 } else { rng.gen_range(0..4) };
        let name = format!("d{}", blocks.len());
        let block = match choice {
            2 | 3 if rest.len() >= 2 => {
                let edges: Vec<Label> = rest.drain(..2).collect();
                let (e1, e2) = (source(rng), source(rng));
                let rows = if choice == 2 {
                    // v1 = -r i2 + e1, v2 = r i1 + e2
                    let r: F = int(rng, 1, 3);
                    vec![
                        vec![F::one(), F::zero(), F::zero(), r.clone(), e1],
                        vec![F::zero(), F::one(), -r, F::zero(), e2],
                    ]
                } else {
                    // v = [[a, b], [b, c]] i with a, c >= 0 and ac >= b²
                    let a: i64 = rng.gen_range(0..=3);
                    let c: i64 = rng.gen_range(0..=3);
                    let bound = (0..=3).take_while(|b| b * b <= a * c).last().unwrap_or(0);
                    let b: i64 = rng.gen_range(-bound..=bound);
                    let f = F::from_int;
                    vec![
                        vec![f(1), f(0), f(-a), f(-b), e1],
                        vec![f(0), f(1), f(-b), f(-c), e2],
                    ]
                };
                DeviceBlock::new(name, edges, rows).expect("independent rows")
            }
            1 => {
                let e = rest.remove(0);
                DeviceBlock::new(name, vec![e], vec![vec![F::zero(), F::one(), source(rng)]])
                    .expect("one nonzero row")
            }
            _ => {
                let e = rest.remove(0);
                let r = int(rng, if strict { 1 } else { 0 }, 5);
                resistor_block(&e, r, source(rng))
            }
        };
        blocks.push(block);
    }
    network(graph, ports, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{GaussianRational, Rational};

    #[test]
    fn resistor_multiports_are_regular() {
        let mut rng = seeded(2);
        for _ in 0..20 {
            let m = random_resistor_multiport::<Rational>(&mut rng, 6, 3);
            assert!(m.is_regular());
            assert!(!m.ports().is_empty());
        }
    }

    #[test]
    fn strict_fixtures_have_port_forests() {
        let mut rng = seeded(9);
        for _ in 0..20 {
            let m = random_passive_multiport::<Rational>(&mut rng, 6, 3, true);
            let ports_only = m.graph().delete(&m.internal_edges()).unwrap();
            assert_eq!(ports_only.forest().len(), m.ports().len());
            let open = m.graph().delete(m.ports()).unwrap();
            assert_eq!(open.component_count(), 1);
        }
    }

    #[test]
    fn same_seed_same_space() {
        let (s, _, _) = split_labels(4, 0, 0);
        let a = random_space::<Rational>(&mut seeded(11), s.clone());
        let b = random_space::<Rational>(&mut seeded(11), s);
        assert_eq!(a, b);
    }

    #[test]
    fn all_dimensions_occur() {
        let (s, _, _) = split_labels(3, 0, 0);
        let mut rng = seeded(1);
        let mut seen = [false; 4];
        for _ in 0..200 {
            seen[random_space::<Rational>(&mut rng, s.clone()).dim()] = true;
        }
        assert!(seen.iter().all(|&x| x));
    }

    #[test]
    fn gaussian_entries_are_complex() {
        let mut rng = seeded(3);
        let v: Vec<GaussianRational> = random_vector(&mut rng, 50);
        assert!(v.iter().any(|z| !z.is_real()));
        let r: Vec<Rational> = random_vector(&mut rng, 50);
        assert!(r.iter().all(|x| x.is_real()));
    }

    #[test]
    fn pair_shares_exactly_p() {
        let mut rng = seeded(5);
        for _ in 0..20 {
            let (a, b) = random_pair::<Rational>(&mut rng, 3);
            let shared = a
                .labels()
                .iter()
                .filter(|l| b.position(l).is_some())
                .count();
            assert!(shared >= 1);
            assert!(
                a.labels()
                    .iter()
                    .filter(|l| l.base.starts_with('p'))
                    .count()
                    == shared
            );
        }
    }
}
