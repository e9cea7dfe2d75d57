use proptest::prelude::*;

use num_traits::Zero;

use super::*;
use crate::generate::{
    random_device_multiport, random_passive_multiport, random_resistor_multiport, seeded,
};
use crate::graph::Edge;
use crate::scalar::{GaussianRational, Rational};

type M = Multiport<Rational>;
type V = VectorSpace<Rational>;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn l(name: &str) -> Label {
    Label::plain(name)
}

fn graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> OrientedGraph {
    OrientedGraph::new(
        vertices.iter().copied(),
        edges.iter().map(|&(e, t, h)| Edge::new(e, t, h)),
    )
    .unwrap()
}

fn block(name: &str, edges: &[&str], rows: &[&[i64]]) -> DeviceBlock<Rational> {
    DeviceBlock::new(
        name,
        edges.iter().map(|e| l(e)).collect(),
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect(),
    )
    .unwrap()
}

/// Source 4 in series with resistor 2 behind port `p1`.
fn thevenin() -> M {
    M::new(
        graph(
            &["n0", "n1", "n2"],
            &[("e1", "n0", "n1"), ("e2", "n1", "n2"), ("p1", "n0", "n2")],
        ),
        vec![l("p1")],
        vec![block(
            "d1",
            &["e1", "e2"],
            &[&[1, 0, 0, 0, 4], &[0, 1, 0, -2, 0]],
        )],
    )
    .unwrap()
}

fn port_space(eqs: &[&[i64]], rhs: &[i64], ports: &[&str]) -> AffineSpace<Rational> {
    let edges: Vec<Label> = ports.iter().map(|p| l(p)).collect();
    let mut labels = voltages(&edges);
    labels.extend(currents(&edges));
    AffineSpace::solutions(
        labels,
        &Matrix::from_i64(eqs),
        &rhs.iter().map(|&x| q(x)).collect::<Vec<_>>(),
    )
    .unwrap()
}

fn pair_space(edges: &[&str], rows: &[&[i64]]) -> V {
    block(
        "x",
        edges,
        &rows
            .iter()
            .map(|r| {
                let mut r = r.to_vec();
                r.push(0);
                r
            })
            .collect::<Vec<_>>()
            .iter()
            .map(|r| r.as_slice())
            .collect::<Vec<_>>(),
    )
    .translate()
}

#[test]
fn block_normalization() {
    let b = block("d", &["e"], &[&[1, -2, 3], &[2, -4, 6]]);
    assert_eq!(b.coefficients().rows(), 1);
    let err = DeviceBlock::<Rational>::new(
        "d",
        vec![l("e")],
        vec![vec![q(1), q(0), q(1)], vec![q(1), q(0), q(2)]],
    );
    assert!(matches!(err, Err(Error::Device(..))));
    let err = DeviceBlock::<Rational>::new("d", vec![l("e")], vec![vec![q(1), q(0)]]);
    assert!(matches!(err, Err(Error::Device(..))));
    let err = DeviceBlock::<Rational>::new("d", vec![l("e"), l("e")], vec![]);
    assert!(matches!(err, Err(Error::Device(..))));
    let b = block("d", &["e"], &[&[0, 0, 0]]);
    assert_eq!(b.coefficients().rows(), 0);
    assert!(b.translate().is_full());
}

#[test]
fn block_from_space_round_trip() {
    let b = block("d", &["a", "b"], &[&[1, 2, 0, -1, 3], &[0, 1, 1, 0, -2]]);
    let c = DeviceBlock::from_space("d", b.edges().to_vec(), &b.space()).unwrap();
    assert_eq!(c.space(), b.space());
}

#[test]
fn construction_errors() {
    let g = graph(&["a", "b"], &[("e", "a", "b"), ("p", "a", "b")]);
    assert!(matches!(
        M::new(g.clone(), vec![l("x")], vec![]),
        Err(Error::UnknownEdge(_))
    ));
    assert!(matches!(
        M::new(
            g.clone(),
            vec![l("p")],
            vec![block("d", &["p"], &[&[1, 0, 0]])]
        ),
        Err(Error::Device(..))
    ));
    assert!(matches!(
        M::new(
            g.clone(),
            vec![l("p")],
            vec![block("d", &["z"], &[&[1, 0, 0]])]
        ),
        Err(Error::UnknownEdge(_))
    ));
    assert!(matches!(
        M::new(
            g,
            vec![l("p")],
            vec![
                block("d", &["e"], &[&[1, 0, 0]]),
                block("d2", &["e"], &[&[0, 1, 0]])
            ]
        ),
        Err(Error::Device(..))
    ));
}

#[test]
fn assembly_shapes() {
    let a = thevenin().assemble();
    assert_eq!((a.matrix.rows(), a.matrix.cols()), (5, 6));
    assert_eq!(a.rhs.iter().filter(|x| !x.is_zero()).count(), 1);

    let lone = M::new(
        graph(&["a"], &[("r", "a", "a")]),
        vec![],
        vec![block("d", &["r"], &[&[1, -3, 0]])],
    )
    .unwrap();
    let a = lone.assemble();
    assert_eq!((a.matrix.rows(), a.matrix.cols()), (2, 2));

    let bare = M::new(
        graph(&["a", "b"], &[("e", "a", "b"), ("f", "a", "b")]),
        vec![],
        vec![],
    )
    .unwrap();
    let a = bare.assemble();
    // one loop row, one cut row, no device rows
    assert_eq!((a.matrix.rows(), a.matrix.cols()), (2, 4));
    assert!(a.rhs.iter().all(Zero::is_zero));
}

#[test]
fn thevenin_behaviour() {
    let n = thevenin();
    let expected = port_space(&[&[1, -2]], &[4], &["p1"]);
    assert_eq!(n.port_behaviour(), expected);
    assert_eq!(n.port_behaviour_by_restriction(), expected);
    // open circuit voltage 4, short circuit current -2 in flipped coordinates
    let b = n.port_behaviour();
    assert!(b.contains(&[q(4), q(0)]).unwrap());
    assert!(b.contains(&[q(0), q(-2)]).unwrap());
}

#[test]
fn resistor_and_short_behaviours() {
    let parallel = M::new(
        graph(&["a", "b"], &[("p", "a", "b"), ("r", "a", "b")]),
        vec![l("p")],
        vec![block("d", &["r"], &[&[1, -3, 0]])],
    )
    .unwrap();
    assert_eq!(
        parallel.port_behaviour(),
        port_space(&[&[1, -3]], &[0], &["p"])
    );

    let short = M::new(
        graph(&["a", "b"], &[("p", "a", "b"), ("s", "a", "b")]),
        vec![l("p")],
        vec![block("d", &["s"], &[&[1, 0, 0]])],
    )
    .unwrap();
    assert_eq!(short.port_behaviour(), port_space(&[&[1, 0]], &[0], &["p"]));
}

#[test]
fn void_behaviour() {
    // two parallel sources with different values
    let clash = M::new(
        graph(
            &["a", "b"],
            &[("p", "a", "b"), ("s1", "a", "b"), ("s2", "a", "b")],
        ),
        vec![l("p")],
        vec![
            block("d1", &["s1"], &[&[1, 0, 1]]),
            block("d2", &["s2"], &[&[1, 0, 2]]),
        ],
    )
    .unwrap();
    assert!(clash.port_behaviour().is_void());
    assert!(clash.port_behaviour_by_restriction().is_void());
}

#[test]
fn regularity_examples() {
    let n = thevenin();
    assert!(n.is_consistent_all_sources());
    assert!(n.has_unique_interior());
    assert!(n.is_regular());

    // nullator e parallel to resistor r, port hanging off one end
    let nullator = M::new(
        graph(
            &["a", "b", "c"],
            &[("e", "a", "b"), ("r", "a", "b"), ("p", "b", "c")],
        ),
        vec![l("p")],
        vec![
            block("d1", &["e"], &[&[1, 0, 0], &[0, 1, 0]]),
            block("d2", &["r"], &[&[1, -2, 0]]),
        ],
    )
    .unwrap();
    assert!(!nullator.is_consistent_all_sources());

    let bare = M::new(
        graph(&["a", "b"], &[("e", "a", "b"), ("p", "a", "b")]),
        vec![l("p")],
        vec![],
    )
    .unwrap();
    assert!(bare.is_consistent_all_sources());

    // norator e parallel to a short s: free circulating current
    let norator = M::new(
        graph(
            &["a", "b"],
            &[("e", "a", "b"), ("s", "a", "b"), ("p", "a", "b")],
        ),
        vec![l("p")],
        vec![block("d", &["s"], &[&[1, 0, 0]])],
    )
    .unwrap();
    assert!(!norator.has_unique_interior());

    let ports_only = M::new(graph(&["a", "b"], &[("p", "a", "b")]), vec![l("p")], vec![]).unwrap();
    assert!(ports_only.has_unique_interior());
    assert!(ports_only.is_regular());
}

#[test]
fn rank_sum_needs_proper_device() {
    // norator parallel to the port: regular, yet r(V) + r(V̆) = 4 while |S| + |P| = 2
    let n = M::new(
        graph(&["a", "b"], &[("e", "a", "b"), ("p", "a", "b")]),
        vec![l("p")],
        vec![],
    )
    .unwrap();
    assert!(n.is_regular());
    assert_eq!(n.device_translate().dim(), 2);
    assert_eq!(behaviour_translate(&n).dim(), 2);
    assert_eq!(
        n.device_translate().dual().dim() + behaviour_translate(&n).dim(),
        2
    );
}

#[test]
fn adjoint_space_examples() {
    // v = R i with R symmetric
    let r = pair_space(&["a", "b"], &[&[1, 0, -2, -1], &[0, 1, -1, -3]]);
    assert!(is_reciprocal(&r).unwrap());
    assert_eq!(adjoint_space(&r).unwrap(), r);
    assert_eq!(adjoint_space(&adjoint_space(&r).unwrap()).unwrap(), r);

    // v = K i, K not symmetric: adjoint is v = Kᵀ i
    let k = pair_space(&["a", "b"], &[&[1, 0, -1, -2], &[0, 1, -3, -4]]);
    let kt = pair_space(&["a", "b"], &[&[1, 0, -1, -3], &[0, 1, -2, -4]]);
    assert_eq!(adjoint_space(&k).unwrap(), kt);
    assert!(!is_reciprocal(&k).unwrap());

    // Dirac dual of v = R i is v = -Rᵀ i
    let neg_kt = pair_space(&["a", "b"], &[&[1, 0, 1, 3], &[0, 1, 2, 4]]);
    assert_eq!(dirac_dual(&k).unwrap(), neg_kt);
    assert_eq!(dirac_dual(&dirac_dual(&k).unwrap()).unwrap(), k);
    assert_eq!(ortho_dual(&k).unwrap(), k.perp());

    let bad = V::full(vec![l("a")]).unwrap();
    assert!(matches!(
        adjoint_space(&bad),
        Err(Error::MalformedPairing(_))
    ));
    let half = V::full(vec![voltage(&l("a"))]).unwrap();
    assert!(matches!(dirac_dual(&half), Err(Error::MalformedPairing(_))));
}

#[test]
fn hybrid_adjoint_blocks() {
    // v_a = r i_a + h12 v_b, i_b = h21 i_a + g v_b; columns (v_a, v_b, i_a, i_b)
    let (r, h12, h21, g) = (2, 3, 5, 7);
    let hybrid = pair_space(&["a", "b"], &[&[1, -h12, -r, 0], &[0, -g, -h21, 1]]);
    let adjoint = pair_space(&["a", "b"], &[&[1, h21, -r, 0], &[0, -g, h12, 1]]);
    assert_eq!(adjoint_space(&hybrid).unwrap(), adjoint);
}

#[test]
fn characteristic_predicates() {
    // diag(1, 2) resistor
    let r = pair_space(&["a", "b"], &[&[1, 0, -1, 0], &[0, 1, 0, -2]]);
    assert!(is_passive(&r).unwrap());
    assert!(is_strictly_passive(&r).unwrap());
    assert!(is_reciprocal(&r).unwrap());
    assert!(!is_dirac(&r).unwrap());

    // gyrator v_a = -2 i_b, v_b = 2 i_a
    let gy = pair_space(&["a", "b"], &[&[1, 0, 0, 2], &[0, 1, -2, 0]]);
    assert!(is_dirac(&gy).unwrap());
    assert!(is_passive(&gy).unwrap());
    assert!(!is_strictly_passive(&gy).unwrap());
    assert!(gram_matrix(&gy).unwrap().is_zero());

    // ideal transformer v_b = 3 v_a, i_a = -3 i_b
    let it = pair_space(&["a", "b"], &[&[3, -1, 0, 0], &[0, 0, 1, 3]]);
    assert!(is_ideal_transformer(&it).unwrap());
    assert!(is_reciprocal(&it).unwrap());
    assert!(gram_matrix(&it).unwrap().is_zero());
    assert!(!is_ideal_transformer(&r).unwrap());

    // negative resistor
    let neg = pair_space(&["a"], &[&[1, 1]]);
    assert!(!is_passive(&neg).unwrap());

    let proper = AffineSpace::from_vector_space(r.clone());
    assert!(is_proper(&proper).unwrap());
    assert!(!is_proper(&AffineSpace::from_vector_space(
        V::full(r.labels().to_vec()).unwrap()
    ))
    .unwrap());
}

#[test]
fn gaussian_adjoint_uses_conjugation() {
    let z = |re: i64, im: i64| GaussianRational::new(q(re), q(im));
    // v = (2 + i) i: adjoint is v = (2 - i) i
    let labels = vec![voltage(&l("a")), current(&l("a"))];
    let v = VectorSpace::span(labels.clone(), [vec![z(2, 1), z(1, 0)]]).unwrap();
    let adj = VectorSpace::span(labels, [vec![z(2, -1), z(1, 0)]]).unwrap();
    assert_eq!(adjoint_space(&v).unwrap(), adj);
    assert!(!is_reciprocal(&v).unwrap());
    assert!(is_strictly_passive(&v).unwrap());
}

#[test]
fn adjoint_multiport_examples() {
    let n = thevenin();
    let adj = n.adjoint();
    assert!(!adj.has_sources());
    assert_eq!(adj.device_translate(), n.homogeneous().device_translate());
    assert_eq!(adj.port_behaviour(), port_space(&[&[1, -2]], &[0], &["p1"]));
    assert_eq!(adj.adjoint().device_translate(), n.device_translate());
    assert!(adj.is_regular());

    // free edges become nullators and back
    let bare = M::new(
        graph(&["a", "b"], &[("e", "a", "b"), ("p", "a", "b")]),
        vec![l("p")],
        vec![],
    )
    .unwrap();
    let adj = bare.adjoint();
    assert!(adj.free_edges().is_empty());
    assert!(adj.device_translate().is_zero());
    assert!(adj.adjoint().device_translate().is_full());
}

#[test]
fn tilde_copy_is_disjoint() {
    let n = thevenin();
    let t = n.tilde_copy();
    assert!(t.ports()[0].tilde);
    assert!(n.graph().disjoint_union(t.graph()).is_ok());
    let back = t.port_behaviour().relabel(|x| x.with_tilde(false)).unwrap();
    assert_eq!(back, n.port_behaviour());
}

fn behaviour_translate(n: &M) -> V {
    n.homogeneous().port_behaviour().translate().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn elimination_matches_restriction(seed in any::<u64>()) {
        let n = random_device_multiport::<Rational>(&mut seeded(seed), 5, 2);
        prop_assert_eq!(n.port_behaviour(), n.port_behaviour_by_restriction());
    }

    #[test]
    fn adjoint_devices_give_adjoint_behaviours(seed in any::<u64>()) {
        let n = random_device_multiport::<Rational>(&mut seeded(seed), 5, 2);
        let adj = n.adjoint();
        prop_assert_eq!(behaviour_translate(&adj), adjoint_space(&behaviour_translate(&n)).unwrap());
        prop_assert_eq!(n.is_regular(), adj.is_regular());
        if !n.port_behaviour().is_void() {
            prop_assert_eq!(n.port_behaviour().translate().clone(), behaviour_translate(&n));
        }
    }

    #[test]
    fn dirac_devices_give_dirac_behaviours(seed in any::<u64>()) {
        let n = random_device_multiport::<Rational>(&mut seeded(seed), 5, 2);
        let dual_blocks: Vec<DeviceBlock<Rational>> = n
            .blocks()
            .iter()
            .map(|b| {
                let d = dirac_dual(&b.translate()).unwrap();
                DeviceBlock::from_space(b.name(), b.edges().to_vec(), &AffineSpace::from_vector_space(d)).unwrap()
            })
            .chain(n.free_edges().into_iter().map(|e| {
                DeviceBlock::new(format!("null_{e}"), vec![e], vec![
                    vec![q(1), q(0), q(0)],
                    vec![q(0), q(1), q(0)],
                ]).unwrap()
            }))
            .collect();
        let dual = M::new(n.graph().clone(), n.ports().to_vec(), dual_blocks).unwrap();
        prop_assert_eq!(behaviour_translate(&dual), dirac_dual(&behaviour_translate(&n)).unwrap());
    }

    #[test]
    fn regular_rank_identity(seed in any::<u64>()) {
        let n = random_device_multiport::<Rational>(&mut seeded(seed), 6, 3);
        if n.is_regular() {
            let s = n.internal_edges().len();
            let device = n.device_translate();
            let behaviour = behaviour_translate(&n);
            prop_assert_eq!(device.dual().dim() + behaviour.dim(), s + n.ports().len());
            if device.dim() == s {
                prop_assert_eq!(device.dim() + behaviour.dim(), s + n.ports().len());
                prop_assert!(is_proper(&n.port_behaviour()).unwrap());
            }
            prop_assert!(!n.port_behaviour().is_void());
        }
    }

    #[test]
    fn reciprocal_devices(seed in any::<u64>()) {
        let n = random_resistor_multiport::<Rational>(&mut seeded(seed), 6, 3);
        let b = behaviour_translate(&n);
        prop_assert!(is_reciprocal(&b).unwrap());
        prop_assert_eq!(b.dim(), n.ports().len());
        prop_assert!(is_strictly_passive(&n.device_translate()).unwrap());
    }

    #[test]
    fn ideal_transformer_devices(seed in any::<u64>()) {
        // one ideal transformer block spanning every internal edge
        let mut rng = seeded(seed);
        let base = random_resistor_multiport::<Rational>(&mut rng, 5, 2);
        let s = base.internal_edges();
        let on_v = crate::generate::random_space::<Rational>(&mut rng, voltages(&s));
        let on_i = on_v.perp().relabel(Label::swap_prime).unwrap();
        let device = on_v.direct_sum(&on_i).unwrap();
        prop_assert!(is_ideal_transformer(&device).unwrap());
        let block = DeviceBlock::from_space("t", s, &AffineSpace::from_vector_space(device)).unwrap();
        let n = M::new(base.graph().clone(), base.ports().to_vec(), vec![block]).unwrap();
        prop_assert!(is_ideal_transformer(&behaviour_translate(&n)).unwrap());
    }

    #[test]
    fn passive_devices_give_passive_behaviours(seed in any::<u64>()) {
        let n = random_passive_multiport::<Rational>(&mut seeded(seed), 6, 3, false);
        prop_assert!(is_passive(&n.device_translate()).unwrap());
        let b = n.port_behaviour();
        if !b.is_void() {
            prop_assert!(is_passive(b.translate()).unwrap());
        }
    }

    #[test]
    fn strictly_passive_behaviours(seed in any::<u64>()) {
        let n = random_passive_multiport::<Rational>(&mut seeded(seed), 6, 3, true);
        prop_assert!(is_strictly_passive(&n.device_translate()).unwrap());
        let b = n.port_behaviour();
        prop_assert!(is_strictly_passive(b.translate()).unwrap());
        // adjoint of a strictly passive proper behaviour stays strictly passive
        prop_assert!(is_proper(&b).unwrap());
        prop_assert!(is_strictly_passive(&adjoint_space(b.translate()).unwrap()).unwrap());
    }

    #[test]
    fn gaussian_adjoint_behaviours(seed in any::<u64>()) {
        let n = random_device_multiport::<GaussianRational>(&mut seeded(seed), 4, 2);
        let t = |m: &Multiport<GaussianRational>| m.homogeneous().port_behaviour().translate().clone();
        prop_assert_eq!(t(&n.adjoint()), adjoint_space(&t(&n)).unwrap());
    }
}
