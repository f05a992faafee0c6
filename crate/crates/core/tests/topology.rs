//! Expected counts below were produced by a separate Fraction-based Python
//! enumeration of the lattice (inequality route cross-checked against all
//! 286 minors, breadth-first search for components).

use chirolab::classification::Label;
use chirolab::configuration::ParamPoint;
use chirolab::topology::{
    classify_grid, connected_components, path_exists, sample_grid, separation_witness,
    zero_sheet_samples, Adjacency, GridSpec, Node,
};

fn node_of(g: &chirolab::topology::SampleGraph, p: &ParamPoint) -> Node {
    *g.nodes().iter().find(|n| g.point(**n) == *p).expect("point is a node")
}

#[test]
fn minus_grid_at_sixteen() {
    let g = sample_grid(GridSpec::new(16).unwrap(), Label::Minus).unwrap();
    assert_eq!(g.len(), 262);
    let comps = connected_components(&g);
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[0].representative, [1, 9, 1]);
    assert_eq!(comps[1].representative, [9, 3, 1]);
    assert_eq!(comps.iter().map(|c| c.size()).collect::<Vec<_>>(), [131, 131]);
    assert!(g.contains([4, 12, 2]));

    let a = node_of(&g, &ParamPoint::from_fracs((1, 4), (3, 4), (1, 8)));
    let b = node_of(&g, &ParamPoint::from_fracs((3, 4), (1, 4), (1, 8)));
    assert_eq!(path_exists(&g, a, b), Ok(false));
    assert_eq!(path_exists(&g, a, [1, 9, 1]), Ok(true));
}

#[test]
fn plus_grid_at_sixteen() {
    let grid = classify_grid(GridSpec::new(16).unwrap()).unwrap();
    let g = grid.graph(Label::Plus, Adjacency::FaceEdge);
    assert_eq!(g.len(), 198);
    assert!(g.contains([4, 8, 4]));
    let comps = connected_components(&g);
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[0].representative, [1, 4, 1]);
    assert_eq!(comps[1].representative, [9, 8, 1]);

    // The plus region is thin near its upper u boundary; with only the six
    // face neighbours some lattice points there are isolated.
    let face = connected_components(&g.with_adjacency(Adjacency::Face));
    assert_eq!(face.len(), 6);
    assert_eq!(face.iter().map(|c| c.size()).collect::<Vec<_>>(), [96, 2, 1, 96, 1, 2]);
}

#[test]
fn grid_refinement_is_consistent() {
    let coarse = classify_grid(GridSpec::new(8).unwrap()).unwrap();
    let fine = classify_grid(GridSpec::new(16).unwrap()).unwrap();
    for (n, label) in coarse.iter() {
        assert_eq!(fine.label(n.map(|c| 2 * c)), Some(label), "{n:?}");
    }
    for target in [Label::Minus, Label::Plus] {
        let cg = coarse.graph(target, Adjacency::default());
        let fg = fine.graph(target, Adjacency::default());
        let fine_comps = connected_components(&fg);
        for comp in connected_components(&cg) {
            let owners: std::collections::BTreeSet<usize> = comp
                .nodes
                .iter()
                .map(|n| {
                    let m = n.map(|c| 2 * c);
                    fine_comps.iter().position(|fc| fc.nodes.contains(&m)).unwrap()
                })
                .collect();
            assert_eq!(owners.len(), 1, "{target}: coarse component split");
        }
    }
    assert_eq!(coarse.count(Label::Minus), 18);
    assert_eq!(coarse.count(Label::Plus), 20);
    assert_eq!(coarse.count(Label::Zero), 7);
}

#[test]
fn separation_certificate_at_sixteen() {
    for target in [Label::Minus, Label::Plus] {
        let cert = separation_witness(target, 16).unwrap();
        assert!(cert.symbolic_zero());
        assert_eq!(cert.slice_points, 15 * 15);
        assert!(cert.slice_offenders.is_empty());
        assert!(cert.certified(), "{target}");
    }
    let cert = separation_witness(Label::Minus, 16).unwrap();
    assert_eq!(cert.below, Some(ParamPoint::from_fracs((1, 16), (9, 16), (1, 16))));
    assert_eq!(cert.above, Some(ParamPoint::from_fracs((9, 16), (3, 16), (1, 16))));
}

#[test]
fn zero_sheets_at_sixteen() {
    let z = zero_sheet_samples(16).unwrap();
    assert_eq!(z.sheet_s.len(), 37);
    assert_eq!(z.sheet_t.len(), 97);
    assert_eq!(z.intersection.len(), 7);
    assert!(z.all_zero());
    assert!(z.intersection_on_both());
    assert!(z.path_passes());
    assert_eq!(
        z.path_vertices(),
        vec![
            ParamPoint::from_fracs((1, 2), (3, 8), (1, 4)),
            ParamPoint::from_fracs((1, 2), (1, 2), (1, 4)),
            ParamPoint::from_fracs((1, 2), (1, 2), (2, 7)),
            ParamPoint::from_fracs((3, 4), (11, 24), (2, 7)),
        ]
    );
}
