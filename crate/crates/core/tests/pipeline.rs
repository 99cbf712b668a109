use std::path::PathBuf;

use cvft::config::GraphConfig;
use cvft::modes::FieldKind;
use cvft::reduce::{a_from_g, classify_graph, prune, reconstruction_residual, TopologyClass, TopologyDetail};
use cvft::GMatrix;
use nalgebra::SymmetricEigen;

fn demo(name: &str) -> GMatrix {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name);
    GraphConfig::load(&path).unwrap().build().unwrap()
}

#[test]
fn demo_graphs_have_expected_sizes() {
    for (name, n, edges) in [("1d.cfg", 48, 47), ("2d.cfg", 48, 82), ("3d.cfg", 18, 33)] {
        let g = demo(name);
        assert_eq!(g.n(), n, "{name}");
        assert_eq!(g.edges().len(), edges, "{name}");
        assert_eq!(g.components().len(), 1, "{name}");
    }
}

#[test]
fn one_dimensional_interaction_graph_is_a_chain() {
    let g = demo("1d.cfg");
    assert!(g.is_kind_bipartite());
    let c = prune(&a_from_g(&demo("1d.cfg")).unwrap(), 0.0).unwrap();
    assert_eq!(classify_graph(&c).class, TopologyClass::BicolorableComplete);
    let report = classify_graph(&cvft::ClusterGraph {
        n: g.n(),
        edges: g.edges().into_iter().map(|(i, j, w)| (i, j, w.abs())).collect(),
        mode_map: None,
    });
    assert_eq!(report.detail, TopologyDetail::Path { nodes: 48 });
}

#[test]
fn demo_reductions_reconstruct_and_prune() {
    for (name, t, detail) in [
        ("1d.cfg", 0.4, TopologyDetail::Path { nodes: 48 }),
        ("2d.cfg", 0.3, TopologyDetail::Grid2D { rows: 6, cols: 8 }),
        ("3d.cfg", 0.35, TopologyDetail::Cubic3D { dims: [2, 3, 3] }),
    ] {
        let g = demo(name);
        let eig = SymmetricEigen::new(g.entries().clone());
        let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        assert!(reconstruction_residual(g.entries(), &values, &eig.eigenvectors) < 1e-9);
        let a = a_from_g(&g).unwrap();
        // A is symmetric with zero diagonal blocks.
        let h = a.n() / 2;
        for i in 0..a.n() {
            for j in 0..a.n() {
                assert_eq!(a.get(i, j), a.get(j, i));
                if (i < h) == (j < h) {
                    assert_eq!(a.get(i, j), 0.0);
                }
            }
        }
        let c = prune(&a, t).unwrap();
        assert_eq!(classify_graph(&c).detail, detail, "{name}");
        assert_eq!(c.mode_map.as_ref().unwrap().len(), g.n());
    }
}

#[test]
fn mode_maps_survive_the_pipeline() {
    let g = demo("2d.cfg");
    let modes = g.mode_map().unwrap();
    assert!(modes.iter().take(24).all(|m| m.kind == FieldKind::Signal));
    assert!(modes.iter().skip(24).all(|m| m.kind == FieldKind::Idler));
    let a = a_from_g(&g).unwrap();
    assert_eq!(a.mode_map(), Some(modes));
}

#[test]
fn edge_files_round_trip_through_reduction() {
    let g = demo("3d.cfg");
    let reread = GMatrix::from_edge_file(&g.to_edge_file()).unwrap();
    assert_eq!(reread.entries(), g.entries());
    let a = a_from_g(&g).unwrap();
    let b = a_from_g(&reread).unwrap();
    assert_eq!(a.entries(), b.entries());
}

#[test]
fn focus_keeps_one_of_four_chains() {
    let text = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/1d.cfg")).unwrap();
    let unfocused: String = text.lines().filter(|l| !l.starts_with("focus")).map(|l| format!("{l}\n")).collect();
    let g: GMatrix = GraphConfig::parse(&unfocused).unwrap().build().unwrap();
    assert_eq!(g.n(), 192);
    let sizes: Vec<usize> = g.components().iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![48; 4]);
}
