use std::collections::BTreeSet;

use cubic_sing::catalog::{self, DELTA_CENTER};
use cubic_sing::graph::{are_isomorphic, bits, is_induced_embeddable, parse_edge_list};
use cubic_sing::lattice::{gram_of, IntLattice};
use cubic_sing::{Configuration, Error, SimpleGraph, SingularityType};

fn c(s: &str) -> Configuration {
    s.parse().unwrap()
}

fn t(s: &str) -> SingularityType {
    s.parse().unwrap()
}

/// Bourbaki's Cartan matrix of E8.
const E8_CARTAN: [[i64; 8]; 8] = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
];

#[test]
fn e8_diagram_matches_cartan_matrix() {
    let mut edges = Vec::new();
    for (i, row) in E8_CARTAN.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if j > i && x == -1 {
                edges.push((i, j));
            }
        }
    }
    let from_cartan = SimpleGraph::from_edges(8, &edges).unwrap();
    let ours = t("E8").dynkin_diagram().unwrap();
    assert!(are_isomorphic(&from_cartan, &ours));
    let rows: Vec<Vec<i64>> = E8_CARTAN.iter().map(|r| r.to_vec()).collect();
    let cartan = IntLattice::from_rows(&rows).unwrap();
    let gram = gram_of(t("E8")).unwrap();
    assert_eq!(cartan.det(), gram.det());
    assert_eq!(gram.det(), 1.into());
    assert_eq!(cartan.discriminant_group().unwrap(), gram.discriminant_group().unwrap());
}

#[test]
fn diagram_shapes() {
    for n in 1..=12 {
        let a = t(&format!("A{n}")).dynkin_diagram().unwrap();
        assert_eq!((a.n(), a.edge_count()), (n as usize, n as usize - 1));
        assert!(a.degree_sequence().iter().all(|&d| d <= 2));
    }
    for n in 4..=12usize {
        let d = SingularityType::d(n as u32).unwrap().dynkin_diagram().unwrap();
        assert_eq!(d.n(), n);
        assert_eq!(d.degree_sequence().iter().filter(|&&x| x == 3).count(), 1);
        assert_eq!(d.degree_sequence().iter().filter(|&&x| x == 1).count(), 3);
    }
    // E_n has a branch vertex whose arms have 1, 2 and n-4 vertices.
    for n in 6..=8usize {
        let e = SingularityType::e(n as u32).unwrap().dynkin_diagram().unwrap();
        let center = (0..e.n()).find(|&v| e.degree(v) == 3).unwrap();
        let rest = e.all() & !(1u64 << center);
        let mut arms: Vec<u32> = e.components_within(rest).iter().map(|m| m.count_ones()).collect();
        arms.sort();
        assert_eq!(arms, vec![1, 2, n as u32 - 4]);
    }
}

#[test]
fn gamma_shape() {
    let g = catalog::gamma();
    assert_eq!(g.labels(), (1..=15).collect::<Vec<u32>>().as_slice());
    for label in 1..=15 {
        let v = g.vertex_of_label(label).unwrap();
        assert_eq!(g.degree(v), if label <= 6 { 3 } else { 2 }, "label {label}");
    }
    // Each subdivision vertex joins an odd and an even branch vertex.
    for label in 7..=15 {
        let v = g.vertex_of_label(label).unwrap();
        let ends: Vec<u32> = bits(g.neighbors(v)).map(|w| g.label(w)).collect();
        assert_eq!(ends.len(), 2);
        assert_ne!(ends[0] % 2, ends[1] % 2);
    }
    assert!(g.is_bipartite());
    assert_eq!(g.girth(), Some(8));
}

/// Automorphisms of the carrier graph counted by brute force over the 720
/// permutations of its six branch vertices: subdivision vertices are
/// determined by their endpoints, so a permutation extends exactly when it
/// maps subdivided pairs to subdivided pairs.
#[test]
fn automorphism_count_matches_branch_vertex_oracle() {
    let g = catalog::gamma();
    let lv = |l: u32| g.vertex_of_label(l).unwrap();
    let mut pairs = BTreeSet::new();
    for label in 7..=15 {
        let ends: Vec<u32> = bits(g.neighbors(lv(label))).map(|w| g.label(w)).collect();
        pairs.insert((ends[0].min(ends[1]), ends[0].max(ends[1])));
    }
    let mut count = 0;
    let mut perm: Vec<u32> = (1..=6).collect();
    permutations(&mut perm, 0, &mut |p| {
        let ok = pairs.iter().all(|&(x, y)| {
            let (a, b) = (p[x as usize - 1], p[y as usize - 1]);
            pairs.contains(&(a.min(b), a.max(b)))
        });
        count += ok as usize;
    });
    let autos = g.automorphisms().unwrap();
    assert_eq!(count, 72);
    assert_eq!(autos.len(), count);
    for a in &autos {
        for (u, v) in g.edges() {
            assert!(g.has_edge(a[u], a[v]));
        }
    }
}

fn permutations(v: &mut Vec<u32>, k: usize, f: &mut impl FnMut(&[u32])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

#[test]
fn delta_shape() {
    let d = catalog::delta();
    assert_eq!((d.n(), d.edge_count()), (13, 12));
    assert!(d.is_connected());
    let center = d.vertex_of_label(DELTA_CENTER).unwrap();
    assert_eq!(d.degree(center), 3);
    // Removing the centre leaves three D4 components.
    let rest = d.all() & !(1u64 << center);
    let comps = d.components_within(rest);
    assert_eq!(comps.len(), 3);
    for m in comps {
        assert_eq!(d.classify_mask(m), Some(c("D4")));
    }
    assert_eq!(d.classify_mask(rest), Some(c("3D4")));
}

#[test]
fn e6_tilde_shape() {
    let e = catalog::e6_tilde();
    assert_eq!((e.n(), e.edge_count()), (7, 6));
    assert_eq!(e.classify_ade(), None);
    assert_eq!(e.without_labels(&[0]).unwrap().classify_ade(), Some(c("3A2")));
    assert_eq!(e.without_labels(&[2]).unwrap().classify_ade(), Some(c("E6")));
    assert_eq!(e.without_labels(&[1]).unwrap().classify_ade(), Some(c("A5+A1")));
}

#[test]
fn theorem_ii_negative_controls() {
    let g = catalog::gamma();
    let ten = c("10A1").diagram().unwrap();
    let nine = c("9A1").diagram().unwrap();
    assert!(!is_induced_embeddable(&ten, &g));
    assert!(is_induced_embeddable(&nine, &g));
    assert!(!g.contains_induced(&c("5A2").diagram().unwrap()));
    assert!(g.contains_induced(&c("4A2+A1").diagram().unwrap()));
}

#[test]
fn embeddings_are_induced() {
    let g = catalog::gamma();
    for cfg in ["E8+A2", "D5+2A3", "A11", "3D4", "9A1", "A5+A4+A1"] {
        let p = c(cfg).diagram().unwrap();
        let m = g.find_induced_embedding(&p).unwrap_or_else(|| panic!("{cfg}"));
        assert_eq!(m.iter().collect::<BTreeSet<_>>().len(), p.n());
        for u in 0..p.n() {
            for v in 0..p.n() {
                if u != v {
                    assert_eq!(p.has_edge(u, v), g.has_edge(m[u], m[v]), "{cfg}");
                }
            }
        }
    }
}

#[test]
fn every_induced_subset_of_gamma_classifies_consistently() {
    let g = catalog::gamma();
    let found = g.enumerate_induced_ade().unwrap();
    let mut seen = BTreeSet::new();
    for mask in 1u64..1 << 15 {
        if let Some(cfg) = g.classify_mask(mask) {
            assert_eq!(cfg.mu(), mask.count_ones() as u64);
            seen.insert(cfg);
        }
    }
    assert_eq!(seen, found);
}

#[test]
fn edge_list_errors() {
    assert!(parse_edge_list("").is_err());
    assert!(parse_edge_list("0 1\n").is_err());
    assert!(matches!(parse_edge_list("n 2\n0 2\n"), Err(Error::VertexOutOfRange { vertex: 2, n: 2 })));
    assert!(matches!(parse_edge_list("n 2\n1 1\n"), Err(Error::SelfLoop(1))));
    assert!(parse_edge_list("n 65\n").is_err());
    assert!(matches!(parse_edge_list("n 5555255555555555\n"), Err(Error::SizeLimit(_))));
    assert!(parse_edge_list("n 2\n0 1 2\n").is_err());
    let g = parse_edge_list("# comment\nn 3\n0 1 # trailing\n\n1 2\n").unwrap();
    assert_eq!(g.classify_ade(), Some(c("A3")));
}

#[test]
fn dot_export_is_stable() {
    let e = catalog::e6_tilde();
    let dot = e.to_dot("e6tilde");
    assert_eq!(dot, e.to_dot("e6tilde"));
    assert!(dot.starts_with("graph e6tilde {\n"));
    assert_eq!(dot.matches(" -- ").count(), 6);
}
