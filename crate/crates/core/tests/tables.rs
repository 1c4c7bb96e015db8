use std::collections::BTreeSet;

use cubic_sing::catalog::{self, Column, Table};
use cubic_sing::Configuration;

fn c(s: &str) -> Configuration {
    s.parse().unwrap()
}

#[test]
fn golden_table_sizes() {
    let rows = catalog::golden_rows().unwrap();
    assert_eq!(rows.len(), 204);
    let indices: Vec<u32> = rows.iter().map(|r| r.index).collect();
    assert_eq!(indices, (1..=204).collect::<Vec<_>>());
    let count = |t| rows.iter().filter(|r| r.table == t).count();
    assert_eq!((count(Table::A), count(Table::B), count(Table::C)), (18, 77, 109));
    let distinct: BTreeSet<&Configuration> = rows.iter().map(|r| &r.config).collect();
    assert_eq!(distinct.len(), 204);
}

#[test]
fn golden_rows_by_kind() {
    for r in catalog::golden_rows().unwrap() {
        match r.index {
            1..=21 => assert!(!r.config.is_ade(), "row {}", r.index),
            22..=95 => assert!(r.config.is_ade() && !r.config.is_pure_a(), "row {}", r.index),
            _ => assert!(r.config.is_pure_a(), "row {}", r.index),
        }
    }
}

#[test]
fn golden_spot_rows() {
    let rows = catalog::golden_rows().unwrap();
    let row = |i: u32| rows.iter().find(|r| r.index == i).unwrap();
    assert_eq!((row(9).mu, row(9).k, row(9).config.clone()), (13, 1, c("T266")));
    assert_eq!((row(153).mu, row(153).k, row(153).config.clone()), (10, 5, c("2A3+A2+2A1")));
    assert_eq!((row(71).mu, row(71).k, row(71).config.clone()), (12, 3, c("3D4")));
    assert_eq!(row(1).config, c("O16"));
}

/// With the printed mu and k columns restored, the column check fails on
/// exactly the rows listed as errata.
#[test]
fn printed_columns_fail_exactly_on_errata_rows() {
    let errata = catalog::golden_errata().unwrap();
    let listed: BTreeSet<u32> = errata.iter().map(|e| e.index).collect();
    let failing: BTreeSet<u32> = catalog::printed_golden_rows()
        .unwrap()
        .iter()
        .filter(|r| r.config.mu() != r.mu || r.config.k() != r.k)
        .map(|r| r.index)
        .collect();
    assert_eq!(failing, listed);
    for e in errata {
        let row = catalog::golden_rows().unwrap().iter().find(|r| r.index == e.index).unwrap();
        let computed = match e.column {
            Column::Mu => row.config.mu(),
            Column::K => row.config.k() as u64,
        };
        assert_eq!(e.corrected, computed, "row {}", e.index);
        assert_ne!(e.printed, e.corrected);
    }
}

#[test]
fn printed_dpw_table_fails_only_on_erratum() {
    let errata = catalog::dpw_errata().unwrap();
    let listed: BTreeSet<&str> = errata.iter().map(|e| e.weights_text.as_str()).collect();
    let printed = catalog::printed_dpw_semisimple().unwrap();
    let failing: BTreeSet<&str> = printed
        .iter()
        .filter(|r| r.config.mu() != r.mu)
        .map(|r| r.weights_text.as_str())
        .collect();
    assert_eq!(failing, listed);
    for e in errata {
        assert_ne!(e.printed.mu(), e.corrected.mu());
    }
}

#[test]
fn golden_lines_round_trip() {
    for r in catalog::golden_rows().unwrap() {
        assert_eq!(&catalog::parse_golden_line(&r.to_string()).unwrap(), r);
    }
}

#[test]
fn golden_line_errors() {
    for bad in ["", "1;16;1", "0;1;1;A1", "205;1;1;A1", "x;1;1;A1", "1;-1;1;A1", "1;1;1;A0", "1;1;1;A1;"] {
        assert!(catalog::parse_golden_line(bad).is_err(), "{bad:?}");
    }
}

#[test]
fn maximal_lists() {
    let ade = catalog::maximal_ade().unwrap();
    let an = catalog::maximal_an().unwrap();
    assert_eq!(ade.len(), 12);
    assert_eq!(an.len(), 8);
    assert!(ade.contains(&c("D5+2A3")));
    assert!(ade.contains(&c("10A1")) && ade.contains(&c("5A2")));
    assert!(an.contains(&c("A11")) && an.contains(&c("2A5+A1")));
    let golden: BTreeSet<&Configuration> = catalog::golden_rows().unwrap().iter().map(|r| &r.config).collect();
    assert!(ade.iter().chain(an).all(|x| golden.contains(x)));
}

#[test]
fn table5_rows_are_maximal_ade() {
    let maximal: BTreeSet<&Configuration> = catalog::maximal_ade().unwrap().iter().collect();
    let rows = catalog::table5().unwrap();
    assert_eq!(rows.len(), 10);
    let first = &rows[0];
    assert_eq!(first.config, c("E8+A2"));
    assert_eq!(first.remove, vec![3, 8, 9, 11, 15]);
    for r in rows {
        assert!(maximal.contains(&r.config));
        // Each deletion leaves exactly mu(config) vertices.
        assert_eq!(15 - r.remove.len() as u64, r.config.mu());
    }
}

#[test]
fn dpw_tables() {
    let rows = catalog::dpw_semisimple().unwrap();
    assert_eq!(rows.len(), 16);
    let row = rows.iter().find(|r| r.weights == [-10, -4, 2, 5, 8]).unwrap();
    assert_eq!((row.config.clone(), row.mu), (c("A7+A4"), 11));
    assert_eq!(rows.iter().filter(|r| r.starred).count(), 2);
    assert!(rows.iter().filter(|r| !r.starred).all(|r| r.extras.is_empty()));
    assert_eq!(catalog::dpw_unipotent().unwrap().len(), 7);
}

#[test]
fn adjacency_table() {
    let edges = catalog::unimodal_adjacency().unwrap();
    assert_eq!(edges.len(), 24);
    let distinct: BTreeSet<(String, String)> = edges.iter().map(|e| (e.from.to_string(), e.to.to_string())).collect();
    assert_eq!(distinct.len(), 24);
    assert!(edges.iter().all(|e| e.to.milnor_number() < e.from.milnor_number()));
}
