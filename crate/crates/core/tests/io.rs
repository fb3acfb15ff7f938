mod common;

use chainreach::io::{load_edge_list, read_chains, read_digraph, save_edge_list, write_chains};
use chainreach::{nh_conc, Error, ModelKind};
use common::random_dag;
use tempfile::TempDir;

#[test]
fn edge_list_round_trip_keeps_multiset() {
    let dir = TempDir::new().unwrap();
    for (i, kind) in ModelKind::ALL.into_iter().enumerate() {
        let d = random_dag(kind, 100, 3.0, i as u64);
        let path = dir.path().join(format!("{kind}.el"));
        save_edge_list(&path, &d).unwrap();
        let back = load_edge_list(&path).unwrap();
        assert_eq!(back.vertex_count(), 100);
        let mut a: Vec<_> = d.edges().collect();
        let mut b: Vec<_> = back.edges().collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b, "{kind}");
    }
}

#[test]
fn chains_round_trip_on_random_dag() {
    let d = random_dag(ModelKind::Pb, 60, 2.0, 3).sort_adjacency_lists();
    let (dec, _) = nh_conc(&d);
    let mut buf = Vec::new();
    write_chains(&mut buf, &dec).unwrap();
    assert_eq!(read_chains(buf.as_slice(), &d).unwrap(), dec);
}

#[test]
fn invalid_chain_file_is_rejected() {
    let d = random_dag(ModelKind::Er, 5, 0.0, 1);
    assert!(read_chains("0 1 2\n3\n".as_bytes(), &d).is_err());
}

#[test]
fn duplicates_and_self_loops_are_dropped() {
    let g = read_digraph("3 4\n0 1\n0 1\n2 2\n1 2\n".as_bytes()).unwrap();
    assert_eq!(g.edge_count(), 2);
    assert_eq!((g.dropped_duplicates(), g.dropped_self_loops()), (1, 1));
}

#[test]
fn excess_edge_lines_fail_with_line_number() {
    match read_digraph("3 2\n0 1\n1 2\n0 2\n".as_bytes()) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
        other => panic!("{other:?}"),
    }
}
