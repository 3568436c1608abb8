//! Every local move must hand back a triangulation of the same manifold.
//! These tests throw the whole move catalogue at a mixed corpus — census
//! fixtures, bounded fixtures, random valid triangulations — and check the
//! invariants a homeomorphism cannot change: validity, orientability and
//! first homology.  The dodecahedron pipeline at the end exercises the
//! greedy driver on the one input whose answer we know down to the
//! isomorphism signature.

use dodeca::data::{ws23, ALT_DEHYDRATIONS};
use dodeca::dehydrate::rehydrate;
use dodeca::homology::cell_complex_h1;
use dodeca::sig::{iso_signature, isomorphic};
use dodeca::simplify::{
    apply_move, book_close, book_open, collapse_edge, greedy_simplify_logged, pachner_23,
    pachner_32, shell_boundary, two_zero, Move,
};
use dodeca::skeleton::{compute_skeleton, properties};
use dodeca::tri::GluingTable;
use dodeca_oracle::corpus::{layered_solid_torus, random_closed, random_table, solid_torus, CENSUS2};
use dodeca_oracle::dodecahedron::dodecahedral_sixty;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mixed_corpus() -> Vec<GluingTable> {
    let mut tables: Vec<GluingTable> = CENSUS2.iter().map(|f| f.table()).collect();
    tables.push(solid_torus());
    for layers in 1..=3 {
        tables.push(layered_solid_torus(layers));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x51);
    let mut kept = 0;
    for _ in 0..6000 {
        if kept == 20 {
            break;
        }
        let t = if kept % 2 == 0 {
            random_closed(&mut rng, 3)
        } else {
            random_table(&mut rng, 3, 0.3)
        };
        let sk = compute_skeleton(&t);
        if t.tets() > 0 && sk.is_valid() && sk.connected {
            tables.push(t);
            kept += 1;
        }
    }
    assert!(kept >= 8, "random corpus starved");
    tables
}

/// Every way any move applies to `table`, in scan order.
fn applicable_moves(table: &GluingTable) -> Vec<(Move, GluingTable)> {
    let sk = compute_skeleton(table);
    let mut out = Vec::new();
    for edge in 0..sk.edge_classes.len() {
        if let Ok(next) = collapse_edge(table, edge) {
            out.push((Move::CollapseEdge { edge }, next));
        }
        if let Ok(next) = pachner_32(table, edge) {
            out.push((Move::Pachner32 { edge }, next));
        }
        if let Ok(next) = two_zero(table, edge) {
            out.push((Move::TwoZero { edge }, next));
        }
        if let Ok(next) = book_close(table, edge) {
            out.push((Move::BookClose { edge }, next));
        }
    }
    for tet in 0..table.tets() {
        if let Ok(next) = shell_boundary(table, tet) {
            out.push((Move::ShellBoundary { tet }, next));
        }
        for face in 0..4u8 {
            if let Ok(next) = pachner_23(table, tet, face) {
                out.push((Move::Pachner23 { tet, face }, next));
            }
            if let Ok(next) = book_open(table, tet, face) {
                out.push((Move::BookOpen { tet, face }, next));
            }
        }
    }
    out
}

#[test]
fn every_applicable_move_preserves_validity_orientability_and_homology() {
    let mut applications = 0;
    for table in mixed_corpus() {
        let before = properties(&table);
        let h1 = cell_complex_h1(&table).expect("corpus tables have homology");
        for (mv, next) in applicable_moves(&table) {
            applications += 1;
            let after = properties(&next);
            assert!(after.valid, "{mv:?} broke validity on {table:?}");
            assert_eq!(
                after.orientable, before.orientable,
                "{mv:?} flipped orientability"
            );
            assert_eq!(
                cell_complex_h1(&next).unwrap(),
                h1,
                "{mv:?} changed first homology"
            );
            assert_eq!(
                apply_move(&table, mv).unwrap(),
                next,
                "replaying {mv:?} diverged"
            );
        }
    }
    assert!(
        applications > 300,
        "only {applications} move applications; the suite is not exercising much"
    );
}

#[test]
fn pachner_moves_round_trip_across_the_corpus() {
    let mut trips = 0;
    for table in mixed_corpus() {
        for tet in 0..table.tets() {
            for face in 0..4u8 {
                let Ok(up) = pachner_23(&table, tet, face) else {
                    continue;
                };
                let central = compute_skeleton(&up).edge_of(up.tets() - 3, 0, 1);
                let down = pachner_32(&up, central).expect("central edge always unwinds");
                assert!(isomorphic(&down, &table));
                trips += 1;
            }
        }
    }
    assert!(trips > 100, "only {trips} round trips");
}

#[test]
fn simplifying_never_grows_and_is_reproducible() {
    for table in mixed_corpus() {
        let (small1, log1) = greedy_simplify_logged(&table);
        let (small2, log2) = greedy_simplify_logged(&table);
        assert_eq!(small1, small2);
        assert_eq!(log1, log2);
        assert!(small1.tets() <= table.tets());
        let replayed = log1
            .iter()
            .try_fold(table.clone(), |t, &mv| apply_move(&t, mv))
            .expect("move log replays");
        assert_eq!(replayed, small1);
    }
}

#[test]
fn the_coned_dodecahedron_simplifies_to_a_bundled_triangulation() {
    let sixty = dodecahedral_sixty();
    let p = properties(&sixty);
    assert!(p.closed && p.valid && p.orientable && p.connected);

    let (small, log) = greedy_simplify_logged(&sixty);
    let q = properties(&small);
    assert_eq!(q.tets, 23, "sixty tetrahedra should boil down to 23");
    assert_eq!((q.vertices, q.edges), (1, 24));

    let bundled = [
        iso_signature(&ws23()),
        iso_signature(&rehydrate(ALT_DEHYDRATIONS[0]).unwrap()),
        iso_signature(&rehydrate(ALT_DEHYDRATIONS[1]).unwrap()),
    ];
    let got = iso_signature(&small);
    assert!(
        bundled.contains(&got),
        "simplified to an unfamiliar triangulation {got}"
    );

    let replayed = log
        .iter()
        .try_fold(sixty.clone(), |t, &mv| apply_move(&t, mv))
        .expect("pipeline log replays");
    assert_eq!(replayed, small);
}
