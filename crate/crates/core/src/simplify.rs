//! Local moves that rewrite a triangulation of a 3-manifold without changing
//! the manifold, and a greedy driver that uses them to shrink it.
//!
//! Every move follows the same shape: check that the configuration is legal,
//! rebuild the gluing table with some tetrahedra replaced, and re-route the
//! gluings that used to point at the replaced ones.  The moves here are
//!
//! * [`pachner_23`] / [`pachner_32`] — the bistellar exchange through an
//!   internal face or an internal degree-three edge; always safe when the
//!   tetrahedra involved are distinct, and mutually inverse.
//! * [`collapse_edge`] — squash an edge joining two distinct vertices to a
//!   point, flattening every tetrahedron around it onto a face.
//! * [`two_zero`] — flatten the pillow made by the two tetrahedra around a
//!   degree-two edge.  Not required by the driver's contract, but it removes
//!   two tetrahedra at once and costs nothing to check.
//! * [`shell_boundary`] — peel a tetrahedron off the boundary.
//! * [`book_open`] / [`book_close`] — cut along an internal face whose edges
//!   touch the boundary in exactly two places, and the inverse fold.  These
//!   do not change the size; they exist to expose faces for other tools.
//!
//! The conditional moves finish by validating the result: if the rewritten
//! triangulation fails its own edge and vertex-link checks, or flips
//! orientability, the move reports [`MoveError::Inapplicable`] instead of
//! returning a broken table.  The legality conditions are meant to make that
//! unreachable; the validation makes it harmless.
//!
//! [`greedy_simplify`] applies reducing moves in a fixed priority — collapse
//! first, then 3-2, then 2-0, then shellings — always at the lowest-numbered
//! spot where one applies, so a run is reproducible.  At a local minimum it
//! layers up to two speculative 2-3 moves, follows each with a non-undoing
//! 3-2 and whatever reductions open up, and keeps the outcome only if it has
//! strictly fewer tetrahedra than the minimum it escaped.  The driver records
//! the moves it commits, so a run can be replayed step by step.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{face_vertices, Perm4, EDGE_VERTS};
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::tri::{Gluing, GluingTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move does not apply: {0}")]
    Inapplicable(&'static str),
    #[error("edge class {0} out of range")]
    BadEdge(usize),
    #[error("tetrahedron {0} out of range")]
    BadTet(usize),
    #[error("face {1} of tetrahedron {0} out of range")]
    BadFace(usize, u8),
}

use MoveError::Inapplicable;

/// One committed move, in the indexing of the table it was applied to.
/// Edge and face arguments are skeleton class indices and face slots of that
/// table, so a log of moves replays only against the exact starting table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    Pachner23 { tet: usize, face: u8 },
    Pachner32 { edge: usize },
    CollapseEdge { edge: usize },
    TwoZero { edge: usize },
    ShellBoundary { tet: usize },
    BookOpen { tet: usize, face: u8 },
    BookClose { edge: usize },
}

pub fn apply_move(table: &GluingTable, mv: Move) -> Result<GluingTable, MoveError> {
    match mv {
        Move::Pachner23 { tet, face } => pachner_23(table, tet, face),
        Move::Pachner32 { edge } => pachner_32(table, edge),
        Move::CollapseEdge { edge } => collapse_edge(table, edge),
        Move::TwoZero { edge } => two_zero(table, edge),
        Move::ShellBoundary { tet } => shell_boundary(table, tet),
        Move::BookOpen { tet, face } => book_open(table, tet, face),
        Move::BookClose { edge } => book_close(table, edge),
    }
}

// ---------------------------------------------------------------------------
// shared machinery

struct Uf(Vec<usize>);

impl Uf {
    fn new(n: usize) -> Uf {
        Uf((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// False if the two were already in one set (the union would close a loop).
    fn union_distinct(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// The two vertices of a tetrahedron not on the edge `{a, b}`, ascending.
fn other_two(a: u8, b: u8) -> (u8, u8) {
    let mut rest = (0..4u8).filter(|&v| v != a && v != b);
    let c = rest.next().unwrap();
    (c, rest.next().unwrap())
}

fn transposition(a: u8, b: u8) -> Perm4 {
    let mut img = [0, 1, 2, 3];
    img.swap(a as usize, b as usize);
    Perm4::from_images(img)
}

/// One tetrahedron of a walk around an edge: the edge runs from `n` to `s`,
/// the walk arrived through face `enter` and leaves through face `exit`.
#[derive(Clone, Copy, Debug)]
struct RingStep {
    tet: usize,
    n: u8,
    s: u8,
    enter: u8,
    exit: u8,
}

/// Walk once around an internal edge class.  Returns `None` if the walk falls
/// off the boundary, so callers get a full ring exactly for internal edges.
fn edge_ring(table: &GluingTable, sk: &Skeleton, class: usize) -> Option<Vec<RingStep>> {
    let cls = &sk.edge_classes[class];
    let (t0, e0, _) = cls.slots[0];
    let (n0, s0) = EDGE_VERTS[e0 as usize];
    let (c, d) = other_two(n0, s0);
    let (mut t, mut n, mut s, mut enter, mut exit) = (t0, n0, s0, d, c);
    let mut steps = Vec::with_capacity(cls.degree());
    for _ in 0..cls.degree() {
        steps.push(RingStep { tet: t, n, s, enter, exit });
        let g = table.gluing(t, exit)?;
        let (n2, s2) = (g.perm.image(n), g.perm.image(s));
        let enter2 = g.perm.image(exit);
        (t, n, s, enter, exit) = (g.tet, n2, s2, enter2, 6 - n2 - s2 - enter2);
    }
    debug_assert_eq!((t, n, s), (t0, n0, s0));
    Some(steps)
}

/// Drop `removed`, append `added` fresh tetrahedra after the survivors, and
/// re-route every gluing that touched a removed one.  `moved` sends an old
/// face slot of a removed tetrahedron to its new home: the replacement
/// tetrahedron plus the full label map from old labels to new ones.  `wires`
/// are gluings among the fresh tetrahedra, already in new indices.  An old
/// pairing with exactly one surviving end comes back as a boundary face,
/// which is how a shelling exposes the face it removes; a pairing with no
/// surviving end was interior to the replaced block and simply disappears.
fn rebuild(
    table: &GluingTable,
    removed: &[usize],
    added: usize,
    moved: &HashMap<(usize, u8), (usize, Perm4)>,
    wires: &[(usize, u8, usize, Perm4)],
) -> GluingTable {
    let dead: HashSet<usize> = removed.iter().copied().collect();
    let mut renumber = vec![None; table.tets()];
    let mut next = 0;
    for (t, slot) in renumber.iter_mut().enumerate() {
        if !dead.contains(&t) {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut out = GluingTable::new(next + added);
    for &(t, f, t2, perm) in wires {
        out.glue(t, f, Gluing { tet: t2, perm }).expect("fresh wire");
    }
    let resolve = |t: usize, f: u8| -> Option<(usize, u8, Perm4)> {
        match renumber[t] {
            Some(nt) => Some((nt, f, Perm4::IDENTITY)),
            None => moved.get(&(t, f)).map(|&(nt, mu)| (nt, mu.image(f), mu)),
        }
    };
    for t in 0..table.tets() {
        for f in 0..4u8 {
            let Some(g) = table.gluing(t, f) else { continue };
            if (t, f) > (g.tet, g.perm.image(f)) {
                continue; // handle each pairing once
            }
            let (Some((n1, nf1, mu1)), Some((n2, _, mu2))) =
                (resolve(t, f), resolve(g.tet, g.perm.image(f)))
            else {
                continue;
            };
            let perm = mu1.inverse().then(g.perm).then(mu2);
            out.glue(n1, nf1, Gluing { tet: n2, perm })
                .expect("re-routed gluing");
        }
    }
    debug_assert!(out.verify().is_ok());
    out
}

/// Remove a block of tetrahedra whose faces are pairwise identified by
/// `wires`, re-gluing the outside world through the block.  Each chain of
/// wires and old gluings is chased until it leaves the block on both ends;
/// a chain from one surviving face to another becomes a direct gluing, and a
/// chain ending on the boundary leaves its surviving face exposed.  Chains
/// that never surface — loops inside the block, or chains with boundary at
/// both ends — would silently discard part of the manifold, so they refuse.
fn squash(
    table: &GluingTable,
    removed: &[usize],
    wires: &HashMap<(usize, u8), ((usize, u8), Perm4)>,
) -> Result<GluingTable, MoveError> {
    let dead: HashSet<usize> = removed.iter().copied().collect();
    let mut renumber = vec![None; table.tets()];
    let mut next = 0;
    for (t, slot) in renumber.iter_mut().enumerate() {
        if !dead.contains(&t) {
            *slot = Some(next);
            next += 1;
        }
    }
    if next == 0 {
        return Err(Inapplicable("nothing would remain"));
    }

    // Chase a chain from `slot` (a face of a removed tetrahedron, reached by a
    // map `acc` from the entry tetrahedron's labels) until it surfaces.
    let chase = |visited: &mut HashSet<(usize, u8)>,
                 mut slot: (usize, u8),
                 mut acc: Perm4|
     -> Result<Option<((usize, u8), Perm4)>, MoveError> {
        for _ in 0..4 * table.tets() {
            visited.insert(slot);
            let Some(&(far, tau)) = wires.get(&slot) else {
                return Err(Inapplicable("a squashed chain crosses an unwired face"));
            };
            visited.insert(far);
            acc = acc.then(tau);
            match table.gluing(far.0, far.1) {
                None => return Ok(None),
                Some(g) if !dead.contains(&g.tet) => {
                    return Ok(Some(((g.tet, g.perm.image(far.1)), acc.then(g.perm))));
                }
                Some(g) => {
                    slot = (g.tet, g.perm.image(far.1));
                    acc = acc.then(g.perm);
                }
            }
        }
        Err(Inapplicable("a squashed chain never surfaces"))
    };

    let mut out = GluingTable::new(next);
    let mut visited: HashSet<(usize, u8)> = HashSet::new();
    let mut settled: HashSet<(usize, u8)> = HashSet::new();
    for t in 0..table.tets() {
        if dead.contains(&t) {
            continue;
        }
        for f in 0..4u8 {
            let Some(g) = table.gluing(t, f) else { continue };
            if !dead.contains(&g.tet) {
                if (t, f) < (g.tet, g.perm.image(f)) {
                    out.glue(renumber[t].unwrap(), f, Gluing { tet: renumber[g.tet].unwrap(), perm: g.perm })
                        .expect("surviving gluing");
                }
                continue;
            }
            if settled.contains(&(t, f)) {
                continue;
            }
            match chase(&mut visited, (g.tet, g.perm.image(f)), g.perm)? {
                None => {
                    settled.insert((t, f)); // now a boundary face
                }
                Some((end, perm)) => {
                    if end == (t, f) {
                        return Err(Inapplicable("a squashed chain returns to its start"));
                    }
                    settled.insert((t, f));
                    settled.insert(end);
                    out.glue(renumber[t].unwrap(), f, Gluing { tet: renumber[end.0].unwrap(), perm })
                        .expect("chained gluing");
                }
            }
        }
    }
    if wires.keys().any(|slot| !visited.contains(slot)) {
        return Err(Inapplicable("a squashed chain never reaches surviving tetrahedra"));
    }
    debug_assert!(out.verify().is_ok());
    Ok(out)
}

/// Final gate for the conditional moves: the rewritten triangulation must
/// still pass its own manifold checks and keep the input's orientability.
fn guard_result(before: &Skeleton, out: GluingTable) -> Result<GluingTable, MoveError> {
    let after = compute_skeleton(&out);
    if !after.is_valid() {
        return Err(Inapplicable("the rewritten triangulation is not a manifold"));
    }
    if after.orientable != before.orientable {
        return Err(Inapplicable("the rewrite would flip orientability"));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// bistellar moves

/// Replace the two distinct tetrahedra sharing an internal face by three
/// around a fresh internal edge.  Always legal; grows the table by one.
pub fn pachner_23(table: &GluingTable, tet: usize, face: u8) -> Result<GluingTable, MoveError> {
    if tet >= table.tets() {
        return Err(MoveError::BadTet(tet));
    }
    if face >= 4 {
        return Err(MoveError::BadFace(tet, face));
    }
    let Some(g) = table.gluing(tet, face) else {
        return Err(Inapplicable("the face is boundary"));
    };
    if g.tet == tet {
        return Err(Inapplicable("the face joins a tetrahedron to itself"));
    }
    let (a, b, pi) = (tet, g.tet, g.perm);
    let p = face_vertices(face);

    // The new tetrahedron i keeps both apexes — label 0 above the face, label
    // 1 below — and the face edge opposite corner p[i], as labels 2 and 3.
    let base = table.tets() - 2;
    let mut moved = HashMap::new();
    for i in 0..3 {
        let (p0, p1, p2) = (p[i], p[(i + 1) % 3], p[(i + 2) % 3]);
        let mut up = [0u8; 4];
        up[face as usize] = 0;
        up[p0 as usize] = 1;
        up[p1 as usize] = 2;
        up[p2 as usize] = 3;
        moved.insert((a, p0), (base + i, Perm4::from_images(up)));
        let mut down = [0u8; 4];
        down[pi.image(face) as usize] = 1;
        down[pi.image(p0) as usize] = 0;
        down[pi.image(p1) as usize] = 2;
        down[pi.image(p2) as usize] = 3;
        moved.insert((b, pi.image(p0)), (base + i, Perm4::from_images(down)));
    }
    let ring = Perm4::from_images([0, 1, 3, 2]);
    let wires = [
        (base, 2, base + 1, ring),
        (base + 1, 2, base + 2, ring),
        (base + 2, 2, base, ring),
    ];
    Ok(rebuild(table, &[a, b], 3, &moved, &wires))
}

/// Replace the three distinct tetrahedra around an internal degree-three edge
/// by two sharing a face.  Inverse of [`pachner_23`]; shrinks the table by one.
pub fn pachner_32(table: &GluingTable, edge: usize) -> Result<GluingTable, MoveError> {
    let sk = compute_skeleton(table);
    pachner_32_with(table, &sk, edge)
}

pub(crate) fn pachner_32_with(
    table: &GluingTable,
    sk: &Skeleton,
    edge: usize,
) -> Result<GluingTable, MoveError> {
    let Some(cls) = sk.edge_classes.get(edge) else {
        return Err(MoveError::BadEdge(edge));
    };
    if !cls.valid {
        return Err(Inapplicable("the edge is glued to itself in reverse"));
    }
    if cls.boundary {
        return Err(Inapplicable("the edge is boundary"));
    }
    if cls.degree() != 3 {
        return Err(Inapplicable("the edge does not have degree three"));
    }
    let ring = edge_ring(table, sk, edge).expect("internal edge has a full ring");
    if ring[0].tet == ring[1].tet || ring[0].tet == ring[2].tet || ring[1].tet == ring[2].tet {
        return Err(Inapplicable("the edge meets a tetrahedron twice"));
    }

    // Undo the 2-3 layout: tetrahedron i of the ring is the wedge over edge
    // i of the vanished face, so its face away from `s` goes back above the
    // face (tetrahedron `na`) and its face away from `n` below (`nb`).  The
    // replacements label the face corners 0,1,2 and their apex 3.
    let base = table.tets() - 3;
    let (na, nb) = (base, base + 1);
    let mut moved = HashMap::new();
    for (i, st) in ring.iter().enumerate() {
        let i = i as u8;
        let mut img = [0u8; 4];
        img[st.n as usize] = 0;
        img[st.s as usize] = 1;
        img[st.exit as usize] = 2;
        img[st.enter as usize] = 3;
        let psi = Perm4::from_images(img);
        let to_a = Perm4::from_images([3, i, (i + 1) % 3, (i + 2) % 3]);
        let to_b = Perm4::from_images([i, 3, (i + 1) % 3, (i + 2) % 3]);
        moved.insert((st.tet, st.s), (na, psi.then(to_a)));
        moved.insert((st.tet, st.n), (nb, psi.then(to_b)));
    }
    let wires = [(na, 3, nb, Perm4::IDENTITY)];
    Ok(rebuild(
        table,
        &[ring[0].tet, ring[1].tet, ring[2].tet],
        2,
        &moved,
        &wires,
    ))
}

// ---------------------------------------------------------------------------
// squashing moves

/// Collapse an internal or boundary edge joining two distinct vertices,
/// flattening each tetrahedron around it onto a face.  Shrinks the table by
/// the degree of the edge.
pub fn collapse_edge(table: &GluingTable, edge: usize) -> Result<GluingTable, MoveError> {
    let sk = compute_skeleton(table);
    collapse_edge_with(table, &sk, edge)
}

pub(crate) fn collapse_edge_with(
    table: &GluingTable,
    sk: &Skeleton,
    edge: usize,
) -> Result<GluingTable, MoveError> {
    let Some(cls) = sk.edge_classes.get(edge) else {
        return Err(MoveError::BadEdge(edge));
    };
    if !cls.valid {
        return Err(Inapplicable("the edge is glued to itself in reverse"));
    }
    let (t0, e0, _) = cls.slots[0];
    let (a0, b0) = EDGE_VERTS[e0 as usize];
    let vu = sk.vertex_class[4 * t0 + a0 as usize];
    let vv = sk.vertex_class[4 * t0 + b0 as usize];
    if vu == vv {
        return Err(Inapplicable("the edge closes a loop"));
    }
    if !cls.boundary && sk.vertex_classes[vu].boundary && sk.vertex_classes[vv].boundary {
        return Err(Inapplicable(
            "an internal edge cannot merge two boundary vertices",
        ));
    }
    let mut seen = HashSet::new();
    for &(t, _, _) in &cls.slots {
        if !seen.insert(t) {
            return Err(Inapplicable("the edge meets a tetrahedron twice"));
        }
    }

    // Each face spanning the edge squashes to an edge, identifying its other
    // two edges.  Those identifications must form chains, never loops: a loop
    // would crush a cycle of edges onto one edge and pinch the manifold.
    let mut uf = Uf::new(sk.edge_classes.len());
    let mut spanning = HashSet::new();
    for &(t, es, _) in &cls.slots {
        let (a, b) = EDGE_VERTS[es as usize];
        let (c, d) = other_two(a, b);
        for f in [c, d] {
            if !spanning.insert(sk.face_class[4 * t + f as usize]) {
                continue;
            }
            let x = if f == c { d } else { c };
            let e1 = sk.edge_of(t, a, x);
            let e2 = sk.edge_of(t, b, x);
            debug_assert!(e1 != edge && e2 != edge);
            if !uf.union_distinct(e1, e2) {
                return Err(Inapplicable("the edges beside the edge close a loop"));
            }
        }
    }
    // A face that squashes flat must not also span the edge, or it would have
    // to become an edge and a face at once.
    for &(t, es, _) in &cls.slots {
        let (a, b) = EDGE_VERTS[es as usize];
        for v in [a, b] {
            if spanning.contains(&sk.face_class[4 * t + v as usize]) {
                return Err(Inapplicable("a squashed face also spans the edge"));
            }
        }
    }

    let mut wires = HashMap::new();
    let mut doomed = Vec::new();
    for &(t, es, _) in &cls.slots {
        let (a, b) = EDGE_VERTS[es as usize];
        let tau = transposition(a, b);
        wires.insert((t, a), ((t, b), tau));
        wires.insert((t, b), ((t, a), tau));
        doomed.push(t);
    }
    guard_result(sk, squash(table, &doomed, &wires)?)
}

/// Flatten the pillow made by the two distinct tetrahedra around an internal
/// degree-two edge, gluing what was above it to what was below.  Shrinks the
/// table by two.
pub fn two_zero(table: &GluingTable, edge: usize) -> Result<GluingTable, MoveError> {
    let sk = compute_skeleton(table);
    two_zero_with(table, &sk, edge)
}

pub(crate) fn two_zero_with(
    table: &GluingTable,
    sk: &Skeleton,
    edge: usize,
) -> Result<GluingTable, MoveError> {
    let Some(cls) = sk.edge_classes.get(edge) else {
        return Err(MoveError::BadEdge(edge));
    };
    if !cls.valid {
        return Err(Inapplicable("the edge is glued to itself in reverse"));
    }
    if cls.boundary {
        return Err(Inapplicable("the edge is boundary"));
    }
    if cls.degree() != 2 {
        return Err(Inapplicable("the edge does not have degree two"));
    }
    let ring = edge_ring(table, sk, edge).expect("internal edge has a full ring");
    let (r0, r1) = (ring[0], ring[1]);
    if r0.tet == r1.tet {
        return Err(Inapplicable("the edge meets a tetrahedron twice"));
    }

    // Flattening the pillow pinches its far rim onto itself, so the move only
    // returns the same manifold when the rim is embedded: the two far edges
    // must be distinct, not both on the boundary, and neither squashed pair of
    // faces may already be glued to each other.  A two-tetrahedron component
    // would vanish outright.
    let far0 = sk.edge_of(r0.tet, r0.enter, r0.exit);
    let far1 = sk.edge_of(r1.tet, r1.enter, r1.exit);
    if far0 == far1 {
        return Err(Inapplicable("the far edges of the pillow are identified"));
    }
    if sk.edge_classes[far0].boundary && sk.edge_classes[far1].boundary {
        return Err(Inapplicable("both far edges lie on the boundary"));
    }
    for (fa, fb) in [(r0.n, r1.n), (r0.s, r1.s)] {
        if let Some(g) = table.gluing(r0.tet, fa) {
            if (g.tet, g.perm.image(fa)) == (r1.tet, fb) {
                return Err(Inapplicable("a squashed pair of faces is already glued"));
            }
        }
    }
    if sk.component_tets()[sk.component[r0.tet]].len() == 2 {
        return Err(Inapplicable("the pillow is a whole component"));
    }

    // The two ring gluings agree on the edge and between them fix a unique
    // correspondence of all four corners; flattening identifies each face of
    // the first tetrahedron with its counterpart in the second.
    let rho = table.gluing(r0.tet, r0.exit).expect("ring gluing").perm;
    debug_assert_eq!((rho.image(r0.n), rho.image(r0.s)), (r1.n, r1.s));
    let mut wires = HashMap::new();
    wires.insert((r0.tet, r0.n), ((r1.tet, r1.n), rho));
    wires.insert((r1.tet, r1.n), ((r0.tet, r0.n), rho.inverse()));
    wires.insert((r0.tet, r0.s), ((r1.tet, r1.s), rho));
    wires.insert((r1.tet, r1.s), ((r0.tet, r0.s), rho.inverse()));
    guard_result(sk, squash(table, &[r0.tet, r1.tet], &wires)?)
}

// ---------------------------------------------------------------------------
// boundary moves

/// Remove a tetrahedron that meets the boundary in one, two or three faces,
/// when doing so peels a collar off rather than tearing anything.
pub fn shell_boundary(table: &GluingTable, tet: usize) -> Result<GluingTable, MoveError> {
    let sk = compute_skeleton(table);
    shell_boundary_with(table, &sk, tet)
}

pub(crate) fn shell_boundary_with(
    table: &GluingTable,
    sk: &Skeleton,
    tet: usize,
) -> Result<GluingTable, MoveError> {
    if tet >= table.tets() {
        return Err(MoveError::BadTet(tet));
    }
    let bdry: Vec<u8> = (0..4u8).filter(|&f| table.is_boundary(tet, f)).collect();
    match bdry.len() {
        0 => return Err(Inapplicable("the tetrahedron does not touch the boundary")),
        4 => return Err(Inapplicable("the tetrahedron is a whole component")),
        3 => {} // attached along a single face; peeling is always safe
        2 => {
            // Attached along two faces: undoing a layering.  The two inner
            // faces must be distinct in the manifold, and the edge between
            // them must not already sit on the boundary.
            let inner: Vec<u8> = (0..4u8).filter(|f| !bdry.contains(f)).collect();
            let g = table.gluing(tet, inner[0]).expect("inner face");
            if g.tet == tet && g.perm.image(inner[0]) == inner[1] {
                return Err(Inapplicable("the two inner faces are glued to each other"));
            }
            let hinge = sk.edge_of(tet, bdry[0], bdry[1]);
            if sk.edge_classes[hinge].boundary {
                return Err(Inapplicable("the hinge edge already sits on the boundary"));
            }
        }
        1 => {
            // Attached along three faces around an apex: undoing a cone.  The
            // apex must be interior, and the three inner faces and the three
            // edges through the apex must all stay distinct.
            let apex = bdry[0];
            let vc = sk.vertex_class[4 * tet + apex as usize];
            if sk.vertex_classes[vc].boundary {
                return Err(Inapplicable("the apex vertex touches the boundary"));
            }
            let inner: Vec<u8> = (0..4u8).filter(|&f| f != apex).collect();
            for (i, &fi) in inner.iter().enumerate() {
                let g = table.gluing(tet, fi).expect("inner face");
                for &fj in &inner[i + 1..] {
                    if g.tet == tet && g.perm.image(fi) == fj {
                        return Err(Inapplicable("two inner faces are glued to each other"));
                    }
                }
            }
            let spokes = [
                sk.edge_of(tet, apex, inner[0]),
                sk.edge_of(tet, apex, inner[1]),
                sk.edge_of(tet, apex, inner[2]),
            ];
            if spokes[0] == spokes[1] || spokes[0] == spokes[2] || spokes[1] == spokes[2] {
                return Err(Inapplicable("two edges through the apex are identified"));
            }
        }
        _ => unreachable!(),
    }
    guard_result(sk, rebuild(table, &[tet], 0, &HashMap::new(), &[]))
}

/// Cut along an internal face that meets the boundary in exactly two of its
/// three edge positions, opening the manifold like a book.  Size unchanged.
pub fn book_open(table: &GluingTable, tet: usize, face: u8) -> Result<GluingTable, MoveError> {
    let sk = compute_skeleton(table);
    book_open_with(table, &sk, tet, face)
}

pub(crate) fn book_open_with(
    table: &GluingTable,
    sk: &Skeleton,
    tet: usize,
    face: u8,
) -> Result<GluingTable, MoveError> {
    if tet >= table.tets() {
        return Err(MoveError::BadTet(tet));
    }
    if face >= 4 {
        return Err(MoveError::BadFace(tet, face));
    }
    if table.is_boundary(tet, face) {
        return Err(Inapplicable("the face is already boundary"));
    }
    let on_boundary = sk
        .face_edges(tet, face)
        .iter()
        .filter(|&&e| sk.edge_classes[e].boundary)
        .count();
    if on_boundary != 2 {
        return Err(Inapplicable(
            "the face must touch the boundary along exactly two edges",
        ));
    }
    let mut out = table.clone();
    out.unglue(tet, face);
    guard_result(sk, out)
}

/// Fold the two boundary faces along a boundary edge onto each other,
/// closing a book opened by [`book_open`].  Size unchanged.
pub fn book_close(table: &GluingTable, edge: usize) -> Result<GluingTable, MoveError> {
    let sk = compute_skeleton(table);
    book_close_with(table, &sk, edge)
}

pub(crate) fn book_close_with(
    table: &GluingTable,
    sk: &Skeleton,
    edge: usize,
) -> Result<GluingTable, MoveError> {
    let Some(cls) = sk.edge_classes.get(edge) else {
        return Err(MoveError::BadEdge(edge));
    };
    if !cls.boundary {
        return Err(Inapplicable("the edge is internal"));
    }
    if !cls.valid {
        return Err(Inapplicable("the edge is glued to itself in reverse"));
    }
    // The two boundary faces along the edge, each with the edge's endpoints
    // written in the class direction so the fold matches them head to head.
    let mut sides: Vec<(usize, u8, u8, u8)> = Vec::new();
    for &(t, es, sign) in &cls.slots {
        let (mut a, mut b) = EDGE_VERTS[es as usize];
        if sign < 0 {
            (a, b) = (b, a);
        }
        let (c, d) = other_two(a, b);
        for f in [c, d] {
            if table.is_boundary(t, f) {
                sides.push((t, f, a, b));
            }
        }
    }
    if sides.len() != 2 {
        return Err(Inapplicable(
            "the edge does not lie on exactly two boundary faces",
        ));
    }
    let (t1, f1, a1, b1) = sides[0];
    let (t2, f2, a2, b2) = sides[1];
    if (t1, f1) == (t2, f2) {
        return Err(Inapplicable("both boundary sides are the same face"));
    }
    // An arbitrary fold of two boundary faces is surgery, not simplification:
    // folding two faces of a ball around a shared edge yields a solid torus.
    // The fold only undoes a book opening when the far corners are distinct
    // vertices and neither pair of side edges is already identified.
    let o1 = 6 - a1 - b1 - f1;
    let o2 = 6 - a2 - b2 - f2;
    if sk.vertex_class[4 * t1 + o1 as usize] == sk.vertex_class[4 * t2 + o2 as usize] {
        return Err(Inapplicable("the folded corners meet at the same vertex"));
    }
    if sk.edge_of(t1, a1, o1) == sk.edge_of(t2, a2, o2)
        || sk.edge_of(t1, b1, o1) == sk.edge_of(t2, b2, o2)
    {
        return Err(Inapplicable("a folded pair of edges is already identified"));
    }
    let mut img = [0u8; 4];
    img[a1 as usize] = a2;
    img[b1 as usize] = b2;
    img[f1 as usize] = f2;
    img[(6 - a1 - b1 - f1) as usize] = 6 - a2 - b2 - f2;
    let mut out = table.clone();
    out.glue(t1, f1, Gluing { tet: t2, perm: Perm4::from_images(img) })
        .map_err(|_| Inapplicable("the fold collides with an existing gluing"))?;
    guard_result(sk, out)
}

// ---------------------------------------------------------------------------
// the driver

/// How many speculative 2-3 moves the driver may stack before it must find a
/// net reduction.
const JIGGLE_DEPTH: usize = 2;

/// Shrink a triangulation by the move priority described in the module notes.
/// The result never has more tetrahedra than the input, and a given input
/// always produces the same output.
pub fn greedy_simplify(table: &GluingTable) -> GluingTable {
    greedy_simplify_logged(table).0
}

/// [`greedy_simplify`], also returning the committed moves in order.  Each
/// recorded move is indexed against the table produced by the moves before
/// it, so replaying them with [`apply_move`] reproduces the result.
pub fn greedy_simplify_logged(table: &GluingTable) -> (GluingTable, Vec<Move>) {
    let mut cur = table.clone();
    let mut log = Vec::new();
    loop {
        if let Some((next, mv)) = reduce_once(&cur) {
            log.push(mv);
            cur = next;
            continue;
        }
        match jiggle(&cur, JIGGLE_DEPTH) {
            Some((next, moves)) => {
                log.extend(moves);
                cur = next;
            }
            None => return (cur, log),
        }
    }
}

/// The first reducing move in priority order, or `None` at a local minimum.
fn reduce_once(table: &GluingTable) -> Option<(GluingTable, Move)> {
    let sk = compute_skeleton(table);
    for edge in 0..sk.edge_classes.len() {
        if let Ok(next) = collapse_edge_with(table, &sk, edge) {
            return Some((next, Move::CollapseEdge { edge }));
        }
    }
    for edge in 0..sk.edge_classes.len() {
        if let Ok(next) = pachner_32_with(table, &sk, edge) {
            return Some((next, Move::Pachner32 { edge }));
        }
    }
    for edge in 0..sk.edge_classes.len() {
        if let Ok(next) = two_zero_with(table, &sk, edge) {
            return Some((next, Move::TwoZero { edge }));
        }
    }
    for tet in 0..table.tets() {
        if let Ok(next) = shell_boundary_with(table, &sk, tet) {
            return Some((next, Move::ShellBoundary { tet }));
        }
    }
    None
}

/// Escape a local minimum: layer a 2-3 move, follow it with every 3-2 that
/// does not simply undo it, reduce greedily, and keep the first outcome that
/// beats the minimum.  With `depth` left over, also try stacking another 2-3
/// before giving up on this face.
fn jiggle(table: &GluingTable, depth: usize) -> Option<(GluingTable, Vec<Move>)> {
    if depth == 0 {
        return None;
    }
    let target = table.tets();
    for tet in 0..table.tets() {
        for face in 0..4u8 {
            let Ok(up) = pachner_23(table, tet, face) else {
                continue;
            };
            let sk_up = compute_skeleton(&up);
            let central = sk_up.edge_of(up.tets() - 3, 0, 1);
            for edge in 0..sk_up.edge_classes.len() {
                if edge == central {
                    continue;
                }
                let Ok(down) = pachner_32_with(&up, &sk_up, edge) else {
                    continue;
                };
                let mut moves = vec![Move::Pachner23 { tet, face }, Move::Pachner32 { edge }];
                let mut cur = down;
                while let Some((next, mv)) = reduce_once(&cur) {
                    moves.push(mv);
                    cur = next;
                }
                if cur.tets() < target {
                    return Some((cur, moves));
                }
            }
            if depth > 1 {
                if let Some((deeper, mvs)) = jiggle(&up, depth - 1) {
                    if deeper.tets() < target {
                        let mut moves = vec![Move::Pachner23 { tet, face }];
                        moves.extend(mvs);
                        return Some((deeper, moves));
                    }
                }
            }
        }
    }
    None
}
