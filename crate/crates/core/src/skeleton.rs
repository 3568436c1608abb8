//! Vertex, edge and face identifications induced by the face pairings, plus
//! the derived data everything downstream leans on: degrees, boundary flags,
//! edge orientation classes, vertex-link surfaces, orientability.
//!
//! Identifications are computed with union-find; edge classes additionally
//! carry a parity bit so that an edge identified with itself in reverse is
//! detected (such an edge makes the triangulation invalid).

use crate::perm::{edge_index, face_vertices};
use crate::tri::GluingTable;

pub(crate) struct ParityUf {
    parent: Vec<usize>,
    rank: Vec<u8>,
    parity: Vec<u8>, // parity relative to parent
    conflict: Vec<bool>,
}

impl ParityUf {
    pub(crate) fn new(n: usize) -> ParityUf {
        ParityUf {
            parent: (0..n).collect(),
            rank: vec![0; n],
            parity: vec![0; n],
            conflict: vec![false; n],
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> (usize, u8) {
        if self.parent[x] == x {
            return (x, 0);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] ^= p;
        (root, self.parity[x])
    }

    /// Join `a` and `b` subject to parity(a) ^ parity(b) == rel.
    pub(crate) fn union(&mut self, a: usize, b: usize, rel: u8) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != rel {
                self.conflict[ra] = true;
            }
            return;
        }
        let (big, small, small_parity) = if self.rank[ra] >= self.rank[rb] {
            (ra, rb, pa ^ pb ^ rel)
        } else {
            (rb, ra, pa ^ pb ^ rel)
        };
        self.parent[small] = big;
        self.parity[small] = small_parity;
        self.conflict[big] |= self.conflict[small];
        if self.rank[big] == self.rank[small] {
            self.rank[big] += 1;
        }
    }

    /// True if some union in `x`'s component demanded inconsistent parities.
    pub(crate) fn conflicted(&mut self, x: usize) -> bool {
        let (root, _) = self.find(x);
        self.conflict[root]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkKind {
    Sphere,
    Disc,
    Other { euler: i64, closed: bool },
}

#[derive(Clone, Debug)]
pub struct VertexClass {
    /// Corner slots (tet, vertex), in slot order.
    pub slots: Vec<(usize, u8)>,
    pub boundary: bool,
    pub link: LinkKind,
}

#[derive(Clone, Debug)]
pub struct EdgeClass {
    /// Edge slots (tet, edge index 0..6) with orientation sign relative to the
    /// class representative; in slot order.
    pub slots: Vec<(usize, u8, i8)>,
    pub boundary: bool,
    /// False iff the edge is identified with itself orientation-reversed.
    pub valid: bool,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.slots.len()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FaceClass {
    pub rep: (usize, u8),
    pub partner: Option<(usize, u8)>,
}

impl FaceClass {
    pub fn boundary(&self) -> bool {
        self.partner.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct Skeleton {
    tets: usize,
    pub vertex_class: Vec<usize>, // 4t corner slots -> class
    pub vertex_classes: Vec<VertexClass>,
    pub edge_class: Vec<usize>, // 6t edge slots -> class
    pub edge_sign: Vec<i8>,     // slot orientation relative to class rep
    pub edge_classes: Vec<EdgeClass>,
    pub face_class: Vec<usize>, // 4t face slots -> class
    pub face_classes: Vec<FaceClass>,
    pub connected: bool,
    pub orientable: bool,
    /// Component index per tetrahedron, numbered by first appearance.
    pub component: Vec<usize>,
    pub components: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriProperties {
    pub tets: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub boundary_faces: usize,
    pub closed: bool,
    pub connected: bool,
    pub orientable: bool,
    pub valid: bool,
    pub euler: i64,
}

pub fn compute_skeleton(table: &GluingTable) -> Skeleton {
    let n = table.tets();

    // --- face classes ---
    let mut face_class = vec![usize::MAX; 4 * n];
    let mut face_classes = Vec::new();
    for t in 0..n {
        for f in 0..4u8 {
            let slot = 4 * t + f as usize;
            if face_class[slot] != usize::MAX {
                continue;
            }
            let id = face_classes.len();
            face_class[slot] = id;
            match table.gluing(t, f) {
                None => face_classes.push(FaceClass {
                    rep: (t, f),
                    partner: None,
                }),
                Some(g) => {
                    let pf = g.partner_face(f);
                    face_class[4 * g.tet + pf as usize] = id;
                    face_classes.push(FaceClass {
                        rep: (t, f),
                        partner: Some((g.tet, pf)),
                    });
                }
            }
        }
    }

    // --- edge classes (with orientation parity) ---
    let mut uf = ParityUf::new(6 * n);
    for t in 0..n {
        for f in 0..4u8 {
            if let Some(g) = table.gluing(t, f) {
                let vs = face_vertices(f);
                for i in 0..3 {
                    for j in i + 1..3 {
                        let (a, b) = (vs[i], vs[j]); // a < b
                        let (pa, pb) = (g.perm.image(a), g.perm.image(b));
                        let rel = u8::from(pa > pb);
                        uf.union(
                            6 * t + edge_index(a, b),
                            6 * g.tet + edge_index(pa, pb),
                            rel,
                        );
                    }
                }
            }
        }
    }
    let mut edge_class = vec![usize::MAX; 6 * n];
    let mut edge_sign = vec![0i8; 6 * n];
    let mut edge_classes: Vec<EdgeClass> = Vec::new();
    let mut edge_root_id = vec![usize::MAX; 6 * n];
    for slot in 0..6 * n {
        let (root, parity) = uf.find(slot);
        let id = if edge_root_id[root] == usize::MAX {
            let id = edge_classes.len();
            edge_root_id[root] = id;
            edge_classes.push(EdgeClass {
                slots: Vec::new(),
                boundary: false,
                valid: !uf.conflict[root],
            });
            id
        } else {
            edge_root_id[root]
        };
        let sign = if parity == 0 { 1 } else { -1 };
        edge_class[slot] = id;
        edge_sign[slot] = sign;
        edge_classes[id]
            .slots
            .push((slot / 6, (slot % 6) as u8, sign));
    }
    // Boundary edges: an edge lying in an unpaired face.
    for t in 0..n {
        for f in 0..4u8 {
            if table.is_boundary(t, f) {
                let vs = face_vertices(f);
                for i in 0..3 {
                    for j in i + 1..3 {
                        let e = edge_class[6 * t + edge_index(vs[i], vs[j])];
                        edge_classes[e].boundary = true;
                    }
                }
            }
        }
    }

    // --- vertex classes ---
    let mut vuf = ParityUf::new(4 * n);
    for t in 0..n {
        for f in 0..4u8 {
            if let Some(g) = table.gluing(t, f) {
                for &v in &face_vertices(f) {
                    vuf.union(4 * t + v as usize, 4 * g.tet + g.perm.image(v) as usize, 0);
                }
            }
        }
    }
    let mut vertex_class = vec![usize::MAX; 4 * n];
    let mut vertex_classes: Vec<VertexClass> = Vec::new();
    let mut vertex_root_id = vec![usize::MAX; 4 * n];
    for slot in 0..4 * n {
        let (root, _) = vuf.find(slot);
        let id = if vertex_root_id[root] == usize::MAX {
            let id = vertex_classes.len();
            vertex_root_id[root] = id;
            vertex_classes.push(VertexClass {
                slots: Vec::new(),
                boundary: false,
                link: LinkKind::Other {
                    euler: 0,
                    closed: true,
                },
            });
            id
        } else {
            vertex_root_id[root]
        };
        vertex_class[slot] = id;
        vertex_classes[id].slots.push((slot / 4, (slot % 4) as u8));
    }
    for t in 0..n {
        for f in 0..4u8 {
            if table.is_boundary(t, f) {
                for &v in &face_vertices(f) {
                    vertex_classes[vertex_class[4 * t + v as usize]].boundary = true;
                }
            }
        }
    }

    // --- vertex links ---
    // The link of a vertex class is tiled by one triangle per corner slot.
    // Sides of these triangles are (tet, v, f) with f != v; they pair up
    // across internal face gluings.  Link vertices are (tet, v, e) with
    // v in e, identified through the same gluings.
    let side_idx = |t: usize, v: u8, f: u8| -> usize { 16 * t + 4 * v as usize + f as usize };
    let lv_idx = |t: usize, v: u8, e: usize| -> usize { 24 * t + 6 * v as usize + e };
    let mut link_vert_uf = ParityUf::new(24 * n);
    let mut side_glued = vec![false; 16 * n];
    for t in 0..n {
        for f in 0..4u8 {
            if let Some(g) = table.gluing(t, f) {
                let pf = g.partner_face(f);
                for &v in &face_vertices(f) {
                    let pv = g.perm.image(v);
                    side_glued[side_idx(t, v, f)] = true;
                    side_glued[side_idx(g.tet, pv, pf)] = true;
                    for &w in &face_vertices(f) {
                        if w == v {
                            continue;
                        }
                        let pw = g.perm.image(w);
                        link_vert_uf.union(
                            lv_idx(t, v, edge_index(v, w)),
                            lv_idx(g.tet, pv, edge_index(pv, pw)),
                            0,
                        );
                    }
                }
            }
        }
    }
    // Count link faces, edges, vertices per vertex class.
    let nv = vertex_classes.len();
    let mut link_faces = vec![0i64; nv];
    let mut link_edge_slots = vec![0i64; nv];
    let mut link_edge_bdry = vec![0i64; nv];
    let mut link_vert_seen: Vec<std::collections::BTreeSet<usize>> =
        vec![std::collections::BTreeSet::new(); nv];
    for t in 0..n {
        for v in 0..4u8 {
            let class = vertex_class[4 * t + v as usize];
            link_faces[class] += 1;
            for f in 0..4u8 {
                if f == v {
                    continue;
                }
                link_edge_slots[class] += 1;
                if !side_glued[side_idx(t, v, f)] {
                    link_edge_bdry[class] += 1;
                }
                // The two link-vertices on this side.
            }
            for w in 0..4u8 {
                if w == v {
                    continue;
                }
                let (root, _) = link_vert_uf.find(lv_idx(t, v, edge_index(v, w)));
                link_vert_seen[class].insert(root);
            }
        }
    }
    for (class, vc) in vertex_classes.iter_mut().enumerate() {
        let f = link_faces[class];
        let e = (link_edge_slots[class] - link_edge_bdry[class]) / 2 + link_edge_bdry[class];
        let v = link_vert_seen[class].len() as i64;
        let euler = v - e + f;
        let closed = link_edge_bdry[class] == 0;
        vc.link = match (closed, euler) {
            (true, 2) => LinkKind::Sphere,
            (false, 1) => LinkKind::Disc,
            _ => LinkKind::Other { euler, closed },
        };
    }

    // --- connectivity and orientability ---
    let mut tet_uf = ParityUf::new(n.max(1));
    for t in 0..n {
        for f in 0..4u8 {
            if let Some(g) = table.gluing(t, f) {
                // Consistent orientations satisfy s_t * s_partner = -sign(perm).
                let rel = u8::from(g.perm.sign() > 0);
                tet_uf.union(t, g.tet, rel);
            }
        }
    }
    let mut component = vec![usize::MAX; n];
    let mut comp_count = 0usize;
    let mut orientable = true;
    let mut comp_root_id = vec![usize::MAX; n.max(1)];
    for t in 0..n {
        let (root, _) = tet_uf.find(t);
        if comp_root_id[root] == usize::MAX {
            comp_root_id[root] = comp_count;
            comp_count += 1;
            if uf_conflicted(&mut tet_uf, root) {
                orientable = false;
            }
        }
        component[t] = comp_root_id[root];
    }
    let connected = comp_count <= 1;

    Skeleton {
        tets: n,
        vertex_class,
        vertex_classes,
        edge_class,
        edge_sign,
        edge_classes,
        face_class,
        face_classes,
        connected,
        orientable,
        component,
        components: comp_count,
    }
}

fn uf_conflicted(uf: &mut ParityUf, root: usize) -> bool {
    uf.conflict[root]
}

impl Skeleton {
    pub fn tets(&self) -> usize {
        self.tets
    }

    /// Edge class of the edge {a,b} of tetrahedron `t`.
    pub fn edge_of(&self, t: usize, a: u8, b: u8) -> usize {
        self.edge_class[6 * t + edge_index(a, b)]
    }

    /// Edge classes of the three edges of face `f` of tetrahedron `t`.
    pub fn face_edges(&self, t: usize, f: u8) -> [usize; 3] {
        let vs = face_vertices(f);
        [
            self.edge_of(t, vs[0], vs[1]),
            self.edge_of(t, vs[1], vs[2]),
            self.edge_of(t, vs[0], vs[2]),
        ]
    }

    pub fn all_edges_valid(&self) -> bool {
        self.edge_classes.iter().all(|e| e.valid)
    }

    pub fn all_links_valid(&self) -> bool {
        self.vertex_classes
            .iter()
            .all(|v| matches!(v.link, LinkKind::Sphere | LinkKind::Disc))
    }

    pub fn is_valid(&self) -> bool {
        self.all_edges_valid() && self.all_links_valid()
    }

    /// Tetrahedra of each connected component, in index order.
    pub fn component_tets(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.components];
        for t in 0..self.tets {
            out[self.component[t]].push(t);
        }
        out
    }
}

pub fn properties(table: &GluingTable) -> TriProperties {
    let sk = compute_skeleton(table);
    properties_from(table, &sk)
}

pub fn properties_from(table: &GluingTable, sk: &Skeleton) -> TriProperties {
    let tets = table.tets();
    let vertices = sk.vertex_classes.len();
    let edges = sk.edge_classes.len();
    let faces = sk.face_classes.len();
    TriProperties {
        tets,
        vertices,
        edges,
        faces,
        boundary_faces: table.boundary_faces(),
        closed: table.is_closed(),
        connected: sk.connected,
        orientable: sk.orientable,
        valid: sk.is_valid(),
        euler: vertices as i64 - edges as i64 + faces as i64 - tets as i64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm4;
    use crate::tri::{parse_tri, Gluing, GluingTable};

    #[test]
    fn lone_tetrahedron() {
        let t = GluingTable::new(1);
        let p = properties(&t);
        assert_eq!(
            (p.vertices, p.edges, p.faces, p.tets),
            (4, 6, 4, 1)
        );
        assert_eq!(p.euler, 4 - 6 + 4 - 1);
        assert!(p.valid && p.connected && p.orientable && !p.closed);
    }

    #[test]
    fn reversed_edge_detected() {
        // Glue face 123 of a single tetrahedron to its face 023 so that the
        // shared edge {2,3} comes back reversed: 1->0, 2->3, 3->2.
        let mut t = GluingTable::new(1);
        t.glue(
            0,
            0,
            Gluing {
                tet: 0,
                perm: Perm4::from_images([1, 0, 3, 2]),
            },
        )
        .unwrap();
        let sk = compute_skeleton(&t);
        assert!(!sk.all_edges_valid());
        assert!(!properties(&t).valid);
    }

    #[test]
    fn two_tet_ball() {
        // Two tetrahedra glued along one face: a 3-ball.
        let table = parse_tri("tets 2\n1:123 bdry bdry bdry\n0:123 bdry bdry bdry").unwrap();
        let p = properties(&table);
        assert_eq!((p.vertices, p.edges, p.faces, p.tets), (5, 9, 7, 2));
        assert_eq!(p.euler, 1); // ball: chi = 1
        assert!(p.valid && p.connected && p.orientable && !p.closed);
        let sk = compute_skeleton(&table);
        assert!(sk
            .vertex_classes
            .iter()
            .all(|v| v.link == LinkKind::Disc || v.link == LinkKind::Sphere));
    }
}
