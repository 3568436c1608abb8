//! Naive cell-class computation: vertex, edge and face classes extracted by
//! breadth-first sweeps over the gluing relations, with edge orientations
//! carried along each walk.  Deliberately avoids the production union-find.

use dodeca::perm::{edge_index, face_vertices, EDGE_VERTS};
use dodeca::tri::GluingTable;

pub(crate) struct Cells {
    pub vertex_class: Vec<usize>, // 4t corner slots
    pub vertex_count: usize,
    pub edge_class: Vec<usize>, // 6t edge slots
    pub edge_sign: Vec<i64>,    // +1 / -1 relative to the class rep
    pub edge_rep: Vec<usize>,   // class -> rep slot
    pub face_rep: Vec<(usize, u8)>,
}

impl Cells {
    pub fn compute(table: &GluingTable) -> Cells {
        let n = table.tets();

        // Signed edge relations: gluing (t, f) identifies each edge {a, b}
        // of face f with {perm a, perm b} of the partner, reversing
        // orientation exactly when the images come out in descending order.
        let mut edge_rel: Vec<Vec<(usize, i64)>> = vec![Vec::new(); 6 * n];
        let mut vert_rel: Vec<Vec<usize>> = vec![Vec::new(); 4 * n];
        for t in 0..n {
            for f in 0..4u8 {
                let Some(g) = table.gluing(t, f) else { continue };
                let vs = face_vertices(f);
                for i in 0..3 {
                    let v = vs[i];
                    let pv = g.perm.image(v);
                    vert_rel[4 * t + v as usize].push(4 * g.tet + pv as usize);
                    vert_rel[4 * g.tet + pv as usize].push(4 * t + v as usize);
                    for j in i + 1..3 {
                        let w = vs[j]; // v < w
                        let pw = g.perm.image(w);
                        let sign = if pv < pw { 1 } else { -1 };
                        let a = 6 * t + edge_index(v, w);
                        let b = 6 * g.tet + edge_index(pv.min(pw), pv.max(pw));
                        edge_rel[a].push((b, sign));
                        edge_rel[b].push((a, sign));
                    }
                }
            }
        }

        // Vertex classes by plain breadth-first closure.
        let mut vertex_class = vec![usize::MAX; 4 * n];
        let mut vertex_count = 0;
        for start in 0..4 * n {
            if vertex_class[start] != usize::MAX {
                continue;
            }
            let id = vertex_count;
            vertex_count += 1;
            let mut queue = vec![start];
            vertex_class[start] = id;
            while let Some(s) = queue.pop() {
                for &next in &vert_rel[s] {
                    if vertex_class[next] == usize::MAX {
                        vertex_class[next] = id;
                        queue.push(next);
                    }
                }
            }
        }

        // Edge classes, carrying the orientation sign along each walk.  A
        // revisit with the opposite sign means the edge is identified with
        // itself in reverse; the chain complex is meaningless then, so fail
        // loudly rather than return nonsense.
        let mut edge_class = vec![usize::MAX; 6 * n];
        let mut edge_sign = vec![0i64; 6 * n];
        let mut edge_rep = Vec::new();
        for start in 0..6 * n {
            if edge_class[start] != usize::MAX {
                continue;
            }
            let id = edge_rep.len();
            edge_rep.push(start);
            let mut queue = vec![start];
            edge_class[start] = id;
            edge_sign[start] = 1;
            while let Some(s) = queue.pop() {
                for &(next, rel) in &edge_rel[s] {
                    let sign = edge_sign[s] * rel;
                    if edge_class[next] == usize::MAX {
                        edge_class[next] = id;
                        edge_sign[next] = sign;
                        queue.push(next);
                    } else {
                        assert_eq!(
                            edge_sign[next], sign,
                            "edge slot {next} identified with itself in reverse"
                        );
                    }
                }
            }
        }

        // Face classes are just the pairing itself.
        let mut face_seen = vec![false; 4 * n];
        let mut face_rep = Vec::new();
        for t in 0..n {
            for f in 0..4u8 {
                if face_seen[4 * t + f as usize] {
                    continue;
                }
                face_seen[4 * t + f as usize] = true;
                if let Some(g) = table.gluing(t, f) {
                    face_seen[4 * g.tet + g.partner_face(f) as usize] = true;
                }
                face_rep.push((t, f));
            }
        }

        Cells {
            vertex_class,
            vertex_count,
            edge_class,
            edge_sign,
            edge_rep,
            face_rep,
        }
    }

    /// Endpoints (tail, head) of an edge class as vertex classes, read off
    /// the representative slot in its min-to-max orientation.
    pub fn edge_endpoints(&self, class: usize) -> (usize, usize) {
        let slot = self.edge_rep[class];
        let (t, e) = (slot / 6, slot % 6);
        let (a, b) = EDGE_VERTS[e];
        (
            self.vertex_class[4 * t + a as usize],
            self.vertex_class[4 * t + b as usize],
        )
    }
}
