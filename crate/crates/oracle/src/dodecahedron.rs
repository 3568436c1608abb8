//! The sixty-tetrahedron triangulation of the Weber-Seifert dodecahedral
//! space, assembled from actual coordinates.
//!
//! A regular dodecahedron is coned: each pentagonal face is fanned into five
//! triangles from its centroid, and each triangle is coned to the centre of
//! the solid, giving five tetrahedra per face.  Opposite faces of the
//! dodecahedron are then identified with a three-tenths turn.  Because
//! opposite pentagons sit offset by a tenth of a turn, the projection plus
//! the twist lands vertices exactly on vertices — the code checks this
//! numerically rather than trusting the arithmetic on paper.
//!
//! Everything here works in floating point and finishes by matching points
//! against the vertex list with a tolerance far finer than any true vertex
//! separation, so any labelling slip panics instead of producing a plausible
//! but wrong gluing table.  The twist direction is a free choice; the two
//! choices give mirror triangulations that no downstream invariant of ours
//! distinguishes.

use dodeca::perm::Perm4;
use dodeca::tri::{Gluing, GluingTable};

type V3 = [f64; 3];

fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(s: f64, a: V3) -> V3 {
    [s * a[0], s * a[1], s * a[2]]
}

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize(a: V3) -> V3 {
    scale(1.0 / dot(a, a).sqrt(), a)
}

fn dist2(a: V3, b: V3) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    dot(d, d)
}

/// Rotate `v` about the unit axis `n` by `theta` (Rodrigues' formula).
fn rotate(n: V3, theta: f64, v: V3) -> V3 {
    let (sin, cos) = theta.sin_cos();
    add(
        add(scale(cos, v), scale(sin, cross(n, v))),
        scale(dot(n, v) * (1.0 - cos), n),
    )
}

/// The twenty dodecahedron vertices in the classic golden-ratio coordinates.
fn vertices() -> Vec<V3> {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let inv = 1.0 / phi;
    let mut out = Vec::with_capacity(20);
    for sx in [-1.0, 1.0] {
        for sy in [-1.0, 1.0] {
            for sz in [-1.0, 1.0] {
                out.push([sx, sy, sz]);
            }
        }
    }
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            out.push([0.0, s1 * inv, s2 * phi]);
            out.push([s1 * inv, s2 * phi, 0.0]);
            out.push([s1 * phi, 0.0, s2 * inv]);
        }
    }
    assert_eq!(out.len(), 20);
    out
}

/// Outward face normals: one per pentagonal face, twelve in all.
fn face_normals() -> Vec<V3> {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let mut out = Vec::with_capacity(12);
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            out.push([0.0, s1 * phi, s2]);
            out.push([s1 * phi, s2, 0.0]);
            out.push([s1, 0.0, s2 * phi]);
        }
    }
    out
}

fn nearest(points: &[V3], p: V3) -> usize {
    let (best, d2) = points
        .iter()
        .enumerate()
        .map(|(i, &q)| (i, dist2(p, q)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    assert!(d2 < 1e-12, "point {p:?} does not land on the grid");
    best
}

/// Build the sixty-tetrahedron table.  Tetrahedron `5*face + j` is the cone,
/// from the centre of the solid, over the `j`-th fan triangle of `face`; its
/// labels are 0 at the centre, 1 at the face centroid and 2,3 on the `j`-th
/// pentagon edge, counter-clockwise seen from outside.
pub fn dodecahedral_sixty() -> GluingTable {
    let verts = vertices();
    let normals = face_normals();

    // Each pentagon: the five vertices nearest the face plane, in CCW order.
    let pentagon: Vec<Vec<usize>> = normals
        .iter()
        .map(|&n| {
            let mut ids: Vec<usize> = (0..20).collect();
            ids.sort_by(|&a, &b| dot(verts[b], n).total_cmp(&dot(verts[a], n)));
            let mut ring = ids[..5].to_vec();
            let nn = normalize(n);
            let centroid = scale(
                1.0 / 5.0,
                ring.iter().fold([0.0; 3], |acc, &v| add(acc, verts[v])),
            );
            let u = normalize(add(verts[ring[0]], scale(-1.0, centroid)));
            let w = cross(nn, u);
            ring.sort_by(|&a, &b| {
                let pa = add(verts[a], scale(-1.0, centroid));
                let pb = add(verts[b], scale(-1.0, centroid));
                f64::atan2(dot(pa, w), dot(pa, u)).total_cmp(&f64::atan2(dot(pb, w), dot(pb, u)))
            });
            ring
        })
        .collect();
    let centroids: Vec<V3> = pentagon
        .iter()
        .map(|ring| {
            scale(
                1.0 / 5.0,
                ring.iter().fold([0.0; 3], |acc, &v| add(acc, verts[v])),
            )
        })
        .collect();

    // Every pentagon edge, as an unordered vertex pair, with its two cone
    // slots (face, fan position).
    let mut edge_slots: std::collections::HashMap<(usize, usize), Vec<(usize, usize)>> =
        std::collections::HashMap::new();
    for (i, ring) in pentagon.iter().enumerate() {
        for j in 0..5 {
            let (a, b) = (ring[j], ring[(j + 1) % 5]);
            edge_slots
                .entry((a.min(b), a.max(b)))
                .or_default()
                .push((i, j));
        }
    }
    assert!(edge_slots.values().all(|v| v.len() == 2));

    let tet = |i: usize, j: usize| 5 * i + j;
    let mut out = GluingTable::new(60);
    let flip = Perm4::from_images([0, 1, 3, 2]);

    for (i, ring) in pentagon.iter().enumerate() {
        for j in 0..5 {
            // Around the fan: the face away from this triangle's leading
            // corner is shared with the next triangle of the same pentagon.
            out.glue(tet(i, j), 2, Gluing { tet: tet(i, (j + 1) % 5), perm: flip })
                .expect("fan gluing");

            // Across the pentagon edge: the face away from the centroid is
            // shared with the neighbouring cone, which walks the edge the
            // other way round.
            let (a, b) = (ring[j], ring[(j + 1) % 5]);
            let pair = edge_slots[&(a.min(b), a.max(b))].clone();
            let (i2, j2) = pair[if pair[0] == (i, j) { 1 } else { 0 }];
            debug_assert_eq!(
                (pentagon[i2][j2], pentagon[i2][(j2 + 1) % 5]),
                (b, a),
                "neighbouring pentagons disagree about their shared edge"
            );
            if out.gluing(tet(i, j), 1).is_none() {
                out.glue(tet(i, j), 1, Gluing { tet: tet(i2, j2), perm: flip })
                    .expect("side gluing");
            }

            // Across the solid: project along the face axis to the opposite
            // pentagon and turn three tenths; the checks in `nearest` insist
            // the twisted points coincide with real vertices.
            if out.gluing(tet(i, j), 0).is_some() {
                continue;
            }
            let n = normalize(normals[i]);
            let twist = |p: V3| -> V3 {
                let projected = add(p, scale(-2.0 * dot(n, p), n));
                rotate(n, 2.0 * std::f64::consts::PI * 0.3, projected)
            };
            let i2 = {
                let c = twist(centroids[i]);
                let (best, d2) = centroids
                    .iter()
                    .enumerate()
                    .map(|(k, &q)| (k, dist2(c, q)))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .unwrap();
                assert!(d2 < 1e-12, "twisted centroid misses every face");
                best
            };
            let (ga, gb) = (nearest(&verts, twist(verts[a])), nearest(&verts, twist(verts[b])));
            let pair = edge_slots[&(ga.min(gb), ga.max(gb))].clone();
            let (i2f, j2) = pair[if pair[0].0 == i2 { 0 } else { 1 }];
            assert_eq!(i2f, i2, "twisted edge is not on the opposite pentagon");
            let perm = if pentagon[i2][j2] == ga {
                Perm4::IDENTITY
            } else {
                debug_assert_eq!(pentagon[i2][j2], gb);
                flip
            };
            out.glue(tet(i, j), 0, Gluing { tet: tet(i2, j2), perm })
                .expect("twist gluing");
        }
    }
    assert!(out.is_closed());
    out.verify().expect("involution");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use dodeca::skeleton::properties;

    #[test]
    fn the_sixty_tetrahedron_table_is_a_closed_oriented_manifold() {
        let t = dodecahedral_sixty();
        let p = properties(&t);
        assert_eq!(p.tets, 60);
        assert!(p.closed && p.valid && p.connected && p.orientable);
        assert_eq!(p.euler, 0);
    }
}
