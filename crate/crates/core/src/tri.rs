//! Generalised (semi-simplicial) triangulations of compact 3-manifolds.
//!
//! A triangulation is a set of abstract tetrahedra together with an involutive
//! pairing of their faces.  Faces may be glued between two distinct tetrahedra
//! or between two *different* faces of the same tetrahedron; gluing a face to
//! itself is rejected outright, since it cannot model anything we accept as a
//! manifold.  Unpaired faces form the boundary.

use crate::perm::{face_vertices, Perm4};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TriError {
    #[error("tetrahedron index {0} out of range (have {1} tetrahedra)")]
    TetOutOfRange(usize, usize),
    #[error("face index {0} out of range")]
    FaceOutOfRange(u8),
    #[error("face {face} of tetrahedron {tet} glued to itself")]
    SelfGluing { tet: usize, face: u8 },
    #[error("face {face} of tetrahedron {tet} glued twice")]
    DuplicateGluing { tet: usize, face: u8 },
    #[error("gluings of tetrahedron {tet} face {face} and its partner disagree")]
    InvolutionConflict { tet: usize, face: u8 },
    #[error("vertex triple {0:?} does not describe a face")]
    BadFaceTriple([u8; 3]),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("triangulation has no tetrahedra")]
    Empty,
}

/// One side of a face pairing: the partner tetrahedron and the vertex map
/// onto it.  `perm` sends the labels of the tetrahedron owning the gluing to
/// the labels of `tet`; in particular it sends the glued face index to the
/// partner face index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

impl Gluing {
    #[inline]
    pub fn partner_face(&self, face: u8) -> u8 {
        self.perm.image(face)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingTable {
    glue: Vec<[Option<Gluing>; 4]>,
}

impl GluingTable {
    pub fn new(tets: usize) -> GluingTable {
        GluingTable {
            glue: vec![[None; 4]; tets],
        }
    }

    #[inline]
    pub fn tets(&self) -> usize {
        self.glue.len()
    }

    #[inline]
    pub fn gluing(&self, tet: usize, face: u8) -> Option<Gluing> {
        self.glue[tet][face as usize]
    }

    pub fn is_boundary(&self, tet: usize, face: u8) -> bool {
        self.glue[tet][face as usize].is_none()
    }

    pub fn boundary_faces(&self) -> usize {
        self.glue
            .iter()
            .flatten()
            .filter(|g| g.is_none())
            .count()
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_faces() == 0
    }

    /// Install a face pairing together with its inverse.  Rejects self-gluings
    /// and anything that would overwrite an existing pairing.
    pub fn glue(&mut self, tet: usize, face: u8, to: Gluing) -> Result<(), TriError> {
        let n = self.tets();
        if tet >= n {
            return Err(TriError::TetOutOfRange(tet, n));
        }
        if to.tet >= n {
            return Err(TriError::TetOutOfRange(to.tet, n));
        }
        if face >= 4 {
            return Err(TriError::FaceOutOfRange(face));
        }
        let back = to.perm.image(face);
        if to.tet == tet && back == face {
            return Err(TriError::SelfGluing { tet, face });
        }
        if self.glue[tet][face as usize].is_some() {
            return Err(TriError::DuplicateGluing { tet, face });
        }
        if self.glue[to.tet][back as usize].is_some() {
            return Err(TriError::DuplicateGluing {
                tet: to.tet,
                face: back,
            });
        }
        self.glue[tet][face as usize] = Some(to);
        self.glue[to.tet][back as usize] = Some(Gluing {
            tet,
            perm: to.perm.inverse(),
        });
        Ok(())
    }

    /// Remove a pairing (both directions).  No-op on boundary faces.
    pub fn unglue(&mut self, tet: usize, face: u8) {
        if let Some(g) = self.glue[tet][face as usize].take() {
            let back = g.perm.image(face);
            self.glue[g.tet][back as usize] = None;
        }
    }

    /// Check the involution property; `glue` maintains it, but tables can also
    /// be assembled from raw parts (e.g. a parser), so this is re-checkable.
    pub fn verify(&self) -> Result<(), TriError> {
        for (t, faces) in self.glue.iter().enumerate() {
            for f in 0..4u8 {
                if let Some(g) = faces[f as usize] {
                    if g.tet >= self.tets() {
                        return Err(TriError::TetOutOfRange(g.tet, self.tets()));
                    }
                    let back = g.partner_face(f);
                    if g.tet == t && back == f {
                        return Err(TriError::SelfGluing { tet: t, face: f });
                    }
                    match self.glue[g.tet][back as usize] {
                        Some(h) if h.tet == t && h.perm == g.perm.inverse() => {}
                        _ => return Err(TriError::InvolutionConflict { tet: t, face: f }),
                    }
                }
            }
        }
        Ok(())
    }

    /// Apply a relabelling: tetrahedron `t` becomes `tet_map[t]` and its
    /// vertices are renamed through `vert_map[t]`.  Used by canonical forms.
    pub fn relabelled(&self, tet_map: &[usize], vert_map: &[Perm4]) -> GluingTable {
        let n = self.tets();
        let mut out = GluingTable::new(n);
        for t in 0..n {
            for f in 0..4u8 {
                if let Some(g) = self.glue[t][f as usize] {
                    let nf = vert_map[t].image(f);
                    out.glue[tet_map[t]][nf as usize] = Some(Gluing {
                        tet: tet_map[g.tet],
                        perm: vert_map[t].inverse().then(g.perm).then(vert_map[g.tet]),
                    });
                }
            }
        }
        debug_assert!(out.verify().is_ok());
        out
    }

    /// Restrict to the tetrahedra listed in `keep` (in that order); gluings to
    /// dropped tetrahedra become boundary.
    pub fn restricted(&self, keep: &[usize]) -> GluingTable {
        let mut index = vec![usize::MAX; self.tets()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let mut out = GluingTable::new(keep.len());
        for (new, &old) in keep.iter().enumerate() {
            for f in 0..4 {
                if let Some(g) = self.glue[old][f] {
                    if index[g.tet] != usize::MAX {
                        out.glue[new][f] = Some(Gluing {
                            tet: index[g.tet],
                            perm: g.perm,
                        });
                    }
                }
            }
        }
        out
    }
}

/// One row of an explicit face-pairing description: vertices `face` of
/// tetrahedron `tet` are identified with vertices `images` of tetrahedron
/// `partner`, in order.
#[derive(Clone, Copy, Debug)]
pub struct PairingRow {
    pub tet: usize,
    pub face: [u8; 3],
    pub partner: usize,
    pub images: [u8; 3],
}

/// Assemble a gluing table from explicit rows.  Rows may describe each pairing
/// once or twice; when both directions appear they must agree.
pub fn build_table(tets: usize, rows: &[PairingRow]) -> Result<GluingTable, TriError> {
    let mut table = GluingTable::new(tets);
    if tets == 0 {
        return Err(TriError::Empty);
    }
    for row in rows {
        let perm = Perm4::from_face_map(row.face, row.images)
            .ok_or(TriError::BadFaceTriple(row.face))?;
        let mut sorted = row.face;
        sorted.sort_unstable();
        let face = match sorted {
            [1, 2, 3] => 0u8,
            [0, 2, 3] => 1,
            [0, 1, 3] => 2,
            [0, 1, 2] => 3,
            _ => return Err(TriError::BadFaceTriple(row.face)),
        };
        if row.tet >= tets {
            return Err(TriError::TetOutOfRange(row.tet, tets));
        }
        let to = Gluing {
            tet: row.partner,
            perm,
        };
        // Accept a row that restates an existing pairing exactly.
        if let Some(existing) = table.gluing(row.tet, face) {
            if existing == to {
                continue;
            }
            return Err(TriError::InvolutionConflict {
                tet: row.tet,
                face,
            });
        }
        table.glue(row.tet, face, to)?;
    }
    Ok(table)
}

// --- text format ---------------------------------------------------------
//
// Header line `tets N`, then one line per tetrahedron with four entries for
// faces 0..3 (face f is opposite vertex f).  Each entry is either `bdry` or
// `T:abc`, where T is the partner tetrahedron index and `abc` are the images
// of this face's vertices (listed in ascending order) under the gluing.

pub fn parse_tri(text: &str) -> Result<GluingTable, TriError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(TriError::Empty)?;
    let n: usize = header
        .strip_prefix("tets")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| TriError::Parse {
            line: hline,
            msg: format!("expected header `tets N`, found `{header}`"),
        })?;
    if n == 0 {
        return Err(TriError::Empty);
    }

    let mut table = GluingTable::new(n);
    let mut seen = 0usize;
    for (lineno, line) in lines {
        if seen == n {
            return Err(TriError::Parse {
                line: lineno,
                msg: "more tetrahedron lines than declared".into(),
            });
        }
        let tet = seen;
        seen += 1;
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != 4 {
            return Err(TriError::Parse {
                line: lineno,
                msg: format!("expected 4 entries, found {}", entries.len()),
            });
        }
        for (f, entry) in entries.iter().enumerate() {
            if *entry == "bdry" {
                if table.gluing(tet, f as u8).is_some() {
                    return Err(TriError::Parse {
                        line: lineno,
                        msg: format!("face {f} marked bdry but already glued from the other side"),
                    });
                }
                continue;
            }
            let (tname, vname) = entry.split_once(':').ok_or_else(|| TriError::Parse {
                line: lineno,
                msg: format!("bad entry `{entry}` (want `T:abc` or `bdry`)"),
            })?;
            let partner: usize = tname.parse().map_err(|_| TriError::Parse {
                line: lineno,
                msg: format!("bad tetrahedron index `{tname}`"),
            })?;
            let digits: Vec<u8> = vname
                .bytes()
                .map(|b| b.wrapping_sub(b'0'))
                .collect();
            if digits.len() != 3 || digits.iter().any(|&d| d > 3) {
                return Err(TriError::Parse {
                    line: lineno,
                    msg: format!("bad vertex images `{vname}`"),
                });
            }
            let src = face_vertices(f as u8);
            let perm = Perm4::from_face_map(src, [digits[0], digits[1], digits[2]]).ok_or_else(
                || TriError::Parse {
                    line: lineno,
                    msg: format!("vertex images `{vname}` repeat a label"),
                },
            )?;
            let to = Gluing { tet: partner, perm };
            match table.gluing(tet, f as u8) {
                Some(existing) if existing == to => {}
                Some(_) => {
                    return Err(TriError::InvolutionConflict {
                        tet,
                        face: f as u8,
                    })
                }
                None => table.glue(tet, f as u8, to).map_err(|e| TriError::Parse {
                    line: lineno,
                    msg: e.to_string(),
                })?,
            }
        }
    }
    if seen != n {
        return Err(TriError::Parse {
            line: 0,
            msg: format!("declared {n} tetrahedra but found {seen}"),
        });
    }
    Ok(table)
}

pub fn write_tri(table: &GluingTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "tets {}", table.tets());
    for t in 0..table.tets() {
        let mut entries = Vec::with_capacity(4);
        for f in 0..4u8 {
            match table.gluing(t, f) {
                None => entries.push("bdry".to_string()),
                Some(g) => {
                    let src = face_vertices(f);
                    let img: String = src
                        .iter()
                        .map(|&v| char::from(b'0' + g.perm.image(v)))
                        .collect();
                    entries.push(format!("{}:{}", g.tet, img));
                }
            }
        }
        let _ = writeln!(out, "{}", entries.join(" "));
    }
    out
}
