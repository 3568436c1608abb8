//! Canonical isomorphism signatures.
//!
//! Starting from a chosen frame (a tetrahedron and a vertex relabelling of
//! it), a breadth-first sweep visits faces in label order, names tetrahedra in
//! discovery order, and inherits vertex labels across spanning-tree gluings so
//! that those gluings become the identity.  Encoding the sweep yields a token
//! sequence; minimising over all start frames yields a relabelling-invariant
//! signature.  Two connected triangulations are combinatorially isomorphic if
//! and only if their signatures agree.

use crate::perm::Perm4;
use crate::tri::{Gluing, GluingTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Token {
    /// Gluing to a not-yet-seen tetrahedron (labels inherited, perm identity).
    Fresh,
    /// Boundary face.
    Bdry,
    /// Gluing back to an already-labelled tetrahedron.
    Back { tet: usize, perm_lex: u8 },
}

/// The canonical sweep from one start frame.  Returns the token sequence plus
/// the relabelling that realises it (old tet -> new index, old labels -> new).
pub fn sweep(
    table: &GluingTable,
    start: usize,
    frame: Perm4,
) -> (Vec<Token>, Vec<usize>, Vec<Perm4>) {
    let n = table.tets();
    let mut tet_map = vec![usize::MAX; n]; // old -> new
    let mut vert_map = vec![Perm4::IDENTITY; n]; // old labels -> new labels
    let mut order = Vec::with_capacity(n); // new -> old
    tet_map[start] = 0;
    vert_map[start] = frame;
    order.push(start);
    let mut tokens = Vec::new();

    let mut k = 0;
    while k < order.len() {
        let old_t = order[k];
        for nf in 0..4u8 {
            let of = vert_map[old_t].inverse().image(nf);
            match table.gluing(old_t, of) {
                None => tokens.push(Token::Bdry),
                Some(Gluing { tet: ot2, perm }) => {
                    if tet_map[ot2] == usize::MAX {
                        // Inherit labels so this gluing reads as the identity.
                        tet_map[ot2] = order.len();
                        vert_map[ot2] = perm.inverse().then(vert_map[old_t]);
                        order.push(ot2);
                        tokens.push(Token::Fresh);
                    } else {
                        let new_perm = vert_map[old_t].inverse().then(perm).then(vert_map[ot2]);
                        let target = tet_map[ot2];
                        // Record each pairing once: skip the later-visited side.
                        let src = (k, nf);
                        let dst = (target, new_perm.image(nf));
                        if src < dst {
                            tokens.push(Token::Back {
                                tet: target,
                                perm_lex: new_perm.lex_index(),
                            });
                        } else if src == dst {
                            // A face glued to itself is rejected at build time.
                            unreachable!("face glued to itself");
                        }
                    }
                }
            }
        }
        k += 1;
    }
    (tokens, tet_map, vert_map)
}

fn component_encoding(table: &GluingTable, tets: &[usize]) -> Vec<Token> {
    let mut best: Option<Vec<Token>> = None;
    for &t in tets {
        for frame in Perm4::all() {
            let (tokens, _, _) = sweep(table, t, frame);
            if best.as_ref().is_none_or(|b| tokens < *b) {
                best = Some(tokens);
            }
        }
    }
    best.unwrap_or_default()
}

/// Canonical signature string.  Components are canonicalised independently
/// and listed in sorted order, so the signature is also insensitive to
/// component order.
pub fn iso_signature(table: &GluingTable) -> String {
    let sk = crate::skeleton::compute_skeleton(table);
    let mut parts: Vec<(usize, Vec<Token>)> = sk
        .component_tets()
        .iter()
        .map(|tets| (tets.len(), component_encoding(table, tets)))
        .collect();
    parts.sort();
    let mut out = String::new();
    for (i, (n, tokens)) in parts.iter().enumerate() {
        if i > 0 {
            out.push('/');
        }
        out.push_str(&render(*n, tokens));
    }
    out
}

fn render(n: usize, tokens: &[Token]) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = write!(s, "{n}:");
    for tok in tokens {
        match tok {
            Token::Fresh => s.push('n'),
            Token::Bdry => s.push('b'),
            Token::Back { tet, perm_lex } => {
                let _ = write!(s, "({tet},{perm_lex})");
            }
        }
    }
    s
}

/// True iff the two triangulations are combinatorially isomorphic.
pub fn isomorphic(a: &GluingTable, b: &GluingTable) -> bool {
    a.tets() == b.tets() && iso_signature(a) == iso_signature(b)
}

/// The canonical relabelling of a connected triangulation: the table realised
/// by the signature-minimal sweep.
pub fn canonical_form(table: &GluingTable) -> GluingTable {
    let n = table.tets();
    assert!(n > 0, "empty triangulation");
    let mut best: Option<(Vec<Token>, Vec<usize>, Vec<Perm4>)> = None;
    for t in 0..n {
        for frame in Perm4::all() {
            let (tokens, tet_map, vert_map) = sweep(table, t, frame);
            if best.as_ref().is_none_or(|(b, _, _)| tokens < *b) {
                best = Some((tokens, tet_map, vert_map));
            }
        }
    }
    let (_, tet_map, vert_map) = best.unwrap();
    assert!(
        tet_map.iter().all(|&t| t != usize::MAX),
        "canonical_form requires a connected triangulation"
    );
    table.relabelled(&tet_map, &vert_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::ws23;
    use crate::tri::parse_tri;

    #[test]
    fn signature_survives_relabelling() {
        let table = ws23();
        let sig = iso_signature(&table);
        // Shuffle tetrahedra and vertices deterministically.
        let n = table.tets();
        let tet_map: Vec<usize> = (0..n).map(|t| (t * 7 + 3) % n).collect();
        let vert_map: Vec<Perm4> = (0..n)
            .map(|t| Perm4::from_lex_index((t * 5 % 24) as u8).unwrap())
            .collect();
        let shuffled = table.relabelled(&tet_map, &vert_map);
        assert_ne!(shuffled, table);
        assert_eq!(iso_signature(&shuffled), sig);
        assert!(isomorphic(&shuffled, &table));
    }

    #[test]
    fn different_manifolds_differ() {
        let ball = parse_tri("tets 2\n1:123 bdry bdry bdry\n0:123 bdry bdry bdry").unwrap();
        let lone = parse_tri("tets 1\nbdry bdry bdry bdry").unwrap();
        assert_ne!(iso_signature(&ball), iso_signature(&lone));
        assert!(!isomorphic(&ball, &lone));
    }

    #[test]
    fn canonical_form_is_idempotent_and_isomorphic() {
        let table = ws23();
        let canon = canonical_form(&table);
        assert!(isomorphic(&canon, &table));
        assert_eq!(canonical_form(&canon), canon);
        assert_eq!(iso_signature(&canon), iso_signature(&table));
    }
}
