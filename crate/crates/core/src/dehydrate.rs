//! Dehydration strings: the letter encoding used by the hyperbolic census
//! files of Callahan-Hildebrand-Weeks and their closed-manifold successors.
//!
//! A dehydration string packs a closed connected triangulation of up to 25
//! tetrahedra into lowercase letters ('a' = 0 .. 'z' = 25), in four sections:
//!
//! * one char: the tetrahedron count n;
//! * 2*ceil(n/4) chars: a stream of 2n bits, one per face pairing in the
//!   order the decoding sweep discovers them.  A set bit glues the swept
//!   face to the lowest-numbered unused tetrahedron by the identity; a clear
//!   bit consumes the next explicit record;
//! * n+1 chars: the destination tetrahedron of each explicit record;
//! * n+1 chars: the gluing permutation of each record.
//!
//! The sweep visits (tet 0, faces 0..3), (tet 1, faces 0..3), ... skipping
//! faces glued earlier in the sweep, so each pairing is handled exactly once,
//! at its first face.  A closed connected n-tetrahedron triangulation always
//! produces n-1 set bits (the fresh-tetrahedron gluings form a spanning tree)
//! and n+1 explicit records.
//!
//! Two conventions are easy to get wrong and are fixed here to match the
//! census files bit for bit:
//!
//! * The bit stream is packed into bytes least significant bit first, and
//!   each byte is emitted as two chars, high nibble first.  Equivalently the
//!   char at even offset i within the bit section carries stream positions
//!   4i+4 .. 4i+7 and the char at odd offset i carries 4i-4 .. 4i-1, both
//!   least significant bit first.
//! * A record's permutation p is stored as the index, in the lexicographic
//!   ordering of S4, of the sequence (p(3), p(2), p(1), p(0))  --  the images
//!   are listed in reverse.  So 'x' (index 23, the sequence 3210) stores the
//!   identity gluing.
//!
//! See docs/dehydration-format.md for a worked example.
//!
//! Dehydration relabels through the canonical sweep from (tet 0, identity),
//! which is exactly the labelling the decoder rebuilds.  Hence
//! `dehydrate(rehydrate(s)) == s` for every accepted string, and
//! `rehydrate(dehydrate(t))` is `t` itself when `t` is already labelled in
//! sweep order, an isomorphic copy otherwise.

use crate::perm::Perm4;
use crate::sig::{sweep, Token};
use crate::tri::{Gluing, GluingTable, TriError};
use thiserror::Error;

/// Largest tetrahedron count a single letter can name.
pub const MAX_TETS: usize = 25;

#[derive(Debug, Error)]
pub enum DehydrateError {
    #[error("dehydration strings use lowercase letters only, found {0:?}")]
    BadChar(char),
    #[error("empty dehydration string")]
    Empty,
    #[error("expected {expected} chars for {tets} tetrahedra, found {found}")]
    BadLength {
        tets: usize,
        expected: usize,
        found: usize,
    },
    #[error("bit char {0} of the gluing bit section is outside a..p")]
    BadBitChar(usize),
    #[error("a set bit asks for a fresh tetrahedron but all {0} are in use")]
    TooManyTets(usize),
    #[error("record {index} targets tetrahedron {dest}, out of range")]
    DestRange { index: usize, dest: usize },
    #[error("record {index} names permutation {perm}, out of range")]
    PermRange { index: usize, perm: u8 },
    #[error("record {index} is unusable: {source}")]
    BadGluing { index: usize, source: TriError },
    #[error("clear bits outnumber the explicit records")]
    OutOfRecords,
    #[error("cannot dehydrate: {0}")]
    Unsupported(&'static str),
}

fn char_val(c: char) -> Result<u8, DehydrateError> {
    if c.is_ascii_lowercase() {
        Ok(c as u8 - b'a')
    } else {
        Err(DehydrateError::BadChar(c))
    }
}

fn val_char(v: u8) -> char {
    debug_assert!(v < 26);
    (b'a' + v) as char
}

/// Chars in the bit section for an n-tetrahedron string: one per nibble,
/// rounded up to whole bytes.
fn bit_chars(n: usize) -> usize {
    2 * ((n + 3) / 4)
}

/// Decode a dehydration string into its gluing table.
///
/// The decoder mirrors the census convention exactly; in particular the empty
/// triangulation is the three-char string "aaa", and strings that drive the
/// sweep into an impossible gluing are rejected rather than patched up.
pub fn rehydrate(s: &str) -> Result<GluingTable, DehydrateError> {
    let vals: Vec<u8> = s.trim().chars().map(char_val).collect::<Result<_, _>>()?;
    if vals.is_empty() {
        return Err(DehydrateError::Empty);
    }
    let n = vals[0] as usize;
    let nbits = bit_chars(n);
    let expected = 1 + nbits + 2 * (n + 1);
    if vals.len() != expected {
        return Err(DehydrateError::BadLength {
            tets: n,
            expected,
            found: vals.len(),
        });
    }

    // Unpack the bit section (see the module notes for the nibble order).
    let mut bits = vec![false; 2 * n];
    for (i, &v) in vals[1..1 + nbits].iter().enumerate() {
        if v > 15 {
            return Err(DehydrateError::BadBitChar(i));
        }
        let base = if i % 2 == 0 { 4 * i + 4 } else { 4 * i - 4 };
        for j in 0..4 {
            if base + j < 2 * n {
                bits[base + j] = v >> j & 1 == 1;
            }
        }
    }
    let dests = &vals[1 + nbits..1 + nbits + (n + 1)];
    let perms = &vals[1 + nbits + (n + 1)..];

    let mut table = GluingTable::new(n);
    let mut used = 0usize; // tetrahedra named so far
    let mut made = 0usize; // pairings glued, i.e. bits consumed
    let mut spec = 0usize; // explicit records consumed
    for t in 0..n {
        for f in 0..4u8 {
            if table.gluing(t, f).is_some() {
                continue;
            }
            if used <= t {
                used = t + 1;
            }
            if bits[made] {
                if used == n {
                    return Err(DehydrateError::TooManyTets(n));
                }
                table
                    .glue(
                        t,
                        f,
                        Gluing {
                            tet: used,
                            perm: Perm4::IDENTITY,
                        },
                    )
                    .map_err(|source| DehydrateError::BadGluing { index: spec, source })?;
                used += 1;
            } else {
                if spec == n + 1 {
                    return Err(DehydrateError::OutOfRecords);
                }
                let dest = dests[spec] as usize;
                if dest >= n {
                    return Err(DehydrateError::DestRange { index: spec, dest });
                }
                let stored = Perm4::from_lex_index(perms[spec]).ok_or(
                    DehydrateError::PermRange {
                        index: spec,
                        perm: perms[spec],
                    },
                )?;
                // Undo the reversed-image storage convention.
                let perm = Perm4::REVERSE.then(stored);
                table
                    .glue(t, f, Gluing { tet: dest, perm })
                    .map_err(|source| DehydrateError::BadGluing { index: spec, source })?;
                spec += 1;
            }
            made += 1;
        }
    }
    Ok(table)
}

/// Encode a closed connected triangulation of at most 25 tetrahedra.
///
/// The output is independent of the input labelling up to the choice of base
/// frame: the string is built from the canonical sweep rooted at tetrahedron
/// 0 with the identity frame, matching what `rehydrate` reconstructs.
pub fn dehydrate(table: &GluingTable) -> Result<String, DehydrateError> {
    let n = table.tets();
    if n == 0 {
        return Ok("aaa".to_string());
    }
    if n > MAX_TETS {
        return Err(DehydrateError::Unsupported("more than 25 tetrahedra"));
    }
    if !table.is_closed() {
        return Err(DehydrateError::Unsupported("triangulation has boundary"));
    }
    let (tokens, tet_map, _) = sweep(table, 0, Perm4::IDENTITY);
    if tet_map.contains(&usize::MAX) {
        return Err(DehydrateError::Unsupported("triangulation is disconnected"));
    }

    let mut bytes = vec![0u8; (2 * n).div_ceil(8)];
    let mut dests = String::new();
    let mut perms = String::new();
    for (i, tok) in tokens.iter().enumerate() {
        match *tok {
            Token::Fresh => bytes[i / 8] |= 1 << (i % 8),
            Token::Back { tet, perm_lex } => {
                dests.push(val_char(tet as u8));
                let p = Perm4::from_lex_index(perm_lex).expect("sweep emits valid indices");
                perms.push(val_char(Perm4::REVERSE.then(p).lex_index()));
            }
            Token::Bdry => unreachable!("closed triangulations have no boundary tokens"),
        }
    }
    debug_assert_eq!(tokens.len(), 2 * n);
    debug_assert_eq!(dests.len(), n + 1);

    let mut out = String::with_capacity(expected_len(n));
    out.push(val_char(n as u8));
    for b in bytes {
        out.push(val_char(b >> 4));
        out.push(val_char(b & 15));
    }
    out.push_str(&dests);
    out.push_str(&perms);
    debug_assert_eq!(out.len(), expected_len(n));
    Ok(out)
}

fn expected_len(n: usize) -> usize {
    1 + bit_chars(n) + 2 * (n + 1)
}
