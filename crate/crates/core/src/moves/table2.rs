//! Rewriting every Ω3 move through Ω3a by Ω2 conjugation.
//!
//! An Ω3 move of type `X` can be carried out as: insert a bigon next to the
//! triangle, perform an Ω3 move of a neighbouring type `Y` on a triangle
//! that uses one of the new arrows, then remove a bigon made of the other
//! new arrow and the arrow it replaced. Such a conjugation changes exactly
//! one crossing sign of the triangle, so the eight types sit on the
//! vertices of a cube and each step moves along one edge.
//!
//! [`TABLE`] lists the preferred step for every type other than `A`. The
//! step for `G` cannot be realized: `G` is the vertex opposite `A`, two
//! edges away from `F`. For it, and for any other case where the listed
//! step does not fit, the decomposition falls back to a step towards `A`
//! and marks itself as off-table.
//!
//! The conjugations are local to the triangle and never carry a base point
//! across it. When a strand of the triangle runs through a base point, the
//! base points of the affected circles are first moved just outside the
//! triangle; the composite then matches the direct move up to that rotation.

use serde::Serialize;
use thiserror::Error;

use super::{
    apply, enumerate_sites, EnumerateOptions, MoveClass, MoveKind, MoveSite, Omega2Variant,
    Omega3Variant, SiteAction,
};
use crate::diagram::{Arrow, Endpoint, GaussDiagram};
use crate::invariants::multiple_linking_t;

/// One conjugation step: positive Ω2, intermediate Ω3, negative Ω2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub variant: Omega3Variant,
    pub insert: Omega2Variant,
    pub via: Omega3Variant,
    pub remove: Omega2Variant,
}

const fn row(
    variant: Omega3Variant,
    insert: Omega2Variant,
    via: Omega3Variant,
    remove: Omega2Variant,
) -> TableRow {
    TableRow {
        variant,
        insert,
        via,
        remove,
    }
}

use Omega2Variant as W2;
use Omega3Variant as W3;

pub const TABLE: [TableRow; 7] = [
    row(W3::B, W2::C, W3::A, W2::D),
    row(W3::C, W2::C, W3::A, W2::D),
    row(W3::D, W2::A, W3::B, W2::B),
    row(W3::E, W2::A, W3::B, W2::B),
    row(W3::F, W2::D, W3::A, W2::C),
    row(W3::G, W2::C, W3::F, W2::D),
    row(W3::H, W2::A, W3::F, W2::B),
];

impl TableRow {
    /// Rows describe the move in one direction; run backwards, the same
    /// conjugation inserts what it used to remove.
    pub fn matches(
        &self,
        insert: Omega2Variant,
        via: Omega3Variant,
        remove: Omega2Variant,
    ) -> bool {
        via == self.via
            && ((insert, remove) == (self.insert, self.remove)
                || (insert, remove) == (self.remove, self.insert))
    }
}

pub fn table_row(v: Omega3Variant) -> Option<TableRow> {
    TABLE.iter().copied().find(|r| r.variant == v)
}

/// Number of crossing signs in which two Ω3 types differ.
pub fn cube_distance(a: Omega3Variant, b: Omega3Variant) -> usize {
    a.signs()
        .iter()
        .zip(b.signs())
        .filter(|(x, y)| **x != *y)
        .count()
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("not an Ω3 site")]
    NotOmega3,
    #[error("site does not apply to the diagram")]
    Stale,
    #[error("no Ω2 conjugation found for {0}")]
    NoConjugation(MoveKind),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Base point shift per circle applied before the moves; all zero
    /// unless the triangle straddles a base point.
    pub rotation: Vec<usize>,
    /// Moves to apply in order; the only Ω3 among them is of type `A`.
    pub moves: Vec<MoveSite>,
    /// Whether every step used the row listed in [`TABLE`].
    pub follows_table: bool,
}

impl Decomposition {
    pub fn is_rotated(&self) -> bool {
        self.rotation.iter().any(|&s| s != 0)
    }

    /// The diagram the moves start from.
    pub fn start(&self, g: &GaussDiagram) -> GaussDiagram {
        if self.is_rotated() {
            g.rotated(&self.rotation)
        } else {
            g.clone()
        }
    }

    pub fn replay(&self, g: &GaussDiagram) -> Result<GaussDiagram, super::MoveError> {
        replay(&self.start(g), &self.moves)
    }

    /// The T-changes of the Ω2 pairs, outermost first, as `(insert, remove)`.
    pub fn omega2_deltas(&self) -> Vec<(i64, i64)> {
        let n = self.moves.len() / 2;
        (0..n)
            .map(|i| {
                let (p, r) = (&self.moves[i], &self.moves[self.moves.len() - 1 - i]);
                (p.expected_t_delta(), r.expected_t_delta())
            })
            .collect()
    }
}

/// Applies moves in order.
pub fn replay(g: &GaussDiagram, moves: &[MoveSite]) -> Result<GaussDiagram, super::MoveError> {
    let mut cur = g.clone();
    for m in moves {
        cur = apply(&cur, m)?;
    }
    Ok(cur)
}

/// T at each diagram along the sequence, starting with `g`.
pub fn t_trace(g: &GaussDiagram, moves: &[MoveSite]) -> Option<Vec<i64>> {
    let mut cur = g.clone();
    let mut out = vec![multiple_linking_t(&cur).ok()?];
    for m in moves {
        cur = apply(&cur, m).ok()?;
        out.push(multiple_linking_t(&cur).ok()?);
    }
    Some(out)
}

pub fn decompose_via_table2(
    g: &GaussDiagram,
    site: &MoveSite,
) -> Result<Decomposition, DecomposeError> {
    let SiteAction::Triangle { triangle, arrows } = site.action else {
        return Err(DecomposeError::NotOmega3);
    };
    apply(g, site).map_err(|_| DecomposeError::Stale)?;
    let rotation = clear_base_points(g, &triangle.strands());
    let mut dec = if rotation.iter().all(|&s| s == 0) {
        decompose_based(g, site)?
    } else {
        let turned = g.rotated(&rotation);
        let lengths = g.component_lengths();
        let shift = |e: Endpoint| {
            let len = lengths[e.component];
            Endpoint::new(
                e.component,
                (e.position + len - rotation[e.component]) % len,
            )
        };
        let moved = arrows.map(|a| Arrow::new(shift(a.tail), shift(a.head), a.sign));
        let local = enumerate_sites(&turned, &EnumerateOptions::only(&[MoveClass::Omega3], None))
            .into_iter()
            .find(|s| matches!(s.action, SiteAction::Triangle { arrows, .. } if arrows == moved))
            .ok_or(DecomposeError::Stale)?;
        decompose_based(&turned, &local)?
    };
    dec.rotation = rotation;
    Ok(dec)
}

/// Per-circle shifts putting every base point outside the given strands.
fn clear_base_points(g: &GaussDiagram, strands: &[[Endpoint; 2]]) -> Vec<usize> {
    g.component_lengths()
        .iter()
        .enumerate()
        .map(|(c, &len)| {
            if len == 0 {
                return 0;
            }
            let firsts: Vec<usize> = strands
                .iter()
                .filter(|s| s[0].component == c)
                .map(|s| s[0].position)
                .collect();
            (0..len)
                .find(|&s| !firsts.contains(&((s + len - 1) % len)))
                .unwrap_or(0)
        })
        .collect()
}

fn decompose_based(g: &GaussDiagram, site: &MoveSite) -> Result<Decomposition, DecomposeError> {
    let MoveKind::Omega3(v) = site.kind else {
        return Err(DecomposeError::NotOmega3);
    };
    let target = apply(g, site).map_err(|_| DecomposeError::Stale)?;
    if v == Omega3Variant::A {
        return Ok(Decomposition {
            rotation: Vec::new(),
            moves: vec![*site],
            follows_table: true,
        });
    }
    let listed = table_row(v).expect("every type but A has a row");
    let on_table = conjugations(g, site, &target, |ins, via, rem| {
        listed.matches(ins, via, rem)
    });
    let mut fallback = None;
    for (p, q, r) in &on_table {
        let g1 = apply(g, p).map_err(|_| DecomposeError::Stale)?;
        let Ok(inner) = decompose_based(&g1, q) else {
            continue;
        };
        let dec = wrap(*p, inner, *r, true);
        if dec.follows_table {
            return Ok(dec);
        }
        fallback.get_or_insert(dec);
    }
    if let Some(dec) = fallback {
        return Ok(dec);
    }
    let here = cube_distance(v, Omega3Variant::A);
    let closer = conjugations(g, site, &target, |_, via, _| {
        cube_distance(via, Omega3Variant::A) < here
    });
    for (p, q, r) in closer {
        let g1 = apply(g, &p).map_err(|_| DecomposeError::Stale)?;
        if let Ok(inner) = decompose_based(&g1, &q) {
            return Ok(wrap(p, inner, r, false));
        }
    }
    Err(DecomposeError::NoConjugation(site.kind))
}

fn wrap(p: MoveSite, inner: Decomposition, r: MoveSite, on_table: bool) -> Decomposition {
    let mut moves = vec![p];
    moves.extend(inner.moves);
    moves.push(r);
    Decomposition {
        rotation: Vec::new(),
        moves,
        follows_table: on_table && inner.follows_table,
    }
}

fn omega2_variant(k: MoveKind) -> Omega2Variant {
    match k {
        MoveKind::Omega2(w, _) => w,
        _ => unreachable!("Ω2 site expected"),
    }
}

fn omega3_variant(k: MoveKind) -> Omega3Variant {
    match k {
        MoveKind::Omega3(w) => w,
        _ => unreachable!("Ω3 site expected"),
    }
}

/// Every (insert, Ω3, remove) triple reaching `target` whose kinds pass
/// `accept`.
fn conjugations<F>(
    g: &GaussDiagram,
    site: &MoveSite,
    target: &GaussDiagram,
    accept: F,
) -> Vec<(MoveSite, MoveSite, MoveSite)>
where
    F: Fn(Omega2Variant, Omega3Variant, Omega2Variant) -> bool,
{
    let SiteAction::Triangle { triangle, .. } = site.action else {
        return Vec::new();
    };
    let corners: Vec<Endpoint> = triangle.strands().concat();
    let mut out = Vec::new();
    let grow = EnumerateOptions::only(&[MoveClass::Omega2Positive], None);
    let turn = EnumerateOptions::only(&[MoveClass::Omega3], None);
    let shrink = EnumerateOptions::only(&[MoveClass::Omega2Negative], None);
    for p in enumerate_sites(g, &grow) {
        let SiteAction::InsertBigon { arrows: new } = p.action else {
            continue;
        };
        if !near_triangle(g, &new, &corners) {
            continue;
        }
        let g1 = match apply(g, &p) {
            Ok(d) => d,
            Err(_) => continue,
        };
        let ins = omega2_variant(p.kind);
        for q in enumerate_sites(&g1, &turn) {
            let SiteAction::Triangle { arrows: qa, .. } = q.action else {
                continue;
            };
            if !qa.iter().any(|a| new.contains(a)) {
                continue;
            }
            let via = omega3_variant(q.kind);
            if !W2_ALL.iter().any(|&w| accept(ins, via, w)) {
                continue;
            }
            let Ok(g2) = apply(&g1, &q) else { continue };
            for r in enumerate_sites(&g2, &shrink) {
                let rem = omega2_variant(r.kind);
                if !accept(ins, via, rem) {
                    continue;
                }
                if apply(&g2, &r).as_ref() == Ok(target) {
                    out.push((p, q, r));
                }
            }
        }
    }
    out
}

/// Whether every endpoint of a new bigon lands within two slots of a
/// triangle corner.
fn near_triangle(g: &GaussDiagram, new: &[Arrow; 2], corners: &[Endpoint]) -> bool {
    let ends = [new[0].tail, new[0].head, new[1].tail, new[1].head];
    let mut lengths = g.component_lengths().to_vec();
    for e in &ends {
        lengths[e.component] += 1;
    }
    let place = |c: Endpoint| {
        // position of an old slot once the new ones are in
        let mut pos = c.position;
        let mut taken: Vec<usize> = ends
            .iter()
            .filter(|e| e.component == c.component)
            .map(|e| e.position)
            .collect();
        taken.sort_unstable();
        for t in taken {
            if t <= pos {
                pos += 1;
            }
        }
        pos
    };
    let moved: Vec<Endpoint> = corners
        .iter()
        .map(|&c| Endpoint::new(c.component, place(c)))
        .collect();
    ends.iter().all(|e| {
        let len = lengths[e.component];
        moved.iter().any(|m| {
            m.component == e.component && {
                let d = (m.position + len - e.position) % len;
                d.min(len - d) <= 2
            }
        })
    })
}

const W2_ALL: [Omega2Variant; 4] = [W2::A, W2::B, W2::C, W2::D];
