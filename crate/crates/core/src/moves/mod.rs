//! Reidemeister moves as rewrites of Gauss diagrams.
//!
//! * Ω1 removes or inserts an arrow whose endpoints are neighbours on one circle.
//! * Ω2 removes or inserts two arrows of opposite sign whose tails are
//!   neighbours and whose heads are neighbours.
//! * Ω3 takes three arrows whose six endpoints form three neighbouring pairs
//!   (the triangle) and swaps the two endpoints of every pair.
//!
//! Neighbourhood is cyclic: the base point never blocks a move. Insertions
//! are described by the arrows they create, in the coordinates of the
//! resulting diagram, which makes every site exactly invertible.

mod kinds;
pub mod table2;

pub use kinds::{MoveClass, MoveKind, Omega1Variant, Omega2Variant, Omega3Variant, Polarity};

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Arrow, End, Endpoint, GaussDiagram, Sign, SlotRef};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("site does not match the diagram: {0}")]
    StaleSite(String),
}

/// The three strands of an Ω3 triangle, from the highest to the lowest.
///
/// Each strand is a pair of neighbouring slots `[first, second]` with
/// `second` directly after `first` along the circle. The top strand holds
/// two tails, the bottom strand two heads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triangle {
    pub top: [Endpoint; 2],
    pub middle: [Endpoint; 2],
    pub bottom: [Endpoint; 2],
}

impl Triangle {
    pub fn strands(&self) -> [[Endpoint; 2]; 3] {
        [self.top, self.middle, self.bottom]
    }

    fn swap(&self, e: Endpoint) -> Endpoint {
        for [a, b] in self.strands() {
            if e == a {
                return b;
            }
            if e == b {
                return a;
            }
        }
        e
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum SiteAction {
    RemoveKink {
        arrow: Arrow,
    },
    /// The arrow as it sits in the resulting diagram.
    InsertKink {
        arrow: Arrow,
    },
    RemoveBigon {
        arrows: [Arrow; 2],
    },
    /// The two arrows as they sit in the resulting diagram.
    InsertBigon {
        arrows: [Arrow; 2],
    },
    /// Arrows are ordered top→middle, top→bottom, middle→bottom.
    Triangle {
        arrows: [Arrow; 3],
        triangle: Triangle,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MoveSite {
    pub kind: MoveKind,
    #[serde(flatten)]
    pub action: SiteAction,
}

impl MoveSite {
    pub fn crossing_delta(&self) -> i64 {
        match self.action {
            SiteAction::RemoveKink { .. } => -1,
            SiteAction::InsertKink { .. } => 1,
            SiteAction::RemoveBigon { .. } => -2,
            SiteAction::InsertBigon { .. } => 2,
            SiteAction::Triangle { .. } => 0,
        }
    }

    /// Ω2 between two different circles.
    pub fn is_inter_component_omega2(&self) -> bool {
        match self.action {
            SiteAction::RemoveBigon { arrows } | SiteAction::InsertBigon { arrows } => {
                !arrows[0].is_self_arrow()
            }
            _ => false,
        }
    }

    /// Change of `T` forced by the move: −1 for a crossing-increasing
    /// inter-component Ω2, +1 for a crossing-decreasing one, 0 otherwise.
    pub fn expected_t_delta(&self) -> i64 {
        match self.action {
            SiteAction::InsertBigon { .. } if self.is_inter_component_omega2() => -1,
            SiteAction::RemoveBigon { .. } if self.is_inter_component_omega2() => 1,
            _ => 0,
        }
    }

    pub fn class(&self) -> MoveClass {
        match self.action {
            SiteAction::RemoveKink { .. } => MoveClass::Omega1Negative,
            SiteAction::InsertKink { .. } => MoveClass::Omega1Positive,
            SiteAction::RemoveBigon { .. } => MoveClass::Omega2Negative,
            SiteAction::InsertBigon { .. } => MoveClass::Omega2Positive,
            SiteAction::Triangle { .. } => MoveClass::Omega3,
        }
    }

    pub fn describe(&self) -> String {
        let arrow = |a: &Arrow| format!("{}->{}{}", a.tail, a.head, a.sign);
        match &self.action {
            SiteAction::RemoveKink { arrow: a } | SiteAction::InsertKink { arrow: a } => {
                format!("{} {}", self.kind, arrow(a))
            }
            SiteAction::RemoveBigon { arrows } | SiteAction::InsertBigon { arrows } => {
                format!("{} {} {}", self.kind, arrow(&arrows[0]), arrow(&arrows[1]))
            }
            SiteAction::Triangle { arrows, .. } => format!(
                "{} {} {} {}",
                self.kind,
                arrow(&arrows[0]),
                arrow(&arrows[1]),
                arrow(&arrows[2])
            ),
        }
    }
}

/// Which sites [`enumerate_sites`] lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub classes: BTreeSet<MoveClass>,
    /// Crossing-increasing sites are only listed when the result stays at
    /// or below this many crossings.
    pub max_crossings: Option<usize>,
}

impl EnumerateOptions {
    pub fn all(max_crossings: Option<usize>) -> Self {
        EnumerateOptions {
            classes: MoveClass::ALL.into_iter().collect(),
            max_crossings,
        }
    }

    pub fn only(classes: &[MoveClass], max_crossings: Option<usize>) -> Self {
        EnumerateOptions {
            classes: classes.iter().copied().collect(),
            max_crossings,
        }
    }

    fn allows_growth(&self, g: &GaussDiagram, by: usize) -> bool {
        self.max_crossings
            .is_none_or(|m| g.crossing_count() + by <= m)
    }
}

/// Slot-level context shared by the site detectors.
struct View<'a> {
    g: &'a GaussDiagram,
    table: Vec<Vec<SlotRef>>,
}

impl<'a> View<'a> {
    fn new(g: &'a GaussDiagram) -> Self {
        View {
            g,
            table: g.slot_table(),
        }
    }

    fn at(&self, e: Endpoint) -> SlotRef {
        self.table[e.component][e.position]
    }

    fn arrow(&self, i: usize) -> &Arrow {
        &self.g.arrows()[i]
    }

    fn other_end(&self, e: Endpoint) -> Endpoint {
        let s = self.at(e);
        let a = self.arrow(s.arrow);
        match s.end {
            End::Tail => a.head,
            End::Head => a.tail,
        }
    }
}

fn kink_variant(g: &GaussDiagram, a: &Arrow) -> Option<Omega1Variant> {
    if g.follows(a.tail, a.head) {
        Some(Omega1Variant::A)
    } else if g.follows(a.head, a.tail) {
        Some(Omega1Variant::B)
    } else {
        None
    }
}

/// If `a` and `b` cancel by Ω2, returns them ordered along the over strand
/// together with the variant.
fn bigon(g: &GaussDiagram, a: &Arrow, b: &Arrow) -> Option<([Arrow; 2], Omega2Variant)> {
    if a.sign == b.sign {
        return None;
    }
    for (first, second) in [(a, b), (b, a)] {
        if !g.follows(first.tail, second.tail) {
            continue;
        }
        let parallel = if g.follows(first.head, second.head) {
            true
        } else if g.follows(second.head, first.head) {
            false
        } else {
            continue;
        };
        return Some((
            [*first, *second],
            Omega2Variant::from_shape(parallel, first.sign),
        ));
    }
    None
}

/// Orders the strand through `e` and `f` along the circle; `None` unless
/// they are neighbours. On a two-slot circle both orders qualify.
fn strand_orders(g: &GaussDiagram, e: Endpoint, f: Endpoint) -> Vec<[Endpoint; 2]> {
    let mut out = Vec::new();
    if g.follows(e, f) {
        out.push([e, f]);
    }
    if g.follows(f, e) {
        out.push([f, e]);
    }
    out
}

/// Checks a candidate triangle given as three ordered strands (any order)
/// and builds the site when it is a legal Ω3 configuration.
fn triangle_site(view: &View<'_>, strands: [[Endpoint; 2]; 3]) -> Option<MoveSite> {
    let mut top = None;
    let mut middle = None;
    let mut bottom = None;
    for s in strands {
        let ends = [view.at(s[0]).end, view.at(s[1]).end];
        let tails = ends.iter().filter(|&&e| e == End::Tail).count();
        match tails {
            2 => top = Some(s),
            1 => middle = Some(s),
            _ => bottom = Some(s),
        }
        if view.at(s[0]).arrow == view.at(s[1]).arrow {
            return None;
        }
    }
    let (top, middle, bottom) = (top?, middle?, bottom?);
    let arrow_on = |s: [Endpoint; 2], other: [Endpoint; 2]| -> Option<(usize, bool)> {
        // the arrow with one end on `s` and the other on `other`, and whether
        // its end on `s` is the first slot of `s`
        for (k, e) in s.iter().enumerate() {
            let o = view.other_end(*e);
            if other.contains(&o) {
                return Some((view.at(*e).arrow, k == 0));
            }
        }
        None
    };
    let (x, x_first_on_top) = arrow_on(top, middle)?;
    let (y, _) = arrow_on(top, bottom)?;
    let (z, z_first_on_bottom) = arrow_on(bottom, middle)?;
    let (x_again, x_first_on_middle) = arrow_on(middle, top)?;
    if x != x_again || x == y || y == z || x == z {
        return None;
    }
    let (ax, ay, az) = (*view.arrow(x), *view.arrow(y), *view.arrow(z));
    // tails of x and y on top, head of x and tail of z in the middle, heads below
    if ax.tail.component != top[0].component || !top.contains(&ax.tail) || !top.contains(&ay.tail) {
        return None;
    }
    if !middle.contains(&ax.head)
        || !middle.contains(&az.tail)
        || !bottom.contains(&ay.head)
        || !bottom.contains(&az.head)
    {
        return None;
    }
    let order_top = x_first_on_top;
    let order_middle = x_first_on_middle;
    let order_bottom = !z_first_on_bottom;
    if !kinds::omega3_configuration_is_valid(
        [order_top, order_middle, order_bottom],
        [ax.sign, ay.sign, az.sign],
    ) {
        return None;
    }
    Some(MoveSite {
        kind: MoveKind::Omega3(Omega3Variant::from_signs([ax.sign, ay.sign, az.sign])),
        action: SiteAction::Triangle {
            arrows: [ax, ay, az],
            triangle: Triangle {
                top,
                middle,
                bottom,
            },
        },
    })
}

fn triangle_sites(g: &GaussDiagram) -> Vec<MoveSite> {
    let view = View::new(g);
    let mut found = BTreeSet::new();
    for (c, slots) in view.table.iter().enumerate() {
        let len = slots.len();
        for p in 0..len {
            let u = Endpoint::new(c, p);
            let v = g.next_slot(u);
            if u == v || view.at(u).arrow == view.at(v).arrow {
                continue;
            }
            let u2 = view.other_end(u);
            for w in [g.prev_slot(u2), g.next_slot(u2)] {
                if w == u2 || w == u || w == v {
                    continue;
                }
                let gamma = view.at(w).arrow;
                if gamma == view.at(u).arrow || gamma == view.at(v).arrow {
                    continue;
                }
                let v2 = view.other_end(v);
                let w2 = view.other_end(w);
                if [u, v, u2, w].contains(&v2) || [u, v, u2, w, v2].contains(&w2) {
                    continue;
                }
                for s2 in strand_orders(g, u2, w) {
                    for s3 in strand_orders(g, v2, w2) {
                        if let Some(site) = triangle_site(&view, [[u, v], s2, s3]) {
                            found.insert(site);
                        }
                    }
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Lists every site of the requested classes, in a deterministic order.
pub fn enumerate_sites(g: &GaussDiagram, opts: &EnumerateOptions) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let wants = |c: MoveClass| opts.classes.contains(&c);
    let arrows = g.arrows();

    if wants(MoveClass::Omega1Negative) {
        for a in arrows {
            if let Some(v) = kink_variant(g, a) {
                out.push(MoveSite {
                    kind: MoveKind::Omega1(v, Polarity::Negative),
                    action: SiteAction::RemoveKink { arrow: *a },
                });
            }
        }
    }
    if wants(MoveClass::Omega1Positive) && opts.allows_growth(g, 1) {
        for (c, &len) in g.component_lengths().iter().enumerate() {
            let new_len = len + 2;
            let positions = if len == 0 { 0..1 } else { 0..new_len };
            for p in positions {
                let first = Endpoint::new(c, p);
                let second = Endpoint::new(c, (p + 1) % new_len);
                for variant in [Omega1Variant::A, Omega1Variant::B] {
                    for sign in [Sign::Positive, Sign::Negative] {
                        let arrow = match variant {
                            Omega1Variant::A => Arrow::new(first, second, sign),
                            Omega1Variant::B => Arrow::new(second, first, sign),
                        };
                        out.push(MoveSite {
                            kind: MoveKind::Omega1(variant, Polarity::Positive),
                            action: SiteAction::InsertKink { arrow },
                        });
                    }
                }
            }
        }
    }
    if wants(MoveClass::Omega2Negative) {
        for i in 0..arrows.len() {
            for j in i + 1..arrows.len() {
                if let Some((pair, v)) = bigon(g, &arrows[i], &arrows[j]) {
                    out.push(MoveSite {
                        kind: MoveKind::Omega2(v, Polarity::Negative),
                        action: SiteAction::RemoveBigon { arrows: pair },
                    });
                }
            }
        }
    }
    if wants(MoveClass::Omega2Positive) && opts.allows_growth(g, 2) {
        for placement in bigon_placements(g) {
            let [x1, x2, y1, y2] = placement;
            for parallel in [true, false] {
                for sign in [Sign::Positive, Sign::Negative] {
                    let (h1, h2) = if parallel { (y1, y2) } else { (y2, y1) };
                    out.push(MoveSite {
                        kind: MoveKind::Omega2(
                            Omega2Variant::from_shape(parallel, sign),
                            Polarity::Positive,
                        ),
                        action: SiteAction::InsertBigon {
                            arrows: [Arrow::new(x1, h1, sign), Arrow::new(x2, h2, sign.flip())],
                        },
                    });
                }
            }
        }
    }
    if wants(MoveClass::Omega3) {
        out.extend(triangle_sites(g));
    }
    out
}

/// Result-coordinate slots `[x1, x2, y1, y2]` for a new bigon: the over
/// strand takes `x1, x2`, the under strand `y1, y2`, each pair neighbouring.
fn bigon_placements(g: &GaussDiagram) -> Vec<[Endpoint; 4]> {
    let lengths = g.component_lengths();
    let mut out = Vec::new();
    for (cx, &lx) in lengths.iter().enumerate() {
        for (cy, &ly) in lengths.iter().enumerate() {
            if cx != cy {
                let (nx, ny) = (lx + 2, ly + 2);
                let px_range = if lx == 0 { 0..1 } else { 0..nx };
                for px in px_range {
                    let py_range = if ly == 0 { 0..1 } else { 0..ny };
                    for py in py_range {
                        out.push([
                            Endpoint::new(cx, px),
                            Endpoint::new(cx, (px + 1) % nx),
                            Endpoint::new(cy, py),
                            Endpoint::new(cy, (py + 1) % ny),
                        ]);
                    }
                }
            } else {
                let n = lx + 4;
                let px_range = if lx == 0 { 0..1 } else { 0..n };
                for px in px_range {
                    for py in 0..n {
                        let xs = [px, (px + 1) % n];
                        let ys = [py, (py + 1) % n];
                        if xs.iter().any(|p| ys.contains(p)) {
                            continue;
                        }
                        out.push([
                            Endpoint::new(cx, xs[0]),
                            Endpoint::new(cx, xs[1]),
                            Endpoint::new(cx, ys[0]),
                            Endpoint::new(cx, ys[1]),
                        ]);
                    }
                }
            }
        }
    }
    out
}

fn remove_arrows(g: &GaussDiagram, removed: &[Arrow]) -> GaussDiagram {
    let gone: BTreeSet<Endpoint> = removed.iter().flat_map(|a| [a.tail, a.head]).collect();
    let mut lengths = g.component_lengths().to_vec();
    for e in &gone {
        lengths[e.component] -= 1;
    }
    let shift = |e: Endpoint| {
        let before = gone.range(Endpoint::new(e.component, 0)..e).count();
        Endpoint::new(e.component, e.position - before)
    };
    let arrows = g
        .arrows()
        .iter()
        .filter(|a| !removed.contains(a))
        .map(|a| Arrow::new(shift(a.tail), shift(a.head), a.sign))
        .collect();
    GaussDiagram::new_unchecked(lengths, arrows)
}

/// Inserts arrows given in result coordinates; existing slots fill the
/// remaining positions in their original order.
fn insert_arrows(g: &GaussDiagram, added: &[Arrow]) -> Result<GaussDiagram, MoveError> {
    let k = g.component_count();
    let mut lengths = g.component_lengths().to_vec();
    let new_ends: Vec<Endpoint> = added.iter().flat_map(|a| [a.tail, a.head]).collect();
    for e in &new_ends {
        if e.component >= k {
            return Err(MoveError::StaleSite(format!(
                "component {} does not exist",
                e.component
            )));
        }
        lengths[e.component] += 1;
    }
    let mut taken: Vec<Vec<bool>> = lengths.iter().map(|&l| vec![false; l]).collect();
    for e in &new_ends {
        if e.position >= lengths[e.component] || taken[e.component][e.position] {
            return Err(MoveError::StaleSite(format!(
                "insertion slot {e} is not available"
            )));
        }
        taken[e.component][e.position] = true;
    }
    let fill: Vec<Vec<usize>> = taken
        .iter()
        .map(|t| {
            t.iter()
                .enumerate()
                .filter(|(_, &x)| !x)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut arrows: Vec<Arrow> = g
        .arrows()
        .iter()
        .map(|a| {
            let m = |e: Endpoint| Endpoint::new(e.component, fill[e.component][e.position]);
            Arrow::new(m(a.tail), m(a.head), a.sign)
        })
        .collect();
    arrows.extend_from_slice(added);
    Ok(GaussDiagram::new_unchecked(lengths, arrows))
}

fn stale(msg: &str) -> MoveError {
    MoveError::StaleSite(msg.to_string())
}

/// Applies a site. The input is never modified; a site that does not fit
/// `g` is rejected.
pub fn apply(g: &GaussDiagram, site: &MoveSite) -> Result<GaussDiagram, MoveError> {
    match &site.action {
        SiteAction::RemoveKink { arrow } => {
            if !g.contains_arrow(arrow) || kink_variant(g, arrow).is_none() {
                return Err(stale("arrow is not a removable kink"));
            }
            Ok(remove_arrows(g, &[*arrow]))
        }
        SiteAction::InsertKink { arrow } => {
            let out = insert_arrows(g, &[*arrow])?;
            if kink_variant(&out, arrow).is_none() {
                return Err(stale("inserted arrow would not be a kink"));
            }
            Ok(out)
        }
        SiteAction::RemoveBigon { arrows } => {
            if !arrows.iter().all(|a| g.contains_arrow(a))
                || bigon(g, &arrows[0], &arrows[1]).is_none()
            {
                return Err(stale("arrows do not form a removable bigon"));
            }
            Ok(remove_arrows(g, arrows))
        }
        SiteAction::InsertBigon { arrows } => {
            let out = insert_arrows(g, arrows)?;
            if bigon(&out, &arrows[0], &arrows[1]).is_none() {
                return Err(stale("inserted arrows would not form a bigon"));
            }
            Ok(out)
        }
        SiteAction::Triangle { arrows, triangle } => {
            if !arrows.iter().all(|a| g.contains_arrow(a)) {
                return Err(stale("triangle arrows are missing"));
            }
            let view = View::new(g);
            let recheck =
                triangle_site(&view, triangle.strands()).filter(|s| s.action == site.action);
            if recheck.is_none() || !triangle.strands().iter().all(|[a, b]| g.follows(*a, *b)) {
                return Err(stale("arrows do not form an Ω3 triangle"));
            }
            let moved = g
                .arrows()
                .iter()
                .map(|a| Arrow::new(triangle.swap(a.tail), triangle.swap(a.head), a.sign))
                .collect();
            Ok(GaussDiagram::new_unchecked(
                g.component_lengths().to_vec(),
                moved,
            ))
        }
    }
}

/// The site on `after` that undoes `site`.
pub fn inverse(site: &MoveSite, after: &GaussDiagram) -> Result<MoveSite, MoveError> {
    let inv = match (&site.kind, &site.action) {
        (MoveKind::Omega1(v, p), SiteAction::RemoveKink { arrow }) => MoveSite {
            kind: MoveKind::Omega1(*v, p.opposite()),
            action: SiteAction::InsertKink { arrow: *arrow },
        },
        (MoveKind::Omega1(v, p), SiteAction::InsertKink { arrow }) => MoveSite {
            kind: MoveKind::Omega1(*v, p.opposite()),
            action: SiteAction::RemoveKink { arrow: *arrow },
        },
        (MoveKind::Omega2(_, _), SiteAction::RemoveBigon { arrows }) => MoveSite {
            kind: site.kind.with_polarity(Polarity::Positive),
            action: SiteAction::InsertBigon { arrows: *arrows },
        },
        (MoveKind::Omega2(_, _), SiteAction::InsertBigon { arrows }) => {
            let (pair, v) = bigon(after, &arrows[0], &arrows[1])
                .ok_or_else(|| stale("created pair is missing"))?;
            MoveSite {
                kind: MoveKind::Omega2(v, Polarity::Negative),
                action: SiteAction::RemoveBigon { arrows: pair },
            }
        }
        (MoveKind::Omega3(v), SiteAction::Triangle { arrows, triangle }) => {
            let moved =
                arrows.map(|a| Arrow::new(triangle.swap(a.tail), triangle.swap(a.head), a.sign));
            MoveSite {
                kind: MoveKind::Omega3(*v),
                action: SiteAction::Triangle {
                    arrows: moved,
                    triangle: *triangle,
                },
            }
        }
        _ => return Err(stale("site kind and action disagree")),
    };
    // the inverse must itself be applicable
    match &inv.action {
        SiteAction::RemoveKink { .. }
        | SiteAction::RemoveBigon { .. }
        | SiteAction::Triangle { .. } => apply(after, &inv).map(|_| inv),
        _ => Ok(inv),
    }
}
