//! Based, ordered-component Gauss diagrams.
//!
//! A diagram is a list of circles (components), each holding an even number
//! of endpoint slots, and a set of signed arrows. Every slot carries exactly
//! one arrow endpoint. Arrows run from the over-passage (tail) to the
//! under-passage (head) and carry the writhe of their crossing.
//!
//! Nothing here checks planarity: any valid diagram is accepted and read as
//! a (possibly virtual) link diagram.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// A slot on a circle. Slot 0 sits right after the base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endpoint {
    pub component: usize,
    pub position: usize,
}

impl Endpoint {
    pub const fn new(component: usize, position: usize) -> Self {
        Endpoint {
            component,
            position,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.component, self.position)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    /// Over-passage.
    pub tail: Endpoint,
    /// Under-passage.
    pub head: Endpoint,
    pub sign: Sign,
}

impl Arrow {
    pub const fn new(tail: Endpoint, head: Endpoint, sign: Sign) -> Self {
        Arrow { tail, head, sign }
    }

    /// Whether both endpoints sit on one circle.
    pub fn is_self_arrow(&self) -> bool {
        self.tail.component == self.head.component
    }

    /// The endpoint that comes first in slot order.
    pub fn first_endpoint(&self) -> Endpoint {
        self.tail.min(self.head)
    }

    pub fn reversed(&self) -> Arrow {
        Arrow::new(self.head, self.tail, self.sign)
    }
}

/// Which end of an arrow occupies a slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

/// Reverse lookup for one slot: the arrow index and which end sits there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlotRef {
    pub arrow: usize,
    pub end: End,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Error)]
pub enum ValidationError {
    #[error("odd component length: component {component} has {length} slots")]
    OddComponentLength { component: usize, length: usize },
    #[error("arrow {arrow}: endpoint {endpoint} is out of range")]
    EndpointOutOfRange { arrow: usize, endpoint: Endpoint },
    #[error("arrow {arrow}: tail and head share slot {endpoint}")]
    DegenerateArrow { arrow: usize, endpoint: Endpoint },
    #[error("slot {endpoint} is covered more than once")]
    SlotCoveredTwice { endpoint: Endpoint },
    #[error("slot {endpoint} is not covered by any arrow")]
    SlotUncovered { endpoint: Endpoint },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid Gauss diagram: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InvalidDiagram(pub Vec<ValidationError>);

/// Which rule set [`GaussDiagram::validation_errors_with`] applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    /// Slot coverage only. Virtual diagrams may have odd circles.
    Virtual,
    /// Also requires every circle to carry an even number of endpoints, as
    /// every planar two-curve diagram does.
    Classical,
}

/// Equivalence used when comparing diagrams or matching patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquivalenceMode {
    /// Base points and component order are fixed.
    BasedExact,
    /// Each circle may be rotated independently.
    RotateBasepoints,
    /// Rotations plus any relabelling of the circles.
    RotateAndPermute,
}

/// A Gauss diagram value.
///
/// Arrows are stored sorted by their first endpoint in slot order, so two
/// diagrams with the same slot structure compare equal regardless of the
/// order in which their arrows were supplied.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussDiagram {
    lengths: Vec<usize>,
    arrows: Vec<Arrow>,
}

impl GaussDiagram {
    /// Builds a diagram and checks every well-formedness rule.
    pub fn new(lengths: Vec<usize>, arrows: Vec<Arrow>) -> Result<Self, InvalidDiagram> {
        let d = Self::new_unchecked(lengths, arrows);
        d.validate().map(|()| d)
    }

    /// Builds a diagram without validation. Use [`GaussDiagram::validate`]
    /// before handing the value to anything else.
    pub fn new_unchecked(lengths: Vec<usize>, mut arrows: Vec<Arrow>) -> Self {
        arrows.sort_by_key(|a| (a.first_endpoint(), a.tail, a.head, a.sign));
        GaussDiagram { lengths, arrows }
    }

    /// `components` circles without crossings.
    pub fn unlink(components: usize) -> Self {
        GaussDiagram {
            lengths: vec![0; components],
            arrows: Vec::new(),
        }
    }

    pub fn component_lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn component_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn crossing_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn contains_arrow(&self, arrow: &Arrow) -> bool {
        self.arrows.contains(arrow)
    }

    /// Structural problems under the virtual profile.
    pub fn validation_errors(&self) -> Vec<ValidationError> {
        self.validation_errors_with(Profile::Virtual)
    }

    /// Returns every violated invariant; an empty list means the diagram is valid.
    pub fn validation_errors_with(&self, profile: Profile) -> Vec<ValidationError> {
        let mut errors = Vec::new();
        if profile == Profile::Classical {
            for (component, &length) in self.lengths.iter().enumerate() {
                if length % 2 != 0 {
                    errors.push(ValidationError::OddComponentLength { component, length });
                }
            }
        }
        let in_range = |e: &Endpoint| {
            e.component < self.lengths.len() && e.position < self.lengths[e.component]
        };
        let mut seen: HashSet<Endpoint> = HashSet::new();
        let mut reported: HashSet<Endpoint> = HashSet::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if a.tail == a.head {
                errors.push(ValidationError::DegenerateArrow {
                    arrow: i,
                    endpoint: a.tail,
                });
            }
            for e in [a.tail, a.head] {
                if !in_range(&e) {
                    errors.push(ValidationError::EndpointOutOfRange {
                        arrow: i,
                        endpoint: e,
                    });
                } else if !seen.insert(e) && reported.insert(e) && a.tail != a.head {
                    errors.push(ValidationError::SlotCoveredTwice { endpoint: e });
                }
            }
        }
        for (component, &length) in self.lengths.iter().enumerate() {
            for position in 0..length {
                let e = Endpoint::new(component, position);
                if !seen.contains(&e) {
                    errors.push(ValidationError::SlotUncovered { endpoint: e });
                }
            }
        }
        errors
    }

    pub fn validate(&self) -> Result<(), InvalidDiagram> {
        self.validate_with(Profile::Virtual)
    }

    pub fn validate_with(&self, profile: Profile) -> Result<(), InvalidDiagram> {
        let errors = self.validation_errors_with(profile);
        if errors.is_empty() {
            Ok(())
        } else {
            Err(InvalidDiagram(errors))
        }
    }

    /// Per-component slot table. Only meaningful on valid diagrams.
    pub fn slot_table(&self) -> Vec<Vec<SlotRef>> {
        let mut table: Vec<Vec<Option<SlotRef>>> =
            self.lengths.iter().map(|&l| vec![None; l]).collect();
        for (i, a) in self.arrows.iter().enumerate() {
            table[a.tail.component][a.tail.position] = Some(SlotRef {
                arrow: i,
                end: End::Tail,
            });
            table[a.head.component][a.head.position] = Some(SlotRef {
                arrow: i,
                end: End::Head,
            });
        }
        table
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|s| s.expect("valid diagram covers every slot"))
                    .collect()
            })
            .collect()
    }

    /// The slot following `e` along its circle, wrapping past the base point.
    pub fn next_slot(&self, e: Endpoint) -> Endpoint {
        let len = self.lengths[e.component];
        Endpoint::new(e.component, (e.position + 1) % len)
    }

    pub fn prev_slot(&self, e: Endpoint) -> Endpoint {
        let len = self.lengths[e.component];
        Endpoint::new(e.component, (e.position + len - 1) % len)
    }

    /// Whether `b` immediately follows `a` on the same circle (cyclically).
    pub fn follows(&self, a: Endpoint, b: Endpoint) -> bool {
        a.component == b.component && a != b && self.next_slot(a) == b
    }

    /// The same diagram with every arrow reversed (over and under swapped).
    pub fn reversed_arrows(&self) -> GaussDiagram {
        GaussDiagram::new_unchecked(
            self.lengths.clone(),
            self.arrows.iter().map(Arrow::reversed).collect(),
        )
    }

    /// Applies a rotation per component: slot `p` of component `c` moves to
    /// `(p - shift[c]) mod len`, i.e. the base point moves forward by `shift[c]`.
    pub fn rotated(&self, shifts: &[usize]) -> GaussDiagram {
        let map = |e: Endpoint| {
            let len = self.lengths[e.component];
            let s = shifts[e.component] % len.max(1);
            Endpoint::new(e.component, (e.position + len - s) % len.max(1))
        };
        self.remapped(self.lengths.clone(), map)
    }

    /// Reorders the components: component `c` becomes component `perm[c]`.
    pub fn permuted(&self, perm: &[usize]) -> GaussDiagram {
        let mut lengths = vec![0; self.lengths.len()];
        for (c, &target) in perm.iter().enumerate() {
            lengths[target] = self.lengths[c];
        }
        self.remapped(lengths, |e| Endpoint::new(perm[e.component], e.position))
    }

    fn remapped(&self, lengths: Vec<usize>, map: impl Fn(Endpoint) -> Endpoint) -> GaussDiagram {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow::new(map(a.tail), map(a.head), a.sign))
            .collect();
        GaussDiagram::new_unchecked(lengths, arrows)
    }

    /// The induced subdiagram on a subset of arrows: all circles are kept,
    /// unused slots are dropped and base points stay where they were.
    pub fn subdiagram(&self, arrow_indices: &[usize]) -> GaussDiagram {
        let mut used: Vec<Vec<bool>> = self.lengths.iter().map(|&l| vec![false; l]).collect();
        for &i in arrow_indices {
            let a = &self.arrows[i];
            used[a.tail.component][a.tail.position] = true;
            used[a.head.component][a.head.position] = true;
        }
        let renumber: Vec<Vec<usize>> = used
            .iter()
            .map(|c| {
                let mut k = 0;
                c.iter()
                    .map(|&u| {
                        let v = k;
                        if u {
                            k += 1;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let lengths = used
            .iter()
            .map(|c| c.iter().filter(|&&u| u).count())
            .collect();
        let map = |e: Endpoint| Endpoint::new(e.component, renumber[e.component][e.position]);
        let arrows = arrow_indices
            .iter()
            .map(|&i| {
                let a = &self.arrows[i];
                Arrow::new(map(a.tail), map(a.head), a.sign)
            })
            .collect();
        GaussDiagram::new_unchecked(lengths, arrows)
    }
}

/// Brute-force isomorphism test: tries every component permutation allowed
/// by `mode` and every rotation vector.
pub fn isomorphic(a: &GaussDiagram, b: &GaussDiagram, mode: EquivalenceMode) -> bool {
    if a.component_count() != b.component_count() || a.crossing_count() != b.crossing_count() {
        return false;
    }
    match mode {
        EquivalenceMode::BasedExact => a == b,
        EquivalenceMode::RotateBasepoints => rotation_match(a, b),
        EquivalenceMode::RotateAndPermute => {
            permutations(a.component_count()).into_iter().any(|perm| {
                let p = a.permuted(&perm);
                p.component_lengths() == b.component_lengths() && rotation_match(&p, b)
            })
        }
    }
}

fn rotation_match(a: &GaussDiagram, b: &GaussDiagram) -> bool {
    if a.component_lengths() != b.component_lengths() {
        return false;
    }
    let target: HashSet<Arrow> = b.arrows().iter().copied().collect();
    let lengths = a.component_lengths();
    let mut shifts = vec![0usize; lengths.len()];
    loop {
        let r = a.rotated(&shifts);
        if r.arrows().iter().all(|x| target.contains(x)) {
            return true;
        }
        // odometer over rotation vectors
        let mut c = 0;
        loop {
            if c == lengths.len() {
                return false;
            }
            shifts[c] += 1;
            if shifts[c] < lengths[c].max(1) {
                break;
            }
            shifts[c] = 0;
            c += 1;
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Partial canonical labelling: which circles are placed, at which rotation,
/// and the labels handed out so far.
#[derive(Clone)]
struct Partial {
    order: Vec<usize>,
    shifts: Vec<usize>,
    labels: Vec<u32>,
    next_label: u32,
}

const UNLABELLED: u32 = u32::MAX;

fn encode_block(
    d: &GaussDiagram,
    table: &[Vec<SlotRef>],
    c: usize,
    shift: usize,
    p: &mut Partial,
) -> Vec<u32> {
    let len = d.component_lengths()[c];
    let mut block = Vec::with_capacity(1 + 3 * len);
    block.push(len as u32);
    for k in 0..len {
        let slot = table[c][(k + shift) % len];
        if p.labels[slot.arrow] == UNLABELLED {
            p.labels[slot.arrow] = p.next_label;
            p.next_label += 1;
        }
        block.push(match slot.end {
            End::Tail => 0,
            End::Head => 1,
        });
        block.push(match d.arrows()[slot.arrow].sign {
            Sign::Positive => 0,
            Sign::Negative => 1,
        });
        block.push(p.labels[slot.arrow]);
    }
    block
}

/// The lexicographically smallest encoding over the class of `d`, returned
/// as the component order and rotation vector that realize it.
fn canonical_frame(d: &GaussDiagram, mode: EquivalenceMode) -> (Vec<usize>, Vec<usize>) {
    let k = d.component_count();
    if mode == EquivalenceMode::BasedExact {
        return ((0..k).collect(), vec![0; k]);
    }
    let table = d.slot_table();
    let mut frontier = vec![Partial {
        order: Vec::with_capacity(k),
        shifts: vec![0; k],
        labels: vec![UNLABELLED; d.crossing_count()],
        next_label: 0,
    }];
    for step in 0..k {
        let mut best: Option<Vec<u32>> = None;
        let mut next: Vec<Partial> = Vec::new();
        for p in &frontier {
            let candidates: Vec<usize> = match mode {
                EquivalenceMode::RotateAndPermute => {
                    (0..k).filter(|c| !p.order.contains(c)).collect()
                }
                _ => vec![step],
            };
            for c in candidates {
                for shift in 0..d.component_lengths()[c].max(1) {
                    let mut q = p.clone();
                    let block = encode_block(d, &table, c, shift, &mut q);
                    let ord = best.as_ref().map(|b| block.cmp(b));
                    if matches!(ord, Some(std::cmp::Ordering::Greater)) {
                        continue;
                    }
                    if !matches!(ord, Some(std::cmp::Ordering::Equal)) {
                        best = Some(block);
                        next.clear();
                    }
                    q.order.push(c);
                    q.shifts[c] = shift;
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    let p = frontier.swap_remove(0);
    (p.order, p.shifts)
}

/// A distinguished representative of the class of `d` under `mode`.
pub fn canonical_form(d: &GaussDiagram, mode: EquivalenceMode) -> GaussDiagram {
    let (order, shifts) = canonical_frame(d, mode);
    let mut perm = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    d.rotated(&shifts).permuted(&perm)
}
