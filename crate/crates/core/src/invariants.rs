//! Closed-form linking invariants of two-component diagrams.
//!
//! Counting inter-component arrow pairs directly gives
//!
//! * `S = lk01 * lk10`
//! * `2T = lk01^2 - c01 + lk10^2 - c10`
//!
//! where `lk_ij` is the signed and `c_ij` the raw number of arrows from
//! circle `i` to circle `j`. The pairing engine computes the same numbers by
//! subset enumeration; the two are cross-checked in tests.

use serde::Serialize;
use thiserror::Error;

use crate::diagram::GaussDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("expected a 2-component diagram, got {0} component(s)")]
pub struct ComponentCountError(pub usize);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct LinkingCounts {
    pub lk01: i64,
    pub lk10: i64,
    pub c01: i64,
    pub c10: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantReport {
    pub lk01: i64,
    pub lk10: i64,
    pub s: i64,
    pub t: i64,
    pub crossings: usize,
    pub components: usize,
    /// `|T|`: negative inter-component Ω2 moves needed to reach the
    /// crossingless two-component unlink.
    pub rii_lower_bound_to_unlink: u64,
}

fn require_two(g: &GaussDiagram) -> Result<(), ComponentCountError> {
    match g.component_count() {
        2 => Ok(()),
        k => Err(ComponentCountError(k)),
    }
}

pub fn linking_numbers(g: &GaussDiagram) -> Result<LinkingCounts, ComponentCountError> {
    require_two(g)?;
    let mut out = LinkingCounts::default();
    for a in g.arrows() {
        match (a.tail.component, a.head.component) {
            (0, 1) => {
                out.lk01 += a.sign.value();
                out.c01 += 1;
            }
            (1, 0) => {
                out.lk10 += a.sign.value();
                out.c10 += 1;
            }
            _ => {}
        }
    }
    Ok(out)
}

pub fn multiple_linking_s(g: &GaussDiagram) -> Result<i64, ComponentCountError> {
    let lk = linking_numbers(g)?;
    Ok(lk.lk01 * lk.lk10)
}

pub fn multiple_linking_t(g: &GaussDiagram) -> Result<i64, ComponentCountError> {
    Ok(t_from_counts(&linking_numbers(g)?))
}

fn t_from_counts(lk: &LinkingCounts) -> i64 {
    // each bracket term is a pair count, so the numerator is always even
    (lk.lk01 * lk.lk01 - lk.c01 + lk.lk10 * lk.lk10 - lk.c10) / 2
}

/// Lower bound on the number of negative inter-component Ω2 moves in any
/// move sequence joining `from` and `to`.
pub fn rii_lower_bound(from: &GaussDiagram, to: &GaussDiagram) -> Result<u64, ComponentCountError> {
    Ok(multiple_linking_t(to)?.abs_diff(multiple_linking_t(from)?))
}

pub fn report(g: &GaussDiagram) -> Result<InvariantReport, ComponentCountError> {
    let lk = linking_numbers(g)?;
    let t = t_from_counts(&lk);
    Ok(InvariantReport {
        lk01: lk.lk01,
        lk10: lk.lk10,
        s: lk.lk01 * lk.lk10,
        t,
        crossings: g.crossing_count(),
        components: g.component_count(),
        rii_lower_bound_to_unlink: t.unsigned_abs(),
    })
}
