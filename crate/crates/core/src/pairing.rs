//! Arrow-pattern brackets.
//!
//! `bracket(P, G)` sums, over every subset of arrows of `G` whose induced
//! subdiagram is equivalent to `P`, the product of the subset's signs. Each
//! subset is counted once, however many symmetries relate it to `P`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::diagram::{permutations, Arrow, EquivalenceMode, GaussDiagram, InvalidDiagram, Sign};
use crate::par::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternArrow {
    pub tail: crate::diagram::Endpoint,
    pub head: crate::diagram::Endpoint,
    /// `None` matches either sign.
    pub sign: Option<Sign>,
}

/// A small arrow diagram used as a counting pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowPattern {
    lengths: Vec<usize>,
    arrows: Vec<PatternArrow>,
    mode: EquivalenceMode,
    /// Every arrangement of `arrows` reachable under `mode`, each sorted the
    /// same way `GaussDiagram` sorts its arrows.
    images: Vec<(Vec<usize>, Vec<PatternArrow>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("pattern has {pattern} component(s) but the diagram has {diagram}")]
    ComponentMismatch { pattern: usize, diagram: usize },
    #[error("pair classification needs a 2-component diagram, got {0}")]
    NotTwoComponent(usize),
    #[error(transparent)]
    InvalidPattern(#[from] InvalidDiagram),
}

impl ArrowPattern {
    pub fn new(
        lengths: Vec<usize>,
        arrows: Vec<PatternArrow>,
        mode: EquivalenceMode,
    ) -> Result<Self, PairingError> {
        let skeleton = GaussDiagram::new_unchecked(
            lengths.clone(),
            arrows
                .iter()
                .map(|a| Arrow::new(a.tail, a.head, a.sign.unwrap_or(Sign::Positive)))
                .collect(),
        );
        skeleton.validate()?;
        let images = images(&lengths, &arrows, mode);
        Ok(ArrowPattern {
            lengths,
            arrows,
            mode,
            images,
        })
    }

    /// Uses the diagram's arrows as a pattern; `signed` keeps their signs.
    pub fn from_diagram(d: &GaussDiagram, signed: bool, mode: EquivalenceMode) -> Self {
        let arrows = d
            .arrows()
            .iter()
            .map(|a| PatternArrow {
                tail: a.tail,
                head: a.head,
                sign: signed.then_some(a.sign),
            })
            .collect();
        ArrowPattern::new(d.component_lengths().to_vec(), arrows, mode).expect("valid diagram")
    }

    pub fn component_lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn arrows(&self) -> &[PatternArrow] {
        &self.arrows
    }

    pub fn mode(&self) -> EquivalenceMode {
        self.mode
    }

    pub fn degree(&self) -> usize {
        self.arrows.len()
    }

    pub fn with_mode(&self, mode: EquivalenceMode) -> Self {
        ArrowPattern::new(self.lengths.clone(), self.arrows.clone(), mode)
            .expect("already validated")
    }

    /// Whether the induced subdiagram `sub` is equivalent to this pattern.
    pub fn matches(&self, sub: &GaussDiagram) -> bool {
        if sub.crossing_count() != self.arrows.len() {
            return false;
        }
        self.images.iter().any(|(lengths, arrows)| {
            lengths == sub.component_lengths()
                && arrows.iter().zip(sub.arrows()).all(|(p, a)| {
                    p.tail == a.tail && p.head == a.head && p.sign.is_none_or(|s| s == a.sign)
                })
        })
    }
}

fn images(
    lengths: &[usize],
    arrows: &[PatternArrow],
    mode: EquivalenceMode,
) -> Vec<(Vec<usize>, Vec<PatternArrow>)> {
    let k = lengths.len();
    let perms = match mode {
        EquivalenceMode::RotateAndPermute => permutations(k),
        _ => vec![(0..k).collect()],
    };
    let rotate = mode != EquivalenceMode::BasedExact;
    let mut out = BTreeSet::new();
    for perm in perms {
        let mut shifts = vec![0usize; k];
        loop {
            let map = |e: crate::diagram::Endpoint| {
                let len = lengths[e.component];
                crate::diagram::Endpoint::new(
                    perm[e.component],
                    (e.position + len - shifts[e.component]) % len,
                )
            };
            let mut img: Vec<PatternArrow> = arrows
                .iter()
                .map(|a| PatternArrow {
                    tail: map(a.tail),
                    head: map(a.head),
                    sign: a.sign,
                })
                .collect();
            img.sort_by_key(|a| (a.tail.min(a.head), a.tail, a.head));
            let mut lens = vec![0; k];
            for (c, &t) in perm.iter().enumerate() {
                lens[t] = lengths[c];
            }
            out.insert((lens, img));
            if !rotate || !advance(&mut shifts, lengths) {
                break;
            }
        }
    }
    out.into_iter().collect()
}

fn advance(shifts: &mut [usize], lengths: &[usize]) -> bool {
    for c in 0..shifts.len() {
        shifts[c] += 1;
        if shifts[c] < lengths[c].max(1) {
            return true;
        }
        shifts[c] = 0;
    }
    false
}

/// Integer combination of patterns.
#[derive(Clone, Debug, Default)]
pub struct PatternSum {
    terms: Vec<(i64, ArrowPattern)>,
}

impl PatternSum {
    pub fn new() -> Self {
        PatternSum::default()
    }

    /// Adds a term; zero coefficients are dropped.
    pub fn push(&mut self, coefficient: i64, pattern: ArrowPattern) -> &mut Self {
        if coefficient != 0 {
            self.terms.push((coefficient, pattern));
        }
        self
    }

    pub fn term(mut self, coefficient: i64, pattern: ArrowPattern) -> Self {
        self.push(coefficient, pattern);
        self
    }

    pub fn terms(&self) -> &[(i64, ArrowPattern)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Calls `visit` on every `k`-subset of `0..n` whose smallest element is `first`.
fn for_each_subset_from(first: usize, n: usize, k: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(
        start: usize,
        n: usize,
        k: usize,
        cur: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=(n - need) {
            cur.push(i);
            rec(i + 1, n, k, cur, visit);
            cur.pop();
        }
    }
    let mut cur = vec![first];
    if k == 1 {
        visit(&cur);
        return;
    }
    if n - first < k {
        return;
    }
    rec(first + 1, n, k, &mut cur, visit);
}

pub fn bracket(pattern: &ArrowPattern, g: &GaussDiagram) -> Result<i64, PairingError> {
    bracket_with(pattern, g, Execution::default())
}

/// [`bracket`] with an explicit execution strategy.
pub fn bracket_with(
    pattern: &ArrowPattern,
    g: &GaussDiagram,
    exec: Execution,
) -> Result<i64, PairingError> {
    if pattern.component_lengths().len() != g.component_count() {
        return Err(PairingError::ComponentMismatch {
            pattern: pattern.component_lengths().len(),
            diagram: g.component_count(),
        });
    }
    let k = pattern.degree();
    let n = g.crossing_count();
    if k == 0 {
        return Ok(1);
    }
    if k > n {
        return Ok(0);
    }
    // Subsets are chunked by their smallest arrow index.
    Ok(par::sum_range(exec, n, |first| {
        let mut total = 0i64;
        for_each_subset_from(first, n, k, &mut |subset| {
            let sub = g.subdiagram(subset);
            if pattern.matches(&sub) {
                total += subset
                    .iter()
                    .map(|&i| g.arrows()[i].sign.value())
                    .product::<i64>();
            }
        });
        total
    }))
}

pub fn bracket_sum(sum: &PatternSum, g: &GaussDiagram) -> Result<i64, PairingError> {
    sum.terms()
        .iter()
        .map(|(c, p)| bracket(p, g).map(|v| c * v))
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairClass {
    /// Inter-component arrows pointing opposite ways.
    SType,
    /// Inter-component arrows pointing the same way.
    TType,
    NotInterComponent,
}

pub fn classify_pair(a: &Arrow, b: &Arrow, g: &GaussDiagram) -> Result<PairClass, PairingError> {
    if g.component_count() != 2 {
        return Err(PairingError::NotTwoComponent(g.component_count()));
    }
    if a.is_self_arrow() || b.is_self_arrow() {
        return Ok(PairClass::NotInterComponent);
    }
    Ok(if a.tail.component == b.tail.component {
        PairClass::TType
    } else {
        PairClass::SType
    })
}

/// The built-in patterns.
pub mod builtin {
    use super::*;
    use crate::diagram::Endpoint;

    fn arrow(tc: usize, tp: usize, hc: usize, hp: usize, sign: Option<Sign>) -> PatternArrow {
        PatternArrow {
            tail: Endpoint::new(tc, tp),
            head: Endpoint::new(hc, hp),
            sign,
        }
    }

    /// One arrow from circle 0 to circle 1.
    pub fn lk01() -> ArrowPattern {
        ArrowPattern::new(
            vec![1, 1],
            vec![arrow(0, 0, 1, 0, None)],
            EquivalenceMode::BasedExact,
        )
        .unwrap()
    }

    /// One arrow from circle 1 to circle 0.
    pub fn lk10() -> ArrowPattern {
        ArrowPattern::new(
            vec![1, 1],
            vec![arrow(1, 0, 0, 0, None)],
            EquivalenceMode::BasedExact,
        )
        .unwrap()
    }

    /// Two arrows between the circles, pointing opposite ways.
    pub fn s() -> ArrowPattern {
        s_signed(None, None)
    }

    /// Two arrows between the circles, pointing the same way.
    pub fn t() -> ArrowPattern {
        t_signed(None, None)
    }

    /// `S` with signs on the 0→1 arrow and the 1→0 arrow.
    pub fn s_signed(forward: Option<Sign>, backward: Option<Sign>) -> ArrowPattern {
        ArrowPattern::new(
            vec![2, 2],
            vec![arrow(0, 0, 1, 0, forward), arrow(1, 1, 0, 1, backward)],
            EquivalenceMode::RotateAndPermute,
        )
        .unwrap()
    }

    /// `T` with the two arrows signed.
    pub fn t_signed(first: Option<Sign>, second: Option<Sign>) -> ArrowPattern {
        ArrowPattern::new(
            vec![2, 2],
            vec![arrow(0, 0, 1, 0, first), arrow(0, 1, 1, 1, second)],
            EquivalenceMode::RotateAndPermute,
        )
        .unwrap()
    }

    /// The four based drawings of `S`: the 0→1 arrow `a` and the 1→0 arrow
    /// `b`, with either of them first after each base point.
    pub fn s_based_representatives() -> [ArrowPattern; 4] {
        let rep = |a_first_on_0: bool, a_first_on_1: bool| {
            let (a0, b0) = if a_first_on_0 { (0, 1) } else { (1, 0) };
            let (a1, b1) = if a_first_on_1 { (0, 1) } else { (1, 0) };
            ArrowPattern::new(
                vec![2, 2],
                vec![arrow(0, a0, 1, a1, None), arrow(1, b1, 0, b0, None)],
                EquivalenceMode::BasedExact,
            )
            .unwrap()
        };
        [
            rep(true, true),
            rep(true, false),
            rep(false, true),
            rep(false, false),
        ]
    }

    /// The four based drawings of `T`: both arrows 0→1 or both 1→0, drawn
    /// parallel or crossed.
    pub fn t_based_representatives() -> [ArrowPattern; 4] {
        let rep = |forward: bool, crossed: bool| {
            let (f, t) = if forward { (0, 1) } else { (1, 0) };
            let second_target = if crossed { 0 } else { 1 };
            ArrowPattern::new(
                vec![2, 2],
                vec![
                    arrow(f, 0, t, 1 - second_target, None),
                    arrow(f, 1, t, second_target, None),
                ],
                EquivalenceMode::BasedExact,
            )
            .unwrap()
        };
        [
            rep(true, false),
            rep(true, true),
            rep(false, false),
            rep(false, true),
        ]
    }

    /// Every sign assignment of `pattern`, each as its own signed term.
    pub fn sign_expansion(pattern: &ArrowPattern) -> PatternSum {
        let k = pattern.degree();
        let mut sum = PatternSum::new();
        let mut seen = BTreeSet::new();
        for mask in 0..(1u32 << k) {
            let arrows: Vec<PatternArrow> = pattern
                .arrows()
                .iter()
                .enumerate()
                .map(|(i, a)| PatternArrow {
                    sign: Some(if mask & (1 << i) == 0 {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    }),
                    ..*a
                })
                .collect();
            let p = ArrowPattern::new(pattern.component_lengths().to_vec(), arrows, pattern.mode())
                .unwrap();
            // Symmetric patterns (like T) produce the same signed class twice.
            let key = p.images.iter().min().cloned();
            if seen.insert(key) {
                sum.push(1, p);
            }
        }
        sum
    }
}

#[cfg(test)]
mod tests {
    use super::builtin::*;
    use super::*;
    use crate::codec::parse;
    use crate::diagram::Endpoint;

    fn pair_oracle(g: &GaussDiagram) -> (i64, i64) {
        // Direct enumeration of unordered inter-component pairs.
        let (mut s, mut t) = (0, 0);
        let a = g.arrows();
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                let w = a[i].sign.value() * a[j].sign.value();
                match classify_pair(&a[i], &a[j], g).unwrap() {
                    PairClass::SType => s += w,
                    PairClass::TType => t += w,
                    PairClass::NotInterComponent => {}
                }
            }
        }
        (s, t)
    }

    #[test]
    fn degree_two_patterns_on_empty_and_single_arrow() {
        let empty = GaussDiagram::unlink(2);
        assert_eq!(bracket(&s(), &empty).unwrap(), 0);
        let single = parse("O1+/U1+").unwrap();
        assert_eq!(bracket(&t(), &single).unwrap(), 0);
        assert_eq!(bracket(&lk01(), &single).unwrap(), 1);
        assert_eq!(bracket(&lk10(), &single).unwrap(), 0);
    }

    #[test]
    fn hopf_type_values() {
        let g = parse("O1+U2+/U1+O2+").unwrap();
        assert_eq!(bracket(&s(), &g).unwrap(), 1);
        assert_eq!(bracket(&t(), &g).unwrap(), 0);
        assert_eq!(pair_oracle(&g), (1, 0));
    }

    #[test]
    fn classify_pair_by_direction() {
        let g = parse("O1+O2-U3+/U1+U2-O3+").unwrap();
        let a = g.arrows();
        assert_eq!(classify_pair(&a[0], &a[1], &g).unwrap(), PairClass::TType);
        assert_eq!(classify_pair(&a[0], &a[2], &g).unwrap(), PairClass::SType);
        let k = parse("O1+U1+O2+/U2+").unwrap();
        let ka = k.arrows();
        assert_eq!(
            classify_pair(&ka[0], &ka[1], &k).unwrap(),
            PairClass::NotInterComponent
        );
        let one = parse("O1+U1+O2+U2+").unwrap();
        assert_eq!(
            classify_pair(&one.arrows()[0], &one.arrows()[1], &one),
            Err(PairingError::NotTwoComponent(1))
        );
    }

    #[test]
    fn component_mismatch_is_an_error() {
        let g = parse("O1+U1+").unwrap();
        assert_eq!(
            bracket(&s(), &g),
            Err(PairingError::ComponentMismatch {
                pattern: 2,
                diagram: 1
            })
        );
    }

    #[test]
    fn signed_patterns_filter_and_weight() {
        // one positive and one negative arrow, both 0 -> 1
        let g = parse("O1+O2-/U1+U2-").unwrap();
        assert_eq!(bracket(&t(), &g).unwrap(), -1);
        assert_eq!(
            bracket(&t_signed(Some(Sign::Positive), Some(Sign::Negative)), &g).unwrap(),
            -1
        );
        assert_eq!(
            bracket(&t_signed(Some(Sign::Positive), Some(Sign::Positive)), &g).unwrap(),
            0
        );
        assert_eq!(bracket_sum(&sign_expansion(&t()), &g).unwrap(), -1);
        assert_eq!(sign_expansion(&t()).len(), 3);
        // swapping the circles identifies (+, -) with (-, +)
        assert_eq!(sign_expansion(&s()).len(), 3);
    }

    #[test]
    fn empty_sum_is_zero() {
        let g = parse("O1+U2+/U1+O2+").unwrap();
        assert_eq!(bracket_sum(&PatternSum::new(), &g).unwrap(), 0);
    }

    #[test]
    fn based_representatives_are_one_class() {
        for reps in [s_based_representatives(), t_based_representatives()] {
            for a in &reps {
                for b in &reps {
                    let da = GaussDiagram::new(
                        a.component_lengths().to_vec(),
                        a.arrows()
                            .iter()
                            .map(|x| Arrow::new(x.tail, x.head, Sign::Positive))
                            .collect(),
                    )
                    .unwrap();
                    let db = GaussDiagram::new(
                        b.component_lengths().to_vec(),
                        b.arrows()
                            .iter()
                            .map(|x| Arrow::new(x.tail, x.head, Sign::Positive))
                            .collect(),
                    )
                    .unwrap();
                    assert!(crate::diagram::isomorphic(
                        &da,
                        &db,
                        EquivalenceMode::RotateAndPermute
                    ));
                }
            }
        }
    }

    #[test]
    fn degree_three_pattern_counts_subsets_once() {
        // A cyclically symmetric pattern: three chords on one circle pairwise crossing.
        let p = ArrowPattern::new(
            vec![6],
            vec![
                PatternArrow {
                    tail: Endpoint::new(0, 0),
                    head: Endpoint::new(0, 3),
                    sign: None,
                },
                PatternArrow {
                    tail: Endpoint::new(0, 2),
                    head: Endpoint::new(0, 5),
                    sign: None,
                },
                PatternArrow {
                    tail: Endpoint::new(0, 4),
                    head: Endpoint::new(0, 1),
                    sign: None,
                },
            ],
            EquivalenceMode::RotateBasepoints,
        )
        .unwrap();
        let g = parse("O1+U3+O2+U1+O3+U2+").unwrap();
        assert_eq!(bracket(&p, &g).unwrap(), 1);
    }
}
