//! Randomized checks of the invariance and sensitivity claims.
//!
//! Every check draws the same seeded corpus of two-component diagrams,
//! walks all enumerated move sites of each and reports a [`Verdict`]. A
//! failing verdict carries the diagram's Gauss code and the index of the
//! offending site in `moves list --max-crossings C`, so it can be replayed
//! from the command line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::codec::{parse, serialize};
use crate::diagram::{Arrow, Endpoint, GaussDiagram, Sign};
use crate::invariants::{multiple_linking_s, multiple_linking_t};
use crate::moves::table2::{decompose_via_table2, t_trace};
use crate::moves::{
    apply, enumerate_sites, EnumerateOptions, MoveClass, MoveKind, MoveSite, Omega3Variant,
    SiteAction,
};
use crate::pairing::{bracket, builtin, ArrowPattern};
use crate::par::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// `S` is unchanged by every move.
    SInvariance,
    /// `T` moves by −1/+1 exactly under inter-component Ω2 and is otherwise
    /// unchanged.
    TBehavior,
    /// The pair relators of an Ω3 triangle pair to zero with `S` and `T`.
    Relators,
    /// Ω3 moves of types b–h factor through Ω3a.
    Table2,
    /// Closed forms agree with subset enumeration.
    Brackets,
    /// Gauss codes round-trip.
    Codec,
}

impl Claim {
    pub const ALL: [Claim; 6] = [
        Claim::SInvariance,
        Claim::TBehavior,
        Claim::Relators,
        Claim::Table2,
        Claim::Brackets,
        Claim::Codec,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::SInvariance => "s-invariance",
            Claim::TBehavior => "t-behavior",
            Claim::Relators => "relators",
            Claim::Table2 => "table2",
            Claim::Brackets => "brackets",
            Claim::Codec => "codec",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for Claim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown claim {0:?}")]
pub struct UnknownClaim(pub String);

impl FromStr for Claim {
    type Err = UnknownClaim;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| UnknownClaim(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifySuiteConfig {
    pub seed: u64,
    pub trials: usize,
    /// Size of the random diagrams, and the cap for crossing-increasing
    /// sites.
    pub max_crossings: usize,
    pub kinds: BTreeSet<MoveClass>,
    pub exec: Execution,
}

impl Default for VerifySuiteConfig {
    fn default() -> Self {
        VerifySuiteConfig {
            seed: 0,
            trials: 1000,
            max_crossings: 12,
            kinds: MoveClass::ALL.into_iter().collect(),
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub gauss: String,
    pub site_index: Option<usize>,
    pub site: Option<String>,
    pub expected: i64,
    pub actual: i64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub claim: Claim,
    pub pass: bool,
    /// Number of individual assertions made.
    pub checked: u64,
    pub counterexample: Option<Counterexample>,
    pub stats: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Seed of trial `trial` in a suite seeded with `seed`.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng.next_u64()
}

/// A diagram with up to `max_crossings` arrows whose endpoints are spread
/// over uniformly random slots of `components` circles.
pub fn random_diagram(seed: u64, components: usize, max_crossings: usize) -> GaussDiagram {
    assert!(components >= 1, "need at least one circle");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(0..=max_crossings);
    let mut lengths = vec![0; components];
    for _ in 0..2 * k {
        lengths[rng.gen_range(0..components)] += 1;
    }
    let mut slots: Vec<Endpoint> = lengths
        .iter()
        .enumerate()
        .flat_map(|(c, &l)| (0..l).map(move |p| Endpoint::new(c, p)))
        .collect();
    slots.shuffle(&mut rng);
    let arrows = slots
        .chunks(2)
        .map(|w| {
            let sign = if rng.gen() {
                Sign::Positive
            } else {
                Sign::Negative
            };
            Arrow::new(w[0], w[1], sign)
        })
        .collect();
    GaussDiagram::new(lengths, arrows).expect("random layout is valid")
}

pub fn trial_diagram(cfg: &VerifySuiteConfig, trial: usize) -> GaussDiagram {
    random_diagram(trial_seed(cfg.seed, trial), 2, cfg.max_crossings)
}

/// The sites of `g` the suite looks at, with their index in the full
/// listing.
pub fn trial_sites(cfg: &VerifySuiteConfig, g: &GaussDiagram) -> Vec<(usize, MoveSite)> {
    enumerate_sites(g, &EnumerateOptions::all(Some(cfg.max_crossings)))
        .into_iter()
        .enumerate()
        .filter(|(_, s)| cfg.kinds.contains(&s.class()))
        .collect()
}

#[derive(Default)]
struct Tally {
    checked: u64,
    stats: BTreeMap<String, i64>,
    failure: Option<Counterexample>,
}

impl Tally {
    fn bump(&mut self, key: impl Into<String>) {
        *self.stats.entry(key.into()).or_insert(0) += 1;
    }

    fn expect(&mut self, expected: i64, actual: i64, fail: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if expected != actual && self.failure.is_none() {
            let mut c = fail();
            c.expected = expected;
            c.actual = actual;
            self.failure = Some(c);
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        for (k, v) in other.stats {
            *self.stats.entry(k).or_insert(0) += v;
        }
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }
}

fn witness(
    g: &GaussDiagram,
    at: Option<(usize, &MoveSite)>,
    detail: impl Into<String>,
) -> Counterexample {
    Counterexample {
        gauss: serialize(g),
        site_index: at.map(|(i, _)| i),
        site: at.map(|(_, s)| s.describe()),
        expected: 0,
        actual: 0,
        detail: detail.into(),
    }
}

fn over_corpus<F>(cfg: &VerifySuiteConfig, f: F) -> Tally
where
    F: Fn(&GaussDiagram, &mut Tally) + Sync + Send,
{
    let parts = par::map_range(cfg.exec, cfg.trials, |i| {
        let g = trial_diagram(cfg, i);
        let mut t = Tally::default();
        f(&g, &mut t);
        t
    });
    let mut total = Tally::default();
    for p in parts {
        total.merge(p);
    }
    total
}

fn verdict(claim: Claim, t: Tally) -> Verdict {
    Verdict {
        claim,
        pass: t.failure.is_none(),
        checked: t.checked,
        counterexample: t.failure,
        stats: t.stats,
        note: None,
    }
}

fn s_of(g: &GaussDiagram) -> i64 {
    multiple_linking_s(g).expect("two circles")
}

fn t_of(g: &GaussDiagram) -> i64 {
    multiple_linking_t(g).expect("two circles")
}

pub fn check_s_invariance(cfg: &VerifySuiteConfig) -> Verdict {
    let t = over_corpus(cfg, |g, t| {
        let s0 = s_of(g);
        for (i, site) in trial_sites(cfg, g) {
            let h = apply(g, &site).expect("enumerated site applies");
            t.expect(0, s_of(&h) - s0, || {
                witness(g, Some((i, &site)), "change of S")
            });
        }
    });
    verdict(Claim::SInvariance, t)
}

pub fn check_t_behavior(cfg: &VerifySuiteConfig) -> Verdict {
    let t = over_corpus(cfg, |g, t| {
        let t0 = t_of(g);
        for (i, site) in trial_sites(cfg, g) {
            let h = apply(g, &site).expect("enumerated site applies");
            let want = site.expected_t_delta();
            t.bump(format!("delta {want:+}"));
            t.expect(want, t_of(&h) - t0, || {
                witness(g, Some((i, &site)), "change of T")
            });
        }
    });
    verdict(Claim::TBehavior, t)
}

/// Closed forms against subset enumeration on every corpus diagram.
pub fn check_brackets(cfg: &VerifySuiteConfig) -> Verdict {
    let t = over_corpus(cfg, |g, t| {
        t.expect(s_of(g), bracket(&builtin::s(), g).unwrap(), || {
            witness(g, None, "bracket of S")
        });
        t.expect(t_of(g), bracket(&builtin::t(), g).unwrap(), || {
            witness(g, None, "bracket of T")
        });
    });
    verdict(Claim::Brackets, t)
}

pub fn check_codec(cfg: &VerifySuiteConfig) -> Verdict {
    let t = over_corpus(cfg, |g, t| {
        let text = serialize(g);
        let back = parse(&text);
        let same = matches!(&back, Ok(h) if h == g && serialize(h) == text);
        t.expect(1, same as i64, || {
            witness(g, None, "parse(serialize(g)) differs from g")
        });
    });
    verdict(Claim::Codec, t)
}

/// Before and after fragments of the three arrow pairs of an Ω3 triangle:
/// `{x, y}` share the top strand, `{x, z}` the middle one and `{y, z}` the
/// bottom one.
pub fn pair_fragments(
    g: &GaussDiagram,
    site: &MoveSite,
) -> Option<[(GaussDiagram, GaussDiagram); 3]> {
    let SiteAction::Triangle { arrows, triangle } = site.action else {
        return None;
    };
    let h = apply(g, site).ok()?;
    let swap = |e: Endpoint| {
        triangle
            .strands()
            .iter()
            .find_map(|&[a, b]| {
                if e == a {
                    Some(b)
                } else if e == b {
                    Some(a)
                } else {
                    None
                }
            })
            .unwrap_or(e)
    };
    let mut before = [0; 3];
    let mut after = [0; 3];
    for (k, a) in arrows.iter().enumerate() {
        before[k] = g.arrows().iter().position(|b| b == a)?;
        let moved = Arrow::new(swap(a.tail), swap(a.head), a.sign);
        after[k] = h.arrows().iter().position(|b| *b == moved)?;
    }
    let frag = |i: usize, j: usize| {
        (
            g.subdiagram(&[before[i], before[j]]),
            h.subdiagram(&[after[i], after[j]]),
        )
    };
    Some([frag(0, 1), frag(0, 2), frag(1, 2)])
}

fn pair(p: &ArrowPattern, r: &(GaussDiagram, GaussDiagram)) -> i64 {
    bracket(p, &r.0).unwrap() - bracket(p, &r.1).unwrap()
}

/// Pairs `S` and `T` with the triangle relators of every Ω3 site.
///
/// Besides `⟨S, rᵢ⟩ = ⟨T, rᵢ⟩ = 0`, each fragment is checked against the
/// identity "unbased bracket = sum of the based representatives' brackets",
/// and the stats record how often a single based representative fails to
/// cancel (`based-exact nonzero rᵢ`).
pub fn check_relators(cfg: &VerifySuiteConfig) -> Verdict {
    let s = builtin::s();
    let t_pat = builtin::t();
    let s_reps = builtin::s_based_representatives();
    let t_reps = builtin::t_based_representatives();
    let mut tally = over_corpus(cfg, |g, t| {
        for (i, site) in trial_sites(cfg, g) {
            let Some(frags) = pair_fragments(g, &site) else {
                continue;
            };
            let ce = |d: &str| witness(g, Some((i, &site)), d.to_string());
            t.bump("sites");
            for (k, r) in frags.iter().enumerate() {
                let name = format!("r{}", k + 1);
                t.expect(0, pair(&s, r), || ce(&format!("<S, {name}>")));
                t.expect(0, pair(&t_pat, r), || ce(&format!("<T, {name}>")));
                for frag in [&r.0, &r.1] {
                    let sum: i64 = s_reps.iter().map(|p| bracket(p, frag).unwrap()).sum();
                    t.expect(bracket(&s, frag).unwrap(), sum, || {
                        ce("S against its based representatives")
                    });
                    let sum: i64 = t_reps.iter().map(|p| bracket(p, frag).unwrap()).sum();
                    t.expect(bracket(&t_pat, frag).unwrap(), sum, || {
                        ce("T against its based representatives")
                    });
                }
                if s_reps.iter().any(|p| pair(p, r) != 0) {
                    t.bump(format!("based-exact nonzero {name}"));
                }
            }
            let local: i64 = frags.iter().map(|r| pair(&s, r)).sum();
            let h = apply(g, &site).unwrap();
            t.expect(s_of(g) - s_of(&h), local, || {
                ce("S change against relator sum")
            });
            let local: i64 = frags.iter().map(|r| pair(&t_pat, r)).sum();
            t.expect(t_of(g) - t_of(&h), local, || {
                ce("T change against relator sum")
            });
        }
    });
    let mut note = None;
    if tally.failure.is_none() && tally.stats.get("sites").copied().unwrap_or(0) > 0 {
        if !tally.stats.contains_key("based-exact nonzero r2") {
            tally.failure = Some(Counterexample {
                gauss: String::new(),
                site_index: None,
                site: None,
                expected: 1,
                actual: 0,
                detail: "based-exact ablation never separated r2".into(),
            });
        } else {
            note = Some(
                "single based representatives do not cancel on r2; the sum over all four does"
                    .into(),
            );
        }
    }
    Verdict {
        note,
        ..verdict(Claim::Relators, tally)
    }
}

const OFF_A: [Omega3Variant; 7] = [
    Omega3Variant::B,
    Omega3Variant::C,
    Omega3Variant::D,
    Omega3Variant::E,
    Omega3Variant::F,
    Omega3Variant::G,
    Omega3Variant::H,
];

/// Decomposes every Ω3b–h site and checks the composite against the direct
/// move and the `(α, β)` pattern of each Ω2 pair.
///
/// Stats count sites per type, decompositions that left the listed row
/// (`off-table`) and those that needed a base point shift (`rotated`). A
/// type that never shows up fails the verdict as under-covered.
pub fn check_table2(cfg: &VerifySuiteConfig) -> Verdict {
    let mut tally = over_corpus(cfg, |g, t| {
        for (i, site) in trial_sites(cfg, g) {
            let MoveKind::Omega3(v) = site.kind else {
                continue;
            };
            if v == Omega3Variant::A {
                continue;
            }
            let ce = |d: &str| witness(g, Some((i, &site)), d.to_string());
            t.bump(site.kind.name());
            let dec = match decompose_via_table2(g, &site) {
                Ok(d) => d,
                Err(e) => {
                    t.expect(1, 0, || ce(&e.to_string()));
                    continue;
                }
            };
            if !dec.follows_table {
                t.bump("off-table");
            }
            if dec.is_rotated() {
                t.bump("rotated");
            }
            let direct = apply(g, &site).unwrap();
            let same = dec.replay(g).is_ok_and(|r| r == dec.start(&direct));
            t.expect(1, same as i64, || {
                ce("composite differs from the direct move")
            });
            let Some(trace) = t_trace(&dec.start(g), &dec.moves) else {
                t.expect(1, 0, || ce("composite does not replay"));
                continue;
            };
            let n = dec.moves.len();
            for level in 0..n / 2 {
                let alpha = trace[level + 1] - trace[level];
                let beta = trace[n - level] - trace[n - level - 1];
                t.bump(format!("(α, β) = ({alpha}, {beta})"));
                let ok = matches!((alpha, beta), (0, 0) | (-1, 1));
                t.expect(1, ok as i64, || ce(&format!("(α, β) = ({alpha}, {beta})")));
            }
            t.expect(trace[0], trace[n], || ce("net change of T"));
        }
    });
    if tally.failure.is_none() && cfg.kinds.contains(&MoveClass::Omega3) {
        let missing: Vec<String> = OFF_A
            .iter()
            .map(|&v| MoveKind::Omega3(v).name())
            .filter(|k| !tally.stats.contains_key(k))
            .collect();
        if !missing.is_empty() {
            tally.failure = Some(Counterexample {
                gauss: String::new(),
                site_index: None,
                site: None,
                expected: OFF_A.len() as i64,
                actual: (OFF_A.len() - missing.len()) as i64,
                detail: format!("under-coverage: never saw {}", missing.join(", ")),
            });
        }
    }
    let off = tally.stats.get("off-table").copied().unwrap_or(0);
    Verdict {
        note: (off > 0)
            .then(|| format!("{off} decomposition(s) used a step other than the listed row")),
        ..verdict(Claim::Table2, tally)
    }
}

pub fn check(claim: Claim, cfg: &VerifySuiteConfig) -> Verdict {
    match claim {
        Claim::SInvariance => check_s_invariance(cfg),
        Claim::TBehavior => check_t_behavior(cfg),
        Claim::Relators => check_relators(cfg),
        Claim::Table2 => check_table2(cfg),
        Claim::Brackets => check_brackets(cfg),
        Claim::Codec => check_codec(cfg),
    }
}

pub fn run_suite(cfg: &VerifySuiteConfig, claims: &[Claim]) -> Vec<Verdict> {
    claims.iter().map(|&c| check(c, cfg)).collect()
}
