use gausslink::codec::{parse, serialize};
use gausslink::diagram::{canonical_form, isomorphic, permutations, EquivalenceMode, GaussDiagram};
use gausslink::invariants::{multiple_linking_s, multiple_linking_t};
use gausslink::pairing::{bracket, builtin};
use gausslink::verify::random_diagram;
use proptest::prelude::*;

#[test]
fn lone_empty_circle_has_no_code() {
    assert_eq!(serialize(&GaussDiagram::unlink(1)), "");
    assert!(parse("").is_err());
}

const MODES: [EquivalenceMode; 3] = [
    EquivalenceMode::BasedExact,
    EquivalenceMode::RotateBasepoints,
    EquivalenceMode::RotateAndPermute,
];

/// Every rotation vector and, if allowed, every circle order.
fn brute_isomorphic(a: &GaussDiagram, b: &GaussDiagram, mode: EquivalenceMode) -> bool {
    let k = a.component_count();
    if k != b.component_count() {
        return false;
    }
    let perms = match mode {
        EquivalenceMode::RotateAndPermute => permutations(k),
        _ => vec![(0..k).collect()],
    };
    let rotations = match mode {
        EquivalenceMode::BasedExact => vec![vec![0; k]],
        _ => {
            let mut all = vec![vec![]];
            for &len in a.component_lengths() {
                all = all
                    .into_iter()
                    .flat_map(|v: Vec<usize>| {
                        (0..len.max(1)).map(move |s| {
                            let mut w = v.clone();
                            w.push(s);
                            w
                        })
                    })
                    .collect();
            }
            all
        }
    };
    perms
        .iter()
        .any(|p| rotations.iter().any(|r| a.rotated(r).permuted(p) == *b))
}

/// Brackets of S and T by looking at every pair of arrows between the
/// circles.
fn pair_oracle(g: &GaussDiagram) -> (i64, i64) {
    let inter: Vec<_> = g.arrows().iter().filter(|a| !a.is_self_arrow()).collect();
    let (mut s, mut t) = (0, 0);
    for (i, a) in inter.iter().enumerate() {
        for b in &inter[i + 1..] {
            let w = a.sign.value() * b.sign.value();
            if a.tail.component == b.tail.component {
                t += w;
            } else {
                s += w;
            }
        }
    }
    (s, t)
}

fn diagram(max: usize) -> impl Strategy<Value = GaussDiagram> {
    (any::<u64>(), 1usize..=3).prop_map(move |(seed, k)| random_diagram(seed, k, max))
}

fn two_component(max: usize) -> impl Strategy<Value = GaussDiagram> {
    any::<u64>().prop_map(move |seed| random_diagram(seed, 2, max))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn codec_round_trip(g in diagram(10)) {
        prop_assume!(g != GaussDiagram::unlink(1));
        let text = serialize(&g);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn closed_forms_match_pair_enumeration(g in two_component(12)) {
        let (s, t) = pair_oracle(&g);
        prop_assert_eq!(multiple_linking_s(&g).unwrap(), s);
        prop_assert_eq!(multiple_linking_t(&g).unwrap(), t);
        prop_assert_eq!(bracket(&builtin::s(), &g).unwrap(), s);
        prop_assert_eq!(bracket(&builtin::t(), &g).unwrap(), t);
    }

    #[test]
    fn canonical_form_decides_isomorphism(a in diagram(4), b in diagram(4)) {
        for mode in MODES {
            let same = canonical_form(&a, mode) == canonical_form(&b, mode);
            prop_assert_eq!(same, brute_isomorphic(&a, &b, mode));
            prop_assert_eq!(same, isomorphic(&a, &b, mode));
        }
    }

    #[test]
    fn moved_copies_are_isomorphic(g in diagram(6), shifts in prop::collection::vec(0usize..20, 3), flip in any::<bool>()) {
        let k = g.component_count();
        let r: Vec<usize> = (0..k).map(|c| shifts[c] % g.component_lengths()[c].max(1)).collect();
        let mut perm: Vec<usize> = (0..k).collect();
        if flip {
            perm.reverse();
        }
        let h = g.rotated(&r).permuted(&perm);
        prop_assert!(isomorphic(&g, &h, EquivalenceMode::RotateAndPermute));
        prop_assert_eq!(
            canonical_form(&g, EquivalenceMode::RotateAndPermute),
            canonical_form(&h, EquivalenceMode::RotateAndPermute)
        );
        prop_assert!(isomorphic(&g, &g.rotated(&r), EquivalenceMode::RotateBasepoints));
    }

    #[test]
    fn isomorphism_is_an_equivalence(a in diagram(3), b in diagram(3), c in diagram(3)) {
        for mode in MODES {
            prop_assert!(isomorphic(&a, &a, mode));
            prop_assert_eq!(isomorphic(&a, &b, mode), isomorphic(&b, &a, mode));
            if isomorphic(&a, &b, mode) && isomorphic(&b, &c, mode) {
                prop_assert!(isomorphic(&a, &c, mode));
            }
        }
    }
}
