//! Parametrized two-component diagram families.
//!
//! | family        | S       | T                   |
//! |---------------|---------|---------------------|
//! | `torus(n)`    | n²      | n(n−1)              |
//! | `torus'(n)`   | n²      | n(n−1) − 1          |
//! | `dn(n)`       | 0       | −n                  |
//! | `l(m, n)`     | n(n−m)  |                     |
//! | `k(m, n)`     | (n−m)²  | (n−m)² − (n+m)      |

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Arrow, Endpoint, GaussDiagram, Sign};
use crate::moves::{
    self, EnumerateOptions, MoveClass, MoveKind, MoveSite, Omega2Variant, Polarity, SiteAction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Torus,
    TorusPrime,
    Dn,
    L,
    K,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Torus,
        Family::TorusPrime,
        Family::Dn,
        Family::L,
        Family::K,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Torus => "torus",
            Family::TorusPrime => "torus-prime",
            Family::Dn => "dn",
            Family::L => "l",
            Family::K => "k",
        }
    }

    /// Families taking a single parameter `n`.
    pub fn is_single(self) -> bool {
        matches!(self, Family::Torus | Family::TorusPrime | Family::Dn)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown family {0:?} (expected torus, torus-prime, dn, l or k)")]
pub struct UnknownFamily(pub String);

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "torus" | "d" => Ok(Family::Torus),
            "torus-prime" | "torus'" | "d'" => Ok(Family::TorusPrime),
            "dn" => Ok(Family::Dn),
            "l" => Ok(Family::L),
            "k" => Ok(Family::K),
            _ => Err(UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub m: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{family} needs n >= 1")]
pub struct FamilyRangeError {
    pub family: Family,
}

impl FamilySpec {
    pub fn single(family: Family, n: usize) -> Self {
        FamilySpec { family, m: 0, n }
    }

    pub fn generate(&self) -> Result<GaussDiagram, FamilyRangeError> {
        Ok(match self.family {
            Family::Torus => gen_torus(self.n),
            Family::TorusPrime => gen_torus_prime(self.n),
            Family::Dn => gen_dn(self.n),
            Family::L => {
                if self.n == 0 {
                    return Err(FamilyRangeError { family: Family::L });
                }
                gen_l(self.m, self.n)
            }
            Family::K => gen_k(self.m, self.n),
        })
    }
}

fn e(c: usize, p: usize) -> Endpoint {
    Endpoint::new(c, p)
}

/// The (2, 2n) torus link: 2n positive crossings, directions alternating.
pub fn gen_torus(n: usize) -> GaussDiagram {
    let arrows = (0..2 * n)
        .map(|i| {
            if i % 2 == 0 {
                Arrow::new(e(0, i), e(1, i), Sign::Positive)
            } else {
                Arrow::new(e(1, i), e(0, i), Sign::Positive)
            }
        })
        .collect();
    GaussDiagram::new(vec![2 * n, 2 * n], arrows).expect("torus layout is valid")
}

/// The torus link after one crossing-increasing Ω2 between the circles.
pub fn gen_torus_prime(n: usize) -> GaussDiagram {
    let g = gen_torus(n);
    let site = moves::enumerate_sites(
        &g,
        &EnumerateOptions::only(&[MoveClass::Omega2Positive], None),
    )
    .into_iter()
    .find(MoveSite::is_inter_component_omega2)
    .expect("two circles always admit an Ω2");
    moves::apply(&g, &site).expect("enumerated site applies")
}

/// The split unlink with `n` nested bigons: circle 0 passes over circle 1
/// 2n times.
pub fn gen_dn(n: usize) -> GaussDiagram {
    let mut g = GaussDiagram::unlink(2);
    for k in 0..n {
        let site = MoveSite {
            kind: MoveKind::Omega2(Omega2Variant::A, Polarity::Positive),
            action: SiteAction::InsertBigon {
                arrows: [
                    Arrow::new(e(0, k), e(1, k), Sign::Positive),
                    Arrow::new(e(0, k + 1), e(1, k + 1), Sign::Negative),
                ],
            },
        };
        g = moves::apply(&g, &site).expect("nested bigon fits");
    }
    g
}

/// `m` negative arrows 1→0 followed by a positive torus block of size `n`
/// on both circles.
pub fn gen_l(m: usize, n: usize) -> GaussDiagram {
    let len = m + 2 * n;
    let mut arrows: Vec<Arrow> = (0..m)
        .map(|i| Arrow::new(e(1, i), e(0, i), Sign::Negative))
        .collect();
    arrows.extend(torus_block(m, n, Sign::Positive));
    GaussDiagram::new(vec![len, len], arrows).expect("L layout is valid")
}

/// A positive torus block of size `n` followed by a negative one of size
/// `m` on both circles.
pub fn gen_k(m: usize, n: usize) -> GaussDiagram {
    let len = 2 * (m + n);
    let mut arrows = torus_block(0, n, Sign::Positive);
    arrows.extend(torus_block(2 * n, m, Sign::Negative));
    GaussDiagram::new(vec![len, len], arrows).expect("K layout is valid")
}

fn torus_block(offset: usize, n: usize, sign: Sign) -> Vec<Arrow> {
    (0..2 * n)
        .map(|i| {
            let p = offset + i;
            if i % 2 == 0 {
                Arrow::new(e(0, p), e(1, p), sign)
            } else {
                Arrow::new(e(1, p), e(0, p), sign)
            }
        })
        .collect()
}
