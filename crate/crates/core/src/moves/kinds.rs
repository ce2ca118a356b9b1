use std::fmt;

use serde::{Serialize, Serializer};

use crate::diagram::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    /// Adds crossings.
    Positive,
    /// Removes crossings.
    Negative,
}

impl Polarity {
    pub fn opposite(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

/// Orientation of a kink: `A` meets the tail first, `B` the head first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Omega1Variant {
    A,
    B,
}

/// Shape of a bigon, read along the over strand.
///
/// `A`/`B` join strands running the same way (arrows parallel), `C`/`D`
/// strands running opposite ways (arrows crossed). Within each pair the
/// variant records the sign met first along the over strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Omega2Variant {
    A,
    B,
    C,
    D,
}

impl Omega2Variant {
    pub fn from_shape(parallel: bool, first_sign: Sign) -> Self {
        match (parallel, first_sign) {
            (true, Sign::Positive) => Omega2Variant::A,
            (true, Sign::Negative) => Omega2Variant::B,
            (false, Sign::Positive) => Omega2Variant::C,
            (false, Sign::Negative) => Omega2Variant::D,
        }
    }

    pub fn is_parallel(self) -> bool {
        matches!(self, Omega2Variant::A | Omega2Variant::B)
    }
}

/// The eight oriented Ω3 moves. A move is fixed by the signs of its three
/// crossings (top/middle, top/bottom, middle/bottom); the slot orders on
/// the three strands then follow, up to the swap the move performs.
///
/// `A` and `G` are the two cyclic moves (the triangle's sides run around
/// it coherently); the other six are braid-like.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Omega3Variant {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

const P: Sign = Sign::Positive;
const N: Sign = Sign::Negative;

/// Crossing signs `[top/middle, top/bottom, middle/bottom]` of each variant.
const OMEGA3_SIGNS: [(Omega3Variant, [Sign; 3]); 8] = [
    (Omega3Variant::A, [P, N, P]),
    (Omega3Variant::B, [P, P, P]),
    (Omega3Variant::C, [N, N, P]),
    (Omega3Variant::D, [P, P, N]),
    (Omega3Variant::E, [N, P, P]),
    (Omega3Variant::F, [P, N, N]),
    (Omega3Variant::G, [N, P, N]),
    (Omega3Variant::H, [N, N, N]),
];

impl Omega3Variant {
    pub const ALL: [Omega3Variant; 8] = [
        Omega3Variant::A,
        Omega3Variant::B,
        Omega3Variant::C,
        Omega3Variant::D,
        Omega3Variant::E,
        Omega3Variant::F,
        Omega3Variant::G,
        Omega3Variant::H,
    ];

    pub fn from_signs(signs: [Sign; 3]) -> Self {
        OMEGA3_SIGNS
            .iter()
            .find(|(_, s)| *s == signs)
            .map(|(v, _)| *v)
            .expect("every sign triple names a variant")
    }

    pub fn signs(self) -> [Sign; 3] {
        OMEGA3_SIGNS.iter().find(|(v, _)| *v == self).unwrap().1
    }

    fn letter(self) -> char {
        (b'a' + self as u8) as char
    }
}

/// Whether the strand orders and crossing signs of a triangle can come from
/// three lines in the plane. `orders` says, for the top, middle and bottom
/// strand, whether the endpoint shared with the strand above (for the
/// bottom strand: the top/bottom crossing) comes first.
pub(crate) fn omega3_configuration_is_valid(orders: [bool; 3], signs: [Sign; 3]) -> bool {
    let [top, middle, bottom] = orders;
    let [tm, tb, mb] = signs;
    (top == middle) == (tb == mb) && (middle == bottom) == (tm == tb)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Omega1(Omega1Variant, Polarity),
    Omega2(Omega2Variant, Polarity),
    Omega3(Omega3Variant),
}

impl MoveKind {
    pub fn polarity(self) -> Option<Polarity> {
        match self {
            MoveKind::Omega1(_, p) | MoveKind::Omega2(_, p) => Some(p),
            MoveKind::Omega3(_) => None,
        }
    }

    pub fn with_polarity(self, p: Polarity) -> MoveKind {
        match self {
            MoveKind::Omega1(v, _) => MoveKind::Omega1(v, p),
            MoveKind::Omega2(v, _) => MoveKind::Omega2(v, p),
            k => k,
        }
    }

    /// ASCII name such as `omega2c+` or `omega3f`.
    pub fn name(self) -> String {
        let pol = |p: Polarity| match p {
            Polarity::Positive => '+',
            Polarity::Negative => '-',
        };
        match self {
            MoveKind::Omega1(v, p) => format!("omega1{}{}", (b'a' + v as u8) as char, pol(p)),
            MoveKind::Omega2(v, p) => format!("omega2{}{}", (b'a' + v as u8) as char, pol(p)),
            MoveKind::Omega3(v) => format!("omega3{}", v.letter()),
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name().replacen("omega", "Ω", 1))
    }
}

impl Serialize for MoveKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// Coarse move families used to filter enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveClass {
    Omega1Positive,
    Omega1Negative,
    Omega2Positive,
    Omega2Negative,
    Omega3,
}

impl MoveClass {
    pub const ALL: [MoveClass; 5] = [
        MoveClass::Omega1Positive,
        MoveClass::Omega1Negative,
        MoveClass::Omega2Positive,
        MoveClass::Omega2Negative,
        MoveClass::Omega3,
    ];

    pub fn parse(s: &str) -> Option<MoveClass> {
        Some(match s {
            "omega1+" | "r1+" => MoveClass::Omega1Positive,
            "omega1-" | "r1-" => MoveClass::Omega1Negative,
            "omega2+" | "r2+" => MoveClass::Omega2Positive,
            "omega2-" | "r2-" => MoveClass::Omega2Negative,
            "omega3" | "r3" => MoveClass::Omega3,
            _ => return None,
        })
    }
}
