use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Cartan–Killing type of a split simple algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => CartanType::A,
            'B' => CartanType::B,
            'C' => CartanType::C,
            'D' => CartanType::D,
            'E' => CartanType::E,
            'F' => CartanType::F,
            'G' => CartanType::G,
            _ => return None,
        })
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 3,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        }
    }
}

/// Which algebra to build.
///
/// The `(p, q)` families are kept with `p <= q`; constructors and the parser
/// swap the parameters when needed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraSpec {
    /// `sl(n, R)`.
    SlR { n: usize },
    /// `so(p, q)`.
    So { p: usize, q: usize },
    /// `su(p, q)`, realified.
    Su { p: usize, q: usize },
    /// `sp(p, q)`, quaternionic, realified.
    Sp { p: usize, q: usize },
    /// Split real form of the given Cartan type.
    Split { ty: CartanType, rank: usize },
}

impl AlgebraSpec {
    pub fn sl(n: usize) -> Self {
        AlgebraSpec::SlR { n }
    }

    pub fn so(p: usize, q: usize) -> Self {
        AlgebraSpec::So {
            p: p.min(q),
            q: p.max(q),
        }
    }

    pub fn su(p: usize, q: usize) -> Self {
        AlgebraSpec::Su {
            p: p.min(q),
            q: p.max(q),
        }
    }

    pub fn sp(p: usize, q: usize) -> Self {
        AlgebraSpec::Sp {
            p: p.min(q),
            q: p.max(q),
        }
    }

    pub fn split(ty: CartanType, rank: usize) -> Self {
        AlgebraSpec::Split { ty, rank }
    }

    /// Parameters out of range for the family are rejected here.
    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::RankOutOfRange(format!("{self}: {why}")));
        match *self {
            AlgebraSpec::SlR { n } if n < 2 => bad("n must be at least 2"),
            AlgebraSpec::So { p: 0, .. } => bad("compact form has no restricted roots"),
            AlgebraSpec::So { p, q } if p + q < 3 => bad("p + q must be at least 3"),
            AlgebraSpec::Su { p, .. } | AlgebraSpec::Sp { p, .. } if p == 0 => {
                bad("compact form has no restricted roots")
            }
            AlgebraSpec::Split { ty, rank } if !ty.valid_rank(rank) => bad("invalid rank for type"),
            _ => Ok(()),
        }
    }

    /// True for the families where the derivation algebra of n is strictly
    /// larger than `ad(m + a)`: `so(1, q)` with `q >= 3`, `su(1, q)` with
    /// `q >= 2`, and `sp(1, 1)`, which is isomorphic to `so(1, 4)`.
    ///
    /// The low-dimensional coincidences `so(1, 2)` and `su(1, 1)` have a
    /// one-dimensional n, where the two sides agree.
    pub fn exceptional_expected(&self) -> bool {
        match *self {
            AlgebraSpec::So { p: 1, q } => q >= 3,
            AlgebraSpec::Su { p: 1, q } => q >= 2,
            AlgebraSpec::Sp { p: 1, q: 1 } => true,
            _ => false,
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AlgebraSpec::SlR { n } => write!(f, "sl{n}R"),
            AlgebraSpec::So { p, q } => write!(f, "so({p},{q})"),
            AlgebraSpec::Su { p, q } => write!(f, "su({p},{q})"),
            AlgebraSpec::Sp { p, q } => write!(f, "sp({p},{q})"),
            AlgebraSpec::Split { ty, rank } => write!(f, "split-{}{rank}", ty.letter()),
        }
    }
}

fn parse_usize(s: &str, whole: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| {
        Error::Parse(format!(
            "'{whole}': expected a non-negative integer, got '{s}'"
        ))
    })
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    /// Accepts `sl3R`, `sl(3,R)`, `so(1,3)`, `su(2,3)`, `sp(1,2)`, `split-G2`.
    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let parse_err = || Error::Parse(format!("cannot parse algebra name '{input}'"));

        if let Some(rest) = s.strip_prefix("split-") {
            let mut chars = rest.chars();
            let letter = chars.next().ok_or_else(parse_err)?;
            let ty = CartanType::from_letter(letter)
                .ok_or_else(|| Error::UnsupportedType(letter.to_string()))?;
            let rank = parse_usize(chars.as_str().trim_start_matches('_'), input)?;
            let spec = AlgebraSpec::split(ty, rank);
            spec.validate()?;
            return Ok(spec);
        }

        if let Some(rest) = s.strip_prefix("sl") {
            let n = if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(",R)"))
            {
                inner
            } else if let Some(inner) = rest.strip_suffix('R') {
                inner
            } else {
                return Err(parse_err());
            };
            let spec = AlgebraSpec::sl(parse_usize(n, input)?);
            spec.validate()?;
            return Ok(spec);
        }

        let open = s.find('(').ok_or_else(parse_err)?;
        let (family, rest) = s.split_at(open);
        let args = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(parse_err)?;
        let (a, b) = args.split_once(',').ok_or_else(parse_err)?;
        let (p, q) = (parse_usize(a, input)?, parse_usize(b, input)?);
        let spec = match family {
            "so" => AlgebraSpec::so(p, q),
            "su" => AlgebraSpec::su(p, q),
            "sp" => AlgebraSpec::sp(p, q),
            other => return Err(Error::UnsupportedFamily(other.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_grammar() {
        assert_eq!("sl3R".parse::<AlgebraSpec>().unwrap(), AlgebraSpec::sl(3));
        assert_eq!(
            "sl(4,R)".parse::<AlgebraSpec>().unwrap(),
            AlgebraSpec::sl(4)
        );
        assert_eq!(
            "so(1,3)".parse::<AlgebraSpec>().unwrap(),
            AlgebraSpec::so(1, 3)
        );
        assert_eq!(
            "so(3, 1)".parse::<AlgebraSpec>().unwrap(),
            AlgebraSpec::So { p: 1, q: 3 }
        );
        assert_eq!(
            "su(2,3)".parse::<AlgebraSpec>().unwrap(),
            AlgebraSpec::su(2, 3)
        );
        assert_eq!(
            "sp(1,2)".parse::<AlgebraSpec>().unwrap(),
            AlgebraSpec::sp(1, 2)
        );
        assert_eq!(
            "split-G2".parse::<AlgebraSpec>().unwrap(),
            AlgebraSpec::split(CartanType::G, 2)
        );
    }

    #[test]
    fn display_round_trips() {
        for name in [
            "sl3R", "so(2,3)", "su(1,2)", "sp(1,2)", "split-B2", "split-E6",
        ] {
            assert_eq!(name.parse::<AlgebraSpec>().unwrap().to_string(), name);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            "bogus(9".parse::<AlgebraSpec>(),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            "f4(4,-20)".parse::<AlgebraSpec>(),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            "e7(1,2)".parse::<AlgebraSpec>(),
            Err(Error::UnsupportedFamily(_))
        ));
        assert!(matches!(
            "split-X3".parse::<AlgebraSpec>(),
            Err(Error::UnsupportedType(_))
        ));
        assert!(matches!(
            "split-G3".parse::<AlgebraSpec>(),
            Err(Error::RankOutOfRange(_))
        ));
        assert!(matches!(
            "so(0,4)".parse::<AlgebraSpec>(),
            Err(Error::RankOutOfRange(_))
        ));
        assert!(matches!(
            "sl1R".parse::<AlgebraSpec>(),
            Err(Error::RankOutOfRange(_))
        ));
    }

    #[test]
    fn exceptional_families() {
        let names = ["so(1,3)", "so(1,5)", "su(1,2)", "su(1,3)", "sp(1,1)"];
        for n in names {
            assert!(
                n.parse::<AlgebraSpec>().unwrap().exceptional_expected(),
                "{n}"
            );
        }
        for n in [
            "so(1,2)", "su(1,1)", "sl2R", "so(2,3)", "sp(1,2)", "su(2,3)",
        ] {
            assert!(
                !n.parse::<AlgebraSpec>().unwrap().exceptional_expected(),
                "{n}"
            );
        }
    }
}
