//! Structured ring descriptions and their text grammar.
//!
//! ```text
//! spec := Z(m) | GF(q) | M(n,spec) | T(n,spec) | prod(spec{,spec})
//! ```
//!
//! Whitespace is ignored everywhere. Matrix constructors need a commutative
//! base; upper triangular matrices additionally need a field.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::numth;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSpec {
    /// Integers modulo `m`.
    Z(u64),
    /// Finite field with `q = p^k` elements.
    GF(u64),
    /// Full `n x n` matrices.
    M(usize, Box<RingSpec>),
    /// Upper triangular `n x n` matrices.
    T(usize, Box<RingSpec>),
    Prod(Vec<RingSpec>),
}

impl RingSpec {
    pub fn is_commutative(&self) -> bool {
        match self {
            RingSpec::Z(_) | RingSpec::GF(_) => true,
            RingSpec::M(n, base) | RingSpec::T(n, base) => *n == 1 && base.is_commutative(),
            RingSpec::Prod(fs) => fs.iter().all(RingSpec::is_commutative),
        }
    }

    /// Commutative in the syntactic sense used by the matrix constructors:
    /// built only from `Z`, `GF` and `prod`.
    pub fn is_scalar(&self) -> bool {
        match self {
            RingSpec::Z(_) | RingSpec::GF(_) => true,
            RingSpec::Prod(fs) => fs.iter().all(RingSpec::is_scalar),
            _ => false,
        }
    }

    /// `GF(q)` or `Z(p)` with `p` prime.
    pub fn is_field_literal(&self) -> bool {
        match self {
            RingSpec::GF(_) => true,
            RingSpec::Z(m) => numth::is_prime(*m),
            _ => false,
        }
    }

    /// Order of the field when the spec is a field literal.
    pub fn field_order(&self) -> Option<u64> {
        match self {
            RingSpec::GF(q) => Some(*q),
            RingSpec::Z(p) if numth::is_prime(*p) => Some(*p),
            _ => None,
        }
    }

    /// Cardinality, computed without overflow up to `u128`.
    pub fn order(&self) -> Option<u128> {
        match self {
            RingSpec::Z(m) => Some(*m as u128),
            RingSpec::GF(q) => Some(*q as u128),
            RingSpec::M(n, base) => {
                let b = base.order()?;
                checked_pow(b, (n * n) as u32)
            }
            RingSpec::T(n, base) => {
                let b = base.order()?;
                checked_pow(b, (n * (n + 1) / 2) as u32)
            }
            RingSpec::Prod(fs) => fs
                .iter()
                .try_fold(1u128, |acc, f| acc.checked_mul(f.order()?)),
        }
    }

    /// Checks the semantic constraints of the grammar.
    pub fn validate(&self) -> Result<()> {
        match self {
            RingSpec::Z(m) => {
                if *m == 0 {
                    return Err(Error::Semantic("Z(m) needs m >= 1".into()));
                }
            }
            RingSpec::GF(q) => {
                if numth::prime_power(*q).is_none() {
                    return Err(Error::Semantic(format!("{q} is not a prime power")));
                }
            }
            RingSpec::M(n, base) => {
                if *n == 0 {
                    return Err(Error::Semantic("M(n, _) needs n >= 1".into()));
                }
                base.validate()?;
                if !base.is_scalar() {
                    return Err(Error::Semantic(format!(
                        "M({n}, {base}) needs a commutative base built from Z, GF and prod"
                    )));
                }
            }
            RingSpec::T(n, base) => {
                if *n == 0 {
                    return Err(Error::Semantic("T(n, _) needs n >= 1".into()));
                }
                base.validate()?;
                if !base.is_field_literal() {
                    return Err(Error::Semantic(format!(
                        "T({n}, {base}) needs a field base (GF(q) or Z(p) with p prime)"
                    )));
                }
            }
            RingSpec::Prod(fs) => {
                if fs.is_empty() {
                    return Err(Error::Semantic("prod() needs at least one factor".into()));
                }
                for f in fs {
                    f.validate()?;
                }
            }
        }
        Ok(())
    }
}

fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    (0..exp).try_fold(1u128, |acc, _| acc.checked_mul(base))
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Z(m) => write!(f, "Z({m})"),
            RingSpec::GF(q) => write!(f, "GF({q})"),
            RingSpec::M(n, b) => write!(f, "M({n},{b})"),
            RingSpec::T(n, b) => write!(f, "T({n},{b})"),
            RingSpec::Prod(fs) => {
                f.write_str("prod(")?;
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

/// Parses and validates a ring description.
pub fn parse_spec(text: &str) -> Result<RingSpec> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    spec.validate()?;
    Ok(spec)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a constructor (Z, GF, M, T or prod)"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a positive integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::Syntax { pos: start, msg: "integer too large".into() })
    }

    fn size(&mut self) -> Result<usize> {
        let start = self.pos;
        let n = self.number()?;
        usize::try_from(n)
            .ok()
            .filter(|&n| n <= 64)
            .ok_or(Error::Syntax { pos: start, msg: "matrix size too large".into() })
    }

    fn spec(&mut self) -> Result<RingSpec> {
        let at = self.pos;
        let name = self.ident()?.to_string();
        self.expect(b'(')?;
        let spec = match name.as_str() {
            "Z" => RingSpec::Z(self.number()?),
            "GF" => RingSpec::GF(self.number()?),
            "M" | "T" => {
                let n = self.size()?;
                self.expect(b',')?;
                let base = Box::new(self.spec()?);
                if name == "M" {
                    RingSpec::M(n, base)
                } else {
                    RingSpec::T(n, base)
                }
            }
            "prod" => {
                let mut fs = vec![self.spec()?];
                loop {
                    self.skip_ws();
                    if self.src.get(self.pos) == Some(&b',') {
                        self.pos += 1;
                        fs.push(self.spec()?);
                    } else {
                        break;
                    }
                }
                RingSpec::Prod(fs)
            }
            other => {
                return Err(Error::Syntax { pos: at, msg: format!("unknown constructor '{other}'") })
            }
        };
        self.expect(b')')?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_spec("M(2,GF(2))").unwrap(),
            RingSpec::M(2, Box::new(RingSpec::GF(2)))
        );
        assert_eq!(
            parse_spec("prod(Z(2),Z(3))").unwrap(),
            RingSpec::Prod(vec![RingSpec::Z(2), RingSpec::Z(3)])
        );
        assert_eq!(
            parse_spec("  T ( 3 , GF( 4 ) ) ").unwrap(),
            RingSpec::T(3, Box::new(RingSpec::GF(4)))
        );
    }

    #[test]
    fn rejects_non_prime_power_field() {
        let err = parse_spec("GF(6)").unwrap_err();
        assert!(matches!(err, Error::Semantic(ref m) if m.contains("6 is not a prime power")));
    }

    #[test]
    fn rejects_bad_bases() {
        assert!(matches!(parse_spec("T(2,Z(6))"), Err(Error::Semantic(_))));
        assert!(matches!(parse_spec("M(2,M(2,GF(2)))"), Err(Error::Semantic(_))));
        assert!(matches!(parse_spec("T(2,prod(Z(2),Z(3)))"), Err(Error::Semantic(_))));
        assert!(parse_spec("T(2,Z(5))").is_ok());
        assert!(parse_spec("M(2,prod(Z(2),Z(3)))").is_ok());
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert_eq!(
            parse_spec("M(2 GF(2))"),
            Err(Error::Syntax { pos: 4, msg: "expected ','".into() })
        );
        assert!(matches!(parse_spec("Q(3)"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_spec("Z(3))"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_spec("prod()"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_spec(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn orders() {
        assert_eq!(parse_spec("M(2,GF(3))").unwrap().order(), Some(81));
        assert_eq!(parse_spec("T(3,GF(2))").unwrap().order(), Some(64));
        assert_eq!(parse_spec("prod(Z(2),M(2,GF(2)))").unwrap().order(), Some(32));
    }

    fn arb_spec() -> impl Strategy<Value = RingSpec> {
        let leaf = prop_oneof![
            (1u64..40).prop_map(RingSpec::Z),
            prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 16, 25]).prop_map(RingSpec::GF),
        ];
        let scalar = leaf.clone().prop_recursive(2, 6, 3, |inner| {
            prop::collection::vec(inner, 1..3).prop_map(RingSpec::Prod)
        });
        prop_oneof![
            scalar.clone(),
            (1usize..4, scalar).prop_map(|(n, b)| RingSpec::M(n, Box::new(b))),
            (1usize..4, prop::sample::select(vec![2u64, 3, 4, 5]))
                .prop_map(|(n, q)| RingSpec::T(n, Box::new(RingSpec::GF(q)))),
        ]
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(spec in arb_spec()) {
            let text = spec.to_string();
            prop_assert_eq!(parse_spec(&text).unwrap(), spec);
        }
    }
}
