//! The group-spec mini-language.
//!
//! ```text
//! spec    := factor ('*' factor)*
//! factor  := 'C:' n          cyclic of order n >= 1
//!          | 'D:' n          dihedral of order 2n, n >= 1
//!          | 'Q:' order      generalized quaternion, order 2^k (k >= 3), written 16 or 2^4
//!          | 'Dic:' n        dicyclic of order 4n, n >= 1
//!          | 'S:' n          symmetric on n >= 1 points
//!          | 'A:' n          alternating on n >= 1 points
//!          | 'SL2:' q        SL(2, q), q = 2^p with 1 <= p <= 8, written 8 or 2^3
//!          | 'file:' PATH    permutation generators, one per line
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::GroupError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u32),
    Dihedral(u32),
    /// Generalized quaternion of order `2^k`; holds `k`.
    Quaternion(u32),
    Dicyclic(u32),
    Symmetric(u32),
    Alternating(u32),
    /// `SL(2, 2^p)`; holds `p`.
    Sl2(u32),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    File(PathBuf),
}

impl GroupSpec {
    /// Order implied by the spec, when it can be known without enumeration.
    pub fn expected_order(&self) -> Option<u128> {
        use GroupSpec::*;
        Some(match self {
            Cyclic(n) => *n as u128,
            Dihedral(n) => 2 * *n as u128,
            Quaternion(k) => 1u128.checked_shl(*k)?,
            Dicyclic(n) => 4 * *n as u128,
            Symmetric(n) => factorial(*n)?,
            Alternating(n) => factorial(*n)?.div_ceil(2).max(1),
            Sl2(p) => {
                let q = 1u128 << p;
                q * q * q - q
            }
            Product(a, b) => a.expected_order()?.checked_mul(b.expected_order()?)?,
            File(_) => return None,
        })
    }
}

fn factorial(n: u32) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

fn parse_count(spec: &str, text: &str) -> Result<u32, GroupError> {
    text.trim()
        .parse::<u32>()
        .map_err(|_| GroupError::parse(spec, format!("'{text}' is not a positive integer")))
}

/// Accepts `2^k` or the literal power; returns `k`.
fn parse_power_of_two(spec: &str, text: &str) -> Result<u32, GroupError> {
    let text = text.trim();
    if let Some(exp) = text.strip_prefix("2^") {
        return parse_count(spec, exp);
    }
    let v = text
        .parse::<u64>()
        .map_err(|_| GroupError::parse(spec, format!("'{text}' is not a number")))?;
    if v == 0 || !v.is_power_of_two() {
        return Err(GroupError::parse(spec, format!("{v} is not a power of 2")));
    }
    Ok(v.trailing_zeros())
}

fn parse_factor(spec: &str, text: &str) -> Result<GroupSpec, GroupError> {
    let text = text.trim();
    let (head, arg) = text
        .split_once(':')
        .ok_or_else(|| GroupError::parse(spec, format!("'{text}' has no ':'")))?;
    let positive = |n: u32| {
        if n == 0 {
            Err(GroupError::parse(spec, "parameter must be at least 1"))
        } else {
            Ok(n)
        }
    };
    Ok(match head.trim() {
        "C" => GroupSpec::Cyclic(positive(parse_count(spec, arg)?)?),
        "D" => GroupSpec::Dihedral(positive(parse_count(spec, arg)?)?),
        "Dic" => GroupSpec::Dicyclic(positive(parse_count(spec, arg)?)?),
        "S" => GroupSpec::Symmetric(positive(parse_count(spec, arg)?)?),
        "A" => GroupSpec::Alternating(positive(parse_count(spec, arg)?)?),
        "Q" => {
            let k = parse_power_of_two(spec, arg)?;
            if k < 3 {
                return Err(GroupError::QuaternionExponent(k));
            }
            GroupSpec::Quaternion(k)
        }
        "SL2" => {
            let p = parse_power_of_two(spec, arg)?;
            if !(1..=8).contains(&p) {
                return Err(GroupError::parse(
                    spec,
                    "SL2 needs q = 2^p with 1 <= p <= 8",
                ));
            }
            GroupSpec::Sl2(p)
        }
        "file" => {
            if arg.trim().is_empty() {
                return Err(GroupError::parse(spec, "empty file path"));
            }
            GroupSpec::File(PathBuf::from(arg.trim()))
        }
        other => return Err(GroupError::parse(spec, format!("unknown family '{other}'"))),
    })
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut factors = s.split('*').map(|f| parse_factor(s, f));
        let first = factors
            .next()
            .ok_or_else(|| GroupError::parse(s, "empty spec"))??;
        factors.try_fold(first, |acc, f| {
            Ok(GroupSpec::Product(Box::new(acc), Box::new(f?)))
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupSpec::*;
        match self {
            Cyclic(n) => write!(f, "C:{n}"),
            Dihedral(n) => write!(f, "D:{n}"),
            Quaternion(k) => write!(f, "Q:{}", 1u64 << k),
            Dicyclic(n) => write!(f, "Dic:{n}"),
            Symmetric(n) => write!(f, "S:{n}"),
            Alternating(n) => write!(f, "A:{n}"),
            Sl2(p) => write!(f, "SL2:{}", 1u32 << p),
            Product(a, b) => write!(f, "{a}*{b}"),
            File(p) => write!(f, "file:{}", p.display()),
        }
    }
}
