//! Text grammar for naming groups on the command line:
//! `a5 | s5 | sl2(5) | subdirect-sl25 | gn(p,q,n) | perm{…} | mat(q){…}`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A parsed group description. Materialization happens in [`crate::catalog`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    /// Alternating group on 5 points.
    A5,
    /// Symmetric group on 5 points.
    S5,
    /// 2×2 determinant-one matrices over 𝔽_q.
    Sl2 { q: u64 },
    /// The subdirect subgroup of SL₂(5)² lying over the diagonal A₅.
    SubdirectSl25,
    /// The shift-module semidirect product G_n(p, q).
    Gn { p: u64, q: u64, n: u32 },
    /// Permutation group from explicit generators in cycle notation,
    /// separated by `;` (degree inferred from the largest moved point).
    Perm { gens: Vec<String> },
    /// Matrix group over 𝔽_q from explicit generators given as row-major
    /// integer lists separated by `;` (dimension inferred, must be square).
    Mat { q: u64, gens: Vec<Vec<i64>> },
}

fn parse_u64(text: &str, what: &str) -> Result<u64, Error> {
    text.trim()
        .parse::<u64>()
        .map_err(|_| Error::InvalidParameter(format!("{what}: expected an integer, got {text:?}")))
}

/// Splits `body` on `;`, trimming parts and rejecting empties.
fn split_parts(body: &str, what: &str) -> Result<Vec<String>, Error> {
    let parts: Vec<String> =
        body.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    if parts.is_empty() {
        return Err(Error::InvalidParameter(format!("{what}: needs at least one generator")));
    }
    Ok(parts)
}

/// Extracts `body` from `text` of the shape `prefix(body)` or
/// `prefix{body}` depending on the delimiters given.
fn delimited<'a>(
    text: &'a str,
    prefix: &str,
    open: char,
    close: char,
) -> Option<Result<&'a str, Error>> {
    let rest = text.strip_prefix(prefix)?.trim_start();
    let rest = rest.strip_prefix(open)?;
    Some(
        rest.strip_suffix(close)
            .ok_or_else(|| Error::InvalidParameter(format!("{text:?}: missing closing {close:?}"))),
    )
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let text = s.trim();
        match text {
            "a5" => return Ok(GroupSpec::A5),
            "s5" => return Ok(GroupSpec::S5),
            "subdirect-sl25" => return Ok(GroupSpec::SubdirectSl25),
            _ => {}
        }
        if let Some(body) = delimited(text, "sl2", '(', ')') {
            let q = parse_u64(body?, "sl2 field size")?;
            return Ok(GroupSpec::Sl2 { q });
        }
        if let Some(body) = delimited(text, "gn", '(', ')') {
            let body = body?;
            let nums: Vec<&str> = body.split(',').collect();
            if nums.len() != 3 {
                return Err(Error::InvalidParameter(format!(
                    "gn(p,q,n): expected three arguments, got {body:?}"
                )));
            }
            let p = parse_u64(nums[0], "gn p")?;
            let q = parse_u64(nums[1], "gn q")?;
            let n = parse_u64(nums[2], "gn n")?;
            let n = u32::try_from(n)
                .map_err(|_| Error::InvalidParameter(format!("gn n out of range: {n}")))?;
            return Ok(GroupSpec::Gn { p, q, n });
        }
        if let Some(body) = delimited(text, "perm", '{', '}') {
            let gens = split_parts(body?, "perm{…}")?;
            return Ok(GroupSpec::Perm { gens });
        }
        if let Some(body) = delimited(text, "mat", '(', ')') {
            // Shape is mat(q){...}: the '(' parse above stops at the first ')',
            // so recover q and the brace block manually.
            let _ = body;
            let after = &text[3..];
            let close = after.find(')').ok_or_else(|| {
                Error::InvalidParameter(format!("{text:?}: missing ')' after mat(q"))
            })?;
            let q = parse_u64(after[..close].trim_start_matches('('), "mat field size")?;
            let block = after[close + 1..].trim();
            let block = block
                .strip_prefix('{')
                .and_then(|b| b.strip_suffix('}'))
                .ok_or_else(|| {
                    Error::InvalidParameter(format!("{text:?}: expected mat(q){{…}}"))
                })?;
            let mut gens = Vec::new();
            for part in split_parts(block, "mat(q){…}")? {
                let entries: Result<Vec<i64>, Error> = part
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<i64>().map_err(|_| {
                            Error::InvalidParameter(format!("matrix entry {t:?} is not an integer"))
                        })
                    })
                    .collect();
                gens.push(entries?);
            }
            return Ok(GroupSpec::Mat { q, gens });
        }
        Err(Error::InvalidParameter(format!(
            "unrecognized group spec {text:?} (expected a5 | s5 | sl2(5) | subdirect-sl25 | \
             gn(p,q,n) | perm{{…}} | mat(q){{…}})"
        )))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::A5 => write!(f, "a5"),
            GroupSpec::S5 => write!(f, "s5"),
            GroupSpec::Sl2 { q } => write!(f, "sl2({q})"),
            GroupSpec::SubdirectSl25 => write!(f, "subdirect-sl25"),
            GroupSpec::Gn { p, q, n } => write!(f, "gn({p},{q},{n})"),
            GroupSpec::Perm { gens } => write!(f, "perm{{{}}}", gens.join(";")),
            GroupSpec::Mat { q, gens } => {
                let parts: Vec<String> = gens
                    .iter()
                    .map(|m| m.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "mat({q}){{{}}}", parts.join(";"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups_parse() {
        assert_eq!("a5".parse::<GroupSpec>().unwrap(), GroupSpec::A5);
        assert_eq!(" s5 ".parse::<GroupSpec>().unwrap(), GroupSpec::S5);
        assert_eq!("sl2(5)".parse::<GroupSpec>().unwrap(), GroupSpec::Sl2 { q: 5 });
        assert_eq!("subdirect-sl25".parse::<GroupSpec>().unwrap(), GroupSpec::SubdirectSl25);
        assert_eq!(
            "gn(5,2,1)".parse::<GroupSpec>().unwrap(),
            GroupSpec::Gn { p: 5, q: 2, n: 1 }
        );
    }

    #[test]
    fn perm_spec_splits_generators() {
        let spec = "perm{(1 2 3 4 5);(1 2)(3 4)}".parse::<GroupSpec>().unwrap();
        assert_eq!(
            spec,
            GroupSpec::Perm { gens: vec!["(1 2 3 4 5)".into(), "(1 2)(3 4)".into()] }
        );
    }

    #[test]
    fn mat_spec_parses_entries() {
        let spec = "mat(5){1,1,0,1;0,4,1,0}".parse::<GroupSpec>().unwrap();
        assert_eq!(
            spec,
            GroupSpec::Mat { q: 5, gens: vec![vec![1, 1, 0, 1], vec![0, 4, 1, 0]] }
        );
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in ["a6", "gn(5,2)", "gn(5,2,1,9)", "perm{}", "mat(5)", "sl2(x)", ""] {
            assert!(bad.parse::<GroupSpec>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn display_round_trips() {
        for text in ["a5", "s5", "sl2(5)", "subdirect-sl25", "gn(5,3,2)"] {
            let spec: GroupSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
            assert_eq!(spec.to_string().parse::<GroupSpec>().unwrap(), spec);
        }
    }
}
