//! Worked families: infinite-dimensional Hopf algebras finite over a commutative normal Hopf subalgebra.

pub mod abf;
pub mod dihedral;
pub mod liu;
pub mod skewplane;
pub mod taft;
pub mod ueps;
pub mod up;

pub use abf::AbelianByFinite;
pub use dihedral::Dihedral;
pub use liu::Liu;
pub use skewplane::SkewPlane;
pub use taft::Taft;
pub use ueps::UEpsSl2;
pub use up::{u_positive_char, RestrictedFamily};

use crate::based::BasedHopf;
use crate::construct::{ConstructError, RestrictedLie};
use crate::scalars::{FieldDesc, Scalar};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("cannot parse family reference {0:?}: {1}")]
    Syntax(String, String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// A parsed family reference.
pub enum Family {
    Based(Box<dyn BasedHopf>),
    Restricted(RestrictedFamily),
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::Based(h) => h.name(),
            Family::Restricted(r) => format!("u({} over F_{})", r.lie.labels.join(","), r.lie.p),
        }
    }
}

/// Smallest cyclotomic field containing primitive `n`-th roots of unity.
pub fn minimal_field(n: u64) -> Result<FieldDesc, FamilyError> {
    if n <= 2 {
        Ok(FieldDesc::Rationals)
    } else {
        FieldDesc::cyclotomic(n as u32).map_err(|e| FamilyError::Parameter(e.to_string()))
    }
}

/// `zetaN`, `zetaN^k`, or any scalar literal of the field.
pub fn parse_scalar_token(tok: &str, field: &FieldDesc) -> Result<Scalar, FamilyError> {
    let tok = tok.trim();
    if let Some(rest) = tok.strip_prefix("zeta") {
        let (base, exp) = match rest.split_once('^') {
            Some((b, e)) => (b, e.parse::<i64>().map_err(|e| FamilyError::Syntax(tok.into(), e.to_string()))?),
            None => (rest, 1),
        };
        let n: u64 = base.parse().map_err(|_| FamilyError::Syntax(tok.into(), "expected zetaN".into()))?;
        let z = field.root_of_unity(n).ok_or_else(|| FamilyError::Parameter(format!("{field} has no primitive {n}-th root of unity")))?;
        return Ok(z.pow(exp));
    }
    Scalar::parse(tok, field).map_err(|e| FamilyError::Syntax(tok.into(), e.to_string()))
}

fn ints(r: &str, args: &str) -> Result<Vec<u64>, FamilyError> {
    args.split(',').map(|t| t.trim().parse::<u64>().map_err(|_| FamilyError::Syntax(r.into(), format!("expected an integer, got {t:?}")))).collect()
}

/// Parses references such as `dihedral`, `taft:4,2,zeta4`, `liu:2,1,-1`, `qplane:4,2,zeta4`,
/// `bfam:1,1,2,3`, `ueps_sl2:3`, `abf:2:2:0,1/1,0`, `up:sl2,5`.
pub fn parse_family(r: &str, field: Option<FieldDesc>) -> Result<Family, FamilyError> {
    let (kind, args) = r.split_once(':').unwrap_or((r, ""));
    let syntax = |m: &str| FamilyError::Syntax(r.into(), m.into());
    let three = |args: &str| -> Result<(u64, u64, String), FamilyError> {
        let parts: Vec<&str> = args.split(',').collect();
        if parts.len() != 3 {
            return Err(syntax("expected three parameters"));
        }
        let a = parts[0].trim().parse().map_err(|_| syntax("first parameter must be an integer"))?;
        let b = parts[1].trim().parse().map_err(|_| syntax("second parameter must be an integer"))?;
        Ok((a, b, parts[2].trim().to_string()))
    };
    let based = |h: Box<dyn BasedHopf>| Ok(Family::Based(h));
    match kind {
        "dihedral" => based(Box::new(Dihedral::new(field.unwrap_or(FieldDesc::Rationals)))),
        "taft" => {
            let (n, t, q) = three(args)?;
            let f = field.map_or_else(|| minimal_field(n), Ok)?;
            based(Box::new(Taft::new(n, t, parse_scalar_token(&q, &f)?)?))
        }
        "liu" => {
            let (n, w, q) = three(args)?;
            let f = field.map_or_else(|| minimal_field(n), Ok)?;
            based(Box::new(Liu::new(n, w, parse_scalar_token(&q, &f)?)?))
        }
        "qplane" => {
            let (l, n, q) = three(args)?;
            let f = field.map_or_else(|| minimal_field(l), Ok)?;
            based(Box::new(SkewPlane::qplane(l, n, parse_scalar_token(&q, &f)?)?))
        }
        "bfam" => {
            let v = ints(r, args)?;
            if v.len() < 4 {
                return Err(syntax("expected n, p0, p1, …, ps with s ≥ 2"));
            }
            based(Box::new(SkewPlane::bfam(v[0], &v[1..], None)?))
        }
        "ueps_sl2" => {
            let v = ints(r, args)?;
            if v.len() != 1 {
                return Err(syntax("expected ℓ"));
            }
            based(Box::new(UEpsSl2::new(v[0], None)?))
        }
        "abf" => {
            let parts: Vec<&str> = args.split(':').collect();
            if parts.len() != 3 {
                return Err(syntax("expected abf:rank:order:row/row/…"));
            }
            let rank: usize = parts[0].parse().map_err(|_| syntax("rank must be an integer"))?;
            let m: usize = parts[1].parse().map_err(|_| syntax("group order must be an integer"))?;
            let rows: Vec<Vec<i64>> = parts[2]
                .split('/')
                .map(|row| row.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| syntax("matrix entries must be integers"))).collect())
                .collect::<Result<_, _>>()?;
            if rows.len() != rank {
                return Err(syntax("matrix must have rank rows"));
            }
            based(Box::new(AbelianByFinite::cyclic(field.unwrap_or(FieldDesc::Rationals), m, rows)?))
        }
        "up" => {
            let parts: Vec<&str> = args.split(',').collect();
            if parts.len() != 2 {
                return Err(syntax("expected up:sl2,p or up:abelianN,p"));
            }
            let p: u64 = parts[1].trim().parse().map_err(|_| syntax("p must be an integer"))?;
            let lie = match parts[0].trim() {
                "sl2" => RestrictedLie::sl2(p)?,
                other => match other.strip_prefix("abelian").and_then(|n| n.parse::<usize>().ok()) {
                    Some(n) => RestrictedLie::abelian(n, p)?,
                    None => return Err(syntax("unknown restricted Lie algebra")),
                },
            };
            Ok(Family::Restricted(u_positive_char(lie)?))
        }
        _ => Err(syntax("unknown family")),
    }
}
