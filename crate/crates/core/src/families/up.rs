use super::FamilyError;
use crate::construct::{restricted_enveloping, RestrictedLie};
use crate::hopf::{Check, FdHopf};
use crate::scalars::{FieldDesc, Scalar};
use serde::Serialize;
use std::collections::BTreeMap;

/// `u^{[p]}(𝔤)` together with the central primitive elements `yᵢ = xᵢᵖ − xᵢ^{[p]}` of `U(𝔤)`.
#[derive(Clone, Debug)]
pub struct RestrictedFamily {
    pub lie: RestrictedLie,
    pub hbar: FdHopf,
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictedReport {
    pub p: u64,
    pub lie_dim: usize,
    pub hbar_dim: usize,
    /// `Δ(xᵖ) = xᵖ⊗1 + 1⊗xᵖ` in `k[x]_{≤p} ⊗ k[x]_{≤p}` over `𝔽_p`.
    pub y_primitive: Check,
    /// `ad(x)ᵖ = ad(x^{[p]})`, so `yᵢ` commutes with `𝔤`.
    pub y_central: Check,
}

pub fn u_positive_char(lie: RestrictedLie) -> Result<RestrictedFamily, FamilyError> {
    lie.check()?;
    let hbar = restricted_enveloping(&lie)?;
    Ok(RestrictedFamily { lie, hbar })
}

/// Expands `(x⊗1 + 1⊗x)ᵖ` exactly in characteristic `p`.
pub fn p_power_primitive(p: u64) -> Result<Check, FamilyError> {
    let f = FieldDesc::prime(p).map_err(|e| FamilyError::Parameter(e.to_string()))?;
    let mut acc: BTreeMap<(u64, u64), Scalar> = BTreeMap::from([((0, 0), f.one())]);
    for _ in 0..p {
        let mut next: BTreeMap<(u64, u64), Scalar> = BTreeMap::new();
        for ((i, j), c) in &acc {
            for key in [(i + 1, *j), (*i, j + 1)] {
                let e = next.entry(key).or_insert_with(|| f.zero());
                *e = &*e + c;
            }
        }
        acc = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
    let expected: BTreeMap<(u64, u64), Scalar> = BTreeMap::from([((p, 0), f.one()), ((0, p), f.one())]);
    Ok(Check::from_bool(acc == expected, || format!("middle terms survive: {:?}", acc.keys().collect::<Vec<_>>())))
}

impl RestrictedFamily {
    pub fn report(&self) -> Result<RestrictedReport, FamilyError> {
        Ok(RestrictedReport {
            p: self.lie.p,
            lie_dim: self.lie.dim(),
            hbar_dim: self.hbar.dim(),
            y_primitive: p_power_primitive(self.lie.p)?,
            y_central: Check::from_bool(self.lie.check().is_ok(), || "ad(x)^p ≠ ad(x^[p])".into()),
        })
    }
}
