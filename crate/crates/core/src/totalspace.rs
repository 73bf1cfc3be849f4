//! Ext groups on `V = Tot(𝒪_F(-h-H))` between sheaves pushed forward from
//! the zero section, and canonical classes of total spaces.
//!
//! `𝒪_F` has the Koszul resolution `0 → 𝒪_V(h+H) → 𝒪_V → 𝒪_F → 0`, so for
//! bundles `A`, `B` on `F`
//!
//! ```text
//! hom_V(A, B) = h( { A∨⊗B  →  A∨⊗B(-h-H) } )
//! ```
//!
//! with the first term in degree 0 and the second in degree 1. The
//! connecting map is never computed: a result is reported only when no
//! degree carries both terms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bundles::{cohomology_f, weights, BundleCohomology, BundleExpr};
use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};
use crate::weylbott::{filtration_euler_characteristic, CohomologyProfile};

/// Twist of the second Koszul term: `𝒪_V(h+H)` dualized.
pub const KOSZUL_TWIST: (i64, i64) = (-1, -1);

/// The line bundle whose dual's total space is `V`.
pub const FIBER: (i64, i64) = (1, 1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomStatus {
    Determined,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomVResult {
    /// Cohomology of `A∨⊗B`.
    pub first: BundleCohomology,
    /// Cohomology of `A∨⊗B(-h-H)`, before the shift by one.
    pub second: BundleCohomology,
    pub status: HomStatus,
    pub profile: Option<CohomologyProfile>,
    /// `χ(A∨⊗B) - χ(A∨⊗B(-h-H))`, available even when undetermined.
    pub euler_characteristic: i64,
}

impl HomVResult {
    pub fn is_determined(&self) -> bool {
        self.status == HomStatus::Determined
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.profile, Some(p) if p.is_zero())
    }
}

impl fmt::Display for HomVResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.profile {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "indeterminate"),
        }
    }
}

/// The two complex terms for `hom_V(A, B)`.
pub fn koszul_terms(a: &BundleExpr, b: &BundleExpr) -> (BundleExpr, BundleExpr) {
    let first = a.clone().dual().tensor(b.clone());
    let second = first.clone().twist(KOSZUL_TWIST.0, KOSZUL_TWIST.1);
    (first, second)
}

pub fn hom_v(rs: &RootSystem, a: &BundleExpr, b: &BundleExpr) -> Result<HomVResult> {
    let (e0, e1) = koszul_terms(a, b);
    let first = cohomology_f(rs, &e0)?;
    let second = cohomology_f(rs, &e1)?;
    let euler_characteristic = filtration_euler_characteristic(rs, weights(rs, &e0)?.weights())?
        - filtration_euler_characteristic(rs, weights(rs, &e1)?.weights())?;

    let profile = match (first.resolved(), second.resolved()) {
        (Some(p0), Some(p1)) => {
            let clash = p0.degrees().iter().any(|d| p1.degrees().contains(d));
            if clash {
                None
            } else {
                Some(p0.union(&p1.shifted(1)))
            }
        }
        _ => None,
    };
    let status = if profile.is_some() {
        HomStatus::Determined
    } else {
        HomStatus::Indeterminate
    };
    Ok(HomVResult {
        first,
        second,
        status,
        profile,
        euler_characteristic,
    })
}

/// Homogeneous bases of the rank-2 group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Base {
    /// `G/P₁`
    G,
    /// `G/P₂`
    Q,
    /// `G/B`
    F,
}

impl Base {
    /// Simple roots of the Levi factor.
    pub fn levi(self) -> &'static [usize] {
        match self {
            Base::G => &[1],
            Base::Q => &[0],
            Base::F => &[],
        }
    }
}

impl FromStr for Base {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" | "g" => Ok(Base::G),
            "Q" | "q" => Ok(Base::Q),
            "F" | "f" => Ok(Base::F),
            other => Err(Error::Unsupported(format!("unknown base '{other}', expected G, Q or F"))),
        }
    }
}

/// `ω_{G/P} = 𝒪(-Σ α)` over the positive roots outside the Levi factor.
pub fn canonical_of_base(rs: &RootSystem, base: Base) -> Weight {
    let levi = rs.levi_positive_roots(base.levi());
    let sum = rs
        .positive_roots
        .iter()
        .filter(|r| !levi.contains(r))
        .fold(Weight::zero(rs.rank), |acc, r| &acc + &r.weight_coords);
    -sum
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalClass {
    pub weight: Weight,
    pub calabi_yau: bool,
}

/// Canonical class of the total space of `fiber∨` over `base`:
/// `ω = π^*(ω_base ⊗ det fiber)`.
pub fn total_space_canonical(rs: &RootSystem, base: Base, fiber: &BundleExpr) -> Result<CanonicalClass> {
    let det = weights(rs, fiber)?.det();
    let weight = &canonical_of_base(rs, base) + &det;
    Ok(CanonicalClass {
        calabi_yau: weight.is_zero(),
        weight,
    })
}

/// `ω_V` for `V = Tot(𝒪(-h-H))`.
pub fn omega_v(rs: &RootSystem) -> Result<Weight> {
    total_space_canonical(rs, Base::F, &BundleExpr::line(FIBER.0, FIBER.1)).map(|c| c.weight)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(deg: usize) -> CohomologyProfile {
        CohomologyProfile::trivial(2, deg)
    }

    #[test]
    fn ext_values() {
        let rs = RootSystem::g2();
        let u = BundleExpr::u();
        let ud_mh = u.clone().dual().twist(0, -1);

        let r = hom_v(&rs, &ud_mh, &u).unwrap();
        assert_eq!(r.profile, Some(k(1)));
        assert_eq!(r.first.resolved(), Some(&k(1)));
        assert!(r.second.resolved().unwrap().is_zero());

        assert_eq!(hom_v(&rs, &ud_mh, &BundleExpr::line(0, 0)).unwrap().profile, Some(k(0)));
        assert!(hom_v(&rs, &BundleExpr::line(0, -1), &BundleExpr::line(-1, 0)).unwrap().is_zero());
        assert!(hom_v(&rs, &ud_mh, &BundleExpr::line(-1, 0)).unwrap().is_zero());
        assert!(hom_v(&rs, &BundleExpr::line(1, -2), &BundleExpr::line(0, 1)).unwrap().is_zero());
        assert_eq!(
            hom_v(&rs, &BundleExpr::line(0, 0), &BundleExpr::line(0, 0)).unwrap().profile,
            Some(k(0))
        );
    }

    #[test]
    fn exceptional_u_via_levi_route() {
        let rs = RootSystem::g2();
        for e in [BundleExpr::u(), BundleExpr::u().dual()] {
            let r = hom_v(&rs, &e, &e).unwrap();
            assert!(!r.first.filtration.is_determined());
            assert_eq!(r.profile, Some(k(0)));
            assert_eq!(r.euler_characteristic, 1);
        }
    }

    #[test]
    fn canonical_classes() {
        let rs = RootSystem::g2();
        assert_eq!(canonical_of_base(&rs, Base::F), Weight::g2(-2, -2));
        assert_eq!(canonical_of_base(&rs, Base::G), Weight::g2(-3, 0));
        assert_eq!(canonical_of_base(&rs, Base::Q), Weight::g2(0, -5));

        let v = total_space_canonical(&rs, Base::F, &BundleExpr::line(1, 1)).unwrap();
        assert_eq!(v.weight, Weight::g2(-1, -1));
        assert!(!v.calabi_yau);
        let wp = total_space_canonical(&rs, Base::G, &BundleExpr::IrrP1(1, 1)).unwrap();
        assert_eq!(wp, CanonicalClass { weight: Weight::g2(0, 0), calabi_yau: true });
        let wm = total_space_canonical(&rs, Base::Q, &BundleExpr::IrrP2(1, 1)).unwrap();
        assert!(wm.calabi_yau);
        assert_eq!(omega_v(&rs).unwrap(), Weight::g2(-1, -1));
        assert!("X".parse::<Base>().is_err());
    }
}
