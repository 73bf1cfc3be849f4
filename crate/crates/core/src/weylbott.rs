//! Bott's theorem on `G/B` and `G/P`, the Weyl dimension formula, and
//! cohomology of bundles presented by a line-bundle filtration.
//!
//! Orientation: for dominant `λ` the line bundle `𝒪(λ)` has its sections
//! in degree 0, and the degree-0 piece has the dimension of `V_λ`.
//! Highest-weight labels in a profile are those of the representation
//! whose dual is the cohomology group, so `H^d ≅ (V_ν)^∨`.
//!
//! Everything here assumes characteristic zero.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub degree: usize,
    pub weight: Weight,
    pub mult: u64,
    /// `mult · dim V_weight`.
    pub dim: u64,
}

/// Graded cohomology as a multiset of `(degree, highest weight, multiplicity)`.
///
/// Entries are kept sorted by degree and then weight, with equal labels
/// merged, so structural equality is equality of multisets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CohomologyProfile {
    entries: Vec<ProfileEntry>,
}

impl CohomologyProfile {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `k` placed in `degree`, for a rank-`rank` weight lattice.
    pub fn trivial(rank: usize, degree: usize) -> Self {
        Self {
            entries: vec![ProfileEntry {
                degree,
                weight: Weight::zero(rank),
                mult: 1,
                dim: 1,
            }],
        }
    }

    pub fn from_entries(rs: &RootSystem, items: impl IntoIterator<Item = (usize, Weight, u64)>) -> Result<Self> {
        let mut p = Self::default();
        for (d, w, m) in items {
            p.push(rs, d, w, m)?;
        }
        Ok(p)
    }

    fn push(&mut self, rs: &RootSystem, degree: usize, weight: Weight, mult: u64) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        let dim = weyl_dim(rs, &weight)?;
        self.insert(ProfileEntry {
            degree,
            weight,
            mult,
            dim: dim * mult,
        });
        Ok(())
    }

    fn insert(&mut self, e: ProfileEntry) {
        match self
            .entries
            .binary_search_by(|x| (x.degree, &x.weight).cmp(&(e.degree, &e.weight)))
        {
            Ok(i) => {
                let unit = self.entries[i].dim / self.entries[i].mult;
                self.entries[i].mult += e.mult;
                self.entries[i].dim = unit * self.entries[i].mult;
            }
            Err(i) => self.entries.insert(i, e),
        }
    }

    pub fn entries(&self) -> &[ProfileEntry] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for e in &other.entries {
            out.insert(e.clone());
        }
        out
    }

    /// Move every entry up by `by` degrees.
    pub fn shifted(&self, by: usize) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|e| ProfileEntry {
                    degree: e.degree + by,
                    ..e.clone()
                })
                .collect(),
        }
    }

    pub fn total_dim_at(&self, degree: usize) -> u64 {
        self.entries
            .iter()
            .filter(|e| e.degree == degree)
            .map(|e| e.dim)
            .sum()
    }

    pub fn total_dim(&self) -> u64 {
        self.entries.iter().map(|e| e.dim).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.entries.iter().map(|e| e.degree).collect();
        d.dedup();
        d
    }

    /// Dimension vector indexed by degree.
    pub fn dims_by_degree(&self) -> BTreeMap<usize, u64> {
        let mut m = BTreeMap::new();
        for e in &self.entries {
            *m.entry(e.degree).or_insert(0) += e.dim;
        }
        m
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .map(|e| if e.degree % 2 == 0 { e.dim as i64 } else { -(e.dim as i64) })
            .sum()
    }
}

/// Renders `0`, `k`, `k[-1]`, `k^2 ⊕ V(0,1)[-2]`, ...
impl fmt::Display for CohomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.weight.is_zero() {
                write!(f, "k")?;
            } else {
                write!(f, "V{}", e.weight)?;
            }
            if e.mult > 1 {
                write!(f, "^{}", e.mult)?;
            }
            if e.degree > 0 {
                write!(f, "[-{}]", e.degree)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BottOutcome {
    Singular,
    Regular { w: WeylElement, nu: Weight },
}

/// Bring `λ + ρ` into the dominant chamber by simple reflections.
pub fn dot_normalize(rs: &RootSystem, lambda: &Weight) -> Result<BottOutcome> {
    if lambda.rank() != rs.rank {
        return Err(Error::RankMismatch {
            weight: lambda.clone(),
            got: lambda.rank(),
            rank: rs.rank,
        });
    }
    let mut x = lambda + &rs.rho;
    let mut word = Vec::new();
    while let Some(i) = (0..rs.rank).find(|&i| x.get(i) < 0) {
        x = rs.reflect_unchecked(i, &x);
        word.push(i);
    }
    if x.coords().contains(&0) {
        return Ok(BottOutcome::Singular);
    }
    // x = s_{i_k} ⋯ s_{i_1}(λ+ρ), so the leftmost factor was applied last.
    word.reverse();
    let w = rs.element_from_word(&word)?;
    debug_assert_eq!(w.length, word.len());
    Ok(BottOutcome::Regular { w, nu: &x - &rs.rho })
}

/// Cohomology of the line bundle `𝒪(λ)` on `G/B`.
pub fn line_cohomology(rs: &RootSystem, lambda: &Weight) -> Result<CohomologyProfile> {
    match dot_normalize(rs, lambda)? {
        BottOutcome::Singular => Ok(CohomologyProfile::zero()),
        BottOutcome::Regular { w, nu } => CohomologyProfile::from_entries(rs, [(w.length, nu, 1)]),
    }
}

/// `∏_{α>0} ⟨λ+ρ, α∨⟩ / ⟨ρ, α∨⟩`.
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<u64> {
    if lambda.rank() != rs.rank {
        return Err(Error::RankMismatch {
            weight: lambda.clone(),
            got: lambda.rank(),
            rank: rs.rank,
        });
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    let shifted = lambda + &rs.rho;
    let mut acc = Ratio::<i128>::from_integer(1);
    for a in &rs.positive_roots {
        let factor = Ratio::new(
            rs.pairing_unchecked(&shifted, a) as i128,
            rs.pairing_unchecked(&rs.rho, a) as i128,
        );
        // cross-reduce before multiplying so the check is on reduced terms
        let g1 = gcd_i128(*acc.numer(), *factor.denom());
        let g2 = gcd_i128(*factor.numer(), *acc.denom());
        let num = (acc.numer() / g1)
            .checked_mul(factor.numer() / g2)
            .ok_or(Error::Overflow("weyl_dim"))?;
        let den = (acc.denom() / g2)
            .checked_mul(factor.denom() / g1)
            .ok_or(Error::Overflow("weyl_dim"))?;
        acc = Ratio::new(num, den);
    }
    debug_assert!(acc.is_integer());
    u64::try_from(acc.to_integer()).map_err(|_| Error::Overflow("weyl_dim"))
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs().max(1)
    } else {
        gcd_i128(b, a % b)
    }
}

/// One non-acyclic piece of a filtration, kept for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Term {
    pub weight: Weight,
    pub profile: CohomologyProfile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FilteredOutcome {
    Determined(CohomologyProfile),
    /// Non-acyclic pieces sit in adjacent degrees; the spectral sequence
    /// of the filtration may cancel them.
    Indeterminate(Vec<E1Term>),
}

impl FilteredOutcome {
    pub fn determined(&self) -> Option<&CohomologyProfile> {
        match self {
            FilteredOutcome::Determined(p) => Some(p),
            FilteredOutcome::Indeterminate(_) => None,
        }
    }

    pub fn is_determined(&self) -> bool {
        self.determined().is_some()
    }
}

/// Whether a set of degrees contains two consecutive integers. The
/// differentials of a filtration spectral sequence raise total degree by
/// exactly one, so contributions without such a pair survive to `E∞`.
pub(crate) fn has_adjacent_degrees(degrees: impl IntoIterator<Item = usize>) -> bool {
    let mut d: Vec<usize> = degrees.into_iter().collect();
    d.sort_unstable();
    d.dedup();
    d.windows(2).any(|p| p[1] == p[0] + 1)
}

/// Euler characteristic of a filtered bundle: the signed sum over its pieces.
pub fn filtration_euler_characteristic(rs: &RootSystem, weights: &[Weight]) -> Result<i64> {
    weights
        .iter()
        .map(|w| line_cohomology(rs, w).map(|p| p.euler_characteristic()))
        .sum()
}

/// Cohomology of a bundle with a filtration whose graded pieces are the
/// line bundles `𝒪(μ)` for `μ` in `weights`.
pub fn filtered_cohomology(rs: &RootSystem, weights: &[Weight]) -> Result<FilteredOutcome> {
    if weights.is_empty() {
        return Err(Error::EmptyFiltration);
    }
    let mut terms = Vec::new();
    for w in weights {
        let p = line_cohomology(rs, w)?;
        if !p.is_zero() {
            terms.push(E1Term {
                weight: w.clone(),
                profile: p,
            });
        }
    }
    if has_adjacent_degrees(terms.iter().flat_map(|t| t.profile.degrees())) {
        return Ok(FilteredOutcome::Indeterminate(terms));
    }
    Ok(FilteredOutcome::Determined(
        terms
            .iter()
            .fold(CohomologyProfile::zero(), |acc, t| acc.union(&t.profile)),
    ))
}

/// Bott's theorem on `G/P` for the irreducible bundle of Levi highest
/// weight `λ`; agrees with `line_cohomology` but checks Levi dominance.
pub fn parabolic_cohomology(rs: &RootSystem, levi: &[usize], lambda: &Weight) -> Result<CohomologyProfile> {
    if let Some(&bad) = levi.iter().find(|&&i| i >= rs.rank) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            rank: rs.rank,
        });
    }
    if lambda.rank() != rs.rank {
        return Err(Error::RankMismatch {
            weight: lambda.clone(),
            got: lambda.rank(),
            rank: rs.rank,
        });
    }
    if !lambda.is_levi_dominant(levi) {
        return Err(Error::NotLeviDominant {
            weight: lambda.clone(),
            levi: levi.to_vec(),
        });
    }
    line_cohomology(rs, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> RootSystem {
        RootSystem::g2()
    }

    fn w(a: i64, b: i64) -> Weight {
        Weight::g2(a, b)
    }

    /// G2 coroot pairings of (a,b) written out by hand: a, b, a+b, 2a+b,
    /// 3a+b, 3a+2b (α₁ long).
    fn g2_dim_oracle(a: i64, b: i64) -> i64 {
        let (x, y) = (a + 1, b + 1);
        let num = x * y * (x + y) * (2 * x + y) * (3 * x + y) * (3 * x + 2 * y);
        assert_eq!(num % 120, 0);
        num / 120
    }

    #[test]
    fn weyl_dim_values() {
        let rs = g2();
        assert_eq!(weyl_dim(&rs, &w(0, 1)).unwrap(), 7);
        assert_eq!(weyl_dim(&rs, &w(0, 0)).unwrap(), 1);
        assert_eq!(weyl_dim(&rs, &w(1, 1)).unwrap(), 64);
        assert_eq!(weyl_dim(&rs, &w(1, 0)).unwrap(), 14);
        for a in 0..10 {
            for b in 0..10 {
                assert_eq!(weyl_dim(&rs, &w(a, b)).unwrap() as i64, g2_dim_oracle(a, b));
            }
        }
        assert!(matches!(weyl_dim(&rs, &w(-1, 3)), Err(Error::NotDominant(_))));
    }

    #[test]
    fn dot_normalize_examples() {
        let rs = g2();
        match dot_normalize(&rs, &w(-2, 3)).unwrap() {
            BottOutcome::Regular { w: el, nu } => {
                assert_eq!(el.word, vec![0]);
                assert_eq!(nu, w(0, 0));
            }
            BottOutcome::Singular => panic!("expected regular"),
        }
        match dot_normalize(&rs, &w(4, 2)).unwrap() {
            BottOutcome::Regular { w: el, nu } => {
                assert!(el.is_identity());
                assert_eq!(nu, w(4, 2));
            }
            BottOutcome::Singular => panic!("expected regular"),
        }
        assert_eq!(dot_normalize(&rs, &w(-1, -1)).unwrap(), BottOutcome::Singular);
    }

    #[test]
    fn dot_normalize_reaches_the_longest_element() {
        let rs = g2();
        // ω_F = 𝒪(-2ρ) has H^6 = k.
        match dot_normalize(&rs, &w(-2, -2)).unwrap() {
            BottOutcome::Regular { w: el, nu } => {
                assert_eq!(el.length, 6);
                assert_eq!(nu, w(0, 0));
            }
            BottOutcome::Singular => panic!(),
        }
    }

    #[test]
    fn line_cohomology_examples() {
        let rs = g2();
        assert_eq!(line_cohomology(&rs, &w(0, 0)).unwrap(), CohomologyProfile::trivial(2, 0));
        assert_eq!(line_cohomology(&rs, &w(-2, 3)).unwrap(), CohomologyProfile::trivial(2, 1));
        for t in -5..=5 {
            assert!(line_cohomology(&rs, &w(t, -1)).unwrap().is_zero());
        }
        assert!(line_cohomology(&rs, &w(-2, 0)).unwrap().is_zero());
    }

    #[test]
    fn filtered_examples() {
        let rs = g2();
        let u_h = [w(-1, 2), w(0, 0)];
        assert_eq!(
            filtered_cohomology(&rs, &u_h).unwrap(),
            FilteredOutcome::Determined(CohomologyProfile::trivial(2, 0))
        );
        let uu_h = [w(-2, 3), w(-1, 1), w(-1, 1), w(0, -1)];
        assert_eq!(
            filtered_cohomology(&rs, &uu_h).unwrap(),
            FilteredOutcome::Determined(CohomologyProfile::trivial(2, 1))
        );
        let end_u = [w(0, 0), w(0, 0), w(-1, 2), w(1, -2)];
        match filtered_cohomology(&rs, &end_u).unwrap() {
            FilteredOutcome::Indeterminate(terms) => {
                let degrees: Vec<usize> = terms.iter().flat_map(|t| t.profile.degrees()).collect();
                assert_eq!(degrees, vec![0, 0, 1]);
            }
            other => panic!("expected indeterminate, got {other:?}"),
        }
        let u_m2h = [w(-3, 1), w(-2, -1)];
        assert_eq!(
            filtered_cohomology(&rs, &u_m2h).unwrap(),
            FilteredOutcome::Determined(CohomologyProfile::zero())
        );
        assert_eq!(filtered_cohomology(&rs, &[]), Err(Error::EmptyFiltration));
    }

    #[test]
    fn same_degree_pieces_do_not_interact() {
        let rs = g2();
        let out = filtered_cohomology(&rs, &[w(0, 0), w(0, 1), w(-2, 3), w(-2, 3)]).unwrap();
        // degrees {0,0,1,1} are adjacent
        assert!(!out.is_determined());
        let out = filtered_cohomology(&rs, &[w(0, 0), w(0, 1)]).unwrap();
        let p = out.determined().unwrap();
        assert_eq!(p.total_dim_at(0), 8);
    }

    #[test]
    fn parabolic_examples() {
        let rs = g2();
        for m in 0..4 {
            for k in 0..4 {
                let p = parabolic_cohomology(&rs, &[1], &w(m + k, m)).unwrap();
                assert_eq!(p.entries().len(), 1);
                assert_eq!(p.entries()[0].degree, 0);
                assert_eq!(p.entries()[0].weight, w(m + k, m));
            }
        }
        assert!(parabolic_cohomology(&rs, &[1], &w(-1, 2)).unwrap().is_zero());
        assert_eq!(
            parabolic_cohomology(&rs, &[0], &w(0, 0)).unwrap(),
            CohomologyProfile::trivial(2, 0)
        );
        assert!(matches!(
            parabolic_cohomology(&rs, &[1], &w(0, -1)),
            Err(Error::NotLeviDominant { .. })
        ));
    }

    #[test]
    fn profile_display() {
        let rs = g2();
        assert_eq!(CohomologyProfile::zero().to_string(), "0");
        assert_eq!(CohomologyProfile::trivial(2, 0).to_string(), "k");
        assert_eq!(CohomologyProfile::trivial(2, 1).to_string(), "k[-1]");
        let p = CohomologyProfile::from_entries(&rs, [(0, w(0, 0), 2), (2, w(0, 1), 1)]).unwrap();
        assert_eq!(p.to_string(), "k^2 + V(0,1)[-2]");
        assert_eq!(p.total_dim(), 9);
        assert_eq!(p.euler_characteristic(), 9);
    }

    #[test]
    fn adjacency() {
        assert!(!has_adjacent_degrees([0, 0, 2]));
        assert!(has_adjacent_degrees([3, 2]));
        assert!(!has_adjacent_degrees(Vec::<usize>::new()));
    }
}
