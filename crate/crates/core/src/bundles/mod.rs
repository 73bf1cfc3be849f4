//! Equivariant bundles on the flag variety of a rank-2 group.
//!
//! Every expression denotes a bundle on `F = G/B`; bundles on the two
//! partial flag varieties are represented by their pullbacks, which have
//! the same cohomology. `E(a,b)` is the irreducible bundle on `G/P₁`
//! (Levi simple root `α₂`), `F(a,b)` the one on `G/P₂` (Levi `α₁`).
//! With `(1,0) = H` and `(0,1) = h`:
//!
//! * `U = E(-1,1)`, with `U' = E(0,1)`;
//! * `S` is the rank-4 extension `0 → U → S → U'(-h) → 0`.

mod parse;

pub use parse::{parse_expr, ParseError};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};
use crate::weylbott::{filtered_cohomology, parabolic_cohomology, CohomologyProfile, FilteredOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BundleExpr {
    Line(i64, i64),
    AtomU,
    AtomS,
    IrrP1(i64, i64),
    IrrP2(i64, i64),
    Dual(Box<BundleExpr>),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    Sym(u32, Box<BundleExpr>),
    Twist(Box<BundleExpr>, i64, i64),
}

impl BundleExpr {
    pub fn line(a: i64, b: i64) -> Self {
        BundleExpr::Line(a, b)
    }

    pub fn u() -> Self {
        BundleExpr::AtomU
    }

    pub fn s() -> Self {
        BundleExpr::AtomS
    }

    pub fn dual(self) -> Self {
        BundleExpr::Dual(Box::new(self))
    }

    pub fn tensor(self, other: BundleExpr) -> Self {
        BundleExpr::Tensor(Box::new(self), Box::new(other))
    }

    pub fn sym(self, m: u32) -> Self {
        BundleExpr::Sym(m, Box::new(self))
    }

    pub fn twist(self, a: i64, b: i64) -> Self {
        BundleExpr::Twist(Box::new(self), a, b)
    }

    /// Twist by `(a,b)`, folding into an existing line or twist node.
    pub fn twisted(&self, a: i64, b: i64) -> Self {
        match self {
            BundleExpr::Line(x, y) => BundleExpr::Line(x + a, y + b),
            BundleExpr::Twist(e, x, y) => {
                if x + a == 0 && y + b == 0 {
                    (**e).clone()
                } else {
                    BundleExpr::Twist(e.clone(), x + a, y + b)
                }
            }
            e if a == 0 && b == 0 => e.clone(),
            e => e.clone().twist(a, b),
        }
    }

    /// Canonical form: left-associated tensors, folded twists and duals of
    /// lines. Weight multisets are unchanged.
    pub fn normalize(&self) -> BundleExpr {
        use BundleExpr::*;
        match self {
            Line(..) | AtomU | AtomS | IrrP1(..) | IrrP2(..) => self.clone(),
            Dual(e) => match e.normalize() {
                Line(a, b) => Line(-a, -b),
                Dual(inner) => *inner,
                Twist(inner, a, b) => inner.dual().normalize().twisted(-a, -b),
                other => other.dual(),
            },
            Tensor(l, r) => {
                let mut factors = Vec::new();
                collect_factors(&l.normalize(), &mut factors);
                collect_factors(&r.normalize(), &mut factors);
                let (mut a, mut b) = (0, 0);
                let mut rest = Vec::new();
                for f in factors {
                    match f {
                        Line(x, y) => {
                            a += x;
                            b += y;
                        }
                        Twist(e, x, y) => {
                            a += x;
                            b += y;
                            rest.push(*e);
                        }
                        other => rest.push(other),
                    }
                }
                let mut it = rest.into_iter();
                match it.next() {
                    None => Line(a, b),
                    Some(first) => it.fold(first, |acc, f| acc.tensor(f)).twisted(a, b),
                }
            }
            Sym(m, e) => Sym(*m, Box::new(e.normalize())),
            Twist(e, a, b) => e.normalize().twisted(*a, *b),
        }
    }
}

fn collect_factors(e: &BundleExpr, out: &mut Vec<BundleExpr>) {
    match e {
        BundleExpr::Tensor(l, r) => {
            collect_factors(l, out);
            collect_factors(r, out);
        }
        other => out.push(other.clone()),
    }
}

/// Maximal parabolic of a rank-2 group, named by the crossed node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parabolic {
    /// `G/P₁`, the G2-Grassmannian; Levi simple root `α₂`.
    P1,
    /// `G/P₂`, the quadric; Levi simple root `α₁`.
    P2,
}

impl Parabolic {
    pub fn levi_index(self) -> usize {
        match self {
            Parabolic::P1 => 1,
            Parabolic::P2 => 0,
        }
    }

    pub fn levi(self) -> [usize; 1] {
        [self.levi_index()]
    }
}

/// Ordered line-bundle filtration of a bundle pulled back to `G/B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightFiltration(Vec<Weight>);

impl WeightFiltration {
    pub fn new(weights: Vec<Weight>) -> Self {
        WeightFiltration(weights)
    }

    pub fn weights(&self) -> &[Weight] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn det(&self) -> Weight {
        let r = self.0.first().map(|w| w.rank()).unwrap_or(2);
        self.0.iter().fold(Weight::zero(r), |acc, w| &acc + w)
    }

    /// Sorted copy, for multiset comparisons.
    pub fn multiset(&self) -> Vec<Weight> {
        let mut v = self.0.clone();
        v.sort();
        v
    }

    pub fn into_inner(self) -> Vec<Weight> {
        self.0
    }
}

fn require_rank2(rs: &RootSystem) -> Result<()> {
    if rs.rank != 2 {
        return Err(Error::Unsupported(format!(
            "bundle expressions need a rank-2 root system, got rank {}",
            rs.rank
        )));
    }
    Ok(())
}

/// `λ, λ-α, …, λ-mα` for the Levi simple root `α = α_levi`, `m = ⟨λ,α∨⟩`.
fn levi_string(rs: &RootSystem, levi: usize, hw: &Weight) -> Result<Vec<Weight>> {
    let m = hw.get(levi);
    if m < 0 {
        return Err(Error::NotLeviDominant {
            weight: hw.clone(),
            levi: vec![levi],
        });
    }
    let alpha = &rs.simple_root(levi).weight_coords;
    Ok((0..=m).map(|j| hw - &(j * alpha)).collect())
}

/// Line-bundle filtration of `e` on `G/B`.
pub fn weights(rs: &RootSystem, e: &BundleExpr) -> Result<WeightFiltration> {
    require_rank2(rs)?;
    weights_inner(rs, e).map(WeightFiltration)
}

fn weights_inner(rs: &RootSystem, e: &BundleExpr) -> Result<Vec<Weight>> {
    use BundleExpr::*;
    Ok(match e {
        Line(a, b) => vec![Weight::g2(*a, *b)],
        AtomU => levi_string(rs, 1, &Weight::g2(-1, 1))?,
        AtomS => {
            let mut w = weights_inner(rs, &AtomU)?;
            w.extend(weights_inner(rs, &AtomU.dual().twist(0, -1))?);
            w
        }
        IrrP1(a, b) => levi_string(rs, Parabolic::P1.levi_index(), &Weight::g2(*a, *b))?,
        IrrP2(a, b) => levi_string(rs, Parabolic::P2.levi_index(), &Weight::g2(*a, *b))?,
        Dual(inner) => weights_inner(rs, inner)?.iter().map(|w| -w).collect(),
        Tensor(l, r) => {
            let wl = weights_inner(rs, l)?;
            let wr = weights_inner(rs, r)?;
            wl.iter()
                .flat_map(|x| wr.iter().map(move |y| x + y))
                .collect()
        }
        Sym(m, inner) => {
            let w = weights_inner(rs, inner)?;
            let (top, alpha) = simple_string_of_rank2(rs, &w).ok_or_else(|| {
                Error::Unsupported(format!(
                    "Sym needs a rank-2 bundle whose weights differ by a simple root, got {}",
                    inner
                ))
            })?;
            let m = *m as i64;
            let top = m * &top;
            (0..=m).map(|j| &top - &(j * &alpha)).collect()
        }
        Twist(inner, a, b) => {
            let t = Weight::g2(*a, *b);
            weights_inner(rs, inner)?.iter().map(|w| w + &t).collect()
        }
    })
}

/// For `{λ, λ-α}` with `α` simple, return `(λ, α)`.
fn simple_string_of_rank2(rs: &RootSystem, w: &[Weight]) -> Option<(Weight, Weight)> {
    if w.len() != 2 {
        return None;
    }
    let diff = &w[0] - &w[1];
    rs.simple_roots.iter().find_map(|r| {
        if r.weight_coords == diff {
            Some((w[0].clone(), r.weight_coords.clone()))
        } else if r.weight_coords == -&diff {
            Some((w[1].clone(), r.weight_coords.clone()))
        } else {
            None
        }
    })
}

/// Clebsch–Gordan for a Levi factor of semisimple rank one:
/// `V_λ ⊗ V_μ = ⊕_{j=0}^{min(m,n)} V_{λ+μ-jα}` with `m = ⟨λ,α∨⟩`, `n = ⟨μ,α∨⟩`.
pub fn levi_tensor(rs: &RootSystem, levi: &[usize], lambda: &Weight, mu: &Weight) -> Result<Vec<Weight>> {
    let [i] = levi else {
        return Err(Error::Unsupported(format!(
            "Levi tensor products need semisimple rank 1, got simple roots {levi:?}"
        )));
    };
    let i = *i;
    if i >= rs.rank {
        return Err(Error::IndexOutOfRange {
            index: i,
            rank: rs.rank,
        });
    }
    for w in [lambda, mu] {
        if w.rank() != rs.rank {
            return Err(Error::RankMismatch {
                weight: w.clone(),
                got: w.rank(),
                rank: rs.rank,
            });
        }
        if !w.is_levi_dominant(levi) {
            return Err(Error::NotLeviDominant {
                weight: w.clone(),
                levi: levi.to_vec(),
            });
        }
    }
    let top = lambda + mu;
    let alpha = &rs.simple_root(i).weight_coords;
    let k = lambda.get(i).min(mu.get(i));
    Ok((0..=k).map(|j| &top - &(j * alpha)).collect())
}

/// Decompose `e` into irreducible bundles pulled back from `G/P`.
///
/// Returns `Ok(None)` when `e` is not built only from bundles on that side:
/// the extension atom `S`, atoms from the other parabolic, or line twists
/// that are not characters of `P`.
pub fn levi_decompose(rs: &RootSystem, e: &BundleExpr, side: Parabolic) -> Result<Option<Vec<Weight>>> {
    require_rank2(rs)?;
    let i = side.levi_index();
    let levi = side.levi();
    let alpha = rs.simple_root(i).weight_coords.clone();
    let character = |w: Weight| if w.get(i) == 0 { Some(vec![w]) } else { None };
    use BundleExpr::*;
    Ok(match e {
        Line(a, b) => character(Weight::g2(*a, *b)),
        AtomU => match side {
            Parabolic::P1 => Some(vec![Weight::g2(-1, 1)]),
            Parabolic::P2 => None,
        },
        AtomS => None,
        IrrP1(a, b) | IrrP2(a, b) => {
            let hw = Weight::g2(*a, *b);
            let own = matches!((e, side), (IrrP1(..), Parabolic::P1) | (IrrP2(..), Parabolic::P2));
            if own {
                if !hw.is_levi_dominant(&levi) {
                    return Err(Error::NotLeviDominant { weight: hw, levi: levi.to_vec() });
                }
                Some(vec![hw])
            } else {
                // A rank-one bundle from the other side is still a line.
                let other = match side {
                    Parabolic::P1 => Parabolic::P2,
                    Parabolic::P2 => Parabolic::P1,
                };
                if hw.get(other.levi_index()) == 0 {
                    character(hw)
                } else {
                    None
                }
            }
        }
        Dual(inner) => levi_decompose(rs, inner, side)?.map(|parts| {
            parts
                .iter()
                .map(|hw| &(-hw) + &(hw.get(i) * &alpha))
                .collect()
        }),
        Tensor(l, r) => {
            let (Some(pl), Some(pr)) = (levi_decompose(rs, l, side)?, levi_decompose(rs, r, side)?) else {
                return Ok(None);
            };
            let mut out = Vec::new();
            for x in &pl {
                for y in &pr {
                    out.extend(levi_tensor(rs, &levi, x, y)?);
                }
            }
            Some(out)
        }
        Sym(m, inner) => match levi_decompose(rs, inner, side)?.as_deref() {
            Some([hw]) if hw.get(i) == 1 => Some(vec![(*m as i64) * hw]),
            _ => None,
        },
        Twist(inner, a, b) => {
            let t = Weight::g2(*a, *b);
            if t.get(i) != 0 {
                return Ok(None);
            }
            levi_decompose(rs, inner, side)?.map(|parts| parts.iter().map(|hw| hw + &t).collect())
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviRoute {
    pub parabolic: Parabolic,
    pub summands: Vec<Weight>,
    pub profile: CohomologyProfile,
}

/// Relative vanishing: `e = π^*E ⊗ 𝒪(t)` for a bundle `E` on `G/P` and
/// `⟨t, α∨⟩ = -1` on the Levi root of `P`. Such a bundle restricts to
/// `𝒪(-1)^r` on every fibre `P/B ≅ ℙ¹`, so all of its cohomology vanishes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreRoute {
    pub parabolic: Parabolic,
    pub profile: CohomologyProfile,
}

/// Cohomology through the filtration of `S` by `U ⊂ S`: pieces are bundles
/// without `S`, each computed on its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceRoute {
    pub pieces: Vec<PieceTerm>,
    /// `None` when a piece is undetermined or two pieces sit in adjacent degrees.
    pub profile: Option<CohomologyProfile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceTerm {
    pub expr: String,
    pub profile: Option<CohomologyProfile>,
}

/// Cohomology of a bundle on `G/B`, by every route that applies:
///
/// * the line-bundle filtration (route A);
/// * Bott's theorem for Levi-irreducible summands, when the expression
///   lives on one partial flag variety (route B);
/// * relative vanishing along `G/B → G/P`;
/// * the filtration coming from `U ⊂ S`, for expressions containing `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleCohomology {
    pub filtration: FilteredOutcome,
    pub levi: Option<LeviRoute>,
    pub fibre: Option<FibreRoute>,
    pub pieces: Option<PieceRoute>,
}

impl BundleCohomology {
    /// The first route that settles the answer, in the order B, fibre, A, pieces.
    pub fn resolved(&self) -> Option<&CohomologyProfile> {
        self.levi
            .as_ref()
            .map(|r| &r.profile)
            .or_else(|| self.fibre.as_ref().map(|r| &r.profile))
            .or_else(|| self.filtration.determined())
            .or_else(|| self.pieces.as_ref().and_then(|r| r.profile.as_ref()))
    }

    pub fn is_determined(&self) -> bool {
        self.resolved().is_some()
    }

    fn routes(&self) -> Vec<(&'static str, &CohomologyProfile)> {
        let mut out = Vec::new();
        if let Some(p) = self.filtration.determined() {
            out.push(("filtration", p));
        }
        if let Some(r) = &self.levi {
            out.push(("levi", &r.profile));
        }
        if let Some(r) = &self.fibre {
            out.push(("fibre", &r.profile));
        }
        if let Some(p) = self.pieces.as_ref().and_then(|r| r.profile.as_ref()) {
            out.push(("pieces", p));
        }
        out
    }
}

/// Levi route alone, if `e` is one-sided.
pub fn levi_route(rs: &RootSystem, e: &BundleExpr) -> Result<Option<LeviRoute>> {
    for side in [Parabolic::P1, Parabolic::P2] {
        if let Some(summands) = levi_decompose(rs, e, side)? {
            let profile = summands.iter().try_fold(CohomologyProfile::zero(), |acc, hw| {
                parabolic_cohomology(rs, &side.levi(), hw).map(|p| acc.union(&p))
            })?;
            return Ok(Some(LeviRoute {
                parabolic: side,
                summands,
                profile,
            }));
        }
    }
    Ok(None)
}

pub fn fibre_route(rs: &RootSystem, e: &BundleExpr) -> Result<Option<FibreRoute>> {
    let (core, a, b) = match e.normalize() {
        BundleExpr::Twist(core, a, b) => (*core, a, b),
        BundleExpr::Line(a, b) => (BundleExpr::Line(0, 0), a, b),
        other => (other, 0, 0),
    };
    let t = Weight::g2(a, b);
    for side in [Parabolic::P1, Parabolic::P2] {
        if t.get(side.levi_index()) == -1 && levi_decompose(rs, &core, side)?.is_some() {
            return Ok(Some(FibreRoute {
                parabolic: side,
                profile: CohomologyProfile::zero(),
            }));
        }
    }
    Ok(None)
}

fn contains_s(e: &BundleExpr) -> bool {
    use BundleExpr::*;
    match e {
        AtomS => true,
        Line(..) | AtomU | IrrP1(..) | IrrP2(..) => false,
        Dual(x) | Sym(_, x) | Twist(x, ..) => contains_s(x),
        Tensor(l, r) => contains_s(l) || contains_s(r),
    }
}

/// Graded pieces of the filtration induced by `U ⊂ S`, subobjects first.
fn extension_pieces(e: &BundleExpr) -> Option<Vec<BundleExpr>> {
    use BundleExpr::*;
    Some(match e {
        AtomS => vec![AtomU, AtomU.dual().twist(0, -1)],
        Line(..) | AtomU | IrrP1(..) | IrrP2(..) => vec![e.clone()],
        Dual(x) => extension_pieces(x)?.into_iter().rev().map(BundleExpr::dual).collect(),
        Tensor(l, r) => {
            let pl = extension_pieces(l)?;
            let pr = extension_pieces(r)?;
            pl.iter()
                .flat_map(|x| pr.iter().map(move |y| x.clone().tensor(y.clone())))
                .collect()
        }
        Sym(..) if contains_s(e) => return None,
        Sym(..) => vec![e.clone()],
        Twist(x, a, b) => extension_pieces(x)?.into_iter().map(|p| p.twist(*a, *b)).collect(),
    })
}

fn piece_route(rs: &RootSystem, e: &BundleExpr) -> Result<Option<PieceRoute>> {
    if !contains_s(e) {
        return Ok(None);
    }
    let Some(pieces) = extension_pieces(e) else {
        return Ok(None);
    };
    let mut terms = Vec::with_capacity(pieces.len());
    for p in &pieces {
        let c = cohomology_f(rs, &p.normalize())?;
        terms.push(PieceTerm {
            expr: p.normalize().to_string(),
            profile: c.resolved().cloned(),
        });
    }
    let known: Option<Vec<&CohomologyProfile>> = terms.iter().map(|t| t.profile.as_ref()).collect();
    let profile = known.and_then(|ps| {
        // differentials connect distinct pieces in consecutive degrees
        let clash = ps.iter().enumerate().any(|(i, p)| {
            ps.iter().enumerate().any(|(j, q)| {
                i != j && p.degrees().iter().any(|d| q.degrees().contains(&(d + 1)))
            })
        });
        (!clash).then(|| ps.iter().fold(CohomologyProfile::zero(), |acc, p| acc.union(p)))
    });
    Ok(Some(PieceRoute { pieces: terms, profile }))
}

pub fn cohomology_f(rs: &RootSystem, e: &BundleExpr) -> Result<BundleCohomology> {
    let filtration = filtered_cohomology(rs, weights(rs, e)?.weights())?;
    let levi = levi_route(rs, &e.normalize())?;
    let fibre = fibre_route(rs, e)?;
    let pieces = piece_route(rs, e)?;
    let out = BundleCohomology {
        filtration,
        levi,
        fibre,
        pieces,
    };
    let routes = out.routes();
    if let Some((first_name, first)) = routes.first() {
        if let Some((name, p)) = routes.iter().find(|(_, p)| p != first) {
            return Err(Error::RouteDisagreement {
                expr: e.to_string(),
                route_a: format!("{first_name}: {first}"),
                route_b: format!("{name}: {p}"),
            });
        }
    }
    Ok(out)
}

fn fmt_twist(f: &mut fmt::Formatter<'_>, a: i64, b: i64) -> fmt::Result {
    if a == 0 && b == 0 {
        return write!(f, "0,0");
    }
    let mut first = true;
    for (c, sym) in [(a, "H"), (b, "h")] {
        if c == 0 {
            continue;
        }
        if c < 0 {
            write!(f, "-")?;
        } else if !first {
            write!(f, "+")?;
        }
        if c.abs() != 1 {
            write!(f, "{}", c.abs())?;
        }
        write!(f, "{sym}")?;
        first = false;
    }
    Ok(())
}

impl BundleExpr {
    /// Printable without brackets as the operand of `Sym^m`.
    fn is_primary(&self) -> bool {
        matches!(
            self,
            BundleExpr::Line(..)
                | BundleExpr::AtomU
                | BundleExpr::AtomS
                | BundleExpr::IrrP1(..)
                | BundleExpr::IrrP2(..)
                | BundleExpr::Sym(..)
        )
    }

    fn fmt_term(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use BundleExpr::*;
        match self {
            Line(0, 0) => write!(f, "O"),
            Line(a, b) => {
                write!(f, "O(")?;
                fmt_twist(f, *a, *b)?;
                write!(f, ")")
            }
            AtomU => write!(f, "U"),
            AtomS => write!(f, "S"),
            IrrP1(a, b) => write!(f, "E({a},{b})"),
            IrrP2(a, b) => write!(f, "F({a},{b})"),
            Sym(m, e) => {
                write!(f, "Sym^{m} ")?;
                if e.is_primary() {
                    e.fmt_term(f)
                } else {
                    write!(f, "[{e}]")
                }
            }
            Dual(e) => {
                e.fmt_postfix_operand(f)?;
                write!(f, "'")
            }
            Twist(e, a, b) => {
                e.fmt_postfix_operand(f)?;
                write!(f, "(")?;
                fmt_twist(f, *a, *b)?;
                write!(f, ")")
            }
            Tensor(..) => write!(f, "[{self}]"),
        }
    }

    fn fmt_postfix_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // `O(..)` would be read back as a line bundle.
            BundleExpr::Line(0, 0) | BundleExpr::Tensor(..) => write!(f, "[{self}]"),
            other => other.fmt_term(f),
        }
    }
}

/// Canonical printer; `parse_expr` reads the output back to an equal AST.
impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleExpr::Tensor(l, r) => {
                write!(f, "{l}*")?;
                if matches!(**r, BundleExpr::Tensor(..)) {
                    write!(f, "[{r}]")
                } else {
                    r.fmt_term(f)
                }
            }
            other => other.fmt_term(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weylbott::CohomologyProfile;

    fn w(a: i64, b: i64) -> Weight {
        Weight::g2(a, b)
    }

    fn ms(v: &[(i64, i64)]) -> Vec<Weight> {
        let mut out: Vec<Weight> = v.iter().map(|&(a, b)| w(a, b)).collect();
        out.sort();
        out
    }

    #[test]
    fn atom_weights() {
        let rs = RootSystem::g2();
        assert_eq!(weights(&rs, &BundleExpr::u()).unwrap().weights(), &[w(-1, 1), w(0, -1)]);
        assert_eq!(weights(&rs, &BundleExpr::IrrP2(1, -3)).unwrap().rank(), 2);
        let s = weights(&rs, &BundleExpr::s()).unwrap();
        assert_eq!(s.rank(), 4);
        assert_eq!(s.multiset(), ms(&[(-1, 1), (0, -1), (0, 0), (1, -2)]));
        assert_eq!(
            weights(&rs, &BundleExpr::u().dual()).unwrap().multiset(),
            weights(&rs, &BundleExpr::IrrP1(0, 1)).unwrap().multiset()
        );
        assert_eq!(
            weights(&rs, &BundleExpr::IrrP1(-1, 1)).unwrap(),
            weights(&rs, &BundleExpr::u()).unwrap()
        );
    }

    #[test]
    fn sym_weights() {
        let rs = RootSystem::g2();
        for m in 0..6u32 {
            let s = weights(&rs, &BundleExpr::IrrP1(1, 1).sym(m)).unwrap();
            let e = weights(&rs, &BundleExpr::IrrP1(m as i64, m as i64)).unwrap();
            assert_eq!(s.multiset(), e.multiset());
            assert_eq!(s.rank(), m as usize + 1);
        }
        assert!(matches!(
            weights(&rs, &BundleExpr::s().sym(2)),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            weights(&rs, &BundleExpr::line(1, 0).sym(2)),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            weights(&rs, &BundleExpr::IrrP1(0, -1)),
            Err(Error::NotLeviDominant { .. })
        ));
    }

    #[test]
    fn levi_tensor_examples() {
        let rs = RootSystem::g2();
        assert_eq!(levi_tensor(&rs, &[1], &w(-1, 1), &w(0, 1)).unwrap(), vec![w(-1, 2), w(0, 0)]);
        assert_eq!(levi_tensor(&rs, &[1], &w(-1, 1), &w(-1, 1)).unwrap(), vec![w(-2, 2), w(-1, 0)]);
        assert_eq!(levi_tensor(&rs, &[1], &w(3, 2), &w(0, 0)).unwrap(), vec![w(3, 2)]);
        assert!(matches!(
            levi_tensor(&rs, &[0, 1], &w(0, 0), &w(0, 0)),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            levi_tensor(&rs, &[1], &w(0, -1), &w(0, 0)),
            Err(Error::NotLeviDominant { .. })
        ));
        // total rank is preserved
        for m in 0..5 {
            for n in 0..5 {
                let parts = levi_tensor(&rs, &[1], &w(0, m), &w(2, n)).unwrap();
                let rank: i64 = parts.iter().map(|p| p.get(1) + 1).sum();
                assert_eq!(rank, (m + 1) * (n + 1));
            }
        }
    }

    #[test]
    fn cohomology_examples() {
        let rs = RootSystem::g2();
        let u = BundleExpr::u();
        let c = cohomology_f(&rs, &u.clone().tensor(u.clone().twist(0, 1))).unwrap();
        assert_eq!(c.resolved(), Some(&CohomologyProfile::trivial(2, 1)));
        let c = cohomology_f(&rs, &u.clone().twist(-1, 0)).unwrap();
        assert_eq!(c.resolved(), Some(&CohomologyProfile::zero()));

        let c = cohomology_f(&rs, &u.clone().tensor(u.clone().dual())).unwrap();
        assert!(!c.filtration.is_determined());
        let b = c.levi.as_ref().unwrap();
        assert_eq!(b.parabolic, Parabolic::P1);
        let mut parts = b.summands.clone();
        parts.sort();
        assert_eq!(parts, ms(&[(-1, 2), (0, 0)]));
        assert_eq!(c.resolved(), Some(&CohomologyProfile::trivial(2, 0)));
    }

    #[test]
    fn levi_route_matches_filtration_weights() {
        let rs = RootSystem::g2();
        let exprs = [
            BundleExpr::u().tensor(BundleExpr::u().dual()),
            BundleExpr::IrrP1(1, 1).sym(3).twist(2, 0),
            BundleExpr::IrrP2(1, 1).sym(2).tensor(BundleExpr::IrrP2(2, -1)),
            BundleExpr::u().tensor(BundleExpr::u()).tensor(BundleExpr::u().dual()),
        ];
        for e in &exprs {
            let route = levi_route(&rs, e).unwrap().expect("one-sided");
            let side = route.parabolic.levi_index();
            let mut expanded: Vec<Weight> = route
                .summands
                .iter()
                .flat_map(|hw| levi_string(&rs, side, hw).unwrap())
                .collect();
            expanded.sort();
            assert_eq!(expanded, weights(&rs, e).unwrap().multiset(), "{e}");
        }
    }

    #[test]
    fn one_sidedness() {
        let rs = RootSystem::g2();
        assert!(levi_route(&rs, &BundleExpr::s()).unwrap().is_none());
        assert!(levi_route(&rs, &BundleExpr::u().twist(0, -1)).unwrap().is_none());
        assert!(levi_route(&rs, &BundleExpr::u().tensor(BundleExpr::IrrP2(1, 1))).unwrap().is_none());
        assert_eq!(
            levi_route(&rs, &BundleExpr::line(0, 3)).unwrap().unwrap().parabolic,
            Parabolic::P2
        );
    }

    #[test]
    fn printer() {
        let u = BundleExpr::u();
        assert_eq!(u.clone().tensor(u.clone().twist(0, 1)).to_string(), "U*U(h)");
        assert_eq!(BundleExpr::line(1, -2).to_string(), "O(H-2h)");
        assert_eq!(BundleExpr::IrrP1(1, 1).sym(2).to_string(), "Sym^2 E(1,1)");
        assert_eq!(u.clone().dual().twist(0, -1).to_string(), "U'(-h)");
        assert_eq!(BundleExpr::line(-2, 3).to_string(), "O(-2H+3h)");
        assert_eq!(BundleExpr::line(0, 0).twist(0, 1).to_string(), "[O](h)");
        assert_eq!(
            u.clone().tensor(u.clone().tensor(u.clone())).twist(-1, 0).to_string(),
            "[U*[U*U]](-H)"
        );
        assert_eq!(u.clone().twist(0, 0).to_string(), "U(0,0)");
    }

    #[test]
    fn normalize_folds() {
        let u = BundleExpr::u();
        let e = u
            .clone()
            .tensor(BundleExpr::line(0, 1))
            .tensor(u.clone().twist(1, 0))
            .twist(-1, -1);
        assert_eq!(e.normalize(), u.clone().tensor(u.clone()).twist(0, 0).normalize());
        assert_eq!(e.normalize(), u.clone().tensor(u.clone()));
        assert_eq!(BundleExpr::line(1, 2).dual().normalize(), BundleExpr::line(-1, -2));
        assert_eq!(u.clone().dual().dual().normalize(), u);
    }

    #[test]
    fn fibre_route_vanishing() {
        let rs = RootSystem::g2();
        // U'(-h): pulled back from G/P₁, twist has h-coordinate -1
        let e = BundleExpr::u().dual().twist(0, -1);
        let c = cohomology_f(&rs, &e).unwrap();
        assert!(!c.filtration.is_determined());
        assert_eq!(c.fibre.as_ref().map(|r| r.parabolic), Some(Parabolic::P1));
        assert!(c.resolved().unwrap().is_zero());
        // O(-h) is also caught and agrees with route A
        let c = cohomology_f(&rs, &BundleExpr::line(3, -1)).unwrap();
        assert!(c.fibre.is_some());
        assert!(c.filtration.determined().unwrap().is_zero());
        assert!(fibre_route(&rs, &BundleExpr::u().twist(0, 1)).unwrap().is_none());
    }

    #[test]
    fn piece_route_for_s() {
        let rs = RootSystem::g2();
        let c = cohomology_f(&rs, &BundleExpr::s()).unwrap();
        assert!(!c.filtration.is_determined());
        let pieces = c.pieces.as_ref().unwrap();
        assert_eq!(pieces.pieces.len(), 2);
        assert_eq!(pieces.pieces[0].expr, "U");
        assert_eq!(pieces.pieces[1].expr, "U'(-h)");
        assert!(c.resolved().unwrap().is_zero());

        // S'⊗S has pieces k[-1] and k in distinct pieces: undetermined
        let end = BundleExpr::s().dual().tensor(BundleExpr::s());
        let c = cohomology_f(&rs, &end).unwrap();
        assert_eq!(c.pieces.as_ref().unwrap().pieces.len(), 4);
        assert!(c.resolved().is_none());

        assert!(cohomology_f(&rs, &BundleExpr::u()).unwrap().pieces.is_none());
    }
}
