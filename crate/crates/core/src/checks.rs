//! Fixed verification suites, run in a fixed order.

use serde::Serialize;

use crate::bundles::{cohomology_f, weights, BundleExpr};
use crate::coxring::hilbert_identities;
use crate::error::Result;
use crate::rootdata::{RootSystem, Weight};
use crate::sod::{replay, ReplayOptions};
use crate::totalspace::{hom_v, omega_v, total_space_canonical, Base};
use crate::weylbott::{filtration_euler_characteristic, weyl_dim, CohomologyProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported, not counted as a failure.
    Indeterminate,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
}

impl Check {
    fn eq(name: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Check {
            name: name.into(),
            status: if expected == computed { Status::Pass } else { Status::Fail },
            expected,
            computed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Suite {
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl Suite {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

fn k(deg: usize) -> CohomologyProfile {
    CohomologyProfile::trivial(2, deg)
}

fn render(p: Option<&CohomologyProfile>) -> String {
    p.map_or_else(|| "indeterminate".to_string(), |p| p.to_string())
}

fn coh_check(rs: &RootSystem, e: &BundleExpr, expected: &CohomologyProfile) -> Result<Check> {
    let c = cohomology_f(rs, e)?;
    Ok(Check::eq(format!("H({e})"), expected, render(c.resolved())))
}

fn homv_check(rs: &RootSystem, a: &BundleExpr, b: &BundleExpr, expected: &CohomologyProfile) -> Result<Check> {
    let r = hom_v(rs, a, b)?;
    Ok(Check::eq(format!("hom_V({a}, {b})"), expected, render(r.profile.as_ref())))
}

pub fn root_data(rs: &RootSystem) -> Result<Suite> {
    let mut checks = vec![
        Check::eq("|W|", 12, rs.weyl_order),
        Check::eq("positive roots", 6, rs.positive_roots.len()),
        Check::eq("length of w0", 6, rs.longest_element().length),
    ];
    for ((a, b), d) in [((0, 1), 7), ((1, 0), 14), ((1, 1), 64)] {
        checks.push(Check::eq(format!("dim V({a},{b})"), d, weyl_dim(rs, &Weight::g2(a, b))?));
    }
    Ok(Suite { name: "root data", checks })
}

/// Vanishing and non-vanishing of line bundles and of `U` on `F`.
pub fn line_bundles(rs: &RootSystem) -> Result<Suite> {
    let zero = CohomologyProfile::zero();
    let u = BundleExpr::u;
    let mut checks = Vec::new();
    for t in -10..=10 {
        checks.push(coh_check(rs, &BundleExpr::line(-1, t), &zero)?);
        checks.push(coh_check(rs, &BundleExpr::line(t, -1), &zero)?);
    }
    checks.push(coh_check(rs, &BundleExpr::line(-2, 0), &zero)?);
    checks.push(coh_check(rs, &BundleExpr::line(-2, 2), &zero)?);
    checks.push(coh_check(rs, &BundleExpr::line(-2, 3), &k(1))?);
    for e in [
        u().twist(-2, 0),
        u().twist(-1, 0),
        u().twist(-1, 1),
        u().tensor(u()).twist(-1, 0),
    ] {
        checks.push(coh_check(rs, &e, &zero)?);
    }
    checks.push(coh_check(rs, &u().twist(0, 1), &k(0))?);
    checks.push(coh_check(rs, &u().tensor(u().twist(0, 1)), &k(1))?);
    Ok(Suite { name: "line bundles on F", checks })
}

/// The two extensions used by the mutations: classes and Euler characteristics.
pub fn extensions(rs: &RootSystem) -> Result<Suite> {
    let u = BundleExpr::u();
    let ud_mh = u.clone().dual().twist(0, -1);
    let seqs = [
        ("U -> S -> U'(-h)", u.clone(), BundleExpr::s(), ud_mh.clone()),
        ("O(H-2h) -> U'(-h) -> O", BundleExpr::line(1, -2), ud_mh.clone(), BundleExpr::line(0, 0)),
        ("O(H-h) -> U' -> O(h)", BundleExpr::line(1, -1), u.clone().dual(), BundleExpr::line(0, 1)),
    ];
    let mut checks = vec![Check::eq("rank S", 4, weights(rs, &BundleExpr::s())?.rank())];
    for (name, sub, mid, quot) in seqs {
        let ws = |e: &BundleExpr| weights(rs, e).map(|w| w.multiset());
        let mut outer = ws(&sub)?;
        outer.extend(ws(&quot)?);
        outer.sort();
        checks.push(Check::eq(format!("weights: {name}"), fmt_weights(&ws(&mid)?), fmt_weights(&outer)));
        let chi = |e: &BundleExpr| -> Result<i64> { filtration_euler_characteristic(rs, weights(rs, e)?.weights()) };
        checks.push(Check::eq(format!("χ: {name}"), chi(&mid)?, chi(&sub)? + chi(&quot)?));
    }
    Ok(Suite { name: "extensions", checks })
}

fn fmt_weights(ws: &[Weight]) -> String {
    ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
}

/// `hom_V` values used to justify the mutations.
pub fn ext_on_v(rs: &RootSystem) -> Result<Suite> {
    let zero = CohomologyProfile::zero();
    let u = BundleExpr::u();
    let ud_mh = u.clone().dual().twist(0, -1);
    let checks = vec![
        homv_check(rs, &BundleExpr::line(0, -1), &BundleExpr::line(-1, 0), &zero)?,
        homv_check(rs, &ud_mh, &BundleExpr::line(-1, 0), &zero)?,
        homv_check(rs, &ud_mh, &u, &k(1))?,
        homv_check(rs, &ud_mh, &BundleExpr::line(0, 0), &k(0))?,
        homv_check(rs, &BundleExpr::line(1, -2), &BundleExpr::line(0, 1), &zero)?,
    ];
    Ok(Suite { name: "ext on V", checks })
}

pub fn collection_g() -> Vec<BundleExpr> {
    let u = BundleExpr::u();
    vec![
        BundleExpr::line(-1, 0),
        u.clone(),
        BundleExpr::line(0, 0),
        u.clone().dual(),
        BundleExpr::line(1, 0),
        u.dual().twist(1, 0),
    ]
}

pub fn collection_q() -> Vec<BundleExpr> {
    crate::sod::target_objects()
}

/// Semiorthogonality on `F` of the pulled-back collections on `G/P₁` and
/// `G/P₂`, and exceptionality of each object in `D(V)`.
pub fn collections(rs: &RootSystem) -> Result<Suite> {
    let mut checks = Vec::new();
    for (tag, ec) in [("G", collection_g()), ("Q", collection_q())] {
        for i in 0..ec.len() {
            for j in i + 1..ec.len() {
                let e = ec[j].clone().dual().tensor(ec[i].clone());
                let c = cohomology_f(rs, &e)?;
                checks.push(Check::eq(
                    format!("{tag}: Ext_F({}, {})", ec[j], ec[i]),
                    CohomologyProfile::zero(),
                    render(c.resolved()),
                ));
            }
        }
        for e in &ec {
            let r = hom_v(rs, e, e)?;
            let mut check = Check::eq(format!("{tag}: hom_V({e}, {e})"), k(0), render(r.profile.as_ref()));
            if r.profile.is_none() && matches!(e, BundleExpr::AtomS) {
                check.status = Status::Indeterminate;
            }
            checks.push(check);
        }
    }
    Ok(Suite { name: "exceptional collections", checks })
}

pub fn canonical(rs: &RootSystem) -> Result<Suite> {
    let plus = total_space_canonical(rs, Base::G, &BundleExpr::IrrP1(1, 1))?;
    let minus = total_space_canonical(rs, Base::Q, &BundleExpr::IrrP2(1, 1))?;
    let checks = vec![
        Check::eq("ω of Tot(E(1,1)') over G", Weight::g2(0, 0), plus.weight),
        Check::eq("ω of Tot(F(1,1)') over Q", Weight::g2(0, 0), minus.weight),
        Check::eq("ω_V", Weight::g2(-1, -1), omega_v(rs)?),
    ];
    Ok(Suite { name: "canonical classes", checks })
}

pub fn hilbert(rs: &RootSystem, bound: u64) -> Result<Suite> {
    let checks = hilbert_identities(rs, bound)?
        .into_iter()
        .map(|id| Check::eq(id.name, id.lhs, id.rhs))
        .collect();
    Ok(Suite { name: "hilbert functions", checks })
}

pub fn mutations(rs: &RootSystem) -> Result<Suite> {
    let full = replay(rs, &ReplayOptions::default());
    let mut checks = vec![
        Check::eq("replay completes", "12 steps", format!("{} steps", full.steps.len())),
        Check::eq(
            "failed certificates",
            0,
            full.certificates().filter(|c| !c.pass).count(),
        ),
        Check::eq(
            "final state agrees with the collection on Q",
            "no mismatches",
            if full.target_match {
                "no mismatches".to_string()
            } else {
                format!("mismatch at {:?}: {}", full.mismatches, full.final_state.join(", "))
            },
        ),
        Check::eq("conclusion", crate::sod::CONCLUSION, full.conclusion.as_deref().unwrap_or("none")),
    ];
    let skipped = replay(rs, &ReplayOptions { skip_steps: vec![10] });
    checks.push(Check::eq(
        "control: without step 10 the target is missed",
        "mismatch",
        if skipped.target_match { "match" } else { "mismatch" },
    ));
    let wrong = RootSystem::new(vec![vec![2, -1], vec![-3, 2]])?;
    let bad = replay(&wrong, &ReplayOptions::default());
    checks.push(Check::eq(
        "control: transposed Cartan matrix fails at step 1",
        "step 1",
        bad.failure.map_or("no failure".to_string(), |f| format!("step {}", f.step)),
    ));
    Ok(Suite { name: "mutation replay", checks })
}

/// Every suite, in order. `bound` caps the Hilbert identities.
pub fn check_all(rs: &RootSystem, bound: u64) -> Result<Vec<Suite>> {
    Ok(vec![
        root_data(rs)?,
        line_bundles(rs)?,
        extensions(rs)?,
        ext_on_v(rs)?,
        collections(rs)?,
        canonical(rs)?,
        hilbert(rs, bound)?,
        mutations(rs)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        let suites = check_all(&RootSystem::g2(), 4).unwrap();
        for s in &suites {
            let failed: Vec<_> = s.checks.iter().filter(|c| c.status == Status::Fail).collect();
            assert!(failed.is_empty(), "{}: {failed:?}", s.name);
        }
        let ec = suites.iter().find(|s| s.name == "exceptional collections").unwrap();
        assert_eq!(ec.checks.len(), 42);
        assert_eq!(ec.count(Status::Indeterminate), 1);
    }
}
