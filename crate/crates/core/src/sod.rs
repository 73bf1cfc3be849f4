//! Semiorthogonal decompositions of `D(V)` as ordered block lists, with
//! moves that are checked by certificates rather than solved.
//!
//! Mutated objects are named by the caller. A move is accepted only if
//! every certificate it emits passes:
//!
//! * transposing neighbours needs `hom_V(left, right) = 0`;
//! * mutating one exceptional object through its neighbour needs the
//!   claimed `hom_V` between them and the balance
//!   `[result] = [mutated] - χ·[through]` in the free abelian group on
//!   weights, plus the class identity of any exact sequence cited;
//! * Serre rotation twists by `ω_V` and needs no certificate, nor do
//!   moves of subcategory blocks.
//!
//! Only the one-directional vanishing is checked on a transposition; the
//! other direction holds because the input is already semiorthogonal.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bundles::{weights, BundleExpr};
use crate::error::Error;
use crate::rootdata::{RootSystem, Weight};
use crate::totalspace::{hom_v, omega_v};
use crate::weylbott::CohomologyProfile;

/// Element of the free abelian group on line-bundle classes of `F`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KClass(BTreeMap<Weight, i64>);

impl KClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn of_weights<'a>(ws: impl IntoIterator<Item = &'a Weight>) -> Self {
        let mut k = KClass::zero();
        for w in ws {
            k.add_term(w.clone(), 1);
        }
        k
    }

    fn add_term(&mut self, w: Weight, c: i64) {
        let entry = self.0.entry(w.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.0.remove(&w);
        }
    }

    pub fn plus(&self, other: &KClass) -> KClass {
        self.plus_scaled(other, 1)
    }

    pub fn minus(&self, other: &KClass) -> KClass {
        self.plus_scaled(other, -1)
    }

    pub fn plus_scaled(&self, other: &KClass, c: i64) -> KClass {
        let mut out = self.clone();
        for (w, n) in &other.0 {
            out.add_term(w.clone(), c * n);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.0.iter().map(|(w, c)| (w, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl Serialize for KClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (w, c) in &self.0 {
            seq.serialize_element(&(w, c))?;
        }
        seq.end()
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.0.iter().enumerate() {
            let (sign, abs) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            if abs != 1 {
                write!(f, "{abs}")?;
            }
            write!(f, "[{w}]")?;
        }
        Ok(())
    }
}

/// Class of a bundle: the sum of its filtration weights.
pub fn k_class(rs: &RootSystem, e: &BundleExpr) -> crate::Result<KClass> {
    Ok(KClass::of_weights(weights(rs, e)?.weights()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SubcatLabel {
    #[serde(rename = "Φ+")]
    PhiPlus,
    #[serde(rename = "Φ1")]
    Phi1,
    #[serde(rename = "Φ2")]
    Phi2,
    #[serde(rename = "Φ3")]
    Phi3,
    #[serde(rename = "Φ-")]
    PhiMinus,
}

impl fmt::Display for SubcatLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubcatLabel::PhiPlus => "Φ+",
            SubcatLabel::Phi1 => "Φ1",
            SubcatLabel::Phi2 => "Φ2",
            SubcatLabel::Phi3 => "Φ3",
            SubcatLabel::PhiMinus => "Φ-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Block {
    Exceptional {
        expr: BundleExpr,
        tag: Option<String>,
    },
    Subcategory {
        label: SubcatLabel,
        /// Functors applied so far, innermost first.
        history: Vec<String>,
    },
}

impl Block {
    pub fn object(expr: BundleExpr) -> Self {
        Block::Exceptional { expr, tag: None }
    }

    pub fn subcategory(label: SubcatLabel) -> Self {
        Block::Subcategory {
            label,
            history: Vec::new(),
        }
    }

    pub fn expr(&self) -> Option<&BundleExpr> {
        match self {
            Block::Exceptional { expr, .. } => Some(expr),
            Block::Subcategory { .. } => None,
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Exceptional { expr, .. } => write!(f, "{expr}"),
            Block::Subcategory { label, .. } => write!(f, "{label}(D(V+))"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    ExtVanishing,
    ExtDim,
    KClassBalance,
    ExactSeq,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum CertValue {
    Profile(CohomologyProfile),
    Indeterminate,
    KClass(KClass),
}

impl fmt::Display for CertValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertValue::Profile(p) => write!(f, "{p}"),
            CertValue::Indeterminate => write!(f, "indeterminate"),
            CertValue::KClass(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertKind,
    pub subject: String,
    pub required: CertValue,
    pub computed: CertValue,
    pub pass: bool,
}

impl Certificate {
    fn new(kind: CertKind, subject: String, required: CertValue, computed: CertValue) -> Self {
        let pass = required == computed;
        Certificate {
            kind,
            subject,
            required,
            computed,
            pass,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:?} {}: required {}, computed {}",
            if self.pass { "ok" } else { "FAIL" },
            self.kind,
            self.subject,
            self.required,
            self.computed
        )
    }
}

/// `0 → sub → middle → quotient → 0`, cited to justify a mutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSequence {
    pub sub: BundleExpr,
    pub middle: BundleExpr,
    pub quotient: BundleExpr,
}

impl fmt::Display for ExactSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0 -> {} -> {} -> {} -> 0", self.sub, self.middle, self.quotient)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// The object at `index` moves one step left through `index - 1`.
    LeftMutateThrough {
        index: usize,
        result: BundleExpr,
        expected_hom: CohomologyProfile,
        sequence: Option<ExactSequence>,
    },
    /// The object at `index` moves one step right through `index + 1`.
    RightMutateThrough {
        index: usize,
        result: BundleExpr,
        expected_hom: CohomologyProfile,
        sequence: Option<ExactSequence>,
    },
    /// Swap `index` and `index + 1`.
    Transpose { index: usize },
    /// Move the last `count` blocks to the front, twisting by `ω_V`.
    SerreRotateToFront { count: usize },
    /// Move the first `count` blocks to the back, twisting by `ω_V^{-1}`.
    SerreRotateToBack { count: usize },
    MutateSubcatLeft {
        index: usize,
        span: usize,
        label: SubcatLabel,
    },
    MutateSubcatRight {
        index: usize,
        span: usize,
        label: SubcatLabel,
    },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::LeftMutateThrough { index, result, .. } => {
                write!(f, "left-mutate block {index} one step -> {result}")
            }
            Move::RightMutateThrough { index, result, .. } => {
                write!(f, "right-mutate block {index} one step -> {result}")
            }
            Move::Transpose { index } => write!(f, "transpose blocks {index},{}", index + 1),
            Move::SerreRotateToFront { count } => write!(f, "rotate last {count} to front"),
            Move::SerreRotateToBack { count } => write!(f, "rotate first {count} to back"),
            Move::MutateSubcatLeft { index, span, label } => {
                write!(f, "mutate subcategory {index} left by {span} -> {label}")
            }
            Move::MutateSubcatRight { index, span, label } => {
                write!(f, "mutate subcategory {index} right by {span} -> {label}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MoveError {
    #[error("certificate failed: {0}")]
    Certificate(Box<Certificate>),
    #[error("invalid move: {0}")]
    Invalid(String),
    #[error(transparent)]
    Engine(#[from] Error),
}

#[derive(Debug, Clone, Serialize)]
pub struct LoggedMove {
    #[serde(rename = "move")]
    pub mv: Move,
    pub certificates: Vec<Certificate>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SodState {
    pub blocks: Vec<Block>,
    pub log: Vec<LoggedMove>,
}

impl SodState {
    pub fn new(blocks: Vec<Block>) -> Self {
        SodState {
            blocks,
            log: Vec::new(),
        }
    }

    /// Render the block list, one entry per block.
    pub fn render(&self) -> Vec<String> {
        self.blocks.iter().map(|b| b.to_string()).collect()
    }

    /// `hom_V(e, e) = k` for every exceptional block.
    pub fn exceptionality_certificates(&self, rs: &RootSystem) -> Result<Vec<Certificate>, MoveError> {
        self.blocks
            .iter()
            .filter_map(Block::expr)
            .map(|e| ext_certificate(rs, CertKind::ExtDim, e, e, &CohomologyProfile::trivial(rs.rank, 0)))
            .collect()
    }
}

fn ext_certificate(
    rs: &RootSystem,
    kind: CertKind,
    a: &BundleExpr,
    b: &BundleExpr,
    expected: &CohomologyProfile,
) -> Result<Certificate, MoveError> {
    let hom = hom_v(rs, a, b)?;
    let computed = match hom.profile {
        Some(p) => CertValue::Profile(p),
        None => CertValue::Indeterminate,
    };
    Ok(Certificate::new(
        kind,
        format!("hom_V({a}, {b})"),
        CertValue::Profile(expected.clone()),
        computed,
    ))
}

fn exceptional_at(state: &SodState, i: usize) -> Result<&BundleExpr, MoveError> {
    match state.blocks.get(i) {
        Some(Block::Exceptional { expr, .. }) => Ok(expr),
        Some(Block::Subcategory { label, .. }) => {
            Err(MoveError::Invalid(format!("block {i} is the subcategory {label}")))
        }
        None => Err(MoveError::Invalid(format!(
            "block {i} out of range ({} blocks)",
            state.blocks.len()
        ))),
    }
}

fn same_class(rs: &RootSystem, x: &BundleExpr, y: &BundleExpr) -> Result<bool, MoveError> {
    Ok(k_class(rs, x)? == k_class(rs, y)?)
}

fn sequence_certificate(rs: &RootSystem, seq: &ExactSequence) -> Result<Certificate, MoveError> {
    Ok(Certificate::new(
        CertKind::ExactSeq,
        seq.to_string(),
        CertValue::KClass(k_class(rs, &seq.middle)?),
        CertValue::KClass(k_class(rs, &seq.sub)?.plus(&k_class(rs, &seq.quotient)?)),
    ))
}

/// Certificates for mutating `mutated` through `through` into `result`.
/// `hom` is `hom_V(through, mutated)` for left mutations and
/// `hom_V(mutated, through)` for right ones.
fn mutation_certificates(
    rs: &RootSystem,
    hom_pair: (&BundleExpr, &BundleExpr),
    mutated: &BundleExpr,
    through: &BundleExpr,
    result: &BundleExpr,
    expected_hom: &CohomologyProfile,
) -> Result<Vec<Certificate>, MoveError> {
    let hom = hom_v(rs, hom_pair.0, hom_pair.1)?;
    let computed = match &hom.profile {
        Some(p) => CertValue::Profile(p.clone()),
        None => CertValue::Indeterminate,
    };
    let ext = Certificate::new(
        CertKind::ExtDim,
        format!("hom_V({}, {})", hom_pair.0, hom_pair.1),
        CertValue::Profile(expected_hom.clone()),
        computed,
    );
    let chi = hom
        .profile
        .as_ref()
        .map(|p| p.euler_characteristic())
        .unwrap_or(hom.euler_characteristic);
    let balance = Certificate::new(
        CertKind::KClassBalance,
        format!("[{result}] = [{mutated}] - ({chi})·[{through}]"),
        CertValue::KClass(k_class(rs, result)?),
        CertValue::KClass(k_class(rs, mutated)?.plus_scaled(&k_class(rs, through)?, -chi)),
    );
    Ok(vec![ext, balance])
}

fn first_failure(certs: &[Certificate]) -> Result<(), MoveError> {
    match certs.iter().find(|c| !c.pass) {
        Some(c) => Err(MoveError::Certificate(Box::new(c.clone()))),
        None => Ok(()),
    }
}

fn twist_block(b: &Block, w: &Weight, functor: &str) -> Block {
    match b {
        Block::Exceptional { expr, tag } => Block::Exceptional {
            expr: expr.twisted(w.get(0), w.get(1)),
            tag: tag.clone(),
        },
        Block::Subcategory { label, history } => {
            let mut history = history.clone();
            history.push(functor.to_string());
            Block::Subcategory {
                label: *label,
                history,
            }
        }
    }
}

/// Apply a move, returning the new state or the first failed certificate.
pub fn apply_move(rs: &RootSystem, state: &SodState, mv: &Move) -> Result<SodState, MoveError> {
    let mut blocks = state.blocks.clone();
    let n = blocks.len();
    let mut certs = Vec::new();
    match mv {
        Move::LeftMutateThrough {
            index,
            result,
            expected_hom,
            sequence,
        } => {
            let i = *index;
            if i == 0 {
                return Err(MoveError::Invalid("nothing to the left of block 0".into()));
            }
            let through = exceptional_at(state, i - 1)?.clone();
            let mutated = exceptional_at(state, i)?.clone();
            certs.extend(mutation_certificates(
                rs,
                (&through, &mutated),
                &mutated,
                &through,
                result,
                expected_hom,
            )?);
            if let Some(seq) = sequence {
                // 0 → mutated → result → through → 0
                let shape = same_class(rs, &seq.sub, &mutated)?
                    && same_class(rs, &seq.middle, result)?
                    && same_class(rs, &seq.quotient, &through)?;
                if !shape {
                    return Err(MoveError::Invalid(format!(
                        "sequence {seq} does not have the shape 0 -> {mutated} -> {result} -> {through} -> 0"
                    )));
                }
                certs.push(sequence_certificate(rs, seq)?);
            }
            blocks[i - 1] = Block::object(result.clone());
            blocks[i] = Block::object(through);
        }
        Move::RightMutateThrough {
            index,
            result,
            expected_hom,
            sequence,
        } => {
            let i = *index;
            let mutated = exceptional_at(state, i)?.clone();
            let through = exceptional_at(state, i + 1)?.clone();
            certs.extend(mutation_certificates(
                rs,
                (&mutated, &through),
                &mutated,
                &through,
                result,
                expected_hom,
            )?);
            if let Some(seq) = sequence {
                // 0 → result → mutated → through → 0
                let shape = same_class(rs, &seq.sub, result)?
                    && same_class(rs, &seq.middle, &mutated)?
                    && same_class(rs, &seq.quotient, &through)?;
                if !shape {
                    return Err(MoveError::Invalid(format!(
                        "sequence {seq} does not have the shape 0 -> {result} -> {mutated} -> {through} -> 0"
                    )));
                }
                certs.push(sequence_certificate(rs, seq)?);
            }
            blocks[i] = Block::object(through);
            blocks[i + 1] = Block::object(result.clone());
        }
        Move::Transpose { index } => {
            let i = *index;
            let left = exceptional_at(state, i)?;
            let right = exceptional_at(state, i + 1)?;
            certs.push(ext_certificate(
                rs,
                CertKind::ExtVanishing,
                left,
                right,
                &CohomologyProfile::zero(),
            )?);
            blocks.swap(i, i + 1);
        }
        Move::SerreRotateToFront { count } | Move::SerreRotateToBack { count } => {
            if *count > n {
                return Err(MoveError::Invalid(format!("cannot rotate {count} of {n} blocks")));
            }
            let omega = omega_v(rs)?;
            if matches!(mv, Move::SerreRotateToFront { .. }) {
                let tail: Vec<Block> = blocks.split_off(n - count);
                let mut front: Vec<Block> = tail.iter().map(|b| twist_block(b, &omega, "S_V")).collect();
                front.append(&mut blocks);
                blocks = front;
            } else {
                let inverse = -&omega;
                let rest = blocks.split_off(*count);
                let moved: Vec<Block> = blocks.iter().map(|b| twist_block(b, &inverse, "S_V^-1")).collect();
                blocks = rest;
                blocks.extend(moved);
            }
        }
        Move::MutateSubcatLeft { index, span, label } | Move::MutateSubcatRight { index, span, label } => {
            let i = *index;
            let left = matches!(mv, Move::MutateSubcatLeft { .. });
            let Some(Block::Subcategory { history, .. }) = state.blocks.get(i) else {
                return Err(MoveError::Invalid(format!("block {i} is not a subcategory")));
            };
            let range = if left {
                if *span > i {
                    return Err(MoveError::Invalid(format!("cannot move block {i} left by {span}")));
                }
                i - span..i
            } else {
                if i + span >= n {
                    return Err(MoveError::Invalid(format!("cannot move block {i} right by {span}")));
                }
                i + 1..i + 1 + span
            };
            let passed: Vec<String> = range
                .clone()
                .map(|j| exceptional_at(state, j).map(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let mut history = history.clone();
            history.push(format!("{}_<{}>", if left { "L" } else { "R" }, passed.join(", ")));
            let moved = Block::Subcategory {
                label: *label,
                history,
            };
            blocks.remove(i);
            let target = if left { i - span } else { i + span };
            blocks.insert(target, moved);
        }
    }
    first_failure(&certs)?;
    let mut log = state.log.clone();
    log.push(LoggedMove {
        mv: mv.clone(),
        certificates: certs,
    });
    Ok(SodState { blocks, log })
}

#[derive(Debug, Clone, Serialize)]
pub struct StepReport {
    pub index: usize,
    pub description: String,
    pub moves: Vec<String>,
    pub certificates: Vec<Certificate>,
    pub state: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplayFailure {
    pub step: usize,
    pub message: String,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplayReport {
    pub steps: Vec<StepReport>,
    pub final_state: Vec<String>,
    pub target: Vec<String>,
    pub target_match: bool,
    /// Positions where the final state differs from the target.
    pub mismatches: Vec<usize>,
    pub failure: Option<ReplayFailure>,
    pub conclusion: Option<String>,
    pub pass: bool,
}

impl ReplayReport {
    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.steps.iter().flat_map(|s| s.certificates.iter())
    }
}

#[derive(Debug, Clone, Default)]
pub struct ReplayOptions {
    /// 1-based step numbers to leave out (negative controls).
    pub skip_steps: Vec<usize>,
}

pub struct ScriptStep {
    pub description: &'static str,
    pub moves: Vec<Move>,
}

fn k(deg: usize) -> CohomologyProfile {
    CohomologyProfile::trivial(2, deg)
}

/// Exceptional collection on `G/P₁` pulled back to `F`, followed by `Φ+`.
pub fn seed_blocks() -> Vec<Block> {
    let u = BundleExpr::u();
    let ud = || u.clone().dual();
    vec![
        Block::object(BundleExpr::line(-1, 0)),
        Block::object(u.clone()),
        Block::object(BundleExpr::line(0, 0)),
        Block::object(ud()),
        Block::object(BundleExpr::line(1, 0)),
        Block::object(ud().twist(1, 0)),
        Block::subcategory(SubcatLabel::PhiPlus),
    ]
}

/// Exceptional collection on `G/P₂` pulled back to `F`: the first six
/// blocks of the decomposition through `Φ-`.
pub fn target_objects() -> Vec<BundleExpr> {
    vec![
        BundleExpr::line(0, -3),
        BundleExpr::line(0, -2),
        BundleExpr::line(0, -1),
        BundleExpr::s(),
        BundleExpr::line(0, 0),
        BundleExpr::line(0, 1),
    ]
}

/// Steps 2 through 12; step 1 is the seed.
pub fn script() -> Vec<ScriptStep> {
    let u = BundleExpr::u();
    let ud = || u.clone().dual();
    vec![
        ScriptStep {
            description: "mutate Φ+ two steps to the left",
            moves: vec![Move::MutateSubcatLeft {
                index: 6,
                span: 2,
                label: SubcatLabel::Phi1,
            }],
        },
        ScriptStep {
            description: "rotate the last two objects to the front (ω_V = O(-h-H))",
            moves: vec![Move::SerreRotateToFront { count: 2 }],
        },
        ScriptStep {
            description: "move O(-H) to the front past U'(-h) and O(-h)",
            moves: vec![Move::Transpose { index: 1 }, Move::Transpose { index: 0 }],
        },
        ScriptStep {
            description: "mutate U one step to the left through U'(-h)",
            moves: vec![Move::LeftMutateThrough {
                index: 3,
                result: BundleExpr::s(),
                expected_hom: k(1),
                sequence: Some(ExactSequence {
                    sub: u.clone(),
                    middle: BundleExpr::s(),
                    quotient: ud().twist(0, -1),
                }),
            }],
        },
        ScriptStep {
            description: "rotate O(-H) to the back",
            moves: vec![Move::SerreRotateToBack { count: 1 }],
        },
        ScriptStep {
            description: "mutate Φ1 one step to the right past O(h)",
            moves: vec![Move::MutateSubcatRight {
                index: 5,
                span: 1,
                label: SubcatLabel::Phi2,
            }],
        },
        ScriptStep {
            description: "mutate U'(-h) one step to the right through O",
            moves: vec![Move::RightMutateThrough {
                index: 2,
                result: BundleExpr::line(1, -2),
                expected_hom: k(0),
                sequence: Some(ExactSequence {
                    sub: BundleExpr::line(1, -2),
                    middle: ud().twist(0, -1),
                    quotient: BundleExpr::line(0, 0),
                }),
            }],
        },
        ScriptStep {
            // The hom and the sequence are the h-twists of the previous step,
            // computed here rather than cited.
            description: "mutate U' one step to the right through O(h)",
            moves: vec![Move::RightMutateThrough {
                index: 4,
                result: BundleExpr::line(1, -1),
                expected_hom: k(0),
                sequence: Some(ExactSequence {
                    sub: BundleExpr::line(1, -1),
                    middle: ud(),
                    quotient: BundleExpr::line(0, 1),
                }),
            }],
        },
        ScriptStep {
            description: "exchange O(H-2h) and O(h)",
            moves: vec![Move::Transpose { index: 3 }],
        },
        ScriptStep {
            description: "mutate Φ2 two steps to the left",
            moves: vec![Move::MutateSubcatLeft {
                index: 6,
                span: 2,
                label: SubcatLabel::Phi3,
            }],
        },
        ScriptStep {
            description: "rotate the last two objects to the front",
            moves: vec![Move::SerreRotateToFront { count: 2 }],
        },
    ]
}

pub const CONCLUSION: &str = "Φ := Φ_-^! ∘ Φ_3 : D(V+) → D(V-) is an equivalence";

/// Replay the mutation script from the `G/P₁` decomposition to the
/// `G/P₂` one and compare with the target.
pub fn replay(rs: &RootSystem, options: &ReplayOptions) -> ReplayReport {
    let mut steps = Vec::new();
    let mut state = SodState::new(seed_blocks());
    let target = target_objects();
    let mut target_render: Vec<String> = target.iter().map(|e| e.to_string()).collect();
    target_render.push(Block::subcategory(SubcatLabel::PhiMinus).to_string());

    let halt = |steps: Vec<StepReport>, state: &SodState, failure: ReplayFailure| ReplayReport {
        steps,
        final_state: state.render(),
        target: target_render.clone(),
        target_match: false,
        mismatches: Vec::new(),
        failure: Some(failure),
        conclusion: None,
        pass: false,
    };

    let seed_certs = match state.exceptionality_certificates(rs) {
        Ok(c) => c,
        Err(e) => {
            return halt(steps, &state, ReplayFailure { step: 1, message: e.to_string(), certificate: None });
        }
    };
    let seed_failure = seed_certs.iter().find(|c| !c.pass).cloned();
    steps.push(StepReport {
        index: 1,
        description: "seed: exceptional collection on G/P1 followed by Φ+".into(),
        moves: Vec::new(),
        certificates: seed_certs,
        state: state.render(),
    });
    if let Some(c) = seed_failure {
        return halt(
            steps,
            &state,
            ReplayFailure {
                step: 1,
                message: format!("certificate failed: {c}"),
                certificate: Some(c),
            },
        );
    }

    for (offset, step) in script().into_iter().enumerate() {
        let index = offset + 2;
        if options.skip_steps.contains(&index) {
            continue;
        }
        let mut certificates = Vec::new();
        for mv in &step.moves {
            match apply_move(rs, &state, mv) {
                Ok(next) => {
                    certificates.extend(next.log.last().map(|l| l.certificates.clone()).unwrap_or_default());
                    state = next;
                }
                Err(err) => {
                    let certificate = match &err {
                        MoveError::Certificate(c) => Some((**c).clone()),
                        _ => None,
                    };
                    steps.push(StepReport {
                        index,
                        description: step.description.into(),
                        moves: step.moves.iter().map(|m| m.to_string()).collect(),
                        certificates,
                        state: state.render(),
                    });
                    return halt(
                        steps,
                        &state,
                        ReplayFailure {
                            step: index,
                            message: err.to_string(),
                            certificate,
                        },
                    );
                }
            }
        }
        steps.push(StepReport {
            index,
            description: step.description.into(),
            moves: step.moves.iter().map(|m| m.to_string()).collect(),
            certificates,
            state: state.render(),
        });
    }

    let mut mismatches = Vec::new();
    for (pos, want) in target.iter().enumerate() {
        let ok = match state.blocks.get(pos).and_then(Block::expr) {
            Some(have) => matches!(
                (weights(rs, have), weights(rs, want)),
                (Ok(a), Ok(b)) if a.multiset() == b.multiset()
            ),
            None => false,
        };
        if !ok {
            mismatches.push(pos);
        }
    }
    let tail_ok = state.blocks.len() == target.len() + 1
        && matches!(
            state.blocks.last(),
            Some(Block::Subcategory {
                label: SubcatLabel::Phi3,
                ..
            })
        );
    if !tail_ok {
        mismatches.push(target.len());
    }
    let target_match = mismatches.is_empty();
    ReplayReport {
        steps,
        final_state: state.render(),
        target: target_render,
        target_match,
        mismatches,
        failure: None,
        conclusion: target_match.then(|| CONCLUSION.to_string()),
        pass: target_match,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs() -> RootSystem {
        RootSystem::g2()
    }

    #[test]
    fn k_class_examples() {
        let rs = rs();
        let s = k_class(&rs, &BundleExpr::s()).unwrap();
        let expected = KClass::of_weights(&[
            Weight::g2(-1, 1),
            Weight::g2(0, -1),
            Weight::g2(0, 0),
            Weight::g2(1, -2),
        ]);
        assert_eq!(s, expected);
        assert_eq!(
            k_class(&rs, &BundleExpr::line(3, -4)).unwrap(),
            KClass::of_weights(&[Weight::g2(3, -4)])
        );
        let t = k_class(&rs, &BundleExpr::u().tensor(BundleExpr::line(0, 1))).unwrap();
        assert_eq!(t, KClass::of_weights(&[Weight::g2(-1, 2), Weight::g2(0, 0)]));
        assert_eq!(s.minus(&s), KClass::zero());
    }

    #[test]
    fn left_mutation_of_u() {
        let rs = rs();
        let u = BundleExpr::u();
        let state = SodState::new(vec![
            Block::object(u.clone().dual().twist(0, -1)),
            Block::object(u.clone()),
        ]);
        let mv = Move::LeftMutateThrough {
            index: 1,
            result: BundleExpr::s(),
            expected_hom: k(1),
            sequence: Some(ExactSequence {
                sub: u.clone(),
                middle: BundleExpr::s(),
                quotient: u.clone().dual().twist(0, -1),
            }),
        };
        let next = apply_move(&rs, &state, &mv).unwrap();
        assert_eq!(next.render(), vec!["S", "U'(-h)"]);
        let certs = &next.log[0].certificates;
        assert_eq!(certs.len(), 3);
        assert!(certs.iter().all(|c| c.pass));

        // a wrong result fails the class balance
        let bad = Move::LeftMutateThrough {
            index: 1,
            result: u.clone().tensor(BundleExpr::line(0, 0)),
            expected_hom: k(1),
            sequence: None,
        };
        match apply_move(&rs, &state, &bad) {
            Err(MoveError::Certificate(c)) => assert_eq!(c.kind, CertKind::KClassBalance),
            other => panic!("{other:?}"),
        }
        // a wrong claim fails the Ext certificate
        let bad = Move::LeftMutateThrough {
            index: 1,
            result: BundleExpr::s(),
            expected_hom: k(0),
            sequence: None,
        };
        match apply_move(&rs, &state, &bad) {
            Err(MoveError::Certificate(c)) => assert_eq!(c.kind, CertKind::ExtDim),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn right_mutation_and_transpose() {
        let rs = rs();
        let ud_mh = BundleExpr::u().dual().twist(0, -1);
        let state = SodState::new(vec![Block::object(ud_mh.clone()), Block::object(BundleExpr::line(0, 0))]);
        let next = apply_move(
            &rs,
            &state,
            &Move::RightMutateThrough {
                index: 0,
                result: BundleExpr::line(1, -2),
                expected_hom: k(0),
                sequence: None,
            },
        )
        .unwrap();
        assert_eq!(next.render(), vec!["O", "O(H-2h)"]);

        let state = SodState::new(vec![Block::object(BundleExpr::line(1, -2)), Block::object(BundleExpr::line(0, 1))]);
        let next = apply_move(&rs, &state, &Move::Transpose { index: 0 }).unwrap();
        assert_eq!(next.render(), vec!["O(h)", "O(H-2h)"]);
        assert_eq!(next.log[0].certificates[0].kind, CertKind::ExtVanishing);

        // O and O(h): hom(O, O(h)) ≠ 0, so they cannot be exchanged
        let state = SodState::new(vec![Block::object(BundleExpr::line(0, 0)), Block::object(BundleExpr::line(0, 1))]);
        assert!(matches!(
            apply_move(&rs, &state, &Move::Transpose { index: 0 }),
            Err(MoveError::Certificate(_))
        ));
    }

    #[test]
    fn rotation_round_trip() {
        let rs = rs();
        let state = SodState::new(seed_blocks());
        let there = apply_move(&rs, &state, &Move::SerreRotateToBack { count: 1 }).unwrap();
        assert_eq!(there.render().last().unwrap(), "O(h)");
        let back = apply_move(&rs, &there, &Move::SerreRotateToFront { count: 1 }).unwrap();
        assert_eq!(back.blocks, state.blocks);
    }

    #[test]
    fn invalid_moves() {
        let rs = rs();
        let state = SodState::new(seed_blocks());
        assert!(matches!(
            apply_move(&rs, &state, &Move::Transpose { index: 5 }),
            Err(MoveError::Invalid(_))
        ));
        assert!(matches!(
            apply_move(&rs, &state, &Move::SerreRotateToFront { count: 9 }),
            Err(MoveError::Invalid(_))
        ));
        assert!(matches!(
            apply_move(&rs, &state, &Move::MutateSubcatLeft { index: 0, span: 1, label: SubcatLabel::Phi1 }),
            Err(MoveError::Invalid(_))
        ));
    }

    #[test]
    fn full_replay() {
        let report = replay(&rs(), &ReplayOptions::default());
        assert!(report.failure.is_none(), "{:?}", report.failure);
        assert_eq!(report.steps.len(), 12);
        assert!(report.target_match);
        assert_eq!(
            report.final_state,
            vec!["O(-3h)", "O(-2h)", "O(-h)", "S", "O", "O(h)", "Φ3(D(V+))"]
        );
        assert!(report.certificates().all(|c| c.pass));
        assert_eq!(report.conclusion.as_deref(), Some(CONCLUSION));
    }

    #[test]
    fn replay_without_the_exchange_is_rejected() {
        let report = replay(&rs(), &ReplayOptions { skip_steps: vec![10] });
        assert!(report.failure.is_none());
        assert!(!report.target_match);
        assert!(!report.pass);
        assert!(report.conclusion.is_none());
        assert_eq!(report.final_state[0], "O(-H)");
    }
}
