//! Root systems, weights and Weyl groups of finite type.
//!
//! Conventions: row `i` of the Cartan matrix is the simple root `α_i`
//! written in the fundamental-weight basis, i.e. `c[i][j] = ⟨α_i, α_j∨⟩`.
//! The symmetrizer `d` satisfies `c[i][j]·d[j] = c[j][i]·d[i]`, so
//! `(α_i, α_j) = c[i][j]·d[j]` and `(α_i, α_i) = 2·d[i]`.
//!
//! For G2 the first simple root is the long one: `α₁ = (2,-3)`,
//! `α₂ = (-1,2)`, so `(a,b) = a·ω₁ + b·ω₂` with `ω₁ = H` and `ω₂ = h`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cartan matrix of G2 with the long root first.
pub const G2_CARTAN: [[i64; 2]; 2] = [[2, -3], [-1, 2]];

/// Upper bound on the Weyl-group size enumerated at construction.
pub const WEYL_ORDER_LIMIT: usize = 100_000;

/// Integral weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// Rank-2 shorthand: `(a,b) = a·ω₁ + b·ω₂`.
    pub fn g2(a: i64, b: i64) -> Self {
        Weight(vec![a, b])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Dominant with respect to the simple roots in `levi` only.
    pub fn is_levi_dominant(&self, levi: &[usize]) -> bool {
        levi.iter().all(|&i| self.0[i] >= 0)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<[i64; 2]> for Weight {
    fn from(c: [i64; 2]) -> Self {
        Weight(c.to_vec())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        Weight(rhs.0.iter().map(|a| self * a).collect())
    }
}

/// A root, carried in both the simple-root and the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub simple_coords: Vec<i64>,
    pub weight_coords: Weight,
    /// Squared length under the symmetrized form (short roots of a
    /// simply-laced component have length 2).
    pub length_sq: i64,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.simple_coords.iter().all(|&n| n >= 0)
    }

    pub fn negate(&self) -> Root {
        Root {
            simple_coords: self.simple_coords.iter().map(|n| -n).collect(),
            weight_coords: -&self.weight_coords,
            length_sq: self.length_sq,
        }
    }
}

/// Weyl group element with a reduced word and its action on weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylElement {
    /// Reduced word; `word[0]` is the leftmost simple reflection.
    pub word: Vec<usize>,
    /// Row-major `rank × rank` matrix acting on fundamental-weight coordinates.
    pub matrix: Vec<i64>,
    pub length: usize,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![0; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        WeylElement {
            word: Vec::new(),
            matrix,
            length: 0,
        }
    }

    pub fn rank(&self) -> usize {
        (self.matrix.len() as f64).sqrt() as usize
    }

    pub fn apply(&self, mu: &Weight) -> Weight {
        let n = mu.rank();
        Weight(
            (0..n)
                .map(|r| (0..n).map(|c| self.matrix[r * n + c] * mu.get(c)).sum())
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.rank())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootSystem {
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
    pub simple_roots: Vec<Root>,
    /// Sorted by height, then lexicographically in simple coordinates.
    pub positive_roots: Vec<Root>,
    pub rho: Weight,
    pub weyl_order: usize,
    /// All Weyl group elements in breadth-first (length) order.
    pub weyl_group: Vec<WeylElement>,
}

impl RootSystem {
    /// G2 with the long simple root first.
    pub fn g2() -> Self {
        let cartan = G2_CARTAN.iter().map(|r| r.to_vec()).collect();
        RootSystem::new(cartan).expect("G2 Cartan matrix is of finite type")
    }

    pub fn new(cartan: Vec<Vec<i64>>) -> Result<Self> {
        let rank = cartan.len();
        validate_shape(&cartan)?;
        let symmetrizer = symmetrize(&cartan)?;
        check_positive_definite(&cartan, &symmetrizer)?;

        let form = |a: &[i64], b: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..rank {
                for j in 0..rank {
                    s += a[i] * b[j] * cartan[i][j] * symmetrizer[j];
                }
            }
            s
        };
        let make_root = |simple: Vec<i64>| -> Root {
            let mut w = vec![0; rank];
            for (k, &n) in simple.iter().enumerate() {
                for j in 0..rank {
                    w[j] += n * cartan[k][j];
                }
            }
            let length_sq = form(&simple, &simple);
            Root {
                simple_coords: simple,
                weight_coords: Weight(w),
                length_sq,
            }
        };

        let simple_roots: Vec<Root> = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                make_root(v)
            })
            .collect();

        // Root-string closure, processed by height. For a root β and simple
        // α_i, the α_i-string through β runs from β - p·α_i to β + q·α_i
        // with p - q = ⟨β, α_i∨⟩.
        let mut known: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut layer: Vec<Vec<i64>> = simple_roots.iter().map(|r| r.simple_coords.clone()).collect();
        let mut positive: Vec<Vec<i64>> = Vec::new();
        for r in &layer {
            known.insert(r.clone(), ());
        }
        while !layer.is_empty() {
            positive.extend(layer.iter().cloned());
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in &layer {
                let bw = make_root(beta.clone()).weight_coords;
                for i in 0..rank {
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains_key(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - bw.get(i);
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !known.contains_key(&up) {
                            known.insert(up.clone(), ());
                            next.push(up);
                        }
                    }
                }
            }
            layer = next;
        }
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let positive_roots: Vec<Root> = positive.into_iter().map(make_root).collect();

        let rho = Weight(vec![1; rank]);
        let weyl_group = generate_weyl_group(&cartan)?;

        Ok(RootSystem {
            rank,
            cartan,
            symmetrizer,
            simple_roots,
            positive_roots,
            rho,
            weyl_order: weyl_group.len(),
            weyl_group,
        })
    }

    fn check_rank(&self, mu: &Weight) -> Result<()> {
        if mu.rank() != self.rank {
            return Err(Error::RankMismatch {
                weight: mu.clone(),
                got: mu.rank(),
                rank: self.rank,
            });
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank,
            });
        }
        Ok(())
    }

    /// Simple reflection `s_i(μ) = μ - μ_i·α_i`.
    pub fn reflect(&self, i: usize, mu: &Weight) -> Result<Weight> {
        self.check_index(i)?;
        self.check_rank(mu)?;
        Ok(self.reflect_unchecked(i, mu))
    }

    pub(crate) fn reflect_unchecked(&self, i: usize, mu: &Weight) -> Weight {
        let m = mu.get(i);
        Weight(
            mu.0.iter()
                .zip(&self.cartan[i])
                .map(|(x, c)| x - m * c)
                .collect(),
        )
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.simple_roots[i]
    }

    /// Look up a root (positive or negative) by its weight coordinates.
    pub fn root_by_weight(&self, w: &Weight) -> Option<Root> {
        self.positive_roots.iter().find_map(|r| {
            if r.weight_coords == *w {
                Some(r.clone())
            } else if r.weight_coords == -w {
                Some(r.negate())
            } else {
                None
            }
        })
    }

    fn is_root(&self, alpha: &Root) -> bool {
        self.positive_roots
            .iter()
            .any(|r| *r == *alpha || r.negate() == *alpha)
    }

    /// Coroot pairing `⟨μ, α∨⟩ = 2(μ,α)/(α,α)`.
    pub fn pairing(&self, mu: &Weight, alpha: &Root) -> Result<i64> {
        self.check_rank(mu)?;
        if !self.is_root(alpha) {
            return Err(Error::NotARoot(alpha.weight_coords.clone()));
        }
        Ok(self.pairing_unchecked(mu, alpha))
    }

    pub(crate) fn pairing_unchecked(&self, mu: &Weight, alpha: &Root) -> i64 {
        // (ω_k, α_j) = δ_kj·d_j
        let inner: i64 = alpha
            .simple_coords
            .iter()
            .enumerate()
            .map(|(k, n)| n * self.symmetrizer[k] * mu.get(k))
            .sum();
        let num = 2 * inner;
        debug_assert_eq!(num % alpha.length_sq, 0, "non-integral coroot pairing");
        num / alpha.length_sq
    }

    /// Whether some positive root pairs to zero with `μ`.
    pub fn is_singular(&self, mu: &Weight) -> bool {
        self.positive_roots
            .iter()
            .any(|a| self.pairing_unchecked(mu, a) == 0)
    }

    /// Image of a root under a Weyl element.
    pub fn apply_to_root(&self, w: &WeylElement, alpha: &Root) -> Root {
        let image = w.apply(&alpha.weight_coords);
        self.root_by_weight(&image)
            .expect("Weyl group permutes the root system")
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversions(&self, w: &WeylElement) -> usize {
        self.positive_roots
            .iter()
            .filter(|a| !self.apply_to_root(w, a).is_positive())
            .count()
    }

    pub fn longest_element(&self) -> &WeylElement {
        self.weyl_group
            .iter()
            .max_by_key(|w| w.length)
            .expect("Weyl group is never empty")
    }

    /// Product of the simple reflections in `word` (leftmost first).
    pub fn element_from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut m = WeylElement::identity(self.rank).matrix;
        for &i in word {
            self.check_index(i)?;
            m = mat_mul(&m, &reflection_matrix(&self.cartan, i), self.rank);
        }
        let length = self
            .weyl_group
            .iter()
            .find(|w| w.matrix == m)
            .map(|w| w.length)
            .unwrap_or(word.len());
        Ok(WeylElement {
            word: word.to_vec(),
            matrix: m,
            length,
        })
    }

    /// Levi factor's positive roots: those supported on `levi` only.
    pub fn levi_positive_roots(&self, levi: &[usize]) -> Vec<&Root> {
        self.positive_roots
            .iter()
            .filter(|r| {
                r.simple_coords
                    .iter()
                    .enumerate()
                    .all(|(k, &n)| n == 0 || levi.contains(&k))
            })
            .collect()
    }
}

fn validate_shape(c: &[Vec<i64>]) -> Result<()> {
    let n = c.len();
    if n == 0 {
        return Err(Error::InvalidCartan("empty matrix".into()));
    }
    for (i, row) in c.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidCartan(format!(
                "row {i} has length {}, expected {n}",
                row.len()
            )));
        }
        if row[i] != 2 {
            return Err(Error::InvalidCartan(format!("diagonal entry {i} is {}", row[i])));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if c[i][j] > 0 {
                return Err(Error::InvalidCartan(format!("positive off-diagonal entry ({i},{j})")));
            }
            if (c[i][j] == 0) != (c[j][i] == 0) {
                return Err(Error::InvalidCartan(format!(
                    "entries ({i},{j}) and ({j},{i}) must vanish together"
                )));
            }
        }
    }
    Ok(())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Smallest positive integers `d` with `c[i][j]·d[j] = c[j][i]·d[i]`.
fn symmetrize(c: &[Vec<i64>]) -> Result<Vec<i64>> {
    use num_rational::Ratio;
    let n = c.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Ratio::from_integer(1));
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].unwrap();
            for j in 0..n {
                if i == j || c[i][j] == 0 {
                    continue;
                }
                // c[i][j]·d[j] = c[j][i]·d[i]
                let dj = di * Ratio::new(c[j][i], c[i][j]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let d: Vec<Ratio<i64>> = d.into_iter().map(|x| x.unwrap()).collect();
    let lcm_den = d.iter().fold(1, |acc, x| acc / gcd(acc, *x.denom()) * x.denom());
    let ints: Vec<i64> = d.iter().map(|x| (x * lcm_den).to_integer()).collect();
    let g = ints.iter().fold(0, |acc, &x| gcd(acc, x));
    Ok(ints.into_iter().map(|x| x / g).collect())
}

/// Bareiss elimination on the symmetrized form; each pivot is a leading
/// principal minor, so all must be positive.
fn check_positive_definite(c: &[Vec<i64>], d: &[i64]) -> Result<()> {
    let n = c.len();
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| (c[i][j] * d[j]) as i128).collect())
        .collect();
    let mut prev: i128 = 1;
    for k in 0..n {
        if m[k][k] <= 0 {
            return Err(Error::InvalidCartan(
                "symmetrized form is not positive definite (not of finite type)".into(),
            ));
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(())
}

fn reflection_matrix(c: &[Vec<i64>], i: usize) -> Vec<i64> {
    let n = c.len();
    let mut m = WeylElement::identity(n).matrix;
    // (s_i μ)_j = μ_j - μ_i·c[i][j]
    for j in 0..n {
        m[j * n + i] -= c[i][j];
    }
    m
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for r in 0..n {
        for k in 0..n {
            let x = a[r * n + k];
            if x == 0 {
                continue;
            }
            for col in 0..n {
                out[r * n + col] += x * b[k * n + col];
            }
        }
    }
    out
}

fn generate_weyl_group(c: &[Vec<i64>]) -> Result<Vec<WeylElement>> {
    let n = c.len();
    let gens: Vec<Vec<i64>> = (0..n).map(|i| reflection_matrix(c, i)).collect();
    let id = WeylElement::identity(n);
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::from([(id.matrix.clone(), ())]);
    let mut elements = vec![id];
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for (i, g) in gens.iter().enumerate() {
            let m = mat_mul(&current.matrix, g, n);
            if seen.contains_key(&m) {
                continue;
            }
            seen.insert(m.clone(), ());
            let mut word = current.word.clone();
            word.push(i);
            elements.push(WeylElement {
                length: word.len(),
                word,
                matrix: m,
            });
            if elements.len() > WEYL_ORDER_LIMIT {
                return Err(Error::WeylGroupTooLarge {
                    limit: WEYL_ORDER_LIMIT,
                });
            }
        }
    }
    Ok(elements)
}
