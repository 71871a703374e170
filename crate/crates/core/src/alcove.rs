//! Weight combinatorics of sl3 at level k.
//!
//! Weights are written in the fundamental-weight basis, `x = m1·ε1 + m2·ε2`.
//! With the Cartan matrix, `α1 = 2ε1 − ε2`, `α2 = −ε1 + 2ε2`,
//! `θ = α1 + α2 = ε1 + ε2` and `ρ = ε1 + ε2`; the pairing with a coroot is
//! `⟨x, α1⟩ = m1`, `⟨x, α2⟩ = m2`, `⟨x, θ⟩ = m1 + m2`.
//!
//! The affine Weyl group acts by ρ-shifted reflections in the walls
//! `⟨x+ρ, α1⟩ = 0`, `⟨x+ρ, α2⟩ = 0` and `⟨x+ρ, θ⟩ = k+3`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weight `m1·ε1 + m2·ε2`; serializes as `[m1, m2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct Weight {
    pub m1: i32,
    pub m2: i32,
}

impl From<(i32, i32)> for Weight {
    fn from((m1, m2): (i32, i32)) -> Self {
        Weight { m1, m2 }
    }
}

impl From<Weight> for (i32, i32) {
    fn from(w: Weight) -> Self {
        (w.m1, w.m2)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m1, self.m2)
    }
}

impl std::ops::Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight::new(self.m1 + o.m1, self.m2 + o.m2)
    }
}

impl std::ops::Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight::new(self.m1 - o.m1, self.m2 - o.m2)
    }
}

pub const ZERO: Weight = Weight { m1: 0, m2: 0 };
pub const RHO: Weight = Weight { m1: 1, m2: 1 };
/// The highest root, which is also the adjoint weight.
pub const THETA: Weight = Weight { m1: 1, m2: 1 };
pub const ALPHA1: Weight = Weight { m1: 2, m2: -1 };
pub const ALPHA2: Weight = Weight { m1: -1, m2: 2 };
pub const POSITIVE_ROOTS: [Weight; 3] = [ALPHA1, ALPHA2, THETA];

impl Weight {
    pub const fn new(m1: i32, m2: i32) -> Self {
        Weight { m1, m2 }
    }

    /// `⟨x, θ⟩ = m1 + m2`.
    pub fn theta_pairing(self) -> i32 {
        self.m1 + self.m2
    }

    pub fn is_dominant(self) -> bool {
        self.m1 >= 0 && self.m2 >= 0
    }

    pub fn is_dominant_at(self, k: u32) -> bool {
        self.is_dominant() && self.theta_pairing() <= k as i32
    }

    /// `m1 ≡ m2 (mod 3)`.
    pub fn in_root_lattice(self) -> bool {
        (self.m1 - self.m2).rem_euclid(3) == 0
    }

    /// Coordinates in the simple-root basis, when integral.
    pub fn to_root_coords(self) -> Option<(i64, i64)> {
        let c1 = 2 * self.m1 as i64 + self.m2 as i64;
        let c2 = self.m1 as i64 + 2 * self.m2 as i64;
        (c1 % 3 == 0 && c2 % 3 == 0).then_some((c1 / 3, c2 / 3))
    }

    pub fn from_root_coords(c1: i64, c2: i64) -> Self {
        Weight::new((2 * c1 - c2) as i32, (2 * c2 - c1) as i32)
    }

    /// Three times the invariant form `(x, y)`, which keeps it integral.
    pub fn form3(self, o: Weight) -> i64 {
        let (a1, a2, b1, b2) = (self.m1 as i64, self.m2 as i64, o.m1 as i64, o.m2 as i64);
        2 * a1 * b1 + a1 * b2 + a2 * b1 + 2 * a2 * b2
    }
}

/// Classical Weyl dimension `(m1+1)(m2+1)(m1+m2+2)/2`.
pub fn classical_dim(w: Weight) -> u64 {
    let (a, b) = (w.m1 as u64, w.m2 as u64);
    (a + 1) * (b + 1) * (a + b + 2) / 2
}

/// The dominant weights of level `k`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlcoveSet {
    pub level: u32,
    pub weights: Vec<Weight>,
}

impl AlcoveSet {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Weight> {
        self.weights.iter()
    }

    /// Position of `w` in the lexicographic order.
    pub fn index_of(&self, w: Weight) -> Option<usize> {
        if !w.is_dominant_at(self.level) {
            return None;
        }
        let (k, a, b) = (self.level as usize, w.m1 as usize, w.m2 as usize);
        Some(a * (k + 1) - a * a.saturating_sub(1) / 2 + b)
    }

    pub fn contains(&self, w: Weight) -> bool {
        w.is_dominant_at(self.level)
    }
}

pub fn alcove_weights(k: u32) -> Result<AlcoveSet> {
    if k < 1 {
        return Err(Error::InvalidLevel(k));
    }
    let k_i = k as i32;
    let weights = (0..=k_i)
        .flat_map(|m1| (0..=k_i - m1).map(move |m2| Weight::new(m1, m2)))
        .collect();
    Ok(AlcoveSet { level: k, weights })
}

/// The alcove weights in the root lattice (`m1 ≡ m2 mod 3`).
pub fn root_lattice_weights(k: u32) -> Result<Vec<Weight>> {
    Ok(alcove_weights(k)?
        .weights
        .into_iter()
        .filter(|w| w.in_root_lattice())
        .collect())
}

/// Generators of the affine Weyl group acting with the ρ-shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AffineReflection {
    Tau1,
    Tau2,
    Tau3,
}

impl AffineReflection {
    pub fn apply(self, x: Weight, k: u32) -> Weight {
        let (a, b) = (x.m1 + 1, x.m2 + 1);
        let h = k as i32 + 3;
        let (a, b) = match self {
            AffineReflection::Tau1 => (-a, a + b),
            AffineReflection::Tau2 => (a + b, -b),
            AffineReflection::Tau3 => (h - b, h - a),
        };
        Weight::new(a - 1, b - 1)
    }
}

/// Outcome of folding a weight into the level-k alcove.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FoldResult {
    /// `None` when the orbit meets a wall.
    pub target: Option<Weight>,
    pub sign: i8,
}

/// A generous bound on reflections needed for inputs of size `|x|`.
fn fold_bound(x: Weight, k: u32) -> usize {
    let size = x.m1.unsigned_abs() as usize + x.m2.unsigned_abs() as usize + 2;
    8 * (size / (k as usize + 3) + 2) + 16
}

/// Folds `x` into the alcove, recording the reflections applied.
pub fn affine_fold_traced(x: Weight, k: u32) -> (FoldResult, Vec<AffineReflection>) {
    let h = k as i32 + 3;
    let bound = fold_bound(x, k);
    let mut word = Vec::new();
    let mut sign = 1i8;
    let mut cur = x;
    loop {
        let (a, b) = (cur.m1 + 1, cur.m2 + 1);
        if a == 0 || b == 0 || a + b == h {
            return (FoldResult { target: None, sign }, word);
        }
        let step = if a < 0 {
            AffineReflection::Tau1
        } else if b < 0 {
            AffineReflection::Tau2
        } else if a + b > h {
            AffineReflection::Tau3
        } else {
            return (FoldResult { target: Some(cur), sign }, word);
        };
        cur = step.apply(cur, k);
        sign = -sign;
        word.push(step);
        assert!(word.len() <= bound, "affine fold of {x} at level {k} did not terminate");
    }
}

pub fn affine_fold(x: Weight, k: u32) -> FoldResult {
    affine_fold_traced(x, k).0
}

/// An element of the classical Weyl group acting linearly on ε-coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylElement {
    matrix: [[i32; 2]; 2],
    pub sign: i8,
}

impl WeylElement {
    pub fn apply(&self, w: Weight) -> Weight {
        let m = &self.matrix;
        Weight::new(m[0][0] * w.m1 + m[0][1] * w.m2, m[1][0] * w.m1 + m[1][1] * w.m2)
    }

    fn compose(&self, o: &WeylElement) -> WeylElement {
        let (a, b) = (&self.matrix, &o.matrix);
        let mut m = [[0; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        WeylElement { matrix: m, sign: self.sign * o.sign }
    }
}

/// The six elements of the Weyl group of sl3.
pub fn classical_weyl_group() -> Vec<WeylElement> {
    let s1 = WeylElement { matrix: [[-1, 0], [1, 1]], sign: -1 };
    let s2 = WeylElement { matrix: [[1, 1], [0, -1]], sign: -1 };
    let id = WeylElement { matrix: [[1, 0], [0, 1]], sign: 1 };
    let mut group = vec![id];
    let mut i = 0;
    while i < group.len() {
        for s in [&s1, &s2] {
            let g = s.compose(&group[i]);
            if !group.contains(&g) {
                group.push(g);
            }
        }
        i += 1;
    }
    debug_assert_eq!(group.len(), 6);
    group
}

/// All weights of the irreducible representation with a given highest weight.
#[derive(Debug)]
pub struct WeightDiagram {
    pub highest: Weight,
    /// Weights with nonzero multiplicity.
    pub weights: Vec<(Weight, u64)>,
    index: HashMap<Weight, u64>,
}

impl WeightDiagram {
    pub fn multiplicity(&self, mu: Weight) -> u64 {
        self.index.get(&mu).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> u64 {
        self.weights.iter().map(|&(_, m)| m).sum()
    }
}

/// Freudenthal's recursion over `λ − a·α1 − b·α2`, `0 ≤ a, b ≤ m1+m2`.
fn freudenthal(highest: Weight) -> WeightDiagram {
    assert!(highest.is_dominant(), "highest weight must be dominant");
    let span = (highest.m1 + highest.m2) as usize;
    let side = span + 1;
    let at = |a: usize, b: usize| a * side + b;
    let weight_at = |a: usize, b: usize| highest - Weight::new(2 * a as i32 - b as i32, 2 * b as i32 - a as i32);
    let top = (highest + RHO).form3(highest + RHO);
    let mut mult = vec![0i64; side * side];
    mult[at(0, 0)] = 1;
    for depth in 1..=2 * span {
        for a in depth.saturating_sub(span)..=depth.min(span) {
            let b = depth - a;
            let mu = weight_at(a, b);
            let den = top - (mu + RHO).form3(mu + RHO);
            if den == 0 {
                continue;
            }
            let mut num = 0i64;
            for (root, (da, db)) in POSITIVE_ROOTS.iter().zip([(1, 0), (0, 1), (1, 1)]) {
                let mut j = 1;
                while a >= j * da && b >= j * db {
                    let m = mult[at(a - j * da, b - j * db)];
                    if m != 0 {
                        let shifted = mu + Weight::new(root.m1 * j as i32, root.m2 * j as i32);
                        num += m * shifted.form3(*root);
                    }
                    j += 1;
                }
            }
            num *= 2;
            debug_assert_eq!(num % den, 0, "Freudenthal quotient not integral");
            mult[at(a, b)] = num / den;
        }
    }
    let mut weights = Vec::new();
    for depth in 0..=2 * span {
        for a in depth.saturating_sub(span)..=depth.min(span) {
            let m = mult[at(a, depth - a)];
            debug_assert!(m >= 0);
            if m > 0 {
                weights.push((weight_at(a, depth - a), m as u64));
            }
        }
    }
    let index = weights.iter().copied().collect();
    WeightDiagram { highest, weights, index }
}

static DIAGRAMS: OnceLock<Mutex<HashMap<Weight, Arc<WeightDiagram>>>> = OnceLock::new();

/// The (cached) weight diagram of a dominant weight.
pub fn weight_diagram(highest: Weight) -> Arc<WeightDiagram> {
    let cache = DIAGRAMS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().unwrap().get(&highest) {
        return Arc::clone(d);
    }
    let d = Arc::new(freudenthal(highest));
    Arc::clone(cache.lock().unwrap().entry(highest).or_insert(d))
}

/// Dimension of the `mu` weight space of the representation with highest
/// weight `gamma`.
pub fn weight_multiplicity(gamma: Weight, mu: Weight) -> u64 {
    weight_diagram(gamma).multiplicity(mu)
}

/// Number of ways to write `c1·α1 + c2·α2` as a sum of positive roots.
pub fn kostant_partition(c1: i64, c2: i64) -> u64 {
    if c1 < 0 || c2 < 0 {
        0
    } else {
        c1.min(c2) as u64 + 1
    }
}

/// Kostant's alternating sum, used as an independent check on Freudenthal.
pub fn kostant_multiplicity(gamma: Weight, mu: Weight) -> u64 {
    let total: i64 = classical_weyl_group()
        .iter()
        .map(|w| {
            let diff = w.apply(gamma + RHO) - (mu + RHO);
            match diff.to_root_coords() {
                Some((c1, c2)) => w.sign as i64 * kostant_partition(c1, c2) as i64,
                None => 0,
            }
        })
        .sum();
    debug_assert!(total >= 0);
    total.max(0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i32, b: i32) -> Weight {
        Weight::new(a, b)
    }

    #[test]
    fn alcove_examples() {
        assert_eq!(alcove_weights(1).unwrap().weights, vec![w(0, 0), w(0, 1), w(1, 0)]);
        assert_eq!(alcove_weights(3).unwrap().len(), 10);
        let a6 = alcove_weights(6).unwrap();
        assert_eq!(a6.len(), 28);
        assert!(a6.contains(w(2, 2)) && a6.contains(w(3, 3)));
        assert_eq!(alcove_weights(0), Err(Error::InvalidLevel(0)));
        assert!(alcove_weights(0).unwrap_err().to_string().contains("invalid level"));
    }

    #[test]
    fn index_of_matches_position() {
        for k in 1..=9 {
            let a = alcove_weights(k).unwrap();
            assert_eq!(a.weights[0], ZERO);
            assert_eq!(a.len(), ((k + 1) * (k + 2) / 2) as usize);
            for (i, &x) in a.iter().enumerate() {
                assert_eq!(a.index_of(x), Some(i));
            }
            assert_eq!(a.index_of(w(k as i32, 1)), None);
        }
    }

    #[test]
    fn root_lattice_examples() {
        assert_eq!(root_lattice_weights(3).unwrap(), vec![w(0, 0), w(0, 3), w(1, 1), w(3, 0)]);
        assert_eq!(root_lattice_weights(6).unwrap().len(), 10);
        assert_eq!(root_lattice_weights(1).unwrap(), vec![w(0, 0)]);
    }

    #[test]
    fn fold_examples() {
        assert_eq!(affine_fold(w(1, 1), 3), FoldResult { target: Some(w(1, 1)), sign: 1 });
        assert_eq!(affine_fold(w(2, 0), 1).target, None);
        assert_eq!(affine_fold(w(2, -1), 2).target, None);
        // (0,3) at level 2 sits on the affine wall ⟨x+ρ, θ⟩ = k+3.
        let r = affine_fold(w(0, 3), 2);
        assert_eq!(r, FoldResult { target: None, sign: 1 });
        let r = affine_fold(w(-2, 1), 3);
        assert_eq!(r, FoldResult { target: Some(w(0, 0)), sign: -1 });
    }

    #[test]
    fn weyl_group_is_closed_and_signed() {
        let g = classical_weyl_group();
        assert_eq!(g.len(), 6);
        assert_eq!(g.iter().filter(|e| e.sign == -1).count(), 3);
        // Orbit of (1,0) is the three weights of the standard representation.
        let mut orbit: Vec<_> = g.iter().map(|e| e.apply(w(1, 0))).collect();
        orbit.sort();
        orbit.dedup();
        assert_eq!(orbit, vec![w(-1, 1), w(0, -1), w(1, 0)]);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(weight_multiplicity(THETA, ZERO), 2);
        assert_eq!(weight_multiplicity(w(3, 5), w(3, 5)), 1);
        for m in 0..8 {
            assert_eq!(weight_multiplicity(w(m, m), ZERO), m as u64 + 1);
        }
        assert_eq!(weight_multiplicity(w(1, 0), w(1, 1)), 0);
    }

    #[test]
    fn kostant_examples() {
        assert_eq!(kostant_partition(0, 0), 1);
        // α1+α2 is either θ itself or α1 + α2.
        assert_eq!(kostant_partition(1, 1), 2);
        for m in 0..10 {
            assert_eq!(kostant_partition(m, m), m as u64 + 1);
            assert_eq!(kostant_multiplicity(w(m as i32, m as i32), ZERO), m as u64 + 1);
        }
        assert_eq!(kostant_multiplicity(w(1, 0), w(1, 0)), 1);
        let d = weight_diagram(THETA);
        for &(mu, m) in &d.weights {
            assert_eq!(kostant_multiplicity(THETA, mu), m);
        }
    }

    #[test]
    fn root_coordinates_round_trip() {
        assert_eq!(ALPHA1.to_root_coords(), Some((1, 0)));
        assert_eq!(THETA.to_root_coords(), Some((1, 1)));
        assert_eq!(w(1, 0).to_root_coords(), None);
        assert_eq!(Weight::from_root_coords(3, -2), w(8, -7));
    }

    #[test]
    fn serializes_as_pair() {
        assert_eq!(serde_json::to_string(&w(2, 5)).unwrap(), "[2,5]");
        let back: Weight = serde_json::from_str("[4,-1]").unwrap();
        assert_eq!(back, w(4, -1));
    }
}
