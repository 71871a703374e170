//! Fusion rules of C(sl3,k) and generic fusion-ring utilities.
//!
//! Coefficients come from the quantum Racah formula evaluated Kac–Walton
//! style: every weight `μ` of the diagram of `γ` contributes its multiplicity,
//! with the sign of the folding, at the alcove image of `λ + μ`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::alcove::{affine_fold, alcove_weights, weight_diagram, AlcoveSet, Weight, ZERO};
use crate::error::{Error, Result};

/// Largest level stored as a dense `n³` array.
pub const DENSE_LEVEL_LIMIT: u32 = 12;

/// Read access to a commutative fusion ring with a distinguished basis.
pub trait FusionRules: Sync {
    fn rank(&self) -> usize;

    fn unit(&self) -> usize {
        0
    }

    fn dual(&self, a: usize) -> usize;

    /// The nonzero coefficients of `a ⊗ b`, sorted by index.
    fn product(&self, a: usize, b: usize) -> Vec<(usize, u32)>;

    fn coeff(&self, a: usize, b: usize, c: usize) -> u32 {
        self.product(a, b)
            .into_iter()
            .find(|&(x, _)| x == c)
            .map_or(0, |(_, n)| n)
    }

    /// `(N_a)_{b,c} = N_{ab}^c`.
    fn fusion_matrix(&self, a: usize) -> DMatrix<f64> {
        let n = self.rank();
        let mut m = DMatrix::zeros(n, n);
        for b in 0..n {
            for (c, v) in self.product(a, b) {
                m[(b, c)] = v as f64;
            }
        }
        m
    }
}

fn check_level_weight(w: Weight, k: u32) -> Result<()> {
    if w.is_dominant_at(k) {
        Ok(())
    } else {
        Err(Error::WeightOutsideAlcove { weight: w, level: k })
    }
}

/// Decomposition of `λ ⊗ γ` at level `k`, sorted by weight.
pub fn fusion_product(lambda: Weight, gamma: Weight, k: u32) -> Result<Vec<(Weight, u32)>> {
    if k < 1 {
        return Err(Error::InvalidLevel(k));
    }
    check_level_weight(lambda, k)?;
    check_level_weight(gamma, k)?;
    let diagram = weight_diagram(gamma);
    let mut acc: HashMap<Weight, i64> = HashMap::new();
    for &(mu, mult) in &diagram.weights {
        let fold = affine_fold(lambda + mu, k);
        if let Some(target) = fold.target {
            let term = i64::try_from(mult).map_err(|_| Error::CoefficientOverflow)? * fold.sign as i64;
            let slot = acc.entry(target).or_insert(0);
            *slot = slot.checked_add(term).ok_or(Error::CoefficientOverflow)?;
        }
    }
    let mut out = Vec::with_capacity(acc.len());
    for (w, n) in acc {
        assert!(n >= 0, "negative fusion coefficient at {w} in {lambda}⊗{gamma}, level {k}");
        if n > 0 {
            out.push((w, u32::try_from(n).map_err(|_| Error::CoefficientOverflow)?));
        }
    }
    out.sort();
    Ok(out)
}

/// `N_{λγ}^η` at level `k`.
pub fn fusion_coeff(lambda: Weight, gamma: Weight, eta: Weight, k: u32) -> Result<u32> {
    check_level_weight(eta, k)?;
    Ok(fusion_product(lambda, gamma, k)?
        .into_iter()
        .find(|&(w, _)| w == eta)
        .map_or(0, |(_, n)| n))
}

/// `(m1, m2)* = (m2, m1)`.
pub fn dual(w: Weight) -> Weight {
    Weight::new(w.m2, w.m1)
}

/// Closed-form product of a corner weight with an alcove weight:
/// `(0,k)⊗(m1,m2) = (m2, k−m1−m2)` and `(k,0)⊗(m1,m2) = (k−m1−m2, m1)`.
pub fn corner_tensor(corner: Weight, lambda: Weight, k: u32) -> Result<Weight> {
    check_level_weight(lambda, k)?;
    let k_i = k as i32;
    if corner == Weight::new(0, k_i) {
        Ok(Weight::new(lambda.m2, k_i - lambda.m1 - lambda.m2))
    } else if corner == Weight::new(k_i, 0) {
        Ok(Weight::new(k_i - lambda.m1 - lambda.m2, lambda.m1))
    } else if corner == ZERO {
        Ok(lambda)
    } else {
        Err(Error::NotACorner { weight: corner, level: k })
    }
}

pub fn corners(k: u32) -> [Weight; 3] {
    [ZERO, Weight::new(k as i32, 0), Weight::new(0, k as i32)]
}

enum Storage {
    Dense(Vec<u32>),
    Sparse(HashMap<(u32, u32, u32), u32>),
}

/// All fusion coefficients of C(sl3,k), indexed by the alcove order.
pub struct FusionTable {
    pub level: u32,
    pub index: AlcoveSet,
    storage: Storage,
    products: Vec<Vec<(usize, u32)>>,
}

impl FusionTable {
    /// Builds every product `λ ⊗ γ`; rows are computed in parallel.
    pub fn build(k: u32) -> Result<Self> {
        let index = alcove_weights(k)?;
        let n = index.len();
        let rows: Vec<Vec<(usize, u32)>> = (0..n * n)
            .into_par_iter()
            .map(|ab| {
                let (a, b) = (ab / n, ab % n);
                fusion_product(index.weights[a], index.weights[b], k).map(|p| {
                    p.into_iter()
                        .map(|(w, c)| (index.index_of(w).expect("fold lands in alcove"), c))
                        .collect()
                })
            })
            .collect::<Result<_>>()?;
        let storage = if k <= DENSE_LEVEL_LIMIT {
            let mut flat = vec![0u32; n * n * n];
            for (ab, row) in rows.iter().enumerate() {
                for &(c, v) in row {
                    flat[ab * n + c] = v;
                }
            }
            Storage::Dense(flat)
        } else {
            let mut map = HashMap::new();
            for (ab, row) in rows.iter().enumerate() {
                for &(c, v) in row {
                    map.insert(((ab / n) as u32, (ab % n) as u32, c as u32), v);
                }
            }
            Storage::Sparse(map)
        };
        Ok(FusionTable { level: k, index, storage, products: rows })
    }

    pub fn weights(&self) -> &[Weight] {
        &self.index.weights
    }

    pub fn idx(&self, w: Weight) -> Result<usize> {
        self.index
            .index_of(w)
            .ok_or(Error::WeightOutsideAlcove { weight: w, level: self.level })
    }

    pub fn get(&self, a: Weight, b: Weight, c: Weight) -> Result<u32> {
        Ok(self.coeff(self.idx(a)?, self.idx(b)?, self.idx(c)?))
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    /// Nonzero coefficients as `(a, b, c, N)`, in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Weight, Weight, Weight, u32)> + '_ {
        let n = self.index.len();
        let w = &self.index.weights;
        self.products.iter().enumerate().flat_map(move |(ab, row)| {
            row.iter().map(move |&(c, v)| (w[ab / n], w[ab % n], w[c], v))
        })
    }
}

impl FusionRules for FusionTable {
    fn rank(&self) -> usize {
        self.index.len()
    }

    fn dual(&self, a: usize) -> usize {
        self.index
            .index_of(dual(self.index.weights[a]))
            .expect("dual stays in the alcove")
    }

    fn product(&self, a: usize, b: usize) -> Vec<(usize, u32)> {
        self.products[a * self.index.len() + b].clone()
    }

    fn coeff(&self, a: usize, b: usize, c: usize) -> u32 {
        let n = self.index.len();
        match &self.storage {
            Storage::Dense(flat) => flat[(a * n + b) * n + c],
            Storage::Sparse(map) => map.get(&(a as u32, b as u32, c as u32)).copied().unwrap_or(0),
        }
    }
}

impl Serialize for FusionTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            a: Weight,
            b: Weight,
            c: Weight,
            n: u32,
        }
        let coeffs: Vec<Entry> = self.nonzero().map(|(a, b, c, n)| Entry { a, b, c, n }).collect();
        let mut s = serializer.serialize_struct("FusionTable", 2)?;
        s.serialize_field("level", &self.level)?;
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

/// Fusion rules of C(sl3,k) computed on demand, for levels where the full
/// table is too large to materialise.
pub struct LevelFusion {
    pub index: AlcoveSet,
}

impl LevelFusion {
    pub fn new(k: u32) -> Result<Self> {
        Ok(LevelFusion { index: alcove_weights(k)? })
    }
}

impl FusionRules for LevelFusion {
    fn rank(&self) -> usize {
        self.index.len()
    }

    fn dual(&self, a: usize) -> usize {
        self.index.index_of(dual(self.index.weights[a])).expect("dual stays in the alcove")
    }

    fn product(&self, a: usize, b: usize) -> Vec<(usize, u32)> {
        let k = self.index.level;
        let mut out: Vec<(usize, u32)> =
            fusion_product(self.index.weights[a], self.index.weights[b], k)
                .expect("alcove weights are valid")
                .into_iter()
                .map(|(w, c)| (self.index.index_of(w).expect("fold lands in alcove"), c))
                .collect();
        out.sort();
        out
    }
}

/// The fusion rules restricted to a subset closed under products.
pub struct Restricted<'a, F: FusionRules> {
    rules: &'a F,
    members: Vec<usize>,
    position: BTreeMap<usize, usize>,
}

impl<'a, F: FusionRules> Restricted<'a, F> {
    /// `members` must contain the unit and be closed under products and duals.
    pub fn new(rules: &'a F, members: &BTreeSet<usize>) -> Self {
        let mut members: Vec<usize> = members.iter().copied().collect();
        // Keep the unit first so that index 0 stays the unit.
        members.sort_by_key(|&m| (m != rules.unit(), m));
        let position = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Restricted { rules, members, position }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }
}

impl<F: FusionRules> FusionRules for Restricted<'_, F> {
    fn rank(&self) -> usize {
        self.members.len()
    }

    fn dual(&self, a: usize) -> usize {
        self.position[&self.rules.dual(self.members[a])]
    }

    fn product(&self, a: usize, b: usize) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = self
            .rules
            .product(self.members[a], self.members[b])
            .into_iter()
            .map(|(c, n)| (*self.position.get(&c).expect("subset is not closed"), n))
            .collect();
        out.sort();
        out
    }
}

/// A fusion ring given by an explicit multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitFusion {
    duals: Vec<usize>,
    products: Vec<Vec<(usize, u32)>>,
}

impl ExplicitFusion {
    /// Index 0 is the unit. `product(a, b)` may list an index more than once;
    /// repeated entries are summed.
    pub fn new(duals: Vec<usize>, product: impl Fn(usize, usize) -> Vec<(usize, u32)>) -> Self {
        let n = duals.len();
        let products = (0..n * n)
            .map(|ab| {
                let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
                for (c, v) in product(ab / n, ab % n) {
                    *acc.entry(c).or_insert(0) += v;
                }
                acc.into_iter().filter(|&(_, v)| v > 0).collect()
            })
            .collect();
        ExplicitFusion { duals, products }
    }

    pub fn from_rules<F: FusionRules + ?Sized>(rules: &F) -> Self {
        let duals = (0..rules.rank()).map(|a| rules.dual(a)).collect();
        ExplicitFusion::new(duals, |a, b| rules.product(a, b))
    }
}

impl FusionRules for ExplicitFusion {
    fn rank(&self) -> usize {
        self.duals.len()
    }

    fn dual(&self, a: usize) -> usize {
        self.duals[a]
    }

    fn product(&self, a: usize, b: usize) -> Vec<(usize, u32)> {
        self.products[a * self.duals.len() + b].clone()
    }
}

/// Largest violation of associativity, unit, commutativity and duality,
/// or `None` if the table is a valid commutative fusion ring.
pub fn ring_axiom_violation<F: FusionRules + ?Sized>(rules: &F) -> Option<String> {
    let n = rules.rank();
    let u = rules.unit();
    for a in 0..n {
        if rules.product(a, u) != vec![(a, 1)] || rules.product(u, a) != vec![(a, 1)] {
            return Some(format!("unit law fails at {a}"));
        }
        if rules.dual(rules.dual(a)) != a {
            return Some(format!("duality is not an involution at {a}"));
        }
        for b in 0..n {
            if rules.product(a, b) != rules.product(b, a) {
                return Some(format!("{a}⊗{b} is not commutative"));
            }
            let expected = u32::from(b == rules.dual(a));
            if rules.coeff(a, b, u) != expected {
                return Some(format!("unit multiplicity of {a}⊗{b} is not {expected}"));
            }
        }
    }
    (0..n * n * n).into_par_iter().find_map_any(|abc| {
        let (a, b, c) = (abc / (n * n), (abc / n) % n, abc % n);
        let mut left = vec![0u64; n];
        for (s, x) in rules.product(a, b) {
            for (r, y) in rules.product(s, c) {
                left[r] += x as u64 * y as u64;
            }
        }
        let mut right = vec![0u64; n];
        for (s, x) in rules.product(b, c) {
            for (r, y) in rules.product(a, s) {
                right[r] += x as u64 * y as u64;
            }
        }
        (left != right).then(|| format!("({a}⊗{b})⊗{c} ≠ {a}⊗({b}⊗{c})"))
    })
}

/// Smallest subset containing `seeds` and the unit that is closed under
/// duals and products.
///
/// This is the set of summands of all words in the seeds and their duals,
/// found by multiplying each new member by the generators only.
pub fn closure<F: FusionRules + ?Sized>(rules: &F, seeds: &[usize]) -> BTreeSet<usize> {
    let mut generators: Vec<usize> = seeds.iter().flat_map(|&s| [s, rules.dual(s)]).collect();
    generators.sort_unstable();
    generators.dedup();
    let mut in_set = vec![false; rules.rank()];
    let mut queue = VecDeque::from([rules.unit()]);
    in_set[rules.unit()] = true;
    let mut members = BTreeSet::new();
    while let Some(x) = queue.pop_front() {
        members.insert(x);
        let found: Vec<usize> = generators
            .par_iter()
            .flat_map_iter(|&g| rules.product(x, g).into_iter().map(|(z, _)| z))
            .collect();
        for z in found {
            if !in_set[z] {
                in_set[z] = true;
                queue.push_back(z);
            }
        }
    }
    members
}

/// Closure of a set of weights under the fusion rules of `table`.
pub fn subcategory_closure(seeds: &[Weight], table: &FusionTable) -> Result<BTreeSet<Weight>> {
    let idx = seeds.iter().map(|&w| table.idx(w)).collect::<Result<Vec<_>>>()?;
    Ok(closure(table, &idx).into_iter().map(|i| table.index.weights[i]).collect())
}

/// Every fusion subcategory, as joins of singly generated ones.
///
/// Sorted by size, then lexicographically.
pub fn enumerate_subcategories<F: FusionRules + ?Sized>(rules: &F) -> Vec<BTreeSet<usize>> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in 0..rules.rank() {
        found.insert(closure(rules, &[a]).into_iter().collect());
    }
    loop {
        let current: Vec<Vec<usize>> = found.iter().cloned().collect();
        let mut grew = false;
        for (i, x) in current.iter().enumerate() {
            for y in &current[i + 1..] {
                let seeds: Vec<usize> = x.iter().chain(y).copied().collect();
                let joined: Vec<usize> = closure(rules, &seeds).into_iter().collect();
                grew |= found.insert(joined);
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<BTreeSet<usize>> = found.into_iter().map(|v| v.into_iter().collect()).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

pub fn enumerate_fusion_subcategories(k: u32) -> Result<Vec<BTreeSet<Weight>>> {
    let table = FusionTable::build(k)?;
    Ok(enumerate_subcategories(&table)
        .into_iter()
        .map(|s| s.into_iter().map(|i| table.index.weights[i]).collect())
        .collect())
}

/// True iff the only fusion subcategories are the trivial one and the whole.
pub fn is_simple_category<F: FusionRules + ?Sized>(rules: &F) -> bool {
    let full = rules.rank();
    enumerate_subcategories(rules)
        .iter()
        .all(|s| s.len() == 1 || s.len() == full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::{root_lattice_weights, THETA};

    fn w(a: i32, b: i32) -> Weight {
        Weight::new(a, b)
    }

    #[test]
    fn level_one_is_z3() {
        let t = FusionTable::build(1).unwrap();
        assert_eq!(fusion_product(w(1, 0), w(1, 0), 1).unwrap(), vec![(w(0, 1), 1)]);
        assert_eq!(t.get(w(1, 0), w(0, 1), w(0, 0)).unwrap(), 1);
        assert_eq!(t.get(w(0, 1), w(0, 1), w(1, 0)).unwrap(), 1);
    }

    #[test]
    fn level_two_product() {
        assert_eq!(
            fusion_product(w(1, 0), w(0, 1), 2).unwrap(),
            vec![(w(0, 0), 1), (w(1, 1), 1)]
        );
    }

    #[test]
    fn central_weight_self_fusion() {
        assert_eq!(fusion_coeff(w(1, 1), w(1, 1), w(1, 1), 3).unwrap(), 2);
        assert_eq!(fusion_coeff(w(2, 2), w(2, 2), w(2, 2), 6).unwrap(), 3);
        let t = FusionTable::build(6).unwrap();
        assert_eq!(t.get(w(2, 2), w(2, 2), w(2, 2)).unwrap(), 3);
    }

    #[test]
    fn outside_alcove_is_an_error() {
        let err = fusion_coeff(w(2, 2), w(0, 0), w(0, 0), 3).unwrap_err();
        assert!(err.to_string().contains("weight outside alcove"));
        assert!(fusion_coeff(w(0, 0), w(0, 0), w(4, 0), 3).is_err());
    }

    #[test]
    fn duality_and_corners() {
        assert_eq!(dual(w(0, 0)), w(0, 0));
        assert_eq!(dual(w(2, 5)), w(5, 2));
        assert_eq!(corner_tensor(w(0, 6), w(2, 2), 6).unwrap(), w(2, 2));
        for k in 1..=7 {
            let kk = k as i32;
            assert_eq!(corner_tensor(w(kk, 0), w(0, 0), k).unwrap(), w(kk, 0));
            assert_eq!(corner_tensor(w(kk, 0), w(0, kk), k).unwrap(), w(0, 0));
            for &lam in alcove_weights(k).unwrap().iter() {
                assert_eq!(dual(dual(lam)), lam);
                for c in [w(kk, 0), w(0, kk)] {
                    let image = corner_tensor(c, lam, k).unwrap();
                    assert_eq!(fusion_product(c, lam, k).unwrap(), vec![(image, 1)]);
                }
            }
        }
        assert!(corner_tensor(w(1, 0), w(0, 0), 3).is_err());
    }

    #[test]
    fn closures() {
        let t = FusionTable::build(4).unwrap();
        let corners: BTreeSet<_> = [w(0, 0), w(4, 0), w(0, 4)].into_iter().collect();
        assert_eq!(subcategory_closure(&[w(0, 4)], &t).unwrap(), corners);
        let r0: BTreeSet<_> = root_lattice_weights(4).unwrap().into_iter().collect();
        assert_eq!(subcategory_closure(&[THETA], &t).unwrap(), r0);
        assert_eq!(subcategory_closure(&[], &t).unwrap(), [w(0, 0)].into_iter().collect());
    }

    #[test]
    fn subcategory_lattices() {
        assert_eq!(enumerate_fusion_subcategories(1).unwrap().len(), 2);
        let subs = enumerate_fusion_subcategories(3).unwrap();
        assert_eq!(subs.len(), 4);
        let r0: BTreeSet<_> = [w(0, 0), w(1, 1), w(3, 0), w(0, 3)].into_iter().collect();
        assert!(subs.contains(&r0));
        assert!(is_simple_category(&FusionTable::build(1).unwrap()));
        assert!(!is_simple_category(&FusionTable::build(3).unwrap()));
    }

    #[test]
    fn lazy_and_tabulated_rules_agree() {
        let t = FusionTable::build(5).unwrap();
        let lazy = LevelFusion::new(5).unwrap();
        for a in 0..t.rank() {
            for b in 0..t.rank() {
                assert_eq!(t.product(a, b), lazy.product(a, b));
            }
        }
        assert_eq!(closure(&t, &[4]), closure(&lazy, &[4]));
    }

    #[test]
    fn sparse_storage_above_dense_limit() {
        let t = FusionTable::build(13).unwrap();
        assert!(!t.is_dense());
        assert_eq!(t.get(w(1, 0), w(1, 0), w(0, 1)).unwrap(), 1);
        assert_eq!(t.get(w(1, 0), w(1, 0), w(2, 0)).unwrap(), 1);
        assert_eq!(t.get(w(1, 0), w(1, 0), w(1, 0)).unwrap(), 0);
    }

    #[test]
    fn json_shape() {
        let t = FusionTable::build(1).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["level"], 1);
        assert_eq!(v["coeffs"].as_array().unwrap().len(), 9);
        assert_eq!(v["coeffs"][0]["a"], serde_json::json!([0, 0]));
    }
}
