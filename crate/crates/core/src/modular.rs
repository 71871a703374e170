//! Twists, quantum dimensions, S-matrices and central charges.
//!
//! Everything exact lives in the cyclotomic field of conductor `6(k+3)`,
//! which contains `q = exp(πi/(k+3))`, every twist and `ω`. Square roots only
//! appear in the float layer: the normalised `S = s̃/√D` is rendered with the
//! positive root of the global dimension `D`.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::alcove::{alcove_weights, Weight, ZERO};
use crate::cyclo::{opt_ratio_string, ratio_string, reduce_mod_two, CycloNumber};
use crate::error::{Error, Result};
use crate::fusion::{fusion_product, is_simple_category, ExplicitFusion, FusionRules, FusionTable};

/// The modular relation checked for every normalised S and T.
pub const MODULAR_RELATION: &str =
    "(conj(S) T)^3 = xi conj(S)^2 with S = s/sqrt(D), D = sum of squared dims, xi = tau/|tau|";

/// Conductor holding all data of C(sl3,k).
pub fn level_conductor(k: u32) -> u32 {
    6 * (k + 3)
}

fn check_alcove(w: Weight, k: u32) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidLevel(k));
    }
    if !w.is_dominant_at(k) {
        return Err(Error::WeightOutsideAlcove { weight: w, level: k });
    }
    Ok(())
}

/// `m1² + 3m1 + m1m2 + 3m2 + m2²`.
pub fn twist_numerator(w: Weight) -> i64 {
    let (a, b) = (w.m1 as i64, w.m2 as i64);
    a * a + 3 * a + a * b + 3 * b + b * b
}

/// `θ_λ = exp(2πi E/(3(k+3)))`.
pub fn twist(w: Weight, k: u32) -> Result<CycloNumber> {
    check_alcove(w, k)?;
    Ok(CycloNumber::root_of_unity(level_conductor(k), 2 * twist_numerator(w)))
}

/// `[n] = (qⁿ − q⁻ⁿ)/(q − q⁻¹)` with `q = exp(πi/(k+3))`.
pub fn quantum_integer(n: i64, k: u32) -> CycloNumber {
    let conductor = level_conductor(k);
    if n < 0 {
        return -quantum_integer(-n, k);
    }
    (0..n).fold(CycloNumber::zero(conductor), |acc, j| {
        acc + CycloNumber::root_of_unity(conductor, 3 * (n - 1 - 2 * j))
    })
}

/// Quantum integers `[0..=k+2]` and `[2]⁻¹`, shared by all dimensions at
/// one level.
struct QuantumIntegers {
    ints: Vec<CycloNumber>,
    inv2: CycloNumber,
}

impl QuantumIntegers {
    fn new(k: u32) -> Self {
        let ints: Vec<CycloNumber> = (0..=(k as i64 + 2)).map(|n| quantum_integer(n, k)).collect();
        let inv2 = ints[2].inv().expect("[2] is nonzero");
        QuantumIntegers { ints, inv2 }
    }

    fn dim(&self, w: Weight) -> CycloNumber {
        let (a, b) = (w.m1 as usize, w.m2 as usize);
        &(&(&self.ints[a + 1] * &self.ints[b + 1]) * &self.ints[a + b + 2]) * &self.inv2
    }
}

/// `[m1+1][m2+1][m1+m2+2]/[2]`.
pub fn qdim(w: Weight, k: u32) -> Result<CycloNumber> {
    check_alcove(w, k)?;
    Ok(QuantumIntegers::new(k).dim(w))
}

/// Dimensions of every alcove weight, in alcove order.
pub fn qdims(k: u32) -> Result<Vec<CycloNumber>> {
    let alcove = alcove_weights(k)?;
    let q = QuantumIntegers::new(k);
    Ok(alcove.weights.par_iter().map(|&w| q.dim(w)).collect())
}

/// The sine product form of the quantum dimension.
pub fn qdim_sine(w: Weight, k: u32) -> f64 {
    let h = (k + 3) as f64;
    let s = |n: i32| (n as f64 * std::f64::consts::PI / h).sin();
    s(w.m1 + 1) * s(w.m2 + 1) * s(w.m1 + w.m2 + 2) / (s(1) * s(1) * s(2))
}

/// `k·dim g/(4(k+h∨))` reduced mod 2, so that `ξ = exp(λπi)`.
pub fn central_charge_exponent(dim_g: u32, h_dual: u32, k: u32) -> BigRational {
    let r = BigRational::new(BigInt::from(k * dim_g), BigInt::from(4 * (k + h_dual)));
    reduce_mod_two(&r)
}

/// `exp(2πi/8 · k·dim g/(k+h∨))`.
pub fn central_charge_closed_form(dim_g: u32, h_dual: u32, k: u32) -> CycloNumber {
    CycloNumber::exp_pi_i(&central_charge_exponent(dim_g, h_dual, k))
}

/// `τ⁺/|τ⁺|` with `τ⁺ = Σ d²θ`, as an exact root of unity.
///
/// The square `τ⁺²/D` lies in the field of the data; of its two square roots
/// the one with `τ⁺·ξ̄ > 0` is returned.
pub fn gauss_sum_charge(dims: &[CycloNumber], twists: &[CycloNumber]) -> Result<CycloNumber> {
    let conductor = dims.first().map_or(1, CycloNumber::conductor);
    let mut tau = CycloNumber::zero(conductor);
    let mut global = CycloNumber::zero(conductor);
    for (d, t) in dims.iter().zip(twists) {
        let d2 = d * d;
        tau = &tau + &(&d2 * t);
        global = &global + &d2;
    }
    if tau.is_zero() {
        return Err(Error::DegenerateGaussSum);
    }
    let square = (&tau * &tau).checked_div(&global)?;
    let r = square.root_of_unity_exponent().ok_or(Error::DegenerateGaussSum)?;
    let half = CycloNumber::exp_pi_i(&(r / BigInt::from(2)));
    let xi = if (&tau * &half.conj()).to_c64().re > 0.0 { half } else { -half };
    let aligned = &tau * &xi.conj();
    if !aligned.is_real() || aligned.to_c64().re <= 0.0 {
        return Err(Error::DegenerateGaussSum);
    }
    Ok(xi)
}

/// `s̃_{ab} = θ_a⁻¹ θ_b⁻¹ Σ_c N_{ab}^c θ_c d_c`.
pub fn balancing_smatrix<F: FusionRules + ?Sized>(
    rules: &F,
    twists: &[CycloNumber],
    dims: &[CycloNumber],
) -> Vec<Vec<CycloNumber>> {
    let n = rules.rank();
    let weighted: Vec<CycloNumber> = twists.iter().zip(dims).map(|(t, d)| t * d).collect();
    let inverse: Vec<CycloNumber> = twists.iter().map(CycloNumber::conj).collect();
    let conductor = dims.first().map_or(1, CycloNumber::conductor);
    (0..n)
        .into_par_iter()
        .map(|a| {
            (0..n)
                .map(|b| {
                    let sum = rules.product(a, b).into_iter().fold(
                        CycloNumber::zero(conductor),
                        |acc, (c, m)| acc + weighted[c].scale_int(m as i64),
                    );
                    &(&sum * &inverse[a]) * &inverse[b]
                })
                .collect()
        })
        .collect()
}

/// Float deviations of the normalised S and T from the modular axioms.
#[derive(Debug, Clone, Serialize)]
pub struct ModularChecks {
    pub s_symmetric: bool,
    pub unit_row_is_dims: bool,
    pub dims_real_positive: bool,
    pub twists_unit_modulus: bool,
    pub unitarity_deviation: f64,
    pub relation_deviation: f64,
    pub s_squared_deviation: f64,
}

impl ModularChecks {
    pub fn passed(&self, tolerance: f64) -> bool {
        self.s_symmetric
            && self.unit_row_is_dims
            && self.dims_real_positive
            && self.twists_unit_modulus
            && self.unitarity_deviation < tolerance
            && self.relation_deviation < tolerance
            && self.s_squared_deviation < tolerance
    }
}

/// Result of recomputing fusion coefficients from S.
#[derive(Debug, Clone, Serialize)]
pub struct VerlindeReport {
    pub passed: bool,
    pub max_deviation: f64,
    pub mismatches: usize,
}

/// Modular data of a category with labels of type `L`; index 0 is the unit.
#[derive(Debug, Clone, Serialize)]
pub struct ModularData<L> {
    pub level: u32,
    pub labels: Vec<L>,
    pub duals: Vec<usize>,
    pub twists: Vec<CycloNumber>,
    pub dims: Vec<CycloNumber>,
    /// Unnormalised `s̃`.
    pub smatrix: Vec<Vec<CycloNumber>>,
    pub global_dim: CycloNumber,
    pub charge: CycloNumber,
}

impl<L> ModularData<L> {
    pub fn from_fusion<F: FusionRules + ?Sized>(
        level: u32,
        labels: Vec<L>,
        rules: &F,
        twists: Vec<CycloNumber>,
        dims: Vec<CycloNumber>,
    ) -> Result<Self> {
        let n = rules.rank();
        if labels.len() != n || twists.len() != n || dims.len() != n {
            return Err(Error::InvalidParameter(format!(
                "rank {n} does not match {} labels, {} twists, {} dims",
                labels.len(),
                twists.len(),
                dims.len()
            )));
        }
        let smatrix = balancing_smatrix(rules, &twists, &dims);
        let conductor = dims[0].conductor();
        let global_dim = dims.iter().fold(CycloNumber::zero(conductor), |acc, d| acc + d * d);
        let charge = gauss_sum_charge(&dims, &twists)?;
        let duals = (0..n).map(|a| rules.dual(a)).collect();
        Ok(ModularData { level, labels, duals, twists, dims, smatrix, global_dim, charge })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// `λ` with `ξ = exp(λπi)`, `λ ∈ [0, 2)`.
    pub fn charge_exponent(&self) -> BigRational {
        self.charge.root_of_unity_exponent().expect("charge is a root of unity")
    }

    /// `s̃_{ab} = d_a d_b`.
    pub fn centralizes(&self, a: usize, b: usize) -> bool {
        self.smatrix[a][b] == &self.dims[a] * &self.dims[b]
    }

    pub fn centralizer(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.rank())
            .filter(|&b| subset.iter().all(|&a| self.centralizes(a, b)))
            .collect()
    }

    pub fn global_dim_float(&self) -> f64 {
        self.global_dim.to_c64().re
    }

    pub fn normalized_s(&self) -> DMatrix<Complex64> {
        let n = self.rank();
        let root = self.global_dim_float().sqrt();
        DMatrix::from_fn(n, n, |a, b| self.smatrix[a][b].to_c64() / root)
    }

    pub fn t_matrix(&self) -> DMatrix<Complex64> {
        let n = self.rank();
        DMatrix::from_fn(n, n, |a, b| if a == b { self.twists[a].to_c64() } else { Complex64::new(0.0, 0.0) })
    }

    pub fn checks(&self) -> ModularChecks {
        let n = self.rank();
        let s_symmetric = (0..n).all(|a| (a + 1..n).all(|b| self.smatrix[a][b] == self.smatrix[b][a]));
        let unit_row_is_dims = (0..n).all(|b| self.smatrix[0][b] == self.dims[b]);
        let dims_real_positive = self.dims.iter().all(|d| d.is_real() && d.to_c64().re >= 1.0 - 1e-12);
        let twists_unit_modulus = self.twists.iter().all(|t| (t * &t.conj()) == CycloNumber::one(1));
        let s = self.normalized_s();
        let t = self.t_matrix();
        let identity = DMatrix::<Complex64>::identity(n, n);
        let unitarity_deviation = max_abs(&(&s * s.adjoint() - &identity));
        let sb = s.map(|z| z.conj());
        let st = &sb * &t;
        let cube = &st * &st * &st;
        let xi = self.charge.to_c64();
        let relation_deviation = max_abs(&(cube - (&sb * &sb) * xi));
        let duality = DMatrix::from_fn(n, n, |a, b| {
            if self.duals[a] == b {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let s_squared_deviation = max_abs(&(&s * &s - duality));
        ModularChecks {
            s_symmetric,
            unit_row_is_dims,
            dims_real_positive,
            twists_unit_modulus,
            unitarity_deviation,
            relation_deviation,
            s_squared_deviation,
        }
    }

    /// `N_{ab}^c = Σ_σ S_{aσ} S_{bσ} conj(S_{cσ}) / S_{0σ}`, compared with `rules`.
    pub fn verlinde_check<F: FusionRules + ?Sized>(&self, rules: &F) -> Result<VerlindeReport> {
        let n = self.rank();
        let s = self.normalized_s();
        if (0..n).any(|c| s[(0, c)].norm() < 1e-12)
            || max_abs(&(&s * s.adjoint() - DMatrix::<Complex64>::identity(n, n))) > 1e-6
        {
            return Err(Error::DegenerateSMatrix);
        }
        let (max_deviation, mismatches) = (0..n * n)
            .into_par_iter()
            .map(|ab| {
                let (a, b) = (ab / n, ab % n);
                let mut worst = 0f64;
                let mut bad = 0usize;
                for c in 0..n {
                    let value: Complex64 = (0..n)
                        .map(|x| s[(a, x)] * s[(b, x)] * s[(c, x)].conj() / s[(0, x)])
                        .sum();
                    let expected = rules.coeff(a, b, c) as f64;
                    let rounded = value.re.round();
                    worst = worst.max((value - Complex64::new(expected, 0.0)).norm());
                    if rounded != expected || value.im.abs() > 0.5 {
                        bad += 1;
                    }
                }
                (worst, bad)
            })
            .reduce(|| (0.0, 0), |x, y| (x.0.max(y.0), x.1 + y.1));
        Ok(VerlindeReport { passed: mismatches == 0, max_deviation, mismatches })
    }

    /// Largest gap between the Frobenius–Perron eigenvalue of each fusion
    /// matrix and the float dimension.
    pub fn fp_dimension_deviation<F: FusionRules + ?Sized>(&self, rules: &F) -> f64 {
        let dims = &self.dims;
        (0..self.rank())
            .into_par_iter()
            .map(|a| {
                // Fusion matrices are normal, so the spectral radius is the
                // largest singular value.
                let m = rules.fusion_matrix(a);
                let fp = (&m * m.transpose())
                    .symmetric_eigenvalues()
                    .iter()
                    .fold(0.0f64, |x, &y| x.max(y))
                    .sqrt();
                (fp - dims[a].to_c64().re).abs()
            })
            .reduce(|| 0.0, f64::max)
    }
}

impl<L: Serialize> ModularData<L> {
    /// JSON rendering with exact values, floats, or both side by side.
    pub fn to_json(&self, exact: bool, float: bool, precision: u32) -> Value {
        let render = |c: &CycloNumber| render_value(c, exact, float, precision);
        json!({
            "level": self.level,
            "convention": MODULAR_RELATION,
            "labels": self.labels,
            "duals": self.duals,
            "twists": self.twists.iter().map(render).collect::<Vec<_>>(),
            "dims": self.dims.iter().map(render).collect::<Vec<_>>(),
            "smatrix": self.smatrix.iter().map(|row| row.iter().map(render).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "global_dim": render(&self.global_dim),
            "charge": render(&self.charge),
            "charge_exponent": self.charge_exponent().to_string(),
        })
    }
}

/// `{"exact": …, "float": [re, im]}` with either part optional.
pub fn render_value(c: &CycloNumber, exact: bool, float: bool, precision: u32) -> Value {
    let mut out = serde_json::Map::new();
    if exact {
        out.insert("exact".into(), serde_json::to_value(c).expect("cyclotomic values serialise"));
    }
    if float {
        let (re, im) = c.to_complex(precision);
        out.insert("float".into(), json!([re, im]));
    }
    Value::Object(out)
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Modular data of C(sl3,k) built on a fusion table.
pub fn modular_data(table: &FusionTable) -> Result<ModularData<Weight>> {
    let k = table.level;
    let labels = table.weights().to_vec();
    let twists = labels
        .iter()
        .map(|&w| twist(w, k))
        .collect::<Result<Vec<_>>>()?;
    let dims = qdims(k)?;
    ModularData::from_fusion(k, labels, table, twists, dims)
}

pub fn level_modular_data(k: u32) -> Result<(FusionTable, ModularData<Weight>)> {
    let table = FusionTable::build(k)?;
    let data = modular_data(&table)?;
    Ok((table, data))
}

/// The decomposition of C(sl3,k) along its pointed part.
#[derive(Debug, Clone, Serialize)]
pub struct MugerReport {
    pub level: u32,
    pub pointed: Vec<Weight>,
    pub corner_twists: Vec<CycloNumber>,
    pub pointed_is_prime: bool,
    pub centralizer: Vec<Weight>,
    pub centralizer_size: usize,
    /// Whether the pointed part meets its centralizer only in the unit.
    pub factorizable: bool,
    #[serde(with = "ratio_string")]
    pub charge_exponent: BigRational,
    #[serde(with = "opt_ratio_string")]
    pub pointed_charge_exponent: Option<BigRational>,
    /// `ξ(C)/ξ(pointed)`.
    #[serde(with = "opt_ratio_string")]
    pub centralizer_charge_exponent: Option<BigRational>,
    /// Gauss sum of the centralizer computed directly.
    #[serde(with = "opt_ratio_string")]
    pub centralizer_gauss_exponent: Option<BigRational>,
    /// `None` above [`MUGER_SIMPLICITY_LIMIT`].
    pub centralizer_is_prime: Option<bool>,
    pub note: String,
}

/// Largest level at which the centralizer's subcategory lattice is enumerated.
pub const MUGER_SIMPLICITY_LIMIT: u32 = 12;

pub fn muger_decompose(k: u32) -> Result<MugerReport> {
    let alcove = alcove_weights(k)?;
    let dims = qdims(k)?;
    let twists = alcove
        .iter()
        .map(|&w| twist(w, k))
        .collect::<Result<Vec<_>>>()?;
    let one = CycloNumber::one(1);
    let pointed_idx: Vec<usize> = (0..alcove.len()).filter(|&i| dims[i] == one).collect();
    let pointed: Vec<Weight> = pointed_idx.iter().map(|&i| alcove.weights[i]).collect();

    // Rows of s̃ for the pointed objects only.
    let pointed_rows: Vec<Vec<CycloNumber>> = pointed_idx
        .par_iter()
        .map(|&c| {
            alcove
                .weights
                .iter()
                .enumerate()
                .map(|(b, &mu)| -> Result<CycloNumber> {
                    let sum = fusion_product(alcove.weights[c], mu, k)?.into_iter().fold(
                        CycloNumber::zero(level_conductor(k)),
                        |acc, (nu, m)| {
                            let i = alcove.index_of(nu).expect("fold lands in alcove");
                            acc + (&twists[i] * &dims[i]).scale_int(m as i64)
                        },
                    );
                    Ok(&(&sum * &twists[c].conj()) * &twists[b].conj())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let centralizer_idx: Vec<usize> = (0..alcove.len())
        .filter(|&b| {
            pointed_idx
                .iter()
                .zip(&pointed_rows)
                .all(|(&c, row)| row[b] == &dims[c] * &dims[b])
        })
        .collect();
    let centralizer: Vec<Weight> = centralizer_idx.iter().map(|&i| alcove.weights[i]).collect();
    let overlap = pointed_idx.iter().filter(|i| centralizer_idx.contains(i)).count();
    let factorizable = overlap == 1;

    let pointed_fusion = ExplicitFusion::new(
        pointed.iter().map(|&w| pointed.iter().position(|&x| x == crate::fusion::dual(w)).expect("dual of a corner")).collect(),
        |a, b| {
            fusion_product(pointed[a], pointed[b], k)
                .expect("corners are alcove weights")
                .into_iter()
                .map(|(w, n)| (pointed.iter().position(|&x| x == w).expect("corners form a group"), n))
                .collect()
        },
    );
    let pointed_is_prime = is_simple_category(&pointed_fusion);

    let charge_exponent = central_charge_exponent(8, 3, k);
    let corner_twists: Vec<CycloNumber> = pointed_idx.iter().map(|&i| twists[i].clone()).collect();
    let (pointed_charge_exponent, centralizer_charge_exponent, centralizer_gauss_exponent, centralizer_is_prime, note);
    if factorizable {
        let pdims: Vec<CycloNumber> = pointed_idx.iter().map(|&i| dims[i].clone()).collect();
        let p = gauss_sum_charge(&pdims, &corner_twists)?
            .root_of_unity_exponent()
            .expect("charge is a root of unity");
        let cdims: Vec<CycloNumber> = centralizer_idx.iter().map(|&i| dims[i].clone()).collect();
        let ctwists: Vec<CycloNumber> = centralizer_idx.iter().map(|&i| twists[i].clone()).collect();
        centralizer_gauss_exponent = gauss_sum_charge(&cdims, &ctwists)
            .ok()
            .and_then(|c| c.root_of_unity_exponent());
        centralizer_charge_exponent = Some(reduce_mod_two(&(&charge_exponent - &p)));
        pointed_charge_exponent = Some(p);
        centralizer_is_prime = (k <= MUGER_SIMPLICITY_LIMIT).then(|| {
            let rules = crate::fusion::LevelFusion::new(k).expect("valid level");
            let members: BTreeSet<usize> = centralizer_idx.iter().copied().collect();
            is_simple_category(&crate::fusion::Restricted::new(&rules, &members))
        });
        note = format!(
            "C(sl3,{k}) = pointed({}) ⊠ centralizer({})",
            pointed.len(),
            centralizer.len()
        );
    } else {
        pointed_charge_exponent = None;
        centralizer_charge_exponent = None;
        centralizer_gauss_exponent = None;
        centralizer_is_prime = None;
        note = "corners are transparent, category is not factorizable this way".to_string();
    }
    debug_assert_eq!(pointed.first(), Some(&ZERO));
    Ok(MugerReport {
        level: k,
        centralizer_size: centralizer.len(),
        pointed,
        corner_twists,
        pointed_is_prime,
        centralizer,
        factorizable,
        charge_exponent,
        pointed_charge_exponent,
        centralizer_charge_exponent,
        centralizer_gauss_exponent,
        centralizer_is_prime,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::root_lattice_weights;

    fn w(a: i32, b: i32) -> Weight {
        Weight::new(a, b)
    }

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn twist_examples() {
        assert_eq!(twist(w(0, 0), 4).unwrap(), CycloNumber::one(1));
        assert_eq!(twist(w(1, 1), 3).unwrap(), CycloNumber::from_integer(1, -1));
        for k in 1..=24 {
            let expected = CycloNumber::root_of_unity(3, k as i64);
            assert_eq!(twist(w(0, k as i32), k).unwrap(), expected);
            assert_eq!(twist(w(k as i32, 0), k).unwrap(), expected);
        }
        assert!(twist(w(2, 2), 3).is_err());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(qdim(w(0, 0), 5).unwrap(), CycloNumber::one(1));
        for k in 1..=9 {
            let kk = k as i32;
            assert_eq!(qdim(w(kk, 0), k).unwrap(), CycloNumber::one(1));
            assert_eq!(qdim(w(0, kk), k).unwrap(), CycloNumber::one(1));
        }
        assert_eq!(qdim(w(1, 1), 3).unwrap(), CycloNumber::from_integer(1, 3));
        let (re, im) = qdim(w(1, 1), 3).unwrap().to_complex(12);
        assert!((re - 3.0).abs() < 1e-12 && im.abs() < 1e-12);
        for k in 1..=8 {
            for (wt, d) in alcove_weights(k).unwrap().iter().zip(qdims(k).unwrap()) {
                assert!(d.is_real());
                assert!((d.to_c64().re - qdim_sine(*wt, k)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn closed_form_charges() {
        assert_eq!(central_charge_closed_form(8, 3, 2), CycloNumber::root_of_unity(5, 2));
        assert_eq!(central_charge_closed_form(78, 12, 1), CycloNumber::root_of_unity(4, 3));
        let (re, im) = central_charge_closed_form(3, 2, 1).to_complex(12);
        let h = 0.5f64.sqrt();
        assert!((re - h).abs() < 1e-12 && (im - h).abs() < 1e-12);
    }

    #[test]
    fn gauss_sum_examples() {
        for (k, expected) in [(1, CycloNumber::root_of_unity(4, 1)), (2, CycloNumber::root_of_unity(5, 2)), (3, CycloNumber::from_integer(1, -1))] {
            let alcove = alcove_weights(k).unwrap();
            let twists: Vec<_> = alcove.iter().map(|&x| twist(x, k).unwrap()).collect();
            assert_eq!(gauss_sum_charge(&qdims(k).unwrap(), &twists).unwrap(), expected);
        }
        let degenerate = [CycloNumber::one(4), CycloNumber::one(4)];
        let twists = [CycloNumber::one(4), CycloNumber::from_integer(4, -1)];
        assert_eq!(gauss_sum_charge(&degenerate, &twists), Err(Error::DegenerateGaussSum));
    }

    #[test]
    fn smatrix_properties() {
        for k in 1..=4 {
            let (table, data) = level_modular_data(k).unwrap();
            let checks = data.checks();
            assert!(checks.passed(1e-9), "k={k}: {checks:?}");
            let n = data.rank();
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(data.smatrix[a][b], data.smatrix[a][data.duals[b]].conj());
                }
            }
            let corner = table.idx(w(0, k as i32)).unwrap();
            for (b, &mu) in table.weights().iter().enumerate() {
                assert_eq!(data.smatrix[corner][b] == data.dims[b], mu.in_root_lattice());
            }
            let v = data.verlinde_check(&table).unwrap();
            assert!(v.passed && v.max_deviation < 1e-9);
            assert!(data.fp_dimension_deviation(&table) < 1e-9);
        }
    }

    #[test]
    fn global_dimension_at_level_three() {
        let (_, data) = level_modular_data(3).unwrap();
        assert_eq!(data.global_dim, CycloNumber::from_integer(1, 36));
        assert_eq!(data.charge, CycloNumber::from_integer(1, -1));
    }

    #[test]
    fn centralizers() {
        for k in 2..=5 {
            let (table, data) = level_modular_data(k).unwrap();
            let all: Vec<usize> = (0..data.rank()).collect();
            assert_eq!(data.centralizer(&all), vec![0]);
            assert_eq!(data.centralizer(&[0]), all);
            let corners: Vec<usize> = crate::fusion::corners(k).iter().map(|&c| table.idx(c).unwrap()).collect();
            let r0: Vec<usize> = root_lattice_weights(k).unwrap().iter().map(|&x| table.idx(x).unwrap()).collect();
            let mut got = data.centralizer(&corners);
            got.sort();
            let mut want = r0.clone();
            want.sort();
            assert_eq!(got, want);
            if k % 3 == 0 {
                assert!(corners.iter().all(|&a| corners.iter().all(|&b| data.centralizes(a, b))));
            }
        }
    }

    #[test]
    fn muger_examples() {
        let r = muger_decompose(2).unwrap();
        assert_eq!(r.pointed.len(), 3);
        assert!(r.pointed_is_prime);
        assert_eq!(r.corner_twists[1], CycloNumber::root_of_unity(3, 2));
        assert_eq!(r.centralizer_size, 2);
        assert_eq!(r.centralizer_charge_exponent, Some(ratio(13, 10)));
        assert_eq!(r.centralizer_gauss_exponent, Some(ratio(13, 10)));
        assert_eq!(r.centralizer_is_prime, Some(true));
        let r = muger_decompose(4).unwrap();
        assert_eq!(r.centralizer_charge_exponent, Some(ratio(9, 14)));
        let r = muger_decompose(6).unwrap();
        assert!(!r.factorizable);
        assert!(r.note.contains("transparent"));
    }
}
