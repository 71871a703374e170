//! Acceptance checks and the report document.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::alcove::{root_lattice_weights, Weight};
use crate::condense::{
    compare_twists, condensed_modular, epsilon_constant, modular_invariant, reference_s_k6, reference_t_k6,
    resolved_fusion_table, simplicity_certificate, zeta_constant,
};
use crate::cyclo::{reduce_mod_two, CycloNumber};
use crate::error::Result;
use crate::fusion::{
    corners, enumerate_fusion_subcategories, fusion_coeff, ring_axiom_violation, ExplicitFusion, FusionRules,
    FusionTable,
};
use crate::modular::{
    central_charge_closed_form, level_modular_data, muger_decompose, twist, MODULAR_RELATION,
};
use crate::witt::{check_inequality_chain, lambda_invariant, run_full_ledger, Verdict};

/// Upper ends of the swept ranges; each criterion clamps them to its own
/// acceptance range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyParams {
    pub max_level: u32,
    pub max_m: u32,
}

impl VerifyParams {
    pub const DEFAULT: Self = Self { max_level: 8, max_m: 10 };
    pub const FULL: Self = Self { max_level: 24, max_m: 20 };
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// An item reported with its exact residue or numerical deviation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flag {
    pub item: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub details: Vec<String>,
    pub flagged: Vec<Flag>,
    #[serde(skip)]
    pub elapsed: Duration,
}

struct Recorder {
    passed: bool,
    details: Vec<String>,
    flagged: Vec<Flag>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { passed: true, details: Vec::new(), flagged: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        self.passed &= ok;
        self.details.push(if ok { detail } else { format!("FAIL: {detail}") });
    }

    fn flag(&mut self, item: impl Into<String>, value: impl Into<String>) {
        self.flagged.push(Flag { item: item.into(), value: value.into() });
    }
}

fn timed(id: u8, title: &str, body: impl FnOnce(&mut Recorder) -> Result<()>) -> CriterionResult {
    let start = Instant::now();
    let mut rec = Recorder::new();
    if let Err(e) = body(&mut rec) {
        rec.check(false, format!("error: {e}"));
    }
    CriterionResult {
        id,
        title: title.to_string(),
        passed: rec.passed,
        details: rec.details,
        flagged: rec.flagged,
        elapsed: start.elapsed(),
    }
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn sci(x: f64) -> String {
    format!("{x:.2e}")
}

pub fn criterion_1() -> CriterionResult {
    timed(1, "fusion at levels 1 and 2", |rec| {
        let t1 = FusionTable::build(1)?;
        let z3 = |w: Weight| -> usize { ((w.m1 + 2 * w.m2) % 3) as usize };
        let weights = t1.weights().to_vec();
        let mut group_law = weights.len() == 3;
        for &a in &weights {
            for &b in &weights {
                let prod = t1.product(t1.idx(a)?, t1.idx(b)?);
                let expected = weights.iter().position(|&c| z3(c) == (z3(a) + z3(b)) % 3).expect("three residues");
                group_law &= prod == vec![(expected, 1)];
            }
        }
        rec.check(group_law, "level 1 is the Z/3 group law");
        let t2 = FusionTable::build(2)?;
        let violation = ring_axiom_violation(&t2);
        rec.check(violation.is_none(), format!("level 2 ring axioms: {}", violation.as_deref().unwrap_or("ok")));
        let w = Weight::new;
        let expect = [
            (w(1, 0), w(1, 0), vec![w(0, 1), w(2, 0)]),
            (w(1, 0), w(0, 1), vec![w(0, 0), w(1, 1)]),
            (w(1, 1), w(1, 1), vec![w(0, 0), w(1, 1)]),
        ];
        for (a, b, summands) in expect {
            let mut got: Vec<Weight> = t2
                .product(t2.idx(a)?, t2.idx(b)?)
                .into_iter()
                .filter(|&(_, n)| n == 1)
                .map(|(c, _)| t2.weights()[c])
                .collect();
            got.sort();
            let total: u32 = t2.product(t2.idx(a)?, t2.idx(b)?).iter().map(|&(_, n)| n).sum();
            rec.check(got == summands && total as usize == summands.len(), format!("level 2: {a} ⊗ {b}"));
        }
        Ok(())
    })
}

pub fn criterion_2(params: VerifyParams) -> CriterionResult {
    timed(2, "central self-fusion N = m+1", |rec| {
        for m in 1..=params.max_m.min(8) {
            let nu = Weight::new(m as i32, m as i32);
            let n = fusion_coeff(nu, nu, nu, 3 * m)?;
            rec.check(n == m + 1, format!("m = {m}: N = {n}"));
        }
        Ok(())
    })
}

pub fn criterion_3() -> CriterionResult {
    timed(3, "corner twists", |rec| {
        for k in 1..=24u32 {
            let corner = Weight::new(0, k as i32);
            let expected = CycloNumber::exp_pi_i(&ratio(2 * k as i64, 3));
            rec.check(twist(corner, k)? == expected, format!("k = {k}"));
        }
        Ok(())
    })
}

pub fn criterion_4(params: VerifyParams) -> CriterionResult {
    timed(4, "centralizer of the corners is R0", |rec| {
        for k in 2..=params.max_level.min(8) {
            let (table, data) = level_modular_data(k)?;
            let corner_idx = corners(k).iter().map(|&c| table.idx(c)).collect::<Result<Vec<_>>>()?;
            let found: BTreeSet<Weight> = data.centralizer(&corner_idx).into_iter().map(|i| table.weights()[i]).collect();
            let r0: BTreeSet<Weight> = root_lattice_weights(k)?.into_iter().collect();
            rec.check(found == r0, format!("k = {k}: {} weights", found.len()));
        }
        Ok(())
    })
}

pub fn criterion_5(params: VerifyParams) -> CriterionResult {
    timed(5, "fusion subcategory counts", |rec| {
        for k in 1..=params.max_level.min(6) {
            let count = enumerate_fusion_subcategories(k)?.len();
            let expected = if k == 1 { 2 } else { 4 };
            rec.check(count == expected, format!("k = {k}: {count} subcategories"));
        }
        Ok(())
    })
}

pub fn criterion_6(params: VerifyParams) -> CriterionResult {
    timed(6, "central charges", |rec| {
        for k in 1..=12u32 {
            let (_, data) = level_modular_data(k)?;
            rec.check(data.charge == central_charge_closed_form(8, 3, k), format!("k = {k}: Gauss sum matches"));
        }
        let (_, two) = level_modular_data(2)?;
        rec.check(two.charge == CycloNumber::exp_pi_i(&ratio(4, 5)), "ξ at level 2 is exp(4πi/5)");
        for m in 1..=params.max_m.min(8) {
            let mi = m as i64;
            for (family, k, formula) in
                [(1u8, 3 * m + 1, ratio(9 * mi, 6 * mi + 8)), (2, 3 * m + 2, ratio(3 * mi - 7, 6 * mi + 10))]
            {
                let got = muger_decompose(k)?.centralizer_charge_exponent;
                rec.check(
                    got.as_ref() == Some(&reduce_mod_two(&formula)),
                    format!("family {family}, m = {m} (k = {k}): quotient exponent {}", formula),
                );
            }
        }
        let table = [(1u8, 1, ratio(9, 14)), (1, 2, ratio(9, 10)), (2, 0, ratio(-7, 10)), (2, 2, ratio(-1, 22)), (3, 2, ratio(4, 3))];
        for (family, m, expected) in table {
            let got = lambda_invariant(family, m)?;
            rec.check(got == expected, format!("λ{family}({m}) = {got}"));
        }
        Ok(())
    })
}

pub fn criterion_7() -> CriterionResult {
    timed(7, "condensation at level 3", |rec| {
        let data = condensed_modular(3)?;
        rec.check(data.rank() == 4, format!("{} simples", data.rank()));
        rec.check(data.dims.iter().all(|d| *d == CycloNumber::one(1)), "all dimensions 1");
        let table = resolved_fusion_table(3)?;
        let klein = (0..4).all(|a| (0..4).all(|b| table.product(a, b) == vec![(a ^ b, 1)]));
        rec.check(klein, "fusion is Z/2 × Z/2");
        let minus = CycloNumber::from_integer(1, -1);
        let twists_ok = data.twists[0] == CycloNumber::one(1) && data.twists[1..].iter().all(|t| *t == minus);
        rec.check(twists_ok, "twists (1, −1, −1, −1)");
        let (_, level) = level_modular_data(3)?;
        rec.check(
            level.global_dim == CycloNumber::from_integer(1, 36) && data.global_dim == CycloNumber::from_integer(1, 4),
            "global dimension 36/9 = 4",
        );
        Ok(())
    })
}

/// The level-6 condensed table as stated: `Y1 = F(0,0)`, `Y2 = F(1,1)`,
/// `Y3 = F(3,3)`, then `X1, X2, X3`.
pub fn reference_table_k6() -> ExplicitFusion {
    let (y1, y2, y3) = (0usize, 1usize, 2usize);
    let xs = [3usize, 4, 5];
    ExplicitFusion::new((0..6).collect(), move |a, b| {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let mut out: Vec<usize> = match (a, b) {
            (0, b) => vec![b],
            (1, 1) => vec![y1, y2, y2, y3, y3, xs[0], xs[1], xs[2]],
            (1, 2) => vec![y2, y2, y3, xs[0], xs[1], xs[2]],
            (2, 2) => vec![y1, y2, y3, xs[0], xs[1], xs[2]],
            (1, x) => {
                let mut v = vec![y2, y3];
                v.extend(xs.iter().copied().filter(|&o| o != x));
                v
            }
            (2, x) => vec![y2, y3, x],
            (x, z) if x == z => vec![y1, y3, x],
            (x, z) => vec![y2, xs.iter().copied().find(|&o| o != x && o != z).expect("three stationary objects")],
        };
        out.sort();
        let mut grouped: Vec<(usize, u32)> = Vec::new();
        for c in out {
            match grouped.last_mut() {
                Some((last, n)) if *last == c => *n += 1,
                _ => grouped.push((c, 1)),
            }
        }
        grouped
    })
}

pub fn criterion_8() -> CriterionResult {
    timed(8, "condensation at level 6", |rec| {
        let table = resolved_fusion_table(6)?;
        let reference = reference_table_k6();
        let same = (0..6).all(|a| (0..6).all(|b| table.product(a, b) == reference.product(a, b)));
        rec.check(same, "resolved table matches the stated products");

        let data = condensed_modular(6)?;
        let ref_s = reference_s_k6();
        let mut worst = 0f64;
        for a in 0..6 {
            for b in 0..6 {
                worst = worst.max((data.smatrix[a][b].to_c64() - Complex64::new(ref_s[(a, b)], 0.0)).norm());
            }
        }
        rec.check(worst < 1e-9, format!("S deviation from the 6×6 reference {}", sci(worst)));
        let (z, e) = (zeta_constant(), epsilon_constant());
        let row = [1.0, z + 1.0, z, e, e, e];
        let row_dev = data.smatrix[0].iter().zip(row).map(|(s, r)| (s.to_c64() - r).norm()).fold(0f64, f64::max);
        let zeta_ok = (z.powi(3) - 3.0 * z * z - 6.0 * z - 1.0).abs() < 1e-9 && z > 0.0;
        let eps_ok = (e.powi(3) - 3.0 * e * e + 1.0).abs() < 1e-9;
        rec.check(row_dev < 1e-9 && zeta_ok && eps_ok, format!("first row (1, ζ+1, ζ, ε, ε, ε), deviation {}", sci(row_dev)));

        let cmp = compare_twists(&data.twists, &reference_t_k6(), 1e-9);
        rec.check(
            cmp.matches_up_to_conjugation,
            format!(
                "T up to global conjugation: direct deviation {}, conjugate deviation {}",
                sci(cmp.direct_deviation),
                sci(cmp.conjugate_deviation)
            ),
        );
        if !cmp.matches_up_to_conjugation {
            rec.flag("T direct mismatches at indices", format!("{:?}", cmp.mismatched_direct));
            rec.flag("T conjugate mismatches at indices", format!("{:?}", cmp.mismatched_conjugate));
        }

        let verlinde = data.verlinde_check(&table)?;
        rec.check(
            verlinde.passed && verlinde.mismatches == 0,
            format!("Verlinde reproduces the table, deviation {}", sci(verlinde.max_deviation)),
        );
        Ok(())
    })
}

pub fn criterion_9(params: VerifyParams) -> CriterionResult {
    timed(9, "simplicity certificates", |rec| {
        for m in 1..=params.max_m.min(20) {
            let cert = simplicity_certificate(m)?;
            rec.check(cert.as_expected(), format!("m = {m}: {}", cert.verdict));
        }
        Ok(())
    })
}

pub fn criterion_10() -> CriterionResult {
    timed(10, "modular invariants", |rec| {
        for k in [3u32, 6, 9, 12] {
            let r = modular_invariant(k)?;
            rec.check(
                r.commutes_with_s && r.commutes_with_t && r.unit_entry_is_one,
                format!("k = {k}: S {}, T {}, Z00 = {}", r.commutes_with_s, r.commutes_with_t, r.z[0][0]),
            );
        }
        Ok(())
    })
}

pub fn criterion_11(params: VerifyParams) -> CriterionResult {
    timed(11, "Verlinde against Racah", |rec| {
        for k in 1..=params.max_level.min(6) {
            let (table, data) = level_modular_data(k)?;
            let v = data.verlinde_check(&table)?;
            rec.check(
                v.passed && v.mismatches == 0 && v.max_deviation < 1e-6,
                format!("k = {k}: deviation {}", sci(v.max_deviation)),
            );
        }
        Ok(())
    })
}

pub fn criterion_12() -> CriterionResult {
    timed(12, "Witt ledger verdict pattern", |rec| {
        let report = run_full_ledger()?;
        for v in &report.verdicts {
            if v.verdict == Verdict::Flagged {
                rec.flag(format!("{} ({})", v.relation, v.source), v.residue.to_string());
            }
        }
        rec.check(report.pattern_matches, "verdicts match the shipped pattern");
        Ok(())
    })
}

pub fn criterion_13() -> CriterionResult {
    timed(13, "inequality chain", |rec| {
        let chain = check_inequality_chain(3, 50)?;
        rec.check(
            chain.holds,
            format!("{} admissible triples, {} failures", chain.triples_checked, chain.failures.len()),
        );
        Ok(())
    })
}

pub fn run_all(params: VerifyParams) -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(params),
        criterion_3(),
        criterion_4(params),
        criterion_5(params),
        criterion_6(params),
        criterion_7(),
        criterion_8(),
        criterion_9(params),
        criterion_10(),
        criterion_11(params),
        criterion_12(),
        criterion_13(),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct Conventions {
    pub modular_relation: &'static str,
    pub t_conjugation: &'static str,
}

pub const CONVENTIONS: Conventions = Conventions {
    modular_relation: MODULAR_RELATION,
    t_conjugation: "condensed twists at level 6 are compared with the reference list directly and after one global complex conjugation; a mismatch under both is reported",
};

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub parameters: VerifyParams,
    pub conventions: Conventions,
    pub criteria: Vec<CriterionResult>,
    pub passed: usize,
    pub failed: usize,
}

impl ReportDocument {
    pub fn run(params: VerifyParams) -> Self {
        Self::from_results(params, run_all(params))
    }

    pub fn from_results(params: VerifyParams, criteria: Vec<CriterionResult>) -> Self {
        let passed = criteria.iter().filter(|c| c.passed).count();
        ReportDocument {
            tool: "sl3mtc",
            version: env!("CARGO_PKG_VERSION"),
            parameters: params,
            conventions: CONVENTIONS,
            failed: criteria.len() - passed,
            passed,
            criteria,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// One `PASS`/`FAIL` line per criterion.
    pub fn summary_lines(&self) -> Vec<String> {
        self.criteria
            .iter()
            .map(|c| {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let flags = if c.flagged.is_empty() { String::new() } else { format!(" [{} flagged]", c.flagged.len()) };
                format!("{status} criterion {:>2}: {}{flags}", c.id, c.title)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_table_is_a_ring() {
        assert!(ring_axiom_violation(&reference_table_k6()).is_none());
    }

    #[test]
    fn cheap_criteria() {
        for c in [criterion_1(), criterion_3(), criterion_7(), criterion_12(), criterion_13()] {
            assert!(c.passed, "{c:?}");
        }
        let c12 = criterion_12();
        let residues: Vec<&str> = c12.flagged.iter().map(|f| f.value.as_str()).collect();
        assert_eq!(residues, vec!["1/2", "1"]);
    }
}
