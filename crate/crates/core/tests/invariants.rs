use num_bigint::BigInt;
use num_rational::BigRational;
use sl3mtc::alcove::alcove_weights;
use sl3mtc::condense::{condensed_modular, simplicity_certificate, CondensedData};
use sl3mtc::cyclo::CycloNumber;
use sl3mtc::fusion::{enumerate_fusion_subcategories, FusionRules, FusionTable};
use sl3mtc::modular::{
    central_charge_closed_form, gauss_sum_charge, level_modular_data, muger_decompose, qdims, twist,
};
use sl3mtc::witt::{lambda_invariant, resolve_label, run_full_ledger, RelationVerdict, WittEntry};

#[test]
fn gauss_sum_matches_closed_form_through_level_24() {
    for k in 1..=24 {
        let twists: Vec<CycloNumber> = alcove_weights(k).unwrap().iter().map(|&w| twist(w, k).unwrap()).collect();
        let charge = gauss_sum_charge(&qdims(k).unwrap(), &twists).unwrap();
        assert_eq!(charge, central_charge_closed_form(8, 3, k), "k = {k}");
        assert_eq!(resolve_label(&format!("C(sl3,{k})")).unwrap().charge_exponent, charge.root_of_unity_exponent().unwrap());
    }
}

#[test]
fn muger_quotients_follow_the_families() {
    for m in 1..=8i64 {
        let one = muger_decompose(3 * m as u32 + 1).unwrap();
        assert_eq!(one.centralizer_charge_exponent, Some(lambda_invariant(1, m).unwrap()));
        if m != 1 {
            let two = muger_decompose(3 * m as u32 + 2).unwrap();
            let expected = sl3mtc::cyclo::reduce_mod_two(&lambda_invariant(2, m).unwrap());
            assert_eq!(two.centralizer_charge_exponent, Some(expected));
        }
    }
}

#[test]
fn modular_data_through_level_six() {
    for k in 1..=6 {
        let (table, data) = level_modular_data(k).unwrap();
        assert!(data.checks().passed(1e-9), "k = {k}");
        assert!(data.fp_dimension_deviation(&table) < 1e-9);
        assert_eq!(table.rank(), ((k + 1) * (k + 2) / 2) as usize);
    }
}

#[test]
fn condensed_global_dimension_is_a_ninth() {
    for k in [3u32, 6, 9, 12] {
        let (_, level) = level_modular_data(k).unwrap();
        let data = CondensedData::build(k).unwrap();
        assert_eq!(data.global_dim().scale_int(9), level.global_dim, "k = {k}");
    }
    for k in [3u32, 6] {
        let d = condensed_modular(k).unwrap();
        let (_, level) = level_modular_data(k).unwrap();
        assert_eq!(d.charge, level.charge);
    }
}

#[test]
fn subcategory_lattice_small_levels() {
    assert_eq!(enumerate_fusion_subcategories(1).unwrap().len(), 2);
    for k in 2..=6 {
        assert_eq!(enumerate_fusion_subcategories(k).unwrap().len(), 4, "k = {k}");
    }
}

#[test]
fn certificate_dimension_margin_grows() {
    let mut previous = f64::MIN;
    for m in 3..=8 {
        let cert = simplicity_certificate(m).unwrap();
        assert_eq!(cert.verdict, "certified simple");
        let margin: f64 = cert.checks.dimension_bound.detail.split("margin ").nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
        assert!(margin > previous);
        previous = margin;
    }
}

#[test]
fn json_round_trips() {
    let x = CycloNumber::root_of_unity(36, 5).scale(&BigRational::new(BigInt::from(-7), BigInt::from(3)));
    let text = serde_json::to_string(&x).unwrap();
    assert_eq!(serde_json::from_str::<CycloNumber>(&text).unwrap(), x);

    let entry = resolve_label("C(sl3,4)'_pt").unwrap();
    let text = serde_json::to_string(&entry).unwrap();
    assert_eq!(serde_json::from_str::<WittEntry>(&text).unwrap(), entry);

    let report = run_full_ledger().unwrap();
    let text = serde_json::to_string(&report.verdicts).unwrap();
    assert_eq!(serde_json::from_str::<Vec<RelationVerdict>>(&text).unwrap(), report.verdicts);

    let table = FusionTable::build(2).unwrap();
    let value: serde_json::Value = serde_json::to_value(&table).unwrap();
    assert_eq!(value["level"], 2);
    let coeffs = value["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), table.nonzero().count());
}
