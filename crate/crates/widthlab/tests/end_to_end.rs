//! Cross-module integration: parse → build → classify → width pipelines on
//! the named groups, and the full certificate batteries at the two reference
//! parameter sets (p = 5, q = 2, m = 3) and (p = 5, q = 3, m = 2).

use widthlab::catalog::build_group;
use widthlab::constructions::{
    avm_identities_check, certify_gn_perfect_width2, certify_mn_perfect, gn_group,
    mg_diameter_check, Params,
};
use widthlab::duality::certify_duality;
use widthlab::group::{
    abelianization_invariants, commutator_width_analysis, is_perfect, is_quasisimple, is_simple,
    GroupSpec, DEFAULT_GROUP_CAP,
};
use widthlab::CheckStatus;

const CAP: u64 = DEFAULT_GROUP_CAP;

fn assert_all_pass(checks: &[widthlab::Check], label: &str) {
    for c in checks {
        assert_eq!(
            c.status,
            CheckStatus::Pass,
            "{label}: check {} did not pass: {}",
            c.name,
            c.details
        );
    }
}

#[test]
fn parse_build_classify_pipeline() {
    let a5 = build_group(&"a5".parse::<GroupSpec>().unwrap(), CAP).unwrap();
    assert!(is_perfect(&a5));
    assert!(is_simple(&a5));
    assert_eq!(commutator_width_analysis(&a5, CAP).unwrap().width, Some(1));

    let s5 = build_group(&"s5".parse::<GroupSpec>().unwrap(), CAP).unwrap();
    assert!(!is_perfect(&s5));
    assert_eq!(abelianization_invariants(&s5).unwrap(), vec![2]);

    let sl25 = build_group(&"sl2(5)".parse::<GroupSpec>().unwrap(), CAP).unwrap();
    assert!(is_quasisimple(&sl25).unwrap());

    let sub = build_group(&"subdirect-sl25".parse::<GroupSpec>().unwrap(), CAP).unwrap();
    assert!(!is_perfect(&sub));
    assert_eq!(abelianization_invariants(&sub).unwrap(), vec![2]);
}

#[test]
fn semidirect_product_certificate_battery() {
    let checks = certify_gn_perfect_width2(5, 2, 1, CAP, CAP).unwrap();
    assert_all_pass(&checks, "gn(5,2,1)");
    assert!(checks.iter().any(|c| c.name == "exact-width"));
    assert!(checks.iter().any(|c| c.name == "tightness-witness-length-2"));
}

#[test]
fn normal_part_diameter_is_controlled_by_width() {
    let gn = gn_group(5, 2, 1, CAP).unwrap();
    let mask = gn.vector_part_mask();
    let checks = mg_diameter_check(&gn.group, &mask, CAP);
    assert_all_pass(&checks, "mg-diameter gn(5,2,1)");
}

#[test]
fn function_module_certificates_at_both_reference_parameter_sets() {
    for (p, q, m, n) in [(5u64, 2u64, 3u64, 1u32), (5, 3, 2, 1)] {
        let params = Params::new(p, q, m, n).unwrap();
        let label = format!("({p},{q},{m},{n})");
        assert_all_pass(&certify_mn_perfect(params, CAP, 7, 200).unwrap(), &label);
        assert_all_pass(&avm_identities_check(params, CAP, 200, 7).unwrap(), &label);
        let duality = certify_duality(params, &[], CAP, CAP, 200, 7).unwrap();
        assert!(duality.len() >= 10, "{label}: expected a full battery");
        for c in &duality {
            assert_ne!(
                c.status,
                CheckStatus::Fail,
                "{label}: duality check {} failed: {}",
                c.name,
                c.details
            );
        }
        // The headline checks actually ran rather than being skipped.
        for name in ["ap-invariance-exact", "not-gn-invariant", "nullspace-kills-z"] {
            let check = duality.iter().find(|c| c.name == name).unwrap();
            assert_eq!(check.status, CheckStatus::Pass, "{label}: {name}");
        }
    }
}

#[test]
fn fixed_point_analysis_on_the_base_group() {
    let report = widthlab::perm::verify_a5_fixed_point_lemma();
    assert_eq!(report.pairs_checked, 60 * 60);
    assert!(report.solution_count > 0);
    assert_all_pass(&report.checks, "a5 fixed points");
}
