use enriched::selftest::{run_all, SelftestConfig, CRITERIA};

#[test]
fn every_criterion_passes() {
    let results = run_all(&SelftestConfig::default());
    assert_eq!(results.len(), CRITERIA.len());
    for r in &results {
        assert!(r.verdict.passed(), "{} {}: {:?}", r.id, r.title, r.details);
    }
}

#[test]
fn reruns_are_identical() {
    let cfg = SelftestConfig::default();
    for id in [3, 6, 11] {
        assert_eq!(enriched::selftest::run_criterion(id, &cfg), enriched::selftest::run_criterion(id, &cfg));
    }
}
