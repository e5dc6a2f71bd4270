use treecast::broadcast::is_maximal_bn;
use treecast::solver::DEFAULT_BUDGET;
use treecast_cli::fixtures::{self, evaluate};
use treecast_cli::HarnessError;

#[test]
fn every_fixture_claim_holds() {
    for name in fixtures::names() {
        let report = fixtures::verify_fixture(name, DEFAULT_BUDGET).unwrap();
        for c in &report.claims {
            assert!(
                c.pass,
                "{name} {}: got {}, want {} ({})",
                c.claim, c.actual, c.expected, c.note
            );
        }
        assert!(report.pass);
    }
}

#[test]
fn expectations_carry_notes_and_known_claims() {
    for fx in fixtures::all() {
        assert!(!fx.expected.is_empty());
        assert!(fx.labels.contains("id"), "{}", fx.name);
        for e in &fx.expected {
            assert!(!e.note.trim().is_empty(), "{} {}", fx.name, e.claim);
            evaluate(&fx, &e.claim, DEFAULT_BUDGET).unwrap();
        }
    }
}

#[test]
fn unknown_names_are_rejected() {
    assert!(matches!(
        fixtures::verify_fixture("no-such-tree", DEFAULT_BUDGET),
        Err(HarnessError::UnknownFixture(_))
    ));
    let fx = fixtures::load("ih-gap").unwrap();
    assert!(matches!(
        evaluate(&fx, "girth", DEFAULT_BUDGET),
        Err(HarnessError::UnknownClaim(_))
    ));
    assert!(matches!(
        evaluate(&fx, "cost.missing", DEFAULT_BUDGET),
        Err(HarnessError::UnknownClaim(_))
    ));
}

#[test]
fn split_pair_broadcasts_differ_in_shared_hearers() {
    let fx = fixtures::load("split-pair").unwrap();
    let left = &fx.broadcasts["left"];
    let right = &fx.broadcasts["right"];
    assert!(is_maximal_bn(&fx.tree, left) && is_maximal_bn(&fx.tree, right));
    assert_eq!(left.cost(), right.cost());
    assert_ne!(left.support_size(), right.support_size());
}

#[test]
fn hypothesis_fails_on_shipped_counterexamples() {
    for name in ["split-pair", "caterpillar-m2", "spider-pair-m1"] {
        let fx = fixtures::load(name).unwrap();
        assert!(!fixtures::unique_radial_hypothesis(&fx.tree), "{name}");
    }
}
