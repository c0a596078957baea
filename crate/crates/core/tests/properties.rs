mod common;

use common::props;

#[test]
fn interval_membership() {
    props::interval_membership().unwrap();
}

#[test]
fn interval_laws() {
    props::interval_laws().unwrap();
}

#[test]
fn orientation_symmetries() {
    props::orientation_symmetries().unwrap();
}

#[test]
fn orientation_detects_collinear() {
    props::orientation_detects_collinear().unwrap();
}

#[test]
fn canonicalization_involution() {
    props::canonicalization_involution().unwrap();
}

#[test]
fn oracle_never_exceeds_exact() {
    props::oracle_never_exceeds_exact().unwrap();
}

#[test]
fn accepted_inputs_follow_pocket_pattern() {
    props::accepted_inputs_follow_pocket_pattern().unwrap();
}

#[test]
fn pocket_pattern_on_two_convex_fixtures() {
    props::pocket_pattern_on_two_convex_fixtures().unwrap();
}
