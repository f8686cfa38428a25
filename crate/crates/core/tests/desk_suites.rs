mod common;

use common::{criteria, fixtures};

fn pass(check: criteria::Check) {
    match check {
        Ok(summary) => eprintln!("{summary}"),
        Err(failure) => panic!("{failure}"),
    }
}

#[test]
fn georef_desk_cases_match_exactly() {
    pass(criteria::georef_desk(&fixtures()));
}

#[test]
fn filter_drops_planted_non_wire_clusters() {
    pass(criteria::filter_rules());
}

#[test]
fn canonical_selection_is_stable_and_matches_crafted_answers() {
    pass(criteria::canonical_selection(&fixtures(), 100));
}

#[test]
fn kb_pruning_matches_derived_survivors() {
    pass(criteria::kb_pruning(&fixtures()));
}
