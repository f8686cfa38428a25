mod common;

use common::criteria;

fn pass(check: criteria::Check) {
    match check {
        Ok(summary) => eprintln!("{summary}"),
        Err(failure) => panic!("{failure}"),
    }
}

#[test]
fn single_linkage_matches_transitive_closure() {
    pass(criteria::single_linkage_oracle(200));
}

#[test]
fn average_linkage_matches_stepwise_reference() {
    pass(criteria::hac_oracle(200, 0.15));
}

#[test]
fn average_linkage_matches_reference_at_other_thresholds() {
    for t in [0.0, 0.05, 0.3, 0.6] {
        pass(criteria::hac_oracle(50, t));
    }
}

#[test]
fn ari_and_pairwise_scores_match_pair_enumeration() {
    pass(criteria::ari_prf_oracle(500, 1e-12));
}

#[test]
fn flat_index_matches_full_scan() {
    pass(criteria::retrieval_oracle(10_000, 100, 10));
}

#[test]
fn flat_index_handles_k_beyond_size() {
    pass(criteria::retrieval_oracle(7, 5, 20));
}

#[test]
fn link_band_monotonicity_and_tuning() {
    pass(criteria::link_properties(1000));
}
