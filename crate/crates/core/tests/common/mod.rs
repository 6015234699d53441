#![allow(dead_code)]

use proptest::prelude::*;
use votecx::{ApprovalVector, CandidateId, Election, LinearOrder, Voter};

pub fn names(m: usize) -> Vec<String> {
    (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

pub fn order(m: usize) -> impl Strategy<Value = LinearOrder> {
    Just((0..m).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(move |p| LinearOrder::from_indices(&p, m).unwrap())
}

pub fn ranked_voter(m: usize, max_w: u64, max_p: u64) -> impl Strategy<Value = Voter> {
    (order(m), 1..=max_w, 0..=max_p).prop_map(|(o, w, p)| Voter::ranked(o).with_weight(w).with_price(p))
}

pub fn approval_voter(m: usize, max_w: u64, max_p: u64) -> impl Strategy<Value = Voter> {
    (prop::collection::vec(any::<bool>(), m), 1..=max_w, 0..=max_p)
        .prop_map(|(a, w, p)| Voter::approval(ApprovalVector::new(a)).with_weight(w).with_price(p))
}

/// Ranked elections with `1..=max_m` candidates and `0..=max_n` voters.
pub fn ranked(max_m: usize, max_n: usize, max_w: u64) -> impl Strategy<Value = Election> {
    (1..=max_m, 0..=max_n).prop_flat_map(move |(m, n)| {
        prop::collection::vec(ranked_voter(m, max_w, 1), n)
            .prop_map(move |vs| Election::new(names(m), vs).unwrap())
    })
}

/// Unit-weight ranked elections.
pub fn unit(max_m: usize, max_n: usize) -> impl Strategy<Value = Election> {
    ranked(max_m, max_n, 1)
}

pub fn approval(max_m: usize, max_n: usize, max_w: u64) -> impl Strategy<Value = Election> {
    (1..=max_m, 0..=max_n).prop_flat_map(move |(m, n)| {
        prop::collection::vec(approval_voter(m, max_w, 1), n)
            .prop_map(move |vs| Election::new(names(m), vs).unwrap())
    })
}

/// Mixed ballot kinds, weights and prices, for file round-trips.
pub fn any_election() -> impl Strategy<Value = Election> {
    (0..=5usize, 0..=6usize).prop_flat_map(|(m, n)| {
        let voter = prop_oneof![ranked_voter(m, 9, 9), approval_voter(m, 9, 9)];
        prop::collection::vec(voter, n).prop_map(move |vs| Election::new(names(m), vs).unwrap())
    })
}

/// A non-increasing scoring vector of length `m` with entries <= 4.
pub fn alpha(m: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..=4u64, m).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

pub fn ids(e: &Election) -> Vec<CandidateId> {
    e.candidate_ids().collect()
}
