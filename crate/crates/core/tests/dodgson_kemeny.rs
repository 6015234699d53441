mod common;

use proptest::prelude::*;
use votecx::dodgson::{decide_dodgson_score, dodgson_ranking, dodgson_score, DodgsonTriple};
use votecx::kemeny_young::{kemeny_consensuses, kemeny_distance, kemeny_winners, young_score, WeakOrder};
use votecx::oracle::{bf_young, ExhaustionBound};
use votecx::*;

fn triple(e: &Election, c: usize) -> DodgsonTriple {
    DodgsonTriple::new(e.clone(), CandidateId(c)).unwrap()
}

/// The same election with candidate `i` renamed and renumbered to `perm[i]`.
fn relabel(e: &Election, perm: &[usize]) -> Election {
    let m = e.num_candidates();
    let mut names = vec![String::new(); m];
    for (i, &p) in perm.iter().enumerate() {
        names[p] = e.name(CandidateId(i)).to_string();
    }
    let voters = e
        .voters()
        .iter()
        .map(|v| {
            let r: Vec<usize> = v.ballot.as_ranked().unwrap().ranking().iter().map(|c| perm[c.0]).collect();
            Voter::ranked(LinearOrder::from_indices(&r, m).unwrap()).with_weight(v.weight)
        })
        .collect();
    Election::new(names, voters).unwrap()
}

fn with_perm(max_m: usize, max_n: usize) -> impl Strategy<Value = (Election, Vec<usize>)> {
    common::unit(max_m, max_n).prop_flat_map(|e| {
        let m = e.num_candidates();
        (Just(e), Just((0..m).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn zero_iff_condorcet_winner(e in common::unit(4, 5), c in 0..4usize) {
        let c = c % e.num_candidates();
        let cw = condorcet_winner(&e).unwrap();
        if let Ok(s) = dodgson_score(&triple(&e, c)) {
            prop_assert_eq!(s == 0, cw == Some(CandidateId(c)));
        }
        if let Some(y) = young_score(&e, CandidateId(c)).unwrap() {
            prop_assert_eq!(y == 0, cw == Some(CandidateId(c)));
        }
    }

    #[test]
    fn decision_is_monotone(e in common::unit(4, 5), c in 0..4usize, k in 0..6u64) {
        let t = triple(&e, c % e.num_candidates());
        if decide_dodgson_score(&t, k).unwrap_or(false) {
            for k2 in k..k + 4 {
                prop_assert!(decide_dodgson_score(&t, k2).unwrap());
            }
        }
    }

    #[test]
    fn ranking_is_total(e in common::unit(4, 5), c in 0..4usize, d in 0..4usize) {
        let m = e.num_candidates();
        let (c, d) = (CandidateId(c % m), CandidateId(d % m));
        if let (Ok(a), Ok(b)) = (dodgson_ranking(&e, c, d), dodgson_ranking(&e, d, c)) {
            prop_assert!(a || b);
        }
    }

    #[test]
    fn one_switch_per_lost_contest(e in common::unit(4, 5), c in 0..4usize) {
        let c = CandidateId(c % e.num_candidates());
        let n = pairwise_matrix(&e).unwrap();
        let lost = e.candidate_ids().filter(|&d| d != c && 2 * n.get(c, d) <= e.total_weight()).count() as u64;
        if let Ok(s) = dodgson_score(&DodgsonTriple::new(e.clone(), c).unwrap()) {
            prop_assert!(s >= lost);
        }
    }

    #[test]
    fn young_matches_subset_oracle(e in common::unit(4, 8), c in 0..4usize) {
        let c = CandidateId(c % e.num_candidates());
        let bound = ExhaustionBound { max_voters: 8, ..ExhaustionBound::default() };
        prop_assert_eq!(young_score(&e, c).unwrap(), bf_young(&e, c, &bound).unwrap());
    }

    #[test]
    fn kemeny_distance_adds_over_voters(e in common::ranked(4, 5, 3), levels in common::order(4)) {
        let m = e.num_candidates();
        let r: Vec<CandidateId> = levels.ranking().iter().copied().filter(|c| c.0 < m).collect();
        let o = WeakOrder::new(r.chunks(2).map(|c| c.to_vec()).collect());
        let whole = kemeny_distance(&o, &e).unwrap();
        let parts: u64 = e.voters().iter().map(|v| kemeny_distance(&o, &e.with_voters(vec![v.clone()])).unwrap()).sum();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn consensus_beats_every_ballot(e in common::ranked(4, 5, 3)) {
        let (best, orders) = kemeny_consensuses(&e).unwrap();
        prop_assert!(!orders.is_empty());
        for o in &orders {
            prop_assert_eq!(kemeny_distance(o, &e).unwrap(), best);
        }
        for v in e.voters() {
            let own = WeakOrder::new(v.ballot.as_ranked().unwrap().ranking().iter().map(|&c| vec![c]).collect());
            prop_assert!(best <= kemeny_distance(&own, &e).unwrap());
        }
    }

    #[test]
    fn relabeling_commutes((e, perm) in with_perm(4, 5)) {
        let f = relabel(&e, &perm);
        for c in e.candidate_ids() {
            prop_assert_eq!(young_score(&e, c).unwrap(), young_score(&f, CandidateId(perm[c.0])).unwrap());
        }
        let mut mapped: Vec<CandidateId> = kemeny_winners(&e).unwrap().iter().map(|c| CandidateId(perm[c.0])).collect();
        mapped.sort();
        prop_assert_eq!(mapped, kemeny_winners(&f).unwrap());
    }
}

#[test]
fn queens_court() {
    let e = Election::from_rankings(
        &["Hatter", "Hare", "Dormouse"],
        &[(1, "Hatter > Hare > Dormouse"), (1, "Hare > Dormouse > Hatter"), (1, "Dormouse > Hatter > Hare")],
    )
    .unwrap();
    assert_eq!(condorcet_winner(&e).unwrap(), None);
    for c in 0..3 {
        assert_eq!(dodgson_score(&triple(&e, c)).unwrap(), 1);
    }
    assert_eq!(kemeny_winners(&e).unwrap().len(), 3);
}
