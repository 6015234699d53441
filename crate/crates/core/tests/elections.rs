mod common;

use proptest::prelude::*;
use votecx::*;

fn split_weights(e: &Election) -> Election {
    let voters = e
        .voters()
        .iter()
        .flat_map(|v| std::iter::repeat_n(v.clone().with_weight(1), v.weight as usize))
        .collect();
    e.with_voters(voters)
}

proptest! {
    #[test]
    fn score_total(e in common::ranked(5, 6, 4), raw in common::alpha(5)) {
        let alpha = ScoringVector::new(raw[..e.num_candidates()].to_vec()).unwrap();
        let total = scores(&e, &alpha).unwrap().total();
        prop_assert_eq!(total, e.total_weight() * alpha.alpha().iter().sum::<u64>());
    }

    #[test]
    fn winners_survive_affine_maps(e in common::ranked(5, 6, 3), raw in common::alpha(5), a in 1..5u64, b in 0..5u64) {
        let m = e.num_candidates();
        let alpha = ScoringVector::new(raw[..m].to_vec()).unwrap();
        let mapped = ScoringVector::new(raw[..m].iter().map(|x| a * x + b).collect()).unwrap();
        prop_assert_eq!(scoring_winners(&e, &alpha).unwrap(), scoring_winners(&e, &mapped).unwrap());
    }

    #[test]
    fn condorcet_row_beats_half(e in common::ranked(5, 6, 3)) {
        if let Some(w) = condorcet_winner(&e).unwrap() {
            let n = pairwise_matrix(&e).unwrap();
            for d in e.candidate_ids().filter(|&d| d != w) {
                prop_assert!(2 * n.get(w, d) > e.total_weight());
            }
        }
    }

    #[test]
    fn weights_are_copies(e in common::ranked(5, 5, 4), raw in common::alpha(5)) {
        let alpha = ScoringVector::new(raw[..e.num_candidates()].to_vec()).unwrap();
        let unit = split_weights(&e);
        prop_assert_eq!(scores(&e, &alpha).unwrap(), scores(&unit, &alpha).unwrap());
        prop_assert_eq!(pairwise_matrix(&e).unwrap(), pairwise_matrix(&unit).unwrap());
        prop_assert_eq!(condorcet_winner(&e).unwrap(), condorcet_winner(&unit).unwrap());
    }

    #[test]
    fn approving_the_top_is_plurality(e in common::ranked(5, 6, 3)) {
        let m = e.num_candidates();
        let voters = e
            .voters()
            .iter()
            .map(|v| {
                let top = v.ballot.as_ranked().unwrap().top().unwrap();
                Voter::approval(ApprovalVector::only(top, m)).with_weight(v.weight)
            })
            .collect();
        let approval = e.with_voters(voters);
        let plurality = family_vector(RuleFamily::Plurality, m).unwrap();
        prop_assert_eq!(approval_winners(&approval).unwrap(), scoring_winners(&e, &plurality).unwrap());
    }
}

#[test]
fn spec_examples() {
    let e = Election::from_rankings(&["a", "b"], &[]).unwrap();
    let pl = family_vector(RuleFamily::Plurality, 2).unwrap();
    assert_eq!(scoring_winners(&e, &pl).unwrap(), vec![CandidateId(0), CandidateId(1)]);
    assert_eq!(
        family_vector(RuleFamily::KApproval(3), 2),
        Err(Error::KExceedsCandidates { k: 3, m: 2 })
    );
    let borda = Election::from_rankings(&["a", "b", "c"], &[(5, "a>b>c"), (5, "b>a>c"), (1, "c>a>b")]).unwrap();
    let alpha = family_vector(RuleFamily::Borda, 3).unwrap();
    assert_eq!(scores(&borda, &alpha).unwrap().as_slice(), &[16, 15, 2]);
    let cycle = Election::from_rankings(&["x", "y", "z"], &[(1, "x>y>z"), (1, "y>z>x"), (1, "z>x>y")]).unwrap();
    assert_eq!(condorcet_winner(&cycle).unwrap(), None);
}
