use proptest::prelude::*;
use votecx::control::*;
use votecx::oracle::{bf_control, ExhaustionBound};
use votecx::sample::Sampler;
use votecx::*;

fn spec_at(i: usize) -> ControlSpec {
    let all = ControlSpec::all();
    all[i % all.len()]
}

fn specs_where(keep: impl Fn(&ControlSpec) -> bool) -> Vec<ControlSpec> {
    ControlSpec::all().into_iter().filter(keep).collect()
}

fn bounded(s: &ControlSpec) -> bool {
    matches!(s.control_type, ControlType::AddVoters | ControlType::DeleteVoters | ControlType::DeleteCandidates)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn witnesses_reach_the_goal(seed in any::<u64>(), i in 0..60usize) {
        let spec = spec_at(i);
        let inst = Sampler::new(seed).control(&spec);
        if let Verdict::Yes(a) = control_decide(&spec, &inst, SearchBudget::default()).unwrap() {
            prop_assert!(achieves(&spec, &inst, &a).unwrap());
        }
    }

    #[test]
    fn larger_limits_never_hurt(seed in any::<u64>(), i in any::<usize>()) {
        let specs = specs_where(bounded);
        let spec = specs[i % specs.len()];
        let inst = Sampler::new(seed).control(&spec);
        if control_decide(&spec, &inst, SearchBudget::default()).unwrap().is_yes() {
            let mut more = inst.clone();
            more.limit += 1;
            prop_assert!(control_decide(&spec, &more, SearchBudget::default()).unwrap().is_yes());
        }
    }

    #[test]
    fn immune_means_doing_nothing_is_best(seed in any::<u64>(), i in any::<usize>()) {
        let specs = specs_where(|s| classify_control(s) == Classification::Immune);
        let spec = specs[i % specs.len()];
        let inst = Sampler::new(seed).control(&spec);
        let mut wide = inst.clone();
        wide.limit = 10;
        let fast = control_decide(&spec, &wide, SearchBudget::default()).unwrap();
        let slow = bf_control(&spec, &wide, &ExhaustionBound::default()).unwrap();
        prop_assert_eq!(fast.is_yes(), slow.is_yes());
    }
}

#[test]
fn empty_actions_are_legal() {
    let e = Election::from_rankings(&["a", "b", "c"], &[(1, "a>b>c"), (1, "b>a>c"), (1, "a>c>b")]).unwrap();
    let inst = ControlInstance::new(e, vec![CandidateId(2)], vec![], CandidateId(0), 0).unwrap();
    let spec = ControlSpec::new(ControlType::AddCandidates, Goal::Constructive, None, ControlSystem::Plurality).unwrap();
    assert_eq!(outcome(&spec, &inst, &ControlAction::AddCandidates(vec![])).unwrap(), vec![CandidateId(0)]);
    let del = ControlSpec::new(ControlType::DeleteCandidates, Goal::Constructive, None, ControlSystem::Plurality).unwrap();
    let plain = ControlInstance::new(inst.election.clone(), vec![], vec![], CandidateId(0), 0).unwrap();
    assert_eq!(
        control_decide(&del, &plain, SearchBudget::default()).unwrap(),
        Verdict::Yes(ControlAction::DeleteCandidates(vec![]))
    );
}

#[test]
fn weighted_voters_and_missing_pools_are_rejected() {
    let mut e = Election::with_candidates(["a", "b"]).unwrap();
    let order = e.parse_order("a>b").unwrap();
    e.push_voter(Voter::ranked(order).with_weight(2)).unwrap();
    let inst = ControlInstance::new(e, vec![], vec![], CandidateId(1), 1).unwrap();
    let spec = ControlSpec::new(ControlType::DeleteVoters, Goal::Constructive, None, ControlSystem::Plurality).unwrap();
    assert_eq!(control_decide(&spec, &inst, SearchBudget::default()), Err(Error::WeightedNotSupported));
    let e = Election::from_rankings(&["a", "b"], &[(1, "a>b")]).unwrap();
    let inst = ControlInstance::new(e, vec![], vec![], CandidateId(1), 1).unwrap();
    let spec = ControlSpec::new(ControlType::AddVoters, Goal::Constructive, None, ControlSystem::Plurality).unwrap();
    assert!(matches!(control_decide(&spec, &inst, SearchBudget::default()), Err(Error::PoolMissing(_))));
    assert!(ControlSpec::new(ControlType::PartitionVoters, Goal::Constructive, None, ControlSystem::Plurality).is_err());
    assert!(ControlSpec::new(ControlType::AddVoters, Goal::Constructive, Some(TieRule::TE), ControlSystem::Plurality).is_err());
}

#[test]
fn spec_list_covers_every_table_cell() {
    let all = ControlSpec::all();
    assert_eq!(all.len(), 60);
    for s in &all {
        let _ = classify_control(s);
    }
}
