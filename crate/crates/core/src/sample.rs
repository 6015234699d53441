//! Seeded random instances for cross-checking against the oracles.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bribery::{BriberyInstance, BriberyVariant, Encoding};
use crate::control::{ControlInstance, ControlSpec, ControlSystem, ControlType};
use crate::election::{
    family_vector, ApprovalVector, CandidateId, Election, LinearOrder, RuleFamily, ScoringVector,
    Voter, VotingRule, WinnerMode,
};
use crate::manipulation::ManipulationInstance;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn names(m: usize) -> Vec<String> {
        (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    }

    pub fn order(&mut self, m: usize) -> LinearOrder {
        let mut p: Vec<usize> = (0..m).collect();
        p.shuffle(&mut self.rng);
        LinearOrder::from_indices(&p, m).expect("permutation")
    }

    pub fn approvals(&mut self, m: usize) -> ApprovalVector {
        ApprovalVector::new((0..m).map(|_| self.rng.gen_bool(0.5)).collect())
    }

    fn voter(&mut self, m: usize, approval: bool, max_weight: u64, max_price: u64) -> Voter {
        let v = if approval {
            Voter::approval(self.approvals(m))
        } else {
            Voter::ranked(self.order(m))
        };
        v.with_weight(self.rng.gen_range(1..=max_weight))
            .with_price(self.rng.gen_range(0..=max_price).max(u64::from(max_price == 1)))
    }

    /// `m` candidates named a, b, ...; weights in `1..=max_weight`, prices in
    /// `0..=max_price` (exactly 1 when `max_price` is 1).
    pub fn election(&mut self, m: usize, n: usize, approval: bool, max_weight: u64, max_price: u64) -> Election {
        let voters = (0..n).map(|_| self.voter(m, approval, max_weight, max_price)).collect();
        Election::new(Self::names(m), voters).expect("valid sample")
    }

    pub fn ranked(&mut self, m: usize, n: usize) -> Election {
        self.election(m, n, false, 1, 1)
    }

    /// A named family or a random non-increasing vector with entries <= 3.
    pub fn scoring_vector(&mut self, m: usize) -> ScoringVector {
        match self.rng.gen_range(0..4) {
            0 => family_vector(RuleFamily::Plurality, m).unwrap(),
            1 => family_vector(RuleFamily::Veto, m).unwrap(),
            2 => family_vector(RuleFamily::Borda, m).unwrap(),
            _ => {
                let mut v: Vec<u64> = (0..m).map(|_| self.rng.gen_range(0..=3)).collect();
                v.sort_unstable_by(|a, b| b.cmp(a));
                ScoringVector::new(v).unwrap()
            }
        }
    }

    fn mode(&mut self) -> WinnerMode {
        if self.rng.gen_bool(0.5) {
            WinnerMode::CoWinner
        } else {
            WinnerMode::Unique
        }
    }

    /// Up to 4 candidates, 5 fixed voters and 3 manipulators, weights <= 3.
    pub fn manipulation(&mut self) -> ManipulationInstance {
        let m = self.rng.gen_range(1..=4);
        let n = self.rng.gen_range(0..=5);
        let approval = self.rng.gen_ratio(1, 5);
        let weighted = self.rng.gen_bool(0.5);
        let max_w = if weighted { 3 } else { 1 };
        let e = self.election(m, n, approval, max_w, 1);
        let s = self.rng.gen_range(0..=3);
        let weights = (0..s).map(|_| self.rng.gen_range(1..=max_w)).collect();
        let rule = if approval {
            VotingRule::Approval
        } else {
            VotingRule::Scoring(self.scoring_vector(m))
        };
        let target = CandidateId(self.rng.gen_range(0..m));
        let mode = self.mode();
        ManipulationInstance::new(e, weights, target, rule).unwrap().with_mode(mode)
    }

    /// Up to 4 candidates and 6 voters; weights and prices <= 4; budget <= 6.
    pub fn bribery(&mut self, variant: BriberyVariant, rule_kind: BriberyRule) -> BriberyInstance {
        let m = self.rng.gen_range(1..=4);
        let n = self.rng.gen_range(0..=6);
        let max_w = if variant.weighted() { 4 } else { 1 };
        let max_p = if variant.priced() { 4 } else { 1 };
        let approval = rule_kind == BriberyRule::Approval;
        let e = self.election(m, n, approval, max_w, max_p);
        let rule = match rule_kind {
            BriberyRule::Plurality => VotingRule::Scoring(family_vector(RuleFamily::Plurality, m).unwrap()),
            BriberyRule::Scoring => VotingRule::Scoring(self.scoring_vector(m)),
            BriberyRule::Approval => VotingRule::Approval,
        };
        let budget = self.rng.gen_range(0..=6);
        let target = CandidateId(self.rng.gen_range(0..m));
        let encoding = *[Encoding::Binary, Encoding::WeightsUnary, Encoding::PricesUnary]
            .choose(&mut self.rng)
            .unwrap();
        let mode = self.mode();
        BriberyInstance::new(e, target, budget, variant, rule)
            .unwrap()
            .with_encoding(encoding)
            .with_mode(mode)
    }

    /// A bribery instance of random variant; half use plurality, the rest
    /// other scoring vectors or approval.
    pub fn any_bribery(&mut self) -> BriberyInstance {
        let variant = [
            BriberyVariant::Plain,
            BriberyVariant::Weighted,
            BriberyVariant::Priced,
            BriberyVariant::WeightedPriced,
        ][self.rng.gen_range(0..4)];
        let rule = match self.rng.gen_range(0..6) {
            0 => BriberyRule::Approval,
            1 => BriberyRule::Scoring,
            _ => BriberyRule::Plurality,
        };
        self.bribery(variant, rule)
    }

    /// Up to 3 registered candidates plus 2 spoilers, 4 voters plus a pool
    /// of 2, limit <= 3. Pools are nonempty when the control type needs them.
    pub fn control(&mut self, spec: &ControlSpec) -> ControlInstance {
        let registered = self.rng.gen_range(1..=3);
        let min_spoilers = usize::from(spec.control_type == ControlType::AddCandidates);
        let spoilers = self.rng.gen_range(min_spoilers..=2);
        let m = registered + spoilers;
        let approval = spec.system == ControlSystem::Approval;
        let n = self.rng.gen_range(0..=4);
        let e = self.election(m, n, approval, 1, 1);
        let min_pool = usize::from(spec.control_type == ControlType::AddVoters);
        let pool_size = self.rng.gen_range(min_pool..=2);
        let pool = (0..pool_size).map(|_| self.voter(m, approval, 1, 1)).collect();
        let mut ids: Vec<CandidateId> = (0..m).map(CandidateId).collect();
        ids.shuffle(&mut self.rng);
        let spoiler_ids = ids[..spoilers].to_vec();
        let target = ids[spoilers];
        let limit = self.rng.gen_range(0..=3);
        ControlInstance::new(e, spoiler_ids, pool, target, limit).unwrap()
    }
}

/// Which rule a sampled bribery instance uses.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BriberyRule {
    Plurality,
    Scoring,
    Approval,
}
