//! Brute-force reference implementations. Slow on purpose: each one follows
//! the problem definition directly and shares nothing with the optimized
//! deciders beyond the basic tallies of [`crate::election`].

use std::collections::{HashMap, HashSet, VecDeque};

use crate::bribery::{Bribe, BriberyInstance};
use crate::control::{ControlAction, ControlInstance, ControlSpec, ControlSystem, ControlType, Goal, TieRule};
use crate::dodgson::DodgsonTriple;
use crate::election::{
    approval_winners, condorcet_winner, family_vector, scoring_winners, ApprovalVector, Ballot,
    CandidateId, Election, LinearOrder, RuleFamily, Voter, VotingRule, WinnerMode,
};
use crate::error::{Error, Result};
use crate::kemeny_young::WeakOrder;
use crate::manipulation::ManipulationInstance;
use crate::verdict::Verdict;

/// Size limits past which the oracles refuse to run.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ExhaustionBound {
    pub max_candidates: usize,
    pub max_voters: usize,
    pub max_weight: u64,
    pub max_budget: u64,
}

impl Default for ExhaustionBound {
    fn default() -> Self {
        ExhaustionBound {
            max_candidates: 4,
            max_voters: 6,
            max_weight: 4,
            max_budget: 6,
        }
    }
}

/// Ceiling on profiles visited by the Dodgson search.
const MAX_PROFILES: usize = 2_000_000;

impl ExhaustionBound {
    fn candidates(&self, m: usize) -> Result<()> {
        if m > self.max_candidates {
            return Err(Error::BoundExceeded(format!("{m} candidates > {}", self.max_candidates)));
        }
        Ok(())
    }

    fn voters(&self, voters: &[Voter]) -> Result<()> {
        if voters.len() > self.max_voters {
            return Err(Error::BoundExceeded(format!("{} voters > {}", voters.len(), self.max_voters)));
        }
        self.weights(voters.iter().map(|v| v.weight))?;
        self.weights(voters.iter().map(|v| v.price))
    }

    fn weights(&self, ws: impl IntoIterator<Item = u64>) -> Result<()> {
        match ws.into_iter().find(|&w| w > self.max_weight) {
            Some(w) => Err(Error::BoundExceeded(format!("weight or price {w} > {}", self.max_weight))),
            None => Ok(()),
        }
    }
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in all_permutations(m - 1) {
        for at in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(at, m - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

fn is_condorcet_winner(ballots: &[Vec<usize>], c: usize, m: usize) -> bool {
    let n = ballots.len();
    (0..m).filter(|&d| d != c).all(|d| {
        let wins = ballots
            .iter()
            .filter(|b| b.iter().position(|&x| x == c) < b.iter().position(|&x| x == d))
            .count();
        2 * wins > n
    })
}

/// Fewest adjacent swaps making the distinguished candidate a Condorcet
/// winner, by breadth-first search over whole profiles.
pub fn bf_dodgson_score(triple: &DodgsonTriple, bound: &ExhaustionBound) -> Result<u64> {
    let e = &triple.election;
    bound.candidates(e.num_candidates())?;
    bound.voters(e.voters())?;
    let m = e.num_candidates();
    let c = triple.distinguished.0;
    let mut start: Vec<Vec<usize>> = e
        .voters()
        .iter()
        .map(|v| v.ballot.as_ranked().expect("triple holds ranked ballots").ranking().iter().map(|x| x.0).collect())
        .collect();
    start.sort();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0u64)]);
    while let Some((profile, depth)) = queue.pop_front() {
        if is_condorcet_winner(&profile, c, m) {
            return Ok(depth);
        }
        for i in 0..profile.len() {
            for j in 0..m.saturating_sub(1) {
                let mut next = profile.clone();
                next[i].swap(j, j + 1);
                next.sort();
                if seen.insert(next.clone()) {
                    if seen.len() > MAX_PROFILES {
                        return Err(Error::BoundExceeded(format!("more than {MAX_PROFILES} profiles")));
                    }
                    queue.push_back((next, depth + 1));
                }
            }
        }
    }
    Err(Error::Unreachable)
}

/// Fewest voters to remove so that `c` becomes the Condorcet winner.
pub fn bf_young(election: &Election, c: CandidateId, bound: &ExhaustionBound) -> Result<Option<u64>> {
    bound.candidates(election.num_candidates())?;
    bound.voters(election.voters())?;
    election.require(c)?;
    if election.voters().iter().any(|v| v.weight != 1) {
        return Err(Error::WeightedNotSupported);
    }
    let n = election.num_voters();
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let kept = (0..n)
            .filter(|i| mask >> i & 1 == 0)
            .map(|i| election.voters()[i].clone())
            .collect();
        if condorcet_winner(&election.with_voters(kept))? == Some(c) {
            return Ok(Some(u64::from(mask.count_ones())));
        }
    }
    Ok(None)
}

/// Every weak order, scored voter by voter.
pub fn bf_kemeny(election: &Election, bound: &ExhaustionBound) -> Result<(u64, Vec<WeakOrder>)> {
    bound.candidates(election.num_candidates())?;
    bound.voters(election.voters())?;
    let m = election.num_candidates();
    let ballots: Vec<(Vec<usize>, u64)> = election
        .voters()
        .iter()
        .map(|v| {
            let o = v.ballot.as_ranked().ok_or(Error::BallotKind { expected: "linear-order" })?;
            let mut pos = vec![0; m];
            for (i, x) in o.ranking().iter().enumerate() {
                pos[x.0] = i;
            }
            Ok((pos, v.weight))
        })
        .collect::<Result<_>>()?;
    let mut best = u64::MAX;
    let mut found = Vec::new();
    let mut rank = vec![0usize; m];
    loop {
        let used: HashSet<usize> = rank.iter().copied().collect();
        if (0..used.len()).all(|r| used.contains(&r)) {
            let mut dist = 0;
            for (pos, w) in &ballots {
                for a in 0..m {
                    for b in a + 1..m {
                        let voter_a_first = pos[a] < pos[b];
                        dist += w * match rank[a].cmp(&rank[b]) {
                            std::cmp::Ordering::Equal => 1,
                            std::cmp::Ordering::Less if voter_a_first => 0,
                            std::cmp::Ordering::Greater if !voter_a_first => 0,
                            _ => 2,
                        };
                    }
                }
            }
            if dist < best {
                best = dist;
                found.clear();
            }
            if dist == best {
                let levels = (0..used.len())
                    .map(|r| (0..m).filter(|&x| rank[x] == r).map(CandidateId).collect())
                    .collect();
                found.push(WeakOrder::new(levels));
            }
        }
        // next rank vector in base m
        let mut i = 0;
        while i < m && rank[i] == m - 1 {
            rank[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
        rank[i] += 1;
    }
    found.sort();
    Ok((if m == 0 { 0 } else { best }, found))
}

/// Distinct ballots with the points each awards.
fn ballot_options(rule: &VotingRule, m: usize) -> Vec<(Ballot, Vec<u64>)> {
    let mut out: Vec<(Ballot, Vec<u64>)> = Vec::new();
    let mut seen = HashSet::new();
    match rule {
        VotingRule::Scoring(alpha) => {
            for p in all_permutations(m) {
                let mut pts = vec![0; m];
                for (pos, &x) in p.iter().enumerate() {
                    pts[x] = alpha.alpha()[pos];
                }
                if seen.insert(pts.clone()) {
                    let order = LinearOrder::from_indices(&p, m).expect("permutation");
                    out.push((Ballot::Ranked(order), pts));
                }
            }
        }
        VotingRule::Approval => {
            for mask in 0..1u32 << m {
                let a: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
                let pts = a.iter().map(|&x| u64::from(x)).collect();
                out.push((Ballot::Approval(ApprovalVector::new(a)), pts));
            }
        }
    }
    out
}

fn wins(points: &[u64], c: CandidateId, mode: WinnerMode) -> bool {
    let top = points.iter().copied().max().unwrap_or(0);
    let at_top = points.iter().filter(|&&p| p == top).count();
    match mode {
        WinnerMode::CoWinner => points[c.0] == top,
        WinnerMode::Unique => points[c.0] == top && at_top == 1,
    }
}

/// Score vector -> (predecessor vector, ballot option index).
type Layer = HashMap<Vec<u64>, (Vec<u64>, usize)>;

/// Every score vector reachable by letting each weighted voter cast any
/// ballot; returns one ballot choice per voter for a winning vector.
fn reachable(base: Vec<u64>, weights: &[u64], options: &[(Ballot, Vec<u64>)], goal: impl Fn(&[u64]) -> bool) -> Option<Vec<usize>> {
    let mut layers: Vec<Layer> = Vec::new();
    let mut frontier: HashSet<Vec<u64>> = HashSet::from([base]);
    for &w in weights {
        let mut layer = HashMap::new();
        for s in &frontier {
            for (i, (_, pts)) in options.iter().enumerate() {
                let next: Vec<u64> = s.iter().zip(pts).map(|(a, b)| a + w * b).collect();
                layer.entry(next).or_insert_with(|| (s.clone(), i));
            }
        }
        frontier = layer.keys().cloned().collect();
        layers.push(layer);
    }
    let mut hit = frontier.into_iter().filter(|s| goal(s)).min()?;
    let mut picks = vec![0; weights.len()];
    for k in (0..weights.len()).rev() {
        let (prev, i) = layers[k][&hit].clone();
        picks[k] = i;
        hit = prev;
    }
    Some(picks)
}

/// Every assignment of ballots to the manipulators.
pub fn bf_manipulation(inst: &ManipulationInstance, bound: &ExhaustionBound) -> Result<Verdict<Vec<Ballot>>> {
    let m = inst.election.num_candidates();
    bound.candidates(m)?;
    bound.voters(inst.election.voters())?;
    if inst.manipulator_weights.len() > bound.max_voters {
        return Err(Error::BoundExceeded("too many manipulators".into()));
    }
    bound.weights(inst.manipulator_weights.iter().copied())?;
    let options = ballot_options(&inst.rule, m);
    let base = inst.rule.points(&inst.election)?.as_slice().to_vec();
    let picks = reachable(base, &inst.manipulator_weights, &options, |s| wins(s, inst.target, inst.mode));
    Ok(picks
        .map(|p| p.into_iter().map(|i| options[i].0.clone()).collect())
        .into())
}

/// Every affordable set of bribed voters, each with every replacement ballot.
pub fn bf_bribery(inst: &BriberyInstance, bound: &ExhaustionBound) -> Result<Verdict<Bribe>> {
    let e = &inst.election;
    let m = e.num_candidates();
    bound.candidates(m)?;
    bound.voters(e.voters())?;
    if inst.budget > bound.max_budget {
        return Err(Error::BoundExceeded(format!("budget {} > {}", inst.budget, bound.max_budget)));
    }
    let n = e.num_voters();
    let cost = |v: &Voter| if inst.variant.priced() { v.price } else { 1 };
    let options = ballot_options(&inst.rule, m);
    let mut sets: Vec<Vec<usize>> = (0..1u32 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    sets.sort_by(|a: &Vec<usize>, b| (a.len(), a).cmp(&(b.len(), b)));
    for set in sets {
        if set.iter().map(|&i| cost(&e.voters()[i])).sum::<u64>() > inst.budget {
            continue;
        }
        let kept = (0..n).filter(|i| !set.contains(i)).map(|i| e.voters()[i].clone()).collect();
        let base = inst.rule.points(&e.with_voters(kept))?.as_slice().to_vec();
        let weights: Vec<u64> = set.iter().map(|&i| e.voters()[i].weight).collect();
        if let Some(p) = reachable(base, &weights, &options, |s| wins(s, inst.target, inst.mode)) {
            let ballots = p.into_iter().map(|i| options[i].0.clone()).collect();
            return Ok(Verdict::Yes(Bribe { voters: set, ballots }));
        }
    }
    Ok(Verdict::No)
}

fn winners_over(system: ControlSystem, e: &Election, candidates: &[CandidateId], voters: &[Voter]) -> Result<Vec<CandidateId>> {
    if candidates.is_empty() {
        return Ok(vec![]);
    }
    let mut cs = candidates.to_vec();
    cs.sort();
    let sub = e.subelection(&cs, voters);
    let w = match system {
        ControlSystem::Plurality => scoring_winners(&sub, &family_vector(RuleFamily::Plurality, cs.len())?)?,
        ControlSystem::Condorcet => condorcet_winner(&sub)?.into_iter().collect(),
        ControlSystem::Approval => approval_winners(&sub)?,
    };
    Ok(w.into_iter().map(|x| cs[x.0]).collect())
}

fn moves_on(spec: &ControlSpec, e: &Election, candidates: &[CandidateId], voters: &[Voter], voter_side: bool) -> Result<Vec<CandidateId>> {
    if candidates.is_empty() || (voter_side && voters.is_empty()) {
        return Ok(vec![]);
    }
    let w = winners_over(spec.system, e, candidates, voters)?;
    Ok(if spec.tie_rule == Some(TieRule::TE) && w.len() > 1 { vec![] } else { w })
}

/// Final winners after an action, computed from the definitions.
pub fn bf_outcome(spec: &ControlSpec, inst: &ControlInstance, action: &ControlAction) -> Result<Vec<CandidateId>> {
    let e = &inst.election;
    let registered: Vec<CandidateId> = e.candidate_ids().filter(|x| !inst.spoilers.contains(x)).collect();
    let voters = e.voters().to_vec();
    let without = |all: &[CandidateId], gone: &[CandidateId]| -> Vec<CandidateId> {
        all.iter().copied().filter(|x| !gone.contains(x)).collect()
    };
    let pick = |idx: &[usize], keep: bool| -> Vec<Voter> {
        (0..voters.len())
            .filter(|i| idx.contains(i) == keep)
            .map(|i| voters[i].clone())
            .collect()
    };
    let (final_candidates, final_voters) = match (spec.control_type, action) {
        (ControlType::AddCandidates, ControlAction::AddCandidates(d)) => {
            ([registered.clone(), d.clone()].concat(), voters.clone())
        }
        (ControlType::DeleteCandidates, ControlAction::DeleteCandidates(d)) => (without(&registered, d), voters.clone()),
        (ControlType::PartitionCandidates, ControlAction::PartitionCandidates(c1)) => {
            let first = moves_on(spec, e, c1, &voters, false)?;
            ([first, without(&registered, c1)].concat(), voters.clone())
        }
        (ControlType::RunoffPartitionCandidates, ControlAction::PartitionCandidates(c1)) => {
            let first = moves_on(spec, e, c1, &voters, false)?;
            let second = moves_on(spec, e, &without(&registered, c1), &voters, false)?;
            ([first, second].concat(), voters.clone())
        }
        (ControlType::AddVoters, ControlAction::AddVoters(w)) => {
            let mut all = voters.clone();
            all.extend(w.iter().map(|&i| inst.voter_pool[i].clone()));
            (registered.clone(), all)
        }
        (ControlType::DeleteVoters, ControlAction::DeleteVoters(d)) => (registered.clone(), pick(d, false)),
        (ControlType::PartitionVoters, ControlAction::PartitionVoters(v1)) => {
            let first = moves_on(spec, e, &registered, &pick(v1, true), true)?;
            let second = moves_on(spec, e, &registered, &pick(v1, false), true)?;
            ([first, second].concat(), voters.clone())
        }
        _ => return Err(Error::InvalidElection("action does not match the control type".into())),
    };
    let mut fc = final_candidates;
    fc.sort();
    fc.dedup();
    winners_over(spec.system, e, &fc, &final_voters)
}

fn goal_met(spec: &ControlSpec, winners: &[CandidateId], c: CandidateId) -> bool {
    (winners == [c]) == (spec.goal == Goal::Constructive)
}

/// Tries every action, smallest first and then lexicographically.
pub fn bf_control(spec: &ControlSpec, inst: &ControlInstance, bound: &ExhaustionBound) -> Result<Verdict<ControlAction>> {
    let e = &inst.election;
    let registered: Vec<CandidateId> = e.candidate_ids().filter(|x| !inst.spoilers.contains(x)).collect();
    bound.candidates(registered.len())?;
    if e.num_candidates() > bound.max_candidates + 1 {
        return Err(Error::BoundExceeded("too many spoilers".into()));
    }
    let mut everyone = e.voters().to_vec();
    everyone.extend(inst.voter_pool.iter().cloned());
    bound.voters(&everyone)?;
    if everyone.iter().any(|v| v.weight != 1) {
        return Err(Error::WeightedNotSupported);
    }
    let deletable: Vec<CandidateId> = registered.iter().copied().filter(|&x| x != inst.target).collect();
    let n = e.num_voters();
    let k = inst.limit;
    let subsets = |size: usize, max: usize| -> Vec<Vec<usize>> {
        let mut all: Vec<Vec<usize>> = (0..1u32 << size)
            .map(|mask| (0..size).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| s.len() <= max)
            .collect();
        all.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        all
    };
    let of = |ids: &[CandidateId], s: &[usize]| -> Vec<CandidateId> { s.iter().map(|&i| ids[i]).collect() };
    let actions: Vec<ControlAction> = match spec.control_type {
        ControlType::AddCandidates => subsets(inst.spoilers.len(), usize::MAX)
            .iter()
            .map(|s| ControlAction::AddCandidates(of(&inst.spoilers, s)))
            .collect(),
        ControlType::DeleteCandidates => subsets(deletable.len(), k)
            .iter()
            .map(|s| ControlAction::DeleteCandidates(of(&deletable, s)))
            .collect(),
        ControlType::PartitionCandidates | ControlType::RunoffPartitionCandidates => subsets(registered.len(), usize::MAX)
            .iter()
            .map(|s| ControlAction::PartitionCandidates(of(&registered, s)))
            .collect(),
        ControlType::AddVoters => subsets(inst.voter_pool.len(), k).into_iter().map(ControlAction::AddVoters).collect(),
        ControlType::DeleteVoters => subsets(n, k).into_iter().map(ControlAction::DeleteVoters).collect(),
        ControlType::PartitionVoters => subsets(n, usize::MAX).into_iter().map(ControlAction::PartitionVoters).collect(),
    };
    for a in actions {
        if goal_met(spec, &bf_outcome(spec, inst, &a)?, inst.target) {
            return Ok(Verdict::Yes(a));
        }
    }
    Ok(Verdict::No)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bribery::BriberyVariant;
    use crate::dodgson::triple_from_rankings;
    use crate::election::ScoringVector;

    #[test]
    fn dodgson_oracle_examples() {
        let b = ExhaustionBound::default();
        let qc = triple_from_rankings(&["H", "M", "D"], &[(1, "H>M>D"), (1, "M>D>H"), (1, "D>H>M")], "H").unwrap();
        assert_eq!(bf_dodgson_score(&qc, &b).unwrap(), 1);
        let cw = triple_from_rankings(&["a", "b"], &[(2, "a>b"), (1, "b>a")], "a").unwrap();
        assert_eq!(bf_dodgson_score(&cw, &b).unwrap(), 0);
    }

    #[test]
    fn kemeny_oracle_unanimous() {
        let e = Election::from_rankings(&["a", "b", "c"], &[(2, "c>a>b")]).unwrap();
        let (d, orders) = bf_kemeny(&e, &ExhaustionBound::default()).unwrap();
        assert_eq!(d, 0);
        assert_eq!(orders.len(), 1);
        assert_eq!(orders[0].top(), &[CandidateId(2)]);
    }

    #[test]
    fn borda_story() {
        let e = Election::from_rankings(&["a", "b", "c"], &[(5, "a>b>c"), (1, "c>a>b")]).unwrap();
        let inst = ManipulationInstance::new(e, vec![1; 5], CandidateId(1), VotingRule::Scoring(ScoringVector::new(vec![2, 1, 0]).unwrap()))
            .unwrap()
            .with_mode(WinnerMode::Unique);
        let v = bf_manipulation(&inst, &ExhaustionBound::default()).unwrap();
        assert!(inst.succeeds_with(v.witness().unwrap()).unwrap());
    }

    #[test]
    fn heaviest_first_trap() {
        let e = Election::from_rankings(&["a", "b", "c"], &[(2, "a>b>c"), (4, "b>a>c")]).unwrap();
        let weights = [3, 3, 1, 2, 2, 2];
        let voters = e.voters().iter().zip(weights).map(|(v, w)| v.clone().with_weight(w)).collect();
        let e = e.with_voters(voters);
        let inst = BriberyInstance::plurality(e, CandidateId(2), 2, BriberyVariant::Weighted).unwrap();
        let v = bf_bribery(&inst, &ExhaustionBound::default()).unwrap();
        let w = v.witness().unwrap();
        let mut ws: Vec<u64> = w.voters.iter().map(|&i| weights[i]).collect();
        ws.sort();
        assert_eq!(ws, vec![2, 3]);
        assert!(inst.succeeds_with(w).unwrap());
    }

    #[test]
    fn bounds_are_enforced() {
        let names: Vec<String> = (0..5).map(|i| format!("x{i}")).collect();
        let e = Election::with_candidates(names).unwrap();
        assert!(matches!(bf_kemeny(&e, &ExhaustionBound::default()), Err(Error::BoundExceeded(_))));
    }
}
