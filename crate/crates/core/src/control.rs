//! Electoral control by adding, deleting or partitioning candidates or
//! voters, for plurality, Condorcet and approval elections.
//!
//! Winning always means winning uniquely. Vulnerable problems get direct
//! polynomial procedures, resistant ones an exhaustive search that returns
//! the least witness (smallest, then lexicographically first), and immune
//! ones are settled by doing nothing.

use std::fmt;

use crate::election::{
    approval_winners, condorcet_winner, family_vector, scoring_winners, Ballot, CandidateId,
    Election, RuleFamily, Voter,
};
use crate::error::{Error, Result};
use crate::verdict::{SearchBudget, StepCounter, Verdict};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ControlType {
    AddCandidates,
    DeleteCandidates,
    PartitionCandidates,
    RunoffPartitionCandidates,
    AddVoters,
    DeleteVoters,
    PartitionVoters,
}

impl ControlType {
    pub const ALL: [ControlType; 7] = [
        ControlType::AddCandidates,
        ControlType::DeleteCandidates,
        ControlType::PartitionCandidates,
        ControlType::RunoffPartitionCandidates,
        ControlType::AddVoters,
        ControlType::DeleteVoters,
        ControlType::PartitionVoters,
    ];

    pub fn is_partition(self) -> bool {
        matches!(
            self,
            ControlType::PartitionCandidates | ControlType::RunoffPartitionCandidates | ControlType::PartitionVoters
        )
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Goal {
    Constructive,
    Destructive,
}

/// How tied subelection winners are handled: ties eliminate everyone, or
/// ties promote every tied winner.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TieRule {
    TE,
    TP,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ControlSystem {
    Plurality,
    Condorcet,
    Approval,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ControlSpec {
    pub control_type: ControlType,
    pub goal: Goal,
    pub tie_rule: Option<TieRule>,
    pub system: ControlSystem,
}

impl ControlSpec {
    /// A tie rule is required for partition types and rejected otherwise.
    pub fn new(control_type: ControlType, goal: Goal, tie_rule: Option<TieRule>, system: ControlSystem) -> Result<Self> {
        if control_type.is_partition() != tie_rule.is_some() {
            return Err(Error::InvalidElection(format!(
                "{control_type:?} {} a tie rule",
                if control_type.is_partition() { "needs" } else { "takes no" }
            )));
        }
        Ok(ControlSpec {
            control_type,
            goal,
            tie_rule,
            system,
        })
    }

    /// Every well-formed spec, partition types once per tie rule.
    pub fn all() -> Vec<ControlSpec> {
        let mut out = Vec::new();
        for system in [ControlSystem::Plurality, ControlSystem::Condorcet, ControlSystem::Approval] {
            for t in ControlType::ALL {
                for goal in [Goal::Constructive, Goal::Destructive] {
                    let rules: &[Option<TieRule>] = if t.is_partition() {
                        &[Some(TieRule::TE), Some(TieRule::TP)]
                    } else {
                        &[None]
                    };
                    for &tie in rules {
                        out.push(ControlSpec::new(t, goal, tie, system).expect("well-formed"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ControlSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {:?} {:?}", self.system, self.goal, self.control_type)?;
        if let Some(t) = self.tie_rule {
            write!(f, " {t:?}")?;
        }
        Ok(())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Immune,
    Resistant,
    Vulnerable,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Immune => "immune",
            Classification::Resistant => "resistant",
            Classification::Vulnerable => "vulnerable",
        })
    }
}

pub fn classify_control(spec: &ControlSpec) -> Classification {
    use Classification::*;
    use ControlSystem::*;
    use ControlType::*;
    use Goal::*;
    let tp = spec.tie_rule == Some(TieRule::TP);
    match (spec.system, spec.control_type, spec.goal) {
        (Plurality, AddCandidates | DeleteCandidates, _) => Resistant,
        (Plurality, PartitionCandidates | RunoffPartitionCandidates, _) => Resistant,
        (Plurality, AddVoters | DeleteVoters, _) => Vulnerable,
        (Plurality, PartitionVoters, _) => {
            if tp {
                Resistant
            } else {
                Vulnerable
            }
        }
        (Condorcet, AddCandidates, Constructive) => Immune,
        (Condorcet, AddCandidates, Destructive) => Vulnerable,
        (Condorcet, DeleteCandidates | PartitionCandidates | RunoffPartitionCandidates, Constructive) => Vulnerable,
        (Condorcet, DeleteCandidates | PartitionCandidates | RunoffPartitionCandidates, Destructive) => Immune,
        (Condorcet, AddVoters | DeleteVoters | PartitionVoters, Constructive) => Resistant,
        (Condorcet, AddVoters | DeleteVoters | PartitionVoters, Destructive) => Vulnerable,
        (Approval, AddCandidates, Constructive) => Immune,
        (Approval, AddCandidates, Destructive) => Vulnerable,
        (Approval, DeleteCandidates, Constructive) => Vulnerable,
        (Approval, DeleteCandidates, Destructive) => Immune,
        (Approval, PartitionCandidates | RunoffPartitionCandidates, Constructive) => {
            if tp {
                Immune
            } else {
                Vulnerable
            }
        }
        (Approval, PartitionCandidates | RunoffPartitionCandidates, Destructive) => Immune,
        (Approval, AddVoters | DeleteVoters | PartitionVoters, Constructive) => Resistant,
        (Approval, AddVoters | DeleteVoters | PartitionVoters, Destructive) => Vulnerable,
    }
}

/// Registered candidates, spoilers and voters. `election` ranges over every
/// candidate (registered or spoiler) and holds the registered voters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlInstance {
    pub election: Election,
    pub spoilers: Vec<CandidateId>,
    pub voter_pool: Vec<Voter>,
    pub target: CandidateId,
    pub limit: usize,
}

impl ControlInstance {
    pub fn new(election: Election, spoilers: Vec<CandidateId>, voter_pool: Vec<Voter>, target: CandidateId, limit: usize) -> Result<Self> {
        let mut spoilers = spoilers;
        spoilers.sort();
        spoilers.dedup();
        for &d in &spoilers {
            election.require(d)?;
        }
        election.require(target)?;
        if spoilers.contains(&target) {
            return Err(Error::InvalidElection("target must be a registered candidate".into()));
        }
        for v in &voter_pool {
            election.check_voter(v)?;
        }
        Ok(ControlInstance {
            election,
            spoilers,
            voter_pool,
            target,
            limit,
        })
    }

    /// Candidates that are not spoilers, ascending.
    pub fn registered(&self) -> Vec<CandidateId> {
        self.election
            .candidate_ids()
            .filter(|c| self.spoilers.binary_search(c).is_err())
            .collect()
    }

    fn check(&self, spec: &ControlSpec) -> Result<()> {
        let all = self.election.voters().iter().chain(&self.voter_pool);
        for v in all.clone() {
            if v.weight != 1 {
                return Err(Error::WeightedNotSupported);
            }
        }
        let ranked = spec.system != ControlSystem::Approval;
        for v in all {
            match (&v.ballot, ranked) {
                (Ballot::Ranked(_), true) | (Ballot::Approval(_), false) => {}
                (_, true) => return Err(Error::BallotKind { expected: "linear-order" }),
                (_, false) => return Err(Error::BallotKind { expected: "approval" }),
            }
        }
        match spec.control_type {
            ControlType::AddCandidates if self.spoilers.is_empty() => Err(Error::PoolMissing("spoiler candidates")),
            ControlType::AddVoters if self.voter_pool.is_empty() => Err(Error::PoolMissing("additional voters")),
            _ => Ok(()),
        }
    }
}

/// A control action. Partitions name their first block; for candidate
/// partitions that is the block holding the preliminary round (or the first
/// of the two run-off halves), for voters it is `V1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ControlAction {
    AddCandidates(Vec<CandidateId>),
    DeleteCandidates(Vec<CandidateId>),
    PartitionCandidates(Vec<CandidateId>),
    /// Indices into the voter pool.
    AddVoters(Vec<usize>),
    /// Indices into the registered voters.
    DeleteVoters(Vec<usize>),
    PartitionVoters(Vec<usize>),
}

impl fmt::Display for ControlAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list<T: fmt::Display>(xs: &[T]) -> String {
            xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        }
        match self {
            ControlAction::AddCandidates(c) => write!(f, "add-candidates [{}]", list(c)),
            ControlAction::DeleteCandidates(c) => write!(f, "delete-candidates [{}]", list(c)),
            ControlAction::PartitionCandidates(c) => write!(f, "partition-candidates [{}]", list(c)),
            ControlAction::AddVoters(v) => write!(f, "add-voters [{}]", list(v)),
            ControlAction::DeleteVoters(v) => write!(f, "delete-voters [{}]", list(v)),
            ControlAction::PartitionVoters(v) => write!(f, "partition-voters [{}]", list(v)),
        }
    }
}

/// Winners of the election over `candidates` (erasing everyone else from
/// the ballots) with the given voters. No candidates means no winners.
pub fn run_subelection(system: ControlSystem, election: &Election, candidates: &[CandidateId], voters: &[&Voter]) -> Result<Vec<CandidateId>> {
    let mut keep = candidates.to_vec();
    keep.sort();
    keep.dedup();
    if keep.is_empty() {
        return Ok(Vec::new());
    }
    let sub = election.subelection(&keep, voters.iter().copied());
    let local = match system {
        ControlSystem::Plurality => scoring_winners(&sub, &family_vector(RuleFamily::Plurality, keep.len())?)?,
        ControlSystem::Condorcet => condorcet_winner(&sub)?.into_iter().collect(),
        ControlSystem::Approval => approval_winners(&sub)?,
    };
    Ok(local.into_iter().map(|c| keep[c.0]).collect())
}

/// The candidates and voters of a final round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinalRound {
    pub candidates: Vec<CandidateId>,
    pub voters: Vec<Voter>,
}

impl FinalRound {
    pub fn winners(&self, system: ControlSystem, election: &Election) -> Result<Vec<CandidateId>> {
        let refs: Vec<&Voter> = self.voters.iter().collect();
        run_subelection(system, election, &self.candidates, &refs)
    }

    /// The round as a standalone election, candidates renumbered.
    pub fn to_election(&self, election: &Election) -> Election {
        election.subelection(&self.candidates, &self.voters)
    }
}

/// Survivors of one side of a partition. An empty side sends nobody on;
/// a candidate block facing zero voters is an ordinary (all-tied) election.
fn survivors(spec: &ControlSpec, election: &Election, candidates: &[CandidateId], voters: &[&Voter], voter_side: bool) -> Result<Vec<CandidateId>> {
    if candidates.is_empty() || (voter_side && voters.is_empty()) {
        return Ok(Vec::new());
    }
    let w = run_subelection(spec.system, election, candidates, voters)?;
    Ok(match spec.tie_rule {
        Some(TieRule::TE) if w.len() != 1 => Vec::new(),
        _ => w,
    })
}

fn in_range<T: Copy + Ord>(items: &[T], allowed: &[T]) -> bool {
    let mut sorted = items.to_vec();
    sorted.sort();
    sorted.windows(2).all(|w| w[0] != w[1]) && items.iter().all(|x| allowed.contains(x))
}

fn malformed(what: &str) -> Error {
    Error::InvalidElection(format!("malformed control action: {what}"))
}

/// The final round produced by a partition action.
pub fn apply_partition(spec: &ControlSpec, inst: &ControlInstance, action: &ControlAction) -> Result<FinalRound> {
    let c = inst.registered();
    let v: Vec<&Voter> = inst.election.voters().iter().collect();
    let e = &inst.election;
    let candidates = match (spec.control_type, action) {
        (ControlType::PartitionCandidates, ControlAction::PartitionCandidates(c1)) => {
            if !in_range(c1, &c) {
                return Err(malformed("first block must be registered candidates"));
            }
            let c2: Vec<CandidateId> = c.iter().copied().filter(|x| !c1.contains(x)).collect();
            let mut fin = survivors(spec, e, c1, &v, false)?;
            fin.extend(c2);
            fin
        }
        (ControlType::RunoffPartitionCandidates, ControlAction::PartitionCandidates(c1)) => {
            if !in_range(c1, &c) {
                return Err(malformed("first block must be registered candidates"));
            }
            let c2: Vec<CandidateId> = c.iter().copied().filter(|x| !c1.contains(x)).collect();
            let mut fin = survivors(spec, e, c1, &v, false)?;
            fin.extend(survivors(spec, e, &c2, &v, false)?);
            fin
        }
        (ControlType::PartitionVoters, ControlAction::PartitionVoters(v1)) => {
            let idx: Vec<usize> = (0..v.len()).collect();
            if !in_range(v1, &idx) {
                return Err(malformed("voter index out of range"));
            }
            let first: Vec<&Voter> = v1.iter().map(|&i| v[i]).collect();
            let second: Vec<&Voter> = idx.iter().filter(|i| !v1.contains(i)).map(|&i| v[i]).collect();
            let mut fin = survivors(spec, e, &c, &first, true)?;
            fin.extend(survivors(spec, e, &c, &second, true)?);
            fin
        }
        _ => return Err(malformed("action does not match the control type")),
    };
    let mut candidates = candidates;
    candidates.sort();
    candidates.dedup();
    Ok(FinalRound {
        candidates,
        voters: inst.election.voters().to_vec(),
    })
}

/// The election (or final round) that results from an action.
pub fn apply_action(spec: &ControlSpec, inst: &ControlInstance, action: &ControlAction) -> Result<FinalRound> {
    if spec.control_type.is_partition() {
        return apply_partition(spec, inst, action);
    }
    let c = inst.registered();
    let v = inst.election.voters();
    let k = inst.limit;
    let (candidates, voters) = match (spec.control_type, action) {
        (ControlType::AddCandidates, ControlAction::AddCandidates(d)) => {
            if !in_range(d, &inst.spoilers) {
                return Err(malformed("added candidates must be spoilers"));
            }
            let mut all = c.clone();
            all.extend(d);
            (all, v.to_vec())
        }
        (ControlType::DeleteCandidates, ControlAction::DeleteCandidates(d)) => {
            let deletable: Vec<CandidateId> = c.iter().copied().filter(|&x| x != inst.target).collect();
            if !in_range(d, &deletable) || d.len() > k {
                return Err(malformed("deleted candidates must be at most the limit and exclude the target"));
            }
            (c.iter().copied().filter(|x| !d.contains(x)).collect(), v.to_vec())
        }
        (ControlType::AddVoters, ControlAction::AddVoters(w)) => {
            let idx: Vec<usize> = (0..inst.voter_pool.len()).collect();
            if !in_range(w, &idx) || w.len() > k {
                return Err(malformed("added voters must come from the pool, at most the limit"));
            }
            let mut all = v.to_vec();
            all.extend(w.iter().map(|&i| inst.voter_pool[i].clone()));
            (c, all)
        }
        (ControlType::DeleteVoters, ControlAction::DeleteVoters(d)) => {
            let idx: Vec<usize> = (0..v.len()).collect();
            if !in_range(d, &idx) || d.len() > k {
                return Err(malformed("deleted voters must exist, at most the limit"));
            }
            let kept = (0..v.len()).filter(|i| !d.contains(i)).map(|i| v[i].clone()).collect();
            (c, kept)
        }
        _ => return Err(malformed("action does not match the control type")),
    };
    let mut candidates = candidates;
    candidates.sort();
    Ok(FinalRound { candidates, voters })
}

/// Final winners after the action.
pub fn outcome(spec: &ControlSpec, inst: &ControlInstance, action: &ControlAction) -> Result<Vec<CandidateId>> {
    apply_action(spec, inst, action)?.winners(spec.system, &inst.election)
}

/// Whether the action reaches the goal: the target becomes the unique
/// winner (constructive) or stops being it (destructive).
pub fn achieves(spec: &ControlSpec, inst: &ControlInstance, action: &ControlAction) -> Result<bool> {
    let unique = outcome(spec, inst, action)? == [inst.target];
    Ok(match spec.goal {
        Goal::Constructive => unique,
        Goal::Destructive => !unique,
    })
}

/// The action that leaves the election as it is (for partitions, the one
/// that reproduces the plain election's verdict).
fn no_op(spec: &ControlSpec, inst: &ControlInstance) -> ControlAction {
    match spec.control_type {
        ControlType::AddCandidates => ControlAction::AddCandidates(vec![]),
        ControlType::DeleteCandidates => ControlAction::DeleteCandidates(vec![]),
        ControlType::PartitionCandidates => ControlAction::PartitionCandidates(vec![]),
        ControlType::RunoffPartitionCandidates => ControlAction::PartitionCandidates(inst.registered()),
        ControlType::AddVoters => ControlAction::AddVoters(vec![]),
        ControlType::DeleteVoters => ControlAction::DeleteVoters(vec![]),
        ControlType::PartitionVoters => ControlAction::PartitionVoters((0..inst.election.num_voters()).collect()),
    }
}

/// Decides the instance with the engine its classification calls for.
pub fn control_decide(spec: &ControlSpec, inst: &ControlInstance, budget: SearchBudget) -> Result<Verdict<ControlAction>> {
    inst.check(spec)?;
    match classify_control(spec) {
        Classification::Immune => {
            let a = no_op(spec, inst);
            Ok(if achieves(spec, inst, &a)? { Verdict::Yes(a) } else { Verdict::No })
        }
        Classification::Resistant => control_search(spec, inst, budget),
        Classification::Vulnerable => {
            let found = vulnerable(spec, inst)?;
            if let Some(a) = &found {
                if !achieves(spec, inst, a)? {
                    return Err(Error::ConstructionUnverified);
                }
            }
            Ok(found.into())
        }
    }
}

/// Turns a subset of the ground set into an action.
type Wrap = Box<dyn Fn(&[usize]) -> ControlAction>;

/// Exhaustive search over the whole action space, smallest action first.
pub fn control_search(spec: &ControlSpec, inst: &ControlInstance, budget: SearchBudget) -> Result<Verdict<ControlAction>> {
    inst.check(spec)?;
    let mut steps = StepCounter::new(budget);
    let c = inst.registered();
    let n = inst.election.num_voters();
    let k = inst.limit;
    let deletable: Vec<CandidateId> = c.iter().copied().filter(|&x| x != inst.target).collect();
    let (ground, max, wrap): (usize, usize, Wrap) = match spec.control_type {
        ControlType::AddCandidates => {
            let d = inst.spoilers.clone();
            (d.len(), d.len(), Box::new(move |s| ControlAction::AddCandidates(s.iter().map(|&i| d[i]).collect())))
        }
        ControlType::DeleteCandidates => {
            let d = deletable.clone();
            (d.len(), k.min(d.len()), Box::new(move |s| ControlAction::DeleteCandidates(s.iter().map(|&i| d[i]).collect())))
        }
        ControlType::PartitionCandidates | ControlType::RunoffPartitionCandidates => {
            let d = c.clone();
            (d.len(), d.len(), Box::new(move |s| ControlAction::PartitionCandidates(s.iter().map(|&i| d[i]).collect())))
        }
        ControlType::AddVoters => {
            let p = inst.voter_pool.len();
            (p, k.min(p), Box::new(|s| ControlAction::AddVoters(s.to_vec())))
        }
        ControlType::DeleteVoters => (n, k.min(n), Box::new(|s| ControlAction::DeleteVoters(s.to_vec()))),
        ControlType::PartitionVoters => (n, n, Box::new(|s| ControlAction::PartitionVoters(s.to_vec()))),
    };
    let mut found = None;
    first_subset(ground, max, &mut steps, &mut |s| {
        let a = wrap(s);
        if achieves(spec, inst, &a)? {
            found = Some(a);
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found.into())
}

/// Visits subsets of `0..n` with at most `max` elements, by size and then
/// lexicographically, until `f` says stop. Returns whether it stopped.
pub(crate) fn first_subset(n: usize, max: usize, steps: &mut StepCounter, f: &mut dyn FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
    fn rec(n: usize, size: usize, from: usize, cur: &mut Vec<usize>, steps: &mut StepCounter, f: &mut dyn FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
        if cur.len() == size {
            steps.tick()?;
            return f(cur);
        }
        for i in from..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            if rec(n, size, i + 1, cur, steps, f)? {
                return Ok(true);
            }
            cur.pop();
        }
        Ok(false)
    }
    for size in 0..=max.min(n) {
        if rec(n, size, 0, &mut Vec::new(), steps, f)? {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Polynomial procedures for the vulnerable entries.

/// Unit-weight tallies over the registered candidates.
struct View<'a> {
    inst: &'a ControlInstance,
    c: CandidateId,
    registered: Vec<CandidateId>,
}

impl<'a> View<'a> {
    fn new(inst: &'a ControlInstance) -> Self {
        View {
            inst,
            c: inst.target,
            registered: inst.registered(),
        }
    }

    fn rivals(&self) -> impl Iterator<Item = CandidateId> + '_ {
        self.registered.iter().copied().filter(move |&x| x != self.c)
    }

    /// Highest-ranked registered candidate on a ranked ballot.
    fn top(&self, v: &Voter) -> Option<CandidateId> {
        let o = v.ballot.as_ranked()?;
        o.ranking().iter().copied().find(|x| self.registered.binary_search(x).is_ok())
    }

    fn prefers(v: &Voter, a: CandidateId, b: CandidateId) -> bool {
        v.ballot.as_ranked().is_some_and(|o| o.prefers(a, b))
    }

    fn approves(v: &Voter, a: CandidateId) -> bool {
        v.ballot.as_approval().is_some_and(|x| x.approves(a))
    }

    fn voters(&self) -> &'a [Voter] {
        self.inst.election.voters()
    }

    /// Registered voters whose top is `x`.
    fn backers(&self, x: CandidateId) -> Vec<usize> {
        (0..self.voters().len()).filter(|&i| self.top(&self.voters()[i]) == Some(x)).collect()
    }

    fn plurality(&self, x: CandidateId) -> usize {
        self.backers(x).len()
    }

    fn approval(&self, x: CandidateId) -> usize {
        self.voters().iter().filter(|v| Self::approves(v, x)).count()
    }

    /// `a` beats `b` head to head over the registered voters.
    fn beats(&self, a: CandidateId, b: CandidateId) -> bool {
        let ab = self.voters().iter().filter(|v| Self::prefers(v, a, b)).count();
        let ba = self.voters().iter().filter(|v| Self::prefers(v, b, a)).count();
        ab > ba
    }

    fn margin(&self, a: CandidateId, b: CandidateId) -> i64 {
        self.voters()
            .iter()
            .map(|v| if Self::prefers(v, a, b) { 1 } else { -1 })
            .sum()
    }
}

fn take<T: Copy>(xs: &[T], n: usize) -> Vec<T> {
    xs[..n].to_vec()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn vulnerable(spec: &ControlSpec, inst: &ControlInstance) -> Result<Option<ControlAction>> {
    use ControlSystem::*;
    use ControlType::*;
    use Goal::*;
    let noop = no_op(spec, inst);
    if !spec.control_type.is_partition() && achieves(spec, inst, &noop)? {
        return Ok(Some(noop));
    }
    let view = View::new(inst);
    let tie = spec.tie_rule;
    Ok(match (spec.system, spec.control_type, spec.goal) {
        (Plurality, AddVoters, Constructive) => plurality_add_voters(&view, None),
        (Plurality, AddVoters, Destructive) => view.rivals().find_map(|d| plurality_add_voters(&view, Some(d))),
        (Plurality, DeleteVoters, Constructive) => plurality_delete_voters_con(&view),
        (Plurality, DeleteVoters, Destructive) => plurality_delete_voters_des(&view),
        (Plurality, PartitionVoters, Constructive) if tie == Some(TieRule::TE) => plurality_partition_con(&view),
        (Plurality, PartitionVoters, Destructive) if tie == Some(TieRule::TE) => {
            plurality_partition_des(spec, &view)?
        }
        (Condorcet, AddCandidates, Destructive) => inst
            .spoilers
            .iter()
            .copied()
            .find(|&d| !view.beats(view.c, d))
            .map(|d| ControlAction::AddCandidates(vec![d])),
        (Condorcet, DeleteCandidates, Constructive) => {
            let lost: Vec<CandidateId> = view.rivals().filter(|&d| !view.beats(view.c, d)).collect();
            (lost.len() <= inst.limit).then_some(ControlAction::DeleteCandidates(lost))
        }
        (Condorcet, PartitionCandidates | RunoffPartitionCandidates, Constructive) => condorcet_partition_con(spec, &view),
        (Condorcet, AddVoters, Destructive) => view.rivals().find_map(|d| {
            let margin = view.margin(view.c, d) as usize;
            let helpers: Vec<usize> = (0..inst.voter_pool.len())
                .filter(|&i| View::prefers(&inst.voter_pool[i], d, view.c))
                .collect();
            (margin <= inst.limit.min(helpers.len())).then(|| ControlAction::AddVoters(take(&helpers, margin)))
        }),
        (Condorcet, DeleteVoters, Destructive) => view.rivals().find_map(|d| {
            let margin = view.margin(view.c, d) as usize;
            let fans: Vec<usize> = (0..view.voters().len())
                .filter(|&i| View::prefers(&view.voters()[i], view.c, d))
                .collect();
            (margin <= inst.limit.min(fans.len())).then(|| ControlAction::DeleteVoters(take(&fans, margin)))
        }),
        (Condorcet, PartitionVoters, Destructive) => condorcet_partition_voters_des(spec, &view)?,
        (Approval, AddCandidates, Destructive) => inst
            .spoilers
            .iter()
            .copied()
            .find(|&d| view.approval(d) >= view.approval(view.c))
            .map(|d| ControlAction::AddCandidates(vec![d])),
        (Approval, DeleteCandidates, Constructive) => {
            let s = view.approval(view.c);
            let high: Vec<CandidateId> = view.rivals().filter(|&d| view.approval(d) >= s).collect();
            (high.len() <= inst.limit).then_some(ControlAction::DeleteCandidates(high))
        }
        (Approval, PartitionCandidates | RunoffPartitionCandidates, Constructive) => approval_partition_con(spec, &view),
        (Approval, AddVoters, Destructive) => view.rivals().find_map(|d| {
            let gap = view.approval(view.c) - view.approval(d);
            let helpers: Vec<usize> = (0..inst.voter_pool.len())
                .filter(|&i| {
                    let v = &inst.voter_pool[i];
                    View::approves(v, d) && !View::approves(v, view.c)
                })
                .collect();
            (gap <= inst.limit.min(helpers.len())).then(|| ControlAction::AddVoters(take(&helpers, gap)))
        }),
        (Approval, DeleteVoters, Destructive) => view.rivals().find_map(|d| {
            let gap = view.approval(view.c) - view.approval(d);
            let fans: Vec<usize> = (0..view.voters().len())
                .filter(|&i| {
                    let v = &view.voters()[i];
                    View::approves(v, view.c) && !View::approves(v, d)
                })
                .collect();
            (gap <= inst.limit.min(fans.len())).then(|| ControlAction::DeleteVoters(take(&fans, gap)))
        }),
        (Approval, PartitionVoters, Destructive) => approval_partition_voters_des(spec, &view)?,
        _ => unreachable!("{spec} is not a vulnerable entry"),
    })
}

/// Constructive: add the target's supporters. Destructive (`Some(d)`): add
/// `d`'s supporters until `d` catches up.
fn plurality_add_voters(view: &View, rival: Option<CandidateId>) -> Option<ControlAction> {
    let inst = view.inst;
    let who = rival.unwrap_or(view.c);
    let pool: Vec<usize> = (0..inst.voter_pool.len())
        .filter(|&i| view.top(&inst.voter_pool[i]) == Some(who))
        .collect();
    match rival {
        None => {
            let added = inst.limit.min(pool.len());
            let best = view.rivals().map(|d| view.plurality(d)).max().unwrap_or(0);
            (view.plurality(view.c) + added > best).then(|| ControlAction::AddVoters(take(&pool, added)))
        }
        Some(d) => {
            let need = view.plurality(view.c).saturating_sub(view.plurality(d));
            (need <= inst.limit.min(pool.len())).then(|| ControlAction::AddVoters(take(&pool, need)))
        }
    }
}

fn plurality_delete_voters_con(view: &View) -> Option<ControlAction> {
    let sc = view.plurality(view.c);
    let mut out = Vec::new();
    for d in view.rivals() {
        let backers = view.backers(d);
        let need = (backers.len() + 1).saturating_sub(sc);
        if need > backers.len() {
            return None;
        }
        out.extend(take(&backers, need));
    }
    (out.len() <= view.inst.limit).then(|| ControlAction::DeleteVoters(sorted(out)))
}

fn plurality_delete_voters_des(view: &View) -> Option<ControlAction> {
    let best = view.rivals().map(|d| view.plurality(d)).max()?;
    let fans = view.backers(view.c);
    let need = fans.len().saturating_sub(best);
    (need <= view.inst.limit).then(|| ControlAction::DeleteVoters(take(&fans, need)))
}

/// Ties-eliminate, constructive. The target must win one half outright
/// (say `V1`, with `t` of its supporters); the other half must then produce
/// no unique winner or one the target beats head to head.
fn plurality_partition_con(view: &View) -> Option<ControlAction> {
    let fans = view.backers(view.c);
    let sc = fans.len();
    let rivals: Vec<CandidateId> = view.rivals().collect();
    let backers: Vec<Vec<usize>> = rivals.iter().map(|&d| view.backers(d)).collect();
    let beaten: Vec<bool> = rivals.iter().map(|&d| view.beats(view.c, d)).collect();
    for t in 1..=sc {
        let rest_c = sc - t;
        // each rival keeps between `low` and all of its backers in V2
        let low: Vec<usize> = backers.iter().map(|b| (b.len() + 1).saturating_sub(t)).collect();
        let floor = low.iter().copied().max().unwrap_or(0).max(rest_c);
        let mut top: Vec<Option<usize>> = Vec::new();
        if rest_c >= floor {
            top.push(None);
        }
        top.extend((0..rivals.len()).filter(|&i| backers[i].len() >= floor).map(Some));
        let mut in_v2 = low.clone();
        if top.len() >= 2 {
            for slot in &top[..2] {
                if let Some(i) = *slot {
                    in_v2[i] = floor;
                }
            }
        } else if top.len() == 1 {
            match top[0] {
                None => {}
                Some(i) if beaten[i] => in_v2[i] = backers[i].len(),
                Some(_) => continue,
            }
        } else {
            continue;
        }
        let mut v1 = take(&fans, t);
        for (i, b) in backers.iter().enumerate() {
            v1.extend(take(b, b.len() - in_v2[i]));
        }
        return Some(ControlAction::PartitionVoters(sorted(v1)));
    }
    None
}

/// Ties-eliminate, destructive: either the target survives neither half,
/// or it survives one half and meets a rival it does not beat.
fn plurality_partition_des(spec: &ControlSpec, view: &View) -> Result<Option<ControlAction>> {
    let inst = view.inst;
    let fans = view.backers(view.c);
    let sc = fans.len();
    let plain = ControlAction::PartitionVoters(vec![]);
    if achieves(spec, inst, &plain)? {
        return Ok(Some(plain));
    }
    let rivals: Vec<CandidateId> = view.rivals().collect();
    let backers: Vec<Vec<usize>> = rivals.iter().map(|&d| view.backers(d)).collect();
    for t in 0..=sc {
        for x in 0..rivals.len() {
            for y in 0..rivals.len() {
                if x != y && backers[x].len() >= t && backers[y].len() >= sc - t {
                    let mut v1 = take(&fans, t);
                    v1.extend(take(&backers[x], t));
                    return Ok(Some(ControlAction::PartitionVoters(sorted(v1))));
                }
            }
        }
    }
    for t in 1..=sc {
        for b in 0..rivals.len() {
            if view.beats(view.c, rivals[b]) {
                continue;
            }
            let others = (0..rivals.len())
                .filter(|&y| y != b)
                .map(|y| (backers[y].len() + 1).saturating_sub(t))
                .max()
                .unwrap_or(0);
            if backers[b].len() > others.max(sc - t) {
                let mut v1 = take(&fans, t);
                for (y, bk) in backers.iter().enumerate() {
                    if y != b {
                        v1.extend(take(bk, bk.len().min(t - 1)));
                    }
                }
                return Ok(Some(ControlAction::PartitionVoters(sorted(v1))));
            }
        }
    }
    Ok(None)
}

/// Everyone the target fails to beat must sit in the block facing a
/// preliminary round whose Condorcet winner (if any) the target beats.
fn condorcet_partition_con(spec: &ControlSpec, view: &View) -> Option<ControlAction> {
    let lost: Vec<CandidateId> = view.rivals().filter(|&d| !view.beats(view.c, d)).collect();
    let mut block = lost.clone();
    if !lost.is_empty() {
        let champion = lost
            .iter()
            .copied()
            .find(|&w| lost.iter().all(|&l| l == w || view.beats(w, l)));
        if let Some(w) = champion {
            let spoiler = view.rivals().find(|&x| !lost.contains(&x) && !view.beats(w, x))?;
            block.push(spoiler);
        }
    }
    Some(partition_around(spec, view, block))
}

/// `block` goes into the preliminary round (partition) or into the half
/// without the target (run-off).
fn partition_around(spec: &ControlSpec, view: &View, mut block: Vec<CandidateId>) -> ControlAction {
    block.sort();
    if spec.control_type == ControlType::RunoffPartitionCandidates {
        let rest = view.registered.iter().copied().filter(|x| !block.contains(x)).collect();
        ControlAction::PartitionCandidates(rest)
    } else {
        ControlAction::PartitionCandidates(block)
    }
}

fn approval_partition_con(spec: &ControlSpec, view: &View) -> Option<ControlAction> {
    let s = view.approval(view.c);
    let high: Vec<CandidateId> = view.rivals().filter(|&d| view.approval(d) >= s).collect();
    if let Some(best) = high.iter().map(|&d| view.approval(d)).max() {
        if high.iter().filter(|&&d| view.approval(d) == best).count() < 2 {
            return None;
        }
    }
    Some(partition_around(spec, view, high))
}

/// The target is the Condorcet winner; it must lose (or tie) against some
/// `d1` in `V1` and some other `d2` in `V2`.
fn condorcet_partition_voters_des(spec: &ControlSpec, view: &View) -> Result<Option<ControlAction>> {
    let inst = view.inst;
    let n = view.voters().len();
    let everyone = ControlAction::PartitionVoters((0..n).collect());
    if achieves(spec, inst, &everyone)? {
        return Ok(Some(everyone));
    }
    let rivals: Vec<CandidateId> = view.rivals().collect();
    for &d1 in &rivals {
        for &d2 in &rivals {
            if d1 == d2 {
                continue;
            }
            let mut kinds: [Vec<usize>; 4] = Default::default();
            for (i, v) in view.voters().iter().enumerate() {
                let a = View::prefers(v, view.c, d1);
                let b = View::prefers(v, view.c, d2);
                kinds[match (a, b) {
                    (true, true) => 0,
                    (true, false) => 1,
                    (false, true) => 2,
                    (false, false) => 3,
                }]
                .push(i);
            }
            let [p, q, r, u] = [0, 1, 2, 3].map(|k| kinds[k].len() as i64);
            // z = (++ in V1) - (-- in V1); V1 holds every (-+) voter, V2 every (+-)
            let z = (-u).max(p - u - q);
            if z > p.min(r) {
                continue;
            }
            let p1 = z.max(0) as usize;
            let u1 = (p1 as i64 - z) as usize;
            let mut v1 = take(&kinds[0], p1);
            v1.extend(take(&kinds[3], u1));
            v1.extend(&kinds[2]);
            return Ok(Some(ControlAction::PartitionVoters(sorted(v1))));
        }
    }
    Ok(None)
}

/// The target wins uniquely on approval score; it must fail to survive in
/// both halves. For each pair of rivals a dynamic program over voters
/// tracks, per score gap against `d1` in `V1`, the smallest gap against
/// `d2` in `V2`.
fn approval_partition_voters_des(spec: &ControlSpec, view: &View) -> Result<Option<ControlAction>> {
    let inst = view.inst;
    let n = view.voters().len();
    let everyone = ControlAction::PartitionVoters((0..n).collect());
    if achieves(spec, inst, &everyone)? {
        return Ok(Some(everyone));
    }
    let strict = spec.tie_rule == Some(TieRule::TP);
    let ok = |gap: i64| if strict { gap < 0 } else { gap <= 0 };
    let width = 2 * n + 1;
    let rivals: Vec<CandidateId> = view.rivals().collect();
    let a = |v: &Voter, x: CandidateId| i64::from(View::approves(v, x));
    for &d1 in &rivals {
        for &d2 in &rivals {
            if d1 == d2 {
                continue;
            }
            // best[f1 + n] = least f2; parent records (previous f1, side)
            let mut best: Vec<Option<i64>> = vec![None; width];
            best[n] = Some(0);
            let mut parents: Vec<Vec<Option<(usize, bool)>>> = Vec::with_capacity(n);
            for v in view.voters() {
                let e1 = a(v, view.c) - a(v, d1);
                let e2 = a(v, view.c) - a(v, d2);
                let mut next = vec![None; width];
                let mut par = vec![None; width];
                for (f1, &f2) in best.iter().enumerate() {
                    let Some(f2) = f2 else { continue };
                    let into_v1 = (f1 as i64 + e1) as usize;
                    if next[into_v1].is_none_or(|cur| f2 < cur) {
                        next[into_v1] = Some(f2);
                        par[into_v1] = Some((f1, true));
                    }
                    if next[f1].is_none_or(|cur| f2 + e2 < cur) {
                        next[f1] = Some(f2 + e2);
                        par[f1] = Some((f1, false));
                    }
                }
                best = next;
                parents.push(par);
            }
            let hit = (0..width).find(|&f1| ok(f1 as i64 - n as i64) && best[f1].is_some_and(ok));
            if let Some(mut f1) = hit {
                let mut v1 = Vec::new();
                for i in (0..n).rev() {
                    let (prev, side) = parents[i][f1].expect("reachable state has a parent");
                    if side {
                        v1.push(i);
                    }
                    f1 = prev;
                }
                return Ok(Some(ControlAction::PartitionVoters(sorted(v1))));
            }
        }
    }
    Ok(None)
}
