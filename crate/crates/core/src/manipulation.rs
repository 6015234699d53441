//! Constructive coalition manipulation for scoring protocols and approval.
//!
//! A scoring vector with `alpha_2 = ... = alpha_m` makes weighted
//! manipulation easy: every manipulator puts the target first and nothing
//! else matters. Every other vector is NP-complete for weighted voters and
//! goes through an exact search with an explicit step budget.

use std::collections::HashSet;

use crate::election::{
    ApprovalVector, Ballot, CandidateId, Election, LinearOrder, ScoringVector, Voter, VotingRule,
    WinnerMode,
};
use crate::error::{Error, Result};
use crate::verdict::{SearchBudget, StepCounter, Verdict};

/// Fixed voters plus a coalition given by its weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManipulationInstance {
    pub election: Election,
    pub manipulator_weights: Vec<u64>,
    pub target: CandidateId,
    pub rule: VotingRule,
    pub mode: WinnerMode,
}

impl ManipulationInstance {
    pub fn new(election: Election, manipulator_weights: Vec<u64>, target: CandidateId, rule: VotingRule) -> Result<Self> {
        election.require(target)?;
        if manipulator_weights.contains(&0) {
            return Err(Error::InvalidBallot("manipulator weight must be positive".into()));
        }
        if let VotingRule::Scoring(alpha) = &rule {
            if alpha.len() != election.num_candidates() {
                return Err(Error::DimensionMismatch {
                    expected: election.num_candidates(),
                    found: alpha.len(),
                });
            }
        }
        Ok(ManipulationInstance {
            election,
            manipulator_weights,
            target,
            rule,
            mode: WinnerMode::CoWinner,
        })
    }

    pub fn with_mode(mut self, mode: WinnerMode) -> Self {
        self.mode = mode;
        self
    }

    /// The election with the coalition's ballots appended.
    pub fn apply(&self, ballots: &[Ballot]) -> Result<Election> {
        if ballots.len() != self.manipulator_weights.len() {
            return Err(Error::InvalidBallot("one ballot per manipulator expected".into()));
        }
        let mut e = self.election.clone();
        for (b, &w) in ballots.iter().zip(&self.manipulator_weights) {
            e.push_voter(Voter::new(b.clone()).with_weight(w))?;
        }
        Ok(e)
    }

    /// Whether casting `ballots` makes the target win.
    pub fn succeeds_with(&self, ballots: &[Ballot]) -> Result<bool> {
        let e = self.apply(ballots)?;
        Ok(self.mode.accepts(&self.rule.winners(&e)?, self.target))
    }

    fn alpha(&self) -> Result<&ScoringVector> {
        match &self.rule {
            VotingRule::Scoring(a) => Ok(a),
            VotingRule::Approval => Err(Error::RuleMismatch("scoring rule expected".into())),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Complexity {
    PolynomialTime,
    NpComplete,
}

impl std::fmt::Display for Complexity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Complexity::PolynomialTime => "P",
            Complexity::NpComplete => "NP-complete",
        })
    }
}

/// Weighted manipulation is easy exactly when `alpha_2 = ... = alpha_m`.
pub fn classify_manipulation(alpha: &ScoringVector) -> Result<Complexity> {
    if alpha.is_empty() {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    Ok(if alpha.tail_constant() {
        Complexity::PolynomialTime
    } else {
        Complexity::NpComplete
    })
}

fn target_first(target: CandidateId, m: usize) -> Ballot {
    Ballot::Ranked(LinearOrder::identity(m).with_top(target))
}

/// Everyone votes for the target; that is optimal whenever only the top
/// position earns a distinct score.
pub fn manipulate_plurality(inst: &ManipulationInstance) -> Result<Verdict<Vec<Ballot>>> {
    let alpha = inst.alpha()?;
    if !alpha.tail_constant() {
        return Err(Error::RuleMismatch(format!("{alpha} is not plurality-like")));
    }
    inst.election.require_ranked()?;
    let m = inst.election.num_candidates();
    let ballots = vec![target_first(inst.target, m); inst.manipulator_weights.len()];
    Ok(if inst.succeeds_with(&ballots)? {
        Verdict::Yes(ballots)
    } else {
        Verdict::No
    })
}

/// All approve only the target.
pub fn manipulate_approval(inst: &ManipulationInstance) -> Result<Verdict<Vec<Ballot>>> {
    if inst.rule != VotingRule::Approval {
        return Err(Error::RuleMismatch("approval rule expected".into()));
    }
    inst.election.require_approval()?;
    let m = inst.election.num_candidates();
    let ballots = vec![
        Ballot::Approval(ApprovalVector::only(inst.target, m));
        inst.manipulator_weights.len()
    ];
    Ok(if inst.succeeds_with(&ballots)? {
        Verdict::Yes(ballots)
    } else {
        Verdict::No
    })
}

/// All orders, deduplicated by the points they award.
fn distinct_ballots(alpha: &ScoringVector, m: usize, fixed_top: Option<CandidateId>) -> Vec<(LinearOrder, Vec<u64>)> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut visit = |p: &[usize]| {
        if let Some(t) = fixed_top {
            if p[0] != t.0 {
                return;
            }
        }
        let mut pts = vec![0u64; m];
        for (pos, &c) in p.iter().enumerate() {
            pts[c] = alpha.alpha()[pos];
        }
        if seen.insert(pts.clone()) {
            let order = LinearOrder::from_vec_unchecked(p.iter().map(|&c| CandidateId(c)).collect());
            out.push((order, pts));
        }
    };
    permutations(&mut perm, 0, &mut visit);
    out
}

pub(crate) fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

fn base_scores(inst: &ManipulationInstance, alpha: &ScoringVector) -> Result<Vec<u64>> {
    Ok(crate::election::scores(&inst.election, alpha)?.as_slice().to_vec())
}

fn target_wins(points: &[u64], target: CandidateId, mode: WinnerMode) -> bool {
    let t = points[target.0];
    points
        .iter()
        .enumerate()
        .all(|(i, &p)| i == target.0 || mode.holds(t, p))
}

/// Unweighted coalitions: tries every multiset of ballots (ballots awarding
/// identical points are interchangeable). Polynomial in the coalition size
/// for a fixed number of candidates.
pub fn manipulate_scoring_unweighted(inst: &ManipulationInstance, budget: SearchBudget) -> Result<Verdict<Vec<Ballot>>> {
    if inst.manipulator_weights.iter().any(|&w| w != 1) {
        return Err(Error::WeightedNotSupported);
    }
    let alpha = inst.alpha()?;
    inst.election.require_ranked()?;
    let m = inst.election.num_candidates();
    let options = distinct_ballots(alpha, m, None);
    let mut points = base_scores(inst, alpha)?;
    let mut picks = Vec::new();
    let mut steps = StepCounter::new(budget);
    let found = multiset_search(
        &options,
        inst.manipulator_weights.len(),
        0,
        &mut points,
        &mut picks,
        &mut steps,
        &|p| target_wins(p, inst.target, inst.mode),
    )?;
    Ok(if found {
        Verdict::Yes(picks.iter().map(|&i| Ballot::Ranked(options[i].0.clone())).collect())
    } else {
        Verdict::No
    })
}

fn multiset_search(
    options: &[(LinearOrder, Vec<u64>)],
    left: usize,
    from: usize,
    points: &mut [u64],
    picks: &mut Vec<usize>,
    steps: &mut StepCounter,
    wins: &impl Fn(&[u64]) -> bool,
) -> Result<bool> {
    steps.tick()?;
    if left == 0 {
        return Ok(wins(points));
    }
    for i in from..options.len() {
        for (p, x) in points.iter_mut().zip(&options[i].1) {
            *p += x;
        }
        picks.push(i);
        let hit = multiset_search(options, left - 1, i, points, picks, steps, wins);
        for (p, x) in points.iter_mut().zip(&options[i].1) {
            *p -= x;
        }
        if hit? {
            return Ok(true);
        }
        picks.pop();
    }
    Ok(false)
}

/// Weighted coalitions. Easy vectors use the direct algorithm; the rest use
/// an exact search in which every manipulator ranks the target first.
pub fn manipulate_scoring_weighted(inst: &ManipulationInstance, budget: SearchBudget) -> Result<Verdict<Vec<Ballot>>> {
    let alpha = inst.alpha()?;
    if classify_manipulation(alpha)? == Complexity::PolynomialTime {
        return manipulate_plurality(inst);
    }
    inst.election.require_ranked()?;
    let m = inst.election.num_candidates();
    let options = distinct_ballots(alpha, m, Some(inst.target));
    let mut points = base_scores(inst, alpha)?;
    let total: u64 = inst.manipulator_weights.iter().sum();
    let target_final = points[inst.target.0] + total * alpha.alpha()[0];

    // Heaviest first; equal weights pick non-decreasing option indices.
    let mut order: Vec<usize> = (0..inst.manipulator_weights.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(inst.manipulator_weights[i]));
    let weights: Vec<u64> = order.iter().map(|&i| inst.manipulator_weights[i]).collect();
    let mut search = WeightedSearch {
        options: &options,
        weights: &weights,
        target: inst.target,
        target_final,
        floor: *alpha.alpha().last().unwrap_or(&0),
        mode: inst.mode,
        steps: StepCounter::new(budget),
        picks: Vec::new(),
    };
    let remaining: u64 = weights.iter().sum();
    if !search.run(0, &mut points, remaining)? {
        return Ok(Verdict::No);
    }
    let mut ballots = vec![None; weights.len()];
    for (slot, &opt) in order.iter().zip(&search.picks) {
        ballots[*slot] = Some(Ballot::Ranked(options[opt].0.clone()));
    }
    Ok(Verdict::Yes(ballots.into_iter().map(Option::unwrap).collect()))
}

struct WeightedSearch<'a> {
    options: &'a [(LinearOrder, Vec<u64>)],
    weights: &'a [u64],
    target: CandidateId,
    target_final: u64,
    floor: u64,
    mode: WinnerMode,
    steps: StepCounter,
    picks: Vec<usize>,
}

impl WeightedSearch<'_> {
    fn run(&mut self, k: usize, points: &mut [u64], remaining: u64) -> Result<bool> {
        self.steps.tick()?;
        // Every rival still collects at least `floor` per remaining weight unit.
        let t = self.target.0;
        let doomed = points.iter().enumerate().any(|(i, &p)| {
            i != t && !self.mode.holds(self.target_final, p + remaining * self.floor)
        });
        if doomed {
            return Ok(false);
        }
        if k == self.weights.len() {
            return Ok(true);
        }
        let w = self.weights[k];
        let start = match self.picks.last() {
            Some(&prev) if k > 0 && self.weights[k - 1] == w => prev,
            _ => 0,
        };
        // Try options that leave the strongest rival weakest first.
        let mut cand: Vec<(u64, usize)> = (start..self.options.len())
            .map(|i| {
                let worst = points
                    .iter()
                    .zip(&self.options[i].1)
                    .enumerate()
                    .filter(|&(j, _)| j != t)
                    .map(|(_, (p, x))| p + w * x)
                    .max()
                    .unwrap_or(0);
                (worst, i)
            })
            .collect();
        cand.sort();
        for (_, i) in cand {
            for (p, x) in points.iter_mut().zip(&self.options[i].1) {
                *p += w * x;
            }
            self.picks.push(i);
            let hit = self.run(k + 1, points, remaining - w);
            for (p, x) in points.iter_mut().zip(&self.options[i].1) {
                *p -= w * x;
            }
            if hit? {
                return Ok(true);
            }
            self.picks.pop();
        }
        Ok(false)
    }
}

/// Picks the algorithm matching the rule and the coalition.
pub fn manipulate(inst: &ManipulationInstance, budget: SearchBudget) -> Result<Verdict<Vec<Ballot>>> {
    match &inst.rule {
        VotingRule::Approval => manipulate_approval(inst),
        VotingRule::Scoring(alpha) if alpha.tail_constant() => manipulate_plurality(inst),
        VotingRule::Scoring(_) if inst.manipulator_weights.iter().all(|&w| w == 1) => {
            manipulate_scoring_unweighted(inst, budget)
        }
        VotingRule::Scoring(_) => manipulate_scoring_weighted(inst, budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{family_vector, RuleFamily};

    fn sv(v: &[u64]) -> ScoringVector {
        ScoringVector::new(v.to_vec()).unwrap()
    }

    fn plurality(m: usize) -> VotingRule {
        VotingRule::Scoring(family_vector(RuleFamily::Plurality, m).unwrap())
    }

    #[test]
    fn classification() {
        assert_eq!(classify_manipulation(&sv(&[1, 0, 0])).unwrap(), Complexity::PolynomialTime);
        assert_eq!(classify_manipulation(&sv(&[1, 1, 0])).unwrap(), Complexity::NpComplete);
        assert_eq!(classify_manipulation(&sv(&[2, 1, 0])).unwrap(), Complexity::NpComplete);
        assert_eq!(classify_manipulation(&sv(&[1, 0])).unwrap(), Complexity::PolynomialTime);
        assert!(classify_manipulation(&sv(&[])).is_err());
    }

    #[test]
    fn plurality_examples() {
        let e = Election::from_rankings(&["a", "b", "c"], &[(2, "a>b>c")]).unwrap();
        let inst = ManipulationInstance::new(e, vec![1, 1], CandidateId(2), plurality(3)).unwrap();
        let v = manipulate_plurality(&inst).unwrap();
        assert!(inst.succeeds_with(v.witness().unwrap()).unwrap());
        // unique-winner reading fails on the 2-2 tie
        assert_eq!(manipulate_plurality(&inst.clone().with_mode(WinnerMode::Unique)).unwrap(), Verdict::No);

        let e = Election::from_rankings(&["a", "b"], &[(3, "a>b")]).unwrap();
        let inst = ManipulationInstance::new(e, vec![1], CandidateId(1), plurality(2)).unwrap();
        assert_eq!(manipulate_plurality(&inst).unwrap(), Verdict::No);

        let e = Election::with_candidates(["a", "b", "c"]).unwrap();
        let inst = ManipulationInstance::new(e, vec![1], CandidateId(2), plurality(3)).unwrap();
        assert!(manipulate_plurality(&inst).unwrap().is_yes());
    }

    #[test]
    fn borda_coalition_of_five() {
        let e = Election::from_rankings(&["a", "b", "c"], &[(5, "a>b>c"), (1, "c>a>b")]).unwrap();
        let borda = VotingRule::Scoring(sv(&[2, 1, 0]));
        let inst = ManipulationInstance::new(e.clone(), vec![1; 5], CandidateId(1), borda.clone())
            .unwrap()
            .with_mode(WinnerMode::Unique);
        let v = manipulate_scoring_unweighted(&inst, SearchBudget::default()).unwrap();
        let w = v.witness().expect("manipulation exists");
        assert!(inst.succeeds_with(w).unwrap());
        let insincere = vec![Ballot::Ranked(e.parse_order("b>c>a").unwrap()); 5];
        assert!(inst.succeeds_with(&insincere).unwrap());

        let none = ManipulationInstance::new(e.clone(), vec![], CandidateId(0), borda.clone()).unwrap();
        assert_eq!(manipulate_scoring_unweighted(&none, SearchBudget::default()).unwrap(), Verdict::Yes(vec![]));
        let none = ManipulationInstance::new(e, vec![], CandidateId(1), borda).unwrap();
        assert_eq!(manipulate_scoring_unweighted(&none, SearchBudget::default()).unwrap(), Verdict::No);
    }

    #[test]
    fn weighted_veto_search() {
        let e = Election::from_rankings(&["a", "b", "c"], &[(1, "a>b>c"), (1, "b>a>c")]).unwrap();
        let veto = VotingRule::Scoring(sv(&[1, 1, 0]));
        let inst = ManipulationInstance::new(e, vec![2, 2], CandidateId(2), veto).unwrap();
        let v = manipulate_scoring_weighted(&inst, SearchBudget::default()).unwrap();
        let w = v.witness().expect("split vetoes tie all three");
        assert!(inst.succeeds_with(w).unwrap());
        assert_ne!(w[0], w[1]);
        let unique = inst.with_mode(WinnerMode::Unique);
        assert_eq!(manipulate_scoring_weighted(&unique, SearchBudget::default()).unwrap(), Verdict::No);
    }

    #[test]
    fn veto_single_manipulator_cannot_break_tie() {
        // veto scores a=5, b=5, c=4
        let e = Election::from_rankings(
            &["a", "b", "c"],
            &[(2, "b>c>a"), (2, "a>c>b"), (3, "a>b>c")],
        )
        .unwrap();
        let veto = sv(&[1, 1, 0]);
        assert_eq!(crate::election::scores(&e, &veto).unwrap().as_slice(), &[5, 5, 4]);
        let inst = ManipulationInstance::new(e, vec![1], CandidateId(2), VotingRule::Scoring(veto)).unwrap();
        assert_eq!(manipulate_scoring_weighted(&inst, SearchBudget::default()).unwrap(), Verdict::No);
    }

    #[test]
    fn sole_borda_manipulator() {
        let e = Election::with_candidates(["a", "b", "c"]).unwrap();
        let inst = ManipulationInstance::new(e, vec![1], CandidateId(2), VotingRule::Scoring(sv(&[2, 1, 0]))).unwrap();
        assert!(manipulate_scoring_weighted(&inst, SearchBudget::default()).unwrap().is_yes());
    }

    fn approvals(rows: &[&[bool]], m: usize) -> Election {
        let names: Vec<String> = (0..m).map(|i| format!("x{i}")).collect();
        Election::new(
            names,
            rows.iter().map(|r| Voter::approval(ApprovalVector::new(r.to_vec()))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn approval_examples() {
        let e = approvals(&[&[true, false, false], &[true, false, false]], 3);
        let inst = ManipulationInstance::new(e, vec![1, 1], CandidateId(2), VotingRule::Approval).unwrap();
        assert!(manipulate_approval(&inst).unwrap().is_yes());
        let e = approvals(&[&[true, false, false][..]; 3], 3);
        let inst = ManipulationInstance::new(e, vec![1, 1], CandidateId(2), VotingRule::Approval).unwrap();
        assert_eq!(manipulate_approval(&inst).unwrap(), Verdict::No);
        let e = approvals(&[&[false, false, true]], 3);
        let inst = ManipulationInstance::new(e, vec![], CandidateId(2), VotingRule::Approval).unwrap();
        assert!(manipulate_approval(&inst).unwrap().is_yes());
    }

    #[test]
    fn budget_is_reported() {
        let e = Election::from_rankings(&["a", "b", "c", "d"], &[(3, "a>b>c>d"), (3, "b>a>d>c")]).unwrap();
        let inst = ManipulationInstance::new(e, vec![3, 2, 2, 1], CandidateId(3), VotingRule::Scoring(sv(&[3, 2, 1, 0]))).unwrap();
        assert!(matches!(
            manipulate_scoring_weighted(&inst, SearchBudget(2)),
            Err(Error::SearchBudgetExceeded { limit: 2 })
        ));
    }
}
