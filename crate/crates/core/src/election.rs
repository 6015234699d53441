//! Election data model and winner determination for scoring protocols,
//! approval voting, Condorcet and majority.
//!
//! Candidates are addressed by dense indices `0..m`; names only matter for
//! I/O. Voters are identified by their position in the voter list. All
//! tallies are exact integers: a voter of weight `w` contributes `w` times
//! its points, and is a single indivisible object everywhere else.

use std::fmt;

use crate::error::{Error, Result};

/// Index of a candidate within one election.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateId(pub usize);

impl CandidateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Candidate {
    pub id: CandidateId,
    pub name: String,
}

/// A strict ranking of every candidate, most preferred first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearOrder(Vec<CandidateId>);

impl LinearOrder {
    /// Builds an order over `m` candidates, rejecting repeats and omissions.
    pub fn new(ranking: Vec<CandidateId>, m: usize) -> Result<Self> {
        if ranking.len() != m {
            return Err(Error::InvalidBallot(format!(
                "ranking lists {} candidates, expected {}",
                ranking.len(),
                m
            )));
        }
        let mut seen = vec![false; m];
        for &c in &ranking {
            if c.0 >= m {
                return Err(Error::UnknownCandidate(c));
            }
            if std::mem::replace(&mut seen[c.0], true) {
                return Err(Error::InvalidBallot(format!("candidate {c} ranked twice")));
            }
        }
        Ok(LinearOrder(ranking))
    }

    pub fn from_indices(ranking: &[usize], m: usize) -> Result<Self> {
        Self::new(ranking.iter().map(|&i| CandidateId(i)).collect(), m)
    }

    /// The identity order `0 > 1 > ... > m-1`.
    pub fn identity(m: usize) -> Self {
        LinearOrder((0..m).map(CandidateId).collect())
    }

    pub fn ranking(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn top(&self) -> Option<CandidateId> {
        self.0.first().copied()
    }

    /// `positions()[c]` is the 0-based rank of candidate `c`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, c) in self.0.iter().enumerate() {
            pos[c.0] = i;
        }
        pos
    }

    pub fn position_of(&self, c: CandidateId) -> Option<usize> {
        self.0.iter().position(|&x| x == c)
    }

    pub fn prefers(&self, a: CandidateId, b: CandidateId) -> bool {
        for &x in &self.0 {
            if x == a {
                return true;
            }
            if x == b {
                return false;
            }
        }
        false
    }

    /// Moves `c` to the front, keeping the relative order of everyone else.
    pub fn with_top(&self, c: CandidateId) -> LinearOrder {
        let mut r = Vec::with_capacity(self.0.len());
        r.push(c);
        r.extend(self.0.iter().copied().filter(|&x| x != c));
        LinearOrder(r)
    }

    pub(crate) fn from_vec_unchecked(ranking: Vec<CandidateId>) -> Self {
        LinearOrder(ranking)
    }
}

/// One approval bit per candidate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ApprovalVector(Vec<bool>);

impl ApprovalVector {
    pub fn new(approvals: Vec<bool>) -> Self {
        ApprovalVector(approvals)
    }

    pub fn only(c: CandidateId, m: usize) -> Self {
        let mut v = vec![false; m];
        v[c.0] = true;
        ApprovalVector(v)
    }

    pub fn approvals(&self) -> &[bool] {
        &self.0
    }

    pub fn approves(&self, c: CandidateId) -> bool {
        self.0.get(c.0).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ballot {
    Ranked(LinearOrder),
    Approval(ApprovalVector),
}

impl Ballot {
    pub fn as_ranked(&self) -> Option<&LinearOrder> {
        match self {
            Ballot::Ranked(o) => Some(o),
            Ballot::Approval(_) => None,
        }
    }

    pub fn as_approval(&self) -> Option<&ApprovalVector> {
        match self {
            Ballot::Approval(a) => Some(a),
            Ballot::Ranked(_) => None,
        }
    }

    /// Erases every candidate not in `keep`; survivors are renumbered to
    /// their position in `keep`.
    pub fn restrict(&self, keep: &[CandidateId], m: usize) -> Ballot {
        let mut new_index = vec![usize::MAX; m];
        for (i, c) in keep.iter().enumerate() {
            new_index[c.0] = i;
        }
        match self {
            Ballot::Ranked(o) => Ballot::Ranked(LinearOrder(
                o.0.iter()
                    .filter(|c| new_index[c.0] != usize::MAX)
                    .map(|c| CandidateId(new_index[c.0]))
                    .collect(),
            )),
            Ballot::Approval(a) => {
                Ballot::Approval(ApprovalVector(keep.iter().map(|c| a.0[c.0]).collect()))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Voter {
    pub ballot: Ballot,
    pub weight: u64,
    pub price: u64,
}

impl Voter {
    pub fn new(ballot: Ballot) -> Self {
        Voter {
            ballot,
            weight: 1,
            price: 1,
        }
    }

    pub fn ranked(order: LinearOrder) -> Self {
        Self::new(Ballot::Ranked(order))
    }

    pub fn approval(v: ApprovalVector) -> Self {
        Self::new(Ballot::Approval(v))
    }

    pub fn with_weight(mut self, weight: u64) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_price(mut self, price: u64) -> Self {
        self.price = price;
        self
    }
}

/// A candidate set together with an ordered list of voters.
///
/// Empty candidate sets and empty voter lists are both legal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Election {
    candidates: Vec<Candidate>,
    voters: Vec<Voter>,
}

impl Election {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, voters: Vec<Voter>) -> Result<Self> {
        let mut e = Self::with_candidates(names)?;
        for v in voters {
            e.push_voter(v)?;
        }
        Ok(e)
    }

    /// Candidates with no voters yet. Names must be distinct and nonempty.
    pub fn with_candidates<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut candidates: Vec<Candidate> = Vec::new();
        for (i, name) in names.into_iter().enumerate() {
            let name = name.into();
            if name.is_empty() {
                return Err(Error::InvalidElection("empty candidate name".into()));
            }
            if candidates.iter().any(|c| c.name == name) {
                return Err(Error::InvalidElection(format!("duplicate candidate `{name}`")));
            }
            candidates.push(Candidate {
                id: CandidateId(i),
                name,
            });
        }
        Ok(Election {
            candidates,
            voters: Vec::new(),
        })
    }

    /// Unit voters from `(count, "a > b > c")` rows.
    pub fn from_rankings(names: &[&str], rows: &[(usize, &str)]) -> Result<Self> {
        let mut e = Self::with_candidates(names.iter().copied())?;
        for &(count, text) in rows {
            let order = e.parse_order(text)?;
            for _ in 0..count {
                e.push_voter(Voter::ranked(order.clone()))?;
            }
        }
        Ok(e)
    }

    pub fn push_voter(&mut self, v: Voter) -> Result<()> {
        self.check_voter(&v)?;
        self.voters.push(v);
        Ok(())
    }

    pub fn check_voter(&self, v: &Voter) -> Result<()> {
        let m = self.candidates.len();
        if v.weight == 0 {
            return Err(Error::InvalidBallot("voter weight must be positive".into()));
        }
        match &v.ballot {
            Ballot::Ranked(o) => {
                LinearOrder::new(o.0.clone(), m)?;
            }
            Ballot::Approval(a) => {
                if a.len() != m {
                    return Err(Error::InvalidBallot(format!(
                        "approval vector has {} bits, expected {}",
                        a.len(),
                        m
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn voters(&self) -> &[Voter] {
        &self.voters
    }

    pub fn voters_mut(&mut self) -> &mut Vec<Voter> {
        &mut self.voters
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn num_voters(&self) -> usize {
        self.voters.len()
    }

    pub fn candidate_ids(&self) -> impl Iterator<Item = CandidateId> + '_ {
        (0..self.candidates.len()).map(CandidateId)
    }

    pub fn total_weight(&self) -> u64 {
        self.voters.iter().map(|v| v.weight).sum()
    }

    pub fn name(&self, c: CandidateId) -> &str {
        &self.candidates[c.0].name
    }

    pub fn find(&self, name: &str) -> Option<CandidateId> {
        self.candidates.iter().find(|c| c.name == name).map(|c| c.id)
    }

    pub fn lookup(&self, name: &str) -> Result<CandidateId> {
        self.find(name)
            .ok_or_else(|| Error::InvalidElection(format!("unknown candidate `{name}`")))
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        c.0 < self.candidates.len()
    }

    pub fn require(&self, c: CandidateId) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::UnknownCandidate(c))
        }
    }

    /// Parses `"a > b > c"` against this election's candidate names.
    pub fn parse_order(&self, text: &str) -> Result<LinearOrder> {
        let ranking = text
            .split('>')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.lookup(s))
            .collect::<Result<Vec<_>>>()?;
        LinearOrder::new(ranking, self.num_candidates())
    }

    pub fn all_ranked(&self) -> bool {
        self.voters.iter().all(|v| matches!(v.ballot, Ballot::Ranked(_)))
    }

    pub fn all_approval(&self) -> bool {
        self.voters.iter().all(|v| matches!(v.ballot, Ballot::Approval(_)))
    }

    pub(crate) fn require_ranked(&self) -> Result<()> {
        if self.all_ranked() {
            Ok(())
        } else {
            Err(Error::BallotKind {
                expected: "linear-order",
            })
        }
    }

    pub(crate) fn require_approval(&self) -> Result<()> {
        if self.all_approval() {
            Ok(())
        } else {
            Err(Error::BallotKind { expected: "approval" })
        }
    }

    pub(crate) fn require_unit_weights(&self) -> Result<()> {
        if self.voters.iter().all(|v| v.weight == 1) {
            Ok(())
        } else {
            Err(Error::WeightedNotSupported)
        }
    }

    /// Ranked ballots, in voter order. Panics on approval ballots; callers
    /// check `require_ranked` first.
    pub(crate) fn orders(&self) -> impl Iterator<Item = (&LinearOrder, u64)> + '_ {
        self.voters.iter().map(|v| match &v.ballot {
            Ballot::Ranked(o) => (o, v.weight),
            Ballot::Approval(_) => unreachable!("ranked ballots checked by caller"),
        })
    }

    /// The election over `keep` only (renumbered in `keep` order), with the
    /// given voters' ballots restricted accordingly.
    pub fn subelection<'a>(&self, keep: &[CandidateId], voters: impl IntoIterator<Item = &'a Voter>) -> Election {
        let m = self.num_candidates();
        let candidates = keep
            .iter()
            .enumerate()
            .map(|(i, c)| Candidate {
                id: CandidateId(i),
                name: self.candidates[c.0].name.clone(),
            })
            .collect();
        let voters = voters
            .into_iter()
            .map(|v| Voter {
                ballot: v.ballot.restrict(keep, m),
                weight: v.weight,
                price: v.price,
            })
            .collect();
        Election { candidates, voters }
    }

    /// Same candidates, different voter list.
    pub fn with_voters(&self, voters: Vec<Voter>) -> Election {
        Election {
            candidates: self.candidates.clone(),
            voters,
        }
    }
}

/// Points awarded per ballot position; must be non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScoringVector(Vec<u64>);

impl ScoringVector {
    pub fn new(alpha: Vec<u64>) -> Result<Self> {
        if alpha.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotMonotone);
        }
        Ok(ScoringVector(alpha))
    }

    pub fn alpha(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `alpha_2 = ... = alpha_m` (vacuous for m <= 2).
    pub fn tail_constant(&self) -> bool {
        self.0.iter().skip(1).all(|&a| a == self.0[1])
    }

    /// `alpha_1 = ... = alpha_m`.
    pub fn all_equal(&self) -> bool {
        self.0.iter().all(|&a| a == self.0[0])
    }

    /// Plurality up to argmax-preserving transforms.
    pub fn is_plurality_like(&self) -> bool {
        self.tail_constant()
    }
}

impl fmt::Display for ScoringVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum RuleFamily {
    Plurality,
    Veto,
    Borda,
    KApproval(usize),
}

/// The family's scoring vector for `m` candidates.
pub fn family_vector(family: RuleFamily, m: usize) -> Result<ScoringVector> {
    let alpha = match family {
        RuleFamily::Plurality => (0..m).map(|i| u64::from(i == 0)).collect(),
        RuleFamily::Veto => (0..m).map(|i| u64::from(i + 1 < m)).collect(),
        RuleFamily::Borda => (0..m).map(|i| (m - 1 - i) as u64).collect(),
        RuleFamily::KApproval(k) => {
            if k > m {
                return Err(Error::KExceedsCandidates { k, m });
            }
            (0..m).map(|i| u64::from(i < k)).collect()
        }
    };
    ScoringVector::new(alpha)
}

/// Total points per candidate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScoreTable(Vec<u64>);

impl ScoreTable {
    pub fn new(points: Vec<u64>) -> Self {
        ScoreTable(points)
    }

    pub fn get(&self, c: CandidateId) -> u64 {
        self.0[c.0]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// All candidates tied at the maximum, ascending.
    pub fn argmax(&self) -> Vec<CandidateId> {
        let Some(&best) = self.0.iter().max() else {
            return Vec::new();
        };
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == best)
            .map(|(i, _)| CandidateId(i))
            .collect()
    }
}

pub fn scores(election: &Election, alpha: &ScoringVector) -> Result<ScoreTable> {
    election.require_ranked()?;
    let m = election.num_candidates();
    if alpha.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: alpha.len(),
        });
    }
    let mut points = vec![0u64; m];
    for (order, w) in election.orders() {
        for (pos, c) in order.ranking().iter().enumerate() {
            points[c.0] += w * alpha.0[pos];
        }
    }
    Ok(ScoreTable(points))
}

pub fn scoring_winners(election: &Election, alpha: &ScoringVector) -> Result<Vec<CandidateId>> {
    Ok(scores(election, alpha)?.argmax())
}

/// Weighted approval counts.
pub fn approval_scores(election: &Election) -> Result<ScoreTable> {
    election.require_approval()?;
    let mut points = vec![0u64; election.num_candidates()];
    for v in election.voters() {
        if let Ballot::Approval(a) = &v.ballot {
            for (i, &yes) in a.approvals().iter().enumerate() {
                if yes {
                    points[i] += v.weight;
                }
            }
        }
    }
    Ok(ScoreTable(points))
}

pub fn approval_winners(election: &Election) -> Result<Vec<CandidateId>> {
    Ok(approval_scores(election)?.argmax())
}

/// `get(d, e)` is the total weight of voters ranking `d` above `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairwiseMatrix {
    m: usize,
    counts: Vec<u64>,
    total: u64,
}

impl PairwiseMatrix {
    pub fn get(&self, d: CandidateId, e: CandidateId) -> u64 {
        self.counts[d.0 * self.m + e.0]
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn total_weight(&self) -> u64 {
        self.total
    }

    /// Strict weighted majority of `d` over `e`.
    pub fn beats(&self, d: CandidateId, e: CandidateId) -> bool {
        2 * self.get(d, e) > self.total
    }
}

pub fn pairwise_matrix(election: &Election) -> Result<PairwiseMatrix> {
    election.require_ranked()?;
    let m = election.num_candidates();
    let mut counts = vec![0u64; m * m];
    for (order, w) in election.orders() {
        let r = order.ranking();
        for i in 0..m {
            for j in (i + 1)..m {
                counts[r[i].0 * m + r[j].0] += w;
            }
        }
    }
    Ok(PairwiseMatrix {
        m,
        counts,
        total: election.total_weight(),
    })
}

pub(crate) fn condorcet_from_matrix(n: &PairwiseMatrix) -> Option<CandidateId> {
    let m = n.size();
    (0..m).map(CandidateId).find(|&c| {
        (0..m)
            .map(CandidateId)
            .all(|d| d == c || n.beats(c, d))
    })
}

pub fn condorcet_winner(election: &Election) -> Result<Option<CandidateId>> {
    Ok(condorcet_from_matrix(&pairwise_matrix(election)?))
}

/// Candidates whose plurality score exceeds half the total weight.
pub fn majority_winners(election: &Election) -> Result<Vec<CandidateId>> {
    let alpha = family_vector(RuleFamily::Plurality, election.num_candidates())?;
    let total = election.total_weight();
    let table = scores(election, &alpha)?;
    Ok(election
        .candidate_ids()
        .filter(|&c| 2 * table.get(c) > total)
        .collect())
}

/// Whether "winning" means being in the winner set or being all of it.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum WinnerMode {
    #[default]
    CoWinner,
    Unique,
}

impl WinnerMode {
    pub fn accepts(self, winners: &[CandidateId], c: CandidateId) -> bool {
        match self {
            WinnerMode::CoWinner => winners.contains(&c),
            WinnerMode::Unique => winners == [c],
        }
    }

    /// Does a score of `target` suffice against a rival scoring `rival`?
    #[inline]
    pub(crate) fn holds(self, target: u64, rival: u64) -> bool {
        match self {
            WinnerMode::CoWinner => target >= rival,
            WinnerMode::Unique => target > rival,
        }
    }
}

/// An election rule that can be tallied over one profile.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VotingRule {
    Scoring(ScoringVector),
    Approval,
}

impl VotingRule {
    pub fn winners(&self, election: &Election) -> Result<Vec<CandidateId>> {
        match self {
            VotingRule::Scoring(alpha) => scoring_winners(election, alpha),
            VotingRule::Approval => approval_winners(election),
        }
    }

    pub fn points(&self, election: &Election) -> Result<ScoreTable> {
        match self {
            VotingRule::Scoring(alpha) => scores(election, alpha),
            VotingRule::Approval => approval_scores(election),
        }
    }
}
