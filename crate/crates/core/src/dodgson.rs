//! Dodgson scores and winners, and the two-election merge construction.
//!
//! The score solver only ever moves the target candidate upward. Raising
//! `c` by `j` places in one ballot costs `j` switches and gains `c` one
//! vote against exactly the `j` candidates it passes; switches between two
//! other candidates never change any of `c`'s pairwise contests. The score
//! is therefore the cheapest choice of per-ballot raise amounts covering
//! every pairwise deficit, found by branch and bound. The test suite checks
//! this against an unrestricted breadth-first search over switch sequences.

use crate::election::{
    condorcet_from_matrix, pairwise_matrix, CandidateId, Election, LinearOrder, Voter,
};
use crate::error::{Error, Result};
use crate::verdict::{SearchBudget, StepCounter};

/// An election with a distinguished candidate. Ballots are linear orders
/// and every voter has weight 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DodgsonTriple {
    pub election: Election,
    pub distinguished: CandidateId,
}

impl DodgsonTriple {
    pub fn new(election: Election, distinguished: CandidateId) -> Result<Self> {
        election.require(distinguished)?;
        election.require_ranked()?;
        election.require_unit_weights()?;
        Ok(DodgsonTriple {
            election,
            distinguished,
        })
    }
}

/// Minimum number of adjacent switches making `distinguished` a Condorcet
/// winner.
pub fn dodgson_score(triple: &DodgsonTriple) -> Result<u64> {
    dodgson_score_with_budget(triple, SearchBudget::default())
}

pub fn dodgson_score_with_budget(triple: &DodgsonTriple, budget: SearchBudget) -> Result<u64> {
    match capped_score(&triple.election, triple.distinguished, None, budget)? {
        Some(s) => Ok(s),
        None => Err(Error::Unreachable),
    }
}

/// `Ok(None)` means the score exceeds `cap` (or is infinite when `cap` is
/// `None`).
fn capped_score(
    election: &Election,
    c: CandidateId,
    cap: Option<u64>,
    budget: SearchBudget,
) -> Result<Option<u64>> {
    election.require(c)?;
    election.require_ranked()?;
    election.require_unit_weights()?;
    let m = election.num_candidates();
    let n = election.num_voters() as u64;
    let matrix = pairwise_matrix(election)?;
    let need = n / 2 + 1;

    let mut deficit = vec![0u64; m];
    for d in election.candidate_ids().filter(|&d| d != c) {
        deficit[d.0] = need.saturating_sub(matrix.get(c, d));
    }
    let total: u64 = deficit.iter().sum();
    if total == 0 {
        return Ok(Some(0));
    }
    if n == 0 {
        return Ok(None);
    }

    // above[v] lists the candidates ranked over c by voter v, nearest first.
    let above: Vec<Vec<usize>> = election
        .orders()
        .map(|(o, _)| {
            let r = o.ranking();
            let p = o.position_of(c).expect("complete ranking");
            r[..p].iter().rev().map(|x| x.0).collect()
        })
        .collect();
    // avail[v][d]: voters at index >= v that rank d over c.
    let mut avail = vec![vec![0u64; m]; above.len() + 1];
    for v in (0..above.len()).rev() {
        avail[v] = avail[v + 1].clone();
        for &d in &above[v] {
            avail[v][d] += 1;
        }
    }

    let mut search = RaiseSearch {
        above: &above,
        avail: &avail,
        deficit,
        best: cap.map_or(u64::MAX, |k| k + 1),
        steps: StepCounter::new(budget),
    };
    search.run(0, 0, total)?;
    Ok(if cap.map_or(search.best == u64::MAX, |k| search.best > k) {
        None
    } else {
        Some(search.best)
    })
}

struct RaiseSearch<'a> {
    above: &'a [Vec<usize>],
    avail: &'a [Vec<u64>],
    deficit: Vec<u64>,
    best: u64,
    steps: StepCounter,
}

impl RaiseSearch<'_> {
    fn run(&mut self, v: usize, cost: u64, remaining: u64) -> Result<()> {
        self.steps.tick()?;
        if remaining == 0 {
            self.best = self.best.min(cost);
            return Ok(());
        }
        // Each switch removes at most one unit of deficit.
        if v == self.above.len() || cost + remaining >= self.best {
            return Ok(());
        }
        if self
            .deficit
            .iter()
            .zip(&self.avail[v])
            .any(|(&need, &have)| need > have)
        {
            return Ok(());
        }

        let row = &self.above[v];
        // Only stop right after passing a candidate that still needs a vote;
        // stopping anywhere else is dominated by stopping earlier.
        let mut stops = Vec::new();
        let mut gained = 0;
        for (j, &d) in row.iter().enumerate() {
            if self.deficit[d] > 0 {
                gained += 1;
                stops.push((j + 1, gained));
            }
        }
        let mut touched = Vec::with_capacity(row.len());
        for &(raise, gain) in stops.iter().rev() {
            touched.clear();
            for &d in &row[..raise] {
                if self.deficit[d] > 0 {
                    self.deficit[d] -= 1;
                    touched.push(d);
                }
            }
            let r = self.run(v + 1, cost + raise as u64, remaining - gain);
            for &d in &touched {
                self.deficit[d] += 1;
            }
            r?;
        }
        self.run(v + 1, cost, remaining)
    }
}

/// Whether `dscore(c) <= k`. The `k = 0` case is a Condorcet check.
pub fn decide_dodgson_score(triple: &DodgsonTriple, k: u64) -> Result<bool> {
    if k == 0 {
        let n = pairwise_matrix(&triple.election)?;
        return Ok(condorcet_from_matrix(&n) == Some(triple.distinguished));
    }
    Ok(capped_score(&triple.election, triple.distinguished, Some(k), SearchBudget::default())?.is_some())
}

/// Whether `dscore(c) <= dscore(d)`.
pub fn dodgson_ranking(election: &Election, c: CandidateId, d: CandidateId) -> Result<bool> {
    if c == d {
        return Err(Error::SameCandidate);
    }
    election.require(d)?;
    let sc = capped_score(election, c, None, SearchBudget::default())?;
    let sd = capped_score(election, d, None, SearchBudget::default())?;
    Ok(match (sc, sd) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x <= y,
    })
}

/// Candidates with the lowest Dodgson score.
pub fn dodgson_winners(election: &Election) -> Result<Vec<CandidateId>> {
    let m = election.num_candidates();
    if m == 0 || (election.num_voters() == 0 && m != 1) {
        return Err(Error::NoWinnerExists);
    }
    election.require_ranked()?;
    election.require_unit_weights()?;
    let scores = all_scores(election)?;
    let best = *scores.iter().min().expect("nonempty");
    Ok(election
        .candidate_ids()
        .filter(|c| scores[c.0] == best)
        .collect())
}

/// Every candidate's score, in id order.
pub fn all_scores(election: &Election) -> Result<Vec<u64>> {
    election
        .candidate_ids()
        .map(|c| {
            capped_score(election, c, None, SearchBudget::default())?.ok_or(Error::Unreachable)
        })
        .collect()
}

/// The merged election plus the roles of its candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeOutput {
    pub merged_election: Election,
    pub c: CandidateId,
    pub d: CandidateId,
    pub separators_s: Vec<CandidateId>,
    pub separators_t: Vec<CandidateId>,
}

/// Combines `(C, c, V)` and `(D, d, W)` into one election in which `c` and
/// `d` each need exactly one more switch than before and every other
/// candidate needs strictly more than `c`.
///
/// The voter template is: each `V` ballot followed by `S > D-{d} > T > d`;
/// each `W` ballot followed by `C-{c} > T > c > S`; then
/// `max(|V|, |W|) + 1` normalizing voters balancing the pairwise counts. The
/// result is only returned after its scores have been checked.
pub fn merge(
    triple_c: &DodgsonTriple,
    triple_d: &DodgsonTriple,
    s_count: usize,
    t_count: usize,
) -> Result<MergeOutput> {
    let (ec, ed) = (&triple_c.election, &triple_d.election);
    let (c0, d0) = (triple_c.distinguished, triple_d.distinguished);
    if ec.name(c0) == ed.name(d0) {
        return Err(Error::SameCandidate);
    }
    let (nv, nw) = (ec.num_voters(), ed.num_voters());
    if nv % 2 == 0 || nw % 2 == 0 {
        return Err(Error::ParityViolation);
    }

    let mut names: Vec<String> = ec.candidates().iter().map(|x| x.name.clone()).collect();
    let fresh = |names: &Vec<String>, base: String| {
        let mut name = base;
        while names.contains(&name) {
            name.push('\'');
        }
        name
    };
    let d_offset = names.len();
    for x in ed.candidates() {
        let n = fresh(&names, x.name.clone());
        names.push(n);
    }
    let s_offset = names.len();
    for i in 1..=s_count {
        let n = fresh(&names, format!("s{i}"));
        names.push(n);
    }
    let t_offset = names.len();
    for i in 1..=t_count {
        let n = fresh(&names, format!("t{i}"));
        names.push(n);
    }

    let c = c0;
    let d = CandidateId(d_offset + d0.0);
    let s_fwd: Vec<CandidateId> = (s_offset..t_offset).map(CandidateId).collect();
    let t_fwd: Vec<CandidateId> = (t_offset..names.len()).map(CandidateId).collect();
    let t_rev: Vec<CandidateId> = t_fwd.iter().rev().copied().collect();
    let c_rest: Vec<CandidateId> = ec.candidate_ids().filter(|&x| x != c).collect();
    let d_rest: Vec<CandidateId> = ed
        .candidate_ids()
        .filter(|&x| x != d0)
        .map(|x| CandidateId(d_offset + x.0))
        .collect();

    let mut ballots: Vec<Vec<CandidateId>> = Vec::new();
    for (o, _) in ec.orders() {
        ballots.push(chain(&[o.ranking(), &s_fwd, &d_rest, &t_fwd, &[d]]));
    }
    for (o, _) in ed.orders() {
        let w: Vec<CandidateId> = o.ranking().iter().map(|x| CandidateId(d_offset + x.0)).collect();
        ballots.push(chain(&[&w, &c_rest, &t_fwd, &[c], &s_fwd]));
    }
    let k = nv.max(nw) + 1;
    let a_count = (k - nw - 1) / 2;
    let b_count = nv.div_ceil(2);
    let g_count = nw.div_ceil(2);
    let e_count = (k - nv - 1) / 2;
    for _ in 0..a_count {
        ballots.push(chain(&[&[d], &d_rest, &c_rest, &t_fwd, &[c], &s_fwd]));
    }
    for _ in 0..b_count {
        ballots.push(chain(&[&[d, c], &t_rev, &d_rest, &c_rest, &s_fwd]));
    }
    for _ in 0..g_count {
        ballots.push(chain(&[&[c, d], &t_fwd, &d_rest, &c_rest, &s_fwd]));
    }
    for _ in 0..e_count {
        ballots.push(chain(&[&[c], &c_rest, &d_rest, &t_fwd, &[d], &s_fwd]));
    }

    let m = names.len();
    let voters = ballots
        .into_iter()
        .map(|r| LinearOrder::new(r, m).map(Voter::ranked))
        .collect::<Result<Vec<_>>>()?;
    let out = MergeOutput {
        merged_election: Election::new(names, voters)?,
        c,
        d,
        separators_s: s_fwd,
        separators_t: t_fwd,
    };
    if !verify_merge_properties(&out, triple_c, triple_d) {
        return Err(Error::ConstructionUnverified);
    }
    Ok(out)
}

fn chain(parts: &[&[CandidateId]]) -> Vec<CandidateId> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// Checks that `c` and `d` each score exactly one more than in their source
/// elections and that every other merged candidate scores strictly more
/// than `c`.
pub fn verify_merge_properties(out: &MergeOutput, triple_c: &DodgsonTriple, triple_d: &DodgsonTriple) -> bool {
    let check = || -> Result<bool> {
        let e = &out.merged_election;
        let budget = SearchBudget::default();
        let Some(src_c) = capped_score(&triple_c.election, triple_c.distinguished, None, budget)? else {
            return Ok(false);
        };
        let Some(src_d) = capped_score(&triple_d.election, triple_d.distinguished, None, budget)? else {
            return Ok(false);
        };
        let Some(sc) = capped_score(e, out.c, Some(src_c + 1), budget)? else {
            return Ok(false);
        };
        if sc != src_c + 1 {
            return Ok(false);
        }
        if capped_score(e, out.d, Some(src_d + 1), budget)? != Some(src_d + 1) {
            return Ok(false);
        }
        for x in e.candidate_ids().filter(|&x| x != out.c && x != out.d) {
            if capped_score(e, x, Some(sc), budget)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    check().unwrap_or(false)
}

/// Convenience for building a triple from a ballot list in tests and the CLI.
pub fn triple_from_rankings(names: &[&str], rows: &[(usize, &str)], distinguished: &str) -> Result<DodgsonTriple> {
    let e = Election::from_rankings(names, rows)?;
    let c = e.lookup(distinguished)?;
    DodgsonTriple::new(e, c)
}
