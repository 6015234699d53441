//! Young and Kemeny elections.
//!
//! Both winner problems are Θ₂ᵖ-complete, so these are exact searches
//! intended for small elections. Kemeny distance uses the Kemeny–Snell
//! convention: a strictly reversed pair costs 2 and a pair the consensus
//! ties costs 1, per voter weight.

use crate::election::{pairwise_matrix, CandidateId, Election, PairwiseMatrix};
use crate::error::{Error, Result};

/// Ranking with ties: ordered levels, each a nonempty set of candidates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeakOrder(Vec<Vec<CandidateId>>);

impl WeakOrder {
    /// Levels are sorted internally so equal orders compare equal.
    pub fn new(levels: Vec<Vec<CandidateId>>) -> Self {
        WeakOrder(
            levels
                .into_iter()
                .map(|mut l| {
                    l.sort();
                    l
                })
                .collect(),
        )
    }

    pub fn levels(&self) -> &[Vec<CandidateId>] {
        &self.0
    }

    pub fn top(&self) -> &[CandidateId] {
        self.0.first().map_or(&[], Vec::as_slice)
    }

    /// Checks that the levels partition `0..m` with no empty level.
    pub fn validate(&self, m: usize) -> Result<()> {
        let mut seen = vec![false; m];
        for level in &self.0 {
            if level.is_empty() {
                return Err(Error::InvalidBallot("empty level in weak order".into()));
            }
            for &c in level {
                if c.0 >= m || std::mem::replace(&mut seen[c.0], true) {
                    return Err(Error::InvalidBallot("weak order does not partition the candidates".into()));
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::InvalidBallot("weak order does not partition the candidates".into()))
        }
    }

    fn level_of(&self, m: usize) -> Vec<usize> {
        let mut lv = vec![0; m];
        for (i, level) in self.0.iter().enumerate() {
            for c in level {
                lv[c.0] = i;
            }
        }
        lv
    }
}

/// Largest candidate count `kemeny_consensuses` accepts by default.
pub const DEFAULT_KEMENY_BOUND: usize = 6;

pub fn kemeny_distance(order: &WeakOrder, election: &Election) -> Result<u64> {
    election.require_ranked()?;
    let m = election.num_candidates();
    order.validate(m)?;
    let n = pairwise_matrix(election)?;
    let lv = order.level_of(m);
    let mut total = 0;
    for a in 0..m {
        for b in (a + 1)..m {
            total += pair_cost(&n, CandidateId(a), CandidateId(b), lv[a].cmp(&lv[b]));
        }
    }
    Ok(total)
}

/// Cost of placing pair `(a, b)` in relation `rel` (Less = `a` ranked higher).
fn pair_cost(n: &PairwiseMatrix, a: CandidateId, b: CandidateId, rel: std::cmp::Ordering) -> u64 {
    use std::cmp::Ordering::*;
    match rel {
        Less => 2 * n.get(b, a),
        Greater => 2 * n.get(a, b),
        Equal => n.get(a, b) + n.get(b, a),
    }
}

/// All weak orders at minimum distance, with that distance.
pub fn kemeny_consensuses(election: &Election) -> Result<(u64, Vec<WeakOrder>)> {
    kemeny_consensuses_bounded(election, DEFAULT_KEMENY_BOUND)
}

pub fn kemeny_consensuses_bounded(election: &Election, max_candidates: usize) -> Result<(u64, Vec<WeakOrder>)> {
    election.require_ranked()?;
    let m = election.num_candidates();
    if m > max_candidates {
        return Err(Error::BoundExceeded(format!(
            "{m} candidates, Kemeny enumeration limited to {max_candidates}"
        )));
    }
    if m == 0 {
        return Ok((0, vec![WeakOrder(Vec::new())]));
    }
    let n = pairwise_matrix(election)?;
    let mut search = KemenySearch {
        n: &n,
        m,
        best: u64::MAX,
        found: Vec::new(),
        levels: Vec::new(),
    };
    let all = (1u32 << m) - 1;
    search.extend(all, 0);
    search.found.sort();
    Ok((search.best, search.found))
}

struct KemenySearch<'a> {
    n: &'a PairwiseMatrix,
    m: usize,
    best: u64,
    found: Vec<WeakOrder>,
    levels: Vec<u32>,
}

impl KemenySearch<'_> {
    fn members(&self, mask: u32) -> impl Iterator<Item = CandidateId> + '_ {
        (0..self.m).filter(move |i| mask >> i & 1 == 1).map(CandidateId)
    }

    fn lower_bound(&self, rest: u32) -> u64 {
        let mut lb = 0;
        for a in self.members(rest) {
            for b in self.members(rest).filter(|&b| b > a) {
                lb += 2 * self.n.get(a, b).min(self.n.get(b, a));
            }
        }
        lb
    }

    fn extend(&mut self, rest: u32, cost: u64) {
        if rest == 0 {
            if cost < self.best {
                self.best = cost;
                self.found.clear();
            }
            if cost == self.best {
                let levels = self
                    .levels
                    .iter()
                    .map(|&mask| self.members(mask).collect())
                    .collect();
                self.found.push(WeakOrder(levels));
            }
            return;
        }
        if cost + self.lower_bound(rest) > self.best {
            return;
        }
        // every nonempty submask of `rest` as the next level
        let mut level = rest;
        while level != 0 {
            let below = rest & !level;
            let mut add = 0;
            for a in self.members(level) {
                for b in self.members(level).filter(|&b| b > a) {
                    add += pair_cost(self.n, a, b, std::cmp::Ordering::Equal);
                }
                for b in self.members(below) {
                    add += 2 * self.n.get(b, a);
                }
            }
            self.levels.push(level);
            self.extend(below, cost + add);
            self.levels.pop();
            level = (level - 1) & rest;
        }
    }
}

/// Candidates ranked top (possibly tied) in some consensus.
pub fn kemeny_winners(election: &Election) -> Result<Vec<CandidateId>> {
    let (_, consensuses) = kemeny_consensuses(election)?;
    let mut winners: Vec<CandidateId> = consensuses
        .iter()
        .flat_map(|o| o.top().iter().copied())
        .collect();
    winners.sort();
    winners.dedup();
    Ok(winners)
}

/// Fewest voter deletions making `c` a Condorcet winner; `None` when no
/// deletion set works.
pub fn young_score(election: &Election, c: CandidateId) -> Result<Option<u64>> {
    election.require(c)?;
    election.require_ranked()?;
    election.require_unit_weights()?;
    let m = election.num_candidates();
    // margin[d] = #(c over d) - #(d over c); c wins iff every margin > 0.
    let mut margin = vec![0i64; m];
    // Voters ranking c first only ever help c, so they are never deleted.
    let mut deletable: Vec<Vec<i64>> = Vec::new();
    for (o, _) in election.orders() {
        let pos = o.positions();
        let signs: Vec<i64> = (0..m)
            .map(|d| if d == c.0 { 0 } else if pos[c.0] < pos[d] { 1 } else { -1 })
            .collect();
        for d in 0..m {
            margin[d] += signs[d];
        }
        if pos[c.0] != 0 {
            deletable.push(signs);
        }
    }
    let ok = |margin: &[i64]| (0..m).all(|d| d == c.0 || margin[d] > 0);
    if ok(&margin) {
        return Ok(Some(0));
    }
    let mut chosen = Vec::new();
    for k in 1..=deletable.len() {
        if removal_of_size(&deletable, &mut margin, k, 0, &mut chosen, &ok) {
            return Ok(Some(k as u64));
        }
    }
    Ok(None)
}

fn removal_of_size(
    rows: &[Vec<i64>],
    margin: &mut [i64],
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    ok: &impl Fn(&[i64]) -> bool,
) -> bool {
    if chosen.len() == k {
        return ok(margin);
    }
    for i in start..rows.len() {
        if rows.len() - i < k - chosen.len() {
            break;
        }
        for (m, s) in margin.iter_mut().zip(&rows[i]) {
            *m -= s;
        }
        chosen.push(i);
        let hit = removal_of_size(rows, margin, k, i + 1, chosen, ok);
        chosen.pop();
        for (m, s) in margin.iter_mut().zip(&rows[i]) {
            *m += s;
        }
        if hit {
            return true;
        }
    }
    false
}

/// Candidates with the smallest defined Young score.
pub fn young_winners(election: &Election) -> Result<Vec<CandidateId>> {
    let scores = election
        .candidate_ids()
        .map(|c| young_score(election, c))
        .collect::<Result<Vec<_>>>()?;
    let Some(best) = scores.iter().flatten().min().copied() else {
        return Ok(Vec::new());
    };
    Ok(election
        .candidate_ids()
        .filter(|c| scores[c.0] == Some(best))
        .collect())
}
