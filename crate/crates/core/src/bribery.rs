//! Bribery: change the ballots of a few voters (or spend a budget against
//! voter prices) so that a target candidate wins.
//!
//! Plurality gets dedicated algorithms per variant. Weighted+priced plurality
//! is NP-complete in binary; with weights or prices in unary it is solved by
//! knapsack-style dynamic programs. Everything else runs through exact
//! subset search.

use std::cmp::Reverse;

use crate::election::{
    ApprovalVector, Ballot, CandidateId, Election, LinearOrder, ScoringVector, Voter, VotingRule,
    WinnerMode,
};
use crate::error::{Error, Result};
use crate::manipulation::{self, Complexity, ManipulationInstance};
use crate::verdict::{SearchBudget, StepCounter, Verdict};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum BriberyVariant {
    Plain,
    Weighted,
    Priced,
    WeightedPriced,
}

impl BriberyVariant {
    pub fn weighted(self) -> bool {
        matches!(self, BriberyVariant::Weighted | BriberyVariant::WeightedPriced)
    }

    pub fn priced(self) -> bool {
        matches!(self, BriberyVariant::Priced | BriberyVariant::WeightedPriced)
    }
}

/// How the numbers in a weighted+priced instance are encoded. Selects the
/// engine for that variant.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum Encoding {
    #[default]
    Binary,
    WeightsUnary,
    PricesUnary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BriberyInstance {
    pub election: Election,
    pub target: CandidateId,
    /// Number of bribed voters for unpriced variants, money otherwise.
    pub budget: u64,
    pub variant: BriberyVariant,
    pub encoding: Encoding,
    pub mode: WinnerMode,
    pub rule: VotingRule,
}

/// Bribed voter indices (ascending) and the ballots they now cast.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bribe {
    pub voters: Vec<usize>,
    pub ballots: Vec<Ballot>,
}

impl BriberyInstance {
    pub fn new(election: Election, target: CandidateId, budget: u64, variant: BriberyVariant, rule: VotingRule) -> Result<Self> {
        election.require(target)?;
        if let VotingRule::Scoring(alpha) = &rule {
            if alpha.len() != election.num_candidates() {
                return Err(Error::DimensionMismatch {
                    expected: election.num_candidates(),
                    found: alpha.len(),
                });
            }
        }
        if !variant.weighted() && election.voters().iter().any(|v| v.weight != 1) {
            return Err(Error::WeightedNotSupported);
        }
        if !variant.priced() && election.voters().iter().any(|v| v.price != 1) {
            return Err(Error::InvalidElection("prices must be 1 unless the variant is priced".into()));
        }
        Ok(BriberyInstance {
            election,
            target,
            budget,
            variant,
            encoding: Encoding::Binary,
            mode: WinnerMode::CoWinner,
            rule,
        })
    }

    /// Plurality bribery over ranked ballots.
    pub fn plurality(election: Election, target: CandidateId, budget: u64, variant: BriberyVariant) -> Result<Self> {
        let alpha = crate::election::family_vector(crate::election::RuleFamily::Plurality, election.num_candidates())?;
        Self::new(election, target, budget, variant, VotingRule::Scoring(alpha))
    }

    pub fn with_encoding(mut self, encoding: Encoding) -> Self {
        self.encoding = encoding;
        self
    }

    pub fn with_mode(mut self, mode: WinnerMode) -> Self {
        self.mode = mode;
        self
    }

    fn price(&self, v: usize) -> u64 {
        if self.variant.priced() {
            self.election.voters()[v].price
        } else {
            1
        }
    }

    pub fn cost(&self, bribe: &Bribe) -> u64 {
        bribe.voters.iter().map(|&v| self.price(v)).sum()
    }

    pub fn apply(&self, bribe: &Bribe) -> Result<Election> {
        if bribe.voters.len() != bribe.ballots.len() {
            return Err(Error::InvalidBallot("one ballot per bribed voter expected".into()));
        }
        let mut e = self.election.clone();
        for (&v, b) in bribe.voters.iter().zip(&bribe.ballots) {
            let Some(voter) = e.voters().get(v) else {
                return Err(Error::InvalidBallot(format!("no voter {v}")));
            };
            let replaced = Voter::new(b.clone()).with_weight(voter.weight).with_price(voter.price);
            e.check_voter(&replaced)?;
            e.voters_mut()[v] = replaced;
        }
        Ok(e)
    }

    /// Within budget, each voter bribed at most once, and the target wins.
    pub fn succeeds_with(&self, bribe: &Bribe) -> Result<bool> {
        let mut seen = bribe.voters.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != bribe.voters.len() || self.cost(bribe) > self.budget {
            return Ok(false);
        }
        let e = self.apply(bribe)?;
        Ok(self.mode.accepts(&self.rule.winners(&e)?, self.target))
    }

    fn plurality_alpha(&self) -> Result<&ScoringVector> {
        match &self.rule {
            VotingRule::Scoring(a) if a.tail_constant() => Ok(a),
            _ => Err(Error::RuleMismatch("plurality rule expected".into())),
        }
    }

    fn target_first(&self) -> Ballot {
        Ballot::Ranked(LinearOrder::identity(self.election.num_candidates()).with_top(self.target))
    }

    fn flip_to_target(&self, mut voters: Vec<usize>) -> Bribe {
        voters.sort_unstable();
        let ballots = vec![self.target_first(); voters.len()];
        Bribe { voters, ballots }
    }

    fn already_wins(&self) -> Result<bool> {
        Ok(self.mode.accepts(&self.rule.winners(&self.election)?, self.target))
    }
}

/// Weighted plurality standing: top weight per candidate and, for each
/// candidate, the voters ranking it first.
struct Standing {
    score: Vec<u64>,
    groups: Vec<Vec<usize>>,
}

impl Standing {
    fn of(e: &Election) -> Result<Standing> {
        e.require_ranked()?;
        let m = e.num_candidates();
        let mut score = vec![0; m];
        let mut groups = vec![Vec::new(); m];
        for (i, v) in e.voters().iter().enumerate() {
            if let Some(top) = v.ballot.as_ranked().and_then(LinearOrder::top) {
                score[top.0] += v.weight;
                groups[top.0].push(i);
            }
        }
        Ok(Standing { score, groups })
    }

    fn rivals(&self, c: CandidateId) -> impl Iterator<Item = usize> + '_ {
        (0..self.score.len()).filter(move |&d| d != c.0)
    }
}

/// Shared prelude for the plurality deciders. `Some` settles the instance
/// without search: already winning, or an all-equal vector where ballots
/// cannot change anything.
fn plurality_prelude(inst: &BriberyInstance) -> Result<Option<Verdict<Bribe>>> {
    let alpha = inst.plurality_alpha()?;
    inst.election.require_ranked()?;
    if inst.already_wins()? {
        return Ok(Some(Verdict::Yes(Bribe { voters: vec![], ballots: vec![] })));
    }
    if alpha.all_equal() {
        return Ok(Some(Verdict::No));
    }
    Ok(None)
}

/// Greedy: while the target loses, take a voter from a current winner.
pub fn bribe_plurality(inst: &BriberyInstance) -> Result<Verdict<Bribe>> {
    if inst.variant != BriberyVariant::Plain {
        return Err(Error::UnsupportedVariant(format!("{:?} passed to the plain decider", inst.variant)));
    }
    if let Some(v) = plurality_prelude(inst)? {
        return Ok(v);
    }
    let c = inst.target;
    let mut st = Standing::of(&inst.election)?;
    let mut bribed = Vec::new();
    loop {
        let wins = st.rivals(c).all(|d| inst.mode.holds(st.score[c.0], st.score[d]));
        if wins {
            return Ok(Verdict::Yes(inst.flip_to_target(bribed)));
        }
        if bribed.len() as u64 >= inst.budget {
            return Ok(Verdict::No);
        }
        let rival = st.rivals(c).max_by_key(|&d| (st.score[d], Reverse(d))).expect("target is losing to someone");
        if st.groups[rival].is_empty() {
            return Ok(Verdict::No);
        }
        let v = st.groups[rival].remove(0);
        st.score[rival] -= 1;
        st.score[c.0] += 1;
        bribed.push(v);
    }
}

/// Weighted voters, bribes counted per voter. Tries every per-opponent bribe
/// count, taking each opponent's heaviest voters.
pub fn bribe_plurality_weighted(inst: &BriberyInstance) -> Result<Verdict<Bribe>> {
    if inst.variant != BriberyVariant::Weighted {
        return Err(Error::UnsupportedVariant(format!("{:?} passed to the weighted decider", inst.variant)));
    }
    if let Some(v) = plurality_prelude(inst)? {
        return Ok(v);
    }
    let c = inst.target;
    let st = Standing::of(&inst.election)?;
    let weight = |v: usize| inst.election.voters()[v].weight;
    let opps: Vec<usize> = st.rivals(c).filter(|&d| !st.groups[d].is_empty()).collect();
    let sorted: Vec<Vec<usize>> = opps
        .iter()
        .map(|&d| {
            let mut g = st.groups[d].clone();
            g.sort_by_key(|&v| (Reverse(weight(v)), v));
            g
        })
        .collect();
    let prefix: Vec<Vec<u64>> = sorted
        .iter()
        .map(|g| std::iter::once(0).chain(g.iter().scan(0, |acc, &v| {
            *acc += weight(v);
            Some(*acc)
        })).collect())
        .collect();
    let heaviest = inst.election.voters().iter().map(|v| v.weight).max().unwrap_or(0);

    struct Dfs<'a> {
        st: &'a Standing,
        opps: &'a [usize],
        prefix: &'a [Vec<u64>],
        heaviest: u64,
        c: usize,
        mode: WinnerMode,
        counts: Vec<usize>,
    }
    impl Dfs<'_> {
        fn run(&mut self, i: usize, left: u64, gained: u64) -> bool {
            let target = self.st.score[self.c] + gained;
            // decided opponents must be beatable with what is left
            for (j, &d) in self.opps[..i].iter().enumerate() {
                let rest = self.st.score[d] - self.prefix[j][self.counts[j]];
                if !self.mode.holds(target + left * self.heaviest, rest) {
                    return false;
                }
            }
            if i == self.opps.len() {
                return (0..self.st.score.len())
                    .filter(|&d| d != self.c)
                    .all(|d| {
                        let rest = match self.opps.iter().position(|&o| o == d) {
                            Some(j) => self.st.score[d] - self.prefix[j][self.counts[j]],
                            None => self.st.score[d],
                        };
                        self.mode.holds(target, rest)
                    });
            }
            let most = (self.prefix[i].len() - 1).min(left as usize);
            for k in 0..=most {
                self.counts.push(k);
                if self.run(i + 1, left - k as u64, gained + self.prefix[i][k]) {
                    return true;
                }
                self.counts.pop();
            }
            false
        }
    }

    let mut dfs = Dfs {
        st: &st,
        opps: &opps,
        prefix: &prefix,
        heaviest,
        c: c.0,
        mode: inst.mode,
        counts: Vec::new(),
    };
    if !dfs.run(0, inst.budget, 0) {
        return Ok(Verdict::No);
    }
    let voters = dfs
        .counts
        .iter()
        .zip(&sorted)
        .flat_map(|(&k, g)| g[..k].iter().copied())
        .collect();
    Ok(Verdict::Yes(inst.flip_to_target(voters)))
}

/// Unit weights, arbitrary prices. For each total number of bribes, the
/// cheapest set takes the mandatory cheapest voters from every opponent
/// and fills up with the cheapest voters left anywhere.
pub fn bribe_plurality_priced(inst: &BriberyInstance) -> Result<Verdict<Bribe>> {
    if inst.variant != BriberyVariant::Priced {
        return Err(Error::UnsupportedVariant(format!("{:?} passed to the priced decider", inst.variant)));
    }
    if let Some(v) = plurality_prelude(inst)? {
        return Ok(v);
    }
    let c = inst.target;
    let st = Standing::of(&inst.election)?;
    let slack = u64::from(inst.mode == WinnerMode::Unique);
    let groups: Vec<Vec<usize>> = st
        .groups
        .iter()
        .map(|g| {
            let mut g = g.clone();
            g.sort_by_key(|&v| (inst.price(v), v));
            g
        })
        .collect();
    let others: usize = st.rivals(c).map(|d| groups[d].len()).sum();
    let mut best: Option<(u64, Vec<usize>)> = None;
    for k in 0..=others as u64 {
        let mut chosen = Vec::new();
        let mut spare = Vec::new();
        let mut feasible = true;
        for d in st.rivals(c) {
            let need = (st.score[d] + slack).saturating_sub(st.score[c.0] + k) as usize;
            if need > groups[d].len() {
                feasible = false;
                break;
            }
            chosen.extend_from_slice(&groups[d][..need]);
            spare.extend_from_slice(&groups[d][need..]);
        }
        if !feasible || chosen.len() as u64 > k {
            continue;
        }
        spare.sort_by_key(|&v| (inst.price(v), v));
        let fill = k as usize - chosen.len();
        if fill > spare.len() {
            continue;
        }
        chosen.extend_from_slice(&spare[..fill]);
        let cost: u64 = chosen.iter().map(|&v| inst.price(v)).sum();
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, chosen));
        }
    }
    Ok(match best {
        Some((cost, voters)) if cost <= inst.budget => Verdict::Yes(inst.flip_to_target(voters)),
        _ => Verdict::No,
    })
}

/// Weighted and priced. The encoding picks branch-and-bound (binary) or one
/// of the two pseudo-polynomial programs.
pub fn bribe_plurality_weighted_priced(inst: &BriberyInstance, budget: SearchBudget) -> Result<Verdict<Bribe>> {
    if inst.variant != BriberyVariant::WeightedPriced {
        return Err(Error::UnsupportedVariant(format!("{:?} passed to the weighted+priced decider", inst.variant)));
    }
    if let Some(v) = plurality_prelude(inst)? {
        return Ok(v);
    }
    let st = Standing::of(&inst.election)?;
    let c = inst.target;
    let everyone: Vec<usize> = st.rivals(c).flat_map(|d| st.groups[d].iter().copied()).collect();
    let total_price: u64 = everyone.iter().map(|&v| inst.price(v)).sum();
    if inst.budget >= total_price {
        let all = inst.flip_to_target(everyone);
        return Ok(if inst.succeeds_with(&all)? { Verdict::Yes(all) } else { Verdict::No });
    }
    match inst.encoding {
        Encoding::Binary => weighted_priced_search(inst, &st, budget),
        Encoding::WeightsUnary => weighted_priced_by_weight(inst, &st),
        Encoding::PricesUnary => weighted_priced_by_price(inst, &st),
    }
}

fn weighted_priced_search(inst: &BriberyInstance, st: &Standing, budget: SearchBudget) -> Result<Verdict<Bribe>> {
    let c = inst.target.0;
    let voters = inst.election.voters();
    let mut order: Vec<usize> = st.rivals(inst.target).flat_map(|d| st.groups[d].iter().copied()).collect();
    order.sort_by_key(|&v| (Reverse(voters[v].weight), inst.price(v), v));
    let tops: Vec<usize> = order
        .iter()
        .map(|&v| voters[v].ballot.as_ranked().and_then(LinearOrder::top).expect("ranked").0)
        .collect();
    // rest_by[i][d]: weight of d's voters among order[i..]
    let m = st.score.len();
    let mut rest_by = vec![vec![0u64; m]; order.len() + 1];
    for i in (0..order.len()).rev() {
        rest_by[i] = rest_by[i + 1].clone();
        rest_by[i][tops[i]] += voters[order[i]].weight;
    }

    struct Bnb<'a> {
        inst: &'a BriberyInstance,
        order: &'a [usize],
        tops: &'a [usize],
        rest_by: &'a [Vec<u64>],
        score: Vec<u64>,
        c: usize,
        chosen: Vec<usize>,
        steps: StepCounter,
    }
    impl Bnb<'_> {
        fn wins(&self) -> bool {
            (0..self.score.len())
                .filter(|&d| d != self.c)
                .all(|d| self.inst.mode.holds(self.score[self.c], self.score[d]))
        }

        fn run(&mut self, i: usize, spent: u64) -> Result<bool> {
            self.steps.tick()?;
            if self.wins() {
                return Ok(true);
            }
            if i == self.order.len() {
                return Ok(false);
            }
            let reachable: u64 = self.rest_by[i].iter().sum();
            let hopeless = (0..self.score.len()).filter(|&d| d != self.c).any(|d| {
                !self.inst.mode.holds(self.score[self.c] + reachable, self.score[d] - self.rest_by[i][d])
            });
            if hopeless {
                return Ok(false);
            }
            let v = self.order[i];
            let w = self.inst.election.voters()[v].weight;
            let p = self.inst.price(v);
            if spent + p <= self.inst.budget {
                self.score[self.tops[i]] -= w;
                self.score[self.c] += w;
                self.chosen.push(v);
                let hit = self.run(i + 1, spent + p);
                self.score[self.tops[i]] += w;
                self.score[self.c] -= w;
                if hit? {
                    return Ok(true);
                }
                self.chosen.pop();
            }
            self.run(i + 1, spent)
        }
    }

    let mut bnb = Bnb {
        inst,
        order: &order,
        tops: &tops,
        rest_by: &rest_by,
        score: st.score.clone(),
        c,
        chosen: Vec::new(),
        steps: StepCounter::new(budget),
    };
    Ok(if bnb.run(0, 0)? {
        Verdict::Yes(inst.flip_to_target(bnb.chosen))
    } else {
        Verdict::No
    })
}

/// 0/1 knapsack rows over one opponent's voters, kept whole for
/// reconstruction. `rows[i][x]` is the best value using the first `i` items.
struct Knapsack {
    items: Vec<usize>,
    rows: Vec<Vec<Option<u64>>>,
}

impl Knapsack {
    /// Minimum price per exact bribed weight.
    fn min_price_by_weight(inst: &BriberyInstance, items: &[usize]) -> Knapsack {
        let voters = inst.election.voters();
        let cap: u64 = items.iter().map(|&v| voters[v].weight).sum();
        let mut rows = vec![vec![None; cap as usize + 1]];
        rows[0][0] = Some(0);
        for &v in items {
            let (w, p) = (voters[v].weight as usize, inst.price(v));
            let prev = rows.last().unwrap();
            let mut next = prev.clone();
            for x in w..=cap as usize {
                if let Some(base) = prev[x - w] {
                    if next[x].is_none_or(|cur| base + p < cur) {
                        next[x] = Some(base + p);
                    }
                }
            }
            rows.push(next);
        }
        Knapsack { items: items.to_vec(), rows }
    }

    /// Maximum bribed weight per price limit (at most `cap` money).
    fn max_weight_by_price(inst: &BriberyInstance, items: &[usize], cap: u64) -> Knapsack {
        let voters = inst.election.voters();
        let mut rows = vec![vec![Some(0); cap as usize + 1]];
        for &v in items {
            let (w, p) = (voters[v].weight, inst.price(v) as usize);
            let prev = rows.last().unwrap();
            let mut next = prev.clone();
            for x in p..=cap as usize {
                let take = prev[x - p].unwrap() + w;
                if take > next[x].unwrap() {
                    next[x] = Some(take);
                }
            }
            rows.push(next);
        }
        Knapsack { items: items.to_vec(), rows }
    }

    fn last(&self) -> &[Option<u64>] {
        self.rows.last().unwrap()
    }

    /// Items behind `rows[n][x]`, walking back through the table.
    fn pick(&self, mut x: usize, size: impl Fn(usize) -> usize) -> Vec<usize> {
        let mut out = Vec::new();
        for i in (0..self.items.len()).rev() {
            if self.rows[i + 1][x] != self.rows[i][x] {
                out.push(self.items[i]);
                x -= size(self.items[i]);
            }
        }
        out
    }
}

/// Weights in unary: for every lower bound `t` on the total bribed weight,
/// each opponent must lose enough weight; combine per-opponent tables of
/// cheapest price per exact weight.
fn weighted_priced_by_weight(inst: &BriberyInstance, st: &Standing) -> Result<Verdict<Bribe>> {
    let c = inst.target;
    let slack = u64::from(inst.mode == WinnerMode::Unique);
    let rivals: Vec<usize> = st.rivals(c).collect();
    let tables: Vec<Knapsack> = rivals
        .iter()
        .map(|&d| Knapsack::min_price_by_weight(inst, &st.groups[d]))
        .collect();
    let total: usize = tables.iter().map(|k| k.last().len() - 1).sum();
    for t in 0..=total {
        // layer[j][x]: cheapest way to bribe total weight min(x, t) among the
        // first j rivals; parent holds the weight taken from rival j.
        let mut layer = vec![Some(0u64)];
        layer.resize(t + 1, None);
        let mut parents: Vec<Vec<Option<(usize, usize)>>> = Vec::new();
        for (i, &d) in rivals.iter().enumerate() {
            let need = (st.score[d] + slack).saturating_sub(st.score[c.0] + t as u64) as usize;
            let f = tables[i].last();
            let mut next = vec![None; t + 1];
            let mut par = vec![None; t + 1];
            for (x, &have) in layer.iter().enumerate() {
                let Some(have) = have else { continue };
                for (w, &cost) in f.iter().enumerate().skip(need) {
                    let Some(cost) = cost else { continue };
                    let y = (x + w).min(t);
                    if next[y].is_none_or(|cur| have + cost < cur) {
                        next[y] = Some(have + cost);
                        par[y] = Some((x, w));
                    }
                }
            }
            layer = next;
            parents.push(par);
        }
        if layer[t].is_some_and(|cost| cost <= inst.budget) {
            let mut voters = Vec::new();
            let mut x = t;
            for i in (0..rivals.len()).rev() {
                let (prev, w) = parents[i][x].expect("reachable state has a parent");
                let weight = |v: usize| inst.election.voters()[v].weight as usize;
                voters.extend(tables[i].pick(w, weight));
                x = prev;
            }
            return Ok(Verdict::Yes(inst.flip_to_target(voters)));
        }
    }
    Ok(Verdict::No)
}

/// Prices in unary: per-opponent tables of the heaviest bribe per price
/// limit, combined over money. Only thresholds where some opponent's
/// requirement changes need checking.
fn weighted_priced_by_price(inst: &BriberyInstance, st: &Standing) -> Result<Verdict<Bribe>> {
    let c = inst.target;
    let slack = u64::from(inst.mode == WinnerMode::Unique);
    let rivals: Vec<usize> = st.rivals(c).collect();
    let money_cap = |d: usize| -> u64 {
        let p: u64 = st.groups[d].iter().map(|&v| inst.price(v)).sum();
        p.min(inst.budget)
    };
    let tables: Vec<Knapsack> = rivals
        .iter()
        .map(|&d| Knapsack::max_weight_by_price(inst, &st.groups[d], money_cap(d)))
        .collect();
    let k = tables.iter().map(|t| (t.last().len() - 1) as u64).sum::<u64>().min(inst.budget) as usize;

    let mut thresholds = vec![0u64];
    for (i, &d) in rivals.iter().enumerate() {
        for h in tables[i].last() {
            thresholds.push((st.score[d] + slack).saturating_sub(st.score[c.0] + h.unwrap()));
        }
    }
    thresholds.sort_unstable();
    thresholds.dedup();

    for t in thresholds {
        // layer[q]: heaviest total bribe spending exactly q across the
        // first rivals, each meeting its own requirement.
        let mut layer: Vec<Option<u64>> = vec![None; k + 1];
        layer[0] = Some(0);
        let mut parents: Vec<Vec<Option<(usize, usize)>>> = Vec::new();
        for (i, &d) in rivals.iter().enumerate() {
            let need = (st.score[d] + slack).saturating_sub(st.score[c.0] + t);
            let h = tables[i].last();
            let mut next = vec![None; k + 1];
            let mut par = vec![None; k + 1];
            for (q, &have) in layer.iter().enumerate() {
                let Some(have) = have else { continue };
                for (spend, &w) in h.iter().enumerate() {
                    let w = w.unwrap();
                    if q + spend > k || w < need {
                        continue;
                    }
                    if next[q + spend].is_none_or(|cur| have + w > cur) {
                        next[q + spend] = Some(have + w);
                        par[q + spend] = Some((q, spend));
                    }
                }
            }
            layer = next;
            parents.push(par);
        }
        let best = (0..=k).filter_map(|q| layer[q].map(|w| (w, q))).max();
        if let Some((w, mut q)) = best {
            if w >= t {
                let mut voters = Vec::new();
                for i in (0..rivals.len()).rev() {
                    let (prev, spend) = parents[i][q].expect("reachable state has a parent");
                    let price = |v: usize| inst.price(v) as usize;
                    voters.extend(tables[i].pick(spend, price));
                    q = prev;
                }
                return Ok(Verdict::Yes(inst.flip_to_target(voters)));
            }
        }
    }
    Ok(Verdict::No)
}

/// Approval ballots: exact search over bribed sets, smallest first; bribed
/// voters approve only the target.
pub fn bribe_approval(inst: &BriberyInstance, budget: SearchBudget) -> Result<Verdict<Bribe>> {
    if inst.rule != VotingRule::Approval {
        return Err(Error::RuleMismatch("approval rule expected".into()));
    }
    inst.election.require_approval()?;
    let m = inst.election.num_candidates();
    let only = Ballot::Approval(ApprovalVector::only(inst.target, m));
    let mut base = crate::election::approval_scores(&inst.election)?.as_slice().to_vec();
    let voters = inst.election.voters();
    // Voters approving only the target gain nothing from a bribe.
    let useful: Vec<usize> = (0..voters.len()).filter(|&v| voters[v].ballot != only).collect();
    let effect: Vec<Vec<i64>> = useful
        .iter()
        .map(|&v| {
            let a = voters[v].ballot.as_approval().expect("approval");
            (0..m)
                .map(|x| {
                    let before = a.approves(CandidateId(x)) as i64;
                    let after = (x == inst.target.0) as i64;
                    (after - before) * voters[v].weight as i64
                })
                .collect()
        })
        .collect();
    let mut steps = StepCounter::new(budget);
    let c = inst.target.0;
    let mode = inst.mode;
    let wins = |s: &[u64]| (0..m).filter(|&d| d != c).all(|d| mode.holds(s[c], s[d]));
    if wins(&base) {
        return Ok(Verdict::Yes(Bribe { voters: vec![], ballots: vec![] }));
    }
    let mut chosen = Vec::new();
    for size in 1..=useful.len() {
        if !subsets_of_size(inst, &useful, &effect, size, 0, 0, &mut base, &mut chosen, &mut steps, &wins)? {
            continue;
        }
        let voters: Vec<usize> = chosen.iter().map(|&i| useful[i]).collect();
        let mut bribe = Bribe { ballots: vec![only.clone(); voters.len()], voters };
        bribe.voters.sort_unstable();
        return Ok(Verdict::Yes(bribe));
    }
    Ok(Verdict::No)
}

#[allow(clippy::too_many_arguments)]
fn subsets_of_size(
    inst: &BriberyInstance,
    pool: &[usize],
    effect: &[Vec<i64>],
    size: usize,
    from: usize,
    spent: u64,
    score: &mut [u64],
    chosen: &mut Vec<usize>,
    steps: &mut StepCounter,
    wins: &impl Fn(&[u64]) -> bool,
) -> Result<bool> {
    steps.tick()?;
    if chosen.len() == size {
        return Ok(wins(score));
    }
    for i in from..pool.len() {
        if pool.len() - i < size - chosen.len() {
            break;
        }
        let p = inst.price(pool[i]);
        if spent + p > inst.budget {
            continue;
        }
        apply_effect(score, &effect[i], 1);
        chosen.push(i);
        let hit = subsets_of_size(inst, pool, effect, size, i + 1, spent + p, score, chosen, steps, wins);
        apply_effect(score, &effect[i], -1);
        if hit? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

fn apply_effect(score: &mut [u64], effect: &[i64], sign: i64) {
    for (s, e) in score.iter_mut().zip(effect) {
        *s = (*s as i64 + sign * e) as u64;
    }
}

/// Any scoring vector: every affordable bribed set, smallest first, with the
/// bribed voters treated as a manipulating coalition.
pub fn bribe_scoring(inst: &BriberyInstance, budget: SearchBudget) -> Result<Verdict<Bribe>> {
    if !matches!(inst.rule, VotingRule::Scoring(_)) {
        return Err(Error::RuleMismatch("scoring rule expected".into()));
    }
    inst.election.require_ranked()?;
    let n = inst.election.num_voters();
    let mut steps = StepCounter::new(budget);
    let mut chosen = Vec::new();
    for size in 0..=n {
        if let Some(b) = scoring_subsets(inst, size, 0, 0, &mut chosen, &mut steps, budget)? {
            return Ok(Verdict::Yes(b));
        }
    }
    Ok(Verdict::No)
}

fn scoring_subsets(
    inst: &BriberyInstance,
    size: usize,
    from: usize,
    spent: u64,
    chosen: &mut Vec<usize>,
    steps: &mut StepCounter,
    budget: SearchBudget,
) -> Result<Option<Bribe>> {
    steps.tick()?;
    let n = inst.election.num_voters();
    if chosen.len() == size {
        let voters = inst.election.voters();
        let kept: Vec<Voter> = (0..n).filter(|v| !chosen.contains(v)).map(|v| voters[v].clone()).collect();
        let weights = chosen.iter().map(|&v| voters[v].weight).collect();
        let sub = ManipulationInstance::new(inst.election.with_voters(kept), weights, inst.target, inst.rule.clone())?
            .with_mode(inst.mode);
        return Ok(manipulation::manipulate(&sub, budget)?
            .into_witness()
            .map(|ballots| Bribe { voters: chosen.clone(), ballots }));
    }
    for v in from..n {
        if n - v < size - chosen.len() {
            break;
        }
        let p = inst.price(v);
        if spent + p > inst.budget {
            continue;
        }
        chosen.push(v);
        let hit = scoring_subsets(inst, size, v + 1, spent + p, chosen, steps, budget)?;
        chosen.pop();
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// Picks the decider for the instance's rule and variant.
pub fn bribe(inst: &BriberyInstance, budget: SearchBudget) -> Result<Verdict<Bribe>> {
    match &inst.rule {
        VotingRule::Approval => bribe_approval(inst, budget),
        VotingRule::Scoring(a) if a.tail_constant() => match inst.variant {
            BriberyVariant::Plain => bribe_plurality(inst),
            BriberyVariant::Weighted => bribe_plurality_weighted(inst),
            BriberyVariant::Priced => bribe_plurality_priced(inst),
            BriberyVariant::WeightedPriced => bribe_plurality_weighted_priced(inst, budget),
        },
        VotingRule::Scoring(_) => bribe_scoring(inst, budget),
    }
}

/// Weighted+priced: easy only when all positions score alike. Weighted:
/// easy iff `alpha_2 = ... = alpha_m`. Plain: easy for any fixed vector.
/// Priced: easy in the plurality-like case; other vectors are not covered.
pub fn classify_bribery(alpha: &ScoringVector, variant: BriberyVariant) -> Result<Complexity> {
    if alpha.is_empty() {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    let easy = |p: bool| if p { Complexity::PolynomialTime } else { Complexity::NpComplete };
    match variant {
        BriberyVariant::WeightedPriced => Ok(easy(alpha.all_equal())),
        BriberyVariant::Weighted => Ok(easy(alpha.tail_constant())),
        BriberyVariant::Plain => Ok(Complexity::PolynomialTime),
        BriberyVariant::Priced if alpha.tail_constant() => Ok(Complexity::PolynomialTime),
        BriberyVariant::Priced => Err(Error::UnsupportedVariant(format!(
            "no classification for priced bribery under {alpha}"
        ))),
    }
}

/// Two candidates b and c; every number becomes a b-voter whose weight and
/// price both equal it; budget is half the total, rounded down.
pub fn reduce_partition_to_priced_bribery(multiset: &[u64]) -> Result<BriberyInstance> {
    if multiset.is_empty() || multiset.contains(&0) {
        return Err(Error::InvalidElection("partition input must be a nonempty list of positive integers".into()));
    }
    let e = Election::with_candidates(["b", "c"])?;
    let order = LinearOrder::identity(2);
    let voters = multiset
        .iter()
        .map(|&w| Voter::ranked(order.clone()).with_weight(w).with_price(w))
        .collect();
    let e = e.with_voters(voters);
    let budget = multiset.iter().sum::<u64>() / 2;
    BriberyInstance::plurality(e, CandidateId(1), budget, BriberyVariant::WeightedPriced)
}
