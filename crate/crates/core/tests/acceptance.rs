//! End-to-end acceptance checks. One PASS/FAIL line per criterion; exits
//! non-zero when any criterion fails.

use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use votecx::bribery::*;
use votecx::control::*;
use votecx::crosscheck::{self, Family};
use votecx::dodgson::*;
use votecx::io::ElectionFile;
use votecx::manipulation::*;
use votecx::oracle::{bf_bribery, bf_control, ExhaustionBound};
use votecx::sample::Sampler;
use votecx::*;

type Check = std::result::Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lib<T>(r: votecx::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn run(id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = f();
    let took = start.elapsed();
    let (ok, detail) = match result {
        Ok(d) if took <= limit => (true, d),
        Ok(d) => (false, format!("{d}; over time limit {limit:?}")),
        Err(e) => (false, e),
    };
    println!(
        "{} {id:>2} {name} [{:.2}s] {detail}",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64()
    );
    ok
}

fn c1_queens_court() -> Check {
    let names = ["Hatter", "MarchHare", "Dormouse"];
    let e = lib(Election::from_rankings(
        &names,
        &[
            (1, "Hatter > MarchHare > Dormouse"),
            (1, "MarchHare > Dormouse > Hatter"),
            (1, "Dormouse > Hatter > MarchHare"),
        ],
    ))?;
    for c in e.candidate_ids() {
        let s = lib(dodgson_score(&lib(DodgsonTriple::new(e.clone(), c))?))?;
        ensure(s == 1, format!("dscore({}) = {s}", e.name(c)))?;
    }
    ensure(lib(condorcet_winner(&e))?.is_none(), "unexpected Condorcet winner")?;
    let mut switched = e.clone();
    switched.voters_mut()[2] = Voter::ranked(lib(e.parse_order("Hatter > Dormouse > MarchHare"))?);
    let w = lib(condorcet_winner(&switched))?;
    ensure(w == Some(CandidateId(0)), format!("after the switch the Condorcet winner is {w:?}"))?;
    Ok("all three scores 1, Hatter wins after the switch".into())
}

fn c2_merge() -> Check {
    let tc = lib(triple_from_rankings(&["a", "b", "c"], &[(1, "c>b>a"), (1, "a>c>b"), (1, "b>a>c")], "c"))?;
    let td = lib(triple_from_rankings(&["d", "e", "f"], &[(1, "f>e>d")], "d"))?;
    let out = lib(merge(&tc, &td, 0, 0))?;
    let e = &out.merged_election;
    let expected = [
        "c>b>a>e>f>d",
        "a>c>b>e>f>d",
        "b>a>c>e>f>d",
        "f>e>d>a>b>c",
        "d>e>f>a>b>c",
        "d>c>e>f>a>b",
        "d>c>e>f>a>b",
        "c>d>e>f>a>b",
    ];
    ensure(e.num_voters() == expected.len(), format!("{} voters", e.num_voters()))?;
    for (v, text) in e.voters().iter().zip(expected) {
        ensure(v.ballot.as_ranked() == Some(&lib(e.parse_order(text))?), format!("ballot differs from {text}"))?;
    }
    ensure(verify_merge_properties(&out, &tc, &td), "verify_merge_properties returned false")?;
    let score = |c| -> std::result::Result<u64, String> { lib(dodgson_score(&lib(DodgsonTriple::new(e.clone(), c))?)) };
    let (sc, sd) = (score(out.c)?, score(out.d)?);
    ensure(sc == 2 && sd == 3, format!("dscore(c) = {sc}, dscore(d) = {sd}"))?;
    let mut others = Vec::new();
    for x in e.candidate_ids().filter(|&x| x != out.c && x != out.d) {
        others.push((e.name(x).to_string(), score(x)?));
    }
    let shown: Vec<String> = others.iter().map(|(n, s)| format!("{n}={s}")).collect();
    ensure(
        others.iter().all(|(_, s)| *s < 2),
        format!("ballots and c=2, d=3 match, but other scores are not below 2: {}", shown.join(" ")),
    )?;
    Ok(format!("c=2 d=3 {}", shown.join(" ")))
}

fn c3_borda() -> Check {
    let names = ["a", "b", "c"];
    let borda = lib(family_vector(RuleFamily::Borda, 3))?;
    let sincere = lib(Election::from_rankings(&names, &[(5, "a>b>c"), (5, "b>a>c"), (1, "c>a>b")]))?;
    let pts = lib(scores(&sincere, &borda))?;
    ensure(pts.as_slice() == [16, 15, 2], format!("scores {:?}", pts.as_slice()))?;
    ensure(lib(scoring_winners(&sincere, &borda))? == [CandidateId(0)], "a is not the unique winner")?;
    let after = lib(Election::from_rankings(&names, &[(5, "a>b>c"), (5, "b>c>a"), (1, "c>a>b")]))?;
    ensure(lib(scoring_winners(&after, &borda))? == [CandidateId(1)], "b is not the unique winner after manipulation")?;
    let rest = lib(Election::from_rankings(&names, &[(5, "a>b>c"), (1, "c>a>b")]))?;
    let inst = lib(ManipulationInstance::new(rest, vec![1; 5], CandidateId(1), VotingRule::Scoring(borda)))?
        .with_mode(WinnerMode::Unique);
    let Verdict::Yes(w) = lib(manipulate_scoring_unweighted(&inst, SearchBudget::default()))? else {
        return Err("no manipulation found".into());
    };
    ensure(lib(inst.succeeds_with(&w))?, "witness does not make b win")?;
    Ok("16/15/2, b wins after manipulation, witness verified".into())
}

fn c4_heaviest_first_trap() -> Check {
    let e = lib(Election::with_candidates(["a", "b", "c"]))?;
    let rows = [(1, "b>a>c"), (2, "b>a>c"), (2, "b>a>c"), (2, "b>a>c"), (3, "a>b>c"), (3, "a>b>c")];
    let voters = rows
        .iter()
        .map(|&(w, o)| Ok(Voter::ranked(e.parse_order(o)?).with_weight(w)))
        .collect::<votecx::Result<Vec<_>>>();
    let e = e.with_voters(lib(voters)?);
    let inst = lib(BriberyInstance::plurality(e, CandidateId(2), 2, BriberyVariant::Weighted))?;
    let Verdict::Yes(b) = lib(bribe_plurality_weighted(&inst))? else {
        return Err("answered no at k = 2".into());
    };
    ensure(lib(inst.succeeds_with(&b))?, "witness fails")?;
    let mut ws: Vec<u64> = b.voters.iter().map(|&v| inst.election.voters()[v].weight).collect();
    ws.sort_unstable();
    ensure(ws == [2, 3], format!("witness weights {ws:?}"))?;
    let c_top = Ballot::Ranked(lib(inst.election.parse_order("c>a>b"))?);
    let heavy = Bribe {
        voters: vec![4, 5],
        ballots: vec![c_top.clone(), c_top],
    };
    ensure(!lib(inst.succeeds_with(&heavy))?, "bribing both weight-3 voters succeeds")?;
    Ok("yes with weights {3,2}; {3,3} fails".into())
}

fn c5_dichotomy() -> Check {
    let table: [&[u64]; 6] = [&[1, 0], &[1, 0, 0], &[1, 1, 0], &[2, 1, 0], &[1, 1, 1], &[3, 1, 1]];
    let class = |easy: bool| if easy { Complexity::PolynomialTime } else { Complexity::NpComplete };
    let mut rows = Vec::new();
    for raw in table {
        let tail_equal = raw[1..].windows(2).all(|w| w[0] == w[1]);
        let all_equal = raw.windows(2).all(|w| w[0] == w[1]);
        let alpha = lib(ScoringVector::new(raw.to_vec()))?;
        let got = [
            lib(classify_manipulation(&alpha))?,
            lib(classify_bribery(&alpha, BriberyVariant::Weighted))?,
            lib(classify_bribery(&alpha, BriberyVariant::WeightedPriced))?,
        ];
        let want = [class(tail_equal), class(tail_equal), class(all_equal)];
        ensure(got == want, format!("{raw:?}: got {got:?}, expected {want:?}"))?;
        rows.push(format!("{raw:?}:{}/{}", got[0], got[2]));
    }
    Ok(rows.join(" "))
}

const TABLE: &str = "
add-candidates        R R | I V | I V
delete-candidates     R R | V I | V I
partition-candidates  TE:R TE:R TP:R TP:R | V I | TE:V TE:I TP:I TP:I
runoff-candidates     TE:R TE:R TP:R TP:R | V I | TE:V TE:I TP:I TP:I
add-voters            V V | R V | R V
delete-voters         V V | R V | R V
partition-voters      TE:V TE:V TP:R TP:R | R V | TE:R TE:V TP:R TP:V
";

fn c6_table() -> Check {
    let types = [
        ("add-candidates", ControlType::AddCandidates),
        ("delete-candidates", ControlType::DeleteCandidates),
        ("partition-candidates", ControlType::PartitionCandidates),
        ("runoff-candidates", ControlType::RunoffPartitionCandidates),
        ("add-voters", ControlType::AddVoters),
        ("delete-voters", ControlType::DeleteVoters),
        ("partition-voters", ControlType::PartitionVoters),
    ];
    let systems = [ControlSystem::Plurality, ControlSystem::Condorcet, ControlSystem::Approval];
    let mut checked = 0;
    for line in TABLE.lines().filter(|l| !l.trim().is_empty()) {
        let (label, rest) = line.split_once(' ').unwrap();
        let t = types.iter().find(|(n, _)| *n == label).unwrap().1;
        for (system, cells) in systems.iter().zip(rest.split('|')) {
            let cells: Vec<&str> = cells.split_whitespace().collect();
            // Cells without a tie rule list constructive then destructive;
            // tie cells list TE constructive, TE destructive, TP constructive, TP destructive.
            let ties: Vec<Option<TieRule>> = if t.is_partition() {
                vec![Some(TieRule::TE), Some(TieRule::TP)]
            } else {
                vec![None]
            };
            let mut k = 0;
            for tie in ties {
                for goal in [Goal::Constructive, Goal::Destructive] {
                    let cell = if cells.len() == 2 { cells[usize::from(goal == Goal::Destructive)] } else { cells[k] };
                    k += 1;
                    let letter = cell.rsplit(':').next().unwrap();
                    let want = match letter {
                        "I" => Classification::Immune,
                        "R" => Classification::Resistant,
                        _ => Classification::Vulnerable,
                    };
                    let spec = lib(ControlSpec::new(t, goal, tie, *system))?;
                    let got = classify_control(&spec);
                    ensure(got == want, format!("{spec}: {got} vs {want}"))?;
                    checked += 1;
                }
            }
        }
    }
    ensure(checked == 60, format!("{checked} cells"))?;
    Ok("60 cells match".into())
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, m - 1);
            out.push(q);
        }
    }
    out
}

fn ballots(m: usize, approval: bool) -> Vec<Ballot> {
    if approval {
        (0..1u32 << m)
            .map(|mask| Ballot::Approval(ApprovalVector::new((0..m).map(|i| mask >> i & 1 == 1).collect())))
            .collect()
    } else {
        permutations(m)
            .into_iter()
            .map(|p| Ballot::Ranked(LinearOrder::from_indices(&p, m).unwrap()))
            .collect()
    }
}

/// Calls `f` on every non-decreasing index sequence of length `n` over `0..k`
/// whose first entry is `first`.
fn multisets(k: usize, n: usize, first: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(k: usize, n: usize, seq: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if seq.len() == n {
            f(seq);
            return;
        }
        let from = *seq.last().unwrap_or(&0);
        for i in from..k {
            seq.push(i);
            go(k, n, seq, f);
            seq.pop();
        }
    }
    let mut seq = vec![first];
    go(k, n, &mut seq, f);
}

/// Counterexample search for one group of immune specs sharing a system and
/// a spoiler count. Returns (instances, counterexamples).
fn immunity_group(specs: &[ControlSpec], registered: usize, spoilers: usize) -> (usize, Vec<String>) {
    let system = specs[0].system;
    let m = registered + spoilers;
    let pool = ballots(m, system == ControlSystem::Approval);
    let names: Vec<String> = (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let spoiler_ids: Vec<CandidateId> = (registered..m).map(CandidateId).collect();
    let reg_ids: Vec<CandidateId> = (0..registered).map(CandidateId).collect();
    let count = AtomicUsize::new(0);
    let bad = std::sync::Mutex::new(Vec::new());
    let check = |idx: &[usize]| {
        let voters: Vec<Voter> = idx.iter().map(|&i| Voter::new(pool[i].clone())).collect();
        let e = Election::new(names.clone(), voters).unwrap();
        let refs: Vec<&Voter> = e.voters().iter().collect();
        let plain = run_subelection(system, &e, &reg_ids, &refs).unwrap() == [CandidateId(0)];
        let inst = ControlInstance::new(e, spoiler_ids.clone(), vec![], CandidateId(0), m).unwrap();
        for spec in specs {
            let before = match spec.goal {
                Goal::Constructive => plain,
                Goal::Destructive => !plain,
            };
            let possible = bf_control(spec, &inst, &ExhaustionBound::default()).unwrap();
            count.fetch_add(1, Ordering::Relaxed);
            if possible.is_yes() && !before {
                bad.lock().unwrap().push(format!("{spec} {:?} via {:?}", inst.election.voters(), possible.witness()));
            }
        }
    };
    check(&[]);
    for n in 1..=4 {
        std::thread::scope(|s| {
            for first in 0..pool.len() {
                let check = &check;
                let pool_len = pool.len();
                s.spawn(move || multisets(pool_len, n, first, &mut |idx| check(idx)));
            }
        });
    }
    (count.into_inner(), bad.into_inner().unwrap())
}

fn c7_immunity() -> Check {
    let immune: Vec<ControlSpec> = ControlSpec::all()
        .into_iter()
        .filter(|s| classify_control(s) == Classification::Immune)
        .collect();
    let mut total = 0;
    let mut bad = Vec::new();
    for system in [ControlSystem::Condorcet, ControlSystem::Approval, ControlSystem::Plurality] {
        let adding: Vec<ControlSpec> =
            immune.iter().copied().filter(|s| s.system == system && s.control_type == ControlType::AddCandidates).collect();
        let others: Vec<ControlSpec> =
            immune.iter().copied().filter(|s| s.system == system && s.control_type != ControlType::AddCandidates).collect();
        for registered in 1..=3 {
            if !others.is_empty() {
                let (n, b) = immunity_group(&others, registered, 0);
                total += n;
                bad.extend(b);
            }
            for spoilers in 1..=2 {
                if !adding.is_empty() {
                    let (n, b) = immunity_group(&adding, registered, spoilers);
                    total += n;
                    bad.extend(b);
                }
            }
        }
    }
    ensure(bad.is_empty(), format!("{} counterexamples, first: {}", bad.len(), bad.first().cloned().unwrap_or_default()))?;
    Ok(format!("{} immune entries, {total} (spec, instance) pairs, no counterexample", immune.len()))
}

fn c8_oracles() -> Check {
    let mut parts = Vec::new();
    let mut failures = Vec::new();
    for family in Family::ALL {
        let r = lib(crosscheck::run(family, 10_000, 8))?;
        parts.push(format!("{family}={}/{}", r.instances - r.mismatches.len(), r.instances));
        if let Some(first) = r.mismatches.first() {
            failures.push(format!("{family}: {first}"));
        }
        ensure(r.instances >= 10_000, format!("{family}: only {} instances", r.instances))?;
    }
    ensure(failures.is_empty(), failures.join("; "))?;
    Ok(parts.join(" "))
}

fn equal_split(xs: &[u64]) -> bool {
    let total: u64 = xs.iter().sum();
    total.is_multiple_of(2) && (0..1u32 << xs.len()).any(|mask| {
        xs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| x).sum::<u64>() * 2 == total
    })
}

fn c9_partition() -> Check {
    let bound = ExhaustionBound {
        max_candidates: 4,
        max_voters: 10,
        max_weight: 6,
        max_budget: 30,
    };
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 1..=10 {
        for first in 0..6 {
            multisets(6, n, first, &mut |idx| {
                let xs: Vec<u64> = idx.iter().map(|&i| i as u64 + 1).collect();
                let inst = reduce_partition_to_priced_bribery(&xs).unwrap();
                let got = bf_bribery(&inst, &bound).unwrap().is_yes();
                count += 1;
                if got != equal_split(&xs) {
                    bad.push(format!("{xs:?}: bribery says {got}"));
                }
            });
        }
    }
    ensure(bad.is_empty(), format!("{} disagreements, first {}", bad.len(), bad[0..bad.len().min(1)].join("")))?;
    Ok(format!("{count} multisets agree"))
}

fn c10_unary_binary() -> Check {
    let mut compared = 0;
    let mut skipped = 0;
    for inst in crosscheck::bribery_sample(10_000, 8) {
        if !inst.election.all_ranked() {
            skipped += 1;
            continue;
        }
        let base = lib(BriberyInstance::plurality(
            inst.election.clone(),
            inst.target,
            inst.budget,
            BriberyVariant::WeightedPriced,
        ))?
        .with_mode(inst.mode);
        let mut answers = Vec::new();
        for enc in [Encoding::Binary, Encoding::WeightsUnary, Encoding::PricesUnary] {
            let one = base.clone().with_encoding(enc);
            let v = lib(bribe_plurality_weighted_priced(&one, SearchBudget::default()))?;
            if let Verdict::Yes(b) = &v {
                ensure(lib(one.succeeds_with(b))?, format!("{enc:?} witness fails on {one:?}"))?;
            }
            answers.push(v.is_yes());
        }
        ensure(answers.iter().all(|&a| a == answers[0]), format!("{answers:?} on {base:?}"))?;
        compared += 1;
    }
    Ok(format!("{compared} ranked instances agree, {skipped} approval instances skipped"))
}

fn random_file(s: &mut Sampler) -> ElectionFile {
    use rand::Rng;
    let m = s.rng().gen_range(1..=5);
    let n = s.rng().gen_range(0..=6);
    let voter = |s: &mut Sampler| {
        let b = if s.rng().gen_bool(0.5) {
            Ballot::Ranked(s.order(m))
        } else {
            Ballot::Approval(s.approvals(m))
        };
        let w = s.rng().gen_range(1..=9);
        let p = s.rng().gen_range(0..=9);
        Voter::new(b).with_weight(w).with_price(p)
    };
    let voters = (0..n).map(|_| voter(s)).collect();
    let names: Vec<String> = (0..m).map(|i| format!("c{i}")).collect();
    let spoilers = s.rng().gen_range(0..=2.min(m - 1));
    let pool_size = s.rng().gen_range(0..=2);
    ElectionFile {
        election: Election::new(names, voters).unwrap(),
        spoilers: (m - spoilers..m).map(CandidateId).collect(),
        voter_pool: (0..pool_size).map(|_| voter(s)).collect(),
    }
}

fn c11_round_trip() -> Check {
    let mut s = Sampler::new(11);
    for i in 0..1000 {
        let f = random_file(&mut s);
        let text = f.serialize();
        let back = lib(ElectionFile::parse(&text))?;
        ensure(back == f, format!("file {i} differs after parsing:\n{text}"))?;
        ensure(back.serialize() == text, format!("file {i} text differs"))?;
    }
    Ok("1000 files".into())
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        run(1, "queens-court dodgson scores", secs(1), c1_queens_court),
        run(2, "merged election", secs(5), c2_merge),
        run(3, "borda manipulation", secs(1), c3_borda),
        run(4, "weighted bribery counterexample", secs(1), c4_heaviest_first_trap),
        run(5, "dichotomy classifiers", secs(1), c5_dichotomy),
        run(6, "control table", secs(1), c6_table),
        run(7, "immunity enumeration", secs(600), c7_immunity),
        run(8, "oracle equivalence", secs(900), c8_oracles),
        run(9, "partition reduction", secs(120), c9_partition),
        run(10, "unary and binary bribery agree", secs(900), c10_unary_binary),
        run(11, "file round trip", secs(10), c11_round_trip),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
