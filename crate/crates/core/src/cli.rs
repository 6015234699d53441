//! The `votecx` command line. [`run`] returns the exit code: 0 when the
//! command ran (for decision commands, when the answer is yes), 1 when a
//! decision command answers no or a self-check fails, 2 on bad input or any
//! other error.
//!
//! Reports are `key: value` lines on stdout, closed by a `# ` summary line.
//! A yes from `manipulate`, `bribe` or `control` prints a `witness:` block,
//! and `--emit FILE` writes the resulting election so that `winners` can
//! confirm it.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bribery::{bribe, classify_bribery, BriberyInstance, BriberyVariant, Encoding};
use crate::control::{
    apply_action, classify_control, control_decide, ControlAction, ControlInstance, ControlSpec, ControlSystem,
    ControlType, Goal, TieRule,
};
use crate::crosscheck::{self, Family};
use crate::dodgson::{all_scores, dodgson_score_with_budget, merge, verify_merge_properties, DodgsonTriple};
use crate::election::{
    approval_scores, condorcet_winner, family_vector, majority_winners, pairwise_matrix, scores, Ballot, CandidateId,
    Election, RuleFamily, ScoringVector, VotingRule, WinnerMode,
};
use crate::error::Error;
use crate::io::ElectionFile;
use crate::kemeny_young::{kemeny_consensuses_bounded, young_score, WeakOrder, DEFAULT_KEMENY_BOUND};
use crate::manipulation::{classify_manipulation, manipulate, ManipulationInstance};
use crate::verdict::{SearchBudget, Verdict};

#[derive(Parser, Debug)]
#[command(name = "votecx", version, about = "Winners, manipulation, bribery and control for small elections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Winners under a rule
    Winners(RuleCmd),
    /// Per-candidate scores under a rule
    Score(RuleCmd),
    /// Dodgson scores and winners
    Dodgson(TargetCmd),
    /// Young scores and winners
    Young(TargetCmd),
    /// Kemeny consensus rankings and winners
    Kemeny(KemenyCmd),
    /// Can a coalition make the target win?
    Manipulate(ManipulateCmd),
    /// Can the target be made to win by changing some ballots?
    Bribe(BribeCmd),
    /// Can the chair make (or stop) the target win?
    Control(ControlCmd),
    /// Complexity of a problem variant
    Classify(ClassifyCmd),
    /// Compare the fast deciders with brute force on random small instances
    OracleCheck(OracleCmd),
    /// Merge two Dodgson triples into one election
    Merge(MergeCmd),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Rule {
    Plurality,
    Veto,
    Borda,
    KApproval,
    Scoring,
    Approval,
    Condorcet,
    Majority,
    Dodgson,
    Young,
    Kemeny,
}

#[derive(Args, Debug)]
struct RuleOpt {
    #[arg(long, value_enum)]
    rule: Option<Rule>,
    /// Scoring vector, highest position first, e.g. 2,1,0
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<u64>>,
    /// k for k-approval
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Cowinner,
    Unique,
}

impl From<Mode> for WinnerMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Cowinner => WinnerMode::CoWinner,
            Mode::Unique => WinnerMode::Unique,
        }
    }
}

#[derive(Args, Debug)]
struct RuleCmd {
    file: PathBuf,
    #[command(flatten)]
    rule: RuleOpt,
    /// Report only a unique winner
    #[arg(long, value_enum, default_value = "cowinner")]
    mode: Mode,
}

#[derive(Args, Debug)]
struct TargetCmd {
    file: PathBuf,
    /// Only this candidate
    #[arg(long)]
    target: Option<String>,
    /// Step limit for exact searches
    #[arg(long)]
    steps: Option<u64>,
}

#[derive(Args, Debug)]
struct KemenyCmd {
    file: PathBuf,
    /// Refuse elections with more candidates than this
    #[arg(long, default_value_t = DEFAULT_KEMENY_BOUND)]
    max_candidates: usize,
}

#[derive(Args, Debug)]
struct ManipulateCmd {
    file: PathBuf,
    #[command(flatten)]
    rule: RuleOpt,
    #[arg(long)]
    target: String,
    /// Manipulator weights, e.g. 1,1,3
    #[arg(long, value_delimiter = ',', required = true)]
    manipulators: Vec<u64>,
    #[arg(long, value_enum, default_value = "cowinner")]
    mode: Mode,
    #[arg(long)]
    steps: Option<u64>,
    /// Write the election with the manipulators' ballots added
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    Plain,
    Weighted,
    Priced,
    WeightedPriced,
}

impl From<Variant> for BriberyVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Plain => BriberyVariant::Plain,
            Variant::Weighted => BriberyVariant::Weighted,
            Variant::Priced => BriberyVariant::Priced,
            Variant::WeightedPriced => BriberyVariant::WeightedPriced,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Enc {
    Binary,
    UnaryWeights,
    UnaryPrices,
}

impl From<Enc> for Encoding {
    fn from(e: Enc) -> Self {
        match e {
            Enc::Binary => Encoding::Binary,
            Enc::UnaryWeights => Encoding::WeightsUnary,
            Enc::UnaryPrices => Encoding::PricesUnary,
        }
    }
}

#[derive(Args, Debug)]
struct BribeCmd {
    file: PathBuf,
    #[command(flatten)]
    rule: RuleOpt,
    #[arg(long)]
    target: String,
    /// Voters that may be bribed, or money for priced variants
    #[arg(long)]
    budget: u64,
    #[arg(long, value_enum, default_value = "plain")]
    variant: Variant,
    #[arg(long, value_enum, default_value = "binary")]
    encoding: Enc,
    #[arg(long, value_enum, default_value = "cowinner")]
    mode: Mode,
    #[arg(long)]
    steps: Option<u64>,
    /// Write the election after the bribe
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum System {
    Plurality,
    Condorcet,
    Approval,
}

impl From<System> for ControlSystem {
    fn from(s: System) -> Self {
        match s {
            System::Plurality => ControlSystem::Plurality,
            System::Condorcet => ControlSystem::Condorcet,
            System::Approval => ControlSystem::Approval,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    AddCandidates,
    DeleteCandidates,
    PartitionCandidates,
    RunoffPartitionCandidates,
    AddVoters,
    DeleteVoters,
    PartitionVoters,
}

impl From<Kind> for ControlType {
    fn from(k: Kind) -> Self {
        match k {
            Kind::AddCandidates => ControlType::AddCandidates,
            Kind::DeleteCandidates => ControlType::DeleteCandidates,
            Kind::PartitionCandidates => ControlType::PartitionCandidates,
            Kind::RunoffPartitionCandidates => ControlType::RunoffPartitionCandidates,
            Kind::AddVoters => ControlType::AddVoters,
            Kind::DeleteVoters => ControlType::DeleteVoters,
            Kind::PartitionVoters => ControlType::PartitionVoters,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GoalArg {
    Constructive,
    Destructive,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Tie {
    #[value(name = "TE", alias = "te")]
    Te,
    #[value(name = "TP", alias = "tp")]
    Tp,
}

#[derive(Args, Debug)]
struct SpecOpt {
    #[arg(long, value_enum)]
    system: Option<System>,
    #[arg(long = "type", value_enum)]
    control_type: Option<Kind>,
    #[arg(long, value_enum, default_value = "constructive")]
    goal: GoalArg,
    /// Tie handling in subelections (partition types only)
    #[arg(long, value_enum)]
    tie: Option<Tie>,
}

impl SpecOpt {
    fn spec(&self) -> Result<ControlSpec, Error> {
        let missing = |what: &str| Error::InvalidElection(format!("--{what} is required"));
        let system = self.system.ok_or_else(|| missing("system"))?;
        let kind = self.control_type.ok_or_else(|| missing("type"))?;
        let goal = match self.goal {
            GoalArg::Constructive => Goal::Constructive,
            GoalArg::Destructive => Goal::Destructive,
        };
        let tie = self.tie.map(|t| match t {
            Tie::Te => TieRule::TE,
            Tie::Tp => TieRule::TP,
        });
        ControlSpec::new(kind.into(), goal, tie, system.into())
    }
}

#[derive(Args, Debug)]
struct ControlCmd {
    file: PathBuf,
    #[command(flatten)]
    spec: SpecOpt,
    #[arg(long)]
    target: String,
    /// Most candidates or voters the chair may add or delete
    #[arg(long, default_value_t = 0)]
    limit: usize,
    #[arg(long)]
    steps: Option<u64>,
    /// Write the (final-round) election after the action
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Problem {
    Manipulation,
    Bribery,
    Control,
}

#[derive(Args, Debug)]
struct ClassifyCmd {
    #[arg(long, value_enum)]
    problem: Problem,
    #[command(flatten)]
    rule: RuleOpt,
    /// Candidate count for named scoring rules
    #[arg(long)]
    candidates: Option<usize>,
    #[arg(long, value_enum, default_value = "weighted")]
    variant: Variant,
    #[command(flatten)]
    spec: SpecOpt,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Module {
    All,
    Dodgson,
    Young,
    Kemeny,
    Manipulation,
    Bribery,
    Control,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Bound {
    Small,
}

#[derive(Args, Debug)]
struct OracleCmd {
    #[arg(long, value_enum, default_value = "all")]
    module: Module,
    #[arg(long, value_enum, default_value = "small")]
    bound: Bound,
    /// Instances per module
    #[arg(long, default_value_t = 2000)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Debug)]
struct MergeCmd {
    first: PathBuf,
    second: PathBuf,
    /// Distinguished candidate of the first election
    #[arg(long)]
    c: String,
    /// Distinguished candidate of the second election
    #[arg(long)]
    d: String,
    #[arg(long, default_value_t = 0)]
    s: usize,
    #[arg(long, default_value_t = 0)]
    t: usize,
    #[arg(long)]
    emit: Option<PathBuf>,
}

type Outcome = Result<i32, Box<dyn std::error::Error>>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Winners(c) => winners_cmd(&c, out),
        Command::Score(c) => score_cmd(&c, out),
        Command::Dodgson(c) => dodgson_cmd(&c, out),
        Command::Young(c) => young_cmd(&c, out),
        Command::Kemeny(c) => kemeny_cmd(&c, out),
        Command::Manipulate(c) => manipulate_cmd(&c, out),
        Command::Bribe(c) => bribe_cmd(&c, out),
        Command::Control(c) => control_cmd(&c, out),
        Command::Classify(c) => classify_cmd(&c, out),
        Command::OracleCheck(c) => oracle_cmd(&c, out),
        Command::Merge(c) => merge_cmd(&c, out),
    }
}

fn load(path: &Path) -> Result<ElectionFile, Box<dyn std::error::Error>> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    ElectionFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn budget(steps: Option<u64>) -> SearchBudget {
    steps.map_or_else(SearchBudget::default, SearchBudget)
}

fn names(e: &Election, ids: &[CandidateId]) -> String {
    ids.iter().map(|&c| e.name(c)).collect::<Vec<_>>().join(" ")
}

fn show_ballot(e: &Election, b: &Ballot) -> String {
    match b {
        Ballot::Ranked(o) => o.ranking().iter().map(|&c| e.name(c)).collect::<Vec<_>>().join(" > "),
        Ballot::Approval(a) => {
            let approved: Vec<CandidateId> = e.candidate_ids().filter(|&c| a.approves(c)).collect();
            format!("approve {{{}}}", names(e, &approved))
        }
    }
}

fn show_weak(e: &Election, w: &WeakOrder) -> String {
    w.levels()
        .iter()
        .map(|l| l.iter().map(|&c| e.name(c)).collect::<Vec<_>>().join(" = "))
        .collect::<Vec<_>>()
        .join(" > ")
}

/// Unique mode keeps the winner set only when it is a singleton.
fn filter_mode(w: Vec<CandidateId>, mode: Mode) -> Vec<CandidateId> {
    if mode == Mode::Unique && w.len() != 1 {
        Vec::new()
    } else {
        w
    }
}

enum Resolved {
    Voting(VotingRule, String),
    Condorcet,
    Majority,
    Dodgson,
    Young,
    Kemeny,
}

fn resolve(opt: &RuleOpt, m: usize) -> Result<Resolved, Error> {
    let rule = match (opt.rule, &opt.alpha) {
        (None, Some(_)) | (Some(Rule::Scoring), _) => Rule::Scoring,
        (Some(r), None) => r,
        (Some(_), Some(_)) => return Err(Error::RuleMismatch("--alpha goes with --rule scoring".into())),
        (None, None) => return Err(Error::RuleMismatch("give --rule or --alpha".into())),
    };
    let scoring = |v: ScoringVector| {
        let label = format!("scoring {v}");
        Resolved::Voting(VotingRule::Scoring(v), label)
    };
    Ok(match rule {
        Rule::Plurality => scoring(family_vector(RuleFamily::Plurality, m)?),
        Rule::Veto => scoring(family_vector(RuleFamily::Veto, m)?),
        Rule::Borda => scoring(family_vector(RuleFamily::Borda, m)?),
        Rule::KApproval => {
            let k = opt.k.ok_or_else(|| Error::RuleMismatch("k-approval needs --k".into()))?;
            scoring(family_vector(RuleFamily::KApproval(k), m)?)
        }
        Rule::Scoring => {
            let alpha = opt.alpha.clone().ok_or_else(|| Error::RuleMismatch("--rule scoring needs --alpha".into()))?;
            scoring(ScoringVector::new(alpha)?)
        }
        Rule::Approval => Resolved::Voting(VotingRule::Approval, "approval".into()),
        Rule::Condorcet => Resolved::Condorcet,
        Rule::Majority => Resolved::Majority,
        Rule::Dodgson => Resolved::Dodgson,
        Rule::Young => Resolved::Young,
        Rule::Kemeny => Resolved::Kemeny,
    })
}

fn voting_rule(opt: &RuleOpt, m: usize) -> Result<(VotingRule, String), Error> {
    match resolve(opt, m)? {
        Resolved::Voting(r, label) => Ok((r, label)),
        _ => Err(Error::RuleMismatch("this command needs a scoring rule or approval".into())),
    }
}

fn point_table(e: &Election, rule: &VotingRule) -> Result<Vec<u64>, Error> {
    Ok(match rule {
        VotingRule::Scoring(v) => scores(e, v)?.as_slice().to_vec(),
        VotingRule::Approval => approval_scores(e)?.as_slice().to_vec(),
    })
}

fn winners_cmd(c: &RuleCmd, out: &mut dyn Write) -> Outcome {
    let e = load(&c.file)?.election;
    let (label, pts, w) = match resolve(&c.rule, e.num_candidates())? {
        Resolved::Voting(rule, label) => (label, Some(point_table(&e, &rule)?), rule.winners(&e)?),
        Resolved::Condorcet => ("condorcet".into(), None, condorcet_winner(&e)?.into_iter().collect()),
        Resolved::Majority => ("majority".into(), None, majority_winners(&e)?),
        Resolved::Dodgson => ("dodgson".into(), None, crate::dodgson::dodgson_winners(&e)?),
        Resolved::Young => ("young".into(), None, crate::kemeny_young::young_winners(&e)?),
        Resolved::Kemeny => ("kemeny".into(), None, crate::kemeny_young::kemeny_winners(&e)?),
    };
    writeln!(out, "rule: {label}")?;
    for (x, p) in e.candidate_ids().zip(pts.iter().flatten()) {
        writeln!(out, "score.{}: {p}", e.name(x))?;
    }
    let w = filter_mode(w, c.mode);
    writeln!(out, "winners: {}", names(&e, &w))?;
    match w.len() {
        0 => writeln!(out, "# no winner")?,
        1 => writeln!(out, "# {} wins", e.name(w[0]))?,
        n => writeln!(out, "# {n} tied winners")?,
    }
    Ok(0)
}

fn score_cmd(c: &RuleCmd, out: &mut dyn Write) -> Outcome {
    let e = load(&c.file)?.election;
    match resolve(&c.rule, e.num_candidates())? {
        Resolved::Voting(rule, label) => {
            writeln!(out, "rule: {label}")?;
            let pts = point_table(&e, &rule)?;
            for x in e.candidate_ids() {
                writeln!(out, "score.{}: {}", e.name(x), pts[x.index()])?;
            }
            writeln!(out, "# total {}", pts.iter().sum::<u64>())?;
            Ok(0)
        }
        Resolved::Condorcet | Resolved::Majority => {
            writeln!(out, "rule: pairwise")?;
            let n = pairwise_matrix(&e)?;
            for a in e.candidate_ids() {
                for b in e.candidate_ids().filter(|&b| b != a) {
                    writeln!(out, "pairwise.{}.{}: {}", e.name(a), e.name(b), n.get(a, b))?;
                }
            }
            writeln!(out, "# weight preferring the first candidate to the second")?;
            Ok(0)
        }
        Resolved::Dodgson => dodgson_report(&e, None, SearchBudget::default(), out),
        Resolved::Young => young_report(&e, None, out),
        Resolved::Kemeny => kemeny_report(&e, DEFAULT_KEMENY_BOUND, out),
    }
}

fn lookup_opt(e: &Election, name: &Option<String>) -> Result<Option<CandidateId>, Error> {
    name.as_deref().map(|n| e.lookup(n)).transpose()
}

fn dodgson_cmd(c: &TargetCmd, out: &mut dyn Write) -> Outcome {
    let e = load(&c.file)?.election;
    let target = lookup_opt(&e, &c.target)?;
    dodgson_report(&e, target, budget(c.steps), out)
}

fn dodgson_report(e: &Election, target: Option<CandidateId>, b: SearchBudget, out: &mut dyn Write) -> Outcome {
    writeln!(out, "rule: dodgson")?;
    if let Some(t) = target {
        let s = dodgson_score_with_budget(&DodgsonTriple::new(e.clone(), t)?, b)?;
        writeln!(out, "score.{}: {s}", e.name(t))?;
        writeln!(out, "# {} needs {s} switches to become the Condorcet winner", e.name(t))?;
        return Ok(0);
    }
    let all = all_scores(e)?;
    for x in e.candidate_ids() {
        writeln!(out, "score.{}: {}", e.name(x), all[x.index()])?;
    }
    let w = crate::dodgson::dodgson_winners(e)?;
    writeln!(out, "winners: {}", names(e, &w))?;
    writeln!(out, "# {} Dodgson winner(s)", w.len())?;
    Ok(0)
}

fn young_cmd(c: &TargetCmd, out: &mut dyn Write) -> Outcome {
    let e = load(&c.file)?.election;
    let target = lookup_opt(&e, &c.target)?;
    young_report(&e, target, out)
}

fn young_report(e: &Election, target: Option<CandidateId>, out: &mut dyn Write) -> Outcome {
    writeln!(out, "rule: young")?;
    let show = |s: Option<u64>| s.map_or_else(|| "undefined".to_string(), |v| v.to_string());
    let ids: Vec<CandidateId> = match target {
        Some(t) => vec![t],
        None => e.candidate_ids().collect(),
    };
    for &x in &ids {
        writeln!(out, "score.{}: {}", e.name(x), show(young_score(e, x)?))?;
    }
    if target.is_none() {
        let w = crate::kemeny_young::young_winners(e)?;
        writeln!(out, "winners: {}", names(e, &w))?;
        writeln!(out, "# {} Young winner(s)", w.len())?;
    } else {
        writeln!(out, "# voters removed until the candidate is a Condorcet winner")?;
    }
    Ok(0)
}

fn kemeny_cmd(c: &KemenyCmd, out: &mut dyn Write) -> Outcome {
    let e = load(&c.file)?.election;
    kemeny_report(&e, c.max_candidates, out)
}

fn kemeny_report(e: &Election, bound: usize, out: &mut dyn Write) -> Outcome {
    let (dist, orders) = kemeny_consensuses_bounded(e, bound)?;
    writeln!(out, "rule: kemeny")?;
    writeln!(out, "distance: {dist}")?;
    for (i, w) in orders.iter().enumerate() {
        writeln!(out, "consensus.{i}: {}", show_weak(e, w))?;
    }
    let mut tops: Vec<CandidateId> = orders.iter().flat_map(|w| w.top().iter().copied()).collect();
    tops.sort();
    tops.dedup();
    writeln!(out, "winners: {}", names(e, &tops))?;
    writeln!(out, "# {} consensus ranking(s) at distance {dist}", orders.len())?;
    Ok(0)
}

fn emit(path: &Option<PathBuf>, file: &ElectionFile, out: &mut dyn Write) -> Outcome {
    if let Some(p) = path {
        fs::write(p, file.serialize()).map_err(|e| format!("{}: {e}", p.display()))?;
        writeln!(out, "emitted: {}", p.display())?;
    }
    Ok(0)
}

fn verdict_line<W>(v: &Verdict<W>, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "answer: {}", if v.is_yes() { "yes" } else { "no" })
}

fn manipulate_cmd(c: &ManipulateCmd, out: &mut dyn Write) -> Outcome {
    let e = load(&c.file)?.election;
    let (rule, label) = voting_rule(&c.rule, e.num_candidates())?;
    let target = e.lookup(&c.target)?;
    let inst = ManipulationInstance::new(e.clone(), c.manipulators.clone(), target, rule)?.with_mode(c.mode.into());
    let v = manipulate(&inst, budget(c.steps))?;
    writeln!(out, "rule: {label}")?;
    writeln!(out, "target: {}", c.target)?;
    writeln!(out, "mode: {}", mode_name(c.mode))?;
    verdict_line(&v, out)?;
    let Verdict::Yes(ballots) = v else {
        writeln!(out, "# the coalition cannot make {} a winner", c.target)?;
        return Ok(1);
    };
    writeln!(out, "witness:")?;
    for (i, b) in ballots.iter().enumerate() {
        writeln!(out, "  manipulator {i} (weight {}): {}", c.manipulators[i], show_ballot(&e, b))?;
    }
    emit(&c.emit, &ElectionFile::new(inst.apply(&ballots)?), out)?;
    writeln!(out, "# {} manipulator ballot(s) make {} win", ballots.len(), c.target)?;
    Ok(0)
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Cowinner => "cowinner",
        Mode::Unique => "unique",
    }
}

fn bribe_cmd(c: &BribeCmd, out: &mut dyn Write) -> Outcome {
    let e = load(&c.file)?.election;
    let (rule, label) = voting_rule(&c.rule, e.num_candidates())?;
    let target = e.lookup(&c.target)?;
    let inst = BriberyInstance::new(e.clone(), target, c.budget, c.variant.into(), rule)?
        .with_encoding(c.encoding.into())
        .with_mode(c.mode.into());
    let v = bribe(&inst, budget(c.steps))?;
    writeln!(out, "rule: {label}")?;
    writeln!(out, "target: {}", c.target)?;
    writeln!(out, "budget: {}", c.budget)?;
    writeln!(out, "mode: {}", mode_name(c.mode))?;
    verdict_line(&v, out)?;
    let Verdict::Yes(b) = v else {
        writeln!(out, "# no bribe within budget {} makes {} a winner", c.budget, c.target)?;
        return Ok(1);
    };
    writeln!(out, "cost: {}", inst.cost(&b))?;
    writeln!(out, "witness:")?;
    for (i, ballot) in b.voters.iter().zip(&b.ballots) {
        writeln!(out, "  voter {i}: {}", show_ballot(&e, ballot))?;
    }
    emit(&c.emit, &ElectionFile::new(inst.apply(&b)?), out)?;
    writeln!(out, "# bribing {} voter(s) makes {} win", b.voters.len(), c.target)?;
    Ok(0)
}

fn show_action(e: &Election, a: &ControlAction) -> String {
    let idx = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    match a {
        ControlAction::AddCandidates(c) => format!("add-candidates {{{}}}", names(e, c)),
        ControlAction::DeleteCandidates(c) => format!("delete-candidates {{{}}}", names(e, c)),
        ControlAction::PartitionCandidates(c) => format!("first-block {{{}}}", names(e, c)),
        ControlAction::AddVoters(v) => format!("add-pool-voters {{{}}}", idx(v)),
        ControlAction::DeleteVoters(v) => format!("delete-voters {{{}}}", idx(v)),
        ControlAction::PartitionVoters(v) => format!("first-voter-block {{{}}}", idx(v)),
    }
}

fn control_cmd(c: &ControlCmd, out: &mut dyn Write) -> Outcome {
    let file = load(&c.file)?;
    let spec = c.spec.spec()?;
    let e = file.election.clone();
    let target = e.lookup(&c.target)?;
    let inst = ControlInstance::new(e.clone(), file.spoilers.clone(), file.voter_pool.clone(), target, c.limit)?;
    let v = control_decide(&spec, &inst, budget(c.steps))?;
    writeln!(out, "control: {spec}")?;
    writeln!(out, "classification: {}", classify_control(&spec))?;
    writeln!(out, "target: {}", c.target)?;
    writeln!(out, "limit: {}", c.limit)?;
    verdict_line(&v, out)?;
    let Verdict::Yes(action) = v else {
        writeln!(out, "# the chair cannot reach the goal")?;
        return Ok(1);
    };
    let fin = apply_action(&spec, &inst, &action)?;
    let winners = fin.winners(spec.system, &e)?;
    writeln!(out, "witness:")?;
    writeln!(out, "  {}", show_action(&e, &action))?;
    writeln!(out, "  final-candidates {{{}}}", names(&e, &fin.candidates))?;
    writeln!(out, "final-winners: {}", names(&e, &winners))?;
    emit(&c.emit, &ElectionFile::new(fin.to_election(&e)), out)?;
    writeln!(out, "# {}", show_action(&e, &action))?;
    Ok(0)
}

fn classify_cmd(c: &ClassifyCmd, out: &mut dyn Write) -> Outcome {
    let alpha = || -> Result<ScoringVector, Error> {
        if let Some(a) = &c.rule.alpha {
            return ScoringVector::new(a.clone());
        }
        let m = c
            .candidates
            .ok_or_else(|| Error::RuleMismatch("give --alpha, or --rule with --candidates".into()))?;
        match voting_rule(&c.rule, m)? {
            (VotingRule::Scoring(v), _) => Ok(v),
            _ => Err(Error::RuleMismatch("classification needs a scoring vector".into())),
        }
    };
    let answer = match c.problem {
        Problem::Manipulation => {
            let a = alpha()?;
            writeln!(out, "problem: weighted manipulation {a}")?;
            classify_manipulation(&a)?.to_string()
        }
        Problem::Bribery => {
            let a = alpha()?;
            writeln!(out, "problem: bribery {a} {:?}", c.variant)?;
            classify_bribery(&a, c.variant.into())?.to_string()
        }
        Problem::Control => {
            let spec = c.spec.spec()?;
            writeln!(out, "problem: control {spec}")?;
            classify_control(&spec).to_string()
        }
    };
    writeln!(out, "complexity: {answer}")?;
    writeln!(out, "# {answer}")?;
    Ok(0)
}

fn oracle_cmd(c: &OracleCmd, out: &mut dyn Write) -> Outcome {
    let Bound::Small = c.bound;
    let families: Vec<Family> = match c.module {
        Module::All => Family::ALL.to_vec(),
        Module::Dodgson => vec![Family::Dodgson],
        Module::Young => vec![Family::Young],
        Module::Kemeny => vec![Family::Kemeny],
        Module::Manipulation => vec![Family::Manipulation],
        Module::Bribery => vec![Family::Bribery],
        Module::Control => vec![Family::Control],
    };
    let mut failed = 0;
    for f in families {
        let r = crosscheck::run(f, c.count, c.seed)?;
        let status = if r.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "{f}: {status} ({} instances, {} mismatches)", r.instances, r.mismatches.len())?;
        for m in r.mismatches.iter().take(5) {
            writeln!(out, "  {m}")?;
        }
        failed += usize::from(!r.passed());
    }
    writeln!(out, "# {}", if failed == 0 { "all modules agree with brute force".to_string() } else { format!("{failed} module(s) disagree") })?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn merge_cmd(c: &MergeCmd, out: &mut dyn Write) -> Outcome {
    let first = load(&c.first)?.election;
    let second = load(&c.second)?.election;
    let cid = first.lookup(&c.c)?;
    let did = second.lookup(&c.d)?;
    let tc = DodgsonTriple::new(first, cid)?;
    let td = DodgsonTriple::new(second, did)?;
    let m = merge(&tc, &td, c.s, c.t)?;
    let e = &m.merged_election;
    let ok = verify_merge_properties(&m, &tc, &td);
    writeln!(out, "c: {}", e.name(m.c))?;
    writeln!(out, "d: {}", e.name(m.d))?;
    writeln!(out, "separators.s: {}", names(e, &m.separators_s))?;
    writeln!(out, "separators.t: {}", names(e, &m.separators_t))?;
    writeln!(out, "candidates: {}", e.num_candidates())?;
    writeln!(out, "voters: {}", e.num_voters())?;
    writeln!(out, "verified: {}", if ok { "yes" } else { "no" })?;
    let file = ElectionFile::new(e.clone());
    if c.emit.is_some() {
        emit(&c.emit, &file, out)?;
    } else {
        writeln!(out, "election:")?;
        for line in file.serialize().lines() {
            writeln!(out, "  {line}")?;
        }
    }
    writeln!(out, "# merged election with {} candidates and {} voters", e.num_candidates(), e.num_voters())?;
    Ok(if ok { 0 } else { 1 })
}
