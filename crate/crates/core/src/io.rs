//! Line-oriented election files.
//!
//! ```text
//! # comment
//! candidates: a b c
//! spoilers: d            # optional, appended after the candidates
//! voters:
//! ballot: 1 1 : a > b > c > d
//! approve: 2 0 : a c
//! voterpool:             # optional
//! ballot: 1 1 : d > a > b > c
//! ```
//!
//! `ballot:` and `approve:` lines may drop the `weight price :` prefix, in
//! which case both default to 1. Ballot lines before any section header
//! belong to `voters:`. Candidate ids follow the order of appearance, so
//! spoilers always come last.

use std::fmt::Write as _;

use crate::election::{ApprovalVector, Ballot, CandidateId, Election, LinearOrder, Voter};
use crate::error::{Error, Result};

/// A parsed file: the election (spoilers included as candidates) plus the
/// optional control sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElectionFile {
    pub election: Election,
    pub spoilers: Vec<CandidateId>,
    pub voter_pool: Vec<Voter>,
}

impl ElectionFile {
    pub fn new(election: Election) -> Self {
        ElectionFile {
            election,
            spoilers: Vec::new(),
            voter_pool: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_file(text)
    }

    /// Canonical text. Candidate ids must put spoilers last for the text to
    /// parse back to the same ids.
    pub fn serialize(&self) -> String {
        let e = &self.election;
        let mut out = String::new();
        let names = |ids: &mut dyn Iterator<Item = CandidateId>| -> String {
            ids.map(|c| format!(" {}", e.name(c))).collect()
        };
        let _ = writeln!(out, "candidates:{}", names(&mut e.candidate_ids().filter(|c| !self.spoilers.contains(c))));
        if !self.spoilers.is_empty() {
            let mut sp = self.spoilers.clone();
            sp.sort();
            let _ = writeln!(out, "spoilers:{}", names(&mut sp.into_iter()));
        }
        out.push_str("voters:\n");
        for v in e.voters() {
            out.push_str(&ballot_line(e, v));
        }
        if !self.voter_pool.is_empty() {
            out.push_str("voterpool:\n");
            for v in &self.voter_pool {
                out.push_str(&ballot_line(e, v));
            }
        }
        out
    }
}

pub fn parse_election(text: &str) -> Result<Election> {
    Ok(parse_file(text)?.election)
}

pub fn serialize_election(e: &Election) -> String {
    ElectionFile::new(e.clone()).serialize()
}

fn ballot_line(e: &Election, v: &Voter) -> String {
    match &v.ballot {
        Ballot::Ranked(o) => {
            let names: Vec<&str> = o.ranking().iter().map(|&c| e.name(c)).collect();
            format!("ballot: {} {} : {}\n", v.weight, v.price, names.join(" > "))
        }
        Ballot::Approval(a) => {
            let names: Vec<&str> = e.candidate_ids().filter(|&c| a.approves(c)).map(|c| e.name(c)).collect();
            let mut line = format!("approve: {} {} :", v.weight, v.price);
            for n in names {
                line.push(' ');
                line.push_str(n);
            }
            line.push('\n');
            line
        }
    }
}

#[derive(PartialEq)]
enum Section {
    Voters,
    Pool,
}

fn at(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { .. } => e,
        other => Error::Parse {
            line,
            message: other.to_string(),
        },
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && !s.contains(['>', ':', '#'])
}

fn parse_file(text: &str) -> Result<ElectionFile> {
    let mut names: Option<Vec<String>> = None;
    let mut spoiler_names: Vec<String> = Vec::new();
    let mut election: Option<Election> = None;
    let mut section = Section::Voters;
    let mut voters = Vec::new();
    let mut pool = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(line_no, format!("expected `key: ...`, found `{line}`")))?;
        let rest = rest.trim();
        match key.trim() {
            "candidates" | "spoilers" => {
                if election.is_some() {
                    return Err(syntax(line_no, "candidate lists must come before ballots"));
                }
                let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if let Some(bad) = list.iter().find(|s| !valid_name(s)) {
                    return Err(syntax(line_no, format!("bad candidate name `{bad}`")));
                }
                if key.trim() == "candidates" {
                    if names.is_some() {
                        return Err(syntax(line_no, "second `candidates:` line"));
                    }
                    names = Some(list);
                } else {
                    spoiler_names.extend(list);
                }
            }
            "voters" | "voterpool" => {
                if !rest.is_empty() {
                    return Err(syntax(line_no, "section headers take no arguments"));
                }
                section = if key.trim() == "voters" { Section::Voters } else { Section::Pool };
            }
            kind @ ("ballot" | "approve") => {
                if election.is_none() {
                    let header = names
                        .take()
                        .ok_or_else(|| syntax(line_no, "ballot before `candidates:`"))?;
                    let all = header.into_iter().chain(spoiler_names.iter().cloned());
                    election = Some(Election::with_candidates(all).map_err(at(line_no))?);
                }
                let e = election.as_ref().expect("built above");
                let v = parse_ballot(e, kind == "approve", rest).map_err(at(line_no))?;
                e.check_voter(&v).map_err(at(line_no))?;
                if section == Section::Voters {
                    voters.push(v);
                } else {
                    pool.push(v);
                }
            }
            other => return Err(syntax(line_no, format!("unknown line type `{other}`"))),
        }
    }
    let mut election = match election {
        Some(e) => e,
        None => {
            let header = names.ok_or_else(|| syntax(text.lines().count().max(1), "missing `candidates:` line"))?;
            Election::with_candidates(header.into_iter().chain(spoiler_names.iter().cloned())).map_err(at(1))?
        }
    };
    *election.voters_mut() = voters;
    let m = election.num_candidates();
    let spoilers = (m - spoiler_names.len()..m).map(CandidateId).collect();
    Ok(ElectionFile {
        election,
        spoilers,
        voter_pool: pool,
    })
}

fn number(s: &str, what: &str) -> Result<u64> {
    s.parse::<u64>()
        .map_err(|_| Error::InvalidBallot(format!("{what} `{s}` is not a nonnegative integer")))
}

fn parse_ballot(e: &Election, approval: bool, rest: &str) -> Result<Voter> {
    let (weight, price, body) = match rest.split_once(':') {
        Some((head, body)) => {
            let nums: Vec<&str> = head.split_whitespace().collect();
            let [w, p] = nums[..] else {
                return Err(Error::InvalidBallot("expected `<weight> <price> :`".into()));
            };
            let w = number(w, "weight")?;
            if w == 0 {
                return Err(Error::InvalidBallot("weight must be positive".into()));
            }
            (w, number(p, "price")?, body)
        }
        None => (1, 1, rest),
    };
    let m = e.num_candidates();
    let ballot = if approval {
        let mut marks = vec![false; m];
        for name in body.split_whitespace() {
            let c = e.lookup(name)?;
            if std::mem::replace(&mut marks[c.index()], true) {
                return Err(Error::InvalidBallot(format!("`{name}` approved twice")));
            }
        }
        Ballot::Approval(ApprovalVector::new(marks))
    } else {
        let body = body.trim();
        let ranking = if body.is_empty() {
            Vec::new()
        } else {
            body.split('>').map(|s| e.lookup(s.trim())).collect::<Result<Vec<_>>>()?
        };
        Ballot::Ranked(LinearOrder::new(ranking, m)?)
    };
    Ok(Voter::new(ballot).with_weight(weight).with_price(price))
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUEENS: &str = "\
# the Queen's court
candidates: Hatter Hare Dormouse
voters:
ballot: 1 1 : Hatter > Hare > Dormouse
ballot: 1 1 : Dormouse > Hatter > Hare
ballot: 1 1 : Hare > Dormouse > Hatter
";

    #[test]
    fn queens_court() {
        let e = parse_election(QUEENS).unwrap();
        assert_eq!(e.num_candidates(), 3);
        assert_eq!(e.num_voters(), 3);
        let text = serialize_election(&e);
        assert_eq!(text, QUEENS.lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
        assert_eq!(serialize_election(&parse_election(&text).unwrap()), text);
    }

    #[test]
    fn duplicate_in_ballot() {
        let err = parse_election("candidates: a b c\nballot: 1 1 : c > c > a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn empty_voters_section() {
        let e = parse_election("candidates: a b\nvoters:\n").unwrap();
        assert_eq!(e.num_voters(), 0);
        assert_eq!(e.num_candidates(), 2);
    }

    #[test]
    fn bad_numbers() {
        for text in [
            "candidates: a b\nballot: 0 1 : a > b\n",
            "candidates: a b\nballot: 1 -1 : a > b\n",
            "candidates: a b\nballot: x 1 : a > b\n",
            "candidates: a b\nballot: 1 : a > b\n",
        ] {
            assert!(matches!(parse_election(text), Err(Error::Parse { line: 2, .. })), "{text}");
        }
    }

    #[test]
    fn unknown_candidate_and_line() {
        assert!(matches!(
            parse_election("candidates: a b\n\napprove: 1 1 : a z\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_election("candidates: a\nfoo: 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_election("voters:\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn control_sections() {
        let text = "candidates: a b\nspoilers: d\nvoters:\nballot: 2 3 : d > a > b\nvoterpool:\nballot: 1 1 : b > d > a\n";
        let f = ElectionFile::parse(text).unwrap();
        assert_eq!(f.spoilers, vec![CandidateId(2)]);
        assert_eq!(f.voter_pool.len(), 1);
        assert_eq!(f.election.voters()[0].weight, 2);
        assert_eq!(f.election.voters()[0].price, 3);
        assert_eq!(f.serialize(), text);
    }

    #[test]
    fn shorthand_and_approval() {
        let e = parse_election("candidates: a b c\napprove: c a\nballot: b > a > c\n").unwrap();
        assert_eq!(
            serialize_election(&e),
            "candidates: a b c\nvoters:\napprove: 1 1 : a c\nballot: 1 1 : b > a > c\n"
        );
    }
}
