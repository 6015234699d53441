//! Runs the optimized deciders and the oracles side by side on sampled
//! instances and reports every disagreement.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::bribery::{bribe, BriberyInstance};
use crate::control::{achieves, classify_control, control_decide, Classification, ControlSpec};
use crate::dodgson::{dodgson_score, DodgsonTriple};
use crate::election::CandidateId;
use crate::error::{Error, Result};
use crate::kemeny_young::{kemeny_consensuses, young_score};
use crate::manipulation::manipulate;
use crate::oracle::{bf_bribery, bf_control, bf_dodgson_score, bf_kemeny, bf_manipulation, bf_outcome, bf_young, ExhaustionBound};
use crate::sample::Sampler;
use crate::verdict::{SearchBudget, Verdict};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Dodgson,
    Young,
    Kemeny,
    Manipulation,
    Bribery,
    Control,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Dodgson,
        Family::Young,
        Family::Kemeny,
        Family::Manipulation,
        Family::Bribery,
        Family::Control,
    ];
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "dodgson" => Family::Dodgson,
            "young" => Family::Young,
            "kemeny" => Family::Kemeny,
            "manipulation" => Family::Manipulation,
            "bribery" => Family::Bribery,
            "control" => Family::Control,
            _ => return Err(Error::UnsupportedVariant(format!("unknown module {s}"))),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format!("{self:?}").to_lowercase())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub instances: usize,
    pub mismatches: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.mismatches.push(what());
        }
    }
}

/// Samples `count` instances of the family from `seed` and compares.
pub fn run(family: Family, count: usize, seed: u64) -> Result<Report> {
    let mut s = Sampler::new(seed);
    let bound = ExhaustionBound::default();
    let budget = SearchBudget::default();
    let mut r = Report::default();
    for _ in 0..count {
        match family {
            Family::Dodgson => {
                let m = s.rng().gen_range(1..=4);
                let n = s.rng().gen_range(1..=4);
                let e = s.ranked(m, n);
                let c = CandidateId(s.rng().gen_range(0..m));
                let t = DodgsonTriple::new(e, c)?;
                let fast = dodgson_score(&t);
                let slow = bf_dodgson_score(&t, &bound);
                r.expect(fast == slow, || format!("dodgson {t:?}: {fast:?} vs {slow:?}"));
            }
            Family::Young => {
                let m = s.rng().gen_range(1..=4);
                let n = s.rng().gen_range(0..=6);
                let e = s.ranked(m, n);
                let c = CandidateId(s.rng().gen_range(0..m));
                let fast = young_score(&e, c)?;
                let slow = bf_young(&e, c, &bound)?;
                r.expect(fast == slow, || format!("young {e:?} {c}: {fast:?} vs {slow:?}"));
            }
            Family::Kemeny => {
                let m = s.rng().gen_range(0..=4);
                let n = s.rng().gen_range(0..=5);
                let w = s.rng().gen_range(1..=3);
                let e = s.election(m, n, false, w, 1);
                let fast = kemeny_consensuses(&e)?;
                let slow = bf_kemeny(&e, &bound)?;
                r.expect(fast == slow, || format!("kemeny {e:?}: {fast:?} vs {slow:?}"));
            }
            Family::Manipulation => {
                let inst = s.manipulation();
                let fast = manipulate(&inst, budget)?;
                let slow = bf_manipulation(&inst, &bound)?;
                let sound = match &fast {
                    Verdict::Yes(w) => inst.succeeds_with(w)?,
                    Verdict::No => true,
                };
                r.expect(sound && fast.is_yes() == slow.is_yes(), || {
                    format!("manipulation {inst:?}: {fast:?} vs {slow:?}")
                });
            }
            Family::Bribery => {
                let inst = s.any_bribery();
                let fast = bribe(&inst, budget)?;
                let slow = bf_bribery(&inst, &bound)?;
                let sound = match &fast {
                    Verdict::Yes(b) => inst.succeeds_with(b)?,
                    Verdict::No => true,
                };
                r.expect(sound && fast.is_yes() == slow.is_yes(), || {
                    format!("bribery {inst:?}: {fast:?} vs {slow:?}")
                });
            }
            Family::Control => {
                let specs = ControlSpec::all();
                let spec = specs[s.rng().gen_range(0..specs.len())];
                let inst = s.control(&spec);
                let slow = bf_control(&spec, &inst, &bound)?;
                let fast = match control_decide(&spec, &inst, budget) {
                    Ok(v) => v,
                    Err(e) => {
                        r.expect(false, || format!("control {spec} {inst:?}: {e} vs {slow:?}"));
                        continue;
                    }
                };
                let ok = match (&fast, &slow) {
                    (Verdict::No, Verdict::No) => true,
                    (Verdict::Yes(a), Verdict::Yes(b)) => {
                        let winners = bf_outcome(&spec, &inst, a)?;
                        let goal = (winners == [inst.target]) == (spec.goal == crate::control::Goal::Constructive);
                        let least = classify_control(&spec) != Classification::Resistant || a == b;
                        goal && least && achieves(&spec, &inst, a)?
                    }
                    _ => false,
                };
                r.expect(ok, || format!("control {spec} {inst:?}: {fast:?} vs {slow:?}"));
            }
        }
    }
    Ok(r)
}

/// The bribery instances `run(Family::Bribery, count, seed)` checks.
pub fn bribery_sample(count: usize, seed: u64) -> Vec<BriberyInstance> {
    let mut s = Sampler::new(seed);
    (0..count).map(|_| s.any_bribery()).collect()
}
