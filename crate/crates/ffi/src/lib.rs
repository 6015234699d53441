//! C ABI for votecx.
//!
//! Elections live behind an opaque `VcxElection` handle created by
//! [`vcx_election_parse`] and released with [`vcx_election_free`]. Every
//! function returns a [`VcxStatus`]; on failure the message is available
//! from [`vcx_last_error`] until the next call on the same thread. Decision
//! functions report their answer through a `bool` out-parameter and return
//! `VCX_OK` for both yes and no.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use votecx::bribery::{bribe, BriberyInstance, BriberyVariant, Encoding};
use votecx::control::{control_decide, ControlInstance, ControlSpec, ControlSystem, ControlType, Goal, TieRule};
use votecx::dodgson::{dodgson_score, DodgsonTriple};
use votecx::io::ElectionFile;
use votecx::kemeny_young::{kemeny_winners, young_score};
use votecx::manipulation::{manipulate, ManipulationInstance};
use votecx::{approval_scores, scores, CandidateId, Error, ScoringVector, SearchBudget, VotingRule, WinnerMode};

/// An election read from the text format, with its spoilers and voter pool.
pub struct VcxElection {
    file: ElectionFile,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VcxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    BudgetExceeded = 4,
    BufferTooSmall = 5,
    Failed = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VcxBriberyVariant {
    Plain = 0,
    Weighted = 1,
    Priced = 2,
    WeightedPriced = 3,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VcxEncoding {
    Binary = 0,
    UnaryWeights = 1,
    UnaryPrices = 2,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VcxSystem {
    Plurality = 0,
    Condorcet = 1,
    Approval = 2,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VcxControlType {
    AddCandidates = 0,
    DeleteCandidates = 1,
    PartitionCandidates = 2,
    RunoffPartitionCandidates = 3,
    AddVoters = 4,
    DeleteVoters = 5,
    PartitionVoters = 6,
}

/// Tie handling in subelections; `None` for non-partition control types.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VcxTie {
    None = 0,
    Eliminate = 1,
    Promote = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(VcxStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => VcxStatus::ParseError,
            Error::SearchBudgetExceeded { .. } => VcxStatus::BudgetExceeded,
            Error::ConstructionUnverified => VcxStatus::Failed,
            _ => VcxStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn null() -> Fail {
    Fail(VcxStatus::NullPointer, "null pointer argument".into())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> VcxStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VcxStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            VcxStatus::Panic
        }
    }
}

unsafe fn handle<'a>(e: *const VcxElection) -> Result<&'a VcxElection, Fail> {
    e.as_ref().ok_or_else(null)
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(null)
}

unsafe fn input<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Fail> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null())
    } else {
        Ok(slice::from_raw_parts(p, len))
    }
}

fn candidate(h: &VcxElection, c: usize) -> Result<CandidateId, Fail> {
    let id = CandidateId(c);
    h.file.election.require(id)?;
    Ok(id)
}

/// A scoring rule from `alpha`, or approval when `alpha_len` is 0.
unsafe fn rule(alpha: *const u64, alpha_len: usize) -> Result<VotingRule, Fail> {
    if alpha_len == 0 {
        return Ok(VotingRule::Approval);
    }
    Ok(VotingRule::Scoring(ScoringVector::new(input(alpha, alpha_len)?.to_vec())?))
}

fn mode(unique: bool) -> WinnerMode {
    if unique {
        WinnerMode::Unique
    } else {
        WinnerMode::CoWinner
    }
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn vcx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a NUL-terminated election file. On success `*out_handle` owns a new
/// handle.
///
/// # Safety
/// `text` must be a valid C string and `out_handle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vcx_election_parse(text: *const c_char, out_handle: *mut *mut VcxElection) -> VcxStatus {
    guard(|| {
        let slot = out(out_handle)?;
        *slot = ptr::null_mut();
        if text.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Fail(VcxStatus::ParseError, "input is not UTF-8".into()))?;
        let file = ElectionFile::parse(s)?;
        *slot = Box::into_raw(Box::new(VcxElection { file }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `e` must come from `vcx_election_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vcx_election_free(e: *mut VcxElection) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn vcx_election_counts(
    e: *const VcxElection,
    candidates: *mut usize,
    voters: *mut usize,
) -> VcxStatus {
    guard(|| {
        let h = handle(e)?;
        *out(candidates)? = h.file.election.num_candidates();
        *out(voters)? = h.file.election.num_voters();
        Ok(())
    })
}

/// Looks up a candidate index by name.
///
/// # Safety
/// `name` must be a valid C string; other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn vcx_candidate_index(e: *const VcxElection, name: *const c_char, index: *mut usize) -> VcxStatus {
    guard(|| {
        let h = handle(e)?;
        if name.is_null() {
            return Err(null());
        }
        let n = CStr::from_ptr(name).to_string_lossy();
        *out(index)? = h.file.election.lookup(&n)?.index();
        Ok(())
    })
}

/// Canonical text of the election. Free the result with `vcx_string_free`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn vcx_election_serialize(e: *const VcxElection, text: *mut *mut c_char) -> VcxStatus {
    guard(|| {
        let h = handle(e)?;
        let slot = out(text)?;
        let c = CString::new(h.file.serialize()).map_err(|e| Fail(VcxStatus::Failed, e.to_string()))?;
        *slot = c.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn vcx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Points per candidate under `alpha` (approval scores when `alpha_len` is
/// 0). `scores_out` needs room for every candidate.
///
/// # Safety
/// `alpha` must hold `alpha_len` values and `scores_out` `out_len` slots.
#[no_mangle]
pub unsafe extern "C" fn vcx_scores(
    e: *const VcxElection,
    alpha: *const u64,
    alpha_len: usize,
    scores_out: *mut u64,
    out_len: usize,
) -> VcxStatus {
    guard(|| {
        let h = handle(e)?;
        let el = &h.file.election;
        let table = match rule(alpha, alpha_len)? {
            VotingRule::Scoring(v) => scores(el, &v)?,
            VotingRule::Approval => approval_scores(el)?,
        };
        let pts = table.as_slice();
        if out_len < pts.len() {
            return Err(Fail(VcxStatus::BufferTooSmall, format!("need {} slots", pts.len())));
        }
        if scores_out.is_null() && !pts.is_empty() {
            return Err(null());
        }
        if !pts.is_empty() {
            slice::from_raw_parts_mut(scores_out, pts.len()).copy_from_slice(pts);
        }
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn vcx_dodgson_score(e: *const VcxElection, c: usize, score: *mut u64) -> VcxStatus {
    guard(|| {
        let h = handle(e)?;
        let id = candidate(h, c)?;
        let s = out(score)?;
        *s = dodgson_score(&DodgsonTriple::new(h.file.election.clone(), id)?)?;
        Ok(())
    })
}

/// `*defined` is false when no voter subset makes `c` a Condorcet winner.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn vcx_young_score(e: *const VcxElection, c: usize, score: *mut u64, defined: *mut bool) -> VcxStatus {
    guard(|| {
        let h = handle(e)?;
        let id = candidate(h, c)?;
        let (s, d) = (out(score)?, out(defined)?);
        let r = young_score(&h.file.election, id)?;
        *d = r.is_some();
        *s = r.unwrap_or(0);
        Ok(())
    })
}

/// Marks Kemeny winners with 1 in `flags` (one byte per candidate).
///
/// # Safety
/// `flags` must hold `flags_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn vcx_kemeny_winners(e: *const VcxElection, flags: *mut u8, flags_len: usize) -> VcxStatus {
    guard(|| {
        let h = handle(e)?;
        let m = h.file.election.num_candidates();
        if flags_len < m {
            return Err(Fail(VcxStatus::BufferTooSmall, format!("need {m} slots")));
        }
        let w = kemeny_winners(&h.file.election)?;
        if m > 0 {
            let f = slice::from_raw_parts_mut(out(flags)?, m);
            f.fill(0);
            for c in w {
                f[c.index()] = 1;
            }
        }
        Ok(())
    })
}

/// Can manipulators with the given weights make `target` win? `alpha_len`
/// 0 means approval voting. `step_limit` 0 uses the default search budget.
///
/// # Safety
/// Arrays must hold the stated number of values; `yes` must be valid.
#[no_mangle]
pub unsafe extern "C" fn vcx_manipulate(
    e: *const VcxElection,
    alpha: *const u64,
    alpha_len: usize,
    target: usize,
    weights: *const u64,
    weights_len: usize,
    unique: bool,
    step_limit: u64,
    yes: *mut bool,
) -> VcxStatus {
    guard(|| {
        let h = handle(e)?;
        let answer = out(yes)?;
        let inst = ManipulationInstance::new(
            h.file.election.clone(),
            input(weights, weights_len)?.to_vec(),
            candidate(h, target)?,
            rule(alpha, alpha_len)?,
        )?
        .with_mode(mode(unique));
        *answer = manipulate(&inst, steps(step_limit))?.is_yes();
        Ok(())
    })
}

fn steps(limit: u64) -> SearchBudget {
    if limit == 0 {
        SearchBudget::default()
    } else {
        SearchBudget(limit)
    }
}

/// Can `target` be made a winner by bribery within `budget`?
///
/// # Safety
/// `alpha` must hold `alpha_len` values; `yes` must be valid.
#[no_mangle]
pub unsafe extern "C" fn vcx_bribe(
    e: *const VcxElection,
    alpha: *const u64,
    alpha_len: usize,
    target: usize,
    budget: u64,
    variant: VcxBriberyVariant,
    encoding: VcxEncoding,
    unique: bool,
    step_limit: u64,
    yes: *mut bool,
) -> VcxStatus {
    guard(|| {
        let h = handle(e)?;
        let answer = out(yes)?;
        let variant = match variant {
            VcxBriberyVariant::Plain => BriberyVariant::Plain,
            VcxBriberyVariant::Weighted => BriberyVariant::Weighted,
            VcxBriberyVariant::Priced => BriberyVariant::Priced,
            VcxBriberyVariant::WeightedPriced => BriberyVariant::WeightedPriced,
        };
        let encoding = match encoding {
            VcxEncoding::Binary => Encoding::Binary,
            VcxEncoding::UnaryWeights => Encoding::WeightsUnary,
            VcxEncoding::UnaryPrices => Encoding::PricesUnary,
        };
        let inst = BriberyInstance::new(h.file.election.clone(), candidate(h, target)?, budget, variant, rule(alpha, alpha_len)?)?
            .with_encoding(encoding)
            .with_mode(mode(unique));
        *answer = bribe(&inst, steps(step_limit))?.is_yes();
        Ok(())
    })
}

/// Control problem over the handle's election, spoilers and voter pool.
/// Winners are always unique winners.
///
/// # Safety
/// `yes` must be valid.
#[no_mangle]
pub unsafe extern "C" fn vcx_control(
    e: *const VcxElection,
    system: VcxSystem,
    control_type: VcxControlType,
    destructive: bool,
    tie: VcxTie,
    target: usize,
    limit: usize,
    step_limit: u64,
    yes: *mut bool,
) -> VcxStatus {
    guard(|| {
        let h = handle(e)?;
        let answer = out(yes)?;
        let system = match system {
            VcxSystem::Plurality => ControlSystem::Plurality,
            VcxSystem::Condorcet => ControlSystem::Condorcet,
            VcxSystem::Approval => ControlSystem::Approval,
        };
        let kind = match control_type {
            VcxControlType::AddCandidates => ControlType::AddCandidates,
            VcxControlType::DeleteCandidates => ControlType::DeleteCandidates,
            VcxControlType::PartitionCandidates => ControlType::PartitionCandidates,
            VcxControlType::RunoffPartitionCandidates => ControlType::RunoffPartitionCandidates,
            VcxControlType::AddVoters => ControlType::AddVoters,
            VcxControlType::DeleteVoters => ControlType::DeleteVoters,
            VcxControlType::PartitionVoters => ControlType::PartitionVoters,
        };
        let tie = match tie {
            VcxTie::None => None,
            VcxTie::Eliminate => Some(TieRule::TE),
            VcxTie::Promote => Some(TieRule::TP),
        };
        let goal = if destructive { Goal::Destructive } else { Goal::Constructive };
        let spec = ControlSpec::new(kind, goal, tie, system)?;
        let f = &h.file;
        let inst = ControlInstance::new(
            f.election.clone(),
            f.spoilers.clone(),
            f.voter_pool.clone(),
            candidate(h, target)?,
            limit,
        )?;
        *answer = control_decide(&spec, &inst, steps(step_limit))?.is_yes();
        Ok(())
    })
}
