//! Election systems and the computational problems around them: winner
//! determination for scoring, approval, Condorcet, Dodgson, Young and
//! Kemeny elections; manipulation and bribery deciders; and the standard
//! electoral control problems. Every exponential search is exact and
//! guarded by an explicit step budget, and every decider has an
//! independent brute-force counterpart in [`oracle`].

pub mod bribery;
pub mod cli;
pub mod control;
pub mod crosscheck;
pub mod dodgson;
pub mod election;
pub mod error;
pub mod io;
pub mod kemeny_young;
pub mod manipulation;
pub mod oracle;
pub mod sample;
pub mod verdict;

pub use election::{
    approval_scores, approval_winners, condorcet_winner, family_vector, majority_winners,
    pairwise_matrix, scores, scoring_winners, ApprovalVector, Ballot, Candidate, CandidateId,
    Election, LinearOrder, PairwiseMatrix, RuleFamily, ScoreTable, ScoringVector, Voter,
    VotingRule, WinnerMode,
};
pub use error::{Error, Result};
pub use verdict::{SearchBudget, Verdict};
