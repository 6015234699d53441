/// Answer to a decision problem, carrying a witness on "yes".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Yes(W),
    No,
}

impl<W> Verdict<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Yes(w) => Some(w),
            Verdict::No => None,
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Verdict::Yes(w) => Some(w),
            Verdict::No => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(W) -> U) -> Verdict<U> {
        match self {
            Verdict::Yes(w) => Verdict::Yes(f(w)),
            Verdict::No => Verdict::No,
        }
    }
}

impl<W> From<Option<W>> for Verdict<W> {
    fn from(o: Option<W>) -> Self {
        o.map_or(Verdict::No, Verdict::Yes)
    }
}

/// Step limit for exponential searches. Exceeding it is an error, never a
/// silent "no".
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget(pub u64);

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget(50_000_000)
    }
}

pub(crate) struct StepCounter {
    used: u64,
    limit: u64,
}

impl StepCounter {
    pub(crate) fn new(budget: SearchBudget) -> Self {
        StepCounter {
            used: 0,
            limit: budget.0,
        }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> crate::Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(crate::Error::SearchBudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}
