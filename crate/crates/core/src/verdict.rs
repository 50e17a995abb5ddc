//! Three-valued outcome of checking an inequality against an enclosure.

use num_rational::BigRational;

use crate::numerics::RatInterval;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Every member of the enclosure satisfies the inequality.
    Holds,
    /// No member of the enclosure satisfies it.
    Fails,
    /// The enclosure straddles the boundary.
    Undecided,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    /// `lo < x < hi` for all `x ∈ iv`.
    pub fn strictly_inside(iv: &RatInterval, lo: &BigRational, hi: &BigRational) -> Self {
        Self::greater_than(iv, lo).and(Self::less_than(iv, hi))
    }

    /// `x > bound` for all `x ∈ iv`.
    pub fn greater_than(iv: &RatInterval, bound: &BigRational) -> Self {
        if iv.lo() > bound {
            Verdict::Holds
        } else if iv.hi() <= bound {
            Verdict::Fails
        } else {
            Verdict::Undecided
        }
    }

    /// `x < bound` for all `x ∈ iv`.
    pub fn less_than(iv: &RatInterval, bound: &BigRational) -> Self {
        if iv.hi() < bound {
            Verdict::Holds
        } else if iv.lo() >= bound {
            Verdict::Fails
        } else {
            Verdict::Undecided
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            (Verdict::Holds, Verdict::Holds) => Verdict::Holds,
            _ => Verdict::Undecided,
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}
