//! Exact combinatorics for unfolded Cartan data: the even monomial crystal,
//! coweight bookkeeping, sequence bijections, a small Lie theory oracle and a
//! symbolic checker for GKLO-type difference operator representations.

// matrix code reads better with explicit indices
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod caps;
pub mod cartan;
pub mod coweight;
pub mod crystal;
pub mod gklo;
pub mod golden;
pub mod lie;
pub mod monomial;
pub mod par;
pub mod seqcomb;
