//! Exact solutions of Pell's equation `x² − Dy² = 1` using only integer
//! matrix arithmetic.
//!
//! Starting from the form `x² − Dy²`, written `(1, 0, −D)`, the walk applies
//! left and right steps (`LᵀAL` and `RᵀAR`) that keep the form balanced
//! (`a > 0`, `c < 0`) until it returns to `(1, 0, −D)`. The product `N` of the
//! step matrices satisfies `NᵀAN = A`, and its first column solves the
//! equation.
//!
//! ```
//! use num_bigint::BigInt;
//!
//! let res = pellwalk::solve(61).unwrap();
//! assert_eq!(res.fundamental.x, BigInt::from(1_766_319_049u64));
//! assert_eq!(res.fundamental.y, BigInt::from(226_153_980u64));
//!
//! // the center form (61, 0, -1) shows x² − 61y² = −1 is solvable too
//! let neg = res.negative.unwrap();
//! assert_eq!((neg.u1, neg.v1), (BigInt::from(29718), BigInt::from(3805)));
//! ```

pub mod cli;
pub mod cycle;
pub mod error;
pub mod form;
pub mod oracle;
pub mod stern_brocot;
pub mod verify;
pub mod word;

pub use cycle::{
    act, iterate, solve, solve_with, validate_d, walk_single_step, CycleResult, NegPellCertificate,
    Nonsquare, PellSign, PellSolution, SolveOptions,
};
pub use error::{Error, Result};
pub use form::{
    classify_step, determinant, invert_step, isqrt, max_run, run_left, run_right, step_left,
    step_right, total, Form,
};
pub use oracle::{brute_force_fundamental, brute_force_negative};
pub use stern_brocot::{convergents, fraction_of_word, prefix_value, Fraction};
pub use verify::{verify_cycle, VerificationReport};
pub use word::{mat_of_word, Dir, Mat2, Run, StepWord};
