//! Step words as paths in the Stern–Brocot tree.
//!
//! The matrix `W` of a word has as columns the two parent fractions of the
//! node the word reaches, and the node itself is their mediant, the column
//! sum `(e11 + e12) / (e21 + e22)`. Repeating the cycle word of `D` forever
//! traces the path towards `√D`; each letter-prefix gives a convergent.
//!
//! For `(p, q)` the column sum of `W`, `p² − Dq²` is `(1, 1) WᵀAW (1, 1)ᵀ`,
//! the total of the form reached by replaying the word from `(1, 0, −D)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::cycle::{solve, validate_d};
use crate::error::Result;
use crate::word::{Dir, Mat2, Run, StepWord};

/// Positive reduced fraction `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub p: BigInt,
    pub q: BigInt,
}

impl Fraction {
    fn of_matrix(m: &Mat2) -> Fraction {
        Fraction {
            p: &m.e11 + &m.e12,
            q: &m.e21 + &m.e22,
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// The tree node reached by `w`; the empty word is the root `1/1`.
pub fn fraction_of_word(w: &StepWord) -> Fraction {
    Fraction::of_matrix(&w.matrix())
}

/// Fractions of the first `count` letter-prefixes of the periodic cycle
/// word of `D`.
pub fn convergents(d: impl Into<BigInt>, count: usize) -> Result<Vec<Fraction>> {
    let cycle = solve(d)?;
    let mut m = Mat2::identity();
    let step_r = Run::new(Dir::R, 1u32);
    let step_l = Run::new(Dir::L, 1u32);
    Ok(cycle
        .word
        .letters()
        .cycle()
        .take(count)
        .map(|dir| {
            m.mul_run_assign(if dir == Dir::R { &step_r } else { &step_l });
            Fraction::of_matrix(&m)
        })
        .collect())
}

/// `p² − D·q²` for the fraction of `prefix`.
pub fn prefix_value(d: impl Into<BigInt>, prefix: &StepWord) -> Result<BigInt> {
    let d = validate_d(d)?.into_inner();
    let Fraction { p, q } = fraction_of_word(prefix);
    Ok(&p * &p - &d * &q * &q)
}

/// `|p·q′ − p′·q| = 1`.
pub fn are_neighbors(x: &Fraction, y: &Fraction) -> bool {
    let cross = &x.p * &y.q - &y.p * &x.q;
    cross.magnitude().is_one()
}
