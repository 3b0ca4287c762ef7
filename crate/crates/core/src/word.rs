//! Step words over the alphabet {L, R} and their 2×2 integer matrices.
//!
//! A [`StepWord`] is stored run-length encoded with strictly alternating
//! directions. Pushing a run in the same direction as the last one merges
//! the two, so `L^7 L^7` and `L^14` are the same word.
//!
//! The text format is a space separated list of runs, each `R` or `L`
//! optionally followed by `^` and a decimal exponent of at least 2:
//!
//! ```
//! use pellwalk::StepWord;
//!
//! let w: StepWord = "R L^2 R".parse().unwrap();
//! assert_eq!(w.runs().len(), 3);
//! assert_eq!(w.to_string(), "R L^2 R");
//!
//! let merged: StepWord = "L^7 L^7".parse().unwrap();
//! assert_eq!(merged.to_string(), "L^14");
//! ```

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Direction of a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    /// `L = (1 0; 1 1)`
    L,
    /// `R = (1 1; 0 1)`
    R,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::L => Dir::R,
            Dir::R => Dir::L,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Dir::L => 'L',
            Dir::R => 'R',
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A block of `len ≥ 1` consecutive steps in one direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Run {
    dir: Dir,
    len: BigUint,
}

impl Run {
    /// Panics if `len` is zero.
    pub fn new(dir: Dir, len: impl Into<BigUint>) -> Run {
        let len = len.into();
        assert!(!len.is_zero(), "a run has positive length");
        Run { dir, len }
    }

    pub fn dir(&self) -> Dir {
        self.dir
    }

    pub fn len(&self) -> &BigUint {
        &self.len
    }

    pub fn matrix(&self) -> Mat2 {
        let n = BigInt::from(self.len.clone());
        match self.dir {
            Dir::R => Mat2::new(1.into(), n, 0.into(), 1.into()),
            Dir::L => Mat2::new(1.into(), 0.into(), n, 1.into()),
        }
    }
}

impl fmt::Display for Run {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len.is_one() {
            write!(f, "{}", self.dir)
        } else {
            write!(f, "{}^{}", self.dir, self.len)
        }
    }
}

/// Run-length encoded L/R word with strictly alternating runs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct StepWord {
    runs: Vec<Run>,
}

impl StepWord {
    pub fn new() -> StepWord {
        StepWord::default()
    }

    pub fn from_runs<I: IntoIterator<Item = Run>>(runs: I) -> StepWord {
        let mut w = StepWord::new();
        for r in runs {
            w.push_run(r);
        }
        w
    }

    pub fn from_letters<I: IntoIterator<Item = Dir>>(letters: I) -> StepWord {
        let mut w = StepWord::new();
        for d in letters {
            w.push(d);
        }
        w
    }

    /// Appends a run, merging it into the last run when the directions match.
    pub fn push_run(&mut self, run: Run) {
        match self.runs.last_mut() {
            Some(last) if last.dir == run.dir => last.len += run.len,
            _ => self.runs.push(run),
        }
    }

    pub fn push(&mut self, dir: Dir) {
        self.push_run(Run::new(dir, 1u32));
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Total number of single steps.
    pub fn letter_count(&self) -> BigUint {
        self.runs.iter().map(|r| &r.len).sum()
    }

    /// Expands the word into single letters.
    pub fn letters(&self) -> impl Iterator<Item = Dir> + Clone + '_ {
        self.runs.iter().flat_map(|r| {
            let mut left = r.len.clone();
            std::iter::from_fn(move || {
                if left.is_zero() {
                    None
                } else {
                    left -= 1u32;
                    Some(r.dir)
                }
            })
        })
    }

    /// The word read backwards.
    pub fn reversed(&self) -> StepWord {
        StepWord {
            runs: self.runs.iter().rev().cloned().collect(),
        }
    }

    /// The word with every L replaced by R and vice versa.
    pub fn swapped(&self) -> StepWord {
        StepWord {
            runs: self
                .runs
                .iter()
                .map(|r| Run::new(r.dir.flip(), r.len.clone()))
                .collect(),
        }
    }

    pub fn is_palindrome(&self) -> bool {
        *self == self.reversed()
    }

    /// Ordered product of the step matrices. The empty word maps to the
    /// identity.
    pub fn matrix(&self) -> Mat2 {
        let mut m = Mat2::identity();
        for r in &self.runs {
            m.mul_run_assign(r);
        }
        m
    }
}

/// Ordered product of the run matrices `R^n = (1 n; 0 1)` and
/// `L^m = (1 0; m 1)`.
pub fn mat_of_word(w: &StepWord) -> Mat2 {
    w.matrix()
}

impl fmt::Display for StepWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for StepWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<StepWord, Error> {
        let mut w = StepWord::new();
        if s.is_empty() {
            return Ok(w);
        }
        for tok in s.split(' ') {
            let (head, exp) = match tok.split_once('^') {
                Some((h, e)) => (h, Some(e)),
                None => (tok, None),
            };
            let dir = match head {
                "L" => Dir::L,
                "R" => Dir::R,
                _ => return Err(Error::ParseWord(format!("bad run {tok:?}"))),
            };
            let len = match exp {
                None => BigUint::one(),
                Some(e) => {
                    if e.is_empty() || !e.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(Error::ParseWord(format!("bad exponent in {tok:?}")));
                    }
                    let n: BigUint = e
                        .parse()
                        .map_err(|_| Error::ParseWord(format!("bad exponent in {tok:?}")))?;
                    if n < BigUint::from(2u32) {
                        return Err(Error::ParseWord(format!(
                            "exponent in {tok:?} must be at least 2"
                        )));
                    }
                    n
                }
            };
            w.push_run(Run::new(dir, len));
        }
        Ok(w)
    }
}

/// 2×2 integer matrix, row-major `(e11 e12; e21 e22)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub e11: BigInt,
    pub e12: BigInt,
    pub e21: BigInt,
    pub e22: BigInt,
}

impl Mat2 {
    pub fn new(e11: BigInt, e12: BigInt, e21: BigInt, e22: BigInt) -> Mat2 {
        Mat2 { e11, e12, e21, e22 }
    }

    pub fn from_i64(e11: i64, e12: i64, e21: i64, e22: i64) -> Mat2 {
        Mat2::new(e11.into(), e12.into(), e21.into(), e22.into())
    }

    pub fn identity() -> Mat2 {
        Mat2::from_i64(1, 0, 0, 1)
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(
            self.e11.clone(),
            self.e21.clone(),
            self.e12.clone(),
            self.e22.clone(),
        )
    }

    pub fn det(&self) -> BigInt {
        &self.e11 * &self.e22 - &self.e12 * &self.e21
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.e11, &self.e12, &self.e21, &self.e22]
    }

    pub fn first_column(&self) -> (BigInt, BigInt) {
        (self.e11.clone(), self.e21.clone())
    }

    pub fn second_column(&self) -> (BigInt, BigInt) {
        (self.e12.clone(), self.e22.clone())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries().iter().all(|e| !e.is_negative())
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.entries().iter().all(|e| e.is_positive())
    }

    /// `self ← self · run.matrix()`, done column-wise without a full product.
    pub fn mul_run_assign(&mut self, run: &Run) {
        let n = BigInt::from(run.len.clone());
        match run.dir {
            // right column += n · left column
            Dir::R => {
                self.e12 += &self.e11 * &n;
                self.e22 += &self.e21 * &n;
            }
            // left column += n · right column
            Dir::L => {
                self.e11 += &self.e12 * &n;
                self.e21 += &self.e22 * &n;
            }
        }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Mat2 {
        let mut acc = Mat2::identity();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &self.e11 * &o.e11 + &self.e12 * &o.e21,
            &self.e11 * &o.e12 + &self.e12 * &o.e22,
            &self.e21 * &o.e11 + &self.e22 * &o.e21,
            &self.e21 * &o.e12 + &self.e22 * &o.e22,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        &self * &o
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.e11, self.e12, self.e21, self.e22)
    }
}
