//! Binary quadratic forms `ax² + 2bxy + cy²` and the left/right step calculus.
//!
//! A left step replaces the form's matrix `A = (a b; b c)` by `LᵀAL`, a right
//! step by `RᵀAR`. On triples:
//!
//! ```text
//! (a, b, c) L  (a + 2b + c, b + c, c)
//! (a, b, c) R  (a, a + b, a + 2b + c)
//! ```
//!
//! Steps are defined for every form. Only [`max_run`] and the cycle walk
//! require the form to be balanced (`a > 0`, `c < 0`).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::word::{Dir, Mat2, Run};

/// The form `a·x² + 2b·xy + c·y²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Form {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Form {
        Form {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    /// The Pell form `x² − D·y²`, i.e. `(1, 0, −D)`.
    pub fn pell(d: &BigInt) -> Form {
        Form::new(1, 0, -d)
    }

    /// The symmetric matrix `(a b; b c)`.
    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.a.clone(), self.b.clone(), self.b.clone(), self.c.clone())
    }

    /// Reads a form back from a symmetric matrix. `None` if not symmetric.
    pub fn from_matrix(m: &Mat2) -> Option<Form> {
        (m.e12 == m.e21).then(|| Form::new(m.e11.clone(), m.e12.clone(), m.e22.clone()))
    }

    /// `a > 0` and `c < 0`.
    pub fn is_balanced(&self) -> bool {
        self.a.is_positive() && self.c.is_negative()
    }

    pub fn total(&self) -> BigInt {
        total(self)
    }

    pub fn determinant(&self) -> BigInt {
        determinant(self)
    }

    /// Value of the form at `(x, y)`.
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + BigInt::from(2) * &self.b * x * y + &self.c * y * y
    }

    /// The same form with the middle coefficient negated.
    pub fn mirrored(&self) -> Form {
        Form::new(self.a.clone(), -&self.b, self.c.clone())
    }

    pub fn step(&self, dir: Dir) -> Form {
        match dir {
            Dir::L => step_left(self),
            Dir::R => step_right(self),
        }
    }

    /// Applies a whole run in closed form.
    pub fn apply_run(&self, run: &Run) -> Form {
        let n = BigInt::from(run.len().clone());
        match run.dir() {
            Dir::L => run_left(self, &n),
            Dir::R => run_right(self, &n),
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// `T = a + 2b + c`, the value of the form at `(1, 1)`.
pub fn total(f: &Form) -> BigInt {
    &f.a + BigInt::from(2) * &f.b + &f.c
}

/// `a·c − b²`.
pub fn determinant(f: &Form) -> BigInt {
    &f.a * &f.c - &f.b * &f.b
}

pub fn step_right(f: &Form) -> Form {
    Form {
        a: f.a.clone(),
        b: &f.a + &f.b,
        c: total(f),
    }
}

pub fn step_left(f: &Form) -> Form {
    Form {
        a: total(f),
        b: &f.b + &f.c,
        c: f.c.clone(),
    }
}

/// `(a, b, c) Rⁿ = (a, b + an, c + 2bn + an²)`.
pub fn run_right(f: &Form, n: &BigInt) -> Form {
    Form {
        a: f.a.clone(),
        b: &f.b + &f.a * n,
        c: &f.c + BigInt::from(2) * &f.b * n + &f.a * n * n,
    }
}

/// `(a, b, c) Lᵐ = (a + 2bm + cm², b + cm, c)`.
pub fn run_left(f: &Form, m: &BigInt) -> Form {
    Form {
        a: &f.a + BigInt::from(2) * &f.b * m + &f.c * m * m,
        b: &f.b + &f.c * m,
        c: f.c.clone(),
    }
}

/// Undoes a single step in direction `dir`.
pub fn invert_step(f: &Form, dir: Dir) -> Form {
    let back = &f.a - BigInt::from(2) * &f.b + &f.c;
    match dir {
        Dir::L => Form {
            a: back,
            b: &f.b - &f.c,
            c: f.c.clone(),
        },
        Dir::R => Form {
            a: f.a.clone(),
            b: &f.b - &f.a,
            c: back,
        },
    }
}

/// Recovers the direction of the step that produced `succ` from `pred`.
///
/// The sign of `a′ − 2b′ + c′` for `succ = (a′, b′, c′)` is the sign of
/// `pred.a` after a left step and of `pred.c` after a right step, so it
/// decides the direction from `succ` alone. An error is returned when that
/// quantity is zero or when `succ` is not a single step of `pred`.
pub fn classify_step(pred: &Form, succ: &Form) -> Result<Dir> {
    let back = &succ.a - BigInt::from(2) * &succ.b + &succ.c;
    let dir = if back.is_positive() {
        Dir::L
    } else if back.is_negative() {
        Dir::R
    } else {
        return Err(Error::InternalState(format!(
            "cannot classify step into {succ}: a - 2b + c = 0"
        )));
    };
    if pred.step(dir) != *succ {
        return Err(Error::InternalState(format!(
            "{succ} is not a {dir} step from {pred}"
        )));
    }
    Ok(dir)
}

/// `⌊√n⌋` for `n ≥ 0`.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::NegativeSqrt(n.clone()));
    }
    Ok(n.sqrt())
}

/// The maximal run of steps in the direction selected by the total that
/// keeps the form balanced.
///
/// For `T < 0` this is `Rⁿ` with `n = k − 1`, `k` the smallest positive
/// integer with `c + 2bk + ak² > 0`; for `T > 0` it is `Lᵐ` with `m = l − 1`,
/// `l` the smallest positive integer with `a + 2bl + cl² < 0`.
pub fn max_run(f: &Form, d: &BigInt) -> Result<Run> {
    let root = isqrt(d)?;
    max_run_with_root(f, &root)
}

/// [`max_run`] with `⌊√D⌋` already known.
///
/// The positive root of `ak² + 2bk + c` is `(−b + √D)/a`, and the positive
/// root of `cl² + 2bl + a` is `(b + √D)/(−c)`. Since `√D` is irrational,
/// `⌊(P + √D)/Q⌋ = ⌊(P + ⌊√D⌋)/Q⌋` for `Q > 0`. The closed form is then
/// checked against the quadratic at `len` and `len + 1`.
pub(crate) fn max_run_with_root(f: &Form, root: &BigInt) -> Result<Run> {
    if !f.is_balanced() {
        return Err(Error::InternalState(format!("form {f} is not balanced")));
    }
    let t = total(f);
    let dir = if t.is_negative() {
        Dir::R
    } else if t.is_positive() {
        Dir::L
    } else {
        return Err(Error::InternalState(format!(
            "form {f} has zero total; D is a square"
        )));
    };
    let guess = match dir {
        Dir::R => (root - &f.b).div_floor(&f.a),
        Dir::L => (&f.b + root).div_floor(&(-&f.c)),
    };
    let len = if run_len_is_maximal(f, dir, &guess) {
        guess
    } else {
        linear_run_len(f, dir)
    };
    let len = len
        .to_biguint()
        .filter(|l| !l.is_zero())
        .ok_or_else(|| Error::InternalState(format!("empty run from {f}")))?;
    Ok(Run::new(dir, len))
}

// c + 2bk + ak² for R, a + 2bl + cl² for L.
fn edge_value(f: &Form, dir: Dir, k: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    match dir {
        Dir::R => &f.c + &two * &f.b * k + &f.a * k * k,
        Dir::L => &f.a + &two * &f.b * k + &f.c * k * k,
    }
}

// The edge quadratic is convex for R (a > 0) and concave for L (c < 0) and
// starts on the balanced side at k = 0, so the sign at len and len + 1 is
// enough to pin down the first crossing.
fn run_len_is_maximal(f: &Form, dir: Dir, len: &BigInt) -> bool {
    if !len.is_positive() {
        return false;
    }
    let here = edge_value(f, dir, len);
    let next = edge_value(f, dir, &(len + 1));
    match dir {
        Dir::R => here.is_negative() && next.is_positive(),
        Dir::L => here.is_positive() && next.is_negative(),
    }
}

fn linear_run_len(f: &Form, dir: Dir) -> BigInt {
    let mut k = BigInt::one();
    loop {
        let v = edge_value(f, dir, &k);
        let crossed = match dir {
            Dir::R => v.is_positive(),
            Dir::L => v.is_negative(),
        };
        if crossed {
            return k - 1;
        }
        k += 1;
    }
}

/// `true` iff `n` is a perfect square (and non-negative).
pub fn is_square(n: &BigInt) -> bool {
    match isqrt(n) {
        Ok(r) => &r * &r == *n,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn fm(a: i64, b: i64, c: i64) -> Form {
        Form::new(a, b, c)
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn totals() {
        assert_eq!(total(&fm(1, 0, -2)), big(-1));
        assert_eq!(total(&fm(1, 1, -1)), big(2));
        for d in [2, 7, 61, 1000] {
            assert_eq!(total(&Form::pell(&big(d))), big(1 - d));
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&fm(1, 0, -2)), big(-2));
        assert_eq!(determinant(&fm(3, -5, -12)), big(-61));
        assert_eq!(determinant(&fm(1, 0, 0)), big(0));
    }

    #[test]
    fn single_steps() {
        assert_eq!(step_right(&fm(1, 0, -2)), fm(1, 1, -1));
        assert_eq!(step_right(&fm(1, -1, -1)), fm(1, 0, -2));
        assert_eq!(step_right(&fm(1, 1, -6)), fm(1, 2, -3));
        assert_eq!(step_left(&fm(1, 1, -1)), fm(2, 0, -1));
        assert_eq!(step_left(&fm(1, 0, -3)), fm(-2, -3, -3));
        assert_eq!(step_left(&fm(1, 7, -12)), fm(3, -5, -12));
    }

    #[test]
    fn closed_form_runs() {
        assert_eq!(run_right(&fm(1, 0, -61), &big(7)), fm(1, 7, -12));
        assert_eq!(run_right(&fm(1, -2, -3), &big(2)), fm(1, 0, -7));
        assert_eq!(run_right(&fm(5, -3, 8), &big(0)), fm(5, -3, 8));
        assert_eq!(run_left(&fm(1, 1, -1), &big(2)), fm(1, -1, -1));
        assert_eq!(run_left(&fm(5, -3, 8), &big(0)), fm(5, -3, 8));
        // two L^7 halves around the D = 61 center, checked by 14 single steps
        let mut f = fm(12, 7, -1);
        for _ in 0..14 {
            f = step_left(&f);
        }
        assert_eq!(f, fm(12, -7, -1));
        assert_eq!(run_left(&fm(12, 7, -1), &big(14)), fm(12, -7, -1));
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&big(61)).unwrap(), big(7));
        assert_eq!(isqrt(&big(0)).unwrap(), big(0));
        assert_eq!(isqrt(&big(16)).unwrap(), big(4));
        assert!(matches!(isqrt(&big(-1)), Err(Error::NegativeSqrt(_))));
    }

    #[test]
    fn max_run_examples() {
        let r = max_run(&fm(1, 0, -61), &big(61)).unwrap();
        assert_eq!((r.dir(), r.len().clone()), (Dir::R, BigUint::from(7u32)));
        let r = max_run(&fm(1, 7, -12), &big(61)).unwrap();
        assert_eq!((r.dir(), r.len().clone()), (Dir::L, BigUint::from(1u32)));
        let r = max_run(&fm(12, 7, -1), &big(61)).unwrap();
        assert_eq!((r.dir(), r.len().clone()), (Dir::L, BigUint::from(14u32)));
    }

    #[test]
    fn max_run_rejects_unbalanced_and_zero_total() {
        assert!(matches!(
            max_run(&fm(-1, 0, 2), &big(2)),
            Err(Error::InternalState(_))
        ));
        // (1, 0, -1) has determinant -1 = -D with D = 1 a square; T = 0
        assert!(matches!(
            max_run(&fm(1, 0, -1), &big(1)),
            Err(Error::InternalState(_))
        ));
    }

    #[test]
    fn linear_fallback_agrees_with_closed_form() {
        for d in [2i64, 3, 5, 7, 13, 61, 94, 109] {
            let root = isqrt(&big(d)).unwrap();
            let mut f = Form::pell(&big(d));
            for _ in 0..20 {
                let run = max_run_with_root(&f, &root).unwrap();
                let lin = linear_run_len(&f, run.dir());
                assert_eq!(BigInt::from(run.len().clone()), lin);
                f = f.apply_run(&run);
            }
        }
    }

    #[test]
    fn classify_worked_steps() {
        assert_eq!(classify_step(&fm(1, 0, -2), &fm(1, 1, -1)).unwrap(), Dir::R);
        assert_eq!(classify_step(&fm(1, 1, -1), &fm(2, 0, -1)).unwrap(), Dir::L);
        assert_eq!(classify_step(&fm(2, 0, -1), &fm(1, -1, -1)).unwrap(), Dir::L);
        assert!(classify_step(&fm(1, 0, -2), &fm(1, 0, -1)).is_err());
        assert!(classify_step(&fm(1, 1, 1), &fm(1, 1, 1)).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(invert_step(&fm(2, 0, -1), Dir::L), fm(1, 1, -1));
        assert_eq!(invert_step(&fm(1, 1, -1), Dir::R), fm(1, 0, -2));
    }

    fn small_form() -> impl Strategy<Value = Form> {
        (-50i64..50, -50i64..50, -50i64..50).prop_map(|(a, b, c)| fm(a, b, c))
    }

    // Balanced forms of determinant -D for a nonsquare D, found by walking
    // a few runs from the Pell form.
    fn balanced_on_cycle() -> impl Strategy<Value = (Form, BigInt)> {
        (2i64..2000, 0usize..40).prop_filter_map("square D", |(d, steps)| {
            let d = big(d);
            if is_square(&d) {
                return None;
            }
            let root = isqrt(&d).unwrap();
            let mut f = Form::pell(&d);
            for _ in 0..steps {
                let run = max_run_with_root(&f, &root).ok()?;
                f = f.apply_run(&run);
            }
            Some((f, d))
        })
    }

    proptest! {
        #[test]
        fn steps_match_matrix_conjugation(f in small_form()) {
            let a = f.matrix();
            for dir in [Dir::L, Dir::R] {
                let s = Run::new(dir, 1u32).matrix();
                let conj = &(&s.transpose() * &a) * &s;
                prop_assert_eq!(Form::from_matrix(&conj).unwrap(), f.step(dir));
            }
        }

        #[test]
        fn steps_preserve_determinant(f in small_form()) {
            prop_assert_eq!(determinant(&step_left(&f)), determinant(&f));
            prop_assert_eq!(determinant(&step_right(&f)), determinant(&f));
        }

        #[test]
        fn runs_match_repeated_steps(f in small_form(), n in 0u32..=50) {
            let mut l = f.clone();
            let mut r = f.clone();
            for _ in 0..n {
                l = step_left(&l);
                r = step_right(&r);
            }
            prop_assert_eq!(run_left(&f, &BigInt::from(n)), l);
            prop_assert_eq!(run_right(&f, &BigInt::from(n)), r);
        }

        #[test]
        fn invert_step_is_two_sided(f in small_form()) {
            for dir in [Dir::L, Dir::R] {
                prop_assert_eq!(invert_step(&f.step(dir), dir), f.clone());
                prop_assert_eq!(invert_step(&f, dir).step(dir), f.clone());
            }
        }

        #[test]
        fn max_run_keeps_balance_and_flips_total((f, d) in balanced_on_cycle()) {
            let run = max_run(&f, &d).unwrap();
            let len = run.len().to_u64().unwrap();
            let mut g = f.clone();
            for _ in 0..len {
                g = g.step(run.dir());
                prop_assert!(g.is_balanced());
                prop_assert_eq!(determinant(&g), -&d);
            }
            prop_assert_eq!(total(&g).is_positive(), total(&f).is_negative());
            let one_more = BigInt::from(len + 1);
            match run.dir() {
                Dir::R => prop_assert!(run_right(&f, &one_more).c.is_positive()),
                Dir::L => prop_assert!(run_left(&f, &one_more).a.is_negative()),
            }
        }

        #[test]
        fn isqrt_brackets(bytes in proptest::collection::vec(any::<u8>(), 0..17)) {
            let n = BigInt::from(BigUint::from_bytes_le(&bytes));
            let r = isqrt(&n).unwrap();
            prop_assert!(&r * &r <= n);
            prop_assert!((&r + 1) * (&r + 1) > n);
        }
    }
}
