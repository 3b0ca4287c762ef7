//! The Pell cycle: walk balanced forms from `(1, 0, −D)` back to itself.
//!
//! Each run is chosen by [`max_run`](crate::form::max_run). The product of
//! the run matrices is the automorphism `N = (u, Dv; v, u)` with
//! `NᵀAN = A` for `A = diag(1, −D)`, so its first column `(u, v)` solves
//! `x² − Dy² = 1`.
//!
//! Two things happen inside runs rather than at their ends:
//!
//! * The final R run would overshoot the start form. Stepping `Rʲ` from
//!   `(1, b, c)` gives middle entry `b + j`, and the determinant forces the
//!   form with middle entry 0 and first entry 1 to be `(1, 0, −D)`. So a run
//!   from `a = 1, b < 0` is cut at `j = −b`.
//! * The center `(D, 0, −1)` sits inside an L run. Stepping `Lʲ` from
//!   `(a, b, −1)` gives middle entry `b − j`, so the center is at `j = b`
//!   when `0 < b < len`. Its presence certifies that `x² − Dy² = −1` is
//!   solvable.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::form::{is_square, isqrt, max_run_with_root, Form};
use crate::word::{Dir, Mat2, Run, StepWord};

/// A nonsquare `D ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Nonsquare(BigInt);

impl Nonsquare {
    pub fn get(&self) -> &BigInt {
        &self.0
    }

    pub fn into_inner(self) -> BigInt {
        self.0
    }
}

/// Accepts `D` if it is positive and not a perfect square.
pub fn validate_d(d: impl Into<BigInt>) -> Result<Nonsquare> {
    let d = d.into();
    if !d.is_positive() {
        return Err(Error::DNotPositive(d));
    }
    if is_square(&d) {
        return Err(Error::DIsSquare(d));
    }
    Ok(Nonsquare(d))
}

/// Sign of the Pell value `x² − Dy²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PellSign {
    Plus,
    Minus,
}

impl PellSign {
    pub fn value(self) -> i32 {
        match self {
            PellSign::Plus => 1,
            PellSign::Minus => -1,
        }
    }
}

/// `x² − D·y² = sign`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PellSolution {
    pub d: BigInt,
    pub x: BigInt,
    pub y: BigInt,
    pub sign: PellSign,
}

impl PellSolution {
    pub fn value(&self) -> BigInt {
        &self.x * &self.x - &self.d * &self.y * &self.y
    }

    pub fn holds(&self) -> bool {
        let ok_y = match self.sign {
            PellSign::Plus => !self.y.is_negative(),
            PellSign::Minus => self.y.is_positive(),
        };
        self.x.is_positive() && ok_y && self.value() == BigInt::from(self.sign.value())
    }
}

/// Witness that `x² − Dy² = −1` is solvable, read off the half cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegPellCertificate {
    pub u1: BigInt,
    pub v1: BigInt,
    /// `M = (D·v1, u1; u1, v1)`, the matrix of `half_word`.
    pub m: Mat2,
    /// The walk from `(1, 0, −D)` to the center `(D, 0, −1)`.
    pub half_word: StepWord,
}

impl NegPellCertificate {
    pub fn solution(&self, d: &BigInt) -> PellSolution {
        PellSolution {
            d: d.clone(),
            x: self.u1.clone(),
            y: self.v1.clone(),
            sign: PellSign::Minus,
        }
    }

    /// `P = (u1, D·v1; v1, u1)`. Its square is the full-cycle matrix `N`.
    pub fn p(&self, d: &BigInt) -> Mat2 {
        Mat2::new(
            self.u1.clone(),
            d * &self.v1,
            self.v1.clone(),
            self.u1.clone(),
        )
    }
}

/// A run-boundary state of the walk: the form at the start of a run and the
/// run taken from it.
pub type TraceEntry = (Form, Run);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleResult {
    pub d: BigInt,
    pub word: StepWord,
    pub n: Mat2,
    pub fundamental: PellSolution,
    pub negative: Option<NegPellCertificate>,
    pub trace: Option<Vec<TraceEntry>>,
}

impl CycleResult {
    /// The forms visited at run boundaries, starting and ending with the
    /// Pell form, recomputed from the word.
    pub fn boundary_forms(&self) -> Vec<Form> {
        let mut f = Form::pell(&self.d);
        let mut out = vec![f.clone()];
        for r in self.word.runs() {
            f = f.apply_run(r);
            out.push(f.clone());
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Keep the run-boundary trace in the result.
    pub trace: bool,
    /// Fail with [`Error::InternalState`] after this many single steps.
    pub max_steps: Option<u64>,
}

/// Solves `x² − Dy² = 1` by walking the cycle of balanced forms.
pub fn solve(d: impl Into<BigInt>) -> Result<CycleResult> {
    solve_with(d, SolveOptions::default())
}

pub fn solve_with(d: impl Into<BigInt>, opts: SolveOptions) -> Result<CycleResult> {
    let d = validate_d(d)?.into_inner();
    let root = isqrt(&d)?;
    let start = Form::pell(&d);
    let neg_d = -&d;
    let limit = opts.max_steps.map(BigUint::from);

    let mut f = start.clone();
    let mut word = StepWord::new();
    let mut n = Mat2::identity();
    let mut steps = BigUint::zero();
    let mut trace = opts.trace.then(Vec::new);
    let mut center: Option<(StepWord, Mat2)> = None;

    loop {
        let mut run = max_run_with_root(&f, &root)?;
        let len = BigInt::from(run.len().clone());
        let mut closes = false;
        match run.dir() {
            Dir::R => {
                if f.a.is_one() && f.b.is_negative() && -&f.b <= len {
                    run = Run::new(Dir::R, (-&f.b).magnitude().clone());
                    closes = true;
                }
            }
            Dir::L => {
                if center.is_none() && f.c == BigInt::from(-1) && f.b.is_positive() && f.b < len
                {
                    let mut half = word.clone();
                    let to_center = Run::new(Dir::L, f.b.magnitude().clone());
                    let mut m = n.clone();
                    m.mul_run_assign(&to_center);
                    half.push_run(to_center);
                    center = Some((half, m));
                }
            }
        }

        let next = f.apply_run(&run);
        if !next.is_balanced() || next.determinant() != neg_d {
            return Err(Error::InternalState(format!(
                "run {run} from {f} reached {next}"
            )));
        }
        steps += run.len();
        if let Some(limit) = &limit {
            if &steps > limit {
                return Err(Error::InternalState(format!(
                    "no return to {start} within {limit} steps"
                )));
            }
        }
        n.mul_run_assign(&run);
        if let Some(t) = trace.as_mut() {
            t.push((f, run.clone()));
        }
        word.push_run(run);
        f = next;

        if closes || f == start {
            if f != start {
                return Err(Error::InternalState(format!(
                    "closing run ended at {f}, not {start}"
                )));
            }
            break;
        }
    }

    let fundamental = PellSolution {
        d: d.clone(),
        x: n.e11.clone(),
        y: n.e21.clone(),
        sign: PellSign::Plus,
    };
    let negative = center.map(|(half_word, m)| NegPellCertificate {
        u1: m.e12.clone(),
        v1: m.e22.clone(),
        m,
        half_word,
    });
    Ok(CycleResult {
        d,
        word,
        n,
        fundamental,
        negative,
        trace,
    })
}

/// Reference walk without run acceleration: one step at a time by the sign
/// of the total, until the first return to `(1, 0, −D)`.
///
/// Returns the word and every form reached after each step.
pub fn walk_single_step(d: impl Into<BigInt>) -> Result<(StepWord, Vec<Form>)> {
    let d = validate_d(d)?.into_inner();
    let start = Form::pell(&d);
    let mut f = start.clone();
    let mut word = StepWord::new();
    let mut forms = Vec::new();
    loop {
        let t = f.total();
        let dir = if t.is_positive() {
            Dir::L
        } else if t.is_negative() {
            Dir::R
        } else {
            return Err(Error::InternalState(format!("zero total at {f}")));
        };
        f = f.step(dir);
        word.push(dir);
        forms.push(f.clone());
        if f == start {
            return Ok((word, forms));
        }
    }
}

/// `(αx + βy, γx + δy)` for `N = (α, β; γ, δ)`.
pub fn act(n: &Mat2, v: (&BigInt, &BigInt)) -> (BigInt, BigInt) {
    let (x, y) = v;
    (&n.e11 * x + &n.e12 * y, &n.e21 * x + &n.e22 * y)
}

/// `[N¹e, N²e, …, Nᵏe]` for `e = (1, 0)`.
pub fn iterate(res: &CycleResult, k: usize) -> Vec<PellSolution> {
    let mut out = Vec::with_capacity(k);
    let mut v = (BigInt::one(), BigInt::zero());
    for _ in 0..k {
        v = act(&res.n, (&v.0, &v.1));
        out.push(PellSolution {
            d: res.d.clone(),
            x: v.0.clone(),
            y: v.1.clone(),
            sign: PellSign::Plus,
        });
    }
    out
}
