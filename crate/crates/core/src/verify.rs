//! Independent checks of a [`CycleResult`]. Failures are collected into a
//! report instead of being returned as errors.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cycle::CycleResult;
use crate::form::Form;
use crate::word::{Dir, Mat2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "ok" } else { "FAIL" };
            writeln!(f, "{tag:4} {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

pub const MATRIX_OF_WORD: &str = "matrix_of_word";
pub const AUTOMORPHISM: &str = "automorphism";
pub const FUNDAMENTAL: &str = "fundamental";
pub const WORD_PALINDROME: &str = "word_palindrome";
pub const REPLAY: &str = "replay";
pub const CERTIFICATE: &str = "certificate";
pub const FORM_PALINDROME: &str = "form_palindrome";

/// Runs every consistency check on a cycle result.
pub fn verify_cycle(res: &CycleResult) -> VerificationReport {
    let mut rep = VerificationReport::default();
    let d = &res.d;
    let a = Mat2::new(1.into(), 0.into(), 0.into(), -d);

    let from_word = res.word.matrix();
    rep.push(
        MATRIX_OF_WORD,
        from_word == res.n,
        format!("word gives {from_word}, N = {}", res.n),
    );

    let conj = &(&res.n.transpose() * &a) * &res.n;
    let shaped = res.n.is_strictly_positive() && res.n.e11 == res.n.e22 && res.n.e12 == d * &res.n.e21;
    rep.push(
        AUTOMORPHISM,
        conj == a && shaped,
        format!("NᵀAN = {conj}, N = {}", res.n),
    );

    let fund = &res.fundamental;
    rep.push(
        FUNDAMENTAL,
        fund.holds() && fund.d == *d && res.n.first_column() == (fund.x.clone(), fund.y.clone()),
        format!("({}, {}) gives {}", fund.x, fund.y, fund.value()),
    );

    let ends_r = res.word.runs().first().map(|r| r.dir()) == Some(Dir::R)
        && res.word.runs().last().map(|r| r.dir()) == Some(Dir::R);
    rep.push(
        WORD_PALINDROME,
        res.word.is_palindrome() && ends_r,
        format!("{} runs", res.word.runs().len()),
    );

    let forms = res.boundary_forms();
    rep.push(REPLAY, replay_ok(&forms, d), format!("{} boundary forms", forms.len()));

    match &res.negative {
        None => rep.push(CERTIFICATE, true, "no center form"),
        Some(cert) => {
            let sol = cert.solution(d);
            let m_shape = cert.m == Mat2::new(d * &cert.v1, cert.u1.clone(), cert.u1.clone(), cert.v1.clone());
            let m_word = cert.m == cert.half_word.matrix();
            let p = cert.p(d);
            let p_sq = &p * &p == res.n;
            let doubly = cert.half_word.reversed().swapped() == cert.half_word;
            let center = cert
                .half_word
                .runs()
                .iter()
                .fold(Form::pell(d), |f, r| f.apply_run(r))
                == Form::new(d.clone(), 0, -1);
            rep.push(
                CERTIFICATE,
                sol.holds() && m_shape && m_word && p_sq && doubly && center,
                format!(
                    "u1 = {}, v1 = {}, value {}, M shape {m_shape}, M from word {m_word}, P² = N {p_sq}, half palindrome {doubly}, center {center}",
                    cert.u1,
                    cert.v1,
                    sol.value()
                ),
            );
        }
    }

    // The run lengths mirror around the middle, so boundary i from the start
    // and boundary i from the end sit at mirrored letter positions.
    let mirrored = forms
        .iter()
        .zip(forms.iter().rev())
        .all(|(f, g)| *f == g.mirrored());
    rep.push(FORM_PALINDROME, mirrored, "boundary forms mirror with b negated");

    rep
}

// Within an R run `a` is fixed and `c + 2bj + aj²` is convex in `j`; within an
// L run `c` is fixed and `a + 2bj + cj²` is concave. Balanced endpoints thus
// imply balanced intermediates, so boundaries suffice.
fn replay_ok(forms: &[Form], d: &BigInt) -> bool {
    let start = Form::pell(d);
    if forms.len() < 2 || forms[0] != start || forms[forms.len() - 1] != start {
        return false;
    }
    !forms[1..forms.len() - 1].contains(&start)
        && forms
            .iter()
            .all(|f| f.is_balanced() && f.determinant() == -d && !f.total().is_zero())
}
