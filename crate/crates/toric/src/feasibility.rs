//! Fourier-Motzkin elimination over exact integers, for the small linear
//! systems behind the fan condition and ample-divisor search. Rows encode
//! `coeffs · x + constant ≥ 0`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Row {
    pub coeffs: Vec<BigInt>,
    pub constant: BigInt,
}

impl Row {
    fn normalize(mut self) -> Self {
        let mut g = BigInt::zero();
        for c in self.coeffs.iter().chain(std::iter::once(&self.constant)) {
            g = g.gcd(c);
        }
        if !g.is_zero() && !g.is_one() {
            for c in self.coeffs.iter_mut() {
                *c = &*c / &g;
            }
            self.constant = &self.constant / &g;
        }
        self
    }
}

/// Eliminates one variable, combining each positive row with each negative
/// row; rows not mentioning the variable pass through.
fn eliminate(var: usize, rows: BTreeSet<Row>) -> BTreeSet<Row> {
    let mut next: BTreeSet<Row> = BTreeSet::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for row in rows {
        match row.coeffs[var].sign() {
            num_bigint::Sign::NoSign => {
                next.insert(row);
            }
            num_bigint::Sign::Plus => pos.push(row),
            num_bigint::Sign::Minus => neg.push(row),
        }
    }
    for p in &pos {
        for n in &neg {
            let a = p.coeffs[var].clone();
            let b = -n.coeffs[var].clone();
            let coeffs: Vec<BigInt> = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(pc, nc)| pc * &b + nc * &a)
                .collect();
            let constant = &p.constant * &b + &n.constant * &a;
            next.insert(Row { coeffs, constant }.normalize());
        }
    }
    next
}

/// Whether the system has a rational solution.
pub(crate) fn feasible(num_vars: usize, rows: Vec<Row>) -> bool {
    let mut current: BTreeSet<Row> = rows.into_iter().map(Row::normalize).collect();
    for var in 0..num_vars {
        current = eliminate(var, current);
    }
    current.iter().all(|row| !row.constant.is_negative())
}

/// Returns an integer solution of the system, or `None` if infeasible.
/// Requires every constant ≤ 0 (rows of the form `coeffs · x ≥ margin` with
/// margin ≥ 0): such systems are closed under positive scaling, so a
/// rational solution clears to an integer one. Variables are eliminated
/// front to back and assigned in reverse, each taking the smallest integer
/// inside its interval (or the midpoint when the interval contains none).
pub(crate) fn solve(num_vars: usize, rows: Vec<Row>) -> Option<Vec<BigInt>> {
    debug_assert!(
        rows.iter().all(|r| !r.constant.is_positive()),
        "solve requires margin-style rows (constants ≤ 0)"
    );
    let mut stages: Vec<Vec<Row>> = Vec::with_capacity(num_vars);
    let mut current: BTreeSet<Row> = rows.into_iter().map(Row::normalize).collect();
    for var in 0..num_vars {
        stages.push(current.iter().cloned().collect());
        current = eliminate(var, current);
    }
    if current.iter().any(|row| row.constant.is_negative()) {
        return None;
    }

    let mut solution = vec![BigRational::zero(); num_vars];
    for var in (0..num_vars).rev() {
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for row in &stages[var] {
            let a = &row.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let mut rest = BigRational::from(row.constant.clone());
            for (c, value) in row.coeffs[var + 1..].iter().zip(&solution[var + 1..]) {
                rest += BigRational::from(c.clone()) * value;
            }
            // a·x + rest ≥ 0.
            let bound = -rest / BigRational::from(a.clone());
            if a.is_positive() {
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        solution[var] = match (lower, upper) {
            (Some(lo), Some(hi)) => {
                debug_assert!(lo <= hi, "feasible system has a consistent interval");
                let candidate = lo.ceil();
                if candidate <= hi {
                    candidate
                } else {
                    (lo + hi) / BigRational::from(BigInt::from(2))
                }
            }
            (Some(lo), None) => {
                let one = BigRational::one();
                if lo < one {
                    one
                } else {
                    lo.ceil()
                }
            }
            (None, Some(hi)) => {
                let one = BigRational::one();
                if hi > one {
                    one
                } else {
                    hi.floor()
                }
            }
            (None, None) => BigRational::one(),
        };
    }

    let mut scale = BigInt::one();
    for value in &solution {
        scale = scale.lcm(value.denom());
    }
    Some(
        solution
            .into_iter()
            .map(|value| (value * BigRational::from(scale.clone())).to_integer())
            .collect(),
    )
}
