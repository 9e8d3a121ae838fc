//! Exact feasibility of small systems of linear inequalities by
//! Fourier–Motzkin elimination.
//!
//! Every derived row remembers the nonnegative combination of input rows it
//! came from, so an infeasible answer carries a Farkas-style certificate that
//! can be checked without re-running the elimination. Feasible answers come
//! with a witness recovered by back-substitution.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{RVector, Rational};
use crate::error::{Error, Result};

/// `coeffs · y ≤ bound`, or `<` when `strict`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub coeffs: RVector,
    pub bound: Rational,
    pub strict: bool,
}

impl Constraint {
    pub fn le(coeffs: RVector, bound: Rational) -> Self {
        Constraint {
            coeffs,
            bound,
            strict: false,
        }
    }

    pub fn lt(coeffs: RVector, bound: Rational) -> Self {
        Constraint {
            coeffs,
            bound,
            strict: true,
        }
    }

    pub fn holds_at(&self, y: &RVector) -> bool {
        let lhs = self.coeffs.dot(y);
        if self.strict {
            lhs < self.bound
        } else {
            lhs <= self.bound
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearSystem {
    num_vars: usize,
    constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem {
            num_vars,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn push(&mut self, c: Constraint) -> Result<()> {
        if c.coeffs.dim() != self.num_vars {
            return Err(Error::Dimension(format!(
                "constraint has {} coefficients, system has {} variables",
                c.coeffs.dim(),
                self.num_vars
            )));
        }
        self.constraints.push(c);
        Ok(())
    }

    pub fn le(&mut self, coeffs: RVector, bound: Rational) -> Result<()> {
        self.push(Constraint::le(coeffs, bound))
    }

    pub fn lt(&mut self, coeffs: RVector, bound: Rational) -> Result<()> {
        self.push(Constraint::lt(coeffs, bound))
    }

    /// `|coeffs · y| ≤ bound` as two rows.
    pub fn abs_le(&mut self, coeffs: RVector, bound: Rational) -> Result<()> {
        self.le(coeffs.neg(), bound.clone())?;
        self.le(coeffs, bound)
    }

    pub fn satisfied_by(&self, y: &RVector) -> bool {
        y.dim() == self.num_vars && self.constraints.iter().all(|c| c.holds_at(y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FmConfig {
    pub max_vars: usize,
    /// Guard against elimination blow-up.
    pub max_rows: usize,
}

impl Default for FmConfig {
    fn default() -> Self {
        FmConfig {
            max_vars: 8,
            max_rows: 200_000,
        }
    }
}

/// Nonnegative multipliers on the input rows whose combination reads
/// `0 ≤ negative` (or `0 < nonpositive` when a strict row takes part).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// `(row index, multiplier)`, sorted by index, multipliers positive.
    pub multipliers: Vec<(usize, Rational)>,
    /// Variables in the order they were eliminated.
    pub elimination_order: Vec<usize>,
}

impl Certificate {
    /// Independent check that the multipliers prove infeasibility.
    pub fn verify(&self, sys: &LinearSystem) -> bool {
        let mut lhs = RVector::zeros(sys.num_vars());
        let mut rhs = Rational::zero();
        let mut strict = false;
        for (i, lambda) in &self.multipliers {
            let Some(c) = sys.constraints().get(*i) else {
                return false;
            };
            if !lambda.is_positive() {
                return false;
            }
            lhs = lhs.add(&c.coeffs.scale(lambda));
            rhs += lambda * &c.bound;
            strict |= c.strict;
        }
        lhs.is_zero() && (rhs.is_negative() || (strict && rhs.is_zero()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(RVector),
    Infeasible(Certificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&RVector> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible(_) => None,
        }
    }
}

#[derive(Clone)]
struct Row {
    coeffs: Vec<Rational>,
    bound: Rational,
    strict: bool,
    combo: Vec<(usize, Rational)>,
}

impl Row {
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    fn contradicts(&self) -> bool {
        self.bound.is_negative() || (self.strict && self.bound.is_zero())
    }

    /// Divides by the largest absolute coefficient so that parallel rows
    /// share a key.
    fn normalize(mut self) -> Row {
        let s = self
            .coeffs
            .iter()
            .map(Rational::abs)
            .max()
            .unwrap_or_else(Rational::zero);
        if s.is_zero() || s.is_one() {
            return self;
        }
        let inv = s.recip();
        for c in &mut self.coeffs {
            *c *= &inv;
        }
        self.bound *= &inv;
        for (_, m) in &mut self.combo {
            *m *= &inv;
        }
        self
    }

    /// `self·a + other·b` with `a, b > 0`.
    fn combine(&self, a: &Rational, other: &Row, b: &Rational) -> Row {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x * a + y * b)
            .collect();
        let mut combo: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, m) in &self.combo {
            *combo.entry(*i).or_insert_with(Rational::zero) += m * a;
        }
        for (i, m) in &other.combo {
            *combo.entry(*i).or_insert_with(Rational::zero) += m * b;
        }
        Row {
            coeffs,
            bound: &self.bound * a + &other.bound * b,
            strict: self.strict || other.strict,
            combo: combo.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
        }
    }

    /// True if `self` implies `other` for rows with the same coefficients.
    fn tighter_than(&self, other: &Row) -> bool {
        self.bound < other.bound || (self.bound == other.bound && self.strict && !other.strict)
    }
}

struct Stage {
    var: usize,
    rows: Vec<(Vec<Rational>, Rational, bool)>,
}

fn certificate(row: &Row, order: &[usize]) -> Certificate {
    Certificate {
        multipliers: row.combo.clone(),
        elimination_order: order.to_vec(),
    }
}

/// Decides feasibility with the default caps.
pub fn fm_feasible(sys: &LinearSystem) -> Result<Feasibility> {
    fm_feasible_with(sys, FmConfig::default())
}

pub fn fm_feasible_with(sys: &LinearSystem, config: FmConfig) -> Result<Feasibility> {
    let n = sys.num_vars();
    if n > config.max_vars {
        return Err(Error::Capacity {
            what: "Fourier-Motzkin variables",
            count: n as u128,
            cap: config.max_vars as u128,
        });
    }

    let mut rows: Vec<Row> = sys
        .constraints()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Row {
                coeffs: c.coeffs.to_vec(),
                bound: c.bound.clone(),
                strict: c.strict,
                combo: vec![(i, Rational::one())],
            }
            .normalize()
        })
        .collect();

    let mut remaining: Vec<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    let mut stages = Vec::with_capacity(n);

    loop {
        // Settle rows with no variables left; keep the rest deduplicated.
        let mut kept: BTreeMap<Vec<Rational>, Row> = BTreeMap::new();
        for r in rows {
            if r.is_zero() {
                if r.contradicts() {
                    return Ok(Feasibility::Infeasible(certificate(&r, &order)));
                }
                continue;
            }
            match kept.get(&r.coeffs) {
                Some(old) if !r.tighter_than(old) => {}
                _ => {
                    kept.insert(r.coeffs.clone(), r);
                }
            }
        }
        rows = kept.into_values().collect();

        if remaining.is_empty() {
            break;
        }

        let var = *remaining
            .iter()
            .min_by_key(|&&v| {
                let pos = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
                let neg = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
                (pos * neg, v)
            })
            .expect("nonempty");
        remaining.retain(|&v| v != var);
        order.push(var);

        let (pos, rest): (Vec<Row>, Vec<Row>) =
            rows.into_iter().partition(|r| r.coeffs[var].is_positive());
        let (neg, zero): (Vec<Row>, Vec<Row>) =
            rest.into_iter().partition(|r| r.coeffs[var].is_negative());

        let produced = pos.len() * neg.len() + zero.len();
        if produced > config.max_rows {
            return Err(Error::Capacity {
                what: "Fourier-Motzkin rows",
                count: produced as u128,
                cap: config.max_rows as u128,
            });
        }

        stages.push(Stage {
            var,
            rows: pos
                .iter()
                .chain(&neg)
                .map(|r| (r.coeffs.clone(), r.bound.clone(), r.strict))
                .collect(),
        });

        let mut next = zero;
        for p in &pos {
            for m in &neg {
                let a = -&m.coeffs[var];
                let b = p.coeffs[var].clone();
                let mut r = p.combine(&a, m, &b);
                r.coeffs[var] = Rational::zero();
                next.push(r.normalize());
            }
        }
        rows = next;
    }

    let mut values: Vec<Option<Rational>> = vec![None; n];
    for stage in stages.iter().rev() {
        let value = choose_value(stage, &values);
        values[stage.var] = Some(value);
    }
    let witness: RVector = values
        .into_iter()
        .map(|v| v.unwrap_or_else(Rational::zero))
        .collect();
    debug_assert!(sys.satisfied_by(&witness), "FM witness violates input");
    Ok(Feasibility::Feasible(witness))
}

struct Bound {
    value: Rational,
    strict: bool,
}

fn choose_value(stage: &Stage, values: &[Option<Rational>]) -> Rational {
    let v = stage.var;
    let mut lower: Option<Bound> = None;
    let mut upper: Option<Bound> = None;
    for (coeffs, bound, strict) in &stage.rows {
        let mut rhs = bound.clone();
        for (u, c) in coeffs.iter().enumerate() {
            if u == v || c.is_zero() {
                continue;
            }
            if let Some(x) = &values[u] {
                rhs -= &(c * x);
            }
        }
        let limit = rhs / &coeffs[v];
        let cand = Bound {
            value: limit,
            strict: *strict,
        };
        if coeffs[v].is_positive() {
            let tighter = match &upper {
                None => true,
                Some(u) => cand.value < u.value || (cand.value == u.value && cand.strict),
            };
            if tighter {
                upper = Some(cand);
            }
        } else {
            let tighter = match &lower {
                None => true,
                Some(l) => cand.value > l.value || (cand.value == l.value && cand.strict),
            };
            if tighter {
                lower = Some(cand);
            }
        }
    }

    let admits = |x: &Rational| {
        lower.as_ref().is_none_or(|l| {
            if l.strict {
                *x > l.value
            } else {
                *x >= l.value
            }
        }) && upper.as_ref().is_none_or(|u| {
            if u.strict {
                *x < u.value
            } else {
                *x <= u.value
            }
        })
    };
    let zero = Rational::zero();
    if admits(&zero) {
        return zero;
    }
    match (&lower, &upper) {
        (Some(l), _) if !l.strict => l.value.clone(),
        (_, Some(u)) if !u.strict => u.value.clone(),
        (Some(l), Some(u)) => (&l.value + &u.value) / Rational::from(2),
        (Some(l), None) => &l.value + Rational::one(),
        (None, Some(u)) => &u.value - Rational::one(),
        (None, None) => zero,
    }
}
