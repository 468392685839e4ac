//! Small exact linear programs over the rationals.
//!
//! Dense two-phase tableau simplex with Bland's anti-cycling rule. The
//! programs solved here (lifting heights, canonical supports) have at most a
//! few hundred rows, so exactness is affordable and avoids any rounding
//! step between the solver and the exact recomputation that checks it.

use num_traits::{One, Signed, Zero};

use crate::ratpoly::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `minimize objective · x` subject to the constraints and `x ≥ 0`.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal {
        x: Vec<Rational>,
        value: Rational,
    },
    /// Indices of constraints that could not be satisfied at the phase-one
    /// optimum.
    Infeasible {
        violated: Vec<usize>,
    },
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram { num_vars, objective: vec![Rational::zero(); num_vars], constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_objective(&mut self, var: usize, c: Rational) {
        self.objective[var] = c;
    }

    /// Adds a constraint and returns its index.
    pub fn add(&mut self, coeffs: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) -> usize {
        debug_assert!(coeffs.iter().all(|(v, _)| *v < self.num_vars));
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self.constraints.len() - 1
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(self)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Constraint index that produced each row.
    origin: Vec<usize>,
    cols: usize,
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.num_vars;
        let slack_count = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let first_artificial = n + slack_count;
        let art_count = lp
            .constraints
            .iter()
            .filter(|c| {
                let flipped = c.rhs.is_negative();
                match c.relation {
                    Relation::Eq => true,
                    Relation::Le => flipped,
                    Relation::Ge => !flipped,
                }
            })
            .count();
        let cols = first_artificial + art_count;
        let mut rows = Vec::with_capacity(lp.constraints.len());
        let mut basis = Vec::with_capacity(lp.constraints.len());
        let mut slack = n;
        let mut art = first_artificial;
        for c in &lp.constraints {
            let mut row = vec![Rational::zero(); cols + 1];
            let flip = c.rhs.is_negative();
            let sgn = if flip { -Rational::one() } else { Rational::one() };
            for (v, a) in &c.coeffs {
                row[*v] += a * &sgn;
            }
            row[cols] = &c.rhs * &sgn;
            let relation = match (c.relation, flip) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => r,
            };
            match relation {
                Relation::Le => {
                    row[slack] = Rational::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                    row[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        let origin = (0..rows.len()).collect();
        Tableau { rows, basis, origin, cols, first_artificial }
    }

    fn pivot(&mut self, obj: &mut [Rational], r: usize, col: usize) {
        let inv = Rational::one() / &self.rows[r][col];
        if !inv.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..=self.cols).filter(|&k| !pivot_row[k].is_zero()).collect();
        let eliminate = |target: &mut Vec<Rational>| {
            let f = target[col].clone();
            if f.is_zero() {
                return;
            }
            for &k in &nz {
                target[k] -= &f * &pivot_row[k];
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        let mut o = obj.to_vec();
        eliminate(&mut o);
        obj.clone_from_slice(&o);
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    /// Runs simplex iterations on `obj` (reduced costs in canonical form).
    /// Returns false when unbounded.
    fn optimize(&mut self, obj: &mut [Rational], allowed: usize) -> bool {
        loop {
            let Some(col) = (0..allowed).find(|&j| obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(obj, r, col);
        }
    }

    fn canonical_objective(&self, costs: &[Rational]) -> Vec<Rational> {
        let mut obj: Vec<Rational> = costs.to_vec();
        obj.resize(self.cols + 1, Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = obj[b].clone();
            if cb.is_zero() {
                continue;
            }
            for k in 0..=self.cols {
                if !self.rows[i][k].is_zero() {
                    let d = &cb * &self.rows[i][k];
                    obj[k] -= d;
                }
            }
        }
        obj
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        if self.cols > self.first_artificial {
            let mut costs = vec![Rational::zero(); self.cols];
            for c in costs.iter_mut().skip(self.first_artificial) {
                *c = Rational::one();
            }
            let mut obj = self.canonical_objective(&costs);
            self.optimize(&mut obj, self.cols);
            if !obj[self.cols].is_zero() {
                let violated = self
                    .basis
                    .iter()
                    .enumerate()
                    .filter(|(i, &b)| b >= self.first_artificial && self.rows[*i][self.cols].is_positive())
                    .map(|(i, _)| self.origin[i])
                    .collect();
                return LpOutcome::Infeasible { violated };
            }
            // Drive zero-level artificials out of the basis; drop rows that
            // turn out to be redundant.
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&k| !self.rows[i][k].is_zero()) {
                        Some(col) => {
                            let mut dummy = vec![Rational::zero(); self.cols + 1];
                            self.pivot(&mut dummy, i, col);
                        }
                        None => {
                            self.rows.remove(i);
                            self.basis.remove(i);
                            self.origin.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }
        let mut costs = lp.objective.clone();
        costs.resize(self.cols, Rational::zero());
        let mut obj = self.canonical_objective(&costs);
        if !self.optimize(&mut obj, self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); lp.num_vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < lp.num_vars {
                x[b] = self.rows[i][self.cols].clone();
            }
        }
        let value = x.iter().zip(&lp.objective).fold(Rational::zero(), |acc, (a, c)| acc + a * c);
        LpOutcome::Optimal { x, value }
    }
}
