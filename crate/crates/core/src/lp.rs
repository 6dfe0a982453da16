//! Dense two-phase simplex over exact rationals with Bland's pivoting rule.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("the linear program is infeasible")]
    Infeasible,
    #[error("the linear program is unbounded")]
    Unbounded,
    #[error("constraint {row} has {got} coefficients, expected {expected}")]
    DimensionMismatch {
        row: usize,
        got: usize,
        expected: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    NonNegative,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x)
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.lhs(x) == self.rhs
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, v)| c * v)
        .sum()
}

/// Minimize `objective · x` subject to the constraints and variable bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bound>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub point: Vec<Rational>,
}

/// Optimal value, one optimal vertex, and the constraints tight at every optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinMaxSolution {
    pub optimum: Rational,
    pub witness: Vec<Rational>,
    pub tight: Vec<usize>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
            bounds: vec![Bound::NonNegative; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    pub fn set_free(&mut self, var: usize) {
        self.bounds[var] = Bound::Free;
    }

    pub fn set_objective(&mut self, objective: Vec<Rational>) {
        self.objective = objective;
    }

    /// Adds a constraint and returns its id.
    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> usize {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self.constraints.len() - 1
    }

    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && self
                .bounds
                .iter()
                .zip(x)
                .all(|(b, v)| *b == Bound::Free || !v.is_negative())
            && self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    pub fn solve(&self) -> Result<LpSolution, LpError> {
        let n = self.num_vars();
        if self.objective.len() != n {
            return Err(LpError::DimensionMismatch {
                row: usize::MAX,
                got: self.objective.len(),
                expected: n,
            });
        }
        for (row, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(LpError::DimensionMismatch {
                    row,
                    got: c.coeffs.len(),
                    expected: n,
                });
            }
        }
        Tableau::build(self).solve(self)
    }

    /// Solves, then finds every constraint that is tight on the whole optimal face.
    pub fn min_max(&self) -> Result<MinMaxSolution, LpError> {
        let all: Vec<usize> = (0..self.constraints.len()).collect();
        self.min_max_among(&all)
    }

    /// Like [`LinearProgram::min_max`], testing only the listed constraint ids.
    ///
    /// With the objective pinned at its optimum, the total slack of the
    /// undecided inequalities is maximized; constraints slack at that point are
    /// dropped and the rest re-tested until the maximum total slack is zero.
    pub fn min_max_among(&self, candidates: &[usize]) -> Result<MinMaxSolution, LpError> {
        let best = self.solve()?;
        let mut pinned = self.clone();
        pinned.add(self.objective.clone(), Relation::Le, best.value.clone());
        let mut tight = Vec::new();
        let mut undecided = Vec::new();
        for &k in candidates {
            let c = &self.constraints[k];
            if !c.is_tight(&best.point) {
                continue;
            }
            if c.relation == Relation::Eq {
                tight.push(k);
            } else {
                undecided.push(k);
            }
        }
        while !undecided.is_empty() {
            let mut objective = vec![Rational::zero(); self.num_vars()];
            for &k in &undecided {
                let c = &self.constraints[k];
                for (o, a) in objective.iter_mut().zip(&c.coeffs) {
                    match c.relation {
                        Relation::Le => *o += a,
                        _ => *o -= a,
                    }
                }
            }
            pinned.set_objective(objective);
            let probe = match pinned.solve() {
                Ok(s) => s.point,
                Err(LpError::Unbounded) => {
                    undecided = self.always_tight_one_by_one(&pinned, &undecided)?;
                    break;
                }
                Err(e) => return Err(e),
            };
            let remaining: Vec<usize> = undecided
                .iter()
                .copied()
                .filter(|&k| self.constraints[k].is_tight(&probe))
                .collect();
            if remaining.len() == undecided.len() {
                break;
            }
            undecided = remaining;
        }
        tight.extend(undecided);
        tight.sort_unstable();
        Ok(MinMaxSolution {
            optimum: best.value,
            witness: best.point,
            tight,
        })
    }

    /// Maximizes the slack of each listed inequality separately over `pinned`.
    fn always_tight_one_by_one(
        &self,
        pinned: &LinearProgram,
        ids: &[usize],
    ) -> Result<Vec<usize>, LpError> {
        let mut pinned = pinned.clone();
        let mut out = Vec::new();
        for &k in ids {
            let c = &self.constraints[k];
            let sign = if c.relation == Relation::Le {
                Rational::one()
            } else {
                -Rational::one()
            };
            pinned.set_objective(c.coeffs.iter().map(|a| a * &sign).collect());
            match pinned.solve() {
                Ok(s) if s.value == &c.rhs * &sign => out.push(k),
                Ok(_) | Err(LpError::Unbounded) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    num_cols: usize,
    num_structural: usize,
    first_artificial: usize,
    pos_col: Vec<usize>,
    neg_col: Vec<Option<usize>>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let mut pos_col = Vec::with_capacity(lp.num_vars());
        let mut neg_col = Vec::with_capacity(lp.num_vars());
        let mut next = 0;
        for b in &lp.bounds {
            pos_col.push(next);
            next += 1;
            if *b == Bound::Free {
                neg_col.push(Some(next));
                next += 1;
            } else {
                neg_col.push(None);
            }
        }
        let num_structural = next;
        let num_slack = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let first_artificial = num_structural + num_slack;

        // Rows with a usable +1 slack start with it in the basis, the rest get an artificial.
        let mut needs_artificial = Vec::new();
        let mut slack = num_structural;
        let mut dense = Vec::with_capacity(lp.constraints.len());
        for c in &lp.constraints {
            let mut row = vec![Rational::zero(); first_artificial];
            for (j, a) in c.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                row[pos_col[j]] = a.clone();
                if let Some(nc) = neg_col[j] {
                    row[nc] = -a;
                }
            }
            let mut rhs = c.rhs.clone();
            let slack_col = match c.relation {
                Relation::Le => Some((slack, Rational::from_integer(1.into()))),
                Relation::Ge => Some((slack, Rational::from_integer((-1).into()))),
                Relation::Eq => None,
            };
            if let Some((col, coef)) = &slack_col {
                row[*col] = coef.clone();
                slack += 1;
            }
            if rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
                rhs = -rhs;
            }
            let basic = slack_col
                .and_then(|(col, _)| (row[col] == Rational::from_integer(1.into())).then_some(col));
            needs_artificial.push(basic.is_none());
            dense.push((row, rhs, basic));
        }
        let num_artificial = needs_artificial.iter().filter(|&&a| a).count();
        let num_cols = first_artificial + num_artificial;
        let mut rows = Vec::with_capacity(dense.len());
        let mut basis = Vec::with_capacity(dense.len());
        let mut artificial = first_artificial;
        for (row, rhs, basic) in dense {
            let mut full = row;
            full.resize(num_cols, Rational::zero());
            match basic {
                Some(col) => basis.push(col),
                None => {
                    full[artificial] = Rational::from_integer(1.into());
                    basis.push(artificial);
                    artificial += 1;
                }
            }
            full.push(rhs);
            rows.push(full);
        }
        Tableau {
            rows,
            basis,
            num_cols,
            num_structural,
            first_artificial,
            pos_col,
            neg_col,
        }
    }

    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.num_cols]
    }

    fn pivot(&mut self, objective: &mut [Rational], r: usize, e: usize) {
        let inv = Rational::from_integer(1.into()) / &self.rows[r][e];
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        let nz: Vec<usize> = (0..pivot_row.len())
            .filter(|&j| !pivot_row[j].is_zero())
            .collect();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[e].is_zero() {
                continue;
            }
            let factor = row[e].clone();
            for &j in &nz {
                row[j] -= &factor * &pivot_row[j];
            }
        }
        if !objective[e].is_zero() {
            let factor = objective[e].clone();
            for &j in &nz {
                objective[j] -= &factor * &pivot_row[j];
            }
        }
        self.basis[r] = e;
    }

    /// Runs primal simplex on the reduced-cost row `objective` (last entry = -value).
    fn optimize(&mut self, objective: &mut [Rational], allowed: usize) -> Result<(), LpError> {
        loop {
            let entering = (0..allowed).find(|&j| objective[j].is_negative());
            let Some(e) = entering else { return Ok(()) };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Err(LpError::Unbounded);
            };
            self.pivot(objective, r, e);
        }
    }

    fn reduced_costs(&self, costs: &[Rational]) -> Vec<Rational> {
        let mut objective: Vec<Rational> = costs.to_vec();
        objective.resize(self.num_cols + 1, Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (j, v) in self.rows[r].iter().enumerate() {
                if !v.is_zero() {
                    objective[j] -= cb * v;
                }
            }
        }
        objective
    }

    fn solve(mut self, lp: &LinearProgram) -> Result<LpSolution, LpError> {
        if self.num_cols > self.first_artificial {
            let mut phase_one = vec![Rational::zero(); self.num_cols];
            for c in phase_one.iter_mut().skip(self.first_artificial) {
                *c = Rational::from_integer(1.into());
            }
            let mut objective = self.reduced_costs(&phase_one);
            self.optimize(&mut objective, self.num_cols)?;
            if !objective[self.num_cols].is_zero() {
                return Err(LpError::Infeasible);
            }
            // Drive remaining (zero-valued) artificials out, dropping redundant rows.
            let mut r = 0;
            while r < self.rows.len() {
                if self.basis[r] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                        Some(e) => self.pivot(&mut objective, r, e),
                        None => {
                            self.rows.remove(r);
                            self.basis.remove(r);
                            continue;
                        }
                    }
                }
                r += 1;
            }
        }
        let mut costs = vec![Rational::zero(); self.num_cols];
        for (j, c) in lp.objective.iter().enumerate() {
            costs[self.pos_col[j]] = c.clone();
            if let Some(nc) = self.neg_col[j] {
                costs[nc] = -c;
            }
        }
        let mut objective = self.reduced_costs(&costs);
        self.optimize(&mut objective, self.first_artificial)?;

        let mut column_value = vec![Rational::zero(); self.num_structural];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.num_structural {
                column_value[b] = self.rhs(r).clone();
            }
        }
        let point: Vec<Rational> = (0..lp.num_vars())
            .map(|j| match self.neg_col[j] {
                Some(nc) => &column_value[self.pos_col[j]] - &column_value[nc],
                None => column_value[self.pos_col[j]].clone(),
            })
            .collect();
        let value = dot(&lp.objective, &point);
        debug_assert_eq!(value, -objective[self.num_cols].clone());
        Ok(LpSolution { value, point })
    }
}
