//! Bounded-variable primal simplex.
//!
//! Two phases with explicit artificial columns, Dantzig pricing with a
//! Bland fallback once progress stalls, and a product-form basis update on
//! top of a dense LU that is refreshed periodically. Built for desk-scale
//! models where robustness beats speed; fully deterministic for a fixed
//! input.

use super::lu::DenseLu;
use thiserror::Error;

pub const FEAS_EPS: f64 = 1e-7;
const COST_EPS: f64 = 1e-9;
const PIVOT_EPS: f64 = 1e-9;
const RATIO_TOL: f64 = 1e-9;
const REFRESH_ETAS: usize = 160;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct LpRow {
    pub terms: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

/// `min c.x  s.t.  rows, lower <= x <= upper` (infinite bounds allowed).
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub rows: Vec<LpRow>,
}

impl LinearProgram {
    pub fn new(ncols: usize) -> Self {
        LinearProgram {
            objective: vec![0.0; ncols],
            lower: vec![0.0; ncols],
            upper: vec![f64::INFINITY; ncols],
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, terms: Vec<(usize, f64)>, sense: Sense, rhs: f64) {
        self.rows.push(LpRow { terms, sense, rhs });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective: f64,
    pub primal: Vec<f64>,
    pub iterations: usize,
}

#[derive(Debug, Error)]
pub enum LpError {
    #[error("simplex stalled after {iterations} iterations (residual {residual:.3e})")]
    Stall { iterations: usize, residual: f64 },
    #[error("singular basis encountered during refactorization")]
    SingularBasis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarStatus {
    Basic(usize),
    AtLower,
    AtUpper,
    Free,
}

struct Eta {
    row: usize,
    col: Vec<f64>,
}

struct Simplex {
    m: usize,
    nstruct: usize,
    cols: Vec<Vec<(usize, f64)>>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    cost: Vec<f64>,
    value: Vec<f64>,
    status: Vec<VarStatus>,
    basis: Vec<usize>,
    rhs: Vec<f64>,
    lu: Option<DenseLu>,
    etas: Vec<Eta>,
    iterations: usize,
    bland: bool,
    stall_count: usize,
    best_obj: f64,
    refresh: usize,
}

enum StepResult {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Simplex {
    fn ncols(&self) -> usize {
        self.cols.len()
    }

    fn ftran(&self, v: &mut Vec<f64>) {
        if let Some(lu) = &self.lu {
            lu.solve(v);
        }
        for eta in &self.etas {
            let r = eta.row;
            let pivot = v[r] / eta.col[r];
            if pivot != 0.0 {
                for i in 0..self.m {
                    if i == r {
                        continue;
                    }
                    let w = eta.col[i];
                    if w != 0.0 {
                        v[i] -= w * pivot;
                    }
                }
            }
            v[r] = pivot;
        }
    }

    fn btran(&self, v: &mut Vec<f64>) {
        for eta in self.etas.iter().rev() {
            let r = eta.row;
            let mut acc = v[r];
            for i in 0..self.m {
                if i != r {
                    acc -= eta.col[i] * v[i];
                }
            }
            v[r] = acc / eta.col[r];
        }
        if let Some(lu) = &self.lu {
            lu.solve_transposed(v);
        }
    }

    /// Rebuilds the LU of the current basis and recomputes basic values
    /// from scratch, clearing accumulated drift.
    fn refactor(&mut self) -> Result<(), LpError> {
        let identity = self.basis.iter().enumerate().all(|(r, &c)| {
            self.cols[c].len() == 1 && self.cols[c][0] == (r, 1.0)
        });
        self.lu = if identity {
            None
        } else {
            Some(DenseLu::factor_basis(&self.cols, &self.basis).map_err(|_| LpError::SingularBasis)?)
        };
        self.etas.clear();

        let mut adj = self.rhs.clone();
        for j in 0..self.ncols() {
            if matches!(self.status[j], VarStatus::Basic(_)) {
                continue;
            }
            let xj = self.value[j];
            if xj != 0.0 {
                for &(r, a) in &self.cols[j] {
                    adj[r] -= a * xj;
                }
            }
        }
        self.ftran(&mut adj);
        for r in 0..self.m {
            self.value[self.basis[r]] = adj[r];
        }
        Ok(())
    }

    fn objective_value(&self) -> f64 {
        (0..self.ncols()).map(|j| self.cost[j] * self.value[j]).sum()
    }

    fn choose_entering(&self, duals: &[f64]) -> Option<(usize, i8, f64)> {
        let mut best: Option<(usize, i8, f64)> = None;
        for j in 0..self.ncols() {
            let st = self.status[j];
            if matches!(st, VarStatus::Basic(_)) {
                continue;
            }
            if self.upper[j] - self.lower[j] < 1e-14 {
                continue; // fixed
            }
            let mut d = self.cost[j];
            for &(r, a) in &self.cols[j] {
                d -= duals[r] * a;
            }
            let cand = match st {
                VarStatus::AtLower if d < -COST_EPS => Some((j, 1i8, -d)),
                VarStatus::AtUpper if d > COST_EPS => Some((j, -1i8, d)),
                VarStatus::Free if d.abs() > COST_EPS => {
                    Some((j, if d < 0.0 { 1 } else { -1 }, d.abs()))
                }
                _ => None,
            };
            if let Some((j, dir, score)) = cand {
                if self.bland {
                    return Some((j, dir, score));
                }
                if best.map_or(true, |(_, _, s)| score > s) {
                    best = Some((j, dir, score));
                }
            }
        }
        best
    }

    fn step(&mut self) -> Result<StepResult, LpError> {
        let mut duals = vec![0.0; self.m];
        for r in 0..self.m {
            duals[r] = self.cost[self.basis[r]];
        }
        self.btran(&mut duals);

        let Some((q, dir, _)) = self.choose_entering(&duals) else {
            return Ok(StepResult::Optimal);
        };
        let dirf = dir as f64;

        let mut w = vec![0.0; self.m];
        for &(r, a) in &self.cols[q] {
            w[r] = a;
        }
        self.ftran(&mut w);

        // Ratio test: entering moves by t in direction dir; basic i moves by
        // -dir * t * w[i].
        let t_bound = self.upper[q] - self.lower[q]; // infinite if a bound is infinite
        let mut t_min = f64::INFINITY;
        for r in 0..self.m {
            let wi = w[r];
            if wi.abs() <= PIVOT_EPS {
                continue;
            }
            let bi = self.basis[r];
            let xb = self.value[bi];
            let t = if dirf * wi > 0.0 {
                if self.lower[bi].is_finite() {
                    (xb - self.lower[bi]) / (dirf * wi)
                } else {
                    continue;
                }
            } else if self.upper[bi].is_finite() {
                (self.upper[bi] - xb) / (-dirf * wi)
            } else {
                continue;
            };
            let t = t.max(0.0);
            if t < t_min {
                t_min = t;
            }
        }

        if t_bound <= t_min {
            if !t_bound.is_finite() {
                return Ok(StepResult::Unbounded);
            }
            // Bound flip: no basis change.
            for r in 0..self.m {
                let wi = w[r];
                if wi != 0.0 {
                    self.value[self.basis[r]] -= dirf * t_bound * wi;
                }
            }
            self.value[q] = if dir == 1 { self.upper[q] } else { self.lower[q] };
            self.status[q] = if dir == 1 { VarStatus::AtUpper } else { VarStatus::AtLower };
            return Ok(StepResult::Pivoted);
        }
        if !t_min.is_finite() {
            return Ok(StepResult::Unbounded);
        }

        // Second pass: among near-minimal ratios pick the largest pivot.
        let cutoff = t_min + RATIO_TOL * (1.0 + t_min.abs());
        let mut leave: Option<(usize, f64, bool)> = None; // (row, |w|, hits_lower)
        for r in 0..self.m {
            let wi = w[r];
            if wi.abs() <= PIVOT_EPS {
                continue;
            }
            let bi = self.basis[r];
            let xb = self.value[bi];
            let (t, hits_lower) = if dirf * wi > 0.0 {
                if !self.lower[bi].is_finite() {
                    continue;
                }
                (((xb - self.lower[bi]) / (dirf * wi)).max(0.0), true)
            } else {
                if !self.upper[bi].is_finite() {
                    continue;
                }
                (((self.upper[bi] - xb) / (-dirf * wi)).max(0.0), false)
            };
            if t <= cutoff && leave.map_or(true, |(_, bw, _)| wi.abs() > bw) {
                leave = Some((r, wi.abs(), hits_lower));
            }
        }
        let (r, _, hits_lower) = leave.expect("ratio test found no blocking row");

        // Move the solution.
        for i in 0..self.m {
            let wi = w[i];
            if wi != 0.0 {
                self.value[self.basis[i]] -= dirf * t_min * wi;
            }
        }
        let start = match self.status[q] {
            VarStatus::AtLower => self.lower[q],
            VarStatus::AtUpper => self.upper[q],
            VarStatus::Free => 0.0,
            VarStatus::Basic(_) => unreachable!(),
        };
        self.value[q] = start + dirf * t_min;

        let leaving = self.basis[r];
        self.value[leaving] = if hits_lower { self.lower[leaving] } else { self.upper[leaving] };
        self.status[leaving] = if hits_lower { VarStatus::AtLower } else { VarStatus::AtUpper };
        self.status[q] = VarStatus::Basic(r);
        self.basis[r] = q;
        self.etas.push(Eta { row: r, col: w });
        if self.etas.len() >= self.refresh {
            self.refactor()?;
        }
        Ok(StepResult::Pivoted)
    }

    fn run(&mut self) -> Result<LpStatus, LpError> {
        self.bland = false;
        self.stall_count = 0;
        self.best_obj = self.objective_value();
        let stall_limit = 3 * (self.m + self.ncols());
        let iter_cap = 10_000 + 120 * (self.m + self.ncols());
        loop {
            self.iterations += 1;
            if self.iterations > iter_cap {
                return Err(LpError::Stall { iterations: self.iterations, residual: f64::NAN });
            }
            match self.step()? {
                StepResult::Optimal => return Ok(LpStatus::Optimal),
                StepResult::Unbounded => return Ok(LpStatus::Unbounded),
                StepResult::Pivoted => {}
            }
            let obj = self.objective_value();
            if obj < self.best_obj - 1e-12 * (1.0 + self.best_obj.abs()) {
                self.best_obj = obj;
                self.stall_count = 0;
                self.bland = false;
            } else {
                self.stall_count += 1;
                if self.stall_count > stall_limit {
                    self.bland = true;
                }
            }
        }
    }
}

/// Solves the LP. Returns `Err` only on numerical failure; infeasible and
/// unbounded problems are reported through `LpStatus`.
pub fn solve_lp(p: &LinearProgram) -> Result<LpSolution, LpError> {
    solve_lp_impl(p, REFRESH_ETAS)
}

fn solve_lp_impl(p: &LinearProgram, refresh: usize) -> Result<LpSolution, LpError> {
    let nstruct = p.ncols();
    let m = p.rows.len();
    for j in 0..nstruct {
        if p.lower[j] > p.upper[j] + FEAS_EPS {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                objective: f64::INFINITY,
                primal: vec![0.0; nstruct],
                iterations: 0,
            });
        }
    }

    let total = nstruct + m;
    let mut cols: Vec<Vec<(usize, f64)>> = Vec::with_capacity(total);
    for j in 0..nstruct {
        cols.push(Vec::new());
        let _ = j;
    }
    for (r, row) in p.rows.iter().enumerate() {
        for &(j, a) in &row.terms {
            debug_assert!(j < nstruct, "row references undeclared column");
            if a != 0.0 {
                cols[j].push((r, a));
            }
        }
    }
    for j in 0..nstruct {
        cols[j].sort_by_key(|&(r, _)| r);
    }
    let mut lower = p.lower.clone();
    let mut upper = p.upper.clone();
    let mut cost = vec![0.0; total];
    cost[..nstruct].copy_from_slice(&p.objective);
    let mut rhs = vec![0.0; m];
    for (r, row) in p.rows.iter().enumerate() {
        rhs[r] = row.rhs;
        cols.push(vec![(r, 1.0)]);
        let (lo, hi) = match row.sense {
            Sense::Le => (0.0, f64::INFINITY),
            Sense::Ge => (f64::NEG_INFINITY, 0.0),
            Sense::Eq => (0.0, 0.0),
        };
        lower.push(lo);
        upper.push(hi);
    }
    cost.resize(total, 0.0);

    // Start: structurals at a finite bound (or free at zero).
    let mut status = Vec::with_capacity(total);
    let mut value = vec![0.0; total];
    for j in 0..nstruct {
        if lower[j].is_finite() {
            status.push(VarStatus::AtLower);
            value[j] = lower[j];
        } else if upper[j].is_finite() {
            status.push(VarStatus::AtUpper);
            value[j] = upper[j];
        } else {
            status.push(VarStatus::Free);
            value[j] = 0.0;
        }
    }

    // Logical values implied by the start point; rows whose logical cannot
    // absorb the residual get an artificial column.
    let mut sigma = rhs.clone();
    for j in 0..nstruct {
        let xj = value[j];
        if xj != 0.0 {
            for &(r, a) in &cols[j] {
                sigma[r] -= a * xj;
            }
        }
    }
    let mut basis = vec![0usize; m];
    let mut artificials = Vec::new();
    let mut sim_cols = cols;
    let mut sim_lower = lower;
    let mut sim_upper = upper;
    let mut phase1_cost = vec![0.0; total];
    let mut pending: Vec<(usize, f64)> = Vec::new();
    for r in 0..m {
        let logical = nstruct + r;
        let (lo, hi) = (sim_lower[logical], sim_upper[logical]);
        if sigma[r] >= lo - FEAS_EPS && sigma[r] <= hi + FEAS_EPS {
            basis[r] = logical;
            status.push(VarStatus::Basic(r));
            value[logical] = sigma[r];
        } else {
            let clamped = sigma[r].clamp(lo, hi.max(lo));
            status.push(if clamped <= lo { VarStatus::AtLower } else { VarStatus::AtUpper });
            value[logical] = clamped;
            pending.push((r, sigma[r] - clamped));
        }
    }
    // Artificial columns go after the logicals so column indices stay
    // aligned with status/value entries.
    for (r, residual) in pending {
        let art = sim_cols.len();
        sim_cols.push(vec![(r, 1.0)]);
        if residual > 0.0 {
            sim_lower.push(0.0);
            sim_upper.push(f64::INFINITY);
            phase1_cost.push(1.0);
        } else {
            sim_lower.push(f64::NEG_INFINITY);
            sim_upper.push(0.0);
            phase1_cost.push(-1.0);
        }
        value.push(residual);
        status.push(VarStatus::Basic(r));
        basis[r] = art;
        artificials.push(art);
    }
    let ntotal = sim_cols.len();
    phase1_cost.resize(ntotal, 0.0);
    cost.resize(ntotal, 0.0);

    let mut sim = Simplex {
        m,
        nstruct,
        cols: sim_cols,
        lower: sim_lower,
        upper: sim_upper,
        cost: phase1_cost,
        value,
        status,
        basis,
        rhs,
        lu: None,
        etas: Vec::new(),
        iterations: 0,
        bland: false,
        stall_count: 0,
        best_obj: 0.0,
        refresh,
    };

    if !artificials.is_empty() {
        match sim.run()? {
            LpStatus::Optimal => {}
            LpStatus::Unbounded => {
                return Err(LpError::Stall { iterations: sim.iterations, residual: f64::NAN })
            }
            LpStatus::Infeasible => unreachable!(),
        }
        let infeas = sim.objective_value();
        if infeas > FEAS_EPS * (1.0 + sim.rhs.iter().map(|v| v.abs()).fold(0.0, f64::max)) {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                objective: f64::INFINITY,
                primal: sim.value[..nstruct].to_vec(),
                iterations: sim.iterations,
            });
        }
        for &a in &artificials {
            sim.lower[a] = 0.0;
            sim.upper[a] = 0.0;
            if !matches!(sim.status[a], VarStatus::Basic(_)) {
                sim.value[a] = 0.0;
                sim.status[a] = VarStatus::AtLower;
            }
        }
        sim.refactor()?;
    }

    sim.cost = cost;
    let status = sim.run()?;
    if status == LpStatus::Unbounded {
        return Ok(LpSolution {
            status,
            objective: f64::NEG_INFINITY,
            primal: sim.value[..nstruct].to_vec(),
            iterations: sim.iterations,
        });
    }

    // Snap basics once more and verify against the original rows.
    sim.refactor()?;
    let primal: Vec<f64> = sim.value[..nstruct].to_vec();
    let mut residual = 0.0f64;
    for row in &p.rows {
        let act: f64 = row.terms.iter().map(|&(j, a)| a * primal[j]).sum();
        let viol = match row.sense {
            Sense::Le => (act - row.rhs).max(0.0),
            Sense::Ge => (row.rhs - act).max(0.0),
            Sense::Eq => (act - row.rhs).abs(),
        };
        residual = residual.max(viol / (1.0 + row.rhs.abs()));
    }
    for j in 0..nstruct {
        residual = residual.max(p.lower[j] - primal[j]).max(primal[j] - p.upper[j]);
    }
    if residual > FEAS_EPS * 10.0 {
        return Err(LpError::Stall { iterations: sim.iterations, residual });
    }

    let objective = (0..nstruct).map(|j| p.objective[j] * primal[j]).sum();
    Ok(LpSolution { status: LpStatus::Optimal, objective, primal, iterations: sim.iterations })
}
