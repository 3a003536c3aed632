//! SMO on the dual of the soft-margin linear SVM with an unregularised bias:
//!
//! min ½ αᵀQα − Σα  s.t.  yᵀα = 0, 0 ≤ α ≤ C,  Q_ij = y_i y_j x_i·x_j
//!
//! Working pairs are chosen by the second-order rule of Fan, Chen and Lin
//! (2005). Kernel columns come from a feature-major copy of the data so a
//! column costs the sum of the document frequencies of one row's features.
//! After the dual converges the bias is set by an exact line search over the
//! hinge breakpoints, which makes it optimal for the final `w`.
//!
//! Pair selection stops at a KKT violation `eps` that starts at the
//! tolerance. If the relative duality gap is still above the tolerance at that
//! point, `eps` shrinks tenfold and the solve continues from where it stopped.

use log::warn;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::LinearModel;
use crate::features::SparseVector;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub c: f64,
    /// Stop once the duality gap, relative to the primal objective, falls
    /// below this. The gap bounds the distance to the true optimum.
    pub tolerance: f64,
    /// One epoch is `n` pair updates.
    pub max_epochs: usize,
    /// Orders the scan used to break ties between equally violating points.
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            c: 1.0,
            tolerance: 1e-4,
            max_epochs: 1000,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::Config(format!("svm C must be positive, got {}", self.c)));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::Config(format!("svm tolerance must be positive, got {}", self.tolerance)));
        }
        if self.max_epochs == 0 {
            return Err(Error::Config("svm max_epochs must be at least 1".into()));
        }
        Ok(())
    }
}

/// Convergence record of one solve.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolverTrace<F> {
    /// Dual objective `½‖w‖² − Σα` after each completed epoch and at exit.
    pub dual_objectives: Vec<F>,
    pub iterations: usize,
    pub converged: bool,
    /// Which class a single-class problem collapsed to, if any.
    pub degenerate: Option<i8>,
}

/// `½‖w‖² + C Σ max(0, 1 − y(w·x + b))`.
pub fn primal_objective<F: Scalar>(model: &LinearModel<F>, x: &[SparseVector<F>], y: &[i8], c: F) -> F {
    let reg = model.weights.iter().map(|&w| w * w).sum::<F>() / (F::one() + F::one());
    let loss: F = x
        .iter()
        .zip(y)
        .map(|(xi, &yi)| {
            let m = F::from_count(1) - sign::<F>(yi) * model.decision(xi);
            if m > F::zero() {
                m
            } else {
                F::zero()
            }
        })
        .sum();
    reg + c * loss
}

fn sign<F: Scalar>(y: i8) -> F {
    if y > 0 {
        F::one()
    } else {
        -F::one()
    }
}

pub fn train_binary_svm<F: Scalar>(x: &[SparseVector<F>], y: &[i8], cfg: &TrainConfig) -> Result<LinearModel<F>> {
    train_binary_svm_traced(x, y, cfg).map(|(m, _)| m)
}

struct Problem<'a, F> {
    rows: &'a [SparseVector<F>],
    /// Feature-major copy: `cols[f]` lists `(row, value)`.
    cols: Vec<Vec<(usize, F)>>,
}

impl<F: Scalar> Problem<'_, F> {
    fn kernel_column(&self, i: usize, out: &mut [F]) {
        out.iter_mut().for_each(|v| *v = F::zero());
        for &(f, a) in self.rows[i].entries() {
            for &(t, b) in &self.cols[f] {
                out[t] = out[t] + a * b;
            }
        }
    }
}

pub fn train_binary_svm_traced<F: Scalar>(x: &[SparseVector<F>], y: &[i8], cfg: &TrainConfig) -> Result<(LinearModel<F>, SolverTrace<F>)> {
    cfg.validate()?;
    if x.len() != y.len() {
        return Err(Error::InvalidInput(format!("{} vectors but {} labels", x.len(), y.len())));
    }
    if x.is_empty() {
        return Err(Error::InvalidInput("cannot train on zero examples".into()));
    }
    if let Some(bad) = y.iter().find(|&&v| v != 1 && v != -1) {
        return Err(Error::InvalidInput(format!("labels must be +1 or -1, got {bad}")));
    }
    let dim = x.iter().filter_map(|v| v.entries().last()).map(|&(i, _)| i + 1).max().unwrap_or(0);

    let positives = y.iter().filter(|&&v| v == 1).count();
    if positives == 0 || positives == y.len() {
        let cls = if positives == 0 { -1 } else { 1 };
        warn!(
            "single-class training set ({} examples, all {cls:+}); returning constant model",
            y.len()
        );
        let trace = SolverTrace {
            dual_objectives: vec![F::zero()],
            iterations: 0,
            converged: true,
            degenerate: Some(cls),
        };
        return Ok((LinearModel::zero(dim, sign(cls)), trace));
    }

    let n = x.len();
    let c = F::from_f64_lossy(cfg.c);
    let tol = F::from_f64_lossy(cfg.tolerance);
    let tau = F::from_f64_lossy(1e-12);
    let floor = F::from_f64_lossy(1e-13);
    let mut eps = tol;
    let two = F::one() + F::one();
    let ys: Vec<F> = y.iter().map(|&v| sign(v)).collect();

    let mut cols: Vec<Vec<(usize, F)>> = vec![Vec::new(); dim];
    for (t, row) in x.iter().enumerate() {
        for &(f, v) in row.entries() {
            cols[f].push((t, v));
        }
    }
    let problem = Problem { rows: x, cols };
    let diag: Vec<F> = x.iter().map(|r| r.entries().iter().map(|&(_, v)| v * v).sum()).collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed));

    let mut alpha = vec![F::zero(); n];
    // gradient of the dual: G = Qα − 1
    let mut grad = vec![-F::one(); n];
    let mut w = vec![F::zero(); dim];
    let mut ki = vec![F::zero(); n];
    let mut kj = vec![F::zero(); n];

    let in_up = |a: F, yv: F| (yv > F::zero() && a < c) || (yv < F::zero() && a > F::zero());
    let in_low = |a: F, yv: F| (yv > F::zero() && a > F::zero()) || (yv < F::zero() && a < c);

    let dual = |w: &[F], alpha: &[F]| w.iter().map(|&v| v * v).sum::<F>() / two - alpha.iter().copied().sum::<F>();

    let mut trace = SolverTrace {
        dual_objectives: Vec::new(),
        iterations: 0,
        converged: false,
        degenerate: None,
    };
    let max_iter = cfg.max_epochs.saturating_mul(n);

    while trace.iterations < max_iter {
        // i: maximal violator in I_up
        let mut gmax = F::neg_infinity();
        let mut i = usize::MAX;
        for &t in &order {
            if in_up(alpha[t], ys[t]) {
                let v = -ys[t] * grad[t];
                if v > gmax {
                    gmax = v;
                    i = t;
                }
            }
        }
        if i == usize::MAX {
            trace.converged = true;
            break;
        }
        problem.kernel_column(i, &mut ki);

        // j: second-order choice in I_low
        let mut gmax2 = F::neg_infinity();
        let mut best = F::infinity();
        let mut j = usize::MAX;
        for &t in &order {
            if !in_low(alpha[t], ys[t]) {
                continue;
            }
            let yg = ys[t] * grad[t];
            if yg > gmax2 {
                gmax2 = yg;
            }
            let diff = gmax + yg;
            if diff > F::zero() {
                let mut quad = diag[i] + diag[t] - two * ki[t];
                if quad <= F::zero() {
                    quad = tau;
                }
                let obj = -(diff * diff) / quad;
                if obj < best {
                    best = obj;
                    j = t;
                }
            }
        }
        if gmax + gmax2 < eps || j == usize::MAX {
            let bias = fit_bias(x, &w, &ys, &alpha, &grad, c);
            let primal = primal_objective(&LinearModel { weights: w.clone(), bias }, x, y, c);
            let dual_value = -dual(&w, &alpha);
            if primal - dual_value <= tol * primal.abs() || eps < floor {
                trace.converged = true;
                break;
            }
            eps = eps / F::from_count(10);
            continue;
        }
        problem.kernel_column(j, &mut kj);

        let (old_i, old_j) = (alpha[i], alpha[j]);
        let mut quad = diag[i] + diag[j] - two * ki[j];
        if quad <= F::zero() {
            quad = tau;
        }
        let (mut ai, mut aj) = (old_i, old_j);
        if ys[i] != ys[j] {
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = ai - aj;
            ai = ai + delta;
            aj = aj + delta;
            if diff > F::zero() {
                if aj < F::zero() {
                    aj = F::zero();
                    ai = diff;
                }
            } else if ai < F::zero() {
                ai = F::zero();
                aj = -diff;
            }
            if diff > F::zero() {
                if ai > c {
                    ai = c;
                    aj = c - diff;
                }
            } else if aj > c {
                aj = c;
                ai = c + diff;
            }
        } else {
            let delta = (grad[i] - grad[j]) / quad;
            let sum = ai + aj;
            ai = ai - delta;
            aj = aj + delta;
            if sum > c {
                if ai > c {
                    ai = c;
                    aj = sum - c;
                }
                if aj > c {
                    aj = c;
                    ai = sum - c;
                }
            } else {
                if aj < F::zero() {
                    aj = F::zero();
                    ai = sum;
                }
                if ai < F::zero() {
                    ai = F::zero();
                    aj = sum;
                }
            }
        }
        alpha[i] = ai;
        alpha[j] = aj;

        let di = (ai - old_i) * ys[i];
        let dj = (aj - old_j) * ys[j];
        for t in 0..n {
            grad[t] = grad[t] + ys[t] * (ki[t] * di + kj[t] * dj);
        }
        for &(f, v) in x[i].entries() {
            w[f] = w[f] + di * v;
        }
        for &(f, v) in x[j].entries() {
            w[f] = w[f] + dj * v;
        }

        trace.iterations += 1;
        if trace.iterations % n == 0 {
            trace.dual_objectives.push(dual(&w, &alpha));
        }
    }
    trace.dual_objectives.push(dual(&w, &alpha));
    if !trace.converged {
        warn!(
            "SVM stopped after {} iterations without reaching tolerance {}",
            trace.iterations, cfg.tolerance
        );
    }

    let bias = fit_bias(x, &w, &ys, &alpha, &grad, c);
    Ok((LinearModel { weights: w, bias }, trace))
}

/// Exact bias for `w`, starting from −mean(y·G) over free vectors.
fn fit_bias<F: Scalar>(x: &[SparseVector<F>], w: &[F], ys: &[F], alpha: &[F], grad: &[F], c: F) -> F {
    let free: Vec<F> = (0..x.len())
        .filter(|&t| alpha[t] > F::zero() && alpha[t] < c)
        .map(|t| -ys[t] * grad[t])
        .collect();
    let guess = if free.is_empty() {
        F::zero()
    } else {
        free.iter().copied().sum::<F>() / F::from_count(free.len())
    };
    let margins: Vec<F> = x.iter().map(|r| r.dot(w)).collect();
    best_bias(&margins, ys, guess)
}

/// The `b` minimising `Σ max(0, 1 − y_i(f_i + b))`. The loss is convex and
/// piecewise linear with breakpoints `y_i − f_i`; among minimisers the one
/// closest to `guess` is returned.
fn best_bias<F: Scalar>(f: &[F], y: &[F], guess: F) -> F {
    let mut pts: Vec<(F, bool)> = f.iter().zip(y).map(|(&fi, &yi)| (yi - fi, yi > F::zero())).collect();
    pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));

    // At b: positives with breakpoint > b contribute (p − b), negatives with
    // breakpoint < b contribute (b − p). Sweep b over the sorted breakpoints.
    let mut pos_count = pts.iter().filter(|p| p.1).count();
    let mut pos_sum: F = pts.iter().filter(|p| p.1).map(|p| p.0).sum();
    let mut neg_count = 0usize;
    let mut neg_sum = F::zero();
    let mut losses = Vec::with_capacity(pts.len());
    let mut k = 0;
    while k < pts.len() {
        let b = pts[k].0;
        let mut e = k;
        while e < pts.len() && pts[e].0 == b {
            if pts[e].1 {
                pos_count -= 1;
                pos_sum = pos_sum - pts[e].0;
            }
            e += 1;
        }
        let loss = (pos_sum - F::from_count(pos_count) * b) + (F::from_count(neg_count) * b - neg_sum);
        losses.push((b, loss));
        for p in &pts[k..e] {
            if !p.1 {
                neg_count += 1;
                neg_sum = neg_sum + p.0;
            }
        }
        k = e;
    }
    let min = losses.iter().map(|l| l.1).fold(F::infinity(), F::min);
    let slack = F::from_f64_lossy(1e-12) * (F::one() + min.abs());
    let arg: Vec<F> = losses.iter().filter(|l| l.1 <= min + slack).map(|l| l.0).collect();
    let (lo, hi) = (arg[0], arg[arg.len() - 1]);
    guess.max(lo).min(hi)
}
