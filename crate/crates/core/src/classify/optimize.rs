//! Deterministic full-batch first-order minimization.
//!
//! Gradient descent with Armijo backtracking, plus Nesterov momentum with
//! adaptive restart: whenever an accelerated step fails to improve on the
//! best iterate, momentum resets and the step degenerates to plain
//! descent. The accepted iterate's loss is therefore non-increasing, and
//! the whole procedure is deterministic from a fixed start point. Used
//! for logistic-regression training and for score calibration.

/// Outcome of a minimization run.
#[derive(Debug, Clone)]
pub struct Minimization {
    pub params: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    pub loss: f64,
    pub gradient_norm: f64,
}

/// Minimize `objective` (returning loss and gradient) from `start` until
/// the gradient L2 norm at the accepted iterate is at or below
/// `tolerance`, or `max_iterations` is reached.
pub fn gradient_descent<F>(
    objective: F,
    start: Vec<f64>,
    tolerance: f64,
    max_iterations: usize,
) -> Minimization
where
    F: Fn(&[f64]) -> (f64, Vec<f64>),
{
    const ARMIJO_C: f64 = 1e-4;
    const SHRINK: f64 = 0.5;

    let norm = |g: &[f64]| g.iter().map(|v| v * v).sum::<f64>().sqrt();

    let mut x = start;
    let (mut loss_x, mut grad_x) = objective(&x);
    // Momentum state: `lookahead` is the Nesterov extrapolation point;
    // `None` means momentum is reset and we step from `x` itself.
    let mut lookahead: Option<(Vec<f64>, f64, Vec<f64>)> = None;
    let mut momentum = 1.0f64;
    let mut step = 1.0f64;
    let mut iterations = 0;

    while iterations < max_iterations {
        if norm(&grad_x) <= tolerance {
            break;
        }
        iterations += 1;

        let (point, loss_p, grad_p) = match &lookahead {
            Some((y, fy, gy)) => (y.clone(), *fy, gy.clone()),
            None => (x.clone(), loss_x, grad_x.clone()),
        };

        // Backtracking line search from the step point.
        let grad_sq: f64 = grad_p.iter().map(|g| g * g).sum();
        let mut accepted = None;
        while step > 1e-20 {
            let candidate: Vec<f64> = point
                .iter()
                .zip(&grad_p)
                .map(|(pi, gi)| pi - step * gi)
                .collect();
            let (cand_loss, cand_grad) = objective(&candidate);
            if cand_loss.is_finite() && cand_loss <= loss_p - ARMIJO_C * step * grad_sq {
                accepted = Some((candidate, cand_loss, cand_grad));
                break;
            }
            step *= SHRINK;
        }

        let Some((candidate, cand_loss, cand_grad)) = accepted else {
            if lookahead.is_some() {
                // The extrapolated point is hopeless; restart momentum.
                lookahead = None;
                momentum = 1.0;
                step = 1.0;
                continue;
            }
            break; // Step size underflowed at x itself: no progress possible.
        };
        step *= 2.0;

        if cand_loss > loss_x {
            // Momentum overshot the valley; restart from the best iterate.
            lookahead = None;
            momentum = 1.0;
            continue;
        }

        // Accept, then extrapolate for the next iteration.
        let next_momentum = 0.5 * (1.0 + (1.0 + 4.0 * momentum * momentum).sqrt());
        let beta = (momentum - 1.0) / next_momentum;
        let extrapolated: Vec<f64> = candidate
            .iter()
            .zip(&x)
            .map(|(new, old)| new + beta * (new - old))
            .collect();
        x = candidate;
        loss_x = cand_loss;
        grad_x = cand_grad;
        momentum = next_momentum;
        let eval = objective(&extrapolated);
        lookahead = Some((extrapolated, eval.0, eval.1));
    }

    let gradient_norm = norm(&grad_x);
    Minimization {
        converged: gradient_norm <= tolerance,
        params: x,
        iterations,
        loss: loss_x,
        gradient_norm,
    }
}

/// Numerically stable log(1 + exp(z)).
pub fn log1p_exp(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Numerically stable logistic sigmoid.
pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}
