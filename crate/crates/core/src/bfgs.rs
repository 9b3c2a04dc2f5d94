//! Dense BFGS on the inverse Hessian with a backtracking Armijo line search.
//!
//! The objective may refuse a trial point (returning `None`), in which case
//! the step is shortened. After every accepted step an optional gauge map
//! rescales the iterate; the gradient and inverse Hessian are transformed
//! consistently for a degree-zero homogeneous objective.

pub(crate) struct Options {
    pub tol_grad: f64,
    pub max_iter: usize,
    pub max_step: f64,
}

pub(crate) struct Outcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub grad_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

const ARMIJO_C1: f64 = 1e-4;
const MAX_BACKTRACK: usize = 60;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

struct InverseHessian {
    n: usize,
    h: Vec<f64>,
    is_identity: bool,
}

impl InverseHessian {
    fn identity(n: usize) -> Self {
        let mut h = vec![0.0; n * n];
        for i in 0..n {
            h[i * n + i] = 1.0;
        }
        Self {
            n,
            h,
            is_identity: true,
        }
    }

    fn reset(&mut self) {
        *self = Self::identity(self.n);
    }

    fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n).map(|i| dot(&self.h[i * n..(i + 1) * n], v)).collect()
    }

    fn scale(&mut self, c: f64) {
        self.h.iter_mut().for_each(|x| *x *= c);
    }

    fn update(&mut self, s: &[f64], y: &[f64]) {
        let sy = dot(s, y);
        if !(sy > 1e-12 * norm(s) * norm(y)) {
            return;
        }
        if self.is_identity {
            self.scale(sy / dot(y, y));
            self.is_identity = false;
        }
        let n = self.n;
        let rho = 1.0 / sy;
        let hy = self.apply(y);
        let yhy = dot(y, &hy);
        let coef = rho * rho * yhy + rho;
        for i in 0..n {
            for j in 0..n {
                self.h[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + coef * s[i] * s[j];
            }
        }
    }
}

pub(crate) fn minimize<E, G>(x0: Vec<f64>, eval: E, gauge: G, opts: &Options) -> Option<Outcome>
where
    E: Fn(&[f64]) -> Option<(f64, Vec<f64>)>,
    G: Fn(&mut [f64]) -> f64,
{
    let n = x0.len();
    let mut x = x0;
    let (mut f, mut g) = eval(&x)?;
    let mut hinv = InverseHessian::identity(n);
    let mut iterations = 0;
    let mut converged = false;

    while iterations < opts.max_iter {
        let gn = norm(&g);
        if gn <= opts.tol_grad {
            converged = true;
            break;
        }
        iterations += 1;

        let mut p: Vec<f64> = hinv.apply(&g).into_iter().map(|v| -v).collect();
        let mut gp = dot(&g, &p);
        if !(gp < 0.0) {
            hinv.reset();
            p = g.iter().map(|v| -v).collect();
            gp = -gn * gn;
        }
        let pmax = p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut alpha = if pmax > opts.max_step { opts.max_step / pmax } else { 1.0 };

        let mut accepted = None;
        for _ in 0..MAX_BACKTRACK {
            let trial: Vec<f64> = x.iter().zip(&p).map(|(a, b)| a + alpha * b).collect();
            if let Some((ft, gt)) = eval(&trial) {
                let armijo = ft <= f + ARMIJO_C1 * alpha * gp;
                let rounding_level = ft <= f + 1e-14 * f.abs() && norm(&gt) < gn;
                if armijo || rounding_level {
                    accepted = Some((trial, ft, gt));
                    break;
                }
            }
            alpha *= 0.5;
        }

        let Some((xn, fnew, gnew)) = accepted else {
            if hinv.is_identity {
                break;
            }
            hinv.reset();
            continue;
        };

        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gnew.iter().zip(&g).map(|(a, b)| a - b).collect();
        hinv.update(&s, &y);
        x = xn;
        f = fnew;
        g = gnew;

        let m = gauge(&mut x);
        if m != 1.0 {
            g.iter_mut().for_each(|v| *v *= m);
            hinv.scale(1.0 / (m * m));
        }
    }

    let grad_norm = norm(&g);
    if grad_norm <= opts.tol_grad {
        converged = true;
    }
    Some(Outcome {
        x,
        f,
        grad_norm,
        iterations,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let eval = |x: &[f64]| {
            let (a, b) = (x[0], x[1]);
            let f = (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2);
            let g = vec![
                -2.0 * (1.0 - a) - 400.0 * a * (b - a * a),
                200.0 * (b - a * a),
            ];
            Some((f, g))
        };
        let opts = Options {
            tol_grad: 1e-10,
            max_iter: 500,
            max_step: 1.0,
        };
        let out = minimize(vec![-1.2, 1.0], eval, |_| 1.0, &opts).unwrap();
        assert!(out.converged);
        assert!((out.x[0] - 1.0).abs() < 1e-8 && (out.x[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn refused_points_are_avoided() {
        // Minimum of (x-2)^2 lies outside the admissible region x < 1.5.
        let eval = |x: &[f64]| {
            if x[0] >= 1.5 {
                None
            } else {
                Some(((x[0] - 2.0).powi(2), vec![2.0 * (x[0] - 2.0)]))
            }
        };
        let opts = Options {
            tol_grad: 1e-12,
            max_iter: 200,
            max_step: 10.0,
        };
        let out = minimize(vec![0.0], eval, |_| 1.0, &opts).unwrap();
        assert!(!out.converged);
        assert!(out.x[0] < 1.5 && out.x[0] > 1.49);
    }
}
