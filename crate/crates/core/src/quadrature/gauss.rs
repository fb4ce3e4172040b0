use alloc::boxed::Box;

use once_cell::race::OnceBox;

#[allow(unused_imports)]
use num_traits::Float;
/// Nodes and weights of a Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: [f64; 16],
    pub weights: [f64; 16],
}

static GL16: OnceBox<GaussRule> = OnceBox::new();

/// The 16-point Gauss-Legendre rule, computed once by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre_16() -> &'static GaussRule {
    GL16.get_or_init(|| Box::new(compute_rule()))
}

/// Legendre polynomial `P_16` and its derivative at `x`.
fn legendre_16(x: f64) -> (f64, f64) {
    let mut p_prev = 1.0f64;
    let mut p = x;
    for k in 2..=16u32 {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let dp = 16.0 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

fn compute_rule() -> GaussRule {
    let mut nodes = [0.0f64; 16];
    let mut weights = [0.0f64; 16];
    for i in 0..16 {
        // Tricomi-style initial guess, then Newton.
        let mut x = (core::f64::consts::PI * (i as f64 + 0.75) / 16.5).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_16(x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_16(x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    nodes.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    // Recompute weights in sorted order.
    for i in 0..16 {
        let (_, dp) = legendre_16(nodes[i]);
        weights[i] = 2.0 / ((1.0 - nodes[i] * nodes[i]) * dp * dp);
    }
    GaussRule { nodes, weights }
}

/// Applies the 16-point rule to `f` on `[a, b]`.
pub fn gl16<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let rule = gauss_legendre_16();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for i in 0..16 {
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    acc * half
}
