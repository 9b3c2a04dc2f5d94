use ionbound::multipole::{cs_tail_vs_bound, f_remainder, lambda_moment, zonal_inverse_distance_average};
use ionbound::quad::{rule, sphere_rule};
use ionbound::radial::{b_of_s, beta_upper_bound, BetaSearch};
use ionbound::specfun::{gen_binomial, legendre_coeff, legendre_unchecked, LegendreCoeffTable};
use ionbound::verify::ROUNDING_SLACK;
use ionbound::variational::{alpha_gradient, alpha_objective, minimize_alpha, AlphaOptions, ParticleConfiguration};
use proptest::prelude::*;

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn min_pair_distance(points: &[[f64; 3]]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..points.len() {
        for j in 0..i {
            let d = [points[i][0] - points[j][0], points[i][1] - points[j][1], points[i][2] - points[j][2]];
            m = m.min(norm(d));
        }
    }
    m
}

fn point() -> impl Strategy<Value = [f64; 3]> {
    [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64]
}

fn configuration() -> impl Strategy<Value = Vec<[f64; 3]>> {
    prop::collection::vec(point(), 2..9)
        .prop_filter("separated points away from the origin", |p| {
            min_pair_distance(p) > 0.1 && p.iter().all(|x| norm(*x) > 0.05)
        })
}

fn rotation(q: [f64; 4]) -> [[f64; 3]; 3] {
    let n = (q.iter().map(|v| v * v).sum::<f64>()).sqrt();
    let [w, x, y, z] = q.map(|v| v / n);
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gradient_matches_central_differences(points in configuration(), s in 1.0..3.0f64) {
        let cfg = ParticleConfiguration::new(points.clone()).unwrap();
        let grad = alpha_gradient(&cfg, s).unwrap();
        let gmax = grad.iter().flat_map(|g| g.iter()).fold(0.0f64, |m, v| m.max(v.abs()));
        let h = 1e-6;
        for i in 0..points.len() {
            for c in 0..3 {
                let mut plus = points.clone();
                let mut minus = points.clone();
                plus[i][c] += h;
                minus[i][c] -= h;
                let fp = alpha_objective(&ParticleConfiguration::new(plus).unwrap(), s).unwrap();
                let fm = alpha_objective(&ParticleConfiguration::new(minus).unwrap(), s).unwrap();
                let fd = (fp - fm) / (2.0 * h);
                prop_assert!((fd - grad[i][c]).abs() <= 1e-5 * gmax.max(1e-3),
                    "i={} c={} fd={} analytic={}", i, c, fd, grad[i][c]);
            }
        }
    }

    #[test]
    fn objective_is_invariant(
        points in configuration(),
        s in 1.0..3.0f64,
        scale in 0.01..100.0f64,
        q in [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64],
        seed in any::<u64>(),
    ) {
        prop_assume!(q.iter().map(|v| v * v).sum::<f64>() > 0.01);
        let cfg = ParticleConfiguration::new(points.clone()).unwrap();
        let base = alpha_objective(&cfg, s).unwrap();
        let scaled = alpha_objective(&cfg.scaled(scale), s).unwrap();
        prop_assert!((scaled - base).abs() <= 1e-12 * base);
        let rotated = alpha_objective(&cfg.transformed(&rotation(q)), s).unwrap();
        prop_assert!((rotated - base).abs() <= 1e-12 * base);
        let mut perm: Vec<usize> = (0..points.len()).collect();
        let mut state = seed;
        for i in (1..perm.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let permuted = alpha_objective(&cfg.permuted(&perm), s).unwrap();
        prop_assert!((permuted - base).abs() <= 1e-12 * base);
    }

    #[test]
    fn legendre_reconstructs_monomials(k in 0usize..41, t in -1.0..=1.0f64) {
        let sum: f64 = (0..=k).map(|l| legendre_coeff(k, l) * legendre_unchecked(l, t)).sum();
        prop_assert!((sum - t.powi(k as i32)).abs() <= 1e-10);
    }

    #[test]
    fn coefficient_table_invariants(k in 0usize..60, l in 0usize..60) {
        let table = LegendreCoeffTable::new(60);
        let c = table.get(k, l);
        prop_assert!(c >= 0.0);
        if l > k || (k + l) % 2 == 1 {
            prop_assert_eq!(c, 0.0);
        }
    }

    #[test]
    fn funk_hecke_matches_sphere_quadrature(
        a in point(),
        xhat in point(),
        r in 0.1..1.5f64,
        l in 0usize..7,
    ) {
        let an = norm(a);
        prop_assume!(an > 0.05 && norm(xhat) > 0.1);
        let ratio = an.min(r) / an.max(r);
        prop_assume!(ratio < 0.75);
        let xn = norm(xhat);
        let xhat = [xhat[0] / xn, xhat[1] / xn, xhat[2] / xn];
        let quadrature: f64 = sphere_rule(64, 128)
            .iter()
            .map(|(w, wt)| {
                let d = [a[0] - r * w[0], a[1] - r * w[1], a[2] - r * w[2]];
                let c = xhat[0] * w[0] + xhat[1] * w[1] + xhat[2] * w[2];
                wt * legendre_unchecked(l, c) / norm(d)
            })
            .sum();
        let closed = zonal_inverse_distance_average(l, a, r, xhat);
        prop_assert!((quadrature - closed).abs() <= 1e-7, "{} vs {}", quadrature, closed);
    }

    #[test]
    fn quadratic_weight_has_no_higher_moments(l in 2usize..30, r in 0.001..=1.0f64) {
        prop_assert!(lambda_moment(l, 2.0, r).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn binomial_decay_bound(a in 1.0..=2.0f64, n in 2usize..500) {
        let bound = a * (a - 1.0) / (n * (n - 1)) as f64;
        prop_assert!(gen_binomial(a, n).abs() <= bound * (1.0 + 1e-12) + 1e-300);
    }
}

#[test]
fn legendre_orthogonality() {
    let g = rule(128);
    for l in 0..=40 {
        for m in 0..=40 {
            let v = g.integrate(-1.0, 1.0, |t| legendre_unchecked(l, t) * legendre_unchecked(m, t));
            let expected = if l == m { 2.0 / (2 * l + 1) as f64 } else { 0.0 };
            assert!((v - expected).abs() < 1e-10, "l={l} m={m}: {v}");
        }
    }
}

#[test]
fn multipole_tail_below_bound_on_grid() {
    for i in 0..20 {
        let s = 2.0 + i as f64 / 19.0;
        for j in 1..=20 {
            let r = j as f64 / 20.0;
            let rep = cs_tail_vs_bound(s, r, 40).unwrap();
            assert!(rep.direct <= r * r * f_remainder(r, s) + ROUNDING_SLACK, "s={s} r={r}: {rep:?}");
        }
    }
}

#[test]
fn root_residual_on_200_values() {
    for i in 0..200 {
        let s = 1.0 + 2.0 * (i + 1) as f64 / 200.0;
        let b = b_of_s(s).unwrap();
        assert!(b.t0 > 0.0 && b.t0 < 1.0);
        let residual = b.t0.powf(s) + s * b.t0 - (s - 1.0);
        assert!(residual.abs() <= 1e-14, "s={s}: {residual}");
        assert!((b.b - (s - 1.0) / (s * b.t0)).abs() <= 1e-14 * b.b);
        assert!((b.beta_lower * b.b - 1.0).abs() <= 1e-15);
    }
}

#[test]
fn alpha_increases_in_n_and_stays_below_beta() {
    for s in [1.5, 2.0, 3.0] {
        let beta_up = beta_upper_bound(s, &BetaSearch::default()).unwrap().beta_up;
        let mut previous = 0.0;
        for n in 2..=7 {
            let mut opts = AlphaOptions::for_n(n);
            opts.n_starts = 16;
            let v = minimize_alpha(n, s, &opts).unwrap().value;
            assert!(v >= previous - 1e-9, "s={s} N={n}: {v} < {previous}");
            assert!(v <= beta_up, "s={s} N={n}: {v} > {beta_up}");
            previous = v;
        }
    }
}
