//! Independent reference computations for the integration tests. Nothing
//! here calls into the library's numeric code.

#![allow(dead_code)]

/// Saaty random index constants, n = 1..=10.
pub const SAATY_RI: [f64; 10] = [0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49];

pub const SIM_WEIGHTS: [(&str, [f64; 5], f64); 4] = [
    ("sim1", [0.47821, 0.35242, 0.04562, 0.05432, 0.06943], 0.0000),
    ("sim2", [0.24562, 0.16293, 0.03241, 0.02452, 0.53452], 0.049),
    ("sim3", [0.40251, 0.30321, 0.02254, 0.02548, 0.24626], 0.049),
    ("sim4", [0.03214, 0.86782, 0.01235, 0.01253, 0.07516], 0.048),
];

pub const EXPECTED_ORDERS: [(&str, [&str; 3]); 4] = [
    ("sim1", ["RF2", "RF1", "RF3"]),
    ("sim2", ["RF1", "RF3", "RF2"]),
    ("sim3", ["RF2", "RF1", "RF3"]),
    ("sim4", ["RF3", "RF2", "RF1"]),
];

/// Desk catalog rows (rnc, fut, avail, elast, srt) and directions.
pub const DESK: [(&str, [f64; 5]); 3] = [
    ("RF1", [0.45, 30.0, 99.0, 300.0, 200.0]),
    ("RF2", [0.30, 20.0, 99.5, 200.0, 600.0]),
    ("RF3", [2.00, 12.0, 99.9, 500.0, 250.0]),
];
pub const DESK_BENEFIT: [bool; 5] = [false, false, true, true, false];

/// Determinant by full permutation expansion.
pub fn leibniz_det(m: &[Vec<f64>]) -> f64 {
    let consts: Vec<Vec<Vec<f64>>> = m
        .iter()
        .map(|row| row.iter().map(|&v| vec![v]).collect())
        .collect();
    leibniz_poly(&consts)[0]
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Leibniz expansion over a matrix whose entries are polynomials in λ
/// (coefficients in ascending powers).
fn leibniz_poly(m: &[Vec<Vec<f64>>]) -> Vec<f64> {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = vec![0.0; n + 1];
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<Vec<f64>>], total: &mut Vec<f64>) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        let term = (0..n).fold(vec![1.0], |acc, i| poly_mul(&acc, &m[i][perm[i]]));
        for (t, c) in total.iter_mut().zip(term) {
            *t += sign * c;
        }
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

/// Coefficients of det(M - λI), ascending powers of λ.
pub fn char_poly(m: &[Vec<f64>]) -> Vec<f64> {
    let shifted: Vec<Vec<Vec<f64>>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &v)| if i == j { vec![v, -1.0] } else { vec![v] })
                .collect()
        })
        .collect();
    leibniz_poly(&shifted)
}

fn horner(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Largest real root of det(M - λI), found by scanning down from above the
/// maximum row sum (a bound on the Perron root) and bisecting the first
/// sign change.
pub fn brute_lambda_max(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let p = char_poly(m);
    let upper = m.iter().map(|r| r.iter().sum::<f64>()).fold(0.0, f64::max) + 1.0;
    let step = 1e-3;
    let mut hi = upper;
    let f_hi = horner(&p, hi);
    let mut lo = hi - step;
    while horner(&p, lo).signum() == f_hi.signum() {
        hi = lo;
        lo -= step;
        assert!(lo > n as f64 - 1.0, "no root found above n - 1");
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if horner(&p, mid).signum() == f_hi.signum() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn brute_cr(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n <= 2 {
        return 0.0;
    }
    let ci = (brute_lambda_max(m) - n as f64) / (n as f64 - 1.0);
    ci / SAATY_RI[n.min(10) - 1]
}

/// SAW scores evaluated literally: benefit r = x / max x, cost
/// r = (1/x) / max(1/x), S = Σ w r.
pub fn saw_oracle(rows: &[Vec<f64>], benefit: &[bool], weights: &[f64]) -> Vec<f64> {
    let n = rows.len();
    let m = benefit.len();
    let mut scores = vec![0.0; n];
    for j in 0..m {
        let col: Vec<f64> = rows.iter().map(|r| r[j]).collect();
        let r: Vec<f64> = if benefit[j] {
            let max = col.iter().cloned().fold(f64::MIN, f64::max);
            col.iter().map(|x| x / max).collect()
        } else {
            let inv: Vec<f64> = col.iter().map(|x| 1.0 / x).collect();
            let max = inv.iter().cloned().fold(f64::MIN, f64::max);
            inv.iter().map(|x| x / max).collect()
        };
        for i in 0..n {
            scores[i] += weights[j] * r[i];
        }
    }
    scores
}

/// AHP scores for ratio-derived matrices in closed form: the priority vector
/// of a consistent matrix is its generating column normalized to sum 1.
pub fn ahp_oracle(rows: &[Vec<f64>], benefit: &[bool], weights: &[f64]) -> Vec<f64> {
    let n = rows.len();
    let mut scores = vec![0.0; n];
    for (j, &b) in benefit.iter().enumerate() {
        let col: Vec<f64> = rows
            .iter()
            .map(|r| if b { r[j] } else { 1.0 / r[j] })
            .collect();
        let total: f64 = col.iter().sum();
        for i in 0..n {
            scores[i] += weights[j] * col[i] / total;
        }
    }
    let total: f64 = scores.iter().sum();
    scores.iter().map(|s| s / total).collect()
}

/// Indices sorted by descending score, ties by index.
pub fn order_of(scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap().then(a.cmp(&b)));
    idx
}

pub fn desk_rows() -> Vec<Vec<f64>> {
    DESK.iter().map(|(_, v)| v.to_vec()).collect()
}

/// Base weights with entry `k` moved to `v` and the rest rescaled.
pub fn rescaled(base: &[f64; 5], k: usize, v: f64) -> Vec<f64> {
    let others: f64 = base.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, w)| w).sum();
    base.iter()
        .enumerate()
        .map(|(j, &w)| if j == k { v } else { w * (1.0 - v) / others })
        .collect()
}

/// First grid value in (0, 1) at which the top alternative under `scorer`
/// differs from the top at the grid start.
pub fn dense_grid_flip(
    scorer: fn(&[Vec<f64>], &[bool], &[f64]) -> Vec<f64>,
    base: &[f64; 5],
    k: usize,
    step: f64,
) -> f64 {
    let rows = desk_rows();
    let top = |v: f64| order_of(&scorer(&rows, &DESK_BENEFIT, &rescaled(base, k, v)))[0];
    let first = top(step);
    let mut v = step;
    while v < 1.0 {
        if top(v) != first {
            return v;
        }
        v += step;
    }
    f64::NAN
}
