#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Coefficients of a `+`-separated sum of `cX` / constant tokens over the
/// given symbols, e.g. `2D+A+2B+10` over `DAB`.
fn linear(expr: &str, symbols: &str) -> (Vec<i64>, i64) {
    let mut coef = vec![0; symbols.len()];
    let mut constant = 0;
    for tok in expr.split('+') {
        match symbols.find(|c| tok.ends_with(c)) {
            Some(pos) => {
                let head = &tok[..tok.len() - 1];
                coef[pos] = if head.is_empty() { 1 } else { head.parse().unwrap() };
            }
            None => constant = tok.parse().unwrap(),
        }
    }
    (coef, constant)
}

/// `(offset, a, b, min N)` rows for `Q(N + offset) = aN + b`.
pub fn first_terms_plain() -> Vec<(usize, i64, i64, i64)> {
    data("first_terms_plain.tsv")
        .lines()
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            let (c, k) = linear(f[1], "N");
            (f[0].parse().unwrap(), c[0], k, f[2].parse().unwrap())
        })
        .collect()
}

/// `(offset, [d, a, b], c)` rows for
/// `Q(A_j + offset) = d D + a A_j + b B_j + c`.
pub fn final_terms_class0() -> Vec<(usize, [i64; 3], i64)> {
    data("final_terms_class0.tsv")
        .lines()
        .map(|l| {
            let (off, expr) = l.split_once('\t').unwrap();
            let (c, k) = linear(expr, "DAB");
            (off.parse().unwrap(), [c[0], c[1], c[2]], k)
        })
        .collect()
}

/// `(A_0, ..., A_j)`, `(B_1, ..., B_j)` and `C_j` by direct iteration in
/// 128-bit arithmetic, stopping at the first `C_i != 1` or after `depth`.
pub fn profile_i128(n: i128, depth: usize) -> (Vec<i128>, Vec<i128>, Vec<i128>) {
    let mut a = vec![n - 2, 2 * n + 4];
    let mut b = vec![-11 * n - 22];
    let mut c = vec![(n - 1).rem_euclid(5)];
    while c[c.len() - 1] == 1 && c.len() < depth {
        let i = a.len() - 1;
        let num = a[i] - a[i - 1] + 2;
        assert_eq!(num % 5, 0, "N={n} level {i}");
        let next = a[i] * (num / 5) + b[i - 1];
        b.push(next - a[i]);
        c.push((next + 2 * (i as i128 + 1) + 1).rem_euclid(5));
        a.push(next);
    }
    (a, b, c)
}
