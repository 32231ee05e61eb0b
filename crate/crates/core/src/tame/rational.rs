//! Exact rational elimination for small integer matrices.

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Primitive generator of the kernel of `m` when that kernel is a line
/// spanned by a strictly positive vector.
pub(crate) fn radical_generator(m: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    // fraction-free row reduction
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| a[r][col] != 0) else { continue };
        a.swap(row, p);
        for r in 0..n {
            if r != row && a[r][col] != 0 {
                let (x, y) = (a[row][col], a[r][col]);
                let pivot_row = a[row].clone();
                for (v, &w) in a[r].iter_mut().zip(&pivot_row) {
                    *v = *v * x - w * y;
                }
                let g = a[r].iter().fold(0, |g, &v| gcd(g, v));
                if g > 1 {
                    a[r].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() + 1 != n {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    // x_free = L (common multiple of pivot entries), solve pivot rows
    let lcm = pivots
        .iter()
        .enumerate()
        .fold(1i128, |l, (r, &c)| l / gcd(l, a[r][c]) * a[r][c].abs());
    let mut x = vec![0i128; n];
    x[free] = lcm;
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = -a[r][free] * lcm / a[r][c];
    }
    let g = x.iter().fold(0, |g, &v| gcd(g, v));
    let sign = if x.iter().any(|&v| v < 0) { -1 } else { 1 };
    let x: Vec<i64> = x.iter().map(|&v| (sign * v / g) as i64).collect();
    x.iter().all(|&v| v > 0).then_some(x)
}
