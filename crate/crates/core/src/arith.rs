//! Exact integer forms of the square-root and logarithm thresholds used by the
//! reduction rules.

/// `floor(sqrt(x))` for `x >= 0`.
pub fn isqrt(x: u128) -> u128 {
    if x < 2 {
        return x;
    }
    let mut r = libm::sqrt(x as f64) as u128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// `a < sqrt(x)`, with `x` possibly negative (then false).
pub fn lt_sqrt(a: i128, x: i128) -> bool {
    if x <= 0 {
        return false;
    }
    a < 0 || a * a < x
}

/// `a > c * sqrt(x)` for `c, x >= 0`.
pub fn gt_mul_sqrt(a: i128, c: i128, x: i128) -> bool {
    a > 0 && a * a > c * c * x
}

/// `d <= 2 * log2(k)`, i.e. `2^d <= k^2`. False for `k < 1`.
pub fn le_two_log2(d: usize, k: i64) -> bool {
    if k < 1 {
        return false;
    }
    let sq = (k as u128) * (k as u128);
    d < 128 && (1u128 << d) <= sq
}

/// `floor(4 * log2(k))`, i.e. the largest `b` with `2^b <= k^4`, for `k >= 1`.
pub fn floor_four_log2(k: i64) -> usize {
    assert!(k >= 1);
    let k4 = (k as u128).pow(4);
    (127 - k4.leading_zeros()) as usize
}

/// `log2(k)` as a float, exact for powers of two.
pub fn log2(k: i64) -> f64 {
    let k = k as u64;
    if k.is_power_of_two() {
        k.trailing_zeros() as f64
    } else {
        libm::log2(k as f64)
    }
}

/// Smallest `s` with `s(s-1)/2 > k` (for `k >= 0`).
pub fn forcing_independent_size(k: i64) -> usize {
    let mut s = 1usize;
    while ((s * (s - 1)) / 2) as i64 <= k {
        s += 1;
    }
    s
}
