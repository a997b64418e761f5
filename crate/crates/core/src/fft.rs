//! Discrete Fourier transforms of arbitrary length.
//!
//! Power-of-two lengths use an iterative radix-2 transform; every other
//! length goes through Bluestein's chirp-z reduction to a power of two.
//! Transforms are unnormalised: `forward` uses `exp(-2 pi i jk / n)` and
//! `inverse` uses `exp(+2 pi i jk / n)`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

pub fn forward(buf: &mut [Complex64]) {
    transform(buf, false);
}

pub fn inverse(buf: &mut [Complex64]) {
    transform(buf, true);
}

fn transform(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    if n <= 1 {
        return;
    }
    if n.is_power_of_two() {
        radix2(buf, inverse);
    } else {
        bluestein(buf, inverse);
    }
}

/// `exp(sign * 2 pi i k / n)` for `k < n/2`, each entry computed directly.
fn twiddles(n: usize, inverse: bool) -> Vec<Complex64> {
    let sign = if inverse { 1.0 } else { -1.0 };
    (0..n / 2)
        .map(|k| {
            let angle = sign * 2.0 * PI * (k as f64) / (n as f64);
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect()
}

fn radix2(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            buf.swap(i, j);
        }
    }
    let table = twiddles(n, inverse);
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = table[k * stride];
                let a = buf[start + k];
                let b = buf[start + k + half] * w;
                buf[start + k] = a + b;
                buf[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
}

fn bluestein(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    let m = (2 * n - 1).next_power_of_two();
    let sign = if inverse { 1.0 } else { -1.0 };
    // chirp[k] = exp(sign * i pi k^2 / n); k^2 is reduced mod 2n to keep the
    // argument small.
    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let k2 = ((k as u128 * k as u128) % (2 * n as u128)) as f64;
            let angle = sign * PI * k2 / n as f64;
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect();

    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..n {
        a[k] = buf[k] * chirp[k];
    }
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for k in 1..n {
        b[k] = chirp[k].conj();
        b[m - k] = chirp[k].conj();
    }
    radix2(&mut a, false);
    radix2(&mut b, false);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= *y;
    }
    radix2(&mut a, true);
    let scale = 1.0 / m as f64;
    for k in 0..n {
        buf[k] = a[k] * chirp[k] * scale;
    }
}

/// Full linear convolution of `a` and `b` (length `a.len() + b.len() - 1`).
pub fn convolve(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    let m = out_len.next_power_of_two();
    let mut fa = vec![Complex64::new(0.0, 0.0); m];
    let mut fb = vec![Complex64::new(0.0, 0.0); m];
    fa[..a.len()].copy_from_slice(a);
    fb[..b.len()].copy_from_slice(b);
    radix2(&mut fa, false);
    radix2(&mut fb, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= *y;
    }
    radix2(&mut fa, true);
    let scale = 1.0 / m as f64;
    fa.truncate(out_len);
    for x in fa.iter_mut() {
        *x *= scale;
    }
    fa
}

/// Chirp-z evaluation `out_j = sum_k input_k exp(i w k j)` for `j < m`.
pub fn chirp_z(input: &[Complex64], m: usize, w: f64) -> Vec<Complex64> {
    let n = input.len();
    if n == 0 || m == 0 {
        return alloc::vec![Complex64::new(0.0, 0.0); m];
    }
    // kj = (k^2 + j^2 - (j - k)^2) / 2
    let half_chirp = |i: f64| Complex64::from_polar(1.0, 0.5 * w * i * i);
    let a: Vec<Complex64> = input
        .iter()
        .enumerate()
        .map(|(k, v)| v * half_chirp(k as f64))
        .collect();
    let kernel: Vec<Complex64> = (0..n + m - 1)
        .map(|i| half_chirp(i as f64 - (n as f64 - 1.0)).conj())
        .collect();
    let conv = convolve(&a, &kernel);
    (0..m)
        .map(|j| half_chirp(j as f64) * conv[j + n - 1])
        .collect()
}

/// Angular frequency of DFT bin `k` for `n` samples spaced `dx` apart,
/// folded into `[-pi/dx, pi/dx)`.
pub fn bin_frequency(k: usize, n: usize, dx: f64) -> f64 {
    let signed = if 2 * k < n {
        k as f64
    } else {
        k as f64 - n as f64
    };
    2.0 * PI * signed / (n as f64 * dx)
}
