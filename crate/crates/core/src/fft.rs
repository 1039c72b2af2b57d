//! In-place iterative radix-2 FFT.

use num_complex::Complex64;

use crate::error::{range, Result};

pub fn is_power_of_two(n: usize) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// Forward (`e^{-2πi jk/n}`) or inverse (`e^{+2πi jk/n}`, scaled by `1/n`)
/// discrete Fourier transform of a power-of-two length buffer.
pub fn fft_in_place(data: &mut [Complex64], inverse: bool) -> Result<()> {
    let n = data.len();
    if !is_power_of_two(n) {
        return range(format!("FFT length must be a power of two, got {n}"));
    }
    if n == 1 {
        return Ok(());
    }

    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }

    // One twiddle table for the full length; stage `len` strides through it.
    let sign = if inverse { 1.0 } else { -1.0 };
    let twiddles: Vec<Complex64> = (0..n / 2)
        .map(|j| {
            let theta = sign * 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            Complex64::new(theta.cos(), theta.sin())
        })
        .collect();

    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for j in 0..half {
                let w = twiddles[j * stride];
                let u = data[start + j];
                let v = data[start + j + half] * w;
                data[start + j] = u + v;
                data[start + j + half] = u - v;
            }
        }
        len <<= 1;
    }

    if inverse {
        let scale = 1.0 / n as f64;
        for x in data.iter_mut() {
            *x *= scale;
        }
    }
    Ok(())
}

pub fn fft(input: &[f64]) -> Result<Vec<Complex64>> {
    let mut buf: Vec<Complex64> = input.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fft_in_place(&mut buf, false)?;
    Ok(buf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dft(x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(j, &v)| {
                        let th = -2.0 * std::f64::consts::PI * (j * k % n) as f64 / n as f64;
                        v * Complex64::new(th.cos(), th.sin())
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        for n in [1usize, 2, 4, 8, 64, 256] {
            let x: Vec<Complex64> = (0..n)
                .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
                .collect();
            let mut y = x.clone();
            fft_in_place(&mut y, false).unwrap();
            let z = naive_dft(&x);
            for (a, b) in y.iter().zip(&z) {
                assert!((a - b).norm() < 1e-10 * n as f64, "n={n}");
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let x: Vec<Complex64> = (0..1024)
            .map(|i| Complex64::new((i as f64).sqrt(), -(i as f64) * 0.01))
            .collect();
        let mut y = x.clone();
        fft_in_place(&mut y, false).unwrap();
        fft_in_place(&mut y, true).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_power_of_two() {
        let mut buf = vec![Complex64::new(0.0, 0.0); 12];
        assert!(fft_in_place(&mut buf, false).is_err());
        assert!(fft(&[]).is_err());
    }
}
