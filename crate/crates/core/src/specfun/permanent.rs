use num_complex::Complex64;
use num_traits::Zero;

use crate::{Error, Result};

const MAX_N: usize = 12;

fn ryser<T>(entries: &[T], n: usize) -> T
where
    T: Copy + Zero + std::ops::AddAssign + std::ops::SubAssign + std::ops::Mul<Output = T>,
{
    // Ryser with Gray-code subset updates:
    // per(A) = (-1)^n Σ_{S≠∅} (-1)^{|S|} Π_i Σ_{j∈S} a_{ij}
    let mut row_sums = vec![T::zero(); n];
    let mut total = T::zero();
    let mut prev_gray = 0usize;
    let mut popcount = 0i32;
    for k in 1usize..(1 << n) {
        let gray = k ^ (k >> 1);
        let diff = gray ^ prev_gray;
        let j = diff.trailing_zeros() as usize;
        if gray & diff != 0 {
            for (i, rs) in row_sums.iter_mut().enumerate() {
                *rs += entries[i * n + j];
            }
            popcount += 1;
        } else {
            for (i, rs) in row_sums.iter_mut().enumerate() {
                *rs -= entries[i * n + j];
            }
            popcount -= 1;
        }
        prev_gray = gray;
        let mut prod = row_sums[0];
        for rs in &row_sums[1..] {
            prod = prod * *rs;
        }
        if (n as i32 - popcount) % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

fn check_square(rows: usize, len: usize) -> Result<usize> {
    if rows == 0 || rows * rows != len {
        return Err(Error::Dimension(format!(
            "permanent requires a square matrix, got {rows} rows and {len} entries"
        )));
    }
    if rows > MAX_N {
        return Err(Error::Budget(format!("permanent capped at n = {MAX_N}, got {rows}")));
    }
    Ok(rows)
}

/// Permanent of a real n×n matrix (row-major entries), n ≤ 12.
pub fn permanent(entries: &[f64], n: usize) -> Result<f64> {
    let n = check_square(n, entries.len())?;
    Ok(ryser(entries, n))
}

/// Permanent of a complex n×n matrix (row-major entries), n ≤ 12.
pub fn permanent_complex(entries: &[Complex64], n: usize) -> Result<Complex64> {
    let n = check_square(n, entries.len())?;
    Ok(ryser(entries, n))
}
