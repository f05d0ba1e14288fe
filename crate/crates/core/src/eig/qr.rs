use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

const MAX_N: usize = 256;
const ITER_PER_EIGENVALUE: usize = 40;

/// All eigenvalues of a dense complex matrix by Hessenberg reduction and
/// single-shift QR iteration with Wilkinson shifts.
///
/// Backward-stable at the usual ε‖A‖ level; raises on non-convergence
/// rather than returning a partial spectrum.
pub fn eigenvalues(a: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::Dimension(format!("matrix is {}x{}", a.nrows(), a.ncols())));
    }
    if n == 0 {
        return Ok(vec![]);
    }
    if n > MAX_N {
        return Err(Error::Budget(format!("eigenvalue solver capped at N <= {MAX_N}")));
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    if n == 1 {
        return Ok(vec![a[(0, 0)]]);
    }
    let mut h = nalgebra::linalg::Hessenberg::new(a.clone()).unpack_h();
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n; // active block ends at hi
    let mut iters_left = ITER_PER_EIGENVALUE * n;
    let mut stagnation = 0usize;
    while hi > 0 {
        if hi == 1 {
            eigs.push(h[(0, 0)]);
            break;
        }
        // find the top of the unreduced block ending at hi, zeroing any
        // negligible subdiagonal on the way
        let mut lo = hi - 1;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let scale = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            if sub <= f64::EPSILON * scale.max(1e-300) {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            eigs.push(h[(hi - 1, hi - 1)]);
            hi -= 1;
            stagnation = 0;
            continue;
        }
        if lo == hi - 2 {
            let (e1, e2) = eig_2x2(
                h[(lo, lo)],
                h[(lo, lo + 1)],
                h[(lo + 1, lo)],
                h[(lo + 1, lo + 1)],
            );
            eigs.push(e1);
            eigs.push(e2);
            hi -= 2;
            stagnation = 0;
            continue;
        }
        if iters_left == 0 {
            return Err(Error::NonConvergence(format!(
                "QR iteration exhausted with {hi} eigenvalues unresolved"
            )));
        }
        iters_left -= 1;
        stagnation += 1;
        let m = hi - 1;
        let shift = if stagnation % 12 == 0 {
            // exceptional shift to break cycling
            Complex64::new(h[(m, m - 1)].norm() + h[(m, m)].norm(), 0.0) * 0.75
        } else {
            wilkinson(h[(m - 1, m - 1)], h[(m - 1, m)], h[(m, m - 1)], h[(m, m)])
        };
        qr_step(&mut h, lo, hi, shift);
    }
    debug_assert_eq!(eigs.len(), n);
    Ok(eigs)
}

fn eig_2x2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (half * half - det).sqrt();
    (half + disc, half - disc)
}

fn wilkinson(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    // eigenvalue of [[a,b],[c,d]] closest to d
    let tr = a + d;
    let half = tr * 0.5;
    let det = a * d - b * c;
    let disc = (half * half - det).sqrt();
    let e1 = half + disc;
    let e2 = half - disc;
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

// One explicit single-shift QR step on the active Hessenberg block
// [lo, hi): H - μI = QR via Givens rotations, then H ← RQ + μI.
fn qr_step(h: &mut DMatrix<Complex64>, lo: usize, hi: usize, shift: Complex64) {
    let n = hi - lo;
    if n < 2 {
        return;
    }
    let mut rot: Vec<(Complex64, Complex64)> = Vec::with_capacity(n - 1);
    for i in lo..hi {
        h[(i, i)] -= shift;
    }
    // forward sweep: eliminate subdiagonals
    for i in lo..(hi - 1) {
        let x = h[(i, i)];
        let y = h[(i + 1, i)];
        let norm = (x.norm_sqr() + y.norm_sqr()).sqrt();
        let (c, s) = if norm == 0.0 {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (x.conj() / norm, y.conj() / norm)
        };
        rot.push((c, s));
        for j in i..hi {
            let hij = h[(i, j)];
            let h1j = h[(i + 1, j)];
            h[(i, j)] = c * hij + s * h1j;
            h[(i + 1, j)] = -s.conj() * hij + c.conj() * h1j;
        }
    }
    // backward sweep: apply the rotations on the right
    for (k, &(c, s)) in rot.iter().enumerate() {
        let i = lo + k;
        let col_hi = (i + 2).min(hi - 1);
        for j in lo..=col_hi {
            let hji = h[(j, i)];
            let hj1 = h[(j, i + 1)];
            h[(j, i)] = hji * c.conj() + hj1 * s.conj();
            h[(j, i + 1)] = -hji * s + hj1 * c;
        }
    }
    for i in lo..hi {
        h[(i, i)] += shift;
    }
}
