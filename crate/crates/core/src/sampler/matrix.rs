use nalgebra::DMatrix;
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::analytic::EnsembleParams;
use crate::{Error, Result};

/// An N×N complex sample with its squared Frobenius norm Tr GG† cached.
#[derive(Clone, Debug)]
pub struct MatrixSample {
    pub entries: DMatrix<Complex64>,
    pub trace_gram: f64,
}

impl MatrixSample {
    fn new(entries: DMatrix<Complex64>) -> Self {
        let trace_gram = entries.iter().map(|z| z.norm_sqr()).sum();
        MatrixSample { entries, trace_gram }
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }
}

fn gaussian_matrix(rows: usize, cols: usize, sigma: f64, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re * sigma, im * sigma)
    })
}

/// i.i.d. complex Gaussian matrix with density ∝ exp(−t Tr GG†): real and
/// imaginary parts of every entry are Normal(0, 1/(2t)).
pub fn sample_ginibre(n: usize, t: f64, rng: &mut ChaCha8Rng) -> Result<MatrixSample> {
    if n == 0 || !(t > 0.0) {
        return Err(Error::Domain("sample_ginibre requires N >= 1, t > 0".into()));
    }
    Ok(MatrixSample::new(gaussian_matrix(n, n, (0.5 / t).sqrt(), rng)))
}

/// Haar-distributed unitary: QR of a Ginibre draw with the R diagonal made
/// positive, which removes the phase ambiguity and yields Haar measure.
pub fn sample_haar_unitary(n: usize, rng: &mut ChaCha8Rng) -> Result<DMatrix<Complex64>> {
    if n == 0 {
        return Err(Error::Domain("sample_haar_unitary requires N >= 1".into()));
    }
    let g = gaussian_matrix(n, n, std::f64::consts::FRAC_1_SQRT_2, rng);
    let (mut q, r) = g.qr().unpack();
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let ph = d / d.norm();
            for i in 0..n {
                q[(i, j)] *= ph;
            }
        }
    }
    Ok(q)
}

/// Induced Ginibre draw with density ∝ det(G†G)^ν exp(−t Tr G†G) for
/// integer ν ≥ 0, built as G = V (X†X)^{1/2} from an (N+ν)×N Gaussian X
/// and an independent Haar unitary V. The construction is validated
/// against the analytic density by the acceptance suite.
pub fn sample_induced(n: usize, nu: u32, t: f64, rng: &mut ChaCha8Rng) -> Result<MatrixSample> {
    if n == 0 || !(t > 0.0) {
        return Err(Error::Domain("sample_induced requires N >= 1, t > 0".into()));
    }
    if nu == 0 {
        return sample_ginibre(n, t, rng);
    }
    let x = gaussian_matrix(n + nu as usize, n, (0.5 / t).sqrt(), rng);
    let w = x.adjoint() * &x; // Hermitian positive definite
    let se = nalgebra::SymmetricEigen::new(w);
    let mut root = DMatrix::<Complex64>::zeros(n, n);
    for j in 0..n {
        let lam = se.eigenvalues[j].max(0.0).sqrt();
        for i in 0..n {
            root[(i, j)] = se.eigenvectors[(i, j)] * Complex64::new(lam, 0.0);
        }
    }
    let h = &root * se.eigenvectors.adjoint();
    let v = sample_haar_unitary(n, rng)?;
    Ok(MatrixSample::new(v * h))
}

/// Radial projection onto the fixed-trace sphere: √s · G / √(Tr GG†).
/// Homogeneity of det^ν and the Vandermonde makes the projection preserve
/// the angular law; the acceptance suite validates this against the
/// closed-form density.
pub fn fix_trace(g: &MatrixSample, s: f64) -> Result<MatrixSample> {
    if !(s > 0.0) {
        return Err(Error::Domain("fix_trace requires s > 0".into()));
    }
    if g.trace_gram <= 0.0 {
        return Err(Error::Domain("fix_trace of the zero matrix".into()));
    }
    let scale = (s / g.trace_gram).sqrt();
    let entries = &g.entries * Complex64::new(scale, 0.0);
    Ok(MatrixSample { entries, trace_gram: s })
}

/// Draws the M factors of a (possibly mixed) product ensemble and returns
/// them Frobenius-normalized, plus log_scale = Σ ln ‖G_j‖_F; the true
/// product is e^{log_scale} times the product of the normalized factors.
pub fn sample_product(
    p: &EnsembleParams,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<MatrixSample>, f64)> {
    if p.nu.iter().any(|&v| v < 0.0 || v.fract() != 0.0) {
        return Err(Error::Domain(
            "matrix-level sampling needs non-negative integer nu_j".into(),
        ));
    }
    let mut factors = Vec::with_capacity(p.factors);
    let mut log_scale = 0.0;
    for j in 0..p.factors {
        let nu = p.nu[j] as u32;
        let raw = if j < p.fixed {
            let g = sample_induced(p.n, nu, 1.0, rng)?;
            fix_trace(&g, p.s[j])?
        } else {
            sample_induced(p.n, nu, p.t[j - p.fixed], rng)?
        };
        let norm = raw.trace_gram.sqrt();
        log_scale += norm.ln();
        let entries = &raw.entries * Complex64::new(1.0 / norm, 0.0);
        factors.push(MatrixSample { entries, trace_gram: 1.0 });
    }
    Ok((factors, log_scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::RngState;

    #[test]
    fn ginibre_trace_moment() {
        // E[Tr GG†] = N²/t
        let mut rng = RngState::new(1, 0).rng();
        let n = 4;
        let t = 1.0;
        let samples = 20_000;
        let mut acc = 0.0;
        for _ in 0..samples {
            acc += sample_ginibre(n, t, &mut rng).unwrap().trace_gram;
        }
        let mean = acc / samples as f64;
        // Var(Tr) = N²/t²; standard error of the mean
        let se = (n * n) as f64 / t / (samples as f64).sqrt();
        assert!((mean - 16.0).abs() < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn ginibre_entry_second_moment() {
        let mut rng = RngState::new(2, 0).rng();
        let t = 2.5;
        let samples = 40_000;
        let mut acc = 0.0;
        for _ in 0..samples {
            let g = sample_ginibre(2, t, &mut rng).unwrap();
            acc += g.entries[(0, 0)].norm_sqr();
        }
        let mean = acc / samples as f64;
        let se = (1.0 / t) / (samples as f64).sqrt();
        assert!((mean - 1.0 / t).abs() < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn ginibre_fixed_seed_replays() {
        let a = sample_ginibre(3, 1.0, &mut RngState::new(7, 1).rng()).unwrap();
        let b = sample_ginibre(3, 1.0, &mut RngState::new(7, 1).rng()).unwrap();
        assert_eq!(a.entries, b.entries);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = RngState::new(3, 0).rng();
        for n in [2usize, 5, 8] {
            let u = sample_haar_unitary(n, &mut rng).unwrap();
            let id = u.adjoint() * &u;
            for i in 0..n {
                for j in 0..n {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((id[(i, j)] - Complex64::new(expect, 0.0)).norm() < 1e-12);
                }
            }
            let det = u.lu().determinant();
            assert!((det.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn haar_first_entry_moment() {
        // E|U_11|² = 1/N
        let mut rng = RngState::new(4, 0).rng();
        let n = 4;
        let samples = 20_000;
        let mut acc = 0.0;
        for _ in 0..samples {
            acc += sample_haar_unitary(n, &mut rng).unwrap()[(0, 0)].norm_sqr();
        }
        let mean = acc / samples as f64;
        // |U11|² is Beta(1, N-1): var = (N-1)/(N²(N+1))
        let var = (n as f64 - 1.0) / ((n * n) as f64 * (n as f64 + 1.0));
        let se = (var / samples as f64).sqrt();
        assert!((mean - 0.25).abs() < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn induced_trace_moment() {
        // E[Tr GG†] = N(N+ν)/t, preserved by the polar construction
        let mut rng = RngState::new(5, 0).rng();
        let (n, nu, t) = (3usize, 2u32, 1.5f64);
        let samples = 20_000;
        let mut acc = 0.0;
        for _ in 0..samples {
            acc += sample_induced(n, nu, t, &mut rng).unwrap().trace_gram;
        }
        let mean = acc / samples as f64;
        let expect = (n * (n + nu as usize)) as f64 / t;
        let se = expect / (samples as f64).sqrt(); // generous
        assert!((mean - expect).abs() < 3.0 * se, "mean {mean} vs {expect}");
    }

    #[test]
    fn fix_trace_pins_the_gram_trace() {
        let mut rng = RngState::new(6, 0).rng();
        let g = sample_ginibre(5, 1.0, &mut rng).unwrap();
        let f = fix_trace(&g, 2.0).unwrap();
        let recomputed: f64 = f.entries.iter().map(|z| z.norm_sqr()).sum();
        assert!((recomputed - 2.0).abs() < 1e-12 * 2.0);
        assert!((f.trace_gram - 2.0).abs() < 1e-14);
    }

    #[test]
    fn fix_trace_homogeneity() {
        let mut rng = RngState::new(6, 1).rng();
        let g = sample_ginibre(4, 1.0, &mut rng).unwrap();
        let a = fix_trace(&g, 4.0).unwrap();
        let b = fix_trace(&g, 1.0).unwrap();
        for (x, y) in a.entries.iter().zip(b.entries.iter()) {
            assert!((x - y * Complex64::new(2.0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn product_log_scale_and_determinant() {
        // det(true product) = Π det(G_j) in log magnitude
        let mut rng = RngState::new(8, 0).rng();
        let p = EnsembleParams::product(4, vec![0.0, 0.0], vec![1.0, 1.0]);
        for _ in 0..20 {
            let (factors, log_scale) = sample_product(&p, &mut rng).unwrap();
            let mut prod = factors[0].entries.clone();
            for f in &factors[1..] {
                prod = prod * &f.entries;
            }
            let ln_det_prod = prod.lu().determinant().norm().ln() + 4.0 * log_scale;
            let mut ln_det_each = 0.0;
            for f in &factors {
                ln_det_each += f.entries.clone().lu().determinant().norm().ln();
            }
            ln_det_each += 4.0 * log_scale;
            assert!(
                (ln_det_prod - ln_det_each).abs() < 1e-8 * ln_det_each.abs().max(1.0),
                "{ln_det_prod} vs {ln_det_each}"
            );
        }
    }

    #[test]
    fn product_reduces_to_fixed_trace_single() {
        let pm = EnsembleParams::mixed(3, vec![1.0], vec![2.0], vec![]);
        let (factors, _) = sample_product(&pm, &mut RngState::new(9, 0).rng()).unwrap();
        assert_eq!(factors.len(), 1);
        // normalized factor has unit Frobenius norm; the raw one had s = 2
        let tg: f64 = factors[0].entries.iter().map(|z| z.norm_sqr()).sum();
        assert!((tg - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_rejects_real_nu() {
        let p = EnsembleParams::product(3, vec![0.5], vec![1.0]);
        assert!(sample_product(&p, &mut RngState::new(1, 0).rng()).is_err());
    }
}
