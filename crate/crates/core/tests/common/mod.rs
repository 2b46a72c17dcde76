use nalgebra::{Complex, Matrix2};
use qubit_fanout::DensityMatrix2;

/// Uhlmann fidelity evaluated from its definition with Hermitian
/// eigendecompositions, independent of the closed form in the library.
pub fn definitional_fidelity(r1: &DensityMatrix2, r2: &DensityMatrix2) -> f64 {
    let to_na = |r: &DensityMatrix2| {
        let [a, b, c, d] = r.entries();
        Matrix2::new(
            Complex::new(a.re, a.im),
            Complex::new(b.re, b.im),
            Complex::new(c.re, c.im),
            Complex::new(d.re, d.im),
        )
    };
    let (m1, m2) = (to_na(r1), to_na(r2));
    let eig = m1.symmetric_eigen();
    let sqrt_vals = eig
        .eigenvalues
        .map(|l| Complex::new(l.max(0.0).sqrt(), 0.0));
    let sqrt_m1 =
        eig.eigenvectors * Matrix2::from_diagonal(&sqrt_vals) * eig.eigenvectors.adjoint();
    let inner = sqrt_m1 * m2 * sqrt_m1;
    // symmetrise away rounding before the Hermitian solver
    let inner = (inner + inner.adjoint()) * Complex::new(0.5, 0.0);
    let tr: f64 = inner
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|l| l.max(0.0).sqrt())
        .sum();
    tr * tr
}
