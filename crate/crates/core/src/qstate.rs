//! Single-qubit state representations.
//!
//! A qubit is handled either as a [`BlochVector`] (a point in the unit ball) or
//! as a [`DensityMatrix2`]. The conversions between the two use the convention
//!
//! ```text
//! rho = [[ (1+z)/2, (x-iy)/2 ],
//!        [ (x+iy)/2, (1-z)/2 ]]
//! ```
//!
//! so that `z = Re(a - d)` on the way back and |0> sits at the north pole.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the norm above which a Bloch vector is rejected as non-physical.
pub const PHYSICAL_NORM_TOL: f64 = 1e-9;

/// Norm below which a vector has no usable direction.
pub const DEGENERATE_NORM: f64 = 1e-9;

/// Tolerance for Hermiticity, trace and positivity checks on density matrices.
pub const MATRIX_TOL: f64 = 1e-12;

/// A point `(x, y, z)` in (or near) the Bloch ball.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ORIGIN: BlochVector = BlochVector::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Unit vector from polar angle `theta` (from +z) and azimuth `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self::new(
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        )
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &BlochVector) -> BlochVector {
        BlochVector::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// `norm <= 1 + 1e-9`.
    pub fn is_physical(&self) -> bool {
        self.is_finite() && self.norm() <= 1.0 + PHYSICAL_NORM_TOL
    }

    /// True when the vector lies on the sphere surface to within `tol`.
    pub fn is_pure(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn scale(&self, s: f64) -> BlochVector {
        BlochVector::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Add for BlochVector {
    type Output = BlochVector;
    fn add(self, rhs: BlochVector) -> BlochVector {
        BlochVector::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for BlochVector {
    type Output = BlochVector;
    fn sub(self, rhs: BlochVector) -> BlochVector {
        BlochVector::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for BlochVector {
    type Output = BlochVector;
    fn neg(self) -> BlochVector {
        self.scale(-1.0)
    }
}

impl Mul<BlochVector> for f64 {
    type Output = BlochVector;
    fn mul(self, rhs: BlochVector) -> BlochVector {
        rhs.scale(self)
    }
}

impl fmt::Display for BlochVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A validated 2x2 density matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl DensityMatrix2 {
    /// Builds a density matrix, checking Hermiticity, unit trace and positivity.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let m = Self { a, b, c, d };
        m.validate()?;
        Ok(m)
    }

    /// Like [`DensityMatrix2::new`] but skips validation. Callers must
    /// guarantee the invariants hold.
    pub(crate) fn new_unchecked(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { a, b, c, d }
    }

    /// Row-major entries `[a, b, c, d]`.
    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn determinant(&self) -> f64 {
        (self.a * self.d - self.b * self.c).re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let mean = 0.5 * (self.a.re + self.d.re);
        let half_gap = 0.5 * (self.a.re - self.d.re);
        let r = (half_gap * half_gap + self.b.norm_sqr()).sqrt();
        [mean - r, mean + r]
    }

    /// `Tr(self * other)`, real for Hermitian inputs.
    pub fn trace_product(&self, other: &DensityMatrix2) -> f64 {
        (self.a * other.a + self.b * other.c + self.c * other.b + self.d * other.d).re
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &DensityMatrix2) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries().iter())
            .map(|(p, q)| (p - q).norm())
            .fold(0.0, f64::max)
    }

    fn validate(&self) -> Result<()> {
        let finite = self
            .entries()
            .iter()
            .all(|e| e.re.is_finite() && e.im.is_finite());
        if !finite {
            return Err(Error::domain("density matrix has non-finite entries"));
        }
        if self.a.im.abs() > MATRIX_TOL || self.d.im.abs() > MATRIX_TOL {
            return Err(Error::domain("density matrix diagonal is not real"));
        }
        if (self.c - self.b.conj()).norm() > MATRIX_TOL {
            return Err(Error::domain("density matrix is not Hermitian"));
        }
        if (self.a.re + self.d.re - 1.0).abs() > MATRIX_TOL {
            return Err(Error::domain(format!(
                "density matrix trace is {}, expected 1",
                self.a.re + self.d.re
            )));
        }
        let [low, _] = self.eigenvalues();
        if low < -MATRIX_TOL {
            return Err(Error::domain(format!(
                "density matrix is not positive semidefinite (eigenvalue {low})"
            )));
        }
        Ok(())
    }
}

/// Result of scaling a vector out to the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtrapolationResult {
    /// Positive root of `|t v|^2 = 1`. NaN when degenerate.
    pub t: f64,
    /// `t * v`; NaN components when degenerate.
    pub point: BlochVector,
    /// Input norm was below [`DEGENERATE_NORM`].
    pub degenerate: bool,
}

impl ExtrapolationResult {
    /// The surface point, or `None` for degenerate input.
    pub fn surface_point(&self) -> Option<BlochVector> {
        (!self.degenerate).then_some(self.point)
    }
}

/// Maps a Bloch vector to its density matrix.
///
/// Vectors whose norm exceeds one by at most `1e-9` are pulled back onto the
/// sphere; anything further out is rejected.
pub fn bloch_to_density(v: &BlochVector) -> Result<DensityMatrix2> {
    if !v.is_finite() {
        return Err(Error::domain(format!("Bloch vector {v} is not finite")));
    }
    let n = v.norm();
    if n > 1.0 + PHYSICAL_NORM_TOL {
        return Err(Error::domain(format!(
            "Bloch vector {v} has norm {n} > 1 (non-physical)"
        )));
    }
    let v = if n > 1.0 { v.scale(1.0 / n) } else { *v };
    Ok(DensityMatrix2::new_unchecked(
        Complex64::new(0.5 + 0.5 * v.z, 0.0),
        Complex64::new(0.5 * v.x, -0.5 * v.y),
        Complex64::new(0.5 * v.x, 0.5 * v.y),
        Complex64::new(0.5 - 0.5 * v.z, 0.0),
    ))
}

/// Inverse of [`bloch_to_density`]: `x = Re(c+b)`, `y = Im(c-b)`, `z = Re(a-d)`.
pub fn density_to_bloch(rho: &DensityMatrix2) -> Result<BlochVector> {
    rho.validate()?;
    let [a, b, c, d] = rho.entries();
    Ok(BlochVector::new((c + b).re, (c - b).im, (a - d).re))
}

/// Uhlmann fidelity `Tr[sqrt(sqrt(r1) r2 sqrt(r1))]^2`.
///
/// Uses the qubit closed form `Tr(r1 r2) + 2 sqrt(det r1 det r2)`.
pub fn fidelity(rho1: &DensityMatrix2, rho2: &DensityMatrix2) -> Result<f64> {
    rho1.validate()?;
    rho2.validate()?;
    let dets = rho1.determinant().max(0.0) * rho2.determinant().max(0.0);
    let f = rho1.trace_product(rho2) + 2.0 * dets.sqrt();
    Ok(f.clamp(0.0, 1.0))
}

/// Great-circle distance between the directions of `v1` and `v2`, in `[0, pi]`.
pub fn geodesic_distance(v1: &BlochVector, v2: &BlochVector) -> Result<f64> {
    let (n1, n2) = (v1.norm(), v2.norm());
    if n1.is_nan() || n2.is_nan() || n1 < DEGENERATE_NORM || n2 < DEGENERATE_NORM {
        return Err(Error::Degenerate(format!(
            "geodesic distance needs non-zero vectors, got norms {n1} and {n2}"
        )));
    }
    let cos = (v1.dot(v2) / (n1 * n2)).clamp(-1.0, 1.0);
    Ok(cos.acos().clamp(0.0, PI))
}

/// Scales `v` onto the unit sphere along its own direction.
pub fn extrapolate_to_sphere(v: &BlochVector) -> ExtrapolationResult {
    let n = v.norm();
    if n.is_nan() || n < DEGENERATE_NORM {
        return ExtrapolationResult {
            t: f64::NAN,
            point: BlochVector::new(f64::NAN, f64::NAN, f64::NAN),
            degenerate: true,
        };
    }
    let t = 1.0 / n;
    ExtrapolationResult {
        t,
        point: v.scale(t),
        degenerate: false,
    }
}
