//! Moving between Bloch vectors and density matrices, and the two error
//! metrics used throughout: geodesic distance and infidelity.

use qubit_fanout::qstate::{
    bloch_to_density, density_to_bloch, extrapolate_to_sphere, fidelity, geodesic_distance,
};
use qubit_fanout::{BlochVector, Result};

fn main() -> Result<()> {
    let plus = BlochVector::new(1.0, 0.0, 0.0);
    let tilted = BlochVector::from_angles(std::f64::consts::FRAC_PI_3, 0.25);

    let rho = bloch_to_density(&tilted)?;
    let [a, b, c, d] = rho.entries();
    println!("rho(tilted) = [[{a:.4}, {b:.4}], [{c:.4}, {d:.4}]]");
    println!("eigenvalues = {:?}", rho.eigenvalues());
    println!("back to Bloch = {}", density_to_bloch(&rho)?);

    let d = geodesic_distance(&plus, &tilted)?;
    let f = fidelity(&bloch_to_density(&plus)?, &rho)?;
    println!(
        "geodesic {d:.6} rad, fidelity {f:.6}, cos^2(d/2) {:.6}",
        (d / 2.0).cos().powi(2)
    );

    // A mixed state sits inside the ball; extrapolation pushes it back out.
    let mixed = tilted.scale(0.4);
    let ext = extrapolate_to_sphere(&mixed);
    println!(
        "mixed {mixed} -> t = {:.3}, surface point {}",
        ext.t, ext.point
    );
    Ok(())
}
