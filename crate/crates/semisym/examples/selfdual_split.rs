//! Self-dual spectra of the two Einstein model tensors: the curvature
//! operator commutes with the Hodge involution, restricts to the
//! three-dimensional eigenspaces, and is a homothety for the
//! constant-curvature tensor while the holonomy-4 Einstein tensor shows a
//! repeated eigenvalue plus one distinct eigenvalue on the opposite side.

use semisym::curvature::selfdual_spectrum;
use semisym::exact::Scalar;
use semisym::tables;

fn describe(name: &str, k: &semisym::curvature::CurvatureTensor) {
    let sd = selfdual_spectrum(k).unwrap();
    println!("{}:", name);
    println!("  J^2 = id: {}   [J, R] = 0: {}", sd.involution_ok, sd.commutes);
    for (side, op) in [("R+", sd.plus.as_ref()), ("R-", sd.minus.as_ref())] {
        let Some(op) = op else { continue };
        match &op.homothety {
            Some(ratio) => println!("  {} is a homothety with ratio {}", side, ratio),
            None => println!(
                "  {}: min poly {}, diagonalizable {}, {} distinct eigenvalues",
                side, op.min_poly, op.diagonalizable, op.distinct_eigenvalues
            ),
        }
    }
}

fn main() {
    let a = Scalar::param("a");
    describe("constant curvature (so(2,2) symmetric tensor)", &tables::k6_constant_curvature(&a));
    describe("Einstein tensor of type 4.2^1", &tables::einstein_4_2_1(&a));
}
