//! The complex-Ricci model tensor: its minimal polynomial is a single
//! irreducible quadratic, the characteristic polynomial is its square,
//! the eigenvalues are -2a +- i b, and the whole space is one
//! characteristic block of dimension 4.

use semisym::curvature::{ricci_decomposition, ricci_with, GenericityOpts, RicciType};
use semisym::exact::{generic_points, Scalar, Sym, DEFAULT_SEED};
use semisym::tables;

fn main() {
    let a = Scalar::param("a");
    let b = Scalar::param("b");
    let k = tables::complex_ricci(&a, &b);
    let opts = GenericityOpts {
        constraints: vec![b.clone()],
        seed: DEFAULT_SEED,
    };
    let data = ricci_with(&k, &opts).unwrap();
    println!("min  poly: {}", data.min_poly);
    println!("char poly: {}", data.char_poly);
    println!("type: {}", data.type_tag);
    assert!(matches!(data.type_tag, RicciType::ComplexRicci { .. }));

    // Verify the eigenvalue pair at generic rational points with b != 0:
    // the minimal polynomial must equal (X + 2a)^2 + b^2 exactly.
    let params = [Sym::new("a"), Sym::new("b")];
    for point in generic_points(DEFAULT_SEED, &params, &[b.clone()]).unwrap() {
        let min_at = data.min_poly.substitute(&point).unwrap();
        let av = point[&Sym::new("a")].clone();
        let bv = point[&Sym::new("b")].clone();
        let shift = semisym::exact::UniPoly::new(vec![av.scale_int(2), Scalar::one()]);
        let expected = shift.mul(&shift).add(&semisym::exact::UniPoly::new(vec![bv.mul(&bv)]));
        assert_eq!(min_at, expected);
        println!(
            "at a={}, b={}: eigenvalues {} +- i*{}",
            av,
            bv,
            av.scale_int(-2),
            bv
        );
    }

    let dec = ricci_decomposition(&k, &opts).unwrap();
    for block in &dec.blocks {
        println!(
            "block {:?}: factor {}, dimension {}",
            block.label,
            block.factor,
            block.basis.len()
        );
    }
}
