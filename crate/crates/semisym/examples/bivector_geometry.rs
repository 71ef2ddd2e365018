//! The pseudo-Euclidean space layer: wedge and symmetric products, the
//! induced bivector metric, the so(V) <-> bivector identification, and
//! the Hodge involution with its self-dual / anti-self-dual split.

use semisym::curvature::named_wedge;
use semisym::exact::Scalar;
use semisym::space::{
    bivector_inner, hodge_operator, involution_eigenspace, so_to_bivector, vee_endo, wedge_endo,
};
use semisym::tables;

fn main() {
    let sp = tables::space_null_xz_yt();
    println!("space: null basis <x,z> = <y,t> = 1, signature {:?}", sp.signature().unwrap());

    let x = sp.named_vector("x").unwrap();
    let z = sp.named_vector("z").unwrap();
    let a_xz = wedge_endo(&sp, &x, &z).unwrap();
    println!("A_xz matrix:\n{}", a_xz.matrix);
    println!("A_xz is skew: {}", a_xz.is_skew());

    let v = vee_endo(&sp, &x, &z).unwrap();
    println!("x v z matrix:\n{}", v.matrix);

    // The bivector metric on a few pairs.
    let xz = named_wedge(&sp, "x", "z").unwrap();
    let xy = named_wedge(&sp, "x", "y").unwrap();
    let zt = named_wedge(&sp, "z", "t").unwrap();
    println!("<x^z, x^z> = {}", bivector_inner(&sp, &xz, &xz));
    println!("<x^y, z^t> = {}", bivector_inner(&sp, &xy, &zt));
    println!("<x^y, x^y> = {}", bivector_inner(&sp, &xy, &xy));

    // Round trip through the identification with so(V).
    let back = so_to_bivector(&sp, &a_xz).unwrap();
    println!("A_xz as bivector coordinates: {:?}",
        back.coords.iter().map(|c| format!("{}", c)).collect::<Vec<_>>());

    // Hodge involution and its eigenspaces.
    let j = hodge_operator(&sp).unwrap();
    println!("J^2 = id: {}", j.mul(&j) == semisym::exact::Matrix::identity(6));
    let plus = involution_eigenspace(&j, true);
    let minus = involution_eigenspace(&j, false);
    println!("dim Lambda+ = {}, dim Lambda- = {}", plus.len(), minus.len());
    for v in &plus {
        let printed: Vec<String> = v.iter().map(|c| format!("{}", c)).collect();
        println!("  Lambda+ basis vector: {:?}", printed);
    }
    let _ = Scalar::one();
}
