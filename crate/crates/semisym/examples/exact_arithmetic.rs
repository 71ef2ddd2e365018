//! Tour of the exact scalar layer: rational-function arithmetic, the
//! expression grammar, kernels and solutions of linear systems, and
//! characteristic/minimal polynomials with factorization.

use semisym::exact::{Matrix, Scalar};

fn main() {
    // Scalars are quotients of integer polynomials in declared parameters.
    let expr = Scalar::parse("(a^2 - b)/(a*b + 1)").unwrap();
    println!("parsed scalar: {}", expr);

    let point = [
        (semisym::exact::Sym::new("a"), Scalar::from_int(3)),
        (semisym::exact::Sym::new("b"), Scalar::from_fraction(1, 2)),
    ]
    .into_iter()
    .collect();
    println!("value at a=3, b=1/2: {}", expr.substitute(&point).unwrap());

    // Kernels are exact and deterministic.
    let m = Matrix::from_int_rows(&[&[1, 1], &[1, 1]]);
    println!("kernel of [[1,1],[1,1]]:");
    for v in m.kernel_basis() {
        println!("  {:?}", v.iter().map(|x| format!("{}", x)).collect::<Vec<_>>());
    }

    // Linear solve with a parametric entry: pivots are rational functions.
    let a = Scalar::param("a");
    let sys = Matrix::from_rows(vec![
        vec![a.clone(), Scalar::one()],
        vec![Scalar::zero(), a.clone()],
    ]);
    let (x, kernel) = sys.solve_linear(&[Scalar::one(), a.clone()]).unwrap();
    println!(
        "solution of [[a,1],[0,a]] x = (1,a): ({}, {}), kernel rank {}",
        x[0],
        x[1],
        kernel.len()
    );

    // Characteristic and minimal polynomials, with rational factorization.
    let m = Matrix::from_int_rows(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 5]]);
    let cp = m.char_poly();
    let mp = m.min_poly();
    println!("char poly: {}", cp);
    println!("min  poly: {}", mp);
    for f in cp.factor_over_rationals().unwrap() {
        println!("  factor ({})^{}", f.poly, f.multiplicity);
    }
}
