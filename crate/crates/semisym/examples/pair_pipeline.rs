//! Homogeneous pairs with nonzero isotropy: invariant-metric families from
//! the isotropy representation, and the full pipeline over the symbolic
//! family member.

use std::collections::BTreeMap;

use semisym::curvature::GenericityOpts;
use semisym::exact::Scalar;
use semisym::homogeneous::{
    fixtures, invariant_metrics, verify_pair, BracketEntry, MetricChoice, PairFile,
};

fn main() {
    // A pair whose isotropy acts by a null rotation: only the invariance
    // equations constrain the metric, giving a 4-parameter family.
    let pair = fixtures::null_rotation_pair();
    let family = invariant_metrics(&pair).unwrap();
    println!("null-rotation pair: metric family dimension {}", family.dim());
    println!("general member:\n{}", family.general);
    println!("nondegeneracy polynomial: det = {}", family.det);

    let report = verify_pair(&pair, MetricChoice::Family(None), &GenericityOpts::default())
        .expect("pipeline completes");
    println!(
        "flat: {}   semi-symmetric: {}   locally symmetric: {}",
        report.curvature.is_zero(),
        report.semi_symmetric,
        report.locally_symmetric
    );
    println!();

    // The same machinery drives JSON pair files; a sphere-times-line pair
    // built inline shows a curved example with isotropy.
    let mut out_e = BTreeMap::new();
    out_e.insert("u2".to_string(), "1".to_string());
    let mut out_e2 = BTreeMap::new();
    out_e2.insert("u1".to_string(), "-1".to_string());
    let mut out_u = BTreeMap::new();
    out_u.insert("e1".to_string(), "1".to_string());
    let file = PairFile {
        isotropy_dim: 1,
        dim: 3,
        basis: ["e1", "u1", "u2", "u3"].iter().map(|s| s.to_string()).collect(),
        brackets: vec![
            BracketEntry { a: "e1".into(), b: "u1".into(), out: out_e },
            BracketEntry { a: "e1".into(), b: "u2".into(), out: out_e2 },
            BracketEntry { a: "u1".into(), b: "u2".into(), out: out_u },
        ],
        params: vec![],
        constraints: vec![],
        metric: None,
    };
    let pair = file.to_pair().unwrap();
    let family = invariant_metrics(&pair).unwrap();
    println!(
        "rotation-isotropy pair: metric family dimension {}",
        family.dim()
    );
    // Pick the round member t1 = t2 = 1.
    let point = family
        .fresh_params
        .iter()
        .map(|p| (*p, Scalar::one()))
        .collect();
    let report = verify_pair(
        &pair,
        MetricChoice::Family(Some(point)),
        &GenericityOpts::default(),
    )
    .expect("pipeline completes");
    println!("curvature form:\n{}", report.curvature.form());
    println!(
        "ricci type: {:?}   semi-symmetric: {}   locally symmetric: {}",
        report.ricci_type, report.semi_symmetric, report.locally_symmetric
    );
}
