//! Runs every model tensor of the classification through the full
//! algebraic battery: Bianchi, semi-symmetry, holonomy dimension, Ricci
//! type and the orthogonal spectral decomposition.

use semisym::curvature::{
    is_semi_symmetric, ricci_decomposition, ricci_with, GenericityOpts,
};
use semisym::exact::DEFAULT_SEED;
use semisym::tables;

fn main() {
    for fx in tables::classification_fixtures() {
        let opts = GenericityOpts {
            constraints: fx.constraints.clone(),
            seed: DEFAULT_SEED,
        };
        let semi = is_semi_symmetric(&fx.k);
        let data = ricci_with(&fx.k, &opts).unwrap();
        println!(
            "{:26} holonomy {}  semi-symmetric {}  ricci {}",
            fx.name,
            fx.k.holonomy_dim(),
            semi.holds,
            data.type_tag
        );
        match ricci_decomposition(&fx.k, &opts) {
            Ok(dec) => {
                let blocks: Vec<String> = dec
                    .blocks
                    .iter()
                    .map(|b| format!("{:?}(dim {})", b.label, b.basis.len()))
                    .collect();
                println!("{:26}   splits as {}", "", blocks.join(" + "));
            }
            Err(e) => println!("{:26}   decomposition: {}", "", e),
        }
    }
}
