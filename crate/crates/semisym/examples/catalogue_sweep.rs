//! Re-derives the curvature-tensor space R(g) and the symmetric space
//! g_sym for every catalogue subalgebra of so(2,2) and compares them with
//! the table claims, case by case.

use semisym::catalogue::{komrakov_catalogue, verify_entry};
use semisym::exact::DEFAULT_SEED;

fn main() {
    let mut all_ok = true;
    for entry in komrakov_catalogue() {
        match verify_entry(&entry, DEFAULT_SEED) {
            Ok(results) => {
                for r in results {
                    let status = if r.matched { "ok " } else { "FAIL" };
                    println!(
                        "{} {:6} [{}] dim R(g) = {} (claimed {:?}), dim g_sym = {} (claimed {:?})",
                        status,
                        r.entry,
                        r.case,
                        r.computed_dim_r,
                        r.claimed_dim_r,
                        r.computed_dim_sym,
                        r.claimed_dim_sym,
                    );
                    for n in &r.notes {
                        println!("        note: {}", n);
                    }
                    all_ok &= r.matched;
                }
            }
            Err(e) => {
                println!("FAIL {:6} error: {}", entry.name, e);
                all_ok = false;
            }
        }
    }
    println!("{}", if all_ok { "all entries verified" } else { "MISMATCHES FOUND" });
    std::process::exit(if all_ok { 0 } else { 1 });
}
