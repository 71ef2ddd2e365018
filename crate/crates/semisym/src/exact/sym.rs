//! Interned parameter symbols.
//!
//! Every free parameter (`a`, `b`, `lambda`, metric family coefficients
//! `t1`, `t2`, ...) is interned once and identified by a small integer.
//! Interning order doubles as the declaration order used by the monomial
//! ordering, so declaring parameters in a fixed order keeps every
//! downstream computation reproducible.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// An interned parameter name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(pub(crate) u32);

struct Interner {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

fn interner() -> &'static Mutex<Interner> {
    static INTERNER: OnceLock<Mutex<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| {
        Mutex::new(Interner {
            names: Vec::new(),
            ids: HashMap::new(),
        })
    })
}

impl Sym {
    /// Interns `name`, returning the existing symbol if it was seen before.
    pub fn new(name: &str) -> Sym {
        let mut it = interner().lock().unwrap();
        if let Some(&id) = it.ids.get(name) {
            return Sym(id);
        }
        let id = it.names.len() as u32;
        it.names.push(name.to_string());
        it.ids.insert(name.to_string(), id);
        Sym(id)
    }

    pub fn name(&self) -> String {
        interner().lock().unwrap().names[self.0 as usize].clone()
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let a = Sym::new("__sym_test_a");
        let b = Sym::new("__sym_test_b");
        assert_eq!(a, Sym::new("__sym_test_a"));
        assert_ne!(a, b);
        assert_eq!(a.name(), "__sym_test_a");
    }
}
