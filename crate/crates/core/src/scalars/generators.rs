//! Generator bookkeeping for the coefficient field.
//!
//! Exponent tuples everywhere in this crate are relative to a fixed ordered
//! list of generators. The order is part of the canonical monomial order, so
//! it must not change for the lifetime of a computation. A generator marked
//! `halved` is the formal square root of its display symbol: `sq` with
//! symbol `q` prints an even power `sq^{2k}` as `q^k` and an odd one as
//! `q^{k+1/2}`.

use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    /// Internal key, unique within a set (e.g. "sq").
    pub key: String,
    /// Display symbol (e.g. "q").
    pub symbol: String,
    /// Whether this generator is the square root of the display symbol.
    pub halved: bool,
}

impl Generator {
    pub fn halved(key: &str, symbol: &str) -> Self {
        Generator {
            key: key.to_string(),
            symbol: symbol.to_string(),
            halved: true,
        }
    }

    pub fn plain(name: &str) -> Self {
        Generator {
            key: name.to_string(),
            symbol: name.to_string(),
            halved: false,
        }
    }
}

/// An ordered list of generators, shared cheaply by reference count.
///
/// Two sets are interchangeable when their keys agree in order; the common
/// case is pointer equality on the shared allocation.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    inner: Arc<Vec<Generator>>,
}

impl GeneratorSet {
    /// The three core generators `sq`, `st`, `sT` (square roots of q, t, T).
    pub fn core() -> Self {
        GeneratorSet::new(vec![
            Generator::halved("sq", "q"),
            Generator::halved("st", "t"),
            Generator::halved("sT", "T"),
        ])
    }

    /// Core generators followed by plain auxiliary symbols.
    pub fn core_with(aux: &[&str]) -> Self {
        let mut gens = vec![
            Generator::halved("sq", "q"),
            Generator::halved("st", "t"),
            Generator::halved("sT", "T"),
        ];
        for name in aux {
            gens.push(Generator::plain(name));
        }
        GeneratorSet::new(gens)
    }

    /// A set containing only `sq` plus plain auxiliaries, for q-series work
    /// that does not involve t or T.
    pub fn q_with(aux: &[&str]) -> Self {
        let mut gens = vec![Generator::halved("sq", "q")];
        for name in aux {
            gens.push(Generator::plain(name));
        }
        GeneratorSet::new(gens)
    }

    /// The empty set: scalars over it are plain rational numbers.
    pub fn empty() -> Self {
        GeneratorSet::new(Vec::new())
    }

    pub fn new(gens: Vec<Generator>) -> Self {
        let mut seen: Vec<&str> = Vec::new();
        for g in &gens {
            assert!(
                !seen.contains(&g.key.as_str()),
                "duplicate generator key {}",
                g.key
            );
            seen.push(&g.key);
        }
        GeneratorSet {
            inner: Arc::new(gens),
        }
    }

    /// A new set extending this one with additional generators.
    pub fn extended(&self, extra: &[Generator]) -> Self {
        let mut gens = (*self.inner).clone();
        gens.extend_from_slice(extra);
        GeneratorSet::new(gens)
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.inner[i]
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.inner.iter().position(|g| g.key == key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.inner.iter().map(|g| g.key.as_str())
    }

    /// Interchangeability check: pointer equality, falling back to key
    /// comparison. Panicking on mismatch is left to the callers.
    pub fn same_as(&self, other: &GeneratorSet) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.len() == other.inner.len()
                && self
                    .inner
                    .iter()
                    .zip(other.inner.iter())
                    .all(|(a, b)| a.key == b.key))
    }
}

impl PartialEq for GeneratorSet {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for GeneratorSet {}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, g) in self.inner.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g.key)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_set_order() {
        let g = GeneratorSet::core();
        assert_eq!(g.len(), 3);
        assert_eq!(g.index_of("sq"), Some(0));
        assert_eq!(g.index_of("st"), Some(1));
        assert_eq!(g.index_of("sT"), Some(2));
        assert_eq!(g.index_of("a"), None);
    }

    #[test]
    fn extension_preserves_prefix() {
        let g = GeneratorSet::core_with(&["a"]);
        assert_eq!(g.len(), 4);
        assert_eq!(g.index_of("a"), Some(3));
        assert!(!g.get(3).halved);
        assert!(g.same_as(&GeneratorSet::core().extended(&[Generator::plain("a")])));
    }

    #[test]
    #[should_panic(expected = "duplicate generator key")]
    fn duplicate_keys_rejected() {
        GeneratorSet::core_with(&["a", "a"]);
    }
}
