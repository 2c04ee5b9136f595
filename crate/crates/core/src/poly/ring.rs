use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::Monomial;

/// Monomial order made of consecutive blocks of variables.
///
/// Blocks are compared left to right; inside a block the order is graded
/// reverse lexicographic. A single block is plain grevlex, singleton blocks
/// give lex, and `[1, n]` eliminates the first variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrder {
    blocks: Vec<usize>,
}

impl TermOrder {
    pub fn grevlex(nvars: usize) -> Self {
        TermOrder {
            blocks: vec![nvars],
        }
    }

    pub fn lex(nvars: usize) -> Self {
        TermOrder {
            blocks: vec![1; nvars],
        }
    }

    /// Block order; zero-sized blocks are dropped.
    pub fn blocks(sizes: &[usize]) -> Self {
        TermOrder {
            blocks: sizes.iter().copied().filter(|&s| s > 0).collect(),
        }
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.blocks
    }

    pub fn nvars(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn is_grevlex(&self) -> bool {
        self.blocks.len() <= 1
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        let mut start = 0;
        for &len in &self.blocks {
            let end = start + len;
            let da: u64 = a[start..end].iter().map(|&e| e as u64).sum();
            let db: u64 = b[start..end].iter().map(|&e| e as u64).sum();
            match da.cmp(&db) {
                Ordering::Equal => {}
                o => return o,
            }
            for k in (start..end).rev() {
                match a[k].cmp(&b[k]) {
                    Ordering::Equal => {}
                    o => return o.reverse(),
                }
            }
            start = end;
        }
        Ordering::Equal
    }
}

/// A polynomial ring over some field: variable names and a term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    order: TermOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(names: Vec<String>, order: TermOrder) -> RingRef {
        assert_eq!(
            names.len(),
            order.nvars(),
            "term order covers {} variables, ring has {}",
            order.nvars(),
            names.len()
        );
        Arc::new(Ring { names, order })
    }

    pub fn grevlex<S: AsRef<str>>(names: &[S]) -> RingRef {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let order = TermOrder::grevlex(names.len());
        Ring::new(names, order)
    }

    /// `x1..xn` (or `prefix1..prefixn`) with grevlex.
    pub fn indexed(prefix: &str, n: usize) -> RingRef {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Ring::grevlex(&names)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: TermOrder) -> RingRef {
        Ring::new(self.names.clone(), order)
    }

    /// Prepend fresh variables as a leading block (elimination order).
    pub fn with_leading_block(&self, new_names: &[&str]) -> RingRef {
        let mut names: Vec<String> = new_names.iter().map(|s| s.to_string()).collect();
        names.extend(self.names.iter().cloned());
        let mut blocks = vec![new_names.len()];
        blocks.extend_from_slice(self.order.block_sizes());
        Ring::new(names, TermOrder::blocks(&blocks))
    }

    /// Append variables as a trailing block.
    pub fn with_trailing_block(&self, new_names: &[String]) -> RingRef {
        let mut names = self.names.clone();
        names.extend(new_names.iter().cloned());
        let mut blocks = self.order.block_sizes().to_vec();
        blocks.push(new_names.len());
        Ring::new(names, TermOrder::blocks(&blocks))
    }

    pub fn same(a: &RingRef, b: &RingRef) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_basics() {
        let o = TermOrder::grevlex(3);
        // x > y > z
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
        // x y^... grevlex: x*z < y^2
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.compare(&m(&[0, 0, 3]), &m(&[1, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = TermOrder::blocks(&[1, 2]);
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn lex_is_singleton_blocks() {
        let o = TermOrder::lex(2);
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
    }
}
