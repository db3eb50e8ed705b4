//! Multi-index bookkeeping for dense truncated-Taylor storage.
//!
//! A jet in `n` variables at order `m` stores one coefficient per monomial
//! exponent vector `α` with `|α| ≤ m`. The table fixes a graded
//! lexicographic enumeration of those exponents and provides O(1) lookup.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Enumeration of all exponent vectors `α` with `|α| ≤ order` in `n_vars`
/// variables, with position lookup and cached factorials.
#[derive(Debug)]
pub struct IndexTable {
    pub n_vars: usize,
    pub order: usize,
    /// Exponent vectors in graded lexicographic order; entry 0 is all-zero.
    pub exponents: Vec<Vec<u8>>,
    pos: HashMap<Vec<u8>, usize>,
}

impl IndexTable {
    fn build(n_vars: usize, order: usize) -> Self {
        let mut exponents = Vec::new();
        for total in 0..=order {
            let mut cur = vec![0u8; n_vars];
            gen_degree(&mut exponents, &mut cur, 0, total as u8);
        }
        let pos = exponents
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        IndexTable {
            n_vars,
            order,
            exponents,
            pos,
        }
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    /// Position of an exponent vector, if within the truncation.
    pub fn position(&self, exps: &[u8]) -> Option<usize> {
        self.pos.get(exps).copied()
    }

    /// `α! = Π α_i!` for the exponent vector at `idx`.
    pub fn factorial(&self, idx: usize) -> f64 {
        self.exponents[idx]
            .iter()
            .map(|&e| FACT[e as usize])
            .product()
    }

    /// Total degree `|α|` of the exponent vector at `idx`.
    pub fn degree(&self, idx: usize) -> usize {
        self.exponents[idx].iter().map(|&e| e as usize).sum()
    }
}

const FACT: [f64; 7] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0];

fn gen_degree(out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, var: usize, remaining: u8) {
    if var + 1 == cur.len() {
        cur[var] = remaining;
        out.push(cur.clone());
        cur[var] = 0;
        return;
    }
    if cur.is_empty() {
        if remaining == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in (0..=remaining).rev() {
        cur[var] = e;
        gen_degree(out, cur, var + 1, remaining - e);
        cur[var] = 0;
    }
}

/// Shared table for `(n_vars, order)`; tables are built once and cached for
/// the life of the process.
pub fn table(n_vars: usize, order: usize) -> Arc<IndexTable> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<IndexTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("index table cache poisoned");
    guard
        .entry((n_vars, order))
        .or_insert_with(|| Arc::new(IndexTable::build(n_vars, order)))
        .clone()
}
