use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Monomial order over a fixed variable priority list (index 0 is the largest
/// variable).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Elimination order: graded reverse lexicographic on the first `split`
    /// variables, ties broken by graded reverse lexicographic on the rest.
    Block { split: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Block { split } => {
                let split = split.min(a.len());
                grevlex(&a[..split], &b[..split]).then_with(|| grevlex(&a[split..], &b[split..]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::GrevLex => "grevlex".to_string(),
            MonomialOrder::Block { split } => format!("block({split})"),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b.iter()).map(|(x, y)| *x.max(y)).collect()
}

pub fn quotient(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

pub fn product(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

pub fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

pub fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| *x == 0 || *y == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x*z < y^2 in grevlex (x > y > z)
        assert_eq!(MonomialOrder::GrevLex.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Greater);
        assert_eq!(MonomialOrder::GrevLex.cmp(&[0, 0, 3], &[1, 0, 0]), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let ord = MonomialOrder::Block { split: 1 };
        assert_eq!(ord.cmp(&[1, 0], &[0, 9]), Ordering::Greater);
        assert_eq!(ord.cmp(&[1, 2], &[1, 1]), Ordering::Greater);
    }
}
