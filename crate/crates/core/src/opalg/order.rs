use core::cmp::Ordering;

use crate::monoid::{Exponent, PartitionSpec};

/// Admissible orders on the terms `λ·e_i` of a free module.
///
/// Every variant is total, multiplicative and has the zero exponent as its
/// least element on each component. Ties between exponents are broken
/// lexicographically (larger coordinates first), then the smaller component
/// index ranks higher.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    /// Total order `ord` first.
    Graded,
    /// Vector of block orders `(ord_1, .., ord_{p+q})`, compared lexicographically.
    BlockGraded(PartitionSpec),
    /// Order on a multi-homogenized algebra (exponents carry one extra
    /// coordinate per block). Total degree first; then the `saturate`-th
    /// homogenizing coordinate, smaller ranking higher; then the remaining
    /// homogenizing coordinates in the same way.
    Homogenized { part: PartitionSpec, saturate: usize },
}

impl TermOrder {
    pub fn cmp_terms(&self, a: (usize, &Exponent), b: (usize, &Exponent)) -> Ordering {
        let (ca, ea) = a;
        let (cb, eb) = b;
        let by_exp = match self {
            TermOrder::Graded => ea.ord().cmp(&eb.ord()).then_with(|| ea.0.cmp(&eb.0)),
            TermOrder::BlockGraded(part) => {
                ea.block_ords(part).cmp(&eb.block_ords(part)).then_with(|| ea.0.cmp(&eb.0))
            }
            TermOrder::Homogenized { part, saturate } => {
                let k = part.num_blocks();
                let base = ea.width() - k;
                let total = |e: &Exponent| e.0.iter().sum::<i64>();
                let mut ord = total(ea).cmp(&total(eb)).then_with(|| eb.0[base + saturate].cmp(&ea.0[base + saturate]));
                for h in (0..k).filter(|h| h != saturate) {
                    ord = ord.then_with(|| eb.0[base + h].cmp(&ea.0[base + h]));
                }
                ord.then_with(|| ea.0[..base].cmp(&eb.0[..base]))
            }
        };
        by_exp.then_with(|| cb.cmp(&ca))
    }

    pub fn cmp_exponents(&self, a: &Exponent, b: &Exponent) -> Ordering {
        self.cmp_terms((0, a), (0, b))
    }
}
