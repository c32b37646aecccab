//! Sparse exact row echelon forms.

use alloc::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ratfun::RatFun;

/// Exact field arithmetic needed by elimination.
pub trait Scalar: Clone {
    fn is_zero(&self) -> bool;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_one(&self) -> bool;
    fn neg(&self) -> Self;
}

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for RatFun {
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFun::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFun::mul(self, o)
    }
    fn inv(&self) -> Self {
        RatFun::inv(self)
    }
    fn is_one(&self) -> bool {
        RatFun::is_one(self)
    }
    fn neg(&self) -> Self {
        RatFun::neg(self)
    }
}

/// A sparse row: column key to nonzero entry.
pub type Row<K, S> = BTreeMap<K, S>;

/// Rows in echelon form, keyed by their largest column, each with pivot 1.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone, S: Scalar> {
    pivots: BTreeMap<K, Row<K, S>>,
}

impl<K: Ord + Clone, S: Scalar> Default for Echelon<K, S> {
    fn default() -> Self {
        Echelon { pivots: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, S: Scalar> Echelon<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Pivot columns in ascending order.
    pub fn pivot_columns(&self) -> impl Iterator<Item = &K> {
        self.pivots.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Row<K, S>> {
        self.pivots.values()
    }

    /// Eliminates leading entries against existing pivots; returns what is left.
    pub fn reduce(&self, mut row: Row<K, S>) -> Row<K, S> {
        while let Some((k, c)) = row.iter().next_back() {
            let Some(p) = self.pivots.get(k) else {
                return row;
            };
            let c = c.clone();
            for (pk, pv) in p {
                let delta = c.mul(pv);
                match row.get_mut(pk) {
                    Some(v) => {
                        *v = v.sub(&delta);
                        if v.is_zero() {
                            row.remove(pk);
                        }
                    }
                    None => {
                        row.insert(pk.clone(), delta.neg());
                    }
                }
            }
        }
        row
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: Row<K, S>) -> bool {
        let mut row = self.reduce(row);
        let Some((k, c)) = row.iter().next_back() else {
            return false;
        };
        let k = k.clone();
        if !c.is_one() {
            let inv = c.inv();
            for v in row.values_mut() {
                *v = v.mul(&inv);
            }
        }
        self.pivots.insert(k, row);
        true
    }

    /// Whether `row` lies in the span.
    pub fn contains(&self, row: Row<K, S>) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Rank of a family of rows.
pub fn rank<K: Ord + Clone, S: Scalar, I: IntoIterator<Item = Row<K, S>>>(rows: I) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}
