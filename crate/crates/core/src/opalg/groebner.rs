//! Left Gröbner bases of submodules of `D^s`.
//!
//! Termination: each element added to the basis during Buchberger's loop is
//! a nonzero normal form, so its lead term `(i, λ)` is not divisible by the
//! lead of any earlier element in component `i`. The sequence of lead
//! monomial submodules of `ℕ^w × {1..s}` therefore strictly increases, and
//! by Dickson's lemma such a chain is finite. Reduction itself terminates
//! because every step replaces the current lead by smaller terms and the
//! order is a well-order on nonnegative exponents.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Algebra, ModuleElement, TermOrder};
use crate::poly::{gcd, MPoly};
use crate::ratfun::RatFun;
use crate::error::Result;
use crate::monoid::{Exponent, Signature};
use crate::staircase::LeadSet;

struct Entry {
    comp: usize,
    lead: Exponent,
    elem: ModuleElement,
}

impl Algebra {
    /// Fully reduces `v` modulo `g` (left reduction, every term).
    pub fn normal_form(&self, v: &ModuleElement, g: &[ModuleElement], ord: &TermOrder) -> ModuleElement {
        let entries: Vec<Entry> = g.iter().filter_map(|e| entry(e, ord)).collect();
        self.reduce(v, &entries, ord, None, true)
    }

    /// Reduces the lead while possible; with `full`, continues through the tail.
    fn reduce(&self, v: &ModuleElement, g: &[Entry], ord: &TermOrder, skip: Option<usize>, full: bool) -> ModuleElement {
        let mut rem = v.clone();
        let mut out = ModuleElement::zero(v.rank());
        while let Some((c, e, coef)) = rem.lead(ord) {
            let (e, coef) = (e.clone(), coef.clone());
            let hit = g
                .iter()
                .enumerate()
                .find(|(k, h)| Some(*k) != skip && h.comp == c && h.lead.divides_unchecked(&e));
            match hit {
                Some((_, h)) => {
                    let p = self.mul_monomial(&e.div(&h.lead), &h.elem);
                    let q = coef.div(p.coeff(c, &e).expect("lead preserved by left multiplication"));
                    rem.sub_scaled(&q, &p);
                }
                None if !full => break,
                None => {
                    rem.terms.remove(&(c, e.clone()));
                    out.terms.insert((c, e), coef);
                }
            }
        }
        out.terms.extend(rem.terms);
        out.rank = out.rank.max(v.rank());
        out
    }

    /// The reduced left Gröbner basis of the submodule generated by `gens`,
    /// monic and sorted by descending lead.
    pub fn groebner(&self, gens: &[ModuleElement], ord: &TermOrder) -> Vec<ModuleElement> {
        let mut basis: Vec<Entry> = Vec::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let push = |basis: &mut Vec<Entry>, pairs: &mut Vec<(usize, usize)>, e: Entry| {
            let k = basis.len();
            // Gebauer-Möller: the new lead makes (i, j) redundant when it
            // divides their lcm and differs from both of the new lcms.
            pairs.retain(|&(i, j)| {
                if basis[i].comp != e.comp {
                    return true;
                }
                let l = pair_lcm(basis, (i, j));
                !(e.lead.divides_unchecked(&l) && basis[i].lead.join(&e.lead) != l && basis[j].lead.join(&e.lead) != l)
            });
            pairs.extend((0..k).filter(|&i| basis[i].comp == e.comp).map(|i| (i, k)));
            basis.push(e);
        };
        for g in gens {
            let r = self.reduce_top(g, &basis, ord);
            if let Some(e) = entry(&r, ord) {
                push(&mut basis, &mut pairs, e);
            }
        }
        while !pairs.is_empty() {
            let pick = (0..pairs.len())
                .min_by(|&a, &b| {
                    let la = pair_lcm(&basis, pairs[a]);
                    let lb = pair_lcm(&basis, pairs[b]);
                    ord.cmp_terms((basis[pairs[a].0].comp, &la), (basis[pairs[b].0].comp, &lb))
                        .then(pairs[a].cmp(&pairs[b]))
                })
                .unwrap();
            let (i, j) = pairs.remove(pick);
            if chain_skip(&basis, &pairs, i, j) {
                continue;
            }
            let s = self.spoly(&basis[i], &basis[j]);
            let r = self.reduce_top(&s, &basis, ord);
            if let Some(e) = entry(&r, ord) {
                push(&mut basis, &mut pairs, e);
            }
        }
        self.interreduce(basis, ord)
    }

    fn spoly(&self, a: &Entry, b: &Entry) -> ModuleElement {
        let l = a.lead.join(&b.lead);
        let pa = self.mul_monomial(&l.div(&a.lead), &a.elem);
        let pb = self.mul_monomial(&l.div(&b.lead), &b.elem);
        let ca = pa.coeff(a.comp, &l).expect("lead preserved").clone();
        let cb = pb.coeff(b.comp, &l).expect("lead preserved").clone();
        pa.scale(&cb).sub(&pb.scale(&ca))
    }

    /// Top reduction inside Buchberger's loop. Over rational functions it is
    /// fraction-free: `rem <- q·rem - c·p` keeps polynomial coefficients and
    /// the content is stripped after every step.
    fn reduce_top(&self, v: &ModuleElement, g: &[Entry], ord: &TermOrder) -> ModuleElement {
        if self.field.nvars() == 0 {
            return self.reduce(v, g, ord, None, false).monic(ord);
        }
        let mut rem = primitive(v);
        while let Some((c, e, coef)) = rem.lead(ord) {
            let Some(h) = g.iter().find(|h| h.comp == c && h.lead.divides_unchecked(e)) else {
                break;
            };
            let (e, coef) = (e.clone(), coef.clone());
            let p = self.mul_monomial(&e.div(&h.lead), &h.elem);
            let q = p.coeff(c, &e).expect("lead preserved by left multiplication").clone();
            rem = rem.scale(&q);
            rem.sub_scaled(&coef, &p);
            rem = primitive(&rem);
        }
        rem
    }

    fn interreduce(&self, basis: Vec<Entry>, ord: &TermOrder) -> Vec<ModuleElement> {
        let minimal: Vec<Entry> = basis
            .iter()
            .enumerate()
            .filter(|(i, a)| {
                !basis.iter().enumerate().any(|(j, b)| {
                    j != *i && a.comp == b.comp && b.lead.divides_unchecked(&a.lead) && (b.lead != a.lead || j < *i)
                })
            })
            .map(|(_, a)| Entry { comp: a.comp, lead: a.lead.clone(), elem: a.elem.clone() })
            .collect();
        let mut out: Vec<ModuleElement> = (0..minimal.len())
            .map(|k| self.reduce(&minimal[k].elem, &minimal, ord, Some(k), true).monic(ord))
            .collect();
        out.sort_by(|a, b| {
            let (ca, ea, _) = a.lead(ord).unwrap();
            let (cb, eb, _) = b.lead(ord).unwrap();
            ord.cmp_terms((cb, eb), (ca, ea))
        });
        out
    }

    /// Lead exponents of `g` per component, over the ordinary signature.
    pub fn lead_set(&self, rank: usize, g: &[ModuleElement], ord: &TermOrder) -> Result<LeadSet> {
        let mut comps: Vec<Vec<Exponent>> = (0..rank).map(|_| Vec::new()).collect();
        for (c, e, _) in g.iter().filter_map(|v| v.lead(ord)) {
            if c >= rank {
                return Err(crate::Error::ComponentOutOfRange { index: c, rank });
            }
            comps[c].push(e.clone());
        }
        LeadSet::new(Signature::new(self.sig.m, self.sig.n, false)?, comps)
    }

    /// Whether `v` lies in the submodule with Gröbner basis `gb`.
    pub fn contains(&self, gb: &[ModuleElement], v: &ModuleElement, ord: &TermOrder) -> bool {
        self.normal_form(v, gb, ord).is_zero()
    }
}

/// `v` times a scalar so its coefficients are polynomials with no common
/// factor and coprime integer coefficients.
fn primitive(v: &ModuleElement) -> ModuleElement {
    let Some(first) = v.terms.values().next() else {
        return v.clone();
    };
    let n = first.nvars();
    let mut den = MPoly::one(n);
    for c in v.terms.values() {
        let d = c.denom();
        if !d.is_constant() {
            let g = gcd(&den, d);
            den = den.mul(&d.div_exact(&g).expect("gcd divides"));
        }
    }
    let nums: Vec<MPoly> =
        v.terms.values().map(|c| c.numer().mul(&den.div_exact(c.denom()).expect("denominator divides lcm"))).collect();
    let mut g = MPoly::zero(n);
    for p in &nums {
        g = gcd(&g, p);
        if g.is_constant() {
            break;
        }
    }
    let (mut int_den, mut int_num) = (BigInt::one(), BigInt::zero());
    let nums: Vec<MPoly> = nums
        .into_iter()
        .map(|p| {
            let p = if g.is_zero() || g.is_constant() { p } else { p.div_exact(&g).expect("content divides") };
            for (_, c) in p.terms() {
                int_den = int_den.lcm(c.denom());
                int_num = int_num.gcd(c.numer());
            }
            p
        })
        .collect();
    let s = BigRational::new(int_den, int_num);
    ModuleElement {
        rank: v.rank,
        terms: v.terms.keys().cloned().zip(nums).map(|(k, p)| (k, RatFun::from_poly(p.scale(&s)))).collect(),
    }
}

fn entry(v: &ModuleElement, ord: &TermOrder) -> Option<Entry> {
    v.lead(ord).map(|(comp, lead, _)| Entry { comp, lead: lead.clone(), elem: v.clone() })
}

/// Buchberger's chain criterion: `(i, j)` is redundant when some other `k`
/// in the same component has a lead dividing their lcm and both `(i, k)` and
/// `(j, k)` are already treated. Lead terms multiply additively under left
/// multiplication, so the commutative argument carries over.
fn chain_skip(basis: &[Entry], pending: &[(usize, usize)], i: usize, j: usize) -> bool {
    let l = pair_lcm(basis, (i, j));
    let open = |a: usize, b: usize| pending.contains(&(a.min(b), a.max(b)));
    (0..basis.len()).any(|k| {
        k != i && k != j && basis[k].comp == basis[i].comp && basis[k].lead.divides_unchecked(&l) && !open(i, k) && !open(j, k)
    })
}

fn pair_lcm(basis: &[Entry], (i, j): (usize, usize)) -> Exponent {
    basis[i].lead.join(&basis[j].lead)
}
