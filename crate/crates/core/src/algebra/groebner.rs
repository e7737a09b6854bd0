//! Buchberger completion for global orders and Mora's tangent-cone variant
//! for the local order, sharing pair management.

use std::cmp::Ordering;

use super::budget::Budget;
use super::engine::{mora_normal_form, reduce_full, SortedPoly};
use super::error::{AlgebraError, Result};
use super::order::MonomialOrder;
use super::ring::Monomial;

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Completion<'a> {
    ord: &'a MonomialOrder,
    polys: Vec<SortedPoly>,
    sugar: Vec<u32>,
    /// Indices of the elements currently forming the basis.
    active: Vec<usize>,
    pairs: Vec<Pair>,
    product_criterion: bool,
    /// Least `D` with `m^D` inside the leading ideal (local orders only).
    corner: Option<u32>,
}

/// Enumeration cap for the highest-corner test.
const CORNER_MONOMIAL_LIMIT: usize = 20_000;

/// Least `D` such that every monomial of degree `D` is divisible by one of
/// `leads`, provided the leads contain a pure power of every variable.
fn highest_corner(leads: &[&Monomial], n: usize) -> Option<u32> {
    let mut bound = 1u32;
    for i in 0..n {
        let a = leads
            .iter()
            .filter(|m| m.degree() > 0 && m.degree() == m.exponent(i))
            .map(|m| m.exponent(i))
            .min()?;
        bound += a - 1;
    }
    let min_deg = leads.iter().map(|m| m.degree()).min()?;
    (min_deg.max(1)..=bound).find(|&d| every_monomial_divisible(leads, n, d).unwrap_or(false))
}

/// `None` when there are too many monomials to check.
fn every_monomial_divisible(leads: &[&Monomial], n: usize, d: u32) -> Option<bool> {
    let mut count = 0usize;
    let mut exps = vec![0u32; n];
    fn rec(var: usize, left: u32, exps: &mut Vec<u32>, leads: &[&Monomial], count: &mut usize) -> Option<bool> {
        if var + 1 == exps.len() {
            exps[var] = left;
            *count += 1;
            if *count > CORNER_MONOMIAL_LIMIT {
                return None;
            }
            let m = Monomial::from_exponents(exps);
            return Some(leads.iter().any(|l| l.divides(&m)));
        }
        for e in 0..=left {
            exps[var] = e;
            if !rec(var + 1, left - e, exps, leads, count)? {
                return Some(false);
            }
        }
        Some(true)
    }
    if n == 0 {
        return Some(true);
    }
    rec(0, d, &mut exps, leads, &mut count)
}

impl<'a> Completion<'a> {
    fn pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (&self.polys[i], &self.polys[j]);
        let lcm = a.lm().lcm(b.lm());
        let d = lcm.degree();
        let si = self.sugar[i] + d - a.lm().degree();
        let sj = self.sugar[j] + d - b.lm().degree();
        Pair { i, j, lcm, sugar: si.max(sj) }
    }

    /// Gebauer-Moeller installation of a new element `h`.
    fn update(&mut self, h: usize) {
        let hm = self.polys[h].lm().clone();
        let candidates: Vec<Pair> = self.active.iter().map(|&g| self.pair(h, g)).collect();

        // Drop (h, g1) when some other (h, g2) has an lcm properly dividing it.
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in candidates.iter().enumerate() {
            let coprime = self.polys[p.j].lm().coprime(&hm);
            let dominated = candidates.iter().enumerate().any(|(l, q)| {
                l != k && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || l < k)
            });
            if (self.product_criterion && coprime) || !dominated {
                kept.push(Pair { i: p.i, j: p.j, lcm: p.lcm.clone(), sugar: p.sugar });
            }
        }
        if self.product_criterion {
            kept.retain(|p| !self.polys[p.j].lm().coprime(&hm));
        }

        // Old pairs whose lcm is divisible by lm(h) strictly.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !hm.divides(&p.lcm) {
                return true;
            }
            let l1 = polys[p.i].lm().lcm(&hm);
            let l2 = polys[p.j].lm().lcm(&hm);
            l1 == p.lcm || l2 == p.lcm
        });
        self.pairs.extend(kept);

        self.active.retain(|&g| !hm.divides(polys[g].lm()));
        self.active.push(h);
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = match a.sugar.cmp(&b.sugar) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => {
                    if ord.is_local() {
                        a.lcm.degree() < b.lcm.degree()
                            || (a.lcm.degree() == b.lcm.degree() && ord.cmp(&a.lcm, &b.lcm) == Ordering::Greater)
                    } else {
                        ord.cmp(&a.lcm, &b.lcm) == Ordering::Less
                    }
                }
            };
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn reduce(&self, f: &SortedPoly) -> SortedPoly {
        if self.ord.is_local() {
            let basis: Vec<SortedPoly> = self.active.iter().map(|&k| self.polys[k].clone()).collect();
            mora_normal_form(f, &basis, self.ord, self.corner)
        } else {
            let basis: Vec<&SortedPoly> = self.active.iter().map(|&k| &self.polys[k]).collect();
            reduce_full(f, &basis, self.ord)
        }
    }

    fn insert(&mut self, mut h: SortedPoly, sugar: u32) -> Result<()> {
        h.make_monic();
        self.polys.push(h);
        self.sugar.push(sugar);
        let idx = self.polys.len() - 1;
        self.update(idx);
        if self.ord.is_local() {
            let n = self.polys[idx].lm().exponents().len();
            let leads: Vec<&Monomial> = self.active.iter().map(|&k| self.polys[k].lm()).collect();
            if let Some(d) = highest_corner(&leads, n) {
                self.corner = Some(self.corner.map_or(d, |c| c.min(d)));
            }
        }
        let limit = Budget::current().max_basis_elements;
        if self.polys.len() > limit {
            return Err(AlgebraError::BudgetExceeded(format!(
                "standard basis grew beyond {limit} elements"
            )));
        }
        Ok(())
    }
}

/// Completes `gens` to a standard basis. For global orders the result is the
/// reduced Groebner basis; for the local order it is a minimal standard basis
/// with monic leading terms. Elements are sorted ascending by leading monomial.
pub(crate) fn complete(gens: Vec<SortedPoly>, ord: &MonomialOrder) -> Result<Vec<SortedPoly>> {
    let mut c = Completion {
        ord,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        product_criterion: ord.is_global(),
        corner: None,
    };
    let mut gens: Vec<SortedPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    gens.sort_by(|a, b| ord.cmp(a.lm(), b.lm()).then(a.terms.len().cmp(&b.terms.len())));
    for g in gens {
        let h = c.reduce(&g);
        if !h.is_zero() {
            let s = h.max_degree;
            c.insert(h, s)?;
            if c.polys.last().unwrap().lm().is_one() {
                return Ok(vec![c.polys.pop().unwrap()]);
            }
        }
    }
    while let Some(p) = c.select() {
        let s = SortedPoly::spoly(&c.polys[p.i], &c.polys[p.j], ord);
        let h = c.reduce(&s);
        if !h.is_zero() {
            let unit = h.lm().is_one();
            c.insert(h, p.sugar)?;
            if unit {
                let mut one = c.polys.pop().unwrap();
                one.make_monic();
                return Ok(vec![one]);
            }
        }
    }
    let mut basis: Vec<SortedPoly> = c.active.iter().map(|&k| c.polys[k].clone()).collect();
    minimize(&mut basis);
    if ord.is_global() {
        interreduce(&mut basis, ord);
    }
    basis.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    Ok(basis)
}

fn minimize(basis: &mut Vec<SortedPoly>) {
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            if basis[j].lm().divides(basis[i].lm()) && (basis[j].lm() != basis[i].lm() || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut k = 0;
    basis.retain(|_| {
        k += 1;
        keep[k - 1]
    });
    for b in basis.iter_mut() {
        b.make_monic();
    }
}

fn interreduce(basis: &mut [SortedPoly], ord: &MonomialOrder) {
    for i in 0..basis.len() {
        let others: Vec<&SortedPoly> =
            basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g).collect();
        let head = SortedPoly { terms: vec![basis[i].terms[0].clone()], max_degree: 0 };
        let tail = SortedPoly {
            terms: basis[i].terms[1..].to_vec(),
            max_degree: basis[i].max_degree,
        };
        let reduced_tail = reduce_full(&tail, &others, ord);
        let mut terms = head.terms;
        terms.extend(reduced_tail.terms);
        let max_degree = terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        basis[i] = SortedPoly { terms, max_degree };
    }
}
