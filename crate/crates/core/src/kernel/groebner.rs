//! Reduced Gröbner bases by Buchberger's algorithm.
//!
//! Pairs are filtered with the Gebauer–Möller installation of Buchberger's
//! product and chain criteria and processed lowest sugar degree first, which
//! for homogeneous input is the normal strategy (lowest lcm degree).

use super::field::Field;
use super::monomial::Monomial;
use super::poly::{PolyRing, Polynomial};
use super::KernelError;

/// A reduced Gröbner basis: monic, auto-reduced, sorted by decreasing
/// leading monomial. The zero ideal has the empty basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<K: Field> {
    ring: PolyRing<K>,
    basis: Vec<Polynomial<K::Elem>>,
}

impl<K: Field> GroebnerBasis<K> {
    pub fn ring(&self) -> &PolyRing<K> {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial<K::Elem>] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn into_basis(self) -> Vec<Polynomial<K::Elem>> {
        self.basis
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial().expect("basis elements are nonzero"))
            .collect()
    }

    /// Whether the basis generates the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    /// The unique remainder of `f` modulo the basis.
    pub fn normal_form(
        &self,
        f: &Polynomial<K::Elem>,
    ) -> Result<Polynomial<K::Elem>, KernelError> {
        self.ring.check(f)?;
        let reducers: Vec<_> = self.basis.iter().map(Reducer::new).collect();
        Ok(reduce(&self.ring, f, &reducers))
    }

    pub fn contains(&self, f: &Polynomial<K::Elem>) -> Result<bool, KernelError> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// A monic reducer with a support mask for quick divisibility rejection.
struct Reducer<'a, E> {
    poly: &'a Polynomial<E>,
    lm: Monomial,
    mask: u32,
}

impl<'a, E> Reducer<'a, E> {
    fn new(poly: &'a Polynomial<E>) -> Self {
        let lm = poly.leading_monomial().expect("nonzero reducer");
        Self {
            poly,
            lm,
            mask: support_mask(&lm),
        }
    }
}

#[inline]
fn support_mask(m: &Monomial) -> u32 {
    let mut mask = 0;
    for i in 0..super::monomial::MAX_VARS {
        if m.exponent(i) > 0 {
            mask |= 1 << i;
        }
    }
    mask
}

/// Full reduction of `f` by monic reducers.
fn reduce<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
    reducers: &[Reducer<'_, K::Elem>],
) -> Polynomial<K::Elem> {
    let mut work: Vec<(Monomial, K::Elem)> = f.terms().to_vec();
    let mut start = 0;
    let mut rem = Vec::new();
    while start < work.len() {
        let (m, c) = &work[start];
        let mmask = support_mask(m);
        let hit = reducers
            .iter()
            .find(|r| r.mask & !mmask == 0 && r.lm.divides(m));
        match hit {
            Some(r) => {
                let q = r.lm.divide_into(m).unwrap();
                let c = c.clone();
                work = ring.sub_mul_term(&work[start..], &q, &c, r.poly);
                start = 0;
            }
            None => {
                rem.push(work[start].clone());
                start += 1;
            }
        }
    }
    ring.from_sorted_terms(rem)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Builder<'r, K: Field> {
    ring: &'r PolyRing<K>,
    polys: Vec<Polynomial<K::Elem>>,
    lms: Vec<Monomial>,
    sugars: Vec<u32>,
    /// Indices of the current (minimal) basis.
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'r, K: Field> Builder<'r, K> {
    fn pair(&self, i: usize, j: usize) -> Pair {
        let lcm = self.lms[i].lcm(&self.lms[j]);
        let si = self.sugars[i] + lcm.degree() - self.lms[i].degree();
        let sj = self.sugars[j] + lcm.degree() - self.lms[j].degree();
        Pair {
            i,
            j,
            lcm,
            sugar: si.max(sj),
        }
    }

    /// Gebauer–Möller update after adding polynomial `h`.
    fn insert(&mut self, poly: Polynomial<K::Elem>, sugar: u32) {
        let h = self.polys.len();
        let lm_h = poly.leading_monomial().unwrap();
        self.polys.push(poly);
        self.lms.push(lm_h);
        self.sugars.push(sugar);

        let mut candidates: Vec<Pair> = self.active.iter().map(|&g| self.pair(g, h)).collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let coprime = self.lms[p.i].is_coprime(&lm_h);
            let dominated = candidates
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|p| !self.lms[p.i].is_coprime(&lm_h))
            .collect();

        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && lms[p.i].lcm(&lm_h) != p.lcm
                && lms[p.j].lcm(&lm_h) != p.lcm)
        });
        self.pairs.extend(fresh);

        self.active.retain(|&g| !lm_h.divides(&lms[g]));
        self.active.push(h);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ring = self.ring;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| ring.cmp(&a.lcm, &b.lcm))
            })?
            .0;
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, p: &Pair) -> Polynomial<K::Elem> {
        let one = self.ring.field().one();
        let ui = self.lms[p.i].divide_into(&p.lcm).unwrap();
        let uj = self.lms[p.j].divide_into(&p.lcm).unwrap();
        let a = self.ring.mul_term(&self.polys[p.i], &ui, &one);
        let terms = self
            .ring
            .sub_mul_term(a.terms(), &uj, &one, &self.polys[p.j]);
        self.ring.from_sorted_terms(terms)
    }
}

/// Reduced Gröbner basis of the ideal generated by `generators` in `ring`.
pub fn groebner_basis<K: Field>(
    ring: &PolyRing<K>,
    generators: &[Polynomial<K::Elem>],
) -> Result<GroebnerBasis<K>, KernelError> {
    for g in generators {
        ring.check(g)?;
    }
    let mut input: Vec<_> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ring.monic(g))
        .collect();
    if input.iter().any(|g| g.is_constant()) {
        return Ok(unit_basis(ring));
    }
    // small leading monomials first keeps early reductions cheap
    input.sort_by(|a, b| {
        ring.cmp(
            &a.leading_monomial().unwrap(),
            &b.leading_monomial().unwrap(),
        )
    });

    let mut b = Builder {
        ring,
        polys: Vec::new(),
        lms: Vec::new(),
        sugars: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in input {
        let r = {
            let reducers: Vec<_> = b.active.iter().map(|&i| Reducer::new(&b.polys[i])).collect();
            reduce(ring, &g, &reducers)
        };
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(unit_basis(ring));
        }
        let sugar = r.total_degree().unwrap();
        b.insert(ring.monic(&r), sugar);
    }

    while let Some(p) = b.next_pair() {
        let s = b.s_polynomial(&p);
        let r = {
            let reducers: Vec<_> = b.active.iter().map(|&i| Reducer::new(&b.polys[i])).collect();
            reduce(ring, &s, &reducers)
        };
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(unit_basis(ring));
        }
        b.insert(ring.monic(&r), p.sugar);
    }

    let minimal: Vec<_> = b.active.iter().map(|&i| b.polys[i].clone()).collect();
    Ok(GroebnerBasis {
        ring: ring.clone(),
        basis: interreduce(ring, minimal),
    })
}

fn unit_basis<K: Field>(ring: &PolyRing<K>) -> GroebnerBasis<K> {
    GroebnerBasis {
        ring: ring.clone(),
        basis: vec![ring.one()],
    }
}

/// Tail-reduce a minimal monic basis.
fn interreduce<K: Field>(
    ring: &PolyRing<K>,
    mut basis: Vec<Polynomial<K::Elem>>,
) -> Vec<Polynomial<K::Elem>> {
    basis.sort_by(|a, b| {
        ring.cmp(
            &b.leading_monomial().unwrap(),
            &a.leading_monomial().unwrap(),
        )
    });
    let mut out = Vec::with_capacity(basis.len());
    for idx in 0..basis.len() {
        let g = &basis[idx];
        let (lt, tail) = g.terms().split_first().unwrap();
        let reducers: Vec<_> = basis
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != idx)
            .map(|(_, p)| Reducer::new(p))
            .collect();
        let tail = ring.from_sorted_terms(tail.to_vec());
        let reduced = reduce(ring, &tail, &reducers);
        let mut terms = vec![lt.clone()];
        terms.extend(reduced.into_terms());
        out.push(ring.from_sorted_terms(terms));
    }
    out
}

/// Check the Gröbner property directly: every S-polynomial of the basis
/// reduces to zero. Quadratic in the basis size; meant for tests and audits.
pub fn is_groebner_basis<K: Field>(
    ring: &PolyRing<K>,
    basis: &[Polynomial<K::Elem>],
) -> bool {
    let monic: Vec<_> = basis.iter().map(|g| ring.monic(g)).collect();
    let reducers: Vec<_> = monic.iter().map(Reducer::new).collect();
    let one = ring.field().one();
    for i in 0..monic.len() {
        for j in i + 1..monic.len() {
            let (li, lj) = (reducers[i].lm, reducers[j].lm);
            let lcm = li.lcm(&lj);
            let a = ring.mul_term(&monic[i], &li.divide_into(&lcm).unwrap(), &one);
            let b = ring.mul_term(&monic[j], &lj.divide_into(&lcm).unwrap(), &one);
            if !reduce(ring, &ring.sub(&a, &b), &reducers).is_zero() {
                return false;
            }
        }
    }
    true
}
