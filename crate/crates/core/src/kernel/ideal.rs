use rand_core::RngCore;

use super::field::Field;
use super::groebner::{groebner_basis, GroebnerBasis};
use super::hilbert::HilbertData;
use super::monomial::{Monomial, MonomialOrder};
use super::poly::{PolyRing, Polynomial};
use super::KernelError;

/// Redraws allowed before a vanishing random combination is reported.
const ZERO_COMBINATION_RETRIES: usize = 64;

/// A homogeneous ideal of `K[x_0..x_n]` given by nonzero homogeneous
/// generators. The ring always carries the grevlex order.
#[derive(Clone, Debug)]
pub struct Ideal<K: Field> {
    ring: PolyRing<K>,
    generators: Vec<Polynomial<K::Elem>>,
    /// Generators of an initial ideal for some monomial order, when a
    /// computation produced one for free.
    initial: Option<Vec<Monomial>>,
}

impl<K: Field> PartialEq for Ideal<K> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators
    }
}

impl<K: Field> Ideal<K> {
    pub fn new(
        ring: &PolyRing<K>,
        generators: Vec<Polynomial<K::Elem>>,
    ) -> Result<Self, KernelError> {
        if ring.nvars() < 2 {
            return Err(KernelError::VariableCount(ring.nvars()));
        }
        if generators.is_empty() {
            return Err(KernelError::NoGenerators);
        }
        let ring = ring.reordered(MonomialOrder::Grevlex)?;
        let mut gens = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            let g = ring.convert(g)?;
            if g.is_zero() {
                return Err(KernelError::ZeroGenerator(i));
            }
            if g.homogeneous_degree().is_none() {
                return Err(KernelError::NotHomogeneous(i));
            }
            gens.push(g);
        }
        Ok(Self {
            ring,
            generators: gens,
            initial: None,
        })
    }

    /// The whole ring, generated by 1.
    pub fn unit(ring: &PolyRing<K>) -> Result<Self, KernelError> {
        Self::new(ring, vec![ring.one()])
    }

    /// Trusted constructor for generators already known to be valid.
    fn from_valid(ring: &PolyRing<K>, generators: Vec<Polynomial<K::Elem>>) -> Self {
        debug_assert!(!generators.is_empty());
        debug_assert!(generators.iter().all(|g| g.homogeneous_degree().is_some()));
        Self {
            ring: ring.clone(),
            generators,
            initial: None,
        }
    }

    pub fn ring(&self) -> &PolyRing<K> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<K::Elem>] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// The degree shared by all generators.
    pub fn common_degree(&self) -> Result<u32, KernelError> {
        let d = self.generators[0].homogeneous_degree().unwrap();
        if self
            .generators
            .iter()
            .all(|g| g.homogeneous_degree() == Some(d))
        {
            Ok(d)
        } else {
            Err(KernelError::MixedDegrees)
        }
    }

    pub fn groebner_basis(&self) -> Result<GroebnerBasis<K>, KernelError> {
        groebner_basis(&self.ring, &self.generators)
    }

    pub fn groebner_basis_in(&self, order: MonomialOrder) -> Result<GroebnerBasis<K>, KernelError> {
        let ring = self.ring.reordered(order)?;
        let gens = self
            .generators
            .iter()
            .map(|g| ring.convert(g))
            .collect::<Result<Vec<_>, _>>()?;
        groebner_basis(&ring, &gens)
    }

    pub fn contains(&self, f: &Polynomial<K::Elem>) -> Result<bool, KernelError> {
        self.groebner_basis()?.contains(&self.ring.convert(f)?)
    }

    pub fn is_subset_of(&self, other: &Ideal<K>) -> Result<bool, KernelError> {
        let gb = other.groebner_basis()?;
        for g in &self.generators {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_ideal(&self, other: &Ideal<K>) -> Result<bool, KernelError> {
        Ok(self.groebner_basis()? == other.groebner_basis()?)
    }

    pub fn is_unit(&self) -> Result<bool, KernelError> {
        Ok(self.groebner_basis()?.is_unit())
    }

    /// `self ∩ other`, by eliminating a tag variable `t` from
    /// `t·self + (1 - t)·other`.
    pub fn intersect(&self, other: &Ideal<K>) -> Result<Ideal<K>, KernelError> {
        let gens = intersect_generators(&self.ring, &self.generators, &other.generators)?;
        Ok(Self::from_valid(&self.ring, gens))
    }

    /// `(self : f) = { g : g·f ∈ self }` via `self ∩ (f)` divided by `f`.
    pub fn quotient(&self, f: &Polynomial<K::Elem>) -> Result<Ideal<K>, KernelError> {
        let f = self.ring.convert(f)?;
        if f.is_zero() {
            return Err(KernelError::ZeroGenerator(0));
        }
        if f.homogeneous_degree().is_none() {
            return Err(KernelError::NotHomogeneous(0));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let inter = intersect_generators(&self.ring, &self.generators, std::slice::from_ref(&f))?;
        let gens = inter
            .iter()
            .map(|g| self.ring.divide_exact(g, &f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_valid(&self.ring, gens))
    }

    /// `self : f^∞`, the limit of `self ⊆ (self : f) ⊆ ((self : f) : f) ⊆ ...`.
    /// A monomial `f` is handled one variable at a time instead.
    pub fn saturate_by(&self, f: &Polynomial<K::Elem>) -> Result<Ideal<K>, KernelError> {
        let f = self.ring.convert(f)?;
        if f.len() == 1 {
            let m = f.leading_monomial().unwrap();
            let mut current = self.clone();
            for i in 0..self.nvars() {
                if m.exponent(i) > 0 {
                    current = current.saturate_by_variable(i)?;
                }
            }
            return Ok(current);
        }
        let f = &f;
        let mut current = self.clone();
        let mut current_gb = current.groebner_basis()?;
        loop {
            let next = current.quotient(f)?;
            let mut grew = false;
            for g in &next.generators {
                if !current_gb.contains(g)? {
                    grew = true;
                    break;
                }
            }
            if !grew {
                return Ok(current);
            }
            current_gb = next.groebner_basis()?;
            current = Self::from_valid(&self.ring, current_gb.basis().to_vec());
        }
    }

    /// `self : x_i^∞`. With `x_i` moved to the last position, the grevlex
    /// basis of a homogeneous ideal stripped of all powers of `x_i` generates
    /// the saturation.
    pub fn saturate_by_variable(&self, i: usize) -> Result<Ideal<K>, KernelError> {
        let n = self.nvars();
        if i >= n {
            return Err(KernelError::VariableCount(i + 1));
        }
        let last = n - 1;
        let gens: Vec<_> = self
            .generators
            .iter()
            .map(|g| swap_variables(&self.ring, g, i, last))
            .collect();
        let gb = groebner_basis(&self.ring, &gens)?;
        let mut initial = Vec::with_capacity(gb.len());
        let out = gb
            .basis()
            .iter()
            .map(|g| {
                let k = g.terms().iter().map(|(m, _)| m.exponent(last)).min().unwrap();
                let stripped = g
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let mut e = m.exponents(n);
                        e[last] -= k;
                        (Monomial::from_exponents(&e), c.clone())
                    })
                    .collect();
                let stripped = self.ring.from_sorted_terms(stripped);
                let mut lead = stripped.leading_monomial().unwrap().exponents(n);
                lead.swap(i, last);
                initial.push(Monomial::from_exponents(&lead));
                swap_variables(&self.ring, &stripped, i, last)
            })
            .collect();
        let mut sat = Self::from_valid(&self.ring, out);
        sat.initial = Some(initial);
        Ok(sat)
    }

    /// `self : other^∞ = ∩_i (self : F_i^∞)` over the generators `F_i` of `other`.
    ///
    /// For a monomial `F` the saturation only depends on the set of variables
    /// in `F`, and a smaller set gives a smaller ideal, so monomial
    /// generators are reduced to their minimal supports first.
    pub fn saturate(&self, other: &Ideal<K>) -> Result<Ideal<K>, KernelError> {
        if other.nvars() != self.nvars() {
            return Err(KernelError::RingMismatch {
                expected: (self.nvars(), MonomialOrder::Grevlex),
                found: (other.nvars(), MonomialOrder::Grevlex),
            });
        }
        if other.generators.iter().any(|f| f.is_constant()) {
            return Ok(self.clone());
        }
        let mut supports: Vec<u32> = Vec::new();
        let mut general = Vec::new();
        for f in &other.generators {
            if f.len() == 1 {
                let m = f.leading_monomial().unwrap();
                supports.push(
                    (0..self.nvars())
                        .filter(|&i| m.exponent(i) > 0)
                        .fold(0u32, |acc, i| acc | 1 << i),
                );
            } else {
                general.push(f.clone());
            }
        }
        supports.sort_by_key(|s| (s.count_ones(), *s));
        supports.dedup();
        let mut minimal: Vec<u32> = Vec::new();
        for s in supports {
            if !minimal.iter().any(|&t| t & s == t) {
                minimal.push(s);
            }
        }
        let mut acc: Option<Ideal<K>> = None;
        let monomial_sats = minimal.into_iter().map(|s| {
            let mut current = self.clone();
            for i in (0..self.nvars()).filter(|&i| s & (1 << i) != 0) {
                current = current.saturate_by_variable(i)?;
            }
            Ok(current)
        });
        let general_sats = general.iter().map(|f| self.saturate_by(f));
        for sat in monomial_sats.chain(general_sats) {
            let sat = sat?;
            acc = Some(match acc {
                None => sat,
                Some(prev) => prev.intersect(&sat)?,
            });
        }
        Ok(acc.expect("ideals have generators"))
    }

    /// Dimension and degree of `Proj(S / self)` from the lead-term ideal.
    pub fn hilbert_data(&self) -> Result<HilbertData, KernelError> {
        if let Some(initial) = &self.initial {
            return Ok(HilbertData::from_monomials(initial, self.nvars()));
        }
        let gb = self.groebner_basis()?;
        Ok(HilbertData::from_monomials(&gb.leading_monomials(), self.nvars()))
    }

    /// `Σ c_i F_i` with each `c_i` one draw of `rng` reduced into the field;
    /// a vanishing combination is redrawn.
    pub fn random_combination(
        &self,
        rng: &mut dyn RngCore,
    ) -> Result<Polynomial<K::Elem>, KernelError> {
        self.common_degree()?;
        let field = self.ring.field();
        for _ in 0..ZERO_COMBINATION_RETRIES {
            let mut acc = self.ring.zero();
            for g in &self.generators {
                let c = field.random(rng);
                acc = self.ring.add(&acc, &self.ring.scale(g, &c));
            }
            if !acc.is_zero() {
                return Ok(acc);
            }
        }
        Err(KernelError::ZeroCombination(ZERO_COMBINATION_RETRIES))
    }

    /// Generators spanning the degree-`d` piece: every generator times every
    /// monomial of the complementary degree.
    pub fn regenerate(&self, d: u32) -> Result<Ideal<K>, KernelError> {
        let one = self.ring.field().one();
        let mut gens = Vec::new();
        for g in &self.generators {
            let e = g.homogeneous_degree().unwrap();
            if e > d {
                return Err(KernelError::DegreeTooSmall { target: d, found: e });
            }
            for m in monomials_of_degree(self.nvars(), d - e) {
                gens.push(self.ring.mul_term(g, &m, &one));
            }
        }
        Ok(Self::from_valid(&self.ring, gens))
    }

    /// The same generators read in a polynomial ring with `nvars` variables
    /// (the new variables come last).
    pub fn extend_variables(&self, nvars: usize) -> Result<Ideal<K>, KernelError> {
        if nvars < self.nvars() {
            return Err(KernelError::VariableCount(nvars));
        }
        let ring = PolyRing::new(self.ring.field().clone(), nvars)?;
        let gens = self
            .generators
            .iter()
            .map(|g| ring.embed_trailing(g))
            .collect();
        Ok(Self::from_valid(&ring, gens))
    }
}

fn intersect_generators<K: Field>(
    ring: &PolyRing<K>,
    a: &[Polynomial<K::Elem>],
    b: &[Polynomial<K::Elem>],
) -> Result<Vec<Polynomial<K::Elem>>, KernelError> {
    let big = ring.extended(1, MonomialOrder::Elimination { block: 1 })?;
    let t = big.var(0);
    let one_minus_t = big.sub(&big.one(), &t);
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for g in a {
        gens.push(big.mul(&t, &big.embed_shifted(g, 1)));
    }
    for g in b {
        gens.push(big.mul(&one_minus_t, &big.embed_shifted(g, 1)));
    }
    let gb = groebner_basis(&big, &gens)?;
    let out: Vec<_> = gb
        .basis()
        .iter()
        .filter(|g| !g.involves(0))
        .map(|g| ring.restrict_shifted(g, 1))
        .collect();
    debug_assert!(!out.is_empty());
    Ok(out)
}

fn swap_variables<K: Field>(
    ring: &PolyRing<K>,
    p: &Polynomial<K::Elem>,
    i: usize,
    j: usize,
) -> Polynomial<K::Elem> {
    if i == j {
        return p.clone();
    }
    let n = ring.nvars();
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut e = m.exponents(n);
            e.swap(i, j);
            (Monomial::from_exponents(&e), c.clone())
        })
        .collect();
    ring.from_terms(terms)
}

/// All monomials of total degree `d` in `nvars` variables.
pub(crate) fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    rec(0, d, &mut exps, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::expr::parse_polynomial_list;
    use crate::kernel::field::PrimeField;
    use crate::kernel::seed_stream;

    fn ideal(text: &str, n: usize) -> Ideal<PrimeField> {
        let ring = PolyRing::new(PrimeField::default(), n).unwrap();
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let gens = parse_polynomial_list(text, &names)
            .unwrap()
            .into_iter()
            .map(|(_, p)| p.to_ring(&ring))
            .collect();
        Ideal::new(&ring, gens).unwrap()
    }

    fn poly(text: &str, n: usize) -> Polynomial<u32> {
        ideal(text, n).generators()[0].clone()
    }

    #[test]
    fn validation_rejects_bad_generators() {
        let ring = PolyRing::new(PrimeField::default(), 3).unwrap();
        let inhom = ring.add(&ring.var(0), &ring.mul(&ring.var(1), &ring.var(2)));
        assert_eq!(
            Ideal::new(&ring, vec![ring.var(0), inhom]).unwrap_err(),
            KernelError::NotHomogeneous(1)
        );
        assert_eq!(
            Ideal::new(&ring, vec![ring.zero()]).unwrap_err(),
            KernelError::ZeroGenerator(0)
        );
        assert_eq!(Ideal::new(&ring, vec![]).unwrap_err(), KernelError::NoGenerators);
        let p1 = PolyRing::new(PrimeField::default(), 1).unwrap();
        assert!(Ideal::new(&p1, vec![p1.var(0)]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let q = ideal("x0*x1", 3).quotient(&poly("x1", 3)).unwrap();
        assert!(q.same_ideal(&ideal("x0", 3)).unwrap());
        let q = ideal("x0^2", 3).quotient(&poly("x0", 3)).unwrap();
        assert!(q.same_ideal(&ideal("x0", 3)).unwrap());
        let q = ideal("x1^2*x2^6, x1^7", 4).quotient(&poly("x1^2", 4)).unwrap();
        assert!(q.same_ideal(&ideal("x2^6, x1^5", 4)).unwrap());
    }

    #[test]
    fn saturation_removes_embedded_point() {
        let j = ideal("x0*x1, x1^2", 3);
        let s = j.saturate(&ideal("x0, x1", 3)).unwrap();
        assert!(s.same_ideal(&ideal("x1", 3)).unwrap());
    }

    #[test]
    fn variable_saturation_agrees_with_iterated_quotients() {
        let j = ideal("x0^2*x1 - x2^3, x0*x2^2, x1^3*x0", 3);
        for i in 0..3 {
            let v = ring_var(3, i);
            let fast = j.saturate_by_variable(i).unwrap();
            let mut slow = j.clone();
            loop {
                let next = slow.quotient(&v).unwrap();
                if next.is_subset_of(&slow).unwrap() {
                    break;
                }
                slow = next;
            }
            assert!(fast.same_ideal(&slow).unwrap(), "variable {i}");
        }
    }

    fn ring_var(n: usize, i: usize) -> Polynomial<u32> {
        PolyRing::new(PrimeField::default(), n).unwrap().var(i)
    }

    #[test]
    fn saturation_by_unit_ideal_is_identity() {
        let j = ideal("x0*x1, x1^2", 3);
        let ring = j.ring().clone();
        let s = j.saturate(&Ideal::unit(&ring).unwrap()).unwrap();
        assert!(s.same_ideal(&j).unwrap());
    }

    #[test]
    fn intersection_of_coordinate_lines() {
        let a = ideal("x0, x1", 4);
        let b = ideal("x2, x3", 4);
        let c = a.intersect(&b).unwrap();
        assert!(c
            .same_ideal(&ideal("x0*x2, x0*x3, x1*x2, x1*x3", 4))
            .unwrap());
        let h = c.hilbert_data().unwrap();
        assert_eq!((h.proj_dim(), h.degree), (Some(1), 2));
    }

    #[test]
    fn hilbert_data_of_basic_schemes() {
        let h = ideal("x0", 4).hilbert_data().unwrap();
        assert_eq!((h.proj_dim(), h.degree), (Some(2), 1));
        let ring = PolyRing::new(PrimeField::default(), 4).unwrap();
        let h = Ideal::unit(&ring).unwrap().hilbert_data().unwrap();
        assert!(h.is_empty());
        assert_eq!(h.degree, 0);
        let h = ideal("x0*x2 - x1^2, x0*x3 - x1*x2, x1*x3 - x2^2", 4)
            .hilbert_data()
            .unwrap();
        assert_eq!((h.proj_dim(), h.degree), (Some(1), 3));
    }

    #[test]
    fn random_combination_is_deterministic() {
        let i = ideal("x1^2*x2^6, x1^3*x2^4, x1^4*x2^3, x1^5*x2, x1^7", 4)
            .regenerate(8)
            .unwrap();
        let a = i.random_combination(&mut seed_stream(7, 0)).unwrap();
        let b = i.random_combination(&mut seed_stream(7, 0)).unwrap();
        let c = i.random_combination(&mut seed_stream(8, 0)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.homogeneous_degree(), Some(8));
        assert!(i.contains(&a).unwrap());
    }

    #[test]
    fn random_combination_of_single_generator_is_a_multiple() {
        let i = ideal("x0*x1 - x2^2", 3);
        let f = i.random_combination(&mut seed_stream(1, 0)).unwrap();
        let g = &i.generators()[0];
        let ring = i.ring();
        assert_eq!(ring.monic(&f), ring.monic(g));
    }

    #[test]
    fn random_combination_rejects_mixed_degrees() {
        let i = ideal("x0, x1^2", 3);
        assert_eq!(
            i.random_combination(&mut seed_stream(1, 0)).unwrap_err(),
            KernelError::MixedDegrees
        );
    }

    #[test]
    fn regeneration_spans_the_degree_piece() {
        let i = ideal("x0*x1, x1^2", 3);
        let r = i.regenerate(3).unwrap();
        assert_eq!(r.generators().len(), 6);
        assert_eq!(r.common_degree().unwrap(), 3);
        assert!(r.is_subset_of(&i).unwrap());
        assert!(i.regenerate(1).is_err());
        assert_eq!(monomials_of_degree(4, 1).len(), 4);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
    }
}
