use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use super::KernelError;

/// A sparse polynomial: nonzero terms sorted strictly decreasing under `order`.
///
/// Polynomials are created and combined through a [`PolyRing`], which owns
/// the coefficient field and checks that variable counts and orders agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<E> {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, E)>,
}

impl<E> Polynomial<E> {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, E)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|(m, _)| *m)
    }

    pub fn leading_coefficient(&self) -> Option<&E> {
        self.terms.first().map(|(_, c)| c)
    }

    /// The common total degree of all terms, `None` for zero or inhomogeneous
    /// polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    /// Whether variable `i` occurs in some term.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(i) > 0)
    }

    pub fn into_terms(self) -> Vec<(Monomial, E)> {
        self.terms
    }
}

/// `K[x_0, ..., x_{n-1}]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<K: Field> {
    field: K,
    nvars: usize,
    order: MonomialOrder,
}

impl<K: Field> PolyRing<K> {
    pub fn new(field: K, nvars: usize) -> Result<Self, KernelError> {
        Self::with_order(field, nvars, MonomialOrder::Grevlex)
    }

    pub fn with_order(field: K, nvars: usize, order: MonomialOrder) -> Result<Self, KernelError> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(KernelError::VariableCount(nvars));
        }
        if let MonomialOrder::Elimination { block } = order {
            if block == 0 || block > nvars {
                return Err(KernelError::VariableCount(block));
            }
        }
        Ok(Self { field, nvars, order })
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Same field and variables under another order.
    pub fn reordered(&self, order: MonomialOrder) -> Result<Self, KernelError> {
        Self::with_order(self.field.clone(), self.nvars, order)
    }

    /// The ring with `extra` new variables prepended, ordered by `order`.
    pub fn extended(&self, extra: usize, order: MonomialOrder) -> Result<Self, KernelError> {
        Self::with_order(self.field.clone(), self.nvars + extra, order)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.nvars)
    }

    pub fn check(&self, p: &Polynomial<K::Elem>) -> Result<(), KernelError> {
        if p.nvars != self.nvars || p.order != self.order {
            return Err(KernelError::RingMismatch {
                expected: (self.nvars, self.order),
                found: (p.nvars, p.order),
            });
        }
        Ok(())
    }

    pub fn zero(&self) -> Polynomial<K::Elem> {
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: Vec::new(),
        }
    }

    pub fn constant(&self, c: K::Elem) -> Polynomial<K::Elem> {
        self.monomial(Monomial::ONE, c)
    }

    pub fn one(&self) -> Polynomial<K::Elem> {
        self.constant(self.field.one())
    }

    pub fn var(&self, i: usize) -> Polynomial<K::Elem> {
        assert!(i < self.nvars, "variable index out of range");
        self.monomial(Monomial::var(i), self.field.one())
    }

    pub fn monomial(&self, m: Monomial, c: K::Elem) -> Polynomial<K::Elem> {
        let terms = if self.field.is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms,
        }
    }

    /// Build a polynomial from arbitrary terms: sorts, merges equal monomials
    /// and drops zero coefficients.
    pub fn from_terms(&self, terms: Vec<(Monomial, K::Elem)>) -> Polynomial<K::Elem> {
        let mut acc: HashMap<Monomial, K::Elem> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert!((self.nvars..MAX_VARS).all(|i| m.exponent(i) == 0));
            match acc.get_mut(&m) {
                Some(e) => *e = self.field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc
            .into_iter()
            .filter(|(_, c)| !self.field.is_zero(c))
            .collect();
        terms.sort_unstable_by(|a, b| self.cmp(&b.0, &a.0));
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms,
        }
    }

    /// Integer-coefficient terms given as exponent vectors.
    pub fn from_integer_terms(&self, terms: &[(Vec<u32>, BigInt)]) -> Polynomial<K::Elem> {
        self.from_terms(
            terms
                .iter()
                .map(|(e, c)| {
                    assert_eq!(e.len(), self.nvars, "exponent vector length");
                    (Monomial::from_exponents(e), self.field.from_bigint(c))
                })
                .collect(),
        )
    }

    /// Re-sort a polynomial of another ring with the same variables into
    /// this ring's order.
    pub fn convert(&self, p: &Polynomial<K::Elem>) -> Result<Polynomial<K::Elem>, KernelError> {
        if p.nvars != self.nvars {
            return Err(KernelError::RingMismatch {
                expected: (self.nvars, self.order),
                found: (p.nvars, p.order),
            });
        }
        let mut terms = p.terms.clone();
        terms.sort_unstable_by(|a, b| self.cmp(&b.0, &a.0));
        Ok(Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms,
        })
    }

    /// Embed a polynomial of a ring with `shift` fewer variables, placing its
    /// variables after the first `shift` slots.
    pub fn embed_shifted(&self, p: &Polynomial<K::Elem>, shift: usize) -> Polynomial<K::Elem> {
        assert_eq!(p.nvars + shift, self.nvars);
        let mut terms: Vec<_> = p
            .terms
            .iter()
            .map(|(m, c)| (m.shifted(shift), c.clone()))
            .collect();
        terms.sort_unstable_by(|a, b| self.cmp(&b.0, &a.0));
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms,
        }
    }

    /// Inverse of [`PolyRing::embed_shifted`] for polynomials free of the
    /// first `shift` variables of `from`.
    pub fn restrict_shifted(&self, p: &Polynomial<K::Elem>, shift: usize) -> Polynomial<K::Elem> {
        assert_eq!(p.nvars, self.nvars + shift);
        let mut terms: Vec<_> = p
            .terms
            .iter()
            .map(|(m, c)| (m.unshifted(shift), c.clone()))
            .collect();
        terms.sort_unstable_by(|a, b| self.cmp(&b.0, &a.0));
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms,
        }
    }

    /// Same polynomial read in a ring with more trailing variables.
    pub fn embed_trailing(&self, p: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        assert!(p.nvars <= self.nvars);
        let mut terms = p.terms.clone();
        terms.sort_unstable_by(|a, b| self.cmp(&b.0, &a.0));
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms,
        }
    }

    fn merge(
        &self,
        a: &[(Monomial, K::Elem)],
        b: impl Iterator<Item = (Monomial, K::Elem)>,
    ) -> Vec<(Monomial, K::Elem)> {
        let mut out = Vec::with_capacity(a.len() + 8);
        let mut i = 0;
        let mut b = b.peekable();
        while let Some((mb, _)) = b.peek() {
            if i == a.len() {
                out.extend(b);
                return out;
            }
            match self.cmp(&a[i].0, mb) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (m, cb) = b.next().unwrap();
                    let c = self.field.add(&a[i].1, &cb);
                    if !self.field.is_zero(&c) {
                        out.push((m, c));
                    }
                    i += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out
    }

    /// Wrap terms that are already sorted decreasingly with nonzero coefficients.
    pub fn from_sorted_terms(&self, terms: Vec<(Monomial, K::Elem)>) -> Polynomial<K::Elem> {
        debug_assert!(terms.windows(2).all(|w| self.cmp(&w[0].0, &w[1].0).is_gt()));
        self.wrap(terms)
    }

    fn wrap(&self, terms: Vec<(Monomial, K::Elem)>) -> Polynomial<K::Elem> {
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms,
        }
    }

    pub fn add(&self, a: &Polynomial<K::Elem>, b: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        self.wrap(self.merge(&a.terms, b.terms.iter().cloned()))
    }

    pub fn sub(&self, a: &Polynomial<K::Elem>, b: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        let f = &self.field;
        self.wrap(self.merge(&a.terms, b.terms.iter().map(|(m, c)| (*m, f.neg(c)))))
    }

    pub fn neg(&self, a: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        self.wrap(
            a.terms
                .iter()
                .map(|(m, c)| (*m, self.field.neg(c)))
                .collect(),
        )
    }

    pub fn scale(&self, a: &Polynomial<K::Elem>, c: &K::Elem) -> Polynomial<K::Elem> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        self.wrap(
            a.terms
                .iter()
                .map(|(m, x)| (*m, self.field.mul(x, c)))
                .collect(),
        )
    }

    /// `c * m * a`; monomial orders are multiplicative so no re-sort is needed.
    pub fn mul_term(
        &self,
        a: &Polynomial<K::Elem>,
        m: &Monomial,
        c: &K::Elem,
    ) -> Polynomial<K::Elem> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        self.wrap(
            a.terms
                .iter()
                .map(|(x, y)| (x.mul(m), self.field.mul(y, c)))
                .collect(),
        )
    }

    /// `a - c * m * b`, the elementary reduction step.
    pub fn sub_mul_term(
        &self,
        a: &[(Monomial, K::Elem)],
        m: &Monomial,
        c: &K::Elem,
        b: &Polynomial<K::Elem>,
    ) -> Vec<(Monomial, K::Elem)> {
        let f = &self.field;
        let nc = f.neg(c);
        self.merge(a, b.terms.iter().map(|(x, y)| (x.mul(m), f.mul(y, &nc))))
    }

    pub fn mul(&self, a: &Polynomial<K::Elem>, b: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut terms = Vec::with_capacity(a.len() * b.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                terms.push((ma.mul(mb), self.field.mul(ca, cb)));
            }
        }
        self.from_terms(terms)
    }

    pub fn pow(&self, a: &Polynomial<K::Elem>, k: u32) -> Polynomial<K::Elem> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Scale to leading coefficient one.
    pub fn monic(&self, a: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        match a.leading_coefficient() {
            None => self.zero(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(a, &inv)
            }
        }
    }

    pub fn derivative(&self, a: &Polynomial<K::Elem>, i: usize) -> Polynomial<K::Elem> {
        let terms = a
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(i) > 0)
            .map(|(m, c)| {
                let e = m.exponent(i);
                let mut exps = m.exponents(self.nvars);
                exps[i] -= 1;
                (
                    Monomial::from_exponents(&exps),
                    self.field.mul(c, &self.field.from_i64(e as i64)),
                )
            })
            .collect();
        self.from_terms(terms)
    }

    /// Exact division `a / b`; errors when `b` does not divide `a`.
    pub fn divide_exact(
        &self,
        a: &Polynomial<K::Elem>,
        b: &Polynomial<K::Elem>,
    ) -> Result<Polynomial<K::Elem>, KernelError> {
        let (lb, cb) = b.leading_term().ok_or(KernelError::DivisionByZero)?;
        let inv = self.field.inv(cb)?;
        let mut rem = a.terms.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.first().cloned() {
            let q = lb.divide_into(&m).ok_or(KernelError::InexactDivision)?;
            let qc = self.field.mul(&c, &inv);
            rem = self.sub_mul_term(&rem, &q, &qc, b);
            quot.push((q, qc));
        }
        Ok(self.wrap(quot))
    }

    /// Multiply by a nonzero scalar so that all coefficients are integers with
    /// gcd one and positive leading coefficient; returns them in term order.
    /// Over `F_p` this is the symmetric residue of each coefficient.
    pub fn integer_coefficients(&self, a: &Polynomial<K::Elem>) -> Vec<(Monomial, BigInt)> {
        if self.field.characteristic() != 0 {
            return a
                .terms
                .iter()
                .map(|(m, c)| (*m, self.field.to_bigint(c).expect("F_p residue")))
                .collect();
        }
        let rationals: Vec<(BigInt, BigInt)> = a
            .terms
            .iter()
            .map(|(_, c)| self.field.as_fraction(c))
            .collect();
        let lcm = rationals
            .iter()
            .fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
        let mut ints: Vec<BigInt> = rationals.iter().map(|(n, d)| n * (&lcm / d)).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() {
            for x in ints.iter_mut() {
                *x = &*x / &g;
            }
        }
        if ints.first().is_some_and(|x| x.is_negative()) {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
        a.terms.iter().map(|(m, _)| *m).zip(ints).collect()
    }

    /// Render with the given variable names, e.g. `x1^2*x2^6 - 3*x0`.
    ///
    /// Over `Q` the output is the primitive integer multiple of `a`, so the
    /// printed form describes the same ideal generator but not necessarily the
    /// same polynomial.
    pub fn format(&self, a: &Polynomial<K::Elem>, names: &[String]) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.integer_coefficients(a).into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (i, name) in names.iter().enumerate().take(self.nvars) {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}
