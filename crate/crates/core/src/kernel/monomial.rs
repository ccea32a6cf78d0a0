use std::cmp::Ordering;
use std::fmt;

/// Upper bound on the number of ring variables, tag variables included.
pub const MAX_VARS: usize = 16;

/// A power product `x_0^{e_0} ... x_{n-1}^{e_{n-1}}` with a cached total degree.
///
/// Exponents past the ring's variable count are always zero, so equality and
/// hashing never depend on the ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        degree: 0,
    };

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        let mut exps = [0; MAX_VARS];
        exps[i] = 1;
        Self { exps, degree: 1 }
    }

    /// Panics if there are more than [`MAX_VARS`] exponents or one exceeds `u16`.
    pub fn from_exponents(exponents: &[u32]) -> Self {
        assert!(exponents.len() <= MAX_VARS, "too many variables");
        let mut exps = [0u16; MAX_VARS];
        let mut degree = 0;
        for (slot, &e) in exps.iter_mut().zip(exponents) {
            *slot = u16::try_from(e).expect("exponent overflow");
            degree += e;
        }
        Self { exps, degree }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    /// Sum of the exponents of variables `[0, block)`.
    #[inline]
    pub fn block_degree(&self, block: usize) -> u32 {
        self.exps[..block].iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(&other.exps) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.exps;
        for (a, b) in exps.iter_mut().zip(&self.exps) {
            *a -= *b;
        }
        Some(Monomial {
            exps,
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        let mut degree = 0;
        for (a, b) in exps.iter_mut().zip(&other.exps) {
            *a = (*a).max(*b);
            degree += *a as u32;
        }
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Move every exponent `shift` slots to the right (used to make room for
    /// tag variables at the front).
    pub fn shifted(&self, shift: usize) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for i in 0..MAX_VARS - shift {
            exps[i + shift] = self.exps[i];
        }
        assert!(
            self.exps[MAX_VARS - shift..].iter().all(|&e| e == 0),
            "too many variables"
        );
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// Inverse of [`Monomial::shifted`]; the first `shift` exponents must be zero.
    pub fn unshifted(&self, shift: usize) -> Monomial {
        debug_assert!(self.exps[..shift].iter().all(|&e| e == 0));
        let mut exps = [0u16; MAX_VARS];
        exps[..MAX_VARS - shift].copy_from_slice(&self.exps[shift..]);
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// Drop variable `i`: the monomial with `x_i` set to 1.
    pub fn without_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps;
        let e = exps[i] as u32;
        exps[i] = 0;
        Monomial {
            exps,
            degree: self.degree - e,
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "x{:?}", &self.exps[..last])
    }
}

/// Monomial orders used by the kernel.
///
/// `Elimination { block }` first compares the total degree in the variables
/// `x_0..x_{block-1}` and breaks ties with grevlex on all variables; every
/// monomial involving the block is larger than every monomial free of it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Elimination {
        block: usize,
    },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(a, b, nvars),
            MonomialOrder::Elimination { block } => a
                .block_degree(block)
                .cmp(&b.block_degree(block))
                .then_with(|| grevlex(a, b, nvars)),
        }
    }
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
    match a.degree.cmp(&b.degree) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..nvars).rev() {
        if a.exps[i] != b.exps[i] {
            // smaller exponent in the last differing variable wins
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_basic_comparisons() {
        let o = MonomialOrder::Grevlex;
        // x0 > x1 > x2
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0]), 3), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 1]), 3), Ordering::Greater);
        // x1^2 > x0*x2 in grevlex (x0*x2 has the larger x2 exponent)
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1]), 3), Ordering::Greater);
        // degree dominates
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0]), 3), Ordering::Greater);
    }

    #[test]
    fn elimination_puts_block_first() {
        let o = MonomialOrder::Elimination { block: 1 };
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5]), 3), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 2, 0]), &m(&[1, 0, 2]), 3), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.divide_into(&b), Some(m(&[1, 0, 1])));
        assert_eq!(b.divide_into(&a), None);
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 4, 1])));
        assert_eq!(a.shifted(1).unshifted(1), a);
        assert_eq!(a.shifted(1).exponent(2), 2);
    }
}
