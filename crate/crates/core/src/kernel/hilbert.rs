//! Hilbert series of monomial ideals and the dimension/degree they encode.

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;

/// Dimension and degree of `Proj(S/J)` read off the Hilbert series
/// `P(t) / (1 - t)^krull_dim` of `S/J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub krull_dim: usize,
    /// Coefficients of `P(t)`, constant term first.
    pub numerator: Vec<i64>,
    /// `P(1)` for a nonempty scheme, 0 for the empty scheme.
    pub degree: u64,
}

impl HilbertData {
    /// Projective dimension, `None` for the empty scheme.
    pub fn proj_dim(&self) -> Option<usize> {
        self.krull_dim.checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.krull_dim == 0
    }

    /// From the lead-term ideal of a Gröbner basis in `nvars` variables.
    pub fn from_monomials(leads: &[Monomial], nvars: usize) -> Self {
        let mut num = hilbert_numerator(leads.to_vec());
        trim(&mut num);
        if num.iter().all(|&c| c == 0) {
            // unit ideal
            return Self {
                krull_dim: 0,
                numerator: vec![0],
                degree: 0,
            };
        }
        let mut krull_dim = nvars;
        while krull_dim > 0 && num.iter().sum::<i128>() == 0 {
            num = divide_one_minus_t(&num);
            krull_dim -= 1;
        }
        let value: i128 = num.iter().sum();
        let numerator = num
            .iter()
            .map(|&c| i64::try_from(c).expect("Hilbert numerator overflow"))
            .collect();
        Self {
            krull_dim,
            numerator,
            degree: if krull_dim == 0 { 0 } else { value as u64 },
        }
    }
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of `S/M`, with
/// the recursion `N(M) = N(M + (p)) + t^deg(p) N(M : p)` on a pivot power `p`.
pub fn hilbert_numerator(mut gens: Vec<Monomial>) -> Vec<i128> {
    minimalize(&mut gens);
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    match pivot(&gens) {
        None => {
            // pairwise coprime generators: a regular sequence
            let mut acc = vec![1i128];
            for m in &gens {
                acc = mul_one_minus_t_pow(&acc, m.degree() as usize);
            }
            acc
        }
        Some(p) => {
            let mut with_p = gens.clone();
            with_p.push(p);
            let colon: Vec<Monomial> = gens
                .iter()
                .map(|m| colon_monomial(m, &p))
                .collect();
            let a = hilbert_numerator(with_p);
            let b = hilbert_numerator(colon);
            let shift = p.degree() as usize;
            let mut out = vec![0i128; a.len().max(b.len() + shift)];
            for (i, c) in a.iter().enumerate() {
                out[i] += c;
            }
            for (i, c) in b.iter().enumerate() {
                out[i + shift] += c;
            }
            out
        }
    }
}

/// `m : p` for monomials, i.e. `m / gcd(m, p)`.
fn colon_monomial(m: &Monomial, p: &Monomial) -> Monomial {
    let exps: Vec<u32> = (0..super::monomial::MAX_VARS)
        .map(|i| m.exponent(i).saturating_sub(p.exponent(i)))
        .collect();
    Monomial::from_exponents(&exps)
}

/// Pick a variable shared by at least two generators and a median power of
/// it; `None` when the generators are pairwise coprime.
fn pivot(gens: &[Monomial]) -> Option<Monomial> {
    let nv = super::monomial::MAX_VARS;
    let mut counts = vec![0usize; nv];
    for m in gens {
        for (i, c) in counts.iter_mut().enumerate() {
            if m.exponent(i) > 0 {
                *c += 1;
            }
        }
    }
    let (var, &count) = counts.iter().enumerate().max_by_key(|&(i, c)| (*c, usize::MAX - i))?;
    if count < 2 {
        return None;
    }
    let mut exps: Vec<u32> = gens
        .iter()
        .map(|m| m.exponent(var))
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let mut v = vec![0u32; nv];
    v[var] = e;
    Some(Monomial::from_exponents(&v))
}

/// Drop generators divisible by another generator, and duplicates.
pub(crate) fn minimalize(gens: &mut Vec<Monomial>) {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens.iter() {
        if !kept.iter().any(|k| k.divides(m)) {
            kept.push(*m);
        }
    }
    *gens = kept;
}

fn mul_one_minus_t_pow(a: &[i128], k: usize) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + k];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
        out[i + k] -= c;
    }
    out
}

/// Exact division by `1 - t`; the caller guarantees `N(1) = 0`.
fn divide_one_minus_t(a: &[i128]) -> Vec<i128> {
    // N(t) = (1 - t) Q(t)  =>  q_i = sum_{j <= i} a_j
    let mut out = Vec::with_capacity(a.len().saturating_sub(1));
    let mut acc = 0i128;
    for &c in &a[..a.len() - 1] {
        acc += c;
        out.push(acc);
    }
    debug_assert_eq!(acc + a[a.len() - 1], 0);
    let mut out = out;
    trim(&mut out);
    out
}

fn trim(a: &mut Vec<i128>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn hyperplane_in_p3() {
        let h = HilbertData::from_monomials(&[m(&[1, 0, 0, 0])], 4);
        assert_eq!(h.proj_dim(), Some(2));
        assert_eq!(h.degree, 1);
    }

    #[test]
    fn unit_ideal_is_empty() {
        let h = HilbertData::from_monomials(&[Monomial::ONE], 4);
        assert!(h.is_empty());
        assert_eq!(h.degree, 0);
        assert_eq!(h.proj_dim(), None);
    }

    #[test]
    fn zero_ideal_is_whole_space() {
        let h = HilbertData::from_monomials(&[], 3);
        assert_eq!(h.proj_dim(), Some(2));
        assert_eq!(h.degree, 1);
    }

    #[test]
    fn irrelevant_power_is_empty() {
        let h = HilbertData::from_monomials(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 3])], 2);
        assert!(h.is_empty());
        assert_eq!(h.degree, 0);
        // length of k[x,y]/(x^2, xy, y^3) is 1 + 2 + 1 = 4
        assert_eq!(h.numerator.iter().sum::<i64>(), 4);
    }

    #[test]
    fn monomial_curve_degrees() {
        // (x0*x1, x1^2) in P^2: line x1 = 0 with an embedded point, degree 1
        let h = HilbertData::from_monomials(&[m(&[1, 1, 0]), m(&[0, 2, 0])], 3);
        assert_eq!(h.proj_dim(), Some(1));
        assert_eq!(h.degree, 1);
        // x0^2*x1^3 in P^2: plane quintic
        let h = HilbertData::from_monomials(&[m(&[2, 3, 0])], 3);
        assert_eq!((h.proj_dim(), h.degree), (Some(1), 5));
        // (x0, x1)^3 in P^3: triple line, degree 6
        let h = HilbertData::from_monomials(
            &[m(&[3, 0, 0, 0]), m(&[2, 1, 0, 0]), m(&[1, 2, 0, 0]), m(&[0, 3, 0, 0])],
            4,
        );
        assert_eq!((h.proj_dim(), h.degree), (Some(1), 6));
    }

    #[test]
    fn numerator_matches_brute_force_count() {
        // count standard monomials degree by degree and compare with the
        // series expansion of N(t) / (1 - t)^3
        let gens = vec![m(&[2, 1, 0]), m(&[0, 3, 1]), m(&[1, 0, 2]), m(&[0, 1, 1])];
        let num = hilbert_numerator(gens.clone());
        for deg in 0..12u32 {
            let mut count = 0i128;
            for a in 0..=deg {
                for b in 0..=deg - a {
                    let c = deg - a - b;
                    let mono = m(&[a, b, c]);
                    if !gens.iter().any(|g| g.divides(&mono)) {
                        count += 1;
                    }
                }
            }
            // coefficient of t^deg in N(t) * sum binom(j+2, 2) t^j
            let mut series = 0i128;
            for (i, c) in num.iter().enumerate() {
                if i as u32 <= deg {
                    let j = (deg - i as u32) as i128;
                    series += c * (j + 2) * (j + 1) / 2;
                }
            }
            assert_eq!(series, count, "degree {deg}");
        }
    }
}
