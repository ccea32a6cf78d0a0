//! Chow classes of `P^n` pushed forward from subschemes, and the class-level
//! calculus on them.
//!
//! A [`ChowClass`] stores `a_0..a_n` for `Σ a_i [P^{n-i}]`, codimension
//! first, so `a_i` is also the coefficient of `H^i` when the class is read as
//! a polynomial in the hyperplane class. All arithmetic is exact `i64`
//! arithmetic; an overflow panics instead of wrapping.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("coefficient vector has length {found}, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("ambient dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("expected twist {expected}, found {found}")]
    TwistMismatch { expected: i64, found: i64 },
    #[error("normal bundle rank {rank} does not match codimension {codim}")]
    RankMismatch { rank: usize, codim: usize },
    #[error("invalid subvariety model: {0}")]
    InvalidModel(&'static str),
    #[error("index {index} out of range for a class in P^{n}")]
    OutOfRange { index: usize, n: usize },
    #[error("cannot cut a class in P^0 by a hyperplane")]
    PointAmbient,
    #[error("target dimension {target} is below the source dimension {source_dim}")]
    TargetTooSmall { target: usize, source_dim: usize },
    #[error("degree must be positive")]
    NonPositiveDegree,
}

fn overflow() -> ! {
    panic!("Chow class coefficient overflows i64")
}

fn add(a: i64, b: i64) -> i64 {
    a.checked_add(b).unwrap_or_else(|| overflow())
}

fn mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).unwrap_or_else(|| overflow())
}

fn pow(a: i64, k: usize) -> i64 {
    let k = u32::try_from(k).unwrap_or_else(|_| overflow());
    a.checked_pow(k).unwrap_or_else(|| overflow())
}

/// `binom(e, j)` for any integer `e`, i.e. the coefficient of `x^j` in `(1+x)^e`.
pub fn binomial(e: i64, j: usize) -> i64 {
    let mut c: i128 = 1;
    for t in 0..j as i128 {
        c = c * (e as i128 - t) / (t + 1);
    }
    i64::try_from(c).unwrap_or_else(|_| overflow())
}

/// Coefficients of `(1 + m H)^e` up to `H^{len-1}`; `e` may be negative.
pub fn linear_power(m: i64, e: i64, len: usize) -> Vec<i64> {
    (0..len).map(|j| mul(binomial(e, j), pow(m, j))).collect()
}

/// Product of two truncated power series, truncated to `len` terms.
pub fn series_mul(a: &[i64], b: &[i64], len: usize) -> Vec<i64> {
    let mut out = vec![0i64; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] = add(out[i + j], mul(x, y));
        }
    }
    out
}

/// Inverse of a power series with constant term 1, truncated to `len` terms.
pub fn series_inverse(a: &[i64], len: usize) -> Vec<i64> {
    assert_eq!(a.first(), Some(&1), "series must start with 1");
    let mut out = vec![0i64; len];
    if len > 0 {
        out[0] = 1;
    }
    for k in 1..len {
        let mut s = 0i64;
        for j in 1..=k.min(a.len() - 1) {
            s = add(s, mul(a[j], out[k - j]));
        }
        out[k] = -s;
    }
    out
}

/// A class `Σ a_i [P^{n-i}]` in the Chow group of `P^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawClass", into = "RawClass")]
pub struct ChowClass {
    n: usize,
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawClass {
    ambient_dim: usize,
    coeffs: Vec<i64>,
}

impl TryFrom<RawClass> for ChowClass {
    type Error = ChowError;
    fn try_from(r: RawClass) -> Result<Self, ChowError> {
        ChowClass::new(r.ambient_dim, r.coeffs)
    }
}

impl From<ChowClass> for RawClass {
    fn from(c: ChowClass) -> Self {
        RawClass {
            ambient_dim: c.n,
            coeffs: c.coeffs,
        }
    }
}

impl ChowClass {
    pub fn new(n: usize, coeffs: Vec<i64>) -> Result<Self, ChowError> {
        if coeffs.len() != n + 1 {
            return Err(ChowError::Length {
                expected: n + 1,
                found: coeffs.len(),
            });
        }
        Ok(Self { n, coeffs })
    }

    /// Takes the ambient dimension from the vector length, which must be nonzero.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "a class needs at least one coefficient");
        Self {
            n: coeffs.len() - 1,
            coeffs,
        }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            coeffs: vec![0; n + 1],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// The coefficient of `[P^{n-i}]`.
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0)
    }

    pub fn add(&self, other: &ChowClass) -> Result<ChowClass, ChowError> {
        if self.n != other.n {
            return Err(ChowError::DimensionMismatch(self.n, other.n));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| add(a, b))
            .collect();
        Ok(Self { n: self.n, coeffs })
    }

    /// Cap with the polynomial `p(H)`, dropping everything below `[P^0]`.
    pub fn cap(&self, p: &[i64]) -> ChowClass {
        Self {
            n: self.n,
            coeffs: series_mul(p, &self.coeffs, self.n + 1),
        }
    }

    /// Cap with `(1 + m H)^e`.
    pub fn cap_linear_power(&self, m: i64, e: i64) -> ChowClass {
        self.cap(&linear_power(m, e, self.n + 1))
    }

    /// True iff every coefficient is nonnegative, with the indices that are not.
    pub fn effectivity(&self) -> (bool, Vec<usize>) {
        let bad: Vec<usize> = (0..=self.n).filter(|&i| self.coeffs[i] < 0).collect();
        (bad.is_empty(), bad)
    }
}

/// `s(Z,P^n)^{O(mH)}`: a class together with the twist `m` it carries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedSegreClass {
    pub cls: ChowClass,
    pub twist: i64,
    /// Common degree of the defining forms, when known.
    pub degree: Option<u32>,
}

impl TwistedSegreClass {
    pub fn new(cls: ChowClass, twist: i64, degree: Option<u32>) -> Self {
        Self { cls, twist, degree }
    }

    /// Tensor an ordinary class by `O(mH)`.
    pub fn from_ordinary(ordinary: &ChowClass, m: i64, degree: Option<u32>) -> Self {
        Self {
            cls: tensor_twist(ordinary, m),
            twist: m,
            degree,
        }
    }

    pub fn to_ordinary(&self) -> ChowClass {
        tensor_twist(&self.cls, -self.twist)
    }

    pub fn ambient_dim(&self) -> usize {
        self.cls.ambient_dim()
    }
}

/// `c ⊗ O(mH)`: the dimension-`k` piece is capped with `(1 + mH)^{-(n+1-k)}`.
pub fn tensor_twist(c: &ChowClass, m: i64) -> ChowClass {
    let n = c.n;
    let mut out = vec![0i64; n + 1];
    for (i, &a) in c.coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let factor = linear_power(m, -(i as i64 + 1), n + 1 - i);
        for (j, f) in factor.into_iter().enumerate() {
            out[i + j] = add(out[i + j], mul(a, f));
        }
    }
    ChowClass { n, coeffs: out }
}

/// `s^{L1 ⊗ L2} = s^{L1} ⊗ L2` with `L2 = O(m2 H)`.
pub fn compose_twists(s: &TwistedSegreClass, m2: i64) -> TwistedSegreClass {
    TwistedSegreClass {
        cls: tensor_twist(&s.cls, m2),
        twist: s.twist + m2,
        degree: s.degree,
    }
}

/// Chern classes of `N ⊗ O(m h)` for a rank-`r` bundle `N`, truncated to the
/// length of `chern`.
pub fn twist_chern(chern: &[i64], r: usize, m: i64) -> Vec<i64> {
    assert_eq!(chern.first(), Some(&1), "total Chern class must start with 1");
    (0..chern.len())
        .map(|i| {
            let mut s = 0i64;
            for (j, &c) in chern.iter().enumerate().take(i + 1) {
                if j > r {
                    break;
                }
                s = add(s, mul(mul(binomial((r - j) as i64, i - j), c), pow(m, i - j)));
            }
            s
        })
        .collect()
}

/// A nonsingular `Z ≅ P^z` embedded in `P^n` with `H|_Z = e·h` and normal
/// bundle of rank `r` and total Chern class `chern_normal` (in powers of `h`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubvarietyModel {
    pub z: usize,
    pub e: i64,
    pub chern_normal: Vec<i64>,
    pub rank: usize,
}

impl SubvarietyModel {
    pub fn new(z: usize, e: i64, chern_normal: Vec<i64>, rank: usize) -> Result<Self, ChowError> {
        if e < 1 {
            return Err(ChowError::InvalidModel("e must be positive"));
        }
        if chern_normal.first() != Some(&1) {
            return Err(ChowError::InvalidModel("Chern class must have constant term 1"));
        }
        let mut chern_normal = chern_normal;
        chern_normal.resize(z + 1, 0);
        Ok(Self {
            z,
            e,
            chern_normal,
            rank,
        })
    }

    /// A nonsingular conic `P^1 → P^2`, normal bundle `O(2)|_Z = O(4h)`.
    pub fn plane_conic() -> Self {
        Self::new(1, 2, vec![1, 4], 1).expect("valid model")
    }

    /// The Veronese surface `P^2 → P^5`.
    pub fn veronese_surface() -> Self {
        Self::new(2, 2, vec![1, 9, 30], 3).expect("valid model")
    }

    /// A hyperplane `P^{n-1} ⊂ P^n`.
    pub fn hyperplane(n: usize) -> Self {
        assert!(n >= 1);
        Self::new(n - 1, 1, vec![1, 1], 1).expect("valid model")
    }
}

/// `(c(L) c(N ⊗ L))^{-1} ∩ [Z]` for `L = O(mH)|_Z`, pushed forward to `P^n`.
pub fn segre_regular_embedding(
    model: &SubvarietyModel,
    n: usize,
    m: i64,
) -> Result<TwistedSegreClass, ChowError> {
    if n < model.z || model.rank != n - model.z {
        return Err(ChowError::RankMismatch {
            rank: model.rank,
            codim: n.saturating_sub(model.z),
        });
    }
    let len = model.z + 1;
    let lh = mul(m, model.e);
    let c_l = linear_power(lh, 1, len);
    let c_nl = twist_chern(&model.chern_normal, model.rank, lh);
    let inv = series_inverse(&series_mul(&c_l, &c_nl, len), len);
    let mut coeffs = vec![0i64; n + 1];
    for (i, b) in inv.into_iter().enumerate() {
        coeffs[model.rank + i] = mul(b, pow(model.e, model.z - i));
    }
    Ok(TwistedSegreClass::new(ChowClass { n, coeffs }, m, None))
}

/// `s(Z)^L = s(D)^L + s(R)^{O(D) ⊗ L}` for a Cartier divisor `D ⊂ Z` of degree
/// `deg_d` with residual `R`.
pub fn residual_combine(
    s_d: &TwistedSegreClass,
    s_r: &TwistedSegreClass,
    deg_d: i64,
) -> Result<TwistedSegreClass, ChowError> {
    let expected = s_d.twist + deg_d;
    if s_r.twist != expected {
        return Err(ChowError::TwistMismatch {
            expected,
            found: s_r.twist,
        });
    }
    Ok(TwistedSegreClass {
        cls: s_d.cls.add(&s_r.cls)?,
        twist: s_d.twist,
        degree: s_d.degree,
    })
}

/// Intersect with a general hyperplane: `a_i [P^{n-i}] ↦ a_i [P^{n-1-i}]`.
pub fn hyperplane_cut(c: &ChowClass) -> Result<ChowClass, ChowError> {
    if c.n == 0 {
        return Err(ChowError::PointAmbient);
    }
    Ok(ChowClass {
        n: c.n - 1,
        coeffs: c.coeffs[..c.n].to_vec(),
    })
}

/// Degree of the dimension `n - c` piece, i.e. the contribution of `Z` to the
/// intersection of `c` general members of the linear system.
pub fn excess_contribution(s: &TwistedSegreClass, c: usize) -> Result<i64, ChowError> {
    let n = s.ambient_dim();
    if c > n {
        return Err(ChowError::OutOfRange { index: c, n });
    }
    Ok(s.cls.coeff(c))
}

fn check_twist(s: &TwistedSegreClass, d: u32) -> Result<(), ChowError> {
    if d == 0 {
        return Err(ChowError::NonPositiveDegree);
    }
    if s.twist != -(d as i64) {
        return Err(ChowError::TwistMismatch {
            expected: -(d as i64),
            found: s.twist,
        });
    }
    Ok(())
}

/// `N_k = d^k - a_k`, the number of points of `X_1 ∩ .. ∩ X_k ∩ (general P^{n-k})`
/// off `Z`.
pub fn predicted_counts(s: &TwistedSegreClass, d: u32) -> Result<Vec<i64>, ChowError> {
    check_twist(s, d)?;
    Ok(s.cls
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, &a)| add(pow(d as i64, k), -a))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffectivityReport {
    pub effective: bool,
    pub offending: Vec<usize>,
}

pub fn effectivity_check(s: &TwistedSegreClass) -> EffectivityReport {
    let (effective, offending) = s.cls.effectivity();
    EffectivityReport {
        effective,
        offending,
    }
}

/// Nonnegative, no internal zeros, and `x_k^2 ≥ x_{k-1} x_{k+1}`.
pub fn is_log_concave(seq: &[i64]) -> bool {
    if seq.iter().any(|&x| x < 0) {
        return false;
    }
    let first = seq.iter().position(|&x| x != 0);
    let last = seq.iter().rposition(|&x| x != 0);
    if let (Some(a), Some(b)) = (first, last) {
        if seq[a..=b].contains(&0) {
            return false;
        }
    }
    seq.windows(3).all(|w| {
        let (x, y, z) = (w[0] as i128, w[1] as i128, w[2] as i128);
        y * y >= x * z
    })
}

pub fn huh_logconcavity_check(s: &TwistedSegreClass, d: u32) -> Result<bool, ChowError> {
    Ok(is_log_concave(&predicted_counts(s, d)?))
}

/// `s(Z ∨ P^m, P^{n+m+1})^{O(-d)}` from `s(Z, P^n)^{O(-d)}`.
pub fn join_class(s: &TwistedSegreClass, m: usize) -> Result<TwistedSegreClass, ChowError> {
    if s.twist >= 0 {
        return Err(ChowError::NonPositiveDegree);
    }
    let d = -s.twist;
    let n = s.ambient_dim();
    let big = n + m + 1;
    let mut coeffs = s.cls.coeffs.clone();
    coeffs.extend((0..=m).map(|j| pow(d, n + 1 + j)));
    Ok(TwistedSegreClass {
        cls: ChowClass { n: big, coeffs },
        twist: s.twist,
        degree: s.degree,
    })
}

/// The numerator `A(H)` of the Segre zeta function `A(H) / (1 + dH)^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegreZeta {
    pub d: u32,
    pub n: usize,
    /// `A_0..A_{n+1}`.
    pub numerator: Vec<i64>,
}

impl SegreZeta {
    pub fn is_nonnegative(&self) -> bool {
        self.numerator.iter().all(|&a| a >= 0)
    }
}

/// `A(H) = [(1+dH)^{n+1} S(H)]_n + d^{n+1} H^{n+1}` for the ordinary class `S`.
pub fn zeta_from_segre(s: &ChowClass, d: u32) -> Result<SegreZeta, ChowError> {
    if d == 0 {
        return Err(ChowError::NonPositiveDegree);
    }
    let n = s.n;
    let mut numerator = s.cap_linear_power(d as i64, n as i64 + 1).coeffs;
    numerator.push(pow(d as i64, n + 1));
    Ok(SegreZeta { d, n, numerator })
}

/// `A(H) / (1 + dH)^{n+1}` truncated at `H^big`: the ordinary Segre class of
/// the join of `Z` with a `P^{big-n-1}`.
pub fn zeta_expand(z: &SegreZeta, big: usize) -> Result<ChowClass, ChowError> {
    if big < z.n {
        return Err(ChowError::TargetTooSmall {
            target: big,
            source_dim: z.n,
        });
    }
    let len = big + 1;
    let denom = linear_power(z.d as i64, -(z.n as i64 + 1), len);
    Ok(ChowClass {
        n: big,
        coeffs: series_mul(&z.numerator, &denom, len),
    })
}

/// `c(TP^n) ∩ S = (1+H)^{n+1} ∩ S`.
pub fn fulton_class(s: &ChowClass) -> ChowClass {
    s.cap_linear_power(1, s.n as i64 + 1)
}

/// Flip the sign of odd-codimension components.
pub fn dual_class(c: &ChowClass) -> ChowClass {
    ChowClass {
        n: c.n,
        coeffs: c
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| if i % 2 == 0 { a } else { -a })
            .collect(),
    }
}
