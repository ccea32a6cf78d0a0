//! Segre classes from residual degrees.
//!
//! For `Z = V(I) ⊂ P^n` with `I` generated in degree `d`, intersect `k`
//! random degree-`d` elements of `I`, remove `Z` by saturating, and read off
//! the degree `N_k` of what is left. Then `d^k - N_k` is the coefficient of
//! `[P^{n-k}]` in `s(Z,P^n)^{O(-d)}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chow::{
    compose_twists, dual_class, fulton_class, tensor_twist, zeta_expand, zeta_from_segre,
    ChowClass, ChowError, TwistedSegreClass,
};
use crate::kernel::{seed_stream, Field, Ideal, KernelError, PolyRing, Polynomial};

pub const DEFAULT_MAX_RETRIES: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error("generator {index} has degree {degree}, above the job degree {d}")]
    NonEqualDegree { index: usize, degree: u32, d: u32 },
    #[error("the job degree must be positive")]
    ZeroDegree,
    #[error("residual scheme R_{k} still had excess dimension after {attempts} draw(s)")]
    RetryExhausted { k: usize, attempts: u32 },
    #[error("all partial derivatives vanish; use a field of characteristic 0")]
    ZeroGradient,
    #[error("target dimension {target} is below {n}")]
    TargetTooSmall { target: usize, n: usize },
}

/// An ideal presented in one degree `d`, with the randomness that drives
/// the residual computation.
#[derive(Clone, Debug)]
pub struct SegreJob<K: Field> {
    base: Ideal<K>,
    ideal: Ideal<K>,
    d: u32,
    seed: u64,
    max_retries: u32,
    names: Vec<String>,
}

impl<K: Field> SegreJob<K> {
    /// Generators of degree below `d` are replaced by their products with
    /// all monomials of the complementary degree, so the job always works
    /// with a spanning set of the degree-`d` piece of the ideal.
    pub fn new(base: Ideal<K>, d: u32, seed: u64) -> Result<Self, EngineError> {
        if d == 0 {
            return Err(EngineError::ZeroDegree);
        }
        let mut all_equal = true;
        for (index, g) in base.generators().iter().enumerate() {
            let degree = g.homogeneous_degree().expect("ideal generators are homogeneous");
            if degree > d {
                return Err(EngineError::NonEqualDegree { index, degree, d });
            }
            all_equal &= degree == d;
        }
        let ideal = if all_equal {
            base.clone()
        } else {
            base.regenerate(d)?
        };
        let names = (0..base.nvars()).map(|i| format!("x{i}")).collect();
        Ok(Self {
            base,
            ideal,
            d,
            seed,
            max_retries: DEFAULT_MAX_RETRIES,
            names,
        })
    }

    pub fn with_retries(mut self, max_retries: u32) -> Self {
        self.max_retries = max_retries;
        self
    }

    /// Variable names used when residual ideals are printed.
    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.base.nvars());
        self.names = names;
        self
    }

    pub fn base(&self) -> &Ideal<K> {
        &self.base
    }

    /// The degree-`d` presentation.
    pub fn ideal(&self) -> &Ideal<K> {
        &self.ideal
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn max_retries(&self) -> u32 {
        self.max_retries
    }

    /// `n`, for `Z ⊂ P^n`.
    pub fn ambient_dim(&self) -> usize {
        self.base.nvars() - 1
    }

    /// The same generators read in `P^big`, with the new variables appended.
    pub fn extended(&self, big: usize) -> Result<Self, EngineError> {
        let n = self.ambient_dim();
        if big < n {
            return Err(EngineError::TargetTooSmall { target: big, n });
        }
        let mut names = self.names.clone();
        for i in n + 1..=big {
            let mut name = format!("x{i}");
            while names.contains(&name) {
                name.push('_');
            }
            names.push(name);
        }
        Ok(Self::new(self.base.extend_variables(big + 1)?, self.d, self.seed)?
            .with_retries(self.max_retries)
            .with_names(names))
    }
}

/// One residual scheme `R_k = V((f_1..f_k) : I^∞)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualStep {
    pub k: usize,
    /// `None` for the empty scheme.
    pub proj_dim: Option<usize>,
    pub degree: u64,
    /// Redraws needed before `R_k` had the expected dimension.
    pub retries: u32,
    /// Generators of the saturated ideal.
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub n: usize,
    pub d: u32,
    pub seed: u64,
    pub field: String,
    /// `N_0..N_n`.
    pub counts: Vec<i64>,
    pub steps: Vec<ResidualStep>,
}

/// Stream for the shared first draw of `f_1..f_n`; redraws for `R_k` use
/// stream `(k << 32) | attempt`.
fn stream_for(k: usize, attempt: u32) -> u64 {
    if attempt == 0 {
        0
    } else {
        ((k as u64) << 32) | attempt as u64
    }
}

fn draw<K: Field>(
    ideal: &Ideal<K>,
    seed: u64,
    stream: u64,
    count: usize,
) -> Result<Vec<Polynomial<K::Elem>>, KernelError> {
    let mut rng = seed_stream(seed, stream);
    (0..count).map(|_| ideal.random_combination(&mut rng)).collect()
}

fn residual_step<K: Field>(
    job: &SegreJob<K>,
    k: usize,
    shared: &[Polynomial<K::Elem>],
) -> Result<(i64, ResidualStep), EngineError> {
    let n = job.ambient_dim();
    let ring = job.base.ring();
    for attempt in 0..=job.max_retries {
        let fs = if attempt == 0 {
            shared[..k].to_vec()
        } else {
            draw(&job.ideal, job.seed, stream_for(k, attempt), k)?
        };
        let sat = Ideal::new(ring, fs)?.saturate(&job.base)?;
        let h = sat.hilbert_data()?;
        match h.proj_dim() {
            Some(dim) if dim > n - k => continue,
            dim => {
                let count = if dim == Some(n - k) { h.degree as i64 } else { 0 };
                let generators = if sat.generators().iter().any(|g| g.is_constant()) {
                    vec!["1".to_string()]
                } else {
                    sat.generators()
                        .iter()
                        .map(|g| ring.format(g, &job.names))
                        .collect()
                };
                return Ok((
                    count,
                    ResidualStep {
                        k,
                        proj_dim: dim,
                        degree: h.degree,
                        retries: attempt,
                        generators,
                    },
                ));
            }
        }
    }
    Err(EngineError::RetryExhausted {
        k,
        attempts: job.max_retries + 1,
    })
}

/// `N_0..N_n` with `N_k = deg R_k` when `R_k` has dimension `n - k` and 0
/// otherwise. The `k` are evaluated in parallel.
pub fn residual_degrees<K: Field>(job: &SegreJob<K>) -> Result<ResidualReport, EngineError> {
    let n = job.ambient_dim();
    let shared = draw(&job.ideal, job.seed, stream_for(0, 0), n)?;
    let steps: Vec<(i64, ResidualStep)> = (1..=n)
        .into_par_iter()
        .map(|k| residual_step(job, k, &shared))
        .collect::<Result<_, _>>()?;
    let mut counts = vec![1i64];
    counts.extend(steps.iter().map(|(c, _)| *c));
    Ok(ResidualReport {
        n,
        d: job.d,
        seed: job.seed,
        field: job.base.ring().field().spec(),
        counts,
        steps: steps.into_iter().map(|(_, s)| s).collect(),
    })
}

/// `a_k = d^k - N_k`, the class `s(Z,P^n)^{O(-d)}`.
pub fn tensored_from_report(report: &ResidualReport) -> TwistedSegreClass {
    let d = report.d as i64;
    let coeffs = report
        .counts
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            d.checked_pow(k as u32)
                .and_then(|p| p.checked_sub(c))
                .expect("class coefficient overflows i64")
        })
        .collect();
    TwistedSegreClass::new(ChowClass::from_coeffs(coeffs), -d, Some(report.d))
}

pub fn tensored_segre<K: Field>(
    job: &SegreJob<K>,
) -> Result<(TwistedSegreClass, ResidualReport), EngineError> {
    let report = residual_degrees(job)?;
    Ok((tensored_from_report(&report), report))
}

pub fn segre_class<K: Field>(job: &SegreJob<K>) -> Result<ChowClass, EngineError> {
    Ok(tensored_segre(job)?.0.to_ordinary())
}

/// Ordinary Segre class of the join of `Z` with a `P^{big-n-1}` in `P^big`,
/// through the Segre zeta function of `Z`.
pub fn join_scheme_segre<K: Field>(job: &SegreJob<K>, big: usize) -> Result<ChowClass, EngineError> {
    let n = job.ambient_dim();
    if big < n {
        return Err(EngineError::TargetTooSmall { target: big, n });
    }
    let zeta = zeta_from_segre(&segre_class(job)?, job.d)?;
    Ok(zeta_expand(&zeta, big)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsmResult {
    pub class: ChowClass,
    pub euler_characteristic: i64,
    /// Set when computed over `F_p`, where the answer is only correct for
    /// large enough `p`.
    pub probabilistic: bool,
    /// Residual computation for the singularity subscheme; absent when the
    /// partial derivatives have no common zero.
    pub singular_report: Option<ResidualReport>,
}

/// Push-forward of `c_SM(X)` for the hypersurface `X = V(f) ⊂ P^n`:
/// `c(TP^n) ∩ (s(X) + s(JX)^{O(-X)}^∨)` with `JX` the singularity subscheme.
pub fn csm_hypersurface<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
    seed: u64,
) -> Result<CsmResult, EngineError> {
    csm_hypersurface_with(ring, f, seed, DEFAULT_MAX_RETRIES, None)
}

/// [`csm_hypersurface`] with a retry budget and variable names for the
/// residual report.
pub fn csm_hypersurface_with<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
    seed: u64,
    max_retries: u32,
    names: Option<Vec<String>>,
) -> Result<CsmResult, EngineError> {
    let hyper = Ideal::new(ring, vec![f.clone()])?;
    let ring = hyper.ring().clone();
    let f = &hyper.generators()[0];
    let e = f.homogeneous_degree().unwrap();
    if e == 0 {
        return Err(EngineError::ZeroDegree);
    }
    let n = ring.nvars() - 1;
    let ei = e as i64;

    // s(X, P^n) = e[P^{n-1}] / (1 + eH)
    let mut sx = vec![0i64; n + 1];
    let mut term = ei;
    for c in sx.iter_mut().skip(1) {
        *c = term;
        term = term.checked_mul(-ei).expect("class coefficient overflows i64");
    }
    let sx = ChowClass::from_coeffs(sx);

    let partials: Vec<_> = (0..=n)
        .map(|i| ring.derivative(f, i))
        .filter(|p| !p.is_zero())
        .collect();
    if partials.is_empty() {
        return Err(EngineError::ZeroGradient);
    }
    let (singular, report) = if partials.iter().any(|p| p.is_constant()) {
        (ChowClass::zero(n), None)
    } else {
        let jx = Ideal::new(&ring, partials)?;
        let mut job = SegreJob::new(jx, e - 1, seed)?.with_retries(max_retries);
        if let Some(names) = names {
            job = job.with_names(names);
        }
        let (t, report) = tensored_segre(&job)?;
        let t = compose_twists(&t, -1);
        debug_assert_eq!(t.twist, -ei);
        (dual_class(&t.cls), Some(report))
    };
    let class = fulton_class(&sx.add(&singular)?);
    Ok(CsmResult {
        euler_characteristic: class.coeff(n),
        class,
        probabilistic: ring.field().characteristic() != 0,
        singular_report: report,
    })
}

/// `s(Z,P^n)` straight from the counts `N_0..N_n`.
pub fn ordinary_from_counts(counts: &[i64], d: u32) -> ChowClass {
    let d = d as i64;
    let coeffs = counts
        .iter()
        .enumerate()
        .map(|(k, &c)| d.pow(k as u32) - c)
        .collect();
    tensor_twist(&ChowClass::from_coeffs(coeffs), d)
}
