//! Example states, random test states and explicit separable ensembles.
//!
//! Random generation uses `ChaCha8Rng` from `rand_chacha`, seeded with
//! `seed_from_u64`, so a given seed produces the same state on every platform.
//! Complex Gaussian entries are pairs of independent standard normals.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Result};
use crate::linalg::{kron, kron_all, ComplexMatrix, DensityMatrix};

/// The seeded generator used throughout the crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The 2⊗4 bound entangled state with parameter `b ∈ (0, 1)`.
///
/// Basis order is `|i⟩⊗|j⟩ ↦ 4i + j`.
pub fn horodecki_2x4(b: f64) -> Result<DensityMatrix> {
    if !(b > 0.0 && b < 1.0) {
        return invalid(format!("b must lie in (0, 1), got {b}"));
    }
    let mut m = ComplexMatrix::zeros(8, 8);
    for i in 0..8 {
        m[(i, i)] = re(b);
    }
    for (i, j) in [(0, 5), (1, 6), (2, 7)] {
        m[(i, j)] = re(b);
        m[(j, i)] = re(b);
    }
    let diag = (1.0 + b) / 2.0;
    let off = (1.0 - b * b).sqrt() / 2.0;
    m[(4, 4)] = re(diag);
    m[(7, 7)] = re(diag);
    m[(4, 7)] = re(off);
    m[(7, 4)] = re(off);
    Ok(DensityMatrix::new_unchecked(m.scale_real(1.0 / (7.0 * b + 1.0)), vec![2, 4]))
}

/// `|ξ⟩⟨ξ|` with `|ξ⟩ = (|00⟩ + |11⟩)/√2` in `C² ⊗ C⁴`.
pub fn xi_state() -> DensityMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut ket = vec![re(0.0); 8];
    ket[0] = re(h);
    ket[5] = re(h);
    DensityMatrix::new_unchecked(ComplexMatrix::outer(&ket), vec![2, 4])
}

/// `x σ + (1 - x) ρ` for `x ∈ [0, 1]`.
pub fn mix(x: f64, sigma: &DensityMatrix, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&x) {
        return invalid(format!("mixing weight must lie in [0, 1], got {x}"));
    }
    if sigma.dims() != rho.dims() {
        return invalid(format!("dimension mismatch: {:?} vs {:?}", sigma.dims(), rho.dims()));
    }
    let m = &sigma.matrix().scale_real(x) + &rho.matrix().scale_real(1.0 - x);
    Ok(DensityMatrix::new_unchecked(m, rho.dims().to_vec()))
}

/// `(|0…0⟩ + |1…1⟩)/√2` on `n ≥ 2` qubits.
pub fn ghz(n: usize) -> Result<DensityMatrix> {
    if n < 2 {
        return invalid(format!("GHZ state needs at least 2 qubits, got {n}"));
    }
    let dim = 1usize << n;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut ket = vec![re(0.0); dim];
    ket[0] = re(h);
    ket[dim - 1] = re(h);
    Ok(DensityMatrix::new_unchecked(ComplexMatrix::outer(&ket), vec![2; n]))
}

/// `|Φ+⟩⟨Φ+|` on two qubits.
pub fn bell() -> DensityMatrix {
    ghz(2).expect("two qubits")
}

/// Tensor product of single- or multi-party states, dimensions concatenated.
pub fn product(factors: &[DensityMatrix]) -> Result<DensityMatrix> {
    if factors.is_empty() {
        return invalid("product of an empty list of states");
    }
    let m = kron_all(factors.iter().map(DensityMatrix::matrix));
    let dims = factors.iter().flat_map(|f| f.dims().iter().copied()).collect();
    Ok(DensityMatrix::new_unchecked(m, dims))
}

fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return invalid(format!("every dimension must be at least 2, got {dims:?}"));
    }
    Ok(())
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unit vector: a normalized complex Gaussian vector.
pub fn random_ket(d: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}

/// Random pure state on a space with subsystem dimensions `dims`.
pub fn random_pure_with(dims: &[usize], rng: &mut impl Rng) -> Result<DensityMatrix> {
    check_dims(dims)?;
    let d = dims.iter().product();
    Ok(DensityMatrix::new_unchecked(ComplexMatrix::outer(&random_ket(d, rng)), dims.to_vec()))
}

pub fn random_pure(dims: &[usize], seed: u64) -> Result<DensityMatrix> {
    random_pure_with(dims, &mut rng_from_seed(seed))
}

/// Random mixed state `G G† / Tr(G G†)` with a square complex Gaussian `G`.
pub fn random_density_with(dims: &[usize], rng: &mut impl Rng) -> Result<DensityMatrix> {
    check_dims(dims)?;
    let d: usize = dims.iter().product();
    let g = ComplexMatrix::from_fn(d, d, |_, _| gaussian(rng));
    let gg = g.matmul(&g.adjoint());
    let tr = gg.trace().re;
    let mut m = gg.scale_real(1.0 / tr);
    for i in 0..d {
        m[(i, i)] = re(m[(i, i)].re);
    }
    Ok(DensityMatrix::new_unchecked(m, dims.to_vec()))
}

pub fn random_density(dims: &[usize], seed: u64) -> Result<DensityMatrix> {
    random_density_with(dims, &mut rng_from_seed(seed))
}

/// Random pure product state `|ψ_1⟩⊗…⊗|ψ_N⟩`.
pub fn random_pure_product_with(dims: &[usize], rng: &mut impl Rng) -> Result<DensityMatrix> {
    check_dims(dims)?;
    let factors: Vec<Vec<Complex64>> = dims.iter().map(|&d| random_ket(d, rng)).collect();
    Ok(DensityMatrix::new_unchecked(ComplexMatrix::outer(&kron_kets(&factors)), dims.to_vec()))
}

fn kron_kets(factors: &[Vec<Complex64>]) -> Vec<Complex64> {
    factors.iter().fold(vec![re(1.0)], |acc, f| acc.iter().flat_map(|a| f.iter().map(move |b| a * b)).collect())
}

/// A convex combination of pure product states, `Σ p_i |ψ_i^1,…,ψ_i^N⟩⟨…|`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableEnsemble {
    pub dims: Vec<usize>,
    pub weights: Vec<f64>,
    /// `terms[i][k]` is the pure state of party `k` in term `i`.
    pub terms: Vec<Vec<Vec<Complex64>>>,
}

impl SeparableEnsemble {
    pub fn new(dims: Vec<usize>, weights: Vec<f64>, terms: Vec<Vec<Vec<Complex64>>>) -> Result<Self> {
        check_dims(&dims)?;
        if weights.len() != terms.len() || weights.is_empty() {
            return invalid("need one weight per term and at least one term");
        }
        if weights.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return invalid("weights must lie in [0, 1]");
        }
        if (weights.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return invalid("weights must sum to 1");
        }
        for term in &terms {
            if term.len() != dims.len() || term.iter().zip(&dims).any(|(k, &d)| k.len() != d) {
                return invalid("term factors do not match the subsystem dimensions");
            }
            for k in term {
                let n = k.iter().map(|z| z.norm_sqr()).sum::<f64>();
                if (n - 1.0).abs() > 1e-10 {
                    return invalid("term factors must be unit vectors");
                }
            }
        }
        Ok(Self { dims, weights, terms })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The density matrix of the mixture.
    pub fn assemble(&self) -> DensityMatrix {
        let d: usize = self.dims.iter().product();
        let mut m = ComplexMatrix::zeros(d, d);
        for (p, term) in self.weights.iter().zip(&self.terms) {
            m = &m + &ComplexMatrix::outer(&kron_kets(term)).scale_real(*p);
        }
        for i in 0..d {
            m[(i, i)] = re(m[(i, i)].re);
        }
        DensityMatrix::new_unchecked(m, self.dims.clone())
    }
}

/// Uniform weights on the simplex: normalized `-ln u` for uniform `u`.
fn dirichlet_weights(k: usize, rng: &mut impl Rng) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// `k_terms` random pure product terms with Dirichlet(1) weights.
pub fn random_separable_with(
    dims: &[usize],
    k_terms: usize,
    rng: &mut impl Rng,
) -> Result<(SeparableEnsemble, DensityMatrix)> {
    check_dims(dims)?;
    if k_terms == 0 {
        return invalid("a separable ensemble needs at least one term");
    }
    let weights = dirichlet_weights(k_terms, rng);
    let terms = (0..k_terms).map(|_| dims.iter().map(|&d| random_ket(d, rng)).collect()).collect();
    let ensemble = SeparableEnsemble { dims: dims.to_vec(), weights, terms };
    let rho = ensemble.assemble();
    Ok((ensemble, rho))
}

pub fn random_separable(dims: &[usize], k_terms: usize, seed: u64) -> Result<(SeparableEnsemble, DensityMatrix)> {
    random_separable_with(dims, k_terms, &mut rng_from_seed(seed))
}

/// A one-parameter family `x ↦ x σ + (1 - x) ρ`, `x ∈ [0, 1]`.
#[derive(Debug, Clone)]
pub struct StateFamily {
    pub name: String,
    /// Fixed parameters, for reports.
    pub params: Vec<(String, f64)>,
    at_one: DensityMatrix,
    at_zero: DensityMatrix,
}

impl StateFamily {
    pub fn linear(name: impl Into<String>, at_one: DensityMatrix, at_zero: DensityMatrix) -> Result<Self> {
        if at_one.dims() != at_zero.dims() {
            return invalid(format!("dimension mismatch: {:?} vs {:?}", at_one.dims(), at_zero.dims()));
        }
        Ok(Self { name: name.into(), params: Vec::new(), at_one, at_zero })
    }

    /// `ρ_x = x |ξ⟩⟨ξ| + (1 - x) ρ_b` with the 2⊗4 bound entangled state.
    pub fn horodecki_mix(b: f64) -> Result<Self> {
        let mut f = Self::linear("horodecki-mix", xi_state(), horodecki_2x4(b)?)?;
        f.params.push(("b".into(), b));
        Ok(f)
    }

    pub fn dims(&self) -> &[usize] {
        self.at_zero.dims()
    }

    pub fn at(&self, x: f64) -> Result<DensityMatrix> {
        mix(x, &self.at_one, &self.at_zero)
    }

    pub fn describe(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let p: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.name, p.join(", "))
    }
}

/// `ρ_A ⊗ ρ_B` convenience for two parties.
pub fn product2(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    let dims = a.dims().iter().chain(b.dims()).copied().collect();
    DensityMatrix::new_unchecked(kron(a.matrix(), b.matrix()), dims)
}
