//! Irreducible reduced root systems normalized so short roots have squared
//! length two, together with the lattices and pairings the constant-term
//! identities need.
//!
//! Realizations follow the ε-coordinate conventions used for the B/C
//! families (B_n short roots ±√2 εⱼ, C_n long roots ±2εⱼ, A₁ = {±√2 ε₁});
//! A_n (n ≥ 2) lives in the sum-zero hyperplane of ℝ^{n+1}.

use crate::{c, Complex};
use thiserror::Error;

const EQ_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G => "G",
        };
        write!(f, "{s}")
    }
}

/// The case (i)/(ii) decoration selecting u_α = 1 or u_α = 2/‖α‖².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum IdentityCase {
    I,
    II,
}

impl IdentityCase {
    /// u_α for a root of squared norm `norm_sq`; values are 1, 1/2 or 1/3.
    pub fn u(&self, norm_sq: f64) -> f64 {
        match self {
            IdentityCase::I => 1.0,
            IdentityCase::II => 2.0 / norm_sq,
        }
    }
}

impl std::fmt::Display for IdentityCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IdentityCase::I => write!(f, "i"),
            IdentityCase::II => write!(f, "ii"),
        }
    }
}

/// One multiplicity value per Weyl orbit (short / long).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Multiplicity {
    pub short: Complex,
    pub long: Complex,
}

impl Multiplicity {
    pub fn new(short: Complex, long: Complex) -> Self {
        Multiplicity { short, long }
    }

    /// Same value on both orbits (the only option for simply-laced systems).
    pub fn uniform(k: Complex) -> Self {
        Multiplicity { short: k, long: k }
    }
}

#[derive(Debug, Error)]
pub enum RootSystemError {
    #[error("unsupported family/rank: {family}{rank}")]
    UnsupportedFamily { family: Family, rank: usize },
    #[error("vectors have mismatched dimensions {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("zero vector has no coroot")]
    ZeroVector,
    #[error("vector is not a root of this system")]
    NotARoot,
}

/// An irreducible reduced root system with the paper's normalization.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    pub family: Family,
    pub rank: usize,
    /// Ambient dimension (rank, or rank+1 for A_n with n >= 2).
    pub ambient_dim: usize,
    /// All roots, positive first then their negatives in the same order.
    pub roots: Vec<Vec<f64>>,
    pub positive_roots: Vec<Vec<f64>>,
    /// Indices into `positive_roots` of the simple roots α₁..α_n.
    pub simple_indices: Vec<usize>,
    pub simple_roots: Vec<Vec<f64>>,
    pub fundamental_weights: Vec<Vec<f64>>,
    pub fundamental_coweights: Vec<Vec<f64>>,
    /// Cartan matrix a_ij = <α_i, α_j^vee>.
    pub cartan: Vec<Vec<i64>>,
    pub weyl_order: u64,
    /// f = #(P/Q) = |det(cartan)|.
    pub index_f: u64,
    /// Volume of the parallelepiped spanned by the fundamental coweights.
    pub coweight_jacobian: f64,
}

/// Real scalar product.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Complex bilinear (not sesquilinear) extension of the scalar product.
pub fn pairing(x: &[Complex], y: &[Complex]) -> Result<Complex, RootSystemError> {
    if x.len() != y.len() {
        return Err(RootSystemError::DimensionMismatch(x.len(), y.len()));
    }
    Ok(x.iter().zip(y).map(|(a, b)| a * b).sum())
}

/// Pairing of a real vector with a complex vector.
pub fn pairing_rc(x: &[f64], y: &[Complex]) -> Complex {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// α∨ = 2α/‖α‖².
pub fn coroot(alpha: &[f64]) -> Result<Vec<f64>, RootSystemError> {
    let n2 = dot(alpha, alpha);
    if n2 == 0.0 {
        return Err(RootSystemError::ZeroVector);
    }
    Ok(alpha.iter().map(|x| 2.0 * x / n2).collect())
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

fn vec_eq(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < EQ_TOL)
}

/// Solve the square system M x = rhs by Gaussian elimination with partial
/// pivoting; panics on a singular matrix (the Gram matrices here never are).
fn solve(m: &[Vec<f64>], rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut b = rhs.to_vec();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        assert!(a[piv][col].abs() > 1e-12, "singular Gram matrix");
        a.swap(piv, col);
        b.swap(piv, col);
        for row in col + 1..n {
            let r = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= r * a[col][k];
            }
            b[row] -= r * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut s = b[col];
        for k in col + 1..n {
            s -= a[col][k] * x[k];
        }
        x[col] = s / a[col][col];
    }
    x
}

fn integer_det(m: &[Vec<i64>]) -> i64 {
    // Bareiss algorithm (fraction-free), exact for the small Cartan matrices.
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&v| v as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n.saturating_sub(1) {
        if a[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| a[r][k] != 0);
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Construct the root system for the given family and rank.
///
/// Supported: A (n ≥ 1), B (n ≥ 2), C (n ≥ 2), D (n ≥ 4), G (n = 2).
pub fn build(family: Family, rank: usize) -> Result<RootSystemData, RootSystemError> {
    let unsupported = RootSystemError::UnsupportedFamily { family, rank };
    let sq2 = 2f64.sqrt();
    // simple roots and full positive system, per family
    let (ambient_dim, simple_roots, positive_roots, weyl_order): (
        usize,
        Vec<Vec<f64>>,
        Vec<Vec<f64>>,
        u64,
    ) = match (family, rank) {
        (Family::A, 1) => {
            let alpha = vec![sq2];
            (1, vec![alpha.clone()], vec![alpha], 2)
        }
        (Family::A, n) if n >= 2 => {
            let d = n + 1;
            let mut simple = Vec::new();
            for j in 0..n {
                let mut v = vec![0.0; d];
                v[j] = 1.0;
                v[j + 1] = -1.0;
                simple.push(v);
            }
            let mut pos = Vec::new();
            for i in 0..d {
                for j in (i + 1)..d {
                    let mut v = vec![0.0; d];
                    v[i] = 1.0;
                    v[j] = -1.0;
                    pos.push(v);
                }
            }
            (d, simple, pos, factorial(n + 1))
        }
        (Family::B, n) if n >= 2 => {
            let mut simple = Vec::new();
            for j in 0..n - 1 {
                let mut v = vec![0.0; n];
                v[j] = sq2;
                v[j + 1] = -sq2;
                simple.push(v);
            }
            let mut v = vec![0.0; n];
            v[n - 1] = sq2;
            simple.push(v);
            let mut pos = Vec::new();
            for j in 0..n {
                let mut v = vec![0.0; n];
                v[j] = sq2;
                pos.push(v); // short
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    for s in [1.0, -1.0] {
                        let mut v = vec![0.0; n];
                        v[i] = sq2;
                        v[j] = s * sq2;
                        pos.push(v); // long
                    }
                }
            }
            (n, simple, pos, (1u64 << n) * factorial(n))
        }
        (Family::C, n) if n >= 2 => {
            let mut simple = Vec::new();
            for j in 0..n - 1 {
                let mut v = vec![0.0; n];
                v[j] = 1.0;
                v[j + 1] = -1.0;
                simple.push(v);
            }
            let mut v = vec![0.0; n];
            v[n - 1] = 2.0;
            simple.push(v);
            let mut pos = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    for s in [1.0, -1.0] {
                        let mut v = vec![0.0; n];
                        v[i] = 1.0;
                        v[j] = s;
                        pos.push(v); // short
                    }
                }
            }
            for j in 0..n {
                let mut v = vec![0.0; n];
                v[j] = 2.0;
                pos.push(v); // long
            }
            (n, simple, pos, (1u64 << n) * factorial(n))
        }
        (Family::D, n) if n >= 4 => {
            let mut simple = Vec::new();
            for j in 0..n - 1 {
                let mut v = vec![0.0; n];
                v[j] = 1.0;
                v[j + 1] = -1.0;
                simple.push(v);
            }
            let mut v = vec![0.0; n];
            v[n - 2] = 1.0;
            v[n - 1] = 1.0;
            simple.push(v);
            let mut pos = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    for s in [1.0, -1.0] {
                        let mut v = vec![0.0; n];
                        v[i] = 1.0;
                        v[j] = s;
                        pos.push(v);
                    }
                }
            }
            (n, simple, pos, (1u64 << (n - 1)) * factorial(n))
        }
        (Family::G, 2) => {
            let a1 = vec![sq2, 0.0]; // short
            let a2 = vec![-3.0 / sq2, 1.5f64.sqrt()]; // long
            let pos = vec![
                a1.clone(),
                a2.clone(),
                add(&a1, &a2),
                add(&scale(&a1, 2.0), &a2),
                add(&scale(&a1, 3.0), &a2),
                add(&scale(&a1, 3.0), &scale(&a2, 2.0)),
            ];
            (2, vec![a1, a2], pos, 12)
        }
        _ => return Err(unsupported),
    };

    let n = rank;
    // locate simple roots inside the positive system
    let mut simple_indices = Vec::with_capacity(n);
    for s in &simple_roots {
        let idx = positive_roots
            .iter()
            .position(|r| vec_eq(r, s))
            .expect("simple root missing from positive system");
        simple_indices.push(idx);
    }

    // Cartan matrix
    let mut cartan = vec![vec![0i64; n]; n];
    for (i, row) in cartan.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let cr = coroot(&simple_roots[j]).expect("simple roots are nonzero");
            let v = dot(&simple_roots[i], &cr);
            let r = v.round();
            assert!((v - r).abs() < 1e-9, "non-integral Cartan entry {v}");
            *entry = r as i64;
        }
    }
    let index_f = integer_det(&cartan).unsigned_abs();

    // fundamental coweights: ω_i∨ = Σ_j (Gram(α)^{-1})_{ij} α_j, so that
    // <ω_i∨, α_j> = δ_ij (stays inside span(Σ) for the A_n hyperplane)
    let mut gram = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = dot(&simple_roots[i], &simple_roots[j]);
        }
    }
    let mut fundamental_coweights = Vec::with_capacity(n);
    for i in 0..n {
        let mut rhs = vec![0.0; n];
        rhs[i] = 1.0;
        let coeffs = solve(&gram, &rhs);
        let mut w = vec![0.0; ambient_dim];
        for (j, &cj) in coeffs.iter().enumerate() {
            w = add(&w, &scale(&simple_roots[j], cj));
        }
        fundamental_coweights.push(w);
    }

    // fundamental weights: same construction against the coroot Gram matrix
    let simple_coroots: Vec<Vec<f64>> = simple_roots
        .iter()
        .map(|a| coroot(a).expect("nonzero"))
        .collect();
    let mut gram_v = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram_v[i][j] = dot(&simple_coroots[i], &simple_coroots[j]);
        }
    }
    let mut fundamental_weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut rhs = vec![0.0; n];
        rhs[i] = 1.0;
        let coeffs = solve(&gram_v, &rhs);
        let mut w = vec![0.0; ambient_dim];
        for (j, &cj) in coeffs.iter().enumerate() {
            w = add(&w, &scale(&simple_coroots[j], cj));
        }
        fundamental_weights.push(w);
    }

    // coweight parallelepiped volume via the Gram determinant
    let mut gram_w = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram_w[i][j] = dot(&fundamental_coweights[i], &fundamental_coweights[j]);
        }
    }
    let coweight_jacobian = det_f64(&gram_w).max(0.0).sqrt();

    let mut roots = positive_roots.clone();
    roots.extend(positive_roots.iter().map(|r| scale(r, -1.0)));

    Ok(RootSystemData {
        family,
        rank,
        ambient_dim,
        roots,
        positive_roots,
        simple_indices,
        simple_roots,
        fundamental_weights,
        fundamental_coweights,
        cartan,
        weyl_order,
        index_f,
        coweight_jacobian,
    })
}

fn det_f64(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[piv][col].abs() < 1e-300 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..n {
            let r = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= r * a[col][k];
            }
        }
    }
    det
}

impl RootSystemData {
    /// Multiplicity value on the orbit of `alpha` (short <-> ‖α‖² = 2).
    pub fn k_of(&self, alpha: &[f64], k: &Multiplicity) -> Complex {
        if (dot(alpha, alpha) - 2.0).abs() < 1e-9 {
            k.short
        } else {
            k.long
        }
    }

    /// Whether the system has two root lengths.
    pub fn has_long_roots(&self) -> bool {
        self.positive_roots
            .iter()
            .any(|a| (dot(a, a) - 2.0).abs() > 1e-9)
    }

    /// δ_α: 1 exactly on the simple roots among the positive roots.
    pub fn is_simple(&self, pos_index: usize) -> bool {
        self.simple_indices.contains(&pos_index)
    }

    /// ρ_k = ½ Σ_{α>0} k_α α; equals Σ_j k_{α_j} ω_j.
    pub fn rho_k(&self, k: &Multiplicity) -> Vec<Complex> {
        let mut out = vec![c(0.0, 0.0); self.ambient_dim];
        for alpha in &self.positive_roots {
            let ka = self.k_of(alpha, k);
            for (o, &a) in out.iter_mut().zip(alpha) {
                *o += 0.5 * ka * a;
            }
        }
        out
    }

    /// (u_α, α′ = u_α·α); errors unless `alpha` is a root of the system.
    pub fn u_and_prime(
        &self,
        case: IdentityCase,
        alpha: &[f64],
    ) -> Result<(f64, Vec<f64>), RootSystemError> {
        if !self.roots.iter().any(|r| vec_eq(r, alpha)) {
            return Err(RootSystemError::NotARoot);
        }
        let u = case.u(dot(alpha, alpha));
        Ok((u, scale(alpha, u)))
    }

    /// All Σ mⱼ ωⱼ∨ with |mⱼ| <= radius; (2·radius+1)^n points.
    pub fn coweight_lattice_points(&self, radius: usize) -> Vec<Vec<f64>> {
        let n = self.rank;
        let side = 2 * radius + 1;
        let total = side.pow(n as u32);
        let mut out = Vec::with_capacity(total);
        for idx in 0..total {
            let mut rem = idx;
            let mut v = vec![0.0; self.ambient_dim];
            for j in 0..n {
                let m = (rem % side) as i64 - radius as i64;
                rem /= side;
                for (vd, &wd) in v.iter_mut().zip(&self.fundamental_coweights[j]) {
                    *vd += m as f64 * wd;
                }
            }
            out.push(v);
        }
        out
    }

    /// Point of V in λ-coordinates: v = Σ λⱼ ωⱼ∨.
    pub fn from_lambda(&self, lambda: &[f64]) -> Vec<f64> {
        let mut v = vec![0.0; self.ambient_dim];
        for (j, &l) in lambda.iter().enumerate() {
            for (vd, &wd) in v.iter_mut().zip(&self.fundamental_coweights[j]) {
                *vd += l * wd;
            }
        }
        v
    }

    /// Reflection of `v` in the hyperplane orthogonal to `alpha`.
    pub fn reflect(&self, v: &[f64], alpha: &[f64]) -> Vec<f64> {
        let t = 2.0 * dot(v, alpha) / dot(alpha, alpha);
        v.iter().zip(alpha).map(|(x, a)| x - t * a).collect()
    }
}
