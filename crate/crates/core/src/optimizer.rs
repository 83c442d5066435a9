//! Numerical check of the inequality `2 I2 J2 - 3 J4 >= 0` and of the
//! constant 0.2 as the minimum of `2 I2 J2 - 3 J4` over `I2 = J2 = 1`.
//!
//! For fixed `D`, `J4 = uᵀ M(D) u` with `M_kl = D_ijk D_ijl`, so the best
//! unit `u` is the top eigenvector of `M` and the value is
//! `f(D) = 2 - 3 λ_max(M(D)) / I2(D)`. `f` is invariant under scaling of
//! `D`, and the search runs on the Euclidean unit sphere of the seven
//! independent deviator components with projected gradient steps and Armijo
//! backtracking.
//!
//! This is a multi-start local search. It can confirm that the minimum is
//! consistent with 0.2; it does not certify global optimality.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::invariants::{all_invariants, Invariant};
use crate::tensor::{Full3, HarmonicParts, Traceless3Tensor, Vec3};

/// Feasibility tolerance on `I2 = 1` and `J2 = 1`.
pub const FEASIBILITY_TOL: f64 = 1e-10;
/// Below this eigenvalue gap the reduced objective is treated as nonsmooth.
pub const EIGEN_GAP_TOL: f64 = 1e-8;
pub const GRADIENT_TOL: f64 = 1e-9;

const ARMIJO_STEP: f64 = 0.5;
const ARMIJO_SHRINK: f64 = 0.5;
const ARMIJO_SLOPE: f64 = 1e-4;
const MIN_STEP: f64 = 1e-20;
const RESTART_NOISE: f64 = 1e-6;

type Mat3 = [[f64; 3]; 3];
type Vec7 = [f64; 7];

/// A pair `(D, u)` with `I2 = J2 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasiblePoint {
    deviator: Traceless3Tensor<f64>,
    vector: Vec3<f64>,
}

impl FeasiblePoint {
    pub fn new(deviator: Traceless3Tensor<f64>, vector: Vec3<f64>) -> Result<Self> {
        let i2 = deviator.norm_sq();
        let j2 = vector.norm_sq();
        if (i2 - 1.0).abs() > FEASIBILITY_TOL || (j2 - 1.0).abs() > FEASIBILITY_TOL {
            return Err(Error::Infeasible(format!("I2 = {i2}, J2 = {j2}; both must be 1")));
        }
        Ok(FeasiblePoint { deviator, vector })
    }

    /// Rescales `D` and `u` onto the constraint set. Both must be nonzero.
    pub fn normalized(deviator: &Traceless3Tensor<f64>, vector: &Vec3<f64>) -> Result<Self> {
        let i2 = deviator.norm_sq();
        let j2 = vector.norm_sq();
        if i2 <= 0.0 || j2 <= 0.0 || !i2.is_finite() || !j2.is_finite() {
            return Err(Error::Infeasible("cannot normalize a zero deviator or vector".into()));
        }
        Self::new(deviator.scale(&(1.0 / i2.sqrt())), vector.scale(&(1.0 / j2.sqrt())))
    }

    pub fn deviator(&self) -> &Traceless3Tensor<f64> {
        &self.deviator
    }

    pub fn vector(&self) -> &Vec3<f64> {
        &self.vector
    }
}

/// `2 I2 J2 - 3 J4` at a feasible point.
pub fn objective(p: &FeasiblePoint) -> Result<f64> {
    let i2 = p.deviator.norm_sq();
    let j2 = p.vector.norm_sq();
    if (i2 - 1.0).abs() > FEASIBILITY_TOL || (j2 - 1.0).abs() > FEASIBILITY_TOL {
        return Err(Error::Infeasible(format!("I2 = {i2}, J2 = {j2}")));
    }
    let v = all_invariants(&HarmonicParts::new(p.deviator.clone(), p.vector.clone()));
    Ok(2.0 * v.get(Invariant::I2) * v.get(Invariant::J2) - 3.0 * v.get(Invariant::J4))
}

/// `J4` written as `Σ_ij (D_ijk u_k)²`.
pub fn j4_sum_of_squares(d: &Traceless3Tensor<f64>, u: &Vec3<f64>) -> f64 {
    let du = contract_last(&d.expand(), &u.0);
    du.iter().flatten().map(|x| x * x).sum()
}

/// `(D·e)_ij = D_ijk e_k`
fn contract_last(d: &Full3<f64>, e: &[f64; 3]) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| d[i][j][k] * e[k]).sum()))
}

fn gram(d: &Full3<f64>) -> Mat3 {
    let mut m = [[0.0; 3]; 3];
    for (k, row) in m.iter_mut().enumerate() {
        for (l, x) in row.iter_mut().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    *x += d[i][j][k] * d[i][j][l];
                }
            }
        }
    }
    m
}

/// Eigen-decomposition of a symmetric 3×3 matrix by cyclic Jacobi rotations.
/// Eigenvalues are sorted in decreasing order; column `n` of the returned
/// matrix is the eigenvector for value `n`.
pub fn symmetric_eigen(m: &Mat3) -> ([f64; 3], Mat3) {
    let mut a = *m;
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for _sweep in 0..64 {
        let off = a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2);
        let diag = a[0][0].powi(2) + a[1][1].powi(2) + a[2][2].powi(2);
        if off <= 1e-32 * diag || off == 0.0 {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            if a[p][q] == 0.0 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let t = if theta == 0.0 { 1.0 } else { t };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            for k in 0..3 {
                let akp = a[k][p];
                let akq = a[k][q];
                a[k][p] = c * akp - s * akq;
                a[k][q] = s * akp + c * akq;
            }
            for k in 0..3 {
                let apk = a[p][k];
                let aqk = a[q][k];
                a[p][k] = c * apk - s * aqk;
                a[q][k] = s * apk + c * aqk;
            }
            for row in v.iter_mut() {
                let vp = row[p];
                let vq = row[q];
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
    }
    let mut order = [0, 1, 2];
    order.sort_by(|&x, &y| a[y][y].total_cmp(&a[x][x]));
    let values = order.map(|n| a[n][n]);
    let vectors = std::array::from_fn(|r| std::array::from_fn(|c| v[r][order[c]]));
    (values, vectors)
}

#[derive(Debug, Clone, PartialEq)]
pub struct InnerSolution {
    /// Unit top eigenvector of `M(D)`.
    pub u: Vec3<f64>,
    pub lambda_max: f64,
    /// `λ_max - λ_second`.
    pub gap: f64,
    /// `2 - 3 λ_max / I2`.
    pub value: f64,
}

/// Best unit `u` for a fixed nonzero deviator.
pub fn inner_solve_u(d: &Traceless3Tensor<f64>) -> InnerSolution {
    let full = d.expand();
    let i2 = d.norm_sq();
    let (values, vectors) = symmetric_eigen(&gram(&full));
    let u = Vec3::new([vectors[0][0], vectors[1][0], vectors[2][0]]);
    InnerSolution { u, lambda_max: values[0], gap: values[0] - values[1], value: 2.0 - 3.0 * values[0] / i2 }
}

fn basis_deviators() -> [Full3<f64>; 7] {
    std::array::from_fn(|a| {
        let mut c = [0.0; 7];
        c[a] = 1.0;
        Traceless3Tensor::new(c).expand()
    })
}

/// Reduced objective and its gradient with respect to the seven independent
/// components, plus the eigenvalue gap.
pub fn reduced_value_and_gradient(x: &Vec7) -> (f64, Vec7, f64) {
    let d = Traceless3Tensor::new(*x);
    let full = d.expand();
    let i2 = d.norm_sq();
    let (values, vectors) = symmetric_eigen(&gram(&full));
    let lambda = values[0];
    let e = [vectors[0][0], vectors[1][0], vectors[2][0]];
    let de = contract_last(&full, &e);
    let basis = basis_deviators();
    let mut grad = [0.0; 7];
    for (a, ea) in basis.iter().enumerate() {
        let eae = contract_last(ea, &e);
        let mut dl = 0.0;
        let mut di2 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                dl += 2.0 * eae[i][j] * de[i][j];
                for k in 0..3 {
                    di2 += 2.0 * ea[i][j][k] * full[i][j][k];
                }
            }
        }
        grad[a] = -3.0 * (dl * i2 - lambda * di2) / (i2 * i2);
    }
    (2.0 - 3.0 * lambda / i2, grad, values[0] - values[1])
}

fn norm(x: &Vec7) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn normalize(x: &Vec7) -> Vec7 {
    let n = norm(x);
    x.map(|v| v / n)
}

fn project(g: &Vec7, x: &Vec7) -> Vec7 {
    let dot: f64 = g.iter().zip(x).map(|(a, b)| a * b).sum();
    std::array::from_fn(|n| g[n] - dot * x[n])
}

/// Sphere-projected gradient of the reduced objective at a unit vector.
pub fn projected_gradient(x: &Vec7) -> Vec7 {
    project(&reduced_value_and_gradient(x).1, x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: FeasiblePoint,
    pub value: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
    pub restarts: usize,
    /// Which start produced this point (0 for a single descent).
    pub start: usize,
}

/// Projected gradient descent from `start` for at most `iters` steps.
/// `rng` supplies the perturbation used when the top eigenvalue is nearly
/// repeated.
pub fn descend<R: Rng + ?Sized>(start: &Traceless3Tensor<f64>, iters: usize, rng: &mut R) -> Result<Minimum> {
    if norm(start.components()) == 0.0 {
        return Err(Error::InvalidArgument("starting deviator is zero".into()));
    }
    let mut x = normalize(start.components());
    let mut restarts = 0;
    let mut iterations = 0;
    let (mut f, mut g, mut gap) = reduced_value_and_gradient(&x);
    let mut pg = project(&g, &x);
    while iterations < iters {
        if gap < EIGEN_GAP_TOL {
            let noise: Vec7 = std::array::from_fn(|n| x[n] + RESTART_NOISE * rng.sample::<f64, _>(StandardNormal));
            x = normalize(&noise);
            restarts += 1;
            iterations += 1;
            (f, g, gap) = reduced_value_and_gradient(&x);
            pg = project(&g, &x);
            continue;
        }
        let gn2: f64 = pg.iter().map(|v| v * v).sum();
        if gn2.sqrt() <= GRADIENT_TOL {
            break;
        }
        iterations += 1;
        let mut t = ARMIJO_STEP;
        let mut moved = false;
        while t >= MIN_STEP {
            let y = normalize(&std::array::from_fn(|n| x[n] - t * pg[n]));
            let (fy, gy, gapy) = reduced_value_and_gradient(&y);
            if fy <= f - ARMIJO_SLOPE * t * gn2 {
                x = y;
                (f, g, gap) = (fy, gy, gapy);
                pg = project(&g, &x);
                moved = true;
                break;
            }
            t *= ARMIJO_SHRINK;
        }
        if !moved {
            break;
        }
    }
    let d = Traceless3Tensor::new(x);
    let inner = inner_solve_u(&d);
    let point = FeasiblePoint::normalized(&d, &inner.u)?;
    Ok(Minimum { point, value: f, gradient_norm: norm(&pg), iterations, restarts, start: 0 })
}

fn start_rng(seed: u64, start: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(start as u64);
    rng
}

/// Multi-start search. Start `n` draws its initial deviator and any restart
/// noise from stream `n` of a generator seeded with `seed`, so the result
/// does not depend on how starts are scheduled.
pub fn minimize(seed: u64, starts: usize, iters: usize) -> Result<Minimum> {
    if starts == 0 || iters == 0 {
        return Err(Error::InvalidArgument("starts and iters must both be at least 1".into()));
    }
    let results: Vec<Minimum> = (0..starts)
        .into_par_iter()
        .map(|n| {
            let mut rng = start_rng(seed, n);
            let x: Vec7 = std::array::from_fn(|_| rng.sample(StandardNormal));
            let mut m = descend(&Traceless3Tensor::new(x), iters, &mut rng)?;
            m.start = n;
            Ok(m)
        })
        .collect::<Result<_>>()?;
    Ok(results
        .into_iter()
        .min_by(|a, b| a.value.total_cmp(&b.value).then(a.start.cmp(&b.start)))
        .expect("at least one start"))
}

/// A random point with `D` and `u` each drawn from a standard normal and
/// normalized.
pub fn random_feasible<R: Rng + ?Sized>(rng: &mut R) -> FeasiblePoint {
    loop {
        let d: Vec7 = std::array::from_fn(|_| rng.sample(StandardNormal));
        let u: [f64; 3] = std::array::from_fn(|_| rng.sample(StandardNormal));
        if let Ok(p) = FeasiblePoint::normalized(&Traceless3Tensor::new(d), &Vec3::new(u)) {
            return p;
        }
    }
}

/// Smallest objective value over `count` random feasible points.
pub fn sampled_minimum(seed: u64, count: usize) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    for _ in 0..count {
        best = best.min(objective(&random_feasible(&mut rng))?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_deviator(rng: &mut ChaCha8Rng) -> Traceless3Tensor<f64> {
        Traceless3Tensor::new(std::array::from_fn(|_| rng.sample(StandardNormal)))
    }

    #[test]
    fn jacobi_diagonalizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let d = random_deviator(&mut rng);
            let m = gram(&d.expand());
            let (values, vectors) = symmetric_eigen(&m);
            assert!(values[0] >= values[1] && values[1] >= values[2]);
            for c in 0..3 {
                for r in 0..3 {
                    let mv: f64 = (0..3).map(|k| m[r][k] * vectors[k][c]).sum();
                    assert!((mv - values[c] * vectors[r][c]).abs() < 1e-12 * (1.0 + values[0]));
                }
            }
        }
    }

    #[test]
    fn infeasible_points_are_rejected() {
        let d = Traceless3Tensor::new([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let u = Vec3::new([1.0, 0.0, 0.0]);
        assert!(FeasiblePoint::new(d.clone(), u.clone()).is_err());
        let p = FeasiblePoint::normalized(&d, &u).unwrap();
        assert!(objective(&p).is_ok());
        assert!(FeasiblePoint::normalized(&Traceless3Tensor::zero(), &u).is_err());
    }

    #[test]
    fn descent_is_deterministic() {
        let a = minimize(3, 4, 50).unwrap();
        let b = minimize(3, 4, 50).unwrap();
        assert_eq!(a, b);
        assert!(minimize(3, 0, 10).is_err());
    }
}
