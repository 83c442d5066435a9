//! Symmetric third-order 3D tensors, their harmonic split into a traceless
//! deviator plus a vector, and the action of the orthogonal group.
//!
//! Every contraction here goes through the full 27-entry array with plain
//! index loops; there are no multiplicity-weighted shortcuts.

use std::array;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Full `3×3×3` array indexed `[i][j][k]` with zero-based indices.
pub type Full3<S> = [[[S; 3]; 3]; 3];

/// Sorted index triples of the ten independent components, in storage order.
pub const SYM3_INDICES: [[usize; 3]; 10] = [
    [0, 0, 0],
    [0, 0, 1],
    [0, 0, 2],
    [0, 1, 1],
    [0, 1, 2],
    [0, 2, 2],
    [1, 1, 1],
    [1, 1, 2],
    [1, 2, 2],
    [2, 2, 2],
];

pub const SYM3_LABELS: [&str; 10] =
    ["A111", "A112", "A113", "A122", "A123", "A133", "A222", "A223", "A233", "A333"];

pub const TRACELESS_LABELS: [&str; 7] = ["D111", "D112", "D113", "D122", "D123", "D222", "D223"];

/// Positions of the seven independent deviator components inside the
/// ten-component symmetric ordering.
const TRACELESS_SLOTS: [usize; 7] = [0, 1, 2, 3, 4, 6, 7];

/// Storage slot of the component `(i, j, k)` in any index order.
pub fn sym3_slot(i: usize, j: usize, k: usize) -> usize {
    let mut t = [i, j, k];
    t.sort_unstable();
    match t {
        [0, 0, 0] => 0,
        [0, 0, 1] => 1,
        [0, 0, 2] => 2,
        [0, 1, 1] => 3,
        [0, 1, 2] => 4,
        [0, 2, 2] => 5,
        [1, 1, 1] => 6,
        [1, 1, 2] => 7,
        [1, 2, 2] => 8,
        [2, 2, 2] => 9,
        _ => panic!("index out of range: ({i}, {j}, {k})"),
    }
}

fn delta<S: Scalar>(a: usize, b: usize) -> S {
    if a == b {
        S::one()
    } else {
        S::zero()
    }
}

pub fn zeros_full<S: Scalar>() -> Full3<S> {
    array::from_fn(|_| array::from_fn(|_| array::from_fn(|_| S::zero())))
}

/// `u_k δ_ij + u_j δ_ik + u_i δ_jk`
fn isotropic_part<S: Scalar>(u: &Vec3<S>, i: usize, j: usize, k: usize) -> S {
    u.0[k].clone() * delta(i, j) + u.0[j].clone() * delta(i, k) + u.0[i].clone() * delta(j, k)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vec3<S>(pub [S; 3]);

impl<S: Scalar> Vec3<S> {
    pub fn new(entries: [S; 3]) -> Self {
        Vec3(entries)
    }

    pub fn zero() -> Self {
        Vec3(array::from_fn(|_| S::zero()))
    }

    pub fn dot(&self, other: &Self) -> S {
        (0..3).fold(S::zero(), |acc, i| acc + self.0[i].clone() * other.0[i].clone())
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self)
    }

    pub fn scale(&self, t: &S) -> Self {
        Vec3(array::from_fn(|i| self.0[i].clone() * t.clone()))
    }

    pub fn neg(&self) -> Self {
        Vec3(array::from_fn(|i| -self.0[i].clone()))
    }

    pub fn map<T, F: Fn(&S) -> T>(&self, f: F) -> Vec3<T> {
        Vec3(array::from_fn(|i| f(&self.0[i])))
    }
}

/// Fully symmetric third-order tensor stored as its ten independent
/// components `[A111, A112, A113, A122, A123, A133, A222, A223, A233, A333]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sym3Tensor<S> {
    components: [S; 10],
}

impl<S: Scalar> Sym3Tensor<S> {
    pub fn new(components: [S; 10]) -> Self {
        Sym3Tensor { components }
    }

    pub fn zero() -> Self {
        Sym3Tensor { components: array::from_fn(|_| S::zero()) }
    }

    pub fn components(&self) -> &[S; 10] {
        &self.components
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        &self.components[sym3_slot(i, j, k)]
    }

    pub fn expand(&self) -> Full3<S> {
        array::from_fn(|i| {
            array::from_fn(|j| array::from_fn(|k| self.components[sym3_slot(i, j, k)].clone()))
        })
    }

    /// Reads the independent components off a full array. Symmetry of the
    /// input is the caller's business; only sorted-index entries are read.
    pub fn from_full(full: &Full3<S>) -> Self {
        Sym3Tensor {
            components: array::from_fn(|n| {
                let [i, j, k] = SYM3_INDICES[n];
                full[i][j][k].clone()
            }),
        }
    }

    pub fn scale(&self, t: &S) -> Self {
        Sym3Tensor { components: array::from_fn(|n| self.components[n].clone() * t.clone()) }
    }

    /// `u_i = A_iℓℓ`
    pub fn trace_vector(&self) -> Vec3<S> {
        let full = self.expand();
        Vec3(array::from_fn(|i| (0..3).fold(S::zero(), |acc, l| acc + full[i][l][l].clone())))
    }

    pub fn map<T, F: Fn(&S) -> T>(&self, f: F) -> Sym3Tensor<T> {
        Sym3Tensor { components: array::from_fn(|n| f(&self.components[n])) }
    }
}

/// Symmetric traceless third-order tensor stored as
/// `[D111, D112, D113, D122, D123, D222, D223]`.
///
/// The remaining independent entries are fixed by tracelessness:
/// `D133 = -D111 - D122`, `D233 = -D112 - D222`, `D333 = -D113 - D223`.
#[derive(Debug, Clone, PartialEq)]
pub struct Traceless3Tensor<S> {
    components: [S; 7],
}

impl<S: Scalar> Traceless3Tensor<S> {
    pub fn new(components: [S; 7]) -> Self {
        Traceless3Tensor { components }
    }

    pub fn zero() -> Self {
        Traceless3Tensor { components: array::from_fn(|_| S::zero()) }
    }

    pub fn components(&self) -> &[S; 7] {
        &self.components
    }

    pub fn to_sym3(&self) -> Sym3Tensor<S> {
        let [d111, d112, d113, d122, d123, d222, d223] = self.components.clone();
        let d133 = -d111.clone() - d122.clone();
        let d233 = -d112.clone() - d222.clone();
        let d333 = -d113.clone() - d223.clone();
        Sym3Tensor::new([d111, d112, d113, d122, d123, d133, d222, d223, d233, d333])
    }

    pub fn expand(&self) -> Full3<S> {
        self.to_sym3().expand()
    }

    /// Accepts a symmetric tensor as a deviator if all three traces vanish
    /// (exactly, or within `FLOAT_TOL` in the float field).
    pub fn try_from_sym3(t: &Sym3Tensor<S>) -> Result<Self> {
        let traces = t.trace_vector();
        let worst = traces.0.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
        if traces.0.iter().any(|x| !x.is_negligible(&S::one())) {
            return Err(Error::NotTraceless(worst));
        }
        Ok(Traceless3Tensor { components: array::from_fn(|n| t.components[TRACELESS_SLOTS[n]].clone()) })
    }

    pub fn scale(&self, t: &S) -> Self {
        Traceless3Tensor { components: array::from_fn(|n| self.components[n].clone() * t.clone()) }
    }

    pub fn map<T, F: Fn(&S) -> T>(&self, f: F) -> Traceless3Tensor<T> {
        Traceless3Tensor { components: array::from_fn(|n| f(&self.components[n])) }
    }

    /// `D_ijk D_ijk`, summed over the full array.
    pub fn norm_sq(&self) -> S {
        let d = self.expand();
        let mut acc = S::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    acc = acc + d[i][j][k].clone() * d[i][j][k].clone();
                }
            }
        }
        acc
    }
}

/// The pair `(D, u)` of the harmonic decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicParts<S> {
    pub deviator: Traceless3Tensor<S>,
    pub vector: Vec3<S>,
}

impl<S: Scalar> HarmonicParts<S> {
    pub fn new(deviator: Traceless3Tensor<S>, vector: Vec3<S>) -> Self {
        HarmonicParts { deviator, vector }
    }

    pub fn zero() -> Self {
        HarmonicParts { deviator: Traceless3Tensor::zero(), vector: Vec3::zero() }
    }

    /// Same deviator, `u → -u`.
    pub fn flip_vector(&self) -> Self {
        HarmonicParts { deviator: self.deviator.clone(), vector: self.vector.neg() }
    }

    pub fn scale(&self, t: &S) -> Self {
        HarmonicParts { deviator: self.deviator.scale(t), vector: self.vector.scale(t) }
    }

    /// The ten evaluation variables: seven deviator components then `u`.
    pub fn variables(&self) -> [S; 10] {
        array::from_fn(|n| {
            if n < 7 {
                self.deviator.components[n].clone()
            } else {
                self.vector.0[n - 7].clone()
            }
        })
    }

    pub fn from_variables(vars: [S; 10]) -> Self {
        let [d0, d1, d2, d3, d4, d5, d6, u0, u1, u2] = vars;
        HarmonicParts {
            deviator: Traceless3Tensor::new([d0, d1, d2, d3, d4, d5, d6]),
            vector: Vec3([u0, u1, u2]),
        }
    }

    pub fn map<T, F: Fn(&S) -> T>(&self, f: F) -> HarmonicParts<T> {
        HarmonicParts { deviator: self.deviator.map(&f), vector: self.vector.map(&f) }
    }
}

/// `u_i = A_iℓℓ`, `D_ijk = A_ijk - (u_k δ_ij + u_j δ_ik + u_i δ_jk) / 5`.
pub fn decompose<S: Scalar>(a: &Sym3Tensor<S>) -> HarmonicParts<S> {
    let full = a.expand();
    let u = a.trace_vector();
    let fifth = S::from_ratio(1, 5);
    let d: Full3<S> = array::from_fn(|i| {
        array::from_fn(|j| {
            array::from_fn(|k| full[i][j][k].clone() - fifth.clone() * isotropic_part(&u, i, j, k))
        })
    });
    let sym = Sym3Tensor::from_full(&d);
    let deviator =
        Traceless3Tensor { components: array::from_fn(|n| sym.components[TRACELESS_SLOTS[n]].clone()) };
    HarmonicParts { deviator, vector: u }
}

/// Inverse of [`decompose`].
pub fn recompose<S: Scalar>(h: &HarmonicParts<S>) -> Sym3Tensor<S> {
    let d = h.deviator.expand();
    let fifth = S::from_ratio(1, 5);
    let a: Full3<S> = array::from_fn(|i| {
        array::from_fn(|j| {
            array::from_fn(|k| d[i][j][k].clone() + fifth.clone() * isotropic_part(&h.vector, i, j, k))
        })
    });
    Sym3Tensor::from_full(&a)
}

/// Orthogonal `3×3` matrix `q_ij`, validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Orthogonal3<S> {
    m: [[S; 3]; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetSign {
    Positive,
    Negative,
}

impl<S: Scalar> Orthogonal3<S> {
    pub fn new(m: [[S; 3]; 3]) -> Result<Self> {
        let mut worst = 0.0_f64;
        let mut ok = true;
        for i in 0..3 {
            for j in 0..3 {
                let g = (0..3).fold(S::zero(), |acc, k| acc + m[k][i].clone() * m[k][j].clone());
                let dev = g - delta::<S>(i, j);
                worst = worst.max(dev.to_f64().abs());
                ok &= dev.is_negligible(&S::one());
            }
        }
        if !ok {
            return Err(Error::NotOrthogonal(worst));
        }
        Ok(Orthogonal3 { m })
    }

    pub fn identity() -> Self {
        Orthogonal3 { m: array::from_fn(|i| array::from_fn(|j| delta(i, j))) }
    }

    pub fn neg_identity() -> Self {
        Orthogonal3 { m: array::from_fn(|i| array::from_fn(|j| -delta::<S>(i, j))) }
    }

    /// Signed permutation matrix sending basis vector `e_j` to
    /// `signs[j] · e_{perm[j]}`. Exact in any field.
    pub fn signed_permutation(perm: [usize; 3], signs: [i64; 3]) -> Result<Self> {
        let mut m: [[S; 3]; 3] = array::from_fn(|_| array::from_fn(|_| S::zero()));
        for j in 0..3 {
            m[perm[j]][j] = S::from_i64(signs[j]);
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &[[S; 3]; 3] {
        &self.m
    }

    pub fn det(&self) -> S {
        let m = &self.m;
        m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
            - m[0][1].clone() * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
            + m[0][2].clone() * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone())
    }

    /// Matrix product; orthogonality is re-checked.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let m = array::from_fn(|i| {
            array::from_fn(|j| {
                (0..3).fold(S::zero(), |acc, k| acc + self.m[i][k].clone() * other.m[k][j].clone())
            })
        });
        Self::new(m)
    }

    pub fn apply(&self, v: &Vec3<S>) -> Vec3<S> {
        Vec3(array::from_fn(|i| (0..3).fold(S::zero(), |acc, j| acc + self.m[i][j].clone() * v.0[j].clone())))
    }

    /// `out_abc = Σ q_ai q_bj q_ck t_ijk`
    pub fn rotate_full(&self, t: &Full3<S>) -> Full3<S> {
        let q = &self.m;
        array::from_fn(|a| {
            array::from_fn(|b| {
                array::from_fn(|c| {
                    let mut acc = S::zero();
                    for i in 0..3 {
                        for j in 0..3 {
                            for k in 0..3 {
                                acc = acc
                                    + q[a][i].clone() * q[b][j].clone() * q[c][k].clone() * t[i][j][k].clone();
                            }
                        }
                    }
                    acc
                })
            })
        })
    }
}

/// Push-forward of `t` under `q`.
pub fn rotate<S: Scalar>(t: &Sym3Tensor<S>, q: &Orthogonal3<S>) -> Sym3Tensor<S> {
    Sym3Tensor::from_full(&q.rotate_full(&t.expand()))
}

pub fn rotate_deviator<S: Scalar>(d: &Traceless3Tensor<S>, q: &Orthogonal3<S>) -> Traceless3Tensor<S> {
    let rotated = Sym3Tensor::from_full(&q.rotate_full(&d.expand()));
    Traceless3Tensor { components: array::from_fn(|n| rotated.components[TRACELESS_SLOTS[n]].clone()) }
}

pub fn random_sym3_with<S: Scalar, R: rand::Rng + ?Sized>(rng: &mut R, range: i64) -> Sym3Tensor<S> {
    Sym3Tensor::new(array::from_fn(|_| S::sample(rng, range)))
}

/// Ten independent components drawn uniformly from `[-range, range]`
/// (integers in the exact field, reals in the float field).
pub fn random_sym3<S: Scalar>(seed: u64, range: i64) -> Result<Sym3Tensor<S>> {
    if range < 0 {
        return Err(Error::InvalidArgument(format!("range must be nonnegative, got {range}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_sym3_with(&mut rng, range))
}

/// Random `(D, u)` with all ten variables drawn from `[-bound, bound]`.
pub fn random_harmonic_with<S: Scalar, R: rand::Rng + ?Sized>(rng: &mut R, bound: i64) -> HarmonicParts<S> {
    HarmonicParts::from_variables(array::from_fn(|_| S::sample(rng, bound)))
}

pub fn random_orthogonal_with<R: rand::Rng + ?Sized>(rng: &mut R, sign: DetSign) -> Orthogonal3<f64> {
    loop {
        let g: [[f64; 3]; 3] = array::from_fn(|_| array::from_fn(|_| StandardNormal.sample(rng)));
        // Gram-Schmidt on the columns; a positive R diagonal is the sign fix.
        let mut cols: [[f64; 3]; 3] = array::from_fn(|j| array::from_fn(|i| g[i][j]));
        let mut degenerate = false;
        for j in 0..3 {
            for p in 0..j {
                let proj: f64 = (0..3).map(|i| cols[j][i] * cols[p][i]).sum();
                for i in 0..3 {
                    cols[j][i] -= proj * cols[p][i];
                }
            }
            let norm = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-8 {
                degenerate = true;
                break;
            }
            cols[j].iter_mut().for_each(|x| *x /= norm);
        }
        if degenerate {
            continue;
        }
        let mut m: [[f64; 3]; 3] = array::from_fn(|i| array::from_fn(|j| cols[j][i]));
        let q = Orthogonal3 { m };
        let want_positive = sign == DetSign::Positive;
        if (q.det() > 0.0) != want_positive {
            // right-multiply by diag(-1, 1, 1)
            for row in m.iter_mut() {
                row[0] = -row[0];
            }
        }
        if let Ok(q) = Orthogonal3::new(m) {
            return q;
        }
    }
}

pub fn random_orthogonal(seed: u64, sign: DetSign) -> Orthogonal3<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_orthogonal_with(&mut rng, sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactScalar;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::from_ratio(n, d)
    }

    fn l6_witness() -> Sym3Tensor<ExactScalar> {
        let z = ExactScalar::zero;
        Sym3Tensor::new([q(3, 5), z(), z(), q(6, 5), z(), q(-4, 5), z(), q(1, 2), z(), q(-1, 2)])
    }

    #[test]
    fn expand_zero_and_orbit() {
        let zero = Sym3Tensor::<ExactScalar>::zero().expand();
        assert!(zero.iter().flatten().flatten().all(|x| x.is_zero()));

        let mut c: [ExactScalar; 10] = array::from_fn(|_| ExactScalar::zero());
        c[4] = q(1, 1);
        let full = Sym3Tensor::new(c).expand();
        let mut ones = 0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let distinct = i != j && j != k && i != k;
                    assert_eq!(full[i][j][k], if distinct { q(1, 1) } else { q(0, 1) });
                    ones += distinct as usize;
                }
            }
        }
        assert_eq!(ones, 6);
    }

    #[test]
    fn traceless_expansion_fills_dependent_entries() {
        let d = Traceless3Tensor::new([q(1, 1), q(0, 1), q(0, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
        let full = d.expand();
        for (i, j, k) in [(0, 2, 2), (2, 0, 2), (2, 2, 0)] {
            assert_eq!(full[i][j][k], q(-2, 1));
        }
        for i in 0..3 {
            let tr = (0..3).fold(ExactScalar::zero(), |a, l| a + full[i][l][l].clone());
            assert!(tr.is_zero());
        }
    }

    #[test]
    fn decompose_l6_witness() {
        let h = decompose(&l6_witness());
        assert_eq!(h.vector, Vec3([q(1, 1), q(0, 1), q(0, 1)]));
        assert_eq!(
            h.deviator.components(),
            &[q(0, 1), q(0, 1), q(0, 1), q(1, 1), q(0, 1), q(0, 1), q(1, 2)]
        );
        let full = h.deviator.expand();
        assert_eq!(full[0][2][2], q(-1, 1));
        assert_eq!(full[2][2][2], q(-1, 2));
        assert_eq!(recompose(&h), l6_witness());
    }

    #[test]
    fn recompose_pure_vector() {
        let h = HarmonicParts::new(Traceless3Tensor::zero(), Vec3([q(1, 1), q(0, 1), q(0, 1)]));
        let a = recompose(&h);
        let mut want: [ExactScalar; 10] = array::from_fn(|_| ExactScalar::zero());
        want[0] = q(3, 5);
        want[3] = q(1, 5);
        want[5] = q(1, 5);
        assert_eq!(a.components(), &want);
    }

    #[test]
    fn decompose_single_component() {
        let mut c: [ExactScalar; 10] = array::from_fn(|_| ExactScalar::zero());
        c[3] = q(1, 1);
        let a = Sym3Tensor::new(c);
        let h = decompose(&a);
        assert_eq!(h.vector, Vec3([q(1, 1), q(0, 1), q(0, 1)]));
        // D111 = 0 - 3/5, D122 = 1 - 1/5, D133 = -1/5
        assert_eq!(h.deviator.components()[0], q(-3, 5));
        assert_eq!(h.deviator.components()[3], q(4, 5));
        assert_eq!(h.deviator.to_sym3().components()[5], q(-1, 5));
        assert_eq!(recompose(&h), a);
    }

    #[test]
    fn try_from_sym3_rejects_traces() {
        assert!(matches!(Traceless3Tensor::try_from_sym3(&l6_witness()), Err(Error::NotTraceless(_))));
        let d = decompose(&l6_witness()).deviator;
        assert_eq!(Traceless3Tensor::try_from_sym3(&d.to_sym3()).unwrap(), d);
        let mut c = d.map(|x| x.to_f64()).to_sym3().components().clone();
        c[0] += 1e-9;
        assert!(Traceless3Tensor::try_from_sym3(&Sym3Tensor::new(c)).is_err());
    }

    #[test]
    fn rotate_by_identity_and_inversion() {
        let a = random_sym3::<ExactScalar>(11, 9).unwrap();
        assert_eq!(rotate(&a, &Orthogonal3::identity()), a);
        assert_eq!(rotate(&a, &Orthogonal3::neg_identity()), a.scale(&q(-1, 1)));
    }

    #[test]
    fn swap_axes_moves_a112_to_a122() {
        let mut c: [ExactScalar; 10] = array::from_fn(|_| ExactScalar::zero());
        c[1] = q(1, 1);
        let a = Sym3Tensor::new(c);
        let swap = Orthogonal3::signed_permutation([1, 0, 2], [1, 1, 1]).unwrap();
        let r = rotate(&a, &swap);
        for (n, x) in r.components().iter().enumerate() {
            assert_eq!(x, &if n == 3 { q(1, 1) } else { q(0, 1) }, "slot {}", SYM3_LABELS[n]);
        }
    }

    #[test]
    fn orthogonality_is_checked() {
        assert!(Orthogonal3::<f64>::new([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.1, 1.0]]).is_err());
        assert!(Orthogonal3::<ExactScalar>::new(array::from_fn(|i| {
            array::from_fn(|j| if i == j { q(2, 1) } else { q(0, 1) })
        }))
        .is_err());
    }

    #[test]
    fn random_orthogonal_determinant_signs() {
        for seed in 0..50 {
            let p = random_orthogonal(seed, DetSign::Positive);
            let n = random_orthogonal(seed, DetSign::Negative);
            assert!((p.det() - 1.0).abs() <= 1e-9);
            assert!((n.det() + 1.0).abs() <= 1e-9);
            let prod = p.compose(&n).unwrap();
            let m = prod.matrix();
            for i in 0..3 {
                for j in 0..3 {
                    let g: f64 = (0..3).map(|k| m[k][i] * m[k][j]).sum();
                    assert!((g - if i == j { 1.0 } else { 0.0 }).abs() <= 1e-11);
                }
            }
        }
        assert_eq!(random_orthogonal(5, DetSign::Positive), random_orthogonal(5, DetSign::Positive));
    }

    #[test]
    fn random_sym3_determinism_and_range() {
        assert_eq!(random_sym3::<ExactScalar>(9, 5).unwrap(), random_sym3::<ExactScalar>(9, 5).unwrap());
        assert_eq!(random_sym3::<f64>(9, 0).unwrap(), Sym3Tensor::zero());
        assert_eq!(random_sym3::<ExactScalar>(9, 0).unwrap(), Sym3Tensor::zero());
        assert!(random_sym3::<f64>(9, -1).is_err());
        let mut same = 0;
        for s in 0..100u64 {
            let a = random_sym3::<f64>(2 * s, 10).unwrap();
            let b = random_sym3::<f64>(2 * s + 1, 10).unwrap();
            same += (a == b) as usize;
            assert!(a.components().iter().all(|x| x.abs() <= 10.0));
        }
        assert_eq!(same, 0);
    }
}
