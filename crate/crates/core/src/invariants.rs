//! The thirteen isotropic invariants of a symmetric third-order tensor,
//! expressed through its harmonic parts `(D, u)`.
//!
//! With `M_kl = D_ijk D_ijl`, `v_p = D_ijk D_ijl D_klp` and
//! `w_k = D_ijk u_i u_j`:
//!
//! | name | definition                      | degree | parity in `u` |
//! |------|---------------------------------|--------|---------------|
//! | I2   | `D_ijk D_ijk`                   | 2      | even |
//! | J2   | `u_i u_i`                       | 2      | even |
//! | I4   | `M_kl M_kl`                     | 4      | even |
//! | J4   | `u_k M_kl u_l`                  | 4      | even |
//! | K4   | `v_p u_p`                       | 4      | odd  |
//! | L4   | `D_ijk u_i u_j u_k`             | 4      | odd  |
//! | I6   | `v_i v_i`                       | 6      | even |
//! | J6   | `D_ijk D_ijl u_k D_lpq u_p u_q` | 6      | odd  |
//! | K6   | `v_k w_k`                       | 6      | even |
//! | L6   | `D_ijk D_ijl u_k v_l`           | 6      | odd  |
//! | M6   | `w_k w_k`                       | 6      | even |
//! | I8   | `D_ijk D_ijl u_k D_pql D_pqr v_r` | 8    | odd  |
//! | I10  | `D_ijk v_i v_j v_k`             | 10     | even |

use std::array;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::scalar::Scalar;
use crate::tensor::{decompose, Full3, HarmonicParts, Sym3Tensor, Traceless3Tensor, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Invariant {
    I2,
    J2,
    I4,
    J4,
    K4,
    L4,
    I6,
    J6,
    K6,
    L6,
    M6,
    I8,
    I10,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Invariant {
    pub const ALL: [Invariant; 13] = [
        Invariant::I2,
        Invariant::J2,
        Invariant::I4,
        Invariant::J4,
        Invariant::K4,
        Invariant::L4,
        Invariant::I6,
        Invariant::J6,
        Invariant::K6,
        Invariant::L6,
        Invariant::M6,
        Invariant::I8,
        Invariant::I10,
    ];

    /// The irreducible function basis: everything except K6 and I8.
    pub const ELEVEN: [Invariant; 11] = [
        Invariant::I2,
        Invariant::J2,
        Invariant::I4,
        Invariant::J4,
        Invariant::K4,
        Invariant::L4,
        Invariant::I6,
        Invariant::J6,
        Invariant::L6,
        Invariant::M6,
        Invariant::I10,
    ];

    /// Invariants of the deviator alone.
    pub const DEVIATOR_ONLY: [Invariant; 4] = [Invariant::I2, Invariant::I4, Invariant::I6, Invariant::I10];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Invariant::I2 => "I2",
            Invariant::J2 => "J2",
            Invariant::I4 => "I4",
            Invariant::J4 => "J4",
            Invariant::K4 => "K4",
            Invariant::L4 => "L4",
            Invariant::I6 => "I6",
            Invariant::J6 => "J6",
            Invariant::K6 => "K6",
            Invariant::L6 => "L6",
            Invariant::M6 => "M6",
            Invariant::I8 => "I8",
            Invariant::I10 => "I10",
        }
    }

    /// Total homogeneity degree in the tensor components.
    pub fn degree(self) -> u32 {
        match self {
            Invariant::I2 | Invariant::J2 => 2,
            Invariant::I4 | Invariant::J4 | Invariant::K4 | Invariant::L4 => 4,
            Invariant::I6 | Invariant::J6 | Invariant::K6 | Invariant::L6 | Invariant::M6 => 6,
            Invariant::I8 => 8,
            Invariant::I10 => 10,
        }
    }

    /// Degree in the vector part `u` alone.
    pub fn vector_degree(self) -> u32 {
        match self {
            Invariant::I2 | Invariant::I4 | Invariant::I6 | Invariant::I10 => 0,
            Invariant::K4 | Invariant::L6 | Invariant::I8 => 1,
            Invariant::J2 | Invariant::J4 | Invariant::K6 => 2,
            Invariant::L4 | Invariant::J6 => 3,
            Invariant::M6 => 4,
        }
    }

    /// Behaviour under `u → -u` with `D` fixed.
    pub fn parity(self) -> Parity {
        if self.vector_degree() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Invariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Invariant::ALL
            .into_iter()
            .find(|inv| inv.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown invariant {s:?}")))
    }
}

/// Values of all thirteen invariants, indexed by [`Invariant`].
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantVector<S> {
    values: [S; 13],
}

impl<S: Scalar> InvariantVector<S> {
    pub fn from_values(values: [S; 13]) -> Self {
        InvariantVector { values }
    }

    pub fn get(&self, inv: Invariant) -> &S {
        &self.values[inv.index()]
    }

    pub fn values(&self) -> &[S; 13] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (Invariant, &S)> {
        Invariant::ALL.into_iter().zip(self.values.iter())
    }

    pub fn map<T, F: Fn(&S) -> T>(&self, f: F) -> InvariantVector<T> {
        InvariantVector { values: array::from_fn(|n| f(&self.values[n])) }
    }
}

/// `M_kl = D_ijk D_ijl`
fn gram<S: Scalar>(d: &Full3<S>) -> [[S; 3]; 3] {
    array::from_fn(|k| {
        array::from_fn(|l| {
            let mut acc = S::zero();
            for i in 0..3 {
                for j in 0..3 {
                    acc = acc + d[i][j][k].clone() * d[i][j][l].clone();
                }
            }
            acc
        })
    })
}

fn mat_vec<S: Scalar>(m: &[[S; 3]; 3], x: &Vec3<S>) -> Vec3<S> {
    Vec3(array::from_fn(|i| (0..3).fold(S::zero(), |acc, j| acc + m[i][j].clone() * x.0[j].clone())))
}

fn v_from_full<S: Scalar>(d: &Full3<S>, m: &[[S; 3]; 3]) -> Vec3<S> {
    Vec3(array::from_fn(|p| {
        let mut acc = S::zero();
        for k in 0..3 {
            for l in 0..3 {
                acc = acc + m[k][l].clone() * d[k][l][p].clone();
            }
        }
        acc
    }))
}

/// `T_k = D_ijk x_i y_j`
fn contract_two<S: Scalar>(d: &Full3<S>, x: &Vec3<S>, y: &Vec3<S>) -> Vec3<S> {
    Vec3(array::from_fn(|k| {
        let mut acc = S::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc + d[i][j][k].clone() * x.0[i].clone() * y.0[j].clone();
            }
        }
        acc
    }))
}

fn frobenius<S: Scalar>(d: &Full3<S>) -> S {
    let mut acc = S::zero();
    for row in d {
        for col in row {
            for x in col {
                acc = acc + x.clone() * x.clone();
            }
        }
    }
    acc
}

/// `v_p = D_ijk D_ijℓ D_kℓp`
pub fn v_vector<S: Scalar>(d: &Traceless3Tensor<S>) -> Vec3<S> {
    let full = d.expand();
    v_from_full(&full, &gram(&full))
}

/// `w_k = D_ijk u_i u_j`
pub fn w_vector<S: Scalar>(d: &Traceless3Tensor<S>, u: &Vec3<S>) -> Vec3<S> {
    contract_two(&d.expand(), u, u)
}

pub fn all_invariants<S: Scalar>(h: &HarmonicParts<S>) -> InvariantVector<S> {
    let d = h.deviator.expand();
    let u = &h.vector;
    let m = gram(&d);
    let v = v_from_full(&d, &m);
    let w = contract_two(&d, u, u);
    let mu = mat_vec(&m, u);
    let mv = mat_vec(&m, &v);

    let i4 = (0..3).fold(S::zero(), |acc, k| {
        (0..3).fold(acc, |acc, l| acc + m[k][l].clone() * m[k][l].clone())
    });
    let i10 = contract_two(&d, &v, &v).dot(&v);

    InvariantVector {
        values: [
            frobenius(&d),
            u.norm_sq(),
            i4,
            mu.dot(u),
            v.dot(u),
            w.dot(u),
            v.norm_sq(),
            mu.dot(&w),
            v.dot(&w),
            mu.dot(&v),
            w.norm_sq(),
            mu.dot(&mv),
            i10,
        ],
    }
}

/// `(I2, I4, I6, I10)` of a deviator.
#[derive(Debug, Clone, PartialEq)]
pub struct SmithBao<S> {
    pub i2: S,
    pub i4: S,
    pub i6: S,
    pub i10: S,
}

pub fn smith_bao<S: Scalar>(d: &Traceless3Tensor<S>) -> SmithBao<S> {
    let full = d.expand();
    let m = gram(&full);
    let v = v_from_full(&full, &m);
    let i4 = (0..3).fold(S::zero(), |acc, k| {
        (0..3).fold(acc, |acc, l| acc + m[k][l].clone() * m[k][l].clone())
    });
    SmithBao { i2: frobenius(&full), i4, i6: v.norm_sq(), i10: contract_two(&full, &v, &v).dot(&v) }
}

pub fn invariants_of<S: Scalar>(a: &Sym3Tensor<S>) -> InvariantVector<S> {
    all_invariants(&decompose(a))
}
