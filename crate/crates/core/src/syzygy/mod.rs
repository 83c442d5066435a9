//! Linear relations among products of invariants.
//!
//! A relation is a finite sum `Σ c_t · Π_t` of same-degree invariant
//! products with exact rational coefficients that vanishes for every tensor.
//! Relations are checked by exact evaluation at random rational points: a
//! nonzero polynomial of degree `≤ 16` vanishes at a uniform point of an
//! integer box of side `2·10^6` with probability at most `16 / (2·10^6)`, so
//! twenty independent exact zeros leave no practical doubt.

mod builtin;
mod discover;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use builtin::{builtin_relations, i8_relation, k6_relation};
pub use discover::{discover_relations, Discovery, DiscoveryConfig};

use crate::error::{Error, Result};
use crate::exact::{nullspace, RationalMatrix};
use crate::invariants::{all_invariants, Invariant, InvariantVector};
use crate::scalar::{parse_ratio, ExactScalar, Scalar};
use crate::tensor::HarmonicParts;

/// Which invariant set products are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// All thirteen integrity-basis invariants.
    Thirteen,
    /// The eleven-invariant function basis (no K6, no I8).
    Eleven,
}

impl Basis {
    pub fn invariants(self) -> &'static [Invariant] {
        match self {
            Basis::Thirteen => &Invariant::ALL,
            Basis::Eleven => &Invariant::ELEVEN,
        }
    }

    pub fn size(self) -> usize {
        self.invariants().len()
    }

    pub fn contains(self, inv: Invariant) -> bool {
        self.invariants().contains(&inv)
    }
}

/// A monomial in the invariants, `Π inv^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductTerm {
    exponents: [u32; 13],
}

impl ProductTerm {
    pub fn one() -> Self {
        ProductTerm { exponents: [0; 13] }
    }

    pub fn from_factors(factors: &[(Invariant, u32)]) -> Self {
        let mut t = Self::one();
        for &(inv, e) in factors {
            t.exponents[inv.index()] += e;
        }
        t
    }

    pub fn exponent(&self, inv: Invariant) -> u32 {
        self.exponents[inv.index()]
    }

    /// Nonzero exponents in invariant order.
    pub fn factors(&self) -> impl Iterator<Item = (Invariant, u32)> + '_ {
        Invariant::ALL.into_iter().map(|inv| (inv, self.exponent(inv))).filter(|&(_, e)| e > 0)
    }

    pub fn weighted_degree(&self) -> u32 {
        self.factors().map(|(inv, e)| inv.degree() * e).sum()
    }

    pub fn uses_only(&self, basis: Basis) -> bool {
        self.factors().all(|(inv, _)| basis.contains(inv))
    }

    /// The same monomial with one power of `inv` removed, if present.
    pub fn without_one(&self, inv: Invariant) -> Option<ProductTerm> {
        let mut t = *self;
        let e = &mut t.exponents[inv.index()];
        if *e == 0 {
            return None;
        }
        *e -= 1;
        Some(t)
    }

    pub fn evaluate<S: Scalar>(&self, values: &InvariantVector<S>) -> S {
        self.factors().fold(S::one(), |acc, (inv, e)| acc * values.get(inv).powu(e))
    }
}

impl fmt::Display for ProductTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (inv, e) in self.factors() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{inv}")?;
            } else {
                write!(f, "{inv}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// `Σ coefficient · term = 0` over same-degree invariant products.
#[derive(Debug, Clone, PartialEq)]
pub struct SyzygyRelation {
    terms: Vec<(ExactScalar, ProductTerm)>,
    degree: u32,
    basis: Basis,
    label: Option<String>,
}

impl SyzygyRelation {
    /// Merges repeated monomials and drops zero coefficients, then checks
    /// that at least two terms remain, all of one degree, all in `basis`.
    pub fn new(terms: Vec<(ExactScalar, ProductTerm)>, basis: Basis) -> Result<Self> {
        let mut merged: Vec<(ExactScalar, ProductTerm)> = Vec::new();
        let mut index: HashMap<ProductTerm, usize> = HashMap::new();
        for (c, t) in terms {
            match index.get(&t) {
                Some(&i) => merged[i].0 += c,
                None => {
                    index.insert(t, merged.len());
                    merged.push((c, t));
                }
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        if merged.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a relation needs at least two nonzero terms, got {}",
                merged.len()
            )));
        }
        let degree = merged[0].1.weighted_degree();
        if let Some((_, t)) = merged.iter().find(|(_, t)| t.weighted_degree() != degree) {
            return Err(Error::InvalidArgument(format!(
                "term {t} has degree {}, expected {degree}",
                t.weighted_degree()
            )));
        }
        if let Some((_, t)) = merged.iter().find(|(_, t)| !t.uses_only(basis)) {
            return Err(Error::InvalidArgument(format!("term {t} leaves the {basis:?} basis")));
        }
        Ok(SyzygyRelation { terms: merged, degree, basis, label: None })
    }

    /// Parses text such as `"6 J2 I8 = -I2^2 J2 K4 + 4/9 I4 K4 ..."`.
    /// Everything right of `=` is moved to the left-hand side.
    pub fn parse(text: &str, basis: Basis) -> Result<Self> {
        let spaced = text.replace('+', " + ").replace('-', " - ").replace('=', " = ");
        let mut terms = Vec::new();
        let mut side = ExactScalar::one();
        let mut sign = ExactScalar::one();
        let mut coef: Option<ExactScalar> = None;
        let mut factors: Vec<(Invariant, u32)> = Vec::new();
        let mut flush = |sign: &mut ExactScalar,
                         coef: &mut Option<ExactScalar>,
                         factors: &mut Vec<(Invariant, u32)>,
                         side: &ExactScalar| {
            if coef.is_some() || !factors.is_empty() {
                let c = coef.take().unwrap_or_else(ExactScalar::one) * &*sign * side;
                terms.push((c, ProductTerm::from_factors(factors)));
            }
            factors.clear();
            *sign = ExactScalar::one();
        };
        for tok in spaced.split_whitespace() {
            match tok {
                "+" | "-" => {
                    flush(&mut sign, &mut coef, &mut factors, &side);
                    if tok == "-" {
                        sign = -ExactScalar::one();
                    }
                }
                "=" => {
                    flush(&mut sign, &mut coef, &mut factors, &side);
                    side = -ExactScalar::one();
                }
                t if t.starts_with(|c: char| c.is_ascii_digit()) => {
                    if !factors.is_empty() {
                        return Err(Error::Malformed(format!("coefficient {t} after a factor")));
                    }
                    let v = parse_ratio(t)?;
                    coef = Some(coef.unwrap_or_else(ExactScalar::one) * v);
                }
                t => {
                    let (name, exp) = match t.split_once('^') {
                        Some((n, e)) => {
                            (n, e.parse::<u32>().map_err(|_| Error::Malformed(format!("bad exponent in {t}")))?)
                        }
                        None => (t, 1),
                    };
                    factors.push((name.parse()?, exp));
                }
            }
        }
        flush(&mut sign, &mut coef, &mut factors, &side);
        Self::new(terms, basis)
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn terms(&self) -> &[(ExactScalar, ProductTerm)] {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// A copy with one coefficient shifted by `delta`.
    pub fn perturbed(&self, term_index: usize, delta: &ExactScalar) -> Self {
        let mut r = self.clone();
        r.terms[term_index].0 += delta;
        r
    }

    /// `Σ coefficient · product` for already-computed invariant values.
    pub fn residual_at<S: Scalar>(&self, values: &InvariantVector<S>) -> S {
        self.terms.iter().fold(S::zero(), |acc, (c, t)| acc + S::from_exact(c) * t.evaluate(values))
    }

    /// Coefficient vector against an ordered list of products; terms not in
    /// the list are an error.
    pub fn coefficient_vector(&self, products: &[ProductTerm]) -> Result<Vec<ExactScalar>> {
        let index: HashMap<&ProductTerm, usize> = products.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut v = vec![ExactScalar::zero(); products.len()];
        for (c, t) in &self.terms {
            let i = index.get(t).ok_or_else(|| Error::InvalidArgument(format!("term {t} not among products")))?;
            v[*i] = c.clone();
        }
        Ok(v)
    }
}

impl fmt::Display for SyzygyRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (c, t)) in self.terms.iter().enumerate() {
            let neg = c < &ExactScalar::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(" = 0")
    }
}

/// Every multiset of `basis` invariants with weighted degree exactly
/// `degree`, in descending lexicographic order of exponent vectors (taken in
/// basis order), so degree 4 gives `I2², I2 J2, J2², I4, J4, K4, L4`.
pub fn enumerate_products(basis: Basis, degree: u32) -> Result<Vec<ProductTerm>> {
    if degree < 2 || degree % 2 != 0 {
        return Err(Error::InvalidArgument(format!("degree must be even and at least 2, got {degree}")));
    }
    fn rec(invs: &[Invariant], remaining: u32, current: &mut ProductTerm, out: &mut Vec<ProductTerm>) {
        let Some((&first, rest)) = invs.split_first() else {
            if remaining == 0 {
                out.push(*current);
            }
            return;
        };
        let d = first.degree();
        for e in (0..=remaining / d).rev() {
            current.exponents[first.index()] = e;
            rec(rest, remaining - e * d, current, out);
        }
        current.exponents[first.index()] = 0;
    }
    let mut out = Vec::new();
    rec(basis.invariants(), degree, &mut ProductTerm::one(), &mut out);
    Ok(out)
}

/// `Π invariant(h)^exponent` for each term.
pub fn evaluate_products<S: Scalar>(terms: &[ProductTerm], h: &HarmonicParts<S>) -> Vec<S> {
    let values = all_invariants(h);
    terms.iter().map(|t| t.evaluate(&values)).collect()
}

/// `Σ coefficient · product` at `h`; zero for a true relation.
pub fn verify_relation(r: &SyzygyRelation, h: &HarmonicParts<ExactScalar>) -> ExactScalar {
    r.residual_at(&all_invariants(h))
}

/// Writes `target` as a combination of `span`, returning the coefficients
/// when the exact residual `Σ c_i span_i - target` vanishes.
pub fn express_in_span(span: &[SyzygyRelation], target: &SyzygyRelation) -> Result<Option<Vec<ExactScalar>>> {
    let mut products: Vec<ProductTerm> = Vec::new();
    for r in span.iter().chain(std::iter::once(target)) {
        for (_, t) in &r.terms {
            if !products.contains(t) {
                products.push(*t);
            }
        }
    }
    let mut columns: Vec<Vec<ExactScalar>> =
        span.iter().map(|r| r.coefficient_vector(&products)).collect::<Result<_>>()?;
    columns.push(target.coefficient_vector(&products)?);
    let k = columns.len();
    let entries = (0..products.len()).flat_map(|row| columns.iter().map(move |col| col[row].clone())).collect();
    let m = RationalMatrix::new(products.len(), k, entries)?;
    let Some(x) = nullspace(&m).into_iter().find(|x| !x[k - 1].is_zero()) else {
        return Ok(None);
    };
    let scale = ExactScalar::from_integer(-x[k - 1].clone());
    let coeffs: Vec<ExactScalar> = x[..k - 1].iter().map(|xi| ExactScalar::from_integer(xi.clone()) / &scale).collect();
    // residual check, independent of how the nullspace was produced
    let residual_zero = (0..products.len()).all(|row| {
        let combo = coeffs.iter().zip(&columns).fold(ExactScalar::zero(), |acc, (c, col)| acc + c * &col[row]);
        combo == columns[k - 1][row]
    });
    Ok(residual_zero.then_some(coeffs))
}

/// `true` when every relation of `b` lies in the span of `a` and vice versa.
pub fn same_span(a: &[SyzygyRelation], b: &[SyzygyRelation]) -> Result<bool> {
    for r in b {
        if express_in_span(a, r)?.is_none() {
            return Ok(false);
        }
    }
    for r in a {
        if express_in_span(b, r)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Relation from an integer nullspace vector over `products`.
pub(crate) fn relation_from_vector(products: &[ProductTerm], x: &[BigInt], basis: Basis) -> Result<SyzygyRelation> {
    SyzygyRelation::new(
        products
            .iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (ExactScalar::from_integer(c.clone()), *t))
            .collect(),
        basis,
    )
}
