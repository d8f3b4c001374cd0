//! Expression trees for complex functions of matrix entries.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::{CurvePoint, Jet2};
use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};

pub const DEFAULT_DOMAIN_FLOOR: f64 = 1e-3;

fn default_floor() -> f64 {
    DEFAULT_DOMAIN_FLOOR
}

/// A polynomial in `nvars` complex variables, stored as exponent vector → coefficient.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolynomialRepr", into = "PolynomialRepr")]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, C64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub coeff: C64,
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    nvars: usize,
    terms: Vec<Monomial>,
}

impl TryFrom<PolynomialRepr> for Polynomial {
    type Error = Error;
    fn try_from(r: PolynomialRepr) -> Result<Self> {
        Polynomial::from_terms(r.nvars, r.terms.into_iter().map(|m| (m.exponents, m.coeff)))
    }
}

impl From<Polynomial> for PolynomialRepr {
    fn from(p: Polynomial) -> Self {
        PolynomialRepr {
            nvars: p.nvars,
            terms: p.monomials(),
        }
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// Sums repeated exponent vectors; fails on a wrong exponent length.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, C64)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (exps, coeff) in terms {
            if exps.len() != nvars {
                return Err(Error::Argument(format!(
                    "exponent vector {exps:?} has length {}, expected {nvars}",
                    exps.len()
                )));
            }
            p.add_term(exps, coeff);
        }
        Ok(p)
    }

    pub fn variable(k: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self::from_terms(nvars, [(e, ONE)]).expect("length matches")
    }

    pub fn constant(c: C64, nvars: usize) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], c)]).expect("length matches")
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: C64) {
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == ZERO {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if coeff != ZERO {
                    v.insert(coeff);
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C64> {
        &self.terms
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms
            .iter()
            .map(|(e, &c)| Monomial {
                exponents: e.clone(),
                coeff: c,
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(d)` if every term has total degree `d` (`None` for the zero polynomial).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    pub fn coefficient(&self, exps: &[u32]) -> C64 {
        self.terms.get(exps).copied().unwrap_or(ZERO)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, &c)| (e.clone(), c * s)))
            .expect("same arity")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::Argument("polynomials over different variable counts".into()));
        }
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, &c)| (e.clone(), c)),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::Argument("polynomials over different variable counts".into()));
        }
        let mut out = Self::zero(self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, args: &[C64]) -> C64 {
        debug_assert_eq!(args.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, &c)| {
                e.iter()
                    .zip(args)
                    .filter(|(&k, _)| k > 0)
                    .fold(c, |acc, (&k, &a)| acc * a.powu(k))
            })
            .sum()
    }

    pub fn eval_jet(&self, args: &[Jet2]) -> Jet2 {
        debug_assert_eq!(args.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, &c)| {
                e.iter()
                    .zip(args)
                    .filter(|(&k, _)| k > 0)
                    .fold(Jet2::constant(c), |acc, (&k, &a)| acc * a.powi(k))
            })
            .fold(Jet2::constant(ZERO), |a, b| a + b)
    }
}

/// A homogeneous polynomial of fixed degree evaluated on a list of argument expressions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HomPolyRepr", into = "HomPolyRepr")]
pub struct HomPoly {
    degree: u32,
    args: Vec<FunctionExpr>,
    poly: Polynomial,
}

#[derive(Serialize, Deserialize)]
struct HomPolyRepr {
    degree: u32,
    args: Vec<FunctionExpr>,
    terms: Vec<Monomial>,
}

impl TryFrom<HomPolyRepr> for HomPoly {
    type Error = Error;
    fn try_from(r: HomPolyRepr) -> Result<Self> {
        let nvars = r.args.len();
        let poly = Polynomial::from_terms(nvars, r.terms.into_iter().map(|m| (m.exponents, m.coeff)))?;
        HomPoly::new(r.degree, poly, r.args)
    }
}

impl From<HomPoly> for HomPolyRepr {
    fn from(h: HomPoly) -> Self {
        HomPolyRepr {
            degree: h.degree,
            terms: h.poly.monomials(),
            args: h.args,
        }
    }
}

impl HomPoly {
    pub fn new(degree: u32, poly: Polynomial, args: Vec<FunctionExpr>) -> Result<Self> {
        if poly.nvars() != args.len() {
            return Err(Error::Argument(format!(
                "polynomial has {} variables but {} arguments were given",
                poly.nvars(),
                args.len()
            )));
        }
        if let Some(bad) = poly.terms().keys().find(|e| e.iter().sum::<u32>() != degree) {
            return Err(Error::Validation(format!(
                "monomial {bad:?} does not have total degree {degree}"
            )));
        }
        Ok(Self { degree, args, poly })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn args(&self) -> &[FunctionExpr] {
        &self.args
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }
}

/// A complex-valued function of the entries of a square matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum FunctionExpr {
    Const {
        value: C64,
    },
    Entry {
        i: usize,
        j: usize,
    },
    /// Entrywise conjugate `x̄_ij`; evaluable but not holomorphic.
    ConjEntry {
        i: usize,
        j: usize,
    },
    /// `trace(A·xᵗ) = Σ A_ij x_ij`.
    LinearTrace {
        coeffs: ComplexMatrix,
    },
    Sum {
        terms: Vec<FunctionExpr>,
    },
    Product {
        factors: Vec<FunctionExpr>,
    },
    Power {
        base: Box<FunctionExpr>,
        exponent: u32,
    },
    /// `num/den`, defined where `|den| > floor`.
    Quotient {
        num: Box<FunctionExpr>,
        den: Box<FunctionExpr>,
        #[serde(default = "default_floor")]
        floor: f64,
    },
    HomPoly(HomPoly),
}

impl FunctionExpr {
    pub fn constant(value: C64) -> Self {
        FunctionExpr::Const { value }
    }

    pub fn entry(i: usize, j: usize) -> Self {
        FunctionExpr::Entry { i, j }
    }

    pub fn linear_trace(coeffs: ComplexMatrix) -> Self {
        FunctionExpr::LinearTrace { coeffs }
    }

    pub fn sum(terms: Vec<FunctionExpr>) -> Self {
        FunctionExpr::Sum { terms }
    }

    pub fn product(factors: Vec<FunctionExpr>) -> Self {
        FunctionExpr::Product { factors }
    }

    pub fn power(base: FunctionExpr, exponent: u32) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::Argument("power exponent must be at least 1".into()));
        }
        Ok(FunctionExpr::Power {
            base: Box::new(base),
            exponent,
        })
    }

    pub fn quotient(num: FunctionExpr, den: FunctionExpr, floor: f64) -> Self {
        FunctionExpr::Quotient {
            num: Box::new(num),
            den: Box::new(den),
            floor,
        }
    }

    pub fn scaled(self, c: C64) -> Self {
        FunctionExpr::product(vec![FunctionExpr::constant(c), self])
    }

    pub fn hom_poly(degree: u32, poly: Polynomial, args: Vec<FunctionExpr>) -> Result<Self> {
        HomPoly::new(degree, poly, args).map(FunctionExpr::HomPoly)
    }

    /// `false` if any node depends on conjugated entries.
    pub fn is_holomorphic(&self) -> bool {
        match self {
            FunctionExpr::ConjEntry { .. } => false,
            FunctionExpr::Const { .. } | FunctionExpr::Entry { .. } | FunctionExpr::LinearTrace { .. } => true,
            FunctionExpr::Sum { terms } => terms.iter().all(Self::is_holomorphic),
            FunctionExpr::Product { factors } => factors.iter().all(Self::is_holomorphic),
            FunctionExpr::Power { base, .. } => base.is_holomorphic(),
            FunctionExpr::Quotient { num, den, .. } => num.is_holomorphic() && den.is_holomorphic(),
            FunctionExpr::HomPoly(h) => h.args.iter().all(Self::is_holomorphic),
        }
    }

    pub fn eval_point(&self, x: &ComplexMatrix) -> Result<C64> {
        let n = x.dim();
        let check = |i: usize, j: usize| {
            if i < n && j < n {
                Ok(())
            } else {
                Err(Error::Argument(format!("entry ({i}, {j}) out of range for dimension {n}")))
            }
        };
        match self {
            FunctionExpr::Const { value } => Ok(*value),
            FunctionExpr::Entry { i, j } => check(*i, *j).map(|_| x[(*i, *j)]),
            FunctionExpr::ConjEntry { i, j } => check(*i, *j).map(|_| x[(*i, *j)].conj()),
            FunctionExpr::LinearTrace { coeffs } => {
                if coeffs.dim() != n {
                    return Err(Error::Argument(format!(
                        "coefficient matrix is {0}x{0}, point is {n}x{n}",
                        coeffs.dim()
                    )));
                }
                Ok(coeffs.entries().iter().zip(x.entries()).map(|(a, b)| a * b).sum())
            }
            FunctionExpr::Sum { terms } => {
                let mut acc = ZERO;
                for (k, t) in terms.iter().enumerate() {
                    acc += t.eval_point(x).map_err(|e| e.at_child(k))?;
                }
                Ok(acc)
            }
            FunctionExpr::Product { factors } => {
                let mut acc = ONE;
                for (k, t) in factors.iter().enumerate() {
                    acc *= t.eval_point(x).map_err(|e| e.at_child(k))?;
                }
                Ok(acc)
            }
            FunctionExpr::Power { base, exponent } => {
                Ok(base.eval_point(x).map_err(|e| e.at_child(0))?.powu(*exponent))
            }
            FunctionExpr::Quotient { num, den, floor } => {
                let d = den.eval_point(x).map_err(|e| e.at_child(1))?;
                check_floor(d, *floor)?;
                Ok(num.eval_point(x).map_err(|e| e.at_child(0))? / d)
            }
            FunctionExpr::HomPoly(h) => {
                let args = h
                    .args
                    .iter()
                    .enumerate()
                    .map(|(k, a)| a.eval_point(x).map_err(|e| e.at_child(k)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(h.poly.eval(&args))
            }
        }
    }

    pub fn eval_jet(&self, c: &CurvePoint) -> Result<Jet2> {
        match self {
            FunctionExpr::Const { value } => Ok(Jet2::constant(*value)),
            FunctionExpr::Entry { i, j } => c.entry_jet(*i, *j),
            FunctionExpr::ConjEntry { i, j } => c.entry_jet(*i, *j).map(Jet2::conj),
            FunctionExpr::LinearTrace { coeffs } => c.linear_jet(coeffs),
            FunctionExpr::Sum { terms } => {
                let mut acc = Jet2::constant(ZERO);
                for (k, t) in terms.iter().enumerate() {
                    acc = acc + t.eval_jet(c).map_err(|e| e.at_child(k))?;
                }
                Ok(acc)
            }
            FunctionExpr::Product { factors } => {
                let mut acc = Jet2::constant(ONE);
                for (k, t) in factors.iter().enumerate() {
                    acc = acc * t.eval_jet(c).map_err(|e| e.at_child(k))?;
                }
                Ok(acc)
            }
            FunctionExpr::Power { base, exponent } => {
                Ok(base.eval_jet(c).map_err(|e| e.at_child(0))?.powi(*exponent))
            }
            FunctionExpr::Quotient { num, den, floor } => {
                let d = den.eval_jet(c).map_err(|e| e.at_child(1))?;
                check_floor(d.f0, *floor)?;
                num.eval_jet(c).map_err(|e| e.at_child(0))?.div(d)
            }
            FunctionExpr::HomPoly(h) => {
                let args = h
                    .args
                    .iter()
                    .enumerate()
                    .map(|(k, a)| a.eval_jet(c).map_err(|e| e.at_child(k)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(h.poly.eval_jet(&args))
            }
        }
    }
}

fn check_floor(d: C64, floor: f64) -> Result<()> {
    let magnitude = d.norm();
    if magnitude > floor && magnitude.is_finite() {
        Ok(())
    } else {
        Err(Error::Pole {
            path: Vec::new(),
            magnitude,
            floor,
        })
    }
}

pub fn eval_point(f: &FunctionExpr, x: &ComplexMatrix) -> Result<C64> {
    f.eval_point(x)
}

pub fn eval_jet(f: &FunctionExpr, c: &CurvePoint) -> Result<Jet2> {
    f.eval_jet(c)
}

/// `(f(x), f(e^{iθ}·x))`. A quotient of equal-degree homogeneous polynomials in
/// the entries returns two equal values.
pub fn scale_action_check(f: &FunctionExpr, theta: f64, x: &ComplexMatrix) -> Result<(C64, C64)> {
    let rotated = x.scale(C64::from_polar(1.0, theta));
    Ok((f.eval_point(x)?, f.eval_point(&rotated)?))
}
