//! Second-order jets along left-invariant curves, and the operators τ and κ.
//!
//! For a direction `Z` and base point `x`, the curve `s ↦ x·exp(sZ)` has
//! entry jets `(x_ij, (xZ)_ij, (xZ²)_ij)` at `s = 0`. Every function in this
//! crate is polynomial or rational in the entries, so propagating these seeds
//! through the expression tree gives exact derivatives up to rounding.

use std::ops::{Add, Mul, Neg, Sub};

use crate::basis::{SignedBasis, SignedBasisVector};
use crate::error::{Error, Result};
use crate::expr::FunctionExpr;
use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};

/// Value, first and second derivative at `s = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub f0: C64,
    pub f1: C64,
    pub f2: C64,
}

impl Jet2 {
    pub const fn new(f0: C64, f1: C64, f2: C64) -> Self {
        Self { f0, f1, f2 }
    }

    pub const fn constant(c: C64) -> Self {
        Self::new(c, ZERO, ZERO)
    }

    pub fn scale(self, s: C64) -> Self {
        Self::new(self.f0 * s, self.f1 * s, self.f2 * s)
    }

    pub fn conj(self) -> Self {
        Self::new(self.f0.conj(), self.f1.conj(), self.f2.conj())
    }

    /// Quotient rule; fails on a zero denominator value.
    #[allow(clippy::should_implement_trait)]
    pub fn div(self, den: Jet2) -> Result<Jet2> {
        let g0 = den.f0;
        if g0 == ZERO {
            return Err(Error::Pole {
                path: Vec::new(),
                magnitude: 0.0,
                floor: 0.0,
            });
        }
        let (f0, f1, f2) = (self.f0, self.f1, self.f2);
        let (g1, g2) = (den.f1, den.f2);
        let g0sq = g0 * g0;
        Ok(Jet2::new(
            f0 / g0,
            (f1 * g0 - f0 * g1) / g0sq,
            (g0sq * f2 - g0 * f1 * g1 * 2.0 + f0 * g1 * g1 * 2.0 - f0 * g0 * g2) / (g0sq * g0),
        ))
    }

    pub fn powi(self, k: u32) -> Jet2 {
        match k {
            0 => Jet2::constant(ONE),
            1 => self,
            _ => {
                let kf = k as f64;
                let pk2 = self.f0.powu(k - 2);
                let pk1 = pk2 * self.f0;
                Jet2::new(
                    pk1 * self.f0,
                    pk1 * self.f1 * kf,
                    pk1 * self.f2 * kf + pk2 * self.f1 * self.f1 * (kf * (kf - 1.0)),
                )
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        [self.f0, self.f1, self.f2]
            .iter()
            .all(|v| v.re.is_finite() && v.im.is_finite())
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2::new(self.f0 + rhs.f0, self.f1 + rhs.f1, self.f2 + rhs.f2)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        Jet2::new(self.f0 - rhs.f0, self.f1 - rhs.f1, self.f2 - rhs.f2)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2::new(-self.f0, -self.f1, -self.f2)
    }
}

/// Leibniz rule.
impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        Jet2::new(
            self.f0 * rhs.f0,
            self.f1 * rhs.f0 + self.f0 * rhs.f1,
            self.f2 * rhs.f0 + self.f1 * rhs.f1 * 2.0 + self.f0 * rhs.f2,
        )
    }
}

/// A base point `x` and a signed direction `Z`, with `xZ` and `xZ²` cached.
#[derive(Clone, Debug)]
pub struct CurvePoint {
    base: ComplexMatrix,
    direction: SignedBasisVector,
    xz: ComplexMatrix,
    xz2: ComplexMatrix,
}

impl CurvePoint {
    pub fn new(base: &ComplexMatrix, direction: &SignedBasisVector) -> Result<Self> {
        if base.dim() != direction.matrix.dim() {
            return Err(Error::Argument(format!(
                "base point is {0}x{0} but direction is {1}x{1}",
                base.dim(),
                direction.matrix.dim()
            )));
        }
        let xz = base.matmul(&direction.matrix);
        let xz2 = xz.matmul(&direction.matrix);
        Ok(Self {
            base: base.clone(),
            direction: direction.clone(),
            xz,
            xz2,
        })
    }

    pub fn base(&self) -> &ComplexMatrix {
        &self.base
    }

    pub fn direction(&self) -> &SignedBasisVector {
        &self.direction
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// `(x_ij, (xZ)_ij, (xZ²)_ij)`.
    pub fn entry_jet(&self, i: usize, j: usize) -> Result<Jet2> {
        let n = self.dim();
        if i >= n || j >= n {
            return Err(Error::Argument(format!(
                "entry ({i}, {j}) out of range for dimension {n}"
            )));
        }
        Ok(Jet2::new(self.base[(i, j)], self.xz[(i, j)], self.xz2[(i, j)]))
    }

    /// Jet of `Σ A_ij x_ij`.
    pub fn linear_jet(&self, coeffs: &ComplexMatrix) -> Result<Jet2> {
        if coeffs.dim() != self.dim() {
            return Err(Error::Argument(format!(
                "coefficient matrix is {}x{}, point is {}x{}",
                coeffs.dim(),
                coeffs.dim(),
                self.dim(),
                self.dim()
            )));
        }
        let dot = |m: &ComplexMatrix| -> C64 {
            coeffs
                .entries()
                .iter()
                .zip(m.entries())
                .map(|(a, b)| a * b)
                .sum()
        };
        Ok(Jet2::new(dot(&self.base), dot(&self.xz), dot(&self.xz2)))
    }
}

pub fn entry_jet(c: &CurvePoint, i: usize, j: usize) -> Result<Jet2> {
    c.entry_jet(i, j)
}

/// All curves through one point along an orthonormal basis.
#[derive(Clone, Debug)]
pub struct LocalFrame {
    point: ComplexMatrix,
    curves: Vec<CurvePoint>,
}

/// The jets of one function along every direction of a [`LocalFrame`].
#[derive(Clone, Debug)]
pub struct FrameJets {
    pub value: C64,
    pub jets: Vec<Jet2>,
    signs: Vec<f64>,
}

impl FrameJets {
    /// `Σ ε·Z²(φ)`
    pub fn tau(&self) -> C64 {
        self.jets
            .iter()
            .zip(&self.signs)
            .map(|(j, &s)| j.f2 * s)
            .sum()
    }

    /// `Σ ε·Z(φ)·Z(ψ)`, complex bilinear.
    pub fn kappa(&self, other: &FrameJets) -> C64 {
        self.jets
            .iter()
            .zip(&other.jets)
            .zip(&self.signs)
            .map(|((a, b), &s)| a.f1 * b.f1 * s)
            .sum()
    }
}

impl LocalFrame {
    pub fn new(point: &ComplexMatrix, basis: &SignedBasis) -> Result<Self> {
        let curves = basis
            .vectors
            .iter()
            .map(|v| CurvePoint::new(point, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            point: point.clone(),
            curves,
        })
    }

    pub fn point(&self) -> &ComplexMatrix {
        &self.point
    }

    pub fn curves(&self) -> &[CurvePoint] {
        &self.curves
    }

    pub fn jets(&self, f: &FunctionExpr) -> Result<FrameJets> {
        let value = f.eval_point(&self.point)?;
        let jets = self
            .curves
            .iter()
            .map(|c| f.eval_jet(c))
            .collect::<Result<Vec<_>>>()?;
        let signs = self
            .curves
            .iter()
            .map(|c| c.direction.sign.value())
            .collect();
        Ok(FrameJets { value, jets, signs })
    }

    pub fn tau(&self, f: &FunctionExpr) -> Result<C64> {
        Ok(self.jets(f)?.tau())
    }

    pub fn kappa(&self, f: &FunctionExpr, g: &FunctionExpr) -> Result<C64> {
        Ok(self.jets(f)?.kappa(&self.jets(g)?))
    }
}

/// Tension field `τ(φ)(x) = Σ_{(Z,ε)} ε·Z²(φ)(x)`.
pub fn tau(f: &FunctionExpr, x: &ComplexMatrix, basis: &SignedBasis) -> Result<C64> {
    LocalFrame::new(x, basis)?.tau(f)
}

/// `κ(φ,ψ)(x) = Σ_{(Z,ε)} ε·Z(φ)(x)·Z(ψ)(x)`, without conjugation.
pub fn kappa(
    f: &FunctionExpr,
    g: &FunctionExpr,
    x: &ComplexMatrix,
    basis: &SignedBasis,
) -> Result<C64> {
    LocalFrame::new(x, basis)?.kappa(f, g)
}
