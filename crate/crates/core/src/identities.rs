//! The six sums over generator matrices that drive the coordinate lemmas.

use crate::basis::{gen, pairs, Generator};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::report::{ReportBuilder, VerificationReport};

pub const IDENTITY_NAMES: [&str; 6] = [
    "sum_X_sq",
    "sum_Y_sq",
    "sum_D_sq",
    "sum_X_E_Xt",
    "sum_Y_E_Yt",
    "sum_D_E_Dt",
];

/// Max absolute entry deviation of each identity, in [`IDENTITY_NAMES`] order.
/// The `E_jl` identities are checked for every `j, l`.
pub fn matrix_identity_residuals(n: usize) -> Result<[f64; 6]> {
    if n < 2 {
        return Err(Error::Argument(format!("matrix identities need n ≥ 2, got {n}")));
    }
    let xs: Vec<_> = pairs(n).map(|(r, s)| gen(Generator::X(r, s), n)).collect();
    let ys: Vec<_> = pairs(n).map(|(r, s)| gen(Generator::Y(r, s), n)).collect();
    let ds: Vec<_> = (0..n).map(|t| gen(Generator::D(t), n)).collect();
    let id = ComplexMatrix::identity(n);
    let half_n1 = (n as f64 - 1.0) / 2.0;

    let sum_sq = |ms: &[ComplexMatrix]| {
        ms.iter()
            .fold(ComplexMatrix::zeros(n), |acc, m| acc + m.matmul(m))
    };
    let sandwich = |ms: &[ComplexMatrix], e: &ComplexMatrix| {
        ms.iter().fold(ComplexMatrix::zeros(n), |acc, m| {
            acc + m.matmul(e).matmul(&m.transpose())
        })
    };

    let mut out = [0.0; 6];
    out[0] = sum_sq(&xs).max_abs_diff(&id.scale_real(half_n1));
    out[1] = sum_sq(&ys).max_abs_diff(&id.scale_real(-half_n1));
    out[2] = sum_sq(&ds).max_abs_diff(&id);
    for j in 0..n {
        for l in 0..n {
            let e_jl = gen(Generator::E(j, l), n);
            let e_lj = gen(Generator::E(l, j), n);
            let delta = if j == l { 1.0 } else { 0.0 };

            let rhs_x = (&e_lj + &(&id - &e_lj.scale_real(2.0)).scale_real(delta)).scale_real(0.5);
            let rhs_y = (&e_lj - &id.scale_real(delta)).scale_real(-0.5);
            let rhs_d = e_lj.scale_real(delta);

            out[3] = out[3].max(sandwich(&xs, &e_jl).max_abs_diff(&rhs_x));
            out[4] = out[4].max(sandwich(&ys, &e_jl).max_abs_diff(&rhs_y));
            out[5] = out[5].max(sandwich(&ds, &e_jl).max_abs_diff(&rhs_d));
        }
    }
    Ok(out)
}

pub fn verify_matrix_identities(n: usize, tol: f64) -> Result<VerificationReport> {
    let builder = ReportBuilder::new("matrix_identities", format!("gl({n})")).param("n", n);
    let residuals = matrix_identity_residuals(n)?;
    Ok(builder.residuals(IDENTITY_NAMES, &residuals, tol).finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C64;

    #[test]
    fn identities_hold_for_small_n() {
        for n in 2..=10 {
            let r = matrix_identity_residuals(n).unwrap();
            assert!(r.iter().all(|&v| v < 1e-12), "n = {n}: {r:?}");
        }
    }

    #[test]
    fn sum_x_squared_is_identity_for_n3() {
        let xs: Vec<_> = pairs(3).map(|(r, s)| gen(Generator::X(r, s), 3)).collect();
        let s = xs.iter().fold(ComplexMatrix::zeros(3), |a, m| a + m.matmul(m));
        assert!(s.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
    }

    #[test]
    fn sum_y_squared_for_n2() {
        let y = gen(Generator::Y(0, 1), 2);
        let expected = ComplexMatrix::identity(2).scale(C64::new(-0.5, 0.0));
        assert!(y.matmul(&y).max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn diagonal_sandwich_vanishes_off_diagonal() {
        let n = 5;
        let e = gen(Generator::E(1, 2), n);
        let s = (0..n).fold(ComplexMatrix::zeros(n), |a, t| {
            let d = gen(Generator::D(t), n);
            a + d.matmul(&e).matmul(&d.transpose())
        });
        assert_eq!(s.max_abs(), 0.0);
    }

    #[test]
    fn n1_is_rejected() {
        assert!(verify_matrix_identities(1, 1e-12).is_err());
    }
}
