//! Compact duals and the passage from `c_G` to `r_G`.

use serde::Serialize;

use crate::error::{GvError, Result};
use crate::fiber::{compute_cg, sphere_volume};
use crate::lie::{Family, FamilySpec};
use crate::scalar::{factorial, int_half_pow, ExactScalar};

#[derive(Clone, Debug, Serialize)]
pub struct CompactDualData {
    pub family: FamilySpec,
    pub dual_name: String,
    pub euler_number: i64,
    pub volume: ExactScalar,
}

fn int(n: i64) -> ExactScalar {
    ExactScalar::from_i64(n)
}

/// Euler number and volume of the compact dual of `G/K_G`.
pub fn compact_dual(spec: FamilySpec) -> Result<CompactDualData> {
    let n = spec.n as i64;
    let pi = ExactScalar::pi_pow(1);
    let (dual_name, euler_number, volume) = match spec.family {
        Family::Sl => return Err(GvError::ParameterOutOfRange("no compact dual row for the projective family".into())),
        Family::So => {
            if n % 2 == 0 {
                return Err(GvError::NoEulerProportionality(format!(
                    "the Euler class of the S^{n} bundle vanishes rationally for even n"
                )));
            }
            let vol = int_half_pow(2, n - 1).mul(&int_half_pow(n, n + 1)).mul(&sphere_volume(n as usize + 1)?);
            (format!("RP^{}", n + 1), 1, vol)
        }
        Family::Su => {
            let vol = int(2)
                .pow(n + 1)?
                .mul(&int(n + 2).pow(n + 1)?)
                .mul(&pi.pow(n + 1)?)
                .div(&factorial(n as u64 + 1))?;
            (format!("CP^{}", n + 1), n + 2, vol)
        }
        Family::Sp => {
            let vol = int(2)
                .pow(6 * (n + 1))?
                .mul(&int(n + 3).pow(n + 1)?)
                .mul(&pi.pow(2 * (n + 1))?)
                .div(&factorial(2 * n as u64 + 3))?;
            (format!("HP^{}", n + 1), n + 2, vol)
        }
        Family::F4 => {
            let vol = int(72).pow(8)?.mul(&int(6)).mul(&pi.pow(8)?).div(&factorial(11))?;
            ("OP^2".to_string(), 3, vol)
        }
    };
    Ok(CompactDualData { family: spec, dual_name, euler_number, volume })
}

/// `r_G = (-1)^{(q+1)/2} c_G vol / e`.
pub fn r_g_from_cg(spec: FamilySpec, c_g: &ExactScalar) -> Result<ExactScalar> {
    let dual = compact_dual(spec)?;
    let qq = spec.q();
    if qq % 2 == 0 {
        return Err(GvError::Consistency(format!("q+1 must be even, q = {qq}")));
    }
    let r = c_g.mul(&dual.volume).div(&int(dual.euler_number))?;
    Ok(if ((qq + 1) / 2) % 2 == 1 { -r } else { r })
}

pub fn compute_rg(spec: FamilySpec) -> Result<ExactScalar> {
    compact_dual(spec)?;
    r_g_from_cg(spec, &compute_cg(spec)?)
}
