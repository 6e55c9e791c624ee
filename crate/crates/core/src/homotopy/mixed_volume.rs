//! Mixed volume by inclusion-exclusion over Minkowski sums.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{hull_volume, PointConfiguration};

/// Mixed volume of `d` point configurations in dimension `d`, normalized so
/// that `MV(P, ..., P) = d! vol(P)`. This is the generic root count in the
/// torus of a system with these supports.
///
/// Uses `MV = sum over nonempty S of (-1)^(d - |S|) vol(sum_{i in S} P_i)`,
/// so only `d <= 3` is supported.
pub fn mixed_volume(supports: &[PointConfiguration]) -> Result<BigInt> {
    let m = supports.len();
    if m == 0 {
        return Err(Error::EmptySystem);
    }
    if !(1..=3).contains(&m) {
        return Err(Error::UnsupportedDimension(m));
    }
    if let Some(p) = supports.iter().find(|p| p.dim() != m) {
        return Err(Error::DimensionMismatch {
            what: "support dimension",
            expected: m,
            found: p.dim(),
        });
    }
    if supports.iter().any(|p| p.is_empty()) {
        return Ok(BigInt::zero());
    }
    let mut total = BigRational::zero();
    for mask in 1u32..(1 << m) {
        let mut members = (0..m).filter(|i| mask & (1 << i) != 0);
        let first = members.next().unwrap();
        let mut sum = supports[first].clone();
        for i in members {
            sum = sum.minkowski_sum(&supports[i])?;
        }
        let vol = match hull_volume(&sum) {
            Ok(v) => v,
            Err(Error::NonFullDimensional) => continue,
            Err(e) => return Err(e),
        };
        if (m - mask.count_ones() as usize).is_multiple_of(2) {
            total += vol;
        } else {
            total -= vol;
        }
    }
    debug_assert!(total.denom().is_one());
    Ok(total.to_integer())
}
