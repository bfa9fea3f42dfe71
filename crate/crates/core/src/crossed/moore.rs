//! Homotopy groups of a truncated simplicial group via the Moore complex.
//!
//! The Moore level is the intersection of the kernels of `d_1 .. d_m`,
//! the boundary is `d_0` restricted, and `pi_m` is the boundary kernel
//! modulo the boundary image from one level up. Degree 0 is the quotient
//! of level 0 by `d_0(ker d_1)`. Image normality is verified before
//! quotienting rather than assumed.

use super::gamma::{subset_group, TruncatedSimplicialGroup};
use super::CrossedError;
use crate::groups::{image_normal, quotient_by_image, FiniteGroup};

/// Elements of level `m` killed by every face `d_1 .. d_m`.
fn moore_level(sg: &TruncatedSimplicialGroup, m: usize) -> Vec<usize> {
    if m == 0 {
        return (0..sg.level_size(0)).collect();
    }
    let e_below = sg.level_group(m - 1).identity();
    (0..sg.level_size(m))
        .filter(|&x| (1..=m).all(|i| sg.underlying().face(m, i)[x] == e_below))
        .collect()
}

/// `pi_m` of a truncated simplicial group, for `0 <= m <= truncation - 2`.
pub fn moore_homotopy(
    sg: &TruncatedSimplicialGroup,
    m: usize,
) -> Result<FiniteGroup, CrossedError> {
    let k = sg.truncation();
    if k < 2 || m > k - 2 {
        return Err(CrossedError::DegreeOutOfRange {
            degree: m,
            truncation: k,
            top: k.saturating_sub(2),
        });
    }

    // boundary kernel inside the Moore level
    let cycles: Vec<usize> = if m == 0 {
        moore_level(sg, 0)
    } else {
        let e_below = sg.level_group(m - 1).identity();
        let d0 = sg.underlying().face(m, 0);
        moore_level(sg, m)
            .into_iter()
            .filter(|&x| d0[x] == e_below)
            .collect()
    };
    let (cycle_group, cycle_pos) = subset_group(sg.level_group(m), &cycles, "moore cycles")?;

    // boundary image from one level up
    let d0_above = sg.underlying().face(m + 1, 0);
    let mut image: Vec<usize> = moore_level(sg, m + 1)
        .into_iter()
        .map(|y| d0_above[y])
        .collect();
    image.sort_unstable();
    image.dedup();
    let image_positions: Vec<usize> = image
        .iter()
        .map(|b| {
            cycle_pos
                .get(b)
                .copied()
                .ok_or(CrossedError::ImageNotNormal { degree: m })
        })
        .collect::<Result<_, _>>()?;

    let (_, inclusion) = crate::groups::subgroup(&cycle_group, &image_positions, "moore image")
        .map_err(CrossedError::Group)?;
    if !image_normal(&inclusion) {
        return Err(CrossedError::ImageNotNormal { degree: m });
    }
    let (pi, _) = quotient_by_image(&inclusion)?;
    Ok(pi.rename(format!("pi_{m}")))
}

/// Convenience: `pi_0 .. pi_{k-2}` in one sweep.
pub fn moore_homotopy_table(
    sg: &TruncatedSimplicialGroup,
) -> Result<Vec<FiniteGroup>, CrossedError> {
    (0..=sg.truncation() - 2)
        .map(|m| moore_homotopy(sg, m))
        .collect()
}
