//! The fiberwise Hausdorff sup-metric on interval-valued maps.

use crate::cusco::CuscoMap;
use crate::error::{Error, Result};
use crate::rational::{ExtQ, Q};

/// Hausdorff distance between two nonempty compact intervals [p, q] and
/// [r, s]: `max(|p - r|, |q - s|)`.
pub fn hausdorff_fiber(i: &(Q, Q), j: &(Q, Q)) -> Result<Q> {
    if i.0 > i.1 || j.0 > j.1 {
        return Err(Error::EmptyInterval);
    }
    let d_lo = if i.0 >= j.0 {
        &i.0 - &j.0
    } else {
        &j.0 - &i.0
    };
    let d_hi = if i.1 >= j.1 {
        &i.1 - &j.1
    } else {
        &j.1 - &i.1
    };
    Ok(if d_lo >= d_hi { d_lo } else { d_hi })
}

/// The metric L: the supremum over X of the fiber Hausdorff distance,
/// which for interval fibers is the larger of the two profile sup-metrics.
pub fn l_distance(f: &CuscoMap, g: &CuscoMap) -> Result<ExtQ> {
    let d_lower = f.lower().sup_distance(g.lower())?;
    let d_upper = f.upper().sup_distance(g.upper())?;
    Ok(d_lower.max(d_upper))
}
