use crate::error::{Error, Result};
use crate::setcore::IntSet;

/// `{start + i·step : 0 ≤ i < k}` with `k ≥ 2` and `step ≥ 1`.
pub fn arithmetic_progression(k: u32, start: i64, step: i64) -> Result<IntSet> {
    if k < 2 {
        return Err(Error::Precondition(format!("k >= 2 (got k = {k})")));
    }
    if step < 1 {
        return Err(Error::Precondition(format!(
            "step >= 1 (got step = {step})"
        )));
    }
    let values = (0..k as i64)
        .map(|i| {
            i.checked_mul(step)
                .and_then(|v| v.checked_add(start))
                .ok_or(Error::Overflow("arithmetic progression"))
        })
        .collect::<Result<Vec<i64>>>()?;
    IntSet::new(&values)
}
