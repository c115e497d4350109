//! Prefix-length grids shared by gale traces and entropy estimators.

use crate::error::{Error, Result};

/// Increasing geometric grid `top/2^(points−1), …, top/2, top`, with
/// duplicates and zeros removed.
pub fn geometric_grid(top: usize, points: usize) -> Vec<usize> {
    let mut grid: Vec<usize> = (0..points.min(64))
        .rev()
        .map(|i| top >> i)
        .filter(|&n| n > 0)
        .collect();
    grid.dedup();
    grid
}

/// Indices of the tail of a grid: its last `⌈len/2⌉` points. The min / max
/// over the tail stand in for liminf / limsup at finite scale.
pub fn tail_range(len: usize) -> std::ops::Range<usize> {
    len / 2..len
}

pub fn check_increasing(grid: &[usize], limit: usize) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("grid is empty".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("grid must be strictly increasing".into()));
    }
    let last = *grid.last().unwrap();
    if last > limit {
        return Err(Error::InsufficientPrefix { required: last, available: limit });
    }
    Ok(())
}
