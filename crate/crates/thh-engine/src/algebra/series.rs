use serde::{Deserialize, Serialize};

use super::GenKind;

/// Dimensions by total degree 0..=D.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareSeries {
    pub dims: Vec<usize>,
}

impl PoincareSeries {
    pub fn new(dims: Vec<usize>) -> Self {
        PoincareSeries { dims }
    }

    pub fn zero(max_degree: u32) -> Self {
        PoincareSeries { dims: vec![0; max_degree as usize + 1] }
    }

    /// The series 1 (the ground field).
    pub fn unit(max_degree: u32) -> Self {
        let mut s = PoincareSeries::zero(max_degree);
        s.dims[0] = 1;
        s
    }

    /// Generating function of a single tensor factor.
    pub fn of_piece(kind: GenKind, degree: u32, max_degree: u32) -> Self {
        let mut s = PoincareSeries::zero(max_degree);
        let d = degree as usize;
        let cap = match kind {
            GenKind::Exterior => 1,
            GenKind::Truncated(h) => h as usize - 1,
            GenKind::Polynomial | GenKind::DividedPower => usize::MAX,
        };
        let mut i = 0usize;
        while i <= cap && i * d <= max_degree as usize {
            s.dims[i * d] += 1;
            if d == 0 {
                break;
            }
            i += 1;
        }
        s
    }

    pub fn max_degree(&self) -> u32 {
        self.dims.len().saturating_sub(1) as u32
    }

    pub fn get(&self, n: u32) -> usize {
        self.dims.get(n as usize).copied().unwrap_or(0)
    }

    /// Product of generating functions, truncated to the shorter bound.
    pub fn convolve(&self, other: &PoincareSeries) -> PoincareSeries {
        let len = self.dims.len().min(other.dims.len());
        let mut out = vec![0; len];
        for (i, &a) in self.dims.iter().enumerate().take(len) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.dims.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        PoincareSeries { dims: out }
    }

    pub fn truncate(&self, max_degree: u32) -> PoincareSeries {
        let mut dims = self.dims.clone();
        dims.resize(max_degree as usize + 1, 0);
        PoincareSeries { dims }
    }

    pub fn nonzero_degrees(&self) -> Vec<u32> {
        self.dims.iter().enumerate().filter(|(_, &d)| d > 0).map(|(i, _)| i as u32).collect()
    }

    /// First degree where the two series differ, if any.
    pub fn first_difference(&self, other: &PoincareSeries) -> Option<u32> {
        let len = self.dims.len().max(other.dims.len());
        (0..len as u32).find(|&n| self.get(n) != other.get(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_times_polynomial() {
        let e = PoincareSeries::of_piece(GenKind::Exterior, 7, 16);
        let p = PoincareSeries::of_piece(GenKind::Polynomial, 8, 16);
        assert_eq!(e.convolve(&p).nonzero_degrees(), vec![0, 7, 8, 15, 16]);
    }

    #[test]
    fn truncated_piece() {
        let t = PoincareSeries::of_piece(GenKind::Truncated(3), 4, 20);
        assert_eq!(t.nonzero_degrees(), vec![0, 4, 8]);
    }
}
