//! Constructible sheaves on tori of dimension at most two, modelled as
//! representations of the entrance-path category of a cell complex adapted
//! to a skeleton.

mod complex;
mod gens;
mod micro;
mod rhom;
mod sheaf;

pub use complex::{build_adapted_complex, circle_complex, ArrowKind, Cell, CellComplex, CellId};
pub use gens::generators;
pub use micro::{in_subcategory, microsupport, Chamber, MicroSupportReport};
pub use rhom::rhom;
pub use sheaf::{constant_sheaf, zero_sheaf, CellSheaf};

/// Dimensions of a complex graded by cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDims {
    pub min_degree: i32,
    pub dims: Vec<usize>,
}

impl GradedDims {
    pub fn new(min_degree: i32, dims: Vec<usize>) -> Self {
        GradedDims { min_degree, dims }.normalized()
    }

    pub fn zero() -> Self {
        GradedDims { min_degree: 0, dims: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dim_at(&self, degree: i32) -> usize {
        if degree < self.min_degree {
            return 0;
        }
        self.dims.get((degree - self.min_degree) as usize).copied().unwrap_or(0)
    }

    /// Drops leading and trailing zeros so equal gradings compare equal.
    pub fn normalized(mut self) -> Self {
        while let Some(&0) = self.dims.first() {
            self.dims.remove(0);
            self.min_degree += 1;
        }
        while let Some(&0) = self.dims.last() {
            self.dims.pop();
        }
        if self.dims.is_empty() {
            self.min_degree = 0;
        }
        self
    }

    /// The same dims read with a global degree shift.
    pub fn shifted(&self, by: i32) -> Self {
        GradedDims { min_degree: self.min_degree + by, dims: self.dims.clone() }.normalized()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_dims_normalization_and_shift() {
        let a = GradedDims::new(-2, vec![0, 1, 1, 0]);
        assert_eq!(a.min_degree, -1);
        assert_eq!(a.dims, vec![1, 1]);
        assert_eq!(a.dim_at(-1), 1);
        assert_eq!(a.dim_at(0), 1);
        assert_eq!(a.dim_at(1), 0);
        assert_eq!(a.shifted(1), GradedDims::new(0, vec![1, 1]));
        assert!(GradedDims::new(3, vec![0, 0]).is_zero());
    }
}
