//! Explicit solutions: algebraic (one- and two-sided), iterated sums over
//! `q`-shifts (three-sided) and `q`-series (triangular).

mod three_sided;
mod triangular;
mod two_sided;

pub use three_sided::{
    three_sided_closed, three_sided_homogeneity_residual, three_sided_kernel_residual, three_sided_kernel_root,
    three_sided_length_closed, Terms, ThreeSidedClosed,
};
pub use triangular::{
    euler_identity_check, euler_product, euler_sum, special_a, special_u, special_value_from, special_value_product,
    special_value_sum, triangular_box_formula, triangular_closed, triangular_kernel_residual, triangular_y,
    triangular_y_residual, BoxFormula, TriangularClosed,
};
pub use two_sided::{
    at_z_one, one_sided_closed, two_sided_closed, two_sided_endpoint_closed, two_sided_endpoint_kernel_residual,
    two_sided_endpoint_kernel_root, two_sided_kernel_residual, two_sided_kernel_root, two_sided_length_closed,
    TwoSidedClosed,
};

use crate::error::{Error, Result};
use crate::lattice::WalkClass;
use crate::series::{Int, TSeries};

/// Length generating function from the explicit solution of a class.
pub fn length_series_closed(class: WalkClass, order: usize) -> Result<TSeries<Int>> {
    match class {
        WalkClass::OneSided => one_sided_closed(order),
        WalkClass::TwoSided => two_sided_length_closed(order)?.to_int(),
        WalkClass::ThreeSided => Ok(three_sided_length_closed(order, Terms::Auto)?.p1),
        WalkClass::Prudent4 => Err(Error::NotAvailable("no explicit solution is known for prudent walks".into())),
        WalkClass::Triangular => Ok(triangular_closed(order, Terms::Auto)?.p1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::length_series;

    #[test]
    fn closed_equals_iteration() {
        for class in WalkClass::ALL {
            if class == WalkClass::Prudent4 {
                assert!(matches!(length_series_closed(class, 5), Err(Error::NotAvailable(_))));
                continue;
            }
            assert_eq!(length_series_closed(class, 11).unwrap(), length_series(class, 11).unwrap(), "{class}");
        }
    }
}
