//! Closed-form homology criteria for the chain instance.
//!
//! These are claims about rational chain complexes, not consequences of the
//! abstract machinery; the test suites hold each one against the diagrammatic
//! decision it shortcuts.

use crate::chain::homology::{homology_dims, is_acyclic, is_homology_surjective};
use crate::chain::{ChainMap, Complex};

/// `g` has a weak section iff it is surjective on homology.
pub fn weak_section_oracle(g: &ChainMap) -> bool {
    is_homology_surjective(g)
}

/// `X` dominates `Y` iff `dim H_n(X) >= dim H_n(Y)` in every degree.
pub fn domination_oracle(x: &Complex, y: &Complex) -> bool {
    homology_dims(x).dominates(&homology_dims(y))
}

/// `0` for acyclic complexes, `1` otherwise.
pub fn cat_oracle(x: &Complex) -> usize {
    if is_acyclic(x) {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{direct_sum, direct_sum_with_maps};

    #[test]
    fn weak_section_examples() {
        assert!(weak_section_oracle(&ChainMap::identity(Complex::sphere(3))));
        assert!(!weak_section_oracle(&ChainMap::zero(Complex::zero(), Complex::sphere(0))));
        let s = direct_sum_with_maps(&Complex::sphere(0), &Complex::disc(1));
        assert!(weak_section_oracle(&s.pr_left));
    }

    #[test]
    fn domination_examples() {
        let x = Complex::disc(4);
        assert!(domination_oracle(&x, &x));
        let s = direct_sum(&Complex::sphere(0), &Complex::sphere(2));
        assert!(domination_oracle(&s, &Complex::sphere(2)));
        assert!(!domination_oracle(&Complex::sphere(2), &Complex::sphere(3)));
    }

    #[test]
    fn cat_examples() {
        assert_eq!(cat_oracle(&Complex::zero()), 0);
        assert_eq!(cat_oracle(&Complex::disc(1)), 0);
        assert_eq!(cat_oracle(&Complex::sphere(2)), 1);
    }
}
