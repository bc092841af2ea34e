use std::sync::Arc;

use super::{DgCategory, HomElem};
use crate::homlin::{Cochain, Scalar};

/// One generator whose endomorphisms are `Q ⊕ Q[-1]` with zero
/// differential and `ε² = 0`.
pub struct Line;

impl DgCategory for Line {
    type Gen = u8;

    fn accepts(&self, g: &u8) -> bool {
        *g == 0
    }

    fn hom(&self, _: &u8, _: &u8) -> Arc<Cochain> {
        Arc::new(Cochain::new(0, vec![1, 1], vec![crate::homlin::Matrix::zeros(1, 1)]).unwrap())
    }

    fn compose(&self, _: &u8, _: &u8, _: &u8, g: &HomElem, f: &HomElem) -> HomElem {
        let degree = g.degree + f.degree;
        if degree > 1 {
            return HomElem::zero(degree, 0);
        }
        HomElem {
            degree,
            coords: vec![&g.coords[0] * &f.coords[0]],
        }
    }

    fn unit(&self, _: &u8) -> HomElem {
        HomElem {
            degree: 0,
            coords: vec![Scalar::one()],
        }
    }
}
