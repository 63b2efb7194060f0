//! The base space: a closed rational interval with finitely many interior
//! points removed. With no punctures the space is compact; punctures exist
//! to realize densely defined functions with jumps at removed points.

use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceX {
    a: Q,
    b: Q,
    punctures: Vec<Q>,
}

impl SpaceX {
    pub fn new(a: Q, b: Q, mut punctures: Vec<Q>) -> Result<SpaceX> {
        if a >= b {
            return Err(Error::EmptySpace);
        }
        punctures.sort();
        punctures.dedup();
        for p in &punctures {
            if *p <= a || *p >= b {
                return Err(Error::PunctureOutOfRange(p.clone()));
            }
        }
        Ok(SpaceX { a, b, punctures })
    }

    /// A plain closed interval, the compact case.
    pub fn interval(a: Q, b: Q) -> Result<SpaceX> {
        SpaceX::new(a, b, Vec::new())
    }

    pub fn a(&self) -> &Q {
        &self.a
    }

    pub fn b(&self) -> &Q {
        &self.b
    }

    pub fn punctures(&self) -> &[Q] {
        &self.punctures
    }

    pub fn is_puncture(&self, x: &Q) -> bool {
        self.punctures.binary_search(x).is_ok()
    }

    /// Membership in X = [a, b] minus the punctures.
    pub fn contains(&self, x: &Q) -> bool {
        *x >= self.a && *x <= self.b && !self.is_puncture(x)
    }

    /// Membership in the ambient interval [a, b].
    pub fn in_closure(&self, x: &Q) -> bool {
        *x >= self.a && *x <= self.b
    }

    pub fn is_compact(&self) -> bool {
        self.punctures.is_empty()
    }

    pub fn width(&self) -> Q {
        &self.b - &self.a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn membership_excludes_punctures() {
        let x = SpaceX::new(qi(-1), qi(1), vec![q(1, 3)]).unwrap();
        assert!(x.contains(&qi(0)));
        assert!(x.contains(&qi(-1)));
        assert!(!x.contains(&q(1, 3)));
        assert!(x.in_closure(&q(1, 3)));
        assert!(!x.contains(&qi(2)));
        assert!(!x.is_compact());
    }

    #[test]
    fn degenerate_interval_rejected() {
        assert_eq!(SpaceX::interval(qi(1), qi(1)), Err(Error::EmptySpace));
    }

    #[test]
    fn puncture_must_be_interior() {
        assert_eq!(
            SpaceX::new(qi(0), qi(1), vec![qi(0)]),
            Err(Error::PunctureOutOfRange(qi(0)))
        );
    }
}
