//! Exact lower convex envelopes of finite point sets.
//!
//! Time sharing between corner-point schemes achieves every point on the
//! lower convex envelope of their (cache size, NDT) pairs, so envelope
//! evaluation has to be exact piecewise-linear interpolation.

use crate::rational::Rational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopeError {
    #[error("need at least one point")]
    Empty,
    #[error("x coordinates must be strictly increasing")]
    UnsortedPoints,
    #[error("query {0} lies outside the envelope domain")]
    OutOfDomain(String),
}

/// Lower convex envelope of a set of points with strictly increasing x,
/// stored as its hull vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerEnvelope {
    vertices: Vec<(Rational, Rational)>,
}

impl LowerEnvelope {
    /// Builds the envelope with a monotone-chain scan. Points collinear with
    /// their neighbors are dropped; the endpoints always remain.
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self, EnvelopeError> {
        if points.is_empty() {
            return Err(EnvelopeError::Empty);
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(EnvelopeError::UnsortedPoints);
        }
        let mut hull: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
        for p in points {
            while hull.len() >= 2 {
                let a = &hull[hull.len() - 2];
                let b = &hull[hull.len() - 1];
                // pop b when it sits on or above the chord a-p
                let lhs = (&b.1 - &a.1) * (&p.0 - &b.0);
                let rhs = (&p.1 - &b.1) * (&b.0 - &a.0);
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        Ok(Self { vertices: hull })
    }

    pub fn vertices(&self) -> &[(Rational, Rational)] {
        &self.vertices
    }

    /// Exact value at `x` by linear interpolation between hull vertices.
    pub fn eval(&self, x: &Rational) -> Result<Rational, EnvelopeError> {
        let first = self.vertices.first().expect("envelope is never empty");
        let last = self.vertices.last().expect("envelope is never empty");
        if x < &first.0 || x > &last.0 {
            return Err(EnvelopeError::OutOfDomain(x.to_string()));
        }
        let mut segment = None;
        for w in self.vertices.windows(2) {
            if x >= &w[0].0 && x <= &w[1].0 {
                segment = Some((&w[0], &w[1]));
                break;
            }
        }
        match segment {
            Some((a, b)) => {
                let t = (x - &a.0) / (&b.0 - &a.0);
                Ok(&a.1 + t * (&b.1 - &a.1))
            }
            // single-point envelope
            None => Ok(first.1.clone()),
        }
    }
}
