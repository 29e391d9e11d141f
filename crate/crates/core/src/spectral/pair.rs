use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponents (p, q) with 1 ≤ q ≤ p < ∞; q = p only for p > 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    p: f64,
    q: f64,
}

impl ExponentPair {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p.is_finite() && q.is_finite()) {
            return Err(Error::InvalidParameter(format!("exponents must be finite, got p = {p}, q = {q}")));
        }
        if !(q >= 1.0 && q <= p) {
            return Err(Error::InvalidParameter(format!("need 1 <= q <= p, got p = {p}, q = {q}")));
        }
        if q == p && p <= 1.0 {
            return Err(Error::InvalidParameter("q = p requires p > 1".into()));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// β = pq/(p − q); infinite when q = p.
    pub fn beta(&self) -> f64 {
        if self.q == self.p {
            f64::INFINITY
        } else {
            self.p * self.q / (self.p - self.q)
        }
    }

    /// p' = p/(p − 1); infinite at p = 1.
    pub fn p_conj(&self) -> f64 {
        if self.p == 1.0 {
            f64::INFINITY
        } else {
            self.p / (self.p - 1.0)
        }
    }

    pub fn is_subhomogeneous(&self) -> bool {
        self.q < self.p
    }

    pub(crate) fn require_sub(&self, what: &str) -> Result<()> {
        if self.is_subhomogeneous() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("{what} needs q < p, got p = q = {}", self.p)))
        }
    }
}

impl Serialize for ExponentPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let beta = self.beta();
        let conj = self.p_conj();
        let mut st = s.serialize_struct("ExponentPair", 4)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("beta", &beta.is_finite().then_some(beta))?;
        st.serialize_field("p_conj", &conj.is_finite().then_some(conj))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_exponents() {
        let e = ExponentPair::new(2.0, 1.0).unwrap();
        assert_eq!(e.beta(), 2.0);
        assert_eq!(e.p_conj(), 2.0);
        assert!(ExponentPair::new(2.0, 2.0).unwrap().beta().is_infinite());
        assert!(ExponentPair::new(1.0, 1.0).is_err());
        assert!(ExponentPair::new(2.0, 3.0).is_err());
        assert!(ExponentPair::new(2.0, 0.5).is_err());
        assert!(ExponentPair::new(1.0, 1.0 - 1e-9).is_err());
    }
}
