use num_integer::Integer;

use super::OrderBackend;
use crate::error::{Error, Result};

/// Positive integers ordered by divisibility: meet is gcd, join is lcm.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DivisorLattice;

impl OrderBackend for DivisorLattice {
    type Elem = u64;

    fn contains(&self, a: &u64) -> bool {
        *a > 0
    }

    fn leq(&self, a: &u64, b: &u64) -> bool {
        *a != 0 && u64::is_multiple_of(*b, *a)
    }

    fn meet(&self, a: &u64, b: &u64) -> Result<u64> {
        if *a == 0 || *b == 0 {
            return Err(Error::NoMeet(a.to_string(), b.to_string()));
        }
        Ok(a.gcd(b))
    }

    fn join(&self, a: &u64, b: &u64) -> Result<u64> {
        if *a == 0 || *b == 0 {
            return Err(Error::NoJoin(a.to_string(), b.to_string()));
        }
        (a / a.gcd(b))
            .checked_mul(*b)
            .ok_or_else(|| Error::Domain(format!("lcm({a}, {b}) overflows u64")))
    }

    fn label(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_element(&self, s: &str) -> Result<u64> {
        match s.parse::<u64>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(Error::UnknownElement(s.to_string())),
        }
    }
}
