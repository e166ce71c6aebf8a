//! Exact unit-valued scalars with two backends: residues in a prime field
//! F_p, and formal m-th roots of unity stored as exponents mod m.

use std::fmt;

use crate::error::{Error, Result};
use crate::fp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarBackend {
    /// Nonzero residues of F_p, p prime.
    PrimeField(u64),
    /// The cyclic group of formal m-th roots of unity; a value t stands for w^t.
    RootOfUnity(u64),
}

impl ScalarBackend {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(ScalarBackend::PrimeField(p))
    }

    pub fn root_of_unity(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::IncompatibleModulus("root order must be >= 1".into()));
        }
        Ok(ScalarBackend::RootOfUnity(m))
    }
}

/// An invertible scalar with exactly decidable equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnitScalar {
    pub backend: ScalarBackend,
    pub value: u64,
}

impl UnitScalar {
    pub fn new(backend: ScalarBackend, value: u64) -> Result<Self> {
        match backend {
            ScalarBackend::PrimeField(p) => {
                let v = value % p;
                if v == 0 {
                    return Err(Error::NotInvertible(value));
                }
                Ok(UnitScalar { backend, value: v })
            }
            ScalarBackend::RootOfUnity(m) => Ok(UnitScalar {
                backend,
                value: value % m,
            }),
        }
    }

    pub fn one(backend: ScalarBackend) -> Self {
        match backend {
            ScalarBackend::PrimeField(_) => UnitScalar { backend, value: 1 },
            ScalarBackend::RootOfUnity(_) => UnitScalar { backend, value: 0 },
        }
    }

    /// The scalar -1 where it exists (any prime field; even root order).
    pub fn neg_one(backend: ScalarBackend) -> Result<Self> {
        match backend {
            ScalarBackend::PrimeField(p) => Ok(UnitScalar {
                backend,
                value: p - 1,
            }),
            ScalarBackend::RootOfUnity(m) if m % 2 == 0 => Ok(UnitScalar {
                backend,
                value: m / 2,
            }),
            ScalarBackend::RootOfUnity(_) => Err(Error::Unsupported(
                "-1 needs an even root-of-unity order".into(),
            )),
        }
    }

    pub fn is_one(&self) -> bool {
        match self.backend {
            ScalarBackend::PrimeField(_) => self.value == 1,
            ScalarBackend::RootOfUnity(_) => self.value == 0,
        }
    }

    pub fn mul(&self, other: &UnitScalar) -> Result<UnitScalar> {
        if self.backend != other.backend {
            return Err(Error::BackendMismatch);
        }
        let value = match self.backend {
            ScalarBackend::PrimeField(p) => fp::mul(p, self.value, other.value),
            ScalarBackend::RootOfUnity(m) => (self.value + other.value) % m,
        };
        Ok(UnitScalar {
            backend: self.backend,
            value,
        })
    }

    pub fn inv(&self) -> UnitScalar {
        let value = match self.backend {
            ScalarBackend::PrimeField(p) => fp::inv(p, self.value).expect("unit is invertible"),
            ScalarBackend::RootOfUnity(m) => (m - self.value) % m,
        };
        UnitScalar {
            backend: self.backend,
            value,
        }
    }

    /// Additive negation; only meaningful where -1 exists.
    pub fn negate(&self) -> Result<UnitScalar> {
        self.mul(&UnitScalar::neg_one(self.backend)?)
    }

    pub fn pow(&self, exp: i64) -> UnitScalar {
        let base = if exp < 0 { self.inv() } else { *self };
        let e = exp.unsigned_abs();
        let value = match self.backend {
            ScalarBackend::PrimeField(p) => fp::pow(p, base.value, e),
            ScalarBackend::RootOfUnity(m) => {
                ((base.value as u128 * e as u128) % m as u128) as u64
            }
        };
        UnitScalar {
            backend: self.backend,
            value,
        }
    }

    /// Multiplicative order of this unit.
    pub fn order(&self) -> u64 {
        match self.backend {
            ScalarBackend::PrimeField(p) => fp::order(p, self.value).expect("unit is invertible"),
            ScalarBackend::RootOfUnity(m) => {
                let g = gcd(self.value, m);
                m / g.max(1)
            }
        }
    }

    /// The residue in F_p, when this scalar lives in that backend.
    pub fn residue(&self, p: u64) -> Result<u64> {
        match self.backend {
            ScalarBackend::PrimeField(q) if q == p => Ok(self.value),
            _ => Err(Error::BackendMismatch),
        }
    }
}

impl fmt::Display for UnitScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.backend {
            ScalarBackend::PrimeField(_) => write!(f, "{}", self.value),
            ScalarBackend::RootOfUnity(_) => write!(f, "w^{}", self.value),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
