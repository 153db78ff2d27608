//! Simple superalgebra types and the stability-profile calculus for
//! twisted-module tensor products.
//!
//! `Q_k` is the queer type (unique irreducible super module of dimension
//! `2k`, splitting into two inequivalent ordinary modules); `M_{m,n}` is a
//! full matrix superalgebra (unique irreducible super module of dimension
//! `m + n`, already irreducible). Tensor products close under
//!
//! ```text
//! Q_m (x) Q_n     = M_{mn,mn}
//! Q_k (x) M_{m,n} = Q_{(m+n)k}
//! M_{m,n} (x) M_{k,l} = M_{mk+nl, ml+nk}
//! ```
//!
//! A `StabilityProfile` counts unstable orbit pairs and stable irreducibles
//! in a twisted sector. The dictionary: a queer-type algebra governs an
//! unstable orbit pair (two inequivalent irreducibles swapped by the parity
//! involution), a matrix-type algebra governs a stable irreducible (which
//! splits into an even/odd pair of simples). Tensoring sectors therefore
//! multiplies profiles exactly as Q/M kinds multiply.

use std::fmt;

use crate::Error;

/// A simple superalgebra: queer `Q_k` or matrix `M_{m,n}` (normalized
/// `m >= n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperAlgType {
    Q { k: u64 },
    M { m: u64, n: u64 },
}

impl SuperAlgType {
    pub fn q(k: u64) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::input("Q type requires k >= 1"));
        }
        Ok(SuperAlgType::Q { k })
    }

    pub fn m(m: u64, n: u64) -> Result<Self, Error> {
        if m + n == 0 {
            return Err(Error::input("M type requires m + n >= 1"));
        }
        Ok(SuperAlgType::M { m: m.max(n), n: m.min(n) })
    }

    /// Dimension of the unique irreducible super module.
    pub fn irreducible_super_dim(&self) -> u64 {
        match *self {
            SuperAlgType::Q { k } => 2 * k,
            SuperAlgType::M { m, n } => m + n,
        }
    }

    /// Closed-form tensor product of simple superalgebras.
    pub fn tensor(&self, other: &Self) -> Self {
        match (*self, *other) {
            (SuperAlgType::Q { k: a }, SuperAlgType::Q { k: b }) => {
                SuperAlgType::M { m: a * b, n: a * b }
            }
            (SuperAlgType::Q { k }, SuperAlgType::M { m, n })
            | (SuperAlgType::M { m, n }, SuperAlgType::Q { k }) => {
                SuperAlgType::Q { k: (m + n) * k }
            }
            (SuperAlgType::M { m, n }, SuperAlgType::M { m: k, n: l }) => {
                let (x, y) = (m * k + n * l, m * l + n * k);
                SuperAlgType::M { m: x.max(y), n: x.min(y) }
            }
        }
    }
}

impl fmt::Display for SuperAlgType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuperAlgType::Q { k } => write!(f, "Q_{k}"),
            SuperAlgType::M { m, n } => write!(f, "M_{{{m},{n}}}"),
        }
    }
}

/// Counts of unstable orbit pairs and stable irreducibles in a twisted
/// sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilityProfile {
    pub pairs: u64,
    pub stable: u64,
}

impl StabilityProfile {
    pub fn new(pairs: u64, stable: u64) -> Self {
        StabilityProfile { pairs, stable }
    }

    /// The unit profile: one stable irreducible.
    pub fn unit() -> Self {
        StabilityProfile { pairs: 0, stable: 1 }
    }

    /// Sector of a tensor product: pair x pair and stable x stable give
    /// stable irreducibles (each counted once up to isomorphism), mixed
    /// products give unstable pairs.
    pub fn product(&self, other: &Self) -> Self {
        StabilityProfile {
            pairs: self.pairs * other.stable + self.stable * other.pairs,
            stable: self.pairs * other.pairs + self.stable * other.stable,
        }
    }
}

impl fmt::Display for StabilityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(pairs {}, stable {})", self.pairs, self.stable)
    }
}
