//! The rank-one even lattice ℤα with ⟨α,α⟩ = 2k and its module sectors.
//!
//! Charges are measured in units of γ = α/2k, so the dual lattice is ℤγ with
//! ⟨γ,γ⟩ = 1/2k and the sector of charge q is q mod 2k.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use fullfield_core::fusiondata::FusionData;

/// Failures of lattice operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("lattice parameter k must be positive")]
    InvalidK,
    #[error("vertex operators are evaluated at z ≠ 0")]
    ZeroArgument,
    #[error("sample ({z1}, {z2}) is outside |z₁| > |z₂| > |z₁−z₂| > 0")]
    OutsideRegion { z1: String, z2: String },
    #[error("contour radii must satisfy R_out > r > R_in > 0 and ρ < min(R_out − r, r − R_in)")]
    ContourOrder,
    #[error("F entry ratio is not stable across matrix elements: {0}")]
    UnstableRatio(String),
    #[error("F entry {0} is not a space of the lattice fusion rules")]
    NotAdmissible(String),
    #[error("no lift of the requested charges fits into truncation {0}")]
    TruncationTooSmall(u32),
    #[error(transparent)]
    Chiral(#[from] fullfield_core::chiraldata::ChiralError),
    #[error(transparent)]
    Completion(#[from] fullfield_core::chiraldata::CompletionError),
    #[error(transparent)]
    Fusion(#[from] fullfield_core::fusiondata::FusionError),
    #[error(transparent)]
    Exact(#[from] fullfield_core::exactnum::ExactError),
}

/// Lattice ℤα with ⟨α,α⟩ = 2k and truncation T on relative conformal weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeSpec {
    k: u32,
    truncation: u32,
}

impl LatticeSpec {
    pub fn new(k: u32, truncation: u32) -> Result<Self, LatticeError> {
        if k == 0 {
            return Err(LatticeError::InvalidK);
        }
        Ok(LatticeSpec { k, truncation })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// The same lattice with another truncation.
    pub fn with_truncation(&self, truncation: u32) -> Self {
        LatticeSpec {
            truncation,
            ..*self
        }
    }

    /// Number of sectors, 2k.
    pub fn modulus(&self) -> i64 {
        2 * self.k as i64
    }

    pub fn sector(&self, q: i64) -> u32 {
        q.rem_euclid(self.modulus()) as u32
    }

    pub fn dual_sector(&self, j: u32) -> u32 {
        self.sector(-(j as i64))
    }

    /// Charge of minimal weight in sector j, taken in (−k, k].
    pub fn lowest_charge(&self, j: u32) -> i64 {
        let j = j as i64 % self.modulus();
        if j <= self.k as i64 {
            j
        } else {
            j - self.modulus()
        }
    }

    /// Charge of the state that normalizes the basis operator of a sector, in [0, 2k).
    pub fn rep_charge(&self, j: u32) -> i64 {
        j as i64 % self.modulus()
    }

    /// ⟨pγ, qγ⟩ = pq/2k.
    pub fn pairing(&self, p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p * q), BigInt::from(self.modulus()))
    }

    /// Weight q²/4k of the exponential e^{qγ}.
    pub fn charge_weight(&self, q: i64) -> BigRational {
        BigRational::new(BigInt::from(q * q), BigInt::from(2 * self.modulus()))
    }

    /// Lowest conformal weight of sector j.
    pub fn h(&self, j: u32) -> BigRational {
        self.charge_weight(self.lowest_charge(j))
    }

    /// Weight of e^{qγ} above the lowest weight of its sector; always an integer.
    pub fn charge_excess(&self, q: i64) -> i64 {
        let q0 = self.lowest_charge(self.sector(q));
        (q * q - q0 * q0) / (2 * self.modulus())
    }

    /// The cocycle ε(aγ, bγ) = (−1)^{⌊a/2k⌋·b}.
    pub fn cocycle(&self, a: i64, b: i64) -> i64 {
        let m = a.div_euclid(self.modulus());
        if (m * b).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Human-readable form of the cocycle convention, recorded in emitted bundles.
    pub fn cocycle_description(&self) -> String {
        format!(
            "eps(a,b) = (-1)^(floor(a/{})*b) on charges in units of alpha/{}",
            self.modulus(),
            self.modulus()
        )
    }

    /// The fusion rules ℤ/2k with the lowest weights of the sectors.
    pub fn fusion(&self) -> Result<FusionData, LatticeError> {
        let w = (0..self.modulus() as u32).map(|j| self.h(j)).collect();
        Ok(FusionData::cyclic(self.modulus() as usize, w)?)
    }

    /// Order of the cyclotomic field holding every phase of the bundle.
    pub fn field_order(&self) -> u32 {
        8 * self.k
    }

    /// Charges of sector j whose exponential has relative weight at most t.
    pub fn charges(&self, j: u32, t: u32) -> Vec<i64> {
        let n = self.modulus();
        let q0 = self.lowest_charge(j);
        let mut out = Vec::new();
        let mut m = 0i64;
        loop {
            let mut any = false;
            for q in [q0 + m * n, q0 - m * n] {
                if self.charge_excess(q) <= t as i64 {
                    any = true;
                    if !out.contains(&q) {
                        out.push(q);
                    }
                }
            }
            if !any {
                break;
            }
            m += 1;
        }
        out.sort_unstable();
        out
    }
}
