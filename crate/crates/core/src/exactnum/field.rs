//! Cyclotomic field contexts: the polynomial Φ_N, power-basis reduction
//! tables and the unit group used for Galois conjugation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Context for ℚ(ζ_N) in the power basis 1, ζ, …, ζ^{φ(N)−1}.
#[derive(Debug)]
pub struct CycField {
    order: u32,
    degree: usize,
    /// `reduce[j]` holds the coordinates of ζ^j, for 0 ≤ j < N.
    reduce: Vec<Vec<BigInt>>,
    units: Vec<u32>,
    dual_basis: OnceLock<Vec<Vec<BigRational>>>,
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CycField {}

fn registry() -> &'static Mutex<HashMap<u32, Arc<CycField>>> {
    static REG: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns the shared context for ℚ(ζ_N). N must be even and positive.
pub fn field(order: u32) -> Result<Arc<CycField>, ExactError> {
    if order == 0 || order % 2 != 0 {
        return Err(ExactError::InvalidOrder(order));
    }
    let mut reg = registry().lock().expect("field registry poisoned");
    if let Some(f) = reg.get(&order) {
        return Ok(f.clone());
    }
    let f = Arc::new(CycField::build(order));
    reg.insert(order, f.clone());
    Ok(f)
}

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // Φ_n = (x^n − 1) / Π_{d | n, d < n} Φ_d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = exact_divide(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_divide(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

fn mobius(n: u32) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

impl CycField {
    fn build(order: u32) -> Self {
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        let mut reduce: Vec<Vec<BigInt>> = Vec::with_capacity(order as usize);
        for j in 0..order as usize {
            if j < degree {
                let mut v = vec![BigInt::zero(); degree];
                v[j] = BigInt::one();
                reduce.push(v);
            } else {
                // ζ·(previous), then eliminate ζ^degree = −Σ φ_i ζ^i
                let prev = &reduce[j - 1];
                let top = prev[degree - 1].clone();
                let mut v = vec![BigInt::zero(); degree];
                for i in 1..degree {
                    v[i] = prev[i - 1].clone();
                }
                if !top.is_zero() {
                    for i in 0..degree {
                        v[i] -= &top * &phi[i];
                    }
                }
                reduce.push(v);
            }
        }
        let units = (1..order).filter(|k| k.gcd(&order) == 1).collect();
        CycField {
            order,
            degree,
            reduce,
            units,
            dual_basis: OnceLock::new(),
        }
    }

    /// The field order N.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// The degree φ(N) of the field over ℚ.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Residues t with gcd(t, N) = 1; σ_t : ζ ↦ ζ^t runs over the Galois group.
    pub fn units(&self) -> &[u32] {
        &self.units
    }

    /// Power-basis coordinates of ζ^e for any integer e.
    pub fn power(&self, e: i64) -> &[BigInt] {
        let n = self.order as i64;
        &self.reduce[e.rem_euclid(n) as usize]
    }

    /// Trace of ζ^m, the Ramanujan sum c_N(m).
    pub fn trace_of_power(&self, m: i64) -> BigInt {
        let n = self.order;
        let g = (m.rem_euclid(n as i64) as u32).gcd(&n);
        let g = if g == 0 { n } else { g };
        let q = n / g;
        BigInt::from(mobius(q)) * BigInt::from(self.degree as u32 / totient(q))
    }

    /// Trace-dual basis ω_i with Tr(ζ^j ω_i) = δ_ij, in power-basis coordinates.
    pub fn trace_dual_basis(&self) -> &[Vec<BigRational>] {
        self.dual_basis.get_or_init(|| {
            let d = self.degree;
            let mut t: Vec<Vec<BigRational>> = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| BigRational::from_integer(self.trace_of_power((i + j) as i64)))
                        .collect()
                })
                .collect();
            let mut inv: Vec<Vec<BigRational>> = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| {
                            if i == j {
                                BigRational::one()
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            for col in 0..d {
                let piv = (col..d)
                    .find(|&r| !t[r][col].is_zero())
                    .expect("trace form is nondegenerate");
                t.swap(col, piv);
                inv.swap(col, piv);
                let p = t[col][col].clone();
                for j in 0..d {
                    t[col][j] = &t[col][j] / &p;
                    inv[col][j] = &inv[col][j] / &p;
                }
                for r in 0..d {
                    if r != col && !t[r][col].is_zero() {
                        let f = t[r][col].clone();
                        for j in 0..d {
                            let a = &f * &t[col][j];
                            t[r][j] -= a;
                            let b = &f * &inv[col][j];
                            inv[r][j] -= b;
                        }
                    }
                }
            }
            inv
        })
    }
}

/// Largest absolute value among a coefficient slice, as a bit length.
pub(crate) fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|c| c.abs().bits()).max().unwrap_or(0)
}
