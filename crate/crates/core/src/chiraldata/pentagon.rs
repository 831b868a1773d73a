//! Pentagon consistency of the F tensor.
//!
//! Reassociating 𝒴_{a₁b}^{a₅}𝒴_{a₂c}^{b}𝒴_{a₃a₄}^{c} into the fully iterated
//! form along the two paths gives
//! Σ_l F[a₁a₂c a₅ b d; i₁i₂ l k]·F[d a₃a₄a₅ c f; l i₃ n m]
//!   = Σ_{g,p,q,r} F[a₂a₃a₄ b c g; i₂i₃ p q]·F[a₁ g a₄a₅ b f; i₁ p n r]·F[a₁a₂a₃ f g d; r q m k].

use std::sync::Arc;

use super::{ChiralData, FLabels, FMults, FTensor};
use crate::exactnum::{CycField, CycScalar};
use crate::fusiondata::FusionData;
use crate::report::{CheckRecord, Report};

impl ChiralData {
    /// Checks the pentagon identity at every admissible label and multiplicity tuple.
    pub fn verify_pentagon(&self) -> Report {
        verify_pentagon_tensor(&self.fusion, &self.field, &self.f)
    }
}

/// The pentagon check on a bare F tensor; absent entries count as zero.
pub fn verify_pentagon_tensor(fusion: &FusionData, field: &Arc<CycField>, f: &FTensor) -> Report {
    Pentagon {
        fu: fusion,
        field,
        f,
    }
    .run()
}

struct Pentagon<'a> {
    fu: &'a FusionData,
    field: &'a Arc<CycField>,
    f: &'a FTensor,
}

impl Pentagon<'_> {
    fn fv(&self, k: FLabels, m: FMults) -> CycScalar {
        self.f
            .get(k, m)
            .cloned()
            .unwrap_or_else(|| CycScalar::zero(self.field))
    }

    fn run(&self) -> Report {
        let fu = self.fu;
        let l = fu.rank();
        let zero = CycScalar::zero(self.field);
        let mut rep = Report::new("pentagon", "pentagon identity for the fusing matrices");
        for a1 in 0..l {
            for a2 in 0..l {
                for a3 in 0..l {
                    for a4 in 0..l {
                        for c in (0..l).filter(|&c| fu.n(a3, a4, c) > 0) {
                            for b in (0..l).filter(|&b| fu.n(a2, c, b) > 0) {
                                for a5 in (0..l).filter(|&x| fu.n(a1, b, x) > 0) {
                                    for d in (0..l).filter(|&d| fu.n(a1, a2, d) > 0) {
                                        for f in (0..l)
                                            .filter(|&f| fu.n(d, a3, f) > 0 && fu.n(f, a4, a5) > 0)
                                        {
                                            self.pentagon_at(
                                                [a1, a2, a3, a4, a5, b, c, d, f],
                                                &zero,
                                                &mut rep,
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        rep
    }

    fn pentagon_at(&self, ls: [usize; 9], zero: &CycScalar, rep: &mut Report) {
        let fu = self.fu;
        let [a1, a2, a3, a4, a5, b, c, d, f] = ls;
        let l = fu.rank();
        let dims = [
            fu.n(a1, b, a5),
            fu.n(a2, c, b),
            fu.n(a3, a4, c),
            fu.n(f, a4, a5),
            fu.n(d, a3, f),
            fu.n(a1, a2, d),
        ];
        let nl = fu.n(d, c, a5) as usize;
        for i1 in 0..dims[0] as usize {
            for i2 in 0..dims[1] as usize {
                for i3 in 0..dims[2] as usize {
                    for n in 0..dims[3] as usize {
                        for m in 0..dims[4] as usize {
                            for k in 0..dims[5] as usize {
                                let mut lhs = zero.clone();
                                for lx in 0..nl {
                                    let t = &self.fv([a1, a2, c, a5, b, d], [i1, i2, lx, k])
                                        * &self.fv([d, a3, a4, a5, c, f], [lx, i3, n, m]);
                                    lhs = &lhs + &t;
                                }
                                let mut rhs = zero.clone();
                                for g in 0..l {
                                    let np = fu.n(g, a4, b) as usize;
                                    let nq = fu.n(a2, a3, g) as usize;
                                    let nr = fu.n(a1, g, f) as usize;
                                    for p in 0..np {
                                        for q in 0..nq {
                                            let x = self.fv([a2, a3, a4, b, c, g], [i2, i3, p, q]);
                                            if x.is_zero() {
                                                continue;
                                            }
                                            for r in 0..nr {
                                                let t = &(&x
                                                    * &self
                                                        .fv([a1, g, a4, a5, b, f], [i1, p, n, r]))
                                                    * &self.fv([a1, a2, a3, f, g, d], [r, q, m, k]);
                                                rhs = &rhs + &t;
                                            }
                                        }
                                    }
                                }
                                let mut idx: Vec<String> =
                                    ls.iter().map(|&x| fu.name(x).to_string()).collect();
                                idx.extend(
                                    [i1, i2, i3, n, m, k].iter().map(|x| (x + 1).to_string()),
                                );
                                let ok = lhs == rhs;
                                let mut rec = CheckRecord::exact("pentagon", idx, ok);
                                if !ok {
                                    rec = rec.with_detail(format!("lhs={lhs} rhs={rhs}"));
                                }
                                rep.push(rec);
                            }
                        }
                    }
                }
            }
        }
    }
}
