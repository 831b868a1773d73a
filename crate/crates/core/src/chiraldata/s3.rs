//! S₃ relations, canonical normalization and invariance of the modified pairing.

use num_complex::Complex64;

use super::{CanonicalKind, ChiralData, ModifiedForm};
use crate::exactnum::CycMatrix;
use crate::report::{CheckRecord, Report};

/// Relative tolerance of the numeric path.
pub const S3_NUMERIC_TOL: f64 = 1e-12;

impl ChiralData {
    /// Checks that σ₁₂ and σ₂₃ generate an S₃ action, send canonical elements to
    /// canonical elements, and preserve √F_{a₃}/(√F_{a₁}√F_{a₂})·⟨·,·⟩.
    pub fn verify_s3_invariance(&self) -> Report {
        let mut rep = self.verify_s3_relations();
        if !rep.passed() {
            return rep;
        }
        let pairings = match self.pairings() {
            Ok(p) => p,
            Err(err) => {
                rep.push(CheckRecord::exact("pairing", vec![], false).with_detail(err.to_string()));
                return rep;
            }
        };
        let fu = &self.fusion;
        for (x, _) in fu.nonzero_spaces() {
            let xd = fu.dual_space(x);
            for (name, tgt, s, sd) in [
                (
                    "sigma12-invariance",
                    fu.s12_space(x),
                    self.s12(x),
                    self.s12(xd),
                ),
                (
                    "sigma23-invariance",
                    fu.s23_space(x),
                    self.s23(x),
                    self.s23(xd),
                ),
            ] {
                let idx = self.space_index(x);
                let forms = self
                    .modified_from(x, &pairings[&x].pairing)
                    .and_then(|m| Ok((m, self.modified_from(tgt, &pairings[&tgt].pairing)?)));
                let rec = match forms {
                    Ok((ModifiedForm::Exact(m), ModifiedForm::Exact(mt))) => {
                        let lhs = s.transpose().mul(&mt).mul(sd);
                        let ok = lhs == m;
                        let r = CheckRecord::exact(name, idx, ok);
                        if ok {
                            r
                        } else {
                            r.with_detail(format!("lhs={lhs:?} rhs={m:?}"))
                        }
                    }
                    Ok((m, mt)) => {
                        let lhs = cmul(
                            &cmul(&ctranspose(&super::pairing::to_complex(s)), &mt.numeric()),
                            &super::pairing::to_complex(sd),
                        );
                        CheckRecord::numeric(
                            name,
                            idx,
                            rel_residual(&lhs, &m.numeric()),
                            S3_NUMERIC_TOL,
                        )
                    }
                    Err(err) => CheckRecord::exact(name, idx, false).with_detail(err.to_string()),
                };
                rep.push(rec);
            }
        }
        rep
    }

    /// Marker placement, S₃ relations and canonical normalization only.
    pub fn verify_s3_relations(&self) -> Report {
        let mut rep = Report::new("s3", "S3-invariance of the modified pairing");
        self.check_markers(&mut rep);
        self.check_relations(&mut rep);
        self.check_normalization(&mut rep);
        rep
    }

    fn check_markers(&self, rep: &mut Report) {
        let fu = &self.fusion;
        for (&(kind, a), m) in &self.markers {
            let want = kind.space(fu, a);
            let ok = m.space == want && m.index < fu.mult(want);
            let mut rec = CheckRecord::exact(
                "marker-space",
                vec![kind.as_str().into(), fu.name(a).into()],
                ok,
            );
            if !ok {
                rec = rec.with_detail(format!(
                    "marker on {} index {}, expected {}",
                    self.space_name(m.space),
                    m.index + 1,
                    self.space_name(want)
                ));
            }
            rep.push(rec);
        }
    }

    fn check_relations(&self, rep: &mut Report) {
        let fu = &self.fusion;
        for (x, mult) in fu.nonzero_spaces() {
            let idx = self.space_index(x);
            let id = CycMatrix::identity(&self.field, mult as usize);
            let a = fu.s12_space(x);
            rep.push(CheckRecord::exact(
                "sigma12-involution",
                idx.clone(),
                self.s12(a).mul(self.s12(x)) == id,
            ));
            let b = fu.s23_space(x);
            rep.push(CheckRecord::exact(
                "sigma23-involution",
                idx.clone(),
                self.s23(b).mul(self.s23(x)) == id,
            ));
            let x1 = fu.s12_space(x);
            let x2 = fu.s23_space(x1);
            let lhs = self.s12(x2).mul(self.s23(x1)).mul(self.s12(x));
            let y1 = fu.s23_space(x);
            let y2 = fu.s12_space(y1);
            let rhs = self.s23(y2).mul(self.s12(y1)).mul(self.s23(x));
            rep.push(CheckRecord::exact("braid-relation", idx, lhs == rhs));
        }
    }

    fn check_normalization(&self, rep: &mut Report) {
        let fu = &self.fusion;
        let e = fu.unit();
        for a in fu.labels() {
            let ad = fu.dual(a);
            let cases = [
                (
                    "sigma12-left-unit",
                    self.s12((e, a, a)),
                    CanonicalKind::LeftUnit,
                    a,
                    CanonicalKind::RightUnit,
                    a,
                ),
                (
                    "sigma23-right-unit",
                    self.s23((a, e, a)),
                    CanonicalKind::RightUnit,
                    a,
                    CanonicalKind::Coevaluation,
                    a,
                ),
                (
                    "sigma12-coevaluation",
                    self.s12((a, ad, e)),
                    CanonicalKind::Coevaluation,
                    a,
                    CanonicalKind::Coevaluation,
                    ad,
                ),
            ];
            for (name, s, from, fa, to, ta) in cases {
                let col = self.marker_index(from, fa);
                let row = self.marker_index(to, ta);
                let ok = col < s.cols()
                    && row < s.rows()
                    && (0..s.rows()).all(|r| {
                        let v = s.get(r, col);
                        if r == row {
                            v.is_one()
                        } else {
                            v.is_zero()
                        }
                    });
                rep.push(CheckRecord::exact(name, vec![fu.name(a).into()], ok));
            }
        }
    }
}

fn ctranspose(a: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|r| r[j]).collect())
        .collect()
}

fn cmul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| {
            (0..n)
                .map(|j| r.iter().zip(b).map(|(x, br)| x * br[j]).sum())
                .collect()
        })
        .collect()
}

/// max |a−b| / max |b|.
pub(crate) fn rel_residual(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    let mut diff: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            diff = diff.max((x - y).norm());
            scale = scale.max(y.norm());
        }
    }
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}
