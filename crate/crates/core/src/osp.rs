//! The realisation of `osp(1|2)` inside `H ⊗ C`, its Scasimir and
//! Casimirs, and the projection `P = Id − ad(F⁻) ad(F⁺)` onto the graded
//! centraliser.

use thiserror::Error;

use crate::cherednik::Algebra;
use crate::hc::HcElement;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Osp {
    pub f_plus: HcElement,
    pub f_minus: HcElement,
    pub e_plus: HcElement,
    pub e_minus: HcElement,
    pub h: HcElement,
    /// `Ω_c = Σ_{α>0} c(α) s_α`.
    pub omega_c: HcElement,
    /// `𝒮 = F⁻F⁺ − F⁺F⁻ − ½`.
    pub scasimir: HcElement,
    /// `Ω_osp = H² + 2(E⁺E⁻ + E⁻E⁺) − (F⁺F⁻ − F⁻F⁺)`.
    pub casimir: HcElement,
    /// `Ω_sl2 = H² + 2(E⁺E⁻ + E⁻E⁺)`.
    pub casimir_sl2: HcElement,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OspError {
    #[error("relation {relation} fails; witness {witness}")]
    Relation { relation: String, witness: String },
    #[error("argument does not commute with the even part: {0}")]
    NotInEvenCentraliser(String),
}

/// One row of the bracket table: the relation name and `lhs − rhs`.
#[derive(Clone, Debug)]
pub struct BracketRow {
    pub relation: &'static str,
    pub residual: HcElement,
}

impl Osp {
    /// Builds the realisation and asserts the bracket table.
    pub fn build(alg: &Algebra) -> Result<Osp, OspError> {
        let osp = Osp::build_unchecked(alg);
        if let Some(row) = osp.bracket_table(alg).into_iter().find(|r| !r.residual.is_zero()) {
            return Err(OspError::Relation {
                relation: row.relation.to_string(),
                witness: row.residual.witness().unwrap_or_default(),
            });
        }
        Ok(osp)
    }

    pub fn build_unchecked(alg: &Algebra) -> Osp {
        let d = alg.d;
        let t = alg.t().clone();
        let inv_s = alg.params.s.inv().expect("s is invertible");
        let inv_2t = t.mul(&Scalar::int(2)).inv().expect("t is invertible");
        let inv_t = t.inv().expect("t is invertible");
        let mut fp = alg.zero();
        let mut fm = alg.zero();
        let mut xx = alg.zero();
        let mut yy = alg.zero();
        let mut xy = alg.zero();
        for p in 1..=d {
            fp = fp.add(&alg.mul(&alg.x(p), &alg.e(p)));
            fm = fm.add(&alg.mul(&alg.y(p), &alg.e(p)));
            xx = xx.add(&alg.mul(&alg.x(p), &alg.x(p)));
            yy = yy.add(&alg.mul(&alg.y(p), &alg.y(p)));
            xy = xy.add(&alg.mul(&alg.x(p), &alg.y(p)));
        }
        let mut omega_c = alg.zero();
        for (k, &g) in alg.refl.iter().enumerate() {
            omega_c = omega_c.add(&alg.group_elem(g).scale(alg.root_c(k)));
        }
        // H = (1/t)(Σ x_p y_p + td/2 − Ω_c)
        let h = xy
            .add(&alg.scalar(t.mul(&Scalar::rat(d as i64, 2))))
            .sub(&omega_c)
            .scale(&inv_t);
        let f_plus = fp.scale(&inv_s);
        let f_minus = fm.scale(&inv_s);
        let e_plus = xx.scale(&inv_2t);
        let e_minus = yy.scale(&inv_2t).neg();
        let half = alg.scalar(Scalar::rat(1, 2));
        let fmfp = alg.mul(&f_minus, &f_plus);
        let fpfm = alg.mul(&f_plus, &f_minus);
        let scasimir = fmfp.sub(&fpfm).sub(&half);
        let casimir_sl2 = alg
            .mul(&h, &h)
            .add(&alg.mul(&e_plus, &e_minus).add(&alg.mul(&e_minus, &e_plus)).scale(&Scalar::int(2)));
        let casimir = casimir_sl2.sub(&fpfm.sub(&fmfp));
        Osp { f_plus, f_minus, e_plus, e_minus, h, omega_c, scasimir, casimir, casimir_sl2 }
    }

    /// The nine defining relations, each as `lhs − rhs`.
    pub fn bracket_table(&self, alg: &Algebra) -> Vec<BracketRow> {
        let b = |x: &HcElement, y: &HcElement| alg.gb(x, y);
        let two = Scalar::int(2);
        let row = |relation, lhs: HcElement, rhs: HcElement| BracketRow { relation, residual: lhs.sub(&rhs) };
        let (fp, fm, ep, em, h) = (&self.f_plus, &self.f_minus, &self.e_plus, &self.e_minus, &self.h);
        vec![
            row("[F+,F-] = H", b(fp, fm), h.clone()),
            row("[H,F+] = F+", b(h, fp), fp.clone()),
            row("[H,F-] = -F-", b(h, fm), fm.neg()),
            row("[F+,F+] = 2E+", b(fp, fp), ep.scale(&two)),
            row("[F-,F-] = -2E-", b(fm, fm), em.scale(&two).neg()),
            row("[E+,E-] = H", b(ep, em), h.clone()),
            row("[H,E+] = 2E+", b(h, ep), ep.scale(&two)),
            row("[H,E-] = -2E-", b(h, em), em.scale(&two).neg()),
            row("[F+,E-] = F-", b(fp, em), fm.clone()),
            row("[F-,E+] = F+", b(fm, ep), fp.clone()),
        ]
    }

    pub fn generators(&self) -> [&HcElement; 5] {
        [&self.f_plus, &self.f_minus, &self.e_plus, &self.e_minus, &self.h]
    }

    /// `𝒮² − Ω_osp − ¼`.
    pub fn scasimir_square_residual(&self, alg: &Algebra) -> HcElement {
        alg.mul(&self.scasimir, &self.scasimir).sub(&self.casimir).sub(&alg.scalar(Scalar::rat(1, 4)))
    }

    pub fn scasimir_square_check(&self, alg: &Algebra) -> bool {
        self.scasimir_square_residual(alg).is_zero()
    }

    /// Graded brackets of `a` with the five generators.
    pub fn centraliser_residuals(&self, alg: &Algebra, a: &HcElement) -> Vec<HcElement> {
        self.generators().iter().map(|g| alg.gb(g, a)).collect()
    }

    /// `a` lies in the graded centraliser `O_{t,c}`.
    pub fn in_centraliser(&self, alg: &Algebra, a: &HcElement) -> bool {
        self.centraliser_residuals(alg, a).iter().all(HcElement::is_zero)
    }

    /// `P(a) = a − ⟦F⁻, ⟦F⁺, a⟧⟧`, for homogeneous `a` commuting with
    /// `E±` and `H`.
    pub fn project(&self, alg: &Algebra, a: &HcElement) -> Result<HcElement, OspError> {
        for g in [&self.e_plus, &self.e_minus, &self.h] {
            let r = alg.gb(g, a);
            if !r.is_zero() {
                return Err(OspError::NotInEvenCentraliser(r.witness().unwrap_or_default()));
            }
        }
        Ok(self.project_unchecked(alg, a))
    }

    pub fn project_unchecked(&self, alg: &Algebra, a: &HcElement) -> HcElement {
        a.sub(&alg.gb(&self.f_minus, &alg.gb(&self.f_plus, a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cherednik::Params;
    use crate::roots::{Family, RootDatum};
    use std::sync::Arc;

    fn algebra(f: Family, r: usize, a: usize) -> Algebra {
        let rd = RootDatum::build(f, r, a).unwrap();
        let g = rd.enumerate().unwrap();
        let p = Params::symbolic(rd.num_orbits);
        Algebra::new(Arc::new(rd), Arc::new(g), p)
    }

    #[test]
    fn bracket_table_and_scasimir() {
        for (f, r, a) in [(Family::A, 2, 3), (Family::A1Product, 3, 3), (Family::B, 2, 2)] {
            let alg = algebra(f, r, a);
            let osp = Osp::build(&alg).unwrap();
            assert!(osp.scasimir_square_check(&alg));
            assert!(osp.in_centraliser(&alg, &osp.casimir));
        }
    }

    #[test]
    fn projections() {
        let alg = algebra(Family::A, 2, 3);
        let osp = Osp::build(&alg).unwrap();
        let quarter = alg.scalar(Scalar::rat(1, 4));
        let ps = osp.project(&alg, &osp.scasimir).unwrap();
        assert_eq!(ps, osp.casimir.add(&quarter).scale(&Scalar::int(-2)));
        let pc = osp.project(&alg, &osp.casimir_sl2).unwrap();
        assert_eq!(pc, osp.casimir.scale(&Scalar::int(3)));
        assert_eq!(osp.project(&alg, &alg.one()).unwrap(), alg.one());
    }

    #[test]
    fn weyl_h() {
        let alg = algebra(Family::A1Product, 3, 3);
        let alg0 = alg.with_params(alg.params.zero_c());
        let osp = Osp::build(&alg0).unwrap();
        let mut xy = alg0.zero();
        for p in 1..=3 {
            xy = xy.add(&alg0.mul(&alg0.x(p), &alg0.y(p)));
        }
        let expect = xy.scale(&alg0.t().inv().unwrap()).add(&alg0.scalar(Scalar::rat(3, 2)));
        assert_eq!(osp.h, expect);
    }
}
