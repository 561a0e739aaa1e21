//! The defect `D_{f,X}(0)`, the vanishing-cycle Euler characteristic
//! `χ(φ_f)_0 = -D`, Milnor numbers, Euler obstructions of functions, and
//! integer bookkeeping for constructible functions over user strata.

use std::sync::Arc;

use serde::Serialize;

use crate::conormal::{isolated_intersection_number, le_vogel, VarietyGerm};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::lecycles::{le_numbers, verify_properness, FrameChoice, GammaChain, LeNumbers, Mode};
use crate::polyparse::{Polynomial, VariableFrame};
use crate::rng::SplitMix64;

/// A named identity evaluated while building a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl IdentityCheck {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        IdentityCheck {
            name: name.into(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DefectReport {
    /// `D = Σ_k (-1)^(d - k) λ^k`
    pub defect: i64,
    pub chi_phi_0: i64,
    pub lambda: LeNumbers,
    pub mode: Mode,
    /// exponent base of the sign: `N` in affine mode, `dim X` otherwise
    pub d: usize,
    pub identities: Vec<IdentityCheck>,
    pub chain: GammaChain,
}

impl DefectReport {
    fn assemble(lambda: LeNumbers, chain: GammaChain, d: usize) -> Self {
        let defect = lambda.alternating_sum(d);
        let chi_phi_0 = -defect;
        let properness = verify_properness(&chain);
        let above_s = chain
            .steps
            .iter()
            .filter(|s| s.k as i64 > lambda.s)
            .all(|s| s.lambda == 0);
        let identities = vec![
            IdentityCheck::new(
                "chi_phi_0 = -D",
                chi_phi_0 == -defect,
                format!("{chi_phi_0} = -({defect})"),
            ),
            IdentityCheck::new(
                "lambda^k = 0 for k > s",
                above_s,
                format!("s = {}", lambda.s),
            ),
            IdentityCheck::new("properness", properness.passed, properness.label()),
        ];
        DefectReport {
            defect,
            chi_phi_0,
            mode: lambda.mode,
            lambda,
            d,
            identities,
            chain,
        }
    }

    pub fn all_identities_hold(&self) -> bool {
        self.identities.iter().all(|i| i.passed)
    }
}

/// `D` for `X = C^N` from the affine Lê numbers.
pub fn defect_affine(f: &Polynomial, choice: &FrameChoice) -> Result<DefectReport> {
    let (lambda, chain) = le_numbers(f, choice)?;
    let mut report = DefectReport::assemble(lambda, chain, f.nvars());
    if report.lambda.s == 0 {
        let mu = milnor_number(f)?;
        let sign = if f.nvars().is_multiple_of(2) { 1 } else { -1 };
        report.identities.push(IdentityCheck::new(
            "D = (-1)^N mu",
            report.defect == sign * mu as i64,
            format!("D = {}, mu = {mu}", report.defect),
        ));
    }
    Ok(report)
}

/// `D` from the Lê-Vogel numbers of `f` on `X`.
pub fn defect_levogel(
    x: &VarietyGerm,
    f: &Polynomial,
    choice: &FrameChoice,
) -> Result<DefectReport> {
    let (lambda, chain) = le_vogel(x, f, choice)?;
    let mut report = DefectReport::assemble(lambda, chain, x.d);
    if report.lambda.s == 0 {
        let number = isolated_intersection_number(x, f)?;
        report.identities.push(IdentityCheck::new(
            "lambda^0 = (conormal . im df)",
            report.lambda.get(0) == number,
            format!(
                "lambda^0 = {}, intersection = {number}",
                report.lambda.get(0)
            ),
        ));
    }
    Ok(report)
}

/// Milnor number at 0: the local colength of the Jacobian ideal.
pub fn milnor_number(f: &Polynomial) -> Result<u64> {
    if f.is_constant() {
        return Err(Error::NonIsolatedCriticalLocus);
    }
    let jacobian = Ideal::new(f.frame(), f.gradient())?;
    if jacobian.local_dimension() > 0 {
        return Err(Error::NonIsolatedCriticalLocus);
    }
    jacobian.local_colength()
}

/// `Eu_{f,X}(0)`, defined only for isolated singularities (`s <= 0`).
pub fn euler_obstruction_of_function(
    x: &VarietyGerm,
    f: &Polynomial,
    choice: &FrameChoice,
) -> Result<i64> {
    let report = defect_levogel(x, f, choice)?;
    if report.lambda.s > 0 {
        return Err(Error::NotIsolatedSingularity { s: report.lambda.s });
    }
    Ok(report.defect)
}

/// Euler characteristic of the Milnor fibre of `f` at 0: `1 - D`.
pub fn milnor_fibre_chi_affine(f: &Polynomial, choice: &FrameChoice) -> Result<i64> {
    Ok(1 - defect_affine(f, choice)?.defect)
}

/// A linear form with coefficients drawn from the seeded stream in
/// `{-7, ..., 7} \ {0}`.
pub fn generic_linear_form(frame: &Arc<VariableFrame>, seed: u64) -> Polynomial {
    let mut rng = SplitMix64::new(seed);
    let mut f = Polynomial::zero(frame);
    for i in 0..frame.len() {
        let c = loop {
            let c = rng.small_int(7);
            if c != 0 {
                break c;
            }
        };
        f = &f + &Polynomial::var(frame, i).scale(&crate::polyparse::rational(c));
    }
    f
}

/// `χ(V_i ∩ B ∩ f^{-1}(t))` and `Eu_X(V_i)` for one stratum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumDatum {
    pub label: String,
    pub chi_slice: i64,
    pub eu_value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructibleStratum {
    pub label: String,
    pub chi: i64,
    pub alpha: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConstructibleFunctionData {
    pub strata: Vec<ConstructibleStratum>,
}

/// `χ(A; α) = Σ_i χ(A ∩ V_i) α(V_i)`.
pub fn weighted_euler_characteristic(data: &ConstructibleFunctionData) -> i64 {
    data.strata.iter().map(|s| s.chi * s.alpha).sum()
}

/// `α(0) - Σ_i χ_i Eu_i`; zero exactly when the local Euler condition holds
/// for this data.
pub fn check_euler_condition(alpha_at_0: i64, strata: &[StratumDatum]) -> i64 {
    alpha_at_0 - strata.iter().map(|s| s.chi_slice * s.eu_value).sum::<i64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lecycles::CoordinateFrame;
    use crate::polyparse::parse_polynomial;

    fn poly(vars: &str, s: &str) -> Polynomial {
        parse_polynomial(s, &VariableFrame::parse_list(vars).unwrap()).unwrap()
    }

    #[test]
    fn affine_defects() {
        let search = FrameChoice::search(0, 25);
        let r = defect_affine(&poly("x,y", "x^2+y^2"), &search).unwrap();
        assert_eq!((r.defect, r.chi_phi_0), (1, -1));
        assert!(r.all_identities_hold());
        assert_eq!(
            defect_affine(&poly("x,y", "x*y^2"), &search)
                .unwrap()
                .defect,
            1
        );
        assert_eq!(
            defect_affine(&poly("x,y,z", "x^2+y^2*z"), &search)
                .unwrap()
                .defect,
            -1
        );
        assert_eq!(
            milnor_fibre_chi_affine(&poly("x,y,z", "x^2+y^2*z"), &search),
            Ok(2)
        );
        assert_eq!(
            milnor_fibre_chi_affine(&poly("x,y", "x*y^2"), &search),
            Ok(0)
        );
        assert_eq!(
            milnor_fibre_chi_affine(&poly("x,y", "x^2+y^2"), &search),
            Ok(0)
        );
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor_number(&poly("x,y", "x^2+y^2")), Ok(1));
        assert_eq!(milnor_number(&poly("x,y", "x^3+y^2")), Ok(2));
        assert_eq!(milnor_number(&poly("x,y", "x^4+y^5")), Ok(12));
        assert_eq!(
            milnor_number(&poly("x,y", "x*y^2")),
            Err(Error::NonIsolatedCriticalLocus)
        );
    }

    #[test]
    fn euler_obstructions() {
        let f = VariableFrame::parse_list("x,y").unwrap();
        let ambient = VarietyGerm::ambient(&f);
        let cusp = parse_polynomial("x^3+y^2", &f).unwrap();
        let id = FrameChoice::Given(CoordinateFrame::identity(&f));
        assert_eq!(euler_obstruction_of_function(&ambient, &cusp, &id), Ok(2));
        let lines = VarietyGerm::new(&f, vec![parse_polynomial("x*y", &f).unwrap()]).unwrap();
        let l = generic_linear_form(&f, 3);
        assert_eq!(
            euler_obstruction_of_function(&lines, &l, &FrameChoice::search(0, 25)),
            Ok(0)
        );
        assert!(matches!(
            euler_obstruction_of_function(&ambient, &parse_polynomial("x*y^2", &f).unwrap(), &id),
            Err(Error::NotIsolatedSingularity { s: 1 })
        ));
    }

    #[test]
    fn constant_function_gives_euler_obstruction_of_x() {
        let f = VariableFrame::parse_list("x,y").unwrap();
        let zero = Polynomial::zero(&f);
        for eq in ["x*y", "x^2 - y^3"] {
            let x = VarietyGerm::new(&f, vec![parse_polynomial(eq, &f).unwrap()]).unwrap();
            let r = defect_levogel(&x, &zero, &FrameChoice::search(0, 25)).unwrap();
            assert_eq!(r.defect, 2, "{eq}");
            assert_eq!(r.chi_phi_0, -2);
        }
    }

    #[test]
    fn bookkeeping() {
        assert_eq!(
            weighted_euler_characteristic(&ConstructibleFunctionData::default()),
            0
        );
        let one = |chi, alpha| ConstructibleStratum {
            label: "V".into(),
            chi,
            alpha,
        };
        assert_eq!(
            weighted_euler_characteristic(&ConstructibleFunctionData {
                strata: vec![one(1, 5)]
            }),
            5
        );
        assert_eq!(
            weighted_euler_characteristic(&ConstructibleFunctionData {
                strata: vec![one(2, 1), one(-1, 3)]
            }),
            -1
        );
        let s = |chi_slice, eu_value| StratumDatum {
            label: "V".into(),
            chi_slice,
            eu_value,
        };
        assert_eq!(check_euler_condition(1, &[s(0, 1)]), 1);
        assert_eq!(check_euler_condition(7, &[]), 7);
        // a general linear form on the two axes: each punctured branch slice
        // is one point, so 2 = 1 + 1
        assert_eq!(check_euler_condition(2, &[s(1, 1), s(1, 1)]), 0);
    }
}
