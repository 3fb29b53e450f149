//! The polynomial-parameter energy `h_t(x) = -t^|x|` and the two-parameter
//! throttled deformation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::energize::{build_bundle, param_energy};
use crate::error::{Error, Result};
use crate::exact::{minor_sums, BiPoly, Laurent, Matrix, Ring};
use crate::report::{Check, Report, Status};
use crate::setsys::SetSystem;
use crate::spectra::{palindrome_class, PalindromeClass};

/// Which closed form to use for `L_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LtForm {
    /// `1 - f_{W⁻(x)∩W⁻(y)}(t) / t^|x∩y|`, the inverse of `g_t`.
    #[default]
    Code,
    /// `t^{-dim(x∩y)} (1 - f_{W⁻(x)∩W⁻(y)}(t))`, kept for comparison.
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamBundle {
    pub system: SetSystem,
    /// `ω(x)ω(y)(1 - f_{W⁺(x)∩W⁺(y)}(t))`
    pub gt: Matrix<Laurent>,
    pub lt: Matrix<Laurent>,
    /// `1 - f_{W⁻(x)∩W⁻(y)}(t)`
    pub lmm: Matrix<Laurent>,
}

fn require_simplicial(sys: &SetSystem) -> Result<()> {
    if sys.is_simplicial() {
        Ok(())
    } else {
        Err(Error::PreconditionViolation("the parameter case needs a simplicial complex".into()))
    }
}

pub fn build_param(sys: &SetSystem) -> Result<ParamBundle> {
    build_param_with(sys, LtForm::Code)
}

pub fn build_param_with(sys: &SetSystem, form: LtForm) -> Result<ParamBundle> {
    require_simplicial(sys)?;
    let b = build_bundle(sys, &param_energy(sys))?;
    let n = sys.len();
    let lt = Matrix::from_fn(n, |i, j| {
        let k = sys.cell(i).intersection(sys.cell(j)).len() as i64;
        let e = b.lmm.get(i, j).clone();
        match form {
            // 1 - f = e, so 1 - f/t^k = 1 - (1 - e) t^{-k}
            LtForm::Code => Laurent::one() - (Laurent::one() - e).shifted(-k),
            LtForm::Text => e.shifted(1 - k),
        }
    });
    Ok(ParamBundle {
        system: sys.clone(),
        gt: b.g,
        lt,
        lmm: b.lmm,
    })
}

/// `1 - f_G(t)`.
pub fn genus(sys: &SetSystem) -> Laurent {
    Laurent::one() - sys.f_poly_eval(&Laurent::t())
}

/// `g_t` and `L_t` at a rational value of `t`.
pub fn eval_param(p: &ParamBundle, t: &BigRational) -> Result<(Matrix<BigRational>, Matrix<BigRational>)> {
    let at = |m: &Matrix<Laurent>| m.try_map(|e| e.eval(t)).ok_or_else(|| Error::Pole(format!("L_t has a pole at t = {t}")));
    Ok((at(&p.gt)?, at(&p.lt)?))
}

/// Green Star: `g_t L_t = I` as an identity of Laurent polynomials.
pub fn verify_green_star(sys: &SetSystem) -> Result<Report> {
    let p = build_param(sys)?;
    let prod = p.gt.mat_mul(&p.lt)?;
    let other = p.lt.mat_mul(&p.gt)?;
    Ok(vec![
        Check::boolean("green-star", "g_t L_t = I", prod.is_identity(), prod.is_identity()),
        Check::boolean("green-star-left", "L_t g_t = I", other.is_identity(), other.is_identity()),
    ]
    .into())
}

/// `Σ g_t(x,y) = tr(S g_t) = 1 - f_G(t)`, plus the per-row identity.
pub fn verify_param_energy(sys: &SetSystem) -> Result<Report> {
    let p = build_param(sys)?;
    let want = genus(sys);
    let strace = (0..sys.len()).fold(Laurent::zero(), |acc, i| {
        let d = p.gt.get(i, i).clone();
        if sys.cell(i).omega() < 0 {
            acc - d
        } else {
            acc + d
        }
    });
    let row_bad = (0..sys.len()).find(|&i| {
        let d = p.gt.get(i, i).clone();
        let want = if sys.cell(i).omega() < 0 { -d } else { d };
        p.gt.row_sum(i) != want
    });
    Ok(vec![
        Check::compare("param-energy", "sum of g_t = 1 - f_G(t)", &want, &p.gt.sum_entries()),
        Check::compare("param-super-trace", "tr(S g_t) = 1 - f_G(t)", &want, &strace),
        Check::boolean(
            "param-energy-row",
            "row sum of g_t = ω(x) g_t(x,x)",
            row_bad.is_none(),
            row_bad.map_or("all rows".to_string(), |i| format!("row {i} differs")),
        ),
    ]
    .into())
}

/// `det g_t = (-1)^n t^{Σ|x|}` and `det L_t det g_t = 1`. The product
/// `∏(-t)^|x|` is compared with `det L_t` and recorded, not asserted.
pub fn verify_param_det(sys: &SetSystem) -> Result<Report> {
    let p = build_param(sys)?;
    let n = sys.len() as i64;
    let weight: i64 = sys.cells().iter().map(|c| c.len() as i64).sum();
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let dg = p.gt.det();
    let dl = p.lt.det();
    let text_sign = if weight % 2 == 0 { 1 } else { -1 };
    let text = Laurent::monomial(text_sign, weight);
    Ok(vec![
        Check::compare("param-det-g", "det g_t = (-1)^n t^(sum |x|)", &Laurent::monomial(sign, weight), &dg),
        Check::compare("param-det-product", "det L_t det g_t = 1", &Laurent::one(), &(dl.clone() * dg)),
        Check::new("param-det-text", "det L_t = prod (-t)^|x|", &text, &dl, Status::Info)
            .with_detail(format!("agrees: {}", text == dl)),
    ]
    .into())
}

/// Which connection matrix to deform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Mm,
    Pp,
}

/// Energy `H` on the last cell (canonical order) and 1 elsewhere; then the
/// last column, corner included, is multiplied by `T`.
pub fn deform_throttled(sys: &SetSystem, side: Side) -> Result<Matrix<BiPoly>> {
    let sys = sys.canonical_order();
    let n = sys.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty system".into()));
    }
    let last = sys.cell(n - 1);
    if sys.cells()[..n - 1].iter().any(|c| last.is_proper_subset(c)) {
        return Err(Error::PreconditionViolation(format!("last cell {last} is not maximal")));
    }
    let mut h = vec![BiPoly::one(); n];
    h[n - 1] = BiPoly::var_h();
    let b = build_bundle(&sys, &h)?;
    let mut m = match side {
        Side::Mm => b.lmm,
        Side::Pp => b.lpp,
    };
    for i in 0..n {
        m.set(i, n - 1, m.get(i, n - 1).clone() * BiPoly::var_t());
    }
    Ok(m)
}

/// Principal-minor sums of both deformed matrices, `[1, e_1, ..., e_n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Deformation {
    pub p: Vec<BiPoly>,
    pub q: Vec<BiPoly>,
}

pub fn deformation(sys: &SetSystem) -> Result<Deformation> {
    Ok(Deformation {
        p: minor_sums(&deform_throttled(sys, Side::Mm)?),
        q: minor_sums(&deform_throttled(sys, Side::Pp)?),
    })
}

pub fn eval_list(list: &[BiPoly], t: i64, h: i64) -> Vec<BigInt> {
    list.iter().map(|c| c.eval(&BigInt::from(t), &BigInt::from(h))).collect()
}

fn show<R: Ring>(v: &[R]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Multilinearity in `T, H`, `q_{T,H} = p_{H,T}`, palindromic at `(1,1)` and,
/// after dropping the vanishing determinant, at `(0,0)`.
pub fn verify_deformation(sys: &SetSystem) -> Result<Report> {
    let d = deformation(sys)?;
    let multilinear = d.p.iter().chain(&d.q).all(BiPoly::is_multilinear);
    let swapped: Vec<BiPoly> = d.p.iter().map(BiPoly::swap_vars).collect();
    let p11 = eval_list(&d.p, 1, 1);
    let mut p00 = eval_list(&d.p, 0, 0);
    while p00.last().is_some_and(Zero::is_zero) {
        p00.pop();
    }
    Ok(vec![
        Check::boolean("deform-multilinear", "coefficients multilinear in T, H", multilinear, multilinear),
        Check::compare("deform-swap", "q_{T,H} = p_{H,T}", &show(&swapped), &show(&d.q)),
        Check::compare(
            "deform-palindrome-11",
            "p_{1,1} palindromic",
            &PalindromeClass::Palindromic,
            &palindrome_class(&p11),
        )
        .with_detail(show(&p11)),
        Check::compare(
            "deform-palindrome-00",
            "p_{0,0} palindromic after the zero eigenvalue",
            &PalindromeClass::Palindromic,
            &palindrome_class(&p00),
        )
        .with_detail(show(&p00)),
    ]
    .into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsys::{complete_complex, downward_closure, Cell};

    fn five() -> SetSystem {
        downward_closure(&[Cell::from([1, 2]), Cell::from([2, 3])]).unwrap()
    }

    #[test]
    fn single_cell() {
        let s = SetSystem::from_atoms(&[&[1]]).unwrap();
        let p = build_param(&s).unwrap();
        assert_eq!(p.gt.get(0, 0), &Laurent::monomial(-1, 1));
        assert_eq!(p.lt.get(0, 0), &Laurent::monomial(-1, -1));
        assert!(verify_green_star(&s).unwrap().all_passed());
        assert_eq!(verify_param_energy(&s).unwrap().get("param-energy").unwrap().got, "-t");
    }

    #[test]
    fn five_cell_example() {
        let s = five();
        let p = build_param(&s).unwrap();
        let t = Laurent::t();
        assert_eq!(p.gt.get(0, 0), &(-(t.clone() * t.clone()) - t.clone()));
        assert_eq!(p.lt.get(0, 0), &(Laurent::one() - (t.clone() + Laurent::one()) * Laurent::monomial(1, -1)));
        assert!(verify_green_star(&s).unwrap().all_passed());
        let e = verify_param_energy(&s).unwrap();
        assert!(e.all_passed());
        assert_eq!(e.get("param-energy").unwrap().got, "-2*t^2 - 3*t");
        let d = verify_param_det(&s).unwrap();
        assert!(d.all_passed(), "{d:#?}");
        assert_eq!(d.get("param-det-g").unwrap().got, "-t^7");
    }

    #[test]
    fn t_minus_one_recovers_omega() {
        let s = complete_complex(2).unwrap();
        let p = build_param(&s).unwrap();
        let (g, _) = eval_param(&p, &BigRational::from_integer((-1).into())).unwrap();
        let omega: Vec<BigRational> = s.cells().iter().map(|c| BigRational::from_integer(c.omega().into())).collect();
        assert_eq!(g, build_bundle(&s, &omega).unwrap().g);
        assert_eq!(verify_param_det(&s).unwrap().get("param-det-g").unwrap().got, "-t^4");
        assert!(matches!(eval_param(&p, &BigRational::zero()), Err(Error::Pole(_))));
    }

    #[test]
    fn text_form_does_not_invert() {
        let p = build_param_with(&five(), LtForm::Text).unwrap();
        assert!(!p.gt.mat_mul(&p.lt).unwrap().is_identity());
    }

    #[test]
    fn rejects_sets_of_sets() {
        let komma = SetSystem::from_atoms(&[&[1], &[1, 2]]).unwrap();
        assert!(matches!(build_param(&komma), Err(Error::PreconditionViolation(_))));
        assert!(matches!(deform_throttled(&komma, Side::Mm), Ok(_)));
        let chain = SetSystem::from_atoms(&[&[1, 2], &[1]]).unwrap();
        // canonical order puts {1,2} last, and it is maximal
        assert!(deform_throttled(&chain, Side::Pp).is_ok());
    }

    #[test]
    fn deformation_of_an_edge() {
        let s = complete_complex(2).unwrap();
        let r = verify_deformation(&s).unwrap();
        assert!(r.all_passed(), "{r:#?}");
        let m = deform_throttled(&s, Side::Mm).unwrap();
        assert_eq!(m.get(2, 2).to_string(), "2T + TH");
    }

    fn nine() -> SetSystem {
        SetSystem::from_atoms(&[&[1], &[2], &[3], &[4], &[1, 2], &[2, 3], &[2, 4], &[3, 4], &[2, 3, 4]]).unwrap()
    }

    #[test]
    fn nine_cell_deformation() {
        // listed as (det, ..., trace, 1) with entries a + bT + cHT
        let golden: [(i64, i64, i64); 10] = [
            (0, 0, 1),
            (1, 6, 16),
            (16, 65, 95),
            (95, 265, 268),
            (268, 519, 380),
            (380, 519, 268),
            (268, 265, 95),
            (95, 65, 16),
            (16, 6, 1),
            (1, 0, 0),
        ];
        let expect: Vec<BiPoly> = golden
            .iter()
            .rev()
            .map(|&(a, b, c)| BiPoly::constant(a) + BiPoly::monomial(b, 1, 0) + BiPoly::monomial(c, 1, 1))
            .collect();
        let d = deformation(&nine()).unwrap();
        assert_eq!(d.p, expect);
        let swapped: Vec<BiPoly> = expect.iter().map(BiPoly::swap_vars).collect();
        assert_eq!(d.q, swapped);
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(eval_list(&d.p, 1, 1), ints(&[1, 23, 176, 628, 1167, 1167, 628, 176, 23, 1]));
        assert_eq!(eval_list(&d.p, 0, 0), ints(&[1, 16, 95, 268, 380, 268, 95, 16, 1, 0]));
        assert_eq!(eval_list(&d.p, 0, 1), eval_list(&d.p, 0, 0));
        assert!(verify_deformation(&nine()).unwrap().all_passed());
    }
}
