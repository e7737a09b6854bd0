//! Isolated singularities at the origin: Milnor and Tjurina numbers, T¹,
//! ADE recognition and Weyl group data.

mod ade;
mod weyl;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    AlgebraError, Colength, Ideal, JetColength, ModulePresentation, Monomial, MonomialOrder, Polynomial, Rational, RingRef,
};

pub use ade::{classify_ade, corank, hessian_at_origin, normal_form};
pub use weyl::{
    burns_wahl_data, dynkin_data, enumerate_weyl_group, AdeFamily, AdeType, BurnsWahlData, DynkinData,
    ENUMERATION_RANK_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the zero polynomial does not define a hypersurface")]
    ZeroPolynomial,
    #[error("a unit defines the empty germ")]
    UnitPolynomial,
    #[error("the polynomial is constant")]
    ConstantInput,
    #[error("the origin does not lie on the variety")]
    OriginNotOnVariety,
    #[error("the singularity at the origin is not isolated")]
    NonIsolated,
    #[error("not a complete intersection at the origin: expected dimension {expected}, found {found:?}")]
    NotCompleteIntersection { expected: usize, found: Option<usize> },
    #[error("{0} equations in {1} variables: need at least one and fewer than the number of variables")]
    EquationCount(usize, usize),
    #[error("jet computation did not stabilize within the degree cap (history {0:?})")]
    JetUnstable(Vec<(u32, usize)>),
    #[error("invalid ADE type `{0}`")]
    InvalidAdeType(String),
    #[error("Weyl group of {ade}: closed form {closed_form} but enumeration found {enumerated}")]
    WeylMismatch { ade: String, closed_form: String, enumerated: u64 },
    #[error("empty list of singularities")]
    EmptyConfiguration,
}

pub type Result<T> = std::result::Result<T, SingularityError>;

/// Invariants of one isolated hypersurface singularity at the origin.
#[derive(Debug, Clone)]
pub struct SingularityReport {
    pub ring: RingRef,
    pub mu: usize,
    pub tau: usize,
    /// Monomials spanning `T¹`, lowest degree first.
    pub t1_basis: Vec<Monomial>,
    pub corank: usize,
    pub ade: Option<AdeType>,
    pub dynkin: Option<DynkinData>,
}

impl SingularityReport {
    pub fn t1_basis_strings(&self) -> Vec<String> {
        self.t1_basis.iter().map(|m| m.format(&self.ring)).collect()
    }

    pub fn t1_basis_polynomials(&self) -> Vec<Polynomial> {
        self.t1_basis.iter().map(|m| Polynomial::monomial(&self.ring, m.clone(), Rational::one())).collect()
    }
}

impl Serialize for SingularityReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SingularityReport", 6)?;
        st.serialize_field("mu", &self.mu)?;
        st.serialize_field("tau", &self.tau)?;
        st.serialize_field("t1_basis", &self.t1_basis_strings())?;
        st.serialize_field("corank", &self.corank)?;
        st.serialize_field("ade", &self.ade)?;
        st.serialize_field("dynkin", &self.dynkin)?;
        st.end()
    }
}

fn check_hypersurface(f: &Polynomial) -> Result<()> {
    if f.is_zero() {
        return Err(SingularityError::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(SingularityError::UnitPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(SingularityError::OriginNotOnVariety);
    }
    Ok(())
}

/// `(∂f/∂x_1, …, ∂f/∂x_n)`.
pub fn jacobian_ideal(f: &Polynomial) -> Result<Ideal> {
    if f.is_constant() {
        return Err(SingularityError::ConstantInput);
    }
    let n = f.ring().nvars();
    let partials = (0..n).map(|i| f.derivative(i)).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Ideal::new(f.ring(), partials)?)
}

/// Local colength of the Jacobian ideal.
pub fn milnor_number(f: &Polynomial) -> Result<usize> {
    let j = jacobian_ideal(f)?;
    j.colength(&MonomialOrder::NegDegRevLex)?.finite().ok_or(SingularityError::NonIsolated)
}

/// Tjurina algebra `O/(f, ∂f)` at the origin. Fills `mu`, `tau`, `t1_basis`
/// and `corank`; a smooth point has `tau = 0` and an empty basis.
pub fn tjurina(f: &Polynomial) -> Result<SingularityReport> {
    check_hypersurface(f)?;
    let ord = MonomialOrder::NegDegRevLex;
    let tj = jacobian_ideal(f)?.with_generators([f.clone()])?;
    let sb = tj.standard_basis(&ord)?;
    let tau = sb.colength().finite().ok_or(SingularityError::NonIsolated)?;
    let mut t1_basis = sb.standard_monomials()?;
    t1_basis.reverse();
    let mu = milnor_number(f)?;
    Ok(SingularityReport { ring: f.ring().clone(), mu, tau, t1_basis, corank: corank(f), ade: None, dynkin: None })
}

/// Full report: Tjurina data, ADE label when the germ is a rational double
/// point, and its Dynkin data.
pub fn analyze(f: &Polynomial) -> Result<SingularityReport> {
    let mut report = tjurina(f)?;
    report.ade = ade::classify_from_report(f, &report)?;
    if let Some(t) = report.ade {
        report.dynkin = Some(dynkin_data(t)?);
    }
    Ok(report)
}

/// `T¹` of an isolated complete intersection, as a quotient of `O_X^p`.
#[derive(Debug, Clone)]
pub struct IcisT1 {
    pub ring: RingRef,
    pub equations: Vec<Polynomial>,
    pub tau: usize,
    /// Generators of the submodule of `O^p` that is divided out: the
    /// Jacobian columns followed by `f_k e_j`.
    pub relations: Vec<Vec<Polynomial>>,
    /// Basis of the quotient as `(component, monomial)`, lowest degree first.
    pub basis: Vec<(usize, Monomial)>,
}

impl IcisT1 {
    /// Basis elements as vectors in `O^p`.
    pub fn basis_vectors(&self) -> Vec<Vec<Polynomial>> {
        let p = self.equations.len();
        self.basis
            .iter()
            .map(|(j, m)| {
                (0..p)
                    .map(|k| {
                        if k == *j {
                            Polynomial::monomial(&self.ring, m.clone(), Rational::one())
                        } else {
                            Polynomial::zero(&self.ring)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn describe(&self) -> String {
        format!(
            "O^{p} / (Jacobian columns + ({eqs}) O^{p}) over O = Q[{ring}] localized at 0",
            p = self.equations.len(),
            eqs = self.equations.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", "),
            ring = self.ring,
        )
    }
}

impl Serialize for IcisT1 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let basis: Vec<(usize, String)> = self.basis.iter().map(|(j, m)| (*j, m.format(&self.ring))).collect();
        let relations: Vec<Vec<String>> =
            self.relations.iter().map(|v| v.iter().map(|p| p.to_string()).collect()).collect();
        let mut st = s.serialize_struct("IcisT1", 4)?;
        st.serialize_field("tau", &self.tau)?;
        st.serialize_field("presentation", &self.describe())?;
        st.serialize_field("relations", &relations)?;
        st.serialize_field("basis", &basis)?;
        st.end()
    }
}

const ICIS_START_CAP: u32 = 4;

/// `T¹ = O^p / (J^T O^n + I O^p)` by truncated linear algebra.
pub fn t1_complete_intersection(fs: &[Polynomial]) -> Result<IcisT1> {
    let p = fs.len();
    let ring = match fs.first() {
        Some(f) => f.ring().clone(),
        None => return Err(SingularityError::EquationCount(0, 0)),
    };
    let n = ring.nvars();
    if p >= n {
        return Err(SingularityError::EquationCount(p, n));
    }
    for f in fs {
        if f.ring() != &ring {
            return Err(AlgebraError::RingMismatch { left: ring.to_string(), right: f.ring().to_string() }.into());
        }
        if f.is_zero() {
            return Err(SingularityError::ZeroPolynomial);
        }
        if !f.constant_term().is_zero() {
            return Err(SingularityError::OriginNotOnVariety);
        }
    }
    let ideal = Ideal::new(&ring, fs.to_vec())?;
    let local_dim = local_dimension(&ideal)?;
    if local_dim != Some(n - p) {
        return Err(SingularityError::NotCompleteIntersection { expected: n - p, found: local_dim });
    }
    let mut relations = Vec::with_capacity(n + p * p);
    for i in 0..n {
        relations.push(fs.iter().map(|f| f.derivative(i)).collect::<std::result::Result<Vec<_>, _>>()?);
    }
    for f in fs {
        for j in 0..p {
            relations.push((0..p).map(|k| if k == j { f.clone() } else { Polynomial::zero(&ring) }).collect());
        }
    }
    let pres = ModulePresentation { ring: ring.clone(), rank: p, generators: relations.clone() };
    match pres.stable_length(ICIS_START_CAP) {
        (JetColength::Stable(tau), q) => {
            let basis = q.map(|q| q.basis).unwrap_or_default();
            Ok(IcisT1 { ring, equations: fs.to_vec(), tau, relations, basis })
        }
        (JetColength::Unstable { history }, _) => {
            if history.len() >= 2 {
                Err(SingularityError::NonIsolated)
            } else {
                Err(SingularityError::JetUnstable(history))
            }
        }
    }
}

/// Dimension of the germ of `V(I)` at the origin, `None` if the origin is
/// not on it. Computed from the tangent cone: the local standard basis has
/// the same Hilbert–Samuel dimension as its leading ideal.
fn local_dimension(ideal: &Ideal) -> Result<Option<usize>> {
    let sb = ideal.standard_basis(&MonomialOrder::NegDegRevLex)?;
    if sb.is_unit() {
        return Ok(None);
    }
    let lead = Ideal::new(
        ideal.ring(),
        sb.leading_monomials().into_iter().map(|m| Polynomial::monomial(ideal.ring(), m, Rational::one())),
    )?;
    Ok(lead.dimension()?)
}

/// Local colength of an ideal, or `None` when infinite.
pub fn local_colength(ideal: &Ideal) -> Result<Option<usize>> {
    Ok(match ideal.colength(&MonomialOrder::NegDegRevLex)? {
        Colength::Finite(n) => Some(n),
        Colength::Infinite => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use crate::parse::parse_polynomial;

    fn poly(vars: &[&str], src: &str) -> Polynomial {
        let r = Ring::new(vars.iter().copied()).unwrap();
        parse_polynomial(src, &r).unwrap()
    }

    #[test]
    fn node_in_three_variables() {
        let f = poly(&["x", "y", "z"], "x^2 + y^2 + z^2");
        let r = analyze(&f).unwrap();
        assert_eq!((r.mu, r.tau, r.corank), (1, 1, 0));
        assert_eq!(r.t1_basis_strings(), ["1"]);
        assert_eq!(r.ade, Some(AdeType::a(1)));
        let j = jacobian_ideal(&f).unwrap();
        assert_eq!(j.to_strings(), ["2*x", "2*y", "2*z"]);
    }

    #[test]
    fn a_n_bases() {
        for n in 1..=8 {
            let f = poly(&["x", "y", "z"], &format!("x*y - z^{}", n + 1));
            let r = tjurina(&f).unwrap();
            assert_eq!(r.tau, n);
            assert_eq!(r.mu, n);
            let want: Vec<String> =
                (0..n).map(|k| if k == 0 { "1".into() } else if k == 1 { "z".into() } else { format!("z^{k}") }).collect();
            assert_eq!(r.t1_basis_strings(), want);
        }
    }

    #[test]
    fn degenerate_inputs_have_distinct_errors() {
        let r = Ring::new(["x", "y"]).unwrap();
        assert_eq!(tjurina(&Polynomial::zero(&r)).unwrap_err(), SingularityError::ZeroPolynomial);
        assert_eq!(tjurina(&Polynomial::from_int(&r, 3)).unwrap_err(), SingularityError::UnitPolynomial);
        assert_eq!(tjurina(&poly(&["x", "y"], "x^2 + y^2 + 1")).unwrap_err(), SingularityError::OriginNotOnVariety);
        assert_eq!(tjurina(&poly(&["x", "y"], "x^2")).unwrap_err(), SingularityError::NonIsolated);
        assert_eq!(jacobian_ideal(&Polynomial::from_int(&r, 3)).unwrap_err(), SingularityError::ConstantInput);
    }

    #[test]
    fn smooth_point_is_rigid() {
        let r = tjurina(&poly(&["x", "y"], "x + y^2")).unwrap();
        assert_eq!((r.mu, r.tau), (0, 0));
        assert!(r.t1_basis.is_empty());
    }

    #[test]
    fn non_quasihomogeneous_tau_below_mu() {
        // x^5 + y^5 + x^2 y^2 has mu = 11, tau = 10
        let r = tjurina(&poly(&["x", "y"], "x^5 + y^5 + x^2*y^2")).unwrap();
        assert_eq!((r.mu, r.tau), (11, 10));
    }

    #[test]
    fn icis_matches_hypersurface() {
        for src in ["x^2 + y^2 + z^2", "x*y - z^4", "x^2 + y^3 + z^4"] {
            let f = poly(&["x", "y", "z"], src);
            let t = t1_complete_intersection(std::slice::from_ref(&f)).unwrap();
            assert_eq!(t.tau, tjurina(&f).unwrap().tau, "{src}");
            assert_eq!(t.basis.len(), t.tau);
        }
    }

    #[test]
    fn icis_rejects_bad_input() {
        let r = Ring::new(["x", "y", "z"]).unwrap();
        let x = parse_polynomial("x", &r).unwrap();
        let xy = parse_polynomial("x*y", &r).unwrap();
        assert!(matches!(
            t1_complete_intersection(&[x.clone(), xy]),
            Err(SingularityError::NotCompleteIntersection { .. })
        ));
        assert!(matches!(t1_complete_intersection(&[x.clone(), x.clone(), x]), Err(SingularityError::EquationCount(3, 3))));
        let f = parse_polynomial("x^2", &r).unwrap();
        assert_eq!(t1_complete_intersection(&[f]).unwrap_err(), SingularityError::NonIsolated);
    }
}
