//! Semiuniversal deformations `F_j = f_j + Σ t_i g^i_j` and scans of their
//! fibres.

use std::fmt;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::zerodim::{distinct_points, rational_points};
use crate::algebra::{jacobian_minors, AlgebraError, Colength, Ideal, Polynomial, Rational, Ring, RingRef};
use crate::singular::{self, SingularityError, SingularityReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformationError {
    #[error(transparent)]
    Singularity(#[from] SingularityError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expected {expected} parameter values, got {got}")]
    ParameterCount { expected: usize, got: usize },
    #[error("singular locus of the fibre has dimension {0}")]
    PositiveDimensionalSingularLocus(usize),
    #[error("no equations given")]
    NoEquations,
}

pub type Result<T> = std::result::Result<T, DeformationError>;

#[derive(Debug, Clone)]
pub struct DeformationFamily {
    /// Ring of the singularity, `x_1..x_n`.
    pub ambient: RingRef,
    /// Ring of the total space, `x_1..x_n, t_1..t_τ`.
    pub total: RingRef,
    pub parameters: Vec<String>,
    pub original: Vec<Polynomial>,
    /// `g^i`, one vector of length `p` per parameter, in the ambient ring.
    pub representatives: Vec<Vec<Polynomial>>,
    /// `F_j` in the total ring.
    pub equations: Vec<Polynomial>,
}

impl DeformationFamily {
    pub fn parameter_count(&self) -> usize {
        self.parameters.len()
    }

    fn build(original: Vec<Polynomial>, representatives: Vec<Vec<Polynomial>>) -> Result<Self> {
        let ambient = original[0].ring().clone();
        let mut names: Vec<String> = ambient.names().to_vec();
        let mut parameters = Vec::with_capacity(representatives.len());
        for i in 1..=representatives.len() {
            let probe = Ring::new(names.clone())?;
            let name = probe.fresh_name(&format!("t{i}"));
            names.push(name.clone());
            parameters.push(name);
        }
        let total = Ring::new(names)?;
        let n = ambient.nvars();
        let mut equations = Vec::with_capacity(original.len());
        for (j, f) in original.iter().enumerate() {
            let mut acc = f.map_to_ring(&total)?;
            for (i, g) in representatives.iter().enumerate() {
                let t = Polynomial::var(&total, n + i)?;
                acc = &acc + &(&t * &g[j].map_to_ring(&total)?);
            }
            equations.push(acc);
        }
        Ok(DeformationFamily { ambient, total, parameters, original, representatives, equations })
    }

    /// `∂F_j/∂t_i` restricted to `t = 0`, in the ambient ring.
    pub fn parameter_derivative_at_zero(&self, i: usize) -> Result<Vec<Polynomial>> {
        let n = self.ambient.nvars();
        let zero = vec![Rational::zero(); self.parameters.len()];
        self.equations
            .iter()
            .map(|f| {
                let d = f.derivative(n + i)?;
                Ok(self.specialize(&d, &zero)?)
            })
            .collect()
    }

    fn specialize(&self, f: &Polynomial, values: &[Rational]) -> std::result::Result<Polynomial, AlgebraError> {
        let n = self.ambient.nvars();
        let images: Vec<Polynomial> = (0..self.total.nvars())
            .map(|k| {
                if k < n {
                    Polynomial::var(&self.ambient, k).unwrap()
                } else {
                    Polynomial::constant(&self.ambient, values[k - n].clone())
                }
            })
            .collect();
        f.substitute(&images)
    }

    /// The equations with `t = values`, as an ideal of the ambient ring.
    pub fn fiber_at(&self, values: &[Rational]) -> Result<Ideal> {
        if values.len() != self.parameters.len() {
            return Err(DeformationError::ParameterCount { expected: self.parameters.len(), got: values.len() });
        }
        let gens = self.equations.iter().map(|f| self.specialize(f, values)).collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Ideal::new(&self.ambient, gens)?)
    }

    fn fiber_equations(&self, values: &[Rational]) -> Result<Vec<Polynomial>> {
        if values.len() != self.parameters.len() {
            return Err(DeformationError::ParameterCount { expected: self.parameters.len(), got: values.len() });
        }
        Ok(self.equations.iter().map(|f| self.specialize(f, values)).collect::<std::result::Result<Vec<_>, _>>()?)
    }

    pub fn equation_strings(&self) -> Vec<String> {
        self.equations.iter().map(|f| f.to_string()).collect()
    }
}

impl fmt::Display for DeformationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "variables:  {}", self.ambient)?;
        writeln!(f, "parameters: {}", if self.parameters.is_empty() { "(none)".into() } else { self.parameters.join(", ") })?;
        for (j, eq) in self.equations.iter().enumerate() {
            writeln!(f, "F{} = {}", j + 1, eq)?;
        }
        Ok(())
    }
}

impl Serialize for DeformationFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let reps: Vec<Vec<String>> =
            self.representatives.iter().map(|g| g.iter().map(|p| p.to_string()).collect()).collect();
        let mut st = s.serialize_struct("DeformationFamily", 4)?;
        st.serialize_field("ambient_vars", self.ambient.names())?;
        st.serialize_field("parameters", &self.parameters)?;
        st.serialize_field("equations", &self.equation_strings())?;
        st.serialize_field("t1_representatives", &reps)?;
        st.end()
    }
}

/// Semiuniversal deformation of an isolated complete intersection
/// `f_1 = … = f_p = 0` at the origin. A rigid germ (`τ = 0`) yields the
/// constant family with no parameters.
pub fn semiuniversal_family(fs: &[Polynomial]) -> Result<DeformationFamily> {
    if fs.is_empty() {
        return Err(DeformationError::NoEquations);
    }
    let representatives = if fs.len() == 1 {
        let report = singular::tjurina(&fs[0])?;
        report.t1_basis_polynomials().into_iter().map(|g| vec![g]).collect()
    } else {
        singular::t1_complete_intersection(fs)?.basis_vectors()
    };
    DeformationFamily::build(fs.to_vec(), representatives)
}

/// One rational singular point of a fibre.
#[derive(Debug, Clone)]
pub struct SingularPoint {
    pub coordinates: Vec<Rational>,
    pub ideal: Ideal,
    pub tau: usize,
    /// Full report for hypersurface fibres.
    pub report: Option<SingularityReport>,
}

impl Serialize for SingularPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coords: Vec<String> = self.coordinates.iter().map(|c| c.to_string()).collect();
        let mut st = s.serialize_struct("SingularPoint", 4)?;
        st.serialize_field("point", &coords)?;
        st.serialize_field("ideal", &self.ideal.to_strings())?;
        st.serialize_field("tau", &self.tau)?;
        st.serialize_field("report", &self.report)?;
        st.end()
    }
}

/// Singular points with irrational coordinates, counted but not classified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrrationalCluster {
    /// Number of geometric points, i.e. the sum of their residue-field degrees.
    pub residue_degree: usize,
    /// Sum of their Tjurina numbers (hypersurface fibres only).
    pub tau: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberScan {
    pub points: Vec<SingularPoint>,
    pub irrational: Option<IrrationalCluster>,
    /// Sum of the Tjurina numbers of all singular points of the affine
    /// fibre (hypersurface fibres only).
    pub total_tau: Option<usize>,
}

fn translate(f: &Polynomial, point: &[Rational]) -> Result<Polynomial> {
    let ring = f.ring();
    let images = (0..ring.nvars())
        .map(|i| Ok(&Polynomial::var(ring, i)? + &Polynomial::constant(ring, point[i].clone())))
        .collect::<std::result::Result<Vec<_>, AlgebraError>>()?;
    Ok(f.substitute(&images)?)
}

/// Singular points of the fibre over `values`: rational points are moved to
/// the origin and analysed, the rest are summarized.
pub fn fiber_singularity_scan(fam: &DeformationFamily, values: &[Rational]) -> Result<FiberScan> {
    let eqs = fam.fiber_equations(values)?;
    let ring = fam.ambient.clone();
    let p = eqs.len();
    let mut gens = eqs.clone();
    gens.extend(jacobian_minors(&eqs, &ring, p)?);
    let sing = Ideal::new(&ring, gens)?;
    let gb = sing.groebner()?;
    if gb.is_unit() {
        return Ok(FiberScan { points: Vec::new(), irrational: None, total_tau: (p == 1).then_some(0) });
    }
    if let Some(d) = gb.dimension().filter(|&d| d > 0) {
        return Err(DeformationError::PositiveDimensionalSingularLocus(d));
    }
    let total_tau = if p == 1 {
        match gb.colength() {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    } else {
        None
    };
    let mut points = Vec::new();
    for pt in rational_points(&sing)? {
        let moved = eqs.iter().map(|f| translate(f, &pt)).collect::<Result<Vec<_>>>()?;
        let (tau, report) = if p == 1 {
            let r = singular::analyze(&moved[0])?;
            (r.tau, Some(r))
        } else {
            (singular::t1_complete_intersection(&moved)?.tau, None)
        };
        let ideal = crate::algebra::zerodim::point_ideal(&ring, &pt)?;
        points.push(SingularPoint { coordinates: pt, ideal, tau, report });
    }
    let geometric = distinct_points(&sing)?;
    let irrational = (geometric > points.len()).then(|| IrrationalCluster {
        residue_degree: geometric - points.len(),
        tau: total_tau.map(|t| t - points.iter().map(|q| q.tau).sum::<usize>()),
    });
    Ok(FiberScan { points, irrational, total_tau })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, is_smooth, Verdict};
    use crate::parse::parse_polynomial;

    fn family(vars: &[&str], eqs: &[&str]) -> DeformationFamily {
        let r = Ring::new(vars.iter().copied()).unwrap();
        let fs: Vec<_> = eqs.iter().map(|e| parse_polynomial(e, &r).unwrap()).collect();
        semiuniversal_family(&fs).unwrap()
    }

    #[test]
    fn node_family_is_f_plus_t() {
        let fam = family(&["x1", "x2", "x3"], &["x1^2 + x2^2 + x3^2"]);
        assert_eq!(fam.parameters, ["t1"]);
        assert_eq!(fam.equation_strings(), ["x1^2 + x2^2 + x3^2 + t1"]);
        let fib = fam.fiber_at(&[int(1)]).unwrap();
        assert_eq!(fib.to_strings(), ["x1^2 + x2^2 + x3^2 + 1"]);
    }

    #[test]
    fn a3_family_and_derivatives() {
        let fam = family(&["x", "y", "z"], &["x*y - z^4"]);
        assert_eq!(fam.equation_strings(), ["-z^4 + z^2*t3 + x*y + z*t2 + t1"]);
        for i in 0..3 {
            let d = fam.parameter_derivative_at_zero(i).unwrap();
            assert_eq!(d, fam.representatives[i]);
        }
        let orig = fam.fiber_at(&[int(0), int(0), int(0)]).unwrap();
        assert_eq!(orig.generators(), fam.original.as_slice());
    }

    #[test]
    fn rigid_germ_gives_empty_family() {
        let fam = family(&["x1", "x2"], &["x1"]);
        assert_eq!(fam.parameter_count(), 0);
        assert_eq!(fam.equation_strings(), ["x1"]);
    }

    #[test]
    fn parameter_names_avoid_clashes() {
        let fam = family(&["t1", "y"], &["t1^2 + y^2"]);
        assert_eq!(fam.parameters, ["t1_1"]);
    }

    #[test]
    fn count_mismatch() {
        let fam = family(&["x", "y", "z"], &["x*y - z^3"]);
        assert_eq!(fam.fiber_at(&[int(1)]).unwrap_err(), DeformationError::ParameterCount { expected: 2, got: 1 });
    }

    #[test]
    fn node_scan() {
        let fam = family(&["u", "v", "w"], &["w^2 - u*v"]);
        let s0 = fam_scan(&fam, &[int(0)]);
        assert_eq!(s0.points.len(), 1);
        assert_eq!(s0.points[0].report.as_ref().unwrap().ade.unwrap().to_string(), "A1");
        let s1 = fam_scan(&fam, &[int(1)]);
        assert!(s1.points.is_empty() && s1.irrational.is_none());
    }

    fn fam_scan(fam: &DeformationFamily, t: &[Rational]) -> FiberScan {
        fiber_singularity_scan(fam, t).unwrap()
    }

    #[test]
    fn a2_generic_fiber_is_smooth() {
        let fam = family(&["x", "y", "z"], &["x*y - z^3"]);
        let fib = fam.fiber_at(&[int(3), int(-2)]).unwrap();
        assert_eq!(is_smooth(&fib, 2).unwrap().verdict, Verdict::Smooth);
    }

    #[test]
    fn a3_fiber_splits_singularities() {
        let fam = family(&["x", "y", "z"], &["x*y - z^4"]);
        // xy - z^4 + z^2: singular where z^2(1 - z^2)... at z = 0 only, A1
        let s = fam_scan(&fam, &[int(0), int(0), int(1)]);
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.points[0].tau, 1);
        assert_eq!(s.total_tau, Some(1));
    }

    #[test]
    fn irrational_points_are_clustered() {
        let fam = family(&["x", "y", "z"], &["x*y - z^3"]);
        // -z^3 + 3z + 2 = -(z + 1)^2 (z - 2): one node at z = -1
        let s = fam_scan(&fam, &[int(2), int(3)]);
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.points[0].coordinates, vec![int(0), int(0), int(-1)]);
        // -z^4 + 4z^2 - 4 = -(z^2 - 2)^2: two nodes at z = ±sqrt 2
        let fam = family(&["x", "y", "z"], &["x*y - z^4"]);
        let s = fam_scan(&fam, &[int(-4), int(0), int(4)]);
        assert!(s.points.is_empty());
        assert_eq!(s.irrational, Some(IrrationalCluster { residue_degree: 2, tau: Some(2) }));
        assert_eq!(s.total_tau, Some(2));
    }
}
