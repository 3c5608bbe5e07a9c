//! Symbolic equation systems for A1-curve moduli: the locus of A1-lines
//! through an interior point (realized inside D via the boundary point of
//! each line), the node locus of reducible A1-conics through two points,
//! complete-intersection type bookkeeping, and the plane-conic
//! reducibility test.

use serde::Serialize;
use serde_json::{json, Value};

use crate::cipair::CiPair;
use crate::error::{Error, Result};
use crate::exactalg::literal::poly_to_json;
use crate::exactalg::{matrix_rank, FieldSpec, MultiPoly, Scalar};

/// An equation system in projective space with declared degree type and
/// complete-intersection expected dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuliPresentation {
    ambient_dim: usize,
    equations: Vec<MultiPoly>,
    declared_type: Vec<u32>,
    expected_dim: i64,
    redundancy_log: Vec<RedundancyEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct RedundancyEntry {
    /// Index of the kept equation in the final system.
    pub kept: usize,
    /// Which duplicate was dropped (side and position).
    pub dropped: String,
    pub reason: String,
}

impl ModuliPresentation {
    fn new(
        ambient_dim: usize,
        equations: Vec<MultiPoly>,
        declared_type: Vec<u32>,
        redundancy_log: Vec<RedundancyEntry>,
    ) -> Result<Self> {
        if equations.len() != declared_type.len() {
            return Err(Error::Internal(
                "declared type length differs from equation count".into(),
            ));
        }
        for (eq, &deg) in equations.iter().zip(&declared_type) {
            if eq.is_zero() || !eq.is_homogeneous() || eq.total_degree() != Some(deg) {
                return Err(Error::Degenerate(format!(
                    "presentation equation is not homogeneous of declared degree {deg}"
                )));
            }
            if eq.num_vars() != ambient_dim + 1 {
                return Err(Error::Internal("equation in wrong ambient space".into()));
            }
        }
        for i in 0..equations.len() {
            for j in i + 1..equations.len() {
                if equations[i].is_scalar_multiple_of(&equations[j]) {
                    return Err(Error::Degenerate(format!(
                        "presentation equations {i} and {j} are proportional"
                    )));
                }
            }
        }
        let expected_dim = ambient_dim as i64 - equations.len() as i64;
        Ok(ModuliPresentation {
            ambient_dim,
            equations,
            declared_type,
            expected_dim,
            redundancy_log,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.equations
    }

    pub fn declared_type(&self) -> &[u32] {
        &self.declared_type
    }

    pub fn expected_dim(&self) -> i64 {
        self.expected_dim
    }

    /// Negative expected dimension: the system is generically empty.
    pub fn generically_empty(&self) -> bool {
        self.expected_dim < 0
    }

    pub fn redundancy_log(&self) -> &[RedundancyEntry] {
        &self.redundancy_log
    }

    pub fn field(&self) -> &FieldSpec {
        self.equations
            .first()
            .map(|f| f.field())
            .expect("presentations are never empty")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient-dim": self.ambient_dim,
            "declared-type": self.declared_type,
            "expected-dim": self.expected_dim,
            "generically-empty": self.generically_empty(),
            "equations": self.equations.iter().map(poly_to_json).collect::<Vec<_>>(),
            "redundancy-log": self.redundancy_log,
        })
    }
}

/// Invertible change of coordinates carrying a chosen point to
/// [1 : 0 : ... : 0]. The basis is the point itself followed by the
/// standard vectors other than its pivot coordinate (first nonzero entry),
/// in ascending index order.
#[derive(Debug, Clone)]
pub struct PointFrame {
    field: FieldSpec,
    /// forward[i][j]: coefficient of z_j in the expression of x_i.
    forward: Vec<Vec<Scalar>>,
    inverse: Vec<Vec<Scalar>>,
}

impl PointFrame {
    pub fn at_point(field: &FieldSpec, x: &[Scalar]) -> Result<PointFrame> {
        let pivot = x
            .iter()
            .position(|c| !field.is_zero(c))
            .ok_or_else(|| Error::Input("zero vector is not a projective point".into()))?;
        Self::at_point_with_pivot(field, x, pivot)
    }

    /// Same construction with an explicit pivot choice; used to check that
    /// the moduli systems do not depend on the frame.
    pub fn at_point_with_pivot(field: &FieldSpec, x: &[Scalar], pivot: usize) -> Result<PointFrame> {
        let n1 = x.len();
        if pivot >= n1 || field.is_zero(&x[pivot]) {
            return Err(Error::Input("pivot coordinate must be nonzero".into()));
        }
        let mut forward = vec![vec![field.zero(); n1]; n1];
        for i in 0..n1 {
            forward[i][0] = x[i].clone();
        }
        let mut col = 1;
        for j in 0..n1 {
            if j == pivot {
                continue;
            }
            forward[j][col] = field.one();
            col += 1;
        }
        let inverse = invert_matrix(field, &forward)
            .ok_or_else(|| Error::Internal("frame matrix is singular".into()))?;
        Ok(PointFrame {
            field: field.clone(),
            forward,
            inverse,
        })
    }

    fn linear_images(&self, matrix: &[Vec<Scalar>]) -> Vec<MultiPoly> {
        let n1 = matrix.len();
        (0..n1)
            .map(|i| {
                MultiPoly::from_terms(
                    self.field.clone(),
                    n1,
                    (0..n1).map(|j| {
                        let mut e = vec![0u32; n1];
                        e[j] = 1;
                        (matrix[i][j].clone(), e)
                    }),
                )
                .expect("linear form")
            })
            .collect()
    }

    /// f in normalized coordinates: f(A z).
    pub fn to_frame(&self, f: &MultiPoly) -> MultiPoly {
        f.compose(&self.linear_images(&self.forward))
            .expect("frame substitution")
    }

    /// f back in original coordinates: f(A^{-1} x).
    pub fn from_frame(&self, f: &MultiPoly) -> MultiPoly {
        f.compose(&self.linear_images(&self.inverse))
            .expect("frame substitution")
    }

    /// Coordinates of a point in the normalized frame.
    pub fn point_to_frame(&self, x: &[Scalar]) -> Vec<Scalar> {
        apply_matrix(&self.field, &self.inverse, x)
    }
}

fn apply_matrix(field: &FieldSpec, m: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| {
            let mut acc = field.zero();
            for (a, b) in row.iter().zip(v) {
                acc = field.add(&acc, &field.mul(a, b));
            }
            acc
        })
        .collect()
}

fn invert_matrix(field: &FieldSpec, m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { field.one() } else { field.zero() });
            }
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !field.is_zero(&aug[r][col]))?;
        aug.swap(col, pivot);
        let inv = field.inv(&aug[col][col]).ok()?;
        for c in 0..2 * n {
            aug[col][c] = field.mul(&aug[col][c], &inv);
        }
        for r in 0..n {
            if r != col && !field.is_zero(&aug[r][col]) {
                let factor = aug[r][col].clone();
                for c in 0..2 * n {
                    let sub = field.mul(&factor, &aug[col][c]);
                    aug[r][c] = field.sub(&aug[r][c], &sub);
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Expected dimension n - d of the locus of A1-lines through a point;
/// negative values signal generic emptiness.
pub fn expected_dimension_lines(pair: &CiPair) -> i64 {
    pair.n() as i64 - pair.d() as i64
}

fn check_interior_point(pair: &CiPair, x: &[Scalar]) -> Result<()> {
    if x.len() != pair.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: pair.num_vars(),
            got: x.len(),
        });
    }
    if !pair.on_interior_variety(x)? {
        return Err(Error::NotOnVariety);
    }
    if pair
        .field()
        .is_zero(&pair.boundary_eq().evaluate(x)?)
    {
        return Err(Error::PointOnBoundary);
    }
    Ok(())
}

/// Equations of the locus of A1-lines through an interior point x,
/// presented inside P^n via the boundary point of each line.
///
/// In a frame with x = [1:0:...:0], a line through x hits the boundary
/// point r = [r0:...:rn] and expands each interior equation as
/// F_i(t + r0, r1, ..) = sum_j P_ij(r) t^(d_i - j); the line lies in X
/// exactly when P_i1, ..., P_id_i vanish, and similarly the boundary
/// equation contributes Q_1, ..., Q_k, whose top coefficient Q_k is G
/// itself. The presentation has type (1..d_1, ..., 1..d_c, 1..k) and
/// expected dimension n - d.
pub fn line_moduli_through_point(pair: &CiPair, x: &[Scalar]) -> Result<ModuliPresentation> {
    line_moduli_in_frame(pair, x, None, false)
}

/// Same construction, with an explicit pivot override for frame-soundness
/// tests, and optionally keeping the normalized frame coordinates.
pub fn line_moduli_in_frame(
    pair: &CiPair,
    x: &[Scalar],
    pivot_override: Option<usize>,
    keep_normalized_frame: bool,
) -> Result<ModuliPresentation> {
    check_interior_point(pair, x)?;
    let field = pair.field().clone();
    let frame = match pivot_override {
        Some(p) => PointFrame::at_point_with_pivot(&field, x, p)?,
        None => PointFrame::at_point(&field, x)?,
    };

    let mut equations = Vec::new();
    let mut declared_type = Vec::new();

    for (i, f) in pair.interior_eqs().iter().enumerate() {
        let transformed = frame.to_frame(f);
        let expansion = transformed.restrict_to_line()?;
        if !expansion.coefficient(0).is_zero() {
            return Err(Error::Internal(format!(
                "top line coefficient of interior equation {i} is nonzero at a point of X"
            )));
        }
        let d = pair.interior_degrees()[i] as usize;
        for j in 1..=d {
            let coeff = expansion.coefficient(j);
            if coeff.is_zero() {
                return Err(Error::Degenerate(format!(
                    "line coefficient {j} of interior equation {i} vanishes identically at this point"
                )));
            }
            equations.push(coeff.clone());
            declared_type.push(j as u32);
        }
    }

    let transformed_g = frame.to_frame(pair.boundary_eq());
    let g_expansion = transformed_g.restrict_to_line()?;
    let q0 = g_expansion.coefficient(0);
    if q0.is_zero() {
        return Err(Error::Internal(
            "constant line coefficient of the boundary equation vanishes off the boundary".into(),
        ));
    }
    let k = pair.boundary_degree() as usize;
    if g_expansion.coefficient(k) != &transformed_g {
        return Err(Error::Internal(
            "top line coefficient of the boundary expansion is not the boundary equation".into(),
        ));
    }
    for j in 1..=k {
        let coeff = g_expansion.coefficient(j);
        if coeff.is_zero() {
            return Err(Error::Degenerate(format!(
                "line coefficient {j} of the boundary equation vanishes identically at this point"
            )));
        }
        equations.push(coeff.clone());
        declared_type.push(j as u32);
    }

    if !keep_normalized_frame {
        equations = equations.iter().map(|eq| frame.from_frame(eq)).collect();
    }

    ModuliPresentation::new(pair.n(), equations, declared_type, Vec::new())
}

/// Node locus of reducible A1-conics through two interior points p, q:
/// the union of the two line systems with the shared equations (each F_i
/// and G) kept once. Type per i: 1,1,2,2,...,d_i-1,d_i-1,d_i, plus one
/// final 1; equation count sum(2 d_i - 1) + 1.
pub fn conic_boundary_locus(
    pair: &CiPair,
    p: &[Scalar],
    q: &[Scalar],
) -> Result<ModuliPresentation> {
    if pair.boundary_degree() != 1 {
        return Err(Error::UnsupportedField(
            "node locus construction requires boundary degree 1".into(),
        ));
    }
    let field = pair.field().clone();
    check_interior_point(pair, p)?;
    check_interior_point(pair, q)?;
    if projectively_equal(&field, p, q) {
        return Err(Error::Input("base points must be distinct".into()));
    }
    if line_contained_in_interior(pair, p, q)? {
        return Err(Error::Degenerate(
            "the line through the base points lies in X".into(),
        ));
    }

    let lp = line_moduli_through_point(pair, p)?;
    let lq = line_moduli_through_point(pair, q)?;

    let mut equations: Vec<MultiPoly> = Vec::new();
    let mut declared_type: Vec<u32> = Vec::new();
    let mut log: Vec<RedundancyEntry> = Vec::new();

    // per-equation offsets into the two line systems
    let mut offset = 0usize;
    for (i, &d) in pair.interior_degrees().iter().enumerate() {
        let d = d as usize;
        for j in 1..d {
            equations.push(lp.equations()[offset + j - 1].clone());
            declared_type.push(j as u32);
            equations.push(lq.equations()[offset + j - 1].clone());
            declared_type.push(j as u32);
        }
        let p_top = &lp.equations()[offset + d - 1];
        let q_top = &lq.equations()[offset + d - 1];
        if !p_top.is_scalar_multiple_of(q_top) {
            return Err(Error::Internal(format!(
                "top coefficients of interior equation {i} disagree between the two line systems"
            )));
        }
        equations.push(p_top.clone());
        declared_type.push(d as u32);
        log.push(RedundancyEntry {
            kept: equations.len() - 1,
            dropped: format!("q-side degree-{d} equation of interior form {i}"),
            reason: "interior equation shared by both line systems".into(),
        });
        offset += d;
    }
    // boundary condition: Q_1 = G on both sides
    let p_g = &lp.equations()[offset];
    let q_g = &lq.equations()[offset];
    if !p_g.is_scalar_multiple_of(q_g) {
        return Err(Error::Internal(
            "boundary conditions disagree between the two line systems".into(),
        ));
    }
    equations.push(p_g.clone());
    declared_type.push(1);
    log.push(RedundancyEntry {
        kept: equations.len() - 1,
        dropped: "q-side boundary condition".into(),
        reason: "node lies on the boundary divisor, shared by both line systems".into(),
    });

    ModuliPresentation::new(pair.n(), equations, declared_type, log)
}

/// Containment probe for the line through p and q: in the frame of p, the
/// restriction of each interior equation along the line must vanish in
/// every coefficient for the line to lie in X.
pub fn line_contained_in_interior(pair: &CiPair, p: &[Scalar], q: &[Scalar]) -> Result<bool> {
    let field = pair.field().clone();
    let frame = PointFrame::at_point(&field, p)?;
    let q_frame = frame.point_to_frame(q);
    for f in pair.interior_eqs() {
        let expansion = frame.to_frame(f).restrict_to_line()?;
        for coeff in expansion.coefficients() {
            if !field.is_zero(&coeff.evaluate(&q_frame)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn projectively_equal(field: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> bool {
    let na = crate::geomcheck::enumerate::normalize_point(field, a);
    let nb = crate::geomcheck::enumerate::normalize_point(field, b);
    match (na, nb) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// Declared type of the general two-point A1-conic fiber, together with
/// the Fano-by-adjunction flag: the degree sum of the type equals
/// sum d_i^2, so the bound reads sum d_i^2 <= n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct ConicFiberType {
    pub declared_type: Vec<u32>,
    pub degree_sum: u64,
    pub rationally_connected_bound: bool,
}

pub fn conic_fiber_type(pair: &CiPair) -> Result<ConicFiberType> {
    if pair.boundary_degree() != 1 {
        return Err(Error::UnsupportedField(
            "conic fiber type requires boundary degree 1".into(),
        ));
    }
    let mut declared_type = Vec::new();
    for &d in pair.interior_degrees() {
        for j in 1..d {
            declared_type.push(j);
            declared_type.push(j);
        }
        declared_type.push(d);
    }
    let degree_sum: u64 = declared_type.iter().map(|&x| x as u64).sum();
    Ok(ConicFiberType {
        rationally_connected_bound: degree_sum <= pair.n() as u64,
        degree_sum,
        declared_type,
    })
}

/// The plane conic a1 x^2 + a2 xy + a3 xz + a4 yz through the two frame
/// points [0:1:0] and [0:0:1].
#[derive(Debug, Clone)]
pub struct ConicCoefficients {
    pub field: FieldSpec,
    pub a: [Scalar; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConicVerdict {
    /// The conic contains the line through the two base points (a4 = 0).
    ContainsLinePq,
    /// Geometrically reducible: Gram rank at most 2.
    Reducible,
    /// Gram rank 3.
    Irreducible,
}

impl ConicCoefficients {
    pub fn new(field: FieldSpec, a: [Scalar; 4]) -> Result<Self> {
        if field.characteristic() == 2 {
            return Err(Error::UnsupportedField(
                "conic discriminants need characteristic different from 2".into(),
            ));
        }
        for c in &a {
            field.validate_scalar(c)?;
        }
        if a.iter().all(|c| field.is_zero(c)) {
            return Err(Error::Input("conic coefficients must not all vanish".into()));
        }
        Ok(ConicCoefficients { field, a })
    }

    /// The symmetric Gram matrix of the quadratic form (characteristic
    /// not 2, so halving is exact).
    pub fn gram_matrix(&self) -> Vec<Vec<Scalar>> {
        let f = &self.field;
        let half = f
            .inv(&f.from_i64(2))
            .expect("characteristic is not 2");
        let h = |x: &Scalar| f.mul(x, &half);
        let [a1, a2, a3, a4] = &self.a;
        vec![
            vec![a1.clone(), h(a2), h(a3)],
            vec![h(a2), f.zero(), h(a4)],
            vec![h(a3), h(a4), f.zero()],
        ]
    }

    pub fn gram_rank(&self) -> usize {
        matrix_rank(&self.field, &self.gram_matrix())
    }
}

/// Reducibility verdict from the Gram rank. The printed closed-form
/// condition is exercised separately by the exhaustive factorization
/// oracle in the test suite; the rank criterion is normative here.
pub fn conic_reducibility(conic: &ConicCoefficients) -> ConicVerdict {
    if conic.field.is_zero(&conic.a[3]) {
        return ConicVerdict::ContainsLinePq;
    }
    if conic.gram_rank() <= 2 {
        ConicVerdict::Reducible
    } else {
        ConicVerdict::Irreducible
    }
}

/// Constant degree bookkeeping for the boundary divisor of the two-point
/// conic fiber: the reducible locus upstairs is cut by a quadric, its
/// image downstairs by a linear form, and the pullback multiplies by 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct DeltaDegreeMetadata {
    pub delta_prime_degree: u32,
    pub delta_degree: u32,
    pub pullback_multiplicity: u32,
}

pub fn delta_degree_metadata(pair: &CiPair) -> Result<DeltaDegreeMetadata> {
    if pair.boundary_degree() != 1 {
        return Err(Error::UnsupportedField(
            "degree metadata requires boundary degree 1".into(),
        ));
    }
    let record = DeltaDegreeMetadata {
        delta_prime_degree: 2,
        delta_degree: 1,
        pullback_multiplicity: 2,
    };
    assert_eq!(
        record.delta_prime_degree,
        record.pullback_multiplicity * record.delta_degree
    );
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geomcheck::enumerate_solutions;

    fn f(field: &FieldSpec, nv: usize, terms: &[(i64, &[u32])]) -> MultiPoly {
        MultiPoly::from_terms(
            field.clone(),
            nv,
            terms.iter().map(|(c, e)| (field.from_i64(*c), e.to_vec())),
        )
        .unwrap()
    }

    fn segre_pair(field: &FieldSpec) -> CiPair {
        let quadric = f(field, 4, &[(1, &[1, 0, 0, 1]), (-1, &[0, 1, 1, 0])]);
        let g = f(field, 4, &[(1, &[1, 0, 0, 0]), (1, &[0, 0, 0, 1])]);
        CiPair::new(3, vec![2], 1, vec![quadric], g, field.clone()).unwrap()
    }

    fn pt(field: &FieldSpec, coords: &[i64]) -> Vec<Scalar> {
        coords.iter().map(|&c| field.from_i64(c)).collect()
    }

    #[test]
    fn line_moduli_of_the_segre_quadric() {
        let f5 = FieldSpec::prime(5).unwrap();
        let pair = segre_pair(&f5);
        let x = pt(&f5, &[1, 0, 0, 0]);
        let pres = line_moduli_through_point(&pair, &x).unwrap();
        assert_eq!(pres.declared_type(), &[1, 2, 1]);
        assert_eq!(pres.expected_dim(), 0);
        assert_eq!(expected_dimension_lines(&pair), 0);
        // hand-computed: x3 = 0, x0 x3 - x1 x2 = 0, x0 + x3 = 0
        // gives exactly the boundary points of the two rulings
        let sols = enumerate_solutions(&f5, 4, pres.equations()).unwrap();
        assert_eq!(
            sols.solutions,
            vec![pt(&f5, &[0, 0, 1, 0]), pt(&f5, &[0, 1, 0, 0])]
        );
    }

    #[test]
    fn line_moduli_requires_interior_point() {
        let f5 = FieldSpec::prime(5).unwrap();
        let pair = segre_pair(&f5);
        // not on X
        assert!(matches!(
            line_moduli_through_point(&pair, &pt(&f5, &[1, 1, 0, 0])),
            Err(Error::NotOnVariety)
        ));
        // on D: x = (0,1,0,0) has F = 0 and G = 0
        assert!(matches!(
            line_moduli_through_point(&pair, &pt(&f5, &[0, 1, 0, 0])),
            Err(Error::PointOnBoundary)
        ));
    }

    #[test]
    fn expected_dimension_examples() {
        let f7 = FieldSpec::prime(7).unwrap();
        let pair = CiPair::random(4, &[3], 1, &f7, 3).unwrap();
        assert_eq!(expected_dimension_lines(&pair), 0);
        let pair = CiPair::random(4, &[2], 1, &f7, 3).unwrap();
        assert_eq!(expected_dimension_lines(&pair), 1);
        let pair = CiPair::random(3, &[3], 1, &f7, 5).unwrap();
        assert_eq!(expected_dimension_lines(&pair), -1);
    }

    #[test]
    fn frame_change_does_not_move_the_solution_set() {
        let f7 = FieldSpec::prime(7).unwrap();
        let pair = segre_pair(&f7);
        // a point with several nonzero coordinates so pivots differ:
        // (1 : 2 : 3 : 6) has x0 x3 = 6 = x1 x2
        let x = pt(&f7, &[1, 2, 3, 6]);
        assert!(pair.on_interior_open(&x).unwrap());
        let default = line_moduli_through_point(&pair, &x).unwrap();
        let alt = line_moduli_in_frame(&pair, &x, Some(2), false).unwrap();
        let s1 = enumerate_solutions(&f7, 4, default.equations()).unwrap();
        let s2 = enumerate_solutions(&f7, 4, alt.equations()).unwrap();
        assert_eq!(s1.solutions, s2.solutions);
    }

    #[test]
    fn normalized_frame_places_base_point_at_origin() {
        let f7 = FieldSpec::prime(7).unwrap();
        let pair = segre_pair(&f7);
        let x = pt(&f7, &[1, 2, 3, 6]);
        let pres = line_moduli_in_frame(&pair, &x, None, true).unwrap();
        assert_eq!(pres.declared_type(), &[1, 2, 1]);
        // in the normalized frame the solutions avoid [1:0:...:0]
        let sols = enumerate_solutions(&f7, 4, pres.equations()).unwrap();
        for s in &sols.solutions {
            assert!(s[1..].iter().any(|c| !f7.is_zero(c)));
        }
    }

    #[test]
    fn conic_boundary_locus_of_the_segre_quadric() {
        let f5 = FieldSpec::prime(5).unwrap();
        let pair = segre_pair(&f5);
        let p = pt(&f5, &[1, 0, 0, 0]);
        let q = pt(&f5, &[0, 0, 0, 1]);
        let delta = conic_boundary_locus(&pair, &p, &q).unwrap();
        assert_eq!(delta.declared_type(), &[1, 1, 2, 1]);
        assert_eq!(delta.expected_dim(), -1); // n=3: 3 - 4
        assert_eq!(delta.redundancy_log().len(), 2); // c + 1
        let sols = enumerate_solutions(&f5, 4, delta.equations()).unwrap();
        assert_eq!(
            sols.solutions,
            vec![pt(&f5, &[0, 0, 1, 0]), pt(&f5, &[0, 1, 0, 0])]
        );
    }

    #[test]
    fn conic_boundary_locus_rejects_coincident_points() {
        let f5 = FieldSpec::prime(5).unwrap();
        let pair = segre_pair(&f5);
        let p = pt(&f5, &[1, 0, 0, 0]);
        let p2 = pt(&f5, &[2, 0, 0, 0]); // same projective point
        assert!(matches!(
            conic_boundary_locus(&pair, &p, &p2),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn conic_boundary_locus_rejects_contained_lines() {
        let f5 = FieldSpec::prime(5).unwrap();
        let pair = segre_pair(&f5);
        // p and q on a common ruling of the quadric
        let p = pt(&f5, &[1, 0, 0, 0]);
        let q = pt(&f5, &[1, 1, 0, 0]);
        assert!(pair.on_interior_open(&q).unwrap());
        assert!(line_contained_in_interior(&pair, &p, &q).unwrap());
        assert!(matches!(
            conic_boundary_locus(&pair, &p, &q),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn line_probe_detects_generic_lines() {
        let f5 = FieldSpec::prime(5).unwrap();
        let pair = segre_pair(&f5);
        let p = pt(&f5, &[1, 0, 0, 0]);
        let q = pt(&f5, &[0, 0, 0, 1]);
        assert!(!line_contained_in_interior(&pair, &p, &q).unwrap());
    }

    #[test]
    fn fiber_type_examples() {
        let f7 = FieldSpec::prime(7).unwrap();
        let pair = CiPair::random(4, &[2], 1, &f7, 2).unwrap();
        let t = conic_fiber_type(&pair).unwrap();
        assert_eq!(t.declared_type, vec![1, 1, 2]);
        assert_eq!(t.degree_sum, 4);
        assert!(t.rationally_connected_bound); // 4 <= 4

        let pair = CiPair::random(9, &[3], 1, &f7, 2).unwrap();
        let t = conic_fiber_type(&pair).unwrap();
        assert_eq!(t.declared_type, vec![1, 1, 2, 2, 3]);
        assert_eq!(t.degree_sum, 9);
        assert!(t.rationally_connected_bound); // 9 <= 9

        let pair = CiPair::random(7, &[2, 2], 1, &f7, 2).unwrap();
        let t = conic_fiber_type(&pair).unwrap();
        assert_eq!(t.declared_type, vec![1, 1, 2, 1, 1, 2]);
        assert_eq!(t.degree_sum, 8);
        assert!(!t.rationally_connected_bound); // 8 > 7
    }

    #[test]
    fn delta_type_formula_for_two_quadrics() {
        // (2,2;1) in P^9: type (1,1,2,1,1,2,1), count 7, expected dim 2
        let f7 = FieldSpec::prime(7).unwrap();
        let pair = CiPair::random(9, &[2, 2], 1, &f7, 8).unwrap();
        let mut p = None;
        let mut q = None;
        // deterministic small search for two usable interior points
        'outer: for i in 0..2000u64 {
            let coords = pt(
                &f7,
                &[
                    1,
                    (i % 7) as i64,
                    ((i / 7) % 7) as i64,
                    ((i / 49) % 7) as i64,
                    1,
                    2,
                    ((i / 343) % 7) as i64,
                    3,
                    (i % 5) as i64,
                    ((i / 5) % 7) as i64,
                ],
            );
            if !pair.on_interior_open(&coords).unwrap() {
                continue;
            }
            if p.is_none() {
                p = Some(coords);
                continue;
            }
            let pp = p.as_ref().unwrap();
            if !projectively_equal(&f7, pp, &coords)
                && !line_contained_in_interior(&pair, pp, &coords).unwrap()
            {
                q = Some(coords);
                break 'outer;
            }
        }
        let (p, q) = (p.expect("found p"), q.expect("found q"));
        let delta = conic_boundary_locus(&pair, &p, &q).unwrap();
        assert_eq!(delta.declared_type(), &[1, 1, 2, 1, 1, 2, 1]);
        assert_eq!(delta.equations().len(), 7); // sum(2 d_i - 1) + 1
        assert_eq!(delta.expected_dim(), 2);
        assert_eq!(delta.redundancy_log().len(), 3); // c + 1
    }

    #[test]
    fn conic_reducibility_examples() {
        let f5 = FieldSpec::prime(5).unwrap();
        let mk = |a: [i64; 4]| {
            ConicCoefficients::new(f5.clone(), a.map(|c| f5.from_i64(c))).unwrap()
        };
        // xy = 0: contains the line x = 0 through both base points
        assert_eq!(conic_reducibility(&mk([0, 1, 0, 0])), ConicVerdict::ContainsLinePq);
        // x(y + z) = 0 has a2 = a3 = 1, a4 = 0
        assert_eq!(conic_reducibility(&mk([0, 1, 1, 0])), ConicVerdict::ContainsLinePq);
        // yz = 0: two lines through one base point each, node at [1:0:0]
        assert_eq!(conic_reducibility(&mk([0, 0, 0, 1])), ConicVerdict::Reducible);
        // x^2 + yz: smooth
        assert_eq!(conic_reducibility(&mk([1, 0, 0, 1])), ConicVerdict::Irreducible);
    }

    #[test]
    fn conic_verdict_is_scale_invariant() {
        let f7 = FieldSpec::prime(7).unwrap();
        for a1 in 0..7i64 {
            for a4 in 0..7i64 {
                let coeffs = [a1, 3, 2, a4];
                if coeffs.iter().all(|&c| c % 7 == 0) {
                    continue;
                }
                let base = ConicCoefficients::new(f7.clone(), coeffs.map(|c| f7.from_i64(c)))
                    .unwrap();
                for lambda in 1..7i64 {
                    let scaled = ConicCoefficients::new(
                        f7.clone(),
                        coeffs.map(|c| f7.from_i64(c * lambda)),
                    )
                    .unwrap();
                    assert_eq!(conic_reducibility(&base), conic_reducibility(&scaled));
                }
            }
        }
    }

    #[test]
    fn conic_ops_reject_characteristic_two() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(matches!(
            ConicCoefficients::new(f2.clone(), [f2.one(), f2.zero(), f2.zero(), f2.one()]),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn delta_metadata_is_constant() {
        let f7 = FieldSpec::prime(7).unwrap();
        let pair = CiPair::random(4, &[2], 1, &f7, 4).unwrap();
        let meta = delta_degree_metadata(&pair).unwrap();
        assert_eq!(
            meta,
            DeltaDegreeMetadata {
                delta_prime_degree: 2,
                delta_degree: 1,
                pullback_multiplicity: 2
            }
        );
        let pair22 = CiPair::random(9, &[2, 2], 1, &f7, 4).unwrap();
        assert_eq!(meta, delta_degree_metadata(&pair22).unwrap());
    }
}
