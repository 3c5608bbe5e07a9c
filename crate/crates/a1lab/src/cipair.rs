//! Complete intersection pairs (X, D): the data model, smoothness
//! validation by finite-field sampling, random generation, numeric
//! criteria, and the cyclic cover construction.
//!
//! X in P^n is cut by equations F_1..F_c of degrees d_1..d_c (d_i >= 2),
//! D = X ∩ {G = 0} with deg G = k. The derived quantity d = d_1+..+d_c+k
//! drives the dimension and positivity criteria.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exactalg::literal::{poly_from_json, poly_to_json};
use crate::exactalg::{jacobian_rank_at, FieldSpec, MultiPoly, Scalar};
use crate::geomcheck::{
    enumerate_solutions, projective_count, render_point, CheckReport, Verdict,
};

/// Full enumeration of P^n(F_q) during validation below this size; larger
/// spaces fall back to seeded rejection sampling.
pub const FULL_ENUMERATION_LIMIT: u128 = 1_000_000;

/// Default on-variety sample budget for validation.
pub const DEFAULT_VALIDATION_BUDGET: u64 = 128;

/// Retry cap for random pair generation.
pub const RANDOM_PAIR_RETRIES: u32 = 32;

/// Verification prime used when a pair over Q is generated and validated
/// without an explicit finite field.
pub const DEFAULT_Q_VALIDATION_PRIME: u64 = 101;

#[derive(Debug, Clone, PartialEq)]
pub struct CiPair {
    n: usize,
    interior_degrees: Vec<u32>,
    boundary_degree: u32,
    interior_eqs: Vec<MultiPoly>,
    boundary_eq: MultiPoly,
    field: FieldSpec,
}

/// Pure arithmetic flags attached to a pair type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct CriteriaReport {
    pub d: u32,
    /// d <= n
    pub log_fano: bool,
    /// k = 1 and sum of d_i^2 <= n
    pub a1_simply_connected_bound: bool,
    /// sum of d_i^2 + k^2 <= n + 1
    pub cover_bound: bool,
    /// c = 0 would be an affine space; always false for a constructed pair
    pub affine_space_flag: bool,
}

pub fn criteria_for_type(n: usize, interior_degrees: &[u32], k: u32) -> CriteriaReport {
    let d: u32 = interior_degrees.iter().sum::<u32>() + k;
    let sum_sq: u64 = interior_degrees.iter().map(|&x| x as u64 * x as u64).sum();
    CriteriaReport {
        d,
        log_fano: d as usize <= n,
        a1_simply_connected_bound: k == 1 && sum_sq <= n as u64,
        cover_bound: sum_sq + (k as u64).pow(2) <= n as u64 + 1,
        affine_space_flag: false,
    }
}

impl CiPair {
    fn build(
        n: usize,
        interior_degrees: Vec<u32>,
        boundary_degree: u32,
        interior_eqs: Vec<MultiPoly>,
        boundary_eq: MultiPoly,
        field: FieldSpec,
        min_interior_degree: u32,
    ) -> Result<Self> {
        let c = interior_degrees.len();
        if c < 1 {
            return Err(Error::Input("at least one interior equation required".into()));
        }
        if n < 2 {
            return Err(Error::Input("ambient dimension must be at least 2".into()));
        }
        if c + 1 > n {
            return Err(Error::Input(format!(
                "codimension too large: c + 1 = {} exceeds n = {n}",
                c + 1
            )));
        }
        if boundary_degree < 1 {
            return Err(Error::Input("boundary degree must be at least 1".into()));
        }
        if interior_degrees.iter().any(|&d| d < min_interior_degree) {
            return Err(Error::Input(format!(
                "interior degrees must be at least {min_interior_degree}"
            )));
        }
        if interior_eqs.len() != c {
            return Err(Error::Input("equation count does not match type".into()));
        }
        let num_vars = n + 1;
        for (f, &d) in interior_eqs.iter().zip(&interior_degrees) {
            if f.field() != &field {
                return Err(Error::FieldMismatch("interior equation field".into()));
            }
            if f.num_vars() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    got: f.num_vars(),
                });
            }
            if f.is_zero() || !f.is_homogeneous() || f.total_degree() != Some(d) {
                return Err(Error::Input(format!(
                    "interior equation is not homogeneous of declared degree {d}"
                )));
            }
        }
        if boundary_eq.field() != &field {
            return Err(Error::FieldMismatch("boundary equation field".into()));
        }
        if boundary_eq.num_vars() != num_vars {
            return Err(Error::DimensionMismatch {
                expected: num_vars,
                got: boundary_eq.num_vars(),
            });
        }
        if boundary_eq.is_zero()
            || !boundary_eq.is_homogeneous()
            || boundary_eq.total_degree() != Some(boundary_degree)
        {
            return Err(Error::Input(format!(
                "boundary equation is not homogeneous of declared degree {boundary_degree}"
            )));
        }
        Ok(CiPair {
            n,
            interior_degrees,
            boundary_degree,
            interior_eqs,
            boundary_eq,
            field,
        })
    }

    /// Strict constructor: interior degrees must be at least 2.
    pub fn new(
        n: usize,
        interior_degrees: Vec<u32>,
        boundary_degree: u32,
        interior_eqs: Vec<MultiPoly>,
        boundary_eq: MultiPoly,
        field: FieldSpec,
    ) -> Result<Self> {
        Self::build(
            n,
            interior_degrees,
            boundary_degree,
            interior_eqs,
            boundary_eq,
            field,
            2,
        )
    }

    /// Relaxed constructor allowing degree-1 interior equations, which the
    /// cover construction produces when the boundary degree is 1.
    pub fn new_relaxed(
        n: usize,
        interior_degrees: Vec<u32>,
        boundary_degree: u32,
        interior_eqs: Vec<MultiPoly>,
        boundary_eq: MultiPoly,
        field: FieldSpec,
    ) -> Result<Self> {
        Self::build(
            n,
            interior_degrees,
            boundary_degree,
            interior_eqs,
            boundary_eq,
            field,
            1,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vars(&self) -> usize {
        self.n + 1
    }

    pub fn c(&self) -> usize {
        self.interior_degrees.len()
    }

    /// d = d_1 + ... + d_c + k.
    pub fn d(&self) -> u32 {
        self.interior_degrees.iter().sum::<u32>() + self.boundary_degree
    }

    pub fn interior_degrees(&self) -> &[u32] {
        &self.interior_degrees
    }

    pub fn boundary_degree(&self) -> u32 {
        self.boundary_degree
    }

    pub fn interior_eqs(&self) -> &[MultiPoly] {
        &self.interior_eqs
    }

    pub fn boundary_eq(&self) -> &MultiPoly {
        &self.boundary_eq
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// F_1..F_c together with G.
    pub fn full_system(&self) -> Vec<MultiPoly> {
        let mut sys = self.interior_eqs.clone();
        sys.push(self.boundary_eq.clone());
        sys
    }

    pub fn type_string(&self) -> String {
        format!(
            "({};{})",
            self.interior_degrees
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(","),
            self.boundary_degree
        )
    }

    pub fn criteria(&self) -> CriteriaReport {
        criteria_for_type(self.n, &self.interior_degrees, self.boundary_degree)
    }

    /// Is the point on X (all interior equations vanish)?
    pub fn on_interior_variety(&self, point: &[Scalar]) -> Result<bool> {
        for f in &self.interior_eqs {
            if !self.field.is_zero(&f.evaluate(point)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Is the point on the open locus X \ D?
    pub fn on_interior_open(&self, point: &[Scalar]) -> Result<bool> {
        Ok(self.on_interior_variety(point)?
            && !self.field.is_zero(&self.boundary_eq.evaluate(point)?))
    }

    /// Map the pair through a canonical coefficient embedding: reduction
    /// mod p for a pair over Q, or a subfield embedding F_{p^r} -> F_{p^s}.
    pub fn embed_into(&self, target: &FieldSpec) -> Result<CiPair> {
        if &self.field == target {
            return Ok(self.clone());
        }
        if !self.field.embeds_into(target) {
            return Err(Error::FieldMismatch(format!(
                "cannot carry a pair over {} into {}",
                self.field, target
            )));
        }
        let interior = self
            .interior_eqs
            .iter()
            .map(|f| f.embed_into(target))
            .collect::<Result<Vec<_>>>()?;
        let boundary = self.boundary_eq.embed_into(target)?;
        Self::build(
            self.n,
            self.interior_degrees.clone(),
            self.boundary_degree,
            interior,
            boundary,
            target.clone(),
            1,
        )
        .map_err(|e| match e {
            Error::Input(msg) => Error::Reduction {
                p: target.characteristic(),
            }
            .context(msg),
            other => other,
        })
    }

    /// The degree-k cyclic cover {y^k = G} branched along D: a pair of type
    /// (d_1..d_c, k; 1) in P^(n+1) with equations F_1..F_c, y^k - G and
    /// boundary {y = 0}.
    pub fn universal_cover(&self) -> Result<CiPair> {
        let k = self.boundary_degree;
        let p = self.field.characteristic();
        if p != 0 && (k as u64) % p == 0 {
            return Err(Error::Construction(format!(
                "characteristic {p} divides the boundary degree {k}; the cover equation y^{k} - G is inseparable"
            )));
        }
        let nv = self.num_vars() + 1;
        let interior: Vec<MultiPoly> = self
            .interior_eqs
            .iter()
            .map(|f| f.extend_vars(nv))
            .collect();
        let mut y_exp = vec![0u32; nv];
        y_exp[nv - 1] = k;
        let y_pow = MultiPoly::from_terms(self.field.clone(), nv, [(self.field.one(), y_exp)])?;
        let cover_eq = y_pow.sub(&self.boundary_eq.extend_vars(nv))?;
        let mut degrees = self.interior_degrees.clone();
        degrees.push(k);
        let mut eqs = interior;
        eqs.push(cover_eq);
        let boundary = MultiPoly::variable(self.field.clone(), nv, nv - 1);
        Self::build(self.n + 1, degrees, 1, eqs, boundary, self.field.clone(), 1)
    }

    /// Smoothness validation by Jacobian sampling over a finite field.
    ///
    /// Every point of X(F_q) must have interior Jacobian rank c, and every
    /// point of D(F_q) full-system rank c + 1. Full enumeration when
    /// |P^n(F_q)| is small, seeded rejection sampling otherwise. A pass is
    /// evidence, not proof.
    pub fn validate(&self, target: &FieldSpec, budget: u64, seed: u64) -> Result<CheckReport> {
        if budget < 1 {
            return Err(Error::Input("sample budget must be at least 1".into()));
        }
        if !target.is_finite() {
            return Err(Error::Input("validation requires a finite field".into()));
        }
        let start = Instant::now();
        let pair = self.embed_into(target)?;
        let field = target.clone();
        let nv = pair.num_vars();
        let c = pair.c();
        let q = field.order()?;
        let ambient = projective_count(q, nv - 1);

        let mut points_examined: u64 = 0;
        let mut on_variety: u64 = 0;
        let mut max_rank: usize = 0;
        let mut witness: Option<Vec<Scalar>> = None;

        let mut check_point =
            |pt: &[Scalar], with_boundary: bool, max_rank: &mut usize| -> Result<bool> {
                let expected = if with_boundary { c + 1 } else { c };
                let system: Vec<MultiPoly> = if with_boundary {
                    pair.full_system()
                } else {
                    pair.interior_eqs.clone()
                };
                let rank = jacobian_rank_at(&system, pt)?;
                *max_rank = (*max_rank).max(rank);
                Ok(rank == expected)
            };

        if ambient <= FULL_ENUMERATION_LIMIT {
            let x_set = enumerate_solutions(&field, nv, &pair.interior_eqs)?;
            points_examined += x_set.points_examined;
            let d_set = enumerate_solutions(&field, nv, &pair.full_system())?;
            points_examined += d_set.points_examined;
            if x_set.solutions.is_empty() {
                return Ok(CheckReport {
                    points_examined,
                    solutions_found: 0,
                    solutions: None,
                    dimension_estimate: None,
                    codim_observed: None,
                    verdict: Verdict::Inconclusive,
                    witness: None,
                    seed,
                    wall_time_ms: start.elapsed().as_millis() as u64,
                });
            }
            on_variety = (x_set.solutions.len() + d_set.solutions.len()) as u64;
            for pt in &x_set.solutions {
                if !check_point(pt, false, &mut max_rank)? {
                    witness = Some(pt.clone());
                    break;
                }
            }
            if witness.is_none() {
                for pt in &d_set.solutions {
                    if !check_point(pt, true, &mut max_rank)? {
                        witness = Some(pt.clone());
                        break;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let qc = (q as f64).powi(c as i32);
            let x_draw_cap = ((budget as f64) * qc * 16.0).min(4_000_000.0) as u64;
            let d_draw_cap = ((budget as f64) * qc * q as f64 * 16.0).min(8_000_000.0) as u64;
            let mut x_hits = 0u64;
            let mut draws = 0u64;
            'xloop: while x_hits < budget && draws < x_draw_cap {
                draws += 1;
                let coords: Vec<Scalar> = (0..nv).map(|_| field.random(&mut rng)).collect();
                let Some(pt) = crate::geomcheck::enumerate::normalize_point(&field, &coords)
                else {
                    continue;
                };
                if !pair.on_interior_variety(&pt)? {
                    continue;
                }
                x_hits += 1;
                if !check_point(&pt, false, &mut max_rank)? {
                    witness = Some(pt);
                    break 'xloop;
                }
            }
            points_examined += draws;
            if x_hits == 0 {
                return Ok(CheckReport {
                    points_examined,
                    solutions_found: 0,
                    solutions: None,
                    dimension_estimate: None,
                    codim_observed: None,
                    verdict: Verdict::Inconclusive,
                    witness: None,
                    seed,
                    wall_time_ms: start.elapsed().as_millis() as u64,
                });
            }
            let mut d_hits = 0u64;
            let mut draws = 0u64;
            if witness.is_none() {
                'dloop: while d_hits < budget && draws < d_draw_cap {
                    draws += 1;
                    let coords: Vec<Scalar> = (0..nv).map(|_| field.random(&mut rng)).collect();
                    let Some(pt) = crate::geomcheck::enumerate::normalize_point(&field, &coords)
                    else {
                        continue;
                    };
                    if !field.is_zero(&pair.boundary_eq.evaluate(&pt)?) {
                        continue;
                    }
                    if !pair.on_interior_variety(&pt)? {
                        continue;
                    }
                    d_hits += 1;
                    if !check_point(&pt, true, &mut max_rank)? {
                        witness = Some(pt);
                        break 'dloop;
                    }
                }
            }
            points_examined += draws;
            on_variety = x_hits + d_hits;
        }

        let verdict = if witness.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        Ok(CheckReport {
            points_examined,
            solutions_found: on_variety,
            solutions: None,
            dimension_estimate: None,
            codim_observed: Some(max_rank),
            verdict,
            witness: witness.map(|w| render_point(&field, &w)),
            seed,
            wall_time_ms: start.elapsed().as_millis() as u64,
        })
    }

    /// Draw a random pair of the given type with dense coefficients and a
    /// passing validation, retrying up to the cap. Deterministic per seed.
    pub fn random(
        n: usize,
        interior_degrees: &[u32],
        boundary_degree: u32,
        field: &FieldSpec,
        seed: u64,
    ) -> Result<CiPair> {
        // reject impossible types before any draw
        if interior_degrees.is_empty() || interior_degrees.iter().any(|&d| d < 2) {
            return Err(Error::Input("interior degrees must all be at least 2".into()));
        }
        if boundary_degree < 1 {
            return Err(Error::Input("boundary degree must be at least 1".into()));
        }
        if n < 2 || interior_degrees.len() + 1 > n {
            return Err(Error::Input(format!(
                "type ({};{boundary_degree}) does not fit in P^{n}",
                interior_degrees.len()
            )));
        }
        let validation_field = if field.is_finite() {
            field.clone()
        } else {
            FieldSpec::prime(DEFAULT_Q_VALIDATION_PRIME)?
        };
        let nv = n + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut last_failure = String::new();
        for _ in 0..RANDOM_PAIR_RETRIES {
            let mut eqs = Vec::with_capacity(interior_degrees.len());
            for &deg in interior_degrees {
                eqs.push(random_dense_form(field, nv, deg, &mut rng));
            }
            let boundary = random_dense_form(field, nv, boundary_degree, &mut rng);
            let pair = CiPair::new(
                n,
                interior_degrees.to_vec(),
                boundary_degree,
                eqs,
                boundary,
                field.clone(),
            )?;
            let report = pair.validate(&validation_field, DEFAULT_VALIDATION_BUDGET, seed)?;
            match report.verdict {
                Verdict::Pass => return Ok(pair),
                Verdict::Fail => {
                    last_failure = format!(
                        "singular point {:?}",
                        report.witness.unwrap_or_default()
                    );
                }
                Verdict::Inconclusive => {
                    last_failure = "no rational points found to test".into();
                }
            }
        }
        Err(Error::RetryExhausted(format!(
            "no smooth pair of type {:?};{boundary_degree} over {field} in {RANDOM_PAIR_RETRIES} draws (last: {last_failure})",
            interior_degrees
        )))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "degrees": self.interior_degrees,
            "k": self.boundary_degree,
            "field": serde_json::to_value(&self.field).expect("field serializes"),
            "F": self.interior_eqs.iter().map(poly_to_json).collect::<Vec<_>>(),
            "G": poly_to_json(&self.boundary_eq),
        })
    }

    pub fn from_json(value: &Value) -> Result<CiPair> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("pair file must be a JSON object".into()))?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing integer field \"n\"".into()))?
            as usize;
        let degrees: Vec<u32> = obj
            .get("degrees")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing array field \"degrees\"".into()))?
            .iter()
            .map(|v| {
                v.as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| Error::Parse("bad interior degree".into()))
            })
            .collect::<Result<_>>()?;
        let k = obj
            .get("k")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing integer field \"k\"".into()))?
            as u32;
        let field: FieldSpec = serde_json::from_value(
            obj.get("field")
                .cloned()
                .ok_or_else(|| Error::Parse("missing field spec".into()))?,
        )
        .map_err(|e| Error::Parse(format!("bad field spec: {e}")))?;
        field.check_valid()?;
        let nv = n + 1;
        let f_values = obj
            .get("F")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing array field \"F\"".into()))?;
        let interior = f_values
            .iter()
            .map(|v| poly_from_json(&field, nv, v))
            .collect::<Result<Vec<_>>>()?;
        let boundary = poly_from_json(
            &field,
            nv,
            obj.get("G")
                .ok_or_else(|| Error::Parse("missing field \"G\"".into()))?,
        )?;
        // relaxed so cover pair files round-trip
        Self::build(n, degrees, k, interior, boundary, field, 1)
    }
}

impl Error {
    fn context(self, msg: String) -> Error {
        match self {
            Error::Reduction { p } => Error::Input(format!(
                "pair degenerates over characteristic {p}: {msg}"
            )),
            other => other,
        }
    }
}

/// Dense random form: every monomial of the given degree gets a uniform
/// coefficient; redrawn if the result is identically zero.
pub fn random_dense_form<R: Rng>(
    field: &FieldSpec,
    num_vars: usize,
    degree: u32,
    rng: &mut R,
) -> MultiPoly {
    let monos = monomials_of_degree(num_vars, degree);
    loop {
        let poly = MultiPoly::from_terms(
            field.clone(),
            num_vars,
            monos.iter().map(|e| (field.random(rng), e.clone())),
        )
        .expect("well-formed monomials");
        if !poly.is_zero() && poly.total_degree() == Some(degree) {
            return poly;
        }
    }
}

/// All exponent vectors of the given total degree, lexicographic order.
pub fn monomials_of_degree(num_vars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(out: &mut Vec<Vec<u32>>, prefix: &mut Vec<u32>, remaining_vars: usize, remaining: u32) {
        if remaining_vars == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=remaining {
            prefix.push(e);
            rec(out, prefix, remaining_vars - 1, remaining - e);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut out, &mut Vec::new(), num_vars, degree);
    out
}
