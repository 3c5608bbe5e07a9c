//! Smoothness probes and seeded selection of general points.
//!
//! "General" over a finite field means: seeded random draws, re-drawn
//! while the open conditions of the operation at hand fail, with a hard
//! retry cap so sampling failures surface as errors instead of loops.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

use crate::cipair::CiPair;
use crate::error::{Error, Result};
use crate::exactalg::{jacobian_rank_at, FieldSpec, MultiPoly, Scalar};
use crate::geomcheck::enumerate::{enumerate_solutions, normalize_point};
use crate::geomcheck::{render_point, CheckReport, Verdict, SOLUTION_LIST_LIMIT};
use crate::moduli::{line_contained_in_interior, projectively_equal};

/// Retry cap for open-condition re-draws of "general" points.
pub const OPEN_CONDITION_RETRY_CAP: u32 = 64;

/// Jacobian-rank probe at the solutions of a system: every examined
/// solution must have rank equal to the expected codimension. All
/// solutions are checked when they fit the budget, otherwise a seeded
/// sample of them.
pub fn smoothness_probe(
    field: &FieldSpec,
    num_vars: usize,
    system: &[MultiPoly],
    expected_codim: usize,
    sample_budget: u64,
    seed: u64,
) -> Result<CheckReport> {
    let start = Instant::now();
    let set = enumerate_solutions(field, num_vars, system)?;
    let total = set.solutions.len();
    if total == 0 {
        return Ok(CheckReport {
            points_examined: set.points_examined,
            solutions_found: 0,
            solutions: Some(Vec::new()),
            dimension_estimate: None,
            codim_observed: None,
            verdict: Verdict::Inconclusive,
            witness: None,
            seed,
            wall_time_ms: start.elapsed().as_millis() as u64,
        });
    }
    let mut indices: Vec<usize> = (0..total).collect();
    if (total as u64) > sample_budget {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // partial Fisher-Yates: the first `sample_budget` entries
        for i in 0..sample_budget as usize {
            let j = i + (rand::Rng::gen_range(&mut rng, 0..(total - i) as u64) as usize);
            indices.swap(i, j);
        }
        indices.truncate(sample_budget as usize);
        indices.sort_unstable();
    }
    let mut max_rank = 0usize;
    let mut witness = None;
    for &i in &indices {
        let pt = &set.solutions[i];
        let rank = jacobian_rank_at(system, pt)?;
        max_rank = max_rank.max(rank);
        if rank != expected_codim {
            witness = Some(pt.clone());
            break;
        }
    }
    let listed = if total <= SOLUTION_LIST_LIMIT {
        Some(
            set.solutions
                .iter()
                .map(|pt| render_point(field, pt))
                .collect(),
        )
    } else {
        None
    };
    Ok(CheckReport {
        points_examined: set.points_examined,
        solutions_found: total as u64,
        solutions: listed,
        dimension_estimate: None,
        codim_observed: Some(max_rank),
        verdict: if witness.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        },
        witness: witness.map(|w| render_point(field, &w)),
        seed,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

fn draw_caps(pair: &CiPair) -> Result<(u64, f64)> {
    let q = pair.field().order()? as f64;
    let qc = q.powi(pair.c() as i32);
    let cap = (qc * 64.0 * 16.0).min(8_000_000.0) as u64;
    Ok((cap.max(4096), qc))
}

/// Seeded draw of a point of X \ D satisfying an extra open condition.
pub fn general_interior_point<F>(pair: &CiPair, seed: u64, mut accept: F) -> Result<Vec<Scalar>>
where
    F: FnMut(&[Scalar]) -> Result<bool>,
{
    let field = pair.field().clone();
    if !field.is_finite() {
        return Err(Error::Input("general-point draws need a finite field".into()));
    }
    let (membership_cap, _) = draw_caps(pair)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = pair.num_vars();
    let mut open_failures = 0u32;
    for _ in 0..membership_cap {
        let coords: Vec<Scalar> = (0..nv).map(|_| field.random(&mut rng)).collect();
        let Some(pt) = normalize_point(&field, &coords) else {
            continue;
        };
        if !pair.on_interior_open(&pt)? {
            continue;
        }
        if accept(&pt)? {
            return Ok(pt);
        }
        open_failures += 1;
        if open_failures > OPEN_CONDITION_RETRY_CAP {
            return Err(Error::RetryExhausted(format!(
                "no interior point satisfied the open conditions in {OPEN_CONDITION_RETRY_CAP} candidates"
            )));
        }
    }
    Err(Error::RetryExhausted(
        "no interior point found within the draw budget".into(),
    ))
}

/// Seeded draw of a pair of distinct interior points whose joining line is
/// not contained in X, plus an extra open condition.
pub fn general_point_pair<F>(
    pair: &CiPair,
    seed: u64,
    mut accept: F,
) -> Result<(Vec<Scalar>, Vec<Scalar>)>
where
    F: FnMut(&[Scalar], &[Scalar]) -> Result<bool>,
{
    for outer in 0..8u64 {
        let p = general_interior_point(pair, seed.wrapping_add(outer.wrapping_mul(0x9E37)), |_| {
            Ok(true)
        })?;
        let q_res = general_interior_point(
            pair,
            seed.wrapping_add(outer.wrapping_mul(0x9E37)).wrapping_add(1),
            |q| {
                Ok(!projectively_equal(pair.field(), &p, q)
                    && !line_contained_in_interior(pair, &p, q)?
                    && accept(&p, q)?)
            },
        );
        match q_res {
            Ok(q) => return Ok((p, q)),
            Err(Error::RetryExhausted(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetryExhausted(
        "no usable point pair found within the draw budget".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(field: &FieldSpec, nv: usize, terms: &[(i64, &[u32])]) -> MultiPoly {
        MultiPoly::from_terms(
            field.clone(),
            nv,
            terms.iter().map(|(c, e)| (field.from_i64(*c), e.to_vec())),
        )
        .unwrap()
    }

    #[test]
    fn probe_passes_on_a_hyperplane() {
        let f5 = FieldSpec::prime(5).unwrap();
        let sys = vec![f(&f5, 3, &[(1, &[1, 0, 0])])];
        let report = smoothness_probe(&f5, 3, &sys, 1, 64, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.codim_observed, Some(1));
        assert_eq!(report.solutions_found, 6); // P^1(F_5) inside the plane
    }

    #[test]
    fn probe_fails_on_a_nodal_pair_of_lines() {
        let f5 = FieldSpec::prime(5).unwrap();
        let sys = vec![f(&f5, 3, &[(1, &[1, 1, 0])])];
        let report = smoothness_probe(&f5, 3, &sys, 1, 64, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        assert_eq!(report.witness, Some(vec!["0".into(), "0".into(), "1".into()]));
    }

    #[test]
    fn probe_inconclusive_without_solutions() {
        let f5 = FieldSpec::prime(5).unwrap();
        let sys = vec![
            f(&f5, 3, &[(1, &[1, 0, 0])]),
            f(&f5, 3, &[(1, &[0, 1, 0])]),
            f(&f5, 3, &[(1, &[0, 0, 1])]),
        ];
        let report = smoothness_probe(&f5, 3, &sys, 1, 64, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn general_point_draws_are_deterministic() {
        let f7 = FieldSpec::prime(7).unwrap();
        let pair = CiPair::random(3, &[2], 1, &f7, 20).unwrap();
        let a = general_interior_point(&pair, 5, |_| Ok(true)).unwrap();
        let b = general_interior_point(&pair, 5, |_| Ok(true)).unwrap();
        assert_eq!(a, b);
        assert!(pair.on_interior_open(&a).unwrap());
    }

    #[test]
    fn point_pair_avoids_contained_lines() {
        let f7 = FieldSpec::prime(7).unwrap();
        let pair = CiPair::random(3, &[2], 1, &f7, 21).unwrap();
        let (p, q) = general_point_pair(&pair, 33, |_, _| Ok(true)).unwrap();
        assert!(!projectively_equal(&f7, &p, &q));
        assert!(!line_contained_in_interior(&pair, &p, &q).unwrap());
    }
}
