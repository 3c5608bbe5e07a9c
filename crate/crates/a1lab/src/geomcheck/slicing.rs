//! Dimension estimation by repeated hyperplane slicing.
//!
//! Each trial intersects the solution set with seeded random hyperplanes
//! until it becomes empty; the estimate is the slice count minus one,
//! majority-voted across trials. Emptiness of a stage is judged
//! geometrically: a stage empty over F_q is re-checked over the quadratic
//! extension before being believed, which removes the rational-point
//! noise of even-degree stages (a hyperplane section of a curve may have
//! no F_q-point while still being nonempty over the closure).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exactalg::field::MAX_EXTENSION_DEGREE;
use crate::exactalg::{make_extension, matrix_rank, FieldSpec, MultiPoly, Scalar};
use crate::geomcheck::enumerate::enumerate_solutions;
use crate::geomcheck::{CheckReport, Verdict};

fn linear_coeff_row(f: &MultiPoly, num_vars: usize) -> Vec<Scalar> {
    (0..num_vars)
        .map(|i| {
            let mut e = vec![0u32; num_vars];
            e[i] = 1;
            f.coefficient(&e)
        })
        .collect()
}

/// Nonempty over F_q, or over its quadratic extension when the F_q point
/// set is empty and the escalation stays within the supported tower.
fn geometrically_nonempty(
    field: &FieldSpec,
    num_vars: usize,
    system: &[MultiPoly],
    points_examined: &mut u64,
) -> Result<bool> {
    let base = enumerate_solutions(field, num_vars, system)?;
    *points_examined += base.points_examined;
    if !base.solutions.is_empty() {
        return Ok(true);
    }
    let p = field.characteristic();
    let r2 = 2 * field.extension_degree();
    if r2 > MAX_EXTENSION_DEGREE {
        return Ok(false);
    }
    let Ok(ext) = make_extension(p, r2) else {
        return Ok(false);
    };
    let lifted: Result<Vec<MultiPoly>> = system.iter().map(|f| f.embed_into(&ext)).collect();
    let Ok(lifted) = lifted else {
        return Ok(false);
    };
    match enumerate_solutions(&ext, num_vars, &lifted) {
        Ok(out) => {
            *points_examined += out.points_examined;
            Ok(!out.solutions.is_empty())
        }
        // extension scan over the cap: fall back to the base-field verdict
        Err(Error::TooLarge { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Majority-voted slicing dimension of the solution set of the system.
/// The estimate is None (verdict inconclusive) when the votes spread by
/// more than one or tie.
pub fn dimension_by_slicing(
    field: &FieldSpec,
    num_vars: usize,
    system: &[MultiPoly],
    trials: u32,
    seed: u64,
) -> Result<CheckReport> {
    if trials < 1 {
        return Err(Error::Input("at least one trial required".into()));
    }
    let start = Instant::now();
    let mut points_examined: u64 = 0;

    let initial = enumerate_solutions(field, num_vars, system)?;
    points_examined += initial.points_examined;

    let mut votes: Vec<i64> = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64 + 1);
        let mut hyperplanes: Vec<MultiPoly> = Vec::new();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        loop {
            let mut staged = system.to_vec();
            staged.extend(hyperplanes.iter().cloned());
            if !geometrically_nonempty(field, num_vars, &staged, &mut points_examined)? {
                votes.push(hyperplanes.len() as i64 - 1);
                break;
            }
            if hyperplanes.len() == num_vars {
                // num_vars independent forms empty projective space; the
                // draw loop below guarantees independence
                return Err(Error::Internal(
                    "slicing failed to terminate on independent hyperplanes".into(),
                ));
            }
            // draw a hyperplane independent from the previous ones
            let h = loop {
                let coeffs: Vec<Scalar> = (0..num_vars).map(|_| field.random(&mut rng)).collect();
                if coeffs.iter().all(|c| field.is_zero(c)) {
                    continue;
                }
                let candidate = MultiPoly::from_terms(
                    field.clone(),
                    num_vars,
                    coeffs.iter().cloned().zip((0..num_vars).map(|i| {
                        let mut e = vec![0u32; num_vars];
                        e[i] = 1;
                        e
                    })),
                )
                .expect("linear form");
                let mut probe = rows.clone();
                probe.push(linear_coeff_row(&candidate, num_vars));
                if matrix_rank(field, &probe) == probe.len() {
                    rows = probe;
                    break candidate;
                }
            };
            hyperplanes.push(h);
        }
    }

    let spread_ok = votes.iter().max().unwrap() - votes.iter().min().unwrap() <= 1;
    let estimate = if spread_ok {
        let mut best: Option<(i64, usize)> = None;
        let mut tie = false;
        for &v in &votes {
            let count = votes.iter().filter(|&&w| w == v).count();
            match best {
                None => best = Some((v, count)),
                Some((bv, bc)) => {
                    if count > bc {
                        best = Some((v, count));
                        tie = false;
                    } else if count == bc && v != bv {
                        tie = true;
                    }
                }
            }
        }
        if tie {
            None
        } else {
            best.map(|(v, _)| v)
        }
    } else {
        None
    };

    Ok(CheckReport {
        points_examined,
        solutions_found: initial.solutions.len() as u64,
        solutions: None,
        dimension_estimate: estimate,
        codim_observed: None,
        verdict: if estimate.is_some() {
            Verdict::Pass
        } else {
            Verdict::Inconclusive
        },
        witness: None,
        seed,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}
