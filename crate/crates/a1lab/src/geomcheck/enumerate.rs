//! Exhaustive enumeration of projective solution sets over finite fields.
//!
//! Canonical representatives have first nonzero coordinate 1. The solver
//! eliminates the linear equations of a system exactly (Gaussian reduction
//! and substitution into the rest), so the scan runs in the projectivized
//! null space; a literal full scan is kept as an independent cross-check.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, MultiPoly, Scalar};

/// Hard cap on the number of canonical points per enumeration stage.
pub const ENUMERATION_CAP: u128 = 10_000_000;

/// |P^m(F_q)| = (q^(m+1) - 1)/(q - 1).
pub fn projective_count(q: u128, m: usize) -> u128 {
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..=m {
        total += power;
        power = power.saturating_mul(q);
    }
    total
}

/// Canonical representatives of P^m(F_q), addressable by index.
#[derive(Debug, Clone)]
pub struct ProjectiveSpace {
    field: FieldSpec,
    num_vars: usize,
    q: u128,
    count: u128,
}

impl ProjectiveSpace {
    pub fn new(field: &FieldSpec, num_vars: usize) -> Result<Self> {
        let q = field.order()?;
        Ok(ProjectiveSpace {
            field: field.clone(),
            num_vars,
            q,
            count: projective_count(q, num_vars - 1),
        })
    }

    pub fn count(&self) -> u128 {
        self.count
    }

    /// Point with the given index: pivot blocks in ascending pivot order,
    /// free coordinates odometer-style with the last one varying fastest.
    pub fn point_at(&self, mut idx: u128) -> Vec<Scalar> {
        let mut pivot = 0usize;
        loop {
            let block = self.q.pow((self.num_vars - 1 - pivot) as u32);
            if idx < block {
                break;
            }
            idx -= block;
            pivot += 1;
        }
        let mut coords = vec![self.field.zero(); self.num_vars];
        coords[pivot] = self.field.one();
        for j in (pivot + 1..self.num_vars).rev() {
            coords[j] = self.field.element(idx % self.q);
            idx /= self.q;
        }
        coords
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
}

/// Scale a nonzero coordinate vector so its first nonzero entry is 1.
pub fn normalize_point(field: &FieldSpec, coords: &[Scalar]) -> Option<Vec<Scalar>> {
    let pivot = coords.iter().position(|c| !field.is_zero(c))?;
    let inv = field.inv(&coords[pivot]).expect("pivot is nonzero");
    Some(coords.iter().map(|c| field.mul(c, &inv)).collect())
}

#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub solutions: Vec<Vec<Scalar>>,
    pub points_examined: u64,
}

fn check_system(field: &FieldSpec, num_vars: usize, system: &[MultiPoly]) -> Result<()> {
    for f in system {
        if f.field() != field {
            return Err(Error::FieldMismatch(format!(
                "equation over {} in a {} enumeration",
                f.field(),
                field
            )));
        }
        if f.num_vars() != num_vars {
            return Err(Error::DimensionMismatch {
                expected: num_vars,
                got: f.num_vars(),
            });
        }
    }
    Ok(())
}

/// Indices of the system ordered so the cheapest equations run first.
fn cost_order(system: &[MultiPoly]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..system.len()).collect();
    order.sort_by_key(|&i| {
        (
            system[i].total_degree().unwrap_or(0),
            system[i].num_terms(),
        )
    });
    order
}

fn scan(
    field: &FieldSpec,
    num_vars: usize,
    system: &[MultiPoly],
) -> Result<SolutionSet> {
    let space = ProjectiveSpace::new(field, num_vars)?;
    if space.count() > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            points: space.count(),
            cap: ENUMERATION_CAP,
        });
    }
    let order = cost_order(system);
    let total = space.count() as u64;
    let chunk: u64 = 1 << 14;
    let num_chunks = total.div_ceil(chunk.max(1)).max(1);
    let mut solutions: Vec<Vec<Scalar>> = (0..num_chunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * chunk;
            let hi = (lo + chunk).min(total);
            let mut found = Vec::new();
            'point: for idx in lo..hi {
                let pt = space.point_at(idx as u128);
                for &i in &order {
                    if !field.is_zero(&system[i].evaluate(&pt).expect("dimensions checked")) {
                        continue 'point;
                    }
                }
                found.push(pt);
            }
            found
        })
        .reduce(Vec::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });
    solutions.sort();
    Ok(SolutionSet {
        solutions,
        points_examined: total,
    })
}

/// Literal full scan of P^m(F_q); the independent reference path.
pub fn enumerate_solutions_brute(
    field: &FieldSpec,
    num_vars: usize,
    system: &[MultiPoly],
) -> Result<SolutionSet> {
    check_system(field, num_vars, system)?;
    scan(field, num_vars, system)
}

/// Common zeros of the system among canonical representatives, sorted.
///
/// Linear equations are eliminated exactly first: the scan then runs over
/// the projectivized null space and solutions are mapped back. The returned
/// set is identical to the brute scan's.
pub fn enumerate_solutions(
    field: &FieldSpec,
    num_vars: usize,
    system: &[MultiPoly],
) -> Result<SolutionSet> {
    check_system(field, num_vars, system)?;
    let linear: Vec<&MultiPoly> = system
        .iter()
        .filter(|f| f.total_degree() == Some(1))
        .collect();
    if linear.is_empty() {
        return scan(field, num_vars, system);
    }

    // row-reduce the linear part
    let mut rows: Vec<Vec<Scalar>> = linear
        .iter()
        .map(|f| {
            (0..num_vars)
                .map(|i| {
                    let mut e = vec![0u32; num_vars];
                    e[i] = 1;
                    f.coefficient(&e)
                })
                .collect()
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..num_vars {
        let Some(p) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv(&rows[rank][col])?;
        for c in 0..num_vars {
            rows[rank][c] = field.mul(&rows[rank][c], &inv);
        }
        for r in 0..rows.len() {
            if r != rank && !field.is_zero(&rows[r][col]) {
                let factor = rows[r][col].clone();
                for c in 0..num_vars {
                    let sub = field.mul(&factor, &rows[rank][c]);
                    rows[r][c] = field.sub(&rows[r][c], &sub);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    if rank == num_vars {
        return Ok(SolutionSet {
            solutions: Vec::new(),
            points_examined: 0,
        });
    }

    // kernel basis: one column per free variable
    let free: Vec<usize> = (0..num_vars).filter(|c| !pivots.contains(c)).collect();
    let sub_vars = free.len();
    // substitution matrix: x_i = sum_j M[i][j] z_j
    let mut subst = vec![vec![field.zero(); sub_vars]; num_vars];
    for (j, &fcol) in free.iter().enumerate() {
        subst[fcol][j] = field.one();
        for (r, &pcol) in pivots.iter().enumerate() {
            subst[pcol][j] = field.neg(&rows[r][fcol]);
        }
    }
    let images: Vec<MultiPoly> = (0..num_vars)
        .map(|i| {
            MultiPoly::from_terms(
                field.clone(),
                sub_vars,
                (0..sub_vars).map(|j| {
                    let mut e = vec![0u32; sub_vars];
                    e[j] = 1;
                    (subst[i][j].clone(), e)
                }),
            )
            .expect("linear image")
        })
        .collect();

    let reduced: Vec<MultiPoly> = system
        .iter()
        .filter(|f| f.total_degree() != Some(1))
        .map(|f| f.compose(&images))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|f| !f.is_zero())
        .collect();

    let sub = scan(field, sub_vars, &reduced)?;
    let mut solutions: Vec<Vec<Scalar>> = sub
        .solutions
        .iter()
        .filter_map(|z| {
            let x: Vec<Scalar> = (0..num_vars)
                .map(|i| {
                    let mut acc = field.zero();
                    for (j, zj) in z.iter().enumerate() {
                        acc = field.add(&acc, &field.mul(&subst[i][j], zj));
                    }
                    acc
                })
                .collect();
            normalize_point(field, &x)
        })
        .collect();
    solutions.sort();
    Ok(SolutionSet {
        solutions,
        points_examined: sub.points_examined,
    })
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
    fn single_point_system() {
        let f3 = FieldSpec::prime(3).unwrap();
        let sys = vec![f(&f3, 3, &[(1, &[1, 0, 0])]), f(&f3, 3, &[(1, &[0, 1, 0])])];
        let out = enumerate_solutions(&f3, 3, &sys).unwrap();
        assert_eq!(out.solutions.len(), 1);
        assert_eq!(
            out.solutions[0],
            vec![f3.zero(), f3.zero(), f3.one()]
        );
    }

    #[test]
    fn empty_system_gives_all_points() {
        let f5 = FieldSpec::prime(5).unwrap();
        let out = enumerate_solutions(&f5, 2, &[]).unwrap();
        assert_eq!(out.solutions.len(), 6); // |P^1(F_5)| = 6
    }

    #[test]
    fn segre_quadric_point_count() {
        let f3 = FieldSpec::prime(3).unwrap();
        // x0 x3 - x1 x2: the Segre quadric, (q+1)^2 points
        let sys = vec![f(&f3, 4, &[(1, &[1, 0, 0, 1]), (-1, &[0, 1, 1, 0])])];
        let out = enumerate_solutions(&f3, 4, &sys).unwrap();
        assert_eq!(out.solutions.len(), 16);
    }

    #[test]
    fn elimination_matches_brute_scan() {
        let f7 = FieldSpec::prime(7).unwrap();
        // mixed linear + quadratic system
        let sys = vec![
            f(&f7, 4, &[(1, &[1, 0, 0, 0]), (3, &[0, 0, 1, 0])]),
            f(&f7, 4, &[(1, &[1, 0, 0, 1]), (-1, &[0, 1, 1, 0])]),
        ];
        let fast = enumerate_solutions(&f7, 4, &sys).unwrap();
        let brute = enumerate_solutions_brute(&f7, 4, &sys).unwrap();
        assert_eq!(fast.solutions, brute.solutions);
        assert!(fast.points_examined < brute.points_examined);
    }

    #[test]
    fn dependent_linear_forms() {
        let f5 = FieldSpec::prime(5).unwrap();
        let l = f(&f5, 3, &[(1, &[1, 0, 0]), (2, &[0, 1, 0])]);
        let l2 = l.scale(&f5.from_i64(3));
        let out = enumerate_solutions(&f5, 3, &[l.clone(), l2]).unwrap();
        let brute = enumerate_solutions_brute(&f5, 3, &[l]).unwrap();
        assert_eq!(out.solutions, brute.solutions);
    }

    #[test]
    fn inconsistent_linear_forms_empty() {
        let f5 = FieldSpec::prime(5).unwrap();
        let sys: Vec<MultiPoly> = (0..3)
            .map(|i| {
                let mut e = vec![0u32; 3];
                e[i] = 1;
                f(&f5, 3, &[(1, &e)])
            })
            .collect();
        let out = enumerate_solutions(&f5, 3, &sys).unwrap();
        assert!(out.solutions.is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let f101 = FieldSpec::prime(101).unwrap();
        let err = enumerate_solutions_brute(&f101, 5, &[]).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
    }

    #[test]
    fn extension_field_enumeration() {
        let f9 = crate::exactalg::make_extension(3, 2).unwrap();
        let out = enumerate_solutions(&f9, 2, &[]).unwrap();
        assert_eq!(out.solutions.len(), 10); // |P^1(F_9)| = 10
        let conic = f(&f9, 3, &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])]);
        let sols = enumerate_solutions(&f9, 3, &[conic]).unwrap();
        assert_eq!(sols.solutions.len(), 10); // smooth conic over F_9
    }
}
