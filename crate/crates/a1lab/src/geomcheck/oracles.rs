//! Brute-force oracles for A1-lines and A1-conics.
//!
//! These never touch the symbolic moduli constructions: an A1-line through
//! x with boundary point r is certified directly from the binary form of
//! each defining equation along the line (identically zero for
//! containment in X, and a pure power of the coordinate vanishing at r
//! for the boundary contact). The oracle outputs are what the symbolic
//! systems are checked against.

use rayon::prelude::*;

use crate::cipair::CiPair;
use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, MultiPoly, Scalar};
use crate::geomcheck::enumerate::{
    enumerate_solutions, normalize_point, ProjectiveSpace, ENUMERATION_CAP,
};
use crate::moduli::{conic_reducibility, projectively_equal, ConicCoefficients, ConicVerdict};

#[derive(Debug, Clone)]
pub struct OracleLinesReport {
    /// Boundary points r in D(F_q) of the A1-lines through the base point.
    pub boundary_points: Vec<Vec<Scalar>>,
    pub points_examined: u64,
}

#[derive(Debug, Clone)]
pub struct ConicOracleReport {
    /// Plane conics through (p, q) contained in X, irreducible, and
    /// tangent to the boundary divisor at a single point.
    pub smooth_conic_count: u64,
    /// Nodes of reducible A1-conics: points r of D joined to both p and q
    /// by A1-lines.
    pub node_points: Vec<Vec<Scalar>>,
    pub points_examined: u64,
}

/// The A1-line test: the line through x and r lies in X when every
/// binary restriction vanishes identically, and it meets the boundary
/// only at r (to full multiplicity) when every t-coefficient of the
/// boundary restriction past the leading one vanishes.
fn is_a1_line(pair: &CiPair, x: &[Scalar], r: &[Scalar]) -> Result<bool> {
    let field = pair.field();
    for f in pair.interior_eqs() {
        let form = f.binary_restriction(x, r)?;
        if form.iter().any(|c| !field.is_zero(c)) {
            return Ok(false);
        }
    }
    let contact = pair.boundary_eq().binary_restriction(x, r)?;
    debug_assert!(!field.is_zero(&contact[0]), "base point is off the boundary");
    Ok(contact[1..].iter().all(|c| field.is_zero(c)))
}

/// All points of D(F_q) = {F_1 = .. = F_c = G = 0}, with the linear
/// boundary equation eliminated exactly when k = 1 so large fields stay
/// within the per-stage enumeration caps.
fn boundary_variety_points(pair: &CiPair) -> Result<(Vec<Vec<Scalar>>, u64)> {
    let field = pair.field().clone();
    let nv = pair.num_vars();
    if pair.boundary_degree() != 1 {
        let out = enumerate_solutions(&field, nv, &pair.full_system())?;
        return Ok((out.solutions, out.points_examined));
    }
    // pivot coordinate of the linear boundary form
    let g = pair.boundary_eq();
    let coeffs: Vec<Scalar> = (0..nv)
        .map(|i| {
            let mut e = vec![0u32; nv];
            e[i] = 1;
            g.coefficient(&e)
        })
        .collect();
    let pivot = coeffs
        .iter()
        .position(|c| !field.is_zero(c))
        .ok_or_else(|| Error::Internal("boundary form is zero".into()))?;
    let pivot_inv = field.inv(&coeffs[pivot])?;
    // substitution x_j = z_(slot j), x_pivot = -(sum g_j z_j)/g_pivot
    let sub_vars = nv - 1;
    let mut images: Vec<MultiPoly> = Vec::with_capacity(nv);
    let mut slot = 0usize;
    let mut pivot_terms: Vec<(Scalar, Vec<u32>)> = Vec::new();
    for j in 0..nv {
        if j == pivot {
            images.push(MultiPoly::zero(field.clone(), sub_vars)); // placeholder
            continue;
        }
        let mut e = vec![0u32; sub_vars];
        e[slot] = 1;
        images.push(MultiPoly::from_terms(
            field.clone(),
            sub_vars,
            [(field.one(), e.clone())],
        )?);
        let c = field.neg(&field.mul(&coeffs[j], &pivot_inv));
        if !field.is_zero(&c) {
            pivot_terms.push((c, e));
        }
        slot += 1;
    }
    images[pivot] = MultiPoly::from_terms(field.clone(), sub_vars, pivot_terms)?;

    let composed: Vec<MultiPoly> = pair
        .interior_eqs()
        .iter()
        .map(|f| f.compose(&images))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|f| !f.is_zero())
        .collect();

    let (zeros, examined) = fibered_zero_scan(&field, sub_vars, &composed)?;
    let mut solutions: Vec<Vec<Scalar>> = zeros
        .iter()
        .filter_map(|z| {
            let mut x = vec![field.zero(); nv];
            let mut slot = 0usize;
            for j in 0..nv {
                if j == pivot {
                    continue;
                }
                x[j] = z[slot].clone();
                slot += 1;
            }
            let mut acc = field.zero();
            for (j, zc) in z.iter().enumerate() {
                acc = field.add(&acc, &field.mul(&images[pivot].coefficient(&unit_exp(sub_vars, j)), zc));
            }
            x[pivot] = acc;
            normalize_point(&field, &x)
        })
        .collect();
    solutions.sort();
    Ok((solutions, examined))
}

fn unit_exp(len: usize, idx: usize) -> Vec<u32> {
    let mut e = vec![0u32; len];
    e[idx] = 1;
    e
}

/// Zero scan of a system over P^(m) fibered along the last coordinate:
/// canonical prefixes run over P^(m-1) and the last coordinate is scanned
/// through F_q with Horner evaluation of the per-prefix univariate
/// restrictions. Per-stage sizes (prefix count and q) respect the
/// enumeration cap even when the total point count does not.
fn fibered_zero_scan(
    field: &FieldSpec,
    num_vars: usize,
    system: &[MultiPoly],
) -> Result<(Vec<Vec<Scalar>>, u64)> {
    let q = field.order()?;
    if num_vars == 1 {
        // P^0: single point
        let pt = vec![field.one()];
        let ok = system
            .iter()
            .map(|f| f.evaluate(&pt))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|v| field.is_zero(v));
        return Ok((if ok { vec![pt] } else { vec![] }, 1));
    }
    let prefix_space = ProjectiveSpace::new(field, num_vars - 1)?;
    if prefix_space.count() > ENUMERATION_CAP || q > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            points: prefix_space.count().saturating_mul(q),
            cap: ENUMERATION_CAP,
        });
    }
    // split every equation by the exponent of the last variable
    let split: Vec<Vec<(u32, MultiPoly)>> = system
        .iter()
        .map(|f| {
            let mut parts: std::collections::BTreeMap<u32, Vec<(Scalar, Vec<u32>)>> =
                std::collections::BTreeMap::new();
            for (exps, c) in f.terms() {
                let t_exp = exps[num_vars - 1];
                parts
                    .entry(t_exp)
                    .or_default()
                    .push((c.clone(), exps[..num_vars - 1].to_vec()));
            }
            parts
                .into_iter()
                .map(|(j, terms)| {
                    Ok((
                        j,
                        MultiPoly::from_terms(field.clone(), num_vars - 1, terms)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let total_prefixes = prefix_space.count() as u64;
    let chunk: u64 = 1 << 10;
    let num_chunks = total_prefixes.div_ceil(chunk).max(1);
    let field_elems: Vec<Scalar> = (0..q).map(|i| field.element(i)).collect();

    let mut solutions: Vec<Vec<Scalar>> = (0..num_chunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * chunk;
            let hi = (lo + chunk).min(total_prefixes);
            let mut found = Vec::new();
            for idx in lo..hi {
                let prefix = prefix_space.point_at(idx as u128);
                // univariate coefficients of every equation on this fiber
                let coeff_vecs: Vec<Vec<Scalar>> = split
                    .iter()
                    .map(|parts| {
                        let max_j = parts.last().map_or(0, |(j, _)| *j) as usize;
                        let mut uni = vec![field.zero(); max_j + 1];
                        for (j, part) in parts {
                            uni[*j as usize] =
                                part.evaluate(&prefix).expect("dimension checked");
                        }
                        uni
                    })
                    .collect();
                'tscan: for t in &field_elems {
                    for uni in &coeff_vecs {
                        // Horner
                        let mut acc = field.zero();
                        for c in uni.iter().rev() {
                            acc = field.add(&field.mul(&acc, t), c);
                        }
                        if !field.is_zero(&acc) {
                            continue 'tscan;
                        }
                    }
                    let mut pt = prefix.clone();
                    pt.push(t.clone());
                    found.push(pt);
                }
            }
            found
        })
        .reduce(Vec::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });

    // the point (0, ..., 0, 1)
    let mut special = vec![field.zero(); num_vars];
    special[num_vars - 1] = field.one();
    let special_ok = system
        .iter()
        .map(|f| f.evaluate(&special))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|v| field.is_zero(v));
    if special_ok {
        solutions.push(special);
    }
    solutions.sort();
    Ok((solutions, total_prefixes * q as u64 + 1))
}

/// Boundary points of all A1-lines through x, by direct search over
/// D(F_q). Cross-validates the symbolic line moduli; never calls it.
pub fn oracle_a1_lines(pair: &CiPair, x: &[Scalar]) -> Result<OracleLinesReport> {
    let field = pair.field().clone();
    if !field.is_finite() {
        return Err(Error::Input("oracle search needs a finite field".into()));
    }
    if x.len() != pair.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: pair.num_vars(),
            got: x.len(),
        });
    }
    if !pair.on_interior_variety(x)? {
        return Err(Error::NotOnVariety);
    }
    if field.is_zero(&pair.boundary_eq().evaluate(x)?) {
        return Err(Error::PointOnBoundary);
    }
    let (candidates, examined) = boundary_variety_points(pair)?;
    let boundary_points: Vec<Vec<Scalar>> = candidates
        .par_iter()
        .map(|r| -> Result<Option<Vec<Scalar>>> {
            if projectively_equal(&field, x, r) {
                return Ok(None);
            }
            Ok(if is_a1_line(pair, x, r)? {
                Some(r.clone())
            } else {
                None
            })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(OracleLinesReport {
        boundary_points,
        points_examined: examined,
    })
}

/// Conic candidates through the two frame points of a plane, and the
/// nodes of reducible A1-conics, by direct search. The node set is the
/// intersection of the two A1-line oracles over D; the smooth count scans
/// every plane through p and q (a P^(n-2) of them) and every conic
/// coefficient class in P^3.
pub fn oracle_a1_conics(
    pair: &CiPair,
    p: &[Scalar],
    q: &[Scalar],
) -> Result<ConicOracleReport> {
    if pair.boundary_degree() != 1 {
        return Err(Error::UnsupportedField(
            "conic oracle requires boundary degree 1".into(),
        ));
    }
    let field = pair.field().clone();
    if field.characteristic() == 2 {
        return Err(Error::UnsupportedField(
            "conic oracle needs characteristic different from 2".into(),
        ));
    }
    if projectively_equal(&field, p, q) {
        return Err(Error::Input("base points must be distinct".into()));
    }

    let lines_p = oracle_a1_lines(pair, p)?;
    let lines_q = oracle_a1_lines(pair, q)?;
    let mut points_examined = lines_p.points_examined + lines_q.points_examined;
    // both lists are sorted: intersect
    let q_set: std::collections::BTreeSet<&Vec<Scalar>> =
        lines_q.boundary_points.iter().collect();
    let node_points: Vec<Vec<Scalar>> = lines_p
        .boundary_points
        .iter()
        .filter(|r| q_set.contains(*r))
        .cloned()
        .collect();

    // plane scan
    let nv = pair.num_vars();
    let complement = complement_basis(&field, p, q, nv)?;
    let m_space = ProjectiveSpace::new(&field, nv - 2)?;
    let conic_space = ProjectiveSpace::new(&field, 4)?;
    if m_space.count() > ENUMERATION_CAP || conic_space.count() > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            points: m_space.count().saturating_mul(conic_space.count()),
            cap: ENUMERATION_CAP,
        });
    }
    let plane_count = m_space.count() as u64;
    let smooth_conic_count: u64 = (0..plane_count)
        .into_par_iter()
        .map(|mi| {
            count_smooth_conics_in_plane(
                pair,
                &field,
                p,
                q,
                &complement,
                &m_space.point_at(mi as u128),
                &conic_space,
            )
            .expect("plane scan")
        })
        .sum();
    points_examined += plane_count * conic_space.count() as u64;

    Ok(ConicOracleReport {
        smooth_conic_count,
        node_points,
        points_examined,
    })
}

/// Standard vectors extending span(p, q) to a full basis, greedily by
/// index.
fn complement_basis(
    field: &FieldSpec,
    p: &[Scalar],
    q: &[Scalar],
    nv: usize,
) -> Result<Vec<usize>> {
    let mut rows = vec![p.to_vec(), q.to_vec()];
    let mut chosen = Vec::new();
    for j in 0..nv {
        if rows.len() == nv {
            break;
        }
        let mut e = vec![field.zero(); nv];
        e[j] = field.one();
        let mut probe = rows.clone();
        probe.push(e.clone());
        if crate::exactalg::matrix_rank(field, &probe) == probe.len() {
            rows = probe;
            chosen.push(j);
        }
    }
    if rows.len() != nv {
        return Err(Error::Internal("failed to complete the plane basis".into()));
    }
    Ok(chosen)
}

#[allow(clippy::too_many_arguments)]
fn count_smooth_conics_in_plane(
    pair: &CiPair,
    field: &FieldSpec,
    p: &[Scalar],
    q: &[Scalar],
    complement: &[usize],
    m: &[Scalar],
    conic_space: &ProjectiveSpace,
) -> Result<u64> {
    let nv = pair.num_vars();
    // third basis point of the plane
    let mut w = vec![field.zero(); nv];
    for (i, &j) in complement.iter().enumerate() {
        w[j] = m[i].clone();
    }
    // plane frame [X:Y:Z] -> X w + Y p + Z q, so p = [0:1:0], q = [0:0:1]
    let images: Vec<MultiPoly> = (0..nv)
        .map(|a| {
            MultiPoly::from_terms(
                field.clone(),
                3,
                [
                    (w[a].clone(), vec![1, 0, 0]),
                    (p[a].clone(), vec![0, 1, 0]),
                    (q[a].clone(), vec![0, 0, 1]),
                ],
            )
            .expect("plane frame")
        })
        .collect();
    let restricted: Vec<MultiPoly> = pair
        .interior_eqs()
        .iter()
        .map(|f| f.compose(&images))
        .collect::<Result<Vec<_>>>()?;
    let g_restricted = pair.boundary_eq().compose(&images)?;
    // the boundary line in the plane; G(p) != 0 keeps it honest
    let lambda: Vec<Scalar> = (0..3).map(|i| g_restricted.coefficient(&unit_exp(3, i))).collect();
    let lpivot = lambda
        .iter()
        .position(|c| !field.is_zero(c))
        .ok_or_else(|| Error::Internal("boundary restricts to zero on a plane".into()))?;
    let lpivot_inv = field.inv(&lambda[lpivot])?;
    let mut line_basis: Vec<Vec<Scalar>> = Vec::with_capacity(2);
    for u in 0..3 {
        if u == lpivot {
            continue;
        }
        let mut v = vec![field.zero(); 3];
        v[u] = field.one();
        v[lpivot] = field.neg(&field.mul(&lambda[u], &lpivot_inv));
        line_basis.push(v);
    }

    let mut count = 0u64;
    for ci in 0..conic_space.count() {
        let a = conic_space.point_at(ci);
        let conic = MultiPoly::from_terms(
            field.clone(),
            3,
            [
                (a[0].clone(), vec![2, 0, 0]),
                (a[1].clone(), vec![1, 1, 0]),
                (a[2].clone(), vec![1, 0, 1]),
                (a[3].clone(), vec![0, 1, 1]),
            ],
        )?;
        // containment in X plane-wise: each restriction divisible by the conic
        let mut contained = true;
        for f in &restricted {
            let ok = if f.is_zero() {
                true
            } else if f.total_degree() == Some(2) {
                f.is_scalar_multiple_of(&conic)
            } else {
                f.is_divisible_by(&conic)?
            };
            if !ok {
                contained = false;
                break;
            }
        }
        if !contained {
            continue;
        }
        let coeffs = ConicCoefficients::new(
            field.clone(),
            [a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone()],
        )?;
        if conic_reducibility(&coeffs) != ConicVerdict::Irreducible {
            continue;
        }
        // tangency: double zero of the conic on the boundary line
        let form = conic.binary_restriction(&line_basis[0], &line_basis[1])?;
        if form.iter().all(|c| field.is_zero(c)) {
            return Err(Error::Internal(
                "irreducible conic contains the boundary line".into(),
            ));
        }
        let disc = field.sub(
            &field.mul(&form[1], &form[1]),
            &field.mul(&field.from_i64(4), &field.mul(&form[0], &form[2])),
        );
        if field.is_zero(&disc) {
            count += 1;
        }
    }
    Ok(count)
}
