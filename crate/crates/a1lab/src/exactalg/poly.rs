//! Sparse homogeneous multivariate polynomials with exact coefficients.
//!
//! Terms live in a BTreeMap from exponent vector to nonzero coefficient, so
//! equality is canonical-form equality and iteration order is the
//! lexicographic order on exponent vectors.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::field::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: FieldSpec,
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

/// The expansion of a homogeneous f under x0 -> x0 + t: coefficients
/// [P_0, ..., P_e] with f(x0 + t, x1, ..) = sum_j P_j * t^(e-j), each P_j
/// homogeneous of degree j or zero.
#[derive(Debug, Clone, PartialEq)]
pub struct LineExpansion {
    base_degree: u32,
    coefficients: Vec<MultiPoly>,
}

/// Row of binomial coefficients C(n, 0..=n) computed additively in the
/// field, valid in every characteristic.
pub fn pascal_row(field: &FieldSpec, n: u32) -> Vec<Scalar> {
    let mut row = vec![field.one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(field.one());
        for w in row.windows(2) {
            next.push(field.add(&w[0], &w[1]));
        }
        next.push(field.one());
        row = next;
    }
    row
}

impl MultiPoly {
    pub fn zero(field: FieldSpec, num_vars: usize) -> Self {
        MultiPoly {
            field,
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, num_vars: usize, c: Scalar) -> Self {
        let mut poly = Self::zero(field, num_vars);
        if !poly.field.is_zero(&c) {
            poly.terms.insert(vec![0; num_vars], c);
        }
        poly
    }

    pub fn variable(field: FieldSpec, num_vars: usize, idx: usize) -> Self {
        assert!(idx < num_vars, "variable index out of range");
        let one = field.one();
        let mut exps = vec![0; num_vars];
        exps[idx] = 1;
        let mut poly = Self::zero(field, num_vars);
        poly.terms.insert(exps, one);
        poly
    }

    /// Build from raw terms; duplicate exponent vectors are summed and zero
    /// coefficients dropped.
    pub fn from_terms(
        field: FieldSpec,
        num_vars: usize,
        terms: impl IntoIterator<Item = (Scalar, Vec<u32>)>,
    ) -> Result<Self> {
        let mut poly = Self::zero(field, num_vars);
        for (c, exps) in terms {
            if exps.len() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    got: exps.len(),
                });
            }
            poly.field.validate_scalar(&c)?;
            poly.add_term(c, exps);
        }
        Ok(poly)
    }

    fn add_term(&mut self, c: Scalar, exps: Vec<u32>) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = self.field.add(e.get(), &c);
                if self.field.is_zero(&sum) {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn check_same_ring(&self, other: &MultiPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field, other.field
            )));
        }
        if self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(c.clone(), e.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone(), self.num_vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.mul(v, c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_ring(other)?;
        let mut out = Self::zero(self.field.clone(), self.num_vars);
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in other.terms.iter() {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(self.field.mul(ca, cb), exps);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = Self::constant(self.field.clone(), self.num_vars, self.field.one());
        for _ in 0..n {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Exact value at a point.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        let max_exp: Vec<u32> = (0..self.num_vars)
            .map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
            .collect();
        // power tables avoid recomputing high powers per term
        let powers: Vec<Vec<Scalar>> = point
            .iter()
            .zip(&max_exp)
            .map(|(x, &m)| {
                let mut col = Vec::with_capacity(m as usize + 1);
                col.push(self.field.one());
                for _ in 0..m {
                    let last = col.last().unwrap();
                    col.push(self.field.mul(last, x));
                }
                col
            })
            .collect();
        let mut acc = self.field.zero();
        for (exps, c) in self.terms.iter() {
            let mut term = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = self.field.mul(&term, &powers[i][e as usize]);
                }
            }
            acc = self.field.add(&acc, &term);
        }
        Ok(acc)
    }

    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        let mut out = Self::zero(self.field.clone(), self.num_vars);
        for (exps, c) in self.terms.iter() {
            let e = exps[var];
            if e == 0 {
                continue;
            }
            let mut new_exps = exps.clone();
            new_exps[var] = e - 1;
            let factor = self.field.from_i64(e as i64);
            out.add_term(self.field.mul(c, &factor), new_exps);
        }
        out
    }

    /// Substitute x0 -> x0 + t and collect by powers of t. Realized by
    /// per-term binomial expansion (Pascal additions only), so it is valid
    /// in every characteristic, including p <= deg f.
    pub fn restrict_to_line(&self) -> Result<LineExpansion> {
        if !self.is_homogeneous() || self.is_zero() {
            return Err(Error::NonHomogeneous);
        }
        let e = self.total_degree().unwrap();
        if e < 1 {
            return Err(Error::Input(
                "line restriction needs degree >= 1".into(),
            ));
        }
        let mut coeffs = vec![Self::zero(self.field.clone(), self.num_vars); e as usize + 1];
        let pascal = pascal_row(&self.field, e);
        for (exps, c) in self.terms.iter() {
            let a = exps[0];
            let row = if a == e { &pascal } else { &pascal_row(&self.field, a) };
            for i in 0..=a {
                // x0^a -> C(a,i) x0^i t^(a-i); lands in P_j with j = deg - (a-i)
                let j = (e - a + i) as usize;
                let mut new_exps = exps.clone();
                new_exps[0] = i;
                let coeff = self.field.mul(c, &row[i as usize]);
                coeffs[j].add_term(coeff, new_exps);
            }
        }
        Ok(LineExpansion {
            base_degree: e,
            coefficients: coeffs,
        })
    }

    /// Substitute every variable by the given polynomial (all images in one
    /// common ring). Powers of images are memoized across terms.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: images.len(),
            });
        }
        let (target_field, target_vars) = match images.first() {
            Some(img) => (img.field.clone(), img.num_vars),
            None => (self.field.clone(), 0),
        };
        for img in images {
            if img.field != target_field || img.num_vars != target_vars {
                return Err(Error::FieldMismatch(
                    "substitution images live in different rings".into(),
                ));
            }
        }
        if target_field != self.field {
            return Err(Error::FieldMismatch(
                "substitution images must share the coefficient field".into(),
            ));
        }
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|img| {
                vec![
                    MultiPoly::constant(target_field.clone(), target_vars, target_field.one()),
                    img.clone(),
                ]
            })
            .collect();
        let mut out = MultiPoly::zero(target_field.clone(), target_vars);
        for (exps, c) in self.terms.iter() {
            let mut term = MultiPoly::constant(target_field.clone(), target_vars, c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Coefficients of the binary form f(s*u + t*v) for homogeneous f:
    /// entry j is the coefficient of s^(e-j) t^j.
    pub fn binary_restriction(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        if !self.is_homogeneous() {
            return Err(Error::NonHomogeneous);
        }
        if u.len() != self.num_vars || v.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: u.len().min(v.len()),
            });
        }
        let e = match self.total_degree() {
            Some(e) => e as usize,
            None => return Ok(vec![]),
        };
        let f = &self.field;
        let mut out = vec![f.zero(); e + 1];
        for (exps, c) in self.terms.iter() {
            // convolve the binomial coefficient vectors of each factor
            let mut conv = vec![c.clone()];
            for (i, &ei) in exps.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                let row = pascal_row(f, ei);
                let mut factor = Vec::with_capacity(ei as usize + 1);
                for m in 0..=ei {
                    let a_pow = f.pow(&u[i], (ei - m) as u64);
                    let b_pow = f.pow(&v[i], m as u64);
                    factor.push(f.mul(&row[m as usize], &f.mul(&a_pow, &b_pow)));
                }
                let mut next = vec![f.zero(); conv.len() + factor.len() - 1];
                for (a, ca) in conv.iter().enumerate() {
                    if f.is_zero(ca) {
                        continue;
                    }
                    for (b, cb) in factor.iter().enumerate() {
                        next[a + b] = f.add(&next[a + b], &f.mul(ca, cb));
                    }
                }
                conv = next;
            }
            for (j, cj) in conv.into_iter().enumerate() {
                out[j] = f.add(&out[j], &cj);
            }
        }
        Ok(out)
    }

    /// Same polynomial viewed in a ring with extra trailing variables.
    pub fn extend_vars(&self, new_num_vars: usize) -> MultiPoly {
        assert!(new_num_vars >= self.num_vars);
        let mut out = MultiPoly::zero(self.field.clone(), new_num_vars);
        for (exps, c) in self.terms.iter() {
            let mut e = exps.clone();
            e.resize(new_num_vars, 0);
            out.terms.insert(e, c.clone());
        }
        out
    }

    /// Map coefficients through a canonical field embedding (Q -> F_p by
    /// reduction, F_p -> F_{p^r}, F_{p^r} -> F_{p^rs}).
    pub fn embed_into(&self, target: &FieldSpec) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(target.clone(), self.num_vars);
        for (exps, c) in self.terms.iter() {
            let mapped = self.field.embed(c, target)?;
            out.add_term(mapped, exps.clone());
        }
        Ok(out)
    }

    /// Leading (lex-largest) term.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Monic normalization: divide by the leading coefficient.
    pub fn normalized(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn is_scalar_multiple_of(&self, other: &MultiPoly) -> bool {
        if self.field != other.field || self.num_vars != other.num_vars {
            return false;
        }
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.normalized() == other.normalized()
    }

    /// Remainder of division by a single polynomial (lex leading terms).
    /// Zero remainder is equivalent to membership in the principal ideal.
    pub fn reduce_by(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_ring(divisor)?;
        let (lead_exps, lead_coeff) = divisor
            .leading_term()
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or_else(|| Error::Input("division by the zero polynomial".into()))?;
        let lead_inv = self.field.inv(&lead_coeff)?;
        let mut rem = self.clone();
        loop {
            let target = rem
                .terms
                .iter()
                .rev()
                .find(|(e, _)| e.iter().zip(&lead_exps).all(|(a, b)| a >= b))
                .map(|(e, c)| (e.clone(), c.clone()));
            let Some((exps, coeff)) = target else {
                return Ok(rem);
            };
            let ratio = self.field.mul(&coeff, &lead_inv);
            let shift: Vec<u32> = exps.iter().zip(&lead_exps).map(|(a, b)| a - b).collect();
            for (de, dc) in divisor.terms.iter() {
                let e: Vec<u32> = de.iter().zip(&shift).map(|(a, b)| a + b).collect();
                let c = self.field.neg(&self.field.mul(dc, &ratio));
                rem.add_term(c, e);
            }
        }
    }

    pub fn is_divisible_by(&self, divisor: &MultiPoly) -> Result<bool> {
        Ok(self.reduce_by(divisor)?.is_zero())
    }
}

impl LineExpansion {
    pub fn base_degree(&self) -> u32 {
        self.base_degree
    }

    /// The coefficients [P_0, ..., P_e].
    pub fn coefficients(&self) -> &[MultiPoly] {
        &self.coefficients
    }

    pub fn coefficient(&self, j: usize) -> &MultiPoly {
        &self.coefficients[j]
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", self.field.scalar_to_string(c))?;
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// Rank of a matrix of scalars by exact Gaussian elimination.
pub fn matrix_rank(field: &FieldSpec, matrix: &[Vec<Scalar>]) -> usize {
    let mut rows: Vec<Vec<Scalar>> = matrix.to_vec();
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..nrows).find(|&r| !field.is_zero(&rows[r][col]));
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let inv = field.inv(&rows[rank][col]).expect("pivot is nonzero");
        for c in col..ncols {
            rows[rank][c] = field.mul(&rows[rank][c], &inv);
        }
        for r in 0..nrows {
            if r != rank && !field.is_zero(&rows[r][col]) {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let sub = field.mul(&factor, &rows[rank][c]);
                    rows[r][c] = field.sub(&rows[r][c], &sub);
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Rank of the Jacobian matrix of the system at a common zero.
pub fn jacobian_rank_at(system: &[MultiPoly], point: &[Scalar]) -> Result<usize> {
    let Some(first) = system.first() else {
        return Ok(0);
    };
    let field = first.field().clone();
    for f in system {
        if !field.is_zero(&f.evaluate(point)?) {
            return Err(Error::NotOnVariety);
        }
    }
    let matrix: Vec<Vec<Scalar>> = system
        .iter()
        .map(|f| {
            (0..f.num_vars())
                .map(|i| f.partial_derivative(i).evaluate(point))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(matrix_rank(&field, &matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::make_extension;
    use proptest::prelude::*;
    use rand::Rng as _;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn f7() -> FieldSpec {
        FieldSpec::prime(7).unwrap()
    }

    fn poly(field: &FieldSpec, num_vars: usize, terms: &[(i64, &[u32])]) -> MultiPoly {
        MultiPoly::from_terms(
            field.clone(),
            num_vars,
            terms
                .iter()
                .map(|(c, e)| (field.from_i64(*c), e.to_vec())),
        )
        .unwrap()
    }

    /// Independent reconstruction oracle: substitute x0 -> x0 + t with the
    /// general composition machinery (t appended as a fresh variable) and
    /// compare against the collected expansion.
    fn reconstruct(expansion: &LineExpansion, original: &MultiPoly) -> bool {
        let n = original.num_vars();
        let field = original.field().clone();
        let mut images: Vec<MultiPoly> = (0..n)
            .map(|i| MultiPoly::variable(field.clone(), n + 1, i))
            .collect();
        images[0] = images[0]
            .add(&MultiPoly::variable(field.clone(), n + 1, n))
            .unwrap();
        let substituted = original.compose(&images).unwrap();

        let e = expansion.base_degree();
        let t = MultiPoly::variable(field.clone(), n + 1, n);
        let mut sum = MultiPoly::zero(field, n + 1);
        for (j, pj) in expansion.coefficients().iter().enumerate() {
            let tpow = t.pow(e - j as u32);
            sum = sum.add(&pj.extend_vars(n + 1).mul(&tpow).unwrap()).unwrap();
        }
        sum == substituted
    }

    #[test]
    fn evaluate_monomials() {
        let f = poly(&q(), 3, &[(1, &[2, 0, 0]), (1, &[0, 1, 1])]); // x0^2 + x1 x2
        let one = q().one();
        let zero = q().zero();
        assert_eq!(
            f.evaluate(&[one.clone(), zero.clone(), zero.clone()]).unwrap(),
            q().from_i64(1)
        );
        let g = poly(&q(), 3, &[(1, &[3, 0, 0])]); // x0^3
        assert_eq!(
            g.evaluate(&[zero.clone(), q().from_i64(4), q().from_i64(-2)])
                .unwrap(),
            zero
        );
    }

    #[test]
    fn evaluate_dimension_mismatch() {
        let f = poly(&q(), 3, &[(1, &[1, 0, 0])]);
        assert!(matches!(
            f.evaluate(&[q().one()]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn homogeneity_scaling_over_f7() {
        let field = f7();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let f = random_homogeneous(&field, 4, 3, &mut rng);
            let point: Vec<Scalar> = (0..4).map(|_| field.random(&mut rng)).collect();
            let lam = field.from_i64(3);
            let scaled: Vec<Scalar> = point.iter().map(|x| field.mul(x, &lam)).collect();
            let lhs = f.evaluate(&scaled).unwrap();
            let rhs = field.mul(&field.pow(&lam, 3), &f.evaluate(&point).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn restriction_of_pure_power() {
        // x0^3 -> [1, 3 x0, 3 x0^2, x0^3]
        let f = poly(&q(), 2, &[(1, &[3, 0])]);
        let exp = f.restrict_to_line().unwrap();
        assert_eq!(exp.coefficient(0), &poly(&q(), 2, &[(1, &[0, 0])]));
        assert_eq!(exp.coefficient(1), &poly(&q(), 2, &[(3, &[1, 0])]));
        assert_eq!(exp.coefficient(2), &poly(&q(), 2, &[(3, &[2, 0])]));
        assert_eq!(exp.coefficient(3), &f);
    }

    #[test]
    fn restriction_mixed_terms() {
        // x0 x1^2 + x2^3 -> [0, 0, x1^2, f]
        let f = poly(&q(), 3, &[(1, &[1, 2, 0]), (1, &[0, 0, 3])]);
        let exp = f.restrict_to_line().unwrap();
        assert!(exp.coefficient(0).is_zero());
        assert!(exp.coefficient(1).is_zero());
        assert_eq!(exp.coefficient(2), &poly(&q(), 3, &[(1, &[0, 2, 0])]));
        assert_eq!(exp.coefficient(3), &f);
    }

    #[test]
    fn restriction_without_x0() {
        let f = poly(&q(), 4, &[(1, &[0, 1, 1, 1])]); // x1 x2 x3
        let exp = f.restrict_to_line().unwrap();
        for j in 0..3 {
            assert!(exp.coefficient(j).is_zero());
        }
        assert_eq!(exp.coefficient(3), &f);
    }

    #[test]
    fn restriction_rejects_inhomogeneous() {
        let f = poly(&q(), 2, &[(1, &[1, 0]), (1, &[2, 0])]);
        assert!(matches!(f.restrict_to_line(), Err(Error::NonHomogeneous)));
    }

    #[test]
    fn restriction_in_small_characteristic() {
        // p = 3 <= deg f = 4: the factorial route would divide by zero;
        // the substitution route must still reconstruct exactly.
        let field = FieldSpec::prime(3).unwrap();
        let f = poly(&field, 2, &[(1, &[4, 0]), (2, &[2, 2]), (1, &[0, 4])]);
        let exp = f.restrict_to_line().unwrap();
        assert!(reconstruct(&exp, &f));
        assert_eq!(exp.coefficient(4), &f);
    }

    #[test]
    fn jacobian_rank_examples() {
        let field = q();
        // single linear form: rank 1 at any point of its zero locus
        let sys = vec![poly(&field, 3, &[(1, &[1, 0, 0])])];
        let pt = vec![field.zero(), field.one(), field.zero()];
        assert_eq!(jacobian_rank_at(&sys, &pt).unwrap(), 1);
        // node of a line pair: both partials vanish
        let sys = vec![poly(&field, 3, &[(1, &[1, 1, 0])])];
        let pt = vec![field.zero(), field.zero(), field.one()];
        assert_eq!(jacobian_rank_at(&sys, &pt).unwrap(), 0);
    }

    #[test]
    fn jacobian_rank_conic_over_f7() {
        // rank 1 at every point of the smooth conic x0^2 + x1^2 - x2^2
        let field = f7();
        let conic = poly(&field, 3, &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (-1, &[0, 0, 2])]);
        let sys = vec![conic.clone()];
        let mut found = 0;
        for a in 0..7u64 {
            for b in 0..7u64 {
                for c in 0..7u64 {
                    if (a, b, c) == (0, 0, 0) {
                        continue;
                    }
                    let pt = vec![Scalar::Mod(a), Scalar::Mod(b), Scalar::Mod(c)];
                    if field.is_zero(&conic.evaluate(&pt).unwrap()) {
                        assert_eq!(jacobian_rank_at(&sys, &pt).unwrap(), 1);
                        found += 1;
                    }
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn jacobian_rejects_off_variety_points() {
        let field = q();
        let sys = vec![poly(&field, 3, &[(1, &[1, 0, 0])])];
        let pt = vec![field.one(), field.one(), field.zero()];
        assert!(matches!(
            jacobian_rank_at(&sys, &pt),
            Err(Error::NotOnVariety)
        ));
    }

    #[test]
    fn rank_agrees_with_transpose() {
        let field = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let rows = rng.gen_range(1..5usize);
            let cols = rng.gen_range(1..5usize);
            let m: Vec<Vec<Scalar>> = (0..rows)
                .map(|_| (0..cols).map(|_| field.random(&mut rng)).collect())
                .collect();
            let t: Vec<Vec<Scalar>> = (0..cols)
                .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
                .collect();
            assert_eq!(matrix_rank(&field, &m), matrix_rank(&field, &t));
        }
    }

    #[test]
    fn division_by_single_polynomial() {
        let field = q();
        // (x0 + x1)(x0 - x1) = x0^2 - x1^2 is divisible by x0 + x1
        let d = poly(&field, 2, &[(1, &[1, 0]), (1, &[0, 1])]);
        let f = poly(&field, 2, &[(1, &[2, 0]), (-1, &[0, 2])]);
        assert!(f.is_divisible_by(&d).unwrap());
        let g = poly(&field, 2, &[(1, &[2, 0]), (1, &[0, 2])]);
        assert!(!g.is_divisible_by(&d).unwrap());
    }

    pub(crate) fn random_homogeneous<R: rand::Rng>(
        field: &FieldSpec,
        num_vars: usize,
        degree: u32,
        rng: &mut R,
    ) -> MultiPoly {
        let num_terms = rng.gen_range(1..=12);
        let mut poly = MultiPoly::zero(field.clone(), num_vars);
        for _ in 0..num_terms {
            let mut exps = vec![0u32; num_vars];
            for _ in 0..degree {
                exps[rng.gen_range(0..num_vars)] += 1;
            }
            let mut c = field.random(rng);
            if field.is_zero(&c) {
                c = field.one();
            }
            let term =
                MultiPoly::from_terms(field.clone(), num_vars, [(c, exps)]).unwrap();
            poly = poly.add(&term).unwrap();
        }
        if poly.is_zero() {
            MultiPoly::from_terms(field.clone(), num_vars, [(field.one(), {
                let mut e = vec![0; num_vars];
                e[0] = degree;
                e
            })])
            .unwrap()
        } else {
            poly
        }
    }

    fn arb_poly(field: FieldSpec) -> impl Strategy<Value = MultiPoly> {
        let nv = 3usize;
        proptest::collection::vec((0i64..40, proptest::collection::vec(0u32..4, nv)), 0..6)
            .prop_map(move |terms| {
                MultiPoly::from_terms(
                    field.clone(),
                    nv,
                    terms
                        .into_iter()
                        .map(|(c, e)| (field.from_i64(c - 20), e)),
                )
                .unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(350))]

        // ring axioms over F5, >= 1000 cases across the three properties
        #[test]
        fn mul_associative_f5(a in arb_poly(f5()), b in arb_poly(f5()), c in arb_poly(f5())) {
            let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn add_commutative_distributive_f5(a in arb_poly(f5()), b in arb_poly(f5()), c in arb_poly(f5())) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ring_axioms_q(a in arb_poly(q()), b in arb_poly(q()), c in arb_poly(q())) {
            let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn restriction_reconstruction_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for field in [q(), f5()] {
            for _ in 0..60 {
                let nv = rng.gen_range(1..=6usize);
                let deg = rng.gen_range(1..=6u32);
                let f = random_homogeneous(&field, nv, deg, &mut rng);
                let exp = f.restrict_to_line().unwrap();
                assert!(reconstruct(&exp, &f), "reconstruction failed for {f}");
                // degree law
                for (j, pj) in exp.coefficients().iter().enumerate() {
                    if !pj.is_zero() {
                        assert_eq!(pj.total_degree(), Some(j as u32));
                        assert!(pj.is_homogeneous());
                    }
                }
                assert_eq!(exp.coefficient(deg as usize), &f);
                // P_0 is the coefficient of x0^e
                let mut e0 = vec![0u32; nv];
                e0[0] = deg;
                let expected_p0 = f.coefficient(&e0);
                let p0 = exp.coefficient(0);
                assert!(p0.num_terms() <= 1);
                assert_eq!(p0.coefficient(&vec![0; nv]), expected_p0);
            }
        }
    }

    #[test]
    fn extension_field_polynomial_mul() {
        let f9 = make_extension(3, 2).unwrap();
        let w = Scalar::Ext(vec![0, 1]);
        let a = MultiPoly::from_terms(f9.clone(), 2, [(w.clone(), vec![1, 0])]).unwrap();
        let sq = a.mul(&a).unwrap();
        // w^2 = -1 mod (w^2 + 1)
        assert_eq!(sq.coefficient(&[2, 0]), Scalar::Ext(vec![2, 0]));
    }
}
