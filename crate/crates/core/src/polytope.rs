//! Exact volume and centroid of bounded H-polytopes.
//!
//! Equalities are eliminated by substitution, vertices are enumerated by
//! cutting a bounding box with one halfspace at a time (double description
//! with an algebraic adjacency test), and the polytope is then fanned into
//! simplices from its lexicographically smallest vertex, recursively over
//! facets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lp::{LinearProgram, LpError, Relation};
use crate::rational::Rational;

type Vector = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("the polytope is empty")]
    EmptyPolytope,
    #[error("the polyhedron is unbounded")]
    Unbounded,
    #[error("constraint has {got} coefficients in dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}

/// `coeffs · x (≤ or =) rhs`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinearRow {
    pub coeffs: Vector,
    pub rhs: Rational,
}

impl LinearRow {
    fn value(&self, x: &[Rational]) -> Rational {
        crate::lp::dot(&self.coeffs, x)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Linear equalities and `≤` inequalities in a fixed ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    equalities: Vec<LinearRow>,
    inequalities: Vec<LinearRow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentroidResult {
    /// Volume in the coordinates left after substituting out the declared
    /// equalities; zero when the polytope is lower dimensional there.
    pub volume: Rational,
    /// Volume inside the polytope's own affine hull (equals `volume` when full dimensional).
    pub hull_volume: Rational,
    pub hull_dimension: usize,
    pub lower_dimensional: bool,
    pub centroid: Vector,
    pub num_vertices: usize,
}

impl Polytope {
    pub fn new(dim: usize) -> Self {
        Polytope {
            dim,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equalities(&self) -> &[LinearRow] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[LinearRow] {
        &self.inequalities
    }

    fn check(&self, coeffs: &[Rational]) -> Result<(), GeometryError> {
        if coeffs.len() == self.dim {
            Ok(())
        } else {
            Err(GeometryError::DimensionMismatch {
                got: coeffs.len(),
                expected: self.dim,
            })
        }
    }

    pub fn add_equality(&mut self, coeffs: Vector, rhs: Rational) -> Result<(), GeometryError> {
        self.check(&coeffs)?;
        self.equalities.push(LinearRow { coeffs, rhs });
        Ok(())
    }

    pub fn add_le(&mut self, coeffs: Vector, rhs: Rational) -> Result<(), GeometryError> {
        self.check(&coeffs)?;
        let row = LinearRow { coeffs, rhs };
        if !self.inequalities.contains(&row) {
            self.inequalities.push(row);
        }
        Ok(())
    }

    pub fn add_ge(&mut self, coeffs: Vector, rhs: Rational) -> Result<(), GeometryError> {
        self.add_le(coeffs.into_iter().map(|c| -c).collect(), -rhs)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.equalities.iter().all(|r| r.value(x) == r.rhs)
            && self.inequalities.iter().all(|r| r.value(x) <= r.rhs)
    }

    pub fn vertices(&self) -> Result<Vec<Vector>, GeometryError> {
        let chart = AffineChart::from_equalities(self.dim, &self.equalities)?;
        let reduced = chart.pull_back_all(&self.inequalities)?;
        match reduced.analyse()? {
            Shape::FullDimensional => {
                let cells = reduced.enumerate_vertices()?;
                Ok(cells
                    .vertices
                    .iter()
                    .map(|v| chart.to_ambient(&v.point))
                    .collect())
            }
            Shape::Lower(inner) => Ok(inner
                .vertices()?
                .iter()
                .map(|y| chart.to_ambient(y))
                .collect()),
        }
    }

    pub fn centroid(&self) -> Result<CentroidResult, GeometryError> {
        let chart = AffineChart::from_equalities(self.dim, &self.equalities)?;
        let reduced = chart.pull_back_all(&self.inequalities)?;
        match reduced.analyse()? {
            Shape::FullDimensional => {
                let (volume, centroid, num_vertices) = reduced.volume_and_centroid()?;
                Ok(CentroidResult {
                    hull_volume: volume.clone(),
                    volume,
                    hull_dimension: chart.directions.len(),
                    lower_dimensional: false,
                    centroid: chart.to_ambient(&centroid),
                    num_vertices,
                })
            }
            Shape::Lower(inner) => {
                let inner = inner.centroid()?;
                Ok(CentroidResult {
                    volume: Rational::zero(),
                    hull_volume: inner.hull_volume,
                    hull_dimension: inner.hull_dimension,
                    lower_dimensional: true,
                    centroid: chart.to_ambient(&inner.centroid),
                    num_vertices: inner.num_vertices,
                })
            }
        }
    }
}

/// x = origin + Σ y_f · directions[f].
struct AffineChart {
    origin: Vector,
    directions: Vec<Vector>,
}

impl AffineChart {
    fn from_equalities(dim: usize, equalities: &[LinearRow]) -> Result<Self, GeometryError> {
        let mut rows: Vec<Vector> = equalities
            .iter()
            .map(|r| {
                let mut row = r.coeffs.clone();
                row.push(r.rhs.clone());
                row
            })
            .collect();
        let pivots = row_reduce(&mut rows, dim);
        if rows[pivots.len()..].iter().any(|r| !r[dim].is_zero()) {
            return Err(GeometryError::EmptyPolytope);
        }
        let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
        let mut origin = vec![Rational::zero(); dim];
        for (r, &p) in pivots.iter().enumerate() {
            origin[p] = rows[r][dim].clone();
        }
        let directions = free
            .iter()
            .map(|&f| {
                let mut d = vec![Rational::zero(); dim];
                d[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    d[p] = -&rows[r][f];
                }
                d
            })
            .collect();
        Ok(AffineChart { origin, directions })
    }

    fn to_ambient(&self, y: &[Rational]) -> Vector {
        let mut x = self.origin.clone();
        for (yf, d) in y.iter().zip(&self.directions) {
            if yf.is_zero() {
                continue;
            }
            for (xi, di) in x.iter_mut().zip(d) {
                *xi += yf * di;
            }
        }
        x
    }

    fn pull_back_all(&self, rows: &[LinearRow]) -> Result<Reduced, GeometryError> {
        let mut out: Vec<LinearRow> = Vec::new();
        for row in rows {
            let pulled = LinearRow {
                coeffs: self
                    .directions
                    .iter()
                    .map(|d| crate::lp::dot(&row.coeffs, d))
                    .collect(),
                rhs: &row.rhs - row.value(&self.origin),
            };
            if pulled.is_zero() {
                if pulled.rhs.is_negative() {
                    return Err(GeometryError::EmptyPolytope);
                }
                continue;
            }
            if !out.contains(&pulled) {
                out.push(pulled);
            }
        }
        Ok(Reduced {
            dim: self.directions.len(),
            rows: out,
        })
    }
}

/// Reduced row echelon form in place over the first `cols` columns; returns pivot columns.
fn row_reduce(rows: &mut [Vector], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

fn rank(mut rows: Vec<Vector>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    row_reduce(&mut rows, cols).len()
}

fn determinant(mut m: Vec<Vector>) -> Rational {
    let k = m.len();
    let mut det = Rational::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let pivot = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for j in c..k {
                row[j] -= &f * &pivot[j];
            }
        }
    }
    det
}

fn factorial(k: usize) -> Rational {
    Rational::from_integer((1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

enum Shape {
    FullDimensional,
    Lower(Polytope),
}

/// Inequalities `rows · y ≤ rhs` in chart coordinates.
struct Reduced {
    dim: usize,
    rows: Vec<LinearRow>,
}

struct Vertex {
    point: Vector,
    tight: BTreeSet<usize>,
}

struct VertexSet {
    vertices: Vec<Vertex>,
}

impl Reduced {
    fn base_lp(&self, extra: usize) -> LinearProgram {
        let mut lp = LinearProgram::new(self.dim + extra);
        for j in 0..self.dim {
            lp.set_free(j);
        }
        for row in &self.rows {
            let mut coeffs = row.coeffs.clone();
            coeffs.resize(self.dim + extra, Rational::zero());
            lp.add(coeffs, Relation::Le, row.rhs.clone());
        }
        lp
    }

    /// Full dimensional, or the same set inside the hull cut out by its implicit equalities.
    fn analyse(&self) -> Result<Shape, GeometryError> {
        if self.dim == 0 {
            return Ok(Shape::FullDimensional);
        }
        // maximize s subject to rows·y + s ≤ rhs, s ≤ 1
        let mut lp = LinearProgram::new(self.dim + 1);
        for j in 0..self.dim {
            lp.set_free(j);
        }
        for row in &self.rows {
            let mut coeffs = row.coeffs.clone();
            coeffs.push(Rational::one());
            lp.add(coeffs, Relation::Le, row.rhs.clone());
        }
        let mut cap = vec![Rational::zero(); self.dim + 1];
        cap[self.dim] = Rational::one();
        lp.add(cap.clone(), Relation::Le, Rational::one());
        lp.set_objective(cap.into_iter().map(|c| -c).collect());
        let interior = match lp.solve() {
            Ok(s) => s,
            Err(LpError::Infeasible) => return Err(GeometryError::EmptyPolytope),
            Err(LpError::Unbounded) => unreachable!("slack is capped"),
            Err(e) => panic!("malformed interior LP: {e}"),
        };
        if interior.value.is_negative() {
            return Ok(Shape::FullDimensional);
        }
        let mut lower = Polytope::new(self.dim);
        let mut probe = self.base_lp(0);
        for row in &self.rows {
            probe.set_objective(row.coeffs.clone());
            let implicit = match probe.solve() {
                Ok(s) => s.value == row.rhs,
                Err(LpError::Unbounded) => false,
                Err(e) => panic!("slack probe failed on a feasible system: {e}"),
            };
            if implicit {
                lower.equalities.push(row.clone());
            } else {
                lower.inequalities.push(row.clone());
            }
        }
        Ok(Shape::Lower(lower))
    }

    fn enumerate_vertices(&self) -> Result<VertexSet, GeometryError> {
        let k = self.dim;
        let mut normals: Vec<Vector> = Vec::new();
        let mut bounds = Vec::with_capacity(k);
        let mut lp = self.base_lp(0);
        for j in 0..k {
            let mut e = vec![Rational::zero(); k];
            e[j] = Rational::one();
            lp.set_objective(e.clone());
            let lo = lp.solve().map_err(|_| GeometryError::Unbounded)?.value;
            lp.set_objective(e.iter().map(|c| -c).collect());
            let hi = -lp.solve().map_err(|_| GeometryError::Unbounded)?.value;
            normals.push(e.iter().map(|c| -c).collect());
            normals.push(e);
            bounds.push((lo, hi));
        }
        let mut vertices: Vec<Vertex> = (0..1usize << k)
            .map(|corner| {
                let mut point = Vec::with_capacity(k);
                let mut tight = BTreeSet::new();
                for (j, (lo, hi)) in bounds.iter().enumerate() {
                    if corner >> j & 1 == 0 {
                        point.push(lo.clone());
                        tight.insert(2 * j);
                    } else {
                        point.push(hi.clone());
                        tight.insert(2 * j + 1);
                    }
                }
                Vertex { point, tight }
            })
            .collect();

        for row in &self.rows {
            let id = normals.len();
            normals.push(row.coeffs.clone());
            let slack: Vec<Rational> = vertices
                .iter()
                .map(|v| &row.rhs - row.value(&v.point))
                .collect();
            if slack.iter().all(|s| !s.is_negative()) {
                for (v, s) in vertices.iter_mut().zip(&slack) {
                    if s.is_zero() {
                        v.tight.insert(id);
                    }
                }
                continue;
            }
            let mut created = Vec::new();
            for (a, u) in vertices.iter().enumerate() {
                if !slack[a].is_positive() {
                    continue;
                }
                for (b, w) in vertices.iter().enumerate() {
                    if !slack[b].is_negative() {
                        continue;
                    }
                    let common: BTreeSet<usize> = u.tight.intersection(&w.tight).copied().collect();
                    if common.len() + 1 < k {
                        continue;
                    }
                    if rank(common.iter().map(|&c| normals[c].clone()).collect()) + 1 != k {
                        continue;
                    }
                    let t = &slack[a] / (&slack[a] - &slack[b]);
                    let point = u
                        .point
                        .iter()
                        .zip(&w.point)
                        .map(|(x, y)| x + &t * (y - x))
                        .collect();
                    let mut tight = common;
                    tight.insert(id);
                    created.push(Vertex { point, tight });
                }
            }
            let mut kept: Vec<Vertex> = Vec::with_capacity(vertices.len() + created.len());
            for (mut v, s) in vertices.into_iter().zip(slack) {
                if s.is_negative() {
                    continue;
                }
                if s.is_zero() {
                    v.tight.insert(id);
                }
                kept.push(v);
            }
            for v in created {
                if let Some(existing) = kept.iter_mut().find(|e| e.point == v.point) {
                    existing.tight.extend(v.tight);
                } else {
                    kept.push(v);
                }
            }
            vertices = kept;
        }
        if vertices.is_empty() {
            return Err(GeometryError::EmptyPolytope);
        }
        Ok(VertexSet { vertices })
    }

    fn volume_and_centroid(&self) -> Result<(Rational, Vector, usize), GeometryError> {
        if self.dim == 0 {
            return Ok((Rational::one(), Vec::new(), 1));
        }
        let cells = self.enumerate_vertices()?;
        let all: Vec<usize> = (0..cells.vertices.len()).collect();
        let simplices = cells.triangulate(&all, self.dim);
        let scale = factorial(self.dim);
        let mut volume = Rational::zero();
        let mut moment = vec![Rational::zero(); self.dim];
        let count = Rational::from_integer(BigInt::from(self.dim + 1));
        for simplex in &simplices {
            let apex = &cells.vertices[simplex[0]].point;
            let edges: Vec<Vector> = simplex[1..]
                .iter()
                .map(|&i| {
                    cells.vertices[i]
                        .point
                        .iter()
                        .zip(apex)
                        .map(|(a, b)| a - b)
                        .collect()
                })
                .collect();
            let vol = determinant(edges).abs() / &scale;
            for &i in simplex {
                for (m, x) in moment.iter_mut().zip(&cells.vertices[i].point) {
                    *m += &vol * x / &count;
                }
            }
            volume += vol;
        }
        let centroid = moment.into_iter().map(|m| m / &volume).collect();
        Ok((volume, centroid, cells.vertices.len()))
    }
}

impl VertexSet {
    fn affine_dimension(&self, ids: &[usize]) -> usize {
        let base = &self.vertices[ids[0]].point;
        rank(
            ids[1..]
                .iter()
                .map(|&i| {
                    self.vertices[i]
                        .point
                        .iter()
                        .zip(base)
                        .map(|(a, b)| a - b)
                        .collect()
                })
                .collect(),
        )
    }

    /// Fan triangulation of the face spanned by `face` (of dimension `dim`).
    fn triangulate(&self, face: &[usize], dim: usize) -> Vec<Vec<usize>> {
        if dim == 0 {
            return vec![vec![face[0]]];
        }
        let apex = *face
            .iter()
            .min_by(|&&a, &&b| self.vertices[a].point.cmp(&self.vertices[b].point))
            .unwrap();
        let constraints: BTreeSet<usize> = face
            .iter()
            .flat_map(|&v| self.vertices[v].tight.iter().copied())
            .collect();
        let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in constraints {
            if self.vertices[apex].tight.contains(&c) {
                continue;
            }
            let sub: Vec<usize> = face
                .iter()
                .copied()
                .filter(|&v| self.vertices[v].tight.contains(&c))
                .collect();
            if sub.len() < dim || facets.contains(&sub) {
                continue;
            }
            if self.affine_dimension(&sub) + 1 == dim {
                facets.insert(sub);
            }
        }
        let mut simplices = Vec::new();
        for facet in facets {
            for mut s in self.triangulate(&facet, dim - 1) {
                s.insert(0, apex);
                simplices.push(s);
            }
        }
        simplices
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| int(x)).collect()
    }

    fn simplex(n: usize) -> Polytope {
        let mut p = Polytope::new(n);
        p.add_equality(vec![int(1); n], int(1)).unwrap();
        for i in 0..n {
            let mut e = vec![int(0); n];
            e[i] = int(1);
            p.add_ge(e, int(0)).unwrap();
        }
        p
    }

    #[test]
    fn standard_simplex_centroid() {
        let c = simplex(3).centroid().unwrap();
        assert_eq!(c.centroid, vec![frac(1, 3); 3]);
        assert_eq!(c.volume, frac(1, 2));
        assert_eq!(c.num_vertices, 3);
        assert!(!c.lower_dimensional);
    }

    #[test]
    fn half_segment_centroid() {
        let mut p = simplex(2);
        p.add_ge(ints(&[1, 0]), frac(1, 2)).unwrap();
        let c = p.centroid().unwrap();
        assert_eq!(c.centroid, vec![frac(3, 4), frac(1, 4)]);
        assert_eq!(c.volume, frac(1, 2));
    }

    #[test]
    fn unit_cube_and_cross_polytope() {
        let mut cube = Polytope::new(3);
        for i in 0..3 {
            let mut e = vec![int(0); 3];
            e[i] = int(1);
            cube.add_le(e.clone(), int(1)).unwrap();
            cube.add_ge(e, int(0)).unwrap();
        }
        let c = cube.centroid().unwrap();
        assert_eq!(
            (c.volume, c.centroid, c.num_vertices),
            (int(1), vec![frac(1, 2); 3], 8)
        );

        // |x| + |y| + |z| <= 1 has volume 4/3 and is highly degenerate for the cut sequence.
        let mut octa = Polytope::new(3);
        for signs in 0..8 {
            let coeffs = (0..3)
                .map(|j| if signs >> j & 1 == 1 { int(-1) } else { int(1) })
                .collect();
            octa.add_le(coeffs, int(1)).unwrap();
        }
        let c = octa.centroid().unwrap();
        assert_eq!(
            (c.volume, c.centroid, c.num_vertices),
            (frac(4, 3), vec![int(0); 3], 6)
        );
    }

    #[test]
    fn lower_dimensional_input_is_flagged() {
        // x + y <= 1, x + y >= 1 in the unit square: a segment.
        let mut p = Polytope::new(2);
        p.add_le(ints(&[1, 1]), int(1)).unwrap();
        p.add_ge(ints(&[1, 1]), int(1)).unwrap();
        p.add_ge(ints(&[1, 0]), int(0)).unwrap();
        p.add_ge(ints(&[0, 1]), int(0)).unwrap();
        let c = p.centroid().unwrap();
        assert!(c.lower_dimensional);
        assert_eq!(c.volume, int(0));
        assert_eq!(c.hull_dimension, 1);
        assert_eq!(c.centroid, vec![frac(1, 2), frac(1, 2)]);
        assert!(p.contains(&c.centroid));
    }

    #[test]
    fn empty_and_unbounded() {
        let mut p = simplex(2);
        p.add_ge(ints(&[1, 0]), int(2)).unwrap();
        assert_eq!(p.centroid(), Err(GeometryError::EmptyPolytope));
        let mut q = Polytope::new(1);
        q.add_ge(ints(&[1]), int(0)).unwrap();
        assert_eq!(q.centroid(), Err(GeometryError::Unbounded));
        let mut r = Polytope::new(2);
        r.add_equality(ints(&[1, 1]), int(1)).unwrap();
        r.add_equality(ints(&[2, 2]), int(3)).unwrap();
        assert_eq!(r.centroid(), Err(GeometryError::EmptyPolytope));
        assert_eq!(
            r.add_le(ints(&[1]), int(0)),
            Err(GeometryError::DimensionMismatch {
                got: 1,
                expected: 2
            })
        );
    }

    #[test]
    fn single_point() {
        let mut p = Polytope::new(2);
        p.add_equality(ints(&[1, 0]), frac(1, 3)).unwrap();
        p.add_equality(ints(&[0, 1]), frac(2, 3)).unwrap();
        let c = p.centroid().unwrap();
        assert_eq!(c.centroid, vec![frac(1, 3), frac(2, 3)]);
        assert_eq!(c.hull_dimension, 0);
    }

    #[test]
    fn triangle_vertices() {
        let mut p = Polytope::new(2);
        p.add_ge(ints(&[1, 0]), int(0)).unwrap();
        p.add_ge(ints(&[0, 1]), int(0)).unwrap();
        p.add_le(ints(&[1, 2]), int(2)).unwrap();
        let mut v = p.vertices().unwrap();
        v.sort();
        assert_eq!(v, vec![ints(&[0, 0]), ints(&[0, 1]), ints(&[2, 0])]);
        let c = p.centroid().unwrap();
        assert_eq!(c.centroid, vec![frac(2, 3), frac(1, 3)]);
        assert_eq!(c.volume, int(1));
    }
}
