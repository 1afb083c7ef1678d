//! Exact point-hyperplane configurations in dimension d = r - 1.
//!
//! A point is `(x_1, .., x_d)`; a hyperplane is a coefficient vector
//! `(c_0, c_1, .., c_d)` evaluated as `c_0 + c_1 x_1 + .. + c_d x_d`. A point
//! is above a hyperplane when the evaluation of the hyperplane scaled to
//! `c_d = 1` is positive, which matches the row/column identification of a
//! normal-form factorization `U V`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{
    int, rational_sign, scalar_from_json, scalar_to_json, QuadElem, QuadField, Rational,
};
use crate::pattern::{condense, SignPattern};
use crate::sign::Sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub coords: Vec<QuadElem>,
}

impl Point {
    pub fn new(coords: Vec<QuadElem>) -> Self {
        Point { coords }
    }

    pub fn rational(coords: &[Rational]) -> Self {
        Point::new(coords.iter().cloned().map(QuadElem::rational).collect())
    }

    pub fn ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| QuadElem::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedHyperplane {
    pub coeffs: Vec<QuadElem>,
}

impl OrientedHyperplane {
    pub fn new(coeffs: Vec<QuadElem>) -> Self {
        OrientedHyperplane { coeffs }
    }

    pub fn rational(coeffs: &[Rational]) -> Self {
        OrientedHyperplane::new(coeffs.iter().cloned().map(QuadElem::rational).collect())
    }

    pub fn ints(coeffs: &[i64]) -> Self {
        OrientedHyperplane::new(coeffs.iter().map(|&c| QuadElem::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant(&self) -> &QuadElem {
        &self.coeffs[0]
    }

    pub fn last(&self) -> &QuadElem {
        &self.coeffs[self.coeffs.len() - 1]
    }

    pub fn is_vertical(&self) -> bool {
        self.last().is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub dim: usize,
    pub field: QuadField,
    pub points: Vec<Point>,
    pub hyperplanes: Vec<OrientedHyperplane>,
}

impl Configuration {
    pub fn new(
        dim: usize,
        field: QuadField,
        points: Vec<Point>,
        hyperplanes: Vec<OrientedHyperplane>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("configuration dimension must be at least 1"));
        }
        for (i, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::domain(format!(
                    "point {} has {} coordinates, expected {dim}",
                    i + 1,
                    p.dim()
                )));
            }
        }
        for (j, h) in hyperplanes.iter().enumerate() {
            if h.coeffs.len() != dim + 1 {
                return Err(Error::domain(format!(
                    "hyperplane {} has {} coefficients, expected {}",
                    j + 1,
                    h.coeffs.len(),
                    dim + 1
                )));
            }
            if h.coeffs[1..].iter().all(QuadElem::is_zero) {
                return Err(Error::domain(format!(
                    "hyperplane {} has no linear part",
                    j + 1
                )));
            }
        }
        let all_rational = points
            .iter()
            .flat_map(|p| &p.coords)
            .chain(hyperplanes.iter().flat_map(|h| &h.coeffs))
            .all(QuadElem::is_rational);
        if field == QuadField::RATIONALS && !all_rational {
            return Err(Error::domain("surd coordinates need a radicand (\"sqrt\")"));
        }
        let points = points
            .into_iter()
            .map(|p| Point::new(p.coords.into_iter().map(|c| field.canon(c)).collect()))
            .collect();
        Ok(Configuration {
            dim,
            field,
            points,
            hyperplanes,
        })
    }

    pub fn empty(dim: usize, field: QuadField) -> Self {
        Configuration {
            dim,
            field,
            points: Vec::new(),
            hyperplanes: Vec::new(),
        }
    }

    pub fn point_label(i: usize) -> String {
        format!("p{}", i + 1)
    }

    pub fn hyperplane_label(j: usize) -> String {
        format!("l{}", j + 1)
    }

    pub fn evaluate(&self, p: &Point, h: &OrientedHyperplane) -> QuadElem {
        evaluate(&self.field, p, h)
    }

    pub fn from_json(text: &str) -> Result<Configuration> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        Configuration::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Configuration> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::domain("configuration must be a JSON object"))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::domain("missing integer field \"dim\""))? as usize;
        let field = match obj.get("sqrt") {
            None | Some(Value::Null) => QuadField::RATIONALS,
            Some(d) => QuadField::new(
                d.as_u64()
                    .ok_or_else(|| Error::domain("\"sqrt\" must be a positive integer"))?,
            )?,
        };
        let rows = |key: &str| -> Result<Vec<Vec<QuadElem>>> {
            let list = match obj.get(key) {
                None => return Ok(Vec::new()),
                Some(l) => l
                    .as_array()
                    .ok_or_else(|| Error::domain(format!("\"{key}\" must be an array")))?,
            };
            list.iter()
                .enumerate()
                .map(|(k, row)| {
                    row.as_array()
                        .ok_or_else(|| Error::domain(format!("{key}[{k}] must be an array")))?
                        .iter()
                        .map(|x| {
                            scalar_from_json(x).map_err(|e| Error::domain(format!("{key}[{k}]: {e}")))
                        })
                        .collect()
                })
                .collect()
        };
        let points = rows("points")?.into_iter().map(Point::new).collect();
        let hyperplanes = rows("hyperplanes")?
            .into_iter()
            .map(OrientedHyperplane::new)
            .collect();
        Configuration::new(dim, field, points, hyperplanes)
    }

    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "dim": self.dim,
            "points": self.points.iter().map(|p| p.coords.iter().map(scalar_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "hyperplanes": self.hyperplanes.iter().map(|h| h.coeffs.iter().map(scalar_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
        if self.field != QuadField::RATIONALS {
            v["sqrt"] = json!(self.field.d());
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("serializable")
    }
}

pub fn evaluate(field: &QuadField, p: &Point, h: &OrientedHyperplane) -> QuadElem {
    let mut acc = h.coeffs[0].clone();
    for (c, x) in h.coeffs[1..].iter().zip(&p.coords) {
        acc = &acc + &field.mul(c, x);
    }
    field.canon(acc)
}

/// Exact sign of the hyperplane's evaluation at `p`, in the hyperplane's own orientation.
pub fn side(field: &QuadField, p: &Point, h: &OrientedHyperplane) -> Result<Sign> {
    if p.dim() != h.dim() {
        return Err(Error::domain(format!(
            "point of dimension {} against hyperplane of dimension {}",
            p.dim(),
            h.dim()
        )));
    }
    Ok(field.sign(&evaluate(field, p, h)))
}

/// Scales `h` so its last coefficient is 1. Returns the sign that was divided
/// out; `Neg` means the orientation flipped.
pub fn normalize_hyperplane(
    field: &QuadField,
    h: &OrientedHyperplane,
    index: usize,
) -> Result<(OrientedHyperplane, Sign)> {
    let last = field.canon(h.last().clone());
    let flip = field.sign(&last);
    if flip == Sign::Zero {
        return Err(Error::VerticalHyperplane { index });
    }
    let inv = field.recip(&last)?;
    let coeffs = h.coeffs.iter().map(|c| field.mul(c, &inv)).collect();
    Ok((OrientedHyperplane::new(coeffs), flip))
}

/// The above/on/below pattern of a configuration with no vertical hyperplane.
pub fn encode_configuration(c: &Configuration) -> Result<SignPattern> {
    let normalized = normalized_hyperplanes(c)?;
    Ok(SignPattern::from_fn(c.points.len(), normalized.len(), |i, j| {
        c.field.sign(&c.evaluate(&c.points[i], &normalized[j]))
    }))
}

fn normalized_hyperplanes(c: &Configuration) -> Result<Vec<OrientedHyperplane>> {
    c.hyperplanes
        .iter()
        .enumerate()
        .map(|(j, h)| normalize_hyperplane(&c.field, h, j).map(|(h, _)| h))
        .collect()
}

/// Signs of the raw evaluations, honouring each hyperplane's stored orientation.
pub fn oriented_pattern(c: &Configuration) -> SignPattern {
    SignPattern::from_fn(c.points.len(), c.hyperplanes.len(), |i, j| {
        c.field.sign(&c.evaluate(&c.points[i], &c.hyperplanes[j]))
    })
}

/// Configuration of a normal-form factorization: U's first column and V's
/// last row must be all ones.
pub fn from_factorization(u: &[Vec<Rational>], v: &[Vec<Rational>]) -> Result<Configuration> {
    let r = v.len();
    if r < 2 {
        return Err(Error::domain("factorization rank must be at least 2"));
    }
    let n = v[0].len();
    if v.iter().any(|row| row.len() != n) {
        return Err(Error::domain("ragged V"));
    }
    for (i, row) in u.iter().enumerate() {
        if row.len() != r {
            return Err(Error::domain(format!("row {} of U has {} entries, expected {r}", i + 1, row.len())));
        }
        if !row[0].is_one() {
            return Err(Error::domain(format!("U[{}][1] is not 1", i + 1)));
        }
    }
    if let Some(j) = v[r - 1].iter().position(|x| !x.is_one()) {
        return Err(Error::domain(format!("V[{r}][{}] is not 1", j + 1)));
    }
    let points = u.iter().map(|row| Point::rational(&row[1..])).collect();
    let hyperplanes = (0..n)
        .map(|j| OrientedHyperplane::rational(&v.iter().map(|row| row[j].clone()).collect::<Vec<_>>()))
        .collect();
    Configuration::new(r - 1, QuadField::RATIONALS, points, hyperplanes)
}

/// Float convenience: every entry is converted to its exact binary value.
pub fn from_factorization_f64(u: &[Vec<f64>], v: &[Vec<f64>]) -> Result<Configuration> {
    let conv = |m: &[Vec<f64>]| -> Result<Vec<Vec<Rational>>> {
        m.iter()
            .map(|row| row.iter().map(|&x| crate::exactnum::rational_from_f64(x)).collect())
            .collect()
    };
    from_factorization(&conv(u)?, &conv(v)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// 1: two points alike or opposite; 2: two hyperplanes alike or opposite;
    /// 3: a point on every hyperplane; 4: a hyperplane through every point.
    pub condition: u8,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub simple: bool,
    pub violations: Vec<Violation>,
}

pub fn is_simple(c: &Configuration) -> Result<SimplicityReport> {
    let a = encode_configuration(c)?;
    let (m, n) = a.shape();
    let mut violations = Vec::new();
    let alike = |x: &[Sign], y: &[Sign]| x == y || x.iter().zip(y).all(|(&p, &q)| p == -q);
    for i in 0..m {
        for k in i + 1..m {
            if alike(a.row(i), a.row(k)) {
                violations.push(Violation {
                    condition: 1,
                    indices: vec![i, k],
                });
            }
        }
    }
    for j in 0..n {
        for k in j + 1..n {
            if alike(&a.col(j), &a.col(k)) {
                violations.push(Violation {
                    condition: 2,
                    indices: vec![j, k],
                });
            }
        }
    }
    for i in 0..m {
        if a.row(i).iter().all(|s| s.is_zero()) {
            violations.push(Violation {
                condition: 3,
                indices: vec![i],
            });
        }
    }
    for j in 0..n {
        if a.col(j).iter().all(|s| s.is_zero()) {
            violations.push(Violation {
                condition: 4,
                indices: vec![j],
            });
        }
    }
    let simple = violations.is_empty();
    debug_assert_eq!(simple, condense(&a).condensed == a || (m == 0 && n == 0));
    Ok(SimplicityReport { simple, violations })
}

/// `((1 - t^2) / (1 + t^2), 2t / (1 + t^2))`, an exact point on the unit circle.
pub fn rational_rotation(t: &Rational) -> (Rational, Rational) {
    let one = Rational::one();
    let t2 = t * t;
    let den = &one + &t2;
    ((&one - &t2) / &den, (t * int(2)) / den)
}

/// Rotates a planar configuration about the origin by the rational-parametrized angle `t`.
/// Hyperplane coefficient vectors rotate with the points, so every evaluation is unchanged.
pub fn rotate(c: &Configuration, t: &Rational) -> Result<Configuration> {
    if c.dim != 2 {
        return Err(Error::domain("exact rotation is implemented for planar configurations"));
    }
    let (cos, sin) = rational_rotation(t);
    let (cos, sin) = (QuadElem::rational(cos), QuadElem::rational(sin));
    let f = &c.field;
    let rot = |x: &QuadElem, y: &QuadElem| -> (QuadElem, QuadElem) {
        (
            f.mul(&cos, x) - f.mul(&sin, y),
            f.mul(&sin, x) + f.mul(&cos, y),
        )
    };
    let points = c
        .points
        .iter()
        .map(|p| {
            let (x, y) = rot(&p.coords[0], &p.coords[1]);
            Point::new(vec![x, y])
        })
        .collect();
    let hyperplanes = c
        .hyperplanes
        .iter()
        .map(|h| {
            let (a, b) = rot(&h.coeffs[1], &h.coeffs[2]);
            OrientedHyperplane::new(vec![h.coeffs[0].clone(), a, b])
        })
        .collect();
    Ok(Configuration {
        dim: 2,
        field: c.field,
        points,
        hyperplanes,
    })
}

#[derive(Clone, Debug)]
pub struct RotationReport {
    pub config: Configuration,
    pub t: Rational,
    pub cos: Rational,
    pub sin: Rational,
    /// `encode(config) = oriented_pattern(original) * diag(flips)`.
    pub flips: Vec<Sign>,
}

/// Rotates a planar configuration so that no hyperplane is vertical, trying
/// t = 0 first and then small rationals p/q in order of q.
pub fn avoid_vertical(c: &Configuration) -> Result<RotationReport> {
    if c.dim != 2 {
        return Err(Error::domain("avoid_vertical is implemented for planar configurations"));
    }
    for t in rational_sequence() {
        let rotated = rotate(c, &t)?;
        if rotated.hyperplanes.iter().any(OrientedHyperplane::is_vertical) {
            continue;
        }
        let flips = rotated
            .hyperplanes
            .iter()
            .map(|h| c.field.sign(h.last()))
            .collect();
        let (cos, sin) = rational_rotation(&t);
        return Ok(RotationReport {
            config: rotated,
            t,
            cos,
            sin,
            flips,
        });
    }
    unreachable!("only finitely many angles make a hyperplane vertical")
}

fn rational_sequence() -> impl Iterator<Item = Rational> {
    std::iter::once(Rational::zero()).chain((2i64..).flat_map(|q| {
        (1..q)
            .filter(move |p| num_integer::gcd(*p, q) == 1)
            .flat_map(move |p| [crate::exactnum::rat(p, q), crate::exactnum::rat(-p, q)])
    }))
}

/// Shifts every point by `v`, adjusting constants so each evaluation is unchanged.
pub fn translate(c: &Configuration, v: &[QuadElem]) -> Result<Configuration> {
    if v.len() != c.dim {
        return Err(Error::domain(format!(
            "translation of length {} in dimension {}",
            v.len(),
            c.dim
        )));
    }
    let f = &c.field;
    let points = c
        .points
        .iter()
        .map(|p| Point::new(p.coords.iter().zip(v).map(|(x, d)| f.canon(x + d)).collect()))
        .collect();
    let hyperplanes = c
        .hyperplanes
        .iter()
        .map(|h| {
            let mut coeffs = h.coeffs.clone();
            let mut c0 = coeffs[0].clone();
            for (ci, vi) in h.coeffs[1..].iter().zip(v) {
                c0 = &c0 - &f.mul(ci, vi);
            }
            coeffs[0] = f.canon(c0);
            OrientedHyperplane::new(coeffs)
        })
        .collect();
    Ok(Configuration {
        dim: c.dim,
        field: c.field,
        points,
        hyperplanes,
    })
}

#[derive(Clone, Debug)]
pub struct DualReport {
    pub config: Configuration,
    /// Per original point: sign of its last coordinate (orientation of its dual hyperplane).
    pub point_flips: Vec<Sign>,
    /// Per original hyperplane: orientation change from "pointing up" to "origin on the negative side".
    pub hyperplane_flips: Vec<Sign>,
}

/// Polar duality about the unit sphere: point `a` becomes `<a, x> = 1` with
/// the origin on its negative side; a hyperplane missing the origin becomes
/// its pole. With both orientation conventions reconciled by the recorded
/// flips, `encode(dual)^T = diag(point_flips) * encode(c) * diag(hyperplane_flips)`.
pub fn dualize(c: &Configuration) -> Result<DualReport> {
    let f = &c.field;
    let mut new_points = Vec::with_capacity(c.hyperplanes.len());
    let mut hyperplane_flips = Vec::with_capacity(c.hyperplanes.len());
    for (j, h) in c.hyperplanes.iter().enumerate() {
        let c0 = f.canon(h.constant().clone());
        let s0 = f.sign(&c0);
        if s0 == Sign::Zero {
            return Err(Error::domain(format!(
                "hyperplane {} passes through the origin; translate the configuration first",
                j + 1
            )));
        }
        let minus_inv = -f.recip(&c0)?;
        new_points.push(Point::new(h.coeffs[1..].iter().map(|x| f.mul(x, &minus_inv)).collect()));
        hyperplane_flips.push(-s0 * f.sign(h.last()));
    }
    let mut new_hyperplanes = Vec::with_capacity(c.points.len());
    let mut point_flips = Vec::with_capacity(c.points.len());
    for (i, p) in c.points.iter().enumerate() {
        if p.coords.iter().all(QuadElem::is_zero) {
            return Err(Error::domain(format!(
                "point {} is the origin; translate the configuration first",
                i + 1
            )));
        }
        let mut coeffs = vec![QuadElem::from_int(-1)];
        coeffs.extend(p.coords.iter().cloned());
        point_flips.push(f.sign(p.coords.last().expect("dim >= 1")));
        new_hyperplanes.push(OrientedHyperplane::new(coeffs));
    }
    Ok(DualReport {
        config: Configuration {
            dim: c.dim,
            field: c.field,
            points: new_points,
            hyperplanes: new_hyperplanes,
        },
        point_flips,
        hyperplane_flips,
    })
}

fn common_field(a: &QuadField, b: &QuadField) -> Result<QuadField> {
    if a == b || *b == QuadField::RATIONALS {
        Ok(*a)
    } else if *a == QuadField::RATIONALS {
        Ok(*b)
    } else {
        Err(Error::domain(format!(
            "field contexts differ: sqrt {} vs sqrt {}",
            a.d(),
            b.d()
        )))
    }
}

/// Raises the dimension by inserting zero coordinates ahead of the existing
/// ones (the zero columns go right after U's leading column of ones).
pub fn pad_dimension(c: &Configuration, dim: usize) -> Result<Configuration> {
    if dim < c.dim {
        return Err(Error::domain("cannot lower the dimension"));
    }
    let k = dim - c.dim;
    let points = c
        .points
        .iter()
        .map(|p| {
            let mut coords = vec![QuadElem::zero(); k];
            coords.extend(p.coords.iter().cloned());
            Point::new(coords)
        })
        .collect();
    let hyperplanes = c
        .hyperplanes
        .iter()
        .map(|h| {
            let mut coeffs = vec![h.coeffs[0].clone()];
            coeffs.extend(std::iter::repeat_n(QuadElem::zero(), k));
            coeffs.extend(h.coeffs[1..].iter().cloned());
            OrientedHyperplane::new(coeffs)
        })
        .collect();
    Ok(Configuration {
        dim,
        field: c.field,
        points,
        hyperplanes,
    })
}

/// Places `upper` far above `lower` so that the union encodes
/// `[[A1, +], [-, A2]]`. The vertical shift is
/// `1 + max(0, max -e_h(p), max e_g(q))` over points p of `upper` against
/// hyperplanes h of `lower` and points q of `lower` against hyperplanes g of
/// `upper`, computed exactly after scaling every hyperplane to `c_d = 1`.
pub fn stack(upper: &Configuration, lower: &Configuration) -> Result<Configuration> {
    let field = common_field(&upper.field, &lower.field)?;
    let dim = upper.dim.max(lower.dim);
    let mut top = pad_dimension(upper, dim)?;
    let mut bottom = pad_dimension(lower, dim)?;
    top.field = field;
    bottom.field = field;
    let top_h = normalized_hyperplanes(&top)?;
    let bottom_h = normalized_hyperplanes(&bottom).map_err(|e| match e {
        Error::VerticalHyperplane { index } => Error::VerticalHyperplane {
            index: index + top_h.len(),
        },
        other => other,
    })?;
    let mut shift = QuadElem::zero();
    for p in &top.points {
        for h in &bottom_h {
            shift = field.max(shift, -evaluate(&field, p, h));
        }
    }
    for q in &bottom.points {
        for g in &top_h {
            shift = field.max(shift, evaluate(&field, q, g));
        }
    }
    let shift = field.canon(shift + QuadElem::one());
    let mut v = vec![QuadElem::zero(); dim];
    v[dim - 1] = shift;
    let top = translate(
        &Configuration {
            hyperplanes: top_h,
            ..top
        },
        &v,
    )?;
    let mut points = top.points;
    points.extend(bottom.points);
    let mut hyperplanes = top.hyperplanes;
    hyperplanes.extend(bottom_h);
    Ok(Configuration {
        dim,
        field,
        points,
        hyperplanes,
    })
}

/// Folds [`stack`] over a list: the first configuration ends up on top.
pub fn stack_all(configs: &[Configuration]) -> Result<Configuration> {
    let (last, rest) = configs
        .split_last()
        .ok_or_else(|| Error::domain("nothing to stack"))?;
    rest.iter()
        .rev()
        .try_fold(last.clone(), |acc, c| stack(c, &acc))
}

/// Point i lies on line j iff entry (i, j) is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub pairs: Vec<(usize, usize)>,
    pub points_on_line: Vec<Vec<usize>>,
    pub lines_through_point: Vec<Vec<usize>>,
}

impl Incidence {
    pub fn line_counts(&self) -> Vec<usize> {
        self.points_on_line.iter().map(Vec::len).collect()
    }

    pub fn point_counts(&self) -> Vec<usize> {
        self.lines_through_point.iter().map(Vec::len).collect()
    }
}

pub fn incidence_structure(a: &SignPattern) -> Incidence {
    let (m, n) = a.shape();
    let mut pairs = Vec::new();
    let mut points_on_line = vec![Vec::new(); n];
    let mut lines_through_point = vec![Vec::new(); m];
    for i in 0..m {
        for j in 0..n {
            if a.get(i, j).is_zero() {
                pairs.push((i, j));
                points_on_line[j].push(i);
                lines_through_point[i].push(j);
            }
        }
    }
    Incidence {
        pairs,
        points_on_line,
        lines_through_point,
    }
}

/// Exact `sgn(U V)` of two rational matrices.
pub fn product_signs(u: &[Vec<Rational>], v: &[Vec<Rational>]) -> SignPattern {
    let n = v.first().map_or(0, Vec::len);
    SignPattern::from_fn(u.len(), n, |i, j| {
        let mut acc = Rational::zero();
        for (k, vk) in v.iter().enumerate() {
            acc += &u[i][k] * &vk[j];
        }
        rational_sign(&acc)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn line(c: &[i64]) -> OrientedHyperplane {
        OrientedHyperplane::ints(c)
    }

    #[test]
    fn side_examples() {
        let f = QuadField::new(5).unwrap();
        let axis = line(&[0, 0, 1]);
        assert_eq!(side(&f, &Point::ints(&[0, 1]), &axis).unwrap(), Sign::Pos);
        assert_eq!(side(&f, &Point::ints(&[7, 0]), &axis).unwrap(), Sign::Zero);
        let phi = QuadElem::new(rat(1, 2), rat(1, 2));
        let p = Point::new(vec![phi, QuadElem::from_int(2)]);
        assert_eq!(side(&f, &p, &line(&[0, -1, 1])).unwrap(), Sign::Pos);
        assert!(side(&f, &Point::ints(&[1]), &axis).is_err());
    }

    #[test]
    fn encode_single_pair() {
        let c = Configuration::new(2, QuadField::RATIONALS, vec![Point::ints(&[0, 1])], vec![line(&[0, 0, 1])]).unwrap();
        assert_eq!(encode_configuration(&c).unwrap(), SignPattern::from_strs(&["+"]));
        let neg = Configuration::new(2, QuadField::RATIONALS, vec![Point::ints(&[0, 1])], vec![line(&[0, 0, -2])]).unwrap();
        assert_eq!(encode_configuration(&neg).unwrap(), SignPattern::from_strs(&["+"]));
        assert_eq!(oriented_pattern(&neg), SignPattern::from_strs(&["-"]));
    }

    #[test]
    fn vertical_hyperplane_is_reported() {
        let c = Configuration::new(
            2,
            QuadField::RATIONALS,
            vec![Point::ints(&[1, 1])],
            vec![line(&[0, 0, 1]), line(&[0, 1, 0])],
        )
        .unwrap();
        assert!(matches!(encode_configuration(&c), Err(Error::VerticalHyperplane { index: 1 })));
    }

    #[test]
    fn from_factorization_examples() {
        let u = vec![vec![int(1), int(0)], vec![int(1), int(1)]];
        let v = vec![vec![int(0), int(-1)], vec![int(1), int(1)]];
        let c = from_factorization(&u, &v).unwrap();
        assert_eq!(c.dim, 1);
        assert_eq!(encode_configuration(&c).unwrap(), SignPattern::from_strs(&["0-", "+0"]));
        assert_eq!(product_signs(&u, &v), SignPattern::from_strs(&["0-", "+0"]));

        let c = from_factorization(&[vec![int(1), int(1)]], &[vec![int(-1)], vec![int(1)]]).unwrap();
        assert_eq!(encode_configuration(&c).unwrap(), SignPattern::from_strs(&["0"]));

        assert!(from_factorization(&[vec![int(2), int(1)]], &[vec![int(-1)], vec![int(1)]]).is_err());
        assert!(from_factorization(&[vec![int(1), int(1)]], &[vec![int(-1)], vec![int(3)]]).is_err());
    }

    #[test]
    fn simplicity_examples() {
        let two_points = Configuration::new(
            2,
            QuadField::RATIONALS,
            vec![Point::ints(&[0, 1]), Point::ints(&[0, 1])],
            vec![line(&[0, 0, 1])],
        )
        .unwrap();
        let r = is_simple(&two_points).unwrap();
        assert!(!r.simple);
        assert_eq!(r.violations.iter().map(|v| v.condition).collect::<Vec<_>>(), vec![1]);

        let on_line = Configuration::new(2, QuadField::RATIONALS, vec![Point::ints(&[0, 0])], vec![line(&[0, 0, 1])]).unwrap();
        let r = is_simple(&on_line).unwrap();
        let mut conds: Vec<u8> = r.violations.iter().map(|v| v.condition).collect();
        conds.sort();
        assert_eq!(conds, vec![3, 4]);
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(rational_rotation(&rat(1, 2)), (rat(3, 5), rat(4, 5)));
        let c = Configuration::new(
            2,
            QuadField::RATIONALS,
            vec![Point::ints(&[0, 1]), Point::ints(&[0, -2]), Point::ints(&[3, 3])],
            vec![line(&[0, 1, 0]), line(&[1, 1, 1])],
        )
        .unwrap();
        let r = avoid_vertical(&c).unwrap();
        assert_ne!(r.t, Rational::zero());
        assert!(r.config.hyperplanes.iter().all(|h| !h.is_vertical()));
        let before = oriented_pattern(&c);
        let after = encode_configuration(&r.config).unwrap();
        assert_eq!(after, before.signed(&[Sign::Pos; 3], &r.flips));

        let plain = Configuration::new(2, QuadField::RATIONALS, vec![Point::ints(&[0, 1])], vec![line(&[0, 0, 1])]).unwrap();
        let r = avoid_vertical(&plain).unwrap();
        assert_eq!(r.t, Rational::zero());
        assert_eq!(r.config, plain);
    }

    #[test]
    fn translation_keeps_values() {
        let c = Configuration::new(2, QuadField::RATIONALS, vec![Point::ints(&[2, 5])], vec![line(&[1, -3, 1])]).unwrap();
        let v = vec![QuadElem::from_int(100), QuadElem::from_int(-7)];
        let t = translate(&c, &v).unwrap();
        assert_eq!(
            t.evaluate(&t.points[0], &t.hyperplanes[0]),
            c.evaluate(&c.points[0], &c.hyperplanes[0])
        );
        assert_eq!(translate(&c, &[QuadElem::zero(), QuadElem::zero()]).unwrap(), c);
        assert!(translate(&c, &[QuadElem::zero()]).is_err());
    }

    #[test]
    fn dual_examples() {
        let empty = Configuration::empty(2, QuadField::RATIONALS);
        let d = dualize(&empty).unwrap();
        assert!(d.config.points.is_empty() && d.config.hyperplanes.is_empty());

        let c = Configuration::new(2, QuadField::RATIONALS, vec![Point::ints(&[0, 2])], vec![]).unwrap();
        let d = dualize(&c).unwrap();
        let h = &d.config.hyperplanes[0];
        assert_eq!(h.coeffs, vec![QuadElem::from_int(-1), QuadElem::zero(), QuadElem::from_int(2)]);
        let origin = Point::ints(&[0, 0]);
        assert_eq!(side(&d.config.field, &origin, h).unwrap(), Sign::Neg);

        let bad = Configuration::new(2, QuadField::RATIONALS, vec![Point::ints(&[0, 0])], vec![]).unwrap();
        assert!(dualize(&bad).is_err());
        let through = Configuration::new(2, QuadField::RATIONALS, vec![], vec![line(&[0, 1, 1])]).unwrap();
        assert!(dualize(&through).is_err());
    }

    #[test]
    fn stack_two_parallel_configurations() {
        let c = Configuration::new(
            2,
            QuadField::RATIONALS,
            vec![Point::ints(&[0, 2]), Point::rational(&[int(0), rat(1, 2)])],
            vec![line(&[0, 0, 1]), line(&[-1, 0, 1])],
        )
        .unwrap();
        let a = encode_configuration(&c).unwrap();
        let s = stack(&c, &c).unwrap();
        assert_eq!(s.points.len(), 4);
        assert_eq!(s.hyperplanes.len(), 4);
        let p = encode_configuration(&s).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = match (i < 2, j < 2) {
                    (true, true) => a.get(i, j),
                    (false, false) => a.get(i - 2, j - 2),
                    (true, false) => Sign::Pos,
                    (false, true) => Sign::Neg,
                };
                assert_eq!(p.get(i, j), expect, "entry ({i}, {j})");
            }
        }
    }

    #[test]
    fn stack_pads_lower_dimension() {
        let line_cfg = Configuration::new(1, QuadField::RATIONALS, vec![Point::ints(&[1])], vec![line(&[-3, 1])]).unwrap();
        let plane = Configuration::new(2, QuadField::RATIONALS, vec![Point::ints(&[0, 1])], vec![line(&[0, 0, 1])]).unwrap();
        let s = stack(&line_cfg, &plane).unwrap();
        assert_eq!(s.dim, 2);
        assert_eq!(encode_configuration(&s).unwrap(), SignPattern::from_strs(&["-+", "-+"]));
    }

    #[test]
    fn incidence_examples() {
        let fig = SignPattern::from_strs(&["+++", "+00", "-0-"]);
        let inc = incidence_structure(&fig);
        assert_eq!(inc.points_on_line[1], vec![1, 2]);
        assert_eq!(inc.line_counts(), vec![0, 2, 1]);
        assert!(incidence_structure(&SignPattern::filled(2, 2, Sign::Pos)).pairs.is_empty());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"dim": 2, "sqrt": 5, "points": [[1, {"r": "1/2", "s": "1/2"}]], "hyperplanes": [["-3/4", 0, 1]]}"#;
        let c = Configuration::from_json(text).unwrap();
        assert_eq!(c.field.d(), 5);
        assert_eq!(Configuration::from_json(&c.to_json()).unwrap(), c);
        assert!(matches!(Configuration::from_json("{\"dim\": 2,"), Err(Error::Parse { .. })));
        assert!(Configuration::from_json(r#"{"dim": 2, "points": [[1]]}"#).is_err());
        assert!(Configuration::from_json(r#"{"dim": 2, "points": [[1, {"r": 0, "s": 1}]]}"#).is_err());
    }
}
