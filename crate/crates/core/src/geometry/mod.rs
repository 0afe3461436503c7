//! Exact geometric objects over arbitrary-precision rationals.
//!
//! All predicates compare squared distances or orientation signs, so no
//! irrational number is ever materialized. The unit grid has cell side 1 and
//! every anchored object is required to contain the closed disk of radius
//! √2/2 about its anchor ((√2/2)² = 1/2, so the check stays rational).

mod intersect;
mod scene_io;
mod svg;

pub use intersect::intersects;
pub use scene_io::{parse_scene, scene_to_text, SceneParseError};
pub use svg::render_svg;

use crate::graph::Graph;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn of(x: i64, y: i64) -> Self {
        Point::new(rint(x), rint(y))
    }
}

pub fn dist2(p: &Point, q: &Point) -> Rat {
    let dx = &p.x - &q.x;
    let dy = &p.y - &q.y;
    &dx * &dx + &dy * &dy
}

/// Twice the signed area of (a, b, c); positive when the turn is left (CCW).
pub fn orient(a: &Point, b: &Point, c: &Point) -> Rat {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Disk { center: Point, radius: Rat },
    Segment { p: Point, q: Point },
    Triangle { a: Point, b: Point, c: Point },
    ConvexPolygon { vertices: Vec<Point> },
    Polyline { points: Vec<Point> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeoObject {
    pub shape: Shape,
    pub anchor: Option<Point>,
}

#[derive(Debug, Error)]
pub enum ShapeError {
    #[error("disk radius must be positive")]
    BadRadius,
    #[error("triangle vertices are collinear")]
    Collinear,
    #[error("polygon must be strictly convex and counterclockwise")]
    NotConvex,
    #[error("polyline needs at least 2 points")]
    ShortPolyline,
}

impl Shape {
    pub fn well_formed(&self) -> Result<(), ShapeError> {
        match self {
            Shape::Disk { radius, .. } => {
                if radius.is_positive() {
                    Ok(())
                } else {
                    Err(ShapeError::BadRadius)
                }
            }
            Shape::Segment { .. } => Ok(()),
            Shape::Triangle { a, b, c } => {
                if orient(a, b, c).is_zero() {
                    Err(ShapeError::Collinear)
                } else {
                    Ok(())
                }
            }
            Shape::ConvexPolygon { vertices } => {
                if vertices.len() < 3 {
                    return Err(ShapeError::NotConvex);
                }
                let n = vertices.len();
                for i in 0..n {
                    let o = orient(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
                    if !o.is_positive() {
                        return Err(ShapeError::NotConvex);
                    }
                }
                Ok(())
            }
            Shape::Polyline { points } => {
                if points.len() < 2 {
                    Err(ShapeError::ShortPolyline)
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Counterclockwise vertex list for shapes with polygonal area.
    pub(crate) fn polygon_vertices(&self) -> Option<Vec<Point>> {
        match self {
            Shape::Triangle { a, b, c } => {
                if orient(a, b, c).is_positive() {
                    Some(vec![a.clone(), b.clone(), c.clone()])
                } else {
                    Some(vec![a.clone(), c.clone(), b.clone()])
                }
            }
            Shape::ConvexPolygon { vertices } => Some(vertices.clone()),
            _ => None,
        }
    }

    /// Segment decomposition for curve-like shapes.
    pub(crate) fn curve_segments(&self) -> Option<Vec<(Point, Point)>> {
        match self {
            Shape::Segment { p, q } => Some(vec![(p.clone(), q.clone())]),
            Shape::Polyline { points } => Some(
                points
                    .windows(2)
                    .map(|w| (w[0].clone(), w[1].clone()))
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Exact axis-aligned extent (xmin, xmax, ymin, ymax).
    pub fn extent(&self) -> (Rat, Rat, Rat, Rat) {
        match self {
            Shape::Disk { center, radius } => (
                &center.x - radius,
                &center.x + radius,
                &center.y - radius,
                &center.y + radius,
            ),
            _ => {
                let pts: Vec<Point> = match self {
                    Shape::Segment { p, q } => vec![p.clone(), q.clone()],
                    Shape::Triangle { a, b, c } => vec![a.clone(), b.clone(), c.clone()],
                    Shape::ConvexPolygon { vertices } => vertices.clone(),
                    Shape::Polyline { points } => points.clone(),
                    Shape::Disk { .. } => unreachable!(),
                };
                let mut xmin = pts[0].x.clone();
                let mut xmax = pts[0].x.clone();
                let mut ymin = pts[0].y.clone();
                let mut ymax = pts[0].y.clone();
                for p in &pts[1..] {
                    if p.x < xmin {
                        xmin = p.x.clone();
                    }
                    if p.x > xmax {
                        xmax = p.x.clone();
                    }
                    if p.y < ymin {
                        ymin = p.y.clone();
                    }
                    if p.y > ymax {
                        ymax = p.y.clone();
                    }
                }
                (xmin, xmax, ymin, ymax)
            }
        }
    }

    /// Squared diameter (max pairwise point distance; disks use 2r exactly).
    pub fn diam2(&self) -> Rat {
        match self {
            Shape::Disk { radius, .. } => {
                let d = radius + radius;
                &d * &d
            }
            _ => {
                let pts: Vec<Point> = match self {
                    Shape::Segment { p, q } => vec![p.clone(), q.clone()],
                    Shape::Triangle { a, b, c } => vec![a.clone(), b.clone(), c.clone()],
                    Shape::ConvexPolygon { vertices } => vertices.clone(),
                    Shape::Polyline { points } => points.clone(),
                    Shape::Disk { .. } => unreachable!(),
                };
                let mut best = Rat::zero();
                for i in 0..pts.len() {
                    for j in i + 1..pts.len() {
                        let d = dist2(&pts[i], &pts[j]);
                        if d > best {
                            best = d;
                        }
                    }
                }
                best
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scene {
    pub objects: Vec<GeoObject>,
}

impl Scene {
    pub fn new(objects: Vec<GeoObject>) -> Self {
        Scene { objects }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }
}

/// Axis-aligned rectangle of unit cells; cell (c, r) covers [c, c+1] x [r, r+1].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridRect {
    pub col_lo: i64,
    pub col_hi: i64,
    pub row_lo: i64,
    pub row_hi: i64,
}

impl GridRect {
    pub fn cols(&self) -> i64 {
        self.col_hi - self.col_lo + 1
    }

    pub fn rows(&self) -> i64 {
        self.row_hi - self.row_lo + 1
    }

    pub fn area(&self) -> i64 {
        self.cols() * self.rows()
    }

    fn join(self, other: GridRect) -> GridRect {
        GridRect {
            col_lo: self.col_lo.min(other.col_lo),
            col_hi: self.col_hi.max(other.col_hi),
            row_lo: self.row_lo.min(other.row_lo),
            row_hi: self.row_hi.max(other.row_hi),
        }
    }
}

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("empty object set")]
    Empty,
    #[error("object {0} has no anchor")]
    Unanchored(usize),
    #[error("object {0} fails the inscribed-disk check")]
    NotFat(usize),
}

fn rat_floor_i64(x: &Rat) -> i64 {
    use num_traits::ToPrimitive;
    x.floor().to_integer().to_i64().expect("coordinate overflow")
}

fn rat_ceil_i64(x: &Rat) -> i64 {
    use num_traits::ToPrimitive;
    x.ceil().to_integer().to_i64().expect("coordinate overflow")
}

/// Minimal grid rectangle containing one object.
pub fn object_grid_rect(o: &GeoObject) -> GridRect {
    let (xmin, xmax, ymin, ymax) = o.shape.extent();
    let col_lo = rat_floor_i64(&xmin);
    let col_hi = (rat_ceil_i64(&xmax) - 1).max(col_lo);
    let row_lo = rat_floor_i64(&ymin);
    let row_hi = (rat_ceil_i64(&ymax) - 1).max(row_lo);
    GridRect {
        col_lo,
        col_hi,
        row_lo,
        row_hi,
    }
}

/// Minimal grid rectangle covering all of `objects`; rejects the empty set.
pub fn bounding_box(objects: &[&GeoObject]) -> Result<GridRect, GeomError> {
    let mut it = objects.iter();
    let first = it.next().ok_or(GeomError::Empty)?;
    let mut bb = object_grid_rect(first);
    for o in it {
        bb = bb.join(object_grid_rect(o));
    }
    Ok(bb)
}

/// Area of the bounding box, in cells.
pub fn area(objects: &[&GeoObject]) -> Result<i64, GeomError> {
    Ok(bounding_box(objects)?.area())
}

/// Intersection graph on object indices: edge iff closed sets intersect.
pub fn intersection_graph(scene: &Scene) -> Graph {
    let n = scene.len();
    let mut g = Graph::new(n);
    // grid buckets by bounding rectangle prune the all-pairs loop; the
    // predicate itself decides every surviving pair, so output is identical
    // to the naive loop.
    let rects: Vec<GridRect> = scene.objects.iter().map(object_grid_rect).collect();
    for i in 0..n {
        for j in i + 1..n {
            let ri = &rects[i];
            let rj = &rects[j];
            if ri.col_hi < rj.col_lo
                || rj.col_hi < ri.col_lo
                || ri.row_hi < rj.row_lo
                || rj.row_hi < ri.row_lo
            {
                continue;
            }
            if intersects(&scene.objects[i], &scene.objects[j]) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Plain all-pairs intersection graph, used to cross-check the pruned loop.
pub fn intersection_graph_naive(scene: &Scene) -> Graph {
    let n = scene.len();
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if intersects(&scene.objects[i], &scene.objects[j]) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatCheck {
    pub anchored: bool,
    pub inscribed_ok: bool,
    pub bounded_ok: bool,
}

impl FatCheck {
    pub fn pass(&self) -> bool {
        self.anchored && self.inscribed_ok && self.bounded_ok
    }
}

#[derive(Clone, Debug)]
pub struct FatReport {
    pub checks: Vec<FatCheck>,
    pub r_max: Rat,
}

impl FatReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(FatCheck::pass)
    }
}

/// Does the object contain the closed disk of radius √2/2 about `a`?
fn contains_inscribed_disk(shape: &Shape, a: &Point) -> bool {
    let half = rat(1, 2); // (√2/2)²
    match shape {
        Shape::Disk { center, radius } => {
            // |a-c| + √(1/2) <= r  ⟺  r² >= 1/2 ∧ B >= 0 ∧ B² >= 2r², B = r² + 1/2 - |a-c|²
            let r2 = radius * radius;
            if r2 < half {
                return false;
            }
            let b = &r2 + &half - dist2(a, center);
            if b.is_negative() {
                return false;
            }
            &b * &b >= rint(2) * &r2
        }
        Shape::Triangle { .. } | Shape::ConvexPolygon { .. } => {
            let vs = shape.polygon_vertices().unwrap();
            if !intersect::point_in_convex(a, &vs) {
                return false;
            }
            let n = vs.len();
            for i in 0..n {
                let p = &vs[i];
                let q = &vs[(i + 1) % n];
                // squared distance from a to the edge line: cross² / |pq|²
                let cross = orient(p, q, a);
                let len2 = dist2(p, q);
                if &cross * &cross < &half * &len2 {
                    return false;
                }
            }
            true
        }
        Shape::Segment { .. } | Shape::Polyline { .. } => false,
    }
}

/// Is the object contained in the closed disk of radius `r_max` about `a`?
fn within_outer_disk(shape: &Shape, a: &Point, r_max: &Rat) -> bool {
    match shape {
        Shape::Disk { center, radius } => {
            if r_max < radius {
                return false;
            }
            let slack = r_max - radius;
            dist2(a, center) <= &slack * &slack
        }
        _ => {
            let r2 = r_max * r_max;
            let pts: Vec<Point> = match shape {
                Shape::Segment { p, q } => vec![p.clone(), q.clone()],
                Shape::Triangle { a: x, b, c } => vec![x.clone(), b.clone(), c.clone()],
                Shape::ConvexPolygon { vertices } => vertices.clone(),
                Shape::Polyline { points } => points.clone(),
                Shape::Disk { .. } => unreachable!(),
            };
            pts.iter().all(|p| dist2(p, a) <= r2)
        }
    }
}

/// Per-object fat / similarly-sized report: anchor present, inscribed √2/2-disk
/// contained, object within `r_max` of its anchor.
pub fn validate_fat_similarly_sized(scene: &Scene, r_max: &Rat) -> FatReport {
    let checks = scene
        .objects
        .iter()
        .map(|o| match &o.anchor {
            None => FatCheck {
                anchored: false,
                inscribed_ok: false,
                bounded_ok: false,
            },
            Some(a) => FatCheck {
                anchored: true,
                inscribed_ok: contains_inscribed_disk(&o.shape, a),
                bounded_ok: within_outer_disk(&o.shape, a, r_max),
            },
        })
        .collect();
    FatReport {
        checks,
        r_max: r_max.clone(),
    }
}

/// Cell of an anchor point; boundary anchors go to the floor cell.
pub fn anchor_cell(a: &Point) -> (i64, i64) {
    (rat_floor_i64(&a.x), rat_floor_i64(&a.y))
}

/// Partition object indices by anchor cell. Each part induces a clique in the
/// intersection graph because two √2/2-disks anchored in one unit cell meet.
pub fn cell_cliques(scene: &Scene) -> Result<Vec<((i64, i64), Vec<usize>)>, GeomError> {
    let mut map: std::collections::BTreeMap<(i64, i64), Vec<usize>> =
        std::collections::BTreeMap::new();
    for (i, o) in scene.objects.iter().enumerate() {
        let a = o.anchor.as_ref().ok_or(GeomError::Unanchored(i))?;
        if !contains_inscribed_disk(&o.shape, a) {
            return Err(GeomError::NotFat(i));
        }
        map.entry(anchor_cell(a)).or_default().push(i);
    }
    Ok(map.into_iter().collect())
}

/// Cell cliques restricted to a subset of object indices.
pub fn cell_cliques_of(
    scene: &Scene,
    subset: &[usize],
) -> Result<Vec<((i64, i64), Vec<usize>)>, GeomError> {
    let mut map: std::collections::BTreeMap<(i64, i64), Vec<usize>> =
        std::collections::BTreeMap::new();
    for &i in subset {
        let o = &scene.objects[i];
        let a = o.anchor.as_ref().ok_or(GeomError::Unanchored(i))?;
        if !contains_inscribed_disk(&o.shape, a) {
            return Err(GeomError::NotFat(i));
        }
        map.entry(anchor_cell(a)).or_default().push(i);
    }
    Ok(map.into_iter().collect())
}

/// Does the convex hull of the object meet the vertical line x = `line`
/// (axis = V) or horizontal line y = `line` (axis = H)? Exact via extents.
pub fn hull_crosses_line(o: &GeoObject, axis: Axis, line: i64) -> bool {
    let (xmin, xmax, ymin, ymax) = o.shape.extent();
    let l = rint(line);
    match axis {
        Axis::Vertical => xmin <= l && l <= xmax,
        Axis::Horizontal => ymin <= l && l <= ymax,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axis {
    Vertical,
    Horizontal,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk(x: i64, y: i64, r: i64) -> GeoObject {
        GeoObject {
            shape: Shape::Disk {
                center: Point::of(x, y),
                radius: rint(r),
            },
            anchor: None,
        }
    }

    #[test]
    fn tangent_disks_intersect() {
        assert!(intersects(&disk(0, 0, 1), &disk(2, 0, 1)));
        let far = GeoObject {
            shape: Shape::Disk {
                center: Point::new(rat(5, 2), rint(0)),
                radius: rint(1),
            },
            anchor: None,
        };
        assert!(!intersects(&disk(0, 0, 1), &far));
    }

    #[test]
    fn triangle_shared_vertex_intersects() {
        let t1 = GeoObject {
            shape: Shape::Triangle {
                a: Point::of(0, 0),
                b: Point::of(2, 0),
                c: Point::of(0, 2),
            },
            anchor: None,
        };
        let t2 = GeoObject {
            shape: Shape::Triangle {
                a: Point::of(0, 0),
                b: Point::of(-2, 0),
                c: Point::of(0, -2),
            },
            anchor: None,
        };
        assert!(intersects(&t1, &t2));
    }

    #[test]
    fn pairwise_tangent_triple_is_k3() {
        let s = Scene::new(vec![disk(0, 0, 1), disk(2, 0, 1), disk(1, 2, 1)]);
        // first two tangent; third chosen to overlap both
        let g = intersection_graph(&s);
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(0, 2) == intersects(&s.objects[0], &s.objects[2]));
        let naive = intersection_graph_naive(&s);
        assert_eq!(g, naive);
    }

    #[test]
    fn spaced_disks_are_edgeless() {
        let s = Scene::new((0..10).map(|i| disk(3 * i, 0, 1)).collect());
        assert_eq!(intersection_graph(&s).edge_count(), 0);
    }

    #[test]
    fn bounding_box_examples() {
        // disk((1/2,1/2), 1/2): the unit cell
        let d = GeoObject {
            shape: Shape::Disk {
                center: Point::new(rat(1, 2), rat(1, 2)),
                radius: rat(1, 2),
            },
            anchor: None,
        };
        let bb = bounding_box(&[&d]).unwrap();
        assert_eq!((bb.cols(), bb.rows(), bb.area()), (1, 1, 1));

        // disk((1,1),1): spans cells [0,2)x[0,2), area 4
        let d = disk(1, 1, 1);
        let bb = bounding_box(&[&d]).unwrap();
        assert_eq!(bb.area(), 4);

        assert!(matches!(bounding_box(&[]), Err(GeomError::Empty)));
    }

    #[test]
    fn fat_validation_examples() {
        // unit disk anchored at its center passes with R_max = 1
        let d = GeoObject {
            shape: Shape::Disk {
                center: Point::of(0, 0),
                radius: rint(1),
            },
            anchor: Some(Point::of(0, 0)),
        };
        let rep = validate_fat_similarly_sized(&Scene::new(vec![d]), &rint(1));
        assert!(rep.pass());

        // a segment has no interior: inscribed check fails
        let seg = GeoObject {
            shape: Shape::Segment {
                p: Point::of(0, 0),
                q: Point::of(5, 0),
            },
            anchor: Some(Point::of(2, 0)),
        };
        let rep = validate_fat_similarly_sized(&Scene::new(vec![seg]), &rint(10));
        assert!(!rep.checks[0].inscribed_ok);

        // equilateral-ish triangle side 4 about its centroid: inradius > √2/2,
        // circumradius < 3 (exact check with rational vertices)
        let tri = GeoObject {
            shape: Shape::Triangle {
                a: Point::of(-2, 0),
                b: Point::of(2, 0),
                c: Point::new(rint(0), rat(3464, 1000)),
            },
            anchor: Some(Point::new(rint(0), rat(1155, 1000))),
        };
        let rep = validate_fat_similarly_sized(&Scene::new(vec![tri]), &rint(3));
        assert!(rep.pass(), "{:?}", rep.checks);
    }

    #[test]
    fn cell_clique_grouping() {
        let mk = |cx: Rat, cy: Rat| GeoObject {
            shape: Shape::Disk {
                center: Point::new(cx.clone(), cy.clone()),
                radius: rint(1),
            },
            anchor: Some(Point::new(cx, cy)),
        };
        let s = Scene::new(vec![
            mk(rat(1, 4), rat(1, 4)),
            mk(rat(3, 4), rat(3, 4)),
            mk(rat(3, 2), rat(1, 2)),
        ]);
        let parts = cell_cliques(&s).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].1, vec![0, 1]);
        assert!(intersects(&s.objects[0], &s.objects[1]));
    }

    #[test]
    fn unanchored_rejected() {
        let s = Scene::new(vec![disk(0, 0, 1)]);
        assert!(matches!(cell_cliques(&s), Err(GeomError::Unanchored(0))));
    }

    #[test]
    fn scaling_invariance_of_intersection() {
        let objs = vec![disk(0, 0, 2), disk(3, 1, 1), disk(10, 0, 1)];
        let scale = rat(7, 3);
        let scaled: Vec<GeoObject> = objs
            .iter()
            .map(|o| match &o.shape {
                Shape::Disk { center, radius } => GeoObject {
                    shape: Shape::Disk {
                        center: Point::new(&center.x * &scale, &center.y * &scale),
                        radius: radius * &scale,
                    },
                    anchor: None,
                },
                _ => unreachable!(),
            })
            .collect();
        let g1 = intersection_graph(&Scene::new(objs));
        let g2 = intersection_graph(&Scene::new(scaled));
        assert_eq!(g1, g2);
    }
}
