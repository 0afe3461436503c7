//! Exact closed-set intersection predicates. Tangency counts as intersection.

use super::{dist2, orient, GeoObject, Point, Rat, Shape};
use num_traits::{Signed, Zero};

/// Closed-set intersection test for any pair of shape kinds.
pub fn intersects(o1: &GeoObject, o2: &GeoObject) -> bool {
    shape_intersects(&o1.shape, &o2.shape)
}

fn shape_intersects(s1: &Shape, s2: &Shape) -> bool {
    use ShapeClass::*;
    match (classify(s1), classify(s2)) {
        (Disk, Disk) => disk_disk(s1, s2),
        (Disk, Convex) => disk_convex(s1, s2),
        (Convex, Disk) => disk_convex(s2, s1),
        (Disk, Curve) => disk_curve(s1, s2),
        (Curve, Disk) => disk_curve(s2, s1),
        (Convex, Convex) => convex_convex(s1, s2),
        (Convex, Curve) => convex_curve(s1, s2),
        (Curve, Convex) => convex_curve(s2, s1),
        (Curve, Curve) => curve_curve(s1, s2),
    }
}

enum ShapeClass {
    Disk,
    Convex,
    Curve,
}

fn classify(s: &Shape) -> ShapeClass {
    match s {
        Shape::Disk { .. } => ShapeClass::Disk,
        Shape::Triangle { .. } | Shape::ConvexPolygon { .. } => ShapeClass::Convex,
        Shape::Segment { .. } | Shape::Polyline { .. } => ShapeClass::Curve,
    }
}

fn disk_params(s: &Shape) -> (&Point, &Rat) {
    match s {
        Shape::Disk { center, radius } => (center, radius),
        _ => unreachable!(),
    }
}

fn disk_disk(s1: &Shape, s2: &Shape) -> bool {
    let (c1, r1) = disk_params(s1);
    let (c2, r2) = disk_params(s2);
    let sum = r1 + r2;
    dist2(c1, c2) <= &sum * &sum
}

fn disk_convex(d: &Shape, c: &Shape) -> bool {
    let (center, radius) = disk_params(d);
    let vs = c.polygon_vertices().unwrap();
    dist2_point_to_convex(center, &vs) <= radius * radius
}

fn disk_curve(d: &Shape, c: &Shape) -> bool {
    let (center, radius) = disk_params(d);
    let r2 = radius * radius;
    c.curve_segments()
        .unwrap()
        .iter()
        .any(|(p, q)| dist2_point_to_segment(center, p, q) <= r2)
}

fn convex_convex(s1: &Shape, s2: &Shape) -> bool {
    let a = s1.polygon_vertices().unwrap();
    let b = s2.polygon_vertices().unwrap();
    if a.iter().any(|p| point_in_convex(p, &b)) || b.iter().any(|p| point_in_convex(p, &a)) {
        return true;
    }
    edges(&a).iter().any(|(p1, q1)| {
        edges(&b)
            .iter()
            .any(|(p2, q2)| segments_intersect(p1, q1, p2, q2))
    })
}

fn convex_curve(poly: &Shape, curve: &Shape) -> bool {
    let vs = poly.polygon_vertices().unwrap();
    let polyedges = edges(&vs);
    for (p, q) in curve.curve_segments().unwrap() {
        if point_in_convex(&p, &vs) || point_in_convex(&q, &vs) {
            return true;
        }
        if polyedges
            .iter()
            .any(|(a, b)| segments_intersect(&p, &q, a, b))
        {
            return true;
        }
    }
    false
}

fn curve_curve(c1: &Shape, c2: &Shape) -> bool {
    let s1 = c1.curve_segments().unwrap();
    let s2 = c2.curve_segments().unwrap();
    s1.iter()
        .any(|(p, q)| s2.iter().any(|(a, b)| segments_intersect(p, q, a, b)))
}

fn edges(vs: &[Point]) -> Vec<(Point, Point)> {
    let n = vs.len();
    (0..n)
        .map(|i| (vs[i].clone(), vs[(i + 1) % n].clone()))
        .collect()
}

/// Point containment in a CCW convex polygon, boundary inclusive.
pub(crate) fn point_in_convex(p: &Point, vs: &[Point]) -> bool {
    let n = vs.len();
    (0..n).all(|i| !orient(&vs[i], &vs[(i + 1) % n], p).is_negative())
}

fn on_segment_collinear(p: &Point, a: &Point, b: &Point) -> bool {
    // assumes p collinear with ab
    let (lo_x, hi_x) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (lo_y, hi_y) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    lo_x <= &p.x && &p.x <= hi_x && lo_y <= &p.y && &p.y <= hi_y
}

/// Closed segment intersection via orientation signs with collinear fallback.
pub(crate) fn segments_intersect(p1: &Point, q1: &Point, p2: &Point, q2: &Point) -> bool {
    let d1 = orient(p2, q2, p1);
    let d2 = orient(p2, q2, q1);
    let d3 = orient(p1, q1, p2);
    let d4 = orient(p1, q1, q2);
    let opp = |a: &Rat, b: &Rat| {
        (a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive())
    };
    if opp(&d1, &d2) && opp(&d3, &d4) {
        return true;
    }
    (d1.is_zero() && on_segment_collinear(p1, p2, q2))
        || (d2.is_zero() && on_segment_collinear(q1, p2, q2))
        || (d3.is_zero() && on_segment_collinear(p2, p1, q1))
        || (d4.is_zero() && on_segment_collinear(q2, p1, q1))
}

/// Squared distance from a point to a closed segment, exact.
pub(crate) fn dist2_point_to_segment(p: &Point, a: &Point, b: &Point) -> Rat {
    let ab2 = dist2(a, b);
    if ab2.is_zero() {
        return dist2(p, a);
    }
    // t = ((p-a)·(b-a)) / |ab|², clamped to [0,1]
    let t = ((&p.x - &a.x) * (&b.x - &a.x) + (&p.y - &a.y) * (&b.y - &a.y)) / &ab2;
    let t = if t.is_negative() {
        Rat::zero()
    } else if t > Rat::from_integer(1.into()) {
        Rat::from_integer(1.into())
    } else {
        t
    };
    let proj = Point::new(&a.x + &t * (&b.x - &a.x), &a.y + &t * (&b.y - &a.y));
    dist2(p, &proj)
}

/// Squared distance from a point to a convex polygon (0 when inside).
pub(crate) fn dist2_point_to_convex(p: &Point, vs: &[Point]) -> Rat {
    if point_in_convex(p, vs) {
        return Rat::zero();
    }
    let n = vs.len();
    (0..n)
        .map(|i| dist2_point_to_segment(p, &vs[i], &vs[(i + 1) % n]))
        .min()
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rint};
    use super::*;

    fn pt(x: i64, y: i64) -> Point {
        Point::of(x, y)
    }

    #[test]
    fn segment_predicates() {
        assert!(segments_intersect(&pt(0, 0), &pt(2, 2), &pt(0, 2), &pt(2, 0)));
        assert!(!segments_intersect(&pt(0, 0), &pt(1, 0), &pt(0, 1), &pt(1, 1)));
        // collinear overlap and endpoint touch
        assert!(segments_intersect(&pt(0, 0), &pt(2, 0), &pt(1, 0), &pt(3, 0)));
        assert!(segments_intersect(&pt(0, 0), &pt(1, 0), &pt(1, 0), &pt(2, 5)));
    }

    #[test]
    fn point_segment_distance() {
        let d = dist2_point_to_segment(&pt(0, 1), &pt(-1, 0), &pt(1, 0));
        assert_eq!(d, rint(1));
        let d = dist2_point_to_segment(&pt(3, 4), &pt(0, 0), &pt(1, 0));
        assert_eq!(d, rint(4 + 16));
    }

    #[test]
    fn disk_touching_triangle_corner() {
        let d = Shape::Disk {
            center: pt(3, 0),
            radius: rint(1),
        };
        let t = Shape::Triangle {
            a: pt(2, 0),
            b: pt(0, 1),
            c: pt(0, -1),
        };
        assert!(shape_intersects(&d, &t));
        let d_far = Shape::Disk {
            center: Point::new(rat(31, 10), rint(0)),
            radius: rint(1),
        };
        assert!(!shape_intersects(&d_far, &t));
    }

    #[test]
    fn nested_polygons_intersect() {
        let outer = Shape::ConvexPolygon {
            vertices: vec![pt(-5, -5), pt(5, -5), pt(5, 5), pt(-5, 5)],
        };
        let inner = Shape::Triangle {
            a: pt(-1, -1),
            b: pt(1, -1),
            c: pt(0, 1),
        };
        assert!(shape_intersects(&outer, &inner));
    }

    #[test]
    fn polyline_through_polygon() {
        let pl = Shape::Polyline {
            points: vec![pt(-10, 0), pt(10, 0)],
        };
        let t = Shape::Triangle {
            a: pt(-1, -1),
            b: pt(1, -1),
            c: pt(0, 2),
        };
        assert!(shape_intersects(&pl, &t));
        let pl_miss = Shape::Polyline {
            points: vec![pt(-10, 5), pt(10, 5)],
        };
        assert!(!shape_intersects(&pl_miss, &t));
    }
}
