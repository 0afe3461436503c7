//! Scene text format: one object per line.
//!
//! ```text
//! disk x y r [anchor ax ay]
//! seg x1 y1 x2 y2
//! tri x1 y1 x2 y2 x3 y3 [anchor ax ay]
//! poly k x1 y1 ... xk yk [anchor ax ay]
//! pline k x1 y1 ... xk yk
//! ```
//!
//! Numbers are decimal (`-1.25`) or rationals (`p/q`).

use super::{GeoObject, Point, Rat, Scene, Shape};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SceneParseError {
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error("bad number `{0}`")]
    Number(String),
}

pub fn parse_rat(tok: &str) -> Result<Rat, SceneParseError> {
    let bad = || SceneParseError::Number(tok.to_string());
    if let Some((p, q)) = tok.split_once('/') {
        let num = BigInt::from_str(p).map_err(|_| bad())?;
        let den = BigInt::from_str(q).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int, frac)) = tok.split_once('.') {
        let neg = int.starts_with('-');
        let int_part = BigInt::from_str(if int.is_empty() || int == "-" { "0" } else { int })
            .map_err(|_| bad())?;
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let frac_num = BigInt::from_str(frac).map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_rat = Rat::new(frac_num, den);
        let int_rat = Rat::from_integer(int_part);
        return Ok(if neg { int_rat - frac_rat } else { int_rat + frac_rat });
    }
    let n = BigInt::from_str(tok).map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn take_point(toks: &mut std::slice::Iter<'_, &str>) -> Result<Point, SceneParseError> {
    let x = toks
        .next()
        .ok_or_else(|| SceneParseError::Number("<missing>".into()))?;
    let y = toks
        .next()
        .ok_or_else(|| SceneParseError::Number("<missing>".into()))?;
    Ok(Point::new(parse_rat(x)?, parse_rat(y)?))
}

fn take_anchor(toks: &mut std::slice::Iter<'_, &str>) -> Result<Option<Point>, SceneParseError> {
    match toks.next() {
        None => Ok(None),
        Some(&"anchor") => Ok(Some(take_point(toks)?)),
        Some(t) => Err(SceneParseError::Number(t.to_string())),
    }
}

pub fn parse_scene(text: &str) -> Result<Scene, SceneParseError> {
    let mut objects = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let mut it = toks[1..].iter();
        let err = |m: &str| SceneParseError::Line(lineno + 1, m.to_string());
        let obj = match toks[0] {
            "disk" => {
                let center = take_point(&mut it).map_err(|e| err(&e.to_string()))?;
                let r = parse_rat(it.next().ok_or_else(|| err("missing radius"))?)
                    .map_err(|e| err(&e.to_string()))?;
                if !r.is_positive() {
                    return Err(err("radius must be positive"));
                }
                let anchor = take_anchor(&mut it).map_err(|e| err(&e.to_string()))?;
                GeoObject {
                    shape: Shape::Disk { center, radius: r },
                    anchor,
                }
            }
            "seg" => {
                let p = take_point(&mut it).map_err(|e| err(&e.to_string()))?;
                let q = take_point(&mut it).map_err(|e| err(&e.to_string()))?;
                GeoObject {
                    shape: Shape::Segment { p, q },
                    anchor: take_anchor(&mut it).map_err(|e| err(&e.to_string()))?,
                }
            }
            "tri" => {
                let a = take_point(&mut it).map_err(|e| err(&e.to_string()))?;
                let b = take_point(&mut it).map_err(|e| err(&e.to_string()))?;
                let c = take_point(&mut it).map_err(|e| err(&e.to_string()))?;
                let shape = Shape::Triangle { a, b, c };
                shape.well_formed().map_err(|e| err(&e.to_string()))?;
                GeoObject {
                    shape,
                    anchor: take_anchor(&mut it).map_err(|e| err(&e.to_string()))?,
                }
            }
            "poly" | "pline" => {
                let k: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err("missing point count"))?;
                let mut pts = Vec::with_capacity(k);
                for _ in 0..k {
                    pts.push(take_point(&mut it).map_err(|e| err(&e.to_string()))?);
                }
                if toks[0] == "poly" {
                    let shape = Shape::ConvexPolygon { vertices: pts };
                    shape.well_formed().map_err(|e| err(&e.to_string()))?;
                    GeoObject {
                        shape,
                        anchor: take_anchor(&mut it).map_err(|e| err(&e.to_string()))?,
                    }
                } else {
                    let shape = Shape::Polyline { points: pts };
                    shape.well_formed().map_err(|e| err(&e.to_string()))?;
                    GeoObject {
                        shape,
                        anchor: None,
                    }
                }
            }
            other => return Err(err(&format!("unknown object kind `{other}`"))),
        };
        if it.next().is_some() {
            return Err(err("trailing tokens"));
        }
        objects.push(obj);
    }
    Ok(Scene::new(objects))
}

pub fn scene_to_text(scene: &Scene) -> String {
    let mut out = String::new();
    for o in &scene.objects {
        let anchor_suffix = match &o.anchor {
            Some(a) => format!(" anchor {} {}", format_rat(&a.x), format_rat(&a.y)),
            None => String::new(),
        };
        match &o.shape {
            Shape::Disk { center, radius } => {
                out.push_str(&format!(
                    "disk {} {} {}{}\n",
                    format_rat(&center.x),
                    format_rat(&center.y),
                    format_rat(radius),
                    anchor_suffix
                ));
            }
            Shape::Segment { p, q } => {
                out.push_str(&format!(
                    "seg {} {} {} {}\n",
                    format_rat(&p.x),
                    format_rat(&p.y),
                    format_rat(&q.x),
                    format_rat(&q.y)
                ));
            }
            Shape::Triangle { a, b, c } => {
                out.push_str(&format!(
                    "tri {} {} {} {} {} {}{}\n",
                    format_rat(&a.x),
                    format_rat(&a.y),
                    format_rat(&b.x),
                    format_rat(&b.y),
                    format_rat(&c.x),
                    format_rat(&c.y),
                    anchor_suffix
                ));
            }
            Shape::ConvexPolygon { vertices } => {
                out.push_str(&format!("poly {}", vertices.len()));
                for p in vertices {
                    out.push_str(&format!(" {} {}", format_rat(&p.x), format_rat(&p.y)));
                }
                out.push_str(&anchor_suffix);
                out.push('\n');
            }
            Shape::Polyline { points } => {
                out.push_str(&format!("pline {}", points.len()));
                for p in points {
                    out.push_str(&format!(" {} {}", format_rat(&p.x), format_rat(&p.y)));
                }
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_forms() {
        assert_eq!(parse_rat("3").unwrap(), Rat::from_integer(3.into()));
        assert_eq!(parse_rat("-1.25").unwrap(), Rat::new((-5).into(), 4.into()));
        assert_eq!(parse_rat("7/2").unwrap(), Rat::new(7.into(), 2.into()));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn roundtrip() {
        let text = "disk 0 0 1 anchor 0 0\nseg 0 0 1 1\ntri 0 0 4 0 2 3 anchor 2 1\npline 3 0 0 1 0 1 1\n";
        let s = parse_scene(text).unwrap();
        assert_eq!(s.len(), 4);
        let out = scene_to_text(&s);
        let s2 = parse_scene(&out).unwrap();
        assert_eq!(s, s2);
        assert_eq!(out, scene_to_text(&s2));
    }

    #[test]
    fn decimal_normalizes() {
        let s = parse_scene("disk 0.5 0.5 0.5\n").unwrap();
        match &s.objects[0].shape {
            Shape::Disk { center, .. } => assert_eq!(center.x, Rat::new(1.into(), 2.into())),
            _ => panic!(),
        }
    }
}
