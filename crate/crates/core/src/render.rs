//! SVG drawings of the affine image of a configuration.
//!
//! Coordinates stay rational until the very end: pixel positions and clipped
//! line endpoints are computed exactly and then printed with six decimals,
//! rounding half to even. Output is therefore byte-stable.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::chirotope::signs_of;
use crate::configuration::{affine_image, AffinePosition, Configuration};
use crate::exact::{cross, int, rat, Rational, Vec3};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("viewport is degenerate or contains no finite point")]
    EmptyViewport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InfinityStyle {
    #[default]
    Arrow,
    Omit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub x_min: Rational,
    pub x_max: Rational,
    pub y_min: Rational,
    pub y_max: Rational,
    pub width: u32,
    pub height: u32,
    pub draw_lines: bool,
    pub label_points: bool,
    pub infinity_style: InfinityStyle,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            x_min: rat(-1, 4),
            x_max: rat(3, 2),
            y_min: rat(-1, 4),
            y_max: rat(3, 2),
            width: 480,
            height: 480,
            draw_lines: true,
            label_points: true,
            infinity_style: InfinityStyle::Arrow,
        }
    }
}

/// Decimal with six places, rounded half to even.
pub fn decimal6(q: &Rational) -> String {
    let scale = BigInt::from(1_000_000u32);
    let scaled = q * Rational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let frac = &scaled - Rational::from_integer(floor.clone());
    let half = rat(1, 2);
    let rounded = if frac > half || (frac == half && floor.is_odd()) {
        floor + 1
    } else {
        floor
    };
    let negative = rounded.is_negative();
    let (whole, part) = rounded.abs().div_rem(&scale);
    format!("{}{}.{:06}", if negative { "-" } else { "" }, whole, part)
}

struct Frame<'a> {
    o: &'a RenderOptions,
}

impl Frame<'_> {
    fn px(&self, x: &Rational) -> Rational {
        (x - &self.o.x_min) / (&self.o.x_max - &self.o.x_min) * int(self.o.width.into())
    }

    fn py(&self, y: &Rational) -> Rational {
        (&self.o.y_max - y) / (&self.o.y_max - &self.o.y_min) * int(self.o.height.into())
    }

    fn inside(&self, x: &Rational, y: &Rational) -> bool {
        &self.o.x_min <= x && x <= &self.o.x_max && &self.o.y_min <= y && y <= &self.o.y_max
    }
}

/// Clips the affine line `a x + b y + c = 0` to the viewport rectangle.
/// Returns the two endpoints, or `None` if the line misses the rectangle or
/// only touches a corner.
fn clip_line(line: &Vec3<Rational>, o: &RenderOptions) -> Option<[(Rational, Rational); 2]> {
    let (a, b, c) = (&line.x, &line.y, &line.z);
    if a.is_zero() && b.is_zero() {
        return None;
    }
    let mut hits: Vec<(Rational, Rational)> = Vec::new();
    let mut push = |p: (Rational, Rational)| {
        if !hits.contains(&p) {
            hits.push(p);
        }
    };
    if !b.is_zero() {
        for x in [&o.x_min, &o.x_max] {
            let y = -(a * x + c) / b;
            if o.y_min <= y && y <= o.y_max {
                push((x.clone(), y));
            }
        }
    }
    if !a.is_zero() {
        for y in [&o.y_min, &o.y_max] {
            let x = -(b * y + c) / a;
            if o.x_min <= x && x <= o.x_max {
                push((x, y.clone()));
            }
        }
    }
    hits.sort();
    match hits.len() {
        2 => {
            let mut it = hits.into_iter();
            Some([it.next().unwrap(), it.next().unwrap()])
        }
        _ => None,
    }
}

/// A drawn line: the triple it comes from and its clipped endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct DrawnLine {
    pub triple: [u8; 3],
    pub ends: [(Rational, Rational); 2],
}

/// Lines through the collinear triples of `c` that cross the viewport.
pub fn collinear_lines(c: &Configuration<Rational>, o: &RenderOptions) -> Vec<DrawnLine> {
    let chi = signs_of(c);
    let mut out = Vec::new();
    for t in chi.zero_set() {
        let labels = t.labels();
        let cols = labels.map(|l| c.column(l));
        // any two projectively distinct members span the line
        let line = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| cross(cols[i], cols[j]))
            .find(|l| !l.is_zero());
        let Some(line) = line else { continue };
        if let Some(ends) = clip_line(&line, o) {
            out.push(DrawnLine {
                triple: labels,
                ends,
            });
        }
    }
    out
}

pub fn render_svg(c: &Configuration<Rational>, o: &RenderOptions) -> Result<String, RenderError> {
    if o.x_min >= o.x_max || o.y_min >= o.y_max || o.width == 0 || o.height == 0 {
        return Err(RenderError::EmptyViewport);
    }
    let frame = Frame { o };
    let points = affine_image(c);
    let visible = points.iter().any(|p| match &p.position {
        AffinePosition::Finite { x, y } => frame.inside(x, y),
        AffinePosition::AtInfinity { .. } => false,
    });
    if !visible {
        return Err(RenderError::EmptyViewport);
    }

    let mut svg = String::new();
    let (w, h) = (o.width, o.height);
    writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#).unwrap();

    if o.draw_lines {
        writeln!(svg, r#"<g id="lines" stroke="gray" stroke-width="1">"#).unwrap();
        for line in collinear_lines(c, o) {
            let [(x1, y1), (x2, y2)] = &line.ends;
            let [i, j, k] = line.triple;
            writeln!(
                svg,
                r#"<line class="collinear" data-triple="{i},{j},{k}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                decimal6(&frame.px(x1)),
                decimal6(&frame.py(y1)),
                decimal6(&frame.px(x2)),
                decimal6(&frame.py(y2)),
            )
            .unwrap();
        }
        writeln!(svg, "</g>").unwrap();
    }

    writeln!(svg, r#"<g id="points" font-family="sans-serif" font-size="12">"#).unwrap();
    for p in &points {
        let AffinePosition::Finite { x, y } = &p.position else { continue };
        if !frame.inside(x, y) {
            continue;
        }
        let (cx, cy) = (decimal6(&frame.px(x)), decimal6(&frame.py(y)));
        writeln!(
            svg,
            r#"<circle class="point" data-label="{}" data-x="{}" data-y="{}" cx="{cx}" cy="{cy}" r="3" fill="black"/>"#,
            p.label,
            decimal6(x),
            decimal6(y),
        )
        .unwrap();
        if o.label_points {
            writeln!(
                svg,
                r#"<text x="{}" y="{}">{}</text>"#,
                decimal6(&(frame.px(x) + int(5))),
                decimal6(&(frame.py(y) - int(5))),
                p.label
            )
            .unwrap();
        }
    }
    writeln!(svg, "</g>").unwrap();

    if o.infinity_style == InfinityStyle::Arrow {
        writeln!(svg, r#"<g id="infinity" stroke="blue" fill="blue" font-family="sans-serif" font-size="12">"#).unwrap();
        for p in &points {
            let AffinePosition::AtInfinity { dx, dy } = &p.position else { continue };
            // arrow from the canvas centre towards the margin, in the
            // direction of the point at infinity (y flipped for SVG)
            let (cx, cy) = (Rational::from(BigInt::from(w)) / int(2), Rational::from(BigInt::from(h)) / int(2));
            let reach = int((w.min(h) / 2 - 12).into());
            let len = dx.abs().max(dy.abs());
            let (ux, uy) = (dx / &len, -dy / &len);
            let tip = (&cx + &ux * &reach, &cy + &uy * &reach);
            let tail = (&cx + &ux * (&reach - int(20)), &cy + &uy * (&reach - int(20)));
            writeln!(
                svg,
                r#"<line class="infinity" data-label="{}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                p.label,
                decimal6(&tail.0),
                decimal6(&tail.1),
                decimal6(&tip.0),
                decimal6(&tip.1),
            )
            .unwrap();
            writeln!(
                svg,
                r#"<text x="{}" y="{}" stroke="none">{}</text>"#,
                decimal6(&tip.0),
                decimal6(&tip.1),
                p.label
            )
            .unwrap();
        }
        writeln!(svg, "</g>").unwrap();
    }
    writeln!(svg, "</svg>").unwrap();
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{closed_form, ParamPoint};

    #[test]
    fn six_decimal_rounding() {
        assert_eq!(decimal6(&rat(1, 3)), "0.333333");
        assert_eq!(decimal6(&rat(2, 3)), "0.666667");
        assert_eq!(decimal6(&rat(-1, 3)), "-0.333333");
        assert_eq!(decimal6(&int(12)), "12.000000");
        // exact ties go to the even neighbour
        assert_eq!(decimal6(&rat(1, 2_000_000)), "0.000000");
        assert_eq!(decimal6(&rat(3, 2_000_000)), "0.000002");
        assert_eq!(decimal6(&rat(-3, 2_000_000)), "-0.000002");
    }

    #[test]
    fn clipping() {
        let o = RenderOptions {
            x_min: int(0),
            x_max: int(1),
            y_min: int(0),
            y_max: int(1),
            ..RenderOptions::default()
        };
        // y = x
        let diag = Vec3::new(int(1), int(-1), int(0));
        assert_eq!(clip_line(&diag, &o), Some([(int(0), int(0)), (int(1), int(1))]));
        // x = 2 misses
        assert_eq!(clip_line(&Vec3::new(int(1), int(0), int(-2)), &o), None);
        // line at infinity
        assert_eq!(clip_line(&Vec3::new(int(0), int(0), int(1)), &o), None);
    }

    #[test]
    fn degenerate_viewport() {
        let c = closed_form(&ParamPoint::base());
        let o = RenderOptions {
            x_max: rat(-1, 4),
            ..RenderOptions::default()
        };
        assert_eq!(render_svg(&c, &o), Err(RenderError::EmptyViewport));
        let far = RenderOptions {
            x_min: int(10),
            x_max: int(11),
            ..RenderOptions::default()
        };
        assert_eq!(render_svg(&c, &far), Err(RenderError::EmptyViewport));
    }
}
