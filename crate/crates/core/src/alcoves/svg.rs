//! SVG pictures of rank-2 alcove arrangements.

use std::fmt::Write;

use super::{alcove_to_element, Alcove};
use crate::affine;
use crate::error::{Error, Result};
use crate::rational::RationalVector;
use crate::rootsys::RootDatum;

#[derive(Clone, Copy, Debug)]
pub struct SvgOptions {
    /// walls `H_{α,k}` with `|k| ≤ radius` are drawn
    pub radius: i64,
    /// width and height in pixels
    pub size: u32,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            radius: 3,
            size: 600,
        }
    }
}

fn to_f64(x: &crate::rational::Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Orthonormal frame of the plane spanned by the coroots.
fn frame(d: &RootDatum) -> [Vec<f64>; 2] {
    let c: Vec<Vec<f64>> = d
        .simple_coroots()
        .iter()
        .map(|v| v.coords().iter().map(to_f64).collect())
        .collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let n0 = dot(&c[0], &c[0]).sqrt();
    let e0: Vec<f64> = c[0].iter().map(|x| x / n0).collect();
    let p = dot(&c[1], &e0);
    let r: Vec<f64> = c[1].iter().zip(&e0).map(|(x, y)| x - p * y).collect();
    let n1 = dot(&r, &r).sqrt();
    let e1: Vec<f64> = r.iter().map(|x| x / n1).collect();
    [e0, e1]
}

fn project(f: &[Vec<f64>; 2], v: &RationalVector) -> (f64, f64) {
    let v: Vec<f64> = v.coords().iter().map(to_f64).collect();
    let x = f[0].iter().zip(&v).map(|(a, b)| a * b).sum();
    let y = f[1].iter().zip(&v).map(|(a, b)| a * b).sum();
    (x, y)
}

/// Clips `{p : a·p = k}` to the square `[-h, h]²`.
fn clip(a: (f64, f64), k: f64, h: f64) -> Option<((f64, f64), (f64, f64))> {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let eps = 1e-9;
    if a.1.abs() > eps {
        for x in [-h, h] {
            let y = (k - a.0 * x) / a.1;
            if y.abs() <= h + eps {
                pts.push((x, y));
            }
        }
    }
    if a.0.abs() > eps {
        for y in [-h, h] {
            let x = (k - a.1 * y) / a.0;
            if x.abs() <= h + eps {
                pts.push((x, y));
            }
        }
    }
    pts.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    pts.dedup_by(|p, q| (p.0 - q.0).abs() < eps && (p.1 - q.1).abs() < eps);
    if pts.len() >= 2 {
        Some((pts[0], pts[pts.len() - 1]))
    } else {
        None
    }
}

/// Draws the walls near the origin, shades `shaded`, and labels the base
/// alcove. Output depends only on the inputs.
pub fn render(d: &RootDatum, shaded: &[Alcove], opts: &SvgOptions) -> Result<String> {
    if d.rank() != 2 {
        return Err(Error::Config(format!(
            "drawing needs a rank-2 datum, {} has rank {}",
            d.label(),
            d.rank()
        )));
    }
    let f = frame(d);
    // half-width in projected units: the coweights reached by walls |k| ≤ radius
    let extent = d
        .fundamental_coweights()
        .iter()
        .map(|v| {
            let (x, y) = project(&f, v);
            (x * x + y * y).sqrt()
        })
        .fold(0.0f64, f64::max);
    let h = extent * opts.radius as f64;
    let size = opts.size as f64;
    let scale = size / (2.0 * h);
    let px = |(x, y): (f64, f64)| ((x + h) * scale, (h - y) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        opts.size
    );
    let _ = writeln!(
        out,
        r#"<rect width="{0}" height="{0}" fill="white"/>"#,
        opts.size
    );

    let mut sorted: Vec<&Alcove> = shaded.iter().collect();
    sorted.sort();
    sorted.dedup();
    let _ = writeln!(out, r##"<g fill="#9ecae1" stroke="none">"##);
    for a in &sorted {
        let y = alcove_to_element(d, a);
        let pts: Vec<String> = d
            .vertices()
            .iter()
            .map(|v| {
                let (sx, sy) = px(project(&f, &affine::act(d, &y, v)));
                format!("{sx:.3},{sy:.3}")
            })
            .collect();
        let _ = writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r##"<g stroke="#555" stroke-width="1">"##);
    for b in 0..d.num_positive_roots() {
        let a = project(&f, d.root(b));
        for k in -opts.radius..=opts.radius {
            if let Some((p, q)) = clip(a, k as f64, h) {
                let (x1, y1) = px(p);
                let (x2, y2) = px(q);
                let _ = writeln!(
                    out,
                    r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
                );
            }
        }
    }
    let _ = writeln!(out, "</g>");

    let (bx, by) = px(project(&f, d.barycenter()));
    let _ = writeln!(
        out,
        r#"<text x="{bx:.3}" y="{by:.3}" font-size="12" text-anchor="middle" dominant-baseline="middle">A0</text>"#
    );
    out.push_str("</svg>\n");
    Ok(out)
}

/// Number of shaded polygons in a rendered picture.
pub fn count_shaded(svg: &str) -> usize {
    svg.matches("<polygon ").count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_datum, Family};

    #[test]
    fn deterministic_and_rank_checked() {
        let d = build_root_datum(Family::C, 2).unwrap();
        let a = vec![Alcove::base(&d)];
        let s1 = render(&d, &a, &SvgOptions::default()).unwrap();
        let s2 = render(&d, &a, &SvgOptions::default()).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(count_shaded(&s1), 1);
        let d3 = build_root_datum(Family::B, 3).unwrap();
        assert!(render(&d3, &[], &SvgOptions::default()).is_err());
    }
}
