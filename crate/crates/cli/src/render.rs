//! SVG slices of basic neighborhoods: the membership raster of a 2-plane
//! through the center, drawn as one rectangle per run of member pixels.

use std::fmt::Write;

use conetop::{BasicNbhd64, Event64, Tolerance64};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
pub struct Plane {
    /// Coordinate index drawn left to right.
    pub horizontal: usize,
    /// Coordinate index drawn bottom to top.
    pub vertical: usize,
    /// Half-width of the square window around the center.
    pub extent: f64,
}

impl Plane {
    /// Parses `"h,v"` against a point with `len` coordinates.
    pub fn parse(spec: &str, len: usize, extent: f64) -> CliResult<Self> {
        let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
        let bad = || CliError::Usage(format!("plane {spec:?}: want two distinct axes below {len}"));
        if parts.len() != 2 {
            return Err(bad());
        }
        let h: usize = parts[0].parse().map_err(|_| bad())?;
        let v: usize = parts[1].parse().map_err(|_| bad())?;
        if h == v || h >= len || v >= len {
            return Err(bad());
        }
        if !(extent.is_finite() && extent > 0.0) {
            return Err(CliError::Usage("extent must be positive".into()));
        }
        Ok(Self {
            horizontal: h,
            vertical: v,
            extent,
        })
    }
}

fn axis_name(i: usize) -> String {
    match i {
        0 => "t".into(),
        1 => "x".into(),
        2 => "y".into(),
        3 => "z".into(),
        _ => format!("x{i}"),
    }
}

/// Membership grid, row 0 at the top.
pub fn raster(b: &BasicNbhd64, plane: &Plane, res: usize, tol: &Tolerance64) -> CliResult<Vec<Vec<bool>>> {
    let c = b.center();
    let mut coords = c.coords().to_vec();
    let step = 2.0 * plane.extent / res as f64;
    let mut grid = Vec::with_capacity(res);
    for j in 0..res {
        let mut row = Vec::with_capacity(res);
        coords[plane.vertical] = c.coords()[plane.vertical] + plane.extent - (j as f64 + 0.5) * step;
        for i in 0..res {
            coords[plane.horizontal] = c.coords()[plane.horizontal] - plane.extent + (i as f64 + 0.5) * step;
            let q = Event64::new(coords.clone())?;
            row.push(b.member(&q, tol)?);
        }
        grid.push(row);
    }
    Ok(grid)
}

pub fn render_svg(b: &BasicNbhd64, plane: &Plane, res: usize, tol: &Tolerance64) -> CliResult<String> {
    if res < 2 {
        return Err(CliError::Usage("resolution must be at least 2".into()));
    }
    let grid = raster(b, plane, res, tol)?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{res}" height="{res}" viewBox="0 0 {res} {res}">"#
    );
    let _ = writeln!(
        s,
        "<title>{b} in the {}-{} plane, half-width {}</title>",
        axis_name(plane.horizontal),
        axis_name(plane.vertical),
        plane.extent
    );
    let _ = writeln!(s, r##"<rect width="{res}" height="{res}" fill="#ffffff"/>"##);
    let _ = writeln!(s, r##"<g fill="#3b6ea8" shape-rendering="crispEdges">"##);
    for (j, row) in grid.iter().enumerate() {
        let mut i = 0;
        while i < res {
            if !row[i] {
                i += 1;
                continue;
            }
            let start = i;
            while i < res && row[i] {
                i += 1;
            }
            let _ = writeln!(s, r#"<rect x="{start}" y="{j}" width="{}" height="1"/>"#, i - start);
        }
    }
    s.push_str("</g>\n");
    let mid = res as f64 / 2.0;
    if plane.horizontal == 0 || plane.vertical == 0 {
        // equal scales on both axes, so the null directions are the diagonals
        let _ = writeln!(
            s,
            r##"<g stroke="#c0392b" stroke-width="1" stroke-dasharray="4 3"><line x1="0" y1="0" x2="{res}" y2="{res}"/><line x1="0" y1="{res}" x2="{res}" y2="0"/></g>"##
        );
    }
    let _ = writeln!(s, r##"<circle cx="{mid}" cy="{mid}" r="2" fill="#000000"/>"##);
    s.push_str("</svg>\n");
    Ok(s)
}

/// Fraction of member pixels, for quick summaries.
pub fn coverage(grid: &[Vec<bool>]) -> f64 {
    let total: usize = grid.iter().map(Vec::len).sum();
    let inside: usize = grid.iter().map(|r| r.iter().filter(|&&m| m).count()).sum();
    inside as f64 / total.max(1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use conetop::TopologyKind;

    fn nbhd(kind: TopologyKind) -> BasicNbhd64 {
        BasicNbhd64::at(kind, Event64::origin(1).unwrap(), 1.0).unwrap()
    }

    #[test]
    fn plane_parsing() {
        assert!(Plane::parse("1,0", 4, 1.0).is_ok());
        assert!(Plane::parse("1,1", 4, 1.0).is_err());
        assert!(Plane::parse("0,4", 4, 1.0).is_err());
        assert!(Plane::parse("a,b", 4, 1.0).is_err());
    }

    #[test]
    fn bow_tie_and_disk() {
        let tol = Tolerance64::default();
        let plane = Plane::parse("1,0", 2, 1.25).unwrap();
        let zt = raster(&nbhd(TopologyKind::ZT), &plane, 64, &tol).unwrap();
        // top-middle pixel row: timelike, inside the disk
        assert!(zt[16][32] && zt[16][31]);
        // left-middle: spacelike
        assert!(!zt[32][16]);
        let zs = raster(&nbhd(TopologyKind::ZSDash), &plane, 64, &tol).unwrap();
        assert!(zs[32][16] && !zs[16][32]);
        let disk = raster(&nbhd(TopologyKind::Manifold), &plane, 200, &tol).unwrap();
        let area = coverage(&disk) * 2.5 * 2.5;
        assert!((area - std::f64::consts::PI).abs() < 0.05, "{area}");
        // the time-cone pieces cover half of the disk
        let zt = raster(&nbhd(TopologyKind::ZT), &plane, 200, &tol).unwrap();
        assert!((coverage(&zt) * 6.25 - std::f64::consts::FRAC_PI_2).abs() < 0.05);
    }

    #[test]
    fn svg_is_deterministic() {
        let tol = Tolerance64::default();
        let plane = Plane::parse("1,0", 2, 1.25).unwrap();
        let a = render_svg(&nbhd(TopologyKind::ZT), &plane, 32, &tol).unwrap();
        let b = render_svg(&nbhd(TopologyKind::ZT), &plane, 32, &tol).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("<line"));
        assert!(a.starts_with("<svg"));
    }
}
