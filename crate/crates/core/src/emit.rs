//! Zero-dependency file emitters: CSV point lists, SVG scatter plots and
//! binary PPM sign-region images. All output uses '.' decimals and LF line
//! endings and is bit-deterministic for fixed input.

use std::io::{self, Write};

use crate::map::PlanePoint;
use crate::scalar::Real;
use crate::solver::SignGrid;

/// CSV with an `x,y` header and one point per line.
pub fn write_points_csv<W: Write, R: Real>(mut w: W, points: &[PlanePoint<R>]) -> io::Result<()> {
    w.write_all(b"x,y\n")?;
    for p in points {
        let (x, y) = p.to_f64();
        writeln!(w, "{x},{y}")?;
    }
    Ok(())
}

/// CSV dump of a sign grid: `a,b,r1,r2,valid` per cell, row-major from
/// `b_min` upward. A cell is valid when the assumptions hold and both
/// residuals were computable there.
pub fn write_grid_csv<W: Write>(mut w: W, grid: &SignGrid) -> io::Result<()> {
    w.write_all(b"a,b,r1,r2,valid\n")?;
    for cell in &grid.cells {
        writeln!(
            w,
            "{},{},{},{},{}",
            cell.a,
            cell.b,
            cell.r1,
            cell.r2,
            u8::from(cell.assumptions_ok && cell.computable)
        )?;
    }
    Ok(())
}

/// Binary P6 pixmap of a sign grid. Red encodes the sign of the first
/// residual (bright = nonnegative), green the second, blue validity
/// (bright = assumptions hold and residuals computable; invalid cells are
/// gray with blue 0). Top row corresponds to `b_max`.
pub fn write_grid_ppm<W: Write>(mut w: W, grid: &SignGrid) -> io::Result<()> {
    write!(w, "P6\n{} {}\n255\n", grid.na, grid.nb)?;
    let mut row = Vec::with_capacity(grid.na * 3);
    for ib in (0..grid.nb).rev() {
        row.clear();
        for ia in 0..grid.na {
            let cell = grid.cell(ia, ib);
            if cell.computable {
                row.push(if cell.r1 >= 0.0 { 255 } else { 0 });
                row.push(if cell.r2 >= 0.0 { 255 } else { 0 });
                row.push(if cell.assumptions_ok { 255 } else { 0 });
            } else {
                row.extend_from_slice(&[128, 128, 0]);
            }
        }
        w.write_all(&row)?;
    }
    Ok(())
}

/// Minimal static SVG scatter plot. The vertical coordinate is multiplied
/// by `y_stretch` before layout (1.0 = isometric axes).
pub fn write_scatter_svg<W: Write, R: Real>(
    mut w: W,
    points: &[PlanePoint<R>],
    y_stretch: f64,
    radius: f64,
) -> io::Result<()> {
    const WIDTH: f64 = 800.0;
    let pts: Vec<(f64, f64)> = points
        .iter()
        .map(|p| {
            let (x, y) = p.to_f64();
            (x, y * y_stretch)
        })
        .collect();
    let (mut x_min, mut x_max, mut y_min, mut y_max) = (-1.0f64, 1.0f64, -1.0f64, 1.0f64);
    if !pts.is_empty() {
        x_min = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        x_max = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        y_min = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        y_max = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    }
    let span_x = (x_max - x_min).max(1e-9);
    let span_y = (y_max - y_min).max(1e-9);
    let pad = 0.05;
    let scale = WIDTH / (span_x * (1.0 + 2.0 * pad));
    let height = span_y * (1.0 + 2.0 * pad) * scale;
    let origin_x = x_min - pad * span_x;
    let origin_y = y_max + pad * span_y;

    writeln!(
        w,
        r#"<svg version="1.1" xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}">"#
    )?;
    writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    for (x, y) in &pts {
        let cx = (x - origin_x) * scale;
        let cy = (origin_y - y) * scale;
        writeln!(
            w,
            r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{radius}" fill="black"/>"#
        )?;
    }
    writeln!(w, "</svg>")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{sign_grid, GridSize, Region};

    #[test]
    fn csv_format() {
        let pts = vec![
            PlanePoint::<f64>::from_f64(0.5, -1.25),
            PlanePoint::from_f64(1.0, 2.0),
        ];
        let mut buf = Vec::new();
        write_points_csv(&mut buf, &pts).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "x,y\n0.5,-1.25\n1,2\n");
    }

    #[test]
    fn ppm_header_and_size() {
        let grid = sign_grid(
            0.0,
            Region::new(1.0, 2.0, 0.0, 1.0),
            GridSize { na: 2, nb: 2 },
        )
        .unwrap();
        let mut buf = Vec::new();
        write_grid_ppm(&mut buf, &grid).unwrap();
        assert!(buf.starts_with(b"P6\n2 2\n255\n"));
        assert_eq!(buf.len(), b"P6\n2 2\n255\n".len() + 12);
    }

    #[test]
    fn grid_csv_has_all_cells() {
        let grid = sign_grid(
            0.0,
            Region::new(1.0, 2.0, 0.0, 1.0),
            GridSize { na: 3, nb: 2 },
        )
        .unwrap();
        let mut buf = Vec::new();
        write_grid_csv(&mut buf, &grid).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 6);
        assert!(text.starts_with("a,b,r1,r2,valid\n"));
    }

    #[test]
    fn svg_is_wellformed_and_deterministic() {
        let pts = vec![
            PlanePoint::<f64>::from_f64(0.0, 0.0),
            PlanePoint::from_f64(1.0, 0.5),
        ];
        let mut buf1 = Vec::new();
        write_scatter_svg(&mut buf1, &pts, 1.75, 0.5).unwrap();
        let mut buf2 = Vec::new();
        write_scatter_svg(&mut buf2, &pts, 1.75, 0.5).unwrap();
        assert_eq!(buf1, buf2);
        let text = String::from_utf8(buf1).unwrap();
        assert!(text.starts_with("<svg"));
        assert!(text.trim_end().ends_with("</svg>"));
        assert_eq!(text.matches("<circle").count(), 2);
    }
}
