//! Minimal static SVG 1.1 emitter with a y-up world viewport.

use lozi_core::Point;
use std::fmt::Write;

pub const DEFAULT_WORLD: (f64, f64, f64, f64) = (-9.0, 9.0, -10.5, 6.5);

pub struct Canvas {
    world: (f64, f64, f64, f64),
    width: f64,
    height: f64,
    body: String,
    desc: String,
}

impl Canvas {
    pub fn new(world: (f64, f64, f64, f64), desc: &str) -> Self {
        let (x0, x1, y0, y1) = world;
        assert!(x1 > x0 && y1 > y0);
        let width = 720.0;
        let height = width * (y1 - y0) / (x1 - x0);
        Canvas {
            world,
            width,
            height,
            body: String::new(),
            desc: desc.to_string(),
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        let (x0, x1, y0, y1) = self.world;
        let px = (p.x - x0) / (x1 - x0) * self.width;
        let py = (y1 - p.y) / (y1 - y0) * self.height;
        (px, py)
    }

    pub fn axes(&mut self) {
        let (x0, x1, y0, y1) = self.world;
        self.polyline(
            &[Point::new(x0, 0.0), Point::new(x1, 0.0)],
            "#999999",
            0.8,
        );
        self.polyline(
            &[Point::new(0.0, y0), Point::new(0.0, y1)],
            "#999999",
            0.8,
        );
    }

    pub fn polyline(&mut self, pts: &[Point], color: &str, width: f64) {
        let mut d = String::new();
        for p in pts {
            let (x, y) = self.map(*p);
            let _ = write!(d, "{x:.2},{y:.2} ");
        }
        let _ = writeln!(
            self.body,
            r#"<polyline fill="none" stroke="{color}" stroke-width="{width}" points="{}"/>"#,
            d.trim_end()
        );
    }

    pub fn circle(&mut self, p: Point, r: f64, color: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{color}"/>"#
        );
    }

    pub fn rect_world(&mut self, p0: Point, p1: Point, color: &str) {
        let (x0, y0) = self.map(Point::new(p0.x.min(p1.x), p0.y.max(p1.y)));
        let (x1, y1) = self.map(Point::new(p0.x.max(p1.x), p0.y.min(p1.y)));
        let _ = writeln!(
            self.body,
            r#"<rect x="{x0:.2}" y="{y0:.2}" width="{:.2}" height="{:.2}" fill="{color}"/>"#,
            x1 - x0,
            y1 - y0
        );
    }

    pub fn text(&mut self, p: Point, s: &str, color: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(
            self.body,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" font-family="monospace" fill="{color}">{}</text>"#,
            x + 4.0,
            y - 4.0,
            escape(s)
        );
    }

    pub fn finish(self) -> String {
        format!(
            concat!(
                r#"<?xml version="1.0" encoding="UTF-8"?>"#,
                "\n",
                r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#,
                "\n<desc>{d}</desc>\n",
                r#"<rect width="100%" height="100%" fill="white"/>"#,
                "\n{b}</svg>\n"
            ),
            w = self.width,
            h = self.height,
            d = escape(&self.desc),
            b = self.body
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
