//! Binary PPM images of phase and magnitude over the z-plane or the (q, τ) strip.
//!
//! Colors come from two fixed 256-entry tables built at compile time:
//!
//! * phase: index ⌊(φ + π)/2π · 256⌋, black at −π, green at 0, red at +π,
//!   linear in between;
//! * magnitude: index round(255·tanh(|f|/2)), black at 0, blue-green near 1
//!   (index 118), yellow near 2 (index 194), red as |f| grows.
//!
//! Pixels whose evaluation fails are drawn in magenta and counted.

use rug::Float;

use crate::error::{Error, Result};
use crate::extend::{li_anywhere, periodic_zeta};
use crate::hurwitz::hz_euler_maclaurin;
use crate::monodromy::{eval_sheet, GenWord};
use crate::numctx::{digits_to_bits, BigComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Phase,
    Magnitude,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlotFunction {
    /// Li_s(z) over a rectangle of the z-plane.
    PolylogZPlane,
    /// F(q; σ + iτ) with x = q, y = τ.
    PeriodicQTau,
    /// ζ(σ + iτ, q) with x = q, y = τ.
    HurwitzQTau,
    /// Li_s(z) continued along a word, over the z-plane.
    Sheet(GenWord),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub kind: PlotKind,
    pub function: PlotFunction,
    /// (x_min, x_max, y_min, y_max)
    pub window: (f64, f64, f64, f64),
    pub width: usize,
    pub height: usize,
    /// The order s; for the (q, τ) plots only Re s is used.
    pub s: (f64, f64),
}

impl PlotSpec {
    pub fn validate(&self) -> Result<()> {
        if self.width < 8 || self.height < 8 {
            return Err(Error::Usage(format!("image must be at least 8x8, got {}x{}", self.width, self.height)));
        }
        let (x0, x1, y0, y1) = self.window;
        if !(x0 < x1 && y0 < y1) || ![x0, x1, y0, y1].iter().all(|v| v.is_finite()) {
            return Err(Error::Usage("window must satisfy x_min < x_max and y_min < y_max".into()));
        }
        Ok(())
    }

    /// Center of pixel (col, row); row 0 is the top (largest y).
    pub fn pixel_point(&self, col: usize, row: usize) -> (f64, f64) {
        let (x0, x1, y0, y1) = self.window;
        let x = x0 + (col as f64 + 0.5) / self.width as f64 * (x1 - x0);
        let y = y1 - (row as f64 + 0.5) / self.height as f64 * (y1 - y0);
        (x, y)
    }
}

/// A rendered image plus the number of pixels drawn in the failure color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub rgb: Vec<u8>,
    pub failures: usize,
}

impl Image {
    pub fn pixel(&self, col: usize, row: usize) -> [u8; 3] {
        let i = 3 * (row * self.width + col);
        [self.rgb[i], self.rgb[i + 1], self.rgb[i + 2]]
    }

    /// P6 file contents.
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.rgb);
        out
    }
}

pub const FAILURE_COLOR: [u8; 3] = [255, 0, 255];

const fn ramp(anchors: &[(usize, [u8; 3])]) -> [[u8; 3]; 256] {
    let mut t = [[0u8; 3]; 256];
    let mut a = 0;
    while a + 1 < anchors.len() {
        let (i0, c0) = anchors[a];
        let (i1, c1) = anchors[a + 1];
        let mut i = i0;
        while i <= i1 {
            let mut k = 0;
            while k < 3 {
                let v0 = c0[k] as i64;
                let v1 = c1[k] as i64;
                let span = (i1 - i0) as i64;
                let num = v0 * span + (v1 - v0) * (i - i0) as i64;
                t[i][k] = ((num + span / 2) / span) as u8;
                k += 1;
            }
            i += 1;
        }
        a += 1;
    }
    t
}

pub static PHASE_TABLE: [[u8; 3]; 256] = ramp(&[(0, [0, 0, 0]), (128, [0, 200, 0]), (255, [230, 0, 0])]);

pub static MAGNITUDE_TABLE: [[u8; 3]; 256] =
    ramp(&[(0, [0, 0, 0]), (118, [0, 170, 150]), (194, [240, 230, 0]), (255, [220, 0, 0])]);

pub fn phase_color(v: &BigComplex) -> [u8; 3] {
    let phi = v.im_f64().atan2(v.re_f64());
    let x = (phi + std::f64::consts::PI) / std::f64::consts::TAU * 256.0;
    PHASE_TABLE[(x.floor() as i64).clamp(0, 255) as usize]
}

pub fn magnitude_color(v: &BigComplex) -> [u8; 3] {
    let m = v.abs_f64();
    if !m.is_finite() {
        return MAGNITUDE_TABLE[255];
    }
    MAGNITUDE_TABLE[((m / 2.0).tanh() * 255.0).round() as usize]
}

/// Renders `spec` with the function chosen there, at `digits` digits.
pub fn render_plot(spec: &PlotSpec, digits: u32) -> Result<Image> {
    let bits = digits_to_bits(digits) + 16;
    let s = BigComplex::from_f64(bits, spec.s.0, spec.s.1);
    let sigma = spec.s.0;
    let f = |x: f64, y: f64| -> Result<BigComplex> {
        match &spec.function {
            PlotFunction::PolylogZPlane => li_anywhere(&s, &BigComplex::from_f64(bits, x, y), digits).map(|(v, _)| v),
            PlotFunction::Sheet(word) => eval_sheet(&s, &BigComplex::from_f64(bits, x, y), word, digits),
            PlotFunction::PeriodicQTau => {
                periodic_zeta(&Float::with_val(bits, x), &BigComplex::from_f64(bits, sigma, y), digits)
            }
            PlotFunction::HurwitzQTau => {
                hz_euler_maclaurin(&BigComplex::from_f64(bits, sigma, y), &BigComplex::from_f64(bits, x, 0.0), digits)
            }
        }
    };
    render_with(spec, f)
}

/// Renders `spec` with an arbitrary function of the pixel coordinates.
pub fn render_with<F>(spec: &PlotSpec, f: F) -> Result<Image>
where
    F: Fn(f64, f64) -> Result<BigComplex>,
{
    spec.validate()?;
    let mut rgb = Vec::with_capacity(3 * spec.width * spec.height);
    let mut failures = 0;
    for row in 0..spec.height {
        for col in 0..spec.width {
            let (x, y) = spec.pixel_point(col, row);
            let c = match f(x, y) {
                Ok(v) if v.re().is_finite() && v.im().is_finite() => match spec.kind {
                    PlotKind::Phase => phase_color(&v),
                    PlotKind::Magnitude => magnitude_color(&v),
                },
                _ => {
                    failures += 1;
                    FAILURE_COLOR
                }
            };
            rgb.extend_from_slice(&c);
        }
    }
    Ok(Image { width: spec.width, height: spec.height, rgb, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn luminance(c: [u8; 3]) -> u32 {
        c.iter().map(|&v| v as u32).sum()
    }

    #[test]
    fn tables_hit_their_anchors() {
        assert_eq!(PHASE_TABLE[0], [0, 0, 0]);
        assert_eq!(PHASE_TABLE[128], [0, 200, 0]);
        assert_eq!(PHASE_TABLE[255], [230, 0, 0]);
        assert_eq!(MAGNITUDE_TABLE[118], [0, 170, 150]);
        assert_eq!(MAGNITUDE_TABLE[194], [240, 230, 0]);
        assert_eq!(magnitude_color(&BigComplex::zero(64)), [0, 0, 0]);
    }

    #[test]
    fn constant_function_is_uniform() {
        let spec = PlotSpec {
            kind: PlotKind::Magnitude,
            function: PlotFunction::PolylogZPlane,
            window: (-1.0, 1.0, -1.0, 1.0),
            width: 16,
            height: 8,
            s: (2.0, 0.0),
        };
        let img = render_with(&spec, |_, _| Ok(BigComplex::one(64))).unwrap();
        let first = img.pixel(0, 0);
        assert!(img.rgb.chunks(3).all(|c| c == first));
        assert_eq!(img.failures, 0);
        let ppm = img.to_ppm();
        assert!(ppm.starts_with(b"P6\n16 8\n255\n"));
        assert_eq!(ppm.len(), 12 + 16 * 8 * 3);
    }

    #[test]
    fn rejects_tiny_images() {
        let spec = PlotSpec {
            kind: PlotKind::Phase,
            function: PlotFunction::PolylogZPlane,
            window: (-1.0, 1.0, -1.0, 1.0),
            width: 4,
            height: 8,
            s: (2.0, 0.0),
        };
        assert!(matches!(render_plot(&spec, 8), Err(Error::Usage(_))));
    }

    #[test]
    fn phase_wraps_around_the_origin() {
        let spec = PlotSpec {
            kind: PlotKind::Phase,
            function: PlotFunction::PolylogZPlane,
            window: (-1.0, 1.0, -1.0, 1.0),
            width: 64,
            height: 64,
            s: (0.5, 15.0),
        };
        let img = render_plot(&spec, 8).unwrap();
        let center = [img.pixel(31, 31), img.pixel(32, 31), img.pixel(31, 32), img.pixel(32, 32)];
        let idx: Vec<usize> = center.iter().map(|c| PHASE_TABLE.iter().position(|t| t == c).unwrap()).collect();
        let lo = *idx.iter().min().unwrap();
        let hi = *idx.iter().max().unwrap();
        assert!(lo < 70 && hi > 186, "{idx:?}");
        let again = render_plot(&spec, 8).unwrap();
        assert_eq!(img, again);
    }

    #[test]
    fn riemann_zeros_are_dark_near_q_one() {
        let spec = PlotSpec {
            kind: PlotKind::Magnitude,
            function: PlotFunction::PeriodicQTau,
            window: (0.95, 1.0, 0.0, 50.0),
            width: 8,
            height: 128,
            s: (0.5, 0.0),
        };
        let img = render_plot(&spec, 8).unwrap();
        assert_eq!(img.failures, 0);
        let col = 7;
        let mut lum: Vec<u32> = (0..128).map(|r| luminance(img.pixel(col, r))).collect();
        let row_of = |tau: f64| ((50.0 - tau) / 50.0 * 128.0 - 0.5).round() as usize;
        let zeros = [row_of(14.134725), row_of(21.022040), row_of(25.010858)];
        let dark: Vec<u32> = zeros.iter().map(|&r| lum[r]).collect();
        lum.sort();
        let median = lum[64];
        assert!(dark.iter().all(|&d| d < median), "{dark:?} vs median {median}");
    }
}
