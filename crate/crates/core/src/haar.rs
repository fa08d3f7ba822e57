//! Integral images and the five rectangular haar feature types.
//!
//! A feature is a signed combination of axis-aligned rectangle sums, so with
//! a prefix-sum table every value costs a handful of lookups regardless of
//! rectangle size.

use crate::dataset::{Dataset, GrayImage};
use crate::error::{Error, Result};

/// The five feature layouts. The tag order is load-bearing: learners break
/// ties by ascending index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HaarType {
    /// Left half minus right half.
    EdgeH = 0,
    /// Top half minus bottom half.
    EdgeV = 1,
    /// Outer horizontal thirds minus twice the middle third.
    LineH = 2,
    /// Outer vertical thirds minus twice the middle third.
    LineV = 3,
    /// Main-diagonal quadrants minus anti-diagonal quadrants.
    Checker = 4,
}

impl HaarType {
    pub const ALL: [HaarType; 5] = [
        HaarType::EdgeH,
        HaarType::EdgeV,
        HaarType::LineH,
        HaarType::LineV,
        HaarType::Checker,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<HaarType> {
        HaarType::ALL.get(i).copied()
    }

    /// Required divisors of (width, height) so every sub-rectangle is at
    /// least one pixel.
    pub fn divisors(self) -> (i64, i64) {
        match self {
            HaarType::EdgeH => (2, 1),
            HaarType::EdgeV => (1, 2),
            HaarType::LineH => (3, 1),
            HaarType::LineV => (1, 3),
            HaarType::Checker => (2, 2),
        }
    }
}

/// Rectangle placement of a feature inside a window. Fields are signed so
/// arbitrary decoded values can be checked rather than clamped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HaarGeometry {
    pub x: i64,
    pub y: i64,
    pub width: i64,
    pub height: i64,
}

impl HaarGeometry {
    pub fn new(x: i64, y: i64, width: i64, height: i64) -> Self {
        HaarGeometry {
            x,
            y,
            width,
            height,
        }
    }
}

/// Prefix-sum table with a zero border row and column, so rectangle sums
/// need no boundary branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralImage {
    width: usize,
    height: usize,
    table: Vec<u64>,
}

impl IntegralImage {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Table entry at (x, y): sum of all pixels (i, j) with i < x, j < y.
    pub fn at(&self, x: usize, y: usize) -> u64 {
        self.table[y * (self.width + 1) + x]
    }

    /// Sum of pixels over the half-open rectangle [x0, x1) x [y0, y1).
    pub fn rect_sum(&self, x0: usize, y0: usize, x1: usize, y1: usize) -> u64 {
        debug_assert!(x0 <= x1 && x1 <= self.width);
        debug_assert!(y0 <= y1 && y1 <= self.height);
        (self.at(x1, y1) + self.at(x0, y0)) - (self.at(x0, y1) + self.at(x1, y0))
    }
}

/// Builds the prefix-sum table of a window.
pub fn compute_integral(img: &GrayImage) -> IntegralImage {
    let (w, h) = (img.width(), img.height());
    let stride = w + 1;
    let mut table = vec![0u64; stride * (h + 1)];
    for y in 0..h {
        let mut row_sum = 0u64;
        for x in 0..w {
            row_sum += img.get(x, y) as u64;
            table[(y + 1) * stride + (x + 1)] = table[y * stride + (x + 1)] + row_sum;
        }
    }
    IntegralImage {
        width: w,
        height: h,
        table,
    }
}

/// Total check of the geometry invariants for one feature type and window.
pub fn is_valid_geometry(g: HaarGeometry, t: HaarType, window_w: usize, window_h: usize) -> bool {
    let (dw, dh) = t.divisors();
    g.x >= 0
        && g.y >= 0
        && g.width >= dw
        && g.height >= dh
        && g.width % dw == 0
        && g.height % dh == 0
        && g.x + g.width <= window_w as i64
        && g.y + g.height <= window_h as i64
}

/// Feature value at a validated geometry. Exact: pixel sums are integers.
fn haar_value_unchecked(ii: &IntegralImage, g: HaarGeometry, t: HaarType) -> i64 {
    let (x, y) = (g.x as usize, g.y as usize);
    let (w, h) = (g.width as usize, g.height as usize);
    let r = |x0: usize, y0: usize, x1: usize, y1: usize| ii.rect_sum(x0, y0, x1, y1) as i64;
    match t {
        HaarType::EdgeH => {
            let mid = x + w / 2;
            r(x, y, mid, y + h) - r(mid, y, x + w, y + h)
        }
        HaarType::EdgeV => {
            let mid = y + h / 2;
            r(x, y, x + w, mid) - r(x, mid, x + w, y + h)
        }
        HaarType::LineH => {
            let third = w / 3;
            let (a, b) = (x + third, x + 2 * third);
            r(x, y, a, y + h) + r(b, y, x + w, y + h) - 2 * r(a, y, b, y + h)
        }
        HaarType::LineV => {
            let third = h / 3;
            let (a, b) = (y + third, y + 2 * third);
            r(x, y, x + w, a) + r(x, b, x + w, y + h) - 2 * r(x, a, x + w, b)
        }
        HaarType::Checker => {
            let (mx, my) = (x + w / 2, y + h / 2);
            let tl = r(x, y, mx, my);
            let tr = r(mx, y, x + w, my);
            let bl = r(x, my, mx, y + h);
            let br = r(mx, my, x + w, y + h);
            (tl + br) - (tr + bl)
        }
    }
}

/// Feature value of `t` at `g`, or an error when the geometry does not fit
/// the window. Population-based callers must pre-check validity and assign
/// zero fitness instead of propagating the error.
pub fn haar_value(ii: &IntegralImage, g: HaarGeometry, t: HaarType) -> Result<f64> {
    if !is_valid_geometry(g, t, ii.width(), ii.height()) {
        return Err(Error::invalid_geometry(g, t, ii.width(), ii.height()));
    }
    Ok(haar_value_unchecked(ii, g, t) as f64)
}

/// All valid geometries for `t`, in ascending (y, x, height, width) order,
/// with unit stride in both position and size.
pub fn enumerate_geometries(t: HaarType, window_w: usize, window_h: usize) -> Vec<HaarGeometry> {
    let (dw, dh) = t.divisors();
    let (dw, dh) = (dw as usize, dh as usize);
    let mut out = Vec::new();
    for y in 0..window_h {
        for x in 0..window_w {
            let mut height = dh;
            while y + height <= window_h {
                let mut width = dw;
                while x + width <= window_w {
                    out.push(HaarGeometry::new(
                        x as i64,
                        y as i64,
                        width as i64,
                        height as i64,
                    ));
                    width += dw;
                }
                height += dh;
            }
        }
    }
    out
}

/// Dataset with every window's integral image precomputed once, plus labels.
#[derive(Debug, Clone)]
pub struct IntegralDataset {
    window_w: usize,
    window_h: usize,
    labels: Vec<i8>,
    integrals: Vec<IntegralImage>,
}

impl IntegralDataset {
    pub fn from_dataset(data: &Dataset) -> Self {
        IntegralDataset {
            window_w: data.window_w(),
            window_h: data.window_h(),
            labels: data.labels(),
            integrals: data
                .samples()
                .iter()
                .map(|s| compute_integral(&s.image))
                .collect(),
        }
    }

    pub fn window_w(&self) -> usize {
        self.window_w
    }

    pub fn window_h(&self) -> usize {
        self.window_h
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    pub fn integrals(&self) -> &[IntegralImage] {
        &self.integrals
    }

    /// Feature values of (g, t) over all samples. Validates the geometry
    /// once, not per sample.
    pub fn feature_values(&self, g: HaarGeometry, t: HaarType) -> Result<Vec<f64>> {
        if !is_valid_geometry(g, t, self.window_w, self.window_h) {
            return Err(Error::invalid_geometry(g, t, self.window_w, self.window_h));
        }
        Ok(self
            .integrals
            .iter()
            .map(|ii| haar_value_unchecked(ii, g, t) as f64)
            .collect())
    }
}
