//! Binary images, share generation and stacking.
//!
//! Each secret pixel becomes a block of `m` subpixels in every share, laid
//! out as a horizontal strip or in a grid `ceil(sqrt(m))` wide. Pixel `i`
//! draws its matrix from a ChaCha stream selected by `i`, so shares depend
//! only on the seed and not on evaluation order.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::access::{AccessStructure, Subset};
use crate::error::{Result, VcsError};
use crate::matrix::{permutations, sample_share_matrix, BitMatrix, Scheme};
use crate::verify::{verify_scheme, Direction, VerifyOptions, VerifyReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    /// Row-major, `true` is black.
    pixels: Vec<bool>,
}

impl BinaryImage {
    pub fn new(width: usize, height: usize, pixels: Vec<bool>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(VcsError::Image(format!(
                "{} pixels for a {width}x{height} image",
                pixels.len()
            )));
        }
        Ok(BinaryImage { width, height, pixels })
    }

    pub fn blank(width: usize, height: usize) -> Self {
        BinaryImage {
            width,
            height,
            pixels: vec![false; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let pixels = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        BinaryImage { width, height, pixels }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[bool] {
        &self.pixels
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, black: bool) {
        self.pixels[y * self.width + x] = black;
    }

    /// Plain PBM: `P1`, width and height, then one digit per pixel.
    pub fn to_pbm(&self) -> String {
        const LINE: usize = 70;
        let mut out = format!("P1\n{} {}\n", self.width, self.height);
        for row in self.pixels.chunks(self.width.max(1)) {
            for chunk in row.chunks(LINE) {
                for &p in chunk {
                    out.push(if p { '1' } else { '0' });
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn read_pbm(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| VcsError::Image(format!("{}: {e}", path.display())))?;
        text.parse()
    }

    pub fn write_pbm(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_pbm()).map_err(|e| VcsError::Image(format!("{}: {e}", path.display())))
    }
}

impl FromStr for BinaryImage {
    type Err = VcsError;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: &str| VcsError::Image(msg.to_string());
        // Drop comments, then split into header tokens and pixel digits.
        let body: String = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join("\n");
        let mut rest = body.trim_start();
        let mut header = Vec::new();
        while header.len() < 3 {
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            if end == 0 {
                return Err(bad("truncated header"));
            }
            header.push(&rest[..end]);
            rest = rest[end..].trim_start();
        }
        if header[0] != "P1" {
            return Err(bad("not a plain PBM (expected P1)"));
        }
        let dim = |s: &str| s.parse::<usize>().map_err(|_| bad("bad dimension"));
        let (width, height) = (dim(header[1])?, dim(header[2])?);
        let mut pixels = Vec::with_capacity(width * height);
        for c in rest.chars().filter(|c| !c.is_whitespace()) {
            match c {
                '0' => pixels.push(false),
                '1' => pixels.push(true),
                other => return Err(VcsError::Image(format!("unexpected character {other:?}"))),
            }
        }
        BinaryImage::new(width, height, pixels)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    #[default]
    Strip,
    Grid,
}

impl FromStr for Layout {
    type Err = VcsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strip" => Ok(Layout::Strip),
            "grid" => Ok(Layout::Grid),
            other => Err(VcsError::Image(format!("unknown layout {other:?}"))),
        }
    }
}

/// How secret pixels map to subpixel blocks in the shares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Geometry {
    pub width: usize,
    pub height: usize,
    pub m: usize,
    pub layout: Layout,
}

impl Geometry {
    /// Block width and height in subpixels.
    pub fn block(&self) -> (usize, usize) {
        match self.layout {
            Layout::Strip => (self.m, 1),
            Layout::Grid => {
                let w = (1..=self.m).find(|w| w * w >= self.m).unwrap_or(1);
                (w, self.m.div_ceil(w))
            }
        }
    }

    pub fn share_size(&self) -> (usize, usize) {
        let (bw, bh) = self.block();
        (self.width * bw, self.height * bh)
    }

    /// Share coordinates of subpixel `j` of secret pixel `(x, y)`.
    pub fn subpixel(&self, x: usize, y: usize, j: usize) -> (usize, usize) {
        let (bw, bh) = self.block();
        (x * bw + j % bw, y * bh + j / bw)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareSet {
    pub geometry: Geometry,
    pub seed: u64,
    /// Share `i` belongs to participant `i + 1`.
    pub shares: Vec<BinaryImage>,
}

impl ShareSet {
    pub fn n(&self) -> usize {
        self.shares.len()
    }

    /// Stacks the shares of the participants in `x`.
    pub fn stack_set(&self, x: Subset) -> Result<BinaryImage> {
        let picked: Vec<&BinaryImage> = x
            .iter()
            .map(|p| {
                self.shares.get(p - 1).ok_or(VcsError::ParticipantOutOfRange {
                    participant: p,
                    n: self.n(),
                })
            })
            .collect::<Result<_>>()?;
        stack(&picked)
    }
}

enum Sampler<'a> {
    Basis(&'a crate::matrix::BasisScheme),
    Collection([(Vec<&'a BitMatrix>, WeightedIndex<u64>); 2]),
}

impl<'a> Sampler<'a> {
    fn new(scheme: &'a Scheme) -> Result<Self> {
        Ok(match scheme {
            Scheme::Basis(b) => Sampler::Basis(b),
            Scheme::Collection(c) => {
                let side = |black: bool| -> Result<(Vec<&'a BitMatrix>, WeightedIndex<u64>)> {
                    let coll = c.collection_for(black);
                    let dist = WeightedIndex::new(coll.values().copied())
                        .map_err(|e| VcsError::InvalidMatrix(e.to_string()))?;
                    Ok((coll.keys().collect(), dist))
                };
                Sampler::Collection([side(false)?, side(true)?])
            }
        })
    }

    fn sample(&self, black: bool, rng: &mut ChaCha8Rng) -> BitMatrix {
        match self {
            Sampler::Basis(b) => sample_share_matrix(b, black, rng),
            Sampler::Collection(sides) => {
                let (mats, dist) = &sides[usize::from(black)];
                mats[dist.sample(rng)].clone()
            }
        }
    }
}

/// Splits `image` into one share per participant after checking that
/// `scheme` is valid for `gamma`.
pub fn encrypt_image(
    scheme: &Scheme,
    gamma: &AccessStructure,
    image: &BinaryImage,
    seed: u64,
    layout: Layout,
) -> Result<ShareSet> {
    let report = verify_scheme(gamma, scheme, &VerifyOptions::default())?;
    if !report.valid {
        return Err(VcsError::Unverified(format!(
            "{} violations, alpha {}",
            report.violations.len(),
            crate::verify::rational_string(report.alpha)
        )));
    }
    if image.is_empty() {
        return Err(VcsError::Image("image has no pixels".into()));
    }
    let sampler = Sampler::new(scheme)?;
    let matrices: Vec<BitMatrix> = image
        .pixels()
        .par_iter()
        .enumerate()
        .map(|(i, &black)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            sampler.sample(black, &mut rng)
        })
        .collect();
    let geometry = Geometry {
        width: image.width(),
        height: image.height(),
        m: scheme.m(),
        layout,
    };
    let (sw, sh) = geometry.share_size();
    let mut shares = vec![BinaryImage::blank(sw, sh); scheme.n()];
    for (i, mat) in matrices.iter().enumerate() {
        let (x, y) = (i % image.width(), i / image.width());
        for (r, share) in shares.iter_mut().enumerate() {
            for j in 0..geometry.m {
                if mat.get(r, j) {
                    let (sx, sy) = geometry.subpixel(x, y, j);
                    share.set(sx, sy, true);
                }
            }
        }
    }
    Ok(ShareSet { geometry, seed, shares })
}

/// Pixelwise OR.
pub fn stack(shares: &[&BinaryImage]) -> Result<BinaryImage> {
    let (first, rest) = shares
        .split_first()
        .ok_or_else(|| VcsError::Image("nothing to stack".into()))?;
    let mut out = (*first).clone();
    for s in rest {
        if s.width != out.width || s.height != out.height {
            return Err(VcsError::Image(format!(
                "cannot stack {}x{} with {}x{}",
                out.width, out.height, s.width, s.height
            )));
        }
        for (o, &p) in out.pixels.iter_mut().zip(&s.pixels) {
            *o |= p;
        }
    }
    Ok(out)
}

/// Black subpixels in each secret pixel's block, row-major.
pub fn block_weights(stacked: &BinaryImage, geometry: &Geometry) -> Result<Vec<usize>> {
    if (stacked.width, stacked.height) != geometry.share_size() {
        return Err(VcsError::Image(format!(
            "stacked image is {}x{}, geometry expects {:?}",
            stacked.width,
            stacked.height,
            geometry.share_size()
        )));
    }
    Ok((0..geometry.height)
        .flat_map(|y| (0..geometry.width).map(move |x| (x, y)))
        .map(|(x, y)| {
            (0..geometry.m)
                .filter(|&j| {
                    let (sx, sy) = geometry.subpixel(x, y, j);
                    stacked.get(sx, sy)
                })
                .count()
        })
        .collect())
}

/// How a block weight is read back as a secret pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Readout {
    /// Black iff the weight is at least the threshold.
    AtLeast(usize),
    /// Black iff the weight exceeds the white weight.
    Above(usize),
    /// Black iff the weight is below the white weight.
    Below(usize),
    /// Black iff the weight differs from the white weight.
    Differs(usize),
}

impl Readout {
    pub fn is_black(self, w: usize) -> bool {
        match self {
            Readout::AtLeast(t) => w >= t,
            Readout::Above(t) => w > t,
            Readout::Below(t) => w < t,
            Readout::Differs(t) => w != t,
        }
    }

    /// The readout a verifier report prescribes for the qualified set `x`.
    pub fn for_set(report: &VerifyReport, x: Subset) -> Option<Readout> {
        let t = *report.thresholds.get(&x)?;
        Some(match report.model {
            1 | 2 => Readout::AtLeast(t),
            _ => match report.directions.get(&x)? {
                Direction::Darker => Readout::Above(t),
                Direction::Lighter => Readout::Below(t),
                Direction::Mixed => Readout::Differs(t),
            },
        })
    }
}

pub fn reconstruct(stacked: &BinaryImage, geometry: &Geometry, readout: Readout) -> Result<BinaryImage> {
    let pixels = block_weights(stacked, geometry)?
        .into_iter()
        .map(|w| readout.is_black(w))
        .collect();
    BinaryImage::new(geometry.width, geometry.height, pixels)
}

/// Exact distribution of the stacked subpixel pattern of `x` for one
/// secret color: over all column permutations for basis schemes, over the
/// weighted collection otherwise.
pub fn stacked_pattern_distribution(scheme: &Scheme, x: Subset, black: bool) -> Result<BTreeMap<Vec<bool>, u64>> {
    if x.max().is_some_and(|p| p > scheme.n()) {
        return Err(VcsError::ParticipantOutOfRange {
            participant: x.max().unwrap(),
            n: scheme.n(),
        });
    }
    let mut out = BTreeMap::new();
    match scheme {
        Scheme::Basis(b) => {
            const MAX_PERMUTED_COLUMNS: usize = 8;
            if b.m() > MAX_PERMUTED_COLUMNS {
                return Err(VcsError::CapExceeded {
                    what: "pixel expansion for exact distributions",
                    value: b.m(),
                    cap: MAX_PERMUTED_COLUMNS,
                });
            }
            for perm in permutations(b.m()) {
                let pattern = b.basis_for(black).permute_columns(&perm).or_rows(x)?;
                *out.entry(pattern).or_insert(0) += 1;
            }
        }
        Scheme::Collection(c) => {
            for (mat, &f) in c.collection_for(black) {
                *out.entry(mat.or_rows(x)?).or_insert(0) += f;
            }
        }
    }
    Ok(out)
}

/// Equal as probability distributions.
pub fn same_pattern_distribution(a: &BTreeMap<Vec<bool>, u64>, b: &BTreeMap<Vec<bool>, u64>) -> bool {
    let ta: u128 = a.values().map(|&f| f as u128).sum();
    let tb: u128 = b.values().map(|&f| f as u128).sum();
    a.len() == b.len()
        && a
            .iter()
            .all(|(k, &fa)| b.get(k).is_some_and(|&fb| fa as u128 * tb == fb as u128 * ta))
}
