//! Complete k-ary trees, their edge colorings and nonrepetitiveness checks.
//!
//! Edges are named by their child endpoint, so a coloring is a flat array
//! over vertex labels. A path between two vertices climbs to their lowest
//! common ancestor and descends again; since every sub-path is a path, a
//! coloring is nonrepetitive exactly when no path reads a square as a whole
//! word.

mod canon;
mod constructions;
mod search;
mod shape;

pub use canon::{canonical_form, is_canonical};
pub use constructions::{
    corollary_small_h, extend_t24_example, figure1_type_i, figure1_type_ii, figure2,
    sv_coloring_h2, theorem3_coloring, verify_theorem2_forward,
};
pub use search::{
    chromatic_index_exact, thue_chromatic_index, trivial_lower_bound, ChromaticReport, PiOptions,
    SearchMode,
};
pub use shape::{TreeShape, MAX_VERTICES};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequences::{Sequence, Square};

/// An edge coloring of a [`TreeShape`] with 1-based colors; 0 marks an
/// uncolored edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    shape: TreeShape,
    palette: u32,
    // indexed by vertex label; slots 0 and 1 are unused
    colors: Vec<u32>,
}

impl EdgeColoring {
    /// All edges uncolored.
    pub fn uncolored(shape: TreeShape, palette: u32) -> Self {
        EdgeColoring {
            shape,
            palette,
            colors: vec![0; shape.vertex_count() + 1],
        }
    }

    /// `colors[i]` is the color of the edge to vertex `i + 2`.
    pub fn new(shape: TreeShape, palette: u32, colors: &[u32]) -> Result<Self> {
        if colors.len() != shape.edge_count() {
            return Err(Error::InvalidParameter(format!(
                "T_({},{}) has {} edges, got {} colors",
                shape.k(),
                shape.h(),
                shape.edge_count(),
                colors.len()
            )));
        }
        let mut out = Self::uncolored(shape, palette);
        for (i, &c) in colors.iter().enumerate() {
            out.set(i + 2, c)?;
        }
        Ok(out)
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    /// Color of the edge from `parent(v)` to `v`.
    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn set(&mut self, v: usize, color: u32) -> Result<()> {
        if v < 2 || v > self.shape.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "no edge ends at vertex {v}"
            )));
        }
        if color > self.palette {
            return Err(Error::InvalidParameter(format!(
                "color {color} on the edge to {v} exceeds the palette {}",
                self.palette
            )));
        }
        self.colors[v] = color;
        Ok(())
    }

    /// Edge colors in vertex order `2 ..= vertex_count`.
    pub fn edge_colors(&self) -> &[u32] {
        &self.colors[2..]
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen: Vec<u32> = self
            .edge_colors()
            .iter()
            .copied()
            .filter(|&c| c > 0)
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Whether adjacent edges always differ.
    pub fn is_proper(&self) -> bool {
        (2..=self.shape.vertex_count()).all(|v| {
            let p = self.shape.parent(v);
            (p == 1 || self.colors[p] != self.colors[v])
                && self
                    .shape
                    .children(p)
                    .take_while(|&w| w < v)
                    .all(|w| self.colors[w] != self.colors[v])
        })
    }

    /// The coloring restricted to the first `h` levels.
    pub fn restrict(&self, h: usize) -> Result<EdgeColoring> {
        let shape = TreeShape::new(self.shape.k(), h)?;
        if h > self.shape.h() {
            return Err(Error::InvalidParameter(format!(
                "cannot restrict height {} to {h}",
                self.shape.h()
            )));
        }
        EdgeColoring::new(shape, self.palette, &self.colors[2..=shape.vertex_count()])
    }

    /// Colors along the path from `u` to `v`.
    pub fn path_word(&self, u: usize, v: usize) -> Vec<u32> {
        let (mut a, mut b) = (u, v);
        let (mut da, mut db) = (self.shape.depth(a), self.shape.depth(b));
        let mut from_u = Vec::new();
        let mut from_v = Vec::new();
        while da > db {
            from_u.push(self.colors[a]);
            a = self.shape.parent(a);
            da -= 1;
        }
        while db > da {
            from_v.push(self.colors[b]);
            b = self.shape.parent(b);
            db -= 1;
        }
        while a != b {
            from_u.push(self.colors[a]);
            from_v.push(self.colors[b]);
            a = self.shape.parent(a);
            b = self.shape.parent(b);
        }
        from_v.reverse();
        from_u.extend(from_v);
        from_u
    }
}

/// File form of a coloring: `colors[i]` colors the edge to vertex `i + 2`.
#[derive(Serialize, Deserialize)]
struct ColoringFile {
    k: usize,
    h: usize,
    palette: u32,
    colors: Vec<u32>,
}

impl Serialize for EdgeColoring {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ColoringFile {
            k: self.shape.k(),
            h: self.shape.h(),
            palette: self.palette,
            colors: self.edge_colors().to_vec(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for EdgeColoring {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let f = ColoringFile::deserialize(de)?;
        let shape = TreeShape::new(f.k, f.h).map_err(serde::de::Error::custom)?;
        EdgeColoring::new(shape, f.palette, &f.colors).map_err(serde::de::Error::custom)
    }
}

/// A path whose color word is a square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub u: usize,
    pub v: usize,
    /// Colors read from `u` to `v`.
    pub color_word: Vec<u32>,
    pub square: Square,
}

/// Colors the edge to `v` with `s_i` where `i` is the sum of the child
/// positions along the path from the root to `v`.
pub fn derived_coloring(shape: TreeShape, seq: &Sequence) -> Result<EdgeColoring> {
    let required = shape.k() * shape.h();
    if seq.len() < required {
        return Err(Error::SequenceTooShort {
            required,
            actual: seq.len(),
        });
    }
    let mut index = vec![0usize; shape.vertex_count() + 1];
    let mut out = EdgeColoring::uncolored(shape, seq.alphabet_size());
    for v in 2..=shape.vertex_count() {
        index[v] = index[shape.parent(v)] + shape.child_position(v);
        out.colors[v] = seq.symbols()[index[v] - 1] + 1;
    }
    Ok(out)
}

/// The first repetitively colored path, or `None` if the coloring is
/// nonrepetitive. Paths are ordered by their larger endpoint, then by the
/// smaller one.
pub fn find_repetitive_path(coloring: &EdgeColoring) -> Result<Option<PathWitness>> {
    let shape = coloring.shape;
    if let Some(v) = (2..=shape.vertex_count()).find(|&v| coloring.colors[v] == 0) {
        return Err(Error::UncoloredEdge { vertex: v });
    }
    let mut scratch = PathScratch::default();
    for v in 2..=shape.vertex_count() {
        if let Some(u) = scratch.square_closing_at(&shape, &coloring.colors, v) {
            let color_word = coloring.path_word(u, v);
            let square = Square {
                start: 0,
                half_length: color_word.len() / 2,
            };
            return Ok(Some(PathWitness {
                u,
                v,
                color_word,
                square,
            }));
        }
    }
    Ok(None)
}

pub fn is_nonrepetitive(coloring: &EdgeColoring) -> Result<bool> {
    Ok(find_repetitive_path(coloring)?.is_none())
}

/// Buffers for [`PathScratch::square_closing_at`].
#[derive(Debug, Default, Clone)]
pub(crate) struct PathScratch {
    up: Vec<u32>,
    anc: Vec<usize>,
}

impl PathScratch {
    /// The least `u < v` such that the path from `u` to `v` reads a square,
    /// given that every edge to a vertex `<= v` is colored.
    ///
    /// Write the word from `v` as `U D`: `U` climbs `t` edges to an ancestor
    /// `a`, `D` descends `s` edges to `u`. Because `u < v`, `u` is no deeper
    /// than `v`, so `s <= t` and the half length `l` is at most `t`. The
    /// descent is then fully determined by `U`, and only paths with the
    /// required colors need to be followed.
    pub(crate) fn square_closing_at(
        &mut self,
        shape: &TreeShape,
        colors: &[u32],
        v: usize,
    ) -> Option<usize> {
        self.up.clear();
        self.anc.clear();
        self.anc.push(v);
        let mut x = v;
        while x > 1 {
            self.up.push(colors[x]);
            x = shape.parent(x);
            self.anc.push(x);
        }
        let up = &self.up;
        let mut best: Option<usize> = None;
        for t in 1..=up.len() {
            let a = self.anc[t];
            for l in t.div_ceil(2)..=t {
                if (0..t - l).any(|i| up[l + i] != up[i]) {
                    continue;
                }
                let s = 2 * l - t;
                let found = if s == 0 {
                    Some(a)
                } else {
                    descend(shape, colors, a, self.anc[t - 1], &up[t - l..l], v)
                };
                if let Some(u) = found {
                    best = Some(best.map_or(u, |b| b.min(u)));
                }
            }
        }
        best
    }
}

/// Least vertex `u < limit` reached from `a` by edges colored `need`, not
/// entering the child `avoid` first.
fn descend(
    shape: &TreeShape,
    colors: &[u32],
    a: usize,
    avoid: usize,
    need: &[u32],
    limit: usize,
) -> Option<usize> {
    let mut best = None;
    for c in shape.children(a) {
        if c >= limit {
            break;
        }
        if c == avoid || colors[c] != need[0] {
            continue;
        }
        let found = if need.len() == 1 {
            Some(c)
        } else {
            descend(shape, colors, c, 0, &need[1..], limit)
        };
        if let Some(u) = found {
            best = Some(best.map_or(u, |b: usize| b.min(u)));
        }
    }
    best
}
