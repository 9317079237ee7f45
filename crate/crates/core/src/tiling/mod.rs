//! Tiling instances, a brute-force solver used as an independent oracle, and
//! the reduction from tiling to equivalence of two order-2 programs.
//!
//! Coordinates: a grid of side bound `n` has `(n+1) x (n+1)` cells. The
//! solution function `T(x, y)` is indexed by column `x` and row `y`, so
//! `T(0,0)` is the upper-left cell and `T(n,n)` the lower-right one.

mod format;
mod reduction;
mod solver;

use std::fmt;

pub use format::{parse_instance, InstanceError};
pub use reduction::{
    decode_grid_input, match_horizontally_term, match_vertically_term, mk_const_false, mk_verifier,
    reduce, reduction_type, table_of, tile_index, tile_term, tile_type_of, tile_value,
    tiles_equal_term, windows_term, Direction, Reduction,
};
pub use solver::{all_grids, solve, solve_up_to};

/// Index into [`TilingInstance::colors`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ColorId(pub usize);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tile {
    pub name: String,
    pub top: ColorId,
    pub right: ColorId,
    pub bottom: ColorId,
    pub left: ColorId,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TilingInstance {
    colors: Vec<String>,
    tiles: Vec<Tile>,
    upper_left: usize,
    lower_right: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum TilingError {
    #[error("an instance needs at least one tile")]
    NoTiles,
    #[error("corner tile index {0} is out of range")]
    BadCorner(usize),
    #[error("tile {tile} uses undeclared color index {color}")]
    BadColor { tile: String, color: usize },
    #[error("grid for n={n} must have {expected} cells, got {found}")]
    Dimension {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("grid cell holds tile index {index}, but the instance has {tiles} tiles")]
    BadTile { index: usize, tiles: usize },
}

impl TilingInstance {
    pub fn new(
        colors: Vec<String>,
        tiles: Vec<Tile>,
        upper_left: usize,
        lower_right: usize,
    ) -> Result<Self, TilingError> {
        if tiles.is_empty() {
            return Err(TilingError::NoTiles);
        }
        for corner in [upper_left, lower_right] {
            if corner >= tiles.len() {
                return Err(TilingError::BadCorner(corner));
            }
        }
        for t in &tiles {
            for c in [t.top, t.right, t.bottom, t.left] {
                if c.0 >= colors.len() {
                    return Err(TilingError::BadColor {
                        tile: t.name.clone(),
                        color: c.0,
                    });
                }
            }
        }
        Ok(TilingInstance {
            colors,
            tiles,
            upper_left,
            lower_right,
        })
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn num_tiles(&self) -> usize {
        self.tiles.len()
    }

    pub fn upper_left(&self) -> usize {
        self.upper_left
    }

    pub fn lower_right(&self) -> usize {
        self.lower_right
    }

    pub fn color_name(&self, c: ColorId) -> &str {
        &self.colors[c.0]
    }

    /// Tile `a` may sit immediately left of tile `b`.
    pub fn matches_horizontally(&self, a: usize, b: usize) -> bool {
        self.tiles[a].right == self.tiles[b].left
    }

    /// Tile `a` may sit immediately above tile `b`.
    pub fn matches_vertically(&self, a: usize, b: usize) -> bool {
        self.tiles[a].bottom == self.tiles[b].top
    }
}

/// A square of tile indices with side bound `n`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Grid {
    n: usize,
    cells: Vec<usize>,
}

impl Grid {
    pub fn new(n: usize, cells: Vec<usize>) -> Result<Self, TilingError> {
        let expected = (n + 1) * (n + 1);
        if cells.len() != expected {
            return Err(TilingError::Dimension {
                n,
                expected,
                found: cells.len(),
            });
        }
        Ok(Grid { n, cells })
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, TilingError> {
        let side = rows.len();
        if side == 0 {
            return Err(TilingError::Dimension {
                n: 0,
                expected: 1,
                found: 0,
            });
        }
        let n = side - 1;
        for row in &rows {
            if row.len() != side {
                return Err(TilingError::Dimension {
                    n,
                    expected: side * side,
                    found: rows.iter().map(Vec::len).sum(),
                });
            }
        }
        Grid::new(n, rows.concat())
    }

    pub fn constant(n: usize, tile: usize) -> Self {
        Grid {
            n,
            cells: vec![tile; (n + 1) * (n + 1)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        self.n + 1
    }

    /// Tile at column `x`, row `y`.
    pub fn at(&self, x: usize, y: usize) -> usize {
        self.cells[y * self.side() + x]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.side())
    }

    /// Rows of tile names separated by spaces.
    pub fn render(&self, inst: &TilingInstance) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let names: Vec<&str> = row.iter().map(|&t| inst.tiles[t].name.as_str()).collect();
            out.push_str(&names.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|t| t.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Whether `g` is a solution: the corners hold the designated tiles and all
/// horizontally and vertically adjacent tiles agree on their shared side.
/// Computed directly on the grid, independently of the lambda-calculus.
pub fn is_solution(inst: &TilingInstance, g: &Grid) -> Result<bool, TilingError> {
    if let Some(&bad) = g.cells.iter().find(|&&t| t >= inst.num_tiles()) {
        return Err(TilingError::BadTile {
            index: bad,
            tiles: inst.num_tiles(),
        });
    }
    let n = g.n;
    if g.at(0, 0) != inst.upper_left || g.at(n, n) != inst.lower_right {
        return Ok(false);
    }
    for y in 0..=n {
        for x in 0..n {
            if !inst.matches_horizontally(g.at(x, y), g.at(x + 1, y)) {
                return Ok(false);
            }
        }
    }
    for x in 0..=n {
        for y in 0..n {
            if !inst.matches_vertically(g.at(x, y), g.at(x, y + 1)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub const MONOCHROME: &str = "\
# one tile, every side the same colour
colors: a
tile t0: top=a right=a bottom=a left=a
upper_left: t0
lower_right: t0
";

    pub const CORNER_CLASH: &str = "\
colors: r g
tile red: top=r right=r bottom=r left=r
tile green: top=g right=g bottom=g left=g
upper_left: red
lower_right: green
";

    pub const DIAGONAL: &str = "\
colors: a b c
tile t0: top=a right=b bottom=b left=a
tile t1: top=b right=c bottom=c left=b
tile t2: top=c right=a bottom=a left=c
upper_left: t0
lower_right: t2
";

    pub const NO_HORIZONTAL: &str = "\
colors: a b c
tile t0: top=c right=b bottom=c left=a
tile t1: top=c right=b bottom=c left=a
upper_left: t0
lower_right: t0
";

    pub fn load(src: &str) -> TilingInstance {
        parse_instance(src).unwrap()
    }
}
