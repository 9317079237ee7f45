//! Line-oriented instance files:
//!
//! ```text
//! colors: r g b
//! tile t0: top=r right=g bottom=r left=g
//! tile t1: top=g right=r bottom=g left=r
//! upper_left: t0
//! lower_right: t1
//! ```
//!
//! `#` starts a comment. Tile order fixes the encoding of tiles as values.

use std::fmt;

use super::{ColorId, Tile, TilingError, TilingInstance};

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: color `{color}` is not declared in `colors:`")]
    UndeclaredColor { line: usize, color: String },
    #[error("line {line}: no tile named `{name}`")]
    UnknownTile { line: usize, name: String },
    #[error("line {line}: duplicate {what} `{name}`")]
    Duplicate {
        line: usize,
        what: &'static str,
        name: String,
    },
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error(transparent)]
    Invalid(#[from] TilingError),
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_color(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct RawTile {
    line: usize,
    name: String,
    sides: [String; 4],
}

pub fn parse_instance(src: &str) -> Result<TilingInstance, InstanceError> {
    let mut colors: Option<(usize, Vec<String>)> = None;
    let mut tiles: Vec<RawTile> = Vec::new();
    let mut upper_left: Option<(usize, String)> = None;
    let mut lower_right: Option<(usize, String)> = None;

    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let syntax = |message: String| InstanceError::Syntax { line, message };
        let (head, rest) = text
            .split_once(':')
            .ok_or_else(|| syntax(format!("expected `key: value`, found `{text}`")))?;
        let head = head.trim();
        let rest = rest.trim();
        if head == "colors" {
            if colors.is_some() {
                return Err(syntax("`colors:` appears more than once".into()));
            }
            let mut names: Vec<String> = Vec::new();
            for c in rest.split_whitespace() {
                if !is_color(c) {
                    return Err(syntax(format!("`{c}` is not a valid color name")));
                }
                if names.iter().any(|n| n == c) {
                    return Err(InstanceError::Duplicate {
                        line,
                        what: "color",
                        name: c.into(),
                    });
                }
                names.push(c.into());
            }
            if names.is_empty() {
                return Err(syntax("`colors:` declares no colors".into()));
            }
            colors = Some((line, names));
        } else if head == "upper_left" || head == "lower_right" {
            if !is_ident(rest) {
                return Err(syntax(format!("expected a tile name after `{head}:`")));
            }
            let slot = if head == "upper_left" {
                &mut upper_left
            } else {
                &mut lower_right
            };
            if slot.is_some() {
                return Err(syntax(format!("`{head}:` appears more than once")));
            }
            *slot = Some((line, rest.to_string()));
        } else if let Some(name) = head.strip_prefix("tile") {
            let name = name.trim();
            if !head.starts_with("tile ") || !is_ident(name) {
                return Err(syntax(format!("expected `tile NAME:`, found `{head}:`")));
            }
            if tiles.iter().any(|t| t.name == name) {
                return Err(InstanceError::Duplicate {
                    line,
                    what: "tile",
                    name: name.into(),
                });
            }
            let mut sides: [Option<String>; 4] = Default::default();
            for field in rest.split_whitespace() {
                let (key, value) = field
                    .split_once('=')
                    .ok_or_else(|| syntax(format!("expected `side=color`, found `{field}`")))?;
                let idx = match key {
                    "top" => 0,
                    "right" => 1,
                    "bottom" => 2,
                    "left" => 3,
                    other => return Err(syntax(format!("unknown side `{other}`"))),
                };
                if sides[idx].replace(value.to_string()).is_some() {
                    return Err(syntax(format!("side `{key}` given twice")));
                }
            }
            let [Some(top), Some(right), Some(bottom), Some(left)] = sides else {
                return Err(syntax(format!(
                    "tile `{name}` must give top, right, bottom and left"
                )));
            };
            tiles.push(RawTile {
                line,
                name: name.into(),
                sides: [top, right, bottom, left],
            });
        } else {
            return Err(syntax(format!("unknown key `{head}`")));
        }
    }

    let (_, colors) = colors.ok_or(InstanceError::Missing("colors:"))?;
    if tiles.is_empty() {
        return Err(InstanceError::Missing("tile"));
    }
    let (ul_line, ul) = upper_left.ok_or(InstanceError::Missing("upper_left:"))?;
    let (lr_line, lr) = lower_right.ok_or(InstanceError::Missing("lower_right:"))?;

    let color_id = |line: usize, c: &str| {
        colors
            .iter()
            .position(|d| d == c)
            .map(ColorId)
            .ok_or_else(|| InstanceError::UndeclaredColor {
                line,
                color: c.into(),
            })
    };
    let mut resolved = Vec::with_capacity(tiles.len());
    for t in &tiles {
        let [top, right, bottom, left] = &t.sides;
        resolved.push(Tile {
            name: t.name.clone(),
            top: color_id(t.line, top)?,
            right: color_id(t.line, right)?,
            bottom: color_id(t.line, bottom)?,
            left: color_id(t.line, left)?,
        });
    }
    let tile_id = |line: usize, name: &str| {
        tiles
            .iter()
            .position(|t| t.name == name)
            .ok_or_else(|| InstanceError::UnknownTile {
                line,
                name: name.into(),
            })
    };
    let ul = tile_id(ul_line, &ul)?;
    let lr = tile_id(lr_line, &lr)?;
    Ok(TilingInstance::new(colors, resolved, ul, lr)?)
}

impl fmt::Display for TilingInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "colors: {}", self.colors.join(" "))?;
        for t in &self.tiles {
            writeln!(
                f,
                "tile {}: top={} right={} bottom={} left={}",
                t.name,
                self.color_name(t.top),
                self.color_name(t.right),
                self.color_name(t.bottom),
                self.color_name(t.left)
            )?;
        }
        writeln!(f, "upper_left: {}", self.tiles[self.upper_left].name)?;
        writeln!(f, "lower_right: {}", self.tiles[self.lower_right].name)
    }
}
