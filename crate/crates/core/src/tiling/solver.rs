use super::{Grid, TilingInstance};

/// Finds a solution of side bound `n`, or `None`. Cells are filled row by
/// row trying tiles in declaration order, so the result is the
/// lexicographically least solution in row-major order.
pub fn solve(inst: &TilingInstance, n: usize) -> Option<Grid> {
    let side = n + 1;
    let total = side * side;
    let k = inst.num_tiles();
    let fits = |cells: &[usize], pos: usize, t: usize| {
        let (x, y) = (pos % side, pos / side);
        if pos == 0 && t != inst.upper_left() {
            return false;
        }
        if pos == total - 1 && t != inst.lower_right() {
            return false;
        }
        if x > 0 && !inst.matches_horizontally(cells[pos - 1], t) {
            return false;
        }
        if y > 0 && !inst.matches_vertically(cells[pos - side], t) {
            return false;
        }
        true
    };

    // `next[pos]` is the next tile to try at `pos`.
    let mut cells = vec![0usize; total];
    let mut next = vec![0usize; total];
    let mut pos = 0usize;
    loop {
        let placed = (next[pos]..k).find(|&t| fits(&cells, pos, t));
        match placed {
            Some(t) => {
                cells[pos] = t;
                next[pos] = t + 1;
                if pos + 1 == total {
                    return Some(Grid { n, cells });
                }
                pos += 1;
                next[pos] = 0;
            }
            None => {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
            }
        }
    }
}

/// The smallest `n <= max_n` with a solution, together with that solution.
pub fn solve_up_to(inst: &TilingInstance, max_n: usize) -> Option<Grid> {
    (0..=max_n).find_map(|n| solve(inst, n))
}

/// Every grid of side bound `n` over `num_tiles` tiles, in lexicographic
/// row-major order. There are `num_tiles^((n+1)^2)` of them.
pub fn all_grids(num_tiles: usize, n: usize) -> impl Iterator<Item = Grid> {
    let total = (n + 1) * (n + 1);
    let mut current = if num_tiles == 0 {
        None
    } else {
        Some(vec![0usize; total])
    };
    std::iter::from_fn(move || {
        let cells = current.take()?;
        let mut succ = cells.clone();
        let mut i = total;
        let advanced = loop {
            if i == 0 {
                break false;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < num_tiles {
                break true;
            }
            succ[i] = 0;
        };
        if advanced {
            current = Some(succ);
        }
        Some(Grid { n, cells })
    })
}
