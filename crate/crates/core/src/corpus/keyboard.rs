//! QWERTY letter adjacency.
//!
//! Letters sit on a staggered grid: the top row at x offset 0, the home row
//! shifted right by a quarter key and the bottom row by three quarters. Two
//! letters are neighbours when their centres are at most 1.3 key widths apart.

use super::CorpusError;

const ROWS: [(&str, f64); 3] = [("qwertyuiop", 0.0), ("asdfghjkl", 0.25), ("zxcvbnm", 0.75)];
const MAX_DISTANCE: f64 = 1.3;

fn position(c: char) -> Option<(f64, f64)> {
    ROWS.iter()
        .enumerate()
        .find_map(|(row, (keys, offset))| keys.find(c).map(|col| (col as f64 + offset, row as f64)))
}

/// Neighbours of `c` (case-folded), in alphabetical order.
pub fn keyboard_neighbors(c: char) -> Result<Vec<char>, CorpusError> {
    if !c.is_ascii_alphabetic() {
        return Err(CorpusError::NotALetter(c));
    }
    let c = c.to_ascii_lowercase();
    let (x, y) = position(c).expect("every ASCII letter is on the grid");
    Ok(('a'..='z')
        .filter(|&d| d != c)
        .filter(|&d| {
            let (dx, dy) = position(d).expect("every ASCII letter is on the grid");
            (dx - x).hypot(dy - y) <= MAX_DISTANCE
        })
        .collect())
}

pub fn are_adjacent(a: char, b: char) -> bool {
    keyboard_neighbors(a)
        .map(|n| n.contains(&b.to_ascii_lowercase()))
        .unwrap_or(false)
}
