//! The triangular grid of locations `(r, s, t)` with `r + s + t = d`, its
//! maximal lines, its adjacency relation, and its two kinds of 3-cliques.
//!
//! Locations are pictured as a triangle read row by row with `s` decreasing,
//! and `t` increasing left to right inside a row; for `d = 3`:
//!
//! ```text
//!          030
//!       120   021
//!    210   111   012
//! 300   201   102   003
//! ```
//!
//! Two locations are adjacent when they differ by one in exactly two
//! coordinates. A maximal line consists of every location sharing one fixed
//! coordinate value. The mutually adjacent triples split into two families:
//! *black* cliques `{(r, s, t), (r+1, s-1, t), (r, s-1, t+1)}` point the
//! same way as the whole triangle, while *white* cliques point the other
//! way and are indexed by the locations of the grid two sizes smaller, via
//! `(r, s, t) -> {(r+1, s+1, t), (r, s+1, t+1), (r+1, s, t+1)}`.

use std::fmt;

/// A location `(r, s, t)` in the triangular grid of diameter `r + s + t`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Location {
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

impl Location {
    pub fn new(r: usize, s: usize, t: usize) -> Self {
        Location { r, s, t }
    }

    /// The diameter of the grid this location belongs to.
    pub fn diameter(&self) -> usize {
        self.r + self.s + self.t
    }

    /// Adjacency: same diameter, equal in one coordinate, and apart by one
    /// in the other two.
    pub fn is_adjacent(&self, other: &Location) -> bool {
        if self.diameter() != other.diameter() {
            return false;
        }
        let diffs = [
            self.r.abs_diff(other.r),
            self.s.abs_diff(other.s),
            self.t.abs_diff(other.t),
        ];
        diffs.iter().all(|&d| d <= 1) && diffs.iter().sum::<usize>() == 2
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r, self.s, self.t)
    }
}

/// Every location of the diameter-`d` grid, in row-major picture order:
/// `s` decreasing, then `t` increasing within a row.
pub fn locations(d: usize) -> Vec<Location> {
    let mut out = Vec::with_capacity(location_count(d));
    for s in (0..=d).rev() {
        for t in 0..=(d - s) {
            out.push(Location::new(d - s - t, s, t));
        }
    }
    out
}

/// The number of locations, `(d + 1)(d + 2) / 2`.
pub fn location_count(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// The index of `loc` within [`locations`]`(d)`, or `None` if it belongs
/// to a different grid.
pub fn position(d: usize, loc: Location) -> Option<usize> {
    if loc.diameter() != d {
        return None;
    }
    let row = d - loc.s;
    Some(row * (row + 1) / 2 + loc.t)
}

/// One of the three coordinates of a location.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Axis {
    R,
    S,
    T,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::R, Axis::S, Axis::T];

    /// The coordinate of `loc` along this axis.
    pub fn coordinate(&self, loc: Location) -> usize {
        match self {
            Axis::R => loc.r,
            Axis::S => loc.s,
            Axis::T => loc.t,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::R => write!(f, "R"),
            Axis::S => write!(f, "S"),
            Axis::T => write!(f, "T"),
        }
    }
}

/// A maximal line: all locations with one coordinate pinned to a value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Line {
    pub axis: Axis,
    pub value: usize,
    /// Members ordered lexicographically by `(r, t)`.
    pub members: Vec<Location>,
}

/// The `3 (d + 1)` maximal lines of the diameter-`d` grid, grouped by axis
/// and then by pinned value.
pub fn maximal_lines(d: usize) -> Vec<Line> {
    let all = locations(d);
    let mut out = Vec::with_capacity(3 * (d + 1));
    for axis in Axis::ALL {
        for value in 0..=d {
            let mut members: Vec<Location> = all
                .iter()
                .copied()
                .filter(|loc| axis.coordinate(*loc) == value)
                .collect();
            members.sort_by_key(|loc| (loc.r, loc.t));
            out.push(Line {
                axis,
                value,
                members,
            });
        }
    }
    out
}

/// Which way a 3-clique points relative to the whole triangle.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CliqueColor {
    Black,
    White,
}

/// A mutually adjacent triple of locations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Clique {
    pub color: CliqueColor,
    /// For a black clique: the top location, then the lower-left, then the
    /// lower-right. For a white clique: the upper-left, upper-right, and
    /// bottom locations, which is clockwise order in the picture.
    pub members: [Location; 3],
}

impl Clique {
    /// The member at the larger row (the top of a black clique, used as
    /// its canonical base point).
    pub fn base(&self) -> Location {
        self.members[0]
    }
}

/// The `d (d + 1) / 2` black cliques, listed by their base location in
/// picture order.
pub fn black_cliques(d: usize) -> Vec<Clique> {
    locations(d)
        .into_iter()
        .filter(|loc| loc.s >= 1)
        .map(|loc| Clique {
            color: CliqueColor::Black,
            members: [
                loc,
                Location::new(loc.r + 1, loc.s - 1, loc.t),
                Location::new(loc.r, loc.s - 1, loc.t + 1),
            ],
        })
        .collect()
}

/// The `(d - 1) d / 2` white cliques, each paired with the location of the
/// diameter `d - 2` grid that indexes it, in picture order of that smaller
/// grid. Empty for `d < 2`.
pub fn white_cliques(d: usize) -> Vec<(Location, Clique)> {
    if d < 2 {
        return Vec::new();
    }
    locations(d - 2)
        .into_iter()
        .map(|loc| {
            let clique = Clique {
                color: CliqueColor::White,
                members: [
                    Location::new(loc.r + 1, loc.s + 1, loc.t),
                    Location::new(loc.r, loc.s + 1, loc.t + 1),
                    Location::new(loc.r + 1, loc.s, loc.t + 1),
                ],
            };
            (loc, clique)
        })
        .collect()
}
