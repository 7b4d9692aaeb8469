//! Vogel's algorithm: make Seifert circles coherently nested by R2 moves and
//! read off a braid.

use std::collections::HashMap;

use super::braid::BraidWord;
use super::pd::{Endpoint, PDCode};
use crate::error::{Error, Result};

/// Braid whose closure is isotopic to `d`. Split diagrams are braided piece
/// by piece and juxtaposed; crossingless circles become single strands.
pub fn vogel_to_braid(d: &PDCode) -> BraidWord {
    try_vogel_to_braid(d).expect("Vogel read-off of a braided diagram")
}

pub fn try_vogel_to_braid(d: &PDCode) -> Result<BraidWord> {
    let (pieces, loops) = d.pieces();
    let ac = d.arc_components();
    let mut strands = loops.len();
    let mut letters: Vec<i32> = Vec::new();
    for piece in pieces {
        let crossings: Vec<[usize; 4]> = piece.iter().map(|&k| d.crossings()[k]).collect();
        let signs: Vec<i8> = piece.iter().map(|&k| d.signs()[k]).collect();
        let mut comps: Vec<usize> = crossings.iter().flatten().map(|a| ac[a]).collect();
        comps.sort();
        comps.dedup();
        let components = comps.iter().map(|&c| d.components()[c].clone()).collect();
        let sub = PDCode::from_parts(crossings, signs, components)?;
        let b = braid_connected(&sub)?;
        let off = strands as i32;
        letters.extend(b.letters.iter().map(|&l| l.signum() * (l.abs() + off)));
        strands += b.strand_count;
    }
    BraidWord::new(strands.max(1), letters)
}

fn braid_connected(d: &PDCode) -> Result<BraidWord> {
    let mut cur = d.relabeled();
    let cap = 4 * (cur.crossing_count() + 4).pow(2);
    for _ in 0..cap {
        match find_defect(&cur) {
            Some((x, y)) => cur = vogel_move(&cur, x, y),
            None => return read_braid(&cur),
        }
    }
    Err(Error::Internal("Vogel moves did not terminate".into()))
}

/// Whether dart `(k, s)` runs along the orientation of its arc.
fn along(d: &PDCode, e: Endpoint) -> bool {
    !d.is_incoming(e.0, e.1)
}

/// First face (by index) with two darts on different Seifert circles running
/// the same way around it.
fn find_defect(d: &PDCode) -> Option<(Endpoint, Endpoint)> {
    let (_, circle_of) = d.seifert_circles();
    for face in d.faces() {
        for (i, &a) in face.iter().enumerate() {
            for &b in &face[i + 1..] {
                let ca = circle_of[&d.crossings()[a.0][a.1]];
                let cb = circle_of[&d.crossings()[b.0][b.1]];
                if ca != cb && along(d, a) == along(d, b) {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

/// Pushes the arc of dart `x` across the arc of dart `y` through their common
/// face, creating two crossings with `x` over.
fn vogel_move(d: &PDCode, x: Endpoint, y: Endpoint) -> PDCode {
    let oe = d.other_end_map();
    let base = d.max_label();
    let [xa, xm, xb, ya, ym, yb] = [1, 2, 3, 4, 5, 6].map(|i| base + i);
    let (x_arc, y_arc) = (d.crossings()[x.0][x.1], d.crossings()[y.0][y.1]);
    let (x_along, y_along) = (along(d, x), along(d, y));

    let mut crossings = d.crossings().to_vec();
    let x_end = oe[&x];
    let y_end = oe[&y];
    crossings[x.0][x.1] = xa;
    crossings[x_end.0][x_end.1] = xb;
    crossings[y.0][y.1] = ya;
    crossings[y_end.0][y_end.1] = yb;

    let mut signs = d.signs().to_vec();
    let ccw1 = [xa, ym, xm, yb];
    let ccw2 = [xb, ya, xm, ym];
    let (y_in1, y_in2) = if y_along { (ym, ya) } else { (yb, ym) };
    let (x_in1, x_in2) = if x_along { (xa, xm) } else { (xm, xb) };
    for (ccw, y_in, x_in) in [(ccw1, y_in1, x_in1), (ccw2, y_in2, x_in2)] {
        let r = ccw.iter().position(|&a| a == y_in).unwrap();
        let t = [ccw[r], ccw[(r + 1) % 4], ccw[(r + 2) % 4], ccw[(r + 3) % 4]];
        signs.push(if t[3] == x_in { 1 } else { -1 });
        crossings.push(t);
    }

    let split = |parts: [usize; 3], fwd: bool| -> Vec<usize> {
        if fwd {
            parts.to_vec()
        } else {
            parts.iter().rev().copied().collect()
        }
    };
    let components = d
        .components()
        .iter()
        .map(|comp| {
            let mut out = Vec::new();
            for &a in comp {
                if a == x_arc {
                    out.extend(split([xa, xm, xb], x_along));
                } else if a == y_arc {
                    out.extend(split([ya, ym, yb], y_along));
                } else {
                    out.push(a);
                }
            }
            out
        })
        .collect();
    PDCode::from_parts_unchecked(crossings, signs, components).relabeled()
}

/// Reads a braid from a diagram whose Seifert circles are coherently nested.
fn read_braid(d: &PDCode) -> Result<BraidWord> {
    let bad = |m: &str| Error::Internal(format!("braid read-off: {m}"));
    let faces = d.faces();
    let mut face_of: HashMap<Endpoint, usize> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for &e in f {
            face_of.insert(e, i);
        }
    }
    // regions: faces joined through the corners merged by smoothing
    let mut region: Vec<usize> = (0..faces.len()).collect();
    fn root(r: &mut [usize], x: usize) -> usize {
        let mut y = x;
        while r[y] != y {
            y = r[y];
        }
        r[x] = y;
        y
    }
    for k in 0..d.crossing_count() {
        let pairs = if d.signs()[k] > 0 { [(3, 1)] } else { [(0, 2)] };
        for (s, t) in pairs {
            let (a, b) = (
                root(&mut region, face_of[&(k, s)]),
                root(&mut region, face_of[&(k, t)]),
            );
            if a != b {
                region[a.max(b)] = a.min(b);
            }
        }
    }
    let ends = d.arc_ends();
    let (circles, _) = d.seifert_circles();
    let n = circles.len();
    // left and right region of each circle
    let sides: Vec<(usize, usize)> = circles
        .iter()
        .map(|c| {
            let e = ends[&c[0]];
            let left = root(&mut region, face_of[&e.tail]);
            let right = root(&mut region, face_of[&e.head]);
            (left, right)
        })
        .collect();
    // circles form a path of regions; walk it from one end
    let mut degree: HashMap<usize, usize> = HashMap::new();
    for &(l, r) in &sides {
        if l == r {
            return Err(bad("circle with the same region on both sides"));
        }
        *degree.entry(l).or_default() += 1;
        *degree.entry(r).or_default() += 1;
    }
    let start = *degree
        .iter()
        .filter(|(_, &v)| v == 1)
        .map(|(r, _)| r)
        .min()
        .ok_or_else(|| bad("no end region"))?;
    let mut order: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    let mut reg = start;
    for _ in 0..n {
        let c = (0..n)
            .find(|&c| !used[c] && (sides[c].0 == reg || sides[c].1 == reg))
            .ok_or_else(|| bad("circles are not nested"))?;
        used[c] = true;
        order.push(c);
        reg = if sides[c].0 == reg {
            sides[c].1
        } else {
            sides[c].0
        };
    }
    // a ray of faces from the start region crossing each circle once
    let oe = d.other_end_map();
    let circle_arcs: Vec<std::collections::HashSet<usize>> = circles
        .iter()
        .map(|c| c.iter().copied().collect())
        .collect();
    let mut face = (0..faces.len())
        .find(|&f| root(&mut region, f) == start)
        .unwrap();
    let mut cut: Vec<usize> = vec![0; n];
    for &c in &order {
        let dart = *faces[face]
            .iter()
            .find(|&&(k, s)| circle_arcs[c].contains(&d.crossings()[k][s]))
            .ok_or_else(|| bad("ray face misses the next circle"))?;
        cut[c] = d.crossings()[dart.0][dart.1];
        // face on the other side of this arc
        face = face_of[&oe[&dart]];
    }
    // crossing sequences along each circle after its cut arc
    let seqs: Vec<Vec<usize>> = circles
        .iter()
        .enumerate()
        .map(|(c, arcs)| {
            let p = arcs.iter().position(|&a| a == cut[c]).unwrap();
            (0..arcs.len())
                .map(|i| ends[&arcs[(p + i) % arcs.len()]].head.0)
                .collect()
        })
        .collect();
    // depth position of each circle: order[0] is innermost, strand n
    let mut pos = vec![0usize; n];
    for (i, &c) in order.iter().enumerate() {
        pos[c] = n - i;
    }
    let by_pos: Vec<usize> = {
        let mut v = vec![0; n];
        for c in 0..n {
            v[pos[c] - 1] = c;
        }
        v
    };
    let mut ptr = vec![0usize; n];
    let mut letters = Vec::with_capacity(d.crossing_count());
    while letters.len() < d.crossing_count() {
        let mut progressed = false;
        for i in 0..n.saturating_sub(1) {
            let (a, b) = (by_pos[i], by_pos[i + 1]);
            if ptr[a] < seqs[a].len()
                && ptr[b] < seqs[b].len()
                && seqs[a][ptr[a]] == seqs[b][ptr[b]]
            {
                let k = seqs[a][ptr[a]];
                letters.push(d.signs()[k] as i32 * (i as i32 + 1));
                ptr[a] += 1;
                ptr[b] += 1;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Err(bad("crossing order is inconsistent"));
        }
    }
    BraidWord::new(n, letters)
}
