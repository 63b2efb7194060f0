//! Hausdorff separation of distinct minimal maps, and the upper-region
//! witness that makes lower constraints redundant for continuous functions.

use crate::cusco::CuscoMap;
use crate::error::{Error, Result};
use crate::piecewise::{Affine, PiecewiseFn};
use crate::rational::{half, midpoint, min_q, qi, ExtQ, Q};
use crate::region::{meets, subdivision, OpenRegion, XYBox};
use num_traits::Signed;

/// The output of `separate`: a point where the two maps are single-valued
/// with different values, and two disjoint neighborhoods built around it.
/// Each region is the union of the two half-strips avoiding the point with
/// a band around the respective value, so the fibers at the point are
/// disjoint and no map with nonempty fibers belongs to both.
#[derive(Clone, Debug, PartialEq)]
pub struct Separation {
    pub point: Q,
    pub first_value: Q,
    pub second_value: Q,
    pub first: OpenRegion,
    pub second: OpenRegion,
}

/// Separates two distinct minimal maps: finds a point of the common
/// single-valued set where the values differ and wraps each map in an open
/// region; the regions' fibers at that point are disjoint intervals.
pub fn separate(f: &CuscoMap, g: &CuscoMap) -> Result<Separation> {
    if f.space() != g.space() {
        return Err(Error::DomainMismatch);
    }
    if !f.is_minimal().minimal || !g.is_minimal().minimal {
        return Err(Error::NotMinimal);
    }
    let (x, fv, gv) = find_separating_point(f, g)?;
    let radius = half(&half(&(&fv - &gv).abs()));
    let first = point_band_region(f.space(), &x, &fv, &radius)?;
    let second = point_band_region(f.space(), &x, &gv, &radius)?;
    Ok(Separation {
        point: x,
        first_value: fv,
        second_value: gv,
        first,
        second,
    })
}

/// A point of the common single-valued set with different values. Distinct
/// minimal maps must differ on some open cell of the common subdivision:
/// their envelopes are determined by the single-valued parts, so equality
/// off the exceptional points would force equality everywhere.
fn find_separating_point(f: &CuscoMap, g: &CuscoMap) -> Result<(Q, Q, Q)> {
    let space = f.space().clone();
    let grid = subdivision(
        &space,
        &[
            f.lower().breakpoints(),
            f.upper().breakpoints(),
            g.lower().breakpoints(),
            g.upper().breakpoints(),
        ],
    );
    let fl = f.lower().refine(&grid);
    let gl = g.lower().refine(&grid);
    for (i, w) in grid.windows(2).enumerate() {
        let (u, v) = (&w[0], &w[1]);
        let a = &fl.pieces()[i];
        let b = &gl.pieces()[i];
        if a == b {
            continue;
        }
        // The laws differ, so they agree at most once in the cell.
        let mut x = midpoint(u, v);
        if a.eval(&x) == b.eval(&x) {
            x = midpoint(u, &x);
        }
        return Ok((x.clone(), a.eval(&x), b.eval(&x)));
    }
    Err(Error::MapsEqual)
}

/// The region `((a, x) x R) ∪ ((x, b) x R) ∪ (X x (v - r, v + r))`: an open
/// neighborhood of any map passing through (x, v) whose fiber at x is
/// pinned near v.
fn point_band_region(
    space: &crate::space::SpaceX,
    x: &Q,
    v: &Q,
    radius: &Q,
) -> Result<OpenRegion> {
    let a = space.a();
    let b = space.b();
    let mut boxes = vec![XYBox::band(
        space,
        ExtQ::Fin(v - radius),
        ExtQ::Fin(v + radius),
    )];
    if *x > *a {
        boxes.push(XYBox::new(a - qi(1), x.clone(), ExtQ::NegInf, ExtQ::PosInf));
    }
    if *x < *b {
        boxes.push(XYBox::new(x.clone(), b + qi(1), ExtQ::NegInf, ExtQ::PosInf));
    }
    OpenRegion::new(space.clone(), boxes)
}

/// Certificate that two regions separate: some point of X has disjoint
/// fibers, so no map with nonempty fibers lies in both upper sets.
pub fn fiberwise_disjoint_somewhere(u: &OpenRegion, v: &OpenRegion) -> Result<Option<Q>> {
    let w = u.intersect(v)?;
    let space = u.space().clone();
    let grid = subdivision(&space, &[&u.cut_points(), &v.cut_points()]);
    for x in &grid {
        if space.contains(x) && w.fiber_at(x).is_empty() {
            return Ok(Some(x.clone()));
        }
    }
    for win in grid.windows(2) {
        let m = midpoint(&win[0], &win[1]);
        if w.fiber_on_cell(&win[0], &win[1]).is_empty() && space.contains(&m) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// The witness of `upper_witness_for_lower`: the produced region plus the
/// closed core and the window box certifying it.
#[derive(Clone, Debug, PartialEq)]
pub struct UpperWitness {
    pub region: OpenRegion,
    /// Closed interval of X on which members are trapped in the window.
    pub core: (Q, Q),
    /// The box `U x J ⊆ W` that the core forces members into.
    pub window: XYBox,
}

/// For a continuous h meeting the open region W, builds a region G
/// containing h such that every continuous function contained in G meets
/// W: outside a closed core the region is a full strip, and over the core
/// it is a window box inside W around the graph of h.
pub fn upper_witness_for_lower(h: &PiecewiseFn, w: &OpenRegion) -> Result<UpperWitness> {
    let hc = CuscoMap::of_continuous(h)?;
    let m = meets(&hc, w)?;
    let (x0, y0) = match m.witness {
        Some(p) if m.holds => p,
        _ => return Err(Error::NoIntersection),
    };
    // A single open box of W covers the witness point; the window lives
    // inside it.
    let space = h.space().clone();
    let cover = w
        .boxes()
        .iter()
        .find(|b| {
            b.x_lo < x0
                && x0 < b.x_hi
                && b.y_lo < ExtQ::Fin(y0.clone())
                && ExtQ::Fin(y0.clone()) < b.y_hi
        })
        .expect("an open box covers the witness");
    let reach = min_q(&x0 - &cover.x_lo, &cover.x_hi - &x0);
    let j_lo = match &cover.y_lo {
        ExtQ::Fin(c) => midpoint(c, &y0),
        _ => &y0 - qi(1),
    };
    let j_hi = match &cover.y_hi {
        ExtQ::Fin(c) => midpoint(&y0, c),
        _ => &y0 + qi(1),
    };
    // Shrink the window until h maps it into (j_lo, j_hi): h(x0) = y0 is
    // strictly inside, so a small enough radius works.
    let mut delta = half(&half(&reach));
    let mut settled = false;
    for _ in 0..128 {
        let lo = &x0 - &delta;
        let hi = &x0 + &delta;
        if graph_inside(h, &lo, &hi, &j_lo, &j_hi)? {
            settled = true;
            break;
        }
        delta = half(&delta);
    }
    if !settled {
        return Err(Error::Internal("witness window failed to stabilize"));
    }
    let core = (&x0 - half(&delta), &x0 + half(&delta));
    let window = XYBox::new(
        &x0 - &delta,
        &x0 + &delta,
        ExtQ::Fin(j_lo.clone()),
        ExtQ::Fin(j_hi.clone()),
    );

    let a = space.a();
    let b = space.b();
    let mut boxes = vec![window.clone()];
    if core.0 > *a {
        boxes.push(XYBox::new(
            a - qi(1),
            core.0.clone(),
            ExtQ::NegInf,
            ExtQ::PosInf,
        ));
    }
    if core.1 < *b {
        boxes.push(XYBox::new(
            core.1.clone(),
            b + qi(1),
            ExtQ::NegInf,
            ExtQ::PosInf,
        ));
    }
    let region = OpenRegion::new(space, boxes)?;
    debug_assert!(crate::region::contains_map_region(&hc, &region)?.holds);
    Ok(UpperWitness {
        region,
        core,
        window,
    })
}

/// Exact check that h maps [lo, hi] ∩ X into (j_lo, j_hi).
fn graph_inside(h: &PiecewiseFn, lo: &Q, hi: &Q, j_lo: &Q, j_hi: &Q) -> Result<bool> {
    let h2 = h.refine(&[lo.clone(), hi.clone()]);
    let grid = h2.breakpoints().to_vec();
    for (i, x) in grid.iter().enumerate() {
        if *x >= *lo && *x <= *hi && h2.space().contains(x) {
            let y = h2.eval(x)?;
            if y <= *j_lo || y >= *j_hi {
                return Ok(false);
            }
        }
        if i + 1 < grid.len() && *x >= *lo && grid[i + 1] <= *hi {
            let law = &h2.pieces()[i];
            for e in [x, &grid[i + 1]] {
                let y = law.eval(e);
                if y <= *j_lo || y >= *j_hi {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
