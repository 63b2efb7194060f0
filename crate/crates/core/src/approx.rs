//! Continuous approximation of cusco maps inside upper-Vietoris and full
//! Vietoris neighborhoods.
//!
//! The pipeline for an upper constraint: connectedize, clamp the fibers to
//! a bounded band around the map, insert one continuous function below the
//! lower profile and one above the upper profile, and return their average,
//! which lands strictly inside the constraint. Lower constraints are then
//! satisfied by piecewise-linear bumps through chosen witness points, and
//! tubes acquire pinch intervals that force every inner map to meet them.

use crate::cusco::CuscoMap;
use crate::error::{Error, Result};
use crate::insertion::insert_continuous;
use crate::piecewise::{Affine, PiecewiseFn};
use crate::rational::{half, midpoint, min_q, qi, ExtQ, Q};
use crate::refine::{fiber_bounds, tube_base_refine, FiberBounds};
use crate::region::{
    contains_map, contains_map_region, meets, member_nbhd, member_nbhd_fn, subdivision,
    OpenRegion, Tube, UpperRegion, VietorisNbhd,
};
use num_traits::{Signed, Zero};

/// A region intersected with a bounded horizontal band that still contains
/// the reference map.
#[derive(Clone, Debug, PartialEq)]
pub struct ClampedRegion {
    pub original: OpenRegion,
    pub clamped: OpenRegion,
    pub band: (Q, Q),
}

/// Intersects the region with the band `(min lower - 1, max upper + 1)`
/// around the map, replacing unbounded fibers by bounded ones without
/// losing containment.
pub fn clamp_bounds(map: &CuscoMap, region: &OpenRegion) -> Result<ClampedRegion> {
    let inside = contains_map_region(map, region)?;
    if !inside.holds {
        return Err(Error::NotContained(inside.witness.expect("witness")));
    }
    let lo = map.lower().infimum() - qi(1);
    let hi = map.upper().supremum() + qi(1);
    let clamped = region.clamp_to_band(&lo, &hi);
    debug_assert!(contains_map_region(map, &clamped)?.holds);
    Ok(ClampedRegion {
        original: region.clone(),
        clamped,
        band: (lo, hi),
    })
}

/// The sandwich built by the upper approximation, exposed for exact
/// verification: floor <= lower_insert <= map_lower <= map_upper <=
/// upper_insert <= ceiling with the floor strictly under the map and the
/// map strictly under the ceiling.
#[derive(Clone, Debug)]
pub struct SandwichTrace {
    pub floor: PiecewiseFn,
    pub lower_insert: PiecewiseFn,
    pub map_lower: PiecewiseFn,
    pub map_upper: PiecewiseFn,
    pub upper_insert: PiecewiseFn,
    pub ceiling: PiecewiseFn,
}

/// Continuous function with graph strictly inside the upper constraint.
pub fn approx_upper(map: &CuscoMap, region: &OpenRegion) -> Result<PiecewiseFn> {
    Ok(approx_upper_traced(map, &UpperRegion::Boxes(region.clone()))?.0)
}

/// Upper approximation for either kind of constraint, returning the
/// verification trace alongside the function.
pub fn approx_upper_traced(
    map: &CuscoMap,
    upper: &UpperRegion,
) -> Result<(PiecewiseFn, SandwichTrace)> {
    let FiberBounds { floor, ceiling } = fiber_bounds(map, upper)?;
    let lower_insert = insert_continuous(&floor, map.lower(), false)?;
    let upper_insert = insert_continuous(map.upper(), &ceiling, false)?;
    let g = lower_insert
        .add(&upper_insert)?
        .scale(&half(&qi(1)));
    let trace = SandwichTrace {
        floor,
        lower_insert,
        map_lower: map.lower().clone(),
        map_upper: map.upper().clone(),
        upper_insert,
        ceiling,
    };
    // The average lies strictly between floor and ceiling because
    // floor < map_lower and map_upper < ceiling.
    let gc = CuscoMap::of_continuous(&g)?;
    let check = contains_map(&gc, upper)?;
    if !check.holds {
        return Err(Error::Internal("upper approximation escaped the region"));
    }
    Ok((g, trace))
}

/// One pinch: a lower-constraint index, the closed interval of X on which
/// the tube fibers sit inside that constraint, and the vertical band used.
#[derive(Clone, Debug, PartialEq)]
pub struct Pinch {
    pub lower_index: usize,
    pub interval: (Q, Q),
    pub band: (Q, Q),
}

/// A tube plus the pinch intervals that certify its lower constraints.
#[derive(Clone, Debug, PartialEq)]
pub struct PinchedTube {
    pub tube: Tube,
    pub pinches: Vec<Pinch>,
}

/// Continuous member of a full Vietoris neighborhood: the upper
/// approximation, modified by one piecewise-linear bump per lower
/// constraint through a deterministically chosen witness point. Bumps have
/// pairwise disjoint supports and the function is unchanged outside them.
pub fn approx_vietoris(map: &CuscoMap, nbhd: &VietorisNbhd) -> Result<PiecewiseFn> {
    if !member_nbhd(map, nbhd)? {
        return Err(Error::NoIntersection);
    }
    let FiberBounds { floor, ceiling } = fiber_bounds(map, &nbhd.upper)?;
    let lower_insert = insert_continuous(&floor, map.lower(), false)?;
    let upper_insert = insert_continuous(map.upper(), &ceiling, false)?;
    let mut g = lower_insert.add(&upper_insert)?.scale(&half(&qi(1)));

    let mut used_points: Vec<Q> = Vec::new();
    let mut plans = Vec::new();
    for lower in &nbhd.lowers {
        let plan = plan_bump(&g, &floor, &ceiling, lower, &used_points)?;
        used_points.push(plan.center.clone());
        plans.push(plan);
    }
    // Shrink supports so they are pairwise disjoint.
    let shrunk: Vec<Q> = (0..plans.len())
        .map(|i| {
            let mut radius = plans[i].radius.clone();
            for (j, other) in plans.iter().enumerate() {
                if i != j {
                    let gap = half(&(&plans[i].center - &other.center).abs());
                    radius = min_q(radius, gap);
                }
            }
            radius
        })
        .collect();
    for (plan, r) in plans.iter_mut().zip(shrunk) {
        plan.radius = r;
    }
    for plan in &plans {
        g = apply_bump(&g, plan)?;
    }
    if !member_nbhd_fn(&g, nbhd)? {
        return Err(Error::Internal("bumped approximation left the neighborhood"));
    }
    Ok(g)
}

struct BumpPlan {
    center: Q,
    target: Q,
    radius: Q,
}

/// Chooses a witness point (x, t) in the intersection of the connected
/// upper set with the lower constraint, avoiding previously used centers.
/// The support radius only has to keep the bump inside the cell: there the
/// floor and ceiling are affine and all three bump vertices lie strictly
/// between them, so the piecewise comparison reduces to endpoints that
/// already hold.
fn plan_bump(
    g: &PiecewiseFn,
    floor: &PiecewiseFn,
    ceiling: &PiecewiseFn,
    lower: &OpenRegion,
    used: &[Q],
) -> Result<BumpPlan> {
    let space = g.space().clone();
    let grid = subdivision(
        &space,
        &[
            g.breakpoints(),
            floor.breakpoints(),
            ceiling.breakpoints(),
            &lower.cut_points(),
        ],
    );
    let floor = floor.refine(&grid);
    let ceiling = ceiling.refine(&grid);
    for w in grid.windows(2) {
        let (u, v) = (&w[0], &w[1]);
        let floor_law = law_on_cell(&floor, u);
        let ceil_law = law_on_cell(&ceiling, u);
        for comp in lower.fiber_on_cell(u, v) {
            // Need x with (floor(x), ceiling(x)) ∩ comp nonempty:
            // ceiling(x) > comp.lo and floor(x) < comp.hi.
            let sol = cell_overlap_interval(&floor_law, &ceil_law, &comp, u, v);
            let (sol_lo, sol_hi) = match sol {
                Some(s) => s,
                None => continue,
            };
            // Center: midpoint, shifted off used points deterministically.
            let mut center = midpoint(&sol_lo, &sol_hi);
            let mut step = (&sol_hi - &sol_lo) / qi(4);
            while used.contains(&center) && !step.is_zero() {
                step = half(&step);
                center = &sol_lo + &step;
            }
            if used.contains(&center) {
                continue;
            }
            // Vertical target strictly inside both the component and the
            // open fiber of the upper set at the center.
            let t_lo = comp.0.clone().max(ExtQ::Fin(floor_law.eval(&center)));
            let t_hi = comp.1.clone().min(ExtQ::Fin(ceil_law.eval(&center)));
            if t_lo >= t_hi {
                continue;
            }
            let target = pick_between(&t_lo, &t_hi);
            let radius = half(&min_q(&center - u, v - &center));
            return Ok(BumpPlan {
                center,
                target,
                radius,
            });
        }
    }
    Err(Error::NoIntersection)
}

fn law_on_cell(f: &PiecewiseFn, u: &Q) -> Affine {
    let i = f
        .breakpoint_index(u)
        .expect("cell endpoints are breakpoints of the refined profile");
    f.pieces()[i].clone()
}

/// The open x-subinterval of (u, v) where `(floor(x), ceiling(x))` meets
/// the component.
fn cell_overlap_interval(
    floor_law: &Affine,
    ceil_law: &Affine,
    comp: &(ExtQ, ExtQ),
    u: &Q,
    v: &Q,
) -> Option<(Q, Q)> {
    let (mut lo_x, mut hi_x) = (u.clone(), v.clone());
    let mut cut = |law: &Affine, c: &Q, want_above: bool| -> bool {
        let du = law.eval(&lo_x);
        let dv = law.eval(&hi_x);
        let ok_u = if want_above { du > *c } else { du < *c };
        let ok_v = if want_above { dv > *c } else { dv < *c };
        match (ok_u, ok_v) {
            (true, true) => true,
            (false, false) => false,
            _ => {
                let r = law
                    .crossing(&Affine::constant(c.clone()))
                    .expect("mixed signs require a crossing");
                if ok_u {
                    hi_x = r;
                } else {
                    lo_x = r;
                }
                lo_x < hi_x
            }
        }
    };
    if let ExtQ::Fin(c) = &comp.0 {
        if !cut(ceil_law, c, true) {
            return None;
        }
    }
    if let ExtQ::Fin(c) = &comp.1 {
        if !cut(floor_law, c, false) {
            return None;
        }
    }
    (lo_x < hi_x).then_some((lo_x, hi_x))
}

fn pick_between(lo: &ExtQ, hi: &ExtQ) -> Q {
    match (lo, hi) {
        (ExtQ::Fin(a), ExtQ::Fin(b)) => midpoint(a, b),
        (ExtQ::Fin(a), ExtQ::PosInf) => a + qi(1),
        (ExtQ::NegInf, ExtQ::Fin(b)) => b - qi(1),
        _ => qi(0),
    }
}

/// Replaces g on (center - r, center + r) by the two segments through
/// (center, target); the band choice keeps the result inside the tube.
fn apply_bump(g: &PiecewiseFn, plan: &BumpPlan) -> Result<PiecewiseFn> {
    let left = &plan.center - &plan.radius;
    let right = &plan.center + &plan.radius;
    let mut out = g.refine(&[left.clone(), plan.center.clone(), right.clone()]);
    let ci = out
        .breakpoint_index(&plan.center)
        .expect("center refined in");
    out.set_value(ci, plan.target.clone());
    let lv = out.pieces()[ci - 1].eval(&left);
    out.set_piece(
        ci - 1,
        Affine::through((&left, &lv), (&plan.center, &plan.target)),
    );
    let rv = out.pieces()[ci].eval(&right);
    out.set_piece(
        ci,
        Affine::through((&plan.center, &plan.target), (&right, &rv)),
    );
    Ok(out)
}

/// Tube around a continuous member of a Vietoris neighborhood whose closed
/// fibers sit inside the upper constraint, pinched over one closed
/// interval per lower constraint so that every cusco map inside the tube
/// meets it.
pub fn tube_with_pinches(h: &PiecewiseFn, nbhd: &VietorisNbhd) -> Result<PinchedTube> {
    let hc = CuscoMap::of_continuous(h)?;
    if !member_nbhd(&hc, nbhd)? {
        return Err(Error::NoIntersection);
    }
    let base = tube_base_refine(&hc, &nbhd.upper)?;
    let mut f0 = base.lower().clone();
    let mut g0 = base.upper().clone();
    let deep = f0.infimum() - qi(1);
    let high = g0.supremum() + qi(1);

    let mut pinches = Vec::new();
    let mut used: Vec<Q> = Vec::new();
    for (k, lower) in nbhd.lowers.iter().enumerate() {
        let plan = plan_pinch(h, &f0, &g0, lower, &used)?;
        used.push(plan.center.clone());
        let core_l = &plan.center - half(&plan.radius);
        let core_r = &plan.center + half(&plan.radius);
        let foot_l = &plan.center - &plan.radius;
        let foot_r = &plan.center + &plan.radius;
        let tent_floor = PiecewiseFn::interpolate(
            h.space().clone(),
            &tent_samples(
                h.space(),
                &foot_l,
                &core_l,
                &core_r,
                &foot_r,
                &plan.band.0,
                &deep,
            ),
        )?;
        let tent_ceil = PiecewiseFn::interpolate(
            h.space().clone(),
            &tent_samples(
                h.space(),
                &foot_l,
                &core_l,
                &core_r,
                &foot_r,
                &plan.band.1,
                &high,
            ),
        )?;
        f0 = f0.pointwise_max(&tent_floor)?;
        g0 = g0.pointwise_min(&tent_ceil)?;
        pinches.push(Pinch {
            lower_index: k,
            interval: (core_l, core_r),
            band: plan.band.clone(),
        });
    }
    let tube = Tube::new(f0, g0)?;
    // The pinched tube still contains h and its closure stays inside the
    // upper constraint because pinching only moves the profiles inward.
    debug_assert!(crate::region::contains_map_tube(&hc, &tube)?.holds);
    Ok(PinchedTube { tube, pinches })
}

struct PinchPlan {
    center: Q,
    radius: Q,
    /// Closed band [j_lo, j_hi] strictly inside the component, containing
    /// h on the support.
    band: (Q, Q),
}

/// Chooses a point where the graph of h enters the lower constraint, the
/// containing component, a support radius keeping h inside the component,
/// and a closed band between h and the component bounds.
fn plan_pinch(
    h: &PiecewiseFn,
    f0: &PiecewiseFn,
    g0: &PiecewiseFn,
    lower: &OpenRegion,
    used: &[Q],
) -> Result<PinchPlan> {
    let space = h.space().clone();
    let grid = subdivision(
        &space,
        &[
            h.breakpoints(),
            f0.breakpoints(),
            g0.breakpoints(),
            &lower.cut_points(),
        ],
    );
    let h = h.refine(&grid);
    for w in grid.windows(2) {
        let (u, v) = (&w[0], &w[1]);
        let h_law = law_on_cell(&h, u);
        for comp in lower.fiber_on_cell(u, v) {
            // x-interval where h(x) lies strictly inside the component.
            let sol = cell_overlap_interval(&h_law, &h_law, &comp, u, v);
            let (sol_lo, sol_hi) = match sol {
                Some(s) => s,
                None => continue,
            };
            let mut center = midpoint(&sol_lo, &sol_hi);
            let mut step = (&sol_hi - &sol_lo) / qi(4);
            while used.contains(&center) && !step.is_zero() {
                step = half(&step);
                center = &sol_lo + &step;
            }
            if used.contains(&center) {
                continue;
            }
            let mut radius = min_q(&center - &sol_lo, &sol_hi - &center);
            radius = half(&radius);
            if radius.is_zero() {
                continue;
            }
            // h on the closed support [center - r, center + r]: affine, so
            // its range is the segment between the endpoint values.
            let hl = h_law.eval(&(&center - &radius));
            let hr = h_law.eval(&(&center + &radius));
            let (h_min, h_max) = if hl <= hr { (hl, hr) } else { (hr, hl) };
            let j_lo = match &comp.0 {
                ExtQ::Fin(c) => midpoint(c, &h_min),
                _ => &h_min - qi(1),
            };
            let j_hi = match &comp.1 {
                ExtQ::Fin(c) => midpoint(&h_max, c),
                _ => &h_max + qi(1),
            };
            return Ok(PinchPlan {
                center,
                radius,
                band: (j_lo, j_hi),
            });
        }
    }
    Err(Error::NoIntersection)
}

/// Sample points of a tent profile: `base` outside the feet, `peak` on the
/// closed core, linear in between; punctures become sample points.
fn tent_samples(
    space: &crate::space::SpaceX,
    foot_l: &Q,
    core_l: &Q,
    core_r: &Q,
    foot_r: &Q,
    peak: &Q,
    base: &Q,
) -> Vec<(Q, Q)> {
    let a = space.a().clone();
    let b = space.b().clone();
    let mut pts = vec![(a.clone(), base.clone()), (b.clone(), base.clone())];
    for (x, y) in [
        (foot_l, base),
        (core_l, peak),
        (core_r, peak),
        (foot_r, base),
    ] {
        if *x > a && *x < b {
            pts.push((x.clone(), y.clone()));
        }
    }
    // Evaluate the tent at punctures so the interpolant is well formed.
    pts.sort_by(|l, r| l.0.cmp(&r.0));
    let puncture_pts: Vec<(Q, Q)> = space
        .punctures()
        .iter()
        .map(|p| (p.clone(), tent_eval(&pts, p)))
        .collect();
    pts.extend(puncture_pts);
    pts
}

fn tent_eval(pts: &[(Q, Q)], x: &Q) -> Q {
    for w in pts.windows(2) {
        if *x >= w[0].0 && *x <= w[1].0 {
            if w[0].0 == *x {
                return w[0].1.clone();
            }
            return Affine::through((&w[0].0, &w[0].1), (&w[1].0, &w[1].1)).eval(x);
        }
    }
    pts.last().expect("nonempty samples").1.clone()
}

/// Exact verification that the closed tube fibers over the pinch interval
/// lie inside the lower constraint's fiber, hence every map inside the
/// tube meets that constraint there.
pub fn verify_pinch(tube: &Tube, lower: &OpenRegion, pinch: &Pinch) -> Result<bool> {
    let (l, r) = &pinch.interval;
    let grid = subdivision(
        tube.space(),
        &[
            tube.lower().breakpoints(),
            tube.upper().breakpoints(),
            &lower.cut_points(),
            &[l.clone(), r.clone()],
        ],
    );
    let lo = tube.lower().refine(&grid);
    let hi = tube.upper().refine(&grid);
    let mut ok = true;
    for (i, x) in grid.iter().enumerate() {
        if x < l || x > r {
            continue;
        }
        if tube.space().contains(x) {
            let flo = lo.eval(x)?;
            let fhi = hi.eval(x)?;
            let inside = lower
                .fiber_at(x)
                .iter()
                .any(|(clo, chi)| *clo < ExtQ::Fin(flo.clone()) && ExtQ::Fin(fhi.clone()) < *chi);
            ok &= inside;
        }
        if i + 1 < grid.len() && grid[i + 1] <= *r && *x >= *l {
            let u = x;
            let v = &grid[i + 1];
            let li = lo.breakpoint_index(u).expect("grid");
            let comps = lower.fiber_on_cell(u, v);
            let m = midpoint(u, v);
            let c = comps.iter().find(|(clo, chi)| {
                *clo < ExtQ::Fin(lo.pieces()[li].eval(&m))
                    && ExtQ::Fin(hi.pieces()[li].eval(&m)) < *chi
            });
            match c {
                None => ok = false,
                Some(c) => {
                    let lo_ok = match &c.0 {
                        ExtQ::Fin(cv) => {
                            lo.pieces()[li].eval(u) >= *cv && lo.pieces()[li].eval(v) >= *cv
                        }
                        _ => true,
                    };
                    let hi_ok = match &c.1 {
                        ExtQ::Fin(cv) => {
                            hi.pieces()[li].eval(u) <= *cv && hi.pieces()[li].eval(v) <= *cv
                        }
                        _ => true,
                    };
                    ok &= lo_ok && hi_ok;
                }
            }
        }
    }
    Ok(ok)
}
