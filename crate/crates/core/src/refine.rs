//! Tube refinement of upper Vietoris neighborhoods.
//!
//! Given a map strictly inside an open upper constraint, the constraint is
//! connectedized and clamped to a bounded band, its fiber bounds become a
//! usc floor and an lsc ceiling, and two strict continuous insertions
//! produce a tube whose closed fibers still sit inside the constraint.
//! This is simultaneously the base property of tube sets, the regularity
//! chain, and the engine behind both game tactics.

use crate::approx::clamp_bounds;
use crate::cusco::CuscoMap;
use crate::error::{Error, Result};
use crate::insertion::{insert_continuous, monotone_approx, Direction};
use crate::piecewise::PiecewiseFn;
use crate::rational::{q, ExtQ, Q};
use crate::region::{
    contains_map, contains_map_region, subdivision, ClosedTube, Containment, OpenRegion, Tube,
    UpperRegion,
};

/// Piecewise fiber bounds of a connected open set around a map: a usc
/// floor and an lsc ceiling with floor < lower <= upper < ceiling.
pub(crate) struct FiberBounds {
    pub floor: PiecewiseFn,
    pub ceiling: PiecewiseFn,
}

/// Computes exact fiber bounds for the upper constraint around the map.
/// Box regions are connectedized and clamped first; tubes are their own
/// bounds.
pub(crate) fn fiber_bounds(map: &CuscoMap, upper: &UpperRegion) -> Result<FiberBounds> {
    match upper {
        UpperRegion::Tube(t) => {
            let inside = contains_map(map, upper)?;
            if !inside.holds {
                return Err(Error::NotContained(inside.witness.expect("witness")));
            }
            Ok(FiberBounds {
                floor: t.lower().clone(),
                ceiling: t.upper().clone(),
            })
        }
        UpperRegion::Boxes(w) => {
            let clamped = clamp_bounds(map, w)?;
            let g = crate::region::connectedize(&clamped.clamped, map)?;
            Ok(bounds_of_connected(map, &g))
        }
    }
}

/// Reads the single-interval fibers of a connectedized bounded region into
/// piecewise-constant profiles. The floor (fiber infimum) is usc and the
/// ceiling (fiber supremum) is lsc because overlap boxes at subdivision
/// points are intersections of the adjacent cell components.
fn bounds_of_connected(map: &CuscoMap, g: &OpenRegion) -> FiberBounds {
    let space = g.space().clone();
    let grid = subdivision(
        &space,
        &[
            map.lower().breakpoints(),
            map.upper().breakpoints(),
            &g.cut_points(),
        ],
    );
    let mut floor_vals: Vec<Option<Q>> = Vec::new();
    let mut ceil_vals: Vec<Option<Q>> = Vec::new();
    let mut floor_laws = Vec::new();
    let mut ceil_laws = Vec::new();
    for (i, x) in grid.iter().enumerate() {
        if space.is_puncture(x) {
            floor_vals.push(None);
            ceil_vals.push(None);
        } else {
            let fiber = g.fiber_at(x);
            debug_assert_eq!(fiber.len(), 1, "connected fiber at {x}");
            let (lo, hi) = &fiber[0];
            floor_vals.push(Some(lo.expect_finite().clone()));
            ceil_vals.push(Some(hi.expect_finite().clone()));
        }
        if i + 1 < grid.len() {
            let fiber = g.fiber_on_cell(x, &grid[i + 1]);
            debug_assert_eq!(fiber.len(), 1, "connected cell fiber after {x}");
            let (lo, hi) = &fiber[0];
            floor_laws.push(crate::piecewise::Affine::constant(
                lo.expect_finite().clone(),
            ));
            ceil_laws.push(crate::piecewise::Affine::constant(
                hi.expect_finite().clone(),
            ));
        }
    }
    let floor = PiecewiseFn::new(space.clone(), grid.clone(), floor_vals, floor_laws)
        .expect("fiber bounds form a valid profile");
    let ceiling = PiecewiseFn::new(space, grid, ceil_vals, ceil_laws)
        .expect("fiber bounds form a valid profile");
    FiberBounds { floor, ceiling }
}

/// Produces a tube M with the map strictly inside M and M inside the
/// connectedized constraint: floor < f < lower <= upper < g < ceiling.
pub fn tube_base_refine(map: &CuscoMap, upper: &UpperRegion) -> Result<Tube> {
    let FiberBounds { floor, ceiling } = fiber_bounds(map, upper)?;
    let f = insert_continuous(&floor, map.lower(), true)?;
    let g = insert_continuous(map.upper(), &ceiling, true)?;
    Tube::new(f, g)
}

/// The regularity chain: a tube M with the map in M and the closed tube
/// fiberwise inside the constraint. Strict insertion against the
/// constraint's fiber bounds keeps the closed fibers strictly between
/// them, so the closure containment is exact by construction and is
/// verified before returning. The input map must be minimal.
pub fn regular_refine(map: &CuscoMap, upper: &UpperRegion) -> Result<(Tube, ClosedTube)> {
    if !map.is_minimal().minimal {
        return Err(Error::NotMinimal);
    }
    let tube = tube_base_refine(map, upper)?;
    let closed = tube.closure();
    let check = closed_tube_in_upper(&closed, upper)?;
    if !check.holds {
        return Err(Error::Internal("closed tube escaped the constraint"));
    }
    Ok((tube, closed))
}

/// Exact fiberwise check `[f(x), g(x)] ⊆ W(x)` for every x in X.
pub fn closed_tube_in_upper(closed: &ClosedTube, upper: &UpperRegion) -> Result<Containment> {
    let as_map = CuscoMap::new(closed.lower.clone(), closed.upper.clone())?;
    match upper {
        UpperRegion::Boxes(w) => contains_map_region(&as_map, w),
        UpperRegion::Tube(t) => crate::region::contains_map_tube(&as_map, t),
    }
}

/// The n-th member of a shrinking local base of tubes around the map on a
/// compact domain: monotone approximations of the profiles, pushed out by
/// a strictly shrinking margin so consecutive tubes nest with closure.
pub fn local_base_tube(map: &CuscoMap, n: u32) -> Result<Tube> {
    assert!(n > 0, "local base index must be positive");
    if !map.space().is_compact() {
        return Err(Error::PuncturedDomain);
    }
    let margin = q(1, 2 * n as i64);
    let lo = monotone_approx(map.lower(), 2 * n, Direction::Up)?.add_const(&-margin.clone());
    let hi = monotone_approx(map.upper(), 2 * n, Direction::Down)?.add_const(&margin);
    Tube::new(lo, hi)
}

/// Margin certified for the upper-ball guarantee: every map within
/// L-distance epsilon of this one stays inside the region. Requires a
/// compact domain so the minimum against the inserted tube is attained.
/// The larger of two certified radii is returned: the distance from the
/// map to the tube profiles (always positive) and the uniform slack to the
/// connected fiber bounds (large for wide regions, absent when the fibers
/// hug the map near a boundary point).
pub fn ball_radius_upper(map: &CuscoMap, region: &OpenRegion) -> Result<Q> {
    if !map.space().is_compact() {
        return Err(Error::PuncturedDomain);
    }
    let tube = tube_base_refine(map, &UpperRegion::Boxes(region.clone()))?;
    let d1 = map.lower().sub(tube.lower())?;
    let d2 = tube.upper().sub(map.upper())?;
    let mut eps = d1.infimum().min(d2.infimum());
    debug_assert!(eps > Q::from_integer(0.into()));
    let g = crate::region::connectedize(region, map)?;
    if let Some(slack) = band_slack(map, &g) {
        if slack > eps {
            eps = slack;
        }
    }
    Ok(eps)
}

/// Exact uniform slack between the map profiles and the finite fiber
/// bounds of a fiberwise-connected region containing it, or None when the
/// infimum is not positive. Infinite bounds impose no constraint.
fn band_slack(map: &CuscoMap, connected: &OpenRegion) -> Option<Q> {
    let space = map.space().clone();
    let grid = subdivision(
        &space,
        &[
            map.lower().breakpoints(),
            map.upper().breakpoints(),
            &connected.cut_points(),
        ],
    );
    let lo = map.lower().refine(&grid);
    let hi = map.upper().refine(&grid);
    let mut best: Option<Q> = None;
    let mut push = |m: Q| {
        if best.as_ref().is_none_or(|b| m < *b) {
            best = Some(m);
        }
    };
    for (i, x) in grid.iter().enumerate() {
        if space.contains(x) {
            let comp = connected.fiber_at(x).into_iter().next()?;
            if let ExtQ::Fin(c) = &comp.0 {
                push(lo.eval(x).ok()? - c);
            }
            if let ExtQ::Fin(c) = &comp.1 {
                push(c - hi.eval(x).ok()?);
            }
        }
        if i + 1 < grid.len() {
            let (u, v) = (x, &grid[i + 1]);
            let comp = connected.fiber_on_cell(u, v).into_iter().next()?;
            let pi = lo.breakpoint_index(u).expect("grid point");
            if let ExtQ::Fin(c) = &comp.0 {
                push(lo.pieces()[pi].eval(u) - c);
                push(lo.pieces()[pi].eval(v) - c);
            }
            if let ExtQ::Fin(c) = &comp.1 {
                push(c - hi.pieces()[pi].eval(u));
                push(c - hi.pieces()[pi].eval(v));
            }
        }
    }
    best.filter(|b| *b > Q::from_integer(0.into()))
}

/// Margin for the lower-ball guarantee: a vertical segment of radius
/// epsilon around a witness point of the intersection stays inside the
/// region, so every map within L-distance epsilon still meets it.
pub fn ball_radius_lower(map: &CuscoMap, region: &OpenRegion) -> Result<Q> {
    let m = crate::region::meets(map, region)?;
    let (x, y) = match m.witness {
        Some(w) if m.holds => w,
        _ => return Err(Error::NoIntersection),
    };
    let comps = region.fiber_at(&x);
    let comp = comps
        .iter()
        .find(|(lo, hi)| *lo < ExtQ::Fin(y.clone()) && ExtQ::Fin(y.clone()) < *hi)
        .expect("witness lies in some component");
    let below = match &comp.0 {
        ExtQ::Fin(c) => Some(&y - c),
        _ => None,
    };
    let above = match &comp.1 {
        ExtQ::Fin(c) => Some(c - &y),
        _ => None,
    };
    Ok(match (below, above) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => Q::from_integer(1.into()),
    })
}

/// Dilates a tube around a jump hidden before `reach`: the floor is pulled
/// down to `depth` on (a, reach] and ramps back up, so maps running at a
/// level just above the floor on that initial segment become members.
/// The result is still a neighborhood of everything the original tube
/// contained, because the floor only moves down.
pub fn dilate_tube_floor(tube: &Tube, reach: &Q, depth: &Q) -> Result<Tube> {
    let space = tube.space().clone();
    let a = space.a().clone();
    let b = space.b().clone();
    if *reach <= a || *reach >= b {
        return Err(Error::OutsideDomain(reach.clone()));
    }
    let top = tube.lower().supremum() + Q::from_integer(1.into());
    let ramp = PiecewiseFn::interpolate(
        space,
        &ramp_samples(&a, reach, &b, depth, &top, tube.space().punctures()),
    )?;
    let floor = tube.lower().pointwise_min(&ramp)?;
    Tube::new(floor, tube.upper().clone())
}

fn ramp_samples(
    a: &Q,
    reach: &Q,
    b: &Q,
    depth: &Q,
    top: &Q,
    punctures: &[Q],
) -> Vec<(Q, Q)> {
    let mut pts = vec![
        (a.clone(), depth.clone()),
        (reach.clone(), depth.clone()),
        (b.clone(), top.clone()),
    ];
    // Punctures must be sample points so the interpolant is a valid profile.
    let ramp = crate::piecewise::Affine::through((reach, depth), (b, top));
    for p in punctures {
        let y = if *p <= *reach {
            depth.clone()
        } else {
            ramp.eval(p)
        };
        pts.push((p.clone(), y));
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cusco::envelope;
    use crate::piecewise::{Affine, Comparison};
    use crate::rational::{q, qi};
    use crate::region::XYBox;
    use crate::space::SpaceX;

    fn unit_space() -> SpaceX {
        SpaceX::interval(qi(-1), qi(1)).unwrap()
    }

    fn heaviside(at_zero: Q) -> PiecewiseFn {
        PiecewiseFn::new(
            unit_space(),
            vec![qi(-1), qi(0), qi(1)],
            vec![Some(qi(0)), Some(at_zero), Some(qi(1))],
            vec![Affine::constant(qi(0)), Affine::constant(qi(1))],
        )
        .unwrap()
    }

    fn step_map() -> CuscoMap {
        envelope(&heaviside(qi(1))).unwrap()
    }

    fn band(lo: i64, hi: i64) -> OpenRegion {
        OpenRegion::band(unit_space(), ExtQ::Fin(qi(lo)), ExtQ::Fin(qi(hi))).unwrap()
    }

    #[test]
    fn tube_refine_chain_is_strict() {
        let f = step_map();
        let tube = tube_base_refine(&f, &UpperRegion::Boxes(band(-1, 2))).unwrap();
        // -1 < floor < lower <= upper < ceiling < 2, exactly.
        assert!(tube
            .lower()
            .pointwise_lt(f.lower())
            .unwrap()
            .holds());
        assert!(f.upper().pointwise_lt(tube.upper()).unwrap().holds());
        let low_band = PiecewiseFn::constant(unit_space(), qi(-1));
        let high_band = PiecewiseFn::constant(unit_space(), qi(2));
        assert!(low_band.pointwise_lt(tube.lower()).unwrap().holds());
        assert!(tube.upper().pointwise_lt(&high_band).unwrap().holds());
    }

    #[test]
    fn tube_refine_thin_neighborhood_of_continuous_map() {
        let f = PiecewiseFn::interpolate(unit_space(), &[(qi(-1), qi(0)), (qi(1), qi(1))])
            .unwrap();
        let fc = CuscoMap::of_continuous(&f).unwrap();
        let thin = Tube::new(f.add_const(&q(-1, 8)), f.add_const(&q(1, 8))).unwrap();
        let tube = tube_base_refine(&fc, &UpperRegion::Tube(thin.clone())).unwrap();
        assert!(thin.lower().pointwise_lt(tube.lower()).unwrap().holds());
        assert!(tube.upper().pointwise_lt(thin.upper()).unwrap().holds());
        assert!(tube.lower().pointwise_lt(&f).unwrap().holds());
        assert!(f.pointwise_lt(tube.upper()).unwrap().holds());
    }

    #[test]
    fn tube_refine_requires_containment() {
        let f = step_map();
        assert!(matches!(
            tube_base_refine(&f, &UpperRegion::Boxes(band(0, 1))),
            Err(Error::NotContained(_))
        ));
    }

    #[test]
    fn regular_refine_closed_chain() {
        let f = step_map();
        let (tube, closed) = regular_refine(&f, &UpperRegion::Boxes(band(-1, 2))).unwrap();
        assert!(crate::region::contains_map_tube(&f, &tube).unwrap().holds);
        // Closed fibers stay strictly inside the band: a positive margin
        // exists on both sides.
        let lo_gap = closed.lower.infimum() - qi(-1);
        let hi_gap = qi(2) - closed.upper.supremum();
        assert!(lo_gap > qi(0));
        assert!(hi_gap > qi(0));
    }

    #[test]
    fn regular_refine_nests_inside_tubes() {
        let f = step_map();
        let (outer, _) = regular_refine(&f, &UpperRegion::Boxes(band(-2, 3))).unwrap();
        let (inner, closed) = regular_refine(&f, &UpperRegion::Tube(outer.clone())).unwrap();
        assert!(outer.lower().pointwise_lt(inner.lower()).unwrap().holds());
        assert!(inner.upper().pointwise_lt(outer.upper()).unwrap().holds());
        assert!(closed_tube_in_upper(&closed, &UpperRegion::Tube(outer))
            .unwrap()
            .holds);
    }

    #[test]
    fn regular_refine_rejects_non_minimal() {
        let fat = CuscoMap::new(
            PiecewiseFn::constant(unit_space(), qi(0)),
            PiecewiseFn::constant(unit_space(), qi(1)),
        )
        .unwrap();
        assert_eq!(
            regular_refine(&fat, &UpperRegion::Boxes(band(-1, 2))),
            Err(Error::NotMinimal)
        );
    }

    #[test]
    fn local_base_tubes_nest_strictly() {
        let f = step_map();
        let mut prev: Option<Tube> = None;
        for n in 1..=3u32 {
            let t = local_base_tube(&f, n).unwrap();
            assert!(crate::region::contains_map_tube(&f, &t).unwrap().holds);
            if let Some(p) = prev {
                assert!(p.lower().pointwise_lt(t.lower()).unwrap().holds());
                assert!(t.upper().pointwise_lt(p.upper()).unwrap().holds());
            }
            prev = Some(t);
        }
    }

    #[test]
    fn local_base_width_on_continuous_maps() {
        let f = PiecewiseFn::interpolate(unit_space(), &[(qi(-1), qi(0)), (qi(1), qi(1))])
            .unwrap();
        let fc = CuscoMap::of_continuous(&f).unwrap();
        for n in [1u32, 2, 5] {
            let t = local_base_tube(&fc, n).unwrap();
            let (wmin, wmax) = t.width_bounds();
            let two_over_n = q(2, n as i64);
            assert_eq!(wmin, two_over_n);
            assert_eq!(wmax, two_over_n);
        }
    }

    #[test]
    fn local_base_width_at_jump_is_jump_plus_margin() {
        let f = step_map();
        for n in [1u32, 3] {
            let t = local_base_tube(&f, n).unwrap();
            let (lo, hi) = t.fiber(&qi(0)).unwrap();
            // Fiber [0,1], so width is exactly 1 + 2/n at the jump.
            assert_eq!(hi - lo, qi(1) + q(2, n as i64));
        }
    }

    #[test]
    fn local_base_rejects_punctured_domains() {
        let space = SpaceX::new(qi(-1), qi(1), vec![q(1, 2)]).unwrap();
        let f = CuscoMap::of_continuous(&PiecewiseFn::constant(space, qi(0))).unwrap();
        assert_eq!(local_base_tube(&f, 1), Err(Error::PuncturedDomain));
    }

    #[test]
    fn ball_radius_upper_is_positive_and_capped() {
        let f = step_map();
        let w = OpenRegion::band(unit_space(), ExtQ::Fin(q(-1, 2)), ExtQ::Fin(q(3, 2)))
            .unwrap();
        let eps = ball_radius_upper(&f, &w).unwrap();
        assert!(eps > qi(0));
        assert!(eps <= q(1, 2));

        let huge = OpenRegion::band(
            unit_space(),
            ExtQ::Fin(qi(-1_000_000)),
            ExtQ::Fin(qi(1_000_000)),
        )
        .unwrap();
        let eps = ball_radius_upper(&f, &huge).unwrap();
        assert!(eps > qi(1000));
    }

    #[test]
    fn ball_radius_upper_soundness_on_shifts() {
        let f = step_map();
        let w = OpenRegion::band(unit_space(), ExtQ::Fin(q(-1, 2)), ExtQ::Fin(q(3, 2)))
            .unwrap();
        let eps = ball_radius_upper(&f, &w).unwrap();
        for k in [-3i64, -1, 1, 3] {
            let shift = &eps * q(k, 4); // |shift| < eps
            let g = f.shift(&shift);
            assert!(contains_map_region(&g, &w).unwrap().holds);
        }
    }

    #[test]
    fn ball_radius_upper_requires_containment_and_compactness() {
        let f = step_map();
        assert!(matches!(
            ball_radius_upper(&f, &band(0, 1)),
            Err(Error::NotContained(_))
        ));
    }

    #[test]
    fn ball_radius_lower_segment() {
        let f = step_map();
        let eps = ball_radius_lower(&f, &band(0, 1)).unwrap();
        assert_eq!(eps, q(1, 2)); // witness (0, 1/2): distance 1/2 to both sides

        for k in [-3i64, -1, 1, 3] {
            let g = f.shift(&(&eps * q(k, 4)));
            assert!(crate::region::meets(&g, &band(0, 1)).unwrap().holds);
        }
    }

    #[test]
    fn ball_radius_lower_small_box() {
        let f = step_map();
        let w = OpenRegion::new(
            unit_space(),
            vec![XYBox::new(
                q(1, 4),
                q(3, 4),
                ExtQ::Fin(q(7, 8)),
                ExtQ::Fin(q(9, 8)),
            )],
        )
        .unwrap();
        let eps = ball_radius_lower(&f, &w).unwrap();
        assert!(eps > qi(0));
        assert_eq!(eps, q(1, 8)); // fiber value 1, box reaches 9/8 above and 7/8 below
    }

    #[test]
    fn ball_radius_lower_disjoint_errors() {
        let f = step_map();
        let w = OpenRegion::band(unit_space(), ExtQ::Fin(qi(10)), ExtQ::Fin(qi(11)))
            .unwrap();
        assert_eq!(ball_radius_lower(&f, &w), Err(Error::NoIntersection));
    }

    #[test]
    fn dilated_tube_admits_late_jumps() {
        // On a punctured domain the early step functions live outside the
        // tube; pulling the floor down to -1/4 before the puncture lets
        // them in without evicting the original map.
        let space = SpaceX::new(qi(-2), qi(2), vec![qi(1), q(1, 2)]).unwrap();
        let lower = PiecewiseFn::new(
            space.clone(),
            vec![qi(-2), qi(0), q(1, 2), qi(1), qi(2)],
            vec![Some(qi(0)), Some(qi(0)), None, None, Some(qi(1))],
            vec![
                Affine::constant(qi(0)),
                Affine::constant(qi(1)),
                Affine::constant(qi(1)),
                Affine::constant(qi(1)),
            ],
        )
        .unwrap();
        let upper = PiecewiseFn::new(
            space.clone(),
            vec![qi(-2), qi(0), q(1, 2), qi(1), qi(2)],
            vec![Some(qi(0)), Some(qi(1)), None, None, Some(qi(1))],
            vec![
                Affine::constant(qi(0)),
                Affine::constant(qi(1)),
                Affine::constant(qi(1)),
                Affine::constant(qi(1)),
            ],
        )
        .unwrap();
        let f = CuscoMap::new(lower, upper).unwrap();
        let w = OpenRegion::band(space.clone(), ExtQ::Fin(qi(-1)), ExtQ::Fin(qi(2)))
            .unwrap();
        let tube = tube_base_refine(&f, &UpperRegion::Boxes(w)).unwrap();

        // f_1: jump at the puncture 1.
        let f1 = PiecewiseFn::new(
            space.clone(),
            vec![qi(-2), q(1, 2), qi(1), qi(2)],
            vec![Some(qi(0)), None, None, Some(qi(1))],
            vec![
                Affine::constant(qi(0)),
                Affine::constant(qi(0)),
                Affine::constant(qi(1)),
            ],
        )
        .unwrap();
        let f1c = CuscoMap::of_continuous(&f1).unwrap();
        let dilated = dilate_tube_floor(&tube, &qi(1), &q(-1, 4)).unwrap();
        assert!(crate::region::contains_map_tube(&f1c, &dilated).unwrap().holds);
        assert!(crate::region::contains_map_tube(&f, &dilated).unwrap().holds);
        assert!(!crate::region::contains_map_tube(&f1c, &tube).unwrap().holds);
    }

    #[test]
    fn closed_chain_survives_punctures() {
        // Strict insertion needs no uniform margin, so the chain holds on a
        // punctured domain too.
        let space = SpaceX::new(qi(-1), qi(1), vec![qi(0)]).unwrap();
        let f = PiecewiseFn::new(
            space.clone(),
            vec![qi(-1), qi(0), qi(1)],
            vec![Some(qi(0)), None, Some(qi(1))],
            vec![Affine::constant(qi(0)), Affine::constant(qi(1))],
        )
        .unwrap();
        let fc = CuscoMap::of_continuous(&f).unwrap();
        let w = OpenRegion::band(space, ExtQ::Fin(qi(-1)), ExtQ::Fin(qi(2))).unwrap();
        let tube = tube_base_refine(&fc, &UpperRegion::Boxes(w.clone())).unwrap();
        let closed = tube.closure();
        assert!(closed_tube_in_upper(&closed, &UpperRegion::Boxes(w))
            .unwrap()
            .holds);
        match f.pointwise_lt(tube.upper()).unwrap() {
            Comparison::Holds => {}
            Comparison::Fails(x) => panic!("tube does not clear the map at {x}"),
        }
    }
}
