//! Open regions of X x R as finite unions of open boxes, tubes between two
//! continuous functions, and Vietoris neighborhoods built from them.
//!
//! Every membership question is decided exactly by subdividing the domain
//! at all structure points (function breakpoints, box bounds, punctures):
//! on each open cell the active boxes are fixed and the map profiles are
//! affine, so containment and intersection reduce to endpoint comparisons.

use crate::cusco::CuscoMap;
use crate::error::{Error, Result};
use crate::piecewise::{Comparison, PiecewiseFn};
use crate::rational::{midpoint, ExtQ, Q};
use crate::space::SpaceX;

/// An open box: `(x_lo, x_hi) x (y_lo, y_hi)`, the vertical sides possibly
/// infinite. The horizontal interval is read relative to X, so a box whose
/// x-interval strictly contains an endpoint of X is a relative neighborhood
/// of that endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XYBox {
    pub x_lo: Q,
    pub x_hi: Q,
    pub y_lo: ExtQ,
    pub y_hi: ExtQ,
}

impl XYBox {
    pub fn new(x_lo: Q, x_hi: Q, y_lo: ExtQ, y_hi: ExtQ) -> XYBox {
        XYBox {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
        }
    }

    pub fn band(space: &SpaceX, y_lo: ExtQ, y_hi: ExtQ) -> XYBox {
        use crate::rational::qi;
        XYBox {
            x_lo: space.a() - qi(1),
            x_hi: space.b() + qi(1),
            y_lo,
            y_hi,
        }
    }

    fn is_valid(&self, space: &SpaceX) -> bool {
        self.x_lo < self.x_hi
            && self.y_lo < self.y_hi
            && self.x_hi > *space.a()
            && self.x_lo < *space.b()
    }

    fn active_at(&self, x: &Q) -> bool {
        self.x_lo < *x && *x < self.x_hi
    }

    /// Active on the whole open cell `(u, v)`, assuming the cell crosses
    /// no box bound.
    fn active_on(&self, u: &Q, v: &Q) -> bool {
        self.x_lo <= *u && *v <= self.x_hi
    }
}

/// A finite union of open boxes over a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenRegion {
    space: SpaceX,
    boxes: Vec<XYBox>,
}

impl OpenRegion {
    pub fn new(space: SpaceX, boxes: Vec<XYBox>) -> Result<OpenRegion> {
        for b in &boxes {
            if !b.is_valid(&space) {
                return Err(Error::EmptyBox);
            }
        }
        Ok(OpenRegion { space, boxes })
    }

    /// The horizontal band `X x (y_lo, y_hi)`.
    pub fn band(space: SpaceX, y_lo: ExtQ, y_hi: ExtQ) -> Result<OpenRegion> {
        let b = XYBox::band(&space, y_lo, y_hi);
        OpenRegion::new(space, vec![b])
    }

    /// The empty region.
    pub fn empty(space: SpaceX) -> OpenRegion {
        OpenRegion {
            space,
            boxes: Vec::new(),
        }
    }

    pub fn space(&self) -> &SpaceX {
        &self.space
    }

    pub fn boxes(&self) -> &[XYBox] {
        &self.boxes
    }

    /// All box bounds strictly inside (a, b), used for subdivision.
    pub(crate) fn cut_points(&self) -> Vec<Q> {
        let mut pts = Vec::new();
        for b in &self.boxes {
            for x in [&b.x_lo, &b.x_hi] {
                if x > self.space.a() && x < self.space.b() {
                    pts.push(x.clone());
                }
            }
        }
        pts.sort();
        pts.dedup();
        pts
    }

    /// The fiber at an exact point, as merged disjoint open intervals
    /// sorted by lower endpoint. Open intervals merge only on overlap;
    /// touching intervals stay separate.
    pub fn fiber_at(&self, x: &Q) -> Vec<(ExtQ, ExtQ)> {
        merge_intervals(
            self.boxes
                .iter()
                .filter(|b| b.active_at(x))
                .map(|b| (b.y_lo.clone(), b.y_hi.clone()))
                .collect(),
        )
    }

    /// The fiber over an open cell that crosses no box bound.
    pub(crate) fn fiber_on_cell(&self, u: &Q, v: &Q) -> Vec<(ExtQ, ExtQ)> {
        merge_intervals(
            self.boxes
                .iter()
                .filter(|b| b.active_on(u, v))
                .map(|b| (b.y_lo.clone(), b.y_hi.clone()))
                .collect(),
        )
    }

    /// Fiberwise intersection with another region over the same space.
    pub fn intersect(&self, other: &OpenRegion) -> Result<OpenRegion> {
        if self.space != other.space {
            return Err(Error::DomainMismatch);
        }
        let mut boxes = Vec::new();
        for a in &self.boxes {
            for b in &other.boxes {
                let x_lo = if a.x_lo >= b.x_lo { a.x_lo.clone() } else { b.x_lo.clone() };
                let x_hi = if a.x_hi <= b.x_hi { a.x_hi.clone() } else { b.x_hi.clone() };
                let y_lo = a.y_lo.clone().max(b.y_lo.clone());
                let y_hi = a.y_hi.clone().min(b.y_hi.clone());
                let cand = XYBox::new(x_lo, x_hi, y_lo, y_hi);
                if cand.is_valid(&self.space) {
                    boxes.push(cand);
                }
            }
        }
        Ok(OpenRegion {
            space: self.space.clone(),
            boxes,
        })
    }

    /// Intersects every box with a horizontal band.
    pub fn clamp_to_band(&self, lo: &Q, hi: &Q) -> OpenRegion {
        let mut boxes = Vec::new();
        for b in &self.boxes {
            let y_lo = b.y_lo.clone().max(ExtQ::Fin(lo.clone()));
            let y_hi = b.y_hi.clone().min(ExtQ::Fin(hi.clone()));
            if y_lo < y_hi {
                boxes.push(XYBox::new(b.x_lo.clone(), b.x_hi.clone(), y_lo, y_hi));
            }
        }
        OpenRegion {
            space: self.space.clone(),
            boxes,
        }
    }
}

fn merge_intervals(mut iv: Vec<(ExtQ, ExtQ)>) -> Vec<(ExtQ, ExtQ)> {
    iv.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut out: Vec<(ExtQ, ExtQ)> = Vec::new();
    for (lo, hi) in iv {
        match out.last_mut() {
            Some(last) if lo < last.1 => {
                if hi > last.1 {
                    last.1 = hi;
                }
            }
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// The open tube between two continuous functions with f < g pointwise:
/// fibers are the nonempty open intervals `(f(x), g(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tube {
    lower: PiecewiseFn,
    upper: PiecewiseFn,
}

impl Tube {
    pub fn new(lower: PiecewiseFn, upper: PiecewiseFn) -> Result<Tube> {
        for f in [&lower, &upper] {
            let class = f.semicontinuity_class();
            if !class.is_continuous() {
                return Err(Error::WrongClass {
                    expected: "continuous",
                    found: class.kind.to_string(),
                });
            }
        }
        let (lower, upper) = lower.common_refinement(&upper)?;
        if let Comparison::Fails(x) = lower.pointwise_lt(&upper)? {
            return Err(Error::StrictOrderViolated(x));
        }
        Ok(Tube { lower, upper })
    }

    pub fn lower(&self) -> &PiecewiseFn {
        &self.lower
    }

    pub fn upper(&self) -> &PiecewiseFn {
        &self.upper
    }

    pub fn space(&self) -> &SpaceX {
        self.lower.space()
    }

    pub fn fiber(&self, x: &Q) -> Result<(Q, Q)> {
        Ok((self.lower.eval(x)?, self.upper.eval(x)?))
    }

    /// Exact minimum and maximum of the fiber width g - f over X.
    pub fn width_bounds(&self) -> (Q, Q) {
        let w = self
            .upper
            .sub(&self.lower)
            .expect("tube profiles share a space");
        w.bounds()
    }

    /// The map whose fibers are the closed tube fibers `[f(x), g(x)]`.
    pub fn as_cusco(&self) -> CuscoMap {
        CuscoMap::new(self.lower.clone(), self.upper.clone())
            .expect("continuous ordered profiles form a cusco map")
    }

    /// Midline of the tube, a continuous function strictly inside.
    pub fn midline(&self) -> PiecewiseFn {
        use crate::rational::{half, qi};
        self.lower
            .add(&self.upper)
            .expect("tube profiles share a space")
            .scale(&half(&qi(1)))
    }
}

/// Closed fibers `[f(x), g(x)]` of a tube; the closure of the open tube in
/// the ambient strip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedTube {
    pub lower: PiecewiseFn,
    pub upper: PiecewiseFn,
}

impl Tube {
    pub fn closure(&self) -> ClosedTube {
        ClosedTube {
            lower: self.lower.clone(),
            upper: self.upper.clone(),
        }
    }
}

/// An upper Vietoris constraint: either a box-union region or a tube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperRegion {
    Boxes(OpenRegion),
    Tube(Tube),
}

impl UpperRegion {
    pub fn space(&self) -> &SpaceX {
        match self {
            UpperRegion::Boxes(r) => r.space(),
            UpperRegion::Tube(t) => t.space(),
        }
    }
}

/// A Vietoris neighborhood: one upper constraint plus finitely many lower
/// constraints. Membership: F ⊆ upper and F meets every lower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VietorisNbhd {
    pub upper: UpperRegion,
    pub lowers: Vec<OpenRegion>,
}

impl VietorisNbhd {
    pub fn upper_only(upper: UpperRegion) -> VietorisNbhd {
        VietorisNbhd {
            upper,
            lowers: Vec::new(),
        }
    }

    pub fn space(&self) -> &SpaceX {
        self.upper.space()
    }
}

/// Verdict of an exact containment test with a witness point on failure.
#[derive(Clone, Debug, PartialEq)]
pub struct Containment {
    pub holds: bool,
    pub witness: Option<Q>,
}

impl Containment {
    fn yes() -> Containment {
        Containment {
            holds: true,
            witness: None,
        }
    }

    fn no(x: Q) -> Containment {
        Containment {
            holds: false,
            witness: Some(x),
        }
    }
}

/// Verdict of an exact intersection test with a witness point on success.
#[derive(Clone, Debug, PartialEq)]
pub struct Meet {
    pub holds: bool,
    pub witness: Option<(Q, Q)>,
}

/// Sorted subdivision of [a, b] at all structure points: endpoints,
/// punctures, profile breakpoints, box bounds.
pub(crate) fn subdivision(space: &SpaceX, sources: &[&[Q]]) -> Vec<Q> {
    let mut pts = vec![space.a().clone(), space.b().clone()];
    pts.extend(space.punctures().iter().cloned());
    for src in sources {
        for x in *src {
            if x > space.a() && x < space.b() {
                pts.push(x.clone());
            }
        }
    }
    pts.sort();
    pts.dedup();
    pts
}

/// Decides `[lower(x), upper(x)] ⊆ W(x)` for all x in X, where W is the
/// box-union region; returns a witness point on failure.
pub fn contains_map_region(map: &CuscoMap, region: &OpenRegion) -> Result<Containment> {
    if map.space() != region.space() {
        return Err(Error::DomainMismatch);
    }
    let space = map.space().clone();
    let grid = subdivision(
        &space,
        &[
            map.lower().breakpoints(),
            map.upper().breakpoints(),
            &region.cut_points(),
        ],
    );
    let lo = map.lower().refine(&grid);
    let hi = map.upper().refine(&grid);

    // Breakpoint columns.
    for x in &grid {
        if !space.contains(x) {
            continue;
        }
        let flo = lo.eval(x)?;
        let fhi = hi.eval(x)?;
        let comps = region.fiber_at(x);
        if find_component(&comps, &flo, &fhi).is_none() {
            return Ok(Containment::no(x.clone()));
        }
    }
    // Open cells.
    for w in grid.windows(2) {
        let (u, v) = (&w[0], &w[1]);
        let comps = region.fiber_on_cell(u, v);
        let i = lo.breakpoint_index(u).expect("grid point is a breakpoint");
        let law_lo = &lo.pieces()[i];
        let law_hi = &hi.pieces()[i];
        let m = midpoint(u, v);
        let c = match find_component(&comps, &law_lo.eval(&m), &law_hi.eval(&m)) {
            Some(c) => c,
            None => return Ok(Containment::no(m)),
        };
        // The fiber stays in one component across the cell; verify the
        // affine bounds stay strictly between the component bounds.
        if let Some(x) = cell_escape(law_lo, law_hi, c, u, v) {
            return Ok(Containment::no(x));
        }
    }
    Ok(Containment::yes())
}

/// The merged component containing the closed interval [flo, fhi], if any.
fn find_component<'a>(
    comps: &'a [(ExtQ, ExtQ)],
    flo: &Q,
    fhi: &Q,
) -> Option<&'a (ExtQ, ExtQ)> {
    comps
        .iter()
        .find(|(lo, hi)| *lo < ExtQ::Fin(flo.clone()) && ExtQ::Fin(fhi.clone()) < *hi)
}

/// A point of the open cell where the affine fiber bounds leave the open
/// component, or None when containment holds across the cell.
fn cell_escape(
    law_lo: &crate::piecewise::Affine,
    law_hi: &crate::piecewise::Affine,
    comp: &(ExtQ, ExtQ),
    u: &Q,
    v: &Q,
) -> Option<Q> {
    use crate::piecewise::Affine;
    use num_traits::Zero;
    let check = |d: Affine| -> Option<Q> {
        // Need d > 0 on (u, v): endpoints nonnegative and not both zero.
        let du = d.eval(u);
        let dv = d.eval(v);
        if du >= Q::zero() && dv >= Q::zero() && !(du.is_zero() && dv.is_zero()) {
            return None;
        }
        if du >= Q::zero() && dv >= Q::zero() {
            return Some(midpoint(u, v));
        }
        let root = Affine::constant(Q::zero())
            .crossing(&d)
            .filter(|r| r > u && r < v);
        Some(match root {
            None => midpoint(u, v),
            Some(r) => {
                if du < Q::zero() {
                    midpoint(u, &r)
                } else {
                    midpoint(&r, v)
                }
            }
        })
    };
    if let ExtQ::Fin(c) = &comp.0 {
        let d = law_lo.add_const(&-c.clone());
        if let Some(x) = check(d) {
            return Some(x);
        }
    }
    if let ExtQ::Fin(c) = &comp.1 {
        let d = law_hi.neg().add_const(c);
        if let Some(x) = check(d) {
            return Some(x);
        }
    }
    None
}

/// Decides `[lower(x), upper(x)] ⊆ (f(x), g(x))` for all x, i.e. strict
/// pointwise containment of the map in the open tube.
pub fn contains_map_tube(map: &CuscoMap, tube: &Tube) -> Result<Containment> {
    if map.space() != tube.space() {
        return Err(Error::DomainMismatch);
    }
    if let Comparison::Fails(x) = tube.lower().pointwise_lt(map.lower())? {
        return Ok(Containment::no(x));
    }
    if let Comparison::Fails(x) = map.upper().pointwise_lt(tube.upper())? {
        return Ok(Containment::no(x));
    }
    Ok(Containment::yes())
}

/// Containment in an upper constraint of either kind.
pub fn contains_map(map: &CuscoMap, upper: &UpperRegion) -> Result<Containment> {
    match upper {
        UpperRegion::Boxes(r) => contains_map_region(map, r),
        UpperRegion::Tube(t) => contains_map_tube(map, t),
    }
}

/// Decides whether the map meets the region: some fiber intersects the
/// region fiber. Returns a witness point (x, y) on success, scanning left
/// to right.
pub fn meets(map: &CuscoMap, region: &OpenRegion) -> Result<Meet> {
    if map.space() != region.space() {
        return Err(Error::DomainMismatch);
    }
    let space = map.space().clone();
    let grid = subdivision(
        &space,
        &[
            map.lower().breakpoints(),
            map.upper().breakpoints(),
            &region.cut_points(),
        ],
    );
    let lo = map.lower().refine(&grid);
    let hi = map.upper().refine(&grid);

    for (i, x) in grid.iter().enumerate() {
        // Column at the grid point.
        if space.contains(x) {
            let flo = lo.eval(x)?;
            let fhi = hi.eval(x)?;
            for (clo, chi) in region.fiber_at(x) {
                if clo < ExtQ::Fin(fhi.clone()) && ExtQ::Fin(flo.clone()) < chi {
                    let ylo = clo.max(ExtQ::Fin(flo.clone()));
                    let yhi = chi.min(ExtQ::Fin(fhi.clone()));
                    let y = pick_inside(&ylo, &yhi);
                    return Ok(Meet {
                        holds: true,
                        witness: Some((x.clone(), y)),
                    });
                }
            }
        }
        // Cell to the right.
        if i + 1 >= grid.len() {
            break;
        }
        let (u, v) = (x, &grid[i + 1]);
        let pi = lo.breakpoint_index(u).expect("grid point is a breakpoint");
        let law_lo = &lo.pieces()[pi];
        let law_hi = &hi.pieces()[pi];
        for (clo, chi) in region.fiber_on_cell(u, v) {
            // Need some x in (u, v) with law_hi(x) > clo and law_lo(x) < chi.
            if let Some(xw) = open_cell_solution(law_hi, &clo, law_lo, &chi, u, v) {
                let flo = law_lo.eval(&xw);
                let fhi = law_hi.eval(&xw);
                let ylo = clo.clone().max(ExtQ::Fin(flo));
                let yhi = chi.clone().min(ExtQ::Fin(fhi));
                let y = pick_inside(&ylo, &yhi);
                return Ok(Meet {
                    holds: true,
                    witness: Some((xw, y)),
                });
            }
        }
    }
    Ok(Meet {
        holds: false,
        witness: None,
    })
}

/// A rational strictly between the bounds; the closed-side maxima keep the
/// bounds finite on at least one side.
fn pick_inside(lo: &ExtQ, hi: &ExtQ) -> Q {
    use crate::rational::qi;
    match (lo, hi) {
        (ExtQ::Fin(a), ExtQ::Fin(b)) => midpoint(a, b),
        (ExtQ::Fin(a), ExtQ::PosInf) => a + qi(1),
        (ExtQ::NegInf, ExtQ::Fin(b)) => b - qi(1),
        _ => qi(0),
    }
}

/// Midpoint of the x-subinterval of (u, v) where both strict affine
/// conditions hold: `above(x) > lo` and `below(x) < hi`.
fn open_cell_solution(
    above: &crate::piecewise::Affine,
    lo: &ExtQ,
    below: &crate::piecewise::Affine,
    hi: &ExtQ,
    u: &Q,
    v: &Q,
) -> Option<Q> {
    let (mut lo_x, mut hi_x) = (u.clone(), v.clone());
    let mut restrict = |law: &crate::piecewise::Affine, bound: &ExtQ, want_above: bool| -> bool {
        let c = match bound {
            ExtQ::Fin(c) => c,
            ExtQ::NegInf => return want_above,
            ExtQ::PosInf => return !want_above,
        };
        // Solve law(x) > c (or < c) on (lo_x, hi_x).
        let du = law.eval(&lo_x);
        let dv = law.eval(&hi_x);
        let ok_u = if want_above { du > *c } else { du < *c };
        let ok_v = if want_above { dv > *c } else { dv < *c };
        match (ok_u, ok_v) {
            (true, true) => true,
            (false, false) => {
                // Could still hold strictly inside when an endpoint limit
                // touches the bound; affine functions cannot, so fail.
                false
            }
            _ => {
                let r = match law.crossing(&crate::piecewise::Affine::constant(c.clone())) {
                    Some(r) => r,
                    None => return ok_u && ok_v,
                };
                if ok_u {
                    if r < hi_x {
                        hi_x = r;
                    }
                } else if r > lo_x {
                    lo_x = r;
                }
                lo_x < hi_x
            }
        }
    };
    if !restrict(above, lo, true) {
        return None;
    }
    if !restrict(below, hi, false) {
        return None;
    }
    if lo_x < hi_x {
        Some(midpoint(&lo_x, &hi_x))
    } else {
        None
    }
}

/// Vietoris membership: containment in the upper constraint and nonempty
/// intersection with every lower constraint.
pub fn member_nbhd(map: &CuscoMap, nbhd: &VietorisNbhd) -> Result<bool> {
    if !contains_map(map, &nbhd.upper)?.holds {
        return Ok(false);
    }
    for w in &nbhd.lowers {
        if !meets(map, w)?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of a continuous function, read as its singleton-fiber map.
pub fn member_nbhd_fn(f: &PiecewiseFn, nbhd: &VietorisNbhd) -> Result<bool> {
    member_nbhd(&CuscoMap::of_continuous(f)?, nbhd)
}

/// Replaces a region containing the map by one with connected (single
/// interval) fibers, still containing the map and contained in the input.
///
/// On each open cell of the common subdivision the fiber of the result is
/// the merged component of the region fiber that contains the map's fiber;
/// at each subdivision point an overlap box is inserted whose vertical
/// interval is the intersection of the point component with the two
/// adjacent cell components, so the result is open. Upper semicontinuity
/// of the map makes those intersections contain the point fiber.
pub fn connectedize(region: &OpenRegion, map: &CuscoMap) -> Result<OpenRegion> {
    let inside = contains_map_region(map, region)?;
    if !inside.holds {
        return Err(Error::NotContained(inside.witness.expect("failure witness")));
    }
    let space = map.space().clone();
    let grid = subdivision(
        &space,
        &[
            map.lower().breakpoints(),
            map.upper().breakpoints(),
            &region.cut_points(),
        ],
    );
    let lo = map.lower().refine(&grid);
    let hi = map.upper().refine(&grid);

    // Component per cell.
    let mut cell_comp: Vec<(ExtQ, ExtQ)> = Vec::new();
    for w in grid.windows(2) {
        let (u, v) = (&w[0], &w[1]);
        let m = midpoint(u, v);
        let i = lo.breakpoint_index(u).expect("grid point");
        let comps = region.fiber_on_cell(u, v);
        let c = find_component(&comps, &lo.pieces()[i].eval(&m), &hi.pieces()[i].eval(&m))
            .expect("containment verified above");
        cell_comp.push(c.clone());
    }

    let mut boxes = Vec::new();
    for (i, w) in grid.windows(2).enumerate() {
        boxes.push(XYBox::new(
            w[0].clone(),
            w[1].clone(),
            cell_comp[i].0.clone(),
            cell_comp[i].1.clone(),
        ));
    }
    // Overlap boxes at subdivision points of X.
    for (i, x) in grid.iter().enumerate() {
        if !space.contains(x) {
            continue;
        }
        let comps = region.fiber_at(x);
        let flo = lo.eval(x)?;
        let fhi = hi.eval(x)?;
        let c = find_component(&comps, &flo, &fhi).expect("containment verified above");
        let mut y_lo = c.0.clone();
        let mut y_hi = c.1.clone();
        if i > 0 {
            y_lo = y_lo.max(cell_comp[i - 1].0.clone());
            y_hi = y_hi.clone().min(cell_comp[i - 1].1.clone());
        }
        if i < cell_comp.len() {
            y_lo = y_lo.max(cell_comp[i].0.clone());
            y_hi = y_hi.clone().min(cell_comp[i].1.clone());
        }
        debug_assert!(
            y_lo < ExtQ::Fin(flo.clone()) && ExtQ::Fin(fhi.clone()) < y_hi,
            "adjacent components contain the point fiber"
        );
        let x_lo = if i > 0 {
            midpoint(&grid[i - 1], x)
        } else {
            use crate::rational::qi;
            x - qi(1)
        };
        let x_hi = if i + 1 < grid.len() {
            midpoint(x, &grid[i + 1])
        } else {
            use crate::rational::qi;
            x + qi(1)
        };
        boxes.push(XYBox::new(x_lo, x_hi, y_lo, y_hi));
    }
    let out = OpenRegion::new(space, boxes)?;
    debug_assert!(contains_map_region(map, &out)?.holds);
    Ok(out)
}

/// Structural check that every fiber of the region is a single open
/// interval (used by tests on connectedize output).
pub fn fibers_connected(region: &OpenRegion, probes: &[Q]) -> bool {
    probes.iter().all(|x| {
        if !region.space().in_closure(x) {
            return true;
        }
        region.fiber_at(x).len() <= 1
    })
}
