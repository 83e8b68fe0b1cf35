"""Argument-principle machinery: adaptive argument variation along paths,
winding numbers on closed contours, the Backlund argument bound, modulus
bounds for the auxiliary function, and zero counting on rectangles with the
main-term decomposition

    N(T) ~ T/(4 pi) log(T/(2 pi)) - T/(4 pi) - (1/2) sqrt(T/(2 pi)).

Counting works on desk-scale rectangles [box_left, 2] x [t_lo, t_hi]; the
region further left is certified empty by checking that an adjacent strip
has winding zero.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .auxiliary import r_value
from .errors import (
    ContourZeroError,
    DomainError,
    NonIntegerWindingError,
    ZeroOnPathError,
)
from .special_functions import TWO_PI

DESK_T0 = 10.0            # desk-scale counting base height
LEFT_SLOPE = 1.0          # slope of the optional curved left edge
PHASE_LIMIT = 0.5 * math.pi
MAX_REFINE_DEPTH = 24
WINDING_GUARD = 0.1
_CHAIN_TOL = 1e-12
# |f| below DETECT_TOL * (local scale) flags a zero on the path.  Kept well
# under the contour perturbation step so that a retry actually escapes the
# detection radius.
DETECT_TOL = 1e-6


@dataclass(frozen=True)
class PathSegment:
    """Oriented path piece: a straight segment or the curved left edge
    sigma(t) = 1 - a t^{2/5} log t traversed over [t_lo, t_hi].

    ``orientation`` is "forward" or "reverse"; for curves, forward means
    increasing t.
    """

    kind: str
    start: complex = 0j
    end: complex = 0j
    t_lo: float = 0.0
    t_hi: float = 0.0
    slope: float = LEFT_SLOPE
    orientation: str = "forward"

    def __post_init__(self):
        if self.kind not in ("straight", "left_curve"):
            raise DomainError(f"unknown segment kind {self.kind!r}")
        if self.orientation not in ("forward", "reverse"):
            raise DomainError(f"unknown orientation {self.orientation!r}")
        if self.kind == "straight" and self.start == self.end:
            raise DomainError("degenerate straight segment")
        if self.kind == "left_curve" and not 0.0 < self.t_lo < self.t_hi:
            raise DomainError("left_curve requires 0 < t_lo < t_hi")

    @classmethod
    def line(cls, start: complex, end: complex) -> "PathSegment":
        return cls(kind="straight", start=complex(start), end=complex(end))

    @classmethod
    def curve(cls, t_lo: float, t_hi: float, slope: float = LEFT_SLOPE,
              reverse: bool = False) -> "PathSegment":
        return cls(kind="left_curve", t_lo=t_lo, t_hi=t_hi, slope=slope,
                   orientation="reverse" if reverse else "forward")

    def point(self, u: float) -> complex:
        """Point at parameter u in [0, 1] along the traversal direction."""
        if self.orientation == "reverse":
            u = 1.0 - u
        if self.kind == "straight":
            return self.start + u * (self.end - self.start)
        t = self.t_lo + u * (self.t_hi - self.t_lo)
        return complex(1.0 - self.slope * t ** 0.4 * math.log(t), t)

    @property
    def first(self) -> complex:
        return self.point(0.0)

    @property
    def last(self) -> complex:
        return self.point(1.0)


@dataclass(frozen=True)
class ContourSpec:
    """Ordered list of segments; when ``closed`` each segment's end must
    meet the next segment's start (cyclically)."""

    segments: tuple[PathSegment, ...]
    closed: bool = True

    def __post_init__(self):
        if self.closed:
            segs = self.segments
            for k, seg in enumerate(segs):
                nxt = segs[(k + 1) % len(segs)]
                gap = abs(seg.last - nxt.first)
                scale = max(1.0, abs(seg.last))
                if gap > _CHAIN_TOL * scale:
                    raise DomainError(
                        f"contour not closed between segments {k} and {k + 1} "
                        f"(gap {gap:.3e})"
                    )

    @classmethod
    def rectangle(cls, sigma_lo: float, sigma_hi: float, t_lo: float,
                  t_hi: float) -> "ContourSpec":
        """Counterclockwise rectangle [sigma_lo, sigma_hi] x [t_lo, t_hi]."""
        bl = complex(sigma_lo, t_lo)
        br = complex(sigma_hi, t_lo)
        tr = complex(sigma_hi, t_hi)
        tl = complex(sigma_lo, t_hi)
        return cls(segments=(
            PathSegment.line(bl, br),
            PathSegment.line(br, tr),
            PathSegment.line(tr, tl),
            PathSegment.line(tl, bl),
        ))


@dataclass(frozen=True)
class ArgTrace:
    """Realised argument of f along a path: sampled nodes, unwrapped phases
    (successive differences below pi/2 by construction), the total variation
    phases[-1] - phases[0], and the largest single phase step."""

    nodes: tuple[complex, ...]
    phases: tuple[float, ...]
    total_variation: float
    max_step_phase: float


def _refine_phase(eval_fn, point_fn, values, params, tol, max_depth):
    """Bisect parameter intervals until consecutive phase steps are < pi/2.

    ``values[i]`` is eval_fn(params[i]).  Returns (params, values, deltas)
    with deltas[i] the nearest-branch phase change over interval i.
    """
    out_p = [params[0]]
    out_v = [values[0]]
    deltas = []

    def emit(p1, v1, p2, v2, depth):
        delta = math.remainder(cmath.phase(v2) - cmath.phase(v1), TWO_PI)
        if abs(delta) < PHASE_LIMIT:
            out_p.append(p2)
            out_v.append(v2)
            deltas.append(delta)
            return
        if depth >= max_depth:
            raise ZeroOnPathError(
                f"phase step {delta:.3f} rad not resolvable near parameter "
                f"{0.5 * (p1 + p2):.6g}; zero on or very near the path",
                where=point_fn(0.5 * (p1 + p2)),
            )
        pm = 0.5 * (p1 + p2)
        vm = eval_fn(pm)
        scale = max(abs(v1), abs(v2))
        if abs(vm) < tol * scale:
            raise ZeroOnPathError(
                f"|f| = {abs(vm):.3e} below {tol} * local scale {scale:.3e}",
                where=point_fn(pm),
            )
        emit(p1, v1, pm, vm, depth + 1)
        emit(pm, vm, p2, v2, depth + 1)

    for i in range(len(params) - 1):
        emit(params[i], values[i], params[i + 1], values[i + 1], 0)
    return out_p, out_v, deltas


def _arg_variation_param(f, point_fn, tol, seeds, max_depth=MAX_REFINE_DEPTH):
    def eval_fn(u):
        return f(point_fn(u))

    params = [k / (seeds - 1) for k in range(seeds)]
    values = []
    for k, u in enumerate(params):
        v = eval_fn(u)
        if v == 0.0:
            raise ZeroOnPathError("exact zero at a sample node",
                                  where=point_fn(u))
        values.append(v)
    for k, v in enumerate(values):
        neighbours = []
        if k > 0:
            neighbours.append(abs(values[k - 1]))
        if k + 1 < len(values):
            neighbours.append(abs(values[k + 1]))
        if abs(v) < tol * max(neighbours):
            raise ZeroOnPathError(
                f"|f| = {abs(v):.3e} below {tol} * local scale",
                where=point_fn(params[k]),
            )
    out_p, out_v, deltas = _refine_phase(eval_fn, point_fn, values, params,
                                         tol, max_depth)
    phase0 = cmath.phase(out_v[0])
    phases = [phase0]
    for d in deltas:
        phases.append(phases[-1] + d)
    nodes = tuple(point_fn(u) for u in out_p)
    return ArgTrace(
        nodes=nodes,
        phases=tuple(phases),
        total_variation=phases[-1] - phases[0],
        max_step_phase=max((abs(d) for d in deltas), default=0.0),
    )


def arg_variation(f, seg: PathSegment, tol: float = DETECT_TOL,
                  seeds: int = 16) -> ArgTrace:
    """Unwrapped argument change of f along the segment.

    Samples f, adaptively bisecting parameter intervals until each
    consecutive nearest-branch phase difference is below pi/2.  Raises
    ZeroOnPathError when |f| drops below tol * (local scale) at a node or
    when 24 bisection levels cannot satisfy the phase contract.
    """
    return _arg_variation_param(f, seg.point, tol, max(2, seeds))


def winding_number(f, contour: ContourSpec, tol: float = DETECT_TOL,
                   seeds: int = 16) -> int:
    """Number of zeros of f enclosed by the closed contour.

    Sum of the segment argument variations divided by 2 pi, rounded to the
    nearest integer; rejected if the pre-rounding value is farther than 0.1
    from an integer.
    """
    raw = winding_value(f, contour, tol=tol, seeds=seeds)
    nearest = round(raw)
    if abs(raw - nearest) > WINDING_GUARD:
        raise NonIntegerWindingError(
            f"winding value {raw:.4f} too far from an integer"
        )
    return int(nearest)


def winding_value(f, contour: ContourSpec, tol: float = DETECT_TOL,
                  seeds: int = 16) -> float:
    """Pre-rounding winding number (total variation over 2 pi)."""
    if not contour.closed:
        raise DomainError("winding number requires a closed contour")
    total = 0.0
    for seg in contour.segments:
        total += arg_variation(f, seg, tol=tol, seeds=seeds).total_variation
    return total / TWO_PI


@dataclass(frozen=True)
class BacklundInput:
    """Data of the argument bound: sup |f| over a disc of radius ``radius``
    about the segment's start, |f| at that centre, and the farthest distance
    ``reach`` of the segment from the centre."""

    big_m: float
    f_at_center: float
    radius: float
    reach: float

    def __post_init__(self):
        if not (self.f_at_center > 0.0 and self.big_m > 0.0):
            raise DomainError("big_m and f_at_center must be positive")
        if self.f_at_center > self.big_m:
            raise DomainError("f_at_center exceeds the disc supremum")
        if not (0.0 < self.reach < self.radius):
            raise DomainError("need 0 < reach < radius")


def backlund_bound(inp: BacklundInput) -> float:
    """Upper bound (in winding turns) for |Re (1/2πi) ∫ f'/f| along a
    segment from the disc centre:

        (1/2) log(M/|f(a)|) / log(R/reach).

    The same bound applies with ``reach`` the maximum of |z - a| over any
    segment of a line through the centre.
    """
    return 0.5 * math.log(inp.big_m / inp.f_at_center) / math.log(inp.radius / inp.reach)


def log_modulus_bound(sigma: float, t: float) -> float:
    """log of the explicit upper bound for |R(sigma + i t)|, t > 16 pi:

        sqrt(t/2pi)                                     for sigma > 0,
        19 t / (2pi)^{1-sigma} ((1-sigma)^2 + t^2)^{1/4 - sigma/2}   otherwise.

    The log form is needed because the bound exceeds the double range on
    the large discs used by the top-edge certificate.
    """
    if t <= 16.0 * math.pi:
        raise DomainError(f"modulus bound requires t > 16 pi, got {t}")
    if sigma > 0.0:
        return 0.5 * math.log(t / TWO_PI)
    return (
        math.log(19.0 * t)
        - (1.0 - sigma) * math.log(TWO_PI)
        + (0.25 - 0.5 * sigma) * math.log((1.0 - sigma) ** 2 + t * t)
    )


def modulus_bound(sigma: float, t: float) -> float:
    """Explicit upper bound for |R(sigma + i t)| (see log_modulus_bound);
    returns inf when the value exceeds the double range."""
    lg = log_modulus_bound(sigma, t)
    return math.exp(lg) if lg < 709.0 else math.inf


def log_backlund_m_for_disc(center_t: float, radius: float,
                            center_sigma: float = 2.0,
                            grid: int = 400) -> float:
    """log of the sup of the modulus bound over the disc about
    center_sigma + i center_t.

    The bound is increasing in t, so the supremum is taken on the top of the
    disc over a sigma grid.  Requires the whole disc above t = 16 pi.
    """
    if center_t - radius <= 16.0 * math.pi:
        raise DomainError("disc dips below t = 16 pi; bound not applicable")
    t_top = center_t + radius
    best = -math.inf
    for k in range(grid + 1):
        sigma = center_sigma - radius + 2.0 * radius * k / grid
        best = max(best, log_modulus_bound(sigma, t_top))
    return best


def top_edge_certificate(big_t: float, box_left: float,
                         slope: float = LEFT_SLOPE) -> float | None:
    """Backlund bound (in turns) for the argument variation of R along the
    top edge [box_left + iT, 2 + iT]; None when the disc geometry is not
    admissible at this height.

    Computed from logs: the disc supremum M = exp(c T^{2/5} log^2 T) is far
    beyond the double range, but only log(M/|f(a)|) enters the bound.
    """
    radius = 2.0 + 2.0 * slope * big_t ** 0.4 * math.log(big_t)
    if big_t - radius <= 16.0 * math.pi:
        return None
    reach = 2.0 - box_left
    if reach >= radius:
        return None
    log_m = log_backlund_m_for_disc(center_t=big_t, radius=radius)
    log_f_center = math.log(0.25)  # |R| > 1/4 at the centre 2 + iT
    return 0.5 * (log_m - log_f_center) / math.log(radius / reach)


def main_term(big_t: float) -> tuple[float, float]:
    """Smooth and square-root components of the counting main term.

    Returns (T/4pi log(T/2pi) - T/4pi, (1/2) sqrt(T/2pi)); the full main
    value is their difference.
    """
    if big_t <= 0.0:
        raise DomainError(f"main term requires T > 0, got {big_t}")
    smooth = big_t / (2.0 * TWO_PI) * math.log(big_t / TWO_PI) - big_t / (2.0 * TWO_PI)
    return smooth, 0.5 * math.sqrt(big_t / TWO_PI)


@dataclass(frozen=True)
class CountResult:
    """Zero count up to height big_t with the main-term decomposition.

    count       -- N(t_hi): winding of the counting box plus the zeros below
                   its bottom edge (the configured base count)
    main_value  -- smooth_term - sqrt_term
    residual    -- count - main_value
    certificates -- per-edge (segment id, argument bound in turns or None)
    window      -- realised (t_lo, t_hi) after zero-on-contour perturbation
    """

    big_t: float
    count: int
    main_value: float
    sqrt_term: float
    residual: float
    certificates: tuple[tuple[str, float | None], ...] = ()
    window: tuple[float, float] = (0.0, 0.0)

    @property
    def smooth_term(self) -> float:
        return self.main_value + self.sqrt_term


def _edge_seeds(t_level: float, length: float, vertical: bool) -> int:
    """Seed count keeping expected phase steps of R well under pi/2."""
    rate = 0.5 * math.log(max(t_level, 7.0) / TWO_PI) + 1.5
    if not vertical:
        rate += 2.0  # horizontal edges pick up the chi-argument drift
    return max(8, int(math.ceil(length * rate / 1.2)) + 1)


def _rectangle_winding(f, sigma_lo: float, sigma_hi: float, t_lo: float,
                       t_hi: float, detect_tol: float) -> tuple[float, dict]:
    """Raw winding value around a rectangle plus per-edge traces."""
    bl = complex(sigma_lo, t_lo)
    br = complex(sigma_hi, t_lo)
    tr = complex(sigma_hi, t_hi)
    tl = complex(sigma_lo, t_hi)
    width = sigma_hi - sigma_lo
    height = t_hi - t_lo
    edges = {
        "bottom": (PathSegment.line(bl, br), _edge_seeds(t_lo, width, False)),
        "right": (PathSegment.line(br, tr), _edge_seeds(t_hi, height, True)),
        "top": (PathSegment.line(tr, tl), _edge_seeds(t_hi, width, False)),
        "left": (PathSegment.line(tl, bl), _edge_seeds(t_hi, height, True)),
    }
    traces = {}
    total = 0.0
    for name, (seg, seeds) in edges.items():
        trace = arg_variation(f, seg, tol=detect_tol, seeds=seeds)
        traces[name] = trace
        total += trace.total_variation
    return total / TWO_PI, traces


def _perturbation_ladder(tol: float):
    # t-shifts first (the common case is a zero on a horizontal edge), then
    # sigma-shifts for zeros sitting on a vertical edge.
    yield 0.0, 0.0
    for k in range(1, 6):
        yield k * tol, 0.0
        yield -k * tol, 0.0
    for k in range(1, 6):
        yield 0.0, k * tol
        yield 0.0, -k * tol


def rectangle_count(f, sigma_lo: float, sigma_hi: float, t_lo: float,
                    t_hi: float, tol: float = 1e-3,
                    detect_tol: float = DETECT_TOL):
    """Integer winding of f around the rectangle, translating the box by
    multiples of tol (in t, then in sigma) when a zero sits on the contour.

    Returns (count, realised (t_lo, t_hi), per-edge traces).
    """
    last: ZeroOnPathError | None = None
    for dt, dsigma in _perturbation_ladder(tol):
        lo, hi = t_lo + dt, t_hi + dt
        slo, shi = sigma_lo + dsigma, sigma_hi + dsigma
        if not lo < hi:
            continue
        try:
            raw, traces = _rectangle_winding(f, slo, shi, lo, hi, detect_tol)
        except ZeroOnPathError as exc:
            last = exc
            continue
        nearest = round(raw)
        if abs(raw - nearest) > WINDING_GUARD:
            raise NonIntegerWindingError(
                f"winding value {raw:.4f} too far from an integer on "
                f"[{slo},{shi}]x[{lo},{hi}]"
            )
        return int(nearest), (lo, hi), traces
    raise ContourZeroError(
        f"zero persists on the contour after the perturbation ladder "
        f"(tol {tol}): {last}"
    )


_BASE_COUNT_CACHE: dict = {}
_BASE_FLOOR = 0.05  # bottom edge of the base-count box; gamma below is ignored


def base_count(t_lo: float = DESK_T0, box_left: float = -6.0,
               tol: float = 1e-3) -> int:
    """Number of zeros with 0 < gamma <= t_lo, by direct winding enumeration
    on [box_left, 2] x (0, t_lo] (bottom edge placed just above the real
    axis)."""
    key = (t_lo, box_left)
    if key not in _BASE_COUNT_CACHE:
        count, _, _ = rectangle_count(r_value, box_left, 2.0, _BASE_FLOOR,
                                      t_lo, tol)
        _BASE_COUNT_CACHE[key] = count
    return _BASE_COUNT_CACHE[key]


def adequate_box_left(t_hi: float, box_left: float = -6.0,
                      t_lo: float = DESK_T0, tol: float = 1e-3,
                      max_widenings: int = 4) -> float:
    """Left box edge certified to have no zeros further left up to t_hi.

    Starting from ``box_left``, the adjacent strip of width 20 is checked
    for winding zero; the edge moves left until the certificate holds.  The
    zeros drift slowly leftwards with height (beta ~ -8 near t = 2000), so
    one or two widenings suffice at desk scale.
    """
    left = box_left
    for _ in range(max_widenings):
        strip, _, _ = rectangle_count(r_value, left - 20.0, left, t_lo,
                                      t_hi, tol)
        if strip == 0:
            return left
        left -= 20.0
    raise ContourZeroError(
        f"zeros persist left of sigma = {left} up to t = {t_hi}"
    )


def count_zeros(t_lo: float, t_hi: float, box_left: float = -6.0,
                tol: float = 1e-3, include_base: bool = True,
                certify_left: bool = True) -> CountResult:
    """Count the zeros of R in the strip t_lo < gamma <= t_hi.

    The winding of R is taken around [box_left, 2] x [t_lo, t_hi]; when
    ``include_base`` the zeros below t_lo are added so that ``count`` is
    N(t_hi).  When ``certify_left`` the adjacent strip of width 20 is
    checked to have winding zero and the box widens leftwards as needed.
    Zero-on-contour heights are perturbed by multiples of tol.
    """
    if t_lo < DESK_T0:
        raise DomainError(f"counting starts at t >= {DESK_T0}, got {t_lo}")
    if box_left > -2.0:
        raise DomainError(f"box_left must be <= -2, got {box_left}")
    if t_hi < t_lo:
        raise DomainError("t_hi below t_lo")

    smooth, sqrt_term = main_term(t_hi)
    main_value = smooth - sqrt_term
    if t_hi == t_lo:
        base = base_count(t_lo, box_left, tol) if include_base else 0
        return CountResult(
            big_t=t_hi, count=base, main_value=main_value,
            sqrt_term=sqrt_term, residual=base - main_value,
            certificates=(), window=(t_lo, t_hi),
        )

    left = adequate_box_left(t_hi, box_left, t_lo, tol) if certify_left \
        else box_left
    count, window, traces = rectangle_count(r_value, left, 2.0, t_lo, t_hi,
                                            tol)
    if include_base:
        count += base_count(t_lo, left, tol)

    certs = (
        ("bottom", None),
        ("right", 0.5),  # |R - 1| < 3/4 keeps the variation under pi
        ("top", top_edge_certificate(window[1], left)),
        ("left", None),
    )
    return CountResult(
        big_t=t_hi, count=count, main_value=main_value, sqrt_term=sqrt_term,
        residual=count - main_value, certificates=certs, window=window,
    )


def residual_table(ts, box_left: float = -6.0, tol: float = 1e-3,
                   include_base: bool = True,
                   certify_left: bool = True) -> list[CountResult]:
    """CountResult per T over an increasing grid, stacking strip windings.

    Consecutive heights share contour edges, so the table costs little more
    than a single count to max(ts).  The box uses one left edge wide enough
    for the whole grid (certified on the full-height strip when
    ``certify_left``).
    """
    ts = list(ts)
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise DomainError("heights must be strictly increasing")
    if not ts:
        return []
    left = adequate_box_left(ts[-1], box_left, DESK_T0, tol) if certify_left \
        else box_left
    head = count_zeros(DESK_T0, ts[0], left, tol,
                       include_base=include_base, certify_left=False)
    results = [head]
    running = head.count
    prev_hi = head.window[1]
    for big_t in ts[1:]:
        strip, window, _ = rectangle_count(r_value, left, 2.0, prev_hi,
                                           big_t, tol)
        running += strip
        smooth, sqrt_term = main_term(big_t)
        main_value = smooth - sqrt_term
        results.append(CountResult(
            big_t=big_t, count=running, main_value=main_value,
            sqrt_term=sqrt_term, residual=running - main_value,
            certificates=(("top", top_edge_certificate(window[1], left)),),
            window=(prev_hi, window[1]),
        ))
        prev_hi = window[1]
    return results
