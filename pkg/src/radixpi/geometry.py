"""Ruler-and-compass constructions over MPFR coordinates.

Primitives (line/circle intersections) work at a caller-supplied
:class:`RealContext`.  Scripted constructions run at the requested precision
plus ``GUARD_BITS`` and round their final measurements back, so the reported
numbers are within a couple of ulps of the exact constructed values.

Canonical placement shared by both squaring constructions: O = (0, 0),
A = (-1, 0) and the golden rectangle OEID sits above the positive x-axis
with E = (phi, 0) and D = (0, 1).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

import gmpy2
from gmpy2 import mpfr

from radixpi.catalog import CheckResult, dixon_constant
from radixpi.context import RealContext, as_mpfr, format_decimals, format_fixed, reference_pi_for
from radixpi.exactfield import PHI, GoldenElement, ge_to_real

GUARD_BITS = 32
TANGENCY_ULPS = 4
CONDITIONING_BITS = 12
MIN_CONSTRUCTION_PRECISION = 128
CLAIMED_ERROR = mpfr("5e-5")


class ConstructionError(ValueError):
    pass


class ParallelLinesError(ConstructionError):
    pass


class CoincidentCirclesError(ConstructionError):
    pass


class DegenerateSegmentError(ConstructionError):
    pass


class CollinearityError(ConstructionError):
    pass


class ConditioningWarning(UserWarning):
    """Intersection of nearly parallel lines; digits are lost."""


@dataclass(frozen=True)
class Point:
    x: mpfr
    y: mpfr
    label: str | None = None

    def named(self, label: str) -> Point:
        return Point(self.x, self.y, label)


@dataclass(frozen=True)
class Line:
    p: Point
    q: Point
    label: str | None = None


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: mpfr
    label: str | None = None

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise ConstructionError(f"circle radius must be positive, got {self.radius}")


Shape = Union[Point, Line, Circle]


def point(x, y, label: str | None = None, ctx: RealContext | None = None) -> Point:
    if ctx is None:
        return Point(as_mpfr(x), as_mpfr(y), label)
    return Point(ctx.real(x), ctx.real(y), label)


def distance(p: Point, q: Point) -> mpfr:
    return gmpy2.hypot(q.x - p.x, q.y - p.y)


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def orientation(a: Point, b: Point, c: Point) -> mpfr:
    """Twice the signed area of triangle abc (positive when counterclockwise)."""
    return _cross(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y)


def polygon_area(points: Sequence[Point]) -> mpfr:
    """Shoelace area of a simple polygon."""
    total = mpfr(0)
    n = len(points)
    for i in range(n):
        a, b = points[i], points[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return abs(total) / 2


def _check_line(line: Line, ctx: RealContext) -> None:
    if distance(line.p, line.q) <= ctx.tolerance(16):
        raise DegenerateSegmentError("line defined by coincident points")


def intersect_lines(l1: Line, l2: Line, ctx: RealContext, trace: Construction | None = None) -> Point:
    """Unique intersection point of two non-parallel lines."""
    with ctx.scope():
        _check_line(l1, ctx)
        _check_line(l2, ctx)
        d1x, d1y = l1.q.x - l1.p.x, l1.q.y - l1.p.y
        d2x, d2y = l2.q.x - l2.p.x, l2.q.y - l2.p.y
        det = _cross(d1x, d1y, d2x, d2y)
        sine = abs(det) / (gmpy2.hypot(d1x, d1y) * gmpy2.hypot(d2x, d2y))
        if sine <= ctx.tolerance(16):
            raise ParallelLinesError("lines are parallel")
        if sine < gmpy2.mul_2exp(mpfr(1), -CONDITIONING_BITS):
            message = (f"near-parallel lines (sin angle = {float(sine):.3g}); "
                       f"about {int(-gmpy2.log2(sine))} bits lost")
            warnings.warn(message, ConditioningWarning, stacklevel=2)
            if trace is not None:
                trace.warnings.append(message)
        t = _cross(l2.p.x - l1.p.x, l2.p.y - l1.p.y, d2x, d2y) / det
        return Point(l1.p.x + t * d1x, l1.p.y + t * d1y)


def intersect_line_circle(line: Line, circle: Circle, ctx: RealContext) -> list[Point]:
    """Real intersections ordered by their parameter along p -> q."""
    with ctx.scope():
        _check_line(line, ctx)
        dx, dy = line.q.x - line.p.x, line.q.y - line.p.y
        norm2 = dx * dx + dy * dy
        cx, cy = circle.center.x, circle.center.y
        t0 = ((cx - line.p.x) * dx + (cy - line.p.y) * dy) / norm2
        fx, fy = line.p.x + t0 * dx, line.p.y + t0 * dy
        r2 = circle.radius * circle.radius
        h2 = r2 - ((fx - cx) ** 2 + (fy - cy) ** 2)
        if abs(h2) <= TANGENCY_ULPS * ctx.ulp(r2):
            return [Point(fx, fy)]
        if h2 < 0:
            return []
        step = gmpy2.sqrt(h2 / norm2)
        return [Point(fx - step * dx, fy - step * dy), Point(fx + step * dx, fy + step * dy)]


def intersect_circles(c1: Circle, c2: Circle, ctx: RealContext) -> list[Point]:
    """Circle-circle intersections via the radical line.

    With two points, the first lies left of the directed centre line
    c1 -> c2.
    """
    with ctx.scope():
        dx, dy = c2.center.x - c1.center.x, c2.center.y - c1.center.y
        d = gmpy2.hypot(dx, dy)
        if d <= ctx.tolerance(16):
            if abs(c1.radius - c2.radius) <= ctx.tolerance(16):
                raise CoincidentCirclesError("circles coincide")
            return []
        r1, r2 = c1.radius, c2.radius
        a = (r1 * r1 - r2 * r2 + d * d) / (2 * d)
        h2 = r1 * r1 - a * a
        bx, by = c1.center.x + a * dx / d, c1.center.y + a * dy / d
        if abs(h2) <= TANGENCY_ULPS * ctx.ulp(r1 * r1):
            return [Point(bx, by)]
        if h2 < 0:
            return []
        h = gmpy2.sqrt(h2)
        ox, oy = -dy / d * h, dx / d * h
        return [Point(bx + ox, by + oy), Point(bx - ox, by - oy)]


# -- choosing among intersection points ----------------------------------------

Picker = Callable[[list[Point]], Point]


def upper(points: list[Point]) -> Point:
    return max(points, key=lambda p: p.y)


def lower(points: list[Point]) -> Point:
    return min(points, key=lambda p: p.y)


def rightmost(points: list[Point]) -> Point:
    return max(points, key=lambda p: p.x)


def farthest_from(ref: Point) -> Picker:
    return lambda points: max(points, key=lambda p: distance(ref, p))


def left_of(a: Point, b: Point) -> Picker:
    """The candidate on the left of the directed line a -> b."""
    return lambda points: max(points, key=lambda p: orientation(a, b, p))


def right_of(a: Point, b: Point) -> Picker:
    return lambda points: min(points, key=lambda p: orientation(a, b, p))


# -- traces -------------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    index: int
    op: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    coords: str

    def render(self) -> str:
        head = " ".join([self.op, *self.inputs])
        return f"step {self.index}: {head} -> {' '.join(self.outputs)} [{self.coords}]"


@dataclass(frozen=True)
class ConstructionTrace:
    name: str
    precision_bits: int
    steps: tuple[Step, ...]
    objects: dict[str, Shape]
    measurements: dict[str, mpfr]
    warnings: tuple[str, ...] = ()
    metadata: dict[str, str] = field(default_factory=dict)

    def is_sound(self) -> bool:
        """Every step only consumes objects produced by earlier steps."""
        known: set[str] = set()
        for step in self.steps:
            if step.op != "given" and not set(step.inputs) <= known:
                return False
            if step.op == "given" and step.inputs:
                return False
            known.update(step.outputs)
        return True

    def serialize(self) -> str:
        lines = [f"# construction {self.name} at {self.precision_bits} bits"]
        lines += [f"# {k}: {v}" for k, v in self.metadata.items()]
        lines += [step.render() for step in self.steps]
        lines += [f"measure {k} = {format_fixed(v, 30)}" for k, v in self.measurements.items()]
        lines += [f"warning {w}" for w in self.warnings]
        return "\n".join(lines) + "\n"

    def point(self, label: str) -> Point:
        obj = self.objects[label]
        if not isinstance(obj, Point):
            raise TypeError(f"{label} is not a point")
        return obj

    def to_svg(self, size: int = 640) -> str:
        return render_svg(self, size)


def _coord(x) -> str:
    return format_decimals(x, 20)


def _describe(label: str, obj: Shape) -> str:
    if isinstance(obj, Point):
        return f"{label}=({_coord(obj.x)}, {_coord(obj.y)})"
    if isinstance(obj, Line):
        return f"{label}=({_coord(obj.p.x)}, {_coord(obj.p.y)})->({_coord(obj.q.x)}, {_coord(obj.q.y)})"
    return f"{label}=({_coord(obj.center.x)}, {_coord(obj.center.y)}) r={_coord(obj.radius)}"


class Construction:
    """Append-only builder for a labelled ruler-and-compass construction."""

    def __init__(self, name: str, ctx: RealContext) -> None:
        self.name = name
        self.ctx = ctx
        self.objects: dict[str, Shape] = {}
        self.steps: list[Step] = []
        self.measurements: dict[str, mpfr] = {}
        self.warnings: list[str] = []
        self.metadata: dict[str, str] = {}
        self._aux = 0

    def _label(self, label: str | None) -> str:
        if label is None:
            self._aux += 1
            label = f"_{self._aux}"
        if label in self.objects:
            raise ConstructionError(f"label {label!r} already used")
        return label

    def _get(self, ref):
        if isinstance(ref, str):
            return self.objects[ref]
        return ref

    def _name_of(self, obj: Shape) -> str:
        if obj.label is not None and self.objects.get(obj.label) is obj:
            return obj.label
        raise ConstructionError("input was not produced by this construction")

    def _record(self, op: str, inputs: Sequence[Shape], outputs: list[tuple[str, Shape]]) -> None:
        for label, obj in outputs:
            self.objects[label] = obj
        self.steps.append(Step(
            len(self.steps) + 1, op,
            tuple(self._name_of(o) for o in inputs),
            tuple(label for label, _ in outputs),
            "; ".join(_describe(label, obj) for label, obj in outputs)))

    def given(self, label: str, x, y) -> Point:
        label = self._label(label)
        p = point(x, y, label, self.ctx)
        self._record("given", [], [(label, p)])
        return p

    def line(self, a, b, label: str | None = None) -> Line:
        a, b = self._get(a), self._get(b)
        label = self._label(label)
        line = Line(a, b, label)
        _check_line(line, self.ctx)
        self._record("line", [a, b], [(label, line)])
        return line

    def circle(self, center, through, label: str | None = None) -> Circle:
        """Circle about ``center`` passing through ``through``."""
        center, through = self._get(center), self._get(through)
        label = self._label(label)
        with self.ctx.scope():
            c = Circle(center, distance(center, through), label)
        self._record("circle", [center, through], [(label, c)])
        return c

    def compass(self, center, a, b, label: str | None = None) -> Circle:
        """Circle about ``center`` with the opening |ab| carried over."""
        center, a, b = self._get(center), self._get(a), self._get(b)
        label = self._label(label)
        with self.ctx.scope():
            c = Circle(center, distance(a, b), label)
        self._record("compass", [center, a, b], [(label, c)])
        return c

    def meet(self, first, second, label: str | None = None, pick: Picker | None = None) -> Point:
        first, second = self._get(first), self._get(second)
        if isinstance(first, Line) and isinstance(second, Line):
            candidates = [intersect_lines(first, second, self.ctx, self)]
            op = "meet-lines"
        elif isinstance(first, Line) and isinstance(second, Circle):
            candidates = intersect_line_circle(first, second, self.ctx)
            op = "meet-line-circle"
        elif isinstance(first, Circle) and isinstance(second, Line):
            candidates = intersect_line_circle(second, first, self.ctx)
            op = "meet-line-circle"
        else:
            candidates = intersect_circles(first, second, self.ctx)
            op = "meet-circles"
        if not candidates:
            raise ConstructionError(f"{op}: no intersection")
        chosen = candidates[0] if pick is None or len(candidates) == 1 else pick(candidates)
        label = self._label(label)
        p = chosen.named(label)
        self._record(op, [first, second], [(label, p)])
        return p

    def perpendicular(self, line, at, label: str | None = None) -> Line:
        """Perpendicular to ``line`` through its point ``at``."""
        line, at = self._get(line), self._get(at)
        ring = self.compass(at, line.p, line.q)
        x1 = self.meet(line, ring, pick=lambda pts: pts[0])
        x2 = self.meet(line, ring, pick=lambda pts: pts[-1])
        k1 = self.circle(x1, x2)
        k2 = self.circle(x2, x1)
        y1 = self.meet(k1, k2, pick=lambda pts: pts[0])
        y2 = self.meet(k1, k2, pick=lambda pts: pts[-1])
        return self.line(y1, y2, label)

    def translate(self, p, a, b, label: str | None = None) -> Point:
        """p + (b - a) as the fourth vertex of parallelogram a b Y p."""
        p, a, b = self._get(p), self._get(a), self._get(b)
        k1 = self.compass(p, a, b)
        k2 = self.compass(b, a, p)
        # Y and a lie on opposite sides of the diagonal p-b
        side = orientation(p, b, a)
        pick = (lambda pts: min(pts, key=lambda q: orientation(p, b, q))) if side > 0 \
            else (lambda pts: max(pts, key=lambda q: orientation(p, b, q)))
        return self.meet(k1, k2, label, pick)

    def parallel(self, line, through, label: str | None = None) -> Line:
        line, through = self._get(line), self._get(through)
        y = self.translate(through, line.p, line.q)
        return self.line(through, y, label)

    def divide(self, p, q, n: int, labels: Sequence[str] | None = None,
               aux_label: str | None = None) -> list[Point]:
        """Interior points splitting pq into ``n`` equal parts.

        An auxiliary ray from p (at 60 degrees, through the apex of the
        equilateral triangle on pq) is marked ``n`` times with the compass
        opening |pq|; parallels to the closing segment through the marks
        cut pq at the division points.
        """
        p, q = self._get(p), self._get(q)
        if n < 2:
            raise ValueError("n must be >= 2")
        if distance(p, q) <= self.ctx.tolerance(16):
            raise DegenerateSegmentError("cannot divide a degenerate segment")
        base = self.line(p, q)
        k1 = self.circle(p, q)
        k2 = self.circle(q, p)
        apex = self.meet(k1, k2, aux_label, left_of(p, q))
        ray = self.line(p, apex)
        marks = [p, apex]
        for _ in range(n - 1):
            ring = self.compass(marks[-1], p, q)
            marks.append(self.meet(ray, ring, pick=farthest_from(p)))
        closing = self.line(marks[-1], q)
        points = []
        for i in range(1, n):
            par = self.parallel(closing, marks[i])
            label = labels[i - 1] if labels else None
            points.append(self.meet(par, base, label))
        return points

    def midpoint(self, p, q, label: str | None = None) -> Point:
        return self.divide(p, q, 2, [label] if label else None)[0]

    def measure(self, name: str, value) -> None:
        self.measurements[name] = value

    def finish(self, output: RealContext) -> ConstructionTrace:
        with output.scope():
            measurements = {k: +v for k, v in self.measurements.items()}
        return ConstructionTrace(self.name, output.precision_bits, tuple(self.steps),
                                 dict(self.objects), measurements, tuple(self.warnings),
                                 dict(self.metadata))


def _scratch(ctx: RealContext, *points: Point) -> tuple[Construction, list[Point]]:
    con = Construction("scratch", ctx)
    given = [con.given(p.label or f"P{i}", p.x, p.y) for i, p in enumerate(points)]
    return con, given


def divide_segment(p: Point, q: Point, n: int, ctx: RealContext,
                   trace: Construction | None = None) -> list[Point]:
    """The ``n - 1`` interior points dividing pq equally (auxiliary-ray method)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if trace is None:
        trace, (p, q) = _scratch(ctx, p, q)
    return trace.divide(p, q, n)


def geometric_mean_point(a: Point, b: Point, foot: Point, ctx: RealContext,
                         trace: Construction | None = None, label: str | None = None) -> Point:
    """Point M on the perpendicular at ``foot`` on the semicircle over ab.

    By Thales, |aM|**2 = |a foot| * |ab|.  The semicircle is taken on the
    left of the directed diameter a -> b.
    """
    with ctx.scope():
        ab = distance(a, b)
        if ab <= ctx.tolerance(16):
            raise DegenerateSegmentError("degenerate diameter")
        off_line = abs(orientation(a, b, foot)) / ab
        along = ((foot.x - a.x) * (b.x - a.x) + (foot.y - a.y) * (b.y - a.y)) / (ab * ab)
        tol = ctx.tolerance(16)
        if off_line > tol * ab or along < -tol or along > 1 + tol:
            raise CollinearityError("foot must lie on the segment ab")
    if trace is None:
        trace, (a, b, foot) = _scratch(ctx, a, b, foot)
    if distance(foot, a) <= ctx.tolerance(16):
        return foot.named(label) if label else foot
    centre = trace.midpoint(a, b)
    arc = trace.circle(centre, a)
    diameter = trace.line(a, b)
    upright = trace.perpendicular(diameter, foot)
    return trace.meet(upright, arc, label, left_of(a, b))


# -- scripted constructions ---------------------------------------------------

_PLACEMENT = ("O = (0, 0), A = (-s, 0), E = (s*phi, 0); D above O, I above E; "
              "auxiliary points of the five-part division sit on a 60 degree ray")


def _working(ctx: RealContext) -> RealContext:
    if ctx.precision_bits < MIN_CONSTRUCTION_PRECISION:
        raise ValueError(f"constructions need at least {MIN_CONSTRUCTION_PRECISION} bits")
    return ctx.widened(GUARD_BITS)


def _golden_rectangle(con: Construction, scale) -> dict[str, Shape]:
    """Unit circle about O and the golden rectangle OEID (steps 1-2)."""
    O = con.given("O", 0, 0)
    A = con.given("A", -Fraction(scale), 0)
    c0 = con.circle(O, A, "C0")
    h = con.line(A, O, "h")
    A1 = con.meet(h, c0, "A1", farthest_from(A))
    v = con.perpendicular(h, O, "v")
    D = con.meet(v, c0, "D", upper)
    Q = con.translate(D, O, A1, "Q")
    K = con.midpoint(O, A1, "K")
    arc = con.circle(K, Q, "Cg")
    E = con.meet(h, arc, "E", rightmost)
    I = con.translate(D, O, E, "I")
    return {"O": O, "A": A, "C0": c0, "h": h, "A1": A1, "v": v, "D": D, "E": E, "I": I}


def run_dixon(ctx: RealContext, scale=1) -> ConstructionTrace:
    """Dixon's square AMNP with area (6/5)(1 + phi) ~ pi."""
    work = _working(ctx)
    con = Construction("dixon", work)
    con.metadata["placement"] = _PLACEMENT
    con.metadata["scale"] = str(scale)
    g = _golden_rectangle(con, scale)
    A, O, E, h, v = g["A"], g["O"], g["E"], g["h"], g["v"]
    # step 3: fifth part HE of AE, carried once more beyond E
    parts = con.divide(A, E, 5, labels=["H1", "H2", "H3", "H"], aux_label="G")
    H = parts[-1]
    ring = con.compass(E, H, E)
    L = con.meet(h, ring, "L", farthest_from(A))
    # step 4: semicircle on AL meets the vertical through O
    M = geometric_mean_point(A, L, O, work, con, "M")
    # step 5: square on AM
    side = con.line(A, M, "AM")
    normal = con.perpendicular(side, A)
    around = con.circle(A, M)
    P = con.meet(normal, around, "P", left_of(A, M))
    N = con.translate(P, A, M, "N")
    ref = reference_pi_for(work)
    with work.scope():
        s2 = mpfr(Fraction(scale).numerator) ** 2 / mpfr(Fraction(scale).denominator) ** 2
        area = polygon_area([A, M, N, P])
        con.measure("AL", distance(A, L))
        con.measure("AM", distance(A, M))
        con.measure("area", area)
        con.measure("area_error", abs(area - ref * s2))
        con.measure("relative_error", area / (ref * s2) - 1)
    return con.finish(ctx)


def run_pi_rectangle(ctx: RealContext, scale=1) -> ConstructionTrace:
    """Rectangle OLMN with sides phi and (6/5) phi."""
    work = _working(ctx)
    con = Construction("pi-rectangle", work)
    con.metadata["placement"] = _PLACEMENT
    con.metadata["scale"] = str(scale)
    g = _golden_rectangle(con, scale)
    O, E, h, v = g["O"], g["E"], g["h"], g["v"]
    # step 3: fifth part HE of OE, carried once more beyond E
    parts = con.divide(O, E, 5, labels=["H1", "H2", "H3", "H"], aux_label="G")
    H = parts[-1]
    ring = con.compass(E, H, E)
    L = con.meet(h, ring, "L", farthest_from(O))
    # step 4: arc about O from E meets the vertical at N
    arc = con.circle(O, E, "Ce")
    N = con.meet(v, arc, "N", upper)
    # step 5: rectangle OLMN
    M = con.translate(N, O, L, "M")
    ref = reference_pi_for(work)
    with work.scope():
        s2 = mpfr(Fraction(scale).numerator) ** 2 / mpfr(Fraction(scale).denominator) ** 2
        area = polygon_area([O, L, M, N])
        con.measure("OL", distance(O, L))
        con.measure("ON", distance(O, N))
        con.measure("area", area)
        con.measure("area_error", abs(area - ref * s2))
        con.measure("relative_error", area / (ref * s2) - 1)
    return con.finish(ctx)


CONSTRUCTIONS = {"dixon": run_dixon, "pi-rectangle": run_pi_rectangle}


def figure2_construction(ctx: RealContext) -> ConstructionTrace:
    """Inscribed pentagon and decagon with A, F at the ends of a diameter."""
    work = _working(ctx)
    con = Construction("figure2", work)
    g = _golden_rectangle(con, 1)
    O, A, c0, F, E = g["O"], g["A"], g["C0"], g["A1"], g["E"]
    B = con.meet(con.compass(F, O, E), c0, "B", upper)        # |BF| = phi
    D = con.meet(con.compass(F, F, E), c0, "D2", upper)       # |DF| = phi - 1
    pentagon = [A, B]
    for i in range(2, 6):
        ring = con.compass(pentagon[-1], A, B)
        pentagon.append(con.meet(ring, c0, f"P{i}", farthest_from(pentagon[-2])))
    decagon = [F, D]
    for i in range(2, 11):
        ring = con.compass(decagon[-1], F, D)
        decagon.append(con.meet(ring, c0, f"T{i}", farthest_from(decagon[-2])))
    con.metadata["pentagon"] = " ".join(p.label for p in pentagon[:5])
    con.metadata["decagon"] = " ".join(p.label for p in decagon[:10])
    return con.finish(ctx)


def verify_figure2_relations(ctx: RealContext) -> list[CheckResult]:
    """Segment lengths and right angles among pentagon and decagon points."""
    if ctx.precision_bits < 192:
        raise ValueError("figure relations need at least 192 bits")
    work = ctx.widened(GUARD_BITS)
    trace = figure2_construction(ctx)
    pts = trace.objects
    A, B, D, F = pts["A"], pts["B"], pts["D2"], pts["A1"]
    tol = ctx.tolerance(16)

    def exact_sqrt(x: GoldenElement):
        with work.scope():
            return gmpy2.sqrt(ge_to_real(x, work))

    rows = []

    def check(name, measured, expected, anchor):
        with work.scope():
            diff = abs(measured - expected)
        rows.append(CheckResult(name, bool(diff <= tol), f"|diff| = {float(diff):.3g}", anchor))

    with work.scope():
        AB, BF, AD, DF, AF = (distance(A, B), distance(B, F), distance(A, D),
                              distance(D, F), distance(A, F))
        check("|AB| = sqrt(3 - phi)", AB, exact_sqrt(GoldenElement(3, -1)), "pentagon side")
        check("|BF| = phi", BF, ge_to_real(PHI, work), "gnomon side")
        check("|AD| = sqrt(2 + phi)", AD, exact_sqrt(GoldenElement(2, 1)), "pentagon diagonal")
        check("|DF| = sqrt(2 - phi)", DF, exact_sqrt(GoldenElement(2, -1)), "decagon side")
        check("|AF| = 2", AF, mpfr(2), "diameter")
        check("angle ABF = 90 deg", (A.x - B.x) * (F.x - B.x) + (A.y - B.y) * (F.y - B.y), mpfr(0),
              "Thales on diameter AF")
        check("angle ADF = 90 deg", (A.x - D.x) * (F.x - D.x) + (A.y - D.y) * (F.y - D.y), mpfr(0),
              "Thales on diameter AF")
        check("|AD| / |AB| = phi", AD / AB, ge_to_real(PHI, work), "pentagon D = phi L")
        check("|AB|^2 + |BF|^2 = 4", AB * AB + BF * BF, mpfr(4), "right triangle ABF")
        check("|DF|^2 + |AD|^2 = 4", DF * DF + AD * AD, mpfr(4), "right triangle AFD")
        P5 = pts["P5"]
        check("pentagon closes", distance(P5, A), mpfr(0), "five sides of length |AB|")
        T10 = pts["T10"]
        check("decagon closes", distance(T10, F), mpfr(0), "ten sides of length |DF|")
        decagon = [pts[l] for l in trace.metadata["decagon"].split()]
        for name, p in (("A", A), ("B", B)):
            gap = min(distance(p, q) for q in decagon)
            check(f"{name} is a decagon vertex", gap, mpfr(0), "AB, BF, AD are decagon diagonals")
    return rows


def render_svg(trace: ConstructionTrace, size: int = 640) -> str:
    """Static SVG of the final construction; coordinates to 12 digits."""
    pts = [o for o in trace.objects.values() if isinstance(o, Point)]
    xs = [float(p.x) for p in pts]
    ys = [float(p.y) for p in pts]
    for o in trace.objects.values():
        if isinstance(o, Circle):
            r = float(o.radius)
            xs += [float(o.center.x) - r, float(o.center.x) + r]
            ys += [float(o.center.y) - r, float(o.center.y) + r]
    pad = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys))
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    width = x1 - x0
    stroke = width / 400

    def g(v: float) -> str:
        return f"{v:.12g}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{int(size * (y1 - y0) / width)}" '
        f'viewBox="{g(x0)} {g(-y1)} {g(width)} {g(y1 - y0)}">',
        f"<title>{trace.name}</title>",
        f'<g fill="none" stroke="#555" stroke-width="{g(stroke)}">',
    ]
    for label, o in trace.objects.items():
        if isinstance(o, Circle):
            out.append(f'<circle id="{label}" cx="{g(float(o.center.x))}" cy="{g(-float(o.center.y))}" '
                       f'r="{g(float(o.radius))}"/>')
        elif isinstance(o, Line):
            out.append(f'<line id="{label}" x1="{g(float(o.p.x))}" y1="{g(-float(o.p.y))}" '
                       f'x2="{g(float(o.q.x))}" y2="{g(-float(o.q.y))}"/>')
    out.append("</g>")
    out.append(f'<g fill="#c00" font-size="{g(width / 40)}">')
    for label, o in trace.objects.items():
        if isinstance(o, Point) and not label.startswith("_"):
            out.append(f'<circle cx="{g(float(o.x))}" cy="{g(-float(o.y))}" r="{g(stroke * 2.5)}"/>')
            out.append(f'<text x="{g(float(o.x) + stroke * 4)}" y="{g(-float(o.y) - stroke * 4)}">{label}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def dixon_area_reference(ctx: RealContext) -> mpfr:
    return ge_to_real(dixon_constant(), ctx)
