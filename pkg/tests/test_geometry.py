import warnings
from fractions import Fraction

import gmpy2
import pytest

from radixpi.catalog import dixon_constant
from radixpi.context import RealContext, format_fixed, reference_pi_for
from radixpi.exactfield import GoldenElement, ge_to_real
from radixpi.geometry import (
    Circle,
    CoincidentCirclesError,
    CollinearityError,
    ConditioningWarning,
    Construction,
    DegenerateSegmentError,
    Line,
    ParallelLinesError,
    distance,
    divide_segment,
    figure2_construction,
    geometric_mean_point,
    intersect_circles,
    intersect_line_circle,
    intersect_lines,
    point,
    run_dixon,
    run_pi_rectangle,
    verify_figure2_relations,
)

CTX = RealContext(128)


def P(x, y):
    return point(x, y, ctx=CTX)


def close(a, b, tol=2 ** -110):
    with CTX.scope():
        return abs(a - b) <= tol


def same_point(p, x, y):
    return close(p.x, CTX.real(x)) and close(p.y, CTX.real(y))


def test_line_intersections():
    assert same_point(intersect_lines(Line(P(-1, 0), P(1, 0)), Line(P(0, -1), P(0, 1)), CTX), 0, 0)
    assert same_point(intersect_lines(Line(P(0, 0), P(1, 1)), Line(P(0, 2), P(2, 0)), CTX), 1, 1)
    with pytest.raises(ParallelLinesError):
        intersect_lines(Line(P(0, 0), P(1, 1)), Line(P(0, 1), P(1, 2)), CTX)
    with pytest.raises(DegenerateSegmentError):
        intersect_lines(Line(P(0, 0), P(0, 0)), Line(P(0, 1), P(1, 2)), CTX)


def test_near_parallel_lines_warn():
    con = Construction("warn", CTX)
    with pytest.warns(ConditioningWarning):
        with CTX.scope():
            tilted = P(1, 1 + gmpy2.mpfr("1e-6"))
        intersect_lines(Line(P(0, 0), P(1, 0)), Line(P(0, 1), tilted), CTX, con)
    assert con.warnings


def test_well_conditioned_lines_do_not_warn():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        intersect_lines(Line(P(0, 0), P(1, 0)), Line(P(0, 1), P(1, 0)), CTX)


def test_line_circle():
    unit = Circle(P(0, 0), CTX.real(1))
    pts = intersect_line_circle(Line(P(0, 5), P(0, -5)), unit, CTX)
    assert same_point(pts[0], 0, 1) and same_point(pts[1], 0, -1)
    tangent = intersect_line_circle(Line(P(-1, 1), P(1, 1)), unit, CTX)
    assert len(tangent) == 1 and same_point(tangent[0], 0, 1)
    assert intersect_line_circle(Line(P(-1, 2), P(1, 2)), unit, CTX) == []


def test_circle_circle():
    a = Circle(P(0, 0), CTX.real(1))
    pts = intersect_circles(a, Circle(P(1, 0), CTX.real(1)), CTX)
    with CTX.scope():
        h = gmpy2.sqrt(3) / 2
        below = -h
    assert same_point(pts[0], Fraction(1, 2), h)
    assert same_point(pts[1], Fraction(1, 2), below)
    tangent = intersect_circles(a, Circle(P(2, 0), CTX.real(1)), CTX)
    assert len(tangent) == 1 and same_point(tangent[0], 1, 0)
    assert intersect_circles(a, Circle(P(3, 0), CTX.real(1)), CTX) == []
    with pytest.raises(CoincidentCirclesError):
        intersect_circles(a, Circle(P(0, 0), CTX.real(1)), CTX)


def test_divide_segment():
    pts = divide_segment(P(0, 0), P(1, 0), 5, CTX)
    for i, p in enumerate(pts, 1):
        assert same_point(p, Fraction(i, 5), 0)
    (mid,) = divide_segment(P(0, 0), P(0, 2), 2, CTX)
    assert same_point(mid, 0, 1)
    end = ge_to_real(GoldenElement(1, 1), CTX)
    first = divide_segment(P(0, 0), point(end, 0), 5, CTX)[0]
    assert close(first.x, ge_to_real(GoldenElement(Fraction(1, 5), Fraction(1, 5)), CTX))
    assert format_fixed(first.x, 9) == "0.523606798"
    with pytest.raises(DegenerateSegmentError):
        divide_segment(P(1, 1), P(1, 1), 3, CTX)


def test_geometric_mean():
    m = geometric_mean_point(P(0, 0), P(4, 0), P(1, 0), CTX)
    with CTX.scope():
        assert same_point(m, 1, gmpy2.sqrt(3))
    assert close(distance(P(0, 0), m), CTX.real(2))
    b = point(ge_to_real(GoldenElement(Fraction(6, 5), Fraction(6, 5)), CTX), 0)
    m = geometric_mean_point(P(0, 0), b, P(1, 0), CTX)
    # sqrt(3.1416408) rather than sqrt(pi) = 1.7724539
    assert format_fixed(distance(P(0, 0), m), 8) == "1.7724674"
    edge = geometric_mean_point(P(0, 0), P(1, 0), P(1, 0), CTX)
    assert same_point(edge, 1, 0)
    with pytest.raises(CollinearityError):
        geometric_mean_point(P(0, 0), P(1, 0), P(0, 1), CTX)


def test_dixon_construction():
    trace = run_dixon(CTX)
    m = trace.measurements
    assert format_fixed(m["area"], 9) == "3.14164079"
    assert m["area_error"] < 5e-5
    assert format_fixed(m["AM"], 8) == "1.7724674"
    assert trace.is_sound()


def test_pi_rectangle_construction():
    trace = run_pi_rectangle(CTX)
    m = trace.measurements
    assert format_fixed(m["ON"], 11) == "1.6180339887"
    assert format_fixed(m["OL"], 11) == "1.9416407865"
    assert float(m["area_error"]) == pytest.approx(4.8133e-5, rel=1e-4)
    assert trace.is_sound()


def test_constructions_agree_with_exact_constant():
    exact = ge_to_real(dixon_constant(), CTX)
    for run in (run_dixon, run_pi_rectangle):
        area = run(CTX).measurements["area"]
        assert abs(area - exact) <= 8 * CTX.ulp(exact)


@pytest.mark.parametrize("scale", [Fraction(1, 2), 2, 3])
def test_scale_equivariance(scale):
    base = run_pi_rectangle(CTX)
    scaled = run_pi_rectangle(CTX, scale)
    s = CTX.real(Fraction(scale))
    with CTX.scope():
        assert close(scaled.measurements["OL"], base.measurements["OL"] * s, 2 ** -100)
        assert close(scaled.measurements["area_error"], base.measurements["area_error"] * s * s, 2 ** -100)
        rel = abs(scaled.measurements["relative_error"] - base.measurements["relative_error"])
    assert rel <= 2 * CTX.ulp(base.measurements["relative_error"])


def test_precision_floor():
    with pytest.raises(ValueError):
        run_dixon(RealContext(64))


def test_trace_serialization_is_stable():
    a, b = run_dixon(CTX).serialize(), run_dixon(CTX).serialize()
    assert a == b
    assert "step 1: given -> O [O=(0.00000000000000000000, 0.00000000000000000000)]" in a


def test_unsound_trace_detected():
    trace = run_pi_rectangle(CTX)
    steps = list(trace.steps)
    steps[3], steps[10] = steps[10], steps[3]
    broken = type(trace)(trace.name, trace.precision_bits, tuple(steps), trace.objects, trace.measurements)
    assert not broken.is_sound()


def test_figure2_relations():
    results = verify_figure2_relations(RealContext(256))
    assert results and all(r.passed for r in results)
    assert figure2_construction(RealContext(256)).is_sound()


def test_svg_output():
    svg = run_pi_rectangle(CTX).to_svg()
    assert svg.startswith("<?xml") and svg.rstrip().endswith("</svg>")
    assert ">N</text>" in svg and ">M</text>" in svg
