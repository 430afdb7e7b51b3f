"""CSV and SVG writers for boundary polylines."""
from .rational import fraction_str
from .regions import CapUnion, ConicSide, HalfPlane, d_constraints, p_constraints, s_constraints, t_constraints


def _num(value):
    return format(float(value), '.17g')


def _linear(form):
    return f'{fraction_str(form.n1)}*x + {fraction_str(form.n2)}*y + {fraction_str(form.c)}'


def _conic(conic):
    A, B, C, D, E, F = (fraction_str(v) for v in conic.as_tuple())
    return f'{A}*x^2 + {B}*x*y + {C}*y^2 + {D}*x + {E}*y + {F}'


def describe(constraint):
    if isinstance(constraint, HalfPlane):
        return f'{_linear(constraint.form)} <= 0'
    if isinstance(constraint, ConicSide):
        return f'{_conic(constraint.conic)} >= 0'
    if isinstance(constraint, CapUnion):
        return f'{_linear(constraint.line)} <= 0 or {_conic(constraint.ellipse)} <= 0'
    raise TypeError(f'unknown constraint {constraint!r}')


def region_constraints(d, region):
    if region.tag == 'P':
        return p_constraints(d, region.k)
    if region.tag == 'S':
        return s_constraints(d, region.k)
    if region.tag == 'D':
        return d_constraints(d)
    return t_constraints(d)


def to_csv(d, region, points):
    lines = [f'# region={region} d={d}']
    lines.extend(f'{_num(pt.x)},{_num(pt.y)}' for pt in points)
    return '\n'.join(lines) + '\n'


def to_svg(d, region, points):
    """
    One closed path in a unit viewBox. Plane coordinates map to the box by
    X = (x - x0)/s, Y = 1 - (y - y0)/s, declared in the metadata.
    """
    xs = [float(pt.x) for pt in points]
    ys = [float(pt.y) for pt in points]
    x0, y0 = min(xs), min(ys)
    span = max(max(xs) - x0, max(ys) - y0) or 1.0
    path = ' '.join(
        f'{"M" if index == 0 else "L"}{_num((x - x0) / span)},{_num(1 - (y - y0) / span)}'
        for index, (x, y) in enumerate(zip(xs, ys))
    ) + ' Z'
    comments = [f'<!-- region={region} d={d} -->',
                f'<!-- transform: X = (x - {_num(x0)}) / {_num(span)}, Y = 1 - (y - {_num(y0)}) / {_num(span)} -->']
    comments.extend(f'<!-- {describe(c)} -->' for c in region_constraints(d, region))
    return '\n'.join([
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1">',
        *comments,
        f'<path d="{path}" fill="none" stroke="black" stroke-width="0.002"/>',
        '</svg>',
    ]) + '\n'
