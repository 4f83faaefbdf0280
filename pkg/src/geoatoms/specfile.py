"""Line-oriented geodesic spec files.

::

    # atom E1 on the torus
    surface torus
    geodesic 1 0 0/1
    geodesic 0 1 0/1
    geodesic 1 1 1/3

Spherical surfaces (``sphere``, ``rp2``) use ``circle nx ny nz`` lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import GeoAtomsError
from .geodesic_arrangements import FlatGeodesicSpec, GreatCircleSpec
from .surface_map import SurfaceKind

INT64 = 2 ** 63


class SpecFileError(GeoAtomsError, ValueError):
    pass


@dataclass(frozen=True)
class SpecFile:
    surface: SurfaceKind
    specs: tuple


def _int(tok: str, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise SpecFileError(f"line {lineno}: expected an integer, got {tok!r}") from None
    if not -INT64 <= v < INT64:
        raise SpecFileError(f"line {lineno}: {tok} does not fit in 64 bits")
    return v


def _rational(tok: str, lineno: int) -> Fraction:
    num, sep, den = tok.partition("/")
    n = _int(num, lineno)
    d = _int(den, lineno) if sep else 1
    if d <= 0:
        raise SpecFileError(f"line {lineno}: denominator must be positive")
    return Fraction(n, d)


def parse(text: str) -> SpecFile:
    surface = None
    specs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "surface":
            if surface is not None:
                raise SpecFileError(f"line {lineno}: surface given twice")
            if len(rest) != 1:
                raise SpecFileError(f"line {lineno}: usage 'surface <sphere|rp2|torus|klein>'")
            try:
                surface = SurfaceKind.from_label(rest[0])
            except ValueError as exc:
                raise SpecFileError(f"line {lineno}: {exc}") from None
            continue
        if surface is None:
            raise SpecFileError(f"line {lineno}: the first record must be 'surface'")
        flat = surface in (SurfaceKind.TORUS, SurfaceKind.KLEIN_BOTTLE)
        try:
            if head == "geodesic" and flat:
                if len(rest) != 3:
                    raise SpecFileError(f"line {lineno}: usage 'geodesic <p> <q> <num>/<den>'")
                specs.append(FlatGeodesicSpec(_int(rest[0], lineno), _int(rest[1], lineno),
                                              _rational(rest[2], lineno)))
            elif head == "circle" and not flat:
                if len(rest) != 3:
                    raise SpecFileError(f"line {lineno}: usage 'circle <nx> <ny> <nz>'")
                specs.append(GreatCircleSpec(tuple(_int(t, lineno) for t in rest)))
            else:
                raise SpecFileError(f"line {lineno}: {head!r} record not valid on {surface.label}")
        except SpecFileError:
            raise
        except GeoAtomsError as exc:
            raise SpecFileError(f"line {lineno}: {exc}") from None
    if surface is None:
        raise SpecFileError("missing 'surface' line")
    if not specs:
        raise SpecFileError("no geodesics given")
    return SpecFile(surface, tuple(specs))


def format_spec(spec) -> str:
    if isinstance(spec, GreatCircleSpec):
        return "circle %d %d %d" % spec.normal
    c = Fraction(spec.c)
    return f"geodesic {spec.p} {spec.q} {c.numerator}/{c.denominator}"


def dumps(sf: SpecFile) -> str:
    return "\n".join([f"surface {sf.surface.label}"] + [format_spec(s) for s in sf.specs]) + "\n"


def read(path) -> SpecFile:
    with open(path) as fh:
        return parse(fh.read())
