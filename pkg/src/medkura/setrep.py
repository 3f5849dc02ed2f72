"""Closed planar sets as samplable oracles, and one-parameter families of them.

Every set is a finite union of *pieces* (points, segments, rays, lines,
circles and two kinds of even graphs).  A piece knows how to produce a
deterministic sample of itself inside a box at a given spacing, how to
rescale itself, and, when a closed form exists, its exact distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import EmptyOnWindow, InvalidGeometry

Box = tuple[float, float, float, float]


def as_point(p: Sequence[float]) -> tuple[float, float]:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidGeometry(f"non-finite point {p!r}")
    return (x, y)


def as_points(pts) -> np.ndarray:
    arr = np.asarray(pts, dtype=float).reshape(-1, 2)
    if not np.all(np.isfinite(arr)):
        raise InvalidGeometry("non-finite coordinates")
    return arr


@dataclass(frozen=True)
class Window:
    """Axis-aligned compact box with a grid spacing ``h``."""

    xmin: float
    ymin: float
    xmax: float
    ymax: float
    h: float

    def __post_init__(self):
        vals = (self.xmin, self.ymin, self.xmax, self.ymax, self.h)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidGeometry("window values must be finite")
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise InvalidGeometry("window min corner must be below max corner")
        if not (0 < self.h < min(self.xmax - self.xmin, self.ymax - self.ymin)):
            raise InvalidGeometry("grid spacing must be positive and below each side")

    @classmethod
    def square(cls, half: float, h: float) -> "Window":
        return cls(-half, -half, half, half, h)

    @property
    def diag(self) -> float:
        return math.hypot(self.xmax - self.xmin, self.ymax - self.ymin)

    @property
    def box(self) -> Box:
        return (self.xmin, self.ymin, self.xmax, self.ymax)

    def inflated(self, margin: float) -> Box:
        return (self.xmin - margin, self.ymin - margin, self.xmax + margin, self.ymax + margin)

    def with_h(self, h: float) -> "Window":
        return Window(self.xmin, self.ymin, self.xmax, self.ymax, h)

    def scaled(self, lam: float) -> "Window":
        """Window of ``lam * W`` with spacing ``lam * h`` (``lam > 0``)."""
        if lam <= 0:
            raise InvalidGeometry("scale must be positive")
        return Window(lam * self.xmin, lam * self.ymin, lam * self.xmax, lam * self.ymax, lam * self.h)

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        nx = int(math.floor((self.xmax - self.xmin) / self.h + 1e-9))
        ny = int(math.floor((self.ymax - self.ymin) / self.h + 1e-9))
        xs = self.xmin + self.h * np.arange(nx + 1)
        ys = self.ymin + self.h * np.arange(ny + 1)
        # exact zeros keep symmetric scenarios symmetric on the grid
        xs[np.abs(xs) < 1e-9 * self.h] = 0.0
        ys[np.abs(ys) < 1e-9 * self.h] = 0.0
        return xs, ys

    @property
    def shape(self) -> tuple[int, int]:
        xs, ys = self.axes()
        return (len(ys), len(xs))

    def nodes(self) -> np.ndarray:
        """Grid nodes in row-major order (y outer, x inner)."""
        xs, ys = self.axes()
        gx, gy = np.meshgrid(xs, ys)
        return np.column_stack([gx.ravel(), gy.ravel()])

    def contains(self, pts: np.ndarray, margin: float = 0.0) -> np.ndarray:
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        return (
            (pts[:, 0] >= self.xmin - margin)
            & (pts[:, 0] <= self.xmax + margin)
            & (pts[:, 1] >= self.ymin - margin)
            & (pts[:, 1] <= self.ymax + margin)
        )

    def boundary_distance(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        return np.minimum.reduce(
            [pts[:, 0] - self.xmin, self.xmax - pts[:, 0], pts[:, 1] - self.ymin, self.ymax - pts[:, 1]]
        )

    def to_json(self) -> list[float]:
        return [self.xmin, self.ymin, self.xmax, self.ymax]


# --------------------------------------------------------------------------
# pieces


def _clip_line(p, u, box: Box, lo: float, hi: float) -> tuple[float, float] | None:
    """Parameter range of ``p + s*u`` inside ``box`` intersected with [lo, hi]."""
    for k in range(2):
        bmin, bmax = box[k], box[k + 2]
        if abs(u[k]) < 1e-300:
            if p[k] < bmin or p[k] > bmax:
                return None
            continue
        s1 = (bmin - p[k]) / u[k]
        s2 = (bmax - p[k]) / u[k]
        if s1 > s2:
            s1, s2 = s2, s1
        lo, hi = max(lo, s1), min(hi, s2)
    if lo > hi:
        return None
    return lo, hi


def _unit(d) -> tuple[float, float]:
    n = math.hypot(d[0], d[1])
    if n == 0 or not math.isfinite(n):
        raise InvalidGeometry("zero direction")
    return (d[0] / n, d[1] / n)


def _stepped(p, u, s_lo: float, s_hi: float, eps: float, ends: Iterable[float] = ()) -> np.ndarray:
    """Points ``p + k*eps*u`` for the integers k with k*eps in [s_lo, s_hi]."""
    k0 = math.ceil(s_lo / eps - 1e-12)
    k1 = math.floor(s_hi / eps + 1e-12)
    s = eps * np.arange(k0, k1 + 1, dtype=float) if k1 >= k0 else np.empty(0)
    extra = [e for e in ends if s_lo - 1e-12 <= e <= s_hi + 1e-12]
    if extra:
        s = np.concatenate([s, np.asarray(extra, dtype=float)])
        s = np.unique(np.round(s, 15))
    return np.column_stack([p[0] + s * u[0], p[1] + s * u[1]])


def _project_param(pts: np.ndarray, p, u) -> np.ndarray:
    return (pts[:, 0] - p[0]) * u[0] + (pts[:, 1] - p[1]) * u[1]


class Piece:
    exact = True

    def sample(self, box: Box, eps: float) -> np.ndarray:  # pragma: no cover - interface
        raise NotImplementedError

    def distance(self, pts: np.ndarray) -> np.ndarray:  # pragma: no cover - interface
        raise NotImplementedError

    def project(self, pts: np.ndarray) -> np.ndarray:  # pragma: no cover - interface
        raise NotImplementedError

    def scaled(self, lam: float) -> "Piece":  # pragma: no cover - interface
        raise NotImplementedError


@dataclass(frozen=True)
class PointSet(Piece):
    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.points:
            raise InvalidGeometry("empty point set")
        object.__setattr__(self, "points", tuple(as_point(p) for p in self.points))

    def sample(self, box, eps):
        return np.array(self.points, dtype=float)

    def project(self, pts):
        P = np.array(self.points)
        d2 = ((pts[:, None, :] - P[None, :, :]) ** 2).sum(-1)
        return P[np.argmin(d2, axis=1)]

    def distance(self, pts):
        return np.linalg.norm(pts - self.project(pts), axis=1)

    def scaled(self, lam):
        return PointSet(tuple((lam * x, lam * y) for x, y in self.points))

    def to_json(self):
        return {"kind": "implicit-samples", "points": [list(p) for p in self.points]}

    def describe(self):
        if len(self.points) == 1:
            return "{(%g,%g)}" % self.points[0]
        return "{" + ",".join("(%g,%g)" % p for p in self.points) + "}"


@dataclass(frozen=True)
class Segment(Piece):
    """Closed segment sampled from ``a`` towards ``b``."""

    a: tuple[float, float]
    b: tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "a", as_point(self.a))
        object.__setattr__(self, "b", as_point(self.b))
        if self.a == self.b:
            raise InvalidGeometry("degenerate segment")

    @property
    def _frame(self):
        L = math.hypot(self.b[0] - self.a[0], self.b[1] - self.a[1])
        return _unit((self.b[0] - self.a[0], self.b[1] - self.a[1])), L

    def sample(self, box, eps):
        u, L = self._frame
        rng = _clip_line(self.a, u, box, 0.0, L)
        if rng is None:
            return np.empty((0, 2))
        return _stepped(self.a, u, rng[0], rng[1], eps, ends=(0.0, L))

    def project(self, pts):
        u, L = self._frame
        s = np.clip(_project_param(pts, self.a, u), 0.0, L)
        return np.column_stack([self.a[0] + s * u[0], self.a[1] + s * u[1]])

    def distance(self, pts):
        return np.linalg.norm(pts - self.project(pts), axis=1)

    def scaled(self, lam):
        return Segment((lam * self.a[0], lam * self.a[1]), (lam * self.b[0], lam * self.b[1]))

    def to_json(self):
        return {"kind": "polyline", "vertices": [list(self.a), list(self.b)]}

    def describe(self):
        return "[(%g,%g),(%g,%g)]" % (*self.a, *self.b)


@dataclass(frozen=True)
class Ray(Piece):
    origin: tuple[float, float]
    direction: tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "origin", as_point(self.origin))
        object.__setattr__(self, "direction", _unit(as_point(self.direction)))

    def sample(self, box, eps):
        rng = _clip_line(self.origin, self.direction, box, 0.0, math.inf)
        if rng is None:
            return np.empty((0, 2))
        return _stepped(self.origin, self.direction, rng[0], rng[1], eps, ends=(0.0,))

    def project(self, pts):
        u = self.direction
        s = np.maximum(_project_param(pts, self.origin, u), 0.0)
        return np.column_stack([self.origin[0] + s * u[0], self.origin[1] + s * u[1]])

    def distance(self, pts):
        return np.linalg.norm(pts - self.project(pts), axis=1)

    def scaled(self, lam):
        return Ray((lam * self.origin[0], lam * self.origin[1]), self.direction)

    def to_json(self):
        o, u = self.origin, self.direction
        return {"kind": "polyline", "vertices": [list(o), [o[0] + u[0], o[1] + u[1]]], "ray_end": True}

    def describe(self):
        return "ray (%g,%g)+s(%g,%g)" % (*self.origin, *self.direction)


@dataclass(frozen=True)
class Line(Piece):
    anchor: tuple[float, float]
    direction: tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "anchor", as_point(self.anchor))
        object.__setattr__(self, "direction", _unit(as_point(self.direction)))

    def sample(self, box, eps):
        rng = _clip_line(self.anchor, self.direction, box, -math.inf, math.inf)
        if rng is None:
            return np.empty((0, 2))
        return _stepped(self.anchor, self.direction, rng[0], rng[1], eps)

    def project(self, pts):
        u = self.direction
        s = _project_param(pts, self.anchor, u)
        return np.column_stack([self.anchor[0] + s * u[0], self.anchor[1] + s * u[1]])

    def distance(self, pts):
        return np.linalg.norm(pts - self.project(pts), axis=1)

    def scaled(self, lam):
        return Line((lam * self.anchor[0], lam * self.anchor[1]), self.direction)

    def to_json(self):
        p, u = self.anchor, self.direction
        return {
            "kind": "polyline",
            "vertices": [list(p), [p[0] + u[0], p[1] + u[1]]],
            "ray_start": True,
            "ray_end": True,
        }

    def describe(self):
        return "line (%g,%g)+s(%g,%g)" % (*self.anchor, *self.direction)


@dataclass(frozen=True)
class Circle(Piece):
    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise InvalidGeometry("circle radius must be positive")

    def sample(self, box, eps):
        r = self.radius
        n = max(8, 4 * math.ceil(2 * math.pi * r / (4 * eps)))
        cx, cy = self.center
        bx, by = 0.5 * (box[0] + box[2]), 0.5 * (box[1] + box[3])
        rb = 0.5 * math.hypot(box[2] - box[0], box[3] - box[1])
        D = math.hypot(bx - cx, by - cy)
        if D > r + rb or D + rb < r:
            # the bounding disc of the box misses the circle
            return np.empty((0, 2))
        k = np.arange(n)
        if D > 0:
            cosang = (r * r + D * D - rb * rb) / (2 * r * D)
            if cosang > -1:
                half = math.acos(min(1.0, cosang)) + 2 * math.pi / n
                th0 = math.atan2(by - cy, bx - cx)
                k0 = math.floor((th0 - half) * n / (2 * math.pi))
                k1 = math.ceil((th0 + half) * n / (2 * math.pi))
                if k1 - k0 < n:
                    k = np.unique(np.mod(np.arange(k0, k1 + 1), n))
        th = 2 * math.pi * k / n
        pts = np.column_stack([cx + r * np.cos(th), cy + r * np.sin(th)])
        inside = (
            (pts[:, 0] >= box[0]) & (pts[:, 0] <= box[2]) & (pts[:, 1] >= box[1]) & (pts[:, 1] <= box[3])
        )
        return pts[inside]

    def project(self, pts):
        c = np.asarray(self.center)
        v = pts - c
        n = np.linalg.norm(v, axis=1)
        safe = np.where(n > 0, n, 1.0)
        u = np.where(n[:, None] > 0, v / safe[:, None], np.array([1.0, 0.0]))
        return c + self.radius * u

    def distance(self, pts):
        return np.abs(np.linalg.norm(pts - np.asarray(self.center), axis=1) - self.radius)

    def scaled(self, lam):
        return Circle((lam * self.center[0], lam * self.center[1]), lam * self.radius)

    def to_json(self):
        return {"kind": "circle", "center": list(self.center), "radius": self.radius}

    def describe(self):
        return "circle c=(%g,%g) r=%g" % (*self.center, self.radius)


def _arc_samples(g: Callable[[np.ndarray], np.ndarray], u0: float, u1: float, eps: float) -> np.ndarray:
    """Samples of the graph of ``g`` over [u0, u1] spaced at most ~eps in arc length."""
    if u1 <= u0:
        u = np.array([u0])
        return np.column_stack([u, g(u)])
    m = 1025
    while True:
        u = np.linspace(u0, u1, m)
        p = np.column_stack([u, g(u)])
        seg = np.hypot(np.diff(p[:, 0]), np.diff(p[:, 1]))
        worst = float(seg.max())
        if worst <= eps / 8 or m >= 2**22:
            break
        m = int(min(2**22, m * max(2, math.ceil(worst / (eps / 8)))))
    s = np.concatenate([[0.0], np.cumsum(seg)])
    n = max(1, math.ceil(1.02 * s[-1] / eps))
    uk = np.interp(np.linspace(0.0, s[-1], n + 1), s, u)
    uk[0], uk[-1] = u0, u1
    return np.column_stack([uk, g(uk)])


class _EvenGraph(Piece):
    """Graph of an even function, increasing in |x|; sampled symmetrically."""

    exact = False

    def f(self, x):  # pragma: no cover - interface
        raise NotImplementedError

    def df(self, x):  # pragma: no cover - interface
        raise NotImplementedError

    def d2f(self, x):  # pragma: no cover - interface
        raise NotImplementedError

    def abscissa_range(self, ylo: float, yhi: float) -> tuple[float, float] | None:  # pragma: no cover
        raise NotImplementedError

    def sample(self, box, eps):
        rng = self.abscissa_range(box[1], box[3])
        if rng is None:
            return np.empty((0, 2))
        u0, u1 = rng
        u1 = min(u1, max(abs(box[0]), abs(box[2])))
        if u1 < u0:
            return np.empty((0, 2))
        right = _arc_samples(self.f, u0, u1, eps)
        left = right[right[:, 0] > 0][::-1] * np.array([-1.0, 1.0])
        pts = np.concatenate([left, right])
        inside = (pts[:, 0] >= box[0]) & (pts[:, 0] <= box[2])
        return pts[inside]

    def distance(self, pts):
        raise NotImplementedError("graphs have no closed-form distance")

    def project(self, pts):
        raise NotImplementedError("graphs have no closed-form projection")


@dataclass(frozen=True)
class Parabola(_EvenGraph):
    """y = a*x**2 + b."""

    a: float
    b: float

    def __post_init__(self):
        if self.a == 0 or not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidGeometry("parabola needs finite a != 0")

    def f(self, x):
        return self.a * np.asarray(x) ** 2 + self.b

    def df(self, x):
        return 2 * self.a * np.asarray(x)

    def d2f(self, x):
        return np.full_like(np.asarray(x, dtype=float), 2 * self.a)

    def abscissa_range(self, ylo, yhi):
        if self.a < 0:
            ylo, yhi = yhi, ylo
        q_hi = (yhi - self.b) / self.a
        q_lo = (ylo - self.b) / self.a
        if q_hi < 0:
            return None
        return (math.sqrt(max(0.0, q_lo)), math.sqrt(q_hi))

    def scaled(self, lam):
        return Parabola(self.a / lam, lam * self.b)

    def to_json(self):
        return {"kind": "graph", "form": "parabola", "a": self.a, "b": self.b}

    def describe(self):
        return "y=%g*x^2%+g" % (self.a, self.b)


@dataclass(frozen=True)
class SqrtGraph(_EvenGraph):
    """y = sqrt(x**2 + c**2) with c > 0 (upper hyperbola branch)."""

    c: float

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.c)):
            raise InvalidGeometry("sqrt graph needs c > 0")

    def f(self, x):
        return np.hypot(np.asarray(x, dtype=float), self.c)

    def df(self, x):
        x = np.asarray(x, dtype=float)
        return x / np.hypot(x, self.c)

    def d2f(self, x):
        x = np.asarray(x, dtype=float)
        return self.c**2 / np.hypot(x, self.c) ** 3

    def abscissa_range(self, ylo, yhi):
        if yhi < self.c:
            return None
        u0 = math.sqrt(ylo * ylo - self.c * self.c) if ylo > self.c else 0.0
        return (u0, math.sqrt(yhi * yhi - self.c * self.c))

    def scaled(self, lam):
        return SqrtGraph(lam * self.c)

    def to_json(self):
        return {"kind": "graph", "form": "sqrt", "c": self.c}

    def describe(self):
        return "y=sqrt(x^2+%g^2)" % self.c


# --------------------------------------------------------------------------
# oracles


@dataclass(frozen=True)
class SetOracle:
    """A closed nonempty planar set given as a union of pieces."""

    pieces: tuple[Piece, ...]
    descriptor: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.pieces:
            raise InvalidGeometry("a set oracle needs at least one piece")
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if not self.descriptor:
            object.__setattr__(self, "descriptor", " U ".join(p.describe() for p in self.pieces))

    @property
    def has_exact(self) -> bool:
        return all(p.exact for p in self.pieces)

    def sample(self, box: Box, eps: float) -> np.ndarray:
        parts = [p.sample(box, eps) for p in self.pieces]
        return np.concatenate(parts) if parts else np.empty((0, 2))

    def exact_distance(self, pts) -> np.ndarray:
        pts = as_points(pts)
        return np.min([p.distance(pts) for p in self.pieces], axis=0)

    def project(self, pts) -> np.ndarray:
        """Exact nearest point (lowest piece index wins ties)."""
        pts = as_points(pts)
        d = np.array([p.distance(pts) for p in self.pieces])
        best = np.argmin(d, axis=0)
        out = np.empty_like(pts)
        for k, piece in enumerate(self.pieces):
            sel = best == k
            if sel.any():
                out[sel] = piece.project(pts[sel])
        return out

    def scaled(self, lam: float) -> "SetOracle":
        name = self.descriptor if lam == 1 else f"{lam:g}*({self.descriptor})"
        return SetOracle(tuple(p.scaled(lam) for p in self.pieces), name)

    def union(self, other: "SetOracle") -> "SetOracle":
        return SetOracle(self.pieces + other.pieces, f"{self.descriptor} U {other.descriptor}")

    def to_json(self) -> dict:
        if len(self.pieces) == 1:
            doc = self.pieces[0].to_json()
        else:
            doc = {"kind": "union", "parts": [p.to_json() for p in self.pieces]}
        doc["descriptor"] = self.descriptor
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "SetOracle":
        return cls(tuple(_pieces_from_json(doc)), doc.get("descriptor", ""))


def _pieces_from_json(doc: dict) -> list[Piece]:
    kind = doc.get("kind")
    if kind == "union":
        out: list[Piece] = []
        for part in doc["parts"]:
            out.extend(_pieces_from_json(part))
        return out
    if kind == "circle":
        return [Circle(tuple(doc["center"]), float(doc["radius"]))]
    if kind == "graph":
        if doc["form"] == "parabola":
            return [Parabola(float(doc["a"]), float(doc["b"]))]
        if doc["form"] == "sqrt":
            return [SqrtGraph(float(doc["c"]))]
        raise InvalidGeometry(f"unknown graph form {doc['form']!r}")
    if kind == "implicit-samples":
        return [PointSet(tuple(tuple(p) for p in doc["points"]))]
    if kind == "polyline":
        v = [as_point(p) for p in doc["vertices"]]
        rs, re = bool(doc.get("ray_start")), bool(doc.get("ray_end"))
        if len(v) < 2:
            raise InvalidGeometry("polyline needs two vertices")
        if len(v) == 2 and rs and re:
            return [Line(v[0], (v[1][0] - v[0][0], v[1][1] - v[0][1]))]
        pieces: list[Piece] = []
        segs = list(zip(v[:-1], v[1:]))
        if rs:
            a, b = segs.pop(0)
            pieces.append(Ray(b, (a[0] - b[0], a[1] - b[1])))
        tail = None
        if re:
            a, b = segs.pop()
            tail = Ray(a, (b[0] - a[0], b[1] - a[1]))
        pieces.extend(Segment(a, b) for a, b in segs)
        if tail is not None:
            pieces.append(tail)
        return pieces
    raise InvalidGeometry(f"unknown oracle kind {kind!r}")


@dataclass(frozen=True)
class ParamFamily:
    """t -> X_t on a schedule |t_1| > |t_2| > ... > 0, with the section at t = 0 stored apart."""

    at: Callable[[float], SetOracle] = field(compare=False)
    schedule: tuple[float, ...]
    limit: SetOracle
    name: str = ""

    def __post_init__(self):
        sched = tuple(float(t) for t in self.schedule)
        if not sched:
            raise InvalidGeometry("empty schedule")
        if any(t == 0 or not math.isfinite(t) for t in sched):
            raise InvalidGeometry("schedule entries must be finite and nonzero")
        mags = [abs(t) for t in sched]
        if any(b >= a for a, b in zip(mags, mags[1:])):
            raise InvalidGeometry("schedule must be strictly decreasing in |t|")
        object.__setattr__(self, "schedule", sched)

    def sections(self) -> list[tuple[float, SetOracle]]:
        return [(t, self.at(t)) for t in self.schedule]

    def with_schedule(self, schedule: Sequence[float]) -> "ParamFamily":
        return ParamFamily(self.at, tuple(schedule), self.limit, self.name)

    def tail(self, k: int) -> tuple[float, ...]:
        return self.schedule[-k:]


def geometric_schedule(rho: float = 0.8, steps: int = 40, signed: bool = False, start: int = 1) -> tuple[float, ...]:
    """t_i = rho**i for i = start..start+steps-1, optionally alternating +,-,+,..."""
    if not (0 < rho < 1) or steps < 1:
        raise InvalidGeometry("need 0 < rho < 1 and steps >= 1")
    out = []
    for j, i in enumerate(range(start, start + steps)):
        t = rho**i
        out.append(-t if signed and j % 2 else t)
    return tuple(out)


def sample_set(oracle: SetOracle, window: Window, eps: float, margin: float = 0.0) -> np.ndarray:
    """Deterministic eps-sample of ``oracle`` on the window inflated by ``margin``."""
    if not eps > 0:
        raise InvalidGeometry("eps must be positive")
    pts = oracle.sample(window.inflated(margin), eps)
    inside = pts[window.contains(pts, margin)] if len(pts) else pts
    if len(pts) == 0 or not window.contains(pts, max(margin, eps)).any():
        raise EmptyOnWindow(f"{oracle.descriptor} does not meet the window")
    return inside


def restrict_to_window(points, window: Window, margin: float = 0.0) -> np.ndarray:
    if margin < 0:
        raise InvalidGeometry("margin must be nonnegative")
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        return pts
    return pts[window.contains(pts, margin)]


def default_margin(window: Window) -> float:
    return 2.0 * window.diag


# convenience constructors used by the scenario catalog


def point(x: float, y: float) -> SetOracle:
    return SetOracle((PointSet(((x, y),)),))


def points(*pts) -> SetOracle:
    return SetOracle((PointSet(tuple(pts)),))


def circle(cx: float, cy: float, r: float) -> SetOracle:
    return SetOracle((Circle((cx, cy), r),))


def union(*oracles: SetOracle, descriptor: str = "") -> SetOracle:
    pieces: list[Piece] = []
    for o in oracles:
        pieces.extend(o.pieces)
    return SetOracle(tuple(pieces), descriptor or " U ".join(o.descriptor for o in oracles))


def of(*pieces: Piece, descriptor: str = "") -> SetOracle:
    return SetOracle(tuple(pieces), descriptor)
