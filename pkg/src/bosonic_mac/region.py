"""Rate regions and squeezing surfaces.

A fixed encoding (one squeezing pair) cuts out a pentagon from the two
individual-rate constraints and the sum-rate constraint; regions are the
convex hull of pentagon vertices over a set of encodings.  Squeezing
surfaces grid the individual rates over squeeze fractions and quadrature
orientations.
"""

import enum
import math
from dataclasses import dataclass, field

from . import _kernels as kernels
from ._search import golden_section_max
from .gaussian_core import ChannelParams, PhotonBudget
from .rates import Receiver, User, outer_bound, rate_bundle, receiver_individual_rates

#: Quadrature orientation layers evaluated by surfaces and optimizers.
SIGN_LAYERS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


class Objective(enum.Enum):
    MAX_RA = "max-ra"
    MAX_RB = "max-rb"
    MAX_SUM = "max-sum"


@dataclass(frozen=True)
class RatePoint:
    r_a: float
    r_b: float

    def __post_init__(self):
        if self.r_a < 0.0 or self.r_b < 0.0:
            raise ValueError("rates must be >= 0")


@dataclass(frozen=True)
class Pentagon:
    """Region cut out by R_A <= r_a_max, R_B <= r_b_max, R_A + R_B <= sum_max."""

    r_a_max: float
    r_b_max: float
    sum_max: float
    vertices: tuple

    @classmethod
    def from_rates(cls, r_a_max: float, r_b_max: float, sum_max: float) -> "Pentagon":
        if sum_max >= r_a_max + r_b_max:
            corners = [
                (0.0, 0.0),
                (r_a_max, 0.0),
                (r_a_max, r_b_max),
                (0.0, r_b_max),
            ]
        else:
            corners = [
                (0.0, 0.0),
                (r_a_max, 0.0),
                (r_a_max, max(sum_max - r_a_max, 0.0)),
                (max(sum_max - r_b_max, 0.0), r_b_max),
                (0.0, r_b_max),
            ]
        vertices = []
        for c in corners:
            if not vertices or vertices[-1] != c:
                vertices.append(c)
        if len(vertices) > 1 and vertices[0] == vertices[-1]:
            vertices.pop()
        return cls(
            r_a_max, r_b_max, sum_max,
            tuple(RatePoint(a, b) for a, b in vertices),
        )

    def contains(self, point: RatePoint, tol: float = 1e-12) -> bool:
        return (
            point.r_a <= self.r_a_max + tol
            and point.r_b <= self.r_b_max + tol
            and point.r_a + point.r_b <= self.sum_max + tol
        )


def pentagon_at(params: ChannelParams, budget: PhotonBudget) -> Pentagon:
    """Pentagon of one encoding, from the joint-detection maximum rates."""
    bundle = rate_bundle(params, budget)
    return Pentagon.from_rates(bundle.r_max_a, bundle.r_max_b, bundle.r_max_ab)


@dataclass(frozen=True)
class SqueezeSurface:
    """Individual rates over a (p_a, p_b) squeeze-fraction grid, one layer
    per quadrature orientation pair."""

    p_values: tuple
    layers: dict
    params: ChannelParams
    n_a: float
    n_b: float

    def cell(self, sign_a: int, sign_b: int, i: int, j: int):
        return self.layers[(sign_a, sign_b)][i][j]

    def coherent_cell(self):
        """(r_max_a, r_max_b) of the zero-squeezing baseline."""
        return self.layers[SIGN_LAYERS[0]][0][0]

    def rows(self):
        """Long-format rows (p_a, p_b, sign_a, sign_b, r_max_a, r_max_b) in
        stable layer-major, row-major order."""
        out = []
        for signs in SIGN_LAYERS:
            if signs not in self.layers:
                continue
            grid = self.layers[signs]
            for i, p_a in enumerate(self.p_values):
                for j, p_b in enumerate(self.p_values):
                    ra, rb = grid[i][j]
                    out.append((p_a, p_b, signs[0], signs[1], ra, rb))
        return out

    def max_alice_rate(self):
        """Best r_max_a over the grid: (value, (sign_a, sign_b), p_a, p_b)."""
        best = None
        for signs, grid in self.layers.items():
            for i, p_a in enumerate(self.p_values):
                for j, p_b in enumerate(self.p_values):
                    ra = grid[i][j][0]
                    if best is None or ra > best[0]:
                        best = (ra, signs, p_a, p_b)
        return best


def _fraction_rates(params, n_a, n_b, p_a, p_b, sign_a, sign_b):
    r_a = sign_a * math.asinh(math.sqrt(p_a * n_a))
    r_b = sign_b * math.asinh(math.sqrt(p_b * n_b))
    return kernels.rate_triple(
        params.eta1, params.eta2, params.n_thermal, n_a, n_b, r_a, r_b
    )


def squeeze_surface(
    params: ChannelParams,
    budget: PhotonBudget,
    grid_n: int = 33,
    signs=SIGN_LAYERS,
) -> SqueezeSurface:
    """Evaluate the individual rates on a uniform (p_a, p_b) grid.

    Only the photon totals of ``budget`` are used; its squeezing
    parameters are replaced cell by cell.  The p = 0 row and column carry
    the coherent baseline.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    p_values = tuple(i / (grid_n - 1) for i in range(grid_n))
    layers = {}
    for sign_a, sign_b in signs:
        grid = []
        for p_a in p_values:
            row = []
            for p_b in p_values:
                ra, _, rb, _, _, _ = _fraction_rates(
                    params, budget.n_a, budget.n_b, p_a, p_b, sign_a, sign_b
                )
                row.append((ra, rb))
            grid.append(tuple(row))
        layers[(sign_a, sign_b)] = tuple(grid)
    return SqueezeSurface(p_values, layers, params, budget.n_a, budget.n_b)


@dataclass(frozen=True)
class OptimizeResult:
    objective: Objective
    p_a: float
    p_b: float
    sign_a: int
    sign_b: int
    value: float
    baseline: float


def optimize_squeezing(
    params: ChannelParams,
    budget: PhotonBudget,
    objective: Objective,
    signs=SIGN_LAYERS,
    grid_n: int = 33,
    tol: float = 1e-6,
) -> OptimizeResult:
    """Coarse grid then coordinate-wise golden-section refinement.

    The zero-squeezing baseline is always a candidate, so the result never
    falls below it.
    """
    idx = {Objective.MAX_RA: 0, Objective.MAX_RB: 2, Objective.MAX_SUM: 4}[objective]

    def value(p_a, p_b, sign_a, sign_b):
        return _fraction_rates(params, budget.n_a, budget.n_b, p_a, p_b, sign_a, sign_b)[idx]

    baseline = value(0.0, 0.0, 1, 1)
    best = (baseline, 0.0, 0.0, 1, 1)
    for sign_a, sign_b in signs:
        for i in range(grid_n):
            for j in range(grid_n):
                p_a, p_b = i / (grid_n - 1), j / (grid_n - 1)
                v = value(p_a, p_b, sign_a, sign_b)
                if v > best[0]:
                    best = (v, p_a, p_b, sign_a, sign_b)

    _, p_a, p_b, sign_a, sign_b = best
    step = 1.0 / (grid_n - 1)
    while step > tol:
        p_a, _ = golden_section_max(
            lambda x: value(x, p_b, sign_a, sign_b),
            max(0.0, p_a - step), min(1.0, p_a + step), tol=step * 1e-3,
        )
        p_b, _ = golden_section_max(
            lambda x: value(p_a, x, sign_a, sign_b),
            max(0.0, p_b - step), min(1.0, p_b + step), tol=step * 1e-3,
        )
        step /= 2.0
    refined = value(p_a, p_b, sign_a, sign_b)
    if refined < best[0]:
        refined, p_a, p_b = best[0], best[1], best[2]
    if refined < baseline:
        refined, p_a, p_b, sign_a, sign_b = baseline, 0.0, 0.0, 1, 1
    return OptimizeResult(objective, p_a, p_b, sign_a, sign_b, refined, baseline)


def convex_hull(points):
    """Andrew monotone chain; returns counterclockwise hull vertices."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class RateRegion:
    """Convex hull of achievable rate pairs with its generating encodings."""

    hull: tuple
    provenance: tuple

    def contains(self, point: RatePoint, tol: float = 1e-9) -> bool:
        pts = [(p.r_a, p.r_b) for p in self.hull]
        if len(pts) == 1:
            return (
                abs(point.r_a - pts[0][0]) <= tol
                and abs(point.r_b - pts[0][1]) <= tol
            )
        for i in range(len(pts)):
            ox, oy = pts[i]
            ax, ay = pts[(i + 1) % len(pts)]
            if (ax - ox) * (point.r_b - oy) - (ay - oy) * (point.r_a - ox) < -tol:
                return False
        return True


@dataclass(frozen=True)
class RegionData:
    """Region plus the labeled curve set used for reproduction plots."""

    region: RateRegion
    pentagons: tuple  # ((r_a, r_b) encoding, Pentagon) pairs
    heterodyne: Pentagon | None
    homodyne: Pentagon | None
    outer_bound: tuple  # (r_ub_a, r_ub_b)


def build_region(
    params: ChannelParams,
    budget: PhotonBudget,
    encodings,
    include_receiver_curves: bool = True,
) -> RegionData:
    """Union of per-encoding pentagons, closed convexly.

    ``encodings`` is a sequence of (r_a, r_b) squeezing pairs applied to
    the photon totals of ``budget``.  Receiver curves are the pentagons
    induced by the per-user and sum receiver capacities of the coherent
    encoding; the outer-bound box ignores the inter-user coupling.
    """
    encodings = tuple((float(ra), float(rb)) for ra, rb in encodings)
    if not encodings:
        raise ValueError("encodings must not be empty")
    pentagons = []
    vertices = []
    for r_a, r_b in encodings:
        pent = pentagon_at(params, PhotonBudget(budget.n_a, budget.n_b, r_a, r_b))
        pentagons.append(((r_a, r_b), pent))
        vertices.extend((v.r_a, v.r_b) for v in pent.vertices)
    hull = convex_hull(vertices)
    region = RateRegion(
        tuple(RatePoint(a, b) for a, b in hull), encodings
    )

    het = hom = None
    if include_receiver_curves:
        coherent = PhotonBudget(budget.n_a, budget.n_b)
        if params.eta2 > 0.0:
            het = Pentagon.from_rates(
                receiver_individual_rates(params, coherent, Receiver.HETERODYNE, User.ALICE),
                receiver_individual_rates(params, coherent, Receiver.HETERODYNE, User.BOB),
                kernels.heterodyne_rate_raw(
                    params.eta1, params.eta2, params.n_thermal, budget.n_a, budget.n_b
                ),
            )
        if params.eta1 > 0.0 and params.eta2 > 0.0:
            hom = Pentagon.from_rates(
                receiver_individual_rates(params, coherent, Receiver.HOMODYNE, User.ALICE),
                receiver_individual_rates(params, coherent, Receiver.HOMODYNE, User.BOB),
                kernels.homodyne_rate_raw(
                    params.eta1, params.eta2, params.n_thermal,
                    budget.n_a, budget.n_b, 0.0, 0.0,
                ),
            )
    box = (
        outer_bound(params, budget, User.ALICE),
        outer_bound(params, budget, User.BOB),
    )
    return RegionData(region, tuple(pentagons), het, hom, box)


@dataclass(frozen=True)
class ScanCell:
    s: float
    p_a: float
    p_b: float
    value: float


@dataclass(frozen=True)
class ScanReport:
    """Argmax cells of a global-photon-budget scan."""

    total_photons: float
    best: dict = field(default_factory=dict)

    @property
    def sum_argmax_coherent(self) -> bool:
        cell = self.best["sum"]
        return cell.p_a == 0.0 and cell.p_b == 0.0

    @property
    def alice_argmax_full_allocation(self) -> bool:
        cell = self.best["alice"]
        return cell.s == 1.0 and cell.p_a == 0.0

    def to_dict(self) -> dict:
        return {
            "total_photons": self.total_photons,
            "argmax": {
                name: {"s": c.s, "p_a": c.p_a, "p_b": c.p_b, "value": c.value}
                for name, c in self.best.items()
            },
            "sum_argmax_coherent": self.sum_argmax_coherent,
            "alice_argmax_full_allocation": self.alice_argmax_full_allocation,
        }


def global_constraint_scan(
    params: ChannelParams,
    total_photons: float,
    s_points: int = 101,
    fraction_points: int = 33,
) -> ScanReport:
    """Scan photon splits s and squeeze fractions under one shared budget.

    Alice gets s * total and Bob the rest; each cell reports the three
    objectives and the argmax cells are tracked with strict improvement,
    so ties resolve to the earliest cell in (s, p_a, p_b) order.
    """
    if total_photons < 0.0:
        raise ValueError("total_photons must be >= 0")
    best = {}
    for si in range(s_points):
        s = si / (s_points - 1)
        n_a = s * total_photons
        n_b = (1.0 - s) * total_photons
        for i in range(fraction_points):
            p_a = i / (fraction_points - 1)
            r_a = math.asinh(math.sqrt(p_a * n_a))
            for j in range(fraction_points):
                p_b = j / (fraction_points - 1)
                r_b = math.asinh(math.sqrt(p_b * n_b))
                ra, _, rb, _, rab, _ = kernels.rate_triple(
                    params.eta1, params.eta2, params.n_thermal, n_a, n_b, r_a, r_b
                )
                for name, v in (("alice", ra), ("bob", rb), ("sum", rab)):
                    if name not in best or v > best[name].value:
                        best[name] = ScanCell(s, p_a, p_b, v)
    return ScanReport(total_photons, best)
