"""Dual unit gain graphs, balance tests and relative-configuration schemes.

A unit gain graph assigns a unit dual element to every oriented edge, with the
reverse orientation carrying the inverse (= conjugate) gain.  Its adjacency
and Laplacian matrices are dual Hermitian, and the graph is balanced exactly
when a diagonal unit switching ``Y`` turns the Laplacian into the Laplacian of
the underlying graph.  In formation control the gains are desired relative
configurations ``q_ij = q_i* q_j`` between rigid bodies, and a scheme is
feasible (reasonable) exactly when its gain graph is balanced.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import ground as gr
from .dmat import DualMatrix, DualVector, dual_matmul, mat_norm
from .errors import DisconnectedGraph, NonUnitGain, RingMismatch
from .ground import Ring
from .heig import eig_hermitian
from .ring import DualNumber, DualScalar, Quaternion, make_rigid_motion
from .smm import CLUSTER_TOL, DualEigenDecomposition, smm_eig

__all__ = [
    "UnitGainGraph",
    "ConfigScheme",
    "Formation",
    "Violation",
    "BalanceReport",
    "adjacency_laplacian",
    "underlying_laplacian",
    "check_balance",
    "spectral_compare",
    "verify_reasonable",
    "cycle_spectrum_closed_form",
    "cycle_residue",
    "gen_balanced_cycle",
    "balanced_cycle_from",
    "random_unit_dual",
    "random_unit_dual_quaternion",
]

UNIT_TOL = 1e-10
BALANCE_THRESHOLD = 1e-8


@dataclass(frozen=True, eq=False)
class UnitGainGraph:
    """Undirected graph on vertices ``0..n-1`` with unit dual gains.

    ``edges`` holds ``(i, j, gain)`` with ``i < j``; an edge given as
    ``(j, i, g)`` is stored as ``(i, j, g*)``.
    """

    n: int
    edges: tuple[tuple[int, int, DualScalar], ...]
    ring: Ring
    unit_tol: float = UNIT_TOL

    def __post_init__(self):
        ring = Ring.parse(self.ring)
        object.__setattr__(self, "ring", ring)
        seen: set[tuple[int, int]] = set()
        norm_edges = []
        for i, j, g in self.edges:
            i, j = int(i), int(j)
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) out of range for {self.n} vertices")
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if g.ring is not ring:
                raise RingMismatch(f"gain on ({i}, {j}) is {g.ring.name}, graph is {ring.name}")
            if i > j:
                i, j, g = j, i, g.conjugate()
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            if not g.is_unit(self.unit_tol):
                raise NonUnitGain(f"gain on ({i}, {j}) has magnitude {g.magnitude()}")
            seen.add((i, j))
            norm_edges.append((i, j, g))
        object.__setattr__(self, "edges", tuple(norm_edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def gain(self, i: int, j: int) -> DualScalar:
        """Gain of the oriented edge ``i -> j``."""
        for a, b, g in self.edges:
            if (a, b) == (i, j):
                return g
            if (a, b) == (j, i):
                return g.conjugate()
        raise KeyError((i, j))

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j, _ in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return [sorted(a) for a in adj]

    def components(self) -> list[list[int]]:
        return _components(self.n, self.neighbors())

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def underlying(self) -> "UnitGainGraph":
        one = DualScalar.one(self.ring)
        return UnitGainGraph(self.n, tuple((i, j, one) for i, j, _ in self.edges), self.ring)

    def with_gain(self, i: int, j: int, gain: DualScalar) -> "UnitGainGraph":
        """Copy with the gain of edge ``i -> j`` replaced."""
        if i > j:
            i, j, gain = j, i, gain.conjugate()
        edges = tuple((a, b, gain if (a, b) == (i, j) else g) for a, b, g in self.edges)
        return UnitGainGraph(self.n, edges, self.ring, self.unit_tol)

    def cycle_product(self, cycle: list[int]) -> DualScalar:
        """Ordered product of the gains around ``cycle`` (closing edge included)."""
        out = DualScalar.one(self.ring)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            out = out * self.gain(a, b)
        return out


def _components(n: int, adj: list[list[int]]) -> list[list[int]]:
    seen = [False] * n
    comps = []
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        comp, queue = [], deque([root])
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def adjacency_laplacian(g: UnitGainGraph) -> tuple[DualMatrix, DualMatrix]:
    """Gain adjacency ``A`` and Laplacian ``L = D - A`` (``D`` = vertex degrees)."""
    n = g.n
    As = np.zeros((n, n, 4))
    Ad = np.zeros((n, n, 4))
    deg = np.zeros(n)
    for i, j, gain in g.edges:
        s, d = gain.standard.as_array(), gain.dual.as_array()
        As[i, j], Ad[i, j] = s, d
        As[j, i], Ad[j, i] = gr.qconj(s), gr.qconj(d)
        deg[i] += 1
        deg[j] += 1
    A = DualMatrix(As, Ad, g.ring)
    L = DualMatrix(gr.scalar_diag(deg) - As, -Ad, g.ring)
    return A, L


def underlying_laplacian(g: UnitGainGraph) -> DualMatrix:
    return adjacency_laplacian(g.underlying())[1]


@dataclass(eq=False)
class BalanceReport:
    """Outcome of the three-condition spectral balance test.

    ``err`` is the F^R-norm of ``Y* L Y - L_G``; ``switching`` holds the
    diagonal of ``Y``.  ``spectrum`` lists the Laplacian eigenvalues ascending.
    """

    balanced: bool
    zero_eigenvalue_count: int
    component_count: int
    condition1_ok: bool
    condition2_ok: bool
    err: float
    switching: DualVector | None
    spectrum: list[DualNumber] = field(default_factory=list)
    threshold: float = BALANCE_THRESHOLD
    max_entry_deviation: float = 0.0
    smallest_eigenvalue: DualNumber | None = None

    def to_dict(self) -> dict:
        return {
            "balanced": self.balanced,
            "zero_eigenvalue_count": self.zero_eigenvalue_count,
            "component_count": self.component_count,
            "condition1_ok": self.condition1_ok,
            "condition2_ok": self.condition2_ok,
            "err": self.err,
            "threshold": self.threshold,
            "max_entry_deviation": self.max_entry_deviation,
            "spectrum": [[v.standard, v.dual] for v in self.spectrum],
        }


def _submatrix(M: DualMatrix, idx: list[int]) -> DualMatrix:
    ix = np.ix_(idx, idx)
    return DualMatrix(M.standard[ix], M.dual[ix], M.ring)


def check_balance(g: UnitGainGraph, threshold: float = BALANCE_THRESHOLD, *,
                  tol: float = CLUSTER_TOL, entry_tol: float = 1e-6) -> BalanceReport:
    """Test balance of ``g`` through the spectrum of its Laplacian.

    The Laplacian is block diagonal over connected components, so each block
    is decomposed separately and its smallest eigenpair supplies the
    component's null vector.  The graph is balanced when (i) there is exactly
    one zero eigenvalue per component and it is the smallest, (ii) every entry
    of that null vector has dual magnitude ``1/sqrt(n_i)``, and (iii) the
    switching ``y(j) = x(j)/|x(j)|`` satisfies ``||Y* L Y - L_G||_{F^R} <= threshold``.
    """
    n = g.n
    _, L = adjacency_laplacian(g)
    comps = g.components()
    spectrum: list[DualNumber] = []
    zero_count = 0
    cond1 = True
    cond2 = True
    max_dev = 0.0
    xs = np.zeros((n, 4))
    xd = np.zeros((n, 4))
    smallest = None
    for comp in comps:
        dec = smm_eig(_submatrix(L, comp), tol=tol)
        asc = dec.ascending()
        spectrum.extend(p.value for p in asc)
        zeros = [p for p in asc if p.value.twoR() <= threshold]
        zero_count += len(zeros)
        low = asc[0]
        if smallest is None or low.value < smallest:
            smallest = low.value
        if len(zeros) != 1 or low.value.twoR() > threshold:
            cond1 = False
        target = 1.0 / math.sqrt(len(comp))
        vec = low.vector
        for k, v in enumerate(comp):
            mag = vec[k].magnitude()
            dev = math.hypot(mag.standard - target, mag.dual)
            max_dev = max(max_dev, dev)
            if dev > entry_tol:
                cond2 = False
        xs[comp] = vec.standard
        xd[comp] = vec.dual
    spectrum.sort()
    cond1 = cond1 and zero_count == len(comps)

    x_a = DualVector(xs, xd, g.ring)
    try:
        y = [x_a[j] * x_a[j].magnitude().inverse() for j in range(n)]
    except ZeroDivisionError:
        return BalanceReport(False, zero_count, len(comps), cond1, cond2, math.inf, None,
                             spectrum, threshold, max_dev, smallest)
    Y = DualMatrix.diagonal(y) if n else DualMatrix.zeros(0, 0, g.ring)
    switched = dual_matmul(dual_matmul(Y.dagger(), L), Y)
    err = mat_norm(switched - underlying_laplacian(g), "froR")
    balanced = cond1 and cond2 and err <= threshold
    return BalanceReport(balanced, zero_count, len(comps), cond1, cond2, err,
                         DualVector.from_scalars(y) if n else None,
                         spectrum, threshold, max_dev, smallest)


def spectral_compare(g: UnitGainGraph, tol: float = BALANCE_THRESHOLD) -> bool:
    """Whether the gain adjacency spectrum equals the underlying graph's."""
    A, _ = adjacency_laplacian(g)
    if g.n == 0:
        return True
    dec = smm_eig(A)
    asc = dec.ascending()
    ref = eig_hermitian(gr.to_native(adjacency_laplacian(g.underlying())[0].standard, Ring.REAL)).values
    for p, r in zip(asc, ref):
        if abs(p.value.standard - r) > tol * max(1.0, abs(r)) or abs(p.value.dual) > tol:
            return False
    return True


# -- relative configuration schemes ----------------------------------------


@dataclass(frozen=True, eq=False)
class Formation:
    """One unit dual configuration per rigid body."""

    configs: tuple[DualScalar, ...]
    reasonable: bool = field(default=True, init=False)

    def __len__(self) -> int:
        return len(self.configs)

    def __getitem__(self, i: int) -> DualScalar:
        return self.configs[i]

    def left_factor(self, other: "Formation") -> DualScalar:
        """``c`` with ``self[0] = c other[0]``."""
        return self.configs[0] * other.configs[0].conjugate()

    def coset_distance(self, other: "Formation") -> float:
        """Largest entrywise ``twoR(self[i] - c other[i])`` after fixing ``c``."""
        c = self.left_factor(other)
        return max((a - c * b).twoR() for a, b in zip(self.configs, other.configs))


@dataclass(frozen=True)
class Violation:
    """An edge on which no formation can satisfy the scheme."""

    edge: tuple[int, int]
    mismatch: float
    kind: str
    reasonable: bool = field(default=False, init=False)


@dataclass(frozen=True, eq=False)
class ConfigScheme:
    """Desired relative configurations ``q_ij`` on oriented edges.

    Both orientations may be stored; a missing reverse orientation is implied
    as the conjugate.
    """

    n: int
    gains: dict
    ring: Ring = Ring.QUATERNION

    def __post_init__(self):
        object.__setattr__(self, "ring", Ring.parse(self.ring))
        for (i, j), q in self.gains.items():
            if not (0 <= i < self.n and 0 <= j < self.n) or i == j:
                raise ValueError(f"bad edge ({i}, {j})")
            if q.ring is not self.ring:
                raise RingMismatch(f"gain on ({i}, {j}) is {q.ring.name}, scheme is {self.ring.name}")

    @classmethod
    def from_graph(cls, g: UnitGainGraph) -> "ConfigScheme":
        return cls(g.n, {(i, j): q for i, j, q in g.edges}, g.ring)

    @classmethod
    def from_formation(cls, formation, edges) -> "ConfigScheme":
        """Scheme ``q_ij = q_i* q_j`` realised by ``formation`` on ``edges``."""
        configs = formation.configs if isinstance(formation, Formation) else tuple(formation)
        ring = configs[0].ring
        return cls(len(configs), {(i, j): configs[i].conjugate() * configs[j] for i, j in edges}, ring)

    def edge_pairs(self) -> list[tuple[int, int]]:
        return sorted({(min(i, j), max(i, j)) for i, j in self.gains})

    def gain(self, i: int, j: int) -> DualScalar:
        if (i, j) in self.gains:
            return self.gains[(i, j)]
        return self.gains[(j, i)].conjugate()

    def to_graph(self) -> UnitGainGraph:
        return UnitGainGraph(self.n, tuple((i, j, self.gain(i, j)) for i, j in self.edge_pairs()), self.ring)


def verify_reasonable(scheme: ConfigScheme | UnitGainGraph, tol: float = BALANCE_THRESHOLD,
                      *, unit_tol: float = UNIT_TOL) -> Formation | Violation:
    """Find a formation realising ``scheme`` or the edge that rules one out.

    Configurations are propagated down a breadth-first spanning tree rooted
    at vertex 0 (``q_0 = 1``, ``q_child = q_parent q_parent,child``); every
    non-tree edge then has to satisfy ``q_ij = q_i* q_j``, which is the same as
    every cycle product being 1.  The returned :class:`Violation` carries the
    edge with the largest mismatch.
    """
    if isinstance(scheme, UnitGainGraph):
        scheme = ConfigScheme.from_graph(scheme)
    for (i, j), q in scheme.gains.items():
        if not q.is_unit(unit_tol):
            raise NonUnitGain(f"gain on ({i}, {j}) has magnitude {q.magnitude()}")
    for (i, j), q in scheme.gains.items():
        if i < j and (j, i) in scheme.gains:
            mismatch = (scheme.gains[(j, i)] - q.conjugate()).twoR()
            if mismatch > tol:
                return Violation((j, i), mismatch, "hermitian")

    pairs = scheme.edge_pairs()
    adj: list[list[int]] = [[] for _ in range(scheme.n)]
    for i, j in pairs:
        adj[i].append(j)
        adj[j].append(i)
    adj = [sorted(a) for a in adj]
    if scheme.n > 1 and len(_components(scheme.n, adj)) > 1:
        raise DisconnectedGraph("relative configuration scheme needs a connected graph")

    configs: list[DualScalar | None] = [None] * scheme.n
    if scheme.n == 0:
        return Formation(())
    configs[0] = DualScalar.one(scheme.ring)
    tree: set[tuple[int, int]] = set()
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if configs[w] is None:
                configs[w] = configs[v] * scheme.gain(v, w)
                tree.add((min(v, w), max(v, w)))
                queue.append(w)

    worst: Violation | None = None
    for i, j in pairs:
        if (i, j) in tree:
            continue
        mismatch = (configs[i].conjugate() * configs[j] - scheme.gain(i, j)).twoR()
        if mismatch > tol and (worst is None or mismatch > worst.mismatch):
            worst = Violation((i, j), mismatch, "cycle")
    if worst is not None:
        return worst
    return Formation(tuple(configs))


# -- cycles and random generation -------------------------------------------


def cycle_spectrum_closed_form(n: int, theta: float = 0.0) -> np.ndarray:
    """Ascending ``2 - 2 cos((theta + 2 pi j) / n)``, ``j = 0..n-1``."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    j = np.arange(n)
    return np.sort(2.0 - 2.0 * np.cos((theta + 2.0 * np.pi * j) / n))


def cycle_residue(dec: DualEigenDecomposition, n: int, theta: float = 0.0) -> float:
    """2R-norm distance between computed Laplacian eigenvalues and the closed form."""
    asc = dec.ascending()
    std = np.array([p.value.standard for p in asc])
    dual = np.array([p.value.dual for p in asc])
    ref = cycle_spectrum_closed_form(n, theta)
    return float(np.sqrt(np.sum((std - ref) ** 2) + np.sum(dual ** 2)))


def random_unit_dual(ring: Ring, rng: np.random.Generator) -> DualScalar:
    """Random unit dual element: random rotation followed by a random translation."""
    ring = Ring.parse(ring)
    if ring is Ring.QUATERNION:
        q = rng.normal(size=4)
        q /= np.linalg.norm(q)
        p = np.concatenate([[0.0], rng.normal(size=3)])
        return make_rigid_motion(Quaternion.from_array(q), Quaternion.from_array(p))
    if ring is Ring.COMPLEX:
        phi = rng.uniform(0.0, 2.0 * np.pi)
        rot = Quaternion(math.cos(phi), math.sin(phi))
        return make_rigid_motion(rot, Quaternion(0.0, float(rng.normal())), ring=Ring.COMPLEX)
    # Unit dual numbers are exactly +-1.
    return DualScalar.real(1.0 if rng.random() < 0.5 else -1.0)


def random_unit_dual_quaternion(seed=None) -> DualScalar:
    return random_unit_dual(Ring.QUATERNION, np.random.default_rng(seed))


def balanced_cycle_from(vertices: list[DualScalar]) -> UnitGainGraph:
    """Cycle with gains ``q_i* q_(i+1)`` and closing gain ``q_(n-1)* q_0``."""
    n = len(vertices)
    edges = [(i, i + 1, vertices[i].conjugate() * vertices[i + 1]) for i in range(n - 1)]
    # closing edge n-1 -> 0, stored as 0 -> n-1 with the conjugate gain
    edges.append((0, n - 1, vertices[0].conjugate() * vertices[n - 1]))
    return UnitGainGraph(n, tuple(edges), vertices[0].ring)


def gen_balanced_cycle(n: int, ring: Ring | str = Ring.QUATERNION, seed=None) -> UnitGainGraph:
    """Random balanced cycle on ``n`` vertices; deterministic per seed."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    rng = np.random.default_rng(seed)
    ring = Ring.parse(ring)
    return balanced_cycle_from([random_unit_dual(ring, rng) for _ in range(n)])
