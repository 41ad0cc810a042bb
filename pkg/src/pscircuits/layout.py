"""Parallel-sequential (PS) circuit layouts.

A PS layout arranges stacks of M two-qubit gates on the bonds of an open
chain of N qubits.  Bonds are grouped into chunks of length ``l``; inside a
chunk the gate order is sequential (ascending bond index), and at each chunk
boundary a junction window of ``q + 1`` bonds is applied in inverted
(descending) order so that neighbouring chunks can run in parallel.  The two
limits are the brickwall circuit (l = 2, q = 1) and the sequential circuit
(l = N - 1, q = 1).

Layouts are pure data: scheduled gate placements ``(bond, layer, t)`` with an
as-soon-as-possible (ASAP) time assignment.  For the supported ("regular")
parameter combinations the scheduled depth equals ``l + q + 2M - 3``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable

__all__ = [
    "LayoutError",
    "LayoutParams",
    "GatePlacement",
    "CircuitLayout",
    "build_ps_layout",
    "build_brickwall_layout",
    "build_sequential_layout",
    "idle_layout",
    "gate_count",
    "inverse_light_cone",
    "max_junction_correlation_distance",
    "ps_depth_formula",
    "is_regular_params",
]


class LayoutError(ValueError):
    """Raised for invalid layout parameters or internal inconsistencies."""


def ps_depth_formula(num_layers: int, chunk_length: int, overlap: int) -> int:
    """Scheduled depth of a regular PS layout: l + q + 2M - 3."""
    return chunk_length + overlap + 2 * num_layers - 3


@dataclass(frozen=True)
class LayoutParams:
    """Hyperparameters of a PS layout.

    num_qubits N >= 2, num_layers M >= 1, chunk_length 2 <= l <= N - 1,
    overlap 1 <= q <= l.
    """

    num_qubits: int
    num_layers: int
    chunk_length: int
    overlap: int

    def __post_init__(self) -> None:
        n, m, l, q = self.num_qubits, self.num_layers, self.chunk_length, self.overlap
        if n < 2:
            raise LayoutError(f"num_qubits must be >= 2, got {n}")
        if m < 1:
            raise LayoutError(f"num_layers must be >= 1, got {m}")
        if not 2 <= l <= n - 1:
            raise LayoutError(
                f"chunk_length must satisfy 2 <= l <= N-1 (N={n}), got l={l}"
            )
        if not 1 <= q <= l:
            raise LayoutError(f"overlap must satisfy 1 <= q <= l (l={l}), got q={q}")


@dataclass(frozen=True)
class GatePlacement:
    """A two-qubit gate on bond b (qubits b, b+1), layer m, time step t.

    ``role`` is construction metadata: "plain" for sequential-run gates,
    "window" for the descending junction gates, "window_extra" for the single
    re-entangling gate each interior junction bond receives.
    """

    bond: int
    layer: int
    time: int
    role: str = "plain"
    junction: int | None = None

    @property
    def qubits(self) -> tuple[int, int]:
        return (self.bond, self.bond + 1)


@dataclass(frozen=True)
class CircuitLayout:
    """A scheduled set of nearest-neighbour gate placements on N qubits."""

    num_qubits: int
    placements: tuple[GatePlacement, ...]
    depth: int
    num_chunks: int
    params: LayoutParams | None = None
    kind: str = "ps"
    junction_bonds: tuple[int, ...] = ()
    regular: bool = True

    # -- basic queries ------------------------------------------------------

    def gate_count(self) -> int:
        return len(self.placements)

    def bonds_at_step(self, t: int) -> list[int]:
        return [p.bond for p in self.placements if p.time == t]

    def time_ordered(self) -> list[GatePlacement]:
        return sorted(self.placements, key=lambda p: (p.time, p.bond, p.layer))

    def placement_key(self, p: GatePlacement) -> tuple:
        return (p.bond, p.layer, p.time)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> str:
        obj = {
            "params": None
            if self.params is None
            else {
                "N": self.params.num_qubits,
                "M": self.params.num_layers,
                "l": self.params.chunk_length,
                "q": self.params.overlap,
            },
            "placements": [
                {"bond": p.bond, "layer": p.layer, "t": p.time}
                for p in self.time_ordered()
            ],
            "depth": self.depth,
            "n_chunks": self.num_chunks,
        }
        return json.dumps(obj, indent=1, sort_keys=True)

    def validate(self) -> None:
        """Check the structural invariants; raise LayoutError on violation."""
        seen: dict[int, set[int]] = {}
        for p in self.placements:
            if not 1 <= p.bond <= self.num_qubits - 1:
                raise LayoutError(f"bond {p.bond} out of range")
            if p.time < 1 or p.time > self.depth:
                raise LayoutError(f"time {p.time} out of range")
            for qb in p.qubits:
                seen.setdefault(p.time, set())
            occupied = seen[p.time]
            if p.bond in occupied or p.bond + 1 in occupied:
                raise LayoutError(
                    f"qubit collision at t={p.time} around bond {p.bond}"
                )
            occupied.update(p.qubits)
        # every bond carries exactly M stacked layers, extras only in windows
        if self.params is not None and self.kind in ("ps", "brickwall", "sequential"):
            m_layers = self.params.num_layers
            for b in range(1, self.num_qubits):
                stack = sorted(
                    p.layer for p in self.placements if p.bond == b and p.role != "window_extra"
                )
                if stack != list(range(1, m_layers + 1)):
                    raise LayoutError(f"bond {b} carries layers {stack}")
            for p in self.placements:
                if p.role == "window_extra" and p.junction is None:
                    raise LayoutError("extra placement outside a junction window")


# -- construction -----------------------------------------------------------


def _chunk_ranges(n: int, l: int) -> list[tuple[int, int]]:
    """Nonempty chunks of bonds [start, end] (1-indexed, inclusive)."""
    n_bonds = n - 1
    out = []
    start = 1
    while start <= n_bonds:
        out.append((start, min(start + l - 1, n_bonds)))
        start += l
    return out


def is_regular_params(params: LayoutParams) -> bool:
    """True when the junction construction realises depth l + q + 2M - 3.

    Regularity requires every junction window (bonds [c*l, c*l + q]) to fit
    inside the chain without colliding with the neighbouring window.  Two
    degenerate families are excluded: q > 1 with no junction at all (a single
    chunk is simply sequential, whatever q claims), and maximally packed
    multi-layer windows (l == q + 1 with M >= 2), where the extra stitch gates
    provably cannot be scheduled within the formula depth.
    """
    n, m, l, q = params.num_qubits, params.num_layers, params.chunk_length, params.overlap
    chunks = _chunk_ranges(n, l)
    k = len(chunks) - 1
    if k == 0:
        return q == 1  # plain sequential run; depth formula needs q == 1
    if q >= l:
        return False  # adjacent windows would share a bond
    if k * l + q > n - 1:
        return False  # last window truncated by the right boundary
    if m >= 2 and q >= 2 and l == q + 1:
        return False  # stitch gates cannot fit in the formula depth
    return True


def _single_layer_slots(params: LayoutParams) -> list[tuple[int, str, int | None]]:
    """Construction-order slot list (bond, role, junction) for one layer."""
    n, l, q = params.num_qubits, params.chunk_length, params.overlap
    n_bonds = n - 1
    chunks = _chunk_ranges(n, l)
    k = len(chunks) - 1

    window_desc: list[list[int]] = []
    window_extra: list[list[int]] = []
    window_bonds: set[int] = set()
    for c in range(1, k + 1):
        boundary = c * l
        desc = list(range(boundary, min(boundary + q, n_bonds) + 1))
        extra = [b for b in range(boundary + 1, boundary + q) if b <= n_bonds]
        window_desc.append(desc)
        window_extra.append(extra)
        window_bonds.update(desc)

    slots: list[tuple[int, str, int | None]] = []
    for c, (lo, hi) in enumerate(chunks):
        for b in range(lo, hi + 1):
            if b not in window_bonds:
                slots.append((b, "plain", None))
        if c < k:
            for b in reversed(window_desc[c]):
                slots.append((b, "window", c))
            for b in window_extra[c]:
                slots.append((b, "window_extra", c))
    return slots


def _asap_single_layer(slots: list[tuple[int, str, int | None]]) -> list[int]:
    """ASAP start times over the slot list (qubit-sharing pairs keep list order)."""
    last_on_qubit: dict[int, int] = {}
    starts = []
    for bond, _role, _j in slots:
        t = 1 + max(last_on_qubit.get(bond, 0), last_on_qubit.get(bond + 1, 0))
        starts.append(t)
        last_on_qubit[bond] = t
        last_on_qubit[bond + 1] = t
    return starts


def _asap_layered_fallback(
    slots: list[tuple[int, str, int | None]], m_layers: int
) -> list[GatePlacement]:
    """Strict layer-by-layer ASAP; always collision-free, depth may exceed formula."""
    last_on_qubit: dict[int, int] = {}
    placements = []
    for m in range(1, m_layers + 1):
        for bond, role, j in slots:
            if role == "window_extra" and m != m_layers:
                continue
            layer = m_layers if role == "window_extra" else m
            t = 1 + max(last_on_qubit.get(bond, 0), last_on_qubit.get(bond + 1, 0))
            placements.append(GatePlacement(bond, layer, t, role, j))
            last_on_qubit[bond] = t
            last_on_qubit[bond + 1] = t
    return placements


def build_ps_layout(params: LayoutParams) -> CircuitLayout:
    """Build a PS layout and its ASAP schedule.

    Each slot of the single-layer pattern carries a stack of M gates at times
    ``start, start + 2, ...``; the junction stitch gates ride once at the top
    layer's offset.  If that schedule collides (irregular parameters), a
    sequentialised layer-by-layer ASAP is used instead and ``regular`` is set
    to False.
    """
    n, m_layers = params.num_qubits, params.num_layers
    l, q = params.chunk_length, params.overlap
    slots = _single_layer_slots(params)
    starts = _asap_single_layer(slots)

    placements = []
    for (bond, role, j), start in zip(slots, starts):
        if role == "window_extra":
            placements.append(
                GatePlacement(bond, m_layers, start + 2 * (m_layers - 1), role, j)
            )
        else:
            for m in range(1, m_layers + 1):
                placements.append(
                    GatePlacement(bond, m, start + 2 * (m - 1), role, j)
                )

    # collision check of the stacked schedule
    occupied: set[tuple[int, int]] = set()
    collision = False
    for p in placements:
        for qb in p.qubits:
            if (p.time, qb) in occupied:
                collision = True
        occupied.update((p.time, qb) for qb in p.qubits)

    expected_regular = is_regular_params(params)
    if collision:
        placements = _asap_layered_fallback(slots, m_layers)
        regular = False
    else:
        regular = True

    depth = max(p.time for p in placements)
    formula = ps_depth_formula(m_layers, l, q)
    if expected_regular:
        if collision or depth != formula:
            raise LayoutError(
                f"internal inconsistency: regular params {params} scheduled to "
                f"depth {depth}, formula gives {formula}"
            )
    else:
        regular = False

    chunks = _chunk_ranges(n, l)
    k = len(chunks) - 1
    layout = CircuitLayout(
        num_qubits=n,
        placements=tuple(placements),
        depth=depth,
        num_chunks=math.ceil(n / l),
        params=params,
        kind="ps",
        junction_bonds=tuple(c * l for c in range(1, k + 1)),
        regular=regular and expected_regular,
    )
    layout.validate()
    return layout


def build_brickwall_layout(num_qubits: int, num_layers: int) -> CircuitLayout:
    """Brickwall layout of depth 2M: the PS limit l = 2, q = 1.

    N = 2 degenerates to M stacked gates on the single bond.
    """
    if num_qubits == 2:
        placements = tuple(
            GatePlacement(1, m, m, "plain", None) for m in range(1, num_layers + 1)
        )
        return CircuitLayout(
            num_qubits=2,
            placements=placements,
            depth=num_layers,
            num_chunks=1,
            params=LayoutParams(2, num_layers, 1, 1) if False else None,
            kind="brickwall",
            junction_bonds=(),
            regular=False,
        )
    inner = build_ps_layout(LayoutParams(num_qubits, num_layers, 2, 1))
    return CircuitLayout(
        num_qubits=inner.num_qubits,
        placements=inner.placements,
        depth=inner.depth,
        num_chunks=inner.num_chunks,
        params=inner.params,
        kind="brickwall",
        junction_bonds=inner.junction_bonds,
        regular=inner.regular,
    )


def build_sequential_layout(num_qubits: int, num_layers: int) -> CircuitLayout:
    """M-layer sequential layout: the PS limit l = N - 1, q = 1; depth N + 2M - 3."""
    if num_qubits < 3:
        raise LayoutError("sequential layout needs N >= 3 so that l = N-1 >= 2")
    inner = build_ps_layout(LayoutParams(num_qubits, num_layers, num_qubits - 1, 1))
    return CircuitLayout(
        num_qubits=inner.num_qubits,
        placements=inner.placements,
        depth=inner.depth,
        num_chunks=inner.num_chunks,
        params=inner.params,
        kind="sequential",
        junction_bonds=inner.junction_bonds,
        regular=inner.regular,
    )


def idle_layout(num_qubits: int, depth: int) -> CircuitLayout:
    """A gateless layout: N qubits idling for ``depth`` time steps."""
    if num_qubits < 1 or depth < 0:
        raise LayoutError("idle layout needs N >= 1 and depth >= 0")
    return CircuitLayout(
        num_qubits=num_qubits,
        placements=(),
        depth=depth,
        num_chunks=0,
        params=None,
        kind="idle",
        junction_bonds=(),
        regular=False,
    )


# -- derived quantities ------------------------------------------------------


def gate_count(layout: CircuitLayout) -> int:
    return layout.gate_count()


def inverse_light_cone(layout: CircuitLayout, site: int) -> set[int]:
    """Input sites whose initial state can influence the output at ``site``.

    Backward traversal of the placements in reverse time order: a gate whose
    qubits intersect the growing cone adds both its qubits.
    """
    if not 1 <= site <= layout.num_qubits:
        raise LayoutError(f"site {site} out of range")
    cone = {site}
    for p in sorted(layout.placements, key=lambda p: -p.time):
        a, b = p.qubits
        if a in cone or b in cone:
            cone.add(a)
            cone.add(b)
    return cone


def max_junction_correlation_distance(layout: CircuitLayout) -> int:
    """Largest separation r at which every pair of sites straddling a junction
    still has intersecting inverse light cones.

    For regular PS layouts this equals q + M; for a sequential layout (no
    junctions) every pair is connected and the result is N - 1.
    """
    n = layout.num_qubits
    cones = {s: inverse_light_cone(layout, s) for s in range(1, n + 1)}
    if not layout.junction_bonds:
        best = 0
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if cones[i] & cones[j]:
                    best = max(best, j - i)
        return best

    result = 0
    for boundary in layout.junction_bonds:
        # smallest r at which some straddling pair decouples
        r_disjoint = None
        for r in range(1, n):
            pairs = [
                (i, i + r)
                for i in range(1, n - r + 1)
                if i <= boundary < i + r
            ]
            if pairs and any(not (cones[i] & cones[j]) for i, j in pairs):
                r_disjoint = r
                break
        local = (r_disjoint - 1) if r_disjoint is not None else n - 1
        result = max(result, local)
    return result
