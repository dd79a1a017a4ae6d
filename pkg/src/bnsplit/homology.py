"""Khovanov homology over F2 and Bar-Natan homology over F2[H].

Every basis element is bihomogeneous, so the matrix of ``d + Hh``
between two basis elements ``s -> t`` is either zero or the monomial
``H^((q_t - q_s) / 2)``.  A complex over F2[H] is therefore stored as
plain bit-matrices plus the quantum degree of every generator, and all
row/column operations below are automatically homogeneous.

The F2[H] reduction cancels pivots in increasing order of their H-power.
Power 0 is ordinary Gaussian cancellation; a pivot ``x -> H^k y`` with
``k > 0`` splits off a summand ``F2[H]/(H^k)`` generated by ``y``.
Generators that are never paired are free summands, reported at their
own quantum degree.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .complex import BNComplex
from .cube import Cube
from .gf2 import MatrixF2, homology_f2, kernel, pack_rows

__all__ = [
    "THEORIES",
    "AssemblyError",
    "GradedComplex",
    "GradedModule",
    "assemble",
    "khovanov_homology",
    "homology_bn",
    "compute",
    "khovanov_dims_from_bn",
]

THEORIES = ("kh", "bn", "reduced-x", "reduced-1")


class AssemblyError(RuntimeError):
    """The assembled matrix broke a structural invariant."""


@dataclass
class GradedComplex:
    """Generators per homological degree with their q-degrees and the
    differential as int-bitset rows into the next degree.

    Generators of each degree are sorted by ``(q, alpha, labels)``.
    """

    degrees: list[int]
    gens: dict[int, list[tuple[int, int]]]
    q: dict[int, list[int]]
    rows: dict[int, list[int]]

    def monomial_entry(self, i: int, s: int, t: int) -> int | None:
        """H-power of the ``s -> t`` entry of the differential out of degree ``i``."""
        if not self.rows[i][s] >> t & 1:
            return None
        return (self.q[i + 1][t] - self.q[i][s]) // 2


def assemble(bn: BNComplex, part: str = "all", perturbed: bool = True) -> GradedComplex:
    """Matrices of ``d + Hh`` (or of ``d`` when ``perturbed`` is false).

    ``part`` selects the whole complex (``"all"``), the subcomplex ``C_x``
    (``"x"``) or the quotient ``C_1`` (``"1"``); for the latter two the
    differential is the full one followed by the projection.
    """
    if part not in ("all", "x", "1"):
        raise ValueError(f"unknown part {part!r}")
    by_deg: dict[int, list[tuple[int, int, int]]] = {}
    for alpha, labels in bn.basis():
        if part != "all" and bn.bp_is_x(alpha, labels) != (part == "x"):
            continue
        i, q = bn.grading(alpha, labels)
        by_deg.setdefault(i, []).append((q, alpha, labels))
    degrees = sorted(by_deg)
    gens, qs, index = {}, {}, {}
    for i in degrees:
        items = sorted(by_deg[i])
        gens[i] = [(a, lab) for _, a, lab in items]
        qs[i] = [q for q, _, _ in items]
        index[i] = {g: t for t, g in enumerate(gens[i])}
    rows: dict[int, list[int]] = {}
    for i in degrees:
        nxt = index.get(i + 1, {})
        out = []
        for s, g in enumerate(gens[i]):
            row = 0
            for t in bn.d_terms(*g):
                pos = nxt.get(t)
                if pos is not None:
                    if qs[i + 1][pos] != qs[i][s]:
                        raise AssemblyError(f"d is not q-homogeneous at {g}")
                    row ^= 1 << pos
            if perturbed:
                for t in bn.h_terms(*g):
                    pos = nxt.get(t)
                    if pos is not None:
                        if qs[i + 1][pos] != qs[i][s] + 2:
                            raise AssemblyError(f"h does not raise q by 2 at {g}")
                        row ^= 1 << pos
            out.append(row)
        rows[i] = out
    return GradedComplex(degrees, gens, qs, rows)


@dataclass
class GradedModule:
    """Bigraded homology report.

    ``dims`` holds F2 dimensions per ``(i, q)`` (Khovanov case); ``free``
    and ``torsion`` hold the F2[H] summands as multisets of ``(i, q)`` and
    ``(i, q, k)`` (Bar-Natan case, torsion ``F2[H]/(H^k)``).
    """

    theory: str
    diagram: str = ""
    dims: Counter = field(default_factory=Counter)
    free: Counter = field(default_factory=Counter)
    torsion: Counter = field(default_factory=Counter)

    def __post_init__(self):
        for c in (self.dims, self.free, self.torsion):
            for key in [k for k, v in c.items() if v == 0]:
                del c[key]
            if any(v < 0 for v in c.values()):
                raise ValueError("negative multiplicity")

    def same_as(self, other: "GradedModule") -> bool:
        return (self.dims, self.free, self.torsion) == (other.dims, other.free, other.torsion)

    def __eq__(self, other):
        if not isinstance(other, GradedModule):
            return NotImplemented
        return self.same_as(other)

    def __add__(self, other: "GradedModule") -> "GradedModule":
        """Direct sum."""
        return GradedModule(
            f"{self.theory}+{other.theory}",
            self.diagram,
            self.dims + other.dims,
            self.free + other.free,
            self.torsion + other.torsion,
        )

    def shifted(self, dq: int) -> "GradedModule":
        """The same module with every quantum degree moved by ``dq``."""
        return GradedModule(
            self.theory,
            self.diagram,
            Counter({(i, q + dq): v for (i, q), v in self.dims.items()}),
            Counter({(i, q + dq): v for (i, q), v in self.free.items()}),
            Counter({(i, q + dq, k): v for (i, q, k), v in self.torsion.items()}),
        )

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def free_rank(self) -> int:
        return sum(self.free.values())

    def to_dict(self) -> dict:
        return {
            "theory": self.theory,
            "diagram": self.diagram,
            "free": [{"i": i, "q": q} for (i, q) in sorted(self.free.elements())],
            "torsion": [
                {"i": i, "q": q, "k": k} for (i, q, k) in sorted(self.torsion.elements())
            ],
            "dims": [{"i": i, "q": q, "d": d} for (i, q), d in sorted(self.dims.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "GradedModule":
        return cls(
            data["theory"],
            data.get("diagram", ""),
            Counter({(e["i"], e["q"]): e["d"] for e in data.get("dims", [])}),
            Counter((e["i"], e["q"]) for e in data.get("free", [])),
            Counter((e["i"], e["q"], e["k"]) for e in data.get("torsion", [])),
        )

    def table(self) -> str:
        """Aligned text table: one row per homological degree, one column per q.

        Khovanov cells are dimensions.  Bar-Natan cells show the free rank
        followed by ``[k]`` for each ``F2[H]/(H^k)`` summand.
        """
        cells: dict[tuple[int, int], str] = {}
        for (i, q), d in self.dims.items():
            cells[i, q] = str(d)
        for (i, q), c in self.free.items():
            cells[i, q] = str(c)
        for (i, q, k), c in sorted(self.torsion.items()):
            cells[i, q] = cells.get((i, q), "") + f"[{k}]" * c
        if not cells:
            return f"{self.theory} {self.diagram}: zero\n"
        is_ = sorted({i for i, _ in cells})
        qs = sorted({q for _, q in cells})
        width = max(max(len(s) for s in cells.values()), max(len(str(q)) for q in qs)) + 1
        head = "i\\q".rjust(4) + "".join(str(q).rjust(width) for q in qs)
        lines = [f"{self.theory} {self.diagram}".rstrip(), head]
        for i in is_:
            lines.append(
                str(i).rjust(4) + "".join(cells.get((i, q), ".").rjust(width) for q in qs)
            )
        return "\n".join(lines) + "\n"


def khovanov_homology(bn: BNComplex, name: str = "") -> GradedModule:
    """Bigraded F2 dimensions of ``(C, d)``, one q-slice at a time."""
    gc = assemble(bn, perturbed=False)
    dims: Counter = Counter()
    # generators are sorted by q, so each q is a contiguous index block
    blocks: dict[int, dict[int, tuple[int, int]]] = {}
    for i in gc.degrees:
        b: dict[int, tuple[int, int]] = {}
        for t, q in enumerate(gc.q[i]):
            lo, hi = b.get(q, (t, t))
            b[q] = (lo, t + 1)
        blocks[i] = b

    def block_matrix(i: int, q: int) -> MatrixF2 | None:
        if q not in blocks.get(i, {}) or q not in blocks.get(i + 1, {}):
            return None
        lo, hi = blocks[i][q]
        clo, chi = blocks[i + 1][q]
        mask = (1 << (chi - clo)) - 1
        return MatrixF2(hi - lo, chi - clo, [(r >> clo) & mask for r in gc.rows[i][lo:hi]])

    for i in gc.degrees:
        for q, (lo, hi) in blocks[i].items():
            d = homology_f2(block_matrix(i - 1, q), block_matrix(i, q), hi - lo)
            if d:
                dims[i, q] = d
    return GradedModule("kh", name, dims=dims)


def _reduce_graded(gc: GradedComplex, precancel: bool) -> tuple[Counter, Counter]:
    degrees = gc.degrees
    q = {i: np.asarray(gc.q[i], dtype=np.int64) for i in degrees}
    alive = {i: np.ones(len(gc.gens[i]), dtype=np.uint8) for i in degrees}
    mats = {
        i: pack_rows(gc.rows[i], len(gc.gens[i + 1]))
        for i in degrees
        if i + 1 in gc.gens and gc.gens[i]
    }
    if not mats:
        kmax = 0
    else:
        allq = np.concatenate(list(q.values()))
        kmax = int(allq.max() - allq.min()) // 2 + 1
    torsion: Counter = Counter()

    def level(i: int, k: int) -> None:
        pivots = kernel.reduce_level(mats[i], q[i], q[i + 1], 2 * k, alive[i], alive[i + 1])
        if k:
            for _, y in pivots:
                torsion[i + 1, int(q[i + 1][y]), k] += 1

    if precancel:
        for k in range(kmax + 1):
            for i in mats:
                level(i, k)
    else:
        for i in mats:
            for k in range(kmax + 1):
                level(i, k)
    free: Counter = Counter()
    for i in degrees:
        for t in np.flatnonzero(alive[i]):
            free[i, int(q[i][t])] += 1
    return free, torsion


def homology_bn(
    bn: BNComplex, part: str = "all", name: str = "", precancel: bool = True
) -> GradedModule:
    """Graded F2[H]-module decomposition of the Bar-Natan homology.

    With ``precancel`` (the default) every unit pivot in the whole complex
    is cancelled before any H-power pivot; otherwise each differential is
    reduced completely, one homological degree after another.  Both
    orders give the same module.
    """
    theory = {"all": "bn", "x": "reduced-x", "1": "reduced-1"}[part]
    free, torsion = _reduce_graded(assemble(bn, part), precancel)
    return GradedModule(theory, name, free=free, torsion=torsion)


def compute(bn: BNComplex, theory: str, name: str = "") -> GradedModule:
    if theory == "kh":
        return khovanov_homology(bn, name)
    if theory == "bn":
        return homology_bn(bn, "all", name)
    if theory == "reduced-x":
        return homology_bn(bn, "x", name)
    if theory == "reduced-1":
        return homology_bn(bn, "1", name)
    raise ValueError(f"unknown theory {theory!r}; expected one of {', '.join(THEORIES)}")


def khovanov_dims_from_bn(module: GradedModule) -> Counter:
    """F2 dimensions of the H = 0 specialization implied by a BN report.

    A free generator at ``(i, q)`` gives one class there; a summand
    ``F2[H]/(H^k)`` generated at ``(i, q)`` gives one class at ``(i, q)``
    and one at ``(i - 1, q - 2k)``.
    """
    dims: Counter = Counter(module.free)
    for (i, q, k), c in module.torsion.items():
        dims[i, q] += c
        dims[i - 1, q - 2 * k] += c
    return dims
