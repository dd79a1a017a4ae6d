"""Chain-level objects of the Khovanov and Bar-Natan complexes over F2.

Basis elements are pairs ``(alpha, labels)``: a cube vertex and a bitmask
over its circles where bit ``c`` set means circle ``c`` carries ``x`` and
clear means it carries ``1``.  A chain is a dict from basis elements to
polynomials in ``F2[H]``, themselves stored as int bitmasks (bit ``j`` is
the coefficient of ``H^j``).  Zero coefficients are never stored.

Every map from ``C_1`` to ``C_x`` (``f``, ``K_i``, ``K``, ``I``, ``iota``)
is extended by zero on ``C_x`` so it can be composed with ``d + Hh`` on
the whole complex; commutators are ``[a, b] = ab + ba``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, Iterator

from .cube import Cube, EdgeSurgery, alpha_str

__all__ = [
    "Gen",
    "Chain",
    "NotInC1Error",
    "poly_str",
    "add",
    "shift",
    "grading",
    "edge_map_d",
    "edge_map_h",
    "BNComplex",
    "chain_str",
]

Gen = tuple[int, int]
Chain = dict[Gen, int]


class NotInC1Error(ValueError):
    """A map defined on C_1 received a term whose basepoint carries x."""


def poly_str(p: int) -> str:
    """Comma-separated H-powers of a polynomial, e.g. ``0,2`` for 1 + H^2."""
    return ",".join(str(j) for j in range(p.bit_length()) if p >> j & 1)


def add(*chains: Chain) -> Chain:
    out: Chain = {}
    for ch in chains:
        for g, p in ch.items():
            r = out.get(g, 0) ^ p
            if r:
                out[g] = r
            else:
                out.pop(g, None)
    return out


def shift(chain: Chain, k: int) -> Chain:
    """Multiply by ``H^k``."""
    return {g: p << k for g, p in chain.items()}


def _apply(fn: Callable[[int, int], Iterable[Gen]], chain: Chain) -> Chain:
    out: Chain = {}
    for (alpha, labels), p in chain.items():
        for t in fn(alpha, labels):
            r = out.get(t, 0) ^ p
            if r:
                out[t] = r
            else:
                del out[t]
    return out


def grading(cube: Cube, alpha: int, labels: int) -> tuple[int, int]:
    """Bigrading ``(i, q)`` of a basis element.

    ``i = w(alpha) - n_-`` and ``q = gr + i + n_+ - n_-`` where ``gr`` is
    the number of 1-labels minus the number of x-labels.
    """
    d = cube.diagram
    i = alpha.bit_count() - d.n_minus
    gr = cube[alpha].k - 2 * labels.bit_count()
    return i, gr + i + d.n_plus - d.n_minus


def _carried(surgery: EdgeSurgery, labels: int) -> int:
    out = 0
    for src, dst in surgery.carry:
        if labels >> src & 1:
            out |= 1 << dst
    return out


def edge_map_d(surgery: EdgeSurgery, labels: int) -> list[int]:
    """Image of one labeling under the Khovanov edge map (m or Delta)."""
    base = _carried(surgery, labels)
    if surgery.is_merge:
        s1, s2 = surgery.sources
        la, lb = labels >> s1 & 1, labels >> s2 & 1
        if la and lb:
            return []  # m(x.x) = 0
        return [base | (la | lb) << surgery.targets[0]]
    t1, t2 = surgery.targets
    if labels >> surgery.sources[0] & 1:
        return [base | 1 << t1 | 1 << t2]  # Delta(x) = x.x
    return [base | 1 << t2, base | 1 << t1]  # Delta(1) = 1.x + x.1


def edge_map_h(surgery: EdgeSurgery, labels: int) -> list[int]:
    """Image of one labeling under the perturbation edge map (m' or Delta')."""
    base = _carried(surgery, labels)
    if surgery.is_merge:
        s1, s2 = surgery.sources
        if labels >> s1 & 1 and labels >> s2 & 1:
            return [base | 1 << surgery.targets[0]]  # m'(x.x) = x
        return []
    if labels >> surgery.sources[0] & 1:
        return []
    return [base]  # Delta'(1) = 1.1


class BNComplex:
    """The Bar-Natan complex of a diagram together with the splitting maps.

    Edge maps are tabulated per edge on first use.  Subclasses may
    override :meth:`edge_d`, :meth:`edge_h`, :meth:`k_terms` or
    :meth:`iota` to build deliberately broken variants for testing the
    checkers.
    """

    def __init__(self, cube: Cube):
        self.cube = cube
        self.n = cube.n
        self._tables: dict[tuple[str, int, int], list[tuple[int, ...]]] = {}

    # -- local edge maps -------------------------------------------------
    def edge_d(self, surgery: EdgeSurgery, labels: int) -> list[int]:
        return edge_map_d(surgery, labels)

    def edge_h(self, surgery: EdgeSurgery, labels: int) -> list[int]:
        return edge_map_h(surgery, labels)

    def _table(self, which: str, alpha: int, j: int) -> list[tuple[int, ...]]:
        key = (which, alpha, j)
        tab = self._tables.get(key)
        if tab is None:
            surgery = self.cube.edges[alpha, j]
            fn = self.edge_d if which == "d" else self.edge_h
            tab = [tuple(fn(surgery, lab)) for lab in range(1 << self.cube[alpha].k)]
            self._tables[key] = tab
        return tab

    # -- basis-level maps ------------------------------------------------
    def basis(self) -> Iterator[Gen]:
        for v in self.cube.vertices:
            for labels in range(1 << v.k):
                yield v.alpha, labels

    def bp_is_x(self, alpha: int, labels: int) -> bool:
        return bool(labels >> self.cube[alpha].basepoint_circle & 1)

    def d_terms(self, alpha: int, labels: int) -> list[Gen]:
        out = []
        for j in range(self.n):
            if not alpha >> j & 1:
                beta = alpha | 1 << j
                out.extend((beta, t) for t in self._table("d", alpha, j)[labels])
        return out

    def h_terms(self, alpha: int, labels: int) -> list[Gen]:
        out = []
        for j in range(self.n):
            if not alpha >> j & 1:
                beta = alpha | 1 << j
                out.extend((beta, t) for t in self._table("h", alpha, j)[labels])
        return out

    def k_terms(self, i: int, alpha: int, labels: int) -> list[Gen]:
        """``K_i`` of a basis element: relabel ``i+1`` x-circles to 1 and the
        basepoint to x, summed over all such subsets (zero on ``C_x``)."""
        bp = self.cube[alpha].basepoint_circle
        if labels >> bp & 1:
            return []
        xs = [c for c in range(self.cube[alpha].k) if labels >> c & 1]
        if len(xs) < i + 1:
            return []
        flip = 1 << bp
        out = []
        for subset in combinations(xs, i + 1):
            m = flip
            for c in subset:
                m |= 1 << c
            out.append((alpha, labels ^ m))
        return out

    def i_terms(self, alpha: int, labels: int) -> list[Gen]:
        bp = self.cube[alpha].basepoint_circle
        if labels >> bp & 1:
            return []
        return [(alpha, labels | 1 << bp)]

    # -- chain-level maps ------------------------------------------------
    def d(self, chain: Chain) -> Chain:
        return _apply(self.d_terms, chain)

    def h(self, chain: Chain) -> Chain:
        return _apply(self.h_terms, chain)

    def dbn(self, chain: Chain) -> Chain:
        """The Bar-Natan differential ``d + H h``."""
        return add(self.d(chain), shift(self.h(chain), 1))

    def reduced_split(self, chain: Chain) -> tuple[Chain, Chain]:
        """Split a chain into its ``C_x`` part and its ``C_1`` part."""
        xs: Chain = {}
        ones: Chain = {}
        for g, p in chain.items():
            (xs if self.bp_is_x(*g) else ones)[g] = p
        return xs, ones

    def pi_x(self, chain: Chain) -> Chain:
        return self.reduced_split(chain)[0]

    def pi_1(self, chain: Chain) -> Chain:
        return self.reduced_split(chain)[1]

    def _require_c1(self, chain: Chain) -> None:
        for g in chain:
            if self.bp_is_x(*g):
                raise NotInC1Error(f"{g} has its basepoint labelled x")

    def f(self, chain: Chain, *, strict: bool = True) -> Chain:
        """The connecting map ``pi_x (d + Hh)`` restricted to ``C_1``."""
        if strict:
            self._require_c1(chain)
        return self.pi_x(self.dbn(self.pi_1(chain)))

    def f_khovanov(self, chain: Chain) -> Chain:
        """``pi_x d`` on ``C_1``, extended H-linearly."""
        return self.pi_x(self.d(self.pi_1(chain)))

    def K(self, i: int, chain: Chain) -> Chain:
        return _apply(lambda a, lab: self.k_terms(i, a, lab), chain)

    def k_bound(self) -> int:
        """Largest ``i`` for which ``K_i`` can be nonzero somewhere."""
        return max(self.cube.max_circles - 1, 0)

    def K_total(self, chain: Chain) -> Chain:
        """``K = K_0 + H K_1 + H^2 K_2 + ...``."""
        return add(*(shift(self.K(i, chain), i) for i in range(self.k_bound() + 1)))

    def I(self, chain: Chain) -> Chain:
        """Relabel the basepoint circle from 1 to x."""
        return _apply(self.i_terms, chain)

    def iota(self, chain: Chain) -> Chain:
        """``iota = I + H K``."""
        return add(self.I(chain), shift(self.K_total(chain), 1))

    def grading(self, alpha: int, labels: int) -> tuple[int, int]:
        return grading(self.cube, alpha, labels)


def chain_str(cube: Cube, chain: Chain) -> str:
    """``alpha:labels:poly`` triples, sorted, space separated."""
    parts = []
    for (alpha, labels), p in sorted(chain.items()):
        k = cube[alpha].k
        lab = "".join("x" if labels >> c & 1 else "1" for c in range(k))
        parts.append(f"{alpha_str(alpha, cube.n)}:{lab}:{poly_str(p)}")
    return " ".join(parts)
