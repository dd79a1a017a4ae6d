"""Planar-diagram (PD) codes: parsing, sign inference and serialization.

Convention: each crossing ``X(a,b,c,d)`` lists its four arcs
counterclockwise, starting from the incoming under-strand, so the
under-strand runs ``a -> c`` and the over-strand joins ``b`` and ``d``.
The 0-smoothing pairs ``(a,b),(c,d)`` and the 1-smoothing pairs
``(a,d),(b,c)``.  A crossing is positive when its over-strand runs
``d -> b``; then the 0-smoothing is the oriented one.

Text format (whitespace separated, ``#`` starts a comment)::

    X+(1,1,2,2)        signed crossing
    X(1,4,2,5)         sign inferred from the arc numbering
    O                  a crossingless unknotted component
    @3                 basepoint arc (default: smallest arc)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

__all__ = [
    "PDError",
    "LinkDiagram",
    "parse_pd",
    "infer_signs",
    "serialize_pd",
]


class PDError(ValueError):
    """Malformed or inconsistent planar-diagram input."""


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented link diagram given by a PD code.

    ``signs[j]`` is +1, -1 or 0 (not yet known).  Free loops get arc
    identifiers ``max_arc + 1, max_arc + 2, ...`` so the basepoint can sit
    on one of them.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    signs: tuple[int, ...]
    free_loops: int = 0
    basepoint_arc: int = 1
    name: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def crossing_arcs(self) -> list[int]:
        return sorted({x for c in self.crossings for x in c})

    @property
    def loop_arcs(self) -> list[int]:
        top = max(self.crossing_arcs, default=0)
        return [top + 1 + j for j in range(self.free_loops)]

    @property
    def arcs(self) -> list[int]:
        return self.crossing_arcs + self.loop_arcs

    def __str__(self) -> str:
        return serialize_pd(self)


_TOKEN = re.compile(
    r"""
    (?P<cross>X(?P<sign>[+-]?)[(\[]\s*(?P<args>[^()\[\]]*?)\s*[)\]])
  | (?P<loop>O\b)
  | (?P<base>@(?P<arc>\d+)\b)
  | (?P<bad>\S+)
    """,
    re.VERBOSE,
)


def parse_pd(text: str, *, name: str = "") -> LinkDiagram:
    """Parse PD text into a validated, fully signed :class:`LinkDiagram`.

    Crossings are stored sorted by their first arc, which fixes the
    identification of crossings with ``0..n-1``.
    """
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    crossings: list[tuple[int, int, int, int]] = []
    signs: list[int] = []
    loops = 0
    base: int | None = None
    for m in _TOKEN.finditer(body):
        if m.group("bad"):
            raise PDError(f"malformed token {m.group('bad')!r}")
        if m.group("loop"):
            loops += 1
        elif m.group("base"):
            if base is not None:
                raise PDError("more than one basepoint marker")
            base = int(m.group("arc"))
        else:
            parts = [p.strip() for p in m.group("args").split(",")]
            if len(parts) != 4 or not all(p.isdigit() for p in parts):
                raise PDError(f"malformed crossing {m.group('cross')!r}")
            quad = tuple(int(p) for p in parts)
            if min(quad) < 1:
                raise PDError(f"arc identifiers must be positive in {m.group('cross')!r}")
            crossings.append(quad)  # type: ignore[arg-type]
            signs.append({"+": 1, "-": -1, "": 0}[m.group("sign")])

    _check_arc_multiset(crossings)
    order = sorted(range(len(crossings)), key=lambda j: crossings[j])
    crossings = [crossings[j] for j in order]
    signs = [signs[j] for j in order]
    if not crossings and not loops:
        raise PDError("empty diagram")

    diagram = LinkDiagram(tuple(crossings), tuple(signs), loops, 0, name)
    arcs = diagram.arcs
    if base is None:
        base = arcs[0]
    elif base not in arcs:
        raise PDError(f"basepoint arc {base} is not an arc of the diagram")
    return infer_signs(replace(diagram, basepoint_arc=base))


def _check_arc_multiset(crossings) -> None:
    count: dict[int, int] = {}
    for quad in crossings:
        for x in quad:
            count[x] = count.get(x, 0) + 1
    bad = sorted(x for x, c in count.items() if c != 2)
    if bad:
        raise PDError(
            "every arc must appear exactly twice; offending arcs: "
            + ", ".join(f"{x} (x{count[x]})" for x in bad)
        )


def _components(crossings) -> list[list[int]]:
    """Arc sets of the link components (through-strands a-c and b-d)."""
    parent = {x: x for quad in crossings for x in quad}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c, d in crossings:
        parent[find(a)] = find(c)
        parent[find(b)] = find(d)
    comps: dict[int, list[int]] = {}
    for x in sorted(parent):
        comps.setdefault(find(x), []).append(x)
    return list(comps.values())


def _successor_table(crossings) -> dict[int, set[int]]:
    """Arc -> set of arcs that count as its successor.

    Successor means the next identifier along the component, wrapping
    from the largest back to the smallest.  A two-arc component makes
    each arc the successor of the other.
    """
    succ: dict[int, set[int]] = {}
    for comp in _components(crossings):
        for pos, x in enumerate(comp):
            succ.setdefault(x, set()).add(comp[(pos + 1) % len(comp)])
    return succ


def _inferred_sign(quad, succ) -> tuple[int, str]:
    a, b, c, d = quad
    if c not in succ[a]:
        return 0, f"under-strand {a}->{c} is not consecutively numbered"
    pos = b in succ[d]
    neg = d in succ[b]
    if pos and not neg:
        return 1, ""
    if neg and not pos:
        return -1, ""
    if pos and neg:
        return 0, f"arcs {b} and {d} are each other's successor"
    return 0, f"over-strand arcs {b} and {d} are not consecutive"


def infer_signs(diagram: LinkDiagram) -> LinkDiagram:
    """Fill in missing crossing signs from the arc numbering.

    Explicit signs are kept, but rejected if the numbering clearly
    implies the opposite sign.
    """
    succ = _successor_table(diagram.crossings)
    signs = []
    for quad, given in zip(diagram.crossings, diagram.signs):
        sign, why = _inferred_sign(quad, succ)
        label = "X({},{},{},{})".format(*quad)
        if given:
            if sign and sign != given:
                raise PDError(
                    f"explicit sign on {label} contradicts the arc orientation"
                )
            signs.append(given)
        elif sign:
            signs.append(sign)
        else:
            raise PDError(
                f"cannot infer the sign of {label}: {why}; annotate it as X+ or X-"
            )
    return replace(diagram, signs=tuple(signs))


def serialize_pd(diagram: LinkDiagram) -> str:
    """Canonical text: signed crossings by first arc, loops, basepoint."""
    tokens = []
    for quad, s in sorted(zip(diagram.crossings, diagram.signs)):
        mark = "+" if s > 0 else "-" if s < 0 else ""
        tokens.append("X{}({},{},{},{})".format(mark, *quad))
    tokens.extend("O" * diagram.free_loops)
    tokens.append(f"@{diagram.basepoint_arc}")
    return " ".join(tokens)
