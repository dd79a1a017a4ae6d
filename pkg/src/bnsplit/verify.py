"""Mechanical checks of the chain-level identities and of the splitting.

Each check evaluates both sides of an identity on every basis element
(linearity makes that a complete check) and returns a :class:`Report`.
Failures carry the offending basis element and both sides as chains.

The ``FAULTS`` registry holds deliberately broken complexes.  Every
checker must reject the matching fault; that is what keeps the
always-pass checks honest.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .complex import BNComplex, Chain, add, chain_str, shift
from .cube import Cube, alpha_str
from .diagram import LinkDiagram
from .gf2 import ComposabilityError, MatrixF2, rank_f2
from .homology import assemble, compute, homology_bn, khovanov_homology

__all__ = [
    "CHECKS",
    "FAULTS",
    "Report",
    "as_complex",
    "check_d_squared",
    "check_k0",
    "check_ladder",
    "check_full_homotopy",
    "check_iota",
    "check_splitting",
    "check_euler_jones",
    "check_invariance_pair",
    "jones_polynomial",
    "euler_characteristic",
    "laurent_str",
    "run_checks",
]

MAX_RECORDED = 5


@dataclass
class Report:
    check: str
    diagram: str
    failures: list[dict] = field(default_factory=list)
    failure_count: int = 0
    checked: int = 0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def record(self, **failure) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_RECORDED:
            self.failures.append(failure)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "diagram": self.diagram,
            "status": self.status,
            "checked": self.checked,
            "failure_count": self.failure_count,
            "failures": self.failures,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary(self) -> str:
        line = f"{self.status.upper():4} {self.check:<6} {self.diagram} ({self.checked} checked"
        if self.failure_count:
            first = self.failures[0]
            line += f", {self.failure_count} failures"
            if first.get("alpha") or first.get("labels"):
                line += f", first at {first.get('alpha', '')}:{first.get('labels', '')}"
            elif first.get("what"):
                line += f": {first['what']}"
        return line + ")"


def as_complex(obj: LinkDiagram | Cube | BNComplex, max_crossings: int = 16) -> BNComplex:
    if isinstance(obj, BNComplex):
        return obj
    if isinstance(obj, Cube):
        return BNComplex(obj)
    return BNComplex(Cube(obj, max_crossings))


def _name(bn: BNComplex) -> str:
    return bn.cube.diagram.name or str(bn.cube.diagram)


def _labels_str(bn: BNComplex, alpha: int, labels: int) -> str:
    return "".join("x" if labels >> c & 1 else "1" for c in range(bn.cube[alpha].k))


def _compare(report: Report, bn: BNComplex, gen, lhs: Chain, rhs: Chain, **extra) -> None:
    report.checked += 1
    if lhs != rhs:
        alpha, labels = gen
        report.record(
            alpha=alpha_str(alpha, bn.n),
            labels=_labels_str(bn, alpha, labels),
            lhs=chain_str(bn.cube, lhs),
            rhs=chain_str(bn.cube, rhs),
            **extra,
        )


def _edge_image(bn: BNComplex, which: str, j: int, chain: Chain) -> Chain:
    out: Chain = {}
    for (alpha, labels), p in chain.items():
        if alpha >> j & 1:
            continue
        for t in bn._table(which, alpha, j)[labels]:
            g = (alpha | 1 << j, t)
            r = out.get(g, 0) ^ p
            if r:
                out[g] = r
            else:
                del out[g]
    return out


def _bad_face(bn: BNComplex, which: str, gen) -> list[int] | None:
    alpha = gen[0]
    free = [j for j in range(bn.n) if not alpha >> j & 1]
    for a in free:
        for b in free:
            if a < b:
                one = _edge_image(bn, which, b, _edge_image(bn, which, a, {gen: 1}))
                two = _edge_image(bn, which, a, _edge_image(bn, which, b, {gen: 1}))
                if one != two:
                    return [a, b]
    return None


def check_d_squared(diagram) -> Report:
    """``d^2 = 0`` and ``(d + Hh)^2 = 0`` on the full basis."""
    bn = as_complex(diagram)
    report = Report("dsq", _name(bn))
    for g in bn.basis():
        ch = {g: 1}
        dd = bn.d(bn.d(ch))
        face = _bad_face(bn, "d", g) if dd else None
        _compare(report, bn, g, dd, {}, map="d", face=face)
        bb = bn.dbn(bn.dbn(ch))
        if bb and not dd:
            face = _bad_face(bn, "h", g)
        _compare(report, bn, g, bb, {}, map="d+Hh", face=face)
    return report


def check_k0(diagram) -> Report:
    """``f = K_0 d + d K_0`` on every basis element."""
    bn = as_complex(diagram)
    report = Report("k0", _name(bn))
    for g in bn.basis():
        ch = {g: 1}
        lhs = bn.f(ch, strict=False)
        rhs = add(bn.K(0, bn.d(ch)), bn.d(bn.K(0, ch)))
        _compare(report, bn, g, lhs, rhs)
    return report


def check_ladder(diagram, i_max: int | None = None) -> Report:
    """``[K_i, h] + [K_{i+1}, d] = 0`` for ``0 <= i <= i_max``."""
    bn = as_complex(diagram)
    if i_max is None:
        i_max = bn.k_bound()
    report = Report("ladder", _name(bn))
    for g in bn.basis():
        ch = {g: 1}
        dch, hch = bn.d(ch), bn.h(ch)
        for i in range(i_max + 1):
            lhs = add(bn.K(i, hch), bn.h(bn.K(i, ch)))
            rhs = add(bn.K(i + 1, dch), bn.d(bn.K(i + 1, ch)))
            _compare(report, bn, g, lhs, rhs, i=i)
    return report


def check_full_homotopy(diagram) -> Report:
    """``f = K (d + Hh) + (d + Hh) K`` with ``K = sum H^i K_i``."""
    bn = as_complex(diagram)
    report = Report("full", _name(bn))
    for g in bn.basis():
        ch = {g: 1}
        lhs = bn.f(ch, strict=False)
        rhs = add(bn.K_total(bn.dbn(ch)), bn.dbn(bn.K_total(ch)))
        _compare(report, bn, g, lhs, rhs)
    return report


def _iota_pieces(bn: BNComplex, report: Report) -> None:
    """Per-bidegree bijectivity of iota between C_1 and C_x (q-shift -2)."""
    ones: dict[int, list] = {}
    xs: dict[int, list] = {}
    for g in bn.basis():
        i, q = bn.grading(*g)
        (xs if bn.bp_is_x(*g) else ones).setdefault(i, []).append((q, g))
    for i in sorted(set(ones) | set(xs)):
        src = sorted(ones.get(i, []))
        tgt = sorted(xs.get(i, []))
        count_src = Counter(q - 2 for q, _ in src)
        count_tgt = Counter(q for q, _ in tgt)
        report.checked += 1
        if count_src != count_tgt:
            report.record(alpha="", labels="", i=i, lhs=str(sorted(count_src.items())),
                          rhs=str(sorted(count_tgt.items())), what="dimension mismatch")
            continue
        if not src:
            continue
        images = {}
        for q, g in src:
            img = bn.iota({g: 1})
            for t, p in img.items():
                tq = bn.grading(*t)[1]
                for j in range(p.bit_length()):
                    if p >> j & 1 and tq - 2 * j != q - 2:
                        report.record(alpha=alpha_str(g[0], bn.n),
                                      labels=_labels_str(bn, *g), i=i,
                                      lhs=chain_str(bn.cube, img), rhs="",
                                      what="iota is not of q-degree -2")
            images[g] = img
        qmax = src[-1][0]
        qmin = src[0][0]
        for Q in range(qmax, qmin - 2, -1):
            # F2 bases of the degree-Q piece of C_1 and degree-(Q-2) piece of C_x
            s_basis = [(g, (q - Q) // 2) for q, g in src if q >= Q and (q - Q) % 2 == 0]
            t_basis = [(g, (q - Q + 2) // 2) for q, g in tgt if q >= Q - 2 and (q - Q) % 2 == 0]
            if len(s_basis) != len(t_basis):
                report.record(alpha="", labels="", i=i, lhs=str(len(s_basis)),
                              rhs=str(len(t_basis)), what=f"piece size mismatch at q={Q}")
                continue
            if not s_basis:
                continue
            index = {b: n for n, b in enumerate(t_basis)}
            rows = []
            for g, j in s_basis:
                row = 0
                for t, p in images[g].items():
                    for e in range(p.bit_length()):
                        if p >> e & 1:
                            pos = index.get((t, j + e))
                            if pos is None:
                                report.record(alpha=alpha_str(g[0], bn.n),
                                              labels=_labels_str(bn, *g), i=i, lhs="", rhs="",
                                              what=f"iota leaves the q={Q - 2} piece")
                                continue
                            row ^= 1 << pos
                rows.append(row)
            m = MatrixF2(len(rows), len(t_basis), rows)
            if rank_f2(m) != len(rows):
                report.record(alpha="", labels="", i=i, lhs=str(rank_f2(m)),
                              rhs=str(len(rows)), what=f"iota singular at q={Q}")


def check_iota(diagram) -> Report:
    """``f = [I, h]``, ``[iota, d + Hh] = 0`` and iota bijective per bidegree."""
    bn = as_complex(diagram)
    report = Report("iota", _name(bn))
    for g in bn.basis():
        ch = {g: 1}
        f = bn.f(ch, strict=False)
        _compare(report, bn, g, f, add(bn.I(bn.h(ch)), bn.h(bn.I(ch))), identity="f=[I,h]")
        chain_map = add(bn.iota(bn.dbn(ch)), bn.dbn(bn.iota(ch)))
        _compare(report, bn, g, chain_map, {}, identity="[iota,d+Hh]=0")
    _iota_pieces(bn, report)
    return report


def _squares_to_zero(bn: BNComplex, report: Report) -> bool:
    # homology of a non-complex is meaningless; record where it breaks instead
    for part in ("all", "x", "1"):
        gc = assemble(bn, part)
        for i in gc.degrees:
            nxt = gc.rows.get(i + 1)
            if nxt is None:
                continue
            for s, row in enumerate(gc.rows[i]):
                acc, t = 0, 0
                while row >> t:
                    if row >> t & 1:
                        acc ^= nxt[t]
                    t += 1
                if acc:
                    alpha, labels = gc.gens[i][s]
                    report.record(alpha=alpha_str(alpha, bn.cube.diagram.n),
                                  labels=_labels_str(bn, alpha, labels),
                                  what=f"(d+Hh)^2 != 0 on the {part} complex", lhs="nonzero", rhs="0")
                    return False
    return True


def check_splitting(diagram) -> Report:
    """BN homology equals H(C_x) + H(C_1), and H(C_1) shifted by -2 is H(C_x)."""
    bn = as_complex(diagram)
    name = _name(bn)
    report = Report("split", name)
    if not _squares_to_zero(bn, report):
        return report
    full = homology_bn(bn, "all", name)
    hx = homology_bn(bn, "x", name)
    h1 = homology_bn(bn, "1", name)
    report.checked = 2
    if not full.same_as(hx + h1):
        report.record(alpha="", labels="", what="BN != H(C_x) + H(C_1)",
                      lhs=full.to_json(), rhs=(hx + h1).to_json())
    if not h1.shifted(-2).same_as(hx):
        report.record(alpha="", labels="", what="H(C_1)[-2] != H(C_x)",
                      lhs=h1.shifted(-2).to_json(), rhs=hx.to_json())
    return report


# -- Jones polynomial -------------------------------------------------------

def _mul(a: Counter, b: Counter) -> Counter:
    out: Counter = Counter()
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] += c1 * c2
    return out


def _clean(p: Counter) -> dict[int, int]:
    return {e: c for e, c in sorted(p.items()) if c}


def jones_polynomial(diagram) -> dict[int, int]:
    """Unnormalized Jones polynomial (unknot -> q + q^-1) by the state sum
    over the cube, as ``{exponent: coefficient}``."""
    bn = as_complex(diagram)
    d = bn.cube.diagram
    total: Counter = Counter()
    unknot = Counter({1: 1, -1: 1})
    for v in bn.cube.vertices:
        w = v.alpha.bit_count()
        term = Counter({w + d.n_plus - 2 * d.n_minus: (-1) ** ((w - d.n_minus) % 2)})
        for _ in range(v.k):
            term = _mul(term, unknot)
        total.update(term)
    return _clean(total)


def euler_characteristic(dims: Counter) -> dict[int, int]:
    """Graded Euler characteristic sum (-1)^i q^j dim Kh^{i,j}."""
    out: Counter = Counter()
    for (i, q), d in dims.items():
        out[q] += (-1) ** (i % 2) * d
    return _clean(out)


def laurent_str(poly: dict[int, int], var: str = "q") -> str:
    """``q^-2 + 2 + q^2`` style rendering, ascending exponents."""
    parts = []
    for e, c in sorted(poly.items()):
        if not c:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}{mono}"
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) if parts else "0"


def check_euler_jones(diagram) -> Report:
    """State-sum Jones polynomial equals the graded Euler characteristic of Kh."""
    bn = as_complex(diagram)
    report = Report("jones", _name(bn))
    state_sum = jones_polynomial(bn)
    report.checked = 1
    try:
        chi = euler_characteristic(khovanov_homology(bn).dims)
    except ComposabilityError as exc:
        report.record(alpha="", labels="", what=f"homology undefined: {exc}", lhs="", rhs="")
        return report
    if state_sum != chi:
        report.record(alpha="", labels="", lhs=laurent_str(state_sum), rhs=laurent_str(chi))
    return report


def check_invariance_pair(a, b) -> Report:
    """Kh and BN reports of two diagrams of the same link must agree."""
    ca, cb = as_complex(a), as_complex(b)
    report = Report("invariance", f"{_name(ca)} ~ {_name(cb)}")
    for theory in ("kh", "bn"):
        ma, mb = compute(ca, theory), compute(cb, theory)
        report.checked += 1
        if not ma.same_as(mb):
            report.record(alpha="", labels="", theory=theory, lhs=ma.to_json(), rhs=mb.to_json())
    return report


CHECKS: dict[str, Callable[..., Report]] = {
    "dsq": check_d_squared,
    "k0": check_k0,
    "ladder": check_ladder,
    "full": check_full_homotopy,
    "iota": check_iota,
    "split": check_splitting,
    "jones": check_euler_jones,
}


# -- negative-control fixtures ---------------------------------------------

class CorruptSplit(BNComplex):
    """Delta(1) loses its x.1 term."""

    def edge_d(self, surgery, labels):
        out = super().edge_d(surgery, labels)
        return out[:1] if not surgery.is_merge else out


class DroppedEdge(BNComplex):
    """The Khovanov edge map out of the all-0 vertex along crossing 0 is zero."""

    def edge_d(self, surgery, labels):
        if surgery.from_vertex == 0 and surgery.crossing == 0:
            return []
        return super().edge_d(surgery, labels)


class K0WithoutRelabel(BNComplex):
    """K_0 relabels the x-circle but leaves the basepoint labelled 1."""

    def k_terms(self, i, alpha, labels):
        terms = super().k_terms(i, alpha, labels)
        if i:
            return terms
        bp = 1 << self.cube[alpha].basepoint_circle
        return [(a, lab ^ bp) for a, lab in terms]


class KTuples(BNComplex):
    """K_i summed over ordered (i+1)-tuples with repetition instead of subsets."""

    def k_terms(self, i, alpha, labels):
        bp = self.cube[alpha].basepoint_circle
        if labels >> bp & 1:
            return []
        xs = [c for c in range(self.cube[alpha].k) if labels >> c & 1]
        acc: Counter = Counter()
        for tup in product(xs, repeat=i + 1):
            m = 1 << bp
            for c in set(tup):
                m |= 1 << c
            acc[labels ^ m] += 1
        return [(alpha, lab) for lab, c in sorted(acc.items()) if c % 2]


class IotaWithoutH(BNComplex):
    """iota = I, dropping the H K correction."""

    def iota(self, chain):
        return self.I(chain)


FAULTS: dict[str, type[BNComplex]] = {
    "d-edge": DroppedEdge,
    "d-split": CorruptSplit,
    "k0-no-relabel": K0WithoutRelabel,
    "k-tuples": KTuples,
    "iota-no-h": IotaWithoutH,
}


def run_checks(
    diagram: LinkDiagram,
    checks: list[str],
    fault: str | None = None,
    max_crossings: int = 16,
) -> list[Report]:
    """Run the named checks, optionally on a deliberately broken complex."""
    cube = Cube(diagram, max_crossings)
    cls = FAULTS[fault] if fault else BNComplex
    bn = cls(cube)
    return [CHECKS[name](bn) for name in checks]
