"""Plain-text file formats for relations, topologies, function tables,
biorders and scales.  Blank lines and ``#`` comments are ignored everywhere.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .biorders import FiniteBiorder
from .relations import FiniteRelation
from .repcore import FunctionPair
from .scales import DyadicScale, is_dyadic
from .topology import FiniteTopology, TopologyError, topology_violation


class ParseError(ValueError):
    def __init__(self, message, line=None, source=None):
        where = f"{source or '<text>'}" + (f":{line}" if line is not None else "")
        super().__init__(f"{where}: {message}")
        self.line = line
        self.source = source


def _lines(text: str):
    """(line number, content) for meaningful lines."""
    out = []
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((k, line))
    return out


def _take(lines, pos, what, source):
    if pos >= len(lines):
        last = lines[-1][0] if lines else None
        raise ParseError(f"unexpected end of input, expected {what}", last, source)
    return lines[pos]


def _count(token, k, source, what="count", minimum=0):
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"malformed header: {what} {token!r} is not an integer", k, source)
    if value < minimum:
        raise ParseError(f"malformed header: {what} must be at least {minimum}", k, source)
    return value


def _labels(line, k, expected, source):
    labels = line.split()
    if len(labels) != expected:
        raise ParseError(f"expected {expected} labels, got {len(labels)}", k, source)
    if len(set(labels)) != len(labels):
        raise ParseError("duplicate labels", k, source)
    return tuple(labels)


def _bitstring(line, k, width, source):
    bits = line.replace(" ", "")
    if len(bits) != width or set(bits) - {"0", "1"}:
        raise ParseError(f"expected {width} characters from {{0,1}}, got {line!r}", k, source)
    return sum(1 << j for j, ch in enumerate(bits) if ch == "1")


def parse_rational(token: str, k=None, source=None) -> Fraction:
    try:
        if "/" in token:
            p, q = token.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(token))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"invalid rational {token!r}", k, source)


def parse_relation(text: str, source=None) -> FiniteRelation:
    lines = _lines(text)
    k, head = _take(lines, 0, "element count", source)
    n = _count(head, k, source, minimum=1)
    k, lab = _take(lines, 1, "labels", source)
    labels = _labels(lab, k, n, source)
    rows = []
    for t in range(n):
        k, line = _take(lines, 2 + t, f"row {t + 1}", source)
        rows.append(_bitstring(line, k, n, source))
    if len(lines) > 2 + n:
        raise ParseError("non-rectangular matrix: extra rows", lines[2 + n][0], source)
    return FiniteRelation(labels, tuple(rows))


def parse_topology(text: str, source=None) -> FiniteTopology:
    lines = _lines(text)
    k, head = _take(lines, 0, "point count", source)
    n = _count(head, k, source, minimum=1)
    k, lab = _take(lines, 1, "labels", source)
    points = _labels(lab, k, n, source)
    opens = set()
    for k, line in lines[2:]:
        m = _bitstring(line, k, n, source)
        if m in opens:
            raise ParseError("duplicate open set", k, source)
        opens.add(m)
    problem = topology_violation(points, opens)
    if problem:
        raise ParseError(f"topology axiom violation: {problem}", None, source)
    try:
        return FiniteTopology(points, frozenset(opens))
    except TopologyError as exc:  # pragma: no cover - caught above
        raise ParseError(str(exc), None, source)


def parse_function_pair(text: str, source=None) -> FunctionPair:
    u, v = {}, {}
    for k, line in _lines(text):
        parts = line.split()
        if len(parts) != 3:
            raise ParseError("expected 'label u v'", k, source)
        label, a, b = parts
        if label in u:
            raise ParseError(f"duplicate label {label!r}", k, source)
        u[label] = parse_rational(a, k, source)
        v[label] = parse_rational(b, k, source)
    return FunctionPair(u, v)


def parse_biorder(text: str, source=None) -> FiniteBiorder:
    lines = _lines(text)
    k, head = _take(lines, 0, "'m n' header", source)
    parts = head.split()
    if len(parts) != 2:
        raise ParseError("malformed header: expected 'm n'", k, source)
    m, n = _count(parts[0], k, source, "m"), _count(parts[1], k, source, "n")
    k, lab = _take(lines, 1, "A labels", source)
    a_labels = _labels(lab, k, m, source)
    k, lab = _take(lines, 2, "X labels", source)
    x_labels = _labels(lab, k, n, source)
    rows = []
    for t in range(m):
        k, line = _take(lines, 3 + t, f"row {t + 1}", source)
        rows.append(_bitstring(line, k, n, source))
    if len(lines) > 3 + m:
        raise ParseError("non-rectangular matrix: extra rows", lines[3 + m][0], source)
    return FiniteBiorder(a_labels, x_labels, tuple(rows))


def parse_scale(text: str, T: FiniteTopology, source=None) -> DyadicScale:
    lines = _lines(text)
    k, head = _take(lines, 0, "grid size", source)
    size = _count(head, k, source, "grid size", minimum=1)
    if len(lines) != size + 1:
        raise ParseError(f"expected {size} level lines, got {len(lines) - 1}", k, source)
    levels, sets = [], []
    for k, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected 'p/q membership'", k, source)
        r = parse_rational(parts[0], k, source)
        if not (0 <= r <= 1 and is_dyadic(r)):
            raise ParseError(f"scale invariant violation: {parts[0]} is not dyadic in [0,1]",
                             k, source)
        if levels and r <= levels[-1]:
            raise ParseError("scale invariant violation: levels must ascend", k, source)
        levels.append(r)
        sets.append(T.labels(_bitstring(parts[1], k, T.n, source)))
    if levels[-1] != 1 or T.mask(sets[-1]) != T.universe:
        raise ParseError("scale invariant violation: last line must be 1/1 with all ones",
                         lines[-1][0], source)
    return DyadicScale(T.points, tuple(levels), tuple(sets))


def parse_labels(text: str) -> list[str]:
    return [tok for _, line in _lines(text) for tok in line.split()]


def format_relation(R: FiniteRelation) -> str:
    return "\n".join([str(R.n), " ".join(R.elements), *R.matrix_lines()]) + "\n"


def format_topology(T: FiniteTopology) -> str:
    lines = [str(T.n), " ".join(T.points)]
    for m in T.sorted_opens():
        lines.append("".join("1" if m >> j & 1 else "0" for j in range(T.n)))
    return "\n".join(lines) + "\n"


def format_function_pair(p: FunctionPair, labels=None) -> str:
    labels = list(labels) if labels is not None else list(p.u)
    return "".join(f"{x} {p.u[x]} {p.v[x]}\n" for x in labels)


def format_biorder(B: FiniteBiorder) -> str:
    return "\n".join([f"{B.m} {B.n}", " ".join(B.a_labels), " ".join(B.x_labels),
                      *B.matrix_lines()]) + "\n"


def format_scale(sc: DyadicScale) -> str:
    lines = [str(len(sc.levels))]
    for r, s in zip(sc.levels, sc.sets):
        bits = "".join("1" if p in s else "0" for p in sc.points)
        lines.append(f"{r.numerator}/{r.denominator} {bits}")
    return "\n".join(lines) + "\n"


def read(path, parser, *args):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, str(path))
    return parser(text, *args, source=str(path))
