"""Integer polynomials in one parameter n and parametric generator families.

A family holds k generator vectors in m coordinates, each coordinate an
integer-coefficient polynomial in n; instantiating at a fixed n >= 0 yields
the generators of one semigroup of the family.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import NonPositiveGeneratorError, ParseError


@dataclass(frozen=True)
class PolynomialZ:
    """Dense integer-coefficient polynomial; coeffs[j] multiplies n**j.

    Trailing zero coefficients are trimmed on construction, so equal
    polynomials compare equal.  The zero polynomial has degree -1.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, n: int) -> int:
        value = 0
        for c in reversed(self.coeffs):
            value = value * n + c
        return value

    def __add__(self, other: "PolynomialZ") -> "PolynomialZ":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] += c
        return PolynomialZ(out)

    def __sub__(self, other: "PolynomialZ") -> "PolynomialZ":
        return self + PolynomialZ([-c for c in other.coeffs])

    def __neg__(self) -> "PolynomialZ":
        return PolynomialZ([-c for c in self.coeffs])

    def __mul__(self, other: "PolynomialZ") -> "PolynomialZ":
        if not self.coeffs or not other.coeffs:
            return PolynomialZ()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolynomialZ(out)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __str__(self) -> str:
        return render_poly(self)

    @staticmethod
    def constant(c: int) -> "PolynomialZ":
        return PolynomialZ([c])

    @staticmethod
    def monomial(c: int, power: int) -> "PolynomialZ":
        return PolynomialZ([0] * power + [c])


_TERM_RE = re.compile(r"(\d+)|(n)|(\^)|([+-])|(\S)")


def parse_poly(text: str) -> PolynomialZ:
    """Parse the ASCII polynomial grammar: terms like ``4n^2``, ``-2n``, ``7``.

    Raises ParseError with the character position of the offending token.
    """
    coeffs: dict[int, int] = {}
    pos = 0
    length = len(text)

    def skip_ws():
        nonlocal pos
        while pos < length and text[pos].isspace():
            pos += 1

    def read_int() -> int:
        nonlocal pos
        start = pos
        while pos < length and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError("expected an integer", start)
        return int(text[start:pos])

    first = True
    skip_ws()
    if pos == length:
        raise ParseError("empty polynomial", pos)
    while True:
        skip_ws()
        sign = 1
        if pos < length and text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ParseError(f"expected '+' or '-', found {text[pos]!r}", pos)
        skip_ws()
        coef = None
        power = 0
        if pos < length and text[pos].isdigit():
            coef = read_int()
        skip_ws()
        if pos < length and text[pos] == "n":
            pos += 1
            power = 1
            skip_ws()
            if pos < length and text[pos] == "^":
                pos += 1
                skip_ws()
                power = read_int()
                if power <= 0:
                    raise ParseError("exponent must be positive", pos - 1)
        elif coef is None:
            raise ParseError(
                "expected a term (integer and/or 'n')",
                pos if pos < length else length - 1,
            )
        if coef is None:
            coef = 1
        coeffs[power] = coeffs.get(power, 0) + sign * coef
        first = False
        skip_ws()
        if pos == length:
            break
    out = [0] * (max(coeffs) + 1 if coeffs else 0)
    for p, c in coeffs.items():
        out[p] = c
    return PolynomialZ(out)


def render_poly(p: PolynomialZ) -> str:
    """Canonical rendering, highest power first; re-parses to an equal value."""
    if p.is_zero:
        return "0"
    parts = []
    for j in range(p.degree, -1, -1):
        c = p.coeffs[j]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if j == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + ("n" if j == 1 else f"n^{j}")
        parts.append(sign + body)
    return "".join(parts)


def eval_poly(p: PolynomialZ, n: int) -> int:
    """Exact value p(n); arbitrary precision."""
    return p(n)


@dataclass(frozen=True)
class ParametricFamily:
    """k generator vectors in m coordinates, each coordinate a PolynomialZ."""

    ambient_dim: int
    generators: tuple[tuple[PolynomialZ, ...], ...]
    label: str = "family"

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("ambient dimension must be >= 1")
        if len(self.generators) < 1:
            raise ValueError("a family needs at least one generator")
        for vec in self.generators:
            if len(vec) != self.ambient_dim:
                raise ValueError(
                    f"generator {vec} has {len(vec)} coordinates, expected {self.ambient_dim}"
                )

    @property
    def k(self) -> int:
        return len(self.generators)

    def degree_sum(self) -> int:
        """Sum over generators of the max coordinate degree (0 for constants)."""
        return sum(max(max(p.degree, 0) for p in vec) for vec in self.generators)

    def min_degree(self) -> int:
        return min(max(max(p.degree, 0) for p in vec) for vec in self.generators)


def family_from_polys(polys: Sequence[PolynomialZ], label: str = "family") -> ParametricFamily:
    """Convenience constructor for the numerical (m = 1) case."""
    return ParametricFamily(1, tuple((p,) for p in polys), label)


def instantiate(fam: ParametricFamily, n: int) -> list[tuple[int, ...]]:
    """Evaluate every generator coordinate-wise at n.

    Rejects generators that evaluate to the zero vector or carry a negative
    coordinate: silently dropping them would change k and every downstream
    complex on the k generators.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    out = []
    for i, vec in enumerate(fam.generators):
        values = tuple(p(n) for p in vec)
        if any(v < 0 for v in values) or all(v == 0 for v in values):
            bad = values[0] if fam.ambient_dim == 1 else values
            raise NonPositiveGeneratorError(n, i, bad)
        out.append(values)
    return out


def instantiate_scalars(fam: ParametricFamily, n: int) -> list[int]:
    """Instantiate an m = 1 family as plain integers."""
    if fam.ambient_dim != 1:
        raise ValueError("family is not one-dimensional")
    return [vec[0] for vec in instantiate(fam, n)]


def parse_family(text: str, label: str = "family") -> ParametricFamily:
    """Parse the family spec format: a ``dim m`` line, then one generator per
    line with m semicolon-separated polynomials.  ``#`` starts a comment.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("empty family specification", 0)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dim" or not head[1].isdigit():
        raise ParseError("first line must be 'dim <m>'", 0)
    m = int(head[1])
    gens = []
    for line in lines[1:]:
        parts = [s.strip() for s in line.split(";")]
        gens.append(tuple(parse_poly(s) for s in parts))
    if not gens:
        raise ParseError("family has no generators", 0)
    return ParametricFamily(m, tuple(gens), label)


def parse_family_inline(text: str, label: str | None = None) -> ParametricFamily:
    """Parse an inline family: generators separated by commas, coordinates of
    one generator by semicolons.  ``n+3,n+5,n+7`` or ``1;0,0;1``.
    """
    gens = []
    for chunk in text.split(","):
        parts = [s.strip() for s in chunk.split(";")]
        gens.append(tuple(parse_poly(s) for s in parts))
    dims = {len(v) for v in gens}
    if len(dims) != 1:
        raise ParseError("generators have inconsistent coordinate counts", 0)
    return ParametricFamily(dims.pop(), tuple(gens), label or text.replace(" ", ""))


def render_family(fam: ParametricFamily) -> str:
    lines = [f"dim {fam.ambient_dim}"]
    for vec in fam.generators:
        lines.append("; ".join(render_poly(p) for p in vec))
    return "\n".join(lines) + "\n"
