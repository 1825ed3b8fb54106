"""
Exact Laurent polynomials in ``q`` with Python-int coefficients.

Values are immutable and kept in canonical sparse form: no exponent ever maps
to a zero coefficient, so equality is plain equality of the coefficient maps.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

_TERM_RE = re.compile(
    r"""
    (?P<sign>[+-])?\s*
    (?:
        (?P<coeff>\d+)\s*\*?\s*(?P<qc>q(?:\^\(?(?P<ec>-?\d+)\)?)?)?
      | (?P<q>q)(?:\^\(?(?P<e>-?\d+)\)?)?
    )
    """,
    re.VERBOSE,
)


class LaurentPoly:
    """An element of Z[q, q^-1]."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for k, v in items:
            k, v = int(k), int(v)
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        self._c = dict(sorted(c.items()))
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def _trusted(cls, c: dict[int, int]) -> "LaurentPoly":
        # c must already be zero-free; sorted here
        obj = object.__new__(cls)
        obj._c = dict(sorted(c.items()))
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int = 0, coeff: int = 1) -> "LaurentPoly":
        return cls._trusted({exp: coeff} if coeff else {})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls.monomial(0, c)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse forms like ``"q^-1 + 2 + q^3"``, ``"1-q"`` or ``"2q^2"``."""
        s = text.strip()
        if s in ("", "0"):
            return ZERO
        pos = 0
        out: dict[int, int] = {}
        while pos < len(s):
            while pos < len(s) and s[pos].isspace():
                pos += 1
            m = _TERM_RE.match(s, pos)
            if m is None or m.end() == pos or (pos > 0 and not m.group("sign")):
                raise ValueError(f"cannot parse Laurent polynomial: {text!r}")
            sign = -1 if m.group("sign") == "-" else 1
            if m.group("coeff") is not None:
                coeff = int(m.group("coeff"))
                if m.group("qc"):
                    exp = int(m.group("ec")) if m.group("ec") is not None else 1
                else:
                    exp = 0
            elif m.group("q"):
                coeff = 1
                exp = int(m.group("e")) if m.group("e") is not None else 1
            else:
                raise ValueError(f"cannot parse Laurent polynomial: {text!r}")
            out[exp] = out.get(exp, 0) + sign * coeff
            pos = m.end()
        return cls(out)

    # -- basic protocol -----------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._c.items())

    def __getitem__(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    def min_exp(self) -> int | None:
        return next(iter(self._c), None)

    def max_exp(self) -> int | None:
        return next(reversed(self._c), None) if self._c else None

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.const(x)
        return NotImplemented

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                del c[k]
        return LaurentPoly._trusted(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._trusted({k: -v for k, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict[int, int] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                k = k1 + k2
                c[k] = c.get(k, 0) + v1 * v2
        return LaurentPoly._trusted({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._c) != 1 or abs(next(iter(self._c.values()))) != 1:
                raise ValueError("only units may be raised to negative powers")
            ((k, v),) = self._c.items()
            return LaurentPoly.monomial(k * n, v if n % 2 else 1)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, m: int) -> "LaurentPoly":
        """Multiply by ``q**m``."""
        if m == 0:
            return self
        return LaurentPoly._trusted({k + m: v for k, v in self._c.items()})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division in Z[q, q^-1]; raises ``ArithmeticError`` if inexact."""
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self:
            return ZERO
        lead_k, lead_v = next(reversed(other._c.items()))
        floor = self.min_exp() - other.min_exp()
        rem = self
        quo: dict[int, int] = {}
        while rem:
            k, v = next(reversed(rem._c.items()))
            if k - lead_k < floor or v % lead_v:
                raise ArithmeticError(f"{self} is not divisible by {other}")
            quo[k - lead_k] = v // lead_v
            rem = rem - (other * (v // lead_v)).shift(k - lead_k)
        return LaurentPoly(quo)

    # -- q-specific operations ------------------------------------------------

    def bar(self) -> "LaurentPoly":
        """The ring involution ``q -> q^-1``."""
        return LaurentPoly._trusted({-k: v for k, v in self._c.items()})

    def eval_one(self) -> int:
        return sum(self._c.values())

    def bar_split(self) -> tuple["LaurentPoly", "LaurentPoly"]:
        """Split ``p = beta + rho`` with ``beta`` bar-invariant and ``rho`` in qZ[q].

        ``beta = c_0 + sum_{k<0} c_k (q^k + q^-k)``; it is the unique
        bar-invariant element whose difference from ``p`` lies in qZ[q].
        """
        beta: dict[int, int] = {}
        for k, v in self._c.items():
            if k < 0:
                beta[k] = v
                beta[-k] = v
            elif k == 0:
                beta[0] = v
        beta_p = LaurentPoly._trusted(beta)
        return beta_p, self - beta_p

    def in_qZq(self) -> bool:
        return all(k >= 1 for k in self._c)

    # -- formatting -------------------------------------------------------

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts: list[str] = []
        for k, v in self._c.items():
            mag = abs(v)
            if k == 0:
                body = str(mag)
            else:
                qpart = "q" if k == 1 else f"q^{k}"
                body = qpart if mag == 1 else f"{mag}{qpart}"
            if not parts:
                parts.append(body if v > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if v > 0 else f"- {body}")
        return " ".join(parts)

    def compact(self) -> str:
        return str(self).replace(" ", "")

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> dict[str, str]:
        return {str(k): str(v) for k, v in self._c.items()}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> "LaurentPoly":
        if not isinstance(obj, Mapping):
            raise ValueError("Laurent polynomial JSON must be an object")
        return cls((int(k), int(v)) for k, v in obj.items())


ZERO = LaurentPoly._trusted({})
ONE = LaurentPoly._trusted({0: 1})
Q = LaurentPoly._trusted({1: 1})


def add(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    return p + r


def mul(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    return p * r


def bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def eval_one(p: LaurentPoly) -> int:
    return p.eval_one()


def bar_split(p: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    return p.bar_split()


def in_qZq(p: LaurentPoly) -> bool:
    return p.in_qZq()
