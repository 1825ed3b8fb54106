"""
Sparse vectors in the q-deformed tensor space and the quantum Chevalley action.

The coproduct is ``Delta(f_i) = 1 (x) f_i + f_i (x) k_i`` and
``Delta(e_i) = k_i^-1 (x) e_i + e_i (x) 1``. Iterated over n factors this means
an ``f_i`` acting on factor t picks up ``k_i`` from every factor to its right,
and an ``e_i`` acting on factor t picks up ``k_i^-1`` from every factor to its
left.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InvalidInput
from .laurent import ONE, ZERO, LaurentPoly
from .order import (
    E,
    F,
    IntWeight,
    SignSeq,
    Tuple,
    check_sigma,
    format_sigma,
    format_tuple,
    i_signature,
    parse_sigma,
    total_weight,
)


class TensorVector:
    """Finitely supported map ``Tuple -> LaurentPoly`` over a fixed sign sequence."""

    __slots__ = ("sigma", "_terms")

    def __init__(self, sigma: Sequence[int], terms: Mapping[Tuple, LaurentPoly] | Iterable = ()):
        self.sigma: SignSeq = check_sigma(sigma)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Tuple, LaurentPoly] = {}
        n = len(self.sigma)
        for b, p in items:
            b = tuple(b)
            if len(b) != n:
                raise InvalidInput(f"tuple {b} does not match sign sequence of length {n}")
            if isinstance(p, int):
                p = LaurentPoly.const(p)
            acc[b] = acc.get(b, ZERO) + p
        self._terms = {b: p for b, p in sorted(acc.items()) if p}

    @classmethod
    def _trusted(cls, sigma: SignSeq, terms: dict[Tuple, LaurentPoly]) -> "TensorVector":
        obj = object.__new__(cls)
        obj.sigma = sigma
        obj._terms = dict(sorted((b, p) for b, p in terms.items() if p))
        return obj

    @classmethod
    def monomial(cls, b: Sequence[int], sigma: Sequence[int], coeff: LaurentPoly = ONE) -> "TensorVector":
        return cls(sigma, {tuple(b): coeff})

    @classmethod
    def zero(cls, sigma: Sequence[int]) -> "TensorVector":
        return cls(sigma)

    # -- container protocol ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.sigma)

    def coeff(self, b: Sequence[int]) -> LaurentPoly:
        return self._terms.get(tuple(b), ZERO)

    def support(self) -> list[Tuple]:
        return list(self._terms)

    def items(self) -> Iterator[tuple[Tuple, LaurentPoly]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.sigma == other.sigma and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.sigma, tuple(self._terms.items())))

    # -- linear structure ---------------------------------------------------

    def _same_space(self, other: "TensorVector") -> None:
        if self.sigma != other.sigma:
            raise InvalidInput("vectors live over different sign sequences")

    def __add__(self, other: "TensorVector") -> "TensorVector":
        self._same_space(other)
        out = dict(self._terms)
        for b, p in other._terms.items():
            out[b] = out.get(b, ZERO) + p
        return TensorVector._trusted(self.sigma, out)

    def __neg__(self) -> "TensorVector":
        return TensorVector._trusted(self.sigma, {b: -p for b, p in self._terms.items()})

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + (-other)

    def scale(self, c: LaurentPoly | int) -> "TensorVector":
        return TensorVector._trusted(self.sigma, {b: c * p for b, p in self._terms.items()})

    def __rmul__(self, c: LaurentPoly | int) -> "TensorVector":
        return self.scale(c)

    def extend(self, j: int, sign: int) -> "TensorVector":
        """The vector ``self (x) v_j`` over the sign sequence extended by ``sign``."""
        return TensorVector._trusted(
            self.sigma + (sign,), {b + (j,): p for b, p in self._terms.items()}
        )

    # -- formatting -------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for b, p in self._terms.items():
            v = f"v({format_tuple(b)})"
            if p == ONE:
                parts.append(v)
            elif p == -ONE:
                parts.append(f"-{v}")
            elif len(p) == 1:
                parts.append(f"{p.compact()} {v}")
            else:
                parts.append(f"({p.compact()}) {v}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TensorVector({format_sigma(self.sigma)!r}, {str(self)!r})"

    def to_json(self) -> dict:
        return {
            "sigma": format_sigma(self.sigma),
            "terms": [{"tuple": list(b), "coeffs": p.to_json()} for b, p in self._terms.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "TensorVector":
        try:
            sigma = parse_sigma(obj["sigma"])
            terms = [(tuple(int(x) for x in t["tuple"]), LaurentPoly.from_json(t["coeffs"])) for t in obj["terms"]]
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInput):
                raise
            raise InvalidInput(f"malformed vector JSON: {exc}") from None
        return cls(sigma, terms)


# -- the quantum action ---------------------------------------------------------


def _kappa(i: int, sign: int, j: int) -> int:
    """Exponent of q by which k_i acts on the basis vector v_j of sign ``sign``."""
    return sign * ((j == i) - (j == i + 1))


def k_exponent(i: int, b: Sequence[int], sigma: Sequence[int]) -> int:
    return sum(_kappa(i, s, x) for x, s in zip(b, sigma))


def f_act(i: int, v: TensorVector) -> TensorVector:
    sigma = v.sigma
    out: dict[Tuple, LaurentPoly] = {}
    for b, p in v.items():
        sig = i_signature(b, sigma, i)
        if F not in sig:
            continue
        kap = [_kappa(i, s, x) for x, s in zip(b, sigma)]
        m = 0
        # walk right to left so m is the k-exponent of the factors right of t
        for t in range(len(b) - 1, -1, -1):
            if sig[t] == F:
                c = list(b)
                c[t] += sigma[t]
                c = tuple(c)
                out[c] = out.get(c, ZERO) + p.shift(m)
            m += kap[t]
    return TensorVector._trusted(sigma, out)


def e_act(i: int, v: TensorVector) -> TensorVector:
    sigma = v.sigma
    out: dict[Tuple, LaurentPoly] = {}
    for b, p in v.items():
        sig = i_signature(b, sigma, i)
        if E not in sig:
            continue
        m = 0
        for t in range(len(b)):
            if sig[t] == E:
                c = list(b)
                c[t] -= sigma[t]
                c = tuple(c)
                out[c] = out.get(c, ZERO) + p.shift(m)
            m -= _kappa(i, sigma[t], b[t])
    return TensorVector._trusted(sigma, out)


def k_act(i: int, v: TensorVector, power: int = 1) -> TensorVector:
    """Diagonal action of ``k_i ** power``."""
    return TensorVector._trusted(
        v.sigma, {b: p.shift(power * k_exponent(i, b, v.sigma)) for b, p in v.items()}
    )


def apply_monomial(word: Iterable[int], v: TensorVector) -> TensorVector:
    """Apply ``f_{word[0]}`` first, then ``f_{word[1]}``, and so on."""
    for i in word:
        v = f_act(i, v)
    return v


def specialize_one(v: TensorVector) -> dict[Tuple, int]:
    out = {}
    for b, p in v.items():
        c = p.eval_one()
        if c:
            out[b] = c
    return out


def weight_of(v: TensorVector) -> IntWeight:
    if not v:
        raise InvalidInput("the zero vector has no weight")
    weights = {tuple(total_weight(b, v.sigma).items()) for b in v.support()}
    if len(weights) != 1:
        raise InvalidInput("vector is not weight-homogeneous")
    return dict(weights.pop())
