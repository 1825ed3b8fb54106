"""
Canonical basis elements of the tensor space by recursion on the number of factors.

Given c_{b'} for the first n-1 factors, pick j so that no quasi-R-matrix
correction is needed on ``c_{b'} (x) v_j``, push it to v_b with a monomial in the
f's, then clean up any coefficient outside qZ[q] by subtracting bar-invariant
multiples of canonical basis elements that are higher in the Bruhat order.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import BudgetExceeded, InvalidInput
from .laurent import ZERO, LaurentPoly
from .order import (
    SignSeq,
    Tuple,
    bruhat_geq,
    check_sigma,
    format_sigma,
    format_tuple,
    parse_sigma,
)
from .tensor import TensorVector, apply_monomial

log = logging.getLogger(__name__)

CACHE_VERSION = 1


@dataclass(frozen=True)
class Budget:
    max_recursion_depth: int = 64
    max_correction_steps: int = 10000

    def __post_init__(self):
        if self.max_recursion_depth <= 0 or self.max_correction_steps <= 0:
            raise InvalidInput("budget limits must be strictly positive")


class CanonicalCache:
    """Memo table ``(sigma, b) -> c_b``.

    Not thread-safe; give each worker its own cache and :meth:`merge` afterwards.
    """

    version = CACHE_VERSION

    def __init__(self):
        self._entries: dict[tuple[SignSeq, Tuple], TensorVector] = {}

    def __contains__(self, key) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, sigma: SignSeq, b: Tuple) -> TensorVector | None:
        return self._entries.get((sigma, b))

    def put(self, sigma: SignSeq, b: Tuple, vec: TensorVector) -> None:
        self._entries[(sigma, b)] = vec

    def keys(self):
        return self._entries.keys()

    def merge(self, other: "CanonicalCache") -> None:
        for key, vec in other._entries.items():
            mine = self._entries.get(key)
            if mine is None:
                self._entries[key] = vec
            elif mine != vec:
                raise ValueError(f"conflicting cache entries for {key}")

    def _sorted_items(self):
        return sorted(self._entries.items(), key=lambda kv: (format_sigma(kv[0][0]), kv[0][1]))

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "entries": [
                {"sigma": format_sigma(sigma), "b": list(b), "vector": vec.to_json()}
                for (sigma, b), vec in self._sorted_items()
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CanonicalCache":
        if not isinstance(obj, dict) or obj.get("version") != CACHE_VERSION:
            raise InvalidInput(f"unsupported cache version {obj.get('version') if isinstance(obj, dict) else obj!r}")
        cache = cls()
        for entry in obj.get("entries", []):
            sigma = parse_sigma(entry["sigma"])
            b = tuple(int(x) for x in entry["b"])
            vec = TensorVector.from_json(entry["vector"])
            if vec.sigma != sigma:
                raise InvalidInput(f"cache entry {entry['sigma']} {b} has a mismatched vector")
            cache.put(sigma, b, vec)
        return cache

    def save(self, path: str | os.PathLike) -> None:
        path = Path(path)
        text = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "CanonicalCache":
        with open(path) as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InvalidInput(f"cache file {path} is not valid JSON: {exc}") from None
        return cls.from_json(obj)


def select_j(support: Iterable[Sequence[int]], sigma: Sequence[int], b_n: int) -> int:
    """The extreme index j making ``c_{b'} (x) v_j`` bar-invariant for free."""
    sign_n = sigma[-1]
    j = b_n
    for a in support:
        for a_r, s_r in zip(a, sigma[:-1]):
            if sign_n > 0:
                j = min(j, a_r if s_r > 0 else a_r - 1)
            else:
                j = max(j, a_r if s_r < 0 else a_r + 1)
    return j


def x_monomial(j: int, b_n: int, sign_n: int) -> list[int]:
    """f-indices carrying v_j to v_{b_n} in the last factor, in application order."""
    if sign_n > 0:
        if j > b_n:
            raise InvalidInput(f"need j <= b_n for a + factor, got j={j}, b_n={b_n}")
        return list(range(j, b_n))
    if j < b_n:
        raise InvalidInput(f"need j >= b_n for a - factor, got j={j}, b_n={b_n}")
    return list(range(j - 1, b_n - 1, -1))


def _minimal_offender(offenders: list[Tuple], sigma: SignSeq) -> Tuple:
    # lexicographically first among the Bruhat-minimal offenders
    for a in sorted(offenders):
        if not any(o != a and bruhat_geq(a, o, sigma) for o in offenders):
            return a
    raise AssertionError("no minimal element in a finite poset")  # pragma: no cover


class _Run:
    def __init__(self, cache: CanonicalCache, budget: Budget):
        self.cache = cache
        self.budget = budget
        self.steps = 0

    def compute(self, b: Tuple, sigma: SignSeq, depth: int) -> TensorVector:
        hit = self.cache.get(sigma, b)
        if hit is not None:
            return hit
        if depth > self.budget.max_recursion_depth:
            raise BudgetExceeded(
                f"recursion depth limit {self.budget.max_recursion_depth} exceeded at "
                f"sigma={format_sigma(sigma)} b=({format_tuple(b)})",
                sigma,
                b,
            )
        if len(b) == 1:
            vec = TensorVector.monomial(b, sigma)
            self.cache.put(sigma, b, vec)
            return vec

        head = self.compute(b[:-1], sigma[:-1], depth + 1)
        j = select_j(head.support(), sigma, b[-1])
        w = apply_monomial(x_monomial(j, b[-1], sigma[-1]), head.extend(j, sigma[-1]))

        while True:
            offenders = [a for a, p in w.items() if a != b and not p.in_qZq()]
            if not offenders:
                break
            self.steps += 1
            if self.steps > self.budget.max_correction_steps:
                raise BudgetExceeded(
                    f"correction step limit {self.budget.max_correction_steps} exceeded at "
                    f"sigma={format_sigma(sigma)} b=({format_tuple(b)})",
                    sigma,
                    b,
                )
            a = _minimal_offender(offenders, sigma)
            beta, _ = w.coeff(a).bar_split()
            w = w - self.compute(a, sigma, depth + 1).scale(beta)

        if w.coeff(b) != 1:
            raise AssertionError(f"leading coefficient of c_{b} is {w.coeff(b)}")
        self.cache.put(sigma, b, w)
        return w


def canonical_basis(
    b: Sequence[int],
    sigma: Sequence[int],
    cache: CanonicalCache | None = None,
    budget: Budget | None = None,
) -> TensorVector:
    """The canonical basis element c_b.

    Raises :class:`BudgetExceeded` if the recursion depth or the total number of
    correction steps in this call exceeds ``budget``.
    """
    sigma = check_sigma(sigma)
    b = tuple(int(x) for x in b)
    if len(b) != len(sigma):
        raise InvalidInput(f"tuple {b} does not match sign sequence {format_sigma(sigma)}")
    run = _Run(cache if cache is not None else CanonicalCache(), budget or Budget())
    try:
        vec = run.compute(b, sigma, 1)
    except BudgetExceeded as exc:
        if exc.sigma == sigma and exc.b == b:
            raise
        raise BudgetExceeded(
            f"{exc} while computing sigma={format_sigma(sigma)} b=({format_tuple(b)})", sigma, b
        ) from exc
    log.debug("c_%s over %s: %d terms, %d corrections", b, format_sigma(sigma), len(vec), run.steps)
    return vec


def kl_poly(
    a: Sequence[int],
    b: Sequence[int],
    sigma: Sequence[int],
    cache: CanonicalCache | None = None,
    budget: Budget | None = None,
) -> LaurentPoly:
    """d_{a,b}(q), the coefficient of v_a in c_b."""
    if len(a) != len(sigma):
        raise InvalidInput(f"tuple {tuple(a)} does not match sign sequence {format_sigma(sigma)}")
    vec = canonical_basis(b, sigma, cache, budget)
    return vec.coeff(tuple(a)) if vec else ZERO


def multiplicity(
    a: Sequence[int],
    b: Sequence[int],
    sigma: Sequence[int],
    cache: CanonicalCache | None = None,
    budget: Budget | None = None,
) -> int:
    """d_{a,b}(1): the Verma multiplicity (P(b):M(a)) = [M(a):L(b)]."""
    return kl_poly(a, b, sigma, cache, budget).eval_one()
