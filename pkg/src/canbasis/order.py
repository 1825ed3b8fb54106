"""
Sign sequences, tuples in Z^n and the combinatorics attached to them.

A sign sequence is stored as a tuple of ``+1``/``-1`` ints and a tuple ``b``
as a plain tuple of ints. Weights of sl_infinity are integer combinations of
the epsilon basis, stored as ``{i: coeff}`` dicts without zero entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInput

Sign = int
SignSeq = tuple[int, ...]
Tuple = tuple[int, ...]
IntWeight = dict[int, int]

E, F, DOT = "e", "f", "."


# -- parsing / formatting ---------------------------------------------------


def parse_sigma(text: str) -> SignSeq:
    """``"++--"`` -> ``(1, 1, -1, -1)``."""
    text = text.strip()
    if not text or any(ch not in "+-" for ch in text):
        raise InvalidInput(f"malformed sign sequence {text!r}: use only '+' and '-'")
    return tuple(1 if ch == "+" else -1 for ch in text)


def format_sigma(sigma: Sequence[int]) -> str:
    return "".join("+" if s > 0 else "-" for s in sigma)


def parse_tuple(text: str) -> Tuple:
    """``"1,2,2,1"`` -> ``(1, 2, 2, 1)``; parentheses are tolerated."""
    body = text.strip().strip("()").strip()
    if not body:
        raise InvalidInput("empty tuple")
    try:
        return tuple(int(x) for x in body.split(","))
    except ValueError:
        raise InvalidInput(f"malformed tuple {text!r}: expected comma-separated integers") from None


def format_tuple(b: Sequence[int]) -> str:
    return ",".join(str(x) for x in b)


def check_sigma(sigma: Sequence[int]) -> SignSeq:
    sigma = tuple(sigma)
    if not sigma or any(s not in (1, -1) for s in sigma):
        raise InvalidInput(f"invalid sign sequence {sigma!r}")
    return sigma


def _check_len(sigma: Sequence[int], *tuples: Sequence[int]) -> None:
    n = len(sigma)
    for b in tuples:
        if len(b) != n:
            raise InvalidInput(
                f"length mismatch: tuple {tuple(b)} has length {len(b)}, sign sequence has {n}"
            )


def unit_shift(b: Sequence[int], r: int, amount: int) -> Tuple:
    """``b + amount * d_r`` (0-based ``r``)."""
    out = list(b)
    out[r] += amount
    return tuple(out)


# -- weights and the Bruhat order ---------------------------------------------


def _clean(w: dict[int, int]) -> IntWeight:
    return {i: c for i, c in sorted(w.items()) if c}


def weight_add(*ws: IntWeight) -> IntWeight:
    out: dict[int, int] = {}
    for w in ws:
        for i, c in w.items():
            out[i] = out.get(i, 0) + c
    return _clean(out)


def weight_neg(w: IntWeight) -> IntWeight:
    return {i: -c for i, c in w.items()}


def simple_root(i: int) -> IntWeight:
    """alpha_i = eps_i - eps_{i+1}."""
    return {i: 1, i + 1: -1}


def weight_seq(b: Sequence[int], sigma: Sequence[int]) -> list[IntWeight]:
    """WT(b): the weight ``sigma_r * eps_{b_r}`` of each tensor factor."""
    _check_len(sigma, b)
    return [{br: sr} for br, sr in zip(b, sigma)]


def total_weight(b: Sequence[int], sigma: Sequence[int]) -> IntWeight:
    """|WT(b)|, the weight of the monomial v_b."""
    return weight_add(*weight_seq(b, sigma))


def dominance_leq(beta: IntWeight, gamma: IntWeight) -> bool:
    """``beta <= gamma`` in dominance order, i.e. gamma - beta is in the positive root cone.

    In eps-coordinates delta = gamma - beta, this holds iff every prefix sum of
    delta is nonnegative and the full sum is zero (the prefix sums are the
    coefficients on the simple roots).
    """
    delta = weight_add(gamma, weight_neg(beta))
    running = 0
    for i in sorted(delta):
        running += delta[i]
        if running < 0:
            return False
    return running == 0


def bruhat_geq_oracle(a: Sequence[int], b: Sequence[int], sigma: Sequence[int]) -> bool:
    """Bruhat order straight from the inverse dominance order on WT tuples.

    Slow; kept as an independent check on :func:`bruhat_geq`.
    """
    _check_len(sigma, a, b)
    wa, wb = weight_seq(a, sigma), weight_seq(b, sigma)
    pa: IntWeight = {}
    pb: IntWeight = {}
    for s in range(len(sigma)):
        pa = weight_add(pa, wa[s])
        pb = weight_add(pb, wb[s])
        if not dominance_leq(pa, pb):
            return False
    return pa == pb


def n_count(b: Sequence[int], sigma: Sequence[int], i: int, s: int) -> int:
    """N_{[1,s]}(b, i): signed count of the first ``s`` entries exceeding ``i``."""
    if not 1 <= s <= len(b):
        raise InvalidInput(f"prefix length s={s} out of range 1..{len(b)}")
    return sum(sr for br, sr in zip(b[:s], sigma[:s]) if br > i)


def _prefix_counts(b: Sequence[int], sigma: Sequence[int], i: int) -> list[int]:
    out, run = [], 0
    for br, sr in zip(b, sigma):
        if br > i:
            run += sr
        out.append(run)
    return out


def bruhat_geq(a: Sequence[int], b: Sequence[int], sigma: Sequence[int]) -> bool:
    """``a >= b`` in the Bruhat order, via signed prefix counts."""
    _check_len(sigma, a, b)
    if not sigma:
        return True
    lo = min(min(a), min(b)) - 1
    hi = max(max(a), max(b))
    for i in range(lo, hi + 1):
        ca = _prefix_counts(a, sigma, i)
        cb = _prefix_counts(b, sigma, i)
        if ca[-1] != cb[-1]:
            return False
        if any(x < y for x, y in zip(ca[:-1], cb[:-1])):
            return False
    return True


def bruhat_gt(a: Sequence[int], b: Sequence[int], sigma: Sequence[int]) -> bool:
    return tuple(a) != tuple(b) and bruhat_geq(a, b, sigma)


def compare(a: Sequence[int], b: Sequence[int], sigma: Sequence[int]) -> str:
    """One of ``"EQ"``, ``"GEQ"``, ``"LEQ"``, ``"INCOMPARABLE"``."""
    if tuple(a) == tuple(b):
        _check_len(sigma, a, b)
        return "EQ"
    if bruhat_geq(a, b, sigma):
        return "GEQ"
    if bruhat_geq(b, a, sigma):
        return "LEQ"
    return "INCOMPARABLE"


# -- signatures -----------------------------------------------------------------


def i_signature(b: Sequence[int], sigma: Sequence[int], i: int) -> list[str]:
    """The i-signature of b as a list over ``{"e", "f", "."}``."""
    _check_len(sigma, b)
    sig = []
    for bt, st in zip(b, sigma):
        if bt == i:
            sig.append(F if st > 0 else E)
        elif bt == i + 1:
            sig.append(E if st > 0 else F)
        else:
            sig.append(DOT)
    return sig


# -- weight dictionaries --------------------------------------------------------


def lambda_q(
    b: Sequence[int], sigma: Sequence[int], z, odd_n_flag: bool = False
) -> list[Fraction]:
    """Coordinates ``sigma_r (z + b_r)``; a trailing 1 is appended for the odd-n variant."""
    _check_len(sigma, b)
    z = Fraction(z)
    if (2 * z).denominator == 1:
        raise InvalidInput(f"z={z} is not allowed: 2z must not be an integer")
    coords = [sr * (z + br) for br, sr in zip(b, sigma)]
    if odd_n_flag:
        coords.append(Fraction(1))
    return coords


def lambda_gl(b: Sequence[int], sigma: Sequence[int]) -> tuple[list[int], int]:
    """The signed rho-shifted coordinates and the parity of the highest weight vector."""
    _check_len(sigma, b)
    coords = []
    prefix = 0
    for br, sr in zip(b, sigma):
        coords.append(sr * (br + prefix + (sr - 1) // 2))
        prefix += sr
    parity = sum(c for c, sr in zip(coords, sigma) if sr < 0) % 2
    return coords, parity


# -- dominant typical tuples and the dominant source ----------------------------


def is_dominant_typical(b: Sequence[int], sigma: Sequence[int]) -> bool:
    # With lambda_r = sigma_r (z + b_r): same-sign dominance lambda_r >= lambda_s
    # reads b_r >= b_s for + and b_r <= b_s for -, and for opposite signs
    # lambda_r + lambda_s = +-(b_r - b_s), so typicality is b_r != b_s.
    _check_len(sigma, b)
    n = len(b)
    for r in range(n):
        for s in range(r + 1, n):
            if sigma[r] == sigma[s]:
                if sigma[r] > 0 and b[r] < b[s]:
                    return False
                if sigma[r] < 0 and b[r] > b[s]:
                    return False
            elif b[r] == b[s]:
                return False
    return True


def dominant_source(b: Sequence[int], sigma: Sequence[int]) -> tuple[Tuple, list[int]]:
    """Dominant typical ``a`` and f-monomial ``X`` with ``X v_a = v_b + (higher terms)``.

    ``X`` is returned as the list of generator indices in application order,
    i.e. the first entry acts first.
    """
    _check_len(sigma, b)
    b = tuple(b)
    a = [b[0]]
    word: list[int] = []
    for s in range(1, len(b)):
        if sigma[s] > 0:
            bound = b[s]
            for r in range(s):
                bound = min(bound, (a[r] if sigma[r] > 0 else b[r]) - 1)
            a.append(bound)
            word.extend(range(bound, b[s]))
        else:
            bound = b[s]
            for r in range(s):
                bound = max(bound, (a[r] if sigma[r] < 0 else b[r]) + 1)
            a.append(bound)
            word.extend(range(bound - 1, b[s] - 1, -1))
    return tuple(a), word


def dominant_source_blocks(b: Sequence[int], sigma: Sequence[int]) -> list[list[int]]:
    """The blocks X_n, ..., X_2 in displayed (left-to-right written) order."""
    a, _ = dominant_source(b, sigma)
    blocks = []
    for r in range(len(b) - 1, 0, -1):
        if sigma[r] > 0:
            blocks.append(list(range(b[r] - 1, a[r] - 1, -1)))
        else:
            blocks.append(list(range(b[r], a[r])))
    return blocks


def format_blocks(blocks: Iterable[Sequence[int]]) -> str:
    return "".join("(" + "".join(f"f_{i}" for i in blk) + ")" for blk in blocks if blk)
