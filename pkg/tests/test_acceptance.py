"""Acceptance criteria; each test prints a single PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import contextlib
import io
import json
import random
import time

import pytest

from canbasis.canonical import Budget, CanonicalCache, canonical_basis, multiplicity, select_j
from canbasis.cli import run
from canbasis.errors import BudgetExceeded
from canbasis.laurent import ONE, LaurentPoly
from canbasis.order import (
    E,
    F,
    bruhat_geq,
    bruhat_geq_oracle,
    dominant_source,
    dominant_source_blocks,
    format_blocks,
    i_signature,
    is_dominant_typical,
    unit_shift,
)
from canbasis.tensor import TensorVector, apply_monomial, e_act, f_act, k_act, specialize_one
from oracles import same_weight_tuples

P = LaurentPoly.parse
S3 = (1, 1, -1)
S4 = (1, 1, -1, -1)


@pytest.fixture
def report(capsys):
    @contextlib.contextmanager
    def _report(number, title):
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"\n[acceptance {number:2d}] FAIL  {title}")
            raise
        with capsys.disabled():
            print(f"\n[acceptance {number:2d}] PASS  {title}")

    return _report


def _rand_sigma(rng, n):
    return tuple(rng.choice((1, -1)) for _ in range(n))


# values transcribed from the worked example
C122 = TensorVector(S3, [((1, 2, 2), P("1")), ((2, 1, 2), P("q")), ((1, 3, 3), P("q")), ((3, 1, 3), P("q^2"))])
SEVENTEEN = TensorVector(
    S4,
    [
        ((1, 2, 2, 1), P("1")), ((1, 2, 1, 2), P("q")), ((2, 1, 2, 1), P("q")),
        ((1, 4, 1, 4), P("q")), ((1, 3, 3, 1), P("q")), ((2, 1, 1, 2), P("q^2")),
        ((3, 1, 3, 1), P("q^2")), ((2, 3, 3, 2), P("q^2")), ((4, 1, 1, 4), P("q^2")),
        ((2, 4, 2, 4), P("q^2")), ((1, 3, 1, 3), P("1+q^2")), ((3, 2, 3, 2), P("q^3")),
        ((4, 2, 2, 4), P("q^3")), ((2, 3, 2, 3), P("q+q^3")), ((3, 1, 1, 3), P("q+q^3")),
        ((2, 2, 2, 2), P("q+q^3")), ((3, 2, 2, 3), P("q^2+q^4")),
    ],
)
C1313 = TensorVector(
    S4,
    [
        ((1, 3, 1, 3), P("1")), ((3, 1, 1, 3), P("q")), ((2, 3, 2, 3), P("q")),
        ((1, 4, 1, 4), P("q")), ((3, 2, 2, 3), P("q^2")), ((4, 1, 1, 4), P("q^2")),
        ((2, 4, 2, 4), P("q^2")), ((4, 2, 2, 4), P("q^3")),
    ],
)


def test_01_worked_example_end_to_end(report):
    with report(1, "canonical basis worked example, exact, < 1 s"):
        start = time.perf_counter()
        cache = CanonicalCache()
        c122 = canonical_basis((1, 2, 2), S3, cache)
        assert c122 == C122
        j = select_j(c122.support(), S4, 1)
        assert j == 4
        expanded = apply_monomial([3, 2, 1], c122.extend(j, -1))
        assert len(expanded) == 17
        assert expanded == SEVENTEEN
        assert canonical_basis((1, 3, 1, 3), S4, cache) == C1313
        assert canonical_basis((1, 2, 2, 1), S4, cache) == SEVENTEEN - C1313
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, elapsed


def test_02_dominant_source_example(report):
    with report(2, "dominant source of (3,4,3,4,3,4), exact"):
        sigma = (1, 1, -1, 1, -1, -1)
        a, _ = dominant_source((3, 4, 3, 4, 3, 4), sigma)
        assert a == (3, 2, 5, 1, 6, 7)
        blocks = dominant_source_blocks((3, 4, 3, 4, 3, 4), sigma)
        assert blocks == [[4, 5, 6], [3, 4, 5], [3, 2, 1], [3, 4], [3, 2]]
        assert format_blocks(blocks) == "(f_4f_5f_6)(f_3f_4f_5)(f_3f_2f_1)(f_3f_4)(f_3f_2)"


def test_03_triangularity_suite(report):
    with report(3, "triangularity of 200 random c_b (n<=4, entries 0..4), default budgets"):
        rng = random.Random(20261016)
        exhausted = []
        for _ in range(200):
            n = rng.randint(1, 4)
            sigma = _rand_sigma(rng, n)
            b = tuple(rng.randint(0, 4) for _ in range(n))
            try:
                c = canonical_basis(b, sigma, CanonicalCache(), Budget())
            except BudgetExceeded as exc:
                exhausted.append((sigma, b, str(exc)))
                continue
            assert c.coeff(b) == ONE
            for a, p in c.items():
                if a != b:
                    assert bruhat_geq(a, b, sigma) and a != b, (sigma, b, a)
                    assert p.in_qZq(), (sigma, b, a, p)
        assert not exhausted, exhausted


def test_04_q_one_signature_oracle(report):
    with report(4, "q=1 action matches i-signatures on 500 random monomials (n<=6)"):
        rng = random.Random(4)
        for _ in range(500):
            n = rng.randint(1, 6)
            sigma = _rand_sigma(rng, n)
            b = tuple(rng.randint(-2, 3) for _ in range(n))
            i = rng.randint(min(b) - 1, max(b))
            v = TensorVector.monomial(b, sigma)
            sig = i_signature(b, sigma, i)
            fs = {unit_shift(b, t, sigma[t]): 1 for t, x in enumerate(sig) if x == F}
            es = {unit_shift(b, t, -sigma[t]): 1 for t, x in enumerate(sig) if x == E}
            assert specialize_one(f_act(i, v)) == fs
            assert specialize_one(e_act(i, v)) == es


def test_05_order_criterion_equivalence(report):
    with report(5, "signed-count Bruhat criterion equals the dominance definition on 1000 pairs"):
        rng = random.Random(5)
        agree_true = 0
        for k in range(1000):
            n = rng.randint(1, 4)
            sigma = _rand_sigma(rng, n)
            b = tuple(rng.randint(0, 3) for _ in range(n))
            if k % 2:
                a = tuple(rng.randint(0, 3) for _ in range(n))
            else:
                # same-weight partner, so the comparison is not trivially false
                a = rng.choice(same_weight_tuples(b, sigma, 0, 3))
            got = bruhat_geq(a, b, sigma)
            assert got == bruhat_geq_oracle(a, b, sigma), (sigma, a, b)
            agree_true += got
        assert agree_true > 100


def test_06_monotonicity(report):
    with report(6, "shifted comparisons under f-moves, 500 instances"):
        rng = random.Random(6)
        done = strict = 0
        while done < 500:
            n = rng.randint(1, 4)
            sigma = _rand_sigma(rng, n)
            b = tuple(rng.randint(0, 3) for _ in range(n))
            i = b[-1] if sigma[-1] > 0 else b[-1] - 1
            above = [a for a in same_weight_tuples(b, sigma, 0, 3) if bruhat_geq(a, b, sigma)]
            a = rng.choice(above)
            rs = [r for r, x in enumerate(i_signature(a, sigma, i)) if x == F]
            if not rs:
                continue
            r = rng.choice(rs)
            a2, b2 = unit_shift(a, r, sigma[r]), unit_shift(b, n - 1, sigma[-1])
            assert bruhat_geq(a2, b2, sigma)
            assert (a2 == b2) == (a == b and r == n - 1)
            strict += a2 != b2
            done += 1
        assert strict > 0


def test_07_construction_lemma_at_q_one(report):
    with report(7, "X v_a = v_b + higher terms at q=1, 200 random b (n<=5, entries -3..3)"):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(1, 5)
            sigma = _rand_sigma(rng, n)
            b = tuple(rng.randint(-3, 3) for _ in range(n))
            a, word = dominant_source(b, sigma)
            got = specialize_one(apply_monomial(word, TensorVector.monomial(a, sigma)))
            assert got.get(b) == 1, (sigma, b)
            for c in got:
                if c != b:
                    assert bruhat_geq(c, b, sigma) and c != b, (sigma, b, c)


def test_08_quantum_commutation(report):
    with report(8, "[e_i, f_j] = delta_ij (k_i - k_i^-1)/(q - q^-1) on 100 random vectors"):
        rng = random.Random(8)
        denom = P("q - q^-1")
        for _ in range(100):
            n = rng.randint(1, 4)
            sigma = _rand_sigma(rng, n)
            terms = []
            for _ in range(rng.randint(1, 3)):
                b = tuple(rng.randint(0, 3) for _ in range(n))
                coeff = LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3) for _ in range(2)})
                terms.append((b, coeff))
            v = TensorVector(sigma, terms)
            entries = [x for b, _ in terms for x in b]
            window = range(min(entries) - 1, max(entries) + 1)
            i, j = rng.choice(window), rng.choice(window)
            lhs = e_act(i, f_act(j, v)) - f_act(j, e_act(i, v))
            if i == j:
                num = k_act(i, v) - k_act(i, v, -1)
                rhs = TensorVector(sigma, [(b, p.exact_div(denom)) for b, p in num.items()])
            else:
                rhs = TensorVector.zero(sigma)
            assert lhs == rhs, (sigma, i, j, v)


def test_09_dominant_typical_degeneration(report):
    with report(9, "multiplicity(a, b) = delta_ab for 100 random dominant typical b (n<=4)"):
        rng = random.Random(9)
        found = 0
        cache = CanonicalCache()
        while found < 100:
            n = rng.randint(1, 4)
            sigma = _rand_sigma(rng, n)
            b = tuple(rng.randint(0, 6) for _ in range(n))
            if not is_dominant_typical(b, sigma):
                continue
            found += 1
            c = canonical_basis(b, sigma, cache)
            for a in c.support():
                assert multiplicity(a, b, sigma, cache) == (1 if a == b else 0), (sigma, b, a)


def _cli(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    assert code == 0, err.getvalue()
    return out.getvalue()


def test_10_determinism_and_cache_coherence(report, tmp_path):
    with report(10, "warm, cold and merged-batch caches give identical vectors and output"):
        keys = [(S3, (1, 2, 2)), (S4, (1, 3, 1, 3)), (S4, (1, 2, 2, 1))]
        cold = {k: canonical_basis(k[1], k[0], CanonicalCache()) for k in keys}
        warm_cache = CanonicalCache()
        for k in keys:
            canonical_basis(k[1], k[0], warm_cache)
        warm = {k: canonical_basis(k[1], k[0], warm_cache) for k in keys}
        left, right = CanonicalCache(), CanonicalCache()
        canonical_basis((1, 2, 2), S3, left)
        canonical_basis((1, 2, 2, 1), S4, right)
        left.merge(right)
        merged = {k: canonical_basis(k[1], k[0], left) for k in keys}
        disk = tmp_path / "warm.json"
        warm_cache.save(disk)
        reloaded = CanonicalCache.load(disk)
        from_disk = {k: canonical_basis(k[1], k[0], reloaded) for k in keys}
        for k in keys:
            assert cold[k] == warm[k] == merged[k] == from_disk[k]
            dumps = {json.dumps(d[k].to_json()) for d in (cold, warm, merged, from_disk)}
            assert len(dumps) == 1

        lines = "++-;1,2,2\n++--;1,3,1,3\n++--;1,2,2,1\n"
        def argv(k, *extra):
            sigma = "".join("+" if x > 0 else "-" for x in k[0])
            return ["compute", "--sigma", sigma, "--b", ",".join(map(str, k[1])), "--json", *extra]

        cache_path = tmp_path / "cli.json"
        single = [_cli(argv(k)) for k in keys]
        with_cache = [_cli(argv(k, "--cache", str(cache_path))) for k in keys]
        again = [_cli(argv(k, "--cache", str(cache_path))) for k in keys]
        assert single == with_cache == again
        batch_path = tmp_path / "batch.json"
        batch = _cli(["compute", "--b", "-", "--jobs", "2", "--cache", str(batch_path)], stdin=lines)
        serial = _cli(["compute", "--b", "-"], stdin=lines)
        assert batch == serial
        for row, text in zip(batch.splitlines(), single):
            assert json.dumps(json.loads(row)["vector"], separators=(",", ":")) == text.strip()
        merged_disk = CanonicalCache.load(batch_path)
        for k in keys:
            assert merged_disk.get(*k) == cold[k]
