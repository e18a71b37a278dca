import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgoldbach.arith import (
    CapacityError,
    ParityTable,
    SignFunction,
    UndefinedValueError,
    build_parity_table,
    find_primitive_root,
    is_prime,
    jacobi_symbol,
    largest_prime_factor,
    liouville,
    primes_up_to,
)

from conftest import omega_trial


def test_parity_small_limits():
    assert build_parity_table(1).parity(1) == 0
    assert build_parity_table(12).parity(12) == 1
    assert build_parity_table(10).parities(1, 10).tolist() == [0, 1, 1, 0, 1, 0, 1, 1, 0, 0]


def test_sieve_matches_trial_division(table):
    par = table.parities(1, 10_000)
    expected = [omega_trial(n) % 2 for n in range(1, 10_001)]
    assert par.tolist() == expected


def test_primes_have_odd_parity(table):
    ps = primes_up_to(table.limit)
    assert np.all(table.parities()[ps - 1] == 1)


@settings(max_examples=300)
@given(st.integers(1, 200_000), st.integers(1, 200_000))
def test_complete_multiplicativity(table, m, n):
    if m * n > table.limit:
        n = max(1, table.limit // m)
    assert liouville(table, m * n) == liouville(table, m) * liouville(table, n)


def test_complete_multiplicativity_bulk(table):
    rng = np.random.default_rng(7)
    m = rng.integers(1, 450, size=10_000)
    n = rng.integers(1, table.limit // m + 1)
    s = np.concatenate(([0], table.signs()))
    assert np.array_equal(s[m * n], s[m] * s[n])


@pytest.mark.parametrize("limit", [1, 7, 8, 9, 1000, 4099])
@pytest.mark.parametrize("seg", [8, 24, 1 << 10])
def test_segmentation_and_workers_are_invisible(limit, seg):
    ref = build_parity_table(limit)
    assert build_parity_table(limit, segment_size=seg) == ref
    assert build_parity_table(limit, segment_size=seg, workers=3) == ref


def test_liouville_examples(table):
    assert [liouville(table, n) for n in (1, 2, 4)] == [1, -1, 1]
    with pytest.raises(IndexError):
        liouville(table, 0)
    with pytest.raises(IndexError):
        liouville(table, table.limit + 1)


def test_parity_file_roundtrip(tmp_path):
    t = build_parity_table(1001)
    path = tmp_path / "t.lpar"
    t.save(path)
    raw = path.read_bytes()
    assert raw[:5] == b"LPAR\x01"
    assert int.from_bytes(raw[5:13], "little") == 1001
    assert len(raw) == 13 + 126
    # n = 8i + j + 1 lives in bit j of data byte i
    for n in (1, 2, 8, 9, 1000, 1001):
        i, j = divmod(n - 1, 8)
        assert (raw[13 + i] >> j) & 1 == t.parity(n)
    assert ParityTable.load(path) == t


def test_parity_file_rejects_garbage():
    with pytest.raises(ValueError):
        ParityTable.from_bytes(b"XPAR\x01" + (5).to_bytes(8, "little") + b"\x00")
    with pytest.raises(ValueError):
        ParityTable.from_bytes(b"LPAR\x01" + (50).to_bytes(8, "little") + b"\x00")


def test_capacity_error():
    with pytest.raises(CapacityError):
        build_parity_table(10**9, memory_budget=10**6)


def test_jacobi_examples():
    assert jacobi_symbol(1, 7) == 1
    assert jacobi_symbol(2, 7) == 1
    assert jacobi_symbol(3, 7) == -1
    assert jacobi_symbol(14, 7) == 0
    for bad in (0, -3, 8):
        with pytest.raises(ValueError):
            jacobi_symbol(1, bad)


@pytest.mark.parametrize("p", [int(p) for p in primes_up_to(500)[1:]])
def test_jacobi_is_legendre(p):
    squares = {k * k % p for k in range(1, p)}
    vals = [jacobi_symbol(n, p) for n in range(1, p)]
    assert vals == [1 if n in squares else -1 for n in range(1, p)]
    assert all(v * v == 1 for v in vals)


@settings(max_examples=200)
@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(0, 5000))
def test_jacobi_multiplicative(a, b, k):
    n = 2 * k + 1
    assert jacobi_symbol(a * b, n) == jacobi_symbol(a, n) * jacobi_symbol(b, n)


def test_character_orthogonality():
    for p in primes_up_to(10_000)[1:]:
        assert int(SignFunction.character(int(p)).values(1, int(p) - 1).astype(int).sum()) == 0


def test_is_prime():
    assert not is_prime(1)
    assert is_prime(2)
    assert not is_prime(561)
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    sieve = set(primes_up_to(20_000).tolist())
    assert all(is_prime(n) == (n in sieve) for n in range(1, 20_001))


@pytest.mark.parametrize("p,root", [(3, 2), (5, 2), (7, 3), (11, 2), (23, 5), (41, 6)])
def test_primitive_root(p, root):
    assert find_primitive_root(p) == root
    assert len({pow(root, k, p) for k in range(1, p)}) == p - 1


def test_primitive_root_rejects_composites():
    with pytest.raises(ValueError):
        find_primitive_root(9)


def test_largest_prime_factor():
    v = largest_prime_factor(12)
    assert (v.largest, v.cofactor) == (3, 4)
    assert (largest_prime_factor(7).largest, largest_prime_factor(7).cofactor) == (7, 1)
    assert (largest_prime_factor(30).largest, largest_prime_factor(30).cofactor) == (5, 6)
    with pytest.raises(ValueError):
        largest_prime_factor(1)


@given(st.integers(2, 10**9))
def test_factor_view_invariants(n):
    v = largest_prime_factor(n)
    assert v.largest * v.cofactor == n
    assert is_prime(v.largest)
    assert v.cofactor == 1 or largest_prime_factor(v.cofactor).largest <= v.largest


def test_sign_function_kinds(table):
    lam = SignFunction.liouville(table)
    assert lam.values(1, 10).tolist() == [1, -1, -1, 1, -1, 1, -1, -1, 1, 1]
    chi = SignFunction.character(7)
    assert chi.values(1, 14).tolist() == [1, 1, -1, 1, -1, -1, 0] * 2
    with pytest.raises(ValueError):
        SignFunction.character(2)


def test_custom_sign_function():
    f = SignFunction.custom({2: -1, 3: 1, 5: -1, 7: 1}, cutoff=10)
    assert f.values(1, 10).tolist() == [1, -1, 1, 1, -1, -1, 1, -1, 1, 1]
    with pytest.raises(UndefinedValueError):
        f(11)
    with pytest.raises(ValueError):
        SignFunction.custom({2: -1}, cutoff=10)


def test_custom_all_minus_is_liouville(table):
    ps = primes_up_to(3000).tolist()
    f = SignFunction.custom(dict.fromkeys(ps, -1), cutoff=3000)
    assert np.array_equal(f.values(1, 3000), table.signs(1, 3000))
