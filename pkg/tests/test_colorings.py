import pytest
from hypothesis import given, strategies as st

from folkprimes.arith import first_primes
from folkprimes.colorings import (
    ColorTable,
    Colorer,
    Scheme,
    all_color_tuples,
    color_count,
    color_proof1,
    color_proof2,
    decode,
    encode,
    required_size,
)
from folkprimes.errors import DomainError, IntOverflowError, UsageError
from oracle import oracle_color

B1, B2, B3 = first_primes(1), first_primes(2), first_primes(3)


@pytest.mark.parametrize("n, basis, expected", [
    (1, B1, (0, 1)),
    (20, B1, (0, 1)),
    (12, B2, (0, 3, 1)),
])
def test_proof1_examples(n, basis, expected):
    assert color_proof1(n, basis).components == expected


@pytest.mark.parametrize("n, basis, expected", [
    (1, B2, (0, 0)),
    (8, B1, (1,)),
    (12, B2, (0, 1)),
])
def test_proof2_examples(n, basis, expected):
    assert color_proof2(n, basis).components == expected


def test_zero_rejected():
    with pytest.raises(DomainError):
        color_proof1(0, B1)
    with pytest.raises(DomainError):
        color_proof2(0, B1)


def test_color_count():
    assert color_count("proof1", B1) == 4
    assert color_count("proof1", B3) == 32
    assert color_count("proof2", B3) == 8


def test_required_size():
    assert required_size("proof1", B3) == 4
    assert required_size("proof2", B1) == 32
    assert required_size("proof2", B2) == 3888
    with pytest.raises(IntOverflowError):
        required_size("proof2", first_primes(32))


def test_proof1_ranges():
    for n in range(1, 10**5 + 1):
        c = color_proof1(n, B3).components
        assert c[0] in (0, 1)
        assert c[1] in (1, 3)
        assert 1 <= c[2] <= 2 and 1 <= c[3] <= 4


@pytest.mark.parametrize("scheme", ["proof1", "proof2"])
def test_canonical_is_bijection(scheme):
    tuples = all_color_tuples(scheme, B3)
    idx = [encode(scheme, t, B3) for t in tuples]
    assert sorted(idx) == list(range(color_count(scheme, B3)))
    assert idx == sorted(idx)
    assert [decode(scheme, i, B3) for i in idx] == tuples


def test_encode_rejects_out_of_range():
    with pytest.raises(UsageError):
        encode("proof1", (0, 2), B1)
    with pytest.raises(UsageError):
        encode("proof2", (0,), B2)


def test_total_beyond_basis():
    for n in range(1, 10**4 + 1):
        color_proof1(n, B1)
        color_proof2(n, B1)
    assert color_proof1(7, B1).components == (0, 3)


@given(st.integers(1, 10**9), st.integers(1, 5), st.sampled_from(["proof1", "proof2"]))
def test_matches_oracle(n, k, scheme):
    basis = first_primes(k)
    col = color_proof1 if scheme == "proof1" else color_proof2
    key = col(n, basis)
    assert key.components == oracle_color(scheme, n, list(basis))
    assert Colorer(scheme, basis)(n) == key.canonical


def test_scheme_parse():
    assert Scheme.parse("PROOF1") is Scheme.PROOF1
    with pytest.raises(UsageError):
        Scheme.parse("proof3")


def test_table_load(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("# demo\nrule reject\n1 0\n2 1\n3 0  # trailing\n")
    table = ColorTable.load(path)
    assert table.colors == {1: 0, 2: 1, 3: 0}
    assert table.covers(3) and not table.covers(4)
    assert table.n_colors == 2
    c = Colorer("custom", B1, table)
    assert c(2) == 1 and c(9) is None


@pytest.mark.parametrize("body", ["1 0\n1 1\n", "rule extend\n1 0\n", "1\n", "x y\n", "0 1\n"])
def test_table_rejects_bad_files(tmp_path, body):
    path = tmp_path / "t.txt"
    path.write_text(body)
    with pytest.raises(UsageError):
        ColorTable.load(path)
