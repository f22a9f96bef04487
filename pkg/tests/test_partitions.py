"""Partition parsing, statistics, containment, enumeration."""

import random

import pytest

from qmoments import ParseError, Partition, parse_partition, partitions_of, render, subpartitions


def test_construction_and_normalization():
    assert Partition([3, 1, 0, 0]) == Partition([3, 1])
    assert Partition([]) == Partition(())
    assert Partition([5]).size == 5
    assert Partition([3, 2, 2]).length == 3
    assert Partition([]).size == 0 and Partition([]).length == 0


def test_construction_rejects_bad_input():
    with pytest.raises(ParseError):
        Partition([1, 2])
    with pytest.raises(ParseError):
        Partition([2, -1])


def test_part_and_conj_padding():
    lam = Partition([4, 2, 1])
    assert [lam.part(i) for i in range(1, 6)] == [4, 2, 1, 0, 0]
    assert lam.conjugate() == Partition([3, 2, 1, 1])
    assert [lam.conj(i) for i in range(1, 7)] == [3, 2, 1, 1, 0, 0]


def test_conjugate_involution():
    rng = random.Random(7)
    for _ in range(200):
        parts = sorted((rng.randrange(1, 9) for _ in range(rng.randrange(0, 7))), reverse=True)
        lam = Partition(parts)
        assert lam.conjugate().conjugate() == lam
        assert lam.conjugate().size == lam.size


def test_multiplicities():
    lam = Partition([4, 2, 2, 1])
    assert lam.mult(2) == 2
    assert lam.mult(3) == 0
    assert lam.mult(1) == 1
    assert lam.mult(4) == 1
    # m_i = conj(i) - conj(i+1)
    for i in range(1, 7):
        assert lam.mult(i) == lam.conj(i) - lam.conj(i + 1)


def test_nstat():
    assert Partition([]).nstat() == 0
    assert Partition([3]).nstat() == 0
    assert Partition([2, 2]).nstat() == 2
    assert Partition([3, 2, 1]).nstat() == 2 * 1 + 1 * 2  # 0*3 + 1*2 + 2*1
    # n(lambda) = sum over columns of C(col, 2)
    lam = Partition([4, 4, 2, 1])
    expected = sum(c * (c - 1) // 2 for c in lam.conjugate())
    assert lam.nstat() == expected


def test_contains():
    lam = Partition([3, 2])
    assert lam.contains(Partition([3, 2]))
    assert lam.contains(Partition([]))
    assert lam.contains(Partition([2, 2]))
    assert not lam.contains(Partition([3, 3]))
    assert not lam.contains(Partition([1, 1, 1]))
    assert not Partition([]).contains(Partition([1]))


def test_parse_forms():
    assert parse_partition("3,2,2") == Partition([3, 2, 2])
    assert parse_partition(" 3, 2 ,2 ") == Partition([3, 2, 2])
    assert parse_partition("") == Partition([])
    assert parse_partition("  ") == Partition([])
    assert parse_partition("2^3 1^2") == Partition([2, 2, 2, 1, 1])
    assert parse_partition("1^2 2^3") == Partition([2, 2, 2, 1, 1])
    assert parse_partition("5^1") == Partition([5])


def test_parse_errors():
    for bad in ("1,2", "a,b", "2,-1", "0,0", "2^", "^2", "2^0 1", "1.5", "3 2"):
        with pytest.raises(ParseError):
            parse_partition(bad)


def test_render_roundtrip():
    lam = Partition([3, 2, 2])
    assert parse_partition(render(lam, "parts")) == lam
    assert parse_partition(render(lam, "mults")) == lam
    assert render(Partition([]), "parts") == ""


def test_partitions_of_counts():
    # partition numbers p(0..10)
    expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    for n, e in enumerate(expected):
        assert sum(1 for _ in partitions_of(n)) == e


def test_partitions_of_order_and_filters():
    got = list(partitions_of(4))
    assert got == [
        Partition([4]),
        Partition([3, 1]),
        Partition([2, 2]),
        Partition([2, 1, 1]),
        Partition([1, 1, 1, 1]),
    ]
    assert list(partitions_of(4, max_part=2)) == [
        Partition([2, 2]),
        Partition([2, 1, 1]),
        Partition([1, 1, 1, 1]),
    ]
    assert list(partitions_of(4, max_length=2)) == [
        Partition([4]),
        Partition([3, 1]),
        Partition([2, 2]),
    ]
    assert list(partitions_of(0)) == [Partition([])]
    assert list(partitions_of(3, max_part=1, max_length=2)) == []


def test_subpartitions_exact_set():
    lam = Partition([2, 1])
    got = sorted(subpartitions(lam))
    assert got == sorted(
        [
            Partition([]),
            Partition([1]),
            Partition([2]),
            Partition([1, 1]),
            Partition([2, 1]),
        ]
    )


def test_subpartitions_match_containment_filter():
    rng = random.Random(11)
    for _ in range(20):
        parts = sorted((rng.randrange(1, 5) for _ in range(rng.randrange(0, 4))), reverse=True)
        lam = Partition(parts)
        via_gen = sorted(subpartitions(lam))
        via_filter = sorted(
            mu
            for n in range(lam.size + 1)
            for mu in partitions_of(n)
            if lam.contains(mu)
        )
        assert via_gen == via_filter
        assert len(via_gen) == len(set(via_gen))


def test_mult_form():
    assert Partition([2, 2, 2, 1, 1]).mult_form() == "1^2 2^3"
    assert Partition([]).mult_form() == ""
