"""Tests for the independent verifier, the ratio scan and the Melfi count."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digitwitness.errors import ConstructionDefectError, DomainError, InvalidBaseError
from digitwitness.numtheory.radix import digit_sum
from digitwitness.oracle.scan import RatioEntry, melfi_count, scan
from digitwitness.oracle.verifier import apply_exponent, certify, verify_witness
from digitwitness.types.witness_schema import ConstructionTrace, RatioTarget, Route

# ============================================================================
# VERIFIER
# ============================================================================


def test_verify_golden_binary_witness():
    report = verify_witness(259915775, 2)
    assert report.ratio == RatioTarget(1, 2)
    assert (report.s_u, report.s_fu) == (26, 13)
    assert report.verified


def test_verify_gap_witness():
    report = verify_witness(2624, 5)
    assert (report.s_u, report.s_fu) == (16, 16)
    assert report.ratio == RatioTarget(1, 1)


@pytest.mark.parametrize("q", [2, 3, 10, 40])
def test_powers_of_base_have_ratio_one(q):
    assert verify_witness(q ** 17, q).ratio == RatioTarget(1, 1)


def test_apply_exponent():
    assert apply_exponent(12, Fraction(2)) == 144
    assert apply_exponent(4101, Fraction(1, 3)) == 16
    with pytest.raises(DomainError):
        apply_exponent(5, Fraction(0))


def test_certify_rejects_wrong_ratio():
    trace = ConstructionTrace(route=Route.BASEQ_GAP, k=1, n=3)
    assert certify(2624, 5, RatioTarget(1, 1), trace).trace == trace
    with pytest.raises(ConstructionDefectError):
        certify(2624, 5, RatioTarget(1, 2), trace)


def test_verify_rejects_zero():
    with pytest.raises(DomainError):
        verify_witness(0, 10)


# ============================================================================
# SCAN
# ============================================================================


def test_scan_binary_to_eight():
    table = scan(2, 8)
    assert table.entries == {
        Fraction(1): RatioEntry(min_witness=1, count=7),
        Fraction(3, 2): RatioEntry(min_witness=5, count=1),
    }
    assert table.extremes == ((Fraction(1), 1), (Fraction(3, 2), 5))


def test_scan_single_value():
    assert scan(2, 1).entries == {Fraction(1): RatioEntry(1, 1)}


def test_scan_entries_reverify():
    table = scan(3, 100)
    assert sum(entry.count for entry in table.entries.values()) == 100
    for ratio, entry in table.entries.items():
        n = entry.min_witness
        assert digit_sum(n * n, 3) * ratio.denominator == digit_sum(n, 3) * ratio.numerator
    assert list(table.entries) == sorted(table.entries)


def test_scan_frame_and_dict():
    table = scan(2, 8)
    frame = table.to_frame()
    assert list(frame.columns) == ["ratio", "min_witness", "count"]
    assert frame.to_dict(orient="records")[1] == {"ratio": "3/2", "min_witness": "5", "count": "1"}
    data = table.to_dict()
    assert data["extremes"]["max"] == {"ratio": "3/2", "witness": "5"}


@settings(max_examples=25, deadline=None)
@given(
    q=st.integers(min_value=2, max_value=12),
    limit=st.integers(min_value=1, max_value=3000),
    chunk=st.integers(min_value=1, max_value=700),
)
def test_scan_chunking_is_deterministic(q, limit, chunk):
    assert scan(q, limit, chunk_size=chunk).entries == scan(q, limit).entries


def test_scan_parallel_matches_serial():
    assert scan(3, 5000, chunk_size=997, workers=2).entries == scan(3, 5000, workers=1).entries


def test_scan_rejects_bad_arguments():
    with pytest.raises(InvalidBaseError):
        scan(1, 10)
    with pytest.raises(DomainError):
        scan(2, 0)


# ============================================================================
# MELFI COUNT
# ============================================================================


def test_melfi_count_small():
    assert melfi_count(1) == 1
    assert melfi_count(8) == 7
    assert melfi_count(16) == 11


def test_melfi_count_is_monotone():
    counts = [melfi_count(n, chunk_size=64) for n in range(1, 300, 13)]
    assert counts == sorted(counts)


def test_melfi_count_chunking():
    assert melfi_count(20000, chunk_size=333) == melfi_count(20000)


@pytest.mark.slow
def test_melfi_count_million():
    count = melfi_count(10 ** 6, workers=2)
    assert count >= (10 ** 6) ** (1 / 19)
    # every power of two qualifies
    assert count >= 20
