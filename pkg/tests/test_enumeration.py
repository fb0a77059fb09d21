"""Enumeration order, ranking, exact sampling, and the census with its file format."""

import os

import pytest

from goglattice import (
    CensusTable,
    FormatError,
    IndexOutOfRange,
    LimitExceeded,
    MonotoneTriangle,
    TrianglePrefix,
    asm_number,
    build_census,
    completions_count,
    enumerate_triangles,
    eta,
    extremal_triangle,
    load_or_build_census,
    rank,
    resolve_cache_dir,
    sample_uniform,
    unrank,
)
from goglattice.enumeration import enumerate_triangles_partitioned

CENSUS3_TEXT = "MTCENSUS v1 n=3 total=7\n4 4\n5 1\n6 1\n7 1\n"


class TestEnumeration:
    def test_size_one(self):
        assert [t.rows for t in enumerate_triangles(1)] == [((1,),)]

    @pytest.mark.parametrize("n", range(1, 6))
    def test_counts_and_extremes(self, n, universe):
        ts = universe(n)
        assert len(ts) == asm_number(n)
        assert ts[0] == extremal_triangle(n, "min")
        assert ts[-1] == extremal_triangle(n, "max")

    def test_lexicographic_on_reading_sequence(self, universe):
        seqs = [t.reading_sequence() for t in universe(4)]
        assert seqs == sorted(seqs)

    def test_no_duplicates(self, universe):
        for n in range(1, 6):
            ts = universe(n)
            assert len({t.rows for t in ts}) == len(ts)

    def test_set_equality_against_all_candidates(self):
        # independent generation: every strictly increasing row combination,
        # filtered by validation only
        from itertools import combinations, product as iproduct

        from goglattice.errors import TriangleError

        n = 4
        row_choices = [list(combinations(range(1, n + 1), i)) for i in range(1, n + 1)]
        valid = set()
        for rows in iproduct(*row_choices):
            try:
                valid.add(MonotoneTriangle(rows).rows)
            except TriangleError:
                pass
        assert valid == {t.rows for t in enumerate_triangles(n)}

    def test_limit(self):
        with pytest.raises(LimitExceeded):
            list(enumerate_triangles(8))

    def test_partitioned_matches_sequential(self, universe):
        parallel = list(enumerate_triangles_partitioned(4, workers=2))
        assert parallel == universe(4)


class TestCompletions:
    def test_bottom_row(self):
        assert completions_count(TrianglePrefix(3, 3, (1, 2, 3))) == 1

    def test_top_entry_buckets(self):
        assert [completions_count(TrianglePrefix(3, 1, (v,))) for v in (1, 2, 3)] == [2, 3, 2]

    @pytest.mark.parametrize("n", range(1, 8))
    def test_empty_prefix_counts_everything(self, n):
        assert completions_count(TrianglePrefix(n, 0, ())) == asm_number(n)

    def test_independent_of_formula_up_to_dp_limit(self):
        for n in (10, 12):
            assert completions_count(TrianglePrefix(n, 0, ())) == asm_number(n)

    def test_level_one_sum(self):
        for n in range(1, 8):
            total = sum(
                completions_count(TrianglePrefix(n, 1, (v,))) for v in range(1, n + 1)
            )
            assert total == asm_number(n)


class TestRankUnrank:
    def test_minimal_is_rank_zero(self):
        for n in (1, 3, 5):
            assert rank(extremal_triangle(n, "min")) == 0

    def test_unrank_last(self):
        assert unrank(3, 6) == extremal_triangle(3, "max")

    @pytest.mark.parametrize("n", range(1, 6))
    def test_roundtrip_exhaustive(self, n, universe):
        for k, t in enumerate(universe(n)):
            assert rank(t) == k
            assert unrank(n, k) == t

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            unrank(3, 7)
        with pytest.raises(IndexOutOfRange):
            unrank(3, -1)


class TestSampling:
    def test_size_one(self):
        assert [t.rows for t in sample_uniform(1, 5, 99)] == [((1,),)] * 5

    def test_deterministic(self):
        a = sample_uniform(4, 50, 1234)
        b = sample_uniform(4, 50, 1234)
        assert a == b
        assert a != sample_uniform(4, 50, 1235)

    def test_samples_are_valid_and_cover(self, universe):
        seen = {t.rows for t in sample_uniform(3, 400, 7)}
        assert seen == {t.rows for t in universe(3)}

    def test_limit(self):
        with pytest.raises(LimitExceeded):
            sample_uniform(13, 1, 0)


class TestCensus:
    def test_size_three_exact(self):
        assert build_census(3).counts == {0b100: 4, 0b101: 1, 0b110: 1, 0b111: 1}

    @pytest.mark.parametrize("n", range(1, 7))
    def test_partitions_all_triangles(self, n, censuses):
        assert censuses(n).total() == asm_number(n)

    def test_matches_enumeration_masks(self, universe, censuses):
        for n in range(1, 6):
            counts = {}
            for t in universe(n):
                m = t.distinguished_rows().mask
                counts[m] = counts.get(m, 0) + 1
            assert counts == censuses(n).counts

    def test_containment_sums_reproduce_eta(self, censuses):
        for n in range(1, 7):
            table = censuses(n)
            for mask in range(1 << (n - 1)):
                members = tuple(i for i in range(1, n) if mask >> (i - 1) & 1)
                assert table.containment_count(mask) == eta(n, members)

    def test_run_histogram_size_three(self, censuses):
        assert censuses(3).run_histogram().counts == {1: 5, 2: 1, 3: 1}

    def test_workers_match(self, censuses):
        assert build_census(5, workers=2).counts == censuses(5).counts

    def test_limit(self):
        with pytest.raises(LimitExceeded):
            build_census(8)


class TestCensusFile:
    def test_exact_bytes(self, censuses):
        assert censuses(3).to_text() == CENSUS3_TEXT

    def test_parse_roundtrip(self, censuses):
        for n in (1, 4, 6):
            table = censuses(n)
            again = CensusTable.from_text(table.to_text())
            assert again.n == table.n and again.counts == table.counts

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "MTCENSUS v2 n=3 total=7\n4 4\n5 1\n6 1\n7 1\n",
            "MTCENSUS v1 n=3 total=8\n4 4\n5 1\n6 1\n7 1\n",  # wrong total
            "MTCENSUS v1 n=3 total=7\n5 1\n4 4\n6 1\n7 1\n",  # not ascending
            "MTCENSUS v1 n=3 total=7\n1 4\n5 1\n6 1\n7 2\n",  # key misses bottom row
            "MTCENSUS v1 n=3 total=7\n4 x\n",
        ],
    )
    def test_rejects_malformed(self, text):
        with pytest.raises(FormatError):
            CensusTable.from_text(text)

    def test_load_or_build_persists(self, tmp_path):
        table = load_or_build_census(4, cache_dir=tmp_path)
        path = tmp_path / "mtcensus-n4.txt"
        assert path.is_file()
        assert path.read_text() == table.to_text()
        again = load_or_build_census(4, cache_dir=tmp_path)
        assert again.counts == table.counts


class TestCacheDir:
    def test_explicit_wins(self, monkeypatch, tmp_path):
        monkeypatch.setenv("GOG_CACHE_DIR", "/nonexistent-env")
        assert resolve_cache_dir(tmp_path) == tmp_path

    def test_env_fallback(self, monkeypatch, tmp_path):
        monkeypatch.setenv("GOG_CACHE_DIR", os.fspath(tmp_path))
        assert resolve_cache_dir() == tmp_path

    def test_local_default(self, monkeypatch):
        monkeypatch.delenv("GOG_CACHE_DIR", raising=False)
        assert os.fspath(resolve_cache_dir()) == ".cache"


class TestTrianglePrefix:
    def test_validation(self):
        from goglattice import ShapeMismatch, StrictIncreaseViolated

        with pytest.raises(ShapeMismatch):
            TrianglePrefix(3, 2, (1,))
        with pytest.raises(StrictIncreaseViolated):
            TrianglePrefix(3, 2, (2, 2))
        with pytest.raises(ShapeMismatch):
            TrianglePrefix(3, 1, (4,))
