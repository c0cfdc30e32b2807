import math

import pytest

from canonical_spectra.eigensolver import spectrum
from canonical_spectra.errors import DomainError
from canonical_spectra.scan import MAX_STEP, ScanRow, grid, local_minima, parse_range, scan, sigma_min


@pytest.fixture(scope="module")
def alpha3_rows():
    return scan(3, 5, 40, 0.1)


class TestParsing:
    def test_parse(self):
        assert parse_range("5:40:0.1") == (5.0, 40.0, 0.1)
        assert parse_range("2:2:0.3") == (2.0, 2.0, 0.3)

    @pytest.mark.parametrize("text", ["5:40", "a:b:c", "0:3:0.1", "4:3:0.1", "1:3:0", "1:3:-1", "1:30:1.0"])
    def test_rejects(self, text):
        with pytest.raises(DomainError):
            parse_range(text)

    def test_step_cap_is_a_pi_eighth(self):
        assert MAX_STEP == pytest.approx(math.pi / 8)
        parse_range(f"1:30:{math.pi / 8}")

    def test_grid(self):
        assert grid(1, 2, 0.25) == [1, 1.25, 1.5, 1.75, 2]
        assert len(grid(5, 40, 0.1)) == 351


class TestScan:
    def test_degenerate_range_gives_one_row(self):
        rows = scan(3, 5, 5, 0.1)
        assert len(rows) == 1 and rows[0].mu == 5

    def test_rows_are_ordered_and_finite(self, alpha3_rows):
        mus = [r.mu for r in alpha3_rows]
        assert mus == sorted(mus) and len(mus) == 351
        assert all(isinstance(r, ScanRow) and math.isfinite(r.log_abs_det_scaled) and r.smallest_singular_value >= 0 for r in alpha3_rows)

    def test_alpha3_minima_match_roots(self, alpha3_rows):
        minima = local_minima(alpha3_rows, 3)
        roots = [float(r.mu) for r in spectrum(3, 11) if 5 <= r.mu <= 40]
        assert len(minima) == len(roots) == 11
        for m, r in zip(minima, roots):
            assert abs(m - r) < 1e-2

    def test_raw_minima_are_grid_points(self, alpha3_rows):
        raw = local_minima(alpha3_rows, refine=False)
        assert all(any(m == r.mu for r in alpha3_rows) for m in raw)
        assert len(raw) == 11

    def test_refinement_needs_order(self, alpha3_rows):
        with pytest.raises(DomainError):
            local_minima(alpha3_rows)

    def test_alpha2_minima_near_half_odd_multiples(self):
        rows = scan(2, 1, 20, 0.1)
        minima = local_minima(rows, 2)
        assert len(minima) == 5
        for n, m in enumerate(minima, start=1):
            assert abs(m - (math.pi / 2 + n * math.pi)) < 0.02

    def test_dips_are_sharp(self, alpha3_rows):
        first = local_minima(alpha3_rows[:20], 3)[0]
        peak = max(r.smallest_singular_value for r in alpha3_rows[:20])
        assert sigma_min(3, first) < 1e-6 * peak

    def test_extended_precision_agrees(self):
        a = scan(4, 6, 7, 0.25)
        b = scan(4, 6, 7, 0.25, 100)
        for x, y in zip(a, b):
            assert x.smallest_singular_value == pytest.approx(y.smallest_singular_value, rel=1e-10)
            assert x.log_abs_det_scaled == pytest.approx(y.log_abs_det_scaled, rel=1e-10, abs=1e-12)
