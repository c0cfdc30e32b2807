import math
import pathlib
import xml.etree.ElementTree as ET

import matplotlib
import pytest

from canonical_spectra.eigensolver import spectrum
from canonical_spectra.plotting import Series, render_svg, scan_series, spectrum_series
from canonical_spectra.scan import ScanRow

DATA = pathlib.Path(__file__).parent / "data"
GOLDEN = DATA / "golden_series.svg"
GOLDEN_VERSION = DATA / "golden_series.matplotlib"

FIXED = Series(
    x=[i / 4 for i in range(40)],
    y=[abs(math.sin(i / 4 * math.pi)) + 1e-3 for i in range(40)],
    xlabel="mu / pi",
    ylabel="smallest singular value",
    title="alpha = 3",
    yscale="log",
)


def test_deterministic():
    assert render_svg(FIXED) == render_svg(FIXED)


def test_no_timestamp_and_valid_xml():
    svg = render_svg(FIXED)
    assert "dc:date" not in svg and "Date" not in svg
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    assert "alpha = 3" in svg


def test_depends_only_on_data():
    changed = Series(FIXED.x, [v * 2 for v in FIXED.y], FIXED.xlabel, FIXED.ylabel, FIXED.title, FIXED.yscale)
    assert render_svg(changed) != render_svg(FIXED)


def test_golden_file():
    if not GOLDEN.exists():
        pytest.skip("golden file not generated")
    if GOLDEN_VERSION.read_text().strip() != matplotlib.__version__:
        pytest.skip("golden file was rendered by a different matplotlib")
    assert render_svg(FIXED) == GOLDEN.read_text()


def test_scan_series_units():
    rows = [ScanRow(math.pi, 0.0, 0.0), ScanRow(2 * math.pi, 1.0, 0.5)]
    s = scan_series(3, rows)
    assert s.x == pytest.approx([1.0, 2.0])
    assert s.y[0] > 0 and s.yscale == "log"
    render_svg(s)


def test_spectrum_series_renders_zero_offsets():
    recs = spectrum(3, 4)
    s = spectrum_series(3, recs)
    assert s.x == [2, 3, 4, 5] and s.y[0] == 0.0 and s.yscale == "symlog"
    assert "<svg" in render_svg(s)
