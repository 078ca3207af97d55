import pytest

from modalsim.calibration import default_calibration
from modalsim.report import read_series_csv, render_report
from modalsim.scenario import Scenario, export_csv, run_single


@pytest.fixture(scope="module")
def series_csv(tmp_path_factory):
    calib = default_calibration()
    snaps, _ = run_single(Scenario(n_agents=40, ticks=8, seeds=[2]), calib, 2)
    path = tmp_path_factory.mktemp("series") / "seed_2.csv"
    path.write_text(export_csv(snaps))
    return path


class TestReadSeries:
    def test_columns_and_types(self, series_csv):
        cols = read_series_csv(series_csv)
        assert cols["tick"] == list(range(8))
        assert all(isinstance(v, float) for v in cols["share_car"])
        assert all(isinstance(v, int) for v in cols["n_by_habit"])

    def test_empty_cells_become_none(self, tmp_path):
        path = tmp_path / "s.csv"
        path.write_text(
            "tick,share_car,share_bike,share_bus,share_walk,"
            "sat_car,sat_bike,sat_bus,sat_walk,"
            "n_by_habit,n_habit_contrary,n_biased,n_constrained\n"
            "0,1,0,0,0,55.5,,,,1,0,0,0\n"
        )
        cols = read_series_csv(path)
        assert cols["sat_bike"] == [None]
        assert cols["sat_car"] == [55.5]

    def test_foreign_file_rejected(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(ValueError, match="not a modalsim series file"):
            read_series_csv(path)


class TestRenderReport:
    def test_writes_three_figures(self, series_csv, tmp_path):
        written = render_report(series_csv, tmp_path / "figs")
        names = [p.name for p in written]
        assert names == ["modal_shares.png", "satisfaction.png", "decisions.png"]
        for p in written:
            assert p.exists() and p.stat().st_size > 1000
            assert p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_output_directory_created(self, series_csv, tmp_path):
        out = tmp_path / "deep" / "nested"
        render_report(series_csv, out)
        assert (out / "modal_shares.png").exists()

    def test_handles_missing_satisfaction(self, tmp_path):
        path = tmp_path / "s.csv"
        path.write_text(
            "tick,share_car,share_bike,share_bus,share_walk,"
            "sat_car,sat_bike,sat_bus,sat_walk,"
            "n_by_habit,n_habit_contrary,n_biased,n_constrained\n"
            "0,1,0,0,0,55.5,,,,1,0,0,0\n"
            "1,1,0,0,0,56.0,,,,2,0,0,0\n"
        )
        written = render_report(path, tmp_path / "figs")
        assert all(p.exists() for p in written)
