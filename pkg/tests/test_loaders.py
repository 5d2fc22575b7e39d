import pytest

from src.errors import ValidationError
from src.models.data import ActorClass
from src.pipeline.loaders import load_effort_dataset, load_projects, read_project_table

HEADER = ("name,actors_simple,actors_average,actors_complex,transactions,"
          + ",".join(f"T{i}" for i in range(1, 14)) + "," + ",".join(f"F{i}" for i in range(1, 9)))


def _project_row(name, simple=1, average=0, complex_=0, transactions="2", technical=None, environmental=None):
    technical = technical or [0] * 13
    environmental = environmental or [0] * 8
    return ",".join([name, str(simple), str(average), str(complex_), transactions]
                    + [str(v) for v in technical] + [str(v) for v in environmental])


@pytest.fixture
def projects_csv(tmp_path):
    path = tmp_path / "projects.csv"
    path.write_text("\n".join([
        HEADER,
        _project_row("billing", simple=2, complex_=1, transactions="3 5 9"),
        _project_row("portal", average=3, transactions="1;8", technical=[5] * 13),
    ]) + "\n", encoding='utf-8')
    return path


class TestLoadProjects:

    def test_descriptors_in_order(self, projects_csv):
        projects = load_projects(projects_csv)
        assert [p.name for p in projects] == ['billing', 'portal']
        assert projects[0].actors == (ActorClass.SIMPLE, ActorClass.SIMPLE, ActorClass.COMPLEX)
        assert projects[0].use_cases == (3, 5, 9)
        assert projects[1].use_cases == (1, 8)
        assert projects[1].technical.ratings == (5,) * 13

    def test_without_effort_column(self, projects_csv):
        _, efforts = read_project_table(projects_csv)
        assert efforts is None

    def test_effort_column(self, tmp_path):
        path = tmp_path / "with_effort.csv"
        path.write_text(HEADER + ",effort\n" + _project_row("a") + ",120.5\n", encoding='utf-8')
        projects, efforts = read_project_table(path)
        assert len(projects) == 1
        assert efforts == [120.5]

    def test_out_of_range_rating_names_column_and_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        technical = [0, 0, 6] + [0] * 10
        path.write_text(HEADER + "\n" + _project_row("ok") + "\n" + _project_row("bad", technical=technical) + "\n",
                        encoding='utf-8')
        with pytest.raises(ValidationError, match=r"line 3: T3"):
            load_projects(path)

    def test_non_integer_count(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text(HEADER + "\n" + _project_row("x", simple="two") + "\n", encoding='utf-8')
        with pytest.raises(ValidationError, match="actors_simple"):
            load_projects(path)

    def test_missing_columns(self, tmp_path):
        path = tmp_path / "short.csv"
        path.write_text("name,actors_simple\nx,1\n", encoding='utf-8')
        with pytest.raises(ValidationError, match="missing column"):
            load_projects(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("", encoding='utf-8')
        with pytest.raises(ValidationError, match="empty"):
            load_projects(path)


class TestLoadEffortDataset:

    def test_records_in_file_order(self, synthetic_csv):
        data = load_effort_dataset(synthetic_csv)
        assert len(data) == 84
        assert not data.is_scaled

    def test_values_are_exact(self, tmp_path):
        path = tmp_path / "effort.csv"
        path.write_text("ucp,effort\n120.25,400.5\n80,310\n", encoding='utf-8')
        data = load_effort_dataset(path)
        assert [r.feature for r in data.records] == [(120.25,), (80.0,)]
        assert list(data.targets) == [400.5, 310.0]

    def test_duplicate_sizes_allowed(self, tmp_path):
        path = tmp_path / "effort.csv"
        path.write_text("ucp,effort\n100,300\n100,350\n", encoding='utf-8')
        assert len(load_effort_dataset(path)) == 2

    def test_zero_effort_cites_the_line(self, tmp_path):
        path = tmp_path / "effort.csv"
        path.write_text("ucp,effort\n100,300\n120,0\n", encoding='utf-8')
        with pytest.raises(ValidationError, match="line 3"):
            load_effort_dataset(path)

    def test_non_numeric_value(self, tmp_path):
        path = tmp_path / "effort.csv"
        path.write_text("ucp,effort\nbig,300\n", encoding='utf-8')
        with pytest.raises(ValidationError, match="ucp"):
            load_effort_dataset(path)

    def test_header_only(self, tmp_path):
        path = tmp_path / "effort.csv"
        path.write_text("ucp,effort\n", encoding='utf-8')
        with pytest.raises(ValidationError, match="no records"):
            load_effort_dataset(path)
