import json

import pytest

from nvee import cli


@pytest.fixture
def vee2_file(tmp_path):
    path = tmp_path / "vee2.yml"
    path.write_text("branches: [2]\nweight: [1, 1]\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def bar_file(tmp_path):
    path = tmp_path / "bar.yml"
    path.write_text("- [m, x1]\n", encoding="utf-8")
    return str(path)


class TestCommands:
    """
    Command-line surface
    Target: src/nvee/cli.py
    """

    def test_tc_cli_001_validate_nvee(self, vee2_file, capsys):
        """TC-CLI-001: n-Vee なら終了コード 0 で枝長を表示する"""
        code = cli.main(["validate", vee2_file])

        assert code == cli.EXIT_OK
        assert "n-Vee with branch lengths [2], weight (1, 1)" in capsys.readouterr().out

    def test_tc_cli_002_validate_diamond(self, tmp_path, capsys):
        """TC-CLI-002: n-Vee でなければ終了コード 1 と破れた条件"""
        path = tmp_path / "diamond.yml"
        path.write_text("elements: 4\ncovers: [[0, 1], [0, 2], [1, 3], [2, 3]]\n", encoding="utf-8")

        code = cli.main(["validate", str(path)])

        assert code == cli.EXIT_FAILURE
        assert "not an n-Vee: totally_ordered" in capsys.readouterr().out

    def test_tc_cli_003_sigma(self, vee2_file, capsys):
        """TC-CLI-003: 3 点の鎖の凸台は 6 個"""
        code = cli.main(["sigma", vee2_file])

        out = capsys.readouterr().out
        assert code == cli.EXIT_OK
        assert out.splitlines()[0] == "m"
        assert "# 6 convex supports" in out

    def test_tc_cli_004_width_json(self, vee2_file, capsys):
        """TC-CLI-004: --json はサブコマンドの前に置く"""
        code = cli.main(["--json", "width", vee2_file, "m"])

        assert code == cli.EXIT_OK
        assert json.loads(capsys.readouterr().out) == {"support": ["m"], "width": 1}

    def test_tc_cli_005_dist_identical(self, vee2_file, bar_file, capsys):
        """TC-CLI-005: 同じバーコードの距離は体ごとに 0"""
        code = cli.main(["dist", vee2_file, bar_file, bar_file, "--fields", "2,3"])

        out = capsys.readouterr().out
        assert code == cli.EXIT_OK
        assert "D over F_2 = 0 [scalar witness]" in out
        assert "D over F_3 = 0" in out

    def test_tc_cli_006_bottleneck(self, vee2_file, bar_file, capsys):
        """TC-CLI-006: ボトルネック距離とマッチングをラベルで表示する"""
        code = cli.main(["bottleneck", vee2_file, bar_file, bar_file])

        out = capsys.readouterr().out
        assert code == cli.EXIT_OK
        assert "D_B = 0" in out
        assert "matching: m,x1 -> m,x1" in out

    def test_tc_cli_007_variety_count(self, tmp_path, capsys):
        """
        TC-CLI-007: Variety Point Count
        X と Y⊕Z の方程式系は F_2 上に 2 点を持つ
        """
        poset = tmp_path / "ex4.yml"
        poset.write_text("branches: [3, 6]\nweight: [1, 2]\n", encoding="utf-8")
        left = tmp_path / "x.yml"
        left.write_text("- y3,y4,y5\n", encoding="utf-8")
        right = tmp_path / "yz.yml"
        right.write_text("- y3,y4,y5\n- y4,y5\n", encoding="utf-8")
        export = tmp_path / "system.json"

        code = cli.main([
            "variety", str(poset), str(left), str(right),
            "--eps", "1", "--count", "--field", "2", "--export", str(export),
        ])

        assert code == cli.EXIT_OK
        assert "# points over F_2: 2" in capsys.readouterr().out
        assert json.loads(export.read_text(encoding="utf-8"))["target_size"] == 2

    def test_tc_cli_008_reproduce_skipped(self, capsys):
        """TC-CLI-008: 台が復元できない例題は skipped で 0"""
        code = cli.main(["reproduce", "ex3"])

        assert code == cli.EXIT_OK
        assert "ex3: skipped" in capsys.readouterr().out

    def test_tc_cli_009_lemmas_single_suite(self, vee2_file, capsys):
        """TC-CLI-009: --suite で一つのスイートだけを実行する"""
        code = cli.main(["lemmas", vee2_file, "--suite", "action"])

        lines = capsys.readouterr().out.splitlines()
        assert code == cli.EXIT_OK
        assert len(lines) == 1
        assert lines[0].startswith("action: pass")


class TestErrors:
    """
    Exit codes for bad input
    Target: src/nvee/cli.py
    """

    def test_tc_cli_010_unknown_command(self, capsys):
        """TC-CLI-010: 不明なサブコマンドは 2"""
        assert cli.main(["frobnicate"]) == cli.EXIT_USAGE

    def test_tc_cli_011_help(self, capsys):
        """TC-CLI-011: --help は 0"""
        assert cli.main(["--help"]) == cli.EXIT_OK
        assert "reproduce" in capsys.readouterr().out

    def test_tc_cli_012_missing_file(self, tmp_path, capsys):
        """TC-CLI-012: 読めないファイルは 2"""
        code = cli.main(["validate", str(tmp_path / "missing.yml")])

        assert code == cli.EXIT_USAGE
        assert "Cannot read" in capsys.readouterr().err

    def test_tc_cli_013_broken_yaml(self, tmp_path, capsys):
        """TC-CLI-013: YAML として壊れている入力は 2"""
        path = tmp_path / "broken.yml"
        path.write_text("branches: [2\n", encoding="utf-8")

        assert cli.main(["validate", str(path)]) == cli.EXIT_USAGE

    def test_tc_cli_014_non_convex_bar(self, vee2_file, tmp_path, capsys):
        """TC-CLI-014: 凸でないバーは入力の誤りとして 2"""
        bad = tmp_path / "bad.yml"
        bad.write_text("- [m, x2]\n", encoding="utf-8")

        code = cli.main(["bottleneck", vee2_file, str(bad), str(bad)])

        assert code == cli.EXIT_USAGE
        assert "not a connected convex subset" in capsys.readouterr().err

    def test_tc_cli_015_bad_field_list(self, vee2_file, bar_file, capsys):
        """TC-CLI-015: 整数でない --fields は 2"""
        assert cli.main(["dist", vee2_file, bar_file, bar_file, "--fields", "two"]) == cli.EXIT_USAGE
