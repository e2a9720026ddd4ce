import json
import xml.etree.ElementTree as ET

import pytest

from dagsched import taskgraph
from dagsched.cli import main
from dagsched.schedule import load as load_schedule


def write_graph(path, g):
    taskgraph.save(g, path)
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGenerate:
    def test_writes_valid_graph(self, tmp_path, capsys):
        out = tmp_path / "g.json"
        assert run(["generate", "--tasks", "8", "--seed", "1", "-o", str(out)], capsys)[0] == 0
        g = taskgraph.load(out)
        assert g.n == 8

    def test_zero_tasks_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--tasks", "0"])
        assert exc.value.code == 2
        assert "usage" in capsys.readouterr().err

    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--tasks", "3", "--bogus"])
        assert exc.value.code == 2

    def test_ranges(self, tmp_path, capsys):
        out = tmp_path / "g.json"
        run(["generate", "--tasks", "30", "--min-w", "5", "--max-w", "6", "--min-succ", "1", "--max-succ", "1",
             "-o", str(out)], capsys)
        g = taskgraph.load(out)
        assert set(g.weights) <= {5, 6} and len(g.edges) == 29

    def test_inverted_range_is_data_error(self, capsys):
        code, _, err = run(["generate", "--tasks", "5", "--min-w", "9", "--max-w", "3"], capsys)
        assert code == 1 and "min_w" in err


class TestSchedule:
    def test_chain_lsh(self, tmp_path, chain, capsys):
        g = write_graph(tmp_path / "c.json", chain)
        code, out, _ = run(["schedule", g, "--alg", "lsh", "--procs", "2"], capsys)
        assert code == 0
        assert out.splitlines() == ["algorithm,n,p,finish_time,t_cp", "lsh,3,2,9,9"]

    def test_diamond_bruteforce(self, tmp_path, diamond, capsys):
        g = write_graph(tmp_path / "d.json", diamond)
        sched = tmp_path / "s.json"
        code, out, _ = run(["schedule", g, "--alg", "bruteforce", "--procs", "2", "-o", str(sched)], capsys)
        assert code == 0 and out.splitlines()[1] == "bruteforce,4,2,8,8"
        assert load_schedule(sched).makespan == 8

    def test_bruteforce_too_large(self, tmp_path, capsys):
        g = write_graph(tmp_path / "big.json", taskgraph.generate_random(taskgraph.GeneratorParams(n=20, seed=3)))
        code, _, err = run(["schedule", g, "--alg", "bruteforce", "--procs", "2"], capsys)
        assert code == 3 and "capped" in err

    def test_bad_graph_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"tasks": [{"id": 0, "weight": 1}, {"id": 1, "weight": 1}], "edges": [[0, 1], [1, 0]]}))
        code, _, err = run(["schedule", str(bad), "--alg", "ga", "--procs", "2"], capsys)
        assert code == 1 and "cycle" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, _ = run(["schedule", str(tmp_path / "nope.json"), "--alg", "lsh", "--procs", "2"], capsys)
        assert code == 1

    def test_bad_alg(self, tmp_path, chain):
        with pytest.raises(SystemExit) as exc:
            main(["schedule", "x.json", "--alg", "sa", "--procs", "2"])
        assert exc.value.code == 2


class TestGantt:
    def _diamond_schedule(self, tmp_path, diamond, capsys):
        g = write_graph(tmp_path / "d.json", diamond)
        s = tmp_path / "s.json"
        s.write_text(json.dumps({"p": 2, "placements": [
            {"task": 0, "processor": 0, "start": 0, "finish": 2},
            {"task": 2, "processor": 0, "start": 2, "finish": 7},
            {"task": 3, "processor": 0, "start": 7, "finish": 8},
            {"task": 1, "processor": 1, "start": 2, "finish": 5}]}))
        return g, str(s)

    def test_ascii_diamond(self, tmp_path, diamond, capsys):
        g, s = self._diamond_schedule(tmp_path, diamond, capsys)
        code, out, _ = run(["gantt", g, s], capsys)
        assert code == 0
        lines = out.splitlines()
        assert "P0: 0[0,2) 2[2,7) 3[7,8)" in lines
        assert "P1: 1[2,5)" in lines
        assert lines[-1] == "makespan = 8"
        p1 = lines[1][lines[1].index("|") + 1: lines[1].rindex("|")]
        unit = len(p1) // 8
        assert set(p1[: 2 * unit]) == {"."} and set(p1[5 * unit:]) == {"."}
        assert p1[2 * unit] == "["

    def test_empty_schedule(self, tmp_path, capsys):
        g = write_graph(tmp_path / "e.json", taskgraph.TaskGraph([]))
        s = tmp_path / "s.json"
        s.write_text(json.dumps({"p": 2, "placements": []}))
        code, out, _ = run(["gantt", g, str(s)], capsys)
        assert code == 0 and out.splitlines()[-1] == "makespan = 0"
        assert out.count("|") == 4

    def test_svg_is_xml_and_stable(self, tmp_path, diamond, capsys):
        g, s = self._diamond_schedule(tmp_path, diamond, capsys)
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        assert run(["gantt", g, s, "-o", str(a)], capsys)[0] == 0
        run(["gantt", g, s, "-o", str(b)], capsys)
        ET.parse(a)
        assert a.read_bytes() == b.read_bytes()

    def test_mismatch(self, tmp_path, diamond, chain, capsys):
        _, s = self._diamond_schedule(tmp_path, diamond, capsys)
        other = write_graph(tmp_path / "c.json", chain)
        code, _, err = run(["gantt", other, s], capsys)
        assert code == 1


class TestBenchReport:
    def test_one_cell(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        code, _, _ = run(["bench", "--task-counts", "8", "--proc-counts", "2", "--seeds-per-cell", "1",
                          "--gens", "30", "-o", str(out)], capsys)
        assert code == 0
        assert len(out.read_text().splitlines()) == 3

    def test_report_outputs(self, tmp_path, capsys):
        csv_path = tmp_path / "r.csv"
        run(["bench", "--task-counts", "8,12", "--proc-counts", "2,3", "--seeds-per-cell", "2", "--gens", "20",
             "-o", str(csv_path)], capsys)
        rep = tmp_path / "rep"
        code, out, _ = run(["report", str(csv_path), "-o", str(rep)], capsys)
        assert code == 0
        assert "No. of tasks | GA finish time | LSH finish time" in out
        assert "Height | Best minimum time GA | LSH minimum time" in out
        for name in ("summary.txt", "summary.csv", "heights.csv", "trend.svg"):
            assert (rep / name).exists()
        ET.parse(rep / "trend.svg")

    def test_report_empty(self, tmp_path, capsys):
        empty = tmp_path / "e.csv"
        empty.write_text("")
        code, _, err = run(["report", str(empty)], capsys)
        assert code == 1 and "no rows" in err

    def test_report_malformed(self, tmp_path, capsys):
        bad = tmp_path / "b.csv"
        bad.write_text("x,y\n1,2\n")
        assert run(["report", str(bad)], capsys)[0] == 1

    def test_bad_list_flag(self):
        with pytest.raises(SystemExit) as exc:
            main(["bench", "--task-counts", "8,zero"])
        assert exc.value.code == 2


@pytest.mark.parametrize("seed", range(6))
def test_generate_schedule_gantt_round_trip(tmp_path, capsys, seed):
    g, s = tmp_path / "g.json", tmp_path / "s.json"
    assert main(["generate", "--tasks", str(5 + 7 * seed), "--seed", str(seed), "-o", str(g)]) == 0
    for alg in ("lsh", "ga"):
        assert main(["schedule", str(g), "--alg", alg, "--procs", str(1 + seed % 4), "--gens", "20",
                     "--seed", str(seed), "-o", str(s)]) == 0
        assert main(["gantt", str(g), str(s)]) == 0
        assert main(["gantt", str(g), str(s), "-o", str(tmp_path / "x.svg")]) == 0
    capsys.readouterr()
