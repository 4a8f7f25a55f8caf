"""CLI contract tests: exit codes, determinism, and the worked examples."""

import subprocess
import sys

CLI = sys.argv[1]
DATA = sys.argv[2]


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_tables_deterministic():
    a = run("tables", "--degree", "5")
    b = run("tables", "--degree", "5")
    assert a.returncode == 0
    assert a.stdout == b.stdout and a.stdout
    for q, n, d in [(3, 10, 3), (4, 17, 8), (5, 26, 16), (7, 50, 37), (8, 65, 51), (9, 82, 66)]:
        assert f"{q}    5_7   {n}" in a.stdout, (q, n, d, a.stdout)


def test_degree6_guard():
    r = run("build", "--degree", "6", "--q", "3")
    assert r.returncode == 3
    assert "q >= 4" in r.stderr


def test_worked_example_mindist():
    r = run(
        "mindist", "--degree", "4", "--q", "5", "--type", "4_3",
        "--f2", "2,4,1", "--f3", "3,3,0,1", "--delta", "x",
        "--data-dir", DATA,
    )
    assert r.returncode == 0, r.stderr
    assert "d=21" in r.stdout
    assert "attains" in r.stdout


def test_worked_example_matrix():
    r = run(
        "code", "--degree", "4", "--q", "5", "--type", "4_3",
        "--f2", "2,4,1", "--f3", "3,3,0,1", "--delta", "x",
    )
    assert r.returncode == 0
    lines = [ln for ln in r.stdout.splitlines() if ln]
    assert len(lines) == 5
    assert all(len(ln) == 31 for ln in lines)


def test_pencil_fixture():
    r = run("pencil", f"{DATA}/f8_quadrics.txt")
    assert r.returncode == 0, r.stderr
    assert "3[-1]2[-1]" in r.stdout
    assert "[73,5,59]" in r.stdout


def test_dp5_beats():
    r = run("mindist", "--degree", "5", "--q", "8", "--data-dir", DATA)
    assert r.returncode == 0, r.stderr
    assert "d=51" in r.stdout
    assert "beats" in r.stdout


def test_dp6_attains():
    r = run("mindist", "--degree", "6", "--q", "5", "--data-dir", DATA)
    assert r.returncode == 0, r.stderr
    assert "d=11" in r.stdout
    assert "attains" in r.stdout


def test_auto5_roundtrip(tmp="/tmp/dpc_cli_auto5.json"):
    r = run("auto5", "--q", "3", "--out", tmp)
    assert r.returncode == 0, r.stderr
    assert "order 5, automorphism: yes" in r.stdout
    r2 = run("auto5", "--q", "3", "--replay", tmp)
    assert r2.returncode == 0
    assert "automorphism: yes" in r2.stdout


def main():
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok {name}")


if __name__ == "__main__":
    main()
