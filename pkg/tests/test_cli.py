"""Command-line surface: golden outputs, JSON schema, exit codes."""

import json
import os
import subprocess
import sys

import pytest

from flowloop.cli import main

GOLDEN_ZHAT = """\
braid: n=2; 1 1 1
writhe: 3
prefactor: -1 * q^(2/2) * x^(1/2)
phi: 1 - q*x^2 - q^2*x^3 + q^5*x^5 + q^7*x^6 + O(x^7)
zhat: -q*x^(1/2) + q^2*x^(5/2) + q^3*x^(7/2) - q^6*x^(11/2) - q^8*x^(13/2) + O(x^(15/2))
note: prefactor sign pinned by the reference-model oracle
"""

GOLDEN_ALEXANDER = """\
braid: n=3; 1 -2 1 -2
writhe: 0
Delta: 1 - 3*x + x^2
inverse: 1 + 2*x + 5*x^2 + 13*x^3 + O(x^4)
"""

GOLDEN_TRACE = """\
braid: n=2; 1 1 1
writhe: 3
m=0: 1
m=1: -q^3*x^3
m=2: q^9*x^6
"""

GOLDEN_ORBITS = """\
braid: n=3; 1 1 1 2
writhe: 4
strips: 8
branch-lines: 4
nullity: 5
orbits:
1 - T4
1 + S3_4 S4_3
2 - S3_4 T4 S4_3
2 - T2 S3_4 S4_2
zeta: 1 - x^2 + O(x^3)
"""


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_zhat_golden(capsys):
    code, out = run_cli(capsys, "zhat", "--braid", "1 1 1", "--order", "6")
    assert code == 0
    assert out == GOLDEN_ZHAT


def test_phi_golden(capsys):
    code, out = run_cli(capsys, "phi", "--braid", "1 -2 1 -2", "--order", "2")
    assert code == 0
    assert out.endswith("phi: 1 + 2*x + (q^-1 + 3 + q)*x^2 + O(x^3)\n")


def test_alexander_golden(capsys):
    code, out = run_cli(
        capsys, "alexander", "--braid", "1 -2 1 -2", "--order", "3"
    )
    assert code == 0
    assert out == GOLDEN_ALEXANDER


def test_trace_golden(capsys):
    code, out = run_cli(capsys, "trace", "--braid", "1 1 1", "--mmax", "2")
    assert code == 0
    assert out == GOLDEN_TRACE


def test_trace_dump_shows_matrix_entries(capsys):
    code, out = run_cli(
        capsys, "trace", "--braid", "1 1 1", "--mmax", "1", "--dump"
    )
    assert code == 0
    assert "(1) -> (1) : -q^3*x^3" in out


def test_orbits_golden(capsys):
    code, out = run_cli(
        capsys, "orbits", "--braid", "1 1 1 2", "--max-degree", "2"
    )
    assert code == 0
    assert out == GOLDEN_ORBITS


def test_orbits_dump_chart(capsys):
    code, out = run_cli(
        capsys, "orbits", "--braid", "1", "--max-degree", "1", "--dump"
    )
    assert code == 0
    assert "strip T1 [twist] [mark 1] : T1" in out


def test_zhat_json_schema(capsys):
    code, out = run_cli(
        capsys, "zhat", "--braid", "1 1 1", "--order", "3",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["braid"] == "n=2; 1 1 1"
    assert doc["prefactor"] == {"sign": -1, "q_exp_half": 2, "x_exp_half": 1}
    assert doc["phi"][0] == {
        "x_exp_half": 0,
        "coeff": [{"q_exp_half": 0, "value": "1"}],
    }
    # zhat series is the prefactor-shifted phi: first term at x^{1/2}
    assert doc["zhat"][0]["x_exp_half"] == 1
    for row in doc["phi"] + doc["zhat"]:
        assert set(row) == {"x_exp_half", "coeff"}
        for cell in row["coeff"]:
            assert set(cell) == {"q_exp_half", "value"}
            int(cell["value"])  # coefficients serialize as integer strings


def test_verify_single_suite(capsys):
    code, out = run_cli(capsys, "verify", "--suite", "ring")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "passed 5/5 checks"
    assert all(line.startswith("ok   ring.") for line in lines[:-1])


def test_phi_debug_mirror_differs(capsys):
    code, good = run_cli(capsys, "phi", "--braid", "1 -2 1 -2", "--order", "2")
    assert code == 0
    code, bad = run_cli(
        capsys, "phi", "--braid", "1 -2 1 -2", "--order", "2",
        "--debug-mirror",
    )
    assert code == 0
    assert "1 + (q^-1 + q)*x^2" in bad
    assert good != bad


def test_convention_flag_does_not_change_traces(capsys):
    _, half = run_cli(capsys, "trace", "--braid", "1 1 1", "--mmax", "3")
    code, under = run_cli(
        capsys, "trace", "--braid", "1 1 1", "--mmax", "3",
        "--convention", "under",
    )
    assert code == 0
    assert half.splitlines()[2:] == under.splitlines()[2:]


@pytest.mark.parametrize(
    "argv",
    [
        ["zhat", "--braid", "1 x", "--order", "2"],      # malformed token
        ["zhat", "--braid", "1 -1", "--order", "2"],     # inhomogeneous
        ["zhat", "--braid", "1 1", "--order", "2"],      # link closure
        ["verify", "--suite", "nonsense"],
        ["zhat", "--order", "2"],                        # missing --braid
        ["phi", "--braid", "1", "--order", "not-a-number"],
    ],
)
def test_input_errors_exit_1(capsys, argv):
    assert main(argv) == 1


def test_cap_flag_matches_default(capsys):
    _, a = run_cli(capsys, "phi", "--braid", "1 -2 1 -2", "--order", "3")
    _, b = run_cli(
        capsys, "phi", "--braid", "1 -2 1 -2", "--order", "3", "--cap", "6"
    )
    assert a.splitlines()[-1] == b.splitlines()[-1]


# ---------------------------------------------------------------------------
# real process: entry point, env knobs, determinism


def run_proc(args, env_extra=None):
    env = dict(os.environ)
    env.update(env_extra or {})
    return subprocess.run(
        [sys.executable, "-m", "flowloop.cli", *args],
        capture_output=True,
        text=True,
        env=env,
        timeout=120,
    )


def test_threading_is_deterministic():
    args = ["zhat", "--braid", "1 -2 1 -2", "--order", "4"]
    single = run_proc(args, {"FLOWLOOP_THREADS": "1"})
    multi = run_proc(args, {"FLOWLOOP_THREADS": "4"})
    assert single.returncode == multi.returncode == 0
    assert single.stdout == multi.stdout


def test_kernel_override_env():
    out = run_proc(
        ["verify", "--suite", "ring"], {"FLOWLOOP_KERNEL": "py"}
    )
    assert out.returncode == 0
    assert "passed 5/5 checks" in out.stdout


def test_bad_kernel_env_fails_loudly():
    out = run_proc(["verify", "--suite", "ring"], {"FLOWLOOP_KERNEL": "zz"})
    assert out.returncode != 0
