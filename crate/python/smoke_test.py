#!/usr/bin/env python3
"""Smoke test for the qgdec_py extension module.

Builds the cdylib if needed, loads it, and exercises the main types and
operations end to end. Exits nonzero on any failure.
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    lib = None
    for profile in ("release", "debug"):
        candidate = REPO / "target" / profile / "libqgdec_py.so"
        if candidate.exists():
            lib = candidate
            break
    if lib is None:
        print("building qgdec-py (release)...")
        subprocess.run(
            ["cargo", "build", "--release", "-p", "qgdec-py"], cwd=REPO, check=True
        )
        lib = REPO / "target" / "release" / "libqgdec_py.so"

    stage = Path(tempfile.mkdtemp(prefix="qgdec_py_"))
    shutil.copy(lib, stage / "qgdec_py.so")
    sys.path.insert(0, str(stage))
    import qgdec_py

    return qgdec_py


def main():
    q = load_module()
    print(f"loaded qgdec_py from {q.__file__}")

    names = q.registry_names()
    assert "five_qubit" in names and "steane" in names, names

    five = q.Code.registry("five_qubit")
    print(repr(five))
    assert (five.n, five.k, five.d, five.css) == (5, 1, 3, False)
    assert five.stabilizers[0] == "XZZXI"

    # Fig.-1 scenario: sigma^z_4 has beta = 1001 and decodes at weight 1
    syn = five.syndromes("IIIZI")
    assert syn["beta"] == "1001", syn
    result = five.decode("1001", mld=True)
    assert result["weight"] == 1, result
    assert five.measure_beta(result["correction"]) == "1001"
    assert not five.is_logical_error("IIIZI", result["correction"])

    oracle = five.oracle_decode("1001", 3)
    assert oracle is not None and sum(c != "I" for c in oracle) == 1, oracle

    kind, w = five.verify_distance(3)
    assert (kind, w) == ("exact", 3), (kind, w)

    num, den, value = five.correctable_fraction()
    assert (num, den, value) == (1, 1, 1.0), (num, den, value)

    steane = q.Code.registry("steane")
    assert steane.css and steane.bipartite
    assert len(steane.left_nodes) == 3 and len(steane.right_nodes) == 4
    graph = steane.graph()
    assert len(graph["nodes"]) == 7 and len(graph["J"]) == 7
    assert steane.search_space(1) == 5  # CSS half-pool
    report = steane.singleton_report()
    assert abs(report["t_over_n"] - 1 / 7) < 1e-12

    # every weight-1 error is corrected at T = t
    paulis = "XYZ"
    for qubit in range(5):
        for p in paulis:
            err = "".join(p if i == qubit else "I" for i in range(5))
            beta = five.measure_beta(err)
            corr = five.decode(beta)["correction"]
            assert not five.is_logical_error(err, corr), err

    # Monte Carlo agrees with exact enumeration and is deterministic
    exact = five.exact_p_l("depolarizing", 0.10)
    run1 = five.simulate("depolarizing", 0.10, failures=100, seed=11, workers=2)
    run2 = five.simulate("depolarizing", 0.10, failures=100, seed=11, workers=2)
    assert run1["shots"] == run2["shots"] and run1["p_l"] == run2["p_l"]
    assert abs(run1["p_l"] - exact) < 3 * run1["stderr"], (run1, exact)
    print(f"five_qubit p=0.10: mc {run1['p_l']:.4f} vs exact {exact:.4f}")

    # collapse fit recovers planted parameters
    points = []
    for d in (3, 5, 7):
        scale = d ** (1 / 1.5)
        p = 0.07
        while p <= 0.1301:
            x = (p - 0.100) * scale
            f = 0.1 + 0.8 * x + 2 * x * x
            points.append((p, d, f, 0.01 * f))
            p += 0.005
    fit = q.collapse_fit(points, window=(0.07, 0.13))
    assert abs(fit["p_c"] - 0.100) <= 0.005, fit
    assert abs(fit["nu"] - 1.50) <= 0.05, fit
    print(f"collapse: p_c = {fit['p_c']:.4f}, nu = {fit['nu']:.3f}")

    # custom code round trip through the file format
    clone = q.Code.from_text(five.to_text(), name="clone")
    assert clone.n == 5 and clone.stabilizers == five.stabilizers

    print("smoke test OK")


if __name__ == "__main__":
    main()
