"""Smoke test for the chainreach Python extension.

Uses an installed `chainreach` module if there is one, otherwise the shared
library from `cargo build -p chainreach-python --release`.
"""

import importlib
import importlib.util
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    try:
        return importlib.import_module("chainreach")
    except ImportError:
        pass
    built = ROOT / "target" / "release" / "libchainreach_py.so"
    if not built.exists():
        sys.exit(f"{built} not found; run `cargo build -p chainreach-python --release`")
    tmp = Path(tempfile.mkdtemp())
    shutil.copy(built, tmp / "chainreach.so")
    spec = importlib.util.spec_from_file_location("chainreach", tmp / "chainreach.so")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    cr = load_module()

    dag = cr.Dag(8, [(1, 2), (2, 3), (0, 7), (4, 5), (5, 6), (1, 7), (2, 5), (0, 4)])
    chains = cr.ChainDecomposition(dag, [[1, 2, 3], [0, 7], [4, 5, 6]])
    ix = cr.ReachIndex(dag, chains)
    assert ix.row(1) == [1, 2, 2], ix.row(1)
    assert ix.reaches(1, 7) and not ix.reaches(1, 0)

    path = cr.Dag(3, [(0, 1), (1, 2)])
    assert cr.fulkerson_width(path).width == 1

    try:
        cr.Dag(3, [(0, 1), (1, 2), (2, 0)])
    except ValueError:
        pass
    else:
        raise AssertionError("cycle accepted")

    g = cr.Dag.generate("er", 300, degree=4.0, seed=7)
    chains, stats = cr.nh_conc(g)
    assert stats["c"] == stats["k_p"] - stats["k_c"] == stats["k_p"] - len(chains)
    ix = cr.ReachIndex(g, chains)
    e_tr, e_red = ix.edge_classification()
    assert e_tr + e_red == g.edge_count
    reduced, rstats = cr.reduce(g, chains)
    assert rstats["remaining"] == reduced.edge_count

    try:
        import networkx as nx
    except ImportError:
        nx = None
    if nx is not None:
        ref = nx.DiGraph(g.edges())
        ref.add_nodes_from(range(g.n))
        for s in range(0, g.n, 7):
            expected = nx.descendants(ref, s) | {s}
            assert set(g.reachable(s)) == expected
            assert all(ix.reaches(s, t) == (t in expected) for t in range(g.n))
            assert set(reduced.reachable(s)) == expected

    w = cr.fulkerson_width(g)
    assert w.width <= len(chains) and len(w.chains) == w.width

    with tempfile.TemporaryDirectory() as tmp:
        g.save(f"{tmp}/g.el")
        assert cr.Dag.load(f"{tmp}/g.el").edges() == g.edges()
        ix.save(f"{tmp}/g.idx")
        back = cr.ReachIndex.load(f"{tmp}/g.idx")
        assert all(back.row(v) == ix.row(v) for v in range(g.n))

    print(f"ok: {g!r}, k_c={len(chains)}, width={w.width}, e_tr={e_tr}, e_red={e_red}")


if __name__ == "__main__":
    main()
