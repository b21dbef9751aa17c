"""Smoke test for the pygnpgames extension.

Build first, e.g. `maturin develop` in crates/py, or copy
target/release/libpygnpgames.so to pygnpgames.so on PYTHONPATH.
"""

import pygnpgames as pg

g = pg.Graph.gnp(30, 0.3, seed=1)
assert g.n == 30
assert pg.Graph.from_text(g.to_text()).edges() == g.edges()
assert pg.Graph.complete(6).is_hamiltonian()
assert not pg.Graph(4, [(0, 1), (2, 3)]).is_connected()
assert pg.Graph.complete(5).expander_violation(1, 4.0) is None
assert pg.Graph.complete(5).expander_violation(2, 2.0) is not None
assert pg.Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).boosters() == [(0, 4)]

cfg = {"n": "12", "p": "0.6", "seeds": "8", "target": "connectivity"}
recs = pg.run_trials(cfg)
assert [r["seed"] for r in recs] == list(range(8))
assert recs == pg.run_trials(dict(cfg, threads="1"))
one = pg.play(cfg, seed=3)
assert one == recs[3]

records, est = pg.bias_scan(dict(cfg, b_range="1..4"))
assert len(records) == 32
assert est["label"] == "empirical critical bias against strategy pair (random,random)"

assert pg.solve(pg.Graph.complete(4), "connectivity") == "maker"
t, exact, strat = pg.box_game(3, 2, 2)
assert strat == "boxmaker" and 2 > t
lo, hi = pg.wilson(5, 10)
assert lo < 0.5 < hi
assert "breaker-isolator" in pg.strategy_names()

try:
    pg.run_trials({"p": "1.5"})
except ValueError:
    pass
else:
    raise AssertionError("p > 1 accepted")

print("pygnpgames", pg.__version__, "smoke ok")
