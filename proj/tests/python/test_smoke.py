import itertools
import random

import pytest

import fairmso


def path(n):
    return fairmso.Graph(n, [(i, i + 1) for i in range(n - 1)])


def brute_min_fair(g, phi):
    best = None
    for r in range(g.n + 1):
        for x in itertools.combinations(range(g.n), r):
            if fairmso.evaluate(g, list(x), phi):
                c = fairmso.fair_cost(g, list(x))
                best = c if best is None else min(best, c)
    return best


def test_graph_roundtrip():
    g = fairmso.Graph.parse("4 3\n0 1\n1 2\n2 3\n")
    assert (g.n, g.m) == (4, 3)
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert g.neighbors(1) == [0, 2]
    assert fairmso.Graph.parse(g.to_text()) == g
    assert "modulator: 1" in g.to_text([1])


def test_errors():
    with pytest.raises(fairmso.ParseError):
        fairmso.Formula.parse("(forallV x (in x Free)")
    with pytest.raises(fairmso.DomainError):
        fairmso.Graph(2, [(0, 0)])
    with pytest.raises(fairmso.ModulatorError):
        fairmso.solve(path(4), "vc", modulator=[0])
    with pytest.raises(fairmso.DomainError):
        fairmso.solve(path(3), "vc", alpha=4)
    with pytest.raises(fairmso.ResourceLimitError):
        fairmso.oracle(path(6), fairmso.Formula.preset("vc"), max_n=5)
    assert issubclass(fairmso.ParseError, fairmso.Error)


def test_path_vertex_cover():
    g = path(3)
    r = fairmso.solve(g, "vc")
    assert r["k_star"] == 1
    assert r["witness"] == [1]
    assert r["verification_failures"] == 0
    assert fairmso.solve(fairmso.Graph(2, [(0, 1)]), "vc", k=0)["feasible"] is False
    assert fairmso.find_modulator(path(4)) == [1]
    assert fairmso.find_modulator(path(4), k=0) is None


def test_solver_matches_oracle_and_brute_force():
    rng = random.Random(5)
    presets = ["vc", "ds", "fvs", "oct"]
    for _ in range(15):
        n = rng.randint(1, 7)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
        g = fairmso.Graph(n, edges)
        for name in presets:
            phi = fairmso.Formula.preset(name)
            expected = brute_min_fair(g, phi)
            r = fairmso.solve(g, name)
            assert r["k_star"] == expected
            assert fairmso.oracle(g, phi)["k_star"] == expected
            if expected is not None:
                assert fairmso.evaluate(g, r["witness"], phi)
                assert fairmso.fair_cost(g, r["witness"]) == expected


def test_custom_formula_and_sigma_rho():
    g = fairmso.Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    cover = fairmso.Formula.parse(
        "(forallV x (forallV y (implies (adj x y) (or (in x Free) (in y Free)))))")
    assert cover.is_fo and cover.q_v == 2
    assert fairmso.solve(g, formula=cover)["k_star"] == brute_min_fair(g, cover)
    r = fairmso.solve(g, "sigma-rho", sigma="0", rho="coN:0")
    phi = fairmso.Formula.preset("sigma-rho", sigma="0", rho="coN:0")
    assert r["k_star"] == brute_min_fair(g, phi)


def test_hard_instance_and_cli():
    h = fairmso.hard_instance(2, 3, [1, 2, 1, 2])
    assert h["expected"] is True
    assert fairmso.oracle(h["graph"], h["formula"], k=h["k"], max_n=20)["feasible"] is True
    code, out, err = fairmso.run_cli(["--help"])
    assert code == 0 and "solve" in out
    code, out, err = fairmso.run_cli(["solve"])
    assert code == 1 and "--graph" in err
