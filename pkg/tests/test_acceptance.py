"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Lines are collected into the terminal summary under "acceptance criteria"
and also echoed to stdout (visible with ``-s``).
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, isomorphic, lapack_qmin, random_graph
from qlap import cli, corpus
from qlap.bipartite import max_cut_exact, mt_report
from qlap.bounds import aes_coefficient, check_graph_against_bounds, turan_qmin_report
from qlap.graph import (
    blowup, clique_number, complement, complete_graph, cycle_graph, has_bipartite_component, is_k_free,
    is_turan_graph, petersen_graph, srg_parameters,
)
from qlap.search import SearchConfig, blowup_padding_bound, exhaustive_search, local_search
from qlap.spectral import (
    MatrixKind, blowup_complement_spectrum_closed, blowup_spectrum_closed, check_regular_identity,
    complement_laplacian_closed, q_min, q_min_batch, spectrum,
)
from qlap.steiner import higman_sims

A, L, Q = MatrixKind.ADJACENCY, MatrixKind.LAPLACIAN, MatrixKind.SIGNLESS_LAPLACIAN


@contextmanager
def criterion(k: int, title: str, budget_s: float):
    start = time.perf_counter()
    notes: list[str] = []
    try:
        yield notes
    except BaseException as exc:
        line = f"criterion {k} FAIL  {title}: {exc}".splitlines()[0]
        ACCEPTANCE_LINES[k] = line
        print(line)
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < budget_s
    extra = f" ({'; '.join(notes)})" if notes else ""
    line = f"criterion {k} {'PASS' if ok else 'FAIL'}  {title} in {elapsed:.1f}s{extra}"
    ACCEPTANCE_LINES[k] = line
    print(line)
    assert ok, f"runtime {elapsed:.1f}s over the {budget_s}s budget"


# -- data shared by criteria 3, 5 and 8 --------------------------------------


@pytest.fixture(scope="module")
def corpus6():
    n = 6
    codes = corpus.all_codes(n)
    adj = corpus.adjacency_stack(codes, n)
    return n, codes, adj, q_min_batch(adj)


def test_criterion_1_blowup_closed_forms():
    with criterion(1, "blowup closed forms, 50 random graphs, t in {2,3,4}, tol 1e-7", 60) as notes:
        rng = np.random.default_rng(1)
        worst = 0.0
        for _ in range(50):
            n = int(rng.integers(2, 11))
            g = random_graph(rng, n, float(rng.uniform(0.2, 0.8)))
            for t in (2, 3, 4):
                b = blowup(g, t)
                bc = complement(b)
                for kind in (A, L, Q):
                    d1 = blowup_spectrum_closed(g, t, kind).max_abs_diff(spectrum(b, kind))
                    d2 = blowup_complement_spectrum_closed(g, t, kind).max_abs_diff(spectrum(bc, kind))
                    worst = max(worst, d1, d2)
        notes.append(f"max deviation {worst:.1e}")
        assert worst <= 1e-7


def test_criterion_2_higman_sims():
    with criterion(2, "Higman-Sims SRG(100,22,0,6), spectrum, q_min 14, 2-blowup 28", 120) as notes:
        h = higman_sims()
        assert srg_parameters(h) == (100, 22, 0, 6)
        mult = spectrum(h, A).multiplicities()
        assert [k for _, k in mult] == [1, 77, 22]
        assert np.allclose([v for v, _ in mult], [22, 2, -8], atol=1e-6)
        assert abs(q_min(h) - 14) <= 1e-7
        # q_min(G^(t)) = t q_min(G), from the closed form and from a direct solve of the 200-vertex graph
        closed = blowup_spectrum_closed(h, 2, Q).min
        direct = q_min(blowup(h, 2))
        notes.append(f"closed {closed:.12g}, direct {direct:.12g}")
        assert abs(closed - 28) <= 1e-6 and abs(direct - 28) <= 1e-6


def test_criterion_3_bipartization_exhaustive(corpus6):
    with criterion(3, "e(G) - maxcut(G) >= q_min n/4 on all 32768 graphs of order 6", 600) as notes:
        n, codes, _, qs = corpus6
        assert len(codes) == 32768
        worst = math.inf
        for code, q in zip(codes.tolist(), qs.tolist()):
            g = corpus.graph_from_code(n, code)
            cost = g.m - max_cut_exact(g).cut_value
            gap = cost - q * n / 4
            worst = min(worst, gap)
            assert gap >= -1e-9, f"violated by code {code}"
        k4 = mt_report(complete_graph(4))
        assert (k4.bipartization_cost, round(k4.bound, 9)) == (2, 2.0) and abs(k4.gap) <= 1e-9
        notes.append(f"min gap {worst:.2e}; K_4 gap {k4.gap:.1e}")


@pytest.mark.xfail(strict=True, reason="(r-2)floor(n/r) exceeds q_min(T_r(n)) whenever n = 1 mod r; see notes")
def test_criterion_4_turan_checks():
    with criterion(4, "Turan checks r in 3..8, n in r+1..40", 60) as notes:
        lower_fail, other_fail = [], []
        for r in range(3, 9):
            for n in range(r + 1, 41):
                chk = turan_qmin_report(n, r)
                if chk.qmin < chk.lower - 1e-12:
                    lower_fail.append((n, r))
                if chk.qmin > chk.upper + 1e-9 or abs(chk.mu2 - chk.mu2_formula) > 1e-7:
                    other_fail.append((n, r))
                if n % r == 0:
                    assert abs(chk.qmin - chk.lower) <= 1e-9 and abs(chk.qmin - chk.upper) <= 1e-9
        nine = turan_qmin_report(9, 3)
        assert [round(x, 9) for x in (nine.lower, nine.qmin, nine.upper)] == [3, 3, 3]
        assert not other_fail
        notes.append(f"upper bound and mu_2 hold everywhere; lower bound fails at {len(lower_fail)} pairs")
        assert all(n % r == 1 for n, r in lower_fail)
        assert not lower_fail, f"lower bound fails at {len(lower_fail)} of 213 pairs, all n = 1 mod r, e.g. {lower_fail[:3]}"


def test_criterion_5_bound_sweeps(corpus6):
    with criterion(5, "bound sweeps on all graphs of order <= 6", 600) as notes:
        checked = 0
        for n in range(2, 7):
            codes = corpus.all_codes(n)
            qs = q_min_batch(corpus.adjacency_stack(codes, n)) if n < 6 else corpus6[3]
            tri_free = corpus.k_free_mask(codes, n, 3)
            k4_free = corpus.k_free_mask(codes, n, 4)
            assert (qs[tri_free] < 2 * n / 9 + 1e-9).all()
            assert (qs[k4_free] <= 4 * n / 9 + 1e-9).all()
            for r in (3, 4, 5):
                free = corpus.k_free_mask(codes, n, r + 1)
                assert (qs[free] < aes_coefficient(r) * n + 1e-9).all()
            for code, q in zip(codes.tolist(), qs.tolist()):
                g = corpus.graph_from_code(n, code)
                for r in range(max(2, clique_number(g)), 6):
                    assert check_graph_against_bounds(g, r, qmin=q) == []
                    checked += 1
        notes.append(f"{checked} (graph, r) checks")


def test_criterion_6_search_regression():
    with criterion(6, "exhaustive (5,2) and seeded local search vs exhaustive, n <= 7", 300) as notes:
        res = exhaustive_search(5, 2)
        assert abs(res.best_qmin - (3 - math.sqrt(5)) / 2) <= 1e-8
        assert isomorphic(res.best_graph, cycle_graph(5))
        pairs = [(n, r) for r in (2, 3) for n in range(r + 1, 8)]
        for n, r in pairs:
            exact = exhaustive_search(n, r).best_qmin
            found = local_search(SearchConfig(n, r, seed=7, restarts=8))
            assert abs(found.best_qmin - exact) <= 1e-8, f"(n, r) = ({n}, {r}): {found.best_qmin} vs {exact}"
        cfg = SearchConfig(7, 3, seed=7, restarts=8)
        a, b = local_search(cfg), local_search(cfg)
        assert a.to_jsonl(timestamp=False) == b.to_jsonl(timestamp=False)
        assert a.best_qmin == b.best_qmin and a.best_graph == b.best_graph
        notes.append(f"{len(pairs)} (n, r) pairs matched")


def test_criterion_7_padding_bound():
    with criterion(7, "padding bound from Higman-Sims at n = 250 is exactly 28", 120) as notes:
        value, padded = blowup_padding_bound(higman_sims(), 250)
        assert value == 28 and type(value) is float
        assert padded.n == 250
        unpadded = blowup(higman_sims(), 2)
        assert clique_number(unpadded) == 2 and is_k_free(padded, 3)
        notes.append("unpadded witness has clique number 2")


def test_criterion_8_identities(corpus6):
    with criterion(8, "regular identity, complement-Laplacian identity, q_min = 0 iff bipartite component", 600) as notes:
        for g in (cycle_graph(5), complete_graph(4), petersen_graph(), higman_sims()):
            q, identity = check_regular_identity(g)
            assert abs(q - identity) <= 1e-8
        rng = np.random.default_rng(8)
        for _ in range(50):
            g = random_graph(rng, int(rng.integers(1, 13)), float(rng.uniform(0.1, 0.9)))
            assert complement_laplacian_closed(g).max_abs_diff(spectrum(complement(g), L)) <= 1e-7
        total = 0
        for n in range(1, 7):
            codes = corpus.all_codes(n)
            qs = q_min_batch(corpus.adjacency_stack(codes, n)) if n < 6 else corpus6[3]
            for code, q in zip(codes.tolist(), qs.tolist()):
                g = corpus.graph_from_code(n, code)
                assert (abs(q) <= 1e-9) == has_bipartite_component(g), f"n={n} code={code}"
                total += 1
        notes.append(f"bipartite-component equivalence on {total} graphs")


def test_criterion_9_property_acceptance(tmp_path, monkeypatch):
    with criterion(9, "c_r not reproducible; searches stay under upper bounds, lower witnesses re-verify", 300) as notes:
        runs = 0
        for n, r in [(8, 2), (10, 2), (12, 2), (8, 3), (10, 3), (12, 4), (14, 5)]:
            for seed in (0, 1):
                res = local_search(SearchConfig(n, r, seed=seed, restarts=2, steps_per_restart=150))
                assert not res.exceeds_upper
                assert is_k_free(res.best_graph, r + 1)
                assert abs(res.best_qmin - lapack_qmin(res.best_graph)) <= 1e-8
                runs += 1
        # lower-bound witnesses: Higman-Sims blowups and balanced Turan graphs
        for t in (1, 2):
            w = blowup(higman_sims(), t)
            assert is_k_free(w, 3) and abs(q_min(w) - 14 * t) <= 1e-7
        for r in (3, 4, 5):
            for k in (1, 2, 3):
                w = blowup(complete_graph(r), k)
                assert is_turan_graph(w, r)
                assert is_k_free(w, r + 1) and abs(lapack_qmin(w) - (r - 2) * k) <= 1e-9
        # the exit-2 hook fires when a result lands above its bound
        monkeypatch.setattr("qlap.search.upper_bound_for", lambda n, r: (0.1, "injected"))
        out = tmp_path / "runs.jsonl"
        code = cli.main(["search", "--n", "5", "--r", "2", "--exhaustive", "--out", str(out), "--no-timestamp"])
        assert code == 2 and out.read_text().strip()
        notes.append(f"{runs} searches under their bounds; exit-2 hook verified")
