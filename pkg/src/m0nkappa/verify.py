"""
Verification suite: one named check per structural statement, evaluated
cell by cell ((n, d) pairs, or n alone) with exact arithmetic.

Each cell yields a `CheckReport` whose witness records the ranks and
dimensions compared; a failing report also carries the offending vector or
the mismatching numbers.  Reports serialise to canonical JSON lines, and the
order of reports never depends on the number of worker threads.
"""

from __future__ import annotations

import contextvars
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb, prod
from typing import Callable, Iterable

from m0nkappa import faults
from m0nkappa.chowq import (
    SPVector,
    action_matrix,
    build_quotient,
    partitions_sp,
    pullback_lift,
    pushforward_lift,
    quotient_map_matrix,
    relation_generators,
    trace,
)
from m0nkappa.errors import InputError
from m0nkappa.exactlin import FormalSum, SparseMatrix, apply_rows, echelonize, kernel, rank
from m0nkappa.kappa import (
    KVector,
    ParityVector,
    alpha,
    beta,
    bipartition_pushforward,
    bipartition_pushforward_sum,
    even_map,
    gamma_F,
    gamma_SP,
    odd_map,
    pair,
    pairing_matrix,
    phi_matrix,
    phi_tilde,
)
from m0nkappa.setcomb import (
    OrientedBipartition,
    Permutation,
    SetPartition,
    Subset,
    act,
    character_fixed_points,
    enumerate_bipartitions,
    enumerate_kappa_index,
    enumerate_parity_subsets,
)
from m0nkappa.strata import (
    COLLAPSED,
    TreeType,
    classify,
    enumerate_trees,
    forget_mark,
    stratum_class,
)

DEFAULT_N_MAX = 7
EQUIVARIANCE_SAMPLES = 1000


@dataclass
class CheckReport:
    check: str
    params: dict
    status: str
    witness: dict = field(default_factory=dict)
    vacuous: bool = False

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "vacuous": self.vacuous,
            "witness": self.witness,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _report(name: str, params: dict, failures: list, witness: dict, vacuous: bool = False) -> CheckReport:
    if failures:
        witness = dict(witness, failures=failures[:5], num_failures=len(failures))
    return CheckReport(name, params, "fail" if failures else "pass", witness, vacuous)


def _enc(x) -> str:
    return x.encode() if hasattr(x, "encode") else str(x)


def _sum_json(v: FormalSum) -> dict:
    return {_enc(k): str(c) for k, c in v.sorted_items()}


def _quotient_cells(n_min: int, n_max: int) -> list[dict]:
    return [{"n": n, "d": d} for n in range(max(n_min, 4), n_max + 1) for d in range(1, n - 2)]


def dimension_formula_cell(n: int, d: int) -> CheckReport:
    q = build_quotient(n, d)
    k = len(enumerate_kappa_index(n, d))
    failures = []
    witness = {"dim_Q": q.dimension, "num_partitions": len(q.partitions), "rank_relations": q.rank_relations, "num_K": k}
    if q.dimension != k:
        failures.append({"dim_Q": q.dimension, "num_K": k})
    if d == 1:
        closed = 2 ** (n - 1) - comb(n, 2) - 1
        witness["closed_form"] = closed
        if q.dimension != closed:
            failures.append({"dim_Q": q.dimension, "closed_form": closed})
    return _report("dimension_formula", {"n": n, "d": d}, failures, witness)


def theorem_root_cell(n: int, d: int) -> CheckReport:
    m = phi_matrix(n, d)
    r = rank(m)
    rows, cols = m.shape
    failures = []
    if rows != cols:
        failures.append({"shape": [rows, cols], "reason": "phi matrix is not square"})
    if r != rows or r != cols:
        failures.append({"rank": r, "shape": [rows, cols], "reason": "phi is not invertible"})
    return _report("theorem_root", {"n": n, "d": d}, failures, {"shape": [rows, cols], "rank": r})


def perfect_pairing_cell(n: int, d: int) -> CheckReport:
    m = pairing_matrix(n, d)
    full = pairing_matrix(n, d, quotient=False)
    phi = phi_matrix(n, d)
    r, r_full = rank(m), rank(full)
    rows, cols = m.shape
    failures = []
    if not (rows == cols == r):
        failures.append({"rank": r, "shape": [rows, cols], "reason": "pairing matrix is not invertible"})
    if r_full != rows:
        failures.append({"rank_full_SP": r_full, "dim_Q": rows})
    for p, a, b in zip(m.row_labels, m.rows, phi.rows):
        if a != b:
            failures.append({"partition": p.encode(), "pairing_row": _sum_json(a), "phi_row": _sum_json(b)})
    return _report(
        "perfect_pairing", {"n": n, "d": d}, failures, {"shape": [rows, cols], "rank": r, "rank_full_SP": r_full}
    )


def _kappa_map_matrix(domain: list[Subset], f: Callable, d_domain: int, universe: list[Subset]) -> SparseMatrix:
    rows = [f(KVector.of(t, d_domain)).sum for t in domain]
    return SparseMatrix(universe, rows, domain)


def exact_sequences_cell(n: int, d: int) -> CheckReport:
    qa, qb, qc = build_quotient(n, d), build_quotient(n + 1, d + 1), build_quotient(n, d + 1)
    pull = quotient_map_matrix("pull", n, d)
    push = quotient_map_matrix("push", n, d + 1)
    r_pull, r_push = rank(pull), rank(push)
    ker_push = kernel(push.transpose())
    im_pull = echelonize(pull.rows, qb.basis)
    failures = []
    if r_pull != qa.dimension:
        failures.append({"part": "a", "rank_pullback": r_pull, "dim_source": qa.dimension})
    if r_push != qc.dimension:
        failures.append({"part": "b", "rank_pushforward": r_push, "dim_target": qc.dimension})
    for p, row in zip(pull.row_labels, pull.rows):
        img = apply_rows(push, row)
        if img:
            failures.append({"part": "c", "partition": p.encode(), "push_of_pull": _sum_json(img)})
    for p in partitions_sp(n, d):
        lifted = pushforward_lift(pullback_lift(SPVector.of(p)))
        if lifted:
            failures.append({"part": "c", "partition": p.encode(), "lifted_push_of_pull": str(lifted)})
    if ker_push != im_pull:
        failures.append({"part": "c", "dim_kernel_push": ker_push.dim, "dim_image_pull": im_pull.dim})

    ka, kb, kc = enumerate_kappa_index(n, d), enumerate_kappa_index(n + 1, d + 1), enumerate_kappa_index(n, d + 1)
    a_mat = _kappa_map_matrix(ka, alpha, d, kb)
    b_mat = _kappa_map_matrix(kb, beta, d + 1, kc)
    r_alpha, r_beta = rank(a_mat), rank(b_mat)
    if r_alpha != len(ka):
        failures.append({"part": "d", "rank_alpha": r_alpha, "num_K_source": len(ka)})
    if r_beta != len(kc):
        failures.append({"part": "d", "rank_beta": r_beta, "num_K_target": len(kc)})
    for t in ka:
        ba = beta(alpha(KVector.of(t, d)))
        if ba:
            failures.append({"part": "d", "subset": t.encode(), "beta_alpha": _sum_json(ba.sum)})
    if kernel(b_mat.transpose()) != echelonize(a_mat.rows, kb):
        failures.append({"part": "d", "reason": "image(alpha) != kernel(beta)"})

    dims = [qa.dimension, qb.dimension, qc.dimension]
    ks = [len(ka), len(kb), len(kc)]
    if dims[0] + dims[2] != dims[1]:
        failures.append({"part": "e", "dims_Q": dims})
    if ks[0] + ks[2] != ks[1]:
        failures.append({"part": "e", "num_K": ks})
    if dims != ks:
        failures.append({"part": "e", "dims_Q": dims, "num_K": ks})
    witness = {
        "dims_Q": dims,
        "num_K": ks,
        "rank_pullback": r_pull,
        "rank_pushforward": r_push,
        "dim_kernel_push": ker_push.dim,
        "rank_alpha": r_alpha,
        "rank_beta": r_beta,
        "zero_spaces": [name for name, dim in zip(("Q_source", "Q_middle", "Q_target"), dims) if dim == 0],
    }
    return _report("exact_sequences", {"n": n, "d": d}, failures, witness)


def _square_cells(n_min: int, n_max: int) -> list[dict]:
    # d = n-2 leaves both SP_{d,n} and SP_{d+1,n+1} empty: kept as a vacuous cell
    return [{"n": n, "d": d} for n in range(max(n_min, 2), n_max) for d in range(-1, n - 1)]


def commuting_squares_cell(n: int, d: int) -> CheckReport:
    failures = []
    left = 0
    for p in partitions_sp(n, d):
        v = SPVector.of(p)
        lhs = phi_tilde(pullback_lift(v))
        rhs = alpha(phi_tilde(v))
        left += 1
        if lhs != rhs:
            failures.append({"square": "left", "partition": p.encode(), "lhs": _sum_json(lhs.sum), "rhs": _sum_json(rhs.sum)})
    case1 = case2 = 0
    for p in partitions_sp(n + 1, d + 1):
        v = SPVector.of(p)
        lhs = phi_tilde(pushforward_lift(v))
        rhs = beta(phi_tilde(v))
        if (n + 1,) in p.blocks:
            case1 += 1
            if lhs or rhs:
                failures.append({"square": "right", "case": 1, "partition": p.encode(), "lhs": _sum_json(lhs.sum), "rhs": _sum_json(rhs.sum)})
        else:
            case2 += 1
            if lhs != rhs:
                failures.append({"square": "right", "case": 2, "partition": p.encode(), "lhs": _sum_json(lhs.sum), "rhs": _sum_json(rhs.sum)})
    witness = {"left_generators": left, "right_case1": case1, "right_case2": case2}
    return _report("commuting_squares", {"n": n, "d": d}, failures, witness, vacuous=left + case1 + case2 == 0)


def _surjectivity_cells(n_min: int, n_max: int) -> list[dict]:
    cells = []
    for n in range(max(n_min, 1), n_max + 1):
        cells.append({"map": "odd", "n": n})
        cells.append({"map": "even", "n": n})
        if n >= 2:
            cells.append({"map": "phi_-1", "n": n})
        if n >= 3:
            cells.append({"map": "phi_0", "n": n})
        if n + 1 <= n_max:
            cells.append({"map": "aux_squares", "n": n})
    return cells


def _aux_squares(n: int) -> list[dict]:
    failures = []
    for b in enumerate_bipartitions(n):
        g = gamma_F(b)
        pairs = [
            ("odd_left", odd_map(g, n + 1), alpha(even_map(b))),
            ("even_left", even_map(g, n + 1), alpha(odd_map(b))),
        ]
        for name, lhs, rhs in pairs:
            if lhs != rhs:
                failures.append({"square": name, "bipartition": b.encode(), "lhs": _sum_json(lhs.sum), "rhs": _sum_json(rhs.sum)})
        back = bipartition_pushforward_sum(g)
        if back:
            failures.append({"square": "pi_prime_gamma", "bipartition": b.encode(), "value": _sum_json(back)})
        if n >= 2:
            gs = gamma_SP(b)
            lhs, rhs = phi_tilde(gs), alpha(odd_map(b))
            if lhs.sum != rhs.sum:
                failures.append({"square": "n2_left", "bipartition": b.encode(), "lhs": _sum_json(lhs.sum), "rhs": _sum_json(rhs.sum)})
            pushed = pushforward_lift(gs)
            if pushed:
                failures.append({"square": "push_gamma_SP", "bipartition": b.encode(), "value": str(pushed)})
    for b in enumerate_bipartitions(n + 1):
        down = bipartition_pushforward(b)
        for name, f in (("odd_right", odd_map), ("even_right", even_map)):
            lhs, rhs = f(down), beta(f(b))
            if lhs != rhs:
                failures.append({"square": name, "bipartition": b.encode(), "lhs": _sum_json(lhs.sum), "rhs": _sum_json(rhs.sum)})
    return failures


def surjectivity_lemmas_cell(map: str, n: int) -> CheckReport:
    params = {"map": map, "n": n}
    if map == "aux_squares":
        failures = _aux_squares(n)
        return _report("surjectivity_lemmas", params, failures, {"bipartitions_checked": 2 ** (n - 1) + 2**n})
    if map in ("odd", "even"):
        domain = enumerate_bipartitions(n)
        universe = enumerate_parity_subsets(n, map)
        f = odd_map if map == "odd" else even_map
        rows = [f(b).sum for b in domain]
    else:
        d = -1 if map == "phi_-1" else 0
        domain = partitions_sp(n, d)
        universe = enumerate_kappa_index(n, d)
        rows = [phi_tilde(SPVector.of(p)).sum for p in domain]
    r = rank(SparseMatrix(universe, rows, domain))
    failures = []
    if r != len(universe):
        failures.append({"rank": r, "target_dim": len(universe)})
    if map in ("odd", "even") and len(universe) != 2 ** (n - 1):
        failures.append({"target_dim": len(universe), "expected": 2 ** (n - 1)})
    witness = {"rank": r, "target_dim": len(universe), "domain_size": len(domain)}
    return _report("surjectivity_lemmas", params, failures, witness)


def _double_factorial_odd(k: int) -> int:
    # (2k-3)!! = number of trivalent rooted trees with k labelled leaves
    return prod(range(1, 2 * k - 2, 2)) if k >= 2 else 1


def strata_consistency_cell(n: int) -> CheckReport:
    trees = enumerate_trees(n)
    failures = []
    by_partition: dict[SetPartition, set] = {}
    type_counts = {t.value: 0 for t in TreeType}
    for t in trees:
        kind = classify(t)
        type_counts[kind.value] += 1
        if kind is TreeType.TYPE_I:
            cls = stratum_class(t)
            by_partition.setdefault(cls.partition, set()).add(cls)
            if t.dimension != cls.partition.num_blocks - 3:
                failures.append({"part": "a", "tree": t.to_json(), "dimension": t.dimension})
    for p, classes in by_partition.items():
        if len(classes) != 1:
            failures.append({"part": "a", "partition": p.encode(), "classes": sorted(repr(c) for c in classes)})
    expected = {p for k in range(4, n + 1) for p in partitions_sp(n, k - 3)}
    if set(by_partition) != expected:
        failures.append({"part": "a", "missing": sorted(p.encode() for p in expected - set(by_partition))[:5]})
    multiplicity: dict[SetPartition, int] = {}
    for t in trees:
        if classify(t) is TreeType.TYPE_I:
            p = stratum_class(t).partition
            multiplicity[p] = multiplicity.get(p, 0) + 1
    for p, count in multiplicity.items():
        want = prod(_double_factorial_odd(len(b)) for b in p.blocks)
        if count != want:
            failures.append({"part": "a", "partition": p.encode(), "trees": count, "expected": want})

    type_i_checked = type_ii_checked = 0
    if n >= 5:
        for t in trees:
            kind = classify(t)
            if kind is TreeType.POINT:
                continue
            image = forget_mark(t)
            if kind is TreeType.TYPE_I:
                type_i_checked += 1
                pushed = pushforward_lift(SPVector.of(stratum_class(t).partition))
                if image is COLLAPSED:
                    if pushed:
                        failures.append({"part": "b", "tree": t.to_json(), "tree_level": "collapsed", "partition_level": str(pushed)})
                else:
                    got = stratum_class(image)
                    if got.is_zero or FormalSum.single(got.partition) != pushed.sum:
                        failures.append({"part": "b", "tree": t.to_json(), "tree_level": repr(got), "partition_level": str(pushed)})
            else:
                type_ii_checked += 1
                if image is not COLLAPSED and classify(image) is not TreeType.TYPE_II:
                    failures.append({"part": "c", "tree": t.to_json(), "image": image.to_json()})
    witness = {
        "num_trees": len(trees),
        "type_counts": type_counts,
        "type_i_partitions": len(by_partition),
        "type_i_pushforwards_checked": type_i_checked,
        "type_ii_pushforwards_checked": type_ii_checked,
    }
    return _report("strata_consistency", {"n": n}, failures, witness)


def _base_cells(n_min: int, n_max: int) -> list[dict]:
    cells = [{"case": "odd_1"}, {"case": "even_1"}, {"case": "phi_-1_2"}, {"case": "phi_0_3"}]
    cells += [{"case": "top_degree", "n": n} for n in range(max(n_min, 4), n_max + 1)]
    return cells


def base_cases_cell(case: str, n: int | None = None) -> CheckReport:
    params = {"case": case} if n is None else {"case": case, "n": n}
    failures = []
    if case == "odd_1":
        got = odd_map(OrientedBipartition(1, (1,), ()))
        want = ParityVector(1, "odd", FormalSum({Subset(1, (1,)): -1}))
        witness = {"value": _sum_json(got.sum)}
    elif case == "even_1":
        got = even_map(OrientedBipartition(1, (1,), ()))
        want = ParityVector(1, "even", FormalSum({Subset(1, ()): -2}))
        witness = {"value": _sum_json(got.sum)}
    elif case == "phi_-1_2":
        got = phi_tilde(SPVector.of(SetPartition(2, ((1,), (2,)))))
        want = KVector(2, -1, FormalSum({Subset(2, (1, 2)): 1}))
        witness = {"value": _sum_json(got.sum)}
    elif case == "phi_0_3":
        got = phi_tilde(SPVector.of(SetPartition(3, ((1,), (2,), (3,)))))
        want = KVector(3, 0, FormalSum({Subset(3, (1, 2, 3)): 1}))
        witness = {"value": _sum_json(got.sum)}
    elif case == "top_degree":
        q = build_quotient(n, n - 3)
        singletons = SetPartition(n, tuple((i,) for i in range(1, n + 1)))
        got = phi_tilde(SPVector.of(singletons))
        want = KVector(n, n - 3, FormalSum({Subset(n, tuple(range(1, n + 1))): 1}))
        witness = {"dim_Q": q.dimension, "basis": [p.encode() for p in q.basis], "value": _sum_json(got.sum)}
        if q.dimension != 1 or q.basis != (singletons,):
            failures.append({"dim_Q": q.dimension})
    else:
        raise InputError(f"unknown base case {case!r}")
    if got != want:
        failures.append({"got": _sum_json(got.sum), "want": _sum_json(want.sum)})
    return _report("base_cases", params, failures, witness)


def _relation_cells(n_min: int, n_max: int) -> list[dict]:
    return [{"n": n, "d": d} for n in range(max(n_min, 5), n_max + 1) for d in range(1, n - 3)]


def relation_properties_cell(n: int, d: int) -> CheckReport:
    gens = relation_generators(n, d)
    failures = []
    for g in gens:
        img = phi_tilde(g)
        if img:
            failures.append({"property": "phi_kills_relation", "generator": _sum_json(g.sum), "image": _sum_json(img.sum)})
    as_set = {g.sum for g in gens}
    for perm in (Permutation.from_cycles(n, (1, 2)), Permutation.from_cycles(n, range(1, n + 1))):
        for g in gens:
            moved = g.sum.map_labels(lambda p: act(perm, p))
            if moved not in as_set:
                failures.append({"property": "S_n_stable", "perm": perm.encode(), "generator": _sum_json(g.sum)})
                break
    return _report("relation_properties", {"n": n, "d": d}, failures, {"num_generators": len(gens)})


def pairing_equivariance_cell(n: int, d: int, samples: int = EQUIVARIANCE_SAMPLES) -> CheckReport:
    rng = random.Random(f"equivariance:{n}:{d}")
    ps, ts = partitions_sp(n, d), enumerate_kappa_index(n, d)
    failures = []
    for _ in range(samples):
        images = list(range(1, n + 1))
        rng.shuffle(images)
        g = Permutation(n, tuple(images))
        p, t = rng.choice(ps), rng.choice(ts)
        a, b = pair(p, t), pair(act(g, p), act(g, t))
        if a != b:
            failures.append({"perm": g.encode(), "partition": p.encode(), "subset": t.encode(), "pair": a, "pair_moved": b})
    return _report("pairing_equivariance", {"n": n, "d": d}, failures, {"samples": samples})


def _integer_partitions(n: int, largest: int | None = None) -> Iterable[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _integer_partitions(n - k, k):
            yield (k,) + rest


def _cycle_type_representative(n: int, shape: tuple[int, ...]) -> Permutation:
    cycles, start = [], 1
    for k in shape:
        cycles.append(range(start, start + k))
        start += k
    return Permutation.from_cycles(n, *cycles)


def characters_cell(n: int, d: int) -> CheckReport:
    failures = []
    values = {}
    for shape in _integer_partitions(n):
        g = _cycle_type_representative(n, shape)
        tr = trace(action_matrix(g, n, d))
        fixed = character_fixed_points(n, d, g)
        values[",".join(map(str, shape))] = fixed
        if tr != fixed:
            failures.append({"cycle_type": list(shape), "trace_on_Q": str(tr), "fixed_points": fixed})
    return _report("characters", {"n": n, "d": d}, failures, {"character": values})


@dataclass(frozen=True)
class Check:
    cells: Callable[[int, int], list[dict]]
    run: Callable[..., CheckReport]


CHECKS: dict[str, Check] = {
    "dimension_formula": Check(_quotient_cells, dimension_formula_cell),
    "theorem_root": Check(_quotient_cells, theorem_root_cell),
    "perfect_pairing": Check(_quotient_cells, perfect_pairing_cell),
    "exact_sequences": Check(lambda lo, hi: _quotient_cells(lo, hi - 1), exact_sequences_cell),
    "commuting_squares": Check(_square_cells, commuting_squares_cell),
    "surjectivity_lemmas": Check(_surjectivity_cells, surjectivity_lemmas_cell),
    "strata_consistency": Check(lambda lo, hi: [{"n": n} for n in range(max(lo, 4), hi + 1)], strata_consistency_cell),
    "base_cases": Check(_base_cells, base_cases_cell),
    "relation_properties": Check(_relation_cells, relation_properties_cell),
    "pairing_equivariance": Check(_quotient_cells, pairing_equivariance_cell),
    "characters": Check(_quotient_cells, characters_cell),
}


def _guarded(name: str, run: Callable[..., CheckReport], params: dict) -> CheckReport:
    try:
        return run(**params)
    except Exception as exc:  # a crash inside a cell is a failed check, not a dead suite
        return CheckReport(name, params, "fail", {"error": f"{type(exc).__name__}: {exc}"})


def run_suite(
    n_max: int = DEFAULT_N_MAX,
    only: Iterable[str] | None = None,
    threads: int = 1,
    fault: faults.Fault | None = None,
    n_min: int = 1,
) -> list[CheckReport]:
    """Run the selected checks over every cell with n_min <= n <= n_max.

    Reports come back in registry order, then cell order, whatever ``threads`` is.
    """
    names = list(CHECKS) if only is None else list(only)
    unknown = [x for x in names if x not in CHECKS]
    if unknown:
        raise InputError(f"unknown checks {unknown}; choose from {list(CHECKS)}")
    if n_max < 4:
        raise InputError("n_max must be at least 4")
    work = [(name, params) for name in names for params in CHECKS[name].cells(n_min, n_max)]
    with faults.injected(fault):
        if threads <= 1:
            return [_guarded(name, CHECKS[name].run, params) for name, params in work]
        ctx = contextvars.copy_context()

        def task(item):
            name, params = item
            return ctx.copy().run(_guarded, name, CHECKS[name].run, params)

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(task, work))


def check_dimension_formula(n_max: int) -> list[CheckReport]:
    return run_suite(n_max, ["dimension_formula"])


def check_theorem_root(n_max: int) -> list[CheckReport]:
    return run_suite(n_max, ["theorem_root"])


def check_perfect_pairing(n_max: int) -> list[CheckReport]:
    return run_suite(n_max, ["perfect_pairing"])


def check_exact_sequences(n_max: int) -> list[CheckReport]:
    """Cells (n, d) with n + 1 <= n_max."""
    return run_suite(n_max, ["exact_sequences"])


def check_commuting_squares(n_max: int) -> list[CheckReport]:
    """Cells (n, d), d >= -1, whose larger ground set n + 1 is at most n_max."""
    return run_suite(n_max, ["commuting_squares"])


def check_surjectivity_lemmas(n_max: int) -> list[CheckReport]:
    return run_suite(n_max, ["surjectivity_lemmas"])


def check_strata_consistency(n_max: int) -> list[CheckReport]:
    return run_suite(n_max, ["strata_consistency"])


def summarize(reports: list[CheckReport]) -> list[dict]:
    rows: dict[str, dict] = {}
    for r in reports:
        row = rows.setdefault(r.check, {"check": r.check, "cells": 0, "pass": 0, "fail": 0, "vacuous": 0})
        row["cells"] += 1
        row["pass" if r.passed else "fail"] += 1
        row["vacuous"] += int(r.vacuous)
    return list(rows.values())


def all_passed(reports: list[CheckReport]) -> bool:
    return all(r.passed for r in reports)
