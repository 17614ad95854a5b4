"""Exhaustive Jacobi-closure search over mu-sequences over F_p.

A node fixes ``mu_3 .. mu_w``; its table is derived up to weight ``w + 2``
and has passed every Jacobi identity there.  Extending by ``mu_{w+1} = x``
adds the weight ``w + 3`` diagonal; only triples of that total weight are
new.  :func:`extend_one_step` decides admissibility the slow way (full
re-derivation and full scan per candidate).  The search itself uses the fact
that every new residual is affine in ``x``, so two evaluations per triple
pin down the admissible set; the tests compare the two routes.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Any, Iterable, Sequence

from .analysis import constituents
from .constructions import L_lambda_mu, q_algebra_mu, is_power_of
from .liecore import Type2Table, jacobi_check, next_type2_diagonal, type2_residual, weight_triples
from .scalars import PrimeField

BRANCHES = ("e3-zero", "e3-nonzero", "all")
SPLIT_LEVELS = 3


class ResourceBoundError(RuntimeError):
    def __init__(self, report: "ClassificationReport"):
        super().__init__(f"node budget exhausted; {len(report.frontier)} open nodes left")
        self.report = report


@dataclass(frozen=True)
class BranchNode:
    """``prefix[k]`` is ``mu_{k+3}``; ``weight`` is the last fixed index."""

    prefix: tuple[int, ...]
    status: str = "open"
    death_weight: int | None = None
    witness: tuple[int, int, int] | None = None

    @property
    def weight(self) -> int:
        return 2 + len(self.prefix)

    def mu(self, i: int) -> int:
        return self.prefix[i - 3]


def _diagonals(field, prefix: Sequence[int]) -> list:
    diag: list = [None, None, [0, 0]]
    for s in range(3, len(prefix) + 5):
        diag.append(next_type2_diagonal(field, diag, s, prefix[s - 5] if s >= 5 else 0))
    return diag


def table_of(p: int, prefix: Sequence[int]) -> Type2Table:
    """Type-2 table with the given ``mu_3, mu_4, ...`` and bound ``len + 4``."""
    return Type2Table(PrimeField(p), len(prefix) + 4, {i + 3: v for i, v in enumerate(prefix)})


# ---------------------------------------------------------------------------
# The oracle


def extend_one_step(node: BranchNode, p: int) -> list[int]:
    """Residues ``x`` such that ``mu_{w+1} = x`` keeps every Jacobi sum of weight ``<= w + 3`` zero.

    Each candidate is checked by rebuilding the whole table and scanning
    every triple.
    """
    out = []
    for x in range(p):
        if jacobi_check(table_of(p, node.prefix + (x,))).ok:
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# Fast admissibility


def admissible(field, diag: list, w: int, candidates: Iterable[int]) -> tuple[list[int], tuple | None]:
    """Admissible ``mu_{w+1}`` among ``candidates`` and, if none, a witness triple.

    ``diag`` must hold diagonals up to ``w + 2``.
    """
    p = field.characteristic
    s = w + 3
    cands = list(candidates)
    d0 = next_type2_diagonal(field, diag, s, 0)
    d1 = next_type2_diagonal(field, diag, s, 1)
    diag.append(d0)
    try:
        for i, j, k in weight_triples(s):
            a = type2_residual(diag, i, j, k) % p
            diag[s] = d1
            b = (type2_residual(diag, i, j, k) - a) % p
            diag[s] = d0
            if b:
                x = (-a * pow(b, -1, p)) % p
                cands = [c for c in cands if c == x]
            elif a:
                cands = []
            if not cands:
                return [], (i, j, k)
    finally:
        diag.pop()
    return cands, None


# ---------------------------------------------------------------------------
# Search


@dataclass(frozen=True)
class SearchConfig:
    p: int
    N: int
    branch: str = "all"
    seed: tuple[tuple[int, int], ...] = ()
    max_nodes: int = 2_000_000

    def allowed(self, prefix: tuple[int, ...]) -> list[int]:
        i = len(prefix) + 3
        fixed = dict(self.seed)
        if i in fixed:
            return [fixed[i] % self.p]
        if i == 3:
            if self.branch == "e3-zero":
                return [0]
            if self.branch == "e3-nonzero":
                return [1]
            return [0, 1]
        if not any(prefix):
            # mu scales uniformly with e_2, so the first non-zero value is 1
            return [0, 1]
        return list(range(self.p))


@dataclass
class _Result:
    leaves: list = dc_field(default_factory=list)
    dead: list = dc_field(default_factory=list)
    frontier: list = dc_field(default_factory=list)
    nodes: int = 0


def _run_subtree(cfg: SearchConfig, prefix: tuple[int, ...], stop_weight: int | None) -> _Result:
    """Depth-first search below ``prefix``; stops expanding at ``stop_weight``."""
    field = PrimeField(cfg.p)
    res = _Result()
    diag = _diagonals(field, prefix)
    target = cfg.N - 2
    path = list(prefix)

    def visit() -> None:
        w = 2 + len(path)
        if w >= target:
            res.leaves.append(tuple(path))
            return
        if stop_weight is not None and w >= stop_weight:
            res.frontier.append(tuple(path))
            return
        if res.nodes >= cfg.max_nodes:
            res.frontier.append(tuple(path))
            return
        res.nodes += 1
        adm, witness = admissible(field, diag, w, cfg.allowed(tuple(path)))
        if not adm:
            res.dead.append((tuple(path), w + 3, witness))
            return
        for x in adm:
            path.append(x)
            diag.append(next_type2_diagonal(field, diag, w + 3, x))
            visit()
            diag.pop()
            path.pop()

    visit()
    return res


def _subtree_task(args):
    cfg, prefix = args
    return _run_subtree(cfg, prefix, None)


def extension_death(cfg: SearchConfig, prefix: tuple[int, ...], horizon: int) -> int | None:
    """``None`` if ``prefix`` extends consistently to ``horizon``, else the last death weight."""
    field = PrimeField(cfg.p)
    diag = _diagonals(field, prefix)
    path = list(prefix)
    target = horizon - 2
    worst = 0
    budget = [cfg.max_nodes]

    def visit() -> bool:
        nonlocal worst
        w = 2 + len(path)
        if w >= target or budget[0] <= 0:
            return True
        budget[0] -= 1
        adm, _ = admissible(field, diag, w, cfg.allowed(tuple(path)))
        if not adm:
            worst = max(worst, w + 3)
            return False
        for x in adm:
            path.append(x)
            diag.append(next_type2_diagonal(field, diag, w + 3, x))
            ok = visit()
            diag.pop()
            path.pop()
            if ok:
                return True
        return False

    return None if visit() else worst


def _certify_task(args):
    cfg, leaf, horizon = args
    return extension_death(cfg, leaf, horizon)


# ---------------------------------------------------------------------------
# Reports


def _fmt_prefix(prefix: Sequence[int]) -> str:
    return " ".join(str(x) for x in prefix)


def recognize(p: int, prefix: Sequence[int]) -> str:
    """Name of the algebra whose mu-sequence equals ``prefix`` exactly, or ``""``."""
    f = PrimeField(p)
    idx = range(3, len(prefix) + 3)
    mu = list(prefix)
    if not any(mu):
        return "m"
    if all(x == 1 for x in mu):
        return "m2"
    if p == 3:
        for lam in range(3):
            if mu == [L_lambda_mu(f, lam, i) for i in idx]:
                return f"L({lam})"
    q = p
    while q <= len(prefix) + 2:
        if q > 3 and mu == [q_algebra_mu(f, q, i) for i in idx]:
            return f"q_algebra(q={q})"
        q *= p
    return ""


def first_length(prefix: Sequence[int]) -> int | None:
    """``n + 1`` for the first ``n`` with ``mu_n != 0`` (``None`` if all vanish)."""
    for k, x in enumerate(prefix):
        if x:
            return k + 4
    return None


@dataclass
class ClassificationReport:
    """Outcome of :func:`classify`.

    ``leaves`` are all mu-sequences consistent up to ``N``.  When a
    certification horizon was requested, ``edge`` maps each leaf that cannot
    be continued to the horizon onto the weight at which its last extension
    dies; the remaining leaves are the certified ones.
    """

    p: int
    N: int
    branch: str
    seed: tuple[tuple[int, int], ...]
    leaves: list[tuple[int, ...]]
    dead: list[tuple[tuple[int, ...], int, tuple[int, int, int]]]
    frontier: list[tuple[int, ...]]
    nodes: int
    horizon: int | None = None
    edge: dict = dc_field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return not self.frontier

    def certified(self) -> list[tuple[int, ...]]:
        return [leaf for leaf in self.leaves if leaf not in self.edge]

    def values_at(self, i: int, certified: bool = False) -> list[int]:
        """Distinct ``mu_i`` over surviving leaves."""
        pool = self.certified() if certified else self.leaves
        return sorted({leaf[i - 3] for leaf in pool if len(leaf) > i - 3})

    def first_lengths(self, certified: bool = False) -> list[int | None]:
        """First-constituent lengths among leaves with ``mu_3 = 0``; ``None`` for all-zero."""
        pool = self.certified() if certified else self.leaves
        vals = {first_length(leaf) for leaf in pool if leaf and leaf[0] == 0}
        return sorted(vals, key=lambda v: (v is None, v or 0))

    def groups(self, certified: bool = False) -> list[tuple[str, str, int]]:
        pool = self.certified() if certified else self.leaves
        c: Counter = Counter()
        for leaf in pool:
            if leaf and leaf[0] != 0:
                fl = "none"
            else:
                n = first_length(leaf)
                fl = "all-zero" if n is None else str(n)
            c[(fl, recognize(self.p, leaf) or "-")] += 1

        def key(item):
            (fl, name), _ = item
            return (not fl.isdigit(), int(fl) if fl.isdigit() else 0, fl, name)

        return [(fl, name, n) for (fl, name), n in sorted(c.items(), key=key)]

    def to_dict(self) -> dict:
        cert = self.horizon is not None
        return {
            "p": self.p,
            "N": self.N,
            "branch": self.branch,
            "seed": [list(s) for s in self.seed],
            "complete": self.complete,
            "nodes": self.nodes,
            "horizon": self.horizon,
            "groups": [
                {"first_length": fl, "label": name, "count": n}
                for fl, name, n in self.groups(certified=cert)
            ],
            "leaves": [list(leaf) for leaf in self.leaves],
            "edge": [
                {"prefix": list(leaf), "dies_at": w} for leaf, w in sorted(self.edge.items())
            ],
            "dead": [
                {"prefix": list(pre), "weight": w, "triple": list(t)} for pre, w, t in self.dead
            ],
            "frontier": [list(x) for x in self.frontier],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    def to_text(self) -> str:
        cert = self.horizon is not None
        lines = [
            f"classification p={self.p} N={self.N} branch={self.branch}",
            "seed: " + (", ".join(f"mu_{i}={v}" for i, v in self.seed) or "none"),
            f"nodes: {self.nodes}",
            f"complete: {'yes' if self.complete else 'no'}",
            f"surviving: {len(self.leaves)}",
        ]
        if cert:
            lines.append(
                f"certified to {self.horizon}: {len(self.leaves) - len(self.edge)}"
                f" (edge survivors: {len(self.edge)})"
            )
        for fl, name, n in self.groups(certified=cert):
            lines.append(f"  first_length={fl} label={name} count={n}")
        fls = ["all-zero" if v is None else str(v) for v in self.first_lengths(certified=cert)]
        lines.append("first_lengths: " + (", ".join(fls) or "none"))
        by_w = Counter(w for _, w, _ in self.dead)
        lines.append(f"dead: {len(self.dead)}" + (
            " (" + ", ".join(f"w{w}:{n}" for w, n in sorted(by_w.items())) + ")" if by_w else ""
        ))
        for leaf in self.leaves:
            tag = f"edge(dies at {self.edge[leaf]})" if leaf in self.edge else "leaf"
            lines.append(f"{tag} mu_3..: {_fmt_prefix(leaf)}")
        for pre, w, t in self.dead:
            lines.append(f"dead at {w} triple ({t[0]}, {t[1]}, {t[2]}) mu_3..: {_fmt_prefix(pre)}")
        for pre in self.frontier:
            lines.append(f"frontier mu_3..: {_fmt_prefix(pre)}")
        return "\n".join(lines) + "\n"


def _map(fn, tasks: list, jobs: int) -> list:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, tasks))
    return [fn(t) for t in tasks]


def classify(
    p: int,
    N: int,
    branch: str = "all",
    seed: dict[int, int] | None = None,
    max_nodes: int = 2_000_000,
    jobs: int = 1,
    certify: int = 0,
    raise_on_bound: bool = False,
) -> ClassificationReport:
    """Enumerate every Jacobi-consistent normalised mu-sequence up to ``N``.

    ``branch`` selects ``mu_3 = 0`` (``e3-zero``), ``mu_3 = 1``
    (``e3-nonzero``) or both; ``seed`` pins chosen ``mu_i``.  The first
    ``SPLIT_LEVELS`` free levels are expanded serially and the resulting
    subtrees are searched independently (in worker processes when
    ``jobs > 1``), each with its own ``max_nodes`` budget, so the report does
    not depend on ``jobs``.

    With ``certify > 0`` every leaf is also probed for a consistent
    continuation to ``N + certify``; leaves without one are recorded in
    ``report.edge`` with the weight where their last continuation dies.
    """
    from .scalars import _check_odd_prime

    _check_odd_prime(p)
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}")
    if N < 5:
        raise ValueError("classification needs N >= 5")
    seed_t = tuple(sorted((int(i), int(v) % p) for i, v in (seed or {}).items()))
    cfg = SearchConfig(p, N, branch, seed_t, max_nodes)
    fixed = dict(seed_t)
    free = next((i for i in range(3, N) if i not in fixed), N)
    top = _run_subtree(cfg, (), free - 1 + SPLIT_LEVELS)
    parts = _map(_subtree_task, [(cfg, pre) for pre in top.frontier], jobs)
    leaves, dead, frontier, nodes = list(top.leaves), list(top.dead), [], top.nodes
    for part in parts:
        leaves += part.leaves
        dead += part.dead
        frontier += part.frontier
        nodes += part.nodes
    leaves.sort()
    dead.sort()
    frontier.sort()
    report = ClassificationReport(p, N, branch, seed_t, leaves, dead, frontier, nodes)
    if certify > 0:
        horizon = N + certify
        report.horizon = horizon
        deaths = _map(_certify_task, [(cfg, leaf, horizon) for leaf in leaves], jobs)
        report.edge = {leaf: w for leaf, w in zip(leaves, deaths) if w is not None}
    if raise_on_bound and frontier:
        raise ResourceBoundError(report)
    return report


def subtree_death(p: int, prefix: Sequence[int], horizon: int, max_nodes: int = 2_000_000) -> int | None:
    """Largest death weight below ``prefix`` if every continuation dies before ``horizon``.

    Returns ``None`` when some continuation reaches ``horizon``.
    """
    return extension_death(SearchConfig(p, horizon, "all", (), max_nodes), tuple(prefix), horizon)


# ---------------------------------------------------------------------------
# Reproductions of specific constraint derivations


@dataclass
class VerificationReport:
    name: str
    ok: bool
    lines: list[str] = dc_field(default_factory=list)
    data: dict = dc_field(default_factory=dict)

    def describe(self) -> str:
        return "\n".join([f"{self.name}: {'pass' if self.ok else 'FAIL'}"] + ["  " + x for x in self.lines])


def _mu_prefix(table: Type2Table) -> tuple[int, ...]:
    return tuple(table.mu_sequence())


def verify_presentation_m2(p: int, N: int, certify: int = 10) -> VerificationReport:
    """Seed ``mu_3 = mu_5 = 1`` and check the only consistent continuation is ``m_2``."""
    from .constructions import ConstructionSpec, build

    rep = classify(p, N, "all", {3: 1, 5: 1}, certify=certify)
    m2 = _mu_prefix(build(ConstructionSpec("m2", PrimeField(p), N)))
    cert = rep.certified()
    ok = rep.complete and cert == [m2]
    lines = [
        f"consistent continuations to {N}: {len(rep.leaves)}",
        f"continuing to {rep.horizon}: {len(cert)}",
        f"equals m2: {cert == [m2]}",
    ]
    return VerificationReport(f"presentation of m2 (p={p}, N={N})", ok, lines, {"report": rep})


def admissible_at(p: int, seed: dict[int, int], index: int, window: int) -> list[int]:
    """Values of ``mu_index`` whose branch is consistent with every identity of weight ``<= window``."""
    out = []
    for x in range(p):
        rep = classify(p, window, "all", {**seed, index: x})
        if rep.leaves:
            out.append(x)
    return out


def verify_lambda_branch(p: int, q: int, N: int, death_bound: int = 60) -> VerificationReport:
    """Reproduce the two-way split at ``[e_{2q+1} e_2] = lambda e_{2q+3}``.

    The branch is seeded with ``mu_3 = .. = mu_{q-1} = 0`` and ``mu_q = 1``.
    ``lambda`` is admissible when its branch survives every identity of
    weight ``<= 3q + 3``, the weight of the identities that decide it.
    """
    from .constructions import ConstructionSpec, build

    f = PrimeField(p)
    if not is_power_of(q, p) or q <= 3:
        raise ValueError("need q a power of p with q > 3")
    seed = {i: 0 for i in range(3, q)}
    seed[q] = 1
    window = 3 * q + 3
    adm = admissible_at(p, seed, 2 * q + 1, window)
    half, quarter = f.reduce(-f.inv(2)), f.reduce(-f.inv(4))
    expected = sorted({half, quarter})
    lines = [f"admissible lambda at weight {2 * q + 1} (window {window}): {adm}; expected {expected}"]
    ok = adm == expected

    death = None
    if quarter != half:
        rep = classify(p, death_bound, "all", {**seed, 2 * q + 1: quarter})
        if rep.leaves or rep.frontier:
            lines.append(f"-1/4 branch still alive at {death_bound}: inconclusive")
            ok = False
        else:
            death = max(w for _, w, _ in rep.dead)
            lines.append(f"-1/4 branch dead by weight {death}")

    rep = classify(p, N, "all", {**seed, 2 * q + 1: half})
    qa = _mu_prefix(build(ConstructionSpec("q_algebra", f, N, q=q)))
    match = rep.leaves == [qa]
    lines.append(f"-1/2 branch: {len(rep.leaves)} continuation(s) to {N}; equals q-algebra: {match}")
    ok = ok and match

    qa_table = build(ConstructionSpec("q_algebra", f, N, q=q))
    zero_pattern = all(
        qa_table.mu[2 * t * q + k] == 0
        for t in range(1, N)
        for k in range(2, q)
        if 2 * t * q + k + 2 <= N
    )
    lines.append(f"zero pattern mu_(2tq+k) = 0 for 1 < k < q: {zero_pattern}")
    ok = ok and zero_pattern
    return VerificationReport(
        f"lambda branch (p={p}, q={q}, N={N})",
        ok,
        lines,
        {"admissible": adm, "expected": expected, "death": death},
    )


def verify_p3_family(N: int, certify: int = 10) -> VerificationReport:
    """For each ``lambda`` in ``F_3`` the branch ``mu_3 = mu_4 = 1, mu_5 = lambda`` is ``L(lambda)``.

    Deviating continuations that are consistent up to ``N`` but cannot be
    continued to ``N + certify`` are listed with the weight where they die.
    """
    from .constructions import ConstructionSpec, build

    f = PrimeField(3)
    ok = True
    lines = []
    data = {}
    for lam in range(3):
        rep = classify(3, N, "all", {3: 1, 4: 1, 5: lam}, certify=certify)
        ref = _mu_prefix(build(ConstructionSpec("L_lambda", f, N, lam=lam)))
        cert = rep.certified()
        good = rep.complete and cert == [ref]
        ok = ok and good
        edge = ", ".join(
            f"deviates at mu_{_first_diff(leaf, ref)} dies at {w}" for leaf, w in sorted(rep.edge.items())
        )
        lines.append(
            f"lambda={lam}: {len(rep.leaves)} consistent to {N}, {len(cert)} continue to "
            f"{rep.horizon}, equals L({lam}): {cert == [ref]}" + (f"; edge: {edge}" if edge else "")
        )
        data[lam] = rep
    return VerificationReport(f"p=3 family (N={N})", ok, lines, data)


def _first_diff(a: Sequence[int], b: Sequence[int]) -> int:
    for k, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return k + 3
    return -1
