"""Ready-made group chains for the worked examples, with closed-form metadata.

Metadata keys attached to chains (all optional):

* ``steinitz``: the supernatural degree of the chain.
* ``kernel_generators``: elements claimed to lie in every level.
* ``relations``: words claimed to act trivially on every level.
* ``core``: ``l -> Subgroup`` claimed to equal the normal core of level ``l``.

:func:`metadata_oracle_check` recomputes each claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from . import hnf
from .chains import GroupChain, kernel_report, normal_core, verify_chain
from .cosets import relation_acts_trivially
from .errors import InvalidFamily, InvalidSpec, InvalidSubgroup, OracleMismatch
from .groups import FreeAbelian, GroupElement, Heisenberg, KleinBottle, SemidirectZnF, _det
from .steinitz import FiniteSupport, IndexSequence, chain_steinitz, factorize, nth_prime, valuation
from .subgroups import HeisenbergPattern, KleinPattern, Lattice, SemidirectPattern

KINDS = ("vietoris", "lattice", "klein", "heisenberg_phi", "heisenberg_dyer",
         "semidirect_scale", "patterns")

FAMILY_NAMES = {
    "vietoris": "free_abelian",
    "lattice": "free_abelian",
    "klein": "klein",
    "heisenberg_phi": "heisenberg",
    "heisenberg_dyer": "heisenberg",
    "semidirect_scale": "semidirect",
}


@dataclass(frozen=True)
class GallerySpec:
    kind: str
    parameters: dict = field(default_factory=dict, hash=False)
    family: str | None = None

    @classmethod
    def vietoris(cls, multiplier: int | None = None, steps=None, distinct_primes: bool = False):
        params = {}
        if multiplier is not None:
            params["multiplier"] = multiplier
        if steps is not None:
            params["steps"] = list(steps)
        if distinct_primes:
            params["distinct_primes"] = True
        return cls("vietoris", params)

    @classmethod
    def lattice(cls, matrix):
        return cls("lattice", {"matrix": [list(r) for r in matrix]})

    @classmethod
    def klein(cls, d: int = 2):
        return cls("klein", {"d": d})

    @classmethod
    def heisenberg_phi(cls):
        return cls("heisenberg_phi", {})

    @classmethod
    def heisenberg_dyer(cls, p: int = 2, q: int = 3):
        return cls("heisenberg_dyer", {"p": p, "q": q})

    @classmethod
    def semidirect_scale(cls, n: int, table, matrices, p: int):
        return cls("semidirect_scale", {"n": n, "table": table, "matrices": matrices, "p": p})

    def to_json(self) -> dict:
        return {"schema_version": 1, "family": self.family or FAMILY_NAMES.get(self.kind),
                "kind": self.kind, "parameters": self.parameters}

    @classmethod
    def from_json(cls, doc: dict) -> GallerySpec:
        if not isinstance(doc, dict):
            raise InvalidSpec("spec must be a JSON object")
        if doc.get("schema_version", 1) != 1:
            raise InvalidSpec(f"unsupported schema_version {doc.get('schema_version')!r}")
        kind = doc.get("kind")
        if kind not in KINDS:
            raise InvalidSpec(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
        family = doc.get("family")
        expected = FAMILY_NAMES.get(kind)
        if family is not None and expected is not None and family != expected:
            raise InvalidSpec(f"kind {kind!r} lives in family {expected!r}, not {family!r}")
        params = doc.get("parameters", {})
        if not isinstance(params, dict):
            raise InvalidSpec("parameters must be an object")
        return cls(kind, params, family)


def _int(params, key, low=None, default=None):
    v = params.get(key, default)
    if v is None or isinstance(v, bool) or not isinstance(v, int):
        raise InvalidSpec(f"parameter {key!r} must be an integer")
    if low is not None and v < low:
        raise InvalidSpec(f"parameter {key!r} must be >= {low}, got {v}")
    return v


def build(spec: GallerySpec) -> GroupChain:
    builder = {
        "vietoris": _vietoris,
        "lattice": _lattice,
        "klein": _klein,
        "heisenberg_phi": _heisenberg_phi,
        "heisenberg_dyer": _heisenberg_dyer,
        "semidirect_scale": _semidirect_scale,
        "patterns": _patterns,
    }.get(spec.kind)
    if builder is None:
        raise InvalidSpec(f"unknown kind {spec.kind!r}")
    try:
        return builder(dict(spec.parameters), spec.family)
    except (InvalidFamily, InvalidSubgroup) as e:
        raise InvalidSpec(str(e)) from e


def _vietoris(p, _family):
    Z = FreeAbelian(1)
    chosen = [k for k in ("multiplier", "steps", "distinct_primes") if p.get(k)]
    if len(chosen) != 1:
        raise InvalidSpec("vietoris needs exactly one of multiplier, steps, distinct_primes")
    if "multiplier" in chosen:
        m = _int(p, "multiplier", 2)
        return GroupChain(Z, lambda l: Lattice.scalar(Z, m**l),
                          {"steinitz": FiniteSupport.infinite_powers(m)}, name=f"vietoris({m})")
    if "steps" in chosen:
        steps = p["steps"]
        if not isinstance(steps, list) or not steps or not all(
                isinstance(s, int) and not isinstance(s, bool) and s >= 2 for s in steps):
            raise InvalidSpec("steps must be a non-empty list of integers >= 2")
        r = len(steps)
        primes = {q for s in steps for q in factorize(s)}
        return GroupChain(
            Z, lambda l: Lattice.scalar(Z, prod(steps[i % r] for i in range(l))),
            {"steinitz": FiniteSupport(tuple((q, float("inf")) for q in primes))},
            name=f"vietoris(steps={steps})")
    return GroupChain(
        Z, lambda l: Lattice.scalar(Z, prod(nth_prime(i + 1) for i in range(l))),
        {"steinitz": IndexSequence(lambda i: nth_prime(i + 1), bound=1, name="distinct primes")},
        name="vietoris(distinct primes)")


def _lattice(p, _family):
    phi = p.get("matrix")
    if (not isinstance(phi, list) or not phi
            or not all(isinstance(r, list) and len(r) == len(phi) for r in phi)
            or not all(isinstance(x, int) for r in phi for x in r)):
        raise InvalidSpec("matrix must be a square integer matrix")
    k = len(phi)
    det = _det(phi)
    if det == 0:
        raise InvalidSpec("matrix is singular")
    fam = FreeAbelian(k)
    levels: list[hnf.Basis] = [hnf.scalar(1, k)]

    def level(l):
        while len(levels) <= l:
            # reduce at every step so entries track the determinant, not the raw power
            levels.append(hnf.image(phi, levels[-1]))
        return Lattice(fam, levels[l])

    meta = {"steinitz": FiniteSupport.infinite_powers(abs(det))}
    return GroupChain(fam, level, meta, name=f"lattice({phi})")


def _klein(p, _family):
    d = _int(p, "d", 2)
    K = KleinBottle()
    b = GroupElement(K, (0, 1))

    def core(l):
        m = d**l
        return KleinPattern(m, even=m > 2)

    meta = {
        "steinitz": FiniteSupport.infinite_powers(d),
        "kernel_generators": [b],
        "relations": [[(1, 1), (0, 1), (1, -1), (0, 1)], [(1, 2)]],
        "core": core,
    }
    return GroupChain(K, lambda l: KleinPattern(d**l), meta, name=f"klein({d})")


def _heisenberg_phi(_p, _family):
    meta = {
        "steinitz": FiniteSupport.infinite_powers(2),
        "core": lambda l: HeisenbergPattern(4**l, 4**l, 4**l),
    }
    return GroupChain(Heisenberg(), lambda l: HeisenbergPattern(2**l, 2**l, 4**l), meta,
                      name="heisenberg_phi")


def _heisenberg_dyer(p, _family):
    a, b = _int(p, "p", 2), _int(p, "q", 2)
    if a == b:
        raise InvalidSpec("Dyer chain needs p != q")
    # explicit patterns per level; closure d_c | d_a d_b is checked by the pattern
    return GroupChain(Heisenberg(), lambda l: HeisenbergPattern(a**l, b**l, a**l),
                      {"steinitz": FiniteSupport.infinite_powers(a * b)},
                      name=f"heisenberg_dyer({a},{b})")


def _semidirect_family(p) -> SemidirectZnF:
    n = _int(p, "n", 1)
    table, mats = p.get("table"), p.get("matrices")
    if not isinstance(table, list) or not isinstance(mats, list):
        raise InvalidSpec("semidirect families need a table and matrices")
    return SemidirectZnF(n, table, mats, p.get("fgens"))


def _semidirect_scale(p, _family):
    fam = _semidirect_family(p)
    q = _int(p, "p", 2)
    allF = frozenset(range(fam.order))
    zero = (0,) * fam.n
    kernel = [GroupElement(fam, (zero, f)) for f in sorted(allF) if f != fam.f_identity]
    meta = {"steinitz": FiniteSupport.infinite_powers(q), "kernel_generators": kernel}
    return GroupChain(fam, lambda l: SemidirectPattern(fam, hnf.scalar(q**l, fam.n), allF), meta,
                      name=f"semidirect_scale(p={q})")


def _patterns(p, family):
    """Explicit finite list of level patterns; the chain stops at the last one."""
    levels = p.get("levels")
    if not isinstance(levels, list) or not levels:
        raise InvalidSpec("patterns need a non-empty list 'levels'")
    if family == "free_abelian":
        fam = FreeAbelian(_int(p, "rank", 1, default=1))

        def make(x):
            if isinstance(x, int):
                return Lattice.scalar(fam, x)
            return Lattice.from_vectors(fam, x)
    elif family == "heisenberg":
        fam = Heisenberg()

        def make(x):
            return HeisenbergPattern(*x)
    elif family == "klein":
        fam = KleinBottle()

        def make(x):
            return KleinPattern(x["d"], bool(x.get("even", False))) if isinstance(x, dict) else KleinPattern(x)
    elif family == "semidirect":
        fam = _semidirect_family(p)

        def make(x):
            return SemidirectPattern(fam, hnf.hnf(x["vectors"], fam.n), frozenset(x["fsub"]))
    else:
        raise InvalidSpec(f"patterns need a family, got {family!r}")
    try:
        subs = [make(x) for x in levels]
    except (TypeError, KeyError, ValueError) as e:
        if isinstance(e, (InvalidSubgroup, InvalidSpec)):
            raise
        raise InvalidSpec(f"malformed level pattern: {e}") from e
    return GroupChain(fam, subs.__getitem__, name="patterns", max_depth=len(subs) - 1)


def metadata_oracle_check(C: GroupChain, depth: int) -> dict[str, str]:
    """Recompute every closed-form claim in ``C.metadata`` up to ``depth``."""
    report: dict[str, str] = {}
    if C.verified_depth < depth:
        verify_chain(C, depth)
    meta = C.metadata
    if "kernel_generators" in meta:
        gens = meta["kernel_generators"]
        rep = kernel_report(C, depth, gens)
        if len(rep.surviving_generators) != len(gens):
            lost = [g.payload for g in gens if g not in rep.surviving_generators]
            raise OracleMismatch(f"kernel_generators: {lost} leave some level <= {depth}")
        report["kernel_generators"] = f"all claimed generators lie in every level {rep.label}"
    if "relations" in meta:
        for w in meta["relations"]:
            for l in range(depth + 1):
                if not relation_acts_trivially(C, l, w):
                    raise OracleMismatch(f"relations: {w} moves a coset of level {l}")
        report["relations"] = f"{len(meta['relations'])} relations act trivially up to level {depth}"
    if "core" in meta:
        for l in range(depth + 1):
            core, claim = normal_core(C, l), meta["core"](l)
            if not (all(core.contains(g) for g in claim.generators()) and claim.index == core.index):
                raise OracleMismatch(f"core: level {l} core is not {claim.describe()}")
        report["core"] = f"core formula matches the action kernel up to level {depth}"
    if "steinitz" in meta:
        s = meta["steinitz"]
        steps = [C.index(l + 1) // C.index(l) for l in range(depth)]
        if isinstance(s, FiniteSupport):
            exps = s.as_dict()
            for q in {q for m in steps for q in factorize(m)}:
                seen = sum(valuation(m, q) for m in steps)
                if q not in exps or seen > exps[q]:
                    raise OracleMismatch(f"steinitz: prime {q} exceeds its exponent in {s.render()}")
        elif s.prefix(depth) != steps:
            raise OracleMismatch(f"steinitz: step indices {steps} differ from {s.prefix(depth)}")
        if chain_steinitz(C) is not s:
            raise OracleMismatch("steinitz: chain does not report its closed form")
        report["steinitz"] = f"{s.render()} consistent with step indices {steps}"
    return report
