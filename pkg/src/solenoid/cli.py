"""Command-line front end: ``solenoid invariants | compare | action``.

Reports are JSON with sorted keys, so identical inputs give identical bytes.

Exit codes: 0 success or Holds, 1 invalid input, 2 budget exhausted,
3 Fails, 4 UnknownAtDepth.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .chains import GroupChain, kernel_report, normal_core, truncate_chain, verify_chain
from .cosets import TruncatedFiberPoint, act_on_point, basepoint
from .equivalence import (
    ConjugacyWitness,
    InterleavingWitness,
    ReturnWitness,
    Verdict,
    check_conjugate_equivalent,
    check_equivalent,
    check_return_equivalent,
    normality_certificate,
    verify_conjugacy,
    verify_interleaving,
)
from .errors import (
    BadIndex,
    BadWord,
    EnumerationBudgetExceeded,
    FamilyMismatch,
    InvalidSpec,
    NotDescending,
    OrbitBudgetExceeded,
    SearchBudgetExceeded,
    SolenoidError,
)
from .gallery import GallerySpec, build
from .groups import FreeAbelian, GroupElement, GroupFamily, Word, evaluate_word
from .steinitz import chain_steinitz

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_FAILS, EXIT_UNKNOWN = 0, 1, 2, 3, 4
BUDGET_ERRORS = (EnumerationBudgetExceeded, OrbitBudgetExceeded, SearchBudgetExceeded)
VERDICT_EXIT = {"Holds": EXIT_OK, "Fails": EXIT_FAILS, "UnknownAtDepth": EXIT_UNKNOWN}

_TOKEN = re.compile(r"^\s*([A-Za-z][A-Za-z0-9]*)\s*(?:\^\s*([+-]?\d+))?\s*$")


def generator_aliases(family: GroupFamily) -> dict[str, int]:
    names = {n: i for i, n in enumerate(family.generator_names())}
    if isinstance(family, FreeAbelian) and family.rank == 1:
        names["g"] = 0
    return names


def parse_word(family: GroupFamily, text: str) -> Word:
    """``"a^3,b^-1"`` -> ``[(0, 3), (1, -1)]``; the empty string is the empty word."""
    names = generator_aliases(family)
    word = []
    if not text.strip():
        return word
    for tok in text.split(","):
        m = _TOKEN.match(tok)
        if not m or m.group(1) not in names:
            raise BadWord(f"bad token {tok!r}; generators are {', '.join(sorted(names))}")
        word.append((names[m.group(1)], int(m.group(2) or 1)))
    return word


def render_word(family: GroupFamily, word: Word) -> str:
    names = family.generator_names()
    return ",".join(names[s] if e == 1 else f"{names[s]}^{e}" for s, e in word)


def _payload_json(p):
    if isinstance(p, tuple):
        return [_payload_json(x) for x in p]
    return p


def _element_from_json(family: GroupFamily, data) -> GroupElement:
    return family.element(data)


def load_spec(path: str) -> tuple[GroupChain, dict]:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as e:
        raise InvalidSpec(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise InvalidSpec(f"{path} is not valid JSON: {e}") from e
    return build(GallerySpec.from_json(doc)), doc


def _depth(doc: dict, flag: int | None) -> int:
    depth = flag if flag is not None else doc.get("depth")
    if not isinstance(depth, int) or isinstance(depth, bool) or depth < 1:
        raise InvalidSpec("depth must be a positive integer (from --depth or the spec file)")
    return depth


def _verified(C: GroupChain, depth: int) -> list[int]:
    try:
        return verify_chain(C, depth).indices
    except NotDescending as e:
        raise InvalidSpec(f"levels do not descend at level {e.level}") from e
    except BadIndex as e:
        raise InvalidSpec(f"chain has fewer than {depth} levels") from e


def _kernel_candidates(family: GroupFamily) -> list[Word]:
    k = len(family.generator_names())
    words = [[(i, 1)] for i in range(k)] + [[(i, 2)] for i in range(k)]
    words += [[(i, 1), (j, 1)] for i in range(k) for j in range(i + 1, k)]
    return words


def invariants_report(C: GroupChain, doc: dict, depth: int) -> dict:
    fam = C.family
    indices = _verified(C, depth)
    cands = _kernel_candidates(fam)
    elems = [evaluate_word(fam, w) for w in cands]
    kr = kernel_report(C, depth, elems)
    survivors = [render_word(fam, w) for w, g in zip(cands, elems) if g in kr.surviving_generators]
    cores = []
    for l in range(depth // 2 + 1):
        core = normal_core(C, l)
        cores.append({"level": l, "core": core.describe() if core.closed_form is not None
                      else f"action-kernel of level {l}", "index": core.index})
    norm = normality_certificate(C, depth)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "invariants",
        "chain": {
            "name": C.name,
            "family": fam.name,
            "kind": doc.get("kind"),
            "depth": depth,
            "indices": indices,
            "levels": [C.level(l).describe() for l in range(depth + 1)],
        },
        "kernel": {
            "label": kr.label,
            "candidates": [render_word(fam, w) for w in cands],
            "surviving": survivors,
        },
        "cores": cores,
        "normality": {
            "verdict": norm.status.value,
            "certificate": norm.certificate,
            "pairs": [list(p) for p in norm.witness.pairs] if norm.witness else [],
        },
    }
    if isinstance(fam, FreeAbelian) and fam.rank == 1:
        report["steinitz"] = chain_steinitz(C).render()
    return report


def witness_json(w) -> dict | None:
    if w is None:
        return None
    if isinstance(w, InterleavingWitness):
        return {"type": "interleaving", "pairs": [list(p) for p in w.pairs], "depth": w.depth}
    if isinstance(w, ConjugacyWitness):
        return {"type": "conjugacy", "elements": [_payload_json(g.payload) for g in w.elements],
                "interleaving": witness_json(w.interleaving)}
    if isinstance(w, ReturnWitness):
        return {"type": "return", "offsets": list(w.offsets), "inner": witness_json(w.inner)}
    raise TypeError(f"cannot serialize {type(w).__name__}")


def verify_witness_json(A: GroupChain, B: GroupChain, data: dict) -> bool:
    """Rebuild a report's witness block and re-check it independently of the search."""
    kind = data["type"]
    if kind == "interleaving":
        w = InterleavingWitness(tuple(tuple(p) for p in data["pairs"]), data["depth"])
        return verify_interleaving(A, B, w)
    if kind == "conjugacy":
        elems = tuple(_element_from_json(A.family, e) for e in data["elements"])
        inner = data["interleaving"]
        w = InterleavingWitness(tuple(tuple(p) for p in inner["pairs"]), inner["depth"])
        return verify_conjugacy(A, B, ConjugacyWitness(elems, w))
    if kind == "return":
        k, m = data["offsets"]
        return verify_witness_json(truncate_chain(A, k), truncate_chain(B, m), data["inner"])
    return False


def compare_report(A: GroupChain, B: GroupChain, relation: str, depth: int) -> tuple[dict, Verdict]:
    if A.family != B.family:
        raise FamilyMismatch(f"{A.family.name} vs {B.family.name}")
    _verified(A, depth)
    _verified(B, depth)
    if relation == "equiv":
        v = check_equivalent(A, B, depth)
    elif relation == "conj":
        v = check_conjugate_equivalent(A, B, depth)
    else:
        v = check_return_equivalent(A, B, depth)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "compare",
        "relation": relation,
        "depth": depth,
        "a": A.name,
        "b": B.name,
        "verdict": v.status.value,
        "certificate": v.certificate,
        "witness": witness_json(v.witness),
    }
    return report, v


def _start_point(C: GroupChain, depth: int, start: str) -> TruncatedFiberPoint:
    if start == "basepoint":
        return basepoint(C, depth)
    try:
        coords = tuple(int(x) for x in start.split(","))
    except ValueError:
        raise InvalidSpec(f"--start must be 'basepoint' or comma-separated coset indices") from None
    x = TruncatedFiberPoint(depth, coords, C)
    if len(coords) != depth + 1 or any(not 0 <= c < C.table(l).index for l, c in enumerate(coords)):
        raise InvalidSpec(f"start point needs {depth + 1} valid coset indices")
    if not x.is_compatible():
        raise InvalidSpec("start point is not compatible with the bonding maps")
    return x


def action_report(C: GroupChain, depth: int, text: str, start: str) -> dict:
    word = parse_word(C.family, text)
    indices = _verified(C, depth)
    x = _start_point(C, depth, start)
    trace = [list(x.coords)]
    for letter in reversed(word):
        x = act_on_point(C, [letter], x)
        trace.append(list(x.coords))
    fixes = [C.table(l).act(word, 0) == 0 for l in range(depth + 1)]
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "action",
        "chain": C.name,
        "depth": depth,
        "indices": indices,
        "word": render_word(C.family, word),
        "start": trace[0],
        "end": trace[-1],
        "trace": trace,
        "fixes_basepoint": fixes,
        "end_representatives": [_payload_json(C.table(l).representatives[c].payload)
                                for l, c in enumerate(trace[-1])],
    }


def dump(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _emit(report: dict, out: str | None):
    text = dump(report)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_invariants(args) -> int:
    C, doc = load_spec(args.spec)
    _emit(invariants_report(C, doc, _depth(doc, args.depth)), args.json)
    return EXIT_OK


def cmd_compare(args) -> int:
    A, da = load_spec(args.spec_a)
    B, _ = load_spec(args.spec_b)
    report, v = compare_report(A, B, args.relation, _depth(da, args.depth))
    _emit(report, args.json)
    return VERDICT_EXIT[v.status.value]


def cmd_action(args) -> int:
    C, doc = load_spec(args.spec)
    _emit(action_report(C, _depth(doc, args.depth), args.word, args.start), args.json)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="solenoid", description="Finite-level invariants of group chains.")
    sub = p.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariants", help="indices, kernel, cores, normality, Steinitz degree")
    inv.add_argument("spec")
    inv.add_argument("--depth", type=int)
    inv.add_argument("--json", metavar="OUT", help="write the report here instead of stdout")
    inv.set_defaults(func=cmd_invariants)

    cmp_ = sub.add_parser("compare", help="decide a relation between two chains at bounded depth")
    cmp_.add_argument("spec_a")
    cmp_.add_argument("spec_b")
    cmp_.add_argument("--relation", choices=("equiv", "conj", "return"), default="equiv")
    cmp_.add_argument("--depth", type=int)
    cmp_.add_argument("--json", metavar="OUT")
    cmp_.set_defaults(func=cmd_compare)

    act = sub.add_parser("action", help="act by a word on a truncated fiber point")
    act.add_argument("spec")
    act.add_argument("--depth", type=int)
    act.add_argument("--word", default="", help='comma-separated tokens, e.g. "a^3,b^-1"')
    act.add_argument("--start", default="basepoint", help="'basepoint' or comma-separated coset indices")
    act.add_argument("--json", metavar="OUT")
    act.set_defaults(func=cmd_action)
    return p


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except BUDGET_ERRORS as e:
        print(f"solenoid: budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidSpec, BadWord, FamilyMismatch) as e:
        print(f"solenoid: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    except SolenoidError as e:
        print(f"solenoid: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
