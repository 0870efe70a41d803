"""Command-line interface: ``jokerlab <command> ...``.

Exit status: 0 on success, 1 when a verification check fails, 2 on usage
errors (unknown names, unreadable files, malformed input).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import __version__
from .ffield import F4

CACHE_ENV = "JOKERLAB_CACHE_DIR"


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _cache_dir(args) -> str | None:
    return args.cache_dir or os.environ.get(CACHE_ENV) or None


def _matrix_text(m) -> str:
    return m.to_text()


def _indent(text: str, pad: str = "    ") -> str:
    return "\n".join(pad + line for line in text.splitlines())


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    from .verify import verify_paper

    report = verify_paper(args.filter)
    if not report.checks:
        raise UsageError(f"no check id starts with {args.filter!r}")
    _emit(args, report.to_json(), report.to_text())
    return 0 if report.ok else 1


def _load_module(name: str):
    from .gmod import BUILTIN_NAMES, builtin

    if name not in BUILTIN_NAMES:
        raise UsageError(f"unknown module {name!r}; valid names: {', '.join(BUILTIN_NAMES)}")
    return builtin(name)


def cmd_module(args) -> int:
    from .gmod import InconsistentActionError

    m = _load_module(args.name)
    gens = m.generator_matrices()
    status = None
    if args.check:
        try:
            m.check_action()
            status = "ok"
        except InconsistentActionError as exc:
            status = f"fails: {exc.relation}"
    payload = {
        "name": m.name,
        "group": m.group.name,
        "field": m.field.name,
        "dim": m.dim,
        "generators": {g: _matrix_text(a) for g, a in gens.items()},
    }
    if status is not None:
        payload["action_law"] = status
    lines = [f"{m.name}: dimension {m.dim} over {m.field.name}[{m.group.name}]"]
    for g, a in gens.items():
        lines.append(f"  {g}:")
        lines.append(_indent(_matrix_text(a)))
    if status is not None:
        lines.append(f"  action law: {status}")
    _emit(args, payload, "\n".join(lines))
    return 0 if status in (None, "ok") else 1


def _resolution(args, length: int):
    from .cohom import resolution
    from .groups import make_q8

    return resolution(F4, make_q8(), length, _cache_dir(args))


def cmd_ext(args) -> int:
    from .cohom import cup, hom_identification, named_classes

    if args.max_degree < 1:
        raise UsageError("--max-degree must be at least 1")
    res = _resolution(args, max(args.max_degree, 4))
    nc = named_classes(res)
    u, v = nc["u"], nc["v"]
    rel = {
        "u^2+uv+v^2": (cup(res, u, u) + cup(res, u, v) + cup(res, v, v)).is_zero(),
        "u^3": cup(res, cup(res, u, u), u).is_zero(),
        "v^3": cup(res, cup(res, v, v), v).is_zero(),
        "u^2v+uv^2": (cup(res, cup(res, u, u), v) + cup(res, u, cup(res, v, v))).is_zero(),
    }
    hu, hv = hom_identification(res, u), hom_identification(res, v)
    betti = res.ranks[: args.max_degree + 1]
    payload = {"betti": betti, "relations_zero": rel, "u": hu, "v": hv}
    lines = ["degree  " + " ".join(f"{s:>2}" for s in range(len(betti))), "dim     " + " ".join(f"{b:>2}" for b in betti)]
    lines += [f"{name} = 0: {ok}" for name, ok in rel.items()]
    lines.append("g      " + " ".join(f"{n:>3}" for n in hu))
    lines.append("u(g)   " + " ".join(f"{F4.format(x):>3}" for x in hu.values()))
    lines.append("v(g)   " + " ".join(f"{F4.format(x):>3}" for x in hv.values()))
    _emit(args, payload, "\n".join(lines))
    return 0


_CLASS = re.compile(r"^(w2|w|1)?\*?([uv])$")


def parse_degree_one(text: str, u, v):
    """'u+w2v', 'w*u+v', ... -> the class in Ext^1."""
    acc = None
    for part in text.replace(" ", "").split("+"):
        m = _CLASS.match(part)
        if not m:
            raise UsageError(f"cannot parse class {text!r}; use sums like u+w2v")
        coeff = F4.parse(m.group(1)) if m.group(1) else 1
        term = (u if m.group(2) == "u" else v).scale(coeff)
        acc = term if acc is None else acc + term
    return acc


def _degree_two_name(c, res) -> str:
    from .verify import _fmt

    return _fmt(c, res)


def cmd_massey(args) -> int:
    from .cohom import MasseyUndefinedError, massey_triple, named_classes

    res = _resolution(args, 6)
    nc = named_classes(res)
    u, v = nc["u"], nc["v"]
    a, b, c = (parse_degree_one(t, u, v) for t in (args.a, args.b, args.c))
    try:
        m = massey_triple(res, a, b, c)
    except MasseyUndefinedError as exc:
        payload = {"defined": False, "reason": str(exc)}
        _emit(args, payload, f"<{args.a}, {args.b}, {args.c}> is not defined: {exc}")
        return 0
    rep = _degree_two_name(m.representative, res)
    ind = [_degree_two_name(x, res) for x in m.indeterminacy_classes()]
    payload = {"defined": True, "representative": rep, "indeterminacy": ind}
    text = f"<{args.a}, {args.b}, {args.c}> = {rep} + span{{{', '.join(ind)}}}"
    _emit(args, payload, text)
    return 0


def cmd_endotrivial(args) -> int:
    from .gmod import endotrivial_report

    m = _load_module(args.module)
    rep = endotrivial_report(m)
    payload = {
        "module": args.module,
        "endotrivial": rep.verdict,
        "direct": rep.direct,
        "by_restriction": rep.by_restriction,
        "free_rank": rep.free_rank,
        "restrictions": rep.restrictions,
    }
    text = "true" if rep.verdict else "false"
    if args.verbose:
        text += f"\n  direct: {rep.direct}, by restriction: {rep.by_restriction}, free rank of End: {rep.free_rank}"
    _emit(args, payload, text)
    return 0


def cmd_teichmuller(args) -> int:
    from .morava import q8_elements, teichmuller_digits

    els = q8_elements(args.precision)
    if args.element not in els:
        raise UsageError(f"unknown element {args.element!r}; valid names: {', '.join(els)}")
    if not 1 <= args.digits <= 2 * args.precision:
        raise UsageError(f"--digits must be between 1 and {2 * args.precision} at this precision")
    digits = [F4.format(d.residue().value) for d in teichmuller_digits(els[args.element], args.digits)]
    _emit(args, {"element": args.element, "digits": digits}, ", ".join(digits))
    return 0


def cmd_coaction(args) -> int:
    from .morava import (
        BUILTIN_COACTIONS,
        CoactionSpecError,
        builtin_coaction,
        coaction_action,
        complete_coaction,
        parse_coaction_spec,
    )

    if args.spec in BUILTIN_COACTIONS:
        spec = builtin_coaction(args.spec)
    else:
        path = Path(args.spec)
        if not path.exists():
            raise UsageError(
                f"{args.spec!r} is neither a file nor a built-in coaction ({', '.join(BUILTIN_COACTIONS)})"
            )
        try:
            spec = parse_coaction_spec(json.loads(path.read_text()), path.stem)
        except (json.JSONDecodeError, CoactionSpecError) as exc:
            raise UsageError(f"bad coaction file: {exc}") from exc
    names = ["i", "j"] if not args.all else None
    if spec.unknown_slots():
        comps = complete_coaction(spec)
        payload = {
            "label": spec.label,
            "completions": [
                {
                    "assignment": c.describe(),
                    "center_trivial": c.center_trivial,
                    "matrices": {g: _matrix_text(x) for g, x in c.matrices.items() if names is None or g in names},
                }
                for c in comps
            ],
        }
        lines = [f"{spec.label}: {len(comps)} completion(s) giving a Q8-action"]
        for c in comps:
            lines.append(f"  {c.describe()}  (-1 acts trivially: {c.center_trivial})")
        if not comps:
            lines.append("  the known entries already violate the group law")
        _emit(args, payload, "\n".join(lines))
        return 0
    mats = coaction_action(spec, args.precision, args.convention)
    shown = {g: x for g, x in mats.items() if names is None or g in names}
    payload = {"label": spec.label, "convention": args.convention, "matrices": {g: _matrix_text(x) for g, x in shown.items()}}
    lines = [f"{spec.label} ({args.convention} action, basis {', '.join(spec.names)})"]
    for g, x in shown.items():
        lines.append(f"  {g}:")
        lines.append(_indent(_matrix_text(x)))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_hecke(args) -> int:
    from .hecke import G24_BASIS_LABELS, expected_g24_basis, format_laurent_matrix, g24_matrices, g24_setup, hecke_basis

    if (args.group.lower(), args.subgroup.lower()) != ("g24", "c3"):
        raise UsageError("only --group g24 --subgroup c3 is available")
    basis = hecke_basis(g24_setup())
    if [b.coeffs for b in basis] != [b.coeffs for b in expected_g24_basis()]:
        raise AssertionError("computed Hecke basis differs from the expected ordering")
    labels = list(G24_BASIS_LABELS)
    mats = g24_matrices()
    payload = {
        "basis": labels,
        "fixed_basis": ["z0", "z4", "z6"],
        "matrices": [format_laurent_matrix(m) for m in mats],
    }
    lines = []
    for b, m in zip(labels, mats):
        lines.append(f"{b}:")
        lines.append(_indent(format_laurent_matrix(m)))
    _emit(args, payload, "\n".join(lines))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cache-dir", help=f"directory for cached resolutions (default: ${CACHE_ENV})")

    p = argparse.ArgumentParser(prog="jokerlab", description="Exact computations with Q8 and G24 modules over F4.")
    p.add_argument("--version", action="version", version=f"jokerlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="run the verification suite")
    s.add_argument("--filter", help="only checks whose id starts with this prefix")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("module", parents=[common], help="show a built-in module")
    s.add_argument("name")
    s.add_argument("--check", action="store_true", help="verify the action law")
    s.set_defaults(func=cmd_module)

    s = sub.add_parser("ext", parents=[common], help="Ext over F4[Q8]")
    s.add_argument("--max-degree", type=int, default=8)
    s.set_defaults(func=cmd_ext)

    s = sub.add_parser("massey", parents=[common], help="triple Massey product of degree-1 classes")
    s.add_argument("a", nargs="?", default="u+w2v")
    s.add_argument("b", nargs="?", default="u+wv")
    s.add_argument("c", nargs="?", default="u+w2v")
    s.set_defaults(func=cmd_massey)

    s = sub.add_parser("endotrivial", parents=[common], help="endotriviality of a built-in module")
    s.add_argument("--module", required=True)
    s.add_argument("--verbose", "-v", action="store_true")
    s.set_defaults(func=cmd_endotrivial)

    s = sub.add_parser("teichmuller", parents=[common], help="Teichmüller digits of a Q8 element")
    s.add_argument("--element", required=True)
    s.add_argument("--digits", type=int, default=3)
    s.add_argument("--precision", type=int, default=8)
    s.set_defaults(func=cmd_teichmuller)

    s = sub.add_parser("coaction", parents=[common], help="evaluate a coaction to matrices")
    s.add_argument("--spec", required=True, help="JSON file or built-in name")
    s.add_argument("--convention", choices=("right", "left"), default="right")
    s.add_argument("--precision", type=int, default=8)
    s.add_argument("--all", action="store_true", help="all eight elements, not only i and j")
    s.set_defaults(func=cmd_coaction)

    s = sub.add_parser("hecke", parents=[common], help="skew Hecke algebra of G24 over C3")
    s.add_argument("--group", default="g24")
    s.add_argument("--subgroup", default="c3")
    s.set_defaults(func=cmd_hecke)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"jokerlab {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
