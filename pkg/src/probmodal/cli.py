"""``probmodal`` command line.

Exit status: 0 on success, 1 when the model or verdict is negative
(invalid model, false equivalence, non-additive conversion), 2 on usage
and parse errors.
"""

import argparse
import json
import sys
import warnings

from . import documents
from . import worldsets as ws
from .belief import (
    BeliefNbhdModel,
    additivity,
    core,
    elementary_sets,
    is_well_defined,
    satisfies_n,
    truth_set_n,
    validate_belief,
)
from .equiv import CorpusTooLarge, gen_belief, gen_kripke, modally_equivalent
from .formula import FormulaSyntaxError, parse_principal, render
from .kripke import UnknownAtom, UnknownWorld, pr_measure, satisfies_k, truth_set_k, validate_kripke
from .rationals import format_rational
from .transform import NotAdditive, PolicyError, belief_to_kripke, kripke_to_belief

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Out:
    """Collects the JSON payload or prints text, depending on ``--json``."""

    def __init__(self, args):
        self.json = args.json
        self.decimals = args.decimals
        self.payload = {}
        self.stream = sys.stdout

    def num(self, x):
        return format_rational(x, decimals=self.decimals)

    def line(self, text=""):
        if not self.json:
            print(text, file=self.stream)

    def set(self, **fields):
        self.payload.update(fields)

    def finish(self):
        if self.json:
            print(json.dumps(self.payload, indent=2))


def _kind(model):
    return "belief" if isinstance(model, BeliefNbhdModel) else "kripke"


def _validate(model):
    return validate_belief(model) if isinstance(model, BeliefNbhdModel) else validate_kripke(model)


def _world_set(mask, model):
    return [model.worlds[i] for i in ws.members(mask)]


def _load_valid(path, out):
    model = documents.read(path)
    report = _validate(model)
    if not report.valid:
        out.set(valid=False, violations=report.lines())
        for line in report.lines():
            out.line(line)
        return None
    return model


# -- commands ----------------------------------------------------------------


def cmd_validate(args, out):
    model = documents.read(args.path)
    report = _validate(model)
    out.set(
        path=args.path,
        type=_kind(model),
        worlds=list(model.worlds),
        valid=report.valid,
        violations=[
            {"world": None if v.world is None else model.worlds[v.world], "kind": v.kind, "message": v.message}
            for v in report.violations
        ],
    )
    if report.valid:
        out.line(f"{args.path}: valid {_kind(model)} model, {model.n} worlds")
        return OK
    out.line(f"{args.path}: invalid {_kind(model)} model")
    for line in report.lines():
        out.line(f"  {line}")
    return FAILED


def cmd_check(args, out):
    world = args.world_opt or args.world
    text = args.formula_opt or args.formula
    if world is None or text is None:
        raise UsageError("check needs a world and a formula")
    model = _load_valid(args.path, out)
    if model is None:
        return FAILED
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        f, operand = parse_principal(text)
    notes = [str(c.message) for c in caught]
    for note in notes:
        print(f"warning: {note}", file=sys.stderr)
    w = model.world_index(world)
    measured = operand if operand is not None else f
    belief = isinstance(model, BeliefNbhdModel)
    if belief:
        holds = satisfies_n(model, w, f)
        X = truth_set_n(model, measured)
        value = model.b(w, X)
    else:
        holds = satisfies_k(model, w, f)
        X = truth_set_k(model, measured)
        value = pr_measure(model, w, X)
    out.set(world=model.worlds[w], formula=render(f), holds=holds, measured=render(measured), measure=out.num(value))
    out.line("true" if holds else "false")
    out.line(f"measure of {render(measured)} at {model.worlds[w]}: {out.num(value)}")
    if belief:
        rest = model.b(w, ws.full(model.n) & ~X)
        wd = is_well_defined(model, w, X)
        out.set(complement_measure=out.num(rest), well_defined=wd)
        out.line(f"complement measure: {out.num(rest)}")
        out.line(f"well-defined: {'true' if wd else 'false'}")
    if args.all_worlds:
        truth = truth_set_n(model, f) if belief else truth_set_k(model, f)
        out.set(truth_set=_world_set(truth, model))
        out.line(f"truth set: {ws.show(truth, model.worlds)}")
    if notes:
        out.set(warnings=notes)
    return OK


def _elementary_lines(model, out):
    rows = []
    for w in range(model.n):
        sets = [{"set": _world_set(E, model), "belief": out.num(v)} for E, v in elementary_sets(model, w)]
        rows.append({"world": model.worlds[w], "elementary": sets})
        shown = ", ".join(f"{ws.show(E, model.worlds)}={out.num(v)}" for E, v in elementary_sets(model, w))
        out.line(f"  {model.worlds[w]}: {shown or 'none'}")
    return rows


def _additivity_fields(model, out):
    report = additivity(model)
    out.set(additive_elementary=report.additive_elementary, additive_direct=report.additive_direct)
    for line in report.describe(model.worlds):
        out.line(line)
    if report.note:
        out.set(note=report.note)
    return report


def cmd_convert(args, out):
    model = _load_valid(args.path, out)
    if model is None:
        return FAILED
    if _kind(model) == args.to:
        raise UsageError(f"{args.path} is already a {args.to} model")
    if args.out is None:
        # the document itself goes to stdout
        out.stream = sys.stderr
    if args.to == "belief":
        result = kripke_to_belief(model)
        out.line("elementary sets:")
        out.set(elementary=_elementary_lines(result, out))
        _additivity_fields(result, out)
    else:
        try:
            result = belief_to_kripke(model)
        except NotAdditive as exc:
            out.set(converted=False, error=str(exc), world=model.worlds[exc.world], deficit=out.num(exc.deficit))
            print(f"error: {exc}", file=sys.stderr)
            return FAILED
        except PolicyError as exc:
            raise UsageError(str(exc)) from None
        out.line("elementary sets:")
        out.set(elementary=_elementary_lines(model, out))
        _additivity_fields(model, out)
    form = "mass" if args.mass else "belief"
    out.set(converted=True, to=args.to)
    if args.out is not None:
        documents.write(result, args.out, form)
        out.set(out=args.out)
        out.line(f"wrote {args.out}")
    else:
        out.set(document=documents.dump(result, form))
        if not out.json:
            print(json.dumps(documents.dump(result, form), indent=2))
    return OK


def cmd_core(args, out):
    world = args.world_opt or args.world
    if world is None:
        raise UsageError("core needs a world")
    model = _load_valid(args.path, out)
    if model is None:
        return FAILED
    if not isinstance(model, BeliefNbhdModel):
        model = kripke_to_belief(model)
        out.line("(Kripke model converted to its belief model)")
    w = model.world_index(world)
    sets = elementary_sets(model, w)
    c = core(model, w)
    out.set(
        world=model.worlds[w],
        elementary=[{"set": _world_set(E, model), "belief": out.num(v)} for E, v in sets],
        core=_world_set(c, model),
        core_belief=out.num(model.b(w, c)),
    )
    shown = ", ".join(f"{ws.show(E, model.worlds)}={out.num(v)}" for E, v in sets)
    out.line(f"elementary sets at {model.worlds[w]}: {shown or 'none'}")
    out.line(f"certainty core: {ws.show(c, model.worlds)} (belief {out.num(model.b(w, c))})")
    _additivity_fields(model, out)
    return OK


def cmd_equiv(args, out):
    ma = _load_valid(args.a, out)
    mb = ma and _load_valid(args.b, out)
    if ma is None or mb is None:
        return FAILED
    try:
        verdict = modally_equivalent((ma, args.wa), (mb, args.wb), depth=args.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    except CorpusTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    witness = render(verdict.witness) if verdict.witness is not None else None
    out.set(
        equivalent=verdict.equivalent,
        witness=witness,
        witness_depth=verdict.depth if witness else None,
        depth=args.depth,
        threshold_grid=[out.num(x) for x in verdict.threshold_grid],
        classes=verdict.classes,
        skipped=[render(f) for f in verdict.skipped],
    )
    out.line(f"equivalent up to depth {args.depth}: {'true' if verdict.equivalent else 'false'}")
    if witness:
        out.line(f"witness (depth {verdict.depth}): {witness}")
    out.line(f"thresholds: {len(verdict.threshold_grid)}, formula classes: {verdict.classes}")
    out.line(f"skipped (not well-defined): {len(verdict.skipped)}")
    return OK if verdict.equivalent else FAILED


def cmd_gen(args, out):
    if args.worlds < 1 or args.atoms < 0:
        raise UsageError("--worlds must be at least 1 and --atoms non-negative")
    if args.kind == "kripke":
        model = gen_kripke(args.worlds, args.atoms, args.seed)
    else:
        model = gen_belief(args.worlds, args.atoms, args.seed, focal=args.focal)
    doc = documents.dump(model, "mass" if args.mass else "belief")
    if args.out is not None:
        documents.write(model, args.out, "mass" if args.mass else "belief")
        out.set(out=args.out, type=args.kind)
        out.line(f"wrote {args.out}")
    else:
        out.set(document=doc)
        if not out.json:
            print(json.dumps(doc, indent=2))
    return OK


# -- entry point -------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument(
        "--decimals", action="store_true", default=argparse.SUPPRESS, help="show rationals as decimals (lossy)"
    )

    parser = argparse.ArgumentParser(prog="probmodal", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a model document")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", parents=[common], help="evaluate a formula at a world")
    p.add_argument("path")
    p.add_argument("world", nargs="?")
    p.add_argument("formula", nargs="?")
    p.add_argument("--world", dest="world_opt")
    p.add_argument("--formula", dest="formula_opt")
    p.add_argument("--all-worlds", action="store_true", help="also print the truth set")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("convert", parents=[common], help="convert between model kinds")
    p.add_argument("path")
    p.add_argument("--to", choices=("kripke", "belief"), required=True)
    p.add_argument("--split", choices=("uniform",), default="uniform")
    p.add_argument("--out")
    p.add_argument("--mass", action="store_true", help="write belief models as mass functions")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("equiv", parents=[common], help="bounded modal equivalence of two pointed models")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--wa", required=True)
    p.add_argument("--wb", required=True)
    p.add_argument("--depth", type=int, default=2)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("core", parents=[common], help="elementary sets, core and additivity")
    p.add_argument("path")
    p.add_argument("world", nargs="?")
    p.add_argument("--world", dest="world_opt")
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("gen", parents=[common], help="write a random model document")
    p.add_argument("--kind", choices=("kripke", "belief"), required=True)
    p.add_argument("--worlds", type=int, required=True)
    p.add_argument("--atoms", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--focal", type=int, default=3, help="focal sets per world (belief)")
    p.add_argument("--mass", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.decimals = getattr(args, "decimals", False)
    out = _Out(args)
    try:
        code = args.func(args, out)
    except (documents.DocumentError, FormulaSyntaxError, UnknownWorld, UnknownAtom, ws.ModelTooLarge, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    out.finish()
    return code


if __name__ == "__main__":
    sys.exit(main())
