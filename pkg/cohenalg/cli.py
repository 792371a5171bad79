#!/usr/bin/env python3
"""
Command line front end for cohenalg.

Results go to stdout, one deterministic block per command; caveats, errors
and debug output go to stderr. Exit status: 0 ok, 1 for a false eq/member
answer or a failed suite, 2 for usage and input errors.
"""

import argparse
import sys
from typing import List, Optional, Sequence, Tuple

from .cohen_algebra import basis, equalizer_submodule, full_basis, projection_kernel_submodule
from .cohen_group import (
    BLOCK_SHIFT_CAVEAT,
    GroupElement,
    GroupWord,
    caveats_for,
    is_member_H,
    is_member_H_l,
    is_member_H_lk,
    lift_H,
)
from .errors import CohenAlgError, PreconditionError
from .exact_linalg import submodule_rank
from .grammar import parse_element, parse_tensor_input, parse_word
from .lcs_lie import lcs_rank
from .nat_transform import (
    FreeModule,
    gamma_submodule,
    lie_submodule,
    primitive_cokernel_invariants,
    primitives_basis,
    theta_eval,
)
from .result_schema import CommandResult, RankTable, SuiteReport
from .ring_core import RingSpec
from .settings import DEFAULT_BLOCK_SHIFT, DEFAULT_RING, DEFAULT_SEED, Settings, configure_logging, debug_print
from .verify import SUITE_NAMES, run_suite

RANK_KINDS = ["lie", "gamma", "primitives", "lcs", "basis", "equalizer", "kernel"]
MEMBER_KINDS = ["hn", "hln", "hlkn"]


# =============================================================================
# Helpers
# =============================================================================

def _settings(args: argparse.Namespace) -> Settings:
    return Settings(
        ring=args.ring or DEFAULT_RING,
        block_size=args.k,
        block_shift=getattr(args, "shift", DEFAULT_BLOCK_SHIFT),
        seed=getattr(args, "seed", DEFAULT_SEED),
        trials=getattr(args, "trials", None),
        debug=args.debug,
        json_output=args.json,
    )


def _parse_words(texts: Sequence[str], ring: RingSpec, n: Optional[int], k: Optional[int]) -> List[GroupElement]:
    """Parse words onto a common generator count (the largest index seen unless --n is given)."""
    words = [parse_word(text, ring, n, k) for text in texts]
    size = n if n is not None else max(w.n for w in words)
    block = k if k is not None else words[0].k
    return [GroupElement.from_word(GroupWord(ring, size, block, w.expr)) for w in words]


def _emit(result: CommandResult, settings: Settings, lines: Sequence[str]) -> None:
    for caveat in result.caveats:
        print(f"⚠️  caveat: {caveat}", file=sys.stderr)
    if settings.json_output:
        print(result.to_json())
    else:
        for line in lines:
            print(line)


def _emit_error(args: argparse.Namespace, message: str) -> None:
    if args.json:
        print(CommandResult(command=args.command, status="error", message=message).to_json())


# =============================================================================
# Commands
# =============================================================================

def cmd_basis(args: argparse.Namespace, settings: Settings, ring: RingSpec) -> Tuple[CommandResult, List[str], int]:
    k = settings.block_size or 1
    monomials = basis(args.n, k, args.t) if args.t is not None else full_basis(args.n, k)
    texts = [str(m) for m in monomials]
    result = CommandResult(
        command="basis",
        inputs={"n": args.n, "k": k, "t": args.t, "ring": str(ring)},
        result={"monomials": texts, "count": len(texts)},
    )
    return result, texts + [f"count: {len(texts)}"], 0


def cmd_expand(args: argparse.Namespace, settings: Settings, ring: RingSpec) -> Tuple[CommandResult, List[str], int]:
    word = _parse_words([args.word], ring, args.n, settings.block_size)[0]
    text = str(word.canon)
    result = CommandResult(
        command="expand",
        inputs={"word": args.word, "n": word.n, "k": word.k, "ring": str(ring)},
        result=text,
    )
    return result, [text], 0


def cmd_eq(args: argparse.Namespace, settings: Settings, ring: RingSpec) -> Tuple[CommandResult, List[str], int]:
    elements = _parse_words(args.words, ring, args.n, settings.block_size)
    first = elements[0]
    equal = all(first == other for other in elements[1:])
    result = CommandResult(
        command="eq",
        inputs={"words": list(args.words), "n": first.n, "k": first.k, "ring": str(ring)},
        result=equal,
        caveats=caveats_for(ring, first.k),
    )
    return result, ["true" if equal else "false"], 0 if equal else 1


def cmd_member(args: argparse.Namespace, settings: Settings, ring: RingSpec) -> Tuple[CommandResult, List[str], int]:
    caveats: List[str] = []
    if args.kind == "hn":
        g = _parse_words([args.word], ring, args.n, 1)[0]
        answer = is_member_H(g, args.n)
        k = 1
    else:
        if args.l is None:
            raise PreconditionError(f"--l is required for --kind {args.kind}")
        blocks = args.n if args.n is not None else 1
        k = 1 if args.kind == "hln" else (settings.block_size or 1)
        g = _parse_words([args.word], ring, args.l * blocks, k)[0]
        if args.kind == "hln":
            answer = is_member_H_l(g, args.l, blocks, settings.block_shift)
        else:
            answer = is_member_H_lk(g, args.l, k, blocks, settings.block_shift)
        if settings.block_shift == "verbatim":
            caveats.append(BLOCK_SHIFT_CAVEAT)
    caveats = caveats_for(ring, k) + caveats
    result = CommandResult(
        command="member",
        inputs={"word": args.word, "kind": args.kind, "n": args.n, "l": args.l, "k": k,
                "shift": settings.block_shift, "ring": str(ring)},
        result=answer,
        caveats=caveats,
    )
    return result, ["true" if answer else "false"], 0 if answer else 1


def cmd_lift(args: argparse.Namespace, settings: Settings, ring: RingSpec) -> Tuple[CommandResult, List[str], int]:
    alpha = _parse_words([args.word], ring, args.level, 1)[0]
    lifted = lift_H(alpha, alpha.n, args.n)
    payload = {"word": str(lifted.word), "canon": str(lifted.canon)}
    result = CommandResult(
        command="lift",
        inputs={"word": args.word, "level": alpha.n, "n": args.n, "ring": str(ring)},
        result=payload,
        caveats=caveats_for(ring, 1),
    )
    return result, [payload["canon"] if args.canon else payload["word"]], 0


def cmd_eval(args: argparse.Namespace, settings: Settings, ring: RingSpec) -> Tuple[CommandResult, List[str], int]:
    module = FreeModule(ring, args.dim)
    value = parse_tensor_input(args.input, module)
    element = parse_element(args.element, ring, len(value.slots), settings.block_size)
    image = theta_eval(element, module, value)
    result = CommandResult(
        command="eval",
        inputs={"element": args.element, "input": str(value), "dim": args.dim, "ring": str(ring)},
        result=str(image),
    )
    return result, [str(image)], 0


def _rank_table(args: argparse.Namespace, settings: Settings, ring: RingSpec) -> RankTable:
    k = settings.block_size or 1
    table = RankTable(what=args.what, ring=str(ring))
    if args.what == "primitives":
        if args.dim is None or args.q is None:
            raise PreconditionError("--what primitives needs --dim and --q")
        table.parameters = {"dim": args.dim, "q": args.q}
        table.ranks = {f"q={args.q}": submodule_rank(primitives_basis(FreeModule(ring, args.dim), args.q))}
        return table
    if args.n is None:
        raise PreconditionError(f"--what {args.what} needs --n")
    n = args.n
    table.parameters = {"n": n}
    if args.what == "lie":
        table.ranks = {f"n={n}": submodule_rank(lie_submodule(n, ring))}
        if ring.is_integers and n >= 2:
            table.invariant_factors = list(primitive_cokernel_invariants(n))
    elif args.what == "gamma":
        table.ranks = {f"n={n}": submodule_rank(gamma_submodule(n, ring))}
    elif args.what == "equalizer":
        table.ranks = {f"n={n}": submodule_rank(equalizer_submodule(n, ring))}
    elif args.what == "kernel":
        table.ranks = {f"n={n}": submodule_rank(projection_kernel_submodule(n, ring))}
    else:
        table.parameters["k"] = k
        degrees = [args.t] if args.t is not None else list(range(0 if args.what == "basis" else 1, n // k + 1))
        for t in degrees:
            table.ranks[f"t={t}"] = len(basis(n, k, t)) if args.what == "basis" else lcs_rank(n, k, t, ring)
    return table


def cmd_ranks(args: argparse.Namespace, settings: Settings, ring: RingSpec) -> Tuple[CommandResult, List[str], int]:
    table = _rank_table(args, settings, ring)
    if len(table.ranks) == 1:
        lines = [str(next(iter(table.ranks.values())))]
    else:
        lines = [f"{key}: {value}" for key, value in table.ranks.items()]
    if table.invariant_factors is not None:
        debug_print(f"invariant factors: {table.invariant_factors}")
    result = CommandResult(command="ranks", inputs=dict(table.parameters, what=args.what), result=table.model_dump())
    return result, lines, 0


def _report_lines(report: SuiteReport) -> List[str]:
    lines = [f"🔬 Suite: {report.suite} (seed {report.seed})", "=" * 60]
    for check in report.checks:
        mark = "✅" if check.passed else "❌"
        detail = f"   ({check.detail})" if check.detail and not check.passed else ""
        lines.append(f"{mark} {check.name}{detail}")
    passed = sum(1 for check in report.checks if check.passed)
    lines.append(f"📊 {passed}/{len(report.checks)} checks passed")
    return lines


def cmd_verify(args: argparse.Namespace, settings: Settings, ring: RingSpec) -> Tuple[CommandResult, List[str], int]:
    if args.ring is not None:
        raise PreconditionError("verify suites fix their own rings; drop --ring")
    reports = run_suite(args.suite, settings.seed, settings.trials)
    lines: List[str] = []
    for report in reports:
        if lines:
            lines.append("")
        lines.extend(_report_lines(report))
    passed = all(report.passed for report in reports)
    result = CommandResult(
        command="verify",
        inputs={"suite": args.suite, "seed": settings.seed, "trials": settings.trials},
        result={"passed": passed, "reports": [report.model_dump() for report in reports]},
    )
    return result, lines, 0 if passed else 1


COMMANDS = {
    "basis": cmd_basis,
    "expand": cmd_expand,
    "eq": cmd_eq,
    "member": cmd_member,
    "lift": cmd_lift,
    "eval": cmd_eval,
    "ranks": cmd_ranks,
    "verify": cmd_verify,
}


# =============================================================================
# Argument parsing
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--ring', help="Coefficient ring: 'z' or 'zmod:<m>' (default: z)")
    common.add_argument('--k', type=int, help='Block size (default: 1, or inferred from the input)')
    common.add_argument('--json', action='store_true', help='Emit {command, inputs, result, caveats} as JSON')
    common.add_argument('--debug', action='store_true', help='Enable debug output on stderr')

    parser = argparse.ArgumentParser(
        prog='cohenalg',
        description='Exact computations in Cohen algebras, Cohen groups and their natural transformations',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  cohenalg basis --n 3 --t 2
  cohenalg expand --n 2 "[x1,x2]"                        # 1 + y1.y2 - y2.y1
  cohenalg expand --n 2 --ring zmod:4 --k 2 "{x1|x2}^4"  # 1
  cohenalg eq --n 2 "x1 x2" "x2 x1"                      # false, exit 1
  cohenalg member --kind hn --n 2 "[x1,x2]"
  cohenalg lift --n 3 "[x1,x2]"
  cohenalg eval --dim 2 --input "[1,0] (x) [0,1]" "y1.y2"
  cohenalg ranks --what lie --n 4
  cohenalg verify --suite shuffle --seed 7
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('basis', parents=[common], help='List the monomial basis of A_n[k] in degree t')
    p.add_argument('--n', type=int, required=True, help='Number of generators')
    p.add_argument('--t', type=int, help='Degree (default: every degree)')

    p = sub.add_parser('expand', parents=[common], help='Image of a group word in the Cohen algebra')
    p.add_argument('word', help='Group word, e.g. "x1^2 [x1,x2]"')
    p.add_argument('--n', type=int, help='Number of generators (default: largest index)')

    p = sub.add_parser('eq', parents=[common], help='Decide whether group words are equal')
    p.add_argument('words', nargs='+', help='Two or more group words')
    p.add_argument('--n', type=int, help='Number of generators (default: largest index)')

    p = sub.add_parser('member', parents=[common], help='Equalizer membership test')
    p.add_argument('word', help='Group word')
    p.add_argument('--kind', choices=MEMBER_KINDS, default='hn', help='hn, hln or hlkn (default: hn)')
    p.add_argument('--n', type=int, help='Level n (number of generators for hn, number of windows otherwise)')
    p.add_argument('--l', type=int, help='Window length for hln/hlkn')
    p.add_argument('--shift', choices=['verbatim', 'window'], default=DEFAULT_BLOCK_SHIFT,
                   help='Renumbering used by the window projections (default: verbatim)')

    p = sub.add_parser('lift', parents=[common], help='Lift a kernel element of d_k to H_n')
    p.add_argument('word', help='Element of H_k killed by d_k')
    p.add_argument('--n', type=int, required=True, help='Target level')
    p.add_argument('--level', type=int, help='Source level k (default: largest index of the word)')
    p.add_argument('--canon', action='store_true', help='Print the algebra image instead of the word')

    p = sub.add_parser('eval', parents=[common], help='Evaluate theta(a) on an element of C(V)^(x)n')
    p.add_argument('element', help='Algebra element, e.g. "1 + y1.y2"')
    p.add_argument('--dim', type=int, required=True, help='Rank of the free module V')
    p.add_argument('--input', required=True, help='Tensor input, e.g. "1 (x) [1,0]"')

    p = sub.add_parser('ranks', parents=[common], help='Ranks of the modules computed by the toolkit')
    p.add_argument('--what', choices=RANK_KINDS, required=True)
    p.add_argument('--n', type=int)
    p.add_argument('--t', type=int)
    p.add_argument('--dim', type=int)
    p.add_argument('--q', type=int)

    p = sub.add_parser('verify', parents=[common], help='Run a verification suite')
    p.add_argument('--suite', choices=SUITE_NAMES, default='all')
    p.add_argument('--seed', type=int, default=DEFAULT_SEED)
    p.add_argument('--trials', type=int, help='Override the number of randomized trials')

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = _settings(args)
        configure_logging(settings.debug)
        ring = RingSpec.parse(settings.ring)
        debug_print(f"{args.command}: {vars(args)}")
        result, lines, status = COMMANDS[args.command](args, settings, ring)
        _emit(result, settings, lines)
        return status
    except CohenAlgError as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        if args.debug:
            import traceback
            traceback.print_exc()
        _emit_error(args, str(e))
        return 2
    except ValueError as e:
        # pydantic validation of the flags
        print(f"❌ Error: {e}", file=sys.stderr)
        _emit_error(args, str(e))
        return 2


if __name__ == '__main__':
    exit(main())
