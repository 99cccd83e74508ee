"""Command-line interface: ``dkl <command> GROUP [options]``."""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .badlib import BadTag, build_wn, classify_bad, enumerate_bad, u_n, v_n, x_n
from .coxgroup import (
    CoxeterSystem, SignedPermutation, Side, canonical_word, descents,
    expand_intervals, format_window, format_word, from_word, identity, length,
    longest_element, parse_group, parse_intervals, parse_window, parse_word,
)
from .domino import cycles, move_through, tableau, tableau_cells
from .klpoly import (
    CellKind, KLContext, ResourceLimitError, a_value_bruteforce, a_wn, cells,
)
from .verify import run_suite


class DomainError(Exception):
    pass


def parse_element(system: CoxeterSystem, text: str) -> SignedPermutation:
    """Window, word, interval notation or one of wn, xn, vn, un, w0, e."""
    t = text.strip()
    n = system.n
    named = {
        "e": lambda: identity(system),
        "w0": lambda: longest_element(system),
        "wn": lambda: build_wn(system, n),
        "xn": lambda: x_n(system),
        "vn": lambda: v_n(system),
        "un": lambda: u_n(system),
    }
    if t in named:
        if t not in ("e", "w0") and system.family != "D":
            raise DomainError(f"{t} is only defined in type D")
        return named[t]()
    if t.startswith("["):
        return from_word(system, expand_intervals(parse_intervals(t)))
    if "," in t and "s" not in t:
        return parse_window(system, t)
    return from_word(system, parse_word(t))


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _context(args, system) -> KLContext:
    return KLContext(system, max_elements=args.max_elements or 10 ** 4,
                     max_cells=args.max_elements or 10 ** 5, max_memo=args.max_memo)


def cmd_elem(args, system):
    w = parse_element(system, args.element)
    word = canonical_word(w)
    data = {"window": list(w.window), "word": list(word), "length": length(w),
            "left_descents": sorted(descents(w, Side.Left)),
            "right_descents": sorted(descents(w, Side.Right))}
    text = "\n".join([
        f"window: {format_window(w)}",
        f"word:   {format_word(word) or '(empty)'}",
        f"length: {length(w)}",
        f"L(w):   {format_word(data['left_descents']) or '(empty)'}",
        f"R(w):   {format_word(data['right_descents']) or '(empty)'}",
    ])
    _emit(args, text, data)


def cmd_kl(args, system):
    ctx = _context(args, system)
    p = ctx.kl_poly(parse_element(system, args.x), parse_element(system, args.w))
    _emit(args, str(p), p.to_json())


def cmd_mu(args, system):
    ctx = _context(args, system)
    m = ctx.mu(parse_element(system, args.x), parse_element(system, args.w))
    _emit(args, str(m), m)


def cmd_cells(args, system):
    kind = CellKind(args.kind)
    if args.method == "kl":
        part = cells(_context(args, system), None, kind)
    else:
        if system.family != "D":
            raise DomainError("the domino method needs type D")
        limit = args.max_elements or 10 ** 5
        if system.order() > limit:
            raise ResourceLimitError(f"group has {system.order()} elements, above {limit}")
        part = tableau_cells(list(system.elements()), kind, threads=args.threads)
    blocks = [[format_window(w) for w in b] for b in part.blocks]
    text = "\n".join(" | ".join(b) for b in blocks)
    _emit(args, text, {"kind": kind.value, "blocks": [[list(w.window) for w in b]
                                                       for b in part.blocks]})


def cmd_a_value(args, system):
    w = parse_element(system, args.w)
    if args.method == "brute":
        a = a_value_bruteforce(_context(args, system), w)
    else:
        if system.family != "D":
            raise DomainError("the closed form applies to w_m in type D")
        match = [m for m in range(4, system.n + 1, 2) if build_wn(system, m) == w]
        if not match:
            raise DomainError("the closed form only covers the elements w_m")
        a = a_wn(match[0])
    _emit(args, str(a), a)


def cmd_bad(args, system):
    if system.family != "D":
        raise DomainError("bad elements are classified in type D")
    if args.enumerate:
        found = enumerate_bad(system)
        _emit(args, "\n".join(format_window(w) for w in found),
              [list(w.window) for w in found])
        return
    if not args.classify:
        raise DomainError("give --classify ELEMENT or --enumerate")
    c = classify_bad(parse_element(system, args.classify))
    data = {"tag": c.tag.value}
    text = c.tag.value
    if c.tag is BadTag.Bad:
        data.update(m=c.m, u=list(c.u))
        text += f" m={c.m} u={format_word(c.u) or 'e'}"
    _emit(args, text, data)


def cmd_tableau(args, system):
    if system.family != "D":
        raise DomainError("domino tableaux are implemented for type D")
    side = Side.Left if args.side == "L" else Side.Right
    T = tableau(parse_element(system, args.w), side)
    for spec in args.move or []:
        labels = {int(x) for x in spec.replace(",", " ").split()}
        T = move_through(T, labels)
    data = T.to_json()
    text = T.render()
    if args.cycles:
        cs = cycles(T)
        data["cycles"] = [{"labels": sorted(c.labels), "open": c.is_open} for c in cs]
        text += "\n" + "\n".join(
            f"{'open' if c.is_open else 'closed'} {{{','.join(map(str, sorted(c.labels)))}}}"
            for c in cs)
    _emit(args, text, data)


def cmd_verify(args, _system):
    if not run_suite(args.suite, args.rank, sys.stdout):
        raise DomainError("verification failed")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--max-elements", type=int, default=None,
                        help="element-count ceiling for cells and a-values")
    common.add_argument("--max-memo", type=int, default=None,
                        help="ceiling on memoized KL polynomials")
    common.add_argument("--threads", type=int,
                        default=int(os.environ.get("DKL_THREADS", "1") or 1))

    p = argparse.ArgumentParser(prog="dkl", parents=[common],
                                description="Kazhdan-Lusztig computations in types A and D")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, group=True):
        sp = sub.add_parser(name, parents=[common])
        if group:
            sp.add_argument("group", help="e.g. D6 or A3")
        sp.set_defaults(fn=fn)
        return sp

    add("elem", cmd_elem).add_argument("element")
    for name, fn in (("kl", cmd_kl), ("mu", cmd_mu)):
        sp = add(name, fn)
        sp.add_argument("--x", required=True)
        sp.add_argument("--w", required=True)
    sp = add("cells", cmd_cells)
    sp.add_argument("--method", choices=["kl", "domino"], default="kl")
    sp.add_argument("--kind", choices=["L", "R", "LR"], default="L")
    sp = add("a-value", cmd_a_value)
    sp.add_argument("--w", required=True)
    sp.add_argument("--method", choices=["brute", "formula"], default="brute")
    sp = add("bad", cmd_bad)
    sp.add_argument("--classify")
    sp.add_argument("--enumerate", action="store_true")
    sp = add("tableau", cmd_tableau)
    sp.add_argument("--w", required=True)
    sp.add_argument("--side", choices=["L", "R"], default="L")
    sp.add_argument("--cycles", action="store_true")
    sp.add_argument("--move", action="append", metavar="LABELS",
                    help="move through the cycle with these labels (repeatable)")
    sp = add("verify", cmd_verify, group=False)
    sp.add_argument("--suite", choices=["paper", "props"], default="paper")
    sp.add_argument("--rank", type=int, default=4)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        system = parse_group(args.group) if hasattr(args, "group") else None
    except ValueError as exc:
        parser.error(str(exc))
    try:
        args.fn(args, system)
    except (DomainError, ResourceLimitError, ValueError, KeyError) as exc:
        print(f"dkl: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
