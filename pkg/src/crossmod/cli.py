"""Command line front end.

Exit codes: 0 ok (or witness found), 1 invalid input object, 2 usage or
parse error (including exceeded size bounds), 3 ``certify`` found no
witness, 4 internal invariant violated (a bug).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from .errors import (
    AxiomError,
    CrossmodError,
    HypothesisError,
    InvariantViolation,
    ParseError,
    SizeLimitError,
)

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_NO_WITNESS, EXIT_BUG = 0, 1, 2, 3, 4


@dataclass
class CliConfig:
    command: str
    paths: list
    output: str = "text"
    order_bound: Optional[int] = None
    enum_bound: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        for name in ("order_bound", "enum_bound"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError(f"{name} must be positive")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _invariants(text):
    try:
        vals = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad invariant list {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty invariant list")
    return vals


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--order-bound", type=_positive, default=None,
                        help="largest group order built (default 512, env XMOD_ORDER_BOUND)")
    common.add_argument("--enum-bound", type=_positive, default=None,
                        help="largest number of candidate maps enumerated (default 10^6)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p = _Parser(prog="crossmod", description="Crossed modules, cat1-groups and the Hopf certificate.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, helptext in (("check", "validate a group, crossed module, cat1-group or extension file"),
                           ("equiv", "convert between crossed modules and cat1-groups and round-trip"),
                           ("three-term", "three-term exact sequence of an extension file"),
                           ("snf", "Smith normal form of a matrix file")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("path")
    for name, helptext in (("certify", "non-balanced certificate from an abelian group M"),
                           ("h2", "H2 of an abelian group by the gcd formula")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--m", type=_invariants, required=True, help="invariant factors, e.g. 2,2")
        if name == "certify":
            sp.add_argument("--rank", type=_positive, required=True, help="rank of the free group")
    return p


def _emit(cfg: CliConfig, payload: dict, text: str, out):
    if cfg.output == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _images(h) -> list:
    return [int(v) for v in h.images]


# -- commands -------------------------------------------------------------------


def cmd_check(cfg: CliConfig, out) -> int:
    from .formats import build_cat1, build_extension, build_xmod, load

    kind, data = load(_read(cfg.paths[0]))
    if kind == "group":
        G = data["group"]
        _emit(cfg, {"kind": kind, "valid": True, "order": G.order},
              f"group of order {G.order}: OK", out)
    elif kind == "matrix":
        A = data["matrix"]
        _emit(cfg, {"kind": kind, "valid": True, "rows": A.rows, "cols": A.cols},
              f"{A.rows}x{A.cols} integer matrix: OK", out)
    elif kind == "xmod":
        X = build_xmod(data)
        _emit(cfg, {"kind": kind, "valid": True, "orders": list(X.orders)},
              f"crossed module |T|={X.T.order} |G|={X.G.order}: axioms OK", out)
    elif kind == "cat1":
        C = build_cat1(data)
        _emit(cfg, {"kind": kind, "valid": True, "order": C.G.order},
              f"cat1-group of order {C.G.order}: axioms OK", out)
    else:
        E = build_extension(data)
        _emit(cfg, {"kind": kind, "valid": True, "kernel_order": E.kernel.T.order,
                    "m_order": E.quotient.T.order},
              f"extension with |N|={E.kernel.T.order}, |M|={E.quotient.T.order}: OK", out)
    return EXIT_OK


def cmd_equiv(cfg: CliConfig, out) -> int:
    from .cat1 import cat1_round_trip, cat1_to_cm, cm_to_cat1, xmod_round_trip
    from .formats import build_cat1, build_xmod, load

    kind, data = load(_read(cfg.paths[0]))
    if kind == "xmod":
        X = build_xmod(data)
        C, _ = cm_to_cat1(X)
        m = xmod_round_trip(X)
        payload = {"input": "xmod", "cat1_order": C.G.order, "d0": _images(C.d0), "d1": _images(C.d1),
                   "round_trip": {"T": _images(m.f), "G": _images(m.h)}}
        text = "\n".join([
            f"crossed module |T|={X.T.order} |G|={X.G.order}",
            f"cat1-group of order {C.G.order}",
            "d0: " + " ".join(map(str, _images(C.d0))),
            "d1: " + " ".join(map(str, _images(C.d1))),
            "round trip isomorphism T: " + " ".join(map(str, _images(m.f))),
            "round trip isomorphism G: " + " ".join(map(str, _images(m.h))),
        ])
    elif kind == "cat1":
        C = build_cat1(data)
        X, _, _ = cat1_to_cm(C)
        psi = cat1_round_trip(C)
        payload = {"input": "cat1", "T_order": X.T.order, "G_order": X.G.order,
                   "mu": _images(X.mu), "round_trip": _images(psi)}
        text = "\n".join([
            f"cat1-group of order {C.G.order}",
            f"crossed module |T|={X.T.order} |G|={X.G.order}",
            "mu: " + " ".join(map(str, _images(X.mu))),
            "round trip isomorphism: " + " ".join(map(str, _images(psi))),
        ])
    else:
        raise ParseError(f"equiv needs a crossed-module or cat1 file, got {kind}", 1)
    _emit(cfg, payload, text, out)
    return EXIT_OK


def cmd_three_term(cfg: CliConfig, out) -> int:
    from .derived import exactness_report, three_term
    from .formats import build_extension, load

    kind, data = load(_read(cfg.paths[0]))
    if kind != "extension":
        raise ParseError(f"three-term needs an extension file, got {kind}", 1)
    E = build_extension(data)
    S = three_term(E)
    rep = exactness_report(S)
    L, Mid, R = S.left.coeff, S.mid.coeff, S.right.coeff
    payload = {
        "left": {"orders": list(L.orders), "eps": S.left.eps.tolist()},
        "mid": {"orders": list(Mid.orders), "eps": S.mid.eps.tolist()},
        "right": {"orders": list(R.orders)},
        "u": _images(S.u_map.f),
        "f_bar": _images(S.f_map.f),
        "exactness": rep.to_json(),
    }
    lines = [
        f"left  (N/[G,N], G_ab): orders {L.orders}",
        f"mid   (T/J, G_ab):     orders {Mid.orders}",
        f"right (M, 1):          orders {R.orders}",
        "eps'' (rows m, columns [g]):",
        *("  " + " ".join(map(str, row)) for row in S.left.eps.tolist()),
        "eps' (rows m, columns [g]):",
        *("  " + " ".join(map(str, row)) for row in S.mid.eps.tolist()),
        "u:     " + " ".join(map(str, _images(S.u_map.f))),
        "f_bar: " + " ".join(map(str, _images(S.f_map.f))),
        f"right_surjective: {rep.right_surjective}",
        f"middle_exact:     {rep.middle_exact}",
        f"u_injective:      {rep.u_injective}",
    ]
    _emit(cfg, payload, "\n".join(lines), out)
    return EXIT_OK


def cmd_certify(cfg: CliConfig, out, m, rank) -> int:
    from .certifier import certify_nonbalanced

    cert = certify_nonbalanced(m, rank)
    _emit(cfg, cert.to_json(), cert.text(), out)
    return EXIT_OK if cert.has_witness else EXIT_NO_WITNESS


def cmd_h2(cfg: CliConfig, out, m) -> int:
    from .certifier import schur_multiplier_abelian

    h2 = schur_multiplier_abelian(m)
    _emit(cfg, {"m": list(m), "h2": h2.to_json()}, f"H2 = {h2}", out)
    return EXIT_OK


def cmd_snf(cfg: CliConfig, out) -> int:
    from .errors import ArgumentError
    from .lattice import diagonal, parse_matrix, smith_normal_form

    text = _read(cfg.paths[0])
    body = "\n".join(l.split("#", 1)[0] for l in text.splitlines()
                     if l.strip() not in ("[matrix]",))
    try:
        A = parse_matrix(body)
    except (ArgumentError, ValueError) as exc:
        raise ParseError(f"bad matrix file: {exc}", 1) from None
    U, D, V = smith_normal_form(A)
    payload = {"U": U.tolist(), "D": D.tolist(), "V": V.tolist(), "diagonal": diagonal(D)}
    text = "\n".join(["U", U.format(), "D", D.format(), "V", V.format()])
    _emit(cfg, payload, text, out)
    return EXIT_OK


# -- entry point -------------------------------------------------------------------


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    cfg = CliConfig(args.command, [getattr(args, "path", None)] if hasattr(args, "path") else [],
                    "json" if args.json else "text", args.order_bound, args.enum_bound, args.seed)
    if cfg.order_bound is not None:
        os.environ["XMOD_ORDER_BOUND"] = str(cfg.order_bound)
    if cfg.enum_bound is not None:
        os.environ["XMOD_ENUM_BOUND"] = str(cfg.enum_bound)
    try:
        if cfg.command == "check":
            return cmd_check(cfg, out)
        if cfg.command == "equiv":
            return cmd_equiv(cfg, out)
        if cfg.command == "three-term":
            return cmd_three_term(cfg, out)
        if cfg.command == "certify":
            return cmd_certify(cfg, out, args.m, args.rank)
        if cfg.command == "h2":
            return cmd_h2(cfg, out, args.m)
        return cmd_snf(cfg, out)
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_USAGE
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=err)
        return EXIT_USAGE
    except HypothesisError as exc:
        print(f"outside hypotheses: {exc}", file=err)
        return EXIT_INVALID
    except AxiomError as exc:
        w = f" (witness {exc.witness})" if exc.witness is not None else ""
        print(f"invalid: {exc}{w}", file=err)
        return EXIT_INVALID
    except CrossmodError as exc:
        if cfg.command in ("certify", "h2"):
            print(f"usage error: {exc}", file=err)
            return EXIT_USAGE
        w = f" (witness {exc.witness})" if exc.witness is not None else ""
        print(f"invalid: {exc}{w}", file=err)
        return EXIT_INVALID
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=err)
        return EXIT_BUG


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
