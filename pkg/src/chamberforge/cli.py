"""Command line interface.

Exit codes: 0 success, 1 the two sides of ``check`` disagree, 2 invalid
input, 3 degenerate tangency or tangency on a wall.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import __version__
from .comtype import enumerate_realizable, transport
from .errors import ChamberError, DegenerateError, InputError
from .fan import dagger, hirzebruch, load_fan, p1xp1, projective_plane, slope_sensitive
from .groth import R_c, specialize, stratum_class, total_class
from .harness import check_pair
from .render import render_svg
from .tangency import (
    cyclic_order,
    load_tangency,
    sigma_equivalent,
    subset_label,
    wall_census,
    walls_on,
)

NAMED_FANS = {"P2": projective_plane, "P1xP1": p1xp1}


def _read_json(arg: str):
    text = arg.strip()
    if text[:1] in "{[":
        return json.loads(text)
    return json.loads(Path(arg).read_text())


def get_fan(arg: str | None):
    if arg is None:
        raise InputError("--fan is required")
    if arg in NAMED_FANS:
        return NAMED_FANS[arg]()
    m = re.fullmatch(r"F(-?\d+)", arg)
    if m:
        return hirzebruch(int(m.group(1)))
    return load_fan(_read_json(arg))


def get_alpha(arg: str | None, flag: str = "--alpha"):
    if arg is None:
        raise InputError(f"{flag} is required")
    data = _read_json(arg)
    if isinstance(data, list):
        data = {"alpha": data}
    return load_tangency(data)


def _emit(obj, dest: str | None = None) -> None:
    text = json.dumps(obj, indent=2)
    if dest:
        Path(dest).write_text(text + "\n")
    else:
        print(text)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    return int(os.environ.get("CHAMBERFORGE_THREADS", "1") or 1)


def _stratum_json(c) -> dict:
    out = c.to_json()
    out["R_c"] = R_c(c)
    out["class"] = list(stratum_class(c).coeffs)
    return out


def cmd_fan(args) -> int:
    fan = get_fan(args.fan)
    if args.action == "validate":
        _emit(fan.to_json())
    elif args.action == "dagger":
        _emit(dagger(fan).to_json())
    else:
        alpha = get_alpha(args.alpha)
        fine = slope_sensitive(fan, alpha, permissive=args.permissive)
        data = fine.to_json()
        data["tags"] = [
            sorted(
                ("rho(%d,%d)" % t[1]) if t[0] == "rho" else subset_label(t[1])
                for t in fine.tags[v]
            )
            for v in fine.rays
        ]
        _emit(data)
    return 0


def cmd_order(args) -> int:
    fan, alpha = get_fan(args.fan), get_alpha(args.alpha)
    order = cyclic_order(fan, alpha, permissive=args.permissive)
    if args.text:
        print(order.as_text())
    else:
        _emit(order.to_json())
    return 0


def cmd_equiv(args) -> int:
    fan = get_fan(args.fan)
    a, b = get_alpha(args.alpha), get_alpha(args.alpha2, "--alpha2")
    p = args.permissive
    _emit(
        {
            "equivalent": sigma_equivalent(fan, a, b, permissive=p),
            "order_a": cyclic_order(fan, a, p).to_json()["groups"],
            "order_b": cyclic_order(fan, b, p).to_json()["groups"],
            "walls_a": [w.label() for w in walls_on(fan, a)],
            "walls_b": [w.label() for w in walls_on(fan, b)],
        }
    )
    return 0


def cmd_walls(args) -> int:
    fan = get_fan(args.fan)
    if args.on:
        alpha = get_alpha(args.alpha)
        _emit([w.label() for w in walls_on(fan, alpha)])
        return 0
    if args.n is not None:
        n = args.n
    elif args.alpha is not None:
        n = get_alpha(args.alpha).n
    else:
        raise InputError("walls needs --n or --alpha")
    walls = wall_census(fan, n)
    counts = {k: sum(1 for w in walls if w.kind == k) for k in ("quadratic", "linear", "degenerate")}
    _emit({"n": n, "counts": counts, "walls": [w.label() for w in walls]})
    return 0


def _types(args, fan, alpha):
    return enumerate_realizable(fan, alpha, allow_walls=args.allow_walls, threads=_threads(args))


def cmd_strata(args) -> int:
    fan, alpha = get_fan(args.fan), get_alpha(args.alpha)
    _emit([_stratum_json(c) for c in _types(args, fan, alpha)], args.json)
    return 0


def cmd_class(args) -> int:
    fan, alpha = get_fan(args.fan), get_alpha(args.alpha)
    total = total_class(_types(args, fan, alpha))
    out = total.to_json()
    if args.specialize:
        out["specialization"] = {"at": args.specialize, "value": specialize(total, args.specialize)}
    _emit(out, args.json)
    return 0


def cmd_transport(args) -> int:
    fan = get_fan(args.fan)
    a, b = get_alpha(args.alpha), get_alpha(args.alpha2, "--alpha2")
    pairs = [{"source": c.to_json(), "target": transport(c, b).to_json()} for c in _types(args, fan, a)]
    _emit(pairs, args.json)
    return 0


def cmd_check(args) -> int:
    fan = get_fan(args.fan)
    a, b = get_alpha(args.alpha), get_alpha(args.alpha2, "--alpha2")
    report = check_pair(fan, a, b, threads=_threads(args), allow_walls=args.allow_walls)
    _emit(report.to_json(), args.json)
    return 0 if report.ok else 1


def cmd_render(args) -> int:
    fan, alpha = get_fan(args.fan), get_alpha(args.alpha)
    svg = render_svg(fan, alpha, permissive=args.permissive)
    if args.out:
        Path(args.out).write_text(svg)
    else:
        sys.stdout.write(svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fan", help="fan JSON file, inline JSON, or one of P2, P1xP1, F<a>")
    common.add_argument("--alpha", help="tangency JSON file or inline JSON")
    common.add_argument("--alpha2", help="second tangency")
    common.add_argument("--json", metavar="PATH", help="write JSON output to PATH")
    common.add_argument("--permissive", action="store_true", help="drop vanishing subset sums")
    common.add_argument("--allow-walls", action="store_true", help="enumerate on walls too")
    common.add_argument("--threads", type=int, help="worker processes (default $CHAMBERFORGE_THREADS or 1)")

    p = argparse.ArgumentParser(prog="chamberforge", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fan", parents=[common], help="validate a fan or build derived fans")
    f.add_argument("action", choices=["validate", "dagger", "slope-sensitive"])
    f.set_defaults(func=cmd_fan)

    o = sub.add_parser("order", parents=[common], help="cyclic order of subset sums and fan rays")
    o.add_argument("--text", action="store_true", help="one group per line")
    o.set_defaults(func=cmd_order)

    sub.add_parser("equiv", parents=[common], help="compare two tangencies").set_defaults(func=cmd_equiv)

    w = sub.add_parser("walls", parents=[common], help="list walls, or those containing a tangency")
    w.add_argument("--on", action="store_true")
    w.add_argument("--n", type=int)
    w.set_defaults(func=cmd_walls)

    sub.add_parser("strata", parents=[common], help="realisable types with their classes").set_defaults(
        func=cmd_strata
    )

    c = sub.add_parser("class", parents=[common], help="total class of the moduli space")
    c.add_argument("--specialize", metavar="euler|q=<int>")
    c.set_defaults(func=cmd_class)

    sub.add_parser("transport", parents=[common], help="match types across equivalent tangencies").set_defaults(
        func=cmd_transport
    )
    sub.add_parser("check", parents=[common], help="compare strata of two tangencies").set_defaults(func=cmd_check)

    r = sub.add_parser("render", parents=[common], help="SVG picture of the fan and subset sums")
    r.add_argument("--out", metavar="PATH")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (InputError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ChamberError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
