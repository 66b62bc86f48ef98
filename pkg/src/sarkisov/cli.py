"""Command-line front end: ``sarkisov decide | witness | enumerate | verify``.

Descriptors are JSON documents given inline, as ``@path``, or as the path of
an existing file.  Exit codes: 0 success, 1 not minimal or invalid input,
2 verification violation, 3 internal witness mismatch, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from .cyclotomic import CycNum, Mat
from .groups import IsoClass, OrderBoundExceeded, normal_subgroups, recognize
from .lattice import TORUS_DEN, HexGroup, NotMinimal, d6_element, enumerate_hex_groups, hex_mul, hexagon_group, named_images
from .mobius import InvalidParameter, realize
from .quadric import GoursatDatum, InvalidDatum, NoSwapExtension, build_group
from .rigidity import (
    RigidityStatus,
    WitnessMismatch,
    decide_deg4,
    decide_deg5,
    decide_deg6,
    decide_deg8,
    decide_deg9,
    decide_low_degree,
    iso_class_from_name,
    pgl3_group,
    pgl3_realizations,
    validate_hex_witness,
    validate_p2_witness,
    validate_quadric_witness,
)
from .verify import (
    DEGREES,
    dp5_minimal_subgroups,
    kernel_monotonicity_check,
    quad_universe,
    verify_main_theorem,
    verify_superrigidity_monotonicity,
)

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2, 3, 64
SURFACES = ("dp1", "dp2", "dp3", "dp4", "dp5", "dp6", "dp8", "p2")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=1)


def load_descriptor(text: str) -> Any:
    """Parse an inline JSON document, ``@file`` or a file path; bare words become strings."""
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    elif os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        if text.strip().replace("_", "").replace("-", "").isalnum():
            return text.strip()
        raise UsageError(f"malformed JSON descriptor: {text[:60]!r}")


# ---------------------------------------------------------------------------
# descriptor parsing


_F_LABELS = {"C": "C", "Cyclic": "C", "D": "D", "Dihedral": "D", "A4": "A4", "S4": "S4", "A5": "A5"}


def parse_goursat(obj: Any) -> GoursatDatum:
    if not isinstance(obj, dict) or "F" not in obj:
        raise UsageError("Goursat descriptor needs an 'F' entry")
    F = obj["F"]
    if isinstance(F, str):
        F = {"pgl2": F}
    label = F.get("pgl2")
    n = F.get("n")
    if label == "V4":
        label, n = "D", 2
    if label not in _F_LABELS:
        raise UsageError(f"unknown PGL2 label {label!r}")
    label = _F_LABELS[label]
    try:
        kg = realize(label, n)
    except InvalidParameter as e:
        raise UsageError(str(e))
    grp = kg.group
    if "K_elements" in obj:
        K = 0
        for i in obj["K_elements"]:
            if not 0 <= int(i) < grp.n:
                raise InvalidDatum(f"kernel element {i} outside F")
            K |= 1 << int(i)
    else:
        K = _kernel_by_name(grp, obj.get("K", "full"))
    q, _ = grp.quotient(K) if grp.is_subgroup_mask(K) and grp.is_normal_mask(K) else (None, None)
    if q is None:
        raise InvalidDatum("K must be a normal subgroup of F")
    phi = obj.get("phi", "id")
    phi = tuple(range(q.n)) if phi == "id" else tuple(int(x) for x in phi)
    twist = obj.get("twist")
    return GoursatDatum(label, n if label in ("C", "D") else None, K, phi, None if twist is None else int(twist))


def _kernel_by_name(grp, name) -> int:
    if name == "full":
        return (1 << grp.n) - 1
    if name in ("id", "trivial", "1", 1):
        return 1
    if isinstance(name, list):
        raise UsageError("use K_elements for an explicit kernel")
    try:
        target = iso_class_from_name(str(name))
    except ValueError as e:
        raise UsageError(str(e))
    for h in normal_subgroups(grp):
        if recognize(h.as_group()) == target:
            return h.mask
    raise InvalidDatum(f"F has no normal subgroup isomorphic to {name}")


_IMAGE_ALIASES = {"C6": "<r>", "S3": "<r^2,s>", "D6": "<r,s>", "C3": "<r^2>", "C2": "<r^3>", "1": "1"}


def _torus(entry) -> tuple[int, int]:
    if len(entry) != 2:
        raise UsageError("torus elements are pairs of fractions")
    out = []
    for x in entry:
        f = Fraction(str(x)) % 1
        if TORUS_DEN % f.denominator:
            raise UsageError(f"torus exponent {x} has denominator outside lcm(1..12)")
        out.append(int(f * TORUS_DEN))
    return tuple(out)


def parse_hex(obj: Any) -> HexGroup:
    if not isinstance(obj, dict):
        raise UsageError("hexagon descriptor must be a JSON object")
    if "generators" in obj:
        gens = []
        for g in obj["generators"]:
            t = _torus(g["torus"])
            gens.append((t, tuple(int(i) for i in g["sigma"]), int(g.get("swap", 0))))
        return HexGroup.generated(gens)
    name = _IMAGE_ALIASES.get(obj.get("image", "S3"), obj.get("image"))
    masks = named_images()
    if name not in masks:
        raise UsageError(f"unknown hexagon image {obj.get('image')!r}")
    d6, _ = hexagon_group()
    ids = [i for i in range(d6.n) if (masks[name] >> i) & 1 and i]
    gens = [d6_element(i % 6, i // 6) for i in ids]
    torus = [(_torus(t), (0, 1, 2), 0) for t in obj.get("torus", [])]
    if "twist" in obj and gens:
        gens[0] = hex_mul((_torus(obj["twist"]), (0, 1, 2), 0), gens[0])
    return HexGroup.generated(torus + gens)


def _cyc_entry(x) -> CycNum | Fraction:
    if isinstance(x, dict):
        return CycNum.from_json(x)
    return Fraction(str(x))


def parse_pgl3(obj: Any) -> tuple[str | None, list[Mat]]:
    if isinstance(obj, str):
        obj = {"realization": obj}
    if not isinstance(obj, dict):
        raise UsageError("PGL3 descriptor must be a JSON object or a realization name")
    if "realization" in obj:
        table = pgl3_realizations()
        if obj["realization"] not in table:
            raise UsageError(f"unknown realization {obj['realization']!r}; known: {', '.join(sorted(table))}")
        return obj["realization"], table[obj["realization"]]
    mats = []
    for m in obj.get("matrices", []):
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise UsageError("PGL3 generators must be 3x3")
        mats.append(Mat([[_cyc_entry(x) for x in r] for r in m]))
        if mats[-1].det().is_zero():
            raise InvalidDatum("singular generator")
    return None, mats


def parse_iso(obj: Any) -> dict:
    if isinstance(obj, str):
        obj = {"group": obj}
    if not isinstance(obj, dict):
        raise UsageError("iso descriptor must be a JSON object or a group name")
    return obj


def _iso(name) -> IsoClass | None:
    if name is None:
        return None
    try:
        return iso_class_from_name(str(name))
    except ValueError as e:
        raise UsageError(str(e))


# ---------------------------------------------------------------------------
# decide / witness


def _descriptor(args, flag: str):
    raw = getattr(args, flag)
    if raw is None:
        raise UsageError(f"--surface {args.surface} needs --{flag}")
    return load_descriptor(raw)


def decide(args) -> tuple[RigidityStatus, Any]:
    """Returns the status and the object a witness is validated against."""
    s = args.surface
    if s in ("dp1", "dp2", "dp3"):
        obj = parse_iso(load_descriptor(args.iso)) if args.iso else {}
        return decide_low_degree(int(s[2]), bool(obj.get("minimal", True))), None
    if s == "dp4":
        obj = parse_iso(_descriptor(args, "iso"))
        fp = obj.get("fixed_point", "Unknown")
        fp = {True: "Yes", False: "No", None: "Unknown"}.get(fp, fp)
        return decide_deg4(str(fp), _iso(obj.get("group"))), None
    if s == "dp5":
        obj = parse_iso(_descriptor(args, "iso"))
        iso = _iso(obj.get("group"))
        if iso is None:
            raise UsageError("degree-5 decisions need a group name")
        return decide_deg5(iso, args.ga1f5_policy), None
    if s == "dp6":
        G = parse_hex(_descriptor(args, "hex"))
        return decide_deg6(G), G
    if s == "dp8":
        d = parse_goursat(_descriptor(args, "goursat"))
        G = build_group(d)
        return decide_deg8(G, G.datum), G
    if s == "p2":
        _, gens = parse_pgl3(_descriptor(args, "pgl3"))
        return decide_deg9(gens), pgl3_group(gens or [Mat.identity(3)])
    raise UsageError(f"unknown surface {s!r}")


def _validate(surface: str, status: RigidityStatus, obj) -> bool | None:
    w = status.witness
    if w is None or w.orbit is None or obj is None:
        return None
    if surface == "dp8":
        return validate_quadric_witness(obj, w)
    if surface == "dp6":
        return validate_hex_witness(obj, w)
    if surface == "p2":
        return validate_p2_witness(obj, w)
    return None


def _emit_status(status: RigidityStatus, fmt: str, out) -> None:
    if fmt == "json":
        out.write(_dump(status.to_json()) + "\n")
    else:
        out.write(str(status) + "\n")
        for c in status.citations:
            out.write(f"  cites: {c}\n")


def cmd_decide(args, out) -> int:
    status, _ = decide(args)
    _emit_status(status, args.format, out)
    return EXIT_OK


def cmd_witness(args, out) -> int:
    status, obj = decide(args)
    doc = {
        "status": status.variant,
        "witness": None if status.witness is None else status.witness.to_json(),
        "validated": _validate(args.surface, status, obj),
    }
    if args.format == "json":
        out.write(_dump(doc) + "\n")
    elif status.witness is None:
        out.write(f"{status.variant}: no link witness\n")
    else:
        w = status.witness
        out.write(f"type {w.link_type} link, centre degree {w.degree}, target {w.target}, validated={doc['validated']}\n")
        for p in doc["witness"].get("orbit", []):
            out.write(f"  {json.dumps(p)}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# enumerate


def _enumerate_docs(args):
    s = args.surface
    if s == "dp8":
        for d in quad_universe(args.max_n):
            yield {"surface": "dp8", "goursat": d.to_json(), "order": d.order()}
    elif s == "dp6":
        for G in enumerate_hex_groups(args.max_n, args.max_order):
            yield {"surface": "dp6", "hex": G.to_json(), "order": G.order}
    elif s == "dp5":
        for h in dp5_minimal_subgroups():
            yield {"surface": "dp5", "iso": str(recognize(h.as_group())), "order": h.order}
    elif s == "p2":
        for name, gens in sorted(pgl3_realizations().items()):
            yield {"surface": "p2", "pgl3": {"realization": name}, "order": pgl3_group(gens).n}
    else:
        raise UsageError(f"enumeration is available for dp5, dp6, dp8 and p2, not {s}")


def cmd_enumerate(args, out) -> int:
    for doc in _enumerate_docs(args):
        out.write((json.dumps(doc, sort_keys=True) if args.format == "json" else _text_line(doc)) + "\n")
    return EXIT_OK


def _text_line(doc: dict) -> str:
    if "goursat" in doc:
        g = doc["goursat"]
        F = g["F"]["pgl2"] + str(g["F"].get("n", ""))
        return f"dp8 F={F} K={g['K']} phi={g['phi']} twist={g['twist']} order={doc['order']}"
    if "hex" in doc:
        return f"dp6 order={doc['order']} generators={len(doc['hex']['generators'])}"
    if "iso" in doc:
        return f"dp5 {doc['iso']} order={doc['order']}"
    return f"p2 {doc['pgl3']['realization']} order={doc['order']}"


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args, out) -> int:
    degrees = args.universe.split(",") if args.universe else list(DEGREES)
    for d in degrees:
        if d not in DEGREES:
            raise UsageError(f"unknown universe component {d!r}; choose from {', '.join(DEGREES)}")
    kw = dict(max_n=args.max_n, order_bound=args.max_order, ga1f5_policy=args.ga1f5_policy)
    if args.check == "main":
        rep = verify_main_theorem(degrees, max_torsion=args.max_torsion, jobs=args.jobs, **kw)
    elif args.check == "superrigidity":
        rep = verify_superrigidity_monotonicity(degrees, max_torsion=args.max_torsion, jobs=args.jobs, **kw)
    else:
        rep = kernel_monotonicity_check(args.max_n, args.max_order)
    if args.format == "json":
        out.write(_dump(rep.to_json(args.timing)) + "\n")
    else:
        out.write(rep.to_text())
    return EXIT_OK if rep.ok else EXIT_VIOLATION


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sarkisov", description="Birational rigidity of finite group actions on del Pezzo surfaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--max-order", type=int, default=None, help="materialization cap (default: SARKISOV_MAX_ORDER or 240)")
        sp.add_argument("--ga1f5-policy", choices=("unknown", "notrigid"), default="unknown")

    for name in ("decide", "witness"):
        sp = sub.add_parser(name)
        sp.add_argument("--surface", choices=SURFACES, required=True)
        sp.add_argument("--goursat", help="degree-8 Goursat datum")
        sp.add_argument("--hex", help="degree-6 hexagon-model group")
        sp.add_argument("--pgl3", help="P^2 group: realization name or 3x3 matrices")
        sp.add_argument("--iso", help="abstract group (degrees 1-5), with fixed-point info for degree 4")
        common(sp)

    sp = sub.add_parser("enumerate")
    sp.add_argument("--surface", choices=("dp5", "dp6", "dp8", "p2"), required=True)
    sp.add_argument("--max-n", type=int, default=12, help="largest n for C_n, D_n (dp8) or torus torsion (dp6)")
    common(sp)

    sp = sub.add_parser("verify")
    sp.add_argument("--universe", default=None, help="comma-separated subset of dp5,dp6,dp8,p2")
    sp.add_argument("--check", choices=("main", "superrigidity", "kernel"), default="main")
    sp.add_argument("--max-n", type=int, default=12)
    sp.add_argument("--max-torsion", type=int, default=12)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="include runtime statistics (not byte-stable)")
    common(sp)
    return p


COMMANDS = {"decide": cmd_decide, "witness": cmd_witness, "enumerate": cmd_enumerate, "verify": cmd_verify}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    if args.max_order is not None:
        os.environ["SARKISOV_MAX_ORDER"] = str(args.max_order)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as e:
        print(f"sarkisov: {e}", file=sys.stderr)
        return EXIT_USAGE
    except WitnessMismatch as e:
        print(f"sarkisov: witness mismatch: {e}", file=sys.stderr)
        if e.audit is not None:
            print(_dump(e.audit.to_json()), file=sys.stderr)
        return EXIT_MISMATCH
    except (NotMinimal, InvalidDatum, NoSwapExtension, OrderBoundExceeded, ValueError, KeyError) as e:
        print(f"sarkisov: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
