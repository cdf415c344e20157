"""Command-line interface.

Every run prints one document: the subcommand, its fully resolved
configuration and either a result or an error. Exit codes: 0 success,
1 usage error, 2 domain error, 3 precision error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .arith import DEFAULT_PREC, Padic
from .characters import DirichletCharacter, RootOfUnity
from .errors import DomainError, NotInGroundFieldError, PadicFormsError, PrecisionError
from .families import (
    WeightSpacePoint,
    continuity_defect,
    deprived_divisor_sum,
    eis_family_coeff,
    eval_point,
    weight_component,
)
from .garrett import (
    TripleLocalData,
    TripleWeights,
    admissibility_H,
    critical_values,
    degree8_euler_factor,
    dirichlet_L_partial,
    functional_eq_reflect,
    gamma_normalization,
    interpolation_points,
    is_balanced,
    named_local_data,
    triple_data_upto,
    triple_L_partial,
)
from .hecke import HeckeLocalData, atkin_U, hecke_polynomial, p_stabilize
from .newton import newton_polygon
from .qseries import delta_series, eisenstein_series, qexp_by_name, ramanujan_congruence_defect, tau, tau_upto
from .selftest import run_selftest
from .spectral import (
    eigenvector,
    resolved_eigenvalues,
    fredholm_series,
    kron_oldspace,
    riesz_projector,
    up_oldspace_matrix,
)

SCHEMA_ID = "padicforms.cli-output.v1"
PREC_ENV = "PADICFORMS_PREC"

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_PRECISION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- argument types -----------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}")


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(x) for x in text.split(",")]


def _weights(text: str) -> TripleWeights:
    parts = _int_list(text)
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated weights")
    return TripleWeights(*parts)


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a complex number, got {text!r}")


def _character(text: str) -> DirichletCharacter:
    """``M`` (trivial) or ``M:phase,phase,...`` with generator images as phases."""
    modulus, _, images = text.partition(":")
    try:
        m = int(modulus)
        phases = [Fraction(x) for x in images.split(",")] if images else None
        return DirichletCharacter(m, phases)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad character {text!r}: {exc}")


def _default_padic_prec() -> int:
    raw = os.environ.get(PREC_ENV)
    if raw is None:
        return DEFAULT_PREC
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{PREC_ENV} must be an integer, got {raw!r}")
    if value < 1:
        raise UsageError(f"{PREC_ENV} must be positive")
    return value


# -- serialization helpers ------------------------------------------------------------

def _padic(x: Padic) -> dict:
    out = x.to_json()
    out["lift"] = str(x.lift())
    out["centered"] = str(x.centered_lift())
    return out


def _exact(x) -> str:
    return str(x)


def _complex_out(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _psi_from_args(args) -> RootOfUnity | None:
    if args.psi is None:
        return RootOfUnity()
    if args.psi == "0":
        return None
    return RootOfUnity(_rational(args.psi))


def _local_data(args, form: str | None = None) -> HeckeLocalData:
    """Local data from ``--form`` or from explicit ``--ap/--weight/--psi``."""
    form = form or args.form
    if args.ap is not None:
        if args.weight is None:
            raise UsageError("--ap needs --weight")
        return HeckeLocalData(args.p, args.ap, args.weight, _psi_from_args(args), args.padic_prec)
    return named_local_data(form, args.p, args.padic_prec, weight=args.weight)


def _form_list(text: str) -> list[str]:
    names = [x.strip() for x in text.split(",") if x.strip()]
    if not names:
        raise argparse.ArgumentTypeError("expected at least one form name")
    return names


# -- commands ---------------------------------------------------------------------------

def cmd_qexp(args):
    if args.name == "hk" and args.weight is None:
        raise UsageError("qexp hk needs --weight")
    if args.name == "delta":
        series = delta_series(args.prec, method=args.method)
    else:
        series = qexp_by_name(args.name, args.prec, args.weight)
    out = series.to_json()
    out["name"] = args.name
    return out


def cmd_tau(args):
    if args.upto is not None:
        values = tau_upto(args.upto)
        return {"values": [{"n": n, "tau": _exact(v)} for n, v in enumerate(values, start=1)]}
    if not args.n:
        raise UsageError("give integers n or --upto")
    return {"values": [{"n": n, "tau": _exact(tau(n))} for n in args.n]}


def cmd_congruence(args):
    quotient = ramanujan_congruence_defect(args.prec)
    out = quotient.to_json()
    out["modulus"] = 691
    out["checked_upto"] = args.prec - 1
    return out


def cmd_hecke_poly(args):
    d = _local_data(args)
    embedding = args.embedding
    coeffs = hecke_polynomial(d, embedding)
    if embedding == "padic":
        rendered = [_padic(c) for c in coeffs]
    elif embedding == "complex":
        rendered = [_complex_out(c) for c in coeffs]
    else:
        rendered = [_exact(c) for c in coeffs]
    return {"p": d.p, "weight": d.k, "embedding": embedding, "coefficients": rendered,
            "slopes": [str(s) for s in d.slopes]}


def cmd_satake(args):
    return _local_data(args).to_json()


def cmd_stabilize(args):
    d = _local_data(args)
    if args.ap is not None:
        raise UsageError("stabilize needs a named form (its q-expansion)")
    f = _named_series(args.form, d.k, args.prec * d.p + 1)
    f0, eigenvalue = p_stabilize(f, d, args.choice, args.embedding)
    u = atkin_U(d.p, f0, prec=args.prec)
    lhs, rhs = u, f0.truncate(args.prec).scale(eigenvalue)
    if args.embedding == "complex":
        residual = max((abs(a - b) for a, b in zip(lhs.coeffs, rhs.coeffs)), default=0.0)
        scale = max((abs(b) for b in rhs.coeffs), default=1.0) or 1.0
        check = {"max_relative_residual": residual / scale}
        ev = _complex_out(eigenvalue)
    else:
        check = {"exact_at_precision": lhs == rhs}
        ev = _padic(eigenvalue)
    return {"p": d.p, "choice": args.choice, "embedding": args.embedding, "eigenvalue": ev,
            "series": f0.truncate(args.prec).to_json(), "eigen_check": check}


def _named_series(form: str, k: int, prec: int):
    if form == "delta":
        return delta_series(prec)
    return eisenstein_series(k, prec)


def cmd_up_matrix(args):
    d = _local_data(args)
    if args.embedding == "exact":
        m = up_oldspace_matrix(d, "exact")
        return {"p": d.p, "embedding": "exact", "rows": [[_exact(x) for x in r] for r in m]}
    m = up_oldspace_matrix(d, "padic")
    return {"p": d.p, "embedding": "padic", "rows": [[_padic(x) for x in r] for r in m.rows]}


def _oldspace_matrix(args):
    datas = [_local_data(args, form) for form in args.forms]
    return datas, kron_oldspace(datas, "exact" if args.exact else "padic")


def cmd_fredholm(args):
    datas, m = _oldspace_matrix(args)
    fs = fredholm_series(m)
    out = {"p": datas[0].p, "dimension": len(fs.coeffs) - 1, "exact": args.exact}
    if args.exact:
        out["coefficients"] = [_exact(c) for c in fs.coeffs]
        out["newton"] = newton_polygon(list(fs.coeffs), datas[0].p).to_json()
    else:
        out["coefficients"] = [_padic(c) for c in fs.coeffs]
        out["newton"] = newton_polygon(list(fs.coeffs), m.p).to_json()
    return out


def cmd_newton(args):
    return newton_polygon(args.coeffs, args.p).to_json()


def cmd_projector(args):
    args.exact = False
    datas, m = _oldspace_matrix(args)
    eigs, unresolved = resolved_eigenvalues(m)
    if not eigs:
        raise NotInGroundFieldError(f"no simple eigenvalue of U_{m.p} found in Q_{m.p}")
    if not 0 <= args.index < len(eigs):
        raise DomainError(f"eigenvalue index must be in 0..{len(eigs) - 1}")
    lam = eigs[args.index]
    proj = riesz_projector(m, lam, min_digits=args.min_digits, method=args.method)
    vec, pivot = eigenvector(m, lam, min_digits=args.min_digits)
    return {
        "p": m.p,
        "eigenvalues": [_padic(e) for e in eigs],
        "unresolved": unresolved,
        "index": args.index,
        "eigenvalue": _padic(lam),
        "projector": [[_padic(x) for x in r] for r in proj.matrix.rows],
        "correct_digits": proj.matrix.correct_digits(),
        "eigenvector": [_padic(x) for x in vec],
        "pivot": pivot,
    }


def cmd_weight_eval(args):
    chi = args.character or DirichletCharacter.trivial(args.N * args.p**args.v)
    pt = WeightSpacePoint(args.N, args.p, args.v, args.r, chi)
    value = eval_point(pt, args.y1, args.y2, args.padic_prec)
    return {"point": pt.to_json(), "y1": args.y1, "y2": _exact(args.y2), "value": _padic(value),
            "full_conductor": pt.has_full_conductor()}


def cmd_eis_family(args):
    j = weight_component(args.weight, args.p) if args.component is None else args.component
    value = eis_family_coeff(args.n, args.weight, args.p, j, args.padic_prec)
    out = {"n": args.n, "weight": args.weight, "p": args.p, "component": j, "value": _padic(value)}
    if args.component is None or args.component == weight_component(args.weight, args.p):
        out["exact"] = _exact(deprived_divisor_sum(args.n, args.weight, args.p))
    return out


def cmd_continuity(args):
    defect = continuity_defect(args.n, args.k, args.k2, args.p, args.m)
    return {"n": args.n, "k": args.k, "k2": args.k2, "p": args.p, "m": args.m,
            "defect": "+inf" if defect == float("inf") else defect,
            "bound": args.m + 1, "satisfied": defect >= args.m + 1}


def cmd_balanced(args):
    w = args.weights
    return {"weights": list(w.as_tuple()), "balanced": is_balanced(w)}


def cmd_euler8(args):
    if len(args.forms) != 3:
        raise UsageError("euler8 needs exactly three forms")
    chi_p = RootOfUnity()
    d = TripleLocalData(tuple(named_local_data(f, args.p, args.padic_prec) for f in args.forms), chi_p)
    factor = degree8_euler_factor(d, args.ring)
    return factor.to_json()


def cmd_lpartial(args):
    a = [0] + tau_upto(args.terms)
    res = dirichlet_L_partial(a, args.character, args.s, args.terms, 12)
    out = res.to_json()
    out["form"] = "delta"
    return out


def cmd_triple_l(args):
    if len(args.forms) != 3:
        raise UsageError("triple-l needs exactly three forms")
    data = triple_data_upto(args.forms, args.primes, args.character, args.padic_prec)
    res = triple_L_partial(data, args.s)
    out = res.to_json()
    out["forms"] = args.forms
    out["prime_count"] = len(data)
    return out


def cmd_gamma(args):
    return {"weights": list(args.weights.as_tuple()), "s": _complex_out(args.s),
            "value": _complex_out(gamma_normalization(args.weights, args.s))}


def cmd_critical(args):
    out = critical_values(args.weights).to_json()
    out["weights"] = list(args.weights.as_tuple())
    out["interpolation_points"] = [{"r": r, "s": s} for r, s in interpolation_points(args.weights)]
    return out


def cmd_reflect(args):
    return {"weights": list(args.weights.as_tuple()), "s": str(args.s),
            "reflected": str(functional_eq_reflect(args.weights, args.s))}


def cmd_admissibility(args):
    if len(args.slopes) != 3:
        raise UsageError("admissibility needs three slopes")
    return {"slopes": [str(s) for s in args.slopes], "H": admissibility_H(*args.slopes)}


# -- parser -------------------------------------------------------------------------------

def _add_form_options(p, forms=False):
    if forms:
        p.add_argument("--forms", type=_form_list, default=["delta"], help="comma-separated form names")
    else:
        p.add_argument("--form", default="delta", help="delta, e<k> or hk (with --weight)")
    p.add_argument("--p", type=int, required=True, help="the prime")
    p.add_argument("--ap", type=_rational, help="explicit Hecke eigenvalue a_p")
    p.add_argument("--weight", type=int, help="weight for --ap or hk")
    p.add_argument("--psi", help="phase of psi(p) as a rational, or 0 when p divides the level")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--padic-prec", type=int, default=None,
                        help=f"p-adic working precision (default ${PREC_ENV} or {DEFAULT_PREC})")

    parser = _Parser(prog="padicforms", description="Modular forms, p-adic spectra and triple products.",
                     parents=[common])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--selftest", action="store_true", help="run the golden-vector smoke suite")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("qexp", cmd_qexp, "q-expansion of a named series")
    p.add_argument("name", choices=("delta", "e4", "e6", "hk", "partition"))
    p.add_argument("--prec", type=int, default=20, help="number of coefficients")
    p.add_argument("--weight", type=int, help="weight for hk")
    p.add_argument("--method", choices=("eisenstein", "eta"), default="eisenstein")

    p = add("tau", cmd_tau, "Ramanujan tau values")
    p.add_argument("n", type=int, nargs="*")
    p.add_argument("--upto", type=int)

    p = add("congruence", cmd_congruence, "(Delta - h12)/691")
    p.add_argument("--prec", type=int, default=20)

    p = add("hecke-poly", cmd_hecke_poly, "Hecke polynomial at p")
    _add_form_options(p)
    p.add_argument("--embedding", choices=("exact", "complex", "padic"), default="exact")

    p = add("satake", cmd_satake, "Satake parameters and slopes")
    _add_form_options(p)

    p = add("stabilize", cmd_stabilize, "p-stabilization and its U_p check")
    _add_form_options(p)
    p.add_argument("--prec", type=int, default=11, help="coefficients of the stabilized form")
    p.add_argument("--choice", choices=("alpha", "beta"), default="alpha")
    p.add_argument("--embedding", choices=("complex", "padic"), default="padic")

    p = add("up-matrix", cmd_up_matrix, "U_p on the oldspace basis (f, V f)")
    _add_form_options(p)
    p.add_argument("--embedding", choices=("exact", "padic"), default="padic")

    p = add("fredholm", cmd_fredholm, "Fredholm series of the (tensor) oldspace U_p")
    _add_form_options(p, forms=True)
    p.add_argument("--exact", action="store_true", help="exact integer arithmetic")

    p = add("newton", cmd_newton, "Newton polygon of a polynomial")
    p.add_argument("--coeffs", type=_rational_list, required=True, help="ascending coefficients")
    p.add_argument("--p", type=int, required=True)

    p = add("projector", cmd_projector, "Riesz projector of the oldspace U_p")
    _add_form_options(p, forms=True)
    p.add_argument("--index", type=int, default=0, help="eigenvalue index, ordered by slope")
    p.add_argument("--method", choices=("deflation", "lagrange"), default="deflation")
    p.add_argument("--min-digits", type=int, default=4)

    p = add("weight-eval", cmd_weight_eval, "evaluate an arithmetic weight (r, chi)")
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--v", type=int, default=1)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--character", type=_character, help="M or M:phase,...")
    p.add_argument("--y1", type=int, default=1)
    p.add_argument("--y2", type=int, required=True)

    p = add("eis-family", cmd_eis_family, "p-deprived divisor sum at a weight")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--component", type=int)

    p = add("continuity", cmd_continuity, "valuation of a family coefficient difference")
    for flag in ("--n", "--k", "--k2", "--p", "--m"):
        p.add_argument(flag, type=int, required=True)

    for name, func, text in (("balanced", cmd_balanced, "balanced-weight test"),
                             ("critical", cmd_critical, "critical values and interpolation points")):
        p = add(name, func, text)
        p.add_argument("--weights", type=_weights, required=True)

    p = add("euler8", cmd_euler8, "degree-8 local Euler factor")
    p.add_argument("--forms", type=_form_list, default=["delta", "delta", "delta"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--ring", choices=("exact", "complex", "padic"), default="exact")

    p = add("lpartial", cmd_lpartial, "partial Dirichlet series of Delta")
    p.add_argument("--s", type=_complex, required=True)
    p.add_argument("--terms", type=int, default=1000)
    p.add_argument("--character", type=_character)

    p = add("triple-l", cmd_triple_l, "partial triple-product Euler product")
    p.add_argument("--forms", type=_form_list, default=["delta", "delta", "delta"])
    p.add_argument("--s", type=_complex, required=True)
    p.add_argument("--primes", type=int, default=200, help="use primes p <= this bound")
    p.add_argument("--character", type=_character)

    p = add("gamma", cmd_gamma, "Gamma normalization of the triple product")
    p.add_argument("--weights", type=_weights, required=True)
    p.add_argument("--s", type=_complex, required=True)

    p = add("reflect", cmd_reflect, "functional-equation reflection")
    p.add_argument("--weights", type=_weights, required=True)
    p.add_argument("--s", type=_rational, required=True)

    p = add("admissibility", cmd_admissibility, "growth exponent H from the slopes")
    p.add_argument("--slopes", type=_rational_list, required=True)
    return parser


def _config(args) -> dict:
    skip = {"func", "format"}
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        out[key] = _config_value(value)
    return out


def _config_value(value):
    if isinstance(value, (list, tuple)):
        return [_config_value(v) for v in value]
    if isinstance(value, (bool, type(None), str)):
        return value
    if isinstance(value, int):
        return value if abs(value) < 2**53 else str(value)
    if isinstance(value, complex):
        return _complex_out(value)
    if isinstance(value, TripleWeights):
        return list(value.as_tuple())
    if isinstance(value, DirichletCharacter):
        return value.to_json()
    return str(value)


def _render_text(doc: dict) -> str:
    lines = [f"command: {doc['command']}"]
    lines += [f"config.{k}: {_flat(v)}" for k, v in doc["config"].items()]
    body = doc.get("result", doc.get("error"))
    key = "result" if "result" in doc else "error"
    lines += _text_lines(body, key)
    return "\n".join(lines) + "\n"


def _text_lines(value, prefix):
    if isinstance(value, dict):
        if "unit_digits" in value and "lift" in value:
            return [f"{prefix}: {value['centered']} + O({value['p']}^{value['absprec']})"]
        out = []
        for k, v in value.items():
            out += _text_lines(v, f"{prefix}.{k}")
        return out
    if isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        out = []
        for i, v in enumerate(value):
            out += _text_lines(v, f"{prefix}[{i}]")
        return out
    return [f"{prefix}: {_flat(value)}"]


def _flat(value) -> str:
    if isinstance(value, list):
        return " ".join(_flat(v) for v in value)
    if value is None:
        return "-"
    return str(value)


def _emit(doc: dict, fmt: str, stream) -> None:
    if fmt == "text":
        stream.write(_render_text(doc))
    else:
        stream.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def run(argv=None, stdout=None) -> int:
    """Run the CLI on ``argv`` and return the exit code."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.selftest:
        results = run_selftest()
        doc = {"schema": SCHEMA_ID, "command": "selftest", "config": {}, "result": {"checks": results}}
        _emit(doc, args.format, stdout)
        return EXIT_OK if all(r["passed"] for r in results) else EXIT_DOMAIN
    if args.command is None:
        parser.print_usage(sys.stderr)
        sys.stderr.write("padicforms: error: a subcommand is required\n")
        return EXIT_USAGE
    try:
        if args.padic_prec is None:
            args.padic_prec = _default_padic_prec()
        doc = {"schema": SCHEMA_ID, "command": args.command, "config": _config(args)}
        doc["result"] = args.func(args)
        code = EXIT_OK
    except UsageError as exc:
        sys.stderr.write(f"padicforms {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except PrecisionError as exc:
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_PRECISION
    except (DomainError, PadicFormsError) as exc:
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_DOMAIN
    _emit(doc, args.format, stdout)
    return code


def main() -> None:
    sys.exit(run())
