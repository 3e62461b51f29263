"""Command dispatch: an InputDocument plus a command name in, a report (or a
derived input document) plus an exit status out.

Exit statuses follow one contract everywhere: 0 success, 1 a verification
check failed (or ranks could not be certified), 2 bad input. Both the CLI
and the HTTP service call `run` and add transport, nothing else.
"""

from __future__ import annotations

from .documents import (
    CONVENTION,
    InputDocument,
    ReportDocument,
    character_to_jsonable,
    input_document_for,
    matrix_to_jsonable,
)
from .errors import InputError
from .koszul import homology_dims
from .lierep import (
    Character,
    LieRep,
    build_rep,
    canonical_flag,
    is_nilpotent,
    is_solvable,
)
from .modops import dual_rep, tensor_rep, verify_module_ops
from .numeric import collect_rank_diagnostics
from .spectra import (
    character_set_equal,
    joint_spectrum,
    slodkowski,
    verify_main_theorems,
)
from .weights import CheckResult, weight_table, verify_weight_properties

COMMANDS = (
    "check",
    "weights",
    "spectrum",
    "slodkowski",
    "homology",
    "dual",
    "tensor",
    "verify",
)

__all__ = ["COMMANDS", "run"]


def _build(document: InputDocument) -> tuple:
    names, matrices = document.resolve()
    return names, build_rep(matrices, document.tolerances)


def _input_echo(command: str, document: InputDocument, names, rep: LieRep, **params) -> dict:
    echo: dict = {"command": command}
    if document.fixture is not None:
        echo["fixture"] = document.fixture
    echo["dim"] = rep.dim_e
    echo["generators"] = [
        {"name": n, "matrix": matrix_to_jsonable(g)} for n, g in zip(names, rep.generators)
    ]
    echo["tolerances"] = {
        "eps_rank": rep.tol.eps_rank,
        "eps_cluster": rep.tol.eps_cluster,
        "eps_residual": rep.tol.eps_residual,
    }
    for key, value in params.items():
        if value is not None:
            echo[key] = value
    return echo


def _flag_section(rep: LieRep) -> dict:
    flag = canonical_flag(rep)
    return {
        "kind": flag.kind,
        "dims": list(flag.dims),
        "derived_prefix": flag.k,
        "max_residual": flag.max_residual,
    }


def _weights_section(table) -> list:
    return [
        {"weight": character_to_jsonable(e.weight), "multiplicity": e.multiplicity}
        for e in table.entries
    ]


def _character_list(chars) -> list:
    return [character_to_jsonable(c) for c in sorted(chars, key=lambda c: c.sort_key())]


def _check_section(checks) -> list:
    out = []
    for c in checks:
        row = {"name": c.name, "status": c.status, "detail": c.detail}
        if c.residual is not None:
            row["residual"] = c.residual
        out.append(row)
    return out


def _status_from(checks) -> int:
    return 1 if any(c.status == "fail" for c in checks) else 0


def _parse_character(values, n: int) -> Character:
    if values is None:
        raise InputError("this command needs a character", field="character")
    coords = []
    for v in values:
        if isinstance(v, (list, tuple)):
            if len(v) != 2:
                raise InputError("character entries must be numbers or [re, im] pairs",
                                 field="character")
            coords.append(complex(v[0], v[1]))
        else:
            coords.append(complex(v))
    if len(coords) != n:
        raise InputError(f"character has {len(coords)} coordinates, algebra has {n}",
                         field="character")
    return Character(tuple(coords))


def run(command: str, document: InputDocument, *, k=None, character=None,
        other: InputDocument | None = None, workers=None):
    """Execute one command. Returns (document, exit_status) where the
    document is a ReportDocument, or an InputDocument for dual/tensor."""
    if command not in COMMANDS:
        raise InputError(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}")

    with collect_rank_diagnostics() as diag:
        names, rep = _build(document)

        if command == "dual":
            dual = dual_rep(rep)
            out = input_document_for(
                [f"{n}*" for n in names], dual.generators, document.tolerances
            )
            return out, 0

        if command == "tensor":
            if other is None:
                raise InputError("tensor needs a second input document", field="with")
            other_names, other_rep = _build(other)
            product = tensor_rep(rep, other_rep)
            product_names = [f"{n}(x)1" for n in names]
            product_names += [f"1(x){n}" for n in other_names]
            out = input_document_for(product_names, product.generators, document.tolerances)
            return out, 0

        nilpotent = is_nilpotent(rep)
        report = ReportDocument(
            input=_input_echo(command, document, names, rep, k=k,
                              character=list(character) if character is not None else None),
            convention=dict(CONVENTION),
            nilpotent=nilpotent,
            solvable=is_solvable(rep),
        )
        status = 0

        if command == "check":
            report.flag = _flag_section(rep)

        elif command == "weights":
            table = weight_table(rep)
            report.flag = _flag_section(rep)
            report.weights = _weights_section(table)
            checks = verify_weight_properties(rep, table)
            report.verification = _check_section(checks)
            status = _status_from(checks)

        elif command == "spectrum":
            table = weight_table(rep)
            spec = joint_spectrum(rep, workers=workers)
            report.flag = _flag_section(rep)
            report.weights = _weights_section(table)
            report.candidates = [
                {"character": character_to_jsonable(c), "homology": list(dims)}
                for c, dims in sorted(spec.candidates, key=lambda t: t[0].sort_key())
            ]
            report.sigma_p = [_character_list(s) for s in spec.sigma_p]
            report.sp = _character_list(spec.sp)
            report.slodkowski = {
                "delta": [_character_list(s) for s in spec.delta],
                "pi": [_character_list(s) for s in spec.pi],
            }
            if not character_set_equal(spec.sp, table.weights, rep.tol.eps_cluster):
                report.notes = [
                    "sp differs from the weight set (expected: non-nilpotent input)"
                ]

        elif command == "slodkowski":
            if k is None:
                raise InputError("slodkowski needs --k", field="k")
            spec = joint_spectrum(rep, workers=workers)
            delta_k, pi_k = slodkowski(rep, int(k), report=spec)
            report.sp = _character_list(spec.sp)
            report.slodkowski = {
                "k": int(k),
                "delta": _character_list(delta_k),
                "pi": _character_list(pi_k),
            }

        elif command == "homology":
            f = _parse_character(character, rep.n)
            dims = homology_dims(rep, f)
            report.candidates = [
                {"character": character_to_jsonable(f), "homology": list(dims)}
            ]

        elif command == "verify":
            checks = verify_weight_properties(rep, weight_table(rep))
            if nilpotent:
                checks += verify_main_theorems(rep, workers=workers)
                if other is not None:
                    _, other_rep = _build(other)
                    checks += verify_module_ops(rep, other_rep)
                else:
                    checks += verify_module_ops(rep)
            else:
                checks.append(
                    CheckResult(
                        "main-theorems",
                        "not applicable",
                        "theorem suite needs a nilpotent algebra; "
                        "sp and the weight set may legitimately differ here",
                    )
                )
                report.notes = ["input is not nilpotent; only weight properties checked"]
            report.verification = _check_section(checks)
            status = _status_from(checks)

        report.diagnostics = diag.summary()
    return report, status
