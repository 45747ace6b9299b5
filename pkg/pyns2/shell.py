from __future__ import annotations

import inspect
from fractions import Fraction
from typing import Any, Dict, Protocol

from prompt_toolkit.patch_stdout import patch_stdout
from prompt_toolkit.shortcuts import PromptSession

from .cli import SessionConfig
from .minimal import MinimalLabel, classify_chirality, fusion_upper_bound, parse_label, spectrum
from .pbw import VacuumModule, VermaModule, VermaParams
from .superalg import bracket, mode_from_text
from .verma import character, gram, primitive_vectors, singular_vectors


def namespace(config: SessionConfig) -> Dict[str, Any]:
    """Names visible at the prompt, with the session's m and convention bound."""
    from .coset import CosetModel, find_affine_hw, verify_affine_relations
    from .oddvar import VertexAlgebra, verify_odd_calculus

    def label(text: str) -> MinimalLabel:
        return parse_label(text, config.m)

    return {
        "config": config,
        "m": config.m,
        "c": config.c,
        "Fraction": Fraction,
        "F": Fraction,
        "label": label,
        "labels": spectrum(config.m, config.convention),
        "mode": mode_from_text,
        "bracket": bracket,
        "VermaParams": VermaParams,
        "VermaModule": VermaModule,
        "VacuumModule": VacuumModule,
        "gram": gram,
        "singular_vectors": singular_vectors,
        "primitive_vectors": primitive_vectors,
        "character": character,
        "chirality": classify_chirality,
        "fusion_upper_bound": fusion_upper_bound,
        "CosetModel": CosetModel,
        "verify_affine_relations": verify_affine_relations,
        "find_affine_hw": find_affine_hw,
        "VertexAlgebra": VertexAlgebra,
        "verify_odd_calculus": verify_odd_calculus,
    }


class Prompt(Protocol):
    async def prompt_async(self) -> str: ...


def evaluate(line: str, scope: Dict[str, Any]) -> Any:
    return eval(line, scope)


async def repl(session: Prompt, scope: Dict[str, Any]) -> None:
    while True:
        try:
            line = await session.prompt_async()
            if not line.strip():
                continue
            r = evaluate(line, scope)
            if inspect.isawaitable(r):
                r = await r
            if r is not None:
                print(r)
        except (EOFError, KeyboardInterrupt):
            return
        except Exception as ex:
            print(f"{type(ex).__name__}: {ex}")


async def interactive_shell(config: SessionConfig) -> None:
    """
    A small repl evaluating python expressions against the engine, e.g.

        (eval) > gram(label("1/2,1/2").params, 1, 0).entries
        (eval) > chirality(label("1/2,3/2"))
    """
    with patch_stdout():
        session: PromptSession[str] = PromptSession("(eval) > ")
        await repl(session, namespace(config))
