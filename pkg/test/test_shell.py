from typing import List

import pytest

from pyns2.cli import SessionConfig
from pyns2.shell import namespace, repl


class ScriptedPrompt:
    def __init__(self, lines: List[str]):
        self.lines = list(lines)

    async def prompt_async(self) -> str:
        if not self.lines:
            raise EOFError
        return self.lines.pop(0)


@pytest.mark.asyncio
async def test_repl(capsys: pytest.CaptureFixture[str]) -> None:
    scope = namespace(SessionConfig(m=2, cache_dir=None))
    prompt = ScriptedPrompt(["len(labels)", "", "   ", "None", "1/0", "str(label('1/2,1/2'))", "c"])
    await repl(prompt, scope)
    out = capsys.readouterr().out.splitlines()
    assert out == ["6", "ZeroDivisionError: division by zero", "(1/2,1/2)", "3/2"]


@pytest.mark.asyncio
async def test_repl_awaits() -> None:
    scope = namespace(SessionConfig(m=1, cache_dir=None))
    seen: List[int] = []

    async def later() -> None:
        seen.append(1)

    scope["later"] = later
    await repl(ScriptedPrompt(["later()"]), scope)
    assert seen == [1]


def test_namespace() -> None:
    scope = namespace(SessionConfig(m=1, cache_dir=None))
    assert scope["m"] == 1
    assert scope["label"]("1/2,1/2").m == 1
    assert len(scope["labels"]) == 3
