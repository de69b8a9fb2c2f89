"""HTTP service wrapping the kernel: submit session scripts, get reports.

POST /session runs a script and returns the full report stream plus the
summary lines and the exit code the CLI would have used.  POST /parse
validates a script and returns its canonical pretty-printed form.  The CLI
talks to these endpoints in --server mode and calls the same runner
in-process otherwise.
"""

from __future__ import annotations

from typing import Any, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .localcoh import DEFAULT_STREAK, DEFAULT_TMAX, DEFAULT_WINDOW
from .rings import KernelError
from .runner import RunOptions, run_session
from .session import ParseError, parse_session


class SessionOptions(BaseModel):
    window: list[int] = Field(default=list(DEFAULT_WINDOW),
                              min_length=2, max_length=2)
    t_max: int = DEFAULT_TMAX
    streak: int = DEFAULT_STREAK
    strict: bool = False
    threads: int = 1

    def to_run_options(self) -> RunOptions:
        return RunOptions(window=tuple(self.window), t_max=self.t_max,
                          streak=self.streak, strict=self.strict,
                          threads=self.threads)


class SessionRequest(BaseModel):
    script: str
    options: SessionOptions = SessionOptions()


class SessionResponse(BaseModel):
    reports: list[dict[str, Any]]
    summary: list[str]
    exit_code: int


class ParseRequest(BaseModel):
    script: str


class ParseResponse(BaseModel):
    statements: int
    canonical: str


class ErrorDetail(BaseModel):
    message: str
    line: Optional[int] = None
    col: Optional[int] = None


app = FastAPI(
    title="relcoh",
    description="Exact local cohomology, duality and base-change checks "
                "for graded modules over QQ[x] and QQ[t][x].",
)


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/parse", response_model=ParseResponse)
def parse_endpoint(request: ParseRequest):
    try:
        session = parse_session(request.script)
    except ParseError as exc:
        raise HTTPException(
            status_code=400,
            detail=ErrorDetail(message=exc.message, line=exc.line,
                               col=exc.col).model_dump(),
        )
    return ParseResponse(statements=len(session.statements),
                         canonical=session.pretty())


@app.post("/session", response_model=SessionResponse)
def session_endpoint(request: SessionRequest):
    try:
        session = parse_session(request.script)
    except ParseError as exc:
        raise HTTPException(
            status_code=400,
            detail=ErrorDetail(message=exc.message, line=exc.line,
                               col=exc.col).model_dump(),
        )
    try:
        result = run_session(session, request.options.to_run_options())
    except KernelError as exc:
        raise HTTPException(status_code=422,
                            detail=ErrorDetail(message=str(exc)).model_dump())
    return SessionResponse(reports=result.reports, summary=result.summary,
                           exit_code=result.exit_code)
