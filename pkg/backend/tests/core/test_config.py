import pytest
from pydantic import ValidationError

from app.core.config import Settings
from app.core.errors import (
    EXIT_CONFIG,
    EXIT_INTERNAL,
    CertificateError,
    TooLargeToEnumerate,
)


def test_defaults() -> None:
    s = Settings(_env_file=None)  # type: ignore[call-arg]
    assert s.DEFAULT_CONFIDENCE == 0.99
    assert s.DEFAULT_PRECISION_BITS == 53
    assert s.ENUMERATION_GUARD == 10**7


def test_threads_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("ORIGINLAB_THREADS", "4")
    assert Settings(_env_file=None).THREADS == 4  # type: ignore[call-arg]


def test_rejects_zero_threads(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("ORIGINLAB_THREADS", "0")
    with pytest.raises(ValidationError):
        Settings(_env_file=None)  # type: ignore[call-arg]


def test_rejects_bad_confidence() -> None:
    with pytest.raises(ValidationError):
        Settings(_env_file=None, DEFAULT_CONFIDENCE=1.5)  # type: ignore[call-arg]


def test_error_exit_codes() -> None:
    assert TooLargeToEnumerate("x").exit_code == EXIT_CONFIG
    err = CertificateError("bad certificate")
    assert err.exit_code == EXIT_INTERNAL >= 64
    assert err.detail == "bad certificate"
