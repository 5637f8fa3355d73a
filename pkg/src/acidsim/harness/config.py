"""``key = value`` configuration files.

Keys are dotted (``model.alpha``); a ``[model]`` section header prefixes the
keys that follow it, so ``[model]`` + ``alpha = 6`` equals ``model.alpha = 6``.
``#`` starts a comment.  Coefficient presets are written ``kind`` or
``kind:scale``, e.g. ``model.mu2 = linear`` or ``model.psi = const:0.5``.
"""
from __future__ import annotations

import configparser
from pathlib import Path

from ..errors import ConfigError
from ..grid import Grid1D, build_grid
from ..kernels import kernel_from_name
from ..model import ConstantDiffusivity, ModelSpec, Rate, Source
from ..stepper import SolverConfig

__all__ = [
    "KNOWN_KEYS",
    "parse_config",
    "load_config",
    "format_config",
    "parse_override",
    "apply_overrides",
    "spec_to_items",
]

_ROOT = "__root__"

KNOWN_KEYS = (
    "domain.x_min", "domain.x_max", "domain.dx",
    "time.dt", "time.T", "time.refresh_interval",
    "model.alpha", "model.beta", "model.gamma", "model.mu1", "model.D_H", "model.lambda",
    "model.kernel1", "model.kernel2", "model.reduced",
    "model.psi", "model.mu2", "model.mu3", "model.mu3_tilde", "model.g", "model.F",
    "solver.blowup_threshold",
    "sweep.alpha_min", "sweep.alpha_max", "sweep.step",
    "output.dir", "output.snapshot_times",
    "bounds.s", "bounds.K", "bounds.delta", "bounds.eta", "bounds.mu3_tilde_sup",
    "bounds.q", "bounds.K1", "bounds.K2", "bounds.poincare",
)


def parse_config(text: str) -> dict[str, str]:
    parser = configparser.ConfigParser(
        interpolation=None,
        inline_comment_prefixes=("#",),
        comment_prefixes=("#",),
        delimiters=("=",),
        strict=True,
    )
    parser.optionxform = str
    try:
        parser.read_string(f"[{_ROOT}]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    flat: dict[str, str] = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            full = key if section == _ROOT else f"{section}.{key}"
            if full not in KNOWN_KEYS:
                raise ConfigError(f"unknown config key {full!r}")
            flat[full] = value.strip()
    return flat


def load_config(path) -> dict[str, str]:
    return parse_config(Path(path).read_text())


def format_config(items: dict[str, str]) -> str:
    """Render flat items grouped under section headers (inverse of ``parse_config``)."""
    sections: dict[str, list[tuple[str, str]]] = {}
    for key, value in items.items():
        section, _, name = key.partition(".")
        sections.setdefault(section, []).append((name, value))
    lines = []
    for section, pairs in sections.items():
        lines.append(f"[{section}]")
        lines.extend(f"{name} = {value}" for name, value in pairs)
        lines.append("")
    return "\n".join(lines)


def parse_override(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    key = key.strip()
    if not sep or not key:
        raise ConfigError(f"override {text!r} is not of the form key=value")
    if key not in KNOWN_KEYS:
        raise ConfigError(f"unknown config key {key!r}")
    return key, value.strip()


def apply_overrides(items: dict[str, str], overrides) -> dict[str, str]:
    out = dict(items)
    for entry in overrides:
        key, value = parse_override(entry) if isinstance(entry, str) else entry
        out[key] = value
    return out


# -- typed accessors -------------------------------------------------------

def get_float(items, key, default=None) -> float:
    if key not in items:
        if default is None:
            raise ConfigError(f"missing config key {key!r}")
        return float(default)
    try:
        return float(items[key])
    except ValueError:
        raise ConfigError(f"{key} = {items[key]!r} is not a number") from None


def get_bool(items, key, default=False) -> bool:
    if key not in items:
        return default
    value = items[key].strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key} = {items[key]!r} is not a boolean")


def get_floats(items, key, default=()) -> tuple[float, ...]:
    if key not in items:
        return tuple(default)
    raw = items[key].replace(";", ",").split(",")
    try:
        return tuple(float(v) for v in raw if v.strip())
    except ValueError:
        raise ConfigError(f"{key} = {items[key]!r} is not a list of numbers") from None


def _preset(text: str):
    kind, _, scale = text.partition(":")
    return kind.strip(), (float(scale) if scale.strip() else None)


def _format_number(x: float) -> str:
    return repr(float(x))


def _rate_text(r) -> str:
    if not isinstance(r, Rate):
        raise ConfigError("only preset rates can be written to a config file")
    return r.kind if r.scale == 1.0 else f"{r.kind}:{_format_number(r.scale)}"


def grid_from_items(items) -> Grid1D:
    return build_grid(
        get_float(items, "domain.x_min", -5.0),
        get_float(items, "domain.x_max", 5.0),
        get_float(items, "domain.dx", 0.05),
    )


def solver_from_items(items) -> SolverConfig:
    return SolverConfig(
        dt=get_float(items, "time.dt", 1e-4),
        T_final=get_float(items, "time.T", 50.0),
        refresh_interval=int(get_float(items, "time.refresh_interval", 40)),
        blowup_threshold=get_float(items, "solver.blowup_threshold", 1e6),
        snapshot_times=get_floats(items, "output.snapshot_times", ()),
    )


def spec_from_items(items) -> ModelSpec:
    kw = {}
    for key, field_name in (
        ("model.alpha", "alpha"), ("model.beta", "beta"), ("model.gamma", "gamma"),
        ("model.mu1", "mu1"), ("model.D_H", "D_H"), ("model.lambda", "lam"),
    ):
        if key in items:
            kw[field_name] = get_float(items, key)
    for key, field_name in (("model.kernel1", "kernel1"), ("model.kernel2", "kernel2")):
        if key in items:
            kw[field_name] = kernel_from_name(items[key])
    kw["reduced"] = get_bool(items, "model.reduced", False)
    if "model.psi" in items:
        kind, scale = _preset(items["model.psi"])
        if kind != "const":
            raise ConfigError("model.psi supports only const:<value>")
        kw["psi"] = ConstantDiffusivity(0.5 if scale is None else scale)
    for key in ("mu2", "mu3", "mu3_tilde"):
        if f"model.{key}" in items:
            kind, scale = _preset(items[f"model.{key}"])
            kw[key] = Rate(kind, 1.0 if scale is None else scale)
    if "model.g" in items:
        kind, scale = _preset(items["model.g"])
        kw["g"] = Source(kind, 1.0 if scale is None else scale)
    if "model.F" in items:
        kw["F_kind"] = items["model.F"].strip()
    return ModelSpec(**kw)


def spec_to_items(spec: ModelSpec) -> dict[str, str]:
    """Flat config items describing ``spec``; presets only."""
    if not spec.compiled_ok:
        raise ConfigError("only specs built from preset coefficients can be serialized")
    if spec.kernel1.kind == "tabulated" or spec.kernel2.kind == "tabulated":
        raise ConfigError("tabulated kernels cannot be serialized")
    g = spec.g
    return {
        "model.alpha": _format_number(spec.alpha),
        "model.beta": _format_number(spec.beta),
        "model.gamma": _format_number(spec.gamma),
        "model.mu1": _format_number(spec.mu1),
        "model.D_H": _format_number(spec.D_H),
        "model.lambda": _format_number(spec.lam),
        "model.kernel1": spec.kernel1.kind,
        "model.kernel2": spec.kernel2.kind,
        "model.reduced": "true" if spec.reduced else "false",
        "model.psi": f"const:{_format_number(spec.psi.value)}",
        "model.mu2": _rate_text(spec.mu2),
        "model.mu3": _rate_text(spec.mu3),
        "model.mu3_tilde": _rate_text(spec.mu3_tilde),
        "model.g": g.kind if g.scale == 1.0 else f"{g.kind}:{_format_number(g.scale)}",
        "model.F": spec.F_kind,
    }
