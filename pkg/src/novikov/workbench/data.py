"""Fundamental-domain chain data (M_N; N, zN) and its JSON form.

Degree conventions in the file format, with L = len(N_ranks):

* ``d_D``, ``a``, ``d_F``: lists of L - 1 matrices, the j-th one leaving degree j + 1;
* ``e``, ``f``: lists of L matrices, the j-th one leaving degree j.

E_i = D_i + F_i with D's basis first, d_E = [[d_D, a], [0, d_F]], g the
standard inclusion and h = [e; f] : zD -> E.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List

from ..errors import DimensionMismatch, SchemaError, ValidationError
from ..group_algebra import coefficient_ring
from ..homological_core import BasedComplex, ValidationReport
from ..matrix import Matrix

REQUIRED_KEYS = ("k", "alpha", "N_ranks", "handle_ranks", "d_D", "a", "d_F", "e", "f")


@dataclass
class FundamentalDomainData:
    k: int
    alpha: List[List[int]]
    N_ranks: List[int]
    handle_ranks: List[int]
    d_D: List[Matrix]
    a: List[Matrix]
    d_F: List[Matrix]
    e: List[Matrix]
    f: List[Matrix]
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def ring(self):
        return coefficient_ring(self.k, self.alpha)

    @property
    def name(self) -> str:
        return str(self.meta.get("name", ""))

    @property
    def xi(self) -> str:
        return str(self.meta.get("xi", ""))

    @property
    def degrees(self) -> int:
        return len(self.N_ranks)

    def E_ranks(self) -> List[int]:
        return [n + c for n, c in zip(self.N_ranks, self.handle_ranks)]

    def D(self) -> BasedComplex:
        return BasedComplex(self.ring, self.N_ranks, self.d_D, check=False)

    def d_E(self, i: int) -> Matrix:
        ring = self.ring
        n, c = self.N_ranks, self.handle_ranks
        lower = Matrix.zeros(ring, c[i - 1], n[i])
        return Matrix.block(ring, [[self.d_D[i - 1], self.a[i - 1]], [lower, self.d_F[i - 1]]])

    def E(self) -> BasedComplex:
        return BasedComplex(self.ring, self.E_ranks(), [self.d_E(i) for i in range(1, self.degrees)], check=False)

    def g(self) -> List[Matrix]:
        ring = self.ring
        return [Matrix.block(ring, [[Matrix.identity(ring, n)], [Matrix.zeros(ring, c, n)]])
                for n, c in zip(self.N_ranks, self.handle_ranks)]

    def h(self) -> List[Matrix]:
        return [Matrix.block(self.ring, [[e], [f]]) for e, f in zip(self.e, self.f)]

    def validate(self) -> ValidationReport:
        return validate_fundamental_domain(self)

    def to_json(self) -> dict:
        enc = self.ring.element_to_json
        mat = lambda m: [[enc(x) for x in row] for row in m.rows]  # noqa: E731
        return {
            "k": self.k,
            "alpha": [list(r) for r in self.alpha],
            "N_ranks": list(self.N_ranks),
            "handle_ranks": list(self.handle_ranks),
            "d_D": [mat(m) for m in self.d_D],
            "a": [mat(m) for m in self.a],
            "d_F": [mat(m) for m in self.d_F],
            "e": [mat(m) for m in self.e],
            "f": [mat(m) for m in self.f],
            "meta": dict(self.meta),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=False)


def validate_fundamental_domain(fd: FundamentalDomainData) -> ValidationReport:
    """All identities needed for C(g - zh) to be a complex, reported by block."""
    report = ValidationReport()
    ring = fd.ring
    al = lambda m: m.map(lambda x: ring.alpha(x, 1))  # noqa: E731
    L = fd.degrees
    for i in range(2, L):
        report.extend("d_D d_D = 0", i, fd.d_D[i - 2] * fd.d_D[i - 1])
        report.extend("d_F d_F = 0", i, fd.d_F[i - 2] * fd.d_F[i - 1])
        report.extend("d_D a + a d_F = 0", i, fd.d_D[i - 2] * fd.a[i - 1] + fd.a[i - 2] * fd.d_F[i - 1])
    for i in range(1, L):
        # alpha(d_E) h = h d_D, top and bottom blocks
        top = al(fd.d_D[i - 1]) * fd.e[i] + al(fd.a[i - 1]) * fd.f[i] - fd.e[i - 1] * fd.d_D[i - 1]
        bottom = al(fd.d_F[i - 1]) * fd.f[i] - fd.f[i - 1] * fd.d_D[i - 1]
        report.extend("alpha(d_D) e + alpha(a) f = e d_D", i, top)
        report.extend("alpha(d_F) f = f d_D", i, bottom)
    return report


# ---------------------------------------------------------------------------
# parsing

def _load(source) -> dict:
    if isinstance(source, dict):
        return source
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise SchemaError(f"cannot read {source}: {exc}") from exc
    else:
        text = source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("top level must be a JSON object")
    return data


def _int_list(data, name: str) -> List[int]:
    if not isinstance(data, list) or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0
                                             for x in data):
        raise SchemaError(f"{name} must be a list of nonnegative integers")
    return list(data)


def parse_matrix(data, ring, nrows: int, ncols: int, where: str) -> Matrix:
    if not isinstance(data, list):
        raise SchemaError(f"{where}: expected a nested array")
    if nrows == 0:
        if data and data != [[]]:
            raise SchemaError(f"{where}: expected an empty matrix (0 x {ncols})")
        return Matrix.zeros(ring, 0, ncols)
    if ncols == 0 and data == []:
        return Matrix.zeros(ring, nrows, 0)
    if len(data) != nrows:
        raise SchemaError(f"{where}: expected {nrows} rows, got {len(data)}")
    rows = []
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != ncols:
            raise SchemaError(f"{where}: row {r} must have {ncols} entries")
        try:
            rows.append([ring.element_from_json(x) for x in row])
        except SchemaError as exc:
            raise SchemaError(f"{where}, row {r}: {exc}") from exc
    return Matrix(ring, rows, nrows, ncols)


def load_fundamental_domain(source) -> FundamentalDomainData:
    """Parse without checking the homological identities."""
    data = _load(source)
    missing = [k for k in REQUIRED_KEYS if k not in data]
    if missing:
        raise SchemaError(f"missing keys: {', '.join(missing)}")
    k = data["k"]
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise SchemaError("k must be a nonnegative integer")
    alpha = data["alpha"]
    if not isinstance(alpha, list) or len(alpha) != k:
        raise SchemaError(f"alpha must be a {k} x {k} integer matrix")
    try:
        alpha = [[int(x) if isinstance(x, int) else int(str(x), 10) for x in row] for row in alpha]
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"alpha entries must be integers: {exc}") from exc
    if any(len(row) != k for row in alpha):
        raise SchemaError(f"alpha must be a {k} x {k} integer matrix")
    try:
        ring = coefficient_ring(k, alpha)
    except (ValueError, DimensionMismatch) as exc:
        raise SchemaError(f"alpha: {exc}") from exc
    n = _int_list(data["N_ranks"], "N_ranks")
    c = _int_list(data["handle_ranks"], "handle_ranks")
    L = max(len(n), len(c))
    n += [0] * (L - len(n))
    c += [0] * (L - len(c))

    def mats(key: str, count: int, shape):
        raw = data[key]
        if not isinstance(raw, list) or len(raw) > count:
            raise SchemaError(f"{key} must be a list of at most {count} matrices")
        raw = list(raw) + [[]] * (count - len(raw))
        return [parse_matrix(m, ring, *shape(j), where=f"{key}[{j}]") for j, m in enumerate(raw)]

    d_D = mats("d_D", L - 1, lambda j: (n[j], n[j + 1]))
    a = mats("a", L - 1, lambda j: (n[j], c[j + 1]))
    d_F = mats("d_F", L - 1, lambda j: (c[j], c[j + 1]))
    e = mats("e", L, lambda j: (n[j], n[j]))
    f = mats("f", L, lambda j: (c[j], n[j]))
    meta = data.get("meta", {})
    if not isinstance(meta, dict):
        raise SchemaError("meta must be an object")
    return FundamentalDomainData(k, alpha, n, c, d_D, a, d_F, e, f, meta)


def parse_and_validate(source) -> FundamentalDomainData:
    fd = load_fundamental_domain(source)
    report = fd.validate()
    if not report.passed:
        raise ValidationError(f"fundamental-domain data is not valid:\n{report}", report)
    return fd


def bundled_names() -> List[str]:
    pkg = resources.files("novikov") / "data"
    return sorted(p.name[:-5] for p in pkg.iterdir() if p.name.endswith(".json"))


def bundled_path(name: str):
    return resources.files("novikov") / "data" / f"{name}.json"


def load_bundled(name: str) -> FundamentalDomainData:
    path = bundled_path(name)
    if not path.is_file():
        from ..errors import UnknownExample
        raise UnknownExample(name)
    return parse_and_validate(path.read_text(encoding="utf-8"))
