"""Acceptance grid: named cells, each returning a list of reports."""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from .report import FAIL, PASS, VerificationReport


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    complex_bits: int = 192
    padic_digits: int = 40
    es_bound: int = 200
    fe_max_conductor: int = 12
    fe_r_range: tuple = (-3, 4)
    li_max_conductor: int = 12
    li_r: tuple = (1, 2, 3)
    class_number_max_p: int = 67
    cnf_fields: tuple = (1, 3, 4, 5)
    kummer_primes: tuple = (3, 5, 7)
    stickelberger_level: int = 9
    mc_cases: tuple = ((3, 5, 2), (5, 12, 2), (7, 8, 1))
    exact_sequence_cases: tuple = ((3, 3), (5, 2), (3, 4))
    recip_primes: tuple = (3, 5)
    recip_r: tuple = (2, 3)
    jobs: int = 1
    only: tuple = ()
    cells: tuple | None = None
    data_file: str | None = None

    @classmethod
    def from_toml(cls, path: str | Path | None) -> SuiteConfig:
        if path is None:
            text = resources.files("cycloverify").joinpath("data/default_suite.toml").read_text()
        else:
            try:
                text = Path(path).read_text()
            except OSError as exc:
                raise ConfigError(f"cannot read config {path}: {exc}") from exc
        try:
            raw = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"bad TOML: {exc}") from exc
        return cls.from_dict(raw)

    @classmethod
    def from_dict(cls, raw: dict) -> SuiteConfig:
        cfg = cls()
        flat = {}
        for section, vals in raw.items():
            if isinstance(vals, dict):
                flat.update(vals)
            else:
                flat[section] = vals
        for k, v in flat.items():
            if not hasattr(cfg, k):
                raise ConfigError(f"unknown config key {k!r}")
            if isinstance(v, list):
                v = tuple(tuple(x) if isinstance(x, list) else x for x in v)
            setattr(cfg, k, v)
        return cfg


# -- cells -----------------------------------------------------------------------------------

def cell_es_norm(cfg: SuiteConfig) -> list[VerificationReport]:
    from .chars import kronecker_character, trivial_character
    from .eulersys import verify_es_axioms_r1

    return [verify_es_axioms_r1(chi, cfg.es_bound)
            for chi in (trivial_character(1), kronecker_character(5), kronecker_character(-4))]


def cell_hurwitz_fe(cfg: SuiteConfig) -> list[VerificationReport]:
    from .lcomplex import check_hurwitz_fe, fe_cases

    lo, hi = cfg.fe_r_range
    cases = fe_cases(cfg.fe_max_conductor, range(lo, hi + 1))
    return [check_hurwitz_fe(c, N, r, cfg.complex_bits) for c, N, r in cases]


def cell_li_identity(cfg: SuiteConfig) -> list[VerificationReport]:
    from .chars import primitive_characters
    from .lcomplex import _parity_matches, check_li_identity

    out = []
    for chi in primitive_characters(cfg.li_max_conductor):
        if chi.is_trivial:
            continue
        for r in cfg.li_r:
            if _parity_matches(chi, r):
                out.append(check_li_identity(chi, r, cfg.complex_bits))
    return out


def cell_exact_values(cfg: SuiteConfig) -> list[VerificationReport]:
    from .chars import kronecker_character, primitive_characters, trivial_character
    from .lcomplex import bernoulli, gen_bernoulli

    out = []
    z = gen_bernoulli(2, trivial_character(1)).value.to_fraction() * Fraction(-1, 2)
    out.append(_exact("zeta(-1)", z, Fraction(-1, 12)))
    l3 = -gen_bernoulli(1, kronecker_character(-3)).value.to_fraction()
    out.append(_exact("L(chi_-3, 0)", l3, Fraction(1, 3)))
    bad = []
    count = 0
    for chi in primitive_characters(12):
        for k in range(1, 9):
            v = gen_bernoulli(k, chi).value
            should_vanish = chi.parity != (1 if k % 2 == 0 else -1) and not (chi.is_trivial and k == 1)
            count += 1
            if v.is_zero() != should_vanish:
                bad.append((repr(chi), k))
    # trivial character against the recurrence oracle
    for k in range(2, 30):
        count += 1
        if gen_bernoulli(k, trivial_character(1)).value.to_fraction() != bernoulli(k):
            bad.append(("trivial", k))
    out.append(VerificationReport("parity-vanishing", {"max_conductor": 12, "k": [1, 8]},
                                  lhs=f"{count} values", rhs="parity rule",
                                  verdict=PASS if not bad else FAIL, details={"bad": bad}))
    return out


def _exact(name: str, got: Fraction, want: Fraction) -> VerificationReport:
    return VerificationReport("exact-l-value", {"value": name}, lhs=str(got), rhs=str(want),
                              verdict=PASS if got == want else FAIL)


def cell_class_numbers(cfg: SuiteConfig) -> list[VerificationReport]:
    from .arith import primes_upto
    from .lcomplex import published_relative_class_number, relative_class_number

    out = []
    for p in primes_upto(cfg.class_number_max_p):
        if p == 2:
            continue
        h = relative_class_number(p)
        ref = published_relative_class_number(p)
        ok = h == ref and (p > 19 or h == 1) and (p != 23 or h == 3)
        out.append(VerificationReport("relative-class-number", {"p": p}, lhs=str(h), rhs=str(ref),
                                      verdict=PASS if ok else FAIL))
    return out


def cell_cnf(cfg: SuiteConfig) -> list[VerificationReport]:
    from .lcomplex import check_class_number_formula

    return [check_class_number_formula(N, cfg.complex_bits) for N in cfg.cnf_fields]


def cell_kummer(cfg: SuiteConfig) -> list[VerificationReport]:
    from .chars import kronecker_character, trivial_character
    from .iwasawa import GammaCharacter
    from .kubota import Lp_interpolation_check, kummer_grid

    out = []
    family = {3: [trivial_character(1), kronecker_character(5), kronecker_character(-4)],
              5: [trivial_character(1), kronecker_character(-3), kronecker_character(12)],
              7: [trivial_character(1), kronecker_character(5), kronecker_character(-4)]}
    for p in cfg.kummer_primes:
        g = kummer_grid(p, family[p])
        out.append(VerificationReport("kummer-congruence", {"p": p, "kmax": g["kmax"]},
                                      lhs=f"{g['pairs']} pairs", rhs="mod p^(a+1)",
                                      verdict=g["verdict"], details={"failures": g["failures"][:10]}))
    n = cfg.stickelberger_level
    samples = [(kronecker_character(-4), 3, GammaCharacter.finite(3, 1, 1), 3),
               (kronecker_character(5), 3, GammaCharacter.finite(3, 2, 1), 2),
               (trivial_character(1), 3, GammaCharacter.trivial(3), 4),
               (trivial_character(1), 5, GammaCharacter.finite(5, 1, 1), 2)]
    for chi, p, tau, k in samples:
        out.append(Lp_interpolation_check(chi, p, tau, k, n=n))
    return out


def cell_mc2(cfg: SuiteConfig) -> list[VerificationReport]:
    from .chars import kronecker_character
    from .kubota import check_mc2_scalar

    return [check_mc2_scalar(kronecker_character(D), p, M) for p, D, M in cfg.mc_cases]


def cell_exact_sequence(cfg: SuiteConfig) -> list[VerificationReport]:
    from .padics import check_unramified_exact_sequence

    return [check_unramified_exact_sequence(p, f, cfg.padic_digits) for p, f in cfg.exact_sequence_cases]


def recip_family(p: int):
    from .chars import all_characters, kronecker_character

    quartic = next(c for c in all_characters(5) if c.order == 4)
    if p == 3:
        return [kronecker_character(5), kronecker_character(-4), quartic,
                kronecker_character(12), kronecker_character(-3), kronecker_character(-15)]
    return [kronecker_character(12), kronecker_character(-3), kronecker_character(-4),
            quartic, kronecker_character(-20), kronecker_character(5)]


def cell_recip(cfg: SuiteConfig) -> list[VerificationReport]:
    from .chars import kronecker_character
    from .recip import epsilon_generator_check, verify_indexcomp

    out = []
    for p in cfg.recip_primes:
        for chi in recip_family(p):
            for r in cfg.recip_r:
                out.append(verify_indexcomp(chi, r, p))
    out.append(epsilon_generator_check(kronecker_character(5), 2, 3, 1))
    return out


def cell_precision_doubling(cfg: SuiteConfig) -> list[VerificationReport]:
    """Numeric acceptance values recomputed at twice the working precision."""
    import mpmath

    from .chars import kronecker_character
    from .kubota import Lp_at_one
    from .lcomplex import check_hurwitz_fe, dedekind_zeta_leading, dirichlet_L

    out = []
    bits = cfg.complex_bits
    for c, N, r in ((1, 5, 2), (2, 7, -2), (5, 12, 3), (1, 3, 0)):
        a = check_hurwitz_fe(c, N, r, bits)
        b = check_hurwitz_fe(c, N, r, 2 * bits)
        out.append(_doubling(f"hurwitz-fe {c}/{N} r={r}", a.lhs, b.lhs, 96))
    chi = kronecker_character(-4)
    for r in (0, 1, 2):
        a = dirichlet_L(chi, r, bits).value
        b = dirichlet_L(chi, r, 2 * bits).value
        out.append(_doubling(f"L(chi_-4,{r})", mpmath.nstr(a, 60), mpmath.nstr(b, 60), 96))
    a = dedekind_zeta_leading(5, bits).value
    b = dedekind_zeta_leading(5, 2 * bits).value
    out.append(_doubling("zeta_F(0)* for N=5", mpmath.nstr(a, 60), mpmath.nstr(b, 60), 96))
    for p, D, M in cfg.mc_cases:
        x = Lp_at_one(kronecker_character(D), p, M, 30).value
        y = Lp_at_one(kronecker_character(D), p, M, 60).value
        ok = x.agrees_with(y, M + 1)
        out.append(VerificationReport("precision-doubling", {"value": f"L_p(1) p={p} D={D}"},
                                      lhs=str(x), rhs=str(y), agreement=x.agreement(y),
                                      requested=M + 1, verdict=PASS if ok else FAIL))
    return out


def _doubling(name: str, a, b, bits: int) -> VerificationReport:
    import mpmath

    with mpmath.workprec(4 * bits):
        x, y = mpmath.mpmathify(str(a).replace(" ", "")), mpmath.mpmathify(str(b).replace(" ", ""))
        diff = abs(x - y)
        scale = max(abs(y), mpmath.mpf(1))
        agree = float(-mpmath.log(diff / scale, 2)) if diff else float(bits * 2)
    return VerificationReport("precision-doubling", {"value": name}, lhs=str(a), rhs=str(b),
                              agreement=min(agree, 4 * bits), requested=bits,
                              verdict=PASS if agree >= bits else FAIL)


CELLS = {
    "es-norm": cell_es_norm,
    "hurwitz-fe": cell_hurwitz_fe,
    "li-identity": cell_li_identity,
    "exact-values": cell_exact_values,
    "class-numbers": cell_class_numbers,
    "cnf": cell_cnf,
    "kummer": cell_kummer,
    "mc-check": cell_mc2,
    "exact-sequence": cell_exact_sequence,
    "recip": cell_recip,
    "precision-doubling": cell_precision_doubling,
}
CRITERION = {name: i + 1 for i, name in enumerate(CELLS)}


@dataclass
class SuiteResult:
    cells: dict[str, list[VerificationReport]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for reps in self.cells.values() for r in reps)

    def summary(self) -> dict:
        return {name: {"criterion": CRITERION[name], "checks": len(reps),
                       "passed": sum(r.passed for r in reps),
                       "verdict": PASS if all(r.passed for r in reps) else FAIL}
                for name, reps in self.cells.items()}

    def to_dict(self, timing: bool = False) -> dict:
        return {"schema": 1, "verdict": PASS if self.passed else FAIL, "summary": self.summary(),
                "reports": {name: [r.to_dict(timing) for r in reps] for name, reps in self.cells.items()}}


def _run_cell(args):
    name, cfg = args
    return name, CELLS[name](cfg)


def selected_cells(cfg: SuiteConfig) -> list[str]:
    names = list(CELLS) if cfg.cells is None else list(cfg.cells)
    for n in list(names) + list(cfg.only):
        if n not in CELLS:
            raise ConfigError(f"unknown cell {n!r}")
    if cfg.only:
        names = [n for n in names if n in cfg.only]
    return names


def run_suite(cfg: SuiteConfig) -> SuiteResult:
    names = selected_cells(cfg)
    result = SuiteResult()
    if cfg.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            done = dict(pool.map(_run_cell, [(n, cfg) for n in names]))
    else:
        done = dict(_run_cell((n, cfg)) for n in names)
    for n in names:  # deterministic order
        result.cells[n] = done[n]
    return result
