"""The built-in group corpus and the reference tables of exact values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .named import parse_group
from .perm import FiniteGroup

BUILTIN_CORPUS = (
    # abelian
    "C(2)", "C(3)", "C(4)", "C(5)", "C(6)", "C(9)", "C(2)xC(2)", "C(2)xC(2)xC(2)",
    "C(2)xC(2)xC(2)xC(2)", "C(3)xC(3)", "C(5)xC(5)", "C(3)xC(3)xC(3)",
    # soluble nonabelian
    "S(3)", "D(8)", "Q8", "D(10)", "D(12)", "A(4)", "C(2)xS(3)", "C(3)xS(3)",
    "gens[(0 1 2 3 4 5 6),(1 2 4)(3 6 5)]@7", "S(4)", "C(2)xD(8)", "C(2)xC(2)xS(3)",
    "D(8)xS(3)", "S(4)xC(2)", "S(3)xS(3)", "H([2,3,5],1)", "H([2,3],2)", "Gn(9)",
    "gens[(0 3 4 5 1 7 6 2),(0 3 6)(1 7 4)]@8",
    # unsoluble
    "A(5)", "S(5)", "C(2)xA(5)", "A(5)xC(3)", "A(5)xS(3)", "gens[(0 1 2 3 4 5 6),(0 1)(2 5)]@7",
)

# groups listed by name where the spec string is not self-explanatory
CORPUS_NAMES = {
    "gens[(0 1 2 3 4 5 6),(1 2 4)(3 6 5)]@7": "C7:C3",
    "gens[(0 3 4 5 1 7 6 2),(0 3 6)(1 7 4)]@8": "GL(2,3)",
    "gens[(0 1 2 3 4 5 6),(0 1)(2 5)]@7": "PSL(2,7)",
}


@dataclass(frozen=True)
class ExceptionalGroup:
    degree: int
    name: str
    spec: str
    e: Fraction


# groups G <= Sym(n), n <= 7, with e(G) > floor(n/2) + 1
EXCEPTIONAL_GROUPS = (
    ExceptionalGroup(3, "Sym(3)", "S(3)", Fraction(29, 10)),
    ExceptionalGroup(4, "C2xC2", "C(2)xC(2)", Fraction(10, 3)),
    ExceptionalGroup(4, "D8", "D(8)", Fraction(10, 3)),
    ExceptionalGroup(5, "C2xSym(3)", "C(2)xS(3)", Fraction(1181, 330)),
    ExceptionalGroup(6, "C2xC2xC2", "C(2)xC(2)xC(2)", Fraction(94, 21)),
    ExceptionalGroup(6, "C2xD8", "C(2)xD(8)", Fraction(94, 21)),
    ExceptionalGroup(7, "C2xC2xSym(3)", "C(2)xC(2)xS(3)", Fraction(241789, 53130)),
    ExceptionalGroup(7, "D8xSym(3)", "D(8)xS(3)", Fraction(241789, 53130)),
)

# e(G_n) for the extremal permutation groups
EXTREMAL_VALUES = {
    2: Fraction(2),
    3: Fraction(29, 10),
    4: Fraction(10, 3),
    5: Fraction(1181, 330),
    6: Fraction(94, 21),
    7: Fraction(241789, 53130),
    8: Fraction(194, 35),
    9: Fraction(4633553, 832370),
    10: Fraction(7134, 1085),
    11: Fraction(3227369181, 490265930),
    12: Fraction(74126, 9765),
    13: Fraction(6399598043131, 842767133670),
    14: Fraction(10663922, 1240155),
    15: Fraction(70505670417749503, 8198607229768494),
}


@dataclass
class CorpusEntry:
    spec: str
    group: FiniteGroup

    @property
    def name(self) -> str:
        return CORPUS_NAMES.get(self.spec, self.spec)


def read_corpus_file(path: str | Path) -> list[str]:
    """One group spec per line; blank lines and # comments are skipped."""
    specs = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            specs.append(line)
    return specs


def load_corpus(source: str | Path = "builtin") -> list[CorpusEntry]:
    specs = list(BUILTIN_CORPUS) if str(source) == "builtin" else read_corpus_file(source)
    return [CorpusEntry(s, parse_group(s)) for s in specs]
