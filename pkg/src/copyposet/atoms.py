"""Cardinal atoms and the per-session registry.

Atoms name uncountable initial ordinals. The builtin family ``w_1, w_2, ...``
carries the aleph_k scale (rank k); user atoms are ordered against everything
else only through their declared rank.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

_BUILTIN_RE = re.compile(r"^w_([1-9][0-9]*)$")


class AtomError(ValueError):
    pass


@dataclass(frozen=True)
class CardinalAtom:
    name: str
    rank: int
    singular: bool = False
    # for singular atoms: the regular atom of the declared cofinality, or None for omega
    declared_cofinality: "CardinalAtom | None" = None
    builtin_index: int | None = None

    @property
    def regular(self) -> bool:
        return not self.singular

    @property
    def cofinality_name(self) -> str | None:
        if not self.singular:
            return None
        return self.declared_cofinality.name if self.declared_cofinality else "w"

    def __repr__(self) -> str:
        return f"CardinalAtom({self.name!r})"


class AtomRegistry:
    """Append-only registry; user declarations freeze before computation starts.

    Builtin ``w_k`` atoms materialize lazily on first reference (they are
    deterministic and cannot conflict with each other), even after freeze.
    """

    def __init__(self) -> None:
        self._by_name: dict[str, CardinalAtom] = {}
        self._by_rank: dict[int, CardinalAtom] = {}
        self._frozen = False

    def declare(self, name: str, rank: int, singular: bool = False,
                cofinality: str | None = None) -> CardinalAtom:
        if self._frozen:
            raise AtomError("atom registry is frozen; declare atoms before computing")
        if not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", name):
            raise AtomError(f"bad atom name {name!r}")
        if name == "w":
            raise AtomError("'w' denotes omega and cannot be redeclared")
        if rank < 1:
            raise AtomError("atom rank must be a positive integer")
        if name in self._by_name:
            raise AtomError(f"atom {name!r} already declared")
        if rank in self._by_rank:
            raise AtomError(f"rank {rank} already taken by {self._by_rank[rank].name!r}")
        builtin_index = None
        m = _BUILTIN_RE.match(name)
        if m:
            if singular:
                raise AtomError(f"builtin atom {name!r} is regular and cannot be singular")
            if rank != int(m.group(1)):
                raise AtomError(f"builtin atom {name!r} must have rank {m.group(1)}")
            builtin_index = int(m.group(1))
        cof_atom = None
        if singular:
            cof_name = cofinality if cofinality is not None else "w"
            if cof_name != "w":
                cof_atom = self.lookup(cof_name)
                if cof_atom is None:
                    raise AtomError(f"declared cofinality {cof_name!r} is not a known atom")
                if cof_atom.singular:
                    raise AtomError("declared cofinality must be regular")
                if cof_atom.rank >= rank:
                    raise AtomError("declared cofinality must lie strictly below the atom")
        elif cofinality is not None:
            raise AtomError("only singular atoms carry a declared cofinality")
        atom = CardinalAtom(name, rank, singular, cof_atom, builtin_index)
        self._by_name[name] = atom
        self._by_rank[rank] = atom
        return atom

    def builtin(self, k: int) -> CardinalAtom:
        """The atom w_k (aleph_k), materializing it if needed."""
        if k < 1:
            raise AtomError("builtin atoms start at w_1")
        name = f"w_{k}"
        atom = self._by_name.get(name)
        if atom is not None:
            return atom
        if k in self._by_rank:
            raise AtomError(
                f"cannot use {name}: rank {k} is taken by {self._by_rank[k].name!r}")
        atom = CardinalAtom(name, k, builtin_index=k)
        self._by_name[name] = atom
        self._by_rank[k] = atom
        return atom

    def lookup(self, name: str) -> CardinalAtom | None:
        atom = self._by_name.get(name)
        if atom is None and _BUILTIN_RE.match(name):
            return self.builtin(int(name.split("_")[1]))
        return atom

    def atoms(self) -> list[CardinalAtom]:
        return sorted(self._by_name.values(), key=lambda a: a.rank)

    def freeze(self) -> None:
        self._frozen = True
