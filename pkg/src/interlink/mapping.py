"""Bijective title mapping between a small and a large wiki."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import EmptyTitle
from .graph import canonicalize_title


@dataclass
class TitleMapping:
    """Small-title to large-title bijection.

    ``forward`` maps small titles to large ones and ``backward`` is its
    inverse.  ``conflicts`` and ``dangling`` are bookkeeping from
    construction and take no part in equality.
    """

    forward: dict[str, str] = field(default_factory=dict)
    backward: dict[str, str] = field(default_factory=dict)
    conflicts: int = field(default=0, compare=False)
    dangling: int = field(default=0, compare=False)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> TitleMapping:
        """Resolve ``(small, large)`` pairs into a strict bijection.

        Distinct pairs are visited in lexicographic order and a pair is kept
        only if neither of its titles is already taken, so the result does
        not depend on input order.
        """
        forward: dict[str, str] = {}
        backward: dict[str, str] = {}
        conflicts = 0
        for small, large in sorted(set(pairs)):
            if small in forward or large in backward:
                conflicts += 1
                continue
            forward[small] = large
            backward[large] = small
        return cls(forward, backward, conflicts)

    def __len__(self) -> int:
        return len(self.forward)

    def __contains__(self, small_title: str) -> bool:
        return small_title in self.forward

    def to_large(self, small_title: str) -> str | None:
        return self.forward.get(small_title)

    def to_small(self, large_title: str) -> str | None:
        return self.backward.get(large_title)

    def pairs(self) -> list[tuple[str, str]]:
        return sorted(self.forward.items())


def build_mapping(large_pages, langlinks, small_lang: str) -> TitleMapping:
    """Join a large wiki's page rows with its langlinks rows.

    A langlink row pointing into ``small_lang`` whose ``from_page_id`` names a
    namespace-0 page yields the pair ``(canon(target_title), canon(page
    title))``.  Rows with no matching page, or whose titles are empty, are
    counted in ``dangling``.
    """
    titles: dict[int, str] = {}
    for row in large_pages:
        if row.namespace == 0:
            titles[row.page_id] = row.title
    pairs = []
    dangling = 0
    for row in langlinks:
        if row.lang_code != small_lang:
            continue
        large = titles.get(row.from_page_id)
        if large is None:
            dangling += 1
            continue
        try:
            pairs.append((canonicalize_title(row.target_title), canonicalize_title(large)))
        except EmptyTitle:
            dangling += 1
    mapping = TitleMapping.from_pairs(pairs)
    mapping.dangling = dangling
    return mapping
