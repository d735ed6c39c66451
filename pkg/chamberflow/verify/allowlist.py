import logging

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, TextIO, Union

from .. import utils
from ..types import CatalogError

logger = logging.getLogger(__name__)

CHECKS = ("table3", "multiplicity", "tangency")


@dataclass(frozen=True)
class AllowEntry:
    check: str
    term: str = ""
    note: str = ""


class Allowlist:
    """Known discrepancies of the printed tables, per row and check"""

    def __init__(self, entries: Dict[str, List[AllowEntry]] = None):
        self.entries = entries or {}

    def __len__(self) -> int:
        return sum(len(items) for items in self.entries.values())

    def get(self, name: str, check: str) -> List[AllowEntry]:
        return [entry for entry in self.entries.get(name, []) if entry.check == check]

    def allows(self, name: str, check: str) -> bool:
        return bool(self.get(name, check))

    def note(self, name: str, check: str) -> str:
        return "; ".join(entry.note or entry.term for entry in self.get(name, check))


def load_allowlist(source: Union[str, Path, TextIO, Mapping[str, Any], None] = None) -> Allowlist:
    """
    Reads ``row name -> [{check, term, note}]``

    An empty or missing mapping is an empty allowlist.
    """
    if source is None:
        source = utils.data_path("allowlist")

    data = source if isinstance(source, Mapping) else utils.load_yaml(source)
    data = data or {}
    if not isinstance(data, Mapping):
        raise CatalogError("Allowlist must map row names to entries")

    entries: Dict[str, List[AllowEntry]] = {}
    for name, items in data.items():
        for item in items or []:
            check = str(item.get("check", "table3"))
            if check not in CHECKS:
                raise CatalogError(f"Allowlist entry of {name}: unknown check {check!r}")

            entries.setdefault(str(name), []).append(
                AllowEntry(check=check, term=str(item.get("term", "")), note=str(item.get("note", "")))
            )

    logger.debug("Loaded %d allowlist entries", sum(map(len, entries.values())))
    return Allowlist(entries)
