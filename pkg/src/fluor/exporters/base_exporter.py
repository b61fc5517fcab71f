import abc
import pathlib
from typing import IO, Any, Dict, Optional


class BaseExporter(abc.ABC):
    """Writes one artifact, with the run metadata embedded"""
    @abc.abstractmethod
    def export(self,
               data: Any,
               path: pathlib.Path,
               metadata: Optional[Dict[str, str]] = None):
        """
        Raises:
            ExportError if the artifact cannot be written.
        """

    @staticmethod
    def write_header(f: IO[str], metadata: Optional[Dict[str, str]]):
        """The metadata as '# key=value' comment lines"""
        for key, value in (metadata or {}).items():
            f.write(f"# {key}={value}\n")
