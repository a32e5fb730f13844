import abc
import argparse
import sys
from typing import Dict, Optional, Sequence, TextIO, Tuple, Type

from src.logging import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class Node(abc.ABC):
    name: str = ""
    help: str = ""


class CommandNode(Node, abc.ABC):
    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        pass

    @abc.abstractmethod
    def run(self, args: argparse.Namespace, out: TextIO) -> int:
        raise NotImplementedError


class GroupNode(Node):
    def __init__(self, name: str, help: str = "") -> None:
        self.name = name
        self.help = help
        self._children: Dict[str, CommandNode] = {}

    def add_command(self, node: CommandNode, key: Optional[str] = None) -> None:
        self._children[key or node.name] = node

    def get_child(self, key: str) -> CommandNode:
        if key not in self._children:
            raise KeyError(f"unknown command {key!r}")
        return self._children[key]

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog=self.name, description=self.help)
        shared = argparse.ArgumentParser(add_help=False)
        shared.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
        commands = parser.add_subparsers(dest="command", metavar="COMMAND")
        commands.required = True
        for key, node in self._children.items():
            sub = commands.add_parser(key, help=node.help, parents=[shared])
            node.add_arguments(sub)
        return parser


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


class CommandApp:
    """Parses argv against a command group and runs the selected command.

    Errors listed in ``usage_errors`` become exit code 2 with the message on stderr.
    """

    usage_errors: Tuple[Type[Exception], ...] = ()

    def __init__(self, root: GroupNode) -> None:
        self.root = root
        self.parser = root.build_parser()

    def prepare(self, args: argparse.Namespace) -> None:
        """Runs before the command, inside the same error handling."""

    def run(self, argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)

        command = self.root.get_child(args.command)
        try:
            self.prepare(args)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as handle:
                    return command.run(args, handle)
            return command.run(args, stdout or sys.stdout)
        except self.usage_errors as exc:
            logger.debug("Command %s rejected its input", args.command, exc_info=True)
            print(f"{self.root.name} {args.command}: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except OSError as exc:
            print(f"{self.root.name} {args.command}: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
