# coding: utf-8
import os
import string
from dataclasses import dataclass
from shlex import shlex
from io import open
from typing import Callable, Dict, List, Optional

from configparser import ConfigParser, NoOptionError

from qfock.exceptions import UndefinedValueError, UsageError


DEFAULT_ENCODING = 'UTF-8'

TRUE_VALUES = {"y", "yes", "t", "true", "on", "1"}
FALSE_VALUES = {"n", "no", "f", "false", "off", "0"}

FAMILIES = ('a1', 'a2even', 'b1', 'a2odd', 'd1', 'd2', 'a1k')
SUITES = ('coeff', 'crystal', 'wedge', 'fock', 'twopoint', 'young', 'dtwo')


def strtobool(value):
    if isinstance(value, bool):
        return value
    value = value.lower()

    if value in TRUE_VALUES:
        return True
    elif value in FALSE_VALUES:
        return False

    raise ValueError("Invalid truth value: " + value)


class Repository(object):
    def __init__(self, source='', encoding=DEFAULT_ENCODING):
        pass

    def __contains__(self, key: str) -> bool:
        raise NotImplementedError

    def __getitem__(self, key: str) -> str:
        raise NotImplementedError


class RepositoryEmpty(Repository):
    def __contains__(self, key):
        return False

    def __getitem__(self, key):
        return None


class RepositoryIni(Repository):
    """
    Retrieves option keys from settings.ini files.
    Dotted keys address other sections.
    """
    SECTION = 'qfock'

    def __init__(self, source: str, encoding=DEFAULT_ENCODING):
        self.parser = ConfigParser()
        with open(source, encoding=encoding) as file_:
            self.parser.read_file(file_)

    def _split(self, key):
        if '.' in key:
            return key.rsplit('.', 1)
        return self.SECTION, key

    def __contains__(self, key: str) -> bool:
        section, option = self._split(key)
        return self.parser.has_option(section, option)

    def __getitem__(self, key: str) -> str:
        section, option = self._split(key)
        try:
            return self.parser.get(section, option)
        except NoOptionError:
            raise KeyError(key)


class RepositoryEnv(Repository):
    """
    Retrieves option keys from .env files.
    """
    def __init__(self, source: str, encoding=DEFAULT_ENCODING):
        self.data: Dict[str, str] = {}

        with open(source, encoding=encoding) as file_:
            for line in file_:
                line = line.strip()
                if not line or line.startswith('#') or '=' not in line:
                    continue
                k, v = line.split('=', 1)
                k = k.strip()
                v = v.strip()
                if len(v) >= 2 and ((v[0] == "'" and v[-1] == "'") or (v[0] == '"' and v[-1] == '"')):
                    v = v[1:-1]
                self.data[k] = v

    def __contains__(self, key: str) -> bool:
        return key in self.data

    def __getitem__(self, key) -> str:
        return self.data[key]


class Undefined(object):
    """
    Class to represent undefined type.
    """


undefined = Undefined()


def _cast_do_nothing(value: str) -> str:
    return value


class Config(object):
    """
    Resolve options from the environment, then the repository, then the default.
    """

    def __init__(self, repository: Repository):
        self.repository = repository

    def _cast_boolean(self, value) -> bool:
        value = str(value)
        return bool(value) if value == '' else bool(strtobool(value))

    def get(self, option: str, default=undefined, cast: Callable = _cast_do_nothing):
        if cast is bool:
            cast = self._cast_boolean

        # We can't avoid __contains__ because value may be empty.
        if option in os.environ:
            value = cast(os.environ[option])
        elif option in self.repository:
            value = cast(self.repository[option])
        else:
            # do not cast the default value
            if isinstance(default, Undefined):
                raise UndefinedValueError('{} not found. Declare it as envvar or define a default value.'.format(option))
            value = default

        return value

    def __call__(self, *args, **kwargs):
        return self.get(*args, **kwargs)


class AutoConfig(object):
    """
    Looks for settings.ini or .env from the search path up to the root.
    Falls back to the environment alone when neither file exists.
    """
    SUPPORTED = {
        'settings.ini': RepositoryIni,
        '.env': RepositoryEnv,
    }

    encoding = DEFAULT_ENCODING

    def __init__(self, search_path: Optional[str] = None):
        self.search_path = search_path
        self.config: Optional[Config] = None

    def _find_file(self, path):
        for configfile in self.SUPPORTED:
            filename = os.path.join(path, configfile)
            if os.path.isfile(filename):
                return filename

        parent = os.path.dirname(path)
        if parent and os.path.normcase(parent) != os.path.normcase(os.path.abspath(os.sep)):
            return self._find_file(parent)

        return ''

    def _load(self, path):
        try:
            filename = self._find_file(os.path.abspath(path))
        except Exception:
            filename = ''
        Repository = self.SUPPORTED.get(os.path.basename(filename), RepositoryEmpty)
        self.config = Config(Repository(filename, encoding=self.encoding))

    def __call__(self, *args, **kwargs):
        if not self.config:
            self._load(self.search_path or os.getcwd())

        return self.config(*args, **kwargs)


# Helpers

class Csv(object):
    """
    Produces a csv parser that return a list of transformed elements.
    """

    def __init__(self, cast=str, delimiter=',', strip=string.whitespace, post_process=list):
        self.cast = cast
        self.delimiter = delimiter
        self.strip = strip
        self.post_process = post_process

    def __call__(self, value: Optional[str]) -> List:
        if value is None:
            return self.post_process()

        transform = lambda s: self.cast(s.strip(self.strip))

        splitter = shlex(value, posix=True)
        splitter.whitespace = self.delimiter
        splitter.whitespace_split = True

        return self.post_process(transform(s) for s in splitter)


class Choices(object):
    """
    Allows for cast and validation based on a list of choices.
    """

    def __init__(self, flat=None, cast=str):
        self.flat = list(flat or [])
        self.cast = cast

    def __call__(self, value):
        transform = self.cast(value)
        if transform not in self.flat:
            raise UsageError((
                    'Value not in list: {!r}; valid values are {!r}'
                ).format(value, self.flat))
        return transform


def positive_int(value) -> int:
    number = int(value)
    if number <= 0:
        raise UsageError('expected a positive integer, got {!r}'.format(value))
    return number


@dataclass(frozen=True)
class Settings:
    delta_degree: int = 3
    worder: int = 4
    qorder: int = 20
    window: int = 2
    seed: int = 0
    log_level: str = 'WARNING'
    suites: tuple = ()

    def replace(self, **changes) -> "Settings":
        values = {k: v for k, v in changes.items() if v is not None}
        return type(self)(**{**self.__dict__, **values})


def load_settings(config=None) -> Settings:
    """
    Snapshot the QFOCK_* options from ``config`` (an AutoConfig by default).
    """
    config = config or AutoConfig()
    return Settings(
        delta_degree=config('QFOCK_DELTA_DEGREE', default=3, cast=positive_int),
        worder=config('QFOCK_WORDER', default=4, cast=positive_int),
        qorder=config('QFOCK_QORDER', default=20, cast=positive_int),
        window=config('QFOCK_WINDOW', default=2, cast=positive_int),
        seed=config('QFOCK_SEED', default=0, cast=int),
        log_level=config('QFOCK_LOG_LEVEL', default='WARNING',
                         cast=Choices(['DEBUG', 'INFO', 'WARNING', 'ERROR'], cast=str.upper)),
        suites=config('QFOCK_SUITES', default=(), cast=Csv(cast=Choices(SUITES + ('all',)), post_process=tuple)),
    )


config = AutoConfig()
