# encoding: utf-8
"""
This module contains the package version number, the default settings, and
factory methods for bootstrapping configuration and logging.

Settings
--------
``RTOL`` (:py:class:`float`)
    Relative truncation tolerance for Mittag-Leffler series.

``K_MAX`` (:py:class:`int`)
    Hard cap on the outer summation index of a series.

``VERIFY_TOL`` (:py:class:`float`)
    Numeric tolerance for equivalence verdicts.

``COMPOSE_TOL`` (:py:class:`float`)
    Coefficient tolerance when comparing generalized power series.

``T_END``, ``STEPS``
    Default time grid for the solver commands.

``ML_MULTI_WARN_ARGS`` (:py:class:`int`)
    Multinomial Mittag-Leffler evaluations with more arguments than this emit a
    cost warning.

``LOG_CONFIG`` (:py:class:`str`)
    A logging ini file.

"""
import json
import os
import logging
import logging.config

import structlog
import yaml
from flask.config import Config

__VERSION__ = '0.1.0'


APP_CONFIG_ENVIRON_NAME = 'FRACSPLIT_CONFIG'
""" Name of an environment variable to read a config file name from. """

LOG_CONFIG_ENVIRON_NAME = 'FRACSPLIT_LOG_CONFIG'
""" Name of an environment variable to read a log config file from.

It can also instruct fracsplit to *not* configure logging, if set to a
non-existing file.
"""

ENVIRON_PREFIX = 'FRACSPLIT'
""" Prefix of environment variables that override single settings.

``FRACSPLIT_RTOL=1e-10`` sets ``RTOL``.
"""


class DefaultConfig(object):
    """ Default configuration. """
    DEBUG = False
    RTOL = 1e-12
    K_MAX = 10000
    VERIFY_TOL = 1e-3
    COMPOSE_TOL = 1e-9
    T_END = 1.0
    STEPS = 2000
    ML_MULTI_WARN_ARGS = 4
    LOG_CONFIG = None


DEFAULT_LOG_CONFIG = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'default': {
            'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            'datefmt': '%Y-%m-%d %H:%M:%S'
        },
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'level': 'NOTSET',
            'formatter': 'default',
        },
    },
    'loggers': {
        'fracsplit': {
            'handlers': ['stderr'],
            'level': 'NOTSET',
            'propagate': False,
        },
    }
}


def init_config(config=None):
    """ Initialize config.

    Loads config from the first available source:

    1. ``config`` argument, if not ``None``
    2. the file named in ``$FRACSPLIT_CONFIG``, if set

    Single settings can then be overridden with ``FRACSPLIT_<NAME>``
    environment variables.

    :param str config: A config file (.py, .cfg, .json, .yml or .yaml)

    :rtype: flask.config.Config
    :return: The assembled configuration.
    """
    settings = Config(os.getcwd())
    settings.from_object(DefaultConfig)

    ext = os.path.splitext(config)[1] if config else None
    if config and ext in ('.py', '.cfg'):
        settings.from_pyfile(os.path.abspath(config), silent=False)
    elif config and ext == '.json':
        settings.from_file(os.path.abspath(config), load=json.load)
    elif config and ext in ('.yml', '.yaml'):
        settings.from_file(os.path.abspath(config), load=yaml.safe_load)
    elif config:
        raise RuntimeError(
            "Unknown config file format '{!s}' ({!s})".format(ext, config))
    else:
        settings.from_envvar(APP_CONFIG_ENVIRON_NAME, silent=True)

    settings.from_prefixed_env(ENVIRON_PREFIX)
    return settings


def configure_structlog():
    """ Route structlog events through the stdlib ``logging`` module. """
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.KeyValueRenderer(
                key_order=["event", "run_id"],
            ),
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
    )


def init_logging(config):
    """ Init logging.

    Loads log config from the first available source:

    1. LOG_CONFIG_ENVIRON_NAME environment var, if set
    2. ``config["LOG_CONFIG"]`` setting, if set
    3. ``DEFAULT_LOG_CONFIG``

    :param dict config: Settings, as returned from ``init_config``.
    """
    log_config = config.get('LOG_CONFIG')
    notices = []

    def _load_config_file(filename):
        if os.path.isfile(filename):
            logging.config.fileConfig(filename,
                                      defaults=None,
                                      disable_existing_loggers=False)
            return True
        return False

    if LOG_CONFIG_ENVIRON_NAME in os.environ:
        # 1. From environment
        env_config = os.environ[LOG_CONFIG_ENVIRON_NAME]
        if _load_config_file(env_config):
            notices.append(('log-config-environ', env_config))
        else:
            notices.append(('log-config-environ-ignored', env_config))
    elif log_config:
        # 2. From config
        if not _load_config_file(log_config):
            raise RuntimeError(
                "LOG_CONFIG '{!s}' doesn't exist".format(log_config))
        notices.append(('log-config-setting', log_config))
    else:
        # 3. Default
        logging.config.dictConfig(DEFAULT_LOG_CONFIG)
        notices.append(('log-config-default', None))

    # Set default logger level based on debug setting
    logger = logging.getLogger(__name__)
    if logger.level == logging.NOTSET:
        logger.setLevel(logging.DEBUG if config.get('DEBUG') else logging.INFO)

    configure_structlog()
    log = structlog.get_logger(__name__)
    for event, source in notices:
        log.debug(event, source=source,
                  level=logging.getLevelName(logger.getEffectiveLevel()))


configure_structlog()
