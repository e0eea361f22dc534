#!/usr/bin/env python
# encoding: utf-8
""" Unit tests for config and logging setup in fracsplit """
import json
import logging

import pytest
import yaml

import fracsplit


@pytest.fixture(autouse=True)
def clean_environ(monkeypatch):
    for name in (fracsplit.APP_CONFIG_ENVIRON_NAME,
                 fracsplit.LOG_CONFIG_ENVIRON_NAME,
                 'FRACSPLIT_RTOL', 'FRACSPLIT_STEPS'):
        monkeypatch.delenv(name, raising=False)


def test_defaults(config):
    assert config['RTOL'] == 1e-12
    assert config['K_MAX'] == 10000
    assert config['VERIFY_TOL'] == 1e-3
    assert config['STEPS'] == 2000
    assert config['LOG_CONFIG'] is None


def test_config_files(tmpdir):
    py = tmpdir.join('settings.py')
    py.write('RTOL = 1e-8\n')
    assert fracsplit.init_config(str(py))['RTOL'] == 1e-8

    js = tmpdir.join('settings.json')
    js.write(json.dumps({'K_MAX': 50}))
    assert fracsplit.init_config(str(js))['K_MAX'] == 50

    yml = tmpdir.join('settings.yaml')
    yml.write(yaml.safe_dump({'T_END': 2.5}))
    settings = fracsplit.init_config(str(yml))
    assert settings['T_END'] == 2.5
    assert settings['RTOL'] == 1e-12


def test_config_unknown_format(tmpdir):
    f = tmpdir.join('settings.txt')
    f.write('')
    with pytest.raises(RuntimeError):
        fracsplit.init_config(str(f))


def test_config_environ(tmpdir, monkeypatch):
    f = tmpdir.join('settings.cfg')
    f.write('STEPS = 100\n')
    monkeypatch.setenv(fracsplit.APP_CONFIG_ENVIRON_NAME, str(f))
    monkeypatch.setenv('FRACSPLIT_RTOL', '1e-9')
    settings = fracsplit.init_config()
    assert settings['STEPS'] == 100
    assert settings['RTOL'] == 1e-9


def test_prefixed_environ_wins(tmpdir, monkeypatch):
    f = tmpdir.join('settings.json')
    f.write(json.dumps({'STEPS': 100}))
    monkeypatch.setenv('FRACSPLIT_STEPS', '400')
    assert fracsplit.init_config(str(f))['STEPS'] == 400


def test_init_logging_default(config):
    config['DEBUG'] = True
    logger = logging.getLogger('fracsplit')
    logger.setLevel(logging.NOTSET)
    fracsplit.init_logging(config)
    assert logger.level == logging.DEBUG
    assert logger.handlers


def test_init_logging_setting(config, tmpdir):
    missing = tmpdir.join('missing.ini')
    config['LOG_CONFIG'] = str(missing)
    with pytest.raises(RuntimeError):
        fracsplit.init_logging(config)


def test_init_logging_environ_ignored(config, tmpdir, monkeypatch):
    monkeypatch.setenv(fracsplit.LOG_CONFIG_ENVIRON_NAME,
                       str(tmpdir.join('missing.ini')))
    config['LOG_CONFIG'] = str(tmpdir.join('also-missing.ini'))
    fracsplit.init_logging(config)


def test_init_logging_file(config, tmpdir, monkeypatch):
    f = tmpdir.join('logging.ini')
    f.write('\n'.join([
        '[loggers]', 'keys = root, fracsplit', '',
        '[handlers]', 'keys = null', '',
        '[formatters]', 'keys =', '',
        '[logger_root]', 'handlers =', '',
        '[logger_fracsplit]', 'qualname = fracsplit', 'level = WARNING',
        'handlers = null', '',
        '[handler_null]', 'class = NullHandler', 'args = ()', '',
    ]))
    monkeypatch.setenv(fracsplit.LOG_CONFIG_ENVIRON_NAME, str(f))
    fracsplit.init_logging(config)
    assert logging.getLogger('fracsplit').level == logging.WARNING
