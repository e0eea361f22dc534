# encoding: utf-8
""" Text report templates.

Reports are rendered from jinja2 templates. A template is looked up in an
inventory of added templates first (see :py:func:`add_template`), and then in
the ``templates/`` directory of this package.

Two filters are available in every template:

``rational``
    formats an exact rational as ``p/q``
``num``
    formats a float with 12 significant digits

"""
import functools

from jinja2 import Environment, PackageLoader, Template
from jinja2.exceptions import TemplateNotFound

from .rational import format_fraction


TEMPLATES = {}


def _format_number(value):
    return '{:.12g}'.format(float(value))


def _install_filters(env):
    env.filters['rational'] = format_fraction
    env.filters['num'] = _format_number
    return env


@functools.lru_cache(maxsize=1)
def get_environment():
    """ The package template environment. """
    return _install_filters(Environment(
        loader=PackageLoader('fracsplit', 'templates'),
        keep_trailing_newline=True,
        trim_blocks=True,
        lstrip_blocks=True))


def add_template(name, template):
    """ Adds a template to the inventory. """
    if template and not isinstance(template, Template):
        template = get_environment().from_string(template)
    TEMPLATES[name] = template


def find_template(name, env=None):
    """ Get a template by name.

    :param str name: The template name
    :param jinja2.Environment env: Look up templates in this environment too.

    :raise TemplateNotFound:
    :return Template:
    """
    if isinstance(TEMPLATES.get(name), Template):
        return TEMPLATES[name]
    if env is not None:
        try:
            return env.get_template(name)
        except TemplateNotFound:
            pass
    raise TemplateNotFound(
        name, message="Could not find template {!s}".format(name))


def get_template(name):
    """ Get a template from the inventory or the package. """
    return find_template(name, env=get_environment())


def render(name, **context):
    """ Render a named template. """
    return get_template(name).render(**context)
