import pkg_resources
__version__ = pkg_resources.require("shellswarm")[0].version
