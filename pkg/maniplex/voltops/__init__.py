from .coxword import CoxWord
from .premaniplex import Premaniplex
from .voltage import VoltageOperator
from . import analysis
from . import operators

PACKAGE_NAME = 'VOLTOPS'
