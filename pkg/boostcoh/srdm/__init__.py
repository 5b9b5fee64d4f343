from .quadrature import *
from .integrands import *
from .reduced_density import *
